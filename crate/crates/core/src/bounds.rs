//! Closed-form degree and height bounds, evaluated exactly.

use num::{BigInt, One};

use crate::algebra::field::{rat, Field, Rational};
use crate::algebra::irreducible::{clear_ratfunc, is_irreducible_over_qt};
use crate::algebra::multipoly::MultiPoly;
use crate::algebra::ratfunc::RatFunc;
use crate::curve::{s_estimate, ProjPoly};
use crate::error::{Error, Result};
use crate::heights::{height_poly, height_ratfunc};

/// `2^e` for any integer `e`.
pub fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

pub fn powr(b: &Rational, e: u64) -> Rational {
    num::pow::pow(b.clone(), e as usize)
}

fn max(a: Rational, b: Rational) -> Rational {
    if a >= b {
        a
    } else {
        b
    }
}

fn check_nonneg(name: &str, v: i64) -> Result<()> {
    if v < 0 {
        return Err(Error::Precondition(format!("{name} must be nonnegative")));
    }
    Ok(())
}

fn check_pos(name: &str, v: i64) -> Result<()> {
    if v < 1 {
        return Err(Error::Precondition(format!("{name} must be positive")));
    }
    Ok(())
}

/// `2^{i(i-1)/2} n^i max(8 n T(F0), T(D))`.
pub fn eval_ni(i: i64, n: i64, tf0: &Rational, td: &Rational) -> Result<Rational> {
    check_nonneg("i", i)?;
    check_pos("n", n)?;
    let nn = rat(n);
    Ok(pow2(i * (i - 1) / 2) * powr(&nn, i as u64) * max(rat(8) * &nn * tf0, td.clone()))
}

/// `2^{2s+1}(n+1)(mu + 2^{s-2} n)`.
pub fn eval_rr2_degree(s: i64, n: i64, mu: i64) -> Result<Rational> {
    check_nonneg("s", s)?;
    check_pos("n", n)?;
    check_nonneg("mu", mu)?;
    Ok(pow2(2 * s + 1) * rat(n + 1) * (rat(mu) + pow2(s - 2) * rat(n)))
}

/// Exponent numerator `k` of `2^{k/2}` in the height bound: `s^2 + 15 s + 10`.
pub fn rr2_height_half_exponent(s: i64) -> i64 {
    s * s + 15 * s + 10
}

/// Exponent numerator of the leading power of two in `C`: `s^2 + 15 s + 20`.
pub fn c_half_exponent(s: i64) -> i64 {
    s * s + 15 * s + 20
}

/// `2^{ceil(k/2)}`.
pub fn pow2_half_ceil(k: i64) -> Rational {
    pow2(k.div_euclid(2) + k.rem_euclid(2))
}

/// `2^{s^2/2+15s/2+5} n^{s+5} (n+1)^3 (mu+2^{s-2} n)^3 max(8 n T(F), T(D))`.
pub fn eval_rr2_height(s: i64, n: i64, mu: i64, tf: &Rational, td: &Rational) -> Result<Rational> {
    check_nonneg("s", s)?;
    check_pos("n", n)?;
    check_nonneg("mu", mu)?;
    Ok(rr2_height_rest(s, n, mu, tf, td) * pow2_half_ceil(rr2_height_half_exponent(s)))
}

fn rr2_height_rest(s: i64, n: i64, mu: i64, tf: &Rational, td: &Rational) -> Rational {
    let nn = rat(n);
    powr(&nn, (s + 5) as u64)
        * powr(&rat(n + 1), 3)
        * powr(&(rat(mu) + pow2(s - 2) * &nn), 3)
        * max(rat(8) * &nn * tf, td.clone())
}

/// `2^{s^2/2+15s/2+10} (2Nn+n^2+2^{s-2})^4 n^{s+9} (n+1)^4 T(f) / N`.
pub fn eval_c(_n0: i64, _n1: i64, n: i64, big_n: i64, s: i64, tf: &Rational) -> Result<Rational> {
    if big_n == 0 {
        return Err(Error::Precondition("N must be nonzero".into()));
    }
    check_pos("N", big_n)?;
    check_pos("n", n)?;
    check_nonneg("s", s)?;
    Ok(c_rest(n, big_n, s, tf) * pow2_half_ceil(c_half_exponent(s)))
}

fn c_rest(n: i64, big_n: i64, s: i64, tf: &Rational) -> Rational {
    let nn = rat(n);
    powr(&(rat(2 * big_n * n + n * n) + pow2(s - 2)), 4)
        * powr(&nn, (s + 9) as u64)
        * powr(&rat(n + 1), 4)
        * tf
        / rat(big_n)
}

/// `(54n^3+9n^2+2^{5n^2})^4 n^{5n^2+12} 2^{11n^4+43n^2+34} T(f)`.
pub fn eval_final_bound(n: i64, tf: &Rational) -> Result<Rational> {
    check_pos("n", n)?;
    if tf < &rat(0) {
        return Err(Error::Precondition("height must be nonnegative".into()));
    }
    let nn = rat(n);
    let n2 = (n * n) as u64;
    let base = rat(54 * n * n * n + 9 * n * n) + pow2(5 * n2 as i64);
    Ok(powr(&base, 4)
        * powr(&nn, 5 * n2 + 12)
        * pow2(11 * (n2 * n2) as i64 + 43 * n2 as i64 + 34)
        * tf)
}

/// `a * sqrt(2)^{odd}`: exact value of an expression with a possibly half-integer power of two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerOfTwoHalf {
    pub exponent_numerator: i64,
}

impl PowerOfTwoHalf {
    /// Square of `2^{k/2}`: `2^k`, always rational.
    pub fn squared(&self) -> Rational {
        pow2(self.exponent_numerator)
    }

    pub fn is_integral(&self) -> bool {
        self.exponent_numerator % 2 == 0
    }
}

/// Dominance of a ceiled evaluation over the exact value `rest * 2^{k/2}`:
/// `exact <= ceiled <= sqrt(2) exact`, compared after squaring.
pub fn ceiled_dominates(rest: &Rational, k: i64) -> bool {
    let exact_sq = rest
        * rest
        * PowerOfTwoHalf {
            exponent_numerator: k,
        }
        .squared();
    let ceiled = rest * pow2_half_ceil(k);
    let ceiled_sq = &ceiled * &ceiled;
    exact_sq <= ceiled_sq && ceiled_sq <= rat(2) * exact_sq
}

/// Dominance checks for the two evaluators with a half-integer exponent.
pub fn dominance_self_test(s: i64, n: i64, mu: i64, big_n: i64, tf: &Rational) -> bool {
    let a = rr2_height_rest(s, n, mu, tf, &rat(0));
    let b = c_rest(n, big_n, s, tf);
    ceiled_dominates(&a, rr2_height_half_exponent(s)) && ceiled_dominates(&b, c_half_exponent(s))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerEntry {
    pub formula: String,
    pub anchor: String,
    pub value: Rational,
}

impl LedgerEntry {
    pub fn new(formula: &str, anchor: &str, value: Rational) -> Self {
        LedgerEntry {
            formula: formula.into(),
            anchor: anchor.into(),
            value,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightInequalityReport {
    pub n0: u32,
    pub n1: u32,
    pub n: u32,
    pub big_n: i64,
    pub s: usize,
    pub tf: Rational,
    pub t_c0: Rational,
    pub t_c1: Rational,
    pub c: Rational,
    /// `(1 - n/(N+n)) n0 T(c0) - C`.
    pub lower: Rational,
    /// `n1 T(c1)`.
    pub middle: Rational,
    /// `(N+n)/N n0 T(c0) + C`.
    pub upper: Rational,
    pub passes: bool,
}

fn on_curve(f: &MultiPoly<RatFunc>, c0: &RatFunc, c1: &RatFunc) -> bool {
    f.eval_all(&[c0.clone(), c1.clone()]).is_zero()
}

fn s_for(f: &MultiPoly<RatFunc>) -> usize {
    let h = f.homogenize("x2");
    if h.coeffs().all(|c| c.is_constant()) {
        let q = h.map(|c| c.num().coeff(0));
        ProjPoly::new(q).map(|p| s_estimate(&p)).unwrap_or(0)
    } else {
        ProjPoly::new(h).map(|p| s_estimate(&p)).unwrap_or(0)
    }
}

/// Two-sided height inequality for a point `(c0, c1)` of the curve `f(x0, x1) = 0` over Q(t).
pub fn check_height_inequality(
    f: &MultiPoly<RatFunc>,
    c0: &RatFunc,
    c1: &RatFunc,
    big_n: i64,
) -> Result<HeightInequalityReport> {
    if f.nvars() != 2 {
        return Err(Error::Precondition("curve must be in two variables".into()));
    }
    if !on_curve(f, c0, c1) {
        return Err(Error::NotOnCurve);
    }
    check_pos("N", big_n)?;
    let flat = clear_ratfunc(f);
    if flat.total_degree().unwrap_or(0) > 0 && flat.used_vars().len() > 1 {
        if let Ok(false) = is_irreducible_over_qt(&flat, 0, 1, 2) {
            return Err(Error::Reducible("curve factors over Q(t)".into()));
        }
    }
    let n0 = f.degree_in(0).unwrap();
    let n1 = f.degree_in(1).unwrap();
    let n = f.total_degree().unwrap();
    let s = s_for(f);
    let tf = height_poly(f)?;
    let c = eval_c(n0 as i64, n1 as i64, n as i64, big_n, s as i64, &tf)?;
    let (tc0, tc1) = (height_ratfunc(c0), height_ratfunc(c1));
    let nn = rat(n as i64);
    let bn = rat(big_n);
    let lower = (rat(1) - &nn / (&bn + &nn)) * rat(n0 as i64) * &tc0 - &c;
    let middle = rat(n1 as i64) * &tc1;
    let upper = (&bn + &nn) / &bn * rat(n0 as i64) * &tc0 + &c;
    let passes = lower <= middle && middle <= upper;
    Ok(HeightInequalityReport {
        n0,
        n1,
        n,
        big_n,
        s,
        tf,
        t_c0: tc0,
        t_c1: tc1,
        c,
        lower,
        middle,
        upper,
        passes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametrizationReport {
    pub m: Rational,
    pub deg_a: usize,
    pub deg_b: usize,
    pub n0: u32,
    pub n1: u32,
    /// `deg(b) = m deg(f, x0)`.
    pub degree_relation: bool,
    /// `T(a) deg(f, x0) = T(b) deg(f, x1)`.
    pub cross_relation: bool,
}

/// Degree relations between a rational parametrization `(a, b)` and its implicit curve.
pub fn eval_parametrization_relation(
    f: &MultiPoly<RatFunc>,
    a: &RatFunc,
    b: &RatFunc,
) -> Result<ParametrizationReport> {
    if !on_curve(f, a, b) {
        return Err(Error::NotOnCurve);
    }
    if a.is_constant() || b.is_constant() {
        return Err(Error::Precondition(
            "parametrization coordinates must be nonconstant".into(),
        ));
    }
    let n0 = f.degree_in(0).unwrap();
    let n1 = f.degree_in(1).unwrap();
    if n1 == 0 {
        return Err(Error::Precondition("curve must involve x1".into()));
    }
    let (da, db) = (a.degree(), b.degree());
    let m = Rational::new(BigInt::from(da), BigInt::from(n1));
    let degree_relation = rat(db as i64) == &m * rat(n0 as i64);
    let cross_relation = height_ratfunc(a) * rat(n0 as i64) == height_ratfunc(b) * rat(n1 as i64);
    Ok(ParametrizationReport {
        m,
        deg_a: da,
        deg_b: db,
        n0,
        n1,
        degree_relation,
        cross_relation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::multipoly::var_list;
    use crate::algebra::unipoly::UniPoly;

    #[test]
    fn ni_examples() {
        assert_eq!(eval_ni(0, 3, &rat(2), &rat(5)).unwrap(), rat(48));
        assert_eq!(eval_ni(2, 3, &rat(1), &rat(0)).unwrap(), rat(432));
        assert!(eval_ni(-1, 3, &rat(1), &rat(0)).is_err());
        for i in 0..6 {
            assert!(
                eval_ni(i + 1, 2, &rat(1), &rat(3)).unwrap()
                    >= eval_ni(i, 2, &rat(1), &rat(3)).unwrap()
            );
        }
    }

    #[test]
    fn rr2_examples() {
        assert_eq!(eval_rr2_degree(1, 3, 2).unwrap(), rat(112));
        assert_eq!(eval_rr2_degree(2, 2, 0).unwrap(), rat(192));
        assert_eq!(
            eval_rr2_degree(0, 4, 3).unwrap(),
            rat(2) * rat(5) * (rat(3) + rat(1))
        );
        let want = rat(32) * rat(32) * rat(27) * crate::ratio(27, 8) * rat(16);
        assert_eq!(eval_rr2_height(0, 2, 1, &rat(1), &rat(0)).unwrap(), want);
        assert_eq!(eval_rr2_height(3, 2, 1, &rat(0), &rat(0)).unwrap(), rat(0));
    }

    #[test]
    fn c_examples() {
        let want = pow2(19) * rat(81) * powr(&crate::ratio(33, 4), 4);
        assert_eq!(eval_c(0, 0, 2, 1, 0, &rat(1)).unwrap(), want);
        assert_eq!(eval_c(0, 0, 2, 1, 0, &rat(0)).unwrap(), rat(0));
        assert!(eval_c(0, 0, 2, 0, 0, &rat(1)).is_err());
    }

    #[test]
    fn final_bound_examples() {
        assert_eq!(eval_final_bound(1, &rat(0)).unwrap(), rat(0));
        let want = Rational::from_integer(BigInt::from(95).pow(4) << 88);
        assert_eq!(eval_final_bound(1, &rat(1)).unwrap(), want);
        assert!(eval_final_bound(2, &rat(1)).unwrap() > eval_final_bound(1, &rat(1)).unwrap());
    }

    #[test]
    fn half_exponents_are_integral() {
        for s in 0..50 {
            assert_eq!(rr2_height_half_exponent(s) % 2, 0);
            assert!(dominance_self_test(s, 3, 2, 9, &rat(1)));
        }
    }

    fn curve(s: &str) -> MultiPoly<RatFunc> {
        let f = crate::text::parse_poly(s, &["x0", "x1"]).unwrap();
        f.map(|c| RatFunc::constant(c.clone()))
    }

    fn rf(v: &[i64]) -> RatFunc {
        RatFunc::from_poly(UniPoly::from_ints(v))
    }

    #[test]
    fn height_inequality_examples() {
        let f = curve("x1 - x0^2");
        for big_n in [1, 4, 40] {
            let r = check_height_inequality(&f, &rf(&[0, 1]), &rf(&[0, 0, 1]), big_n).unwrap();
            assert!(r.passes);
            assert_eq!(
                (r.n0, r.n1, r.t_c0.clone(), r.t_c1.clone()),
                (2, 1, rat(1), rat(2))
            );
        }
        let g = curve("x1^2 - x0^3");
        assert!(
            check_height_inequality(&g, &rf(&[0, 0, 1]), &rf(&[0, 0, 0, 1]), 9)
                .unwrap()
                .passes
        );
        assert!(
            check_height_inequality(&g, &rf(&[1]), &rf(&[1]), 9)
                .unwrap()
                .passes
        );
        assert_eq!(
            check_height_inequality(&g, &rf(&[0, 1]), &rf(&[0, 1]), 9),
            Err(Error::NotOnCurve)
        );
        let _ = var_list(&["x"]);
    }

    #[test]
    fn parametrization_examples() {
        let r = eval_parametrization_relation(
            &curve("x1^2 - x0^3"),
            &rf(&[0, 0, 1]),
            &rf(&[0, 0, 0, 1]),
        )
        .unwrap();
        assert_eq!(r.m, rat(1));
        assert!(r.degree_relation && r.cross_relation);
        let r = eval_parametrization_relation(&curve("x1 - x0^2"), &rf(&[0, 1]), &rf(&[0, 0, 1]))
            .unwrap();
        assert!(r.degree_relation && r.cross_relation);
        let r =
            eval_parametrization_relation(&curve("x1 - x0"), &rf(&[0, 1]), &rf(&[0, 1])).unwrap();
        assert!(r.degree_relation && r.cross_relation);
    }
}
