//! First-order algebraic ODEs `f(t, y, y') = 0`.

mod bound;
mod series;
mod solve;

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::algebra::field::{rat, Field, Rational};
use crate::algebra::irreducible::{gcd2, is_irreducible_over_qt};
use crate::algebra::multipoly::{var_list, Mono, MultiPoly};
use crate::algebra::ratfunc::RatFunc;
use crate::error::{Error, Result};

pub use bound::{degree_bound, degree_bound_with, BoundOptions, BoundReport, SSource};
pub use solve::{find_rational_solutions, Family, SolutionSet, MAX_CAP};

thread_local! {
    static AODE_VARS: Arc<[String]> = var_list(&["t", "y", "y'"]);
    static NORMAL_VARS: Arc<[String]> = var_list(&["t", "z", "z'"]);
}

pub fn aode_vars() -> Arc<[String]> {
    AODE_VARS.with(|v| v.clone())
}

/// Polynomial in `(t, y, y')` (positionally; names may differ) with positive degree in the
/// derivative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffPoly {
    poly: MultiPoly,
    d: u32,
}

impl DiffPoly {
    /// Accepts a polynomial whose variables are among `t`, `y`, `y'`.
    pub fn new(poly: MultiPoly) -> Result<Self> {
        let vars = aode_vars();
        for (i, v) in poly.vars().iter().enumerate() {
            if !vars.contains(v) && poly.degree_in(i).unwrap_or(0) > 0 {
                return Err(Error::Precondition(format!("unexpected variable {v}")));
            }
        }
        Self::from_positional(poly.with_vars(&vars))
    }

    /// Takes the three variables of `poly` as `(t, y, y')` in that order.
    pub fn from_positional(poly: MultiPoly) -> Result<Self> {
        if poly.nvars() != 3 {
            return Err(Error::Precondition("expected three variables".into()));
        }
        if poly.is_zero() {
            return Err(Error::ZeroInput("differential polynomial is zero"));
        }
        let d = poly.degree_in(2).unwrap_or(0);
        if d == 0 {
            return Err(Error::MissingVariable(poly.vars()[2].clone()));
        }
        Ok(DiffPoly { poly, d })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(crate::text::parse_poly(s, &["t", "y", "y'"])?)
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    /// Degree in `y'`.
    pub fn d(&self) -> u32 {
        self.d
    }

    /// Total degree in `(y, y')`.
    pub fn n(&self) -> u32 {
        self.poly
            .terms()
            .map(|(m, _)| m.0[1] + m.0[2])
            .max()
            .unwrap_or(0)
    }

    /// `a_i(t, y)`: coefficient of `y'^i`, for `i = 0..=d`.
    pub fn coeffs(&self) -> Vec<MultiPoly> {
        self.poly.coeffs_in(2)
    }

    pub fn is_autonomous(&self) -> bool {
        self.poly.degree_in(0).unwrap_or(0) == 0
    }

    /// Exponent pairs `(deg y, deg y')` of the support.
    pub fn support(&self) -> BTreeSet<(u32, u32)> {
        self.poly.terms().map(|(m, _)| (m.0[1], m.0[2])).collect()
    }

    pub fn to_text(&self) -> String {
        self.poly.to_text()
    }

    /// `f(t, r, r')` as a rational function.
    pub fn residual(&self, r: &RatFunc) -> RatFunc {
        let rp = r.derivative();
        let t = RatFunc::t();
        let (mut pt, mut py, mut pp) = (
            vec![RatFunc::one()],
            vec![RatFunc::one()],
            vec![RatFunc::one()],
        );
        let mut acc = RatFunc::zero();
        for (m, c) in self.poly.terms() {
            let e = &m.0;
            for (pw, base, k) in [
                (&mut pt, &t, e[0]),
                (&mut py, r, e[1]),
                (&mut pp, &rp, e[2]),
            ] {
                while pw.len() <= k as usize {
                    let next = pw.last().unwrap().times(base);
                    pw.push(next);
                }
            }
            let term = pt[e[0] as usize]
                .times(&py[e[1] as usize])
                .times(&pp[e[2] as usize]);
            acc = acc.plus(&term.times(&RatFunc::constant(c.clone())));
        }
        acc
    }
}

impl std::fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexEntry {
    pub i: u32,
    pub deg_y: u32,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MSIndexReport {
    /// One entry per nonzero `a_i`.
    pub per_i: Vec<IndexEntry>,
    pub index: i64,
    pub positive: bool,
}

/// `max_i deg(a_i, y) - 2(d - i)` over the nonzero coefficients `a_i`.
pub fn ms_index(f: &DiffPoly) -> MSIndexReport {
    let d = f.d as i64;
    let per_i: Vec<IndexEntry> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(i, a)| {
            let deg_y = a.degree_in(1).unwrap_or(0);
            IndexEntry {
                i: i as u32,
                deg_y,
                value: deg_y as i64 - 2 * (d - i as i64),
            }
        })
        .collect();
    let index = per_i.iter().map(|e| e.value).max().unwrap();
    MSIndexReport {
        per_i,
        index,
        positive: index > 0,
    }
}

/// Whether some support point `(i0, j0)` beats every other one: `i0 + j0 >= i + j` and
/// `i0 + 2 j0 > i + 2 j`.
pub fn is_maximally_comparable(f: &DiffPoly) -> bool {
    let s = f.support();
    s.iter().any(|&(i0, j0)| {
        s.iter()
            .filter(|&&p| p != (i0, j0))
            .all(|&(i, j)| i0 + j0 >= i + j && i0 + 2 * j0 > i + 2 * j)
    })
}

/// Whether `f(r, r') = 0` identically.
pub fn verify_solution(f: &DiffPoly, r: &RatFunc) -> bool {
    f.residual(r).is_zero()
}

/// `g(z, z') = z^{2d+l} f((cz+1)/z, -z'/z^2)` with its data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedAODE {
    pub g: DiffPoly,
    pub c: Rational,
    pub index: i64,
    pub origin: DiffPoly,
}

impl NormalizedAODE {
    /// Solution of `f` corresponding to a solution `z` of `g`.
    pub fn to_original(&self, z: &RatFunc) -> Option<RatFunc> {
        if z.is_zero() {
            return None;
        }
        let c = RatFunc::constant(self.c.clone());
        Some(c.times(z).plus(&RatFunc::one()).over(z))
    }

    /// Solution of `g` corresponding to a solution `y != c` of `f`.
    pub fn from_original(&self, y: &RatFunc) -> Option<RatFunc> {
        let w = y.minus(&RatFunc::constant(self.c.clone()));
        if w.is_zero() {
            None
        } else {
            Some(w.recip())
        }
    }
}

fn binomial_row(k: u32) -> Vec<Rational> {
    let mut row = vec![rat(1)];
    for j in 0..k {
        let next = row[j as usize].clone() * rat((k - j) as i64) / rat(j as i64 + 1);
        row.push(next);
    }
    row
}

/// Content check and irreducibility check shared by the normalization and the bound.
pub(crate) fn check_primitive(f: &DiffPoly) -> Result<()> {
    let mut g = MultiPoly::zero(f.poly.vars());
    for a in f.coeffs() {
        g = gcd2(&g, &a, 0, 1);
    }
    if g.degree_in(1).unwrap_or(0) > 0 {
        return Err(Error::Precondition(format!(
            "coefficients share the factor {}",
            g.to_text()
        )));
    }
    Ok(())
}

/// The substitution `y = (cz+1)/z` with `c` the least nonnegative integer such that
/// `a_0(t, c) != 0`.
pub fn normalize(f: &DiffPoly) -> Result<NormalizedAODE> {
    let ms = ms_index(f);
    if !ms.positive {
        return Err(Error::NonPositiveIndex(ms.index));
    }
    check_primitive(f)?;
    if !is_irreducible_over_qt(&f.poly, 0, 1, 2)? {
        return Err(Error::Reducible(f.to_text()));
    }
    let a0 = &f.coeffs()[0];
    let mut ci = 0i64;
    while a0.eval_var(1, &rat(ci)).is_zero() {
        ci += 1;
    }
    let c = rat(ci);
    let (d, l) = (f.d as i64, ms.index);
    let top = (l + 2 * d) as u32;
    let vars = NORMAL_VARS.with(|v| v.clone());
    let mut g = MultiPoly::zero(&vars);
    for (m, q) in f.poly.terms() {
        let (e, k, i) = (m.0[0], m.0[1], m.0[2]);
        let base = top - 2 * i - k;
        let sign = if i % 2 == 1 { rat(-1) } else { rat(1) };
        let row = binomial_row(k);
        let mut cj = rat(1);
        for (j, b) in row.iter().enumerate() {
            // (cz + 1)^k = sum_j binom(k, j) c^j z^j
            let coef = q * &sign * b * &cj;
            if !coef.is_zero() {
                g.add_term(Mono(vec![e, base + j as u32, i]), coef);
            }
            cj = &cj * &c;
        }
    }
    let g = DiffPoly::from_positional(g)?;
    let b0 = &g.coeffs()[0];
    if g.n() != top || b0.degree_in(1) != Some(top) {
        return Err(Error::Precondition(
            "normalization degree check failed".into(),
        ));
    }
    Ok(NormalizedAODE {
        g,
        c,
        index: l,
        origin: f.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::unipoly::UniPoly;
    use crate::text::parse_ratfunc;

    fn df(s: &str) -> DiffPoly {
        DiffPoly::parse(s).unwrap()
    }

    #[test]
    fn index_examples() {
        let r = ms_index(&df("2*y' + t*y^3 + y^2"));
        assert_eq!(r.index, 1);
        assert_eq!(
            r.per_i,
            vec![
                IndexEntry {
                    i: 0,
                    deg_y: 3,
                    value: 1
                },
                IndexEntry {
                    i: 1,
                    deg_y: 0,
                    value: 0
                }
            ]
        );
        assert_eq!(ms_index(&df("y*y'^2 + y^5 + t")).index, 1);
        let r = ms_index(&df("t*y' - 5*y"));
        assert_eq!(r.index, 0);
        assert!(!r.positive);
    }

    #[test]
    fn comparability_examples() {
        assert!(!is_maximally_comparable(&df("y*y' + y^3 + t")));
        assert!(is_maximally_comparable(&df("y'^2 + y")));
        assert!(is_maximally_comparable(&df("y'^3")));
    }

    #[test]
    fn verify_examples() {
        let f = df("t*y' - 3*y");
        assert!(verify_solution(
            &f,
            &RatFunc::from_poly(UniPoly::monomial(rat(1), 3))
        ));
        let f = df("2*y' + t*y^3 + y^2");
        assert!(verify_solution(&f, &parse_ratfunc("1/t").unwrap()));
        assert!(!verify_solution(&f, &RatFunc::t()));
        assert_eq!(f.residual(&RatFunc::t()).to_string(), "t^4 + t^2 + 2");
    }

    #[test]
    fn normalize_example() {
        let f = df("2*y' + t*y^3 + y^2");
        let nf = normalize(&f).unwrap();
        assert_eq!(nf.c, rat(1));
        assert_eq!(nf.g.n(), 3);
        let r = parse_ratfunc("1/t").unwrap();
        let z = nf.from_original(&r).unwrap();
        assert!(verify_solution(&nf.g, &z));
        assert_eq!(nf.to_original(&z).unwrap(), r);
        assert!(matches!(
            normalize(&df("t*y' - 5*y")),
            Err(Error::NonPositiveIndex(0))
        ));
    }
}
