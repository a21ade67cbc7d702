//! Heights over Q(t): rational functions, projective tuples, polynomials, matrices and single
//! algebraic elements given by a minimal polynomial.

use crate::algebra::field::{rat, Field, Rational};
use crate::algebra::irreducible::{content_in_t, is_irreducible_over_qt};
use crate::algebra::multipoly::{var_list, Mono, MultiPoly};
use crate::algebra::ratfunc::{point_height, RatFunc};
use crate::algebra::resultant::resultant;
use crate::algebra::unipoly::UniPoly;
use crate::error::{Error, Result};

/// `max(deg num, deg den)`.
pub fn height_ratfunc(a: &RatFunc) -> Rational {
    rat(a.degree() as i64)
}

/// Height of a projective tuple.
pub fn height_point(v: &[RatFunc]) -> Result<Rational> {
    if v.iter().all(Field::is_zero) {
        return Err(Error::ZeroInput("all coordinates are zero"));
    }
    Ok(rat(point_height(v) as i64))
}

/// Height of the coefficient vector; zero for a single term.
pub fn height_poly(f: &MultiPoly<RatFunc>) -> Result<Rational> {
    if f.is_zero() {
        return Err(Error::ZeroInput("height of the zero polynomial"));
    }
    let c: Vec<RatFunc> = f.coeffs().cloned().collect();
    height_point(&c)
}

/// Height of `f` in Q[t, ...] viewed as a polynomial over Q(t) in the remaining variables.
pub fn height_over_t(f: &MultiPoly, t: usize) -> Result<Rational> {
    if f.is_zero() {
        return Err(Error::ZeroInput("height of the zero polynomial"));
    }
    let cs = f.coeffs_in_others(t);
    let g = content_in_t(f, t);
    let m = cs.iter().map(|c| c.deg0()).max().unwrap();
    Ok(rat((m - g.deg0()) as i64))
}

pub type Matrix3<C> = [[C; 3]; 3];

pub fn det3<C: Field>(m: &Matrix3<C>) -> C {
    let t = |a: &C, b: &C, c: &C| a.times(b).times(c);
    t(&m[0][0], &m[1][1], &m[2][2])
        .plus(&t(&m[0][1], &m[1][2], &m[2][0]))
        .plus(&t(&m[0][2], &m[1][0], &m[2][1]))
        .minus(&t(&m[0][2], &m[1][1], &m[2][0]))
        .minus(&t(&m[0][0], &m[1][2], &m[2][1]))
        .minus(&t(&m[0][1], &m[1][0], &m[2][2]))
}

/// Height of the nine entries of an invertible matrix.
pub fn height_matrix(m: &Matrix3<RatFunc>) -> Result<Rational> {
    if det3(m).is_zero() {
        return Err(Error::SingularMatrix);
    }
    let v: Vec<RatFunc> = m.iter().flatten().cloned().collect();
    height_point(&v)
}

/// Algebraic element over Q(t) given by an irreducible `g(t, x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicElement {
    min_poly: MultiPoly,
}

impl AlgebraicElement {
    /// `g` must use the variables `(t, x)` in that order.
    pub fn new(g: MultiPoly) -> Result<Self> {
        if g.nvars() != 2 {
            return Err(Error::Precondition(
                "minimal polynomial must be in (t, x)".into(),
            ));
        }
        if g.degree_in(1).unwrap_or(0) == 0 {
            return Err(Error::Precondition(
                "minimal polynomial must have positive degree in x".into(),
            ));
        }
        if content_in_t(&g, 0).deg0() > 0 {
            return Err(Error::Reducible("factor free of x".into()));
        }
        let g3 = g.with_vars(&var_list(&[&g.vars()[0], &g.vars()[1], "_"]));
        if !is_irreducible_over_qt(&g3, 0, 1, 2)? {
            return Err(Error::Reducible("minimal polynomial factors".into()));
        }
        Ok(AlgebraicElement { min_poly: g })
    }

    pub fn min_poly(&self) -> &MultiPoly {
        &self.min_poly
    }
}

/// `deg(g, t) / deg(g, x)`.
pub fn height_algebraic(a: &AlgebraicElement) -> Rational {
    let g = &a.min_poly;
    Rational::new(
        (g.degree_in(0).unwrap_or(0) as i64).into(),
        (g.degree_in(1).unwrap() as i64).into(),
    )
}

/// Predicates for the height inequalities, used by property tests.
pub mod props {
    use super::*;

    /// `T((c1 a + c2)/(c3 a + c4)) = T(a)` for `c1 c4 - c2 c3 != 0`.
    pub fn mobius_invariant(a: &RatFunc, c: [Rational; 4]) -> bool {
        let k = |q: &Rational| RatFunc::constant(q.clone());
        let num = a.times(&k(&c[0])).plus(&k(&c[1]));
        let den = a.times(&k(&c[2])).plus(&k(&c[3]));
        if den.is_zero() || num.is_zero() {
            return true;
        }
        height_ratfunc(&num.over(&den)) == height_ratfunc(a)
    }

    pub fn product_subadditive(a: &RatFunc, b: &RatFunc) -> bool {
        height_ratfunc(&a.times(b)) <= height_ratfunc(a) + height_ratfunc(b)
    }

    pub fn sum_subadditive(a: &RatFunc, b: &RatFunc, lambda: &Rational) -> bool {
        let s = a.plus(&b.times(&RatFunc::constant(lambda.clone())));
        height_ratfunc(&s) <= height_ratfunc(a) + height_ratfunc(b)
    }

    pub fn power_rule(a: &RatFunc, i: i32) -> bool {
        if a.is_zero() {
            return true;
        }
        height_ratfunc(&a.powi(i)) == height_ratfunc(a) * rat(i.abs() as i64)
    }

    pub fn poly_product_bound(f: &MultiPoly<RatFunc>, g: &MultiPoly<RatFunc>) -> bool {
        let fg = f * g;
        height_poly(&fg).unwrap() <= height_poly(f).unwrap() + height_poly(g).unwrap()
    }

    /// Every root of `f` in Q(t) has height at most `T(f)`.
    pub fn root_bound(f: &UniPoly<RatFunc>) -> bool {
        let tf = height_point(f.coeffs()).unwrap();
        RatFunc::roots(f).iter().all(|r| height_ratfunc(r) <= tf)
    }

    /// `T(g) <= T(g h)`.
    pub fn factor_monotone(g: &MultiPoly<RatFunc>, h: &MultiPoly<RatFunc>) -> bool {
        height_poly(g).unwrap() <= height_poly(&(g * h)).unwrap()
    }

    /// `T(res_z(f, g)) <= deg(g, z) T(f) + deg(f, z) T(g)`.
    pub fn resultant_bound(f: &MultiPoly<RatFunc>, g: &MultiPoly<RatFunc>, z: &str) -> bool {
        let i = f.var_index(z).unwrap();
        let r = resultant(f, g, z).unwrap();
        if r.is_zero() {
            return true;
        }
        let df = rat(f.degree_in(i).unwrap() as i64);
        let dg = rat(g.degree_in(i).unwrap() as i64);
        height_poly(&r).unwrap() <= dg * height_poly(f).unwrap() + df * height_poly(g).unwrap()
    }
}

/// Convert a polynomial in Q[t, ...] into one over Q(t) in the other variables.
pub fn over_qt(f: &MultiPoly, t: usize) -> MultiPoly<RatFunc> {
    let vars: std::sync::Arc<[String]> = f
        .vars()
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != t)
        .map(|(_, v)| v.clone())
        .collect();
    let mut out: MultiPoly<RatFunc> = MultiPoly::zero(&vars);
    let mut acc: std::collections::BTreeMap<Vec<u32>, Vec<Rational>> = Default::default();
    for (m, a) in f.terms() {
        let mut e = m.0.clone();
        let k = e.remove(t) as usize;
        let v = acc.entry(e).or_default();
        if v.len() <= k {
            v.resize(k + 1, rat(0));
        }
        v[k] = a.clone();
    }
    for (e, c) in acc {
        out.add_term(Mono(e), RatFunc::from_poly(UniPoly::new(c)));
    }
    out
}
