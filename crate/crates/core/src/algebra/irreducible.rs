//! Exact gcds in two variables and an irreducibility test over Q(t).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{rat, Field, Rational};
use super::modp;
use super::multipoly::{Mono, MultiPoly};
use super::qpoly;
use super::ratfunc::RatFunc;
use super::resultant::resultant;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// View `f` (involving only variables `t` and `x`) as a polynomial in `x` over Q(t).
pub fn to_qt(f: &MultiPoly, t: usize, x: usize) -> UniPoly<RatFunc> {
    let cs = f.coeffs_in(x);
    UniPoly::new(
        cs.iter()
            .map(|c| RatFunc::from_poly(c.to_univariate(t).expect("only t and x may occur")))
            .collect(),
    )
}

/// Clear denominators of a polynomial over Q(t) back into Q[t, x].
pub fn from_qt(
    u: &UniPoly<RatFunc>,
    vars: &std::sync::Arc<[String]>,
    t: usize,
    x: usize,
) -> MultiPoly {
    let cs = super::roots::clear_denominators(u);
    let mut p = MultiPoly::zero(vars);
    for (k, c) in cs.iter().enumerate() {
        for (j, a) in c.coeffs().iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[t] = j as u32;
            e[x] = k as u32;
            p.add_term(Mono(e), a.clone());
        }
    }
    p
}

/// Gcd in Q[t] of the coefficients of `f` viewed as a polynomial in `x`.
pub fn content_in_t(f: &MultiPoly, t: usize) -> UniPoly {
    let mut g = UniPoly::zero();
    for c in f.coeffs_in_others(t) {
        g = g.gcd(&c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Gcd of two polynomials in variables `t` and `x` over Q, normalized with leading coefficient 1.
pub fn gcd2(f: &MultiPoly, g: &MultiPoly, t: usize, x: usize) -> MultiPoly {
    let vars = f.vars().clone();
    if f.is_zero() {
        return normalize(g);
    }
    if g.is_zero() {
        return normalize(f);
    }
    let cf = content_in_t(f, t);
    let cg = content_in_t(g, t);
    let c = cf.gcd(&cg);
    let h = to_qt(f, t, x).gcd(&to_qt(g, t, x));
    let hp = from_qt(&h, &vars, t, x);
    normalize(&(&hp * &MultiPoly::from_univariate(&vars, t, &c)))
}

fn normalize(f: &MultiPoly) -> MultiPoly {
    match f.leading() {
        None => f.clone(),
        Some((_, c)) => f.scale(&c.recip()),
    }
}

impl MultiPoly {
    /// Coefficients (as univariate polynomials in variable `t`) of the distinct monomials in the other variables.
    pub fn coeffs_in_others(&self, t: usize) -> Vec<UniPoly> {
        let mut map: std::collections::BTreeMap<Vec<u32>, Vec<(usize, Rational)>> =
            Default::default();
        for (m, a) in self.terms() {
            let mut e = m.0.clone();
            let k = e[t] as usize;
            e[t] = 0;
            map.entry(e).or_default().push((k, a.clone()));
        }
        map.into_values()
            .map(|v| {
                let n = v.iter().map(|x| x.0).max().unwrap() + 1;
                let mut c = vec![rat(0); n];
                for (k, a) in v {
                    c[k] = a;
                }
                UniPoly::new(c)
            })
            .collect()
    }
}

/// Clear denominators of a polynomial over Q(t) into Q[t, ...] with `t` prepended as variable 0.
pub fn clear_ratfunc(f: &MultiPoly<RatFunc>) -> MultiPoly {
    let mut names = vec!["t".to_string()];
    names.extend(f.vars().iter().cloned());
    let vars: std::sync::Arc<[String]> = names.into();
    let mut l = UniPoly::one();
    for c in f.coeffs() {
        l = &l * &c.den().exact_div(&l.gcd(c.den())).unwrap();
    }
    let mut p = MultiPoly::zero(&vars);
    for (m, c) in f.terms() {
        let q = (c.num() * &l).exact_div(c.den()).unwrap();
        for (j, a) in q.coeffs().iter().enumerate() {
            let mut e = vec![j as u32];
            e.extend(m.0.iter().copied());
            p.add_term(Mono(e), a.clone());
        }
    }
    p
}

/// Irreducibility over Q(t) of a polynomial over Q(t) in two variables.
pub fn is_irreducible_bivariate(f: &MultiPoly<RatFunc>) -> Result<bool> {
    if f.nvars() != 2 {
        return Err(Error::Precondition("expected two variables".into()));
    }
    is_irreducible_over_qt(&clear_ratfunc(f), 0, 1, 2)
}

/// Whether `f` in Q[t, y, p] is irreducible over Q(t) as a polynomial in `(y, p)`.
pub fn is_irreducible_over_qt(f: &MultiPoly, t: usize, y: usize, p: usize) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroInput("irreducibility test"));
    }
    let c = content_in_t(f, t);
    let f = div_by_t_poly(f, &c, t);
    let n = tdeg2(&f, y, p);
    if n == 0 {
        return Err(Error::Precondition(
            "total degree in the main variables must be positive".into(),
        ));
    }
    // factors free of one main variable
    for (a, b) in [(y, p), (p, y)] {
        if f.degree_in(b) == Some(0) {
            continue;
        }
        let cs = f.coeffs_in(b);
        if cs.iter().filter(|c| !c.is_zero()).count() == 1 {
            let d = cs.iter().find(|c| !c.is_zero()).unwrap();
            if d.degree_in(a).unwrap_or(0) > 0 || f.min_degree_in(b).unwrap() > 0 && n > 1 {
                return Ok(false);
            }
            continue;
        }
        let mut g = MultiPoly::zero(f.vars());
        for c in cs.iter().filter(|c| !c.is_zero()) {
            g = gcd2(&g, c, t, a);
            if g.degree_in(a) == Some(0) {
                break;
            }
        }
        if g.degree_in(a).unwrap_or(0) > 0 {
            return Ok(false);
        }
    }
    if f.min_degree_in(y).unwrap() > 0 || f.min_degree_in(p).unwrap() > 0 {
        return Ok(n == 1);
    }
    if f.degree_in(y) == Some(0) {
        return univariate_irreducible(&f, t, p);
    }
    if f.degree_in(p) == Some(0) {
        return univariate_irreducible(&f, t, y);
    }
    // linear in a main variable: coprimality of its two coefficients over Q(t)
    for (a, b) in [(y, p), (p, y)] {
        if f.degree_in(b) == Some(1) {
            let cs = f.coeffs_in(b);
            let g = to_qt(&cs[0], t, a).gcd(&to_qt(&cs[1], t, a));
            return Ok(g.degree() == Some(0));
        }
    }
    // linear in t: f = t*A(y,p) + B(y,p)
    if f.degree_in(t) == Some(1) {
        let cs = f.coeffs_in(t);
        return Ok(gcd_yp_is_one(&cs[0], &cs[1], y, p));
    }
    if certify_irreducible(&f, t, y, p, n) {
        return Ok(true);
    }
    let r = resultant(&f, &f.partial(p), &f.vars()[p].clone())?;
    if r.is_zero() {
        return Ok(false);
    }
    Err(Error::UnsupportedRange(format!(
        "no irreducibility certificate for total degree {n}"
    )))
}

fn univariate_irreducible(f: &MultiPoly, t: usize, x: usize) -> Result<bool> {
    let u = to_qt(f, t, x);
    let d = u.deg0();
    if d == 1 {
        return Ok(true);
    }
    if !u.is_squarefree() {
        return Ok(false);
    }
    if !RatFunc::roots(&u).is_empty() {
        return Ok(false);
    }
    if d <= 3 {
        return Ok(true);
    }
    let vars = f.vars().clone();
    let g = from_qt(&u, &vars, t, x);
    let other = (0..3).find(|&k| k != t && k != x).unwrap();
    if certify_irreducible(&g, t, x, other, d as u32) {
        return Ok(true);
    }
    Err(Error::UnsupportedRange(format!(
        "no irreducibility certificate for degree {d}"
    )))
}

fn div_by_t_poly(f: &MultiPoly, c: &UniPoly, t: usize) -> MultiPoly {
    if c.degree() == Some(0) {
        return f.scale(&c.lc().recip());
    }
    f.exact_div(&MultiPoly::from_univariate(f.vars(), t, c))
        .expect("content divides")
}

fn tdeg2(f: &MultiPoly, y: usize, p: usize) -> u32 {
    f.terms().map(|(m, _)| m.0[y] + m.0[p]).max().unwrap_or(0)
}

fn gcd_yp_is_one(a: &MultiPoly, b: &MultiPoly, y: usize, p: usize) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_constant() || b.is_constant();
    }
    if a.is_constant() || b.is_constant() {
        return true;
    }
    gcd2(a, b, y, p).is_constant()
}

/// Certificate: a specialization `t = t0` preserving the degree, restricted to lines, whose mod-p
/// factor-degree patterns leave no room for a proper factor.
fn certify_irreducible(f: &MultiPoly, t: usize, y: usize, p: usize, n: u32) -> bool {
    let n = n as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut possible: u128 = (1u128 << (n + 1)) - 1;
    let top: MultiPoly = MultiPoly::from_terms(
        f.vars(),
        f.terms()
            .filter(|(m, _)| (m.0[y] + m.0[p]) as usize == n)
            .map(|(m, a)| (m.0.clone(), a.clone())),
    );
    let t0s: Vec<Rational> = (0..8)
        .map(|i: i64| rat(if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 }))
        .collect();
    let mut lines = 0;
    for t0 in t0s.iter().cycle().take(64) {
        if lines >= 12 || possible == 1 | (1 << n) {
            break;
        }
        let topt = top.eval_var(t, t0);
        if topt.is_zero() {
            continue;
        }
        let ft = f.eval_var(t, t0);
        let (a, b, e): (i64, i64, i64) = (
            rng.gen_range(-9..=9),
            rng.gen_range(-9..=9),
            rng.gen_range(-9..=9),
        );
        // line y = s + b, p = a*s + e
        let mut x = vec![rat(0); f.nvars()];
        x[y] = rat(1);
        x[p] = rat(a);
        if topt.eval_all(&x).is_zero() {
            continue;
        }
        let vars = f.vars();
        let s = MultiPoly::var(vars, t);
        let mut subs: Vec<MultiPoly> = (0..f.nvars()).map(|_| MultiPoly::zero(vars)).collect();
        subs[t] = MultiPoly::zero(vars);
        subs[y] = &s + &MultiPoly::constant(vars, rat(b));
        subs[p] = &s.scale(&rat(a)) + &MultiPoly::constant(vars, rat(e));
        let r = ft.compose(&subs, vars).to_univariate(t).unwrap();
        if r.degree() != Some(n) || !r.is_squarefree() {
            continue;
        }
        lines += 1;
        let ints = qpoly::primitive_int(&r);
        let mut line_possible: u128 = 0;
        let mut primes = 0;
        for q in modp::primes_from(11) {
            if primes >= 6 {
                break;
            }
            let rp = modp::from_ints(&ints, q);
            if rp.len() != n + 1 || !modp::is_squarefree(&rp, q) {
                continue;
            }
            primes += 1;
            let mut sums: u128 = 1;
            for d in modp::factor_degrees(&rp, q) {
                sums |= sums << d;
            }
            line_possible = if primes == 1 {
                sums
            } else {
                line_possible & sums
            };
        }
        if primes > 0 {
            possible &= line_possible;
        }
    }
    possible == 1 | (1 << n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::multipoly::var_list;

    fn vars() -> (std::sync::Arc<[String]>, MultiPoly, MultiPoly, MultiPoly) {
        let v = var_list(&["t", "y", "y'"]);
        (
            v.clone(),
            MultiPoly::var(&v, 0),
            MultiPoly::var(&v, 1),
            MultiPoly::var(&v, 2),
        )
    }

    #[test]
    fn spec_examples() {
        let (_, t, y, p) = vars();
        let f = &(&p.scale(&rat(2)) + &(&t * &y.pow(3))) + &y.pow(2);
        assert!(is_irreducible_over_qt(&f, 0, 1, 2).unwrap());
        let g = &y * &(&p + &y.pow(2));
        assert!(!is_irreducible_over_qt(&g, 0, 1, 2).unwrap());
        let h = &p.pow(2) - &y;
        assert!(is_irreducible_over_qt(&h, 0, 1, 2).unwrap());
    }

    #[test]
    fn index_family_irreducible() {
        let (_, t, y, p) = vars();
        for m in 1..=3u32 {
            let f = &(&(&y * &p.pow(m)) + &y.pow(2 * m + 1)) + &t;
            assert!(is_irreducible_over_qt(&f, 0, 1, 2).unwrap(), "m = {m}");
        }
    }

    #[test]
    fn nonlinear_products() {
        let (_, t, y, p) = vars();
        let one = MultiPoly::one(t.vars());
        let a = &(&p.pow(2) - &y.pow(3)) + &t;
        let b = &(&p.pow(2) + &(&y * &t)) + &one;
        assert!(!is_irreducible_over_qt(&(&a * &a), 0, 1, 2).unwrap());
        assert!(is_irreducible_over_qt(
            &(&(&p.pow(3) - &y.pow(2)) + &(&t * &y.pow(2) * &p)),
            0,
            1,
            2
        )
        .unwrap());
        assert!(is_irreducible_over_qt(
            &(&(&p.pow(2) * &y.pow(2)) + &(&t.pow(2) * &p) + &y.pow(3) + &one),
            0,
            1,
            2
        )
        .unwrap());
        let _ = b;
    }

    #[test]
    fn gcd2_exact() {
        let (_, t, y, _) = vars();
        let one = MultiPoly::one(t.vars());
        let a = &(&t * &y) + &one;
        let f = &a * &(&y - &t);
        let g = &a * &(&y + &t.pow(2));
        assert_eq!(gcd2(&f, &g, 0, 1), a);
        let c = &t + &one;
        assert_eq!(gcd2(&(&f * &c), &(&c * &(&y - &one)), 0, 1), c);
    }
}
