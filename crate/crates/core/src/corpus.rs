//! Seeded generators for test and benchmark inputs.

use std::collections::BTreeSet;

use num::integer::Integer;
use num::{BigInt, One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::field::{rat, Field, Rational};
use crate::algebra::irreducible::{gcd2, is_irreducible_over_qt};
use crate::algebra::modp;
use crate::algebra::multipoly::{var_list, MultiPoly};
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::resultant::resultant;
use crate::algebra::unipoly::UniPoly;
use crate::aode::{aode_vars, ms_index, verify_solution, DiffPoly};
use crate::curve::proj::proj_vars;
use crate::curve::ProjPoly;
use crate::error::Result;

/// A quasi-linear equation built to vanish at a chosen rational function.
#[derive(Clone, Debug)]
pub struct Planted {
    pub f: DiffPoly,
    pub solution: RatFunc,
}

fn small_poly(rng: &mut ChaCha8Rng, deg: usize, bound: i64) -> UniPoly {
    UniPoly::new(
        (0..=deg)
            .map(|_| rat(rng.gen_range(-bound..=bound)))
            .collect(),
    )
}

fn in_t(u: &UniPoly, y: u32, p: u32) -> MultiPoly {
    let vars = aode_vars();
    MultiPoly::from_terms(
        &vars,
        u.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| (vec![k as u32, y, p], c.clone())),
    )
}

/// `f = A (v^2 y' - (u'v - uv')) + (v y - u) E(t, y)` with `r = u/v` nonconstant of height at most 2,
/// `A` a nonzero integer and `deg(E, y) = 2`; resampled until irreducible over Q(t).
pub fn planted_quasilinear(seed: u64) -> Planted {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let u = {
            let k = rng.gen_range(0..=2);
            small_poly(&mut rng, k, 3)
        };
        let v = {
            let k = rng.gen_range(0..=2);
            small_poly(&mut rng, k, 3)
        };
        if v.is_zero() || u.is_zero() {
            continue;
        }
        let r = RatFunc::new(u.clone(), v.clone());
        if r.is_constant() {
            continue;
        }
        let (u, v) = (r.num().clone(), r.den().clone());
        let a = rat(rng.gen_range(1..=3));
        let w = &(&u.derivative() * &v) - &(&u * &v.derivative());
        let e: Vec<UniPoly> = (0..3).map(|_| small_poly(&mut rng, 1, 2)).collect();
        if e[2].is_zero() {
            continue;
        }
        let vars = aode_vars();
        let mut ee = MultiPoly::zero(&vars);
        for (k, c) in e.iter().enumerate() {
            ee = &ee + &in_t(c, k as u32, 0);
        }
        let lin = &in_t(&(&v * &v), 0, 1) - &in_t(&w, 0, 0);
        let vy = &in_t(&v, 1, 0) - &in_t(&u, 0, 0);
        let f = &lin.scale(&a) + &(&vy * &ee);
        let Ok(df) = DiffPoly::from_positional(f) else {
            continue;
        };
        if !ms_index(&df).positive
            || !matches!(is_irreducible_over_qt(df.poly(), 0, 1, 2), Ok(true))
        {
            continue;
        }
        return Planted { f: df, solution: r };
    }
}

/// Implicit equation in `(x0, x1)` of the image of `s -> (a(s), b(s))`, normalized to leading
/// coefficient 1: `res_s(num_a - x0 den_a, num_b - x1 den_b)`.
pub fn implicitize(a: &RatFunc, b: &RatFunc) -> Result<MultiPoly> {
    let vars = var_list(&["s", "x0", "x1"]);
    let lift = |u: &UniPoly| MultiPoly::from_univariate(&vars, 0, u);
    let fa = &lift(a.num()) - &(&lift(a.den()) * &MultiPoly::var(&vars, 1));
    let fb = &lift(b.num()) - &(&lift(b.den()) * &MultiPoly::var(&vars, 2));
    let r = resultant(&fa, &fb, "s")?;
    let out = var_list(&["x0", "x1"]);
    let r = MultiPoly::from_terms(&out, r.terms().map(|(m, c)| (m.0[1..].to_vec(), c.clone())));
    match r.leading() {
        Some((_, c)) => Ok(r.scale(&c.recip())),
        None => Ok(r),
    }
}

/// Whether the parametrization is birational onto its image, i.e. the implicit equation is
/// squarefree.
pub fn is_proper(f: &MultiPoly) -> bool {
    let d = f.partial(0);
    d.is_zero() || gcd2(f, &d, 0, 1).total_degree() == Some(0)
}

/// Random curve over Q with a proper parametrization of height at most `deg`.
pub fn parametrized_curve(seed: u64, deg: usize) -> (MultiPoly<RatFunc>, RatFunc, RatFunc) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let part = |rng: &mut ChaCha8Rng| {
            let num = {
                let k = rng.gen_range(1..=deg);
                small_poly(rng, k, 3)
            };
            let den = {
                let k = rng.gen_range(0..=1);
                small_poly(rng, k, 2)
            };
            (!den.is_zero()).then(|| RatFunc::new(num, den))
        };
        let (Some(a), Some(b)) = (part(&mut rng), part(&mut rng)) else {
            continue;
        };
        if a.is_constant() || b.is_constant() {
            continue;
        }
        let Ok(f) = implicitize(&a, &b) else { continue };
        if f.total_degree().unwrap_or(0) == 0 || !is_proper(&f) {
            continue;
        }
        return (f.map(|c| RatFunc::constant(c.clone())), a, b);
    }
}

/// `x0^q - x1^p`, parametrized by `(t^p, t^q)`, for coprime `p, q`.
pub fn monomial_curve(p: usize, q: usize) -> (MultiPoly<RatFunc>, RatFunc, RatFunc) {
    let vars = var_list(&["x0", "x1"]);
    let f = MultiPoly::from_terms(
        &vars,
        [(vec![q as u32, 0], rat(1)), (vec![0, p as u32], rat(-1))],
    );
    let mono = |k: usize| RatFunc::from_poly(UniPoly::monomial(rat(1), k));
    (f.map(|c| RatFunc::constant(c.clone())), mono(p), mono(q))
}

const SCAN_PRIME: u64 = 4_294_967_291;

fn to_mod(q: &Rational) -> Option<u64> {
    let p = BigInt::from(SCAN_PRIME);
    let d = q.denom().mod_floor(&p).to_u64()?;
    if d == 0 {
        return None;
    }
    let n = q.numer().mod_floor(&p).to_u64()?;
    Some(modp::mulm(n, modp::invm(d, SCAN_PRIME), SCAN_PRIME))
}

/// Every `p/q` with integer coefficients in `[-bound, bound]`, `deg p, deg q <= deg`, solving
/// `f`, in lowest terms. Candidates are filtered by evaluation modulo a prime at a fixed `t`,
/// then checked exactly.
pub fn lattice_scan(f: &DiffPoly, bound: i64, deg: usize) -> BTreeSet<RatFunc> {
    let pr = SCAN_PRIME;
    let t1: u64 = 1_234_567_891;
    let mm = |a: u64, b: u64| a * b % pr;
    let polys: Vec<Vec<i64>> = (0..(2 * bound as usize + 1).pow(deg as u32 + 1))
        .map(|mut k| {
            (0..=deg)
                .map(|_| {
                    let c = (k % (2 * bound as usize + 1)) as i64 - bound;
                    k /= 2 * bound as usize + 1;
                    c
                })
                .collect()
        })
        .collect();
    let red = |c: i64| c.rem_euclid(pr as i64) as u64;
    let ev = |v: &[i64]| {
        v.iter()
            .rev()
            .fold(0u64, |acc, &c| (modp::mulm(acc, t1, pr) + red(c)) % pr)
    };
    let dev = |v: &[i64]| {
        let d: Vec<i64> = v
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * i as i64)
            .collect();
        ev(&d)
    };
    let vals: Vec<(u64, u64)> = polys.iter().map(|v| (ev(v), dev(v))).collect();
    // f(t1, y, p) as a table of coefficients of y^a p^b
    let mut table: Vec<(usize, usize, u64)> = Vec::new();
    let mut ok = true;
    for (m, c) in f.poly().terms() {
        let Some(cm) = to_mod(c) else {
            ok = false;
            break;
        };
        let tv = modp::powm(t1, m.0[0] as u64, pr);
        table.push((m.0[1] as usize, m.0[2] as usize, modp::mulm(cm, tv, pr)));
    }
    if table.iter().any(|&(a, b, _)| a >= 16 || b >= 16) {
        ok = false;
    }
    let mut out = BTreeSet::new();
    let to_uni = |v: &[i64]| UniPoly::new(v.iter().map(|&c| rat(c)).collect());
    for (iq, q) in polys.iter().enumerate() {
        let (qv, qd) = vals[iq];
        if q.iter().all(|&c| c == 0) {
            continue;
        }
        let qi = if qv == 0 {
            None
        } else {
            Some(modp::invm(qv, pr))
        };
        for (ip, p) in polys.iter().enumerate() {
            let pass = match (ok, qi) {
                (true, Some(qi)) => {
                    let (pv, pd) = vals[ip];
                    let y = mm(pv, qi);
                    let num = (mm(pd, qv) + pr - mm(pv, qd)) % pr;
                    let yp = mm(num, mm(qi, qi));
                    let mut s = 0u64;
                    let (mut ya, mut ypb) = ([1u64; 16], [1u64; 16]);
                    for k in 1..ya.len() {
                        ya[k] = mm(ya[k - 1], y);
                        ypb[k] = mm(ypb[k - 1], yp);
                    }
                    for &(a, b, c) in &table {
                        s = (s + mm(mm(c, ya[a]), ypb[b])) % pr;
                    }
                    s == 0
                }
                _ => true,
            };
            if pass {
                let r = RatFunc::new(to_uni(p), to_uni(q));
                if !out.contains(&r) && verify_solution(f, &r) {
                    out.insert(r);
                }
            }
        }
    }
    out
}

/// Whether `r` has a representative `p/q` with integer coefficients in `[-bound, bound]` and
/// degrees at most `deg`, in lowest terms.
pub fn in_lattice(r: &RatFunc, bound: i64, deg: usize) -> bool {
    if r.num().deg0() > deg || r.den().deg0() > deg {
        return false;
    }
    let mut l = BigInt::one();
    for c in r.num().coeffs().iter().chain(r.den().coeffs()) {
        l = l.lcm(c.denom());
    }
    let ints: Vec<BigInt> = r
        .num()
        .coeffs()
        .iter()
        .chain(r.den().coeffs())
        .map(|c| c.numer() * (&l / c.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    ints.iter().all(|c| (c / &g).abs() <= BigInt::from(bound))
}

/// Nonzero rational function with integer coefficients in `[-bound, bound]` and
/// `deg num, deg den <= max_deg`.
pub fn random_ratfunc<R: Rng>(rng: &mut R, max_deg: usize, bound: i64) -> RatFunc {
    loop {
        let p = {
            let k = rng.gen_range(0..=max_deg);
            poly_with(rng, k, bound)
        };
        let q = {
            let k = rng.gen_range(0..=max_deg);
            poly_with(rng, k, bound)
        };
        if !p.is_zero() && !q.is_zero() {
            return RatFunc::new(p, q);
        }
    }
}

fn poly_with<R: Rng>(rng: &mut R, deg: usize, bound: i64) -> UniPoly {
    UniPoly::new(
        (0..=deg)
            .map(|_| rat(rng.gen_range(-bound..=bound)))
            .collect(),
    )
}

/// Nonzero polynomial over Q(t) in `vars` of total degree at most `tdeg`; about half of the
/// monomials get a coefficient from [`random_ratfunc`].
pub fn random_qt_poly<R: Rng>(
    rng: &mut R,
    vars: &[&str],
    tdeg: u32,
    coef_deg: usize,
) -> MultiPoly<RatFunc> {
    let vl = var_list(vars);
    loop {
        let mut terms = Vec::new();
        for e in exponents(vars.len(), tdeg) {
            if rng.gen_bool(0.5) {
                terms.push((e, random_ratfunc(rng, coef_deg, 3)));
            }
        }
        let f = MultiPoly::from_terms(&vl, terms);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Exponent vectors of `n` variables with total degree at most `d`.
fn exponents(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for k in 0..=d {
        for mut rest in exponents(n - 1, d - k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

/// Projective plane curve over Q(t) of degree `deg` in `x0, x1, x2` with every monomial of
/// that degree equally likely to occur.
pub fn random_proj_curve<R: Rng>(rng: &mut R, deg: u32, coef_deg: usize) -> ProjPoly<RatFunc> {
    let vl = proj_vars();
    loop {
        let mut terms = Vec::new();
        for e in exponents(3, deg)
            .into_iter()
            .filter(|e| e.iter().sum::<u32>() == deg)
        {
            if rng.gen_bool(0.5) {
                terms.push((e, random_ratfunc(rng, coef_deg, 3)));
            }
        }
        let f = MultiPoly::from_terms(&vl, terms);
        if f.total_degree() == Some(deg) {
            if let Ok(c) = ProjPoly::new(f) {
                return c;
            }
        }
    }
}
