//! Roots in Q (p-adic lifting) and in Q(t) (power-series lifting plus Pade).

use num::integer::Integer;
use num::{BigInt, One, Signed, Zero};

use super::field::{rat, Field, Rational};
use super::modp;
use super::qpoly;
use super::ratfunc::RatFunc;
use super::unipoly::UniPoly;

fn mod_inv(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

/// Recover `p/q` from `u mod m` with `|p| <= n`, `0 < q <= d`.
pub fn rational_reconstruct(u: &BigInt, m: &BigInt, n: &BigInt, d: &BigInt) -> Option<Rational> {
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > n {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > *d || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

fn eval_int(f: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in f.iter().rev() {
        acc = (acc * x + c).mod_floor(m);
    }
    acc
}

/// Distinct rational roots of `f`, sorted ascending.
pub fn rational_roots(f: &UniPoly) -> Vec<Rational> {
    assert!(!f.is_zero(), "roots of the zero polynomial");
    let mut out = Vec::new();
    let v = f.valuation().unwrap();
    let f = if v > 0 {
        out.push(rat(0));
        UniPoly::new(f.coeffs()[v..].to_vec())
    } else {
        f.clone()
    };
    match f.degree() {
        Some(0) => {}
        Some(1) => out.push(-f.coeff(0) / f.coeff(1)),
        _ => out.extend(
            rational_roots_int(&qpoly::primitive_int(&f))
                .unwrap_or_else(|| rational_roots_sqfree(&f.squarefree_part())),
        ),
    }
    out.sort();
    out.dedup();
    out
}

fn rational_roots_sqfree(f: &UniPoly) -> Vec<Rational> {
    let g = qpoly::primitive_int(f);
    if g.len() == 2 {
        return vec![Rational::new(-g[0].clone(), g[1].clone())];
    }
    let p = modp::primes_from(101)
        .find(|&p| {
            let gp = modp::from_ints(&g, p);
            gp.len() == g.len() && modp::is_squarefree(&gp, p)
        })
        .unwrap();
    lift_roots(&g, p)
}

/// Rational roots of `g` without a squarefree decomposition, when some small prime leaves every
/// root mod p simple. `None` if no such prime turns up quickly.
fn rational_roots_int(g: &[BigInt]) -> Option<Vec<Rational>> {
    for p in modp::primes_from(101).take(8) {
        let gp = modp::from_ints(g, p);
        if gp.len() != g.len() {
            continue;
        }
        let dp = modp::deriv(&gp, p);
        if modp::roots(&gp, p)
            .iter()
            .all(|&r| modp::eval(&dp, r, p) != 0)
        {
            return Some(lift_roots(g, p));
        }
    }
    None
}

fn is_root_int(g: &[BigInt], q: &Rational) -> bool {
    let (a, b) = (q.numer(), q.denom());
    let mut acc = BigInt::zero();
    let mut bp = BigInt::one();
    for c in g.iter().rev() {
        acc = acc * a + c * &bp;
        bp *= b;
    }
    acc.is_zero()
}

/// Hensel-lift the roots of `g mod p`, all simple, and keep the rational ones.
fn lift_roots(g: &[BigInt], p: u64) -> Vec<Rational> {
    let n = g.len() - 1;
    let lc = g[n].abs();
    let c0 = g[0].abs();
    let gp = modp::from_ints(g, p);
    let r = modp::roots(&gp, p);
    if r.is_empty() {
        return Vec::new();
    }
    let bound = BigInt::from(2) * &lc * &c0 + BigInt::one();
    let pb = BigInt::from(p);
    let dg: Vec<BigInt> = g
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let mut out = Vec::new();
    for r0 in r {
        let mut m = pb.clone();
        let mut x = BigInt::from(r0);
        while m < bound {
            m = &m * &m;
            let fx = eval_int(g, &x, &m);
            let dx = eval_int(&dg, &x, &m);
            x = (&x - fx * mod_inv(&dx, &m)).mod_floor(&m);
        }
        if let Some(q) = rational_reconstruct(&x, &m, &c0, &lc) {
            if is_root_int(g, &q) {
                out.push(q);
            }
        }
    }
    out
}

/// Truncated power-series product mod `x^k`.
pub fn series_mul<C: Field>(a: &UniPoly<C>, b: &UniPoly<C>, k: usize) -> UniPoly<C> {
    (a.truncate(k) * b.truncate(k)).truncate(k)
}

/// Power-series inverse mod `x^k`; requires a nonzero constant term.
pub fn series_inv<C: Field>(a: &UniPoly<C>, k: usize) -> UniPoly<C> {
    let a0 = a.coeff(0);
    assert!(!a0.is_zero(), "series not invertible");
    let i0 = a0.recip();
    let mut out = vec![i0.clone()];
    for n in 1..k {
        let mut s = C::zero();
        for j in 1..=n {
            let aj = a.coeff(j);
            if !aj.is_zero() {
                s = s.plus(&aj.times(&out[n - j]));
            }
        }
        out.push(s.negate().times(&i0));
    }
    UniPoly::new(out)
}

/// Pade approximant `p/q` of a series mod `x^k` with `deg p <= dn`, `deg q <= k-1-dn`, `q(0) = 1`.
pub fn pade<C: Field>(s: &UniPoly<C>, k: usize, dn: usize) -> Option<(UniPoly<C>, UniPoly<C>)> {
    let (mut r0, mut r1) = (UniPoly::monomial(C::one(), k), s.truncate(k));
    let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
    while r1.degree().is_some_and(|d| d > dn) {
        let (q, r2) = r0.divrem(&r1);
        let t2 = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let c = t1.coeff(0);
    if c.is_zero() || t1.deg0() + dn >= k {
        return None;
    }
    let i = c.recip();
    Some((r1.scale(&i), t1.scale(&i)))
}

/// Roots in Q(t) of a polynomial with Q(t) coefficients.
pub fn ratfunc_roots(f: &UniPoly<RatFunc>) -> Vec<RatFunc> {
    assert!(!f.is_zero(), "roots of the zero polynomial");
    let mut out = Vec::new();
    let v = f.valuation().unwrap();
    let mut f = UniPoly::new(f.coeffs()[v..].to_vec());
    if v > 0 {
        out.push(RatFunc::zero());
    }
    if f.degree() == Some(1) {
        out.push(f.coeff(0).negate().over(&f.coeff(1)));
    } else if f.deg0() > 1 {
        if f.coeffs().iter().all(|c| c.is_constant()) {
            let g = f.map(|c| c.num().coeff(0) / c.den().coeff(0));
            out.extend(rational_roots(&g).into_iter().map(RatFunc::constant));
        } else {
            f = f.squarefree_part();
            out.extend(ratfunc_roots_sqfree(&f));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Clear denominators: polynomial coefficients in Q[t], primitive-ish.
pub fn clear_denominators(f: &UniPoly<RatFunc>) -> Vec<UniPoly> {
    let mut l = UniPoly::one();
    for c in f.coeffs() {
        if !c.den().is_one() {
            let g = l.gcd(c.den());
            l = &l * &c.den().exact_div(&g).unwrap();
        }
    }
    let mut v: Vec<UniPoly> = f
        .coeffs()
        .iter()
        .map(|c| (c.num() * &l).exact_div(c.den()).unwrap())
        .collect();
    let mut g = UniPoly::zero();
    for c in &v {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if !g.is_one() && !g.is_zero() {
        for c in v.iter_mut() {
            *c = c.exact_div(&g).unwrap();
        }
    }
    v
}

fn ratfunc_roots_sqfree(f: &UniPoly<RatFunc>) -> Vec<RatFunc> {
    let p = clear_denominators(f);
    let n = p.len() - 1;
    let du = p[0].deg0();
    let dv = p[n].deg0();
    let k = du + dv + 1;
    let t0 = (0i64..)
        .flat_map(|i| if i == 0 { vec![0] } else { vec![i, -i] })
        .map(rat)
        .find(|t0| {
            let s = UniPoly::new(p.iter().map(|c| c.eval(t0)).collect());
            s.degree() == Some(n) && s.is_squarefree()
        })
        .unwrap();
    let shifted: Vec<UniPoly> = p.iter().map(|c| c.shift(&t0)).collect();
    let at0 = UniPoly::new(shifted.iter().map(|c| c.coeff(0)).collect());
    let dp: Vec<UniPoly> = shifted
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(&rat(i as i64)))
        .collect();
    let mut out = Vec::new();
    for x0 in rational_roots(&at0) {
        let mut x = UniPoly::constant(x0);
        let mut prec = 1;
        while prec < k {
            prec = (2 * prec).min(k);
            let fx = eval_series(&shifted, &x, prec);
            let dx = eval_series(&dp, &x, prec);
            x = &x - &series_mul(&fx, &series_inv(&dx, prec), prec);
        }
        let Some((a, b)) = pade(&x, k, du) else {
            continue;
        };
        let back = -t0.clone();
        let r = RatFunc::new(a.shift(&back), b.shift(&back));
        if f.eval(&r).is_zero() {
            out.push(r);
        }
    }
    out
}

/// `sum_i c_i(x) s^i` as a series mod `x^k`.
fn eval_series(c: &[UniPoly], s: &UniPoly, k: usize) -> UniPoly {
    let mut acc = UniPoly::zero();
    for ci in c.iter().rev() {
        acc = &series_mul(&acc, s, k) + &ci.truncate(k);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::ratio;

    #[test]
    fn rational_roots_basic() {
        // (2x-3)(x+5)(x^2+1) x
        let f = &(&UniPoly::from_ints(&[-3, 2]) * &UniPoly::from_ints(&[5, 1]))
            * &UniPoly::from_ints(&[0, 1, 0, 1]);
        assert_eq!(rational_roots(&f), vec![rat(-5), rat(0), ratio(3, 2)]);
        assert!(rational_roots(&UniPoly::from_ints(&[-2, 0, 1])).is_empty());
    }

    #[test]
    fn rational_roots_repeated_and_large() {
        let a = UniPoly::linear_root(&ratio(123456789, 987654));
        let f = &a.pow(3) * &UniPoly::from_ints(&[7, 0, 0, 1]);
        assert_eq!(rational_roots(&f), vec![ratio(123456789, 987654)]);
    }

    #[test]
    fn pade_recovers_rational_series() {
        // 1/(1-x) mod x^5
        let s: UniPoly = UniPoly::from_ints(&[1, 1, 1, 1, 1]);
        let (p, q) = pade(&s, 5, 2).unwrap();
        assert_eq!(p, UniPoly::one());
        assert_eq!(q, UniPoly::from_ints(&[1, -1]));
    }

    #[test]
    fn ratfunc_roots_witness() {
        // x^2 - (t^3+1) x + t^3 = (x - t^3)(x - 1)
        let t3 = RatFunc::from_poly(UniPoly::from_ints(&[0, 0, 0, 1]));
        let f = UniPoly::new(vec![
            t3.clone(),
            (t3.clone() + RatFunc::one()).negate(),
            RatFunc::one(),
        ]);
        assert_eq!(ratfunc_roots(&f), {
            let mut v = vec![t3, RatFunc::one()];
            v.sort();
            v
        });
    }

    #[test]
    fn ratfunc_roots_rational_functions() {
        // roots (t+1)/(t-2) and 1/t^2, plus irreducible factor x^2 - t
        let r1 = RatFunc::new(UniPoly::from_ints(&[1, 1]), UniPoly::from_ints(&[-2, 1]));
        let r2 = RatFunc::new(UniPoly::one(), UniPoly::from_ints(&[0, 0, 1]));
        let t = RatFunc::from_poly(UniPoly::x());
        let f = &(&UniPoly::linear_root(&r1) * &UniPoly::linear_root(&r2))
            * &UniPoly::new(vec![t.negate(), RatFunc::zero(), RatFunc::one()]);
        let mut want = vec![r1, r2];
        want.sort();
        assert_eq!(ratfunc_roots(&f), want);
    }
}
