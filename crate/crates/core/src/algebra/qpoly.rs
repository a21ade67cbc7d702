//! Integer-coefficient helpers for polynomials over Q.

use std::sync::OnceLock;

use num::integer::Integer;
use num::{BigInt, One, Signed, Zero};

use super::field::Rational;
use super::modp;
use super::unipoly::UniPoly;

/// Scale to a primitive integer polynomial with positive leading coefficient.
pub fn primitive_int(f: &UniPoly) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for a in f.coeffs() {
        l = l.lcm(a.denom());
    }
    let mut v: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|a| a.numer() * (&l / a.denom()))
        .collect();
    let g = content(&v);
    if !g.is_zero() && !g.is_one() {
        for a in v.iter_mut() {
            *a = &*a / &g;
        }
    }
    if v.last().is_some_and(|a| a.is_negative()) {
        for a in v.iter_mut() {
            *a = -&*a;
        }
    }
    v
}

pub fn content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for a in v {
        if g.is_one() {
            break;
        }
        g = g.gcd(a);
    }
    g
}

pub fn from_int(v: &[BigInt]) -> UniPoly {
    UniPoly::new(
        v.iter()
            .map(|a| Rational::from_integer(a.clone()))
            .collect(),
    )
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|a| a.is_zero()) {
        v.pop();
    }
}

/// Pseudo-remainder of `a` by `b` over Z.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let lr = r.last().unwrap().clone();
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &lr * bj;
        }
        trim(&mut r);
    }
    r
}

fn make_primitive(v: &mut Vec<BigInt>) {
    let g = content(v);
    if !g.is_zero() && !g.is_one() {
        for a in v.iter_mut() {
            *a = &*a / &g;
        }
    }
}

/// Monic gcd over Q using a primitive polynomial remainder sequence.
pub fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let (mut x, mut y) = (primitive_int(a), primitive_int(b));
    if x.len().min(y.len()) > MODULAR_GCD_MIN_LEN {
        return from_int(&gcd_modular(&x, &y)).monic();
    }
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            return UniPoly::one();
        }
        let mut r = prem(&x, &y);
        make_primitive(&mut r);
        x = std::mem::replace(&mut y, r);
    }
    from_int(&x).monic()
}

const MODULAR_GCD_MIN_LEN: usize = 8;

fn symmetric(x: &BigInt, m: &BigInt) -> BigInt {
    if x + x > *m {
        x - m
    } else {
        x.clone()
    }
}

fn divides(d: &[BigInt], a: &[BigInt]) -> bool {
    prem(a, d).is_empty()
}

/// Primitive gcd of primitive integer polynomials: gcds modulo word-sized primes, combined by
/// Chinese remaindering until the result stabilizes and divides both inputs.
fn gcd_modular(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let gamma = a.last().unwrap().gcd(b.last().unwrap());
    let mut acc: Option<(Vec<BigInt>, BigInt)> = None;
    let mut last: Vec<BigInt> = Vec::new();
    for p in modp::primes_from(1 << 31) {
        let (ap, bp) = (modp::from_ints(a, p), modp::from_ints(b, p));
        if ap.len() != a.len() || bp.len() != b.len() {
            continue;
        }
        let g = modp::gcd(&ap, &bp, p);
        if g.len() == 1 {
            return vec![BigInt::one()];
        }
        let gm = modp::reduce(&gamma, p);
        let g: Vec<u64> = g.iter().map(|&c| modp::mulm(c, gm, p)).collect();
        let pb = BigInt::from(p);
        acc = match acc.take() {
            Some((h, m)) if h.len() == g.len() => {
                let minv = BigInt::from(modp::invm(modp::reduce(&m, p), p));
                let h: Vec<BigInt> = h
                    .iter()
                    .zip(&g)
                    .map(|(hc, &gc)| hc + &m * ((BigInt::from(gc) - hc) * &minv).mod_floor(&pb))
                    .collect();
                Some((h, m * pb))
            }
            Some((h, m)) if h.len() < g.len() => Some((h, m)),
            _ => Some((g.iter().map(|&c| BigInt::from(c)).collect(), pb)),
        };
        let (h, m) = acc.as_ref().unwrap();
        let cand: Vec<BigInt> = h.iter().map(|c| symmetric(c, m)).collect();
        if cand == last {
            let mut d = cand.clone();
            make_primitive(&mut d);
            if divides(&d, a) && divides(&d, b) {
                return d;
            }
        }
        last = cand;
    }
    unreachable!()
}

/// Resultant over Q: denominators cleared, then a fraction-free Sylvester determinant over Z.
pub fn resultant(a: &UniPoly, b: &UniPoly) -> Rational {
    let (Some(m), Some(n)) = (a.degree(), b.degree()) else {
        return Rational::zero();
    };
    if m == 0 || n == 0 {
        return a.euclid_resultant(b);
    }
    let (ai, la) = scaled_int(a);
    let (bi, lb) = scaled_int(b);
    let mut rows = vec![vec![BigInt::zero(); m + n]; m + n];
    for r in 0..n {
        for (k, c) in ai.iter().rev().enumerate() {
            rows[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in bi.iter().rev().enumerate() {
            rows[n + r][r + k] = c.clone();
        }
    }
    let d = int_det(rows);
    Rational::new(d, la.pow(n as u32) * lb.pow(m as u32))
}

/// `f * l` with integer coefficients, `l` the lcm of the denominators.
fn scaled_int(f: &UniPoly) -> (Vec<BigInt>, BigInt) {
    let l = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |l, a| l.lcm(a.denom()));
    (
        f.coeffs()
            .iter()
            .map(|a| a.numer() * (&l / a.denom()))
            .collect(),
        l,
    )
}

/// Bareiss determinant of an integer matrix.
pub fn int_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut neg = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    neg = !neg;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if neg {
        -d
    } else {
        d
    }
}

/// Determinant over Z[c] of the matrix whose `(i, j)` entry is `entries[idx[i][j]]`
/// (coefficient vectors, lowest degree first), by evaluation and Chinese remaindering.
pub fn det_zpoly(entries: &[Vec<BigInt>], idx: &[Vec<usize>]) -> Vec<BigInt> {
    let pw: Vec<Vec<Vec<u32>>> = idx.iter().map(|row| vec![Vec::new(); row.len()]).collect();
    det_zpoly_scaled(entries, idx, &[], &pw)
}

/// As [`det_zpoly`], with entry `(i, j)` multiplied by `prod_b bases[b]^pw[i][j][b]`.
pub fn det_zpoly_scaled(
    entries: &[Vec<BigInt>],
    idx: &[Vec<usize>],
    bases: &[Vec<BigInt>],
    pw: &[Vec<Vec<u32>>],
) -> Vec<BigInt> {
    let n = idx.len();
    if n == 0 {
        return vec![BigInt::one()];
    }
    let deg = |e: &Vec<BigInt>| e.iter().rposition(|a| !a.is_zero());
    let norm = |e: &Vec<BigInt>| e.iter().map(|a| a.abs()).sum::<BigInt>();
    let (norms, bnorms) = (
        entries.iter().map(norm).collect::<Vec<_>>(),
        bases.iter().map(norm).collect::<Vec<_>>(),
    );
    let bdeg: Vec<usize> = bases.iter().map(|b| deg(b).unwrap_or(0)).collect();
    // degree and coefficient-norm bounds from rows and from columns
    let mut cell = vec![vec![None; n]; n];
    for (i, (row, prow)) in idx.iter().zip(pw).enumerate() {
        for (j, (&k, e)) in row.iter().zip(prow).enumerate() {
            let Some(d) = deg(&entries[k]) else { continue };
            let d = d + e
                .iter()
                .zip(&bdeg)
                .map(|(&x, &y)| x as usize * y)
                .sum::<usize>();
            let nm = e
                .iter()
                .zip(&bnorms)
                .fold(norms[k].clone(), |acc, (&x, b)| {
                    acc * num::pow(b.clone(), x as usize)
                });
            cell[i][j] = Some((d, nm));
        }
    }
    let mut bounds = Vec::with_capacity(2);
    for by_row in [true, false] {
        let (mut dsum, mut bits) = (0usize, 2u64);
        for a in 0..n {
            let line: Vec<&(usize, BigInt)> = (0..n)
                .filter_map(|b| {
                    if by_row {
                        cell[a][b].as_ref()
                    } else {
                        cell[b][a].as_ref()
                    }
                })
                .collect();
            let Some(d) = line.iter().map(|c| c.0).max() else {
                return Vec::new();
            };
            dsum += d;
            bits += line.iter().map(|c| &c.1).sum::<BigInt>().bits();
        }
        bounds.push((dsum, bits));
    }
    let dbound = bounds[0].0.min(bounds[1].0);
    let need = bounds[0].1.min(bounds[1].1);
    let maxpw: Vec<usize> = (0..bases.len())
        .map(|b| {
            pw.iter()
                .flatten()
                .map(|e| e[b] as usize)
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); dbound + 1];
    let mut modulus = BigInt::one();
    let below = |p: u64| (1u64 << 29..p).rev().filter(|&n| modp::is_prime(n));
    let cached = det_primes();
    for p in cached.iter().copied().chain(below(*cached.last().unwrap())) {
        if modulus.bits() > need {
            break;
        }
        let f = modp::Barrett::new(p);
        let red: Vec<Vec<u64>> = entries
            .iter()
            .map(|e| e.iter().map(|a| modp::reduce(a, p)).collect())
            .collect();
        let bred: Vec<Vec<u64>> = bases
            .iter()
            .map(|e| e.iter().map(|a| modp::reduce(a, p)).collect())
            .collect();
        let mut walkers: Vec<Differences> = red.iter().map(|e| Differences::new(e, &f)).collect();
        let mut bwalkers: Vec<Differences> = bred.iter().map(|e| Differences::new(e, &f)).collect();
        let ys: Vec<u64> = (0..=dbound as u64)
            .map(|_| {
                let vals: Vec<u64> = walkers.iter_mut().map(|w| w.next(p)).collect();
                let bpows: Vec<Vec<u64>> = bwalkers
                    .iter_mut()
                    .zip(&maxpw)
                    .map(|(w, &mp)| {
                        let b = w.next(p);
                        std::iter::successors(Some(1u64), |&v| Some(f.mul(v, b)))
                            .take(mp + 1)
                            .collect()
                    })
                    .collect();
                let m = idx
                    .iter()
                    .zip(pw)
                    .map(|(row, prow)| {
                        row.iter()
                            .zip(prow)
                            .map(|(&k, e)| {
                                e.iter()
                                    .zip(&bpows)
                                    .fold(vals[k], |v, (&x, bp)| f.mul(v, bp[x as usize]))
                            })
                            .collect()
                    })
                    .collect();
                det_mod(m, &f)
            })
            .collect();
        let c = interpolate_mod(&ys, &f);
        let pb = BigInt::from(p);
        let minv = BigInt::from(modp::invm(modp::reduce(&modulus, p), p));
        for (a, &r) in acc.iter_mut().zip(&c) {
            *a += &modulus * ((BigInt::from(r) - &*a) * &minv).mod_floor(&pb);
        }
        modulus *= pb;
    }
    assert!(modulus.bits() > need, "ran out of primes");
    let mut out: Vec<BigInt> = acc.iter().map(|a| symmetric(a, &modulus)).collect();
    trim(&mut out);
    out
}

fn det_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        (1u64 << 30..1 << 31)
            .rev()
            .filter(|&n| modp::is_prime(n))
            .take(256)
            .collect()
    })
}

/// Values of a polynomial mod p at `0, 1, 2, ...` by forward differences.
struct Differences(Vec<u64>);

impl Differences {
    fn new(c: &[u64], f: &modp::Barrett) -> Self {
        let p = f.p;
        let mut v: Vec<u64> = (0..c.len().max(1) as u64)
            .map(|x| c.iter().rev().fold(0, |acc, &a| f.red(acc * x + a)))
            .collect();
        for level in 1..v.len() {
            for i in (level..v.len()).rev() {
                v[i] = if v[i] >= v[i - 1] {
                    v[i] - v[i - 1]
                } else {
                    v[i] + p - v[i - 1]
                };
            }
        }
        Differences(v)
    }

    fn next(&mut self, p: u64) -> u64 {
        let out = self.0[0];
        for i in 0..self.0.len() - 1 {
            let s = self.0[i] + self.0[i + 1];
            self.0[i] = if s >= p { s - p } else { s };
        }
        out
    }
}

/// Determinant mod a prime below 2^31 by Gaussian elimination.
fn det_mod(mut m: Vec<Vec<u64>>, f: &modp::Barrett) -> u64 {
    let (n, p) = (m.len(), f.p);
    let mut det = 1u64;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| m[i][k] != 0) else {
            return 0;
        };
        if piv != k {
            m.swap(piv, k);
            det = p - det;
        }
        det = f.mul(det, m[k][k]);
        let inv = f.inv(m[k][k]);
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot = &top[k];
        for row in rest {
            if row[k] == 0 {
                continue;
            }
            let g = p - f.mul(row[k], inv);
            for j in k..n {
                row[j] = f.red(row[j] + g * pivot[j]);
            }
        }
    }
    f.red(det)
}

/// Coefficients of the polynomial taking the values `ys` at `0, 1, ..., n - 1`, mod a prime below 2^31.
fn interpolate_mod(ys: &[u64], f: &modp::Barrett) -> Vec<u64> {
    let (n, p) = (ys.len(), f.p);
    let mut inv = vec![0u64, 1];
    for i in 2..n as u64 {
        inv.push(p - f.mul(p / i, inv[(p % i) as usize]));
    }
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = f.mul(dd[i] + p - dd[i - 1], inv[j]);
        }
    }
    let mut c = vec![0u64; n];
    for i in (0..n).rev() {
        let x = p - i as u64 % p;
        for k in (1..n).rev() {
            c[k] = f.red(c[k - 1] + x * c[k]);
        }
        c[0] = f.red(x * c[0] + dd[i]);
    }
    c
}

pub fn max_bits(v: &[BigInt]) -> u64 {
    v.iter().map(|a| a.bits()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prs_gcd_matches_euclid() {
        let f = UniPoly::from_ints(&[6, -5, -2, 1]);
        let g = UniPoly::from_ints(&[-3, 2, 1]);
        assert_eq!(gcd(&f, &g), f.euclid_gcd(&g));
        assert_eq!(gcd(&f, &g), UniPoly::from_ints(&[-1, 1]));
    }

    #[test]
    fn primitive_scaling() {
        let f = UniPoly::new(vec![
            Rational::new(1.into(), 2.into()),
            Rational::from_integer((-3).into()),
        ]);
        assert_eq!(primitive_int(&f), vec![BigInt::from(-1), BigInt::from(6)]);
    }
}
