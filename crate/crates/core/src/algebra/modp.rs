//! Dense polynomials over a small prime field Z/p.

use num::{BigInt, Integer, ToPrimitive};

pub type Fp = Vec<u64>;

pub fn reduce(a: &BigInt, p: u64) -> u64 {
    a.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

pub fn trim(mut v: Fp) -> Fp {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn from_ints(v: &[BigInt], p: u64) -> Fp {
    trim(v.iter().map(|a| reduce(a, p)).collect())
}

pub fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    r
}

pub fn invm(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "not invertible mod p");
    powm(a, p - 2, p)
}

/// Arithmetic mod a prime below 2^32 with Barrett reduction.
#[derive(Clone, Copy, Debug)]
pub struct Barrett {
    pub p: u64,
    m: u64,
}

impl Barrett {
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p < 1 << 32);
        Barrett { p, m: u64::MAX / p }
    }

    /// `a mod p` for any `a`.
    #[inline]
    pub fn red(&self, a: u64) -> u64 {
        let q = ((a as u128 * self.m as u128) >> 64) as u64;
        let r = a - q * self.p;
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.red(a * b)
    }

    pub fn inv(&self, a: u64) -> u64 {
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        assert_eq!(r0, 1, "not invertible mod p");
        s0.rem_euclid(self.p as i64) as u64
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let (mut d, mut r) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &BASES {
        let mut x = powm(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mulm(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes at or above `start`, in increasing order.
pub fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start..).filter(|&n| is_prime(n))
}

pub fn eval(f: &Fp, x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| (mulm(acc, x, p) + c) % p)
}

pub fn deriv(f: &Fp, p: u64) -> Fp {
    trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulm(c, i as u64 % p, p))
            .collect(),
    )
}

pub fn sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

pub fn mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + mulm(x, y, p)) % p;
        }
    }
    trim(c)
}

pub fn divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    assert!(!b.is_empty(), "division by zero polynomial mod p");
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let db = b.len() - 1;
    let inv = invm(*b.last().unwrap(), p);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = mulm(r[k + db], inv, p);
        q[k] = c;
        if c == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - mulm(c, y, p)) % p;
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub fn rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    divrem(a, b, p).1
}

pub fn monic(f: &Fp, p: u64) -> Fp {
    match f.last() {
        None => Vec::new(),
        Some(&l) => {
            let i = invm(l, p);
            f.iter().map(|&c| mulm(c, i, p)).collect()
        }
    }
}

pub fn gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = std::mem::replace(&mut y, r);
    }
    monic(&x, p)
}

pub fn is_squarefree(f: &Fp, p: u64) -> bool {
    gcd(f, &deriv(f, p), p).len() == 1
}

/// `base^e mod m`.
pub fn powmod(base: &Fp, mut e: u128, m: &Fp, p: u64) -> Fp {
    let mut r: Fp = rem(&vec![1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = rem(&mul(&r, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    r
}

/// Degrees of the irreducible factors of a squarefree `f`, with multiplicity.
pub fn factor_degrees(f: &Fp, p: u64) -> Vec<usize> {
    let mut out = Vec::new();
    let mut g = monic(f, p);
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0usize;
    while g.len() > 1 {
        d += 1;
        if 2 * d > g.len() - 1 {
            out.push(g.len() - 1);
            break;
        }
        h = powmod(&h, p as u128, &g, p);
        let c = gcd(&g, &sub(&h, &x, p), p);
        if c.len() > 1 {
            let k = (c.len() - 1) / d;
            out.extend(std::iter::repeat_n(d, k));
            g = divrem(&g, &c, p).0;
            h = rem(&h, &g, p);
        }
    }
    out
}

/// Roots in Z/p by exhaustive evaluation.
pub fn roots(f: &Fp, p: u64) -> Vec<u64> {
    if f.is_empty() {
        return (0..p).collect();
    }
    (0..p).filter(|&x| eval(f, x, p) == 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_degrees_small() {
        // x^4 + 1 over F_3 splits as two quadratics
        let f = vec![1, 0, 0, 0, 1];
        let mut d = factor_degrees(&f, 3);
        d.sort();
        assert_eq!(d, vec![2, 2]);
        // (x-1)(x-2)(x^2+1) over F_7; x^2+1 irreducible mod 7
        let f = mul(&mul(&vec![6, 1], &vec![5, 1], 7), &vec![1, 0, 1], 7);
        let mut d = factor_degrees(&f, 7);
        d.sort();
        assert_eq!(d, vec![1, 1, 2]);
    }

    #[test]
    fn roots_mod_p() {
        let f = vec![1, 1, 1];
        assert_eq!(roots(&f, 7), vec![2, 4]);
    }
}
