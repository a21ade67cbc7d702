use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, Rational};

/// Dense univariate polynomial over a field; coefficient `i` belongs to `x^i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniPoly<C: Field = Rational> {
    c: Vec<C>,
}

impl<C: Field> UniPoly<C> {
    pub fn new(mut c: Vec<C>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn zero() -> Self {
        UniPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(a: C) -> Self {
        Self::new(vec![a])
    }

    /// The indeterminate itself.
    pub fn x() -> Self {
        Self::new(vec![C::zero(), C::one()])
    }

    pub fn monomial(a: C, k: usize) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        let mut c = vec![C::zero(); k + 1];
        c[k] = a;
        UniPoly { c }
    }

    /// `x - a`.
    pub fn linear_root(a: &C) -> Self {
        Self::new(vec![a.negate(), C::one()])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&i| C::from_int(i)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.c
    }

    pub fn coeff(&self, i: usize) -> C {
        self.c.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn lc(&self) -> C {
        self.c.last().cloned().unwrap_or_else(C::zero)
    }

    /// Lowest index with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|a| !a.is_zero())
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for a in self.c.iter().rev() {
            acc = acc.times(x).plus(a);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.times(&C::from_int(i as i64)))
                .collect(),
        )
    }

    pub fn scale(&self, a: &C) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        UniPoly {
            c: self.c.iter().map(|x| x.times(a)).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let l = self.lc();
        if l.is_one() {
            return self.clone();
        }
        self.scale(&l.recip())
    }

    pub fn map<D: Field>(&self, f: impl Fn(&C) -> D) -> UniPoly<D> {
        UniPoly::new(self.c.iter().map(f).collect())
    }

    /// Multiply by `x^k`.
    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![C::zero(); k];
        c.extend(self.c.iter().cloned());
        UniPoly { c }
    }

    /// Keep terms of degree `< k`.
    pub fn truncate(&self, k: usize) -> Self {
        Self::new(self.c.iter().take(k).cloned().collect())
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let Some(n) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if n < dd {
            return (Self::zero(), self.clone());
        }
        let inv = d.lc().recip();
        let mut r = self.c.clone();
        let mut q = vec![C::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let a = r[k + dd].clone();
            if a.is_zero() {
                continue;
            }
            let f = if inv.is_one() { a } else { a.times(&inv) };
            for (j, b) in d.c.iter().enumerate() {
                if !b.is_zero() {
                    r[k + j] = r[k + j].minus(&f.times(b));
                }
            }
            q[k] = f;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Quotient when `d` divides `self`, else `None`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    pub fn gcd(&self, o: &Self) -> Self {
        C::poly_gcd(self, o)
    }

    /// Plain Euclidean algorithm, monic result; `gcd(0,0) = 0`.
    pub fn euclid_gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g` and `g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse of `self` modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.rem(m).ext_gcd(m);
        g.is_one().then(|| s.rem(m))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * g) + &Self::constant(a.clone());
        }
        acc
    }

    /// `self(x + a)`.
    pub fn shift(&self, a: &C) -> Self {
        let mut c = self.c.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = c[j + 1].times(a);
                c[j] = c[j].plus(&t);
            }
        }
        Self::new(c)
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// `self(x) * x^deg` reversed: `x^n self(1/x)`, with `n` given.
    pub fn reverse(&self, n: usize) -> Self {
        let mut c: Vec<C> = (0..=n).map(|i| self.coeff(i)).collect();
        c.reverse();
        Self::new(c)
    }

    pub fn resultant(&self, o: &Self) -> C {
        C::poly_resultant(self, o)
    }

    /// Resultant via the Euclidean algorithm over the field.
    pub fn euclid_resultant(&self, o: &Self) -> C {
        let (Some(m), Some(n)) = (self.degree(), o.degree()) else {
            return C::zero();
        };
        if n == 0 {
            return o.lc().pow_u(m);
        }
        if m == 0 {
            return self.lc().pow_u(n);
        }
        let r = self.rem(o);
        let Some(k) = r.degree() else {
            return C::zero();
        };
        // res(f,g) = (-1)^{mn} lc(g)^{m-k} res(g, f mod g)
        let mut v = o.lc().pow_u(m - k).times(&o.euclid_resultant(&r));
        if (m * n) % 2 == 1 {
            v = v.negate();
        }
        v
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let s = a.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(b) if !s.contains(['+', ' ']) => (true, b.to_string()),
                _ => (false, s.clone()),
            };
            let body = if s.contains(['+', ' ']) || (s.contains('-') && !neg) {
                format!("({s})")
            } else {
                body
            };
            let neg = neg && !body.starts_with('(');
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                out.push_str(&body);
            } else if body == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{body}*{mono}"));
            }
        }
        out
    }
}

/// Integer powers for field elements.
pub trait PowU {
    fn pow_u(&self, e: usize) -> Self;
}

impl<C: Field> PowU for C {
    fn pow_u(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = C::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

impl<C: Field> fmt::Display for UniPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("x"))
    }
}

impl<C: Field> PartialOrd for UniPoly<C> {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl<C: Field> Ord for UniPoly<C> {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.c
            .len()
            .cmp(&o.c.len())
            .then_with(|| self.c.iter().rev().cmp(o.c.iter().rev()))
    }
}

impl<C: Field> Add for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn add(self, o: &UniPoly<C>) -> UniPoly<C> {
        let n = self.c.len().max(o.c.len());
        UniPoly::new(
            (0..n)
                .map(|i| match (self.c.get(i), o.c.get(i)) {
                    (Some(a), Some(b)) => a.plus(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => C::zero(),
                })
                .collect(),
        )
    }
}

impl<C: Field> Sub for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn sub(self, o: &UniPoly<C>) -> UniPoly<C> {
        let n = self.c.len().max(o.c.len());
        UniPoly::new(
            (0..n)
                .map(|i| match (self.c.get(i), o.c.get(i)) {
                    (Some(a), Some(b)) => a.minus(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.negate(),
                    (None, None) => C::zero(),
                })
                .collect(),
        )
    }
}

impl<C: Field> Mul for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn mul(self, o: &UniPoly<C>) -> UniPoly<C> {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![C::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = c[i + j].plus(&a.times(b));
                }
            }
        }
        UniPoly::new(c)
    }
}

impl<C: Field> Neg for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn neg(self) -> UniPoly<C> {
        UniPoly {
            c: self.c.iter().map(|a| a.negate()).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<C: Field> $tr for UniPoly<C> {
            type Output = UniPoly<C>;
            fn $m(self, o: UniPoly<C>) -> UniPoly<C> {
                (&self).$m(&o)
            }
        }
        impl<C: Field> $tr<&UniPoly<C>> for UniPoly<C> {
            type Output = UniPoly<C>;
            fn $m(self, o: &UniPoly<C>) -> UniPoly<C> {
                (&self).$m(o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<C: Field> Neg for UniPoly<C> {
    type Output = UniPoly<C>;
    fn neg(self) -> UniPoly<C> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> UniPoly {
        UniPoly::from_ints(v)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(p(&[0, 0, 0, 1]).gcd(&UniPoly::zero()), p(&[0, 0, 0, 1]));
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[0, 1, 1])), UniPoly::one());
        assert_eq!(
            UniPoly::<Rational>::zero().gcd(&UniPoly::zero()),
            UniPoly::zero()
        );
        assert_eq!(p(&[-1, 0, 1]).euclid_gcd(&p(&[-1, 1])), p(&[-1, 1]));
    }

    #[test]
    fn squarefree_examples() {
        let f = &p(&[-1, 1]).pow(2) * &p(&[2, 1]);
        assert_eq!(f.squarefree_part(), &p(&[-1, 1]) * &p(&[2, 1]));
        assert_eq!(p(&[0, 0, 0, 0, 0, 1]).squarefree_part(), p(&[0, 1]));
        assert_eq!(p(&[1, 0, 1]).squarefree_part(), p(&[1, 0, 1]));
    }

    #[test]
    fn divrem_and_ext_gcd() {
        let a = p(&[3, -2, 0, 5, 1]);
        let b = p(&[1, 1, 2]);
        let (q, r) = a.divrem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn resultant_matches_roots() {
        // res(x^2+1, x^2-1) = 4
        assert_eq!(
            p(&[1, 0, 1]).resultant(&p(&[-1, 0, 1])),
            crate::algebra::field::rat(4)
        );
        // res((x-1)(x-2), x-3) = (3-1)(3-2) with sign (-1)^{2}
        assert_eq!(
            p(&[2, -3, 1]).resultant(&p(&[-3, 1])),
            crate::algebra::field::rat(2)
        );
    }

    #[test]
    fn shift_and_compose_agree() {
        let a = p(&[1, -4, 0, 2]);
        let c = crate::algebra::field::rat(3);
        assert_eq!(a.shift(&c), a.compose(&UniPoly::linear_root(&-c)));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 0, 3, -1]).fmt_var("t"), "-t^3 + 3*t^2 - 1");
    }
}
