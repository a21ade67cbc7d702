use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::field::{Field, Rational};
use super::unipoly::UniPoly;

/// Element of Q(t): reduced fraction with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero_();
        }
        if den.is_constant() {
            let d = den.coeff(0);
            return RatFunc {
                num: num.scale(&d.recip()),
                den: UniPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let l = den.lc();
        if l.is_one() {
            RatFunc { num, den }
        } else {
            let i = l.recip();
            RatFunc {
                num: num.scale(&i),
                den: den.scale(&i),
            }
        }
    }

    fn zero_() -> Self {
        RatFunc {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFunc {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    /// The generator `t`.
    pub fn t() -> Self {
        Self::from_poly(UniPoly::x())
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// `max(deg num, deg den)`, 0 for constants and zero.
    pub fn degree(&self) -> usize {
        self.num.deg0().max(self.den.deg0())
    }

    pub fn derivative(&self) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative());
        }
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den)
    }

    /// Value at `x`, `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    pub fn powi(&self, e: i32) -> Self {
        let p = RatFunc {
            num: self.num.pow(e.unsigned_abs()),
            den: self.den.pow(e.unsigned_abs()),
        };
        if e >= 0 {
            p
        } else {
            p.recip()
        }
    }

    pub fn fmt_var(&self, var: &str) -> String {
        let n = self.num.fmt_var(var);
        if self.den.is_one() {
            return n;
        }
        let wrap = |s: String, p: &UniPoly| {
            if p.coeffs().iter().filter(|c| !Field::is_zero(*c)).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        let n = wrap(n, &self.num);
        let n = if n.starts_with('-') && n.contains('*') && !n.starts_with('(') {
            format!("({n})")
        } else {
            n
        };
        format!("{}/{}", n, wrap(self.den.fmt_var(var), &self.den))
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        Self::zero_()
    }
    fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }
    fn plus(&self, o: &Self) -> Self {
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(&self.num + &o.num);
        }
        if self.den == o.den {
            return Self::new(&self.num + &o.num, self.den.clone());
        }
        Self::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negate())
    }
    fn times(&self, o: &Self) -> Self {
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(&self.num * &o.num);
        }
        Self::new(&self.num * &o.num, &self.den * &o.den)
    }
    fn negate(&self) -> Self {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
    fn recip(&self) -> Self {
        assert!(!self.num.is_zero(), "division by zero");
        Self::new(self.den.clone(), self.num.clone())
    }
    fn over(&self, o: &Self) -> Self {
        assert!(!o.num.is_zero(), "division by zero");
        if o.num.is_constant() && o.den.is_one() {
            return RatFunc {
                num: self.num.scale(&o.num.coeff(0).recip()),
                den: self.den.clone(),
            };
        }
        Self::new(&self.num * &o.den, &self.den * &o.num)
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant(q.clone())
    }
    fn roots(p: &UniPoly<Self>) -> Vec<Self> {
        super::roots::ratfunc_roots(p)
    }
    fn tuple_height(v: &[Self]) -> usize {
        point_height(v)
    }
    fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }
}

/// Height of a projective tuple over Q(t): clear denominators, remove the gcd, take the max degree.
pub fn point_height(v: &[RatFunc]) -> usize {
    let mut l = UniPoly::one();
    for a in v {
        if !a.den.is_one() {
            let g = l.gcd(&a.den);
            l = &l * &a.den.exact_div(&g).unwrap();
        }
    }
    let coords: Vec<UniPoly> = v
        .iter()
        .filter(|a| !Field::is_zero(*a))
        .map(|a| {
            if a.den.is_one() {
                &a.num * &l
            } else {
                (&a.num * &l).exact_div(&a.den).unwrap()
            }
        })
        .collect();
    assert!(!coords.is_empty(), "height of the zero tuple");
    let mut g = UniPoly::zero();
    for c in &coords {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    coords.iter().map(|c| c.deg0()).max().unwrap() - g.deg0()
}

impl PartialOrd for RatFunc {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for RatFunc {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.den.cmp(&o.den).then_with(|| self.num.cmp(&o.num))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("t"))
    }
}

macro_rules! ops {
    ($($tr:ident $m:ident $fm:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc {
                self.$fm(&o)
            }
        }
        impl $tr<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, o: &RatFunc) -> RatFunc {
                self.$fm(o)
            }
        }
    )*};
}
ops!(Add add plus, Sub sub minus, Mul mul times, Div div over);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.negate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> UniPoly {
        UniPoly::from_ints(v)
    }

    #[test]
    fn derivative_examples() {
        let inv_t = RatFunc::new(p(&[1]), p(&[0, 1]));
        assert_eq!(inv_t.derivative(), RatFunc::new(p(&[-1]), p(&[0, 0, 1])));
        assert_eq!(
            RatFunc::from_poly(p(&[0, 0, 0, 0, 1])).derivative(),
            RatFunc::from_poly(p(&[0, 0, 0, 4]))
        );
        let r = RatFunc::new(p(&[1, 1]), p(&[-1, 1]));
        assert_eq!(r.derivative(), RatFunc::new(p(&[-2]), p(&[1, -2, 1])));
    }

    #[test]
    fn reduction_and_monic_den() {
        let r = RatFunc::new(p(&[-2, 0, 2]), p(&[-3, 3]));
        assert_eq!(
            r.num(),
            &p(&[2, 2]).scale(&crate::algebra::field::ratio(1, 3))
        );
        assert!(r.den().is_one());
        let s = RatFunc::new(p(&[0, 0, 1]), p(&[1, 0, 0, 2]));
        assert_eq!(s.den().lc(), crate::algebra::field::rat(1));
        assert_eq!(s.degree(), 3);
    }

    #[test]
    fn point_height_examples() {
        let f = |v: &[i64]| RatFunc::from_poly(p(v));
        assert_eq!(point_height(&[f(&[0, 0, 1]), f(&[1, 0, 0, 1]), f(&[1])]), 3);
        assert_eq!(
            point_height(&[f(&[1]), RatFunc::zero(), RatFunc::zero()]),
            0
        );
        assert_eq!(
            point_height(&[f(&[0, 1, 1]), f(&[0, 0, 0, 1]), f(&[0, 1])]),
            2
        );
    }

    #[test]
    fn display() {
        let r = RatFunc::new(p(&[1]), p(&[0, 1]));
        assert_eq!(r.to_string(), "1/t");
        let r = RatFunc::new(p(&[1, 1]), p(&[-1, 1]));
        assert_eq!(r.to_string(), "(t + 1)/(t - 1)");
    }
}
