use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::{Field, Rational};
use super::unipoly::{PowU, UniPoly};

/// Exponent vector ordered graded-lexicographically (first variable is the largest).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| self.0.cmp(&o.0))
    }
}

/// Sparse multivariate polynomial with a fixed ordered variable list.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly<C: Field = Rational> {
    vars: Arc<[String]>,
    terms: BTreeMap<Mono, C>,
}

pub fn var_list(names: &[&str]) -> Arc<[String]> {
    names.iter().map(|s| s.to_string()).collect()
}

impl<C: Field> MultiPoly<C> {
    pub fn zero(vars: &Arc<[String]>) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<[String]>, c: C) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Mono(vec![0; vars.len()]), c);
        }
        p
    }

    pub fn one(vars: &Arc<[String]>) -> Self {
        Self::constant(vars, C::one())
    }

    /// The `i`-th variable.
    pub fn var(vars: &Arc<[String]>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::from_terms(vars, vec![(e, C::one())])
    }

    pub fn from_terms(
        vars: &Arc<[String]>,
        terms: impl IntoIterator<Item = (Vec<u32>, C)>,
    ) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent length mismatch");
            p.add_term(Mono(e), c);
        }
        p
    }

    pub fn add_term(&mut self, m: Mono, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().plus(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = &C> {
        self.terms.values()
    }

    pub fn coeff(&self, e: &[u32]) -> C {
        self.terms
            .get(&Mono(e.to_vec()))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&vec![0; self.nvars()])
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Mono, &C)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).max()
    }

    pub fn min_degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.times(c)))
                .collect(),
        }
    }

    pub fn map<D: Field>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        MultiPoly::from_terms(
            &self.vars,
            self.terms.iter().map(|(m, a)| (m.0.clone(), f(a))),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.vars);
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

    /// Multiply by a monomial.
    pub fn mul_mono(&self, e: &[u32], c: &C) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| {
                    (
                        Mono(m.0.iter().zip(e).map(|(x, y)| x + y).collect()),
                        a.times(c),
                    )
                })
                .collect(),
        }
    }

    /// Coefficients of powers of variable `i` (each free of variable `i`).
    pub fn coeffs_in(&self, i: usize) -> Vec<Self> {
        let n = self.degree_in(i).map_or(0, |d| d as usize + 1);
        let mut out = vec![Self::zero(&self.vars); n];
        for (m, a) in &self.terms {
            let mut e = m.0.clone();
            let k = e[i] as usize;
            e[i] = 0;
            out[k].terms.insert(Mono(e), a.clone());
        }
        out
    }

    pub fn from_coeffs_in(vars: &Arc<[String]>, i: usize, cs: &[Self]) -> Self {
        let mut p = Self::zero(vars);
        for (k, c) in cs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut e = m.0.clone();
                e[i] += k as u32;
                p.add_term(Mono(e), a.clone());
            }
        }
        p
    }

    /// Set variable `i` to `x` (the variable stays in the list with exponent 0).
    pub fn eval_var(&self, i: usize, x: &C) -> Self {
        let mut p = Self::zero(&self.vars);
        for (m, a) in &self.terms {
            let mut e = m.0.clone();
            let k = e[i];
            e[i] = 0;
            p.add_term(Mono(e), a.times(&x.pow_u(k as usize)));
        }
        p
    }

    /// Evaluate all variables.
    pub fn eval_all(&self, x: &[C]) -> C {
        let mut acc = C::zero();
        for (m, a) in &self.terms {
            let mut t = a.clone();
            for (k, &d) in m.0.iter().enumerate() {
                if d > 0 {
                    t = t.times(&x[k].pow_u(d as usize));
                }
            }
            acc = acc.plus(&t);
        }
        acc
    }

    /// Replace every variable by a polynomial over a common target variable list.
    pub fn compose(&self, subs: &[MultiPoly<C>], target: &Arc<[String]>) -> MultiPoly<C> {
        assert_eq!(subs.len(), self.nvars());
        let mut cache: Vec<Vec<MultiPoly<C>>> = subs
            .iter()
            .map(|s| vec![MultiPoly::one(target), s.clone()])
            .collect();
        let mut acc = MultiPoly::zero(target);
        for (m, a) in &self.terms {
            let mut t = MultiPoly::constant(target, a.clone());
            for (k, &d) in m.0.iter().enumerate() {
                let d = d as usize;
                while cache[k].len() <= d {
                    let next = &cache[k][cache[k].len() - 1] * &subs[k];
                    cache[k].push(next);
                }
                if d > 0 {
                    t = &t * &cache[k][d];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Substitute polynomial `g` (same variable list) for variable `i`.
    pub fn substitute(&self, i: usize, g: &Self) -> Self {
        let subs: Vec<Self> = (0..self.nvars())
            .map(|k| {
                if k == i {
                    g.clone()
                } else {
                    Self::var(&self.vars, k)
                }
            })
            .collect();
        self.compose(&subs, &self.vars)
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut p = Self::zero(&self.vars);
        for (m, a) in &self.terms {
            if m.0[i] == 0 {
                continue;
            }
            let mut e = m.0.clone();
            let k = e[i];
            e[i] -= 1;
            p.add_term(Mono(e), a.times(&C::from_int(k as i64)));
        }
        p
    }

    /// Re-express over another variable list; every used variable must appear there.
    pub fn with_vars(&self, target: &Arc<[String]>) -> Self {
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| target.iter().position(|w| w == v))
            .collect();
        let mut p = Self::zero(target);
        for (m, a) in &self.terms {
            let mut e = vec![0; target.len()];
            for (k, &d) in m.0.iter().enumerate() {
                if d > 0 {
                    e[map[k].unwrap_or_else(|| panic!("variable {} missing", self.vars[k]))] += d;
                }
            }
            p.add_term(Mono(e), a.clone());
        }
        p
    }

    /// Append a homogenizing variable.
    pub fn homogenize(&self, name: &str) -> Self {
        let mut names: Vec<String> = self.vars.to_vec();
        names.push(name.to_string());
        let vars: Arc<[String]> = names.into();
        let d = self.total_degree().unwrap_or(0);
        let mut p = Self::zero(&vars);
        for (m, a) in &self.terms {
            let mut e = m.0.clone();
            e.push(d - m.degree());
            p.add_term(Mono(e), a.clone());
        }
        p
    }

    /// Set variable `i` to 1 and drop it from the list.
    pub fn dehomogenize(&self, i: usize) -> Self {
        let vars: Arc<[String]> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, v)| v.clone())
            .collect();
        let mut p = Self::zero(&vars);
        for (m, a) in &self.terms {
            let mut e = m.0.clone();
            e.remove(i);
            p.add_term(Mono(e), a.clone());
        }
        p
    }

    /// Univariate view when only variable `i` occurs.
    pub fn to_univariate(&self, i: usize) -> Option<UniPoly<C>> {
        let mut c = vec![C::zero(); self.degree_in(i).map_or(0, |d| d as usize + 1)];
        for (m, a) in &self.terms {
            if m.0.iter().enumerate().any(|(k, &d)| k != i && d > 0) {
                return None;
            }
            c[m.0[i] as usize] = a.clone();
        }
        Some(UniPoly::new(c))
    }

    pub fn from_univariate(vars: &Arc<[String]>, i: usize, u: &UniPoly<C>) -> Self {
        let mut p = Self::zero(vars);
        for (k, a) in u.coeffs().iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[i] = k as u32;
            p.add_term(Mono(e), a.clone());
        }
        p
    }

    /// Divide by the largest monomial dividing every term; returns the stripped exponents.
    pub fn strip_monomial(&self) -> (Self, Vec<u32>) {
        let n = self.nvars();
        let g: Vec<u32> = (0..n).map(|i| self.min_degree_in(i).unwrap_or(0)).collect();
        let mut p = Self::zero(&self.vars);
        for (m, a) in &self.terms {
            p.terms.insert(
                Mono(m.0.iter().zip(&g).map(|(x, y)| x - y).collect()),
                a.clone(),
            );
        }
        (p, g)
    }

    /// Exact quotient, `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (dm, dc) = d.leading().expect("division by zero polynomial");
        let (dm, dinv) = (dm.clone(), dc.recip());
        let mut r = self.clone();
        let mut q = Self::zero(&self.vars);
        while let Some((m, c)) = r.leading() {
            if m.0.iter().zip(&dm.0).any(|(a, b)| a < b) {
                return None;
            }
            let e: Vec<u32> = m.0.iter().zip(&dm.0).map(|(a, b)| a - b).collect();
            let f = c.times(&dinv);
            r = &r - &d.mul_mono(&e, &f);
            q.add_term(Mono(e), f);
        }
        Some(q)
    }

    /// Variables that actually occur.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.degree_in(i).is_some_and(|d| d > 0))
            .collect()
    }

    fn assert_compat(&self, o: &Self) {
        assert!(
            Arc::ptr_eq(&self.vars, &o.vars) || self.vars == o.vars,
            "variable lists differ: {:?} vs {:?}",
            self.vars,
            o.vars
        );
    }

    /// Canonical text: descending graded-lex terms, explicit `*` and `^`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, a) in self.terms.iter().rev() {
            let s = a.to_string();
            let digits = s.strip_prefix('-').unwrap_or(&s);
            let simple = digits.chars().all(|c| c.is_ascii_digit() || c == '/');
            let (neg, body) = if simple && s.starts_with('-') {
                (true, digits.to_string())
            } else {
                (false, s.clone())
            };
            let body = if simple { body } else { format!("({s})") };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &d)| d > 0)
                    .map(|(k, &d)| {
                        if d == 1 {
                            self.vars[k].clone()
                        } else {
                            format!("{}^{}", self.vars[k], d)
                        }
                    })
                    .collect();
            if mono.is_empty() {
                out.push_str(&body);
            } else if body == "1" {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&body);
                out.push('*');
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl<C: Field> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<C: Field> Add for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, o: &MultiPoly<C>) -> MultiPoly<C> {
        self.assert_compat(o);
        let mut p = self.clone();
        for (m, a) in &o.terms {
            p.add_term(m.clone(), a.clone());
        }
        p
    }
}

impl<C: Field> Sub for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, o: &MultiPoly<C>) -> MultiPoly<C> {
        self.assert_compat(o);
        let mut p = self.clone();
        for (m, a) in &o.terms {
            p.add_term(m.clone(), a.negate());
        }
        p
    }
}

impl<C: Field> Mul for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, o: &MultiPoly<C>) -> MultiPoly<C> {
        self.assert_compat(o);
        let mut p = MultiPoly::zero(&self.vars);
        for (m1, a) in &self.terms {
            for (m2, b) in &o.terms {
                p.add_term(
                    Mono(m1.0.iter().zip(&m2.0).map(|(x, y)| x + y).collect()),
                    a.times(b),
                );
            }
        }
        p
    }
}

impl<C: Field> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.negate()))
                .collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<C: Field> $tr for MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $m(self, o: MultiPoly<C>) -> MultiPoly<C> {
                (&self).$m(&o)
            }
        }
        impl<C: Field> $tr<&MultiPoly<C>> for MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $m(self, o: &MultiPoly<C>) -> MultiPoly<C> {
                (&self).$m(o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<C: Field> Neg for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::rat;

    fn xy() -> (Arc<[String]>, MultiPoly, MultiPoly) {
        let v = var_list(&["x0", "x1"]);
        (v.clone(), MultiPoly::var(&v, 0), MultiPoly::var(&v, 1))
    }

    #[test]
    fn homogenize_round_trip() {
        let (v, t, y) = xy();
        let f = &y.pow(2) - &t.pow(3);
        let h = f.homogenize("x2");
        assert_eq!(h.to_text(), "-x0^3 + x1^2*x2");
        assert_eq!(h.dehomogenize(2), f);
        let g = &t * &y;
        assert_eq!(
            g.homogenize("x2")
                .dehomogenize(2)
                .homogenize("x2")
                .to_text(),
            "x0*x1"
        );
        assert!(MultiPoly::<Rational>::one(&v)
            .homogenize("x2")
            .is_homogeneous());
    }

    #[test]
    fn exact_division() {
        let (_, x, y) = xy();
        let a = &(&x + &y) * &(&x.pow(2) - &y.scale(&rat(3)));
        assert_eq!(
            a.exact_div(&(&x + &y)).unwrap(),
            &x.pow(2) - &y.scale(&rat(3))
        );
        assert!(a.exact_div(&(&x - &y)).is_none());
    }

    #[test]
    fn compose_and_partial() {
        let (_, x, y) = xy();
        let f = &x.pow(2) * &y;
        assert_eq!(f.partial(0), (&x * &y).scale(&rat(2)));
        let g = f.substitute(1, &(&x + &y));
        assert_eq!(g, &x.pow(3) + &(&x.pow(2) * &y));
    }

    #[test]
    fn canonical_text() {
        let v = var_list(&["t", "y", "y'"]);
        let t = MultiPoly::<Rational>::var(&v, 0);
        let y = MultiPoly::var(&v, 1);
        let p = MultiPoly::var(&v, 2);
        let f = &(&p.scale(&rat(2)) + &(&t * &y.pow(3))) + &y.pow(2);
        assert_eq!(f.to_text(), "t*y^3 + y^2 + 2*y'");
        let g = &p.scale(&crate::algebra::field::ratio(-1, 2)) - &MultiPoly::one(&v);
        assert_eq!(g.to_text(), "-1/2*y' - 1");
    }
}
