//! Taylor expansion of ODE solutions over Q, over Q(c) and over algebraic extensions of Q(c),
//! plus a division-free determinant.

use std::cell::RefCell;

use num::integer::Integer;
#[cfg(test)]
use num::Zero;
use num::{BigInt, One};

use crate::algebra::field::{rat, Field, Rational};
use crate::algebra::multipoly::MultiPoly;
#[cfg(test)]
use crate::algebra::qpoly::det_zpoly;
use crate::algebra::qpoly::det_zpoly_scaled;
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::unipoly::UniPoly;

/// Arithmetic context for series coefficients.
pub(crate) trait Ctx {
    type E: Clone;
    fn from_q(&self, q: &Rational) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Option<Self::E>;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn zero(&self) -> Self::E {
        self.from_q(&rat(0))
    }
}

pub(crate) struct QCtx;

impl Ctx for QCtx {
    type E = Rational;
    fn from_q(&self, q: &Rational) -> Rational {
        q.clone()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        (!Field::is_zero(a)).then(|| a.recip())
    }
    fn is_zero(&self, a: &Rational) -> bool {
        Field::is_zero(a)
    }
}

/// Q(c), with `c` standing for the unknown initial value.
pub(crate) struct KCtx;

impl Ctx for KCtx {
    type E = RatFunc;
    fn from_q(&self, q: &Rational) -> RatFunc {
        RatFunc::constant(q.clone())
    }
    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.plus(b)
    }
    fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.minus(b)
    }
    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.times(b)
    }
    fn inv(&self, a: &RatFunc) -> Option<RatFunc> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &RatFunc) -> bool {
        a.is_zero()
    }
}

/// `Q(c)[p] / (m)`.
pub(crate) struct ExtCtx {
    pub modulus: UniPoly<RatFunc>,
}

impl Ctx for ExtCtx {
    type E = UniPoly<RatFunc>;
    fn from_q(&self, q: &Rational) -> UniPoly<RatFunc> {
        UniPoly::constant(RatFunc::constant(q.clone()))
    }
    fn add(&self, a: &UniPoly<RatFunc>, b: &UniPoly<RatFunc>) -> UniPoly<RatFunc> {
        a + b
    }
    fn sub(&self, a: &UniPoly<RatFunc>, b: &UniPoly<RatFunc>) -> UniPoly<RatFunc> {
        a - b
    }
    fn mul(&self, a: &UniPoly<RatFunc>, b: &UniPoly<RatFunc>) -> UniPoly<RatFunc> {
        (a * b).rem(&self.modulus)
    }
    fn inv(&self, a: &UniPoly<RatFunc>) -> Option<UniPoly<RatFunc>> {
        a.inv_mod(&self.modulus)
    }
    fn is_zero(&self, a: &UniPoly<RatFunc>) -> bool {
        a.is_zero()
    }
}

/// Terms `(e, a, b, coefficient)` of `f(t0 + s, y, p)` as `s^e y^a p^b`.
pub(crate) type Terms = Vec<(usize, usize, usize, Rational)>;

pub(crate) fn shifted_terms(f: &MultiPoly, t0: &Rational) -> Terms {
    let vars = f.vars().clone();
    let shift = &MultiPoly::var(&vars, 0) + &MultiPoly::constant(&vars, t0.clone());
    let g = f.substitute(0, &shift);
    g.terms()
        .map(|(m, c)| (m.0[0] as usize, m.0[1] as usize, m.0[2] as usize, c.clone()))
        .collect()
}

fn eval_at<C: Ctx>(ctx: &C, terms: &Terms, y: &C::E, p: &C::E) -> C::E {
    let mut acc = ctx.zero();
    for (e, a, b, c) in terms {
        if *e != 0 {
            continue;
        }
        let mut v = ctx.from_q(c);
        for _ in 0..*a {
            v = ctx.mul(&v, y);
        }
        for _ in 0..*b {
            v = ctx.mul(&v, p);
        }
        acc = ctx.add(&acc, &v);
    }
    acc
}

/// First `m` Taylor coefficients of the solution through `(t0, y0)` with slope `p0`.
/// `None` when `f_p` is not invertible there.
pub(crate) fn taylor<C: Ctx>(
    ctx: &C,
    terms: &Terms,
    y0: C::E,
    p0: C::E,
    m: usize,
) -> Option<Vec<C::E>> {
    let fp = eval_at(ctx, &dterms(terms), &y0, &p0);
    let inv = ctx.inv(&fp)?;
    Some(taylor_from(ctx, terms, y0, p0, &inv, m))
}

/// Terms of `f_p`.
fn dterms(terms: &Terms) -> Terms {
    terms
        .iter()
        .filter(|t| t.2 > 0)
        .map(|(e, a, b, c)| (*e, *a, *b - 1, c * Rational::from_integer((*b).into())))
        .collect()
}

/// As [`taylor`], given the inverse of `f_p` at the initial point.
fn taylor_from<C: Ctx>(
    ctx: &C,
    terms: &Terms,
    y0: C::E,
    p0: C::E,
    inv: &C::E,
    m: usize,
) -> Vec<C::E> {
    let max_a = terms.iter().map(|t| t.1).max().unwrap_or(0);
    let max_b = terms.iter().map(|t| t.2).max().unwrap_or(0);
    let mut y = vec![y0.clone(), p0.clone()];
    let mut p = vec![p0.clone()];
    if m <= 2 {
        y.truncate(m);
        return y;
    }
    let one = ctx.from_q(&rat(1));
    let mut ypow: Vec<Vec<C::E>> = vec![vec![one.clone()]];
    let mut ppow: Vec<Vec<C::E>> = vec![vec![one.clone()]];
    for a in 1..=max_a {
        let v = ctx.mul(&ypow[a - 1][0], &y0);
        ypow.push(vec![v]);
    }
    for b in 1..=max_b {
        let v = ctx.mul(&ppow[b - 1][0], &p0);
        ppow.push(vec![v]);
    }
    let zero = ctx.zero();
    let push_coeff = |pw: &mut Vec<Vec<C::E>>, base: &[C::E], k: usize| {
        pw[0].push(zero.clone());
        for a in 1..pw.len() {
            let mut s = ctx.zero();
            for j in 0..=k {
                if j < base.len() && !ctx.is_zero(&base[j]) {
                    s = ctx.add(&s, &ctx.mul(&base[j], &pw[a - 1][k - j]));
                }
            }
            if pw[a].len() > k {
                pw[a][k] = s;
            } else {
                pw[a].push(s);
            }
        }
    };
    for k in 1..m - 1 {
        push_coeff(&mut ypow, &y, k);
        push_coeff(&mut ppow, &p, k);
        let mut r = ctx.zero();
        for (e, a, b, c) in terms {
            if *e > k {
                continue;
            }
            let j = k - e;
            let mut s = ctx.zero();
            for i in 0..=j {
                let (u, v) = (&ypow[*a][i], &ppow[*b][j - i]);
                if !ctx.is_zero(u) && !ctx.is_zero(v) {
                    s = ctx.add(&s, &ctx.mul(u, v));
                }
            }
            if !ctx.is_zero(&s) {
                r = ctx.add(&r, &ctx.mul(&s, &ctx.from_q(c)));
            }
        }
        let scale = ctx.from_q(&(-rat(1) / Rational::from_integer((k as i64 + 1).into())));
        let next = ctx.mul(&ctx.mul(&r, inv), &scale);
        p.push(ctx.mul(
            &next,
            &ctx.from_q(&Rational::from_integer((k as i64 + 1).into())),
        ));
        y.push(next);
        ppow[0].pop();
        ppow.iter_mut().skip(1).for_each(|v| {
            v.pop();
        });
        push_coeff(&mut ppow, &p, k);
    }
    y
}

/// Determinant by Berkowitz's division-free algorithm.
#[cfg(test)]
pub(crate) fn berkowitz<C: Ctx>(ctx: &C, a: &[Vec<C::E>]) -> C::E {
    let n = a.len();
    let one = ctx.from_q(&rat(1));
    if n == 0 {
        return one;
    }
    let neg = |x: &C::E| ctx.sub(&ctx.zero(), x);
    let mut c = vec![one.clone(), neg(&a[0][0])];
    for r in 1..n {
        // Toeplitz column: 1, -a_rr, -R S, -R M S, ...
        let mut col = vec![one.clone(), neg(&a[r][r])];
        let mut v: Vec<C::E> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 0..r {
            let mut rs = ctx.zero();
            for j in 0..r {
                rs = ctx.add(&rs, &ctx.mul(&a[r][j], &v[j]));
            }
            col.push(neg(&rs));
            let mut w = Vec::with_capacity(r);
            for i in 0..r {
                let mut s = ctx.zero();
                for j in 0..r {
                    s = ctx.add(&s, &ctx.mul(&a[i][j], &v[j]));
                }
                w.push(s);
            }
            v = w;
        }
        let mut next = Vec::with_capacity(r + 2);
        for i in 0..=r + 1 {
            let mut s = ctx.zero();
            for j in 0..=i.min(r) {
                if !ctx.is_zero(&c[j]) && !ctx.is_zero(&col[i - j]) {
                    s = ctx.add(&s, &ctx.mul(&col[i - j], &c[j]));
                }
            }
            next.push(s);
        }
        c = next;
    }
    if n % 2 == 0 {
        c[n].clone()
    } else {
        neg(&c[n])
    }
}

/// `det [y_{cap+1+i-j}]_{i,j=0..cap}`: vanishes when the series is a ratio of polynomials of
/// degree at most `cap`.
#[cfg(test)]
pub(crate) fn hankel<C: Ctx>(ctx: &C, y: &[C::E], cap: usize) -> C::E {
    let h: Vec<Vec<C::E>> = (0..=cap)
        .map(|i| (0..=cap).map(|j| y[cap + 1 + i - j].clone()).collect())
        .collect();
    berkowitz(ctx, &h)
}

/// Integer polynomials in `c`, for division-free work only.
#[cfg(test)]
pub(crate) struct ZPolyCtx;

#[cfg(test)]
fn zpoly_trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|a| a.is_zero()) {
        v.pop();
    }
    v
}

#[cfg(test)]
impl Ctx for ZPolyCtx {
    type E = Vec<BigInt>;
    fn from_q(&self, q: &Rational) -> Vec<BigInt> {
        assert!(q.is_integer(), "integer constants only");
        zpoly_trim(vec![q.numer().clone()])
    }
    fn add(&self, a: &Vec<BigInt>, b: &Vec<BigInt>) -> Vec<BigInt> {
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut v = long.clone();
        for (x, y) in v.iter_mut().zip(short) {
            *x += y;
        }
        zpoly_trim(v)
    }
    fn sub(&self, a: &Vec<BigInt>, b: &Vec<BigInt>) -> Vec<BigInt> {
        let mut v = a.clone();
        v.resize(a.len().max(b.len()), BigInt::zero());
        for (x, y) in v.iter_mut().zip(b) {
            *x -= y;
        }
        zpoly_trim(v)
    }
    fn mul(&self, a: &Vec<BigInt>, b: &Vec<BigInt>) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                v[i + j] += x * y;
            }
        }
        zpoly_trim(v)
    }
    fn inv(&self, _: &Vec<BigInt>) -> Option<Vec<BigInt>> {
        None
    }
    fn is_zero(&self, a: &Vec<BigInt>) -> bool {
        a.is_empty()
    }
}

/// `Q(c)[x]/(m)` with elements stored as `P(c, x) / (l(c)^i d(c)^j)`, `l` the leading coefficient of
/// `m` cleared of denominators and `d` a common denominator of the imported elements. No gcds needed.
pub(crate) struct FracCtx {
    m: Vec<UniPoly>,
    bases: [UniPoly; 2],
    pows: RefCell<[Vec<UniPoly>; 2]>,
}

#[derive(Clone, Debug)]
pub(crate) struct FracElem {
    p: Vec<UniPoly>,
    e: [usize; 2],
}

impl FracCtx {
    /// `modulus` monic over Q(c).
    fn new(modulus: &UniPoly<RatFunc>, imports: &[&UniPoly<RatFunc>]) -> Self {
        let lcm = |d: UniPoly, e: &UniPoly| {
            if e.deg0() == 0 {
                d
            } else {
                &d * &e.exact_div(&d.gcd(e)).unwrap()
            }
        };
        let dm = modulus
            .coeffs()
            .iter()
            .fold(UniPoly::one(), |d, a| lcm(d, a.den()));
        let m: Vec<UniPoly> = modulus
            .coeffs()
            .iter()
            .map(|a| a.num() * &dm.exact_div(a.den()).unwrap())
            .collect();
        let l = m.last().unwrap().clone();
        let d = imports
            .iter()
            .flat_map(|a| a.coeffs())
            .fold(UniPoly::one(), |d, a| lcm(d, a.den()));
        FracCtx {
            m,
            bases: [l, d],
            pows: RefCell::new([vec![UniPoly::one()], vec![UniPoly::one()]]),
        }
    }

    fn k(&self) -> usize {
        self.m.len() - 1
    }

    fn pow(&self, b: usize, e: usize) -> UniPoly {
        let mut pows = self.pows.borrow_mut();
        while pows[b].len() <= e {
            let next = pows[b].last().unwrap() * &self.bases[b];
            pows[b].push(next);
        }
        pows[b][e].clone()
    }

    fn import(&self, a: &UniPoly<RatFunc>) -> FracElem {
        let d = &self.bases[1];
        let e = if a.coeffs().iter().all(|c| c.den().deg0() == 0) {
            0
        } else {
            1
        };
        let mut p: Vec<UniPoly> = a
            .coeffs()
            .iter()
            .map(|c| {
                if e == 0 {
                    c.num().scale(&c.den().coeff(0).recip())
                } else {
                    c.num() * &d.exact_div(c.den()).expect("denominator divides d")
                }
            })
            .collect();
        p.resize(self.k(), UniPoly::zero());
        FracElem { p, e: [0, e] }
    }

    fn lift(&self, a: &FracElem, e: [usize; 2]) -> Vec<UniPoly> {
        if a.e == e {
            return a.p.clone();
        }
        let f = &self.pow(0, e[0] - a.e[0]) * &self.pow(1, e[1] - a.e[1]);
        a.p.iter().map(|c| c * &f).collect()
    }

    fn combine(&self, a: &FracElem, b: &FracElem, sign: bool) -> FracElem {
        let e = [a.e[0].max(b.e[0]), a.e[1].max(b.e[1])];
        let (x, y) = (self.lift(a, e), self.lift(b, e));
        let p = x
            .iter()
            .zip(&y)
            .map(|(u, v)| if sign { u - v } else { u + v })
            .collect();
        FracElem { p, e }
    }
}

impl Ctx for FracCtx {
    type E = FracElem;
    fn from_q(&self, q: &Rational) -> FracElem {
        let mut p = vec![UniPoly::zero(); self.k()];
        p[0] = UniPoly::constant(q.clone());
        FracElem { p, e: [0, 0] }
    }
    fn add(&self, a: &FracElem, b: &FracElem) -> FracElem {
        self.combine(a, b, false)
    }
    fn sub(&self, a: &FracElem, b: &FracElem) -> FracElem {
        self.combine(a, b, true)
    }
    fn mul(&self, a: &FracElem, b: &FracElem) -> FracElem {
        let k = self.k();
        let mut p = vec![UniPoly::zero(); 2 * k - 1];
        for (i, u) in a.p.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            for (j, v) in b.p.iter().enumerate() {
                if !v.is_zero() {
                    p[i + j] = &p[i + j] + &(u * v);
                }
            }
        }
        let lc = &self.bases[0];
        let mut steps = 0;
        for d in (k..2 * k - 1).rev() {
            let top = std::mem::replace(&mut p[d], UniPoly::zero());
            if top.is_zero() {
                continue;
            }
            steps += 1;
            for (i, c) in p.iter_mut().enumerate().take(d) {
                *c = &*c * lc;
                if i + k >= d {
                    *c = &*c - &(&top * &self.m[i + k - d]);
                }
            }
        }
        p.truncate(k);
        FracElem {
            p,
            e: [a.e[0] + b.e[0] + steps, a.e[1] + b.e[1]],
        }
    }
    fn inv(&self, _: &FracElem) -> Option<FracElem> {
        None
    }
    fn is_zero(&self, a: &FracElem) -> bool {
        a.p.iter().all(|c| c.is_zero())
    }
}

/// Taylor series of the branch `p = x` of `Q(c)[x]/(modulus)` through `y = y0`, in fraction-free form.
/// `None` when `f_p` vanishes on the branch.
pub(crate) fn frac_series(
    terms: &Terms,
    modulus: &UniPoly<RatFunc>,
    y0: &UniPoly<RatFunc>,
    p0: &UniPoly<RatFunc>,
    m: usize,
) -> Option<(FracCtx, Vec<FracElem>)> {
    let ext = ExtCtx {
        modulus: modulus.clone(),
    };
    let inv = ext.inv(&eval_at(&ext, &dterms(terms), y0, p0))?;
    let ctx = FracCtx::new(modulus, &[y0, p0, &inv]);
    let (y0, p0, inv) = (ctx.import(y0), ctx.import(p0), ctx.import(&inv));
    let ser = taylor_from(&ctx, terms, y0, p0, &inv, m);
    Some((ctx, ser))
}

/// A nonzero multiple of the numerator of the norm down to Q(c) of the Hankel determinant of `y`,
/// or zero when that determinant vanishes. Extra roots come only from denominators. The norm is the
/// determinant of the block matrix of multiplication matrices.
pub(crate) fn hankel_norm(ctx: &FracCtx, y: &[FracElem], cap: usize) -> UniPoly {
    let k = ctx.k();
    let mut cols = Vec::with_capacity((2 * cap + 1) * k);
    for a in &y[1..=2 * cap + 1] {
        for s in 0..k {
            let mut p = vec![UniPoly::zero(); k];
            p[s] = UniPoly::one();
            cols.push(ctx.mul(a, &FracElem { p, e: [0, 0] }));
        }
    }
    let n = k * (cap + 1);
    // row `row`, column `col` holds coefficient `row % k` of column element `(cap + row/k - col/k) * k + col % k`
    let elem = |row: usize, col: usize| (cap + row / k - col / k) * k + col % k;
    let mut ex = vec![vec![[0usize; 2]; n]; n];
    for (row, r) in ex.iter_mut().enumerate() {
        for (col, x) in r.iter_mut().enumerate() {
            *x = cols[elem(row, col)].e;
        }
    }
    // row and column scalings r_i + c_j >= e_ij clearing every denominator
    let mut pw = vec![vec![Vec::with_capacity(2); n]; n];
    for b in 0..2 {
        let rmax: Vec<usize> = ex
            .iter()
            .map(|r| r.iter().map(|x| x[b]).max().unwrap())
            .collect();
        let low = *rmax.iter().min().unwrap();
        let rs: Vec<usize> = rmax.iter().map(|m| m - low).collect();
        let cs: Vec<usize> = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| ex[i][j][b].saturating_sub(rs[i]))
                    .max()
                    .unwrap()
            })
            .collect();
        for i in 0..n {
            for j in 0..n {
                pw[i][j].push((rs[i] + cs[j] - ex[i][j][b]) as u32);
            }
        }
    }
    let entries: Vec<&UniPoly> = (0..cols.len() * k).map(|t| &cols[t / k].p[t % k]).collect();
    let idx: Vec<Vec<usize>> = (0..n)
        .map(|row| (0..n).map(|col| elem(row, col) * k + row % k).collect())
        .collect();
    let l = entries
        .iter()
        .flat_map(|u| u.coeffs())
        .chain(ctx.bases.iter().flat_map(|u| u.coeffs()))
        .fold(BigInt::one(), |l, a| l.lcm(a.denom()));
    let to_int = |u: &UniPoly| -> Vec<BigInt> {
        u.coeffs()
            .iter()
            .map(|a| a.numer() * (&l / a.denom()))
            .collect()
    };
    let ints: Vec<Vec<BigInt>> = entries.iter().map(|u| to_int(u)).collect();
    let bases: Vec<Vec<BigInt>> = ctx.bases.iter().map(to_int).collect();
    UniPoly::new(
        det_zpoly_scaled(&ints, &idx, &bases, &pw)
            .into_iter()
            .map(Rational::from_integer)
            .collect(),
    )
}

/// Pade approximant with denominator of least degree `<= cap`, numerator degree `<= cap`, matching
/// all of `y`, normalized by `q(0) = 1`. Coefficients are returned lowest degree first.
pub(crate) fn pade_min<C: Ctx>(ctx: &C, y: &[C::E], cap: usize) -> Option<(Vec<C::E>, Vec<C::E>)> {
    let coef = |k: usize| {
        if k < y.len() {
            y[k].clone()
        } else {
            ctx.zero()
        }
    };
    for dq in 0..=cap {
        // sum_{j=0}^{dq} q_j y_{k-j} = 0 for k = cap+1 .. len-1, with q_0 = 1.
        let mut rows: Vec<Vec<C::E>> = (cap + 1..y.len())
            .map(|k| {
                let mut row: Vec<C::E> = (1..=dq).map(|j| coef(k - j)).collect();
                row.push(ctx.sub(&ctx.zero(), &coef(k)));
                row
            })
            .collect();
        let Some(q) = solve_linear(ctx, &mut rows, dq) else {
            continue;
        };
        let mut qv = vec![ctx.from_q(&rat(1))];
        qv.extend(q);
        let p: Vec<C::E> = (0..=cap)
            .map(|k| {
                let mut s = ctx.zero();
                for (j, qj) in qv.iter().enumerate().take(k + 1) {
                    s = ctx.add(&s, &ctx.mul(qj, &coef(k - j)));
                }
                s
            })
            .collect();
        return Some((p, qv));
    }
    None
}

/// Solve an augmented system with `n` unknowns; `None` if inconsistent. Free unknowns are set to zero.
fn solve_linear<C: Ctx>(ctx: &C, rows: &mut [Vec<C::E>], n: usize) -> Option<Vec<C::E>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(pr) = (r..rows.len()).find(|&i| !ctx.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = ctx.inv(&rows[r][col])?;
        for v in rows[r].iter_mut() {
            *v = ctx.mul(v, &inv);
        }
        for i in 0..rows.len() {
            if i != r && !ctx.is_zero(&rows[i][col]) {
                let f = rows[i][col].clone();
                for j in 0..=n {
                    let d = ctx.mul(&f, &rows[r][j]);
                    rows[i][j] = ctx.sub(&rows[i][j], &d);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !ctx.is_zero(&row[n])) {
        return None;
    }
    let mut x = vec![ctx.zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][n].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{rat, ratio};
    use crate::text::parse_poly;

    #[test]
    fn determinant_matches_cofactor() {
        let m: Vec<Vec<Rational>> = vec![
            vec![rat(2), rat(-1), rat(3)],
            vec![rat(0), rat(4), rat(1)],
            vec![rat(5), rat(2), rat(-2)],
        ];
        // 2(-8-2) + 1(0-5) + 3(0-20)
        assert_eq!(berkowitz(&QCtx, &m), rat(-85));
        let m2 = vec![vec![rat(1), rat(2)], vec![rat(3), rat(4)]];
        assert_eq!(berkowitz(&QCtx, &m2), rat(-2));
    }

    #[test]
    fn taylor_of_known_solution() {
        // 2y' + t y^3 + y^2 = 0 through y(1) = 1 is 1/t = sum (-1)^k s^k.
        let f = parse_poly("2*y' + t*y^3 + y^2", &["t", "y", "y'"]).unwrap();
        let terms = shifted_terms(&f, &rat(1));
        let y = taylor(&QCtx, &terms, rat(1), rat(-1), 8).unwrap();
        let want: Vec<Rational> = (0..8)
            .map(|k| rat(if k % 2 == 0 { 1 } else { -1 }))
            .collect();
        assert_eq!(y, want);
        assert!(Field::is_zero(&hankel(&QCtx, &y, 1)));
        assert!(!Field::is_zero(&hankel(
            &QCtx,
            &[rat(1), ratio(1, 2), ratio(1, 3), ratio(1, 4)],
            1
        )));
        let (p, q) = pade_min(&QCtx, &y, 3).unwrap();
        assert_eq!(
            (p, q),
            (vec![rat(1), rat(0), rat(0), rat(0)], vec![rat(1), rat(1)])
        );
    }

    #[test]
    fn taylor_in_extension_matches_numeric() {
        // y'^2 = 4y has solutions (t + a)^2; over Q(c)[p]/(p^2 - 4c) the series is polynomial.
        let f = parse_poly("y'^2 - 4*y", &["t", "y", "y'"]).unwrap();
        let terms = shifted_terms(&f, &rat(0));
        let ctx = ExtCtx {
            modulus: UniPoly::new(vec![
                RatFunc::t().times(&RatFunc::constant(rat(-4))),
                RatFunc::zero(),
                RatFunc::one(),
            ]),
        };
        let y0 = UniPoly::constant(RatFunc::t());
        let p0 = UniPoly::x();
        let y = taylor(&ctx, &terms, y0, p0, 6).unwrap();
        assert_eq!(y[2], UniPoly::one());
        assert!(y[3].is_zero() && y[4].is_zero());
        assert!(hankel(&ctx, &y, 2).is_zero());
    }

    #[test]
    fn fraction_free_series_matches_extension() {
        for (eq, t0) in [
            ("y*y'^2 + y^5 + t", 1),
            ("y*y'^3 + y^7 + t", 2),
            ("y'^2 - 4*y + t", 0),
        ] {
            let f = parse_poly(eq, &["t", "y", "y'"]).unwrap();
            let t0 = rat(t0);
            let terms = shifted_terms(&f, &t0);
            let fib = f.eval_var(0, &t0);
            let phi: Vec<RatFunc> = fib
                .coeffs_in(2)
                .iter()
                .map(|c| RatFunc::from_poly(c.to_univariate(1).unwrap()))
                .collect();
            let modulus = UniPoly::new(phi).monic();
            let (y0, p0) = (UniPoly::constant(RatFunc::t()), UniPoly::x());
            let (ctx, frac) = frac_series(&terms, &modulus, &y0, &p0, 7).unwrap();
            let ext = taylor(&ExtCtx { modulus }, &terms, y0, p0, 7).unwrap();
            for (a, b) in frac.iter().zip(&ext) {
                let den = &ctx.pow(0, a.e[0]) * &ctx.pow(1, a.e[1]);
                let back = UniPoly::new(
                    a.p.iter()
                        .map(|c| RatFunc::new(c.clone(), den.clone()))
                        .collect(),
                );
                assert_eq!(&back, b);
            }
        }
    }

    #[test]
    fn multimodular_determinant_matches_berkowitz() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 1..6 {
            let entries: Vec<Vec<BigInt>> = (0..2 * n)
                .map(|_| {
                    (0..rng.gen_range(0..5))
                        .map(|_| BigInt::from(rng.gen_range(-1i64 << 40..1 << 40)))
                        .collect()
                })
                .collect();
            let idx: Vec<Vec<usize>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| rng.gen_range(0..2 * n) ^ (i & j & 1))
                        .collect()
                })
                .collect();
            let m: Vec<Vec<Vec<BigInt>>> = idx
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|&k| zpoly_trim(entries[k].clone()))
                        .collect()
                })
                .collect();
            assert_eq!(det_zpoly(&entries, &idx), berkowitz(&ZPolyCtx, &m));
        }
    }
}
