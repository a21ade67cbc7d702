//! Rational solutions of bounded height.
//!
//! Solutions along which `a_d * res_{y'}(f, f_{y'})` vanishes are roots of that polynomial in y.
//! Every other solution is regular at some admissible `t0`, where its Taylor series is determined
//! by `(y(t0), y'(t0))`. Expanding with `y(t0) = c` symbolic, the Hankel determinant of the series
//! vanishes at every `c` giving a solution of height at most `cap`; its rational roots are then
//! expanded numerically, Pade-approximated and verified. When the determinant vanishes
//! identically the whole branch is a one-parameter family, recovered symbolically.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::series::{frac_series, hankel_norm, pade_min, shifted_terms, taylor, KCtx, QCtx};
use super::{degree_bound, verify_solution, DiffPoly};
use crate::algebra::field::{rat, Field, Rational};
use crate::algebra::irreducible::{content_in_t, gcd2, to_qt};
use crate::algebra::multipoly::{var_list, MultiPoly};
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::resultant::resultant;
use crate::algebra::roots::{pade, ratfunc_roots, rational_roots};
use crate::algebra::unipoly::UniPoly;
use crate::error::{Error, Result};

const MAX_RUNS: usize = 400;
/// Work allowance for Hankel determinants, in units of `dim^4`.
const MAX_HANKEL_WORK: usize = 250_000;
/// Largest accepted search cap.
pub const MAX_CAP: usize = 40;

/// One-parameter family `r_c(t) = num(c, t) / den(c, t)` with `r_c(t0) = c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub numerator: MultiPoly,
    pub denominator: MultiPoly,
    pub t0: Rational,
}

impl Family {
    pub fn member(&self, c: &Rational) -> Option<RatFunc> {
        let num = self.numerator.eval_var(0, c).to_univariate(1)?;
        let den = self.denominator.eval_var(0, c).to_univariate(1)?;
        (!den.is_zero()).then(|| RatFunc::new(num, den))
    }

    pub fn contains(&self, r: &RatFunc) -> bool {
        r.eval(&self.t0)
            .and_then(|c| self.member(&c))
            .is_some_and(|m| &m == r)
    }

    pub fn to_text(&self) -> String {
        let n = self.numerator.to_text();
        if self.denominator.is_constant() && self.denominator.constant_term().is_one() {
            return n;
        }
        let wrap = |p: &MultiPoly| {
            let s = p.to_text();
            if p.len() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(&self.numerator), wrap(&self.denominator))
    }

    fn from_pade(p: &UniPoly<RatFunc>, q: &UniPoly<RatFunc>, t0: &Rational) -> Self {
        let vars = var_list(&["c", "t"]);
        let mut l = UniPoly::one();
        for c in p.coeffs().iter().chain(q.coeffs()) {
            l = &l * &c.den().exact_div(&l.gcd(c.den())).unwrap();
        }
        let s = &MultiPoly::var(&vars, 1) - &MultiPoly::constant(&vars, t0.clone());
        let lift = |u: &UniPoly<RatFunc>| {
            let mut acc = MultiPoly::zero(&vars);
            let mut sp = MultiPoly::one(&vars);
            for c in u.coeffs() {
                let k = (c.num() * &l).exact_div(c.den()).unwrap();
                acc = &acc + &(&MultiPoly::from_univariate(&vars, 0, &k) * &sp);
                sp = &sp * &s;
            }
            acc
        };
        let (mut num, mut den) = (lift(p), lift(q));
        let g = content_in_t(&num, 0).gcd(&content_in_t(&den, 0));
        if g.deg0() > 0 {
            let gm = MultiPoly::from_univariate(&vars, 0, &g);
            num = num.exact_div(&gm).unwrap();
            den = den.exact_div(&gm).unwrap();
        }
        let lc = den.leading().unwrap().1.recip();
        Family {
            numerator: num.scale(&lc),
            denominator: den.scale(&lc),
            t0: t0.clone(),
        }
    }

    /// `f(t, N/D, (N'D - ND')/D^2) D^L = 0` in Q[c, t].
    fn verify(&self, f: &MultiPoly) -> bool {
        let (n, d) = (&self.numerator, &self.denominator);
        let w = &(&n.partial(1) * d) - &(n * &d.partial(1));
        let top = f
            .terms()
            .map(|(m, _)| m.0[1] + 2 * m.0[2])
            .max()
            .unwrap_or(0);
        let t = MultiPoly::var(n.vars(), 1);
        let mut acc = MultiPoly::zero(n.vars());
        for (m, c) in f.terms() {
            let (e, a, b) = (m.0[0], m.0[1], m.0[2]);
            let term = &(&(&t.pow(e) * &n.pow(a)) * &w.pow(b)) * &d.pow(top - a - 2 * b);
            acc = &acc + &term.scale(c);
        }
        acc.is_zero()
    }
}

/// Solutions of height at most `search_cap`, split into nonconstant ones, constants and families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub solutions: Vec<RatFunc>,
    pub constants: Vec<Rational>,
    pub families: Vec<Family>,
    pub search_cap: usize,
    pub theoretical_bound: Option<Rational>,
    pub complete_up_to_cap: bool,
    pub notes: Vec<String>,
}

struct Search<'a> {
    f: &'a DiffPoly,
    core: MultiPoly,
    cap: usize,
    found: BTreeSet<RatFunc>,
    families: Vec<Family>,
    complete: bool,
    notes: Vec<String>,
    work: usize,
}

fn y_roots(p: &MultiPoly) -> Vec<RatFunc> {
    if p.degree_in(1).unwrap_or(0) == 0 {
        return vec![];
    }
    ratfunc_roots(&to_qt(p, 0, 1))
}

fn univariate_in(p: &MultiPoly, i: usize) -> UniPoly {
    p.to_univariate(i).expect("single variable expected")
}

impl Search<'_> {
    fn offer(&mut self, r: RatFunc) {
        if r.degree() <= self.cap && !self.found.contains(&r) && verify_solution(self.f, &r) {
            self.found.insert(r);
        }
    }

    /// Charge one Hankel determinant over a branch of degree `k`; false once the budget is gone.
    fn spend(&mut self, k: usize) -> bool {
        let w = (k * (self.cap + 1)).pow(4);
        if self.work + w > MAX_HANKEL_WORK {
            self.incomplete(format!(
                "Hankel work budget exhausted on branches of degree {k} over Q(y(t0))"
            ));
            return false;
        }
        self.work += w;
        true
    }

    fn incomplete(&mut self, why: String) {
        self.complete = false;
        if !self.notes.contains(&why) {
            self.notes.push(why);
        }
    }

    fn numeric(&mut self, t0: &Rational, terms: &super::series::Terms, y0: &Rational) {
        let m = 2 * self.cap + 2;
        let phi = self.core.eval_var(0, t0).eval_var(1, y0);
        let Some(phi) = phi.to_univariate(2) else {
            return;
        };
        if phi.is_zero() {
            return;
        }
        let shift = UniPoly::new(vec![-t0.clone(), rat(1)]);
        for p0 in rational_roots(&phi) {
            let Some(ser) = taylor(&QCtx, terms, y0.clone(), p0, m) else {
                continue;
            };
            let Some((p, q)) = pade(&UniPoly::new(ser), m - 1, self.cap) else {
                continue;
            };
            self.offer(RatFunc::new(p.compose(&shift), q.compose(&shift)));
        }
    }

    fn run(&mut self, t0: &Rational) {
        let m = 2 * self.cap + 2;
        let terms = shifted_terms(&self.core, t0);
        let fib = self.core.eval_var(0, t0);
        let phi = UniPoly::new(
            fib.coeffs_in(2)
                .iter()
                .map(|c| RatFunc::from_poly(univariate_in(c, 1)))
                .collect::<Vec<_>>(),
        );
        let mut rest = phi.clone();
        let mut candidates: BTreeSet<Rational> = BTreeSet::new();
        let c = RatFunc::t();
        for rho in ratfunc_roots(&phi) {
            rest = rest
                .exact_div(&UniPoly::new(vec![rho.negate(), RatFunc::one()]))
                .unwrap();
            if !self.spend(1) {
                continue;
            }
            let branch = UniPoly::new(vec![rho.negate(), RatFunc::one()]);
            let (y0, p0) = (UniPoly::constant(c.clone()), UniPoly::constant(rho.clone()));
            let Some((ctx, ser)) = frac_series(&terms, &branch, &y0, &p0, m) else {
                self.incomplete(format!("singular fibre at t0 = {t0}"));
                continue;
            };
            let h = hankel_norm(&ctx, &ser, self.cap);
            if !h.is_zero() {
                candidates.extend(rational_roots(&h));
                continue;
            }
            let ser = taylor(&KCtx, &terms, c.clone(), rho.clone(), m)
                .expect("f_p is invertible on this branch");
            let Some((p, q)) = pade_min(&KCtx, &ser, self.cap) else {
                self.incomplete(format!("family at t0 = {t0} not recovered"));
                continue;
            };
            let (p, q) = (UniPoly::new(p), UniPoly::new(q));
            for u in p.coeffs().iter().chain(q.coeffs()) {
                candidates.extend(rational_roots(u.den()));
            }
            let fam = Family::from_pade(&p, &q, t0);
            candidates.extend(rational_roots(&content_in_t(&fam.denominator, 0)));
            if !fam.verify(&self.core) {
                self.incomplete(format!("family candidate at t0 = {t0} failed verification"));
                continue;
            }
            if !self.families.iter().any(|old| same_family(old, &fam)) {
                self.families.push(fam);
            }
        }
        if rest.deg0() > 0 && self.spend(rest.deg0()) {
            let (y0, p0) = (UniPoly::constant(c.clone()), UniPoly::x());
            match frac_series(&terms, &rest.monic(), &y0, &p0, m) {
                None => self.incomplete(format!("singular fibre at t0 = {t0}")),
                Some((ctx, ser)) => {
                    let r = hankel_norm(&ctx, &ser, self.cap);
                    if r.is_zero() {
                        self.incomplete(format!(
                            "branch of degree {} over Q(y(t0)) at t0 = {t0} carries a family defined over an extension",
                            rest.deg0()
                        ));
                    } else {
                        candidates.extend(rational_roots(&r));
                    }
                }
            }
        }
        for y0 in candidates {
            self.numeric(t0, &terms, &y0);
        }
    }
}

fn same_family(a: &Family, b: &Family) -> bool {
    let members: Vec<RatFunc> = (1..=4).filter_map(|k| b.member(&rat(k))).take(2).collect();
    !members.is_empty() && members.iter().all(|r| a.contains(r))
}

fn t0_sequence() -> impl Iterator<Item = Rational> {
    (0i64..).flat_map(|k| {
        if k == 0 {
            vec![rat(0)]
        } else {
            vec![rat(k), rat(-k)]
        }
    })
}

/// All rational solutions `r` with `max(deg num, deg den) <= cap`.
pub fn find_rational_solutions(f: &DiffPoly, cap: usize) -> Result<SolutionSet> {
    if cap > MAX_CAP {
        return Err(Error::Budget(format!(
            "cap {cap} exceeds the supported maximum {MAX_CAP}"
        )));
    }
    let vars: Arc<[String]> = f.poly().vars().clone();
    let mut content = MultiPoly::zero(&vars);
    for a in f.coeffs() {
        content = gcd2(&content, &a, 0, 1);
    }
    let core = if content.degree_in(1).unwrap_or(0) > 0 {
        f.poly().exact_div(&content).expect("content divides")
    } else {
        f.poly().clone()
    };
    let mut st = Search {
        f,
        core: core.clone(),
        cap,
        found: BTreeSet::new(),
        families: vec![],
        complete: true,
        notes: vec![],
        work: 0,
    };
    for r in y_roots(&content) {
        st.offer(r);
    }
    let d = core.degree_in(2).unwrap_or(0) as usize;
    let ad = core.coeffs_in(2)[d].clone();
    let disc = resultant(&core, &core.partial(2), &vars[2])?;
    for r in y_roots(&ad).into_iter().chain(y_roots(&disc)) {
        st.offer(r);
    }
    if disc.is_zero() {
        st.incomplete("equation is not squarefree in the derivative".into());
    }
    let deg = |p: &MultiPoly, i: usize| p.degree_in(i).unwrap_or(0) as usize;
    let mut runs = if f.is_autonomous() {
        1
    } else {
        let (dt, dy) = (deg(&ad, 0) + deg(&disc, 0), deg(&ad, 1) + deg(&disc, 1));
        dt + cap * dy + cap + 1
    };
    if runs > MAX_RUNS {
        st.incomplete(format!(
            "{runs} expansion points needed, budget is {MAX_RUNS}"
        ));
        runs = MAX_RUNS;
    }
    let admissible = |t0: &Rational| {
        !ad.eval_var(0, t0).is_zero() && (disc.is_zero() || !disc.eval_var(0, t0).is_zero())
    };
    for t0 in t0_sequence().filter(admissible).take(runs) {
        st.run(&t0);
    }
    let families = st.families;
    let (mut solutions, mut constants) = (vec![], vec![]);
    for r in st.found {
        if families.iter().any(|fam| fam.contains(&r)) {
            continue;
        }
        if r.is_poly() && r.num().deg0() == 0 {
            constants.push(r.num().coeff(0));
        } else {
            solutions.push(r);
        }
    }
    let theoretical_bound = match degree_bound(f) {
        Ok(b) if b.hypotheses_hold => Some(b.final_bound),
        _ => None,
    };
    Ok(SolutionSet {
        solutions,
        constants,
        families,
        search_cap: cap,
        theoretical_bound,
        complete_up_to_cap: st.complete,
        notes: st.notes,
    })
}
