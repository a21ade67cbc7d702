//! Degree bound for rational solutions, with every intermediate value.

use super::{ms_index, normalize, DiffPoly};
use crate::algebra::field::{rat, Rational};
use crate::algebra::irreducible::is_irreducible_over_qt;
use crate::algebra::multipoly::MultiPoly;
use crate::bounds::{eval_c, eval_final_bound, LedgerEntry};
use crate::curve::proj::proj_vars;
use crate::curve::{s_estimate, ProjPoly};
use crate::error::{Error, Result};
use crate::heights::{height_over_t, over_qt};

/// Largest normalized degree for which singular points are actually computed.
const S_ESTIMATE_MAX_DEGREE: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SSource {
    /// From the singular points of the normalized curve.
    Estimate,
    /// Genus bound of the normalized curve, used above the supported degree or without it.
    GenusBound,
    /// `ceil(9 n^2 / 2)`.
    WorstCase,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct BoundOptions {
    pub worst_case_s: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub n: u32,
    pub d: u32,
    pub index: i64,
    pub n_tilde: u32,
    pub s: u64,
    pub s_source: SSource,
    pub big_n: i64,
    pub mu: i64,
    pub tf: Rational,
    pub tg: Option<Rational>,
    pub c: Rational,
    pub final_bound: Rational,
    pub irreducible: bool,
    pub autonomous: bool,
    /// Positive index and irreducibility over Q(t).
    pub hypotheses_hold: bool,
    pub ledger: Vec<LedgerEntry>,
}

pub fn degree_bound(f: &DiffPoly) -> Result<BoundReport> {
    degree_bound_with(f, BoundOptions::default())
}

pub fn degree_bound_with(f: &DiffPoly, opts: BoundOptions) -> Result<BoundReport> {
    let ms = ms_index(f);
    if !ms.positive {
        return Err(Error::NonPositiveIndex(ms.index));
    }
    let irreducible = is_irreducible_over_qt(f.poly(), 0, 1, 2)?;
    let tf = height_over_t(f.poly(), 0)?;
    let (n, d, l) = (f.n(), f.d(), ms.index);
    let nt = 2 * d + l as u32;
    let g = if irreducible {
        Some(normalize(f)?)
    } else {
        None
    };
    let tg = g
        .as_ref()
        .map(|g| height_over_t(g.g.poly(), 0))
        .transpose()?;
    let genus = |k: u64| k.saturating_sub(1) * k.saturating_sub(2) / 2;
    let (s, s_source) = if opts.worst_case_s {
        (((9 * n * n) as u64).div_ceil(2), SSource::WorstCase)
    } else {
        match &g {
            Some(g) if nt <= S_ESTIMATE_MAX_DEGREE => {
                let h = over_qt(g.g.poly(), 0).homogenize("w");
                let h = MultiPoly::from_terms(
                    &proj_vars(),
                    h.terms().map(|(m, c)| (m.0.clone(), c.clone())),
                );
                let proj = ProjPoly::new(h)?;
                (s_estimate(&proj) as u64, SSource::Estimate)
            }
            _ => (genus(nt as u64), SSource::GenusBound),
        }
    };
    let big_n = (nt * nt) as i64;
    let mu = (2 * big_n + nt as i64) * (nt * nt) as i64;
    let c = eval_c(0, 0, nt as i64, big_n, s as i64, &tf)?;
    let final_bound = eval_final_bound(n as i64, &tf)?;
    let mut ledger = vec![
        LedgerEntry::new("n", "tdeg(f) in (y, y')", rat(n as i64)),
        LedgerEntry::new("d", "deg(f, y')", rat(d as i64)),
        LedgerEntry::new("l", "max_i deg(a_i, y) - 2(d - i)", rat(l)),
        LedgerEntry::new(
            "T(f)",
            "height of the coefficient vector over Q(t)",
            tf.clone(),
        ),
        LedgerEntry::new("n~", "2d + l = tdeg(g)", rat(nt as i64)),
    ];
    if let Some(tg) = &tg {
        ledger.push(LedgerEntry::new("T(g)", "T(g) <= T(f)", tg.clone()));
    }
    let s_anchor = match s_source {
        SSource::Estimate => "m + (n~-1)(n~-2)/2 - sum r(r-1)/2",
        SSource::GenusBound => "(n~-1)(n~-2)/2",
        SSource::WorstCase => "ceil(9n^2/2)",
    };
    ledger.extend([
        LedgerEntry::new("s", s_anchor, rat(s as i64)),
        LedgerEntry::new("N", "n~^2", rat(big_n)),
        LedgerEntry::new("mu", "(2N + n~) n~^2", rat(mu)),
        LedgerEntry::new(
            "C",
            "2^{s^2/2+15s/2+10} (2Nn~ + n~^2 + 2^{s-2})^4 n~^{s+9} (n~+1)^4 T(f) / N",
            c.clone(),
        ),
        LedgerEntry::new("m(n~+1)C", "m = 1", rat(nt as i64 + 1) * &c),
        LedgerEntry::new("4nC", "m(n~+1) <= 4n", rat(4 * n as i64) * &c),
        LedgerEntry::new(
            "final",
            "(54n^3+9n^2+2^{5n^2})^4 n^{5n^2+12} 2^{11n^4+43n^2+34} T(f)",
            final_bound.clone(),
        ),
    ]);
    Ok(BoundReport {
        n,
        d,
        index: l,
        n_tilde: nt,
        s,
        s_source,
        big_n,
        mu,
        tf,
        tg,
        c,
        final_bound,
        irreducible,
        autonomous: f.is_autonomous(),
        hypotheses_hold: irreducible,
        ledger,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::pow2;

    fn df(s: &str) -> DiffPoly {
        DiffPoly::parse(s).unwrap()
    }

    #[test]
    fn autonomous_is_zero() {
        let b = degree_bound(&df("y' - y^3")).unwrap();
        assert_eq!(b.final_bound, rat(0));
        assert!(b.hypotheses_hold);
        let b = degree_bound(&df("y*y'^2 + y^5")).unwrap();
        assert_eq!(b.final_bound, rat(0));
        assert!(!b.irreducible && !b.hypotheses_hold);
    }

    #[test]
    fn planted_example_chain() {
        let b = degree_bound(&df("2*y' + t*y^3 + y^2")).unwrap();
        assert_eq!((b.n, b.d, b.index, b.n_tilde), (3, 1, 1, 3));
        assert_eq!(b.tf, rat(1));
        assert_eq!(b.final_bound, eval_final_bound(3, &rat(1)).unwrap());
        assert!(b.final_bound >= rat(12) * &b.c);
        assert!(b.tg.as_ref().unwrap() <= &b.tf);
        let w = degree_bound_with(
            &df("2*y' + t*y^3 + y^2"),
            BoundOptions { worst_case_s: true },
        )
        .unwrap();
        assert_eq!(w.s, 41);
        assert!(w.c > b.c);
        assert!(pow2(0) <= b.final_bound);
    }

    #[test]
    fn nonpositive_index_is_error() {
        assert_eq!(
            degree_bound(&df("t*y' - 3*y")),
            Err(Error::NonPositiveIndex(0))
        );
    }
}
