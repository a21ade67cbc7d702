//! Singular points, excellent position, centered quadratic transformations and resolution.

use num::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::field::{Field, Rational};
use crate::bounds::eval_ni;
use crate::error::{Error, Result};
use crate::heights::{det3, Matrix3};

use super::proj::{
    is_ordinary, linear_change, multiplicity, standard_quadratic, ProjPoint, ProjPoly,
};
use super::zeros::common_zeros;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoint<C: Field> {
    pub point: ProjPoint<C>,
    pub multiplicity: u32,
    pub ordinary: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularReport<C: Field> {
    pub points: Vec<SingularPoint<C>>,
    /// Singular points (with multiplicity weights) whose coordinates are not in the field.
    pub residual_count: usize,
}

impl<C: Field> SingularReport<C> {
    pub fn non_ordinary(&self) -> impl Iterator<Item = &SingularPoint<C>> {
        self.points.iter().filter(|p| !p.ordinary)
    }
}

/// All singular points with coordinates in the coefficient field, classified.
pub fn find_singular_points<C: Field>(f: &ProjPoly<C>) -> Result<SingularReport<C>> {
    let partials: Vec<_> = (0..3).map(|i| f.poly().partial(i)).collect();
    let z = common_zeros(&partials).map_err(|e| match e {
        Error::CommonFactor => Error::Reducible("repeated factor".into()),
        e => e,
    })?;
    let mut points = Vec::new();
    for p in z.points {
        let r = multiplicity(f, &p);
        let ordinary = is_ordinary(f, &p, r)?;
        points.push(SingularPoint {
            point: p,
            multiplicity: r,
            ordinary,
        });
    }
    Ok(SingularReport {
        points,
        residual_count: z.residual,
    })
}

/// Univariate restriction `F` on a coordinate line through the center, in the remaining
/// non-center coordinate.
fn line_poly<C: Field>(f: &ProjPoly<C>, zero: usize) -> crate::UniPoly<C> {
    let other = 1 - zero;
    let mut c = vec![C::zero(); f.degree() as usize + 1];
    for (m, a) in f.poly().terms() {
        if m.0[zero] == 0 {
            c[m.0[other] as usize] = a.clone();
        }
    }
    crate::UniPoly::new(c)
}

/// Whether `F` (singular at `(0,0,1)`) is in excellent position.
pub fn excellent_position_check<C: Field>(f: &ProjPoly<C>) -> Result<bool> {
    let o = ProjPoint {
        coords: [C::zero(), C::zero(), C::one()],
    };
    let r = multiplicity(f, &o);
    if r == 0 {
        return Err(Error::NotOnCurve);
    }
    let n = f.degree() as usize;
    // line x2 = 0: n distinct points, none fundamental
    let (u, _) = f.restrict_to_line(2);
    if u.degree() != Some(n) || u.coeff(0).is_zero() || !u.is_squarefree() {
        return Ok(false);
    }
    // lines x0 = 0 and x1 = 0: n - r distinct points away from the fundamental points
    for zero in [0, 1] {
        let u = line_poly(f, zero);
        if u.degree() != Some(n) || u.valuation() != Some(r as usize) {
            return Ok(false);
        }
        let h = crate::UniPoly::new(u.coeffs()[r as usize..].to_vec());
        if h.deg0() > 0 && !h.is_squarefree() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn from_i128<C: Field>(a: i128) -> C {
    C::from_rational(&Rational::from_integer(BigInt::from(a)))
}

/// Quadratic transformation centered at a singular point `c`: a seeded coordinate change that
/// sends `(0,0,1)` to `c` with the curve in excellent position, followed by the standard
/// transformation.
pub fn centered_quadratic<C: Field>(
    f: &ProjPoly<C>,
    c: &ProjPoint<C>,
    seed: u64,
) -> Result<(ProjPoly<C>, Matrix3<C>)> {
    let r = multiplicity(f, c);
    if r < 2 {
        return Err(Error::Precondition("center is not a singular point".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bound: i128 = 5;
    for _ in 0..64 {
        let a: Vec<C> = (0..6)
            .map(|_| from_i128(rng.gen_range(-bound..=bound)))
            .collect();
        let m: Matrix3<C> = [
            [a[0].clone(), a[1].clone(), a[2].clone()],
            [a[3].clone(), a[4].clone(), a[5].clone()],
            c.coords.clone(),
        ];
        bound = bound.saturating_mul(2);
        if det3(&m).is_zero() {
            continue;
        }
        let g = linear_change(f, &m)?;
        if excellent_position_check(&g)? {
            let q = standard_quadratic(&g)?;
            debug_assert!(q.degree() <= 2 * f.degree() - r);
            return Ok((q, m));
        }
    }
    Err(Error::Budget(
        "no coordinate change in excellent position within 64 attempts".into(),
    ))
}

#[derive(Clone, Debug)]
pub struct ResolutionStep<C: Field> {
    pub index: usize,
    pub center: ProjPoint<C>,
    pub center_multiplicity: u32,
    pub matrix: Matrix3<C>,
    pub curve: ProjPoly<C>,
    pub degree: u32,
    pub degree_bound: i64,
    pub height: usize,
    pub height_ledger: Rational,
}

#[derive(Clone, Debug)]
pub struct ResolutionTrace<C: Field> {
    pub initial: ProjPoly<C>,
    pub steps: Vec<ResolutionStep<C>>,
    pub s: usize,
    pub final_report: SingularReport<C>,
    /// All singular points of the final curve are rational and ordinary.
    pub complete: bool,
}

/// `n 2^i - 2^{i+1} + 2`.
pub fn degree_ledger(n: u32, i: usize) -> i64 {
    let p = 1i64 << i;
    n as i64 * p - 2 * p + 2
}

/// Apply centered quadratic transformations at non-ordinary singular points until none is left.
pub fn resolve<C: Field>(
    f: &ProjPoly<C>,
    max_steps: usize,
    seed: u64,
) -> Result<ResolutionTrace<C>> {
    let n = f.degree();
    let t0 = Rational::from_integer(BigInt::from(f.height()));
    let mut cur = f.clone();
    let mut steps = Vec::new();
    loop {
        let rep = find_singular_points(&cur)?;
        let pick = rep
            .non_ordinary()
            .fold(
                None::<&super::resolve::SingularPoint<C>>,
                |best, p| match best {
                    Some(b) if b.multiplicity >= p.multiplicity => Some(b),
                    _ => Some(p),
                },
            )
            .cloned();
        let Some(center) = pick else {
            let complete = rep.residual_count == 0;
            return Ok(ResolutionTrace {
                initial: f.clone(),
                s: steps.len(),
                steps,
                final_report: rep,
                complete,
            });
        };
        if steps.len() >= max_steps {
            return Err(Error::Budget(format!(
                "resolution needs more than {max_steps} steps"
            )));
        }
        let i = steps.len() + 1;
        let (next, m) = centered_quadratic(&cur, &center.point, seed.wrapping_add(i as u64))?;
        let bound = degree_ledger(n, i);
        assert!(next.degree() as i64 <= bound, "degree ledger violated");
        steps.push(ResolutionStep {
            index: i,
            center: center.point.clone(),
            center_multiplicity: center.multiplicity,
            matrix: m,
            degree: next.degree(),
            degree_bound: bound,
            height: next.height(),
            height_ledger: eval_ni(i as i64, n as i64, &t0, &Rational::from_integer(0.into()))
                .unwrap(),
            curve: next.clone(),
        });
        cur = next;
    }
}

/// Upper bound on the number of quadratic transformations needed to reach ordinary singularities.
pub fn s_estimate<C: Field>(f: &ProjPoly<C>) -> usize {
    let n = f.degree() as usize;
    let genus_bound = n.saturating_sub(1) * n.saturating_sub(2) / 2;
    match find_singular_points(f) {
        Ok(rep) if rep.residual_count == 0 => {
            let m = rep.non_ordinary().count();
            let delta: usize = rep
                .points
                .iter()
                .map(|p| (p.multiplicity * (p.multiplicity - 1) / 2) as usize)
                .sum();
            (m + genus_bound).saturating_sub(delta)
        }
        _ => genus_bound,
    }
}
