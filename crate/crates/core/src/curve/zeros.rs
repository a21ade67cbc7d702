//! Common zeros of homogeneous polynomials in the projective plane.

use crate::algebra::field::Field;
use crate::algebra::multipoly::MultiPoly;
use crate::algebra::resultant::resultant_bivariate;
use crate::algebra::unipoly::UniPoly;
use crate::error::{Error, Result};

use super::proj::{ProjPoint, ProjPoly};

/// Zeros with coordinates in the field plus a count (with multiplicity weights) of the others.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zeros<C: Field> {
    pub points: Vec<ProjPoint<C>>,
    pub residual: usize,
}

/// Common zeros of homogeneous polynomials; errors when the common locus is not finite.
pub fn common_zeros<C: Field>(polys: &[MultiPoly<C>]) -> Result<Zeros<C>> {
    let polys: Vec<&MultiPoly<C>> = polys.iter().filter(|p| !p.is_zero()).collect();
    if polys.is_empty() {
        return Err(Error::CommonFactor);
    }
    let mut points = Vec::new();
    let mut residual = 0;
    // chart x2 = 1
    let aff: Vec<MultiPoly<C>> = polys.iter().map(|p| p.eval_var(2, &C::one())).collect();
    if aff.iter().all(|p| p.is_zero()) {
        return Err(Error::CommonFactor);
    }
    let (pts, res) = affine_zeros(&aff)?;
    residual += res;
    points.extend(pts.into_iter().map(|(a, b)| ProjPoint {
        coords: [a, b, C::one()],
    }));
    // line x2 = 0, chart x1 = 1
    let line: Vec<UniPoly<C>> = polys
        .iter()
        .map(|p| {
            p.eval_var(2, &C::zero())
                .eval_var(1, &C::one())
                .to_univariate(0)
                .unwrap()
        })
        .collect();
    let g = line.iter().fold(UniPoly::zero(), |g, h| g.gcd(h));
    if g.is_zero() {
        return Err(Error::CommonFactor);
    }
    if g.deg0() > 0 {
        let r = C::roots(&g);
        residual += g.squarefree_part().deg0() - r.len();
        points.extend(r.into_iter().map(|a| ProjPoint {
            coords: [a, C::one(), C::zero()],
        }));
    }
    let e = [C::one(), C::zero(), C::zero()];
    if polys.iter().all(|p| p.eval_all(&e).is_zero()) {
        points.push(ProjPoint { coords: e });
    }
    points.sort();
    Ok(Zeros { points, residual })
}

/// Zeros in the affine plane of polynomials in `(x0, x1)` (third variable unused).
fn affine_zeros<C: Field>(polys: &[MultiPoly<C>]) -> Result<(Vec<(C, C)>, usize)> {
    let nz: Vec<&MultiPoly<C>> = polys.iter().filter(|p| !p.is_zero()).collect();
    if nz.iter().any(|p| p.is_constant()) {
        return Ok((Vec::new(), 0));
    }
    // x0-coordinates: gcd of pairwise resultants in x1
    let mut r: UniPoly<C> = UniPoly::zero();
    if nz.len() == 1 {
        return Err(Error::CommonFactor);
    }
    for i in 0..nz.len() {
        for j in i + 1..nz.len() {
            let res = if nz[i].degree_in(1) == Some(0) && nz[j].degree_in(1) == Some(0) {
                nz[i].gcd_univariate(nz[j], 0)
            } else {
                resultant_bivariate(nz[i], nz[j], 1, 0)?
            };
            r = r.gcd(&res);
        }
    }
    if r.is_zero() {
        return Err(Error::CommonFactor);
    }
    let mut pts = Vec::new();
    let mut residual = 0;
    if r.deg0() == 0 {
        return Ok((pts, 0));
    }
    let rs = r.squarefree_part();
    let roots = C::roots(&rs);
    let mut irr = rs.clone();
    for a in &roots {
        irr = irr.exact_div(&UniPoly::linear_root(a)).unwrap();
        let hs: Vec<UniPoly<C>> = nz
            .iter()
            .map(|p| p.eval_var(0, a).to_univariate(1).unwrap())
            .collect();
        let h = hs.iter().fold(UniPoly::zero(), |g, x| g.gcd(x));
        if h.is_zero() {
            return Err(Error::CommonFactor);
        }
        if h.deg0() == 0 {
            continue;
        }
        let hr = C::roots(&h);
        residual += h.squarefree_part().deg0() - hr.len();
        pts.extend(hr.into_iter().map(|b| (a.clone(), b)));
    }
    if irr.deg0() > 0 {
        let hs: Vec<Vec<UniPoly<C>>> = nz
            .iter()
            .map(|p| {
                p.coeffs_in(1)
                    .iter()
                    .map(|c| c.to_univariate(0).unwrap())
                    .collect()
            })
            .collect();
        residual += count_over_extension(irr, &hs)?;
    }
    Ok((pts, residual))
}

impl<C: Field> MultiPoly<C> {
    fn gcd_univariate(&self, o: &Self, i: usize) -> UniPoly<C> {
        self.to_univariate(i)
            .unwrap()
            .gcd(&o.to_univariate(i).unwrap())
    }
}

type Coeffs<C> = Vec<UniPoly<C>>;

enum Step<C: Field> {
    Monic(Coeffs<C>),
    Split(UniPoly<C>, UniPoly<C>),
}

fn make_monic<C: Field>(h: &Coeffs<C>, m: &UniPoly<C>) -> Step<C> {
    let mut h: Coeffs<C> = h.iter().map(|c| c.rem(m)).collect();
    while h.last().is_some_and(|c| c.is_zero()) {
        h.pop();
    }
    let Some(l) = h.last() else {
        return Step::Monic(h);
    };
    let g = l.gcd(m);
    if g.deg0() > 0 {
        return Step::Split(g.clone(), m.exact_div(&g).unwrap());
    }
    let inv = l.inv_mod(m).unwrap();
    Step::Monic(h.iter().map(|c| (c * &inv).rem(m)).collect())
}

fn rem_over<C: Field>(a: &Coeffs<C>, b: &Coeffs<C>, m: &UniPoly<C>) -> Coeffs<C> {
    // b monic
    let mut r = a.clone();
    let db = b.len() - 1;
    while r.len() > db {
        let k = r.len() - 1 - db;
        let lc = r.last().unwrap().clone();
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = (&r[k + j] - &(&lc * bj)).rem(m);
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

/// Number of common zeros, counted with multiplicity, whose first coordinate is a root of the
/// squarefree `m`; splits `m` on zero divisors.
fn count_over_extension<C: Field>(m: UniPoly<C>, hs: &[Coeffs<C>]) -> Result<usize> {
    let mut work = vec![m];
    let mut total = 0;
    'outer: while let Some(m) = work.pop() {
        let mut g: Coeffs<C> = Vec::new();
        for h in hs {
            let mut a = match make_monic(h, &m) {
                Step::Split(x, y) => {
                    work.push(x);
                    work.push(y);
                    continue 'outer;
                }
                Step::Monic(a) => a,
            };
            let mut b = std::mem::take(&mut g);
            loop {
                if b.is_empty() {
                    g = a;
                    break;
                }
                let r = rem_over(&a, &b, &m);
                a = b;
                b = match make_monic(&r, &m) {
                    Step::Split(x, y) => {
                        work.push(x);
                        work.push(y);
                        continue 'outer;
                    }
                    Step::Monic(c) => c,
                };
            }
        }
        if g.is_empty() {
            return Err(Error::CommonFactor);
        }
        total += m.deg0() * (g.len() - 1);
    }
    Ok(total)
}

/// Common points of two coprime curves.
pub fn common_points<C: Field>(f: &ProjPoly<C>, g: &ProjPoly<C>) -> Result<Vec<ProjPoint<C>>> {
    Ok(common_zeros(&[f.poly().clone(), g.poly().clone()])?.points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Rational;

    fn curve(s: &str) -> ProjPoly {
        ProjPoly::new(crate::text::parse_poly(s, &["x0", "x1", "x2"]).unwrap()).unwrap()
    }

    #[test]
    fn common_point_examples() {
        let p = common_points(&curve("x0^2 - x1*x2"), &curve("x0 - x1")).unwrap();
        assert!(p.contains(&ProjPoint::from_ints(1, 1, 1)));
        assert!(p.contains(&ProjPoint::from_ints(0, 0, 1)));
        assert_eq!(
            common_points(&curve("x0"), &curve("x1")).unwrap(),
            vec![ProjPoint::<Rational>::from_ints(0, 0, 1)]
        );
        assert_eq!(
            common_points(&curve("x0"), &curve("x0 - x2")).unwrap(),
            vec![ProjPoint::<Rational>::from_ints(0, 1, 0)]
        );
        assert_eq!(
            common_points(&curve("x0*x1"), &curve("x0*x2")),
            Err(Error::CommonFactor)
        );
    }

    #[test]
    fn irrational_points_are_counted() {
        // x0^2 - 2 x2^2 meets x1 in two conjugate points
        let z = common_zeros(&[
            curve("x0^2 - 2*x2^2").poly().clone(),
            curve("x1").poly().clone(),
        ])
        .unwrap();
        assert!(z.points.is_empty());
        assert_eq!(z.residual, 2);
        // x0^2 - 2 x2^2 meets x1^2 - 3 x2^2 in four points; x1 - x0 with the first in none over Q
        let z = common_zeros(&[
            curve("x0^2 - 2*x2^2").poly().clone(),
            curve("x1^2 - 3*x2^2").poly().clone(),
        ])
        .unwrap();
        assert_eq!(z.residual, 4);
    }
}
