use std::fmt;
use std::sync::Arc;

use crate::algebra::field::Field;
use crate::algebra::multipoly::{var_list, Mono, MultiPoly};
use crate::algebra::unipoly::UniPoly;
use crate::error::{Error, Result};
use crate::heights::{det3, Matrix3};

pub fn proj_vars() -> Arc<[String]> {
    thread_local! {
        static V: Arc<[String]> = var_list(&["x0", "x1", "x2"]);
    }
    V.with(|v| v.clone())
}

/// Nonzero homogeneous polynomial in `(x0, x1, x2)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjPoly<C: Field = crate::Rational> {
    poly: MultiPoly<C>,
}

impl<C: Field> ProjPoly<C> {
    pub fn new(poly: MultiPoly<C>) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::ZeroInput("curve polynomial"));
        }
        if !poly.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let poly = if poly.nvars() == 3 && poly.vars()[..] == proj_vars()[..] {
            poly
        } else if poly
            .used_vars()
            .iter()
            .all(|&i| ["x0", "x1", "x2"].contains(&poly.vars()[i].as_str()))
        {
            poly.with_vars(&proj_vars())
        } else {
            return Err(Error::Precondition(
                "curve polynomials use x0, x1, x2".into(),
            ));
        };
        Ok(ProjPoly { poly })
    }

    pub fn poly(&self) -> &MultiPoly<C> {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.poly.total_degree().unwrap()
    }

    pub fn eval(&self, p: &ProjPoint<C>) -> C {
        self.poly.eval_all(&p.coords)
    }

    /// Height of the coefficient vector.
    pub fn height(&self) -> usize {
        let c: Vec<C> = self.poly.coeffs().cloned().collect();
        C::tuple_height(&c)
    }

    /// Whether the polynomial is a scalar multiple of a coordinate variable.
    pub fn is_coordinate_line(&self) -> bool {
        self.poly.len() == 1 && self.degree() == 1
    }

    /// Binary form obtained by setting coordinate `i` to zero, as a univariate polynomial in the
    /// first remaining coordinate with the second set to one.
    pub fn restrict_to_line(&self, i: usize) -> (UniPoly<C>, u32) {
        let rest: Vec<usize> = (0..3).filter(|&k| k != i).collect();
        let mut c = vec![C::zero(); self.degree() as usize + 1];
        let mut any = false;
        for (m, a) in self.poly.terms() {
            if m.0[i] == 0 {
                c[m.0[rest[0]] as usize] = a.clone();
                any = true;
            }
        }
        let _ = any;
        (UniPoly::new(c), self.degree())
    }

    /// Canonical text.
    pub fn to_text(&self) -> String {
        self.poly.to_text()
    }
}

impl<C: Field> fmt::Display for ProjPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Point of the projective plane, normalized so that its last nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjPoint<C: Field = crate::Rational> {
    pub coords: [C; 3],
}

impl<C: Field> ProjPoint<C> {
    pub fn new(c: [C; 3]) -> Result<Self> {
        let k = (0..3)
            .rev()
            .find(|&i| !c[i].is_zero())
            .ok_or(Error::ZeroInput("point coordinates"))?;
        let inv = c[k].recip();
        Ok(ProjPoint {
            coords: [c[0].times(&inv), c[1].times(&inv), c[2].times(&inv)],
        })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        Self::new([C::from_int(a), C::from_int(b), C::from_int(c)]).unwrap()
    }

    /// Index of the normalized (last nonzero) coordinate.
    pub fn pivot(&self) -> usize {
        (0..3).rev().find(|&i| !self.coords[i].is_zero()).unwrap()
    }

    pub fn is_fundamental(&self) -> bool {
        self.coords.iter().filter(|c| c.is_zero()).count() == 2
    }

    pub fn height(&self) -> usize {
        C::tuple_height(&self.coords)
    }

    /// Image under the row-vector map `p -> p M`.
    pub fn mul_matrix(&self, m: &Matrix3<C>) -> Self {
        let c: [C; 3] = std::array::from_fn(|j| {
            (0..3).fold(C::zero(), |acc, l| {
                acc.plus(&self.coords[l].times(&m[l][j]))
            })
        });
        Self::new(c).expect("invertible matrix")
    }

    pub fn to_text(&self) -> String {
        format!(
            "({}, {}, {})",
            self.coords[0], self.coords[1], self.coords[2]
        )
    }
}

impl<C: Field> PartialOrd for ProjPoint<C> {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl<C: Field> Ord for ProjPoint<C> {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.coords.cmp(&o.coords)
    }
}

pub fn identity<C: Field>() -> Matrix3<C> {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { C::one() } else { C::zero() }))
}

pub fn inverse<C: Field>(m: &Matrix3<C>) -> Option<Matrix3<C>> {
    let d = det3(m);
    if d.is_zero() {
        return None;
    }
    let di = d.recip();
    let cof = |i: usize, j: usize| {
        let r: Vec<usize> = (0..3).filter(|&k| k != i).collect();
        let c: Vec<usize> = (0..3).filter(|&k| k != j).collect();
        let v = m[r[0]][c[0]]
            .times(&m[r[1]][c[1]])
            .minus(&m[r[0]][c[1]].times(&m[r[1]][c[0]]));
        if (i + j) % 2 == 1 {
            v.negate()
        } else {
            v
        }
    };
    Some(std::array::from_fn(|i| {
        std::array::from_fn(|j| cof(j, i).times(&di))
    }))
}

/// `F((x0, x1, x2) M)`.
pub fn linear_change<C: Field>(f: &ProjPoly<C>, m: &Matrix3<C>) -> Result<ProjPoly<C>> {
    if det3(m).is_zero() {
        return Err(Error::SingularMatrix);
    }
    let vars = proj_vars();
    let subs: Vec<MultiPoly<C>> = (0..3)
        .map(|j| {
            MultiPoly::from_terms(
                &vars,
                (0..3).map(|l| {
                    let mut e = vec![0; 3];
                    e[l] = 1;
                    (e, m[l][j].clone())
                }),
            )
        })
        .collect();
    ProjPoly::new(f.poly.compose(&subs, &vars))
}

/// Standard quadratic transformation: substitute `(x1 x2, x0 x2, x0 x1)` and strip the monomial factor.
pub fn standard_quadratic<C: Field>(f: &ProjPoly<C>) -> Result<ProjPoly<C>> {
    if f.is_coordinate_line() {
        return Err(Error::Precondition(
            "coordinate line has no quadratic transform".into(),
        ));
    }
    let vars = proj_vars();
    let mut g = MultiPoly::zero(&vars);
    for (m, a) in f.poly.terms() {
        let (x, y, z) = (m.0[0], m.0[1], m.0[2]);
        g.add_term(Mono(vec![y + z, x + z, x + y]), a.clone());
    }
    ProjPoly::new(g.strip_monomial().0)
}

/// Affine polynomial centered at `p`: dehomogenize at the pivot and translate `p` to the origin.
fn local_at<C: Field>(f: &ProjPoly<C>, p: &ProjPoint<C>) -> MultiPoly<C> {
    let k = p.pivot();
    let g = f.poly.dehomogenize(k);
    let vars = g.vars().clone();
    let rest: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let subs: Vec<MultiPoly<C>> = (0..2)
        .map(|i| &MultiPoly::var(&vars, i) + &MultiPoly::constant(&vars, p.coords[rest[i]].clone()))
        .collect();
    g.compose(&subs, &vars)
}

/// Order of vanishing of `F` at `p` (0 when `p` is off the curve).
pub fn multiplicity<C: Field>(f: &ProjPoly<C>, p: &ProjPoint<C>) -> u32 {
    local_at(f, p)
        .terms()
        .map(|(m, _)| m.degree())
        .min()
        .unwrap_or(0)
}

/// Lowest-degree form of `F` at `p`.
pub fn tangent_cone<C: Field>(f: &ProjPoly<C>, p: &ProjPoint<C>) -> MultiPoly<C> {
    let g = local_at(f, p);
    let r = g.terms().map(|(m, _)| m.degree()).min().unwrap_or(0);
    MultiPoly::from_terms(
        g.vars(),
        g.terms()
            .filter(|(m, _)| m.degree() == r)
            .map(|(m, a)| (m.0.clone(), a.clone())),
    )
}

/// Whether a binary form of degree `r` (in two variables) has `r` distinct linear factors.
pub fn binary_form_squarefree<C: Field>(b: &MultiPoly<C>, r: u32) -> bool {
    let u = UniPoly::new({
        let mut c = vec![C::zero(); r as usize + 1];
        for (m, a) in b.terms() {
            c[m.0[0] as usize] = a.clone();
        }
        c
    });
    let e = u.deg0() as u32;
    if r - e > 1 {
        return false;
    }
    e == 0 || u.is_squarefree()
}

/// Whether the `r` tangents at a point of multiplicity `r >= 2` are distinct.
pub fn is_ordinary<C: Field>(f: &ProjPoly<C>, p: &ProjPoint<C>, r: u32) -> Result<bool> {
    if r < 2 {
        return Err(Error::Precondition(
            "ordinary test needs multiplicity at least 2".into(),
        ));
    }
    let cone = tangent_cone(f, p);
    if cone.total_degree() != Some(r) {
        return Err(Error::Precondition(format!(
            "point does not have multiplicity {r}"
        )));
    }
    Ok(binary_form_squarefree(&cone, r))
}
