use super::field::Field;
use super::multipoly::MultiPoly;
use super::unipoly::{PowU, UniPoly};
use crate::error::{Error, Result};

/// Determinant of a nonempty square matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_det<C: Field>(mut m: Vec<Vec<MultiPoly<C>>>) -> MultiPoly<C> {
    let n = m.len();
    let vars = m[0][0].vars().clone();
    let mut sign = false;
    let mut prev = MultiPoly::one(&vars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return MultiPoly::zero(&vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = a.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = MultiPoly::zero(&vars);
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Sylvester matrix of `f` and `g` in variable `i`.
pub fn sylvester<C: Field>(f: &MultiPoly<C>, g: &MultiPoly<C>, i: usize) -> Vec<Vec<MultiPoly<C>>> {
    let fc = f.coeffs_in(i);
    let gc = g.coeffs_in(i);
    let (m, n) = (fc.len() - 1, gc.len() - 1);
    let z = MultiPoly::zero(f.vars());
    let mut rows = Vec::with_capacity(m + n);
    for r in 0..n {
        let mut row = vec![z.clone(); m + n];
        for (k, c) in fc.iter().rev().enumerate() {
            row[r + k] = c.clone();
        }
        rows.push(row);
    }
    for r in 0..m {
        let mut row = vec![z.clone(); m + n];
        for (k, c) in gc.iter().rev().enumerate() {
            row[r + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Resultant of `f` and `g` with respect to the variable named `var`.
pub fn resultant<C: Field>(f: &MultiPoly<C>, g: &MultiPoly<C>, var: &str) -> Result<MultiPoly<C>> {
    let i = f
        .var_index(var)
        .ok_or_else(|| Error::MissingVariable(var.to_string()))?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput("resultant operand"));
    }
    let (m, n) = (f.degree_in(i).unwrap(), g.degree_in(i).unwrap());
    if m == 0 && n == 0 {
        return Err(Error::MissingVariable(var.to_string()));
    }
    if m == 0 {
        return Ok(f.pow(n));
    }
    if n == 0 {
        return Ok(g.pow(m));
    }
    Ok(bareiss_det(sylvester(f, g, i)))
}

/// Resultant of univariate-in-`i` polynomials whose coefficients are constants, via the field Euclid.
pub fn resultant_const<C: Field>(f: &MultiPoly<C>, g: &MultiPoly<C>, i: usize) -> Option<C> {
    let (a, b) = (f.to_univariate(i)?, g.to_univariate(i)?);
    if a.degree() == Some(0) && b.degree() == Some(0) {
        return Some(C::one());
    }
    if a.degree() == Some(0) {
        return Some(a.lc().pow_u(b.deg0()));
    }
    Some(a.resultant(&b))
}

/// Resultant in variable `elim` of polynomials involving only `elim` and `keep`,
/// by evaluation at integer points and interpolation.
pub fn resultant_bivariate<C: Field>(
    f: &MultiPoly<C>,
    g: &MultiPoly<C>,
    elim: usize,
    keep: usize,
) -> Result<UniPoly<C>> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput("resultant operand"));
    }
    let (m, n) = (
        f.degree_in(elim).unwrap() as usize,
        g.degree_in(elim).unwrap() as usize,
    );
    if m == 0 || n == 0 {
        let name = f.vars()[elim].clone();
        return Ok(resultant(f, g, &name)?
            .to_univariate(keep)
            .expect("bivariate input"));
    }
    let (fc, gc) = (f.coeffs_in(elim), g.coeffs_in(elim));
    let bound = n * f.degree_in(keep).unwrap() as usize + m * g.degree_in(keep).unwrap() as usize;
    let (mut xs, mut ys) = (Vec::with_capacity(bound + 1), Vec::with_capacity(bound + 1));
    let mut k = 0i64;
    while xs.len() <= bound {
        let a = C::from_int(k);
        k = if k > 0 { -k } else { 1 - k };
        if fc[m].eval_var(keep, &a).constant_term().is_zero()
            || gc[n].eval_var(keep, &a).constant_term().is_zero()
        {
            continue;
        }
        let at_a = |cs: &[MultiPoly<C>]| {
            UniPoly::new(
                cs.iter()
                    .map(|c| c.eval_var(keep, &a).constant_term())
                    .collect(),
            )
        };
        ys.push(at_a(&fc).resultant(&at_a(&gc)));
        xs.push(a);
    }
    Ok(interpolate(&xs, &ys))
}

/// Newton interpolation through `(xs[i], ys[i])` with distinct nodes.
pub fn interpolate<C: Field>(xs: &[C], ys: &[C]) -> UniPoly<C> {
    let mut dd = ys.to_vec();
    for j in 1..xs.len() {
        for i in (j..xs.len()).rev() {
            dd[i] = dd[i].minus(&dd[i - 1]).over(&xs[i].minus(&xs[i - j]));
        }
    }
    let mut p = UniPoly::zero();
    for i in (0..xs.len()).rev() {
        p = &(&p * &UniPoly::linear_root(&xs[i])) + &UniPoly::constant(dd[i].clone());
    }
    p
}
