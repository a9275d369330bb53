//! Sylvester resultants and annihilators of sums and products of algebraic
//! series.

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::scalar::Scalar;

/// The Sylvester matrix of `p` and `q` in variable `i`. Entries are
/// polynomials in the remaining variables (over the same variable set).
/// Rows `0..deg q` hold shifted coefficients of `p`, the rest those of `q`,
/// highest power first.
pub fn sylvester_matrix<C: Scalar>(
    p: &MultiPoly<C>,
    q: &MultiPoly<C>,
    i: usize,
) -> Result<Vec<Vec<MultiPoly<C>>>> {
    p.vars().ensure_same(q.vars())?;
    let name = p.vars().name(i).to_string();
    let pc = p.coeffs_in(i);
    let qc = q.coeffs_in(i);
    if pc.len() < 2 || qc.len() < 2 {
        return Err(Error::ZeroDegree(name));
    }
    let (m, n) = (pc.len() - 1, qc.len() - 1);
    let size = m + n;
    let zero = MultiPoly::zero(p.vars());
    let mut rows = Vec::with_capacity(size);
    for k in 0..n {
        let mut row = vec![zero.clone(); size];
        for (j, c) in pc.iter().rev().enumerate() {
            row[k + j] = c.clone();
        }
        rows.push(row);
    }
    for k in 0..m {
        let mut row = vec![zero.clone(); size];
        for (j, c) in qc.iter().rev().enumerate() {
            row[k + j] = c.clone();
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Determinant by fraction-free (Bareiss) elimination. Every intermediate
/// division is exact.
pub fn bareiss_determinant<C: Scalar>(mut a: Vec<Vec<MultiPoly<C>>>) -> Result<MultiPoly<C>> {
    let n = a.len();
    if n == 0 {
        return Err(Error::InvalidArgument("empty matrix".into()));
    }
    let vars = a[0][0].vars().clone();
    let mut prev = MultiPoly::one(&vars);
    let mut negate = false;
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            // Prefer the sparsest nonzero pivot below.
            let swap = (k + 1..n)
                .filter(|&r| !a[r][k].is_zero())
                .min_by_key(|&r| a[r][k].num_terms());
            match swap {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(MultiPoly::zero(&vars)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev)?;
            }
            a[i][k] = MultiPoly::zero(&vars);
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// `Res_v(p, q)`: zero exactly when `p` and `q` share a factor of positive
/// degree in `v`.
pub fn resultant<C: Scalar>(p: &MultiPoly<C>, q: &MultiPoly<C>, v: &str) -> Result<MultiPoly<C>> {
    let i = p.vars().index_of(v)?;
    resultant_at(p, q, i)
}

pub(crate) fn resultant_at<C: Scalar>(
    p: &MultiPoly<C>,
    q: &MultiPoly<C>,
    i: usize,
) -> Result<MultiPoly<C>> {
    bareiss_determinant(sylvester_matrix(p, q, i)?)
}

fn check_annihilator<C: Scalar>(p: &MultiPoly<C>) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let t = p.vars().len().checked_sub(1).ok_or(Error::ZeroPolynomial)?;
    if p.degree_in(t) == Some(0) {
        return Err(Error::ZeroDegree(p.vars().name(t).to_string()));
    }
    Ok(t)
}

/// A polynomial in `(x.., t)` vanishing at `t = f + g` whenever `p1(x, f) = 0`
/// and `p2(x, g) = 0`: `Res_u(p1(x, u), p2(x, t - u))`. Not necessarily
/// minimal.
pub fn annihilator_sum<C: Scalar>(p1: &MultiPoly<C>, p2: &MultiPoly<C>) -> Result<MultiPoly<C>> {
    p1.vars().ensure_same(p2.vars())?;
    let t = check_annihilator(p1)?;
    check_annihilator(p2)?;
    let vars = p1.vars();
    let ext = vars.with(&vars.fresh_name("u"))?;
    let u = ext.len() - 1;
    let uvar = MultiPoly::var_at(&ext, u);
    let tvar = MultiPoly::var_at(&ext, t);
    let a = p1.embed(&ext)?.substitute(t, &uvar)?;
    let b = p2.embed(&ext)?.substitute(t, &(&tvar - &uvar))?;
    resultant_at(&a, &b, u)?.embed(vars)
}

/// A polynomial vanishing at `t = f * g`:
/// `Res_u(p1(x, u), u^deg p2 * p2(x, t / u))`.
pub fn annihilator_prod<C: Scalar>(p1: &MultiPoly<C>, p2: &MultiPoly<C>) -> Result<MultiPoly<C>> {
    p1.vars().ensure_same(p2.vars())?;
    let t = check_annihilator(p1)?;
    check_annihilator(p2)?;
    let vars = p1.vars();
    let ext = vars.with(&vars.fresh_name("u"))?;
    let u = ext.len() - 1;
    let uvar = MultiPoly::var_at(&ext, u);
    let a = p1.embed(&ext)?.substitute(t, &uvar)?;
    let coeffs = p2.embed(&ext)?.coeffs_in(t);
    let d = coeffs.len() as u32 - 1;
    let tvar = MultiPoly::var_at(&ext, t);
    let mut b = MultiPoly::zero(&ext);
    for (k, c) in coeffs.iter().enumerate() {
        let k = k as u32;
        b = &b + &(&(c * &tvar.pow(k)) * &uvar.pow(d - k));
    }
    resultant_at(&a, &b, u)?.embed(vars)
}
