//! Small and big diagonals, and the Hadamard product.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::scalar::Scalar;
use crate::series::TruncSeries;
use crate::vars::VarSet;

/// `sum_j g_{j,..,j} t^j`, as a series in the single variable `t`.
///
/// Exact through `floor(bound / n)`.
pub fn small_diagonal<C: Scalar>(g: &TruncSeries<C>) -> Result<TruncSeries<C>> {
    small_diagonal_in(g, "t")
}

/// [`small_diagonal`] with a chosen name for the result variable.
pub fn small_diagonal_in<C: Scalar>(g: &TruncSeries<C>, name: &str) -> Result<TruncSeries<C>> {
    let n = g.vars().len();
    if n == 0 {
        return Err(Error::InvalidArgument("diagonal of a constant".into()));
    }
    let out_vars = VarSet::new([name])?;
    let bound = g.bound() / n as u32;
    let terms = g
        .terms()
        .filter(|(m, _)| m.exps().iter().all(|&e| e == m.exp(0)))
        .map(|(m, c)| (Monomial::new(vec![m.exp(0)]), c.clone()));
    Ok(TruncSeries::from_terms(&out_vars, bound, terms))
}

/// Keeps the monomials `x^a t^j` with `|a| = j` and drops `t`; `t` is the
/// last variable. Exact through `floor(bound / 2)`.
pub fn big_diagonal<C: Scalar>(f: &TruncSeries<C>) -> Result<TruncSeries<C>> {
    let n = f.vars().len();
    if n < 2 {
        return Err(Error::InvalidArgument(
            "big diagonal needs at least one x variable and t".into(),
        ));
    }
    let out_vars = f.vars().without(n - 1);
    let terms = f
        .terms()
        .filter(|(m, _)| m.exps()[..n - 1].iter().sum::<u32>() == m.exp(n - 1))
        .map(|(m, c)| (m.without(n - 1), c.clone()));
    Ok(TruncSeries::from_terms(&out_vars, f.bound() / 2, terms))
}

/// Coefficientwise product.
pub fn hadamard<C: Scalar>(f: &TruncSeries<C>, g: &TruncSeries<C>) -> Result<TruncSeries<C>> {
    if f.vars() != g.vars() {
        return Err(Error::VarMismatch {
            left: f.vars().to_string(),
            right: g.vars().to_string(),
        });
    }
    let bound = f.bound().min(g.bound());
    let gm = g.term_map();
    let terms: BTreeMap<Monomial, C> = f
        .terms()
        .filter(|(m, _)| m.degree() <= bound)
        .filter_map(|(m, a)| gm.get(m).map(|b| (m.clone(), a.clone() * b.clone())))
        .collect();
    Ok(TruncSeries::from_map(f.vars(), bound, terms))
}

/// `1 / (1 - m) = sum_k m^k` for a nonconstant monomial `m`.
pub fn geom<C: Scalar>(vars: &VarSet, m: &Monomial, bound: u32) -> Result<TruncSeries<C>> {
    if m.is_one() {
        return Err(Error::NotAUnit);
    }
    let d = m.degree();
    let mut terms = Vec::new();
    let mut cur = Monomial::one(vars.len());
    let mut k = 0;
    while k * d <= bound {
        terms.push((cur.clone(), C::one()));
        cur = cur.mul(m);
        k += 1;
    }
    Ok(TruncSeries::from_terms(vars, bound, terms))
}

/// Series with every coefficient equal to one.
pub fn all_ones<C: Scalar>(vars: &VarSet, bound: u32) -> TruncSeries<C> {
    TruncSeries::from_terms(
        vars,
        bound,
        crate::monomial::monomials_up_to(vars.len(), bound)
            .into_iter()
            .map(|m| (m, C::one())),
    )
}
