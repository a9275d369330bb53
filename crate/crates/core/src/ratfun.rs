//! Rational functions that are power series.

use std::collections::BTreeMap;
use std::fmt;

use crate::diagonal::big_diagonal;
use crate::error::{Error, Result};
use crate::monomial::{monomials_up_to, Monomial};
use crate::poly::MultiPoly;
use crate::scalar::Scalar;
use crate::series::{divide_on_grid, TruncSeries};
use crate::vars::VarSet;

/// `numerator / denominator` over a common variable set.
#[derive(Clone, PartialEq)]
pub struct RationalFunction<C> {
    numerator: MultiPoly<C>,
    denominator: MultiPoly<C>,
}

impl<C: Scalar> RationalFunction<C> {
    pub fn new(numerator: MultiPoly<C>, denominator: MultiPoly<C>) -> Result<Self> {
        numerator.vars().ensure_same(denominator.vars())?;
        if denominator.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RationalFunction {
            numerator,
            denominator,
        })
    }

    pub fn from_poly(p: MultiPoly<C>) -> Self {
        let den = MultiPoly::one(p.vars());
        RationalFunction {
            numerator: p,
            denominator: den,
        }
    }

    pub fn numerator(&self) -> &MultiPoly<C> {
        &self.numerator
    }

    pub fn denominator(&self) -> &MultiPoly<C> {
        &self.denominator
    }

    pub fn vars(&self) -> &VarSet {
        self.numerator.vars()
    }

    /// Cancels the largest monomial dividing both numerator and denominator.
    pub fn strip_common_monomial(&self) -> Self {
        let den_content = self.denominator.monomial_content().unwrap();
        let common = match self.numerator.monomial_content() {
            Some(nc) => nc.gcd(&den_content),
            // Zero numerator: only the denominator's content matters.
            None => den_content,
        };
        if common.is_one() {
            return self.clone();
        }
        RationalFunction {
            numerator: self
                .numerator
                .div_monomial(&common)
                .unwrap_or_else(|_| self.numerator.clone()),
            denominator: self.denominator.div_monomial(&common).unwrap(),
        }
    }

    /// True if, after cancelling common monomials, the denominator is a unit
    /// in the power series ring.
    pub fn is_series_expandable(&self) -> bool {
        !self
            .strip_common_monomial()
            .denominator
            .constant_term()
            .is_zero()
    }

    fn expandable_parts(&self) -> Result<Self> {
        let r = self.strip_common_monomial();
        if r.denominator.constant_term().is_zero() {
            return Err(Error::NotExpandable(format!(
                "denominator {} vanishes at the origin",
                r.denominator
            )));
        }
        Ok(r)
    }

    /// Power series expansion, exact through total degree `bound`.
    pub fn expand(&self, bound: u32) -> Result<TruncSeries<C>> {
        let r = self.expandable_parts()?;
        let grid = monomials_up_to(self.vars().len(), bound);
        let g = divide_on_grid(r.numerator.term_map(), r.denominator.term_map(), &grid)?;
        Ok(TruncSeries::from_map(
            self.vars(),
            bound,
            g.into_iter().collect(),
        ))
    }

    /// Expansion coefficients on the box `0 <= e_i <= limits[i]`. The box is
    /// downward closed, so the division recurrence never leaves it.
    pub fn expand_on_box(&self, limits: &[u32]) -> Result<BTreeMap<Monomial, C>> {
        if limits.len() != self.vars().len() {
            return Err(Error::InvalidArgument("box dimension".into()));
        }
        let r = self.expandable_parts()?;
        let grid = box_grid(limits);
        let g = divide_on_grid(r.numerator.term_map(), r.denominator.term_map(), &grid)?;
        Ok(g.into_iter().collect())
    }

    /// Small diagonal through `t^order`. Only the coefficients inside the box
    /// `[0, order]^n` are computed.
    pub fn small_diagonal(&self, order: u32) -> Result<TruncSeries<C>> {
        let n = self.vars().len();
        if n == 0 {
            return Err(Error::InvalidArgument("diagonal of a constant".into()));
        }
        let coeffs = self.expand_on_box(&vec![order; n])?;
        let tv = VarSet::new(["t"])?;
        let terms = coeffs
            .into_iter()
            .filter(|(m, _)| m.exps().iter().all(|&e| e == m.exp(0)))
            .map(|(m, c)| (Monomial::new(vec![m.exp(0)]), c));
        Ok(TruncSeries::from_terms(&tv, order, terms))
    }

    /// Big diagonal through total degree `order`: the expansion is taken to
    /// `2 * order` first.
    pub fn big_diagonal(&self, order: u32) -> Result<TruncSeries<C>> {
        big_diagonal(&self.expand(2 * order)?)
    }

    pub fn substitute_xt(&self) -> Self {
        RationalFunction {
            numerator: self.numerator.substitute_xt(),
            denominator: self.denominator.substitute_xt(),
        }
    }

    pub fn embed(&self, target: &VarSet) -> Result<Self> {
        Ok(RationalFunction {
            numerator: self.numerator.embed(target)?,
            denominator: self.denominator.embed(target)?,
        })
    }
}

/// All exponent vectors in the box, graded-lex order.
fn box_grid(limits: &[u32]) -> Vec<Monomial> {
    let total: u32 = limits.iter().sum();
    let mut out: Vec<Monomial> = Vec::new();
    let mut cur = vec![0u32; limits.len()];
    loop {
        out.push(Monomial::new(cur.clone()));
        // odometer
        let mut i = 0;
        loop {
            if i == limits.len() {
                out.sort();
                debug_assert!(out.last().is_none_or(|m| m.degree() <= total));
                return out;
            }
            if cur[i] < limits[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

impl<C: Scalar> fmt::Display for RationalFunction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_constant() && self.denominator.constant_term().is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({})/({})", self.numerator, self.denominator)
        }
    }
}

impl<C: Scalar> fmt::Debug for RationalFunction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction[{}]({})", self.vars(), self)
    }
}
