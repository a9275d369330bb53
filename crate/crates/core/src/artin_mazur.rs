//! Two-dimensional polynomial codes of algebraic series.
//!
//! A code of `f` is a pair `(P1(x, y1, y2), P2(x, y2))` with
//! `P(x, f, h) = 0` for an etale-algebraic `h` and an invertible Jacobian
//! in `(y1, y2)` at the origin.

use std::fmt;

use crate::denef_lipshitz::WRepresentation;
use crate::error::{Error, Result};
use crate::hensel::AlgebraicSeriesSpec;
use crate::poly::MultiPoly;
use crate::scalar::Scalar;
use crate::series::{compose, TruncSeries};
use crate::vars::VarSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodeBranch {
    /// The minimal polynomial of `f` is already etale: `(Q(x, y1), y2)`.
    Simple,
    /// `(y1 T2(x, y2) - T1(x, y2), S(x, y2))` from `f = T1(h) / T2(h)`.
    Representation,
}

impl fmt::Display for CodeBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodeBranch::Simple => "simple",
            CodeBranch::Representation => "representation",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AMCode<C: Scalar> {
    /// The x variables followed by `y1`, `y2`.
    pub vars: VarSet,
    pub first: MultiPoly<C>,
    pub second: MultiPoly<C>,
    /// Rows are the two components, columns `d/dy1`, `d/dy2`.
    pub jacobian_at_origin: [[C; 2]; 2],
    pub branch: CodeBranch,
}

impl<C: Scalar> AMCode<C> {
    fn build(vars: VarSet, first: MultiPoly<C>, second: MultiPoly<C>, branch: CodeBranch) -> Self {
        let n = vars.len();
        let entry = |p: &MultiPoly<C>, k: usize| p.derivative_at(k).eval_at_origin();
        let jacobian_at_origin = [
            [entry(&first, n - 2), entry(&first, n - 1)],
            [entry(&second, n - 2), entry(&second, n - 1)],
        ];
        let code = AMCode {
            vars,
            first,
            second,
            jacobian_at_origin,
            branch,
        };
        debug_assert!(!code.determinant().is_zero());
        debug_assert!(!code.second.involves(n - 2));
        code
    }

    pub fn determinant(&self) -> C {
        let [[a, b], [c, d]] = &self.jacobian_at_origin;
        a.clone() * d.clone() - b.clone() * c.clone()
    }

    pub fn x_vars(&self) -> VarSet {
        self.vars
            .without(self.vars.len() - 1)
            .without(self.vars.len() - 2)
    }
}

/// Variable set `x.., y1, y2`, avoiding clashes with the x names.
fn code_vars(x: &VarSet) -> Result<VarSet> {
    let y1 = x.fresh_name("y1");
    let with_y1 = x.with(&y1)?;
    let y2 = with_y1.fresh_name("y2");
    with_y1.with(&y2)
}

/// Re-reads a polynomial in `(x.., s)` as one in `(x.., y1, y2)` with `s`
/// mapped to the variable at `target`.
fn lift_last<C: Scalar>(p: &MultiPoly<C>, vars: &VarSet, target: usize) -> MultiPoly<C> {
    let n = p.vars().len();
    MultiPoly::from_terms(
        vars,
        p.terms().map(|(m, c)| {
            let s = m.exp(n - 1);
            let base = m.without(n - 1).with_inserted(n - 1, 0).with_inserted(n, 0);
            (base.with_exp(target, s), c.clone())
        }),
    )
}

/// True when `Q(0,0) = 0` and `dQ/dy1(0,0) != 0`, so [`am_code_simple`]
/// applies.
pub fn simple_branch_applies<C: Scalar>(q: &MultiPoly<C>) -> bool {
    let n = q.vars().len();
    n >= 1 && q.eval_at_origin().is_zero() && !q.derivative_at(n - 1).eval_at_origin().is_zero()
}

/// The code `(Q(x, y1), y2)` for an etale minimal polynomial `Q`.
pub fn am_code_simple<C: Scalar>(q: &MultiPoly<C>) -> Result<AMCode<C>> {
    if q.vars().len() < 2 || !simple_branch_applies(q) {
        return Err(Error::UseRepresentationBranch);
    }
    let xv = q.vars().without(q.vars().len() - 1);
    let vars = code_vars(&xv)?;
    let n = vars.len();
    let first = lift_last(q, &vars, n - 2);
    let second = MultiPoly::var_at(&vars, n - 1);
    Ok(AMCode::build(vars, first, second, CodeBranch::Simple))
}

/// The code `(y1 T2 - T1, S)` where `f = T1(x, h) / T2(x, h)` and `S` is
/// the etale annihilator of `h`.
pub fn am_code_from_representation<C: Scalar>(
    rep: &WRepresentation<C>,
    s: &MultiPoly<C>,
) -> Result<AMCode<C>> {
    AlgebraicSeriesSpec::etale(s.clone())?;
    let xv = s.vars().without(s.vars().len() - 1);
    xv.ensure_same(rep.x_vars())?;
    if rep
        .denominator()
        .first()
        .is_none_or(|b| b.constant_term().is_zero())
    {
        return Err(Error::DenominatorNotUnit);
    }
    let vars = code_vars(&xv)?;
    let n = vars.len();
    let y1 = MultiPoly::var_at(&vars, n - 2);
    let y2 = MultiPoly::var_at(&vars, n - 1);
    let in_y2 = |coeffs: &[MultiPoly<C>]| -> Result<MultiPoly<C>> {
        let mut acc = MultiPoly::zero(&vars);
        for (k, c) in coeffs.iter().enumerate() {
            acc = &acc + &(&c.embed(&vars)? * &y2.pow(k as u32));
        }
        Ok(acc)
    };
    let t1 = in_y2(rep.numerator())?;
    let t2 = in_y2(rep.denominator())?;
    let first = &(&y1 * &t2) - &t1;
    let second = lift_last(s, &vars, n - 1);
    Ok(AMCode::build(
        vars,
        first,
        second,
        CodeBranch::Representation,
    ))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CodeVerification<C: Scalar> {
    pub order: u32,
    /// `P1(x, f, h)` and `P2(x, f, h)`.
    pub residuals: [TruncSeries<C>; 2],
    pub determinant: C,
    pub pass: bool,
}

impl<C: Scalar> fmt::Display for CodeVerification<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass {
            return write!(
                f,
                "pass through degree {} (det J = {})",
                self.order, self.determinant
            );
        }
        if self.determinant.is_zero() {
            return write!(f, "FAIL: singular Jacobian");
        }
        for (k, r) in self.residuals.iter().enumerate() {
            match r.ord().finite() {
                Some(d) if d <= self.order => {
                    return write!(f, "FAIL: component {} is nonzero at degree {d}", k + 1)
                }
                _ => {}
            }
        }
        write!(f, "FAIL: windows do not reach degree {}", self.order)
    }
}

/// Substitutes `(y1, y2) <- (f, h)` in both components and checks that both
/// vanish through degree `n`, and that the Jacobian is invertible.
pub fn am_verify<C: Scalar>(
    code: &AMCode<C>,
    f: &TruncSeries<C>,
    h: &TruncSeries<C>,
    n: u32,
) -> Result<CodeVerification<C>> {
    let xv = code.x_vars();
    xv.ensure_same(f.vars())?;
    xv.ensure_same(h.vars())?;
    let bound = f.bound().min(h.bound());
    let mut images: Vec<TruncSeries<C>> = (0..xv.len())
        .map(|i| TruncSeries::from_poly(&MultiPoly::var_at(&xv, i), bound))
        .collect();
    images.push(f.truncate(bound));
    images.push(h.truncate(bound));
    let residuals = [
        compose(&code.first, &images)?,
        compose(&code.second, &images)?,
    ];
    let determinant = code.determinant();
    let pass = bound >= n
        && !determinant.is_zero()
        && residuals
            .iter()
            .all(|r| r.terms().all(|(m, _)| m.degree() > n));
    Ok(CodeVerification {
        order: n,
        residuals,
        determinant,
        pass,
    })
}
