//! Rational functions whose big diagonal is a prescribed algebraic series.
//!
//! For an etale-algebraic `h` with annihilator `P(x, t)`,
//! `F = t P_t(xt, t) / P(xt, t)` is a power series, and
//! `(xt)^i t^j F` has big diagonal `x^i h^j`. A series
//! `f = W(x, h)` with `W = (sum a_i t^i) / (sum b_j t^j)`, `b_0(0) != 0`, is
//! then the big diagonal of `R = W(xt, t) F`.

use std::fmt;

use crate::diagonal::big_diagonal;
use crate::error::{Error, Result};
use crate::hensel::AlgebraicSeriesSpec;
use crate::monomial::Monomial;
use crate::poly::MultiPoly;
use crate::ratfun::RationalFunction;
use crate::scalar::Scalar;
use crate::series::TruncSeries;
use crate::vars::VarSet;

/// `W(x, t) = (a_0 + a_1 t + ..) / (b_0 + b_1 t + ..)` with coefficients
/// in `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct WRepresentation<C: Scalar> {
    x_vars: VarSet,
    numerator: Vec<MultiPoly<C>>,
    denominator: Vec<MultiPoly<C>>,
}

impl<C: Scalar> WRepresentation<C> {
    pub fn new(
        x_vars: &VarSet,
        numerator: Vec<MultiPoly<C>>,
        denominator: Vec<MultiPoly<C>>,
    ) -> Result<Self> {
        for p in numerator.iter().chain(&denominator) {
            x_vars.ensure_same(p.vars())?;
        }
        if denominator
            .first()
            .is_none_or(|b0| b0.constant_term().is_zero())
        {
            return Err(Error::DenominatorNotUnit);
        }
        Ok(WRepresentation {
            x_vars: x_vars.clone(),
            numerator,
            denominator,
        })
    }

    /// `W = t`, so that `W(x, h) = h`.
    pub fn identity(x_vars: &VarSet) -> Self {
        Self::power(x_vars, 1)
    }

    /// `W = t^k`.
    pub fn power(x_vars: &VarSet, k: usize) -> Self {
        let mut numerator = vec![MultiPoly::zero(x_vars); k + 1];
        numerator[k] = MultiPoly::one(x_vars);
        WRepresentation {
            x_vars: x_vars.clone(),
            numerator,
            denominator: vec![MultiPoly::one(x_vars)],
        }
    }

    pub fn x_vars(&self) -> &VarSet {
        &self.x_vars
    }

    pub fn numerator(&self) -> &[MultiPoly<C>] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[MultiPoly<C>] {
        &self.denominator
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.x_vars)
    }

    /// `sum c_k(x) t^k` over `vars` (the x variables followed by `t`).
    pub(crate) fn combine(coeffs: &[MultiPoly<C>], vars: &VarSet) -> Result<MultiPoly<C>> {
        let t = MultiPoly::var_at(vars, vars.len() - 1);
        let mut acc = MultiPoly::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            acc = &acc + &(&c.embed(vars)? * &t.pow(k as u32));
        }
        Ok(acc)
    }

    /// `W(x, h)` for a series `h` in the x variables.
    pub fn evaluate(&self, h: &TruncSeries<C>) -> Result<TruncSeries<C>> {
        self.x_vars.ensure_same(h.vars())?;
        let eval = |coeffs: &[MultiPoly<C>]| {
            let mut acc = TruncSeries::zero(h.vars(), h.bound());
            let mut power = TruncSeries::one(h.vars(), h.bound());
            for c in coeffs {
                acc = &acc + &(&TruncSeries::from_poly(c, h.bound()) * &power);
                power = &power * h;
            }
            acc
        };
        let num = eval(&self.numerator);
        let den = eval(&self.denominator);
        Ok(&num * &den.invert_unit()?)
    }
}

/// Where two series first differ.
#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch<C> {
    pub monomial: Monomial,
    pub expected: C,
    pub computed: C,
}

/// Outcome of comparing a computed diagonal against an expected series.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationRecord<C: Scalar> {
    pub order: u32,
    pub expected: TruncSeries<C>,
    pub computed: TruncSeries<C>,
    pub pass: bool,
    pub mismatch: Option<Mismatch<C>>,
}

impl<C: Scalar> VerificationRecord<C> {
    pub fn compare(expected: TruncSeries<C>, computed: TruncSeries<C>, order: u32) -> Self {
        let mismatch = if expected.vars() != computed.vars() {
            None
        } else {
            expected
                .first_mismatch(&computed, order)
                .map(|(monomial, e, c)| Mismatch {
                    monomial,
                    expected: e,
                    computed: c,
                })
        };
        let pass = expected.vars() == computed.vars()
            && expected.bound() >= order
            && computed.bound() >= order
            && mismatch.is_none();
        VerificationRecord {
            order,
            expected: expected.truncate(order.min(expected.bound())),
            computed: computed.truncate(order.min(computed.bound())),
            pass,
            mismatch,
        }
    }
}

impl<C: Scalar> fmt::Display for VerificationRecord<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass {
            write!(f, "pass through degree {}", self.order)
        } else if let Some(m) = &self.mismatch {
            write!(
                f,
                "FAIL at exponent {:?}: expected {}, computed {}",
                m.monomial.exps(),
                m.expected,
                m.computed
            )
        } else {
            write!(f, "FAIL: windows do not reach degree {}", self.order)
        }
    }
}

/// A rational function `R` together with the check `D(R) = W(x, h)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DLCertificate<C: Scalar> {
    pub spec: AlgebraicSeriesSpec<C>,
    pub representation: WRepresentation<C>,
    pub rational: RationalFunction<C>,
    pub verification: VerificationRecord<C>,
}

/// `P(xt, t) / t` and `P_t(xt, t)`.
fn substituted_parts<C: Scalar>(spec: &AlgebraicSeriesSpec<C>) -> (MultiPoly<C>, MultiPoly<C>) {
    let p = spec.annihilator();
    let t = spec.vars().len() - 1;
    let reduced = p
        .substitute_xt()
        .div_monomial(&Monomial::var(t + 1, t, 1))
        .expect("P(0,0) = 0, so t divides P(xt,t)");
    (reduced, p.derivative_at(t).substitute_xt())
}

/// `F = t P_t(xt, t) / P(xt, t)` through total degree `n`.
pub fn build_f<C: Scalar>(spec: &AlgebraicSeriesSpec<C>, n: u32) -> Result<TruncSeries<C>> {
    spec.require_etale()?;
    let (reduced, dp) = substituted_parts(spec);
    let inv = TruncSeries::from_poly(&reduced, n).invert_unit()?;
    Ok(&TruncSeries::from_poly(&dp, n) * &inv)
}

/// `F` as a rational function, with the common factor `t` cancelled.
fn f_rational<C: Scalar>(spec: &AlgebraicSeriesSpec<C>) -> Result<(MultiPoly<C>, MultiPoly<C>)> {
    spec.require_etale()?;
    let (reduced, dp) = substituted_parts(spec);
    Ok((dp, reduced))
}

/// Expands `r` to `2n`, takes the big diagonal, and compares it with
/// `expected` through degree `n`.
pub fn dl_verify<C: Scalar>(
    r: &RationalFunction<C>,
    expected: &TruncSeries<C>,
    n: u32,
) -> Result<VerificationRecord<C>> {
    let expansion = r.expand(2 * n)?;
    let computed = big_diagonal(&expansion)?;
    Ok(VerificationRecord::compare(expected.clone(), computed, n))
}

/// Checks `D((xt)^i t^j F) = x^i h^j` through degree `n`.
pub fn monomial_diagonal_certificate<C: Scalar>(
    spec: &AlgebraicSeriesSpec<C>,
    i: &[u32],
    j: u32,
    n: u32,
) -> Result<VerificationRecord<C>> {
    let (num, den) = f_rational(spec)?;
    let xv = spec.x_vars();
    if i.len() != xv.len() {
        return Err(Error::InvalidArgument(format!(
            "multi-index has {} entries for {} variables",
            i.len(),
            xv.len()
        )));
    }
    let mut exps = i.to_vec();
    exps.push(i.iter().sum::<u32>() + j);
    let r = RationalFunction::new(num.shift(&Monomial::new(exps)), den)?;
    let h = spec.etale_root(n)?;
    let expected = h.pow(j).shift(&Monomial::new(i.to_vec())).truncate(n);
    dl_verify(&r, &expected, n)
}

/// Builds `R = W(xt, t) t P_t(xt, t) / P(xt, t)` and verifies
/// `D(R) = W(x, h)` through degree `n` against an independently lifted `h`.
pub fn dl_rational<C: Scalar>(
    spec: &AlgebraicSeriesSpec<C>,
    w: &WRepresentation<C>,
    n: u32,
) -> Result<DLCertificate<C>> {
    let (num, den) = f_rational(spec)?;
    let xv = spec.x_vars();
    xv.ensure_same(w.x_vars())?;
    if w.denominator()
        .first()
        .is_none_or(|b| b.constant_term().is_zero())
    {
        return Err(Error::DenominatorNotUnit);
    }
    let vars = spec.vars();
    let w_num = WRepresentation::combine(w.numerator(), vars)?.substitute_xt();
    let w_den = WRepresentation::combine(w.denominator(), vars)?.substitute_xt();
    let r = RationalFunction::new(&w_num * &num, &w_den * &den)?;
    let h = spec.etale_root(n)?;
    let expected = w.evaluate(&h)?;
    let verification = dl_verify(&r, &expected, n)?;
    Ok(DLCertificate {
        spec: spec.clone(),
        representation: w.clone(),
        rational: r,
        verification,
    })
}
