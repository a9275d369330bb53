//! Sparse multivariate polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::scalar::{pow_scalar, Scalar};
use crate::vars::VarSet;

/// A polynomial over `C` in an ordered set of variables.
///
/// Terms live in a map keyed by graded-lex ordered exponent vectors; zero
/// coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<C> {
    vars: VarSet,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> MultiPoly<C> {
    pub fn zero(vars: &VarSet) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::constant(vars, C::one())
    }

    pub fn constant(vars: &VarSet, c: C) -> Self {
        Self::monomial(vars, Monomial::one(vars.len()), c)
    }

    pub fn monomial(vars: &VarSet, m: Monomial, c: C) -> Self {
        assert_eq!(m.nvars(), vars.len(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn var(vars: &VarSet, name: &str) -> Result<Self> {
        let i = vars.index_of(name)?;
        Ok(Self::var_at(vars, i))
    }

    pub(crate) fn var_at(vars: &VarSet, i: usize) -> Self {
        Self::monomial(vars, Monomial::var(vars.len(), i, 1), C::one())
    }

    /// Sums the given terms; repeated exponents are merged.
    pub fn from_terms<I>(vars: &VarSet, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
    {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), vars.len(), "exponent vector length");
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn from_map(vars: &VarSet, terms: BTreeMap<Monomial, C>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        MultiPoly {
            vars: vars.clone(),
            terms,
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: C) {
        add_into(&mut self.terms, m, c);
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + '_ {
        self.terms.iter()
    }

    pub(crate) fn term_map(&self) -> &BTreeMap<Monomial, C> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one(self.vars.len()))
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree in variable `i`, `None` for the zero polynomial.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(i)).max()
    }

    pub fn degree_in_var(&self, name: &str) -> Result<Option<u32>> {
        Ok(self.degree_in(self.vars.index_of(name)?))
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.exp(i) > 0)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.vars.ensure_same(&other.vars)?;
        let mut out = self.terms.clone();
        for (m, c) in &other.terms {
            add_into(&mut out, m.clone(), c.clone());
        }
        Ok(Self::from_map(&self.vars, out))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.vars.ensure_same(&other.vars)?;
        let mut out = self.terms.clone();
        for (m, c) in &other.terms {
            add_into(&mut out, m.clone(), -c.clone());
        }
        Ok(Self::from_map(&self.vars, out))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.vars.ensure_same(&other.vars)?;
        let mut out = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                add_into(&mut out, ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(Self::from_map(&self.vars, out))
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
            .collect();
        Self::from_map(&self.vars, terms)
    }

    /// Multiplies by a monomial.
    pub fn shift(&self, m: &Monomial) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, a)| (k.mul(m), a.clone()))
            .collect();
        Self::from_map(&self.vars, terms)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to `name`.
    pub fn partial_derivative(&self, name: &str) -> Result<Self> {
        Ok(self.derivative_at(self.vars.index_of(name)?))
    }

    pub(crate) fn derivative_at(&self, i: usize) -> Self {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e > 0 {
                add_into(
                    &mut out,
                    m.with_exp(i, e - 1),
                    c.clone() * C::from_int(e as i64),
                );
            }
        }
        Self::from_map(&self.vars, out)
    }

    /// Coefficients of `self` viewed as a polynomial in variable `i`:
    /// entry `k` is the coefficient of `v^k`, a polynomial over the same
    /// variable set not involving `v`.
    pub fn coeffs_in(&self, i: usize) -> Vec<Self> {
        let deg = match self.degree_in(i) {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut out = vec![Self::zero(&self.vars); deg + 1];
        for (m, c) in &self.terms {
            out[m.exp(i) as usize]
                .terms
                .insert(m.with_exp(i, 0), c.clone());
        }
        out
    }

    /// Inverse of [`coeffs_in`](Self::coeffs_in).
    pub fn from_coeffs_in(vars: &VarSet, i: usize, coeffs: &[Self]) -> Self {
        let mut p = Self::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                p.add_term(m.with_exp(i, m.exp(i) + k as u32), a.clone());
            }
        }
        p
    }

    /// Replaces variable `i` by the polynomial `value` (same variable set).
    pub fn substitute(&self, i: usize, value: &Self) -> Result<Self> {
        self.vars.ensure_same(&value.vars)?;
        // Horner in v over the coefficient polynomials.
        let coeffs = self.coeffs_in(i);
        let mut acc = Self::zero(&self.vars);
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        Ok(acc)
    }

    pub fn substitute_var(&self, name: &str, value: &Self) -> Result<Self> {
        self.substitute(self.vars.index_of(name)?, value)
    }

    /// Evaluates at a point given in variable order.
    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                if e > 0 {
                    term = term * pow_scalar(x, e);
                }
            }
            acc = acc + term;
        }
        acc
    }

    pub fn eval_at_origin(&self) -> C {
        self.constant_term()
    }

    /// Specializes variable `i` to a constant, keeping the variable set.
    pub fn specialize(&self, i: usize, value: &C) -> Self {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(i);
            add_into(&mut out, m.with_exp(i, 0), c.clone() * pow_scalar(value, e));
        }
        Self::from_map(&self.vars, out)
    }

    /// Re-expresses the polynomial over another variable set, matching
    /// variables by name. Fails if a variable that actually occurs is
    /// missing from `target`.
    pub fn embed(&self, target: &VarSet) -> Result<Self> {
        if &self.vars == target {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.names().iter().enumerate() {
            match target.index_of(name) {
                Ok(j) => map.push(Some(j)),
                Err(e) => {
                    if self.involves(i) {
                        return Err(e);
                    }
                    map.push(None);
                }
            }
        }
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.len()];
            for (i, j) in map.iter().enumerate() {
                if let Some(j) = j {
                    exps[*j] = m.exp(i);
                }
            }
            add_into(&mut out, Monomial::new(exps), c.clone());
        }
        Ok(Self::from_map(target, out))
    }

    /// Exact division `self / divisor`, failing with `InexactDivision` if
    /// the divisor does not divide.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        self.vars.ensure_same(&divisor.vars)?;
        let (lm, lc) = match divisor.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(Error::ZeroDenominator),
        };
        let mut rem = self.terms.clone();
        let mut quot = BTreeMap::new();
        while let Some((m, c)) = rem.iter().next_back() {
            let qm = m.div(&lm).ok_or(Error::InexactDivision)?;
            let qc = c.clone() / lc.clone();
            for (dm, dc) in &divisor.terms {
                add_into(&mut rem, dm.mul(&qm), -(dc.clone() * qc.clone()));
            }
            quot.insert(qm, qc);
        }
        Ok(Self::from_map(&self.vars, quot))
    }

    /// Gcd of all monomials occurring (componentwise minimum exponent).
    pub fn monomial_content(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, m| acc.gcd(m)))
    }

    /// Divides every term by `m`, which must divide each of them.
    pub fn div_monomial(&self, m: &Monomial) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            out.insert(k.div(m).ok_or(Error::InexactDivision)?, c.clone());
        }
        Ok(Self::from_map(&self.vars, out))
    }

    /// Maps `x^a t^b` to `x^a t^(|a|+b)` where `t` is the last variable.
    pub fn substitute_xt(&self) -> Self {
        let n = self.vars.len();
        assert!(n >= 1, "substitute_xt needs a designated last variable");
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let shift: u32 = m.exps()[..n - 1].iter().sum();
                (m.with_exp(n - 1, m.exp(n - 1) + shift), c.clone())
            })
            .collect();
        Self::from_map(&self.vars, terms)
    }
}

pub(crate) fn add_into<C: Scalar>(map: &mut BTreeMap<Monomial, C>, m: Monomial, c: C) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(m) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            let s = e.get().clone() + c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<C: Scalar> $tr<&MultiPoly<C>> for &MultiPoly<C> {
            type Output = MultiPoly<C>;
            /// Panics on mismatched variable sets; use the `checked_` form to
            /// get an error instead.
            fn $method(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
                self.$checked(rhs).expect("mismatched variable sets")
            }
        }

        impl<C: Scalar> $tr for MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $method(self, rhs: MultiPoly<C>) -> MultiPoly<C> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<C: Scalar> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), -c.clone()))
            .collect();
        MultiPoly::from_map(&self.vars, terms)
    }
}

impl<C: Scalar> Neg for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        -&self
    }
}

/// Writes `coeff * monomial` terms in the expression grammar accepted by
/// the parser, largest term first.
pub(crate) fn write_terms<'a, C, I>(
    f: &mut fmt::Formatter<'_>,
    vars: &VarSet,
    terms: I,
) -> fmt::Result
where
    C: Scalar + 'a,
    I: Iterator<Item = (&'a Monomial, &'a C)>,
{
    let mut first = true;
    for (m, c) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        }
        first = false;
        let mut factors = Vec::new();
        for (i, &e) in m.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(vars.name(i).to_string()),
                _ => factors.push(format!("{}^{}", vars.name(i), e)),
            }
        }
        if factors.is_empty() {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            write!(f, "{}", factors.join("*"))?;
        } else {
            write!(f, "{}*{}", abs, factors.join("*"))?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl<C: Scalar> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.vars, self.terms.iter().rev())
    }
}

impl<C: Scalar> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.vars, self)
    }
}
