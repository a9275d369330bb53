//! Truncated multivariate power series.
//!
//! A [`TruncSeries`] is known exactly on every monomial of total degree at
//! most its `bound`; nothing is claimed above it. Each operation returns the
//! largest window on which its result is still exact.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::monomial::{monomials_up_to, Monomial};
use crate::poly::{add_into, write_terms, MultiPoly};
use crate::scalar::Scalar;
use crate::vars::VarSet;

#[derive(Clone, PartialEq)]
pub struct TruncSeries<C> {
    vars: VarSet,
    bound: u32,
    terms: BTreeMap<Monomial, C>,
}

/// Order of a truncated series, relative to its window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOrder {
    Finite(u32),
    /// Every coefficient inside the window vanishes.
    AtLeast(u32),
}

impl SeriesOrder {
    pub fn finite(self) -> Option<u32> {
        match self {
            SeriesOrder::Finite(d) => Some(d),
            SeriesOrder::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for SeriesOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesOrder::Finite(d) => write!(f, "{d}"),
            SeriesOrder::AtLeast(d) => write!(f, "at-least({d})"),
        }
    }
}

impl<C: Scalar> TruncSeries<C> {
    pub fn zero(vars: &VarSet, bound: u32) -> Self {
        TruncSeries {
            vars: vars.clone(),
            bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &VarSet, bound: u32) -> Self {
        Self::constant(vars, bound, C::one())
    }

    pub fn constant(vars: &VarSet, bound: u32, c: C) -> Self {
        let mut s = Self::zero(vars, bound);
        add_into(&mut s.terms, Monomial::one(vars.len()), c);
        s
    }

    /// The series of variable `name`.
    pub fn var(vars: &VarSet, name: &str, bound: u32) -> Result<Self> {
        Ok(Self::from_poly(&MultiPoly::var(vars, name)?, bound))
    }

    /// Truncates a polynomial to total degree `bound`.
    pub fn from_poly(p: &MultiPoly<C>, bound: u32) -> Self {
        let terms = p
            .terms()
            .filter(|(m, _)| m.degree() <= bound)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        TruncSeries {
            vars: p.vars().clone(),
            bound,
            terms,
        }
    }

    /// Builds a series from explicit terms; terms above `bound` are dropped.
    pub fn from_terms<I>(vars: &VarSet, bound: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
    {
        let mut s = Self::zero(vars, bound);
        for (m, c) in terms {
            assert_eq!(m.nvars(), vars.len(), "exponent vector length");
            if m.degree() <= bound {
                add_into(&mut s.terms, m, c);
            }
        }
        s
    }

    pub(crate) fn from_map(vars: &VarSet, bound: u32, mut terms: BTreeMap<Monomial, C>) -> Self {
        terms.retain(|m, c| m.degree() <= bound && !c.is_zero());
        TruncSeries {
            vars: vars.clone(),
            bound,
            terms,
        }
    }

    /// Univariate convenience constructor: `coeffs[k]` is the coefficient of
    /// `v^k`; the bound is `coeffs.len() - 1`.
    pub fn univariate(vars: &VarSet, coeffs: Vec<C>) -> Self {
        assert_eq!(vars.len(), 1);
        let bound = coeffs.len().saturating_sub(1) as u32;
        Self::from_terms(
            vars,
            bound,
            coeffs
                .into_iter()
                .enumerate()
                .map(|(k, c)| (Monomial::new(vec![k as u32]), c)),
        )
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn bound(&self) -> u32 {
        self.bound
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
        assert!(
            m.degree() <= self.bound,
            "coefficient requested outside the exact window"
        );
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient of `x^exps`, or `None` outside the window.
    pub fn get(&self, exps: &[u32]) -> Option<C> {
        let m = Monomial::new(exps.to_vec());
        (m.degree() <= self.bound).then(|| self.terms.get(&m).cloned().unwrap_or_else(C::zero))
    }

    pub fn constant_term(&self) -> C {
        self.terms
            .get(&Monomial::one(self.vars.len()))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    /// True when every coefficient in the window vanishes.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficients of `x^m` for all `m` in the window, as a polynomial.
    pub fn to_poly(&self) -> MultiPoly<C> {
        MultiPoly::from_map(&self.vars, self.terms.clone())
    }

    /// Shrinks the window to `bound` (no-op if already smaller).
    pub fn truncate(&self, bound: u32) -> Self {
        let bound = bound.min(self.bound);
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() <= bound)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        TruncSeries {
            vars: self.vars.clone(),
            bound,
            terms,
        }
    }

    /// Same coefficients over a renamed variable set of equal length.
    pub fn rename(&self, vars: &VarSet) -> Result<Self> {
        if vars.len() != self.vars.len() {
            return Err(Error::VarMismatch {
                left: self.vars.to_string(),
                right: vars.to_string(),
            });
        }
        Ok(TruncSeries {
            vars: vars.clone(),
            bound: self.bound,
            terms: self.terms.clone(),
        })
    }

    /// Re-expresses the series over a larger variable set (matched by name).
    pub fn embed(&self, target: &VarSet) -> Result<Self> {
        let p = self.to_poly().embed(target)?;
        Ok(TruncSeries::from_poly(&p, self.bound))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.vars.ensure_same(&other.vars)?;
        let bound = self.bound.min(other.bound);
        let mut out = self.truncate(bound).terms;
        for (m, c) in other.terms.iter().filter(|(m, _)| m.degree() <= bound) {
            add_into(&mut out, m.clone(), c.clone());
        }
        Ok(Self::from_map(&self.vars, bound, out))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    /// Product, exact through the smaller of the two windows.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.vars.ensure_same(&other.vars)?;
        let bound = self.bound.min(other.bound);
        Ok(Self::from_map(
            &self.vars,
            bound,
            mul_capped(&self.terms, &other.terms, bound),
        ))
    }

    pub fn scale(&self, c: &C) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
            .collect();
        Self::from_map(&self.vars, self.bound, terms)
    }

    /// Multiplies by a monomial. The window grows by its degree.
    pub fn shift(&self, m: &Monomial) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (k.mul(m), c.clone()))
            .collect();
        Self::from_map(&self.vars, self.bound + m.degree(), terms)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.vars, self.bound);
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

    /// Multiplicative inverse of a unit, exact through the same window.
    pub fn invert_unit(&self) -> Result<Self> {
        if self.constant_term().is_zero() {
            return Err(Error::NotAUnit);
        }
        let one = BTreeMap::from([(Monomial::one(self.vars.len()), C::one())]);
        let grid = monomials_up_to(self.vars.len(), self.bound);
        let map = divide_on_grid(&one, &self.terms, &grid)?;
        Ok(Self::from_map(
            &self.vars,
            self.bound,
            map.into_iter().collect(),
        ))
    }

    /// Minimal total degree of a nonzero coefficient.
    pub fn ord(&self) -> SeriesOrder {
        match self.terms.keys().next() {
            Some(m) => SeriesOrder::Finite(m.degree()),
            None => SeriesOrder::AtLeast(self.bound + 1),
        }
    }

    /// Order in `v` of the series with every other variable set to zero.
    pub fn regular_order(&self, v: &str) -> Result<SeriesOrder> {
        Ok(self.regular_order_at(self.vars.index_of(v)?))
    }

    pub(crate) fn regular_order_at(&self, i: usize) -> SeriesOrder {
        self.terms
            .keys()
            .filter(|m| m.degree() == m.exp(i))
            .map(|m| m.exp(i))
            .min()
            .map_or(SeriesOrder::AtLeast(self.bound + 1), SeriesOrder::Finite)
    }

    /// Divides by `v^k`. The window shrinks by `k`.
    pub fn exact_divide_by_var(&self, v: &str, k: u32) -> Result<Self> {
        let i = self.vars.index_of(v)?;
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.exp(i) < k {
                return Err(Error::NotDivisible {
                    var: v.to_string(),
                    power: k,
                });
            }
            out.insert(m.with_exp(i, m.exp(i) - k), c.clone());
        }
        let bound = self.bound.saturating_sub(k);
        Ok(Self::from_map(&self.vars, bound, out))
    }

    /// `x^a t^b -> x^a t^(|a| + b)`, `t` the last variable.
    ///
    /// A monomial of degree `d` lands in degree `d + |a| >= d`, so every
    /// image coefficient of degree at most the input bound comes from a
    /// known input coefficient: the window is preserved.
    pub fn substitute_xt(&self) -> Self {
        let shifted = self.to_poly().substitute_xt();
        Self::from_poly(&shifted, self.bound)
    }

    /// Leaves only the terms satisfying `keep`.
    pub fn filter<F: FnMut(&Monomial) -> bool>(&self, mut keep: F) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| keep(m))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Self::from_map(&self.vars, self.bound, terms)
    }

    /// First monomial (graded-lex) up to degree `n` where the two series
    /// differ, with both coefficients.
    pub fn first_mismatch(&self, other: &Self, n: u32) -> Option<(Monomial, C, C)> {
        let keys: std::collections::BTreeSet<&Monomial> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .filter(|m| m.degree() <= n)
            .collect();
        keys.into_iter().find_map(|m| {
            let a = self.terms.get(m).cloned().unwrap_or_else(C::zero);
            let b = other.terms.get(m).cloned().unwrap_or_else(C::zero);
            (a != b).then(|| (m.clone(), a, b))
        })
    }

    /// Coefficientwise equality on all monomials of degree at most `n`.
    /// Both windows must reach `n`.
    pub fn agrees_through(&self, other: &Self, n: u32) -> bool {
        self.vars == other.vars
            && self.bound >= n
            && other.bound >= n
            && self.first_mismatch(other, n).is_none()
    }
}

/// Truncated product of two term maps, dropping degrees above `cap`.
pub(crate) fn mul_capped<C: Scalar>(
    a: &BTreeMap<Monomial, C>,
    b: &BTreeMap<Monomial, C>,
    cap: u32,
) -> BTreeMap<Monomial, C> {
    let mut acc: HashMap<Monomial, C> = HashMap::new();
    for (ma, ca) in a {
        let da = ma.degree();
        if da > cap {
            break;
        }
        for (mb, cb) in b {
            if da + mb.degree() > cap {
                break;
            }
            let prod = ca.clone() * cb.clone();
            acc.entry(ma.mul(mb))
                .and_modify(|s| *s = s.clone() + prod.clone())
                .or_insert(prod);
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Solves `den * g = num` for `g` on a downward closed set of monomials
/// listed in graded-lex order, using
/// `g_a = (num_a - sum_{b != 0} den_b g_{a-b}) / den_0`.
pub(crate) fn divide_on_grid<C: Scalar>(
    num: &BTreeMap<Monomial, C>,
    den: &BTreeMap<Monomial, C>,
    grid: &[Monomial],
) -> Result<HashMap<Monomial, C>> {
    let nvars = grid.first().map_or(0, Monomial::nvars);
    let d0 = den
        .get(&Monomial::one(nvars))
        .cloned()
        .filter(|c| !c.is_zero())
        .ok_or(Error::NotAUnit)?;
    let inv0 = C::one() / d0;
    let rest: Vec<(&Monomial, &C)> = den.iter().filter(|(m, _)| !m.is_one()).collect();
    let mut g: HashMap<Monomial, C> = HashMap::with_capacity(grid.len());
    for a in grid {
        let mut s = num.get(a).cloned().unwrap_or_else(C::zero);
        for (b, db) in &rest {
            if let Some(diff) = a.div(b) {
                if let Some(gv) = g.get(&diff) {
                    s = s - (*db).clone() * gv.clone();
                }
            }
        }
        if !s.is_zero() {
            g.insert(a.clone(), s * inv0.clone());
        }
    }
    Ok(g)
}

/// Substitutes series for every variable of `p`: variable `k` of `p` is
/// replaced by `images[k]`. All images share one variable set; the result
/// is exact through their smallest window.
pub fn compose<C: Scalar>(p: &MultiPoly<C>, images: &[TruncSeries<C>]) -> Result<TruncSeries<C>> {
    if images.len() != p.vars().len() {
        return Err(Error::InvalidArgument(format!(
            "{} images for {} variables",
            images.len(),
            p.vars().len()
        )));
    }
    let first = images
        .first()
        .ok_or_else(|| Error::InvalidArgument("no images".into()))?;
    for s in images {
        first.vars.ensure_same(&s.vars)?;
    }
    let bound = images.iter().map(|s| s.bound).min().unwrap();
    let vars = first.vars.clone();
    let images: Vec<TruncSeries<C>> = images.iter().map(|s| s.truncate(bound)).collect();
    // Cache of powers per variable, grown on demand.
    let mut powers: Vec<Vec<TruncSeries<C>>> =
        vec![vec![TruncSeries::one(&vars, bound)]; images.len()];
    let mut acc = TruncSeries::zero(&vars, bound);
    for (m, c) in p.terms() {
        let mut term = TruncSeries::constant(&vars, bound, c.clone());
        for (k, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[k].len() <= e as usize {
                let next = &powers[k][powers[k].len() - 1] * &images[k];
                powers[k].push(next);
            }
            term = &term * &powers[k][e as usize];
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

/// `P(x, h(x))` for `P` over `(x.., t)` and `h` over `(x..)`.
pub fn eval_poly_at_series<C: Scalar>(
    p: &MultiPoly<C>,
    h: &TruncSeries<C>,
) -> Result<TruncSeries<C>> {
    let n = p.vars().len();
    if n == 0 {
        return Err(Error::InvalidArgument(
            "annihilator without variables".into(),
        ));
    }
    let xvars = p.vars().without(n - 1);
    xvars.ensure_same(h.vars())?;
    let mut images: Vec<TruncSeries<C>> = (0..n - 1)
        .map(|i| TruncSeries::from_poly(&MultiPoly::var_at(&xvars, i), h.bound))
        .collect();
    images.push(h.clone());
    compose(p, &images)
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<C: Scalar> $tr<&TruncSeries<C>> for &TruncSeries<C> {
            type Output = TruncSeries<C>;
            fn $method(self, rhs: &TruncSeries<C>) -> TruncSeries<C> {
                self.$checked(rhs).expect("mismatched variable sets")
            }
        }

        impl<C: Scalar> $tr for TruncSeries<C> {
            type Output = TruncSeries<C>;
            fn $method(self, rhs: TruncSeries<C>) -> TruncSeries<C> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<C: Scalar> Neg for &TruncSeries<C> {
    type Output = TruncSeries<C>;
    fn neg(self) -> TruncSeries<C> {
        self.scale(&-C::one())
    }
}

impl<C: Scalar> Neg for TruncSeries<C> {
    type Output = TruncSeries<C>;
    fn neg(self) -> TruncSeries<C> {
        -&self
    }
}

impl<C: Scalar> fmt::Display for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.vars, self.terms.iter())?;
        write!(f, " + O(deg {})", self.bound + 1)
    }
}

impl<C: Scalar> fmt::Debug for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries[{}]({})", self.vars, self)
    }
}
