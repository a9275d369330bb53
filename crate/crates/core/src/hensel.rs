//! Hensel lifting over truncated power series.
//!
//! Simple roots of `P(0, t)` lift to power series roots of `P(x, t)`
//! ([`lift_root`]), and coprime factorizations of `f(0, t)` lift to
//! factorizations of `f(x, t)` ([`lift_factorization`]).

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::MultiPoly;
use crate::resultant::resultant_at;
use crate::scalar::Scalar;
use crate::series::{eval_poly_at_series, TruncSeries};
use crate::vars::VarSet;

/// Why an annihilator fails to be etale at the origin.
#[derive(Debug, Clone, PartialEq)]
pub enum EtaleFailure<C> {
    /// `P(0, 0) != 0`, so the root is not at the origin.
    NonzeroAtOrigin(C),
    /// `dP/dt (0, 0) = 0`.
    SingularDerivative,
}

impl<C: Scalar> fmt::Display for EtaleFailure<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EtaleFailure::NonzeroAtOrigin(c) => write!(f, "P(0,0) = {c} is not zero"),
            EtaleFailure::SingularDerivative => write!(f, "dP/dt(0,0) = 0"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EtaleCheck<C> {
    pub etale: bool,
    pub failure: Option<EtaleFailure<C>>,
}

impl<C: Scalar> EtaleCheck<C> {
    pub fn diagnostic(&self) -> String {
        match &self.failure {
            None => "P(0,0) = 0 and dP/dt(0,0) != 0".to_string(),
            Some(f) => f.to_string(),
        }
    }
}

/// Checks `P(0,0) = 0` and `dP/dt(0,0) != 0`.
pub fn is_etale_algebraic<C: Scalar>(p: &MultiPoly<C>, t: &str) -> Result<EtaleCheck<C>> {
    let ti = p.vars().index_of(t)?;
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let at0 = p.constant_term();
    let failure = if !at0.is_zero() {
        Some(EtaleFailure::NonzeroAtOrigin(at0))
    } else if p.derivative_at(ti).constant_term().is_zero() {
        Some(EtaleFailure::SingularDerivative)
    } else {
        None
    };
    Ok(EtaleCheck {
        etale: failure.is_none(),
        failure,
    })
}

/// An annihilating polynomial `P(x.., t)` together with its etale status.
/// The series variable `t` is always the last variable of `P`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicSeriesSpec<C: Scalar> {
    annihilator: MultiPoly<C>,
    series_var: String,
    etale: bool,
}

impl<C: Scalar> AlgebraicSeriesSpec<C> {
    pub fn new(annihilator: MultiPoly<C>) -> Result<Self> {
        if annihilator.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let n = annihilator.vars().len();
        if n < 2 {
            return Err(Error::InvalidArgument(
                "annihilator needs at least one x variable and t".into(),
            ));
        }
        let series_var = annihilator.vars().name(n - 1).to_string();
        if annihilator.degree_in(n - 1) == Some(0) {
            return Err(Error::ZeroDegree(series_var));
        }
        let etale = is_etale_algebraic(&annihilator, &series_var)?.etale;
        Ok(AlgebraicSeriesSpec {
            annihilator,
            series_var,
            etale,
        })
    }

    /// Like [`new`](Self::new), but fails with `NotEtale` unless the
    /// annihilator is etale.
    pub fn etale(annihilator: MultiPoly<C>) -> Result<Self> {
        let spec = Self::new(annihilator)?;
        spec.require_etale()?;
        Ok(spec)
    }

    pub fn annihilator(&self) -> &MultiPoly<C> {
        &self.annihilator
    }

    pub fn series_var(&self) -> &str {
        &self.series_var
    }

    pub fn is_etale(&self) -> bool {
        self.etale
    }

    pub fn vars(&self) -> &VarSet {
        self.annihilator.vars()
    }

    /// The variables of the series itself (everything but `t`).
    pub fn x_vars(&self) -> VarSet {
        self.vars().without(self.vars().len() - 1)
    }

    pub(crate) fn t_index(&self) -> usize {
        self.vars().len() - 1
    }

    pub fn require_etale(&self) -> Result<()> {
        if self.etale {
            Ok(())
        } else {
            let check = is_etale_algebraic(&self.annihilator, &self.series_var)?;
            Err(Error::NotEtale(check.diagnostic()))
        }
    }

    /// The unique series root vanishing at the origin, through degree `n`.
    pub fn etale_root(&self, n: u32) -> Result<TruncSeries<C>> {
        self.require_etale()?;
        Ok(lift_root(&self.annihilator, &C::zero(), n)?.series)
    }
}

/// A series root of an annihilator, with its value at the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftedRoot<C: Scalar> {
    pub spec: AlgebraicSeriesSpec<C>,
    pub root_at_origin: C,
    pub series: TruncSeries<C>,
}

/// `P(0, t)` as a univariate polynomial, kept over the full variable set.
fn at_x_zero<C: Scalar>(p: &MultiPoly<C>, t: usize) -> MultiPoly<C> {
    MultiPoly::from_terms(
        p.vars(),
        p.terms()
            .filter(|(m, _)| m.degree() == m.exp(t))
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

fn check_simple_root<C: Scalar>(p: &MultiPoly<C>, lambda: &C) -> Result<C> {
    let n = p.vars().len();
    let t = n - 1;
    let mut point = vec![C::zero(); n];
    point[t] = lambda.clone();
    if !p.eval(&point).is_zero() {
        return Err(Error::NotARoot(lambda.to_string()));
    }
    let slope = p.derivative_at(t).eval(&point);
    if slope.is_zero() {
        return Err(Error::MultipleRoot(lambda.to_string()));
    }
    Ok(slope)
}

/// Lifts a simple root `lambda` of `P(0, t)` to the unique series `h` with
/// `h(0) = lambda` and `P(x, h) = 0`, through total degree `n`.
///
/// Newton iteration `h <- h - P(x,h) / P_t(x,h)`, doubling the precision at
/// every step.
pub fn lift_root<C: Scalar>(p: &MultiPoly<C>, lambda: &C, n: u32) -> Result<LiftedRoot<C>> {
    let spec = AlgebraicSeriesSpec::new(p.clone())?;
    check_simple_root(p, lambda)?;
    let xv = spec.x_vars();
    let dp = p.derivative_at(spec.t_index());
    let mut h = TruncSeries::constant(&xv, 0, lambda.clone());
    let mut prec = 0;
    while prec < n {
        let next = (2 * prec + 1).min(n);
        let approx = TruncSeries::from_poly(&h.to_poly(), next);
        let residual = eval_poly_at_series(p, &approx)?;
        let slope = eval_poly_at_series(&dp, &approx)?;
        h = &approx - &(&residual * &slope.invert_unit()?);
        prec = next;
    }
    Ok(LiftedRoot {
        spec,
        root_at_origin: lambda.clone(),
        series: h,
    })
}

/// Reference implementation of [`lift_root`]: solves for one homogeneous
/// degree at a time, `h_d = -[P(x, h_{<d})]_d / P_t(0, lambda)`.
pub fn lift_root_linear<C: Scalar>(p: &MultiPoly<C>, lambda: &C, n: u32) -> Result<TruncSeries<C>> {
    let spec = AlgebraicSeriesSpec::new(p.clone())?;
    let slope = check_simple_root(p, lambda)?;
    let xv = spec.x_vars();
    let mut h = TruncSeries::constant(&xv, 0, lambda.clone());
    for d in 1..=n {
        let approx = TruncSeries::from_poly(&h.to_poly(), d);
        let residual = eval_poly_at_series(p, &approx)?;
        let next: Vec<(Monomial, C)> = residual
            .terms()
            .filter(|(m, _)| m.degree() == d)
            .map(|(m, c)| (m.clone(), -c.clone() / slope.clone()))
            .collect();
        let mut poly = h.to_poly();
        for (m, c) in next {
            poly = &poly + &MultiPoly::monomial(&xv, m, c);
        }
        h = TruncSeries::from_poly(&poly, d);
    }
    Ok(h)
}

/// `P(x, t + c)`: annihilates `h - c` when `P` annihilates `h`.
pub fn shift_annihilator<C: Scalar>(p: &MultiPoly<C>, c: &C) -> Result<MultiPoly<C>> {
    let n = p.vars().len();
    if n == 0 {
        return Err(Error::InvalidArgument("no series variable".into()));
    }
    let t = n - 1;
    let shifted = &MultiPoly::var_at(p.vars(), t) + &MultiPoly::constant(p.vars(), c.clone());
    p.substitute(t, &shifted)
}

/// A polynomial in `t` whose coefficients are truncated series in `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesPolynomial<C: Scalar> {
    x_vars: VarSet,
    t_name: String,
    coeffs: Vec<TruncSeries<C>>,
}

impl<C: Scalar> SeriesPolynomial<C> {
    pub fn new(x_vars: &VarSet, t_name: &str, coeffs: Vec<TruncSeries<C>>) -> Self {
        SeriesPolynomial {
            x_vars: x_vars.clone(),
            t_name: t_name.to_string(),
            coeffs,
        }
    }

    /// Coefficients of `p` (over `(x.., t)`) as series through `bound`.
    pub fn from_poly(p: &MultiPoly<C>, bound: u32) -> Self {
        let n = p.vars().len();
        let xv = p.vars().without(n - 1);
        let coeffs = p
            .coeffs_in(n - 1)
            .into_iter()
            .map(|c| TruncSeries::from_poly(&c.embed(&xv).expect("t was removed"), bound))
            .collect();
        Self::new(&xv, p.vars().name(n - 1), coeffs)
    }

    pub fn coeffs(&self) -> &[TruncSeries<C>] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn bound(&self) -> u32 {
        self.coeffs
            .iter()
            .map(TruncSeries::bound)
            .min()
            .unwrap_or(u32::MAX)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs
            .last()
            .is_some_and(|c| c.num_terms() == 1 && c.constant_term().is_one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let bound = self.bound().min(other.bound());
        let zero = TruncSeries::zero(&self.x_vars, bound);
        let mut out = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(&self.x_vars, &self.t_name, out)
    }

    /// Coefficientwise agreement through degree `n`.
    pub fn agrees_through(&self, other: &Self, n: u32) -> bool {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).all(|k| {
            let z = TruncSeries::zero(&self.x_vars, n);
            let a = self.coeffs.get(k).unwrap_or(&z);
            let b = other.coeffs.get(k).unwrap_or(&z);
            a.agrees_through(b, n)
        })
    }
}

impl<C: Scalar> fmt::Display for SeriesPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{}", self.t_name)?,
                _ => write!(f, "({c})*{}^{k}", self.t_name)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Dense Gaussian elimination, returning the inverse of `a`.
fn invert_matrix<C: Scalar>(mut a: Vec<Vec<C>>) -> Option<Vec<Vec<C>>> {
    let n = a.len();
    let mut inv: Vec<Vec<C>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { C::one() } else { C::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let scale = C::one() / a[col][col].clone();
        for j in 0..n {
            a[col][j] = a[col][j].clone() * scale.clone();
            inv[col][j] = inv[col][j].clone() * scale.clone();
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for j in 0..n {
                    a[r][j] = a[r][j].clone() - factor.clone() * a[col][j].clone();
                    inv[r][j] = inv[r][j].clone() - factor.clone() * inv[col][j].clone();
                }
            }
        }
    }
    Some(inv)
}

fn is_monic_in<C: Scalar>(p: &MultiPoly<C>, t: usize) -> bool {
    p.coeffs_in(t)
        .last()
        .is_some_and(|c| c.is_constant() && c.constant_term().is_one())
}

/// Homogeneous slice of `p` of degree `d` in the x variables (`t` last).
fn x_slice<C: Scalar>(p: &MultiPoly<C>, t: usize, d: u32) -> MultiPoly<C> {
    MultiPoly::from_terms(
        p.vars(),
        p.terms()
            .filter(|(m, _)| m.degree() - m.exp(t) == d)
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

/// Lifts `f(0, t) = p0(t) q0(t)` (monic, coprime) to `f = p q` with
/// coefficient series exact through total degree `n`.
///
/// Each homogeneous x-degree `d` solves `p0 Q_d + q0 P_d = E_d` with
/// `deg P_d < deg p0`, `deg Q_d < deg q0`; the system matrix is the scalar
/// Sylvester matrix of `(p0, q0)`, invertible because they are coprime.
pub fn lift_factorization<C: Scalar>(
    f: &MultiPoly<C>,
    p0: &MultiPoly<C>,
    q0: &MultiPoly<C>,
    n: u32,
) -> Result<(SeriesPolynomial<C>, SeriesPolynomial<C>)> {
    let vars = f.vars().clone();
    vars.ensure_same(p0.vars())?;
    vars.ensure_same(q0.vars())?;
    let nv = vars.len();
    if nv < 2 {
        return Err(Error::InvalidArgument("need x variables and t".into()));
    }
    let t = nv - 1;
    for (name, g) in [("f", f), ("p0", p0), ("q0", q0)] {
        if !is_monic_in(g, t) {
            return Err(Error::InvalidArgument(format!("{name} is not monic in t")));
        }
    }
    for g in [p0, q0] {
        if g.terms().any(|(m, _)| m.degree() != m.exp(t)) {
            return Err(Error::InvalidArgument(
                "seed factors must not involve x".into(),
            ));
        }
    }
    let m = p0.degree_in(t).unwrap() as usize;
    let k = q0.degree_in(t).unwrap() as usize;
    if at_x_zero(f, t) != p0 * q0 {
        return Err(Error::BadSeed);
    }
    let xv = vars.without(t);
    if m == 0 || k == 0 {
        // One factor is 1; the other is f itself.
        let whole = SeriesPolynomial::from_poly(f, n);
        let one = SeriesPolynomial::new(&xv, vars.name(t), vec![TruncSeries::one(&xv, n)]);
        return Ok(if m == 0 { (one, whole) } else { (whole, one) });
    }
    if resultant_at(p0, q0, t)?.is_zero() {
        return Err(Error::NotCoprime);
    }

    // Columns 0..m: q0 * t^j (unknown P_j); columns m..m+k: p0 * t^j (Q_j).
    let size = m + k;
    let p0c: Vec<C> = p0.coeffs_in(t).iter().map(|c| c.constant_term()).collect();
    let q0c: Vec<C> = q0.coeffs_in(t).iter().map(|c| c.constant_term()).collect();
    let mut a = vec![vec![C::zero(); size]; size];
    for j in 0..m {
        for (i, c) in q0c.iter().enumerate() {
            a[i + j][j] = c.clone();
        }
    }
    for j in 0..k {
        for (i, c) in p0c.iter().enumerate() {
            a[i + j][m + j] = c.clone();
        }
    }
    let inv = invert_matrix(a).ok_or(Error::NotCoprime)?;

    let mut p_slices = vec![p0.clone()];
    let mut q_slices = vec![q0.clone()];
    for d in 1..=n {
        let mut e = x_slice(f, t, d);
        for a_deg in 1..d {
            e = &e - &(&p_slices[a_deg as usize] * &q_slices[(d - a_deg) as usize]);
        }
        // Group the right-hand side by x-monomial.
        let mut rhs: BTreeMap<Monomial, Vec<C>> = BTreeMap::new();
        for (mono, c) in e.terms() {
            let pow = mono.exp(t) as usize;
            debug_assert!(pow < size);
            rhs.entry(mono.with_exp(t, 0))
                .or_insert_with(|| vec![C::zero(); size])[pow] = c.clone();
        }
        let mut pd = MultiPoly::zero(&vars);
        let mut qd = MultiPoly::zero(&vars);
        for (xm, b) in rhs {
            for (row, coeffs) in inv.iter().enumerate() {
                let s = coeffs
                    .iter()
                    .zip(&b)
                    .fold(C::zero(), |acc, (u, v)| acc + u.clone() * v.clone());
                if s.is_zero() {
                    continue;
                }
                if row < m {
                    pd = &pd + &MultiPoly::monomial(&vars, xm.with_exp(t, row as u32), s);
                } else {
                    qd = &qd + &MultiPoly::monomial(&vars, xm.with_exp(t, (row - m) as u32), s);
                }
            }
        }
        p_slices.push(pd);
        q_slices.push(qd);
    }
    let sum = |slices: &[MultiPoly<C>]| {
        slices
            .iter()
            .fold(MultiPoly::zero(&vars), |acc, s| &acc + s)
    };
    Ok((
        SeriesPolynomial::from_poly(&sum(&p_slices), n),
        SeriesPolynomial::from_poly(&sum(&q_slices), n),
    ))
}
