//! Exact JSON forms of series and polynomials.
//!
//! Every number is a decimal string so that arbitrary precision survives the
//! trip through JSON.

use algdiag::{BigInt, Monomial, QPoly, QSeries, Rational, TruncSeries, VarSet};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub num: String,
    pub den: String,
}

/// A truncated series: coefficients of every monomial of total degree at
/// most `truncation`, listed sparsely in graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub vars: Vec<String>,
    pub truncation: u32,
    pub terms: Vec<TermJson>,
}

/// A polynomial: same layout as [`SeriesJson`] without a truncation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

fn term(m: &Monomial, c: &Rational) -> TermJson {
    TermJson {
        exp: m.exps().to_vec(),
        num: c.numer().to_string(),
        den: c.denom().to_string(),
    }
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Json(msg.into())
}

fn parse_int(s: &str) -> Result<BigInt, CliError> {
    s.parse::<BigInt>()
        .map_err(|_| bad(format!("`{s}` is not a decimal integer")))
}

fn read_terms(vars: &VarSet, terms: &[TermJson]) -> Result<Vec<(Monomial, Rational)>, CliError> {
    let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(terms.len());
    for t in terms {
        if t.exp.len() != vars.len() {
            return Err(bad(format!(
                "exponent {:?} has {} entries for {} variables",
                t.exp,
                t.exp.len(),
                vars.len()
            )));
        }
        let num = parse_int(&t.num)?;
        let den = parse_int(&t.den)?;
        if !den.is_positive() {
            return Err(bad(format!("denominator {den} is not positive")));
        }
        let c = Rational::new_raw(num, den);
        let reduced = c.reduced();
        if reduced.numer() != c.numer() || reduced.denom() != c.denom() {
            return Err(bad(format!(
                "{}/{} is not in lowest terms",
                c.numer(),
                c.denom()
            )));
        }
        if c.is_zero() {
            return Err(bad("zero coefficients are not listed"));
        }
        let m = Monomial::new(t.exp.clone());
        if let Some((prev, _)) = out.last() {
            if *prev >= m {
                return Err(bad(format!("terms not in graded-lex order at {:?}", t.exp)));
            }
        }
        out.push((m, c));
    }
    Ok(out)
}

impl SeriesJson {
    pub fn from_series(s: &QSeries) -> Self {
        SeriesJson {
            vars: s.vars().names().to_vec(),
            truncation: s.bound(),
            terms: s.terms().map(|(m, c)| term(m, c)).collect(),
        }
    }

    /// Rejects anything [`from_series`](Self::from_series) would not emit.
    pub fn to_series(&self) -> Result<QSeries, CliError> {
        let vars = VarSet::new(self.vars.iter().cloned())?;
        let terms = read_terms(&vars, &self.terms)?;
        if let Some((m, _)) = terms.iter().find(|(m, _)| m.degree() > self.truncation) {
            return Err(bad(format!(
                "term {:?} lies above the truncation {}",
                m.exps(),
                self.truncation
            )));
        }
        Ok(TruncSeries::from_terms(&vars, self.truncation, terms))
    }
}

impl PolyJson {
    pub fn from_poly(p: &QPoly) -> Self {
        PolyJson {
            vars: p.vars().names().to_vec(),
            terms: p.terms().map(|(m, c)| term(m, c)).collect(),
        }
    }

    pub fn to_poly(&self) -> Result<QPoly, CliError> {
        let vars = VarSet::new(self.vars.iter().cloned())?;
        Ok(QPoly::from_terms(&vars, read_terms(&vars, &self.terms)?))
    }
}
