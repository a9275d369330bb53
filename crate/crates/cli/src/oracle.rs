//! Closed-form coefficient sequences, computed with integer and rational
//! arithmetic only. None of this touches the series engine.
//!
//! A directive is a base sequence followed by `|`-separated modifiers:
//!
//! ```text
//! binomial-series(1/2, 1) | minus-one | square
//! central-binomial | along-diagonal
//! ```
//!
//! Bases: `one`, `geometric`, `central-binomial`, `catalan`,
//! `binomial-sum-apery`, `binomial-series(r, s)` (coefficients of
//! `(1 + s x)^r`). Modifiers: `minus-one`, `negate`, `times-x`, `square`,
//! and a final optional `along-diagonal` that places the `n`-th coefficient
//! on the monomial with every exponent equal to `n`.

use algdiag::{BigInt, Monomial, QSeries, Rational, TruncSeries, VarSet};
use num_traits::{One, Zero};

use crate::CliError;

#[derive(Clone, Debug, PartialEq)]
enum Base {
    One,
    Geometric,
    CentralBinomial,
    Catalan,
    Apery,
    BinomialSeries(Rational, Rational),
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Modifier {
    MinusOne,
    Negate,
    TimesX,
    Square,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Oracle {
    base: Base,
    modifiers: Vec<Modifier>,
    along_diagonal: bool,
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Oracle(msg.into())
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn apery(n: u64) -> BigInt {
    (0..=n)
        .map(|k| {
            let a = binomial(n, k);
            let b = binomial(n + k, k);
            &a * &a * &b * &b
        })
        .sum()
}

/// `C_0 .. C_{len-1}` by `C_{m+1} = sum_i C_i C_{m-i}`.
fn catalan(len: usize) -> Vec<BigInt> {
    let mut c: Vec<BigInt> = Vec::with_capacity(len);
    for m in 0..len {
        if m == 0 {
            c.push(BigInt::one());
            continue;
        }
        let next = (0..m).map(|i| &c[i] * &c[m - 1 - i]).sum();
        c.push(next);
    }
    c
}

/// `binom(r, k) s^k` for `k = 0..len`.
fn binomial_series(r: &Rational, s: &Rational, len: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(len);
    let mut c = Rational::one();
    for k in 0..len {
        out.push(c.clone());
        let kk = Rational::from_integer(BigInt::from(k));
        c = c * (r - &kk) / (kk + Rational::one()) * s;
    }
    out
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| bad(format!("`{s}` is not a rational number")))
}

impl Oracle {
    pub fn parse(directive: &str) -> Result<Self, CliError> {
        let mut parts = directive.split('|').map(str::trim);
        let head = parts.next().unwrap_or_default();
        let (name, args) = match head.find('(') {
            Some(i) if head.ends_with(')') => (&head[..i], Some(&head[i + 1..head.len() - 1])),
            Some(_) => return Err(bad(format!("unbalanced parentheses in `{head}`"))),
            None => (head, None),
        };
        let base = match (name.trim(), args) {
            ("one", None) => Base::One,
            ("geometric", None) => Base::Geometric,
            ("central-binomial", None) => Base::CentralBinomial,
            ("catalan", None) => Base::Catalan,
            ("binomial-sum-apery", None) => Base::Apery,
            ("binomial-series", Some(a)) => {
                let v: Vec<&str> = a.split(',').collect();
                if v.len() != 2 {
                    return Err(bad("binomial-series takes (exponent, scale)"));
                }
                Base::BinomialSeries(parse_rational(v[0])?, parse_rational(v[1])?)
            }
            (other, _) => return Err(bad(format!("unknown oracle `{other}`"))),
        };
        let mut modifiers = Vec::new();
        let mut along_diagonal = false;
        for m in parts {
            if along_diagonal {
                return Err(bad("`along-diagonal` must come last"));
            }
            match m {
                "minus-one" => modifiers.push(Modifier::MinusOne),
                "negate" => modifiers.push(Modifier::Negate),
                "times-x" => modifiers.push(Modifier::TimesX),
                "square" => modifiers.push(Modifier::Square),
                "along-diagonal" => along_diagonal = true,
                other => return Err(bad(format!("unknown modifier `{other}`"))),
            }
        }
        Ok(Oracle {
            base,
            modifiers,
            along_diagonal,
        })
    }

    /// The first `len` coefficients of the univariate sequence.
    pub fn coefficients(&self, len: usize) -> Vec<Rational> {
        let int = |v: BigInt| Rational::from_integer(v);
        let mut c: Vec<Rational> = match &self.base {
            Base::One => (0..len)
                .map(|k| {
                    if k == 0 {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect(),
            Base::Geometric => vec![Rational::one(); len],
            Base::CentralBinomial => (0..len as u64).map(|n| int(binomial(2 * n, n))).collect(),
            Base::Catalan => catalan(len).into_iter().map(int).collect(),
            Base::Apery => (0..len as u64).map(|n| int(apery(n))).collect(),
            Base::BinomialSeries(r, s) => binomial_series(r, s, len),
        };
        for m in &self.modifiers {
            match m {
                Modifier::MinusOne => {
                    if let Some(c0) = c.first_mut() {
                        *c0 -= Rational::one();
                    }
                }
                Modifier::Negate => c.iter_mut().for_each(|x| *x = -x.clone()),
                Modifier::TimesX => {
                    c.insert(0, Rational::zero());
                    c.truncate(len);
                }
                Modifier::Square => {
                    c = (0..len)
                        .map(|n| (0..=n).map(|i| &c[i] * &c[n - i]).sum())
                        .collect();
                }
            }
        }
        c
    }

    /// The sequence laid out as a series over `vars`, exact through
    /// `truncation`.
    pub fn series(&self, vars: &VarSet, truncation: u32) -> Result<QSeries, CliError> {
        let k = vars.len() as u32;
        if k == 0 {
            return Err(bad("oracle needs at least one variable"));
        }
        if !self.along_diagonal && k != 1 {
            return Err(bad(format!(
                "univariate oracle compared against a series in {k} variables; add `along-diagonal`"
            )));
        }
        let len = (truncation / k) as usize + 1;
        let terms = self
            .coefficients(len)
            .into_iter()
            .enumerate()
            .map(|(n, c)| (Monomial::new(vec![n as u32; k as usize]), c));
        Ok(TruncSeries::from_terms(vars, truncation, terms))
    }
}
