//! Closed-form coefficient oracles, computed without the series engine.

#![allow(dead_code)]

use algdiag::{BigInt, Rational};
use num_traits::{One, Zero};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `(2n)! / (n!)^2`
pub fn central_binomial(n: u64) -> BigInt {
    factorial(2 * n) / (factorial(n) * factorial(n))
}

/// `sum_k C(n,k)^2 C(n+k,k)^2`
pub fn apery(n: u64) -> BigInt {
    (0..=n)
        .map(|k| {
            let a = binomial(n, k) * binomial(n + k, k);
            &a * &a
        })
        .sum()
}

/// Catalan numbers by the convolution recurrence.
pub fn catalan(count: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::one()];
    while c.len() < count {
        let n = c.len();
        let next = (0..n).map(|i| &c[i] * &c[n - 1 - i]).sum();
        c.push(next);
    }
    c.truncate(count);
    c
}

/// Coefficients of `(1 + s x)^r` through `x^n`: `C(r, k) s^k`.
pub fn binomial_series(r: &Rational, s: i64, n: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut c = Rational::one();
    for k in 0..=n {
        out.push(c.clone());
        let k = Rational::from_integer(BigInt::from(k));
        c = c * (r - &k) / (&k + Rational::one()) * Rational::from_integer(BigInt::from(s));
    }
    out
}

/// Power series product of coefficient lists, truncated to `n + 1` terms.
pub fn mul(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn pow(a: &[Rational], k: u32, n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n + 1];
    out[0] = Rational::one();
    for _ in 0..k {
        out = mul(&out, a, n);
    }
    out
}

use algdiag::{Monomial, QPoly, QSeries, TruncSeries, VarSet};
use proptest::prelude::*;

/// Random sparse polynomial with small rational coefficients and total
/// degree at most `max_deg`.
pub fn poly_strategy(vars: VarSet, max_deg: u32, max_terms: usize) -> impl Strategy<Value = QPoly> {
    let n = vars.len();
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, n), -6i64..=6, 1i64..=3),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        QPoly::from_terms(
            &vars,
            terms.into_iter().filter_map(|(mut e, c, d)| {
                // Scale the exponent vector down into the degree budget.
                while e.iter().sum::<u32>() > max_deg {
                    let k = e.iter().position(|&x| x > 0)?;
                    e[k] -= 1;
                }
                Some((Monomial::new(e), q(c, d)))
            }),
        )
    })
}

pub fn series_strategy(
    vars: VarSet,
    bound: u32,
    max_terms: usize,
) -> impl Strategy<Value = QSeries> {
    poly_strategy(vars, bound, max_terms).prop_map(move |p| TruncSeries::from_poly(&p, bound))
}

/// Univariate gcd degree over Q, by the Euclidean algorithm on dense
/// coefficient lists (constant term first).
pub fn gcd_degree(a: &[Rational], b: &[Rational]) -> Option<usize> {
    fn trim(v: &mut Vec<Rational>) {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    }
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() && b.is_empty() {
        return None;
    }
    while !b.is_empty() {
        // a mod b
        let lead = b.last().unwrap().clone();
        while a.len() >= b.len() {
            let c = a.last().unwrap().clone() / lead.clone();
            let shift = a.len() - b.len();
            for (i, bc) in b.iter().enumerate() {
                a[i + shift] -= c.clone() * bc;
            }
            a.pop();
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    Some(a.len() - 1)
}
