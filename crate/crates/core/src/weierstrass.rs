//! Formal Weierstrass division and preparation on truncated series.
//!
//! Division by a series `g` that is regular of order `d` in a variable `v`
//! is solved order by order in a weighted grading where the remaining
//! variables weigh `d` and `v` weighs 1. Writing `g = g_low + v^d U` with
//! `U` a unit and `deg_v g_low < d`, the quotient satisfies
//! `q U = w` where `w = beta(f - w G)`, `G = g_low / U`, and `beta` keeps
//! the part of `v`-degree at least `d`, divided by `v^d`. The remainder is
//! the complementary part of `f - w G`.
//!
//! With inputs exact through total degree `N`, the quotient is exact
//! through `floor((N - d) / d)` and remainder coefficient `b_j` through
//! `floor((N - j) / d)`. Both rules are tight: for `g = v^2 - x` the
//! quotient's degree `D` part depends on `f` up to degree `2D + 2`.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::monomial::{monomials_up_to, Monomial};
use crate::scalar::Scalar;
use crate::series::{divide_on_grid, SeriesOrder, TruncSeries};
use crate::vars::VarSet;

/// `f = q g + sum_j b_j(x') v^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassDivision<C: Scalar> {
    pub var: String,
    /// Regular order of the divisor.
    pub order: u32,
    pub quotient: TruncSeries<C>,
    /// `b_0 .. b_{d-1}`, series in all variables but `var`.
    pub remainder_coeffs: Vec<TruncSeries<C>>,
    /// Total degree through which `f = q g + r` is exact.
    pub window: u32,
}

/// `g = u p` with `p = v^d + sum_i a_i(x') v^i` distinguished.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassPreparation<C: Scalar> {
    pub var: String,
    pub order: u32,
    pub unit: TruncSeries<C>,
    /// `a_0 .. a_{d-1}`, each vanishing at the origin.
    pub distinguished: Vec<TruncSeries<C>>,
    pub window: u32,
}

/// Reassembles `sum_j c_j v^j` over the full variable set, truncated to
/// total degree `bound`.
fn assemble<C: Scalar>(
    vars: &VarSet,
    vi: usize,
    coeffs: &[TruncSeries<C>],
    lead: Option<u32>,
    bound: u32,
) -> TruncSeries<C> {
    let mut terms = BTreeMap::new();
    for (j, c) in coeffs.iter().enumerate() {
        for (m, x) in c.terms() {
            terms.insert(m.with_inserted(vi, j as u32), x.clone());
        }
    }
    if let Some(d) = lead {
        terms.insert(Monomial::var(vars.len(), vi, d), C::one());
    }
    TruncSeries::from_map(vars, bound, terms)
}

impl<C: Scalar> WeierstrassDivision<C> {
    /// The remainder as a series in all variables. Exact through
    /// `floor(N / d)`, which is at least [`window`](Self::window).
    pub fn remainder(&self) -> TruncSeries<C> {
        let vars = self.quotient.vars();
        let vi = vars.index_of(&self.var).expect("division variable");
        let bound = self
            .remainder_coeffs
            .iter()
            .enumerate()
            .map(|(j, b)| b.bound() + j as u32)
            .min()
            .unwrap_or(self.window)
            .max(self.window);
        assemble(vars, vi, &self.remainder_coeffs, None, bound)
    }

    /// Checks `q g + r = f` through [`window`](Self::window).
    pub fn reconstructs(&self, f: &TruncSeries<C>, g: &TruncSeries<C>) -> bool {
        let lhs = &(&self.quotient * g) + &self.remainder().truncate(self.window);
        lhs.agrees_through(f, self.window)
    }
}

impl<C: Scalar> WeierstrassPreparation<C> {
    /// `p = v^d + sum_i a_i v^i`, exact through [`window`](Self::window).
    pub fn distinguished_poly(&self) -> TruncSeries<C> {
        let vars = self.unit.vars();
        let vi = vars.index_of(&self.var).expect("preparation variable");
        assemble(vars, vi, &self.distinguished, Some(self.order), self.window)
    }

    /// Checks `u p = g` through [`window`](Self::window).
    pub fn reconstructs(&self, g: &TruncSeries<C>) -> bool {
        (&self.unit * &self.distinguished_poly()).agrees_through(g, self.window)
    }
}

/// Product of two term maps keeping only weights up to `cap`.
fn mul_weighted<C: Scalar, W: Fn(&Monomial) -> u32>(
    a: &BTreeMap<Monomial, C>,
    b: &BTreeMap<Monomial, C>,
    cap: u32,
    weight: &W,
) -> BTreeMap<Monomial, C> {
    let bw: Vec<(u32, &Monomial, &C)> = b.iter().map(|(m, c)| (weight(m), m, c)).collect();
    let mut acc: HashMap<Monomial, C> = HashMap::new();
    for (ma, ca) in a {
        let wa = weight(ma);
        if wa > cap {
            continue;
        }
        for (wb, mb, cb) in &bw {
            if wa + wb > cap {
                continue;
            }
            let prod = ca.clone() * (*cb).clone();
            acc.entry(ma.mul(mb))
                .and_modify(|s| *s = s.clone() + prod.clone())
                .or_insert(prod);
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn regular_order_of<C: Scalar>(g: &TruncSeries<C>, v: &str) -> Result<(usize, u32)> {
    let vi = g.vars().index_of(v)?;
    match g.regular_order_at(vi) {
        SeriesOrder::Finite(d) => Ok((vi, d)),
        SeriesOrder::AtLeast(_) => Err(Error::NotRegular(format!(
            "no pure power of {v} up to degree {} has a nonzero coefficient",
            g.bound()
        ))),
    }
}

/// Weierstrass division of `f` by `g` with respect to `v`.
pub fn w_divide<C: Scalar>(
    f: &TruncSeries<C>,
    g: &TruncSeries<C>,
    v: &str,
) -> Result<WeierstrassDivision<C>> {
    f.vars().ensure_same(g.vars())?;
    let (vi, d) = regular_order_of(g, v)?;
    let vars = g.vars().clone();
    let xv = vars.without(vi);
    let n = f.bound().min(g.bound());
    if d == 0 {
        let q = f.truncate(n).checked_mul(&g.truncate(n).invert_unit()?)?;
        return Ok(WeierstrassDivision {
            var: v.to_string(),
            order: 0,
            quotient: q,
            remainder_coeffs: Vec::new(),
            window: n,
        });
    }
    let weight = |m: &Monomial| d * (m.degree() - m.exp(vi)) + m.exp(vi);
    let nv = vars.len();

    // Every monomial of weight at most n, lightest first.
    let mut grid: Vec<Monomial> = monomials_up_to(nv, n)
        .into_iter()
        .filter(|m| weight(m) <= n)
        .collect();
    grid.sort_by_key(|m| weight(m));

    let mut g_low = BTreeMap::new();
    let mut unit = BTreeMap::new();
    for (m, c) in g.terms() {
        if weight(m) > n {
            continue;
        }
        if m.exp(vi) < d {
            g_low.insert(m.clone(), c.clone());
        } else {
            unit.insert(m.with_exp(vi, m.exp(vi) - d), c.clone());
        }
    }
    let one = BTreeMap::from([(Monomial::one(nv), C::one())]);
    let unit_grid: Vec<Monomial> = grid
        .iter()
        .filter(|m| weight(m) <= n - d)
        .cloned()
        .collect();
    let unit_inv: BTreeMap<Monomial, C> = divide_on_grid(&one, &unit, &unit_grid)?
        .into_iter()
        .collect();
    let big_g = mul_weighted(&unit_inv, &g_low, n, &weight);
    let f_terms: BTreeMap<Monomial, C> = f
        .terms()
        .filter(|(m, _)| weight(m) <= n)
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect();

    // w(m) = f(m v^d) - sum_{k in G} G(k) w(m v^d / k); every k involves
    // x', so the recursion runs by increasing x'-degree.
    let xdeg = |m: &Monomial| m.degree() - m.exp(vi);
    let mut w_grid = unit_grid;
    w_grid.sort_by_key(|m| (xdeg(m), weight(m)));
    let g_list: Vec<(&Monomial, &C)> = big_g.iter().collect();
    let mut w: HashMap<Monomial, C> = HashMap::new();
    for m in &w_grid {
        let target = m.with_exp(vi, m.exp(vi) + d);
        let mut s = f_terms.get(&target).cloned().unwrap_or_else(C::zero);
        for (k, gk) in &g_list {
            if let Some(rest) = target.div(k) {
                if let Some(wv) = w.get(&rest) {
                    s = s - (*gk).clone() * wv.clone();
                }
            }
        }
        if !s.is_zero() {
            w.insert(m.clone(), s);
        }
    }
    let w: BTreeMap<Monomial, C> = w.into_iter().collect();

    let wg = mul_weighted(&w, &big_g, n, &weight);
    let mut rem: Vec<BTreeMap<Monomial, C>> = vec![BTreeMap::new(); d as usize];
    for m in grid.iter().filter(|m| m.exp(vi) < d) {
        let c = f_terms.get(m).cloned().unwrap_or_else(C::zero)
            - wg.get(m).cloned().unwrap_or_else(C::zero);
        if !c.is_zero() {
            rem[m.exp(vi) as usize].insert(m.without(vi), c);
        }
    }
    let q = mul_weighted(&w, &unit_inv, n - d, &weight);
    let window = (n - d) / d;
    let remainder_coeffs = rem
        .into_iter()
        .enumerate()
        .map(|(j, terms)| TruncSeries::from_map(&xv, (n - j as u32) / d, terms))
        .collect();
    Ok(WeierstrassDivision {
        var: v.to_string(),
        order: d,
        quotient: TruncSeries::from_map(&vars, window, q),
        remainder_coeffs,
        window,
    })
}

/// Weierstrass preparation `g = u p`, obtained by dividing `v^d` by `g`:
/// `v^d = q g + r` gives `u = 1/q` and `p = v^d - r`.
pub fn w_prepare<C: Scalar>(g: &TruncSeries<C>, v: &str) -> Result<WeierstrassPreparation<C>> {
    let (vi, d) = regular_order_of(g, v)?;
    let vars = g.vars();
    let lead = TruncSeries::from_terms(
        vars,
        g.bound(),
        [(Monomial::var(vars.len(), vi, d), C::one())],
    );
    let div = w_divide(&lead, g, v)?;
    let unit = div.quotient.invert_unit()?;
    let distinguished = div.remainder_coeffs.iter().map(|b| -b).collect();
    Ok(WeierstrassPreparation {
        var: v.to_string(),
        order: d,
        unit,
        distinguished,
        window: div.window,
    })
}
