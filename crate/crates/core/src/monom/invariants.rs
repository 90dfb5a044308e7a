use num_integer::binomial;

use crate::ring::{monomials_of_degree, ModuleTerm};

use super::basis::PommaretBasis;
use super::module::{pommaret_completion, MonomialModule};
use super::{basis_order, MonomError};

/// Invariants read off a Pommaret basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    /// Maximal degree of a basis term.
    pub regularity: i64,
    /// Maximal degree of a basis term divisible by `x_0`; zero when there is
    /// none, in which case `saturated` is set.
    pub satiety: i64,
    pub saturated: bool,
    pub projective_dimension: usize,
    /// Minimal index of `min(τ)` over the basis.
    pub d_min: usize,
}

pub fn basis_invariants(b: &PommaretBasis) -> InvariantReport {
    let layout = b.layout();
    let regularity = (0..b.len()).map(|i| b.degree(i)).max().unwrap_or(0);
    let satiety = (0..b.len())
        .filter(|&i| b.term(i).exponent.get(0) > 0)
        .map(|i| b.degree(i))
        .max();
    let d_min = b.terms().iter().map(|t| t.exponent.mult_bound()).min().unwrap_or(layout.n());
    InvariantReport {
        regularity,
        satiety: satiety.unwrap_or(0),
        saturated: satiety.is_none(),
        projective_dimension: layout.n() - d_min,
        d_min,
    }
}

/// Weak Pommaret basis of `J : (x_n, …, x_j)^∞`: basis terms with minimal
/// variable `x_j` lose their `x_j`-power, terms with larger minimal
/// variable are kept, the rest are dropped. The constant term counts as
/// having minimal variable `x_n`.
pub fn colon_saturation_basis(b: &PommaretBasis, j: usize) -> Vec<ModuleTerm> {
    let mut out = Vec::new();
    for t in b.terms() {
        let min = t.exponent.mult_bound();
        if min == j {
            let e = t.exponent.with_exponent(j, 0);
            out.push(ModuleTerm::new(e, t.component));
        } else if min > j {
            out.push(t.clone());
        }
    }
    out
}

/// Pommaret basis of the saturation `J : (x_0, …, x_n)^∞`.
pub fn saturation(b: &PommaretBasis) -> Result<PommaretBasis, MonomError> {
    let weak = colon_saturation_basis(b, 0);
    pommaret_completion(&MonomialModule::new(b.layout().clone(), weak)?)
}

/// Pommaret basis of the truncation `U_{≥m}`: basis terms of degree above
/// `m`, together with the degree-`m` part of every cone whose generator has
/// degree at most `m`. The result is certified before it is returned.
pub fn truncate_basis(b: &PommaretBasis, m: i64) -> Result<PommaretBasis, MonomError> {
    let layout = b.layout().clone();
    let mut terms = Vec::new();
    for (i, t) in b.terms().iter().enumerate() {
        let d = b.degree(i);
        if d > m {
            terms.push(t.clone());
        } else {
            let mults = monomials_of_degree(layout.nvars(), t.exponent.mult_bound(), (m - d) as u32);
            terms.extend(mults.iter().map(|x| t.times(x)));
        }
    }
    basis_order(&layout, &mut terms);
    PommaretBasis::new(layout, terms)
}

/// `ρ_i`: maximal degree of a basis term involving `x_i`, or zero.
pub fn rho(b: &PommaretBasis, i: usize) -> i64 {
    (0..b.len())
        .filter(|&k| b.term(k).exponent.get(i) > 0)
        .map(|k| b.degree(k))
        .max()
        .unwrap_or(0)
}

/// `h_U(s)`, counted cone by cone.
pub fn hilbert_function(b: &PommaretBasis, s: i64) -> u64 {
    (0..b.len())
        .filter(|&k| b.degree(k) <= s)
        .map(|k| {
            let i = b.term(k).exponent.mult_bound() as u64;
            binomial((s - b.degree(k)) as u64 + i, i)
        })
        .sum()
}

/// `|N(U)_s|`.
pub fn complement_count(b: &PommaretBasis, s: i64) -> u64 {
    let n = b.layout().n() as u64;
    let total: u64 = b
        .layout()
        .weights()
        .iter()
        .filter(|&&w| w <= s)
        .map(|&w| binomial((s - w) as u64 + n, n))
        .sum();
    total - hilbert_function(b, s)
}
