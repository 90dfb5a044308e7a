//! Monomial modules, Pommaret bases and the invariants they expose.

mod basis;
mod invariants;
mod module;

pub use basis::{is_pommaret_basis, pommaret_defect, ConeHit, PommaretBasis, PommaretDefect};
pub use invariants::{
    basis_invariants, colon_saturation_basis, complement_count, hilbert_function, rho, saturation,
    truncate_basis, InvariantReport,
};
pub use module::{
    pommaret_completion, quasi_stability_bound, stability_class, MonomialModule, StabilityClass,
    StabilityReport, StabilityWitness,
};

use std::cmp::Ordering;

use thiserror::Error;

use crate::ring::{FreeModuleLayout, ModuleTerm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomError {
    #[error("not quasi-stable: no power of x{variable} times {generator:?}/min lies in the module")]
    NotQuasiStable { generator: ModuleTerm, variable: usize },
    #[error("not a Pommaret basis: {0}")]
    NotPommaretBasis(String),
    #[error("operation requires an ideal (rank one, weight zero)")]
    NotAnIdeal,
    #[error("term has {found} variables, expected {expected}")]
    VariableCount { expected: usize, found: usize },
    #[error("component e{component} out of range for rank {rank}")]
    ComponentOutOfRange { component: usize, rank: usize },
}

/// Indices of the Pommaret multiplicative variables `{x_0, …, min(t)}`.
pub fn multiplicative_variables(t: &ModuleTerm) -> std::ops::Range<usize> {
    0..t.exponent.mult_bound() + 1
}

pub fn nonmultiplicative_variables(t: &ModuleTerm) -> std::ops::Range<usize> {
    t.exponent.mult_bound() + 1..t.exponent.nvars()
}

/// Canonical order for computed bases: component, then degree, then larger
/// terms in degrevlex first.
pub(crate) fn basis_order(layout: &FreeModuleLayout, terms: &mut [ModuleTerm]) {
    terms.sort_by(|a, b| compare_basis_terms(layout, a, b));
}

fn compare_basis_terms(layout: &FreeModuleLayout, a: &ModuleTerm, b: &ModuleTerm) -> Ordering {
    a.component
        .cmp(&b.component)
        .then_with(|| layout.term_degree(a).cmp(&layout.term_degree(b)))
        .then_with(|| b.exponent.cmp_degrevlex(&a.exponent))
}
