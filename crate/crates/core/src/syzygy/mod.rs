//! Syzygies of marked bases and the free resolutions they induce.

mod minimize;
mod resolution;

pub use minimize::minimize_resolution;
pub use resolution::{
    free_resolution, invariant_bounds, predicted_ranks, verify_complex, BoundsReport, FreeResolution,
    RankTable, ResolutionLevel,
};

use std::sync::Arc;

use thiserror::Error;

use crate::marked::{is_marked_basis, new_marked_set, reduce_full, BasisMode, MarkedElement, MarkedError, MarkedSet};
use crate::monom::{MonomError, PommaretBasis};
use crate::ring::{Coefficient, ExponentVector, FreeModuleLayout, ModuleElement, ModuleTerm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyzygyError {
    #[error("the marked set is not a marked basis")]
    NotABasis,
    #[error("minimization needs constant coefficients")]
    ParametricCoefficients,
    #[error(transparent)]
    Marked(#[from] MarkedError),
    #[error(transparent)]
    Monom(#[from] MonomError),
    #[error("internal error: {0}")]
    Internal(String),
}

/// The marked basis `G_Syz` of the syzygy module of a marked basis `G`.
#[derive(Clone, Debug, PartialEq)]
pub struct SyzygyBasis<C> {
    /// `(k, i)` for the syzygy `S_{k;i}` with head `x_i e_k`, in order.
    pub labels: Vec<(usize, usize)>,
    pub set: MarkedSet<C>,
}

/// Builds `S_{k;i} = x_i e_k - Σ_l P_l e_l` from the reduction of every
/// non-multiplicative prolongation `x_i f_k`, in `(k, i)` order. The free
/// module of the result has weights equal to the degrees of `G`.
pub fn syzygy_marked_basis<C: Coefficient>(g: &MarkedSet<C>) -> Result<Option<SyzygyBasis<C>>, SyzygyError> {
    if !is_marked_basis(g, BasisMode::Full)?.is_basis() {
        return Err(SyzygyError::NotABasis);
    }
    let labels = g.prolongations();
    if labels.is_empty() {
        return Ok(None);
    }
    let nvars = g.layout().nvars();
    let weights = g.elements().iter().map(|e| e.degree()).collect();
    let layout = Arc::new(FreeModuleLayout::new(nvars, weights));
    let mut elements = Vec::with_capacity(labels.len());
    let mut heads = Vec::with_capacity(labels.len());
    for &(k, i) in &labels {
        let rep = reduce_full(&g.prolongation(k, i), g)?;
        if !rep.remainder.is_zero() {
            return Err(SyzygyError::NotABasis);
        }
        let head = ModuleTerm::new(ExponentVector::var(nvars, i), k);
        let mut terms = vec![(head.clone(), C::one())];
        for s in rep.summands {
            terms.push((ModuleTerm::new(s.multiplier, s.element), s.coefficient.neg()));
        }
        let body = ModuleElement::from_terms(layout.clone(), terms).map_err(MarkedError::from)?;
        elements.push(MarkedElement::new(body, head.clone())?);
        heads.push(head);
    }
    let basis = PommaretBasis::new(layout, heads)?;
    let set = new_marked_set(basis, elements).map_err(|e| match e {
        MarkedError::TailTermInU { .. } => SyzygyError::Internal(format!("syzygy tail outside N(U): {e}")),
        e => e.into(),
    })?;
    if !is_marked_basis(&set, BasisMode::Full)?.is_basis() {
        return Err(SyzygyError::Internal("syzygies do not form a marked basis".into()));
    }
    Ok(Some(SyzygyBasis { labels, set }))
}
