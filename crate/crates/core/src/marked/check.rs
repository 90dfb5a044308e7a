use rayon::prelude::*;

use crate::monom::basis_invariants;
use crate::ring::{Coefficient, ModuleElement};

use super::{reduce_full, MarkedError, MarkedSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisMode {
    Full,
    /// Only prolongations of degree at most `s`.
    UpToDegree(i64),
}

/// A prolongation `x_i · f_k` with non-zero normal form.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample<C> {
    pub element: usize,
    pub variable: usize,
    pub remainder: ModuleElement<C>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum BasisVerdict<C> {
    Basis,
    NotBasis(Counterexample<C>),
    /// Every prolongation up to `checked` reduced to zero, but degrees up to
    /// `required` are needed for a decision.
    Inconclusive { checked: i64, required: i64 },
}

impl<C> BasisVerdict<C> {
    pub fn is_basis(&self) -> bool {
        matches!(self, BasisVerdict::Basis)
    }
}

/// Tests whether every non-multiplicative prolongation `x_i f_k` reduces to
/// zero. Prolongations are independent and are reduced in parallel; the
/// reported counterexample is the first failing one in `(k, i)` order.
pub fn is_marked_basis<C: Coefficient>(
    g: &MarkedSet<C>,
    mode: BasisMode,
) -> Result<BasisVerdict<C>, MarkedError> {
    let required = basis_invariants(g.basis()).regularity + 1;
    let limit = match mode {
        BasisMode::Full => None,
        BasisMode::UpToDegree(s) if s >= required => None,
        BasisMode::UpToDegree(s) => Some(s),
    };
    if limit.is_none() {
        if let Some(v) = g.certified() {
            if v {
                return Ok(BasisVerdict::Basis);
            }
        }
    }
    let pairs: Vec<(usize, usize)> = g
        .prolongations()
        .into_iter()
        .filter(|&(k, _)| limit.is_none_or(|s| g.element(k).degree() < s))
        .collect();
    let failure = pairs.par_iter().find_map_first(|&(k, i)| {
        match reduce_full(&g.prolongation(k, i), g) {
            Ok(r) if r.remainder.is_zero() => None,
            Ok(r) => Some(Ok(Counterexample {
                element: k,
                variable: i,
                remainder: r.remainder,
            })),
            Err(e) => Some(Err(e)),
        }
    });
    let verdict = match failure {
        Some(Err(e)) => return Err(e),
        Some(Ok(c)) => BasisVerdict::NotBasis(c),
        None => match limit {
            None => BasisVerdict::Basis,
            Some(s) => BasisVerdict::Inconclusive { checked: s, required },
        },
    };
    match (&verdict, limit) {
        (BasisVerdict::Basis, _) => g.record_verdict(true),
        (BasisVerdict::NotBasis(_), _) => g.record_verdict(false),
        _ => {}
    }
    Ok(verdict)
}

/// Membership in `⟨G⟩` for a marked basis `G`: `f` belongs iff its normal
/// form vanishes. Runs the basis test first when no verdict is cached.
pub fn contains<C: Coefficient>(g: &MarkedSet<C>, f: &ModuleElement<C>) -> Result<bool, MarkedError> {
    let certified = match g.certified() {
        Some(v) => v,
        None => is_marked_basis(g, BasisMode::Full)?.is_basis(),
    };
    if !certified {
        return Err(MarkedError::NotABasis);
    }
    Ok(reduce_full(f, g)?.remainder.is_zero())
}
