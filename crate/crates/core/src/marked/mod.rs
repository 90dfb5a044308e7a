//! Marked sets over a Pommaret basis, marked reduction and the marked-basis
//! test.

mod check;
mod reduce;

pub use check::{contains, is_marked_basis, BasisMode, BasisVerdict, Counterexample};
pub use reduce::{reduce_full, reduce_with_strategy, Representation, Summand};

use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::monom::{MonomError, PommaretBasis};
use crate::ring::{Coefficient, ExponentVector, FreeModuleLayout, ModuleElement, ModuleTerm, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MarkedError {
    #[error("heads do not match the Pommaret basis: {0}")]
    HeadMismatch(String),
    #[error("head {0} does not have coefficient one")]
    HeadCoefficientNotOne(String),
    #[error("tail term {term} of element {element} lies in the monomial module")]
    TailTermInU { element: usize, term: String },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Monom(#[from] MonomError),
    #[error("reduction failed to terminate")]
    InternalNonTermination,
    #[error("the marked set is not a marked basis")]
    NotABasis,
}

/// A homogeneous element with a distinguished head term of coefficient one.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkedElement<C> {
    body: ModuleElement<C>,
    head: ModuleTerm,
}

impl<C: Coefficient> MarkedElement<C> {
    pub fn new(body: ModuleElement<C>, head: ModuleTerm) -> Result<Self, MarkedError> {
        match body.coefficient(&head) {
            Some(c) if c.is_one() => Ok(MarkedElement { body, head }),
            _ => Err(MarkedError::HeadCoefficientNotOne(head.display(body.layout().rank()))),
        }
    }

    pub fn body(&self) -> &ModuleElement<C> {
        &self.body
    }

    pub fn head(&self) -> &ModuleTerm {
        &self.head
    }

    pub fn degree(&self) -> i64 {
        self.body.layout().term_degree(&self.head)
    }

    pub fn tail(&self) -> impl Iterator<Item = (&ModuleTerm, &C)> {
        self.body.terms().filter(move |(t, _)| **t != self.head)
    }

    /// Writes the element as `[head] + tail`.
    pub fn display(&self) -> String {
        let mut s = String::new();
        self.body.write_with_head(Some(&self.head), &mut s).unwrap();
        s
    }
}

/// A `P(U)`-marked set: one marked element per term of the Pommaret basis,
/// in basis order, with tails supported in `N(U)`.
#[derive(Debug)]
pub struct MarkedSet<C> {
    basis: PommaretBasis,
    elements: Vec<MarkedElement<C>>,
    verdict: OnceLock<bool>,
}

impl<C: Clone> Clone for MarkedSet<C> {
    fn clone(&self) -> Self {
        MarkedSet {
            basis: self.basis.clone(),
            elements: self.elements.clone(),
            verdict: self.verdict.clone(),
        }
    }
}

impl<C: PartialEq> PartialEq for MarkedSet<C> {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis && self.elements == other.elements
    }
}

/// Validates `elems` against `basis` and arranges them in basis order.
pub fn new_marked_set<C: Coefficient>(
    basis: PommaretBasis,
    elems: Vec<MarkedElement<C>>,
) -> Result<MarkedSet<C>, MarkedError> {
    let rank = basis.layout().rank();
    let mut slots: Vec<Option<MarkedElement<C>>> = vec![None; basis.len()];
    for e in elems {
        if e.body.layout() != basis.layout() {
            return Err(RingError::LayoutMismatch.into());
        }
        let Some(pos) = basis.position(&e.head) else {
            return Err(MarkedError::HeadMismatch(format!(
                "{} is not a basis term",
                e.head.display(rank)
            )));
        };
        if slots[pos].is_some() {
            return Err(MarkedError::HeadMismatch(format!(
                "{} is marked twice",
                e.head.display(rank)
            )));
        }
        e.body.canonicalize()?;
        if let Some((t, _)) = e.tail().find(|(t, _)| basis.contains(t)) {
            return Err(MarkedError::TailTermInU {
                element: pos,
                term: t.display(rank),
            });
        }
        slots[pos] = Some(e);
    }
    let mut elements = Vec::with_capacity(slots.len());
    for (i, slot) in slots.into_iter().enumerate() {
        match slot {
            Some(e) => elements.push(e),
            None => {
                return Err(MarkedError::HeadMismatch(format!(
                    "no element marked by {}",
                    basis.term(i).display(rank)
                )))
            }
        }
    }
    Ok(MarkedSet {
        basis,
        elements,
        verdict: OnceLock::new(),
    })
}

impl<C: Coefficient> MarkedSet<C> {
    /// Builds the marked set whose heads, in the given order, form the
    /// Pommaret basis.
    pub fn from_elements(
        layout: Arc<FreeModuleLayout>,
        elems: Vec<MarkedElement<C>>,
    ) -> Result<Self, MarkedError> {
        let heads = elems.iter().map(|e| e.head.clone()).collect();
        let basis = PommaretBasis::new(layout, heads)?;
        new_marked_set(basis, elems)
    }

    /// The basis terms themselves, which always form a marked basis.
    pub fn monomial(basis: PommaretBasis) -> Self {
        let layout = basis.layout().clone();
        let elements = basis
            .terms()
            .iter()
            .map(|t| MarkedElement {
                body: ModuleElement::monomial(layout.clone(), t.clone(), C::one()),
                head: t.clone(),
            })
            .collect();
        MarkedSet {
            basis,
            elements,
            verdict: OnceLock::new(),
        }
    }

    pub fn basis(&self) -> &PommaretBasis {
        &self.basis
    }

    pub fn layout(&self) -> &Arc<FreeModuleLayout> {
        self.basis.layout()
    }

    pub fn elements(&self) -> &[MarkedElement<C>] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &MarkedElement<C> {
        &self.elements[i]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Cached result of a complete basis test, if one has run.
    pub fn certified(&self) -> Option<bool> {
        self.verdict.get().copied()
    }

    pub(crate) fn record_verdict(&self, is_basis: bool) {
        let _ = self.verdict.set(is_basis);
    }

    /// Applies `f` to every coefficient, keeping the heads.
    pub fn try_map_coefficients<D: Coefficient, E>(
        &self,
        mut f: impl FnMut(&C) -> Result<D, E>,
    ) -> Result<Result<MarkedSet<D>, MarkedError>, E> {
        let mut elems = Vec::with_capacity(self.elements.len());
        for e in &self.elements {
            let body = e.body.try_map_coefficients(&mut f)?;
            elems.push(MarkedElement {
                body,
                head: e.head.clone(),
            });
        }
        Ok(new_marked_set(self.basis.clone(), elems))
    }

    /// `(element, variable)` pairs of all non-multiplicative prolongations.
    pub fn prolongations(&self) -> Vec<(usize, usize)> {
        let nvars = self.layout().nvars();
        (0..self.len())
            .flat_map(|k| {
                let bound = self.basis.term(k).exponent.mult_bound();
                (bound + 1..nvars).map(move |i| (k, i))
            })
            .collect()
    }

    /// `x_i · f_k`.
    pub fn prolongation(&self, k: usize, i: usize) -> ModuleElement<C> {
        self.elements[k].body.mul_term(&ExponentVector::var(self.layout().nvars(), i))
    }

    pub fn display(&self) -> String {
        let items: Vec<String> = self.elements.iter().map(|e| e.display()).collect();
        format!("{{ {} }}", items.join(", "))
    }
}
