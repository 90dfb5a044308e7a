use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::ring::{Coefficient, ExponentVector, ModuleElement, ModuleTerm};

use super::{MarkedError, MarkedSet};

/// One step `λ · x^δ · f_k` of a reduction.
#[derive(Clone, Debug, PartialEq)]
pub struct Summand<C> {
    pub coefficient: C,
    pub multiplier: ExponentVector,
    /// Position of `f_k` in the marked set.
    pub element: usize,
    pub head: ModuleTerm,
}

/// `h = Σ λ x^δ f_k + remainder` with remainder supported in `N(U)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation<C> {
    pub summands: Vec<Summand<C>>,
    pub remainder: ModuleElement<C>,
}

impl<C: Coefficient> Representation<C> {
    /// Recomputes `Σ λ x^δ f_k + remainder`.
    pub fn evaluate(&self, g: &MarkedSet<C>) -> Result<ModuleElement<C>, MarkedError> {
        let mut out = self.remainder.clone();
        for s in &self.summands {
            out.add_scaled(&s.coefficient, &s.multiplier, g.element(s.element).body())?;
        }
        Ok(out)
    }

    /// Collects the summands as polynomial coefficients, one per element:
    /// `h - remainder = Σ_k P_k f_k`.
    pub fn coefficient_polys(&self, len: usize) -> Vec<Vec<(ExponentVector, C)>> {
        let mut out = vec![Vec::new(); len];
        for s in &self.summands {
            out[s.element].push((s.multiplier.clone(), s.coefficient.clone()));
        }
        out
    }
}

/// Order in which reducible terms are processed: lex-greatest multiplier
/// first, ties broken by element position.
#[derive(Clone, Debug, PartialEq, Eq)]
struct ReductionKey {
    multiplier: ExponentVector,
    element: usize,
}

impl Ord for ReductionKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.multiplier
            .cmp_lex(&other.multiplier)
            .then_with(|| self.element.cmp(&other.element))
    }
}

impl PartialOrd for ReductionKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Working state: terms of `U` keyed by their unique reducer, terms of
/// `N(U)` collected in the remainder.
struct State<'a, C> {
    g: &'a MarkedSet<C>,
    reducible: BTreeMap<ReductionKey, (ModuleTerm, C)>,
    remainder: BTreeMap<ModuleTerm, C>,
}

impl<'a, C: Coefficient> State<'a, C> {
    fn new(g: &'a MarkedSet<C>, h: &ModuleElement<C>) -> Self {
        let mut state = State {
            g,
            reducible: BTreeMap::new(),
            remainder: BTreeMap::new(),
        };
        for (t, c) in h.terms() {
            state.add(t.clone(), c.clone());
        }
        state
    }

    fn add(&mut self, t: ModuleTerm, c: C) {
        match self.g.basis().cone_divisor(&t) {
            Some(hit) => {
                let key = ReductionKey {
                    multiplier: hit.multiplier,
                    element: hit.index,
                };
                match self.reducible.get_mut(&key) {
                    Some((_, d)) => {
                        d.add_assign(&c);
                        if d.is_zero() {
                            self.reducible.remove(&key);
                        }
                    }
                    None => {
                        self.reducible.insert(key, (t, c));
                    }
                }
            }
            None => match self.remainder.get_mut(&t) {
                Some(d) => {
                    d.add_assign(&c);
                    if d.is_zero() {
                        self.remainder.remove(&t);
                    }
                }
                None => {
                    self.remainder.insert(t, c);
                }
            },
        }
    }

    /// Subtracts `c · x^δ · f_k`, which cancels the term under `key`.
    fn step(&mut self, key: ReductionKey, c: C) -> Summand<C> {
        let f = self.g.element(key.element);
        for (t, d) in f.tail() {
            self.add(t.times(&key.multiplier), c.mul(d).neg());
        }
        Summand {
            coefficient: c,
            multiplier: key.multiplier,
            element: key.element,
            head: f.head().clone(),
        }
    }

    fn finish(self, summands: Vec<Summand<C>>, h: &ModuleElement<C>) -> Representation<C> {
        let remainder = ModuleElement::from_terms(h.layout().clone(), self.remainder)
            .expect("remainder of a homogeneous element is homogeneous");
        Representation { summands, remainder }
    }
}

/// Complete marked reduction of `h`. Always reduces the term whose reducer
/// has the lex-greatest multiplier; the multipliers used then strictly
/// decrease, which is checked at every step.
pub fn reduce_full<C: Coefficient>(
    h: &ModuleElement<C>,
    g: &MarkedSet<C>,
) -> Result<Representation<C>, MarkedError> {
    if h.layout() != g.layout() {
        return Err(crate::ring::RingError::LayoutMismatch.into());
    }
    let mut state = State::new(g, h);
    let mut summands = Vec::new();
    let mut previous: Option<ReductionKey> = None;
    while let Some((key, (_, c))) = state.reducible.pop_last() {
        if previous.as_ref().is_some_and(|p| key >= *p) {
            return Err(MarkedError::InternalNonTermination);
        }
        previous = Some(key.clone());
        summands.push(state.step(key, c));
    }
    Ok(state.finish(summands, h))
}

/// Marked reduction where `choose(k)` picks which of the `k` currently
/// reducible terms (in increasing reducer order) to eliminate next. Gives up
/// after `max_steps` steps.
pub fn reduce_with_strategy<C: Coefficient>(
    h: &ModuleElement<C>,
    g: &MarkedSet<C>,
    mut choose: impl FnMut(usize) -> usize,
    max_steps: usize,
) -> Result<Representation<C>, MarkedError> {
    if h.layout() != g.layout() {
        return Err(crate::ring::RingError::LayoutMismatch.into());
    }
    let mut state = State::new(g, h);
    let mut summands = Vec::new();
    while !state.reducible.is_empty() {
        if summands.len() >= max_steps {
            return Err(MarkedError::InternalNonTermination);
        }
        let pick = choose(state.reducible.len()) % state.reducible.len();
        let key = state.reducible.keys().nth(pick).cloned().unwrap();
        let (_, c) = state.reducible.remove(&key).unwrap();
        summands.push(state.step(key, c));
    }
    Ok(state.finish(summands, h))
}
