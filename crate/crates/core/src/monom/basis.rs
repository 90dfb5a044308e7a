use std::collections::HashMap;
use std::sync::Arc;

use crate::ring::{ExponentVector, FreeModuleLayout, ModuleTerm};

use super::MonomError;

/// Term `τ` of a Pommaret basis containing a given term `t`, together with
/// the multiplicative multiplier `t / τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeHit {
    pub index: usize,
    pub multiplier: ExponentVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct ConeKey {
    component: usize,
    var: usize,
    upper: Vec<u32>,
}

/// Lookup structure for involutive (Pommaret) divisors.
///
/// A term `t = x^β e_k` lies in the cone of `τ = x^α e_k` with
/// `min(τ) = x_i` iff `α` agrees with `β` above `i`, `α_i ≤ β_i` and `α`
/// vanishes below `i`. So `τ` is determined by `(k, i, β_{i+1..n})` and the
/// exponent `α_i`.
#[derive(Clone, Debug, Default)]
pub(crate) struct ConeIndex {
    by_key: HashMap<ConeKey, Vec<(u32, usize)>>,
    constants: HashMap<usize, usize>,
}

impl ConeIndex {
    pub(crate) fn insert(&mut self, t: &ModuleTerm, index: usize) {
        match t.exponent.min_var() {
            None => {
                self.constants.insert(t.component, index);
            }
            Some(i) => {
                let key = ConeKey {
                    component: t.component,
                    var: i,
                    upper: t.exponent.as_slice()[i + 1..].to_vec(),
                };
                self.by_key.entry(key).or_default().push((t.exponent.get(i), index));
            }
        }
    }

    pub(crate) fn divisor(&self, t: &ModuleTerm) -> Option<ConeHit> {
        if let Some(&index) = self.constants.get(&t.component) {
            return Some(ConeHit {
                index,
                multiplier: t.exponent.clone(),
            });
        }
        let beta = t.exponent.as_slice();
        for i in 0..beta.len() {
            if beta[i] == 0 {
                continue;
            }
            let key = ConeKey {
                component: t.component,
                var: i,
                upper: beta[i + 1..].to_vec(),
            };
            if let Some(list) = self.by_key.get(&key) {
                if let Some(&(a, index)) = list.iter().find(|&&(a, _)| a <= beta[i]) {
                    let mut mult = vec![0; beta.len()];
                    mult[..i].copy_from_slice(&beta[..i]);
                    mult[i] = beta[i] - a;
                    return Some(ConeHit {
                        index,
                        multiplier: ExponentVector::new(mult),
                    });
                }
            }
        }
        None
    }
}

/// Why a set of terms fails to be a Pommaret basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PommaretDefect {
    /// The cones of two terms (given by position) intersect.
    Overlap(usize, usize),
    /// The prolongation of a term by a non-multiplicative variable is not
    /// covered by any cone.
    Uncovered { index: usize, var: usize },
    ComponentOutOfRange(usize),
}

/// `true` iff the Pommaret cones of `a` and `b` intersect.
pub(crate) fn cones_intersect(a: &ModuleTerm, b: &ModuleTerm) -> bool {
    if a.component != b.component {
        return false;
    }
    let (a, b) = if a.exponent.mult_bound() <= b.exponent.mult_bound() {
        (&a.exponent, &b.exponent)
    } else {
        (&b.exponent, &a.exponent)
    };
    let (ia, ib) = (a.mult_bound(), b.mult_bound());
    let upper_agree = (ib + 1..a.nvars()).all(|l| a.get(l) == b.get(l));
    upper_agree && (ia == ib || a.get(ib) >= b.get(ib))
}

/// Checks the Pommaret basis property structurally: cones pairwise disjoint,
/// and every non-multiplicative prolongation covered by some cone.
pub fn pommaret_defect(layout: &FreeModuleLayout, terms: &[ModuleTerm]) -> Option<PommaretDefect> {
    if let Some(i) = terms.iter().position(|t| t.component >= layout.rank()) {
        return Some(PommaretDefect::ComponentOutOfRange(i));
    }
    for i in 0..terms.len() {
        for j in i + 1..terms.len() {
            if cones_intersect(&terms[i], &terms[j]) {
                return Some(PommaretDefect::Overlap(i, j));
            }
        }
    }
    let mut index = ConeIndex::default();
    for (i, t) in terms.iter().enumerate() {
        index.insert(t, i);
    }
    for (i, t) in terms.iter().enumerate() {
        for var in t.exponent.mult_bound() + 1..layout.nvars() {
            let prolongation = ModuleTerm::new(t.exponent.times_var(var), t.component);
            if index.divisor(&prolongation).is_none() {
                return Some(PommaretDefect::Uncovered { index: i, var });
            }
        }
    }
    None
}

/// `true` iff `terms` is a Pommaret basis of the module it generates.
pub fn is_pommaret_basis(layout: &FreeModuleLayout, terms: &[ModuleTerm]) -> bool {
    pommaret_defect(layout, terms).is_none()
}

/// A certified Pommaret basis `P(U)` of a quasi-stable monomial module.
///
/// Values only exist once the disjoint-cone property has been checked, so
/// every `PommaretBasis` is certified. Term order is significant: it fixes
/// the numbering of marked elements built over the basis.
#[derive(Clone, Debug)]
pub struct PommaretBasis {
    layout: Arc<FreeModuleLayout>,
    terms: Vec<ModuleTerm>,
    index: ConeIndex,
    positions: HashMap<ModuleTerm, usize>,
}

impl PartialEq for PommaretBasis {
    fn eq(&self, other: &Self) -> bool {
        self.layout == other.layout && self.terms == other.terms
    }
}

impl PommaretBasis {
    pub fn new(layout: Arc<FreeModuleLayout>, terms: Vec<ModuleTerm>) -> Result<Self, MonomError> {
        for t in &terms {
            if t.exponent.nvars() != layout.nvars() {
                return Err(MonomError::VariableCount {
                    expected: layout.nvars(),
                    found: t.exponent.nvars(),
                });
            }
        }
        if let Some(defect) = pommaret_defect(&layout, &terms) {
            return Err(MonomError::NotPommaretBasis(describe(&layout, &terms, defect)));
        }
        Ok(Self::trusted(layout, terms))
    }

    pub(crate) fn trusted(layout: Arc<FreeModuleLayout>, terms: Vec<ModuleTerm>) -> Self {
        let mut index = ConeIndex::default();
        let mut positions = HashMap::with_capacity(terms.len());
        for (i, t) in terms.iter().enumerate() {
            index.insert(t, i);
            positions.insert(t.clone(), i);
        }
        PommaretBasis {
            layout,
            terms,
            index,
            positions,
        }
    }

    pub fn layout(&self) -> &Arc<FreeModuleLayout> {
        &self.layout
    }

    pub fn terms(&self) -> &[ModuleTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(&self, i: usize) -> &ModuleTerm {
        &self.terms[i]
    }

    pub fn position(&self, t: &ModuleTerm) -> Option<usize> {
        self.positions.get(t).copied()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.layout.term_degree(&self.terms[i])
    }

    /// The unique basis term whose Pommaret cone contains `t`, or `None`
    /// when `t ∉ U`.
    pub fn cone_divisor(&self, t: &ModuleTerm) -> Option<ConeHit> {
        self.index.divisor(t)
    }

    pub fn contains(&self, t: &ModuleTerm) -> bool {
        self.cone_divisor(t).is_some()
    }

    /// All terms of `U` of degree `s`.
    pub fn slice(&self, s: i64) -> Vec<ModuleTerm> {
        self.all_terms_of_degree(s).into_iter().filter(|t| self.contains(t)).collect()
    }

    /// The complement `N(U)_s`, in print order.
    pub fn complement_slice(&self, s: i64) -> Vec<ModuleTerm> {
        self.all_terms_of_degree(s).into_iter().filter(|t| !self.contains(t)).collect()
    }

    fn all_terms_of_degree(&self, s: i64) -> Vec<ModuleTerm> {
        let n = self.layout.n();
        let mut out = Vec::new();
        for (k, &w) in self.layout.weights().iter().enumerate() {
            if s - w < 0 {
                continue;
            }
            let mut slice = crate::ring::monomials_of_degree(self.layout.nvars(), n, (s - w) as u32);
            slice.sort_by(|a, b| b.cmp_degrevlex(a));
            out.extend(slice.into_iter().map(|e| ModuleTerm::new(e, k)));
        }
        out
    }
}

fn describe(layout: &FreeModuleLayout, terms: &[ModuleTerm], defect: PommaretDefect) -> String {
    let rank = layout.rank();
    match defect {
        PommaretDefect::Overlap(i, j) => format!(
            "the cones of {} and {} intersect",
            terms[i].display(rank),
            terms[j].display(rank)
        ),
        PommaretDefect::Uncovered { index, var } => format!(
            "x{var}*{} is not in any cone",
            terms[index].display(rank)
        ),
        PommaretDefect::ComponentOutOfRange(i) => {
            format!("term {} lies outside the free module", terms[i].display(rank))
        }
    }
}
