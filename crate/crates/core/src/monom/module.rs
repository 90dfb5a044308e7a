use std::collections::BTreeSet;
use std::sync::Arc;

use crate::ring::{FreeModuleLayout, ModuleTerm};

use super::basis::{ConeIndex, PommaretBasis};
use super::{basis_order, MonomError};

/// Monomial submodule `U = ⊕ J^(k) e_k` given by its minimal generators.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialModule {
    layout: Arc<FreeModuleLayout>,
    generators: Vec<ModuleTerm>,
}

impl MonomialModule {
    /// Minimalizes `terms` componentwise.
    pub fn new(layout: Arc<FreeModuleLayout>, terms: Vec<ModuleTerm>) -> Result<Self, MonomError> {
        for t in &terms {
            if t.component >= layout.rank() {
                return Err(MonomError::ComponentOutOfRange {
                    component: t.component + 1,
                    rank: layout.rank(),
                });
            }
            if t.exponent.nvars() != layout.nvars() {
                return Err(MonomError::VariableCount {
                    expected: layout.nvars(),
                    found: t.exponent.nvars(),
                });
            }
        }
        let unique: BTreeSet<ModuleTerm> = terms.into_iter().collect();
        let unique: Vec<ModuleTerm> = unique.into_iter().collect();
        let mut generators: Vec<ModuleTerm> = unique
            .iter()
            .filter(|t| !unique.iter().any(|g| g != *t && g.divides(t)))
            .cloned()
            .collect();
        basis_order(&layout, &mut generators);
        Ok(MonomialModule { layout, generators })
    }

    pub fn layout(&self) -> &Arc<FreeModuleLayout> {
        &self.layout
    }

    pub fn generators(&self) -> &[ModuleTerm] {
        &self.generators
    }

    /// Membership by divisibility.
    pub fn contains(&self, t: &ModuleTerm) -> bool {
        self.generators.iter().any(|g| g.divides(t))
    }

    /// Generators of `J^(k)`.
    pub fn component_generators(&self, k: usize) -> impl Iterator<Item = &ModuleTerm> {
        self.generators.iter().filter(move |g| g.component == k)
    }

    fn max_generator_degree(&self) -> u32 {
        self.generators.iter().map(|g| g.exponent.degree()).max().unwrap_or(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum StabilityClass {
    NotQuasiStable,
    QuasiStable,
    Stable,
}

/// A minimal generator `x^α e_k` and a non-multiplicative variable `x_j`
/// such that no power `x_j^s · x^α / min(x^α)` lies in the module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityWitness {
    pub generator: ModuleTerm,
    pub variable: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    /// The weakest class over all components.
    pub class: StabilityClass,
    pub per_component: Vec<StabilityClass>,
    /// Violation of quasi-stability, present iff `class` is `NotQuasiStable`.
    pub witness: Option<StabilityWitness>,
}

/// Exponent up to which `x_j^s · x^α / min(x^α) ∈ J` is searched: the
/// maximal generator degree times the number of variables.
pub fn quasi_stability_bound(module: &MonomialModule) -> u32 {
    module.max_generator_degree().max(1) * module.layout.nvars() as u32
}

/// Classifies a monomial module by checking the defining conditions on its
/// minimal generators.
pub fn stability_class(module: &MonomialModule) -> StabilityReport {
    let bound = quasi_stability_bound(module);
    let mut per_component = vec![StabilityClass::Stable; module.layout.rank()];
    let mut witness = None;
    for g in &module.generators {
        let Some(min) = g.exponent.min_var() else {
            continue;
        };
        let base = g.exponent.with_exponent(min, g.exponent.get(min) - 1);
        for j in min + 1..module.layout.nvars() {
            let once = ModuleTerm::new(base.with_exponent(j, base.get(j) + 1), g.component);
            if module.contains(&once) {
                continue;
            }
            let powered = ModuleTerm::new(base.with_exponent(j, base.get(j) + bound), g.component);
            let class = &mut per_component[g.component];
            if module.contains(&powered) {
                *class = (*class).min(StabilityClass::QuasiStable);
            } else {
                *class = StabilityClass::NotQuasiStable;
                if witness.is_none() {
                    witness = Some(StabilityWitness {
                        generator: g.clone(),
                        variable: j,
                    });
                }
            }
        }
    }
    let class = per_component.iter().copied().min().unwrap_or(StabilityClass::Stable);
    StabilityReport {
        class,
        per_component,
        witness,
    }
}

/// Completes the minimal generators to the Pommaret basis by adding
/// non-multiplicative prolongations that are not yet covered, in increasing
/// degree. Refuses modules that are not quasi-stable, since the loop would
/// not terminate.
pub fn pommaret_completion(module: &MonomialModule) -> Result<PommaretBasis, MonomError> {
    let report = stability_class(module);
    if let Some(w) = report.witness {
        return Err(MonomError::NotQuasiStable {
            generator: w.generator,
            variable: w.variable,
        });
    }
    let layout = module.layout.clone();
    let nvars = layout.nvars();
    let mut basis: Vec<ModuleTerm> = module.generators.clone();
    let mut index = ConeIndex::default();
    for (i, t) in basis.iter().enumerate() {
        index.insert(t, i);
    }
    // candidates keyed by degree, ties by print order
    let mut queue: BTreeSet<(i64, ModuleTerm)> = BTreeSet::new();
    let push_prolongations = |t: &ModuleTerm, queue: &mut BTreeSet<(i64, ModuleTerm)>| {
        for j in t.exponent.mult_bound() + 1..nvars {
            let p = ModuleTerm::new(t.exponent.times_var(j), t.component);
            queue.insert((layout.term_degree(&p), p));
        }
    };
    for t in &basis {
        push_prolongations(t, &mut queue);
    }
    while let Some((_, candidate)) = queue.pop_first() {
        if index.divisor(&candidate).is_some() {
            continue;
        }
        index.insert(&candidate, basis.len());
        push_prolongations(&candidate, &mut queue);
        basis.push(candidate);
    }
    basis_order(&layout, &mut basis);
    debug_assert!(super::is_pommaret_basis(&layout, &basis));
    Ok(PommaretBasis::trusted(layout, basis))
}
