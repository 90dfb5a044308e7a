//! Generic marked sets and the equations of the marked family.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::marked::{
    is_marked_basis, new_marked_set, reduce_full, BasisMode, MarkedElement, MarkedError, MarkedSet, Representation,
};
use crate::monom::{basis_invariants, rho, truncate_basis, MonomError, PommaretBasis};
use crate::ring::{Coefficient, ModuleElement, ModuleTerm, Param, ParamPoly, Rational, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Marked(#[from] MarkedError),
    #[error(transparent)]
    Monom(#[from] MonomError),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("structure violated: {0}")]
    StructureViolated(String),
}

/// Where a parameter sits: `C_{h,t}` is minus the coefficient of `tail` in
/// the element marked by basis term `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSlot {
    pub param: Param,
    pub head: ModuleTerm,
    pub tail: ModuleTerm,
}

/// The marked set `𝒢` over `ℚ[C]` with one free parameter per pair of a
/// basis term and a complement term of the same degree.
#[derive(Clone, Debug, PartialEq)]
pub struct GenericMarkedSet {
    set: MarkedSet<ParamPoly>,
    slots: Vec<ParamSlot>,
}

impl GenericMarkedSet {
    pub fn set(&self) -> &MarkedSet<ParamPoly> {
        &self.set
    }

    pub fn basis(&self) -> &PommaretBasis {
        self.set.basis()
    }

    pub fn parameters(&self) -> &[ParamSlot] {
        &self.slots
    }

    /// Assignment sending every parameter to `value`.
    pub fn constant_assignment(&self, value: Rational) -> HashMap<Param, Rational> {
        self.slots.iter().map(|s| (s.param, value.clone())).collect()
    }
}

/// Builds `F_h = τ_h - Σ_t C_{h,t} η_t`, where `η_0, η_1, …` run through
/// `N(U)` in the degree of `τ_h`, in print order.
pub fn generic_marked_set(basis: &PommaretBasis) -> GenericMarkedSet {
    let layout = basis.layout().clone();
    let mut slots = Vec::new();
    let mut cache: HashMap<i64, Vec<ModuleTerm>> = HashMap::new();
    let mut elements = Vec::with_capacity(basis.len());
    for (h, head) in basis.terms().iter().enumerate() {
        let degree = basis.degree(h);
        let tails = cache.entry(degree).or_insert_with(|| basis.complement_slice(degree));
        let mut terms = vec![(head.clone(), ParamPoly::one())];
        for (t, tail) in tails.iter().enumerate() {
            let param = Param::new(h as u32, t as u32);
            terms.push((tail.clone(), ParamPoly::var(param).neg()));
            slots.push(ParamSlot {
                param,
                head: head.clone(),
                tail: tail.clone(),
            });
        }
        let body = ModuleElement::from_terms(layout.clone(), terms).expect("terms of equal degree");
        elements.push(MarkedElement::new(body, head.clone()).expect("head coefficient is one"));
    }
    let set = new_marked_set(basis.clone(), elements).expect("tails lie in the complement");
    GenericMarkedSet { set, slots }
}

/// The set `R` of parameter polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyIdeal {
    pub generators: Vec<ParamPoly>,
}

impl FamilyIdeal {
    /// `true` iff every generator vanishes at `assignment`.
    pub fn vanishes_at(&self, assignment: &HashMap<Param, Rational>) -> Result<bool, FamilyError> {
        for g in &self.generators {
            if !num_traits::Zero::is_zero(&g.evaluate(assignment)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Reduces every non-multiplicative prolongation `x_i F_h` and collects the
/// coefficients of the remainders, dropping exact duplicates. Prolongations
/// are reduced in parallel; `R` lists them in `(h, i)` order and each
/// remainder in print order.
pub fn family_equations(g: &GenericMarkedSet) -> Result<FamilyIdeal, FamilyError> {
    let set = &g.set;
    let remainders = set
        .prolongations()
        .par_iter()
        .map(|&(k, i)| reduce_full(&set.prolongation(k, i), set).map(|r| r.remainder))
        .collect::<Result<Vec<_>, _>>()?;
    let mut seen = HashSet::new();
    let mut generators = Vec::new();
    for r in remainders {
        for (_, c) in r.into_terms() {
            if seen.insert(c.clone()) {
                generators.push(c);
            }
        }
    }
    Ok(FamilyIdeal { generators })
}

/// A rational marked set obtained by evaluating the parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct Specialization {
    pub set: MarkedSet<Rational>,
    /// Whether the supplied equations vanish at the assignment.
    pub equations_vanish: Option<bool>,
}

pub fn specialize(
    g: &GenericMarkedSet,
    assignment: &HashMap<Param, Rational>,
    equations: Option<&FamilyIdeal>,
) -> Result<Specialization, FamilyError> {
    let set = g.set.try_map_coefficients(|c| c.evaluate(assignment))??;
    let equations_vanish = equations.map(|e| e.vanishes_at(assignment)).transpose()?;
    Ok(Specialization { set, equations_vanish })
}

/// A reduction `x_i F_α = Σ p x_j F_α' + H` whose shape has been checked:
/// every multiplier is a single variable below `x_i` and `H` lies in
/// `⟨N(J)_{m+1}⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangularRepresentation {
    pub representation: Representation<ParamPoly>,
    pub verified: bool,
}

/// Reduces `x_i F_α` over the generic set `𝒢` on `P(J_{≥m})` and checks
/// the triangular shape. Requires `J` saturated, `m ≥ ρ_1, …, ρ_i` and
/// `min(x^α) < x_i`.
pub fn triangular_representation(
    j: &PommaretBasis,
    m: i64,
    g: &GenericMarkedSet,
    head: usize,
    i: usize,
) -> Result<TriangularRepresentation, FamilyError> {
    let n = j.layout().n();
    if j.layout().rank() != 1 {
        return Err(MonomError::NotAnIdeal.into());
    }
    if !basis_invariants(j).saturated {
        return Err(FamilyError::HypothesisViolated("the ideal is not saturated".into()));
    }
    if i == 0 || i > n {
        return Err(FamilyError::HypothesisViolated(format!("variable index {i} outside 1..={n}")));
    }
    let bound = (1..=i).map(|l| rho(j, l)).max().unwrap_or(0);
    if m < bound {
        return Err(FamilyError::HypothesisViolated(format!("m = {m} is below max rho = {bound}")));
    }
    let truncated = truncate_basis(j, m)?;
    let expected: BTreeSet<&ModuleTerm> = truncated.terms().iter().collect();
    let actual: BTreeSet<&ModuleTerm> = g.basis().terms().iter().collect();
    if expected != actual {
        return Err(FamilyError::HypothesisViolated(
            "the generic set is not built over the truncated basis".into(),
        ));
    }
    if head >= g.set.len() {
        return Err(FamilyError::HypothesisViolated(format!("no basis term with index {head}")));
    }
    let tau = g.basis().term(head);
    if tau.exponent.mult_bound() >= i {
        return Err(FamilyError::HypothesisViolated(format!(
            "x{i} is multiplicative for {}",
            tau.display(1)
        )));
    }

    let representation = reduce_full(&g.set.prolongation(head, i), &g.set)?;
    for s in &representation.summands {
        let single = s.multiplier.degree() == 1 && s.multiplier.min_var().is_some_and(|v| v < i);
        if !single {
            return Err(FamilyError::StructureViolated(format!(
                "multiplier {} used on {}",
                s.multiplier,
                s.head.display(1)
            )));
        }
    }
    for t in representation.remainder.support() {
        if j.contains(t) || j.layout().term_degree(t) != m + 1 {
            return Err(FamilyError::StructureViolated(format!(
                "remainder term {} outside N(J)_{}",
                t.display(1),
                m + 1
            )));
        }
    }
    Ok(TriangularRepresentation {
        representation,
        verified: true,
    })
}

/// Checks that every tail term has minimal variable at most that of its
/// head, for a marked basis over `P(J_{≥m})` with `m ≥ reg(J)`.
pub fn tails_respect_minimal_variable<C: Coefficient>(g: &MarkedSet<C>) -> bool {
    g.elements().iter().all(|e| {
        let bound = e.head().exponent.mult_bound();
        e.tail().all(|(t, _)| t.exponent.mult_bound() <= bound)
    })
}

/// Checks that `x_0` divides every term of the elements whose head has
/// minimal variable `x_0`.
pub fn x0_divides_x0_headed_elements<C: Coefficient>(g: &MarkedSet<C>) -> bool {
    g.elements()
        .iter()
        .filter(|e| e.head().exponent.min_var() == Some(0))
        .all(|e| e.body().support().all(|t| t.exponent.get(0) > 0))
}

/// `true` iff the specialization is a marked basis.
pub fn specialization_is_basis(s: &Specialization) -> Result<bool, FamilyError> {
    Ok(is_marked_basis(&s.set, BasisMode::Full)?.is_basis())
}
