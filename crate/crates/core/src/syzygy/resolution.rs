use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::binomial;

use crate::marked::MarkedSet;
use crate::monom::{basis_invariants, MonomError, PommaretBasis};
use crate::ring::{Coefficient, ExponentVector, FreeModuleLayout, ModuleElement};

use super::{syzygy_marked_basis, SyzygyError};

/// `level -> degree -> rank`; only non-zero ranks are stored.
pub type RankTable = BTreeMap<usize, BTreeMap<i64, usize>>;

/// One free module `F_i` of a resolution together with the differential
/// `δ_i: F_i -> F_{i-1}`, stored column by column: column `b` is the image
/// of the `b`-th generator, an element of `target`. For level 0 the target
/// is the ambient free module and the columns are the generators of the
/// resolved module.
#[derive(Clone, Debug, PartialEq)]
pub struct ResolutionLevel<C> {
    target: Arc<FreeModuleLayout>,
    degrees: Vec<i64>,
    columns: Vec<ModuleElement<C>>,
    marked: Option<MarkedSet<C>>,
    labels: Option<Vec<(usize, usize)>>,
}

impl<C: Coefficient> ResolutionLevel<C> {
    /// Checks that every column lives in `target` and has the stated degree.
    pub fn new(
        target: Arc<FreeModuleLayout>,
        degrees: Vec<i64>,
        columns: Vec<ModuleElement<C>>,
    ) -> Result<Self, SyzygyError> {
        if degrees.len() != columns.len() {
            return Err(SyzygyError::Internal("degree list and columns differ in length".into()));
        }
        for (d, c) in degrees.iter().zip(&columns) {
            if c.layout() != &target {
                return Err(SyzygyError::Internal("column outside the target module".into()));
            }
            if c.degree().is_some_and(|e| e != *d) {
                return Err(SyzygyError::Internal(format!("column of degree {:?} declared as {d}", c.degree())));
            }
        }
        Ok(ResolutionLevel {
            target,
            degrees,
            columns,
            marked: None,
            labels: None,
        })
    }

    fn from_marked(set: MarkedSet<C>, labels: Option<Vec<(usize, usize)>>) -> Self {
        ResolutionLevel {
            target: set.layout().clone(),
            degrees: set.elements().iter().map(|e| e.degree()).collect(),
            columns: set.elements().iter().map(|e| e.body().clone()).collect(),
            marked: Some(set),
            labels,
        }
    }

    pub fn target(&self) -> &Arc<FreeModuleLayout> {
        &self.target
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn columns(&self) -> &[ModuleElement<C>] {
        &self.columns
    }

    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    /// The marked basis this level came from, unless it was minimized.
    pub fn marked(&self) -> Option<&MarkedSet<C>> {
        self.marked.as_ref()
    }

    /// `(k, i)` of the syzygy `S_{k;i}` behind each generator.
    pub fn labels(&self) -> Option<&[(usize, usize)]> {
        self.labels.as_deref()
    }

    /// Entry `(row, column)` of the differential as a polynomial.
    pub fn entry(&self, row: usize, column: usize) -> Vec<(ExponentVector, C)> {
        self.columns[column].component_poly(row)
    }

    pub fn ranks(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for &d in &self.degrees {
            *out.entry(d).or_insert(0) += 1;
        }
        out
    }

    pub(crate) fn into_parts(self) -> (Arc<FreeModuleLayout>, Vec<i64>, Vec<ModuleElement<C>>) {
        (self.target, self.degrees, self.columns)
    }
}

/// A finite free resolution `0 -> F_L -> … -> F_0 -> M -> 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeResolution<C> {
    ambient: Arc<FreeModuleLayout>,
    levels: Vec<ResolutionLevel<C>>,
}

impl<C: Coefficient> FreeResolution<C> {
    /// Assembles a resolution; the target of level `i > 0` must have the
    /// degrees of level `i - 1` as weights.
    pub fn from_levels(
        ambient: Arc<FreeModuleLayout>,
        levels: Vec<ResolutionLevel<C>>,
    ) -> Result<Self, SyzygyError> {
        if levels.is_empty() {
            return Err(SyzygyError::Internal("a resolution needs a level 0".into()));
        }
        if levels[0].target != ambient {
            return Err(SyzygyError::Internal("level 0 does not map into the ambient module".into()));
        }
        for i in 1..levels.len() {
            if levels[i].target.weights() != levels[i - 1].degrees.as_slice() {
                return Err(SyzygyError::Internal(format!("level {i} does not map onto level {}", i - 1)));
            }
        }
        Ok(FreeResolution { ambient, levels })
    }

    pub fn ambient(&self) -> &Arc<FreeModuleLayout> {
        &self.ambient
    }

    pub fn levels(&self) -> &[ResolutionLevel<C>] {
        &self.levels
    }

    pub fn level(&self, i: usize) -> &ResolutionLevel<C> {
        &self.levels[i]
    }

    /// Index of the last free module.
    pub fn length(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn ranks(&self) -> RankTable {
        self.levels.iter().enumerate().map(|(i, l)| (i, l.ranks())).collect()
    }

    /// `max (j - i)` over the non-zero ranks `r_{i,j}`; for a minimal
    /// resolution this is the regularity.
    pub fn regularity(&self) -> Option<i64> {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(i, l)| l.degrees.iter().map(move |&d| d - i as i64))
            .max()
    }

    pub(crate) fn into_levels(self) -> Vec<ResolutionLevel<C>> {
        self.levels
    }
}

/// Iterates the syzygy construction until a level has no non-multiplicative
/// variables, then checks that the result is a complex.
pub fn free_resolution<C: Coefficient>(g: &MarkedSet<C>) -> Result<FreeResolution<C>, SyzygyError> {
    let mut levels = vec![ResolutionLevel::from_marked(g.clone(), None)];
    let mut current = g.clone();
    while let Some(syz) = syzygy_marked_basis(&current)? {
        current = syz.set.clone();
        levels.push(ResolutionLevel::from_marked(syz.set, Some(syz.labels)));
    }
    let r = FreeResolution::from_levels(g.layout().clone(), levels)?;
    if !verify_complex(&r) {
        return Err(SyzygyError::Internal("consecutive differentials do not compose to zero".into()));
    }
    Ok(r)
}

/// `δ_i ∘ δ_{i+1} = 0` for every `i`, by exact multiplication.
pub fn verify_complex<C: Coefficient>(r: &FreeResolution<C>) -> bool {
    for i in 0..r.length() {
        let lower = &r.levels[i];
        for column in &r.levels[i + 1].columns {
            let mut image = ModuleElement::zero(lower.target.clone());
            for (t, c) in column.terms() {
                let Some(target) = lower.columns.get(t.component) else {
                    return false;
                };
                if image.add_scaled(c, &t.exponent, target).is_err() {
                    return false;
                }
            }
            if !image.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Ranks `r_{i,j} = Σ_{k=0}^{n-i} C(n-k, i) β^{(k)}_{0,j-i}` of the
/// resolution induced by any marked basis over `P(J)`, where
/// `β^{(k)}_{0,j}` counts basis terms of degree `j` with minimal variable
/// `x_k`. Ideals only.
pub fn predicted_ranks(b: &PommaretBasis) -> Result<RankTable, SyzygyError> {
    if b.layout().rank() != 1 {
        return Err(MonomError::NotAnIdeal.into());
    }
    let n = b.layout().n();
    let mut beta: BTreeMap<(usize, i64), usize> = BTreeMap::new();
    for (idx, t) in b.terms().iter().enumerate() {
        *beta.entry((t.exponent.mult_bound(), b.degree(idx))).or_insert(0) += 1;
    }
    let mut table = RankTable::new();
    for (&(k, j), &count) in &beta {
        for i in 0..=n - k {
            let r = binomial(n - k, i) * count;
            *table.entry(i).or_default().entry(j + i as i64).or_insert(0) += r;
        }
    }
    if table.is_empty() {
        table.insert(0, BTreeMap::new());
    }
    Ok(table)
}

/// Bounds on the Betti numbers, regularity and projective dimension of any
/// ideal generated by a marked basis over `P(J)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub betti_bound_table: RankTable,
    pub regularity_bound: i64,
    pub pdim_bound: usize,
}

pub fn invariant_bounds(b: &PommaretBasis) -> Result<BoundsReport, SyzygyError> {
    let inv = basis_invariants(b);
    Ok(BoundsReport {
        betti_bound_table: predicted_ranks(b)?,
        regularity_bound: inv.regularity,
        pdim_bound: inv.projective_dimension,
    })
}
