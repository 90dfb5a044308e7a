use std::sync::Arc;

use crate::ring::{Coefficient, FreeModuleLayout, ModuleElement, ModuleTerm};

use super::resolution::{verify_complex, FreeResolution, ResolutionLevel};
use super::SyzygyError;

struct Level<C> {
    target: Arc<FreeModuleLayout>,
    degrees: Vec<i64>,
    columns: Vec<ModuleElement<C>>,
}

/// Splits off trivial summands `0 -> S(-j) --c--> S(-j) -> 0` until no
/// differential `δ_i`, `i ≥ 1`, has a non-zero constant entry. Pivots are
/// taken in the lowest such differential at the smallest `(row, column)`.
pub fn minimize_resolution<C: Coefficient>(r: &FreeResolution<C>) -> Result<FreeResolution<C>, SyzygyError> {
    let parametric = r
        .levels()
        .iter()
        .flat_map(|l| l.columns())
        .any(|c| c.terms().any(|(_, x)| x.is_parametric()));
    if parametric {
        return Err(SyzygyError::ParametricCoefficients);
    }
    let ambient = r.ambient().clone();
    let mut levels: Vec<Level<C>> = r
        .clone()
        .into_levels()
        .into_iter()
        .map(|l| {
            let (target, degrees, columns) = l.into_parts();
            Level { target, degrees, columns }
        })
        .collect();
    while let Some((i, a, b)) = find_pivot(&levels) {
        eliminate(&mut levels, i, a, b)?;
    }
    while levels.len() > 1 && levels.last().is_some_and(|l| l.columns.is_empty()) {
        levels.pop();
    }
    if levels.iter().skip(1).any(|l| l.columns.is_empty()) {
        return Err(SyzygyError::Internal("minimization emptied an inner level".into()));
    }
    let levels = levels
        .into_iter()
        .map(|l| ResolutionLevel::new(l.target, l.degrees, l.columns))
        .collect::<Result<Vec<_>, _>>()?;
    let out = FreeResolution::from_levels(ambient, levels)?;
    if !verify_complex(&out) {
        return Err(SyzygyError::Internal("minimized differentials do not form a complex".into()));
    }
    Ok(out)
}

fn find_pivot<C: Coefficient>(levels: &[Level<C>]) -> Option<(usize, usize, usize)> {
    for (i, level) in levels.iter().enumerate().skip(1) {
        let best = level
            .columns
            .iter()
            .enumerate()
            .flat_map(|(b, col)| col.terms().filter(|(t, _)| t.exponent.is_one()).map(move |(t, _)| (t.component, b)))
            .min();
        if let Some((a, b)) = best {
            return Some((i, a, b));
        }
    }
    None
}

/// Removes generator `b` of level `i` and generator `a` of level `i - 1`,
/// where `δ_i` has the unit entry `c` at `(a, b)`.
fn eliminate<C: Coefficient>(levels: &mut [Level<C>], i: usize, a: usize, b: usize) -> Result<(), SyzygyError> {
    let internal = |e: crate::ring::RingError| SyzygyError::Internal(e.to_string());
    let pivot_col = levels[i].columns[b].clone();
    let unit = ModuleTerm::new(crate::ring::ExponentVector::one(pivot_col.layout().nvars()), a);
    let inverse = pivot_col
        .coefficient(&unit)
        .and_then(|c| c.inverse())
        .ok_or_else(|| SyzygyError::Internal("pivot is not invertible".into()))?;

    // clear row `a` in every other column of δ_i
    for (b2, col) in levels[i].columns.iter_mut().enumerate() {
        if b2 == b {
            continue;
        }
        for (m, p) in col.component_poly(a) {
            col.add_scaled(&p.mul(&inverse).neg(), &m, &pivot_col).map_err(internal)?;
        }
    }

    // δ_i loses column b and row a
    levels[i].columns.remove(b);
    levels[i].degrees.remove(b);
    let mut lower_degrees = levels[i - 1].degrees.clone();
    lower_degrees.remove(a);
    let new_target = retarget(&levels[i].target, lower_degrees);
    levels[i].columns = levels[i]
        .columns
        .iter()
        .map(|c| drop_component(c, a, &new_target))
        .collect::<Result<_, _>>()?;
    levels[i].target = new_target;

    // δ_{i-1} loses column a
    levels[i - 1].columns.remove(a);
    levels[i - 1].degrees.remove(a);

    // δ_{i+1} loses row b
    if i + 1 < levels.len() {
        let new_target = retarget(&levels[i + 1].target, levels[i].degrees.clone());
        levels[i + 1].columns = levels[i + 1]
            .columns
            .iter()
            .map(|c| drop_component(c, b, &new_target))
            .collect::<Result<_, _>>()?;
        levels[i + 1].target = new_target;
    }
    Ok(())
}

/// The free module with the given weights; an empty weight list keeps the
/// old layout, since nothing can map into the zero module.
fn retarget(old: &Arc<FreeModuleLayout>, weights: Vec<i64>) -> Arc<FreeModuleLayout> {
    if weights.is_empty() {
        old.clone()
    } else {
        Arc::new(FreeModuleLayout::new(old.nvars(), weights))
    }
}

fn drop_component<C: Coefficient>(
    c: &ModuleElement<C>,
    k: usize,
    target: &Arc<FreeModuleLayout>,
) -> Result<ModuleElement<C>, SyzygyError> {
    let terms = c
        .terms()
        .filter(|(t, _)| t.component != k)
        .map(|(t, x)| {
            let comp = if t.component > k { t.component - 1 } else { t.component };
            (ModuleTerm::new(t.exponent.clone(), comp), x.clone())
        });
    if target.rank() == c.layout().rank() {
        // the target became the zero module; only zero columns survive
        let survivors: Vec<_> = terms.collect();
        if !survivors.is_empty() {
            return Err(SyzygyError::Internal("non-zero map into the zero module".into()));
        }
        return Ok(ModuleElement::zero(target.clone()));
    }
    ModuleElement::from_terms(target.clone(), terms).map_err(|e| SyzygyError::Internal(e.to_string()))
}
