//! Independent oracles and random generators shared by the integration
//! tests. Nothing here calls into the library for the quantity it checks.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use marked_bases::marked::{MarkedElement, MarkedSet};
use marked_bases::monom::{pommaret_completion, MonomialModule, PommaretBasis};
use marked_bases::ring::{ExponentVector, FreeModuleLayout, ModuleElement, ModuleTerm, Rational};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Q = Rational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn ring(nvars: usize) -> Arc<FreeModuleLayout> {
    Arc::new(FreeModuleLayout::ring(nvars))
}

pub fn term(e: &[u32]) -> ModuleTerm {
    ModuleTerm::new(ExponentVector::new(e.to_vec()), 0)
}

// ---------------------------------------------------------------------------
// term enumeration and divisibility

/// Exponent vectors of total degree `d` in `nvars` variables.
pub fn exponents_of_degree(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            go(i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    go(0, d, &mut vec![0; nvars], &mut out);
    out
}

/// All terms of degree `s` in the free module `layout`.
pub fn module_terms(layout: &FreeModuleLayout, s: i64) -> Vec<ModuleTerm> {
    let mut out = Vec::new();
    for (k, &w) in layout.weights().iter().enumerate() {
        if s >= w {
            for e in exponents_of_degree(layout.nvars(), (s - w) as u32) {
                out.push(ModuleTerm::new(ExponentVector::new(e), k));
            }
        }
    }
    out
}

pub fn divides(a: &ModuleTerm, b: &ModuleTerm) -> bool {
    a.component == b.component && a.exponent.as_slice().iter().zip(b.exponent.as_slice()).all(|(x, y)| x <= y)
}

pub fn in_monomial(gens: &[ModuleTerm], t: &ModuleTerm) -> bool {
    gens.iter().any(|g| divides(g, t))
}

pub fn minimalize(gens: &[ModuleTerm]) -> Vec<ModuleTerm> {
    let set: BTreeSet<ModuleTerm> = gens.iter().cloned().collect();
    set.iter()
        .filter(|t| !set.iter().any(|g| g != *t && divides(g, t)))
        .cloned()
        .collect()
}

pub fn min_index(e: &[u32]) -> Option<usize> {
    e.iter().position(|&x| x > 0)
}

pub fn degree(layout: &FreeModuleLayout, t: &ModuleTerm) -> i64 {
    t.exponent.as_slice().iter().map(|&e| e as i64).sum::<i64>() + layout.weights()[t.component]
}

// ---------------------------------------------------------------------------
// random monomial ideals

/// Closure of random monomials under `x_i -> x_j` for `j > i`: a strongly
/// stable, hence quasi-stable, ideal. Variables below `lowest` never occur.
pub fn random_strongly_stable(rng: &mut impl Rng, nvars: usize, max_deg: u32, ngens: usize, lowest: usize) -> Vec<ModuleTerm> {
    let mut todo: Vec<Vec<u32>> = Vec::new();
    for _ in 0..ngens {
        let d = rng.gen_range(1..=max_deg);
        let mut e = vec![0u32; nvars];
        for _ in 0..d {
            e[rng.gen_range(lowest..nvars)] += 1;
        }
        todo.push(e);
    }
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    while let Some(e) = todo.pop() {
        if !seen.insert(e.clone()) {
            continue;
        }
        for i in 0..nvars {
            if e[i] == 0 {
                continue;
            }
            for j in i + 1..nvars {
                let mut f = e.clone();
                f[i] -= 1;
                f[j] += 1;
                todo.push(f);
            }
        }
    }
    minimalize(&seen.iter().map(|e| term(e)).collect::<Vec<_>>())
}

/// Pure powers of `x_lowest+1, …, x_n` (and of `x_lowest` when it is not
/// `x_0`... never of `x_0`) plus random monomials: quasi-stable because
/// every non-multiplicative variable has a pure power in the ideal.
pub fn random_artinian_quasi_stable(rng: &mut impl Rng, nvars: usize, max_deg: u32, extra: usize, lowest: usize) -> Vec<ModuleTerm> {
    let mut gens = Vec::new();
    for j in (lowest.max(1))..nvars {
        let mut e = vec![0u32; nvars];
        e[j] = rng.gen_range(1..=max_deg);
        gens.push(term(&e));
    }
    for _ in 0..extra {
        let d = rng.gen_range(1..=max_deg);
        let mut e = vec![0u32; nvars];
        for _ in 0..d {
            e[rng.gen_range(lowest..nvars)] += 1;
        }
        gens.push(term(&e));
    }
    minimalize(&gens)
}

/// A random quasi-stable ideal in `nvars` variables with generators of
/// degree at most `max_deg`, and its Pommaret basis.
pub fn random_quasi_stable(rng: &mut impl Rng, nvars: usize, max_deg: u32) -> (Vec<ModuleTerm>, PommaretBasis) {
    let gens = if rng.gen_bool(0.5) {
        let n = rng.gen_range(1..=3);
        random_strongly_stable(rng, nvars, max_deg, n, 0)
    } else {
        let n = rng.gen_range(0..=3);
        random_artinian_quasi_stable(rng, nvars, max_deg, n, 0)
    };
    let basis = pommaret_basis_of(nvars, &gens);
    (gens, basis)
}

/// A random saturated quasi-stable ideal: no generator involves `x_0`.
pub fn random_saturated_quasi_stable(rng: &mut impl Rng, nvars: usize, max_deg: u32) -> (Vec<ModuleTerm>, PommaretBasis) {
    assert!(nvars >= 2);
    let gens = if rng.gen_bool(0.5) {
        let n = rng.gen_range(1..=3);
        random_strongly_stable(rng, nvars, max_deg, n, 1)
    } else {
        let n = rng.gen_range(0..=2);
        random_artinian_quasi_stable(rng, nvars, max_deg, n, 1)
    };
    let basis = pommaret_basis_of(nvars, &gens);
    (gens, basis)
}

pub fn pommaret_basis_of(nvars: usize, gens: &[ModuleTerm]) -> PommaretBasis {
    let module = MonomialModule::new(ring(nvars), gens.to_vec()).unwrap();
    pommaret_completion(&module).unwrap()
}

// ---------------------------------------------------------------------------
// brute-force monomial invariants

/// `|J_s|` by enumeration.
pub fn brute_hilbert(layout: &FreeModuleLayout, gens: &[ModuleTerm], s: i64) -> usize {
    module_terms(layout, s).iter().filter(|t| in_monomial(gens, t)).count()
}

/// Definition of quasi-stability, searching powers up to `bound`.
pub fn brute_quasi_stable(gens: &[ModuleTerm], nvars: usize, bound: u32) -> bool {
    let gens = minimalize(gens);
    gens.iter().all(|g| {
        let e = g.exponent.as_slice();
        let Some(m) = min_index(e) else { return true };
        (m + 1..nvars).all(|j| {
            (1..=bound).any(|s| {
                let mut f = e.to_vec();
                f[m] -= 1;
                f[j] += s;
                in_monomial(&gens, &ModuleTerm::new(ExponentVector::new(f), g.component))
            })
        })
    })
}

/// `x_j x^α / min(x^α) ∈ M` for all `x^α ∈ M` and `j > min`.
pub fn slice_is_stable(slice: &BTreeSet<Vec<u32>>) -> bool {
    slice.iter().all(|e| {
        let m = min_index(e).unwrap_or(e.len());
        (m + 1..e.len()).all(|j| {
            let mut f = e.clone();
            f[m] -= 1;
            f[j] += 1;
            slice.contains(&f)
        })
    })
}

/// Regularity of a quasi-stable ideal as the least `s` at least the
/// generator degrees with `J_{≥s}` stable, i.e. with a stable degree-`s`
/// slice.
pub fn regularity_by_slices(nvars: usize, gens: &[ModuleTerm]) -> i64 {
    let start = gens.iter().map(|g| g.exponent.degree() as i64).max().unwrap_or(0);
    for s in start..start + 64 {
        let slice: BTreeSet<Vec<u32>> = exponents_of_degree(nvars, s as u32)
            .into_iter()
            .filter(|e| in_monomial(gens, &term(e)))
            .collect();
        if slice_is_stable(&slice) {
            return s;
        }
    }
    panic!("no stable slice found");
}

/// `x^η ∈ J^sat` iff `x^η x_i^D ∈ J` for every `i`, `D` the largest
/// generator degree.
pub fn in_saturation(gens: &[ModuleTerm], t: &ModuleTerm) -> bool {
    let d = gens.iter().map(|g| g.exponent.degree()).max().unwrap_or(0);
    (0..t.exponent.nvars()).all(|i| {
        let mut e = t.exponent.as_slice().to_vec();
        e[i] += d;
        in_monomial(gens, &ModuleTerm::new(ExponentVector::new(e), t.component))
    })
}

/// Least `m` with `J_s = (J^sat)_s` for all `s ≥ m`, searched up to degree
/// `limit`.
pub fn satiety_by_colon(nvars: usize, gens: &[ModuleTerm], limit: i64) -> i64 {
    let layout = FreeModuleLayout::ring(nvars);
    let mut last_gap = None;
    for s in 0..=limit {
        let gap = module_terms(&layout, s)
            .iter()
            .any(|t| !in_monomial(gens, t) && in_saturation(gens, t));
        if gap {
            last_gap = Some(s);
        }
    }
    last_gap.map_or(0, |s| s + 1)
}

// ---------------------------------------------------------------------------
// exact linear algebra

/// Rank over ℚ by Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        let pivot: Vec<Q> = rows[r].iter().map(|x| x * &inv).collect();
        for row in rows.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot).skip(c) {
                *x -= &f * y;
            }
        }
        rows[r] = pivot;
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

pub fn vector(e: &ModuleElement<Q>, index: &HashMap<ModuleTerm, usize>) -> Vec<Q> {
    let mut v = vec![Q::zero(); index.len()];
    for (t, c) in e.terms() {
        v[index[t]] = c.clone();
    }
    v
}

pub fn index_of(terms: &[ModuleTerm]) -> HashMap<ModuleTerm, usize> {
    terms.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect()
}

/// Multiplies an element by a term, independently of the library.
pub fn times(e: &ModuleElement<Q>, m: &[u32]) -> Vec<(ModuleTerm, Q)> {
    e.terms()
        .map(|(t, c)| {
            let x: Vec<u32> = t.exponent.as_slice().iter().zip(m).map(|(a, b)| a + b).collect();
            (ModuleTerm::new(ExponentVector::new(x), t.component), c.clone())
        })
        .collect()
}

/// Rank of `⟨G⟩_s`, spanned by all products of the elements with terms.
pub fn span_rank(g: &MarkedSet<Q>, s: i64) -> usize {
    let layout = g.layout();
    let all = module_terms(layout, s);
    let index = index_of(&all);
    let mut rows = Vec::new();
    for f in g.elements() {
        let d = f.degree();
        if d > s {
            continue;
        }
        for m in exponents_of_degree(layout.nvars(), (s - d) as u32) {
            let mut v = vec![Q::zero(); all.len()];
            for (t, c) in times(f.body(), &m) {
                v[index[&t]] += c;
            }
            rows.push(v);
        }
    }
    if rows.is_empty() {
        0
    } else {
        rank(rows)
    }
}

/// Marked-basis test by linear algebra: `dim⟨G⟩_s = |U_s|` for every
/// `s ≤ limit`.
pub fn basis_by_linear_algebra(g: &MarkedSet<Q>, limit: i64) -> bool {
    let heads = g.basis().terms().to_vec();
    let layout = g.layout();
    let low = layout.weights().iter().copied().min().unwrap_or(0);
    (low..=limit).all(|s| span_rank(g, s) == brute_hilbert(layout, &heads, s))
}

// ---------------------------------------------------------------------------
// random marked sets and bases

/// A lower-triangular unipotent substitution `x_i -> x_i + Σ_{j<i} c_ij x_j`.
pub fn random_substitution(rng: &mut impl Rng, nvars: usize, range: i64) -> Vec<Vec<Q>> {
    (0..nvars)
        .map(|i| (0..i).map(|_| q(rng.gen_range(-range..=range))).collect())
        .collect()
}

fn poly_mul(a: &BTreeMap<Vec<u32>, Q>, b: &BTreeMap<Vec<u32>, Q>) -> BTreeMap<Vec<u32>, Q> {
    let mut out: BTreeMap<Vec<u32>, Q> = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(Q::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Image of a term under the substitution.
pub fn substitute(sub: &[Vec<Q>], t: &ModuleTerm) -> Vec<(ModuleTerm, Q)> {
    let nvars = sub.len();
    let mut acc: BTreeMap<Vec<u32>, Q> = BTreeMap::from([(vec![0; nvars], Q::one())]);
    for (i, &e) in t.exponent.as_slice().iter().enumerate() {
        let mut lin: BTreeMap<Vec<u32>, Q> = BTreeMap::new();
        let mut unit = vec![0; nvars];
        unit[i] = 1;
        lin.insert(unit, Q::one());
        for (j, c) in sub[i].iter().enumerate() {
            if !c.is_zero() {
                let mut u = vec![0; nvars];
                u[j] = 1;
                lin.insert(u, c.clone());
            }
        }
        for _ in 0..e {
            acc = poly_mul(&acc, &lin);
        }
    }
    acc.into_iter()
        .map(|(e, c)| (ModuleTerm::new(ExponentVector::new(e), t.component), c))
        .collect()
}

/// The marked basis over `basis` of the image of `⟨basis⟩` under a
/// substitution. The image of a term `t` is `t` plus terms that are smaller
/// in degrevlex, so `f_t` follows by back-substitution: subtract `c · f_u`
/// for every other module term `u` in the image of `t`.
pub fn marked_basis_by_substitution(basis: &PommaretBasis, sub: &[Vec<Q>]) -> MarkedSet<Q> {
    let layout = basis.layout().clone();
    let heads = basis.terms().to_vec();
    let mut memo: HashMap<ModuleTerm, BTreeMap<ModuleTerm, Q>> = HashMap::new();
    let elements = heads
        .iter()
        .map(|h| {
            let f = reduced_image(h, sub, &heads, &mut memo);
            let body = ModuleElement::from_terms(layout.clone(), f).unwrap();
            MarkedElement::new(body, h.clone()).unwrap()
        })
        .collect();
    marked_bases::marked::new_marked_set(basis.clone(), elements).unwrap()
}

fn reduced_image(
    t: &ModuleTerm,
    sub: &[Vec<Q>],
    heads: &[ModuleTerm],
    memo: &mut HashMap<ModuleTerm, BTreeMap<ModuleTerm, Q>>,
) -> BTreeMap<ModuleTerm, Q> {
    if let Some(f) = memo.get(t) {
        return f.clone();
    }
    let image: BTreeMap<ModuleTerm, Q> = substitute(sub, t).into_iter().collect();
    let mut out: BTreeMap<ModuleTerm, Q> = BTreeMap::new();
    for (u, c) in image {
        if u != *t && in_monomial(heads, &u) {
            assert!(u.exponent.cmp_degrevlex(&t.exponent).is_lt(), "the substitution is unipotent");
            for (v, d) in reduced_image(&u, sub, heads, memo).into_iter().filter(|(v, _)| *v != u) {
                *out.entry(v).or_insert_with(Q::zero) -= &c * d;
            }
        } else {
            *out.entry(u).or_insert_with(Q::zero) += c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    memo.insert(t.clone(), out.clone());
    out
}

/// A marked set with random sparse tails; usually not a basis.
pub fn random_marked_set(rng: &mut impl Rng, basis: &PommaretBasis, density: f64, range: i64) -> MarkedSet<Q> {
    let layout = basis.layout().clone();
    let heads = basis.terms().to_vec();
    let elements = heads
        .iter()
        .map(|h| {
            let s = degree(&layout, h);
            let mut terms = vec![(h.clone(), Q::one())];
            for t in module_terms(&layout, s) {
                if !in_monomial(&heads, &t) && rng.gen_bool(density) {
                    terms.push((t, q(rng.gen_range(-range..=range))));
                }
            }
            MarkedElement::new(ModuleElement::from_terms(layout.clone(), terms).unwrap(), h.clone()).unwrap()
        })
        .collect();
    marked_bases::marked::new_marked_set(basis.clone(), elements).unwrap()
}

/// Adds `c · η` to the tail of one random element, for a random complement
/// term `η` of the right degree, if there is one.
pub fn perturb(rng: &mut impl Rng, g: &MarkedSet<Q>) -> MarkedSet<Q> {
    let layout = g.layout().clone();
    let heads = g.basis().terms().to_vec();
    let mut elements = g.elements().to_vec();
    let mut order: Vec<usize> = (0..elements.len()).collect();
    order.shuffle(rng);
    for k in order {
        let f = &elements[k];
        let tails: Vec<ModuleTerm> = module_terms(&layout, f.degree())
            .into_iter()
            .filter(|t| !in_monomial(&heads, t))
            .collect();
        if let Some(t) = tails.choose(rng) {
            let c = q(rng.gen_range(1..=3));
            let mut terms: Vec<(ModuleTerm, Q)> = f.body().terms().map(|(a, b)| (a.clone(), b.clone())).collect();
            terms.push((t.clone(), c));
            let body = ModuleElement::from_terms(layout.clone(), terms).unwrap();
            elements[k] = MarkedElement::new(body, f.head().clone()).unwrap();
            break;
        }
    }
    marked_bases::marked::new_marked_set(g.basis().clone(), elements).unwrap()
}

/// A random homogeneous element of degree `s`.
pub fn random_element(rng: &mut impl Rng, layout: &Arc<FreeModuleLayout>, s: i64, density: f64) -> ModuleElement<Q> {
    let terms: Vec<(ModuleTerm, Q)> = module_terms(layout, s)
        .into_iter()
        .filter_map(|t| rng.gen_bool(density).then(|| (t, q(rng.gen_range(-5..=5)))))
        .collect();
    ModuleElement::from_terms(layout.clone(), terms).unwrap()
}

// ---------------------------------------------------------------------------
// Betti numbers of monomial ideals from upper Koszul simplicial complexes

/// Reduced Betti numbers of a simplicial complex given by its faces
/// (including the empty face): `dim H̃_k` for `k ≥ -1`.
fn reduced_homology(faces: &[Vec<usize>]) -> BTreeMap<i64, usize> {
    let mut by_dim: BTreeMap<i64, Vec<&Vec<usize>>> = BTreeMap::new();
    for f in faces {
        by_dim.entry(f.len() as i64 - 1).or_default().push(f);
    }
    let boundary_rank = |k: i64| -> usize {
        // ∂_k : C_k -> C_{k-1}
        let (Some(hi), Some(lo)) = (by_dim.get(&k), by_dim.get(&(k - 1))) else {
            return 0;
        };
        let idx: HashMap<&Vec<usize>, usize> = lo.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let rows: Vec<Vec<Q>> = hi
            .iter()
            .map(|f| {
                let mut v = vec![Q::zero(); lo.len()];
                for skip in 0..f.len() {
                    let g: Vec<usize> = f.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x).collect();
                    v[idx[&g]] = if skip % 2 == 0 { q(1) } else { q(-1) };
                }
                v
            })
            .collect();
        rank(rows)
    };
    let mut out = BTreeMap::new();
    for (&k, fs) in &by_dim {
        let h = fs.len() - boundary_rank(k) - boundary_rank(k + 1);
        if h > 0 {
            out.insert(k, h);
        }
    }
    out
}

/// Graded Betti numbers `β_{i,j}` of a monomial ideal, from
/// `β_{i,α} = dim H̃_{i-1}(K^α)` with `K^α = {F squarefree : x^{α-F} ∈ J}`
/// over the lcm lattice.
pub fn betti_numbers(nvars: usize, gens: &[ModuleTerm]) -> BTreeMap<usize, BTreeMap<i64, usize>> {
    let gens = minimalize(gens);
    let mut lattice: BTreeSet<Vec<u32>> = BTreeSet::new();
    for g in &gens {
        let e = g.exponent.as_slice().to_vec();
        let joins: Vec<Vec<u32>> = lattice
            .iter()
            .map(|l| l.iter().zip(&e).map(|(a, b)| *a.max(b)).collect())
            .collect();
        lattice.insert(e);
        lattice.extend(joins);
    }
    let mut table: BTreeMap<usize, BTreeMap<i64, usize>> = BTreeMap::new();
    for alpha in &lattice {
        let support: Vec<usize> = (0..nvars).filter(|&i| alpha[i] > 0).collect();
        let mut faces = Vec::new();
        for mask in 0u32..(1 << support.len()) {
            let f: Vec<usize> = support.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &v)| v).collect();
            let mut e = alpha.clone();
            for &v in &f {
                e[v] -= 1;
            }
            if in_monomial(&gens, &term(&e)) {
                faces.push(f);
            }
        }
        let deg: i64 = alpha.iter().map(|&x| x as i64).sum();
        for (k, h) in reduced_homology(&faces) {
            let i = (k + 1) as usize;
            *table.entry(i).or_default().entry(deg).or_insert(0) += h;
        }
    }
    table
}
