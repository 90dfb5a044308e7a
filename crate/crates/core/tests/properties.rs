mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use common::*;
use marked_bases::cli::{deserialize_resolution, parse_document, serialize_resolution, Object};
use marked_bases::marked::{contains, is_marked_basis, reduce_full, reduce_with_strategy, BasisMode, BasisVerdict, MarkedSet};
use marked_bases::monom::{
    basis_invariants, hilbert_function, pommaret_completion, saturation, stability_class, truncate_basis, MonomialModule,
    PommaretBasis, StabilityClass,
};
use marked_bases::ring::{ExponentVector, FreeModuleLayout, ModuleElement, ModuleTerm};
use marked_bases::syzygy::{free_resolution, minimize_resolution, predicted_ranks, verify_complex};
use proptest::prelude::*;
use rand::Rng;

fn in_cone(b: &ModuleTerm, t: &ModuleTerm) -> bool {
    if !divides(b, t) {
        return false;
    }
    let bound = min_index(b.exponent.as_slice()).unwrap_or(usize::MAX);
    b.exponent
        .as_slice()
        .iter()
        .zip(t.exponent.as_slice())
        .enumerate()
        .all(|(i, (x, y))| x == y || i <= bound)
}

/// A random quasi-stable module of rank 1 or 2 with random weights.
fn random_module(rng: &mut impl Rng) -> (Arc<FreeModuleLayout>, Vec<ModuleTerm>) {
    let nvars = rng.gen_range(2..=4);
    let rank = rng.gen_range(1..=2);
    let weights: Vec<i64> = (0..rank).map(|_| rng.gen_range(0..=2)).collect();
    let mut gens = Vec::new();
    for k in 0..rank {
        let (g, _) = random_quasi_stable(rng, nvars, 3);
        gens.extend(g.into_iter().map(|t| ModuleTerm::new(t.exponent, k)));
    }
    (Arc::new(FreeModuleLayout::new(nvars, weights)), gens)
}

fn module_basis(layout: &Arc<FreeModuleLayout>, gens: &[ModuleTerm]) -> PommaretBasis {
    pommaret_completion(&MonomialModule::new(layout.clone(), gens.to_vec()).unwrap()).unwrap()
}

fn document(g: &MarkedSet<Q>) -> String {
    let items: Vec<String> = g.elements().iter().map(|e| e.display()).collect();
    format!("ring {};\nmarked G = {};\n", g.layout().nvars(), items.join(", "))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn pommaret_cones_partition_the_module(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (layout, gens) = random_module(&mut r);
        let b = module_basis(&layout, &gens);
        let reg = basis_invariants(&b).regularity;
        for s in 0..=reg + 2 {
            for t in module_terms(&layout, s) {
                let hits = b.terms().iter().filter(|p| in_cone(p, &t)).count();
                prop_assert_eq!(hits, usize::from(in_monomial(&gens, &t)), "term {:?}", t);
            }
        }
    }

    #[test]
    fn hilbert_function_counts_terms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (layout, gens) = random_module(&mut r);
        let b = module_basis(&layout, &gens);
        for s in 0..=basis_invariants(&b).regularity + 3 {
            prop_assert_eq!(hilbert_function(&b, s) as usize, brute_hilbert(&layout, &gens, s));
        }
    }

    #[test]
    fn classification_agrees_with_the_definition(seed in any::<u64>()) {
        let mut r = rng(seed);
        let nvars = r.gen_range(2..=4);
        let gens: Vec<ModuleTerm> = (0..r.gen_range(1..=4))
            .map(|_| {
                let e: Vec<u32> = (0..nvars).map(|_| r.gen_range(0..=2)).collect();
                term(&e)
            })
            .filter(|t| t.exponent.degree() > 0)
            .collect();
        prop_assume!(!gens.is_empty());
        let module = MonomialModule::new(ring(nvars), gens.clone()).unwrap();
        let quasi = brute_quasi_stable(&gens, nvars, 16);
        let class = stability_class(&module).class;
        prop_assert_eq!(class != StabilityClass::NotQuasiStable, quasi);
        prop_assert_eq!(pommaret_completion(&module).is_ok(), quasi);
    }

    #[test]
    fn invariants_match_oracles(seed in any::<u64>()) {
        let mut r = rng(seed);
        let nvars = r.gen_range(2..=4);
        let (gens, b) = random_quasi_stable(&mut r, nvars, 4);
        let inv = basis_invariants(&b);
        prop_assert_eq!(inv.regularity, regularity_by_slices(nvars, &gens));
        prop_assert_eq!(inv.satiety, satiety_by_colon(nvars, &gens, inv.regularity + 3));
        let betti = betti_numbers(nvars, &gens);
        prop_assert_eq!(inv.projective_dimension, *betti.keys().max().unwrap());
        let castelnuovo = betti.iter().flat_map(|(i, row)| row.keys().map(move |j| j - *i as i64)).max().unwrap();
        prop_assert_eq!(inv.regularity, castelnuovo);
    }

    #[test]
    fn saturation_and_truncation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let nvars = r.gen_range(2..=4);
        let (gens, b) = random_quasi_stable(&mut r, nvars, 4);
        let reg = basis_invariants(&b).regularity;
        let sat = saturation(&b).unwrap();
        prop_assert!(basis_invariants(&sat).saturated);
        let layout = FreeModuleLayout::ring(nvars);
        for s in 0..=reg + 2 {
            for t in module_terms(&layout, s) {
                prop_assert_eq!(sat.contains(&t), in_saturation(&gens, &t));
            }
        }
        for m in [reg, reg + 1] {
            let trunc = truncate_basis(&b, m).unwrap();
            let module = MonomialModule::new(ring(nvars), trunc.terms().to_vec()).unwrap();
            prop_assert_eq!(stability_class(&module).class, StabilityClass::Stable);
            for s in 0..=reg + 2 {
                let expected = if s < m { 0 } else { brute_hilbert(&layout, &gens, s) };
                prop_assert_eq!(hilbert_function(&trunc, s) as usize, expected);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn substitution_bases_are_marked_bases(seed in any::<u64>()) {
        let mut r = rng(seed);
        let nvars = r.gen_range(2..=4);
        let (_, b) = random_quasi_stable(&mut r, nvars, 3);
        let sub = random_substitution(&mut r, nvars, 2);
        let g = marked_basis_by_substitution(&b, &sub);
        let reg = basis_invariants(&b).regularity;
        prop_assert!(basis_by_linear_algebra(&g, reg + 2));
        prop_assert_eq!(is_marked_basis(&g, BasisMode::Full).unwrap(), BasisVerdict::Basis);
    }

    #[test]
    fn basis_test_agrees_with_linear_algebra(seed in any::<u64>()) {
        let mut r = rng(seed);
        let nvars = r.gen_range(2..=3);
        let (_, b) = random_quasi_stable(&mut r, nvars, 3);
        let g = if r.gen_bool(0.5) {
            let sub = random_substitution(&mut r, nvars, 2);
            perturb(&mut r, &marked_basis_by_substitution(&b, &sub))
        } else {
            random_marked_set(&mut r, &b, 0.3, 2)
        };
        let reg = basis_invariants(&b).regularity;
        let verdict = is_marked_basis(&g, BasisMode::Full).unwrap();
        prop_assert_eq!(verdict.is_basis(), basis_by_linear_algebra(&g, reg + 2));
        if let BasisVerdict::NotBasis(c) = verdict {
            prop_assert!(!c.remainder.is_zero());
            prop_assert!(c.remainder.terms().all(|(t, _)| !b.contains(t)));
        }
    }

    #[test]
    fn reduction_is_confluent_and_exact(seed in any::<u64>()) {
        let mut r = rng(seed);
        let nvars = r.gen_range(2..=3);
        let (_, b) = random_quasi_stable(&mut r, nvars, 3);
        let g = random_marked_set(&mut r, &b, 0.4, 3);
        let s = basis_invariants(&b).regularity + r.gen_range(0..=1);
        let h = random_element(&mut r, g.layout(), s, 0.5);
        let full = reduce_full(&h, &g).unwrap();
        prop_assert_eq!(full.evaluate(&g).unwrap(), h.clone());
        prop_assert!(full.remainder.terms().all(|(t, _)| !b.contains(t)));
        for _ in 0..4 {
            let mut pick = rng(r.gen());
            let other = reduce_with_strategy(&h, &g, |k| pick.gen_range(0..k), 100_000).unwrap();
            prop_assert_eq!(&other.remainder, &full.remainder);
            prop_assert_eq!(other.evaluate(&g).unwrap(), h.clone());
        }
    }

    #[test]
    fn membership_of_combinations(seed in any::<u64>()) {
        let mut r = rng(seed);
        let nvars = r.gen_range(2..=3);
        let (_, b) = random_quasi_stable(&mut r, nvars, 3);
        let g = marked_basis_by_substitution(&b, &random_substitution(&mut r, nvars, 2));
        let s = basis_invariants(&b).regularity + 1;
        let mut f = ModuleElement::zero(g.layout().clone());
        for e in g.elements() {
            if e.degree() <= s && r.gen_bool(0.7) {
                for m in exponents_of_degree(nvars, (s - e.degree()) as u32) {
                    if r.gen_bool(0.3) {
                        f.add_scaled(&q(r.gen_range(-3..=3)), &ExponentVector::new(m), e.body()).unwrap();
                    }
                }
            }
        }
        prop_assert!(contains(&g, &f).unwrap());
        let outside: Vec<ModuleTerm> = module_terms(g.layout(), s).into_iter().filter(|t| !b.contains(t)).collect();
        if let Some(t) = outside.first() {
            let mut bumped = f.clone();
            bumped.add_scaled(&q(1), &ExponentVector::one(nvars), &ModuleElement::monomial(g.layout().clone(), t.clone(), q(1))).unwrap();
            prop_assert!(!contains(&g, &bumped).unwrap());
        }
    }

    #[test]
    fn resolutions_have_predicted_ranks(seed in any::<u64>()) {
        let mut r = rng(seed);
        let nvars = r.gen_range(2..=4);
        let (_, b) = random_quasi_stable(&mut r, nvars, 3);
        let g = marked_basis_by_substitution(&b, &random_substitution(&mut r, nvars, 1));
        let res = free_resolution(&g).unwrap();
        prop_assert!(verify_complex(&res));
        prop_assert_eq!(res.ranks(), predicted_ranks(&b).unwrap());
        prop_assert_eq!(res.length(), basis_invariants(&b).projective_dimension);
    }

    #[test]
    fn minimal_betti_numbers_of_monomial_ideals(seed in any::<u64>()) {
        let mut r = rng(seed);
        let nvars = r.gen_range(2..=4);
        let (gens, b) = random_quasi_stable(&mut r, nvars, 4);
        let minimal = minimize_resolution(&free_resolution(&MarkedSet::<Q>::monomial(b)).unwrap()).unwrap();
        prop_assert!(verify_complex(&minimal));
        let observed: BTreeMap<usize, BTreeMap<i64, usize>> = minimal
            .ranks()
            .into_iter()
            .map(|(i, row)| (i, row.into_iter().filter(|&(_, c)| c > 0).collect::<BTreeMap<_, _>>()))
            .filter(|(_, row)| !row.is_empty())
            .collect();
        prop_assert_eq!(observed, betti_numbers(nvars, &gens));
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let nvars = r.gen_range(2..=4);
        let (_, b) = random_quasi_stable(&mut r, nvars, 3);
        let g = random_marked_set(&mut r, &b, 0.3, 7);
        let doc = parse_document(&document(&g)).unwrap();
        let Some(Object::Marked(parsed)) = doc.get("G") else { panic!("no marked set") };
        prop_assert_eq!(parsed, &g);
        let again = parse_document(&doc.to_string()).unwrap();
        prop_assert_eq!(again.to_string(), doc.to_string());
    }

    #[test]
    fn resolutions_survive_json(seed in any::<u64>()) {
        let mut r = rng(seed);
        let nvars = r.gen_range(2..=3);
        let (_, b) = random_quasi_stable(&mut r, nvars, 3);
        let g = marked_basis_by_substitution(&b, &random_substitution(&mut r, nvars, 2));
        let res = free_resolution(&g).unwrap();
        let back = deserialize_resolution(&serialize_resolution(&res)).unwrap();
        prop_assert_eq!(back.ranks(), res.ranks());
        prop_assert!(verify_complex(&back));
        for (a, c) in res.levels().iter().zip(back.levels()) {
            prop_assert_eq!(a.columns(), c.columns());
        }
    }
}
