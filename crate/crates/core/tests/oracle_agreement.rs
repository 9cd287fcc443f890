mod common;

use std::sync::Arc;

use ambrep_core::catalog;
use ambrep_core::compat::canonical_pairing;
use ambrep_core::crisp::{pseudo_inverse, pseudo_inverse_transversal};
use ambrep_core::fuzzy::{compose_fuzzy, compose_fuzzy_closure, fuzzy_pseudo_inverse, fuzzy_pseudo_inverse_shortcut};
use ambrep_core::oracle::*;
use ambrep_core::{lawson_dual, BoundedLattice, CrispRep, FinitePoset};
use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn way_below_matches_oracle(s in semilattice(7)) {
        prop_assert_eq!(s.way_below_table(), wb_oracle(&s).unwrap());
    }

    #[test]
    fn dual_matches_oracle(s in semilattice(7)) {
        prop_assert_eq!(lawson_dual(&s), dual_oracle(&s).unwrap());
    }

    #[test]
    fn crisp_pinv_routes_agree((s1, s2) in pair(6), seeds in seeds(), trim: bool) {
        let r = crisp_rep(&s1, &s2, &seeds, trim);
        let (p1, p2) = (canonical_pairing(&s1), canonical_pairing(&s2));
        let fast = pseudo_inverse(&r, &p1, &p2).unwrap();
        prop_assert_eq!(&fast, &pinv_oracle(&r, &p1, &p2).unwrap());
        prop_assert_eq!(&fast, &pseudo_inverse_transversal(&r, &p1, &p2).unwrap());
    }

    #[test]
    fn crisp_pinv_agrees_under_relabelled_pairings((s1, s2) in pair(5), seeds in seeds(), shift in 0usize..8) {
        let r = crisp_rep(&s1, &s2, &seeds, false);
        let relabel = |s: &Arc<ambrep_core::MeetSemilattice>| {
            let n = s.len();
            let perm: Vec<usize> = (0..n).map(|k| (k + shift) % n).collect();
            let names = (0..n).map(|k| format!("p{k}")).collect();
            ambrep_core::compat::permuted_pairing(s, &perm, names).unwrap().1
        };
        let (p1, p2) = (relabel(&s1), relabel(&s2));
        let fast = pseudo_inverse(&r, &p1, &p2).unwrap();
        prop_assert_eq!(&fast, &pinv_oracle(&r, &p1, &p2).unwrap());
        prop_assert_eq!(&fast, &pseudo_inverse_transversal(&r, &p1, &p2).unwrap());
    }

    #[test]
    fn fuzzy_pinv_routes_agree((s1, s2) in pair(5), q in quantale(), seeds in fuzzy_seeds(), trim: bool) {
        let r = fuzzy_rep(&s1, &s2, q.lattice(), &seeds, trim);
        let (p1, p2) = (canonical_pairing(&s1), canonical_pairing(&s2));
        let cutwise = fuzzy_pseudo_inverse(&r, &p1, &p2).unwrap();
        prop_assert_eq!(&cutwise, &fuzzy_pinv_oracle(&r, &p1, &p2).unwrap());
        prop_assert_eq!(&cutwise, &fuzzy_pseudo_inverse_shortcut(&r, &p1, &p2).unwrap());
    }

    #[test]
    fn fuzzy_composition_routes_agree((s1, s2, s3) in triple(5), q in quantale(), a in fuzzy_seeds(), b in fuzzy_seeds()) {
        let r = fuzzy_rep(&s1, &s2, q.lattice(), &a, false);
        let t = fuzzy_rep(&s2, &s3, q.lattice(), &b, false);
        let product = compose_fuzzy(&r, &t, &q).unwrap();
        prop_assert_eq!(&product, &compose_expanded(&r, &t, &q).unwrap());
        prop_assert_eq!(&product, &compose_fuzzy_closure(&r, &t, &q).unwrap());
    }

    #[test]
    fn crisp_composition_matches_literal((s1, s2, s3) in triple(6), a in seeds(), b in seeds()) {
        let r = crisp_rep(&s1, &s2, &a, false);
        let t = crisp_rep(&s2, &s3, &b, false);
        prop_assert_eq!(r.compose(&t).unwrap(), compose_literal(&r, &t).unwrap());
    }

    #[test]
    fn separating_count_is_iso_count((s1, s2) in pair(4)) {
        prop_assume!(s1.len() * s2.len() <= 16);
        let found = search_separating(&s1, &s2).unwrap();
        prop_assert_eq!(found.len(), count_isos_to_dual(&s1, &s2).unwrap());
        for p in &found {
            prop_assert!(p.is_separating());
            prop_assert!(p.to_iso().unwrap().is_isomorphism());
        }
    }
}

/// All lattices with at most four elements, up to isomorphism.
fn small_lattices() -> Vec<BoundedLattice> {
    vec![
        catalog::chain_lattice(1),
        catalog::chain_lattice(2),
        catalog::chain_lattice(3),
        catalog::chain_lattice(4),
        catalog::diamond_lattice(),
    ]
}

#[test]
fn complete_distributivity_spot_check() {
    for l in small_lattices() {
        assert_eq!(cd_oracle(&l).unwrap(), l.is_distributive(), "{:?}", l.names());
    }
}

#[test]
fn rel2_and_catalog_way_below() {
    let lattices = [
        catalog::rel2_quantale().lattice().as_ref().clone(),
        catalog::m3_lattice(),
        catalog::n5_lattice(),
        catalog::boolean_lattice(3),
    ];
    for l in lattices {
        assert_eq!(l.way_below_table(), wb_oracle(&l).unwrap());
    }
    let seg = catalog::segments(3);
    assert_eq!(seg.way_below_table(), wb_oracle(&seg).unwrap());
}

#[test]
fn oracle_report_flags_disagreement() {
    let c2 = Arc::new(catalog::chain(2));
    let full = CrispRep::full(c2.clone(), c2.clone());
    let e = CrispRep::identity(c2.clone());
    let same = OracleReport::compare("pinv", "C2", &e, &e);
    assert!(same.agree && same.witness.is_none());
    let diff = OracleReport::compare("pinv", "C2", &full, &e);
    assert!(!diff.agree && diff.witness.is_some());
    assert_eq!(same.digest, diff.digest);
}

#[test]
fn wb_oracle_on_posets_without_meets() {
    // Bowtie with a bottom: nothing is way below the bottom, and each
    // non-bottom element is compact.
    let p = FinitePoset::from_relation(
        &["z", "a", "b", "c", "d"],
        &[("z", "a"), ("z", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
    )
    .unwrap();
    let wb = wb_oracle(&p).unwrap();
    assert_eq!(wb, p.way_below().unwrap());
}
