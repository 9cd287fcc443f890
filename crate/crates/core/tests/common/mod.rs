#![allow(dead_code)]

use std::sync::Arc;

use ambrep_core::catalog;
use ambrep_core::{BitMatrix, BoundedLattice, CrispRep, FuzzyRep, MeetSemilattice, Quantale};
use proptest::prelude::*;

pub fn semilattice(max: usize) -> impl Strategy<Value = Arc<MeetSemilattice>> {
    (1u32..=4, prop::collection::vec(any::<u32>(), 0..7)).prop_map(move |(k, raw)| {
        let masks: Vec<u32> = raw.iter().map(|m| m & ((1 << k) - 1)).collect();
        Arc::new(catalog::intersection_family(&masks, max))
    })
}

pub fn pair(max: usize) -> impl Strategy<Value = (Arc<MeetSemilattice>, Arc<MeetSemilattice>)> {
    (semilattice(max), semilattice(max))
}

pub fn triple(
    max: usize,
) -> impl Strategy<Value = (Arc<MeetSemilattice>, Arc<MeetSemilattice>, Arc<MeetSemilattice>)> {
    (semilattice(max), semilattice(max), semilattice(max))
}

pub fn crisp_rep(
    s1: &Arc<MeetSemilattice>,
    s2: &Arc<MeetSemilattice>,
    seeds: &[(usize, usize)],
    trim: bool,
) -> CrispRep {
    let (n1, n2) = (s1.len(), s2.len());
    let seeds = BitMatrix::from_pairs(n1, n2, seeds.iter().map(|&(a, b)| (a % n1, b % n2)));
    let r = CrispRep::least_completion(s1.clone(), s2.clone(), &seeds);
    if trim {
        r.trim_zero_row()
    } else {
        r
    }
}

pub fn seeds() -> impl Strategy<Value = Vec<(usize, usize)>> {
    prop::collection::vec((0usize..64, 0usize..64), 0..6)
}

pub fn fuzzy_seeds() -> impl Strategy<Value = Vec<(usize, usize, usize)>> {
    prop::collection::vec((0usize..64, 0usize..64, 0usize..64), 0..6)
}

pub fn fuzzy_rep(
    s1: &Arc<MeetSemilattice>,
    s2: &Arc<MeetSemilattice>,
    l: &Arc<BoundedLattice>,
    seeds: &[(usize, usize, usize)],
    trim: bool,
) -> FuzzyRep {
    let (n1, n2, nl) = (s1.len(), s2.len(), l.len());
    let seeds: Vec<_> = seeds.iter().map(|&(a, b, c)| (a % n1, b % n2, c % nl)).collect();
    let r = FuzzyRep::least_completion(s1.clone(), s2.clone(), l.clone(), &seeds);
    if trim {
        r.trim_zero_row()
    } else {
        r
    }
}

/// Catalog quantales: meet on C3 and D4, Lukasiewicz on C4, relations on 2 points.
pub fn quantales() -> Vec<Quantale> {
    vec![
        catalog::meet_quantale(catalog::chain_lattice(3)),
        catalog::meet_quantale(catalog::diamond_lattice()),
        catalog::lukasiewicz_quantale(4),
        catalog::rel2_quantale(),
    ]
}

pub fn quantale() -> impl Strategy<Value = Quantale> {
    prop::sample::select(quantales())
}
