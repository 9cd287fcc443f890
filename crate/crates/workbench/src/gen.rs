//! Seeded instance generators. Every case draws from its own ChaCha stream,
//! so the instance stream does not depend on scheduling.

use std::sync::Arc;

use ambrep_core::catalog;
use ambrep_core::dual::enumerate_morphisms;
use ambrep_core::{
    BitMatrix, BoundedLattice, CrispRep, FuzzyRep, MeetSemilattice, Quantale, SemilatticeMorphism,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dsl::{
    Document, FuzzyRepDef, Item, MapDef, PosetDef, QuantaleDef, RepDef,
};

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub max_size: usize,
    pub cases: usize,
    /// Index into [`catalog_quantales`]; `None` picks one per case.
    pub quantale: Option<usize>,
    /// Probability of each seed pair for representations.
    pub density: f64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            max_size: 6,
            cases: 100,
            quantale: None,
            density: 0.15,
        }
    }
}

pub fn case_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Any,
    /// Zero row `{0}` (crisp) or zero row supported at `0` only (fuzzy).
    PseudoInvertible,
    /// Forces a non-trivial zero row whenever the target has one to offer.
    NotPseudoInvertible,
}

/// An intersection-closed family of subsets of a `k`-set containing the
/// empty set, truncated to `max_size` members.
pub fn generate_semilattice(rng: &mut impl Rng, max_size: usize) -> Arc<MeetSemilattice> {
    let k = rng.random_range(1..=4u32);
    let count = rng.random_range(0..=6);
    let mut masks: Vec<u32> = (0..count).map(|_| rng.random_range(0..1u32 << k)).collect();
    masks.push(0);
    Arc::new(catalog::intersection_family(&masks, max_size))
}

pub fn generate_crisp_rep(
    rng: &mut impl Rng,
    s1: &Arc<MeetSemilattice>,
    s2: &Arc<MeetSemilattice>,
    density: f64,
    shape: Shape,
) -> CrispRep {
    let (n1, n2) = (s1.len(), s2.len());
    let mut seeds = BitMatrix::new(n1, n2);
    for x in 0..n1 {
        for y in 0..n2 {
            if rng.random_bool(density) {
                seeds.set(x, y, true);
            }
        }
    }
    let (z1, z2) = (s1.zero(), s2.zero());
    match shape {
        Shape::Any => {}
        Shape::PseudoInvertible => *seeds.row_mut(z1) = ambrep_core::bits::empty_set(n2),
        Shape::NotPseudoInvertible if n2 > 1 => {
            let y = pick_nonzero(rng, n2, z2);
            seeds.set(z1, y, true);
        }
        Shape::NotPseudoInvertible => {}
    }
    CrispRep::least_completion(s1.clone(), s2.clone(), &seeds)
}

fn pick_nonzero(rng: &mut impl Rng, n: usize, zero: usize) -> usize {
    let y = rng.random_range(0..n - 1);
    if y >= zero {
        y + 1
    } else {
        y
    }
}

pub fn generate_fuzzy_rep(
    rng: &mut impl Rng,
    s1: &Arc<MeetSemilattice>,
    s2: &Arc<MeetSemilattice>,
    l: &Arc<BoundedLattice>,
    density: f64,
    shape: Shape,
) -> FuzzyRep {
    let (n1, n2, nl) = (s1.len(), s2.len(), l.len());
    let (z1, z2) = (s1.zero(), s2.zero());
    let mut seeds = Vec::new();
    for x in 0..n1 {
        for y in 0..n2 {
            if rng.random_bool(density) && !(shape == Shape::PseudoInvertible && x == z1) {
                seeds.push((x, y, rng.random_range(0..nl)));
            }
        }
    }
    if shape == Shape::NotPseudoInvertible && n2 > 1 && nl > 1 {
        let y = pick_nonzero(rng, n2, z2);
        seeds.push((z1, y, pick_nonzero(rng, nl, l.zero())));
    }
    FuzzyRep::least_completion(s1.clone(), s2.clone(), l.clone(), &seeds)
}

/// A uniformly chosen morphism among the first 64 in lexicographic order.
pub fn generate_morphism(
    rng: &mut impl Rng,
    s1: &Arc<MeetSemilattice>,
    s2: &Arc<MeetSemilattice>,
) -> SemilatticeMorphism {
    let all = enumerate_morphisms(s1, s2, 64);
    let k = rng.random_range(0..all.len());
    all.into_iter().nth(k).expect("the constant zero map always exists")
}

/// Quantales the fuzzy suite draws from, with names usable in the text format.
pub fn catalog_quantales() -> Vec<(&'static str, Quantale)> {
    vec![
        ("Bool", catalog::meet_quantale(catalog::chain_lattice(2))),
        ("MeetC3", catalog::meet_quantale(catalog::chain_lattice(3))),
        ("MeetD4", catalog::meet_quantale(catalog::diamond_lattice())),
        ("Luk4", catalog::lukasiewicz_quantale(4)),
        ("Rel2", catalog::rel2_quantale()),
    ]
}

/// Semilattices mixed into every suite after the generated cases.
pub fn catalog_semilattices() -> Vec<(&'static str, Arc<MeetSemilattice>)> {
    vec![
        ("C1", catalog::chain(1)),
        ("C2", catalog::chain(2)),
        ("C3", catalog::chain(3)),
        ("C5", catalog::chain(5)),
        ("D4", catalog::diamond()),
        ("V3", catalog::vee()),
        ("Fan3", catalog::fan(3)),
        ("M3", catalog::m3_lattice().semilattice().clone()),
        ("N5", catalog::n5_lattice().semilattice().clone()),
        ("Seg2", catalog::segments(2)),
    ]
    .into_iter()
    .map(|(n, s)| (n, Arc::new(s)))
    .collect()
}

const NAME_CHARS: &[char] = &['a', 'b', 'x', 'Z', '0', '7', '_', '^', '\'', '.', '/', '[', ']', '+'];

fn random_name(rng: &mut impl Rng) -> String {
    let len = rng.random_range(1..=4);
    (0..len)
        .map(|_| NAME_CHARS[rng.random_range(0..NAME_CHARS.len())])
        .collect()
}

fn names(rng: &mut impl Rng, max: usize) -> Vec<String> {
    (0..rng.random_range(0..=max)).map(|_| random_name(rng)).collect()
}

fn pairs(rng: &mut impl Rng) -> Vec<(String, String)> {
    (0..rng.random_range(0..4))
        .map(|_| (random_name(rng), random_name(rng)))
        .collect()
}

fn triples(rng: &mut impl Rng) -> Vec<(String, String, String)> {
    (0..rng.random_range(0..4))
        .map(|_| (random_name(rng), random_name(rng), random_name(rng)))
        .collect()
}

/// A syntactically valid document with arbitrary names; references need not
/// resolve.
pub fn generate_document(rng: &mut impl Rng) -> Document {
    let mut doc = Document::default();
    for _ in 0..rng.random_range(1..=6) {
        let item = match rng.random_range(0..5) {
            0 => {
                let mut elements = names(rng, 4);
                elements.insert(0, random_name(rng));
                Item::Poset(PosetDef {
                    name: random_name(rng),
                    elements,
                    order: pairs(rng),
                })
            }
            1 => Item::Map(MapDef {
                name: random_name(rng),
                source: random_name(rng),
                target: random_name(rng),
                entries: pairs(rng),
            }),
            2 => Item::Rep(RepDef {
                name: random_name(rng),
                source: random_name(rng),
                target: random_name(rng),
                pairs: pairs(rng),
            }),
            3 => Item::FuzzyRep(FuzzyRepDef {
                name: random_name(rng),
                source: random_name(rng),
                target: random_name(rng),
                lattice: random_name(rng),
                grades: triples(rng),
            }),
            _ => Item::Quantale(QuantaleDef {
                name: random_name(rng),
                lattice: random_name(rng),
                entries: triples(rng),
            }),
        };
        doc.push(item);
    }
    doc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_deterministic() {
        let a = generate_semilattice(&mut case_rng(1, 3), 6);
        let b = generate_semilattice(&mut case_rng(1, 3), 6);
        assert_eq!(a, b);
        let docs: Vec<Document> = (0..2).map(|_| generate_document(&mut case_rng(1, 0))).collect();
        assert_eq!(docs[0], docs[1]);
    }

    #[test]
    fn shapes_are_respected() {
        let qs = catalog_quantales();
        for case in 0..200 {
            let rng = &mut case_rng(9, case);
            let s1 = generate_semilattice(rng, 6);
            let s2 = generate_semilattice(rng, 6);
            assert!(s1.len() <= 6 && !s1.is_empty());
            let r = generate_crisp_rep(rng, &s1, &s2, 0.2, Shape::PseudoInvertible);
            assert!(r.is_pseudo_invertible());
            let r = generate_crisp_rep(rng, &s1, &s2, 0.2, Shape::NotPseudoInvertible);
            assert_eq!(r.is_pseudo_invertible(), s2.len() == 1);
            let l = qs[case as usize % qs.len()].1.lattice().clone();
            let f = generate_fuzzy_rep(rng, &s1, &s2, &l, 0.2, Shape::PseudoInvertible);
            assert!(f.is_pseudo_invertible());
            let f = generate_fuzzy_rep(rng, &s1, &s2, &l, 0.2, Shape::NotPseudoInvertible);
            assert_eq!(f.is_pseudo_invertible(), s2.len() == 1);
            let m = generate_morphism(rng, &s1, &s2);
            assert_eq!(m.apply(s1.zero()), s2.zero());
        }
    }
}
