//! Law suites: each law is a check on an [`Instance`], run over seeded
//! generated cases followed by catalog cases.

use std::fmt::Write as _;
use std::sync::Arc;

use ambrep_core::bits::set_of;
use ambrep_core::compat::permuted_pairing;
use ambrep_core::crisp::pseudo_inverse_transversal;
use ambrep_core::fuzzy::{
    compose_fuzzy, compose_fuzzy_closure, fuzzy_double_pseudo_inverse, fuzzy_pinv, fuzzy_pseudo_inverse,
    fuzzy_pseudo_inverse_shortcut,
};
use ambrep_core::oracle;
use ambrep_core::{
    canonical_iso, canonical_pairing, dual_map, iso_to_compat, lawson_dual, pseudo_inverse, BitMatrix,
    Compatibility, CrispRep, ElemSet, FinitePoset, FuzzyRep, MeetSemilattice, Quantale,
    SemilatticeMorphism, Ternary,
};
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dsl::{render, Document, Item};
use crate::gen::{
    case_rng, catalog_quantales, catalog_semilattices, generate_crisp_rep, generate_fuzzy_rep,
    generate_morphism, generate_semilattice, GeneratorConfig, Shape,
};
use crate::resolve::{fuzzy_item, map_item, poset_item, quantale_item, rep_item, Resolved};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Order,
    Dual,
    Compat,
    Crisp,
    Fuzzy,
    All,
}

impl Suite {
    pub const MODULES: [Suite; 5] = [Suite::Order, Suite::Dual, Suite::Compat, Suite::Crisp, Suite::Fuzzy];

    pub fn parse(name: &str) -> Option<Suite> {
        Some(match name {
            "order" => Suite::Order,
            "dual" => Suite::Dual,
            "compat" => Suite::Compat,
            "crisp" => Suite::Crisp,
            "fuzzy" => Suite::Fuzzy,
            "all" => Suite::All,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Order => "order",
            Suite::Dual => "dual",
            Suite::Compat => "compat",
            Suite::Crisp => "crisp",
            Suite::Fuzzy => "fuzzy",
            Suite::All => "all",
        }
    }

    fn salt(self) -> u64 {
        match self {
            Suite::Order => 0,
            Suite::Dual => 1,
            Suite::Compat => 2,
            Suite::Crisp => 3,
            Suite::Fuzzy => 4,
            Suite::All => 5,
        }
    }
}

/// The objects one case is about. Laws pick them by position.
#[derive(Debug, Clone, Default)]
pub struct Instance {
    pub carriers: Vec<Arc<MeetSemilattice>>,
    pub maps: Vec<SemilatticeMorphism>,
    pub reps: Vec<CrispRep>,
    pub fuzzy: Vec<FuzzyRep>,
    pub quantale: Option<Quantale>,
    /// A relation on the first three carriers; only the order suite uses it.
    pub ternary: Option<Ternary>,
}

impl Instance {
    fn carrier_name(&self, s: &Arc<MeetSemilattice>) -> String {
        let k = self
            .carriers
            .iter()
            .position(|c| Arc::ptr_eq(c, s))
            .or_else(|| self.carriers.iter().position(|c| **c == **s))
            .expect("objects live over listed carriers");
        format!("S{}", k + 1)
    }

    pub fn to_document(&self) -> Document {
        let mut doc = Document::default();
        for (k, s) in self.carriers.iter().enumerate() {
            doc.push(poset_item(&format!("S{}", k + 1), s.poset()));
        }
        if let Some(q) = &self.quantale {
            doc.push(poset_item("L", q.lattice().poset()));
            doc.push(quantale_item("Q", "L", q));
        }
        for (k, f) in self.maps.iter().enumerate() {
            let (a, b) = (self.carrier_name(f.source()), self.carrier_name(f.target()));
            doc.push(map_item(&format!("f{}", k + 1), &a, &b, f));
        }
        for (k, r) in self.reps.iter().enumerate() {
            let (a, b) = (self.carrier_name(r.source()), self.carrier_name(r.target()));
            doc.push(rep_item(&format!("R{}", k + 1), &a, &b, r));
        }
        for (k, r) in self.fuzzy.iter().enumerate() {
            let (a, b) = (self.carrier_name(r.source()), self.carrier_name(r.target()));
            doc.push(fuzzy_item(&format!("F{}", k + 1), &a, &b, "L", r));
        }
        doc
    }

    /// Replayable text. A ternary relation, if any, follows as comments.
    pub fn to_dsl(&self) -> String {
        let mut text = render(&self.to_document());
        if let Some(t) = &self.ternary {
            let names: Vec<&Arc<MeetSemilattice>> = self.carriers.iter().take(3).collect();
            let _ = writeln!(text, "# ternary relation on S1 x S2 x S3:");
            for (a, b, c) in t.triples() {
                let _ = writeln!(text, "#   ({}, {}, {})", names[0].name(a), names[1].name(b), names[2].name(c));
            }
        }
        text
    }

    /// Carriers are the posets not used as a truth-value lattice; everything
    /// else keeps declaration order.
    pub fn from_resolved(doc: &Document, r: &Resolved) -> Instance {
        let lattices: Vec<&str> = doc
            .items
            .iter()
            .filter_map(|i| match i {
                Item::FuzzyRep(d) => Some(d.lattice.as_str()),
                Item::Quantale(d) => Some(d.lattice.as_str()),
                _ => None,
            })
            .collect();
        let mut inst = Instance::default();
        for item in &doc.items {
            let name = item.name();
            match item {
                Item::Poset(_) if !lattices.contains(&name) => {
                    if let Some(s) = r.semilattices.get(name) {
                        inst.carriers.push(s.clone());
                    }
                }
                Item::Map(_) => inst.maps.push(r.maps[name].clone()),
                Item::Rep(_) => inst.reps.push(r.reps[name].clone()),
                Item::FuzzyRep(_) => inst.fuzzy.push(r.fuzzy[name].clone()),
                Item::Quantale(_) if inst.quantale.is_none() => inst.quantale = Some(r.quantales[name].clone()),
                _ => {}
            }
        }
        inst
    }
}

/// Switches for exercising the harness itself.
#[derive(Debug, Clone, Copy, Default)]
pub struct LawCtx {
    /// Replace every crisp pseudo-inverse by the full relation.
    pub mutate_pinv: bool,
}

impl LawCtx {
    fn pinv_with(&self, r: &CrispRep, p1: &Compatibility, p2: &Compatibility) -> CrispRep {
        if self.mutate_pinv {
            return CrispRep::full(p2.right().clone(), p1.right().clone());
        }
        pseudo_inverse(r, p1, p2).expect("canonical pairings separate")
    }

    fn pinv(&self, r: &CrispRep) -> CrispRep {
        self.pinv_with(r, &canonical_pairing(r.source()), &canonical_pairing(r.target()))
    }

    fn double(&self, r: &CrispRep) -> CrispRep {
        let (p1, p2) = (canonical_pairing(r.source()), canonical_pairing(r.target()));
        let inv = self.pinv_with(r, &p1, &p2);
        self.pinv_with(&inv, &p2.reverse(), &p1.reverse())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Skip,
    Fail(String),
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Outcome::Fail(format!($($fmt)+));
        }
    };
}

type Check = fn(&Instance, &LawCtx) -> Outcome;

pub struct Law {
    pub id: &'static str,
    pub suite: Suite,
    check: Check,
}

impl Law {
    pub fn check(&self, inst: &Instance, ctx: &LawCtx) -> Outcome {
        (self.check)(inst, ctx)
    }
}

const fn law(id: &'static str, suite: Suite, check: Check) -> Law {
    Law { id, suite, check }
}

pub static LAWS: &[Law] = &[
    law("LAW-WB", Suite::Order, order_wb),
    law("LAW-WB-ORDER", Suite::Order, order_wb_props),
    law("LAW-INTERP", Suite::Order, order_interp),
    law("LAW-CLOSURE", Suite::Order, order_closure),
    law("LAW-CUT", Suite::Order, order_cut),
    law("LAW-DUAL-ORACLE", Suite::Dual, dual_oracle),
    law("LAW-DUAL-SIZE", Suite::Dual, dual_size),
    law("LAW-DUAL-ISO", Suite::Dual, dual_iso),
    law("LAW-DUAL-CONTRA", Suite::Dual, dual_contra),
    law("LAW-DUAL-NAT", Suite::Dual, dual_nat),
    law("LAW-DUAL-SEM0", Suite::Dual, dual_sem0),
    law("LAW-TRANS", Suite::Compat, trans_close),
    law("LAW-TRANS-ANTI", Suite::Compat, trans_anti),
    law("LAW-TRANS-FILT", Suite::Compat, trans_filtered),
    law("LAW-POLAR", Suite::Compat, polar),
    law("LAW-SEP-COUNT", Suite::Compat, sep_count),
    law("LAW-ANTI", Suite::Crisp, crisp_anti),
    law("LAW-INV", Suite::Crisp, crisp_inv),
    law("LAW-LEM", Suite::Crisp, crisp_lem),
    law("LAW-CONTRA", Suite::Crisp, crisp_contra),
    law("LAW-ASSOC", Suite::Crisp, crisp_assoc),
    law("LAW-ID", Suite::Crisp, crisp_id),
    law("LAW-EXT", Suite::Crisp, crisp_ext),
    law("LAW-SEMI", Suite::Crisp, crisp_semi),
    law("LAW-PINV-ORACLE", Suite::Crisp, crisp_oracle),
    law("LAW-FANTI", Suite::Fuzzy, fuzzy_anti),
    law("LAW-FINV", Suite::Fuzzy, fuzzy_inv),
    law("LAW-FLEM", Suite::Fuzzy, fuzzy_lem),
    law("LAW-FCONTRA", Suite::Fuzzy, fuzzy_contra),
    law("LAW-FASSOC", Suite::Fuzzy, fuzzy_assoc),
    law("LAW-FID", Suite::Fuzzy, fuzzy_id),
    law("LAW-FCUT", Suite::Fuzzy, fuzzy_cut),
    law("LAW-FEXT", Suite::Fuzzy, fuzzy_ext),
    law("LAW-FDUAL", Suite::Fuzzy, fuzzy_dual),
    law("LAW-FPINV-ORACLE", Suite::Fuzzy, fuzzy_pinv_oracle),
    law("LAW-FCOMP-ORACLE", Suite::Fuzzy, fuzzy_comp_oracle),
];

pub fn find_law(id: &str) -> Option<&'static Law> {
    LAWS.iter().find(|l| l.id == id)
}

pub fn laws_of(suite: Suite) -> impl Iterator<Item = &'static Law> {
    LAWS.iter().filter(move |l| suite == Suite::All || l.suite == suite)
}

// ---- instances ----

fn lower_closure(t: &Ternary, p: [&FinitePoset; 3]) -> Ternary {
    let (a, b, c) = t.dims();
    Ternary::from_fn(a, b, c, |i, j, k| {
        t.triples()
            .any(|(i2, j2, k2)| p[0].leq(i, i2) && p[1].leq(j, j2) && p[2].leq(k, k2))
    })
}

/// The instance a module suite checks at `case`. Cases at and beyond
/// `cfg.cases` put catalog semilattices first.
pub fn instance_for(suite: Suite, cfg: &GeneratorConfig, case: usize) -> Instance {
    assert!(suite != Suite::All);
    let rng = &mut case_rng(cfg.seed, case as u64 * 8 + suite.salt());
    let max = cfg.max_size;
    let catalog = catalog_semilattices();
    let first = |rng: &mut rand_chacha::ChaCha8Rng, max: usize| match case.checked_sub(cfg.cases) {
        Some(j) => catalog[j % catalog.len()].1.clone(),
        None => generate_semilattice(rng, max),
    };
    let mut inst = Instance::default();
    match suite {
        Suite::Order => {
            let s1 = first(rng, max);
            let s2 = generate_semilattice(rng, max.min(4));
            let s3 = generate_semilattice(rng, max.min(3));
            let (a, b, c) = (s1.len(), s2.len(), s3.len());
            let mut t = Ternary::from_fn(a, b, c, |_, _, _| rng.random_bool(0.15));
            if rng.random_bool(0.5) {
                t = lower_closure(&t, [s1.poset(), s2.poset(), s3.poset()]);
            }
            inst.ternary = Some(t);
            inst.carriers = vec![s1, s2, s3];
        }
        Suite::Dual => {
            let s1 = first(rng, max);
            let s2 = generate_semilattice(rng, max);
            let s3 = generate_semilattice(rng, max);
            let f = generate_morphism(rng, &s1, &s2);
            let g = generate_morphism(rng, &s2, &s3);
            inst.carriers = vec![s1, s2, s3];
            inst.maps = vec![f, g];
        }
        Suite::Compat => {
            let s1 = first(rng, max);
            let s2 = if s1.len() <= 4 && rng.random_bool(0.5) {
                let mut perm: Vec<usize> = (0..s1.len()).collect();
                perm.shuffle(rng);
                let names = (0..s1.len()).map(|k| format!("p{k}")).collect();
                permuted_pairing(&s1, &perm, names).expect("relabelled dual").0
            } else {
                generate_semilattice(rng, max.min(4))
            };
            inst.carriers = vec![s1, s2];
        }
        Suite::Crisp => {
            let s: Vec<_> = (0..4).map(|k| if k == 0 { first(rng, max) } else { generate_semilattice(rng, max) }).collect();
            let shape = [Shape::PseudoInvertible, Shape::Any, Shape::NotPseudoInvertible][rng.random_range(0..3)];
            inst.reps = (0..3)
                .map(|k| generate_crisp_rep(rng, &s[k], &s[k + 1], cfg.density, shape))
                .collect();
            inst.maps = vec![generate_morphism(rng, &s[0], &s[1]), generate_morphism(rng, &s[1], &s[2])];
            inst.carriers = s;
        }
        Suite::Fuzzy => {
            let quantales = catalog_quantales();
            let k = cfg.quantale.unwrap_or_else(|| rng.random_range(0..quantales.len()));
            let q = quantales[k % quantales.len()].1.clone();
            let l = q.lattice().clone();
            let s: Vec<_> = (0..4).map(|k| if k == 0 { first(rng, max) } else { generate_semilattice(rng, max) }).collect();
            let shape = [Shape::PseudoInvertible, Shape::Any, Shape::NotPseudoInvertible][rng.random_range(0..3)];
            inst.fuzzy = (0..3)
                .map(|k| generate_fuzzy_rep(rng, &s[k], &s[k + 1], &l, cfg.density, shape))
                .collect();
            inst.reps = (0..2)
                .map(|k| generate_crisp_rep(rng, &s[k], &s[k + 1], cfg.density, shape))
                .collect();
            inst.carriers = s;
            inst.quantale = Some(q);
        }
        Suite::All => unreachable!(),
    }
    inst
}

// ---- order ----

fn subsets(n: usize) -> impl Iterator<Item = ElemSet> {
    (0..1u64 << n).map(move |bits| set_of(n, (0..n).filter(|i| bits >> i & 1 == 1)))
}

fn order_wb(inst: &Instance, _: &LawCtx) -> Outcome {
    for s in &inst.carriers {
        let Ok(oracle) = oracle::wb_oracle(s.poset()) else { continue };
        let prod = s.way_below_table();
        if let Some((x, y)) = prod.first_difference(&oracle) {
            return Outcome::Fail(format!("way-below differs at ({}, {})", s.name(x), s.name(y)));
        }
    }
    Outcome::Pass
}

fn order_wb_props(inst: &Instance, _: &LawCtx) -> Outcome {
    for s in &inst.carriers {
        let n = s.len();
        for x in 0..n {
            for y in 0..n {
                if !s.way_below(x, y) {
                    continue;
                }
                ensure!(s.leq(x, y), "{} << {} but not <=", s.name(x), s.name(y));
                ensure!(x == y || !s.way_below(y, x), "{} and {} way below each other", s.name(x), s.name(y));
                for z in (0..n).filter(|&z| s.way_below(y, z)) {
                    ensure!(s.way_below(x, z), "<< not transitive at {}, {}, {}", s.name(x), s.name(y), s.name(z));
                }
            }
        }
    }
    Outcome::Pass
}

fn order_interp(inst: &Instance, _: &LawCtx) -> Outcome {
    for s in &inst.carriers {
        let n = s.len();
        for a in 0..n {
            for c in (0..n).filter(|&c| s.way_below(a, c)) {
                ensure!(
                    (0..n).any(|b| s.way_below(a, b) && s.way_below(b, c)),
                    "nothing between {} << {}",
                    s.name(a),
                    s.name(c)
                );
            }
        }
    }
    Outcome::Pass
}

fn order_closure(inst: &Instance, _: &LawCtx) -> Outcome {
    let s = &inst.carriers[0];
    let n = s.len();
    if n > 8 {
        return Outcome::Skip;
    }
    let all: Vec<ElemSet> = subsets(n).collect();
    let closed: Vec<ElemSet> = all.iter().map(|a| s.scott_closure(a)).collect();
    for (a, ca) in all.iter().zip(&closed) {
        ensure!(a.is_subset(ca), "closure not extensive on {:?}", s.set_names(a));
        ensure!(s.scott_closure(ca) == *ca, "closure not idempotent on {:?}", s.set_names(a));
        for x in 0..n {
            let mut b = a.clone();
            b.insert(x);
            ensure!(ca.is_subset(&s.scott_closure(&b)), "closure not monotone on {:?}", s.set_names(a));
        }
    }
    Outcome::Pass
}

fn order_cut(inst: &Instance, _: &LawCtx) -> Outcome {
    let Some(t) = &inst.ternary else { return Outcome::Skip };
    let p = |k: usize| inst.carriers[k].poset();
    let report = oracle::cuts_lemma_check(t, p(0), p(1), p(2));
    ensure!(
        report.relation_lower == report.cuts_lower,
        "relation lower: {}, all cuts lower: {}",
        report.relation_lower,
        report.cuts_lower
    );
    Outcome::Pass
}

// ---- dual ----

fn dual_oracle(inst: &Instance, _: &LawCtx) -> Outcome {
    for s in &inst.carriers {
        let Ok(oracle) = oracle::dual_oracle(s) else { continue };
        ensure!(lawson_dual(s) == oracle, "dual of {:?} differs from filter enumeration", s.names());
    }
    Outcome::Pass
}

/// `(S \ 0)^op` with a new bottom at index 0.
fn opposite_with_bottom(s: &MeetSemilattice) -> FinitePoset {
    let rest: Vec<usize> = (0..s.len()).filter(|&x| x != s.zero()).collect();
    let n = rest.len() + 1;
    let names = std::iter::once("_".to_string())
        .chain(rest.iter().map(|&x| s.name(x).to_owned()))
        .collect();
    let leq = BitMatrix::from_fn(n, n, |i, j| i == 0 || j > 0 && s.leq(rest[j - 1], rest[i - 1]));
    FinitePoset::from_leq(names, leq).expect("partial order")
}

fn dual_size(inst: &Instance, _: &LawCtx) -> Outcome {
    for s in &inst.carriers {
        let d = lawson_dual(s);
        ensure!(d.semilattice().len() == s.len(), "|dual| = {} for |S| = {}", d.semilattice().len(), s.len());
        ensure!(
            d.semilattice().is_isomorphic(&opposite_with_bottom(s)),
            "dual of {:?} is not the opposite with a new bottom",
            s.names()
        );
    }
    Outcome::Pass
}

fn dual_iso(inst: &Instance, _: &LawCtx) -> Outcome {
    for s in &inst.carriers {
        let u = canonical_iso(s);
        ensure!(u.is_isomorphism(), "u is not an isomorphism on {:?}", s.names());
        ensure!(u.apply(s.zero()) == u.target().zero(), "u does not send 0 to the bottom");
    }
    Outcome::Pass
}

fn dual_contra(inst: &Instance, _: &LawCtx) -> Outcome {
    let [f, g] = &inst.maps[..] else { return Outcome::Skip };
    let Ok(fg) = f.then(g) else { return Outcome::Skip };
    let lhs = dual_map(&fg).expect("dual of a morphism");
    let rhs = dual_map(g).unwrap().then(&dual_map(f).unwrap()).expect("composable duals");
    ensure!(lhs == rhs, "dual of the composite is {:?}, composite of duals is {:?}", lhs.table(), rhs.table());
    Outcome::Pass
}

fn dual_nat(inst: &Instance, _: &LawCtx) -> Outcome {
    for f in &inst.maps {
        let ff = dual_map(&dual_map(f).unwrap()).unwrap();
        let lhs = canonical_iso(f.source()).then(&ff).expect("composable");
        let rhs = f.then(&canonical_iso(f.target())).expect("composable");
        ensure!(lhs == rhs, "naturality square fails: {:?} vs {:?}", lhs.table(), rhs.table());
    }
    Outcome::Pass
}

fn dual_sem0(inst: &Instance, _: &LawCtx) -> Outcome {
    for f in &inst.maps {
        if let Err(e) = dual_map(f) {
            return Outcome::Fail(format!("dual map rejected: {e}"));
        }
    }
    Outcome::Pass
}

// ---- compat ----

fn with_zero(s: &MeetSemilattice, mut set: ElemSet) -> ElemSet {
    set.insert(s.zero());
    set
}

/// Both sides of the canonical pairing of the first carrier.
fn trans_close(inst: &Instance, _: &LawCtx) -> Outcome {
    let s = &inst.carriers[0];
    let p = canonical_pairing(s);
    let d = p.right();
    for a in subsets(s.len()) {
        let t = p.transversal_of_left(&a);
        ensure!(d.is_lower(&t), "A^⊥ not lower for A = {:?}", s.set_names(&a));
        let back = p.transversal_of_right(&t);
        ensure!(back == with_zero(s, s.scott_closure(&a)), "A^⊥⊥ = {:?} for A = {:?}", s.set_names(&back), s.set_names(&a));
    }
    for b in subsets(d.len()) {
        let t = p.transversal_of_right(&b);
        ensure!(s.is_lower(&t), "B^⊥ not lower for B = {:?}", d.set_names(&b));
        let back = p.transversal_of_left(&t);
        ensure!(back == with_zero(d, d.scott_closure(&b)), "B^⊥⊥ = {:?} for B = {:?}", d.set_names(&back), d.set_names(&b));
    }
    Outcome::Pass
}

fn trans_anti(inst: &Instance, _: &LawCtx) -> Outcome {
    let s = &inst.carriers[0];
    let p = canonical_pairing(s);
    for a in subsets(s.len()) {
        let ta = p.transversal_of_left(&a);
        for x in 0..s.len() {
            let mut b = a.clone();
            b.insert(x);
            ensure!(p.transversal_of_left(&b).is_subset(&ta), "not antitone at {:?} + {}", s.set_names(&a), s.name(x));
        }
    }
    Outcome::Pass
}

/// `(A ∩ B)^⊥ = Cl(A^⊥ ∪ B^⊥)` for closed lower sets `A`, `B`.
fn trans_filtered(inst: &Instance, _: &LawCtx) -> Outcome {
    let s = &inst.carriers[0];
    let p = canonical_pairing(s);
    let d = p.right();
    let lower: Vec<ElemSet> = subsets(s.len()).filter(|a| s.is_lower(a)).collect();
    for a in &lower {
        for b in &lower {
            let mut meet = a.clone();
            meet.intersect_with(b);
            let mut union = p.transversal_of_left(a);
            union.union_with(&p.transversal_of_left(b));
            ensure!(
                p.transversal_of_left(&meet) == d.scott_closure(&union),
                "fails for A = {:?}, B = {:?}",
                s.set_names(a),
                s.set_names(b)
            );
        }
    }
    Outcome::Pass
}

fn polar(inst: &Instance, _: &LawCtx) -> Outcome {
    let s = &inst.carriers[0];
    let p = canonical_pairing(s);
    let back = iso_to_compat(&p.to_iso().expect("canonical pairing separates"), p.right());
    ensure!(back.as_ref() == Ok(&p), "canonical pairing does not survive the round trip");
    let Some(t) = inst.carriers.get(1) else { return Outcome::Pass };
    if s.len() * t.len() > oracle::TABLE_CAP {
        return Outcome::Pass;
    }
    for c in oracle::search_separating(s, t).expect("within cap") {
        let iso = c.to_iso().expect("separating");
        ensure!(iso_to_compat(&iso, t).as_ref() == Ok(&c), "round trip fails for {:?}", c.table());
    }
    Outcome::Pass
}

fn sep_count(inst: &Instance, _: &LawCtx) -> Outcome {
    let [s, t] = &inst.carriers[..] else { return Outcome::Skip };
    if s.len() > 4 || t.len() > 4 {
        return Outcome::Skip;
    }
    let found = oracle::search_separating(s, t).expect("within cap").len();
    let isos = oracle::count_isos_to_dual(s, t).expect("within cap");
    ensure!(found == isos, "{found} separating tables but {isos} isomorphisms");
    Outcome::Pass
}

// ---- crisp ----

fn chain3(inst: &Instance) -> Option<(&CrispRep, &CrispRep, &CrispRep)> {
    match &inst.reps[..] {
        [r, q, t, ..] => Some((r, q, t)),
        _ => None,
    }
}

fn composable(inst: &Instance) -> impl Iterator<Item = (&CrispRep, &CrispRep)> {
    inst.reps.windows(2).map(|w| (&w[0], &w[1])).filter(|(r, q)| r.compose(q).is_ok())
}

fn crisp_anti(inst: &Instance, ctx: &LawCtx) -> Outcome {
    for r in &inst.reps {
        ensure!(ctx.double(r).is_subrep(r), "R^♯♯ is not inside R");
    }
    Outcome::Pass
}

fn crisp_inv(inst: &Instance, ctx: &LawCtx) -> Outcome {
    for r in &inst.reps {
        let rr = ctx.double(r);
        let back = rr == *r;
        ensure!(back == r.is_pseudo_invertible(), "R^♯♯ = R is {back} but the pseudo-invertibility test says {}", r.is_pseudo_invertible());
        ensure!(back == r.has_trivial_zero_row(), "R^♯♯ = R is {back} but the zero row test says otherwise");
        ensure!(rr == r.trim_zero_row(), "R^♯♯ is not R with its zero row trimmed");
    }
    Outcome::Pass
}

fn crisp_lem(inst: &Instance, ctx: &LawCtx) -> Outcome {
    for (r, q) in composable(inst) {
        let lhs = ctx.pinv(q).compose(&ctx.pinv(r)).expect("composable inverses");
        let rhs = ctx.pinv(&r.compose(q).unwrap());
        ensure!(lhs.is_subrep(&rhs), "Q^♯;R^♯ is not inside (R;Q)^♯");
    }
    Outcome::Pass
}

fn crisp_contra(inst: &Instance, ctx: &LawCtx) -> Outcome {
    let mut any = false;
    for (r, q) in composable(inst).filter(|(r, q)| r.is_pseudo_invertible() && q.is_pseudo_invertible()) {
        any = true;
        let rq = r.compose(q).unwrap();
        ensure!(rq.is_pseudo_invertible(), "R;Q is not pseudo-invertible");
        let lhs = ctx.pinv(q).compose(&ctx.pinv(r)).expect("composable inverses");
        ensure!(lhs == ctx.pinv(&rq), "Q^♯;R^♯ differs from (R;Q)^♯");
    }
    if any {
        Outcome::Pass
    } else {
        Outcome::Skip
    }
}

fn crisp_assoc(inst: &Instance, _: &LawCtx) -> Outcome {
    let Some((r, q, t)) = chain3(inst) else { return Outcome::Skip };
    let lhs = r.compose(q).and_then(|rq| rq.compose(t));
    let rhs = q.compose(t).and_then(|qt| r.compose(&qt));
    ensure!(lhs == rhs, "(R;Q);T differs from R;(Q;T)");
    Outcome::Pass
}

fn crisp_id(inst: &Instance, _: &LawCtx) -> Outcome {
    for r in &inst.reps {
        ensure!(CrispRep::identity(r.source().clone()).compose(r).as_ref() == Ok(r), "E;R differs from R");
        ensure!(r.compose(&CrispRep::identity(r.target().clone())).as_ref() == Ok(r), "R;E differs from R");
    }
    Outcome::Pass
}

fn crisp_ext(inst: &Instance, ctx: &LawCtx) -> Outcome {
    for f in &inst.maps {
        let lhs = ctx.pinv(&CrispRep::embed(f));
        let rhs = CrispRep::embed(&dual_map(f).unwrap());
        ensure!(lhs == rhs, "embedding of {:?} does not commute with duality", f.table());
    }
    if let [f, g] = &inst.maps[..] {
        if let Ok(fg) = f.then(g) {
            let lhs = CrispRep::embed(&fg);
            ensure!(CrispRep::embed(f).compose(&CrispRep::embed(g)) == Ok(lhs), "embedding is not functorial");
        }
    }
    Outcome::Pass
}

fn crisp_semi(inst: &Instance, _: &LawCtx) -> Outcome {
    for (r, q) in composable(inst) {
        let closed = r.compose(q).unwrap();
        ensure!(closed.table() == &r.compose_relational(q).unwrap(), "closure changed the relational composite");
        ensure!(Ok(&closed) == oracle::compose_literal(r, q).as_ref(), "composite differs from the literal form");
    }
    Outcome::Pass
}

fn crisp_oracle(inst: &Instance, _: &LawCtx) -> Outcome {
    for r in &inst.reps {
        let (p1, p2) = (canonical_pairing(r.source()), canonical_pairing(r.target()));
        let prod = pseudo_inverse(r, &p1, &p2).unwrap();
        ensure!(Ok(&prod) == oracle::pinv_oracle(r, &p1, &p2).as_ref(), "generator route differs from the oracle");
        ensure!(Ok(&prod) == pseudo_inverse_transversal(r, &p1, &p2).as_ref(), "generator route differs from transversals");
    }
    Outcome::Pass
}

// ---- fuzzy ----

fn quantale(inst: &Instance) -> Option<&Quantale> {
    inst.quantale.as_ref()
}

fn fuzzy_pairs<'a>(inst: &'a Instance, q: &'a Quantale) -> impl Iterator<Item = (&'a FuzzyRep, &'a FuzzyRep)> + 'a {
    inst.fuzzy.windows(2).map(|w| (&w[0], &w[1])).filter(move |(r, m)| compose_fuzzy(r, m, q).is_ok())
}

fn fuzzy_anti(inst: &Instance, _: &LawCtx) -> Outcome {
    for r in &inst.fuzzy {
        ensure!(fuzzy_double_pseudo_inverse(r).is_subrep(r), "R^♯♯ is not below R");
    }
    Outcome::Pass
}

fn fuzzy_inv(inst: &Instance, _: &LawCtx) -> Outcome {
    for r in &inst.fuzzy {
        let rr = fuzzy_double_pseudo_inverse(r);
        let back = rr == *r;
        ensure!(back == r.is_pseudo_invertible(), "R^♯♯ = R is {back} but the pseudo-invertibility test says {}", r.is_pseudo_invertible());
        ensure!(back == r.has_trivial_zero_row(), "R^♯♯ = R is {back} but the zero row test says otherwise");
        ensure!(rr == r.trim_zero_row(), "R^♯♯ is not R with its zero row trimmed");
    }
    Outcome::Pass
}

fn fuzzy_lem(inst: &Instance, _: &LawCtx) -> Outcome {
    let Some(q) = quantale(inst) else { return Outcome::Skip };
    let qh = q.opposite();
    for (r, m) in fuzzy_pairs(inst, q) {
        let lhs = compose_fuzzy(&fuzzy_pinv(m), &fuzzy_pinv(r), &qh).expect("composable inverses");
        let rhs = fuzzy_pinv(&compose_fuzzy(r, m, q).unwrap());
        ensure!(lhs.is_subrep(&rhs), "Q^♯ R^♯ is not below (R Q)^♯");
    }
    Outcome::Pass
}

fn fuzzy_contra(inst: &Instance, _: &LawCtx) -> Outcome {
    let Some(q) = quantale(inst) else { return Outcome::Skip };
    let qh = q.opposite();
    let mut any = false;
    for (r, m) in fuzzy_pairs(inst, q).filter(|(r, m)| r.is_pseudo_invertible() && m.is_pseudo_invertible()) {
        any = true;
        let rm = compose_fuzzy(r, m, q).unwrap();
        ensure!(rm.is_pseudo_invertible(), "R Q is not pseudo-invertible");
        let lhs = compose_fuzzy(&fuzzy_pinv(m), &fuzzy_pinv(r), &qh).unwrap();
        ensure!(lhs == fuzzy_pinv(&rm), "Q^♯ R^♯ differs from (R Q)^♯");
    }
    if any {
        Outcome::Pass
    } else {
        Outcome::Skip
    }
}

fn fuzzy_assoc(inst: &Instance, _: &LawCtx) -> Outcome {
    let Some(q) = quantale(inst) else { return Outcome::Skip };
    let [r, m, t, ..] = &inst.fuzzy[..] else { return Outcome::Skip };
    let lhs = compose_fuzzy(r, m, q).and_then(|rm| compose_fuzzy(&rm, t, q));
    let rhs = compose_fuzzy(m, t, q).and_then(|mt| compose_fuzzy(r, &mt, q));
    ensure!(lhs == rhs, "(R Q) T differs from R (Q T)");
    for (a, b) in fuzzy_pairs(inst, q) {
        ensure!(compose_fuzzy(a, b, q) == compose_fuzzy_closure(a, b, q), "matrix product differs from the closure form");
    }
    Outcome::Pass
}

fn fuzzy_id(inst: &Instance, _: &LawCtx) -> Outcome {
    let Some(q) = quantale(inst) else { return Outcome::Skip };
    let mut any = false;
    for r in inst.fuzzy.iter().filter(|r| r.is_pseudo_invertible()) {
        any = true;
        let e1 = FuzzyRep::identity(r.source().clone(), q);
        let e2 = FuzzyRep::identity(r.target().clone(), q);
        ensure!(compose_fuzzy(&e1, r, q).as_ref() == Ok(r), "E R differs from R");
        ensure!(compose_fuzzy(r, &e2, q).as_ref() == Ok(r), "R E differs from R");
    }
    if any {
        Outcome::Pass
    } else {
        Outcome::Skip
    }
}

fn fuzzy_cut(inst: &Instance, _: &LawCtx) -> Outcome {
    for r in &inst.fuzzy {
        let (p1, p2) = (canonical_pairing(r.source()), canonical_pairing(r.target()));
        let inv = fuzzy_pinv(r);
        let l = r.lattice();
        for a in 0..l.len() {
            let expected = if a == l.zero() {
                CrispRep::full(p2.right().clone(), p1.right().clone())
            } else {
                pseudo_inverse(&r.alpha_cut(a), &p1, &p2).unwrap()
            };
            ensure!(inv.alpha_cut(a) == expected, "cut at {} differs", l.name(a));
        }
    }
    Outcome::Pass
}

fn fuzzy_ext(inst: &Instance, _: &LawCtx) -> Outcome {
    let Some(q) = quantale(inst) else { return Outcome::Skip };
    let l = q.lattice();
    for r in &inst.reps {
        let er = FuzzyRep::embed_crisp(r, l.clone());
        ensure!(fuzzy_pinv(&er) == FuzzyRep::embed_crisp(&ambrep_core::pinv(r), l.clone()), "embedding does not commute with inversion");
    }
    for (r, t) in composable(inst) {
        let lhs = FuzzyRep::embed_crisp(&r.compose(t).unwrap(), l.clone());
        let rhs = compose_fuzzy(&FuzzyRep::embed_crisp(r, l.clone()), &FuzzyRep::embed_crisp(t, l.clone()), q);
        ensure!(rhs.as_ref() == Ok(&lhs), "embedding does not preserve composition");
    }
    Outcome::Pass
}

fn fuzzy_dual(inst: &Instance, _: &LawCtx) -> Outcome {
    for r in &inst.fuzzy {
        let (p1, p2) = (canonical_pairing(r.source()), canonical_pairing(r.target()));
        let inv = fuzzy_pseudo_inverse(r, &p1, &p2).unwrap();
        let back = fuzzy_pseudo_inverse(&inv, &p2.reverse(), &p1.reverse()).unwrap();
        if r.is_pseudo_invertible() {
            ensure!(back == *r, "inverting twice does not return R");
        } else {
            ensure!(back == r.trim_zero_row(), "inverting twice does not trim the zero row");
        }
    }
    Outcome::Pass
}

fn fuzzy_pinv_oracle(inst: &Instance, _: &LawCtx) -> Outcome {
    for r in &inst.fuzzy {
        let (p1, p2) = (canonical_pairing(r.source()), canonical_pairing(r.target()));
        let prod = fuzzy_pseudo_inverse(r, &p1, &p2).unwrap();
        ensure!(Ok(&prod) == oracle::fuzzy_pinv_oracle(r, &p1, &p2).as_ref(), "cut route differs from the oracle");
        ensure!(Ok(&prod) == fuzzy_pseudo_inverse_shortcut(r, &p1, &p2).as_ref(), "cut route differs from the grade shortcut");
    }
    Outcome::Pass
}

fn fuzzy_comp_oracle(inst: &Instance, _: &LawCtx) -> Outcome {
    let Some(q) = quantale(inst) else { return Outcome::Skip };
    for (r, m) in fuzzy_pairs(inst, q) {
        let Ok(expanded) = oracle::compose_expanded(r, m, q) else { continue };
        ensure!(compose_fuzzy(r, m, q).as_ref() == Ok(&expanded), "matrix product differs from the expanded form");
    }
    Outcome::Pass
}

// ---- runner ----

pub const MAX_WITNESSES: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub case: usize,
    pub detail: String,
    /// The instance in the text format.
    pub dsl: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawResult {
    pub id: String,
    pub passed: usize,
    pub failed: usize,
    pub witnesses: Vec<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub laws: Vec<LawResult>,
}

impl LawReport {
    pub fn failures(&self) -> usize {
        self.laws.iter().map(|l| l.failed).sum()
    }

    pub fn law(&self, id: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("suite {}, seed {}, {} cases\n", self.suite, self.seed, self.cases);
        for l in &self.laws {
            let status = if l.failed == 0 { "ok  " } else { "FAIL" };
            let _ = writeln!(s, "{status} {:<17} passed {:>4}  failed {:>4}", l.id, l.passed, l.failed);
            for w in &l.witnesses {
                let _ = writeln!(s, "  case {}: {}", w.case, w.detail);
                for line in w.dsl.lines() {
                    let _ = writeln!(s, "    {line}");
                }
            }
        }
        s
    }
}

/// Runs the laws of one module over `cfg.cases` generated cases plus one
/// case per catalog semilattice.
fn run_module(suite: Suite, cfg: &GeneratorConfig, ctx: &LawCtx) -> Vec<LawResult> {
    let laws: Vec<&Law> = laws_of(suite).collect();
    let total = cfg.cases + catalog_semilattices().len();
    let outcomes: Vec<Vec<Outcome>> = (0..total)
        .into_par_iter()
        .map(|case| {
            let inst = instance_for(suite, cfg, case);
            laws.iter().map(|l| l.check(&inst, ctx)).collect()
        })
        .collect();
    laws.iter()
        .enumerate()
        .map(|(k, law)| {
            let mut res = LawResult {
                id: law.id.to_owned(),
                passed: 0,
                failed: 0,
                witnesses: Vec::new(),
            };
            for (case, row) in outcomes.iter().enumerate() {
                match &row[k] {
                    Outcome::Pass => res.passed += 1,
                    Outcome::Skip => {}
                    Outcome::Fail(detail) => {
                        res.failed += 1;
                        if res.witnesses.len() < MAX_WITNESSES {
                            res.witnesses.push(Counterexample {
                                case,
                                detail: detail.clone(),
                                dsl: instance_for(suite, cfg, case).to_dsl(),
                            });
                        }
                    }
                }
            }
            res
        })
        .collect()
}

pub fn run_suite(suite: Suite, cfg: &GeneratorConfig, ctx: &LawCtx) -> LawReport {
    let modules: Vec<Suite> = match suite {
        Suite::All => Suite::MODULES.to_vec(),
        s => vec![s],
    };
    LawReport {
        suite: suite.name().to_owned(),
        seed: cfg.seed,
        cases: cfg.cases,
        laws: modules.into_iter().flat_map(|m| run_module(m, cfg, ctx)).collect(),
    }
}

/// Runs one law on objects read back from text.
pub fn replay(id: &str, inst: &Instance, ctx: &LawCtx) -> Option<Outcome> {
    let law = find_law(id)?;
    if inst.carriers.is_empty() {
        return Some(Outcome::Skip);
    }
    Some(law.check(inst, ctx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;
    use crate::resolve::{resolve, ResolveOptions};

    fn cfg(seed: u64, cases: usize) -> GeneratorConfig {
        GeneratorConfig {
            seed,
            cases,
            ..GeneratorConfig::default()
        }
    }

    #[test]
    fn every_suite_passes_a_short_run() {
        let report = run_suite(Suite::All, &cfg(3, 12), &LawCtx::default());
        assert_eq!(report.failures(), 0, "{}", report.to_text());
        assert_eq!(report.laws.len(), LAWS.len());
    }

    #[test]
    fn instances_survive_the_text_format() {
        for suite in Suite::MODULES {
            for case in [0, 5, 20] {
                let inst = instance_for(suite, &cfg(11, 10), case);
                let text = inst.to_dsl();
                let doc = parse(&text).unwrap();
                let r = resolve(&doc, ResolveOptions::default()).unwrap();
                let back = Instance::from_resolved(&doc, &r);
                assert_eq!(back.carriers.len(), inst.carriers.len());
                for (a, b) in back.carriers.iter().zip(&inst.carriers) {
                    assert_eq!(**a, **b);
                }
                assert_eq!(back.reps, inst.reps);
                assert_eq!(back.fuzzy, inst.fuzzy);
                assert_eq!(back.maps, inst.maps);
                assert_eq!(back.quantale, inst.quantale);
            }
        }
    }

    #[test]
    fn mutation_breaks_inversion() {
        let ctx = LawCtx { mutate_pinv: true };
        let report = run_suite(Suite::Crisp, &cfg(5, 20), &ctx);
        let inv = report.law("LAW-INV").unwrap();
        assert!(inv.failed > 0);
        let w = &inv.witnesses[0];
        let doc = parse(&w.dsl).unwrap();
        let inst = Instance::from_resolved(&doc, &resolve(&doc, ResolveOptions::default()).unwrap());
        assert!(matches!(replay("LAW-INV", &inst, &ctx), Some(Outcome::Fail(_))));
        assert_eq!(replay("LAW-INV", &inst, &LawCtx::default()), Some(Outcome::Pass));
    }
}
