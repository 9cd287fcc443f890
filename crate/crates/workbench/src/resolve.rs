//! Turns a parsed [`Document`] into validated objects, and objects back into
//! items.

use std::collections::BTreeMap;
use std::sync::Arc;

use ambrep_core::{
    BitMatrix, BoundedLattice, CrispRep, FinitePoset, FuzzyRep, MeetSemilattice, Quantale,
    SemilatticeMorphism,
};
use thiserror::Error;

use crate::dsl::{Document, FuzzyRepDef, Item, MapDef, PosetDef, QuantaleDef, RepDef, Span};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolveErrorKind {
    #[error("duplicate definition")]
    Duplicate,
    #[error("no {0} with this name")]
    Unknown(&'static str),
    #[error("unknown element of `{0}`")]
    UnknownElement(String),
    #[error("{0}")]
    Invalid(ambrep_core::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: `{name}`: {kind}")]
pub struct ResolveError {
    pub name: String,
    pub line: usize,
    pub column: usize,
    pub kind: ResolveErrorKind,
}

impl ResolveError {
    /// 1 for objects that violate their invariants, 2 for broken references.
    pub fn exit_code(&self) -> i32 {
        match self.kind {
            ResolveErrorKind::Invalid(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ResolveOptions {
    /// Replace invalid representations by their least valid completion.
    pub normalize: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Poset,
    Map,
    Rep,
    FuzzyRep,
    Quantale,
}

#[derive(Debug, Clone, Default)]
pub struct Resolved {
    pub order: Vec<(String, Kind)>,
    pub posets: BTreeMap<String, FinitePoset>,
    pub semilattices: BTreeMap<String, Arc<MeetSemilattice>>,
    pub lattices: BTreeMap<String, Arc<BoundedLattice>>,
    pub maps: BTreeMap<String, SemilatticeMorphism>,
    pub reps: BTreeMap<String, CrispRep>,
    pub fuzzy: BTreeMap<String, FuzzyRep>,
    pub quantales: BTreeMap<String, Quantale>,
    semilattice_errors: BTreeMap<String, ambrep_core::Error>,
    lattice_errors: BTreeMap<String, ambrep_core::Error>,
}

struct Ctx<'a> {
    out: Resolved,
    span: Span,
    name: &'a str,
}

impl Ctx<'_> {
    fn err(&self, name: &str, kind: ResolveErrorKind) -> ResolveError {
        ResolveError {
            name: name.to_owned(),
            line: self.span.line,
            column: self.span.column,
            kind,
        }
    }

    fn invalid(&self, e: ambrep_core::Error) -> ResolveError {
        self.err(self.name, ResolveErrorKind::Invalid(e))
    }

    fn semilattice(&self, name: &str) -> Result<Arc<MeetSemilattice>, ResolveError> {
        if let Some(s) = self.out.semilattices.get(name) {
            return Ok(s.clone());
        }
        match self.out.semilattice_errors.get(name) {
            Some(e) => Err(self.err(name, ResolveErrorKind::Invalid(e.clone()))),
            None => Err(self.err(name, ResolveErrorKind::Unknown("poset"))),
        }
    }

    fn lattice(&self, name: &str) -> Result<Arc<BoundedLattice>, ResolveError> {
        if let Some(l) = self.out.lattices.get(name) {
            return Ok(l.clone());
        }
        match self.out.lattice_errors.get(name) {
            Some(e) => Err(self.err(name, ResolveErrorKind::Invalid(e.clone()))),
            None => Err(self.err(name, ResolveErrorKind::Unknown("poset"))),
        }
    }

    fn element(&self, p: &FinitePoset, owner: &str, e: &str) -> Result<usize, ResolveError> {
        p.index_of(e)
            .ok_or_else(|| self.err(e, ResolveErrorKind::UnknownElement(owner.to_owned())))
    }
}

pub fn resolve(doc: &Document, opts: ResolveOptions) -> Result<Resolved, ResolveError> {
    let mut ctx = Ctx {
        out: Resolved::default(),
        span: Span::default(),
        name: "",
    };
    for (item, span) in doc.items.iter().zip(&doc.spans) {
        ctx.span = *span;
        ctx.name = item.name();
        if ctx.out.order.iter().any(|(n, _)| n == item.name()) {
            return Err(ctx.err(item.name(), ResolveErrorKind::Duplicate));
        }
        let kind = match item {
            Item::Poset(d) => {
                resolve_poset(&mut ctx, d)?;
                Kind::Poset
            }
            Item::Map(d) => {
                resolve_map(&mut ctx, d)?;
                Kind::Map
            }
            Item::Rep(d) => {
                resolve_rep(&mut ctx, d, opts)?;
                Kind::Rep
            }
            Item::FuzzyRep(d) => {
                resolve_fuzzy(&mut ctx, d, opts)?;
                Kind::FuzzyRep
            }
            Item::Quantale(d) => {
                resolve_quantale(&mut ctx, d)?;
                Kind::Quantale
            }
        };
        ctx.out.order.push((item.name().to_owned(), kind));
    }
    Ok(ctx.out)
}

fn resolve_poset(ctx: &mut Ctx, d: &PosetDef) -> Result<(), ResolveError> {
    let poset = FinitePoset::from_relation(&d.elements, &d.order).map_err(|e| ctx.invalid(e))?;
    match MeetSemilattice::new(poset.clone()) {
        Ok(s) => {
            ctx.out.semilattices.insert(d.name.clone(), Arc::new(s));
        }
        Err(e) => {
            ctx.out.semilattice_errors.insert(d.name.clone(), e);
        }
    }
    match BoundedLattice::new(poset.clone()) {
        Ok(l) => {
            ctx.out.lattices.insert(d.name.clone(), Arc::new(l));
        }
        Err(e) => {
            ctx.out.lattice_errors.insert(d.name.clone(), e);
        }
    }
    ctx.out.posets.insert(d.name.clone(), poset);
    Ok(())
}

fn resolve_map(ctx: &mut Ctx, d: &MapDef) -> Result<(), ResolveError> {
    let (s, t) = (ctx.semilattice(&d.source)?, ctx.semilattice(&d.target)?);
    let mut table = vec![t.zero(); s.len()];
    for (a, b) in &d.entries {
        table[ctx.element(&s, &d.source, a)?] = ctx.element(&t, &d.target, b)?;
    }
    let f = SemilatticeMorphism::new(s, t, table).map_err(|e| ctx.invalid(e))?;
    ctx.out.maps.insert(d.name.clone(), f);
    Ok(())
}

fn resolve_rep(ctx: &mut Ctx, d: &RepDef, opts: ResolveOptions) -> Result<(), ResolveError> {
    let (s, t) = (ctx.semilattice(&d.source)?, ctx.semilattice(&d.target)?);
    let mut table = BitMatrix::new(s.len(), t.len());
    for x in 0..s.len() {
        table.set(x, t.zero(), true);
    }
    for (a, b) in &d.pairs {
        table.set(ctx.element(&s, &d.source, a)?, ctx.element(&t, &d.target, b)?, true);
    }
    let r = if opts.normalize {
        CrispRep::least_completion(s, t, &table)
    } else {
        CrispRep::new(s, t, table).map_err(|e| ctx.invalid(e))?
    };
    ctx.out.reps.insert(d.name.clone(), r);
    Ok(())
}

fn resolve_fuzzy(ctx: &mut Ctx, d: &FuzzyRepDef, opts: ResolveOptions) -> Result<(), ResolveError> {
    let (s, t) = (ctx.semilattice(&d.source)?, ctx.semilattice(&d.target)?);
    let l = ctx.lattice(&d.lattice)?;
    let n2 = t.len();
    let mut grades = vec![l.zero(); s.len() * n2];
    for x in 0..s.len() {
        grades[x * n2 + t.zero()] = l.one();
    }
    let mut seeds = Vec::new();
    for (x, y, g) in &d.grades {
        let (x, y) = (ctx.element(&s, &d.source, x)?, ctx.element(&t, &d.target, y)?);
        let g = ctx.element(&l, &d.lattice, g)?;
        if y != t.zero() {
            grades[x * n2 + y] = g;
        }
        seeds.push((x, y, g));
    }
    let r = if opts.normalize {
        FuzzyRep::least_completion(s, t, l, &seeds)
    } else {
        FuzzyRep::new(s, t, l, grades).map_err(|e| ctx.invalid(e))?
    };
    ctx.out.fuzzy.insert(d.name.clone(), r);
    Ok(())
}

fn resolve_quantale(ctx: &mut Ctx, d: &QuantaleDef) -> Result<(), ResolveError> {
    let l = ctx.lattice(&d.lattice)?;
    let n = l.len();
    let mut mul = vec![l.zero(); n * n];
    for (a, b, c) in &d.entries {
        let (a, b) = (ctx.element(&l, &d.lattice, a)?, ctx.element(&l, &d.lattice, b)?);
        mul[a * n + b] = ctx.element(&l, &d.lattice, c)?;
    }
    let q = Quantale::new(l, mul).map_err(|e| ctx.invalid(e))?;
    ctx.out.quantales.insert(d.name.clone(), q);
    Ok(())
}

impl Resolved {
    /// Name of the declared semilattice that `s` is, by identity or structure.
    pub fn name_of(&self, s: &Arc<MeetSemilattice>) -> Option<&str> {
        self.semilattices
            .iter()
            .find(|(_, t)| Arc::ptr_eq(t, s))
            .or_else(|| self.semilattices.iter().find(|(_, t)| ***t == **s))
            .map(|(n, _)| n.as_str())
    }

    pub fn names_of(&self, kind: Kind) -> impl Iterator<Item = &str> {
        self.order
            .iter()
            .filter(move |(_, k)| *k == kind)
            .map(|(n, _)| n.as_str())
    }
}

pub fn poset_item(name: &str, p: &FinitePoset) -> Item {
    Item::Poset(PosetDef {
        name: name.to_owned(),
        elements: p.names().to_vec(),
        order: p
            .covers()
            .into_iter()
            .map(|(a, b)| (p.name(a).to_owned(), p.name(b).to_owned()))
            .collect(),
    })
}

/// Lists every entry that is not already the default zero.
pub fn map_item(name: &str, source: &str, target: &str, f: &SemilatticeMorphism) -> Item {
    let (s, t) = (f.source(), f.target());
    Item::Map(MapDef {
        name: name.to_owned(),
        source: source.to_owned(),
        target: target.to_owned(),
        entries: (0..s.len())
            .filter(|&x| f.apply(x) != t.zero())
            .map(|x| (s.name(x).to_owned(), t.name(f.apply(x)).to_owned()))
            .collect(),
    })
}

/// Lists every pair except the mandatory ones at the target zero.
pub fn rep_item(name: &str, source: &str, target: &str, r: &CrispRep) -> Item {
    let (s, t) = (r.source(), r.target());
    Item::Rep(RepDef {
        name: name.to_owned(),
        source: source.to_owned(),
        target: target.to_owned(),
        pairs: r
            .table()
            .pairs()
            .filter(|&(_, y)| y != t.zero())
            .map(|(x, y)| (s.name(x).to_owned(), t.name(y).to_owned()))
            .collect(),
    })
}

pub fn fuzzy_item(name: &str, source: &str, target: &str, lattice: &str, r: &FuzzyRep) -> Item {
    let (s, t, l) = (r.source(), r.target(), r.lattice());
    let mut grades = Vec::new();
    for x in 0..s.len() {
        for y in (0..t.len()).filter(|&y| y != t.zero()) {
            let g = r.grade(x, y);
            if g != l.zero() {
                grades.push((s.name(x).to_owned(), t.name(y).to_owned(), l.name(g).to_owned()));
            }
        }
    }
    Item::FuzzyRep(FuzzyRepDef {
        name: name.to_owned(),
        source: source.to_owned(),
        target: target.to_owned(),
        lattice: lattice.to_owned(),
        grades,
    })
}

pub fn quantale_item(name: &str, lattice: &str, q: &Quantale) -> Item {
    let l = q.lattice();
    let n = l.len();
    let mut entries = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let c = q.mul(a, b);
            if c != l.zero() {
                entries.push((l.name(a).to_owned(), l.name(b).to_owned(), l.name(c).to_owned()));
            }
        }
    }
    Item::Quantale(QuantaleDef {
        name: name.to_owned(),
        lattice: lattice.to_owned(),
        entries,
    })
}

/// Parses and resolves in one step.
pub fn load(text: &str, opts: ResolveOptions) -> Result<(Document, Resolved), crate::Failure> {
    let doc = crate::dsl::parse(text).map_err(crate::Failure::Parse)?;
    let resolved = resolve(&doc, opts).map_err(crate::Failure::Resolve)?;
    Ok((doc, resolved))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse, render};
    use ambrep_core::catalog;

    fn load(text: &str, normalize: bool) -> Result<Resolved, ResolveError> {
        resolve(&parse(text).unwrap(), ResolveOptions { normalize })
    }

    #[test]
    fn chain_and_rep() {
        let r = load(
            "poset C2 { elements: z o; order: z < o; }\nrep R : C2 => C2 { o |> o; }",
            false,
        )
        .unwrap();
        let c2 = &r.semilattices["C2"];
        assert_eq!(c2.names(), ["z", "o"]);
        assert_eq!(r.reps["R"], CrispRep::identity(c2.clone()));
        assert!(r.lattices.contains_key("C2"));
    }

    #[test]
    fn strict_mode_rejects_and_normalize_completes() {
        let text = "poset C3 { elements: 0 m 1; order: 0 < m, m < 1; }\nrep R : C3 => C3 { m |> 1; }";
        let e = load(text, false).unwrap_err();
        assert_eq!(e.name, "R");
        assert_eq!(e.exit_code(), 1);
        let ResolveErrorKind::Invalid(ambrep_core::Error::RepViolated { clause, .. }) = e.kind else {
            panic!("{e}")
        };
        assert_eq!(clause, "row-lower");
        let r = load(text, true).unwrap();
        assert_eq!(r.reps["R"].table().count_ones(), 1 + 3 + 3);
    }

    #[test]
    fn reference_errors() {
        let e = load("rep R : A => A { }", false).unwrap_err();
        assert_eq!((e.name.as_str(), e.exit_code()), ("A", 2));
        let e = load("poset A { elements: 0; }\nposet A { elements: 0; }", false).unwrap_err();
        assert_eq!((e.kind, e.line), (ResolveErrorKind::Duplicate, 2));
        let e = load("poset A { elements: 0; }\nmap f : A -> A { q |-> 0; }", false).unwrap_err();
        assert_eq!(e.name, "q");
        let e = load("poset V { elements: a b; }\nrep R : V => V { }", false).unwrap_err();
        assert_eq!((e.name.as_str(), e.exit_code()), ("V", 1));
    }

    #[test]
    fn maps_default_to_zero() {
        let r = load(
            "poset C3 { elements: 0 m 1; order: 0 < m, m < 1; }\nmap f : C3 -> C3 { 1 |-> m; }",
            false,
        )
        .unwrap();
        assert_eq!(r.maps["f"].table(), [0, 0, 1]);
    }

    #[test]
    fn fuzzy_and_quantale() {
        let r = load(
            "poset C2 { elements: 0 1; order: 0 < 1; }
             poset L { elements: 0 h 1; order: 0 < h, h < 1; }
             quantale Q over L { mul(h, h) = h; mul(h, 1) = h; mul(1, h) = h; mul(1, 1) = 1; }
             fuzzyrep F : C2 => C2 over L { (1, 1) = h; }",
            false,
        )
        .unwrap();
        assert_eq!(r.fuzzy["F"].grades(), [2, 0, 2, 1]);
        assert_eq!(r.quantales["Q"].unit(), 2);
    }

    #[test]
    fn exported_items_resolve_to_the_same_objects() {
        let d4 = Arc::new(catalog::diamond());
        let full = CrispRep::full(d4.clone(), d4.clone());
        let q = catalog::lukasiewicz_quantale(4);
        let l = q.lattice().clone();
        let f = FuzzyRep::least_completion(d4.clone(), d4.clone(), l.clone(), &[(1, 3, 2)]);
        let doc = Document::from_items(vec![
            poset_item("D", d4.poset()),
            poset_item("L", l.poset()),
            rep_item("R", "D", "D", &full),
            fuzzy_item("F", "D", "D", "L", &f),
            quantale_item("Q", "L", &q),
        ]);
        let text = render(&doc);
        let r = resolve(&parse(&text).unwrap(), ResolveOptions::default()).unwrap();
        assert_eq!(*r.semilattices["D"], *d4);
        assert_eq!(r.reps["R"].table(), full.table());
        assert_eq!(r.fuzzy["F"].grades(), f.grades());
        assert_eq!(r.quantales["Q"].table(), q.table());
    }
}
