//! The segments example and the gallery of duals of small lattices.

use std::fmt;
use std::sync::Arc;

use ambrep_core::catalog::{self, segment_endpoints, segment_name};
use ambrep_core::{lawson_dual, BitMatrix, BoundedLattice, Compatibility, CrispRep, Error, FinitePoset, MeetSemilattice, Witness};
use thiserror::Error as ThisError;

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum DemoError {
    #[error("grid size {0} is not a positive multiple of 6")]
    BadGrid(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentsReport {
    pub n: usize,
    pub size: usize,
    pub zero: String,
    /// `(a, b, a ∧ b)` for the outer thirds.
    pub meet: (String, String, String),
    pub r_arrow: bool,
    pub r_witness: Option<Witness>,
    pub r_prime_arrow: bool,
    pub r_prime_witness: Option<Witness>,
}

fn show(arrow: bool, w: &Option<Witness>) -> String {
    match w {
        Some(w) => format!("{arrow}, witness {w}"),
        None => arrow.to_string(),
    }
}

impl fmt::Display for SegmentsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Seg{}: {} segments under reverse inclusion, zero {}", self.n, self.size, self.zero)?;
        let (a, b, m) = &self.meet;
        writeln!(f, "meet({a}, {b}) = {m}")?;
        writeln!(f, "R  = 1 on segments missing 1/2: Sem0 arrow {}", show(self.r_arrow, &self.r_witness))?;
        writeln!(
            f,
            "R' = 1 on segments inside (1/3, 2/3): Sem0 arrow {}",
            show(self.r_prime_arrow, &self.r_prime_witness)
        )
    }
}

/// `Seg_n` with the two representations into `C2`.
pub fn demo_segments(n: usize) -> Result<SegmentsReport, DemoError> {
    if n == 0 || !n.is_multiple_of(6) {
        return Err(DemoError::BadGrid(n));
    }
    let seg = Arc::new(catalog::segments(n));
    let c2 = Arc::new(catalog::chain(2));
    let ends = segment_endpoints(n);
    let rep = |one: &dyn Fn(usize, usize) -> bool| {
        let table = BitMatrix::from_fn(seg.len(), 2, |x, y| y == 0 || one(ends[x].0, ends[x].1));
        CrispRep::new(seg.clone(), c2.clone(), table).expect("column of 1 is an upper set")
    };
    let r = rep(&|i, j| !(2 * i <= n && n <= 2 * j));
    let r_prime = rep(&|i, j| 3 * i > n && 3 * j < 2 * n);
    let index = |i: usize, j: usize| ends.iter().position(|&e| e == (i, j)).unwrap();
    let (a, b) = (index(0, n / 3), index(2 * n / 3, n));
    Ok(SegmentsReport {
        n,
        size: seg.len(),
        zero: seg.name(seg.zero()).to_owned(),
        meet: (
            segment_name(0, n / 3, n),
            segment_name(2 * n / 3, n, n),
            seg.name(seg.meet(a, b)).to_owned(),
        ),
        r_arrow: r.is_sem0_arrow(),
        r_witness: r.sem0_witness(),
        r_prime_arrow: r_prime.is_sem0_arrow(),
        r_prime_witness: r_prime.sem0_witness(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GalleryEntry {
    pub name: String,
    pub dual_elements: Vec<String>,
    pub dual_covers: Vec<(String, String)>,
    pub iso_to_opposite: bool,
    pub reason: Option<String>,
    /// Why `[y << x]` is not a compatibility between `L` and `L^op`.
    pub compat_failure: Option<String>,
}

impl fmt::Display for GalleryEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.name)?;
        writeln!(f, "  dual elements: {}", self.dual_elements.join(" "))?;
        let covers: Vec<String> = self.dual_covers.iter().map(|(a, b)| format!("{a} < {b}")).collect();
        writeln!(f, "  dual covers: {}", covers.join(", "))?;
        match &self.reason {
            Some(r) => writeln!(f, "  dual iso to opposite: false ({r})")?,
            None => writeln!(f, "  dual iso to opposite: {}", self.iso_to_opposite)?,
        }
        match &self.compat_failure {
            Some(c) => writeln!(f, "  [y << x] compatibility: {c}"),
            None => writeln!(f, "  [y << x] compatibility: valid"),
        }
    }
}

/// `L^op` as a semilattice, named so that its zero reads `0'` and its top `1'`.
pub fn primed_opposite(l: &BoundedLattice) -> MeetSemilattice {
    let names = (0..l.len())
        .map(|x| match x {
            _ if x == l.one() => "0'".to_string(),
            _ if x == l.zero() => "1'".to_string(),
            _ => format!("{}'", l.name(x)),
        })
        .collect();
    let op = l.poset().opposite();
    MeetSemilattice::new(FinitePoset::from_leq(names, op.leq_matrix()).expect("renamed order"))
        .expect("opposite of a lattice has meets")
}

fn gallery_entry(name: &str, l: &BoundedLattice) -> GalleryEntry {
    let s = Arc::new(l.semilattice().clone());
    let dual = lawson_dual(&s);
    let d = dual.semilattice();
    let op = l.poset().opposite();
    let iso = d.is_isomorphic(&op);
    let reason = match (iso, d.top()) {
        (true, _) => None,
        (false, None) => Some("dual has no greatest element".to_string()),
        (false, Some(_)) => Some("no order isomorphism".to_string()),
    };
    let right = Arc::new(primed_opposite(l));
    let table = BitMatrix::from_fn(l.len(), l.len(), |x, y| s.way_below(y, x));
    let compat_failure = match Compatibility::new(s.clone(), right, table) {
        Ok(_) => None,
        Err(Error::AxiomViolated { axiom, witness }) => Some(format!("axiom {axiom} fails at {witness}")),
        Err(e) => Some(e.to_string()),
    };
    GalleryEntry {
        name: name.to_owned(),
        dual_elements: d.names().to_vec(),
        dual_covers: d
            .covers()
            .into_iter()
            .map(|(a, b)| (d.name(a).to_owned(), d.name(b).to_owned()))
            .collect(),
        iso_to_opposite: iso,
        reason,
        compat_failure,
    }
}

/// Names the top `1`, as the chains already do.
fn top_named_one(l: BoundedLattice) -> BoundedLattice {
    let mut names = l.names().to_vec();
    names[l.one()] = "1".into();
    BoundedLattice::new(FinitePoset::from_leq(names, l.leq_matrix()).unwrap()).unwrap()
}

pub fn gallery_lattices() -> Vec<(&'static str, BoundedLattice)> {
    [
        ("C2", catalog::chain_lattice(2)),
        ("C3", catalog::chain_lattice(3)),
        ("C4", catalog::chain_lattice(4)),
        ("C5", catalog::chain_lattice(5)),
        ("D4", catalog::diamond_lattice()),
        ("M3", catalog::m3_lattice()),
        ("B3", catalog::boolean_lattice(3)),
    ]
    .into_iter()
    .map(|(n, l)| (n, top_named_one(l)))
    .collect()
}

pub fn demo_dual_gallery() -> Vec<GalleryEntry> {
    gallery_lattices().iter().map(|(n, l)| gallery_entry(n, l)).collect()
}

pub fn render_gallery(entries: &[GalleryEntry]) -> String {
    entries.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seg6_example() {
        let r = demo_segments(6).unwrap();
        assert_eq!(r.size, 28);
        assert_eq!(r.zero, "[0..1]");
        assert_eq!(r.meet, ("[0..2/6]".into(), "[4/6..1]".into(), "[0..1]".into()));
        assert!(!r.r_arrow && r.r_prime_arrow);
        let w = r.r_witness.unwrap();
        assert_eq!((w.get("x1"), w.get("x2"), w.get("y")), (Some("[0..2/6]"), Some("[4/6..1]"), Some("1")));
        assert_eq!(demo_segments(4), Err(DemoError::BadGrid(4)));
        assert!(demo_segments(12).unwrap().r_prime_arrow);
    }

    #[test]
    fn gallery_claims() {
        for e in demo_dual_gallery() {
            assert_eq!(e.iso_to_opposite, e.name.starts_with('C'), "{e}");
            assert_eq!(e.compat_failure.as_deref(), Some("axiom (1) fails at x=1, y=0'"), "{e}");
        }
        let d4 = &demo_dual_gallery()[4];
        assert_eq!(d4.reason.as_deref(), Some("dual has no greatest element"));
    }
}
