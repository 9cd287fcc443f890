//! Compatibilities `P : S x S' -> {0,1}`, separation, the correspondence
//! with isomorphisms `S -> S'^`, and transversals.

use std::sync::Arc;

use crate::bits::{full_set, BitMatrix, ElemSet};
use crate::dual::{lawson_dual, same_carrier, DualSemilattice, SemilatticeMorphism};
use crate::error::{Error, Result, Witness};
use crate::order::MeetSemilattice;

/// A validated compatibility. `xPy = 1` marks statements that cannot hold
/// together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Compatibility {
    left: Arc<MeetSemilattice>,
    right: Arc<MeetSemilattice>,
    table: BitMatrix,
    columns: BitMatrix,
    separating: bool,
}

fn axiom(axiom: &'static str, witness: Witness) -> Error {
    Error::AxiomViolated { axiom, witness }
}

impl Compatibility {
    /// Checks axioms (1) and (2); reports the first violation with a witness.
    pub fn new(
        left: Arc<MeetSemilattice>,
        right: Arc<MeetSemilattice>,
        table: BitMatrix,
    ) -> Result<Self> {
        if table.rows() != left.len() || table.cols() != right.len() {
            return Err(Error::DimensionMismatch {
                expected: (left.len(), right.len()),
                found: (table.rows(), table.cols()),
            });
        }
        let (n, m) = (left.len(), right.len());
        let (z, z2) = (left.zero(), right.zero());
        let w = |x: usize, y: usize| {
            Witness::new()
                .with("x", left.name(x))
                .with("y", right.name(y))
        };
        for y in 0..m {
            if table.get(z, y) {
                return Err(axiom("(1)", w(z, y)));
            }
        }
        for x in 0..n {
            if table.get(x, z2) {
                return Err(axiom("(1)", w(x, z2)));
            }
        }
        for y in 0..m {
            for x1 in 0..n {
                for x2 in 0..n {
                    let meet = table.get(left.meet(x1, x2), y);
                    if meet != (table.get(x1, y) && table.get(x2, y)) {
                        return Err(axiom(
                            "(1)",
                            Witness::new()
                                .with("x1", left.name(x1))
                                .with("x2", left.name(x2))
                                .with("y", right.name(y)),
                        ));
                    }
                }
            }
        }
        for x in 0..n {
            for y1 in 0..m {
                for y2 in 0..m {
                    let meet = table.get(x, right.meet(y1, y2));
                    if meet != (table.get(x, y1) && table.get(x, y2)) {
                        return Err(axiom(
                            "(1)",
                            Witness::new()
                                .with("x", left.name(x))
                                .with("y1", right.name(y1))
                                .with("y2", right.name(y2)),
                        ));
                    }
                }
            }
        }
        // Monotonicity is Scott continuity on finite carriers; it already
        // follows from meet preservation but is checked on its own.
        for (x, y) in table.pairs() {
            if let Some(x2) = left.up(x).ones().find(|&x2| !table.get(x2, y)) {
                return Err(axiom("(2)", w(x, y).with("x'", left.name(x2))));
            }
            if let Some(y2) = right.up(y).ones().find(|&y2| !table.get(x, y2)) {
                return Err(axiom("(2)", w(x, y).with("y'", right.name(y2))));
            }
        }
        let columns = table.transpose();
        let separating = distinct_rows(&table).is_none() && distinct_rows(&columns).is_none();
        Ok(Self {
            left,
            right,
            table,
            columns,
            separating,
        })
    }

    pub fn left(&self) -> &Arc<MeetSemilattice> {
        &self.left
    }

    pub fn right(&self) -> &Arc<MeetSemilattice> {
        &self.right
    }

    pub fn table(&self) -> &BitMatrix {
        &self.table
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.table.get(x, y)
    }

    /// `xP ⊆ S'`
    pub fn row(&self, x: usize) -> &ElemSet {
        self.table.row(x)
    }

    /// `Py ⊆ S`
    pub fn column(&self, y: usize) -> &ElemSet {
        self.columns.row(y)
    }

    pub fn is_separating(&self) -> bool {
        self.separating
    }

    /// Two rows (`x1`, `x2`) or two columns (`y1`, `y2`) that coincide.
    pub fn separation_witness(&self) -> Option<Witness> {
        if let Some((a, b)) = distinct_rows(&self.table) {
            return Some(
                Witness::new()
                    .with("x1", self.left.name(a))
                    .with("x2", self.left.name(b)),
            );
        }
        distinct_rows(&self.columns).map(|(a, b)| {
            Witness::new()
                .with("y1", self.right.name(a))
                .with("y2", self.right.name(b))
        })
    }

    pub fn require_separating(&self) -> Result<()> {
        match self.separation_witness() {
            None => Ok(()),
            Some(w) => Err(Error::NotSeparating(w)),
        }
    }

    pub fn reverse(&self) -> Compatibility {
        Compatibility {
            left: self.right.clone(),
            right: self.left.clone(),
            table: self.columns.clone(),
            columns: self.table.clone(),
            separating: self.separating,
        }
    }

    /// Least element of the filter `Py ⊆ S`, `None` when it is empty.
    pub fn left_generator(&self, y: usize) -> Option<usize> {
        let col = self.column(y);
        if col.is_clear() {
            None
        } else {
            Some(self.left.least_of(col).expect("columns are principal filters"))
        }
    }

    /// Least element of the filter `xP ⊆ S'`, `None` when it is empty.
    pub fn right_generator(&self, x: usize) -> Option<usize> {
        let row = self.row(x);
        if row.is_clear() {
            None
        } else {
            Some(self.right.least_of(row).expect("rows are principal filters"))
        }
    }

    /// `A^⊥ = {y ∈ S' | xPy = 0 for all x ∈ A}` for `A ⊆ S`.
    pub fn transversal_of_left(&self, a: &ElemSet) -> ElemSet {
        let mut out = full_set(self.right.len());
        for x in a.ones() {
            out.difference_with(self.row(x));
        }
        out
    }

    /// `B^⊥ = {x ∈ S | xPy = 0 for all y ∈ B}` for `B ⊆ S'`.
    pub fn transversal_of_right(&self, b: &ElemSet) -> ElemSet {
        let mut out = full_set(self.left.len());
        for y in b.ones() {
            out.difference_with(self.column(y));
        }
        out
    }

    /// The isomorphism `S -> S'^`, `x ↦ xP`.
    pub fn to_iso(&self) -> Result<SemilatticeMorphism> {
        self.require_separating()?;
        let dual = lawson_dual(&self.right);
        let map = (0..self.left.len())
            .map(|x| {
                dual.index_of_filter(self.row(x))
                    .expect("rows of a compatibility are proper filters")
            })
            .collect();
        let iso = SemilatticeMorphism::new(self.left.clone(), dual.semilattice().clone(), map)?;
        debug_assert!(iso.is_isomorphism());
        Ok(iso)
    }
}

fn distinct_rows(m: &BitMatrix) -> Option<(usize, usize)> {
    for a in 0..m.rows() {
        for b in (a + 1)..m.rows() {
            if m.row(a) == m.row(b) {
                return Some((a, b));
            }
        }
    }
    None
}

/// `P(x, F) = [x ∈ F]` between `S` and its Lawson dual.
pub fn canonical_pairing(s: &Arc<MeetSemilattice>) -> Compatibility {
    canonical_pairing_with(&lawson_dual(s))
}

pub fn canonical_pairing_with(dual: &DualSemilattice) -> Compatibility {
    let s = dual.base();
    let table = BitMatrix::from_fn(s.len(), dual.filters().len(), |x, f| dual.filter(f).contains(x));
    Compatibility::new(s.clone(), dual.semilattice().clone(), table)
        .expect("membership pairing is a compatibility")
}

/// `P(x, y) = [y ∈ i(x)]` for an isomorphism `i : S -> S'^`.
pub fn iso_to_compat(
    iso: &SemilatticeMorphism,
    right: &Arc<MeetSemilattice>,
) -> Result<Compatibility> {
    let dual = lawson_dual(right);
    if !same_carrier(iso.target(), dual.semilattice()) {
        return Err(Error::CarrierMismatch("iso must land in the dual of the right carrier"));
    }
    if !iso.is_isomorphism() {
        let w = Witness::new().with("map", format!("{:?}", iso.table()));
        return Err(Error::NotIso(w));
    }
    let s = iso.source();
    let table = BitMatrix::from_fn(s.len(), right.len(), |x, y| {
        dual.filter(iso.apply(x)).contains(y)
    });
    Compatibility::new(s.clone(), right.clone(), table)
}

/// Separating compatibility between `S` and a relabelled copy of `S^`
/// whose element `k` is dual element `perm[k]`.
pub fn permuted_pairing(
    s: &Arc<MeetSemilattice>,
    perm: &[usize],
    names: Vec<String>,
) -> Result<(Arc<MeetSemilattice>, Compatibility)> {
    let dual = lawson_dual(s);
    let ds = dual.semilattice();
    let n = ds.len();
    let leq = BitMatrix::from_fn(n, n, |a, b| ds.leq(perm[a], perm[b]));
    let copy = Arc::new(MeetSemilattice::new(crate::order::FinitePoset::from_leq(names, leq)?)?);
    let table = BitMatrix::from_fn(s.len(), n, |x, k| dual.filter(perm[k]).contains(x));
    let p = Compatibility::new(s.clone(), copy.clone(), table)?;
    Ok((copy, p))
}
