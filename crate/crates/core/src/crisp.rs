//! Crisp ambiguous representations `R ⊆ S1 x S2`: rows are non-empty lower
//! sets, columns are upper sets. `(x, y) ∈ R` reads "hidden `x` may show up
//! as visible `y`".

use std::sync::Arc;

use crate::bits::BitMatrix;
use crate::compat::{canonical_pairing, Compatibility};
use crate::dual::{same_carrier, SemilatticeMorphism};
use crate::error::{Error, Result, Witness};
use crate::order::MeetSemilattice;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrispRep {
    source: Arc<MeetSemilattice>,
    target: Arc<MeetSemilattice>,
    table: BitMatrix,
}

fn clause(clause: &'static str, witness: Witness) -> Error {
    Error::RepViolated { clause, witness }
}

impl CrispRep {
    /// Validates the table. Clauses are checked in the order row-nonempty,
    /// row-lower, column-upper.
    pub fn new(
        source: Arc<MeetSemilattice>,
        target: Arc<MeetSemilattice>,
        table: BitMatrix,
    ) -> Result<Self> {
        if table.rows() != source.len() || table.cols() != target.len() {
            return Err(Error::DimensionMismatch {
                expected: (source.len(), target.len()),
                found: (table.rows(), table.cols()),
            });
        }
        for x in 0..source.len() {
            if table.row(x).is_clear() {
                return Err(clause("row-nonempty", Witness::new().with("x", source.name(x))));
            }
        }
        for (x, y) in table.pairs() {
            if let Some(y2) = target.down(y).ones().find(|&y2| !table.get(x, y2)) {
                return Err(clause(
                    "row-lower",
                    Witness::new()
                        .with("x", source.name(x))
                        .with("y", target.name(y))
                        .with("y'", target.name(y2)),
                ));
            }
        }
        for (x, y) in table.pairs() {
            if let Some(x2) = source.up(x).ones().find(|&x2| !table.get(x2, y)) {
                return Err(clause(
                    "column-upper",
                    Witness::new()
                        .with("x", source.name(x))
                        .with("y", target.name(y))
                        .with("x'", source.name(x2)),
                ));
            }
        }
        Ok(Self {
            source,
            target,
            table,
        })
    }

    /// Least representation containing the given pairs.
    pub fn least_completion(
        source: Arc<MeetSemilattice>,
        target: Arc<MeetSemilattice>,
        seeds: &BitMatrix,
    ) -> Self {
        let mut table = BitMatrix::new(source.len(), target.len());
        let z2 = target.zero();
        for x in 0..source.len() {
            table.set(x, z2, true);
        }
        for (x, y) in seeds.pairs() {
            for x2 in source.up(x).ones() {
                table.row_mut(x2).union_with(target.down(y));
            }
        }
        Self::new(source, target, table).expect("closure of seeds is a representation")
    }

    pub fn full(source: Arc<MeetSemilattice>, target: Arc<MeetSemilattice>) -> Self {
        let table = BitMatrix::full(source.len(), target.len());
        Self {
            source,
            target,
            table,
        }
    }

    /// `E_S = {(x, y) | y <= x}`.
    pub fn identity(s: Arc<MeetSemilattice>) -> Self {
        let table = BitMatrix::from_fn(s.len(), s.len(), |x, y| s.leq(y, x));
        Self {
            source: s.clone(),
            target: s,
            table,
        }
    }

    /// `If = {(x, y) | y <= f(x)}`.
    pub fn embed(f: &SemilatticeMorphism) -> Self {
        let (s1, s2) = (f.source(), f.target());
        let table = BitMatrix::from_fn(s1.len(), s2.len(), |x, y| s2.leq(y, f.apply(x)));
        Self {
            source: s1.clone(),
            target: s2.clone(),
            table,
        }
    }

    /// Inverse of [`embed`](Self::embed) on its image.
    pub fn to_morphism(&self) -> Result<SemilatticeMorphism> {
        let mut map = Vec::with_capacity(self.source.len());
        for x in 0..self.source.len() {
            match self.target.greatest_of(self.table.row(x)) {
                Some(y) => map.push(y),
                None => {
                    let row = self.target.set_names(self.table.row(x)).join(" ");
                    return Err(Error::NotFunctional(
                        Witness::new()
                            .with("x", self.source.name(x))
                            .with("row", format!("{{{row}}}")),
                    ));
                }
            }
        }
        SemilatticeMorphism::new(self.source.clone(), self.target.clone(), map).map_err(|e| {
            let detail = match e {
                Error::MorphismViolated { clause, witness } => format!("{clause}: {witness}"),
                other => other.to_string(),
            };
            Error::NotFunctional(Witness::new().with("max-map", detail))
        })
    }

    pub fn source(&self) -> &Arc<MeetSemilattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<MeetSemilattice> {
        &self.target
    }

    pub fn table(&self) -> &BitMatrix {
        &self.table
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.table.get(x, y)
    }

    pub fn is_subrep(&self, other: &CrispRep) -> bool {
        self.table.is_subset(&other.table)
    }

    /// `R;Q`: `z ∈ Cl(xRQ)`.
    pub fn compose(&self, q: &CrispRep) -> Result<CrispRep> {
        if !same_carrier(&self.target, &q.source) {
            return Err(Error::MiddleMismatch);
        }
        let image = self.table.product(&q.table);
        let mut table = BitMatrix::new(self.source.len(), q.target.len());
        for x in 0..self.source.len() {
            *table.row_mut(x) = q.target.scott_closure(image.row(x));
        }
        CrispRep::new(self.source.clone(), q.target.clone(), table)
    }

    /// Plain relational composition `RQ`.
    pub fn compose_relational(&self, q: &CrispRep) -> Result<BitMatrix> {
        if !same_carrier(&self.target, &q.source) {
            return Err(Error::MiddleMismatch);
        }
        Ok(self.table.product(&q.table))
    }

    /// Literal check of: `(x, y) ∈ R` and `y' ≪ y` imply some `x' ≪ x`
    /// with `(x', y') ∈ R`. Returns a failing `(x, y, y')`.
    pub fn pseudo_invertibility_witness(&self) -> Option<Witness> {
        let wb1 = self.source.way_below_table();
        let wb2 = self.target.way_below_table();
        for (x, y) in self.table.pairs() {
            for y2 in (0..self.target.len()).filter(|&y2| wb2.get(y2, y)) {
                let found = (0..self.source.len()).any(|x2| wb1.get(x2, x) && self.get(x2, y2));
                if !found {
                    return Some(
                        Witness::new()
                            .with("x", self.source.name(x))
                            .with("y", self.target.name(y))
                            .with("y'", self.target.name(y2)),
                    );
                }
            }
        }
        None
    }

    pub fn is_pseudo_invertible(&self) -> bool {
        self.pseudo_invertibility_witness().is_none()
    }

    /// Finite criterion: the zero row is `{0}`.
    pub fn has_trivial_zero_row(&self) -> bool {
        self.table.row(self.source.zero()).count_ones(..) == 1
    }

    /// `R` with its zero row replaced by `{0}`.
    pub fn trim_zero_row(&self) -> CrispRep {
        let mut out = self.clone();
        let n2 = self.target.len();
        *out.table.row_mut(self.source.zero()) =
            crate::bits::set_of(n2, [self.target.zero()]);
        out
    }

    /// A column whose minimal elements have a meet outside it, as
    /// `(x1, x2, y)`. `None` means `R` is induced by a `Sem0` arrow.
    pub fn sem0_witness(&self) -> Option<Witness> {
        for y in 0..self.target.len() {
            let col = self.table.column(y);
            let mins = self.source.minimal_elements(&col);
            for (i, &a) in mins.iter().enumerate() {
                for &b in &mins[i + 1..] {
                    if !col.contains(self.source.meet(a, b)) {
                        return Some(
                            Witness::new()
                                .with("x1", self.source.name(a))
                                .with("x2", self.source.name(b))
                                .with("y", self.target.name(y)),
                        );
                    }
                }
            }
        }
        None
    }

    pub fn is_sem0_arrow(&self) -> bool {
        self.sem0_witness().is_none()
    }
}

fn check_pairings(r: &CrispRep, p1: &Compatibility, p2: &Compatibility) -> Result<()> {
    if !same_carrier(p1.left(), &r.source) || !same_carrier(p2.left(), &r.target) {
        return Err(Error::CarrierMismatch(
            "compatibilities must start at the source and target of the representation",
        ));
    }
    p1.require_separating()?;
    p2.require_separating()
}

/// `R^♯ ⊆ Ŝ2 x Ŝ1` by generators: `(ŷ, x̂)` is in unless `P1x̂ = ↑s` and
/// either `P2ŷ = ∅` or `P2ŷ = ↑t` with `(s, t) ∉ R`.
pub fn pseudo_inverse(r: &CrispRep, p1: &Compatibility, p2: &Compatibility) -> Result<CrispRep> {
    check_pairings(r, p1, p2)?;
    let (d1, d2) = (p1.right(), p2.right());
    let table = BitMatrix::from_fn(d2.len(), d1.len(), |yh, xh| match p1.left_generator(xh) {
        None => true,
        Some(s) => match p2.left_generator(yh) {
            None => false,
            Some(t) => r.get(s, t),
        },
    });
    CrispRep::new(d2.clone(), d1.clone(), table)
}

/// `ŷR^♯ = {x | ŷ ∈ (xR)^⊥}^⊥`.
pub fn pseudo_inverse_transversal(
    r: &CrispRep,
    p1: &Compatibility,
    p2: &Compatibility,
) -> Result<CrispRep> {
    check_pairings(r, p1, p2)?;
    let (d1, d2) = (p1.right(), p2.right());
    let perps: Vec<_> = (0..r.source.len())
        .map(|x| p2.transversal_of_left(r.table.row(x)))
        .collect();
    let mut table = BitMatrix::new(d2.len(), d1.len());
    for yh in 0..d2.len() {
        let hidden = crate::bits::set_of(
            r.source.len(),
            (0..r.source.len()).filter(|&x| perps[x].contains(yh)),
        );
        *table.row_mut(yh) = p1.transversal_of_left(&hidden);
    }
    CrispRep::new(d2.clone(), d1.clone(), table)
}

/// Pseudo-inverse with respect to the canonical pairings.
pub fn pinv(r: &CrispRep) -> CrispRep {
    let p1 = canonical_pairing(&r.source);
    let p2 = canonical_pairing(&r.target);
    pseudo_inverse(r, &p1, &p2).expect("canonical pairings are separating")
}

/// `R^♯♯`, pseudo-inverting back through the reversed pairings.
pub fn double_pseudo_inverse(r: &CrispRep) -> CrispRep {
    let p1 = canonical_pairing(&r.source);
    let p2 = canonical_pairing(&r.target);
    let once = pseudo_inverse(r, &p1, &p2).expect("canonical pairings are separating");
    pseudo_inverse(&once, &p2.reverse(), &p1.reverse()).expect("reversed pairings are separating")
}
