//! Lattice-valued ambiguous representations, stored as grade tables
//! `g : S1 x S2 -> L` where the raw triple set is `{(x, y, a) | a <= g(x, y)}`.

use std::sync::Arc;

use crate::bits::{set_of, BitMatrix, Ternary};
use crate::compat::{canonical_pairing, Compatibility};
use crate::crisp::{pseudo_inverse, CrispRep};
use crate::dual::same_carrier;
use crate::error::{Error, Result, Witness};
use crate::order::{BoundedLattice, MeetSemilattice};

fn same_lattice(a: &Arc<BoundedLattice>, b: &Arc<BoundedLattice>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A finite unital quantale. The unit need not be the top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quantale {
    lattice: Arc<BoundedLattice>,
    mul: Vec<usize>,
    unit: usize,
}

fn qerr(axiom: &'static str, witness: Witness) -> Error {
    Error::QuantaleViolated { axiom, witness }
}

impl Quantale {
    /// Validates `mul` and locates its two-sided unit.
    pub fn new(lattice: impl Into<Arc<BoundedLattice>>, mul: Vec<usize>) -> Result<Self> {
        let lattice = lattice.into();
        let n = lattice.len();
        check_shape(&lattice, &mul)?;
        let unit = (0..n)
            .find(|&e| (0..n).all(|a| mul[e * n + a] == a && mul[a * n + e] == a))
            .ok_or_else(|| qerr("unit", Witness::new().with("unit", "none")))?;
        Self::with_unit(lattice, mul, unit)
    }

    /// Validates `mul` with the claimed unit.
    pub fn with_unit(
        lattice: impl Into<Arc<BoundedLattice>>,
        mul: Vec<usize>,
        unit: usize,
    ) -> Result<Self> {
        let lattice = lattice.into();
        check_shape(&lattice, &mul)?;
        let n = lattice.len();
        let name = |a: usize| lattice.name(a).to_owned();
        if let Some((a, b, c)) = lattice.distributivity_witness() {
            return Err(qerr(
                "distributive",
                Witness::new().with("a", name(a)).with("b", name(b)).with("c", name(c)),
            ));
        }
        let m = |a: usize, b: usize| mul[a * n + b];
        let z = lattice.zero();
        for a in 0..n {
            if m(a, z) != z || m(z, a) != z {
                return Err(qerr("zero", Witness::new().with("a", name(a))));
            }
        }
        for a in 0..n {
            if m(unit, a) != a || m(a, unit) != a {
                return Err(qerr(
                    "unit",
                    Witness::new().with("unit", name(unit)).with("a", name(a)),
                ));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let w = || Witness::new().with("a", name(a)).with("b", name(b)).with("c", name(c));
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(qerr("associative", w()));
                    }
                    let j = lattice.join(b, c);
                    if m(a, j) != lattice.join(m(a, b), m(a, c)) {
                        return Err(qerr("sup-left", w()));
                    }
                    if m(j, a) != lattice.join(m(b, a), m(c, a)) {
                        return Err(qerr("sup-right", w()));
                    }
                }
            }
        }
        Ok(Self { lattice, mul, unit })
    }

    pub fn lattice(&self) -> &Arc<BoundedLattice> {
        &self.lattice
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.lattice.len() + b]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn table(&self) -> &[usize] {
        &self.mul
    }

    /// `a *^ b = b * a`.
    pub fn opposite(&self) -> Quantale {
        let n = self.lattice.len();
        let mul = (0..n * n).map(|k| self.mul(k % n, k / n)).collect();
        Quantale {
            lattice: self.lattice.clone(),
            mul,
            unit: self.unit,
        }
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.lattice.len();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The unit is the top.
    pub fn is_integral(&self) -> bool {
        self.unit == self.lattice.one()
    }
}

fn check_shape(lattice: &BoundedLattice, mul: &[usize]) -> Result<()> {
    let n = lattice.len();
    if mul.len() != n * n {
        return Err(Error::DimensionMismatch {
            expected: (n, n),
            found: (mul.len() / n.max(1), n),
        });
    }
    if let Some(k) = mul.iter().position(|&v| v >= n) {
        return Err(qerr(
            "closed",
            Witness::new()
                .with("a", lattice.name(k / n))
                .with("b", lattice.name(k % n)),
        ));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzyRep {
    source: Arc<MeetSemilattice>,
    target: Arc<MeetSemilattice>,
    lattice: Arc<BoundedLattice>,
    grades: Vec<usize>,
}

fn ferr(clause: &'static str, witness: Witness) -> Error {
    Error::FuzzyRepViolated { clause, witness }
}

impl FuzzyRep {
    /// Validates the grade table: `g(x, 0) = 1`, monotone in `x`,
    /// antitone in `y`.
    pub fn new(
        source: Arc<MeetSemilattice>,
        target: Arc<MeetSemilattice>,
        lattice: Arc<BoundedLattice>,
        grades: Vec<usize>,
    ) -> Result<Self> {
        let (n1, n2) = (source.len(), target.len());
        if grades.len() != n1 * n2 {
            return Err(Error::DimensionMismatch {
                expected: (n1, n2),
                found: (grades.len() / n2.max(1), n2),
            });
        }
        if grades.iter().any(|&g| g >= lattice.len()) {
            return Err(ferr("grade", Witness::new().with("grade", "out of range")));
        }
        let g = |x: usize, y: usize| grades[x * n2 + y];
        let w = |x: usize, y: usize| {
            Witness::new()
                .with("x", source.name(x))
                .with("y", target.name(y))
                .with("g", lattice.name(g(x, y)))
        };
        let (z2, one) = (target.zero(), lattice.one());
        for x in 0..n1 {
            if g(x, z2) != one {
                return Err(ferr("(b)", w(x, z2)));
            }
        }
        for x in 0..n1 {
            for y in 0..n2 {
                if let Some(x2) = source.up(x).ones().find(|&x2| !lattice.leq(g(x, y), g(x2, y))) {
                    return Err(ferr("(a')", w(x, y).with("x'", source.name(x2))));
                }
                if let Some(y2) = target.down(y).ones().find(|&y2| !lattice.leq(g(x, y), g(x, y2))) {
                    return Err(ferr("(b')", w(x, y).with("y'", target.name(y2))));
                }
            }
        }
        Ok(Self {
            source,
            target,
            lattice,
            grades,
        })
    }

    pub fn from_fn(
        source: Arc<MeetSemilattice>,
        target: Arc<MeetSemilattice>,
        lattice: Arc<BoundedLattice>,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n2 = target.len();
        let grades = (0..source.len() * n2).map(|k| f(k / n2, k % n2)).collect();
        Self::new(source, target, lattice, grades)
    }

    /// Least representation with `g(x, y) >= a` for every seed `(x, y, a)`.
    pub fn least_completion(
        source: Arc<MeetSemilattice>,
        target: Arc<MeetSemilattice>,
        lattice: Arc<BoundedLattice>,
        seeds: &[(usize, usize, usize)],
    ) -> Self {
        let (n1, n2) = (source.len(), target.len());
        let mut grades = vec![lattice.zero(); n1 * n2];
        for x in 0..n1 {
            grades[x * n2 + target.zero()] = lattice.one();
        }
        for &(x, y, a) in seeds {
            for x2 in source.up(x).ones() {
                for y2 in target.down(y).ones() {
                    let cell = &mut grades[x2 * n2 + y2];
                    *cell = lattice.join(*cell, a);
                }
            }
        }
        Self::new(source, target, lattice, grades).expect("closure of seeds is a representation")
    }

    /// Grade 1 on `R`, 0 elsewhere.
    pub fn embed_crisp(r: &CrispRep, lattice: Arc<BoundedLattice>) -> Self {
        let (one, zero) = (lattice.one(), lattice.zero());
        Self::from_fn(r.source().clone(), r.target().clone(), lattice, |x, y| {
            if r.get(x, y) {
                one
            } else {
                zero
            }
        })
        .expect("embedded crisp representation")
    }

    /// Neutral element for `compose_fuzzy` on pseudo-invertible arguments:
    /// the unit on `0 < y <= x`, 1 at `y = 0`. For integral quantales this
    /// is the embedded `E_S`.
    pub fn identity(s: Arc<MeetSemilattice>, q: &Quantale) -> Self {
        let l = q.lattice().clone();
        let z = s.zero();
        let (one, zero, unit) = (l.one(), l.zero(), q.unit());
        let s2 = s.clone();
        Self::from_fn(s.clone(), s, l, move |x, y| {
            if y == z {
                one
            } else if s2.leq(y, x) {
                unit
            } else {
                zero
            }
        })
        .expect("identity representation")
    }

    /// Reads a raw triple set, checking clauses (a), (b), (c).
    pub fn from_triples(
        source: Arc<MeetSemilattice>,
        target: Arc<MeetSemilattice>,
        lattice: Arc<BoundedLattice>,
        rel: &Ternary,
    ) -> Result<Self> {
        let (n1, n2, nl) = (source.len(), target.len(), lattice.len());
        if rel.dims() != (n1, n2, nl) {
            return Err(Error::DimensionMismatch {
                expected: (n1, n2 * nl),
                found: (rel.dims().0, rel.dims().1 * rel.dims().2),
            });
        }
        let w = |x: usize, y: usize, a: usize| {
            Witness::new()
                .with("x", source.name(x))
                .with("y", target.name(y))
                .with("a", lattice.name(a))
        };
        for (x, y, a) in rel.triples() {
            for x2 in source.up(x).ones() {
                for y2 in target.down(y).ones() {
                    for a2 in lattice.down(a).ones() {
                        if !rel.get(x2, y2, a2) {
                            return Err(ferr("(a)", w(x2, y2, a2)));
                        }
                    }
                }
            }
        }
        for x in 0..n1 {
            for a in 0..nl {
                if !rel.get(x, target.zero(), a) {
                    return Err(ferr("(b)", w(x, target.zero(), a)));
                }
            }
            for y in 0..n2 {
                if !rel.get(x, y, lattice.zero()) {
                    return Err(ferr("(b)", w(x, y, lattice.zero())));
                }
            }
        }
        let mut grades = Vec::with_capacity(n1 * n2);
        for x in 0..n1 {
            for y in 0..n2 {
                let degs: Vec<usize> = (0..nl).filter(|&a| rel.get(x, y, a)).collect();
                for (i, &a) in degs.iter().enumerate() {
                    for &b in &degs[i + 1..] {
                        if !rel.get(x, y, lattice.join(a, b)) {
                            return Err(ferr("(c)", w(x, y, lattice.join(a, b))));
                        }
                    }
                }
                let top = lattice.join_all(degs.iter().copied());
                grades.push(top);
            }
        }
        Self::new(source, target, lattice, grades)
    }

    pub fn to_triples(&self) -> Ternary {
        let nl = self.lattice.len();
        Ternary::from_fn(self.source.len(), self.target.len(), nl, |x, y, a| {
            self.lattice.leq(a, self.grade(x, y))
        })
    }

    /// Checks that each fibre `xyR` satisfies (c'), (c'') and (c''') and
    /// that the three agree.
    pub fn check_fibre_forms(&self) -> Result<()> {
        let l = &self.lattice;
        let wb = l.way_below_table();
        let rel = self.to_triples();
        for x in 0..self.source.len() {
            for y in 0..self.target.len() {
                let fibre = set_of(l.len(), (0..l.len()).filter(|&a| rel.get(x, y, a)));
                let nonempty = !fibre.is_clear();
                let lower = l.is_lower(&fibre);
                let directed = l.is_directed(&fibre);
                // A finite non-empty directed set contains its sup, so Scott
                // closure of a lower set only asks for the sup of the empty set.
                let c1 = nonempty && directed && lower && fibre.contains(l.zero());
                let c2 = nonempty
                    && directed
                    && lower
                    && (0..l.len()).all(|a| {
                        let all_below = (0..l.len()).filter(|&b| wb.get(b, a)).all(|b| fibre.contains(b));
                        !all_below || fibre.contains(a)
                    });
                let c3 = lower && l.greatest_of(&fibre).is_some();
                if !(c1 && c2 && c3) {
                    let clause = if !c1 {
                        "(c')"
                    } else if !c2 {
                        "(c'')"
                    } else {
                        "(c''')"
                    };
                    return Err(ferr(
                        clause,
                        Witness::new()
                            .with("x", self.source.name(x))
                            .with("y", self.target.name(y)),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<MeetSemilattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<MeetSemilattice> {
        &self.target
    }

    pub fn lattice(&self) -> &Arc<BoundedLattice> {
        &self.lattice
    }

    pub fn grades(&self) -> &[usize] {
        &self.grades
    }

    #[inline]
    pub fn grade(&self, x: usize, y: usize) -> usize {
        self.grades[x * self.target.len() + y]
    }

    /// `g <= g'` pointwise.
    pub fn is_subrep(&self, other: &FuzzyRep) -> bool {
        self.grades
            .iter()
            .zip(&other.grades)
            .all(|(&a, &b)| self.lattice.leq(a, b))
    }

    /// `R_a = {(x, y) | a <= g(x, y)}`.
    pub fn alpha_cut(&self, a: usize) -> CrispRep {
        let table = BitMatrix::from_fn(self.source.len(), self.target.len(), |x, y| {
            self.lattice.leq(a, self.grade(x, y))
        });
        CrispRep::new(self.source.clone(), self.target.clone(), table).expect("cuts are representations")
    }

    pub fn to_cuts(&self) -> CutFamily {
        CutFamily {
            source: self.source.clone(),
            target: self.target.clone(),
            lattice: self.lattice.clone(),
            cuts: (0..self.lattice.len()).map(|a| self.alpha_cut(a)).collect(),
        }
    }

    /// Literal check of: `(x, y, a) ∈ R`, `y' ≪ y`, `a' ≪ a` imply some
    /// `x' ≪ x` with `(x', y', a') ∈ R`.
    pub fn pseudo_invertibility_witness(&self) -> Option<Witness> {
        let l = &self.lattice;
        let wb1 = self.source.way_below_table();
        let wb2 = self.target.way_below_table();
        let wbl = l.way_below_table();
        let (n1, n2, nl) = (self.source.len(), self.target.len(), l.len());
        for x in 0..n1 {
            for y in 0..n2 {
                for a in (0..nl).filter(|&a| l.leq(a, self.grade(x, y))) {
                    for y2 in (0..n2).filter(|&y2| wb2.get(y2, y)) {
                        for a2 in (0..nl).filter(|&a2| wbl.get(a2, a)) {
                            let found = (0..n1)
                                .any(|x2| wb1.get(x2, x) && l.leq(a2, self.grade(x2, y2)));
                            if !found {
                                return Some(
                                    Witness::new()
                                        .with("x", self.source.name(x))
                                        .with("y", self.target.name(y))
                                        .with("a", l.name(a))
                                        .with("y'", self.target.name(y2))
                                        .with("a'", l.name(a2)),
                                );
                            }
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_pseudo_invertible(&self) -> bool {
        self.pseudo_invertibility_witness().is_none()
    }

    /// Finite criterion: `g(0, y) = 0` for `y != 0`.
    pub fn has_trivial_zero_row(&self) -> bool {
        let z1 = self.source.zero();
        (0..self.target.len())
            .filter(|&y| y != self.target.zero())
            .all(|y| self.grade(z1, y) == self.lattice.zero())
    }

    /// `R` with `g(0, y)` set to 0 for `y != 0`.
    pub fn trim_zero_row(&self) -> FuzzyRep {
        let mut out = self.clone();
        let (z1, z2, n2) = (self.source.zero(), self.target.zero(), self.target.len());
        for y in (0..n2).filter(|&y| y != z2) {
            out.grades[z1 * n2 + y] = self.lattice.zero();
        }
        out
    }
}

/// `(x, y)` has grade `a` iff it lies in exactly the cuts at or below `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutFamily {
    source: Arc<MeetSemilattice>,
    target: Arc<MeetSemilattice>,
    lattice: Arc<BoundedLattice>,
    cuts: Vec<CrispRep>,
}

fn cerr(clause: &'static str, witness: Witness) -> Error {
    Error::CutFamilyInvalid { clause, witness }
}

impl CutFamily {
    pub fn new(lattice: Arc<BoundedLattice>, cuts: Vec<CrispRep>) -> Result<Self> {
        if cuts.len() != lattice.len() || cuts.is_empty() {
            return Err(cerr("shape", Witness::new().with("cuts", cuts.len().to_string())));
        }
        let source = cuts[0].source().clone();
        let target = cuts[0].target().clone();
        if cuts
            .iter()
            .any(|c| !same_carrier(c.source(), &source) || !same_carrier(c.target(), &target))
        {
            return Err(Error::CarrierMismatch("cuts must share source and target"));
        }
        Ok(Self {
            source,
            target,
            lattice,
            cuts,
        })
    }

    pub fn lattice(&self) -> &Arc<BoundedLattice> {
        &self.lattice
    }

    pub fn cut(&self, a: usize) -> &CrispRep {
        &self.cuts[a]
    }

    pub fn cuts(&self) -> &[CrispRep] {
        &self.cuts
    }

    /// Reassembles the grade table, checking that the zero cut is full,
    /// the family is antitone and every pair has a greatest degree.
    pub fn to_rep(&self) -> Result<FuzzyRep> {
        let l = &self.lattice;
        let (n1, n2) = (self.source.len(), self.target.len());
        let pw = |x: usize, y: usize| {
            Witness::new()
                .with("x", self.source.name(x))
                .with("y", self.target.name(y))
        };
        let zero_cut = self.cuts[l.zero()].table();
        for x in 0..n1 {
            if let Some(y) = (0..n2).find(|&y| !zero_cut.get(x, y)) {
                return Err(cerr("zero-cut", pw(x, y)));
            }
        }
        for a in 0..l.len() {
            for b in l.down(a).ones() {
                if let Some((x, y)) = self.cuts[a].table().first_difference(self.cuts[b].table()) {
                    return Err(cerr(
                        "antitone",
                        pw(x, y).with("a", l.name(a)).with("b", l.name(b)),
                    ));
                }
            }
        }
        let mut grades = Vec::with_capacity(n1 * n2);
        for x in 0..n1 {
            for y in 0..n2 {
                let degs = set_of(l.len(), (0..l.len()).filter(|&a| self.cuts[a].get(x, y)));
                match l.greatest_of(&degs) {
                    Some(g) => grades.push(g),
                    None => return Err(cerr("peak", pw(x, y))),
                }
            }
        }
        FuzzyRep::new(self.source.clone(), self.target.clone(), l.clone(), grades)
    }
}

fn check_pairings(r: &FuzzyRep, p1: &Compatibility, p2: &Compatibility) -> Result<()> {
    if !same_carrier(p1.left(), &r.source) || !same_carrier(p2.left(), &r.target) {
        return Err(Error::CarrierMismatch(
            "compatibilities must start at the source and target of the representation",
        ));
    }
    p1.require_separating()?;
    p2.require_separating()
}

/// `(R^♯)_a = ⋂_{b ≪ a} (R_b)^♯`, the empty intersection at `a = 0` being
/// the full relation.
pub fn fuzzy_pseudo_inverse(r: &FuzzyRep, p1: &Compatibility, p2: &Compatibility) -> Result<FuzzyRep> {
    check_pairings(r, p1, p2)?;
    let l = &r.lattice;
    let wb = l.way_below_table();
    let (d1, d2) = (p1.right(), p2.right());
    let crisp: Vec<CrispRep> = (0..l.len())
        .map(|b| pseudo_inverse(&r.alpha_cut(b), p1, p2))
        .collect::<Result<_>>()?;
    let cuts = (0..l.len())
        .map(|a| {
            let mut table = BitMatrix::full(d2.len(), d1.len());
            for b in (0..l.len()).filter(|&b| wb.get(b, a)) {
                table.intersect_with(crisp[b].table());
            }
            CrispRep::new(d2.clone(), d1.clone(), table)
        })
        .collect::<Result<Vec<_>>>()?;
    CutFamily::new(l.clone(), cuts)?.to_rep()
}

/// Grade transpose: `ĝ(ŷ, x̂) = g(s, t)` for `P1x̂ = ↑s`, `P2ŷ = ↑t`;
/// 1 when `P1x̂ = ∅`; 0 when only `P2ŷ = ∅`.
pub fn fuzzy_pseudo_inverse_shortcut(
    r: &FuzzyRep,
    p1: &Compatibility,
    p2: &Compatibility,
) -> Result<FuzzyRep> {
    check_pairings(r, p1, p2)?;
    let l = &r.lattice;
    FuzzyRep::from_fn(p2.right().clone(), p1.right().clone(), l.clone(), |yh, xh| {
        match (p1.left_generator(xh), p2.left_generator(yh)) {
            (None, _) => l.one(),
            (Some(_), None) => l.zero(),
            (Some(s), Some(t)) => r.grade(s, t),
        }
    })
}

pub fn fuzzy_pinv(r: &FuzzyRep) -> FuzzyRep {
    let p1 = canonical_pairing(&r.source);
    let p2 = canonical_pairing(&r.target);
    fuzzy_pseudo_inverse(r, &p1, &p2).expect("canonical pairings are separating")
}

pub fn fuzzy_double_pseudo_inverse(r: &FuzzyRep) -> FuzzyRep {
    let p1 = canonical_pairing(&r.source);
    let p2 = canonical_pairing(&r.target);
    let once = fuzzy_pseudo_inverse(r, &p1, &p2).expect("canonical pairings are separating");
    fuzzy_pseudo_inverse(&once, &p2.reverse(), &p1.reverse()).expect("reversed pairings are separating")
}

fn check_composable(r: &FuzzyRep, q: &FuzzyRep, quantale: &Quantale) -> Result<()> {
    if !same_carrier(&r.target, &q.source) {
        return Err(Error::MiddleMismatch);
    }
    if !same_lattice(&r.lattice, &q.lattice) {
        return Err(Error::CarrierMismatch("representations are valued in different lattices"));
    }
    if !same_lattice(&r.lattice, quantale.lattice()) {
        return Err(Error::QuantaleLatticeMismatch);
    }
    Ok(())
}

/// `h(x, z) = ⋁_y g_R(x, y) * g_Q(y, z)`.
pub fn compose_fuzzy(r: &FuzzyRep, q: &FuzzyRep, quantale: &Quantale) -> Result<FuzzyRep> {
    check_composable(r, q, quantale)?;
    let l = &r.lattice;
    let n2 = r.target.len();
    FuzzyRep::from_fn(r.source.clone(), q.target.clone(), l.clone(), |x, z| {
        (0..n2).fold(l.zero(), |acc, y| {
            l.join(acc, quantale.mul(r.grade(x, y), q.grade(y, z)))
        })
    })
}

/// `x(R⊛Q) = Cl(x(R*Q))`, built from triples.
pub fn compose_fuzzy_closure(r: &FuzzyRep, q: &FuzzyRep, quantale: &Quantale) -> Result<FuzzyRep> {
    check_composable(r, q, quantale)?;
    let l = &r.lattice;
    let (n1, n2, n3, nl) = (r.source.len(), r.target.len(), q.target.len(), l.len());
    let star = Ternary::from_fn(n1, n3, nl, |x, z, a| {
        let sup = l.join_all((0..n2).flat_map(|y| {
            let (rb, qg) = (r.grade(x, y), q.grade(y, z));
            (0..nl).filter(move |&b| l.leq(b, rb)).flat_map(move |b| {
                (0..nl).filter(move |&c| l.leq(c, qg)).map(move |c| quantale.mul(b, c))
            })
        }));
        l.leq(a, sup)
    });
    let closed = Ternary::from_fn(n1, n3, nl, |x, z, a| {
        q.target.up(z).ones().any(|z2| l.up(a).ones().any(|a2| star.get(x, z2, a2)))
    });
    FuzzyRep::from_triples(r.source.clone(), q.target.clone(), l.clone(), &closed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::dual::lawson_dual;

    fn arc<T>(t: T) -> Arc<T> {
        Arc::new(t)
    }

    /// `C2 => C2` over `C3`: g(0,0)=1, g(0,1)=0, g(1,0)=1, g(1,1)=m.
    fn example() -> FuzzyRep {
        let c2 = arc(catalog::chain(2));
        let c3 = arc(catalog::chain_lattice(3));
        FuzzyRep::new(c2.clone(), c2, c3, vec![2, 0, 2, 1]).unwrap()
    }

    #[test]
    fn quantale_examples() {
        let meet = catalog::meet_quantale(catalog::chain_lattice(3));
        assert!(meet.is_commutative());
        assert_eq!(meet.opposite(), meet);
        let rel = catalog::rel2_quantale();
        assert!(!rel.is_commutative());
        assert_eq!(rel.opposite().opposite(), rel);
        let (a, b) = (
            rel.lattice().element("R0100").unwrap(),
            rel.lattice().element("R0010").unwrap(),
        );
        assert_eq!(rel.opposite().mul(a, b), rel.mul(b, a));
        assert_ne!(rel.opposite().mul(a, b), rel.mul(a, b));
        let c3 = catalog::chain_lattice(3);
        match Quantale::with_unit(c3, vec![0; 9], 2) {
            Err(Error::QuantaleViolated { axiom, .. }) => assert_eq!(axiom, "unit"),
            other => panic!("{other:?}"),
        }
        match Quantale::new(catalog::m3_lattice(), (0..25).map(|k| catalog::m3_lattice().meet(k / 5, k % 5)).collect()) {
            Err(Error::QuantaleViolated { axiom, .. }) => assert_eq!(axiom, "distributive"),
            other => panic!("{other:?}"),
        }
        assert!(catalog::lukasiewicz_quantale(4).is_integral());
    }

    #[test]
    fn example_rep_and_cuts() {
        let r = example();
        r.check_fibre_forms().unwrap();
        let c2 = r.source().clone();
        assert_eq!(r.alpha_cut(1), CrispRep::identity(c2.clone()));
        assert_eq!(r.alpha_cut(0), CrispRep::full(c2.clone(), c2.clone()));
        let top = r.alpha_cut(2);
        assert_eq!(top.table().pairs().collect::<Vec<_>>(), vec![(0, 0), (1, 0)]);
        assert_eq!(r.to_cuts().to_rep().unwrap(), r);
        let back = FuzzyRep::from_triples(c2.clone(), c2.clone(), r.lattice().clone(), &r.to_triples()).unwrap();
        assert_eq!(back, r);
        match FuzzyRep::new(c2.clone(), c2, r.lattice().clone(), vec![1, 0, 2, 1]) {
            Err(Error::FuzzyRepViolated { clause, .. }) => assert_eq!(clause, "(b)"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn broken_cut_families() {
        let r = example();
        let mut cuts = r.to_cuts().cuts().to_vec();
        cuts.swap(1, 2);
        let fam = CutFamily::new(r.lattice().clone(), cuts).unwrap();
        assert!(matches!(fam.to_rep(), Err(Error::CutFamilyInvalid { clause: "antitone", .. })));
        let mut cuts = r.to_cuts().cuts().to_vec();
        cuts[0] = cuts[1].clone();
        let fam = CutFamily::new(r.lattice().clone(), cuts).unwrap();
        assert!(matches!(fam.to_rep(), Err(Error::CutFamilyInvalid { clause: "zero-cut", .. })));
    }

    #[test]
    fn pinv_example() {
        let r = example();
        let p = canonical_pairing(r.source());
        let inv = fuzzy_pseudo_inverse(&r, &p, &p).unwrap();
        assert_eq!(inv, fuzzy_pseudo_inverse_shortcut(&r, &p, &p).unwrap());
        let d = p.right();
        let (bot, up1) = (d.element("^0").unwrap(), d.element("^1").unwrap());
        assert_eq!(inv.grade(up1, up1), 1);
        assert_eq!(inv.grade(bot, up1), 0);
        assert_eq!(inv.grade(up1, bot), 2);
        assert!(r.is_pseudo_invertible());
        assert_eq!(fuzzy_double_pseudo_inverse(&r), r);
        inv.check_fibre_forms().unwrap();
    }

    #[test]
    fn non_pseudo_invertible_witness() {
        let r = example();
        let bad = FuzzyRep::new(r.source().clone(), r.target().clone(), r.lattice().clone(), vec![2, 1, 2, 1]).unwrap();
        let w = bad.pseudo_invertibility_witness().unwrap();
        assert_eq!((w.get("x"), w.get("y"), w.get("y'")), (Some("0"), Some("1"), Some("0")));
        assert!(!bad.has_trivial_zero_row());
        assert_eq!(fuzzy_double_pseudo_inverse(&bad), bad.trim_zero_row());
    }

    #[test]
    fn embedding_respects_pinv() {
        let d4 = arc(catalog::diamond());
        let l = arc(catalog::chain_lattice(3));
        let e = CrispRep::identity(d4.clone());
        let fe = FuzzyRep::embed_crisp(&e, l.clone());
        let dual = lawson_dual(&d4).semilattice().clone();
        assert_eq!(fuzzy_pinv(&fe), FuzzyRep::embed_crisp(&CrispRep::identity(dual), l));
    }

    #[test]
    fn composition_paths_agree() {
        let r = example();
        let q = catalog::meet_quantale(catalog::chain_lattice(3));
        let r = FuzzyRep::new(r.source().clone(), r.target().clone(), q.lattice().clone(), r.grades().to_vec()).unwrap();
        let e = FuzzyRep::embed_crisp(&CrispRep::identity(r.source().clone()), q.lattice().clone());
        assert_eq!(compose_fuzzy(&r, &e, &q).unwrap(), r);
        assert_eq!(compose_fuzzy(&e, &r, &q).unwrap(), r);
        let rr = compose_fuzzy(&r, &r, &q).unwrap();
        assert_eq!(compose_fuzzy_closure(&r, &r, &q).unwrap(), rr);
    }

    #[test]
    fn rel2_single_middle_witness() {
        let q = catalog::rel2_quantale();
        let l = q.lattice().clone();
        let c2 = arc(catalog::chain(2));
        let a = l.element("R0100").unwrap();
        let b = l.element("R0010").unwrap();
        let one = l.one();
        let mk = |g: usize| FuzzyRep::new(c2.clone(), c2.clone(), l.clone(), vec![one, 0, one, g]).unwrap();
        let (r, s) = (mk(a), mk(b));
        assert_eq!(l.name(compose_fuzzy(&r, &s, &q).unwrap().grade(1, 1)), "R1000");
        assert_eq!(l.name(compose_fuzzy(&s, &r, &q).unwrap().grade(1, 1)), "R0001");
        let id = FuzzyRep::identity(c2.clone(), &q);
        assert_eq!(compose_fuzzy(&r, &id, &q).unwrap(), r);
        assert_eq!(compose_fuzzy(&id, &r, &q).unwrap(), r);
    }
}
