//! Finite posets, meet-semilattices with zero and bounded lattices.
//!
//! Every carrier is indexed densely by `0..n`. Order tables are stored twice,
//! as principal up-sets and principal down-sets, so that the set operations
//! used throughout the calculus (closures, filters, transversals) are single
//! bitset unions and intersections.
//!
//! On a finite poset every directed subset that has a supremum either is
//! empty (supremum `0`) or contains its own supremum. Consequently the
//! way-below relation has the closed form `x << y  iff  x <= y and y != 0`,
//! with nothing way below the bottom. [`FinitePoset::way_below`] uses that
//! form; `oracle::wb_oracle` checks it against the definition.

use std::collections::HashMap;
use std::ops::Deref;

use crate::bits::{empty_set, full_set, set_of, BitMatrix, ElemSet};
use crate::error::{Error, Result, Witness};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<ElemSet>,
    down: Vec<ElemSet>,
}

fn index_names(names: &[String]) -> Result<HashMap<String, usize>> {
    if names.is_empty() {
        return Err(Error::EmptyPoset);
    }
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.clone(), i).is_some() {
            return Err(Error::DuplicateElement(n.clone()));
        }
    }
    Ok(index)
}

impl FinitePoset {
    /// Builds a poset from strict pairs `x < y` (covers or any generating
    /// subset), taking the reflexive-transitive closure.
    pub fn from_relation<S: AsRef<str>>(names: &[S], less: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_owned()).collect();
        let index = index_names(&names)?;
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownElement(s.to_owned()))
        };
        let mut pairs = Vec::with_capacity(less.len());
        for (a, b) in less {
            pairs.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        Self::from_index_pairs(names, &pairs)
    }

    pub fn from_index_pairs(names: Vec<String>, less: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut leq = BitMatrix::new(n, n);
        for i in 0..n {
            leq.set(i, i, true);
        }
        for &(a, b) in less {
            if a == b {
                return Err(Error::CycleDetected(names[a].clone(), names[b].clone()));
            }
            leq.set(a, b, true);
        }
        // Warshall closure on rows.
        for k in 0..n {
            let row_k = leq.row(k).clone();
            for i in 0..n {
                if leq.get(i, k) {
                    leq.row_mut(i).union_with(&row_k);
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq.get(i, j) && leq.get(j, i) {
                    return Err(Error::CycleDetected(names[i].clone(), names[j].clone()));
                }
            }
        }
        Self::from_leq_unchecked(names, leq)
    }

    /// Builds a poset from a full `leq` table, checking the partial-order laws.
    pub fn from_leq(names: Vec<String>, leq: BitMatrix) -> Result<Self> {
        let n = names.len();
        if leq.rows() != n || leq.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: (n, n),
                found: (leq.rows(), leq.cols()),
            });
        }
        for i in 0..n {
            if !leq.get(i, i) {
                return Err(Error::NotPartialOrder(
                    Witness::new().with("reflexivity", names[i].clone()),
                ));
            }
            for j in 0..n {
                if i != j && leq.get(i, j) && leq.get(j, i) {
                    return Err(Error::CycleDetected(names[i].clone(), names[j].clone()));
                }
                if leq.get(i, j) && !leq.row(j).is_subset(leq.row(i)) {
                    let k = leq.row(j).difference(leq.row(i)).next().unwrap();
                    return Err(Error::NotPartialOrder(
                        Witness::new()
                            .with("x", names[i].clone())
                            .with("y", names[j].clone())
                            .with("z", names[k].clone()),
                    ));
                }
            }
        }
        Self::from_leq_unchecked(names, leq)
    }

    fn from_leq_unchecked(names: Vec<String>, leq: BitMatrix) -> Result<Self> {
        let index = index_names(&names)?;
        let n = names.len();
        let up = (0..n).map(|i| leq.row(i).clone()).collect();
        let down = (0..n).map(|j| leq.column(j)).collect();
        Ok(Self {
            names,
            index,
            up,
            down,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn element(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownElement(name.to_owned()))
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    /// `{y | x <= y}`
    pub fn up(&self, x: usize) -> &ElemSet {
        &self.up[x]
    }

    /// `{y | y <= x}`
    pub fn down(&self, x: usize) -> &ElemSet {
        &self.down[x]
    }

    pub fn leq_matrix(&self) -> BitMatrix {
        BitMatrix::from_fn(self.len(), self.len(), |i, j| self.leq(i, j))
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.up[i].count_ones(..) == self.len())
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.down[i].count_ones(..) == self.len())
    }

    /// Hasse diagram: pairs `x < y` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            for y in self.up[x].ones() {
                if x == y {
                    continue;
                }
                let between = self.up[x]
                    .intersection(&self.down[y])
                    .any(|z| z != x && z != y);
                if !between {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn set_names(&self, set: &ElemSet) -> Vec<&str> {
        set.ones().map(|i| self.name(i)).collect()
    }

    pub fn set_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<ElemSet> {
        let mut s = empty_set(self.len());
        for n in names {
            s.insert(self.element(n.as_ref())?);
        }
        Ok(s)
    }

    /// Least lower set containing `set`. On a finite poset the Scott-closed
    /// sets are exactly the lower sets.
    pub fn scott_closure(&self, set: &ElemSet) -> ElemSet {
        let mut out = empty_set(self.len());
        for x in set.ones() {
            out.union_with(&self.down[x]);
        }
        out
    }

    pub fn upper_closure(&self, set: &ElemSet) -> ElemSet {
        let mut out = empty_set(self.len());
        for x in set.ones() {
            out.union_with(&self.up[x]);
        }
        out
    }

    pub fn is_lower(&self, set: &ElemSet) -> bool {
        set.ones().all(|x| self.down[x].is_subset(set))
    }

    pub fn is_upper(&self, set: &ElemSet) -> bool {
        set.ones().all(|x| self.up[x].is_subset(set))
    }

    /// Every pair in `set` has an upper bound in `set`. The empty set is directed.
    pub fn is_directed(&self, set: &ElemSet) -> bool {
        set.ones().all(|x| {
            set.ones()
                .all(|y| self.up[x].intersection(&self.up[y]).any(|z| set.contains(z)))
        })
    }

    pub fn is_filtered(&self, set: &ElemSet) -> bool {
        set.ones().all(|x| {
            set.ones().all(|y| {
                self.down[x]
                    .intersection(&self.down[y])
                    .any(|z| set.contains(z))
            })
        })
    }

    pub fn minimal_elements(&self, set: &ElemSet) -> Vec<usize> {
        set.ones()
            .filter(|&x| self.down[x].intersection(set).all(|z| z == x))
            .collect()
    }

    pub fn maximal_elements(&self, set: &ElemSet) -> Vec<usize> {
        set.ones()
            .filter(|&x| self.up[x].intersection(set).all(|z| z == x))
            .collect()
    }

    pub fn least_of(&self, set: &ElemSet) -> Option<usize> {
        set.ones().find(|&x| set.is_subset(&self.up[x]))
    }

    pub fn greatest_of(&self, set: &ElemSet) -> Option<usize> {
        set.ones().find(|&x| set.is_subset(&self.down[x]))
    }

    /// Greatest lower bound of a pair, if it exists.
    pub fn glb(&self, x: usize, y: usize) -> Option<usize> {
        let lower: ElemSet = self.down[x].intersection(&self.down[y]).collect_set(self.len());
        self.greatest_of(&lower)
    }

    pub fn lub(&self, x: usize, y: usize) -> Option<usize> {
        let upper: ElemSet = self.up[x].intersection(&self.up[y]).collect_set(self.len());
        self.least_of(&upper)
    }

    /// The way-below relation; requires a bottom element.
    pub fn way_below(&self) -> Result<BitMatrix> {
        let zero = self.bottom().ok_or(Error::NoBottom)?;
        Ok(BitMatrix::from_fn(self.len(), self.len(), |x, y| {
            y != zero && self.leq(x, y)
        }))
    }

    pub fn opposite(&self) -> FinitePoset {
        FinitePoset {
            names: self.names.clone(),
            index: self.index.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
        }
    }

    /// Componentwise order on `self x other`; element `(a, b)` has index
    /// `a * other.len() + b`.
    pub fn product(&self, other: &FinitePoset) -> FinitePoset {
        let (n, m) = (self.len(), other.len());
        let names = (0..n * m)
            .map(|k| format!("({},{})", self.name(k / m), other.name(k % m)))
            .collect();
        let leq = BitMatrix::from_fn(n * m, n * m, |p, q| {
            self.leq(p / m, q / m) && other.leq(p % m, q % m)
        });
        Self::from_leq_unchecked(names, leq).expect("product names are unique")
    }

    /// Some order isomorphism `self -> other`, as an index map.
    pub fn isomorphism(&self, other: &FinitePoset) -> Option<Vec<usize>> {
        let mut found = None;
        self.search_isomorphisms(other, &mut |m| {
            found = Some(m.to_vec());
            false
        });
        found
    }

    /// All order isomorphisms `self -> other`.
    pub fn isomorphisms(&self, other: &FinitePoset) -> Vec<Vec<usize>> {
        let mut all = Vec::new();
        self.search_isomorphisms(other, &mut |m| {
            all.push(m.to_vec());
            true
        });
        all
    }

    pub fn is_isomorphic(&self, other: &FinitePoset) -> bool {
        self.isomorphism(other).is_some()
    }

    fn search_isomorphisms(&self, other: &FinitePoset, visit: &mut dyn FnMut(&[usize]) -> bool) {
        let n = self.len();
        if n != other.len() {
            return;
        }
        let sig = |p: &FinitePoset, i: usize| (p.up[i].count_ones(..), p.down[i].count_ones(..));
        let mut map = vec![usize::MAX; n];
        let mut used = empty_set(n);
        fn go(
            a: &FinitePoset,
            b: &FinitePoset,
            i: usize,
            map: &mut Vec<usize>,
            used: &mut ElemSet,
            sig: &dyn Fn(&FinitePoset, usize) -> (usize, usize),
            visit: &mut dyn FnMut(&[usize]) -> bool,
        ) -> bool {
            if i == a.len() {
                return visit(map);
            }
            for j in 0..b.len() {
                if used.contains(j) || sig(a, i) != sig(b, j) {
                    continue;
                }
                let consistent = (0..i).all(|k| {
                    a.leq(k, i) == b.leq(map[k], j) && a.leq(i, k) == b.leq(j, map[k])
                });
                if !consistent {
                    continue;
                }
                map[i] = j;
                used.insert(j);
                if !go(a, b, i + 1, map, used, sig, visit) {
                    return false;
                }
                used.set(j, false);
                map[i] = usize::MAX;
            }
            true
        }
        go(self, other, 0, &mut map, &mut used, &sig, visit);
    }
}

trait CollectSet {
    fn collect_set(self, n: usize) -> ElemSet;
}

impl<I: Iterator<Item = usize>> CollectSet for I {
    fn collect_set(self, n: usize) -> ElemSet {
        set_of(n, self)
    }
}

/// A finite meet-semilattice with zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeetSemilattice {
    poset: FinitePoset,
    meet: Vec<usize>,
    zero: usize,
}

impl Deref for MeetSemilattice {
    type Target = FinitePoset;
    fn deref(&self) -> &FinitePoset {
        &self.poset
    }
}

impl MeetSemilattice {
    /// Computes the meet table; fails with the first missing bottom or meet.
    pub fn new(poset: FinitePoset) -> Result<Self> {
        let zero = poset.bottom().ok_or(Error::NoBottom)?;
        let n = poset.len();
        let mut meet = vec![0; n * n];
        for x in 0..n {
            for y in x..n {
                let m = poset
                    .glb(x, y)
                    .ok_or_else(|| Error::NoMeet(poset.name(x).into(), poset.name(y).into()))?;
                meet[x * n + y] = m;
                meet[y * n + x] = m;
            }
        }
        Ok(Self { poset, meet, zero })
    }

    /// Every reason `poset` fails to be a meet-semilattice with zero.
    pub fn defects(poset: &FinitePoset) -> Vec<Error> {
        let mut out = Vec::new();
        if poset.bottom().is_none() {
            out.push(Error::NoBottom);
        }
        for x in 0..poset.len() {
            for y in (x + 1)..poset.len() {
                if poset.glb(x, y).is_none() {
                    out.push(Error::NoMeet(poset.name(x).into(), poset.name(y).into()));
                }
            }
        }
        out
    }

    pub fn from_relation<S: AsRef<str>>(names: &[S], less: &[(S, S)]) -> Result<Self> {
        Self::new(FinitePoset::from_relation(names, less)?)
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    /// Meet of a non-empty set.
    pub fn meet_all(&self, set: &ElemSet) -> Option<usize> {
        set.ones().reduce(|a, b| self.meet(a, b))
    }

    pub fn is_meet_closed(&self, set: &ElemSet) -> bool {
        set.ones()
            .all(|x| set.ones().all(|y| set.contains(self.meet(x, y))))
    }

    /// Upper and closed under binary meets; the empty set qualifies.
    pub fn is_filter(&self, set: &ElemSet) -> bool {
        self.is_upper(set) && self.is_meet_closed(set)
    }

    pub fn way_below_table(&self) -> BitMatrix {
        self.poset.way_below().expect("semilattice has a zero")
    }

    #[inline]
    pub fn way_below(&self, x: usize, y: usize) -> bool {
        y != self.zero && self.leq(x, y)
    }

    pub fn opposite(&self) -> Result<MeetSemilattice> {
        MeetSemilattice::new(self.poset.opposite())
    }

    pub fn rename(&self, names: Vec<String>) -> Result<MeetSemilattice> {
        let poset = FinitePoset::from_leq(names, self.leq_matrix())?;
        Ok(Self {
            poset,
            meet: self.meet.clone(),
            zero: self.zero,
        })
    }
}

/// A finite lattice with `0` and `1`. Finite lattices are complete, and the
/// complete-distributivity assumption on truth-value lattices is decided here
/// by plain distributivity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedLattice {
    semilattice: MeetSemilattice,
    join: Vec<usize>,
    one: usize,
}

impl Deref for BoundedLattice {
    type Target = MeetSemilattice;
    fn deref(&self) -> &MeetSemilattice {
        &self.semilattice
    }
}

impl BoundedLattice {
    pub fn new(poset: FinitePoset) -> Result<Self> {
        let one = poset.top().ok_or(Error::NoTop)?;
        let n = poset.len();
        let mut join = vec![0; n * n];
        for x in 0..n {
            for y in x..n {
                let j = poset
                    .lub(x, y)
                    .ok_or_else(|| Error::NoJoin(poset.name(x).into(), poset.name(y).into()))?;
                join[x * n + y] = j;
                join[y * n + x] = j;
            }
        }
        let semilattice = MeetSemilattice::new(poset)?;
        Ok(Self {
            semilattice,
            join,
            one,
        })
    }

    pub fn from_relation<S: AsRef<str>>(names: &[S], less: &[(S, S)]) -> Result<Self> {
        Self::new(FinitePoset::from_relation(names, less)?)
    }

    pub fn semilattice(&self) -> &MeetSemilattice {
        &self.semilattice
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y]
    }

    pub fn join_all(&self, set: impl IntoIterator<Item = usize>) -> usize {
        set.into_iter().fold(self.zero(), |a, b| self.join(a, b))
    }

    pub fn meet_all_or_top(&self, set: impl IntoIterator<Item = usize>) -> usize {
        set.into_iter().fold(self.one, |a, b| self.meet(a, b))
    }

    pub fn one(&self) -> usize {
        self.one
    }

    /// A triple violating `x /\ (y \/ z) = (x /\ y) \/ (x /\ z)`, if any.
    pub fn distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(self.meet(x, y), self.meet(x, z));
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    pub fn full(&self) -> ElemSet {
        full_set(self.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn chain_and_diamond_validate() {
        let c2 = FinitePoset::from_relation(&["0", "1"], &[("0", "1")]).unwrap();
        assert!(c2.leq(0, 1) && !c2.leq(1, 0));
        let d4 = FinitePoset::from_relation(
            &["0", "a", "b", "1"],
            &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
        )
        .unwrap();
        assert!(d4.leq(0, 3));
        assert!(!d4.leq(1, 2) && !d4.leq(2, 1));
        assert_eq!(d4.covers().len(), 4);
    }

    #[test]
    fn cycle_and_unknown_are_rejected() {
        assert_eq!(
            FinitePoset::from_relation(&["x", "y"], &[("x", "y"), ("y", "x")]),
            Err(Error::CycleDetected("x".into(), "y".into()))
        );
        assert_eq!(
            FinitePoset::from_relation(&["x"], &[("x", "q")]),
            Err(Error::UnknownElement("q".into()))
        );
        assert_eq!(
            FinitePoset::from_relation(&["x", "x"], &[]),
            Err(Error::DuplicateElement("x".into()))
        );
        assert_eq!(
            FinitePoset::from_relation::<&str>(&[], &[]),
            Err(Error::EmptyPoset)
        );
    }

    #[test]
    fn from_leq_rejects_intransitive_table() {
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let leq = BitMatrix::from_pairs(3, 3, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]);
        assert!(matches!(
            FinitePoset::from_leq(names, leq),
            Err(Error::NotPartialOrder(_))
        ));
    }

    #[test]
    fn meet_structure_examples() {
        let d4 = catalog::diamond();
        assert_eq!(d4.meet(1, 2), 0);
        let v3 = catalog::vee();
        assert_eq!(v3.meet(v3.element("a").unwrap(), v3.element("b").unwrap()), 0);

        let bowtie = FinitePoset::from_relation(
            &["a", "b", "c", "d"],
            &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
        )
        .unwrap();
        assert_eq!(MeetSemilattice::new(bowtie.clone()), Err(Error::NoBottom));
        let defects = MeetSemilattice::defects(&bowtie);
        assert!(defects.contains(&Error::NoBottom));
        assert!(defects.contains(&Error::NoMeet("c".into(), "d".into())));
    }

    #[test]
    fn way_below_on_chain() {
        let c3 = catalog::chain(3);
        let wb = c3.way_below_table();
        let pairs: Vec<_> = wb.pairs().collect();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]);
        assert!(!wb.get(0, 0));
    }

    #[test]
    fn way_below_needs_bottom() {
        let anti = FinitePoset::from_relation::<&str>(&["a", "b"], &[]).unwrap();
        assert_eq!(anti.way_below(), Err(Error::NoBottom));
    }

    #[test]
    fn scott_closure_examples() {
        let c3 = catalog::chain(3);
        let m = c3.element("m").unwrap();
        assert_eq!(c3.scott_closure(&set_of(3, [m])), set_of(3, [0, m]));
        assert_eq!(c3.scott_closure(&empty_set(3)), empty_set(3));
        let d4 = catalog::diamond();
        assert_eq!(d4.scott_closure(&set_of(4, [1, 2])), set_of(4, [0, 1, 2]));
    }

    #[test]
    fn filter_predicates() {
        let d4 = catalog::diamond();
        let abt = set_of(4, [1, 2, 3]);
        assert!(d4.is_upper(&abt));
        assert!(!d4.is_filter(&abt));
        assert!(d4.is_filter(&empty_set(4)));
        assert!(d4.is_directed(&empty_set(4)));
        let c3 = catalog::chain(3);
        assert!(c3.is_filter(&set_of(3, [1, 2])));
        assert!(c3.is_filtered(&set_of(3, [1, 2])));
        assert!(!d4.is_directed(&set_of(4, [1, 2])));
    }

    #[test]
    fn distributivity() {
        assert!(catalog::diamond_lattice().is_distributive());
        assert!(catalog::chain_lattice(5).is_distributive());
        let m3 = catalog::m3_lattice();
        assert!(m3.distributivity_witness().is_some());
        assert!(!m3.is_distributive());
        assert!(!catalog::n5_lattice().is_distributive());
    }

    #[test]
    fn opposite_and_product() {
        let c3 = catalog::chain(3);
        assert!(c3.poset().opposite().is_isomorphic(&c3));
        assert_eq!(c3.poset().opposite().opposite(), *c3.poset());
        let c2 = catalog::chain(2);
        let sq = c2.product(&c2);
        assert!(sq.is_isomorphic(catalog::diamond().poset()));
        assert_eq!(catalog::diamond().isomorphisms(catalog::diamond().poset()).len(), 2);
    }
}
