//! Finite Lawson duality.
//!
//! `S^` is the set of proper Scott-open filters of `S` (the empty filter
//! included, `S` itself excluded) ordered by inclusion. On a finite
//! semilattice every non-empty such filter is principal, `↑s` with `s != 0`,
//! so `S^` has exactly as many elements as `S`. Dual element `i` is the
//! filter generated by base element `i`; the index of the base zero holds
//! the empty filter. Dual names flip a leading `^` on the generator's name,
//! which makes the double dual carry the original names.

use std::sync::Arc;

use crate::bits::{empty_set, BitMatrix, ElemSet};
use crate::error::{Error, Result, Witness};
use crate::order::{FinitePoset, MeetSemilattice};

/// `a` <-> `^a`
pub fn flip_name(name: &str) -> String {
    match name.strip_prefix('^') {
        Some(rest) => rest.to_owned(),
        None => format!("^{name}"),
    }
}

pub fn same_carrier(a: &Arc<MeetSemilattice>, b: &Arc<MeetSemilattice>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualSemilattice {
    base: Arc<MeetSemilattice>,
    semilattice: Arc<MeetSemilattice>,
    filters: Vec<ElemSet>,
}

impl DualSemilattice {
    /// Assembles the dual from an arbitrary listing of filters, placing each at
    /// its generator's index. Fails unless the list is exactly the proper
    /// Scott-open filters of `base`.
    pub fn from_filters(base: Arc<MeetSemilattice>, filters: Vec<ElemSet>) -> Result<Self> {
        let n = base.len();
        let zero = base.zero();
        let mut slots: Vec<Option<ElemSet>> = vec![None; n];
        for f in filters {
            if !base.is_filter(&f) {
                return Err(Error::FilterFamily("member is not an upper meet-closed set"));
            }
            if f.contains(zero) {
                return Err(Error::FilterFamily("member is the whole carrier"));
            }
            let slot = if f.is_clear() {
                zero
            } else {
                base.least_of(&f)
                    .ok_or(Error::FilterFamily("non-principal filter"))?
            };
            if slots[slot].replace(f).is_some() {
                return Err(Error::FilterFamily("repeated filter"));
            }
        }
        let filters: Vec<ElemSet> = slots
            .into_iter()
            .map(|s| s.ok_or(Error::FilterFamily("missing filter")))
            .collect::<Result<_>>()?;
        let names = base.names().iter().map(|s| flip_name(s)).collect();
        let inclusion = BitMatrix::from_fn(n, n, |i, j| filters[i].is_subset(&filters[j]));
        let semilattice = Arc::new(MeetSemilattice::new(FinitePoset::from_leq(names, inclusion)?)?);
        Ok(Self {
            base,
            semilattice,
            filters,
        })
    }

    pub fn base(&self) -> &Arc<MeetSemilattice> {
        &self.base
    }

    /// `S^` as a semilattice in its own right.
    pub fn semilattice(&self) -> &Arc<MeetSemilattice> {
        &self.semilattice
    }

    pub fn filters(&self) -> &[ElemSet] {
        &self.filters
    }

    pub fn filter(&self, f: usize) -> &ElemSet {
        &self.filters[f]
    }

    /// Least element of filter `f`, or `None` for the empty filter.
    pub fn generator(&self, f: usize) -> Option<usize> {
        (f != self.base.zero()).then_some(f)
    }

    /// Dual element holding the filter `↑s` (the empty filter for `s = 0`).
    pub fn filter_of(&self, s: usize) -> usize {
        s
    }

    /// Inverse of [`filter_of`](Self::filter_of); the empty filter maps to zero.
    pub fn element_of(&self, f: usize) -> usize {
        f
    }

    pub fn index_of_filter(&self, set: &ElemSet) -> Option<usize> {
        self.filters.iter().position(|f| f == set)
    }
}

/// The Lawson dual of a finite semilattice with zero.
pub fn lawson_dual(s: &Arc<MeetSemilattice>) -> DualSemilattice {
    let zero = s.zero();
    let filters = (0..s.len())
        .map(|i| if i == zero { empty_set(s.len()) } else { s.up(i).clone() })
        .collect();
    DualSemilattice::from_filters(s.clone(), filters).expect("principal filters form the dual")
}

/// A zero-preserving meet-semilattice morphism. On finite carriers Scott
/// continuity follows from monotonicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemilatticeMorphism {
    source: Arc<MeetSemilattice>,
    target: Arc<MeetSemilattice>,
    map: Vec<usize>,
}

impl SemilatticeMorphism {
    pub fn new(
        source: Arc<MeetSemilattice>,
        target: Arc<MeetSemilattice>,
        map: Vec<usize>,
    ) -> Result<Self> {
        if map.len() != source.len() || map.iter().any(|&y| y >= target.len()) {
            return Err(Error::DimensionMismatch {
                expected: (source.len(), target.len()),
                found: (map.len(), map.iter().copied().max().map_or(0, |m| m + 1)),
            });
        }
        let name_of = |x: usize| source.name(x).to_owned();
        if map[source.zero()] != target.zero() {
            return Err(Error::MorphismViolated {
                clause: "zero",
                witness: Witness::new().with("x", name_of(source.zero())),
            });
        }
        for x in 0..source.len() {
            for y in 0..source.len() {
                if source.leq(x, y) && !target.leq(map[x], map[y]) {
                    return Err(Error::MorphismViolated {
                        clause: "monotone",
                        witness: Witness::new().with("x", name_of(x)).with("y", name_of(y)),
                    });
                }
                if map[source.meet(x, y)] != target.meet(map[x], map[y]) {
                    return Err(Error::MorphismViolated {
                        clause: "meet",
                        witness: Witness::new().with("x", name_of(x)).with("y", name_of(y)),
                    });
                }
            }
        }
        Ok(Self {
            source,
            target,
            map,
        })
    }

    /// Map given by `(x, f(x))` name pairs; unlisted elements go to zero.
    pub fn from_names<S: AsRef<str>>(
        source: Arc<MeetSemilattice>,
        target: Arc<MeetSemilattice>,
        entries: &[(S, S)],
    ) -> Result<Self> {
        let mut map = vec![target.zero(); source.len()];
        for (x, y) in entries {
            map[source.element(x.as_ref())?] = target.element(y.as_ref())?;
        }
        Self::new(source, target, map)
    }

    pub fn identity(s: Arc<MeetSemilattice>) -> Self {
        let map = (0..s.len()).collect();
        Self {
            source: s.clone(),
            target: s,
            map,
        }
    }

    pub fn constant_zero(source: Arc<MeetSemilattice>, target: Arc<MeetSemilattice>) -> Self {
        let map = vec![target.zero(); source.len()];
        Self {
            source,
            target,
            map,
        }
    }

    pub fn source(&self) -> &Arc<MeetSemilattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<MeetSemilattice> {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `g ∘ self`
    pub fn then(&self, g: &SemilatticeMorphism) -> Result<SemilatticeMorphism> {
        if !same_carrier(&self.target, &g.source) {
            return Err(Error::MiddleMismatch);
        }
        Ok(SemilatticeMorphism {
            source: self.source.clone(),
            target: g.target.clone(),
            map: self.map.iter().map(|&y| g.map[y]).collect(),
        })
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = empty_set(self.target.len());
        self.map.len() == self.target.len() && self.map.iter().all(|&y| !seen.put(y))
    }

    /// Bijective and order-reflecting.
    pub fn is_isomorphism(&self) -> bool {
        self.is_bijective()
            && (0..self.source.len()).all(|x| {
                (0..self.source.len())
                    .all(|y| self.source.leq(x, y) == self.target.leq(self.map[x], self.map[y]))
            })
    }

    pub fn preimage(&self, set: &ElemSet) -> ElemSet {
        crate::bits::set_of(
            self.source.len(),
            (0..self.source.len()).filter(|&x| set.contains(self.map[x])),
        )
    }
}

/// `f^(F) = f⁻¹(F)`, a morphism `S2^ -> S1^` for `f : S1 -> S2`.
pub fn dual_map(f: &SemilatticeMorphism) -> Result<SemilatticeMorphism> {
    let d1 = lawson_dual(f.source());
    let d2 = lawson_dual(f.target());
    dual_map_between(f, &d1, &d2)
}

pub fn dual_map_between(
    f: &SemilatticeMorphism,
    d1: &DualSemilattice,
    d2: &DualSemilattice,
) -> Result<SemilatticeMorphism> {
    if !same_carrier(d1.base(), f.source()) || !same_carrier(d2.base(), f.target()) {
        return Err(Error::CarrierMismatch("dual_map expects the duals of source and target"));
    }
    let map = (0..d2.filters().len())
        .map(|g| {
            let pre = f.preimage(d2.filter(g));
            d1.index_of_filter(&pre).ok_or_else(|| {
                Error::PreimageNotProperFilter(d2.semilattice().name(g).to_owned())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    SemilatticeMorphism::new(d2.semilattice().clone(), d1.semilattice().clone(), map)
}

/// `u_S : S -> S^^`, `s ↦ {F ∈ S^ | s ∈ F}`.
pub fn canonical_iso(s: &Arc<MeetSemilattice>) -> SemilatticeMorphism {
    let d = lawson_dual(s);
    let dd = lawson_dual(d.semilattice());
    let map = (0..s.len())
        .map(|x| {
            let containing = crate::bits::set_of(
                d.filters().len(),
                (0..d.filters().len()).filter(|&f| d.filter(f).contains(x)),
            );
            dd.index_of_filter(&containing)
                .expect("evaluation at a point is a proper filter of the dual")
        })
        .collect();
    SemilatticeMorphism::new(s.clone(), dd.semilattice().clone(), map)
        .expect("evaluation map is a morphism")
}

/// Every zero-preserving meet morphism `s1 -> s2`, up to `limit` of them, in
/// lexicographic order of their tables.
pub fn enumerate_morphisms(
    s1: &Arc<MeetSemilattice>,
    s2: &Arc<MeetSemilattice>,
    limit: usize,
) -> Vec<SemilatticeMorphism> {
    fn extend(
        s1: &MeetSemilattice,
        s2: &MeetSemilattice,
        map: &mut Vec<Option<usize>>,
        next: usize,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if next == s1.len() {
            out.push(map.iter().map(|v| v.unwrap()).collect());
            return;
        }
        let candidates: Vec<usize> = match map[next] {
            Some(v) => vec![v],
            None => (0..s2.len()).collect(),
        };
        let preset = map[next].is_some();
        for v in candidates {
            map[next] = Some(v);
            let consistent = (0..s1.len()).all(|a| {
                let Some(fa) = map[a] else { return true };
                if s1.leq(a, next) && !s2.leq(fa, v) || s1.leq(next, a) && !s2.leq(v, fa) {
                    return false;
                }
                match map[s1.meet(a, next)] {
                    Some(fm) => fm == s2.meet(fa, v),
                    None => true,
                }
            });
            if consistent {
                extend(s1, s2, map, next + 1, out, limit);
            }
        }
        if !preset {
            map[next] = None;
        }
    }
    let mut map = vec![None; s1.len()];
    map[s1.zero()] = Some(s2.zero());
    let mut tables = Vec::new();
    extend(s1, s2, &mut map, 0, &mut tables, limit);
    tables
        .into_iter()
        .map(|t| SemilatticeMorphism::new(s1.clone(), s2.clone(), t).expect("enumerated morphism"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::set_of;
    use crate::catalog;

    fn arc(s: MeetSemilattice) -> Arc<MeetSemilattice> {
        Arc::new(s)
    }

    #[test]
    fn diamond_dual_has_no_top() {
        let d4 = arc(catalog::diamond());
        let d = lawson_dual(&d4);
        let names: Vec<Vec<&str>> = d.filters().iter().map(|f| d4.set_names(f)).collect();
        assert_eq!(names, vec![vec![], vec!["a", "1"], vec!["b", "1"], vec!["1"]]);
        assert_eq!(d.semilattice().top(), None);
        let ds = d.semilattice();
        let bottom = ds.element("^0").unwrap();
        let one = ds.element("^1").unwrap();
        assert_eq!(ds.zero(), bottom);
        assert!(ds.leq(one, ds.element("^a").unwrap()));
        assert!(ds.leq(one, ds.element("^b").unwrap()));
    }

    #[test]
    fn vee_and_chain_are_self_dual() {
        let v3 = arc(catalog::vee());
        assert!(lawson_dual(&v3).semilattice().is_isomorphic(v3.poset()));
        let c2 = arc(catalog::chain(2));
        assert!(lawson_dual(&c2).semilattice().is_isomorphic(c2.poset()));
    }

    #[test]
    fn dual_map_preimages() {
        let c2 = arc(catalog::chain(2));
        let c3 = arc(catalog::chain(3));
        let f = SemilatticeMorphism::from_names(c2.clone(), c3.clone(), &[("1", "m")]).unwrap();
        let fd = dual_map(&f).unwrap();
        let (src, dst) = (fd.source(), fd.target());
        let img = |n: &str| dst.name(fd.apply(src.element(n).unwrap())).to_owned();
        assert_eq!(img("^0"), "^0");
        assert_eq!(img("^1"), "^0");
        assert_eq!(img("^m"), "^1");

        let id = SemilatticeMorphism::identity(c3.clone());
        let idd = dual_map(&id).unwrap();
        assert_eq!(idd, SemilatticeMorphism::identity(idd.source().clone()));

        let z = SemilatticeMorphism::constant_zero(c3.clone(), c2.clone());
        let zd = dual_map(&z).unwrap();
        assert!(zd.table().iter().all(|&y| y == zd.target().zero()));
    }

    #[test]
    fn canonical_iso_examples() {
        let d4 = arc(catalog::diamond());
        let u = canonical_iso(&d4);
        assert!(u.is_isomorphism());
        assert_eq!(u.target().top().map(|t| u.target().name(t)), Some("1"));
        assert_eq!(u.apply(0), u.target().zero());

        let c3 = arc(catalog::chain(3));
        let d = lawson_dual(&c3);
        let m = c3.element("m").unwrap();
        let uc = canonical_iso(&c3);
        // u(m) = {F | m ∈ F} = ↑(↑m), and ↑m is the top of C3^.
        let containing: Vec<&str> = (0..3)
            .filter(|&f| d.filter(f).contains(m))
            .map(|f| d.semilattice().name(f))
            .collect();
        assert_eq!(containing, vec!["^m"]);
        assert_eq!(uc.target().name(uc.apply(m)), "m");
    }

    #[test]
    fn filter_element_round_trip() {
        let c3 = arc(catalog::chain(3));
        let d = lawson_dual(&c3);
        let m = c3.element("m").unwrap();
        assert_eq!(d.filter(d.filter_of(m)), &set_of(3, [m, 2]));
        assert_eq!(d.element_of(d.filter_of(0)), 0);
        assert!(d.filter(d.filter_of(0)).is_clear());
        for s in 0..3 {
            assert_eq!(d.element_of(d.filter_of(s)), s);
        }
    }

    #[test]
    fn morphism_validation() {
        let c2 = arc(catalog::chain(2));
        let v3 = arc(catalog::vee());
        // a ↦ 1, b ↦ 1 keeps zero but breaks a ∧ b = 0.
        let err = SemilatticeMorphism::from_names(v3.clone(), c2.clone(), &[("a", "1"), ("b", "1")]);
        assert!(matches!(err, Err(Error::MorphismViolated { clause: "meet", .. })));
        let err = SemilatticeMorphism::new(c2.clone(), c2.clone(), vec![1, 1]);
        assert!(matches!(err, Err(Error::MorphismViolated { clause: "zero", .. })));
    }

    #[test]
    fn flip_is_involutive() {
        assert_eq!(flip_name("a"), "^a");
        assert_eq!(flip_name("^a"), "a");
        assert_eq!(flip_name(&flip_name("b")), "b");
    }

    #[test]
    fn morphism_enumeration() {
        let c2 = Arc::new(crate::catalog::chain(2));
        let c3 = Arc::new(crate::catalog::chain(3));
        // 1 may go to 0, m or 1.
        assert_eq!(enumerate_morphisms(&c2, &c3, usize::MAX).len(), 3);
        let d4 = Arc::new(crate::catalog::diamond());
        let all = enumerate_morphisms(&d4, &d4, usize::MAX);
        assert!(all.iter().all(|f| SemilatticeMorphism::new(d4.clone(), d4.clone(), f.table().to_vec()).is_ok()));
        assert!(all.contains(&SemilatticeMorphism::identity(d4.clone())));
        assert_eq!(enumerate_morphisms(&d4, &d4, 2).len(), 2);
    }
}
