//! Brute-force reference implementations. Each one evaluates a definition by
//! direct quantification over subsets, witnesses or tables, and touches only
//! the raw order, meet and join tables of its inputs. They are exponential
//! and guarded by size caps.

use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::bits::{set_of, BitMatrix, Ternary};
use crate::compat::Compatibility;
use crate::crisp::CrispRep;
use crate::dual::DualSemilattice;
use crate::error::{Error, Result, Witness};
use crate::fuzzy::{FuzzyRep, Quantale};
use crate::order::{BoundedLattice, FinitePoset, MeetSemilattice};

pub const SUBSET_CAP: usize = 16;
pub const TABLE_CAP: usize = 16;
pub const CD_CAP: usize = 4;

fn cap(operation: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(Error::SizeCap {
            operation,
            size,
            cap,
        })
    } else {
        Ok(())
    }
}

fn mask_of(p: &FinitePoset, pred: impl Fn(usize) -> bool) -> u32 {
    (0..p.len()).filter(|&i| pred(i)).fold(0, |m, i| m | 1 << i)
}

/// `x ≪ y` iff every directed `D` (the empty set included) whose sup
/// dominates `y` meets `↓x`.
pub fn wb_oracle(p: &FinitePoset) -> Result<BitMatrix> {
    let n = p.len();
    cap("wb_oracle", n, SUBSET_CAP)?;
    let ups: Vec<u32> = (0..n).map(|x| mask_of(p, |z| p.leq(x, z))).collect();
    let downs: Vec<u32> = (0..n).map(|x| mask_of(p, |z| p.leq(z, x))).collect();
    let all: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    // refuted[y] collects the x with some directed D, sup D >= y, D ∩ ↑x = ∅.
    let mut refuted = vec![0u32; n];
    for d in 0..=all {
        let members: Vec<usize> = (0..n).filter(|&i| d >> i & 1 == 1).collect();
        let directed = members
            .iter()
            .all(|&a| members.iter().all(|&b| ups[a] & ups[b] & d != 0));
        if !directed {
            continue;
        }
        let bounds = members.iter().fold(all, |m, &a| m & ups[a]);
        let Some(sup) = (0..n).find(|&s| bounds >> s & 1 == 1 && ups[s] & bounds == bounds) else {
            continue;
        };
        let below_d = members.iter().fold(0u32, |m, &a| m | downs[a]);
        for y in (0..n).filter(|&y| downs[sup] >> y & 1 == 1) {
            refuted[y] |= all & !below_d;
        }
    }
    Ok(BitMatrix::from_fn(n, n, |x, y| refuted[y] >> x & 1 == 0))
}

/// All proper Scott-open filters (upper, meet-closed, inaccessible by
/// directed sups, not the whole carrier), found by subset enumeration.
pub fn dual_oracle(s: &Arc<MeetSemilattice>) -> Result<DualSemilattice> {
    let n = s.len();
    cap("dual_oracle", n, SUBSET_CAP)?;
    let all: u32 = (1u32 << n) - 1;
    let mut filters = Vec::new();
    for f in 0..all {
        let has = |i: usize| f >> i & 1 == 1;
        let upper = (0..n).all(|a| !has(a) || (0..n).all(|b| !s.leq(a, b) || has(b)));
        let closed = (0..n).all(|a| (0..n).all(|b| !(has(a) && has(b)) || has(s.meet(a, b))));
        if !(upper && closed) {
            continue;
        }
        let mut open = true;
        for d in 0..=all {
            let members: Vec<usize> = (0..n).filter(|&i| d >> i & 1 == 1).collect();
            let directed = members.iter().all(|&a| {
                members
                    .iter()
                    .all(|&b| members.iter().any(|&c| s.leq(a, c) && s.leq(b, c)))
            });
            if !directed {
                continue;
            }
            let sup = (0..n).find(|&c| {
                members.iter().all(|&a| s.leq(a, c))
                    && (0..n).all(|u| !members.iter().all(|&a| s.leq(a, u)) || s.leq(c, u))
            });
            if let Some(c) = sup {
                if has(c) && !members.iter().any(|&a| has(a)) {
                    open = false;
                    break;
                }
            }
        }
        if open {
            filters.push(set_of(n, (0..n).filter(|&i| has(i))));
        }
    }
    DualSemilattice::from_filters(s.clone(), filters)
}

fn literal_separating(p: &Compatibility) -> bool {
    let (n, m) = (p.left().len(), p.right().len());
    let rows = (0..n).all(|a| (0..n).all(|b| a == b || (0..m).any(|y| p.get(a, y) != p.get(b, y))));
    let cols = (0..m).all(|a| (0..m).all(|b| a == b || (0..n).any(|x| p.get(x, a) != p.get(x, b))));
    rows && cols
}

fn require_separating(p: &Compatibility) -> Result<()> {
    if literal_separating(p) {
        Ok(())
    } else {
        Err(Error::NotSeparating(Witness::new().with("oracle", "rows or columns repeat")))
    }
}

/// `(ŷ, x̂) ∈ R^♯` iff whenever `xP1x̂ = 1` there is `y ∈ xR` with `yP2ŷ = 1`.
pub fn pinv_oracle(r: &CrispRep, p1: &Compatibility, p2: &Compatibility) -> Result<CrispRep> {
    require_separating(p1)?;
    require_separating(p2)?;
    let (n1, n2) = (r.source().len(), r.target().len());
    let (d1, d2) = (p1.right(), p2.right());
    let table = BitMatrix::from_fn(d2.len(), d1.len(), |yh, xh| {
        (0..n1).all(|x| !p1.get(x, xh) || (0..n2).any(|y| r.get(x, y) && p2.get(y, yh)))
    });
    CrispRep::new(d2.clone(), d1.clone(), table)
}

/// `(ŷ, x̂, a) ∈ R^♯` iff for all `b ≪ a` and all `x` with `xP1x̂ = 1`
/// there is `(y, b) ∈ xR` with `yP2ŷ = 1`.
pub fn fuzzy_pinv_oracle(r: &FuzzyRep, p1: &Compatibility, p2: &Compatibility) -> Result<FuzzyRep> {
    require_separating(p1)?;
    require_separating(p2)?;
    let l = r.lattice();
    let wbl = wb_oracle(l)?;
    let (n1, n2, nl) = (r.source().len(), r.target().len(), l.len());
    let (d1, d2) = (p1.right(), p2.right());
    let rel = Ternary::from_fn(d2.len(), d1.len(), nl, |yh, xh, a| {
        (0..nl).filter(|&b| wbl.get(b, a)).all(|b| {
            (0..n1).all(|x| {
                !p1.get(x, xh) || (0..n2).any(|y| l.leq(b, r.grade(x, y)) && p2.get(y, yh))
            })
        })
    });
    FuzzyRep::from_triples(d2.clone(), d1.clone(), l.clone(), &rel)
}

/// Crisp `R;Q` from "for all `z' ≪ z` there is `y` with `(x, y) ∈ R`,
/// `(y, z') ∈ Q`".
pub fn compose_literal(r: &CrispRep, q: &CrispRep) -> Result<CrispRep> {
    if r.target() != q.source() {
        return Err(Error::MiddleMismatch);
    }
    let wb3 = wb_oracle(q.target())?;
    let (n1, n2, n3) = (r.source().len(), r.target().len(), q.target().len());
    let table = BitMatrix::from_fn(n1, n3, |x, z| {
        (0..n3)
            .filter(|&z2| wb3.get(z2, z))
            .all(|z2| (0..n2).any(|y| r.get(x, y) && q.get(y, z2)))
    });
    CrispRep::new(r.source().clone(), q.target().clone(), table)
}

/// `(x, z, a) ∈ R⊛Q` iff for all `z' ≪ z`, `a' ≪ a` there are finitely
/// many `(x, y_i, b_i) ∈ R`, `(y_i, z', c_i) ∈ Q` with
/// `b_1*c_1 ∨ .. ∨ b_n*c_n >= a'`.
pub fn compose_expanded(r: &FuzzyRep, q: &FuzzyRep, quantale: &Quantale) -> Result<FuzzyRep> {
    if r.target() != q.source() {
        return Err(Error::MiddleMismatch);
    }
    let l = r.lattice();
    if l != quantale.lattice() || l != q.lattice() {
        return Err(Error::QuantaleLatticeMismatch);
    }
    let (n1, n2, n3, nl) = (r.source().len(), r.target().len(), q.target().len(), l.len());
    cap("compose_expanded", n2 * nl, 256)?;
    let wb3 = wb_oracle(q.target())?;
    let wbl = wb_oracle(l)?;
    // joins[x][z'] = every value of a finite join of witnessed products.
    let reachable = |x: usize, z2: usize| -> Vec<bool> {
        let mut products = Vec::new();
        for y in 0..n2 {
            for b in (0..nl).filter(|&b| l.leq(b, r.grade(x, y))) {
                for c in (0..nl).filter(|&c| l.leq(c, q.grade(y, z2))) {
                    products.push(quantale.mul(b, c));
                }
            }
        }
        let mut seen = vec![false; nl];
        // n = 0 gives the empty join.
        let mut stack = vec![l.zero()];
        seen[l.zero()] = true;
        while let Some(v) = stack.pop() {
            for &p in &products {
                let w = l.join(v, p);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    };
    let reach: Vec<Vec<bool>> = (0..n1 * n3).map(|k| reachable(k / n3, k % n3)).collect();
    let rel = Ternary::from_fn(n1, n3, nl, |x, z, a| {
        (0..n3).filter(|&z2| wb3.get(z2, z)).all(|z2| {
            let seen = &reach[x * n3 + z2];
            (0..nl)
                .filter(|&a2| wbl.get(a2, a))
                .all(|a2| (0..nl).any(|v| seen[v] && l.leq(a2, v)))
        })
    });
    FuzzyRep::from_triples(r.source().clone(), q.target().clone(), l.clone(), &rel)
}

fn literal_compatibility(s: &MeetSemilattice, t: &MeetSemilattice, bits: u32) -> bool {
    let m = t.len();
    let get = |x: usize, y: usize| bits >> (x * m + y) & 1 == 1;
    let (n, z, z2) = (s.len(), s.zero(), t.zero());
    (0..m).all(|y| !get(z, y))
        && (0..n).all(|x| !get(x, z2))
        && (0..n).all(|a| {
            (0..n).all(|b| (0..m).all(|y| get(s.meet(a, b), y) == (get(a, y) && get(b, y))))
        })
        && (0..n).all(|x| {
            (0..m).all(|a| (0..m).all(|b| get(x, t.meet(a, b)) == (get(x, a) && get(x, b))))
        })
        && (0..n).all(|a| {
            (0..n).all(|b| {
                !s.leq(a, b) || (0..m).all(|y| !get(a, y) || get(b, y))
            })
        })
        && (0..m).all(|a| {
            (0..m).all(|b| {
                !t.leq(a, b) || (0..n).all(|x| !get(x, a) || get(x, b))
            })
        })
}

/// Every separating compatibility `S x S' -> {0,1}`, by enumerating all
/// `2^(|S||S'|)` tables.
pub fn search_separating(
    s: &Arc<MeetSemilattice>,
    t: &Arc<MeetSemilattice>,
) -> Result<Vec<Compatibility>> {
    let (n, m) = (s.len(), t.len());
    cap("search_separating", n * m, TABLE_CAP)?;
    let mut out = Vec::new();
    for bits in 0u32..(1u32 << (n * m)) {
        if !literal_compatibility(s, t, bits) {
            continue;
        }
        let table = BitMatrix::from_fn(n, m, |x, y| bits >> (x * m + y) & 1 == 1);
        let p = Compatibility::new(s.clone(), t.clone(), table)?;
        if literal_separating(&p) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Order isomorphisms `S -> S'^`, by trying every bijection.
pub fn count_isos_to_dual(s: &Arc<MeetSemilattice>, t: &Arc<MeetSemilattice>) -> Result<usize> {
    cap("count_isos_to_dual", s.len(), 8)?;
    let dual = dual_oracle(t)?;
    let ds = dual.semilattice();
    if ds.len() != s.len() {
        return Ok(0);
    }
    let n = s.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut count = 0;
    let mut check = |p: &[usize]| {
        let ok = (0..n).all(|a| (0..n).all(|b| s.leq(a, b) == ds.leq(p[a], p[b])));
        if ok {
            count += 1;
        }
    };
    heap_permutations(&mut perm, n, &mut check);
    Ok(count)
}

fn heap_permutations(a: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k <= 1 {
        visit(a);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(a, k - 1, visit);
        if k.is_multiple_of(2) {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
    heap_permutations(a, k - 1, visit);
}

pub type Triple = (usize, usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutsLemmaReport {
    pub relation_lower: bool,
    pub cuts_lower: bool,
    /// A triple in a non-lower cut and a smaller one missing from it.
    pub witness: Option<(Triple, Triple)>,
}

/// Compares "the relation is lower in `P1 x P2 x P3`" with "every
/// one-dimensional cut is lower".
pub fn cuts_lemma_check(
    rel: &Ternary,
    p1: &FinitePoset,
    p2: &FinitePoset,
    p3: &FinitePoset,
) -> CutsLemmaReport {
    let (a, b, c) = rel.dims();
    assert_eq!((a, b, c), (p1.len(), p2.len(), p3.len()));
    let mut relation_lower = true;
    'outer: for (i, j, k) in rel.triples() {
        for i2 in 0..a {
            for j2 in 0..b {
                for k2 in 0..c {
                    if p1.leq(i2, i) && p2.leq(j2, j) && p3.leq(k2, k) && !rel.get(i2, j2, k2) {
                        relation_lower = false;
                        break 'outer;
                    }
                }
            }
        }
    }
    let mut witness = None;
    'cuts: for (i, j, k) in rel.triples() {
        let moves = (0..a)
            .filter(|&i2| p1.leq(i2, i))
            .map(|i2| (i2, j, k))
            .chain((0..b).filter(|&j2| p2.leq(j2, j)).map(|j2| (i, j2, k)))
            .chain((0..c).filter(|&k2| p3.leq(k2, k)).map(|k2| (i, j, k2)));
        for t in moves {
            if !rel.get(t.0, t.1, t.2) {
                witness = Some(((i, j, k), t));
                break 'cuts;
            }
        }
    }
    CutsLemmaReport {
        relation_lower,
        cuts_lower: witness.is_none(),
        witness,
    }
}

/// Complete distributivity `⋀_i ⋁A_i = ⋁_f ⋀_i f(i)` over every family of
/// subsets of a small lattice. The right side is folded one factor at a
/// time over the set of partial meets of choice functions.
pub fn cd_oracle(l: &BoundedLattice) -> Result<bool> {
    let n = l.len();
    cap("cd_oracle", n, CD_CAP)?;
    let subsets = 1usize << n;
    for family in 0u64..(1u64 << subsets) {
        let members: Vec<usize> = (0..subsets).filter(|&k| family >> k & 1 == 1).collect();
        let lhs = members.iter().fold(l.one(), |acc, &k| {
            let sup = (0..n).filter(|&i| k >> i & 1 == 1).fold(l.zero(), |s, i| l.join(s, i));
            l.meet(acc, sup)
        });
        let mut partial = vec![false; n];
        partial[l.one()] = true;
        for &k in &members {
            let mut next = vec![false; n];
            for m in (0..n).filter(|&m| partial[m]) {
                for i in (0..n).filter(|&i| k >> i & 1 == 1) {
                    next[l.meet(m, i)] = true;
                }
            }
            partial = next;
        }
        let rhs = (0..n).filter(|&m| partial[m]).fold(l.zero(), |s, m| l.join(s, m));
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of comparing a production path with its oracle on one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub operation: String,
    pub digest: String,
    pub agree: bool,
    pub witness: Option<String>,
}

impl OracleReport {
    /// `instance` is any stable text rendering of the input.
    pub fn compare<T: PartialEq + std::fmt::Debug>(
        operation: &str,
        instance: &str,
        production: &T,
        oracle: &T,
    ) -> Self {
        let agree = production == oracle;
        Self {
            operation: operation.to_owned(),
            digest: digest(instance),
            agree,
            witness: (!agree).then(|| format!("production {production:?} vs oracle {oracle:?}")),
        }
    }
}

/// First 16 hex digits of the SHA-256 of `text`.
pub fn digest(text: &str) -> String {
    let full = hex::encode(Sha256::digest(text.as_bytes()));
    full[..16].to_owned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn wb_examples() {
        let c3 = catalog::chain(3);
        let wb = wb_oracle(&c3).unwrap();
        assert_eq!(wb.pairs().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]);
        let fan = catalog::fan(3);
        let wb = wb_oracle(&fan).unwrap();
        for x in 0..4 {
            assert!(!wb.get(x, 0));
            for y in 1..4 {
                assert_eq!(wb.get(x, y), fan.leq(x, y));
            }
        }
    }

    #[test]
    fn wb_cap() {
        let big = catalog::chain(17);
        assert!(matches!(wb_oracle(&big), Err(Error::SizeCap { cap: 16, .. })));
    }

    #[test]
    fn dual_on_diamond() {
        let d4 = Arc::new(catalog::diamond());
        let d = dual_oracle(&d4).unwrap();
        assert_eq!(d.filters().len(), 4);
        assert!(d.semilattice().top().is_none());
    }

    #[test]
    fn separating_counts() {
        let c2 = Arc::new(catalog::chain(2));
        let d4 = Arc::new(catalog::diamond());
        assert_eq!(search_separating(&c2, &c2).unwrap().len(), 1);
        assert_eq!(search_separating(&c2, &d4).unwrap().len(), 0);
        assert_eq!(count_isos_to_dual(&c2, &c2).unwrap(), 1);
    }

    #[test]
    fn cd_examples() {
        assert!(cd_oracle(&catalog::diamond_lattice()).unwrap());
        assert!(cd_oracle(&catalog::chain_lattice(4)).unwrap());
        assert!(matches!(cd_oracle(&catalog::m3_lattice()), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn cuts_lemma() {
        let c2 = catalog::chain(2);
        let empty = Ternary::new(2, 2, 2);
        let rep = cuts_lemma_check(&empty, &c2, &c2, &c2);
        assert!(rep.relation_lower && rep.cuts_lower);
        let mut bad = Ternary::new(2, 2, 2);
        bad.set(1, 1, 1, true);
        let rep = cuts_lemma_check(&bad, &c2, &c2, &c2);
        assert!(!rep.relation_lower && !rep.cuts_lower);
        assert_eq!(rep.witness, Some(((1, 1, 1), (0, 1, 1))));
    }

    #[test]
    fn digest_is_stable() {
        assert_eq!(digest("abc"), "ba7816bf8f01cfea");
    }
}
