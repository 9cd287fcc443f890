//! Named small structures used by tests, demos and the law suites.

use crate::fuzzy::Quantale;
use crate::order::{BoundedLattice, FinitePoset, MeetSemilattice};

fn chain_names(n: usize) -> Vec<String> {
    assert!(n >= 1);
    match n {
        1 => vec!["0".into()],
        2 => vec!["0".into(), "1".into()],
        3 => vec!["0".into(), "m".into(), "1".into()],
        _ => std::iter::once("0".to_string())
            .chain((1..n - 1).map(|i| format!("m{i}")))
            .chain(std::iter::once("1".to_string()))
            .collect(),
    }
}

fn chain_poset(n: usize) -> FinitePoset {
    let names = chain_names(n);
    let less: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    FinitePoset::from_index_pairs(names, &less).unwrap()
}

/// `C_n`: `0 < m < 1` for n = 3, `0 < m1 < .. < 1` beyond.
pub fn chain(n: usize) -> MeetSemilattice {
    MeetSemilattice::new(chain_poset(n)).unwrap()
}

pub fn chain_lattice(n: usize) -> BoundedLattice {
    BoundedLattice::new(chain_poset(n)).unwrap()
}

fn diamond_poset() -> FinitePoset {
    FinitePoset::from_relation(
        &["0", "a", "b", "1"],
        &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
    )
    .unwrap()
}

/// `D4`, the four-element Boolean algebra.
pub fn diamond() -> MeetSemilattice {
    MeetSemilattice::new(diamond_poset()).unwrap()
}

pub fn diamond_lattice() -> BoundedLattice {
    BoundedLattice::new(diamond_poset()).unwrap()
}

/// `V3`: a zero below two incomparable atoms.
pub fn vee() -> MeetSemilattice {
    MeetSemilattice::from_relation(&["0", "a", "b"], &[("0", "a"), ("0", "b")]).unwrap()
}

/// Zero below an antichain of the given width.
pub fn fan(width: usize) -> MeetSemilattice {
    let names: Vec<String> = std::iter::once("0".to_string())
        .chain((1..=width).map(|i| format!("a{i}")))
        .collect();
    let less: Vec<(usize, usize)> = (1..=width).map(|i| (0, i)).collect();
    MeetSemilattice::new(FinitePoset::from_index_pairs(names, &less).unwrap()).unwrap()
}

pub fn m3_lattice() -> BoundedLattice {
    BoundedLattice::from_relation(
        &["0", "a", "b", "c", "1"],
        &[
            ("0", "a"),
            ("0", "b"),
            ("0", "c"),
            ("a", "1"),
            ("b", "1"),
            ("c", "1"),
        ],
    )
    .unwrap()
}

pub fn n5_lattice() -> BoundedLattice {
    BoundedLattice::from_relation(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
    )
    .unwrap()
}

fn boolean_poset(k: usize) -> FinitePoset {
    let letters = b"abcdefgh";
    assert!(k <= letters.len());
    let n = 1usize << k;
    let mut masks: Vec<usize> = (0..n).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let names: Vec<String> = masks
        .iter()
        .map(|&m| {
            if m == 0 {
                "0".to_string()
            } else {
                (0..k)
                    .filter(|b| m >> b & 1 == 1)
                    .map(|b| letters[b] as char)
                    .collect()
            }
        })
        .collect();
    let less: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && masks[i] & masks[j] == masks[i])
        .collect();
    FinitePoset::from_index_pairs(names, &less).unwrap()
}

/// The Boolean algebra of subsets of a `k`-set; elements named by letters.
pub fn boolean_lattice(k: usize) -> BoundedLattice {
    BoundedLattice::new(boolean_poset(k)).unwrap()
}

fn endpoint(i: usize, n: usize) -> String {
    match i {
        0 => "0".into(),
        _ if i == n => "1".into(),
        _ => format!("{i}/{n}"),
    }
}

pub fn segment_name(i: usize, j: usize, n: usize) -> String {
    format!("[{}..{}]", endpoint(i, n), endpoint(j, n))
}

/// Grid segments `[i/n, j/n]` of the unit interval under reverse inclusion,
/// as `(i, j)` endpoint pairs in carrier order. The zero is `[0, 1]`.
pub fn segment_endpoints(n: usize) -> Vec<(usize, usize)> {
    let mut segs: Vec<(usize, usize)> = (0..=n)
        .flat_map(|i| (i..=n).map(move |j| (i, j)))
        .collect();
    segs.sort_by_key(|&(i, j)| (std::cmp::Reverse(j - i), i));
    segs
}

/// `Seg_n`: non-empty grid segments ordered by reverse inclusion; the meet
/// of two segments is their convex hull.
pub fn segments(n: usize) -> MeetSemilattice {
    assert!(n >= 1);
    let segs = segment_endpoints(n);
    let names = segs.iter().map(|&(i, j)| segment_name(i, j, n)).collect();
    let less: Vec<(usize, usize)> = (0..segs.len())
        .flat_map(|p| (0..segs.len()).map(move |q| (p, q)))
        .filter(|&(p, q)| {
            let ((a, b), (c, d)) = (segs[p], segs[q]);
            p != q && a <= c && d <= b
        })
        .collect();
    MeetSemilattice::new(FinitePoset::from_index_pairs(names, &less).unwrap()).unwrap()
}

fn mask_name(mask: u32) -> String {
    if mask == 0 {
        return "0".into();
    }
    (0..26u8)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| (b'a' + b) as char)
        .collect()
}

/// The closure of `masks` under pairwise intersection, ordered by inclusion,
/// with inclusion-maximal members dropped until at most `max_size` remain.
/// Elements are named by their letters (`0` for the empty set).
pub fn intersection_family(masks: &[u32], max_size: usize) -> MeetSemilattice {
    let mut family: Vec<u32> = masks.to_vec();
    family.sort_unstable();
    family.dedup();
    if family.is_empty() {
        family.push(0);
    }
    loop {
        let mut grown = family.clone();
        for (i, &a) in family.iter().enumerate() {
            for &b in &family[i + 1..] {
                grown.push(a & b);
            }
        }
        grown.sort_unstable();
        grown.dedup();
        if grown.len() == family.len() {
            break;
        }
        family = grown;
    }
    // Dropping a maximal member keeps the family intersection-closed.
    while family.len() > max_size.max(1) {
        let pos = (0..family.len())
            .rev()
            .max_by_key(|&i| {
                let m = family[i];
                let maximal = family.iter().all(|&o| o == m || o & m != m);
                (maximal, m.count_ones(), m)
            })
            .unwrap();
        family.remove(pos);
    }
    family.sort_by_key(|m| (m.count_ones(), *m));
    let names = family.iter().map(|&m| mask_name(m)).collect();
    let less: Vec<(usize, usize)> = (0..family.len())
        .flat_map(|i| (0..family.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && family[i] & family[j] == family[i])
        .collect();
    MeetSemilattice::new(FinitePoset::from_index_pairs(names, &less).unwrap())
        .expect("intersection-closed family has meets and a least member")
}

/// `*` is the lattice meet.
pub fn meet_quantale(lattice: BoundedLattice) -> Quantale {
    let n = lattice.len();
    let mul = (0..n * n).map(|k| lattice.meet(k / n, k % n)).collect();
    Quantale::new(lattice, mul).expect("meet quantale on a distributive lattice")
}

/// Lukasiewicz t-norm `max(0, a + b - (k - 1))` on the chain `C_k`.
pub fn lukasiewicz_quantale(k: usize) -> Quantale {
    let lattice = chain_lattice(k);
    let mul = (0..k * k)
        .map(|p| (p / k + p % k).saturating_sub(k - 1))
        .collect();
    Quantale::new(lattice, mul).expect("Lukasiewicz quantale")
}

/// Name of the binary relation on `{0, 1}` with pair bits
/// `(0,0), (0,1), (1,0), (1,1)` in that order.
pub fn relation_name(mask: usize) -> String {
    let bits: String = (0..4)
        .map(|b| if mask >> b & 1 == 1 { '1' } else { '0' })
        .collect();
    format!("R{bits}")
}

/// Relations on a 2-point set under inclusion, with relational composition
/// (`a * b` = first `a`, then `b`) and the identity relation as unit.
pub fn rel2_quantale() -> Quantale {
    let names: Vec<String> = (0..16).map(relation_name).collect();
    let less: Vec<(usize, usize)> = (0..16)
        .flat_map(|i| (0..16).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && i & j == i)
        .collect();
    let lattice = BoundedLattice::new(FinitePoset::from_index_pairs(names, &less).unwrap()).unwrap();
    let pair = |b: usize| (b >> 1, b & 1);
    let compose = |a: usize, b: usize| {
        let mut out = 0;
        for p in (0..4).filter(|p| a >> p & 1 == 1) {
            for q in (0..4).filter(|q| b >> q & 1 == 1) {
                let ((x, y), (y2, z)) = (pair(p), pair(q));
                if y == y2 {
                    out |= 1 << (x * 2 + z);
                }
            }
        }
        out
    };
    let mul = (0..256).map(|k| compose(k / 16, k % 16)).collect();
    Quantale::new(lattice, mul).expect("relation quantale")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segments_grid_six() {
        let s = segments(6);
        assert_eq!(s.len(), 28);
        assert_eq!(s.name(s.zero()), "[0..1]");
        let a = s.element("[0..2/6]").unwrap();
        let b = s.element("[4/6..1]").unwrap();
        assert_eq!(s.name(s.meet(a, b)), "[0..1]");
    }

    #[test]
    fn boolean_names() {
        let b3 = boolean_lattice(3);
        assert_eq!(b3.len(), 8);
        assert_eq!(b3.name(b3.one()), "abc");
        assert!(b3.is_distributive());
    }

    #[test]
    fn rel2_is_noncommutative() {
        let q = rel2_quantale();
        let e01 = q.lattice().element("R0100").unwrap();
        let e10 = q.lattice().element("R0010").unwrap();
        assert_eq!(q.lattice().name(q.mul(e01, e10)), "R1000");
        assert_eq!(q.lattice().name(q.mul(e10, e01)), "R0001");
        assert_eq!(q.lattice().name(q.unit()), "R1001");
    }

    #[test]
    fn intersection_families() {
        let s = intersection_family(&[0b011, 0b110], 10);
        assert_eq!(s.names(), &["b", "ab", "bc"]);
        assert_eq!(s.name(s.zero()), "b");
        let big = intersection_family(&[0b0111, 0b1011, 0b1101, 0b1110], 5);
        assert_eq!(big.len(), 5);
        assert_eq!(intersection_family(&[], 3).len(), 1);
    }
}
