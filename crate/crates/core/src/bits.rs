//! Bit-packed sets and relations over densely indexed carriers.

use fixedbitset::FixedBitSet;

/// A subset of a carrier `{0, .., n-1}`.
pub type ElemSet = FixedBitSet;

pub fn empty_set(n: usize) -> ElemSet {
    FixedBitSet::with_capacity(n)
}

pub fn full_set(n: usize) -> ElemSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}

pub fn set_of(n: usize, members: impl IntoIterator<Item = usize>) -> ElemSet {
    let mut s = FixedBitSet::with_capacity(n);
    for m in members {
        s.insert(m);
    }
    s
}

/// A binary relation between carriers of sizes `rows` and `cols`, stored row-wise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: Vec<ElemSet>,
    cols: usize,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![empty_set(cols); rows],
            cols,
        }
    }

    pub fn full(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![full_set(cols); rows],
            cols,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::new(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.rows[i].insert(j);
                }
            }
        }
        m
    }

    pub fn from_pairs(rows: usize, cols: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut m = Self::new(rows, cols);
        for (i, j) in pairs {
            m.set(i, j, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    pub fn row(&self, i: usize) -> &ElemSet {
        &self.rows[i]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut ElemSet {
        &mut self.rows[i]
    }

    pub fn column(&self, j: usize) -> ElemSet {
        set_of(self.rows.len(), (0..self.rows.len()).filter(|&i| self.get(i, j)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows.len(), |i, j| self.get(j, i))
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.rows.len() == other.rows.len()
            && self.cols == other.cols
            && self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    pub fn intersect_with(&mut self, other: &Self) {
        for (a, b) in self.rows.iter_mut().zip(&other.rows) {
            a.intersect_with(b);
        }
    }

    pub fn union_with(&mut self, other: &Self) {
        for (a, b) in self.rows.iter_mut().zip(&other.rows) {
            a.union_with(b);
        }
    }

    /// Relational product: `(i, k)` iff some `j` has `(i, j)` here and `(j, k)` in `other`.
    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::new(self.rows.len(), other.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.ones() {
                out.rows[i].union_with(&other.rows[j]);
            }
        }
        out
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.ones().map(move |j| (i, j)))
    }

    pub fn count_ones(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    /// First pair present in `self` but not in `other`.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        self.pairs().find(|&(i, j)| !other.get(i, j))
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut l = f.debug_list();
        for r in &self.rows {
            let bits: String = (0..self.cols)
                .map(|j| if r.contains(j) { '1' } else { '0' })
                .collect();
            l.entry(&bits);
        }
        l.finish()
    }
}

/// A ternary relation `A x B x C`, used for the raw triple form of
/// lattice-valued representations.
#[derive(Clone, PartialEq, Eq)]
pub struct Ternary {
    dims: (usize, usize, usize),
    bits: FixedBitSet,
}

impl Ternary {
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        Self {
            dims: (a, b, c),
            bits: FixedBitSet::with_capacity(a * b * c),
        }
    }

    pub fn from_fn(a: usize, b: usize, c: usize, mut f: impl FnMut(usize, usize, usize) -> bool) -> Self {
        let mut t = Self::new(a, b, c);
        for i in 0..a {
            for j in 0..b {
                for k in 0..c {
                    if f(i, j, k) {
                        t.set(i, j, k, true);
                    }
                }
            }
        }
        t
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        self.dims
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dims.1 + j) * self.dims.2 + k
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> bool {
        self.bits.contains(self.index(i, j, k))
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: bool) {
        let at = self.index(i, j, k);
        self.bits.set(at, value);
    }

    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let (_, b, c) = self.dims;
        self.bits.ones().map(move |t| (t / (b * c), t / c % b, t % c))
    }

    pub fn count(&self) -> usize {
        self.bits.count_ones(..)
    }
}

impl std::fmt::Debug for Ternary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.triples()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let r = BitMatrix::from_pairs(2, 3, [(0, 1), (1, 2)]);
        let q = BitMatrix::from_pairs(3, 2, [(1, 0), (2, 1)]);
        let rq = r.product(&q);
        assert_eq!(rq, BitMatrix::from_pairs(2, 2, [(0, 0), (1, 1)]));
        assert_eq!(r.transpose().transpose(), r);
        assert!(r.transpose().get(2, 1));
        assert_eq!(r.column(2), set_of(2, [1]));
    }

    #[test]
    fn first_difference_reports_missing_pair() {
        let a = BitMatrix::from_pairs(2, 2, [(0, 0), (1, 1)]);
        let b = BitMatrix::from_pairs(2, 2, [(0, 0)]);
        assert_eq!(a.first_difference(&b), Some((1, 1)));
        assert_eq!(b.first_difference(&a), None);
        assert!(b.is_subset(&a));
    }

    #[test]
    fn ternary_indexing() {
        let t = Ternary::from_fn(2, 3, 4, |i, j, k| i == 1 && j == 2 && k == 3);
        assert_eq!(t.triples().collect::<Vec<_>>(), vec![(1, 2, 3)]);
        assert_eq!(t.count(), 1);
    }
}
