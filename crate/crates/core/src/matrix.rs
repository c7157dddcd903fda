//! Dense Boolean matrices with bit-packed rows.
//!
//! A relation `X -> Y` is stored as an `|X| x |Y|` matrix; row `i` is the set
//! of codomain indices related to domain index `i`. Composition is the Boolean
//! product, computed by OR-ing whole rows.

use std::cmp::Ordering;
use std::fmt;

const WORD: usize = u64::BITS as usize;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(WORD);
        BitMatrix {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// The `index`-th matrix of the given shape in lexicographic cell order
    /// (row-major, `false < true`). Requires `rows * cols < 64`.
    pub fn from_index(rows: usize, cols: usize, index: u64) -> Self {
        let cells = rows * cols;
        assert!(cells < 64, "shape {rows}x{cols} too large to index");
        Self::from_fn(rows, cols, |i, j| {
            let k = i * cols + j;
            index >> (cells - 1 - k) & 1 == 1
        })
    }

    /// Every matrix of the given shape, in lexicographic cell order.
    pub fn all(rows: usize, cols: usize) -> impl Iterator<Item = BitMatrix> {
        let cells = rows * cols;
        assert!(cells < 64, "shape {rows}x{cols} too large to enumerate");
        (0..1u64 << cells).map(move |n| Self::from_index(rows, cols, n))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        self.words[i * self.stride + j / WORD] >> (j % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(
            i < self.rows && j < self.cols,
            "cell ({i},{j}) out of bounds"
        );
        let w = &mut self.words[i * self.stride + j / WORD];
        let bit = 1u64 << (j % WORD);
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.words[i * self.stride..(i + 1) * self.stride]
    }

    /// Column indices set in row `i`, ascending.
    pub fn row_indices(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.cols).filter(move |&j| self.get(i, j))
    }

    pub fn row_count(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn col_count(&self, j: usize) -> usize {
        (0..self.rows).filter(|&i| self.get(i, j)).count()
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| self.row_count(i) == 1 && self.get(i, i))
    }

    /// Columns with at least one set cell.
    pub fn column_support(&self) -> Vec<u64> {
        let mut acc = vec![0; self.stride];
        for i in 0..self.rows {
            or_into(&mut acc, self.row(i));
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Relational composite "first `self`, then `next`": for `self: X -> Y`
    /// and `next: Y -> Z` the result `X -> Z` relates `x` to `z` iff some `y`
    /// has `x self y` and `y next z`.
    pub fn then(&self, next: &BitMatrix) -> Self {
        assert_eq!(self.cols, next.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, next.cols);
        for i in 0..self.rows {
            let dst = i * out.stride;
            for y in self.row_indices(i) {
                let src = next.row(y);
                for (d, s) in out.words[dst..dst + out.stride].iter_mut().zip(src) {
                    *d |= s;
                }
            }
        }
        out
    }

    /// Union of the rows whose indices are set in `selector` (a bitset over
    /// this matrix's rows).
    pub fn union_of_rows(&self, selector: &[u64]) -> Vec<u64> {
        let mut acc = vec![0; self.stride];
        for i in 0..self.rows {
            if test_bit(selector, i) {
                or_into(&mut acc, self.row(i));
            }
        }
        acc
    }

    /// `true` when every cell set in `self` is also set in `other`.
    pub fn is_subset_of(&self, other: &BitMatrix) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    /// Vertical concatenation; all parts must share a column count.
    pub fn stack<'a>(cols: usize, parts: impl IntoIterator<Item = &'a BitMatrix>) -> Self {
        let mut out = Self::zeros(0, cols);
        for p in parts {
            assert_eq!(p.cols, cols, "stacked parts must share a column count");
            out.words.extend_from_slice(&p.words);
            out.rows += p.rows;
        }
        out
    }

    /// Overwrite row `i` with a bitset of matching width.
    pub fn set_row(&mut self, i: usize, bits: &[u64]) {
        assert_eq!(bits.len(), self.stride);
        self.words[i * self.stride..(i + 1) * self.stride].copy_from_slice(bits);
    }

    /// Row `i` of the result is row `perm[i]` of `self`.
    pub fn select_rows(&self, perm: &[usize]) -> Self {
        let mut out = Self::zeros(perm.len(), self.cols);
        for (i, &src) in perm.iter().enumerate() {
            out.set_row(i, self.row(src));
        }
        out
    }

    /// Column `j` of the result is column `perm[j]` of `self`.
    pub fn select_cols(&self, perm: &[usize]) -> Self {
        Self::from_fn(self.rows, perm.len(), |i, j| self.get(i, perm[j]))
    }

    pub fn cells(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.rows).flat_map(move |i| (0..self.cols).map(move |j| self.get(i, j)))
    }

    /// Width in words of one row bitset.
    pub fn stride(&self) -> usize {
        self.stride
    }
}

impl Ord for BitMatrix {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rows, self.cols)
            .cmp(&(other.rows, other.cols))
            .then_with(|| self.cells().cmp(other.cells()))
    }
}

impl PartialOrd for BitMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("|")?;
            }
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
        }
        f.write_str("]")
    }
}

pub(crate) fn test_bit(bits: &[u64], i: usize) -> bool {
    bits.get(i / WORD).is_some_and(|w| w >> (i % WORD) & 1 == 1)
}

pub(crate) fn set_bit(bits: &mut [u64], i: usize) {
    bits[i / WORD] |= 1 << (i % WORD);
}

pub(crate) fn or_into(acc: &mut [u64], src: &[u64]) {
    for (a, s) in acc.iter_mut().zip(src) {
        *a |= s;
    }
}

pub(crate) fn bits_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_order_is_lexicographic() {
        let all: Vec<_> = BitMatrix::all(2, 2).collect();
        assert_eq!(all.len(), 16);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all[0].is_empty());
        // first cell is the most significant
        assert!(all[8].get(0, 0) && all[8].count_ones() == 1);
    }

    #[test]
    fn product_matches_definition() {
        for f in BitMatrix::all(2, 3) {
            for g in BitMatrix::all(3, 2) {
                let h = f.then(&g);
                for x in 0..2 {
                    for z in 0..2 {
                        let expect = (0..3).any(|y| f.get(x, y) && g.get(y, z));
                        assert_eq!(h.get(x, z), expect);
                    }
                }
            }
        }
    }

    #[test]
    fn wide_rows_span_words() {
        let mut m = BitMatrix::zeros(2, 130);
        m.set(0, 129, true);
        m.set(1, 0, true);
        m.set(1, 64, true);
        assert_eq!(m.row_count(1), 2);
        let t = m.transpose();
        assert!(t.get(129, 0) && t.get(64, 1));
        let id = BitMatrix::identity(130);
        assert_eq!(m.then(&id), m);
        assert!(id.is_identity());
    }

    #[test]
    fn empty_shapes() {
        let e = BitMatrix::zeros(0, 0);
        assert!(e.is_identity());
        assert_eq!(e.then(&e), e);
        assert_eq!(BitMatrix::all(0, 3).count(), 1);
        let s = BitMatrix::stack(2, [&BitMatrix::identity(2), &BitMatrix::zeros(1, 2)]);
        assert_eq!(s.rows(), 3);
        assert!(s.get(1, 1) && s.row_count(2) == 0);
    }
}
