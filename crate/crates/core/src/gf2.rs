//! Dense GF(2) matrices packed 64 entries per word.
//!
//! Everything downstream (rank-based rates, parity-check expansion, codeword
//! membership) reduces to exact arithmetic over GF(2), so the matrix is kept
//! deliberately small: row-major bit packing, forward elimination for rank,
//! and the row-replacement expansion that turns single parity checks into
//! component-code constraints.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Errors raised by matrix construction and expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    /// A super row's weight does not match the component code length.
    DegreeMismatch {
        /// Offending row of the global matrix.
        row: usize,
        /// Weight of that row.
        weight: usize,
        /// Number of columns of the component matrix.
        expected: usize,
    },
    /// Vector length does not match the matrix dimensions.
    DimensionMismatch { expected: usize, got: usize },
}

impl fmt::Display for Gf2Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gf2Error::DegreeMismatch { row, weight, expected } => write!(
                f,
                "row {row} has weight {weight} but the component code has length {expected}"
            ),
            Gf2Error::DimensionMismatch { expected, got } => {
                write!(f, "expected a vector of length {expected}, got {got}")
            }
        }
    }
}

impl core::error::Error for Gf2Error {}

/// A dense binary matrix with row-major bit-packed storage.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BinaryMatrix {
    /// All-zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64).max(1);
        BinaryMatrix { rows, cols, words_per_row, bits: vec![0; rows * words_per_row] }
    }

    /// Identity matrix of order `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from 0/1 rows. All rows must have equal length.
    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zero(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v != 0);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        self.bits[r * self.words_per_row + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let w = &mut self.bits[r * self.words_per_row + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.bits[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    /// Number of ones in row `r`.
    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Column indices of the ones in row `r`, in ascending order.
    pub fn row_support(&self, r: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.row_weight(r));
        for (wi, &w) in self.row_words(r).iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(wi * 64 + b);
                w &= w - 1;
            }
        }
        out
    }

    /// The submatrix formed by the given rows, in the given order.
    pub fn row_subset(&self, rows: &[usize]) -> Self {
        let mut m = Self::zero(rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            let dst = i * m.words_per_row;
            m.bits[dst..dst + m.words_per_row].copy_from_slice(self.row_words(r));
        }
        m
    }

    /// Rank over GF(2) by forward elimination with pivoting on the first set
    /// bit of each remaining row. The matrix is not modified.
    pub fn rank(&self) -> usize {
        let mut work = self.bits.clone();
        let wpr = self.words_per_row;
        let mut rank = 0;
        for col in 0..self.cols {
            let word = col / 64;
            let mask = 1u64 << (col % 64);
            let pivot = (rank..self.rows).find(|&r| work[r * wpr + word] & mask != 0);
            let Some(pivot) = pivot else { continue };
            if pivot != rank {
                for w in 0..wpr {
                    work.swap(pivot * wpr + w, rank * wpr + w);
                }
            }
            for r in rank + 1..self.rows {
                if work[r * wpr + word] & mask != 0 {
                    for w in 0..wpr {
                        work[r * wpr + w] ^= work[rank * wpr + w];
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Whether `word` (one entry per column, 0/1) satisfies every row.
    pub fn in_nullspace(&self, word: &[u8]) -> Result<bool, Gf2Error> {
        if word.len() != self.cols {
            return Err(Gf2Error::DimensionMismatch { expected: self.cols, got: word.len() });
        }
        let mut packed = vec![0u64; self.words_per_row];
        for (j, &v) in word.iter().enumerate() {
            if v != 0 {
                packed[j / 64] |= 1 << (j % 64);
            }
        }
        for r in 0..self.rows {
            let parity: u64 = self
                .row_words(r)
                .iter()
                .zip(&packed)
                .map(|(a, b)| (a & b).count_ones() as u64)
                .sum();
            if parity % 2 != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A basis of the nullspace, one 0/1 vector per free column.
    pub fn nullspace_basis(&self) -> Vec<Vec<u8>> {
        // Full row reduction over a copy, tracking pivot columns.
        let wpr = self.words_per_row;
        let mut work = self.bits.clone();
        let mut pivot_of_row = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            let word = col / 64;
            let mask = 1u64 << (col % 64);
            let Some(pivot) = (rank..self.rows).find(|&r| work[r * wpr + word] & mask != 0)
            else {
                continue;
            };
            if pivot != rank {
                for w in 0..wpr {
                    work.swap(pivot * wpr + w, rank * wpr + w);
                }
            }
            for r in 0..self.rows {
                if r != rank && work[r * wpr + word] & mask != 0 {
                    for w in 0..wpr {
                        work[r * wpr + w] ^= work[rank * wpr + w];
                    }
                }
            }
            pivot_of_row.push(col);
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        let is_pivot = {
            let mut v = vec![false; self.cols];
            for &c in &pivot_of_row {
                v[c] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut vec_ = vec![0u8; self.cols];
            vec_[free] = 1;
            for (r, &pc) in pivot_of_row.iter().enumerate() {
                if work[r * wpr + free / 64] >> (free % 64) & 1 == 1 {
                    vec_[pc] = 1;
                }
            }
            basis.push(vec_);
        }
        basis
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows.min(32) {
            for c in 0..self.cols.min(64) {
                write!(f, "{}", u8::from(self.get(r, c)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Expands a global parity-check matrix into a GLDPC parity-check matrix.
///
/// Each row in `super_rows` is replaced by `m` rows: the j-th one of the
/// original row, scanning columns left to right, becomes the j-th column of
/// `h_component` placed in that column; zeros become zero columns. Rows not
/// in `super_rows` are copied verbatim, in their original relative order,
/// after the expanded blocks.
///
/// Every selected row must have weight equal to `h_component.cols()`.
pub fn expand_gldpc_matrix(
    h_global: &BinaryMatrix,
    super_rows: &[usize],
    h_component: &BinaryMatrix,
) -> Result<BinaryMatrix, Gf2Error> {
    let m = h_component.rows();
    let n_comp = h_component.cols();
    let mut is_super = vec![false; h_global.rows()];
    for &r in super_rows {
        is_super[r] = true;
    }
    let n_super = is_super.iter().filter(|&&s| s).count();
    for (r, &s) in is_super.iter().enumerate() {
        if s && h_global.row_weight(r) != n_comp {
            return Err(Gf2Error::DegreeMismatch {
                row: r,
                weight: h_global.row_weight(r),
                expected: n_comp,
            });
        }
    }

    let out_rows = n_super * m + h_global.rows() - n_super;
    let mut out = BinaryMatrix::zero(out_rows, h_global.cols());
    let mut next = 0;
    for r in 0..h_global.rows() {
        if is_super[r] {
            for (j, col) in h_global.row_support(r).into_iter().enumerate() {
                for i in 0..m {
                    if h_component.get(i, j) {
                        out.set(next + i, col, true);
                    }
                }
            }
            next += m;
        } else {
            for col in h_global.row_support(r) {
                out.set(next, col, true);
            }
            next += 1;
        }
    }
    debug_assert_eq!(next, out_rows);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brute;

    #[test]
    fn identity_rank() {
        assert_eq!(BinaryMatrix::identity(5).rank(), 5);
    }

    #[test]
    fn duplicate_rows_rank_one() {
        let m = BinaryMatrix::from_rows(&[vec![1; 8], vec![1; 8]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rank_matches_reference_elimination() {
        // Deterministic pseudo-random fill, checked against the naive
        // boolean-matrix elimination in `brute`.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for (rows, cols) in [(1, 1), (3, 7), (10, 10), (17, 65), (40, 33), (64, 130)] {
            let mut m = BinaryMatrix::zero(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    m.set(r, c, next() & 1 == 1);
                }
            }
            assert_eq!(m.rank(), brute::rank(&m), "shape {rows}x{cols}");
        }
    }

    #[test]
    fn row_subset_shape_and_content() {
        let m = BinaryMatrix::from_rows(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let s = m.row_subset(&[2, 0]);
        assert_eq!((s.rows(), s.cols()), (2, 3));
        assert!(s.get(0, 2) && s.get(1, 0));
        assert!(!s.get(0, 0));
    }

    #[test]
    fn expand_with_no_super_rows_is_identity() {
        let m = BinaryMatrix::from_rows(&[vec![1, 1, 0, 1], vec![0, 1, 1, 0]]);
        let out = expand_gldpc_matrix(&m, &[], &BinaryMatrix::identity(2)).unwrap();
        assert!(out == m);
    }

    #[test]
    fn expand_single_row_places_component_columns() {
        // One global row [1 1 1]; component rows [1 0 1; 0 1 1]. The j-th one
        // becomes the j-th component column.
        let g = BinaryMatrix::from_rows(&[vec![1, 1, 1]]);
        let h = BinaryMatrix::from_rows(&[vec![1, 0, 1], vec![0, 1, 1]]);
        let out = expand_gldpc_matrix(&g, &[0], &h).unwrap();
        assert_eq!((out.rows(), out.cols()), (2, 3));
        for i in 0..2 {
            for j in 0..3 {
                assert_eq!(out.get(i, j), h.get(i, j));
            }
        }
    }

    #[test]
    fn expand_rejects_degree_mismatch() {
        let g = BinaryMatrix::from_rows(&[vec![1, 1, 0]]);
        let h = BinaryMatrix::from_rows(&[vec![1, 0, 1]]);
        let err = expand_gldpc_matrix(&g, &[0], &h).unwrap_err();
        assert!(matches!(err, Gf2Error::DegreeMismatch { row: 0, weight: 2, expected: 3 }));
    }

    #[test]
    fn expanded_rank_at_least_global_rank() {
        // Component with full row rank m; expansion cannot lose rank.
        let g = BinaryMatrix::from_rows(&[
            vec![1, 1, 1, 0, 0, 0],
            vec![0, 0, 0, 1, 1, 1],
            vec![1, 0, 1, 0, 1, 0],
        ]);
        let h = BinaryMatrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1]]);
        assert_eq!(h.rank(), 2);
        let out = expand_gldpc_matrix(&g, &[0, 1, 2], &h).unwrap();
        assert!(out.rank() >= g.rank());
    }

    #[test]
    fn nullspace_basis_spans_nullspace() {
        let m = BinaryMatrix::from_rows(&[vec![1, 1, 0, 0], vec![0, 1, 1, 0]]);
        let basis = m.nullspace_basis();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(m.in_nullspace(v).unwrap());
        }
    }
}
