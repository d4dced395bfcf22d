//! Dense bit-packed GF(2) linear algebra: elimination, nullspaces, and
//! minimum-weight codeword search.
//!
//! Desk-scale matrices only; rows are packed into `u64` words and the
//! nullspace walk enumerates codewords with a Gray code so each step is one
//! row XOR.

use crate::error::{Error, Result};
use crate::poly::ScalarBinMatrix;

/// Hard ceiling on full codeword enumeration: 2^28 combinations.
pub const ENUM_GUARD_LOG2: u32 = 28;

/// A bit-packed binary matrix.
#[derive(Clone, Debug)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        Self { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn from_scalar(m: &ScalarBinMatrix) -> Self {
        let mut out = Self::zero(m.rows(), m.cols());
        for i in 0..m.rows() {
            for &j in m.row_support(i) {
                out.set(i, j);
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.data[row * self.words + col / 64] >> (col % 64) & 1 == 1
    }

    pub fn set(&mut self, row: usize, col: usize) {
        self.data[row * self.words + col / 64] |= 1 << (col % 64);
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let (s, d) = (src * self.words, dst * self.words);
        for k in 0..self.words {
            let v = self.data[s + k];
            self.data[d + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.words {
            self.data.swap(a * self.words + k, b * self.words + k);
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.swap_rows(rank, pivot);
            for r in 0..self.rows {
                if r != rank && self.get(r, col) {
                    self.xor_row_into(rank, r);
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right nullspace in systematic form: basis vector k has a
    /// 1 at its own free column and 0 at every other free column, so the
    /// weight of any combination is at least the number of vectors combined.
    pub fn nullspace_basis(&self) -> NullspaceBasis {
        let mut rref = self.clone();
        let pivots = rref.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free_cols: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let words = self.cols.div_ceil(64).max(1);
        let mut vectors = Vec::with_capacity(free_cols.len());
        for &f in &free_cols {
            let mut v = vec![0u64; words];
            v[f / 64] |= 1 << (f % 64);
            for (row, &p) in pivots.iter().enumerate() {
                if rref.get(row, f) {
                    v[p / 64] |= 1 << (p % 64);
                }
            }
            vectors.push(v);
        }
        NullspaceBasis { n: self.cols, words, vectors, free_cols }
    }
}

/// Nullspace basis in systematic form over the free columns.
#[derive(Clone, Debug)]
pub struct NullspaceBasis {
    pub n: usize,
    words: usize,
    vectors: Vec<Vec<u64>>,
    free_cols: Vec<usize>,
}

/// Outcome of a minimum-weight search over the nonzero nullspace vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinWeight {
    /// No nonzero vector satisfies the filter (or the nullspace is trivial).
    Empty,
    /// Exact minimum and one achieving vector.
    Exact { weight: usize, witness: Vec<u8> },
    /// A weight cap was given and no vector at or below it exists.
    ExceedsCap { cap: usize },
}

impl NullspaceBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// The basis vectors expanded to one byte per symbol.
    pub fn basis(&self) -> Vec<Vec<u8>> {
        self.vectors.iter().map(|v| self.unpack(v)).collect()
    }

    /// Expands a packed vector to bytes.
    fn unpack(&self, packed: &[u64]) -> Vec<u8> {
        (0..self.n).map(|i| (packed[i / 64] >> (i % 64) & 1) as u8).collect()
    }

    fn weight(packed: &[u64]) -> usize {
        packed.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Minimum Hamming weight over nonzero nullspace vectors, restricted to
    /// vectors with a 1 somewhere in the first `min(first_nonzero)` bits when
    /// that filter is given.
    ///
    /// Full Gray-code enumeration runs when the dimension is at most
    /// [`ENUM_GUARD_LOG2`]; otherwise a `cap` must be supplied and the search
    /// visits only combinations of at most `cap` basis vectors, which is
    /// exhaustive for weights up to `cap` thanks to the systematic form.
    ///
    /// # Errors
    /// Guard error when the dimension exceeds the enumeration bound and no
    /// cap was provided.
    pub fn min_weight(&self, first_nonzero: Option<usize>, cap: Option<usize>) -> Result<MinWeight> {
        if self.vectors.is_empty() {
            return Ok(MinWeight::Empty);
        }
        let prefix_mask = |packed: &[u64]| -> bool {
            match first_nonzero {
                None => true,
                Some(k) => (0..k.min(self.n)).any(|i| packed[i / 64] >> (i % 64) & 1 == 1),
            }
        };
        let k = self.dim();
        if (k as u32) <= ENUM_GUARD_LOG2 {
            let mut best: Option<(usize, Vec<u64>)> = None;
            let mut current = vec![0u64; self.words];
            for g in 1u64..(1u64 << k) {
                let flip = g.trailing_zeros() as usize;
                for w in 0..self.words {
                    current[w] ^= self.vectors[flip][w];
                }
                if !prefix_mask(&current) {
                    continue;
                }
                let wt = Self::weight(&current);
                if best.as_ref().is_none_or(|(b, _)| wt < *b) {
                    best = Some((wt, current.clone()));
                }
            }
            return Ok(match best {
                None => MinWeight::Empty,
                Some((weight, v)) => {
                    if let Some(cap) = cap {
                        if weight > cap {
                            return Ok(MinWeight::ExceedsCap { cap });
                        }
                    }
                    MinWeight::Exact { weight, witness: self.unpack(&v) }
                }
            });
        }
        let Some(cap) = cap else {
            return Err(Error::Guard {
                guard: "gf2-enumeration",
                detail: format!("nullspace dimension {k} exceeds 2^{ENUM_GUARD_LOG2} walk; supply a weight cap"),
            });
        };
        // Capped search: any codeword of weight <= cap uses at most cap basis
        // vectors, because the basis is systematic over the free columns.
        let mut best: Option<(usize, Vec<u64>)> = None;
        let mut current = vec![0u64; self.words];
        let mut chosen = Vec::new();
        self.capped_search(0, cap.min(k), &mut current, &mut chosen, &prefix_mask, &mut best);
        Ok(match best {
            Some((weight, v)) if weight <= cap => MinWeight::Exact { weight, witness: self.unpack(&v) },
            _ => MinWeight::ExceedsCap { cap },
        })
    }

    fn capped_search(
        &self,
        start: usize,
        budget: usize,
        current: &mut Vec<u64>,
        chosen: &mut Vec<usize>,
        prefix_mask: &dyn Fn(&[u64]) -> bool,
        best: &mut Option<(usize, Vec<u64>)>,
    ) {
        if !chosen.is_empty() && prefix_mask(current) {
            let wt = Self::weight(current);
            if best.as_ref().is_none_or(|(b, _)| wt < *b) {
                *best = Some((wt, current.clone()));
            }
        }
        if budget == 0 || start == self.dim() {
            return;
        }
        for i in start..self.dim() {
            for w in 0..self.words {
                current[w] ^= self.vectors[i][w];
            }
            chosen.push(i);
            self.capped_search(i + 1, budget - 1, current, chosen, prefix_mask, best);
            chosen.pop();
            for w in 0..self.words {
                current[w] ^= self.vectors[i][w];
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[u8]]) -> BitMatrix {
        let dense: Vec<Vec<u8>> = rows.iter().map(|r| r.to_vec()).collect();
        BitMatrix::from_scalar(&ScalarBinMatrix::from_dense(&dense).unwrap())
    }

    #[test]
    fn rank_and_rref() {
        let a = m(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        // third row is the sum of the first two
        assert_eq!(a.rank(), 2);
        assert_eq!(m(&[&[1, 0], &[0, 1]]).rank(), 2);
        assert_eq!(m(&[&[0, 0]]).rank(), 0);
    }

    #[test]
    fn nullspace_vectors_satisfy_checks() {
        let a = m(&[&[1, 1, 1, 0], &[0, 1, 1, 1]]);
        let basis = a.nullspace_basis();
        assert_eq!(basis.dim(), 2);
        for v in &basis.vectors {
            for r in 0..a.rows() {
                let mut parity = 0u32;
                for w in 0..a.words {
                    parity ^= (a.row(r)[w] & v[w]).count_ones() & 1;
                }
                assert_eq!(parity, 0);
            }
        }
    }

    #[test]
    fn min_weight_single_parity_check() {
        // even-weight code of length 3: minimum weight 2
        let a = m(&[&[1, 1, 1]]);
        let basis = a.nullspace_basis();
        match basis.min_weight(None, None).unwrap() {
            MinWeight::Exact { weight, witness } => {
                assert_eq!(weight, 2);
                assert_eq!(witness.iter().map(|&b| b as usize).sum::<usize>(), 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn min_weight_respects_prefix_filter() {
        // nullspace of [1 1 0 0; 0 0 1 1] = {1100, 0011, 1111};
        // requiring a 1 in the first 2 bits excludes 0011
        let a = m(&[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
        let basis = a.nullspace_basis();
        match basis.min_weight(Some(2), None).unwrap() {
            MinWeight::Exact { weight, witness } => {
                assert_eq!(weight, 2);
                assert_eq!(witness, vec![1, 1, 0, 0]);
            }
            other => panic!("unexpected {other:?}"),
        }
        // full-rank matrix: trivial nullspace
        let full = m(&[&[1, 0], &[0, 1]]);
        assert_eq!(full.nullspace_basis().min_weight(None, None).unwrap(), MinWeight::Empty);
    }

    #[test]
    fn capped_search_agrees_with_walk() {
        let a = m(&[
            &[1, 0, 1, 1, 0, 0, 1],
            &[0, 1, 1, 0, 1, 1, 0],
            &[1, 1, 0, 1, 1, 0, 0],
        ]);
        let basis = a.nullspace_basis();
        let MinWeight::Exact { weight, .. } = basis.min_weight(None, None).unwrap() else {
            panic!("expected a minimum");
        };
        let MinWeight::Exact { weight: capped, .. } = basis.min_weight(None, Some(weight)).unwrap() else {
            panic!("capped search missed the minimum");
        };
        assert_eq!(weight, capped);
        assert_eq!(
            basis.min_weight(None, Some(weight - 1)).unwrap(),
            MinWeight::ExceedsCap { cap: weight - 1 }
        );
    }

    #[test]
    fn wide_matrix_crosses_word_boundary() {
        // single parity check over 70 columns: min weight 2
        let row = vec![vec![1u8; 70]];
        let a = BitMatrix::from_scalar(&ScalarBinMatrix::from_dense(&row).unwrap());
        let basis = a.nullspace_basis();
        // dimension 69 is over the walk guard, so the cap path must run
        assert!(matches!(
            basis.min_weight(None, None),
            Err(Error::Guard { guard: "gf2-enumeration", .. })
        ));
        match basis.min_weight(None, Some(2)).unwrap() {
            MinWeight::Exact { weight, .. } => assert_eq!(weight, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
