//! Code objects: quasi-cyclic block codes, their unwrapped convolutional
//! codes, truncated convolutional check matrices, and distance computations.
//!
//! Unwrapping reinterprets a QC polynomial matrix without its modulus;
//! wrapping reduces a convolutional matrix modulo X^r - 1 over GF(2). Free
//! distance is bracketed by two sequences computed from nullspaces of
//! truncated check matrices: windows H(l,l) give nondecreasing lower bounds
//! (column-distance analogues) and windows H(m_s+l, l) give nonincreasing
//! upper bounds (row-distance analogues).

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, MinWeight};
use crate::poly::{BinPoly, BinPolyMatrix, ScalarBinMatrix};

/// A quasi-cyclic block code of length rL given by a polynomial check matrix
/// with modulus r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QcCode {
    h: BinPolyMatrix,
}

impl QcCode {
    pub fn new(h: BinPolyMatrix) -> Result<Self> {
        if h.modulus().is_none() {
            return Err(Error::Unsupported("a QC code needs a circulant modulus".into()));
        }
        Ok(Self { h })
    }

    pub fn matrix(&self) -> &BinPolyMatrix {
        &self.h
    }

    pub fn r(&self) -> usize {
        self.h.modulus().expect("modulus checked at construction")
    }

    /// Block length rL.
    pub fn n(&self) -> usize {
        self.r() * self.h.cols()
    }

    /// Design rate (L-J)/L (the true rate can be higher when checks are
    /// dependent).
    pub fn design_rate(&self) -> f64 {
        let (j, l) = (self.h.rows() as f64, self.h.cols() as f64);
        (l - j) / l
    }

    /// Reinterprets the entries without the modulus, X read as the delay D.
    pub fn unwrap(&self) -> ConvCode {
        ConvCode::new(self.h.without_modulus()).expect("QC matrix entries carry over")
    }

    /// Scalar rL-length syndrome test, component-major layout (component l,
    /// degree d at index l*r + d).
    pub fn is_codeword_scalar(&self, c: &[u8]) -> Result<bool> {
        if c.len() != self.n() {
            return Err(Error::Dimension(format!(
                "codeword length {} != {}",
                c.len(),
                self.n()
            )));
        }
        let r = self.r();
        let comps: Vec<BinPoly> = (0..self.h.cols())
            .map(|l| {
                BinPoly::from_exponents(
                    (0..r).filter(|&d| c[l * r + d] & 1 == 1),
                )
            })
            .collect();
        self.is_codeword_poly(&comps)
    }

    /// Polynomial syndrome test modulo X^r - 1.
    pub fn is_codeword_poly(&self, c: &[BinPoly]) -> Result<bool> {
        if c.len() != self.h.cols() {
            return Err(Error::Dimension(format!(
                "expected {} components, got {}",
                self.h.cols(),
                c.len()
            )));
        }
        let r = self.r();
        for j in 0..self.h.rows() {
            let mut syndrome = BinPoly::zero();
            for (l, comp) in c.iter().enumerate() {
                syndrome = syndrome.add(&self.h.entry(j, l).mul(comp));
            }
            if !syndrome.reduce_mod(r)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exact minimum Hamming distance by nullspace enumeration of the scalar
    /// expansion.
    ///
    /// # Errors
    /// Enumeration guard when the code dimension exceeds the Gray-walk bound
    /// and no `cap` is given.
    pub fn min_distance_bruteforce(&self, cap: Option<usize>) -> Result<Distance> {
        let scalar = self.h.expand_circulant()?;
        let basis = BitMatrix::from_scalar(&scalar).nullspace_basis();
        Ok(match basis.min_weight(None, cap)? {
            MinWeight::Empty => Distance::TriviallyZero,
            MinWeight::Exact { weight, witness } => Distance::Exact { weight, witness },
            MinWeight::ExceedsCap { cap } => Distance::ExceedsCap { cap },
        })
    }
}

/// Result of a minimum-distance or bound-sequence search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Distance {
    /// The code (or filtered nullspace) contains no nonzero vector.
    TriviallyZero,
    Exact { weight: usize, witness: Vec<u8> },
    ExceedsCap { cap: usize },
}

impl Distance {
    pub fn weight(&self) -> Option<usize> {
        match self {
            Distance::Exact { weight, .. } => Some(*weight),
            _ => None,
        }
    }
}

/// A convolutional code given by a polynomial check matrix in D.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvCode {
    h: BinPolyMatrix,
}

impl ConvCode {
    pub fn new(h: BinPolyMatrix) -> Result<Self> {
        if h.modulus().is_some() {
            return Err(Error::Unsupported("a convolutional code has no modulus".into()));
        }
        if h.is_zero() {
            return Err(Error::Unsupported("check matrix must have a nonzero entry".into()));
        }
        Ok(Self { h })
    }

    pub fn matrix(&self) -> &BinPolyMatrix {
        &self.h
    }

    /// Syndrome former memory: the largest exponent in the matrix.
    pub fn memory(&self) -> usize {
        self.h.max_exponent()
    }

    pub fn rate(&self) -> f64 {
        let (j, l) = (self.h.rows() as f64, self.h.cols() as f64);
        (l - j) / l
    }

    /// Wraps modulo X^r - 1 over GF(2). Round-trips with
    /// [`QcCode::unwrap`] whenever r exceeds the memory.
    pub fn wrap(&self, r: usize) -> Result<QcCode> {
        QcCode::new(self.h.reduce_mod(r)?)
    }

    /// Exact polynomial syndrome test (no modulus).
    pub fn is_codeword_poly(&self, c: &[BinPoly]) -> Result<bool> {
        if c.len() != self.h.cols() {
            return Err(Error::Dimension(format!(
                "expected {} components, got {}",
                self.h.cols(),
                c.len()
            )));
        }
        for j in 0..self.h.rows() {
            let mut syndrome = BinPoly::zero();
            for (l, comp) in c.iter().enumerate() {
                syndrome = syndrome.add(&self.h.entry(j, l).mul(comp));
            }
            if !syndrome.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Time-major scalar syndrome test over a finite support window; the
    /// vector length must be a multiple of L.
    pub fn is_codeword_scalar(&self, c: &[u8]) -> Result<bool> {
        let l_dim = self.h.cols();
        if l_dim == 0 || c.len() % l_dim != 0 {
            return Err(Error::Dimension(format!(
                "length {} is not a multiple of {l_dim}",
                c.len()
            )));
        }
        let blocks = c.len() / l_dim;
        let comps: Vec<BinPoly> = (0..l_dim)
            .map(|l| {
                BinPoly::from_exponents(
                    (0..blocks).filter(|&t| c[t * l_dim + l] & 1 == 1),
                )
            })
            .collect();
        self.is_codeword_poly(&comps)
    }

    /// The j x i block window of the semi-infinite scalar check matrix:
    /// block (a,b) is the coefficient matrix H_{a-b} when 0 <= a-b <= m_s,
    /// zero otherwise. Rows are time-major (check row a, inner row jj at
    /// scalar row a*J + jj) and columns likewise with L.
    pub fn truncated_check(&self, j: usize, i: usize) -> Result<TruncatedCheckMatrix> {
        if j == 0 || i == 0 {
            return Err(Error::Dimension("window needs at least one block row and column".into()));
        }
        let coeff = self.h.coefficient_decompose();
        let (jj, ll) = (self.h.rows(), self.h.cols());
        let mut support = vec![Vec::new(); j * jj];
        for a in 0..j {
            for b in 0..i {
                if b > a || a - b >= coeff.len() {
                    continue;
                }
                let h = &coeff[a - b];
                for row in 0..jj {
                    for &col in h.row_support(row) {
                        support[a * jj + row].push(b * ll + col);
                    }
                }
            }
        }
        for row in &mut support {
            row.sort_unstable();
        }
        let realized = ScalarBinMatrix::new(j * jj, i * ll, support)?;
        Ok(TruncatedCheckMatrix { block_rows: j, block_cols: i, realized })
    }

    /// Bracketing sequences for the free distance, l = 1..=l_max.
    ///
    /// `lower[l-1]` is the minimum weight over nullspace vectors of the
    /// (l,l) window whose first L-symbol block is nonzero; it cannot
    /// decrease with l and never exceeds the free distance. `upper[l-1]`
    /// uses the (m_s+l, l) window, whose nullspace vectors zero-extend to
    /// full codewords, so it never falls below the free distance and cannot
    /// increase with l. When the running bounds meet, their value is the
    /// free distance.
    pub fn free_distance_bounds(&self, l_max: usize, cap: Option<usize>) -> Result<FreeDistanceBounds> {
        let m = self.memory();
        let l_sym = self.h.cols();
        let mut lower = Vec::with_capacity(l_max);
        let mut upper = Vec::with_capacity(l_max);
        for l in 1..=l_max {
            let low = self.window_min_weight(l, l, l_sym, cap)?;
            let up = self.window_min_weight(m + l, l, l_sym, cap)?;
            lower.push(low);
            upper.push(up);
        }
        let lower_onset = lower.iter().position(|d| !matches!(d, Distance::TriviallyZero)).map(|p| p + 1);
        let upper_onset = upper.iter().position(|d| !matches!(d, Distance::TriviallyZero)).map(|p| p + 1);
        let best_lower = lower.iter().filter_map(Distance::weight).max();
        let best_upper = upper.iter().filter_map(Distance::weight).min();
        let free_distance = match (best_lower, best_upper) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        };
        Ok(FreeDistanceBounds {
            lower,
            upper,
            lower_onset,
            upper_onset,
            free_distance,
        })
    }

    fn window_min_weight(&self, j: usize, i: usize, l_sym: usize, cap: Option<usize>) -> Result<Distance> {
        let window = self.truncated_check(j, i)?;
        let basis = BitMatrix::from_scalar(&window.realized).nullspace_basis();
        Ok(match basis.min_weight(Some(l_sym), cap)? {
            MinWeight::Empty => Distance::TriviallyZero,
            MinWeight::Exact { weight, witness } => Distance::Exact { weight, witness },
            MinWeight::ExceedsCap { cap } => Distance::ExceedsCap { cap },
        })
    }
}

/// A realized finite window of the semi-infinite convolutional check matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedCheckMatrix {
    pub block_rows: usize,
    pub block_cols: usize,
    pub realized: ScalarBinMatrix,
}

/// Free-distance bracketing sequences (index l-1 holds window size l).
#[derive(Clone, Debug)]
pub struct FreeDistanceBounds {
    pub lower: Vec<Distance>,
    pub upper: Vec<Distance>,
    /// First l whose (l,l) window has a qualifying nonzero nullspace vector.
    pub lower_onset: Option<usize>,
    /// First l whose (m_s+l, l) window does.
    pub upper_onset: Option<usize>,
    /// Set when the best lower and upper bounds agree.
    pub free_distance: Option<usize>,
}

impl FreeDistanceBounds {
    /// True when no window up to l_max produced any qualifying codeword;
    /// degenerate codes (only the zero codeword) look like this at every l.
    pub fn trivially_zero_so_far(&self) -> bool {
        self.upper_onset.is_none() && self.lower_onset.is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn p(exps: &[usize]) -> BinPoly {
        BinPoly::from_exponents(exps.iter().copied())
    }

    #[test]
    fn unwrap_drops_modulus_and_reports_memory() {
        let qc = fixtures::cubic_cover();
        let conv = qc.unwrap();
        assert_eq!(conv.memory(), 2);
        assert_eq!(conv.matrix().modulus(), None);
        assert_eq!(conv.matrix().entry(1, 0), &p(&[2]));
    }

    #[test]
    fn wrap_round_trips_when_r_exceeds_memory() {
        let qc = fixtures::cubic_cover();
        let again = qc.unwrap().wrap(3).unwrap();
        assert_eq!(again.matrix(), qc.matrix());
        // the rate-1/4 monomial code wraps at r=5 with entries unchanged
        let conv = fixtures::ex5_conv();
        let wrapped = conv.wrap(5).unwrap();
        assert_eq!(wrapped.matrix().entries(), conv.matrix().entries());
        assert_eq!(wrapped.n(), 20);
    }

    #[test]
    fn wrap_at_r1_collapses_over_gf2() {
        let m = BinPolyMatrix::conv(1, 2, vec![p(&[1, 2]), p(&[0])]).unwrap();
        let c = ConvCode::new(m).unwrap();
        let q = c.wrap(1).unwrap();
        assert!(q.matrix().entry(0, 0).is_zero());
        assert_eq!(q.matrix().entry(0, 1), &p(&[0]));
    }

    #[test]
    fn codeword_membership() {
        let qc = fixtures::cubic_cover();
        let ones = vec![p(&[0, 1]), p(&[0, 1]), p(&[0, 1])];
        assert!(qc.is_codeword_poly(&ones).unwrap());
        // scalar layout: component-major, coefficient d of component l at l*r+d
        let scalar = vec![1, 1, 0, 1, 1, 0, 1, 1, 0];
        assert!(qc.is_codeword_scalar(&scalar).unwrap());
        assert!(!qc.is_codeword_scalar(&[1, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap());
        assert!(qc.is_codeword_scalar(&[0; 9]).unwrap());

        let parity = QcCode::new(BinPolyMatrix::qc(1, 3, 1, vec![p(&[0]); 3]).unwrap()).unwrap();
        assert!(!parity.is_codeword_scalar(&[1, 0, 0]).unwrap());
        assert!(parity.is_codeword_scalar(&[1, 1, 0]).unwrap());
    }

    #[test]
    fn min_distance_small_codes() {
        let parity = QcCode::new(BinPolyMatrix::qc(1, 3, 1, vec![p(&[0]); 3]).unwrap()).unwrap();
        assert_eq!(parity.min_distance_bruteforce(None).unwrap().weight(), Some(2));

        let n20 = fixtures::ex11_qc(5).unwrap();
        match n20.min_distance_bruteforce(None).unwrap() {
            Distance::Exact { weight, witness } => {
                assert_eq!(weight, 6);
                assert!(n20.is_codeword_scalar(&witness).unwrap());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn min_distance_tower_for_growing_circulants() {
        // d_min is 10 from r=9 on, never exceeding the free distance
        assert_eq!(
            fixtures::ex11_qc(9).unwrap().min_distance_bruteforce(None).unwrap().weight(),
            Some(10)
        );
        let d5 = fixtures::ex11_qc(5).unwrap().min_distance_bruteforce(None).unwrap().weight().unwrap();
        let d10 = fixtures::ex11_qc(10).unwrap().min_distance_bruteforce(None).unwrap().weight().unwrap();
        assert!(d5 <= d10);
    }

    #[test]
    fn truncated_window_stacks_coefficients() {
        let conv = fixtures::conv_335();
        let t = conv.truncated_check(3, 1).unwrap();
        assert_eq!(t.realized.rows(), 9);
        assert_eq!(t.realized.cols(), 3);
        let parts = conv.matrix().coefficient_decompose();
        for a in 0..3 {
            for row in 0..3 {
                for col in 0..3 {
                    assert_eq!(t.realized.get(a * 3 + row, col), parts[a].get(row, col));
                }
            }
        }
    }

    #[test]
    fn truncated_window_column_restriction_is_consistent() {
        let conv = fixtures::ex5_conv();
        let wide = conv.truncated_check(8, 4).unwrap();
        let narrow = conv.truncated_check(8, 3).unwrap();
        assert_eq!(wide.realized.rows(), 24);
        assert_eq!(wide.realized.cols(), 16);
        for r in 0..24 {
            let restricted: Vec<usize> = wide
                .realized
                .row_support(r)
                .iter()
                .copied()
                .filter(|&c| c < 12)
                .collect();
            assert_eq!(restricted.as_slice(), narrow.realized.row_support(r));
        }
    }

    #[test]
    fn free_distance_brackets_meet_at_ten() {
        let conv = fixtures::ex5_conv();
        let b = conv.free_distance_bounds(12, None).unwrap();
        assert_eq!(b.free_distance, Some(10));
        // upper sequence nonincreasing, lower nondecreasing once present
        let ups: Vec<usize> = b.upper.iter().filter_map(Distance::weight).collect();
        assert!(ups.windows(2).all(|w| w[0] >= w[1]));
        let lows: Vec<usize> = b.lower.iter().filter_map(Distance::weight).collect();
        assert!(lows.windows(2).all(|w| w[0] <= w[1]));
        // every bound stays at or above the r=5 block minimum distance
        assert!(ups.iter().all(|&w| w >= 6));
    }

    #[test]
    fn degenerate_code_reports_trivially_zero() {
        // the unwrapped cubic-cover code has only the zero codeword
        let conv = fixtures::conv_335();
        let b = conv.free_distance_bounds(6, None).unwrap();
        assert!(b.trivially_zero_so_far());
        assert_eq!(b.free_distance, None);
        assert!(b.lower.iter().all(|d| matches!(d, Distance::TriviallyZero)));
    }

    #[test]
    fn lower_window_witnesses_need_not_extend() {
        // (l,l) windows drop the trailing memory rows, so their nullspace
        // vectors are only weight lower bounds, not codewords in general
        let conv = fixtures::ex5_conv();
        let b = conv.free_distance_bounds(8, None).unwrap();
        let extendable = b
            .lower
            .iter()
            .filter_map(|d| match d {
                Distance::Exact { witness, .. } => Some(conv.is_codeword_scalar(witness).unwrap()),
                _ => None,
            })
            .collect::<Vec<_>>();
        assert!(!extendable.is_empty());
        assert!(extendable.iter().any(|&ok| !ok));
    }

    #[test]
    fn codeword_wraps_to_codeword_with_no_weight_gain() {
        let conv = fixtures::ex5_conv();
        let b = conv.free_distance_bounds(8, None).unwrap();
        let mut checked = 0;
        for d in b.upper.iter() {
            let Distance::Exact { weight, witness } = d else { continue };
            assert!(conv.is_codeword_scalar(witness).unwrap());
            for r in [1usize, 2, 3, 5, 7] {
                let blocks = witness.len() / 4;
                let comps: Vec<BinPoly> = (0..4)
                    .map(|l| {
                        BinPoly::from_exponents(
                            (0..blocks).filter(|&t| witness[t * 4 + l] == 1).map(|t| t % r),
                        )
                    })
                    .collect();
                let wrapped_code = conv.wrap(r).unwrap();
                assert!(wrapped_code.is_codeword_poly(&comps).unwrap());
                let wrapped_weight: usize = comps.iter().map(BinPoly::weight).sum();
                assert!(wrapped_weight <= *weight);
                checked += 1;
            }
        }
        assert!(checked > 0);
    }
}
