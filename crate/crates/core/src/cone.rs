//! Fundamental cones and polytopes of parity-check matrices.
//!
//! For a binary check matrix H with check neighborhoods I_j, the fundamental
//! cone is cut out by non-negativity together with one inequality per check
//! per distinguished neighbor i': the sum over I_j minus i' must cover
//! omega_{i'}. Vectors in the cone are exactly the (scaled) pseudo-codewords
//! that matter for linear-programming decoder failures. The fundamental
//! polytope adds, per check, one upper-bound row for every odd-cardinality
//! subset of I_j plus the unit box; its vertices with 0/1 coordinates are the
//! codewords of the single-check subcodes intersected.
//!
//! Membership checks run in exact rational arithmetic and report the first
//! violated row in build order, so failures are reproducible witnesses, not
//! just booleans.

use crate::codes::{ConvCode, QcCode};
use crate::error::{Error, Result};
use crate::poly::{BinPolyMatrix, ScalarBinMatrix};
use crate::rat::{qi, Q};
use crate::ratvec::{NonnegPolyVec, RatPoly};
use num_traits::Zero;

/// Provenance of one cone row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowTag {
    /// omega_var >= 0.
    Nonneg { var: usize },
    /// Sum over I_check minus the distinguished position covers it.
    CheckEdge { check: usize, distinguished: usize },
}

/// Outcome of a membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Member,
    /// Index (in build order) and tag of the first violated row.
    Violated { row: usize },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member)
    }
}

/// The inequality system K with semantics K . omega >= 0, row by row.
#[derive(Clone, Debug)]
pub struct ConeSystem {
    n: usize,
    rows: Vec<Vec<Q>>,
    tags: Vec<RowTag>,
}

impl ConeSystem {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn tags(&self) -> &[RowTag] {
        &self.tags
    }

    pub fn tag(&self, row: usize) -> &RowTag {
        &self.tags[row]
    }

    /// Exact membership; on failure the witness is the first violated row.
    pub fn membership(&self, omega: &[Q]) -> Result<Membership> {
        if omega.len() != self.n {
            return Err(Error::Dimension(format!(
                "vector length {} does not match ambient dimension {}",
                omega.len(),
                self.n
            )));
        }
        for (idx, row) in self.rows.iter().enumerate() {
            let mut acc = Q::zero();
            for (coef, w) in row.iter().zip(omega) {
                if !coef.is_zero() {
                    acc += coef * w;
                }
            }
            if acc < Q::zero() {
                return Ok(Membership::Violated { row: idx });
            }
        }
        Ok(Membership::Member)
    }

    pub fn contains(&self, omega: &[Q]) -> Result<bool> {
        Ok(self.membership(omega)?.is_member())
    }
}

/// Builds the fundamental cone system of a scalar check matrix: n
/// non-negativity rows first, then one row per (check, distinguished
/// neighbor) pair in row order. Weight-1 checks contribute a single row
/// that, with non-negativity, pins the variable to zero.
pub fn build_cone(h: &ScalarBinMatrix) -> ConeSystem {
    let n = h.cols();
    let mut rows = Vec::with_capacity(n);
    let mut tags = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = vec![Q::zero(); n];
        row[i] = qi(1);
        rows.push(row);
        tags.push(RowTag::Nonneg { var: i });
    }
    for j in 0..h.rows() {
        let support = h.row_support(j);
        for &ip in support {
            let mut row = vec![Q::zero(); n];
            for &i in support {
                row[i] = if i == ip { qi(-1) } else { qi(1) };
            }
            rows.push(row);
            tags.push(RowTag::CheckEdge { check: j, distinguished: ip });
        }
    }
    ConeSystem { n, rows, tags }
}

/// Membership of a polynomial vector in the cone of a QC code, via the
/// scalar circulant expansion (component-major layout).
pub fn cone_contains_qc(code: &QcCode, omega: &NonnegPolyVec) -> Result<Membership> {
    let scalar = code.matrix().expand_circulant()?;
    let sys = build_cone(&scalar);
    sys.membership(&omega.to_scalar_qc(code.r())?)
}

/// Membership of a finite-support polynomial vector in the cone of a
/// convolutional code. The semi-infinite system is truncated to the window
/// of deg(omega) + memory + 1 time blocks; every later row touches only
/// coordinates that are zero, so it holds trivially.
pub fn cone_contains_conv(code: &ConvCode, omega: &NonnegPolyVec) -> Result<Membership> {
    if omega.len() != code.matrix().cols() {
        return Err(Error::Dimension(format!(
            "vector has {} components, code has {}",
            omega.len(),
            code.matrix().cols()
        )));
    }
    let blocks = omega.max_degree().unwrap_or(0) + code.memory() + 1;
    let window = code.truncated_check(blocks, blocks)?;
    let sys = build_cone(&window.realized);
    sys.membership(&omega.to_scalar_blocks(blocks)?)
}

/// Result of the monomial-matrix cone test: the full product matrix is
/// returned so callers can print or inspect it.
#[derive(Clone, Debug)]
pub struct MonomialCheck {
    /// Entry (j, l') is sum_{l != l'} h_jl * omega_l - h_jl' * omega_l',
    /// reduced mod X^r - 1 when the matrix carries a modulus.
    pub product: Vec<Vec<RatPoly>>,
    pub member: bool,
    /// First entry (j, l', degree) carrying a negative coefficient.
    pub first_violation: Option<(usize, usize, usize)>,
}

/// Cone membership specialized to matrices whose entries are all single
/// monomials: omega is in the cone iff every coefficient of every product
/// entry is non-negative. Each circulant row then has exactly one neighbor
/// per matrix column, which makes the product coefficients coincide with the
/// scalar cone rows.
pub fn monomial_cone_check(h: &BinPolyMatrix, omega: &NonnegPolyVec) -> Result<MonomialCheck> {
    if omega.len() != h.cols() {
        return Err(Error::Dimension(format!(
            "vector has {} components, matrix has {} columns",
            omega.len(),
            h.cols()
        )));
    }
    let mut exps = vec![vec![0usize; h.cols()]; h.rows()];
    for j in 0..h.rows() {
        for l in 0..h.cols() {
            exps[j][l] = h
                .entry(j, l)
                .as_monomial()
                .ok_or(Error::NonMonomial { row: j, col: l })?;
        }
    }
    let mut product = Vec::with_capacity(h.rows());
    let mut member = true;
    let mut first_violation = None;
    for (j, row_exps) in exps.iter().enumerate() {
        let shifted: Vec<RatPoly> = (0..h.cols())
            .map(|l| omega.component(l).shift(row_exps[l]))
            .collect();
        let mut total = RatPoly::zero();
        for s in &shifted {
            total = total.add(s);
        }
        let mut prow = Vec::with_capacity(h.cols());
        for lp in 0..h.cols() {
            // sum_{l != l'} + shifted_l  minus  shifted_l'  =  total - 2 shifted_l'
            let mut entry = total.sub(&shifted[lp].scale(&qi(2)));
            if let Some(r) = h.modulus() {
                entry = entry.reduce_mod(r)?;
            }
            if member {
                if let Some((d, _)) = entry.first_negative() {
                    member = false;
                    first_violation = Some((j, lp, d));
                }
            }
            prow.push(entry);
        }
        product.push(prow);
    }
    Ok(MonomialCheck { product, member, first_violation })
}

/// Wrap-around projection of a convolutional-cone member: reduces every
/// component mod X^r - 1 and checks, as a runtime postcondition, that the
/// image lies in the cone of the wrapped QC code.
pub fn project_pseudocodeword(
    code: &ConvCode,
    omega: &NonnegPolyVec,
    r: usize,
) -> Result<NonnegPolyVec> {
    match cone_contains_conv(code, omega)? {
        Membership::Member => {}
        Membership::Violated { row } => return Err(Error::NotInCone { row }),
    }
    let projected = omega.reduce_mod(r)?;
    let wrapped = code.wrap(r)?;
    match cone_contains_qc(&wrapped, &projected)? {
        Membership::Member => Ok(projected),
        Membership::Violated { row } => Err(Error::NotInCone { row }),
    }
}

/// Sense of one polytope row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Ge,
    Le,
}

/// Provenance of one polytope row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolytopeRowKind {
    /// omega_var >= 0.
    NonnegLower { var: usize },
    /// omega_var <= 1.
    BoxUpper { var: usize },
    /// sum_S omega - sum_{I_j minus S} omega <= |S| - 1 for odd |S|.
    OddSubset { check: usize, subset: Vec<usize> },
}

#[derive(Clone, Debug)]
pub struct PolytopeRow {
    pub coeffs: Vec<Q>,
    pub rhs: Q,
    pub sense: Sense,
    pub kind: PolytopeRowKind,
}

impl PolytopeRow {
    pub fn satisfied_by(&self, omega: &[Q]) -> bool {
        let mut acc = Q::zero();
        for (c, w) in self.coeffs.iter().zip(omega) {
            if !c.is_zero() {
                acc += c * w;
            }
        }
        match self.sense {
            Sense::Ge => acc >= self.rhs,
            Sense::Le => acc <= self.rhs,
        }
    }
}

/// The fundamental polytope as an explicit row list: non-negativity, unit
/// box, then the odd-subset family per check.
#[derive(Clone, Debug)]
pub struct PolytopeSystem {
    n: usize,
    rows: Vec<PolytopeRow>,
}

impl PolytopeSystem {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[PolytopeRow] {
        &self.rows
    }

    pub fn membership(&self, omega: &[Q]) -> Result<Membership> {
        if omega.len() != self.n {
            return Err(Error::Dimension(format!(
                "vector length {} does not match ambient dimension {}",
                omega.len(),
                self.n
            )));
        }
        for (idx, row) in self.rows.iter().enumerate() {
            if !row.satisfied_by(omega) {
                return Ok(Membership::Violated { row: idx });
            }
        }
        Ok(Membership::Member)
    }

    pub fn contains(&self, omega: &[Q]) -> Result<bool> {
        Ok(self.membership(omega)?.is_member())
    }
}

/// Largest check-row weight [`build_polytope`] accepts; the odd-subset
/// family has 2^(w-1) rows per check.
pub const POLYTOPE_ROW_WEIGHT_GUARD: usize = 20;

/// Builds the fundamental polytope row list. Odd subsets are emitted in
/// ascending bitmask order over the check's support, so the singleton rows
/// (the cone rows in disguise) come before the larger subsets.
pub fn build_polytope(h: &ScalarBinMatrix) -> Result<PolytopeSystem> {
    let n = h.cols();
    for j in 0..h.rows() {
        let w = h.row_weight(j);
        if w > POLYTOPE_ROW_WEIGHT_GUARD {
            return Err(Error::Guard {
                guard: "polytope-row-weight",
                detail: format!(
                    "check {j} has weight {w}, above the limit {POLYTOPE_ROW_WEIGHT_GUARD}"
                ),
            });
        }
    }
    let mut rows = Vec::new();
    for i in 0..n {
        let mut coeffs = vec![Q::zero(); n];
        coeffs[i] = qi(1);
        rows.push(PolytopeRow {
            coeffs,
            rhs: Q::zero(),
            sense: Sense::Ge,
            kind: PolytopeRowKind::NonnegLower { var: i },
        });
    }
    for i in 0..n {
        let mut coeffs = vec![Q::zero(); n];
        coeffs[i] = qi(1);
        rows.push(PolytopeRow {
            coeffs,
            rhs: qi(1),
            sense: Sense::Le,
            kind: PolytopeRowKind::BoxUpper { var: i },
        });
    }
    for j in 0..h.rows() {
        let support = h.row_support(j);
        let w = support.len();
        for mask in 1u32..(1u32 << w) {
            if mask.count_ones() % 2 == 0 {
                continue;
            }
            let mut coeffs = vec![Q::zero(); n];
            let mut subset = Vec::new();
            for (bit, &i) in support.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    coeffs[i] = qi(1);
                    subset.push(i);
                } else {
                    coeffs[i] = qi(-1);
                }
            }
            rows.push(PolytopeRow {
                coeffs,
                rhs: qi(mask.count_ones() as i64 - 1),
                sense: Sense::Le,
                kind: PolytopeRowKind::OddSubset { check: j, subset },
            });
        }
    }
    Ok(PolytopeSystem { n, rows })
}
