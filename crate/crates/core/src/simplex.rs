//! Primal simplex over exact rationals.
//!
//! Minimizes c.x subject to linear constraints and implicit x >= 0. Every
//! system this crate solves is tiny (tens of variables, a few hundred rows),
//! so the tableau is dense and all arithmetic is BigRational: no tolerance
//! tuning, and ties, like an objective crossing zero exactly, are decided
//! exactly. Phase 1 drives artificial variables out; phase 2 runs Dantzig
//! pricing and permanently switches to Bland's rule after a run of
//! degenerate pivots, which guarantees termination.

use crate::error::{Error, Result};
use crate::rat::Q;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintOp {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Q>,
    pub op: ConstraintOp,
    pub rhs: Q,
}

impl Constraint {
    pub fn le(coeffs: Vec<Q>, rhs: Q) -> Self {
        Self { coeffs, op: ConstraintOp::Le, rhs }
    }

    pub fn ge(coeffs: Vec<Q>, rhs: Q) -> Self {
        Self { coeffs, op: ConstraintOp::Ge, rhs }
    }

    pub fn eq(coeffs: Vec<Q>, rhs: Q) -> Self {
        Self { coeffs, op: ConstraintOp::Eq, rhs }
    }
}

/// Minimize objective . x subject to the constraints and x >= 0.
#[derive(Clone, Debug)]
pub struct LpProblem {
    pub n: usize,
    pub objective: Vec<Q>,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal {
        x: Vec<Q>,
        value: Q,
        /// True when every nonbasic column priced out strictly positive in
        /// the final tableau, which certifies `x` is the only optimizer.
        /// False is inconclusive: alternate optima, or mere degeneracy.
        unique: bool,
    },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(self) -> Result<(Vec<Q>, Q)> {
        match self {
            LpOutcome::Optimal { x, value, .. } => Ok((x, value)),
            LpOutcome::Infeasible => Err(Error::Infeasible),
            LpOutcome::Unbounded => Err(Error::Unbounded),
        }
    }
}

/// Consecutive non-improving pivots tolerated under Dantzig pricing before
/// switching to Bland's rule for good.
const STALL_LIMIT: usize = 64;

/// Hard cap on total pivots; hitting it means a bug, not a big input.
const PIVOT_LIMIT: usize = 200_000;

struct Tableau {
    /// m rows of structural + slack + artificial coefficients, then rhs.
    rows: Vec<Vec<Q>>,
    /// Reduced cost row for the active objective; last entry is -objective.
    cost: Vec<Q>,
    basis: Vec<usize>,
    width: usize,
    bland: bool,
    stall: usize,
    pivots: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let piv = self.rows[row][col].clone();
        let inv = Q::one() / piv;
        for v in self.rows[row].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = self.rows[row].clone();
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (v, p) in r.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
            r[col] = Q::zero();
        }
        if !self.cost[col].is_zero() {
            let f = self.cost[col].clone();
            for (v, p) in self.cost.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
            self.cost[col] = Q::zero();
        }
        self.basis[row] = col;
    }

    /// Entering column under the active pricing rule; None at optimality.
    fn entering(&self, ncols: usize) -> Option<usize> {
        if self.bland {
            (0..ncols).find(|&c| self.cost[c].is_negative())
        } else {
            let mut best: Option<(usize, &Q)> = None;
            for c in 0..ncols {
                let v = &self.cost[c];
                if v.is_negative() && best.map_or(true, |(_, b)| v < b) {
                    best = Some((c, v));
                }
            }
            best.map(|(c, _)| c)
        }
    }

    /// Leaving row by minimum ratio; ties go to the smallest basis index so
    /// cycling cannot hide behind degenerate ties. None means unbounded.
    fn leaving(&self, col: usize) -> Option<usize> {
        let rhs = self.width - 1;
        let mut best: Option<(usize, Q)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            if !row[col].is_positive() {
                continue;
            }
            let ratio = &row[rhs] / &row[col];
            let better = match &best {
                None => true,
                Some((bi, br)) => {
                    ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                }
            };
            if better {
                best = Some((i, ratio));
            }
        }
        best.map(|(i, _)| i)
    }

    /// Runs pivots until the active cost row is optimal over the first
    /// `ncols` columns. Returns false when an entering column is unbounded.
    fn optimize(&mut self, ncols: usize) -> Result<bool> {
        let rhs = self.width - 1;
        loop {
            let Some(col) = self.entering(ncols) else { return Ok(true) };
            let Some(row) = self.leaving(col) else { return Ok(false) };
            let degenerate = self.rows[row][rhs].is_zero();
            self.pivot(row, col);
            self.pivots += 1;
            if self.pivots > PIVOT_LIMIT {
                return Err(Error::Unsupported(
                    "simplex pivot limit reached; the tableau is cycling".into(),
                ));
            }
            if degenerate {
                self.stall += 1;
                if self.stall >= STALL_LIMIT {
                    self.bland = true;
                }
            } else {
                self.stall = 0;
            }
        }
    }
}

/// Solves the problem with the two-phase method.
pub fn solve(p: &LpProblem) -> Result<LpOutcome> {
    let n = p.n;
    if p.objective.len() != n {
        return Err(Error::Dimension(format!(
            "objective has {} coefficients for {} variables",
            p.objective.len(),
            n
        )));
    }
    for (i, c) in p.constraints.iter().enumerate() {
        if c.coeffs.len() != n {
            return Err(Error::Dimension(format!(
                "constraint {i} has {} coefficients for {} variables",
                c.coeffs.len(),
                n
            )));
        }
    }
    let m = p.constraints.len();

    // flip rows to non-negative rhs, then count extra columns
    let mut ops = Vec::with_capacity(m);
    let mut flipped = Vec::with_capacity(m);
    for c in &p.constraints {
        let flip = c.rhs.is_negative();
        let op = match (c.op, flip) {
            (ConstraintOp::Le, true) => ConstraintOp::Ge,
            (ConstraintOp::Ge, true) => ConstraintOp::Le,
            (op, _) => op,
        };
        ops.push(op);
        flipped.push(flip);
    }
    let n_slack = ops.iter().filter(|o| !matches!(o, ConstraintOp::Eq)).count();
    let n_art = ops.iter().filter(|o| !matches!(o, ConstraintOp::Le)).count();
    let width = n + n_slack + n_art + 1;

    let mut rows = vec![vec![Q::zero(); width]; m];
    let mut basis = vec![0usize; m];
    let mut slack_at = n;
    let mut art_at = n + n_slack;
    let mut art_cols = Vec::with_capacity(n_art);
    for i in 0..m {
        let c = &p.constraints[i];
        for (k, v) in c.coeffs.iter().enumerate() {
            if !v.is_zero() {
                rows[i][k] = if flipped[i] { -v } else { v.clone() };
            }
        }
        rows[i][width - 1] = if flipped[i] { -&c.rhs } else { c.rhs.clone() };
        match ops[i] {
            ConstraintOp::Le => {
                rows[i][slack_at] = Q::one();
                basis[i] = slack_at;
                slack_at += 1;
            }
            ConstraintOp::Ge => {
                rows[i][slack_at] = -Q::one();
                slack_at += 1;
                rows[i][art_at] = Q::one();
                basis[i] = art_at;
                art_cols.push(art_at);
                art_at += 1;
            }
            ConstraintOp::Eq => {
                rows[i][art_at] = Q::one();
                basis[i] = art_at;
                art_cols.push(art_at);
                art_at += 1;
            }
        }
    }

    let mut t = Tableau {
        rows,
        cost: vec![Q::zero(); width],
        basis,
        width,
        bland: false,
        stall: 0,
        pivots: 0,
    };

    // phase 1: minimize the sum of artificials, priced out of the cost row
    if n_art > 0 {
        for &c in &art_cols {
            t.cost[c] = Q::one();
        }
        for i in 0..m {
            if art_cols.contains(&t.basis[i]) {
                let row = t.rows[i].clone();
                for (v, p) in t.cost.iter_mut().zip(&row) {
                    *v -= p;
                }
            }
        }
        t.optimize(width - 1)?;
        let phase1 = -t.cost[width - 1].clone();
        if !phase1.is_zero() {
            return Ok(LpOutcome::Infeasible);
        }
        // pivot leftover basic artificials out on any structural column
        for i in 0..m {
            if !art_cols.contains(&t.basis[i]) {
                continue;
            }
            let col = (0..n + n_slack).find(|&c| !t.rows[i][c].is_zero());
            match col {
                Some(c) => t.pivot(i, c),
                // all-zero row: redundant constraint, harmless to keep
                None => {}
            }
        }
        // freeze artificial columns at zero so phase 2 never re-enters them
        for &c in &art_cols {
            for row in t.rows.iter_mut() {
                row[c] = Q::zero();
            }
        }
    }

    // phase 2: price the real objective out over the current basis
    t.cost = vec![Q::zero(); width];
    for (k, v) in p.objective.iter().enumerate() {
        t.cost[k] = v.clone();
    }
    for i in 0..m {
        let b = t.basis[i];
        if b < width - 1 && !t.cost[b].is_zero() {
            let f = t.cost[b].clone();
            let row = t.rows[i].clone();
            for (v, p) in t.cost.iter_mut().zip(&row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
            t.cost[b] = Q::zero();
        }
    }
    t.stall = 0;
    if !t.optimize(n + n_slack)? {
        return Ok(LpOutcome::Unbounded);
    }

    let mut x = vec![Q::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] = t.rows[i][width - 1].clone();
        }
    }
    let value = p
        .objective
        .iter()
        .zip(&x)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, v)| c * v)
        .sum();
    // uniqueness certificate over the real columns: a nonbasic column with
    // reduced cost zero admits an alternate optimum (or is a degenerate
    // alias of this one, which we cannot tell apart here)
    let mut in_basis = vec![false; width];
    for &b in &t.basis {
        in_basis[b] = true;
    }
    let unique = (0..n + n_slack).all(|c| in_basis[c] || t.cost[c].is_positive());
    Ok(LpOutcome::Optimal { x, value, unique })
}
