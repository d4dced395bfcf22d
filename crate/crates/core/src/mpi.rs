//! Message-passing iterative decoding on Tanner graphs.
//!
//! A parity-check matrix induces a bipartite graph between code symbols
//! and checks, and decoding passes log-likelihood-ratio messages along its
//! edges under the flooding schedule: every variable speaks, every check
//! answers, and the round ends with a tentative hard decision that stops
//! the decoder as soon as it satisfies every check. The sum-product rule
//! combines incoming beliefs through the pairwise tanh product; min-sum
//! replaces that product by a sign-and-minimum rule whose every operation
//! is positively homogeneous, so min-sum decisions cannot depend on a
//! positive scaling of the input. We can assert that invariance bit for
//! bit by running the same decoder over exact rationals.
//!
//! Check rows of weight one declare their variable a known zero. Such rows
//! appear at the head of unwrapped-code windows, where the earliest checks
//! see only the first symbol blocks. Those variables (and any cascade they
//! trigger) are peeled before iterating rather than handled by a saturated
//! pin message, which would need an arbitrary magnitude and would break
//! exact scale invariance.
//!
//! The sliding-window decoder runs the block decoder over a bounded window
//! of an unwrapped code's check matrix, commits the oldest block, and
//! slides one block forward. Committed decisions re-enter later windows as
//! high-certainty messages, and the tail of a terminated stream enters as
//! known zeros by simply ending the window at the stream boundary.

use crate::codes::ConvCode;
use crate::error::{Error, Result};
use crate::poly::ScalarBinMatrix;
use crate::rat::Q;
use num_traits::Signed;
use std::collections::HashSet;

/// Bipartite adjacency between code symbols and checks. The edge set is
/// exactly the support of the matrix it was built from.
#[derive(Clone, Debug)]
pub struct TannerGraph {
    n: usize,
    check_vars: Vec<Vec<usize>>,
}

impl TannerGraph {
    pub fn new(h: &ScalarBinMatrix) -> Self {
        let check_vars = (0..h.rows()).map(|j| h.row_support(j).to_vec()).collect();
        Self { n: h.cols(), check_vars }
    }

    /// Number of code symbols.
    pub fn vars(&self) -> usize {
        self.n
    }

    /// Number of checks.
    pub fn checks(&self) -> usize {
        self.check_vars.len()
    }

    pub fn check_support(&self, check: usize) -> &[usize] {
        &self.check_vars[check]
    }

    fn syndrome_is_zero(&self, hard: &[u8]) -> bool {
        self.check_vars
            .iter()
            .all(|vars| vars.iter().fold(0u8, |p, &v| p ^ hard[v]) == 0)
    }

    /// Variables forced to zero by weight-one checks, iterated to the
    /// fixpoint: peeling a variable may leave another check with a single
    /// live variable.
    fn peel(&self) -> Vec<bool> {
        let mut pinned = vec![false; self.n];
        loop {
            let mut changed = false;
            for vars in &self.check_vars {
                let mut live = vars.iter().filter(|&&v| !pinned[v]);
                if let (Some(&only), None) = (live.next(), live.next()) {
                    pinned[only] = true;
                    changed = true;
                }
            }
            if !changed {
                return pinned;
            }
        }
    }
}

/// Result of one message-passing decoding run.
#[derive(Clone, Debug, PartialEq)]
pub struct DecodeOutcome {
    /// Hard decisions, one bit per code symbol.
    pub hard: Vec<u8>,
    /// Rounds actually run, between 1 and the budget.
    pub iterations: usize,
    /// True iff the hard decision satisfies every check.
    pub converged: bool,
    /// True iff some non-final hard decision repeated an earlier one, the
    /// cycling behavior worth logging for min-sum.
    pub oscillated: bool,
    /// Per-iteration hard decisions when recording was requested.
    pub trajectory: Option<Vec<Vec<u8>>>,
}

/// Default clip applied to variable-to-check messages in double precision;
/// tanh saturates to exactly 1.0 not far beyond this, which would send the
/// check update to infinity.
pub const DEFAULT_LLR_CLIP: f64 = 50.0;

/// Default iteration budget.
pub const DEFAULT_MAX_ITER: usize = 50;

/// Message values a min-sum decoder can run on. The rule needs only sign,
/// magnitude comparison, and addition, so both doubles and exact rationals
/// qualify.
pub trait MsValue: Clone + PartialOrd {
    fn zero() -> Self;
    fn abs_val(&self) -> Self;
    fn neg_val(&self) -> Self;
    fn add_assign_val(&mut self, other: &Self);
    fn sub_val(&self, other: &Self) -> Self;
    fn is_neg(&self) -> bool;
    fn check_finite(&self) -> Result<()>;
}

impl MsValue for f64 {
    fn zero() -> Self {
        0.0
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }

    fn neg_val(&self) -> Self {
        -self
    }

    fn add_assign_val(&mut self, other: &Self) {
        *self += other;
    }

    fn sub_val(&self, other: &Self) -> Self {
        self - other
    }

    fn is_neg(&self) -> bool {
        *self < 0.0
    }

    fn check_finite(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::Unsupported("non-finite message input".into()))
        }
    }
}

impl MsValue for Q {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }

    fn abs_val(&self) -> Self {
        Signed::abs(self)
    }

    fn neg_val(&self) -> Self {
        -self
    }

    fn add_assign_val(&mut self, other: &Self) {
        *self += other;
    }

    fn sub_val(&self, other: &Self) -> Self {
        self - other
    }

    fn is_neg(&self) -> bool {
        self.is_negative()
    }

    fn check_finite(&self) -> Result<()> {
        Ok(())
    }
}

/// The residual graph a decoder actually iterates on: live checks with at
/// least two unpeeled variables, plus the variable-side adjacency into the
/// per-check message slots.
struct Residual {
    pinned: Vec<bool>,
    check_vars: Vec<Vec<usize>>,
    var_slots: Vec<Vec<(usize, usize)>>,
}

fn residual_graph(g: &TannerGraph) -> Residual {
    let pinned = g.peel();
    let mut check_vars = Vec::new();
    for vars in &g.check_vars {
        let live: Vec<usize> = vars.iter().copied().filter(|&v| !pinned[v]).collect();
        if live.len() >= 2 {
            check_vars.push(live);
        }
    }
    let mut var_slots = vec![Vec::new(); g.n];
    for (c, vars) in check_vars.iter().enumerate() {
        for (slot, &v) in vars.iter().enumerate() {
            var_slots[v].push((c, slot));
        }
    }
    Residual { pinned, check_vars, var_slots }
}

fn hard_decisions<T: MsValue>(totals: &[T], pinned: &[bool]) -> Vec<u8> {
    // an exactly zero total resolves to bit 0 for determinism
    totals
        .iter()
        .zip(pinned)
        .map(|(t, &p)| u8::from(!p && t.is_neg()))
        .collect()
}

struct FloodState {
    seen: HashSet<Vec<u8>>,
    oscillated: bool,
    trajectory: Option<Vec<Vec<u8>>>,
}

impl FloodState {
    fn new(record: bool) -> Self {
        Self {
            seen: HashSet::new(),
            oscillated: false,
            trajectory: record.then(Vec::new),
        }
    }

    fn observe(&mut self, hard: &[u8]) {
        if !self.seen.insert(hard.to_vec()) {
            self.oscillated = true;
        }
        if let Some(t) = self.trajectory.as_mut() {
            t.push(hard.to_vec());
        }
    }

    fn finish(self, hard: Vec<u8>, iterations: usize, converged: bool) -> DecodeOutcome {
        DecodeOutcome {
            hard,
            iterations,
            converged,
            oscillated: self.oscillated,
            trajectory: self.trajectory,
        }
    }
}

fn validate_decode_input<T: MsValue>(g: &TannerGraph, llr: &[T], max_iter: usize) -> Result<()> {
    if llr.len() != g.n {
        return Err(Error::Dimension(format!(
            "{} channel values for {} code symbols",
            llr.len(),
            g.n
        )));
    }
    if max_iter == 0 {
        return Err(Error::Unsupported("iteration budget must be at least 1".into()));
    }
    for v in llr {
        v.check_finite()?;
    }
    Ok(())
}

/// Sum-product decoding under the flooding schedule with the default
/// message clip and no trajectory recording.
pub fn sum_product_decode(g: &TannerGraph, llr: &[f64], max_iter: usize) -> Result<DecodeOutcome> {
    sum_product_with(g, llr, max_iter, DEFAULT_LLR_CLIP, false)
}

/// Sum-product decoding with an explicit variable-to-check message clip.
/// The clip bounds the tanh argument; the pairwise products are further
/// held just inside (-1, 1) so the inverse transform stays finite.
pub fn sum_product_with(
    g: &TannerGraph,
    llr: &[f64],
    max_iter: usize,
    clip: f64,
    record_trajectory: bool,
) -> Result<DecodeOutcome> {
    validate_decode_input(g, llr, max_iter)?;
    if !(clip > 0.0 && clip.is_finite()) {
        return Err(Error::Unsupported("message clip must be positive and finite".into()));
    }
    let res = residual_graph(g);
    let mut msg: Vec<Vec<f64>> = res.check_vars.iter().map(|v| vec![0.0; v.len()]).collect();
    let mut state = FloodState::new(record_trajectory);
    // largest product magnitude fed to atanh; tanh(clip/2) can round to 1.0
    const SAT: f64 = 1.0 - 1e-12;
    for iter in 1..=max_iter {
        // variable totals, then per-check extrinsic updates
        let mut totals = llr.to_vec();
        for (v, slots) in res.var_slots.iter().enumerate() {
            for &(c, s) in slots {
                totals[v] += msg[c][s];
            }
        }
        for (c, vars) in res.check_vars.iter().enumerate() {
            let t: Vec<f64> = vars
                .iter()
                .zip(&msg[c])
                .map(|(&v, m)| ((totals[v] - m).clamp(-clip, clip) / 2.0).tanh())
                .collect();
            let d = t.len();
            let mut bwd = vec![1.0; d + 1];
            for k in (0..d).rev() {
                bwd[k] = bwd[k + 1] * t[k];
            }
            let mut fwd = 1.0;
            for k in 0..d {
                let prod = (fwd * bwd[k + 1]).clamp(-SAT, SAT);
                msg[c][k] = 2.0 * prod.atanh();
                fwd *= t[k];
            }
        }
        let mut totals = llr.to_vec();
        for (v, slots) in res.var_slots.iter().enumerate() {
            for &(c, s) in slots {
                totals[v] += msg[c][s];
            }
        }
        let hard = hard_decisions(&totals, &res.pinned);
        if g.syndrome_is_zero(&hard) {
            state.observe(&hard);
            return Ok(state.finish(hard, iter, true));
        }
        state.observe(&hard);
        if iter == max_iter {
            return Ok(state.finish(hard, iter, false));
        }
    }
    unreachable!("the iteration loop returns on its last pass");
}

/// Min-sum decoding in double precision under the flooding schedule.
pub fn min_sum_decode(g: &TannerGraph, llr: &[f64], max_iter: usize) -> Result<DecodeOutcome> {
    min_sum_decode_in(g, llr, max_iter, false)
}

/// Min-sum decoding over any [`MsValue`] scalar. Running it over exact
/// rationals makes the positive-scaling invariance of the whole trajectory
/// checkable exactly, with no rounding to hide behind.
pub fn min_sum_decode_in<T: MsValue>(
    g: &TannerGraph,
    llr: &[T],
    max_iter: usize,
    record_trajectory: bool,
) -> Result<DecodeOutcome> {
    validate_decode_input(g, llr, max_iter)?;
    let res = residual_graph(g);
    let mut msg: Vec<Vec<T>> = res
        .check_vars
        .iter()
        .map(|v| vec![T::zero(); v.len()])
        .collect();
    let mut state = FloodState::new(record_trajectory);
    for iter in 1..=max_iter {
        let mut totals = llr.to_vec();
        for (v, slots) in res.var_slots.iter().enumerate() {
            for &(c, s) in slots {
                totals[v].add_assign_val(&msg[c][s]);
            }
        }
        for (c, vars) in res.check_vars.iter().enumerate() {
            // incoming messages as (negative sign, magnitude)
            let q: Vec<(bool, T)> = vars
                .iter()
                .zip(&msg[c])
                .map(|(&v, m)| {
                    let x = totals[v].sub_val(m);
                    (x.is_neg(), x.abs_val())
                })
                .collect();
            let d = q.len();
            // suffix sign parities and magnitude minima, then one forward pass
            let mut bwd_neg = vec![false; d + 1];
            let mut bwd_min: Vec<Option<T>> = vec![None; d + 1];
            for k in (0..d).rev() {
                bwd_neg[k] = bwd_neg[k + 1] ^ q[k].0;
                bwd_min[k] = match &bwd_min[k + 1] {
                    Some(m) if *m < q[k].1 => Some(m.clone()),
                    _ => Some(q[k].1.clone()),
                };
            }
            let mut fwd_neg = false;
            let mut fwd_min: Option<T> = None;
            for k in 0..d {
                let neg = fwd_neg ^ bwd_neg[k + 1];
                let m = match (&fwd_min, &bwd_min[k + 1]) {
                    (Some(a), Some(b)) => {
                        if a < b {
                            a.clone()
                        } else {
                            b.clone()
                        }
                    }
                    (Some(a), None) => a.clone(),
                    // residual checks have degree >= 2, so the complement
                    // of one variable is never empty
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!("degree-1 check survived peeling"),
                };
                msg[c][k] = if neg { m.neg_val() } else { m };
                fwd_neg ^= q[k].0;
                fwd_min = match fwd_min {
                    Some(f) if f < q[k].1 => Some(f),
                    _ => Some(q[k].1.clone()),
                };
            }
        }
        let mut totals = llr.to_vec();
        for (v, slots) in res.var_slots.iter().enumerate() {
            for &(c, s) in slots {
                totals[v].add_assign_val(&msg[c][s]);
            }
        }
        let hard = hard_decisions(&totals, &res.pinned);
        if g.syndrome_is_zero(&hard) {
            state.observe(&hard);
            return Ok(state.finish(hard, iter, true));
        }
        state.observe(&hard);
        if iter == max_iter {
            return Ok(state.finish(hard, iter, false));
        }
    }
    unreachable!("the iteration loop returns on its last pass");
}

/// Which message-passing rule a higher-level decoder should run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MpAlgo {
    SumProduct,
    MinSum,
}

/// Output of a sliding-window run over a terminated stream.
#[derive(Clone, Debug)]
pub struct SlidingWindowResult {
    /// Committed hard decisions for the whole stream.
    pub hard: Vec<u8>,
    /// True iff the committed stream satisfies the full terminated check
    /// system. A window can miss its own zero syndrome while a bit near
    /// its trailing edge is still thinly covered and yet commit nothing
    /// wrong, so this is judged on the final output, not the steps.
    pub converged: bool,
    /// Per-position outcomes, each over its own window.
    pub steps: Vec<DecodeOutcome>,
}

/// Certainty magnitude for committed bits re-entering a later window. The
/// sum-product clip tames it; min-sum passes it through, where it simply
/// dominates every channel-born magnitude.
const COMMIT_LLR: f64 = 1.0e3;

/// Decodes a terminated stream with a window of `window_blocks` symbol
/// blocks. Each position decodes the window's piece of the unwrapped check
/// matrix, commits the oldest block, and slides by one block; committed
/// blocks stay visible to the checks that straddle the boundary as
/// high-certainty values. Once the window reaches the end of the stream it
/// decodes the remaining blocks together with the termination checks,
/// whose columns beyond the stream are known zeros and are simply cut.
///
/// # Errors
/// Window smaller than the syndrome-former memory plus one, or a stream
/// length that is not a positive multiple of the symbol-block length.
pub fn sliding_window_decode(
    code: &ConvCode,
    llr: &[f64],
    window_blocks: usize,
    max_iter: usize,
    algo: MpAlgo,
) -> Result<SlidingWindowResult> {
    let l = code.matrix().cols();
    let jj = code.matrix().rows();
    let ms = code.memory();
    if window_blocks < ms + 1 {
        return Err(Error::Unsupported(format!(
            "window of {window_blocks} blocks cannot cover memory {ms} plus one"
        )));
    }
    if llr.is_empty() || llr.len() % l != 0 {
        return Err(Error::Dimension(format!(
            "stream length {} is not a positive multiple of the block length {l}",
            llr.len()
        )));
    }
    let t_blocks = llr.len() / l;
    let coeff = code.matrix().coefficient_decompose();
    let mut committed: Vec<u8> = Vec::with_capacity(llr.len());
    let mut steps = Vec::new();
    let mut p = 0usize;
    loop {
        let last = p + window_blocks >= t_blocks;
        let lo = p.saturating_sub(ms);
        let hi = if last { t_blocks } else { p + window_blocks };
        let row_hi = if last { t_blocks + ms } else { p + window_blocks };
        let mut support = vec![Vec::new(); (row_hi - p) * jj];
        for a in p..row_hi {
            for b in lo..hi {
                if b > a || a - b > ms {
                    continue;
                }
                let hk = &coeff[a - b];
                for row in 0..jj {
                    for &col in hk.row_support(row) {
                        support[(a - p) * jj + row].push((b - lo) * l + col);
                    }
                }
            }
        }
        for row in &mut support {
            row.sort_unstable();
        }
        let win = ScalarBinMatrix::new((row_hi - p) * jj, (hi - lo) * l, support)?;
        let mut wl = Vec::with_capacity((hi - lo) * l);
        for b in lo..p {
            for i in 0..l {
                wl.push(if committed[b * l + i] == 1 { -COMMIT_LLR } else { COMMIT_LLR });
            }
        }
        wl.extend_from_slice(&llr[p * l..hi * l]);
        let g = TannerGraph::new(&win);
        let out = match algo {
            MpAlgo::SumProduct => sum_product_decode(&g, &wl, max_iter)?,
            MpAlgo::MinSum => min_sum_decode(&g, &wl, max_iter)?,
        };
        let commit_hi = if last { t_blocks } else { p + 1 };
        let off = (p - lo) * l;
        committed.extend_from_slice(&out.hard[off..off + (commit_hi - p) * l]);
        steps.push(out);
        if last {
            break;
        }
        p += 1;
    }
    let converged = code.is_codeword_scalar(&committed)?;
    Ok(SlidingWindowResult { hard: committed, converged, steps })
}
