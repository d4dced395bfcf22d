//! Pseudo-weight functionals on non-negative vectors.
//!
//! A pseudo-codeword degrades iterative and LP decoding by an amount that
//! depends on the channel, so each channel gets its own weight functional:
//! AWGNC ‖ω‖₁²/‖ω‖₂², BEC |supp(ω)|, BSC via the median of the sorted
//! coefficient profile, plus the max-fractional weight ‖ω‖₁/‖ω‖∞ (an LP
//! decoding guarantee) and the plain fractional weight ‖ω‖₁. On a 0/1
//! codeword every one of them equals the Hamming weight, which is why
//! minimum pseudo-weights compare directly against minimum distance.
//!
//! All functionals are symmetric in the coefficients and scale-invariant
//! (the fractional weight scales linearly), and they interlace pointwise:
//! max-frac ≤ AWGNC ≤ BEC and max-frac ≤ BSC ≤ BEC for every non-negative
//! vector.
//!
//! The wrap-around projection ω(X) mod (X^r−1) groups coefficients into
//! residue classes and sums each class, so the projected coefficient
//! multiset majorizes the original one. Majorization drives every weight
//! functional here weakly down (and preserves ‖·‖₁ exactly), which is the
//! mechanism behind comparing a convolutional code's pseudo-codewords with
//! their wrapped images. [`projection_weight_comparison`] packages that
//! check for cone members.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::codes::ConvCode;
use crate::cone::project_pseudocodeword;
use crate::error::{Error, Result};
use crate::rat::{qu, Q};
use crate::ratvec::NonnegPolyVec;

/// Channel/functional selector for weight computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Measure {
    Awgnc,
    Bec,
    Bsc,
    MaxFrac,
    Frac,
}

impl Measure {
    pub const ALL: [Measure; 5] =
        [Measure::Awgnc, Measure::Bec, Measure::Bsc, Measure::MaxFrac, Measure::Frac];

    /// The four measures that weakly decrease under wrap-around projection;
    /// the fractional weight is preserved instead.
    pub const PROJECTING: [Measure; 4] =
        [Measure::Awgnc, Measure::Bec, Measure::Bsc, Measure::MaxFrac];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Awgnc => "awgnc",
            Measure::Bec => "bec",
            Measure::Bsc => "bsc",
            Measure::MaxFrac => "maxfrac",
            Measure::Frac => "frac",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "awgnc" => Ok(Measure::Awgnc),
            "bec" => Ok(Measure::Bec),
            "bsc" => Ok(Measure::Bsc),
            "maxfrac" => Ok(Measure::MaxFrac),
            "frac" => Ok(Measure::Frac),
            other => Err(Error::Parse(format!(
                "unknown measure `{other}` (expected awgnc, bec, bsc, maxfrac, or frac)"
            ))),
        }
    }
}

/// All five weights of one vector, exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightReport {
    pub awgnc: Q,
    pub bec: usize,
    pub bsc: Q,
    pub max_frac: Q,
    pub frac: Q,
}

impl WeightReport {
    pub fn get(&self, measure: Measure) -> Q {
        match measure {
            Measure::Awgnc => self.awgnc.clone(),
            Measure::Bec => qu(self.bec),
            Measure::Bsc => self.bsc.clone(),
            Measure::MaxFrac => self.max_frac.clone(),
            Measure::Frac => self.frac.clone(),
        }
    }

    fn zero() -> Self {
        Self {
            awgnc: Q::zero(),
            bec: 0,
            bsc: Q::zero(),
            max_frac: Q::zero(),
            frac: Q::zero(),
        }
    }
}

/// Weights of a coefficient multiset already known to be non-negative.
fn report_from_nonneg(values: &[Q]) -> WeightReport {
    let nz: Vec<&Q> = values.iter().filter(|c| !c.is_zero()).collect();
    if nz.is_empty() {
        return WeightReport::zero();
    }
    let l1: Q = nz.iter().map(|c| (*c).clone()).sum();
    let l2sq: Q = nz.iter().map(|c| *c * *c).sum();
    let linf = nz.iter().map(|c| (*c).clone()).max().expect("nonempty");

    // BSC weight: with F the integral of the non-increasing rearrangement,
    // the weight is 2e where F(e) = F(n)/2; F is piecewise linear with
    // breakpoints at the integers, so e solves exactly in one segment
    let mut sorted: Vec<&Q> = nz.clone();
    sorted.sort_by(|a, b| b.cmp(a));
    let target = &l1 / qu(2);
    let mut prefix = Q::zero();
    let mut e = Q::zero();
    for (j, v) in sorted.iter().enumerate() {
        let next = &prefix + *v;
        if next >= target {
            e = qu(j) + (&target - &prefix) / *v;
            break;
        }
        prefix = next;
    }

    WeightReport {
        awgnc: &l1 * &l1 / l2sq,
        bec: nz.len(),
        bsc: qu(2) * e,
        max_frac: &l1 / linf,
        frac: l1,
    }
}

/// The five weights of a non-negative scalar vector.
///
/// # Errors
/// Any negative entry.
pub fn weight_report(w: &[Q]) -> Result<WeightReport> {
    for (i, c) in w.iter().enumerate() {
        if c.is_negative() {
            return Err(Error::Unsupported(format!(
                "weight functionals need non-negative entries, entry {i} is {c}"
            )));
        }
    }
    Ok(report_from_nonneg(w))
}

/// The five weights of a polynomial vector (its coefficient multiset).
pub fn weight_report_poly(w: &NonnegPolyVec) -> WeightReport {
    report_from_nonneg(&w.coefficients())
}

/// Whether `coarse` majorizes `fine`: equal totals and every prefix sum of
/// the sorted-descending coarse profile dominates the fine one. Grouping a
/// multiset (summing disjoint subsets) always majorizes it, which is the
/// combinatorial heart of projection monotonicity.
pub fn majorizes(coarse: &[Q], fine: &[Q]) -> bool {
    let mut a: Vec<Q> = coarse.to_vec();
    let mut b: Vec<Q> = fine.to_vec();
    a.sort_by(|x, y| y.cmp(x));
    b.sort_by(|x, y| y.cmp(x));
    let len = a.len().max(b.len());
    a.resize(len, Q::zero());
    b.resize(len, Q::zero());
    let mut pa = Q::zero();
    let mut pb = Q::zero();
    for (x, y) in a.iter().zip(&b) {
        pa += x;
        pb += y;
        if pa < pb {
            return false;
        }
    }
    pa == pb
}

/// Side-by-side weights of a convolutional-cone member and its wrap-around
/// projection, with the monotonicity verdicts.
#[derive(Clone, Debug)]
pub struct ProjectionComparison {
    pub r: usize,
    pub original: WeightReport,
    pub projected: WeightReport,
    /// Projected coefficient profile majorizes the original one.
    pub majorization: bool,
}

impl ProjectionComparison {
    /// Projection did not increase the measure.
    pub fn weakly_decreased(&self, measure: Measure) -> bool {
        self.projected.get(measure) <= self.original.get(measure)
    }

    /// ‖·‖₁ came through the projection unchanged.
    pub fn frac_preserved(&self) -> bool {
        self.projected.frac == self.original.frac
    }

    pub fn all_hold(&self) -> bool {
        self.majorization
            && self.frac_preserved()
            && Measure::PROJECTING.iter().all(|&m| self.weakly_decreased(m))
    }
}

/// Projects a member of the convolutional fundamental cone modulo X^r − 1
/// and compares the weights on both sides.
///
/// # Errors
/// ω outside the convolutional cone, or r = 0.
pub fn projection_weight_comparison(
    conv: &ConvCode,
    w: &NonnegPolyVec,
    r: usize,
) -> Result<ProjectionComparison> {
    let projected = project_pseudocodeword(conv, w, r)?;
    Ok(ProjectionComparison {
        r,
        original: weight_report_poly(w),
        projected: weight_report_poly(&projected),
        majorization: majorizes(&projected.coefficients(), &w.coefficients()),
    })
}
