//! Extreme-ray enumeration for fundamental cones by the incremental double
//! description method.
//!
//! The cone systems built in this crate always contain the non-negativity
//! rows, so every cone is pointed and lives inside the orthant. Enumeration
//! starts from the orthant's unit rays and inserts one inequality at a time:
//! rays on the negative side are dropped, and each adjacent
//! (positive, negative) pair contributes the ray where its 2-face crosses
//! the new hyperplane. Adjacency is decided combinatorially (no third ray's
//! tight set contains the pair's common tight set), behind a popcount
//! prefilter on the shared tight rows. Tight sets are maintained
//! incrementally as bitsets, so no dot product is ever recomputed.
//!
//! Insertion order dominates the running time: the ray set of every
//! intermediate cone must be carried in full, and a bad order can pass
//! through intermediate cones with orders of magnitude more rays than the
//! final one. Rows that cut nothing are inserted as soon as they become
//! free, and among the cutting rows the next one is chosen greedily to
//! minimize the number of surviving (positive, negative) pairs, with the
//! lexicographic-support order as the deterministic tie-break. The output
//! is the same for every order; only the intermediate frontiers differ.
//!
//! Arithmetic is exact throughout: rays are primitive integer vectors. The
//! hot path runs on checked i128; if anything would overflow, the whole
//! enumeration transparently reruns on big integers. Setting the
//! FUNDCONE_RAY_TRACE environment variable prints the frontier size to
//! stderr after every insertion, which helps when watching a large system.
//!
//! Minimal pseudo-codewords of a code are exactly these edges, which is why
//! the minimum pseudo-weight searches walk the ray list.

use crate::cone::ConeSystem;
use crate::error::{Error, Result};
use crate::rat::Q;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed, ToPrimitive, Zero};

/// Most rows a system may have; tight sets are fixed-width bitsets.
pub const MAX_SYSTEM_ROWS: usize = 256;

/// Guards for the enumeration.
#[derive(Clone, Debug)]
pub struct RayLimits {
    /// Ambient dimension bound; the frontier can grow exponentially in it.
    pub max_dim: usize,
    /// Frontier size bound (memory guard).
    pub max_rays: usize,
}

impl Default for RayLimits {
    fn default() -> Self {
        // the wrapped length-16 cone already has 142141 extreme rays, so the
        // ray budget is sized for final sets in the hundreds of thousands;
        // at roughly half a kilobyte per ray this caps memory near 500 MB
        Self { max_dim: 24, max_rays: 1_000_000 }
    }
}

/// Tight-row bitset; `W` is the word count (W*64 addressable rows).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct ZSet<const W: usize>([u64; W]);

impl<const W: usize> ZSet<W> {
    fn empty() -> Self {
        Self([0; W])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersect(&self, other: &Self) -> Self {
        Self(std::array::from_fn(|k| self.0[k] & other.0[k]))
    }

    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    fn is_superset_of(&self, other: &Self) -> bool {
        (0..W).all(|k| self.0[k] & other.0[k] == other.0[k])
    }
}

/// Integer scalar the enumeration can run on.
trait RayScalar: Integer + Signed + Clone {
    /// None signals overflow; the caller retries on a wider type.
    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self>;
    fn acc_mul(acc: &Self, a: &Self, b: &Self) -> Option<Self>;
    fn from_bigint(v: &BigInt) -> Option<Self>;
    fn to_bigint(&self) -> BigInt;
}

impl RayScalar for i128 {
    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self> {
        CheckedSub::checked_sub(&CheckedMul::checked_mul(a, b)?, &CheckedMul::checked_mul(c, d)?)
    }

    fn acc_mul(acc: &Self, a: &Self, b: &Self) -> Option<Self> {
        CheckedAdd::checked_add(acc, &CheckedMul::checked_mul(a, b)?)
    }

    fn from_bigint(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }

    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl RayScalar for BigInt {
    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self> {
        a.checked_mul(b)?.checked_sub(&c.checked_mul(d)?)
    }

    fn acc_mul(acc: &Self, a: &Self, b: &Self) -> Option<Self> {
        Some(acc + a * b)
    }

    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }

    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

struct Ray<T, const W: usize> {
    v: Vec<T>,
    z: ZSet<W>,
}

fn dot<T: RayScalar>(a: &[T], b: &[T]) -> Option<T> {
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = T::acc_mul(&acc, x, y)?;
        }
    }
    Some(acc)
}

fn normalize<T: RayScalar>(v: &mut [T]) {
    let mut g = T::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
        }
    }
    if g > T::one() {
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = x.div_floor(&g);
            }
        }
    }
}

/// Clears denominators: the integer row spanning the same halfspace.
fn integer_row(row: &[Q]) -> Vec<BigInt> {
    let mut lcm = BigInt::from(1);
    for c in row {
        if !c.is_zero() {
            lcm = lcm.lcm(c.denom());
        }
    }
    row.iter()
        .map(|c| {
            if c.is_zero() {
                BigInt::zero()
            } else {
                c.numer() * (&lcm / c.denom())
            }
        })
        .collect()
}

/// The complete, duplicate-free list of primitive extreme rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremeRaySet {
    n: usize,
    rays: Vec<Vec<BigInt>>,
}

impl ExtremeRaySet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    /// Ray i as a rational vector.
    pub fn ray_q(&self, i: usize) -> Vec<Q> {
        self.rays[i].iter().map(|x| Q::from_integer(x.clone())).collect()
    }

    /// Checks the defining invariants of every ray against the source
    /// system: membership, primitivity, and n-1 independent tight rows.
    pub fn validate(&self, sys: &ConeSystem) -> Result<()> {
        for (idx, ray) in self.rays.iter().enumerate() {
            let rq = self.ray_q(idx);
            if !sys.contains(&rq)? {
                return Err(Error::Unsupported(format!("ray {idx} is outside the cone")));
            }
            let mut g = BigInt::zero();
            for x in ray {
                g = g.gcd(x);
            }
            if g != BigInt::from(1) {
                return Err(Error::Unsupported(format!("ray {idx} is not primitive")));
            }
            let tight: Vec<&[Q]> = sys
                .rows()
                .iter()
                .filter(|row| {
                    row.iter()
                        .zip(&rq)
                        .filter(|(c, _)| !c.is_zero())
                        .map(|(c, w)| c * w)
                        .sum::<Q>()
                        .is_zero()
                })
                .map(|r| r.as_slice())
                .collect();
            if rational_rank(&tight) != self.n - 1 {
                return Err(Error::Unsupported(format!(
                    "ray {idx} has tight rank {} instead of {}",
                    rational_rank(&tight),
                    self.n - 1
                )));
            }
        }
        Ok(())
    }
}

/// Row rank of a rational matrix by Gaussian elimination.
pub fn rational_rank(rows: &[&[Q]]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let n = rows[0].len();
    let mut m: Vec<Vec<Q>> = rows.iter().map(|r| r.to_vec()).collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = Q::from_integer(1.into()) / &m[rank][col];
        for k in col..n {
            if !m[rank][k].is_zero() {
                m[rank][k] = &m[rank][k] * &inv;
            }
        }
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for k in col..n {
                    if !m[rank][k].is_zero() {
                        m[i][k] = &m[i][k] - &f * &m[rank][k];
                    }
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// One insertion round on scalar type T; None anywhere means overflow.
fn insert_row<T: RayScalar, const W: usize>(
    rays: Vec<Ray<T, W>>,
    a: &[T],
    row_idx: usize,
    n: usize,
) -> Option<Vec<Ray<T, W>>> {
    let mut pos: Vec<(Ray<T, W>, T)> = Vec::new();
    let mut zero: Vec<Ray<T, W>> = Vec::new();
    let mut neg: Vec<(Ray<T, W>, T)> = Vec::new();
    for ray in rays {
        let d = dot(a, &ray.v)?;
        if d.is_zero() {
            let mut r = ray;
            r.z.set(row_idx);
            zero.push(r);
        } else if d.is_positive() {
            pos.push((ray, d));
        } else {
            neg.push((ray, d));
        }
    }
    let mut out: Vec<Ray<T, W>> = Vec::new();
    if neg.is_empty() {
        out.extend(pos.into_iter().map(|(r, _)| r));
        out.extend(zero);
        return Some(out);
    }
    if pos.is_empty() {
        return Some(zero);
    }

    // contiguous tight-set copies keep the pair loop off the ray structs
    let pos_z: Vec<ZSet<W>> = pos.iter().map(|(r, _)| r.z).collect();
    let neg_z: Vec<ZSet<W>> = neg.iter().map(|(r, _)| r.z).collect();

    // witness table over survivors and casualties alike, sorted by
    // descending popcount so a superset witness surfaces early and the scan
    // can stop at the first entry too small to be a superset
    let total = pos.len() + neg.len() + zero.len();
    let mut table: Vec<(u32, u32, ZSet<W>)> = Vec::with_capacity(total);
    table.extend(pos_z.iter().enumerate().map(|(i, z)| (z.count(), i as u32, *z)));
    table.extend(
        neg_z.iter().enumerate().map(|(i, z)| (z.count(), (pos.len() + i) as u32, *z)),
    );
    table.extend(zero.iter().enumerate().map(|(i, r)| {
        (r.z.count(), (pos.len() + neg.len() + i) as u32, r.z)
    }));
    table.sort_by_key(|&(c, _, _)| std::cmp::Reverse(c));

    let need = (n as u32).saturating_sub(2);
    let mut fresh: Vec<Ray<T, W>> = Vec::new();
    for (pi, zp) in pos_z.iter().enumerate() {
        for (mi, zm) in neg_z.iter().enumerate() {
            let common = zp.intersect(zm);
            let cc = common.count();
            if cc < need {
                continue;
            }
            let self_a = pi as u32;
            let self_b = (pos.len() + mi) as u32;
            let mut adjacent = true;
            for &(c, t, ref z) in &table {
                if c < cc {
                    break;
                }
                if t != self_a && t != self_b && z.is_superset_of(&common) {
                    adjacent = false;
                    break;
                }
            }
            if !adjacent {
                continue;
            }
            // dp > 0 > dm, so dp * rm - dm * rp is a non-negative mix
            let (rp, dp) = &pos[pi];
            let (rm, dm) = &neg[mi];
            let mut v = Vec::with_capacity(n);
            for k in 0..n {
                v.push(T::mul_sub(dp, &rm.v[k], dm, &rp.v[k])?);
            }
            normalize(&mut v);
            let mut z = common;
            z.set(row_idx);
            fresh.push(Ray { v, z });
        }
    }

    out.extend(pos.into_iter().map(|(r, _)| r));
    out.extend(zero);
    out.extend(fresh);
    Some(out)
}

/// How the next inequality is picked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum InsertionOrder {
    /// Static: single-coefficient rows first, then ascending support.
    Lexicographic,
    /// Greedy: fewest rays cut off.
    MinNegatives,
    /// Greedy: most rays cut off.
    MaxNegatives,
    /// Greedy: fewest surviving (positive, negative) pairs.
    MinPairs,
}


/// Full enumeration on scalar type T; None means overflow, retry wider.
fn enumerate_on<T: RayScalar, const W: usize>(
    sys: &ConeSystem,
    limits: &RayLimits,
    order: InsertionOrder,
) -> Result<Option<Vec<Vec<BigInt>>>> {
    let n = sys.n();
    let nrows = sys.rows().len();
    let mut rows_t: Vec<Vec<T>> = Vec::with_capacity(nrows);
    for row in sys.rows() {
        let big = integer_row(row);
        let mut a: Vec<T> = Vec::with_capacity(n);
        for x in &big {
            match T::from_bigint(x) {
                Some(v) => a.push(v),
                None => return Ok(None),
            }
        }
        rows_t.push(a);
    }

    // lexicographic insertion rank: single-coefficient rows first (they seed
    // the tight sets the combinatorial adjacency test relies on), then
    // ascending support; the adaptive modes use it as their tie-break
    let support = |row: &[Q]| -> Vec<usize> {
        row.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect::<Vec<_>>()
    };
    let mut remaining: Vec<usize> = (0..nrows).collect();
    remaining.sort_by_cached_key(|&i| {
        let s = support(&sys.rows()[i]);
        (s.len() > 1, s, i)
    });

    let mut rays: Vec<Ray<T, W>> = (0..n)
        .map(|i| {
            let mut v = vec![T::zero(); n];
            v[i] = T::one();
            Ray { v, z: ZSet::empty() }
        })
        .collect();
    let trace = std::env::var_os("FUNDCONE_RAY_TRACE").is_some();

    while !remaining.is_empty() {
        let slot = match order {
            InsertionOrder::Lexicographic => 0,
            _ => {
                // one sign pass over every candidate row; a row cutting
                // nothing is inserted immediately (it only marks tight sets,
                // so the non-negativity rows always precede every cut)
                let mut free: Option<usize> = None;
                let mut best: Option<(u128, usize)> = None;
                for (slot, &ri) in remaining.iter().enumerate() {
                    let mut p: u64 = 0;
                    let mut m: u64 = 0;
                    for ray in &rays {
                        let Some(d) = dot(&rows_t[ri], &ray.v) else {
                            return Ok(None);
                        };
                        if d.is_positive() {
                            p += 1;
                        } else if d.is_negative() {
                            m += 1;
                        }
                    }
                    if m == 0 {
                        free = Some(slot);
                        break;
                    }
                    let key = match order {
                        InsertionOrder::MinNegatives => m as u128,
                        InsertionOrder::MaxNegatives => u128::MAX - m as u128,
                        InsertionOrder::MinPairs => p as u128 * m as u128,
                        InsertionOrder::Lexicographic => unreachable!(),
                    };
                    if best.is_none_or(|(bk, _)| key < bk) {
                        best = Some((key, slot));
                    }
                }
                free.or(best.map(|(_, s)| s)).unwrap_or(0)
            }
        };
        let row_idx = remaining.remove(slot);
        match insert_row(rays, &rows_t[row_idx], row_idx, n) {
            Some(next) => rays = next,
            None => return Ok(None),
        }
        if trace {
            eprintln!("row {row_idx}: {} rays", rays.len());
        }
        if rays.len() > limits.max_rays {
            return Err(Error::Guard {
                guard: "ray-budget",
                detail: format!(
                    "frontier holds {} rays, above the limit {}",
                    rays.len(),
                    limits.max_rays
                ),
            });
        }
    }

    let mut out: Vec<Vec<BigInt>> = rays
        .into_iter()
        .map(|r| r.v.iter().map(RayScalar::to_bigint).collect())
        .collect();
    out.sort();
    out.dedup();
    Ok(Some(out))
}

fn enumerate_dispatch<const W: usize>(
    sys: &ConeSystem,
    limits: &RayLimits,
    order: InsertionOrder,
) -> Result<Vec<Vec<BigInt>>> {
    Ok(match enumerate_on::<i128, W>(sys, limits, order)? {
        Some(rays) => rays,
        None => enumerate_on::<BigInt, W>(sys, limits, order)?
            .expect("big integer arithmetic does not overflow"),
    })
}

/// Runs the double description method on the cone system.
///
/// # Errors
/// "ray-dimension" when n exceeds `limits.max_dim`, "ray-system-rows" when
/// the row count exceeds the bitset width, "ray-budget" when the frontier
/// outgrows `limits.max_rays`.
pub fn enumerate_extreme_rays(sys: &ConeSystem, limits: &RayLimits) -> Result<ExtremeRaySet> {
    let n = sys.n();
    if n > limits.max_dim {
        return Err(Error::Guard {
            guard: "ray-dimension",
            detail: format!("dimension {n} exceeds the limit {}", limits.max_dim),
        });
    }
    if sys.rows().len() > MAX_SYSTEM_ROWS {
        return Err(Error::Guard {
            guard: "ray-system-rows",
            detail: format!(
                "{} rows exceed the bitset width {MAX_SYSTEM_ROWS}",
                sys.rows().len()
            ),
        });
    }
    let order = InsertionOrder::MinPairs;
    let rays = if sys.rows().len() <= 128 {
        enumerate_dispatch::<2>(sys, limits, order)?
    } else {
        enumerate_dispatch::<4>(sys, limits, order)?
    };
    Ok(ExtremeRaySet { n, rays })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::build_cone;
    use crate::fixtures;
    use crate::poly::ScalarBinMatrix;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn single_check_cone_has_the_three_pair_rays() {
        let h = ScalarBinMatrix::new(1, 3, vec![vec![0, 1, 2]]).unwrap();
        let sys = build_cone(&h);
        let rays = enumerate_extreme_rays(&sys, &RayLimits::default()).unwrap();
        assert_eq!(
            rays.rays().to_vec(),
            vec![ints(&[0, 1, 1]), ints(&[1, 0, 1]), ints(&[1, 1, 0])]
        );
        rays.validate(&sys).unwrap();
    }

    #[test]
    fn orthant_rays_are_the_unit_vectors() {
        let h = ScalarBinMatrix::new(1, 2, vec![vec![]]).unwrap();
        let sys = build_cone(&h);
        let rays = enumerate_extreme_rays(&sys, &RayLimits::default()).unwrap();
        assert_eq!(rays.rays().to_vec(), vec![ints(&[0, 1]), ints(&[1, 0])]);
        rays.validate(&sys).unwrap();
    }

    #[test]
    fn full_rank_3x3_cone_collapses_to_the_diagonal() {
        let sys = build_cone(&fixtures::trivial3().matrix().expand_circulant().unwrap());
        let rays = enumerate_extreme_rays(&sys, &RayLimits::default()).unwrap();
        assert_eq!(rays.rays().to_vec(), vec![ints(&[1, 1, 1])]);
    }

    #[test]
    fn trivially_zero_cone_has_no_rays() {
        let conv = fixtures::conv_335();
        let window = conv.truncated_check(4, 4).unwrap();
        let sys = build_cone(&window.realized);
        let rays = enumerate_extreme_rays(&sys, &RayLimits::default()).unwrap();
        assert!(rays.is_empty());
    }

    #[test]
    fn repeated_checks_collapse_to_pair_rays() {
        // three identical weight-4 checks: rays are the 6 coordinate pairs
        let h = fixtures::ex11_qc(1).unwrap().matrix().expand_circulant().unwrap();
        let sys = build_cone(&h);
        let rays = enumerate_extreme_rays(&sys, &RayLimits::default()).unwrap();
        assert_eq!(rays.len(), 6);
        rays.validate(&sys).unwrap();
        assert!(rays.rays().contains(&ints(&[1, 1, 0, 0])));
        assert!(rays.rays().contains(&ints(&[0, 0, 1, 1])));
    }

    #[test]
    fn wrapped_family_rays_validate_at_r3() {
        let h = fixtures::ex11_qc(3).unwrap().matrix().expand_circulant().unwrap();
        let sys = build_cone(&h);
        let rays = enumerate_extreme_rays(&sys, &RayLimits::default()).unwrap();
        assert!(!rays.is_empty());
        rays.validate(&sys).unwrap();
        // every codeword of the cover code is a non-negative ray combination;
        // spot-check that some ray is itself 0/1 valued
        assert!(rays.rays().iter().any(|r| r.iter().all(|x| *x == BigInt::zero() || *x == BigInt::from(1))));
    }

    #[test]
    fn small_and_big_integer_lanes_agree() {
        let h = fixtures::ex11_qc(2).unwrap().matrix().expand_circulant().unwrap();
        let sys = build_cone(&h);
        let limits = RayLimits::default();
        let order = InsertionOrder::MinPairs;
        let fast = enumerate_on::<i128, 2>(&sys, &limits, order).unwrap().unwrap();
        let big = enumerate_on::<BigInt, 2>(&sys, &limits, order).unwrap().unwrap();
        assert_eq!(fast, big);
        assert_eq!(fast.len(), 83);
    }

    #[test]
    fn every_insertion_order_agrees() {
        let h = fixtures::ex11_qc(2).unwrap().matrix().expand_circulant().unwrap();
        let sys = build_cone(&h);
        let limits = RayLimits::default();
        let orders = [
            InsertionOrder::Lexicographic,
            InsertionOrder::MinNegatives,
            InsertionOrder::MaxNegatives,
            InsertionOrder::MinPairs,
        ];
        let sets: Vec<_> = orders
            .iter()
            .map(|&o| enumerate_on::<i128, 2>(&sys, &limits, o).unwrap().unwrap())
            .collect();
        for s in &sets[1..] {
            assert_eq!(s, &sets[0]);
        }
    }

    #[test]
    fn narrow_and_wide_bitsets_agree() {
        let h = fixtures::ex11_qc(2).unwrap().matrix().expand_circulant().unwrap();
        let sys = build_cone(&h);
        let limits = RayLimits::default();
        let order = InsertionOrder::MinPairs;
        let narrow = enumerate_on::<i128, 2>(&sys, &limits, order).unwrap().unwrap();
        let wide = enumerate_on::<i128, 4>(&sys, &limits, order).unwrap().unwrap();
        assert_eq!(narrow, wide);
    }

    #[test]
    fn dimension_guard_trips() {
        let h = ScalarBinMatrix::new(1, 25, vec![vec![]]).unwrap();
        let sys = build_cone(&h);
        match enumerate_extreme_rays(&sys, &RayLimits::default()) {
            Err(Error::Guard { guard: "ray-dimension", .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn budget_guard_trips() {
        let h = fixtures::ex11_qc(3).unwrap().matrix().expand_circulant().unwrap();
        let sys = build_cone(&h);
        let limits = RayLimits { max_dim: 24, max_rays: 4 };
        match enumerate_extreme_rays(&sys, &limits) {
            Err(Error::Guard { guard: "ray-budget", .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rank_helper_basics() {
        let one = Q::from_integer(1.into());
        let zero = Q::from_integer(0.into());
        let rows: Vec<Vec<Q>> = vec![
            vec![one.clone(), zero.clone()],
            vec![one.clone(), one.clone()],
            vec![zero.clone(), one.clone()],
        ];
        let refs: Vec<&[Q]> = rows.iter().map(|r| r.as_slice()).collect();
        assert_eq!(rational_rank(&refs), 2);
        assert_eq!(rational_rank(&refs[..1]), 1);
        assert_eq!(rational_rank(&[]), 0);
    }
}
