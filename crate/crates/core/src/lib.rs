//! Exact-arithmetic toolkit for quasi-cyclic LDPC block codes and the
//! convolutional codes obtained by unwrapping them.
//!
//! The crate builds polynomial parity-check matrices over GF(2), expands
//! them to scalar circulant form, and studies the pseudo-codewords seen by
//! linear-programming and message-passing decoders: fundamental cones and
//! polytopes, extreme-ray enumeration, pseudo-weights for the standard
//! channels, free-distance and pseudo-weight bound sequences, and small
//! Monte Carlo decoding experiments. All polyhedral computations run over
//! arbitrary-precision rationals; floating point only enters the decoders
//! and channel simulation, where it belongs.

pub mod codes;
pub mod cone;
pub mod error;
pub mod fixtures;
pub mod gf2;
pub mod lpdec;
pub mod mpi;
pub mod poly;
pub mod pwmin;
pub mod rat;
pub mod ratvec;
pub mod rays;
pub mod simplex;
pub mod weights;

pub use codes::{ConvCode, Distance, FreeDistanceBounds, QcCode, TruncatedCheckMatrix};
pub use cone::{
    build_cone, build_polytope, cone_contains_conv, cone_contains_qc, monomial_cone_check,
    project_pseudocodeword, ConeSystem, Membership, PolytopeSystem,
};
pub use error::{Error, Result};
pub use lpdec::{boundary_experiment, lambda_alpha_beta, lp_decode, BoundaryPoint, LpDecodeResult, Winner};
pub use mpi::{
    min_sum_decode, sliding_window_decode, sum_product_decode, DecodeOutcome, MpAlgo,
    SlidingWindowResult, TannerGraph,
};
pub use poly::{BinPoly, BinPolyMatrix, ScalarBinMatrix};
pub use pwmin::{min_maxfrac_lp, min_pseudoweight, pw_bound_sequences, BoundSequences, MinPseudoweight};
pub use rat::Q;
pub use ratvec::NonnegPolyVec;
pub use rays::{enumerate_extreme_rays, ExtremeRaySet, RayLimits};
pub use weights::{weight_report, weight_report_poly, Measure, WeightReport};
