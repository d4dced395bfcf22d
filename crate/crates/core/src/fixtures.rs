//! Built-in example codes used by the CLI and the test suite.
//!
//! The registry holds the small matrices every experiment in this crate is
//! exercised against: a rank-3 length-3 check matrix whose code is just the
//! zero word ("trivial3"), its cubic cover ("cubic-cover"), the convolutional
//! reinterpretation of that cover ("conv-335"), a rate-1/4 monomial
//! convolutional code ("ex5-conv"), and the wrapped QC family it induces
//! ("ex11-qc", parameterized by the circulant size r).

use crate::codes::{ConvCode, QcCode};
use crate::error::{Error, Result};
use crate::poly::{BinPoly, BinPolyMatrix};
use crate::ratvec::NonnegPolyVec;

fn p(exps: &[usize]) -> BinPoly {
    BinPoly::from_exponents(exps.iter().copied())
}

/// 3x3 scalar check matrix of full rank; the code is {000}.
pub fn trivial3() -> QcCode {
    let entries = vec![
        p(&[0]), p(&[0]), BinPoly::zero(),
        p(&[0]), p(&[0]), p(&[0]),
        BinPoly::zero(), p(&[0]), p(&[0]),
    ];
    QcCode::new(BinPolyMatrix::qc(3, 3, 1, entries).unwrap()).unwrap()
}

/// Degree-3 cover of `trivial3`: circulant size 3, entries 1, X, X^2.
pub fn cubic_cover() -> QcCode {
    let entries = vec![
        p(&[0]), p(&[0]), BinPoly::zero(),
        p(&[2]), p(&[0]), p(&[1]),
        BinPoly::zero(), p(&[0]), p(&[0]),
    ];
    QcCode::new(BinPolyMatrix::qc(3, 3, 3, entries).unwrap()).unwrap()
}

/// The cover matrix read as a convolutional code in D; trivially zero
/// (no nonzero codeword) even though the cover itself has plenty.
pub fn conv_335() -> ConvCode {
    cubic_cover().unwrap()
}

/// Rate-1/4 convolutional code with monomial entries, memory 4, free
/// distance 10.
pub fn ex5_conv() -> ConvCode {
    let entries = vec![
        p(&[0]), p(&[0]), p(&[0]), p(&[0]),
        p(&[0]), p(&[1]), p(&[2]), p(&[3]),
        p(&[0]), p(&[4]), p(&[3]), p(&[2]),
    ];
    ConvCode::new(BinPolyMatrix::conv(3, 4, entries).unwrap()).unwrap()
}

/// The QC family obtained by wrapping `ex5-conv` modulo X^r - 1.
pub fn ex11_qc(r: usize) -> Result<QcCode> {
    ex5_conv().wrap(r)
}

/// The running pseudo-codeword example for the rate-1/4 code.
pub fn ex5_omega() -> NonnegPolyVec {
    NonnegPolyVec::parse_text("3*2+1*3\n4*1+1*2\n3*0+1*1+4*2+1*3\n3*0+4*1+1*2")
        .expect("fixture vector parses")
}

/// Names accepted by [`fixture_matrix`], in display order.
pub const NAMES: [&str; 5] = ["trivial3", "cubic-cover", "conv-335", "ex5-conv", "ex11-qc"];

/// One-line description per fixture, aligned with [`NAMES`].
pub const DESCRIPTIONS: [&str; 5] = [
    "3x3 full-rank scalar check matrix; code = {000}",
    "cubic cover of trivial3, circulant size 3",
    "cover matrix as a convolutional code (trivially zero)",
    "rate-1/4 monomial convolutional code, memory 4",
    "wrap of ex5-conv mod X^r-1 (needs --r)",
];

/// Looks a fixture up by name. `r` is required for "ex11-qc" and rejected
/// for the rest.
pub fn fixture_matrix(name: &str, r: Option<usize>) -> Result<BinPolyMatrix> {
    match (name, r) {
        ("trivial3", None) => Ok(trivial3().matrix().clone()),
        ("cubic-cover", None) => Ok(cubic_cover().matrix().clone()),
        ("conv-335", None) => Ok(conv_335().matrix().clone()),
        ("ex5-conv", None) => Ok(ex5_conv().matrix().clone()),
        ("ex11-qc", Some(r)) => Ok(ex11_qc(r)?.matrix().clone()),
        ("ex11-qc", None) => Err(Error::Parse("fixture ex11-qc needs --r".into())),
        (other, Some(_)) if NAMES.contains(&other) => {
            Err(Error::Parse(format!("fixture {other} takes no --r")))
        }
        (other, _) => Err(Error::Parse(format!(
            "unknown fixture {other}; known: {}",
            NAMES.join(", ")
        ))),
    }
}
