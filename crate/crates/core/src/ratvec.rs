//! Rational-coefficient polynomials and non-negative polynomial vectors.
//!
//! Pseudo-codewords of a length-L polynomial parity-check matrix are vectors
//! of L polynomials with non-negative real coefficients. We keep them exact:
//! coefficients are `BigRational` and the wrap-around projection
//! (reduction modulo X^r - 1 over the reals) sums coefficients exactly.
//!
//! Vector text format: one component per line, `-` for the zero polynomial,
//! otherwise `+`-joined `coef*exp` terms (`3*2+1*3` is 3X^2 + X^3).
//! Coefficients may be integers, fractions, or decimals.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{parse_q, Q};

/// A polynomial with rational coefficients, stored sparsely by degree.
/// Coefficients of any sign are allowed; the non-negativity invariant lives
/// on [`NonnegPolyVec`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: BTreeMap<usize, Q>,
}

impl RatPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(degree: usize, coeff: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(degree, coeff);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, Q)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, c);
        }
        p
    }

    /// Constant-coefficient list: index = degree.
    pub fn from_dense(coeffs: &[Q]) -> Self {
        Self::from_terms(coeffs.iter().cloned().enumerate())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, degree: usize) -> Q {
        self.coeffs.get(&degree).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn support_size(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add_term(&mut self, degree: usize, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(degree).or_insert_with(Q::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.coeffs.remove(&degree);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in other.terms() {
            out.add_term(d, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(d, c)| (*d, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, factor: &Q) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(d, c)| (*d, c * factor)).collect(),
        }
    }

    /// Multiplies by X^k.
    pub fn shift(&self, k: usize) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(d, c)| (d + k, c.clone())).collect(),
        }
    }

    /// Reduction modulo X^r - 1 over the rationals: coefficient of degree i
    /// in the result is the sum of coefficients at degrees congruent to i.
    pub fn reduce_mod(&self, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::ZeroModulus);
        }
        let mut out = Self::zero();
        for (d, c) in self.terms() {
            out.add_term(d % r, c.clone());
        }
        Ok(out)
    }

    /// First negative coefficient in degree order, if any.
    pub fn first_negative(&self) -> Option<(usize, &Q)> {
        self.coeffs.iter().find(|(_, c)| c.is_negative()).map(|(d, c)| (*d, c))
    }

    pub fn is_nonneg(&self) -> bool {
        self.first_negative().is_none()
    }

    /// Parses one vector-file component token.
    pub fn parse_component(tok: &str) -> Result<Self> {
        let tok = tok.trim();
        if tok.is_empty() {
            return Err(Error::Parse("empty vector component".into()));
        }
        if tok == "-" {
            return Ok(Self::zero());
        }
        let mut p = Self::zero();
        for part in tok.split('+') {
            let (coef, exp) = part
                .split_once('*')
                .ok_or_else(|| Error::Parse(format!("expected `coef*exp` term, got `{part}`")))?;
            let c = parse_q(coef)?;
            let e: usize = exp
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent `{exp}` in `{part}`")))?;
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Serializes to the vector-file component token.
    pub fn component_token(&self) -> String {
        if self.is_zero() {
            return "-".to_string();
        }
        self.coeffs
            .iter()
            .map(|(d, c)| format!("{c}*{d}"))
            .collect::<Vec<_>>()
            .join("+")
    }
}

impl fmt::Display for RatPoly {
    /// Human form, e.g. `8+2X` or `3X^2+X^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.terms() {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            let show_coeff = d == 0 || *c != Q::from_integer(1.into());
            if show_coeff {
                write!(f, "{c}")?;
            }
            match d {
                0 => {}
                1 => f.write_str("X")?,
                _ => write!(f, "X^{d}")?,
            }
        }
        Ok(())
    }
}

/// A vector of L rational polynomials with non-negative coefficients: the
/// exact representation of a pseudo-codeword in polynomial form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonnegPolyVec {
    comps: Vec<RatPoly>,
}

impl NonnegPolyVec {
    pub fn new(comps: Vec<RatPoly>) -> Result<Self> {
        for (i, p) in comps.iter().enumerate() {
            if let Some((d, _)) = p.first_negative() {
                return Err(Error::NegativeCoefficient { component: i, degree: d });
            }
        }
        Ok(Self { comps })
    }

    pub fn zero(len: usize) -> Self {
        Self { comps: vec![RatPoly::zero(); len] }
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn component(&self, i: usize) -> &RatPoly {
        &self.comps[i]
    }

    pub fn components(&self) -> &[RatPoly] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RatPoly::is_zero)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.comps.iter().filter_map(RatPoly::degree).max()
    }

    /// Wrap-around projection: each component reduced modulo X^r - 1 over the
    /// rationals. Sums of non-negative coefficients stay non-negative.
    pub fn reduce_mod(&self, r: usize) -> Result<Self> {
        let comps = self
            .comps
            .iter()
            .map(|p| p.reduce_mod(r))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { comps })
    }

    /// Multiplies every coefficient by a positive rational.
    pub fn scale(&self, factor: &Q) -> Result<Self> {
        if !factor.is_positive() {
            return Err(Error::Unsupported("scale factor must be positive".into()));
        }
        Ok(Self {
            comps: self.comps.iter().map(|p| p.scale(factor)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::Dimension("component count mismatch".into()));
        }
        Ok(Self {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    /// All coefficients, flattened (order unspecified); the weight
    /// functionals depend only on this multiset.
    pub fn coefficients(&self) -> Vec<Q> {
        self.comps
            .iter()
            .flat_map(|p| p.terms().map(|(_, c)| c.clone()))
            .collect()
    }

    /// Scalar expansion in component-major order (component l, degree d at
    /// index l*r + d), the layout of the circulant expansion. All degrees
    /// must be below r.
    pub fn to_scalar_qc(&self, r: usize) -> Result<Vec<Q>> {
        if r == 0 {
            return Err(Error::ZeroModulus);
        }
        if let Some(d) = self.max_degree() {
            if d >= r {
                return Err(Error::ExponentRange { exponent: d, modulus: r });
            }
        }
        let l_dim = self.len();
        let mut out = vec![Q::zero(); l_dim * r];
        for (l, p) in self.comps.iter().enumerate() {
            for (d, c) in p.terms() {
                out[l * r + d] = c.clone();
            }
        }
        Ok(out)
    }

    /// Scalar expansion in time-major order (degree t, component l at index
    /// t*L + l), the layout of the interleaved convolutional check matrix,
    /// padded with zeros out to `blocks` blocks.
    pub fn to_scalar_blocks(&self, blocks: usize) -> Result<Vec<Q>> {
        if let Some(d) = self.max_degree() {
            if d >= blocks {
                return Err(Error::Dimension(format!(
                    "degree {d} does not fit in {blocks} blocks"
                )));
            }
        }
        let l_dim = self.len();
        let mut out = vec![Q::zero(); blocks * l_dim];
        for (l, p) in self.comps.iter().enumerate() {
            for (t, c) in p.terms() {
                out[t * l_dim + l] = c.clone();
            }
        }
        Ok(out)
    }

    /// Inverse of [`to_scalar_qc`].
    pub fn from_scalar_qc(scalar: &[Q], l_dim: usize, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::ZeroModulus);
        }
        if scalar.len() != l_dim * r {
            return Err(Error::Dimension(format!(
                "scalar length {} is not {l_dim}*{r}",
                scalar.len()
            )));
        }
        let comps = (0..l_dim)
            .map(|l| RatPoly::from_dense(&scalar[l * r..(l + 1) * r]))
            .collect();
        Self::new(comps)
    }

    /// Inverse of [`to_scalar_blocks`]; `scalar` length must be a multiple of
    /// `l_dim`.
    pub fn from_scalar_blocks(scalar: &[Q], l_dim: usize) -> Result<Self> {
        if l_dim == 0 || scalar.len() % l_dim != 0 {
            return Err(Error::Dimension(format!(
                "scalar length {} is not a multiple of {l_dim}",
                scalar.len()
            )));
        }
        let blocks = scalar.len() / l_dim;
        let mut comps = vec![RatPoly::zero(); l_dim];
        for t in 0..blocks {
            for (l, comp) in comps.iter_mut().enumerate() {
                comp.add_term(t, scalar[t * l_dim + l].clone());
            }
        }
        Self::new(comps)
    }

    /// Parses the vector file format: one component per line.
    pub fn parse_text(text: &str) -> Result<Self> {
        let comps = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(RatPoly::parse_component)
            .collect::<Result<Vec<_>>>()?;
        if comps.is_empty() {
            return Err(Error::Parse("empty vector file".into()));
        }
        Self::new(comps)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.comps {
            out.push_str(&p.component_token());
            out.push('\n');
        }
        out
    }
}

/// Parses an inline scalar vector like `(4,5,9,8)` or `4,5,9,8` into
/// rationals. Entries may be integers, fractions, or decimals.
pub fn parse_scalar_inline(s: &str) -> Result<Vec<Q>> {
    let s = s.trim();
    let s = s.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(s);
    if s.trim().is_empty() {
        return Err(Error::Parse("empty vector".into()));
    }
    s.split(',').map(parse_q).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::qi;

    /// The running example vector (3D^2+D^3, 4D+D^2, 3+D+4D^2+D^3, 3+4D+D^2).
    pub(crate) fn sample_omega() -> NonnegPolyVec {
        NonnegPolyVec::new(vec![
            RatPoly::from_terms([(2, qi(3)), (3, qi(1))]),
            RatPoly::from_terms([(1, qi(4)), (2, qi(1))]),
            RatPoly::from_terms([(0, qi(3)), (1, qi(1)), (2, qi(4)), (3, qi(1))]),
            RatPoly::from_terms([(0, qi(3)), (1, qi(4)), (2, qi(1))]),
        ])
        .unwrap()
    }

    fn dense(p: &RatPoly, upto: usize) -> Vec<Q> {
        (0..upto).map(|d| p.coeff(d)).collect()
    }

    #[test]
    fn projection_matches_hand_computation() {
        let w = sample_omega();

        let r1 = w.reduce_mod(1).unwrap();
        let flat: Vec<Q> = (0..4).map(|l| r1.component(l).coeff(0)).collect();
        assert_eq!(flat, vec![qi(4), qi(5), qi(9), qi(8)]);

        let r2 = w.reduce_mod(2).unwrap();
        assert_eq!(dense(r2.component(0), 2), vec![qi(3), qi(1)]);
        assert_eq!(dense(r2.component(1), 2), vec![qi(1), qi(4)]);
        assert_eq!(dense(r2.component(2), 2), vec![qi(7), qi(2)]);
        assert_eq!(dense(r2.component(3), 2), vec![qi(4), qi(4)]);

        let r3 = w.reduce_mod(3).unwrap();
        assert_eq!(dense(r3.component(0), 3), vec![qi(1), qi(0), qi(3)]);
        assert_eq!(dense(r3.component(1), 3), vec![qi(0), qi(4), qi(1)]);
        assert_eq!(dense(r3.component(2), 3), vec![qi(4), qi(1), qi(4)]);
        assert_eq!(dense(r3.component(3), 3), vec![qi(3), qi(4), qi(1)]);
    }

    #[test]
    fn projection_above_degree_is_identity() {
        let w = sample_omega();
        for r in 4..8 {
            assert_eq!(w.reduce_mod(r).unwrap(), w);
        }
    }

    #[test]
    fn l1_preserved_by_projection() {
        let w = sample_omega();
        let total: Q = w.coefficients().into_iter().sum();
        for r in 1..7 {
            let p: Q = w.reduce_mod(r).unwrap().coefficients().into_iter().sum();
            assert_eq!(p, total);
        }
        assert_eq!(total, qi(26));
    }

    #[test]
    fn rejects_negative_coefficients() {
        let err = NonnegPolyVec::new(vec![RatPoly::term(2, qi(-1))]);
        assert!(matches!(
            err,
            Err(Error::NegativeCoefficient { component: 0, degree: 2 })
        ));
    }

    #[test]
    fn scalar_round_trips() {
        let w = sample_omega();
        let qc = w.to_scalar_qc(5).unwrap();
        assert_eq!(qc.len(), 20);
        assert_eq!(NonnegPolyVec::from_scalar_qc(&qc, 4, 5).unwrap(), w);

        let blocks = w.to_scalar_blocks(4).unwrap();
        assert_eq!(blocks.len(), 16);
        // time-major: degree-0 coefficients of all components come first
        assert_eq!(&blocks[0..4], &[qi(0), qi(0), qi(3), qi(3)]);
        assert_eq!(NonnegPolyVec::from_scalar_blocks(&blocks, 4).unwrap(), w);

        assert!(w.to_scalar_qc(3).is_err());
        assert!(w.to_scalar_blocks(3).is_err());
    }

    #[test]
    fn text_round_trip() {
        let w = sample_omega();
        let text = w.to_text();
        assert_eq!(NonnegPolyVec::parse_text(&text).unwrap(), w);
        let parsed = NonnegPolyVec::parse_text("3*2+1*3\n-\n1/2*0\n").unwrap();
        assert_eq!(parsed.component(0), &RatPoly::from_terms([(2, qi(3)), (3, qi(1))]));
        assert!(parsed.component(1).is_zero());
        assert_eq!(parsed.component(2).coeff(0), Q::new(1.into(), 2.into()));
    }

    #[test]
    fn inline_scalar_parsing() {
        assert_eq!(
            parse_scalar_inline("(4,5,9,8)").unwrap(),
            vec![qi(4), qi(5), qi(9), qi(8)]
        );
        assert_eq!(
            parse_scalar_inline("2/3, 0.5").unwrap(),
            vec![Q::new(2.into(), 3.into()), Q::new(1.into(), 2.into())]
        );
        assert!(parse_scalar_inline("()").is_err());
    }

    #[test]
    fn term_arithmetic_cancels_exactly() {
        let mut p = RatPoly::term(1, qi(2));
        p.add_term(1, qi(-2));
        assert!(p.is_zero());
        let q = RatPoly::from_terms([(0, qi(1)), (2, qi(3))]);
        assert_eq!(q.sub(&q), RatPoly::zero());
        assert_eq!(q.shift(2).coeff(4), qi(3));
    }
}
