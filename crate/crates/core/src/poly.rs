//! GF(2) polynomials, polynomial parity-check matrices, and their scalar
//! circulant expansions.
//!
//! A quasi-cyclic code is described by a J x L matrix of binary polynomials
//! modulo X^r - 1; the same matrix read without the modulus describes a
//! convolutional code in the delay operator D. This module holds both views
//! plus the maps between the polynomial and scalar (0/1 matrix) forms.
//!
//! Matrices serialize to a small text format (".pcm"): a header line `J L r`
//! with `r = 0` meaning convolutional, then one line per row with entries
//! written as `-` for zero or `+`-joined exponents (`0`, `2`, `0+1`, ...).

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A polynomial over GF(2), stored as its set of exponents.
///
/// The empty set is the zero polynomial. Addition is symmetric difference;
/// there are no coefficients to track.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinPoly {
    exps: BTreeSet<usize>,
}

impl BinPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(exp: usize) -> Self {
        let mut exps = BTreeSet::new();
        exps.insert(exp);
        Self { exps }
    }

    /// Builds from exponents with GF(2) semantics: an exponent listed an even
    /// number of times cancels out.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut p = Self::zero();
        for e in iter {
            p.toggle(e);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.exps.is_empty()
    }

    /// Highest exponent, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.exps.iter().next_back().copied()
    }

    /// Number of nonzero terms.
    pub fn weight(&self) -> usize {
        self.exps.len()
    }

    pub fn contains(&self, exp: usize) -> bool {
        self.exps.contains(&exp)
    }

    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().copied()
    }

    /// Adds X^exp over GF(2) (flips the term).
    pub fn toggle(&mut self, exp: usize) {
        if !self.exps.remove(&exp) {
            self.exps.insert(exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for e in other.exponents() {
            out.toggle(e);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for a in self.exponents() {
            for b in other.exponents() {
                out.toggle(a + b);
            }
        }
        out
    }

    /// Multiplies by X^k.
    pub fn shift(&self, k: usize) -> Self {
        Self {
            exps: self.exps.iter().map(|e| e + k).collect(),
        }
    }

    /// Reduction modulo X^r - 1 over GF(2): exponents fold to `e mod r` and
    /// colliding terms cancel in pairs.
    pub fn reduce_mod(&self, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::ZeroModulus);
        }
        Ok(Self::from_exponents(self.exponents().map(|e| e % r)))
    }

    /// `Some(exp)` when the polynomial is a single monomial X^exp.
    pub fn as_monomial(&self) -> Option<usize> {
        if self.exps.len() == 1 {
            self.exps.iter().next().copied()
        } else {
            None
        }
    }

    /// Parses a ".pcm" entry token: `-` or `+`-joined exponents.
    pub fn parse_token(tok: &str) -> Result<Self> {
        if tok == "-" {
            return Ok(Self::zero());
        }
        let mut exps = BTreeSet::new();
        for part in tok.split('+') {
            let e: usize = part
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent `{part}` in entry `{tok}`")))?;
            if !exps.insert(e) {
                return Err(Error::Parse(format!("duplicate exponent {e} in entry `{tok}`")));
            }
        }
        Ok(Self { exps })
    }

    /// Serializes to the ".pcm" entry token.
    pub fn token(&self) -> String {
        if self.is_zero() {
            "-".to_string()
        } else {
            self.exps
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join("+")
        }
    }
}

impl fmt::Display for BinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

/// A J x L matrix of GF(2) polynomials, with or without a circulant modulus.
///
/// With `modulus = Some(r)` the entries live in GF(2)[X]/(X^r - 1) and the
/// matrix defines a quasi-cyclic block code of length rL. Without a modulus
/// the entries are polynomials in D and the matrix defines a convolutional
/// code of rate (L-J)/L.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinPolyMatrix {
    rows: usize,
    cols: usize,
    modulus: Option<usize>,
    entries: Vec<BinPoly>,
}

impl BinPolyMatrix {
    /// Convolutional-semantics matrix (no modulus).
    pub fn conv(rows: usize, cols: usize, entries: Vec<BinPoly>) -> Result<Self> {
        Self::build(rows, cols, None, entries)
    }

    /// Quasi-cyclic matrix over GF(2)[X]/(X^r - 1). Every exponent must
    /// already be below `r`.
    pub fn qc(rows: usize, cols: usize, r: usize, entries: Vec<BinPoly>) -> Result<Self> {
        if r == 0 {
            return Err(Error::ZeroModulus);
        }
        Self::build(rows, cols, Some(r), entries)
    }

    fn build(rows: usize, cols: usize, modulus: Option<usize>, entries: Vec<BinPoly>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension("matrix needs at least one row and column".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "expected {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(r) = modulus {
            for p in &entries {
                if let Some(d) = p.degree() {
                    if d >= r {
                        return Err(Error::ExponentRange { exponent: d, modulus: r });
                    }
                }
            }
        }
        Ok(Self { rows, cols, modulus, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> Option<usize> {
        self.modulus
    }

    pub fn entry(&self, row: usize, col: usize) -> &BinPoly {
        &self.entries[row * self.cols + col]
    }

    pub fn entries(&self) -> &[BinPoly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(BinPoly::is_zero)
    }

    /// Largest exponent present anywhere; 0 for the all-zero matrix. For a
    /// convolutional matrix this is the syndrome former memory m_s.
    pub fn max_exponent(&self) -> usize {
        self.entries
            .iter()
            .filter_map(BinPoly::degree)
            .max()
            .unwrap_or(0)
    }

    /// Same entries with the modulus dropped (X read as D).
    pub fn without_modulus(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            modulus: None,
            entries: self.entries.clone(),
        }
    }

    /// Entry-wise reduction modulo X^r - 1 over GF(2); the result carries
    /// modulus `r`.
    pub fn reduce_mod(&self, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::ZeroModulus);
        }
        let entries = self
            .entries
            .iter()
            .map(|p| p.reduce_mod(r))
            .collect::<Result<Vec<_>>>()?;
        Self::build(self.rows, self.cols, Some(r), entries)
    }

    /// Scalar expansion: each entry becomes its r x r binary circulant, where
    /// the monomial X^k maps to the k-times cyclically left-shifted identity.
    /// Block row j spans scalar rows jr..jr+r-1.
    pub fn expand_circulant(&self) -> Result<ScalarBinMatrix> {
        let r = self.require_modulus()?;
        let mut support = vec![Vec::new(); self.rows * r];
        for j in 0..self.rows {
            for l in 0..self.cols {
                for e in self.entry(j, l).exponents() {
                    // circulant of X^e has a 1 at (i, (i - e) mod r)
                    for i in 0..r {
                        support[j * r + i].push(l * r + (i + r - e) % r);
                    }
                }
            }
        }
        for row in &mut support {
            row.sort_unstable();
        }
        ScalarBinMatrix::new(self.rows * r, self.cols * r, support)
    }

    /// Coefficient matrices H_0..H_m with H_i[j,l] = 1 iff exponent i appears
    /// in entry (j,l); m is the largest exponent present (trailing zero
    /// matrices are trimmed by construction).
    pub fn coefficient_decompose(&self) -> Vec<ScalarBinMatrix> {
        let m = self.max_exponent();
        (0..=m)
            .map(|i| {
                let support = (0..self.rows)
                    .map(|j| {
                        (0..self.cols)
                            .filter(|&l| self.entry(j, l).contains(i))
                            .collect()
                    })
                    .collect();
                ScalarBinMatrix::new(self.rows, self.cols, support)
                    .expect("coefficient matrix dimensions are valid")
            })
            .collect()
    }

    /// The interleaved scalar form: an r x r grid of J x L blocks with block
    /// (a,b) = H_{(a-b) mod r}. Row- and column-permutation equivalent to
    /// `expand_circulant`, and the finite analogue of the semi-infinite
    /// convolutional check matrix.
    pub fn permuted_block_form(&self) -> Result<ScalarBinMatrix> {
        let r = self.require_modulus()?;
        let coeff = self.coefficient_decompose();
        let mut support = vec![Vec::new(); self.rows * r];
        for a in 0..r {
            for b in 0..r {
                let idx = (a + r - b) % r;
                if let Some(h) = coeff.get(idx) {
                    for j in 0..self.rows {
                        for &l in h.row_support(j) {
                            support[a * self.rows + j].push(b * self.cols + l);
                        }
                    }
                }
            }
        }
        for row in &mut support {
            row.sort_unstable();
        }
        ScalarBinMatrix::new(self.rows * r, self.cols * r, support)
    }

    fn require_modulus(&self) -> Result<usize> {
        self.modulus
            .ok_or_else(|| Error::Unsupported("operation requires a circulant modulus".into()))
    }

    /// Parses the ".pcm" text format.
    pub fn parse_pcm(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty .pcm input".into()))?;
        let head: Vec<&str> = header.split_whitespace().collect();
        if head.len() != 3 {
            return Err(Error::Parse(format!("header must be `J L r`, got `{header}`")));
        }
        let parse_dim = |s: &str| -> Result<usize> {
            s.parse()
                .map_err(|_| Error::Parse(format!("bad header field `{s}`")))
        };
        let rows = parse_dim(head[0])?;
        let cols = parse_dim(head[1])?;
        let r = parse_dim(head[2])?;
        let mut entries = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("expected {rows} matrix rows")))?;
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != cols {
                return Err(Error::Parse(format!(
                    "row `{line}` has {} entries, expected {cols}",
                    toks.len()
                )));
            }
            for tok in toks {
                entries.push(BinPoly::parse_token(tok)?);
            }
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing content after matrix rows".into()));
        }
        let modulus = if r == 0 { None } else { Some(r) };
        Self::build(rows, cols, modulus, entries)
    }

    /// Serializes to the ".pcm" text format (with trailing newline).
    pub fn to_pcm(&self) -> String {
        let mut out = format!("{} {} {}\n", self.rows, self.cols, self.modulus.unwrap_or(0));
        for j in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|l| self.entry(j, l).token()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// A plain 0/1 matrix stored by row support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarBinMatrix {
    rows: usize,
    cols: usize,
    support: Vec<Vec<usize>>,
}

impl ScalarBinMatrix {
    /// `support[i]` lists the columns with a 1 in row i, strictly increasing.
    pub fn new(rows: usize, cols: usize, support: Vec<Vec<usize>>) -> Result<Self> {
        if support.len() != rows {
            return Err(Error::Dimension(format!(
                "expected {rows} support rows, got {}",
                support.len()
            )));
        }
        for (i, row) in support.iter().enumerate() {
            if !row.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::Dimension(format!("row {i} support not strictly increasing")));
            }
            if let Some(&last) = row.last() {
                if last >= cols {
                    return Err(Error::Dimension(format!("row {i} column {last} out of range")));
                }
            }
        }
        Ok(Self { rows, cols, support })
    }

    pub fn from_dense(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let support = rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, _)| i).collect())
            .collect();
        Self::new(rows.len(), cols, support)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_support(&self, row: usize) -> &[usize] {
        &self.support[row]
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.support[row].binary_search(&col).is_ok()
    }

    pub fn row_weight(&self, row: usize) -> usize {
        self.support[row].len()
    }

    pub fn dense(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|i| {
                let mut row = vec![0u8; self.cols];
                for &c in &self.support[i] {
                    row[c] = 1;
                }
                row
            })
            .collect()
    }

    /// Multiset of row weights, sorted; used by permutation-equivalence tests.
    pub fn row_weight_multiset(&self) -> Vec<usize> {
        let mut w: Vec<usize> = self.support.iter().map(Vec::len).collect();
        w.sort_unstable();
        w
    }

    /// Multiset of column weights, sorted.
    pub fn col_weight_multiset(&self) -> Vec<usize> {
        let mut w = vec![0usize; self.cols];
        for row in &self.support {
            for &c in row {
                w[c] += 1;
            }
        }
        w.sort_unstable();
        w
    }

    /// The matrix with rows `row_perm[i] -> i` and columns mapped by
    /// `col_perm`; used to verify permutation equivalence of the two scalar
    /// forms.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Result<Self> {
        if row_perm.len() != self.rows || col_perm.len() != self.cols {
            return Err(Error::Dimension("permutation length mismatch".into()));
        }
        let support = row_perm
            .iter()
            .map(|&src| {
                let mut row: Vec<usize> = self.support[src].iter().map(|&c| col_perm[c]).collect();
                row.sort_unstable();
                row
            })
            .collect();
        Self::new(self.rows, self.cols, support)
    }
}
