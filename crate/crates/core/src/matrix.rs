//! Dense complex matrices, block partitions, and the elementary operations
//! the rest of the crate builds on.
//!
//! Matrices are stored row-major in a flat `Vec<Complex64>`. The type also
//! carries rectangular shapes so that off-diagonal blocks of a partition can
//! be represented; the main carriers (inputs, pencils, ratios) are square.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl std::fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self.get(i, j);
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    /// Builds a square `n x n` matrix from row-major data.
    ///
    /// Rejects `n = 0`, a length mismatch, and non-finite entries.
    pub fn new(n: usize, data: Vec<Complex64>) -> Result<Self> {
        Self::with_shape(n, n, data)
    }

    /// Builds a possibly rectangular matrix from row-major data.
    pub fn with_shape(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Domain("matrix dimensions must be positive".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {}x{} matrix, got {}",
                rows * cols,
                rows,
                cols,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Domain("matrix entries must be finite".into()));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a square matrix from nested rows.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a {n}-row matrix",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Self::new(n, data)
    }

    /// Square zero matrix.
    pub fn zeros(n: usize) -> Self {
        Self::zeros_shape(n, n)
    }

    /// Rectangular zero matrix.
    pub fn zeros_shape(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    /// Identity matrix of order `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Square matrix with the given diagonal.
    pub fn diagonal(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, z) in entries.iter().enumerate() {
            m.set(i, i, *z);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Order of a square matrix. Panics if the matrix is rectangular.
    pub fn n(&self) -> usize {
        assert_eq!(self.rows, self.cols, "matrix is not square");
        self.rows
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entry slice.
    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros_shape(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// Entry-wise sum. Panics on shape mismatch.
    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Entry-wise difference. Panics on shape mismatch.
    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Matrix product. Panics if the inner dimensions disagree.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = Self::zeros_shape(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let rrow = rhs.row(k);
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, r) in orow.iter_mut().zip(rrow) {
                    *o += aik * r;
                }
            }
        }
        out
    }

    /// Scalar multiple.
    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// Multiplication by the unit phase `exp(i * angle)`.
    pub fn rotate(&self, angle: f64) -> Self {
        self.scale(Complex64::from_polar(1.0, angle))
    }

    /// Matrix-vector product. Panics if the length disagrees.
    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .map(|(a, b)| a * b)
                    .sum::<Complex64>()
            })
            .collect()
    }

    /// Quadratic form `x* A x` for a unit or general vector `x`.
    pub fn quadratic_form(&self, x: &[Complex64]) -> Complex64 {
        let ax = self.matvec(x);
        x.iter().zip(&ax).map(|(xi, yi)| xi.conj() * yi).sum()
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Frobenius norm.
    pub fn norm_frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Operator 1-norm (maximum absolute column sum).
    pub fn norm_one(&self) -> f64 {
        let mut best: f64 = 0.0;
        for j in 0..self.cols {
            let s: f64 = (0..self.rows).map(|i| self.get(i, j).norm()).sum();
            best = best.max(s);
        }
        best
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Hermitian part `(A + A*) / 2`.
    pub fn hermitian_part(&self) -> Self {
        assert!(self.is_square());
        let half = Complex64::new(0.5, 0.0);
        self.add(&self.adjoint()).scale(half)
    }

    /// Skew contribution `i (A* - A) / 2`; this is the Hermitian matrix `K`
    /// in the Cartesian decomposition `A = H + iK`.
    pub fn skew_part(&self) -> Self {
        assert!(self.is_square());
        let half_i = Complex64::new(0.0, 0.5);
        self.adjoint().sub(self).scale(half_i)
    }

    /// Block-diagonal direct sum `self (+) other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        assert!(self.is_square() && other.is_square());
        let n = self.rows + other.rows;
        let mut out = Self::zeros(n);
        for i in 0..self.rows {
            for j in 0..self.rows {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.rows {
                out.set(self.rows + i, self.rows + j, other.get(i, j));
            }
        }
        out
    }

    /// Principal submatrix on the given (strictly increasing) index set.
    pub fn principal_submatrix(&self, keep: &[usize]) -> Result<Self> {
        assert!(self.is_square());
        if keep.is_empty() {
            return Err(Error::Domain("index set must be non-empty".into()));
        }
        if keep.windows(2).any(|w| w[0] >= w[1]) || *keep.last().unwrap() >= self.rows {
            return Err(Error::Domain(
                "index set must be strictly increasing and in range".into(),
            ));
        }
        let k = keep.len();
        let mut out = Self::zeros(k);
        for (i, &ki) in keep.iter().enumerate() {
            for (j, &kj) in keep.iter().enumerate() {
                out.set(i, j, self.get(ki, kj));
            }
        }
        Ok(out)
    }

    /// FNV-1a hash of the dimensions and raw entry bit patterns, as a hex
    /// string. Used to fingerprint verifier inputs in reports.
    pub fn checksum(&self) -> String {
        const OFFSET: u64 = 0xcbf29ce484222325;
        const PRIME: u64 = 0x100000001b3;
        let mut h = OFFSET;
        let mut eat = |bytes: &[u8]| {
            for &b in bytes {
                h ^= u64::from(b);
                h = h.wrapping_mul(PRIME);
            }
        };
        eat(&(self.rows as u64).to_le_bytes());
        eat(&(self.cols as u64).to_le_bytes());
        for z in &self.data {
            eat(&z.re.to_bits().to_le_bytes());
            eat(&z.im.to_bits().to_le_bytes());
        }
        format!("{h:016x}")
    }
}

/// A conformal 2x2 block partition of an `n x n` matrix: the leading block
/// has order `m` and the trailing block order `n - m`, with `2m <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockPartition {
    m: usize,
    n: usize,
}

impl BlockPartition {
    /// Validates `1 <= m` and `2m <= n`.
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("leading block order must be positive".into()));
        }
        if 2 * m > n {
            return Err(Error::DimensionMismatch(format!(
                "leading block order {m} exceeds half of the matrix order {n}"
            )));
        }
        Ok(Self { m, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// The four blocks of a partitioned square matrix.
#[derive(Debug, Clone)]
pub struct Blocks {
    /// Leading `m x m` diagonal block.
    pub a11: ComplexMatrix,
    /// Upper-right `m x (n-m)` block.
    pub a12: ComplexMatrix,
    /// Lower-left `(n-m) x m` block.
    pub a21: ComplexMatrix,
    /// Trailing `(n-m) x (n-m)` diagonal block.
    pub a22: ComplexMatrix,
}

/// Splits a square matrix along a block partition.
pub fn block_split(a: &ComplexMatrix, p: BlockPartition) -> Result<Blocks> {
    if !a.is_square() || a.rows() != p.n() {
        return Err(Error::DimensionMismatch(format!(
            "partition is for order {}, matrix is {}x{}",
            p.n(),
            a.rows(),
            a.cols()
        )));
    }
    let (m, n) = (p.m(), p.n());
    let slab = |r0: usize, r1: usize, c0: usize, c1: usize| {
        let mut data = Vec::with_capacity((r1 - r0) * (c1 - c0));
        for i in r0..r1 {
            data.extend_from_slice(&a.row(i)[c0..c1]);
        }
        ComplexMatrix::with_shape(r1 - r0, c1 - c0, data).expect("slab shape is consistent")
    };
    Ok(Blocks {
        a11: slab(0, m, 0, m),
        a12: slab(0, m, m, n),
        a21: slab(m, n, 0, m),
        a22: slab(m, n, m, n),
    })
}

/// Reassembles blocks produced by [`block_split`] into the original matrix.
/// The round trip is exact: no arithmetic is performed on the entries.
pub fn block_reassemble(blocks: &Blocks) -> Result<ComplexMatrix> {
    let m = blocks.a11.rows();
    let k = blocks.a22.rows();
    let n = m + k;
    if blocks.a11.cols() != m
        || blocks.a22.cols() != k
        || blocks.a12.rows() != m
        || blocks.a12.cols() != k
        || blocks.a21.rows() != k
        || blocks.a21.cols() != m
    {
        return Err(Error::DimensionMismatch(
            "blocks are not conformal for reassembly".into(),
        ));
    }
    let mut out = ComplexMatrix::zeros(n);
    for i in 0..m {
        for j in 0..m {
            out.set(i, j, blocks.a11.get(i, j));
        }
        for j in 0..k {
            out.set(i, m + j, blocks.a12.get(i, j));
        }
    }
    for i in 0..k {
        for j in 0..m {
            out.set(m + i, j, blocks.a21.get(i, j));
        }
        for j in 0..k {
            out.set(m + i, m + j, blocks.a22.get(i, j));
        }
    }
    Ok(out)
}
