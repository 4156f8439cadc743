//! Dense square matrices, norms and symmetric permutations.
//!
//! Two matrix types are provided. [`RealMatrix`] holds any finite real
//! entries (perturbations such as `A' - A` live here). [`NonNegMatrix`]
//! additionally guarantees that every entry is `>= 0`; it is the input type
//! for every spectral routine in the crate.

mod format;

pub use format::{parse_matrix, parse_real_matrix, render_matrix, render_real_matrix};

use std::fmt;

use crate::error::{Error, Result};

/// Dense `n x n` matrix of finite reals, stored row-major.
#[derive(Clone, PartialEq)]
pub struct RealMatrix {
    n: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != n * n {
            return Err(Error::WrongEntryCount { n, got: data.len() });
        }
        if let Some(idx) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: idx / n,
                col: idx % n,
            });
        }
        Ok(Self { n, data })
    }

    /// Builds a matrix from a slice of equally long rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::new(n, data)
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be at least 1");
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        Self { n, data }
    }

    pub fn matmul(&self, other: &RealMatrix) -> Result<RealMatrix> {
        matmul(self, other)
    }

    /// Entrywise `self - other`.
    pub fn sub(&self, other: &RealMatrix) -> Result<RealMatrix> {
        check_dims(self.n, other.n)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        RealMatrix::new(self.n, data)
    }

    /// Entrywise `alpha * self`.
    pub fn scale(&self, alpha: f64) -> Result<RealMatrix> {
        RealMatrix::new(self.n, self.data.iter().map(|v| alpha * v).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0.0)
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn one_norm(&self) -> f64 {
        one_norm_mat(self)
    }

    pub fn frobenius_norm(&self) -> f64 {
        frobenius_norm(self)
    }
}

impl fmt::Debug for RealMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[f64]> = (0..self.n).map(|i| self.row(i)).collect();
        f.debug_tuple("RealMatrix").field(&rows).finish()
    }
}

/// Dense square matrix whose entries are all finite and `>= 0`.
#[derive(Clone, PartialEq)]
pub struct NonNegMatrix(RealMatrix);

impl NonNegMatrix {
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        Self::try_from_real(RealMatrix::new(n, data)?)
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        Self::try_from_real(RealMatrix::from_rows(rows)?)
    }

    /// Rejects (never clamps) negative entries.
    pub fn try_from_real(m: RealMatrix) -> Result<Self> {
        if let Some(idx) = m.data.iter().position(|&v| v < 0.0) {
            return Err(Error::NegativeEntry {
                row: idx / m.n,
                col: idx % m.n,
                value: m.data[idx],
            });
        }
        // -0.0 passes the check above; normalise it so renders are stable.
        let mut m = m;
        for v in &mut m.data {
            if *v == 0.0 {
                *v = 0.0;
            }
        }
        Ok(Self(m))
    }

    /// Builds `m` with negative entries replaced by zero.
    pub fn clamped(m: &RealMatrix) -> Self {
        let data = m
            .data
            .iter()
            .map(|&v| if v > 0.0 { v } else { 0.0 })
            .collect();
        Self(RealMatrix { n: m.n, data })
    }

    pub fn zeros(n: usize) -> Self {
        Self(RealMatrix::zeros(n))
    }

    pub fn identity(n: usize) -> Self {
        Self(RealMatrix::identity(n))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.0.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0.get(i, j)
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        self.0.row(i)
    }

    pub fn as_real(&self) -> &RealMatrix {
        &self.0
    }

    pub fn into_real(self) -> RealMatrix {
        self.0
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    /// Product of two nonnegative matrices; fails if an entry overflows.
    pub fn matmul(&self, other: &NonNegMatrix) -> Result<NonNegMatrix> {
        let p = matmul(&self.0, &other.0).map_err(|e| match e {
            Error::NonFinite { .. } => Error::Overflow,
            e => e,
        })?;
        Ok(Self(p))
    }

    /// `self^p` by repeated multiplication (`p = 0` gives the identity).
    pub fn pow(&self, p: u32) -> Result<NonNegMatrix> {
        let mut acc = Self::identity(self.n());
        for _ in 0..p {
            acc = acc.matmul(self)?;
        }
        Ok(acc)
    }

    /// `alpha * self` for `alpha >= 0`.
    pub fn scale(&self, alpha: f64) -> Result<NonNegMatrix> {
        if alpha.is_nan() || alpha < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "scale factor must be >= 0, got {alpha}"
            )));
        }
        Self::try_from_real(self.0.scale(alpha)?)
    }

    /// Principal submatrix on `indices` (in the given order).
    pub fn principal_submatrix(&self, indices: &[usize]) -> NonNegMatrix {
        let k = indices.len();
        let mut data = Vec::with_capacity(k * k);
        for &i in indices {
            for &j in indices {
                data.push(self.get(i, j));
            }
        }
        Self(RealMatrix { n: k, data })
    }

    pub fn permute(&self, perm: &Permutation) -> Result<NonNegMatrix> {
        apply_symmetric_permutation(self, perm)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn one_norm(&self) -> f64 {
        one_norm_mat(&self.0)
    }
}

impl fmt::Debug for NonNegMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[f64]> = (0..self.n()).map(|i| self.row(i)).collect();
        f.debug_tuple("NonNegMatrix").field(&rows).finish()
    }
}

impl AsRef<RealMatrix> for NonNegMatrix {
    fn as_ref(&self) -> &RealMatrix {
        &self.0
    }
}

impl TryFrom<RealMatrix> for NonNegMatrix {
    type Error = Error;

    fn try_from(m: RealMatrix) -> Result<Self> {
        Self::try_from_real(m)
    }
}

impl From<NonNegMatrix> for RealMatrix {
    fn from(m: NonNegMatrix) -> Self {
        m.0
    }
}

/// A bijection on `{0, .., n-1}`. `map[i]` is the original index placed at
/// position `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &m in &map {
            if m >= n {
                return Err(Error::InvalidPermutation(format!(
                    "index {m} out of range for length {n}"
                )));
            }
            if seen[m] {
                return Err(Error::InvalidPermutation(format!("index {m} repeated")));
            }
            seen[m] = true;
        }
        Ok(Self { map })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            map: (0..n).collect(),
        }
    }

    /// Transposition of `a` and `b`.
    pub fn swap(n: usize, a: usize, b: usize) -> Result<Self> {
        let mut map: Vec<usize> = (0..n).collect();
        if a >= n || b >= n {
            return Err(Error::InvalidPermutation(format!(
                "swap ({a}, {b}) out of range for length {n}"
            )));
        }
        map.swap(a, b);
        Ok(Self { map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (i, &m) in self.map.iter().enumerate() {
            inv[m] = i;
        }
        Self { map: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &m)| i == m)
    }
}

fn check_dims(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::DimensionMismatch { left, right });
    }
    Ok(())
}

/// Sum of absolute values.
pub fn one_norm_vec(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).sum()
}

/// `sqrt(sum e_ij^2)`. Upper-bounds the spectral norm.
pub fn frobenius_norm(e: &RealMatrix) -> f64 {
    // Scaled accumulation avoids overflow for large entries.
    let scale = e.data.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return 0.0;
    }
    let sum: f64 = e.data.iter().map(|v| (v / scale) * (v / scale)).sum();
    scale * sum.sqrt()
}

/// Maximum absolute column sum (the operator norm induced by `||.||_1`).
pub fn one_norm_mat(x: &RealMatrix) -> f64 {
    let n = x.n;
    (0..n)
        .map(|j| (0..n).map(|i| x.data[i * n + j].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn matmul(x: &RealMatrix, y: &RealMatrix) -> Result<RealMatrix> {
    check_dims(x.n, y.n)?;
    let n = x.n;
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        let out = &mut data[i * n..(i + 1) * n];
        for k in 0..n {
            let a = x.data[i * n + k];
            if a == 0.0 {
                continue;
            }
            let yrow = &y.data[k * n..(k + 1) * n];
            for (o, b) in out.iter_mut().zip(yrow) {
                *o += a * b;
            }
        }
    }
    RealMatrix::new(n, data)
}

/// Entrywise `base + s * direction` (sign-unrestricted).
pub fn offset(base: &RealMatrix, direction: &RealMatrix, s: f64) -> Result<RealMatrix> {
    check_dims(base.n, direction.n)?;
    let data = base
        .data
        .iter()
        .zip(&direction.data)
        .map(|(a, d)| a + s * d)
        .collect();
    RealMatrix::new(base.n, data)
}

/// First entry (row-major) of `m` that is negative.
pub fn first_negative(m: &RealMatrix) -> Option<(usize, usize)> {
    m.data
        .iter()
        .position(|&v| v < 0.0)
        .map(|k| (k / m.n, k % m.n))
}

/// `P^T A P`: `result[i][j] = A[P(i)][P(j)]`.
pub fn apply_symmetric_permutation(a: &NonNegMatrix, perm: &Permutation) -> Result<NonNegMatrix> {
    check_dims(a.n(), perm.len())?;
    Ok(a.principal_submatrix(perm.as_slice()))
}
