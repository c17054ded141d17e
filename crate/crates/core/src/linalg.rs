//! Dense complex linear algebra.
//!
//! Everything here works on small matrices (the toolkit never goes past a few
//! hundred rows), so the storage is a flat row-major `Vec` and every product is
//! the naive triple loop.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Off-diagonal magnitude (relative to the largest entry) at which the Jacobi
/// sweep stops.
pub const JACOBI_TOLERANCE: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Allowed deviation from Hermiticity accepted by [`hermitian_eig`].
pub const HERMITIAN_TOLERANCE: f64 = 1e-9;
/// Gram-matrix eigenvalues below this are dropped by the pseudo-inverse.
pub const PINV_CUTOFF: f64 = 1e-10;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidMatrix(format!(
                "dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::InvalidMatrix(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(k) = data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidMatrix(format!(
                "non-finite entry at ({}, {})",
                k / cols,
                k % cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from real entries, row-major.
    pub fn from_real(rows: usize, cols: usize, values: &[f64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            values.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn column_vector(amplitudes: &[Complex64]) -> Result<Self> {
        Self::new(amplitudes.len(), 1, amplitudes.to_vec())
    }

    pub fn diagonal(values: &[f64]) -> Self {
        Self::from_fn(values.len(), values.len(), |i, j| {
            if i == j {
                Complex64::new(values[i], 0.0)
            } else {
                ZERO
            }
        })
    }

    /// Outer product |a⟩⟨b|.
    pub fn outer(a: &[Complex64], b: &[Complex64]) -> Self {
        Self::from_fn(a.len(), b.len(), |i, j| a[i] * b[j].conj())
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns<V: AsRef<[Complex64]>>(columns: &[V]) -> Result<Self> {
        let cols = columns.len();
        let rows = columns.first().map(|c| c.as_ref().len()).unwrap_or(0);
        if columns.iter().any(|c| c.as_ref().len() != rows) {
            return Err(Error::DimensionMismatch(
                "columns have different lengths".into(),
            ));
        }
        let mut data = vec![ZERO; rows * cols];
        for (j, c) in columns.iter().enumerate() {
            for (i, &z) in c.as_ref().iter().enumerate() {
                data[i * cols + j] = z;
            }
        }
        Self::new(rows, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `‖self − other‖_max`; panics on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `‖m − m†‖_max`, or infinity for non-square input.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// `‖U†U − I‖_max`.
    pub fn unitarity_deviation(&self) -> f64 {
        let gram = self.adjoint().matmul(self);
        gram.max_abs_diff(&Self::identity(self.cols))
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.cols, rhs.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(
            self.cols,
            v.len(),
            "vector length does not match matrix columns"
        );
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `self · m · self†`.
    pub fn conjugate(&self, m: &Self) -> Self {
        self.matmul(m).matmul(&self.adjoint())
    }

    pub fn kron(&self, rhs: &Self) -> Self {
        kronecker(self, rhs)
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson::from(self)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self.get(i, j);
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

/// Kronecker product; block `(i, j)` of the result is `a[i, j] · b`.
pub fn kronecker(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = ComplexMatrix::zeros(rows, cols);
    for ai in 0..a.rows {
        for aj in 0..a.cols {
            let x = a.get(ai, aj);
            for bi in 0..b.rows {
                for bj in 0..b.cols {
                    out.data[(ai * b.rows + bi) * cols + aj * b.cols + bj] = x * b.get(bi, bj);
                }
            }
        }
    }
    out
}

/// Kronecker product of plain vectors.
pub fn kron_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .flat_map(|&x| b.iter().map(move |&y| x * y))
        .collect()
}

/// ⟨a|b⟩, conjugate-linear in the first argument.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    assert_eq!(a.len(), b.len(), "vector lengths differ");
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Spectrum of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    /// Sorted descending.
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the eigenvector for `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// `V diag(λ) V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.eigenvectors;
        v.matmul(&ComplexMatrix::diagonal(&self.eigenvalues))
            .matmul(&v.adjoint())
    }

    /// Applies `f` to the spectrum: `V diag(f(λ)) V†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let mapped: Vec<f64> = self.eigenvalues.iter().map(|&x| f(x)).collect();
        let v = &self.eigenvectors;
        v.matmul(&ComplexMatrix::diagonal(&mapped))
            .matmul(&v.adjoint())
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Each rotation first removes the phase of the pivot `a[p][q]`, then applies
/// the real symmetric Jacobi rotation that zeroes it. Sweeps continue until
/// every off-diagonal entry is below [`JACOBI_TOLERANCE`] (scaled by the largest
/// entry when that exceeds one).
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    if !m.is_square() {
        return Err(Error::NotHermitian {
            deviation: f64::INFINITY,
        });
    }
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOLERANCE {
        return Err(Error::NotHermitian { deviation });
    }
    let n = m.rows;
    // Work on the exactly Hermitian part.
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| (m.get(i, j) + m.get(j, i).conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);
    let threshold = JACOBI_TOLERANCE * a.max_abs().max(1.0);

    let mut converged = false;
    for _ in 0..=JACOBI_MAX_SWEEPS {
        let off = off_diagonal_max(&a);
        if off < threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(j, j).re.total_cmp(&a.get(i, i).re));
    let eigenvalues = order.iter().map(|&k| a.get(k, k).re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| v.get(i, order[j]));
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_max(a: &ComplexMatrix) -> f64 {
    let n = a.rows;
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                worst = worst.max(a.get(i, j).norm());
            }
        }
    }
    worst
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    // Phase that makes the pivot real and positive.
    let phase = apq / r;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau.abs() > 1e150 {
        0.5 / tau
    } else {
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // W = diag(1, conj(phase)) · [[c, s], [-s, c]] acting on columns p, q.
    let pc = phase.conj();
    let w00 = Complex64::new(c, 0.0);
    let w01 = Complex64::new(s, 0.0);
    let w10 = pc * -s;
    let w11 = pc * c;

    let n = a.rows;
    let cols = a.cols;
    for k in 0..n {
        let akp = a.data[k * cols + p];
        let akq = a.data[k * cols + q];
        a.data[k * cols + p] = akp * w00 + akq * w10;
        a.data[k * cols + q] = akp * w01 + akq * w11;
    }
    for k in 0..n {
        let apk = a.data[p * cols + k];
        let aqk = a.data[q * cols + k];
        a.data[p * cols + k] = w00.conj() * apk + w10.conj() * aqk;
        a.data[q * cols + k] = w01.conj() * apk + w11.conj() * aqk;
    }
    a.data[p * cols + q] = ZERO;
    a.data[q * cols + p] = ZERO;
    a.data[p * cols + p] = Complex64::new(a.data[p * cols + p].re, 0.0);
    a.data[q * cols + q] = Complex64::new(a.data[q * cols + q].re, 0.0);

    for k in 0..v.rows {
        let vkp = v.data[k * n + p];
        let vkq = v.data[k * n + q];
        v.data[k * n + p] = vkp * w00 + vkq * w10;
        v.data[k * n + q] = vkp * w01 + vkq * w11;
    }
}

/// Splits a flat index into per-subsystem digits (most significant first).
fn digits(mut index: usize, dims: &[usize], out: &mut [usize]) {
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
}

/// Reduced operator on the subsystems listed in `keep`, tracing out the rest.
///
/// `dims` is the tensor factorization of `m`; kept factors appear in their
/// original order regardless of the order of `keep`. Returns the reduced matrix
/// together with the kept dimensions.
pub fn partial_trace(
    m: &ComplexMatrix,
    dims: &[usize],
    keep: &[usize],
) -> Result<(ComplexMatrix, Vec<usize>)> {
    let total: usize = dims.iter().product();
    if !m.is_square() || m.rows != total {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix does not match subsystem dims {dims:?}",
            m.rows, m.cols
        )));
    }
    if keep.is_empty() {
        return Err(Error::BadPartition("no subsystems kept".into()));
    }
    let mut kept = vec![false; dims.len()];
    for &k in keep {
        if k >= dims.len() {
            return Err(Error::BadSubsystemIndex {
                index: k,
                count: dims.len(),
            });
        }
        kept[k] = true;
    }
    let keep_dims: Vec<usize> = dims
        .iter()
        .zip(&kept)
        .filter(|(_, &k)| k)
        .map(|(&d, _)| d)
        .collect();
    let trace_dims: Vec<usize> = dims
        .iter()
        .zip(&kept)
        .filter(|(_, &k)| !k)
        .map(|(&d, _)| d)
        .collect();
    let keep_total: usize = keep_dims.iter().product();
    let trace_total: usize = trace_dims.iter().product();

    let mut keep_digits = vec![0; keep_dims.len()];
    let mut trace_digits = vec![0; trace_dims.len()];
    let mut full = vec![0; dims.len()];
    // Flat index of the full system for every (kept, traced) pair.
    let mut index = vec![0usize; keep_total * trace_total];
    for a in 0..keep_total {
        digits(a, &keep_dims, &mut keep_digits);
        for t in 0..trace_total {
            digits(t, &trace_dims, &mut trace_digits);
            let (mut ki, mut ti) = (0, 0);
            for (s, slot) in full.iter_mut().enumerate() {
                if kept[s] {
                    *slot = keep_digits[ki];
                    ki += 1;
                } else {
                    *slot = trace_digits[ti];
                    ti += 1;
                }
            }
            index[a * trace_total + t] = full.iter().zip(dims).fold(0, |acc, (&x, &d)| acc * d + x);
        }
    }

    let reduced = ComplexMatrix::from_fn(keep_total, keep_total, |i, j| {
        (0..trace_total)
            .map(|t| m.get(index[i * trace_total + t], index[j * trace_total + t]))
            .sum()
    });
    Ok((reduced, keep_dims))
}

/// Least-squares operator `L` minimizing `Σ ‖L xₖ − yₖ‖²`.
///
/// Solved as `L = Y G⁺ X†` with `G = X†X`; the pseudo-inverse drops Gram
/// eigenvalues below [`PINV_CUTOFF`], so `L` vanishes on the orthogonal
/// complement of the span of the inputs.
pub fn fit_linear_operator<X, Y>(inputs: &[X], outputs: &[Y]) -> Result<ComplexMatrix>
where
    X: AsRef<[Complex64]>,
    Y: AsRef<[Complex64]>,
{
    if inputs.is_empty() || inputs.len() != outputs.len() {
        return Err(Error::DimensionMismatch(format!(
            "need equal, nonzero numbers of inputs and outputs (got {} and {})",
            inputs.len(),
            outputs.len()
        )));
    }
    let x = ComplexMatrix::from_columns(inputs)?;
    let y = ComplexMatrix::from_columns(outputs)?;
    let gram = x.adjoint().matmul(&x);
    let eig = hermitian_eig(&gram)?;
    let gram_pinv = eig.map_spectrum(|l| if l > PINV_CUTOFF { 1.0 / l } else { 0.0 });
    Ok(y.matmul(&gram_pinv).matmul(&x.adjoint()))
}

/// JSON interchange form: `{"rows": r, "cols": c, "entries": [[re, im], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

impl From<&ComplexMatrix> for MatrixJson {
    fn from(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows,
            cols: m.cols,
            entries: m.data.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<MatrixJson> for ComplexMatrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        ComplexMatrix::new(
            j.rows,
            j.cols,
            j.entries
                .into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect(),
        )
    }
}

impl Serialize for ComplexMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MatrixJson::deserialize(d)?;
        ComplexMatrix::try_from(j).map_err(serde::de::Error::custom)
    }
}
