//! Dense complex Hermitian linear algebra.
//!
//! Everything in this crate lives in dimensions of a few dozen at most, so matrices
//! are stored densely in row-major order and Hermitian eigenproblems are solved with
//! the cyclic Jacobi method, which is simple and accurate to a few ulps on the
//! spectrum and keeps the eigenvector matrix unitary to working precision.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;

/// Default bound on `max |H − H†|` accepted by [`eig_hermitian`].
pub const DEFAULT_HERMITICITY_TOL: f64 = 1e-9;

/// Relative eigenvalue cutoff (times the largest eigenvalue) used for pseudo-inverses.
pub const DEFAULT_RELATIVE_RANK_TOL: f64 = 1e-12;

const MAX_JACOBI_SWEEPS: usize = 100;

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting wrong shapes and NaN/Inf.
    pub fn from_row_major(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != dim * dim {
            return Err(Error::BadShape {
                dim,
                entries: data.len(),
            });
        }
        let m = Self { dim, data };
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(m)
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Rank-one operator `|v⟩⟨v|`.
    pub fn outer(v: &[Complex64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn scale_complex(&self, c: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    /// `(H + H†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    /// `max_ij |H_ij − conj(H_ji)|`.
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max(math::abs(self[(i, j)] - self[(j, i)].conj()));
            }
        }
        worst
    }

    /// Max-norm distance `max_ij |A_ij − B_ij|`. Panics on mismatched dimensions.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| math::abs(a - b))
            .fold(0.0, f64::max)
    }

    /// `A v`.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.dim, v.len(), "dimension mismatch");
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// `⟨u|A|v⟩`.
    pub fn expectation(&self, u: &[Complex64], v: &[Complex64]) -> Complex64 {
        let av = self.apply(v);
        inner(u, &av)
    }

    /// `Tr(A B)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Complex64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for k in 0..n {
                acc += self.data[i * n + k] * other.data[k * n + i];
            }
        }
        acc
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
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
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.scale(-1.0)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

/// `⟨u|v⟩ = Σ conj(u_k) v_k`.
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    assert_eq!(u.len(), v.len(), "dimension mismatch");
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn vector_norm(v: &[Complex64]) -> f64 {
    math::sqrt(v.iter().map(|z| z.norm_sqr()).sum())
}

/// Spectrum and eigenvectors of a Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the eigenvector of `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        let n = self.eigenvectors.dim();
        (0..n).map(|i| self.eigenvectors[(i, k)]).collect()
    }

    /// `Σ_k f(λ_k) |v_k⟩⟨v_k|`.
    pub fn spectral_map(&self, mut f: impl FnMut(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvectors.dim();
        let weights: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let v = &self.eigenvectors;
        ComplexMatrix::from_fn(n, |i, j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, &w) in weights.iter().enumerate() {
                if w != 0.0 {
                    acc += v[(i, k)] * v[(j, k)].conj() * w;
                }
            }
            acc
        })
    }

    /// `V Λ V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.spectral_map(|l| l)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// The input is symmetrized as `(H + H†)/2` after checking that it is Hermitian to
/// within `hermiticity_tol` in the max norm.
pub fn eig_hermitian(h: &ComplexMatrix, hermiticity_tol: f64) -> Result<EigenDecomposition> {
    if h.dim() == 0 {
        return Err(Error::EmptyMatrix);
    }
    if !h.is_finite() {
        return Err(Error::NonFinite);
    }
    let deviation = h.hermiticity_error();
    if deviation > hermiticity_tol {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(jacobi(h.hermitian_part()))
}

fn jacobi(mut a: ComplexMatrix) -> EigenDecomposition {
    let n = a.dim();
    for i in 0..n {
        a[(i, i)].im = 0.0;
    }
    let mut v = ComplexMatrix::identity(n);

    let frobenius_sq: f64 = a.entries().iter().map(|z| z.norm_sqr()).sum();
    let target = (f64::EPSILON * f64::EPSILON) * frobenius_sq;

    for _ in 0..MAX_JACOBI_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        if off <= target || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&k| a[(k, k)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |i, col| v[(i, order[col])]);
    EigenDecomposition {
        eigenvalues,
        eigenvectors,
    }
}

/// One Jacobi step annihilating `a[p][q]`: a phase on column/row `q` makes the pivot
/// real, then a real plane rotation diagonalizes the 2x2 block.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let n = a.dim();
    let apq = a[(p, q)];
    let r = math::abs(apq);
    if r == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Skip pivots already negligible relative to their diagonal entries.
    if r < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = Complex64::new(0.0, 0.0);
        a[(q, p)] = Complex64::new(0.0, 0.0);
        return;
    }

    // A <- D† A D with D = diag(.., e^{-iφ} at q, ..) so that a[p][q] = r.
    let phase = apq / r;
    let phase_conj = phase.conj();
    for k in 0..n {
        a[(k, q)] *= phase_conj;
    }
    for k in 0..n {
        a[(q, k)] *= phase;
    }
    for k in 0..n {
        v[(k, q)] *= phase_conj;
    }

    let theta = (aqq - app) / (2.0 * r);
    let t = if theta >= 0.0 {
        1.0 / (theta + math::hypot(1.0, theta))
    } else {
        -1.0 / (-theta + math::hypot(1.0, theta))
    };
    let c = 1.0 / math::hypot(1.0, t);
    let s = t * c;

    // A <- Pᵀ A P, P = [[c, s], [-s, c]] on (p, q).
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * s;
        a[(k, q)] = akp * s + akq * c;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * s;
        a[(q, k)] = apk * s + aqk * c;
    }
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * s;
        v[(k, q)] = vkp * s + vkq * c;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;
}

/// Trace norm `Σ |λ_k|`.
pub fn trace_norm(h: &ComplexMatrix) -> Result<f64> {
    let eig = eig_hermitian(h, DEFAULT_HERMITICITY_TOL)?;
    Ok(eig.eigenvalues.iter().map(|l| l.abs()).sum())
}

/// `Tr(H₊)`, the sum of the strictly positive eigenvalues.
pub fn positive_part_trace(h: &ComplexMatrix) -> Result<f64> {
    let eig = eig_hermitian(h, DEFAULT_HERMITICITY_TOL)?;
    Ok(eig.eigenvalues.iter().filter(|&&l| l > 0.0).sum())
}

/// Pseudo-inverse square root `Σ_{λ_k > rank_tol} λ_k^{-1/2} |v_k⟩⟨v_k|` of a PSD matrix.
///
/// `rank_tol` is absolute; see [`relative_rank_tol`] for the scale-aware default.
pub fn pinv_sqrt(m: &ComplexMatrix, rank_tol: f64) -> Result<ComplexMatrix> {
    let eig = eig_hermitian(m, DEFAULT_HERMITICITY_TOL)?;
    pinv_sqrt_from(&eig, rank_tol)
}

pub(crate) fn pinv_sqrt_from(eig: &EigenDecomposition, rank_tol: f64) -> Result<ComplexMatrix> {
    let min = eig.min_eigenvalue();
    if min < -rank_tol {
        return Err(Error::NotPsd {
            min_eigenvalue: min,
        });
    }
    Ok(eig.spectral_map(|l| {
        if l > rank_tol {
            1.0 / math::sqrt(l)
        } else {
            0.0
        }
    }))
}

/// `DEFAULT_RELATIVE_RANK_TOL × λ_max`.
pub fn relative_rank_tol(eig: &EigenDecomposition) -> f64 {
    DEFAULT_RELATIVE_RANK_TOL * eig.max_eigenvalue().max(0.0)
}
