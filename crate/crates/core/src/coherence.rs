//! Coherence measures and the entropies behind them. All entropies are in bits.
//!
//! Coherence is basis dependent; every function here measures it in the basis the
//! matrix is stored in, which for [`crate::model::particle_density`] is the path basis.

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, DEFAULT_HERMITICITY_TOL};
use crate::math;
use crate::model::DensityMatrix;

/// Eigenvalues in `[-EIGEN_CLAMP, 0]` are treated as zero before taking logs.
pub const EIGEN_CLAMP: f64 = 1e-9;

/// l₁ coherence `Σ_{i≠j} |ρ_ij|`.
pub fn l1_coherence(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    let n = m.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += math::abs(m[(i, j)]);
            }
        }
    }
    sum
}

/// `X = C_l1 / N`, which lies in `[0, (N − 1)/N]`.
pub fn normalized_coherence(rho: &DensityMatrix) -> f64 {
    l1_coherence(rho) / rho.dim() as f64
}

/// Shannon entropy `−Σ p log₂ p` with `0 log 0 = 0`.
pub fn shannon_entropy(p: &[f64]) -> f64 {
    p.iter().map(|&x| math::entropy_term(x)).sum()
}

/// Von Neumann entropy `−Σ λ log₂ λ` over the spectrum of `rho`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let eig = eig_hermitian(rho.matrix(), DEFAULT_HERMITICITY_TOL)?;
    entropy_of_spectrum(&eig.eigenvalues)
}

pub(crate) fn entropy_of_spectrum(eigenvalues: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &l in eigenvalues {
        if l < -EIGEN_CLAMP {
            return Err(Error::NotPsd { min_eigenvalue: l });
        }
        s += math::entropy_term(l);
    }
    Ok(s)
}

/// Relative-entropy coherence `S(ρ_diag) − S(ρ)`.
pub fn rel_ent_coherence(rho: &DensityMatrix) -> Result<f64> {
    Ok(shannon_entropy(&rho.diagonal()) - von_neumann_entropy(rho)?)
}
