//! Interferometer configuration and the reduced states of the particle–detector system.
//!
//! After the particle passes the detectors the joint state is
//! `|Ψ⟩ = Σ_i √p_i |i⟩|η_i⟩`. Tracing out either side gives the path-basis particle
//! state `ρ` and the detector state `ρ_det`; both are built here.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::discrimination::Povm;
use crate::error::{Error, Result};
use crate::linalg::{self, eig_hermitian, ComplexMatrix, DEFAULT_HERMITICITY_TOL};

/// Tolerance on `Σ p_i = 1` and `‖η_i‖ = 1` for already-validated values.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Inputs within this distance of unit sum / unit norm are silently renormalized.
pub const REPAIR_TOL: f64 = 1e-6;

/// Deviations this small are left alone by [`build_config`], which keeps it
/// idempotent on already-normalized input.
const EXACT_TOL: f64 = 1e-12;

/// Tolerance on `Σ Π_i = I`.
pub const POVM_COMPLETENESS_TOL: f64 = 1e-8;

/// Prior probabilities over the N paths.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PathDistribution(Vec<f64>);

impl PathDistribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.len() < 2 {
            return Err(Error::TooFewPaths(probs.len()));
        }
        check_probabilities(&probs)?;
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized {
                what: "probability vector",
                value: sum,
            });
        }
        Ok(Self(probs))
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(alloc::vec![1.0 / n as f64; n])
    }

    pub fn probs(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn check_probabilities(probs: &[f64]) -> Result<()> {
    for (index, &value) in probs.iter().enumerate() {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::NegativeProbability { index, value });
        }
    }
    Ok(())
}

/// N unit vectors in a d-dimensional detector space. Linear dependence is allowed,
/// and `d < N` forces it.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectorSet {
    dim: usize,
    states: Vec<Vec<Complex64>>,
}

impl DetectorSet {
    pub fn new(states: Vec<Vec<Complex64>>) -> Result<Self> {
        if states.len() < 2 {
            return Err(Error::TooFewPaths(states.len()));
        }
        let dim = states[0].len();
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        for s in &states {
            if s.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: s.len(),
                });
            }
            let norm = linalg::vector_norm(s);
            if !norm.is_finite() || (norm - 1.0).abs() > NORMALIZATION_TOL {
                return Err(Error::NotNormalized {
                    what: "detector state",
                    value: norm,
                });
            }
        }
        Ok(Self { dim, states })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[Vec<Complex64>] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &[Complex64] {
        &self.states[i]
    }

    /// `⟨η_i|η_j⟩`.
    pub fn overlap(&self, i: usize, j: usize) -> Complex64 {
        linalg::inner(&self.states[i], &self.states[j])
    }
}

/// Priors plus detector states: everything that defines `|Ψ⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct InterferometerConfig {
    priors: PathDistribution,
    detectors: DetectorSet,
}

impl InterferometerConfig {
    pub fn new(priors: PathDistribution, detectors: DetectorSet) -> Result<Self> {
        if priors.len() != detectors.len() {
            return Err(Error::LengthMismatch {
                probs: priors.len(),
                states: detectors.len(),
            });
        }
        Ok(Self { priors, detectors })
    }

    pub fn priors(&self) -> &PathDistribution {
        &self.priors
    }

    pub fn detectors(&self) -> &DetectorSet {
        &self.detectors
    }

    /// Number of paths N.
    pub fn n_paths(&self) -> usize {
        self.priors.len()
    }

    /// Detector dimension d.
    pub fn detector_dim(&self) -> usize {
        self.detectors.dim()
    }
}

/// Builds a configuration from raw input, repairing small normalization errors.
///
/// Probabilities whose sum lies within [`REPAIR_TOL`] of one are rescaled, as are
/// state vectors whose norm lies within [`REPAIR_TOL`] of one; anything further off
/// is rejected. Input that is already normalized to 1e-12 is passed through unchanged.
pub fn build_config(probs: &[f64], states: &[Vec<Complex64>]) -> Result<InterferometerConfig> {
    if probs.len() != states.len() {
        return Err(Error::LengthMismatch {
            probs: probs.len(),
            states: states.len(),
        });
    }
    if probs.len() < 2 {
        return Err(Error::TooFewPaths(probs.len()));
    }
    check_probabilities(probs)?;
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > REPAIR_TOL {
        return Err(Error::NotNormalized {
            what: "probability vector",
            value: sum,
        });
    }
    let probs = if (sum - 1.0).abs() > EXACT_TOL {
        probs.iter().map(|p| p / sum).collect()
    } else {
        probs.to_vec()
    };

    let mut repaired = Vec::with_capacity(states.len());
    for s in states {
        let norm = linalg::vector_norm(s);
        if !norm.is_finite() || (norm - 1.0).abs() > REPAIR_TOL {
            return Err(Error::NotNormalized {
                what: "detector state",
                value: norm,
            });
        }
        if (norm - 1.0).abs() > EXACT_TOL {
            repaired.push(s.iter().map(|z| z / norm).collect());
        } else {
            repaired.push(s.clone());
        }
    }

    InterferometerConfig::new(PathDistribution::new(probs)?, DetectorSet::new(repaired)?)
}

/// Hermitian, positive-semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    /// Validates Hermiticity, positivity and unit trace, all to 1e-9.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let eig = eig_hermitian(&matrix, DEFAULT_HERMITICITY_TOL)?;
        let min = eig.min_eigenvalue();
        if min < -DEFAULT_HERMITICITY_TOL {
            return Err(Error::NotPsd {
                min_eigenvalue: min,
            });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidTrace { trace });
        }
        Ok(Self(matrix))
    }

    /// Pure state `|v⟩⟨v|` for a unit vector.
    pub fn pure(v: &[Complex64]) -> Result<Self> {
        let norm = linalg::vector_norm(v);
        if (norm - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized {
                what: "state vector",
                value: norm,
            });
        }
        Ok(Self(ComplexMatrix::outer(v)))
    }

    /// Wraps a matrix that is a density matrix by construction.
    pub(crate) fn from_trusted(matrix: ComplexMatrix) -> Self {
        Self(matrix)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.0[(i, i)].re).collect()
    }

    /// Eigenvalues, ascending.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        Ok(eig_hermitian(&self.0, DEFAULT_HERMITICITY_TOL)?.eigenvalues)
    }
}

/// Path-basis particle state `ρ_ij = √(p_i p_j) ⟨η_j|η_i⟩`.
///
/// The diagonal is set to `p_i` directly rather than through the product formula, so
/// it reproduces the priors bit for bit.
pub fn particle_density(config: &InterferometerConfig) -> DensityMatrix {
    let p = config.priors().probs();
    let det = config.detectors();
    let n = p.len();
    let amp: Vec<f64> = p.iter().map(|&x| crate::math::sqrt(x)).collect();
    let mut m = ComplexMatrix::zeros(n);
    for i in 0..n {
        m[(i, i)] = Complex64::new(p[i], 0.0);
        for j in (i + 1)..n {
            let v = det.overlap(j, i) * (amp[i] * amp[j]);
            m[(i, j)] = v;
            m[(j, i)] = v.conj();
        }
    }
    DensityMatrix::from_trusted(m)
}

/// Detector state `ρ_det = Σ_i p_i |η_i⟩⟨η_i|`.
pub fn detector_density(config: &InterferometerConfig) -> DensityMatrix {
    let p = config.priors().probs();
    let det = config.detectors();
    let d = det.dim();
    let mut m = ComplexMatrix::zeros(d);
    for (i, &pi) in p.iter().enumerate() {
        if pi == 0.0 {
            continue;
        }
        let eta = det.state(i);
        for a in 0..d {
            for b in 0..d {
                m[(a, b)] += eta[a] * eta[b].conj() * pi;
            }
        }
    }
    DensityMatrix::from_trusted(m.hermitian_part())
}

/// A single way in which a set of operators fails to be a POVM.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum PovmViolation {
    NoElements,
    WrongDimension {
        element: usize,
        found: usize,
    },
    NonFinite {
        element: usize,
    },
    NotHermitian {
        element: usize,
        deviation: f64,
    },
    NotPsd {
        element: usize,
        min_eigenvalue: f64,
    },
    /// `max |Σ Π_i − I|`.
    Incomplete {
        deviation: f64,
    },
}

/// Outcome of [`validate_povm`]; empty means valid.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PovmValidation {
    pub violations: Vec<PovmViolation>,
}

impl PovmValidation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks each element for Hermiticity and positivity (1e-9) and the sum for
/// completeness (1e-8). Reports every violation found instead of stopping at the first.
pub fn validate_povm(povm: &Povm, dim: usize) -> PovmValidation {
    validate_elements(povm.elements(), dim)
}

pub(crate) fn validate_elements(elements: &[ComplexMatrix], dim: usize) -> PovmValidation {
    let mut violations = Vec::new();
    if elements.is_empty() {
        violations.push(PovmViolation::NoElements);
        return PovmValidation { violations };
    }
    let mut sum = ComplexMatrix::zeros(dim);
    let mut shapes_ok = true;
    for (element, e) in elements.iter().enumerate() {
        if e.dim() != dim {
            violations.push(PovmViolation::WrongDimension {
                element,
                found: e.dim(),
            });
            shapes_ok = false;
            continue;
        }
        if !e.is_finite() {
            violations.push(PovmViolation::NonFinite { element });
            shapes_ok = false;
            continue;
        }
        let deviation = e.hermiticity_error();
        if deviation > DEFAULT_HERMITICITY_TOL {
            violations.push(PovmViolation::NotHermitian { element, deviation });
        } else if let Ok(eig) = eig_hermitian(e, DEFAULT_HERMITICITY_TOL) {
            let min = eig.min_eigenvalue();
            if min < -DEFAULT_HERMITICITY_TOL {
                violations.push(PovmViolation::NotPsd {
                    element,
                    min_eigenvalue: min,
                });
            }
        }
        sum = &sum + e;
    }
    if shapes_ok {
        let deviation = sum.max_abs_diff(&ComplexMatrix::identity(dim));
        if deviation > POVM_COMPLETENESS_TOL {
            violations.push(PovmViolation::Incomplete { deviation });
        }
    }
    PovmValidation { violations }
}
