//! Minimum-error discrimination of the detector states.
//!
//! The central quantity is the success-probability bound
//!
//! ```text
//! P_s ≤ 1/N + (1/2N) Σ_{i,j} ‖p_i ρ_i − p_j ρ_j‖₁
//! ```
//!
//! which holds for every N-outcome POVM and reduces to the Helstrom value for N = 2.
//! Two concrete measurements (the pretty-good measurement and the exact two-state
//! Helstrom projector) provide achievable success probabilities underneath it.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{self, eig_hermitian, ComplexMatrix, DEFAULT_HERMITICITY_TOL};
use crate::math;
use crate::model::{self, DensityMatrix, InterferometerConfig, PathDistribution};

/// Eigenvalues of `Λ₁₂` at or below this are treated as zero by [`helstrom_povm_two`]
/// and assigned to the second outcome.
pub const HELSTROM_ZERO_TOL: f64 = 1e-14;

/// Tolerance below which a negative radicand in [`pure_pair_trace_norm`] is rounding.
pub const RADICAND_TOL: f64 = 1e-12;

/// Positive operators summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    elements: Vec<ComplexMatrix>,
}

impl Povm {
    /// Validates with [`model::validate_povm`].
    pub fn new(elements: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = elements.first().map(ComplexMatrix::dim).unwrap_or(0);
        let report = model::validate_elements(&elements, dim);
        if !report.is_valid() {
            return Err(Error::InvalidPovm(report.violations));
        }
        Ok(Self { elements })
    }

    /// Wraps elements without any checks, e.g. to hand them to the validator.
    pub fn from_elements_unchecked(elements: Vec<ComplexMatrix>) -> Self {
        Self { elements }
    }

    /// The uninformative measurement `{I/n, …, I/n}`.
    pub fn trivial(outcomes: usize, dim: usize) -> Self {
        let e = ComplexMatrix::identity(dim).scale(1.0 / outcomes as f64);
        Self {
            elements: vec![e; outcomes],
        }
    }

    /// Projectors onto the computational basis of `dim`.
    pub fn computational_basis(dim: usize) -> Self {
        let elements = (0..dim)
            .map(|k| {
                let mut m = ComplexMatrix::zeros(dim);
                m[(k, k)] = num_complex::Complex64::new(1.0, 0.0);
                m
            })
            .collect();
        Self { elements }
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    /// Number of outcomes.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Dimension of the measured space.
    pub fn dim(&self) -> usize {
        self.elements.first().map(ComplexMatrix::dim).unwrap_or(0)
    }

    /// Coarse-grains outcomes `a` and `b` into one; the merged outcome takes the
    /// position of the smaller index.
    pub fn merge_outcomes(&self, a: usize, b: usize) -> Result<Self> {
        let len = self.len();
        for index in [a, b] {
            if index >= len {
                return Err(Error::IndexOutOfRange { index, len });
            }
        }
        if a == b {
            return Err(Error::InvalidParameter(
                "cannot merge an outcome with itself",
            ));
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let mut elements = self.elements.clone();
        let merged = &elements[lo] + &elements[hi];
        elements[lo] = merged;
        elements.remove(hi);
        Ok(Self { elements })
    }
}

/// Priors together with (possibly mixed) states.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    priors: PathDistribution,
    states: Vec<DensityMatrix>,
}

impl Ensemble {
    pub fn new(priors: PathDistribution, states: Vec<DensityMatrix>) -> Result<Self> {
        if priors.len() != states.len() {
            return Err(Error::LengthMismatch {
                probs: priors.len(),
                states: states.len(),
            });
        }
        let dim = states[0].dim();
        for s in &states {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: s.dim(),
                });
            }
        }
        Ok(Self { priors, states })
    }

    /// The pure detector-state ensemble `{p_i, |η_i⟩⟨η_i|}` of a configuration.
    pub fn from_config(config: &InterferometerConfig) -> Self {
        let states = config
            .detectors()
            .states()
            .iter()
            .map(|s| DensityMatrix::from_trusted(ComplexMatrix::outer(s)))
            .collect();
        Self {
            priors: config.priors().clone(),
            states,
        }
    }

    pub fn priors(&self) -> &PathDistribution {
        &self.priors
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.states[0].dim()
    }

    /// `Σ p_i ρ_i`.
    pub fn average_state(&self) -> DensityMatrix {
        let mut m = ComplexMatrix::zeros(self.dim());
        for (p, s) in self.priors.probs().iter().zip(&self.states) {
            m = &m + &s.matrix().scale(*p);
        }
        DensityMatrix::from_trusted(m.hermitian_part())
    }
}

/// Helstrom matrix `Λ_ij = p_i ρ_i − p_j ρ_j`.
pub fn helstrom_matrix(ensemble: &Ensemble, i: usize, j: usize) -> Result<ComplexMatrix> {
    let len = ensemble.len();
    for index in [i, j] {
        if index >= len {
            return Err(Error::IndexOutOfRange { index, len });
        }
    }
    let p = ensemble.priors().probs();
    let states = ensemble.states();
    Ok(&states[i].matrix().scale(p[i]) - &states[j].matrix().scale(p[j]))
}

/// Closed-form trace norm of the Helstrom matrix of two pure detector states,
/// `2 √( ((p_i + p_j)/2)² − p_i p_j |⟨η_i|η_j⟩|² )`.
pub fn pure_pair_trace_norm(config: &InterferometerConfig, i: usize, j: usize) -> Result<f64> {
    let len = config.n_paths();
    for index in [i, j] {
        if index >= len {
            return Err(Error::IndexOutOfRange { index, len });
        }
    }
    let p = config.priors().probs();
    let overlap_sq = config.detectors().overlap(i, j).norm_sqr();
    let half_sum = 0.5 * (p[i] + p[j]);
    let radicand = half_sum * half_sum - p[i] * p[j] * overlap_sq;
    if radicand < -RADICAND_TOL {
        return Err(Error::Domain(radicand));
    }
    Ok(2.0 * math::sqrt(radicand.max(0.0)))
}

/// `‖Λ_ij‖₁` for every ordered pair, as an N×N table with a zero diagonal.
pub fn pairwise_trace_norms(ensemble: &Ensemble) -> Result<Vec<Vec<f64>>> {
    let n = ensemble.len();
    let mut table = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            // ‖Λ_ji‖₁ = ‖−Λ_ij‖₁
            let norm = linalg::trace_norm(&helstrom_matrix(ensemble, i, j)?)?;
            table[i][j] = norm;
            table[j][i] = norm;
        }
    }
    Ok(table)
}

/// Upper bound `1/N + (1/2N) Σ_{i,j} ‖Λ_ij‖₁` on the minimum-error success
/// probability, summed over all ordered pairs (the `i = j` terms vanish).
pub fn success_upper_bound(ensemble: &Ensemble) -> Result<f64> {
    let norms = pairwise_trace_norms(ensemble)?;
    Ok(bound_from_norms(&norms))
}

pub(crate) fn bound_from_norms(norms: &[Vec<f64>]) -> f64 {
    let n = norms.len() as f64;
    let total: f64 = norms.iter().flatten().sum();
    1.0 / n + total / (2.0 * n)
}

/// Average success probability `Σ p_i Tr(Π_i ρ_i)`, outcome `i` naming state `i`.
pub fn povm_success_probability(povm: &Povm, ensemble: &Ensemble) -> Result<f64> {
    if povm.len() != ensemble.len() {
        return Err(Error::DimensionMismatch {
            expected: ensemble.len(),
            found: povm.len(),
        });
    }
    if povm.dim() != ensemble.dim() {
        return Err(Error::DimensionMismatch {
            expected: ensemble.dim(),
            found: povm.dim(),
        });
    }
    let p = ensemble.priors().probs();
    Ok(povm
        .elements()
        .iter()
        .zip(ensemble.states())
        .zip(p)
        .map(|((pi_op, rho), &prior)| prior * pi_op.trace_product(rho.matrix()).re)
        .sum())
}

/// Smallest slack of the per-term inequality
/// `p_i Tr(Π_i ρ_i) − p_j Tr(Π_i ρ_j) ≤ Tr(Λ_ij,+) = (p_i − p_j + ‖Λ_ij‖₁)/2`
/// over all ordered pairs `i ≠ j`.
pub fn positive_part_chain_slack(povm: &Povm, ensemble: &Ensemble) -> Result<f64> {
    if povm.len() != ensemble.len() {
        return Err(Error::DimensionMismatch {
            expected: ensemble.len(),
            found: povm.len(),
        });
    }
    let norms = pairwise_trace_norms(ensemble)?;
    let p = ensemble.priors().probs();
    let n = ensemble.len();
    let mut worst = f64::INFINITY;
    for i in 0..n {
        let element = &povm.elements()[i];
        let hit = p[i] * element.trace_product(ensemble.states()[i].matrix()).re;
        for j in 0..n {
            if i == j {
                continue;
            }
            let miss = p[j] * element.trace_product(ensemble.states()[j].matrix()).re;
            let majorant = 0.5 * (p[i] - p[j] + norms[i][j]);
            worst = worst.min(majorant - (hit - miss));
        }
    }
    Ok(worst)
}

/// Pretty-good (square-root) measurement `Π_i = ρ_det^{-1/2} p_i ρ_i ρ_det^{-1/2}`.
///
/// When `ρ_det` is rank deficient the leftover `I − Σ Π_i` (the kernel projector) is
/// split equally among the N elements.
pub fn pretty_good_measurement(ensemble: &Ensemble) -> Result<Povm> {
    let n = ensemble.len();
    let d = ensemble.dim();
    let avg = ensemble.average_state();
    let eig = eig_hermitian(avg.matrix(), DEFAULT_HERMITICITY_TOL)?;
    let inv_sqrt = linalg::pinv_sqrt_from(&eig, linalg::relative_rank_tol(&eig))?;

    let p = ensemble.priors().probs();
    let mut elements: Vec<ComplexMatrix> = ensemble
        .states()
        .iter()
        .zip(p)
        .map(|(rho, &prior)| {
            (&(&inv_sqrt * &rho.matrix().scale(prior)) * &inv_sqrt).hermitian_part()
        })
        .collect();

    // On the support, Σ Π_i equals the support projector only up to the conditioning
    // of ρ_det; one more square-root normalization makes it exact.
    let mut sum = ComplexMatrix::zeros(d);
    for e in &elements {
        sum = &sum + e;
    }
    let sum_eig = eig_hermitian(&sum.hermitian_part(), DEFAULT_HERMITICITY_TOL)?;
    let renorm = sum_eig.spectral_map(|l| if l > 0.5 { 1.0 / math::sqrt(l) } else { 0.0 });
    let support = sum_eig.spectral_map(|l| if l > 0.5 { 1.0 } else { 0.0 });
    let share = (&ComplexMatrix::identity(d) - &support).scale(1.0 / n as f64);
    for e in &mut elements {
        *e = &(&(&renorm * e) * &renorm).hermitian_part() + &share;
    }
    Povm::new(elements)
}

/// Optimal two-state measurement: `Π₁` projects onto the positive eigenspace of
/// `Λ₁₂`, `Π₂ = I − Π₁`. Zero eigenvalues (to [`HELSTROM_ZERO_TOL`]) go to `Π₂`.
pub fn helstrom_povm_two(ensemble: &Ensemble) -> Result<Povm> {
    if ensemble.len() != 2 {
        return Err(Error::WrongArity(ensemble.len()));
    }
    let lambda = helstrom_matrix(ensemble, 0, 1)?;
    let eig = eig_hermitian(&lambda, DEFAULT_HERMITICITY_TOL)?;
    let first = eig.spectral_map(|l| if l > HELSTROM_ZERO_TOL { 1.0 } else { 0.0 });
    let second = (&ComplexMatrix::identity(ensemble.dim()) - &first).hermitian_part();
    Povm::new(vec![first, second])
}
