//! Path information as mutual information between the detector label `D` and the
//! outcome `M` of a measurement on the detector, with the Holevo quantity as its
//! ceiling and a search-based lower bound on the accessible information.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::coherence;
use crate::discrimination::{self, Ensemble, Povm};
use crate::error::{Error, Result};
use crate::linalg::{
    eig_hermitian, ComplexMatrix, DEFAULT_HERMITICITY_TOL, DEFAULT_RELATIVE_RANK_TOL,
};
use crate::math;
use crate::model::{self, InterferometerConfig};
use crate::sampling;

/// Negative joint probabilities down to this are rounding and clamp to zero.
pub const JOINT_CLAMP: f64 = 1e-12;

/// Minimum improvement (bits) of a full coordinate sweep before the step shrinks.
pub const SEARCH_IMPROVEMENT_TOL: f64 = 1e-10;

/// Cap on coordinate sweeps per restart.
pub const SEARCH_MAX_ITERATIONS: usize = 500;

const SEARCH_INITIAL_STEP: f64 = 0.4;
const SEARCH_MIN_STEP: f64 = 1e-5;

/// Stream id used to derive restart RNGs from the caller's seed.
const SEARCH_STREAM: u64 = 0x4143_4345_5353; // "ACCESS"

/// `p(M = i, D = j)`: rows are outcomes, columns are detector labels.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    outcomes: usize,
    labels: usize,
    table: Vec<f64>,
}

impl JointDistribution {
    /// Row-major table. Entries in `[-1e-12, 0)` are clamped to zero.
    pub fn from_table(outcomes: usize, labels: usize, mut table: Vec<f64>) -> Result<Self> {
        if table.len() != outcomes * labels {
            return Err(Error::DimensionMismatch {
                expected: outcomes * labels,
                found: table.len(),
            });
        }
        for x in &mut table {
            if !x.is_finite() || *x < -JOINT_CLAMP {
                return Err(Error::NegativeJointProbability(*x));
            }
            if *x < 0.0 {
                *x = 0.0;
            }
        }
        Ok(Self {
            outcomes,
            labels,
            table,
        })
    }

    pub fn outcomes(&self) -> usize {
        self.outcomes
    }

    pub fn labels(&self) -> usize {
        self.labels
    }

    pub fn get(&self, outcome: usize, label: usize) -> f64 {
        self.table[outcome * self.labels + label]
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    /// `p(M = i)`.
    pub fn outcome_marginal(&self) -> Vec<f64> {
        (0..self.outcomes)
            .map(|i| (0..self.labels).map(|j| self.get(i, j)).sum())
            .collect()
    }

    /// `p(D = j)`.
    pub fn label_marginal(&self) -> Vec<f64> {
        (0..self.labels)
            .map(|j| (0..self.outcomes).map(|i| self.get(i, j)).sum())
            .collect()
    }
}

/// `p(M = i, D = j) = p_j ⟨η_j|Π_i|η_j⟩`.
pub fn joint_distribution(povm: &Povm, config: &InterferometerConfig) -> Result<JointDistribution> {
    if povm.dim() != config.detector_dim() {
        return Err(Error::DimensionMismatch {
            expected: config.detector_dim(),
            found: povm.dim(),
        });
    }
    let p = config.priors().probs();
    let states = config.detectors().states();
    let mut table = Vec::with_capacity(povm.len() * p.len());
    for element in povm.elements() {
        for (eta, &pj) in states.iter().zip(p) {
            table.push(pj * element.expectation(eta, eta).re);
        }
    }
    JointDistribution::from_table(povm.len(), p.len(), table)
}

/// `H(M) + H(D) − H(M, D)` in bits.
pub fn mutual_information(joint: &JointDistribution) -> f64 {
    coherence::shannon_entropy(&joint.outcome_marginal())
        + coherence::shannon_entropy(&joint.label_marginal())
        - coherence::shannon_entropy(joint.table())
}

/// Holevo quantity of the detector ensemble. For pure detector states the average
/// entropy term vanishes and this is `S(ρ_det)`.
pub fn holevo_quantity(config: &InterferometerConfig) -> Result<f64> {
    coherence::von_neumann_entropy(&model::detector_density(config))
}

/// `S(Σ p_i ρ_i) − Σ p_i S(ρ_i)` for a general ensemble.
pub fn holevo_quantity_ensemble(ensemble: &Ensemble) -> Result<f64> {
    let mut chi = coherence::von_neumann_entropy(&ensemble.average_state())?;
    for (p, rho) in ensemble.priors().probs().iter().zip(ensemble.states()) {
        if *p > 0.0 {
            chi -= p * coherence::von_neumann_entropy(rho)?;
        }
    }
    Ok(chi)
}

/// Where the best measurement in an accessible-information search came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchOrigin {
    PrettyGood,
    Helstrom,
    Restart(usize),
}

/// Result of [`optimize_accessible_info`].
#[derive(Debug, Clone, PartialEq)]
pub struct AccessibleInfoSearch {
    /// Best mutual information found, in bits. A lower bound on `Acc(D)`.
    pub bits: f64,
    pub povm: Povm,
    pub origin: SearchOrigin,
}

/// Lower bound on the accessible information `max_M H(M:D)`.
///
/// See [`optimize_accessible_info`] for the candidate set.
pub fn accessible_info_lower_bound(
    config: &InterferometerConfig,
    restarts: usize,
    seed: u64,
) -> Result<f64> {
    Ok(optimize_accessible_info(config, restarts, seed)?.bits)
}

/// Best mutual information over the pretty-good measurement, the Helstrom measurement
/// (N = 2), and `restarts` locally optimized rank-one measurements.
///
/// Each restart starts from a Haar-random N×N unitary `U` whose first `r` columns
/// define N rank-one elements on the `r`-dimensional support of `ρ_det`, then runs
/// coordinate ascent over two-level rotations of `U`. The step halves whenever a full
/// sweep gains less than [`SEARCH_IMPROVEMENT_TOL`]; the search stops once the step
/// is small or after [`SEARCH_MAX_ITERATIONS`] sweeps. Restart `k` draws from its own
/// stream of `seed`, so the result is nondecreasing in `restarts`.
pub fn optimize_accessible_info(
    config: &InterferometerConfig,
    restarts: usize,
    seed: u64,
) -> Result<AccessibleInfoSearch> {
    let ensemble = Ensemble::from_config(config);
    let pgm = discrimination::pretty_good_measurement(&ensemble)?;
    let mut best = AccessibleInfoSearch {
        bits: mutual_information(&joint_distribution(&pgm, config)?),
        povm: pgm,
        origin: SearchOrigin::PrettyGood,
    };
    if config.n_paths() == 2 {
        let helstrom = discrimination::helstrom_povm_two(&ensemble)?;
        let bits = mutual_information(&joint_distribution(&helstrom, config)?);
        if bits > best.bits {
            best = AccessibleInfoSearch {
                bits,
                povm: helstrom,
                origin: SearchOrigin::Helstrom,
            };
        }
    }
    if restarts == 0 {
        return Ok(best);
    }

    let support = Support::of(config)?;
    if support.rank < 2 {
        // Every state is the same ray on the support: nothing to learn.
        return Ok(best);
    }
    for k in 0..restarts {
        let mut rng = sampling::stream_rng(seed, SEARCH_STREAM, k as u64);
        let start = sampling::sample_haar_unitary(config.n_paths(), &mut rng);
        let (bits, unitary) = support.ascend(start);
        if bits > best.bits {
            let povm = support.embed(&unitary)?;
            // Re-evaluate in the full space so the reported value matches the POVM.
            let bits = mutual_information(&joint_distribution(&povm, config)?);
            if bits > best.bits {
                best = AccessibleInfoSearch {
                    bits,
                    povm,
                    origin: SearchOrigin::Restart(k),
                };
            }
        }
    }
    Ok(best)
}

/// Detector states expressed in an orthonormal basis of the support of `ρ_det`.
struct Support {
    rank: usize,
    dim: usize,
    priors: Vec<f64>,
    /// `basis[a]` is the a-th support vector in the full space.
    basis: Vec<Vec<Complex64>>,
    /// `coords[j][a] = ⟨b_a|η_j⟩`.
    coords: Vec<Vec<Complex64>>,
}

impl Support {
    fn of(config: &InterferometerConfig) -> Result<Self> {
        let rho = model::detector_density(config);
        let eig = eig_hermitian(rho.matrix(), DEFAULT_HERMITICITY_TOL)?;
        let cutoff = DEFAULT_RELATIVE_RANK_TOL * eig.max_eigenvalue();
        let basis: Vec<Vec<Complex64>> = (0..eig.eigenvalues.len())
            .rev()
            .filter(|&k| eig.eigenvalues[k] > cutoff)
            .map(|k| eig.eigenvector(k))
            .collect();
        let coords = config
            .detectors()
            .states()
            .iter()
            .map(|eta| basis.iter().map(|b| crate::linalg::inner(b, eta)).collect())
            .collect();
        Ok(Self {
            rank: basis.len(),
            dim: config.detector_dim(),
            priors: config.priors().probs().to_vec(),
            basis,
            coords,
        })
    }

    /// Mutual information of the rank-one POVM defined by rows of `u` restricted to
    /// the first `rank` columns: `p(M = k | D = j) = |Σ_a u[k][a] c_j[a]|²`.
    fn objective(&self, u: &ComplexMatrix, scratch: &mut Vec<f64>) -> f64 {
        let m = u.dim();
        let n = self.priors.len();
        scratch.clear();
        for k in 0..m {
            for (j, c) in self.coords.iter().enumerate() {
                let mut amp = Complex64::new(0.0, 0.0);
                for (a, ca) in c.iter().enumerate() {
                    amp += u[(k, a)] * ca;
                }
                scratch.push(self.priors[j] * amp.norm_sqr());
            }
        }
        let mut h_joint = 0.0;
        let mut h_outcome = 0.0;
        for k in 0..m {
            let row = &scratch[k * n..(k + 1) * n];
            h_outcome += math::entropy_term(row.iter().sum());
            h_joint += row.iter().map(|&x| math::entropy_term(x)).sum::<f64>();
        }
        let mut h_label = 0.0;
        for j in 0..n {
            h_label += math::entropy_term((0..m).map(|k| scratch[k * n + j]).sum());
        }
        h_outcome + h_label - h_joint
    }

    fn ascend(&self, mut u: ComplexMatrix) -> (f64, ComplexMatrix) {
        let m = u.dim();
        let mut scratch = Vec::with_capacity(m * self.priors.len());
        let mut value = self.objective(&u, &mut scratch);
        let mut step = SEARCH_INITIAL_STEP;
        for _ in 0..SEARCH_MAX_ITERATIONS {
            let start = value;
            for k in 0..m {
                for l in (k + 1)..m {
                    for phase in [0.0, core::f64::consts::FRAC_PI_2] {
                        for angle in [step, -step] {
                            let candidate = givens(&u, k, l, angle, phase);
                            let v = self.objective(&candidate, &mut scratch);
                            if v > value {
                                value = v;
                                u = candidate;
                                break;
                            }
                        }
                    }
                }
            }
            if value - start < SEARCH_IMPROVEMENT_TOL {
                if step <= SEARCH_MIN_STEP {
                    break;
                }
                step *= 0.5;
            }
        }
        (value, u)
    }

    /// Full-space POVM: `|W_k⟩⟨W_k|` with `W_k = Σ_a conj(u[k][a]) b_a`, plus an equal
    /// share of the projector onto the orthogonal complement of the support.
    fn embed(&self, u: &ComplexMatrix) -> Result<Povm> {
        let m = u.dim();
        let mut support_projector = ComplexMatrix::zeros(self.dim);
        for b in &self.basis {
            support_projector = &support_projector + &ComplexMatrix::outer(b);
        }
        let share = (&ComplexMatrix::identity(self.dim) - &support_projector).scale(1.0 / m as f64);
        let elements = (0..m)
            .map(|k| {
                let mut w = vec![Complex64::new(0.0, 0.0); self.dim];
                for (a, b) in self.basis.iter().enumerate() {
                    let coeff = u[(k, a)].conj();
                    for (wi, bi) in w.iter_mut().zip(b) {
                        *wi += coeff * bi;
                    }
                }
                &ComplexMatrix::outer(&w) + &share
            })
            .collect();
        Povm::new(elements)
    }
}

/// `G u` where `G` is the two-level unitary
/// `[[cos θ, −e^{iφ} sin θ], [e^{−iφ} sin θ, cos θ]]` on rows `k`, `l`.
fn givens(u: &ComplexMatrix, k: usize, l: usize, angle: f64, phase: f64) -> ComplexMatrix {
    let mut out = u.clone();
    let c = libm::cos(angle);
    let s = libm::sin(angle);
    let e = math::cis(phase);
    for col in 0..u.dim() {
        let uk = u[(k, col)];
        let ul = u[(l, col)];
        out[(k, col)] = uk * c - e * ul * s;
        out[(l, col)] = e.conj() * uk * s + ul * c;
    }
    out
}
