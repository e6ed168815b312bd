//! Seeded random generation of configurations, ensembles and measurements.
//!
//! Every random object in a sweep is drawn from its own ChaCha8 stream keyed by
//! `(seed, cell, sample)`, so results do not depend on evaluation order.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

use crate::discrimination::{Ensemble, Povm};
use crate::error::{Error, Result};
use crate::linalg::{self, eig_hermitian, ComplexMatrix, DEFAULT_HERMITICITY_TOL};
use crate::model::{DensityMatrix, DetectorSet, InterferometerConfig, PathDistribution};

/// Identifier recorded next to the seed in every output artifact.
pub const RNG_ALGORITHM: &str = "chacha8-keyed-v1";

/// Generator type used throughout.
pub type StreamRng = ChaCha8Rng;

/// Independent stream for `(seed, cell, sample)`.
///
/// The three integers form the ChaCha key directly; distinct triples give unrelated
/// streams.
pub fn stream_rng(seed: u64, cell: u64, sample: u64) -> StreamRng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&cell.to_le_bytes());
    key[16..24].copy_from_slice(&sample.to_le_bytes());
    key[24..].copy_from_slice(b"pathinfo");
    ChaCha8Rng::from_seed(key)
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im)
}

/// Haar-random unit vector: normalized i.i.d. complex Gaussians.
pub fn sample_haar_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
        let norm = linalg::vector_norm(&v);
        if norm > 1e-150 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Haar-random unitary via Gram–Schmidt on Gaussian columns.
pub fn sample_haar_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while columns.len() < dim {
        let mut v: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
        // two passes of modified Gram–Schmidt
        for _ in 0..2 {
            for u in &columns {
                let proj = linalg::inner(u, &v);
                for (x, y) in v.iter_mut().zip(u) {
                    *x -= proj * y;
                }
            }
        }
        let norm = linalg::vector_norm(&v);
        if norm > 1e-8 {
            columns.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    ComplexMatrix::from_fn(dim, |i, j| columns[j][i])
}

/// Dirichlet(α, …, α) sample on the `n`-simplex; α = 1 is uniform on the simplex.
pub fn sample_dirichlet<R: Rng + ?Sized>(
    n: usize,
    alpha: f64,
    rng: &mut R,
) -> Result<PathDistribution> {
    if n < 2 {
        return Err(Error::TooFewPaths(n));
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter(
            "Dirichlet concentration must be positive",
        ));
    }
    let gamma =
        Gamma::new(alpha, 1.0).map_err(|_| Error::InvalidParameter("Dirichlet concentration"))?;
    loop {
        let draws: Vec<f64> = (0..n).map(|_| gamma.sample(rng)).collect();
        let sum: f64 = draws.iter().sum();
        if sum > 0.0 && sum.is_finite() {
            return PathDistribution::new(draws.into_iter().map(|x| x / sum).collect());
        }
    }
}

/// How sweep priors are chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PriorMode {
    Uniform,
    Dirichlet(f64),
}

impl PriorMode {
    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<PathDistribution> {
        match *self {
            PriorMode::Uniform => PathDistribution::uniform(n),
            PriorMode::Dirichlet(alpha) => sample_dirichlet(n, alpha, rng),
        }
    }
}

/// `n` Haar detector states in dimension `d` with priors drawn per `prior_mode`.
pub fn sample_config<R: Rng + ?Sized>(
    n: usize,
    d: usize,
    prior_mode: PriorMode,
    rng: &mut R,
) -> Result<InterferometerConfig> {
    if d == 0 {
        return Err(Error::EmptyMatrix);
    }
    let priors = prior_mode.sample(n, rng)?;
    let states = (0..n).map(|_| sample_haar_state(d, rng)).collect();
    InterferometerConfig::new(priors, DetectorSet::new(states)?)
}

/// Random density matrix `G G† / Tr(G G†)` with `G` a d×rank complex Ginibre matrix.
pub fn sample_density_matrix<R: Rng + ?Sized>(
    dim: usize,
    rank: usize,
    rng: &mut R,
) -> DensityMatrix {
    let rank = rank.clamp(1, dim);
    let g: Vec<Vec<Complex64>> = (0..rank)
        .map(|_| (0..dim).map(|_| complex_gaussian(rng)).collect())
        .collect();
    let mut m = ComplexMatrix::zeros(dim);
    for col in &g {
        m = &m + &ComplexMatrix::outer(col);
    }
    let trace = m.trace().re;
    DensityMatrix::from_trusted(m.scale(1.0 / trace).hermitian_part())
}

/// Ensemble of `n` states in dimension `d`; each state has a uniformly random rank in
/// `1..=d`, so pure and mixed members both occur.
pub fn sample_mixed_ensemble<R: Rng + ?Sized>(
    n: usize,
    d: usize,
    prior_mode: PriorMode,
    rng: &mut R,
) -> Result<Ensemble> {
    if d == 0 {
        return Err(Error::EmptyMatrix);
    }
    let priors = prior_mode.sample(n, rng)?;
    let states = (0..n)
        .map(|_| {
            let rank = rng.random_range(1..=d);
            sample_density_matrix(d, rank, rng)
        })
        .collect();
    Ensemble::new(priors, states)
}

/// Random POVM: draw PSD `A_k = G_k G_k†` of random rank, then conjugate by
/// `(Σ A_k)^{-1/2}`.
pub fn random_povm<R: Rng + ?Sized>(outcomes: usize, dim: usize, rng: &mut R) -> Result<Povm> {
    if outcomes == 0 || dim == 0 {
        return Err(Error::InvalidParameter(
            "POVM needs at least one outcome and dimension",
        ));
    }
    let raw: Vec<ComplexMatrix> = (0..outcomes)
        .map(|_| {
            let rank = rng.random_range(1..=dim);
            let mut a = ComplexMatrix::zeros(dim);
            for _ in 0..rank {
                let g: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
                a = &a + &ComplexMatrix::outer(&g);
            }
            a
        })
        .collect();
    let mut sum = ComplexMatrix::zeros(dim);
    for a in &raw {
        sum = &sum + a;
    }
    let eig = eig_hermitian(&sum.hermitian_part(), DEFAULT_HERMITICITY_TOL)?;
    let tol = linalg::relative_rank_tol(&eig);
    let inv_sqrt = linalg::pinv_sqrt_from(&eig, tol)?;
    // Few low-rank draws may not span the space; the kernel is shared out equally.
    let kernel = eig.spectral_map(|l| if l > tol { 0.0 } else { 1.0 / outcomes as f64 });
    let elements = raw
        .iter()
        .map(|a| &(&(&inv_sqrt * a) * &inv_sqrt).hermitian_part() + &kernel)
        .collect();
    Povm::new(elements)
}

/// Inclusive integer range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub lo: usize,
    pub hi: usize,
}

impl IntRange {
    pub fn new(lo: usize, hi: usize) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidParameter("empty range"));
        }
        Ok(Self { lo, hi })
    }

    pub fn single(v: usize) -> Self {
        Self { lo: v, hi: v }
    }

    pub fn iter(&self) -> core::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

/// Detector dimensions visited for each N.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimRange {
    /// `d ∈ {1, …, 2N}`.
    UpToTwiceN,
    Fixed(IntRange),
}

/// One (N, d) cell of a sweep grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub index: usize,
    pub n: usize,
    pub d: usize,
}

/// Grid, sample count and seed for a randomized sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub n_range: IntRange,
    pub d_range: DimRange,
    pub samples: usize,
    pub seed: u64,
    pub prior_mode: PriorMode,
}

impl Default for SweepSpec {
    /// N ∈ {2..6}, d ∈ {1..2N}, 100 samples per cell, Dirichlet(1) priors, seed 42.
    fn default() -> Self {
        Self {
            n_range: IntRange { lo: 2, hi: 6 },
            d_range: DimRange::UpToTwiceN,
            samples: 100,
            seed: 42,
            prior_mode: PriorMode::Dirichlet(1.0),
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_range.lo < 2 || self.n_range.lo > self.n_range.hi {
            return Err(Error::InvalidParameter(
                "path range must be nonempty with N >= 2",
            ));
        }
        if let DimRange::Fixed(r) = self.d_range {
            if r.lo == 0 || r.lo > r.hi {
                return Err(Error::InvalidParameter(
                    "detector dimension range must be nonempty with d >= 1",
                ));
            }
        }
        if self.samples == 0 {
            return Err(Error::InvalidParameter("samples must be at least 1"));
        }
        if let PriorMode::Dirichlet(alpha) = self.prior_mode {
            if !(alpha > 0.0 && alpha.is_finite()) {
                return Err(Error::InvalidParameter(
                    "Dirichlet concentration must be positive",
                ));
            }
        }
        Ok(())
    }

    /// Cells in deterministic (N, then d) order.
    pub fn cells(&self) -> Vec<Cell> {
        let mut cells = Vec::new();
        for n in self.n_range.iter() {
            let dims = match self.d_range {
                DimRange::UpToTwiceN => IntRange { lo: 1, hi: 2 * n },
                DimRange::Fixed(r) => r,
            };
            for d in dims.iter() {
                cells.push(Cell {
                    index: cells.len(),
                    n,
                    d,
                });
            }
        }
        cells
    }

    pub fn total_configs(&self) -> usize {
        self.cells().len() * self.samples
    }

    /// The configuration for `sample` within `cell`.
    pub fn config(&self, cell: &Cell, sample: usize) -> Result<InterferometerConfig> {
        let mut rng = stream_rng(self.seed, cell.index as u64, sample as u64);
        sample_config(cell.n, cell.d, self.prior_mode, &mut rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_povm;

    #[test]
    fn haar_state_is_unit() {
        let mut rng = stream_rng(1, 0, 0);
        for dim in 1..8 {
            let v = sample_haar_state(dim, &mut rng);
            assert!((linalg::vector_norm(&v) - 1.0).abs() < 1e-12);
        }
        let scalar = sample_haar_state(1, &mut rng);
        assert!((scalar[0].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a = sample_haar_state(3, &mut stream_rng(7, 1, 2));
        let b = sample_haar_state(3, &mut stream_rng(7, 1, 2));
        let c = sample_haar_state(3, &mut stream_rng(7, 2, 1));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn haar_first_component_moment() {
        let mut rng = stream_rng(11, 0, 0);
        let samples = 10_000;
        let mean: f64 = (0..samples)
            .map(|_| sample_haar_state(2, &mut rng)[0].norm_sqr())
            .sum::<f64>()
            / samples as f64;
        assert!((mean - 0.5).abs() < 0.02, "mean {mean}");
    }

    #[test]
    fn dirichlet_symmetry_and_concentration() {
        let mut rng = stream_rng(5, 0, 0);
        let samples = 10_000;
        let mean: f64 = (0..samples)
            .map(|_| sample_dirichlet(2, 1.0, &mut rng).unwrap().probs()[0])
            .sum::<f64>()
            / samples as f64;
        assert!((mean - 0.5).abs() < 0.02, "mean {mean}");

        let spread = |alpha: f64, rng: &mut StreamRng| {
            (0..200)
                .map(|_| {
                    let p = sample_dirichlet(4, alpha, rng).unwrap();
                    p.probs()
                        .iter()
                        .map(|x| (x - 0.25).abs())
                        .fold(0.0, f64::max)
                })
                .fold(0.0, f64::max)
        };
        assert!(spread(1000.0, &mut rng) < spread(1.0, &mut rng));
        assert!(spread(1e5, &mut rng) < 0.02);

        assert!(sample_dirichlet(1, 1.0, &mut rng).is_err());
        assert!(sample_dirichlet(3, 0.0, &mut rng).is_err());
        assert_eq!(
            sample_dirichlet(3, 0.5, &mut stream_rng(9, 9, 9)),
            sample_dirichlet(3, 0.5, &mut stream_rng(9, 9, 9))
        );
    }

    #[test]
    fn configs_validate_and_repeat() {
        let mut rng = stream_rng(3, 0, 0);
        let cfg = sample_config(2, 2, PriorMode::Uniform, &mut rng).unwrap();
        assert_eq!((cfg.n_paths(), cfg.detector_dim()), (2, 2));
        let cfg = sample_config(4, 2, PriorMode::Uniform, &mut rng).unwrap();
        assert_eq!((cfg.n_paths(), cfg.detector_dim()), (4, 2));
        // zero repairs needed
        let rebuilt =
            crate::model::build_config(cfg.priors().probs(), cfg.detectors().states()).unwrap();
        for (a, b) in rebuilt
            .detectors()
            .states()
            .iter()
            .zip(cfg.detectors().states())
        {
            assert!(a.iter().zip(b).all(|(x, y)| (x - y).norm() < 1e-12));
        }

        let spec = SweepSpec::default();
        let cell = spec.cells()[7];
        assert_eq!(
            spec.config(&cell, 3).unwrap(),
            spec.config(&cell, 3).unwrap()
        );
    }

    #[test]
    fn default_grid_shape() {
        let spec = SweepSpec::default();
        let cells = spec.cells();
        assert_eq!(cells.len(), 4 + 6 + 8 + 10 + 12);
        assert_eq!(
            cells[0],
            Cell {
                index: 0,
                n: 2,
                d: 1
            }
        );
        assert_eq!(
            *cells.last().unwrap(),
            Cell {
                index: 39,
                n: 6,
                d: 12
            }
        );
        assert_eq!(spec.total_configs(), 4000);
        assert!(spec.validate().is_ok());
        let bad = SweepSpec {
            samples: 0,
            ..SweepSpec::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn random_objects_validate() {
        let mut rng = stream_rng(21, 0, 0);
        for d in 1..5 {
            for n in 2..5 {
                let povm = random_povm(n, d, &mut rng).unwrap();
                assert!(validate_povm(&povm, d).is_valid());
                let ens = sample_mixed_ensemble(n, d, PriorMode::Dirichlet(1.0), &mut rng).unwrap();
                for s in ens.states() {
                    DensityMatrix::new(s.matrix().clone()).unwrap();
                }
            }
        }
        let u = sample_haar_unitary(4, &mut rng);
        assert!((&u.adjoint() * &u).max_abs_diff(&ComplexMatrix::identity(4)) < 1e-12);
    }
}
