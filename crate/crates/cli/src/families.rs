//! Parameterized configuration families traced by `sweep`.

use std::str::FromStr;

use num_complex::Complex64;
use pathinfo_core::model::{build_config, InterferometerConfig};
use pathinfo_core::sampling::{sample_config, stream_rng, IntRange, PriorMode};
use pathinfo_core::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// N = 2, equal priors, `η₁ = (1, 0)`, `η₂ = (c, √(1 − c²))`, c from 0 to 1.
    OverlapScan,
    /// N = 2, priors `(t, 1 − t)` for t from 0 to 1, fixed real overlap.
    PriorScan,
    /// Fixed N, Haar detectors of each dimension in the d range.
    DimensionScan,
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "overlap-scan" => Ok(Family::OverlapScan),
            "prior-scan" => Ok(Family::PriorScan),
            "dimension-scan" => Ok(Family::DimensionScan),
            other => Err(format!(
                "unknown family '{other}' (expected overlap-scan, prior-scan or dimension-scan)"
            )),
        }
    }
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::OverlapScan => "overlap-scan",
            Family::PriorScan => "prior-scan",
            Family::DimensionScan => "dimension-scan",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    /// Points on the [0, 1] grid for the two scans.
    pub steps: usize,
    /// Overlap used by the prior scan.
    pub overlap: f64,
    pub n: usize,
    pub dims: IntRange,
    pub prior_mode: PriorMode,
    pub seed: u64,
}

/// A family member and the parameter value labelling it.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyPoint {
    pub param: String,
    pub config: InterferometerConfig,
}

fn grid(steps: usize, k: usize) -> f64 {
    if steps <= 1 {
        0.0
    } else {
        k as f64 / (steps - 1) as f64
    }
}

fn two_path(probs: [f64; 2], c: f64) -> Result<InterferometerConfig> {
    let states = vec![
        vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        vec![
            Complex64::new(c, 0.0),
            Complex64::new((1.0 - c * c).max(0.0).sqrt(), 0.0),
        ],
    ];
    build_config(&probs, &states)
}

pub fn family_points(spec: &FamilySpec) -> Result<Vec<FamilyPoint>> {
    match spec.family {
        Family::OverlapScan => (0..spec.steps)
            .map(|k| {
                let c = grid(spec.steps, k);
                Ok(FamilyPoint {
                    param: format!("{c}"),
                    config: two_path([0.5, 0.5], c)?,
                })
            })
            .collect(),
        Family::PriorScan => (0..spec.steps)
            .map(|k| {
                let t = grid(spec.steps, k);
                Ok(FamilyPoint {
                    param: format!("{t}"),
                    config: two_path([t, 1.0 - t], spec.overlap)?,
                })
            })
            .collect(),
        Family::DimensionScan => spec
            .dims
            .iter()
            .map(|d| {
                let mut rng = stream_rng(spec.seed, spec.n as u64, d as u64);
                Ok(FamilyPoint {
                    param: d.to_string(),
                    config: sample_config(spec.n, d, spec.prior_mode, &mut rng)?,
                })
            })
            .collect(),
    }
}
