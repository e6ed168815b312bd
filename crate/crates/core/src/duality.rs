//! The two coherence / path-information duality relations, with signed gaps.
//!
//! - l₁: `(P_s − 1/N)² + X² ≤ (1 − 1/N)²`, with `P_s` the success-probability bound.
//! - entropic: `C_rel + H(M:D) ≤ H({p})` for any measurement on the detectors.
//!
//! Gaps are `rhs − lhs`; a gap below `-1e-9` means the relation failed.

use crate::coherence;
use crate::discrimination::{self, Ensemble, Povm};
use crate::error::Result;
use crate::information;
use crate::math;
use crate::model::{self, InterferometerConfig};

/// l₁ side of a duality report.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct L1Duality {
    pub n_paths: usize,
    /// Normalized l₁ coherence `X`.
    pub x: f64,
    /// Unnormalized `C_l1 = N X`.
    pub c_l1: f64,
    pub ps_bound: f64,
    pub lhs_l1: f64,
    pub rhs_l1: f64,
    pub gap_l1: f64,
}

/// Entropic side of a duality report. All values in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EntropicDuality {
    pub c_rel: f64,
    pub mi: f64,
    pub h_priors: f64,
    pub gap_entropic: f64,
}

/// Both relations for one configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DualityReport {
    pub n_paths: usize,
    pub x: f64,
    pub c_l1: f64,
    pub ps_bound: f64,
    pub lhs_l1: f64,
    pub rhs_l1: f64,
    pub gap_l1: f64,
    pub c_rel: f64,
    pub mi: f64,
    pub h_priors: f64,
    pub gap_entropic: f64,
}

impl DualityReport {
    pub fn new(l1: L1Duality, entropic: EntropicDuality) -> Self {
        Self {
            n_paths: l1.n_paths,
            x: l1.x,
            c_l1: l1.c_l1,
            ps_bound: l1.ps_bound,
            lhs_l1: l1.lhs_l1,
            rhs_l1: l1.rhs_l1,
            gap_l1: l1.gap_l1,
            c_rel: entropic.c_rel,
            mi: entropic.mi,
            h_priors: entropic.h_priors,
            gap_entropic: entropic.gap_entropic,
        }
    }

    /// The smaller of the two gaps.
    pub fn worst_gap(&self) -> f64 {
        self.gap_l1.min(self.gap_entropic)
    }

    pub fn holds(&self, tolerance: f64) -> bool {
        self.gap_l1 >= -tolerance && self.gap_entropic >= -tolerance
    }
}

/// `(P_s − 1/N)² + X² ≤ (1 − 1/N)²` with `P_s` from
/// [`discrimination::success_upper_bound`] and `X` from the particle state.
pub fn l1_duality_report(config: &InterferometerConfig) -> Result<L1Duality> {
    let n = config.n_paths();
    let inv_n = 1.0 / n as f64;
    let rho = model::particle_density(config);
    let c_l1 = coherence::l1_coherence(&rho);
    let x = c_l1 / n as f64;
    let ps_bound = discrimination::success_upper_bound(&Ensemble::from_config(config))?;
    let lhs_l1 = (ps_bound - inv_n) * (ps_bound - inv_n) + x * x;
    let rhs_l1 = (1.0 - inv_n) * (1.0 - inv_n);
    Ok(L1Duality {
        n_paths: n,
        x,
        c_l1,
        ps_bound,
        lhs_l1,
        rhs_l1,
        gap_l1: rhs_l1 - lhs_l1,
    })
}

/// `C_rel + H(M:D) ≤ H({p})` for the given measurement.
pub fn entropic_duality_report(
    config: &InterferometerConfig,
    povm: &Povm,
) -> Result<EntropicDuality> {
    let mi = information::mutual_information(&information::joint_distribution(povm, config)?);
    entropic_from_mi(config, mi)
}

/// Entropic relation with an externally computed mutual information, e.g. an
/// accessible-information lower bound.
pub fn entropic_from_mi(config: &InterferometerConfig, mi: f64) -> Result<EntropicDuality> {
    let rho = model::particle_density(config);
    let c_rel = coherence::rel_ent_coherence(&rho)?;
    let h_priors = coherence::shannon_entropy(config.priors().probs());
    Ok(EntropicDuality {
        c_rel,
        mi,
        h_priors,
        gap_entropic: h_priors - c_rel - mi,
    })
}

/// The chain behind the l₁ relation, evaluated numerically.
///
/// With `a_ij = √(p_i p_j)|⟨η_i|η_j⟩|` and `v_ij = (½‖Λ_ij‖₁, a_ij)`:
///
/// ```text
/// lhs        = (P_s − 1/N)² + X²
/// cross      = (1/N²) Σ_{i≠j} Σ_{k≠l} ⟨v_ij, v_kl⟩
/// schwarz    = (1/N²) (Σ_{i≠j} |v_ij|)²
/// closed     = (1 − 1/N)²
/// ```
///
/// and `lhs ≤ cross ≤ schwarz = closed`, the last step because `|v_ij| = (p_i + p_j)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SchwarzChain {
    pub lhs: f64,
    pub cross: f64,
    pub schwarz: f64,
    pub closed: f64,
    /// `cross − lhs`.
    pub slack_cross: f64,
    /// `schwarz − cross`.
    pub slack_schwarz: f64,
    /// `closed − schwarz`, zero up to rounding.
    pub slack_closed: f64,
}

impl SchwarzChain {
    pub fn min_slack(&self) -> f64 {
        // the closed-form link is an equality, so deviation either way counts
        self.slack_cross
            .min(self.slack_schwarz)
            .min(-self.slack_closed.abs())
    }
}

pub fn schwarz_chain_check(config: &InterferometerConfig) -> Result<SchwarzChain> {
    let n = config.n_paths();
    let nf = n as f64;
    let l1 = l1_duality_report(config)?;
    let norms = discrimination::pairwise_trace_norms(&Ensemble::from_config(config))?;
    let p = config.priors().probs();
    let det = config.detectors();

    let mut lengths = 0.0; // Σ |v_ij|
    let mut pairs = alloc::vec::Vec::with_capacity(n * (n - 1));
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let half_norm = 0.5 * norms[i][j];
            let a = math::sqrt(p[i] * p[j]) * math::abs(det.overlap(i, j));
            pairs.push((half_norm, a));
            lengths += math::hypot(half_norm, a);
        }
    }
    // Σ_{ij} Σ_{kl} ⟨v_ij, v_kl⟩ evaluated literally as a double sum.
    let mut cross = 0.0;
    for &(u1, u2) in &pairs {
        for &(w1, w2) in &pairs {
            cross += u1 * w1 + u2 * w2;
        }
    }
    let cross = cross / (nf * nf);
    let schwarz = lengths * lengths / (nf * nf);
    let closed = l1.rhs_l1;
    Ok(SchwarzChain {
        lhs: l1.lhs_l1,
        cross,
        schwarz,
        closed,
        slack_cross: cross - l1.lhs_l1,
        slack_schwarz: schwarz - cross,
        slack_closed: closed - schwarz,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_config;
    use alloc::vec;
    use alloc::vec::Vec;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn basis_config(p: &[f64]) -> InterferometerConfig {
        let n = p.len();
        let states: Vec<_> = (0..n)
            .map(|i| (0..n).map(|k| c(if k == i { 1.0 } else { 0.0 })).collect())
            .collect();
        build_config(p, &states).unwrap()
    }

    fn overlap_config() -> InterferometerConfig {
        build_config(&[0.5, 0.5], &[vec![c(1.0), c(0.0)], vec![c(0.6), c(0.8)]]).unwrap()
    }

    #[test]
    fn l1_orthonormal_is_tight() {
        let r = l1_duality_report(&basis_config(&[0.1, 0.2, 0.3, 0.4])).unwrap();
        assert_eq!(r.x, 0.0);
        assert_abs_diff_eq!(r.ps_bound, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.gap_l1, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn l1_identical_uniform_is_tight() {
        for n in 2..=6 {
            let cfg =
                build_config(&vec![1.0 / n as f64; n], &vec![vec![c(0.6), c(0.8)]; n]).unwrap();
            let r = l1_duality_report(&cfg).unwrap();
            let nf = n as f64;
            assert_abs_diff_eq!(r.ps_bound, 1.0 / nf, epsilon = 1e-14);
            assert_abs_diff_eq!(r.x, (nf - 1.0) / nf, epsilon = 1e-14);
            assert_abs_diff_eq!(r.gap_l1, 0.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn l1_two_path_overlap() {
        let r = l1_duality_report(&overlap_config()).unwrap();
        assert_abs_diff_eq!(r.x, 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(r.c_l1, 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(r.ps_bound, 0.9, epsilon = 1e-14);
        assert_abs_diff_eq!(r.lhs_l1, 0.25, epsilon = 1e-14);
        assert_eq!(r.rhs_l1, 0.25);
        assert_abs_diff_eq!(r.gap_l1, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn entropic_examples() {
        let p = [0.1, 0.2, 0.3, 0.4];
        let cfg = basis_config(&p);
        let r = entropic_duality_report(&cfg, &Povm::computational_basis(4)).unwrap();
        assert_abs_diff_eq!(r.c_rel, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.mi, coherence::shannon_entropy(&p), epsilon = 1e-14);
        assert_abs_diff_eq!(r.gap_entropic, 0.0, epsilon = 1e-14);

        let cfg = build_config(&[0.3, 0.7], &[vec![c(0.6), c(0.8)], vec![c(0.6), c(0.8)]]).unwrap();
        let r = entropic_duality_report(&cfg, &Povm::computational_basis(2)).unwrap();
        assert_abs_diff_eq!(r.mi, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(
            r.c_rel,
            coherence::shannon_entropy(&[0.3, 0.7]),
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(r.gap_entropic, 0.0, epsilon = 1e-13);

        let cfg = overlap_config();
        let helstrom = discrimination::helstrom_povm_two(&Ensemble::from_config(&cfg)).unwrap();
        let r = entropic_duality_report(&cfg, &helstrom).unwrap();
        assert_abs_diff_eq!(r.c_rel, 0.278_071_905_112_637_7, epsilon = 1e-12);
        assert_abs_diff_eq!(r.mi, 0.531_004_406_410_719_5, epsilon = 1e-12);
        assert_eq!(r.h_priors, 1.0);
        assert_abs_diff_eq!(r.gap_entropic, 0.190_923_688_476_642_8, epsilon = 1e-12);
    }

    #[test]
    fn schwarz_chain_endpoints() {
        let chain = schwarz_chain_check(&basis_config(&[0.1, 0.2, 0.3, 0.4])).unwrap();
        for v in [chain.lhs, chain.cross, chain.schwarz] {
            assert_abs_diff_eq!(v, chain.closed, epsilon = 1e-13);
        }
        let cfg = build_config(&[0.25; 4], &vec![vec![c(0.6), c(0.8)]; 4]).unwrap();
        let chain = schwarz_chain_check(&cfg).unwrap();
        for v in [chain.lhs, chain.cross, chain.schwarz] {
            assert_abs_diff_eq!(v, chain.closed, epsilon = 1e-13);
        }
        assert!(chain.min_slack() > -1e-12);
    }
}
