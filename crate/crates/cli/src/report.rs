//! Per-configuration evaluation and the JSON/CSV output forms.

use std::fmt::Write as _;

use pathinfo_core::coherence;
use pathinfo_core::discrimination::{self, Ensemble};
use pathinfo_core::duality::{
    entropic_from_mi, l1_duality_report, schwarz_chain_check, DualityReport, EntropicDuality,
    L1Duality, SchwarzChain,
};
use pathinfo_core::information::{self, SearchOrigin};
use pathinfo_core::model::{self, InterferometerConfig};
use pathinfo_core::Result;
use serde::Serialize;

pub const CSV_HEADER: &str = "param,x,ps_bound,lhs_l1,rhs_l1,gap_l1,c_rel,mi,h_priors,gap_entropic";

pub const TOOL: &str = concat!("pathinfo ", env!("CARGO_PKG_VERSION"));

/// Both relations, with `H(M:D)` taken from the best measurement the
/// accessible-information search finds.
pub fn evaluate(
    config: &InterferometerConfig,
    restarts: usize,
    seed: u64,
) -> Result<DualityReport> {
    let l1 = l1_duality_report(config)?;
    let mi = information::accessible_info_lower_bound(config, restarts, seed)?;
    Ok(DualityReport::new(l1, entropic_from_mi(config, mi)?))
}

#[derive(Debug, Clone, Serialize)]
pub struct Spectra {
    pub particle: Vec<f64>,
    pub detector: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub tool: &'static str,
    pub seed: u64,
    pub rng: &'static str,
    pub restarts: usize,
    pub tolerance: f64,
    pub n_paths: usize,
    pub detector_dim: usize,
    pub spectra: Spectra,
    pub x: f64,
    pub c_l1: f64,
    pub success_upper_bound: f64,
    pub pgm_success: f64,
    pub c_rel: f64,
    pub holevo: f64,
    pub accessible_info_lower_bound: f64,
    pub accessible_info_origin: String,
    pub l1_report: L1Duality,
    pub entropic_report: EntropicDuality,
    pub duality: DualityReport,
    pub schwarz_chain: SchwarzChain,
    pub holds: bool,
}

pub fn analyze(
    config: &InterferometerConfig,
    restarts: usize,
    seed: u64,
    tolerance: f64,
) -> Result<AnalyzeReport> {
    let rho = model::particle_density(config);
    let det = model::detector_density(config);
    let ensemble = Ensemble::from_config(config);
    let pgm = discrimination::pretty_good_measurement(&ensemble)?;
    let search = information::optimize_accessible_info(config, restarts, seed)?;
    let l1 = l1_duality_report(config)?;
    let entropic = entropic_from_mi(config, search.bits)?;
    let duality = DualityReport::new(l1, entropic);
    Ok(AnalyzeReport {
        tool: TOOL,
        seed,
        rng: pathinfo_core::sampling::RNG_ALGORITHM,
        restarts,
        tolerance,
        n_paths: config.n_paths(),
        detector_dim: config.detector_dim(),
        spectra: Spectra {
            particle: rho.spectrum()?,
            detector: det.spectrum()?,
        },
        x: l1.x,
        c_l1: l1.c_l1,
        success_upper_bound: l1.ps_bound,
        pgm_success: discrimination::povm_success_probability(&pgm, &ensemble)?,
        c_rel: coherence::rel_ent_coherence(&rho)?,
        holevo: information::holevo_quantity(config)?,
        accessible_info_lower_bound: search.bits,
        accessible_info_origin: match search.origin {
            SearchOrigin::PrettyGood => "pretty-good".into(),
            SearchOrigin::Helstrom => "helstrom".into(),
            SearchOrigin::Restart(k) => format!("restart-{k}"),
        },
        l1_report: l1,
        entropic_report: entropic,
        duality,
        schwarz_chain: schwarz_chain_check(config)?,
        holds: duality.holds(tolerance),
    })
}

/// 17 significant digits, enough to recover every `f64` exactly.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// One CSV row. `param` is written verbatim so integer and real parameters both work.
pub fn csv_row(param: &str, r: &DualityReport) -> String {
    let mut line = String::from(param);
    for v in [
        r.x,
        r.ps_bound,
        r.lhs_l1,
        r.rhs_l1,
        r.gap_l1,
        r.c_rel,
        r.mi,
        r.h_priors,
        r.gap_entropic,
    ] {
        let _ = write!(line, ",{}", fmt_float(v));
    }
    line
}

/// Comment line, header, rows, each terminated by `\n`.
pub fn csv_document(comment: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut out = format!("# {comment}\n{CSV_HEADER}\n");
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct JsonRow<'a> {
    pub param: &'a str,
    #[serde(flatten)]
    pub report: &'a DualityReport,
}
