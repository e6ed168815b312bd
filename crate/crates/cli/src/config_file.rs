//! The JSON configuration format.
//!
//! ```json
//! {"probs": [0.5, 0.5],
//!  "detectors": {"dim": 2, "states": [[[1, 0], [0, 0]], [[0.6, 0], [0.8, 0]]]}}
//! ```
//!
//! Each state is a list of `[re, im]` pairs of length `dim`.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use pathinfo_core::model::{build_config, InterferometerConfig};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub probs: Vec<f64>,
    pub detectors: DetectorsFile,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetectorsFile {
    pub dim: usize,
    pub states: Vec<Vec<[f64; 2]>>,
}

impl ConfigFile {
    pub fn from_config(config: &InterferometerConfig) -> Self {
        Self {
            probs: config.priors().probs().to_vec(),
            detectors: DetectorsFile {
                dim: config.detector_dim(),
                states: config
                    .detectors()
                    .states()
                    .iter()
                    .map(|s| s.iter().map(|z| [z.re, z.im]).collect())
                    .collect(),
            },
        }
    }

    pub fn to_config(&self) -> Result<InterferometerConfig, CliError> {
        for (i, s) in self.detectors.states.iter().enumerate() {
            if s.len() != self.detectors.dim {
                return Err(CliError::Invalid(format!(
                    "detectors.states[{i}] has {} components, detectors.dim is {}",
                    s.len(),
                    self.detectors.dim
                )));
            }
        }
        let states: Vec<Vec<Complex64>> = self
            .detectors
            .states
            .iter()
            .map(|s| s.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
            .collect();
        build_config(&self.probs, &states).map_err(|e| CliError::Invalid(e.to_string()))
    }
}

pub fn parse_config(text: &str) -> Result<InterferometerConfig, CliError> {
    let file: ConfigFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        message: strip_position(e.to_string()),
    })?;
    file.to_config()
}

fn strip_position(mut message: String) -> String {
    if let Some(at) = message.rfind(" at line ") {
        message.truncate(at);
    }
    message
}

pub fn read_config(path: &Path) -> Result<InterferometerConfig, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config(&text)
}

pub fn to_json(config: &InterferometerConfig) -> String {
    serde_json::to_string(&ConfigFile::from_config(config)).expect("config serializes")
}
