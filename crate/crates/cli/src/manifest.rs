use std::path::Path;

use serde::{Deserialize, Serialize};

use spectral_frechet::io::KernelDocument;

use crate::Failure;

pub const MANIFEST_FILE: &str = "manifest.toml";
pub const COVARIATES_FILE: &str = "covariates.csv";

/// Everything needed to regenerate a sample directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub ensemble: String,
    pub n: usize,
    pub count: usize,
    /// Decimal, since TOML integers stop at 2^63.
    pub seed: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m0: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub within_slope: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_slope: Option<f64>,
    pub files: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel: Option<KernelDocument>,
}

impl Manifest {
    pub fn write(&self, dir: &Path) -> Result<(), Failure> {
        let text = toml::to_string(self).map_err(|e| Failure::data(e.to_string()))?;
        std::fs::write(dir.join(MANIFEST_FILE), text)?;
        Ok(())
    }
}
