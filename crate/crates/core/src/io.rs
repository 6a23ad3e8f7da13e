//! JSON reading and writing of potentials.
//!
//! ```json
//! {"dim": 2, "mean": 0.0, "modes": [{"k": [1, 0], "re": 0.5, "im": 0.0}]}
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::{FourierMode, ModeVector, TrigPotential};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialFile {
    pub dim: usize,
    #[serde(default)]
    pub mean: f64,
    #[serde(default)]
    pub modes: Vec<ModeEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeEntry {
    pub k: Vec<i64>,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

impl TryFrom<PotentialFile> for TrigPotential {
    type Error = Error;

    fn try_from(file: PotentialFile) -> Result<Self> {
        let modes = file
            .modes
            .into_iter()
            .map(|m| {
                Ok(FourierMode::new(
                    ModeVector::new(m.k)?,
                    Complex64::new(m.re, m.im),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        TrigPotential::new(file.dim, file.mean, modes)
    }
}

impl From<&TrigPotential> for PotentialFile {
    fn from(v: &TrigPotential) -> Self {
        PotentialFile {
            dim: v.dim(),
            mean: v.mean(),
            modes: v
                .modes()
                .iter()
                .map(|m| ModeEntry {
                    k: m.k.components().to_vec(),
                    re: m.amplitude.re,
                    im: m.amplitude.im,
                })
                .collect(),
        }
    }
}

pub fn potential_from_json(text: &str) -> Result<TrigPotential> {
    let file: PotentialFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.try_into()
}

pub fn potential_to_json(v: &TrigPotential) -> String {
    serde_json::to_string_pretty(&PotentialFile::from(v)).expect("plain data serializes")
}
