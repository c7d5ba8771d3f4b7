//! Scenario file schema and loaders. Scenarios are JSON documents vetted
//! strictly: unknown keys are rejected before any computation runs.

use std::path::Path;

use serde::Deserialize;

use ergoflow::ensemble::{BasisLabel, DiagonalState, EnsembleShape, QuditHamiltonian};
use ergoflow::error::{Error, Result};
use ergoflow::scenarios::MicrocanonicalScenario;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub hamiltonian: HamiltonianSpec,
    pub ensemble: EnsembleSpec,
    #[serde(default)]
    pub state: Option<StateSpec>,
    #[serde(default)]
    pub protocol: Option<ProtocolSpec>,
    /// Two 0-based digit strings, e.g. `["1111", "0222"]`.
    #[serde(default)]
    pub pair: Option<[String; 2]>,
    #[serde(default)]
    pub sampling: SamplingSpec,
    #[serde(default)]
    pub output: OutputSpec,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianSpec {
    pub levels: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleSpec {
    pub n: usize,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum StateSpec {
    Product { spectrum: Vec<f64> },
    Microcanonical { center: f64, width: f64 },
    Explicit { populations: Vec<f64> },
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ProtocolSpec {
    Direct,
    Indirect,
    Hybrid { l: usize },
    Ladder { k: usize },
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplingSpec {
    /// Time samples per transposition step.
    #[serde(default)]
    pub samples: Option<usize>,
    /// Grid resolution per simplex axis.
    #[serde(default)]
    pub grid: Option<usize>,
    /// Typicality tolerance.
    #[serde(default)]
    pub delta: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub format: Option<String>,
    #[serde(default)]
    pub path: Option<String>,
}

pub fn load(path: &Path) -> Result<ScenarioFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::InvalidArgument(format!("invalid scenario {}: {e}", path.display())))
}

impl ScenarioFile {
    pub fn hamiltonian(&self) -> Result<QuditHamiltonian> {
        QuditHamiltonian::new(self.hamiltonian.levels.clone())
    }

    pub fn shape(&self) -> Result<EnsembleShape> {
        EnsembleShape::new(self.ensemble.n, self.hamiltonian.levels.len())
    }

    pub fn state(&self) -> Result<DiagonalState> {
        let spec = self.state.as_ref().ok_or_else(|| {
            Error::InvalidArgument("this command needs a `state` section".into())
        })?;
        match spec {
            StateSpec::Product { spectrum } => {
                if spectrum.len() != self.hamiltonian.levels.len() {
                    return Err(Error::LengthMismatch {
                        left: spectrum.len(),
                        right: self.hamiltonian.levels.len(),
                    });
                }
                ergoflow::ensemble::product_state(spectrum, self.ensemble.n)
            }
            StateSpec::Microcanonical { center, width } => {
                self.microcanonical(*center, *width)?.state()
            }
            StateSpec::Explicit { populations } => {
                DiagonalState::new(self.shape()?, populations.clone())
            }
        }
    }

    pub fn microcanonical(&self, center: f64, width: f64) -> Result<MicrocanonicalScenario> {
        MicrocanonicalScenario::new(self.hamiltonian()?, self.ensemble.n, center, width)
    }

    /// The product spectrum, for commands that require one.
    pub fn product_spectrum(&self) -> Result<Vec<f64>> {
        match &self.state {
            Some(StateSpec::Product { spectrum }) => Ok(spectrum.clone()),
            _ => Err(Error::InvalidArgument(
                "this command needs a product state (`state.product.spectrum`)".into(),
            )),
        }
    }

    pub fn pair(&self) -> Result<(BasisLabel, BasisLabel)> {
        let [a, b] = self.pair.as_ref().ok_or_else(|| {
            Error::InvalidArgument("this command needs a `pair` of digit strings".into())
        })?;
        let levels = self.hamiltonian.levels.len();
        let alpha = BasisLabel::parse(a, levels)?;
        let beta = BasisLabel::parse(b, levels)?;
        if alpha.len() != self.ensemble.n || beta.len() != self.ensemble.n {
            return Err(Error::LengthMismatch {
                left: alpha.len().max(beta.len()),
                right: self.ensemble.n,
            });
        }
        Ok((alpha, beta))
    }
}
