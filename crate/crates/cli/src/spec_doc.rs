//! JSON spec files.
//!
//! ```json
//! { "dimension": 2, "exponent": "inf",
//!   "vectors": [[3, -1], [-1, 5]], "weights": [1, 1], "normalize": true }
//! ```
//!
//! `exponent` is a positive number or the string `"inf"`. `weights`
//! defaults to all ones and `normalize` to `false`.

use std::path::Path;

use geomink::{validate_frame, Exponent, Frame2, MetricSpec};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExponentValue {
    Number(f64),
    Text(String),
}

impl From<Exponent> for ExponentValue {
    fn from(e: Exponent) -> Self {
        match e {
            Exponent::Finite(p) => ExponentValue::Number(p),
            Exponent::Infinity => ExponentValue::Text("inf".into()),
        }
    }
}

impl ExponentValue {
    pub fn to_exponent(&self) -> Result<Exponent, CliError> {
        match self {
            ExponentValue::Number(p) => Ok(Exponent::new(*p)?),
            ExponentValue::Text(s) if s == "inf" => Ok(Exponent::Infinity),
            ExponentValue::Text(s) => Err(CliError::Input(format!(
                "exponent must be a number or \"inf\", got {s:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub dimension: usize,
    pub exponent: ExponentValue,
    pub vectors: Vec<Vec<f64>>,
    #[serde(default)]
    pub weights: Option<Vec<f64>>,
    #[serde(default)]
    pub normalize: Option<bool>,
}

impl SpecDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("spec file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Identity frame in the plane, unit weights, `p = 2`.
    pub fn default_planar() -> Self {
        Self {
            dimension: 2,
            exponent: ExponentValue::Number(2.0),
            vectors: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            weights: None,
            normalize: None,
        }
    }

    pub fn to_metric(&self) -> Result<MetricSpec, CliError> {
        if self.vectors.len() != self.dimension
            || self.vectors.iter().any(|r| r.len() != self.dimension)
        {
            return Err(CliError::Input(format!(
                "dimension {} needs {0} vectors of length {0}",
                self.dimension
            )));
        }
        let exponent = self.exponent.to_exponent()?;
        let frame = validate_frame(self.vectors.clone(), self.normalize.unwrap_or(false))?;
        let weights = self
            .weights
            .clone()
            .unwrap_or_else(|| vec![1.0; self.dimension]);
        Ok(MetricSpec::new(frame, weights, exponent)?)
    }

    /// The planar frame and weights; fails for other dimensions.
    pub fn to_planar(&self) -> Result<(Frame2, [f64; 2], Exponent), CliError> {
        if self.dimension != 2 {
            return Err(CliError::Input(format!(
                "this command needs a 2-dimensional spec, got dimension {}",
                self.dimension
            )));
        }
        let m = self.to_metric()?;
        let frame = Frame2::from_frame(m.frame())?;
        let w = m.weights();
        Ok((frame, [w[0], w[1]], m.exponent()))
    }
}
