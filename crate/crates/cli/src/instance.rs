//! Instance files: a CM action and the two period subspaces.

use serde::{Deserialize, Serialize};
use thiserror::Error;
use weiltorus::scalars::{parse_scalar, ParseError, ScalarDomain};
use weiltorus::torus::{generic_model, CmAction, WeilTorusModel};
use weiltorus::{GaussRational, RatFunc, Scalar};

const RANK: usize = 8;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("malformed instance JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Shape(String),
    #[error("unknown domain {0:?}, expected \"Qi\" or \"FunctionField\"")]
    Domain(String),
    #[error("bad scalar {text:?}: {source}")]
    Scalar { text: String, source: ParseError },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    #[serde(rename = "J")]
    pub j: Vec<Vec<i64>>,
    pub domain: String,
    #[serde(default)]
    pub variables: Vec<String>,
    #[serde(rename = "Wi")]
    pub wi: Vec<Vec<String>>,
    #[serde(rename = "Wmi")]
    pub wmi: Vec<Vec<String>>,
    #[serde(default)]
    pub description: String,
}

pub enum Model {
    Symbolic(WeilTorusModel<RatFunc>),
    Gaussian(WeilTorusModel<GaussRational>),
}

impl Instance {
    pub fn parse(text: &str) -> Result<Instance, InstanceError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instances serialize");
        s.push('\n');
        s
    }

    pub fn model(&self) -> Result<Model, InstanceError> {
        let action = self.action()?;
        match self.domain.as_str() {
            "Qi" => {
                let domain = ScalarDomain::GaussianRational;
                Ok(Model::Gaussian(WeilTorusModel::new(
                    action,
                    domain,
                    self.basis(&self.wi, "Wi")?,
                    self.basis(&self.wmi, "Wmi")?,
                )))
            }
            "FunctionField" => {
                let domain = ScalarDomain::FunctionField {
                    variables: self.variables.clone(),
                };
                Ok(Model::Symbolic(WeilTorusModel::new(
                    action,
                    domain,
                    self.basis(&self.wi, "Wi")?,
                    self.basis(&self.wmi, "Wmi")?,
                )))
            }
            other => Err(InstanceError::Domain(other.to_string())),
        }
    }

    /// The action as given; `J² = -1` is left to validation.
    fn action(&self) -> Result<CmAction, InstanceError> {
        if self.j.len() != RANK || self.j.iter().any(|r| r.len() != RANK) {
            return Err(InstanceError::Shape("J must be 8x8".into()));
        }
        let mut j = [[0i64; RANK]; RANK];
        for (row, src) in j.iter_mut().zip(&self.j) {
            row.copy_from_slice(src);
        }
        Ok(CmAction::new_unchecked(j))
    }

    fn basis<S: Scalar>(
        &self,
        rows: &[Vec<String>],
        name: &str,
    ) -> Result<[Vec<S>; 2], InstanceError> {
        if rows.len() != 2 || rows.iter().any(|r| r.len() != RANK / 2) {
            return Err(InstanceError::Shape(format!("{name} must be 2x4")));
        }
        let row = |r: &[String]| -> Result<Vec<S>, InstanceError> {
            r.iter()
                .map(|t| {
                    parse_scalar(t, &self.variables).map_err(|source| InstanceError::Scalar {
                        text: t.clone(),
                        source,
                    })
                })
                .collect()
        };
        Ok([row(&rows[0])?, row(&rows[1])?])
    }

    pub fn from_model<S: Scalar>(model: &WeilTorusModel<S>, description: &str) -> Instance {
        let symbolic = matches!(model.domain(), ScalarDomain::FunctionField { .. });
        let domain = if symbolic { "FunctionField" } else { "Qi" };
        let text = |x: &S| {
            if symbolic {
                model.format_scalar(x)
            } else {
                x.to_string()
            }
        };
        let rows = |b: &[Vec<S>; 2]| b.iter().map(|r| r.iter().map(text).collect()).collect();
        Instance {
            j: model
                .action()
                .entries()
                .iter()
                .map(|r| r.to_vec())
                .collect(),
            domain: domain.to_string(),
            variables: model.domain().variables().to_vec(),
            wi: rows(model.wi()),
            wmi: rows(model.wmi()),
            description: description.to_string(),
        }
    }
}

/// The canonical 8-parameter chart.
pub fn generic_instance() -> Instance {
    Instance::from_model(
        &generic_model(),
        "Generic Weil-type 4-torus: W_i rows (1,0,t1,t3), (0,1,t2,t4) in the f basis, \
         W_-i rows (1,0,t5,t7), (0,1,t6,t8) in the conjugate basis, J = J0",
    )
}
