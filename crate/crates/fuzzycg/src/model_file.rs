//! JSON form of a TSK model:
//! `{"S": int, "M": int, "centers": [[..]], "widths": [[..]], "consequents": [..]}`
//! with `M` rows of `S` values in each grid.

use std::path::Path;

use fuzzycg_core::TskModel;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    #[serde(rename = "S")]
    pub inputs: usize,
    #[serde(rename = "M")]
    pub rules: usize,
    pub centers: Vec<Vec<f64>>,
    pub widths: Vec<Vec<f64>>,
    pub consequents: Vec<f64>,
}

impl ModelFile {
    pub fn from_model(model: &TskModel) -> Self {
        let (m, s) = (model.rule_count(), model.input_count());
        let grid = |f: fn(&fuzzycg_core::GaussianMf) -> f64| -> Vec<Vec<f64>> {
            (0..m)
                .map(|i| (0..s).map(|j| f(&model.antecedent(i, j))).collect())
                .collect()
        };
        ModelFile {
            inputs: s,
            rules: m,
            centers: grid(|mf| mf.center()),
            widths: grid(|mf| mf.width()),
            consequents: model.consequents().to_vec(),
        }
    }

    pub fn to_model(&self) -> Result<TskModel> {
        if self.consequents.len() != self.rules {
            return Err(Error::Model(format!(
                "M = {} but {} consequents",
                self.rules,
                self.consequents.len()
            )));
        }
        for (name, grid) in [("centers", &self.centers), ("widths", &self.widths)] {
            if grid.len() != self.rules || grid.iter().any(|r| r.len() != self.inputs) {
                return Err(Error::Model(format!(
                    "{name} must be {} rows of {} values",
                    self.rules, self.inputs
                )));
            }
        }
        TskModel::from_grids(&self.centers, &self.widths, self.consequents.clone())
            .map_err(|e| Error::Model(e.to_string()))
    }
}

pub fn parse_model(json: &str) -> Result<TskModel> {
    serde_json::from_str::<ModelFile>(json)?.to_model()
}

pub fn serialize_model(model: &TskModel) -> String {
    serde_json::to_string_pretty(&ModelFile::from_model(model)).expect("model serializes")
}

pub fn read_model(path: &Path) -> Result<TskModel> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_model(&text)
}
