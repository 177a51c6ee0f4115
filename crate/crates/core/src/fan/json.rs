use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::Fan;
use crate::error::{Error, Result};
use crate::linalg::vector::to_i64;
use crate::linalg::IntMatrix;

/// Serialized fan: `{"rays": [[int]], "maximal_cones": [[int]], "pi": [[int]]?}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanJson {
    pub rays: Vec<Vec<i64>>,
    pub maximal_cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<Vec<Vec<i64>>>,
}

impl FanJson {
    pub fn into_fan(self) -> Result<Fan> {
        let rays = self
            .rays
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let fan = Fan::new(rays, self.maximal_cones)?;
        match self.pi {
            Some(pi) => {
                let cols = pi.first().map_or(0, Vec::len);
                if pi.iter().any(|r| r.len() != cols) {
                    return Err(Error::InvalidProjection("ragged pi".into()));
                }
                fan.with_class_map(IntMatrix::from_rows(&pi, cols))
            }
            None => Ok(fan),
        }
    }
}

impl Fan {
    pub fn from_json(text: &str) -> Result<Fan> {
        let raw: FanJson =
            serde_json::from_str(text).map_err(|e| Error::MalformedFan(e.to_string()))?;
        raw.into_fan()
    }

    /// Entries must fit in `i64`.
    pub fn to_json(&self) -> FanJson {
        let conv = |v: &[BigInt]| to_i64(v).expect("entry fits in i64");
        FanJson {
            rays: self.rays().iter().map(|r| conv(r)).collect(),
            maximal_cones: self.maximal_cones().to_vec(),
            pi: self
                .supplied_class_map()
                .map(|m| m.to_rows().iter().map(|r| conv(r)).collect()),
        }
    }
}
