//! JSON forms: `{"labels": ["D","E"], "gram": [[4,3],[3,0]]}` for lattices;
//! `[1, -2]` or `{"D": 1, "E": -2}` for vectors.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{IntLattice, LatticeVector};
use crate::error::{Error, Result};
use crate::matrix::{ints, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub gram: Vec<Vec<i64>>,
}

impl LatticeJson {
    pub fn to_lattice(&self) -> Result<IntLattice> {
        let gram = IntMatrix::from_rows(self.gram.iter().map(|r| ints(r)).collect())?;
        match &self.labels {
            Some(labels) => IntLattice::with_labels(gram, labels.clone()),
            None => IntLattice::new(gram),
        }
    }

    /// Fails if an entry does not fit in an `i64`.
    pub fn from_lattice(l: &IntLattice) -> Result<Self> {
        let gram = l
            .gram()
            .to_rows()
            .iter()
            .map(|row| row.iter().map(to_i64).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(LatticeJson { labels: Some(l.labels().to_vec()), gram })
    }
}

fn to_i64(v: &BigInt) -> Result<i64> {
    v.to_i64().ok_or_else(|| Error::Parse { input: v.to_string(), reason: "does not fit in i64".into() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VectorJson {
    Coords(Vec<i64>),
    Named(BTreeMap<String, i64>),
}

impl VectorJson {
    pub fn resolve(&self, labels: &[String]) -> Result<LatticeVector> {
        match self {
            VectorJson::Coords(c) => {
                if c.len() != labels.len() {
                    return Err(Error::RankMismatch { expected: labels.len(), actual: c.len() });
                }
                Ok(LatticeVector::from_i64(c))
            }
            VectorJson::Named(map) => {
                let mut v = vec![0i64; labels.len()];
                for (name, coeff) in map {
                    let idx = labels.iter().position(|l| l == name).ok_or_else(|| Error::UnknownLabel(name.clone()))?;
                    v[idx] = *coeff;
                }
                Ok(LatticeVector::from_i64(&v))
            }
        }
    }
}
