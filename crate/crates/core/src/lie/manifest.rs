use serde::{Deserialize, Serialize};

use super::{Field, LieAlgebra, LieError};
use crate::exact::{Scalar, Subspace, Vector};

/// JSON form of a Lie algebra.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub name: String,
    pub field: Field,
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermEntry {
    pub k: usize,
    pub c: Scalar,
}

impl Manifest {
    pub fn from_json(text: &str) -> Result<Self, LieError> {
        serde_json::from_str(text).map_err(|e| LieError::Manifest(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }

    pub fn to_algebra(&self) -> Result<LieAlgebra, LieError> {
        if self.basis.len() != self.dim {
            return Err(LieError::Manifest(format!(
                "dim is {} but {} basis labels given",
                self.dim,
                self.basis.len()
            )));
        }
        LieAlgebra::new(
            self.name.clone(),
            self.field,
            self.basis.clone(),
            self.brackets.iter().map(|b| {
                (
                    (b.i, b.j),
                    b.terms.iter().map(|t| (t.k, t.c.clone())).collect(),
                )
            }),
        )
    }

    pub fn from_algebra(a: &LieAlgebra) -> Self {
        Manifest {
            name: a.name().to_string(),
            field: a.field(),
            dim: a.dim(),
            basis: a.labels().to_vec(),
            brackets: a
                .structure_constants()
                .iter()
                .map(|(&(i, j), terms)| BracketEntry {
                    i,
                    j,
                    terms: terms
                        .iter()
                        .map(|(k, c)| TermEntry { k: *k, c: c.clone() })
                        .collect(),
                })
                .collect(),
        }
    }
}

/// JSON form of a subspace: a spanning list of coefficient vectors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubspaceFile {
    pub vectors: Vec<Vector>,
}

impl SubspaceFile {
    pub fn from_json(text: &str) -> Result<Self, LieError> {
        serde_json::from_str(text).map_err(|e| LieError::Manifest(e.to_string()))
    }

    pub fn to_subspace(&self, ambient: usize) -> Result<Subspace, LieError> {
        Ok(Subspace::span(ambient, self.vectors.iter().cloned())?)
    }

    pub fn from_subspace(s: &Subspace) -> Self {
        SubspaceFile {
            vectors: s.basis().to_vec(),
        }
    }
}
