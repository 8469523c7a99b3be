use serde_json::{json, Value};

use crate::chains::ChainError;
use crate::formal::FormalError;
use crate::graded::GradedError;
use crate::lie::LieError;

/// A domain failure with its structured payload.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub kind: String,
    pub message: String,
    pub details: Value,
}

impl CliError {
    pub fn new(kind: &str, message: impl Into<String>) -> Self {
        CliError { kind: kind.into(), message: message.into(), details: Value::Null }
    }

    pub fn payload(&self) -> Value {
        let mut v = json!({ "kind": self.kind, "message": self.message });
        if !self.details.is_null() {
            v["details"] = self.details.clone();
        }
        v
    }
}

/// Variant name of a derived `Debug` rendering.
fn kind_of(debug: &str) -> String {
    debug.split(|c: char| !c.is_alphanumeric() && c != '_').next().unwrap_or(debug).to_string()
}

impl From<LieError> for CliError {
    fn from(e: LieError) -> Self {
        let mut out = CliError::new(&kind_of(&format!("{e:?}")), e.to_string());
        if let LieError::JacobiViolation { triple, residual } = &e {
            out.details = json!({ "triple": [triple.0, triple.1, triple.2], "residual": residual });
        }
        out
    }
}

impl From<ChainError> for CliError {
    fn from(e: ChainError) -> Self {
        match e {
            ChainError::Lie(inner) => inner.into(),
            ChainError::NotFundamental { ref reached } => {
                let mut out = CliError::new("NotFundamental", e.to_string());
                out.details = json!({ "generated_dim": reached.dim(), "generated": reached.basis() });
                out
            }
            ChainError::NotTransitive { ref ideal } => {
                let mut out = CliError::new("NotTransitive", e.to_string());
                out.details = json!({ "ideal": ideal.basis() });
                out
            }
            _ => CliError::new(&kind_of(&format!("{e:?}")), e.to_string()),
        }
    }
}

impl From<GradedError> for CliError {
    fn from(e: GradedError) -> Self {
        match e {
            GradedError::Chain(inner) => inner.into(),
            _ => CliError::new(&kind_of(&format!("{e:?}")), e.to_string()),
        }
    }
}

impl From<FormalError> for CliError {
    fn from(e: FormalError) -> Self {
        match e {
            FormalError::Lie(inner) => inner.into(),
            _ => CliError::new(&kind_of(&format!("{e:?}")), e.to_string()),
        }
    }
}

impl From<crate::exact::ExactError> for CliError {
    fn from(e: crate::exact::ExactError) -> Self {
        CliError::new(&kind_of(&format!("{e:?}")), e.to_string())
    }
}
