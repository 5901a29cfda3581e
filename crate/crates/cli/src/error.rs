use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input: exit code 2.
    #[error("{message}")]
    Input { kind: &'static str, message: String },
    /// A computed certificate failed its own cross-check: exit code 1.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CliError {
    pub fn input(kind: &'static str, message: impl Into<String>) -> Self {
        CliError::Input { kind, message: message.into() }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input { .. } => 2,
            CliError::Internal(_) => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        let kind = match self {
            CliError::Input { kind, .. } => kind,
            CliError::Internal(_) => "internal",
        };
        json!({"error": {"kind": kind, "message": self.to_string()}})
    }
}

impl From<strata_core::Error> for CliError {
    fn from(e: strata_core::Error) -> Self {
        use strata_core::Error as E;
        let kind = match &e {
            E::InvalidField(_) => "field",
            E::InvalidRing(_) => "ring",
            E::RingMismatch => "ring_mismatch",
            E::NotHomogeneous | E::ZeroPolynomial => "polynomial",
            E::Parse { .. } => "parse",
            E::InvalidPresentation(_) => "module",
            E::InvalidComplex(_) | E::InvalidChainMap(_) => "complex",
            E::InvalidDgAlgebra(_) => "dga",
            E::InvalidSimplicialComplex(_) => "simplicial_complex",
            E::NotSpecializationClosed => "subset",
            E::Precondition(_) => "precondition",
        };
        CliError::input(kind, e.to_string())
    }
}
