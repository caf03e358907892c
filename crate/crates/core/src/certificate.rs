//! Feasibility certificates: a packing or cover of a specific channel with
//! its claimed weight, serialized as JSON.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::channel::{Channel, Side, Violation, WeightVec};
use crate::error::{Error, Result};
use crate::rational::{serde_pair, serde_pairs, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    Packing,
    Cover,
    IntegerPacking,
    IntegerCover,
}

impl CertificateKind {
    pub fn side(self) -> Side {
        match self {
            CertificateKind::Packing | CertificateKind::IntegerPacking => Side::Input,
            CertificateKind::Cover | CertificateKind::IntegerCover => Side::Output,
        }
    }

    fn is_integer(self) -> bool {
        matches!(self, CertificateKind::IntegerPacking | CertificateKind::IntegerCover)
    }
}

/// Integer kinds carry the 0/1 indicator of the chosen index set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub side: Side,
    #[serde(with = "serde_pairs")]
    pub values: Vec<Rational>,
    #[serde(with = "serde_pair")]
    pub value: Rational,
}

/// Why a certificate was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateError {
    Infeasible(Violation),
    SideMismatch { kind: CertificateKind, side: Side },
    NotIndicator { index: usize },
    WrongValue { claimed: Rational, actual: Rational },
}

impl std::fmt::Display for CertificateError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CertificateError::Infeasible(v) => write!(f, "{v}"),
            CertificateError::SideMismatch { kind, side } => {
                write!(f, "{kind:?} certificate must live on the {} side, not {side}", kind.side())
            }
            CertificateError::NotIndicator { index } => write!(f, "entry {index} is not 0 or 1"),
            CertificateError::WrongValue { claimed, actual } => {
                write!(f, "claimed value {claimed} but the vector weighs {actual}")
            }
        }
    }
}

impl Certificate {
    pub fn new(kind: CertificateKind, values: Vec<Rational>) -> Certificate {
        let value = crate::rational::sum(&values);
        Certificate { kind, side: kind.side(), values, value }
    }

    pub fn from_weights(kind: CertificateKind, w: &WeightVec) -> Certificate {
        Certificate::new(kind, w.values.clone())
    }

    pub fn from_index_set(kind: CertificateKind, len: usize, set: &[usize]) -> Certificate {
        Certificate::new(kind, WeightVec::indicator(kind.side(), len, set).values)
    }

    pub fn weights(&self) -> WeightVec {
        WeightVec::new(self.side, self.values.clone())
    }

    /// Exact verification against `a`; returns the verified weight.
    #[allow(clippy::result_large_err)]
    pub fn verify(&self, a: &Channel) -> Result<Rational, CertificateError> {
        if self.side != self.kind.side() {
            return Err(CertificateError::SideMismatch { kind: self.kind, side: self.side });
        }
        if self.kind.is_integer() {
            let zero = Rational::default();
            let one = Rational::from_integer(1.into());
            if let Some(index) = self.values.iter().position(|v| *v != zero && *v != one) {
                return Err(CertificateError::NotIndicator { index });
            }
        }
        let actual = match self.kind.side() {
            Side::Input => a.verify_packing(&self.values),
            _ => a.verify_cover(&self.values),
        }
        .map_err(CertificateError::Infeasible)?;
        if actual != self.value {
            return Err(CertificateError::WrongValue { claimed: self.value.clone(), actual });
        }
        Ok(actual)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Certificate> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Certificate> {
        Certificate::from_json(&std::fs::read_to_string(path)?)
    }
}

impl From<CertificateError> for Error {
    fn from(e: CertificateError) -> Error {
        Error::Certificate(e.to_string())
    }
}
