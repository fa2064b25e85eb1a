use serde::{Deserialize, Serialize};

use crate::cn_tori::WitnessStep;
use crate::rational::{RatVec, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    NotVolumeMinimizing,
    Unknown,
}

/// Evidence that a torus fibre is not Hamiltonian volume minimizing.
///
/// With verdict `NotVolumeMinimizing` the source and target lie in one
/// Chekanov class inside the stated chart and `sqvol_drop` is the positive
/// difference of their squared-volume coefficients. `Unknown` means the
/// hypotheses of the certification argument were not met; it never claims
/// minimality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub chart: Option<usize>,
    pub source: Option<RatVec>,
    pub target: Option<RatVec>,
    #[serde(with = "crate::rational::opt_string")]
    pub sqvol_drop: Option<Rational>,
    pub details: Option<WitnessStep>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::rational::opt_string"
    )]
    pub s0: Option<Rational>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::rational::opt_string"
    )]
    pub c_threshold: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Certificate {
    pub fn unknown(reason: impl Into<String>) -> Self {
        Certificate {
            verdict: Verdict::Unknown,
            chart: None,
            source: None,
            target: None,
            sqvol_drop: None,
            details: None,
            s0: None,
            c_threshold: None,
            reason: Some(reason.into()),
        }
    }

    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::NotVolumeMinimizing
    }
}
