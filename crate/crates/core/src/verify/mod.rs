//! Numerical checks of the inscribed-ellipse theorems, on single reports or
//! on seeded random batches.

mod batch;
mod checks;
mod sample;

pub use batch::{run_batch, verify_quad, BatchConfig, BatchReport, CheckSummary, ConfigError, SampleRanges};
pub use checks::{
    check_h0sq, check_jmr, check_l3, check_l5, check_mdqtrap, check_newton, check_r_positive, check_t1, check_t2,
    check_t3, marden_s4_tangency, mdq_margin, NegativeMode, PARALLEL_TOL, T1_GAP, T2_GAP,
};
pub use sample::{random_affine, random_similarity, Sampler};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::geom::Point;
use crate::inscribed::FamilyParam;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    Newton,
    T1,
    T2,
    T3,
    L3,
    L5,
    Mdqtrap,
    Jmr,
    H0sq,
    RPositive,
}

impl CheckId {
    pub const ALL: [CheckId; 10] = [
        CheckId::Newton,
        CheckId::T1,
        CheckId::T2,
        CheckId::T3,
        CheckId::L3,
        CheckId::L5,
        CheckId::Mdqtrap,
        CheckId::Jmr,
        CheckId::H0sq,
        CheckId::RPositive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::Newton => "newton",
            CheckId::T1 => "t1",
            CheckId::T2 => "t2",
            CheckId::T3 => "t3",
            CheckId::L3 => "l3",
            CheckId::L5 => "l5",
            CheckId::Mdqtrap => "mdqtrap",
            CheckId::Jmr => "jmr",
            CheckId::H0sq => "h0sq",
            CheckId::RPositive => "r_positive",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown check {0:?}; expected one of newton, t1, t2, t3, l3, l5, mdqtrap, jmr, h0sq, r_positive")]
pub struct UnknownCheck(pub String);

impl FromStr for CheckId {
    type Err = UnknownCheck;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| UnknownCheck(s.to_string()))
    }
}

/// Parses a comma-separated list such as `"t2,t1,t3"`. Duplicates are
/// dropped; order is preserved. `"all"` selects every check.
pub fn parse_checks(list: &str) -> Result<Vec<CheckId>, UnknownCheck> {
    if list.trim() == "all" {
        return Ok(CheckId::ALL.to_vec());
    }
    let mut out = Vec::new();
    for part in list.split(',') {
        let id: CheckId = part.parse()?;
        if !out.contains(&id) {
            out.push(id);
        }
    }
    if out.is_empty() {
        return Err(UnknownCheck(list.to_string()));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `value ≤ tolerance`
    Le,
    /// `value > tolerance`
    Gt,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub label: String,
    pub value: f64,
    pub tolerance: f64,
    pub relation: Relation,
}

impl Residual {
    pub fn le(label: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self {
            label: label.into(),
            value,
            tolerance,
            relation: Relation::Le,
        }
    }

    pub fn gt(label: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self {
            label: label.into(),
            value,
            tolerance,
            relation: Relation::Gt,
        }
    }

    pub fn ok(&self) -> bool {
        match self.relation {
            Relation::Le => self.value <= self.tolerance,
            Relation::Gt => self.value > self.tolerance,
        }
    }

    /// True when `self` is closer to failing than `other`.
    pub(crate) fn worse_than(&self, other: &Residual) -> bool {
        match self.relation {
            Relation::Le => self.value > other.value || self.value.is_nan(),
            Relation::Gt => self.value < other.value || self.value.is_nan(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub vertices: [Point; 4],
    pub param: Option<FamilyParam>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: CheckId,
    pub status: Status,
    pub residuals: Vec<Residual>,
    pub witness: Option<Witness>,
    pub note: Option<String>,
}

impl CheckReport {
    /// Pass iff every residual is within tolerance; not applicable if there
    /// is nothing to check.
    pub fn from_residuals(check: CheckId, residuals: Vec<Residual>, witness: Witness) -> Self {
        let status = if residuals.is_empty() {
            Status::NotApplicable
        } else if residuals.iter().all(Residual::ok) {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            check,
            status,
            residuals,
            witness: (status == Status::Fail).then_some(witness),
            note: None,
        }
    }

    pub fn not_applicable(check: CheckId, note: &str) -> Self {
        Self {
            check,
            status: Status::NotApplicable,
            residuals: Vec::new(),
            witness: None,
            note: Some(note.to_string()),
        }
    }

    /// A failure that happened before any residual could be computed.
    pub fn error(check: CheckId, message: String, witness: Witness) -> Self {
        Self {
            check,
            status: Status::Fail,
            residuals: Vec::new(),
            witness: Some(witness),
            note: Some(message),
        }
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.to_string());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}
