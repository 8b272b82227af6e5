//! Seeded batches and single-input verification.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checks::*;
use super::sample::Sampler;
use super::{CheckId, CheckReport, Residual, Status, Witness};
use crate::inscribed::{inscribed_ellipse_with, FamilyParam};
use crate::quad::{to_qz, FrameParams, Quadrilateral, QzParams};
use crate::tol::Tolerances;

/// Ranges for the `Q_z` parameters drawn by the samplers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleRanges {
    pub s: (f64, f64),
    pub t: (f64, f64),
    pub v: (f64, f64),
    pub w: (f64, f64),
}

impl Default for SampleRanges {
    fn default() -> Self {
        Self {
            s: (0.5, 10.0),
            t: (0.5, 10.0),
            v: (0.5, 10.0),
            w: (-5.0, 5.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchConfig {
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<CheckId>,
    pub ranges: SampleRanges,
    /// Minimum distance from the MDQ lines for non-MDQ samples; 0 disables
    /// the negative assertions.
    pub margin: f64,
    /// Place samples by a random similarity.
    pub similarity: bool,
}

impl Default for BatchConfig {
    fn default() -> Self {
        Self {
            samples: 1000,
            seed: 0,
            checks: CheckId::ALL.to_vec(),
            ranges: SampleRanges::default(),
            margin: 0.05,
            similarity: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("samples must be at least 1")]
    NoSamples,
    #[error("no checks selected")]
    NoChecks,
    #[error("margin must be finite and non-negative, got {0}")]
    BadMargin(f64),
    #[error("invalid sample range for {0}")]
    BadRange(&'static str),
}

impl BatchConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.samples == 0 {
            return Err(ConfigError::NoSamples);
        }
        if self.checks.is_empty() {
            return Err(ConfigError::NoChecks);
        }
        if !(self.margin.is_finite() && self.margin >= 0.0) {
            return Err(ConfigError::BadMargin(self.margin));
        }
        let r = &self.ranges;
        for (name, (lo, hi), positive) in [("s", r.s, true), ("t", r.t, true), ("v", r.v, true), ("w", r.w, false)] {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) || (positive && lo <= 0.0) {
                return Err(ConfigError::BadRange(name));
            }
        }
        Ok(())
    }
}

/// Aggregate over every evaluation of one check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub check: CheckId,
    pub status: Status,
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
    /// Worst value seen for each residual label.
    pub worst: Vec<Residual>,
    /// Up to five failing inputs, with the reason when no residual exists.
    pub witnesses: Vec<Witness>,
}

impl CheckSummary {
    const MAX_WITNESSES: usize = 5;

    fn from_reports(check: CheckId, reports: &[CheckReport]) -> Self {
        let mut worst: BTreeMap<String, Residual> = BTreeMap::new();
        let mut witnesses = Vec::new();
        let (mut pass, mut fail, mut na) = (0, 0, 0);
        for r in reports {
            match r.status {
                Status::Pass => pass += 1,
                Status::Fail => fail += 1,
                Status::NotApplicable => na += 1,
            }
            for res in &r.residuals {
                match worst.get(&res.label) {
                    Some(w) if !res.worse_than(w) => {}
                    _ => {
                        worst.insert(res.label.clone(), res.clone());
                    }
                }
            }
            if r.status == Status::Fail && witnesses.len() < Self::MAX_WITNESSES {
                if let Some(mut w) = r.witness.clone() {
                    if w.note.is_none() {
                        w.note = r.note.clone();
                    }
                    witnesses.push(w);
                }
            }
        }
        let status = if fail > 0 {
            Status::Fail
        } else if pass > 0 {
            Status::Pass
        } else {
            Status::NotApplicable
        };
        Self {
            check,
            status,
            pass,
            fail,
            not_applicable: na,
            worst: worst.into_values().collect(),
            witnesses,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchReport {
    /// Present for random batches.
    pub seed: Option<u64>,
    pub samples: usize,
    pub margin: f64,
    pub checks: Vec<CheckSummary>,
    pub passed: bool,
}

impl BatchReport {
    fn new(seed: Option<u64>, samples: usize, margin: f64, checks: Vec<CheckSummary>) -> Self {
        let passed = checks.iter().all(|c| c.status != Status::Fail);
        Self {
            seed,
            samples,
            margin,
            checks,
            passed,
        }
    }

    pub fn summary(&self, check: CheckId) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.check == check)
    }
}

fn index(check: CheckId) -> u64 {
    CheckId::ALL.iter().position(|&c| c == check).expect("listed") as u64
}

fn negative_mode(q: &Quadrilateral, margin: f64) -> NegativeMode {
    if margin > 0.0 && mdq_margin(q) >= margin {
        NegativeMode::Assert
    } else {
        NegativeMode::Skip
    }
}

fn family_param(s: &mut Sampler, q: &Quadrilateral, parallelogram: bool) -> FamilyParam {
    if parallelogram {
        return FamilyParam::V(s.uniform(-0.95, 0.95));
    }
    if s.rng().gen_bool(0.5) {
        if let Ok(frame) = to_qz(q) {
            if let FrameParams::Qz(p) = frame.params {
                let (lo, hi) = p.interval();
                return FamilyParam::H(lo + (hi - lo) * s.uniform(0.02, 0.98));
            }
        }
    }
    FamilyParam::Q(s.uniform(0.05, 0.95))
}

/// A quad from the mixed population: 30% type 1, 20% type 2, 40% generic
/// at least `margin` away from the MDQ lines, 10% parallelograms.
fn mixed_quad(s: &mut Sampler, cfg: &BatchConfig) -> (Quadrilateral, bool) {
    let u = s.uniform(0.0, 1.0);
    if u < 0.1 {
        let p = s.parallelogram();
        return (s.place(p.vertices(), cfg.similarity), true);
    }
    loop {
        let p = if u < 0.4 {
            s.qz_type1()
        } else if u < 0.6 {
            s.qz_type2()
        } else {
            s.qz_generic()
        };
        let q = s.place(p.vertices(), cfg.similarity);
        if u >= 0.6 && mdq_margin(&q) < cfg.margin {
            continue;
        }
        return (q, false);
    }
}

fn qz_member(s: &mut Sampler, p: QzParams) -> f64 {
    let (lo, hi) = p.interval();
    lo + (hi - lo) * s.uniform(0.02, 0.98)
}

fn run_one(cfg: &BatchConfig, check: CheckId, trial: u64, tol: &Tolerances) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream((index(check) << 32) | trial);
    let mut s = Sampler::new(rng, cfg.ranges);
    match check {
        CheckId::Newton | CheckId::T1 | CheckId::T2 => {
            let (q, parallelogram) = mixed_quad(&mut s, cfg);
            let param = family_param(&mut s, &q, parallelogram);
            let rep = match inscribed_ellipse_with(&q, param, tol) {
                Ok(r) => r,
                Err(e) => {
                    let w = Witness {
                        vertices: q.vertices(),
                        param: Some(param),
                        note: None,
                    };
                    return CheckReport::error(check, e.to_string(), w);
                }
            };
            let neg = negative_mode(&q, cfg.margin);
            match check {
                CheckId::Newton => check_newton(&rep, tol),
                CheckId::T1 => check_t1(&rep, neg, tol),
                _ => check_t2(&rep, neg, tol),
            }
        }
        CheckId::T3 => {
            let u = s.uniform(0.0, 1.0);
            let verts = if u < 0.45 {
                s.qz_type1().vertices()
            } else if u < 0.9 {
                s.qz_type2().vertices()
            } else {
                s.parallelogram().vertices()
            };
            check_t3(&s.place(verts, cfg.similarity), tol)
        }
        CheckId::L3 => {
            let v = s.l3().vertices();
            check_l3(&s.place(v, cfg.similarity), tol)
        }
        CheckId::L5 => check_l5(&s.l5(), tol),
        CheckId::Mdqtrap => {
            let v = s.trapezoid().vertices();
            check_mdqtrap(&s.place(v, cfg.similarity), tol)
        }
        CheckId::Jmr | CheckId::RPositive => {
            let p = s.qz_generic();
            let h = qz_member(&mut s, p);
            if check == CheckId::Jmr {
                check_jmr(&p, h)
            } else {
                check_r_positive(&p, h)
            }
        }
        CheckId::H0sq => {
            let p = s.qz_type1();
            let h = qz_member(&mut s, p);
            check_h0sq(&p, h)
        }
    }
}

/// Runs `cfg.samples` trials of each selected check. Trial `i` of check `c`
/// draws from its own ChaCha8 stream, so results do not depend on thread
/// count or on which other checks are selected.
pub fn run_batch(cfg: &BatchConfig, tol: &Tolerances) -> Result<BatchReport, ConfigError> {
    cfg.validate()?;
    let summaries = cfg
        .checks
        .iter()
        .map(|&check| {
            let reports: Vec<CheckReport> = (0..cfg.samples as u64)
                .into_par_iter()
                .map(|trial| run_one(cfg, check, trial, tol))
                .collect();
            CheckSummary::from_reports(check, &reports)
        })
        .collect();
    Ok(BatchReport::new(Some(cfg.seed), cfg.samples, cfg.margin, summaries))
}

const FRACTIONS: [f64; 5] = [1.0 / 6.0, 2.0 / 6.0, 3.0 / 6.0, 4.0 / 6.0, 5.0 / 6.0];

/// Runs the selected checks on one quad, over five family members where a
/// check needs one.
pub fn verify_quad(q: &Quadrilateral, checks: &[CheckId], margin: f64, tol: &Tolerances) -> BatchReport {
    let class = q.classify_with(tol);
    let neg = negative_mode(q, margin);
    let qz = if class.is_parallelogram {
        None
    } else {
        to_qz(q).ok().and_then(|f| match f.params {
            FrameParams::Qz(p) => Some(p),
            _ => None,
        })
    };
    let members = || {
        FRACTIONS.map(|f| {
            if class.is_parallelogram {
                FamilyParam::V(2.0 * f - 1.0)
            } else {
                FamilyParam::Q(f)
            }
        })
    };
    let hs = || {
        qz.map(|p| {
            let (lo, hi) = p.interval();
            (p, FRACTIONS.map(|f| lo + (hi - lo) * f))
        })
    };
    let summaries = checks
        .iter()
        .map(|&check| {
            let reports: Vec<CheckReport> = match check {
                CheckId::Newton | CheckId::T1 | CheckId::T2 => members()
                    .iter()
                    .map(|&param| match inscribed_ellipse_with(q, param, tol) {
                        Ok(rep) => match check {
                            CheckId::Newton => check_newton(&rep, tol),
                            CheckId::T1 => check_t1(&rep, neg, tol),
                            _ => check_t2(&rep, neg, tol),
                        },
                        Err(e) => CheckReport::error(
                            check,
                            e.to_string(),
                            Witness {
                                vertices: q.vertices(),
                                param: Some(param),
                                note: None,
                            },
                        ),
                    })
                    .collect(),
                CheckId::T3 => vec![check_t3(q, tol)],
                CheckId::L3 => vec![check_l3(q, tol)],
                CheckId::L5 => vec![check_l5(q, tol)],
                CheckId::Mdqtrap => vec![check_mdqtrap(q, tol)],
                CheckId::Jmr | CheckId::RPositive | CheckId::H0sq => match hs() {
                    Some((p, hs)) => hs
                        .iter()
                        .map(|&h| match check {
                            CheckId::Jmr => check_jmr(&p, h),
                            CheckId::RPositive => check_r_positive(&p, h),
                            _ => check_h0sq(&p, h),
                        })
                        .collect(),
                    None => vec![CheckReport::not_applicable(check, "no Q_z frame for a parallelogram")],
                },
            };
            CheckSummary::from_reports(check, &reports)
        })
        .collect();
    BatchReport::new(None, 1, margin, summaries)
}
