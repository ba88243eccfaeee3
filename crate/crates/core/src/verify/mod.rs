//! Exact-rational sampling of witness guarantees and counterexample search
//! for externally claimed thresholds.
//!
//! Sampling corroborates; it never proves. A generated witness is sound by
//! its derivation, and the verifier exists to catch implementation bugs and
//! to audit thresholds supplied from outside.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{EvalError, RatFunc, Value};
use crate::numeric::Rat;
use crate::witness::{Center, Claim, DeltaExpr, Side, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("pole at the centre: {0}")]
    PoleAtCenter(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub eps_grid: Vec<Rat>,
    pub samples_per_eps: usize,
    pub seed: u64,
    pub root_precision_bits: u32,
    pub sin_degree: u32,
}

/// `10^k` for `k = -6..=2`.
pub fn default_eps_grid() -> Vec<Rat> {
    (-6i32..=2)
        .map(|k| {
            let p = Rat::integer(10).pow(k.unsigned_abs());
            if k < 0 {
                p.recip().expect("nonzero")
            } else {
                p
            }
        })
        .collect()
}

impl Default for VerifyConfig {
    fn default() -> VerifyConfig {
        VerifyConfig {
            eps_grid: default_eps_grid(),
            samples_per_eps: 64,
            seed: 0,
            root_precision_bits: 64,
            sin_degree: 13,
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<(), VerifyError> {
        if self.eps_grid.is_empty() {
            return Err(VerifyError::InvalidConfig("eps grid is empty".into()));
        }
        if let Some(bad) = self.eps_grid.iter().find(|e| !e.is_positive()) {
            return Err(VerifyError::InvalidConfig(format!("eps grid entry {bad} is not positive")));
        }
        if self.samples_per_eps < 8 {
            return Err(VerifyError::InvalidConfig("at least 8 samples per eps are required".into()));
        }
        if self.root_precision_bits == 0 {
            return Err(VerifyError::InvalidConfig("root precision must be positive".into()));
        }
        if self.sin_degree == 0 || self.sin_degree % 2 == 0 {
            return Err(VerifyError::InvalidConfig("sin degree must be odd and positive".into()));
        }
        Ok(())
    }

    fn seed_for(&self, index: usize) -> u64 {
        self.seed
            .wrapping_add((index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

const RANDOM_BITS: u32 = 30;

/// Deterministic offsets in the punctured neighbourhood of radius `delta`.
///
/// Magnitudes are `delta (1 - 2^-i)` for `i = 1..=min(8, n)`, `delta/2`,
/// `delta 2^-20`, and `m/2^30 delta` for uniform `m` to make up `n`; they are
/// deduplicated and sorted. Two-sided sampling emits `-t` before `t`.
/// Every result satisfies `0 < |t| < delta`.
pub fn sample_points(delta: &Rat, n: usize, seed: u64, side: Side) -> Vec<Rat> {
    assert!(delta.is_positive(), "sampling radius must be positive");
    let mut mags: BTreeSet<Rat> = BTreeSet::new();
    let hug = n.min(8);
    for i in 1..=hug as u32 {
        mags.insert(delta * (Rat::one() - Rat::dyadic(1, i)));
    }
    mags.insert(delta.half());
    mags.insert(delta * Rat::dyadic(1, 20));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..n.saturating_sub(hug + 2) {
        let m: i64 = rng.gen_range(1..(1i64 << RANDOM_BITS));
        mags.insert(delta * Rat::dyadic(m, RANDOM_BITS));
    }
    match side {
        Side::RightOnly => mags.into_iter().collect(),
        Side::TwoSided => mags.into_iter().flat_map(|m| [-m.clone(), m]).collect(),
    }
}

/// `(eps, t)` with `0 < |t| < delta(eps)` and `|g(t)| >= error_lower_bound >= eps`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Counterexample {
    pub eps: Rat,
    pub t: Rat,
    pub error_lower_bound: Rat,
}

impl Counterexample {
    /// Re-derive the violation from the three fields with one exact evaluation.
    pub fn recheck(&self, claim: &Claim, delta: &DeltaExpr, cfg: &VerifyConfig) -> bool {
        let radius = delta.eval(&self.eps, cfg.root_precision_bits);
        if !claim.admissible(&self.t, &radius) || self.error_lower_bound < self.eps {
            return false;
        }
        match error_lower_bound(claim, &self.t, cfg.sin_degree) {
            Some(lb) => lb >= self.error_lower_bound,
            None => false,
        }
    }
}

/// Best certified lower bound on `|g(t)|` with degree escalation, or `None` at a pole.
fn error_lower_bound(claim: &Claim, t: &Rat, sin_degree: u32) -> Option<Rat> {
    let mut best: Option<Rat> = None;
    let mut degree = sin_degree;
    while degree <= 2 * sin_degree {
        match claim.error_at(t, degree) {
            Ok(Value::Exact(e)) => return Some(e),
            Ok(Value::Enclosed(iv)) => {
                let lo = iv.lo().clone();
                best = Some(best.map_or(lo.clone(), |b| b.max(lo)));
            }
            Err(EvalError::Pole) => return None,
            Err(_) => {}
        }
        degree += 2;
    }
    best
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SamplePoint {
    pub eps: Rat,
    pub t: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Outcome {
    Holds,
    Violated(Rat),
    Pole,
    Indeterminate,
}

/// Decide `|g(t)| < eps`, raising the `sin` degree by 2 up to twice the base
/// degree while an enclosure straddles `eps`.
fn check_point(claim: &Claim, t: &Rat, eps: &Rat, sin_degree: u32) -> Outcome {
    let mut degree = sin_degree;
    loop {
        let verdict = match claim.error_at(t, degree) {
            Ok(Value::Exact(e)) => {
                return if &e >= eps { Outcome::Violated(e) } else { Outcome::Holds };
            }
            Ok(Value::Enclosed(iv)) => {
                if iv.lo() >= eps {
                    return Outcome::Violated(iv.lo().clone());
                }
                if iv.hi() < eps {
                    return Outcome::Holds;
                }
                Outcome::Indeterminate
            }
            Err(EvalError::Pole) => return Outcome::Pole,
            Err(_) => Outcome::Indeterminate,
        };
        if degree + 2 > 2 * sin_degree {
            return verdict;
        }
        degree += 2;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Corroborated,
    Violations,
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub status: Status,
    pub basis: String,
    pub eps_checked: usize,
    pub points_checked: usize,
    pub violations: Vec<Counterexample>,
    pub poles: Vec<SamplePoint>,
    pub indeterminate: Vec<SamplePoint>,
    pub assumptions: Vec<String>,
    pub config: VerifyConfig,
}

impl VerificationReport {
    pub fn is_corroborated(&self) -> bool {
        self.status == Status::Corroborated
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Default)]
struct EpsSweep {
    points: usize,
    violations: Vec<Counterexample>,
    poles: Vec<SamplePoint>,
    indeterminate: Vec<SamplePoint>,
}

fn sweep(claim: &Claim, delta: &DeltaExpr, eps: &Rat, n: usize, seed: u64, cfg: &VerifyConfig) -> EpsSweep {
    let radius = delta.eval(eps, cfg.root_precision_bits);
    let mut out = EpsSweep::default();
    for t in sample_points(&radius, n, seed, claim.side) {
        out.points += 1;
        match check_point(claim, &t, eps, cfg.sin_degree) {
            Outcome::Holds => {}
            Outcome::Violated(e) => out.violations.push(Counterexample {
                eps: eps.clone(),
                t,
                error_lower_bound: e,
            }),
            Outcome::Pole => out.poles.push(SamplePoint { eps: eps.clone(), t }),
            Outcome::Indeterminate => out.indeterminate.push(SamplePoint { eps: eps.clone(), t }),
        }
    }
    out
}

/// Sample the guarantee of `w` on every grid `eps`.
///
/// Grid entries are processed in parallel; the report lists findings in grid
/// order and, within one `eps`, by increasing `|t|`.
pub fn verify_witness(w: &Witness, cfg: &VerifyConfig) -> Result<VerificationReport, VerifyError> {
    cfg.validate()?;
    let sweeps: Vec<EpsSweep> = cfg
        .eps_grid
        .par_iter()
        .enumerate()
        .map(|(i, eps)| sweep(&w.claim, &w.delta, eps, cfg.samples_per_eps, cfg.seed_for(i), cfg))
        .collect();
    let mut report = VerificationReport {
        status: Status::Corroborated,
        basis: "sampled corroboration; the derivation is the proof".into(),
        eps_checked: cfg.eps_grid.len(),
        points_checked: 0,
        violations: Vec::new(),
        poles: Vec::new(),
        indeterminate: Vec::new(),
        assumptions: w.assumptions(),
        config: cfg.clone(),
    };
    for s in sweeps {
        report.points_checked += s.points;
        report.violations.extend(s.violations);
        report.poles.extend(s.poles);
        report.indeterminate.extend(s.indeterminate);
    }
    report.status = if !report.violations.is_empty() || !report.poles.is_empty() {
        Status::Violations
    } else if !report.indeterminate.is_empty() {
        Status::Indeterminate
    } else {
        Status::Corroborated
    };
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FalsifyStatus {
    #[serde(rename = "counterexample")]
    Counterexample,
    #[serde(rename = "pole")]
    Pole,
    #[serde(rename = "no counterexample at budget")]
    NoCounterexampleAtBudget,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FalsifyReport {
    pub status: FalsifyStatus,
    pub counterexample: Option<Counterexample>,
    pub poles: Vec<SamplePoint>,
    pub eps_checked: usize,
    pub points_checked: usize,
    pub note: String,
}

impl FalsifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

const SHRINK_STEPS: usize = 32;

/// Search the grid for `(eps, t)` with `|g(t)| >= eps` below the claimed threshold.
///
/// `budget` bounds the number of evaluated points over the whole grid. The
/// grid is scanned from the largest `eps` down; at the first `eps` with a
/// violation the smallest-`|t|` violator is shrunk by bisection towards the
/// nearest smaller non-violating sample of the same sign.
pub fn falsify(claim: &Claim, delta: &DeltaExpr, budget: usize, cfg: &VerifyConfig) -> Result<FalsifyReport, VerifyError> {
    cfg.validate()?;
    let sides = if claim.side == Side::TwoSided { 2 } else { 1 };
    let per_eps = (budget / (cfg.eps_grid.len() * sides)).max(8);
    let mut order: Vec<usize> = (0..cfg.eps_grid.len()).collect();
    order.sort_by(|&a, &b| cfg.eps_grid[b].cmp(&cfg.eps_grid[a]));
    let sweeps: Vec<(usize, Vec<Rat>, EpsSweep)> = order
        .par_iter()
        .map(|&i| {
            let eps = &cfg.eps_grid[i];
            let radius = delta.eval(eps, cfg.root_precision_bits);
            let pts = sample_points(&radius, per_eps, cfg.seed_for(i), claim.side);
            let s = sweep(claim, delta, eps, per_eps, cfg.seed_for(i), cfg);
            (i, pts, s)
        })
        .collect();
    let points_checked = sweeps.iter().map(|(_, _, s)| s.points).sum();
    let poles: Vec<SamplePoint> = sweeps.iter().flat_map(|(_, _, s)| s.poles.clone()).collect();
    for (i, pts, s) in &sweeps {
        let Some(first) = s.violations.iter().min_by(|a, b| a.t.abs().cmp(&b.t.abs()).then(a.t.cmp(&b.t))) else {
            continue;
        };
        let eps = &cfg.eps_grid[*i];
        let below = pts
            .iter()
            .filter(|t| t.is_positive() == first.t.is_positive() && t.abs() < first.t.abs())
            .filter(|t| check_point(claim, t, eps, cfg.sin_degree) == Outcome::Holds)
            .max_by(|a, b| a.abs().cmp(&b.abs()))
            .cloned()
            .unwrap_or_else(Rat::zero);
        let shrunk = shrink(claim, eps, below, first.clone(), cfg.sin_degree);
        return Ok(FalsifyReport {
            status: FalsifyStatus::Counterexample,
            counterexample: Some(shrunk),
            poles,
            eps_checked: cfg.eps_grid.len(),
            points_checked,
            note: "counterexample re-checkable from (eps, t, error_lower_bound) alone".into(),
        });
    }
    let status = if poles.is_empty() {
        FalsifyStatus::NoCounterexampleAtBudget
    } else {
        FalsifyStatus::Pole
    };
    Ok(FalsifyReport {
        status,
        counterexample: None,
        poles,
        eps_checked: cfg.eps_grid.len(),
        points_checked,
        note: "absence of a counterexample is not a soundness proof".into(),
    })
}

fn shrink(claim: &Claim, eps: &Rat, mut holds: Rat, mut bad: Counterexample, sin_degree: u32) -> Counterexample {
    for _ in 0..SHRINK_STEPS {
        let mid = (&holds + &bad.t).half();
        if mid.is_zero() {
            break;
        }
        match check_point(claim, &mid, eps, sin_degree) {
            Outcome::Violated(e) => {
                bad = Counterexample {
                    eps: eps.clone(),
                    t: mid,
                    error_lower_bound: e,
                }
            }
            Outcome::Holds => holds = mid,
            Outcome::Pole | Outcome::Indeterminate => break,
        }
    }
    tidy(claim, eps, bad, sin_degree)
}

/// Replaces `bad.t` by the simplest rational in `[|t|, 17|t|/16]` of the same
/// sign when that point also violates.
fn tidy(claim: &Claim, eps: &Rat, bad: Counterexample, sin_degree: u32) -> Counterexample {
    let mag = bad.t.abs();
    let upper = &mag + &mag * Rat::new(1, 16);
    let simple = simplest_between(&mag, &upper);
    let t = if bad.t.is_negative() { -simple } else { simple };
    match check_point(claim, &t, eps, sin_degree) {
        Outcome::Violated(e) => Counterexample {
            eps: eps.clone(),
            t,
            error_lower_bound: e,
        },
        _ => bad,
    }
}

/// The rational with least denominator in `[a, b]`, for `0 < a <= b`.
fn simplest_between(a: &Rat, b: &Rat) -> Rat {
    let floor = Rat::from_bigint(a.numer() / a.denom());
    if &floor == a {
        return floor;
    }
    let next = &floor + Rat::one();
    if &next <= b {
        return next;
    }
    let lo = (b - &floor).recip().expect("b > floor");
    let hi = (a - &floor).recip().expect("a > floor");
    floor + simplest_between(&lo, &hi).recip().expect("positive")
}

/// Exact `lim f` at `center`: `p(c)/q(c)`, or `g(0)` for `g(t) = f(1/t)`.
pub fn check_limit_value(f: &RatFunc, center: &Center) -> Result<Rat, VerifyError> {
    match center {
        Center::Finite(c) => f
            .eval(c)
            .map_err(|_| VerifyError::PoleAtCenter(format!("denominator vanishes at {c}"))),
        Center::Infinity => f
            .infinity_substitute()
            .eval(&Rat::zero())
            .map_err(|_| VerifyError::PoleAtCenter("no finite limit at infinity".into())),
    }
}
