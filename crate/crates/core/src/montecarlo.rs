//! Sampling oracle for the exact engine.
//!
//! States are prepared by unranking a uniform index into the support (bosons,
//! fermions) or by independent uniform level choices (classical particles).
//! Draws remove uniformly random particles without replacement, and
//! conditioning is done by rejection on the observed draw record.
//!
//! Trials run in fixed-size chunks. Chunk `c` uses the ChaCha stream `c` of
//! the configured seed, so results are reproducible bit-for-bit regardless of
//! how rayon schedules the chunks.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{QstatError, Result};
use crate::fock::{self, OccupationVector, StatisticsKind};
use crate::mixed_state::{DrawRecord, Ensemble};
use crate::rational::{self, Rational};

/// Two-sided 99% standard normal quantile.
pub const Z_99: f64 = 2.575_829_303_548_900_4;

/// Half-width, in standard errors, of the acceptance band for sample means.
pub const MEAN_SIGMAS: f64 = 3.0;

const CHUNK: u64 = 8192;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SimConfig {
    pub k: usize,
    pub n: u32,
    pub stats: StatisticsKind,
    pub trials: u64,
    pub seed: u64,
}

impl SimConfig {
    pub fn new(k: usize, n: u32, stats: StatisticsKind, trials: u64, seed: u64) -> Result<Self> {
        let cfg = Self { k, n, stats, trials, seed };
        cfg.sampler()?;
        Ok(cfg)
    }

    fn sampler(&self) -> Result<StateSampler> {
        if self.trials == 0 {
            return Err(QstatError::NoTrials);
        }
        StateSampler::new(self.k, self.n, self.stats)
    }
}

/// Uniform sampler over one state space.
#[derive(Debug, Clone)]
struct StateSampler {
    k: usize,
    n: u32,
    stats: StatisticsKind,
    support: u128,
}

impl StateSampler {
    fn new(k: usize, n: u32, stats: StatisticsKind) -> Result<Self> {
        // Validates k and Pauli occupancy.
        fock::state_count(k, n, stats)?;
        let support = fock::support_size_u128(k, n, stats).ok_or_else(|| QstatError::StateSpaceTooLarge {
            count: "more than 2^128".into(),
            cap: u64::MAX,
        })?;
        Ok(Self { k, n, stats, support })
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> OccupationVector {
        match self.stats {
            StatisticsKind::Classical => {
                let mut counts = vec![0u32; self.k];
                for _ in 0..self.n {
                    counts[rng.random_range(0..self.k)] += 1;
                }
                OccupationVector::new(counts).expect("k >= 1")
            }
            _ => {
                let index = rng.random_range(0..self.support);
                fock::unrank(self.k, self.n, self.stats, index).expect("validated state space")
            }
        }
    }
}

/// Deterministic generator for stream `stream` of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// One prepared state: uniform over the support, or labeled-uniform for classical particles.
pub fn sample_state<R: Rng + ?Sized>(cfg: &SimConfig, rng: &mut R) -> Result<OccupationVector> {
    Ok(cfg.sampler()?.sample(rng))
}

/// Draws `count` particles uniformly without replacement.
///
/// Returns the record of observed levels and the state left behind.
pub fn draw_without_replacement<R: Rng + ?Sized>(
    state: &OccupationVector,
    count: u32,
    rng: &mut R,
) -> (DrawRecord, OccupationVector) {
    let mut left: Vec<u32> = state.counts().to_vec();
    let mut seen = vec![0u32; left.len()];
    let mut total = state.total();
    assert!(count <= total, "cannot draw {count} of {total} particles");
    for _ in 0..count {
        let mut pick = rng.random_range(0..total);
        for (level, slot) in left.iter_mut().enumerate() {
            if pick < *slot {
                *slot -= 1;
                seen[level] += 1;
                break;
            }
            pick -= *slot;
        }
        total -= 1;
    }
    (
        DrawRecord::new(seen).expect("k >= 1"),
        OccupationVector::new(left).expect("k >= 1"),
    )
}

pub fn sample_draws<R: Rng + ?Sized>(state: &OccupationVector, count: u32, rng: &mut R) -> DrawRecord {
    draw_without_replacement(state, count, rng).0
}

/// Which trials are kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Condition {
    Unconditioned,
    /// Draw `record.total()` particles and keep trials whose draws match `record`.
    Draws(DrawRecord),
    /// Keep states with at least `minimum` particles in `level`; nothing is drawn.
    Presence { level: usize, minimum: u32 },
}

impl Condition {
    fn drawn(&self) -> u32 {
        match self {
            Condition::Draws(record) => record.total(),
            _ => 0,
        }
    }
}

/// Histogram of the count left in the observed level, over accepted trials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalDistribution {
    /// Particles remaining after the conditioning draws.
    pub remaining: u32,
    /// `counts[m]` is the number of accepted trials with `m` particles left in the level.
    pub counts: Vec<u64>,
    pub accepted: u64,
    pub attempted: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalRecord {
    pub outcome: String,
    pub count: u64,
    pub freq: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl EmpiricalDistribution {
    pub fn frequency(&self, m: u32) -> f64 {
        self.counts[m as usize] as f64 / self.accepted as f64
    }

    pub fn wilson(&self, m: u32) -> (f64, f64) {
        wilson_interval(self.counts[m as usize], self.accepted, Z_99)
    }

    pub fn acceptance_rate(&self) -> f64 {
        self.accepted as f64 / self.attempted as f64
    }

    /// Sample mean of `R = m / remaining`.
    pub fn mean_fraction(&self) -> f64 {
        let n = self.remaining as f64;
        self.counts
            .iter()
            .enumerate()
            .map(|(m, &c)| c as f64 * m as f64 / n)
            .sum::<f64>()
            / self.accepted as f64
    }

    /// Standard error of [`Self::mean_fraction`].
    pub fn mean_standard_error(&self) -> f64 {
        let n = self.remaining as f64;
        let mean = self.mean_fraction();
        let second = self
            .counts
            .iter()
            .enumerate()
            .map(|(m, &c)| c as f64 * (m as f64 / n).powi(2))
            .sum::<f64>()
            / self.accepted as f64;
        let accepted = self.accepted as f64;
        let variance = (second - mean * mean).max(0.0) * accepted / (accepted - 1.0).max(1.0);
        (variance / accepted).sqrt()
    }

    pub fn records(&self) -> Vec<EmpiricalRecord> {
        (0..=self.remaining)
            .map(|m| {
                let (ci_low, ci_high) = self.wilson(m);
                EmpiricalRecord {
                    outcome: rational::format(&rational::ratio(m as u64, self.remaining as u64)),
                    count: self.counts[m as usize],
                    freq: self.frequency(m),
                    ci_low,
                    ci_high,
                }
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "accepted": self.accepted,
            "attempted": self.attempted,
            "acceptance_rate": self.acceptance_rate(),
            "records": self.records(),
        })
    }

    fn merge(mut self, other: Self) -> Self {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self.accepted += other.accepted;
        self.attempted += other.attempted;
        self
    }
}

/// Runs `cfg.trials` trials and histograms the remaining count in `level`
/// over the trials that satisfy `condition`.
pub fn estimate_conditional(cfg: &SimConfig, condition: &Condition, level: usize) -> Result<EmpiricalDistribution> {
    let sampler = cfg.sampler()?;
    fock::check_level(level, cfg.k)?;
    let drawn = condition.drawn();
    match condition {
        Condition::Draws(record) if record.levels() != cfg.k => {
            return Err(QstatError::LengthMismatch { expected: cfg.k, actual: record.levels() })
        }
        Condition::Presence { level, .. } => fock::check_level(*level, cfg.k)?,
        _ => {}
    }
    if drawn > cfg.n {
        return Err(QstatError::RecordTooLarge { drawn, available: cfg.n });
    }
    let remaining = cfg.n - drawn;
    if remaining == 0 {
        return Err(QstatError::EmptySystem);
    }
    let empty = EmpiricalDistribution {
        remaining,
        counts: vec![0; remaining as usize + 1],
        accepted: 0,
        attempted: 0,
    };
    let chunks = cfg.trials.div_ceil(CHUNK);
    let result = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = stream_rng(cfg.seed, chunk);
            let trials = CHUNK.min(cfg.trials - chunk * CHUNK);
            let mut local = empty.clone();
            for _ in 0..trials {
                let state = sampler.sample(&mut rng);
                let left = match condition {
                    Condition::Unconditioned => state,
                    Condition::Presence { level: required, minimum } => {
                        if state.count(*required) < *minimum {
                            continue;
                        }
                        state
                    }
                    Condition::Draws(record) => {
                        let (seen, left) = draw_without_replacement(&state, drawn, &mut rng);
                        if &seen != record {
                            continue;
                        }
                        left
                    }
                };
                local.counts[left.count(level) as usize] += 1;
                local.accepted += 1;
            }
            local.attempted = trials;
            local
        })
        .reduce(|| empty.clone(), EmpiricalDistribution::merge);
    if result.accepted == 0 {
        return Err(QstatError::NoAcceptedTrials { trials: cfg.trials });
    }
    Ok(result)
}

/// Wilson score interval for `successes` out of `trials` at normal quantile `z`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    // The bounds are exactly 0 and 1 at the extremes; rounding would leave them off by an ulp.
    let low = if successes == 0 { 0.0 } else { (center - half).max(0.0) };
    let high = if successes == trials { 1.0 } else { (center + half).min(1.0) };
    (low, high)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChiSquareResult {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Pearson goodness-of-fit test. Adjacent bins are pooled until each pooled
/// bin expects at least five observations.
pub fn chi_square_test(observed: &[u64], expected: &[f64]) -> ChiSquareResult {
    assert_eq!(observed.len(), expected.len());
    let total: u64 = observed.iter().sum();
    let mut pooled: Vec<(f64, f64)> = Vec::new();
    let mut acc = (0.0, 0.0);
    for (&o, &p) in observed.iter().zip(expected) {
        acc.0 += o as f64;
        acc.1 += p * total as f64;
        if acc.1 >= 5.0 {
            pooled.push(acc);
            acc = (0.0, 0.0);
        }
    }
    if acc.1 > 0.0 || acc.0 > 0.0 {
        match pooled.last_mut() {
            Some(last) => {
                last.0 += acc.0;
                last.1 += acc.1;
            }
            None => pooled.push(acc),
        }
    }
    let statistic: f64 = pooled
        .iter()
        .filter(|(_, e)| *e > 0.0)
        .map(|(o, e)| (o - e).powi(2) / e)
        .sum();
    let dof = pooled.len().saturating_sub(1);
    let p_value = if dof == 0 {
        1.0
    } else {
        1.0 - ChiSquared::new(dof as f64).expect("positive dof").cdf(statistic)
    };
    ChiSquareResult { statistic, dof, p_value }
}

/// Compares the classical posterior after one draw from `level` with a fresh
/// `(n-1)`-particle classical ensemble.
pub fn classical_independence_test(k: usize, n: u32, trials: u64, seed: u64) -> Result<ChiSquareResult> {
    let cfg = SimConfig::new(k, n, StatisticsKind::Classical, trials, seed)?;
    let empirical = estimate_conditional(&cfg, &Condition::Draws(DrawRecord::single(k, 0)?), 0)?;
    let fresh = Ensemble::equal_weight(k, n - 1, StatisticsKind::Classical)?;
    let mut expected = vec![0.0; n as usize];
    for (m, p) in fresh.occupancy_distribution(0)? {
        expected[m as usize] = rational::to_f64(&p);
    }
    Ok(chi_square_test(&empirical.counts, &expected))
}

/// Scenarios covered by [`verify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    Coins,
    Crib,
    Daycare,
    Dice,
}

impl Scenario {
    pub const ALL: [Scenario; 4] = [Scenario::Coins, Scenario::Crib, Scenario::Daycare, Scenario::Dice];

    pub fn as_str(self) -> &'static str {
        match self {
            Scenario::Coins => "coins",
            Scenario::Crib => "crib",
            Scenario::Daycare => "daycare",
            Scenario::Dice => "dice",
        }
    }

    /// Parses a scenario name, or `all`.
    pub fn parse_list(name: &str) -> std::result::Result<Vec<Scenario>, String> {
        if name.eq_ignore_ascii_case("all") {
            return Ok(Self::ALL.to_vec());
        }
        name.parse().map(|s| vec![s])
    }
}

impl FromStr for Scenario {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|sc| sc.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown scenario '{s}' (expected coins, crib, daycare, dice or all)"))
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    /// Wilson 99% interval on a frequency.
    Proportion,
    /// `MEAN_SIGMAS` standard errors on a sample mean.
    Mean,
}

/// One exact-versus-empirical comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub scenario: Scenario,
    pub label: String,
    pub kind: CheckKind,
    #[serde(with = "rational::serde_string")]
    pub exact: Rational,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub accepted: u64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub min_accepted: u64,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

struct Job {
    scenario: Scenario,
    label: String,
    k: usize,
    n: u32,
    stats: StatisticsKind,
    condition: Condition,
    /// Compare every histogram bin, not only the mean.
    bins: bool,
}

fn jobs(scenarios: &[Scenario]) -> Result<Vec<Job>> {
    use StatisticsKind::*;
    let mut out = Vec::new();
    for &scenario in scenarios {
        match scenario {
            Scenario::Coins => {
                for stats in StatisticsKind::ALL {
                    out.push(Job {
                        scenario,
                        label: format!("{stats} k=2 n=2 heads"),
                        k: 2,
                        n: 2,
                        stats,
                        condition: Condition::Unconditioned,
                        bins: true,
                    });
                }
            }
            Scenario::Crib => {
                for stats in StatisticsKind::ALL {
                    out.push(Job {
                        scenario,
                        label: format!("{stats} I: boys left after a boy is drawn"),
                        k: 2,
                        n: 2,
                        stats,
                        condition: Condition::Draws(DrawRecord::single(2, 0)?),
                        bins: true,
                    });
                    out.push(Job {
                        scenario,
                        label: format!("{stats} II: boys given at least one boy"),
                        k: 2,
                        n: 2,
                        stats,
                        condition: Condition::Presence { level: 0, minimum: 1 },
                        bins: true,
                    });
                }
            }
            Scenario::Daycare => {
                for (n, bins) in [(10, true), (30, false)] {
                    out.push(Job {
                        scenario,
                        label: format!("be n={n} boys left after a boy is drawn"),
                        k: 2,
                        n,
                        stats: BoseEinstein,
                        condition: Condition::Draws(DrawRecord::single(2, 0)?),
                        bins,
                    });
                }
            }
            Scenario::Dice => {
                let cases: [(usize, u32, &[u32]); 4] = [
                    (3, 30, &[1, 0, 0]),
                    (3, 30, &[3, 0, 0]),
                    (3, 12, &[1, 1, 1]),
                    (2, 30, &[2, 1]),
                ];
                for (k, n, record) in cases {
                    let record = DrawRecord::new(record.to_vec())?;
                    out.push(Job {
                        scenario,
                        label: format!("be k={k} n={n} record {record}"),
                        k,
                        n,
                        stats: BoseEinstein,
                        condition: Condition::Draws(record),
                        bins: false,
                    });
                }
            }
        }
    }
    Ok(out)
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn run_job(job: &Job, index: u64, min_accepted: u64, seed: u64) -> Result<Vec<Check>> {
    let prior = Ensemble::equal_weight(job.k, job.n, job.stats)?;
    let (posterior, acceptance) = match &job.condition {
        Condition::Unconditioned => (prior.clone(), Rational::from_integer(1.into())),
        Condition::Draws(record) => (prior.condition_on_record(record)?, prior.record_probability(record)?),
        Condition::Presence { level, minimum } => {
            let kept = prior.condition_on_presence(*level, *minimum)?;
            let mass: Rational = prior
                .iter()
                .filter(|(v, _)| v.count(*level) >= *minimum)
                .map(|(_, p)| p.clone())
                .sum();
            (kept, mass)
        }
    };
    let acceptance = rational::to_f64(&acceptance);
    let trials = (min_accepted as f64 / acceptance * 1.05).ceil() as u64 + 64;
    let cfg = SimConfig::new(job.k, job.n, job.stats, trials, splitmix64(seed ^ splitmix64(index)))?;
    let empirical = estimate_conditional(&cfg, &job.condition, 0)?;
    let enough = empirical.accepted >= min_accepted;

    let mut checks = Vec::new();
    if job.bins {
        let marginal = posterior.occupancy_distribution(0)?;
        for m in 0..=empirical.remaining {
            let exact = marginal
                .iter()
                .find(|(count, _)| *count == m)
                .map(|(_, p)| p.clone())
                .unwrap_or_else(|| Rational::from_integer(0.into()));
            let (ci_low, ci_high) = empirical.wilson(m);
            let value = rational::to_f64(&exact);
            checks.push(Check {
                scenario: job.scenario,
                label: format!("{}: P(m={m})", job.label),
                kind: CheckKind::Proportion,
                pass: enough && ci_low <= value && value <= ci_high,
                exact,
                estimate: empirical.frequency(m),
                ci_low,
                ci_high,
                accepted: empirical.accepted,
            });
        }
    }
    let exact = posterior.expectation_fraction(0)?;
    let value = rational::to_f64(&exact);
    let estimate = empirical.mean_fraction();
    let band = MEAN_SIGMAS * empirical.mean_standard_error();
    let inside = if band > 0.0 {
        (estimate - value).abs() <= band
    } else {
        (estimate - value).abs() <= 1e-12
    };
    checks.push(Check {
        scenario: job.scenario,
        label: format!("{}: mean R", job.label),
        kind: CheckKind::Mean,
        exact,
        estimate,
        ci_low: estimate - band,
        ci_high: estimate + band,
        accepted: empirical.accepted,
        pass: enough && inside,
    });
    Ok(checks)
}

/// Simulates each scenario with at least `min_accepted` accepted trials per
/// estimate and compares every estimate with the exact engine.
pub fn verify(scenarios: &[Scenario], min_accepted: u64, seed: u64) -> Result<VerifyReport> {
    if min_accepted == 0 {
        return Err(QstatError::NoTrials);
    }
    let mut checks = Vec::new();
    for (index, job) in jobs(scenarios)?.iter().enumerate() {
        checks.extend(run_job(job, index as u64, min_accepted, seed)?);
    }
    Ok(VerifyReport { seed, min_accepted, checks })
}
