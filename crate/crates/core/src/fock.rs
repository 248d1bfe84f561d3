//! Occupation-number basis: state spaces of `n` identical particles in `k`
//! levels and the counting that goes with them.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{QstatError, Result};
use crate::rational::Rational;

/// Default upper bound on the number of occupation vectors materialized at once.
pub const DEFAULT_STATE_CAP: u64 = 10_000_000;

/// How identical particles are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StatisticsKind {
    /// Distinguishable particles: labeled outcomes are equally likely.
    Classical,
    /// Bosons: every occupation vector is one state.
    #[serde(rename = "be")]
    BoseEinstein,
    /// Fermions: occupation numbers are 0 or 1.
    #[serde(rename = "fd")]
    FermiDirac,
}

impl StatisticsKind {
    pub const ALL: [StatisticsKind; 3] = [
        StatisticsKind::Classical,
        StatisticsKind::BoseEinstein,
        StatisticsKind::FermiDirac,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StatisticsKind::Classical => "classical",
            StatisticsKind::BoseEinstein => "be",
            StatisticsKind::FermiDirac => "fd",
        }
    }

    /// Largest count a single level may hold, if bounded.
    fn level_capacity(self) -> Option<u32> {
        match self {
            StatisticsKind::FermiDirac => Some(1),
            _ => None,
        }
    }
}

impl fmt::Display for StatisticsKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StatisticsKind {
    type Err = QstatError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "classical" | "cl" | "mb" => Ok(StatisticsKind::Classical),
            "be" | "bose" | "bose-einstein" | "boson" | "bosons" => Ok(StatisticsKind::BoseEinstein),
            "fd" | "fermi" | "fermi-dirac" | "fermion" | "fermions" => Ok(StatisticsKind::FermiDirac),
            _ => Err(QstatError::UnknownStatistics(s.to_string())),
        }
    }
}

/// Particle count per level; the label of a diagonal Fock-basis state.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OccupationVector(Vec<u32>);

impl OccupationVector {
    pub fn new(counts: Vec<u32>) -> Result<Self> {
        if counts.is_empty() {
            return Err(QstatError::NoLevels);
        }
        Ok(Self(counts))
    }

    /// All `n` particles in `level`.
    pub fn concentrated(k: usize, n: u32, level: usize) -> Result<Self> {
        check_level(level, k)?;
        let mut counts = vec![0; k];
        counts[level] = n;
        Self::new(counts)
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn levels(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn count(&self, level: usize) -> u32 {
        self.0[level]
    }

    pub fn max_count(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn is_allowed(&self, stats: StatisticsKind) -> bool {
        match stats.level_capacity() {
            Some(cap) => self.max_count() <= cap,
            None => true,
        }
    }

    /// Copy with one particle removed from `level`; `None` if the level is empty.
    pub fn without_one(&self, level: usize) -> Option<Self> {
        let mut counts = self.0.clone();
        let slot = counts.get_mut(level)?;
        *slot = slot.checked_sub(1)?;
        Some(Self(counts))
    }

    /// Copy with `removed[j]` particles taken out of each level `j`.
    pub fn without(&self, removed: &[u32]) -> Option<Self> {
        if removed.len() != self.0.len() {
            return None;
        }
        let counts = self
            .0
            .iter()
            .zip(removed)
            .map(|(&m, &r)| m.checked_sub(r))
            .collect::<Option<Vec<_>>>()?;
        Some(Self(counts))
    }

    /// Relabels levels: entry `j` of the result is entry `perm[j]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self(perm.iter().map(|&p| self.0[p]).collect())
    }
}

impl From<OccupationVector> for Vec<u32> {
    fn from(value: OccupationVector) -> Self {
        value.0
    }
}

impl fmt::Display for OccupationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

pub(crate) fn check_level(level: usize, k: usize) -> Result<()> {
    if level >= k {
        return Err(QstatError::LevelOutOfRange { level, k });
    }
    Ok(())
}

fn check_space(k: usize, n: u32, stats: StatisticsKind) -> Result<()> {
    if k == 0 {
        return Err(QstatError::NoLevels);
    }
    if stats == StatisticsKind::FermiDirac && n as usize > k {
        return Err(QstatError::FermionOverfill { k, n });
    }
    Ok(())
}

/// Binomial coefficient C(n, r), zero when r > n.
pub fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Number of occupation vectors with `n` particles in `k` levels.
fn support_size(k: usize, n: u32, stats: StatisticsKind) -> BigUint {
    match stats {
        StatisticsKind::FermiDirac => binomial(k as u64, n as u64),
        _ => binomial(k as u64 + n as u64 - 1, n as u64),
    }
}

/// Number of distinct outcomes: `k^n` labeled outcomes for classical particles,
/// `C(k+n-1, n)` for bosons and `C(k, n)` for fermions.
pub fn state_count(k: usize, n: u32, stats: StatisticsKind) -> Result<BigUint> {
    check_space(k, n, stats)?;
    Ok(match stats {
        StatisticsKind::Classical => BigUint::from(k).pow(n),
        _ => support_size(k, n, stats),
    })
}

/// Lists every allowed occupation vector, lexicographically descending.
///
/// Classical particles share the bosonic support; only their weights differ.
pub fn enumerate_support(k: usize, n: u32, stats: StatisticsKind) -> Result<Vec<OccupationVector>> {
    enumerate_support_capped(k, n, stats, DEFAULT_STATE_CAP)
}

pub fn enumerate_support_capped(
    k: usize,
    n: u32,
    stats: StatisticsKind,
    cap: u64,
) -> Result<Vec<OccupationVector>> {
    check_space(k, n, stats)?;
    let size = support_size(k, n, stats);
    let len = match size.to_u64() {
        Some(len) if len <= cap => len as usize,
        _ => {
            return Err(QstatError::StateSpaceTooLarge {
                count: size.to_string(),
                cap,
            })
        }
    };
    let mut out = Vec::with_capacity(len);
    let mut counts = vec![0u32; k];
    fill_levels(&mut counts, 0, n, stats.level_capacity(), &mut out);
    debug_assert_eq!(out.len(), len);
    Ok(out)
}

fn fill_levels(
    counts: &mut [u32],
    level: usize,
    remaining: u32,
    capacity: Option<u32>,
    out: &mut Vec<OccupationVector>,
) {
    let k = counts.len();
    if level + 1 == k {
        if capacity.is_none_or(|cap| remaining <= cap) {
            counts[level] = remaining;
            out.push(OccupationVector(counts.to_vec()));
        }
        return;
    }
    let top = capacity.map_or(remaining, |cap| remaining.min(cap));
    for c in (0..=top).rev() {
        counts[level] = c;
        fill_levels(counts, level + 1, remaining - c, capacity, out);
    }
    counts[level] = 0;
}

/// Support size as a machine integer, `None` on overflow.
pub fn support_size_u128(k: usize, n: u32, stats: StatisticsKind) -> Option<u128> {
    if k == 0 {
        return None;
    }
    match stats {
        StatisticsKind::FermiDirac => binomial_u128(k as u64, n as u64),
        _ => binomial_u128(k as u64 + n as u64 - 1, n as u64),
    }
}

fn binomial_u128(n: u64, r: u64) -> Option<u128> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r as u128 {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc = acc.checked_mul(n as u128 - i)? / (i + 1);
    }
    Some(acc)
}

/// Occupation vector at position `index` of [`enumerate_support`] order.
pub fn unrank(k: usize, n: u32, stats: StatisticsKind, mut index: u128) -> Result<OccupationVector> {
    check_space(k, n, stats)?;
    let total = support_size_u128(k, n, stats).ok_or_else(|| QstatError::StateSpaceTooLarge {
        count: support_size(k, n, stats).to_string(),
        cap: u64::MAX,
    })?;
    assert!(index < total, "rank {index} out of range for {total} states");
    let capacity = stats.level_capacity();
    let mut counts = vec![0u32; k];
    let mut remaining = n;
    for (level, slot) in counts.iter_mut().enumerate().take(k - 1) {
        let top = capacity.map_or(remaining, |cap| remaining.min(cap));
        let tail_levels = k - level - 1;
        for c in (0..=top).rev() {
            // Tail sizes never exceed the full support size, so they fit.
            let block = support_size_u128(tail_levels, remaining - c, stats).unwrap_or(0);
            if index < block {
                *slot = c;
                remaining -= c;
                break;
            }
            index -= block;
        }
    }
    counts[k - 1] = remaining;
    Ok(OccupationVector(counts))
}

/// Inverse of [`unrank`].
pub fn rank(vector: &OccupationVector, stats: StatisticsKind) -> Result<u128> {
    let k = vector.levels();
    let n = vector.total();
    check_space(k, n, stats)?;
    if !vector.is_allowed(stats) {
        return Err(QstatError::InvalidEnsemble(format!(
            "{vector} is not an allowed {stats} state"
        )));
    }
    let capacity = stats.level_capacity();
    let mut index: u128 = 0;
    let mut remaining = n;
    for level in 0..k - 1 {
        let top = capacity.map_or(remaining, |cap| remaining.min(cap));
        let c = vector.count(level);
        for above in (c + 1)..=top {
            index += support_size_u128(k - level - 1, remaining - above, stats).unwrap_or(0);
        }
        remaining -= c;
    }
    Ok(index)
}

/// Classical probability of an occupation class: `n! / (prod m_j!) / k^n`.
pub fn multinomial_weight(vector: &OccupationVector) -> Rational {
    let k = vector.levels() as u64;
    let n = vector.total() as u64;
    let arrangements = vector
        .counts()
        .iter()
        .fold(factorial(n), |acc, &m| acc / factorial(m as u64));
    Rational::new(
        BigInt::from(arrangements),
        BigInt::from(BigUint::from(k).pow(n as u32)),
    )
}
