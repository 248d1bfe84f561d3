//! Named scenarios (coins, crib, day care, dice), each answered twice: by a
//! closed form and by the generic [`Ensemble`] pipeline. The two routes are
//! kept separate so each serves as an oracle for the other.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{QstatError, Result};
use crate::fock::{self, OccupationVector, StatisticsKind};
use crate::mixed_state::{DrawRecord, Ensemble};
use crate::rational::{self, Rational};

const BOY: usize = 0;

/// Probability that all `n` particles sit in one given level, by closed form.
pub fn all_same_state_probability(k: usize, n: u32, stats: StatisticsKind) -> Result<Rational> {
    if k == 0 {
        return Err(QstatError::NoLevels);
    }
    let inverse = |count: num_bigint::BigUint| Rational::new(BigInt::one(), BigInt::from(count));
    Ok(match stats {
        StatisticsKind::Classical => inverse(num_bigint::BigUint::from(k).pow(n)),
        StatisticsKind::BoseEinstein => inverse(fock::binomial(k as u64 + n as u64 - 1, n as u64)),
        StatisticsKind::FermiDirac if n > 1 => Rational::zero(),
        StatisticsKind::FermiDirac => inverse(fock::binomial(k as u64, n as u64)),
    })
}

/// Same quantity read off the prepared ensemble.
pub fn all_same_state_probability_pipeline(k: usize, n: u32, stats: StatisticsKind) -> Result<Rational> {
    let ensemble = Ensemble::equal_weight(k, n, stats)?;
    Ok(ensemble.probability(&OccupationVector::concentrated(k, n, 0)?))
}

/// Answers to the two crib questions.
///
/// I: a randomly picked child is a boy; is the other one a boy too?
/// II: at least one child is a boy; are both boys?
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CribAnswers {
    #[serde(rename = "question_I", with = "rational::serde_string")]
    pub question_i: Rational,
    #[serde(rename = "question_II", with = "rational::serde_string")]
    pub question_ii: Rational,
}

/// Crib answers via annihilation and presence projection on the two-child ensemble.
pub fn crib_answers(stats: StatisticsKind) -> CribAnswers {
    let prior = Ensemble::equal_weight(2, 2, stats).expect("two particles fit in two levels");
    let boy = OccupationVector::concentrated(2, 1, BOY).expect("valid level");
    let both = OccupationVector::concentrated(2, 2, BOY).expect("valid level");

    // A boy is drawn with probability 1/2 from every prior.
    let (remaining, _) = prior.condition_on_draw(BOY).expect("boy draw is possible");
    let question_i = remaining.probability(&boy);
    // Every prior admits at least one boy.
    let question_ii = prior
        .condition_on_presence(BOY, 1)
        .expect("some state holds a boy")
        .probability(&both);
    CribAnswers { question_i, question_ii }
}

/// Crib answers from `a = P(both boys)` alone: `I = a / (1/2)` and `II = a / (1 - P(both girls))`.
pub fn crib_answers_closed_form(stats: StatisticsKind) -> CribAnswers {
    let both_boys = all_same_state_probability(2, 2, stats).expect("two levels");
    let both_girls = both_boys.clone();
    CribAnswers {
        question_i: &both_boys * Rational::from_integer(BigInt::from(2)),
        question_ii: &both_boys / (Rational::one() - both_girls),
    }
}

/// Posterior probability of `m` boys among the remaining `n - 1` children after
/// a boy was drawn: `2(m+1) / (n(n+1))`, indexed by `m`.
///
/// `n = 1` yields the point mass on the empty remainder.
pub fn daycare_posterior_closed_form(n: u32) -> Result<Vec<Rational>> {
    if n == 0 {
        return Err(QstatError::EmptySystem);
    }
    let den = BigInt::from(n as u64 * (n as u64 + 1));
    Ok((0..n)
        .map(|m| Rational::new(BigInt::from(2 * (m as u64 + 1)), den.clone()))
        .collect())
}

/// The same posterior computed by conditioning the bosonic day-care ensemble.
pub fn daycare_posterior_pipeline(n: u32) -> Result<Vec<Rational>> {
    let (posterior, _) = Ensemble::equal_weight(2, n, StatisticsKind::BoseEinstein)?.condition_on_draw(BOY)?;
    let mut out = vec![Rational::zero(); n as usize];
    for (m, p) in posterior.occupancy_distribution(BOY)? {
        out[m as usize] = p;
    }
    Ok(out)
}

/// Expected number of boys remaining, `2(n-1)/3`.
pub fn daycare_mean_boys(n: u32) -> Rational {
    Rational::new(BigInt::from(2 * (n as i64 - 1)), BigInt::from(3))
}

/// Exact distribution of the level-1 fraction among the dice left after `record`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DicePosterior {
    pub distribution: Vec<(Rational, Rational)>,
    pub mean: Rational,
}

/// Finite-`n` bosonic dice posterior via the ensemble pipeline.
pub fn dice_posterior(k: usize, n: u32, record: &DrawRecord) -> Result<DicePosterior> {
    let posterior = Ensemble::equal_weight(k, n, StatisticsKind::BoseEinstein)?.condition_on_record(record)?;
    let distribution = posterior.fraction_distribution(0)?;
    let mean = distribution.iter().map(|(r, p)| r * p).sum();
    Ok(DicePosterior { distribution, mean })
}

/// Closed-form dice posterior (a Polya urn): with `a = N_1 + 1`,
/// `b = sum_{j>=2} N_j + k - 1` and `N` dice left,
/// `P(m) = C(m+a-1, m) C(N-m+b-1, N-m) / C(N+a+b-1, N)`.
pub fn dice_posterior_closed_form(k: usize, n: u32, record: &DrawRecord) -> Result<DicePosterior> {
    if k == 0 {
        return Err(QstatError::NoLevels);
    }
    if record.levels() != k {
        return Err(QstatError::LengthMismatch { expected: k, actual: record.levels() });
    }
    let drawn = record.total();
    if drawn > n {
        return Err(QstatError::RecordTooLarge { drawn, available: n });
    }
    let left = (n - drawn) as u64;
    if left == 0 {
        return Err(QstatError::EmptySystem);
    }
    let a = record.counts()[0] as u64 + 1;
    let b = record.counts()[1..].iter().map(|&c| c as u64).sum::<u64>() + k as u64 - 1;
    if b == 0 {
        // k = 1: everything stays in level 1.
        let one = Rational::one();
        return Ok(DicePosterior { distribution: vec![(one.clone(), one.clone())], mean: one });
    }
    let total = rational::from_biguint(&fock::binomial(left + a + b - 1, left));
    let distribution: Vec<_> = (0..=left)
        .map(|m| {
            let ways = fock::binomial(m + a - 1, m) * fock::binomial(left - m + b - 1, left - m);
            (rational::ratio(m, left), rational::from_biguint(&ways) / &total)
        })
        .collect();
    let mean = distribution.iter().map(|(r, p)| r * p).sum();
    Ok(DicePosterior { distribution, mean })
}
