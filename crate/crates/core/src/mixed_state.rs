//! Diagonal density matrices over occupation vectors and Bayesian conditioning.
//!
//! An [`Ensemble`] stores only the diagonal of the density matrix: every
//! probability of interest is a diagonal coefficient in the occupation basis.
//! Removing a randomly chosen particle found in level `j` acts like the
//! annihilation operator `a_j`; the amplitude `sqrt(m_j)` squares to the weight
//! `m_j`, which is also the Bayes likelihood `m_j / n` up to a constant.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{QstatError, Result};
use crate::fock::{self, check_level, OccupationVector, StatisticsKind};
use crate::rational::{self, Rational};

/// Observed levels of `n'` particles drawn without replacement.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DrawRecord(Vec<u32>);

impl DrawRecord {
    pub fn new(counts: Vec<u32>) -> Result<Self> {
        if counts.is_empty() {
            return Err(QstatError::NoLevels);
        }
        Ok(Self(counts))
    }

    pub fn empty(k: usize) -> Self {
        Self(vec![0; k])
    }

    /// A single particle observed in `level`.
    pub fn single(k: usize, level: usize) -> Result<Self> {
        check_level(level, k)?;
        let mut counts = vec![0; k];
        counts[level] = 1;
        Ok(Self(counts))
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

    /// Levels of the draws, expanded one entry per particle in level order.
    pub fn draws(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(level, &c)| std::iter::repeat_n(level, c as usize))
            .collect()
    }
}

impl FromStr for DrawRecord {
    type Err = String;

    /// Parses `N1,N2,...,Nk`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let counts = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|_| format!("invalid record entry '{}'", part.trim()))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        DrawRecord::new(counts).map_err(|e| e.to_string())
    }
}

impl fmt::Display for DrawRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Exact probability distribution over occupation vectors of `n` particles in `k` levels.
///
/// Weights are strictly positive and sum to exactly one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "EnsembleDoc", into = "EnsembleDoc")]
pub struct Ensemble {
    k: usize,
    n: u32,
    stats: StatisticsKind,
    weights: BTreeMap<OccupationVector, Rational>,
}

impl Ensemble {
    /// All allowed states equally likely; for classical particles the labeled
    /// outcomes are equally likely, which gives multinomial weights.
    pub fn equal_weight(k: usize, n: u32, stats: StatisticsKind) -> Result<Self> {
        let support = fock::enumerate_support(k, n, stats)?;
        let weights = match stats {
            StatisticsKind::Classical => support
                .into_iter()
                .map(|v| {
                    let w = fock::multinomial_weight(&v);
                    (v, w)
                })
                .collect(),
            _ => {
                let uniform = Rational::new(BigInt::one(), BigInt::from(support.len()));
                support.into_iter().map(|v| (v, uniform.clone())).collect()
            }
        };
        Ok(Self { k, n, stats, weights })
    }

    /// Builds an ensemble from explicit weights, checking every invariant.
    pub fn from_weights<I>(k: usize, n: u32, stats: StatisticsKind, weights: I) -> Result<Self>
    where
        I: IntoIterator<Item = (OccupationVector, Rational)>,
    {
        if k == 0 {
            return Err(QstatError::NoLevels);
        }
        let mut map = BTreeMap::new();
        for (v, p) in weights {
            if v.levels() != k {
                return Err(QstatError::LengthMismatch { expected: k, actual: v.levels() });
            }
            if v.total() != n {
                return Err(QstatError::InvalidEnsemble(format!("{v} does not hold {n} particles")));
            }
            if !v.is_allowed(stats) {
                return Err(QstatError::InvalidEnsemble(format!("{v} violates {stats} occupancy")));
            }
            if p <= Rational::zero() {
                return Err(QstatError::InvalidEnsemble(format!("non-positive weight on {v}")));
            }
            if map.insert(v.clone(), p).is_some() {
                return Err(QstatError::InvalidEnsemble(format!("duplicate state {v}")));
            }
        }
        let total = rational::sum(map.values());
        if !total.is_one() {
            return Err(QstatError::InvalidEnsemble(format!(
                "weights sum to {}",
                rational::format(&total)
            )));
        }
        Ok(Self { k, n, stats, weights: map })
    }

    /// Drops zero weights and rescales the rest to sum to one.
    fn normalized(
        k: usize,
        n: u32,
        stats: StatisticsKind,
        raw: impl IntoIterator<Item = (OccupationVector, Rational)>,
    ) -> Option<(Self, Rational)> {
        let mut weights: BTreeMap<OccupationVector, Rational> = BTreeMap::new();
        for (v, w) in raw {
            if w.is_zero() {
                continue;
            }
            *weights.entry(v).or_insert_with(Rational::zero) += w;
        }
        let total = rational::sum(weights.values());
        if total.is_zero() {
            return None;
        }
        for w in weights.values_mut() {
            *w /= &total;
        }
        Some((Self { k, n, stats, weights }, total))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn stats(&self) -> StatisticsKind {
        self.stats
    }

    /// Number of states with nonzero weight.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&OccupationVector, &Rational)> {
        self.weights.iter()
    }

    pub fn probability(&self, state: &OccupationVector) -> Rational {
        self.weights.get(state).cloned().unwrap_or_else(Rational::zero)
    }

    /// Keeps states with at least `minimum` particles in `level` and renormalizes.
    pub fn condition_on_presence(&self, level: usize, minimum: u32) -> Result<Self> {
        check_level(level, self.k)?;
        if minimum == 0 {
            return Err(QstatError::ZeroMinimum);
        }
        let kept = self
            .weights
            .iter()
            .filter(|(v, _)| v.count(level) >= minimum)
            .map(|(v, w)| (v.clone(), w.clone()));
        Self::normalized(self.k, self.n, self.stats, kept)
            .map(|(e, _)| e)
            .ok_or(QstatError::EmptyConditioning { level, minimum })
    }

    /// Probability that a uniformly random particle is found in `level`.
    pub fn draw_probability(&self, level: usize) -> Result<Rational> {
        check_level(level, self.k)?;
        if self.n == 0 {
            return Err(QstatError::EmptySystem);
        }
        let hits: Rational = self
            .weights
            .iter()
            .map(|(v, w)| w * Rational::from_integer(BigInt::from(v.count(level))))
            .sum();
        Ok(hits / Rational::from_integer(BigInt::from(self.n)))
    }

    /// Removes one random particle, observed in `level`.
    ///
    /// Returns the posterior over the remaining `n - 1` particles together with
    /// the prior probability of the observation.
    pub fn condition_on_draw(&self, level: usize) -> Result<(Self, Rational)> {
        check_level(level, self.k)?;
        if self.n == 0 {
            return Err(QstatError::EmptySystem);
        }
        let raw = self.weights.iter().filter_map(|(v, w)| {
            let m = v.count(level);
            let rest = v.without_one(level)?;
            Some((rest, w * Rational::from_integer(BigInt::from(m))))
        });
        let (posterior, mass) =
            Self::normalized(self.k, self.n - 1, self.stats, raw).ok_or(QstatError::ZeroProbabilityDraw)?;
        let n = Rational::from_integer(BigInt::from(self.n));
        Ok((posterior, mass / n))
    }

    /// Conditions on a whole record of draws at once.
    ///
    /// Drawing `N_j` particles from each level `j` in some fixed order has
    /// likelihood `prod_j m_j (m_j - 1) ... (m_j - N_j + 1)` divided by a
    /// state-independent constant, so the result does not depend on draw order.
    pub fn condition_on_record(&self, record: &DrawRecord) -> Result<Self> {
        if record.levels() != self.k {
            return Err(QstatError::LengthMismatch { expected: self.k, actual: record.levels() });
        }
        let drawn = record.total();
        if drawn > self.n {
            return Err(QstatError::RecordTooLarge { drawn, available: self.n });
        }
        if drawn == 0 {
            return Ok(self.clone());
        }
        let raw = self.weights.iter().filter_map(|(v, w)| {
            let rest = v.without(record.counts())?;
            let ways = v
                .counts()
                .iter()
                .zip(record.counts())
                .fold(BigInt::one(), |acc, (&m, &r)| acc * falling_factorial(m, r));
            Some((rest, w * Rational::from_integer(ways)))
        });
        Self::normalized(self.k, self.n - drawn, self.stats, raw)
            .map(|(e, _)| e)
            .ok_or(QstatError::ZeroProbabilityDraw)
    }

    /// Probability of observing `record` (as unordered counts) when drawing
    /// `record.total()` particles without replacement.
    pub fn record_probability(&self, record: &DrawRecord) -> Result<Rational> {
        if record.levels() != self.k {
            return Err(QstatError::LengthMismatch { expected: self.k, actual: record.levels() });
        }
        let drawn = record.total();
        if drawn > self.n {
            return Err(QstatError::RecordTooLarge { drawn, available: self.n });
        }
        let denominator = rational::from_biguint(&fock::binomial(self.n as u64, drawn as u64));
        let hits: Rational = self
            .weights
            .iter()
            .map(|(v, w)| {
                let ways = v
                    .counts()
                    .iter()
                    .zip(record.counts())
                    .map(|(&m, &r)| fock::binomial(m as u64, r as u64))
                    .fold(num_bigint::BigUint::one(), |acc, c| acc * c);
                w * rational::from_biguint(&ways)
            })
            .sum();
        Ok(hits / denominator)
    }

    /// Marginal distribution of the count in `level`, ascending in the count.
    pub fn occupancy_distribution(&self, level: usize) -> Result<Vec<(u32, Rational)>> {
        check_level(level, self.k)?;
        let mut marginal: BTreeMap<u32, Rational> = BTreeMap::new();
        for (v, w) in &self.weights {
            *marginal.entry(v.count(level)).or_insert_with(Rational::zero) += w;
        }
        Ok(marginal.into_iter().collect())
    }

    /// Distribution of `R = m_level / n`, ascending in `R`.
    pub fn fraction_distribution(&self, level: usize) -> Result<Vec<(Rational, Rational)>> {
        if self.n == 0 {
            return Err(QstatError::EmptySystem);
        }
        let n = BigInt::from(self.n);
        Ok(self
            .occupancy_distribution(level)?
            .into_iter()
            .map(|(m, p)| (Rational::new(BigInt::from(m), n.clone()), p))
            .collect())
    }

    pub fn expectation_fraction(&self, level: usize) -> Result<Rational> {
        Ok(self
            .fraction_distribution(level)?
            .iter()
            .map(|(r, p)| r * p)
            .sum())
    }

    /// Relabels levels: level `j` of the result is level `perm[j]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.k];
        if perm.len() != self.k {
            return Err(QstatError::LengthMismatch { expected: self.k, actual: perm.len() });
        }
        for &p in perm {
            check_level(p, self.k)?;
            if std::mem::replace(&mut seen[p], true) {
                return Err(QstatError::InvalidEnsemble(format!("{perm:?} is not a permutation")));
            }
        }
        let weights = self
            .weights
            .iter()
            .map(|(v, w)| (v.permuted(perm), w.clone()))
            .collect();
        Ok(Self { weights, ..self.clone() })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("ensemble serializes")
    }
}

fn falling_factorial(m: u32, r: u32) -> BigInt {
    if r > m {
        return BigInt::zero();
    }
    (0..r).fold(BigInt::one(), |acc, i| acc * (m - i))
}

/// Canonical JSON form: `{k, n, stats, weights: [{counts, p: "num/den"}]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct EnsembleDoc {
    k: usize,
    n: u32,
    stats: StatisticsKind,
    weights: Vec<WeightDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct WeightDoc {
    counts: Vec<u32>,
    #[serde(with = "rational::serde_string")]
    p: Rational,
}

impl From<Ensemble> for EnsembleDoc {
    fn from(e: Ensemble) -> Self {
        Self {
            k: e.k,
            n: e.n,
            stats: e.stats,
            weights: e
                .weights
                .into_iter()
                .rev()
                .map(|(v, p)| WeightDoc { counts: v.into(), p })
                .collect(),
        }
    }
}

impl TryFrom<EnsembleDoc> for Ensemble {
    type Error = QstatError;

    fn try_from(doc: EnsembleDoc) -> Result<Self> {
        let weights = doc
            .weights
            .into_iter()
            .map(|w| Ok((OccupationVector::new(w.counts)?, w.p)))
            .collect::<Result<Vec<_>>>()?;
        Ensemble::from_weights(doc.k, doc.n, doc.stats, weights)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use StatisticsKind::*;

    fn ov(c: &[u32]) -> OccupationVector {
        OccupationVector::new(c.to_vec()).unwrap()
    }

    fn assert_weights(e: &Ensemble, expected: &[(&[u32], Rational)]) {
        assert_eq!(e.len(), expected.len(), "{e:?}");
        for (c, p) in expected {
            assert_eq!(&e.probability(&ov(c)), p, "state {c:?}");
        }
    }

    #[test]
    fn prepared_two_coin_ensembles() {
        let be = Ensemble::equal_weight(2, 2, BoseEinstein).unwrap();
        assert_weights(&be, &[(&[2, 0], ratio(1, 3)), (&[1, 1], ratio(1, 3)), (&[0, 2], ratio(1, 3))]);
        let cl = Ensemble::equal_weight(2, 2, Classical).unwrap();
        assert_weights(&cl, &[(&[2, 0], ratio(1, 4)), (&[1, 1], ratio(1, 2)), (&[0, 2], ratio(1, 4))]);
        for n in 0..=12u32 {
            let e = Ensemble::equal_weight(2, n, BoseEinstein).unwrap();
            assert_eq!(e.len() as u32, n + 1);
            assert!(e.iter().all(|(_, p)| *p == ratio(1, n as u64 + 1)));
        }
    }

    #[test]
    fn crib_presence_projection() {
        let be = Ensemble::equal_weight(2, 2, BoseEinstein).unwrap();
        let projected = be.condition_on_presence(0, 1).unwrap();
        assert_weights(&projected, &[(&[2, 0], ratio(1, 2)), (&[1, 1], ratio(1, 2))]);
        assert_eq!(projected.n(), 2);

        let cl = Ensemble::equal_weight(2, 2, Classical).unwrap();
        let projected = cl.condition_on_presence(0, 1).unwrap();
        assert_weights(&projected, &[(&[2, 0], ratio(1, 3)), (&[1, 1], ratio(2, 3))]);

        let fd = Ensemble::equal_weight(2, 2, FermiDirac).unwrap();
        assert_eq!(
            fd.condition_on_presence(0, 2),
            Err(QstatError::EmptyConditioning { level: 0, minimum: 2 })
        );
        assert_eq!(fd.condition_on_presence(0, 0), Err(QstatError::ZeroMinimum));
    }

    #[test]
    fn crib_annihilation() {
        let be = Ensemble::equal_weight(2, 2, BoseEinstein).unwrap();
        let (post, p) = be.condition_on_draw(0).unwrap();
        assert_eq!(p, ratio(1, 2));
        assert_weights(&post, &[(&[1, 0], ratio(2, 3)), (&[0, 1], ratio(1, 3))]);

        let cl = Ensemble::equal_weight(2, 2, Classical).unwrap();
        let (post, _) = cl.condition_on_draw(0).unwrap();
        assert_weights(&post, &[(&[1, 0], ratio(1, 2)), (&[0, 1], ratio(1, 2))]);

        let fd = Ensemble::equal_weight(2, 2, FermiDirac).unwrap();
        let (post, _) = fd.condition_on_draw(0).unwrap();
        assert_weights(&post, &[(&[0, 1], ratio(1, 1))]);
        assert_eq!(post.probability(&ov(&[1, 0])), ratio(0, 1));
    }

    #[test]
    fn impossible_draw_is_an_error() {
        let e = Ensemble::from_weights(2, 2, BoseEinstein, [(ov(&[0, 2]), ratio(1, 1))]).unwrap();
        assert_eq!(e.condition_on_draw(0), Err(QstatError::ZeroProbabilityDraw));
        let empty = Ensemble::equal_weight(2, 0, BoseEinstein).unwrap();
        assert_eq!(empty.condition_on_draw(0), Err(QstatError::EmptySystem));
        assert!(matches!(e.condition_on_draw(5), Err(QstatError::LevelOutOfRange { .. })));
    }

    #[test]
    fn record_posterior_three_bosons() {
        // Brute force: prior 1/4 on m_B in {0..3}; posterior on m_B proportional
        // to m_B, i.e. {1: 1/6, 2: 2/6, 3: 3/6}; then one boy removed.
        let mut brute = BTreeMap::new();
        let norm: u64 = (0..=3).sum();
        for m in 1..=3u32 {
            brute.insert(ov(&[m - 1, 3 - m]), ratio(m as u64, norm));
        }
        let e = Ensemble::equal_weight(2, 3, BoseEinstein).unwrap();
        let post = e.condition_on_record(&DrawRecord::new(vec![1, 0]).unwrap()).unwrap();
        assert_eq!(post.weights, brute);
        assert_weights(&post, &[(&[2, 0], ratio(1, 2)), (&[1, 1], ratio(1, 3)), (&[0, 2], ratio(1, 6))]);
    }

    #[test]
    fn empty_record_is_identity() {
        for stats in StatisticsKind::ALL {
            let e = Ensemble::equal_weight(3, 3, stats).unwrap();
            assert_eq!(e.condition_on_record(&DrawRecord::empty(3)).unwrap(), e);
        }
    }

    #[test]
    fn drawing_every_fermion_leaves_vacuum() {
        let e = Ensemble::equal_weight(3, 2, FermiDirac).unwrap();
        let post = e.condition_on_record(&DrawRecord::new(vec![1, 1, 0]).unwrap()).unwrap();
        assert_eq!(post.n(), 0);
        assert_weights(&post, &[(&[0, 0, 0], ratio(1, 1))]);
        assert_eq!(
            e.condition_on_record(&DrawRecord::new(vec![2, 0, 0]).unwrap()),
            Err(QstatError::ZeroProbabilityDraw)
        );
        assert!(matches!(
            e.condition_on_record(&DrawRecord::new(vec![1, 1, 1]).unwrap()),
            Err(QstatError::RecordTooLarge { drawn: 3, available: 2 })
        ));
        assert!(matches!(
            e.condition_on_record(&DrawRecord::new(vec![1, 1]).unwrap()),
            Err(QstatError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn fraction_distributions() {
        let be = Ensemble::equal_weight(2, 4, BoseEinstein).unwrap();
        let dist = be.fraction_distribution(0).unwrap();
        let expected: Vec<_> = (0..=4).map(|m| (ratio(m, 4), ratio(1, 5))).collect();
        assert_eq!(dist, expected);

        let cl = Ensemble::equal_weight(2, 2, Classical).unwrap();
        assert_eq!(
            cl.fraction_distribution(0).unwrap(),
            vec![(ratio(0, 1), ratio(1, 4)), (ratio(1, 2), ratio(1, 2)), (ratio(1, 1), ratio(1, 4))]
        );
        let fd = Ensemble::equal_weight(2, 2, FermiDirac).unwrap();
        assert_eq!(fd.fraction_distribution(0).unwrap(), vec![(ratio(1, 2), ratio(1, 1))]);
        let vacuum = Ensemble::equal_weight(2, 0, FermiDirac).unwrap();
        assert_eq!(vacuum.fraction_distribution(0), Err(QstatError::EmptySystem));
    }

    #[test]
    fn daycare_expectation_is_two_thirds() {
        for n in 2..=40 {
            let (post, _) = Ensemble::equal_weight(2, n, BoseEinstein)
                .unwrap()
                .condition_on_draw(0)
                .unwrap();
            assert_eq!(post.expectation_fraction(0).unwrap(), ratio(2, 3), "n={n}");
        }
    }

    #[test]
    fn symmetric_priors_have_mean_one_half() {
        for stats in StatisticsKind::ALL {
            for n in 1..=2 {
                let e = Ensemble::equal_weight(2, n, stats).unwrap();
                assert_eq!(e.expectation_fraction(0).unwrap(), ratio(1, 2));
            }
        }
        for n in 1..=9 {
            let e = Ensemble::equal_weight(2, n, BoseEinstein).unwrap();
            assert_eq!(e.expectation_fraction(1).unwrap(), ratio(1, 2));
        }
    }

    #[test]
    fn spin_one_condensate_half_remaining() {
        let e = Ensemble::equal_weight(3, 60, BoseEinstein).unwrap();
        let post = e.condition_on_record(&DrawRecord::new(vec![1, 0, 0]).unwrap()).unwrap();
        assert_eq!(post.expectation_fraction(0).unwrap(), ratio(1, 2));
    }

    #[test]
    fn record_probability_matches_sequential_draws() {
        let e = Ensemble::equal_weight(2, 4, BoseEinstein).unwrap();
        // P(B then G) + P(G then B)
        let (after_b, p_b) = e.condition_on_draw(0).unwrap();
        let (_, p_bg) = after_b.condition_on_draw(1).unwrap();
        let (after_g, p_g) = e.condition_on_draw(1).unwrap();
        let (_, p_gb) = after_g.condition_on_draw(0).unwrap();
        let expected = p_b * p_bg + p_g * p_gb;
        let rec = DrawRecord::new(vec![1, 1]).unwrap();
        assert_eq!(e.record_probability(&rec).unwrap(), expected);
        assert_eq!(e.record_probability(&DrawRecord::empty(2)).unwrap(), ratio(1, 1));
    }

    #[test]
    fn json_round_trip() {
        let e = Ensemble::equal_weight(3, 4, Classical).unwrap();
        let text = serde_json::to_string(&e).unwrap();
        let back: Ensemble = serde_json::from_str(&text).unwrap();
        assert_eq!(back, e);

        let doc = Ensemble::equal_weight(2, 2, BoseEinstein).unwrap().to_json();
        assert_eq!(doc["stats"], "be");
        assert_eq!(doc["weights"][0]["counts"], serde_json::json!([2, 0]));
        assert_eq!(doc["weights"][0]["p"], "1/3");
    }

    #[test]
    fn json_rejects_broken_ensembles() {
        let unnormalized = r#"{"k":2,"n":2,"stats":"be","weights":[{"counts":[2,0],"p":"1/3"}]}"#;
        assert!(serde_json::from_str::<Ensemble>(unnormalized).is_err());
        let pauli = r#"{"k":2,"n":2,"stats":"fd","weights":[{"counts":[2,0],"p":"1"}]}"#;
        assert!(serde_json::from_str::<Ensemble>(pauli).is_err());
        let wrong_total = r#"{"k":2,"n":2,"stats":"be","weights":[{"counts":[1,0],"p":"1"}]}"#;
        assert!(serde_json::from_str::<Ensemble>(wrong_total).is_err());
        let zero = r#"{"k":2,"n":1,"stats":"be","weights":[{"counts":[1,0],"p":"1"},{"counts":[0,1],"p":"0"}]}"#;
        assert!(serde_json::from_str::<Ensemble>(zero).is_err());
    }

    #[test]
    fn draw_record_parsing() {
        let rec: DrawRecord = "1, 0,2".parse().unwrap();
        assert_eq!(rec.counts(), &[1, 0, 2]);
        assert_eq!(rec.total(), 3);
        assert_eq!(rec.draws(), vec![0, 2, 2]);
        assert_eq!(rec.to_string(), "1,0,2");
        assert!("1,x".parse::<DrawRecord>().is_err());
        assert!("".parse::<DrawRecord>().is_err());
    }
}
