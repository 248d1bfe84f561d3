//! Large-`n` limit of the bosonic dice posterior: a Beta law on the fraction
//! `R` of the remaining particles found in level 1.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{QstatError, Result};
use crate::fock::factorial;
use crate::mixed_state::DrawRecord;
use crate::rational::{self, Rational};
use crate::scenarios;

/// Beta(`nu1`, `nu_rest`) with integer parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BetaPosterior {
    pub nu1: u64,
    pub nu_rest: u64,
}

impl BetaPosterior {
    pub fn new(nu1: u64, nu_rest: u64) -> Result<Self> {
        if nu1 == 0 || nu_rest == 0 {
            return Err(QstatError::InvalidEnsemble(format!(
                "Beta parameters must be positive, got ({nu1}, {nu_rest})"
            )));
        }
        Ok(Self { nu1, nu_rest })
    }

    /// `nu1 = N_1 + 1` and `nu_rest = sum_{j>=2} (N_j + 1)`.
    pub fn from_record(record: &DrawRecord) -> Result<Self> {
        let counts = record.counts();
        if counts.len() < 2 {
            return Err(QstatError::LengthMismatch { expected: 2, actual: counts.len() });
        }
        let nu1 = counts[0] as u64 + 1;
        let nu_rest = counts[1..].iter().map(|&c| c as u64 + 1).sum();
        Self::new(nu1, nu_rest)
    }

    /// `B(nu1, nu_rest) = (nu1-1)! (nu_rest-1)! / (nu1+nu_rest-1)!`, exactly.
    pub fn beta_function(&self) -> Rational {
        let num = factorial(self.nu1 - 1) * factorial(self.nu_rest - 1);
        let den = factorial(self.nu1 + self.nu_rest - 1);
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    /// Density at `r`, with `0^0 = 1` at the endpoints.
    pub fn density(&self, r: f64) -> f64 {
        assert!((0.0..=1.0).contains(&r), "R = {r} outside [0, 1]");
        let normalizer = rational::to_f64(&self.beta_function().recip());
        let left = r.powi((self.nu1 - 1) as i32);
        let right = (1.0 - r).powi((self.nu_rest - 1) as i32);
        normalizer * left * right
    }

    /// `nu1 / (nu1 + nu_rest)`.
    pub fn mean(&self) -> Rational {
        rational::ratio(self.nu1, self.nu1 + self.nu_rest)
    }

    /// Raw moment `E[R^p] = prod_{i<p} (nu1 + i) / (nu1 + nu_rest + i)`.
    pub fn moment(&self, p: u32) -> Rational {
        (0..p as u64).fold(Rational::one(), |acc, i| {
            acc * rational::ratio(self.nu1 + i, self.nu1 + self.nu_rest + i)
        })
    }
}

pub fn beta_density(bp: &BetaPosterior, r: f64) -> f64 {
    bp.density(r)
}

pub fn beta_mean(bp: &BetaPosterior) -> Rational {
    bp.mean()
}

pub fn beta_moment(bp: &BetaPosterior, p: u32) -> Rational {
    bp.moment(p)
}

/// Sup over support points `R = m/N` of `|(N+1) P_exact(m) - f(R)|`, where
/// `N` dice remain after `record` and `f` is the limiting Beta density.
pub fn finite_n_deviation(k: usize, n: u32, record: &DrawRecord) -> Result<f64> {
    let bp = BetaPosterior::from_record(record)?;
    let exact = scenarios::dice_posterior(k, n, record)?;
    let left = n - record.total();
    let scale = Rational::from_integer(BigInt::from(left + 1));
    let mut worst = 0.0f64;
    for (r, p) in &exact.distribution {
        let mass = (&scale * p).to_f64().unwrap_or(f64::NAN);
        let gap = (mass - bp.density(rational::to_f64(r))).abs();
        worst = worst.max(gap);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn bp(a: u64, b: u64) -> BetaPosterior {
        BetaPosterior::new(a, b).unwrap()
    }

    #[test]
    fn limiting_daycare_densities() {
        for i in 0..=20 {
            let r = i as f64 / 20.0;
            assert!((bp(1, 1).density(r) - 1.0).abs() < 1e-15);
            assert!((bp(2, 1).density(r) - 2.0 * r).abs() < 1e-15);
        }
    }

    #[test]
    fn empty_record_density_is_normalized() {
        for k in 2..=6u64 {
            let b = BetaPosterior::from_record(&DrawRecord::empty(k as usize)).unwrap();
            assert_eq!(b, bp(1, k - 1));
            for i in 0..=10 {
                let r = i as f64 / 10.0;
                let expected = (k - 1) as f64 * (1.0 - r).powi(k as i32 - 2);
                assert!((b.density(r) - expected).abs() < 1e-12, "k={k} r={r}");
            }
        }
    }

    #[test]
    fn means_and_moments() {
        assert_eq!(bp(1, 1).mean(), ratio(1, 2));
        assert_eq!(bp(2, 1).mean(), ratio(2, 3));
        assert_eq!(bp(2, 2).mean(), ratio(1, 2));
        assert_eq!(bp(1, 1).moment(2), ratio(1, 3));
        assert_eq!(bp(2, 1).moment(2), ratio(1, 2));
        assert_eq!(bp(1, 1).moment(1), ratio(1, 2));
        assert_eq!(bp(5, 3).moment(0), ratio(1, 1));
        for a in 1..=6 {
            for b in 1..=6 {
                assert_eq!(bp(a, b).moment(1), bp(a, b).mean());
            }
        }
    }

    #[test]
    fn spin_one_record_parameters() {
        let b = BetaPosterior::from_record(&DrawRecord::new(vec![1, 0, 0]).unwrap()).unwrap();
        assert_eq!(b, bp(2, 2));
        assert_eq!(b.mean(), ratio(1, 2));
    }

    #[test]
    fn beta_function_small_values() {
        assert_eq!(bp(1, 1).beta_function(), ratio(1, 1));
        assert_eq!(bp(2, 1).beta_function(), ratio(1, 2));
        assert_eq!(bp(2, 2).beta_function(), ratio(1, 6));
        assert_eq!(bp(3, 4).beta_function(), ratio(2 * 6, 720));
    }

    #[test]
    fn invalid_parameters() {
        assert!(BetaPosterior::new(0, 1).is_err());
        assert!(BetaPosterior::from_record(&DrawRecord::empty(1)).is_err());
    }

    #[test]
    fn flat_prior_has_zero_deviation() {
        for n in [1, 5, 50, 400] {
            assert_eq!(finite_n_deviation(2, n, &DrawRecord::empty(2)).unwrap(), 0.0);
        }
    }

    #[test]
    fn one_boy_deviation_is_two_over_n_plus_one() {
        // (n)(2(m+1)/(n(n+1))) - 2m/(n-1) peaks at the endpoints with 2/(n+1).
        let rec = DrawRecord::new(vec![1, 0]).unwrap();
        for n in [10u32, 100, 2000] {
            let d = finite_n_deviation(2, n, &rec).unwrap();
            assert!((d - 2.0 / (n as f64 + 1.0)).abs() < 1e-12, "n={n} d={d}");
        }
        assert!(finite_n_deviation(2, 2000, &rec).unwrap() <= 0.01);
    }

    #[test]
    fn deviation_halves_when_n_doubles() {
        for counts in [vec![1, 0], vec![0, 1], vec![2, 1]] {
            let rec = DrawRecord::new(counts).unwrap();
            let d: Vec<f64> = [500, 1000, 2000]
                .iter()
                .map(|&n| finite_n_deviation(2, n, &rec).unwrap())
                .collect();
            for w in d.windows(2) {
                let ratio = w[1] / w[0];
                assert!((0.375..=0.625).contains(&ratio), "{rec}: ratio {ratio}");
            }
        }
    }
}
