//! Exact probabilities for `n` identical particles in `k` levels under
//! classical, Bose-Einstein and Fermi-Dirac statistics.
//!
//! * [`fock`]: occupation vectors, state-space enumeration and counting.
//! * [`mixed_state`]: diagonal density matrices and Bayesian conditioning on
//!   presence or on randomly drawn particles.
//! * [`scenarios`]: coins, crib, day care and dice, in closed form and via the
//!   generic machinery.
//! * [`asymptotics`]: the large-`n` Beta law for the fraction in one level.
//! * [`montecarlo`]: a sampling oracle that checks the exact results.
//!
//! All probabilities are exact rationals; floating point only appears in
//! densities and in the sampling statistics.

pub mod asymptotics;
pub mod error;
pub mod fock;
pub mod mixed_state;
pub mod montecarlo;
pub mod rational;
pub mod scenarios;

pub use asymptotics::{finite_n_deviation, BetaPosterior};
pub use error::{QstatError, Result};
pub use fock::{enumerate_support, multinomial_weight, state_count, OccupationVector, StatisticsKind};
pub use mixed_state::{DrawRecord, Ensemble};
pub use montecarlo::{EmpiricalDistribution, Scenario, SimConfig, VerifyReport};
pub use rational::Rational;
