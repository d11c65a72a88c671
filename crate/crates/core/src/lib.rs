//! Covariance-adaptive differentially private mean estimation.
//!
//! The estimator releases a trimmed mean with Gaussian noise shaped by a
//! stable covariance estimate, so its error is measured in the Mahalanobis
//! geometry of the data itself. The pipeline has two phases:
//!
//! * [`covsafe`] — iterative pair pruning that produces a covariance estimate
//!   which is insensitive to any single observation (or aborts),
//! * [`meansafe`] — group-diameter trimming followed by a Gaussian release
//!   with covariance proportional to the phase-one estimate (or abort).
//!
//! [`estimator`] wires the phases together with the noise-calibration
//! schedule ([`estimator::privmean`]) and a doubling outer loop that adapts
//! the norm threshold to the data ([`estimator::adamean`]). [`audit`] runs
//! coupled executions on adjacent datasets to empirically check the
//! stability properties the privacy argument rests on, and [`datagen`]
//! provides synthetic distributions and error metrics for experiments.

pub mod audit;
pub mod covsafe;
pub mod datagen;
pub mod error;
pub mod estimator;
pub mod extreal;
pub mod meansafe;
pub mod mech;
pub mod psd;

pub use error::{Error, Result};
pub use extreal::ExtReal;
pub use mech::Rng;
pub use psd::PsdMatrix;
