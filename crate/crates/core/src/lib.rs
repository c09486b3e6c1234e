//! Simulation and analysis library for detecting active attacks on
//! over-the-air (OtA) computation.
//!
//! In an OtA system, `K` users transmit pre-scaled analog samples
//! simultaneously; the multiple-access channel sums them and the server
//! recovers the arithmetic mean. A jamming attacker can inject an additive
//! signal that the server cannot distinguish from the legitimate
//! superposition. The defense simulated here interleaves secret *dummy*
//! samples into each transmission block: at coordinates known only to the
//! legitimate parties the data-free residual is pure noise under normal
//! operation, while any attack leaves excess energy that an energy detector
//! can test for.
//!
//! Two dummy constructions are implemented:
//!
//! * **Uncorrelated**: i.i.d. Gaussian dummies at `D` secret positions
//!   shared by all users. Costs per-symbol energy (the block grows from `L`
//!   to `L + D` samples on a fixed budget) and an attacker idling at the
//!   right positions can evade it.
//! * **Correlated**: the composite block carries zeros at the `D` secret
//!   positions and every user rotates it by a shared Haar-random unitary
//!   `U`. On air the dummies are smeared across all coordinates; the server
//!   rotates back with `U†`. No per-symbol energy is sacrificed and idling
//!   no longer helps the attacker.
//!
//! The crate is organized bottom-up: [`numerics`] (seeded RNG streams,
//! complex Gaussian and Haar-unitary sampling, Erlang tail/quantile),
//! [`channel`] (geometry, fading, power control), [`ota`] (pre/post
//! processing and superposition), [`schemes`] (the two dummy constructions),
//! [`attack`] (attacker strategies), [`detector`] (energy test, analytic
//! calibration and moments), and [`experiments`] (Monte Carlo drivers, CSV
//! output, config parsing).

pub mod attack;
pub mod channel;
pub mod detector;
pub mod error;
pub mod experiments;
pub mod numerics;
pub mod ota;
pub mod schemes;

pub use error::{Error, Result};
