//! Verification toolkit for the CCR algebra with free evolution.
//!
//! - [`ccr`]: exact normal ordering, the indefinite Gaussian functional ω,
//!   its GNS inner product and the modular maps.
//! - [`weyl`]: the Weyl algebra with the non-regular ground state Ω and
//!   its Wightman/Schwinger functions.
//! - [`schwinger`]: indefinite Schwinger functions and Monte Carlo
//!   functional-integral representations.
//! - [`krein`]: discretized Nelson space, Krein metrics and Markov
//!   projections.
//! - [`cli`] and [`suite`]: the batch driver and the acceptance matrix.
//!
//! Runnable walkthroughs for each area live in `examples/`.

pub mod ccr;
pub mod cli;
pub mod error;
pub mod gram;
pub mod krein;
pub mod report;
pub mod scalar;
pub mod schwinger;
pub mod suite;
pub mod weyl;

pub use error::{Error, Result};
