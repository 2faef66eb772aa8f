//! Guaranteed adaptive algorithms for univariate approximation,
//! minimization and integration, Monte Carlo mean estimation and
//! quasi-Monte Carlo cubature.
//!
//! Every solver returns its estimate together with a [`SolverDiagnostics`]
//! record. An all-zero [`ExitFlags`] means the error guarantee applies.

pub mod diagnostics;
pub mod error;
pub mod expr;
pub mod hyperbox;
pub mod montecarlo;
pub mod normal;
pub mod qmc;
pub mod rng;
pub mod tolerance;
pub mod univariate;

pub use diagnostics::{Algorithm, Budget, ExitFlags, SolverDiagnostics};
pub use error::{Error, Result};
pub use hyperbox::{Hyperbox, Measure};
pub use rng::RngStream;
pub use tolerance::{tolfun, TolType, ToleranceSpec};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/tolerances.md")]
    mod tolerances {}
    #[doc = include_str!("../../../book/src/univariate.md")]
    mod univariate {}
    #[doc = include_str!("../../../book/src/monte-carlo.md")]
    mod monte_carlo {}
    #[doc = include_str!("../../../book/src/quasi-monte-carlo.md")]
    mod quasi_monte_carlo {}
    #[doc = include_str!("../../../book/src/expressions.md")]
    mod expressions {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
