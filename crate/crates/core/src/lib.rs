//! Sums of squares in the multiples `m·O⁺` of totally positive integers of
//! real quadratic fields `Q(√D)`.
//!
//! The decision procedure tests the `m`-multiples of the finitely many
//! indecomposables (from the continued fraction of `ω_D`) with an integer
//! criterion for sums of squares. Analytic exclusion intervals prune the
//! values of `D` worth testing.

pub mod bounds;
pub mod cf;
pub mod cli;
pub mod decision;
pub mod error;
pub mod indecomposable;
pub mod integer;
pub mod oracle;
pub mod peters;
pub mod quad;
pub mod surd;

pub use cf::{AlphaSeq, CfExpansion};
pub use decision::{decide, sweep, Decision, SweepMode};
pub use error::{Error, Result};
pub use indecomposable::Indecomposable;
pub use quad::{Basis, QuadInt, QuadraticField};
