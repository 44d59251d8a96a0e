//! Evaluation of Chebyshev polynomials of the first kind `T_N(x)` by four
//! classical algorithms, with exact reference values and rounding-error
//! checks.
//!
//! - [`chebyshev`]: the floating-point algorithms (recurrence, doubling,
//!   trigonometric, Horner on the expanded form), `U_n`, roots and extrema.
//! - [`exact`]: exact `T_N`, `U_{N-1}` and `C_N` at rational points.
//! - [`stability`]: proven error bounds and backward-stability certificates.
//! - [`sweep`]: grid sweeps of the worst forward error and comparison tables.
//! - [`identities`]: randomized exact checks of the classical identities.

pub mod chebyshev;
pub mod dyadic;
pub mod error;
pub mod exact;
pub mod identities;
pub mod stability;
pub mod sweep;

pub use chebyshev::{Algorithm, CoefficientVector, Evaluator};
pub use dyadic::Dyadic;
pub use error::{Error, Result};
pub use exact::{DyadicEval, ExactEval, EPS_M};
pub use stability::StabilityCertificate;
pub use sweep::{ComparisonTable, GridSpec, Spacing, SweepReport, TableCell};
