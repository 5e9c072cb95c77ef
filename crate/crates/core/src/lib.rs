//! Hilbert series, sparse-FGLM cost prediction and Gröbner-basis verification
//! for generic determinantal ideals: the maximal minors of a `p x n` matrix of
//! generic degree-`d` polynomials in `n` variables.

pub mod error;
pub mod gb;
pub mod hilbert;
pub mod numfmt;
pub mod predictor;
pub mod report;
pub mod series;

pub use error::{Error, Result};
pub use hilbert::{HilbertProfile, SystemParams};
pub use predictor::{cost_model, PredictionReport};
pub use series::{IntPoly, IntPolyMatrix};
