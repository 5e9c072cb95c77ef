//! Gröbner-basis verification of the structural predictions on random
//! instances over a prime field.

pub mod buchberger;
pub mod field;
pub mod krylov;
pub mod monomial;
pub mod mulmatrix;
pub mod pipeline;
pub mod poly;
pub mod staircase;
pub mod system;

pub use buchberger::buchberger_reduced;
pub use field::{FieldElem, PrimeField, DEFAULT_PRIME};
pub use krylov::{krylov_min_poly, lex_parametrization, min_poly_xn, LexParametrization};
pub use monomial::Monomial;
pub use mulmatrix::{build_mn, Column, MulMatrix};
pub use pipeline::{run_many, run_verification, RunReport, VerifyConfig};
pub use poly::FieldMPoly;
pub use staircase::Staircase;
pub use system::{extend_primitive, gen_system, Mode};
