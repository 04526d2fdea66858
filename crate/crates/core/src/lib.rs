//! Nonlinearity and multiplicative complexity toolkit.
//!
//! The crate is organised around four pieces of data:
//!
//! * [`BooleanFunction`]: an `(n, m)`-function stored as `m` packed truth tables,
//!   together with its [`Anf`] and [`WalshSpectrum`];
//! * [`Circuit`]: an XOR-AND circuit (fanin-2 AND, unbounded XOR, constant one);
//! * [`GeneratorMatrix`]: a binary linear code;
//! * [`CertReport`]: the result of extracting a code from a ΣΠΣ circuit and
//!   checking its distance against the nonlinearity of the computed function.
//!
//! Everything is deterministic. Randomised procedures take an explicit seed.

pub mod analysis;
pub mod bits;
pub mod boolfn;
mod budget;
pub mod circuit;
pub mod codes;
mod error;
pub mod families;
pub mod oracle;
pub mod synth;

pub use analysis::{certify, extract_code, quadratic_nl_rank, reachability_vectors, CertReport, ExtractedCode};
pub use bits::BitVec;
pub use boolfn::{Anf, BooleanFunction, NlClass, WalshSpectrum};
pub use budget::Budget;
pub use circuit::{Circuit, CircuitClassification, Gate, Wire};
pub use codes::GeneratorMatrix;
pub use error::{Error, Result};
pub use families::{FieldSpec, GoldSpec};
pub use oracle::{McOutcome, McSearchBudget};
pub use synth::{BilinearPlan, UniversalPlan};
