//! Unipotent periods modelled on nilpotent subalgebras of `so_m`, and the
//! exchange, conjugation and Fourier steps that relate them.

pub mod algebra;
pub mod appendix;
pub mod calculus;
pub mod invariants;
pub mod script;
pub mod search;
pub mod standard;

pub use algebra::{conjugate_period, Ambient, CharacterFunctional, NilSubalgebra, UniPeriod};
pub use standard::{make_standard_period, n_ell, PeriodRef};
pub use invariants::{
    general_position, h_a_carries_psi, invt, random_levi_element, stabilizer_check, stabilizer_check_with, Invt,
    StabilizerReport,
};
pub use script::{parse_script, replay, Claim, DerivationScript, MatrixSpec, PeriodSpec, ReplayReport, Step, Verdict};
pub use calculus::{check_swap, fourier_extensions, ExtensionFamily, SwapCertificate, SwapClause, Transitivity};

use crate::arith::ArithError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PeriodError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("bad coordinate: {0}")]
    Coordinate(String),
    #[error("conjugate is not rational: {0}")]
    Irrational(String),
    #[error("conjugate leaves the upper triangular algebra: {0}")]
    LeavesAmbient(String),
    #[error("not closed under the bracket: {0}")]
    NotClosed(String),
    #[error("character is nonzero on the derived algebra: {0}")]
    CharacterNotTrivialOnDerived(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("exchange fails ({clause}): {detail}")]
    Swap { clause: SwapClause, detail: String },
    #[error("fourier step: {0}")]
    Fourier(String),
    #[error("bad parameters: {0}")]
    Params(String),
    #[error("unknown period {0}")]
    UnknownPeriod(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
