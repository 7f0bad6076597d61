//! Executable forms of the constructive structure proofs: the attracting
//! conjugator for oscillatory elements, stepwise torus conjugation, and the
//! witness constructions that exhibit (non-)regular and (non-)semisimple
//! elements inside prescribed cells.

mod conjugate;
mod witness;

pub use conjugate::{
    attracting_conjugator, attracting_conjugator_levi, torus_conj, torus_conj_step, StepRecord,
    TorusConjResult,
};
pub use witness::{
    non_regular_witness, non_rss_witness, regular_unipotent_classification, rss_witness,
    sample_oscillatory_rational, RegUniReport, WitnessReport,
};

use crate::classify::ClassifyError;
use crate::coxeter::CoxeterError;
use crate::ratlin::{MatError, SpectrumError};
use crate::tnn::TnnError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TheoremError {
    #[error("element is not oscillatory (no totally positive power)")]
    NotOscillatory,
    #[error("unsupported in exact mode: irrational or non-real spectrum")]
    IrrationalSpectrum,
    #[error("eigenvector flag is not in generic position")]
    FlagNotGeneric,
    #[error("alpha_{0}(t) must be < 1 for a conjugation step")]
    AlphaNotContracting(usize),
    #[error("index {0} is outside the support of the unipotent part")]
    OutsideSupport(usize),
    #[error("witness requires a proper support on at least one side")]
    SupportsFull,
    #[error("witness requires both supports proper")]
    SupportFull,
    #[error("conjugation left the expected cell: {0}")]
    CellMismatch(String),
    #[error(transparent)]
    Tnn(#[from] TnnError),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

impl From<SpectrumError> for TheoremError {
    fn from(_: SpectrumError) -> Self {
        TheoremError::IrrationalSpectrum
    }
}
