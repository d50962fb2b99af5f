use thiserror::Error;

use crate::assoc::AssocElt;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cap mismatch: {left} vs {right}")]
    CapMismatch { left: usize, right: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid degree: {0}")]
    InvalidDegree(String),
    #[error("not a Lyndon word: {0}")]
    NotLyndon(String),
    #[error("not primitive, residual {residual}")]
    NotPrimitive { residual: AssocElt },
    #[error("nonzero constant term")]
    NonzeroConstant,
    #[error("constant term is not 1")]
    ConstantNotOne,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("extension system inconsistent at degree {degree}")]
    ExtensionInconsistent { degree: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
