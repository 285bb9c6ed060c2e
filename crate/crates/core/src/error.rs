use std::fmt;

use thiserror::Error;

/// A malformed expression: byte offset into the source text and what the
/// parser expected to find there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(offset: usize, message: impl Into<String>) -> Self {
        Self {
            offset,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Every failure the library reports. Variant names double as the
/// diagnostic tag printed by the command-line tool.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("DivisionByZero: jet divisor has zero value")]
    DivisionByZero,
    #[error("DomainError: {func} is undefined at {at}")]
    DomainError { func: &'static str, at: f64 },
    #[error("ParseError {0}")]
    ParseError(#[from] ParseError),
    #[error("CurveFileError on line {line}: {message}")]
    CurveFileError { line: usize, message: String },
    #[error("UnknownPreset: no preset named `{0}`")]
    UnknownPreset(String),
    #[error("BadParameter: {name} = {value} ({reason})")]
    BadParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("DegenerateSpeed: |c'| = {speed:e} at v = {v}")]
    DegenerateSpeed { v: f64, speed: f64 },
    #[error("DegenerateCurvature: |a' x a''| = {cross_norm:e} below threshold")]
    DegenerateCurvature { cross_norm: f64 },
    #[error("WrongCausalType: expected a {expected} tangent, found {found}")]
    WrongCausalType {
        expected: &'static str,
        found: &'static str,
    },
    #[error("UnsupportedNormal: principal normal is {found}, only space-like normals are supported")]
    UnsupportedNormal { found: &'static str },
    #[error("LightLikeDarboux: <D,D> = {norm_sq:e} is numerically zero")]
    LightLikeDarboux { norm_sq: f64 },
    #[error("NotOnSphere: |<x,x> - {target}| = {residual:e}")]
    NotOnSphere { target: f64, residual: f64 },
    #[error("NotUnitSpeed: |<t,t> - 1| = {residual:e}")]
    NotUnitSpeed { residual: f64 },
    #[error("EvoluteUndefined: kappa_g = {kappa_g}, need kappa_g^2 > 1")]
    EvoluteUndefined { kappa_g: f64 },
    #[error("QuadratureFailure: tolerance {tol:e} not reached on [{lo}, {hi}] within the interval budget")]
    QuadratureFailure { lo: f64, hi: f64, tol: f64 },
    #[error("DegenerateBertrandPoint: 1 - tanh(xi) kappa_g = {factor:e} at v = {v}")]
    DegenerateBertrandPoint { v: f64, factor: f64 },
    #[error("ThetaZero: the slope constant theta must be nonzero")]
    ThetaZero,
    #[error("BadCone: {cone} needs a curve on {expected}")]
    BadCone { cone: &'static str, expected: &'static str },
    #[error("DegenerateNormal: |x_u x x_v| = {norm:e} at (u, v) = ({u}, {v})")]
    DegenerateNormal { u: f64, v: f64, norm: f64 },
    #[error("IoError: {0}")]
    IoError(String),
    #[error("{source} (at v = {v})")]
    At { v: f64, source: Box<Error> },
}

impl Error {
    /// Wraps a point-level error with the curve parameter it occurred at.
    pub fn at(self, v: f64) -> Error {
        match self {
            e @ Error::At { .. } => e,
            e => Error::At { v, source: Box::new(e) },
        }
    }

    /// The underlying error with any parameter annotation stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::At { source, .. } => source.root(),
            e => e,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::IoError(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
