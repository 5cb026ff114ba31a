use thiserror::Error;

use crate::algebra::AlgebraKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("algebra mismatch: {left:?} vs {right:?}")]
    AlgebraMismatch { left: AlgebraKind, right: AlgebraKind },

    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point is not on the unit sphere (|x| = {norm})")]
    NotUnit { norm: f64 },

    #[error("no parametrization for m = 8")]
    NoOctonionChart,

    #[error("|u|² + |v|² + |w|² must equal 1, got {0}")]
    NotUnitTriple(String),

    #[error("polynomial is not homogeneous of degree {0}")]
    NotHomogeneous(u32),

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("level {0} is outside the open interval (-1, 1)")]
    LevelOutOfRange(f64),

    #[error("started at focal set")]
    StartedAtFocalSet,

    #[error("level projection did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("near focal set: |grad V| = {0:e}")]
    NearFocalSet(f64),

    #[error("cluster index {index} out of range (g = {count})")]
    ClusterIndexOutOfRange { index: usize, count: usize },

    #[error("parallel distance t = {t} is within {gap} of focal angle {theta}")]
    FocalAngleTooClose { t: f64, theta: f64, gap: f64 },

    #[error("gradient flow entered a focal neighbourhood after arc {arc_reached}")]
    FlowEnteredFocalNeighborhood { arc_reached: f64 },

    #[error("samples must be at least 1")]
    NoSamples,
}
