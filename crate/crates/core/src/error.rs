use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range (maximum {max})")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("invalid sign {0}: homogeneous coordinates must be +1 or -1")]
    InvalidSign(i64),

    #[error("unsupported dimension k={k}: {reason}")]
    UnsupportedDimension { k: u32, reason: &'static str },

    #[error("k={k} exceeds the capacity limit of {max}")]
    Capacity { k: u32, max: u32 },

    #[error(
        "Floer homology is not defined for k={k}: disk bubbling gives d^2 = {square_parity} * Id (k must be odd)"
    )]
    Obstruction { k: u32, square_parity: u32 },

    #[error("chain is not in the preimage of the kernel: d(pi(x)) != 0")]
    NotInPreimage,

    #[error("domain constraint violated: {0}")]
    Domain(&'static str),

    #[error("division by zero in the Novikov field")]
    DivisionByZero,

    #[error("precision exhausted: {0} (retry with a larger precision window)")]
    PrecisionExhausted(&'static str),

    #[error("invalid precision {0}: must be between 1 and 64")]
    InvalidPrecision(u32),

    #[error("point {0} lies outside the closed unit disk")]
    OutsideDisk(f64),

    #[error("Blaschke zero {0} does not lie in the open unit disk")]
    ZeroOutsideDisk(f64),

    #[error("zero sets of all coordinates share a common point; the map is undefined there")]
    CommonZero,

    #[error("argument step {step:.3} rad exceeds pi at {samples} samples; increase the sample count")]
    Resolution { step: f64, samples: usize },

    #[error("quadrature did not converge: relative change {change:.3e} at grid {grid}")]
    Accuracy { change: f64, grid: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("rank mismatch: Novikov rank {novikov} differs from GF(2) rank {gf2}")]
    RankMismatch { novikov: usize, gf2: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
