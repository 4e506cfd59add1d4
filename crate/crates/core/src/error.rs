use thiserror::Error;

/// Errors raised by the verification library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate domain: need a < b and c < d, got [{a}, {b}] x [{c}, {d}]")]
    DegenerateDomain { a: f64, b: f64, c: f64, d: f64 },

    #[error("degenerate interval [{lo}, {hi}]: need lo < hi")]
    DegenerateInterval { lo: f64, hi: f64 },

    #[error("point ({x}, {y}) lies outside [{a}, {b}] x [{c}, {d}]")]
    PointOutsideDomain {
        x: f64,
        y: f64,
        a: f64,
        b: f64,
        c: f64,
        d: f64,
    },

    #[error("exponent out of range: {0}")]
    ExponentOutOfRange(String),

    #[error("unknown surface `{name}`; valid names: {}", valid.join(", "))]
    UnknownSurface { name: String, valid: Vec<String> },

    #[error("finite-difference stencil of half-width {step} at ({u}, {v}) leaves the domain")]
    StencilOutsideDomain { u: f64, v: f64, step: f64 },

    #[error("invalid quadrature spec: {0}")]
    InvalidQuadrature(String),

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    #[error("non-finite input: {0}")]
    NonFinite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
