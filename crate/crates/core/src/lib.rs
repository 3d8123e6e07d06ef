//! Geometry of curves on parametric surfaces.
//!
//! Surfaces and coordinate curves are written in a small expression language
//! ([`expr`]) and differentiated exactly to second order with jets. On top of
//! that sit the fundamental forms ([`surface`]), arc-length kinematics and
//! Frenet frames ([`curve`]), position-vector decompositions and curve
//! classification ([`frames`]), and numerical checks of how those
//! decompositions behave under isometries that share a chart ([`harness`]).

// Guards are written as `!(x > eps)` on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod cli;
pub mod curve;
pub mod expr;
pub mod frames;
pub mod harness;
pub mod quadrature;
pub mod surface;

use thiserror::Error;

pub type Vec3 = nalgebra::Vector3<f64>;

#[derive(Debug, Error)]
pub enum GeomError {
    #[error("parse error in {context}: {source}")]
    Parse {
        context: String,
        #[source]
        source: expr::ParseError,
    },
    #[error("evaluation error in {context}: {source}")]
    Eval {
        context: String,
        #[source]
        source: expr::EvalError,
    },
    #[error("point ({u}, {v}) is outside the domain of surface \"{surface}\"")]
    OutOfDomain { surface: String, u: f64, v: f64 },
    #[error("parameter {value} is outside [{lo}, {hi}]")]
    ParameterOutOfRange { value: f64, lo: f64, hi: f64 },
    #[error("degenerate patch \"{surface}\" at ({u}, {v}): EG - F^2 = {det:e}")]
    DegeneratePatch {
        surface: String,
        u: f64,
        v: f64,
        det: f64,
    },
    #[error("curve is not regular at t = {t}: speed {speed:e}")]
    NonRegularCurve { t: f64, speed: f64 },
    #[error("arc-length table is not monotone near t = {t}")]
    NonMonotoneTable { t: f64 },
    #[error("curvature below threshold at s = {s}: kappa = {kappa:e}")]
    DegenerateCurvature { s: f64, kappa: f64 },
    #[error("cross-check failed for {what}: residual {residual:e}")]
    CrossCheck { what: &'static str, residual: f64 },
    #[error("surfaces \"{first}\" and \"{second}\" do not share a first fundamental form at ({u}, {v}): mismatch {mismatch:e}")]
    NotIsometric {
        first: String,
        second: String,
        u: f64,
        v: f64,
        mismatch: f64,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl GeomError {
    /// Whether the failure is geometric degeneracy rather than bad input.
    pub fn is_degeneracy(&self) -> bool {
        matches!(
            self,
            GeomError::DegeneratePatch { .. }
                | GeomError::NonRegularCurve { .. }
                | GeomError::DegenerateCurvature { .. }
        )
    }
}

pub type Result<T, E = GeomError> = std::result::Result<T, E>;
