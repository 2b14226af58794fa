//! Three families of polarized threefolds, each with a configured blow-up
//! tower: restriction tables, triple intersections, closed-form positive
//! parts of `π*L − tE`, nefness by restriction, cones and volumes.

mod family;
mod nef;
mod tower;

pub use family::{ConeData, CubicPiece, FamilyKind, Invariants, ModelFamily, SigmaDecomp3};
pub use nef::{verify_nef3, NefCertificate, NefVerdict, RestrictionRecord};
pub use tower::{BodySpec, Carrier, Center, CenterKind, Component, ConeSpec, Divisor3, Stage, Tower};

use crate::pwl::{ParsePwlError, PwlError};
use crate::ratgeom::{GeomError, Rat};
use crate::surface::SurfaceError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ThreefoldError {
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("t = {t} lies outside [0, {mu}]")]
    OutOfRange { t: Box<Rat>, mu: Box<Rat> },
    #[error("tower data: {0}")]
    Data(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("{what} is not available for family {family}")]
    Unsupported { what: &'static str, family: FamilyKind },
    #[error(transparent)]
    Parse(#[from] ParsePwlError),
    #[error(transparent)]
    Pwl(#[from] PwlError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

pub type Result<T> = std::result::Result<T, ThreefoldError>;
