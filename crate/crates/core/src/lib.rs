//! Arithmetic of cyclic covers of the projective line in positive
//! characteristic: Cartier operators and p-ranks, point counts over finite
//! fields, the automorphism action on holomorphic differentials, and the
//! numerical side of bounds on automorphism groups.

pub mod canrep;
pub mod casecheck;
pub mod cartier;
pub mod curve;
pub mod exprparse;
pub mod ff;
pub mod matrix;
pub mod poly;
pub mod ramify;

pub use casecheck::{BoundReport, SearchId, SearchReport};
pub use cartier::{PRankClass, PRankVerdict};
pub use curve::{CurveKind, PointCount, PointStatus, SuperellipticCurve};
pub use ff::{make_field, Field, FieldElement, FieldError};
pub use matrix::FieldMatrix;
pub use exprparse::{parse_curve, parse_poly, ParseError};
pub use poly::Poly;
pub use ramify::HurwitzOutcome;
