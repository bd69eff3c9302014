//! Heights over Q: projective points, polynomials, binary forms and
//! genus-2 curves, with exact arithmetic throughout except for root finding.

pub mod arith;
pub mod binform;
pub mod error;
pub mod fuzz;
pub mod g2curve;
pub mod json;
pub mod mp;
pub mod parse;
pub mod poly;
pub mod polyheight;
pub mod projheight;
pub mod report;
pub mod roots;
pub mod scalar;
pub mod upoly;

pub use binform::{BinaryForm, Form, Gl2, Gl2Q, IgusaInvariants};
pub use error::{Error, Result};
pub use poly::MultiPoly;
pub use polyheight::PlaceQ;
pub use projheight::{ProjPointQ, RationalMapQ};
pub use report::BoundReport;
pub use scalar::{Ring, Scalar};

pub type Int = num_bigint::BigInt;
pub type Rat = num_rational::BigRational;

/// Polynomial with exact rational coefficients.
pub type Poly = MultiPoly<Rat>;
