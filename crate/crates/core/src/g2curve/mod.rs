//! Genus-2 curves `y^2 = a6 x^6 + ... + a0`: heights, isomorphism tests,
//! automorphism counts, the height-1 census and model minimization.

mod automorphism;
mod census;
mod isomorphism;
mod minimize;

pub use automorphism::{reduced_automorphism_order, AutomorphismConfig};
pub use census::{census_height1, count_classes_of_bounded_moduli_height, Census, CensusConfig, CensusStats};
pub use isomorphism::{q_isomorphic, qbar_isomorphic, QWitness, DEFAULT_SEARCH_BOUND};
pub use minimize::{minimize_curve, MinimizeConfig};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::binform::{canonical_key, igusa, moduli_height_g2, CanonicalClassKey, Form, Gl2Q, IgusaInvariants};
use crate::error::{Error, Result};
use crate::polyheight::projective_height_of;
use crate::Rat;

/// A curve `y^2 = f(x)` with `f` a sextic (possibly of degree 5) whose
/// homogenization is squarefree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct G2Curve {
    f: Form,
}

impl G2Curve {
    pub fn new(coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.len() != 7 {
            return Err(Error::DimensionMismatch { expected: 7, got: coeffs.len() });
        }
        Self::from_form(Form::new(coeffs)?)
    }

    pub fn from_form(f: Form) -> Result<Self> {
        if f.degree() != 6 {
            return Err(Error::UnsupportedDegree { got: f.degree(), what: "genus-2 curves use sextics" });
        }
        if f.discriminant()?.is_zero() {
            return Err(Error::NotGenus2(format!("{f} has a repeated root")));
        }
        Ok(G2Curve { f })
    }

    pub fn from_i64(v: &[i64]) -> Result<Self> {
        Self::new(v.iter().map(|&x| Rat::from_integer(x.into())).collect())
    }

    pub fn form(&self) -> &Form {
        &self.f
    }

    pub fn coeffs(&self) -> &[Rat] {
        self.f.coeffs()
    }

    pub fn invariants(&self) -> IgusaInvariants {
        igusa(&self.f).expect("sextic")
    }

    pub fn key(&self) -> CanonicalClassKey {
        canonical_key(&self.invariants())
    }

    /// The model `y^2 = lambda f^M(x)`.
    pub fn transform(&self, m: &Gl2Q, lambda: &Rat) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::InvalidTransformation("zero rescaling".into()));
        }
        Self::from_form(self.f.act(m).scale(lambda))
    }
}

/// Projective height of `[1, a0, ..., a6]`; `max(1, max |a_i|)` for
/// integral models.
pub fn curve_height_naive(c: &G2Curve) -> Rat {
    let mut v = vec![Rat::one()];
    v.extend_from_slice(c.coeffs());
    projective_height_of(&v).expect("leading 1")
}

pub fn moduli_height_curve(c: &G2Curve) -> BigInt {
    moduli_height_g2(&c.f).expect("squarefree sextic has J10 != 0")
}

/// One isomorphism class of genus-2 curves with the models that were found
/// in it.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveClassRecord {
    pub representative: Vec<Rat>,
    pub invariants: IgusaInvariants,
    pub key: CanonicalClassKey,
    pub height: BigInt,
    pub moduli_height: BigInt,
    /// Full automorphism group order, hyperelliptic involution included.
    pub aut_order: usize,
    pub members: Vec<Vec<Rat>>,
    /// Partition of `members` (as indices) into rational isomorphism classes.
    pub q_classes: Vec<Vec<usize>>,
}
