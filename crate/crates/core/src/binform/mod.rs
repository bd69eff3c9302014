//! Binary forms `f(X, Z) = sum a_i X^i Z^(d-i)` with the GL2 action,
//! transvectants, discriminants and the genus-2 invariants.

mod igusa;
pub(crate) mod minimal;
mod transvectant;

pub use igusa::{
    absolute_invariants, canonical_key, check_moduli_height_bound_g2, coefficient_polys_f,
    igusa, igusa_generic, m2, moduli_height_g2, moduli_point_g2, moduli_point_from_invariants,
    AbsoluteInvariants, CanonicalClassKey, IgusaInvariants, M2, MODULI_WEIGHTS,
};
pub use minimal::{minimal_height_form, MinimalForm, MinimizeBudget};
pub use transvectant::{check_transvectant_covariance, transvectant, transvectant_unscaled};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{canonical_integer_vector, int, max_abs};
use crate::error::{Error, Result};
use crate::polyheight::projective_height_of;
use crate::projheight::{determinant, matrix_height};
use crate::report::BoundReport;
use crate::scalar::{pow, Ring};
use crate::Rat;

/// Binary form of degree `coeffs.len() - 1`; `coeffs[i]` multiplies
/// `X^i Z^(d-i)`. Degree 0 and the zero form are representable because
/// transvectants produce them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm<T> {
    coeffs: Vec<T>,
}

pub type Form = BinaryForm<Rat>;

impl<T: Ring> BinaryForm<T> {
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::UnsupportedDegree { got: 0, what: "a form needs at least one coefficient" });
        }
        Ok(BinaryForm { coeffs })
    }

    /// From the other common orientation `a_0 X^d + a_1 X^(d-1) Z + ...`.
    pub fn from_descending(mut coeffs: Vec<T>) -> Result<Self> {
        coeffs.reverse();
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &T) -> Self {
        BinaryForm { coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> BinaryForm<U> {
        BinaryForm { coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Coefficients in descending powers of X.
    pub fn descending(&self) -> Vec<T> {
        self.coeffs.iter().rev().cloned().collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DimensionMismatch { expected: self.coeffs.len(), got: other.coeffs.len() });
        }
        Ok(BinaryForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        BinaryForm { coeffs: mul_coeffs(&self.coeffs, &other.coeffs) }
    }

    /// `f^M (X, Z) = f(aX + bZ, cX + dZ)`.
    pub fn act(&self, m: &Gl2<T>) -> Self {
        let d = self.degree();
        // coefficient vectors of the two linear forms
        let l1 = [m.b.clone(), m.a.clone()];
        let l2 = [m.d.clone(), m.c.clone()];
        let powers = |l: &[T; 2]| {
            let mut v = vec![vec![T::one()]];
            for k in 0..d {
                let next = mul_coeffs(&v[k], l);
                v.push(next);
            }
            v
        };
        let p1 = powers(&l1);
        let p2 = powers(&l2);
        let mut out = vec![T::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let term = mul_coeffs(&p1[i], &p2[d - i]);
            for (o, t) in out.iter_mut().zip(term) {
                *o = o.clone() + a.clone() * t;
            }
        }
        BinaryForm { coeffs: out }
    }

    /// Value at `(X, Z)`.
    pub fn eval(&self, x: &T, z: &T) -> T {
        let d = self.degree() as u32;
        self.coeffs
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (i, a)| acc + a.clone() * pow(x, i as u32) * pow(z, d - i as u32))
    }

    pub fn to_poly(&self) -> crate::MultiPoly<T> {
        let d = self.degree() as u32;
        let mut p = crate::MultiPoly::zero_in(2);
        for (i, a) in self.coeffs.iter().enumerate() {
            p.add_term(vec![i as u32, d - i as u32], a.clone());
        }
        p
    }

    /// Reads a homogeneous polynomial in `X, Z` (variables 0 and 1) as a
    /// form of the given degree.
    pub fn from_poly(p: &crate::MultiPoly<T>, degree: usize) -> Result<Self> {
        if p.nvars() > 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: p.nvars() });
        }
        let mut coeffs = vec![T::zero(); degree + 1];
        for (e, c) in p.terms() {
            let x = e.first().copied().unwrap_or(0) as usize;
            let z = e.get(1).copied().unwrap_or(0) as usize;
            if x + z != degree {
                return Err(Error::NotHomogeneous);
            }
            coeffs[x] = c.clone();
        }
        Self::new(coeffs)
    }
}

pub(crate) fn mul_coeffs<T: Ring>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

impl Form {
    pub fn from_i64(v: &[i64]) -> Self {
        BinaryForm { coeffs: v.iter().map(|&x| int(x)).collect() }
    }

    /// Parses inline syntax in `X, Z`; the degree is the total degree
    /// unless given.
    pub fn parse(s: &str, degree: Option<usize>) -> Result<Self> {
        let p = crate::parse::parse_poly(s)?;
        let d = match degree {
            Some(d) => d,
            None => p.total_degree().ok_or(Error::ZeroPolynomial("a binary form"))? as usize,
        };
        Self::from_poly(&p, d)
    }

    /// Projective height of the coefficient vector.
    pub fn height(&self) -> Result<Rat> {
        projective_height_of(&self.coeffs)
    }

    /// Primitive integer coefficients with positive leading sign.
    pub fn primitive(&self) -> Option<Vec<BigInt>> {
        canonical_integer_vector(&self.coeffs)
    }

    /// `Disc(f)` from the resultant of the two partial derivatives,
    /// normalized so that `X^2 + bXZ + cZ^2` gives `b^2 - 4c`.
    pub fn discriminant(&self) -> Result<Rat> {
        let d = self.degree();
        if d < 2 {
            return Err(Error::UnsupportedDegree { got: d, what: "discriminant needs degree >= 2" });
        }
        let fx = transvectant::dx(&self.coeffs);
        let fz = transvectant::dz(&self.coeffs);
        let res = resultant(&fx, &fz)?;
        let sign = if (d * (d - 1) / 2).is_multiple_of(2) { int(1) } else { int(-1) };
        Ok(sign * res / pow(&int(d as i64), d as u32 - 2))
    }
}

/// Resultant of two binary forms (Sylvester determinant in their declared degrees).
pub fn resultant(f: &[Rat], g: &[Rat]) -> Result<Rat> {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    if size == 0 {
        return Ok(Rat::one());
    }
    let fd: Vec<Rat> = f.iter().rev().cloned().collect();
    let gd: Vec<Rat> = g.iter().rev().cloned().collect();
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![Rat::zero(); size];
        row[i..i + m + 1].clone_from_slice(&fd);
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Rat::zero(); size];
        row[i..i + n + 1].clone_from_slice(&gd);
        rows.push(row);
    }
    determinant(&rows)
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_poly().display_with(&["X".into(), "Z".into()]))
    }
}

/// `M = (a b; c d)` acting by `(X, Z) -> (aX + bZ, cX + dZ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gl2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

pub type Gl2Q = Gl2<Rat>;

impl<T: Ring> Gl2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Result<Self> {
        let m = Gl2 { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::InvalidTransformation("determinant is zero".into()));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Gl2 { a: T::one(), b: T::zero(), c: T::zero(), d: T::one() }
    }

    pub fn det(&self) -> T {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    /// Matrix product `self * other`; `act(act(f, M), N) = act(f, M * N)`.
    pub fn mul(&self, o: &Self) -> Self {
        Gl2 {
            a: self.a.clone() * o.a.clone() + self.b.clone() * o.c.clone(),
            b: self.a.clone() * o.b.clone() + self.b.clone() * o.d.clone(),
            c: self.c.clone() * o.a.clone() + self.d.clone() * o.c.clone(),
            d: self.c.clone() * o.b.clone() + self.d.clone() * o.d.clone(),
        }
    }

    pub fn entries(&self) -> [T; 4] {
        [self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone()]
    }
}

impl Gl2Q {
    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(int(a), int(b), int(c), int(d))
    }

    pub fn height(&self) -> BigInt {
        matrix_height(&[vec![self.a.clone(), self.b.clone()], vec![self.c.clone(), self.d.clone()]])
    }

    pub fn inverse(&self) -> Self {
        let det = self.det();
        Gl2 {
            a: &self.d / &det,
            b: -&self.b / &det,
            c: -&self.c / &det,
            d: &self.a / &det,
        }
    }
}

pub fn act<T: Ring>(f: &BinaryForm<T>, m: &Gl2<T>) -> BinaryForm<T> {
    f.act(m)
}

fn nonzero_form(f: &Form) -> Result<()> {
    if f.is_zero() {
        Err(Error::ZeroPolynomial("the height of a form"))
    } else {
        Ok(())
    }
}

/// `H(f^M) <= 2^n (n+1) H(M)^n H(f)`.
pub fn check_action_height_bound(f: &Form, m: &Gl2Q) -> Result<BoundReport> {
    nonzero_form(f)?;
    let n = f.degree() as u32;
    let lhs = f.act(m).height()?;
    let rhs = pow(&int(2), n) * int(n as i64 + 1) * pow(&Rat::from_integer(m.height()), n) * f.height()?;
    Ok(BoundReport::le("action", lhs, rhs))
}

/// `H(f(uX + wZ, Z)) <= (d+1) 2^d u^d w^d H(f)` for positive integers `u, w`.
pub fn check_shifted_form_bound(f: &Form, u: u64, w: u64) -> Result<BoundReport> {
    nonzero_form(f)?;
    if u == 0 || w == 0 {
        return Err(Error::InvalidTransformation("u and w must be positive".into()));
    }
    let d = f.degree() as u32;
    let m = Gl2Q::new(int(u as i64), int(w as i64), Rat::zero(), Rat::one())?;
    let lhs = f.act(&m).height()?;
    let rhs = int(d as i64 + 1)
        * pow(&int(2), d)
        * pow(&int(u as i64), d)
        * pow(&int(w as i64), d)
        * f.height()?;
    Ok(BoundReport::le("shifted form", lhs, rhs))
}

/// Largest absolute coefficient of the primitive integer model.
pub fn naive_height(f: &Form) -> Option<BigInt> {
    f.primitive().map(|v| max_abs(&v))
}
