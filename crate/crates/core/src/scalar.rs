//! Coefficient traits shared by the polynomial and binary-form code.
//!
//! Everything that only needs ring operations (the GL2 action, products,
//! derivatives) is generic over [`Ring`]; anything that divides by
//! factorials (transvectants, Igusa invariants) needs [`Scalar`].

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, ToPrimitive, Zero};

use crate::Rat;

/// Commutative ring with identity.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// A ring that contains Q, so exact rational constants can be embedded.
pub trait Scalar: Ring {
    fn from_rat(r: &Rat) -> Self;
}

impl Scalar for Rat {
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}

impl Scalar for f64 {
    fn from_rat(r: &Rat) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    fn from_rat(r: &Rat) -> Self {
        r.to_f32().unwrap_or(f32::NAN)
    }
}

/// Embeds a machine integer into any ring by double-and-add.
pub fn from_int<T: Ring>(n: i64) -> T {
    let mut acc = T::zero();
    let mut base = T::one();
    let mut m = n.unsigned_abs();
    while m > 0 {
        if m & 1 == 1 {
            acc = acc + base.clone();
        }
        m >>= 1;
        if m > 0 {
            base = base.clone() + base;
        }
    }
    if n < 0 {
        -acc
    } else {
        acc
    }
}

/// `base^exp` by repeated squaring.
pub fn pow<T: Ring>(base: &T, exp: u32) -> T {
    let mut acc = T::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b.clone();
        }
        e >>= 1;
        if e > 0 {
            b = b.clone() * b;
        }
    }
    acc
}
