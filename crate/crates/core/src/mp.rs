//! Minimal complex arithmetic over MPFR floats.

use num_complex::Complex64;
use rug::Float;

use crate::Rat;

pub fn float_from_rat(prec: u32, r: &Rat) -> Float {
    let parse = |n: &num_bigint::BigInt| {
        Float::with_val(prec, Float::parse(n.to_string()).expect("decimal integer"))
    };
    parse(r.numer()) / parse(r.denom())
}

#[derive(Clone, Debug)]
pub struct MpComplex {
    pub re: Float,
    pub im: Float,
}

impl MpComplex {
    pub fn zero(prec: u32) -> Self {
        MpComplex { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn one(prec: u32) -> Self {
        MpComplex { re: Float::with_val(prec, 1), im: Float::new(prec) }
    }

    pub fn from_f64(prec: u32, z: Complex64) -> Self {
        MpComplex { re: Float::with_val(prec, z.re), im: Float::with_val(prec, z.im) }
    }

    pub fn from_rat(prec: u32, r: &Rat) -> Self {
        MpComplex { re: float_from_rat(prec, r), im: Float::new(prec) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn to_f64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.prec();
        MpComplex { re: Float::with_val(p, &self.re + &o.re), im: Float::with_val(p, &self.im + &o.im) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.prec();
        MpComplex { re: Float::with_val(p, &self.re - &o.re), im: Float::with_val(p, &self.im - &o.im) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec();
        let rr = Float::with_val(p, &self.re * &o.re);
        let ii = Float::with_val(p, &self.im * &o.im);
        let ri = Float::with_val(p, &self.re * &o.im);
        let ir = Float::with_val(p, &self.im * &o.re);
        MpComplex { re: rr - ii, im: ri + ir }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        self.norm_sqr().sqrt()
    }

    pub fn div(&self, o: &Self) -> Self {
        let p = self.prec();
        let d = o.norm_sqr();
        let conj = MpComplex { re: o.re.clone(), im: Float::with_val(p, -&o.im) };
        let n = self.mul(&conj);
        MpComplex { re: n.re / &d, im: n.im / &d }
    }
}
