//! Simultaneous (Aberth–Ehrlich) root finding and the Mahler measure.

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use rug::Float;

use crate::arith::rat_to_f64;
use crate::error::{Error, Result};
use crate::mp::MpComplex;
use crate::upoly::{degree, squarefree_decomposition};
use crate::Rat;

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
const MAX_ITERATIONS: usize = 2000;

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots of `sum coeffs[i] z^i`, with multiplicity. Converges
/// fastest when the polynomial is squarefree.
pub fn aberth(coeffs: &[Complex64], tol: f64) -> Result<Vec<Complex64>> {
    let n = coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs[..=n].iter().map(|c| c / lead).collect();
    // Fujiwara-type radius for the starting circle
    let radius = (0..n)
        .map(|i| monic[i].norm().powf(1.0 / (n - i) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3)
        * 2.0;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..MAX_ITERATIONS {
        let mut max_step = 0.0f64;
        for k in 0..n {
            let (p, dp) = horner(&monic, z[k]);
            // value already at the rounding level: further steps are noise
            let noise = monic.iter().rev().fold(0.0, |acc, c| acc * z[k].norm() + c.norm());
            if p.norm() <= 4.0 * n as f64 * f64::EPSILON * noise {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if max_step <= tol {
            return Ok(z);
        }
    }
    Err(Error::Numeric(format!("root finder did not converge for degree {n}")))
}

fn to_complex(coeffs: &[Rat]) -> Vec<Complex64> {
    coeffs.iter().map(|c| Complex64::new(rat_to_f64(c), 0.0)).collect()
}

/// Roots of a rational polynomial, each repeated according to multiplicity.
pub fn roots_rational(coeffs: &[Rat], tol: f64) -> Result<Vec<Complex64>> {
    let mut out = Vec::new();
    for (k, g) in squarefree_decomposition(coeffs).iter().enumerate() {
        let r = aberth(&to_complex(g), tol)?;
        for _ in 0..=k {
            out.extend_from_slice(&r);
        }
    }
    Ok(out)
}

/// `|lead| * prod max(1, |alpha|)` for a univariate polynomial given by
/// ascending coefficients.
pub fn mahler_measure(coeffs: &[Rat], tol: f64) -> Result<f64> {
    let Some(d) = degree(coeffs) else {
        return Err(Error::ZeroPolynomial("the Mahler measure"));
    };
    let mut m = rat_to_f64(&coeffs[d].abs());
    for (k, g) in squarefree_decomposition(coeffs).iter().enumerate() {
        let part: f64 = aberth(&to_complex(g), tol)?.iter().map(|z| z.norm().max(1.0)).product();
        m *= part.powi(k as i32 + 1);
    }
    Ok(m)
}

/// Newton-polishes approximate simple roots at `prec` bits.
pub fn polish_roots(coeffs: &[Rat], approx: &[Complex64], prec: u32) -> Result<Vec<MpComplex>> {
    let c: Vec<MpComplex> = coeffs.iter().map(|a| MpComplex::from_rat(prec, a)).collect();
    let eps = Float::with_val(prec, Float::i_exp(1, 16 - prec as i32));
    approx
        .iter()
        .map(|&z0| {
            let mut z = MpComplex::from_f64(prec, z0);
            for _ in 0..200 {
                let mut p = MpComplex::zero(prec);
                let mut dp = MpComplex::zero(prec);
                for a in c.iter().rev() {
                    dp = dp.mul(&z).add(&p);
                    p = p.mul(&z).add(a);
                }
                if p.norm_sqr().is_zero() {
                    return Ok(z);
                }
                let step = p.div(&dp);
                z = z.sub(&step);
                let scale = Float::with_val(prec, z.abs().max(&Float::with_val(prec, 1)));
                if step.abs() <= Float::with_val(prec, &eps * &scale) {
                    return Ok(z);
                }
            }
            Err(Error::Numeric("Newton polishing did not converge".into()))
        })
        .collect()
}
