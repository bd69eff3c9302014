//! Reduced automorphism group order: Möbius maps permuting the six
//! projective roots of the sextic, counted numerically at high precision.

use num_traits::Zero;
use rug::Float;

use crate::error::{Error, Result};
use crate::mp::MpComplex;
use crate::roots::{aberth, polish_roots};
use crate::upoly::trim;

use super::G2Curve;

#[derive(Clone, Debug)]
pub struct AutomorphismConfig {
    pub precision_bits: u32,
    pub tolerance: f64,
}

impl Default for AutomorphismConfig {
    fn default() -> Self {
        AutomorphismConfig { precision_bits: 256, tolerance: 1e-20 }
    }
}

/// Point `[x : z]` of the complex projective line.
#[derive(Clone, Debug)]
struct Proj {
    x: MpComplex,
    z: MpComplex,
}

fn chordal_distance(p: &Proj, q: &Proj) -> Float {
    let cross = p.x.mul(&q.z).sub(&q.x.mul(&p.z)).abs();
    let np = p.x.norm_sqr() + p.z.norm_sqr();
    let nq = q.x.norm_sqr() + q.z.norm_sqr();
    cross / Float::with_val(np.prec(), np * nq).sqrt()
}

/// 2x2 complex matrix, row-major.
type Mat = [MpComplex; 4];

fn apply(m: &Mat, p: &Proj) -> Proj {
    Proj { x: m[0].mul(&p.x).add(&m[1].mul(&p.z)), z: m[2].mul(&p.x).add(&m[3].mul(&p.z)) }
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    [
        a[0].mul(&b[0]).add(&a[1].mul(&b[2])),
        a[0].mul(&b[1]).add(&a[1].mul(&b[3])),
        a[2].mul(&b[0]).add(&a[3].mul(&b[2])),
        a[2].mul(&b[1]).add(&a[3].mul(&b[3])),
    ]
}

/// Matrix sending `[1:0], [0:1], [1:1]` to `p0, p1, p2`.
fn frame(p0: &Proj, p1: &Proj, p2: &Proj) -> Mat {
    let det = p0.x.mul(&p1.z).sub(&p1.x.mul(&p0.z));
    let l1 = p2.x.mul(&p1.z).sub(&p1.x.mul(&p2.z)).div(&det);
    let l2 = p0.x.mul(&p2.z).sub(&p2.x.mul(&p0.z)).div(&det);
    [l1.mul(&p0.x), l2.mul(&p1.x), l1.mul(&p0.z), l2.mul(&p1.z)]
}

/// Adjugate, which is the inverse up to a scalar.
fn adjugate(m: &Mat) -> Mat {
    let prec = m[0].prec();
    let neg = |z: &MpComplex| MpComplex::zero(prec).sub(z);
    [m[3].clone(), neg(&m[1]), neg(&m[2]), m[0].clone()]
}

fn projective_roots(c: &G2Curve, cfg: &AutomorphismConfig) -> Result<Vec<Proj>> {
    let prec = cfg.precision_bits;
    let coeffs = trim(c.coeffs().to_vec());
    let approx = aberth(
        &coeffs.iter().map(|a| num_complex::Complex64::new(crate::arith::rat_to_f64(a), 0.0)).collect::<Vec<_>>(),
        1e-14,
    )?;
    let mut roots: Vec<Proj> = polish_roots(&coeffs, &approx, prec)?
        .into_iter()
        .map(|x| Proj { x, z: MpComplex::one(prec) })
        .collect();
    if c.coeffs()[6].is_zero() {
        roots.push(Proj { x: MpComplex::one(prec), z: MpComplex::zero(prec) });
    }
    if roots.len() != 6 {
        return Err(Error::NotGenus2("expected six projective roots".into()));
    }
    for i in 0..6 {
        for j in 0..i {
            if chordal_distance(&roots[i], &roots[j]) <= 10.0 * cfg.tolerance {
                return Err(Error::Numeric(format!(
                    "roots closer than {:e}; rerun with more precision bits",
                    10.0 * cfg.tolerance
                )));
            }
        }
    }
    Ok(roots)
}

/// Number of Möbius transformations permuting the six roots (the reduced
/// automorphism group); the full group has twice as many elements.
pub fn reduced_automorphism_order(c: &G2Curve, cfg: &AutomorphismConfig) -> Result<usize> {
    let roots = projective_roots(c, cfg)?;
    let source_inv = adjugate(&frame(&roots[0], &roots[1], &roots[2]));
    let mut count = 0;
    for i in 0..6 {
        for j in 0..6 {
            for k in 0..6 {
                if i == j || j == k || i == k {
                    continue;
                }
                let m = mat_mul(&frame(&roots[i], &roots[j], &roots[k]), &source_inv);
                let permutes = roots.iter().all(|r| {
                    let img = apply(&m, r);
                    roots.iter().any(|s| chordal_distance(&img, s) <= cfg.tolerance)
                });
                if permutes {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}
