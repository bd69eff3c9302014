use num_traits::One;

use crate::arith::{binomial, factorial};
use crate::error::{Error, Result};
use crate::scalar::{from_int, Ring, Scalar};
use crate::Rat;

use super::{mul_coeffs, BinaryForm, Gl2};

/// `d/dX` of a coefficient vector.
pub(crate) fn dx<T: Ring>(c: &[T]) -> Vec<T> {
    if c.len() == 1 {
        return vec![T::zero()];
    }
    (1..c.len()).map(|i| c[i].clone() * from_int::<T>(i as i64)).collect()
}

/// `d/dZ` of a coefficient vector.
pub(crate) fn dz<T: Ring>(c: &[T]) -> Vec<T> {
    let d = c.len() - 1;
    if d == 0 {
        return vec![T::zero()];
    }
    (0..d).map(|i| c[i].clone() * from_int::<T>((d - i) as i64)).collect()
}

fn partial<T: Ring>(c: &[T], nx: usize, nz: usize) -> Vec<T> {
    let mut v = c.to_vec();
    for _ in 0..nx {
        v = dx(&v);
    }
    for _ in 0..nz {
        v = dz(&v);
    }
    v
}

/// The transvectant sum without its normalizing constant, so it stays in
/// any ring (integers included).
pub fn transvectant_unscaled<T: Ring>(f: &BinaryForm<T>, g: &BinaryForm<T>, r: usize) -> Result<BinaryForm<T>> {
    let (m, n) = (f.degree(), g.degree());
    if r > m.min(n) {
        return Err(Error::TransvectantOrder { r, n: m, m: n });
    }
    let mut acc = vec![T::zero(); m + n - 2 * r + 1];
    for k in 0..=r {
        let a = partial(f.coeffs(), r - k, k);
        let b = partial(g.coeffs(), k, r - k);
        let c = binomial(r as u64, k as u64);
        let c: i64 = i64::try_from(c).expect("binomial fits");
        let c = if k % 2 == 0 { c } else { -c };
        for (o, t) in acc.iter_mut().zip(mul_coeffs(&a, &b)) {
            *o = o.clone() + t * from_int::<T>(c);
        }
    }
    BinaryForm::new(acc)
}

/// `(m - r)! (n - r)! / (m! n!)`.
pub fn transvectant_constant(m: usize, n: usize, r: usize) -> Rat {
    Rat::new(
        factorial((m - r) as u64) * factorial((n - r) as u64),
        factorial(m as u64) * factorial(n as u64),
    )
}

/// `(f, g)^r`, a form of degree `deg f + deg g - 2r`.
pub fn transvectant<T: Scalar>(f: &BinaryForm<T>, g: &BinaryForm<T>, r: usize) -> Result<BinaryForm<T>> {
    let raw = transvectant_unscaled(f, g, r)?;
    let c = transvectant_constant(f.degree(), g.degree(), r);
    if c.is_one() {
        return Ok(raw);
    }
    Ok(raw.scale(&T::from_rat(&c)))
}

/// `(f^M, g^M)^r == ((f, g)^r)^M` for `det M = 1`.
pub fn check_transvectant_covariance(
    f: &BinaryForm<Rat>,
    g: &BinaryForm<Rat>,
    r: usize,
    m: &Gl2<Rat>,
) -> Result<bool> {
    if !m.det().is_one() {
        return Err(Error::InvalidTransformation("covariance is checked for det 1".into()));
    }
    let lhs = transvectant(&f.act(m), &g.act(m), r)?;
    let rhs = transvectant(f, g, r)?.act(m);
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::binform::{Form, Gl2Q};

    fn form(v: &[i64]) -> Form {
        Form::from_i64(v)
    }

    #[test]
    fn examples() {
        let f = form(&[1, -1, 2]);
        let g = form(&[0, 3, 1, 1]);
        assert_eq!(transvectant(&f, &g, 0).unwrap(), f.mul(&g));
        assert_eq!(transvectant(&form(&[0, 0, 1]), &form(&[1, 0, 0]), 2).unwrap(), form(&[1]));
        let h = form(&[1, 2, -3, 0, 5, 1, -1]);
        for r in [1, 3, 5] {
            assert!(transvectant(&h, &h, r).unwrap().is_zero());
        }
        assert!(matches!(transvectant(&f, &g, 3), Err(Error::TransvectantOrder { .. })));
    }

    #[test]
    fn first_transvectant_is_the_jacobian() {
        // (f, g)^1 = (f_X g_Z - f_Z g_X) / (m n)
        let f = form(&[1, 2, 3]);
        let g = form(&[0, 1, 0, 4]);
        let t = transvectant(&f, &g, 1).unwrap();
        let fx = form(&[2, 6]);
        let fz = form(&[2, 2]);
        let gx = form(&[1, 0, 12]);
        let gz = form(&[0, 2, 0]);
        let jac = fx.mul(&gz).add(&fz.mul(&gx).scale(&int(-1))).unwrap().scale(&crate::arith::rat(1, 6));
        assert_eq!(t, jac);
    }

    #[test]
    fn covariance() {
        let f = form(&[1, 0, -2, 1, 3]);
        let g = form(&[2, 1, 0, -1]);
        for m in [Gl2Q::identity(), Gl2Q::from_i64(1, 1, 0, 1).unwrap(), Gl2Q::from_i64(0, 1, -1, 0).unwrap()] {
            for r in 0..=3 {
                assert!(check_transvectant_covariance(&f, &g, r, &m).unwrap());
            }
        }
        assert!(check_transvectant_covariance(&f, &g, 1, &Gl2Q::from_i64(2, 0, 0, 1).unwrap()).is_err());
    }

    #[test]
    fn integer_ring_matches_rationals() {
        let f = BinaryForm::new(vec![1i64, 0, -1, 1, 0, 0, 1]).unwrap();
        let i = transvectant_unscaled(&f, &f, 4).unwrap();
        let q = transvectant(&form(&[1, 0, -1, 1, 0, 0, 1]), &form(&[1, 0, -1, 1, 0, 0, 1]), 4).unwrap();
        let c = transvectant_constant(6, 6, 4);
        assert_eq!(i.map(|&x| int(x) * &c), q);
    }
}
