use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{canonical_integer_vector, is_rational_square};
use crate::binform::{BinaryForm, Gl2, Gl2Q};
use crate::Rat;

use super::G2Curve;

/// Default entry bound for the matrix search.
pub const DEFAULT_SEARCH_BOUND: i64 = 3;

/// `f2 = lambda * f1^M` with `lambda = e^2`, so `(x, y) -> (M x, e y / (cx+d)^3)`
/// maps one model to the other.
#[derive(Clone, Debug, PartialEq)]
pub struct QWitness {
    pub m: Gl2Q,
    pub lambda: Rat,
    pub e: Rat,
}

impl QWitness {
    pub fn verify(&self, c1: &G2Curve, c2: &G2Curve) -> bool {
        &self.e * &self.e == self.lambda && c1.form().act(&self.m).scale(&self.lambda) == *c2.form()
    }
}

pub fn qbar_isomorphic(c1: &G2Curve, c2: &G2Curve) -> bool {
    c1.key() == c2.key()
}

/// Entries of primitive integer matrices with `|entry| <= bound`, nonzero
/// determinant and positive first nonzero entry, smallest entries first.
pub(crate) fn search_matrices(bound: i64) -> Vec<[i64; 4]> {
    let mut vals = vec![0i64];
    for k in 1..=bound {
        vals.push(k);
        vals.push(-k);
    }
    let mut out = Vec::new();
    for &a in &vals {
        for &b in &vals {
            for &c in &vals {
                for &d in &vals {
                    let m = [a, b, c, d];
                    if a * d - b * c == 0 || m.iter().fold(0i64, |g, x| g.gcd(x)) != 1 {
                        continue;
                    }
                    if *m.iter().find(|&&x| x != 0).expect("nonsingular") < 0 {
                        continue;
                    }
                    out.push(m);
                }
            }
        }
    }
    out.sort_by_key(|m| m.iter().map(|x| x.abs()).max());
    out
}

/// `p1^M = t * p2` for each matrix in the search space where it holds.
pub(crate) fn proportional_images(p1: &[BigInt], p2: &[BigInt], bound: i64, first_only: bool) -> Vec<([i64; 4], Rat)> {
    let k = p2.iter().position(|x| !x.is_zero()).expect("nonzero form");
    let small = p1.iter().chain(p2).all(|x| x.abs() < BigInt::from(1u64 << 40));
    let mut out = Vec::new();
    if small {
        let a: Vec<i128> = p1.iter().map(|x| x.to_i128().expect("small")).collect();
        let b: Vec<i128> = p2.iter().map(|x| x.to_i128().expect("small")).collect();
        let f = BinaryForm::new(a).expect("nonempty");
        for m in search_matrices(bound) {
            let g = f.act(&Gl2 { a: m[0] as i128, b: m[1] as i128, c: m[2] as i128, d: m[3] as i128 });
            let g = g.coeffs();
            if g[k] != 0 && g.iter().zip(&b).all(|(x, y)| x * b[k] == y * g[k]) {
                out.push((m, Rat::new(g[k].into(), b[k].into())));
                if first_only {
                    break;
                }
            }
        }
    } else {
        let f = BinaryForm::new(p1.to_vec()).expect("nonempty");
        for m in search_matrices(bound) {
            let g = f.act(&Gl2 { a: m[0].into(), b: m[1].into(), c: m[2].into(), d: m[3].into() });
            let g = g.coeffs();
            if !g[k].is_zero() && g.iter().zip(p2).all(|(x, y)| x * &p2[k] == y * &g[k]) {
                out.push((m, Rat::new(g[k].clone(), p2[k].clone())));
                if first_only {
                    break;
                }
            }
        }
    }
    out
}

/// `f = s * p` with `p` the canonical primitive integer vector.
pub(crate) fn split_scalar(f: &[Rat]) -> (Vec<BigInt>, Rat) {
    let p = canonical_integer_vector(f).expect("nonzero form");
    let k = p.iter().position(|x| !x.is_zero()).expect("nonzero");
    let s = &f[k] / Rat::from_integer(p[k].clone());
    (p, s)
}

/// Searches primitive integer `M` with entries in `[-bound, bound]` and a
/// rational square `lambda` with `f2 = lambda f1^M`. `None` means no witness
/// within the bound, not that the curves are non-isomorphic.
pub fn q_isomorphic(c1: &G2Curve, c2: &G2Curve, bound: i64) -> Option<QWitness> {
    if !qbar_isomorphic(c1, c2) {
        return None;
    }
    let (p1, s1) = split_scalar(c1.coeffs());
    let (p2, s2) = split_scalar(c2.coeffs());
    for (m, t) in proportional_images(&p1, &p2, bound, false) {
        // f2 = s2 p2 and f1^M = s1 t p2
        let lambda = &s2 / (&s1 * &t);
        if is_rational_square(&lambda) {
            let e = Rat::new(lambda.numer().sqrt(), lambda.denom().sqrt());
            let m = Gl2Q::from_i64(m[0], m[1], m[2], m[3]).expect("nonsingular");
            return Some(QWitness { m, lambda, e });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn curve(v: &[i64]) -> G2Curve {
        G2Curve::from_i64(v).unwrap()
    }

    #[test]
    fn identity_and_reversal() {
        let c = curve(&[-1, -1, 0, -1, -1, 0, 1]);
        let w = q_isomorphic(&c, &c, 1).unwrap();
        assert_eq!(w.m, Gl2Q::identity());
        assert!(w.verify(&c, &c));
        let swap = Gl2Q::from_i64(0, 1, 1, 0).unwrap();
        let r = c.transform(&swap, &int(1)).unwrap();
        let w = q_isomorphic(&c, &r, 1).unwrap();
        assert!(w.verify(&c, &r));
    }

    #[test]
    fn twists_are_qbar_but_not_q_isomorphic() {
        let c211 = curve(&[0, -1, -1, -1, -1, -1, 0]);
        let c212 = curve(&[0, 1, 1, 1, 1, 1, 0]);
        assert!(qbar_isomorphic(&c211, &c212));
        assert_eq!(q_isomorphic(&c211, &c212, 5), None);
        let c1 = curve(&[-1, -1, -1, -1, -1, -1, 0]);
        assert!(!qbar_isomorphic(&c1, &c212));
    }

    #[test]
    fn square_rescaling_and_substitution() {
        let c = curve(&[1, 0, -1, 1, 0, 1, -1]);
        let m = Gl2Q::from_i64(1, 1, 0, 1).unwrap();
        let d = c.transform(&m, &int(9)).unwrap();
        let w = q_isomorphic(&c, &d, 2).unwrap();
        assert!(w.verify(&c, &d));
        assert_eq!(w.lambda, int(9));
        let twist = c.transform(&m, &int(3)).unwrap();
        assert!(qbar_isomorphic(&c, &twist));
        assert_eq!(q_isomorphic(&c, &twist, 2), None);
    }

    #[test]
    fn matrix_space() {
                let ms = search_matrices(1);
        assert_eq!(ms[0].iter().map(|x| x.abs()).max(), Some(1));
        assert_eq!(ms.len(), 24);
    }
}
