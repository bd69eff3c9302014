//! Dense univariate polynomials over Q, coefficients in ascending degree.

use num_traits::{One, Zero};

use crate::Rat;

pub fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn degree(p: &[Rat]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn derivative(p: &[Rat]) -> Vec<Rat> {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(i.into()))
            .collect(),
    )
}

pub fn mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Quotient and remainder; panics on a zero divisor.
pub fn divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = &b[db];
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![Rat::zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / lead;
        for (i, bi) in b[..=db].iter().enumerate() {
            let t = &c * bi;
            r[dr - db + i] -= t;
        }
        q[dr - db] = c;
        r = trim(r);
    }
    (trim(q), r)
}

pub fn monic(p: &[Rat]) -> Vec<Rat> {
    match degree(p) {
        Some(d) => {
            let lead = p[d].clone();
            p[..=d].iter().map(|c| c / &lead).collect()
        }
        None => Vec::new(),
    }
}

pub fn gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let (_, r) = divrem(&a, &b);
        a = b;
        b = r;
    }
    monic(&a)
}

/// Yun's algorithm: monic squarefree `g_1, g_2, ...` with
/// `p = lead * g_1 * g_2^2 * g_3^3 * ...`. Constant factors are returned as `[1]`.
pub fn squarefree_decomposition(p: &[Rat]) -> Vec<Vec<Rat>> {
    let p = monic(p);
    if degree(&p).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let dp = derivative(&p);
    let mut a = gcd(&p, &dp);
    let mut b = divrem(&p, &a).0;
    let mut c = divrem(&dp, &a).0;
    let mut d: Vec<Rat> = trim(
        (0..c.len().max(b.len()))
            .map(|i| {
                c.get(i).cloned().unwrap_or_default() - derivative(&b).get(i).cloned().unwrap_or_default()
            })
            .collect(),
    );
    let mut out = Vec::new();
    loop {
        a = gcd(&b, &d);
        out.push(a.clone());
        b = divrem(&b, &a).0;
        if degree(&b).unwrap_or(0) == 0 {
            break;
        }
        c = divrem(&d, &a).0;
        let db = derivative(&b);
        d = trim(
            (0..c.len().max(db.len()))
                .map(|i| c.get(i).cloned().unwrap_or_default() - db.get(i).cloned().unwrap_or_default())
                .collect(),
        );
    }
    while out.last().is_some_and(|g| degree(g) == Some(0)) {
        out.pop();
    }
    for g in &mut out {
        if g.is_empty() {
            *g = vec![Rat::one()];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn p(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn division_and_gcd() {
        let (q, r) = divrem(&p(&[-1, 0, 1]), &p(&[-1, 1]));
        assert_eq!((q, r), (p(&[1, 1]), vec![]));
        assert_eq!(gcd(&p(&[-1, 0, 1]), &p(&[1, 2, 1])), p(&[1, 1]));
    }

    #[test]
    fn yun() {
        // (x-1)(x+2)^2 (x^2+1)^3
        let f = mul(&mul(&p(&[-1, 1]), &mul(&p(&[2, 1]), &p(&[2, 1]))), &{
            let q = p(&[1, 0, 1]);
            mul(&q, &mul(&q, &q))
        });
        let sf = squarefree_decomposition(&mul(&f, &p(&[5])));
        assert_eq!(sf, vec![p(&[-1, 1]), p(&[2, 1]), p(&[1, 0, 1])]);
        assert_eq!(squarefree_decomposition(&p(&[0, 0, 1])), vec![p(&[1]), p(&[0, 1])]);
    }
}
