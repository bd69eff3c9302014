//! Heights of points in projective space over Q.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{canonical_integer_vector, ln_bigint, max_abs};
use crate::error::{Error, Result};
use crate::report::BoundReport;
use crate::{Poly, Rat};

/// Default cap on the number of tuples [`count_points_of_bounded_height`]
/// will visit.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 100_000_000;

/// A point of P^n(Q), stored as its primitive integer representative with
/// positive first nonzero coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPointQ {
    coords: Vec<BigInt>,
}

impl ProjPointQ {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    /// Ambient dimension n (the point has n + 1 coordinates).
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn from_integers(v: &[BigInt]) -> Result<Self> {
        let raw: Vec<Rat> = v.iter().cloned().map(Rat::from_integer).collect();
        normalize(&raw)
    }

    pub fn from_i64(v: &[i64]) -> Result<Self> {
        let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        Self::from_integers(&v)
    }

    pub fn height(&self) -> BigInt {
        max_abs(&self.coords)
    }

    pub fn log_height(&self) -> f64 {
        ln_bigint(&self.height())
    }

    pub fn to_rationals(&self) -> Vec<Rat> {
        self.coords.iter().cloned().map(Rat::from_integer).collect()
    }
}

impl std::fmt::Display for ProjPointQ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

pub fn normalize(raw: &[Rat]) -> Result<ProjPointQ> {
    if raw.is_empty() {
        return Err(Error::InvalidPoint("no coordinates".into()));
    }
    canonical_integer_vector(raw)
        .map(|coords| ProjPointQ { coords })
        .ok_or_else(|| Error::InvalidPoint("all coordinates are zero".into()))
}

pub fn height(p: &ProjPointQ) -> BigInt {
    p.height()
}

pub fn log_height(p: &ProjPointQ) -> f64 {
    p.log_height()
}

fn from_products(v: Vec<BigInt>) -> ProjPointQ {
    ProjPointQ::from_integers(&v).expect("products of nonzero points are nonzero")
}

/// Segre embedding: coordinates `x_i y_j` in lexicographic `(i, j)` order.
pub fn segre(p: &ProjPointQ, q: &ProjPointQ) -> ProjPointQ {
    let v = p
        .coords
        .iter()
        .flat_map(|x| q.coords.iter().map(move |y| x * y))
        .collect();
    from_products(v)
}

/// Exponent vectors of degree `d` in `nvars` variables, graded
/// lexicographic with x0 > x1 > ... .
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == nvars {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k);
            rec(nvars, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars > 0 {
        rec(nvars, d, &mut Vec::new(), &mut out);
    }
    out
}

/// The d-uple embedding: all degree-`d` monomials in the coordinates.
pub fn veronese(p: &ProjPointQ, d: u32) -> Result<ProjPointQ> {
    if d == 0 {
        return Err(Error::InvalidPoint("veronese degree must be positive".into()));
    }
    let v = monomials_of_degree(p.coords.len(), d)
        .into_iter()
        .map(|e| {
            e.iter()
                .zip(&p.coords)
                .fold(BigInt::one(), |acc, (&k, x)| acc * x.pow(k))
        })
        .collect();
    Ok(from_products(v))
}

pub fn power_point(p: &ProjPointQ, m: u32) -> Result<ProjPointQ> {
    if m == 0 {
        return Err(Error::InvalidPoint("power must be positive".into()));
    }
    Ok(from_products(p.coords.iter().map(|x| x.pow(m)).collect()))
}

/// Over Q the only roots of unity are ±1, so this is "all coordinates in {-1, 0, 1}".
pub fn is_kronecker_unit(p: &ProjPointQ) -> bool {
    p.coords.iter().all(|x| x.abs() <= BigInt::one())
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Number of points of P^n(Q) with height at most `c`, by walking the box
/// `[-c, c]^(n+1)` and keeping primitive tuples with positive leading sign.
pub fn count_points_of_bounded_height(n: usize, c: u64, budget: u128) -> Result<u64> {
    if n == 0 || c == 0 {
        return Err(Error::InvalidPoint("need n >= 1 and c >= 1".into()));
    }
    let side = 2 * c as u128 + 1;
    let total = side.checked_pow(n as u32 + 1).unwrap_or(u128::MAX);
    if total > budget {
        return Err(Error::Budget(format!(
            "{total} tuples exceed the enumeration budget {budget}"
        )));
    }
    let c = c as i64;
    let mut v = vec![-c; n + 1];
    let mut count = 0u64;
    loop {
        if let Some(first) = v.iter().find(|&&x| x != 0) {
            if *first > 0 && v.iter().fold(0, |g, &x| gcd_u64(g, x.unsigned_abs())) == 1 {
                count += 1;
            }
        }
        // odometer
        let mut i = 0;
        loop {
            if i == v.len() {
                return Ok(count);
            }
            if v[i] < c {
                v[i] += 1;
                break;
            }
            v[i] = -c;
            i += 1;
        }
    }
}

/// Homogeneous polynomial map P^n -> P^r.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMapQ {
    components: Vec<Poly>,
    degree: u32,
    source_dim: usize,
}

impl RationalMapQ {
    /// Components must be homogeneous of one common degree in `source_dim + 1`
    /// variables, not all zero. Zero components are allowed.
    pub fn new(source_dim: usize, components: Vec<Poly>) -> Result<Self> {
        let nv = source_dim + 1;
        let mut degree = None;
        for f in &components {
            if f.nvars() > nv {
                return Err(Error::DimensionMismatch { expected: nv, got: f.nvars() });
            }
            if f.is_zero() {
                continue;
            }
            let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
            if *degree.get_or_insert(d) != d {
                return Err(Error::NotHomogeneous);
            }
        }
        let degree = degree.ok_or(Error::ZeroPolynomial("a rational map"))?;
        let components = components.into_iter().map(|f| f.with_nvars(nv)).collect();
        Ok(RationalMapQ { components, degree, source_dim })
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.components.len() - 1
    }

    /// Height of the concatenated coefficient vector, each component read in
    /// graded lexicographic order.
    pub fn height(&self) -> BigInt {
        let coeffs: Vec<Rat> = self
            .components
            .iter()
            .flat_map(|f| f.terms_grlex().into_iter().map(|(_, c)| c.clone()))
            .collect();
        normalize(&coeffs).map(|p| p.height()).unwrap_or_else(|_| BigInt::one())
    }

    /// Largest number of monomials in any component.
    pub fn monomial_bound(&self) -> usize {
        self.components.iter().map(|f| f.num_terms()).max().unwrap_or(0)
    }
}

pub fn apply_rational_map(phi: &RationalMapQ, p: &ProjPointQ) -> Result<ProjPointQ> {
    if p.dim() != phi.source_dim {
        return Err(Error::DimensionMismatch { expected: phi.source_dim, got: p.dim() });
    }
    let x = p.to_rationals();
    let vals = phi
        .components
        .iter()
        .map(|f| f.eval(&x))
        .collect::<Result<Vec<_>>>()?;
    if vals.iter().all(|v| v.is_zero()) {
        return Err(Error::CommonZero);
    }
    normalize(&vals)
}

/// `H(phi(P)) <= N * H(phi) * H(P)^m`.
pub fn check_rational_map_bound(phi: &RationalMapQ, p: &ProjPointQ) -> Result<BoundReport> {
    let image = apply_rational_map(phi, p)?;
    let rhs = BigInt::from(phi.monomial_bound()) * phi.height() * p.height().pow(phi.degree);
    Ok(BoundReport::le(
        "rational map",
        Rat::from_integer(image.height()),
        Rat::from_integer(rhs),
    ))
}

/// Determinant by fraction-exact Gaussian elimination.
pub fn determinant(m: &[Vec<Rat>]) -> Result<Rat> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidTransformation("matrix is not square".into()));
    }
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Ok(Rat::zero());
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= &a[col][col];
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &a[col][col];
            let (top, bottom) = a.split_at_mut(r);
            for (x, y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x -= &f * y;
            }
        }
    }
    Ok(det)
}

/// Height of a matrix: max entry of its primitive integer multiple.
pub fn matrix_height(m: &[Vec<Rat>]) -> BigInt {
    let flat: Vec<Rat> = m.iter().flatten().cloned().collect();
    normalize(&flat).map(|p| p.height()).unwrap_or_else(|_| BigInt::zero())
}

/// `normalize(M * P)` for a nonsingular square matrix.
pub fn apply_matrix(m: &[Vec<Rat>], p: &ProjPointQ) -> Result<ProjPointQ> {
    if m.len() != p.coords.len() {
        return Err(Error::DimensionMismatch { expected: m.len(), got: p.coords.len() });
    }
    if determinant(m)?.is_zero() {
        return Err(Error::InvalidTransformation("singular matrix".into()));
    }
    let x = p.to_rationals();
    let v: Vec<Rat> = m
        .iter()
        .map(|row| row.iter().zip(&x).map(|(a, b)| a * b).sum())
        .collect();
    normalize(&v)
}

/// `H(M P) <= (n+1) H(M) H(P)`.
pub fn check_matrix_bound(m: &[Vec<Rat>], p: &ProjPointQ) -> Result<BoundReport> {
    let image = apply_matrix(m, p)?;
    let rhs = BigInt::from(p.coords.len()) * matrix_height(m) * p.height();
    Ok(BoundReport::le(
        "matrix action",
        Rat::from_integer(image.height()),
        Rat::from_integer(rhs),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn pt(v: &[i64]) -> ProjPointQ {
        ProjPointQ::from_i64(v).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize(&[rat(1, 2), rat(1, 3)]).unwrap().coords(), big(&[3, 2]));
        assert_eq!(pt(&[2, 4, 6]).coords(), big(&[1, 2, 3]));
        assert_eq!(pt(&[-2, 4]).coords(), big(&[1, -2]));
        assert_eq!(pt(&[0, -3, 6]).coords(), big(&[0, 1, -2]));
        assert!(normalize(&[int(0), int(0)]).is_err());
        assert!(normalize(&[]).is_err());
    }

    #[test]
    fn heights() {
        let p = pt(&[3, 3, 12, 6, 3, 6]);
        assert_eq!(p.coords(), big(&[1, 1, 4, 2, 1, 2]));
        assert_eq!(p.height(), BigInt::from(4));
        assert!((p.log_height() - 4f64.ln()).abs() < 1e-12);
        assert_eq!(pt(&[5, 7]).height(), BigInt::from(7));
        assert_eq!(pt(&[1, 1]).log_height(), 0.0);
        assert!((pt(&[1, 2]).log_height() - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn embeddings() {
        assert_eq!(segre(&pt(&[1, 0]), &pt(&[1, 0])).coords(), big(&[1, 0, 0, 0]));
        assert_eq!(segre(&pt(&[1, 2]), &pt(&[1, 3])).coords(), big(&[1, 3, 2, 6]));
        assert_eq!(segre(&pt(&[2, 5]), &pt(&[3, 7])).height(), BigInt::from(35));
        assert_eq!(veronese(&pt(&[1, 1]), 2).unwrap().coords(), big(&[1, 1, 1]));
        assert_eq!(veronese(&pt(&[2, 1]), 3).unwrap().coords(), big(&[8, 4, 2, 1]));
        assert_eq!(veronese(&pt(&[2, 3]), 4).unwrap().height(), BigInt::from(81));
        assert_eq!(veronese(&pt(&[1, 1, 1]), 3).unwrap().dim(), 9);
        assert_eq!(power_point(&pt(&[1, 2]), 3).unwrap().coords(), big(&[1, 8]));
        assert_eq!(power_point(&pt(&[2, 3]), 2).unwrap().height(), BigInt::from(9));
    }

    #[test]
    fn veronese_orders_monomials_grlex() {
        assert_eq!(
            monomials_of_degree(3, 2),
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
    }

    #[test]
    fn kronecker() {
        assert!(is_kronecker_unit(&pt(&[1, -1, 0, 1])));
        assert!(!is_kronecker_unit(&pt(&[1, 2])));
        assert!(is_kronecker_unit(&pt(&[2, 2, -2])));
    }

    #[test]
    fn northcott_counts() {
        let b = DEFAULT_ENUMERATION_BUDGET;
        assert_eq!(count_points_of_bounded_height(1, 1, b).unwrap(), 4);
        assert_eq!(count_points_of_bounded_height(1, 2, b).unwrap(), 8);
        assert_eq!(count_points_of_bounded_height(2, 1, b).unwrap(), 13);
        assert!(matches!(count_points_of_bounded_height(5, 100, b), Err(Error::Budget(_))));
    }

    fn x(i: usize) -> Poly {
        Poly::var(2, i)
    }

    #[test]
    fn rational_maps() {
        let id = RationalMapQ::new(1, vec![x(0), x(1)]).unwrap();
        assert_eq!(apply_rational_map(&id, &pt(&[2, 3])).unwrap(), pt(&[2, 3]));
        let sq = RationalMapQ::new(1, vec![&x(0) * &x(0), &x(1) * &x(1)]).unwrap();
        assert_eq!(apply_rational_map(&sq, &pt(&[2, 3])).unwrap(), pt(&[4, 9]));
        let phi = RationalMapQ::new(
            1,
            vec![&(&x(0) * &x(0)) + &(&x(1) * &x(1)), (&x(0) * &x(1)).scale(&int(2))],
        )
        .unwrap();
        assert_eq!(apply_rational_map(&phi, &pt(&[1, 2])).unwrap(), pt(&[5, 4]));
        let r = check_rational_map_bound(&phi, &pt(&[1, 2])).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (int(5), int(16), true));
        let diag = RationalMapQ::new(1, vec![&x(0) * &x(1), Poly::zero()]).unwrap();
        assert_eq!(apply_rational_map(&diag, &pt(&[0, 1])), Err(Error::CommonZero));
        assert_eq!(RationalMapQ::new(1, vec![x(0), &x(0) * &x(1)]), Err(Error::NotHomogeneous));
    }

    #[test]
    fn matrices() {
        let m = |v: [i64; 4]| vec![vec![int(v[0]), int(v[1])], vec![int(v[2]), int(v[3])]];
        assert_eq!(apply_matrix(&m([1, 0, 0, 1]), &pt(&[3, 5])).unwrap(), pt(&[3, 5]));
        assert_eq!(apply_matrix(&m([0, 1, 1, 0]), &pt(&[3, 5])).unwrap(), pt(&[5, 3]));
        assert_eq!(apply_matrix(&m([1, 1, 0, 1]), &pt(&[1, 4])).unwrap(), pt(&[5, 4]));
        let r = check_matrix_bound(&m([1, 1, 0, 1]), &pt(&[1, 4])).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (int(5), int(8), true));
        assert!(matches!(
            apply_matrix(&m([1, 2, 2, 4]), &pt(&[1, 1])),
            Err(Error::InvalidTransformation(_))
        ));
        assert_eq!(determinant(&m([1, 2, 3, 4])).unwrap(), int(-2));
    }
}
