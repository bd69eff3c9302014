//! Gauss norms, affine and projective heights of polynomials over Q, and
//! exact checkers for the standard height inequalities.
//!
//! Integer constants that appear in the per-place bounds (`|2|_v`,
//! `|deg f|_v`, ...) are taken at their real size at the archimedean place
//! and as 1 at every prime, which is the reading under which those bounds
//! are theorems.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{
    binomial, gcd_of, int, is_probable_prime, lcm_of_denominators, prime_divisors, rat_pow,
    rat_valuation, DEFAULT_FACTOR_BUDGET,
};
use crate::error::{Error, Result};
use crate::report::BoundReport;
use crate::scalar::pow;
use crate::{Poly, Rat};

/// Lower bound for e used on the right-hand side of Gelfand's inequality.
pub fn e_lower_bound() -> Rat {
    Rat::new(BigInt::from(2_718_281_828u64), BigInt::from(1_000_000_000u64))
}

/// A place of Q.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlaceQ {
    Infinity,
    Prime(BigInt),
}

impl PlaceQ {
    pub fn prime(p: impl Into<BigInt>) -> Result<Self> {
        let p = p.into();
        if is_probable_prime(&p) {
            Ok(PlaceQ::Prime(p))
        } else {
            Err(Error::InvalidPoint(format!("{p} is not prime")))
        }
    }

    pub fn is_archimedean(&self) -> bool {
        matches!(self, PlaceQ::Infinity)
    }

    /// `|x|_v`, exactly.
    pub fn abs(&self, x: &Rat) -> Rat {
        match self {
            _ if x.is_zero() => Rat::zero(),
            PlaceQ::Infinity => x.abs(),
            PlaceQ::Prime(p) => rat_pow(p, -rat_valuation(x, p)),
        }
    }

    /// Size of an integer constant in a bound: itself at infinity, 1 at primes.
    pub fn constant(&self, c: &Rat) -> Rat {
        match self {
            PlaceQ::Infinity => c.abs(),
            PlaceQ::Prime(_) => Rat::one(),
        }
    }
}

impl std::fmt::Display for PlaceQ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PlaceQ::Infinity => f.write_str("inf"),
            PlaceQ::Prime(p) => write!(f, "{p}"),
        }
    }
}

fn nonzero(f: &Poly, what: &'static str) -> Result<()> {
    if f.is_zero() {
        Err(Error::ZeroPolynomial(what))
    } else {
        Ok(())
    }
}

/// `max |a_i|_v`; zero for the zero polynomial.
pub fn norm_at(f: &Poly, v: &PlaceQ) -> Rat {
    f.coefficients().map(|a| v.abs(a)).max().unwrap_or_else(Rat::zero)
}

pub fn gauss_norm(f: &Poly, v: &PlaceQ) -> Result<Rat> {
    nonzero(f, "the Gauss norm")?;
    Ok(norm_at(f, v))
}

/// `max |b_i|_v` over a vector.
pub fn vector_norm(b: &[Rat], v: &PlaceQ) -> Rat {
    b.iter().map(|x| v.abs(x)).max().unwrap_or_else(Rat::zero)
}

/// Primes dividing a denominator or the common numerator content; every
/// other prime has Gauss norm exactly 1.
pub fn contributing_primes<'a>(values: impl IntoIterator<Item = &'a Rat> + Clone) -> Result<Vec<BigInt>> {
    let lcm = lcm_of_denominators(values.clone());
    let numers: Vec<BigInt> = values.into_iter().map(|a| a.numer().clone()).collect();
    let content = gcd_of(&numers);
    let mut set = BTreeSet::new();
    for n in [lcm, content] {
        if n > BigInt::one() {
            set.extend(prime_divisors(&n, DEFAULT_FACTOR_BUDGET)?);
        }
    }
    Ok(set.into_iter().collect())
}

/// Places where some of `values` has norm different from 1, plus infinity.
pub fn places_for<'a>(values: impl IntoIterator<Item = &'a Rat>) -> Result<Vec<PlaceQ>> {
    let mut primes = BTreeSet::new();
    for a in values {
        if a.is_zero() {
            continue;
        }
        for n in [a.numer(), a.denom()] {
            if n.abs() > BigInt::one() {
                primes.extend(prime_divisors(n, DEFAULT_FACTOR_BUDGET)?);
            }
        }
    }
    let mut out = vec![PlaceQ::Infinity];
    out.extend(primes.into_iter().map(PlaceQ::Prime));
    Ok(out)
}

/// `prod_v max(1, |f|_v)`. Only primes dividing a denominator contribute.
pub fn affine_height(f: &Poly) -> Result<Rat> {
    nonzero(f, "the affine height")?;
    Ok(affine_height_of(&f.coefficients().cloned().collect::<Vec<_>>()))
}

/// Affine height of a coefficient vector; 1 for the zero vector.
pub fn affine_height_of(values: &[Rat]) -> Rat {
    let lcm = lcm_of_denominators(values);
    let primes = if lcm > BigInt::one() {
        prime_divisors(&lcm, DEFAULT_FACTOR_BUDGET).expect("denominator factorization")
    } else {
        Vec::new()
    };
    let mut h = Rat::one().max(vector_norm(values, &PlaceQ::Infinity));
    for p in primes {
        h *= Rat::one().max(vector_norm(values, &PlaceQ::Prime(p)));
    }
    h
}

/// `prod_v |f|_v`; invariant under scaling.
pub fn projective_height(f: &Poly) -> Result<Rat> {
    nonzero(f, "the projective height")?;
    projective_height_of(&f.coefficients().cloned().collect::<Vec<_>>())
}

pub fn projective_height_of(values: &[Rat]) -> Result<Rat> {
    if values.iter().all(|a| a.is_zero()) {
        return Err(Error::ZeroPolynomial("the projective height"));
    }
    let mut h = vector_norm(values, &PlaceQ::Infinity);
    for p in contributing_primes(values.iter())? {
        h *= vector_norm(values, &PlaceQ::Prime(p));
    }
    Ok(h)
}

/// Index of the only variable that occurs in `f`, if any.
pub fn single_variable(f: &Poly) -> Result<Option<usize>> {
    let mut var = None;
    for (e, _) in f.terms() {
        for (i, &k) in e.iter().enumerate() {
            if k > 0 && var.replace(i).is_some_and(|j| j != i) {
                return Err(Error::DimensionMismatch { expected: 1, got: f.nvars() });
            }
        }
    }
    Ok(var)
}

/// Dense ascending coefficients of a polynomial in one variable.
pub fn to_univariate(f: &Poly) -> Result<Vec<Rat>> {
    let var = single_variable(f)?;
    let deg = var.map_or(0, |v| f.degree_in(v)) as usize;
    let mut out = vec![Rat::zero(); deg + 1];
    for (e, c) in f.terms() {
        let k = var.map_or(0, |v| e[v]) as usize;
        out[k] = c.clone();
    }
    Ok(out)
}

pub fn mahler_measure(f: &Poly, tol: f64) -> Result<f64> {
    nonzero(f, "the Mahler measure")?;
    crate::roots::mahler_measure(&to_univariate(f)?, tol)
}

/// `|fg|_p == |f|_p |g|_p`, exactly.
pub fn check_gauss_lemma(f: &Poly, g: &Poly, p: &BigInt) -> Result<bool> {
    nonzero(f, "the Gauss norm")?;
    nonzero(g, "the Gauss norm")?;
    let v = PlaceQ::prime(p.clone())?;
    Ok(norm_at(&(f * g), &v) == norm_at(f, &v) * norm_at(g, &v))
}

/// Largest number of term tuples `(t_1, ..., t_r)`, one from each factor,
/// whose exponents add up to the same monomial.
pub fn product_term_multiplicity(fs: &[Poly]) -> usize {
    let mut counts: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    counts.insert(Vec::new(), 1);
    for f in fs {
        let mut next: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
        for (e, n) in &counts {
            for (g, _) in f.terms() {
                let len = e.len().max(g.len());
                let s: Vec<u32> = (0..len)
                    .map(|i| e.get(i).copied().unwrap_or(0) + g.get(i).copied().unwrap_or(0))
                    .collect();
                *next.entry(s).or_default() += n;
            }
        }
        counts = next;
    }
    counts.into_values().max().unwrap_or(0)
}

fn product(fs: &[Poly]) -> Poly {
    fs.iter().fold(Poly::one(), |acc, f| &acc * f)
}

fn all_nonzero(fs: &[Poly], what: &'static str) -> Result<()> {
    if fs.is_empty() {
        return Err(Error::DimensionMismatch { expected: 1, got: 0 });
    }
    fs.iter().try_for_each(|f| nonzero(f, what))
}

/// `H^A(f_1 ... f_r) <= N prod H^A(f_j)`.
pub fn check_product_bound(fs: &[Poly]) -> Result<BoundReport> {
    all_nonzero(fs, "the affine height")?;
    let lhs = affine_height(&product(fs))?;
    let mut rhs = int(product_term_multiplicity(fs) as i64);
    for f in fs {
        rhs *= affine_height(f)?;
    }
    Ok(BoundReport::le("product", lhs, rhs))
}

/// `H^A(sum f_j) <= r prod H^A(f_j)`, plus `<= r max H^A(f_j)` when all
/// coefficients are integers.
pub fn check_sum_bound(fs: &[Poly]) -> Result<Vec<BoundReport>> {
    all_nonzero(fs, "the affine height")?;
    let sum = fs.iter().fold(Poly::zero(), |acc, f| &acc + f);
    let lhs = affine_height_of(&sum.coefficients().cloned().collect::<Vec<_>>());
    let r = int(fs.len() as i64);
    let heights = fs.iter().map(affine_height).collect::<Result<Vec<_>>>()?;
    let prod: Rat = heights.iter().product();
    let mut out = vec![BoundReport::le("sum", lhs.clone(), &r * prod)];
    if fs.iter().all(|f| f.coefficients().all(|c| c.is_integer())) {
        let max = heights.into_iter().max().expect("nonempty");
        out.push(BoundReport::le("sum of integral", lhs, &r * max));
    }
    Ok(out)
}

/// `prod H(f_i) <= e^(d_1 + ... + d_n) H(f_1 ... f_r)` with projective
/// heights and `d_i` the degree of the product in `x_i`. The right side
/// uses a rational lower bound for e, so `holds` is never a false positive.
pub fn check_gelfand(fs: &[Poly]) -> Result<BoundReport> {
    all_nonzero(fs, "the projective height")?;
    let prod = product(fs);
    let mut lhs = Rat::one();
    for f in fs {
        lhs *= projective_height(f)?;
    }
    let total: u32 = (0..prod.nvars()).map(|i| prod.degree_in(i)).sum();
    let rhs = pow(&e_lower_bound(), total) * projective_height(&prod)?;
    Ok(BoundReport::le("gelfand", lhs, rhs))
}

/// `|df/dx_j|_v <= |deg f|_v |f|_v`.
pub fn check_derivative_bound(f: &Poly, j: usize, v: &PlaceQ) -> Result<BoundReport> {
    nonzero(f, "the Gauss norm")?;
    if j >= f.nvars() {
        return Err(Error::DimensionMismatch { expected: f.nvars(), got: j + 1 });
    }
    let d = int(f.total_degree().unwrap_or(0) as i64);
    let lhs = norm_at(&f.derivative(j), v);
    Ok(BoundReport::le(format!("derivative at {v}"), lhs, v.constant(&d) * norm_at(f, v)))
}

/// `|f(b)|_v <= min{|2d|_v^n, |2|_v^d} max{1, |b|_v}^d |f|_v`, with the
/// constant exactly as usually stated. At the archimedean place the
/// constant can be smaller than the number of monomials, e.g.
/// `f = x + y + 1`, `b = (1, 1)`, so this check can legitimately fail.
pub fn check_evaluation_bound(f: &Poly, b: &[Rat], v: &PlaceQ) -> Result<BoundReport> {
    nonzero(f, "the Gauss norm")?;
    if b.len() != f.nvars() {
        return Err(Error::DimensionMismatch { expected: f.nvars(), got: b.len() });
    }
    let d = f.total_degree().unwrap_or(0);
    if d == 0 {
        return Err(Error::UnsupportedDegree { got: 0, what: "evaluation bound needs positive degree" });
    }
    let n = f.nvars() as u32;
    let c = std::cmp::min(
        pow(&v.constant(&int(2 * d as i64)), n),
        pow(&v.constant(&int(2)), d),
    );
    let lhs = v.abs(&f.eval(b)?);
    let rhs = c * pow(&Rat::one().max(vector_norm(b, v)), d) * norm_at(f, v);
    Ok(BoundReport::le(format!("evaluation at {v}"), lhs, rhs))
}

/// `f(u_1 x_1 + b_1, ..., u_n x_n + b_n)`.
pub fn affine_subst(f: &Poly, u: &[Rat], b: &[Rat]) -> Result<Poly> {
    let n = f.nvars();
    for len in [u.len(), b.len()] {
        if len != n {
            return Err(Error::DimensionMismatch { expected: n, got: len });
        }
    }
    let images: Vec<Poly> = (0..n)
        .map(|i| &Poly::var(n, i).scale(&u[i]) + &Poly::constant(n, b[i].clone()))
        .collect();
    f.compose(&images)
}

/// `f(x + b)`.
pub fn shift_poly(f: &Poly, b: &[Rat]) -> Result<Poly> {
    affine_subst(f, &vec![Rat::one(); f.nvars()], b)
}

/// `f(u x)`.
pub fn scale_poly(f: &Poly, u: &[Rat]) -> Result<Poly> {
    affine_subst(f, u, &vec![Rat::zero(); f.nvars()])
}

/// All shift/scale bounds for the triple `(f, u, b)`: the per-place forms at
/// every place where something is not a unit, and the height forms
/// `H(f_b) <= 4^d H(b)^d H(f)`, `H(f_u) <= H(u)^d H(f)` and
/// `H(f(ux+b)) <= 4^d H(u)^d H(b)^d H(f)`, where `H(b)` is the height of
/// `[1, b_1, ..., b_n]`.
pub fn check_shift_bounds(f: &Poly, u: &[Rat], b: &[Rat]) -> Result<Vec<BoundReport>> {
    nonzero(f, "the Gauss norm")?;
    let fb = shift_poly(f, b)?;
    let fu = scale_poly(f, u)?;
    let fub = affine_subst(f, u, b)?;
    let d = f.total_degree().unwrap_or(0);
    let places = places_for(f.coefficients().chain(u).chain(b))?;
    let mut out = Vec::new();
    for v in &places {
        let two = pow(&v.constant(&int(2)), 2 * d);
        let mb = pow(&Rat::one().max(vector_norm(b, v)), d);
        let mu = pow(&Rat::one().max(vector_norm(u, v)), d);
        let nf = norm_at(f, v);
        out.push(BoundReport::le(format!("shift at {v}"), norm_at(&fb, v), &two * &mb * &nf));
        out.push(BoundReport::le(format!("scale at {v}"), norm_at(&fu, v), &mu * &nf));
        out.push(BoundReport::le(format!("affine at {v}"), norm_at(&fub, v), &two * &mu * &mb * &nf));
    }
    let with_one = |w: &[Rat]| {
        let mut v = vec![Rat::one()];
        v.extend_from_slice(w);
        projective_height_of(&v).expect("leading 1")
    };
    let hf = projective_height(f)?;
    let hb = pow(&with_one(b), d);
    let hu = pow(&with_one(u), d);
    let four = pow(&int(4), d);
    let height = |g: &Poly| if g.is_zero() { Ok(Rat::zero()) } else { projective_height(g) };
    out.push(BoundReport::le("shift height", height(&fb)?, &four * &hb * &hf));
    out.push(BoundReport::le("scale height", height(&fu)?, &hu * &hf));
    out.push(BoundReport::le("affine height", height(&fub)?, &four * &hu * &hb * &hf));
    Ok(out)
}

/// Value of a homogeneous `f` in `n+1` variables at `alpha`, with the check
/// `|f(alpha)|_v <= |c(d,n)|_v max_j |alpha_j|_v^d |f|_v`, `c = C(n+d, d)`,
/// at every place where the inputs are not units.
pub fn eval_homogeneous(f: &Poly, alpha: &[Rat]) -> Result<(Rat, Vec<BoundReport>)> {
    nonzero(f, "the Gauss norm")?;
    let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if alpha.len() != f.nvars() {
        return Err(Error::DimensionMismatch { expected: f.nvars(), got: alpha.len() });
    }
    let value = f.eval(alpha)?;
    let n = (f.nvars() as u64).saturating_sub(1);
    let c = Rat::from_integer(binomial(n + d as u64, d as u64));
    let mut reports = Vec::new();
    for v in places_for(f.coefficients().chain(alpha).chain([&value]))? {
        let rhs = v.constant(&c) * pow(&vector_norm(alpha, &v), d) * norm_at(f, &v);
        reports.push(BoundReport::le(format!("homogeneous at {v}"), v.abs(&value), rhs));
    }
    Ok((value, reports))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::parse::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn prime(n: i64) -> PlaceQ {
        PlaceQ::prime(n).unwrap()
    }

    #[test]
    fn gauss_norms() {
        let f = p("6x+4");
        assert_eq!(gauss_norm(&f, &prime(2)).unwrap(), rat(1, 2));
        assert_eq!(gauss_norm(&f, &prime(3)).unwrap(), int(1));
        let g = p("3x^3+3x^2+12x*y+6y^2+3y+6");
        assert_eq!(gauss_norm(&g, &PlaceQ::Infinity).unwrap(), int(12));
        assert!(gauss_norm(&Poly::zero(), &PlaceQ::Infinity).is_err());
        assert!(PlaceQ::prime(6).is_err());
    }

    #[test]
    fn heights() {
        let g = p("3x^3+3x^2+12xy+6y^2+3y+6");
        assert_eq!(affine_height(&g).unwrap(), int(12));
        assert_eq!(projective_height(&g).unwrap(), int(4));
        assert_eq!(affine_height(&p("x+1")).unwrap(), int(1));
        assert_eq!(affine_height(&p("1/2 x + 1")).unwrap(), int(2));
        assert_eq!(projective_height(&p("7x-7y")).unwrap(), int(1));
        assert_eq!(projective_height(&p("6x+4")).unwrap(), int(3));
        assert_eq!(affine_height(&p("2/3 x + 5/4")).unwrap(), int(15));
    }

    #[test]
    fn gauss_lemma_examples() {
        let two = BigInt::from(2);
        assert!(check_gauss_lemma(&p("2x+2"), &p("3x+3"), &two).unwrap());
        assert!(check_gauss_lemma(&p("x+1"), &p("x-1"), &BigInt::from(5)).unwrap());
    }

    #[test]
    fn product_and_sum() {
        let r = check_product_bound(&[p("x"), p("x")]).unwrap();
        assert_eq!((r.lhs.clone(), r.holds), (int(1), true));
        let r = check_product_bound(&[p("2x+1"), p("3x-1")]).unwrap();
        // 6x^2 + x - 1: lhs 6, N = 2, rhs 2*2*3
        assert_eq!((r.lhs, r.rhs, r.holds), (int(6), int(12), true));
        let f = p("x^2+3y");
        let rs = check_sum_bound(&[f.clone(), -f]).unwrap();
        assert!(rs.iter().all(|r| r.holds));
        assert_eq!(rs[0].lhs, int(1));
        assert_eq!(product_term_multiplicity(&[p("x+1"), p("x+1"), p("x+1")]), 3);
    }

    #[test]
    fn gelfand_examples() {
        let r = check_gelfand(&[p("x+1"), p("x-1")]).unwrap();
        assert_eq!(r.lhs, int(1));
        assert!(r.holds);
        let lehmer = p("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1");
        assert!(check_gelfand(&[lehmer.clone(), lehmer]).unwrap().holds);
    }

    #[test]
    fn derivative_examples() {
        let r = check_derivative_bound(&p("x^2"), 0, &PlaceQ::Infinity).unwrap();
        assert_eq!((r.lhs, r.rhs), (int(2), int(2)));
        let r = check_derivative_bound(&p("x^3+x^2"), 0, &prime(3)).unwrap();
        assert!(r.holds);
        let r = check_derivative_bound(&p("x^5"), 0, &prime(5)).unwrap();
        assert_eq!((r.lhs, r.rhs), (rat(1, 5), int(1)));
    }

    #[test]
    fn evaluation_examples() {
        let r = check_evaluation_bound(&p("x"), &[int(1)], &PlaceQ::Infinity).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (int(1), int(2), true));
        let r = check_evaluation_bound(&p("x+y"), &[int(1), int(1)], &PlaceQ::Infinity).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (int(2), int(2), true));
        let r = check_evaluation_bound(&p("x"), &[int(1)], &prime(2)).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn stated_evaluation_constant_is_too_small_for_three_monomials() {
        let r = check_evaluation_bound(&p("x+y+1"), &[int(1), int(1)], &PlaceQ::Infinity).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (int(3), int(2), false));
    }

    #[test]
    fn shifts() {
        assert_eq!(shift_poly(&p("x^2"), &[int(1)]).unwrap(), p("x^2+2x+1"));
        assert_eq!(scale_poly(&p("x+y"), &[int(2), int(3)]).unwrap(), p("2x+3y"));
        let f = p("x^2");
        assert_eq!(affine_subst(&f, &[int(2)], &[int(1)]).unwrap(), p("4x^2+4x+1"));
        let rs = check_shift_bounds(&f, &[int(2)], &[int(1)]).unwrap();
        assert!(rs.iter().all(|r| r.holds), "{rs:?}");
        let aff = rs.iter().find(|r| r.label == "affine at inf").unwrap();
        assert_eq!((aff.lhs.clone(), aff.rhs.clone()), (int(4), int(16 * 4)));
        assert!(shift_poly(&f, &[int(1), int(2)]).is_err());
    }

    #[test]
    fn homogeneous_evaluation() {
        let (v, rs) = eval_homogeneous(&p("x^2+y^2"), &[int(1), int(1)]).unwrap();
        assert_eq!(v, int(2));
        assert_eq!((rs[0].lhs.clone(), rs[0].rhs.clone()), (int(2), int(3)));
        assert!(rs.iter().all(|r| r.holds));
        assert_eq!(eval_homogeneous(&p("xy"), &[int(0), int(5)]).unwrap().0, int(0));
        assert_eq!(eval_homogeneous(&p("x^6").with_nvars(2), &[int(2), int(1)]).unwrap().0, int(64));
        assert_eq!(eval_homogeneous(&p("x^2+y"), &[int(1), int(1)]), Err(Error::NotHomogeneous));
    }
}
