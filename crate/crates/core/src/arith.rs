//! Exact integer and rational helpers: parsing, primitive representatives,
//! p-adic valuations and small-scale factorization.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rat;

/// Default number of trial divisions allowed when factoring a denominator.
pub const DEFAULT_FACTOR_BUDGET: u64 = 10_000_000;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Formats as `p/q`, eliding `q = 1`.
pub fn format_rational(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn gcd_of<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// Clears denominators and divides out the content. No sign normalization;
/// returns `None` for the zero vector.
pub fn primitive_part(values: &[Rat]) -> Option<Vec<BigInt>> {
    if values.iter().all(Zero::is_zero) {
        return None;
    }
    let l = lcm_of_denominators(values);
    let ints: Vec<BigInt> = values.iter().map(|v| (v * &l).to_integer()).collect();
    let g = gcd_of(&ints);
    Some(ints.into_iter().map(|v| v / &g).collect())
}

/// Primitive integer representative with first nonzero entry positive.
pub fn canonical_integer_vector(values: &[Rat]) -> Option<Vec<BigInt>> {
    let mut v = primitive_part(values)?;
    if first_nonzero_sign(&v) == Sign::Minus {
        v.iter_mut().for_each(|x| *x = -x.clone());
    }
    Some(v)
}

pub fn first_nonzero_sign(v: &[BigInt]) -> Sign {
    v.iter()
        .find(|x| !x.is_zero())
        .map(|x| x.sign())
        .unwrap_or(Sign::NoSign)
}

/// Largest absolute value in a slice of integers (0 for an empty slice).
pub fn max_abs(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
}

pub fn max_abs_rat<'a>(v: impl IntoIterator<Item = &'a Rat>) -> Rat {
    v.into_iter().map(|x| x.abs()).max().unwrap_or_else(Rat::zero)
}

/// Exponent of `p` in the nonzero integer `n`.
pub fn valuation(n: &BigInt, p: &BigInt) -> u64 {
    debug_assert!(!n.is_zero());
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn rat_valuation(r: &Rat, p: &BigInt) -> i64 {
    valuation(r.numer(), p) as i64 - valuation(r.denom(), p) as i64
}

/// `p^e` as an exact rational, `e` possibly negative.
pub fn rat_pow(p: &BigInt, e: i64) -> Rat {
    let m = num_traits::pow(p.clone(), e.unsigned_abs() as usize);
    if e >= 0 {
        Rat::from_integer(m)
    } else {
        Rat::new(BigInt::one(), m)
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let s = n.sqrt();
    &s * &s == *n
}

/// True iff `r` is the square of a nonzero rational.
pub fn is_rational_square(r: &Rat) -> bool {
    r.is_positive() && is_perfect_square(r.numer()) && is_perfect_square(r.denom())
}

/// Miller-Rabin with the first twelve prime bases.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    const SMALL: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    // deterministic below 3.3e24; a strong probable-prime test beyond
    'witness: for a in SMALL {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigInt::from(2), n);
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime divisors of `|n|` by trial division, with a final
/// primality test on the cofactor.
pub fn prime_divisors(n: &BigInt, budget: u64) -> Result<Vec<BigInt>> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return Err(Error::InvalidPoint("cannot factor zero".into()));
    }
    let mut p = BigInt::from(2);
    let mut steps = 0u64;
    let mut cofactor_prime = is_probable_prime(&n);
    while !cofactor_prime && &p * &p <= n {
        if (&n % &p).is_zero() {
            out.push(p.clone());
            while (&n % &p).is_zero() {
                n /= &p;
            }
            cofactor_prime = is_probable_prime(&n);
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
        steps += 1;
        if steps > budget {
            return Err(Error::Budget(format!(
                "factorization exceeded {budget} trial divisions"
            )));
        }
    }
    if n > BigInt::one() {
        out.push(n);
    }
    Ok(out)
}

/// Lossy conversion used only for logarithms and reporting.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Natural logarithm of a positive big integer, exact to f64 rounding even
/// when the integer overflows f64.
pub fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return n.to_f64().unwrap_or(f64::NAN).ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap_or(f64::NAN);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}
