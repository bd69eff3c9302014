//! Sparse multivariate polynomials over any [`Ring`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{from_int, pow, Ring, Scalar};
use crate::Rat;

/// Exponent vector, one entry per variable.
pub type Exponent = Vec<u32>;

/// Sparse polynomial: exponent vectors mapped to nonzero coefficients.
///
/// Arithmetic between polynomials declared with different `nvars` pads the
/// shorter exponent vectors with zeros, so constants built through
/// [`Zero`]/[`One`] (which carry `nvars = 0`) mix freely with anything.
#[derive(Clone, Debug)]
pub struct MultiPoly<T> {
    nvars: usize,
    terms: BTreeMap<Exponent, T>,
}

fn pad(e: &[u32], n: usize) -> Exponent {
    let mut v = e.to_vec();
    v.resize(n, 0);
    v
}

fn trimmed(e: &[u32]) -> &[u32] {
    let end = e.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1);
    &e[..end]
}

impl<T: Ring> MultiPoly<T> {
    pub fn zero_in(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: T) -> Self {
        let mut p = Self::zero_in(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The polynomial `x_i` in `nvars` variables.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, T::one())
    }

    pub fn monomial(exp: Exponent, c: T) -> Self {
        let mut p = Self::zero_in(exp.len());
        p.add_term(exp, c);
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, T)>) -> Result<Self> {
        let mut p = Self::zero_in(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, got: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Adds `c * x^e` in place. `e` may be shorter than `nvars`; a longer
    /// `e` widens the polynomial.
    pub fn add_term(&mut self, e: Exponent, c: T) {
        if c.is_zero() {
            return;
        }
        if e.len() > self.nvars {
            self.widen(e.len());
        }
        let e = pad(&e, self.nvars);
        match self.terms.remove(&e) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn widen(&mut self, n: usize) {
        if n <= self.nvars {
            return;
        }
        let old = std::mem::take(&mut self.terms);
        self.terms = old.into_iter().map(|(e, c)| (pad(&e, n), c)).collect();
        self.nvars = n;
    }

    /// Same polynomial viewed in `n >= nvars` variables.
    pub fn with_nvars(mut self, n: usize) -> Self {
        self.widen(n);
        self
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &T)> {
        self.terms.iter()
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &T> {
        self.terms.values()
    }

    pub fn coeff(&self, e: &[u32]) -> T {
        self.terms.get(&pad(e, self.nvars)).cloned().unwrap_or_else(T::zero)
    }

    /// Terms in graded lexicographic order, highest first (x0 > x1 > ...).
    pub fn terms_grlex(&self) -> Vec<(&Exponent, &T)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        v
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e.get(var).copied().unwrap_or(0)).max().unwrap_or(0)
    }

    /// `Some(d)` when every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut p = Self::zero_in(self.nvars);
        for (e, a) in &self.terms {
            p.add_term(e.clone(), a.clone() * c.clone());
        }
        p
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> MultiPoly<U> {
        let mut p = MultiPoly::zero_in(self.nvars);
        for (e, a) in &self.terms {
            p.add_term(e.clone(), f(a));
        }
        p
    }

    /// Partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut p = Self::zero_in(self.nvars);
        for (e, a) in &self.terms {
            let k = e.get(var).copied().unwrap_or(0);
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            p.add_term(e2, a.clone() * from_int::<T>(k as i64));
        }
        p
    }

    pub fn eval(&self, point: &[T]) -> Result<T> {
        if point.len() < self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: point.len() });
        }
        let mut acc = T::zero();
        for (e, a) in &self.terms {
            let mut t = a.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = t * pow(x, k);
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Substitutes `x_i -> images[i]`.
    pub fn compose(&self, images: &[MultiPoly<T>]) -> Result<Self> {
        if images.len() < self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: images.len() });
        }
        let n = images.iter().map(|p| p.nvars).max().unwrap_or(0);
        let mut out = Self::zero_in(n);
        // cache powers per variable
        let mut powers: Vec<Vec<MultiPoly<T>>> = images
            .iter()
            .map(|_| vec![MultiPoly::constant(n, T::one())])
            .collect();
        for (e, a) in &self.terms {
            let mut t = MultiPoly::constant(n, a.clone());
            for (i, &k) in e.iter().enumerate() {
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                if k > 0 {
                    t = &t * &powers[i][k];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    fn combine(&self, rhs: &Self, negate: bool) -> Self {
        let n = self.nvars.max(rhs.nvars);
        let mut p = self.clone().with_nvars(n);
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), if negate { -c.clone() } else { c.clone() });
        }
        p
    }

    fn product(&self, rhs: &Self) -> Self {
        let n = self.nvars.max(rhs.nvars);
        let mut acc: BTreeMap<Exponent, T> = BTreeMap::new();
        for (ea, a) in &self.terms {
            for (eb, b) in &rhs.terms {
                let mut e = pad(ea, n);
                for (x, y) in e.iter_mut().zip(eb) {
                    *x += *y;
                }
                let c = a.clone() * b.clone();
                match acc.get_mut(&e) {
                    Some(s) => *s = s.clone() + c,
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MultiPoly { nvars: n, terms: acc }
    }
}

impl<T: Ring> PartialEq for MultiPoly<T> {
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(&other.terms)
                .all(|((ea, a), (eb, b))| trimmed(ea) == trimmed(eb) && a == b)
    }
}

impl<T: Ring> Zero for MultiPoly<T> {
    fn zero() -> Self {
        Self::zero_in(0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<T: Ring> One for MultiPoly<T> {
    fn one() -> Self {
        Self::constant(0, T::one())
    }
}

impl<'a, T: Ring> Add<&'a MultiPoly<T>> for &'a MultiPoly<T> {
    type Output = MultiPoly<T>;
    fn add(self, rhs: &'a MultiPoly<T>) -> MultiPoly<T> {
        self.combine(rhs, false)
    }
}

impl<'a, T: Ring> Sub<&'a MultiPoly<T>> for &'a MultiPoly<T> {
    type Output = MultiPoly<T>;
    fn sub(self, rhs: &'a MultiPoly<T>) -> MultiPoly<T> {
        self.combine(rhs, true)
    }
}

impl<'a, T: Ring> Mul<&'a MultiPoly<T>> for &'a MultiPoly<T> {
    type Output = MultiPoly<T>;
    fn mul(self, rhs: &'a MultiPoly<T>) -> MultiPoly<T> {
        self.product(rhs)
    }
}

impl<T: Ring> Add for MultiPoly<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.combine(&rhs, false)
    }
}

impl<T: Ring> Sub for MultiPoly<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.combine(&rhs, true)
    }
}

impl<T: Ring> Mul for MultiPoly<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.product(&rhs)
    }
}

impl<T: Ring> Neg for MultiPoly<T> {
    type Output = Self;
    fn neg(self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Scalar for MultiPoly<Rat> {
    fn from_rat(r: &Rat) -> Self {
        Self::constant(0, r.clone())
    }
}

/// Default variable names: `x, y, z` for up to three variables, else `x0, x1, ...`.
pub fn default_names(nvars: usize) -> Vec<String> {
    if nvars <= 3 {
        ["x", "y", "z"][..nvars].iter().map(|s| s.to_string()).collect()
    } else {
        (0..nvars).map(|i| format!("x{i}")).collect()
    }
}

impl<T: Ring + fmt::Display> MultiPoly<T> {
    /// Renders with the given variable names, highest grlex term first.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms_grlex().into_iter().enumerate() {
            let mut cs = c.to_string();
            let negative = cs.starts_with('-');
            if negative {
                cs.remove(0);
            }
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    let name = names.get(v).cloned().unwrap_or_else(|| format!("x{v}"));
                    if k == 1 {
                        name
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&cs);
            } else {
                if cs != "1" {
                    if cs.contains('/') {
                        out.push_str(&format!("({cs})*"));
                    } else {
                        out.push_str(&cs);
                        out.push('*');
                    }
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl<T: Ring + fmt::Display> fmt::Display for MultiPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&default_names(self.nvars)))
    }
}
