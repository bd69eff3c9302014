//! Seeded randomized verification of every inequality checker and the
//! exact identities behind them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{format_rational, int};
use crate::binform::{
    canonical_key, check_action_height_bound, check_moduli_height_bound_g2, check_shifted_form_bound,
    check_transvectant_covariance, igusa, moduli_point_g2,
};
use crate::error::Result;
use crate::polyheight::{
    check_derivative_bound, check_evaluation_bound, check_gauss_lemma, check_gelfand, check_product_bound,
    check_shift_bounds, check_sum_bound, eval_homogeneous, places_for, PlaceQ,
};
use crate::projheight::{
    check_matrix_bound, check_rational_map_bound, determinant, is_kronecker_unit, power_point, segre, veronese,
    RationalMapQ,
};
use crate::report::BoundReport;
use crate::{Form, Gl2Q, Poly, ProjPointQ, Rat};

/// Random inputs of controlled size.
pub mod gen {
    use super::*;

    pub fn int_in(rng: &mut impl Rng, max: i64) -> i64 {
        rng.gen_range(-max..=max)
    }

    pub fn nonzero_int(rng: &mut impl Rng, max: i64) -> i64 {
        loop {
            let x = int_in(rng, max);
            if x != 0 {
                return x;
            }
        }
    }

    /// Integer a third of the time, otherwise a fraction with denominator up to `max`.
    pub fn rational(rng: &mut impl Rng, max: i64) -> Rat {
        let n = int_in(rng, max);
        let d = if rng.gen_range(0..3) == 0 { 1 } else { rng.gen_range(1..=max) };
        Rat::new(n.into(), d.into())
    }

    pub fn nonzero_rational(rng: &mut impl Rng, max: i64) -> Rat {
        loop {
            let r = rational(rng, max);
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn point(rng: &mut impl Rng, n: usize, max: i64) -> ProjPointQ {
        loop {
            let v: Vec<i64> = (0..=n).map(|_| int_in(rng, max)).collect();
            if let Ok(p) = ProjPointQ::from_i64(&v) {
                return p;
            }
        }
    }

    /// Nonzero polynomial in `nvars` variables with up to `terms` terms of
    /// total degree at most `deg`.
    pub fn poly(rng: &mut impl Rng, nvars: usize, deg: u32, terms: usize, max: i64, rational: bool) -> Poly {
        loop {
            let mut f = Poly::zero_in(nvars);
            for _ in 0..rng.gen_range(1..=terms) {
                let mut e = vec![0u32; nvars];
                let mut left = rng.gen_range(0..=deg);
                for slot in e.iter_mut() {
                    let k = rng.gen_range(0..=left);
                    *slot = k;
                    left -= k;
                }
                let c = if rational { rational_coeff(rng, max) } else { int(nonzero_int(rng, max)) };
                f.add_term(e, c);
            }
            if !f.is_zero() {
                return f;
            }
        }
    }

    fn rational_coeff(rng: &mut impl Rng, max: i64) -> Rat {
        nonzero_rational(rng, max)
    }

    pub fn homogeneous(rng: &mut impl Rng, nvars: usize, deg: u32, terms: usize, max: i64) -> Poly {
        loop {
            let mut f = Poly::zero_in(nvars);
            for _ in 0..rng.gen_range(1..=terms) {
                let mut e = vec![0u32; nvars];
                for _ in 0..deg {
                    e[rng.gen_range(0..nvars)] += 1;
                }
                f.add_term(e, rational(rng, max));
            }
            if !f.is_zero() {
                return f;
            }
        }
    }

    pub fn form(rng: &mut impl Rng, deg: usize, max: i64) -> Form {
        loop {
            let v: Vec<i64> = (0..=deg).map(|_| int_in(rng, max)).collect();
            if v.iter().any(|&x| x != 0) {
                return Form::from_i64(&v);
            }
        }
    }

    /// Sextic with nonzero discriminant.
    pub fn genus2_form(rng: &mut impl Rng, max: i64) -> Form {
        loop {
            let f = form(rng, 6, max);
            if igusa(&f).map(|j| !j.j10.is_zero()).unwrap_or(false) {
                return f;
            }
        }
    }

    pub fn gl2(rng: &mut impl Rng, max: i64) -> Gl2Q {
        loop {
            let e: Vec<Rat> = (0..4).map(|_| rational(rng, max)).collect();
            if let Ok(m) = Gl2Q::new(e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone()) {
                return m;
            }
        }
    }

    /// Product of a few elementary shears, so the determinant is exactly 1.
    pub fn sl2(rng: &mut impl Rng, max: i64) -> Gl2Q {
        let mut m = Gl2Q::identity();
        for _ in 0..rng.gen_range(1..=3) {
            let k = rational(rng, max);
            let e = if rng.gen_bool(0.5) {
                Gl2Q::new(Rat::one(), k, Rat::zero(), Rat::one())
            } else {
                Gl2Q::new(Rat::one(), Rat::zero(), k, Rat::one())
            };
            m = m.mul(&e.expect("shear is invertible"));
        }
        m
    }

    pub fn square_matrix(rng: &mut impl Rng, n: usize, max: i64) -> Vec<Vec<Rat>> {
        loop {
            let m: Vec<Vec<Rat>> = (0..n).map(|_| (0..n).map(|_| rational(rng, max)).collect()).collect();
            if !determinant(&m).expect("square").is_zero() {
                return m;
            }
        }
    }

    pub fn prime(rng: &mut impl Rng) -> BigInt {
        const PRIMES: [i64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];
        BigInt::from(PRIMES[rng.gen_range(0..PRIMES.len())])
    }

    /// The archimedean place or a prime that matters for `values`.
    pub fn place<'a>(rng: &mut impl Rng, values: impl IntoIterator<Item = &'a Rat>) -> PlaceQ {
        let places = places_for(values).unwrap_or_else(|_| vec![PlaceQ::Infinity]);
        if rng.gen_bool(0.3) {
            return PlaceQ::Prime(prime(rng));
        }
        places[rng.gen_range(0..places.len())].clone()
    }
}

type Property = fn(&mut ChaCha8Rng) -> Result<Vec<BoundReport>>;

fn eq(label: &str, lhs: impl Into<Rat>, rhs: impl Into<Rat>) -> BoundReport {
    BoundReport::eq(label, lhs.into(), rhs.into())
}

fn flag(label: &str, ok: bool) -> BoundReport {
    eq(label, int(ok as i64), int(1))
}

fn segre_prop(rng: &mut ChaCha8Rng) -> Result<Vec<BoundReport>> {
    let (n, m) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
    let p = gen::point(rng, n, 50);
    let q = gen::point(rng, m, 50);
    Ok(vec![eq("segre", segre(&p, &q).height(), p.height() * q.height())])
}

fn veronese_prop(rng: &mut ChaCha8Rng) -> Result<Vec<BoundReport>> {
    let n = rng.gen_range(1..=2);
    let p = gen::point(rng, n, 30);
    let d = rng.gen_range(1..=4);
    Ok(vec![eq("veronese", veronese(&p, d)?.height(), p.height().pow(d))])
}

fn kronecker_prop(rng: &mut ChaCha8Rng) -> Result<Vec<BoundReport>> {
    let max = if rng.gen_bool(0.5) { 1 } else { 4 };
    let n = rng.gen_range(1..=4);
    let p = gen::point(rng, n, max);
    let m = rng.gen_range(2..=5);
    let unit = is_kronecker_unit(&p);
    let fixed = power_point(&p, m)?.height() == p.height();
    Ok(vec![
        flag("kronecker unit iff height 1", unit == p.height().is_one()),
        flag("kronecker unit iff power-stable height", unit == fixed),
    ])
}

fn rational_map_prop(rng: &mut ChaCha8Rng) -> Result<Vec<BoundReport>> {
    let n = rng.gen_range(1..=2);
    let d = rng.gen_range(1..=3);
    let comps = (0..rng.gen_range(2..=3)).map(|_| gen::homogeneous(rng, n + 1, d, 4, 9)).collect();
    let phi = RationalMapQ::new(n, comps)?;
    let p = gen::point(rng, n, 20);
    match check_rational_map_bound(&phi, &p) {
        Err(crate::Error::CommonZero) => Ok(vec![]),
        r => Ok(vec![r?]),
    }
}

fn matrix_prop(rng: &mut ChaCha8Rng) -> Result<Vec<BoundReport>> {
    let n = rng.gen_range(1..=3);
    let m = gen::square_matrix(rng, n + 1, 9);
    let p = gen::point(rng, n, 30);
    Ok(vec![check_matrix_bound(&m, &p)?])
}

fn gauss_prop(rng: &mut ChaCha8Rng) -> Result<Vec<BoundReport>> {
    let nv = rng.gen_range(1..=3);
    let f = gen::poly(rng, nv, 4, 5, 30, true);
    let g = gen::poly(rng, nv, 4, 5, 30, true);
    let p = gen::prime(rng);
    Ok(vec![flag("gauss lemma", check_gauss_lemma(&f, &g, &p)?)])
}

fn factors(rng: &mut ChaCha8Rng, rational: bool) -> Vec<Poly> {
    let nv = rng.gen_range(1..=3);
    (0..rng.gen_range(1..=3)).map(|_| gen::poly(rng, nv, 3, 4, 12, rational)).collect()
}

fn product_prop(rng: &mut ChaCha8Rng) -> Result<Vec<BoundReport>> {
    let r = rng.gen_bool(0.5);
    Ok(vec![check_product_bound(&factors(rng, r))?])
}

fn sum_prop(rng: &mut ChaCha8Rng) -> Result<Vec<BoundReport>> {
    let r = rng.gen_bool(0.5);
    let fs = factors(rng, r);
    // cancellation can leave zero, which has no height
    if fs.iter().fold(Poly::zero(), |a, f| &a + f).is_zero() {
        return Ok(vec![]);
    }
    check_sum_bound(&fs)
}

fn gelfand_prop(rng: &mut ChaCha8Rng) -> Result<Vec<BoundReport>> {
    Ok(vec![check_gelfand(&factors(rng, true))?])
}

fn derivative_prop(rng: &mut ChaCha8Rng) -> Result<Vec<BoundReport>> {
    let nv = rng.gen_range(1..=3);
    let f = gen::poly(rng, nv, 5, 5, 30, true);
    let j = rng.gen_range(0..nv);
    let v = gen::place(rng, f.coefficients());
    Ok(vec![check_derivative_bound(&f, j, &v)?])
}

fn evaluation_prop(rng: &mut ChaCha8Rng) -> Result<Vec<BoundReport>> {
    let nv = rng.gen_range(1..=3);
    let f = gen::poly(rng, nv, 4, 6, 20, true);
    if f.total_degree() == Some(0) {
        return Ok(vec![]);
    }
    let b: Vec<Rat> = (0..nv).map(|_| gen::rational(rng, 9)).collect();
    let v = gen::place(rng, f.coefficients().chain(&b));
    Ok(vec![check_evaluation_bound(&f, &b, &v)?])
}

fn shift_prop(rng: &mut ChaCha8Rng) -> Result<Vec<BoundReport>> {
    let nv = rng.gen_range(1..=2);
    let f = gen::poly(rng, nv, 4, 5, 20, true);
    let u: Vec<Rat> = (0..nv).map(|_| gen::nonzero_rational(rng, 9)).collect();
    let b: Vec<Rat> = (0..nv).map(|_| gen::rational(rng, 9)).collect();
    check_shift_bounds(&f, &u, &b)
}

fn homogeneous_prop(rng: &mut ChaCha8Rng) -> Result<Vec<BoundReport>> {
    let nv = rng.gen_range(2..=3);
    let d = rng.gen_range(1..=4);
    let f = gen::homogeneous(rng, nv, d, 6, 20);
    let alpha: Vec<Rat> = (0..nv).map(|_| gen::rational(rng, 12)).collect();
    Ok(eval_homogeneous(&f, &alpha)?.1)
}

fn action_prop(rng: &mut ChaCha8Rng) -> Result<Vec<BoundReport>> {
    let deg = rng.gen_range(1..=6);
    let f = gen::form(rng, deg, 30);
    let m = gen::gl2(rng, 9);
    Ok(vec![check_action_height_bound(&f, &m)?])
}

fn shifted_form_prop(rng: &mut ChaCha8Rng) -> Result<Vec<BoundReport>> {
    let deg = rng.gen_range(1..=6);
    let f = gen::form(rng, deg, 30);
    let (u, w) = (rng.gen_range(1..=9), rng.gen_range(1..=9));
    Ok(vec![check_shifted_form_bound(&f, u, w)?])
}

fn transvectant_prop(rng: &mut ChaCha8Rng) -> Result<Vec<BoundReport>> {
    let (m, n) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
    let f = gen::form(rng, m, 9);
    let g = gen::form(rng, n, 9);
    let r = rng.gen_range(0..=f.degree().min(g.degree()));
    let sl = gen::sl2(rng, 5);
    Ok(vec![flag("transvectant covariance", check_transvectant_covariance(&f, &g, r, &sl)?)])
}

fn igusa_prop(rng: &mut ChaCha8Rng) -> Result<Vec<BoundReport>> {
    let f = gen::form(rng, 6, 9);
    let m = gen::sl2(rng, 4);
    Ok(vec![flag("igusa SL2 invariance", igusa(&f)? == igusa(&f.act(&m))?)])
}

fn moduli_prop(rng: &mut ChaCha8Rng) -> Result<Vec<BoundReport>> {
    let f = gen::genus2_form(rng, 5);
    let m = gen::gl2(rng, 4);
    let lambda = gen::nonzero_rational(rng, 9);
    let g = f.act(&m).scale(&lambda);
    let same_point = moduli_point_g2(&f)? == moduli_point_g2(&g)?;
    let same_key = canonical_key(&igusa(&f)?) == canonical_key(&igusa(&g)?);
    Ok(vec![flag("moduli point GL2 invariance", same_point), flag("class key GL2 invariance", same_key)])
}

fn moduli_bound_prop(rng: &mut ChaCha8Rng) -> Result<Vec<BoundReport>> {
    Ok(vec![check_moduli_height_bound_g2(&gen::genus2_form(rng, 12))?])
}

fn mahler_prop(rng: &mut ChaCha8Rng) -> Result<Vec<BoundReport>> {
    let up = |rng: &mut ChaCha8Rng| -> Vec<Rat> {
        let d = rng.gen_range(1..=10);
        let mut v: Vec<Rat> = (0..=d).map(|_| int(gen::int_in(rng, 9))).collect();
        v[d] = int(gen::nonzero_int(rng, 9));
        v
    };
    let f = up(rng);
    let g = up(rng);
    let fg = crate::upoly::mul(&f, &g);
    let tol = crate::roots::DEFAULT_TOLERANCE;
    let (mf, mg, mfg) = (
        crate::roots::mahler_measure(&f, tol)?,
        crate::roots::mahler_measure(&g, tol)?,
        crate::roots::mahler_measure(&fg, tol)?,
    );
    let rel = ((mfg - mf * mg) / (mf * mg)).abs();
    let err = Rat::from_float(rel).unwrap_or_else(|| int(1));
    Ok(vec![BoundReport::le("mahler multiplicativity (rel. error)", err, Rat::new(1.into(), 100_000_000.into()))])
}

/// Checks whose constant, as usually stated, admits counterexamples; see
/// `check_evaluation_bound`.
pub const STATED_CONSTANT_CHECKS: &[&str] = &["evaluation"];

pub const PROPERTIES: &[(&str, Property)] = &[
    ("segre", segre_prop),
    ("veronese", veronese_prop),
    ("kronecker", kronecker_prop),
    ("rational-map", rational_map_prop),
    ("matrix", matrix_prop),
    ("gauss-lemma", gauss_prop),
    ("product", product_prop),
    ("sum", sum_prop),
    ("gelfand", gelfand_prop),
    ("derivative", derivative_prop),
    ("evaluation", evaluation_prop),
    ("shift", shift_prop),
    ("homogeneous", homogeneous_prop),
    ("action", action_prop),
    ("shifted-form", shifted_form_prop),
    ("transvectant", transvectant_prop),
    ("igusa", igusa_prop),
    ("moduli", moduli_prop),
    ("moduli-bound", moduli_bound_prop),
    ("mahler", mahler_prop),
];

#[derive(Clone, Debug)]
pub struct FuzzConfig {
    pub iterations: u64,
    pub seed: u64,
    /// Count stated-constant counterexamples as failures.
    pub strict: bool,
    /// Restrict to these property names; empty means all.
    pub only: Vec<String>,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig { iterations: 200, seed: 0, strict: false, only: Vec::new() }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CheckStats {
    pub cases: u64,
    pub failures: u64,
    /// Largest `lhs / rhs` seen.
    pub max_tightness: f64,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PropertyStats {
    pub iterations: u64,
    pub errors: u64,
    pub first_error: Option<String>,
    pub checks: BTreeMap<String, CheckStats>,
}

impl PropertyStats {
    pub fn failures(&self) -> u64 {
        self.checks.values().map(|c| c.failures).sum()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FuzzReport {
    pub seed: u64,
    pub strict: bool,
    pub properties: BTreeMap<String, PropertyStats>,
}

impl FuzzReport {
    pub fn stated_constant_failures(&self) -> u64 {
        self.properties
            .iter()
            .filter(|(k, _)| STATED_CONSTANT_CHECKS.contains(&k.as_str()))
            .map(|(_, p)| p.failures())
            .sum()
    }

    pub fn theorem_failures(&self) -> u64 {
        self.properties
            .iter()
            .filter(|(k, _)| !STATED_CONSTANT_CHECKS.contains(&k.as_str()))
            .map(|(_, p)| p.failures())
            .sum()
    }

    pub fn errors(&self) -> u64 {
        self.properties.values().map(|p| p.errors).sum()
    }

    pub fn passed(&self) -> bool {
        let stated = if self.strict { self.stated_constant_failures() } else { 0 };
        self.theorem_failures() + stated + self.errors() == 0
    }
}

impl fmt::Display for FuzzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {}", self.seed)?;
        for (name, p) in &self.properties {
            let note = if STATED_CONSTANT_CHECKS.contains(&name.as_str()) { " (stated constant)" } else { "" };
            writeln!(f, "{name}{note}: {} iterations, {} errors", p.iterations, p.errors)?;
            if let Some(e) = &p.first_error {
                writeln!(f, "  first error: {e}")?;
            }
            for (label, c) in &p.checks {
                writeln!(
                    f,
                    "  {label}: {} cases, {} failed, max tightness {:.6}",
                    c.cases, c.failures, c.max_tightness
                )?;
                if let Some(x) = &c.first_failure {
                    writeln!(f, "    first failure: {x}")?;
                }
            }
        }
        write!(
            f,
            "theorem failures {}, stated-constant counterexamples {}, errors {}",
            self.theorem_failures(),
            self.stated_constant_failures(),
            self.errors()
        )
    }
}

/// Per-place labels are folded to "at p" so statistics do not depend on
/// which primes happened to occur.
fn label_kind(label: &str) -> String {
    match label.rsplit_once(" at ") {
        Some((head, place)) if place != "inf" => format!("{head} at p"),
        _ => label.to_string(),
    }
}

pub fn run_property(name: &str, prop: Property, iterations: u64, seed: u64) -> PropertyStats {
    let offset = PROPERTIES.iter().position(|(n, _)| *n == name).unwrap_or(PROPERTIES.len()) as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(offset);
    let mut stats = PropertyStats { iterations, ..Default::default() };
    for i in 0..iterations {
        match prop(&mut rng) {
            Err(e) => {
                stats.errors += 1;
                stats.first_error.get_or_insert_with(|| format!("iteration {i}: {e}"));
            }
            Ok(reports) => {
                for r in reports {
                    let c = stats.checks.entry(label_kind(&r.label)).or_default();
                    c.cases += 1;
                    let t = r.tightness();
                    if t.is_finite() && t > c.max_tightness {
                        c.max_tightness = t;
                    }
                    if !r.holds {
                        c.failures += 1;
                        c.first_failure.get_or_insert_with(|| {
                            format!("iteration {i}: {} <= {}", format_rational(&r.lhs), format_rational(&r.rhs))
                        });
                    }
                }
            }
        }
    }
    stats
}

/// Runs every selected property for `iterations` cases. Each property draws
/// from its own stream of the seeded generator, so results do not depend
/// on thread scheduling.
pub fn run_fuzz(cfg: &FuzzConfig) -> FuzzReport {
    let selected: Vec<&(&str, Property)> = PROPERTIES
        .iter()
        .filter(|(n, _)| cfg.only.is_empty() || cfg.only.iter().any(|o| o == n))
        .collect();
    let properties = selected
        .par_iter()
        .map(|(name, prop)| (name.to_string(), run_property(name, *prop, cfg.iterations, cfg.seed)))
        .collect();
    FuzzReport { seed: cfg.seed, strict: cfg.strict, properties }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_runs_are_reproducible() {
        let cfg = FuzzConfig { iterations: 20, seed: 7, ..Default::default() };
        let a = run_fuzz(&cfg);
        assert_eq!(a, run_fuzz(&cfg));
        assert_eq!(a.to_string(), run_fuzz(&cfg).to_string());
        assert_eq!(a.theorem_failures(), 0, "{a}");
        assert_eq!(a.errors(), 0, "{a}");
        assert_eq!(a.properties.len(), PROPERTIES.len());
    }

    #[test]
    fn labels_fold_primes() {
        assert_eq!(label_kind("shift at 7"), "shift at p");
        assert_eq!(label_kind("shift at inf"), "shift at inf");
        assert_eq!(label_kind("gelfand"), "gelfand");
    }

    #[test]
    fn only_filter() {
        let cfg = FuzzConfig { iterations: 3, only: vec!["segre".into()], ..Default::default() };
        assert_eq!(run_fuzz(&cfg).properties.keys().collect::<Vec<_>>(), vec!["segre"]);
    }
}
