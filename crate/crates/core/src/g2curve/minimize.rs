use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::arith::is_rational_square;
use crate::binform::minimal::{level_search, matches_key};
use crate::error::{Error, Result};
use crate::Rat;

use super::automorphism::{reduced_automorphism_order, AutomorphismConfig};
use super::isomorphism::{proportional_images, split_scalar, DEFAULT_SEARCH_BOUND};
use super::{curve_height_naive, CurveClassRecord, G2Curve};

#[derive(Clone, Debug)]
pub struct MinimizeConfig {
    /// Entry bound for the matrices tried when testing rational isomorphism.
    pub search_bound: i64,
    /// Largest input height accepted.
    pub max_height: u64,
    /// Largest number of coefficient vectors visited over all levels.
    pub max_candidates: u128,
    pub automorphism: AutomorphismConfig,
}

impl Default for MinimizeConfig {
    fn default() -> Self {
        MinimizeConfig {
            search_bound: DEFAULT_SEARCH_BOUND,
            max_height: 1_000_000,
            max_candidates: 50_000_000,
            automorphism: AutomorphismConfig::default(),
        }
    }
}

/// A key-matching primitive vector, its height, and the matrices with
/// scalars carrying the input onto it.
type Matched = (Vec<i64>, i64, Vec<([i64; 4], Rat)>);

/// Scalings `y/x` (`x > 0`, coprime) with `max(x, |y| hp) = h`.
fn scalings(h: i64, hp: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for y in 1..=h / hp {
        if h.gcd(&y) == 1 {
            out.push((h, y));
        }
    }
    if h % hp == 0 {
        let y = h / hp;
        for x in 1..h {
            if x.gcd(&y) == 1 {
                out.push((x, y));
            }
        }
    }
    out.into_iter().flat_map(|(x, y)| [(x, -y), (x, y)]).collect()
}

/// Lowest-height model of `c` over Q. Candidate models `(y/x) p` with `p`
/// primitive integral are visited by height `max(x, |y| H(p))`; those with
/// the right Igusa class are tested for a rational isomorphism to `c`, and
/// the search stops at the first height with a hit. The input itself is
/// reached at its own height, so the result never has larger height.
///
/// The returned record lists every hit at the minimal height as a member,
/// the representative being the lexicographically smallest.
pub fn minimize_curve(c: &G2Curve, cfg: &MinimizeConfig) -> Result<CurveClassRecord> {
    let start = curve_height_naive(c).to_integer();
    let h_max = start
        .to_u64()
        .filter(|&h| h <= cfg.max_height)
        .ok_or_else(|| Error::Budget(format!("input height {start} exceeds the limit {}", cfg.max_height)))?;
    let target = c.key();
    let (p1, s1) = split_scalar(c.coeffs());
    let mut matched: Vec<Matched> = Vec::new();
    let mut visited: u128 = 0;
    for h in 1..=h_max as i64 {
        visited += (2 * h as u128 + 1).pow(7);
        if visited > cfg.max_candidates {
            return Err(Error::Budget(format!(
                "no model of height below {h} found within {} candidates; the input has height {start}",
                cfg.max_candidates
            )));
        }
        for v in level_search(7, h, |v| matches_key(&target, v)) {
            let p2: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
            let images = proportional_images(&p1, &p2, cfg.search_bound, false);
            if !images.is_empty() {
                matched.push((v, h, images));
            }
        }
        let mut hits: Vec<Vec<Rat>> = Vec::new();
        for (p, hp, images) in &matched {
            for (x, y) in scalings(h, *hp) {
                let s2 = Rat::new(y.into(), x.into());
                if images.iter().any(|(_, t)| is_rational_square(&(&s2 / (&s1 * t)))) {
                    hits.push(p.iter().map(|&a| &s2 * Rat::from_integer(a.into())).collect());
                }
            }
        }
        if hits.is_empty() {
            continue;
        }
        hits.sort();
        hits.dedup();
        let rep = G2Curve::new(hits[0].clone())?;
        let aut_order = 2 * reduced_automorphism_order(&rep, &cfg.automorphism)?;
        let invariants = rep.invariants();
        let n = hits.len();
        return Ok(CurveClassRecord {
            representative: hits[0].clone(),
            key: rep.key(),
            moduli_height: super::moduli_height_curve(&rep),
            invariants,
            height: BigInt::from(h),
            aut_order,
            members: hits,
            q_classes: vec![(0..n).collect()],
        });
    }
    // unreachable in exact arithmetic: the input is a candidate at its own height
    Err(Error::Numeric(format!("input model not recovered at height {start}")))
}
