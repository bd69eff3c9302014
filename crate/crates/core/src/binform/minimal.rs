use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};

use super::igusa::{canonical_key, igusa, igusa_generic, CanonicalClassKey};
use super::{BinaryForm, Form};

#[derive(Clone, Debug)]
pub struct MinimizeBudget {
    /// Largest input height accepted.
    pub max_start_height: u64,
    /// Largest number of coefficient vectors visited over all levels.
    pub max_candidates: u128,
}

impl Default for MinimizeBudget {
    fn default() -> Self {
        MinimizeBudget { max_start_height: 1_000_000, max_candidates: 50_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinimalForm {
    pub form: Form,
    pub height: BigInt,
}

/// Primitive integer vectors of length `len` with max norm exactly `h` and
/// positive first nonzero entry, for which `keep` holds; sorted.
pub(crate) fn level_search<F>(len: usize, h: i64, keep: F) -> Vec<Vec<i64>>
where
    F: Fn(&[i64]) -> bool + Sync,
{
    let side = (2 * h + 1) as u64;
    let total = side.pow(len as u32);
    let mut hits: Vec<Vec<i64>> = (0..total)
        .into_par_iter()
        .filter_map(|mut idx| {
            let mut v = vec![0i64; len];
            for slot in v.iter_mut() {
                *slot = (idx % side) as i64 - h;
                idx /= side;
            }
            let first = *v.iter().find(|&&x| x != 0)?;
            if first < 0 || v.iter().map(|x| x.abs()).max() != Some(h) {
                return None;
            }
            if v.iter().fold(0i64, |g, &x| g.gcd(&x)) != 1 {
                return None;
            }
            keep(&v).then_some(v)
        })
        .collect();
    hits.sort();
    hits
}

pub(crate) fn matches_key(target: &CanonicalClassKey, v: &[i64]) -> bool {
    let approx = BinaryForm::new(v.iter().map(|&x| x as f64).collect()).expect("nonempty");
    let Ok(j) = igusa_generic(&approx) else { return false };
    if !target.may_match(&j) {
        return false;
    }
    let exact = Form::from_i64(v);
    igusa(&exact).map(|j| &canonical_key(&j) == target).unwrap_or(false)
}

/// Lowest-height sextic over the integers with the same Igusa class as `f`,
/// searching levels `1, 2, ..., H(f)` and stopping at the first level with
/// a hit. Ties go to the lexicographically smallest coefficient vector.
pub fn minimal_height_form(f: &Form, budget: &MinimizeBudget) -> Result<MinimalForm> {
    if f.degree() != 6 {
        return Err(Error::UnsupportedDegree { got: f.degree(), what: "minimal forms are searched for sextics" });
    }
    let start = f.height()?;
    let start_int = start.to_integer();
    let h_max = start_int
        .to_u64()
        .filter(|&h| h <= budget.max_start_height)
        .ok_or_else(|| Error::Budget(format!("start height {start_int} exceeds the budget")))?;
    let target = canonical_key(&igusa(f)?);
    let mut visited: u128 = 0;
    for h in 1..=h_max {
        visited += (2 * h as u128 + 1).pow(7);
        if visited > budget.max_candidates {
            return Err(Error::Budget(format!(
                "searched all levels below {h} without a smaller model; best so far is the input (height {start_int})"
            )));
        }
        let hits = level_search(7, h as i64, |v| matches_key(&target, v));
        if let Some(best) = hits.into_iter().next() {
            return Ok(MinimalForm { form: Form::from_i64(&best), height: BigInt::from(h) });
        }
    }
    let p = f.primitive().ok_or(Error::ZeroPolynomial("a binary form"))?;
    Ok(MinimalForm { form: Form::new(p.into_iter().map(crate::Rat::from_integer).collect())?, height: start_int })
}
