use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::binform::{canonical_key, igusa, moduli_point_from_invariants, CanonicalClassKey, Form, IgusaInvariants};
use crate::error::{Error, Result};
use crate::Rat;

use super::automorphism::{reduced_automorphism_order, AutomorphismConfig};
use super::isomorphism::{proportional_images, split_scalar, DEFAULT_SEARCH_BOUND};
use super::{CurveClassRecord, G2Curve};

#[derive(Clone, Debug)]
pub struct CensusConfig {
    pub search_bound: i64,
    pub automorphism: AutomorphismConfig,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig { search_bound: DEFAULT_SEARCH_BOUND, automorphism: AutomorphismConfig::default() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Census {
    /// Igusa classes, sorted by automorphism order then key.
    pub classes: Vec<CurveClassRecord>,
    /// Number of tuples in `{-1,0,1}^7` defining genus-2 curves.
    pub genus2_tuples: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusStats {
    pub total: usize,
    pub order2: usize,
    pub order4: usize,
    pub order8: usize,
    pub order10_plus: usize,
    pub q_classes: usize,
    pub large_orders: Vec<usize>,
}

impl Census {
    pub fn stats(&self) -> CensusStats {
        let count = |p: &dyn Fn(usize) -> bool| self.classes.iter().filter(|c| p(c.aut_order)).count();
        let mut large_orders: Vec<usize> =
            self.classes.iter().map(|c| c.aut_order).filter(|&g| g >= 10).collect();
        large_orders.sort();
        CensusStats {
            total: self.classes.len(),
            order2: count(&|g| g == 2),
            order4: count(&|g| g == 4),
            order8: count(&|g| g == 8),
            order10_plus: count(&|g| g >= 10),
            q_classes: self.classes.iter().map(|c| c.q_classes.len()).sum(),
            large_orders,
        }
    }

    pub fn max_moduli_height(&self) -> Option<&CurveClassRecord> {
        // ties resolve to the earliest class in sorted order
        self.classes.iter().rev().max_by(|a, b| a.moduli_height.cmp(&b.moduli_height))
    }

    pub fn class_of(&self, tuple: &[i64]) -> Option<(usize, &CurveClassRecord)> {
        let v: Vec<Rat> = tuple.iter().map(|&x| Rat::from_integer(x.into())).collect();
        self.classes.iter().enumerate().find(|(_, c)| c.members.contains(&v))
    }
}

impl std::fmt::Display for CensusStats {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "total={} |G|=2:{} |G|=4:{} |G|=8:{} |G|>=10:{}",
            self.total, self.order2, self.order4, self.order8, self.order10_plus
        )
    }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Connected components of "a rational witness exists within `bound`".
fn rational_classes(members: &[Vec<i64>], bound: i64) -> Vec<Vec<usize>> {
    let n = members.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let split: Vec<(Vec<BigInt>, Rat)> = members
        .iter()
        .map(|v| split_scalar(&v.iter().map(|&x| Rat::from_integer(x.into())).collect::<Vec<_>>()))
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            if find(&mut parent, i) == find(&mut parent, j) {
                continue;
            }
            let (p1, s1) = &split[i];
            let (p2, s2) = &split[j];
            let linked = proportional_images(p1, p2, bound, false)
                .into_iter()
                .any(|(_, t)| crate::arith::is_rational_square(&(s2 / (s1 * t))));
            if linked {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

fn all_tuples() -> Vec<Vec<i64>> {
    (0..3usize.pow(7))
        .map(|mut idx| {
            (0..7)
                .map(|_| {
                    let d = (idx % 3) as i64 - 1;
                    idx /= 3;
                    d
                })
                .collect()
        })
        .collect()
}

/// Every genus-2 curve `y^2 = f(x)` with coefficients in `{-1, 0, 1}`,
/// grouped by Igusa class (isomorphism over the algebraic closure). Each
/// record also carries the split of its members into classes over Q, as
/// found by the witness search.
pub fn census_height1(cfg: &CensusConfig) -> Result<Census> {
    let keyed: Vec<(CanonicalClassKey, Vec<i64>, IgusaInvariants)> = all_tuples()
        .into_par_iter()
        .filter_map(|v| {
            let j = igusa(&Form::from_i64(&v)).expect("sextic");
            (!num_traits::Zero::is_zero(&j.j10)).then(|| (canonical_key(&j), v, j))
        })
        .collect();
    let genus2_tuples = keyed.len();
    let mut groups: BTreeMap<CanonicalClassKey, Vec<(Vec<i64>, IgusaInvariants)>> = BTreeMap::new();
    for (k, v, j) in keyed {
        groups.entry(k).or_default().push((v, j));
    }
    let mut classes = groups
        .into_par_iter()
        .map(|(key, mut members)| -> Result<CurveClassRecord> {
            members.sort_by(|a, b| a.0.cmp(&b.0));
            let (rep, inv) = members[0].clone();
            let curve = G2Curve::from_i64(&rep)?;
            let aut_order = 2 * reduced_automorphism_order(&curve, &cfg.automorphism)?;
            let moduli_height = moduli_point_from_invariants(&inv)?.height();
            let tuples: Vec<Vec<i64>> = members.into_iter().map(|(v, _)| v).collect();
            let q_classes = rational_classes(&tuples, cfg.search_bound);
            let to_rat = |v: &Vec<i64>| v.iter().map(|&x| Rat::from_integer(x.into())).collect::<Vec<_>>();
            Ok(CurveClassRecord {
                representative: to_rat(&rep),
                invariants: inv,
                key,
                height: BigInt::from(1),
                moduli_height,
                aut_order,
                members: tuples.iter().map(to_rat).collect(),
                q_classes,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    classes.sort_by(|a, b| (a.aut_order, &a.key).cmp(&(b.aut_order, &b.key)));
    Ok(Census { classes, genus2_tuples })
}

/// Distinct Igusa classes with moduli height at most `c` among integral
/// models with coefficients in `[-sample_bound, sample_bound]`. Rational
/// models add nothing: rescaling does not change the class.
pub fn count_classes_of_bounded_moduli_height(c: &BigInt, sample_bound: u64, budget: u128) -> Result<usize> {
    let side = 2 * sample_bound as u128 + 1;
    if side.pow(7) > budget {
        return Err(Error::Budget(format!("{} tuples exceed the budget {budget}", side.pow(7))));
    }
    let mut keys = std::collections::BTreeSet::new();
    for h in 1..=sample_bound as i64 {
        let hits = crate::binform::minimal::level_search(7, h, |v| {
            igusa(&Form::from_i64(v))
                .ok()
                .filter(|j| !num_traits::Zero::is_zero(&j.j10))
                .and_then(|j| moduli_point_from_invariants(&j).ok())
                .is_some_and(|p| &p.height() <= c)
        });
        for v in hits {
            keys.insert(canonical_key(&igusa(&Form::from_i64(&v))?));
        }
    }
    Ok(keys.len())
}
