//! Igusa–Clebsch invariants of binary sextics and the genus-2 moduli point.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{format_rational, int};
use crate::error::{Error, Result};
use crate::projheight::{normalize, ProjPointQ};
use crate::report::BoundReport;
use crate::scalar::{pow, Scalar};
use crate::{Poly, Rat};

use super::transvectant::transvectant;
use super::{BinaryForm, Form};

/// Weights on the moduli coordinates
/// `[J4 J2^3, (J2 J4 - 3 J6) J2^2, J10, J2^5]`, turning the point into
/// `[i1 : i2 : i3 : 1]` whenever `J2 != 0`.
pub const MODULI_WEIGHTS: [i64; 4] = [144, -1728, 486, 1];

/// `2^28 3^9 5^5 7 11 13 17 43`, the constant in `H(moduli) <= M2 H(f)^10`.
pub fn m2() -> BigInt {
    let mut m = BigInt::from(1u8) << 28;
    for (p, e) in [(3u32, 9u32), (5, 5), (7, 1), (11, 1), (13, 1), (17, 1), (43, 1)] {
        m *= BigInt::from(p).pow(e);
    }
    m
}

/// Same value as [`m2`], spelled out for documentation and the CLI.
pub const M2: &str = "2^28*3^9*5^5*7*11*13*17*43";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IgusaInvariants {
    pub j2: Rat,
    pub j4: Rat,
    pub j6: Rat,
    pub j10: Rat,
}

impl IgusaInvariants {
    pub fn as_array(&self) -> [Rat; 4] {
        [self.j2.clone(), self.j4.clone(), self.j6.clone(), self.j10.clone()]
    }
}

/// Invariants over any coefficient ring containing Q: the Clebsch
/// transvectant invariants `A, B, C, D` combined into `[J2, J4, J6, J10]`.
pub fn igusa_generic<T: Scalar>(f: &BinaryForm<T>) -> Result<[T; 4]> {
    if f.degree() != 6 {
        return Err(Error::UnsupportedDegree { got: f.degree(), what: "Igusa invariants need a sextic" });
    }
    let i = transvectant(f, f, 4)?;
    let delta = transvectant(&i, &i, 2)?;
    let y1 = transvectant(f, &i, 4)?;
    let y2 = transvectant(&i, &y1, 2)?;
    let y3 = transvectant(&i, &y2, 2)?;
    let constant = |form: BinaryForm<T>| form.into_coeffs().swap_remove(0);
    let a = constant(transvectant(f, f, 6)?);
    let b = constant(transvectant(&i, &i, 4)?);
    let c = constant(transvectant(&i, &delta, 4)?);
    let d = constant(transvectant(&y3, &y1, 2)?);
    let k = |n: i64| T::from_rat(&int(n));
    let a2 = a.clone() * a.clone();
    let a3 = a2.clone() * a.clone();
    let j2 = k(-120) * a.clone();
    let j4 = k(-720) * a2.clone() + k(6750) * b.clone();
    let j6 = k(8640) * a3.clone() - k(108000) * a.clone() * b.clone() + k(202500) * c.clone();
    let j10 = k(-62208) * a3.clone() * a2.clone()
        + k(972000) * a3 * b.clone()
        + k(1620000) * a2 * c.clone()
        - k(3037500) * a.clone() * b.clone() * b.clone()
        - k(6075000) * b * c
        - k(4556250) * d;
    Ok([j2, j4, j6, j10])
}

pub fn igusa(f: &Form) -> Result<IgusaInvariants> {
    let [j2, j4, j6, j10] = igusa_generic(f)?;
    Ok(IgusaInvariants { j2, j4, j6, j10 })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbsoluteInvariants {
    pub i1: Rat,
    pub i2: Rat,
    pub i3: Rat,
}

/// `i1 = 144 J4/J2^2`, `i2 = -1728 (J2 J4 - 3 J6)/J2^3`, `i3 = 486 J10/J2^5`;
/// `None` when `J2 = 0` (use [`canonical_key`] there).
pub fn absolute_invariants(j: &IgusaInvariants) -> Option<AbsoluteInvariants> {
    if j.j2.is_zero() {
        return None;
    }
    let j2 = &j.j2;
    Some(AbsoluteInvariants {
        i1: int(144) * &j.j4 / pow(j2, 2),
        i2: int(-1728) * (j2 * &j.j4 - int(3) * &j.j6) / pow(j2, 3),
        i3: int(486) * &j.j10 / pow(j2, 5),
    })
}

fn raw_moduli_coordinates(j: &IgusaInvariants) -> [Rat; 4] {
    let j2 = &j.j2;
    [
        &j.j4 * pow(j2, 3),
        (j2 * &j.j4 - int(3) * &j.j6) * pow(j2, 2),
        j.j10.clone(),
        pow(j2, 5),
    ]
}

pub fn moduli_point_from_invariants(j: &IgusaInvariants) -> Result<ProjPointQ> {
    let raw = raw_moduli_coordinates(j);
    let weighted: Vec<Rat> = raw.iter().zip(MODULI_WEIGHTS).map(|(x, w)| x * int(w)).collect();
    normalize(&weighted).map_err(|_| Error::NotGenus2("all moduli coordinates vanish".into()))
}

pub fn moduli_point_g2(f: &Form) -> Result<ProjPointQ> {
    moduli_point_from_invariants(&igusa(f)?)
}

pub fn moduli_height_g2(f: &Form) -> Result<BigInt> {
    Ok(moduli_point_g2(f)?.height())
}

fn symbolic_invariants() -> &'static [Poly; 4] {
    static CACHE: OnceLock<[Poly; 4]> = OnceLock::new();
    CACHE.get_or_init(|| {
        let f = BinaryForm::new((0..7).map(|k| Poly::var(7, k)).collect()).expect("seven coefficients");
        igusa_generic(&f).expect("sextic").map(|p| p.with_nvars(7))
    })
}

/// The `i`-th moduli coordinate (1-based) as a degree-10 polynomial in
/// `a0, ..., a6`, without the weight from [`MODULI_WEIGHTS`].
pub fn coefficient_polys_f(i: usize) -> Result<Poly> {
    let [j2, j4, j6, j10] = symbolic_invariants();
    let three = Poly::constant(7, int(3));
    let j2sq = j2 * j2;
    Ok(match i {
        1 => &(j4 * j2) * &j2sq,
        2 => &(&(j2 * j4) - &(&three * j6)) * &j2sq,
        3 => j10.clone(),
        4 => &(&j2sq * &j2sq) * j2,
        _ => return Err(Error::DimensionMismatch { expected: 4, got: i }),
    })
}

/// `H(moduli point) <= M2 H(f)^10`.
pub fn check_moduli_height_bound_g2(f: &Form) -> Result<BoundReport> {
    let lhs = Rat::from_integer(moduli_height_g2(f)?);
    let rhs = Rat::from_integer(m2()) * pow(&f.height()?, 10);
    Ok(BoundReport::le("moduli height", lhs, rhs))
}

/// Complete invariant of the weighted projective point `(J2 : J4 : J6 : J10)`
/// (weights 2, 4, 6, 10) over an algebraically closed field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CanonicalClassKey {
    /// `(J4/J2^2, J6/J2^3, J10/J2^5)`.
    General([Rat; 3]),
    /// `J2 = 0`: `(J6^2/J4^3, J10^2/J4^5, J6 J10/J4^4)`.
    J2Zero([Rat; 3]),
    /// `J2 = J4 = 0`: `J10^3/J6^5`.
    J2J4Zero(Rat),
    /// `J2 = J4 = J6 = 0`.
    J10Only,
}

pub fn canonical_key(j: &IgusaInvariants) -> CanonicalClassKey {
    let IgusaInvariants { j2, j4, j6, j10 } = j;
    if !j2.is_zero() {
        CanonicalClassKey::General([j4 / pow(j2, 2), j6 / pow(j2, 3), j10 / pow(j2, 5)])
    } else if !j4.is_zero() {
        CanonicalClassKey::J2Zero([
            pow(j6, 2) / pow(j4, 3),
            pow(j10, 2) / pow(j4, 5),
            j6 * j10 / pow(j4, 4),
        ])
    } else if !j6.is_zero() {
        CanonicalClassKey::J2J4Zero(pow(j10, 3) / pow(j6, 5))
    } else {
        CanonicalClassKey::J10Only
    }
}

impl CanonicalClassKey {
    /// Cheap necessary condition for `self == canonical_key(j)` from
    /// floating-point invariants; always true outside the generic branch.
    pub fn may_match(&self, j: &[f64; 4]) -> bool {
        let CanonicalClassKey::General(target) = self else {
            return true;
        };
        let [j2, j4, j6, j10] = *j;
        let scale = j4.abs().sqrt().max(j6.abs().cbrt()).max(j10.abs().powf(0.2)).max(j2.abs());
        if j2.abs() <= 1e-9 * scale {
            return false;
        }
        let got = [j4 / (j2 * j2), j6 / (j2 * j2 * j2), j10 / j2.powi(5)];
        target.iter().zip(got).all(|(t, g)| {
            let t = crate::arith::rat_to_f64(t);
            (t - g).abs() <= 1e-6 * t.abs().max(1.0)
        })
    }
}

impl fmt::Display for CanonicalClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Rat]| v.iter().map(format_rational).collect::<Vec<_>>().join(",");
        match self {
            CanonicalClassKey::General(v) => write!(f, "J2:{}", join(v)),
            CanonicalClassKey::J2Zero(v) => write!(f, "J4:{}", join(v)),
            CanonicalClassKey::J2J4Zero(v) => write!(f, "J6:{}", format_rational(v)),
            CanonicalClassKey::J10Only => f.write_str("J10"),
        }
    }
}
