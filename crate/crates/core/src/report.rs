use std::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::arith::format_rational;
use crate::Rat;

/// Outcome of checking one inequality `lhs <= rhs` exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub label: String,
    pub lhs: Rat,
    pub rhs: Rat,
    pub holds: bool,
}

impl BoundReport {
    pub fn le(label: impl Into<String>, lhs: Rat, rhs: Rat) -> Self {
        let holds = lhs <= rhs;
        BoundReport { label: label.into(), lhs, rhs, holds }
    }

    pub fn eq(label: impl Into<String>, lhs: Rat, rhs: Rat) -> Self {
        let holds = lhs == rhs;
        BoundReport { label: label.into(), lhs, rhs, holds }
    }

    /// `lhs / rhs`; values near 1 mean the bound is nearly sharp.
    pub fn tightness(&self) -> f64 {
        if self.rhs.is_zero() {
            return if self.lhs.is_zero() { 1.0 } else { f64::INFINITY };
        }
        (&self.lhs / &self.rhs).to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} <= {} [{}]",
            self.label,
            format_rational(&self.lhs),
            format_rational(&self.rhs),
            if self.holds { "ok" } else { "FAILED" }
        )
    }
}

pub fn all_hold(reports: &[BoundReport]) -> bool {
    reports.iter().all(|r| r.holds)
}
