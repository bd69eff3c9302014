//! JSON and CSV interchange. Rationals and big integers are written as
//! strings (`"p/q"`, `q = 1` elided) so nothing is truncated downstream.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::{format_rational, parse_rational};
use crate::error::{Error, Result};
use crate::g2curve::{Census, CurveClassRecord};
use crate::report::BoundReport;
use crate::{ProjPointQ, Rat};

fn strs(v: &[Rat]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CurveClassJson {
    pub coeffs: Vec<String>,
    #[serde(rename = "J")]
    pub j: [String; 4],
    pub key: String,
    pub height: String,
    pub moduli_height: String,
    pub aut_order: usize,
    pub members: Vec<Vec<String>>,
    /// Member indices grouped into classes over Q.
    pub q_classes: Vec<Vec<usize>>,
}

impl From<&CurveClassRecord> for CurveClassJson {
    fn from(r: &CurveClassRecord) -> Self {
        CurveClassJson {
            coeffs: strs(&r.representative),
            j: r.invariants.as_array().map(|x| format_rational(&x)),
            key: r.key.to_string(),
            height: r.height.to_string(),
            moduli_height: r.moduli_height.to_string(),
            aut_order: r.aut_order,
            members: r.members.iter().map(|m| strs(m)).collect(),
            q_classes: r.q_classes.clone(),
        }
    }
}

pub fn record_to_json(r: &CurveClassRecord) -> String {
    serde_json::to_string(&CurveClassJson::from(r)).expect("plain data serializes")
}

/// One record per line, in census order.
pub fn census_jsonl(c: &Census) -> String {
    c.classes.iter().map(|r| record_to_json(r) + "\n").collect()
}

/// `id,coeffs,|G|` with 1-based ids and coefficients as `[a0 a1 ... a6]`.
pub fn census_csv(c: &Census) -> String {
    let mut out = String::from("id,coeffs,G\n");
    for (i, r) in c.classes.iter().enumerate() {
        out += &format!("{},[{}],{}\n", i + 1, strs(&r.representative).join(" "), r.aut_order);
    }
    out
}

pub fn point_to_json(p: &ProjPointQ) -> Value {
    Value::Array(p.coords().iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn report_to_json(r: &BoundReport) -> Value {
    serde_json::json!({
        "label": r.label,
        "lhs": format_rational(&r.lhs),
        "rhs": format_rational(&r.rhs),
        "holds": r.holds,
        "tightness": r.tightness(),
    })
}

/// Accepts numbers or strings such as `"3/4"`.
pub fn rational_from_json(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        _ => Err(Error::Parse(format!("expected a rational, got {v}"))),
    }
}

pub fn rationals_from_json(v: &Value) -> Result<Vec<Rat>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("expected an array, got {v}")))?
        .iter()
        .map(rational_from_json)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn rationals_round_trip() {
        let v: Value = serde_json::from_str(r#"[1, "-3/4", "12345678901234567890123", 0]"#).unwrap();
        let r = rationals_from_json(&v).unwrap();
        assert_eq!(r[1], Rat::new((-3).into(), 4.into()));
        assert_eq!(strs(&r), vec!["1", "-3/4", "12345678901234567890123", "0"]);
        assert!(rationals_from_json(&serde_json::json!([true])).is_err());
        assert_eq!(point_to_json(&ProjPointQ::from_i64(&[2, 4, 6]).unwrap()), serde_json::json!(["1", "2", "3"]));
        let rep = BoundReport::le("x", int(1), int(2));
        assert_eq!(report_to_json(&rep)["tightness"], serde_json::json!(0.5));
    }
}
