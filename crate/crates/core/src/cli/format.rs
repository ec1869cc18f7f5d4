//! Number and record formatting shared by the CSV and JSON writers.

use crate::engine::EnginePerformance;

/// Formats `v` with 12 significant digits, fixed notation for moderate
/// magnitudes (`0.680000000000`) and scientific otherwise.
pub fn sig12(v: f64) -> String {
    if v == 0.0 {
        return "0.00000000000".to_string();
    }
    if !v.is_finite() {
        return String::new();
    }
    // let the scientific formatter do the rounding, then read the exponent back
    let sci = format!("{v:.11e}");
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .unwrap_or(0);
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        sci
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(sig12).unwrap_or_default()
}

pub const RECORD_HEADER: &str =
    "tau,method,qstar1,qstar3,w1,w3,q2,cost1,cost3,eta,power,engine_valid,method_valid";

/// One CSV row in [`RECORD_HEADER`] order, without the line ending.
pub fn record_row(p: &EnginePerformance) -> String {
    [
        sig12(p.tau),
        p.method.name().to_string(),
        sig12(p.qstar1),
        sig12(p.qstar3),
        sig12(p.w1),
        sig12(p.w3),
        sig12(p.q2),
        opt(p.cost1),
        opt(p.cost3),
        opt(p.eta),
        opt(p.power),
        p.engine_valid.to_string(),
        p.method_valid.to_string(),
    ]
    .join(",")
}

/// A flat JSON object value.
pub(crate) enum JsonValue {
    /// Pre-formatted numeric literal.
    Number(String),
    Str(String),
    Bool(bool),
    Null,
}

pub(crate) fn json_object(fields: &[(&str, JsonValue)]) -> String {
    let body = fields
        .iter()
        .map(|(k, v)| {
            let v = match v {
                JsonValue::Number(n) => n.clone(),
                JsonValue::Str(s) => serde_json::Value::String(s.clone()).to_string(),
                JsonValue::Bool(b) => b.to_string(),
                JsonValue::Null => "null".to_string(),
            };
            format!("  \"{k}\": {v}")
        })
        .collect::<Vec<_>>()
        .join(",\n");
    format!("{{\n{body}\n}}\n")
}

pub(crate) fn json_num(v: f64) -> JsonValue {
    JsonValue::Number(sig12(v))
}

pub(crate) fn json_opt(v: Option<f64>) -> JsonValue {
    v.map(json_num).unwrap_or(JsonValue::Null)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(0.68), "0.680000000000");
        assert_eq!(sig12(4.259_062_800_578_623), "4.25906280058");
        assert_eq!(sig12(-13.6028332152848), "-13.6028332153");
        assert_eq!(sig12(1.0), "1.00000000000");
        assert_eq!(sig12(0.9999999999999), "1.00000000000");
        assert_eq!(sig12(1.5e-7), "1.50000000000e-7");
        assert_eq!(sig12(2.5e13), "2.50000000000e13");
        assert_eq!(sig12(123456.0), "123456.000000");
        assert_eq!(sig12(0.0), "0.00000000000");
        assert_eq!(sig12(f64::NAN), "");
    }

    #[test]
    fn json_strings_are_escaped() {
        let s = json_object(&[("a", JsonValue::Str("x\"y".into())), ("b", JsonValue::Null)]);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["a"], "x\"y");
        assert!(v["b"].is_null());
    }
}
