//! Deterministic JSON output.

use serde_json::{Number, Value};

/// Significant digits kept in every floating-point output value.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// `x` rounded to [`SIGNIFICANT_DIGITS`]; `-0` becomes `0`.
pub fn round_significant(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let rounded: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().expect("formatted float");
    if rounded == 0.0 {
        0.0
    } else {
        rounded
    }
}

/// Rounds every float in `value`; integers are left alone and non-finite
/// floats become `null`.
pub fn round_value(value: Value) -> Value {
    match value {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            Number::from_f64(round_significant(x)).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_value).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        other => other,
    }
}

/// Pretty-printed document with rounded numbers and a trailing newline.
pub fn render(value: Value) -> String {
    let mut text = serde_json::to_string_pretty(&round_value(value)).expect("JSON values serialize");
    text.push('\n');
    text
}
