//! Numeric formatting shared by every output path: 12 significant digits.

use serde_json::Value;

pub const SIGNIFICANT_DIGITS: usize = 12;

/// `x` rounded to 12 significant decimal digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .unwrap_or(x)
}

/// Shortest text that parses back to `round_sig(x)`.
pub fn fmt_num(x: f64) -> String {
    let v = round_sig(x);
    if !v.is_finite() {
        return v.to_string();
    }
    let a = v.abs();
    if v == 0.0 || (1e-5..1e15).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// JSON number rounded to 12 significant digits; non-finite values become
/// null.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(round_sig(x)).map_or(Value::Null, Value::Number)
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}
