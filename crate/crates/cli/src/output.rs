use serde_json::Value;

/// Rounds to `digits` significant digits. Non-finite values pass through.
pub fn round_sig(v: f64, digits: usize) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v + 0.0;
    }
    let s = format!("{:.*e}", digits.saturating_sub(1), v);
    s.parse::<f64>().expect("formatted float parses") + 0.0
}

/// Rounds every number inside a JSON tree.
pub fn round_json(v: Value, digits: usize) -> Value {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(f) if !(n.is_i64() || n.is_u64()) => {
                serde_json::Number::from_f64(round_sig(f, digits))
                    .map_or(Value::Null, Value::Number)
            }
            _ => Value::Number(n),
        },
        Value::Array(a) => Value::Array(a.into_iter().map(|x| round_json(x, digits)).collect()),
        Value::Object(o) => Value::Object(
            o.into_iter()
                .map(|(k, x)| (k, round_json(x, digits)))
                .collect(),
        ),
        other => other,
    }
}

/// A CSV cell: the rounded value in shortest form, empty when absent.
pub fn cell(v: Option<f64>, digits: usize) -> String {
    match v {
        Some(x) if x.is_finite() => round_sig(x, digits).to_string(),
        Some(x) => x.to_string(),
        None => String::new(),
    }
}
