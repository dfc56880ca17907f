//! Deterministic float formatting: 12 significant digits, `.` separator,
//! no locale dependence. CSV cells use the textual form; JSON numbers are
//! quantized to the same precision before serialization so identical
//! inputs always produce identical bytes.

/// Render with 12 significant digits.
pub fn fmt_sig(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-5..=15).contains(&exp) {
        format!("{:.11e}", v)
    } else {
        let prec = (11 - exp).max(0) as usize;
        format!("{:.*}", prec, v)
    }
}

/// Quantize to the 12-significant-digit grid used by [`fmt_sig`].
pub fn round_sig(v: f64) -> f64 {
    fmt_sig(v).parse().unwrap_or(v)
}

/// Recursively quantize every number inside a JSON value.
pub fn quantize_json(value: &mut serde_json::Value) {
    match value {
        serde_json::Value::Number(n) => {
            if let Some(f) = n.as_f64() {
                if n.is_f64() {
                    if let Some(q) = serde_json::Number::from_f64(round_sig(f)) {
                        *value = serde_json::Value::Number(q);
                    }
                }
            }
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(quantize_json),
        serde_json::Value::Object(map) => map.values_mut().for_each(quantize_json),
        _ => {}
    }
}
