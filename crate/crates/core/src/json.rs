//! Minimal JSON emission with full-precision numbers.
//!
//! Every finite number is written in exponent form with 17 significant
//! digits, which round-trips `f64` exactly; non-finite values become `null`.

pub fn number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

pub fn array<I: IntoIterator<Item = f64>>(xs: I) -> String {
    let items: Vec<String> = xs.into_iter().map(number).collect();
    format!("[{}]", items.join(","))
}

/// `{"a":…,"b":…}`
pub fn ab_object(a: f64, b: f64) -> String {
    format!("{{\"a\":{},\"b\":{}}}", number(a), number(b))
}
