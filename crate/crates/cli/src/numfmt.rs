//! Number formatting shared by every command.

/// Fifteen significant digits. Fixed notation for magnitudes in
/// `[1e-5, 1e15)`, scientific otherwise.
///
/// ```
/// assert_eq!(geomctl::numfmt::sig15(5.0), "5.00000000000000");
/// assert_eq!(geomctl::numfmt::sig15(-0.125), "-0.125000000000000");
/// ```
pub fn sig15(v: f64) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0.00000000000000".into();
    }
    let sci = format!("{v:.14e}");
    // the exponent after rounding decides the layout, so 9.99…95 → 10.0…
    let exp: i32 = sci[sci.find('e').expect("scientific") + 1..]
        .parse()
        .expect("integer exponent");
    if (-5..15).contains(&exp) {
        format!("{:.*}", (14 - exp) as usize, v)
    } else {
        sci
    }
}

/// Shortest decimal that reads back as the same `f64`.
pub fn shortest(v: f64) -> String {
    format!("{v}")
}

/// Six decimals with negative zero folded to zero.
pub fn fixed6(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}
