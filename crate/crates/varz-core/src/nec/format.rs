//! Number formatting and parsing conventions of the reference BASIC driver.

/// Rounds to `places` decimals, halves away from zero.
pub fn round_to(x: f64, places: i32) -> f64 {
    let scale = 10f64.powi(places);
    let r = (x * scale).round() / scale;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// BASIC `STR$` with blanks removed: shortest round-trip digits, no leading
/// zero before the decimal point (`.051`, `-.049`), `-0` printed as `0`.
pub fn basic_str(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    let s = format!("{x}");
    if let Some(rest) = s.strip_prefix("0.") {
        format!(".{rest}")
    } else if let Some(rest) = s.strip_prefix("-0.") {
        format!("-.{rest}")
    } else {
        s
    }
}

/// [`basic_str`] with a trailing `.` when the text has none (`0.`, `200.`).
pub fn fp_str(x: f64) -> String {
    let mut s = basic_str(x);
    if !s.contains('.') {
        s.push('.');
    }
    s
}

/// Fortran-style `1PE12.5` field: five significant digits, two-digit signed
/// exponent, right-aligned in 12 columns.
pub fn fortran_e(x: f64) -> String {
    let s = format!("{x:.4E}");
    let (mantissa, exp) = s.split_once('E').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{:>12}", format!("{mantissa}E{sign}{:02}", exp.abs()))
}

/// Characters `start..start+len` (1-based, like `MID$`), clipped to the line.
pub fn mid(line: &str, start: usize, len: usize) -> &str {
    let bytes = line.len();
    let a = (start - 1).min(bytes);
    let b = (a + len).min(bytes);
    line.get(a..b).unwrap_or("")
}
