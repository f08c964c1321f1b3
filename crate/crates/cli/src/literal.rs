//! Numeric literals from the command line.

use std::str::FromStr;

use qhumbert::{Rational, C64};

/// Exact literal: an integer or `p/q`. Decimals are refused.
pub fn rational(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    if t.contains(['.', 'e', 'E', 'i']) {
        return Err(format!("'{s}' is not an exact literal; exact mode takes integers or fractions such as 1/3"));
    }
    Rational::from_str(t).map_err(|_| format!("'{s}' is not an integer or fraction"))
}

/// Real literal: decimal, scientific, or `p/q`.
pub fn real(s: &str) -> Result<f64, String> {
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: f64 = n.trim().parse().map_err(|_| format!("bad numerator in '{s}'"))?;
        let d: f64 = d.trim().parse().map_err(|_| format!("bad denominator in '{s}'"))?;
        if d == 0.0 {
            return Err(format!("zero denominator in '{s}'"));
        }
        return Ok(n / d);
    }
    match t.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("'{s}' is not a real number")),
    }
}

/// Float-mode literal: a real, or a complex number `re+imi`, `re-imi`, `imi`.
pub fn complex(s: &str) -> Result<C64, String> {
    let t = s.trim();
    let Some(body) = t.strip_suffix('i') else {
        return real(t).map(|re| C64::new(re, 0.0));
    };
    // Split at the last sign that is not a leading sign or an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (real(&body[..i])?, imag_part(&body[i..], s)?),
        None => (0.0, imag_part(body, s)?),
    };
    Ok(C64::new(re, im))
}

fn imag_part(t: &str, whole: &str) -> Result<f64, String> {
    match t {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => real(t).map_err(|_| format!("'{whole}' is not a complex number")),
    }
}

/// Either a bare integer exponent or, in float mode, a general value.
pub fn exponent(s: &str) -> Option<i64> {
    s.trim().parse().ok()
}

/// `start:stop:step`, inclusive of `stop` up to rounding. `start > stop`
/// yields an empty range.
pub fn range(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, step] = parts[..] else {
        return Err(format!("range '{s}' must look like start:stop:step"));
    };
    let (start, stop, step) = (real(start)?, real(stop)?, real(step)?);
    if step <= 0.0 {
        return Err(format!("range '{s}' needs a positive step"));
    }
    if start > stop {
        return Ok(Vec::new());
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}
