//! Parsing of command-line number notations.
//!
//! Naturals are accepted in decimal (`1999`) or positional notation with
//! an explicit base suffix (`10201_3`). For bases up to 36 the digits are
//! the usual alphanumerics; larger bases separate decimal digit values
//! with dots (`17.0.4_100`). Epsilons are `p/q` fractions or short
//! decimals (`0.05`). Ranges are inclusive (`1..10000` or `1..=10000`).

use sloane_core::numbase::{from_digits, Base, DigitVector};
use sloane_core::Natural;

pub fn parse_natural(s: &str) -> Result<Natural, String> {
    let s = s.trim();
    if let Some((digits, base)) = s.rsplit_once('_') {
        let b: u32 = base.parse().map_err(|_| format!("bad base suffix in {s:?}"))?;
        let base = Base::new(b).map_err(|e| e.to_string())?;
        let mut values: Vec<u32> = Vec::new();
        if digits.contains('.') {
            for part in digits.split('.') {
                values.push(part.parse().map_err(|_| format!("bad digit {part:?} in {s:?}"))?);
            }
        } else {
            for c in digits.chars() {
                let d = c.to_digit(36).ok_or_else(|| format!("bad digit {c:?} in {s:?}"))?;
                values.push(d);
            }
        }
        if values.is_empty() {
            return Err(format!("no digits in {s:?}"));
        }
        values.reverse(); // notation is most-significant first
        let dv = DigitVector::from_parts(values, base).map_err(|e| e.to_string())?;
        Ok(from_digits(&dv))
    } else {
        s.parse().map_err(|_| format!("not a natural number: {s:?}"))
    }
}

/// `p/q`, a plain decimal like `0.001`, or a bare integer; returns the
/// exact pair without any range restriction.
pub fn parse_ratio(s: &str) -> Result<(u64, u64), String> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: u64 = n.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let d: u64 = d.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        if d == 0 {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok((n, d))
    } else if let Some((int, frac)) = s.split_once('.') {
        if !int.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(format!("not a decimal: {s:?}"));
        }
        if frac.len() > 18 {
            return Err(format!("decimal too precise: {s:?}"));
        }
        let scale = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|e| format!("{e}"))? };
        let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|e| format!("{e}"))? };
        Ok((int * scale + frac, scale))
    } else if s.chars().all(|c| c.is_ascii_digit()) && !s.is_empty() {
        Ok((s.parse().map_err(|e| format!("{e}"))?, 1))
    } else {
        Err(format!("expected p/q or a decimal, got {s:?}"))
    }
}

/// Like [`parse_ratio`] but restricted to `0 < value < 1`.
pub fn parse_eps(s: &str) -> Result<(u64, u64), String> {
    let (num, den) = parse_ratio(s)?;
    if num == 0 || num >= den {
        return Err(format!("epsilon must lie strictly between 0 and 1, got {num}/{den}"));
    }
    Ok((num, den))
}

/// Inclusive range `lo..hi` (also accepts `lo..=hi`).
pub fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let s = s.trim();
    let (lo, hi) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("range must look like lo..hi, got {s:?}"))?;
    let lo: u64 = lo.trim().parse().map_err(|_| format!("bad range start in {s:?}"))?;
    let hi: u64 = hi.trim().parse().map_err(|_| format!("bad range end in {s:?}"))?;
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok((lo, hi))
}

/// Comma-separated u64 list.
pub fn parse_u64_list(s: &str) -> Result<Vec<u64>, String> {
    s.split(',')
        .map(|p| p.trim().parse::<u64>().map_err(|_| format!("bad integer {p:?}")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_and_positional() {
        assert_eq!(parse_natural("100").unwrap(), Natural::from(100u32));
        assert_eq!(parse_natural("10201_3").unwrap(), Natural::from(100u32));
        assert_eq!(parse_natural("ff_16").unwrap(), Natural::from(255u32));
        assert_eq!(parse_natural("1.0.4_100").unwrap(), Natural::from(10004u32));
        assert!(parse_natural("21_2").is_err()); // digit out of range
        assert!(parse_natural("xyz").is_err());
    }

    #[test]
    fn eps_forms() {
        assert_eq!(parse_eps("1/6").unwrap(), (1, 6));
        assert_eq!(parse_eps("0.05").unwrap(), (5, 100));
        assert_eq!(parse_eps("0.001").unwrap(), (1, 1000));
        assert!(parse_eps("0").is_err());
        assert!(parse_eps("7/7").is_err());
        assert!(parse_eps("2").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..10").unwrap(), (1, 10));
        assert_eq!(parse_range("5..=9").unwrap(), (5, 9));
        assert!(parse_range("9..5").is_err());
        assert!(parse_range("5").is_err());
    }
}
