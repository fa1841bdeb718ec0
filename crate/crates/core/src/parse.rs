//! Parsers for the small textual inputs accepted on the command line.

use crate::{Error, Result};

/// Parses a rational such as `1/9`, `-3/4`, `7` or a decimal like `0.125`.
pub fn parse_rational(text: &str) -> Result<f64> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::parse(1, "empty rational"));
    }
    let value = match t.split_once('/') {
        Some((num, den)) => {
            let num: i64 = num
                .trim()
                .parse()
                .map_err(|_| Error::parse(1, format!("bad numerator in {t:?}")))?;
            let den: i64 = den
                .trim()
                .parse()
                .map_err(|_| Error::parse(1, format!("bad denominator in {t:?}")))?;
            if den == 0 {
                return Err(Error::parse(1, "zero denominator"));
            }
            num as f64 / den as f64
        }
        None => t
            .parse::<f64>()
            .map_err(|_| Error::parse(1, format!("not a number: {t:?}")))?,
    };
    if !value.is_finite() {
        return Err(Error::parse(1, format!("non-finite value {t:?}")));
    }
    Ok(value)
}

/// Parses a comma separated list of non-negative integers, e.g. `20,30,40`.
pub fn parse_bound_list(text: &str) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for (i, item) in text.split(',').enumerate() {
        let item = item.trim();
        if item.is_empty() {
            return Err(Error::parse(1, format!("empty entry at position {}", i + 1)));
        }
        let b: u32 = item
            .parse()
            .map_err(|_| Error::parse(1, format!("not a non-negative integer: {item:?}")))?;
        out.push(b);
    }
    Ok(out)
}

/// Parses a comma separated list of finite reals.
pub fn parse_real_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::parse(1, format!("not a finite real: {s:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/9").unwrap(), 1.0 / 9.0);
        assert_eq!(parse_rational(" -3/4 ").unwrap(), -0.75);
        assert_eq!(parse_rational("0.125").unwrap(), 0.125);
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x/2").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("inf").is_err());
    }

    #[test]
    fn bound_lists() {
        assert_eq!(parse_bound_list("20,30, 40,50").unwrap(), vec![20, 30, 40, 50]);
        assert!(parse_bound_list("1,,2").is_err());
        assert!(parse_bound_list("-1").is_err());
        assert_eq!(parse_real_list("0.1, 0.05").unwrap(), vec![0.1, 0.05]);
        assert!(parse_real_list("nan").is_err());
    }
}
