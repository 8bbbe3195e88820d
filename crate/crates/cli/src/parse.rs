//! Parsers for numeric command-line arguments.

use regprod::rug::ops::Pow;
use regprod::rug::{Integer, Rational};

/// Parses `[-]digits[.digits]` or `p/q` into an exact rational.
pub fn rational(text: &str) -> Result<Rational, String> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: Integer = p.trim().parse().map_err(|_| format!("bad numerator in {text:?}"))?;
        let q: Integer = q.trim().parse().map_err(|_| format!("bad denominator in {text:?}"))?;
        if q == 0 {
            return Err(format!("zero denominator in {text:?}"));
        }
        return Ok(Rational::from((p, q)));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if int.is_empty() && frac.is_empty() || !all_digits(int) || !all_digits(frac) {
        return Err(format!("not a decimal number: {text:?}"));
    }
    let digits = format!("{int}{frac}");
    let num: Integer = if digits.is_empty() { Integer::new() } else { digits.parse().map_err(|_| format!("bad number {text:?}"))? };
    let den = Integer::from(10).pow(frac.len() as u32);
    let q = Rational::from((num, den));
    Ok(if neg { -q } else { q })
}

/// Parses `<re>[+|-]<im>i` (imaginary part optional) or a bare `<im>i`.
pub fn complex(text: &str) -> Result<(Rational, Rational), String> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = t.strip_suffix('i') else {
        return Ok((rational(&t)?, Rational::new()));
    };
    // the sign separating the parts is the last one not at the start
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(k, _)| k)
        .last();
    let (re, im) = match split {
        Some(k) => (rational(&body[..k])?, &body[k..]),
        None => (Rational::new(), body),
    };
    let im = match im {
        "" | "+" => Rational::from(1),
        "-" => Rational::from(-1),
        other => rational(other)?,
    };
    Ok((re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals() {
        assert_eq!(rational("0.5").unwrap(), Rational::from((1, 2)));
        assert_eq!(rational("-3.75").unwrap(), Rational::from((-15, 4)));
        assert_eq!(rational("2").unwrap(), 2);
        assert_eq!(rational(".25").unwrap(), Rational::from((1, 4)));
        assert_eq!(rational("1/3").unwrap(), Rational::from((1, 3)));
        for bad in ["", "-", "1e5", "abc", "1.2.3", "1/0", "."] {
            assert!(rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn complex_literals() {
        let c = |s| complex(s).unwrap();
        assert_eq!(c("0"), (Rational::new(), Rational::new()));
        assert_eq!(c("0+0i"), (Rational::new(), Rational::new()));
        assert_eq!(c("16.5+3i"), (Rational::from((33, 2)), Rational::from(3)));
        assert_eq!(c("-2-1.5i"), (Rational::from(-2), Rational::from((-3, 2))));
        assert_eq!(c("2.5i"), (Rational::new(), Rational::from((5, 2))));
        assert_eq!(c("1-i"), (Rational::from(1), Rational::from(-1)));
        assert!(complex("1+2j").is_err());
        assert!(complex("1e3").is_err());
    }
}
