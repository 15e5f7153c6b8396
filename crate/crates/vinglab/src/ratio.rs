//! Small helpers for exact rational constants and their rendering.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};

/// Parse a plain decimal literal like `"1.968549"` or `"-20.8"` into the
/// exact fraction it denotes; `None` on malformed input.
pub fn checked_dec(s: &str) -> Option<BigRational> {
    let (sign, rest) = match s.strip_prefix('-') {
        Some(r) => (-1, r),
        None => (1, s),
    };
    let (int_part, frac_part) = match rest.split_once('.') {
        Some((i, f)) => (i, f),
        None => (rest, ""),
    };
    let int_part = if int_part.is_empty() { "0" } else { int_part };
    if !int_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let mut numer: BigInt = int_part.parse().ok()?;
    let mut denom = BigInt::one();
    for c in frac_part.chars() {
        let d = c.to_digit(10)? as i64;
        numer = numer * 10 + d;
        denom *= 10;
    }
    Some(BigRational::new(numer * sign, denom))
}

/// Parse a decimal literal that is known to be well-formed.
pub fn dec(s: &str) -> BigRational {
    checked_dec(s).unwrap_or_else(|| panic!("malformed decimal literal {s:?}"))
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `"p/q"` for proper fractions, plain integer string otherwise.
pub fn render(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // enormous ratios only appear in reports; fall back through parts
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(1.0);
        n / d
    })
}

pub fn is_zero(r: &BigRational) -> bool {
    r.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_parsing_is_exact() {
        assert_eq!(dec("20.8"), frac(104, 5));
        assert_eq!(dec("810.4"), frac(4052, 5));
        assert_eq!(dec("-1.5"), frac(-3, 2));
        assert_eq!(dec("7"), int(7));
        assert_eq!(dec("1.968549"), frac(1_968_549, 1_000_000));
        assert_eq!(dec("0.455955"), frac(455_955, 1_000_000));
    }

    #[test]
    fn rendering() {
        assert_eq!(render(&frac(104, 5)), "104/5");
        assert_eq!(render(&int(24)), "24");
        assert_eq!(to_f64(&frac(104, 5)), 20.8);
    }
}
