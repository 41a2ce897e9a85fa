//! Exact rationals plus the few boundary conversions (parsing, decimal
//! display, JSON) the CLI needs. All internal arithmetic stays in `Rat`.

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::{Error, Result};

/// Exact rational with 128-bit components. Large enough for every closed-form
/// value at parameters the CLI accepts (self-intersections grow like n⁴).
pub type Rat = Ratio<i128>;

pub fn rat(n: i128) -> Rat {
    Rat::from_integer(n)
}

/// Parses `p`, `-p` or `p/q` (q > 0 after normalization).
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let err = || Error::ParseRational(s.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let num: i128 = num.trim().parse().map_err(|_| err())?;
        let den: i128 = den.trim().parse().map_err(|_| err())?;
        if den == 0 {
            return Err(err());
        }
        Ok(Rat::new(num, den))
    } else {
        let n: i128 = s.parse().map_err(|_| err())?;
        Ok(rat(n))
    }
}

/// Lowest-terms `p/q` string, or just `p` for integers.
pub fn exact_string(r: &Rat) -> String {
    if r.denom() == &1 {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Fixed-point decimal with `digits` places, rounded half to even.
pub fn decimal_string(r: &Rat, digits: u32) -> String {
    let neg = r.is_negative();
    let abs = r.abs();
    let scale = 10i128.pow(digits);
    let scaled_num = abs.numer() * scale;
    let den = *abs.denom();
    let mut quo = scaled_num / den;
    let rem = scaled_num % den;
    // half-even tie break on the last digit
    match (2 * rem).cmp(&den) {
        std::cmp::Ordering::Greater => quo += 1,
        std::cmp::Ordering::Equal => {
            if quo % 2 != 0 {
                quo += 1;
            }
        }
        std::cmp::Ordering::Less => {}
    }
    let int_part = quo / scale;
    let frac_part = quo % scale;
    let sign = if neg && quo != 0 { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part:0width$}", width = digits as usize)
    }
}

/// JSON form `{"num": p, "den": q}` in lowest terms, q > 0.
pub fn rat_to_json(r: &Rat) -> Result<Value> {
    let num = i64::try_from(*r.numer()).map_err(|_| Error::RenderOverflow)?;
    let den = i64::try_from(*r.denom()).map_err(|_| Error::RenderOverflow)?;
    Ok(json!({ "num": num, "den": den }))
}

/// True when the rational is an integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom() == &1 || r.numer().is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("32").unwrap(), rat(32));
        assert_eq!(parse_rat("-64/15").unwrap(), Rat::new(-64, 15));
        assert_eq!(parse_rat("6/-4").unwrap(), Rat::new(-3, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn exact_rendering() {
        assert_eq!(exact_string(&Rat::new(-64, 15)), "-64/15");
        assert_eq!(exact_string(&rat(-4)), "-4");
    }

    #[test]
    fn decimal_half_even() {
        assert_eq!(decimal_string(&Rat::new(-64, 15), 6), "-4.266667");
        assert_eq!(decimal_string(&Rat::new(1, 2), 0), "0"); // ties to even
        assert_eq!(decimal_string(&Rat::new(3, 2), 0), "2");
        assert_eq!(decimal_string(&Rat::new(5, 4), 1), "1.2");
        assert_eq!(decimal_string(&Rat::new(-81, 20), 6), "-4.050000");
    }
}
