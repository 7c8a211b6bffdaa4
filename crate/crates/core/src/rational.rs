//! Exact rationals and their text form.

use num_integer::Integer;

use crate::error::{Error, Result};

pub type Rational = num_rational::Ratio<i128>;

pub fn rat(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

pub fn int(n: i128) -> Rational {
    Rational::from_integer(n)
}

/// `"p/q"`, or `"p"` for integers.
pub fn to_text(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.trim().parse().ok()?;
            let d: i128 = d.trim().parse().ok()?;
            (d != 0).then(|| rat(n, d))
        }
        None => Some(int(s.parse().ok()?)),
    }
}

/// Image in Z/rZ; fails if the denominator is not invertible mod r.
pub fn mod_r(x: &Rational, r: u64) -> Result<u64> {
    let r128 = r as i128;
    let den = x.denom().mod_floor(&r128);
    let g = den.extended_gcd(&r128);
    if g.gcd.abs() != 1 {
        return Err(Error::NotCoprime {
            r,
            bound: x.denom().unsigned_abs() as u64,
        });
    }
    let inv = g.x.mod_floor(&r128);
    let num = x.numer().mod_floor(&r128);
    Ok(((num * inv).mod_floor(&r128)) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_roundtrip() {
        for x in [rat(1, 480), rat(-3, 7), int(5), int(0)] {
            assert_eq!(parse(&to_text(&x)), Some(x));
        }
        assert_eq!(to_text(&rat(2, 4)), "1/2");
        assert_eq!(parse("1/0"), None);
    }

    #[test]
    fn reduction_mod_r() {
        assert_eq!(mod_r(&rat(1, 2), 7).unwrap(), 4);
        assert_eq!(mod_r(&rat(-1, 3), 7).unwrap(), 2);
        assert!(mod_r(&rat(1, 7), 7).is_err());
    }
}
