//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `(-1)^e` as a rational.
pub fn sign(e: i64) -> Q {
    if e.rem_euclid(2) == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

pub fn is_odd(e: i64) -> bool {
    e.rem_euclid(2) == 1
}

/// Parses `"p"`, `"-p"` or `"p/q"` into an exact rational.
pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    let bad = || Error::Schema(format!("invalid rational coefficient {s:?}"));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Q::new(n, d))
    } else {
        let n: BigInt = t.parse().map_err(|_| bad())?;
        Ok(Q::from_integer(n))
    }
}

/// Canonical string form, `"p"` or `"p/q"` with `q > 0`.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `c·label` with unit coefficients elided, e.g. `x`, `-x`, `3/2·x`.
pub fn format_coeff(c: &Q, label: &str) -> String {
    if c.is_one() {
        label.to_string()
    } else if (-c).is_one() {
        format!("-{label}")
    } else {
        format!("{}·{label}", format_q(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("3/6").unwrap(), q_frac(1, 2));
        assert_eq!(parse_q(" -4 ").unwrap(), q(-4));
        assert_eq!(format_q(&q_frac(-2, 4)), "-1/2");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
        assert_eq!(sign(-3), q(-1));
    }
}
