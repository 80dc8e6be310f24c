//! Shorthand constructors and parsing for arbitrary-precision rationals.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::Signed;

pub type Rat = num_rational::BigRational;

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat_i64(n: i64, d: i64) -> Rat {
    Rat::new(big(n), big(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from(big(n))
}

/// Power of two, exponent may be negative.
pub fn pow2(e: i64) -> Rat {
    if e >= 0 {
        Rat::from(BigInt::from(1) << e as u64)
    } else {
        Rat::new(BigInt::from(1), BigInt::from(1) << (-e) as u64)
    }
}

/// Parse "p/q", an integer, or a decimal literal into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = n
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("bad numerator in `{s}`")))?;
        let den: BigInt = d
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("bad denominator in `{s}`")))?;
        if !den.is_positive() {
            return Err(Error::Config(format!("denominator must be positive in `{s}`")));
        }
        return Ok(Rat::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let neg = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches('-');
        if !int_digits.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
            || frac_part.is_empty()
        {
            return Err(Error::Config(format!("bad decimal literal `{s}`")));
        }
        let joined = format!("{int_digits}{frac_part}");
        let num: BigInt = joined
            .parse()
            .map_err(|_| Error::Config(format!("bad decimal literal `{s}`")))?;
        let den = BigInt::from(10).pow(frac_part.len() as u32);
        let r = Rat::new(num, den);
        return Ok(if neg { -r } else { r });
    }
    let num: BigInt = s
        .parse()
        .map_err(|_| Error::Config(format!("bad rational `{s}`")))?;
    Ok(Rat::from(num))
}

/// Render as "p/q" (or "p" for integers); parse_rat round-trips this.
pub fn format_rat(x: &Rat) -> String {
    if x.denom() == &BigInt::from(1) {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `x^e` for unsigned `e` by repeated squaring.
pub fn rat_pow(x: &Rat, e: u64) -> Rat {
    use num_traits::One;
    if e == 0 {
        return Rat::one();
    }
    let mut base = x.clone();
    let mut acc = Rat::one();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// `x^e` with a possibly negative exponent.
pub fn rat_pow_signed(x: &Rat, e: i64) -> Rat {
    if e >= 0 {
        rat_pow(x, e as u64)
    } else {
        rat_pow(x, (-e) as u64).recip()
    }
}

/// Largest integer q with q^2 <= x, for rational x >= 0.
pub fn sqrt_floor_rat(x: &Rat) -> BigInt {
    assert!(!x.is_negative());
    let mut q = (x.numer() / x.denom()).sqrt();
    let check = |q: &BigInt| Rat::from(q * q) <= *x;
    while !check(&q) {
        q -= 1;
    }
    loop {
        let next = &q + 1;
        if check(&next) {
            q = next;
        } else {
            break;
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rat("3/4").unwrap(), rat_i64(3, 4));
        assert_eq!(parse_rat("-7").unwrap(), rat_i64(-7, 1));
        assert_eq!(parse_rat("0.25").unwrap(), rat_i64(1, 4));
        assert_eq!(parse_rat("-1.5").unwrap(), rat_i64(-3, 2));
        assert!(parse_rat("1/0").is_err());
    }

    #[test]
    fn round_trip_format() {
        for s in ["5/3", "-2/7", "41"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(parse_rat(&format_rat(&r)).unwrap(), r);
        }
    }

    #[test]
    fn sqrt_floor_edges() {
        assert_eq!(sqrt_floor_rat(&rat_i64(0, 1)), big(0));
        assert_eq!(sqrt_floor_rat(&rat_i64(1, 1)), big(1));
        assert_eq!(sqrt_floor_rat(&rat_i64(99, 1)), big(9));
    }
}
