//! Rational interval enclosures.
//!
//! Every quantity that cannot be represented as an exact rational (q-th
//! roots, logarithms) is carried as a closed interval with rational
//! endpoints. Comparisons against such quantities are certified: they are
//! answered only when the intervals are disjoint or both are degenerate,
//! and callers refine precision until the comparison resolves.

use crate::error::{Error, Result};
use crate::rat::{big, rat_i64, rat_pow, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Closed interval `[lo, hi]` with rational endpoints, `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enc {
    lo: Rat,
    hi: Rat,
}

impl fmt::Display for Enc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

impl Enc {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo <= hi, "enclosure endpoints out of order");
        Enc { lo, hi }
    }

    pub fn exact(x: Rat) -> Self {
        Enc {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn add(&self, other: &Enc) -> Enc {
        Enc::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &Enc) -> Enc {
        Enc::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn mul(&self, other: &Enc) -> Enc {
        let candidates = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = candidates.iter().min().unwrap().clone();
        let hi = candidates.iter().max().unwrap().clone();
        Enc::new(lo, hi)
    }

    pub fn scale(&self, c: &Rat) -> Enc {
        if c.is_negative() {
            Enc::new(&self.hi * c, &self.lo * c)
        } else {
            Enc::new(&self.lo * c, &self.hi * c)
        }
    }

    /// Reciprocal; defined only for sign-definite enclosures.
    pub fn recip(&self) -> Result<Enc> {
        if self.lo.is_positive() || self.hi.is_negative() {
            Ok(Enc::new(self.hi.recip(), self.lo.recip()))
        } else {
            Err(Error::Domain(
                "reciprocal of an enclosure containing zero".into(),
            ))
        }
    }

    pub fn div(&self, other: &Enc) -> Result<Enc> {
        Ok(self.mul(&other.recip()?))
    }

    /// Integer power, valid for non-negative enclosures or even exponents.
    pub fn pow_i64(&self, e: i64) -> Result<Enc> {
        if e == 0 {
            return Ok(Enc::exact(Rat::one()));
        }
        if e < 0 {
            return self.pow_i64(-e)?.recip();
        }
        if self.lo.is_negative() {
            return Err(Error::Domain("integer power of signed enclosure".into()));
        }
        let lo = rat_pow(&self.lo, e as u64);
        let hi = rat_pow(&self.hi, e as u64);
        Ok(Enc::new(lo, hi))
    }

    /// `self^(p/q)` for a non-negative enclosure, to roughly `prec` bits.
    pub fn pow_rat(&self, exp: &Rat, prec: u32) -> Result<Enc> {
        if self.lo.is_negative() {
            return Err(Error::Domain("rational power of signed enclosure".into()));
        }
        let lo = pow_rat_lower(&self.lo, exp, prec)?;
        let hi = pow_rat_upper(&self.hi, exp, prec)?;
        if exp.is_negative() {
            // x^exp is decreasing in x
            let l2 = pow_rat_lower(&self.hi, exp, prec)?;
            let h2 = pow_rat_upper(&self.lo, exp, prec)?;
            return Ok(Enc::new(l2, h2));
        }
        Ok(Enc::new(lo, hi))
    }

    /// Certified comparison; `None` when the intervals overlap without
    /// both being the same exact point.
    pub fn cmp_certified(&self, other: &Enc) -> Option<Ordering> {
        if self.hi < other.lo {
            return Some(Ordering::Less);
        }
        if self.lo > other.hi {
            return Some(Ordering::Greater);
        }
        if self.is_exact() && other.is_exact() && self.lo == other.lo {
            return Some(Ordering::Equal);
        }
        None
    }

    pub fn cmp_rat(&self, x: &Rat) -> Option<Ordering> {
        self.cmp_certified(&Enc::exact(x.clone()))
    }
}

/// Floor of the q-th root of a non-negative integer.
pub fn nth_root_floor(n: &BigInt, q: u32) -> BigInt {
    assert!(!n.is_negative() && q >= 1);
    n.nth_root(q)
}

/// Exact rational q-th root when one exists.
pub fn exact_nth_root(x: &Rat, q: u32) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let rn = nth_root_floor(x.numer(), q);
    let rd = nth_root_floor(x.denom(), q);
    if rat_pow(&Rat::new(rn.clone(), rd.clone()), q as u64) == *x {
        Some(Rat::new(rn, rd))
    } else {
        None
    }
}

/// Enclosure of `x^(1/q)` of width `<= 2 * 2^-prec / denom-ish`, with the
/// exact value returned as a degenerate interval when it is rational.
pub fn nth_root_enc(x: &Rat, q: u32, prec: u32) -> Result<Enc> {
    if x.is_negative() {
        return Err(Error::Domain("root of negative rational".into()));
    }
    if x.is_zero() {
        return Ok(Enc::exact(Rat::zero()));
    }
    if q == 1 {
        return Ok(Enc::exact(x.clone()));
    }
    if let Some(r) = exact_nth_root(x, q) {
        return Ok(Enc::exact(r));
    }
    // (a/b)^(1/q) = (a b^(q-1))^(1/q) / b
    let a = x.numer();
    let b = x.denom();
    let n = a * b.pow(q - 1);
    let shifted = &n << (prec as u64 * q as u64);
    let m = nth_root_floor(&shifted, q);
    let scale = b * (BigInt::one() << prec);
    let lo = Rat::new(m.clone(), scale.clone());
    let hi = Rat::new(m + big(2), scale);
    Ok(Enc::new(lo, hi))
}

fn pow_rat_parts(exp: &Rat) -> (i64, u32) {
    let p = i64::try_from(exp.numer()).expect("exponent numerator too large");
    let q = u32::try_from(exp.denom()).expect("exponent denominator too large");
    (p, q)
}

/// Lower bound for `x^exp`, `x >= 0`, rational `exp`.
pub fn pow_rat_lower(x: &Rat, exp: &Rat, prec: u32) -> Result<Rat> {
    Ok(pow_rat_enc(x, exp, prec)?.lo().clone())
}

/// Upper bound for `x^exp`, `x >= 0`, rational `exp`.
pub fn pow_rat_upper(x: &Rat, exp: &Rat, prec: u32) -> Result<Rat> {
    Ok(pow_rat_enc(x, exp, prec)?.hi().clone())
}

/// Enclosure of `x^exp` for `x >= 0` and rational `exp = p/q`.
pub fn pow_rat_enc(x: &Rat, exp: &Rat, prec: u32) -> Result<Enc> {
    if x.is_negative() {
        return Err(Error::Domain("rational power of negative base".into()));
    }
    let (p, q) = pow_rat_parts(exp);
    if x.is_zero() {
        if p > 0 {
            return Ok(Enc::exact(Rat::zero()));
        }
        return Err(Error::Domain("zero base with non-positive exponent".into()));
    }
    let xp = if p >= 0 {
        rat_pow(x, p as u64)
    } else {
        rat_pow(x, (-p) as u64).recip()
    };
    nth_root_enc(&xp, q, prec)
}

/// Enclosure of `ln x` for rational `x > 0`.
///
/// Uses `ln x = 2 atanh(z)` with `z = (x-1)/(x+1)`, after pulling out
/// powers of two so the series argument stays small.
pub fn ln_enc(x: &Rat, prec: u32) -> Result<Enc> {
    if !x.is_positive() {
        return Err(Error::Domain("log of non-positive rational".into()));
    }
    if x.is_one() {
        return Ok(Enc::exact(Rat::zero()));
    }
    // Normalize x into [1, 2) times a power of two.
    let mut e: i64 = 0;
    let mut m = x.clone();
    let two = rat_i64(2, 1);
    let one = Rat::one();
    while m >= two {
        m /= &two;
        e += 1;
    }
    while m < one {
        m *= &two;
        e -= 1;
    }
    let ln2 = ln2_enc(prec);
    let base = atanh_series(&m, prec)?;
    Ok(base.add(&ln2.scale(&rat_i64(e, 1))))
}

/// Enclosure of `ln 2` from the series `sum 1/(k 2^k)`.
pub fn ln2_enc(prec: u32) -> Enc {
    let terms = prec as usize + 4;
    let mut sum = Rat::zero();
    for k in 1..=terms {
        sum += Rat::new(BigInt::one(), big(k as i64) << k);
    }
    // tail < 2^-terms / (terms + 1)
    let tail = Rat::new(BigInt::one(), big(terms as i64 + 1) << terms);
    Enc::new(sum.clone(), sum + tail)
}

/// `2 atanh((x-1)/(x+1))` for x in [1, 2); equals ln x.
fn atanh_series(x: &Rat, prec: u32) -> Result<Enc> {
    let z = (x - Rat::one()) / (x + Rat::one());
    debug_assert!(!z.is_negative() && z < rat_i64(1, 2));
    let z2 = &z * &z;
    let mut term = z.clone();
    let mut sum = Rat::zero();
    let mut k: u64 = 0;
    let eps = Rat::new(BigInt::one(), BigInt::one() << prec);
    loop {
        sum += &term / rat_i64((2 * k + 1) as i64, 1);
        term *= &z2;
        k += 1;
        if &term / rat_i64((2 * k + 1) as i64, 1) < eps {
            break;
        }
        if k > 4 * prec as u64 + 64 {
            return Err(Error::PrecisionExhausted {
                bits: prec,
                context: "atanh series did not converge".into(),
            });
        }
    }
    // tail bound: geometric with ratio z^2 < 1/4
    let tail = &term / (Rat::one() - z2);
    let lo = &sum * rat_i64(2, 1);
    let hi = (&sum + tail) * rat_i64(2, 1);
    Ok(Enc::new(lo, hi))
}

/// Refine `f(prec)` until `pred` on the resulting enclosure answers, up to
/// a precision cap.
pub fn refine_until<T>(
    mut start: u32,
    cap: u32,
    mut f: impl FnMut(u32) -> Result<Enc>,
    mut pred: impl FnMut(&Enc) -> Option<T>,
    context: &str,
) -> Result<T> {
    loop {
        let enc = f(start)?;
        if let Some(v) = pred(&enc) {
            return Ok(v);
        }
        if start >= cap {
            return Err(Error::PrecisionExhausted {
                bits: start,
                context: context.into(),
            });
        }
        start = (start * 2).min(cap);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i64;

    #[test]
    fn exact_roots_are_detected() {
        let x = rat_i64(1, 4);
        let e = nth_root_enc(&x, 2, 16).unwrap();
        assert!(e.is_exact());
        assert_eq!(*e.lo(), rat_i64(1, 2));
    }

    #[test]
    fn inexact_roots_bracket_tightly() {
        let x = rat_i64(2, 1);
        let e = nth_root_enc(&x, 2, 40).unwrap();
        assert!(!e.is_exact());
        assert!(e.lo() * e.lo() < x && x < e.hi() * e.hi());
        assert!(e.width() < rat_i64(1, 1 << 30));
    }

    #[test]
    fn pow_rat_cancellation() {
        // (1/4)^(3/2) / (1/4) = (1/4)^(1/2) = 1/2
        let x = rat_i64(1, 4);
        let e = pow_rat_enc(&x, &rat_i64(3, 2), 32).unwrap();
        let exact = rat_i64(1, 8);
        assert!(e.contains(&exact));
        let g = Enc::exact(exact) .div(&Enc::exact(rat_i64(1, 4))).unwrap();
        assert_eq!(*g.lo(), rat_i64(1, 2));
    }

    #[test]
    fn ln2_bracket() {
        let e = ln2_enc(48);
        // 0.693147180559945 ...
        assert!(e.lo() < e.hi());
        let approx = rat_i64(693_147_181, 1_000_000_000);
        assert!(e.lo() < &approx && &rat_i64(693_147_180, 1_000_000_000) < e.hi());
    }

    #[test]
    fn ln_of_rational() {
        let e = ln_enc(&rat_i64(8, 1), 40).unwrap();
        let three_ln2 = ln2_enc(40).scale(&rat_i64(3, 1));
        // intervals must overlap
        assert!(e.lo() <= three_ln2.hi() && three_ln2.lo() <= e.hi());
    }
}
