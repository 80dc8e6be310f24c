//! Exact arithmetic for real quadratic irrationals `(p + sqrt(d)) / q`.
//!
//! Comparisons against rationals are decided by sign analysis and
//! squaring, so membership inequalities involving a surd are exact. The
//! continued-fraction expansion uses the standard integer recurrence and
//! is therefore an independent route from the interval-based expansion.

use crate::enclosure::Enc;
use crate::error::{Error, Result};
use crate::rat::{big, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// `(p + sqrt(d)) / q` with integer `p`, `q != 0` and non-square `d > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSurd {
    p: BigInt,
    q: BigInt,
    d: BigInt,
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + sqrt({})) / {}", self.p, self.d, self.q)
    }
}

impl QuadraticSurd {
    pub fn new(p: BigInt, q: BigInt, d: BigInt) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::Domain("surd denominator is zero".into()));
        }
        if !d.is_positive() {
            return Err(Error::Domain("surd discriminant must be positive".into()));
        }
        let root = d.sqrt();
        if &root * &root == d {
            return Err(Error::Domain(
                "discriminant is a perfect square; use a rational".into(),
            ));
        }
        Ok(QuadraticSurd { p, q, d })
    }

    /// The golden-ratio fractional part `(sqrt(5) - 1) / 2`.
    pub fn golden_fraction() -> Self {
        QuadraticSurd {
            p: big(-1),
            q: big(2),
            d: big(5),
        }
    }

    pub fn sqrt_of(n: i64) -> Result<Self> {
        QuadraticSurd::new(big(0), big(1), big(n))
    }

    /// Compare with a rational, exactly.
    pub fn cmp_rat(&self, r: &Rat) -> Ordering {
        // (p + sqrt(d))/q vs a/b: clear the (positive) denominators and
        // reduce to comparing sqrt(d) with a rational t = (a q - b p)/b.
        let a = r.numer();
        let b = r.denom(); // > 0
        let t = a * &self.q - b * &self.p;
        let cmp_sqrt_vs_t = if t.is_negative() {
            Ordering::Greater
        } else {
            (&self.d * b * b).cmp(&(&t * &t))
        };
        if self.q.is_positive() {
            cmp_sqrt_vs_t
        } else {
            cmp_sqrt_vs_t.reverse()
        }
    }

    pub fn is_positive(&self) -> bool {
        self.cmp_rat(&Rat::zero()) == Ordering::Greater
    }

    /// Ordering of `|self - r|` versus a positive rational `w`, exactly.
    pub fn abs_diff_cmp(&self, r: &Rat, w: &Rat) -> Ordering {
        let lo = r - w;
        let hi = r + w;
        let vs_lo = self.cmp_rat(&lo);
        let vs_hi = self.cmp_rat(&hi);
        if vs_lo == Ordering::Greater && vs_hi == Ordering::Less {
            Ordering::Less
        } else if vs_lo == Ordering::Equal || vs_hi == Ordering::Equal {
            Ordering::Equal
        } else {
            Ordering::Greater
        }
    }

    pub fn floor(&self) -> BigInt {
        // floor((p + sqrt(d)) / q); sqrt(d) is irrational so p + sqrt(d)
        // lies strictly between p + s and p + s + 1 with s = isqrt(d).
        let s = self.d.sqrt();
        if self.q.is_positive() {
            (&self.p + &s).div_floor(&self.q)
        } else {
            let num = &self.p + &s + big(1);
            let qq = -self.q.clone();
            -(num.div_ceil(&qq))
        }
    }

    /// Continued-fraction expansion to `depth` partial quotients
    /// `(a0; a1, a2, ...)` by the integer recurrence.
    pub fn continued_fraction(&self, depth: usize) -> (BigInt, Vec<BigInt>) {
        // Normalize so that q | d - p^2.
        let (mut p, mut q, d) = {
            let diff = &self.d - &self.p * &self.p;
            if (&diff % &self.q).is_zero() {
                (self.p.clone(), self.q.clone(), self.d.clone())
            } else {
                let qa = self.q.abs();
                (&self.p * &qa, &self.q * &qa, &self.d * &qa * &qa)
            }
        };
        let a0 = QuadraticSurd {
            p: p.clone(),
            q: q.clone(),
            d: d.clone(),
        }
        .floor();
        let mut quotients = Vec::with_capacity(depth);
        let mut a = a0.clone();
        for _ in 0..depth {
            // x -> 1 / (x - a):  (p, q) -> (a q - p, (d - (a q - p)^2) / q)
            let p_next = &a * &q - &p;
            let q_next = (&d - &p_next * &p_next) / &q;
            p = p_next;
            q = q_next;
            debug_assert!(!q.is_zero());
            a = QuadraticSurd {
                p: p.clone(),
                q: q.clone(),
                d: d.clone(),
            }
            .floor();
            quotients.push(a.clone());
        }
        (a0, quotients)
    }

    /// Rational enclosure of width about `2^-prec`.
    pub fn enclosure(&self, prec: u32) -> Enc {
        let scaled = &self.d << (2 * prec as u64);
        let s = scaled.sqrt();
        let denom = BigInt::from(1) << prec;
        let lo_root = Rat::new(s.clone(), denom.clone());
        let hi_root = Rat::new(s + big(2), denom);
        let p = Rat::from(self.p.clone());
        let q = Rat::from(self.q.clone());
        let (lo, hi) = if self.q.is_positive() {
            ((&p + &lo_root) / &q, (&p + &hi_root) / &q)
        } else {
            ((&p + &hi_root) / &q, (&p + &lo_root) / &q)
        };
        Enc::new(lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i64;

    #[test]
    fn golden_fraction_partial_quotients_are_ones() {
        let g = QuadraticSurd::golden_fraction();
        let (a0, qs) = g.continued_fraction(30);
        assert_eq!(a0, big(0));
        assert_eq!(qs.len(), 30);
        assert!(qs.iter().all(|a| *a == big(1)));
    }

    #[test]
    fn sqrt2_expansion() {
        let s = QuadraticSurd::sqrt_of(2).unwrap();
        let (a0, qs) = s.continued_fraction(10);
        assert_eq!(a0, big(1));
        assert!(qs.iter().all(|a| *a == big(2)));
    }

    #[test]
    fn comparisons_are_exact() {
        let g = QuadraticSurd::golden_fraction(); // 0.6180339887...
        assert_eq!(g.cmp_rat(&rat_i64(618, 1000)), Ordering::Greater);
        assert_eq!(g.cmp_rat(&rat_i64(619, 1000)), Ordering::Less);
        assert_eq!(g.abs_diff_cmp(&rat_i64(1, 2), &rat_i64(1, 8)), Ordering::Less);
        assert_eq!(
            g.abs_diff_cmp(&rat_i64(1, 2), &rat_i64(1, 10)),
            Ordering::Greater
        );
    }

    #[test]
    fn enclosure_brackets_value() {
        let g = QuadraticSurd::golden_fraction();
        let e = g.enclosure(64);
        assert_eq!(g.cmp_rat(e.lo()), Ordering::Greater);
        assert_eq!(g.cmp_rat(e.hi()), Ordering::Less);
        assert!(e.width() < rat_i64(1, 1 << 60));
    }

    #[test]
    fn floor_handles_negative_p() {
        let g = QuadraticSurd::golden_fraction();
        assert_eq!(g.floor(), big(0));
        let x = QuadraticSurd::new(big(-10), big(3), big(2)).unwrap();
        // (-10 + 1.414...) / 3 = -2.86... so the floor is -3
        assert_eq!(x.floor(), big(-3));
    }
}
