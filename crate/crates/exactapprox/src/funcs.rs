//! Approximation-rate functions: powers with rational exponents,
//! power-log corrections, and monotone step tables.

use crate::enclosure::{ln_enc, pow_rat_enc, Enc};
use crate::error::{Error, Result};
use crate::rat::{format_rat, Rat};
use num_traits::{One, Signed, Zero};
use std::fmt;

/// A positive function on `(0, infinity)`, evaluable exactly at rational
/// points whenever the expression is rational and as a certified
/// enclosure otherwise.
///
/// Exponents are restricted to rationals; q-th roots go through exact
/// root brackets, never floating point.
#[derive(Clone, Debug, PartialEq)]
pub enum ApproxFunction {
    /// `C * x^gamma`
    Power { coeff: Rat, exponent: Rat },
    /// `C * x^gamma * ln(1/x)^k` for `x < 1` (k >= 1)
    PowerLog { coeff: Rat, exponent: Rat, log_power: u32 },
    /// Finite breakpoint list, left-continuous step interpolation:
    /// `f(x) = f(x_i)` for the largest breakpoint `x_i <= x`.
    Table { breakpoints: Vec<(Rat, Rat)> },
}

impl ApproxFunction {
    pub fn power(coeff: Rat, exponent: Rat) -> Result<Self> {
        if !coeff.is_positive() {
            return Err(Error::Domain("power coefficient must be positive".into()));
        }
        Ok(ApproxFunction::Power { coeff, exponent })
    }

    pub fn identity() -> Self {
        ApproxFunction::Power {
            coeff: Rat::one(),
            exponent: Rat::one(),
        }
    }

    pub fn table(mut breakpoints: Vec<(Rat, Rat)>) -> Result<Self> {
        if breakpoints.is_empty() {
            return Err(Error::Domain("table needs at least one breakpoint".into()));
        }
        breakpoints.sort_by(|a, b| a.0.cmp(&b.0));
        for w in breakpoints.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Domain("duplicate table breakpoint".into()));
            }
            if w[0].1 > w[1].1 {
                return Err(Error::Domain("table values must be non-decreasing".into()));
            }
        }
        if breakpoints.iter().any(|(_, v)| !v.is_positive()) {
            return Err(Error::Domain("table values must be positive".into()));
        }
        Ok(ApproxFunction::Table { breakpoints })
    }

    /// True when the function is non-decreasing by construction.
    pub fn non_decreasing(&self) -> bool {
        match self {
            ApproxFunction::Power { exponent, .. } => exponent.is_positive(),
            // increasing only away from very small x; callers sample-check
            ApproxFunction::PowerLog { exponent, .. } => exponent.is_positive(),
            ApproxFunction::Table { .. } => true,
        }
    }

    /// Exact value when the expression is rational at `x`.
    pub fn eval_exact(&self, x: &Rat) -> Option<Rat> {
        match self {
            ApproxFunction::Power { coeff, exponent } => {
                let e = pow_rat_enc(x, exponent, 8).ok()?;
                if e.is_exact() {
                    Some(e.lo() * coeff)
                } else {
                    None
                }
            }
            ApproxFunction::PowerLog { .. } => None,
            ApproxFunction::Table { breakpoints } => {
                let mut val = None;
                for (bx, bv) in breakpoints {
                    if bx <= x {
                        val = Some(bv.clone());
                    } else {
                        break;
                    }
                }
                val
            }
        }
    }

    /// Certified enclosure at rational `x > 0`.
    pub fn eval_enc(&self, x: &Rat, prec: u32) -> Result<Enc> {
        if !x.is_positive() {
            return Err(Error::Domain(format!(
                "approximation function evaluated at non-positive x = {x}"
            )));
        }
        match self {
            ApproxFunction::Power { coeff, exponent } => {
                Ok(pow_rat_enc(x, exponent, prec)?.scale(coeff))
            }
            ApproxFunction::PowerLog {
                coeff,
                exponent,
                log_power,
            } => {
                if *x >= Rat::one() {
                    return Err(Error::Domain("power-log kind needs x < 1".into()));
                }
                let base = pow_rat_enc(x, exponent, prec)?;
                let ln_inv = ln_enc(&x.recip(), prec)?;
                let log_part = ln_inv.pow_i64(*log_power as i64)?;
                Ok(base.mul(&log_part).scale(coeff))
            }
            ApproxFunction::Table { .. } => match self.eval_exact(x) {
                Some(v) => Ok(Enc::exact(v)),
                None => Err(Error::Domain(format!(
                    "table has no breakpoint at or below {x}",
                ))),
            },
        }
    }

    /// Evaluate at a positive integer argument (for rate functions on
    /// denominators).
    pub fn eval_at_int(&self, q: i64, prec: u32) -> Result<Enc> {
        self.eval_enc(&Rat::from(num_bigint::BigInt::from(q)), prec)
    }
}

impl fmt::Display for ApproxFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ApproxFunction::Power { coeff, exponent } => {
                write!(f, "{}*x^{}", format_rat(coeff), format_rat(exponent))
            }
            ApproxFunction::PowerLog {
                coeff,
                exponent,
                log_power,
            } => write!(
                f,
                "{}*x^{}*ln(1/x)^{}",
                format_rat(coeff),
                format_rat(exponent),
                log_power
            ),
            ApproxFunction::Table { breakpoints } => {
                write!(f, "table[{} points]", breakpoints.len())
            }
        }
    }
}

/// Rigorous enclosure of `g(x) = phi(x)^s / rho(x)^delta`.
///
/// Exact (degenerate interval) whenever both powers evaluate to
/// rationals. Errors if `rho(x)` is certified zero.
pub fn g_value(
    phi: &ApproxFunction,
    rho: &ApproxFunction,
    s: &Rat,
    delta: &Rat,
    x: &Rat,
    prec: u32,
) -> Result<Enc> {
    if !x.is_positive() {
        return Err(Error::Domain("g requires x > 0".into()));
    }
    if !s.is_positive() || !delta.is_positive() {
        return Err(Error::Domain("g requires s > 0 and delta > 0".into()));
    }
    let phi_x = phi.eval_enc(x, prec)?;
    let rho_x = rho.eval_enc(x, prec)?;
    if rho_x.hi().is_zero() {
        return Err(Error::RhoVanishes { x: x.to_string() });
    }
    let num = phi_x.pow_rat(s, prec)?;
    let den = rho_x.pow_rat(delta, prec)?;
    num.div(&den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat_i64, rat_int};

    #[test]
    fn g_cancellation_is_exact() {
        // phi(x) = x^2, rho(x) = x, s = 1, delta = 1 -> g(x) = x
        let phi = ApproxFunction::power(rat_int(1), rat_int(2)).unwrap();
        let rho = ApproxFunction::identity();
        let g = g_value(&phi, &rho, &rat_int(1), &rat_int(1), &rat_i64(1, 8), 32).unwrap();
        assert!(g.is_exact());
        assert_eq!(*g.lo(), rat_i64(1, 8));
    }

    #[test]
    fn g_rational_root_case() {
        // phi(x) = x^3, s = 1/2, rho = x, delta = 1:
        // g(1/4) = (1/4)^(3/2) / (1/4) = (1/4)^(1/2) = 1/2
        let phi = ApproxFunction::power(rat_int(1), rat_int(3)).unwrap();
        let rho = ApproxFunction::identity();
        let g = g_value(&phi, &rho, &rat_i64(1, 2), &rat_int(1), &rat_i64(1, 4), 32).unwrap();
        assert!(g.is_exact());
        assert_eq!(*g.lo(), rat_i64(1, 2));
    }

    #[test]
    fn g_symmetric_case_is_one() {
        let phi = ApproxFunction::power(rat_i64(3, 2), rat_i64(5, 3)).unwrap();
        let s = rat_i64(2, 3);
        for x in [rat_i64(1, 7), rat_i64(3, 5), rat_i64(9, 11)] {
            let g = g_value(&phi, &phi, &s, &s, &x, 64).unwrap();
            assert!(g.contains(&rat_int(1)));
            assert!(g.width() < rat_i64(1, 1 << 20));
        }
    }

    #[test]
    fn rho_zero_rejected() {
        let phi = ApproxFunction::identity();
        let rho = ApproxFunction::table(vec![(rat_i64(1, 2), rat_i64(1, 2))]).unwrap();
        // below the first breakpoint the table is undefined -> domain error
        assert!(g_value(&phi, &rho, &rat_int(1), &rat_int(1), &rat_i64(1, 4), 16).is_err());
    }

    #[test]
    fn power_monotone_on_samples() {
        let f = ApproxFunction::power(rat_i64(2, 3), rat_i64(7, 5)).unwrap();
        let xs: Vec<Rat> = (1..40).map(|k| rat_i64(k, 40)).collect();
        for w in xs.windows(2) {
            let a = f.eval_enc(&w[0], 48).unwrap();
            let b = f.eval_enc(&w[1], 48).unwrap();
            assert!(a.lo() <= b.hi());
        }
    }

    #[test]
    fn table_is_left_continuous_step() {
        let t = ApproxFunction::table(vec![
            (rat_i64(1, 4), rat_i64(1, 10)),
            (rat_i64(1, 2), rat_i64(3, 10)),
        ])
        .unwrap();
        assert_eq!(t.eval_exact(&rat_i64(1, 3)).unwrap(), rat_i64(1, 10));
        assert_eq!(t.eval_exact(&rat_i64(1, 2)).unwrap(), rat_i64(3, 10));
        assert_eq!(t.eval_exact(&rat_i64(3, 4)).unwrap(), rat_i64(3, 10));
        assert!(t.eval_exact(&rat_i64(1, 8)).is_none());
    }
}
