//! Geometric scale sequences, regularity witnesses and the ambient-space
//! parameter block.

use crate::enclosure::{pow_rat_enc, Enc};
use crate::error::{Error, Result};
use crate::geometry::Ball;
use crate::rat::{rat_i64, rat_int, rat_pow_signed, Rat};
use num_traits::{One, Signed};
use serde::Serialize;

/// `u_n = t^(n + offset)` for a ratio `t` in (0, 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaleSequence {
    t: Rat,
    offset: i64,
}

impl ScaleSequence {
    pub fn new(t: Rat, offset: i64) -> Result<Self> {
        if !t.is_positive() || t >= Rat::one() {
            return Err(Error::Domain(format!("scale ratio must be in (0,1), got {t}")));
        }
        if offset < 0 {
            return Err(Error::Domain("scale offset must be >= 0".into()));
        }
        Ok(ScaleSequence { t, offset })
    }

    pub fn ratio(&self) -> &Rat {
        &self.t
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// `u_n`, exact.
    pub fn eval(&self, n: i64) -> Result<Rat> {
        let e = n + self.offset;
        if e < 0 {
            return Err(Error::IndexBeforeStart {
                n,
                offset: self.offset,
            });
        }
        Ok(rat_pow_signed(&self.t, e))
    }

    /// Subsequence `v_k = u_(stride * k)`; same type, ratio `t^stride`.
    pub fn thin(&self, stride: u32) -> ScaleSequence {
        assert!(stride >= 1);
        ScaleSequence {
            t: rat_pow_signed(&self.t, stride as i64),
            offset: 0,
        }
    }
}

/// Witness constants for geometric-type decay of a function along a scale
/// sequence; `verify_regularity` checks them rather than assuming them.
#[derive(Clone, Debug, Serialize)]
pub struct RegularityWitness {
    pub lambda1: String,
    pub lambda2: String,
    pub n0: i64,
}

#[derive(Clone, Debug)]
pub struct RegularityCheck {
    pub lambda1: Rat,
    pub lambda2: Rat,
    pub n0: i64,
}

impl RegularityCheck {
    pub fn new(lambda1: Rat, lambda2: Rat, n0: i64) -> Result<Self> {
        if !lambda1.is_positive() || lambda1 > lambda2 || lambda2 >= Rat::one() {
            return Err(Error::Domain(
                "regularity constants must satisfy 0 < lambda1 <= lambda2 < 1".into(),
            ));
        }
        Ok(RegularityCheck {
            lambda1,
            lambda2,
            n0,
        })
    }

    /// Check `lambda1 h(u_n) <= h(u_{n+1}) <= lambda2 h(u_n)` and
    /// `h(x) <= x` over `n0 <= n <= n_hi`, where `h` is given by exact
    /// values at the sequence points.
    pub fn verify(
        &self,
        seq: &ScaleSequence,
        h: impl Fn(&Rat) -> Result<Rat>,
        n_hi: i64,
    ) -> Result<Vec<(i64, bool)>> {
        let mut rows = Vec::new();
        for n in self.n0..=n_hi {
            let un = seq.eval(n)?;
            let un1 = seq.eval(n + 1)?;
            let hn = h(&un)?;
            let hn1 = h(&un1)?;
            let ok = &self.lambda1 * &hn <= hn1 && hn1 <= &self.lambda2 * &hn && hn <= un;
            rows.push((n, ok));
        }
        Ok(rows)
    }
}

/// Ahlfors-type constants for Lebesgue measure on `[0,1]^d` under the sup
/// metric: `a r^delta <= mu(B(x,r)) <= b r^delta` for radii `<= r0`.
#[derive(Clone, Debug)]
pub struct RegularSpaceParams {
    pub delta: Rat,
    pub a_lower: Rat,
    pub b_upper: Rat,
    pub r0: Rat,
}

impl RegularSpaceParams {
    /// Defaults for Lebesgue measure: `a = 1`, `b = 2^d`, `delta = d`,
    /// `r0 = 1/4`.
    pub fn lebesgue(d: u32) -> Self {
        RegularSpaceParams {
            delta: rat_int(d as i64),
            a_lower: rat_int(1),
            b_upper: rat_int(1 << d),
            r0: rat_i64(1, 4),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AhlforsViolation {
    pub ball: String,
    pub measure: String,
    pub lower: String,
    pub upper: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AhlforsReport {
    pub checked: usize,
    pub violations: Vec<AhlforsViolation>,
}

impl AhlforsReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For each ball compute the exact clipped measure and compare against
/// `a r^delta <= mu <= b r^delta`. Report-only; violations are returned,
/// not raised.
pub fn check_ahlfors(params: &RegularSpaceParams, balls: &[Ball], prec: u32) -> Result<AhlforsReport> {
    let mut violations = Vec::new();
    for ball in balls {
        if ball.radius > params.r0 {
            return Err(Error::Domain(format!(
                "ball radius {} exceeds r0 {}",
                ball.radius, params.r0
            )));
        }
        let mu = Enc::exact(ball.measure_clipped());
        let r_pow = pow_rat_enc(&ball.radius, &params.delta, prec)?;
        let lower = r_pow.scale(&params.a_lower);
        let upper = r_pow.scale(&params.b_upper);
        let lo_ok = matches!(
            lower.cmp_certified(&mu),
            Some(std::cmp::Ordering::Less) | Some(std::cmp::Ordering::Equal)
        ) || lower.hi() <= mu.lo();
        let hi_ok = matches!(
            mu.cmp_certified(&upper),
            Some(std::cmp::Ordering::Less) | Some(std::cmp::Ordering::Equal)
        ) || mu.hi() <= upper.lo();
        if !(lo_ok && hi_ok) {
            violations.push(AhlforsViolation {
                ball: ball.to_string(),
                measure: mu.to_string(),
                lower: lower.to_string(),
                upper: upper.to_string(),
            });
        }
    }
    Ok(AhlforsReport {
        checked: balls.len(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use crate::rat::rat_i64;

    #[test]
    fn eval_scale_examples() {
        let s = ScaleSequence::new(rat_i64(1, 2), 0).unwrap();
        assert_eq!(s.eval(3).unwrap(), rat_i64(1, 8));
        let s = ScaleSequence::new(rat_i64(1, 4), 0).unwrap();
        assert_eq!(s.eval(0).unwrap(), rat_i64(1, 1));
        let s = ScaleSequence::new(rat_i64(2, 3), 0).unwrap();
        assert_eq!(s.eval(2).unwrap(), rat_i64(4, 9));
    }

    #[test]
    fn eval_before_start_errors() {
        let s = ScaleSequence::new(rat_i64(1, 2), 0).unwrap();
        assert!(matches!(
            s.eval(-1),
            Err(Error::IndexBeforeStart { .. })
        ));
    }

    #[test]
    fn ratio_is_constant() {
        let s = ScaleSequence::new(rat_i64(3, 7), 2).unwrap();
        for n in 0..10 {
            let r = s.eval(n).unwrap() / s.eval(n + 1).unwrap();
            assert_eq!(r, rat_i64(7, 3));
        }
    }

    #[test]
    fn ahlfors_examples() {
        let p1 = RegularSpaceParams {
            delta: rat_int(1),
            a_lower: rat_int(1),
            b_upper: rat_int(2),
            r0: rat_i64(1, 4),
        };
        // interior: mu = 1/4, bounds [1/8, 1/4]
        let interior = Ball::one_d(rat_i64(1, 2), rat_i64(1, 8));
        // corner: mu = 1/8 = lower bound exactly
        let corner = Ball::one_d(rat_i64(0, 1), rat_i64(1, 8));
        let report = check_ahlfors(&p1, &[interior, corner], 32).unwrap();
        assert!(report.pass());

        let p2 = RegularSpaceParams {
            delta: rat_int(2),
            a_lower: rat_int(1),
            b_upper: rat_int(4),
            r0: rat_i64(1, 4),
        };
        let b2 = Ball::new(Point(vec![rat_i64(1, 2), rat_i64(1, 2)]), rat_i64(1, 4));
        let report = check_ahlfors(&p2, &[b2], 32).unwrap();
        assert!(report.pass());
    }

    #[test]
    fn regularity_of_identity_on_geometric_sequence() {
        let seq = ScaleSequence::new(rat_i64(1, 64), 0).unwrap();
        let check = RegularityCheck::new(rat_i64(1, 64), rat_i64(1, 50), 0).unwrap();
        let rows = check.verify(&seq, |x| Ok(x.clone()), 8).unwrap();
        assert!(rows.iter().all(|(_, ok)| *ok));
    }
}
