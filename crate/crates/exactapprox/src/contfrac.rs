//! Continued-fraction engine and membership classification against a
//! decay rate at finite truncation.
//!
//! A classification verdict is always a statement about the window
//! `q <= q_max` with an explicit cutoff, never a claim about the limit.

use crate::enclosure::Enc;
use crate::error::{Error, Result};
use crate::funcs::ApproxFunction;
use crate::rat::{big, format_rat, parse_rat, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::cmp::Ordering;

/// Finite continued fraction `[a0; a1, ..., aN]`.
///
/// Canonical form: all partial quotients >= 1 and, for a terminating
/// rational expansion with N >= 1, `aN >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuedFraction {
    pub a0: BigInt,
    pub quotients: Vec<BigInt>,
    /// Expansion terminated (input was rational with this exact expansion).
    pub complete: bool,
    /// Fewer quotients than requested because the input precision could
    /// not certify the next one.
    pub truncated_by_precision: bool,
}

impl ContinuedFraction {
    /// Expansion of an exact rational by the Euclidean algorithm.
    pub fn expand_rational(x: &Rat, depth: usize) -> Result<Self> {
        if depth < 1 {
            return Err(Error::Domain("expansion depth must be >= 1".into()));
        }
        let a0 = x.floor().to_integer();
        let mut frac = x - Rat::from(a0.clone());
        let mut quotients = Vec::new();
        let mut complete = frac.is_zero();
        while !frac.is_zero() && quotients.len() < depth {
            let inv = frac.recip();
            let a = inv.floor().to_integer();
            quotients.push(a.clone());
            frac = inv - Rat::from(a);
            if frac.is_zero() {
                complete = true;
            }
        }
        Ok(ContinuedFraction {
            a0,
            quotients,
            complete,
            truncated_by_precision: false,
        })
    }

    /// Certified expansion of a value known only through an enclosure.
    /// Quotients are emitted only while both endpoints agree on the next
    /// floor; stopping early sets `truncated_by_precision`.
    pub fn expand_interval(x: &Enc, depth: usize) -> Result<Self> {
        if depth < 1 {
            return Err(Error::Domain("expansion depth must be >= 1".into()));
        }
        let mut lo = x.lo().clone();
        let mut hi = x.hi().clone();
        let floor_pair = |lo: &Rat, hi: &Rat| -> Option<BigInt> {
            let fl = lo.floor().to_integer();
            let fh = hi.floor().to_integer();
            if fl == fh {
                Some(fl)
            } else {
                None
            }
        };
        let a0 = match floor_pair(&lo, &hi) {
            Some(a) => a,
            None => {
                return Err(Error::Domain(
                    "interval too wide to certify the integer part".into(),
                ))
            }
        };
        lo -= Rat::from(a0.clone());
        hi -= Rat::from(a0.clone());
        let mut quotients = Vec::new();
        let mut truncated = false;
        while quotients.len() < depth {
            if lo.is_zero() || hi.is_zero() || lo.is_negative() {
                // cannot certify that the remainder is nonzero
                truncated = true;
                break;
            }
            // invert: remainder in (lo, hi) -> next value in (1/hi, 1/lo)
            let new_lo = hi.recip();
            let new_hi = lo.recip();
            lo = new_lo;
            hi = new_hi;
            match floor_pair(&lo, &hi) {
                Some(a) => {
                    quotients.push(a.clone());
                    lo -= Rat::from(a.clone());
                    hi -= Rat::from(a);
                }
                None => {
                    truncated = true;
                    break;
                }
            }
        }
        Ok(ContinuedFraction {
            a0,
            quotients,
            complete: false,
            truncated_by_precision: truncated,
        })
    }

    /// Expansion of a decimal literal with guard digits; the literal is
    /// read as the interval `[v - ulp, v + ulp]`.
    pub fn expand_decimal(literal: &str, depth: usize) -> Result<Self> {
        let (enc, _) = decimal_to_enclosure(literal)?;
        Self::expand_interval(&enc, depth)
    }

    /// Convergents `p_k / q_k` from the standard recurrence, including
    /// `p_0/q_0 = a0/1`.
    pub fn convergents(&self) -> Vec<(BigInt, BigInt)> {
        let mut out = Vec::with_capacity(self.quotients.len() + 1);
        let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
        let (mut p, mut q) = (self.a0.clone(), BigInt::one());
        out.push((p.clone(), q.clone()));
        for a in &self.quotients {
            let p_next = a * &p + &p_prev;
            let q_next = a * &q + &q_prev;
            p_prev = p;
            q_prev = q;
            p = p_next;
            q = q_next;
            out.push((p.clone(), q.clone()));
        }
        out
    }

    /// `p_n q_{n-1} - p_{n-1} q_n = (-1)^(n-1)` for every consecutive pair.
    pub fn determinant_identity_holds(&self) -> bool {
        let conv = self.convergents();
        let mut sign = BigInt::from(-1);
        for w in conv.windows(2) {
            let det = &w[1].0 * &w[0].1 - &w[0].0 * &w[1].1;
            if det != sign {
                return false;
            }
            sign = -sign;
        }
        true
    }
}

/// Parse a decimal literal into an enclosure `[v - ulp, v + ulp]`,
/// returning the ulp as well.
pub fn decimal_to_enclosure(literal: &str) -> Result<(Enc, Rat)> {
    let v = parse_rat(literal)?;
    let digits = literal
        .trim()
        .split_once('.')
        .map(|(_, f)| f.len())
        .unwrap_or(0);
    let ulp = Rat::new(BigInt::one(), BigInt::from(10).pow(digits as u32));
    Ok((Enc::new(&v - &ulp, &v + &ulp), ulp))
}

/// Input to `classify`.
#[derive(Clone, Debug)]
pub enum ClassifyInput {
    Rational(Rat),
    /// Decimal literal with guard digits.
    Decimal(String),
}

/// One recorded approximation event `|x - p/q| < psi(q)`.
#[derive(Clone, Debug, Serialize)]
pub struct Hit {
    pub p: String,
    pub q: u64,
    /// `|x - p/q|`, exact for rational inputs, an enclosure otherwise.
    pub gap: String,
    /// `psi(q)` as evaluated.
    pub threshold: String,
    #[serde(skip)]
    pub gap_enc: Enc,
    #[serde(skip)]
    pub threshold_enc: Enc,
}

#[derive(Clone, Debug, Serialize)]
pub struct EpsilonRow {
    pub epsilon: String,
    pub total_hits: usize,
    pub hits_beyond_cutoff: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ConsistentWithExact,
    Inconsistent,
    Undecided,
}

/// Truncated membership evidence for the rate `psi` and the thinned rates
/// `(1 - eps) psi`.
#[derive(Clone, Debug, Serialize)]
pub struct MembershipVerdict {
    pub q_max: u64,
    /// Hits are judged "still occurring" if any lands in `(q_max/2, q_max]`.
    pub top_range_hits: usize,
    /// Reporting cutoff `floor(sqrt(q_max))` for the thinned rates.
    pub cutoff_q: u64,
    pub hits: Vec<Hit>,
    pub epsilon_report: Vec<EpsilonRow>,
    pub verdict: Verdict,
}

/// Enumerate every pair `(p, q)` with `q <= q_max` and
/// `0 < |x - p/q| < psi(q)`, then judge the evidence:
/// `consistent-with-exact` iff hits against `psi` keep occurring in the
/// top dyadic range of `q` while every `(1 - eps) psi` has no hits with
/// `q >` the cutoff `sqrt(q_max)`.
///
/// Pairs are taken as written (not reduced); the exact point `p/q = x`
/// never counts as a hit.
pub fn classify(
    x: &ClassifyInput,
    psi: &ApproxFunction,
    q_max: u64,
    epsilons: &[Rat],
    prec: u32,
) -> Result<MembershipVerdict> {
    if q_max < 1 {
        return Err(Error::Domain("q_max must be >= 1".into()));
    }
    for e in epsilons {
        if !e.is_positive() || *e >= Rat::one() {
            return Err(Error::Domain("epsilons must lie in (0,1)".into()));
        }
    }
    enum Xval {
        Exact(Rat),
        Interval(Enc),
    }
    let xv = match x {
        ClassifyInput::Rational(r) => {
            if r.is_negative() || *r > Rat::one() {
                return Err(Error::Domain("classification input must lie in [0,1]".into()));
            }
            Xval::Exact(r.clone())
        }
        ClassifyInput::Decimal(s) => {
            let (enc, _) = decimal_to_enclosure(s)?;
            if enc.lo().is_negative() || *enc.hi() > Rat::one() {
                return Err(Error::Domain("classification input must lie in [0,1]".into()));
            }
            Xval::Interval(enc)
        }
    };

    let mut hits: Vec<Hit> = Vec::new();
    let mut undecided = false;

    for q in 1..=q_max {
        let psi_q = psi.eval_at_int(q as i64, prec)?;
        if !psi_q.lo().is_positive() && !psi_q.is_exact() {
            undecided = true;
            continue;
        }
        // candidate numerators: p/q within psi(q) of x
        let (x_lo, x_hi) = match &xv {
            Xval::Exact(r) => (r.clone(), r.clone()),
            Xval::Interval(e) => (e.lo().clone(), e.hi().clone()),
        };
        let qr = Rat::from(big(q as i64));
        let p_lo = ((&x_lo - psi_q.hi()) * &qr).floor().to_integer();
        let p_hi = ((&x_hi + psi_q.hi()) * &qr).ceil().to_integer();
        let mut p = p_lo;
        while p <= p_hi {
            let frac = Rat::new(p.clone(), big(q as i64));
            let (gap_enc, is_hit) = match &xv {
                Xval::Exact(r) => {
                    let gap = (r - &frac).abs();
                    if gap.is_zero() {
                        // the point itself, never a hit
                        p += 1;
                        continue;
                    }
                    let hit = match Enc::exact(gap.clone()).cmp_certified(&psi_q) {
                        Some(Ordering::Less) => true,
                        Some(_) => false,
                        None => {
                            undecided = true;
                            false
                        }
                    };
                    (Enc::exact(gap), hit)
                }
                Xval::Interval(e) => {
                    let diff = e.sub(&Enc::exact(frac.clone()));
                    let gap = if diff.lo().is_negative() && diff.hi().is_negative() {
                        Enc::new(-diff.hi().clone(), -diff.lo().clone())
                    } else if !diff.lo().is_negative() {
                        diff
                    } else {
                        // straddles zero: |gap| in [0, max endpoints]
                        let m = diff.hi().clone().max(-diff.lo().clone());
                        Enc::new(Rat::zero(), m)
                    };
                    let hit = match gap.cmp_certified(&psi_q) {
                        Some(Ordering::Less) => {
                            if gap.lo().is_zero() && !gap.is_exact() {
                                undecided = true;
                                false
                            } else {
                                true
                            }
                        }
                        Some(_) => false,
                        None => {
                            undecided = true;
                            false
                        }
                    };
                    (gap, hit)
                }
            };
            if is_hit {
                hits.push(Hit {
                    p: p.to_string(),
                    q,
                    gap: gap_enc.to_string(),
                    threshold: psi_q.to_string(),
                    gap_enc,
                    threshold_enc: psi_q.clone(),
                });
            }
            p += 1;
        }
    }

    let cutoff_q = (q_max as f64).sqrt().floor() as u64;
    let top_range_hits = hits.iter().filter(|h| h.q > q_max / 2).count();

    let mut epsilon_report = Vec::new();
    let mut any_eps_survives = false;
    for eps in epsilons {
        let factor = Rat::one() - eps;
        let mut total = 0usize;
        let mut beyond = 0usize;
        for h in &hits {
            let thinned = h.threshold_enc.scale(&factor);
            match h.gap_enc.cmp_certified(&thinned) {
                Some(Ordering::Less) => {
                    total += 1;
                    if h.q > cutoff_q {
                        beyond += 1;
                    }
                }
                Some(_) => {}
                None => {
                    undecided = true;
                }
            }
        }
        if beyond > 0 {
            any_eps_survives = true;
        }
        epsilon_report.push(EpsilonRow {
            epsilon: format_rat(eps),
            total_hits: total,
            hits_beyond_cutoff: beyond,
        });
    }

    let verdict = if undecided {
        Verdict::Undecided
    } else if top_range_hits > 0 && !any_eps_survives {
        Verdict::ConsistentWithExact
    } else {
        Verdict::Inconsistent
    };

    Ok(MembershipVerdict {
        q_max,
        top_range_hits,
        cutoff_q,
        hits,
        epsilon_report,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat_i64, rat_int};

    #[test]
    fn euclid_expansion_examples() {
        let cf = ContinuedFraction::expand_rational(&rat_i64(415, 93), 10).unwrap();
        assert_eq!(cf.a0, big(4));
        assert_eq!(cf.quotients, vec![big(2), big(6), big(7)]);
        assert!(cf.complete);

        let cf = ContinuedFraction::expand_rational(&rat_i64(1, 2), 5).unwrap();
        assert_eq!(cf.a0, big(0));
        assert_eq!(cf.quotients, vec![big(2)]);
        assert!(cf.complete);
    }

    #[test]
    fn convergent_recurrence_examples() {
        let cf = ContinuedFraction::expand_rational(&rat_i64(415, 93), 10).unwrap();
        let conv = cf.convergents();
        assert_eq!(
            conv,
            vec![
                (big(4), big(1)),
                (big(9), big(2)),
                (big(58), big(13)),
                (big(415), big(93)),
            ]
        );
        assert!(cf.determinant_identity_holds());
    }

    #[test]
    fn fibonacci_convergents() {
        let cf = ContinuedFraction {
            a0: big(0),
            quotients: vec![big(1); 5],
            complete: false,
            truncated_by_precision: false,
        };
        let conv = cf.convergents();
        assert_eq!(
            conv,
            vec![
                (big(0), big(1)),
                (big(1), big(1)),
                (big(1), big(2)),
                (big(2), big(3)),
                (big(3), big(5)),
                (big(5), big(8)),
            ]
        );
    }

    #[test]
    fn golden_decimal_expansion_gives_ones() {
        let lit = "0.618033988749894848204586834365638117720309179805762862135449";
        let cf = ContinuedFraction::expand_decimal(lit, 30).unwrap();
        assert_eq!(cf.a0, big(0));
        assert_eq!(cf.quotients.len(), 30);
        assert!(!cf.truncated_by_precision);
        assert!(cf.quotients.iter().all(|a| *a == big(1)));
    }

    #[test]
    fn low_precision_flags_truncation_not_wrong_quotients() {
        // sqrt(2) to a few digits cannot certify 30 quotients
        let cf = ContinuedFraction::expand_decimal("1.41421", 30).unwrap();
        assert!(cf.truncated_by_precision);
        assert!(cf.quotients.len() < 30);
        // whatever was emitted must match the true expansion [1; 2, 2, ...]
        assert_eq!(cf.a0, big(1));
        assert!(cf.quotients.iter().all(|a| *a == big(2)));
    }

    #[test]
    fn rational_point_is_not_its_own_hit() {
        // x = 1/2 with psi(q) = 1/(4 q^2): gaps of other fractions are
        // >= 1/(2q), so only tiny q can hit; verdict inconsistent
        let psi = ApproxFunction::power(rat_i64(1, 4), rat_int(-2)).unwrap();
        let v = classify(
            &ClassifyInput::Rational(rat_i64(1, 2)),
            &psi,
            100,
            &[rat_i64(1, 2)],
            64,
        )
        .unwrap();
        assert_eq!(v.verdict, Verdict::Inconsistent);
        assert!(v.hits.iter().all(|h| h.q < 10));
    }

    #[test]
    fn golden_against_cubic_decay_has_no_deep_hits() {
        let lit = "0.618033988749894848204586834365638117720309179805762862135449";
        let psi = ApproxFunction::power(rat_int(1), rat_int(-3)).unwrap();
        let v = classify(
            &ClassifyInput::Decimal(lit.into()),
            &psi,
            200,
            &[rat_i64(1, 2)],
            96,
        )
        .unwrap();
        assert_eq!(v.verdict, Verdict::Inconsistent);
        assert!(v.hits.iter().all(|h| h.q <= 2));
    }

    #[test]
    fn golden_exactness_evidence_at_quadratic_decay() {
        // 1 - eps = 4/9 < 1/sqrt(5), so the thinned rate has no deep hits
        // while psi itself keeps hitting at every convergent denominator.
        let lit = "0.618033988749894848204586834365638117720309179805762862135449";
        let psi = ApproxFunction::power(rat_int(1), rat_int(-2)).unwrap();
        let v = classify(
            &ClassifyInput::Decimal(lit.into()),
            &psi,
            200,
            &[rat_i64(5, 9)],
            96,
        )
        .unwrap();
        assert_eq!(v.verdict, Verdict::ConsistentWithExact);
        let qs: Vec<u64> = v.hits.iter().map(|h| h.q).collect();
        for fib in [1u64, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144] {
            assert!(qs.contains(&fib), "missing convergent denominator {fib}");
        }
    }

    #[test]
    fn enlarging_epsilon_shrinks_hits() {
        let lit = "0.618033988749894848204586834365638117720309179805762862135449";
        let psi = ApproxFunction::power(rat_int(1), rat_int(-2)).unwrap();
        let v = classify(
            &ClassifyInput::Decimal(lit.into()),
            &psi,
            150,
            &[rat_i64(1, 10), rat_i64(1, 2)],
            96,
        )
        .unwrap();
        assert!(v.epsilon_report[0].total_hits >= v.epsilon_report[1].total_hits);
    }
}
