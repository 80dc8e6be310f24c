//! Concrete approximation systems on `[0,1]^d`: the reduced rationals
//! weighted by `1/q^2` and the base-`b` grids weighted by `b^-n`, with
//! exact enumeration of scale layers inside a window and pairwise
//! separation certificates.

use crate::error::{Error, Result};
use crate::funcs::ApproxFunction;
use crate::geometry::{Ball, Point};
use crate::rat::{big, rat_i64, rat_int, sqrt_floor_rat, Rat};
use crate::scale::ScaleSequence;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SystemKind {
    /// Reduced fractions `p/q` in `[0,1]^d`, weight `1/q^2`.
    Rationals { d: u32 },
    /// Points `p/b^n`, weight `b^-n` of the canonical (smallest-power)
    /// representation.
    BasePower { base: u32 },
}

#[derive(Clone, Debug)]
pub struct ApproxSystem {
    pub kind: SystemKind,
    pub separation_c: Rat,
}

impl ApproxSystem {
    pub fn rationals(d: u32, separation_c: Rat) -> Result<Self> {
        if d == 0 {
            return Err(Error::Domain("dimension must be >= 1".into()));
        }
        Ok(ApproxSystem {
            kind: SystemKind::Rationals { d },
            separation_c,
        })
    }

    /// Default separation constant for the rationals: the configured
    /// scale ratio `t` (consecutive-layer worst case).
    pub fn rationals_default(d: u32, t: &Rat) -> Result<Self> {
        Self::rationals(d, t.clone())
    }

    pub fn base_power(base: u32) -> Result<Self> {
        if base < 2 {
            return Err(Error::Domain("base must be >= 2".into()));
        }
        Ok(ApproxSystem {
            kind: SystemKind::BasePower { base },
            separation_c: rat_i64(1, 2),
        })
    }

    pub fn dimension(&self) -> u32 {
        match self.kind {
            SystemKind::Rationals { d } => d,
            SystemKind::BasePower { .. } => 1,
        }
    }

    /// The thickening rate the system is well distributed against:
    /// `r^((1+d)/(2d))` for the rationals, the identity for base powers.
    pub fn default_rho(&self) -> ApproxFunction {
        match self.kind {
            SystemKind::Rationals { d } => ApproxFunction::Power {
                coeff: Rat::one(),
                exponent: rat_i64(1 + d as i64, 2 * d as i64),
            },
            SystemKind::BasePower { .. } => ApproxFunction::identity(),
        }
    }

    /// Natural scale sequence: `{t^n}` for the rationals (caller picks
    /// `t`), `{b^-n}` for base powers.
    pub fn default_scale(&self, t_for_rationals: Option<Rat>) -> Result<ScaleSequence> {
        match self.kind {
            SystemKind::Rationals { .. } => {
                let t = t_for_rationals
                    .ok_or_else(|| Error::Domain("rationals system needs a scale ratio".into()))?;
                ScaleSequence::new(t, 0)
            }
            SystemKind::BasePower { base } => ScaleSequence::new(rat_i64(1, base as i64), 0),
        }
    }

    /// Weight of a point: `1/q^2` for its reduced denominator, or
    /// `b^-j` for the smallest base power `b^j` (j >= 1) with
    /// `x b^j` integral.
    pub fn weight(&self, point: &Point) -> Result<Rat> {
        match self.kind {
            SystemKind::Rationals { d } => {
                if point.dim() != d as usize {
                    return Err(Error::Domain("point dimension mismatch".into()));
                }
                let mut q = BigInt::one();
                for c in &point.0 {
                    q = q.lcm(c.denom());
                }
                Ok(Rat::new(BigInt::one(), &q * &q))
            }
            SystemKind::BasePower { base } => {
                let x = &point.0[0];
                let b = big(base as i64);
                let mut j = 1u32;
                let mut scale = b.clone();
                loop {
                    if (x * Rat::from(scale.clone())).is_integer() {
                        return Ok(Rat::new(BigInt::one(), scale));
                    }
                    j += 1;
                    scale *= &b;
                    if j > 4096 {
                        return Err(Error::Domain(format!(
                            "{x} is not a base-{base} grid point"
                        )));
                    }
                }
            }
        }
    }
}

/// Enumeration window.
#[derive(Clone, Debug)]
pub enum Window {
    Cube,
    Ball(Ball),
}

impl Window {
    pub fn contains(&self, p: &Point) -> bool {
        match self {
            Window::Cube => p.in_unit_cube(),
            Window::Ball(b) => b.contains_point(p) && p.in_unit_cube(),
        }
    }

    /// Per-coordinate closed candidate range, intersected with [0,1].
    fn coord_range(&self, i: usize) -> (Rat, Rat) {
        match self {
            Window::Cube => (Rat::zero(), rat_int(1)),
            Window::Ball(b) => {
                let lo = (&b.center.0[i] - &b.radius).max(Rat::zero());
                let hi = (&b.center.0[i] + &b.radius).min(rat_int(1));
                (lo, hi)
            }
        }
    }

    pub fn expand(&self, margin: &Rat) -> Window {
        match self {
            Window::Cube => Window::Cube,
            Window::Ball(b) => Window::Ball(Ball::new(b.center.clone(), &b.radius + margin)),
        }
    }
}

/// The members of one scale layer inside a window, deduplicated as
/// points: every member satisfies `u_n <= R < u_{n-1}` for its canonical
/// weight.
#[derive(Clone, Debug)]
pub struct LayerEnumeration {
    pub n: i64,
    pub members: Vec<(Point, Rat)>,
}

impl LayerEnumeration {
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Integer range (q_lo, q_hi] with `u_n <= 1/q^2 < u_{n-1}`.
pub fn rationals_q_range(seq: &ScaleSequence, n: i64) -> Result<(BigInt, BigInt)> {
    let u_n = seq.eval(n)?;
    let u_prev = seq.eval(n - 1)?;
    let q_hi = sqrt_floor_rat(&u_n.recip());
    // q_lo^2 <= 1/u_{n-1}; a q achieving equality has weight exactly
    // u_{n-1} and belongs to layer n-1, so the range is open below
    let q_lo = sqrt_floor_rat(&u_prev.recip());
    Ok((q_lo, q_hi))
}

/// Base-power layer range: exponents `j` with `u_n <= b^-j < u_{n-1}`.
pub fn base_power_j_range(base: u32, seq: &ScaleSequence, n: i64) -> Result<(u32, u32)> {
    let u_n = seq.eval(n)?;
    let u_prev = seq.eval(n - 1)?;
    let b = rat_int(base as i64);
    let mut j = 1u32;
    let mut val = Rat::one() / &b; // b^-1
    while val >= u_prev {
        j += 1;
        val /= &b;
    }
    let j_lo = j;
    let mut j_hi = j_lo;
    loop {
        let next = {
            let mut v = Rat::one();
            for _ in 0..(j_hi + 1) {
                v /= &b;
            }
            v
        };
        if next >= u_n {
            j_hi += 1;
        } else {
            break;
        }
        if j_hi > 1 << 20 {
            return Err(Error::Domain("layer exponent range too deep".into()));
        }
    }
    if {
        let mut v = Rat::one();
        for _ in 0..j_lo {
            v /= &b;
        }
        v < u_n
    } {
        // empty layer: j_lo already below u_n
        return Ok((j_lo, j_lo.saturating_sub(1)));
    }
    Ok((j_lo, j_hi))
}

/// Exactly the layer `J_u(n)` intersected with the window.
///
/// Points are deduplicated: a point carries the weight of its reduced
/// form only, and appears in the single layer that weight selects.
pub fn enumerate_layer(
    sys: &ApproxSystem,
    seq: &ScaleSequence,
    n: i64,
    window: &Window,
) -> Result<LayerEnumeration> {
    if n < 1 {
        return Err(Error::Domain("layer index must be >= 1".into()));
    }
    let mut members = Vec::new();
    match sys.kind {
        SystemKind::Rationals { d } => {
            let (q_lo, q_hi) = rationals_q_range(seq, n)?;
            let mut q = &q_lo + 1;
            while q <= q_hi {
                enumerate_reduced_fractions(&q, d as usize, window, &mut |pt| {
                    let weight = Rat::new(BigInt::one(), &q * &q);
                    members.push((pt, weight));
                });
                q += 1;
            }
        }
        SystemKind::BasePower { base } => {
            let (j_lo, j_hi) = base_power_j_range(base, seq, n)?;
            for j in j_lo..=j_hi {
                let denom = big(base as i64).pow(j);
                let weight = Rat::new(BigInt::one(), denom.clone());
                let (lo, hi) = window.coord_range(0);
                let p_start = (&lo * Rat::from(denom.clone())).ceil().to_integer();
                let p_end = (&hi * Rat::from(denom.clone())).floor().to_integer();
                let mut p = p_start;
                while p <= p_end {
                    // canonical representation: j = 1 holds every integer
                    // multiple of 1/b not representable more coarsely,
                    // plus the endpoints 0 and 1 (canonical q = b)
                    let canonical = if j == 1 {
                        true
                    } else {
                        !(&p % big(base as i64)).is_zero()
                    };
                    if canonical {
                        let pt = Point::one_d(Rat::new(p.clone(), denom.clone()));
                        if window.contains(&pt) {
                            members.push((pt, weight.clone()));
                        }
                    }
                    p += 1;
                }
            }
        }
    }
    // exact layer-membership audit
    let u_n = seq.eval(n)?;
    let u_prev = seq.eval(n - 1)?;
    for (pt, w) in &members {
        debug_assert_eq!(*w, sys.weight(pt).unwrap());
        if !(w >= &u_n && w < &u_prev) {
            return Err(Error::Domain(format!(
                "layer audit failed: weight {w} of {pt} outside [{u_n}, {u_prev})"
            )));
        }
    }
    Ok(LayerEnumeration { n, members })
}

/// Visit every reduced fraction vector `p/q` (all coordinates over the
/// same denominator, joint gcd 1) inside the window.
fn enumerate_reduced_fractions(
    q: &BigInt,
    d: usize,
    window: &Window,
    visit: &mut impl FnMut(Point),
) {
    let qr = Rat::from(q.clone());
    let mut ranges = Vec::with_capacity(d);
    for i in 0..d {
        let (lo, hi) = match window {
            Window::Cube => (Rat::zero(), rat_int(1)),
            Window::Ball(b) => {
                let lo = (&b.center.0[i] - &b.radius).max(Rat::zero());
                let hi = (&b.center.0[i] + &b.radius).min(rat_int(1));
                (lo, hi)
            }
        };
        let p_lo = (&lo * &qr).ceil().to_integer();
        let p_hi = (&hi * &qr).floor().to_integer();
        ranges.push((p_lo, p_hi));
    }
    let mut ps: Vec<BigInt> = ranges.iter().map(|(lo, _)| lo.clone()).collect();
    'outer: loop {
        let g = ps
            .iter()
            .fold(q.clone(), |acc, p| acc.gcd(p));
        if g.is_one() {
            let pt = Point(
                ps.iter()
                    .map(|p| Rat::new(p.clone(), q.clone()))
                    .collect(),
            );
            if window.contains(&pt) {
                visit(pt);
            }
        }
        // odometer increment
        for i in (0..d).rev() {
            ps[i] += 1;
            if ps[i] <= ranges[i].1 {
                continue 'outer;
            }
            ps[i] = ranges[i].0.clone();
        }
        break;
    }
}

/// Result of a pairwise separation audit: the minimal ratio
/// `d(xi, zeta) / min(R_xi, R_zeta)` over all pairs, or `None` for fewer
/// than two points (vacuous pass, infinite ratio).
#[derive(Clone, Debug)]
pub struct SeparationCertificate {
    pub c_required: Rat,
    pub min_ratio: Option<Rat>,
    pub witness: Option<(Point, Point)>,
    pub pass: bool,
    pub pairs_checked: u64,
}

/// Check `d(xi, zeta) >= c min(R_xi, R_zeta)` over all pairs in the given
/// layers (exact rational comparisons).
pub fn verify_separation(
    sys: &ApproxSystem,
    layers: &[&LayerEnumeration],
) -> SeparationCertificate {
    let mut all: Vec<&(Point, Rat)> = Vec::new();
    for l in layers {
        all.extend(l.members.iter());
    }
    let mut min_ratio: Option<Rat> = None;
    let mut witness = None;
    let mut pairs = 0u64;
    for i in 0..all.len() {
        for j in (i + 1)..all.len() {
            pairs += 1;
            let (p1, r1) = all[i];
            let (p2, r2) = all[j];
            let dist = p1.dist(p2);
            let min_w = r1.min(r2).clone();
            let ratio = dist / min_w;
            if min_ratio.as_ref().map_or(true, |m| ratio < *m) {
                min_ratio = Some(ratio);
                witness = Some((p1.clone(), p2.clone()));
            }
        }
    }
    let pass = match &min_ratio {
        None => true,
        Some(r) => *r >= sys.separation_c,
    };
    SeparationCertificate {
        c_required: sys.separation_c.clone(),
        min_ratio,
        witness,
        pass,
        pairs_checked: pairs,
    }
}
