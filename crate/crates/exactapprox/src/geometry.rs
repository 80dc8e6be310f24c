//! Points, balls and annuli in `[0,1]^d` under the sup metric.
//!
//! Balls are open: `B(x, r) = { y : d(x, y) < r }`, always read as a subset
//! of the ambient cube. Lebesgue measure of a clipped ball is the product
//! of clipped side lengths and is exact.

use crate::error::{Error, Result};
use crate::rat::{rat_int, Rat};
use num_traits::{Signed, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(pub Vec<Rat>);

impl Point {
    pub fn one_d(x: Rat) -> Self {
        Point(vec![x])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Sup-metric distance.
    pub fn dist(&self, other: &Point) -> Rat {
        assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .max()
            .expect("zero-dimensional point")
    }

    pub fn in_unit_cube(&self) -> bool {
        let one = rat_int(1);
        self.0.iter().all(|c| !c.is_negative() && *c <= one)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    pub center: Point,
    pub radius: Rat,
}

impl Ball {
    pub fn new(center: Point, radius: Rat) -> Self {
        assert!(radius.is_positive(), "ball radius must be positive");
        Ball { center, radius }
    }

    pub fn one_d(x: Rat, r: Rat) -> Self {
        Ball::new(Point::one_d(x), r)
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    /// `cB`: same center, radius scaled by `c`.
    pub fn scale(&self, c: &Rat) -> Ball {
        Ball::new(self.center.clone(), &self.radius * c)
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        self.center.dist(p) < self.radius
    }

    /// Unclipped sup-ball containment: `other ⊂ self`.
    pub fn contains_ball(&self, other: &Ball) -> bool {
        self.center.dist(&other.center) + &other.radius <= self.radius
    }

    /// Distance between the two balls as sets (0 when they overlap).
    pub fn gap(&self, other: &Ball) -> Rat {
        let d = self.center.dist(&other.center) - &self.radius - &other.radius;
        if d.is_negative() {
            Rat::zero()
        } else {
            d
        }
    }

    pub fn intersects(&self, other: &Ball) -> bool {
        self.center.dist(&other.center) < &self.radius + &other.radius
    }

    /// Per-coordinate interval `[x_i - r, x_i + r]` clipped to `[0,1]`.
    pub fn clipped_sides(&self) -> Vec<(Rat, Rat)> {
        let zero = Rat::zero();
        let one = rat_int(1);
        self.center
            .0
            .iter()
            .map(|x| {
                let lo = (x - &self.radius).max(zero.clone());
                let hi = (x + &self.radius).min(one.clone());
                (lo, hi)
            })
            .collect()
    }

    /// Exact Lebesgue measure of `B ∩ [0,1]^d`.
    pub fn measure_clipped(&self) -> Rat {
        let mut acc = rat_int(1);
        for (lo, hi) in self.clipped_sides() {
            if hi <= lo {
                return Rat::zero();
            }
            acc *= hi - lo;
        }
        acc
    }

    /// True when the unclipped ball lies inside the cube, so boundary
    /// effects cannot occur.
    pub fn interior_to_cube(&self) -> bool {
        let one = rat_int(1);
        self.center.0.iter().all(|x| {
            !(x - &self.radius).is_negative() && x + &self.radius <= one
        })
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B({}, {})", self.center, self.radius)
    }
}

/// Open annulus `A(x, r, R) = B(x, R) \ B(x, r)` with `0 < r < R`.
#[derive(Clone, Debug)]
pub struct Annulus {
    pub center: Point,
    pub inner: Rat,
    pub outer: Rat,
}

impl Annulus {
    pub fn new(center: Point, inner: Rat, outer: Rat) -> Result<Self> {
        if !inner.is_positive() || inner >= outer {
            return Err(Error::AnnulusEmpty {
                inner: inner.to_string(),
                outer: outer.to_string(),
            });
        }
        Ok(Annulus {
            center,
            inner,
            outer,
        })
    }

    /// `ball ⊂ A`: every point of the open ball has distance in
    /// `[inner, outer)` from the annulus center.
    pub fn contains_ball(&self, ball: &Ball) -> bool {
        let d = self.center.dist(&ball.center);
        &d - &ball.radius >= self.inner && d + &ball.radius <= self.outer
    }

    /// Exact measure of `A ∩ [0,1]^d` (difference of clipped balls).
    pub fn measure_clipped(&self) -> Rat {
        let outer = Ball::new(self.center.clone(), self.outer.clone());
        let inner = Ball::new(self.center.clone(), self.inner.clone());
        outer.measure_clipped() - inner.measure_clipped()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i64;

    fn b1(x: (i64, i64), r: (i64, i64)) -> Ball {
        Ball::one_d(rat_i64(x.0, x.1), rat_i64(r.0, r.1))
    }

    #[test]
    fn clipped_measure_interior_and_corner() {
        // interior: measure 2r
        assert_eq!(b1((1, 2), (1, 8)).measure_clipped(), rat_i64(1, 4));
        // corner ball at 0: measure r
        assert_eq!(b1((0, 1), (1, 8)).measure_clipped(), rat_i64(1, 8));
    }

    #[test]
    fn d2_interior_ball_measure() {
        let b = Ball::new(
            Point(vec![rat_i64(1, 2), rat_i64(1, 2)]),
            rat_i64(1, 4),
        );
        assert_eq!(b.measure_clipped(), rat_i64(1, 4));
    }

    #[test]
    fn annulus_side_gap_lower_bound() {
        // interior center, one whole side gap [x+r, x+R] inside [0,1]:
        // measure >= R - r holds exactly in d = 1
        let a = Annulus::new(Point::one_d(rat_i64(1, 2)), rat_i64(1, 16), rat_i64(1, 8)).unwrap();
        let m = a.measure_clipped();
        assert!(m >= rat_i64(1, 8) - rat_i64(1, 16));
    }

    #[test]
    fn degenerate_annulus_rejected() {
        assert!(Annulus::new(Point::one_d(rat_i64(1, 2)), rat_i64(1, 4), rat_i64(1, 8)).is_err());
    }

    #[test]
    fn ball_gap_and_containment() {
        let a = b1((1, 4), (1, 8));
        let b = b1((3, 4), (1, 8));
        assert_eq!(a.gap(&b), rat_i64(1, 4));
        let big_ball = b1((1, 2), (1, 2));
        assert!(big_ball.contains_ball(&a));
        assert!(!a.contains_ball(&big_ball));
    }
}
