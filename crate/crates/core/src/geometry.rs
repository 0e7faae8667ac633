//! Geometric primitives shared by every solver.
//!
//! Constraints are stored exactly as the caller supplied them; normalization
//! happens only when a boundary line is parameterized or a constraint is
//! classified against one.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::LpError;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    #[inline]
    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    #[inline]
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn length(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Rotation by +90 degrees.
    #[inline]
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.x == 0.0 && self.y == 0.0
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// The constraint `a · x <= b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlane {
    a: Vec2,
    b: f64,
}

impl HalfPlane {
    pub fn new(a: Vec2, b: f64) -> Result<Self, LpError> {
        if !a.is_finite() || !b.is_finite() {
            return Err(LpError::NonFinite);
        }
        if a.is_zero() {
            return Err(LpError::ZeroNormal);
        }
        Ok(HalfPlane { a, b })
    }

    /// Builds `(ax, ay) · x <= b`, panicking on invalid input. Intended for
    /// literals in tests and fixtures.
    pub fn of(ax: f64, ay: f64, b: f64) -> Self {
        HalfPlane::new(Vec2::new(ax, ay), b).expect("invalid half-plane literal")
    }

    #[inline]
    pub fn normal(&self) -> Vec2 {
        self.a
    }

    #[inline]
    pub fn bound(&self) -> f64 {
        self.b
    }

    /// Multiplies both sides by `k > 0`; the feasible set is unchanged.
    pub fn scaled(&self, k: f64) -> Result<Self, LpError> {
        if !(k > 0.0) {
            return Err(LpError::NonPositiveScale(k));
        }
        HalfPlane::new(self.a * k, self.b * k)
    }

    /// The half-plane with the opposite orientation, shifted by `gap` past
    /// this boundary: `-a · x <= -(b + gap)`.
    pub fn opposite(&self, gap: f64) -> Result<Self, LpError> {
        HalfPlane::new(-self.a, -(self.b + gap))
    }
}

/// Objective coefficients of `max c · x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Objective {
    c: Vec2,
}

impl Objective {
    pub fn new(c: Vec2) -> Result<Self, LpError> {
        if !c.is_finite() {
            return Err(LpError::NonFinite);
        }
        if c.is_zero() {
            return Err(LpError::ZeroObjective);
        }
        Ok(Objective { c })
    }

    #[inline]
    pub fn coefficients(&self) -> Vec2 {
        self.c
    }
}

/// The line `a · x = b` of a half-plane, parameterized as `origin + t·dir`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryLine {
    /// Foot of the perpendicular from the origin.
    pub origin: Vec2,
    /// Unit vector, the +90 degree rotation of the normalized constraint normal.
    pub dir: Vec2,
}

impl BoundaryLine {
    #[inline]
    pub fn at(&self, t: f64) -> Vec2 {
        self.origin + self.dir * t
    }

    /// Parameter of the orthogonal projection of `p` onto the line.
    #[inline]
    pub fn project(&self, p: Vec2) -> f64 {
        (p - self.origin).dot(self.dir)
    }
}

/// Numerical slacks used by every solver in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Threshold on the normalized `|a · dir|` below which a constraint is
    /// treated as parallel to a line.
    pub eps_parallel: f64,
    /// Relative feasibility slack; the absolute slack for bound `b` is
    /// `eps_feas * (1 + |b|)`.
    pub eps_feas: f64,
    /// Significant figures used when comparing objective values.
    pub sig_figs: u32,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eps_parallel: 1e-12,
            eps_feas: 1e-9,
            sig_figs: 5,
        }
    }
}

impl Tolerance {
    pub fn validate(&self) -> Result<(), LpError> {
        if self.eps_parallel > 0.0 && self.eps_feas > 0.0 && self.sig_figs > 0 {
            Ok(())
        } else {
            Err(LpError::InvalidTolerance)
        }
    }

    #[inline]
    pub fn slack(&self, magnitude: f64) -> f64 {
        self.eps_feas * (1.0 + magnitude.abs())
    }

    /// True when `a` and `b` agree to `sig_figs` significant figures.
    ///
    /// The comparison is relative to `max(|a|, |b|, 1)`, so values close to
    /// zero are compared absolutely at `10^-sig_figs`.
    pub fn agrees(&self, a: f64, b: f64) -> bool {
        if a == b {
            return true;
        }
        let scale = a.abs().max(b.abs()).max(1.0);
        (a - b).abs() <= 10f64.powi(-(self.sig_figs as i32)) * scale
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundClass {
    /// The constraint bounds `t >= sigma` along the line.
    BoundedLeft(f64),
    /// The constraint bounds `t <= sigma` along the line.
    BoundedRight(f64),
    /// Parallel and containing the whole line.
    ParallelRedundant,
    /// Parallel and excluding the whole line.
    ParallelInfeasible,
}

pub fn boundary_of(h: &HalfPlane) -> BoundaryLine {
    let a = h.normal();
    let len2 = a.dot(a);
    let len = len2.sqrt();
    BoundaryLine {
        origin: a * (h.bound() / len2),
        dir: (a * (1.0 / len)).perp(),
    }
}

pub fn classify(h: &HalfPlane, l: &BoundaryLine, tol: &Tolerance) -> BoundClass {
    let a = h.normal();
    let along = a.dot(l.dir);
    if along.abs() > tol.eps_parallel * a.length() {
        let sigma = (h.bound() - a.dot(l.origin)) / along;
        if along > 0.0 {
            BoundClass::BoundedRight(sigma)
        } else {
            BoundClass::BoundedLeft(sigma)
        }
    } else if a.dot(l.origin) <= h.bound() + tol.slack(h.bound()) {
        BoundClass::ParallelRedundant
    } else {
        BoundClass::ParallelInfeasible
    }
}

#[inline]
pub fn satisfied(h: &HalfPlane, p: Vec2, tol: &Tolerance) -> bool {
    h.normal().dot(p) <= h.bound() + tol.slack(h.bound())
}

#[inline]
pub fn objective_value(c: &Objective, p: Vec2) -> f64 {
    c.coefficients().dot(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const EPS: f64 = 1e-12;

    fn close(a: Vec2, b: Vec2) -> bool {
        (a - b).length() < EPS
    }

    #[test]
    fn boundary_of_axis_and_diagonal_lines() {
        let l = boundary_of(&HalfPlane::of(0.0, 1.0, 1.0));
        assert!(close(l.origin, Vec2::new(0.0, 1.0)));
        assert!(close(l.dir, Vec2::new(-1.0, 0.0)));

        let l = boundary_of(&HalfPlane::of(1.0, 0.0, 2.0));
        assert!(close(l.origin, Vec2::new(2.0, 0.0)));
        assert!(close(l.dir, Vec2::new(0.0, 1.0)));

        let l = boundary_of(&HalfPlane::of(1.0, 1.0, 2.0));
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(l.origin, Vec2::new(1.0, 1.0)));
        assert!(close(l.dir, Vec2::new(-r, r)));
    }

    #[test]
    fn classify_examples() {
        let tol = Tolerance::default();
        let l = boundary_of(&HalfPlane::of(0.0, 1.0, 1.0));
        match classify(&HalfPlane::of(1.0, 0.0, 2.0), &l, &tol) {
            BoundClass::BoundedLeft(s) => assert!((s + 2.0).abs() < EPS),
            other => panic!("expected BoundedLeft, got {other:?}"),
        }
        assert_eq!(
            classify(&HalfPlane::of(0.0, 1.0, 3.0), &l, &tol),
            BoundClass::ParallelRedundant
        );
        assert_eq!(
            classify(&HalfPlane::of(0.0, 1.0, 0.5), &l, &tol),
            BoundClass::ParallelInfeasible
        );
        match classify(&HalfPlane::of(-1.0, 0.0, 3.0), &l, &tol) {
            BoundClass::BoundedRight(s) => assert!((s - 3.0).abs() < EPS),
            other => panic!("expected BoundedRight, got {other:?}"),
        }
    }

    #[test]
    fn coincident_line_is_redundant() {
        let tol = Tolerance::default();
        let h = HalfPlane::of(2.0, -1.0, 3.0);
        let l = boundary_of(&h);
        assert_eq!(classify(&h, &l, &tol), BoundClass::ParallelRedundant);
        // Opposite orientation on the same line admits the line itself.
        let flipped = HalfPlane::of(-2.0, 1.0, -3.0);
        assert_eq!(classify(&flipped, &l, &tol), BoundClass::ParallelRedundant);
    }

    #[test]
    fn satisfied_examples() {
        let tol = Tolerance::default();
        assert!(satisfied(&HalfPlane::of(1.0, 0.0, 1.0), Vec2::new(0.0, 0.0), &tol));
        assert!(!satisfied(&HalfPlane::of(1.0, 0.0, 1.0), Vec2::new(2.0, 0.0), &tol));
        assert!(satisfied(&HalfPlane::of(1.0, 1.0, 2.0), Vec2::new(1.0, 1.0), &tol));
    }

    #[test]
    fn objective_value_examples() {
        let v = |cx, cy, px, py| {
            objective_value(&Objective::new(Vec2::new(cx, cy)).unwrap(), Vec2::new(px, py))
        };
        assert_eq!(v(1.0, 1.0, 1.0, 1.0), 2.0);
        assert_eq!(v(2.0, 0.0, 3.0, 7.0), 6.0);
        assert_eq!(v(0.0, -1.0, 5.0, 4.0), -4.0);
    }

    #[test]
    fn constructors_reject_invalid_input() {
        assert_eq!(HalfPlane::new(Vec2::ZERO, 1.0), Err(LpError::ZeroNormal));
        assert_eq!(HalfPlane::new(Vec2::new(f64::NAN, 1.0), 1.0), Err(LpError::NonFinite));
        assert_eq!(HalfPlane::new(Vec2::new(1.0, 0.0), f64::INFINITY), Err(LpError::NonFinite));
        assert_eq!(Objective::new(Vec2::ZERO), Err(LpError::ZeroObjective));
        assert!(HalfPlane::of(1.0, 0.0, 1.0).scaled(0.0).is_err());
    }

    #[test]
    fn agreement_at_five_figures() {
        let tol = Tolerance::default();
        assert!(tol.agrees(123456.0, 123456.9));
        assert!(!tol.agrees(123456.0, 123459.0));
        assert!(tol.agrees(0.0, 1e-6));
        assert!(!tol.agrees(0.0, 1e-4));
    }

    fn coord() -> impl Strategy<Value = f64> {
        -100.0..100.0f64
    }

    fn half_plane() -> impl Strategy<Value = HalfPlane> {
        (0.0..std::f64::consts::TAU, 0.1..10.0f64, coord())
            .prop_map(|(th, r, b)| HalfPlane::of(r * th.cos(), r * th.sin(), b))
    }

    proptest! {
        #[test]
        fn intersection_lies_on_both_boundaries(h in half_plane(), g in half_plane()) {
            let tol = Tolerance::default();
            let l = boundary_of(&g);
            let sigma = match classify(&h, &l, &tol) {
                BoundClass::BoundedLeft(s) | BoundClass::BoundedRight(s) => s,
                _ => return Ok(()),
            };
            let hn = h.normal();
            let gn = g.normal();
            // Skip nearly parallel pairs whose intersection is ill-conditioned.
            prop_assume!(hn.cross(gn).abs() > 1e-6 * hn.length() * gn.length());
            let p = l.at(sigma);
            let scale = 1.0 + p.length();
            prop_assert!((hn.dot(p) - h.bound()).abs() <= 1e-6 * scale * hn.length());
            prop_assert!((gn.dot(p) - g.bound()).abs() <= 1e-6 * scale * gn.length());
        }

        #[test]
        fn classify_is_scale_covariant(h in half_plane(), g in half_plane(), k in 1e-3..1e3f64) {
            let tol = Tolerance::default();
            let l = boundary_of(&g);
            let base = classify(&h, &l, &tol);
            let scaled = classify(&h.scaled(k).unwrap(), &l, &tol);
            match (base, scaled) {
                (BoundClass::BoundedLeft(a), BoundClass::BoundedLeft(b))
                | (BoundClass::BoundedRight(a), BoundClass::BoundedRight(b)) => {
                    prop_assert!((a - b).abs() <= tol.slack(a));
                }
                (a, b) => prop_assert_eq!(a, b),
            }
        }

        #[test]
        fn origin_is_nearest_point_to_zero(h in half_plane()) {
            let l = boundary_of(&h);
            prop_assert!((l.dir.length() - 1.0).abs() < 1e-12);
            prop_assert!((h.normal().dot(l.origin) - h.bound()).abs() < 1e-9 * (1.0 + h.bound().abs()));
            let t = l.project(Vec2::ZERO);
            prop_assert!((l.at(t) - l.origin).length() < 1e-9 * (1.0 + l.origin.length()));
        }
    }
}
