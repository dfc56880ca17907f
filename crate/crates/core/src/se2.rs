//! Exact primitives for the planar rigid motion group SE(2) and its Lie
//! algebra se(2).
//!
//! Group elements are stored as plain `(x, y, theta)` triples and embedded
//! into 3x3 homogeneous matrices only on demand, so repeated composition
//! never accumulates renormalization drift. The rotation angle is *not*
//! wrapped: net rotation over a gait may exceed pi, and wrapping is a
//! display concern only.

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

/// Rigid planar displacement: translation `(x, y)` and rotation `theta`
/// (radians, unwrapped).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupElement {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

/// Body velocity xi = (xi_x, xi_y, xi_theta): an element of se(2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlgebraElement {
    pub xi_x: f64,
    pub xi_y: f64,
    pub xi_theta: f64,
}

impl GroupElement {
    pub fn new(x: f64, y: f64, theta: f64) -> Self {
        Self { x, y, theta }
    }

    pub fn identity() -> Self {
        Self::new(0.0, 0.0, 0.0)
    }

    /// Homogeneous 3x3 embedding [[R, t], [0, 1]].
    pub fn matrix(&self) -> Matrix3<f64> {
        let (s, c) = self.theta.sin_cos();
        Matrix3::new(c, -s, self.x, s, c, self.y, 0.0, 0.0, 1.0)
    }

    /// Group law: the homogeneous-matrix product, un-embedded. Theta
    /// accumulates without wrapping.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let (s, c) = self.theta.sin_cos();
        GroupElement {
            x: self.x + c * other.x - s * other.y,
            y: self.y + s * other.x + c * other.y,
            theta: self.theta + other.theta,
        }
    }

    pub fn inverse(&self) -> GroupElement {
        let (s, c) = self.theta.sin_cos();
        GroupElement {
            x: -(c * self.x + s * self.y),
            y: -(-s * self.x + c * self.y),
            theta: -self.theta,
        }
    }

    /// Left action on a point of the plane.
    pub fn act(&self, px: f64, py: f64) -> (f64, f64) {
        let (s, c) = self.theta.sin_cos();
        (self.x + c * px - s * py, self.y + s * px + c * py)
    }
}

impl AlgebraElement {
    pub fn new(xi_x: f64, xi_y: f64, xi_theta: f64) -> Self {
        Self {
            xi_x,
            xi_y,
            xi_theta,
        }
    }

    pub fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0)
    }

    /// Matrix representation [[0, -w, vx], [w, 0, vy], [0, 0, 0]].
    pub fn hat(&self) -> Matrix3<f64> {
        Matrix3::new(
            0.0,
            -self.xi_theta,
            self.xi_x,
            self.xi_theta,
            0.0,
            self.xi_y,
            0.0,
            0.0,
            0.0,
        )
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::new(k * self.xi_x, k * self.xi_y, k * self.xi_theta)
    }

    pub fn norm(&self) -> f64 {
        (self.xi_x * self.xi_x + self.xi_y * self.xi_y + self.xi_theta * self.xi_theta).sqrt()
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.xi_x, self.xi_y, self.xi_theta]
    }
}

impl std::ops::Add for AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, o: AlgebraElement) -> AlgebraElement {
        AlgebraElement::new(
            self.xi_x + o.xi_x,
            self.xi_y + o.xi_y,
            self.xi_theta + o.xi_theta,
        )
    }
}

impl std::ops::Sub for AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, o: AlgebraElement) -> AlgebraElement {
        AlgebraElement::new(
            self.xi_x - o.xi_x,
            self.xi_y - o.xi_y,
            self.xi_theta - o.xi_theta,
        )
    }
}

impl std::ops::Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(-1.0)
    }
}

/// Lie bracket on se(2): the matrix commutator of the hat representations,
/// un-hatted. Closed form:
/// `[a, b] = (b_th*a_y - a_th*b_y, a_th*b_x - b_th*a_x, 0)`.
pub fn bracket(a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    AlgebraElement::new(
        b.xi_theta * a.xi_y - a.xi_theta * b.xi_y,
        a.xi_theta * b.xi_x - b.xi_theta * a.xi_x,
        0.0,
    )
}

/// Exponential map se(2) -> SE(2).
///
/// theta_out = xi_theta and the translation is V(xi_theta) * (xi_x, xi_y)
/// with V = [[sin t / t, -(1-cos t)/t], [(1-cos t)/t, sin t / t]]. Below
/// |xi_theta| = 1e-6 the two V coefficients switch to their Taylor series;
/// V(t) is 0/0 at t = 0 and the direct quotients cancel catastrophically.
pub fn exp(xi: &AlgebraElement) -> GroupElement {
    let t = xi.xi_theta;
    let (a, b) = if t.abs() < 1e-6 {
        let t2 = t * t;
        // sin t / t and (1 - cos t) / t
        (
            1.0 - t2 / 6.0 * (1.0 - t2 / 20.0),
            t / 2.0 * (1.0 - t2 / 12.0 * (1.0 - t2 / 30.0)),
        )
    } else {
        ((t.sin()) / t, (1.0 - t.cos()) / t)
    };
    GroupElement {
        x: a * xi.xi_x - b * xi.xi_y,
        y: b * xi.xi_x + a * xi.xi_y,
        theta: t,
    }
}
