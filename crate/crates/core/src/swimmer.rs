//! Resistive-force-theory model of the swimmer: per-link drag, link
//! body-velocity Jacobians and force transforms, for the basic 3-link
//! mechanism and its symmetric 5-link cousin.
//!
//! Geometry and conventions. The base link (index 0) has half length `L`
//! and carries the body frame at its center, aligned with the link. Link 1
//! hinges at the rear end (-L, 0) and rotates by -alpha1 relative to the
//! base; link 2 hinges at the front end (+L, 0) and rotates by +alpha2.
//! The symmetric variant adds the mirror links 3 and 4 at the same hinges
//! with angles +alpha1 and -alpha2, so each outer pair opens symmetrically
//! about the base link.
//!
//! Two sign corrections relative to a common transcription of this model:
//! the (2,3) entry of link 2's Jacobian is +L(cos alpha2 + 1) — forced by
//! reciprocity with the force transform, and by the fact that link 2 sits
//! at +x of the base so a positive body yaw rate moves it in +y — and link
//! 2's shape-rate entries sit in the alpha2-rate column (otherwise the
//! summed resistance has an identically zero second shape column and the
//! connection loses a column).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::Scalar;
use crate::linalg::{Mat3, Vec3};

/// Which mechanism is being modeled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Three links: base plus one link at each hinge.
    Basic,
    /// Five links: base plus a mirrored pair at each hinge.
    Symmetric,
}

impl Variant {
    pub fn link_count(&self) -> usize {
        match self {
            Variant::Basic => 3,
            Variant::Symmetric => 5,
        }
    }

    /// Dimension of the structure group reachable by this mechanism:
    /// SE(2) for the basic swimmer, the x-line for the symmetric one.
    pub fn group_dimension(&self) -> usize {
        match self {
            Variant::Basic => 3,
            Variant::Symmetric => 1,
        }
    }
}

/// Physical parameters of the swimmer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SwimmerParams {
    /// Differential viscous drag coefficient (force * time / length^2).
    pub k: f64,
    /// Half link length.
    pub l: f64,
    pub variant: Variant,
}

impl SwimmerParams {
    pub fn new(k: f64, l: f64, variant: Variant) -> Result<Self> {
        if k <= 0.0 || l <= 0.0 || !k.is_finite() || !l.is_finite() {
            return Err(Error::InvalidParams { k, l });
        }
        Ok(Self { k, l, variant })
    }

    /// k = 1, L = 1 — the constants used throughout the reference analysis.
    pub fn unit(variant: Variant) -> Self {
        Self {
            k: 1.0,
            l: 1.0,
            variant,
        }
    }
}

/// A point (alpha1, alpha2) on the shape torus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapePoint {
    pub alpha1: f64,
    pub alpha2: f64,
}

impl ShapePoint {
    pub fn new(alpha1: f64, alpha2: f64) -> Self {
        Self { alpha1, alpha2 }
    }
}

/// Per-link drag matrix H = diag(kL, 2kL, (2/3)kL^3).
pub fn drag_matrix(params: &SwimmerParams) -> [[f64; 3]; 3] {
    let (k, l) = (params.k, params.l);
    let mut h = [[0.0; 3]; 3];
    h[0][0] = k * l;
    h[1][1] = 2.0 * k * l;
    h[2][2] = 2.0 / 3.0 * k * l * l * l;
    h
}

pub(crate) fn drag_diagonal(params: &SwimmerParams) -> [f64; 3] {
    let (k, l) = (params.k, params.l);
    [k * l, 2.0 * k * l, 2.0 / 3.0 * k * l * l * l]
}

/// Kinematics of one link, generic over the scalar type: the 3x3 group
/// block of its body-velocity Jacobian, the 3-entry shape-rate column, and
/// which shape rate drives it (0 for alpha1, 1 for alpha2).
pub(crate) struct LinkBlocks<S> {
    pub group: Mat3<S>,
    pub shape_col: Vec3<S>,
    pub shape_axis: usize,
}

fn rear_link<S: Scalar>(alpha: &S, l: f64, mirror: bool) -> (Mat3<S>, Vec3<S>) {
    // Hinge at (-L, 0); link orientation -alpha (mirror: +alpha).
    let a = if mirror { alpha.neg() } else { alpha.clone() };
    let (s, c) = (a.sin(), a.cos());
    let zero = a.zero_like();
    let one = zero.shift(1.0);
    let group = [
        [c.clone(), s.neg(), s.scale(l)],
        [s.clone(), c.clone(), c.shift(1.0).scale(-l)],
        [zero.clone(), zero.clone(), one.clone()],
    ];
    // d(link angle)/d(alpha) = -1 (mirror: +1); rate column is constant.
    let sign = if mirror { -1.0 } else { 1.0 };
    let shape_col = [zero.clone(), one.scale(sign * l), one.scale(-sign)];
    (group, shape_col)
}

fn front_link<S: Scalar>(alpha: &S, l: f64, mirror: bool) -> (Mat3<S>, Vec3<S>) {
    // Hinge at (+L, 0); link orientation +alpha (mirror: -alpha).
    let a = if mirror { alpha.neg() } else { alpha.clone() };
    let (s, c) = (a.sin(), a.cos());
    let zero = a.zero_like();
    let one = zero.shift(1.0);
    let group = [
        [c.clone(), s.clone(), s.scale(l)],
        [s.neg(), c.clone(), c.shift(1.0).scale(l)],
        [zero.clone(), zero.clone(), one.clone()],
    ];
    let sign = if mirror { -1.0 } else { 1.0 };
    let shape_col = [zero.clone(), one.scale(sign * l), one.scale(sign)];
    (group, shape_col)
}

/// All links of the given variant at shape `(a1, a2)`, base link first.
pub(crate) fn link_blocks<S: Scalar>(
    a1: &S,
    a2: &S,
    l: f64,
    variant: Variant,
) -> Vec<LinkBlocks<S>> {
    let zero = a1.zero_like();
    let one = zero.shift(1.0);
    let base = LinkBlocks {
        group: [
            [one.clone(), zero.clone(), zero.clone()],
            [zero.clone(), one.clone(), zero.clone()],
            [zero.clone(), zero.clone(), one.clone()],
        ],
        shape_col: [zero.clone(), zero.clone(), zero.clone()],
        shape_axis: 0,
    };
    let (g1, s1) = rear_link(a1, l, false);
    let (g2, s2) = front_link(a2, l, false);
    let mut links = vec![
        base,
        LinkBlocks {
            group: g1,
            shape_col: s1,
            shape_axis: 0,
        },
        LinkBlocks {
            group: g2,
            shape_col: s2,
            shape_axis: 1,
        },
    ];
    if variant == Variant::Symmetric {
        let (g3, s3) = rear_link(a1, l, true);
        let (g4, s4) = front_link(a2, l, true);
        links.push(LinkBlocks {
            group: g3,
            shape_col: s3,
            shape_axis: 0,
        });
        links.push(LinkBlocks {
            group: g4,
            shape_col: s4,
            shape_axis: 1,
        });
    }
    links
}

/// Force transform from link `index`'s frame to the base frame, built from
/// its own closed form rather than by transposing [`link_jacobian`]; the
/// reciprocity between the two is a tested property, not a definition.
pub(crate) fn force_transform_generic<S: Scalar>(
    index: usize,
    a1: &S,
    a2: &S,
    l: f64,
) -> Mat3<S> {
    let zero = a1.zero_like();
    let one = zero.shift(1.0);
    let (alpha, front, mirror) = match index {
        0 => {
            return [
                [one.clone(), zero.clone(), zero.clone()],
                [zero.clone(), one.clone(), zero.clone()],
                [zero.clone(), zero.clone(), one],
            ]
        }
        1 => (a1.clone(), false, false),
        2 => (a2.clone(), true, false),
        3 => (a1.clone(), false, true),
        4 => (a2.clone(), true, true),
        _ => unreachable!("index checked by caller"),
    };
    let a = if mirror { alpha.neg() } else { alpha };
    let (s, c) = (a.sin(), a.cos());
    if front {
        [
            [c.clone(), s.neg(), zero.clone()],
            [s.clone(), c.clone(), zero.clone()],
            [s.scale(l), c.shift(1.0).scale(l), one],
        ]
    } else {
        [
            [c.clone(), s.clone(), zero.clone()],
            [s.neg(), c.clone(), zero.clone()],
            [s.scale(l), c.shift(1.0).scale(-l), one],
        ]
    }
}

fn check_index(index: usize, params: &SwimmerParams) -> Result<()> {
    if index >= params.variant.link_count() {
        return Err(Error::LinkIndexOutOfRange {
            index,
            variant: params.variant,
        });
    }
    Ok(())
}

/// Body-velocity Jacobian of link `index`: the 3x5 matrix mapping
/// `[xi; alpha1_dot; alpha2_dot]` to the link's body velocity.
pub fn link_jacobian(
    index: usize,
    x: &ShapePoint,
    params: &SwimmerParams,
) -> Result<[[f64; 5]; 3]> {
    check_index(index, params)?;
    let links = link_blocks::<f64>(&x.alpha1, &x.alpha2, params.l, params.variant);
    let link = &links[index];
    let mut b = [[0.0; 5]; 3];
    for r in 0..3 {
        for c in 0..3 {
            b[r][c] = link.group[r][c];
        }
        b[r][3 + link.shape_axis] = link.shape_col[r];
    }
    Ok(b)
}

/// Force transform of link `index` to the base frame (3x3).
pub fn force_transform(
    index: usize,
    x: &ShapePoint,
    params: &SwimmerParams,
) -> Result<[[f64; 3]; 3]> {
    check_index(index, params)?;
    Ok(force_transform_generic::<f64>(
        index,
        &x.alpha1,
        &x.alpha2,
        params.l,
    ))
}
