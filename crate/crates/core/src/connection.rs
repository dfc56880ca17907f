//! The local connection form A(x).
//!
//! Zero net force and moment on the isolated low-Reynolds swimmer give
//! `sum_i [T_i H B_i]_{3x3} xi + sum_i [T_i H B_i]_{3x2} xdot = 0`, so with
//! `A = G^{-1} S` (G the summed group block, S the summed shape block) the
//! body velocity is `xi = -A(x) xdot`. A is solved directly, never by
//! explicit inversion, and is independent of the drag coefficient k (k
//! scales G and S identically).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::Scalar;
use crate::linalg::{self, Mat3, Vec3};
use crate::se2::AlgebraElement;
use crate::swimmer::{self, ShapePoint, SwimmerParams};

/// The 3x2 local connection, stored with the sign convention
/// `xi = -A(x) * xdot`. Rows are (xi_x, xi_y, xi_theta); columns are the
/// alpha1-rate and alpha2-rate directions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalConnection {
    pub a: [[f64; 2]; 3],
}

impl LocalConnection {
    pub fn column(&self, j: usize) -> AlgebraElement {
        AlgebraElement::new(self.a[0][j], self.a[1][j], self.a[2][j])
    }

    /// Body velocity for a given shape velocity: `xi = -A * xdot`.
    pub fn body_velocity(&self, alpha1_dot: f64, alpha2_dot: f64) -> AlgebraElement {
        AlgebraElement::new(
            -(self.a[0][0] * alpha1_dot + self.a[0][1] * alpha2_dot),
            -(self.a[1][0] * alpha1_dot + self.a[1][1] * alpha2_dot),
            -(self.a[2][0] * alpha1_dot + self.a[2][1] * alpha2_dot),
        )
    }
}

/// Generic assembly of the connection: sums `T_i H B_i` over the variant's
/// links and solves the 3x3 group block against the 3x2 shape block.
/// Returns the two columns of A. Scalar-generic so jets can flow through
/// the entire pipeline including the solve.
pub(crate) fn assemble_generic<S: Scalar>(
    a1: &S,
    a2: &S,
    params: &SwimmerParams,
) -> std::result::Result<[Vec3<S>; 2], linalg::SingularBlock> {
    let h = swimmer::drag_diagonal(params);
    let links = swimmer::link_blocks(a1, a2, params.l, params.variant);
    let zero = a1.zero_like();
    let mut g: Mat3<S> = linalg::mat3_zero(&zero);
    let mut s: [Vec3<S>; 2] = [
        [zero.clone(), zero.clone(), zero.clone()],
        [zero.clone(), zero.clone(), zero.clone()],
    ];
    for (i, link) in links.iter().enumerate() {
        let t = swimmer::force_transform_generic(i, a1, a2, params.l);
        // T * H: scale columns of T by the drag diagonal
        let th: Mat3<S> =
            std::array::from_fn(|r| std::array::from_fn(|c| t[r][c].scale(h[c])));
        let contrib_g = linalg::mat3_mul(&th, &link.group);
        linalg::mat3_add_assign(&mut g, &contrib_g);
        let contrib_s = linalg::mat3_mul_vec(&th, &link.shape_col);
        linalg::vec3_add_assign(&mut s[link.shape_axis], &contrib_s);
    }
    linalg::solve3(&g, &s)
}

/// Assemble A(x) for either variant by the force-balance solve.
pub fn assemble_connection(x: &ShapePoint, params: &SwimmerParams) -> Result<LocalConnection> {
    let cols = assemble_generic::<f64>(&x.alpha1, &x.alpha2, params).map_err(|e| {
        Error::SingularSystem {
            alpha1: x.alpha1,
            alpha2: x.alpha2,
            condition: e.condition,
        }
    })?;
    let mut a = [[0.0; 2]; 3];
    for r in 0..3 {
        a[r][0] = cols[0][r];
        a[r][1] = cols[1][r];
    }
    Ok(LocalConnection { a })
}

/// Closed-form connection for the symmetric swimmer at k = 1, L = 1:
/// row 1 is `(4 sin a1, -4 sin a2) / (2 sin^2 a1 + 2 sin^2 a2 + 5)`, rows
/// 2 and 3 are zero. Oriented to agree with [`assemble_connection`]; serves
/// as the independent oracle for the assembled form.
pub fn symmetric_closed_form(x: &ShapePoint) -> LocalConnection {
    let (s1, s2) = (x.alpha1.sin(), x.alpha2.sin());
    let d = 2.0 * s1 * s1 + 2.0 * s2 * s2 + 5.0;
    LocalConnection {
        a: [[4.0 * s1 / d, -4.0 * s2 / d], [0.0, 0.0], [0.0, 0.0]],
    }
}

/// The two control vector fields of the driftless form
/// `[xdot; xi] = [I; -A(x)] u`: field j is the j-th basis shape rate
/// stacked over the j-th column of -A.
pub fn control_vector_fields(
    x: &ShapePoint,
    params: &SwimmerParams,
) -> Result<([f64; 5], [f64; 5])> {
    let conn = assemble_connection(x, params)?;
    let f = |j: usize| -> [f64; 5] {
        let mut v = [0.0; 5];
        v[j] = 1.0;
        for r in 0..3 {
            v[2 + r] = -conn.a[r][j];
        }
        v
    };
    Ok((f(0), f(1)))
}
