//! Small fixed-size matrix helpers, generic over [`Scalar`] so the same
//! assembly code runs on plain floats and on jets.

use crate::jet::Scalar;

pub type Mat3<S> = [[S; 3]; 3];
pub type Vec3<S> = [S; 3];

pub fn mat3_zero<S: Scalar>(like: &S) -> Mat3<S> {
    std::array::from_fn(|_| std::array::from_fn(|_| like.zero_like()))
}

pub fn mat3_add_assign<S: Scalar>(a: &mut Mat3<S>, b: &Mat3<S>) {
    for r in 0..3 {
        for c in 0..3 {
            a[r][c] = a[r][c].add(&b[r][c]);
        }
    }
}

pub fn mat3_mul<S: Scalar>(a: &Mat3<S>, b: &Mat3<S>) -> Mat3<S> {
    std::array::from_fn(|r| {
        std::array::from_fn(|c| {
            let mut acc = a[r][0].mul(&b[0][c]);
            acc = acc.add(&a[r][1].mul(&b[1][c]));
            acc.add(&a[r][2].mul(&b[2][c]))
        })
    })
}

pub fn mat3_mul_vec<S: Scalar>(a: &Mat3<S>, v: &Vec3<S>) -> Vec3<S> {
    std::array::from_fn(|r| {
        let mut acc = a[r][0].mul(&v[0]);
        acc = acc.add(&a[r][1].mul(&v[1]));
        acc.add(&a[r][2].mul(&v[2]))
    })
}

pub fn vec3_add_assign<S: Scalar>(a: &mut Vec3<S>, b: &Vec3<S>) {
    for r in 0..3 {
        a[r] = a[r].add(&b[r]);
    }
}

/// Failed pivot information from [`solve3`].
#[derive(Debug, Clone, Copy)]
pub struct SingularBlock {
    /// Ratio of the largest matrix entry to the failing pivot.
    pub condition: f64,
}

/// Solve the 3x3 system `G * X = B` for two right-hand-side columns by
/// Gaussian elimination. Pivots are chosen on the magnitude of the
/// constant part, which is the standard choice when the entries are jets.
pub fn solve3<S: Scalar>(
    g: &Mat3<S>,
    b: &[Vec3<S>; 2],
) -> Result<[Vec3<S>; 2], SingularBlock> {
    let mut m: Vec<Vec<S>> = (0..3)
        .map(|r| {
            vec![
                g[r][0].clone(),
                g[r][1].clone(),
                g[r][2].clone(),
                b[0][r].clone(),
                b[1][r].clone(),
            ]
        })
        .collect();
    let scale = m
        .iter()
        .flat_map(|row| row.iter().take(3))
        .fold(0.0_f64, |acc, v| acc.max(v.value().abs()));
    for col in 0..3 {
        let (piv, piv_abs) = (col..3)
            .map(|r| (r, m[r][col].value().abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if piv_abs <= scale * 1e-14 || piv_abs == 0.0 {
            return Err(SingularBlock {
                condition: if piv_abs == 0.0 {
                    f64::INFINITY
                } else {
                    scale / piv_abs
                },
            });
        }
        m.swap(col, piv);
        for r in 0..3 {
            if r == col {
                continue;
            }
            let f = m[r][col].div(&m[col][col]);
            for c in col..5 {
                let t = f.mul(&m[col][c]);
                m[r][c] = m[r][c].sub(&t);
            }
        }
    }
    let col = |k: usize| -> Vec3<S> {
        std::array::from_fn(|r| m[r][3 + k].div(&m[r][r]))
    };
    Ok([col(0), col(1)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_against_known_inverse() {
        let g: Mat3<f64> = [[3.0, 0.0, 0.0], [0.0, 6.0, 4.0], [0.0, 4.0, 10.0]];
        let b: [Vec3<f64>; 2] = [[0.0, -2.0, -2.0 / 3.0], [0.0, 2.0, 14.0 / 3.0]];
        let x = solve3(&g, &b).unwrap();
        // residual check
        for k in 0..2 {
            let r = mat3_mul_vec(&g, &x[k]);
            for i in 0..3 {
                assert!((r[i] - b[k][i]).abs() < 1e-14);
            }
        }
        assert!((x[0][1] - (-13.0 / 33.0)).abs() < 1e-15);
        assert!((x[0][2] - (1.0 / 11.0)).abs() < 1e-15);
    }

    #[test]
    fn singular_block_reported() {
        let g: Mat3<f64> = [[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [0.0, 0.0, 1.0]];
        let b: [Vec3<f64>; 2] = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]];
        assert!(solve3(&g, &b).is_err());
    }
}
