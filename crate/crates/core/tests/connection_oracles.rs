use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use purcell_core::{
    assemble_connection, drag_matrix, force_transform, link_jacobian, symmetric_closed_form,
    ShapePoint, SwimmerParams, Variant,
};

const TAU: f64 = std::f64::consts::TAU;

/// The assembled symmetric connection agrees with the closed form on a
/// 33x33 uniform grid over [0, 2pi)^2, and its lower rows vanish.
#[test]
fn symmetric_oracle_equivalence_on_grid() {
    let p = SwimmerParams::unit(Variant::Symmetric);
    let n = 33;
    let mut worst = 0.0f64;
    let mut worst_rows = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let x = ShapePoint::new(TAU * i as f64 / n as f64, TAU * j as f64 / n as f64);
            let asm = assemble_connection(&x, &p).unwrap();
            let cf = symmetric_closed_form(&x);
            for c in 0..2 {
                worst = worst.max((asm.a[0][c] - cf.a[0][c]).abs());
                worst_rows = worst_rows.max(asm.a[1][c].abs()).max(asm.a[2][c].abs());
            }
        }
    }
    assert!(worst < 1e-10, "max closed-form deviation {worst:.3e}");
    assert!(worst_rows < 1e-12, "max lower-row magnitude {worst_rows:.3e}");
}

/// A(x) does not depend on the drag coefficient.
#[test]
fn k_invariance_of_connection() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for variant in [Variant::Basic, Variant::Symmetric] {
        for _ in 0..40 {
            let x = ShapePoint::new(rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU));
            let a1 =
                assemble_connection(&x, &SwimmerParams::new(0.5, 1.0, variant).unwrap()).unwrap();
            let a2 =
                assemble_connection(&x, &SwimmerParams::new(1.0, 1.0, variant).unwrap()).unwrap();
            let a3 =
                assemble_connection(&x, &SwimmerParams::new(2.0, 1.0, variant).unwrap()).unwrap();
            for r in 0..3 {
                for c in 0..2 {
                    assert!((a1.a[r][c] - a2.a[r][c]).abs() < 1e-12);
                    assert!((a3.a[r][c] - a2.a[r][c]).abs() < 1e-12);
                }
            }
        }
    }
}

/// The grand resistance matrix restricted to its group block is symmetric
/// positive definite at every node of a 64x64 grid, for both variants.
#[test]
fn grand_resistance_symmetric_positive_definite() {
    let n = 64;
    for variant in [Variant::Basic, Variant::Symmetric] {
        let p = SwimmerParams::unit(variant);
        for i in 0..n {
            for j in 0..n {
                let x = ShapePoint::new(TAU * i as f64 / n as f64, TAU * j as f64 / n as f64);
                let h = drag_matrix(&p);
                let mut g = [[0.0f64; 3]; 3];
                for link in 0..variant.link_count() {
                    let b = link_jacobian(link, &x, &p).unwrap();
                    let t = force_transform(link, &x, &p).unwrap();
                    for r in 0..3 {
                        for c in 0..3 {
                            for m in 0..3 {
                                g[r][c] += t[r][m] * h[m][m] * b[m][c];
                            }
                        }
                    }
                }
                for r in 0..3 {
                    for c in 0..3 {
                        assert!(
                            (g[r][c] - g[c][r]).abs() < 1e-10,
                            "asymmetry at ({}, {})",
                            x.alpha1,
                            x.alpha2
                        );
                    }
                }
                // positive definite: leading principal minors positive
                let m1 = g[0][0];
                let m2 = g[0][0] * g[1][1] - g[0][1] * g[1][0];
                let m3 = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
                    - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
                    + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
                assert!(m1 > 0.0 && m2 > 0.0 && m3 > 0.0);
            }
        }
    }
}

/// Force balance: the summed transformed link forces vanish along the
/// constrained motion, for random shapes and shape rates.
#[test]
fn force_balance_residual_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for variant in [Variant::Basic, Variant::Symmetric] {
        let p = SwimmerParams::unit(variant);
        for _ in 0..100 {
            let x = ShapePoint::new(rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU));
            let (d1, d2) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let conn = assemble_connection(&x, &p).unwrap();
            let xi = conn.body_velocity(d1, d2);
            let h = drag_matrix(&p);
            let v = [xi.xi_x, xi.xi_y, xi.xi_theta, d1, d2];
            let mut res = [0.0f64; 3];
            for link in 0..variant.link_count() {
                let b = link_jacobian(link, &x, &p).unwrap();
                let t = force_transform(link, &x, &p).unwrap();
                let mut lv = [0.0f64; 3];
                for r in 0..3 {
                    lv[r] = (0..5).map(|c| b[r][c] * v[c]).sum();
                }
                for r in 0..3 {
                    for m in 0..3 {
                        res[r] += t[r][m] * h[m][m] * lv[m];
                    }
                }
            }
            for r in 0..3 {
                assert!(res[r].abs() < 1e-10, "residual {} at row {r}", res[r]);
            }
        }
    }
}

/// Symmetric variant, equal joint angles: the mirror pairs cancel the
/// y and theta rows of the summed shape-column block.
#[test]
fn mirror_cancellation_on_shape_block() {
    let p = SwimmerParams::unit(Variant::Symmetric);
    for &a in &[0.3, 1.1, 2.7, 4.0] {
        let x = ShapePoint::new(a, a);
        let h = drag_matrix(&p);
        let mut s = [[0.0f64; 2]; 3];
        for link in 0..5 {
            let b = link_jacobian(link, &x, &p).unwrap();
            let t = force_transform(link, &x, &p).unwrap();
            for r in 0..3 {
                for c in 0..2 {
                    for m in 0..3 {
                        s[r][c] += t[r][m] * h[m][m] * b[m][3 + c];
                    }
                }
            }
        }
        for c in 0..2 {
            assert!(s[1][c].abs() < 1e-12, "y row remnant {}", s[1][c]);
            assert!(s[2][c].abs() < 1e-12, "theta row remnant {}", s[2][c]);
        }
    }
}

/// 2pi-periodicity of the assembled connection in both angles.
#[test]
fn connection_periodicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for variant in [Variant::Basic, Variant::Symmetric] {
        let p = SwimmerParams::unit(variant);
        for _ in 0..30 {
            let (a1, a2) = (rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU));
            let a = assemble_connection(&ShapePoint::new(a1, a2), &p).unwrap();
            let b = assemble_connection(&ShapePoint::new(a1 + TAU, a2 - TAU), &p).unwrap();
            for r in 0..3 {
                for c in 0..2 {
                    assert!((a.a[r][c] - b.a[r][c]).abs() < 1e-12);
                }
            }
        }
    }
}
