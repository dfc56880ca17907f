use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use purcell_core::{
    assemble_connection, classify, connection_jet, curvature, filtration,
    symmetric_curvature_coefficient, Classification, ShapePoint, SwimmerParams, Variant,
};

const TAU: f64 = std::f64::consts::TAU;

/// First partials from jets agree with central finite differences
/// (step 1e-5) at random shape points.
#[test]
fn autodiff_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    let h = 1e-5;
    for variant in [Variant::Basic, Variant::Symmetric] {
        let p = SwimmerParams::unit(variant);
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let (a1, a2) = (rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU));
            let jet = connection_jet(&ShapePoint::new(a1, a2), &p, 1).unwrap();
            let xp = assemble_connection(&ShapePoint::new(a1 + h, a2), &p).unwrap();
            let xm = assemble_connection(&ShapePoint::new(a1 - h, a2), &p).unwrap();
            let yp = assemble_connection(&ShapePoint::new(a1, a2 + h), &p).unwrap();
            let ym = assemble_connection(&ShapePoint::new(a1, a2 - h), &p).unwrap();
            for r in 0..3 {
                for c in 0..2 {
                    let fd1 = (xp.a[r][c] - xm.a[r][c]) / (2.0 * h);
                    let fd2 = (yp.a[r][c] - ym.a[r][c]) / (2.0 * h);
                    worst = worst.max((jet.d1[r][c] - fd1).abs());
                    worst = worst.max((jet.d2[r][c] - fd2).abs());
                }
            }
        }
        assert!(worst < 1e-6, "{variant:?}: max AD-vs-FD deviation {worst:.3e}");
    }
}

/// Symmetric curvature from automatic differentiation equals the closed
/// form on a 33x33 grid and stays on the x axis.
#[test]
fn symmetric_curvature_grid() {
    let p = SwimmerParams::unit(Variant::Symmetric);
    let n = 33;
    for i in 0..n {
        for j in 0..n {
            let x = ShapePoint::new(TAU * i as f64 / n as f64, TAU * j as f64 / n as f64);
            let k = curvature(&x, &p).unwrap();
            let want = symmetric_curvature_coefficient(&x);
            assert!(
                (k.coefficient() - want).abs() < 1e-10,
                "({}, {}): {} vs {}",
                x.alpha1,
                x.alpha2,
                k.coefficient(),
                want
            );
            assert!(k.value.xi_y.abs() < 1e-12 && k.value.xi_theta.abs() < 1e-12);
        }
    }
}

/// Filtration ranks do not depend on the drag coefficient.
#[test]
fn filtration_ranks_k_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for variant in [Variant::Basic, Variant::Symmetric] {
        for _ in 0..25 {
            let x = ShapePoint::new(rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU));
            let ranks: Vec<(usize, usize)> = [0.5, 1.0, 2.0]
                .iter()
                .map(|&k| {
                    let p = SwimmerParams::new(k, 1.0, variant).unwrap();
                    let f = filtration(&x, &p, 3).unwrap();
                    (f.weak_rank(), f.strong_rank())
                })
                .collect();
            assert_eq!(ranks[0], ranks[1]);
            assert_eq!(ranks[2], ranks[1]);
        }
    }
}

/// The basic swimmer satisfies the strong rank condition at random shapes.
#[test]
fn basic_strong_rank_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let p = SwimmerParams::unit(Variant::Basic);
    for _ in 0..300 {
        let x = ShapePoint::new(rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU));
        let v = classify(&x, &p, 3).unwrap();
        assert_eq!(
            v.classification,
            Classification::Strong,
            "at ({}, {})",
            x.alpha1,
            x.alpha2
        );
        assert_eq!(v.weak_rank, 3);
    }
}

/// Grid sweeps evaluated point-by-point match a fresh evaluation at the
/// same points: no hidden state anywhere in the pipeline.
#[test]
fn evaluation_is_stateless() {
    let p = SwimmerParams::unit(Variant::Basic);
    let x = ShapePoint::new(2.3, 0.4);
    let first = curvature(&x, &p).unwrap();
    for _ in 0..5 {
        let again = curvature(&x, &p).unwrap();
        assert_eq!(first.value, again.value);
    }
}
