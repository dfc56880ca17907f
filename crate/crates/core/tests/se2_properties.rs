use nalgebra::Matrix3;
use proptest::prelude::*;
use purcell_core::{bracket, exp, AlgebraElement, GroupElement};

fn xi_strategy() -> impl Strategy<Value = AlgebraElement> {
    (-10.0..10.0f64, -10.0..10.0f64, -10.0..10.0f64)
        .prop_map(|(x, y, t)| AlgebraElement::new(x, y, t))
}

fn group_strategy() -> impl Strategy<Value = GroupElement> {
    (-10.0..10.0f64, -10.0..10.0f64, -10.0..10.0f64)
        .prop_map(|(x, y, t)| GroupElement::new(x, y, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn jacobi_identity(a in xi_strategy(), b in xi_strategy(), c in xi_strategy()) {
        let s = bracket(&a, &bracket(&b, &c))
            + bracket(&b, &bracket(&c, &a))
            + bracket(&c, &bracket(&a, &b));
        prop_assert!(s.norm() < 1e-12);
    }
}

proptest! {
    #[test]
    fn bracket_bilinear_and_antisymmetric(
        a in xi_strategy(),
        b in xi_strategy(),
        c in xi_strategy(),
        s in -10.0..10.0f64,
    ) {
        let anti = bracket(&a, &b) + bracket(&b, &a);
        prop_assert!(anti.norm() < 1e-12);
        let lhs = bracket(&(a.scale(s) + b), &c);
        let rhs = bracket(&a, &c).scale(s) + bracket(&b, &c);
        prop_assert!((lhs - rhs).norm() < 1e-10);
    }

    #[test]
    fn exp_one_parameter_subgroup(xi in xi_strategy(), t in -2.0..2.0f64, s in -2.0..2.0f64) {
        let lhs = exp(&xi.scale(t)).compose(&exp(&xi.scale(s)));
        let rhs = exp(&xi.scale(t + s));
        prop_assert!((lhs.x - rhs.x).abs() < 1e-10);
        prop_assert!((lhs.y - rhs.y).abs() < 1e-10);
        prop_assert!((lhs.theta - rhs.theta).abs() < 1e-10);
    }

    #[test]
    fn compose_inverse_is_identity(g in group_strategy()) {
        let e = g.compose(&g.inverse());
        prop_assert!(e.x.abs() < 1e-12 && e.y.abs() < 1e-12 && e.theta.abs() < 1e-12);
    }

    #[test]
    fn rotation_block_stays_orthonormal(g in group_strategy(), h in group_strategy()) {
        for m in [g.compose(&h).matrix(), g.inverse().matrix()] {
            let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
            prop_assert!((det - 1.0).abs() < 1e-12);
            let dot = m[(0, 0)] * m[(0, 1)] + m[(1, 0)] * m[(1, 1)];
            prop_assert!(dot.abs() < 1e-12);
        }
    }

    #[test]
    fn hat_commutes_with_linear_combinations(a in xi_strategy(), b in xi_strategy(), s in -5.0..5.0f64) {
        let lhs = (a.scale(s) + b).hat();
        let rhs = a.hat() * s + b.hat();
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }
}

/// Independent oracle for the exponential map: integrate the matrix ODE
/// G' = G * hat(xi) from the identity over unit time with 1e5 Heun steps
/// and compare against the closed form.
#[test]
fn exp_matches_ode_integration() {
    let xi = AlgebraElement::new(1.0, 0.0, std::f64::consts::PI);
    let hat = xi.hat();
    let n = 100_000;
    let h = 1.0 / n as f64;
    let mut g = Matrix3::<f64>::identity();
    for _ in 0..n {
        let k1 = g * hat;
        let k2 = (g + k1 * h) * hat;
        g += (k1 + k2) * (h / 2.0);
    }
    let closed = exp(&xi);
    assert!((g[(0, 2)] - closed.x).abs() < 1e-7, "x: {}", g[(0, 2)]);
    assert!((g[(1, 2)] - closed.y).abs() < 1e-7, "y: {}", g[(1, 2)]);
    let theta = g[(1, 0)].atan2(g[(0, 0)]);
    // closed.theta = pi wraps to atan2 range boundary; compare sines/cosines
    assert!((theta.sin() - closed.theta.sin()).abs() < 1e-7);
    assert!((theta.cos() - closed.theta.cos()).abs() < 1e-7);
    // spot values from the closed-form screw motion
    assert!(g[(0, 2)].abs() < 1e-7);
    assert!((g[(1, 2)] - 2.0 / std::f64::consts::PI).abs() < 1e-7);
}
