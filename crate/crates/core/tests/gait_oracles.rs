use purcell_core::{
    holonomy_area_integral, integrate_gait, net_displacement, Gait, GaitKind, ShapePoint,
    SwimmerParams, Variant,
};

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

fn circle() -> Gait {
    Gait::circle((FRAC_PI_2, FRAC_PI_4), 0.5, 1.0)
}

/// Cross-oracle: the integrated net x-displacement of a counterclockwise
/// symmetric gait equals the curvature area integral over the enclosed
/// disk. The two sides share no code beyond the curvature coefficient's
/// antiderivative relationship.
#[test]
fn holonomy_cross_oracle_on_circle() {
    let p = SwimmerParams::unit(Variant::Symmetric);
    let traj = integrate_gait(&circle(), &p, 4096).unwrap();
    let d = net_displacement(&traj);
    assert!(d.y.abs() < 1e-12 && d.theta.abs() < 1e-12);
    let integral = holonomy_area_integral(&circle(), 512).unwrap();
    let rel = (d.x - integral).abs() / d.x.abs().max(integral.abs());
    assert!(
        rel < 1e-4,
        "displacement {} vs area integral {} (rel {rel:.3e})",
        d.x,
        integral
    );
}

/// Order-2 convergence of the midpoint Lie-group integrator, measured on
/// the basic variant (the symmetric variant reduces to a periodic
/// quadrature whose error is below measurement).
#[test]
fn integrator_second_order_convergence() {
    let p = SwimmerParams::unit(Variant::Basic);
    let disp = |steps: usize| {
        let t = integrate_gait(&circle(), &p, steps).unwrap();
        let d = net_displacement(&t);
        [d.x, d.y, d.theta]
    };
    let reference = disp(20480);
    let err = |steps: usize| {
        let d = disp(steps);
        d.iter()
            .zip(reference.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max)
    };
    let e1 = err(1024);
    let e2 = err(2048);
    let ratio = e1 / e2;
    assert!(
        (3.5..=4.5).contains(&ratio),
        "error ratio {ratio:.3} (e1 = {e1:.3e}, e2 = {e2:.3e})"
    );
}

/// Reversing a symmetric gait negates its net x-displacement.
#[test]
fn reversal_negates_displacement() {
    let p = SwimmerParams::unit(Variant::Symmetric);
    let fwd = net_displacement(&integrate_gait(&circle(), &p, 4096).unwrap());
    let rev = net_displacement(&integrate_gait(&circle().reversed(), &p, 4096).unwrap());
    assert!((fwd.x + rev.x).abs() < 1e-9, "{} vs {}", fwd.x, rev.x);
}

fn rectangle_gait(x0: f64, x1: f64, y0: f64, y1: f64, knots_per_edge: usize) -> Gait {
    let mut pts = Vec::new();
    let n = knots_per_edge;
    let corners = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)];
    for e in 0..4 {
        let (ax, ay) = corners[e];
        let (bx, by) = corners[(e + 1) % 4];
        for i in 0..n {
            let s = i as f64 / n as f64;
            let t = (e as f64 + s) / 4.0;
            pts.push((t, ax + s * (bx - ax), ay + s * (by - ay)));
        }
    }
    Gait {
        kind: GaitKind::Waypoints { waypoints: pts },
        period: 1.0,
    }
}

/// Two adjacent rectangular loops sharing an edge compose to the merged
/// rectangle: the shared edge cancels in the line integrals.
#[test]
fn holonomy_additivity_over_adjacent_rectangles() {
    let p = SwimmerParams::unit(Variant::Symmetric);
    let n = 96;
    let steps = 16384;
    let left = rectangle_gait(1.0, 1.6, 0.5, 1.1, n);
    let right = rectangle_gait(1.6, 2.2, 0.5, 1.1, n);
    let merged = rectangle_gait(1.0, 2.2, 0.5, 1.1, n);
    let d = |g: &Gait| net_displacement(&integrate_gait(g, &p, steps).unwrap());
    let dl = d(&left);
    let dr = d(&right);
    let dm = d(&merged);
    let combined = dl.compose(&dr);
    assert!(
        (combined.x - dm.x).abs() < 1e-6,
        "left {} + right {} vs merged {}",
        dl.x,
        dr.x,
        dm.x
    );
    assert!(combined.y.abs() < 1e-10 && dm.y.abs() < 1e-10);
}

/// The same additivity holds for the area-integral side, where the
/// regions partition exactly.
#[test]
fn area_integral_additivity() {
    let n = 64;
    let left = rectangle_gait(1.0, 1.6, 0.5, 1.1, n);
    let right = rectangle_gait(1.6, 2.2, 0.5, 1.1, n);
    let merged = rectangle_gait(1.0, 2.2, 0.5, 1.1, n);
    let il = holonomy_area_integral(&left, 256).unwrap();
    let ir = holonomy_area_integral(&right, 256).unwrap();
    let im = holonomy_area_integral(&merged, 256).unwrap();
    assert!((il + ir - im).abs() < 1e-5, "{il} + {ir} vs {im}");
}

/// Integrating a gait whose loop runs through curvature-free territory
/// still produces zero net rotation for the symmetric swimmer at every
/// intermediate sample.
#[test]
fn symmetric_fiber_stays_one_dimensional() {
    let p = SwimmerParams::unit(Variant::Symmetric);
    let gait = Gait {
        kind: GaitKind::Ellipse {
            center: (2.0, 4.0),
            semi_axes: (0.8, 0.3),
            phase: 0.7,
        },
        period: 2.5,
    };
    let traj = integrate_gait(&gait, &p, 1024).unwrap();
    for (_, _, g) in &traj.samples {
        assert!(g.y.abs() < 1e-12 && g.theta.abs() < 1e-12);
    }
    let x = ShapePoint::new(2.0, 4.0);
    let _ = x;
}
