//! Closed shape-space gaits, the reconstruction-equation integrator, and
//! the curvature area-integral holonomy oracle for the symmetric swimmer.

use serde::{Deserialize, Serialize};

use crate::calculus::symmetric_curvature_coefficient;
use crate::connection::assemble_connection;
use crate::error::{Error, Result};
use crate::se2::{exp, GroupElement};
use crate::swimmer::{ShapePoint, SwimmerParams, Variant};

/// A closed, periodic curve in shape space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gait {
    #[serde(flatten)]
    pub kind: GaitKind,
    /// Period in time units.
    pub period: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GaitKind {
    /// `center + (a cos(w + phase), b sin(w + phase))`, `w = 2 pi t / T`.
    /// Positive semi-axes give a counterclockwise loop; negating one axis
    /// reverses the orientation.
    Ellipse {
        center: (f64, f64),
        semi_axes: (f64, f64),
        phase: f64,
    },
    /// Knots `(time, alpha1, alpha2)` with periodic cubic interpolation,
    /// closed by construction over the period.
    Waypoints { waypoints: Vec<(f64, f64, f64)> },
}

/// Top-level gait document: the on-disk format consumed by the CLI.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaitDocument {
    pub variant: Variant,
    #[serde(default = "one")]
    pub k: f64,
    #[serde(default = "one", rename = "L")]
    pub l: f64,
    pub gait: Gait,
}

fn one() -> f64 {
    1.0
}

impl GaitDocument {
    pub fn params(&self) -> Result<SwimmerParams> {
        SwimmerParams::new(self.k, self.l, self.variant)
    }
}

impl Gait {
    pub fn circle(center: (f64, f64), radius: f64, period: f64) -> Gait {
        Gait {
            kind: GaitKind::Ellipse {
                center,
                semi_axes: (radius, radius),
                phase: 0.0,
            },
            period,
        }
    }

    /// The same loop traversed backwards in time.
    pub fn reversed(&self) -> Gait {
        let kind = match &self.kind {
            GaitKind::Ellipse {
                center,
                semi_axes,
                phase,
            } => GaitKind::Ellipse {
                center: *center,
                semi_axes: (semi_axes.0, -semi_axes.1),
                phase: -phase,
            },
            GaitKind::Waypoints { waypoints } => {
                let t = self.period;
                let mut pts: Vec<(f64, f64, f64)> = waypoints
                    .iter()
                    .map(|&(ti, a1, a2)| {
                        let mut tr = t - ti;
                        if tr >= t {
                            tr -= t;
                        }
                        (tr, a1, a2)
                    })
                    .collect();
                pts.sort_by(|a, b| a.0.total_cmp(&b.0));
                GaitKind::Waypoints { waypoints: pts }
            }
        };
        Gait {
            kind,
            period: self.period,
        }
    }

    /// Validate and build an evaluable path.
    pub fn compile(&self) -> Result<GaitPath> {
        if self.period <= 0.0 || !self.period.is_finite() {
            return Err(Error::MalformedGait(format!(
                "period must be positive and finite, got {}",
                self.period
            )));
        }
        let path = match &self.kind {
            GaitKind::Ellipse {
                center,
                semi_axes,
                phase,
            } => {
                for (name, v) in [
                    ("center.0", center.0),
                    ("center.1", center.1),
                    ("semi_axes.0", semi_axes.0),
                    ("semi_axes.1", semi_axes.1),
                    ("phase", *phase),
                ] {
                    if !v.is_finite() {
                        return Err(Error::MalformedGait(format!("field {name} is not finite")));
                    }
                }
                GaitPath {
                    period: self.period,
                    form: PathForm::Ellipse {
                        center: *center,
                        semi_axes: *semi_axes,
                        phase: *phase,
                    },
                }
            }
            GaitKind::Waypoints { waypoints } => {
                if waypoints.len() < 3 {
                    return Err(Error::MalformedGait(format!(
                        "waypoints need at least 3 knots, got {}",
                        waypoints.len()
                    )));
                }
                for w in waypoints.windows(2) {
                    if w[0].0 >= w[1].0 || w[0].0.is_nan() || w[1].0.is_nan() {
                        return Err(Error::MalformedGait(format!(
                            "waypoint times must be strictly increasing ({} then {})",
                            w[0].0, w[1].0
                        )));
                    }
                }
                let first = waypoints.first().unwrap();
                let last = waypoints.last().unwrap();
                if first.0 < 0.0 || last.0 >= self.period {
                    return Err(Error::MalformedGait(format!(
                        "waypoint times must lie in [0, period); got range [{}, {}] with period {}",
                        first.0, last.0, self.period
                    )));
                }
                if waypoints.iter().any(|(t, a1, a2)| {
                    !t.is_finite() || !a1.is_finite() || !a2.is_finite()
                }) {
                    return Err(Error::MalformedGait("non-finite waypoint entry".into()));
                }
                let times: Vec<f64> = waypoints.iter().map(|w| w.0).collect();
                let s1 = PeriodicSpline::fit(
                    &times,
                    &waypoints.iter().map(|w| w.1).collect::<Vec<_>>(),
                    self.period,
                );
                let s2 = PeriodicSpline::fit(
                    &times,
                    &waypoints.iter().map(|w| w.2).collect::<Vec<_>>(),
                    self.period,
                );
                GaitPath {
                    period: self.period,
                    form: PathForm::Spline(Box::new((s1, s2))),
                }
            }
        };
        let gap = {
            let a = path.shape_at(0.0);
            let b = path.shape_at(self.period);
            ((a.alpha1 - b.alpha1).powi(2) + (a.alpha2 - b.alpha2).powi(2)).sqrt()
        };
        if gap > 1e-12 {
            return Err(Error::NonClosedGait { gap });
        }
        Ok(path)
    }
}

/// Compiled, evaluable gait.
#[derive(Debug, Clone)]
pub struct GaitPath {
    period: f64,
    form: PathForm,
}

#[derive(Debug, Clone)]
enum PathForm {
    Ellipse {
        center: (f64, f64),
        semi_axes: (f64, f64),
        phase: f64,
    },
    Spline(Box<(PeriodicSpline, PeriodicSpline)>),
}

impl GaitPath {
    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn shape_at(&self, t: f64) -> ShapePoint {
        match &self.form {
            PathForm::Ellipse {
                center,
                semi_axes,
                phase,
            } => {
                let w = std::f64::consts::TAU * (t.rem_euclid(self.period)) / self.period + phase;
                ShapePoint::new(center.0 + semi_axes.0 * w.cos(), center.1 + semi_axes.1 * w.sin())
            }
            PathForm::Spline(s) => ShapePoint::new(s.0.eval(t).0, s.1.eval(t).0),
        }
    }

    pub fn velocity_at(&self, t: f64) -> (f64, f64) {
        match &self.form {
            PathForm::Ellipse {
                semi_axes, phase, ..
            } => {
                let rate = std::f64::consts::TAU / self.period;
                let w = std::f64::consts::TAU * (t.rem_euclid(self.period)) / self.period + phase;
                (-semi_axes.0 * w.sin() * rate, semi_axes.1 * w.cos() * rate)
            }
            PathForm::Spline(s) => (s.0.eval(t).1, s.1.eval(t).1),
        }
    }
}

/// Natural periodic cubic spline through `(times[i], values[i])` with the
/// given period. Second derivatives solve the cyclic tridiagonal smoothness
/// system (Sherman-Morrison reduction to two ordinary tridiagonal solves).
#[derive(Debug, Clone)]
struct PeriodicSpline {
    times: Vec<f64>,
    values: Vec<f64>,
    second: Vec<f64>,
    period: f64,
}

impl PeriodicSpline {
    fn fit(times: &[f64], values: &[f64], period: f64) -> PeriodicSpline {
        let n = times.len();
        let h: Vec<f64> = (0..n)
            .map(|i| {
                if i + 1 < n {
                    times[i + 1] - times[i]
                } else {
                    period - times[i] + times[0]
                }
            })
            .collect();
        let prev = |i: usize| (i + n - 1) % n;
        let mut a = vec![0.0; n];
        let mut b = vec![0.0; n];
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        for i in 0..n {
            let hp = h[prev(i)];
            let hi = h[i];
            a[i] = hp / 6.0;
            b[i] = (hp + hi) / 3.0;
            c[i] = hi / 6.0;
            let vn = values[(i + 1) % n];
            let vp = values[prev(i)];
            d[i] = (vn - values[i]) / hi - (values[i] - vp) / hp;
        }
        let second = solve_cyclic_tridiagonal(&a, &b, &c, &d);
        PeriodicSpline {
            times: times.to_vec(),
            values: values.to_vec(),
            second,
            period,
        }
    }

    /// Value and first derivative at time `t` (periodically extended).
    fn eval(&self, t: f64) -> (f64, f64) {
        let n = self.times.len();
        let tw = (t - self.times[0]).rem_euclid(self.period) + self.times[0];
        // find the interval [t_i, t_{i+1}) containing tw
        let i = match self
            .times
            .binary_search_by(|probe| probe.total_cmp(&tw))
        {
            Ok(i) => i,
            Err(0) => n - 1, // before first knot: wrap interval
            Err(i) => i - 1,
        };
        let t0 = self.times[i];
        let (t1, v1, m1) = if i + 1 < n {
            (self.times[i + 1], self.values[i + 1], self.second[i + 1])
        } else {
            (
                self.times[0] + self.period,
                self.values[0],
                self.second[0],
            )
        };
        let h = t1 - t0;
        let (v0, m0) = (self.values[i], self.second[i]);
        let du = tw - t0;
        let dd = t1 - tw;
        let value = m0 * dd * dd * dd / (6.0 * h)
            + m1 * du * du * du / (6.0 * h)
            + (v0 / h - m0 * h / 6.0) * dd
            + (v1 / h - m1 * h / 6.0) * du;
        let deriv = -m0 * dd * dd / (2.0 * h) + m1 * du * du / (2.0 * h) - (v0 / h - m0 * h / 6.0)
            + (v1 / h - m1 * h / 6.0);
        (value, deriv)
    }
}

/// Thomas solve of a tridiagonal system (no corners).
fn solve_tridiagonal(a: &[f64], b: &[f64], c: &[f64], d: &[f64]) -> Vec<f64> {
    let n = b.len();
    let mut cp = vec![0.0; n];
    let mut dp = vec![0.0; n];
    cp[0] = c[0] / b[0];
    dp[0] = d[0] / b[0];
    for i in 1..n {
        let m = b[i] - a[i] * cp[i - 1];
        cp[i] = c[i] / m;
        dp[i] = (d[i] - a[i] * dp[i - 1]) / m;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = dp[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = dp[i] - cp[i] * x[i + 1];
    }
    x
}

/// Solve `a_i x_{i-1} + b_i x_i + c_i x_{i+1} = d_i` with cyclic indices.
fn solve_cyclic_tridiagonal(a: &[f64], b: &[f64], c: &[f64], d: &[f64]) -> Vec<f64> {
    let n = b.len();
    assert!(n >= 3, "cyclic tridiagonal needs n >= 3");
    let gamma = -b[0];
    let mut bb = b.to_vec();
    bb[0] = b[0] - gamma;
    bb[n - 1] = b[n - 1] - a[0] * c[n - 1] / gamma;
    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = c[n - 1];
    let y = solve_tridiagonal(a, &bb, c, d);
    let z = solve_tridiagonal(a, &bb, c, &u);
    let fact = (y[0] + a[0] * y[n - 1] / gamma) / (1.0 + z[0] + a[0] * z[n - 1] / gamma);
    (0..n).map(|i| y[i] - fact * z[i]).collect()
}

/// One reconstructed trajectory: `(t, shape, group)` samples at uniform
/// steps, with `samples[0].2` the identity (displacement is relative to
/// the start).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub samples: Vec<(f64, ShapePoint, GroupElement)>,
    pub steps: usize,
    /// Integration scheme identifier.
    pub integrator: String,
}

const INTEGRATOR_NAME: &str = "midpoint-commutator-free-order-2";

/// Integrate the reconstruction equation `xi = -A(x) xdot`,
/// `g' = g hat(xi)` over one gait period with a fixed-step midpoint
/// commutator-free Lie-group scheme: per step `g <- g * exp(dt * xi_mid)`.
/// The group element never leaves SE(2) by construction.
pub fn integrate_gait(gait: &Gait, params: &SwimmerParams, steps: usize) -> Result<Trajectory> {
    integrate_gait_from(gait, params, steps, GroupElement::identity())
}

/// Same as [`integrate_gait`] but starting from an arbitrary group element;
/// by left invariance the result is `g0` composed with the
/// identity-started trajectory.
pub fn integrate_gait_from(
    gait: &Gait,
    params: &SwimmerParams,
    steps: usize,
    g0: GroupElement,
) -> Result<Trajectory> {
    if steps < 8 {
        return Err(Error::TooFewSteps { steps });
    }
    let path = gait.compile()?;
    let dt = path.period() / steps as f64;
    let mut samples = Vec::with_capacity(steps + 1);
    let mut g = g0;
    samples.push((0.0, path.shape_at(0.0), g));
    for i in 0..steps {
        let tm = (i as f64 + 0.5) * dt;
        let xm = path.shape_at(tm);
        let (v1, v2) = path.velocity_at(tm);
        let conn = assemble_connection(&xm, params)?;
        let xi = conn.body_velocity(v1, v2);
        g = g.compose(&exp(&xi.scale(dt)));
        let t = (i + 1) as f64 * dt;
        samples.push((t, path.shape_at(t), g));
    }
    Ok(Trajectory {
        samples,
        steps,
        integrator: INTEGRATOR_NAME.to_string(),
    })
}

/// Net displacement of a trajectory: `first^{-1} * last`.
pub fn net_displacement(traj: &Trajectory) -> GroupElement {
    let first = traj.samples.first().expect("trajectory is nonempty").2;
    let last = traj.samples.last().unwrap().2;
    first.inverse().compose(&last)
}

/// Signed area integral of the symmetric swimmer's curvature coefficient
/// over the region enclosed by the gait, positive for counterclockwise
/// loops. For a counterclockwise loop this equals the net x-displacement
/// of the integrated gait (k = 1, L = 1); the identity is exercised by the
/// cross-oracle tests.
///
/// Ellipse gaits use a tensor-product midpoint rule in polar coordinates
/// (smooth periodic integrand, so the angular direction converges
/// spectrally); waypoint gaits use a scanline rule over the sampled
/// polygon. Self-intersecting waypoint loops are rejected.
pub fn holonomy_area_integral(gait: &Gait, resolution: usize) -> Result<f64> {
    if resolution < 2 {
        return Err(Error::InvalidResolution { resolution });
    }
    let path = gait.compile()?;
    match &gait.kind {
        GaitKind::Ellipse { center, semi_axes, .. } => {
            let (a, b) = (semi_axes.0.abs(), semi_axes.1.abs());
            if a == 0.0 || b == 0.0 {
                return Ok(0.0);
            }
            let orientation = (semi_axes.0 * semi_axes.1).signum();
            let dr = 1.0 / resolution as f64;
            let dth = std::f64::consts::TAU / resolution as f64;
            let mut acc = 0.0;
            for i in 0..resolution {
                let rho = (i as f64 + 0.5) * dr;
                let mut ring = 0.0;
                for j in 0..resolution {
                    let th = (j as f64 + 0.5) * dth;
                    let x = ShapePoint::new(
                        center.0 + a * rho * th.cos(),
                        center.1 + b * rho * th.sin(),
                    );
                    ring += symmetric_curvature_coefficient(&x);
                }
                acc += ring * rho;
            }
            Ok(orientation * acc * a * b * dr * dth)
        }
        GaitKind::Waypoints { .. } => {
            // odd sample count: crossings land on segment interiors even
            // when the loop is symmetric about a sample point
            let m = (4 * resolution).max(64) + 1;
            let poly: Vec<(f64, f64)> = (0..m)
                .map(|i| {
                    let x = path.shape_at(path.period() * i as f64 / m as f64);
                    (x.alpha1, x.alpha2)
                })
                .collect();
            if polygon_self_intersects(&poly) {
                return Err(Error::SelfIntersectingLoop);
            }
            let signed_area = shoelace(&poly);
            if signed_area.abs() < 1e-14 {
                return Ok(0.0);
            }
            let orientation = signed_area.signum();
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for &(x, _) in &poly {
                lo = lo.min(x);
                hi = hi.max(x);
            }
            let dx = (hi - lo) / resolution as f64;
            let mut acc = 0.0;
            for i in 0..resolution {
                let x = lo + (i as f64 + 0.5) * dx;
                let mut crossings = scanline_crossings(&poly, x);
                crossings.sort_by(|p, q| p.total_cmp(q));
                for pair in crossings.chunks_exact(2) {
                    let (y0, y1) = (pair[0], pair[1]);
                    let dy = (y1 - y0) / resolution as f64;
                    for j in 0..resolution {
                        let y = y0 + (j as f64 + 0.5) * dy;
                        acc += symmetric_curvature_coefficient(&ShapePoint::new(x, y)) * dy;
                    }
                }
            }
            Ok(orientation * acc * dx)
        }
    }
}

fn shoelace(poly: &[(f64, f64)]) -> f64 {
    let n = poly.len();
    let mut s = 0.0;
    for i in 0..n {
        let (x0, y0) = poly[i];
        let (x1, y1) = poly[(i + 1) % n];
        s += x0 * y1 - x1 * y0;
    }
    s / 2.0
}

/// Crossing ordinates of polygon edges with the vertical line `x`,
/// half-open in x so shared vertices count once.
fn scanline_crossings(poly: &[(f64, f64)], x: f64) -> Vec<f64> {
    let n = poly.len();
    let mut ys = Vec::new();
    for i in 0..n {
        let (x0, y0) = poly[i];
        let (x1, y1) = poly[(i + 1) % n];
        if (x0 <= x && x1 > x) || (x1 <= x && x0 > x) {
            let t = (x - x0) / (x1 - x0);
            ys.push(y0 + t * (y1 - y0));
        }
    }
    ys
}

fn segments_properly_intersect(
    p0: (f64, f64),
    p1: (f64, f64),
    q0: (f64, f64),
    q1: (f64, f64),
) -> bool {
    let orient = |a: (f64, f64), b: (f64, f64), c: (f64, f64)| -> f64 {
        (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
    };
    let d1 = orient(q0, q1, p0);
    let d2 = orient(q0, q1, p1);
    let d3 = orient(p0, p1, q0);
    let d4 = orient(p0, p1, q1);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

fn polygon_self_intersects(poly: &[(f64, f64)]) -> bool {
    let n = poly.len();
    for i in 0..n {
        let a0 = poly[i];
        let a1 = poly[(i + 1) % n];
        for j in i + 1..n {
            // skip adjacent segments (they share an endpoint)
            if j == i || (j + 1) % n == i || (i + 1) % n == j {
                continue;
            }
            let b0 = poly[j];
            let b1 = poly[(j + 1) % n];
            if segments_properly_intersect(a0, a1, b0, b1) {
                return true;
            }
        }
    }
    false
}
