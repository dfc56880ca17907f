//! Differentiation of the connection over shape space: exact jets of A,
//! the curvature two-form, covariant derivatives of curvature, and the
//! controllability filtration h1, h2, ..., h_depth.
//!
//! Sign convention: curvature and everything above it are computed on the
//! sign-absorbed connection `Abar = -A` of the driftless control form
//! `[xdot; xi] = [I; -A] u`, i.e. `DA(e1, e2) = d1 Abar_2 - d2 Abar_1 -
//! [Abar_1, Abar_2]`. On that convention the curvature of the basic
//! swimmer at the straight shape is (-0.4691, 0, 0) and the symmetric
//! swimmer's curvature coefficient at (pi/2, pi/4) is exactly -1/8, both
//! matching the published analysis with sign.

use serde::{Deserialize, Serialize};

use crate::connection::assemble_generic;
use crate::error::{Error, Result};
use crate::jet::{Jet, Scalar};
use crate::se2::AlgebraElement;
use crate::swimmer::{ShapePoint, SwimmerParams};

/// se(2)-valued jet field: each body-velocity component is a truncated
/// Taylor polynomial over the shape chart.
#[derive(Clone)]
struct JetVec {
    c: [Jet; 3],
}

impl JetVec {
    fn order(&self) -> usize {
        self.c[0].order()
    }

    fn truncated(&self, ord: usize) -> JetVec {
        JetVec {
            c: std::array::from_fn(|i| self.c[i].truncated(ord)),
        }
    }

    fn diff(&self, axis: usize) -> JetVec {
        JetVec {
            c: std::array::from_fn(|i| self.c[i].diff(axis)),
        }
    }

    fn sub(&self, o: &JetVec) -> JetVec {
        JetVec {
            c: std::array::from_fn(|i| self.c[i].sub(&o.c[i])),
        }
    }

    fn value(&self) -> AlgebraElement {
        AlgebraElement::new(self.c[0].value(), self.c[1].value(), self.c[2].value())
    }
}

/// se(2) bracket on jet fields, pointwise in the jet algebra.
fn bracket_jets(a: &JetVec, b: &JetVec) -> JetVec {
    let x = b.c[2].mul(&a.c[1]).sub(&a.c[2].mul(&b.c[1]));
    let y = a.c[2].mul(&b.c[0]).sub(&b.c[2].mul(&a.c[0]));
    let zero = x.zero_like();
    JetVec { c: [x, y, zero] }
}

/// Columns of the sign-absorbed connection `Abar = -A` as jets of the given
/// order around `x`.
fn abar_jets(x: &ShapePoint, params: &SwimmerParams, order: usize) -> Result<[JetVec; 2]> {
    let a1 = Jet::variable(x.alpha1, 0, order);
    let a2 = Jet::variable(x.alpha2, 1, order);
    let cols = assemble_generic::<Jet>(&a1, &a2, params).map_err(|e| Error::SingularSystem {
        alpha1: x.alpha1,
        alpha2: x.alpha2,
        condition: e.condition,
    })?;
    Ok(cols.map(|col| JetVec {
        c: std::array::from_fn(|i| col[i].neg()),
    }))
}

/// Curvature field `DA(e1, e2) = d1 Abar_2 - d2 Abar_1 - [Abar_1, Abar_2]`
/// as a jet one order below the connection jets.
fn curvature_jet(abar: &[JetVec; 2]) -> JetVec {
    let ord = abar[0].order() - 1;
    let d = abar[1].diff(0).sub(&abar[0].diff(1));
    d.sub(&bracket_jets(&abar[0].truncated(ord), &abar[1].truncated(ord)))
}

/// Covariant derivative of a curvature-level field along basis direction
/// `axis`: `d_z xi - [Abar_z, xi]`, one order below `xi`.
fn covariant_diff(abar: &[JetVec; 2], xi: &JetVec, axis: usize) -> JetVec {
    let ord = xi.order() - 1;
    xi.diff(axis).sub(&bracket_jets(
        &abar[axis].truncated(ord),
        &xi.truncated(ord),
    ))
}

/// A(x) together with its first (and optionally second) partials, all
/// exact to machine precision via forward-mode jets through the full
/// assembly pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConnectionJet {
    /// A(x), sign convention `xi = -A xdot`.
    pub a: [[f64; 2]; 3],
    /// dA/dalpha1 and dA/dalpha2.
    pub d1: [[f64; 2]; 3],
    pub d2: [[f64; 2]; 3],
    /// Second partials (d11, d12, d22) when order 2 was requested.
    pub second: Option<([[f64; 2]; 3], [[f64; 2]; 3], [[f64; 2]; 3])>,
}

/// A(x) and its partials of the requested order (1 or 2).
pub fn connection_jet(
    x: &ShapePoint,
    params: &SwimmerParams,
    order: usize,
) -> Result<ConnectionJet> {
    if order != 1 && order != 2 {
        return Err(Error::InvalidJetOrder { order });
    }
    let a1 = Jet::variable(x.alpha1, 0, order);
    let a2 = Jet::variable(x.alpha2, 1, order);
    let cols = assemble_generic::<Jet>(&a1, &a2, params).map_err(|e| Error::SingularSystem {
        alpha1: x.alpha1,
        alpha2: x.alpha2,
        condition: e.condition,
    })?;
    let grab = |i: usize, j: usize, scale: f64| -> [[f64; 2]; 3] {
        std::array::from_fn(|r| std::array::from_fn(|c| scale * cols[c][r].coeff(i, j)))
    };
    Ok(ConnectionJet {
        a: grab(0, 0, 1.0),
        d1: grab(1, 0, 1.0),
        d2: grab(0, 1, 1.0),
        second: (order == 2).then(|| {
            // jet coefficients are Taylor coefficients: d^2/dx^2 = 2 c20
            (grab(2, 0, 2.0), grab(1, 1, 1.0), grab(0, 2, 2.0))
        }),
    })
}

/// The curvature two-form evaluated on the coordinate basis pair
/// (d/dalpha1, d/dalpha2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureValue {
    pub value: AlgebraElement,
}

impl CurvatureValue {
    /// Scalar coefficient for the Abelian (symmetric) case, where the
    /// curvature lies on the xi_x axis.
    pub fn coefficient(&self) -> f64 {
        self.value.xi_x
    }
}

/// Curvature `DA(e1, e2)` at `x`.
pub fn curvature(x: &ShapePoint, params: &SwimmerParams) -> Result<CurvatureValue> {
    let abar = abar_jets(x, params, 1)?;
    Ok(CurvatureValue {
        value: curvature_jet(&abar).value(),
    })
}

/// Curvature with the basis pair swapped; equals minus [`curvature`] and
/// exists so the antisymmetry can be checked by recomputation.
pub fn curvature_swapped(x: &ShapePoint, params: &SwimmerParams) -> Result<CurvatureValue> {
    let abar = abar_jets(x, params, 1)?;
    let ord = abar[0].order() - 1;
    let d = abar[0].diff(1).sub(&abar[1].diff(0));
    let v = d.sub(&bracket_jets(
        &abar[1].truncated(ord),
        &abar[0].truncated(ord),
    ));
    Ok(CurvatureValue { value: v.value() })
}

/// Closed-form curvature coefficient of the symmetric swimmer at
/// k = 1, L = 1: the dalpha1^dalpha2 coefficient of the curvature of
/// [`crate::connection::symmetric_closed_form`], namely
/// `-16 sin a1 sin a2 (cos a1 + cos a2) / (2 sin^2 a1 + 2 sin^2 a2 + 5)^2`.
/// (The bracket term vanishes: rows 2 and 3 of the connection are zero.)
pub fn symmetric_curvature_coefficient(x: &ShapePoint) -> f64 {
    let (s1, c1) = x.alpha1.sin_cos();
    let (s2, c2) = x.alpha2.sin_cos();
    let d = 2.0 * s1 * s1 + 2.0 * s2 * s2 + 5.0;
    -16.0 * s1 * s2 * (c1 + c2) / (d * d)
}

/// Covariant derivative of the curvature along coordinate direction `z`
/// (1 or 2): `d_z DA(e1,e2) - [Abar_z, DA(e1,e2)]`, with the derivative
/// taken from second-order jets.
pub fn covariant_curvature_derivative(
    x: &ShapePoint,
    params: &SwimmerParams,
    z: usize,
) -> Result<AlgebraElement> {
    if z != 1 && z != 2 {
        return Err(Error::InvalidJetOrder { order: z });
    }
    let abar = abar_jets(x, params, 2)?;
    let k = curvature_jet(&abar);
    Ok(covariant_diff(&abar, &k, z - 1).value())
}

/// The controllability filtration at a shape point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Filtration {
    /// Generator sets for h1, h2, ..., h_depth, raw and unnormalized.
    pub levels: Vec<Vec<AlgebraElement>>,
    /// Cumulative numerical ranks of h1 + ... + hj, indexed by j - 1.
    pub weak_ranks: Vec<usize>,
    /// Cumulative numerical ranks of h2 + ... + hj (zero for j = 1).
    pub strong_ranks: Vec<usize>,
}

impl Filtration {
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn weak_rank(&self) -> usize {
        *self.weak_ranks.last().unwrap()
    }

    pub fn strong_rank(&self) -> usize {
        *self.strong_ranks.last().unwrap()
    }
}

/// Compute the filtration to the given depth (>= 1).
///
/// Level 1 holds the columns of A(x); level 2 the curvature generator;
/// level 3 its two covariant derivatives; deeper levels follow the
/// recursion `d_z xi - [Abar_z, xi]` over the previous level plus brackets
/// of earlier generators against the previous level. Every generator is
/// tracked as a jet field over shape space (not a frozen vector), so the
/// directional-derivative terms are exact; an order-(depth-1) jet feeds
/// the whole recursion.
pub fn filtration(x: &ShapePoint, params: &SwimmerParams, depth: usize) -> Result<Filtration> {
    if depth < 1 {
        return Err(Error::InvalidDepth { depth, min: 1 });
    }
    let order = depth.max(2) - 1;
    let abar = abar_jets(x, params, order)?;
    // level 1: columns of the stored A = -Abar
    let level1: Vec<AlgebraElement> = (0..2).map(|j| -abar[j].value()).collect();
    let mut jet_levels: Vec<Vec<JetVec>> = Vec::new();
    if depth >= 2 {
        jet_levels.push(vec![curvature_jet(&abar)]);
    }
    for lvl in 3..=depth {
        let prev = &jet_levels[lvl - 3];
        let target_ord = prev[0].order() - 1;
        let mut gens: Vec<JetVec> = Vec::new();
        for xi in prev {
            for axis in 0..2 {
                gens.push(covariant_diff(&abar, xi, axis));
            }
        }
        for (ei, earlier) in jet_levels[..lvl - 2].iter().enumerate() {
            for (hi, eta) in earlier.iter().enumerate() {
                for (xi_i, xi) in jet_levels[lvl - 3].iter().enumerate() {
                    if ei == lvl - 3 && hi == xi_i {
                        continue; // [xi, xi] = 0
                    }
                    gens.push(bracket_jets(
                        &eta.truncated(target_ord),
                        &xi.truncated(target_ord),
                    ));
                }
            }
        }
        jet_levels.push(gens);
    }
    let mut levels = vec![level1];
    levels.extend(
        jet_levels
            .iter()
            .map(|gens| gens.iter().map(|g| g.value()).collect::<Vec<_>>()),
    );
    let mut weak_ranks = Vec::with_capacity(depth);
    let mut strong_ranks = Vec::with_capacity(depth);
    let mut weak_acc: Vec<AlgebraElement> = Vec::new();
    let mut strong_acc: Vec<AlgebraElement> = Vec::new();
    for (j, level) in levels.iter().enumerate() {
        weak_acc.extend_from_slice(level);
        if j >= 1 {
            strong_acc.extend_from_slice(level);
        }
        weak_ranks.push(crate::controllability::rank_of_span(&weak_acc));
        strong_ranks.push(crate::controllability::rank_of_span(&strong_acc));
    }
    Ok(Filtration {
        levels,
        weak_ranks,
        strong_ranks,
    })
}
