//! Numerical geometric mechanics of the Purcell swimmer and its symmetric
//! five-link cousin.
//!
//! The toolkit builds the local connection form of both swimmers from
//! resistive force theory, differentiates it exactly with forward-mode
//! jets, computes the curvature and the Lie-bracket controllability
//! filtration, classifies shape-space points as strongly / weakly /
//! un-controllable, and integrates prescribed gaits through the
//! reconstruction equation with an independent holonomy oracle for the
//! symmetric swimmer.

pub mod calculus;
pub mod connection;
pub mod controllability;
pub mod error;
pub mod gait;
pub mod jet;
mod linalg;
pub mod se2;
pub mod swimmer;

pub use calculus::{
    connection_jet, covariant_curvature_derivative, curvature, filtration,
    symmetric_curvature_coefficient, ConnectionJet, CurvatureValue, Filtration,
};
pub use connection::{
    assemble_connection, control_vector_fields, symmetric_closed_form, LocalConnection,
};
pub use controllability::{
    classify, classify_abelian, grid_classify, rank_of_span, Classification,
    ControllabilityVerdict, ExecutionMode, GridClassification, GridSpec, RankPolicy, SetLabel,
};
pub use error::{Error, Result};
pub use gait::{
    holonomy_area_integral, integrate_gait, integrate_gait_from, net_displacement, Gait,
    GaitDocument, GaitKind, Trajectory,
};
pub use se2::{bracket, exp, AlgebraElement, GroupElement};
pub use swimmer::{drag_matrix, force_transform, link_jacobian, ShapePoint, SwimmerParams, Variant};
