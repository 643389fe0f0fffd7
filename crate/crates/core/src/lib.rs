//! Quantitative Steinitz and Helly point selection.
//!
//! Given a finite point set whose convex hull contains a ball about the
//! origin, the [`steinitz`] module selects at most `2d` of the points that
//! still contain a ball of quantified radius. The [`pipeline`] module lifts
//! this to the sphere: from a set whose spherical hull contains a cap about
//! the north pole it selects at most `2d` points whose hull still contains a
//! smaller cap, using central projection and polar duality.
//!
//! Every selection comes with a certificate that can be re-checked by the
//! independent routines in [`oracles`]. File formats, instance generators and
//! certificate verification used by the command-line tool live in
//! [`workbench`].

pub mod error;
pub mod euclid;
pub mod linalg;
mod lp;
pub mod oracles;
pub mod pipeline;
pub mod sphere;
pub mod steinitz;
pub mod workbench;

pub use error::{Error, Result};
pub use euclid::{
    caratheodory_select, containment_radius, contains_origin_interior, polar_max_norm, polar_points, EuclideanPointSet,
    Halfspace, OriginBall, PolarExtent,
};
pub use oracles::RandomSource;
pub use pipeline::{
    certified_cap_radius, gamma_consistency_probe, select_spherical, tan_bounds_hold, CaseTag, SphericalCertificate,
};
pub use sphere::{
    cap_to_ball_radius, central_project, in_spherical_hull, largest_cap_about_axis, lift_north, spolar_empty, Cap,
    ConeRep, SphericalPointSet,
};
pub use steinitz::{qht_select, select_exact, select_greedy, Method, RBound, SelectionConfig, SteinitzCertificate};

/// Radius of the ball that must fit around the origin for it to count as an
/// interior point.
pub const INTERIOR_MARGIN: f64 = 1e-9;

/// Absolute slack on radius and angle comparisons against a premise.
pub const PREMISE_TOLERANCE: f64 = 1e-9;

/// Largest point count accepted by facet, vertex and extreme-ray enumeration.
pub const MAX_ENUM_POINTS: usize = 40;

/// Largest dimension accepted by facet, vertex and extreme-ray enumeration.
pub const MAX_ENUM_DIM: usize = 6;
