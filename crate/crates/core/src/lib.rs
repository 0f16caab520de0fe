//! Rotational constant mean curvature surfaces in the upper half-space
//! model, and the isoperimetric problem in a slab bounded by two
//! horospheres.
//!
//! The crate is organised bottom-up: [`geometry`] holds the model,
//! [`profile`] the generating curves, [`tangency`] their perpendicular
//! contacts with horospheres, [`measure`] area and volume integrals, and
//! [`solver`] the candidate enumeration.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bracket;
pub mod error;
pub mod geometry;
pub mod measure;
pub mod profile;
pub mod quad;
pub mod solver;
pub mod tangency;

pub use error::{Error, Result};
pub use geometry::{
    apply_homothety, cyl_to_cartesian, hyperbolic_distance, invert_through_unit_hemisphere, translate_horizontal,
    CylCoords, HalfSpacePoint, SlabSpec,
};
pub use measure::{
    area_cartesian, area_natural, mean_curvature_fd, volume_contour, Arc, MeridianContour, MeridianCurve,
};
pub use profile::{
    lambda_dot, lambda_of_s, ode_residual, period, profile_point, profile_polyline, u_dot_squared, u_squared,
    FamilyParams, ProfileJet, ProfileSample, Regime,
};
pub use quad::Quadrature;
pub use solver::{
    dome_candidates, floating_spheres, sweep_candidates, sweep_profiles, sweep_profiles_with, tube_for_slab, Candidate,
    CandidateKind, DomeSide, IsoPoint, SweepOptions, TheoremClass,
};
pub use tangency::{
    admissible_tangencies, algebraic_roots, classify_family, direction_of, discriminant, slab_admissibility,
    Admissibility, Direction, FamilyKind, OtherCase, RejectReason, TangencyPoint, Window,
};
