//! Numerical laboratory for conformal eigenvalue bounds on surfaces.
//!
//! The crate provides the building blocks for renormalized, folded trial
//! functions on the sphere and the machinery to test the resulting
//! eigenvalue inequalities on discretized closed surfaces:
//!
//! - [`sphere`]: Möbius automorphisms of Sⁿ, spherical caps, reflections,
//!   folding maps and a numerical degree estimator on S².
//! - [`measure`]: weighted atomic measures on Sⁿ with pushforwards and the
//!   half-mass admissibility test.
//! - [`hersch`]: the center-of-mass renormalization solver (unique ξ with
//!   ∫ φ_ξ dμ = 0).
//! - [`mesh`]: triangulated models of the canonical surfaces (sphere, flat
//!   tori, Klein bottle of revolution, projective plane) carrying intrinsic
//!   per-triangle edge lengths and conformal factors.
//! - [`fem`]: P1 cotangent stiffness / mass assembly and generalized
//!   symmetric eigensolvers (dense and shift-invert Lanczos).
//! - [`vc`]: conformal-volume estimation over the Möbius ball.
//! - [`lab`]: end-to-end second-eigenvalue bound verification via cap
//!   search and renormalized folded trial functions.
//! - [`tables`]: closed-form bound tables (Γ, complete elliptic E, genus
//!   bounds).
//!
//! All exported computations are deterministic for a fixed seed: parallel
//! loops collect in index order and reductions use fixed chunking (see
//! [`par`]).

pub mod fem;
pub mod hersch;
pub mod lab;
pub mod measure;
pub mod mesh;
pub mod par;
pub mod sphere;
pub mod tables;
pub mod vc;

pub use measure::DiscreteMeasure;
pub use mesh::{ImmersionSamples, SurfaceMesh, Topology};
pub use sphere::{BallPoint, SphericalCap, UnitVector};
