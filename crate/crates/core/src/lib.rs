//! Dynamics of the planar quasiregular maps `f(z) = h_{K,theta}(z)^2 + c`,
//! where `h_{K,theta}` stretches the plane by `K` in the direction
//! `e^{i theta}`.
//!
//! - [`stretch`]: the affine stretch, its inverse, polar form, dilatation,
//!   and the winding maps.
//! - [`canonical`]: reduction of any quadratic composed with a stretch to
//!   the unique form `h_{K,theta}^2 + C`.
//! - [`dynamics`]: orbits, certified bailouts, Mandelbrot membership and
//!   connectivity of the non-escaping set.
//! - [`rays`]: fixed rays of `h^2` and the real segment of the Mandelbrot
//!   analogue.
//! - [`render`]: escape-time grids, band-parallel rendering, PGM output.
//!
//! All numerics are generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar to `f64`.

pub mod canonical;
pub mod dynamics;
mod error;
pub mod rays;
pub mod render;
mod scalar;
pub mod stretch;

pub use error::{Error, Result};
pub use scalar::{normalize_angle, ComplexPoint, Real};

pub use canonical::{canonicalize, in_fundamental_domain, reduce_to_domain};
pub use dynamics::{
    connectivity_verdict, escape_radius_critical, iterate_orbit, julia_bailout, mandelbrot_member, Connectivity,
    Verdict,
};
pub use rays::{fixed_ray_candidates, ray_angle_map, real_segment};
pub use render::{encode_pgm, render_tiled, EscapeGrid, GammaMap, GridSpec, RenderJob};
pub use stretch::{apply_stretch, apply_stretch_polar, dilatation, inverse_stretch, winding_map};

pub type Point = ComplexPoint<f64>;
pub type StretchParams64 = stretch::StretchParams<f64>;
pub type WindingParams64 = stretch::WindingParams<f64>;
pub type QAMap64 = dynamics::QAMap<f64>;
pub type OrbitClassification64 = dynamics::OrbitClassification<f64>;
pub type GeneralQuadComposition64 = canonical::GeneralQuadComposition<f64>;
pub type CanonicalTriple64 = canonical::CanonicalTriple<f64>;
pub type AffineConjugacy64 = canonical::AffineConjugacy<f64>;
pub type FixedRay64 = rays::FixedRay<f64>;
pub type RealSegment64 = rays::RealSegment<f64>;
pub type Window64 = render::Window<f64>;
pub type RenderJob64 = render::RenderJob<f64>;

pub type StretchParams32 = stretch::StretchParams<f32>;
pub type QAMap32 = dynamics::QAMap<f32>;
pub type Window32 = render::Window<f32>;
