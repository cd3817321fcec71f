//! Numerical verification of Pohozaev-type identities for half-harmonic maps
//! on the circle and the line, and for harmonic maps in the plane.
//!
//! Circle maps live on uniform grids ([`GridMap1D`]) and are handled
//! spectrally; planar maps ([`zoo::PlanarMap`]) carry closed-form
//! derivatives and are integrated by tensor quadrature. Every verifier
//! returns [`IdentityReport`]s.

pub mod conformal;
pub mod error;
pub mod flow;
pub mod identities;
pub mod kernels;
pub mod planar;
pub mod poly;
pub mod quadrature;
pub mod report;
pub mod spectral;
pub mod zoo;

pub use error::{Error, Result};
pub use report::IdentityReport;
pub use spectral::{analyze, synthesize, GridMap1D, Spectrum};
