//! Joint spectra of restricted Laplace eigenfunctions on model geometries.
//!
//! For a model pair — a flat torus with a coordinate subtorus, or the round
//! 2-sphere with a latitude circle or meridian — this crate enumerates the
//! joint spectrum `(μ_k, λ_j)` of the two Laplacians together with the
//! norm-squared Fourier coefficients `|∫_H e_j ψ̄_k dV_H|²` of restricted
//! eigenfunctions, and evaluates the asymptotic statements those weights
//! satisfy at desk scale:
//!
//! * cone sums over `μ_k/λ_j ∈ [a, b)`, `λ_j ≤ λ`, against their `λ^n` main
//!   term ([`spectral::cone_sum`]);
//! * slowly thickening ladder sums `|μ_k - cλ_j| ≤ w(λ)` against their
//!   `w(λ) λ^{n-1}` main term ([`spectral::ladder_sum`]);
//! * the empirical ratio measure and its weak-* limit density
//!   ([`spectral::empirical_measure`], [`spectral::limit_density`]);
//! * mollified densities `N*ρ` along rays against their pointwise prediction
//!   ([`spectral::smoothed_density`]);
//! * a generic multidimensional Tauberian inequality engine over atomic
//!   measures, mollifiers, order functions, and planar regions
//!   ([`tauberian`]);
//! * exact lattice-point counting in balls, cones, and strips — the integer
//!   oracle for every torus sum — plus the constant-width jump scanner
//!   ([`lattice`]).
//!
//! Heavy sums are data parallel under the default `parallel` feature (rayon)
//! and fall back to sequential loops without it; either way reductions are
//! compensated and partition-ordered, so results are identical bit for bit.

pub mod error;
pub mod geometry;
pub mod lattice;
pub mod mollifier;
pub mod quadrature;
pub mod region;
pub mod report;
pub mod spectral;
pub mod summation;
pub mod tauberian;

pub use error::{Error, Result};
pub use geometry::{
    enumerate_joint_spectrum, enumerate_joint_spectrum_with_budget, GeometryPair, JointEigenpair,
    JointSpectrum,
};
pub use mollifier::Mollifier;
pub use region::{ConeRegion, RatioBound, StripRegion};
pub use report::SumReport;
