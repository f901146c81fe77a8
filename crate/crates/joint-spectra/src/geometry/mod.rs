//! Model geometry pairs and their joint spectra.
//!
//! A [`GeometryPair`] is a submanifold-in-manifold model whose joint spectrum
//! (eigenfrequency pairs of the two Laplacians, weighted by norm-squared
//! Fourier coefficients of restricted eigenfunctions) is known in closed or
//! spectrally exact form:
//!
//! * `Torus { n, d }` — the flat torus `(ℝ/2πℤ)^n` with the coordinate plane
//!   `T^d × 0`. Every exponential restricts to a single matching frequency,
//!   with weight `(2π)^{-(n-d)}`.
//! * `SphereLatitude { phi0 }` — the round 2-sphere with the latitude circle
//!   at polar angle `phi0`; `Y_l^m` has a single nonzero coefficient there.
//! * `SphereMeridian` — the great circle through the poles; all coefficients
//!   in the degree range can be nonzero and are computed by trapezoid
//!   quadrature, exact for trigonometric polynomials.

pub mod legendre;
mod sphere;
mod torus;

pub(crate) use torus::{last_coord_bound, lattice_ball_estimate};

pub use sphere::{latitude_l_max, latitude_weight, meridian_weight, sphere_eigenvalue};

use crate::error::{Error, Result};
use crate::summation::{combine_partials, partition_map, KahanSum};

/// Default cap on enumerated joint-spectrum points (resource guard).
pub const DEFAULT_POINT_BUDGET: u64 = 1_000_000_000;

/// Pairs with weight at or below this floor are dropped from enumeration
/// output; keeps streams finite and free of denormal noise. Parseval-type
/// tests must budget for it.
pub const WEIGHT_FLOOR: f64 = 1e-18;

/// Maximum supported ambient dimension for the torus model.
pub const MAX_AMBIENT_DIM: usize = 8;

/// A model (M, H) pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeometryPair {
    /// `M = (ℝ/2πℤ)^n`, `H = T^d × 0`.
    Torus { n: u32, d: u32 },
    /// `M = S²`, `H` the latitude circle at polar angle `phi0 ∈ (0, π)`.
    SphereLatitude { phi0: f64 },
    /// `M = S²`, `H` a great circle through both poles.
    SphereMeridian,
}

impl GeometryPair {
    pub fn torus(n: u32, d: u32) -> Result<Self> {
        if !(2..=MAX_AMBIENT_DIM as u32).contains(&n) {
            return Err(Error::invalid(format!(
                "torus ambient dimension n={n} outside 2..={MAX_AMBIENT_DIM}"
            )));
        }
        if d == 0 || d >= n {
            return Err(Error::invalid(format!(
                "torus submanifold dimension d={d} outside 1..={}",
                n - 1
            )));
        }
        Ok(GeometryPair::Torus { n, d })
    }

    pub fn sphere_latitude(phi0: f64) -> Result<Self> {
        if !(phi0 > 0.0 && phi0 < std::f64::consts::PI) {
            return Err(Error::invalid(format!(
                "latitude angle phi0={phi0} outside (0, pi)"
            )));
        }
        Ok(GeometryPair::SphereLatitude { phi0 })
    }

    pub fn sphere_meridian() -> Self {
        GeometryPair::SphereMeridian
    }

    /// Ambient dimension n.
    pub fn ambient_dim(&self) -> u32 {
        match self {
            GeometryPair::Torus { n, .. } => *n,
            _ => 2,
        }
    }

    /// Submanifold dimension d.
    pub fn submanifold_dim(&self) -> u32 {
        match self {
            GeometryPair::Torus { d, .. } => *d,
            _ => 1,
        }
    }

    /// d-dimensional volume of H.
    pub fn vol_h(&self) -> f64 {
        use std::f64::consts::TAU;
        match self {
            GeometryPair::Torus { d, .. } => TAU.powi(*d as i32),
            GeometryPair::SphereLatitude { phi0 } => TAU * phi0.sin(),
            GeometryPair::SphereMeridian => TAU,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GeometryPair::Torus { .. } => "torus",
            GeometryPair::SphereLatitude { .. } => "sphere-latitude",
            GeometryPair::SphereMeridian => "sphere-meridian",
        }
    }
}

/// Integer multi-index label of an eigenfunction.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Label {
    len: u8,
    coords: [i32; MAX_AMBIENT_DIM],
}

impl Label {
    pub fn new(coords: &[i32]) -> Self {
        assert!(coords.len() <= MAX_AMBIENT_DIM);
        let mut c = [0i32; MAX_AMBIENT_DIM];
        c[..coords.len()].copy_from_slice(coords);
        Label {
            len: coords.len() as u8,
            coords: c,
        }
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.coords[..self.len as usize]
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Sum of squares of the first `k` coordinates.
    pub fn prefix_square_sum(&self, k: usize) -> u64 {
        self.as_slice()[..k]
            .iter()
            .map(|&c| (c as i64 * c as i64) as u64)
            .sum()
    }
}

impl std::fmt::Debug for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.as_slice())
    }
}

/// One weighted point (μ_k, λ_j, w_jk) of the joint spectral measure.
#[derive(Debug, Clone, Copy)]
pub struct JointEigenpair {
    /// Eigenfrequency of Δ_H (so Δ_H ψ_k = -μ_k² ψ_k).
    pub mu: f64,
    /// Eigenfrequency of Δ_M.
    pub lambda: f64,
    /// |∫_H e_j ψ̄_k dV_H|².
    pub weight: f64,
    pub label_j: Label,
    pub label_k: Label,
}

impl JointEigenpair {
    /// μ/λ, with the λ = 0 mode assigned ratio 0.
    pub fn ratio(&self) -> f64 {
        if self.lambda > 0.0 {
            self.mu / self.lambda
        } else {
            0.0
        }
    }
}

pub(crate) enum SpectrumImpl {
    Torus(torus::TorusSpectrum),
    Latitude(sphere::LatitudeSpectrum),
    Meridian(sphere::MeridianSpectrum),
}

/// A finite joint spectrum: every pair with `lambda ≤ lambda_max` and
/// `weight > WEIGHT_FLOOR`, partitioned for deterministic parallel
/// consumption (by first lattice coordinate for the torus, by azimuthal
/// order for the sphere models).
pub struct JointSpectrum {
    pair: GeometryPair,
    lambda_max: f64,
    imp: SpectrumImpl,
}

/// Enumerate with the default point budget.
pub fn enumerate_joint_spectrum(pair: &GeometryPair, lambda_max: f64) -> Result<JointSpectrum> {
    enumerate_joint_spectrum_with_budget(pair, lambda_max, DEFAULT_POINT_BUDGET)
}

/// Enumerate with an explicit point budget (resource guard).
pub fn enumerate_joint_spectrum_with_budget(
    pair: &GeometryPair,
    lambda_max: f64,
    budget: u64,
) -> Result<JointSpectrum> {
    if !(lambda_max > 0.0) || !lambda_max.is_finite() {
        return Err(Error::invalid(format!(
            "lambda_max={lambda_max} must be positive and finite"
        )));
    }
    let imp = match pair {
        GeometryPair::Torus { n, d } => SpectrumImpl::Torus(torus::TorusSpectrum::new(
            *n as usize,
            *d as usize,
            lambda_max,
            budget,
        )?),
        GeometryPair::SphereLatitude { phi0 } => {
            SpectrumImpl::Latitude(sphere::LatitudeSpectrum::new(*phi0, lambda_max, budget)?)
        }
        GeometryPair::SphereMeridian => {
            SpectrumImpl::Meridian(sphere::MeridianSpectrum::new(lambda_max, budget)?)
        }
    };
    Ok(JointSpectrum {
        pair: *pair,
        lambda_max,
        imp,
    })
}

impl JointSpectrum {
    pub fn pair(&self) -> &GeometryPair {
        &self.pair
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    pub fn partition_count(&self) -> usize {
        match &self.imp {
            SpectrumImpl::Torus(t) => t.partition_count(),
            SpectrumImpl::Latitude(l) => l.partition_count(),
            SpectrumImpl::Meridian(m) => m.partition_count(),
        }
    }

    pub fn for_each_in_partition<F: FnMut(&JointEigenpair)>(&self, index: usize, f: F) {
        match &self.imp {
            SpectrumImpl::Torus(t) => t.for_each_in_partition(index, f),
            SpectrumImpl::Latitude(l) => l.for_each_in_partition(index, f),
            SpectrumImpl::Meridian(m) => m.for_each_in_partition(index, f),
        }
    }

    /// Sequential visit in partition order.
    pub fn for_each<F: FnMut(&JointEigenpair)>(&self, mut f: F) {
        for i in 0..self.partition_count() {
            self.for_each_in_partition(i, &mut f);
        }
    }

    /// Deterministic (thread-count independent) weighted sum: adds `term(p)`
    /// for every pair where `term` returns a value, with per-partition Kahan
    /// accumulation combined in partition order. Returns (sum, contributing
    /// pair count).
    pub fn weighted_sum<F>(&self, term: F) -> (f64, u64)
    where
        F: Fn(&JointEigenpair) -> Option<f64> + Sync,
    {
        let partials = partition_map(self.partition_count(), |i| {
            let mut acc = KahanSum::new();
            let mut count = 0u64;
            self.for_each_in_partition(i, |p| {
                if let Some(v) = term(p) {
                    acc.add(v);
                    count += 1;
                }
            });
            (acc.value(), count)
        });
        let sums: Vec<f64> = partials.iter().map(|&(s, _)| s).collect();
        let count = partials.iter().map(|&(_, c)| c).sum();
        (combine_partials(&sums), count)
    }

    /// Collect all pairs (small spectra only; sums should stream instead).
    pub fn collect(&self) -> Vec<JointEigenpair> {
        let mut out = Vec::new();
        self.for_each(|p| out.push(*p));
        out
    }
}
