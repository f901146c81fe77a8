//! Spectral sums over joint spectra: cone and ladder sums with their main
//! terms, the local Weyl sum, the empirical ratio measure and its limiting
//! density, and mollified densities along rays.

use crate::error::{Error, Result};
use crate::geometry::{enumerate_joint_spectrum, GeometryPair, JointEigenpair, JointSpectrum};
use crate::mollifier::Mollifier;
use crate::region::{ConeRegion, StripRegion};
use crate::report::SumReport;
use crate::summation::{combine_partials, partition_map, KahanSum};
use std::f64::consts::TAU;

/// Surface volume of the unit sphere S^k.
pub fn vol_sphere(k: u32) -> f64 {
    match k {
        0 => 2.0,
        1 => TAU,
        _ => TAU / (k as f64 - 1.0) * vol_sphere(k - 2),
    }
}

/// The constant `(2π)^{-n} (vol S^{d-1}) (vol S^{n-d-1}) (vol H)` in front of
/// every main term.
pub fn chm_constant(pair: &GeometryPair) -> f64 {
    let n = pair.ambient_dim();
    let d = pair.submanifold_dim();
    TAU.powi(-(n as i32)) * vol_sphere(d - 1) * vol_sphere(n - d - 1) * pair.vol_h()
}

/// `∫_a^b t^{d-1} (1 - t²)^{(n-d-2)/2} dt`, to relative 1e-10 or better.
///
/// Closed forms cover `n = d + 2` and `(n, d) = (2, 1)`; the general case
/// substitutes `t = sin u`, turning the integrand into the smooth
/// `sin^{d-1} u · cos^{n-d-1} u` (the endpoint singularity at t = 1 for
/// n - d = 1 disappears), integrated by composite Gauss–Legendre.
pub fn density_integral(n: u32, d: u32, a: f64, b: f64) -> Result<f64> {
    if d == 0 || d >= n {
        return Err(Error::invalid(format!("need 1 <= d <= n-1, got n={n} d={d}")));
    }
    if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) || a >= b {
        return Err(Error::invalid(format!(
            "need 0 <= a < b <= 1, got a={a} b={b}"
        )));
    }
    if n == d + 2 {
        let df = d as f64;
        return Ok((b.powi(d as i32) - a.powi(d as i32)) / df);
    }
    if n == 2 && d == 1 {
        return Ok(b.asin() - a.asin());
    }
    let alpha = a.asin();
    let beta = b.asin();
    let sp = d as i32 - 1;
    let cp = (n - d) as i32 - 1;
    let value = crate::quadrature::integrate_composite_gl(
        |u| u.sin().powi(sp) * u.cos().powi(cp),
        alpha,
        beta,
        8,
        32,
    );
    Ok(value)
}

fn torus_squares(p: &JointEigenpair, d: usize) -> (u64, u64) {
    let jpsq = p.label_j.prefix_square_sum(d);
    let jsq = p.label_j.prefix_square_sum(p.label_j.len());
    (jpsq, jsq)
}

/// Cone sum: total weight over `λ_j ≤ λ`, `μ_k/λ_j ∈ [a, b)`, against the
/// main term `(C_{H,M}/n) (∫_a^b t^{d-1}(1-t²)^{(n-d-2)/2} dt) λ^n`.
pub fn cone_sum(pair: &GeometryPair, region: &ConeRegion) -> Result<SumReport> {
    let spectrum = enumerate_joint_spectrum(pair, region.lambda_max())?;
    let (value, count) = cone_sum_over(pair, &spectrum, region);
    let n = pair.ambient_dim();
    let d = pair.submanifold_dim();
    let main = chm_constant(pair) / n as f64
        * density_integral(n, d, region.a().value(), region.b().value())?
        * region.lambda_max().powi(n as i32);
    let mut report = SumReport::new(pair, "cone", region.lambda_max(), value, main, count);
    report.a = Some(region.a().value());
    report.b = Some(region.b().value());
    Ok(report)
}

/// The filtered sum itself, reusable against an existing enumeration.
/// The torus path tests membership on exact integer frequency squares — the
/// same predicate the lattice counter uses — so the two agree bit-for-bit.
pub(crate) fn cone_sum_over(
    pair: &GeometryPair,
    spectrum: &JointSpectrum,
    region: &ConeRegion,
) -> (f64, u64) {
    match pair {
        GeometryPair::Torus { d, .. } => {
            let d = *d as usize;
            spectrum.weighted_sum(|p| {
                if p.lambda <= 0.0 {
                    return None;
                }
                let (jpsq, jsq) = torus_squares(p, d);
                region.contains_integer_sq(jpsq, jsq).then_some(p.weight)
            })
        }
        _ => spectrum.weighted_sum(|p| {
            (p.lambda > 0.0 && region.contains_ratio(p.mu, p.lambda)).then_some(p.weight)
        }),
    }
}

/// Ladder sum: total weight over `λ_j ≤ λ`, `|μ_k - cλ_j| ≤ w(λ)`, against
/// `(2C_{H,M}/(n-1)) w(λ) c^{d-1} (1-c²)^{(n-d-2)/2} λ^{n-1}`.
pub fn ladder_sum(pair: &GeometryPair, strip: &StripRegion) -> Result<SumReport> {
    let n = pair.ambient_dim();
    let d = pair.submanifold_dim();
    strip.validate_for_dimension(n)?;
    let width = strip.width_at(strip.lambda_max());
    if !(width >= 1.0) {
        return Err(Error::invalid(format!(
            "strip width w(lambda_max)={width} must be >= 1"
        )));
    }
    let spectrum = enumerate_joint_spectrum(pair, strip.lambda_max())?;
    let (value, count) = spectrum.weighted_sum(|p| strip.contains(p.mu, p.lambda).then_some(p.weight));
    let c = strip.c();
    let main = 2.0 * chm_constant(pair) / (n as f64 - 1.0)
        * width
        * c.powi(d as i32 - 1)
        * (1.0 - c * c).powf((n as f64 - d as f64 - 2.0) / 2.0)
        * strip.lambda_max().powi(n as i32 - 1);
    let mut report = SumReport::new(pair, "strip", strip.lambda_max(), value, main, count);
    report.c = Some(c);
    report.w0 = Some(strip.w0());
    report.p = Some(strip.p());
    Ok(report)
}

/// Local Weyl sum: total restricted L² mass over `λ_j ≤ λ`, against
/// `(2π)^{-n} (vol H)(vol S^{n-1})/n · λ^n`.
pub fn local_weyl_sum(pair: &GeometryPair, lambda_max: f64) -> Result<SumReport> {
    let spectrum = enumerate_joint_spectrum(pair, lambda_max)?;
    let (value, count) = spectrum.weighted_sum(|p| Some(p.weight));
    let n = pair.ambient_dim();
    let main = TAU.powi(-(n as i32)) * pair.vol_h() * vol_sphere(n - 1) / n as f64
        * lambda_max.powi(n as i32);
    Ok(SumReport::new(pair, "weyl", lambda_max, value, main, count))
}

/// Ratios live in `[0, 1]` in the limit but individual pairs can exceed 1
/// (above-caustic latitude pairs), so the histogram domain extends a hair
/// past 1 and everything beyond spills into `overflow_mass`.
pub const RATIO_DOMAIN_END: f64 = 1.0 + 1e-9;

/// The empirical ratio measure at scale λ: bin masses of
/// `λ^{-n} Σ w_{jk} δ_{μ_k/λ_j}` over equal bins of `[0, RATIO_DOMAIN_END)`.
#[derive(Debug, Clone)]
pub struct EmpiricalMeasure {
    pub lambda_max: f64,
    pub bin_width: f64,
    pub masses: Vec<f64>,
    pub overflow_mass: f64,
    pub total_mass: f64,
}

/// Histogram of the empirical measure. The `λ_j = 0` pair is assigned
/// ratio 0. Total mass equals `local_weyl_sum / λ^n` up to compensated
/// summation error.
pub fn empirical_measure(
    pair: &GeometryPair,
    lambda_max: f64,
    bins: usize,
) -> Result<EmpiricalMeasure> {
    if bins < 10 {
        return Err(Error::invalid(format!("bins={bins} must be >= 10")));
    }
    let spectrum = enumerate_joint_spectrum(pair, lambda_max)?;
    let width = RATIO_DOMAIN_END / bins as f64;
    let partials = partition_map(spectrum.partition_count(), |i| {
        let mut acc = vec![KahanSum::new(); bins + 1];
        spectrum.for_each_in_partition(i, |p| {
            let idx = ((p.ratio() / width) as usize).min(bins);
            acc[idx].add(p.weight);
        });
        acc.iter().map(|k| k.value()).collect::<Vec<f64>>()
    });
    let scale = lambda_max.powi(-(pair.ambient_dim() as i32));
    let mut masses = Vec::with_capacity(bins);
    let mut column = Vec::with_capacity(partials.len());
    for b in 0..=bins {
        column.clear();
        column.extend(partials.iter().map(|p| p[b]));
        masses.push(scale * combine_partials(&column));
    }
    let overflow_mass = masses.pop().expect("bins + 1 entries");
    let total_mass = combine_partials(&masses) + overflow_mass;
    Ok(EmpiricalMeasure {
        lambda_max,
        bin_width: width,
        masses,
        overflow_mass,
        total_mass,
    })
}

impl EmpiricalMeasure {
    pub fn bins(&self) -> usize {
        self.masses.len()
    }

    pub fn edges(&self, index: usize) -> (f64, f64) {
        (
            index as f64 * self.bin_width,
            (index + 1) as f64 * self.bin_width,
        )
    }

    /// Limit-measure mass of bin `index` for the given pair.
    pub fn limit_bin_mass(&self, pair: &GeometryPair, index: usize) -> Result<f64> {
        let (lo, hi) = self.edges(index);
        let lo = lo.min(1.0);
        let hi = hi.min(1.0);
        if lo >= hi {
            return Ok(0.0);
        }
        let n = pair.ambient_dim();
        let d = pair.submanifold_dim();
        Ok(chm_constant(pair) / n as f64 * density_integral(n, d, lo, hi)?)
    }

    /// L¹ distance to the bin-averaged limit density (overflow mass counts
    /// in full, the limit measure having no mass beyond 1).
    pub fn l1_distance_to_limit(&self, pair: &GeometryPair) -> Result<f64> {
        let mut acc = KahanSum::new();
        for i in 0..self.bins() {
            acc.add((self.masses[i] - self.limit_bin_mass(pair, i)?).abs());
        }
        acc.add(self.overflow_mass);
        Ok(acc.value())
    }
}

/// Density of the weak-* limit measure: `(C_{H,M}/n) t^{d-1} (1-t²)^{(n-d-2)/2}`
/// on `[0, 1]`, zero outside. For `n - d = 1` the density has an integrable
/// singularity at t = 1 and the value there is `+∞`; integrate with
/// [`density_integral`] rather than sampling the endpoint.
pub fn limit_density(pair: &GeometryPair, t: f64) -> f64 {
    if !(0.0..=1.0).contains(&t) {
        return 0.0;
    }
    let n = pair.ambient_dim();
    let d = pair.submanifold_dim();
    if t == 1.0 && n == d + 1 {
        return f64::INFINITY;
    }
    let e = (n as f64 - d as f64 - 2.0) / 2.0;
    chm_constant(pair) / n as f64 * t.powi(d as i32 - 1) * (1.0 - t * t).powf(e)
}

fn validate_ray_point(rho: &Mollifier, mu: f64, lambda: f64) -> Result<()> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "smoothed density needs a 2-d mollifier, got {}-d",
            rho.dim()
        )));
    }
    if !(lambda > 0.0) || !(mu / lambda > 0.0 && mu / lambda < 1.0) {
        return Err(Error::invalid(format!(
            "evaluation point (mu, lambda) = ({mu}, {lambda}) must have ratio in (0, 1)"
        )));
    }
    Ok(())
}

/// `N * ρ(μ, λ)`: the joint spectral measure mollified at a point. The
/// enumeration is truncated at `λ + tail_radius(ρ)` and atoms farther than
/// the tail radius are skipped, matching the point-measure convolution
/// exactly.
pub fn smoothed_density(
    pair: &GeometryPair,
    rho: &Mollifier,
    mu: f64,
    lambda: f64,
) -> Result<f64> {
    validate_ray_point(rho, mu, lambda)?;
    let tail = rho.tail_radius();
    let spectrum = enumerate_joint_spectrum(pair, lambda + tail)?;
    let (value, _) = spectrum.weighted_sum(|p| {
        let dx = mu - p.mu;
        let dy = lambda - p.lambda;
        (dx * dx + dy * dy <= tail * tail).then(|| p.weight * rho.eval(&[dx, dy]))
    });
    Ok(value)
}

/// Predicted value of `N * ρ` in the open cone:
/// `C_{H,M} ρ̂(0) μ^{d-1} λ^{n-d-1} (1 - μ²/λ²)^{(n-d-2)/2}` with `ρ̂(0) = 1`
/// for normalized mollifiers.
pub fn smoothed_main_term(
    pair: &GeometryPair,
    rho: &Mollifier,
    mu: f64,
    lambda: f64,
) -> Result<f64> {
    validate_ray_point(rho, mu, lambda)?;
    let n = pair.ambient_dim();
    let d = pair.submanifold_dim();
    let ratio = mu / lambda;
    Ok(chm_constant(pair)
        * mu.powi(d as i32 - 1)
        * lambda.powi((n - d) as i32 - 1)
        * (1.0 - ratio * ratio).powf((n as f64 - d as f64 - 2.0) / 2.0))
}
