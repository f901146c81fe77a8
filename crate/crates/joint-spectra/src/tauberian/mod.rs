//! Numerical verification engine for the multidimensional Tauberian
//! inequality: atomic point measures, mollified counts, order functions,
//! regions with boundary thickenings, and the gap/thickening/annulus checks.
//!
//! The inequality under test bounds `|N(Ω) - ∫_Ω N*ρ|` by a constant times
//! `∫_{∂^{[-1,1]}Ω} m` for any Borel Ω, where `ρ` is a normalized
//! nonnegative mollifier and `m` an order function dominating `N*ρ`. The
//! proof-side constant is not computable from quantified data, so the checks
//! report empirical ratios over region families and the tests assert their
//! boundedness. Regions are realized as indicator functions with bounding
//! boxes on planar grids; boundary distances carry the documented 2% error
//! budget of the grid machinery.

mod grid;

use crate::error::{Error, Result};
use crate::geometry::JointSpectrum;
use crate::mollifier::Mollifier;
use crate::summation::{combine_partials, partition_map, KahanSum};
use grid::{GridSpec, SignedDistanceField};
use serde::Serialize;
use std::io::BufRead;
use std::sync::Arc;

/// A finite, nonnegative atomic measure on ℝ^D (flat storage).
#[derive(Debug, Clone)]
pub struct PointMeasure {
    dim: usize,
    coords: Vec<f64>,
    weights: Vec<f64>,
}

impl PointMeasure {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("measure dimension must be >= 1"));
        }
        Ok(PointMeasure {
            dim,
            coords: Vec::new(),
            weights: Vec::new(),
        })
    }

    pub fn push(&mut self, location: &[f64], weight: f64) -> Result<()> {
        if location.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "atom has {} coordinates, measure is {}-dimensional",
                location.len(),
                self.dim
            )));
        }
        if !(weight >= 0.0) || !weight.is_finite() {
            return Err(Error::invalid(format!("atom weight {weight} must be >= 0")));
        }
        self.coords.extend_from_slice(location);
        self.weights.push(weight);
        Ok(())
    }

    /// The joint spectrum as atoms `(μ_k, λ_j)` with their coefficient
    /// weights, in enumeration order.
    pub fn from_joint_spectrum(spectrum: &JointSpectrum) -> Self {
        let mut m = PointMeasure::new(2).expect("dim 2");
        spectrum.for_each(|p| {
            m.coords.push(p.mu);
            m.coords.push(p.lambda);
            m.weights.push(p.weight);
        });
        m
    }

    /// Read `x1,...,xD,weight` rows; a non-numeric first line is a header.
    pub fn from_csv<R: BufRead>(reader: R) -> Result<Self> {
        let mut measure: Option<PointMeasure> = None;
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
            let parsed: Option<Vec<f64>> = fields.iter().map(|f| f.parse().ok()).collect();
            match parsed {
                None if lineno == 0 => continue, // header
                None => {
                    return Err(Error::Parse(format!(
                        "line {}: non-numeric field",
                        lineno + 1
                    )))
                }
                Some(values) => {
                    if values.len() < 2 {
                        return Err(Error::Parse(format!(
                            "line {}: need at least one coordinate and a weight",
                            lineno + 1
                        )));
                    }
                    let dim = values.len() - 1;
                    let m = measure.get_or_insert(PointMeasure::new(dim)?);
                    if dim != m.dim {
                        return Err(Error::Parse(format!(
                            "line {}: expected {} columns",
                            lineno + 1,
                            m.dim + 1
                        )));
                    }
                    m.push(&values[..dim], values[dim])?;
                }
            }
        }
        measure.ok_or_else(|| Error::Parse("no atoms in input".into()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn atom(&self, i: usize) -> (&[f64], f64) {
        (
            &self.coords[i * self.dim..(i + 1) * self.dim],
            self.weights[i],
        )
    }

    pub fn total_mass(&self) -> f64 {
        KahanSum::sum_iter(self.weights.iter().copied())
    }

    pub fn bounding_box(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        if self.is_empty() {
            return None;
        }
        let mut lo = self.coords[..self.dim].to_vec();
        let mut hi = lo.clone();
        for i in 1..self.len() {
            let (x, _) = self.atom(i);
            for k in 0..self.dim {
                lo[k] = lo[k].min(x[k]);
                hi[k] = hi[k].max(x[k]);
            }
        }
        Some((lo, hi))
    }

    pub fn translated(&self, shift: &[f64]) -> Result<Self> {
        if shift.len() != self.dim {
            return Err(Error::DimensionMismatch("shift dimension".into()));
        }
        let mut out = self.clone();
        for i in 0..out.len() {
            for k in 0..self.dim {
                out.coords[i * self.dim + k] += shift[k];
            }
        }
        Ok(out)
    }
}

/// A positive function `m` with certificate `m(x) ≤ C (1+|x-y|)^ν m(y)`.
#[derive(Clone)]
pub struct OrderFunction {
    f: Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>,
    c: f64,
    nu: f64,
}

impl std::fmt::Debug for OrderFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OrderFunction")
            .field("c", &self.c)
            .field("nu", &self.nu)
            .finish()
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|&v| v * v).sum::<f64>().sqrt()
}

impl OrderFunction {
    pub fn new<F>(f: F, c: f64, nu: f64) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        if !(c > 0.0) || !c.is_finite() || !(nu >= 0.0) || !nu.is_finite() {
            return Err(Error::invalid(format!(
                "order function needs C > 0 and nu >= 0, got C={c} nu={nu}"
            )));
        }
        Ok(OrderFunction {
            f: Arc::new(f),
            c,
            nu,
        })
    }

    /// `m ≡ k`.
    pub fn constant(k: f64) -> Result<Self> {
        if !(k > 0.0) {
            return Err(Error::invalid(format!("constant order function needs k > 0, got {k}")));
        }
        Self::new(move |_| k, 1.0, 0.0)
    }

    /// `m(x) = k (1+|x|)^ν`, certified with `C = 1` and the same exponent.
    pub fn power(k: f64, nu: f64) -> Result<Self> {
        if !(k > 0.0) {
            return Err(Error::invalid(format!("power order function needs k > 0, got {k}")));
        }
        Self::new(move |x| k * (1.0 + norm(x)).powf(nu), 1.0, nu)
    }

    /// Same function, different certificate pair (any `ν' ≥ ν` and `C' ≥ C`
    /// is again valid; the thickening lemmas are checked against the
    /// certificate carried here).
    pub fn with_certificate(&self, c: f64, nu: f64) -> Result<Self> {
        if !(c > 0.0) || !(nu >= 0.0) {
            return Err(Error::invalid("need C > 0 and nu >= 0"));
        }
        Ok(OrderFunction {
            f: self.f.clone(),
            c,
            nu,
        })
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        (self.f)(x)
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn translated(&self, shift: &[f64]) -> Self {
        let f = self.f.clone();
        let shift = shift.to_vec();
        OrderFunction {
            f: Arc::new(move |x: &[f64]| {
                let moved: Vec<f64> = x.iter().zip(&shift).map(|(a, s)| a - s).collect();
                f(&moved)
            }),
            c: self.c,
            nu: self.nu,
        }
    }

    /// Sample `pairs` random pairs (x, y) in the box and return the largest
    /// value of `m(x) / (C (1+|x-y|)^ν m(y))`; at most 1 certifies the order
    /// property on the sample.
    pub fn certificate_violation(
        &self,
        lo: &[f64],
        hi: &[f64],
        pairs: usize,
        seed: u64,
    ) -> Result<f64> {
        use rand::{Rng, SeedableRng};
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch("certificate box".into()));
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let dim = lo.len();
        let sample = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<f64> {
            (0..dim)
                .map(|k| lo[k] + (hi[k] - lo[k]) * rng.random::<f64>())
                .collect()
        };
        let mut worst = 0.0f64;
        for _ in 0..pairs {
            let x = sample(&mut rng);
            let y = sample(&mut rng);
            let dxy: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a - b).collect();
            let ratio = self.eval(&x) / (self.c * (1.0 + norm(&dxy)).powf(self.nu) * self.eval(&y));
            worst = worst.max(ratio);
        }
        Ok(worst)
    }

    /// Spectral default: `m(μ,λ) = K (1+|(μ,λ)|)^growth` with K the maximum
    /// of `N*ρ / (1+|x|)^growth` over a sample grid, so that `N*ρ ≤ m` holds
    /// on the sampled window.
    pub fn calibrated_spectral(
        measure: &PointMeasure,
        rho: &Mollifier,
        growth: f64,
        lo: [f64; 2],
        hi: [f64; 2],
        step: f64,
    ) -> Result<Self> {
        if measure.dim() != 2 || rho.dim() != 2 {
            return Err(Error::DimensionMismatch(
                "calibration is implemented for planar measures".into(),
            ));
        }
        if !(step > 0.0) {
            return Err(Error::invalid("calibration step must be positive"));
        }
        let index = AtomIndex::build(measure, rho.tail_radius());
        let nx = (((hi[0] - lo[0]) / step).ceil() as usize).max(1) + 1;
        let ny = (((hi[1] - lo[1]) / step).ceil() as usize).max(1) + 1;
        let maxima = partition_map(nx, |ix| {
            let x0 = lo[0] + ix as f64 * step;
            let mut best = 0.0f64;
            for iy in 0..ny {
                let x = [x0, lo[1] + iy as f64 * step];
                let v = index.mollified_at(x, rho) / (1.0 + norm(&x)).powf(growth);
                best = best.max(v);
            }
            best
        });
        let k = maxima.into_iter().fold(0.0f64, f64::max);
        if !(k > 0.0) {
            return Err(Error::invalid(
                "calibration found no mass in the sample window",
            ));
        }
        Self::power(k, growth)
    }
}

/// A Borel region given by an indicator, a bounding box outside which the
/// indicator is identically false, and the grid spacing used for its
/// boundary thickenings.
#[derive(Clone)]
pub struct Region {
    dim: usize,
    indicator: Arc<dyn Fn(&[f64]) -> bool + Send + Sync>,
    lo: Vec<f64>,
    hi: Vec<f64>,
    h: f64,
}

impl std::fmt::Debug for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Region")
            .field("dim", &self.dim)
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .field("h", &self.h)
            .finish()
    }
}

impl Region {
    pub fn new<F>(indicator: F, lo: Vec<f64>, hi: Vec<f64>, h: f64) -> Result<Self>
    where
        F: Fn(&[f64]) -> bool + Send + Sync + 'static,
    {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::DimensionMismatch("bounding box".into()));
        }
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(Error::invalid("bounding box has lo > hi"));
        }
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::invalid(format!("grid spacing h={h} must be positive")));
        }
        Ok(Region {
            dim: lo.len(),
            indicator: Arc::new(indicator),
            lo,
            hi,
            h,
        })
    }

    pub fn disk(center: [f64; 2], radius: f64, h: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::invalid(format!("disk radius {radius} must be positive")));
        }
        let r2 = radius * radius;
        Self::new(
            move |x: &[f64]| {
                let dx = x[0] - center[0];
                let dy = x[1] - center[1];
                dx * dx + dy * dy <= r2
            },
            vec![center[0] - radius, center[1] - radius],
            vec![center[0] + radius, center[1] + radius],
            h,
        )
    }

    /// The truncated cone `{0 < λ' ≤ λ, μ/λ' ∈ [a, b)}` in the (μ, λ') plane,
    /// with the same membership conventions as the spectral cone sums.
    pub fn cone(a: f64, b: f64, lambda_max: f64, h: f64) -> Result<Self> {
        let cr = crate::region::ConeRegion::new(a, b, lambda_max)?;
        Self::new(
            move |x: &[f64]| x[1] > 0.0 && x[1] <= lambda_max && cr.contains_ratio(x[0], x[1]),
            vec![0.0, 0.0],
            vec![b * lambda_max, lambda_max],
            h,
        )
    }

    pub fn empty(h: f64) -> Result<Self> {
        Self::new(|_: &[f64]| false, vec![0.0, 0.0], vec![1.0, 1.0], h)
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        debug_assert_eq!(x.len(), self.dim);
        (self.indicator)(x)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grid_h(&self) -> f64 {
        self.h
    }

    pub fn with_grid_h(&self, h: f64) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::invalid("grid spacing must be positive"));
        }
        let mut r = self.clone();
        r.h = h;
        Ok(r)
    }

    pub fn bounding_box(&self) -> (&[f64], &[f64]) {
        (&self.lo, &self.hi)
    }

    pub fn translated(&self, shift: &[f64]) -> Result<Self> {
        if shift.len() != self.dim {
            return Err(Error::DimensionMismatch("shift dimension".into()));
        }
        let ind = self.indicator.clone();
        let s = shift.to_vec();
        let lo = self.lo.iter().zip(&s).map(|(a, b)| a + b).collect();
        let hi = self.hi.iter().zip(&s).map(|(a, b)| a + b).collect();
        Ok(Region {
            dim: self.dim,
            indicator: Arc::new(move |x: &[f64]| {
                let moved: Vec<f64> = x.iter().zip(&s).map(|(a, b)| a - b).collect();
                ind(&moved)
            }),
            lo,
            hi,
            h: self.h,
        })
    }

    fn require_planar(&self, what: &str) -> Result<()> {
        if self.dim != 2 {
            return Err(Error::DimensionMismatch(format!(
                "{what} is implemented for planar regions, got dimension {}",
                self.dim
            )));
        }
        Ok(())
    }

    /// Grid covering the bounding box inflated by `pad`, with the origin
    /// snapped to a multiple of h so that grids for nested thickening bands
    /// share cell centers.
    fn padded_grid(&self, pad: f64) -> GridSpec {
        let steps = (pad / self.h).ceil().max(0.0);
        let lo = [
            self.lo[0] - steps * self.h,
            self.lo[1] - steps * self.h,
        ];
        let hi = [self.hi[0] + steps * self.h, self.hi[1] + steps * self.h];
        GridSpec::cover(lo, hi, self.h)
    }

    fn signed_distance_field(&self, pad: f64) -> SignedDistanceField {
        let ind = self.indicator.clone();
        SignedDistanceField::build(self.padded_grid(pad), &move |x: &[f64]| ind(x))
    }
}

/// `N * ρ(x) = Σ w_i ρ(x - x_i)`, atoms beyond the tail radius skipped.
pub fn convolve(measure: &PointMeasure, rho: &Mollifier, x: &[f64]) -> Result<f64> {
    if measure.dim() != rho.dim() || x.len() != measure.dim() {
        return Err(Error::DimensionMismatch(format!(
            "measure dim {}, mollifier dim {}, point dim {}",
            measure.dim(),
            rho.dim(),
            x.len()
        )));
    }
    let tail = rho.tail_radius();
    let tail2 = tail * tail;
    let mut acc = KahanSum::new();
    let mut dx = vec![0.0; measure.dim()];
    for i in 0..measure.len() {
        let (loc, w) = measure.atom(i);
        let mut d2 = 0.0;
        for k in 0..dx.len() {
            dx[k] = x[k] - loc[k];
            d2 += dx[k] * dx[k];
        }
        if d2 <= tail2 {
            acc.add(w * rho.eval(&dx));
        }
    }
    Ok(acc.value())
}

/// Bucketed planar atom index for grid sweeps of `N * ρ`.
struct AtomIndex<'a> {
    measure: &'a PointMeasure,
    origin: [f64; 2],
    cell: f64,
    nbx: i64,
    nby: i64,
    buckets: Vec<Vec<u32>>,
    tail: f64,
}

impl<'a> AtomIndex<'a> {
    fn build(measure: &'a PointMeasure, tail: f64) -> Self {
        let (lo, hi) = measure
            .bounding_box()
            .unwrap_or((vec![0.0, 0.0], vec![0.0, 0.0]));
        let cell = tail.max(1e-12);
        let origin = [lo[0], lo[1]];
        let nbx = (((hi[0] - lo[0]) / cell).floor() as i64 + 1).max(1);
        let nby = (((hi[1] - lo[1]) / cell).floor() as i64 + 1).max(1);
        let mut buckets = vec![Vec::new(); (nbx * nby) as usize];
        for i in 0..measure.len() {
            let (x, _) = measure.atom(i);
            let bx = (((x[0] - origin[0]) / cell).floor() as i64).clamp(0, nbx - 1);
            let by = (((x[1] - origin[1]) / cell).floor() as i64).clamp(0, nby - 1);
            buckets[(bx * nby + by) as usize].push(i as u32);
        }
        AtomIndex {
            measure,
            origin,
            cell,
            nbx,
            nby,
            buckets,
            tail,
        }
    }

    fn mollified_at(&self, x: [f64; 2], rho: &Mollifier) -> f64 {
        let clamp_x = |v: f64| (((v - self.origin[0]) / self.cell).floor() as i64).clamp(0, self.nbx - 1);
        let clamp_y = |v: f64| (((v - self.origin[1]) / self.cell).floor() as i64).clamp(0, self.nby - 1);
        let (bx0, bx1) = (clamp_x(x[0] - self.tail), clamp_x(x[0] + self.tail));
        let (by0, by1) = (clamp_y(x[1] - self.tail), clamp_y(x[1] + self.tail));
        let tail2 = self.tail * self.tail;
        let mut acc = KahanSum::new();
        for bx in bx0..=bx1 {
            for by in by0..=by1 {
                for &i in &self.buckets[(bx * self.nby + by) as usize] {
                    let (loc, w) = self.measure.atom(i as usize);
                    let dx = x[0] - loc[0];
                    let dy = x[1] - loc[1];
                    if dx * dx + dy * dy <= tail2 {
                        acc.add(w * rho.eval(&[dx, dy]));
                    }
                }
            }
        }
        acc.value()
    }
}

/// `∫_{∂Ω^{[a,b]}} m`: Riemann sum of `m` over grid cells whose signed
/// distance to the boundary lies in `[a, b]` (negative side inside). The
/// grid must resolve same-sign bands: `h ≤ (b-a)/4`.
pub fn thickening_integral(omega: &Region, m: &OrderFunction, a: f64, b: f64) -> Result<f64> {
    omega.require_planar("thickening integral")?;
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::invalid(format!("need a < b, got [{a}, {b}]")));
    }
    let same_sign = a >= 0.0 || b <= 0.0;
    if same_sign && omega.grid_h() > (b - a) / 4.0 {
        return Err(Error::GridTooCoarse(format!(
            "h = {} cannot resolve the band [{a}, {b}]; need h <= {}",
            omega.grid_h(),
            (b - a) / 4.0
        )));
    }
    let pad = a.abs().max(b.abs()) + 2.0 * omega.grid_h();
    let sdf = omega.signed_distance_field(pad);
    if sdf.interface.is_empty() {
        return Ok(0.0);
    }
    let h = omega.grid_h();
    let cap = a.abs().max(b.abs()) + 4.0 * h;
    let partials = partition_map(sdf.spec.nx, |ix| {
        let mut acc = KahanSum::new();
        for iy in 0..sdf.spec.ny {
            let x = sdf.spec.center(ix, iy);
            let s = sdf.signed_distance(x, sdf.inside_at(ix, iy), cap);
            if s >= a && s <= b {
                acc.add(m.eval(&x));
            }
        }
        acc.value()
    });
    Ok(h * h * combine_partials(&partials))
}

/// Result of one Tauberian gap evaluation.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GapReport {
    /// N(Ω): atomic mass inside the region.
    pub mass: f64,
    /// Grid Riemann sum of `∫_Ω N*ρ`.
    pub smoothed_integral: f64,
    /// |mass - smoothed_integral|.
    pub gap: f64,
    /// `∫_{∂^{[-1,1]}Ω} m`.
    pub bound: f64,
    /// gap / bound (0 when both vanish).
    pub ratio: f64,
}

fn safe_ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else if num == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Evaluate `|N(Ω) - ∫_Ω N*ρ|` against the unit-thickening integral of `m`.
pub fn tauberian_gap(
    measure: &PointMeasure,
    rho: &Mollifier,
    omega: &Region,
    m: &OrderFunction,
) -> Result<GapReport> {
    omega.require_planar("tauberian gap")?;
    if measure.dim() != 2 || rho.dim() != 2 {
        return Err(Error::DimensionMismatch(
            "tauberian gap needs planar measure and mollifier".into(),
        ));
    }
    let mut mass_acc = KahanSum::new();
    for i in 0..measure.len() {
        let (x, w) = measure.atom(i);
        if omega.contains(x) {
            mass_acc.add(w);
        }
    }
    let mass = mass_acc.value();

    let index = AtomIndex::build(measure, rho.tail_radius());
    let spec = omega.padded_grid(0.0);
    let h = omega.grid_h();
    let partials = partition_map(spec.nx, |ix| {
        let mut acc = KahanSum::new();
        for iy in 0..spec.ny {
            let x = spec.center(ix, iy);
            if omega.contains(&x) {
                acc.add(index.mollified_at(x, rho));
            }
        }
        acc.value()
    });
    let smoothed_integral = h * h * combine_partials(&partials);

    let bound = thickening_integral(omega, m, -1.0, 1.0)?;
    let gap = (mass - smoothed_integral).abs();
    Ok(GapReport {
        mass,
        smoothed_integral,
        gap,
        bound,
        ratio: safe_ratio(gap, bound),
    })
}

/// Result of a thickening-lemma evaluation: `∫_{∂Ω^{[a,b]}} m` against
/// `(1+max(|a|,|b|))^ν ∫_{∂Ω^{[-1,1]}} m`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ThickeningReport {
    pub lhs: f64,
    pub rhs_base: f64,
    pub implied_c: f64,
}

pub fn check_lemma_thickening(
    omega: &Region,
    m: &OrderFunction,
    a: f64,
    b: f64,
) -> Result<ThickeningReport> {
    let lhs = thickening_integral(omega, m, a, b)?;
    let rhs_base = thickening_integral(omega, m, -1.0, 1.0)?;
    let scale = (1.0 + a.abs().max(b.abs())).powf(m.nu());
    Ok(ThickeningReport {
        lhs,
        rhs_base,
        implied_c: safe_ratio(lhs, rhs_base * scale),
    })
}

/// Result of an annulus-mass evaluation: `N(∂Ω^{[0,r]})` against
/// `(1+r)^ν ∫_{∂Ω^{[-1,1]}} m`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AnnulusReport {
    pub mass: f64,
    pub bound: f64,
    pub implied_c: f64,
}

pub fn check_annulus_mass(
    measure: &PointMeasure,
    rho: &Mollifier,
    omega: &Region,
    m: &OrderFunction,
    r: f64,
) -> Result<AnnulusReport> {
    omega.require_planar("annulus mass")?;
    if measure.dim() != 2 || rho.dim() != 2 {
        return Err(Error::DimensionMismatch(
            "annulus check needs planar measure and mollifier".into(),
        ));
    }
    if !(r >= 1.0) {
        return Err(Error::invalid(format!("outer radius r={r} must be >= 1")));
    }
    let sdf = omega.signed_distance_field(r + 2.0 * omega.grid_h());
    let cap = r + 4.0 * omega.grid_h();
    let (blo, bhi) = omega.bounding_box();
    let mut acc = KahanSum::new();
    // no interface in the window: the outer thickening is empty
    if !sdf.interface.is_empty() {
        for i in 0..measure.len() {
            let (x, w) = measure.atom(i);
            // Ω lies in its bounding box, so the box distance is a lower
            // bound on d(x, Ω); atoms farther than r from the box are out
            let bx = (blo[0] - x[0]).max(x[0] - bhi[0]).max(0.0);
            let by = (blo[1] - x[1]).max(x[1] - bhi[1]).max(0.0);
            if bx * bx + by * by > r * r {
                continue;
            }
            if !omega.contains(x) {
                let d = sdf.signed_distance([x[0], x[1]], false, cap);
                if d <= r {
                    acc.add(w);
                }
            }
        }
    }
    let mass = acc.value();
    let rhs_base = thickening_integral(omega, m, -1.0, 1.0)?;
    let bound = (1.0 + r).powf(m.nu()) * rhs_base;
    Ok(AnnulusReport {
        mass,
        bound,
        implied_c: safe_ratio(mass, bound),
    })
}
