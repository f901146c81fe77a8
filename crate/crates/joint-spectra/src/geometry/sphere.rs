//! Joint spectra of curves in the round 2-sphere.
//!
//! Latitude circles: `Y_l^m` restricted to the circle at polar angle `phi0`
//! is `const · e^{imθ}`, so the only nonzero coefficient pairs it with the
//! circle frequency `m`, and the weight is the circle length times
//! `|Y_l^m|²` there.
//!
//! Meridian (the great circle through both poles in the x–z plane,
//! arc-length parametrized as `γ(s) = (sin s, 0, cos s)`): the restriction is
//! a trigonometric polynomial of degree ≤ l, so uniform trapezoid quadrature
//! with enough nodes recovers every Fourier coefficient exactly to roundoff.

use super::legendre::{assoc_legendre_normalized, legendre_column};
use super::{JointEigenpair, Label, WEIGHT_FLOOR};
use crate::error::{Error, Result};
use std::f64::consts::TAU;

/// Eigenfrequency of degree-l spherical harmonics: √(l(l+1)), exact root of
/// the eigenvalue rather than the Weyl half-integer approximation.
pub fn sphere_eigenvalue(l: u32) -> f64 {
    (l as f64 * (l as f64 + 1.0)).sqrt()
}

/// Largest degree with `sphere_eigenvalue(l) ≤ lambda_max` (ties included).
pub fn latitude_l_max(lambda_max: f64) -> u32 {
    let guess = ((-1.0 + (1.0 + 4.0 * lambda_max * lambda_max).sqrt()) / 2.0).max(0.0);
    let mut l = guess.floor() as u32;
    while sphere_eigenvalue(l + 1) <= lambda_max {
        l += 1;
    }
    while l > 0 && sphere_eigenvalue(l) > lambda_max {
        l -= 1;
    }
    l
}

fn check_lm(l: u32, m: i32) -> Result<u32> {
    let m_abs = m.unsigned_abs();
    if m_abs > l {
        return Err(Error::invalid(format!("|m|={m_abs} exceeds degree l={l}")));
    }
    Ok(m_abs)
}

/// `∫_H |Y_l^m|² dV_H` on the latitude circle at polar angle `phi0`: the
/// single nonzero norm-squared Fourier coefficient of the restriction.
pub fn latitude_weight(l: u32, m: i32, phi0: f64) -> Result<f64> {
    let m_abs = check_lm(l, m)?;
    if !(phi0 > 0.0 && phi0 < std::f64::consts::PI) {
        return Err(Error::invalid(format!("phi0={phi0} outside (0, pi)")));
    }
    let p = assoc_legendre_normalized(l, m_abs, phi0.cos())?;
    Ok(phi0.sin() * p * p)
}

/// Node count rule for meridian quadrature: exact for degree ≤ l plus margin.
fn meridian_nodes(l_max: u32) -> usize {
    (2 * l_max + 64) as usize
}

/// Restriction of `Y_l^m` to the meridian at arc length `s`, which is real:
/// `P̄_l^{|m|}(cos s)/√(2π)` on the front half and `(-1)^m` times that on the
/// back half (longitude π).
fn meridian_phase(m_abs: u32) -> f64 {
    if m_abs % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `|∫_0^{2π} Y_l^m(γ(s)) e^{-iks}/√(2π) ds|²` for the pole-to-pole great
/// circle. Zero for `|k| > l` by the degree bound on the restriction.
pub fn meridian_weight(l: u32, m: i32, k: i32) -> Result<f64> {
    let m_abs = check_lm(l, m)?;
    if k.unsigned_abs() > l {
        return Ok(0.0);
    }
    let n = meridian_nodes(l);
    let phase = meridian_phase(m_abs);
    let scale = TAU.sqrt() / n as f64;
    let mut re = crate::summation::KahanSum::new();
    let mut im = crate::summation::KahanSum::new();
    for i in 0..n {
        let s = TAU * i as f64 / n as f64;
        let sigma = if 2 * i <= n { 1.0 } else { phase };
        let f = assoc_legendre_normalized(l, m_abs, s.cos())? * sigma / TAU.sqrt();
        let angle = k as f64 * s;
        re.add(f * angle.cos());
        im.add(-f * angle.sin());
    }
    let (re, im) = (scale * re.value(), scale * im.value());
    Ok(re * re + im * im)
}

pub(crate) struct LatitudeSpectrum {
    sin_phi0: f64,
    x0: f64,
    l_max: u32,
}

impl LatitudeSpectrum {
    pub fn new(phi0: f64, lambda_max: f64, budget: u64) -> Result<Self> {
        let l_max = latitude_l_max(lambda_max);
        let estimate = (l_max as f64 + 1.0).powi(2);
        if estimate > budget as f64 {
            return Err(Error::BudgetExceeded { estimate, budget });
        }
        Ok(LatitudeSpectrum {
            sin_phi0: phi0.sin(),
            x0: phi0.cos(),
            l_max,
        })
    }

    pub fn partition_count(&self) -> usize {
        self.l_max as usize + 1
    }

    /// Partition = azimuthal order m; emits (l, ±m) for every degree.
    pub fn for_each_in_partition<F: FnMut(&JointEigenpair)>(&self, index: usize, mut f: F) {
        let m = index as u32;
        let col = legendre_column(self.l_max, m, self.x0).expect("validated domain");
        let mu = m as f64 / self.sin_phi0;
        for (offset, p) in col.iter().enumerate() {
            let l = m + offset as u32;
            let weight = self.sin_phi0 * p * p;
            if weight <= WEIGHT_FLOOR {
                continue;
            }
            let lambda = sphere_eigenvalue(l);
            for mm in [m as i32, -(m as i32)] {
                f(&JointEigenpair {
                    mu,
                    lambda,
                    weight,
                    label_j: Label::new(&[l as i32, mm]),
                    label_k: Label::new(&[mm]),
                });
                if m == 0 {
                    break;
                }
            }
        }
    }
}

pub(crate) struct MeridianSpectrum {
    l_max: u32,
    n_nodes: usize,
}

impl MeridianSpectrum {
    pub fn new(lambda_max: f64, budget: u64) -> Result<Self> {
        let l_max = latitude_l_max(lambda_max);
        let estimate = 4.0 / 3.0 * (l_max as f64 + 1.0).powi(3);
        if estimate > budget as f64 {
            return Err(Error::BudgetExceeded { estimate, budget });
        }
        Ok(MeridianSpectrum {
            l_max,
            n_nodes: meridian_nodes(l_max),
        })
    }

    pub fn partition_count(&self) -> usize {
        self.l_max as usize + 1
    }

    /// Partition = azimuthal order m. One Legendre column per node gives the
    /// restriction of every degree at once; each (l, k) coefficient is then a
    /// length-N discrete Fourier sum over the shared trig tables.
    pub fn for_each_in_partition<F: FnMut(&JointEigenpair)>(&self, index: usize, mut f: F) {
        let m = index as u32;
        let n = self.n_nodes;
        let l_max = self.l_max;
        let rows = (l_max - m + 1) as usize;
        let phase = meridian_phase(m);
        let inv_sqrt_tau = 1.0 / TAU.sqrt();

        // trig tables for e^{-iks_i}: angle index (k*i) mod n
        let mut cos_t = vec![0.0; n];
        let mut sin_t = vec![0.0; n];
        for r in 0..n {
            let ang = TAU * r as f64 / n as f64;
            cos_t[r] = ang.cos();
            sin_t[r] = ang.sin();
        }

        // restriction values: vals[row * n + i] = Y_{m+row}^m(γ(s_i)), real
        let mut vals = vec![0.0; rows * n];
        for i in 0..n {
            let s = TAU * i as f64 / n as f64;
            let sigma = if 2 * i <= n { 1.0 } else { phase };
            let col = legendre_column(l_max, m, s.cos()).expect("validated domain");
            for (row, p) in col.iter().enumerate() {
                vals[row * n + i] = p * sigma * inv_sqrt_tau;
            }
        }

        let scale = TAU.sqrt() / n as f64;
        for row in 0..rows {
            let l = m + row as u32;
            let lambda = sphere_eigenvalue(l);
            let fv = &vals[row * n..(row + 1) * n];
            for k in 0..=l {
                let mut re = crate::summation::KahanSum::new();
                let mut im = crate::summation::KahanSum::new();
                let mut idx = 0usize;
                for (i, &fi) in fv.iter().enumerate() {
                    re.add(fi * cos_t[idx]);
                    im.add(-fi * sin_t[idx]);
                    idx += k as usize;
                    if idx >= n {
                        idx -= n;
                    }
                    debug_assert_eq!(idx, (k as usize * (i + 1)) % n);
                }
                let (cr, ci) = (scale * re.value(), scale * im.value());
                let weight = cr * cr + ci * ci;
                if weight <= WEIGHT_FLOOR {
                    continue;
                }
                let mu = k as f64;
                for mm in [m as i32, -(m as i32)] {
                    for kk in [k as i32, -(k as i32)] {
                        f(&JointEigenpair {
                            mu,
                            lambda,
                            weight,
                            label_j: Label::new(&[l as i32, mm]),
                            label_k: Label::new(&[kk]),
                        });
                        if k == 0 {
                            break;
                        }
                    }
                    if m == 0 {
                        break;
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn eigenvalues() {
        assert_eq!(sphere_eigenvalue(0), 0.0);
        assert!((sphere_eigenvalue(1) - 2.0f64.sqrt()).abs() < 1e-16);
        assert!((sphere_eigenvalue(3) - 12.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn l_max_convention_includes_ties() {
        assert_eq!(latitude_l_max(1.0), 0);
        assert_eq!(latitude_l_max(2.0f64.sqrt()), 1); // tie included
        assert_eq!(latitude_l_max(2.0), 1);
        assert_eq!(latitude_l_max(sphere_eigenvalue(300)), 300);
        assert_eq!(latitude_l_max(sphere_eigenvalue(300) - 1e-9), 299);
    }

    #[test]
    fn latitude_weight_examples() {
        // Y_1^0 vanishes on the equator.
        assert!(latitude_weight(1, 0, PI / 2.0).unwrap() < 1e-30);
        // constant mode: 2π sin(phi0) |Y_0^0|² = sin(phi0)/2
        for &phi0 in &[0.3, PI / 3.0, 2.0] {
            let w = latitude_weight(0, 0, phi0).unwrap();
            assert!((w - phi0.sin() / 2.0).abs() < 1e-15);
        }
        assert!(latitude_weight(2, 3, 1.0).is_err());
        assert!(latitude_weight(2, 1, 0.0).is_err());
    }

    #[test]
    fn meridian_weight_examples() {
        // constant mode over a circle of length 2π
        let w = meridian_weight(0, 0, 0).unwrap();
        assert!((w - 0.5).abs() < 1e-14);
        // degree bound
        assert_eq!(meridian_weight(3, 1, 4).unwrap(), 0.0);
        assert!(meridian_weight(2, 3, 0).is_err());
    }

    #[test]
    fn meridian_parseval_small_degree() {
        // Σ_k weight(l, m, k) = ∫ |Y_l^m(γ(s))|² ds by direct quadrature.
        for (l, m) in [(2u32, 1i32), (3, 0), (4, 4), (5, 2)] {
            let mut total = 0.0;
            for k in -(l as i32)..=(l as i32) {
                total += meridian_weight(l, m, k).unwrap();
            }
            let n = 4 * l as usize + 97;
            let mut quad = 0.0;
            for i in 0..n {
                let s = TAU * i as f64 / n as f64;
                let p = assoc_legendre_normalized(l, m.unsigned_abs(), s.cos()).unwrap();
                quad += p * p / TAU * (TAU / n as f64);
            }
            assert!(
                (total - quad).abs() < 1e-12,
                "l={l} m={m}: {total} vs {quad}"
            );
        }
    }

    #[test]
    fn meridian_spectrum_matches_pointwise_weights() {
        let spec = MeridianSpectrum::new(sphere_eigenvalue(4), 1 << 20).unwrap();
        let mut seen = std::collections::HashMap::new();
        for i in 0..spec.partition_count() {
            spec.for_each_in_partition(i, |p| {
                let j = p.label_j.as_slice();
                let k = p.label_k.as_slice()[0];
                seen.insert((j[0], j[1], k), p.weight);
            });
        }
        // enumeration node count differs from the single-call rule, so allow
        // quadrature roundoff
        for (&(l, m, k), &w) in &seen {
            let direct = meridian_weight(l as u32, m, k).unwrap();
            assert!((w - direct).abs() < 1e-13, "({l},{m},{k}): {w} vs {direct}");
        }
        // (l, m, k) = (1, 1, 0) vanishes: restriction of Y_1^1 is odd about
        // the poles; check it was dropped
        assert!(!seen.contains_key(&(1, 1, 0)));
    }
}
