//! Mollifiers: nonnegative, normalized smoothing kernels.
//!
//! Two families:
//! * `Gaussian { scale }` — isotropic, `(2πs²)^{-D/2} e^{-|x|²/2s²}`. Not
//!   band limited, but its tails fall below any summation tolerance a few
//!   scales out, which is what the tail radius encodes.
//! * `BandLimited { eps }` — product of `(3ε/4π) sinc⁴(ε x_i / 2)` factors;
//!   nonnegative with Fourier transform supported in `[-2ε, 2ε]^D`.
//!
//! Both are normalized to `∫ρ = 1`, so `ρ̂(0) = 1`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MollifierKind {
    Gaussian { scale: f64 },
    BandLimited { eps: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mollifier {
    dim: usize,
    kind: MollifierKind,
}

/// Tail cut: the radius beyond which `ρ < TAIL_CUT · ρ(0)`; contributions
/// past it are below summation tolerance and are skipped.
const TAIL_CUT: f64 = 1e-15;

#[inline]
fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        1.0 - u * u / 6.0
    } else {
        u.sin() / u
    }
}

impl Mollifier {
    pub fn gaussian(dim: usize, scale: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("mollifier dimension must be >= 1"));
        }
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::invalid(format!("gaussian scale {scale} must be positive")));
        }
        Ok(Mollifier {
            dim,
            kind: MollifierKind::Gaussian { scale },
        })
    }

    pub fn band_limited(dim: usize, eps: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("mollifier dimension must be >= 1"));
        }
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(Error::invalid(format!("band limit {eps} must be positive")));
        }
        Ok(Mollifier {
            dim,
            kind: MollifierKind::BandLimited { eps },
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> MollifierKind {
        self.kind
    }

    /// ρ(dx); `dx` is the displacement from the kernel center.
    pub fn eval(&self, dx: &[f64]) -> f64 {
        debug_assert_eq!(dx.len(), self.dim);
        match self.kind {
            MollifierKind::Gaussian { scale } => {
                let q: f64 = dx.iter().map(|&x| x * x).sum();
                let norm =
                    (std::f64::consts::TAU * scale * scale).powf(-(self.dim as f64) / 2.0);
                norm * (-q / (2.0 * scale * scale)).exp()
            }
            MollifierKind::BandLimited { eps } => {
                let c = 3.0 * eps / (4.0 * std::f64::consts::PI);
                dx.iter()
                    .map(|&x| {
                        let s = sinc(eps * x / 2.0);
                        let s2 = s * s;
                        c * s2 * s2
                    })
                    .product()
            }
        }
    }

    /// ρ(0).
    pub fn peak(&self) -> f64 {
        let zero = vec![0.0; self.dim];
        self.eval(&zero)
    }

    /// Radius beyond which `ρ < 1e-15 · ρ(0)` (along the slowest-decaying
    /// direction, a coordinate axis for the band-limited kernel).
    pub fn tail_radius(&self) -> f64 {
        match self.kind {
            MollifierKind::Gaussian { scale } => scale * (-2.0 * TAIL_CUT.ln()).sqrt(),
            MollifierKind::BandLimited { eps } => 2.0 / eps * TAIL_CUT.powf(-0.25),
        }
    }

    /// `∫ρ = 1` by construction; kept as the value the main terms use.
    pub fn fourier_at_zero(&self) -> f64 {
        1.0
    }

    /// Quadrature certificate for the normalization: returns the numerical
    /// value of `∫_{ℝ^D} ρ`, which must equal 1 to 1e-10.
    pub fn normalization_integral(&self) -> f64 {
        let one_dim = match self.kind {
            MollifierKind::Gaussian { scale } => {
                let f = |x: f64| {
                    (std::f64::consts::TAU * scale * scale).powf(-0.5)
                        * (-x * x / (2.0 * scale * scale)).exp()
                };
                2.0 * crate::quadrature::integrate_composite_gl(f, 0.0, 12.0 * scale, 24, 16)
            }
            MollifierKind::BandLimited { eps } => {
                let c = 3.0 * eps / (4.0 * std::f64::consts::PI);
                let f = |x: f64| {
                    let s = sinc(eps * x / 2.0);
                    let s2 = s * s;
                    c * s2 * s2
                };
                // panels aligned with the sinc period; analytic tail bound
                // 4/(π ε³ R³) < 1e-12 fixes the cutoff
                let period = std::f64::consts::TAU / eps * 2.0;
                let r_cut = (4.0 / (std::f64::consts::PI * 1e-12 * eps.powi(3))).cbrt();
                let panels = (r_cut / period).ceil() as usize;
                let r_cut = panels as f64 * period;
                2.0 * crate::quadrature::integrate_composite_gl(f, 0.0, r_cut, panels, 16)
            }
        };
        one_dim.powi(self.dim as i32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_peak_and_tail() {
        let m = Mollifier::gaussian(2, 1.0).unwrap();
        assert!((m.peak() - 1.0 / std::f64::consts::TAU).abs() < 1e-15);
        let r = m.tail_radius();
        assert!((8.3..8.4).contains(&r));
        assert!(m.eval(&[r, 0.0]) <= 1e-15 * m.peak() * 1.0001);
        assert!(m.eval(&[0.9 * r, 0.0]) > 1e-15 * m.peak());
    }

    #[test]
    fn normalization_certificates() {
        for m in [
            Mollifier::gaussian(1, 1.0).unwrap(),
            Mollifier::gaussian(2, 1.0).unwrap(),
            Mollifier::gaussian(2, 0.5).unwrap(),
            Mollifier::band_limited(1, 1.0).unwrap(),
            Mollifier::band_limited(2, 1.0).unwrap(),
            Mollifier::band_limited(2, 2.0).unwrap(),
        ] {
            let i = m.normalization_integral();
            assert!((i - 1.0).abs() < 1e-10, "{m:?}: {i}");
        }
    }

    #[test]
    fn band_limited_nonnegative_and_peaked() {
        let m = Mollifier::band_limited(2, 1.0).unwrap();
        let peak = m.peak();
        for i in 0..200 {
            let x = i as f64 * 0.37 - 37.0;
            let v = m.eval(&[x, 0.5 * x]);
            assert!(v >= 0.0);
            assert!(v <= peak * 1.0000001);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Mollifier::gaussian(0, 1.0).is_err());
        assert!(Mollifier::gaussian(2, 0.0).is_err());
        assert!(Mollifier::band_limited(2, -1.0).is_err());
    }
}
