//! Summation regions and their membership conventions.
//!
//! Ratio intervals are half-open `[a, b)` and the frequency constraint is
//! closed (`λ_j ≤ λ`); this restores exact interval additivity. Boundary
//! decisions use a relative guard band of `1e-12`: points whose ratio falls
//! within the guard of `a` or `b` are re-tested with exact integer arithmetic
//! when the bound is rational and integer frequency squares are available
//! (the torus/lattice path), and take the float verdict otherwise. Both the
//! spectral and the lattice-counting paths call the same predicates, so they
//! agree bit-for-bit.

use crate::error::{Error, Result};
use serde::Serialize;

const RATIO_GUARD: f64 = 1e-12;

/// Cap on rational denominators used for exact boundary retests; larger
/// denominators would overflow the u128 cross-multiplication.
const MAX_RATIONAL_DEN: u64 = 1_000_000_000;

/// An interval endpoint for eigenfrequency ratios, optionally carrying an
/// exact rational representation `p/q` for boundary retests.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioBound {
    value: f64,
    rational: Option<(u64, u64)>,
}

impl RatioBound {
    /// Float-only bound; boundary ties resolve by the float verdict.
    pub fn new(value: f64) -> Self {
        RatioBound {
            value,
            rational: None,
        }
    }

    /// Exact rational bound `p/q`.
    pub fn from_rational(p: u64, q: u64) -> Result<Self> {
        if q == 0 || q > MAX_RATIONAL_DEN || p > MAX_RATIONAL_DEN {
            return Err(Error::invalid(format!(
                "rational bound {p}/{q} outside supported range"
            )));
        }
        Ok(RatioBound {
            value: p as f64 / q as f64,
            rational: Some((p, q)),
        })
    }

    /// Parse `"p/q"` or a decimal literal. Decimal literals with at most 9
    /// fractional digits get an exact rational representation.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: u64 = p
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
            let q: u64 = q
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
            return Self::from_rational(p, q);
        }
        let value: f64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad ratio bound {s:?}")))?;
        if let Some((int, frac)) = s.split_once('.') {
            if !int.starts_with('-')
                && frac.len() <= 9
                && frac.chars().all(|c| c.is_ascii_digit())
                && int.chars().all(|c| c.is_ascii_digit())
            {
                let q = 10u64.pow(frac.len() as u32);
                if let (Ok(i), Ok(f)) = (int.parse::<u64>(), frac.parse::<u64>()) {
                    if let Some(p) = i.checked_mul(q).and_then(|v| v.checked_add(f)) {
                        if p <= MAX_RATIONAL_DEN {
                            return Self::from_rational(p, q);
                        }
                    }
                }
            }
        } else if let Ok(p) = s.parse::<u64>() {
            return Self::from_rational(p, 1);
        }
        Ok(Self::new(value))
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn rational(&self) -> Option<(u64, u64)> {
        self.rational
    }

    fn near(&self, ratio: f64) -> bool {
        (ratio - self.value).abs() <= RATIO_GUARD * self.value.abs().max(1.0)
    }

    /// `self ≤ √(jpsq/jsq)` decided exactly when possible.
    fn le_ratio_exact(&self, jpsq: u64, jsq: u64, ratio: f64) -> bool {
        if self.near(ratio) {
            if let Some((p, q)) = self.rational {
                // p/q ≤ √(jpsq/jsq)  ⇔  p² jsq ≤ q² jpsq
                return (p as u128 * p as u128) * jsq as u128
                    <= (q as u128 * q as u128) * jpsq as u128;
            }
        }
        ratio >= self.value
    }

    /// `√(jpsq/jsq) < self` decided exactly when possible.
    fn gt_ratio_exact(&self, jpsq: u64, jsq: u64, ratio: f64) -> bool {
        if self.near(ratio) {
            if let Some((p, q)) = self.rational {
                // √(jpsq/jsq) < p/q  ⇔  q² jpsq < p² jsq
                return (q as u128 * q as u128) * (jpsq as u128)
                    < (p as u128 * p as u128) * (jsq as u128);
            }
        }
        ratio < self.value
    }
}

/// The truncated cone `{λ_j ≤ λ, μ_k/λ_j ∈ [a, b)}` with `[a, b] ⊂ (0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConeRegion {
    a: RatioBound,
    b: RatioBound,
    lambda_max: f64,
}

impl ConeRegion {
    pub fn new(a: f64, b: f64, lambda_max: f64) -> Result<Self> {
        Self::with_bounds(RatioBound::new(a), RatioBound::new(b), lambda_max)
    }

    pub fn with_bounds(a: RatioBound, b: RatioBound, lambda_max: f64) -> Result<Self> {
        if !(a.value > 0.0 && a.value < b.value && b.value < 1.0) {
            return Err(Error::invalid(format!(
                "cone interval [{}, {}) must satisfy 0 < a < b < 1",
                a.value, b.value
            )));
        }
        if !(lambda_max > 0.0) || !lambda_max.is_finite() {
            return Err(Error::invalid(format!(
                "lambda_max={lambda_max} must be positive and finite"
            )));
        }
        Ok(ConeRegion { a, b, lambda_max })
    }

    pub fn a(&self) -> &RatioBound {
        &self.a
    }

    pub fn b(&self) -> &RatioBound {
        &self.b
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    /// Float membership for `μ/λ ∈ [a, b)`; requires `λ > 0`.
    pub fn contains_ratio(&self, mu: f64, lambda: f64) -> bool {
        let r = mu / lambda;
        r >= self.a.value && r < self.b.value
    }

    /// Exact membership from integer frequency squares: `μ = √jpsq`,
    /// `λ = √jsq`. Shared by the lattice counter and the torus spectral path.
    pub fn contains_integer_sq(&self, jpsq: u64, jsq: u64) -> bool {
        debug_assert!(jsq > 0);
        let r = (jpsq as f64).sqrt() / (jsq as f64).sqrt();
        self.a.le_ratio_exact(jpsq, jsq, r) && self.b.gt_ratio_exact(jpsq, jsq, r)
    }
}

/// The strip `{λ_j ≤ λ, |μ_k - cλ_j| ≤ w(λ)}` with width law `w(λ) = w0·λ^p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StripRegion {
    c: f64,
    w0: f64,
    p: f64,
    lambda_max: f64,
}

impl StripRegion {
    pub fn new(c: f64, w0: f64, p: f64, lambda_max: f64) -> Result<Self> {
        if !(c > 0.0 && c < 1.0) {
            return Err(Error::invalid(format!("strip slope c={c} outside (0, 1)")));
        }
        if !(w0 > 0.0) {
            return Err(Error::invalid(format!(
                "strip width scale w0={w0} must be positive (w must grow to infinity)"
            )));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::invalid(format!(
                "strip width exponent p={p} outside [0, 1]"
            )));
        }
        if !(lambda_max > 0.0) || !lambda_max.is_finite() {
            return Err(Error::invalid(format!(
                "lambda_max={lambda_max} must be positive and finite"
            )));
        }
        Ok(StripRegion {
            c,
            w0,
            p,
            lambda_max,
        })
    }

    /// Enforces the hypothesis `p ≤ 1 - 1/n` of the ladder asymptotics.
    pub fn validate_for_dimension(&self, n: u32) -> Result<()> {
        let limit = 1.0 - 1.0 / n as f64;
        if self.p > limit {
            return Err(Error::invalid(format!(
                "width exponent p={} violates p <= 1 - 1/n = {limit}",
                self.p
            )));
        }
        Ok(())
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn w0(&self) -> f64 {
        self.w0
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    pub fn width_at(&self, lambda: f64) -> f64 {
        self.w0 * lambda.powf(self.p)
    }

    /// Closed strip membership at the region's own width `w(lambda_max)`.
    pub fn contains(&self, mu: f64, lambda: f64) -> bool {
        (mu - self.c * lambda).abs() <= self.width_at(self.lambda_max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_decimal_to_rational() {
        let b = RatioBound::parse("0.3").unwrap();
        assert_eq!(b.rational(), Some((3, 10)));
        assert_eq!(b.value(), 0.3);
        let b = RatioBound::parse("0.125").unwrap();
        assert_eq!(b.rational(), Some((125, 1000)));
        let b = RatioBound::parse("1/3").unwrap();
        assert_eq!(b.rational(), Some((1, 3)));
        // too many digits: float-only
        let b = RatioBound::parse("0.12345678901234").unwrap();
        assert_eq!(b.rational(), None);
        assert!(RatioBound::parse("x").is_err());
        assert!(RatioBound::parse("1/0").is_err());
    }

    #[test]
    fn cone_validation() {
        assert!(ConeRegion::new(0.3, 0.7, 10.0).is_ok());
        assert!(ConeRegion::new(0.0, 0.7, 10.0).is_err());
        assert!(ConeRegion::new(0.3, 1.0, 10.0).is_err());
        assert!(ConeRegion::new(0.7, 0.3, 10.0).is_err());
        assert!(ConeRegion::new(0.3, 0.7, 0.0).is_err());
    }

    #[test]
    fn exact_boundary_is_half_open() {
        // ratio exactly 3/5: jpsq/jsq = 9/25, e.g. (3,4) in Z².
        let jpsq = 9u64;
        let jsq = 25u64;
        let at_lower = ConeRegion::with_bounds(
            RatioBound::from_rational(3, 5).unwrap(),
            RatioBound::new(0.9),
            10.0,
        )
        .unwrap();
        assert!(at_lower.contains_integer_sq(jpsq, jsq)); // a ≤ ratio: closed
        let at_upper = ConeRegion::with_bounds(
            RatioBound::new(0.1),
            RatioBound::from_rational(3, 5).unwrap(),
            10.0,
        )
        .unwrap();
        assert!(!at_upper.contains_integer_sq(jpsq, jsq)); // ratio < b: open
    }

    #[test]
    fn float_and_exact_paths_agree_off_boundary() {
        let region = ConeRegion::new(0.3, 0.7, 100.0).unwrap();
        for j1 in 1..40u64 {
            for j2 in 0..40u64 {
                let jpsq = j1 * j1;
                let jsq = jpsq + j2 * j2;
                let exact = region.contains_integer_sq(jpsq, jsq);
                let float =
                    region.contains_ratio((jpsq as f64).sqrt(), (jsq as f64).sqrt());
                assert_eq!(exact, float, "j=({j1},{j2})");
            }
        }
    }

    #[test]
    fn strip_validation_and_width() {
        let s = StripRegion::new(0.6, 1.0, 0.5, 100.0).unwrap();
        assert!((s.width_at(100.0) - 10.0).abs() < 1e-12);
        assert!(s.validate_for_dimension(2).is_ok());
        let s = StripRegion::new(0.6, 1.0, 0.6, 100.0).unwrap();
        assert!(s.validate_for_dimension(2).is_err()); // 0.6 > 1/2
        assert!(s.validate_for_dimension(3).is_ok()); // 0.6 < 2/3
        assert!(StripRegion::new(0.6, 0.0, 0.5, 100.0).is_err()); // degenerate w0
        assert!(StripRegion::new(1.0, 1.0, 0.5, 100.0).is_err());
    }
}
