//! Joint spectrum of the flat torus pair `T^d × 0 ⊂ T^n`.
//!
//! Eigenfunctions are exponentials indexed by `j ∈ ℤ^n`; the restriction of
//! `e_j` to the coordinate plane has a single nonzero Fourier coefficient, at
//! the matching frequency `k = -j'` (`j'` = first d coordinates), with
//! norm-square `(2π)^{-(n-d)}`. The joint spectrum is therefore the lattice
//! ball `|j| ≤ λ` mapped to `(|j'|, |j|)` with constant weights.
//!
//! The membership predicate is `(|j|² as f64) ≤ λ²` with `|j|²` exact in
//! integers, so boundary points with `|j| = λ` are included exactly as in the
//! lattice counting module.

use super::{JointEigenpair, Label, MAX_AMBIENT_DIM};
use crate::error::{Error, Result};

/// Unit-ball volume of ℝ^n (used by the enumeration budget estimate).
pub(crate) fn unit_ball_volume(n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0,
        _ => std::f64::consts::TAU / n as f64 * unit_ball_volume(n - 2),
    }
}

pub(crate) fn lattice_ball_estimate(n: usize, lambda: f64) -> f64 {
    unit_ball_volume(n) * (lambda + (n as f64).sqrt() / 2.0 + 1.0).powi(n as i32)
}

/// Largest t ≥ 0 with `(partial + t²) as f64 ≤ r2`, or -1 if none.
#[inline]
pub(crate) fn last_coord_bound(partial: i64, r2: f64) -> i64 {
    let rem = r2 - partial as f64;
    if rem < 0.0 {
        return -1;
    }
    let mut t = rem.sqrt().floor() as i64;
    while t >= 0 && ((partial + t * t) as f64) > r2 {
        t -= 1;
    }
    while (partial + (t + 1) * (t + 1)) as f64 <= r2 {
        t += 1;
    }
    t
}

pub(crate) struct TorusSpectrum {
    n: usize,
    d: usize,
    r2: f64,
    first_bound: i64,
    weight: f64,
}

impl TorusSpectrum {
    pub fn new(n: usize, d: usize, lambda_max: f64, budget: u64) -> Result<Self> {
        let estimate = lattice_ball_estimate(n, lambda_max);
        if estimate > budget as f64 {
            return Err(Error::BudgetExceeded {
                estimate,
                budget,
            });
        }
        let r2 = lambda_max * lambda_max;
        Ok(TorusSpectrum {
            n,
            d,
            r2,
            first_bound: last_coord_bound(0, r2),
            weight: std::f64::consts::TAU.powi(-((n - d) as i32)),
        })
    }

    pub fn partition_count(&self) -> usize {
        (2 * self.first_bound + 1).max(0) as usize
    }

    /// Visit every lattice point with first coordinate fixed by `index`.
    pub fn for_each_in_partition<F: FnMut(&JointEigenpair)>(&self, index: usize, mut f: F) {
        let j1 = index as i64 - self.first_bound;
        let mut coords = [0i64; MAX_AMBIENT_DIM];
        coords[0] = j1;
        self.recurse(1, j1 * j1, &mut coords, &mut f);
    }

    fn recurse<F: FnMut(&JointEigenpair)>(
        &self,
        depth: usize,
        partial: i64,
        coords: &mut [i64; MAX_AMBIENT_DIM],
        f: &mut F,
    ) {
        if depth == self.n {
            self.emit(coords, partial, f);
            return;
        }
        let bound = last_coord_bound(partial, self.r2);
        for c in -bound..=bound {
            coords[depth] = c;
            self.recurse(depth + 1, partial + c * c, coords, f);
        }
    }

    fn emit<F: FnMut(&JointEigenpair)>(
        &self,
        coords: &[i64; MAX_AMBIENT_DIM],
        jsq: i64,
        f: &mut F,
    ) {
        let jpsq: i64 = coords[..self.d].iter().map(|&c| c * c).sum();
        let mut lj = [0i32; MAX_AMBIENT_DIM];
        let mut lk = [0i32; MAX_AMBIENT_DIM];
        for i in 0..self.n {
            lj[i] = coords[i] as i32;
        }
        for i in 0..self.d {
            lk[i] = -(coords[i] as i32);
        }
        let pair = JointEigenpair {
            mu: (jpsq as f64).sqrt(),
            lambda: (jsq as f64).sqrt(),
            weight: self.weight,
            label_j: Label {
                len: self.n as u8,
                coords: lj,
            },
            label_k: Label {
                len: self.d as u8,
                coords: lk,
            },
        };
        f(&pair);
    }
}
