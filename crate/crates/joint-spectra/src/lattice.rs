//! Exact enumeration and counting of integer lattice points in balls, cones,
//! and strips; the counting oracle behind the torus spectral sums, and the
//! constant-width ladder counterexample scanner.
//!
//! Conventions match the spectral path exactly: ratio intervals are
//! half-open `[a, b)` via the shared [`ConeRegion`] predicate, the norm
//! constraint is closed (`(|j|² as f64) ≤ λ²` with `|j|²` exact), and `j = 0`
//! is excluded from cone and strip counts (its ratio is undefined) but
//! included in ball counts. Counting parallelizes over the first coordinate;
//! totals are exact integer sums and therefore deterministic.

use crate::error::{Error, Result};
use crate::geometry::{last_coord_bound, lattice_ball_estimate, DEFAULT_POINT_BUDGET, MAX_AMBIENT_DIM};
use crate::region::{ConeRegion, RatioBound};
use crate::summation::partition_map;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LatticeShape {
    Ball,
    Cone { a: RatioBound, b: RatioBound },
    Strip { c: f64, w: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeQuery {
    pub n: u32,
    pub d: u32,
    pub lambda: f64,
    pub shape: LatticeShape,
}

impl LatticeQuery {
    pub fn validate(&self) -> Result<()> {
        if !(2..=MAX_AMBIENT_DIM as u32).contains(&self.n) {
            return Err(Error::invalid(format!(
                "lattice dimension n={} outside 2..={MAX_AMBIENT_DIM}",
                self.n
            )));
        }
        if self.d == 0 || self.d >= self.n {
            return Err(Error::invalid(format!(
                "split dimension d={} outside 1..={}",
                self.d,
                self.n - 1
            )));
        }
        if !(self.lambda > 0.0) || !self.lambda.is_finite() {
            return Err(Error::invalid(format!(
                "lambda={} must be positive and finite",
                self.lambda
            )));
        }
        if let LatticeShape::Strip { c, w } = self.shape {
            if !(c > 0.0 && c < 1.0) {
                return Err(Error::invalid(format!("strip slope c={c} outside (0, 1)")));
            }
            if !w.is_finite() {
                return Err(Error::invalid(format!("strip width w={w} must be finite")));
            }
        }
        Ok(())
    }
}

struct Walker<'a, P: Fn(u64, u64) -> bool> {
    n: usize,
    d: usize,
    r2: f64,
    pred: &'a P,
    count: u64,
}

impl<P: Fn(u64, u64) -> bool> Walker<'_, P> {
    fn descend(&mut self, depth: usize, jsq: i64, jpsq: i64) {
        if depth == self.n {
            if (self.pred)(jpsq as u64, jsq as u64) {
                self.count += 1;
            }
            return;
        }
        let bound = last_coord_bound(jsq, self.r2);
        let in_split = depth < self.d;
        for c in -bound..=bound {
            let c2 = c * c;
            self.descend(depth + 1, jsq + c2, if in_split { jpsq + c2 } else { jpsq });
        }
    }
}

fn count_filtered<P>(n: usize, d: usize, lambda: f64, budget: u64, pred: P) -> Result<u64>
where
    P: Fn(u64, u64) -> bool + Sync,
{
    let estimate = lattice_ball_estimate(n, lambda);
    if estimate > budget as f64 {
        return Err(Error::BudgetExceeded { estimate, budget });
    }
    let r2 = lambda * lambda;
    let first = last_coord_bound(0, r2);
    let partitions = (2 * first + 1).max(0) as usize;
    let partials = partition_map(partitions, |i| {
        let j1 = i as i64 - first;
        let mut w = Walker {
            n,
            d,
            r2,
            pred: &pred,
            count: 0,
        };
        w.descend(1, j1 * j1, if d >= 1 { j1 * j1 } else { 0 });
        w.count
    });
    Ok(partials.iter().sum())
}

/// Exact count with the default point budget.
pub fn count(query: &LatticeQuery) -> Result<u64> {
    count_with_budget(query, DEFAULT_POINT_BUDGET)
}

/// Exact count with an explicit point budget (resource guard).
pub fn count_with_budget(query: &LatticeQuery, budget: u64) -> Result<u64> {
    query.validate()?;
    let n = query.n as usize;
    let d = query.d as usize;
    match query.shape {
        LatticeShape::Ball => count_filtered(n, d, query.lambda, budget, |_, _| true),
        LatticeShape::Cone { a, b } => {
            let region = ConeRegion::with_bounds(a, b, query.lambda)?;
            count_filtered(n, d, query.lambda, budget, move |jpsq, jsq| {
                jsq > 0 && region.contains_integer_sq(jpsq, jsq)
            })
        }
        LatticeShape::Strip { c, w } => {
            count_filtered(n, d, query.lambda, budget, move |jpsq, jsq| {
                jsq > 0 && ((jpsq as f64).sqrt() - c * (jsq as f64).sqrt()).abs() <= w
            })
        }
    }
}

/// Continuum main term for the cone count:
/// `(vol S^{d-1})(vol S^{n-d-1})/n · (∫_a^b t^{d-1}(1-t²)^{(n-d-2)/2} dt) · λ^n`.
pub fn main_term_cone(n: u32, d: u32, a: f64, b: f64, lambda: f64) -> Result<f64> {
    let integral = crate::spectral::density_integral(n, d, a, b)?;
    Ok(crate::spectral::vol_sphere(d - 1) * crate::spectral::vol_sphere(n - d - 1) / n as f64
        * integral
        * lambda.powi(n as i32))
}

/// One row of a constant-width scan.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct JumpScanRow {
    pub w: f64,
    pub count_closed: u64,
    pub count_half_open: u64,
    pub flagged: bool,
}

/// Scan strip counts in ℤ² over a grid of constant widths around the line of
/// rational slope `p/q` (so `c = p/√(p²+q²)`), flagging consecutive width
/// pairs whose count jumps by at least λ/4 while the width moves by at most
/// 4/λ — the failure mode of constant-width ladder asymptotics. Both closed
/// (`margin ≤ w`) and half-open (`margin < w`) counts are reported; they
/// differ exactly when some margin ties a grid value.
pub fn jump_scan(
    slope_num: u64,
    slope_den: u64,
    lambda: f64,
    w_grid: &[f64],
) -> Result<Vec<JumpScanRow>> {
    if slope_num == 0 || slope_den == 0 {
        return Err(Error::invalid("slope p/q needs positive p and q"));
    }
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::invalid(format!("lambda={lambda} must be positive")));
    }
    if w_grid.is_empty() {
        return Err(Error::invalid("empty width grid"));
    }
    let estimate = lattice_ball_estimate(2, lambda);
    if estimate > DEFAULT_POINT_BUDGET as f64 {
        return Err(Error::BudgetExceeded {
            estimate,
            budget: DEFAULT_POINT_BUDGET,
        });
    }
    let p = slope_num as f64;
    let q = slope_den as f64;
    let c = p / (p * p + q * q).sqrt();

    let r2 = lambda * lambda;
    let first = last_coord_bound(0, r2);
    let mut margins: Vec<f64> = Vec::new();
    for j1 in -first..=first {
        let bound = last_coord_bound(j1 * j1, r2);
        for j2 in -bound..=bound {
            if j1 == 0 && j2 == 0 {
                continue;
            }
            let jsq = (j1 * j1 + j2 * j2) as f64;
            margins.push((j1.abs() as f64 - c * jsq.sqrt()).abs());
        }
    }
    margins.sort_by(f64::total_cmp);

    let mut rows = Vec::with_capacity(w_grid.len());
    let mut prev: Option<(f64, u64)> = None;
    for &w in w_grid {
        let count_closed = margins.partition_point(|&m| m <= w) as u64;
        let count_half_open = margins.partition_point(|&m| m < w) as u64;
        let flagged = match prev {
            Some((pw, pc)) => {
                let jump = count_closed.abs_diff(pc) as f64;
                jump >= lambda / 4.0 && (w - pw).abs() <= 4.0 / lambda
            }
            None => false,
        };
        rows.push(JumpScanRow {
            w,
            count_closed,
            count_half_open,
            flagged,
        });
        prev = Some((w, count_closed));
    }
    Ok(rows)
}
