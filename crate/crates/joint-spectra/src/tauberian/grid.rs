//! Planar grids, interface extraction, and nearest-boundary distance.
//!
//! The boundary of a region is located on a uniform grid of cell centers:
//! every edge between two centers with differing indicator values is
//! bisected a fixed number of times, giving an interface point within a
//! small fraction of the spacing of the true boundary. Distances to the
//! interface cloud are exact nearest-neighbor distances, found by a bucketed
//! ring search whose stopping rule guarantees the same result as brute
//! force. Classification plus bisection-refined interfaces keep thickening
//! areas within the documented 2% error target at h a quarter of the band
//! width.

use crate::summation::partition_map;

const BISECTIONS: usize = 6;

#[derive(Debug, Clone, Copy)]
pub(crate) struct GridSpec {
    pub lo: [f64; 2],
    pub h: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    pub fn cover(lo: [f64; 2], hi: [f64; 2], h: f64) -> Self {
        let nx = (((hi[0] - lo[0]) / h).ceil() as usize).max(1);
        let ny = (((hi[1] - lo[1]) / h).ceil() as usize).max(1);
        GridSpec { lo, h, nx, ny }
    }

    #[inline]
    pub fn center(&self, ix: usize, iy: usize) -> [f64; 2] {
        [
            self.lo[0] + (ix as f64 + 0.5) * self.h,
            self.lo[1] + (iy as f64 + 0.5) * self.h,
        ]
    }

    pub fn cells(&self) -> usize {
        self.nx * self.ny
    }
}

/// Interface point cloud with a uniform-bucket nearest-neighbor index.
pub(crate) struct InterfaceIndex {
    points: Vec<[f64; 2]>,
    origin: [f64; 2],
    cell: f64,
    nbx: i64,
    nby: i64,
    buckets: Vec<Vec<u32>>,
}

impl InterfaceIndex {
    fn build(points: Vec<[f64; 2]>, cell: f64) -> Self {
        if points.is_empty() {
            return InterfaceIndex {
                points,
                origin: [0.0, 0.0],
                cell,
                nbx: 0,
                nby: 0,
                buckets: Vec::new(),
            };
        }
        let mut lo = points[0];
        let mut hi = points[0];
        for p in &points {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        let nbx = (((hi[0] - lo[0]) / cell).floor() as i64 + 1).max(1);
        let nby = (((hi[1] - lo[1]) / cell).floor() as i64 + 1).max(1);
        let mut buckets = vec![Vec::new(); (nbx * nby) as usize];
        for (i, p) in points.iter().enumerate() {
            let bx = (((p[0] - lo[0]) / cell).floor() as i64).clamp(0, nbx - 1);
            let by = (((p[1] - lo[1]) / cell).floor() as i64).clamp(0, nby - 1);
            buckets[(bx * nby + by) as usize].push(i as u32);
        }
        InterfaceIndex {
            points,
            origin: lo,
            cell,
            nbx,
            nby,
            buckets,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Distance from `x` to the nearest interface point, exact whenever it
    /// is at most `cap`; returns +∞ when the cloud is empty or every point
    /// is farther than `cap`. Ring-by-ring bucket scan: after finishing ring
    /// r every unscanned point is farther than `r·cell`, so the best
    /// candidate is final once it is within that bound, and the search stops
    /// once the bound passes `cap` without a candidate inside it.
    pub fn distance_within(&self, x: [f64; 2], cap: f64) -> f64 {
        if self.points.is_empty() {
            return f64::INFINITY;
        }
        let bx = ((x[0] - self.origin[0]) / self.cell).floor() as i64;
        let by = ((x[1] - self.origin[1]) / self.cell).floor() as i64;
        let dx_max = bx.max(self.nbx - 1 - bx).max(bx.abs());
        let dy_max = by.max(self.nby - 1 - by).max(by.abs());
        let max_ring = dx_max.max(dy_max) + 1;
        let mut best = f64::INFINITY;
        for r in 0..=max_ring {
            self.scan_ring(bx, by, r, x, &mut best);
            let proven = r as f64 * self.cell;
            let d = best.sqrt();
            if d <= proven {
                return d;
            }
            if proven > cap && d > cap {
                return f64::INFINITY;
            }
        }
        best.sqrt()
    }

    #[inline]
    fn scan_bucket(&self, cx: i64, cy: i64, x: [f64; 2], best: &mut f64) {
        if cx < 0 || cy < 0 || cx >= self.nbx || cy >= self.nby {
            return;
        }
        for &i in &self.buckets[(cx * self.nby + cy) as usize] {
            let p = self.points[i as usize];
            let d2 = (p[0] - x[0]) * (p[0] - x[0]) + (p[1] - x[1]) * (p[1] - x[1]);
            if d2 < *best {
                *best = d2;
            }
        }
    }

    fn scan_ring(&self, bx: i64, by: i64, r: i64, x: [f64; 2], best: &mut f64) {
        if r == 0 {
            self.scan_bucket(bx, by, x, best);
            return;
        }
        for di in -r..=r {
            self.scan_bucket(bx + di, by - r, x, best);
            self.scan_bucket(bx + di, by + r, x, best);
        }
        for dj in (-r + 1)..r {
            self.scan_bucket(bx - r, by + dj, x, best);
            self.scan_bucket(bx + r, by + dj, x, best);
        }
    }
}

/// Grid classification of a region plus its extracted interface.
pub(crate) struct SignedDistanceField {
    pub spec: GridSpec,
    pub inside: Vec<bool>,
    pub interface: InterfaceIndex,
}

impl SignedDistanceField {
    /// Classify cell centers of `spec` under `indicator` and extract the
    /// bisection-refined interface cloud.
    pub fn build<F>(spec: GridSpec, indicator: &F) -> Self
    where
        F: Fn(&[f64]) -> bool + Sync,
    {
        let ny = spec.ny;
        let columns = partition_map(spec.nx, |ix| {
            let mut col = vec![false; ny];
            for (iy, cell) in col.iter_mut().enumerate() {
                *cell = indicator(&spec.center(ix, iy));
            }
            col
        });
        let mut inside = Vec::with_capacity(spec.cells());
        for col in &columns {
            inside.extend_from_slice(col);
        }

        let refine = |mut p_in: [f64; 2], mut p_out: [f64; 2]| -> [f64; 2] {
            for _ in 0..BISECTIONS {
                let mid = [(p_in[0] + p_out[0]) / 2.0, (p_in[1] + p_out[1]) / 2.0];
                if indicator(&mid) {
                    p_in = mid;
                } else {
                    p_out = mid;
                }
            }
            [(p_in[0] + p_out[0]) / 2.0, (p_in[1] + p_out[1]) / 2.0]
        };

        let point_lists = partition_map(spec.nx, |ix| {
            let mut pts = Vec::new();
            let col = &columns[ix];
            for iy in 0..ny {
                let a_in = col[iy];
                let a = spec.center(ix, iy);
                if iy + 1 < ny && col[iy + 1] != a_in {
                    let b = spec.center(ix, iy + 1);
                    pts.push(if a_in { refine(a, b) } else { refine(b, a) });
                }
                if ix + 1 < spec.nx && columns[ix + 1][iy] != a_in {
                    let b = spec.center(ix + 1, iy);
                    pts.push(if a_in { refine(a, b) } else { refine(b, a) });
                }
            }
            pts
        });
        let mut points = Vec::new();
        for list in point_lists {
            points.extend(list);
        }
        let cell = 4.0 * spec.h;
        SignedDistanceField {
            spec,
            inside,
            interface: InterfaceIndex::build(points, cell),
        }
    }

    #[inline]
    pub fn inside_at(&self, ix: usize, iy: usize) -> bool {
        self.inside[ix * self.spec.ny + iy]
    }

    /// Signed distance of an arbitrary point given its indicator value:
    /// negative inside the region, positive outside. Magnitudes beyond `cap`
    /// saturate to ±∞.
    pub fn signed_distance(&self, x: [f64; 2], x_inside: bool, cap: f64) -> f64 {
        let d = self.interface.distance_within(x, cap);
        if x_inside {
            -d
        } else {
            d
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nearest_neighbor_matches_brute_force() {
        // pseudo-random cloud, deterministic congruence generator
        let mut state = 1u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let pts: Vec<[f64; 2]> = (0..500).map(|_| [next() * 10.0, next() * 7.0 - 2.0]).collect();
        let idx = InterfaceIndex::build(pts.clone(), 0.9);
        for _ in 0..300 {
            let q = [next() * 14.0 - 2.0, next() * 11.0 - 4.0];
            let brute = pts
                .iter()
                .map(|p| ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt())
                .fold(f64::INFINITY, f64::min);
            let fast = idx.distance_within(q, f64::INFINITY);
            assert!((brute - fast).abs() < 1e-12, "{brute} vs {fast}");
        }
    }

    #[test]
    fn empty_cloud_is_infinitely_far() {
        let idx = InterfaceIndex::build(Vec::new(), 1.0);
        assert!(idx.distance_within([0.0, 0.0], f64::INFINITY).is_infinite());
    }

    #[test]
    fn disk_interface_hugs_the_circle() {
        let spec = GridSpec::cover([-6.0, -6.0], [6.0, 6.0], 0.25);
        let ind = |x: &[f64]| x[0] * x[0] + x[1] * x[1] <= 16.0;
        let sdf = SignedDistanceField::build(spec, &ind);
        assert!(!sdf.interface.is_empty());
        // signed distance at center and far outside
        let d0 = sdf.signed_distance([0.0, 0.0], true, 10.0);
        assert!((d0 + 4.0).abs() < 0.02, "{d0}");
        let d1 = sdf.signed_distance([5.5, 0.0], false, 10.0);
        assert!((d1 - 1.5).abs() < 0.02, "{d1}");
    }
}
