//! Compensated summation and deterministic partitioned reduction.
//!
//! Large spectral sums run over millions of terms. Every reduction in this
//! crate is either an exact integer sum or a Kahan-compensated float sum
//! evaluated per partition and combined in fixed partition order, so results
//! do not depend on thread count or scheduling.

/// Kahan compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    c: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let y = value - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum
    }

    pub fn sum_iter<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
        let mut k = Self::new();
        for v in iter {
            k.add(v);
        }
        k.value()
    }
}

/// Map `f` over partition indices `0..parts` and collect the results in
/// index order. With the `parallel` feature enabled the map runs on the
/// rayon pool; the output vector is identical either way.
pub fn partition_map<T, F>(parts: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..parts).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..parts).map(f).collect()
    }
}

/// Always-sequential variant of [`partition_map`]; used by benches to
/// compare against the parallel path.
pub fn partition_map_seq<T, F>(parts: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..parts).map(f).collect()
}

/// Kahan-combine per-partition partial sums in partition order.
pub fn combine_partials(partials: &[f64]) -> f64 {
    KahanSum::sum_iter(partials.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kahan_beats_naive_on_ill_conditioned_sum() {
        // 1 + 1e-16 repeated: naive summation loses every increment.
        let mut k = KahanSum::new();
        k.add(1.0);
        for _ in 0..1_000_000 {
            k.add(1e-16);
        }
        let exact = 1.0 + 1e-10;
        assert!((k.value() - exact).abs() < 1e-15);
    }

    #[test]
    fn partition_map_matches_sequential_bitwise() {
        let term = |i: usize| {
            let mut k = KahanSum::new();
            for j in 0..1000 {
                k.add(((i * 1000 + j) as f64).sin() * 1e-3);
            }
            k.value()
        };
        let par = partition_map(64, term);
        let seq = partition_map_seq(64, term);
        assert_eq!(par, seq);
        assert_eq!(
            combine_partials(&par).to_bits(),
            combine_partials(&seq).to_bits()
        );
    }
}
