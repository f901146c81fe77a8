//! Gauss–Legendre quadrature.
//!
//! Nodes are roots of the Legendre polynomial `P_n`, located by Newton
//! iteration from the Chebyshev-like initial guess; weights follow from
//! `w_i = 2 / ((1 - x_i^2) P_n'(x_i)^2)`.

/// Evaluate `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_and_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x.abs();
        weights[i] = w;
        nodes[n - 1 - i] = x.abs();
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
        let (_, d) = legendre_and_derivative(n, 0.0);
        weights[n / 2] = 2.0 / (d * d);
    }
    (nodes, weights)
}

/// `∫_a^b f` by a single n-node Gauss–Legendre rule.
pub fn integrate_gl<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let (x, w) = gauss_legendre(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = crate::summation::KahanSum::new();
    for i in 0..n {
        acc.add(w[i] * f(mid + half * x[i]));
    }
    half * acc.value()
}

/// `∫_a^b f` by `panels` equal panels of an n-node rule each.
pub fn integrate_composite_gl<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    panels: usize,
    n: usize,
) -> f64 {
    let (x, w) = gauss_legendre(n);
    let step = (b - a) / panels as f64;
    let mut acc = crate::summation::KahanSum::new();
    for p in 0..panels {
        let lo = a + p as f64 * step;
        let mid = lo + 0.5 * step;
        let half = 0.5 * step;
        for i in 0..n {
            acc.add(w[i] * f(mid + half * x[i]));
        }
    }
    0.5 * step * acc.value()
}
