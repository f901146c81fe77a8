//! Shared oracles for the integration suites.
#![allow(dead_code)]

/// Closed-form fully normalized associated Legendre functions for `l ≤ 4`
/// (Condon–Shortley phase included), built from the textbook polynomial
/// table and the explicit normalization `√((2l+1)/2 · (l-m)!/(l+m)!)`.
/// Independent of the recurrence implementation.
pub fn legendre_table(l: u32, m: u32, x: f64) -> f64 {
    let s = ((1.0 - x) * (1.0 + x)).max(0.0).sqrt();
    let p = match (l, m) {
        (0, 0) => 1.0,
        (1, 0) => x,
        (1, 1) => -s,
        (2, 0) => 0.5 * (3.0 * x * x - 1.0),
        (2, 1) => -3.0 * x * s,
        (2, 2) => 3.0 * (1.0 - x * x),
        (3, 0) => 0.5 * (5.0 * x * x * x - 3.0 * x),
        (3, 1) => -1.5 * (5.0 * x * x - 1.0) * s,
        (3, 2) => 15.0 * x * (1.0 - x * x),
        (3, 3) => -15.0 * s * s * s,
        (4, 0) => 0.125 * (35.0 * x.powi(4) - 30.0 * x * x + 3.0),
        (4, 1) => -2.5 * (7.0 * x * x * x - 3.0 * x) * s,
        (4, 2) => 7.5 * (7.0 * x * x - 1.0) * (1.0 - x * x),
        (4, 3) => -105.0 * x * s * s * s,
        (4, 4) => 105.0 * (1.0 - x * x) * (1.0 - x * x),
        _ => panic!("closed-form table covers l <= 4"),
    };
    let mut factorial_ratio = 1.0; // (l-m)!/(l+m)!
    for k in (l - m + 1)..=(l + m) {
        factorial_ratio /= k as f64;
    }
    ((2.0 * l as f64 + 1.0) / 2.0 * factorial_ratio).sqrt() * p
}

/// Least-squares slope of `log y` against `log x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let cov: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let var: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    cov / var
}

/// Scientific-notation rendering for slices of floats.
pub fn fmt_sci(values: &[f64]) -> String {
    let parts: Vec<String> = values.iter().map(|v| format!("{v:.3e}")).collect();
    format!("[{}]", parts.join(", "))
}

/// Print one acceptance line and assert it.
pub fn criterion(id: u32, label: &str, pass: bool, detail: &str) {
    println!(
        "criterion {id:2} [{}] {label}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {id} ({label}) failed: {detail}");
}
