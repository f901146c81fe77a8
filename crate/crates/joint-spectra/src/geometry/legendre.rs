//! Fully normalized associated Legendre functions.
//!
//! `assoc_legendre_normalized(l, m, x)` returns `P̄_l^m(x)` scaled so that the
//! spherical harmonic `Y_l^m(θ, φ) = P̄_l^m(cos φ) e^{imθ} / √(2π)` has unit
//! L²(S²) norm, i.e. `∫_{-1}^{1} P̄_l^m(x)² dx = 1`. The Condon–Shortley phase
//! is included. The forward column recurrence is stable in `l` and free of
//! factorial overflow through at least `l = 10⁴`.

use crate::error::{Error, Result};

/// Seed value `P̄_m^m(x)` of the column recurrence.
///
/// `P̄_0^0 = √(1/2)` and `P̄_m^m = -√((2m+1)/(2m)) · √(1-x²) · P̄_{m-1}^{m-1}`.
fn seed_diagonal(m: u32, x: f64) -> f64 {
    let sin_term = ((1.0 - x) * (1.0 + x)).max(0.0).sqrt();
    let mut p = (0.5f64).sqrt();
    for k in 1..=m {
        let kf = k as f64;
        p *= -((2.0 * kf + 1.0) / (2.0 * kf)).sqrt() * sin_term;
    }
    p
}

#[inline]
fn step_up(l: u32, m: u32, x: f64, p_prev: f64, p_prev2: f64) -> f64 {
    // P̄_l^m = a_l^m (x P̄_{l-1}^m - b_l^m P̄_{l-2}^m)
    let lf = l as f64;
    let mf = m as f64;
    let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
    let b = (((lf - 1.0) * (lf - 1.0) - mf * mf) / (4.0 * (lf - 1.0) * (lf - 1.0) - 1.0)).sqrt();
    a * (x * p_prev - b * p_prev2)
}

fn check_domain(l: u32, m: u32, x: f64) -> Result<()> {
    if m > l {
        return Err(Error::invalid(format!("order m={m} exceeds degree l={l}")));
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::invalid(format!("argument x={x} outside [-1, 1]")));
    }
    Ok(())
}

/// `P̄_l^m(x)` for `0 ≤ m ≤ l`, `|x| ≤ 1`.
pub fn assoc_legendre_normalized(l: u32, m: u32, x: f64) -> Result<f64> {
    check_domain(l, m, x)?;
    let mut p2 = seed_diagonal(m, x);
    if l == m {
        return Ok(p2);
    }
    let mut p1 = (2.0 * m as f64 + 3.0).sqrt() * x * p2;
    if l == m + 1 {
        return Ok(p1);
    }
    for ll in (m + 2)..=l {
        let p = step_up(ll, m, x, p1, p2);
        p2 = p1;
        p1 = p;
    }
    Ok(p1)
}

/// The column `P̄_m^m(x), P̄_{m+1}^m(x), ..., P̄_{l_max}^m(x)`.
pub fn legendre_column(l_max: u32, m: u32, x: f64) -> Result<Vec<f64>> {
    check_domain(l_max, m, x)?;
    let mut out = Vec::with_capacity((l_max - m + 1) as usize);
    let mut p2 = seed_diagonal(m, x);
    out.push(p2);
    if l_max == m {
        return Ok(out);
    }
    let mut p1 = (2.0 * m as f64 + 3.0).sqrt() * x * p2;
    out.push(p1);
    for ll in (m + 2)..=l_max {
        let p = step_up(ll, m, x, p1, p2);
        p2 = p1;
        p1 = p;
        out.push(p);
    }
    Ok(out)
}

/// The row `P̄_l^0(x), P̄_l^1(x), ..., P̄_l^l(x)` for a fixed degree.
///
/// Each order is climbed from its diagonal seed, so the cost is O(l²); columns
/// should be preferred when sweeping degrees.
pub fn legendre_row(l: u32, x: f64) -> Result<Vec<f64>> {
    check_domain(l, 0, x)?;
    let mut out = vec![0.0; (l + 1) as usize];
    let mut diag = (0.5f64).sqrt();
    let sin_term = ((1.0 - x) * (1.0 + x)).max(0.0).sqrt();
    for m in 0..=l {
        if m > 0 {
            let mf = m as f64;
            diag *= -((2.0 * mf + 1.0) / (2.0 * mf)).sqrt() * sin_term;
        }
        let mut p2 = diag;
        if l == m {
            out[m as usize] = p2;
            continue;
        }
        let mut p1 = (2.0 * m as f64 + 3.0).sqrt() * x * p2;
        for ll in (m + 2)..=l {
            let p = step_up(ll, m, x, p1, p2);
            p2 = p1;
            p1 = p;
        }
        out[m as usize] = p1;
    }
    Ok(out)
}
