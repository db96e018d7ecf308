//! Poisson summation check.
//!
//! With `f^(xi) = int f(x) e^{-i x xi} dx` the identity reads
//! `sum_m f^(m) = 2π sum_k f(2πk)`.

use std::f64::consts::PI;

use rustfft::num_complex::Complex64;

/// `|sum_{|m|<=M} f^(m) - 2π sum_{|k|<=M} f(2πk)|`.
pub fn poisson_residual(
    f_hat: impl Fn(f64) -> Complex64,
    f: impl Fn(f64) -> f64,
    m_max: u32,
) -> f64 {
    let m = m_max as i64;
    // outermost terms first so the small tails are not absorbed
    let mut lhs = Complex64::new(0.0, 0.0);
    let mut rhs = 0.0;
    for a in (1..=m).rev() {
        lhs += f_hat(a as f64) + f_hat(-a as f64);
        rhs += f(2.0 * PI * a as f64) + f(-2.0 * PI * a as f64);
    }
    lhs += f_hat(0.0);
    rhs += f(0.0);
    (lhs - 2.0 * PI * rhs).norm()
}

/// `e^{-(x/s)^2}` and its transform `s sqrt(π) e^{-(s xi)^2 / 4}`.
pub fn gaussian_pair(s: f64) -> (impl Fn(f64) -> Complex64, impl Fn(f64) -> f64) {
    let f_hat = move |xi: f64| Complex64::new(s * PI.sqrt() * (-(s * xi).powi(2) / 4.0).exp(), 0.0);
    let f = move |x: f64| (-(x / s).powi(2)).exp();
    (f_hat, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_family() {
        for s in [1.0, 10.0, 0.5, 3.0] {
            let (fh, f) = gaussian_pair(s);
            let r = poisson_residual(fh, f, 100);
            assert!(r < 1e-12, "{s}: {r}");
        }
    }

    #[test]
    fn missing_two_pi_is_detected() {
        let (fh, f) = gaussian_pair(1.0);
        let r = poisson_residual(fh, |x| f(x) / (2.0 * PI), 100);
        assert!(r > 1.0);
    }

    #[test]
    fn period_shift_reindexes() {
        let (fh, f) = gaussian_pair(1.0);
        let base = poisson_residual(&fh, &f, 100);
        let shifted = poisson_residual(
            |xi| fh(xi) * Complex64::cis(-2.0 * PI * xi),
            |x| f(x - 2.0 * PI),
            100,
        );
        assert!(shifted < 1e-12);
        assert!((shifted - base).abs() < 1e-12);
    }
}
