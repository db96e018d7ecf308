//! Sharp dyadic (Littlewood–Paley) frequency projectors.
//!
//! Block `0` holds `|r| < 1`; block `j >= 1` holds `2^{j-1} <= |r| < 2^j`.

use rustfft::num_complex::Complex64;

use super::field::SpectralField;
use super::grid::Grid;

/// Dyadic block index of `|r|`. Values within a few ulps of a power of two
/// are snapped onto it, so grid frequencies such as `2π m / Lx` land on the
/// intended side of a block edge.
pub fn dyadic_index(r: f64) -> u32 {
    let r = r.abs();
    if r < 1.0 {
        // r just below 1 by rounding is still treated as 1.
        return if 1.0 - r <= 4.0 * f64::EPSILON { 1 } else { 0 };
    }
    let e = r.log2();
    let k = e.round();
    if (r / k.exp2() - 1.0).abs() <= 4.0 * f64::EPSILON {
        k as u32 + 1
    } else {
        e.floor() as u32 + 1
    }
}

/// `Q_x^j Q_y^k f`: zeroes every coefficient outside block `(j, k)`.
pub fn lp_project(f: &SpectralField, j: u32, k: u32) -> SpectralField {
    let g = *f.grid();
    let ny = g.ny();
    let ky: Vec<bool> = (0..ny)
        .map(|q| dyadic_index(g.mode_y(q) as f64) == k)
        .collect();
    let mut out = f.clone();
    let coeffs = out.coeffs_mut();
    for i in 0..g.nx() {
        let in_x = dyadic_index(g.xi(i)) == j;
        for q in 0..ny {
            if !(in_x && ky[q]) {
                coeffs[i * ny + q] = Complex64::new(0.0, 0.0);
            }
        }
    }
    out
}

/// Largest x and y block indices that intersect the grid.
pub fn max_blocks(grid: &Grid) -> (u32, u32) {
    let jx = (0..grid.nx()).map(|i| dyadic_index(grid.xi(i))).max().unwrap_or(0);
    let ky = (0..grid.ny())
        .map(|q| dyadic_index(grid.mode_y(q) as f64))
        .max()
        .unwrap_or(0);
    (jx, ky)
}

/// Every `(j, k)` block that contains at least one grid frequency.
pub fn lp_blocks(grid: &Grid) -> Vec<(u32, u32)> {
    let (jm, km) = max_blocks(grid);
    let mut out = Vec::new();
    for j in 0..=jm {
        for k in 0..=km {
            out.push((j, k));
        }
    }
    out
}

/// Number of x modes with `xi > 0` inside block `j`.
pub fn positive_modes_in_block(grid: &Grid, j: u32) -> usize {
    (0..grid.nx())
        .filter(|&i| grid.mode_x(i) > 0 && dyadic_index(grid.xi(i)) == j)
        .count()
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::spectral::grid::Grid;

    #[test]
    fn dyadic_edges() {
        assert_eq!(dyadic_index(0.0), 0);
        assert_eq!(dyadic_index(0.99), 0);
        assert_eq!(dyadic_index(1.0), 1);
        assert_eq!(dyadic_index(1.99), 1);
        assert_eq!(dyadic_index(2.0), 2);
        assert_eq!(dyadic_index(3.0), 2);
        assert_eq!(dyadic_index(4.0), 3);
        assert_eq!(dyadic_index(-4.0), 3);
        assert_eq!(dyadic_index(4.0 * (1.0 - f64::EPSILON)), 3);
        assert_eq!(dyadic_index(255.9), 8);
    }

    #[test]
    fn single_mode_at_xi_three() {
        // Lx = 2π gives integer frequencies.
        let g = Grid::new(16, 4, 2.0 * PI).unwrap();
        let mut f = SpectralField::zeros(g);
        f.set_mode(3, 0, Complex64::new(1.0, -2.0)).unwrap();
        assert_eq!(lp_project(&f, 2, 0), f);
        for j in [0, 1, 3, 4] {
            assert!(lp_project(&f, j, 0).coeffs().iter().all(|c| c.norm() == 0.0));
        }
    }
}
