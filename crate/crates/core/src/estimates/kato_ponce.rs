//! Commutator `[J_y^s, f] g` against its Kato–Ponce bound.

use crate::error::{Error, Result};
use crate::spectral::field::same_grid;
use crate::spectral::{
    apply_multiplier, dealiased_product_spectral, forward_transform, l2_norm, sup_norm_spectral,
    truncate, Field, MultiplierSpec, SpectralField, DEFAULT_OVERSAMPLE, TWO_THIRDS,
};

/// Commutator norm, bound and their ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KatoPonce {
    pub commutator: f64,
    pub bound: f64,
    pub ratio: f64,
}

/// Mean over `y` of each row, summed pairwise so that a `y`-independent row
/// reproduces its value exactly.
fn y_mean(f: &Field) -> Vec<f64> {
    fn pairwise(v: &[f64]) -> f64 {
        if v.len() == 1 {
            v[0]
        } else {
            let h = v.len() / 2;
            pairwise(&v[..h]) + pairwise(&v[h..])
        }
    }
    let ny = f.grid().ny();
    f.values()
        .chunks(ny)
        .map(|row| pairwise(row) / ny as f64)
        .collect()
}

/// `||J_y^s(f g) - f J_y^s g||_{L^2}` divided by
/// `||J_y^s f|| ||g||_inf + (||f||_inf + ||d_y f||_inf) ||J_y^{s-1} g||`.
///
/// Products are dealiased by the 2/3 rule. The `y`-mean of `f` commutes with
/// `J_y^s`, so the commutator is formed from the fluctuating part only.
pub fn kato_ponce(f: &Field, g: &Field, s: f64) -> Result<KatoPonce> {
    same_grid(f.grid(), g.grid())?;
    if !(s >= 1.0) || !s.is_finite() {
        return Err(Error::InvalidArgument(format!("s = {s} must be at least 1")));
    }
    let grid = *f.grid();
    let ny = grid.ny();
    let mean = y_mean(f);
    let fluct = Field::new(
        grid,
        f.values()
            .iter()
            .enumerate()
            .map(|(i, v)| v - mean[i / ny])
            .collect(),
    )?;
    let fh = forward_transform(f)?;
    let gh = forward_transform(g)?;
    let fl = forward_transform(&fluct)?;
    let js = MultiplierSpec::j_y(s);
    let jg = apply_multiplier(&gh, &js)?;
    let a = apply_multiplier(&dealiased_product_spectral(&fl, &gh, TWO_THIRDS)?, &js)?;
    let b = dealiased_product_spectral(&fl, &jg, TWO_THIRDS)?;
    let commutator = l2_norm(&a.sub(&b)?);

    let p = |x: &SpectralField| truncate(x, TWO_THIRDS);
    let (fp, gp) = (p(&fh), p(&gh));
    let jf = l2_norm(&apply_multiplier(&fp, &js)?);
    let g_inf = sup_norm_spectral(&gp, DEFAULT_OVERSAMPLE)?;
    let f_inf = sup_norm_spectral(&fp, DEFAULT_OVERSAMPLE)?;
    let fy_inf = sup_norm_spectral(
        &apply_multiplier(&fp, &MultiplierSpec::partial_y())?,
        DEFAULT_OVERSAMPLE,
    )?;
    let jg1 = l2_norm(&apply_multiplier(&gp, &MultiplierSpec::j_y(s - 1.0))?);
    let bound = jf * g_inf + (f_inf + fy_inf) * jg1;
    if bound == 0.0 {
        return Err(Error::ZeroDenominator(
            "Kato–Ponce bound vanishes (f = 0 or g = 0)".into(),
        ));
    }
    Ok(KatoPonce {
        commutator,
        bound,
        ratio: commutator / bound,
    })
}

/// Ratio only; see [`kato_ponce`].
pub fn kato_ponce_ratio(f: &Field, g: &Field, s: f64) -> Result<f64> {
    Ok(kato_ponce(f, g, s)?.ratio)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::initial::random_smooth;
    use crate::spectral::Grid;

    fn grid() -> Grid {
        Grid::new(64, 32, 40.0).unwrap()
    }

    #[test]
    fn constant_and_x_only_f_commute_exactly() {
        let g = grid();
        let h = random_smooth(g, 5, 6, 3);
        let one = Field::from_fn(g, |_, _| 1.0);
        let fx = Field::from_fn(g, |x, _| (-x * x / 20.0).exp() * (0.3 * x).cos());
        for s in [1.0, 2.0, 2.5] {
            assert_eq!(kato_ponce_ratio(&one, &h, s).unwrap(), 0.0);
            assert_eq!(kato_ponce_ratio(&fx, &h, s).unwrap(), 0.0);
        }
    }

    #[test]
    fn zero_f_is_rejected() {
        let g = grid();
        let h = random_smooth(g, 5, 6, 3);
        assert!(matches!(
            kato_ponce_ratio(&Field::zeros(g), &h, 2.0),
            Err(Error::ZeroDenominator(_))
        ));
    }

    #[test]
    fn random_pair_has_moderate_ratio() {
        let g = grid();
        let f = random_smooth(g, 1, 6, 3);
        let h = random_smooth(g, 2, 6, 3);
        for s in [1.0, 2.0, 2.5] {
            let r = kato_ponce_ratio(&f, &h, s).unwrap();
            assert!(r > 0.0 && r < 10.0, "{s}: {r}");
        }
    }
}
