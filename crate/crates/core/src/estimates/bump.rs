//! Smooth cutoffs built from the `exp(-1/r)` step.

/// `h(r) = exp(-1/r)` for `r > 0`, else 0.
fn h(r: f64) -> f64 {
    if r > 0.0 {
        (-1.0 / r).exp()
    } else {
        0.0
    }
}

/// Smooth step: 0 for `r <= 0`, 1 for `r >= 1`, `C^∞` in between.
pub fn smooth_step(r: f64) -> f64 {
    if r <= 0.0 {
        0.0
    } else if r >= 1.0 {
        1.0
    } else {
        let a = h(r);
        a / (a + h(1.0 - r))
    }
}

/// Equal to 1 on `[-1, 1]`, supported in `[-2, 2]`.
pub fn psi0(r: f64) -> f64 {
    smooth_step(2.0 - r.abs())
}

/// Equal to 1 on `1/2 <= |r| <= 2`, supported in `1/4 <= |r| <= 4`.
pub fn psi1(r: f64) -> f64 {
    let a = r.abs();
    smooth_step(4.0 * (a - 0.25)) * smooth_step((4.0 - a) / 2.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BumpKind {
    Psi0,
    Psi1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BumpFunction {
    pub kind: BumpKind,
}

impl BumpFunction {
    pub fn psi0() -> Self {
        Self {
            kind: BumpKind::Psi0,
        }
    }

    pub fn psi1() -> Self {
        Self {
            kind: BumpKind::Psi1,
        }
    }

    pub fn eval(&self, r: f64) -> f64 {
        match self.kind {
            BumpKind::Psi0 => psi0(r),
            BumpKind::Psi1 => psi1(r),
        }
    }

    /// `(inner, outer)` radii of the support.
    pub fn support(&self) -> (f64, f64) {
        match self.kind {
            BumpKind::Psi0 => (0.0, 2.0),
            BumpKind::Psi1 => (0.25, 4.0),
        }
    }

    /// `(inner, outer)` radii of the plateau where the value is 1.
    pub fn plateau(&self) -> (f64, f64) {
        match self.kind {
            BumpKind::Psi0 => (0.0, 1.0),
            BumpKind::Psi1 => (0.5, 2.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_limits_and_symmetry() {
        assert_eq!(smooth_step(-1.0), 0.0);
        assert_eq!(smooth_step(0.0), 0.0);
        assert_eq!(smooth_step(1.0), 1.0);
        assert!((smooth_step(0.5) - 0.5).abs() < 1e-15);
        for i in 1..100 {
            let r = i as f64 / 100.0;
            assert!((smooth_step(r) + smooth_step(1.0 - r) - 1.0).abs() < 1e-15);
            assert!(smooth_step(r) >= smooth_step(r - 0.01));
        }
    }

    #[test]
    fn support_and_plateau() {
        for b in [BumpFunction::psi0(), BumpFunction::psi1()] {
            let (s0, s1) = b.support();
            let (p0, p1) = b.plateau();
            for i in 0..=2000 {
                let r = -5.0 + i as f64 * 0.005;
                let v = b.eval(r);
                assert!((0.0..=1.0).contains(&v));
                assert_eq!(v, b.eval(-r));
                let a = r.abs();
                if a <= s0 && s0 > 0.0 || a >= s1 {
                    assert_eq!(v, 0.0, "{r}");
                }
                if a >= p0 && a <= p1 {
                    assert_eq!(v, 1.0, "{r}");
                }
                // away from the ends of a ramp the value is strictly inside (0, 1)
                let inner = |lo: f64, hi: f64| a > lo + 0.1 * (hi - lo) && a < hi - 0.1 * (hi - lo);
                if inner(s0, p0) && p0 > s0 || inner(p1, s1) {
                    assert!(v > 0.0 && v < 1.0, "{r}");
                }
            }
        }
    }
}
