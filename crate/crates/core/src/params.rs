//! Dispersion parameters and the exponents derived from them.

use crate::error::{Error, Result};

/// Sign of the transverse dispersion term. The same sign enters the
/// equation, the symbol and the energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn from_i32(s: i32) -> Result<Self> {
        match s {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(Error::ParameterDomain(format!(
                "sign must be +1 or -1, got {other}"
            ))),
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// `(alpha, beta, sign)` for
/// `u_t - d_x (D_x^{1+alpha} +- D_y^{1+beta}) u + u u_x = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionParams {
    alpha: f64,
    beta: f64,
    sign: Sign,
}

impl DispersionParams {
    /// Requires `alpha > -1` and `beta >= 1`.
    pub fn new(alpha: f64, beta: f64, sign: Sign) -> Result<Self> {
        if !alpha.is_finite() || alpha <= -1.0 {
            return Err(Error::ParameterDomain(format!(
                "alpha = {alpha} violates α > −1"
            )));
        }
        if !beta.is_finite() || beta < 1.0 {
            return Err(Error::ParameterDomain(format!(
                "beta = {beta} violates β ≥ 1"
            )));
        }
        Ok(Self { alpha, beta, sign })
    }

    /// The Zakharov–Kuznetsov case `alpha = beta = 1`, positive sign.
    pub fn zk() -> Self {
        Self {
            alpha: 1.0,
            beta: 1.0,
            sign: Sign::Plus,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// Smallest integer `k` with `beta <= k`.
    pub fn ceil_beta(&self) -> u32 {
        self.beta.ceil() as u32
    }

    /// Dyadic decay rate `alpha/4 + 1/(2(1+beta))` of the frequency-localized
    /// Strichartz estimate.
    pub fn strichartz_exponent(&self) -> f64 {
        self.alpha / 4.0 + 1.0 / (2.0 * (1.0 + self.beta))
    }

    /// Well-posedness threshold `(6-alpha)/4 - 1/(2(1+beta)) + ceil(beta)/2`.
    pub fn critical_s(&self) -> f64 {
        (6.0 - self.alpha) / 4.0 - 1.0 / (2.0 * (1.0 + self.beta)) + self.ceil_beta() as f64 / 2.0
    }

    /// Lower bounds `(s1, s2)` for the anisotropic regularity in the
    /// `L^1_T L^\infty` smoothing bound: `s1 > (2-alpha)/4 - 1/(2(1+beta))`,
    /// `s2 > ceil(beta)/2`. Their sum plus one is [`Self::critical_s`].
    pub fn smoothing_thresholds(&self) -> (f64, f64) {
        (
            (2.0 - self.alpha) / 4.0 - 1.0 / (2.0 * (1.0 + self.beta)),
            self.ceil_beta() as f64 / 2.0,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_domain() {
        assert!(DispersionParams::new(-1.0, 1.0, Sign::Plus).is_err());
        assert!(DispersionParams::new(-2.0, 1.0, Sign::Plus).is_err());
        assert!(DispersionParams::new(0.0, 0.99, Sign::Plus).is_err());
        assert!(DispersionParams::new(f64::NAN, 1.0, Sign::Plus).is_err());
        assert!(DispersionParams::new(-0.5, 1.0, Sign::Minus).is_ok());
        let msg = DispersionParams::new(-2.0, 1.0, Sign::Plus)
            .unwrap_err()
            .to_string();
        assert!(msg.contains("α > −1"), "{msg}");
    }

    #[test]
    fn ceil_matches_min_integer_above() {
        let p = |b| DispersionParams::new(0.0, b, Sign::Plus).unwrap();
        assert_eq!(p(1.0).ceil_beta(), 1);
        assert_eq!(p(1.5).ceil_beta(), 2);
        assert_eq!(p(2.0).ceil_beta(), 2);
        assert_eq!(p(2.0000001).ceil_beta(), 3);
    }

    #[test]
    fn thresholds_add_up_to_critical_s() {
        let p = DispersionParams::new(0.7, 2.5, Sign::Minus).unwrap();
        let (s1, s2) = p.smoothing_thresholds();
        assert!((s1 + s2 + 1.0 - p.critical_s()).abs() < 1e-15);
    }

    #[test]
    fn sign_roundtrip() {
        assert_eq!(Sign::from_i32(1).unwrap(), Sign::Plus);
        assert_eq!(Sign::from_i32(-1).unwrap().as_i32(), -1);
        assert!(Sign::from_i32(0).is_err());
    }
}
