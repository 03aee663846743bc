//! Nonnegative step functions on `[0, 1]` and the identity
//! `‖f − 1‖₂² = 2 − 2‖f‖₁` for unit-norm `f ≥ 0`.
//!
//! All integrals are exact sums over cells, so the identity can be checked to
//! rounding precision.

use crate::error::{Error, Result};
use crate::field::Vector;

/// Accepted deviation of `‖f‖₂` from 1.
pub const UNIT_NORM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exponent {
    One,
    Two,
}

/// `f = Σ vₖ·1[t_{k−1}, t_k)` with `0 = t₀ < … < t_m = 1` and `vₖ ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl StepFunction {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidBreakpoints(
                "at least one cell is required".into(),
            ));
        }
        if breakpoints.len() != values.len() + 1 {
            return Err(Error::InvalidBreakpoints(format!(
                "{} values need {} breakpoints, got {}",
                values.len(),
                values.len() + 1,
                breakpoints.len()
            )));
        }
        if breakpoints[0] != 0.0 || breakpoints[breakpoints.len() - 1] != 1.0 {
            return Err(Error::InvalidBreakpoints(
                "breakpoints must start at 0 and end at 1".into(),
            ));
        }
        if let Some(k) = breakpoints
            .windows(2)
            .position(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less))
        {
            return Err(Error::InvalidBreakpoints(format!(
                "breakpoints must increase strictly (position {})",
                k + 1
            )));
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index });
            }
            if value < 0.0 {
                return Err(Error::NegativeValue { index, value });
            }
        }
        Ok(Self {
            breakpoints,
            values,
        })
    }

    /// `values` on `n` equal cells of width `1/n`.
    pub fn uniform(values: Vec<f64>) -> Result<Self> {
        let n = values.len();
        let breakpoints = (0..=n).map(|k| k as f64 / n.max(1) as f64).collect();
        Self::new(breakpoints, values)
    }

    /// The constant function 1.
    pub fn one() -> Self {
        Self {
            breakpoints: vec![0.0, 1.0],
            values: vec![1.0],
        }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn cells(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.breakpoints
            .windows(2)
            .zip(&self.values)
            .map(|(w, &v)| (w[1] - w[0], v))
    }

    fn integrate(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.cells().map(|(width, v)| g(v) * width).sum()
    }

    pub fn lp_norm(&self, p: Exponent) -> f64 {
        match p {
            Exponent::One => self.l1_norm(),
            Exponent::Two => self.l2_norm(),
        }
    }

    pub fn l1_norm(&self) -> f64 {
        self.integrate(|v| v)
    }

    pub fn l2_norm(&self) -> f64 {
        self.integrate(|v| v * v).sqrt()
    }

    /// `‖f − 1‖₂²`.
    pub fn distance_sq_to_one(&self) -> f64 {
        self.integrate(|v| (v - 1.0) * (v - 1.0))
    }

    /// `‖f + 1‖₂²`.
    pub fn distance_sq_to_minus_one(&self) -> f64 {
        self.integrate(|v| (v + 1.0) * (v + 1.0))
    }

    pub fn normalized(&self) -> Result<Self> {
        let norm = self.l2_norm();
        if norm == 0.0 {
            return Err(Error::ZeroFunction);
        }
        Ok(Self {
            breakpoints: self.breakpoints.clone(),
            values: self.values.iter().map(|v| v / norm).collect(),
        })
    }

    fn require_unit(&self) -> Result<()> {
        let norm = self.l2_norm();
        if (norm - 1.0).abs() > UNIT_NORM_TOL {
            return Err(Error::NotUnitNorm { norm });
        }
        Ok(())
    }
}

/// `c = ‖f − 1‖₂²` by direct integration, for unit-norm `f`. Equals `2 − 2‖f‖₁`.
pub fn peakiness(f: &StepFunction) -> Result<f64> {
    f.require_unit()?;
    Ok(f.distance_sq_to_one())
}

/// `(4, ‖f − 1‖₂² + ‖f + 1‖₂²)` for unit-norm `f`.
pub fn parallelogram_check(f: &StepFunction) -> Result<(f64, f64)> {
    f.require_unit()?;
    Ok((4.0, f.distance_sq_to_one() + f.distance_sq_to_minus_one()))
}

/// Equal cells with values `|aᵢ|√n/‖x‖₂`: a unit-norm step function whose
/// peakiness is the tightness constant of `x`.
pub fn vector_to_step(x: &Vector) -> Result<StepFunction> {
    let l2 = x.norm2();
    if l2 == 0.0 {
        return Err(Error::ZeroVector);
    }
    let scale = (x.len() as f64).sqrt() / l2;
    StepFunction::uniform(x.entries().iter().map(|a| a.norm() * scale).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn half_peak() -> StepFunction {
        StepFunction::new(vec![0.0, 0.5, 1.0], vec![SQRT_2, 0.0]).unwrap()
    }

    fn quarter_peak() -> StepFunction {
        StepFunction::new(vec![0.0, 0.25, 1.0], vec![2.0, 0.0]).unwrap()
    }

    #[test]
    fn norm_examples() {
        let one = StepFunction::one();
        assert_eq!(
            (one.lp_norm(Exponent::One), one.lp_norm(Exponent::Two)),
            (1.0, 1.0)
        );

        let f = half_peak();
        assert!((f.l2_norm() - 1.0).abs() < 1e-15);
        assert!((f.l1_norm() - SQRT_2 / 2.0).abs() < 1e-15);

        let f = quarter_peak();
        assert_eq!((f.l1_norm(), f.l2_norm()), (0.5, 1.0));
    }

    #[test]
    fn peakiness_examples() {
        assert_eq!(peakiness(&StepFunction::one()).unwrap(), 0.0);
        assert!((peakiness(&half_peak()).unwrap() - 0.5857864376269049).abs() < 1e-15);
        assert!((peakiness(&quarter_peak()).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn parallelogram_examples() {
        assert_eq!(
            parallelogram_check(&StepFunction::one()).unwrap(),
            (4.0, 4.0)
        );
        let (lhs, rhs) = parallelogram_check(&half_peak()).unwrap();
        assert_eq!(lhs, 4.0);
        assert!((rhs - 4.0).abs() < 1e-15);
        let f = quarter_peak();
        assert_eq!(f.distance_sq_to_minus_one(), 3.0);
        assert_eq!(parallelogram_check(&f).unwrap(), (4.0, 4.0));
    }

    #[test]
    fn non_unit_input_is_refused() {
        let f = StepFunction::new(vec![0.0, 1.0], vec![2.0]).unwrap();
        assert_eq!(peakiness(&f), Err(Error::NotUnitNorm { norm: 2.0 }));
        assert_eq!(
            parallelogram_check(&f),
            Err(Error::NotUnitNorm { norm: 2.0 })
        );
        assert_eq!(peakiness(&f.normalized().unwrap()).unwrap(), 0.0);
        let zero = StepFunction::new(vec![0.0, 1.0], vec![0.0]).unwrap();
        assert_eq!(zero.normalized(), Err(Error::ZeroFunction));
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(
            StepFunction::new(vec![0.0, 0.5, 1.0], vec![1.0, -0.1]),
            Err(Error::NegativeValue { index: 1, .. })
        ));
        for bps in [
            vec![0.0, 0.5],
            vec![0.1, 0.5, 1.0],
            vec![0.0, 0.5, 0.5, 1.0],
            vec![0.0, 0.7, 0.5, 1.0],
        ] {
            let values = vec![1.0; bps.len().saturating_sub(1).max(2)];
            assert!(StepFunction::new(bps, values).is_err());
        }
        assert!(StepFunction::new(vec![0.0], vec![]).is_err());
        assert!(StepFunction::new(vec![0.0, 1.0], vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn vector_bridge_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let f = vector_to_step(&Vector::real(vec![h, h]).unwrap()).unwrap();
        assert!(f.values().iter().all(|v| (v - 1.0).abs() < 1e-15));
        assert!(peakiness(&f).unwrap() < 1e-15);

        let f = vector_to_step(&Vector::real(vec![1.0, 0.0, 0.0, 0.0]).unwrap()).unwrap();
        assert_eq!(f.values(), &[2.0, 0.0, 0.0, 0.0]);
        assert_eq!(f.breakpoints(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(peakiness(&f).unwrap(), 1.0);

        let f = vector_to_step(&Vector::real(vec![3.0, 4.0]).unwrap()).unwrap();
        assert!((peakiness(&f).unwrap() - 0.020101012677667063).abs() < 1e-12);

        assert_eq!(
            vector_to_step(&Vector::real(vec![0.0, 0.0]).unwrap()),
            Err(Error::ZeroVector)
        );
    }
}
