//! Exponentiated location-scale populations.
//!
//! Component `i` has CDF `F_i(x) = [F_b((x - lambda_i) / theta_i)]^alpha_i`.

use serde::{Deserialize, Serialize};

use crate::baseline::BaselineSpec;
use crate::copula::GeneratorSpec;
use crate::error::{invalid, Error, Result};

/// How a component CDF treats standardized points above the baseline's
/// upper support endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SupportMode {
    /// The component CDF is 1 past the support, all values clamped to [0, 1].
    #[default]
    Clamp,
    /// The baseline formula is evaluated as written past its upper endpoint
    /// and nothing is clamped. Only meaningful for bounded baselines; used to
    /// reproduce published curves drawn from the raw formula.
    Extrapolate,
}

/// One population of `n` components.
#[derive(Debug, Clone, PartialEq)]
pub struct ElsConfig {
    pub lambda: Vec<f64>,
    pub theta: Vec<f64>,
    pub alpha: Vec<f64>,
    pub baseline: BaselineSpec,
    pub generator: Option<GeneratorSpec>,
    pub support_mode: SupportMode,
}

impl ElsConfig {
    pub fn new(lambda: Vec<f64>, theta: Vec<f64>, alpha: Vec<f64>, baseline: BaselineSpec) -> Result<Self> {
        let cfg = ElsConfig {
            lambda,
            theta,
            alpha,
            baseline,
            generator: None,
            support_mode: SupportMode::Clamp,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Homogeneous-location, homogeneous-shape shorthand.
    pub fn scalar_location(lambda: f64, theta: Vec<f64>, alpha: f64, baseline: BaselineSpec) -> Result<Self> {
        let n = theta.len();
        Self::new(vec![lambda; n], theta, vec![alpha; n], baseline)
    }

    pub fn with_generator(mut self, g: GeneratorSpec) -> Self {
        self.generator = Some(g);
        self
    }

    pub fn with_support_mode(mut self, mode: SupportMode) -> Self {
        self.support_mode = mode;
        self
    }

    pub fn n(&self) -> usize {
        self.theta.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.theta.len();
        if self.lambda.len() != n {
            return Err(Error::LengthMismatch {
                left: self.lambda.len(),
                right: n,
            });
        }
        if self.alpha.len() != n {
            return Err(Error::LengthMismatch {
                left: self.alpha.len(),
                right: n,
            });
        }
        if n < 2 {
            return Err(invalid("n", format!("need at least 2 components, got {n}")));
        }
        for (i, &l) in self.lambda.iter().enumerate() {
            if !l.is_finite() || l < 0.0 {
                return Err(invalid(
                    format!("lambda[{i}]"),
                    format!("must be finite and >= 0, got {l}"),
                ));
            }
        }
        for (i, &t) in self.theta.iter().enumerate() {
            if !t.is_finite() || t <= 0.0 {
                return Err(invalid(
                    format!("theta[{i}]"),
                    format!("must be finite and > 0, got {t}"),
                ));
            }
        }
        for (i, &a) in self.alpha.iter().enumerate() {
            if !a.is_finite() || a <= 0.0 {
                return Err(invalid(
                    format!("alpha[{i}]"),
                    format!("must be finite and > 0, got {a}"),
                ));
            }
        }
        Ok(())
    }

    pub fn max_location(&self) -> f64 {
        self.lambda.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Largest `x` at which some component still has CDF below 1, i.e.
    /// `max_i lambda_i + theta_i * upper`. Infinite for unbounded baselines.
    pub fn upper_x(&self) -> f64 {
        let up = self.baseline.support().upper;
        self.lambda
            .iter()
            .zip(&self.theta)
            .map(|(l, t)| l + t * up)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn all_unit_shape(&self) -> bool {
        self.alpha.iter().all(|&a| a == 1.0)
    }

    /// Remarks about the configuration that do not make it invalid.
    pub fn notes(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.lambda.contains(&0.0) {
            out.push("lambda contains 0: extension beyond the strict x > lambda_i > 0 model".to_string());
        }
        if self.support_mode == SupportMode::Extrapolate && self.baseline.support().is_bounded() {
            out.push("baseline formula extrapolated past its support cap".to_string());
        }
        out
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.n() {
            Ok(())
        } else {
            Err(invalid(
                "index",
                format!("component {i} out of range for n = {}", self.n()),
            ))
        }
    }

    /// Standardized point `(x - lambda_i) / theta_i`.
    pub fn standardized(&self, i: usize, x: f64) -> f64 {
        (x - self.lambda[i]) / self.theta[i]
    }

    /// `F_i(x)`. Zero at or below the location; past the baseline support the
    /// value follows `support_mode`.
    pub fn component_cdf(&self, i: usize, x: f64) -> Result<f64> {
        self.check_index(i)?;
        Ok(self.component_cdf_unchecked(i, x))
    }

    pub(crate) fn component_cdf_unchecked(&self, i: usize, x: f64) -> f64 {
        if x <= self.lambda[i] {
            return 0.0;
        }
        let w = self.standardized(i, x);
        match self.support_mode {
            SupportMode::Clamp => self.baseline.cdf_clamped(w).powf(self.alpha[i]).clamp(0.0, 1.0),
            SupportMode::Extrapolate => self.baseline.cdf_extended(w).powf(self.alpha[i]),
        }
    }

    /// All component CDFs at `x`.
    pub fn component_cdfs(&self, x: f64) -> Vec<f64> {
        (0..self.n()).map(|i| self.component_cdf_unchecked(i, x)).collect()
    }

    /// Inverse of `F_i`: `lambda_i + theta_i * F_b^{-1}(u^{1/alpha_i})`.
    pub fn component_quantile(&self, i: usize, u: f64) -> Result<f64> {
        self.check_index(i)?;
        if !(u > 0.0 && u < 1.0) {
            return Err(Error::InvalidProbability(u));
        }
        Ok(self.quantile_unchecked(i, u))
    }

    pub(crate) fn quantile_unchecked(&self, i: usize, u: f64) -> f64 {
        let p = u.powf(1.0 / self.alpha[i]);
        self.lambda[i] + self.theta[i] * self.baseline.quantile(p)
    }

    /// Inverse-transform draw of component `i` from a uniform `u`.
    pub fn sample_component(&self, i: usize, u: f64) -> Result<f64> {
        self.component_quantile(i, u)
    }
}

impl std::fmt::Display for ElsConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "lambda={:?} theta={:?} alpha={:?} baseline={}",
            self.lambda, self.theta, self.alpha, self.baseline
        )?;
        if let Some(g) = &self.generator {
            write!(f, " generator={g}")?;
        }
        if self.support_mode == SupportMode::Extrapolate {
            write!(f, " support=extrapolate")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn pc() -> BaselineSpec {
        BaselineSpec::power_cap(0.2, 100.0).unwrap()
    }

    fn single(l: f64, t: f64, a: f64, b: BaselineSpec) -> ElsConfig {
        ElsConfig::new(vec![l, l], vec![t, t], vec![a, a], b).unwrap()
    }

    #[test]
    fn cdf_examples() {
        let c = single(4.0, 5.0, 4.0, pc());
        assert_eq!(c.component_cdf(0, 4.0).unwrap(), 0.0);
        assert_relative_eq!(
            c.component_cdf(0, 254.0).unwrap(),
            0.574_349_177_498_517_4,
            max_relative = 1e-14
        );
        let l = single(0.0, 1.0, 1.0, BaselineSpec::loglog());
        assert_relative_eq!(l.component_cdf(1, 1.0).unwrap(), 0.5);
        assert_eq!(c.component_cdf(0, 1000.0).unwrap(), 1.0);
    }

    #[test]
    fn sample_examples() {
        let l = single(0.0, 1.0, 1.0, BaselineSpec::loglog());
        assert_relative_eq!(l.sample_component(0, 0.5).unwrap(), 1.0);
        let c = single(4.0, 5.0, 4.0, pc());
        assert_relative_eq!(
            c.sample_component(0, 2f64.powf(-0.8)).unwrap(),
            254.0,
            max_relative = 1e-12
        );
        let lo = c.sample_component(0, 1e-300).unwrap();
        assert!((lo - 4.0).abs() < 1e-9);
        assert!(matches!(c.sample_component(0, 0.0), Err(Error::InvalidProbability(_))));
        assert!(matches!(c.sample_component(0, 1.0), Err(Error::InvalidProbability(_))));
        assert!(c.sample_component(2, 0.5).is_err());
    }

    #[test]
    fn validation() {
        assert!(matches!(
            ElsConfig::new(vec![0.0; 3], vec![1.0; 2], vec![1.0; 3], pc()),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(ElsConfig::new(vec![0.0], vec![1.0], vec![1.0], pc()).is_err());
        let e = ElsConfig::new(vec![0.0; 2], vec![1.0, 0.0], vec![1.0; 2], pc()).unwrap_err();
        assert!(e.to_string().contains("theta[1]"));
        assert!(ElsConfig::new(vec![-1.0, 0.0], vec![1.0; 2], vec![1.0; 2], pc()).is_err());
        assert!(ElsConfig::new(vec![0.0; 2], vec![1.0; 2], vec![f64::NAN, 1.0], pc()).is_err());
        let l = single(0.0, 1.0, 1.0, BaselineSpec::loglog());
        assert_eq!(l.notes().len(), 1);
    }

    #[test]
    fn extrapolate_exceeds_one_past_cap() {
        let b = BaselineSpec::power_cap(0.001, 10.0).unwrap();
        let c = ElsConfig::new(vec![3.0; 2], vec![0.01; 2], vec![3.0; 2], b)
            .unwrap()
            .with_support_mode(SupportMode::Extrapolate);
        assert!(c.component_cdf(0, 9.0).unwrap() > 1.0);
        let clamped = c.clone().with_support_mode(SupportMode::Clamp);
        assert_eq!(clamped.component_cdf(0, 9.0).unwrap(), 1.0);
    }

    fn baselines() -> Vec<BaselineSpec> {
        vec![
            pc(),
            BaselineSpec::loglog(),
            BaselineSpec::shifted_weibull_exp(0.5).unwrap(),
        ]
    }

    proptest! {
        #[test]
        fn round_trip(u in 1e-6f64..(1.0 - 1e-6), l in 0.0f64..10.0, t in 0.1f64..10.0, a in 0.2f64..5.0, which in 0usize..3) {
            let c = single(l, t, a, baselines()[which].clone());
            let x = c.sample_component(0, u).unwrap();
            prop_assume!(x - l > 1e-6 * t);
            let back = c.component_cdf(0, x).unwrap();
            prop_assert!((back - u).abs() <= 1e-10, "u={u} back={back}");
        }

        #[test]
        fn location_scale_semantics(x in -5.0f64..200.0, l in 0.0f64..10.0, t in 0.1f64..10.0, a in 0.2f64..5.0, which in 0usize..3) {
            let b = baselines()[which].clone();
            let c = single(l, t, a, b.clone());
            let unit = single(0.0, 1.0, a, b);
            let w = (x - l) / t;
            prop_assert_eq!(c.component_cdf(0, x).unwrap(), unit.component_cdf(0, w).unwrap());
        }

        #[test]
        fn nondecreasing(x in 0.0f64..150.0, dx in 0.0f64..5.0, which in 0usize..3) {
            let c = single(1.0, 3.0, 2.0, baselines()[which].clone());
            prop_assert!(c.component_cdf(0, x + dx).unwrap() >= c.component_cdf(0, x).unwrap());
        }
    }
}
