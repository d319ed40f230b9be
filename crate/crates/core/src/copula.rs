//! Archimedean generators and the dependent second-largest CDF.
//!
//! A generator `psi` is decreasing and convex with `psi(0) = 1`,
//! `psi(inf) = 0`; `phi` is its inverse and the copula is
//! `C(v) = psi(sum phi(v_i))`.
//!
//! `GumbelBarnett` is the registry name for `psi(x) = exp((1 - e^x)/a)`.
//! `Clayton` is not one of the published families; it exists because its
//! gamma frailty gives an exact sampler for the dependent Monte Carlo oracle.

use std::fmt;

use rand::Rng;
use rand_distr::{Distribution, Exp1, Gamma};
use serde::{Deserialize, Serialize};

use crate::els::ElsConfig;
use crate::error::{invalid, Error, Result};
use crate::grid::GridSpec;
use crate::orderstats::{mc_draws, McEstimate};
use crate::report::{ConditionReport, Location};

/// Default log-concavity and `psi/psi'` certification grid.
pub const GENERATOR_GRID: (f64, f64, usize) = (1e-3, 10.0, 4096);

pub const ADDITIVITY_RANGE: (f64, f64) = (1e-4, 1e4);

const SECOND_DIFF_TOL: f64 = 1e-10;
const ADDITIVITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GeneratorSpec {
    Independence,
    GumbelHougaard { a: f64 },
    GumbelBarnett { a: f64 },
    Clayton { theta: f64 },
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Independence => write!(f, "independence"),
            GeneratorSpec::GumbelHougaard { a } => write!(f, "gumbel_hougaard(a={a})"),
            GeneratorSpec::GumbelBarnett { a } => write!(f, "gumbel_barnett(a={a})"),
            GeneratorSpec::Clayton { theta } => write!(f, "clayton(theta={theta})"),
        }
    }
}

impl GeneratorSpec {
    pub fn gumbel_hougaard(a: f64) -> Result<Self> {
        let g = GeneratorSpec::GumbelHougaard { a };
        g.validate()?;
        Ok(g)
    }

    pub fn gumbel_barnett(a: f64) -> Result<Self> {
        let g = GeneratorSpec::GumbelBarnett { a };
        g.validate()?;
        Ok(g)
    }

    pub fn clayton(theta: f64) -> Result<Self> {
        let g = GeneratorSpec::Clayton { theta };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            GeneratorSpec::Independence => Ok(()),
            GeneratorSpec::GumbelHougaard { a } if a.is_finite() && a >= 1.0 => Ok(()),
            GeneratorSpec::GumbelHougaard { a } => Err(invalid("gumbel_hougaard.a", format!("must be >= 1, got {a}"))),
            GeneratorSpec::GumbelBarnett { a } if a > 0.0 && a <= 1.0 => Ok(()),
            GeneratorSpec::GumbelBarnett { a } => {
                Err(invalid("gumbel_barnett.a", format!("must lie in (0, 1], got {a}")))
            }
            GeneratorSpec::Clayton { theta } if theta.is_finite() && theta > 0.0 => Ok(()),
            GeneratorSpec::Clayton { theta } => Err(invalid("clayton.theta", format!("must be > 0, got {theta}"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GeneratorSpec::Independence => "independence",
            GeneratorSpec::GumbelHougaard { .. } => "gumbel_hougaard",
            GeneratorSpec::GumbelBarnett { .. } => "gumbel_barnett",
            GeneratorSpec::Clayton { .. } => "clayton",
        }
    }

    pub fn is_independence(&self) -> bool {
        matches!(self, GeneratorSpec::Independence)
    }

    /// Families taken from the published examples, as opposed to the
    /// sampling-only addition.
    pub fn is_paper_family(&self) -> bool {
        !matches!(self, GeneratorSpec::Clayton { .. })
    }

    /// Remarks attached to reports; Gumbel-Hougaard with `a = 1` is exactly
    /// the independence generator and is both log-concave and log-convex.
    pub fn notes(&self) -> Vec<String> {
        match *self {
            GeneratorSpec::GumbelHougaard { a: 1.0 } => {
                vec!["gumbel_hougaard a=1 is a boundary case: log psi is linear".into()]
            }
            GeneratorSpec::Clayton { .. } => vec!["clayton is a sampling-oracle family".into()],
            _ => Vec::new(),
        }
    }

    pub fn psi(&self, x: f64) -> f64 {
        match *self {
            GeneratorSpec::Independence => (-x).exp(),
            GeneratorSpec::GumbelHougaard { a } => (-x.powf(1.0 / a)).exp(),
            GeneratorSpec::GumbelBarnett { a } => (-x.exp_m1() / a).exp(),
            GeneratorSpec::Clayton { theta } => (1.0 + x).powf(-1.0 / theta),
        }
    }

    pub fn ln_psi(&self, x: f64) -> f64 {
        match *self {
            GeneratorSpec::Independence => -x,
            GeneratorSpec::GumbelHougaard { a } => -x.powf(1.0 / a),
            GeneratorSpec::GumbelBarnett { a } => -x.exp_m1() / a,
            GeneratorSpec::Clayton { theta } => -x.ln_1p() / theta,
        }
    }

    /// `phi = psi^{-1}`; `phi(0) = inf`, `phi(1) = 0`.
    pub fn phi(&self, v: f64) -> f64 {
        match *self {
            GeneratorSpec::Independence => -v.ln(),
            GeneratorSpec::GumbelHougaard { a } => (-v.ln()).powf(a),
            GeneratorSpec::GumbelBarnett { a } => (-a * v.ln()).ln_1p(),
            GeneratorSpec::Clayton { theta } => v.powf(-theta) - 1.0,
        }
    }

    pub fn psi_prime(&self, x: f64) -> f64 {
        match *self {
            GeneratorSpec::Independence => -(-x).exp(),
            GeneratorSpec::GumbelHougaard { a } => -(1.0 / a) * x.powf(1.0 / a - 1.0) * self.psi(x),
            GeneratorSpec::GumbelBarnett { a } => -(x.exp() / a) * self.psi(x),
            GeneratorSpec::Clayton { theta } => -(1.0 / theta) * (1.0 + x).powf(-1.0 / theta - 1.0),
        }
    }

    /// `ln |psi'(x)|`, finite where `psi'` itself underflows.
    pub fn ln_abs_psi_prime(&self, x: f64) -> f64 {
        match *self {
            GeneratorSpec::Independence => -x,
            GeneratorSpec::GumbelHougaard { a } => -a.ln() + (1.0 / a - 1.0) * x.ln() + self.ln_psi(x),
            GeneratorSpec::GumbelBarnett { a } => x - a.ln() + self.ln_psi(x),
            GeneratorSpec::Clayton { theta } => -theta.ln() - (1.0 / theta + 1.0) * x.ln_1p(),
        }
    }

    /// `psi(x) / psi'(x)` from the closed form.
    pub fn psi_over_psi_prime(&self, x: f64) -> f64 {
        match *self {
            GeneratorSpec::Independence => -1.0,
            GeneratorSpec::GumbelHougaard { a } => -a * x.powf(1.0 - 1.0 / a),
            GeneratorSpec::GumbelBarnett { a } => -a * (-x).exp(),
            GeneratorSpec::Clayton { theta } => -theta * (1.0 + x),
        }
    }

    /// `ln(-ln psi(x))`, the log of the generator's exponent.
    fn ln_neg_ln_psi(&self, x: f64) -> f64 {
        match *self {
            GeneratorSpec::Independence => x.ln(),
            GeneratorSpec::GumbelHougaard { a } => x.ln() / a,
            GeneratorSpec::GumbelBarnett { a } => {
                let l = if x < 1.0 {
                    x.exp_m1().ln()
                } else {
                    x + (-(-x).exp()).ln_1p()
                };
                l - a.ln()
            }
            GeneratorSpec::Clayton { theta } => x.ln_1p().ln() - theta.ln(),
        }
    }

    /// `phi(v)` for `v = exp(-exp(lt))`.
    fn phi_from_ln_neg_ln(&self, lt: f64) -> f64 {
        match *self {
            GeneratorSpec::Independence => lt.exp(),
            GeneratorSpec::GumbelHougaard { a } => (a * lt).exp(),
            GeneratorSpec::GumbelBarnett { a } => {
                if lt < 30.0 {
                    (a * lt.exp()).ln_1p()
                } else {
                    a.ln() + lt + ((-lt).exp() / a).ln_1p()
                }
            }
            GeneratorSpec::Clayton { theta } => (theta * lt.exp()).exp_m1(),
        }
    }

    /// Copula value `psi(sum phi(v_i))`.
    pub fn copula(&self, v: &[f64]) -> f64 {
        if v.iter().any(|&x| x <= 0.0) {
            return 0.0;
        }
        let s: f64 = v.iter().map(|&x| self.phi(x)).sum();
        self.psi(s).clamp(0.0, 1.0)
    }
}

/// `phi_2(psi_1(x))`, evaluated through logs so that large `x` does not
/// underflow `psi_1`.
pub fn phi2_psi1(g1: &GeneratorSpec, g2: &GeneratorSpec, x: f64) -> f64 {
    g2.phi_from_ln_neg_ln(g1.ln_neg_ln_psi(x))
}

fn require_generator(cfg: &ElsConfig) -> Result<GeneratorSpec> {
    cfg.generator.ok_or(Error::MissingGenerator("a dependence generator"))
}

/// CDF of the second largest under an Archimedean copula:
/// `sum_l psi(sum_{k != l} phi(F_k)) - (n - 1) psi(sum_k phi(F_k))`.
///
/// Components with `F_k = 0` contribute `phi = inf`, so every term containing
/// them vanishes; leave-one-out sums are formed directly so that a single
/// zero component still leaves the corresponding term.
pub fn cdf_second_largest_dep(cfg: &ElsConfig, x: f64) -> Result<f64> {
    let g = require_generator(cfg)?;
    if x <= cfg.max_location() {
        return Ok(0.0);
    }
    let fs = cfg.component_cdfs(x);
    let t: Vec<f64> = fs.iter().map(|&f| g.phi(f.min(1.0))).collect();
    Ok(dep_formula(&g, &t))
}

pub(crate) fn dep_formula(g: &GeneratorSpec, t: &[f64]) -> f64 {
    let n = t.len();
    let total: f64 = t.iter().sum();
    let mut acc = 0.0;
    for l in 0..n {
        let s: f64 = t.iter().enumerate().filter(|&(k, _)| k != l).map(|(_, &v)| v).sum();
        acc += g.psi(s);
    }
    (acc - (n as f64 - 1.0) * g.psi(total)).clamp(0.0, 1.0)
}

pub fn generator_grid() -> GridSpec {
    GridSpec {
        lo: GENERATOR_GRID.0,
        hi: GENERATOR_GRID.1,
        points: GENERATOR_GRID.2,
    }
}

/// Certifies concavity of `ln psi` through second differences.
pub fn check_generator_logconcave(g: &GeneratorSpec, grid: &GridSpec) -> Result<ConditionReport> {
    grid.validate()?;
    if grid.lo <= 0.0 {
        return Err(Error::InvalidGrid("generator grids must lie in (0, inf)".into()));
    }
    let xs = grid.to_vec();
    let vs: Vec<f64> = xs.iter().map(|&x| g.ln_psi(x)).collect();
    let mut r = ConditionReport::new(format!("{g} log-concave"));
    for i in 1..xs.len() - 1 {
        let d2 = vs[i + 1] - 2.0 * vs[i] + vs[i - 1];
        let scale = 1f64.max(vs[i - 1].abs()).max(vs[i].abs()).max(vs[i + 1].abs());
        r.observe(d2.max(0.0) / scale, SECOND_DIFF_TOL, Location::Scalar(xs[i]));
    }
    for n in g.notes() {
        r = r.with_note(n);
    }
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Additivity {
    Super,
    Sub,
}

impl Additivity {
    pub fn label(&self) -> &'static str {
        match self {
            Additivity::Super => "super-additive",
            Additivity::Sub => "sub-additive",
        }
    }
}

/// Randomized certification of super- or sub-additivity of `phi_2 o psi_1`
/// over log-uniform pairs in [1e-4, 1e4]. Pairs whose evaluation overflows
/// are skipped and counted in a note.
pub fn check_phi2_psi1_additivity(
    g1: &GeneratorSpec,
    g2: &GeneratorSpec,
    mode: Additivity,
    trials: usize,
    seed: u64,
) -> ConditionReport {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = (ADDITIVITY_RANGE.0.ln(), ADDITIVITY_RANGE.1.ln());
    let mut r = ConditionReport::new(format!("phi2(psi1) {} for {g1} / {g2}", mode.label()));
    let mut skipped = 0usize;
    for _ in 0..trials {
        let x = rng.random_range(lo..hi).exp();
        let y = rng.random_range(lo..hi).exp();
        let (fx, fy, fxy) = (phi2_psi1(g1, g2, x), phi2_psi1(g1, g2, y), phi2_psi1(g1, g2, x + y));
        if !(fx.is_finite() && fy.is_finite() && fxy.is_finite()) {
            skipped += 1;
            continue;
        }
        let gap = match mode {
            Additivity::Super => fx + fy - fxy,
            Additivity::Sub => fxy - fx - fy,
        };
        let scale = 1f64.max(fxy.abs());
        r.observe(gap.max(0.0) / scale, ADDITIVITY_TOL, Location::Pair(x, y));
    }
    if skipped > 0 {
        r = r.with_note(format!("{skipped} of {trials} pairs skipped: non-finite composition"));
    }
    r
}

/// Certifies that `psi / psi'` is nondecreasing on the grid.
pub fn check_psi_over_psiprime_increasing(g: &GeneratorSpec, grid: &GridSpec) -> Result<ConditionReport> {
    grid.validate()?;
    if grid.lo <= 0.0 {
        return Err(Error::InvalidGrid("generator grids must lie in (0, inf)".into()));
    }
    let xs = grid.to_vec();
    let mut vs = Vec::with_capacity(xs.len());
    for &x in &xs {
        let v = g.psi_over_psi_prime(x);
        if !v.is_finite() || !g.ln_abs_psi_prime(x).is_finite() {
            return Err(Error::DegenerateDenominator {
                at: x,
                what: "psi' vanishes",
            });
        }
        vs.push(v);
    }
    let mut r = ConditionReport::new(format!("{g} psi/psi' increasing"));
    for i in 1..vs.len() {
        let d = vs[i] - vs[i - 1];
        let scale = 1f64.max(vs[i].abs()).max(vs[i - 1].abs());
        r.observe((-d).max(0.0) / scale, SECOND_DIFF_TOL, Location::Pair(xs[i - 1], xs[i]));
    }
    Ok(r)
}

/// Returns `(C_{g1}(v), C_{g2}(v))`.
pub fn compare_copulas(g1: &GeneratorSpec, g2: &GeneratorSpec, v: &[f64]) -> Result<(f64, f64)> {
    if let Some(&bad) = v.iter().find(|&&x| !(0.0..=1.0).contains(&x)) {
        return Err(Error::InvalidProbability(bad));
    }
    Ok((g1.copula(v), g2.copula(v)))
}

/// Frailty sampler for the generator: `V_i = psi(E_i / M)` with unit
/// exponentials `E_i` and `M` having Laplace transform `psi`.
pub(crate) fn frailty_sampler(g: &GeneratorSpec) -> Result<impl Fn(&mut rand_chacha::ChaCha8Rng, &mut [f64]) + Sync> {
    let gamma = match *g {
        GeneratorSpec::Independence => None,
        GeneratorSpec::Clayton { theta } => {
            Some(Gamma::new(1.0 / theta, 1.0).map_err(|e| invalid("clayton.theta", e.to_string()))?)
        }
        _ => return Err(Error::UnsupportedGenerator(g.name().to_string())),
    };
    let g = *g;
    Ok(move |rng: &mut rand_chacha::ChaCha8Rng, v: &mut [f64]| {
        let m = match &gamma {
            Some(d) => d.sample(rng),
            None => 1.0,
        };
        for slot in v.iter_mut() {
            let e: f64 = Exp1.sample(rng);
            *slot = g.psi(e / m);
        }
    })
}

/// Monte Carlo estimate of the dependent second-largest CDF at `x`.
pub fn mc_cdf_second_largest_dep(cfg: &ElsConfig, x: f64, samples: usize, seed: u64) -> Result<McEstimate> {
    Ok(mc_ecdf_second_largest_dep(cfg, &[x], samples, seed)?.remove(0))
}

/// Monte Carlo ECDF of the dependent second largest at several points, from
/// one shared sample.
pub fn mc_ecdf_second_largest_dep(cfg: &ElsConfig, xs: &[f64], samples: usize, seed: u64) -> Result<Vec<McEstimate>> {
    let g = require_generator(cfg)?;
    let sampler = frailty_sampler(&g)?;
    let draws = mc_draws(cfg, samples, seed, sampler)?;
    Ok(McEstimate::ecdf(&draws, xs, cfg.max_location()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseline::BaselineSpec;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn families() -> Vec<GeneratorSpec> {
        vec![
            GeneratorSpec::Independence,
            GeneratorSpec::gumbel_hougaard(1.0).unwrap(),
            GeneratorSpec::gumbel_hougaard(2.5).unwrap(),
            GeneratorSpec::gumbel_barnett(0.1).unwrap(),
            GeneratorSpec::gumbel_barnett(0.9).unwrap(),
            GeneratorSpec::clayton(1.0).unwrap(),
            GeneratorSpec::clayton(3.0).unwrap(),
        ]
    }

    fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n)
            .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp())
            .collect()
    }

    #[test]
    fn parameter_validation() {
        assert!(GeneratorSpec::gumbel_hougaard(0.5).is_err());
        assert!(GeneratorSpec::gumbel_barnett(1.5).is_err());
        assert!(GeneratorSpec::gumbel_barnett(0.0).is_err());
        assert!(GeneratorSpec::clayton(-1.0).is_err());
    }

    #[test]
    fn generator_axioms() {
        for g in families() {
            assert_eq!(g.psi(0.0), 1.0, "{g}");
            assert!(g.psi(1e12) < 1e-3, "{g}");
            let xs = log_grid(1e-3, 50.0, 512);
            let vs: Vec<f64> = xs.iter().map(|&x| g.psi(x)).collect();
            for i in 1..vs.len() {
                assert!(vs[i] <= vs[i - 1], "{g} not nonincreasing at {}", xs[i]);
            }
            // convex: slopes of chords nondecreasing
            for i in 1..vs.len() - 1 {
                let s1 = (vs[i] - vs[i - 1]) / (xs[i] - xs[i - 1]);
                let s2 = (vs[i + 1] - vs[i]) / (xs[i + 1] - xs[i]);
                assert!(s2 >= s1 - 1e-10, "{g} not convex at {}", xs[i]);
            }
        }
    }

    #[test]
    fn phi_inverts_psi() {
        for g in families() {
            for x in log_grid(1e-3, 5.0, 200) {
                if g.psi(x) < 1e-300 {
                    continue;
                }
                let back = g.phi(g.psi(x));
                assert!((back - x).abs() <= 1e-10 * x.max(1.0), "{g} x={x} back={back}");
            }
            assert_eq!(g.phi(1.0), 0.0);
            assert_eq!(g.phi(0.0), f64::INFINITY);
            assert_eq!(g.psi(f64::INFINITY), 0.0);
        }
    }

    #[test]
    fn psi_prime_matches_differences() {
        for g in families() {
            for x in [0.01, 0.3, 1.0, 2.5] {
                let h = 1e-6 * x;
                let num = (g.psi(x + h) - g.psi(x - h)) / (2.0 * h);
                assert_relative_eq!(g.psi_prime(x), num, max_relative = 1e-6);
                assert_relative_eq!(g.psi(x) / g.psi_prime(x), g.psi_over_psi_prime(x), max_relative = 1e-12);
                assert_relative_eq!(
                    g.ln_abs_psi_prime(x),
                    (-g.psi_prime(x)).ln(),
                    max_relative = 1e-12,
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn composition_matches_direct() {
        for g1 in families() {
            for g2 in families() {
                for x in [0.01, 0.5, 1.0, 3.0] {
                    let direct = g2.phi(g1.psi(x));
                    let via = phi2_psi1(&g1, &g2, x);
                    if direct.is_finite() {
                        assert_relative_eq!(via, direct, max_relative = 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn logconcavity_examples() {
        let grid = generator_grid();
        assert!(
            check_generator_logconcave(&GeneratorSpec::Independence, &grid)
                .unwrap()
                .holds
        );
        assert!(
            check_generator_logconcave(&GeneratorSpec::gumbel_barnett(0.3).unwrap(), &grid)
                .unwrap()
                .holds
        );
        assert!(
            !check_generator_logconcave(&GeneratorSpec::gumbel_hougaard(2.5).unwrap(), &grid)
                .unwrap()
                .holds
        );
        let boundary = check_generator_logconcave(&GeneratorSpec::gumbel_hougaard(1.0).unwrap(), &grid).unwrap();
        assert!(boundary.holds);
        assert_eq!(boundary.notes.len(), 1);
        assert!(
            !check_generator_logconcave(&GeneratorSpec::clayton(1.0).unwrap(), &grid)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn additivity_examples() {
        let ind = GeneratorSpec::Independence;
        for mode in [Additivity::Super, Additivity::Sub] {
            assert!(check_phi2_psi1_additivity(&ind, &ind, mode, 2000, 1).holds);
        }
        let (g9, g7) = (
            GeneratorSpec::gumbel_barnett(0.9).unwrap(),
            GeneratorSpec::gumbel_barnett(0.7).unwrap(),
        );
        assert!(check_phi2_psi1_additivity(&g9, &g7, Additivity::Super, 2000, 1).holds);
        assert!(!check_phi2_psi1_additivity(&g9, &g7, Additivity::Sub, 2000, 1).holds);
        assert!(check_phi2_psi1_additivity(&g7, &g9, Additivity::Sub, 2000, 1).holds);
        let (h1, h2) = (
            GeneratorSpec::gumbel_hougaard(2.5).unwrap(),
            GeneratorSpec::gumbel_hougaard(1.0001).unwrap(),
        );
        assert!(check_phi2_psi1_additivity(&h1, &h2, Additivity::Sub, 2000, 1).holds);
        assert!(!check_phi2_psi1_additivity(&h1, &h2, Additivity::Super, 2000, 1).holds);
    }

    #[test]
    fn additivity_is_seed_deterministic() {
        let (g9, g7) = (
            GeneratorSpec::gumbel_barnett(0.9).unwrap(),
            GeneratorSpec::gumbel_barnett(0.7).unwrap(),
        );
        let a = check_phi2_psi1_additivity(&g9, &g7, Additivity::Sub, 500, 42);
        let b = check_phi2_psi1_additivity(&g9, &g7, Additivity::Sub, 500, 42);
        assert_eq!(a, b);
    }

    #[test]
    fn psi_ratio_examples() {
        let grid = generator_grid();
        let ind = check_psi_over_psiprime_increasing(&GeneratorSpec::Independence, &grid).unwrap();
        assert!(ind.holds);
        assert_eq!(ind.worst_violation, 0.0);
        // -a e^{-x} is increasing
        assert!(
            check_psi_over_psiprime_increasing(&GeneratorSpec::gumbel_barnett(0.5).unwrap(), &grid)
                .unwrap()
                .holds
        );
        assert!(
            !check_psi_over_psiprime_increasing(&GeneratorSpec::clayton(1.0).unwrap(), &grid)
                .unwrap()
                .holds
        );
        // -a x^{1-1/a} is decreasing for a > 1
        assert!(
            !check_psi_over_psiprime_increasing(&GeneratorSpec::gumbel_hougaard(2.5).unwrap(), &grid)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn copula_boundaries() {
        for g in families() {
            assert_eq!(compare_copulas(&g, &g, &[1.0, 1.0, 1.0]).unwrap(), (1.0, 1.0));
            assert_eq!(compare_copulas(&g, &g, &[0.3, 0.0, 0.9]).unwrap(), (0.0, 0.0));
        }
        assert!(compare_copulas(&GeneratorSpec::Independence, &GeneratorSpec::Independence, &[1.2, 0.5]).is_err());
    }

    #[test]
    fn clayton_homogeneous_loglog() {
        let cfg = ElsConfig::new(vec![0.0; 3], vec![1.0; 3], vec![1.0; 3], BaselineSpec::loglog())
            .unwrap()
            .with_generator(GeneratorSpec::clayton(1.0).unwrap());
        assert_relative_eq!(cdf_second_largest_dep(&cfg, 1.0).unwrap(), 0.5, max_relative = 1e-14);
        assert_eq!(cdf_second_largest_dep(&cfg, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn single_zero_component_keeps_its_term() {
        // baseline lower endpoint 1: the first component is still at zero
        let b = BaselineSpec::shifted_weibull_exp(0.5).unwrap();
        let cfg = ElsConfig::new(vec![3.0; 3], vec![3.0, 1.0, 1.0], vec![1.0; 3], b).unwrap();
        let x = 5.0;
        let fs = cfg.component_cdfs(x);
        assert_eq!(fs[0], 0.0);
        let dep = cfg.clone().with_generator(GeneratorSpec::Independence);
        assert_relative_eq!(
            cdf_second_largest_dep(&dep, x).unwrap(),
            fs[1] * fs[2],
            max_relative = 1e-12
        );
    }

    #[test]
    fn missing_generator() {
        let cfg = ElsConfig::new(vec![0.0; 2], vec![1.0; 2], vec![1.0; 2], BaselineSpec::loglog()).unwrap();
        assert!(matches!(
            cdf_second_largest_dep(&cfg, 1.0),
            Err(Error::MissingGenerator(_))
        ));
        let gh = cfg.with_generator(GeneratorSpec::gumbel_hougaard(2.0).unwrap());
        assert!(matches!(
            mc_cdf_second_largest_dep(&gh, 1.0, 100, 0),
            Err(Error::UnsupportedGenerator(_))
        ));
    }

    #[test]
    fn dependent_all_ones_boundary() {
        for g in families() {
            assert_relative_eq!(dep_formula(&g, &[0.0, 0.0, 0.0, 0.0]), 1.0);
        }
    }

    proptest! {
        #[test]
        fn lemma_implication_gumbel_barnett(a1 in 0.05f64..1.0, a2 in 0.05f64..1.0, v in proptest::collection::vec(1e-6f64..1.0, 2..5)) {
            let (g1, g2) = (GeneratorSpec::gumbel_barnett(a1).unwrap(), GeneratorSpec::gumbel_barnett(a2).unwrap());
            let (c1, c2) = compare_copulas(&g1, &g2, &v).unwrap();
            // a1 >= a2 gives a super-additive composition, hence C1 <= C2
            if a1 >= a2 {
                prop_assert!(c1 <= c2 + 1e-9, "c1={c1} c2={c2}");
            } else {
                prop_assert!(c2 <= c1 + 1e-9, "c1={c1} c2={c2}");
            }
        }
    }
}
