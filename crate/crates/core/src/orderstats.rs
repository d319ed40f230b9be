//! The second-largest order statistic `X_{n-1:n}`: CDF, reversed hazard rate,
//! grid-based order checks and a Monte Carlo oracle.

use std::fmt;
use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Open01};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::copula::{cdf_second_largest_dep, GeneratorSpec};
use crate::els::{ElsConfig, SupportMode};
use crate::error::{invalid, Error, Result};
use crate::grid::GridSpec;

/// Absolute tolerance on CDF differences.
pub const ST_TOL: f64 = 1e-9;
/// Relative tolerance on reversed-hazard differences.
pub const RH_TOL: f64 = 1e-7;
/// Bisection stops once the bracket is this fraction of the grid range.
pub const CROSSING_WIDTH: f64 = 1e-3;
/// rh checks on bounded baselines stop this fraction of the range short of
/// the largest component upper endpoint.
pub const RH_UPPER_GAP: f64 = 1e-4;

const MC_CHUNK: usize = 1 << 16;

fn independent(cfg: &ElsConfig) -> bool {
    cfg.generator.as_ref().is_none_or(GeneratorSpec::is_independence)
}

fn leave_one_out_products(fs: &[f64]) -> (f64, f64) {
    let n = fs.len();
    let mut sum = 0.0;
    for l in 0..n {
        let mut p = 1.0;
        for (k, &f) in fs.iter().enumerate() {
            if k != l {
                p *= f;
            }
        }
        sum += p;
    }
    let all: f64 = fs.iter().product();
    (sum, all)
}

/// `sum_l prod_{k != l} F_k - (n - 1) prod_k F_k` for independent components.
pub fn cdf_second_largest_indep(cfg: &ElsConfig, x: f64) -> Result<f64> {
    if cfg.generator.is_some() {
        return Err(invalid(
            "generator",
            "configuration carries a dependence generator; use cdf_second_largest",
        ));
    }
    Ok(indep_value(cfg, x))
}

fn indep_value(cfg: &ElsConfig, x: f64) -> f64 {
    if x <= cfg.max_location() {
        return 0.0;
    }
    let fs = cfg.component_cdfs(x);
    let (sum, all) = leave_one_out_products(&fs);
    let v = sum - (fs.len() as f64 - 1.0) * all;
    match cfg.support_mode {
        SupportMode::Clamp => v.clamp(0.0, 1.0),
        SupportMode::Extrapolate => v,
    }
}

/// CDF of the second largest; dispatches on the presence of a generator.
pub fn cdf_second_largest(cfg: &ElsConfig, x: f64) -> Result<f64> {
    match cfg.generator {
        None => Ok(indep_value(cfg, x)),
        Some(_) => cdf_second_largest_dep(cfg, x),
    }
}

/// CDF of the maximum, `prod_k F_k` (independent case).
pub fn cdf_max_indep(cfg: &ElsConfig, x: f64) -> f64 {
    cfg.component_cdfs(x).iter().product()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RhMethod {
    /// Closed form for unit shapes with independent components.
    ClosedForm,
    /// Five-point derivative of `ln F_{n-1:n}`.
    NumericLogDeriv,
}

struct BaselinePieces {
    rt: f64,
    h: f64,
    hp: f64,
}

/// `rb`, `h = (1 - F_b)/F_b` and `h' = -f_b / F_b^2` at a standardized point
/// strictly above the lower support endpoint; past the upper endpoint the
/// component is saturated and all three are 0.
fn pieces(cfg: &ElsConfig, w: f64) -> Option<BaselinePieces> {
    let s = cfg.baseline.support();
    if w <= s.lower {
        return None;
    }
    if w >= s.upper && cfg.support_mode == SupportMode::Clamp {
        return Some(BaselinePieces {
            rt: 0.0,
            h: 0.0,
            hp: 0.0,
        });
    }
    let fam = cfg.baseline.family();
    let f = fam.pdf_formula(w);
    let cdf = fam.cdf_formula(w);
    if cdf <= 0.0 {
        return None;
    }
    Some(BaselinePieces {
        rt: f / cdf,
        h: (1.0 - cdf) / cdf,
        hp: -f / (cdf * cdf),
    })
}

fn rh_closed_form(cfg: &ElsConfig, x: f64) -> Result<f64> {
    if cfg.generator.is_some_and(|g| !g.is_independence()) {
        return Err(invalid(
            "method",
            "closed-form reversed hazard rate needs independent components",
        ));
    }
    if let Some((index, &alpha)) = cfg.alpha.iter().enumerate().find(|(_, &a)| a != 1.0) {
        return Err(Error::ShapeNotUnit { index, alpha });
    }
    let degenerate = Error::DegenerateDenominator {
        at: x,
        what: "F_{n-1:n}(x) vanishes",
    };
    if x <= cfg.max_location() {
        return Err(degenerate);
    }
    let n = cfg.n();
    let mut parts = Vec::with_capacity(n);
    let mut zero = Vec::new();
    for i in 0..n {
        match pieces(cfg, cfg.standardized(i, x)) {
            Some(p) => parts.push(Some(p)),
            None => {
                zero.push(i);
                parts.push(None);
            }
        }
    }
    match zero.len() {
        0 => {
            let (mut a, mut b, mut c) = (0.0, 0.0, 1.0);
            for (i, p) in parts.iter().enumerate() {
                let p = p.as_ref().expect("all components positive");
                let inv = 1.0 / cfg.theta[i];
                a += inv * p.rt;
                b += inv * p.hp;
                c += p.h;
            }
            Ok(a + b / c)
        }
        // One component still at zero: F_{n-1:n} is the product of the others.
        1 => Ok(parts
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.as_ref().map(|p| p.rt / cfg.theta[i]))
            .sum()),
        _ => Err(degenerate),
    }
}

fn rh_numeric(cfg: &ElsConfig, x: f64) -> Result<f64> {
    let m = cfg.max_location();
    if x <= m {
        return Err(Error::DegenerateDenominator {
            at: x,
            what: "F_{n-1:n}(x) vanishes",
        });
    }
    let h = 1e-4 * (x - m);
    let lf = |u: f64| -> Result<f64> {
        let v = cdf_second_largest(cfg, u)?;
        if v <= 0.0 {
            return Err(Error::DegenerateDenominator {
                at: u,
                what: "F_{n-1:n}(x) vanishes",
            });
        }
        Ok(v.ln())
    };
    let (m2, m1, p1, p2) = (lf(x - 2.0 * h)?, lf(x - h)?, lf(x + h)?, lf(x + 2.0 * h)?);
    Ok((m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h))
}

/// Reversed hazard rate of the second largest at `x`.
pub fn rh_second_largest(cfg: &ElsConfig, x: f64, method: RhMethod) -> Result<f64> {
    match method {
        RhMethod::ClosedForm => rh_closed_form(cfg, x),
        RhMethod::NumericLogDeriv => rh_numeric(cfg, x),
    }
}

/// Independent-case entry point.
pub fn rh_second_largest_indep(cfg: &ElsConfig, x: f64, method: RhMethod) -> Result<f64> {
    if cfg.generator.is_some() {
        return Err(invalid(
            "generator",
            "configuration carries a dependence generator; use rh_second_largest",
        ));
    }
    rh_second_largest(cfg, x, method)
}

/// Closed form when it applies, numeric otherwise.
pub fn preferred_rh_method(cfg: &ElsConfig) -> RhMethod {
    if independent(cfg) && cfg.all_unit_shape() {
        RhMethod::ClosedForm
    } else {
        RhMethod::NumericLogDeriv
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Order {
    St,
    Rh,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Order::St => "st",
            Order::Rh => "rh",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "HOLDS",
            Verdict::Fails => "FAILS",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Evidence for `X <= Y` in the given order on a grid.
///
/// Verdicts are grid certificates: the check is repeated on a grid with
/// halved spacing, and a verdict that changes becomes `Inconclusive`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderCheckReport {
    pub order: Order,
    pub verdict: Verdict,
    /// Largest violation; absolute for st, relative to `max(1, |r|)` for rh.
    pub max_violation: f64,
    pub violation_x: Option<f64>,
    pub crossing_x: Option<f64>,
    pub grid: GridSpec,
    pub tol: f64,
}

impl fmt::Display for OrderCheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} max_violation={:.3e}",
            self.order, self.verdict, self.max_violation
        )?;
        if let Some(x) = self.violation_x {
            write!(f, " at x={x:.6}")?;
        }
        if let Some(c) = self.crossing_x {
            write!(f, " crossing={c:.4}")?;
        }
        write!(f, " grid={}", self.grid)
    }
}

/// One row of a comparison series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesRow {
    pub x: f64,
    pub value_x: f64,
    pub value_y: f64,
    pub diff: f64,
}

fn value(cfg: &ElsConfig, order: Order, x: f64) -> Result<f64> {
    match order {
        Order::St => cdf_second_largest(cfg, x),
        Order::Rh => rh_second_largest(cfg, x, preferred_rh_method(cfg)),
    }
}

fn check_locations(x: &ElsConfig, y: &ElsConfig, grid: &GridSpec) -> Result<()> {
    grid.validate()?;
    let m = x.max_location().max(y.max_location());
    if grid.lo <= m {
        return Err(Error::GridBelowLocation {
            lo: grid.lo,
            max_location: m,
        });
    }
    Ok(())
}

/// Grid actually used for a comparison: rh comparisons on bounded baselines
/// stop short of the largest component upper endpoint.
pub fn effective_grid(x: &ElsConfig, y: &ElsConfig, order: Order, grid: &GridSpec) -> Result<GridSpec> {
    check_locations(x, y, grid)?;
    if order == Order::St {
        return Ok(*grid);
    }
    let u = x.upper_x().max(y.upper_x());
    if u.is_finite() && grid.hi >= u {
        let hi = u - RH_UPPER_GAP * (u - grid.lo);
        let g = grid.with_hi(hi);
        g.validate()?;
        return Ok(g);
    }
    Ok(*grid)
}

/// Values of both systems and their difference `X - Y` on the grid.
pub fn order_series(x: &ElsConfig, y: &ElsConfig, order: Order, grid: &GridSpec) -> Result<Vec<SeriesRow>> {
    let g = effective_grid(x, y, order, grid)?;
    series_on(x, y, order, &g)
}

fn series_on(x: &ElsConfig, y: &ElsConfig, order: Order, g: &GridSpec) -> Result<Vec<SeriesRow>> {
    (0..g.points)
        .into_par_iter()
        .map(|i| {
            let p = g.at(i);
            let vx = value(x, order, p)?;
            let vy = value(y, order, p)?;
            Ok(SeriesRow {
                x: p,
                value_x: vx,
                value_y: vy,
                diff: vx - vy,
            })
        })
        .collect()
}

/// Violation of `X <= Y` at one point, in the units used for the verdict.
fn violation(order: Order, vx: f64, vy: f64) -> f64 {
    match order {
        // X <=st Y  iff  F_X >= F_Y
        Order::St => vy - vx,
        Order::Rh => (vx - vy) / 1f64.max(vx.abs()).max(vy.abs()),
    }
}

fn tol(order: Order) -> f64 {
    match order {
        Order::St => ST_TOL,
        Order::Rh => RH_TOL,
    }
}

/// Signed difference normalized so that the zero band is `[-tol, tol]`.
fn normalized_diff(order: Order, vx: f64, vy: f64) -> f64 {
    match order {
        Order::St => vx - vy,
        Order::Rh => (vx - vy) / 1f64.max(vx.abs()).max(vy.abs()),
    }
}

fn sign(order: Order, d: f64) -> i8 {
    if d.is_nan() {
        0
    } else if d > tol(order) {
        1
    } else if d < -tol(order) {
        -1
    } else {
        0
    }
}

struct Pass {
    holds: bool,
    max_violation: f64,
    violation_x: Option<f64>,
    first_change: Option<(f64, f64, i8)>,
}

fn evaluate(rows: &[SeriesRow], order: Order) -> Pass {
    let t = tol(order);
    let mut worst = 0.0;
    let mut at = None;
    let mut holds = true;
    for r in rows {
        let v = violation(order, r.value_x, r.value_y);
        if v.is_nan() {
            holds = false;
            continue;
        }
        if v > worst {
            worst = v;
            at = Some(r.x);
        }
        if v > t {
            holds = false;
        }
    }
    let mut first_change = None;
    let mut last: Option<(f64, i8)> = None;
    for r in rows {
        let s = sign(order, normalized_diff(order, r.value_x, r.value_y));
        if s == 0 {
            continue;
        }
        if let Some((lx, ls)) = last {
            if ls != s {
                first_change = Some((lx, r.x, ls));
                break;
            }
        }
        last = Some((r.x, s));
    }
    Pass {
        holds,
        max_violation: worst,
        violation_x: at,
        first_change,
    }
}

fn bisect(x: &ElsConfig, y: &ElsConfig, order: Order, mut a: f64, mut b: f64, sa: i8, width: f64) -> Result<f64> {
    while b - a > width {
        let m = 0.5 * (a + b);
        let d = normalized_diff(order, value(x, order, m)?, value(y, order, m)?);
        if sign(order, d) == sa {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Grid check of `X <= Y` in the usual stochastic (`st`) or reversed hazard
/// rate (`rh`) order.
pub fn check_order(x: &ElsConfig, y: &ElsConfig, order: Order, grid: &GridSpec) -> Result<OrderCheckReport> {
    let g = effective_grid(x, y, order, grid)?;
    let rows = series_on(x, y, order, &g)?;
    report_from_rows(x, y, order, &g, &rows)
}

pub(crate) fn report_from_rows(
    x: &ElsConfig,
    y: &ElsConfig,
    order: Order,
    g: &GridSpec,
    rows: &[SeriesRow],
) -> Result<OrderCheckReport> {
    let coarse = evaluate(rows, order);
    let fine = evaluate(&series_on(x, y, order, &g.refined())?, order);
    let verdict = match (coarse.holds, fine.holds) {
        (true, true) => Verdict::Holds,
        (false, false) => Verdict::Fails,
        _ => Verdict::Inconclusive,
    };
    let crossing_x = match coarse.first_change {
        Some((a, b, s)) => Some(bisect(x, y, order, a, b, s, CROSSING_WIDTH * g.range())?),
        None => None,
    };
    let (max_violation, violation_x) = if fine.max_violation > coarse.max_violation {
        (fine.max_violation, fine.violation_x)
    } else {
        (coarse.max_violation, coarse.violation_x)
    };
    Ok(OrderCheckReport {
        order,
        verdict,
        max_violation,
        violation_x: if max_violation > 0.0 { violation_x } else { None },
        crossing_x,
        grid: *g,
        tol: tol(order),
    })
}

pub fn csv_header(order: Order) -> [&'static str; 4] {
    match order {
        Order::St => ["x", "F_X", "F_Y", "diff"],
        Order::Rh => ["x", "rh_X", "rh_Y", "diff"],
    }
}

/// Writes a series as CSV with the fixed header for the order.
pub fn write_series_csv<W: Write>(out: W, order: Order, rows: &[SeriesRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(csv_header(order))?;
    for r in rows {
        w.write_record([
            format!("{:e}", r.x),
            format!("{:e}", r.value_x),
            format!("{:e}", r.value_y),
            format!("{:e}", r.diff),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Monte Carlo estimate with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub x: f64,
    pub estimate: f64,
    pub stderr: f64,
    pub samples: usize,
}

impl McEstimate {
    /// ECDF of `draws` at each of `xs`; points at or below `floor` give 0.
    pub(crate) fn ecdf(draws: &[f64], xs: &[f64], floor: f64) -> Vec<McEstimate> {
        let mut sorted = draws.to_vec();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len();
        xs.iter()
            .map(|&x| {
                let p = if x <= floor || n == 0 {
                    0.0
                } else {
                    sorted.partition_point(|&d| d <= x) as f64 / n as f64
                };
                McEstimate {
                    x,
                    estimate: p,
                    stderr: (p * (1.0 - p) / n.max(1) as f64).sqrt(),
                    samples: n,
                }
            })
            .collect()
    }
}

fn second_largest(v: &[f64]) -> f64 {
    let (mut a, mut b) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &x in v {
        if x > a {
            b = a;
            a = x;
        } else if x > b {
            b = x;
        }
    }
    b
}

/// Draws `samples` second-largest values. `draw_v` fills the vector of
/// uniforms (possibly dependent) that is mapped through component quantiles.
/// Chunk `c` uses stream `c` of a ChaCha8 generator seeded with `seed`, so
/// the output does not depend on the thread count.
pub(crate) fn mc_draws<F>(cfg: &ElsConfig, samples: usize, seed: u64, draw_v: F) -> Result<Vec<f64>>
where
    F: Fn(&mut ChaCha8Rng, &mut [f64]) + Sync,
{
    if samples == 0 {
        return Err(invalid("samples", "must be positive"));
    }
    let n = cfg.n();
    let chunks = samples.div_ceil(MC_CHUNK);
    let out: Vec<Vec<f64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let len = MC_CHUNK.min(samples - c * MC_CHUNK);
            let mut v = vec![0.0; n];
            let mut xs = vec![0.0; n];
            (0..len)
                .map(|_| {
                    draw_v(&mut rng, &mut v);
                    for i in 0..n {
                        xs[i] = cfg.quantile_unchecked(i, v[i]);
                    }
                    second_largest(&xs)
                })
                .collect()
        })
        .collect();
    Ok(out.concat())
}

fn independent_uniforms(rng: &mut ChaCha8Rng, v: &mut [f64]) {
    for slot in v.iter_mut() {
        *slot = Open01.sample(rng);
    }
}

/// Second-largest draws for independent components.
pub fn mc_second_largest_draws(cfg: &ElsConfig, samples: usize, seed: u64) -> Result<Vec<f64>> {
    if cfg.generator.is_some() {
        return Err(invalid(
            "generator",
            "independent-case sampler called on a dependent configuration",
        ));
    }
    mc_draws(cfg, samples, seed, independent_uniforms)
}

/// Monte Carlo estimate of the independent second-largest CDF at `x`.
pub fn mc_cdf_second_largest(cfg: &ElsConfig, x: f64, samples: usize, seed: u64) -> Result<McEstimate> {
    Ok(mc_ecdf_second_largest(cfg, &[x], samples, seed)?.remove(0))
}

/// Monte Carlo ECDF at several points from one shared sample.
pub fn mc_ecdf_second_largest(cfg: &ElsConfig, xs: &[f64], samples: usize, seed: u64) -> Result<Vec<McEstimate>> {
    let draws = mc_second_largest_draws(cfg, samples, seed)?;
    Ok(McEstimate::ecdf(&draws, xs, cfg.max_location()))
}

/// DKW half-width `sqrt(ln(2/delta) / (2 N))`.
pub fn dkw_bound(samples: usize, delta: f64) -> f64 {
    ((2.0 / delta).ln() / (2.0 * samples as f64)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseline::BaselineSpec;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn ex31() -> (ElsConfig, ElsConfig) {
        let b = BaselineSpec::power_cap(0.2, 100.0).unwrap();
        (
            ElsConfig::scalar_location(4.0, vec![5.0, 9.0, 10.0], 4.0, b.clone()).unwrap(),
            ElsConfig::scalar_location(4.0, vec![7.0, 10.0, 12.0], 4.0, b).unwrap(),
        )
    }

    fn ex32() -> (ElsConfig, ElsConfig) {
        let b = BaselineSpec::loglog();
        (
            ElsConfig::scalar_location(4.0, vec![2.0, 5.0, 9.0], 1.0, b.clone()).unwrap(),
            ElsConfig::scalar_location(4.0, vec![3.0, 6.0, 7.0], 1.0, b).unwrap(),
        )
    }

    #[test]
    fn n2_is_minimum() {
        let b = BaselineSpec::loglog();
        let c = ElsConfig::new(vec![1.0, 2.0], vec![2.0, 0.5], vec![1.5, 0.7], b).unwrap();
        for x in GridSpec::new(2.001, 40.0, 512).unwrap().iter() {
            let f1 = c.component_cdf(0, x).unwrap();
            let f2 = c.component_cdf(1, x).unwrap();
            let v = cdf_second_largest_indep(&c, x).unwrap();
            assert!((v - (1.0 - (1.0 - f1) * (1.0 - f2))).abs() <= 1e-14);
        }
    }

    #[test]
    fn homogeneous_binomial() {
        let b = BaselineSpec::shifted_weibull_exp(0.5).unwrap();
        let c = ElsConfig::scalar_location(1.0, vec![2.0; 3], 1.3, b).unwrap();
        for x in [3.5, 5.0, 12.0, 40.0] {
            let f = c.component_cdf(0, x).unwrap();
            assert_relative_eq!(
                cdf_second_largest_indep(&c, x).unwrap(),
                3.0 * f * f - 2.0 * f * f * f,
                max_relative = 1e-13
            );
        }
        assert_eq!(cdf_second_largest_indep(&c, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn rh_n2_example() {
        let c = ElsConfig::new(vec![0.0; 2], vec![1.0; 2], vec![1.0; 2], BaselineSpec::loglog()).unwrap();
        assert_relative_eq!(
            rh_second_largest_indep(&c, 1.0, RhMethod::NumericLogDeriv).unwrap(),
            1.0 / 3.0,
            max_relative = 1e-9
        );
        assert_relative_eq!(
            rh_second_largest_indep(&c, 1.0, RhMethod::ClosedForm).unwrap(),
            1.0 / 3.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn rh_methods_agree_ex32() {
        let (x, _) = ex32();
        let a = rh_second_largest_indep(&x, 10.0, RhMethod::ClosedForm).unwrap();
        let b = rh_second_largest_indep(&x, 10.0, RhMethod::NumericLogDeriv).unwrap();
        assert!(((a - b) / a).abs() <= 1e-6);
    }

    #[test]
    fn rh_needs_unit_shape() {
        let (x, _) = ex31();
        assert!(matches!(
            rh_second_largest_indep(&x, 10.0, RhMethod::ClosedForm),
            Err(Error::ShapeNotUnit { index: 0, .. })
        ));
        assert!(rh_second_largest_indep(&x, 10.0, RhMethod::NumericLogDeriv).is_ok());
    }

    #[test]
    fn rh_one_component_below_support() {
        // SWE lower endpoint is 1, so the first component is zero at x = 5
        let b = BaselineSpec::shifted_weibull_exp(0.5).unwrap();
        let c = ElsConfig::new(vec![3.0; 3], vec![3.0, 1.0, 1.0], vec![1.0; 3], b).unwrap();
        let a = rh_second_largest(&c, 5.0, RhMethod::ClosedForm).unwrap();
        let n = rh_second_largest(&c, 5.0, RhMethod::NumericLogDeriv).unwrap();
        assert_relative_eq!(a, n, max_relative = 1e-6);
        assert!(matches!(
            rh_second_largest(&c, 3.5, RhMethod::ClosedForm),
            Err(Error::DegenerateDenominator { .. })
        ));
    }

    #[test]
    fn ex31_st_holds() {
        let (x, y) = ex31();
        let g = GridSpec::new(4.001, 100.0, 4096).unwrap();
        let r = check_order(&x, &y, Order::St, &g).unwrap();
        assert_eq!(r.verdict, Verdict::Holds, "{r}");
        assert!(r.crossing_x.is_none());
    }

    #[test]
    fn ex32_rh_holds() {
        let (x, y) = ex32();
        let g = GridSpec::new(4.001, 100.0, 4096).unwrap();
        let r = check_order(&x, &y, Order::Rh, &g).unwrap();
        assert_eq!(r.verdict, Verdict::Holds, "{r}");
        for row in order_series(&x, &y, Order::Rh, &g).unwrap() {
            assert!(row.diff < 0.0);
        }
    }

    #[test]
    fn reflexive() {
        for (x, _) in [ex31(), ex32()] {
            for order in [Order::St, Order::Rh] {
                let g = GridSpec::new(4.5, 90.0, 256).unwrap();
                let r = check_order(&x, &x, order, &g).unwrap();
                assert_eq!(r.verdict, Verdict::Holds);
                assert_eq!(r.max_violation, 0.0);
            }
        }
    }

    #[test]
    fn grid_below_location() {
        let (x, y) = ex31();
        let g = GridSpec::new(3.0, 100.0, 64).unwrap();
        assert!(matches!(
            check_order(&x, &y, Order::St, &g),
            Err(Error::GridBelowLocation { .. })
        ));
    }

    #[test]
    fn rh_grid_capped_on_bounded_support() {
        let b = BaselineSpec::power_cap(0.2, 10.0).unwrap();
        let x = ElsConfig::scalar_location(0.5, vec![1.0, 2.0], 1.0, b.clone()).unwrap();
        let y = ElsConfig::scalar_location(0.5, vec![1.5, 2.0], 1.0, b).unwrap();
        let g = GridSpec::new(1.0, 100.0, 128).unwrap();
        let e = effective_grid(&x, &y, Order::Rh, &g).unwrap();
        assert!(e.hi < 20.5);
        assert_eq!(effective_grid(&x, &y, Order::St, &g).unwrap(), g);
    }

    #[test]
    fn csv_headers() {
        let (x, y) = ex31();
        let g = GridSpec::new(4.001, 100.0, 8).unwrap();
        let rows = order_series(&x, &y, Order::St, &g).unwrap();
        let mut buf = Vec::new();
        write_series_csv(&mut buf, Order::St, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("x,F_X,F_Y,diff\n"));
        assert_eq!(text.lines().count(), 9);
        let mut buf = Vec::new();
        write_series_csv(&mut buf, Order::Rh, &rows).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("x,rh_X,rh_Y,diff\n"));
    }

    #[test]
    fn mc_is_deterministic() {
        let (x, _) = ex31();
        let a = mc_cdf_second_largest(&x, 60.0, 100_000, 3).unwrap();
        let b = mc_cdf_second_largest(&x, 60.0, 100_000, 3).unwrap();
        assert_eq!(a, b);
        let c = mc_cdf_second_largest(&x, 60.0, 100_000, 4).unwrap();
        assert_ne!(a.estimate, c.estimate);
        assert_eq!(mc_cdf_second_largest(&x, 3.0, 1000, 0).unwrap().estimate, 0.0);
    }

    #[test]
    fn mc_matches_closed_form_homogeneous() {
        let c = ElsConfig::new(vec![0.0; 3], vec![1.0; 3], vec![1.0; 3], BaselineSpec::loglog()).unwrap();
        let e = mc_cdf_second_largest(&c, 1.0, 200_000, 11).unwrap();
        assert!((e.estimate - 0.5).abs() <= 3.5 * e.stderr, "{e:?}");
    }

    #[test]
    fn dkw_value() {
        assert!((dkw_bound(1_000_000, 1e-6) - 2.69e-3).abs() < 1e-5);
    }

    proptest! {
        #[test]
        fn cdf_monotone_and_sandwiched(t in proptest::collection::vec(0.2f64..8.0, 3), l in 0.0f64..3.0, a in 0.3f64..4.0) {
            let c = ElsConfig::scalar_location(l, t, a, BaselineSpec::loglog()).unwrap();
            let g = GridSpec::new(l + 1e-3, l + 60.0, 200).unwrap();
            let mut prev = 0.0;
            for x in g.iter() {
                let v = cdf_second_largest_indep(&c, x).unwrap();
                prop_assert!(v - prev >= -1e-12);
                prop_assert!(cdf_max_indep(&c, x) <= v + 1e-15);
                prev = v;
            }
        }

        #[test]
        fn rh_methods_agree(t in proptest::collection::vec(0.5f64..8.0, 3), l in 0.0f64..3.0, dx in 0.5f64..40.0) {
            let c = ElsConfig::scalar_location(l, t, 1.0, BaselineSpec::loglog()).unwrap();
            let x = l + dx;
            let a = rh_second_largest_indep(&c, x, RhMethod::ClosedForm).unwrap();
            let b = rh_second_largest_indep(&c, x, RhMethod::NumericLogDeriv).unwrap();
            prop_assert!(((a - b) / a).abs() <= 1e-6, "closed={a} numeric={b}");
        }
    }
}
