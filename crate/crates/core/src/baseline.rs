//! Baseline distributions `F_b` and the scalar functions built from them.
//!
//! A baseline is any closed-form univariate distribution implementing
//! [`BaselineFamily`]. Three families ship with the crate and are available
//! by name through [`BaselineRegistry`]; callers can register more.
//!
//! Besides the CDF and density, the order-comparison results are gated by
//! monotonicity and convexity of functions such as `w^2 rb(w)` (with `rb` the
//! reversed hazard `f/F`), `h = rb/r` (with `r` the hazard `f/(1-F)`) and
//! their derivatives. [`DerivedKind`] enumerates those functions and
//! [`check_condition_block`] certifies the bundled conditions C1 to C4 on a
//! grid.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::grid::GridSpec;
use crate::report::{ConditionReport, Location};

/// cdf values closer than this to 0 or 1 make a hazard denominator degenerate.
pub const DENOMINATOR_EPS: f64 = 1e-15;

/// Slack allowed on consecutive differences (and second differences) when
/// certifying monotonicity or convexity. Scaled by `max(1, |value|)`.
pub const MONOTONE_TOL: f64 = 1e-10;

pub const MIN_CONDITION_POINTS: usize = 64;

/// Closed support interval of a baseline; `upper` may be `+inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Support {
    pub lower: f64,
    pub upper: f64,
}

impl Support {
    pub fn contains(&self, w: f64) -> bool {
        w >= self.lower && w <= self.upper
    }

    pub fn interior(&self, w: f64) -> bool {
        w > self.lower && w < self.upper
    }

    pub fn is_bounded(&self) -> bool {
        self.upper.is_finite()
    }
}

/// A closed-form baseline family.
///
/// `cdf_formula` and `pdf_formula` are the raw expressions; callers go through
/// [`BaselineSpec`], which handles the support.
pub trait BaselineFamily: Send + Sync + fmt::Debug {
    fn family(&self) -> &str;
    fn params(&self) -> Vec<(&'static str, f64)>;
    fn support(&self) -> Support;
    fn cdf_formula(&self, w: f64) -> f64;
    fn pdf_formula(&self, w: f64) -> f64;
    fn quantile(&self, p: f64) -> f64;

    /// Finite window on which C1 to C4 style conditions are certified.
    fn condition_window(&self) -> (f64, f64) {
        let s = self.support();
        (s.lower, s.upper.min(self.quantile(0.999)))
    }

    /// Exact value of a derived function, if the family provides one.
    fn closed_form(&self, _kind: DerivedKind, _w: f64) -> Option<f64> {
        None
    }
}

/// `F_b(w) = (w/c)^a` on `(0, c]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerCap {
    pub a: f64,
    pub c: f64,
}

impl PowerCap {
    pub fn new(a: f64, c: f64) -> Result<Self> {
        positive("a", a)?;
        positive("c", c)?;
        Ok(PowerCap { a, c })
    }
}

impl BaselineFamily for PowerCap {
    fn family(&self) -> &str {
        "power_cap"
    }

    fn params(&self) -> Vec<(&'static str, f64)> {
        vec![("a", self.a), ("c", self.c)]
    }

    fn support(&self) -> Support {
        Support {
            lower: 0.0,
            upper: self.c,
        }
    }

    fn cdf_formula(&self, w: f64) -> f64 {
        (w / self.c).powf(self.a)
    }

    fn pdf_formula(&self, w: f64) -> f64 {
        self.a / w * (w / self.c).powf(self.a)
    }

    fn quantile(&self, p: f64) -> f64 {
        self.c * p.powf(1.0 / self.a)
    }

    fn condition_window(&self) -> (f64, f64) {
        (0.0, self.c)
    }

    fn closed_form(&self, kind: DerivedKind, w: f64) -> Option<f64> {
        let (a, c) = (self.a, self.c);
        let ca = c.powf(a);
        Some(match kind {
            DerivedKind::RevHazard => a / w,
            DerivedKind::WRevHazard => a,
            DerivedKind::W2RevHazard => a * w,
            DerivedKind::W2DerivWRevHazard => 0.0,
            DerivedKind::HRatio => (c / w).powf(a) - 1.0,
            DerivedKind::HRatioDeriv => -a * ca * w.powf(-a - 1.0),
            DerivedKind::HRatioSecondDeriv => a * (a + 1.0) * ca * w.powf(-a - 2.0),
            DerivedKind::WHRatioDeriv => -a * ca * w.powf(-a),
            DerivedKind::W2HRatioDeriv => -a * ca * w.powf(1.0 - a),
            DerivedKind::W2DerivWHRatioDeriv => a * a * ca * w.powf(1.0 - a),
            DerivedKind::Hazard => return None,
        })
    }
}

/// `F_b(w) = w / (1 + w)` on `(0, inf)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Loglog;

impl BaselineFamily for Loglog {
    fn family(&self) -> &str {
        "loglog"
    }

    fn params(&self) -> Vec<(&'static str, f64)> {
        Vec::new()
    }

    fn support(&self) -> Support {
        Support {
            lower: 0.0,
            upper: f64::INFINITY,
        }
    }

    fn cdf_formula(&self, w: f64) -> f64 {
        w / (1.0 + w)
    }

    fn pdf_formula(&self, w: f64) -> f64 {
        1.0 / ((1.0 + w) * (1.0 + w))
    }

    fn quantile(&self, p: f64) -> f64 {
        p / (1.0 - p)
    }

    fn condition_window(&self) -> (f64, f64) {
        (0.0, 100.0)
    }

    fn closed_form(&self, kind: DerivedKind, w: f64) -> Option<f64> {
        let s = 1.0 + w;
        Some(match kind {
            DerivedKind::RevHazard => 1.0 / (w * s),
            DerivedKind::Hazard => 1.0 / s,
            DerivedKind::WRevHazard => 1.0 / s,
            DerivedKind::W2RevHazard => w / s,
            DerivedKind::W2DerivWRevHazard => -(w * w) / (s * s),
            DerivedKind::HRatio => 1.0 / w,
            DerivedKind::HRatioDeriv => -1.0 / (w * w),
            DerivedKind::HRatioSecondDeriv => 2.0 / (w * w * w),
            DerivedKind::WHRatioDeriv => -1.0 / w,
            DerivedKind::W2HRatioDeriv => -1.0,
            DerivedKind::W2DerivWHRatioDeriv => 1.0,
        })
    }
}

/// `F_b(w) = 1 - exp(1 - w^a)` on `[1, inf)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftedWeibullExp {
    pub a: f64,
}

impl ShiftedWeibullExp {
    pub fn new(a: f64) -> Result<Self> {
        positive("a", a)?;
        Ok(ShiftedWeibullExp { a })
    }
}

impl BaselineFamily for ShiftedWeibullExp {
    fn family(&self) -> &str {
        "shifted_weibull_exp"
    }

    fn params(&self) -> Vec<(&'static str, f64)> {
        vec![("a", self.a)]
    }

    fn support(&self) -> Support {
        Support {
            lower: 1.0,
            upper: f64::INFINITY,
        }
    }

    fn cdf_formula(&self, w: f64) -> f64 {
        -(1.0 - w.powf(self.a)).exp_m1()
    }

    fn pdf_formula(&self, w: f64) -> f64 {
        self.a * w.powf(self.a - 1.0) * (1.0 - w.powf(self.a)).exp()
    }

    fn quantile(&self, p: f64) -> f64 {
        (1.0 - (-p).ln_1p()).powf(1.0 / self.a)
    }

    fn condition_window(&self) -> (f64, f64) {
        (1.0, 50.0)
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(invalid(name, format!("must be a positive finite number, got {v}")))
    }
}

/// Shared handle to a baseline family.
#[derive(Clone)]
pub struct BaselineSpec(Arc<dyn BaselineFamily>);

impl fmt::Debug for BaselineSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for BaselineSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.family())?;
        let params = self.0.params();
        if !params.is_empty() {
            write!(f, "(")?;
            for (i, (k, v)) in params.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{k}={v}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl PartialEq for BaselineSpec {
    fn eq(&self, other: &Self) -> bool {
        self.0.family() == other.0.family() && self.0.params() == other.0.params()
    }
}

/// Which basic function of the baseline to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineFn {
    Cdf,
    Pdf,
    Hazard,
    RevHazard,
}

impl BaselineSpec {
    pub fn new(family: impl BaselineFamily + 'static) -> Self {
        BaselineSpec(Arc::new(family))
    }

    pub fn power_cap(a: f64, c: f64) -> Result<Self> {
        Ok(Self::new(PowerCap::new(a, c)?))
    }

    pub fn loglog() -> Self {
        Self::new(Loglog)
    }

    pub fn shifted_weibull_exp(a: f64) -> Result<Self> {
        Ok(Self::new(ShiftedWeibullExp::new(a)?))
    }

    pub fn family(&self) -> &dyn BaselineFamily {
        self.0.as_ref()
    }

    pub fn name(&self) -> &str {
        self.0.family()
    }

    pub fn support(&self) -> Support {
        self.0.support()
    }

    pub fn quantile(&self, p: f64) -> f64 {
        self.0.quantile(p)
    }

    fn out_of_support(&self, w: f64) -> Error {
        let s = self.support();
        Error::OutOfSupport {
            value: w,
            lower: s.lower,
            upper: s.upper,
        }
    }

    /// CDF on the closed support; endpoints map to exactly 0 and 1.
    pub fn cdf(&self, w: f64) -> Result<f64> {
        let s = self.support();
        if !s.contains(w) || w.is_nan() {
            return Err(self.out_of_support(w));
        }
        if w == s.lower {
            return Ok(0.0);
        }
        if w == s.upper {
            return Ok(1.0);
        }
        Ok(self.0.cdf_formula(w).clamp(0.0, 1.0))
    }

    /// CDF extended by 0 below and 1 above the support.
    pub fn cdf_clamped(&self, w: f64) -> f64 {
        let s = self.support();
        if w <= s.lower {
            0.0
        } else if w >= s.upper {
            1.0
        } else {
            self.0.cdf_formula(w).clamp(0.0, 1.0)
        }
    }

    /// CDF formula evaluated past the upper support endpoint without capping.
    pub fn cdf_extended(&self, w: f64) -> f64 {
        if w <= self.support().lower {
            0.0
        } else {
            self.0.cdf_formula(w).max(0.0)
        }
    }

    pub fn pdf(&self, w: f64) -> Result<f64> {
        self.interior(w)?;
        Ok(self.0.pdf_formula(w).max(0.0))
    }

    pub fn hazard(&self, w: f64) -> Result<f64> {
        self.interior(w)?;
        let surv = 1.0 - self.0.cdf_formula(w);
        if surv <= DENOMINATOR_EPS {
            return Err(Error::DegenerateDenominator {
                at: w,
                what: "1 - F_b(w) vanishes",
            });
        }
        Ok(self.0.pdf_formula(w) / surv)
    }

    pub fn rev_hazard(&self, w: f64) -> Result<f64> {
        self.interior(w)?;
        let cdf = self.0.cdf_formula(w);
        if cdf <= DENOMINATOR_EPS {
            return Err(Error::DegenerateDenominator {
                at: w,
                what: "F_b(w) vanishes",
            });
        }
        Ok(self.0.pdf_formula(w) / cdf)
    }

    pub fn eval(&self, which: BaselineFn, w: f64) -> Result<f64> {
        match which {
            BaselineFn::Cdf => self.cdf(w),
            BaselineFn::Pdf => self.pdf(w),
            BaselineFn::Hazard => self.hazard(w),
            BaselineFn::RevHazard => self.rev_hazard(w),
        }
    }

    fn interior(&self, w: f64) -> Result<()> {
        if self.support().interior(w) {
            Ok(())
        } else {
            Err(self.out_of_support(w))
        }
    }

    /// `h(w) = rb(w)/r(w) = (1 - F_b)/F_b`, evaluated without forming the hazards.
    pub fn h_ratio(&self, w: f64) -> Result<f64> {
        self.interior(w)?;
        let cdf = self.0.cdf_formula(w);
        if cdf <= DENOMINATOR_EPS {
            return Err(Error::DegenerateDenominator {
                at: w,
                what: "F_b(w) vanishes",
            });
        }
        Ok((1.0 - cdf) / cdf)
    }

    /// `h'(w) = -f_b(w) / F_b(w)^2`.
    pub fn h_ratio_deriv(&self, w: f64) -> Result<f64> {
        self.interior(w)?;
        let cdf = self.0.cdf_formula(w);
        if cdf <= DENOMINATOR_EPS {
            return Err(Error::DegenerateDenominator {
                at: w,
                what: "F_b(w) vanishes",
            });
        }
        Ok(-self.0.pdf_formula(w) / (cdf * cdf))
    }

    /// Value of a derived function. Families with a closed-form table use it;
    /// other families fall back to central differences with the given step,
    /// shrunk so the stencil stays inside the support.
    pub fn derived(&self, kind: DerivedKind, w: f64, step: f64) -> Result<f64> {
        self.interior(w)?;
        if let Some(v) = self.0.closed_form(kind, w) {
            return Ok(v);
        }
        self.derived_numeric(kind, w, step)
    }

    /// Finite-difference route for derived functions, ignoring any closed
    /// form. Only first derivatives are differenced; `h'` is exact.
    pub fn derived_numeric(&self, kind: DerivedKind, w: f64, step: f64) -> Result<f64> {
        self.interior(w)?;
        let s = self.support();
        let room = (w - s.lower).min(s.upper - w);
        let step = step.min(room / 4.0);
        let diff = |g: &dyn Fn(f64) -> Result<f64>| -> Result<f64> { Ok((g(w + step)? - g(w - step)?) / (2.0 * step)) };
        match kind {
            DerivedKind::RevHazard => self.rev_hazard(w),
            DerivedKind::Hazard => self.hazard(w),
            DerivedKind::WRevHazard => Ok(w * self.rev_hazard(w)?),
            DerivedKind::W2RevHazard => Ok(w * w * self.rev_hazard(w)?),
            DerivedKind::HRatio => self.h_ratio(w),
            DerivedKind::HRatioDeriv => self.h_ratio_deriv(w),
            DerivedKind::WHRatioDeriv => Ok(w * self.h_ratio_deriv(w)?),
            DerivedKind::W2HRatioDeriv => Ok(w * w * self.h_ratio_deriv(w)?),
            DerivedKind::W2DerivWRevHazard => {
                let d = diff(&|u| Ok(u * self.rev_hazard(u)?))?;
                Ok(w * w * d)
            }
            DerivedKind::HRatioSecondDeriv => diff(&|u| self.h_ratio_deriv(u)),
            DerivedKind::W2DerivWHRatioDeriv => {
                let d = diff(&|u| Ok(u * self.h_ratio_deriv(u)?))?;
                Ok(w * w * d)
            }
        }
    }

    /// Default certification grid: the condition window, inset.
    pub fn condition_grid(&self, points: usize) -> Result<GridSpec> {
        let (lo, hi) = self.0.condition_window();
        GridSpec::inset(lo, hi, points)
    }
}

/// Scalar functions of the baseline that appear in theorem hypotheses.
/// `rb` is the reversed hazard, `h = rb / r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DerivedKind {
    /// `rb(w)`
    RevHazard,
    /// `r(w)`
    Hazard,
    /// `h(w) = rb(w)/r(w)`
    HRatio,
    /// `w^2 rb(w)`
    W2RevHazard,
    /// `w rb(w)`
    WRevHazard,
    /// `w^2 [w rb(w)]'`
    W2DerivWRevHazard,
    /// `h'(w)`
    HRatioDeriv,
    /// `h''(w)`
    HRatioSecondDeriv,
    /// `w h'(w)`
    WHRatioDeriv,
    /// `w^2 h'(w)`
    W2HRatioDeriv,
    /// `w^2 [w h'(w)]'`
    W2DerivWHRatioDeriv,
}

impl DerivedKind {
    pub fn label(&self) -> &'static str {
        match self {
            DerivedKind::RevHazard => "rb",
            DerivedKind::Hazard => "r",
            DerivedKind::HRatio => "rb/r",
            DerivedKind::W2RevHazard => "w^2*rb",
            DerivedKind::WRevHazard => "w*rb",
            DerivedKind::W2DerivWRevHazard => "w^2*[w*rb]'",
            DerivedKind::HRatioDeriv => "[rb/r]'",
            DerivedKind::HRatioSecondDeriv => "[rb/r]''",
            DerivedKind::WHRatioDeriv => "w*[rb/r]'",
            DerivedKind::W2HRatioDeriv => "w^2*[rb/r]'",
            DerivedKind::W2DerivWHRatioDeriv => "w^2*[w*[rb/r]']'",
        }
    }
}

/// A derived function bound to a baseline.
#[derive(Debug, Clone)]
pub struct DerivedFunction {
    pub kind: DerivedKind,
    pub baseline: BaselineSpec,
}

impl DerivedFunction {
    pub fn new(kind: DerivedKind, baseline: BaselineSpec) -> Self {
        DerivedFunction { kind, baseline }
    }

    pub fn eval(&self, w: f64, step: f64) -> Result<f64> {
        self.baseline.derived(self.kind, w, step)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl Direction {
    pub fn label(&self) -> &'static str {
        match self {
            Direction::Increasing => "increasing",
            Direction::Decreasing => "decreasing",
        }
    }
}

fn check_grid_in_support(b: &BaselineSpec, grid: &GridSpec) -> Result<()> {
    grid.validate()?;
    if grid.points < MIN_CONDITION_POINTS {
        return Err(Error::InvalidGrid(format!(
            "condition checks need at least {MIN_CONDITION_POINTS} points, got {}",
            grid.points
        )));
    }
    let s = b.support();
    for w in [grid.lo, grid.hi] {
        if !s.interior(w) {
            return Err(Error::OutOfSupport {
                value: w,
                lower: s.lower,
                upper: s.upper,
            });
        }
    }
    Ok(())
}

fn sample(f: &DerivedFunction, grid: &GridSpec) -> Result<Vec<f64>> {
    let step = grid.spacing();
    grid.iter().map(|w| f.eval(w, step)).collect()
}

fn monotone_report(name: String, xs: &[f64], vs: &[f64], direction: Direction) -> ConditionReport {
    let mut r = ConditionReport::new(name);
    for i in 1..vs.len() {
        let d = vs[i] - vs[i - 1];
        let signed = match direction {
            Direction::Increasing => -d,
            Direction::Decreasing => d,
        };
        let scale = 1f64.max(vs[i].abs()).max(vs[i - 1].abs());
        r.observe(signed.max(0.0) / scale, MONOTONE_TOL, Location::Pair(xs[i - 1], xs[i]));
    }
    r
}

fn convex_report(name: String, xs: &[f64], vs: &[f64]) -> ConditionReport {
    let mut r = ConditionReport::new(name);
    for i in 1..vs.len().saturating_sub(1) {
        let d2 = vs[i + 1] - 2.0 * vs[i] + vs[i - 1];
        let scale = 1f64.max(vs[i - 1].abs()).max(vs[i].abs()).max(vs[i + 1].abs());
        r.observe((-d2).max(0.0) / scale, MONOTONE_TOL, Location::Scalar(xs[i]));
    }
    r
}

/// Certifies that `f` is monotone in the stated (wide) sense on the grid.
///
/// A constant function passes both directions.
pub fn check_monotone(f: &DerivedFunction, direction: Direction, grid: &GridSpec) -> Result<ConditionReport> {
    check_grid_in_support(&f.baseline, grid)?;
    let xs = grid.to_vec();
    let vs = sample(f, grid)?;
    Ok(monotone_report(
        format!("{} {}", f.kind.label(), direction.label()),
        &xs,
        &vs,
        direction,
    ))
}

/// Certifies convexity through nonnegative second differences.
pub fn check_convex(f: &DerivedFunction, grid: &GridSpec) -> Result<ConditionReport> {
    check_grid_in_support(&f.baseline, grid)?;
    let xs = grid.to_vec();
    let vs = sample(f, grid)?;
    Ok(convex_report(format!("{} convex", f.kind.label()), &xs, &vs))
}

/// The bundled baseline conditions gating the reversed-hazard-rate results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConditionBlock {
    C1,
    C2,
    C3,
    C4,
}

impl ConditionBlock {
    pub fn label(&self) -> &'static str {
        match self {
            ConditionBlock::C1 => "C1",
            ConditionBlock::C2 => "C2",
            ConditionBlock::C3 => "C3",
            ConditionBlock::C4 => "C4",
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Requirement {
    Monotone(DerivedKind, Direction),
    Convex(DerivedKind),
}

fn block_requirements(block: ConditionBlock) -> Vec<Requirement> {
    use DerivedKind::*;
    use Direction::*;
    use Requirement::*;
    match block {
        ConditionBlock::C1 => vec![
            Monotone(W2DerivWRevHazard, Decreasing),
            Monotone(HRatio, Decreasing),
            Monotone(W2HRatioDeriv, Decreasing),
            Monotone(W2DerivWHRatioDeriv, Decreasing),
        ],
        ConditionBlock::C2 => vec![
            Convex(RevHazard),
            Monotone(HRatio, Decreasing),
            Convex(HRatio),
            Monotone(HRatioSecondDeriv, Increasing),
        ],
        ConditionBlock::C3 => vec![
            Monotone(WRevHazard, Decreasing),
            Monotone(W2DerivWRevHazard, Decreasing),
            Monotone(HRatio, Decreasing),
            Monotone(WHRatioDeriv, Decreasing),
            Monotone(W2HRatioDeriv, Decreasing),
            Monotone(W2DerivWHRatioDeriv, Decreasing),
        ],
        ConditionBlock::C4 => vec![
            Monotone(WRevHazard, Decreasing),
            Monotone(HRatio, Decreasing),
            Monotone(WHRatioDeriv, Decreasing),
            Monotone(W2HRatioDeriv, Increasing),
            Monotone(W2DerivWRevHazard, Increasing),
            Monotone(W2DerivWHRatioDeriv, Increasing),
        ],
    }
}

/// Certifies one of the condition bundles C1 to C4; one subreport per
/// constituent, aggregated with `all_of`.
pub fn check_condition_block(b: &BaselineSpec, block: ConditionBlock, grid: &GridSpec) -> Result<ConditionReport> {
    check_grid_in_support(b, grid)?;
    let xs = grid.to_vec();
    let mut cache: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    let mut parts = Vec::new();
    for req in block_requirements(block) {
        let kind = match req {
            Requirement::Monotone(k, _) | Requirement::Convex(k) => k,
        };
        let key = kind.label().to_string();
        if !cache.contains_key(&key) {
            let vs = sample(&DerivedFunction::new(kind, b.clone()), grid)?;
            cache.insert(key.clone(), vs);
        }
        let vs = &cache[&key];
        parts.push(match req {
            Requirement::Monotone(k, dir) => monotone_report(format!("{} {}", k.label(), dir.label()), &xs, vs, dir),
            Requirement::Convex(k) => convex_report(format!("{} convex", k.label()), &xs, vs),
        });
    }
    Ok(ConditionReport::all_of(block.label(), parts))
}

/// Parameters of a baseline as read from a configuration file.
pub type BaselineParams = BTreeMap<String, f64>;

type Constructor = Box<dyn Fn(&BaselineParams) -> Result<BaselineSpec> + Send + Sync>;

/// Name-keyed constructors for baseline families.
pub struct BaselineRegistry {
    ctors: BTreeMap<String, Constructor>,
}

impl fmt::Debug for BaselineRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.ctors.keys()).finish()
    }
}

impl Default for BaselineRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

fn param(params: &BaselineParams, family: &str, key: &str) -> Result<f64> {
    params
        .get(key)
        .copied()
        .ok_or_else(|| invalid(format!("{family}.{key}"), "missing"))
}

fn no_extra(params: &BaselineParams, family: &str, allowed: &[&str]) -> Result<()> {
    match params.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(invalid(format!("{family}.{k}"), "unknown parameter")),
        None => Ok(()),
    }
}

impl BaselineRegistry {
    pub fn empty() -> Self {
        BaselineRegistry { ctors: BTreeMap::new() }
    }

    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        r.register("power_cap", |p| {
            no_extra(p, "power_cap", &["a", "c"])?;
            BaselineSpec::power_cap(param(p, "power_cap", "a")?, param(p, "power_cap", "c")?)
        });
        r.register("loglog", |p| {
            no_extra(p, "loglog", &[])?;
            Ok(BaselineSpec::loglog())
        });
        r.register("shifted_weibull_exp", |p| {
            no_extra(p, "shifted_weibull_exp", &["a"])?;
            BaselineSpec::shifted_weibull_exp(param(p, "shifted_weibull_exp", "a")?)
        });
        r
    }

    pub fn register<F>(&mut self, name: &str, ctor: F)
    where
        F: Fn(&BaselineParams) -> Result<BaselineSpec> + Send + Sync + 'static,
    {
        self.ctors.insert(name.to_string(), Box::new(ctor));
    }

    pub fn build(&self, name: &str, params: &BaselineParams) -> Result<BaselineSpec> {
        let ctor = self.ctors.get(name).ok_or_else(|| Error::Unknown {
            kind: "baseline family",
            name: name.to_string(),
        })?;
        ctor(params)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.ctors.keys().map(String::as_str)
    }
}
