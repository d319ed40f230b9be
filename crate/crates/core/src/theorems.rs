//! Executable theorem checks: hypothesis checklists over a pair of
//! configurations, a conclusion order check, compiled-in fixtures and
//! randomized property suites.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baseline::{
    check_condition_block, check_monotone, BaselineSpec, ConditionBlock, DerivedFunction, DerivedKind, Direction,
};
use crate::copula::{
    check_generator_logconcave, check_phi2_psi1_additivity, check_psi_over_psiprime_increasing, generator_grid,
    Additivity, GeneratorSpec,
};
use crate::els::{ElsConfig, SupportMode};
use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::majorization::{check_preorder, common_cone, ParamVector, Preorder};
use crate::orderstats::{check_order, order_series, Order, OrderCheckReport, SeriesRow, Verdict};

/// Points used to certify baseline conditions.
pub const CONDITION_POINTS: usize = 4096;
pub const ADDITIVITY_TRIALS: usize = 4096;
pub const MAX_REJECTIONS: usize = 100_000;
pub const SUITE_GRID_POINTS: usize = 2048;
/// Largest Gumbel-Barnett parameter whose generator is 3-monotone, so that
/// it defines a trivariate copula: `(3 - sqrt 5) / 2`.
pub const GB_THREE_MONOTONE_MAX: f64 = 0.381_966_011_250_105;
/// Relative tolerance used when deciding that a vector is constant or that
/// two vectors are equal.
const EQ_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    T3_1,
    C3_1,
    T3_2,
    C3_2,
    T3_3,
    T3_4,
    T3_5,
    T3_6,
    C3_6,
    T3_7,
    C3_7,
    T3_8i,
    T3_8ii,
    T3_9i,
    T3_9ii,
    T3_10,
    T3_11,
    T3_12,
}

impl TheoremId {
    pub const ALL: [TheoremId; 18] = [
        TheoremId::T3_1,
        TheoremId::C3_1,
        TheoremId::T3_2,
        TheoremId::C3_2,
        TheoremId::T3_3,
        TheoremId::T3_4,
        TheoremId::T3_5,
        TheoremId::T3_6,
        TheoremId::C3_6,
        TheoremId::T3_7,
        TheoremId::C3_7,
        TheoremId::T3_8i,
        TheoremId::T3_8ii,
        TheoremId::T3_9i,
        TheoremId::T3_9ii,
        TheoremId::T3_10,
        TheoremId::T3_11,
        TheoremId::T3_12,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::T3_1 => "T3_1",
            TheoremId::C3_1 => "C3_1",
            TheoremId::T3_2 => "T3_2",
            TheoremId::C3_2 => "C3_2",
            TheoremId::T3_3 => "T3_3",
            TheoremId::T3_4 => "T3_4",
            TheoremId::T3_5 => "T3_5",
            TheoremId::T3_6 => "T3_6",
            TheoremId::C3_6 => "C3_6",
            TheoremId::T3_7 => "T3_7",
            TheoremId::C3_7 => "C3_7",
            TheoremId::T3_8i => "T3_8i",
            TheoremId::T3_8ii => "T3_8ii",
            TheoremId::T3_9i => "T3_9i",
            TheoremId::T3_9ii => "T3_9ii",
            TheoremId::T3_10 => "T3_10",
            TheoremId::T3_11 => "T3_11",
            TheoremId::T3_12 => "T3_12",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    /// Accepts `T3_8ii`, `t3_8(ii)` and similar spellings.
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric() || *c == '_')
            .collect::<String>()
            .to_ascii_uppercase();
        TheoremId::ALL
            .into_iter()
            .find(|id| id.as_str().to_ascii_uppercase() == key)
            .ok_or_else(|| Error::Unknown {
                kind: "theorem",
                name: s.to_string(),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Param {
    Location,
    Scale,
    Shape,
}

impl Param {
    fn label(&self) -> &'static str {
        match self {
            Param::Location => "location",
            Param::Scale => "scale",
            Param::Shape => "shape",
        }
    }

    /// Names of the vectors of the X and Y systems.
    fn symbols(&self) -> (&'static str, &'static str) {
        match self {
            Param::Location => ("lambda", "mu"),
            Param::Scale => ("theta", "delta"),
            Param::Shape => ("alpha", "beta"),
        }
    }

    fn of<'a>(&self, cfg: &'a ElsConfig) -> &'a [f64] {
        match self {
            Param::Location => &cfg.lambda,
            Param::Scale => &cfg.theta,
            Param::Shape => &cfg.alpha,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    AtLeast,
    AtMost,
}

/// One named predicate over the pair `(X, Y)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Hypothesis {
    SameBaseline,
    /// Both vectors equal one common constant vector.
    ConstantEqual(Param),
    /// The two vectors are equal (not necessarily constant).
    Equal(Param),
    UnitShape,
    /// One side's vector is constant.
    Constant(Param, Side),
    /// All listed vectors of both systems lie in one common cone.
    SameCone(Vec<Param>),
    /// `lhs ⪰ other` for the given relation.
    Preorder {
        param: Param,
        relation: Preorder,
        lhs: Side,
    },
    /// `1/theta ⪰^rm 1/delta` on the given parameter.
    ReciprocalPreorder(Param),
    /// `n c` compared with the sum of the other side, where `c` is the value
    /// of the constant side.
    MeanBound {
        param: Param,
        constant: Side,
        bound: Bound,
    },
    BaselineMonotone(DerivedKind, Direction),
    BaselineBlock(ConditionBlock),
    Independent,
    /// Both systems carry an Archimedean generator.
    Dependent,
    CommonGenerator,
    /// At least one of the two generators is log-concave.
    LogConcaveEither,
    Additivity(Additivity),
    PsiOverPsiPrimeIncreasing,
}

impl Hypothesis {
    pub fn name(&self) -> String {
        match self {
            Hypothesis::SameBaseline => "same_baseline".into(),
            Hypothesis::ConstantEqual(p) => format!("{}_constant_equal", p.label()),
            Hypothesis::Equal(p) => format!("{}_equal", p.label()),
            Hypothesis::UnitShape => "unit_shape".into(),
            Hypothesis::Constant(p, s) => format!("{}_{}_constant", side_label(*s), p.label()),
            Hypothesis::SameCone(_) => "cone".into(),
            Hypothesis::Preorder { .. } | Hypothesis::ReciprocalPreorder(_) => "preorder".into(),
            Hypothesis::MeanBound { .. } => "mean_bound".into(),
            Hypothesis::BaselineMonotone(k, d) => format!("{} {}", k.label(), d.label()),
            Hypothesis::BaselineBlock(b) => b.label().into(),
            Hypothesis::Independent => "independent".into(),
            Hypothesis::Dependent => "dependent".into(),
            Hypothesis::CommonGenerator => "common_generator".into(),
            Hypothesis::LogConcaveEither => "log_concave".into(),
            Hypothesis::Additivity(a) => a.label().replace('-', "_"),
            Hypothesis::PsiOverPsiPrimeIncreasing => "psi/psi' increasing".into(),
        }
    }

    /// Depends on the baseline only, so it can be certified once per suite.
    fn is_baseline_only(&self) -> bool {
        matches!(self, Hypothesis::BaselineMonotone(..) | Hypothesis::BaselineBlock(_))
    }
}

fn side_label(s: Side) -> &'static str {
    match s {
        Side::X => "x",
        Side::Y => "y",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Conclusion {
    /// `X_{n-1:n} <= Y_{n-1:n}` in the order.
    XleY(Order),
    /// `Y_{n-1:n} <= X_{n-1:n}` in the order.
    YleX(Order),
}

impl Conclusion {
    pub fn order(&self) -> Order {
        match *self {
            Conclusion::XleY(o) | Conclusion::YleX(o) => o,
        }
    }

    pub fn direction(&self) -> &'static str {
        match self {
            Conclusion::XleY(_) => "X≤Y",
            Conclusion::YleX(_) => "Y≤X",
        }
    }

    fn with_order(&self, o: Order) -> Conclusion {
        match self {
            Conclusion::XleY(_) => Conclusion::XleY(o),
            Conclusion::YleX(_) => Conclusion::YleX(o),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremSpec {
    pub id: TheoremId,
    pub hypotheses: Vec<Hypothesis>,
    pub conclusion: Conclusion,
}

impl TheoremSpec {
    pub fn get(id: TheoremId) -> TheoremSpec {
        use Hypothesis::*;
        use Param::*;
        let ws = |param, lhs| Preorder {
            param,
            relation: crate::majorization::Preorder::WeakSuper,
            lhs,
        };
        let maj = |param| Preorder {
            param,
            relation: crate::majorization::Preorder::Maj,
            lhs: Side::X,
        };
        let w2rb = BaselineMonotone(DerivedKind::W2RevHazard, Direction::Increasing);
        let wrb = BaselineMonotone(DerivedKind::WRevHazard, Direction::Increasing);
        let st = Order::St;
        let rh = Order::Rh;
        let (hypotheses, conclusion) = match id {
            TheoremId::T3_1 => (
                vec![
                    SameBaseline,
                    Independent,
                    ConstantEqual(Location),
                    ConstantEqual(Shape),
                    SameCone(vec![Scale]),
                    ws(Scale, Side::X),
                    w2rb,
                ],
                Conclusion::XleY(st),
            ),
            TheoremId::C3_1 => (
                vec![
                    SameBaseline,
                    Independent,
                    ConstantEqual(Location),
                    ConstantEqual(Shape),
                    Constant(Scale, Side::Y),
                    SameCone(vec![Scale]),
                    MeanBound {
                        param: Scale,
                        constant: Side::Y,
                        bound: Bound::AtLeast,
                    },
                    w2rb,
                ],
                Conclusion::XleY(st),
            ),
            TheoremId::T3_2 => (
                vec![
                    SameBaseline,
                    Independent,
                    Equal(Location),
                    ConstantEqual(Shape),
                    SameCone(vec![Location, Scale]),
                    ws(Scale, Side::Y),
                    wrb,
                ],
                Conclusion::YleX(st),
            ),
            TheoremId::C3_2 => (
                vec![
                    SameBaseline,
                    Independent,
                    Equal(Location),
                    ConstantEqual(Shape),
                    Constant(Scale, Side::X),
                    SameCone(vec![Location, Scale]),
                    MeanBound {
                        param: Scale,
                        constant: Side::X,
                        bound: Bound::AtLeast,
                    },
                    wrb,
                ],
                Conclusion::YleX(st),
            ),
            TheoremId::T3_3 => (
                vec![
                    SameBaseline,
                    Independent,
                    ConstantEqual(Location),
                    ConstantEqual(Scale),
                    SameCone(vec![Shape]),
                    ws(Shape, Side::X),
                ],
                Conclusion::XleY(st),
            ),
            TheoremId::T3_4 => (
                vec![
                    SameBaseline,
                    Independent,
                    ConstantEqual(Location),
                    UnitShape,
                    SameCone(vec![Scale]),
                    maj(Scale),
                    BaselineBlock(ConditionBlock::C1),
                ],
                Conclusion::XleY(rh),
            ),
            TheoremId::T3_5 => (
                vec![
                    SameBaseline,
                    Independent,
                    ConstantEqual(Scale),
                    UnitShape,
                    SameCone(vec![Location]),
                    maj(Location),
                    BaselineBlock(ConditionBlock::C2),
                ],
                Conclusion::YleX(rh),
            ),
            TheoremId::T3_6 => (
                vec![
                    SameBaseline,
                    Independent,
                    ConstantEqual(Location),
                    UnitShape,
                    SameCone(vec![Scale]),
                    ws(Scale, Side::X),
                    BaselineBlock(ConditionBlock::C3),
                ],
                Conclusion::XleY(rh),
            ),
            TheoremId::C3_6 => (
                vec![
                    SameBaseline,
                    Independent,
                    ConstantEqual(Location),
                    UnitShape,
                    Constant(Scale, Side::Y),
                    SameCone(vec![Scale]),
                    MeanBound {
                        param: Scale,
                        constant: Side::Y,
                        bound: Bound::AtLeast,
                    },
                    BaselineBlock(ConditionBlock::C3),
                ],
                Conclusion::XleY(rh),
            ),
            TheoremId::T3_7 => (
                vec![
                    SameBaseline,
                    Independent,
                    Equal(Location),
                    UnitShape,
                    SameCone(vec![Location, Scale]),
                    ReciprocalPreorder(Scale),
                    BaselineBlock(ConditionBlock::C4),
                ],
                Conclusion::YleX(rh),
            ),
            TheoremId::C3_7 => (
                vec![
                    SameBaseline,
                    Independent,
                    Equal(Location),
                    UnitShape,
                    Constant(Scale, Side::Y),
                    SameCone(vec![Location, Scale]),
                    MeanBound {
                        param: Scale,
                        constant: Side::Y,
                        bound: Bound::AtMost,
                    },
                    BaselineBlock(ConditionBlock::C4),
                ],
                Conclusion::YleX(rh),
            ),
            TheoremId::T3_8i | TheoremId::T3_8ii | TheoremId::T3_9i | TheoremId::T3_9ii => {
                let first = matches!(id, TheoremId::T3_8i | TheoremId::T3_9i);
                let vector_location = matches!(id, TheoremId::T3_9i | TheoremId::T3_9ii);
                let mut h = vec![SameBaseline, Dependent, ConstantEqual(Shape)];
                if vector_location {
                    h.extend([Equal(Location), SameCone(vec![Location, Scale])]);
                } else {
                    h.extend([ConstantEqual(Location), SameCone(vec![Scale])]);
                }
                h.push(ws(Scale, if first { Side::X } else { Side::Y }));
                h.push(LogConcaveEither);
                h.push(if vector_location { wrb } else { w2rb });
                h.push(Additivity(if first {
                    crate::copula::Additivity::Sub
                } else {
                    crate::copula::Additivity::Super
                }));
                (
                    h,
                    if first {
                        Conclusion::XleY(st)
                    } else {
                        Conclusion::YleX(st)
                    },
                )
            }
            TheoremId::T3_10 => (
                vec![
                    SameBaseline,
                    CommonGenerator,
                    ConstantEqual(Location),
                    ConstantEqual(Shape),
                    SameCone(vec![Scale]),
                    ws(Scale, Side::X),
                    w2rb,
                    PsiOverPsiPrimeIncreasing,
                ],
                Conclusion::XleY(st),
            ),
            TheoremId::T3_11 => (
                vec![
                    SameBaseline,
                    CommonGenerator,
                    Equal(Location),
                    ConstantEqual(Shape),
                    SameCone(vec![Location, Scale]),
                    ws(Scale, Side::X),
                    wrb,
                    PsiOverPsiPrimeIncreasing,
                ],
                Conclusion::XleY(st),
            ),
            TheoremId::T3_12 => (
                vec![
                    SameBaseline,
                    CommonGenerator,
                    ConstantEqual(Location),
                    ConstantEqual(Scale),
                    SameCone(vec![Shape]),
                    ws(Shape, Side::Y),
                    PsiOverPsiPrimeIncreasing,
                ],
                Conclusion::YleX(st),
            ),
        };
        TheoremSpec {
            id,
            hypotheses,
            conclusion,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremVerdict {
    pub theorem: TheoremId,
    pub conclusion: Conclusion,
    pub hypothesis_results: Vec<HypothesisResult>,
    pub conclusion_report: OrderCheckReport,
    pub consistent: bool,
}

impl TheoremVerdict {
    pub fn all_hypotheses_pass(&self) -> bool {
        self.hypothesis_results.iter().all(|h| h.passed)
    }

    pub fn hypothesis(&self, name: &str) -> Option<&HypothesisResult> {
        self.hypothesis_results.iter().find(|h| h.name == name)
    }

    /// One-line record: id, hypothesis results, conclusion verdict.
    pub fn record(&self) -> String {
        let hs: Vec<String> = self
            .hypothesis_results
            .iter()
            .map(|h| format!("{}={}", h.name, if h.passed { "pass" } else { "FAIL" }))
            .collect();
        let r = &self.conclusion_report;
        let mut line = format!(
            "{} hypotheses: {}; conclusion {}: {} (direction {}) max_violation={:.3e}",
            self.theorem,
            hs.join("; "),
            r.order,
            r.verdict,
            self.conclusion.direction(),
            r.max_violation
        );
        if let Some(c) = r.crossing_x {
            line.push_str(&format!("; crossing≈{c:.3}"));
        }
        line.push_str(if self.consistent {
            "; consistent"
        } else {
            "; INCONSISTENT"
        });
        line
    }
}

impl fmt::Display for TheoremVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.record())?;
        for h in &self.hypothesis_results {
            writeln!(
                f,
                "  {:<24} {:<4} {}",
                h.name,
                if h.passed { "pass" } else { "FAIL" },
                h.detail
            )?;
        }
        write!(f, "  conclusion {}", self.conclusion_report)
    }
}

fn is_constant(v: &[f64]) -> bool {
    v.iter().all(|&a| (a - v[0]).abs() <= EQ_TOL * a.abs().max(v[0].abs()))
}

fn vectors_equal(a: &[f64], b: &[f64]) -> bool {
    a.iter()
        .zip(b)
        .all(|(&p, &q)| (p - q).abs() <= EQ_TOL * p.abs().max(q.abs()))
}

fn fmt_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x}")).collect();
    format!("({})", parts.join(","))
}

fn independent(cfg: &ElsConfig) -> bool {
    cfg.generator.as_ref().is_none_or(|g| g.is_independence())
}

fn pass(name: String, passed: bool, detail: impl Into<String>) -> HypothesisResult {
    HypothesisResult {
        name,
        passed,
        detail: detail.into(),
    }
}

fn generators(x: &ElsConfig, y: &ElsConfig) -> Option<(GeneratorSpec, GeneratorSpec)> {
    Some((x.generator?, y.generator?))
}

/// Range of standardized points `(x - lambda_i)/theta_i` reached by the grid
/// in either system.
fn standardized_window(x: &ElsConfig, y: &ElsConfig, grid: &GridSpec) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for cfg in [x, y] {
        for i in 0..cfg.n() {
            lo = lo.min(cfg.standardized(i, grid.lo));
            hi = hi.max(cfg.standardized(i, grid.hi));
        }
    }
    (lo, hi)
}

/// Where a baseline condition is certified.
#[derive(Debug, Clone, Copy)]
enum Window {
    /// The family's own condition window.
    Family,
    /// Standardized window of a comparison; `clamp` is false when the raw
    /// formula is used past the support.
    Reached { lo: f64, hi: f64, clamp: bool },
}

fn baseline_check(h: &Hypothesis, b: &BaselineSpec, window: Window) -> HypothesisResult {
    let name = h.name();
    let s = b.support();
    let (grid, past_cap) = match window {
        Window::Family => (b.condition_grid(CONDITION_POINTS), false),
        Window::Reached { lo, hi, clamp } => {
            let (l, u) = (lo.max(s.lower), hi.min(s.upper));
            if l >= u {
                return pass(
                    name,
                    false,
                    format!("standardized window [{lo}, {hi}] misses the support of {b}"),
                );
            }
            (GridSpec::inset(l, u, CONDITION_POINTS), clamp && hi > s.upper)
        }
    };
    let grid = match grid {
        Ok(g) => g,
        Err(e) => return pass(name, false, e.to_string()),
    };
    let report = match h {
        Hypothesis::BaselineMonotone(k, d) => check_monotone(&DerivedFunction::new(*k, b.clone()), *d, &grid),
        Hypothesis::BaselineBlock(block) => check_condition_block(b, *block, &grid),
        _ => unreachable!("not a baseline hypothesis"),
    };
    let r = match report {
        Ok(r) => r,
        Err(e) => return pass(name, false, e.to_string()),
    };
    let failed: Vec<&str> = r
        .subconditions
        .iter()
        .filter(|s| !s.holds)
        .map(|s| s.name.as_str())
        .collect();
    let mut detail = format!("{b} on {grid}: {r}");
    if !failed.is_empty() {
        detail.push_str(&format!(" failing: {}", failed.join(", ")));
    }
    let mut holds = r.holds;
    if past_cap {
        // past the cap rb vanishes, so the function jumps to 0
        let jump_ok = match h {
            Hypothesis::BaselineMonotone(k, d) => match b.derived(*k, grid.hi, grid.spacing()) {
                Ok(v) => match d {
                    Direction::Increasing => v <= 0.0,
                    Direction::Decreasing => v >= 0.0,
                },
                Err(_) => false,
            },
            _ => false,
        };
        if !jump_ok {
            holds = false;
            detail.push_str(&format!("; grid reaches w beyond the support cap {}", s.upper));
        }
    }
    pass(name, holds, detail)
}

fn evaluate(h: &Hypothesis, x: &ElsConfig, y: &ElsConfig, grid: &GridSpec) -> HypothesisResult {
    let name = h.name();
    match h {
        Hypothesis::SameBaseline => pass(
            name,
            x.baseline == y.baseline,
            format!("{} vs {}", x.baseline, y.baseline),
        ),
        Hypothesis::ConstantEqual(p) => {
            let (a, b) = (p.of(x), p.of(y));
            let ok = is_constant(a) && vectors_equal(a, b);
            pass(
                name,
                ok,
                format!("{}={} {}={}", p.symbols().0, fmt_vec(a), p.symbols().1, fmt_vec(b)),
            )
        }
        Hypothesis::Equal(p) => {
            let (a, b) = (p.of(x), p.of(y));
            pass(
                name,
                vectors_equal(a, b),
                format!("{}={} {}={}", p.symbols().0, fmt_vec(a), p.symbols().1, fmt_vec(b)),
            )
        }
        Hypothesis::UnitShape => pass(
            name,
            x.all_unit_shape() && y.all_unit_shape(),
            format!("alpha={} beta={}", fmt_vec(&x.alpha), fmt_vec(&y.alpha)),
        ),
        Hypothesis::Constant(p, s) => {
            let (cfg, sym) = match s {
                Side::X => (x, p.symbols().0),
                Side::Y => (y, p.symbols().1),
            };
            let v = p.of(cfg);
            pass(name, is_constant(v), format!("{sym}={}", fmt_vec(v)))
        }
        Hypothesis::SameCone(params) => {
            let vs: Vec<&[f64]> = params.iter().flat_map(|p| [p.of(x), p.of(y)]).collect();
            let names: Vec<String> = params
                .iter()
                .flat_map(|p| [p.symbols().0, p.symbols().1])
                .zip(&vs)
                .map(|(n, v)| format!("{n}={}", fmt_vec(v)))
                .collect();
            match common_cone(&vs) {
                Some(c) => pass(name, true, format!("{} in {c}", names.join(" "))),
                None => pass(name, false, format!("{} share no cone", names.join(" "))),
            }
        }
        Hypothesis::Preorder { param, relation, lhs } => {
            let (l, r, ln, rn) = match lhs {
                Side::X => (param.of(x), param.of(y), param.symbols().0, param.symbols().1),
                Side::Y => (param.of(y), param.of(x), param.symbols().1, param.symbols().0),
            };
            preorder_result(name, l, r, *relation, format!("{ln} {} {rn}", relation.symbol()))
        }
        Hypothesis::ReciprocalPreorder(param) => {
            let inv = |v: &[f64]| v.iter().map(|a| 1.0 / a).collect::<Vec<_>>();
            let (ln, rn) = param.symbols();
            preorder_result(
                name,
                &inv(param.of(x)),
                &inv(param.of(y)),
                Preorder::Recip,
                format!("1/{ln} ⪰^rm 1/{rn}"),
            )
        }
        Hypothesis::MeanBound { param, constant, bound } => {
            let (c, other) = match constant {
                Side::X => (param.of(x), param.of(y)),
                Side::Y => (param.of(y), param.of(x)),
            };
            // n * c equals the sum of the constant vector
            let lhs: f64 = c.iter().sum();
            let rhs: f64 = other.iter().sum();
            let slack = EQ_TOL * lhs.abs().max(rhs.abs());
            let (ok, op) = match bound {
                Bound::AtLeast => (lhs >= rhs - slack, ">="),
                Bound::AtMost => (lhs <= rhs + slack, "<="),
            };
            pass(name, ok, format!("n*c={lhs} {op} sum={rhs}"))
        }
        Hypothesis::BaselineMonotone(..) | Hypothesis::BaselineBlock(_) => {
            let (lo, hi) = standardized_window(x, y, grid);
            let clamp = x.support_mode == SupportMode::Clamp || y.support_mode == SupportMode::Clamp;
            baseline_check(h, &x.baseline, Window::Reached { lo, hi, clamp })
        }
        Hypothesis::Independent => pass(name, independent(x) && independent(y), generator_detail(x, y)),
        Hypothesis::Dependent => pass(name, generators(x, y).is_some(), generator_detail(x, y)),
        Hypothesis::CommonGenerator => {
            let ok = match (x.generator, y.generator) {
                (Some(a), Some(b)) => a == b,
                (None, None) => true,
                (a, b) => a.unwrap_or(GeneratorSpec::Independence) == b.unwrap_or(GeneratorSpec::Independence),
            };
            pass(name, ok, generator_detail(x, y))
        }
        Hypothesis::LogConcaveEither => match generators(x, y) {
            None => pass(name, false, "needs two generators"),
            Some((g1, g2)) => {
                let grid = generator_grid();
                let mut parts = Vec::new();
                let mut ok = false;
                for g in [g1, g2] {
                    match check_generator_logconcave(&g, &grid) {
                        Ok(r) => {
                            ok |= r.holds;
                            parts.push(r.to_string());
                        }
                        Err(e) => parts.push(format!("{g}: {e}")),
                    }
                }
                pass(name, ok, parts.join("; "))
            }
        },
        Hypothesis::Additivity(mode) => match generators(x, y) {
            None => pass(name, false, "needs two generators"),
            Some((g1, g2)) => {
                let r = check_phi2_psi1_additivity(&g1, &g2, *mode, ADDITIVITY_TRIALS, 0);
                pass(name, r.holds, r.to_string())
            }
        },
        Hypothesis::PsiOverPsiPrimeIncreasing => {
            let g = x.generator.unwrap_or(GeneratorSpec::Independence);
            match check_psi_over_psiprime_increasing(&g, &generator_grid()) {
                Ok(r) => pass(name, r.holds, r.to_string()),
                Err(e) => pass(name, false, format!("{g}: {e}")),
            }
        }
    }
}

fn generator_detail(x: &ElsConfig, y: &ElsConfig) -> String {
    let show = |g: &Option<GeneratorSpec>| g.map_or("none".to_string(), |g| g.to_string());
    format!("psi_X={} psi_Y={}", show(&x.generator), show(&y.generator))
}

fn preorder_result(name: String, l: &[f64], r: &[f64], rel: Preorder, label: String) -> HypothesisResult {
    let res = ParamVector::new(l.to_vec())
        .and_then(|a| Ok((a, ParamVector::new(r.to_vec())?)))
        .and_then(|(a, b)| check_preorder(&a, &b, rel));
    match res {
        Ok(v) if v.holds => pass(name, true, label),
        Ok(v) => pass(
            name,
            false,
            format!("{label} violated at k={}", v.witness_k.unwrap_or(0)),
        ),
        Err(e) => pass(name, false, format!("{label}: {e}")),
    }
}

fn require_same_n(x: &ElsConfig, y: &ElsConfig) -> Result<()> {
    if x.n() != y.n() {
        return Err(Error::LengthMismatch {
            left: x.n(),
            right: y.n(),
        });
    }
    Ok(())
}

/// Evaluates the conclusion `conclusion` for `(x, y)`.
pub fn check_conclusion(c: Conclusion, x: &ElsConfig, y: &ElsConfig, grid: &GridSpec) -> Result<OrderCheckReport> {
    match c {
        Conclusion::XleY(o) => check_order(x, y, o, grid),
        Conclusion::YleX(o) => check_order(y, x, o, grid),
    }
}

fn conclude(
    spec: &TheoremSpec,
    results: Vec<HypothesisResult>,
    x: &ElsConfig,
    y: &ElsConfig,
    grid: &GridSpec,
) -> Result<TheoremVerdict> {
    let report = check_conclusion(spec.conclusion, x, y, grid)?;
    let all = results.iter().all(|h| h.passed);
    Ok(TheoremVerdict {
        theorem: spec.id,
        conclusion: spec.conclusion,
        consistent: !(all && report.verdict == Verdict::Fails),
        hypothesis_results: results,
        conclusion_report: report,
    })
}

/// Evaluates every hypothesis of the theorem on `(x, y)` and runs the
/// conclusion check on `grid`. Failed structural constraints are reported as
/// failed hypotheses; only differing component counts are an error.
pub fn run_theorem(id: TheoremId, x: &ElsConfig, y: &ElsConfig, grid: &GridSpec) -> Result<TheoremVerdict> {
    require_same_n(x, y)?;
    let spec = TheoremSpec::get(id);
    let results = spec.hypotheses.iter().map(|h| evaluate(h, x, y, grid)).collect();
    conclude(&spec, results, x, y, grid)
}

/// Grid from just above the largest location to the largest 0.999 quantile
/// of any component of either system, stopping short of the first component
/// that reaches a bounded support cap.
pub fn auto_grid(x: &ElsConfig, y: &ElsConfig, points: usize) -> Result<GridSpec> {
    let m = x.max_location().max(y.max_location());
    let up = x.baseline.support().upper.min(y.baseline.support().upper);
    let mut hi = f64::NEG_INFINITY;
    let mut cap = f64::INFINITY;
    for cfg in [x, y] {
        for i in 0..cfg.n() {
            hi = hi.max(cfg.quantile_unchecked(i, 0.999));
            cap = cap.min(cfg.lambda[i] + cfg.theta[i] * up);
        }
    }
    if cap.is_finite() {
        hi = hi.min(m + (1.0 - 1e-3) * (cap - m));
    }
    let lo = m + 1e-3 * (hi - m);
    GridSpec::new(lo, hi, points)
}

/// Grid over the whole joint support: up to the last component cap for
/// bounded baselines, else up to the largest `1 - 1e-9` quantile. The
/// implication from rh to st needs the comparison to reach the top of the
/// support.
pub fn support_grid(x: &ElsConfig, y: &ElsConfig, points: usize) -> Result<GridSpec> {
    let m = x.max_location().max(y.max_location());
    let mut hi = x.upper_x().max(y.upper_x());
    if !hi.is_finite() {
        hi = f64::NEG_INFINITY;
        for cfg in [x, y] {
            for i in 0..cfg.n() {
                hi = hi.max(cfg.quantile_unchecked(i, 1.0 - 1e-9));
            }
        }
    }
    let lo = m + 1e-3 * (auto_grid(x, y, points)?.hi - m);
    GridSpec::new(lo, hi, points)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorPolicy {
    Independent,
    /// Two Gumbel-Barnett generators with `a_X <= a_Y` (`ascending`) or
    /// `a_X >= a_Y`.
    GumbelBarnettPair {
        ascending: bool,
    },
    CommonGumbelBarnett,
}

/// How random hypothesis-satisfying pairs are drawn.
#[derive(Debug, Clone, PartialEq)]
pub struct SuitePolicy {
    pub n: usize,
    pub baseline: BaselineSpec,
    pub generators: GeneratorPolicy,
    pub location_range: (f64, f64),
    pub scale_range: (f64, f64),
    pub shape_range: (f64, f64),
    /// Range of the Gumbel-Barnett parameter.
    pub generator_range: (f64, f64),
}

impl SuitePolicy {
    /// The default policy for a theorem: PowerCap baselines for the st
    /// results, Loglog for the rh results, Gumbel-Barnett generators for the
    /// dependent results.
    pub fn default_for(id: TheoremId) -> SuitePolicy {
        use TheoremId::*;
        let power = BaselineSpec::power_cap(0.5, 100.0).expect("valid power cap");
        let (baseline, generators) = match id {
            T3_1 | C3_1 | T3_2 | C3_2 | T3_3 => (power, GeneratorPolicy::Independent),
            T3_4 | T3_5 | T3_6 | C3_6 | T3_7 | C3_7 => (BaselineSpec::loglog(), GeneratorPolicy::Independent),
            T3_8i | T3_9i => (power, GeneratorPolicy::GumbelBarnettPair { ascending: true }),
            T3_8ii | T3_9ii => (power, GeneratorPolicy::GumbelBarnettPair { ascending: false }),
            T3_10 | T3_11 | T3_12 => (power, GeneratorPolicy::CommonGumbelBarnett),
        };
        SuitePolicy {
            n: 3,
            baseline,
            generators,
            location_range: (0.5, 5.0),
            scale_range: (0.5, 10.0),
            shape_range: (0.5, 4.0),
            generator_range: (0.05, GB_THREE_MONOTONE_MAX),
        }
    }

    fn range(&self, p: Param) -> (f64, f64) {
        match p {
            Param::Location => self.location_range,
            Param::Scale => self.scale_range,
            Param::Shape => self.shape_range,
        }
    }
}

fn draw_vec(rng: &mut ChaCha8Rng, n: usize, (lo, hi): (f64, f64), descending: bool) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|_| rng.random_range(lo..hi)).collect();
    v.sort_by(f64::total_cmp);
    if descending {
        v.reverse();
    }
    v
}

/// Builds `other` with `lhs ⪰ other` for the relation, keeping the cone.
fn dominated(rng: &mut ChaCha8Rng, lhs: &[f64], rel: Preorder, span: f64) -> Vec<f64> {
    let n = lhs.len();
    let mean = lhs.iter().sum::<f64>() / n as f64;
    match rel {
        Preorder::Maj => {
            let t = rng.random_range(0.0..1.0);
            lhs.iter().map(|v| v + t * (mean - v)).collect()
        }
        Preorder::WeakSuper => {
            // increments added along ascending order raise every partial sum
            let mut inc: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..0.3 * span)).collect();
            inc.sort_by(f64::total_cmp);
            let mut idx: Vec<usize> = (0..n).collect();
            idx.sort_by(|&a, &b| lhs[a].total_cmp(&lhs[b]));
            let mut out = lhs.to_vec();
            for (rank, &i) in idx.iter().enumerate() {
                out[i] += inc[rank];
            }
            out
        }
        Preorder::WeakSub => {
            let s = rng.random_range(0.5..1.0);
            lhs.iter().map(|v| v * s).collect()
        }
        Preorder::Recip => {
            let t = rng.random_range(0.0..1.0);
            let s = rng.random_range(0.5..1.0);
            lhs.iter().map(|v| s * (v + t * (mean - v))).collect()
        }
    }
}

fn hypothesis_for(spec: &TheoremSpec, p: Param) -> Option<&Hypothesis> {
    let rank = |h: &Hypothesis| match h {
        Hypothesis::UnitShape if p == Param::Shape => Some(0),
        Hypothesis::ConstantEqual(q) if *q == p => Some(1),
        Hypothesis::MeanBound { param, .. } if *param == p => Some(2),
        Hypothesis::Preorder { param, .. } | Hypothesis::ReciprocalPreorder(param) if *param == p => Some(3),
        Hypothesis::Equal(q) if *q == p => Some(4),
        _ => None,
    };
    spec.hypotheses
        .iter()
        .filter_map(|h| rank(h).map(|r| (r, h)))
        .min_by_key(|(r, _)| *r)
        .map(|(_, h)| h)
}

/// One candidate pair, built to satisfy the structural hypotheses.
fn draw_pair(spec: &TheoremSpec, policy: &SuitePolicy, rng: &mut ChaCha8Rng) -> Result<(ElsConfig, ElsConfig)> {
    let n = policy.n;
    let descending = rng.random_bool(0.5);
    let mut xs: Vec<Vec<f64>> = Vec::new();
    let mut ys: Vec<Vec<f64>> = Vec::new();
    for p in [Param::Location, Param::Scale, Param::Shape] {
        let range = policy.range(p);
        let span = range.1 - range.0;
        let (a, b) = match hypothesis_for(spec, p) {
            Some(Hypothesis::UnitShape) => (vec![1.0; n], vec![1.0; n]),
            Some(Hypothesis::ConstantEqual(_)) => {
                let c = rng.random_range(range.0..range.1);
                (vec![c; n], vec![c; n])
            }
            Some(Hypothesis::MeanBound { constant, bound, .. }) => {
                let v = draw_vec(rng, n, range, descending);
                let mean = v.iter().sum::<f64>() / n as f64;
                let c = match bound {
                    Bound::AtLeast => mean * rng.random_range(1.0..1.5),
                    Bound::AtMost => mean * rng.random_range(0.5..1.0),
                };
                match constant {
                    Side::X => (vec![c; n], v),
                    Side::Y => (v, vec![c; n]),
                }
            }
            Some(Hypothesis::Preorder { relation, lhs, .. }) => {
                let l = draw_vec(rng, n, range, descending);
                let o = dominated(rng, &l, *relation, span);
                match lhs {
                    Side::X => (l, o),
                    Side::Y => (o, l),
                }
            }
            Some(Hypothesis::ReciprocalPreorder(_)) => {
                let l = draw_vec(rng, n, range, descending);
                let o = dominated(rng, &l, Preorder::Recip, span);
                (l, o)
            }
            Some(Hypothesis::Equal(_)) => {
                let v = draw_vec(rng, n, range, descending);
                (v.clone(), v)
            }
            _ => (draw_vec(rng, n, range, descending), draw_vec(rng, n, range, descending)),
        };
        xs.push(a);
        ys.push(b);
    }
    let b = policy.baseline.clone();
    let mut x = ElsConfig::new(xs[0].clone(), xs[1].clone(), xs[2].clone(), b.clone())?;
    let mut y = ElsConfig::new(ys[0].clone(), ys[1].clone(), ys[2].clone(), b)?;
    match policy.generators {
        GeneratorPolicy::Independent => {}
        GeneratorPolicy::GumbelBarnettPair { ascending } => {
            let (lo, hi) = policy.generator_range;
            let mut a = [rng.random_range(lo..hi), rng.random_range(lo..hi)];
            a.sort_by(f64::total_cmp);
            if !ascending {
                a.reverse();
            }
            x = x.with_generator(GeneratorSpec::gumbel_barnett(a[0])?);
            y = y.with_generator(GeneratorSpec::gumbel_barnett(a[1])?);
        }
        GeneratorPolicy::CommonGumbelBarnett => {
            let (lo, hi) = policy.generator_range;
            let g = GeneratorSpec::gumbel_barnett(rng.random_range(lo..hi))?;
            x = x.with_generator(g);
            y = y.with_generator(g);
        }
    }
    Ok((x, y))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub trial: usize,
    pub x: ElsConfig,
    pub y: ElsConfig,
    pub verdict: TheoremVerdict,
    /// Verdicts of `st` and `rh` in the conclusion's direction on
    /// `support_grid`.
    pub st: Verdict,
    pub rh: Verdict,
    pub rejections: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub theorem: TheoremId,
    pub trials: usize,
    pub outcomes: Vec<TrialOutcome>,
}

impl SuiteReport {
    pub fn consistent(&self) -> usize {
        self.outcomes.iter().filter(|o| o.verdict.consistent).count()
    }

    pub fn inconsistencies(&self) -> impl Iterator<Item = &TrialOutcome> {
        self.outcomes.iter().filter(|o| !o.verdict.consistent)
    }

    pub fn rejections(&self) -> usize {
        self.outcomes.iter().map(|o| o.rejections).sum()
    }

    /// Trials where `rh` holds but `st` does not.
    pub fn rh_without_st(&self) -> usize {
        self.outcomes
            .iter()
            .filter(|o| o.rh == Verdict::Holds && o.st != Verdict::Holds)
            .count()
    }

    pub fn summary(&self) -> String {
        let rh = self.outcomes.iter().filter(|o| o.rh == Verdict::Holds).count();
        format!(
            "{} suite: {}/{} consistent; rejections={}; rh holds in {} trials, rh without st: {}",
            self.theorem,
            self.consistent(),
            self.trials,
            self.rejections(),
            rh,
            self.rh_without_st()
        )
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.summary())?;
        for o in self.inconsistencies() {
            write!(
                f,
                "\n  trial {}: X: {} | Y: {}\n    {}",
                o.trial,
                o.x,
                o.y,
                o.verdict.record()
            )?;
        }
        Ok(())
    }
}

/// Draws `trials` random pairs that satisfy every hypothesis of the theorem
/// and checks the conclusion on each. Trial `i` uses the ChaCha stream `i` of
/// `seed`, so results do not depend on scheduling. `grid = None` picks
/// `auto_grid` per trial.
pub fn property_suite(
    id: TheoremId,
    policy: &SuitePolicy,
    trials: usize,
    seed: u64,
    grid: Option<GridSpec>,
) -> Result<SuiteReport> {
    let spec = TheoremSpec::get(id);
    // a baseline that fails its conditions on its own window would be
    // rejected for nearly every draw
    let infeasible = spec
        .hypotheses
        .iter()
        .filter(|h| h.is_baseline_only())
        .any(|h| !baseline_check(h, &policy.baseline, Window::Family).passed);
    if infeasible {
        return Err(Error::PolicyExhausted {
            theorem: id.to_string(),
            attempts: MAX_REJECTIONS,
        });
    }
    let outcomes: Result<Vec<TrialOutcome>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial as u64);
            let mut rejections = 0;
            loop {
                if rejections >= MAX_REJECTIONS {
                    return Err(Error::PolicyExhausted {
                        theorem: id.to_string(),
                        attempts: rejections,
                    });
                }
                let Ok((x, y)) = draw_pair(&spec, policy, &mut rng) else {
                    rejections += 1;
                    continue;
                };
                let g = match grid {
                    Some(g) => g,
                    None => match auto_grid(&x, &y, SUITE_GRID_POINTS) {
                        Ok(g) => g,
                        Err(_) => {
                            rejections += 1;
                            continue;
                        }
                    },
                };
                let results: Vec<HypothesisResult> = spec.hypotheses.iter().map(|h| evaluate(h, &x, &y, &g)).collect();
                if !results.iter().all(|r| r.passed) {
                    rejections += 1;
                    continue;
                }
                let verdict = conclude(&spec, results, &x, &y, &g)?;
                let full = support_grid(&x, &y, g.points)?;
                let st = check_conclusion(spec.conclusion.with_order(Order::St), &x, &y, &full)?.verdict;
                let rh = check_conclusion(spec.conclusion.with_order(Order::Rh), &x, &y, &full)?.verdict;
                return Ok(TrialOutcome {
                    trial,
                    x,
                    y,
                    verdict,
                    st,
                    rh,
                    rejections,
                });
            }
        })
        .collect();
    Ok(SuiteReport {
        theorem: id,
        trials,
        outcomes: outcomes?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FixtureName {
    Ex3_1,
    Ex3_2,
    Ex3_3i,
    Ex3_3ii,
    CEx3_1,
    CEx3_2,
    CEx3_3,
    #[serde(rename = "Remark_r1")]
    RemarkR1,
}

impl FixtureName {
    pub const ALL: [FixtureName; 8] = [
        FixtureName::Ex3_1,
        FixtureName::Ex3_2,
        FixtureName::Ex3_3i,
        FixtureName::Ex3_3ii,
        FixtureName::CEx3_1,
        FixtureName::CEx3_2,
        FixtureName::CEx3_3,
        FixtureName::RemarkR1,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FixtureName::Ex3_1 => "Ex3_1",
            FixtureName::Ex3_2 => "Ex3_2",
            FixtureName::Ex3_3i => "Ex3_3i",
            FixtureName::Ex3_3ii => "Ex3_3ii",
            FixtureName::CEx3_1 => "CEx3_1",
            FixtureName::CEx3_2 => "CEx3_2",
            FixtureName::CEx3_3 => "CEx3_3",
            FixtureName::RemarkR1 => "Remark_r1",
        }
    }
}

impl fmt::Display for FixtureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FixtureName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FixtureName::ALL
            .into_iter()
            .find(|f| f.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unknown {
                kind: "fixture",
                name: s.to_string(),
            })
    }
}

/// A compiled-in pair of configurations with its theorem and grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Fixture {
    pub name: FixtureName,
    pub theorem: TheoremId,
    pub x: ElsConfig,
    pub y: ElsConfig,
    pub grid: GridSpec,
    pub description: &'static str,
}

impl Fixture {
    pub fn get(name: FixtureName) -> Fixture {
        build_fixture(name).expect("compiled-in fixture is valid")
    }

    /// Order of the plot series: the conclusion's order.
    pub fn order(&self) -> Order {
        TheoremSpec::get(self.theorem).conclusion.order()
    }

    pub fn run(&self) -> Result<TheoremVerdict> {
        run_theorem(self.theorem, &self.x, &self.y, &self.grid)
    }

    pub fn series(&self) -> Result<Vec<SeriesRow>> {
        order_series(&self.x, &self.y, self.order(), &self.grid)
    }
}

fn build_fixture(name: FixtureName) -> Result<Fixture> {
    let power = BaselineSpec::power_cap;
    let swe = BaselineSpec::shifted_weibull_exp(0.5)?;
    let s = ElsConfig::scalar_location;
    let f = |theorem, x, y, lo, hi, points, description| -> Result<Fixture> {
        Ok(Fixture {
            name,
            theorem,
            x,
            y,
            grid: GridSpec::new(lo, hi, points)?,
            description,
        })
    };
    match name {
        FixtureName::Ex3_1 => {
            let b = power(0.2, 100.0)?;
            f(
                TheoremId::T3_1,
                s(4.0, vec![5.0, 9.0, 10.0], 4.0, b.clone())?,
                s(4.0, vec![7.0, 10.0, 12.0], 4.0, b)?,
                4.001,
                100.0,
                4096,
                "st order from weakly supermajorized scales, PowerCap(0.2, 100)",
            )
        }
        FixtureName::Ex3_2 => f(
            TheoremId::T3_4,
            s(4.0, vec![2.0, 5.0, 9.0], 1.0, BaselineSpec::loglog())?,
            s(4.0, vec![3.0, 6.0, 7.0], 1.0, BaselineSpec::loglog())?,
            4.001,
            100.0,
            4096,
            "rh order from majorized scales, Loglog",
        ),
        FixtureName::Ex3_3i => {
            let b = power(0.05, 100.0)?;
            let l = vec![4.0, 6.0, 8.0];
            f(
                TheoremId::T3_9i,
                ElsConfig::new(l.clone(), vec![5.0, 9.0, 10.0], vec![4.0; 3], b.clone())?
                    .with_generator(GeneratorSpec::gumbel_barnett(0.1)?),
                ElsConfig::new(l, vec![7.0, 10.0, 12.0], vec![4.0; 3], b)?
                    .with_generator(GeneratorSpec::gumbel_barnett(0.5)?),
                8.001,
                100.0,
                4096,
                "dependent st order, Gumbel-Barnett 0.1 vs 0.5",
            )
        }
        FixtureName::Ex3_3ii => {
            let b = power(0.02, 100.0)?;
            let l = vec![2.0, 4.0, 6.0];
            f(
                TheoremId::T3_9ii,
                ElsConfig::new(l.clone(), vec![7.0, 9.0, 11.0], vec![4.0; 3], b.clone())?
                    .with_generator(GeneratorSpec::gumbel_barnett(0.9)?),
                ElsConfig::new(l, vec![2.0, 3.0, 5.0], vec![4.0; 3], b)?
                    .with_generator(GeneratorSpec::gumbel_barnett(0.7)?),
                6.001,
                100.0,
                4096,
                "dependent st order, Gumbel-Barnett 0.9 vs 0.7",
            )
        }
        FixtureName::CEx3_1 => {
            let b = power(0.001, 10.0)?;
            let l = vec![3.0, 4.0, 5.0];
            f(
                TheoremId::T3_2,
                ElsConfig::new(l.clone(), vec![3.0, 0.1, 0.02], vec![3.0; 3], b.clone())?
                    .with_support_mode(SupportMode::Extrapolate),
                ElsConfig::new(l, vec![2.0, 0.03, 0.01], vec![3.0; 3], b)?.with_support_mode(SupportMode::Extrapolate),
                5.001,
                10.0,
                4096,
                "locations and scales in opposite cones; curves cross",
            )
        }
        FixtureName::CEx3_2 => f(
            TheoremId::T3_8i,
            s(5.0, vec![2.5, 6.5, 3.1], 0.1, swe.clone())?.with_generator(GeneratorSpec::gumbel_hougaard(2.5)?),
            s(5.0, vec![4.5, 6.5, 7.5], 0.1, swe)?.with_generator(GeneratorSpec::gumbel_hougaard(1.0001)?),
            5.001,
            100.0,
            4096,
            "Gumbel-Hougaard generators without log-concavity; st order fails",
        ),
        FixtureName::CEx3_3 => f(
            TheoremId::T3_12,
            ElsConfig::new(vec![3.0; 3], vec![3.0; 3], vec![2.5, 10.5, 3.1], swe.clone())?
                .with_generator(GeneratorSpec::Independence),
            ElsConfig::new(vec![3.0; 3], vec![3.0; 3], vec![0.5, 6.5, 7.5], swe)?
                .with_generator(GeneratorSpec::Independence),
            3.001,
            50.0,
            4096,
            "shape vectors outside a common cone; curves cross",
        ),
        FixtureName::RemarkR1 => f(
            TheoremId::T3_4,
            s(1.0, vec![1.0, 2.0, 6.0], 1.0, BaselineSpec::loglog())?,
            s(1.0, vec![2.0, 3.0, 4.0], 1.0, BaselineSpec::loglog())?,
            1.001,
            100.0,
            4096,
            "Loglog satisfies C1; rh order from majorized scales",
        ),
    }
}

/// Runs the fixture's theorem and writes its plot series as CSV.
pub fn run_fixture<W: std::io::Write>(name: FixtureName, csv_out: W) -> Result<TheoremVerdict> {
    let fx = Fixture::get(name);
    let verdict = fx.run()?;
    crate::orderstats::write_series_csv(csv_out, fx.order(), &fx.series()?)?;
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.as_str().parse::<TheoremId>().unwrap(), id);
        }
        assert_eq!("t3_8(ii)".parse::<TheoremId>().unwrap(), TheoremId::T3_8ii);
        assert!("T4_1".parse::<TheoremId>().is_err());
        for f in FixtureName::ALL {
            assert_eq!(f.as_str().parse::<FixtureName>().unwrap(), f);
        }
    }

    #[test]
    fn every_theorem_has_a_preorder_and_cone() {
        for id in TheoremId::ALL {
            let s = TheoremSpec::get(id);
            let names: Vec<String> = s.hypotheses.iter().map(|h| h.name()).collect();
            assert!(names.iter().any(|n| n == "cone"), "{id}");
            let corollary = id.as_str().starts_with('C');
            assert_eq!(names.iter().any(|n| n == "preorder"), !corollary, "{id}");
        }
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let b = BaselineSpec::loglog();
        let x = ElsConfig::scalar_location(1.0, vec![1.0, 2.0], 1.0, b.clone()).unwrap();
        let y = ElsConfig::scalar_location(1.0, vec![1.0, 2.0, 3.0], 1.0, b).unwrap();
        let g = GridSpec::new(1.1, 10.0, 64).unwrap();
        assert!(matches!(
            run_theorem(TheoremId::T3_4, &x, &y, &g),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn structural_mismatch_is_a_failed_hypothesis() {
        let b = BaselineSpec::power_cap(0.2, 100.0).unwrap();
        let x = ElsConfig::new(vec![4.0, 4.5, 4.0], vec![5.0, 9.0, 10.0], vec![4.0; 3], b.clone()).unwrap();
        let y = ElsConfig::scalar_location(4.0, vec![7.0, 10.0, 12.0], 4.0, b).unwrap();
        let g = GridSpec::new(4.6, 100.0, 256).unwrap();
        let v = run_theorem(TheoremId::T3_1, &x, &y, &g).unwrap();
        assert!(!v.hypothesis("location_constant_equal").unwrap().passed);
        assert!(v.consistent);
    }

    #[test]
    fn draws_satisfy_structure() {
        for id in [
            TheoremId::T3_1,
            TheoremId::C3_1,
            TheoremId::T3_2,
            TheoremId::C3_2,
            TheoremId::T3_3,
            TheoremId::T3_7,
            TheoremId::C3_7,
            TheoremId::T3_12,
        ] {
            let spec = TheoremSpec::get(id);
            let policy = SuitePolicy::default_for(id);
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            for _ in 0..20 {
                let (x, y) = draw_pair(&spec, &policy, &mut rng).unwrap();
                let g = auto_grid(&x, &y, 256).unwrap();
                for h in spec.hypotheses.iter().filter(|h| !h.is_baseline_only()) {
                    let r = evaluate(h, &x, &y, &g);
                    assert!(r.passed, "{id} {}: {}", r.name, r.detail);
                }
            }
        }
    }

    #[test]
    fn unsatisfiable_baseline_exhausts_policy() {
        let policy = SuitePolicy::default_for(TheoremId::T3_5);
        match property_suite(TheoremId::T3_5, &policy, 2, 0, None) {
            Err(Error::PolicyExhausted { attempts, .. }) => assert_eq!(attempts, MAX_REJECTIONS),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn small_suite_is_deterministic() {
        let policy = SuitePolicy::default_for(TheoremId::T3_3);
        let g = None;
        let a = property_suite(TheoremId::T3_3, &policy, 4, 11, g).unwrap();
        let b = property_suite(TheoremId::T3_3, &policy, 4, 11, g).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.consistent(), 4);
    }
}
