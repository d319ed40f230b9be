//! Vector preorders, cone membership and finite-difference Schur certificates.
//!
//! Relations are stated as `x ⪰ y`: `y` is majorized (weakly sub-, weakly
//! super-, reciprocally majorized) by `x`. All partial sums run over the
//! ascending order statistics of each vector.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::baseline::BaselineSpec;
use crate::error::{invalid, Error, Result};
use crate::report::{ConditionReport, Location};

/// Relative slack on partial-sum comparisons and on equality of totals.
pub const PARTIAL_SUM_TOL: f64 = 1e-12;
pub const DEFAULT_STEP: f64 = 1e-5;
pub const DEFAULT_BASE_POINTS: usize = 32;
/// Relative tolerance on the monotone-in-k criterion for partials.
pub const SCHUR_TOL: f64 = 1e-6;

/// A parameter vector with positive entries and length at least 2.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamVector(Vec<f64>);

impl ParamVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(invalid("vector", format!("need length >= 2, got {}", values.len())));
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(invalid("vector", format!("entries must be positive, got {v}")));
        }
        Ok(ParamVector(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reciprocal(&self) -> ParamVector {
        ParamVector(self.0.iter().map(|v| 1.0 / v).collect())
    }

    fn ascending(&self) -> Vec<f64> {
        let mut v = self.0.clone();
        v.sort_by(f64::total_cmp);
        v
    }
}

impl TryFrom<&[f64]> for ParamVector {
    type Error = Error;
    fn try_from(v: &[f64]) -> Result<Self> {
        ParamVector::new(v.to_vec())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cone {
    DPlus,
    EPlus,
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cone::DPlus => "D+",
            Cone::EPlus => "E+",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeMembership {
    DPlus,
    EPlus,
    Both,
    Neither,
}

impl ConeMembership {
    pub fn contains(&self, cone: Cone) -> bool {
        matches!(
            (self, cone),
            (ConeMembership::Both, _) | (ConeMembership::DPlus, Cone::DPlus) | (ConeMembership::EPlus, Cone::EPlus)
        )
    }
}

/// Classifies a positive vector: nonincreasing is `D+`, nondecreasing is
/// `E+`, constant is both.
pub fn cone_membership(v: &[f64]) -> ConeMembership {
    if !v.iter().all(|&x| x > 0.0) {
        return ConeMembership::Neither;
    }
    let dec = v.windows(2).all(|w| w[0] >= w[1]);
    let inc = v.windows(2).all(|w| w[0] <= w[1]);
    match (dec, inc) {
        (true, true) => ConeMembership::Both,
        (true, false) => ConeMembership::DPlus,
        (false, true) => ConeMembership::EPlus,
        (false, false) => ConeMembership::Neither,
    }
}

/// Cone containing every vector, preferring `E+` when both qualify.
pub fn common_cone(vs: &[&[f64]]) -> Option<Cone> {
    let m: Vec<ConeMembership> = vs.iter().map(|v| cone_membership(v)).collect();
    [Cone::EPlus, Cone::DPlus]
        .into_iter()
        .find(|&c| m.iter().all(|x| x.contains(c)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preorder {
    /// `x ⪰^m y`
    Maj,
    /// `x ⪰_w y`
    WeakSub,
    /// `x ⪰^w y`
    WeakSuper,
    /// `x ⪰^rm y`
    Recip,
}

impl Preorder {
    pub fn symbol(&self) -> &'static str {
        match self {
            Preorder::Maj => "⪰^m",
            Preorder::WeakSub => "⪰_w",
            Preorder::WeakSuper => "⪰^w",
            Preorder::Recip => "⪰^rm",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PreorderVerdict {
    pub relation: Preorder,
    pub holds: bool,
    /// 1-based partial-sum index of the first violation.
    pub witness_k: Option<usize>,
}

fn le(a: f64, b: f64) -> bool {
    a <= b + PARTIAL_SUM_TOL * 1f64.max(a.abs()).max(b.abs())
}

fn prefix(v: &[f64]) -> Vec<f64> {
    v.iter()
        .scan(0.0, |s, &x| {
            *s += x;
            Some(*s)
        })
        .collect()
}

/// Tail sums `t[k] = sum_{i >= k} v[i]`, summed directly rather than as a
/// total minus a prefix.
fn tails(v: &[f64]) -> Vec<f64> {
    let mut t: Vec<f64> = v
        .iter()
        .rev()
        .scan(0.0, |s, &x| {
            *s += x;
            Some(*s)
        })
        .collect();
    t.reverse();
    t
}

/// Decides `x ⪰ y` for the given relation.
pub fn check_preorder(x: &ParamVector, y: &ParamVector, relation: Preorder) -> Result<PreorderVerdict> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let n = x.len();
    let (xa, ya) = (x.ascending(), y.ascending());
    let first = |ok: &dyn Fn(usize) -> bool, upto: usize| (0..upto).find(|&k| !ok(k));
    let witness = match relation {
        Preorder::Maj => {
            let (px, py) = (prefix(&xa), prefix(&ya));
            first(&|k| le(px[k], py[k]), n - 1).or_else(|| {
                let (a, b) = (px[n - 1], py[n - 1]);
                let eq = (a - b).abs() <= PARTIAL_SUM_TOL * a.abs().max(b.abs());
                (!eq).then_some(n - 1)
            })
        }
        Preorder::WeakSuper => {
            let (px, py) = (prefix(&xa), prefix(&ya));
            first(&|k| le(px[k], py[k]), n)
        }
        Preorder::WeakSub => {
            let (tx, ty) = (tails(&xa), tails(&ya));
            first(&|k| le(ty[k], tx[k]), n)
        }
        Preorder::Recip => {
            let inv = |v: &[f64]| v.iter().map(|a| 1.0 / a).collect::<Vec<_>>();
            let (px, py) = (prefix(&inv(&xa)), prefix(&inv(&ya)));
            first(&|k| le(py[k], px[k]), n)
        }
    };
    Ok(PreorderVerdict {
        relation,
        holds: witness.is_none(),
        witness_k: witness.map(|k| k + 1),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchurMode {
    Convex,
    Concave,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Monotone {
    Increasing,
    Decreasing,
}

/// Central-difference gradient with per-coordinate step `step * |z_k|`.
pub fn fd_gradient(f: &dyn Fn(&[f64]) -> Result<f64>, z: &[f64], step: f64) -> Result<Vec<f64>> {
    let mut p = z.to_vec();
    let mut g = Vec::with_capacity(z.len());
    for k in 0..z.len() {
        let h = step * z[k].abs().max(f64::MIN_POSITIVE);
        p[k] = z[k] + h;
        let up = eval(f, &p)?;
        p[k] = z[k] - h;
        let dn = eval(f, &p)?;
        p[k] = z[k];
        g.push((up - dn) / (2.0 * h));
    }
    Ok(g)
}

fn eval(f: &dyn Fn(&[f64]) -> Result<f64>, p: &[f64]) -> Result<f64> {
    match f(p) {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(v) => Err(Error::EvaluationFailure {
            point: p.to_vec(),
            reason: format!("non-finite value {v}"),
        }),
        Err(Error::EvaluationFailure { point, reason }) => Err(Error::EvaluationFailure { point, reason }),
        Err(e) => Err(Error::EvaluationFailure {
            point: p.to_vec(),
            reason: e.to_string(),
        }),
    }
}

fn scale(g: &[f64]) -> f64 {
    g.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE)
}

/// `h_(k)` must increase in `k` for this combination (else decrease).
fn needs_increasing(cone: Cone, mode: SchurMode) -> bool {
    matches!(
        (cone, mode),
        (Cone::EPlus, SchurMode::Convex) | (Cone::DPlus, SchurMode::Concave)
    )
}

fn schur_at(r: &mut ConditionReport, g: &[f64], z: &[f64], cone: Cone, mode: SchurMode) {
    let s = scale(g);
    let inc = needs_increasing(cone, mode);
    for k in 1..g.len() {
        let d = g[k] - g[k - 1];
        let v = if inc { -d } else { d };
        r.observe(v.max(0.0) / s, SCHUR_TOL, Location::Point(z.to_vec()));
    }
}

fn monotone_at(r: &mut ConditionReport, g: &[f64], z: &[f64], dir: Monotone) {
    let s = scale(g);
    for &gk in g {
        let v = match dir {
            Monotone::Increasing => -gk,
            Monotone::Decreasing => gk,
        };
        r.observe(v.max(0.0) / s, SCHUR_TOL, Location::Point(z.to_vec()));
    }
}

fn require_in_cone(z: &[f64], cone: Cone) -> Result<()> {
    if cone_membership(z).contains(cone) {
        Ok(())
    } else {
        Err(invalid("base_point", format!("{z:?} is not in {cone}")))
    }
}

/// Certifies the Schur criterion at each base point: on `D+` a Schur-convex
/// function has partials decreasing in the coordinate index, on `E+`
/// increasing; concave is the mirror image.
pub fn schur_certify(
    f: &dyn Fn(&[f64]) -> Result<f64>,
    cone: Cone,
    mode: SchurMode,
    base_points: &[Vec<f64>],
    step: f64,
) -> Result<ConditionReport> {
    let label = match mode {
        SchurMode::Convex => "Schur-convex",
        SchurMode::Concave => "Schur-concave",
    };
    let mut r = ConditionReport::new(format!("{label} on {cone}"));
    for z in base_points {
        require_in_cone(z, cone)?;
        let g = fd_gradient(f, z, step)?;
        schur_at(&mut r, &g, z, cone, mode);
    }
    Ok(r)
}

/// Certifies that every partial has the sign of the stated direction.
pub fn certify_monotone(
    f: &dyn Fn(&[f64]) -> Result<f64>,
    direction: Monotone,
    base_points: &[Vec<f64>],
    step: f64,
) -> Result<ConditionReport> {
    let label = match direction {
        Monotone::Increasing => "increasing",
        Monotone::Decreasing => "decreasing",
    };
    let mut r = ConditionReport::new(format!("{label} in each coordinate"));
    for z in base_points {
        let g = fd_gradient(f, z, step)?;
        monotone_at(&mut r, &g, z, direction);
    }
    Ok(r)
}

/// Both conditions for `x ⪰^rm y ⇒ f(x) ≥ f(y)` (convex mode) or `≤`
/// (concave mode): `g(a) = f(1/a)` is Schur-convex (concave) and increasing
/// (decreasing) in each `a_i`. The base points are points `x` in the domain
/// of `f`; the Schur criterion uses the cone of `a = 1/x`.
pub fn recip_certify(
    f: &dyn Fn(&[f64]) -> Result<f64>,
    base_points: &[Vec<f64>],
    mode: SchurMode,
    step: f64,
) -> Result<ConditionReport> {
    let g = |a: &[f64]| -> Result<f64> {
        let x: Vec<f64> = a.iter().map(|v| 1.0 / v).collect();
        f(&x)
    };
    let mut schur = ConditionReport::new(match mode {
        SchurMode::Convex => "f(1/a) Schur-convex",
        SchurMode::Concave => "f(1/a) Schur-concave",
    });
    let dir = match mode {
        SchurMode::Convex => Monotone::Increasing,
        SchurMode::Concave => Monotone::Decreasing,
    };
    let mut mono = ConditionReport::new(match dir {
        Monotone::Increasing => "f(1/a) increasing",
        Monotone::Decreasing => "f(1/a) decreasing",
    });
    for x in base_points {
        let a: Vec<f64> = x.iter().map(|v| 1.0 / v).collect();
        let cone = match cone_membership(&a) {
            ConeMembership::DPlus => Cone::DPlus,
            ConeMembership::EPlus | ConeMembership::Both => Cone::EPlus,
            ConeMembership::Neither => return Err(invalid("base_point", format!("{x:?} is in neither cone"))),
        };
        let grad = fd_gradient(&g, &a, step)?;
        schur_at(&mut schur, &grad, &a, cone, mode);
        monotone_at(&mut mono, &grad, &a, dir);
    }
    Ok(ConditionReport::all_of("reciprocal criterion", vec![schur, mono]))
}

/// Analytic gradient of `theta -> F_{X_{n-1:n}}(x)` for common location
/// `lambda` and common shape `alpha` (independent components):
/// `-alpha w_i^2 rb(w_i) / (x - lambda) * [sum_{l != i} prod_{k != l} d_k - (n-1) prod d_k]`
/// with `w_i = (x - lambda)/theta_i` and `d_k = F_b(w_k)^alpha`.
pub fn psi1_gradient(baseline: &BaselineSpec, lambda: f64, alpha: f64, theta: &[f64], x: f64) -> Result<Vec<f64>> {
    if x <= lambda {
        return Err(Error::GridBelowLocation {
            lo: x,
            max_location: lambda,
        });
    }
    let n = theta.len();
    let s = baseline.support();
    let ws: Vec<f64> = theta.iter().map(|t| (x - lambda) / t).collect();
    let d: Vec<f64> = ws.iter().map(|&w| baseline.cdf_clamped(w).powf(alpha)).collect();
    let loo: Vec<f64> = (0..n)
        .map(|l| (0..n).filter(|&k| k != l).map(|k| d[k]).product())
        .collect();
    let all: f64 = d.iter().product();
    let mut out = Vec::with_capacity(n);
    for (i, &w) in ws.iter().enumerate() {
        let w2rt = if w >= s.upper {
            0.0
        } else {
            baseline.derived(crate::baseline::DerivedKind::W2RevHazard, w, 1e-6 * w)?
        };
        let bracket: f64 = (0..n).filter(|&l| l != i).map(|l| loo[l]).sum::<f64>() - (n as f64 - 1.0) * all;
        out.push(-alpha * w2rt / (x - lambda) * bracket);
    }
    Ok(out)
}

/// Deterministic base points inside a cone: sorted draws from
/// `[lo, hi]`, strictly ordered.
pub fn cone_base_points<R: rand::Rng>(
    rng: &mut R,
    n: usize,
    cone: Cone,
    lo: f64,
    hi: f64,
    count: usize,
) -> Vec<Vec<f64>> {
    (0..count)
        .map(|_| loop {
            let mut v: Vec<f64> = (0..n).map(|_| rng.random_range(lo..hi)).collect();
            v.sort_by(f64::total_cmp);
            if cone == Cone::DPlus {
                v.reverse();
            }
            if v.windows(2).all(|w| w[0] != w[1]) {
                break v;
            }
        })
        .collect()
}
