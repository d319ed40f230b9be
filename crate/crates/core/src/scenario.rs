//! Scenario files: two populations, an evaluation grid, an optional theorem
//! and a list of outputs, written in TOML.
//!
//! ```toml
//! name = "scales"
//! theorem = "T3_1"
//!
//! [grid]
//! lo = 4.001
//! hi = 100.0
//! points = 2048
//!
//! [x]
//! lambda = 4.0
//! theta = [5.0, 9.0, 10.0]
//! alpha = 4.0
//! baseline = { family = "power_cap", params = { a = 0.2, c = 100.0 } }
//!
//! [y]
//! lambda = 4.0
//! theta = [7.0, 10.0, 12.0]
//! alpha = 4.0
//! baseline = { family = "power_cap", params = { a = 0.2, c = 100.0 } }
//!
//! [[outputs]]
//! kind = "csv"
//! path = "series.csv"
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::baseline::{BaselineParams, BaselineRegistry};
use crate::copula::GeneratorSpec;
use crate::els::{ElsConfig, SupportMode};
use crate::error::{Error, Result};
use crate::grid::{GridSpec, DEFAULT_POINTS};
use crate::orderstats::Order;
use crate::theorems::{auto_grid, Fixture, FixtureName, TheoremId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputKind {
    Csv,
    Report,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Output {
    pub kind: OutputKind,
    pub path: PathBuf,
    /// Series order for CSV output; defaults to the theorem's order, else st.
    #[serde(default)]
    pub order: Option<Order>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub x: ElsConfig,
    pub y: ElsConfig,
    pub theorem: Option<TheoremId>,
    pub grid: GridSpec,
    pub outputs: Vec<Output>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Values {
    One(f64),
    Many(Vec<f64>),
}

impl Values {
    fn expand(self, n: usize) -> Vec<f64> {
        match self {
            Values::One(v) => vec![v; n],
            Values::Many(v) => v,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBaseline {
    family: String,
    #[serde(default)]
    params: BaselineParams,
    #[serde(default)]
    support: SupportMode,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    family: String,
    #[serde(default)]
    params: BTreeMap<String, f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPopulation {
    lambda: Values,
    theta: Vec<f64>,
    alpha: Values,
    baseline: RawBaseline,
    generator: Option<RawGenerator>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    theorem: Option<String>,
    #[serde(default)]
    grid: Option<GridSpec>,
    x: RawPopulation,
    y: RawPopulation,
    #[serde(default)]
    outputs: Vec<Output>,
}

fn config(field: impl Into<String>, reason: impl ToString) -> Error {
    Error::Config {
        field: field.into(),
        reason: reason.to_string(),
    }
}

// Prefixes parameter names from validation errors with the scenario path.
fn within(prefix: &str, e: Error) -> Error {
    match e {
        Error::InvalidParameter { name, reason } => config(format!("{prefix}.{name}"), reason),
        Error::LengthMismatch { left, right } => config(
            prefix,
            format!("lambda, theta and alpha need equal lengths ({left} vs {right})"),
        ),
        Error::Unknown { kind, name } => config(prefix, format!("unknown {kind} `{name}`")),
        other => config(prefix, other),
    }
}

fn generator(raw: &RawGenerator) -> Result<GeneratorSpec> {
    let key = |k: &str| {
        raw.params.get(k).copied().ok_or_else(|| Error::InvalidParameter {
            name: format!("params.{k}"),
            reason: "missing".into(),
        })
    };
    let allowed: &[&str] = match raw.family.as_str() {
        "independence" => &[],
        "gumbel_hougaard" | "gumbel_barnett" => &["a"],
        "clayton" => &["theta"],
        other => {
            return Err(Error::Unknown {
                kind: "generator family",
                name: other.to_string(),
            })
        }
    };
    if let Some(k) = raw.params.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(Error::InvalidParameter {
            name: format!("params.{k}"),
            reason: "unknown parameter".into(),
        });
    }
    let g = match raw.family.as_str() {
        "independence" => Ok(GeneratorSpec::Independence),
        "gumbel_hougaard" => GeneratorSpec::gumbel_hougaard(key("a")?),
        "gumbel_barnett" => GeneratorSpec::gumbel_barnett(key("a")?),
        _ => GeneratorSpec::clayton(key("theta")?),
    };
    g.map_err(|e| match e {
        Error::InvalidParameter { name, reason } => Error::InvalidParameter {
            name: format!("params.{}", name.rsplit('.').next().unwrap_or(&name)),
            reason,
        },
        other => other,
    })
}

fn population(side: &str, raw: RawPopulation, registry: &BaselineRegistry) -> Result<ElsConfig> {
    let baseline = registry
        .build(&raw.baseline.family, &raw.baseline.params)
        .map_err(|e| match e {
            Error::InvalidParameter { name, reason } => {
                let key = name.rsplit('.').next().unwrap_or(&name).to_string();
                config(format!("{side}.baseline.params.{key}"), reason)
            }
            other => within(&format!("{side}.baseline.family"), other),
        })?;
    let n = raw.theta.len();
    let mut cfg = ElsConfig::new(raw.lambda.expand(n), raw.theta, raw.alpha.expand(n), baseline)
        .map_err(|e| within(side, e))?
        .with_support_mode(raw.baseline.support);
    if let Some(g) = &raw.generator {
        let g = generator(g).map_err(|e| within(&format!("{side}.generator"), e))?;
        cfg = cfg.with_generator(g);
    }
    Ok(cfg)
}

// 1-based line of a byte offset.
fn line_of(src: &str, offset: usize) -> usize {
    src[..offset.min(src.len())].matches('\n').count() + 1
}

impl Scenario {
    pub fn from_toml(src: &str) -> Result<Scenario> {
        Self::from_toml_with(src, &BaselineRegistry::with_builtins())
    }

    /// Parses with a caller-supplied baseline registry.
    pub fn from_toml_with(src: &str, registry: &BaselineRegistry) -> Result<Scenario> {
        let raw: RawScenario = toml::from_str(src).map_err(|e| {
            let field = match e.span() {
                Some(s) => format!("line {}", line_of(src, s.start)),
                None => "document".to_string(),
            };
            config(field, e.message())
        })?;
        let x = population("x", raw.x, registry)?;
        let y = population("y", raw.y, registry)?;
        if x.n() != y.n() {
            return Err(config(
                "y.theta",
                format!("populations need equal sizes ({} vs {})", x.n(), y.n()),
            ));
        }
        let theorem = raw
            .theorem
            .map(|t| t.parse::<TheoremId>().map_err(|e| within("theorem", e)))
            .transpose()?;
        let grid = match raw.grid {
            Some(g) => {
                g.validate().map_err(|e| within("grid", e))?;
                g
            }
            None => auto_grid(&x, &y, DEFAULT_POINTS).map_err(|e| within("grid", e))?,
        };
        Ok(Scenario {
            name: raw.name.unwrap_or_else(|| "scenario".to_string()),
            x,
            y,
            theorem,
            grid,
            outputs: raw.outputs,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Scenario> {
        let path = path.as_ref();
        let src = fs::read_to_string(path).map_err(|e| config(path.display().to_string(), e))?;
        Self::from_toml(&src)
    }

    pub fn from_fixture(name: FixtureName) -> Scenario {
        let fx = Fixture::get(name);
        Scenario {
            name: name.as_str().to_string(),
            x: fx.x,
            y: fx.y,
            theorem: Some(fx.theorem),
            grid: fx.grid,
            outputs: Vec::new(),
        }
    }

    /// Order used for series output when none is requested.
    pub fn default_order(&self) -> Order {
        self.theorem
            .map(|t| crate::theorems::TheoremSpec::get(t).conclusion.order())
            .unwrap_or(Order::St)
    }
}
