//! JSON scenario configs. Speeds are given in km/h and converted to km/min.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use walkwait_core::{ArrivalModel, Error, Scenario};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub distance_km: f64,
    pub walk_speed_kmh: f64,
    pub bus_speed_kmh: f64,
    pub model: ModelConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_catch: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelConfig {
    Uniform {
        headway: f64,
    },
    Exponential {
        rate: f64,
    },
    LateBusMixture {
        still_coming_prob: f64,
        late_window: f64,
        next_headway_offset: f64,
    },
    Piecewise {
        knots: Vec<(f64, f64)>,
    },
}

impl ModelConfig {
    pub fn build(&self) -> walkwait_core::Result<ArrivalModel> {
        match *self {
            ModelConfig::Uniform { headway } => ArrivalModel::uniform(headway),
            ModelConfig::Exponential { rate } => ArrivalModel::exponential(rate),
            ModelConfig::LateBusMixture {
                still_coming_prob,
                late_window,
                next_headway_offset,
            } => {
                ArrivalModel::late_bus_mixture(still_coming_prob, late_window, next_headway_offset)
            }
            ModelConfig::Piecewise { ref knots } => ArrivalModel::piecewise(knots),
        }
    }
}

/// A validated config with the internal representations built.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub config: ScenarioConfig,
    pub scenario: Scenario,
    pub model: ArrivalModel,
    /// `p_catch` from the config, 0 when absent.
    pub p_catch: f64,
}

pub fn load(path: &Path) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<Loaded, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawConfig = serde_path_to_error::deserialize(de).map_err(|e| path_error(e, ""))?;
    let config = ScenarioConfig {
        distance_km: raw.distance_km,
        walk_speed_kmh: raw.walk_speed_kmh,
        bus_speed_kmh: raw.bus_speed_kmh,
        model: ModelConfig::from_value(raw.model)?,
        p_catch: raw.p_catch,
    };
    validate(config)
}

/// First parsing stage. The model is kept as raw JSON so that its errors can
/// carry the full field path, which internally tagged enums lose.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    distance_km: f64,
    walk_speed_kmh: f64,
    bus_speed_kmh: f64,
    model: Value,
    #[serde(default)]
    p_catch: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct UniformParams {
    headway: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExponentialParams {
    rate: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MixtureParams {
    still_coming_prob: f64,
    late_window: f64,
    next_headway_offset: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PiecewiseParams {
    knots: Vec<(f64, f64)>,
}

impl ModelConfig {
    const KINDS: &'static str = "uniform, exponential, late_bus_mixture, piecewise";

    fn from_value(value: Value) -> Result<Self, CliError> {
        let Value::Object(mut fields) = value else {
            return Err(CliError::input("model", "expected an object"));
        };
        let kind = match fields.remove("kind") {
            Some(Value::String(kind)) => kind,
            Some(_) => return Err(CliError::input("model.kind", "expected a string")),
            None => {
                return Err(CliError::input(
                    "model.kind",
                    format!("missing; expected one of {}", Self::KINDS),
                ))
            }
        };
        let params = Value::Object(fields);
        Ok(match kind.as_str() {
            "uniform" => {
                let p: UniformParams = model_params(params)?;
                ModelConfig::Uniform { headway: p.headway }
            }
            "exponential" => {
                let p: ExponentialParams = model_params(params)?;
                ModelConfig::Exponential { rate: p.rate }
            }
            "late_bus_mixture" => {
                let p: MixtureParams = model_params(params)?;
                ModelConfig::LateBusMixture {
                    still_coming_prob: p.still_coming_prob,
                    late_window: p.late_window,
                    next_headway_offset: p.next_headway_offset,
                }
            }
            "piecewise" => {
                let p: PiecewiseParams = model_params(params)?;
                ModelConfig::Piecewise { knots: p.knots }
            }
            other => {
                return Err(CliError::input(
                    "model.kind",
                    format!("unknown kind `{other}`; expected one of {}", Self::KINDS),
                ))
            }
        })
    }
}

fn model_params<T: DeserializeOwned>(value: Value) -> Result<T, CliError> {
    serde_path_to_error::deserialize(value).map_err(|e| path_error(e, "model"))
}

fn path_error<E: std::fmt::Display>(err: serde_path_to_error::Error<E>, parent: &str) -> CliError {
    let path = err.path().to_string();
    let field = match (path.as_str(), parent) {
        ("." | "?", "") => "config".to_owned(),
        ("." | "?", parent) => parent.to_owned(),
        (path, "") => path.to_owned(),
        (path, parent) => format!("{parent}.{path}"),
    };
    CliError::input(&field, err.into_inner())
}

pub fn validate(config: ScenarioConfig) -> Result<Loaded, CliError> {
    let scenario = Scenario::from_kmh(
        config.distance_km,
        config.walk_speed_kmh,
        config.bus_speed_kmh,
    )
    .map_err(|e| field_error(e, scenario_field))?;
    let model = config
        .model
        .build()
        .map_err(|e| field_error(e, |name| format!("model.{name}")))?;
    let p_catch = match config.p_catch {
        None => 0.0,
        Some(p) if (0.0..=1.0).contains(&p) => p,
        Some(p) => {
            return Err(CliError::input(
                "p_catch",
                format!("must lie in [0, 1] (got {p})"),
            ))
        }
    };
    Ok(Loaded {
        config,
        scenario,
        model,
        p_catch,
    })
}

fn scenario_field(name: &str) -> String {
    match name {
        "distance" => "distance_km".to_owned(),
        "walk_speed" => "walk_speed_kmh".to_owned(),
        "bus_speed" => "bus_speed_kmh".to_owned(),
        other => other.to_owned(),
    }
}

fn field_error(err: Error, field: impl Fn(&str) -> String) -> CliError {
    match err {
        Error::InvalidParameter { name, reason } => CliError::input(&field(name), reason),
        other => CliError::Input(other.to_string()),
    }
}
