use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use super::{Mfa, ModelFactory, PredictionTable, RandomModel, RuleModel, Strategy, TableModel};
use crate::error::Result;
use crate::recommenders::{CfOptions, Ibcf, Ubcf};

/// Names accepted by [`ModelKind::from_str`], besides `table:<path>`.
pub const MODEL_NAMES: [&str; 10] = [
    "random",
    "mfa",
    "atmosphere",
    "matching",
    "conversion",
    "fol",
    "ubcf",
    "ibcf",
    "ubcf-fit",
    "ibcf-fit",
];

/// Every model the benchmark knows how to build.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelKind {
    Random,
    Mfa,
    Rule(Strategy),
    Ubcf,
    Ibcf,
    UbcfFit,
    IbcfFit,
    /// A prediction table loaded from a JSON file.
    Table(PathBuf),
}

impl ModelKind {
    /// Model id used in results. Tables are named after their file stem.
    pub fn id(&self) -> String {
        match self {
            ModelKind::Random => "random".into(),
            ModelKind::Mfa => "mfa".into(),
            ModelKind::Rule(s) => s.model_id().into(),
            ModelKind::Ubcf => "ubcf".into(),
            ModelKind::Ibcf => "ibcf".into(),
            ModelKind::UbcfFit => "ubcf-fit".into(),
            ModelKind::IbcfFit => "ibcf-fit".into(),
            ModelKind::Table(path) => format!(
                "table:{}",
                path.file_stem()
                    .map(|s| s.to_string_lossy())
                    .unwrap_or_default()
            ),
        }
    }

    /// Builds a factory. Prediction tables are read and validated here.
    pub fn factory(&self, options: CfOptions) -> Result<ModelFactory> {
        let id = self.id();
        Ok(match self {
            ModelKind::Random => ModelFactory::new(id, || Box::new(RandomModel::new())),
            ModelKind::Mfa => ModelFactory::new(id, || Box::new(Mfa::new())),
            ModelKind::Rule(s) => {
                let s = *s;
                ModelFactory::new(id, move || Box::new(RuleModel::new(s)))
            }
            ModelKind::Ubcf => ModelFactory::new(id, move || Box::new(Ubcf::new(options))),
            ModelKind::UbcfFit => ModelFactory::new(id, move || Box::new(Ubcf::fit(options))),
            ModelKind::Ibcf => ModelFactory::new(id, move || Box::new(Ibcf::new(options))),
            ModelKind::IbcfFit => ModelFactory::new(id, move || Box::new(Ibcf::fit(options))),
            ModelKind::Table(path) => {
                let table = Arc::new(PredictionTable::load(path)?);
                let model_id = id.clone();
                ModelFactory::new(id, move || {
                    Box::new(TableModel::new(model_id.clone(), Arc::clone(&table)))
                })
            }
        })
    }
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if let Some(path) = s.strip_prefix("table:") {
            if path.is_empty() {
                return Err("table: requires a file path".into());
            }
            return Ok(ModelKind::Table(PathBuf::from(path)));
        }
        Ok(match s {
            "random" => ModelKind::Random,
            "mfa" => ModelKind::Mfa,
            "atmosphere" => ModelKind::Rule(Strategy::Atmosphere),
            "matching" => ModelKind::Rule(Strategy::Matching),
            "conversion" => ModelKind::Rule(Strategy::Conversion),
            "fol" => ModelKind::Rule(Strategy::FirstOrderLogic),
            "ubcf" => ModelKind::Ubcf,
            "ibcf" => ModelKind::Ibcf,
            "ubcf-fit" => ModelKind::UbcfFit,
            "ibcf-fit" => ModelKind::IbcfFit,
            _ => {
                return Err(format!(
                    "unknown model '{s}'; valid names: {}, table:<path>",
                    MODEL_NAMES.join(", ")
                ))
            }
        })
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelKind::Table(path) => write!(f, "table:{}", path.display()),
            other => f.write_str(&other.id()),
        }
    }
}
