//! Instance files: JSON objects tagged by `kind`, or an edge list for graph
//! probing.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use srr::knapsack::KnapsackInstance;
use srr::matching::{GraphProbingInstance, MatchingInstance};
use srr::rationing::RationingInstance;
use srr::sequencing::{HiringInstance, ProbeInstance};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Instance {
    Rationing(RationingInstance),
    Hiring(HiringInstance),
    #[serde(rename = "probetopk")]
    ProbeTopk(ProbeInstance),
    Knapsack(KnapsackInstance),
    Matching(MatchingInstance),
    GraphProbing(GraphProbingInstance),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Rationing(_) => "rationing",
            Instance::Hiring(_) => "hiring",
            Instance::ProbeTopk(_) => "probetopk",
            Instance::Knapsack(_) => "knapsack",
            Instance::Matching(_) => "matching",
            Instance::GraphProbing(_) => "graph-probing",
        }
    }

    pub fn validate(&self) -> srr::Result<()> {
        match self {
            Instance::Rationing(i) => i.validate(),
            Instance::Hiring(i) => i.validate(),
            Instance::ProbeTopk(i) => i.validate(),
            Instance::Knapsack(i) => i.validate(),
            Instance::Matching(i) => i.validate(),
            Instance::GraphProbing(i) => i.validate(),
        }
    }

    /// Parses JSON, or an edge list when the text does not start with `{`.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim_start();
        if trimmed.is_empty() {
            bail!("instance file is empty");
        }
        let inst = if trimmed.starts_with('{') {
            Self::parse_json(text).context("malformed instance")?
        } else {
            Instance::GraphProbing(GraphProbingInstance::parse_edge_list(text).context("malformed edge list")?)
        };
        inst.validate().context("instance failed validation")?;
        Ok(inst)
    }

    /// Reads `kind` first, then deserializes the matching record from the
    /// original text so errors carry line and column.
    fn parse_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Tag {
            kind: Option<String>,
        }
        let tag: Tag = serde_json::from_str(text)?;
        let kind = tag.kind.ok_or_else(|| anyhow::anyhow!("missing field `kind`"))?;
        Ok(match kind.as_str() {
            "rationing" => Instance::Rationing(serde_json::from_str(text)?),
            "hiring" => Instance::Hiring(serde_json::from_str(text)?),
            "probetopk" => Instance::ProbeTopk(serde_json::from_str(text)?),
            "knapsack" => Instance::Knapsack(serde_json::from_str(text)?),
            "matching" => Instance::Matching(serde_json::from_str(text)?),
            "graph-probing" => Instance::GraphProbing(serde_json::from_str(text)?),
            other => bail!(
                "unknown kind `{other}` (expected rationing, hiring, probetopk, knapsack, matching or graph-probing)"
            ),
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instances always serialize")
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json() + "\n").with_context(|| format!("cannot write {}", path.display()))
    }
}
