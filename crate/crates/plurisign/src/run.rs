//! Report envelope shared by the command-line interface: engine identity,
//! echoed inputs, and the classification verdicts, serialized to a stable
//! JSON schema and to Markdown. Wall-clock timing is deliberately kept out
//! of the JSON form so that identical inputs and seed reproduce the report
//! byte for byte.

use std::time::Duration;

use serde::Serialize;

use crate::hermitian::ClassificationReport;

pub const REPORT_SCHEMA: u32 = 1;
pub const ENGINE_NAME: &str = "plurisign";
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Engine identity block.
#[derive(Clone, Debug, Serialize)]
pub struct EngineInfo {
    pub name: &'static str,
    pub version: &'static str,
}

impl Default for EngineInfo {
    fn default() -> Self {
        EngineInfo { name: ENGINE_NAME, version: ENGINE_VERSION }
    }
}

/// Echo of everything that determined the run.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RunInputs {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub set: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metric: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Complete record of one classification run.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub engine: EngineInfo,
    pub inputs: RunInputs,
    pub label: String,
    pub classification: ClassificationReport,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl RunReport {
    pub fn new(inputs: RunInputs, label: String, classification: ClassificationReport) -> Self {
        RunReport {
            schema: REPORT_SCHEMA,
            engine: EngineInfo::default(),
            inputs,
            label,
            classification,
            notes: Vec::new(),
        }
    }

    pub fn with_notes(mut self, notes: Vec<String>) -> Self {
        self.notes = notes;
        self
    }

    /// Stable JSON form; independent of wall-clock time.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    /// Human-readable form; timing goes here and only here.
    pub fn to_markdown(&self, elapsed: Option<Duration>) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {} \u{2014} classification\n\n", self.label));
        out.push_str(&format!(
            "engine {} {} (schema {})\n\n",
            self.engine.name, self.engine.version, self.schema
        ));
        out.push_str(&self.classification.to_markdown());
        if !self.notes.is_empty() {
            out.push_str("\nNotes:\n");
            for note in &self.notes {
                out.push_str(&format!("- {note}\n"));
            }
        }
        if let Some(elapsed) = elapsed {
            out.push_str(&format!("\n_elapsed: {elapsed:?}_\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::{PropertyReport, Truth};

    fn report() -> ClassificationReport {
        let p = PropertyReport::new(Truth::True, "test");
        ClassificationReport {
            kahler: p.clone(),
            pluriclosed: p.clone(),
            pluripositive: p.clone(),
            plurinegative: p.clone(),
            balanced: p.clone(),
            gauduchon: p.clone(),
            guan_li: p.clone(),
            plurineg_n: p.clone(),
            higher_dim: p,
        }
    }

    #[test]
    fn json_is_deterministic_and_free_of_timing() {
        let inputs = RunInputs {
            command: "classify".into(),
            family: Some("Np".into()),
            seed: Some(7),
            ..RunInputs::default()
        };
        let a = RunReport::new(inputs.clone(), "Np".into(), report());
        let b = RunReport::new(inputs, "Np".into(), report());
        assert_eq!(a.to_json(), b.to_json());
        assert!(!a.to_json().contains("elapsed"));
        let markdown = a.to_markdown(Some(Duration::from_millis(3)));
        assert!(markdown.contains("elapsed"));
    }
}
