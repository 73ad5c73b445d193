use serde_json::Value;

use crate::error::CliError;
use crate::Format;

/// One command result in every format the command supports.
#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub json: Value,
    pub text: Option<String>,
    pub dot: Option<String>,
    /// False when a check ran and found a counterexample.
    pub passed: bool,
}

impl Report {
    pub fn new(command: &'static str, json: Value) -> Self {
        Report { command, json, text: None, dot: None, passed: true }
    }

    pub fn text(mut self, text: String) -> Self {
        self.text = Some(text);
        self
    }

    pub fn dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }

    pub fn passed(mut self, passed: bool) -> Self {
        self.passed = passed;
        self
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        let missing = |name: &str| CliError::usage(format!("`{}` has no {name} output", self.command));
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json).expect("serializable") + "\n"),
            Format::Text => self.text.clone().ok_or_else(|| missing("text")),
            Format::Dot => self.dot.clone().ok_or_else(|| missing("dot")),
        }
    }
}
