use serde::Serialize;
use serde_json::Value;

use crate::args::Command;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize)]
pub struct Section {
    pub name: String,
    pub pass: bool,
    pub detail: Value,
}

impl Section {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Serialize) -> Self {
        Section {
            name: name.into(),
            pass,
            detail: serde_json::to_value(detail).expect("reports serialize"),
        }
    }
}

#[derive(Serialize)]
pub struct Report<'a> {
    pub command: &'a Command,
    pub version: &'static str,
    pub seed: Option<u64>,
    pub sections: Vec<Section>,
    pub pass: bool,
}

impl<'a> Report<'a> {
    pub fn new(command: &'a Command, seed: Option<u64>, sections: Vec<Section>) -> Self {
        let pass = sections.iter().all(|s| s.pass);
        Report {
            command,
            version: VERSION,
            seed,
            sections,
            pass,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports serialize");
        text.push('\n');
        text
    }

    /// `section,pass` rows followed by the summary line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("section,pass\n");
        for s in &self.sections {
            out.push_str(&format!("{},{}\n", s.name, s.pass));
        }
        out.push_str(&format!("summary,{}\n", self.pass));
        out
    }
}

pub fn join_csv<T: ToString>(values: &[T]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}
