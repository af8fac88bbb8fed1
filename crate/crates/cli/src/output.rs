use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Tsv,
    Json,
}

/// Tabular result of one command. TSV prints `header` then `rows`; JSON
/// carries `command`, `params` and `rows` only.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub params: Vec<(String, String)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    command: &'a str,
    params: serde_json::Map<String, serde_json::Value>,
    rows: &'a [Vec<String>],
}

impl Report {
    pub fn new(command: &str, header: &[&str]) -> Self {
        Report { command: command.into(), header: header.iter().map(|h| h.to_string()).collect(), ..Default::default() }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.push((key.into(), value.to_string()));
        self
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Tsv => {
                let mut out = String::new();
                let _ = writeln!(out, "{}", self.header.join("\t"));
                for row in &self.rows {
                    let _ = writeln!(out, "{}", row.join("\t"));
                }
                out
            }
            OutputFormat::Json => {
                let params = self.params.iter().map(|(k, v)| (k.clone(), v.clone().into())).collect();
                let body = JsonReport { command: &self.command, params, rows: &self.rows };
                let mut s = serde_json::to_string(&body).expect("strings always serialize");
                s.push('\n');
                s
            }
        }
    }
}

/// Builds a row from anything displayable.
#[macro_export]
macro_rules! row {
    ($($cell:expr),* $(,)?) => { vec![$($cell.to_string()),*] };
}
