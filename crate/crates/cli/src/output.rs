//! Rendering reports and mapping outcomes to exit codes.

use std::io::Write;
use std::process::ExitCode;

use poset_shell::poset::PosetError;
use serde_json::Value;

use crate::{Format, RunConfig};

pub const SCHEMA: &str = "poset-shell/1";

/// A finished run. `passed` decides between exit codes 0 and 1.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub dot: Option<String>,
    pub passed: bool,
}

/// Anything that stops a run before it produces a verdict (exit code 2).
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Core(poset_shell::Error),
}

impl From<poset_shell::Error> for Failure {
    fn from(e: poset_shell::Error) -> Self {
        Self::Core(e)
    }
}

impl From<PosetError> for Failure {
    fn from(e: PosetError) -> Self {
        Self::Core(e.into())
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Usage(m) => f.write_str(m),
            Self::Core(e) => write!(f, "{e}"),
        }
    }
}

pub type Outcome = Result<Report, Failure>;

fn render(cfg: &RunConfig, report: Report) -> Result<(String, bool), Failure> {
    let body = match cfg.format {
        Format::Text => report.text,
        Format::Json => {
            let mut v = report.json;
            if let Value::Object(m) = &mut v {
                m.insert("schema".into(), Value::from(SCHEMA));
                m.insert("passed".into(), Value::from(report.passed));
            }
            let mut s = serde_json::to_string_pretty(&v).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Dot => report.dot.ok_or_else(|| Failure::Usage("--format dot is only available for hasse".into()))?,
    };
    Ok((body, report.passed))
}

pub fn finish(cfg: &RunConfig, outcome: Outcome) -> ExitCode {
    let rendered = outcome.and_then(|r| render(cfg, r));
    let (body, passed) = match rendered {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match &cfg.out {
        Some(path) => std::fs::write(path, body.as_bytes()),
        None => std::io::stdout().lock().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

pub fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}
