use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Every requested verification held.
    Pass,
    /// A verification failed or an obstruction was found.
    Fail,
    /// A computation with nothing to verify finished.
    Ok,
    /// Exploratory output; never pass/fail.
    Report,
    /// Input could not be parsed or validated.
    Error,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass | Status::Ok | Status::Report => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Ok => "ok",
            Status::Report => "report",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn new(path: &Path, bytes: &[u8]) -> Self {
        let name = path
            .file_name()
            .map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
        InputDigest {
            name,
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub tool: String,
    pub conventions: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    pub inputs: Vec<InputDigest>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub verb: String,
    pub status: Status,
    /// The identity that failed, for `fail` reports.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identity: Option<String>,
    pub provenance: Provenance,
    pub result: Value,
    #[serde(skip)]
    pub text: Vec<String>,
}

impl Report {
    pub fn new(verb: &str, inputs: Vec<InputDigest>, order: Option<usize>) -> Self {
        Report {
            verb: verb.to_string(),
            status: Status::Ok,
            identity: None,
            provenance: Provenance {
                tool: format!("dquant {}", env!("CARGO_PKG_VERSION")),
                conventions: dquant::CONVENTIONS_VERSION,
                order,
                inputs,
            },
            result: Value::Null,
            text: Vec::new(),
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    pub fn fail(&mut self, identity: impl Into<String>) {
        self.status = Status::Fail;
        self.identity = Some(identity.into());
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {}", self.verb, self.status.as_str());
        if let Some(id) = &self.identity {
            let _ = writeln!(out, "violated: {id}");
        }
        for l in &self.text {
            let _ = writeln!(out, "  {l}");
        }
        let p = &self.provenance;
        let _ = write!(out, "-- {} / {}", p.tool, p.conventions);
        if let Some(n) = p.order {
            let _ = write!(out, " / order {n}");
        }
        out.push('\n');
        for i in &p.inputs {
            let _ = writeln!(out, "-- {} sha256:{}", i.name, i.sha256);
        }
        out
    }
}
