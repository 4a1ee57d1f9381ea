use std::fmt;

use exciton_ring_core::{Error, RingSpec};
use serde::Serialize;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub command: &'a str,
    pub spec_echo: Option<&'a RingSpec>,
    pub payload: T,
    pub tool_version: &'a str,
    pub seed: Option<u64>,
}

impl<'a, T: Serialize> Envelope<'a, T> {
    pub fn new(command: &'a str, spec_echo: Option<&'a RingSpec>, payload: T) -> Self {
        Self { command, spec_echo, payload, tool_version: TOOL_VERSION, seed: None }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn pretty(&self) -> Result<String, Failure> {
        let mut s = serde_json::to_string_pretty(self).map_err(Failure::internal)?;
        s.push('\n');
        Ok(s)
    }

    pub fn line(&self) -> Result<String, Failure> {
        let mut s = serde_json::to_string(self).map_err(Failure::internal)?;
        s.push('\n');
        Ok(s)
    }
}

/// What a command hands back to `main`.
pub struct Rendered {
    pub text: String,
    pub exit_code: u8,
}

impl Rendered {
    pub fn ok(text: String) -> Self {
        Self { text, exit_code: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    Usage,
    Spec,
    Compute,
    Io,
    Internal,
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub kind: FailureKind,
    pub message: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { kind: FailureKind::Usage, message: message.into(), details: Vec::new() }
    }

    pub fn spec(message: impl Into<String>, details: Vec<String>) -> Self {
        Self { kind: FailureKind::Spec, message: message.into(), details }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self { kind: FailureKind::Io, message: message.into(), details: Vec::new() }
    }

    pub fn internal(e: impl fmt::Display) -> Self {
        Self { kind: FailureKind::Internal, message: e.to_string(), details: Vec::new() }
    }

    pub fn to_json(&self, command: Option<&str>) -> String {
        #[derive(Serialize)]
        struct ErrorDoc<'a> {
            command: Option<&'a str>,
            error: &'a Failure,
            tool_version: &'a str,
        }
        let doc = ErrorDoc { command, error: self, tool_version: TOOL_VERSION };
        let mut s = serde_json::to_string_pretty(&doc)
            .unwrap_or_else(|_| format!("{{\"error\":{{\"message\":{:?}}}}}", self.message));
        s.push('\n');
        s
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::InvalidSize { .. }
            | Error::InvalidSpec(_)
            | Error::RequiresUniform
            | Error::NoAccidentalLevel { .. } => FailureKind::Spec,
            Error::InvalidExcitation { .. }
            | Error::InvalidLabel { .. }
            | Error::DuplicateLabel
            | Error::InvalidParameter(_) => FailureKind::Usage,
            _ => FailureKind::Compute,
        };
        let details = match &e {
            Error::InvalidSpec(v) => v.iter().map(ToString::to_string).collect(),
            _ => Vec::new(),
        };
        Self { kind, message: e.to_string(), details }
    }
}

/// 17 significant digits, enough to round-trip any f64.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn opt_float(x: Option<f64>) -> String {
    x.map(float).unwrap_or_default()
}

/// Space-separated labels, so the field never needs CSV quoting.
pub fn labels(ls: &[usize]) -> String {
    ls.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

pub struct Csv {
    writer: csv::Writer<Vec<u8>>,
}

impl Csv {
    pub fn new(header: &[&str]) -> Result<Self, Failure> {
        let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        writer.write_record(header).map_err(Failure::internal)?;
        Ok(Self { writer })
    }

    pub fn row<I, S>(&mut self, fields: I) -> Result<(), Failure>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.writer.write_record(fields).map_err(Failure::internal)
    }

    pub fn finish(self) -> Result<String, Failure> {
        let bytes = self.writer.into_inner().map_err(Failure::internal)?;
        String::from_utf8(bytes).map_err(Failure::internal)
    }
}
