//! JSON documents, CSV tables and exit codes.

use std::path::Path;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use fixtrace_core::Error;
use serde_json::{json, Map, Value};

pub struct SeedInfo {
    pub value: u64,
    /// "flag", "environment" or "default".
    pub source: &'static str,
    /// Raw FIXTRACE_SEED, echoed whether or not it was used.
    pub env: Option<String>,
}

/// One JSON document per run. Keys are emitted in sorted order, so two runs
/// with the same inputs differ only in `timestamp`.
pub struct Document {
    command: &'static str,
    parameters: Value,
    route: Option<String>,
    seed: Option<SeedInfo>,
    algorithms: Value,
    result: Value,
}

impl Document {
    pub fn new(command: &'static str) -> Self {
        Self {
            command,
            parameters: json!({}),
            route: None,
            seed: None,
            algorithms: json!({}),
            result: Value::Null,
        }
    }

    pub fn parameters(mut self, v: Value) -> Self {
        self.parameters = v;
        self
    }

    pub fn add_parameter(&mut self, key: &str, v: Value) {
        if let Value::Object(m) = &mut self.parameters {
            m.insert(key.to_string(), v);
        }
    }

    pub fn route(mut self, r: impl ToString) -> Self {
        let s = r.to_string();
        // serde renders enum routes as quoted JSON strings
        self.route = Some(s.trim_matches('"').to_string());
        self
    }

    pub fn seed(mut self, s: SeedInfo) -> Self {
        self.seed = Some(s);
        self
    }

    pub fn algorithms(mut self, v: Value) -> Self {
        self.algorithms = v;
        self
    }

    pub fn result(mut self, v: Value) -> Self {
        self.result = v;
        self
    }

    pub fn to_value(&self) -> Value {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let mut v = json!({
            "tool": "fixtrace",
            "version": env!("CARGO_PKG_VERSION"),
            "timestamp": timestamp,
            "command": self.command,
            "parameters": self.parameters,
            "algorithms": self.algorithms,
            "result": self.result,
            "env_seed": std::env::var("FIXTRACE_SEED").ok(),
        });
        if let Some(r) = &self.route {
            v["route"] = json!(r);
        }
        if let Some(s) = &self.seed {
            v["seed"] = json!({"value": s.value, "source": s.source});
            v["env_seed"] = json!(s.env);
        }
        sorted(v)
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("JSON values always serialise")
    }
}

fn sorted(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut entries: Vec<(String, Value)> = m.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            let mut out = Map::new();
            for (k, x) in entries {
                out.insert(k, sorted(x));
            }
            Value::Object(out)
        }
        Value::Array(xs) => Value::Array(xs.into_iter().map(sorted).collect()),
        other => other,
    }
}

pub enum Failure {
    Library(Error),
    /// The run completed but a check failed; the document is still printed.
    Verification(Document),
}

impl Failure {
    pub fn internal(e: impl std::fmt::Display) -> Self {
        Failure::Library(Error::Inconsistent(e.to_string()))
    }

    pub fn report(self) -> ExitCode {
        match self {
            Failure::Library(e) => {
                eprintln!("error: {e}");
                ExitCode::from(exit_code(&e))
            }
            Failure::Verification(doc) => {
                println!("{}", doc.render());
                eprintln!("verification failed");
                ExitCode::from(3)
            }
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

/// 2 for parameter and I/O faults, 4 for internal-consistency faults.
pub fn exit_code(e: &Error) -> u8 {
    if e.is_domain() || matches!(e, Error::Io(_)) {
        2
    } else {
        4
    }
}

pub fn write_rows(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<(), Failure> {
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::Io(e.to_string()))?;
    w.write_record(header).map_err(|e| Error::Io(e.to_string()))?;
    for r in rows {
        w.write_record(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush().map_err(Error::from)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted_at_every_level() {
        let v = sorted(json!({"b": 1, "a": {"z": 0, "y": [{"d": 1, "c": 2}]}}));
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"a":{"y":[{"c":2,"d":1}],"z":0},"b":1}"#);
    }

    #[test]
    fn error_families_map_to_exit_codes() {
        assert_eq!(exit_code(&Error::Domain("x".into())), 2);
        assert_eq!(exit_code(&Error::Io("x".into())), 2);
        assert_eq!(exit_code(&Error::Inconsistent("x".into())), 4);
        assert_eq!(exit_code(&Error::Convergence { iterations: 3 }), 4);
    }
}
