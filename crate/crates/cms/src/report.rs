use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::Serialize;
use serde_json::Value;

use crate::suites::Verdict;

pub const SCHEMA: &str = "cms-report/1";

/// Output of one command; identical inputs give identical bytes unless
/// timing is requested.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub n: usize,
    pub m: usize,
    pub inputs: BTreeMap<String, Value>,
    pub outputs: BTreeMap<String, Value>,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
    #[serde(skip)]
    pub diagram: Option<String>,
}

impl Report {
    pub fn new(command: impl Into<String>, n: usize, m: usize) -> Report {
        Report {
            schema: SCHEMA,
            command: command.into(),
            n,
            m,
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
            verdicts: Vec::new(),
            error: None,
            timing_ms: None,
            diagram: None,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn output(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.outputs.insert(key.to_string(), value.into());
        self
    }

    pub fn verdict(&mut self, property: &str, passed: bool) -> &mut Self {
        self.verdicts.push(Verdict {
            property: property.to_string(),
            passed,
            checked: 1,
            counterexample: None,
        });
        self
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(plain).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        writeln!(s, "# {}", self.schema)?;
        writeln!(s, "command: {}", self.command)?;
        writeln!(s, "(n, m) = ({}, {})", self.n, self.m)?;
        for (k, v) in &self.inputs {
            writeln!(s, "input {k}: {}", plain(v))?;
        }
        for (k, v) in &self.outputs {
            writeln!(s, "{k}: {}", plain(v))?;
        }
        for v in &self.verdicts {
            write!(
                s,
                "{} {}",
                if v.passed { "pass" } else { "FAIL" },
                v.property
            )?;
            if v.checked != 1 {
                write!(s, " ({} checked)", v.checked)?;
            }
            if let Some(c) = &v.counterexample {
                write!(s, ": {c}")?;
            }
            writeln!(s)?;
        }
        if let Some(e) = &self.error {
            writeln!(s, "error: {e}")?;
        }
        if let Some(t) = self.timing_ms {
            writeln!(s, "time: {t} ms")?;
        }
        if let Some(d) = &self.diagram {
            writeln!(s)?;
            s.push_str(d);
        }
        f.write_str(&s)
    }
}
