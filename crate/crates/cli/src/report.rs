use std::collections::BTreeMap;
use std::fmt::Write as _;

use ncg_core::{NcgError, C64};
use serde::{Deserialize, Serialize};

/// A complex number as `[re, im]`.
pub type Complex = [f64; 2];

pub fn complex(z: C64) -> Complex {
    [z.re, z.im]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Value {
    Count(u64),
    Real(f64),
    Complex(Complex),
    Text(String),
    Matrix(Vec<Vec<Complex>>),
    Tensor3(Vec<Vec<Vec<Complex>>>),
}

impl Value {
    pub fn matrix3(m: &[[C64; 3]; 3]) -> Self {
        Value::Matrix(
            m.iter()
                .map(|r| r.iter().map(|&z| complex(z)).collect())
                .collect(),
        )
    }

    pub fn tensor3(t: &[[[C64; 3]; 3]; 3]) -> Self {
        Value::Tensor3(
            t.iter()
                .map(|m| {
                    m.iter()
                        .map(|r| r.iter().map(|&z| complex(z)).collect())
                        .collect()
                })
                .collect(),
        )
    }

    fn short(&self) -> String {
        match self {
            Value::Count(n) => n.to_string(),
            Value::Real(x) => format!("{x:.6e}"),
            Value::Complex([re, im]) => format!("{re:.6} {im:+.6}i"),
            Value::Text(s) => s.clone(),
            Value::Matrix(m) => format!("{}x{} matrix", m.len(), m.first().map_or(0, Vec::len)),
            Value::Tensor3(t) => format!("{}x3x3 tensor", t.len()),
        }
    }
}

/// A residual together with the tolerance it was judged against.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Defect {
    pub value: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
}

impl From<&NcgError> for ErrorInfo {
    fn from(e: &NcgError) -> Self {
        let kind = match e {
            NcgError::SingularSystem { .. } => "singular_system",
            NcgError::Feasibility { .. } => "feasibility",
            NcgError::Representation { .. } => "representation",
            NcgError::NonCentralRicci { .. } => "non_central_ricci",
            NcgError::InvalidMetric(_) => "invalid_metric",
            NcgError::Shape(_) => "shape",
            NcgError::UnknownStrategy(_) => "unknown_strategy",
        };
        ErrorInfo {
            kind: kind.to_owned(),
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<Vec<Complex>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connection: Option<String>,
    pub orientation: String,
    pub results: BTreeMap<String, Value>,
    pub defects: BTreeMap<String, Defect>,
    pub checks: BTreeMap<String, bool>,
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: &str, n: usize, orientation: &str) -> Self {
        Report {
            command: command.to_owned(),
            n,
            metric: None,
            connection: None,
            orientation: orientation.to_owned(),
            results: BTreeMap::new(),
            defects: BTreeMap::new(),
            checks: BTreeMap::new(),
            tolerances: BTreeMap::new(),
            error: None,
            pass: true,
        }
    }

    pub fn result(&mut self, name: &str, value: Value) {
        self.results.insert(name.to_owned(), value);
    }

    pub fn defect(&mut self, name: &str, value: f64, tol: f64) {
        let pass = value.is_finite() && value < tol;
        self.defects
            .insert(name.to_owned(), Defect { value, tol, pass });
        self.tolerances.insert(name.to_owned(), tol);
    }

    pub fn check(&mut self, name: &str, pass: bool) {
        self.checks.insert(name.to_owned(), pass);
    }

    pub fn fail_with(&mut self, e: &NcgError) {
        self.error = Some(ErrorInfo::from(e));
    }

    /// Recompute the overall flag from the individual ones.
    pub fn finalize(&mut self) {
        self.pass = self.error.is_none()
            && self.defects.values().all(|d| d.pass)
            && self.checks.values().all(|&c| c);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} (N = {})", self.command, self.n);
        if let Some(conn) = &self.connection {
            let _ = writeln!(out, "connection: {conn}");
        }
        for (name, value) in &self.results {
            let _ = writeln!(out, "  {name:<32} {}", value.short());
        }
        for (name, d) in &self.defects {
            let verdict = if d.pass { "ok" } else { "FAIL" };
            let _ = writeln!(
                out,
                "  {name:<32} {:.3e} < {:.1e}  {verdict}",
                d.value, d.tol
            );
        }
        for (name, &ok) in &self.checks {
            let _ = writeln!(out, "  {name:<32} {}", if ok { "ok" } else { "FAIL" });
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "  error: {} ({})", e.message, e.kind);
        }
        let _ = writeln!(out, "pass: {}", self.pass);
        out
    }
}
