//! Problem documents (JSON), their execution, and reports.
//!
//! The schema is described in `docs/schema.md`. Parsing collects every
//! section error with its JSON path before anything runs.

pub mod emit;
pub mod expr;
mod run;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::suite::SuiteConfig;

pub use emit::{emit, Format};
pub use run::run;

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_PRECISION: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "kebab-case")]
pub enum RingPreset {
    /// F_q.
    Fq { q: u32 },
    /// F_{q^m} over F_q, generator `x`.
    Extension { q: u32, m: usize },
    /// F_q[var]/(var^n).
    Truncated {
        q: u32,
        n: usize,
        #[serde(default = "default_var")]
        var: String,
    },
    /// F_q[u, v]/(u^a, v^b, uv).
    Bivariate {
        q: u32,
        a: usize,
        b: usize,
        #[serde(default = "default_vars")]
        vars: (String, String),
    },
    /// Explicit structure constants: `consts[i][j]` are the coordinates of b_i·b_j.
    Structure { q: u32, names: Vec<String>, consts: Vec<Vec<Vec<u32>>> },
}

fn default_var() -> String {
    "u".into()
}

fn default_vars() -> (String, String) {
    ("u".into(), "v".into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ZetaSpec {
    Expr(String),
    Coords(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    #[serde(flatten)]
    pub preset: RingPreset,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta: Option<ZetaSpec>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Record wall-clock times per command (breaks byte-identical reports).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<bool>,
}

impl Options {
    /// Fields of `over` take precedence.
    pub fn overlay(&self, over: &Options) -> Options {
        Options {
            precision: over.precision.or(self.precision),
            d_max: over.d_max.or(self.d_max),
            e_max: over.e_max.or(self.e_max),
            seed: over.seed.or(self.seed),
            timings: over.timings.or(self.timings),
        }
    }

    pub fn resolve(&self) -> Resolved {
        let precision = self.precision.unwrap_or(DEFAULT_PRECISION);
        Resolved {
            precision,
            d_max: self.d_max.unwrap_or(crate::anderson::DEFAULT_D_MAX).min(precision / 2),
            e_max: self.e_max,
            seed: self.seed.unwrap_or(crate::random::DEFAULT_SEED),
            timings: self.timings.unwrap_or(false),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resolved {
    pub precision: usize,
    pub d_max: usize,
    pub e_max: Option<usize>,
    pub seed: u64,
    pub timings: bool,
}

impl Resolved {
    pub fn suite_config(&self) -> SuiteConfig {
        SuiteConfig { seed: self.seed, d_max: self.d_max.max(2), e_max: self.e_max, ..SuiteConfig::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ObjectSpec {
    /// A finite shtuka; entries are elements of R.
    Finite { matrix: Vec<Vec<String>> },
    /// A local shtuka (z − ζ)^twist·matrix; entries are series in z.
    Local {
        matrix: Vec<Vec<String>>,
        #[serde(default)]
        twist: i64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        precision: Option<usize>,
    },
    /// Lifting data: a local shtuka over R/I (entries read in R and reduced)
    /// and generators of a filtration of (R[z]/(z − ζ)^d)^r.
    Deformation { ideal: Vec<String>, small: Vec<Vec<String>>, d: usize, fil: Vec<Vec<String>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TestSpec {
    /// R itself.
    Base,
    /// F_{q^m}.
    Field(usize),
    /// F_{q^m}[eps]/(eps^n).
    Thickened { m: usize, n: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Command {
    ValidateRing,
    Order { object: String },
    Points {
        object: String,
        test: TestSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        level: Option<usize>,
    },
    Radicial { object: String },
    Colie { object: String },
    Nilpotence { object: String },
    Decompose { object: String },
    Verschiebung {
        object: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        d: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        c: Option<String>,
    },
    Primitives { object: String },
    Roundtrip { object: String },
    Balanced { object: String },
    Strictness { family: String, q: u32 },
    MuP { p: u32 },
    Monoidal {
        operation: String,
        a: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        b: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        store: Option<String>,
    },
    Boundedness { object: String, d: usize },
    Divide { series: String, d: usize },
    Truncate { object: String, n: usize },
    Sequence { object: String, n: usize, m: usize },
    Tower { object: String, n_max: usize },
    Omega { object: String, n_max: usize },
    FrobeniusKernel {
        object: String,
        i: usize,
        test: TestSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n_max: Option<usize>,
    },
    ZdVerschiebung { object: String, d: usize },
    Hodge { object: String, d: usize },
    Deform { object: String },
    VerifyPaper {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        criteria: Option<Vec<u8>>,
    },
}

impl Command {
    /// Object names the command reads.
    pub fn references(&self) -> Vec<&str> {
        use Command::*;
        match self {
            Order { object }
            | Points { object, .. }
            | Radicial { object }
            | Colie { object }
            | Nilpotence { object }
            | Decompose { object }
            | Verschiebung { object, .. }
            | Primitives { object }
            | Roundtrip { object }
            | Balanced { object }
            | Boundedness { object, .. }
            | Truncate { object, .. }
            | Sequence { object, .. }
            | Tower { object, .. }
            | Omega { object, .. }
            | FrobeniusKernel { object, .. }
            | ZdVerschiebung { object, .. }
            | Hodge { object, .. }
            | Deform { object } => vec![object],
            Monoidal { a, b, .. } => std::iter::once(a.as_str()).chain(b.as_deref()).collect(),
            ValidateRing | Strictness { .. } | MuP { .. } | Divide { .. } | VerifyPaper { .. } => vec![],
        }
    }

    pub fn name(&self) -> String {
        match serde_json::to_value(self).ok().and_then(|v| v.get("op").cloned()) {
            Some(Value::String(s)) => s,
            _ => "?".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemDocument {
    pub version: u32,
    pub ring: RingSpec,
    #[serde(default)]
    pub options: Options,
    #[serde(default)]
    pub objects: BTreeMap<String, ObjectSpec>,
    #[serde(default)]
    pub commands: Vec<Command>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemaIssue {
    /// JSON path, e.g. `commands[2]`.
    pub path: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DocError {
    Syntax { line: usize, column: usize, message: String },
    Schema(Vec<SchemaIssue>),
    UnresolvedReference { path: String, name: String },
    /// The ring or an object failed validation before any command ran.
    Validation { path: String, message: String },
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocError::Syntax { line, column, message } => write!(f, "syntax error at {line}:{column}: {message}"),
            DocError::Schema(issues) => {
                write!(f, "schema errors:")?;
                for i in issues {
                    write!(f, "\n  {}: {}", i.path, i.message)?;
                }
                Ok(())
            }
            DocError::UnresolvedReference { path, name } => write!(f, "{path}: unresolved reference {name:?}"),
            DocError::Validation { path, message } => write!(f, "{path}: {message}"),
        }
    }
}

impl std::error::Error for DocError {}

fn section<T: serde::de::DeserializeOwned>(v: &Value, path: String, issues: &mut Vec<SchemaIssue>) -> Option<T> {
    match serde_json::from_value(v.clone()) {
        Ok(x) => Some(x),
        Err(e) => {
            issues.push(SchemaIssue { path, message: e.to_string() });
            None
        }
    }
}

/// Parses and checks a document: syntax, then every section against the
/// schema, then object references in command order.
pub fn parse(text: &str) -> std::result::Result<ProblemDocument, DocError> {
    let v: Value = serde_json::from_str(text).map_err(|e| DocError::Syntax { line: e.line(), column: e.column(), message: e.to_string() })?;
    let Value::Object(top) = &v else {
        return Err(DocError::Schema(vec![SchemaIssue { path: "$".into(), message: "a document is a JSON object".into() }]));
    };
    let mut issues = vec![];
    for key in top.keys() {
        if !["version", "ring", "options", "objects", "commands"].contains(&key.as_str()) {
            issues.push(SchemaIssue { path: key.clone(), message: "unknown section".into() });
        }
    }
    let version = match top.get("version") {
        Some(x) => section::<u32>(x, "version".into(), &mut issues),
        None => Some(SCHEMA_VERSION),
    };
    if let Some(ver) = version {
        if ver != SCHEMA_VERSION {
            issues.push(SchemaIssue { path: "version".into(), message: format!("unsupported version {ver}, expected {SCHEMA_VERSION}") });
        }
    }
    let ring = match top.get("ring") {
        Some(x) => section::<RingSpec>(x, "ring".into(), &mut issues),
        None => {
            issues.push(SchemaIssue { path: "ring".into(), message: "missing".into() });
            None
        }
    };
    let options = top.get("options").map_or(Some(Options::default()), |x| section(x, "options".into(), &mut issues));
    let mut objects = BTreeMap::new();
    match top.get("objects") {
        None => {}
        Some(Value::Object(m)) => {
            for (name, o) in m {
                if let Some(spec) = section::<ObjectSpec>(o, format!("objects.{name}"), &mut issues) {
                    objects.insert(name.clone(), spec);
                }
            }
        }
        Some(_) => issues.push(SchemaIssue { path: "objects".into(), message: "expected an object".into() }),
    }
    let mut commands = vec![];
    match top.get("commands") {
        None => {}
        Some(Value::Array(cs)) => {
            for (i, c) in cs.iter().enumerate() {
                if let Some(cmd) = section::<Command>(c, format!("commands[{i}]"), &mut issues) {
                    commands.push(cmd);
                }
            }
        }
        Some(_) => issues.push(SchemaIssue { path: "commands".into(), message: "expected an array".into() }),
    }
    if !issues.is_empty() {
        return Err(DocError::Schema(issues));
    }
    let doc = ProblemDocument { version: SCHEMA_VERSION, ring: ring.unwrap(), options: options.unwrap(), objects, commands };
    let mut known: Vec<String> = doc.objects.keys().cloned().collect();
    for (i, c) in doc.commands.iter().enumerate() {
        if let Some(name) = c.references().into_iter().find(|n| !known.iter().any(|k| k == n)) {
            return Err(DocError::UnresolvedReference { path: format!("commands[{i}]"), name: name.to_string() });
        }
        if let Command::Monoidal { store: Some(s), .. } = c {
            known.push(s.clone());
        }
    }
    Ok(doc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub tool: String,
    pub version: String,
    pub schema: u32,
    pub options: Resolved,
}

impl Header {
    pub fn new(options: Resolved) -> Self {
        Header { tool: "shtuka".into(), version: env!("CARGO_PKG_VERSION").into(), schema: SCHEMA_VERSION, options }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommandResult {
    pub index: usize,
    pub op: String,
    /// The command as given.
    pub input: Value,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_us: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub header: Header,
    pub results: Vec<CommandResult>,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.results.iter().any(|r| r.status == Status::Failed)
    }

    /// Reads a structured report back.
    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "ring": {"preset": "fq", "q": 2},
        "objects": {"sh": {"kind": "local", "matrix": [["z"]]}},
        "commands": [{"op": "tower", "object": "sh", "n_max": 2}]
    }"#;

    #[test]
    fn parse_minimal() {
        let doc = parse(MINIMAL).unwrap();
        assert_eq!(doc.commands.len(), 1);
        assert_eq!(doc.commands[0].name(), "tower");
    }

    #[test]
    fn dangling_reference() {
        let text = MINIMAL.replace(r#""object": "sh""#, r#""object": "nope""#);
        assert_eq!(parse(&text), Err(DocError::UnresolvedReference { path: "commands[0]".into(), name: "nope".into() }));
    }

    #[test]
    fn schema_errors_are_collected() {
        let text = r#"{"ring": {"preset": "fq"}, "commands": [{"op": "tower"}, {"op": "teleport"}]}"#;
        let Err(DocError::Schema(issues)) = parse(text) else { panic!() };
        let paths: Vec<&str> = issues.iter().map(|i| i.path.as_str()).collect();
        assert_eq!(paths, ["ring", "commands[0]", "commands[1]"]);
        assert!(matches!(parse("{\"ring\": "), Err(DocError::Syntax { line: 1, .. })));
    }
}
