//! Scene files: a JSON bundle of states, projectors, contexts and queries.
//!
//! ```json
//! {
//!   "schema": 1,
//!   "dimension": 2,
//!   "states": [{ "name": "e1", "amplitudes": [[1, 0], [0, 0]] }],
//!   "projectors": [
//!     { "name": "z+", "axis": [0, 0, 1], "sign": "+" },
//!     { "name": "z-", "basis": [[[0, 0], [1, 0]]] },
//!     { "name": "x+", "matrix": [[[0.5, 0], [0.5, 0]], [[0.5, 0], [0.5, 0]]] }
//!   ],
//!   "contexts": [{ "name": "Z", "members": ["z+", "z-"] }],
//!   "queries": [{ "semantics": "hilbert", "expression": "z+", "state": "e1" }]
//! }
//! ```
//!
//! Complex numbers are `[re, im]` pairs. Unknown fields are rejected. A
//! projector may carry its own `dimension` (for gap queries whose factors live
//! on tensor factors of the scene space); everything else uses the scene
//! dimension.

use std::collections::{BTreeMap, BTreeSet};

use serde::Deserialize;
use thiserror::Error;

use crate::contexts::{Context, ContextError, ContextSet};
use crate::numerics::{c, ComplexMatrix, ComplexVector, Tolerance};
use crate::qubit_model::{spin_projector, Axis, Sign};
use crate::subspaces::{Projector, StateVector, Subspace};
use crate::valuation::{Atoms, PropExpr};

pub const SCHEMA_VERSION: u32 = 1;

pub type Complex = [f64; 2];

#[derive(Debug, Error)]
pub enum SceneError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported schema version {0} (expected {SCHEMA_VERSION})")]
    Schema(u32),
    #[error("query {index}: {source}")]
    Expression {
        index: usize,
        #[source]
        source: crate::valuation::ParseError,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    pub schema: u32,
    pub dimension: usize,
    #[serde(default)]
    pub states: Vec<StateSpec>,
    #[serde(default)]
    pub projectors: Vec<ProjectorSpec>,
    #[serde(default)]
    pub contexts: Vec<ContextSpec>,
    #[serde(default)]
    pub queries: Vec<QuerySpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpec {
    pub name: String,
    pub amplitudes: Vec<Complex>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum SignSpec {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectorSpec {
    pub name: String,
    #[serde(default)]
    pub dimension: Option<usize>,
    #[serde(default)]
    pub matrix: Option<Vec<Vec<Complex>>>,
    #[serde(default)]
    pub basis: Option<Vec<Vec<Complex>>>,
    #[serde(default)]
    pub axis: Option<[f64; 3]>,
    #[serde(default)]
    pub sign: Option<SignSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextSpec {
    pub name: String,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SemanticsSpec {
    Hilbert,
    Admissible,
    Superval,
    Gap,
}

impl SemanticsSpec {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Hilbert => "hilbert",
            Self::Admissible => "admissible",
            Self::Superval => "superval",
            Self::Gap => "gap",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuerySpec {
    pub semantics: SemanticsSpec,
    pub expression: String,
    pub state: String,
    #[serde(default)]
    pub contexts: Vec<String>,
    /// Also report the bivaluation measure (0, 1 or undefined).
    #[serde(default)]
    pub measure: bool,
}

/// A validation finding from [`SceneFile::resolve`].
#[derive(Debug, Clone, PartialEq)]
pub struct Issue {
    pub kind: &'static str,
    pub name: String,
    pub message: String,
}

impl std::fmt::Display for Issue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} `{}`: {}", self.kind, self.name, self.message)
    }
}

/// A parsed query with its expression tree.
#[derive(Debug, Clone)]
pub struct Query {
    pub spec: QuerySpec,
    pub expr: PropExpr,
}

/// Scene with every object built and validated.
#[derive(Debug, Clone)]
pub struct Scene {
    pub dimension: usize,
    pub states: BTreeMap<String, StateVector>,
    pub projectors: BTreeMap<String, Projector>,
    pub contexts: Vec<Context>,
    pub queries: Vec<Query>,
}

fn complex_vector(entries: &[Complex]) -> ComplexVector {
    ComplexVector::from_iterator(entries.len(), entries.iter().map(|z| c(z[0], z[1])))
}

impl SceneFile {
    /// Parses JSON; syntax, schema and expression errors are input errors.
    pub fn parse(text: &str) -> Result<Self, SceneError> {
        let file: SceneFile = serde_json::from_str(text).map_err(|e| {
            let full = e.to_string();
            let suffix = format!(" at line {} column {}", e.line(), e.column());
            SceneError::Syntax {
                line: e.line(),
                column: e.column(),
                message: full.strip_suffix(&suffix).unwrap_or(&full).to_string(),
            }
        })?;
        if file.schema != SCHEMA_VERSION {
            return Err(SceneError::Schema(file.schema));
        }
        for (index, q) in file.queries.iter().enumerate() {
            q.expression
                .parse::<PropExpr>()
                .map_err(|source| SceneError::Expression { index, source })?;
        }
        Ok(file)
    }

    /// Builds every object, collecting validation issues instead of stopping
    /// at the first.
    pub fn resolve(&self, tol: Tolerance) -> (Scene, Vec<Issue>) {
        let mut issues = Vec::new();
        let mut issue = |kind, name: &str, message: String| {
            issues.push(Issue {
                kind,
                name: name.to_string(),
                message,
            })
        };
        let dim = self.dimension;
        if dim == 0 {
            issue("scene", "dimension", "dimension must be positive".into());
        }

        let mut states = BTreeMap::new();
        for s in &self.states {
            if states.contains_key(&s.name) {
                issue("state", &s.name, "duplicate name".into());
                continue;
            }
            if s.amplitudes.len() != dim {
                issue(
                    "state",
                    &s.name,
                    format!(
                        "has {} amplitudes, scene dimension is {dim}",
                        s.amplitudes.len()
                    ),
                );
                continue;
            }
            match StateVector::new(complex_vector(&s.amplitudes), tol) {
                Ok(v) => {
                    states.insert(s.name.clone(), v);
                }
                Err(e) => issue("state", &s.name, e.to_string()),
            }
        }

        let mut projectors = BTreeMap::new();
        for p in &self.projectors {
            if projectors.contains_key(&p.name) {
                issue("projector", &p.name, "duplicate name".into());
                continue;
            }
            match build_projector(p, dim, tol) {
                Ok(proj) => {
                    projectors.insert(p.name.clone(), proj);
                }
                Err(message) => issue("projector", &p.name, message),
            }
        }

        let mut contexts = Vec::new();
        let mut context_names = BTreeSet::new();
        for spec in &self.contexts {
            if !context_names.insert(spec.name.clone()) {
                issue("context", &spec.name, "duplicate name".into());
                continue;
            }
            let mut members = Vec::new();
            let mut complete = true;
            for label in &spec.members {
                match projectors.get(label) {
                    Some(p) if p.dim() == dim => members.push((label.clone(), p.clone())),
                    Some(p) => {
                        complete = false;
                        issue(
                            "context",
                            &spec.name,
                            format!("member `{label}` lives on C^{}, scene is C^{dim}", p.dim()),
                        );
                    }
                    None => {
                        complete = false;
                        issue("context", &spec.name, format!("unknown member `{label}`"));
                    }
                }
            }
            if !complete {
                continue;
            }
            match Context::new(spec.name.clone(), members, tol) {
                Ok(ctx) => contexts.push(ctx),
                Err(ContextError::Invalid { report, .. }) => {
                    for failure in report.failures() {
                        issue("context", &spec.name, failure);
                    }
                }
                Err(e) => issue("context", &spec.name, e.to_string()),
            }
        }

        let mut queries = Vec::new();
        for (index, q) in self.queries.iter().enumerate() {
            let name = format!("#{index}");
            let Ok(expr) = q.expression.parse::<PropExpr>() else {
                issue("query", &name, "expression does not parse".into());
                continue;
            };
            if !states.contains_key(&q.state) {
                issue("query", &name, format!("unknown state `{}`", q.state));
            }
            for atom in expr.atoms() {
                if !projectors.contains_key(atom) {
                    issue("query", &name, format!("unknown projector `{atom}`"));
                }
            }
            for ctx in &q.contexts {
                if !context_names.contains(ctx) {
                    issue("query", &name, format!("unknown context `{ctx}`"));
                }
            }
            queries.push(Query {
                spec: q.clone(),
                expr,
            });
        }

        (
            Scene {
                dimension: dim,
                states,
                projectors,
                contexts,
                queries,
            },
            issues,
        )
    }
}

fn build_projector(
    p: &ProjectorSpec,
    scene_dim: usize,
    tol: Tolerance,
) -> Result<Projector, String> {
    let dim = p.dimension.unwrap_or(scene_dim);
    if dim == 0 {
        return Err("dimension must be positive".into());
    }
    let given = [p.matrix.is_some(), p.basis.is_some(), p.axis.is_some()];
    if given.iter().filter(|&&b| b).count() != 1 {
        return Err("give exactly one of `matrix`, `basis` or `axis`".into());
    }
    if p.sign.is_some() && p.axis.is_none() {
        return Err("`sign` only applies to `axis` projectors".into());
    }
    if let Some(rows) = &p.matrix {
        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
            return Err(format!("matrix must be {dim}x{dim}"));
        }
        let m = ComplexMatrix::from_fn(dim, dim, |i, j| c(rows[i][j][0], rows[i][j][1]));
        return Projector::new(m, tol).map_err(|e| e.to_string());
    }
    if let Some(vectors) = &p.basis {
        let vs: Vec<_> = vectors.iter().map(|v| complex_vector(v)).collect();
        if let Some(v) = vs.iter().find(|v| v.len() != dim) {
            return Err(format!(
                "basis vector has {} entries, expected {dim}",
                v.len()
            ));
        }
        return Projector::from_span(dim, &vs, tol).map_err(|e| e.to_string());
    }
    let axis = p.axis.expect("checked above");
    if dim != 2 {
        return Err("axis shorthand needs dimension 2".into());
    }
    let sign = match p.sign {
        Some(SignSpec::Plus) => Sign::Plus,
        Some(SignSpec::Minus) => Sign::Minus,
        None => return Err("axis projector needs a `sign`".into()),
    };
    let axis = Axis::new(axis, tol).map_err(|e| e.to_string())?;
    Ok(spin_projector(&axis, sign))
}

impl Scene {
    pub fn context(&self, name: &str) -> Option<&Context> {
        self.contexts.iter().find(|c| c.name() == name)
    }

    /// The named contexts, in the order given.
    pub fn context_set(&self, names: &[String]) -> Result<ContextSet, ContextError> {
        let chosen = names
            .iter()
            .filter_map(|n| self.context(n).cloned())
            .collect();
        ContextSet::new(chosen)
    }

    /// Projectors on the scene dimension, as atoms.
    pub fn atoms(&self) -> Atoms {
        self.projectors
            .iter()
            .map(|(name, p)| (name.clone(), Subspace::from(p.clone())))
            .collect()
    }
}
