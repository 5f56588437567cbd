//! Commands behind the `qprop` binary.
//!
//! Each command returns an [`Outcome`] holding what to print and the exit
//! code, so the binary stays a thin shell and tests can call commands
//! directly. Exit codes: 0 all checks pass, 1 semantic failure, 2 input error.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::contexts::generated_lattice;
use crate::numerics::Tolerance;
use crate::qubit_model::{run_two_state_demo, DemoReport, ModelConfig};
use crate::scene::{Query, Scene, SceneError, SceneFile, SemanticsSpec};
use crate::subspaces::Subspace;
use crate::valuation::{
    evaluate_admissible, evaluate_hilbert, evaluate_supervaluation, hilbert_subspace, resolve_gap,
    Measure, PropExpr, TruthValue, ValuationError, ValueSet,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Largest context `lattice` will enumerate.
pub const MAX_LISTED_MEMBERS: usize = 12;
/// Contexts up to this size get the exhaustive distributivity scan.
pub const MAX_DISTRIBUTIVE_MEMBERS: usize = 4;

pub const EPS_ENV: &str = "QPROP_EPS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn input_error(message: impl Into<String>) -> Self {
        Self {
            stderr: message.into() + "\n",
            code: EXIT_INPUT,
            ..Self::default()
        }
    }

    fn failure(message: impl Into<String>) -> Self {
        Self {
            stderr: message.into() + "\n",
            code: EXIT_FAILURE,
            ..Self::default()
        }
    }
}

/// `--eps` wins over `QPROP_EPS`, which wins over the default.
pub fn resolve_tolerance(flag: Option<f64>, env: Option<&str>) -> Result<Tolerance, String> {
    let eps = match (flag, env) {
        (Some(eps), _) => eps,
        (None, Some(text)) => text
            .trim()
            .parse::<f64>()
            .map_err(|_| format!("{EPS_ENV}=`{text}` is not a number"))?,
        (None, None) => return Ok(Tolerance::default()),
    };
    Tolerance::new(eps).map_err(|e| e.to_string())
}

fn load(path: &Path, tol: Tolerance) -> Result<(Scene, Vec<crate::scene::Issue>), Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::input_error(format!("{}: {e}", path.display())))?;
    let file = SceneFile::parse(&text).map_err(|e| match e {
        SceneError::Syntax { .. } | SceneError::Schema(_) | SceneError::Expression { .. } => {
            Outcome::input_error(format!("{}: {e}", path.display()))
        }
    })?;
    Ok(file.resolve(tol))
}

fn load_valid(path: &Path, tol: Tolerance) -> Result<Scene, Outcome> {
    let (scene, issues) = load(path, tol)?;
    if issues.is_empty() {
        Ok(scene)
    } else {
        let mut err = String::new();
        for issue in &issues {
            let _ = writeln!(err, "{issue}");
        }
        Err(Outcome {
            stderr: err,
            code: EXIT_FAILURE,
            ..Outcome::default()
        })
    }
}

pub fn cmd_check(path: &Path, tol: Tolerance) -> Outcome {
    let (scene, issues) = match load(path, tol) {
        Ok(loaded) => loaded,
        Err(outcome) => return outcome,
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        "scene C^{}: {} states, {} projectors, {} contexts, {} queries",
        scene.dimension,
        scene.states.len(),
        scene.projectors.len(),
        scene.contexts.len(),
        scene.queries.len()
    );
    for issue in &issues {
        let _ = writeln!(out, "FAIL {issue}");
    }
    let _ = writeln!(
        out,
        "{}",
        if issues.is_empty() {
            "status: pass".to_string()
        } else {
            format!("status: fail ({} issues)", issues.len())
        }
    );
    Outcome {
        stdout: out,
        stderr: String::new(),
        code: if issues.is_empty() {
            EXIT_OK
        } else {
            EXIT_FAILURE
        },
    }
}

/// One line of an `eval` report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QueryRecord {
    pub index: usize,
    pub semantics: &'static str,
    pub expression: String,
    pub state: String,
    pub contexts: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<TruthValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value_set: Option<ValueSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measure: Option<Measure>,
    /// `‖Q·ψ − ψ‖` for Hilbert queries.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn answer(
    scene: &Scene,
    q: &Query,
    record: &mut QueryRecord,
    tol: Tolerance,
) -> Result<(), ValuationError> {
    let state = &scene.states[&q.spec.state];
    let contexts = scene.context_set(&q.spec.contexts)?;
    match q.spec.semantics {
        SemanticsSpec::Hilbert => {
            let s = hilbert_subspace(&q.expr, &scene.atoms(), tol)?;
            let v = evaluate_hilbert(&s, state, tol)?;
            record.residual =
                Some((s.projector().apply(state.amplitudes()) - state.amplitudes()).norm());
            record.value = Some(v);
        }
        SemanticsSpec::Admissible => {
            let PropExpr::Atom(name) = &q.expr else {
                record.error = Some("admissible queries take a single projector name".into());
                return Ok(());
            };
            let verdict = evaluate_admissible(name, state, &contexts, tol)?;
            record.warnings.extend(verdict.warnings);
            if verdict.contexts_disagree {
                record
                    .warnings
                    .push("contexts of the projector disagree on admissibility".into());
            }
            record.value = Some(verdict.value);
        }
        SemanticsSpec::Superval => {
            let v = evaluate_supervaluation(&q.expr, &scene.atoms(), state, &contexts, tol)?;
            record.value = Some(v);
        }
        SemanticsSpec::Gap => {
            let (PropExpr::And(f, g), [ctx]) = (&q.expr, contexts.contexts()) else {
                record.error =
                    Some("gap queries take `factor & companion` and exactly one context".into());
                return Ok(());
            };
            let (PropExpr::Atom(f), PropExpr::Atom(g)) = (f.as_ref(), g.as_ref()) else {
                record.error = Some("gap factor and companion must be projector names".into());
                return Ok(());
            };
            let factor = Subspace::from(scene.projectors[f].clone());
            let companion = Subspace::from(scene.projectors[g].clone());
            record.value_set = Some(resolve_gap(&factor, &companion, state, ctx, tol)?);
        }
    }
    if q.spec.measure {
        record.measure = record.value.map(Measure::from);
    }
    Ok(())
}

/// Answers every query of a valid scene, in input order.
pub fn evaluate_scene(scene: &Scene, tol: Tolerance) -> Vec<QueryRecord> {
    scene
        .queries
        .iter()
        .enumerate()
        .map(|(index, q)| {
            let mut record = QueryRecord {
                index,
                semantics: q.spec.semantics.as_str(),
                expression: q.expr.to_string(),
                state: q.spec.state.clone(),
                contexts: q.spec.contexts.clone(),
                value: None,
                value_set: None,
                measure: None,
                residual: None,
                warnings: Vec::new(),
                error: None,
            };
            if let Err(e) = answer(scene, q, &mut record, tol) {
                record.error = Some(e.to_string());
            }
            record
        })
        .collect()
}

fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(header.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

pub fn cmd_eval(path: &Path, format: Format, tol: Tolerance) -> Outcome {
    let scene = match load_valid(path, tol) {
        Ok(scene) => scene,
        Err(outcome) => return outcome,
    };
    let records = evaluate_scene(&scene, tol);
    let failed = records.iter().filter(|r| r.error.is_some()).count();
    let stdout = match format {
        Format::Json => records
            .iter()
            .map(|r| serde_json::to_string(r).expect("records serialise") + "\n")
            .collect(),
        Format::Table => {
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| {
                    let result = match (&r.value, &r.value_set, &r.error) {
                        (_, _, Some(e)) => format!("error: {e}"),
                        (Some(v), _, _) => v.to_string(),
                        (_, Some(vs), _) => vs.to_string(),
                        _ => String::new(),
                    };
                    let mut notes: Vec<String> = r.warnings.clone();
                    if let Some(res) = r.residual {
                        notes.insert(0, format!("residual {res:.3e}"));
                    }
                    vec![
                        r.index.to_string(),
                        r.semantics.to_string(),
                        r.expression.clone(),
                        r.state.clone(),
                        r.contexts.join(","),
                        result,
                        r.measure.map(|m| m.to_string()).unwrap_or_default(),
                        notes.join("; "),
                    ]
                })
                .collect();
            let mut out = render_table(
                &[
                    "#",
                    "semantics",
                    "expression",
                    "state",
                    "contexts",
                    "value",
                    "measure",
                    "notes",
                ],
                &rows,
            );
            let _ = writeln!(
                out,
                "status: {} ({} queries, {} failed)",
                if failed == 0 { "pass" } else { "fail" },
                records.len(),
                failed
            );
            out
        }
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code: if failed == 0 { EXIT_OK } else { EXIT_FAILURE },
    }
}

#[derive(Debug, Serialize)]
struct ElementLine<'a> {
    element: u32,
    rank: usize,
    generators: Vec<&'a str>,
}

#[derive(Debug, Serialize)]
struct LatticeSummary<'a> {
    context: &'a str,
    members: usize,
    elements: usize,
    commuting_pairs: usize,
    non_commuting_pairs: usize,
    closure_failures: usize,
    distributive_triples: Option<usize>,
    distributivity_failures: usize,
    boolean: bool,
}

pub fn cmd_lattice(path: &Path, context: &str, format: Format, tol: Tolerance) -> Outcome {
    let scene = match load_valid(path, tol) {
        Ok(scene) => scene,
        Err(outcome) => return outcome,
    };
    let Some(ctx) = scene.context(context) else {
        return Outcome::failure(format!("unknown context `{context}`"));
    };
    if ctx.len() > MAX_LISTED_MEMBERS {
        return Outcome::failure(format!(
            "context `{context}` has {} members; at most {MAX_LISTED_MEMBERS} can be listed",
            ctx.len()
        ));
    }
    let lattice = match generated_lattice(ctx) {
        Ok(l) => l,
        Err(e) => return Outcome::failure(e.to_string()),
    };
    let check = match lattice.boolean_check(tol, MAX_DISTRIBUTIVE_MEMBERS) {
        Ok(c) => c,
        Err(e) => return Outcome::failure(e.to_string()),
    };
    let summary = LatticeSummary {
        context,
        members: ctx.len(),
        elements: lattice.len(),
        commuting_pairs: check.commuting_pairs_checked,
        non_commuting_pairs: check.non_commuting_pairs,
        closure_failures: check.closure_failures,
        distributive_triples: check.distributive_triples_checked,
        distributivity_failures: check.distributivity_failures,
        boolean: check.passed(),
    };
    let mut out = String::new();
    match format {
        Format::Json => {
            for e in lattice.elements() {
                let line = ElementLine {
                    element: e.subset,
                    rank: e.subspace.rank(),
                    generators: lattice.generator_labels(e.subset),
                };
                let _ = writeln!(out, "{}", serde_json::to_string(&line).expect("serialise"));
            }
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string(&summary).expect("serialise")
            );
        }
        Format::Table => {
            let _ = writeln!(
                out,
                "context {context}: {} members on C^{}, {} elements",
                ctx.len(),
                ctx.dim(),
                lattice.len()
            );
            let rows: Vec<Vec<String>> = lattice
                .elements()
                .iter()
                .map(|e| {
                    vec![
                        e.subset.to_string(),
                        e.subspace.rank().to_string(),
                        format!("{{{}}}", lattice.generator_labels(e.subset).join(", ")),
                    ]
                })
                .collect();
            out.push_str(&render_table(&["element", "rank", "generators"], &rows));
            let distributivity = match check.distributive_triples_checked {
                Some(n) => format!(
                    "{}/{n} triples distributive",
                    n - check.distributivity_failures
                ),
                None => "distributivity scan skipped".to_string(),
            };
            let _ = writeln!(
                out,
                "Boolean: {} ({}/{} pairs commute, {} closure failures, {distributivity})",
                if check.passed() { "pass" } else { "fail" },
                check.commuting_pairs_checked - check.non_commuting_pairs,
                check.commuting_pairs_checked,
                check.closure_failures,
            );
        }
    }
    Outcome {
        stdout: out,
        stderr: String::new(),
        code: if check.passed() {
            EXIT_OK
        } else {
            EXIT_FAILURE
        },
    }
}

fn render_demo(report: &DemoReport) -> String {
    let mark = |ok: bool| if ok { "pass" } else { "FAIL" };
    let mut out = String::new();
    let cfg = &report.config;
    let _ = writeln!(
        out,
        "two-state demo: u' = {}, u'' = {}, n_env = {}, dimension {}",
        cfg.u_prime, cfg.u_double_prime, cfg.n_env, report.dimension
    );
    let _ = writeln!(out, "before pasting (S alone, contexts Su' and Su''):");
    for (what, v) in &report.gaps_before_pasting {
        let _ = writeln!(out, "  {what}: {v}");
    }
    let _ = writeln!(out, "SE context valid: {}", mark(report.context_valid));
    let _ = writeln!(
        out,
        "generators in lattice: {}",
        mark(report.generators_in_lattice)
    );
    let _ = writeln!(
        out,
        "pasted families meet in {{0}}: {}",
        mark(report.families_meet_trivially)
    );
    for s in &report.states {
        let p = &s.probabilities;
        let _ = writeln!(out, "state {}:", s.state);
        let _ = writeln!(
            out,
            "  (a) Su''+ & 1z+ = {}, Su''- & 1z+ = {}",
            s.conjunctions[0], s.conjunctions[1]
        );
        let _ = writeln!(out, "  (b) 1z+ = {}", s.companion);
        let _ = writeln!(out, "  (c) Su''+ -> {}, Su''- -> {}", s.gaps[0], s.gaps[1]);
        let _ = writeln!(
            out,
            "  (d) exclusivity {}, exhaustivity {}",
            mark(s.exclusivity),
            mark(s.exhaustivity)
        );
        let _ = writeln!(
            out,
            "  (e) Pr[E1] = {:.12}, Pr[E2] = {:.12}, sum-rule residual {:.3e}, method {:?}",
            p.pr_e1, p.pr_e2, p.sum_rule_residual, p.method
        );
        let _ = writeln!(
            out,
            "      Born weights {:.12} / {:.12}",
            s.born_weights[0], s.born_weights[1]
        );
        let _ = writeln!(out, "  checks: {}", mark(s.passed()));
    }
    let _ = writeln!(
        out,
        "status: {}",
        if report.passed() { "pass" } else { "fail" }
    );
    out
}

pub fn cmd_demo(cfg: &ModelConfig, format: Format, tol: Tolerance) -> Outcome {
    let report = match run_two_state_demo(cfg, tol) {
        Ok(r) => r,
        Err(e) => return Outcome::failure(e.to_string()),
    };
    let stdout = match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Envelope<'a> {
                #[serde(flatten)]
                report: &'a DemoReport,
                passed: bool,
            }
            serde_json::to_string(&Envelope {
                report: &report,
                passed: report.passed(),
            })
            .expect("serialise")
                + "\n"
        }
        Format::Table => render_demo(&report),
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code: if report.passed() {
            EXIT_OK
        } else {
            EXIT_FAILURE
        },
    }
}
