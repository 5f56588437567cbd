//! Truth assignments for quantum propositions.
//!
//! Three semantics are provided:
//!
//! * [`evaluate_hilbert`]: total two-valued valuation on the full subspace
//!   lattice. A proposition is true in a state iff the state's ray lies in the
//!   meet of the ray and the proposition's subspace.
//! * [`evaluate_admissible`]: the same candidate values, withheld
//!   ([`TruthValue::Indefinite`]) when they break the exclusivity or
//!   exhaustivity conditions inside a context of the proposition.
//! * [`evaluate_supervaluation`]: compounds are only formed from operands that
//!   live in one context's Boolean lattice, and a result is definite only when
//!   it is an element of a lattice whose context has a member containing the
//!   state (the state's home lattice).
//!
//! [`resolve_gap`] covers the composite case in which a conjunction and its
//! companion factor are both false, leaving the other factor unconstrained.

mod expr;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::contexts::{home_member, lattice_position, Context, ContextError, ContextSet};
use crate::subspaces::{Projector, StateVector, Subspace, SubspaceError};
use crate::Tolerance;

pub use expr::{ParseError, PropExpr};

/// Named propositions available to expression leaves.
pub type Atoms = BTreeMap<String, Subspace>;

/// Atoms for every labelled member of every context; the first occurrence of a
/// label wins.
pub fn atoms_from_contexts(contexts: &ContextSet) -> Atoms {
    let mut atoms = Atoms::new();
    for c in contexts.iter() {
        for m in c.members() {
            atoms
                .entry(m.label().to_string())
                .or_insert_with(|| m.range());
        }
    }
    atoms
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ValuationError {
    #[error("dimension mismatch: proposition on C^{proposition}, state in C^{state}")]
    DimensionMismatch { proposition: usize, state: usize },
    #[error("unknown projector `{0}`")]
    UnknownProjector(String),
    #[error("projector belongs to no supplied context")]
    ProjectorOutsideContexts,
    #[error("state is not the range of any context member (closest distance {closest:.3e})")]
    StateNotAligned { closest: f64 },
    #[error("state does not lie in the preparation subspace")]
    StateOutsidePreparation,
    #[error("state lies in no member range of the supplied contexts")]
    StateOutsideLattices,
    #[error("conjunction of factor and companion is not an element of context `{0}`'s lattice")]
    ConjunctionOutsideLattice(String),
    #[error("context on C^{context} cannot host factor C^{factor} and companion C^{companion}")]
    FactorLayout {
        context: usize,
        factor: usize,
        companion: usize,
    },
    #[error("no contexts supplied")]
    NoContexts,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
    #[error(transparent)]
    Context(#[from] ContextError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TruthValue {
    True,
    False,
    Indefinite,
}

impl TruthValue {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Self::True
        } else {
            Self::False
        }
    }

    pub fn is_definite(self) -> bool {
        self != Self::Indefinite
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::True => "TRUE",
            Self::False => "FALSE",
            Self::Indefinite => "INDEFINITE",
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for TruthValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Nonempty subset of {TRUE, FALSE}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ValueSet {
    may_be_true: bool,
    may_be_false: bool,
}

impl ValueSet {
    pub const TRUE: Self = Self {
        may_be_true: true,
        may_be_false: false,
    };
    pub const FALSE: Self = Self {
        may_be_true: false,
        may_be_false: true,
    };
    pub const BOTH: Self = Self {
        may_be_true: true,
        may_be_false: true,
    };

    pub fn new(may_be_true: bool, may_be_false: bool) -> Option<Self> {
        (may_be_true || may_be_false).then_some(Self {
            may_be_true,
            may_be_false,
        })
    }

    pub fn may_be_true(self) -> bool {
        self.may_be_true
    }

    pub fn may_be_false(self) -> bool {
        self.may_be_false
    }

    pub fn len(self) -> usize {
        usize::from(self.may_be_true) + usize::from(self.may_be_false)
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn values(self) -> Vec<TruthValue> {
        let mut out = Vec::with_capacity(2);
        if self.may_be_true {
            out.push(TruthValue::True);
        }
        if self.may_be_false {
            out.push(TruthValue::False);
        }
        out
    }
}

impl fmt::Display for ValueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.values().iter().map(|v| v.as_str()).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

impl Serialize for ValueSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let names: Vec<_> = self.values().iter().map(|v| v.as_str()).collect();
        names.serialize(s)
    }
}

fn check_dims(p: &Subspace, state: &StateVector) -> Result<(), ValuationError> {
    if p.dim() == state.dim() {
        Ok(())
    } else {
        Err(ValuationError::DimensionMismatch {
            proposition: p.dim(),
            state: state.dim(),
        })
    }
}

/// Two-valued valuation on the full Hilbert lattice. Never indefinite.
pub fn evaluate_hilbert(
    p: &Subspace,
    state: &StateVector,
    tol: Tolerance,
) -> Result<TruthValue, ValuationError> {
    check_dims(p, state)?;
    let ray = Subspace::span_of(state);
    let meet = ray.meet(p, tol)?;
    Ok(TruthValue::from_bool(meet.contains(&ray, tol)?))
}

/// Valuation against an explicit preparation subspace `h_psi ∋ state`.
pub fn evaluate_general(
    h_psi: &Subspace,
    p: &Subspace,
    state: &StateVector,
    tol: Tolerance,
) -> Result<TruthValue, ValuationError> {
    check_dims(h_psi, state)?;
    check_dims(p, state)?;
    if !h_psi.contains_vector(state.amplitudes(), tol)? {
        return Err(ValuationError::StateOutsidePreparation);
    }
    let meet = h_psi.meet(p, tol)?;
    Ok(TruthValue::from_bool(
        meet.contains_vector(state.amplitudes(), tol)?,
    ))
}

/// Per-context record of the admissibility check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContextCheck {
    pub context: String,
    pub member_values: Vec<(String, TruthValue)>,
    /// A true member forces every sibling false.
    pub exclusivity: bool,
    /// All siblings false forces the remaining member true.
    pub exhaustivity: bool,
}

impl ContextCheck {
    pub fn passed(&self) -> bool {
        self.exclusivity && self.exhaustivity
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibleVerdict {
    pub value: TruthValue,
    /// The unconditioned Hilbert-lattice value.
    pub candidate: TruthValue,
    /// Context of the state's ray (the first matching member's context).
    pub state_context: String,
    pub checks: Vec<ContextCheck>,
    /// Some contexts of the proposition admit the valuation and others do not.
    pub contexts_disagree: bool,
    pub warnings: Vec<String>,
}

fn check_context(
    c: &Context,
    state: &StateVector,
    tol: Tolerance,
) -> Result<ContextCheck, ValuationError> {
    let values = c
        .members()
        .iter()
        .map(|m| {
            Ok((
                m.label().to_string(),
                evaluate_hilbert(&m.range(), state, tol)?,
            ))
        })
        .collect::<Result<Vec<_>, ValuationError>>()?;
    let is_true: Vec<bool> = values.iter().map(|(_, v)| *v == TruthValue::True).collect();
    let exclusivity = is_true
        .iter()
        .enumerate()
        .all(|(a, &ta)| !ta || is_true.iter().enumerate().all(|(b, &tb)| a == b || !tb));
    let exhaustivity = is_true.iter().enumerate().all(|(a, &ta)| {
        let others_false = is_true.iter().enumerate().all(|(b, &tb)| a == b || !tb);
        !others_false || ta
    });
    Ok(ContextCheck {
        context: c.name().to_string(),
        member_values: values,
        exclusivity,
        exhaustivity,
    })
}

/// Locates the context member whose range is the state's ray.
fn state_context(
    state: &StateVector,
    contexts: &ContextSet,
    tol: Tolerance,
) -> Result<(String, Option<String>), ValuationError> {
    let ray = Subspace::span_of(state);
    let threshold = tol.comparison(state.dim());
    let mut closest: Option<(f64, &Context)> = None;
    for c in contexts.iter() {
        if c.dim() != state.dim() {
            return Err(ValuationError::DimensionMismatch {
                proposition: c.dim(),
                state: state.dim(),
            });
        }
        for m in c.members() {
            let d = m.projector().distance(ray.projector())?;
            if d <= threshold {
                return Ok((c.name().to_string(), None));
            }
            if closest.is_none_or(|(best, _)| d < best) {
                closest = Some((d, c));
            }
        }
    }
    match closest {
        Some((d, c)) if d <= 10.0 * threshold => Ok((
            c.name().to_string(),
            Some(format!(
                "state matches a member of `{}` only loosely (distance {d:.3e})",
                c.name()
            )),
        )),
        Some((d, _)) => Err(ValuationError::StateNotAligned { closest: d }),
        None => Err(ValuationError::NoContexts),
    }
}

/// Hilbert-lattice value of the named projector, withheld when a context
/// containing it fails the exclusivity or exhaustivity condition.
pub fn evaluate_admissible(
    p_name: &str,
    state: &StateVector,
    contexts: &ContextSet,
    tol: Tolerance,
) -> Result<AdmissibleVerdict, ValuationError> {
    let member = contexts
        .find_member(p_name)
        .ok_or_else(|| ValuationError::UnknownProjector(p_name.to_string()))?;
    admissible_for(member.projector(), state, contexts, tol)
}

fn admissible_for(
    p: &Projector,
    state: &StateVector,
    contexts: &ContextSet,
    tol: Tolerance,
) -> Result<AdmissibleVerdict, ValuationError> {
    let (home, warning) = state_context(state, contexts, tol)?;
    let candidate = evaluate_hilbert(&p.clone().into(), state, tol)?;
    let checks = contexts
        .containing(p, tol)
        .map(|c| check_context(c, state, tol))
        .collect::<Result<Vec<_>, _>>()?;
    if checks.is_empty() {
        return Err(ValuationError::ProjectorOutsideContexts);
    }
    let failing = checks.iter().filter(|c| !c.passed()).count();
    let value = if failing == 0 {
        candidate
    } else {
        TruthValue::Indefinite
    };
    Ok(AdmissibleVerdict {
        value,
        candidate,
        state_context: home,
        contexts_disagree: failing > 0 && failing < checks.len(),
        checks,
        warnings: warning.into_iter().collect(),
    })
}

fn share_lattice(subspaces: &[&Subspace], contexts: &ContextSet, tol: Tolerance) -> bool {
    contexts.iter().any(|c| {
        subspaces
            .iter()
            .all(|s| lattice_position(s, c, tol).is_some())
    })
}

/// Subspace denoted by `expr` in the full Hilbert lattice, where meets and
/// joins are always defined.
pub fn hilbert_subspace(
    expr: &PropExpr,
    atoms: &Atoms,
    tol: Tolerance,
) -> Result<Subspace, ValuationError> {
    Ok(match expr {
        PropExpr::Atom(name) => atoms
            .get(name)
            .cloned()
            .ok_or_else(|| ValuationError::UnknownProjector(name.clone()))?,
        PropExpr::Not(e) => hilbert_subspace(e, atoms, tol)?.complement(),
        PropExpr::And(a, b) => {
            hilbert_subspace(a, atoms, tol)?.meet(&hilbert_subspace(b, atoms, tol)?, tol)?
        }
        PropExpr::Or(a, b) => {
            hilbert_subspace(a, atoms, tol)?.join(&hilbert_subspace(b, atoms, tol)?, tol)?
        }
    })
}

/// Subspace denoted by `expr`, or `None` when a meet or join would combine
/// operands that share no generated lattice.
pub fn denote(
    expr: &PropExpr,
    atoms: &Atoms,
    contexts: &ContextSet,
    tol: Tolerance,
) -> Result<Option<Subspace>, ValuationError> {
    Ok(match expr {
        PropExpr::Atom(name) => Some(
            atoms
                .get(name)
                .cloned()
                .ok_or_else(|| ValuationError::UnknownProjector(name.clone()))?,
        ),
        PropExpr::Not(e) => denote(e, atoms, contexts, tol)?.map(|s| s.complement()),
        PropExpr::And(a, b) | PropExpr::Or(a, b) => {
            let lhs = denote(a, atoms, contexts, tol)?;
            let rhs = denote(b, atoms, contexts, tol)?;
            match (lhs, rhs) {
                (Some(l), Some(r)) if share_lattice(&[&l, &r], contexts, tol) => {
                    Some(if matches!(expr, PropExpr::And(..)) {
                        l.meet(&r, tol)?
                    } else {
                        l.join(&r, tol)?
                    })
                }
                _ => None,
            }
        }
    })
}

/// Supervaluationist value of `expr` in `state`.
pub fn evaluate_supervaluation(
    expr: &PropExpr,
    atoms: &Atoms,
    state: &StateVector,
    contexts: &ContextSet,
    tol: Tolerance,
) -> Result<TruthValue, ValuationError> {
    check_home(state, contexts, tol)?;
    let denoted = denote(expr, atoms, contexts, tol)?;
    supervaluate_denoted(denoted.as_ref(), state, contexts, tol)
}

/// A context is a home lattice of the state when one of its members contains it.
fn check_home(
    state: &StateVector,
    contexts: &ContextSet,
    tol: Tolerance,
) -> Result<(), ValuationError> {
    if contexts
        .iter()
        .any(|c| home_member(state.amplitudes(), c, tol).is_some())
    {
        Ok(())
    } else {
        Err(ValuationError::StateOutsideLattices)
    }
}

fn supervaluate_denoted(
    denoted: Option<&Subspace>,
    state: &StateVector,
    contexts: &ContextSet,
    tol: Tolerance,
) -> Result<TruthValue, ValuationError> {
    match denoted {
        Some(s) => {
            check_dims(s, state)?;
            let at_home = contexts.iter().any(|c| {
                home_member(state.amplitudes(), c, tol).is_some()
                    && lattice_position(s, c, tol).is_some()
            });
            if at_home {
                evaluate_hilbert(s, state, tol)
            } else {
                Ok(TruthValue::Indefinite)
            }
        }
        None => Ok(TruthValue::Indefinite),
    }
}

/// Value set of `factor` in a composite state, inferred from the conjunction
/// `factor ⊗ companion` and the lifted companion `1 ⊗ companion`.
///
/// The context lives on `C^{d_f · d_c · r}`; both operators are padded with
/// the identity over the trailing `r` dimensions.
pub fn resolve_gap(
    factor: &Subspace,
    companion: &Subspace,
    state: &StateVector,
    c: &Context,
    tol: Tolerance,
) -> Result<ValueSet, ValuationError> {
    let pair = factor.dim() * companion.dim();
    if !c.dim().is_multiple_of(pair) {
        return Err(ValuationError::FactorLayout {
            context: c.dim(),
            factor: factor.dim(),
            companion: companion.dim(),
        });
    }
    let padding = Subspace::whole(c.dim() / pair);
    let conjunction = factor.tensor(companion).tensor(&padding);
    let lifted = Subspace::whole(factor.dim())
        .tensor(companion)
        .tensor(&padding);
    check_dims(&conjunction, state)?;
    if lattice_position(&conjunction, c, tol).is_none() {
        return Err(ValuationError::ConjunctionOutsideLattice(
            c.name().to_string(),
        ));
    }
    if home_member(state.amplitudes(), c, tol).is_none() {
        return Err(ValuationError::StateOutsideLattices);
    }
    let conj = evaluate_hilbert(&conjunction, state, tol)?;
    let comp = evaluate_hilbert(&lifted, state, tol)?;
    Ok(match (conj, comp) {
        (TruthValue::True, _) => ValueSet::TRUE,
        (_, TruthValue::False) => ValueSet::BOTH,
        _ => ValueSet::FALSE,
    })
}

/// Which valuation a bivaluation measure is read from.
#[derive(Debug, Clone, Copy)]
pub enum Semantics<'a> {
    Hilbert,
    Admissible(&'a ContextSet),
    Supervaluation(&'a ContextSet),
}

/// Dispersion-free measure: 1 for true, 0 for false, undefined for a gap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    Zero,
    One,
    Undefined,
}

impl Measure {
    pub fn value(self) -> Option<f64> {
        match self {
            Self::Zero => Some(0.0),
            Self::One => Some(1.0),
            Self::Undefined => None,
        }
    }
}

impl From<TruthValue> for Measure {
    fn from(v: TruthValue) -> Self {
        match v {
            TruthValue::True => Self::One,
            TruthValue::False => Self::Zero,
            TruthValue::Indefinite => Self::Undefined,
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Zero => f.write_str("0"),
            Self::One => f.write_str("1"),
            Self::Undefined => f.write_str("undefined"),
        }
    }
}

impl Serialize for Measure {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Self::Zero => s.serialize_u8(0),
            Self::One => s.serialize_u8(1),
            Self::Undefined => s.serialize_str("undefined"),
        }
    }
}

pub fn bivaluation_measure(
    p: &Subspace,
    state: &StateVector,
    semantics: Semantics<'_>,
    tol: Tolerance,
) -> Result<Measure, ValuationError> {
    let value = match semantics {
        Semantics::Hilbert => evaluate_hilbert(p, state, tol)?,
        Semantics::Admissible(contexts) => {
            admissible_for(p.projector(), state, contexts, tol)?.value
        }
        Semantics::Supervaluation(contexts) => {
            check_home(state, contexts, tol)?;
            supervaluate_denoted(Some(p), state, contexts, tol)?
        }
    };
    Ok(value.into())
}
