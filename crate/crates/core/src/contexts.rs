//! Contexts (projective resolutions of the identity) and the Boolean lattices
//! they generate.
//!
//! The lattice attached to a context is the sublattice generated by the member
//! ranges: every element is the join of a subset of members, so an element is
//! identified by a bit mask over the member list. When a member has rank two or
//! more, arbitrary subspaces inside its range are still invariant under the
//! context but do not commute with one another; those are accepted by
//! [`in_lattice`] and excluded from [`generated_lattice`].

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::numerics::{identity, projector_distance, ComplexMatrix, ComplexVector, Tolerance};
use crate::subspaces::{Projector, Subspace, SubspaceError};

/// Largest context accepted by [`generated_lattice`].
pub const MAX_LATTICE_MEMBERS: usize = 16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ContextError {
    #[error("context `{name}` is invalid: {report}")]
    Invalid {
        name: String,
        report: ValidationReport,
    },
    #[error("duplicate context name `{0}`")]
    DuplicateName(String),
    #[error("context `{name}` has {found} members, at most {max} supported")]
    TooManyMembers {
        name: String,
        found: usize,
        max: usize,
    },
    #[error("contexts live on different ambient dimensions: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Triviality {
    Zero,
    Identity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairResidual {
    pub first: usize,
    pub second: usize,
    pub residual: f64,
}

/// Outcome of checking a candidate member list against the context conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub member_count: usize,
    /// Members whose dimension differs from the first member's.
    pub dimension_mismatches: Vec<usize>,
    pub trivial_members: Vec<(usize, Triviality)>,
    /// Pairs whose product `P_i·P_j` is not the zero matrix.
    pub non_orthogonal: Vec<PairResidual>,
    /// `‖Σ P_i − 1‖_F`.
    pub sum_residual: f64,
    pub threshold: f64,
}

impl ValidationReport {
    pub fn too_few_members(&self) -> bool {
        self.member_count < 2
    }

    pub fn sums_to_identity(&self) -> bool {
        self.sum_residual <= self.threshold
    }

    pub fn passed(&self) -> bool {
        !self.too_few_members()
            && self.dimension_mismatches.is_empty()
            && self.trivial_members.is_empty()
            && self.non_orthogonal.is_empty()
            && self.sums_to_identity()
    }

    /// One line per failed condition.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.too_few_members() {
            out.push(format!(
                "needs at least two members, found {}",
                self.member_count
            ));
        }
        for i in &self.dimension_mismatches {
            out.push(format!("member {i} has a different dimension"));
        }
        for (i, kind) in &self.trivial_members {
            let what = match kind {
                Triviality::Zero => "zero",
                Triviality::Identity => "the identity",
            };
            out.push(format!("member {i} is {what}"));
        }
        for pair in &self.non_orthogonal {
            out.push(format!(
                "members {} and {} are not orthogonal (residual {:.3e})",
                pair.first, pair.second, pair.residual
            ));
        }
        if !self.sums_to_identity() {
            out.push(format!(
                "members do not sum to the identity (residual {:.3e})",
                self.sum_residual
            ));
        }
        out
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "pass")
        } else {
            write!(f, "{}", self.failures().join("; "))
        }
    }
}

/// Checks nontriviality, pairwise orthogonality and resolution of the identity.
pub fn validate_context(members: &[Projector], tol: Tolerance) -> ValidationReport {
    let dim = members.first().map_or(0, Projector::dim);
    let threshold = tol.comparison(dim);
    let mut report = ValidationReport {
        member_count: members.len(),
        dimension_mismatches: Vec::new(),
        trivial_members: Vec::new(),
        non_orthogonal: Vec::new(),
        sum_residual: 0.0,
        threshold,
    };
    report.dimension_mismatches = members
        .iter()
        .enumerate()
        .filter(|(_, p)| p.dim() != dim)
        .map(|(i, _)| i)
        .collect();
    if !report.dimension_mismatches.is_empty() {
        report.sum_residual = f64::INFINITY;
        return report;
    }

    let zero = ComplexMatrix::zeros(dim, dim);
    let id = identity(dim);
    let mut sum = ComplexMatrix::zeros(dim, dim);
    for (i, p) in members.iter().enumerate() {
        let m = p.matrix();
        if projector_distance(m, &zero).unwrap_or(f64::INFINITY) <= threshold {
            report.trivial_members.push((i, Triviality::Zero));
        } else if projector_distance(m, &id).unwrap_or(f64::INFINITY) <= threshold {
            report.trivial_members.push((i, Triviality::Identity));
        }
        sum += m;
        for (j, q) in members.iter().enumerate().skip(i + 1) {
            let residual = (m * q.matrix()).norm();
            if residual > threshold {
                report.non_orthogonal.push(PairResidual {
                    first: i,
                    second: j,
                    residual,
                });
            }
        }
    }
    report.sum_residual = (sum - id).norm();
    report
}

/// A labelled context member.
#[derive(Debug, Clone, PartialEq)]
pub struct Member {
    label: String,
    projector: Projector,
}

impl Member {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn projector(&self) -> &Projector {
        &self.projector
    }

    pub fn range(&self) -> Subspace {
        self.projector.clone().into()
    }
}

/// Finite set of nontrivial, mutually orthogonal projectors summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Context {
    name: String,
    members: Vec<Member>,
}

impl Context {
    pub fn new(
        name: impl Into<String>,
        members: Vec<(String, Projector)>,
        tol: Tolerance,
    ) -> Result<Self, ContextError> {
        let name = name.into();
        let projectors: Vec<Projector> = members.iter().map(|(_, p)| p.clone()).collect();
        let report = validate_context(&projectors, tol);
        if !report.passed() {
            return Err(ContextError::Invalid { name, report });
        }
        let members = members
            .into_iter()
            .map(|(label, projector)| Member { label, projector })
            .collect();
        Ok(Self { name, members })
    }

    /// Members labelled `name[0]`, `name[1]`, ...
    pub fn from_projectors(
        name: impl Into<String>,
        projectors: Vec<Projector>,
        tol: Tolerance,
    ) -> Result<Self, ContextError> {
        let name = name.into();
        let labelled = projectors
            .into_iter()
            .enumerate()
            .map(|(i, p)| (format!("{name}[{i}]"), p))
            .collect();
        Self::new(name, labelled, tol)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.members[0].projector.dim()
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member(&self, label: &str) -> Option<&Member> {
        self.members.iter().find(|m| m.label == label)
    }

    /// Index of a member within `10·eps·√d` of `p`.
    pub fn position_of(&self, p: &Projector, tol: Tolerance) -> Option<usize> {
        if p.dim() != self.dim() {
            return None;
        }
        self.members
            .iter()
            .position(|m| m.projector.approx_eq(p, tol).unwrap_or(false))
    }
}

/// Finite collection of contexts on one ambient dimension, with unique names.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ContextSet {
    contexts: Vec<Context>,
}

impl ContextSet {
    pub fn new(contexts: Vec<Context>) -> Result<Self, ContextError> {
        let mut names = BTreeSet::new();
        for c in &contexts {
            if !names.insert(c.name.clone()) {
                return Err(ContextError::DuplicateName(c.name.clone()));
            }
            if c.dim() != contexts[0].dim() {
                return Err(ContextError::DimensionMismatch {
                    left: contexts[0].dim(),
                    right: c.dim(),
                });
            }
        }
        Ok(Self { contexts })
    }

    pub fn contexts(&self) -> &[Context] {
        &self.contexts
    }

    pub fn iter(&self) -> impl Iterator<Item = &Context> {
        self.contexts.iter()
    }

    pub fn get(&self, name: &str) -> Option<&Context> {
        self.contexts.iter().find(|c| c.name == name)
    }

    pub fn dim(&self) -> Option<usize> {
        self.contexts.first().map(Context::dim)
    }

    pub fn is_empty(&self) -> bool {
        self.contexts.is_empty()
    }

    /// First member carrying `label`, searching contexts in order.
    pub fn find_member(&self, label: &str) -> Option<&Member> {
        self.contexts.iter().find_map(|c| c.member(label))
    }

    /// Contexts that contain `p` (up to projector distance).
    pub fn containing<'a>(
        &'a self,
        p: &'a Projector,
        tol: Tolerance,
    ) -> impl Iterator<Item = &'a Context> + 'a {
        self.contexts
            .iter()
            .filter(move |c| c.position_of(p, tol).is_some())
    }
}

/// True iff the two contexts share a member.
pub fn intertwined(a: &Context, b: &Context, tol: Tolerance) -> Result<bool, ContextError> {
    if a.dim() != b.dim() {
        return Err(ContextError::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(a.members
        .iter()
        .any(|m| b.position_of(&m.projector, tol).is_some()))
}

/// Whether `p` maps `s` into itself.
pub fn is_invariant(s: &Subspace, p: &Projector, tol: Tolerance) -> Result<bool, ContextError> {
    if s.dim() != p.dim() {
        return Err(SubspaceError::DimensionMismatch {
            left: s.dim(),
            right: p.dim(),
        }
        .into());
    }
    let images: Vec<_> = s.basis(tol)?.iter().map(|v| p.apply(v)).collect();
    let image = Subspace::from_span(s.dim(), &images, tol)?;
    Ok(s.contains(&image, tol)?)
}

/// Invariance under every member of `c`.
pub fn in_lattice(s: &Subspace, c: &Context, tol: Tolerance) -> Result<bool, ContextError> {
    for m in &c.members {
        if !is_invariant(s, &m.projector, tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Generator subset of `s` if it is an element of the lattice generated by `c`.
///
/// Each member must lie either inside `s` or orthogonal to it, and `s` must
/// equal the sum of the members inside it. Avoids enumerating all `2^n`
/// elements.
pub fn lattice_position(s: &Subspace, c: &Context, tol: Tolerance) -> Option<u32> {
    if s.dim() != c.dim() || c.len() > MAX_LATTICE_MEMBERS {
        return None;
    }
    let dim = s.dim();
    let threshold = tol.comparison(dim);
    let q = s.projector().matrix();
    let mut mask = 0u32;
    let mut sum = ComplexMatrix::zeros(dim, dim);
    for (i, m) in c.members.iter().enumerate() {
        let pm = m.projector.matrix();
        let inside = q * pm;
        if (&inside - pm).norm() <= threshold {
            mask |= 1 << i;
            sum += pm;
        } else if inside.norm() > threshold {
            return None;
        }
    }
    (projector_distance(&sum, q).ok()? <= threshold).then_some(mask)
}

/// Index of the member whose range contains `v`.
pub fn home_member(v: &ComplexVector, c: &Context, tol: Tolerance) -> Option<usize> {
    if v.len() != c.dim() {
        return None;
    }
    c.members
        .iter()
        .position(|m| m.range().contains_vector(v, tol).unwrap_or(false))
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeElement {
    /// Bit `i` set iff member `i` is one of the joined generators.
    pub subset: u32,
    pub subspace: Subspace,
}

/// The Boolean lattice generated by a context's member ranges.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantLattice {
    context: Context,
    elements: Vec<LatticeElement>,
}

/// Result of [`InvariantLattice::boolean_check`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BooleanSummary {
    pub commuting_pairs_checked: usize,
    pub non_commuting_pairs: usize,
    pub closure_failures: usize,
    /// `None` when the lattice was too large for the exhaustive triple scan.
    pub distributive_triples_checked: Option<usize>,
    pub distributivity_failures: usize,
}

impl BooleanSummary {
    pub fn passed(&self) -> bool {
        self.non_commuting_pairs == 0
            && self.closure_failures == 0
            && self.distributivity_failures == 0
    }
}

/// Enumerates all `2^n` subset joins of the member ranges.
pub fn generated_lattice(c: &Context) -> Result<InvariantLattice, ContextError> {
    let n = c.len();
    if n > MAX_LATTICE_MEMBERS {
        return Err(ContextError::TooManyMembers {
            name: c.name.clone(),
            found: n,
            max: MAX_LATTICE_MEMBERS,
        });
    }
    let dim = c.dim();
    let elements = (0..1u32 << n)
        .map(|subset| {
            // Members are orthogonal, so the join is the projector sum.
            let mut sum = ComplexMatrix::zeros(dim, dim);
            for (i, m) in c.members.iter().enumerate() {
                if subset & (1 << i) != 0 {
                    sum += m.projector.matrix();
                }
            }
            LatticeElement {
                subset,
                subspace: Projector::hermitize(sum).into(),
            }
        })
        .collect();
    Ok(InvariantLattice {
        context: c.clone(),
        elements,
    })
}

impl InvariantLattice {
    pub fn context(&self) -> &Context {
        &self.context
    }

    pub fn elements(&self) -> &[LatticeElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, subset: u32) -> Option<&LatticeElement> {
        self.elements.get(subset as usize)
    }

    pub fn find(&self, s: &Subspace, tol: Tolerance) -> Option<&LatticeElement> {
        lattice_position(s, &self.context, tol).and_then(|mask| self.element(mask))
    }

    pub fn contains(&self, s: &Subspace, tol: Tolerance) -> bool {
        self.find(s, tol).is_some()
    }

    /// Labels of the members joined into `subset`.
    pub fn generator_labels(&self, subset: u32) -> Vec<&str> {
        self.context
            .members
            .iter()
            .enumerate()
            .filter(|(i, _)| subset & (1 << i) != 0)
            .map(|(_, m)| m.label())
            .collect()
    }

    /// Pairwise commutation and closure over all element pairs, plus the
    /// exhaustive distributivity scan over triples when the context has at most
    /// `max_distributive_members` members.
    pub fn boolean_check(
        &self,
        tol: Tolerance,
        max_distributive_members: usize,
    ) -> Result<BooleanSummary, ContextError> {
        let mut summary = BooleanSummary::default();
        for a in &self.elements {
            if !self.contains(&a.subspace.complement(), tol) {
                summary.closure_failures += 1;
            }
            for b in &self.elements {
                summary.commuting_pairs_checked += 1;
                if !a.subspace.commutes(&b.subspace, tol)? {
                    summary.non_commuting_pairs += 1;
                }
                let meet = a.subspace.meet(&b.subspace, tol)?;
                let join = a.subspace.join(&b.subspace, tol)?;
                if !self.contains(&meet, tol) || !self.contains(&join, tol) {
                    summary.closure_failures += 1;
                }
            }
        }
        if self.context.len() <= max_distributive_members {
            let mut checked = 0;
            for a in &self.elements {
                for b in &self.elements {
                    let ab = a.subspace.meet(&b.subspace, tol)?;
                    for c in &self.elements {
                        let lhs = a.subspace.meet(&b.subspace.join(&c.subspace, tol)?, tol)?;
                        let rhs = ab.join(&a.subspace.meet(&c.subspace, tol)?, tol)?;
                        checked += 1;
                        if !lhs.approx_eq(&rhs, tol)? {
                            summary.distributivity_failures += 1;
                        }
                    }
                }
            }
            summary.distributive_triples_checked = Some(checked);
        }
        Ok(summary)
    }
}
