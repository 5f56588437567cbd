//! A qubit `S` coupled to `N` environment qubits with a fixed z preferred basis.
//!
//! Before the interaction, spin propositions along two different axes `u′` and
//! `u″` sit in different contexts of `S` and are gappy in each other's
//! eigenstates. On the composite space the context
//!
//! ```text
//! { P_{Su′+}⊗P_{1z−}, P_{Su′−}⊗P_{1z−}, P_{Su″+}⊗P_{1z+}, P_{Su″−}⊗P_{1z+} }
//! ```
//!
//! (padded with the identity over environment qubits `2..N`) puts both axes in
//! one Boolean lattice. In the entangled states `|Ψ_{Su′±}⟩|Ψ_{1z−}⟩` the
//! conjunctions `P_{Su″±} ∧ P_{1z+}` and the environment proposition `P_{1z+}`
//! are all false, so `P_{Su″±}` may be true or false. Exclusivity,
//! exhaustivity and, for equal-norm amplitudes, indifference then give the
//! probabilities `1/2, 1/2`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::contexts::{in_lattice, validate_context, Context, ContextError, ContextSet};
use crate::numerics::{c, ComplexMatrix, Tolerance};
use crate::subspaces::{Projector, StateVector, Subspace, SubspaceError};
use crate::valuation::{
    atoms_from_contexts, evaluate_hilbert, evaluate_supervaluation, resolve_gap, PropExpr,
    TruthValue, ValuationError, ValueSet,
};

/// Largest supported `1 + n_env`.
pub const MAX_QUBITS: usize = 10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("axis is not a unit vector (norm {0:.12})")]
    NonUnitAxis(f64),
    #[error("cannot parse axis `{0}`: expected x, y, z or a comma-separated triple")]
    AxisSyntax(String),
    #[error("u′ and u″ are parallel; the pasted context degenerates")]
    DegenerateAxes,
    #[error("environment size {0} outside 1..={max}", max = MAX_QUBITS - 1)]
    EnvironmentSize(usize),
    #[error("paste slot {slot} unsupported (only slot 1 is modelled, n_env = {n_env})")]
    PasteSlot { slot: usize, n_env: usize },
    #[error(
        "u′ eigenstates are not equal-norm superpositions of u″ eigenstates (weight {weight:.6})"
    )]
    UnequalNorms { weight: f64 },
    #[error("slot {slot} out of range for {slots} slots")]
    SlotOutOfRange { slot: usize, slots: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Valuation(#[from] ValuationError),
    #[error(transparent)]
    Context(#[from] ContextError),
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
}

/// Unit direction in R^3.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Axis([f64; 3]);

impl Axis {
    pub const X: Axis = Axis([1.0, 0.0, 0.0]);
    pub const Y: Axis = Axis([0.0, 1.0, 0.0]);
    pub const Z: Axis = Axis([0.0, 0.0, 1.0]);

    pub fn new(v: [f64; 3], tol: Tolerance) -> Result<Self, ModelError> {
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > tol.comparison(3) {
            return Err(ModelError::NonUnitAxis(norm));
        }
        Ok(Self(v))
    }

    pub fn components(&self) -> [f64; 3] {
        self.0
    }

    pub fn dot(&self, other: &Axis) -> f64 {
        self.0.iter().zip(other.0).map(|(a, b)| a * b).sum()
    }
}

impl FromStr for Axis {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "x" | "X" => Ok(Self::X),
            "y" | "Y" => Ok(Self::Y),
            "z" | "Z" => Ok(Self::Z),
            other => {
                let parts: Result<Vec<f64>, _> =
                    other.split(',').map(|p| p.trim().parse::<f64>()).collect();
                match parts.as_deref() {
                    Ok([x, y, z]) => Axis::new([*x, *y, *z], Tolerance::default()),
                    _ => Err(ModelError::AxisSyntax(s.to_string())),
                }
            }
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            a if a == Self::X => f.write_str("x"),
            a if a == Self::Y => f.write_str("y"),
            a if a == Self::Z => f.write_str("z"),
            Axis([x, y, z]) => write!(f, "({x}, {y}, {z})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// `(1 + sign·(u·σ)) / 2`.
pub fn spin_projector(u: &Axis, sign: Sign) -> Projector {
    let [x, y, z] = u.0;
    let s = sign.value();
    let m = ComplexMatrix::from_row_slice(
        2,
        2,
        &[
            c(0.5 * (1.0 + s * z), 0.0),
            c(0.5 * s * x, -0.5 * s * y),
            c(0.5 * s * x, 0.5 * s * y),
            c(0.5 * (1.0 - s * z), 0.0),
        ],
    );
    Projector::hermitize(m)
}

/// Unit vector spanning `ran(spin_projector(u, sign))`.
pub fn spin_eigenstate(u: &Axis, sign: Sign) -> StateVector {
    let p = spin_projector(u, sign);
    let col = (0..2)
        .map(|j| p.matrix().column(j).into_owned())
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .expect("two columns");
    StateVector::normalized(col).expect("rank-one projector has a nonzero column")
}

pub fn spin_context(name: &str, u: &Axis, tol: Tolerance) -> Result<Context, ContextError> {
    Context::new(
        name,
        [Sign::Plus, Sign::Minus]
            .into_iter()
            .map(|s| (format!("{name}{}", s.symbol()), spin_projector(u, s)))
            .collect(),
        tol,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelConfig {
    pub u_prime: Axis,
    pub u_double_prime: Axis,
    pub n_env: usize,
    pub paste_slot: usize,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            u_prime: Axis::X,
            u_double_prime: Axis::Z,
            n_env: 1,
            paste_slot: 1,
        }
    }
}

impl ModelConfig {
    pub fn validate(&self, tol: Tolerance) -> Result<(), ModelError> {
        if self.n_env == 0 || 1 + self.n_env > MAX_QUBITS {
            return Err(ModelError::EnvironmentSize(self.n_env));
        }
        if self.paste_slot != 1 {
            return Err(ModelError::PasteSlot {
                slot: self.paste_slot,
                n_env: self.n_env,
            });
        }
        if 1.0 - self.u_prime.dot(&self.u_double_prime).abs() <= tol.comparison(3) {
            return Err(ModelError::DegenerateAxes);
        }
        Ok(())
    }
}

/// Slot layout of `H_S ⊗ H_1 ⊗ … ⊗ H_N`; slot 0 is `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SeLayout {
    pub slots: usize,
    pub dim: usize,
}

impl SeLayout {
    /// Tensor product of per-slot operators, identity where none is given.
    pub fn lift(&self, ops: &[(usize, &Projector)]) -> Result<Projector, ModelError> {
        for &(slot, p) in ops {
            if slot >= self.slots {
                return Err(ModelError::SlotOutOfRange {
                    slot,
                    slots: self.slots,
                });
            }
            if p.dim() != 2 {
                return Err(SubspaceError::DimensionMismatch {
                    left: 2,
                    right: p.dim(),
                }
                .into());
            }
        }
        let identity = Projector::identity(2);
        let factor = |slot| {
            ops.iter()
                .rev()
                .find(|(s, _)| *s == slot)
                .map_or(&identity, |(_, p)| *p)
        };
        let mut out = factor(0).clone();
        for slot in 1..self.slots {
            out = out.kron(factor(slot));
        }
        Ok(out)
    }

    pub fn lift_subspace(&self, ops: &[(usize, &Projector)]) -> Result<Subspace, ModelError> {
        Ok(self.lift(ops)?.into())
    }

    /// Product state with the given per-slot vectors.
    pub fn product_state(&self, slots: &[StateVector]) -> Result<StateVector, ModelError> {
        if slots.len() != self.slots {
            return Err(ModelError::SlotOutOfRange {
                slot: slots.len(),
                slots: self.slots,
            });
        }
        let mut out = slots[0].clone();
        for s in &slots[1..] {
            out = out.tensor(s);
        }
        Ok(out)
    }
}

pub fn build_se_space(cfg: &ModelConfig) -> Result<SeLayout, ModelError> {
    if cfg.n_env == 0 || 1 + cfg.n_env > MAX_QUBITS {
        return Err(ModelError::EnvironmentSize(cfg.n_env));
    }
    let slots = 1 + cfg.n_env;
    Ok(SeLayout {
        slots,
        dim: 1 << slots,
    })
}

/// Labels of the four SE context members, in order.
pub const SE_LABELS: [&str; 4] = ["Su'+.1z-", "Su'-.1z-", "Su''+.1z+", "Su''-.1z+"];

pub fn build_se_context(cfg: &ModelConfig, tol: Tolerance) -> Result<Context, ModelError> {
    cfg.validate(tol)?;
    let layout = build_se_space(cfg)?;
    let env_minus = spin_projector(&Axis::Z, Sign::Minus);
    let env_plus = spin_projector(&Axis::Z, Sign::Plus);
    let slot = cfg.paste_slot;
    let families = [
        (cfg.u_prime, Sign::Plus, &env_minus),
        (cfg.u_prime, Sign::Minus, &env_minus),
        (cfg.u_double_prime, Sign::Plus, &env_plus),
        (cfg.u_double_prime, Sign::Minus, &env_plus),
    ];
    let members = families
        .iter()
        .zip(SE_LABELS)
        .map(|(&(axis, sign, env), label)| {
            let s = spin_projector(&axis, sign);
            Ok((label.to_string(), layout.lift(&[(0, &s), (slot, env)])?))
        })
        .collect::<Result<Vec<_>, ModelError>>()?;
    Ok(Context::new("SE", members, tol)?)
}

/// The two composite states `|Ψ_{Su′±}⟩|Ψ_{1z−}⟩` and their S-slot factors.
#[derive(Debug, Clone, PartialEq)]
pub struct EntangledStates {
    pub s_plus: StateVector,
    pub s_minus: StateVector,
    pub plus: StateVector,
    pub minus: StateVector,
}

/// Builds `|Ψ_{Su′±}⟩ = (|Ψ_{Su″+}⟩ ± |Ψ_{Su″−}⟩)/√2` and pairs them with
/// `|Ψ_{1z−}⟩` (remaining environment qubits in `|z+⟩`).
///
/// The `u″` eigenvector phases are fixed so the relation holds with real
/// `±1/√2` coefficients; fails unless the `u′` eigenstates have equal weight on
/// both `u″` eigenstates.
pub fn entangled_states(cfg: &ModelConfig, tol: Tolerance) -> Result<EntangledStates, ModelError> {
    cfg.validate(tol)?;
    let layout = build_se_space(cfg)?;
    let a_plus = spin_eigenstate(&cfg.u_prime, Sign::Plus);
    let weight = spin_projector(&cfg.u_double_prime, Sign::Plus)
        .apply(a_plus.amplitudes())
        .norm_squared();
    if (weight - 0.5).abs() > tol.comparison(2) {
        return Err(ModelError::UnequalNorms { weight });
    }
    let b_plus = spin_projector(&cfg.u_double_prime, Sign::Plus).apply(a_plus.amplitudes());
    let b_minus = spin_projector(&cfg.u_double_prime, Sign::Minus).apply(a_plus.amplitudes());
    // a+ = b+ + b- with |b±| = 1/√2; a- = b+ − b- is orthogonal to it.
    let s_plus = StateVector::normalized(&b_plus + &b_minus)?;
    let s_minus = StateVector::normalized(&b_plus - &b_minus)?;
    if !Subspace::from(spin_projector(&cfg.u_prime, Sign::Minus))
        .contains_vector(s_minus.amplitudes(), tol)?
    {
        return Err(ModelError::UnequalNorms { weight });
    }

    let env_minus = spin_eigenstate(&Axis::Z, Sign::Minus);
    let env_plus = spin_eigenstate(&Axis::Z, Sign::Plus);
    let compose = |s: &StateVector| {
        let mut slots = vec![s.clone()];
        for k in 1..layout.slots {
            slots.push(if k == cfg.paste_slot {
                env_minus.clone()
            } else {
                env_plus.clone()
            });
        }
        layout.product_state(&slots)
    };
    Ok(EntangledStates {
        plus: compose(&s_plus)?,
        minus: compose(&s_minus)?,
        s_plus,
        s_minus,
    })
}

/// `‖Q_p·ψ‖²`.
pub fn born_weight(state: &StateVector, p: &Subspace) -> Result<f64, ModelError> {
    if state.dim() != p.dim() {
        return Err(SubspaceError::DimensionMismatch {
            left: p.dim(),
            right: state.dim(),
        }
        .into());
    }
    Ok(p.projector().apply(state.amplitudes()).norm_squared())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbabilityMethod {
    Indifference,
    /// Squared amplitudes; goes beyond the equal-norm indifference argument.
    BornExtension,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbabilityReport {
    pub e1: String,
    pub e2: String,
    pub pr_e1: f64,
    pub pr_e2: f64,
    pub sum_rule_residual: f64,
    pub method: ProbabilityMethod,
    /// S-slot amplitude norms onto the two events' subspaces.
    pub amplitude_norms: [f64; 2],
    pub flagged: bool,
}

fn lift_to(s: &Subspace, dim: usize) -> Result<Subspace, ModelError> {
    if !dim.is_multiple_of(s.dim()) {
        return Err(SubspaceError::DimensionMismatch {
            left: dim,
            right: s.dim(),
        }
        .into());
    }
    Ok(s.tensor(&Subspace::whole(dim / s.dim())))
}

/// Probabilities of `plus` and `minus` (S-slot subspaces) coming out true.
///
/// Both must be gappy (`{TRUE, FALSE}`) by [`resolve_gap`] with `companion`,
/// complementary on `S`, mutually exclusive and jointly exhaustive in `state`.
/// Equal amplitude norms give `1/2, 1/2` by indifference; otherwise squared
/// norms are returned and the report is flagged.
pub fn assign_probabilities(
    state: &StateVector,
    plus: &Subspace,
    minus: &Subspace,
    companion: &Subspace,
    c: &Context,
    tol: Tolerance,
) -> Result<ProbabilityReport, ModelError> {
    for (name, factor) in [("plus", plus), ("minus", minus)] {
        let gap = resolve_gap(factor, companion, state, c, tol)?;
        if gap != ValueSet::BOTH {
            return Err(ModelError::Precondition(format!(
                "{name} event resolves to {gap}, not {{TRUE, FALSE}}"
            )));
        }
    }
    if !plus.complement().approx_eq(minus, tol)? {
        return Err(ModelError::Precondition(
            "plus and minus are not complements on S".into(),
        ));
    }
    let dim = state.dim();
    for (name, p) in [("plus", plus), ("minus", minus)] {
        let conjunction = lift_to(&p.meet(&p.complement(), tol)?, dim)?;
        if evaluate_hilbert(&conjunction, state, tol)? != TruthValue::False {
            return Err(ModelError::Precondition(format!(
                "exclusivity: {name} ∧ ¬{name} is not false"
            )));
        }
    }
    let disjunction = lift_to(&plus.join(minus, tol)?, dim)?;
    if evaluate_hilbert(&disjunction, state, tol)? != TruthValue::True {
        return Err(ModelError::Precondition(
            "exhaustivity: plus ∨ minus is not true".into(),
        ));
    }

    let norm_plus = lift_to(plus, dim)?
        .projector()
        .apply(state.amplitudes())
        .norm();
    let norm_minus = lift_to(minus, dim)?
        .projector()
        .apply(state.amplitudes())
        .norm();
    let (pr_e1, pr_e2, method) = if (norm_plus - norm_minus).abs() <= tol.comparison(dim) {
        (0.5, 0.5, ProbabilityMethod::Indifference)
    } else {
        let total = norm_plus * norm_plus + norm_minus * norm_minus;
        (
            norm_plus * norm_plus / total,
            norm_minus * norm_minus / total,
            ProbabilityMethod::BornExtension,
        )
    };
    Ok(ProbabilityReport {
        e1: "plus is true".into(),
        e2: "minus is true".into(),
        pr_e1,
        pr_e2,
        sum_rule_residual: (pr_e1 + pr_e2 - 1.0).abs(),
        method,
        amplitude_norms: [norm_plus, norm_minus],
        flagged: method == ProbabilityMethod::BornExtension,
    })
}

/// Conclusions for one of the two entangled states.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateConclusions {
    pub state: String,
    /// `P_{Su″±} ∧ P_{1z+}`, expected FALSE.
    pub conjunctions: [TruthValue; 2],
    /// Lifted `P_{1z+}`, expected FALSE.
    pub companion: TruthValue,
    /// Value sets of `P_{Su″±}`, expected `{TRUE, FALSE}`.
    pub gaps: [ValueSet; 2],
    /// `C± = P_{Su″±} ∧ ¬P_{Su″±}` false.
    pub exclusivity: bool,
    /// `D = P_{Su″+} ∨ P_{Su″−}` true.
    pub exhaustivity: bool,
    pub probabilities: ProbabilityReport,
    /// Born weights of the lifted `P_{Su″±}`.
    pub born_weights: [f64; 2],
}

impl StateConclusions {
    fn born_gap(&self) -> f64 {
        (self.born_weights[0] - self.probabilities.pr_e1)
            .abs()
            .max((self.born_weights[1] - self.probabilities.pr_e2).abs())
    }

    pub fn passed(&self) -> bool {
        self.conjunctions == [TruthValue::False; 2]
            && self.companion == TruthValue::False
            && self.gaps == [ValueSet::BOTH; 2]
            && self.exclusivity
            && self.exhaustivity
            && self.probabilities.method == ProbabilityMethod::Indifference
            && (self.probabilities.pr_e1 - 0.5).abs() <= 1e-9
            && (self.probabilities.pr_e2 - 0.5).abs() <= 1e-9
            && self.probabilities.sum_rule_residual <= 1e-12
            && self.born_gap() <= 1e-9
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DemoReport {
    pub config: ModelConfig,
    pub dimension: usize,
    /// `P_{Su″±}` in `|Ψ_{Su′±}⟩` on `S` alone, with only the two spin
    /// contexts of `S`; expected INDEFINITE for all four pairs.
    pub gaps_before_pasting: Vec<(String, TruthValue)>,
    pub context_valid: bool,
    /// Every generator range is invariant under the SE context.
    pub generators_in_lattice: bool,
    /// Meet of the two pasted families is `{0}`.
    pub families_meet_trivially: bool,
    pub states: Vec<StateConclusions>,
}

impl DemoReport {
    pub fn passed(&self) -> bool {
        self.gaps_before_pasting
            .iter()
            .all(|(_, v)| *v == TruthValue::Indefinite)
            && self.context_valid
            && self.generators_in_lattice
            && self.families_meet_trivially
            && self.states.len() == 2
            && self.states.iter().all(StateConclusions::passed)
    }
}

/// Runs the qubit-environment argument end to end.
pub fn run_two_state_demo(cfg: &ModelConfig, tol: Tolerance) -> Result<DemoReport, ModelError> {
    cfg.validate(tol)?;
    let layout = build_se_space(cfg)?;
    let context = build_se_context(cfg, tol)?;
    let states = entangled_states(cfg, tol)?;

    let s_contexts = ContextSet::new(vec![
        spin_context("Su'", &cfg.u_prime, tol)?,
        spin_context("Su''", &cfg.u_double_prime, tol)?,
    ])?;
    let s_atoms = atoms_from_contexts(&s_contexts);
    let mut gaps_before_pasting = Vec::new();
    for (label, s) in [("+", &states.s_plus), ("-", &states.s_minus)] {
        for atom in ["Su''+", "Su''-"] {
            let v = evaluate_supervaluation(&PropExpr::atom(atom), &s_atoms, s, &s_contexts, tol)?;
            gaps_before_pasting.push((format!("{atom} in Su'{label}"), v));
        }
    }

    let projectors: Vec<Projector> = context
        .members()
        .iter()
        .map(|m| m.projector().clone())
        .collect();
    let context_valid = validate_context(&projectors, tol).passed();
    let generators_in_lattice = context
        .members()
        .iter()
        .map(|m| in_lattice(&m.range(), &context, tol))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .all(|b| b);
    let members: Vec<Subspace> = context.members().iter().map(|m| m.range()).collect();
    let prime_family = members[0].join(&members[1], tol)?;
    let double_family = members[2].join(&members[3], tol)?;
    let families_meet_trivially = prime_family.meet(&double_family, tol)?.is_zero();

    let env_plus = spin_projector(&Axis::Z, Sign::Plus);
    let companion_s = Subspace::from(env_plus.clone());
    let plus_s = Subspace::from(spin_projector(&cfg.u_double_prime, Sign::Plus));
    let minus_s = Subspace::from(spin_projector(&cfg.u_double_prime, Sign::Minus));
    let lifted_companion = layout.lift_subspace(&[(cfg.paste_slot, &env_plus)])?;
    let lifted_events = [
        layout.lift_subspace(&[(0, plus_s.projector())])?,
        layout.lift_subspace(&[(0, minus_s.projector())])?,
    ];

    let mut conclusions = Vec::with_capacity(2);
    for (label, state) in [("Su'+.1z-", &states.plus), ("Su'-.1z-", &states.minus)] {
        let mut conjunctions = [TruthValue::Indefinite; 2];
        let mut gaps = [ValueSet::FALSE; 2];
        for (i, event) in [&plus_s, &minus_s].into_iter().enumerate() {
            let conj =
                layout.lift_subspace(&[(0, event.projector()), (cfg.paste_slot, &env_plus)])?;
            conjunctions[i] = evaluate_hilbert(&conj, state, tol)?;
            gaps[i] = resolve_gap(event, &companion_s, state, &context, tol)?;
        }
        let companion = evaluate_hilbert(&lifted_companion, state, tol)?;
        let exclusivity = [&plus_s, &minus_s].into_iter().try_fold(true, |ok, e| {
            let c = layout.lift_subspace(&[(0, e.meet(&e.complement(), tol)?.projector())])?;
            Ok::<_, ModelError>(ok && evaluate_hilbert(&c, state, tol)? == TruthValue::False)
        })?;
        let d = layout.lift_subspace(&[(0, plus_s.join(&minus_s, tol)?.projector())])?;
        let exhaustivity = evaluate_hilbert(&d, state, tol)? == TruthValue::True;
        let probabilities =
            assign_probabilities(state, &plus_s, &minus_s, &companion_s, &context, tol)?;
        let born_weights = [
            born_weight(state, &lifted_events[0])?,
            born_weight(state, &lifted_events[1])?,
        ];
        conclusions.push(StateConclusions {
            state: label.to_string(),
            conjunctions,
            companion,
            gaps,
            exclusivity,
            exhaustivity,
            probabilities,
            born_weights,
        });
    }

    Ok(DemoReport {
        config: *cfg,
        dimension: layout.dim,
        gaps_before_pasting,
        context_valid,
        generators_in_lattice,
        families_meet_trivially,
        states: conclusions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contexts::generated_lattice;
    use crate::numerics::{basis_vector, real_vector};
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn spin_projector_examples() {
        let zp = spin_projector(&Axis::Z, Sign::Plus);
        let expected = ComplexMatrix::from_row_slice(
            2,
            2,
            &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        );
        assert_eq!(zp.matrix(), &expected);
        for z in spin_projector(&Axis::X, Sign::Plus).matrix().iter() {
            assert_relative_eq!(z.re, 0.5);
            assert_relative_eq!(z.im, 0.0);
        }
        let yp = spin_projector(&Axis::Y, Sign::Plus);
        assert!(Projector::new(yp.matrix().clone(), tol()).is_ok());
        assert_eq!(yp.rank(), 1);
    }

    #[test]
    fn axis_parsing() {
        assert_eq!("x".parse::<Axis>().unwrap(), Axis::X);
        assert_eq!("0,0,1".parse::<Axis>().unwrap(), Axis::Z);
        assert!(matches!(
            "1,1,0".parse::<Axis>(),
            Err(ModelError::NonUnitAxis(_))
        ));
        assert!(matches!(
            "w".parse::<Axis>(),
            Err(ModelError::AxisSyntax(_))
        ));
        assert!(matches!(
            "1,0".parse::<Axis>(),
            Err(ModelError::AxisSyntax(_))
        ));
    }

    #[test]
    fn se_space_dimensions() {
        let mut cfg = ModelConfig::default();
        assert_eq!(build_se_space(&cfg).unwrap().dim, 4);
        cfg.n_env = 3;
        let layout = build_se_space(&cfg).unwrap();
        assert_eq!(layout.dim, 16);
        assert_eq!(layout.lift(&[]).unwrap(), Projector::identity(16));
        cfg.n_env = 0;
        assert!(build_se_space(&cfg).is_err());
        cfg.n_env = 10;
        assert_eq!(build_se_space(&cfg), Err(ModelError::EnvironmentSize(10)));
    }

    #[test]
    fn se_context_is_valid_and_pasted() {
        let cfg = ModelConfig::default();
        let c = build_se_context(&cfg, tol()).unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(c.dim(), 4);
        let projectors: Vec<_> = c.members().iter().map(|m| m.projector().clone()).collect();
        assert!(validate_context(&projectors, tol()).passed());
        for m in c.members() {
            assert!(in_lattice(&m.range(), &c, tol()).unwrap());
        }
        assert_eq!(generated_lattice(&c).unwrap().len(), 16);
    }

    #[test]
    fn degenerate_axes_rejected() {
        let cfg = ModelConfig {
            u_prime: Axis::Z,
            u_double_prime: Axis::Z,
            ..ModelConfig::default()
        };
        assert_eq!(
            build_se_context(&cfg, tol()),
            Err(ModelError::DegenerateAxes)
        );
        let cfg = ModelConfig {
            paste_slot: 2,
            n_env: 3,
            ..ModelConfig::default()
        };
        assert!(matches!(
            build_se_context(&cfg, tol()),
            Err(ModelError::PasteSlot { .. })
        ));
    }

    #[test]
    fn entangled_state_amplitudes() {
        let states = entangled_states(&ModelConfig::default(), tol()).unwrap();
        let r = FRAC_1_SQRT_2;
        assert!((states.s_plus.amplitudes() - real_vector(&[r, r])).norm() < 1e-12);
        assert!((states.s_minus.amplitudes() - real_vector(&[r, -r])).norm() < 1e-12);
        // (1, 1)/√2 ⊗ (0, 1) = (0, 1, 0, 1)/√2.
        assert!((states.plus.amplitudes() - real_vector(&[0.0, r, 0.0, r])).norm() < 1e-12);
        assert_relative_eq!(states.plus.amplitudes().norm(), 1.0, epsilon = 1e-14);
        assert_relative_eq!(states.minus.amplitudes().norm(), 1.0, epsilon = 1e-14);

        let c = build_se_context(&ModelConfig::default(), tol()).unwrap();
        assert!(c.members()[0]
            .range()
            .contains_vector(states.plus.amplitudes(), tol())
            .unwrap());
        assert!(c.members()[1]
            .range()
            .contains_vector(states.minus.amplitudes(), tol())
            .unwrap());
    }

    #[test]
    fn entangled_states_for_other_orthogonal_axes() {
        let cfg = ModelConfig {
            u_prime: Axis::Y,
            u_double_prime: Axis::X,
            ..ModelConfig::default()
        };
        let states = entangled_states(&cfg, tol()).unwrap();
        let yp: Subspace = spin_projector(&Axis::Y, Sign::Plus).into();
        let ym: Subspace = spin_projector(&Axis::Y, Sign::Minus).into();
        assert!(yp
            .contains_vector(states.s_plus.amplitudes(), tol())
            .unwrap());
        assert!(ym
            .contains_vector(states.s_minus.amplitudes(), tol())
            .unwrap());
    }

    #[test]
    fn unequal_norm_axes_rejected_for_indifference() {
        let third = 1.0 / 3.0;
        let u = Axis::new([2.0 * 2f64.sqrt() * third, 0.0, -third], tol()).unwrap();
        let cfg = ModelConfig {
            u_prime: u,
            ..ModelConfig::default()
        };
        assert!(matches!(
            entangled_states(&cfg, tol()),
            Err(ModelError::UnequalNorms { .. })
        ));
    }

    #[test]
    fn resolve_gap_examples() {
        let cfg = ModelConfig::default();
        let c = build_se_context(&cfg, tol()).unwrap();
        let states = entangled_states(&cfg, tol()).unwrap();
        let sz_plus: Subspace = spin_projector(&Axis::Z, Sign::Plus).into();
        let sz_minus_state = spin_eigenstate(&Axis::Z, Sign::Minus);
        let z_plus: Subspace = spin_projector(&Axis::Z, Sign::Plus).into();
        let z_minus: Subspace = spin_projector(&Axis::Z, Sign::Minus).into();

        assert_eq!(
            resolve_gap(&sz_plus, &z_plus, &states.plus, &c, tol()).unwrap(),
            ValueSet::BOTH
        );
        let both_up =
            spin_eigenstate(&Axis::Z, Sign::Plus).tensor(&spin_eigenstate(&Axis::Z, Sign::Plus));
        assert_eq!(
            resolve_gap(&sz_plus, &z_plus, &both_up, &c, tol()).unwrap(),
            ValueSet::TRUE
        );

        // P_Sz+ ⊗ P_1z− is an element of the context with u′ = z, u″ = x.
        let swapped = build_se_context(
            &ModelConfig {
                u_prime: Axis::Z,
                u_double_prime: Axis::X,
                ..ModelConfig::default()
            },
            tol(),
        )
        .unwrap();
        let down_down = sz_minus_state.tensor(&spin_eigenstate(&Axis::Z, Sign::Minus));
        assert_eq!(
            resolve_gap(&sz_plus, &z_minus, &down_down, &swapped, tol()).unwrap(),
            ValueSet::FALSE
        );
        assert!(matches!(
            resolve_gap(&sz_plus, &z_minus, &down_down, &c, tol()),
            Err(ValuationError::ConjunctionOutsideLattice(_))
        ));
    }

    #[test]
    fn indifference_probabilities() {
        let cfg = ModelConfig::default();
        let c = build_se_context(&cfg, tol()).unwrap();
        let states = entangled_states(&cfg, tol()).unwrap();
        let plus: Subspace = spin_projector(&Axis::Z, Sign::Plus).into();
        let minus: Subspace = spin_projector(&Axis::Z, Sign::Minus).into();
        let companion: Subspace = spin_projector(&Axis::Z, Sign::Plus).into();
        for s in [&states.plus, &states.minus] {
            let r = assign_probabilities(s, &plus, &minus, &companion, &c, tol()).unwrap();
            assert_eq!(r.method, ProbabilityMethod::Indifference);
            assert_eq!((r.pr_e1, r.pr_e2), (0.5, 0.5));
            assert_eq!(r.sum_rule_residual, 0.0);
            assert!(!r.flagged);
        }
    }

    #[test]
    fn born_extension_for_unequal_norms() {
        let third = 1.0 / 3.0;
        let u = Axis::new([2.0 * 2f64.sqrt() * third, 0.0, -third], tol()).unwrap();
        let s = spin_eigenstate(&u, Sign::Plus);
        // Amplitudes on z± are √(1/3), √(2/3) up to phase.
        assert_relative_eq!(s.amplitudes()[0].norm_sqr(), third, epsilon = 1e-12);
        assert_relative_eq!(s.amplitudes()[1].norm_sqr(), 2.0 * third, epsilon = 1e-12);

        let cfg = ModelConfig {
            u_prime: u,
            ..ModelConfig::default()
        };
        let c = build_se_context(&cfg, tol()).unwrap();
        let state = s.tensor(&spin_eigenstate(&Axis::Z, Sign::Minus));
        let plus: Subspace = spin_projector(&Axis::Z, Sign::Plus).into();
        let minus: Subspace = spin_projector(&Axis::Z, Sign::Minus).into();
        let r = assign_probabilities(&state, &plus, &minus, &plus, &c, tol()).unwrap();
        assert_eq!(r.method, ProbabilityMethod::BornExtension);
        assert!(r.flagged);
        assert_relative_eq!(r.pr_e1, third, epsilon = 1e-12);
        assert_relative_eq!(r.pr_e2, 2.0 * third, epsilon = 1e-12);
        assert!(r.sum_rule_residual <= 1e-12);
    }

    #[test]
    fn probabilities_require_a_gap() {
        let cfg = ModelConfig::default();
        let c = build_se_context(&cfg, tol()).unwrap();
        let up_up =
            spin_eigenstate(&Axis::Z, Sign::Plus).tensor(&spin_eigenstate(&Axis::Z, Sign::Plus));
        let plus: Subspace = spin_projector(&Axis::Z, Sign::Plus).into();
        let minus: Subspace = spin_projector(&Axis::Z, Sign::Minus).into();
        assert!(matches!(
            assign_probabilities(&up_up, &plus, &minus, &plus, &c, tol()),
            Err(ModelError::Precondition(_))
        ));
    }

    #[test]
    fn born_weight_examples() {
        let e1 = StateVector::basis(2, 0);
        let p = Subspace::from_span(2, &[basis_vector(2, 0)], tol()).unwrap();
        assert_relative_eq!(born_weight(&e1, &p).unwrap(), 1.0);
        let plus = StateVector::normalized(real_vector(&[1.0, 1.0])).unwrap();
        assert_relative_eq!(born_weight(&plus, &p).unwrap(), 0.5, epsilon = 1e-15);
        assert!(born_weight(&StateVector::basis(4, 0), &p).is_err());
    }

    #[test]
    fn default_demo_passes() {
        let report = run_two_state_demo(&ModelConfig::default(), tol()).unwrap();
        assert!(report.passed(), "{report:#?}");
        assert_eq!(report.dimension, 4);
        assert_eq!(report.gaps_before_pasting.len(), 4);
    }

    #[test]
    fn larger_environment_is_inert() {
        let small = run_two_state_demo(&ModelConfig::default(), tol()).unwrap();
        let big = run_two_state_demo(
            &ModelConfig {
                n_env: 3,
                ..ModelConfig::default()
            },
            tol(),
        )
        .unwrap();
        assert!(big.passed());
        assert_eq!(big.dimension, 16);
        for (a, b) in small.states.iter().zip(&big.states) {
            assert_eq!(a.conjunctions, b.conjunctions);
            assert_eq!(a.companion, b.companion);
            assert_eq!(a.gaps, b.gaps);
            assert_eq!(a.probabilities.pr_e1, b.probabilities.pr_e1);
        }
    }
}
