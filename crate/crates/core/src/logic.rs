//! The two Hilbert-style axiom systems over influence atoms, a proof
//! checker for explicit derivations, and decision procedures for atomic
//! derivability from atomic hypothesis sets.
//!
//! Both systems extend the classical functional-dependency axioms with
//! budget annotations and share Reflexivity (`A |>p B` when `B ⊆ A`) and
//! Augmentation (`A |>p B -> A,C |>p B,C`). They differ in how budgets
//! chain: the promotional system's Transitivity adds budgets
//! (`A |>p B -> (B |>q C -> A |>p+q C)`) and has no monotonicity axiom
//! (the upward direction is derivable); the preventive system's
//! Transitivity keeps one budget level (`A |>p B -> (B |>p C -> A |>p C)`)
//! and adds downward Monotonicity (`A |>p B -> A |>q B` for `q <= p`).
//! Propositional tautologies over atoms and Modus Ponens round out both.
//!
//! Budget side conditions are exact rational equalities: a promotional
//! Transitivity instance is rejected unless its conclusion budget is the
//! literal sum of the premise budgets.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::formula::{Formula, SemanticsMode};
use crate::network::{AgentSet, NetworkError};
use crate::scalar::Scalar;

/// An atomic influence statement `left |>budget right`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AtomicStatement<T> {
    pub left: AgentSet,
    pub budget: T,
    pub right: AgentSet,
}

impl<T: Scalar> AtomicStatement<T> {
    pub fn new(left: AgentSet, budget: T, right: AgentSet) -> Result<Self, LogicError> {
        if budget.is_negative() {
            return Err(LogicError::NegativeBudget);
        }
        Ok(Self { left, budget, right })
    }

    pub fn to_formula(&self) -> Formula<T> {
        Formula::Atom {
            left: self.left.clone(),
            budget: self.budget.clone(),
            right: self.right.clone(),
        }
    }
}

/// A finite universe of agents plus atomic hypotheses over it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisSet<T> {
    universe: AgentSet,
    hypotheses: Vec<AtomicStatement<T>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("negative budget")]
    NegativeBudget,
    #[error("agent `{0}` is not in the universe")]
    OutsideUniverse(String),
    #[error(transparent)]
    Network(#[from] NetworkError),
}

impl<T: Scalar> HypothesisSet<T> {
    pub fn new(
        universe: AgentSet,
        hypotheses: Vec<AtomicStatement<T>>,
    ) -> Result<Self, LogicError> {
        for h in &hypotheses {
            for agent in h.left.iter().chain(h.right.iter()) {
                if !universe.contains(agent) {
                    return Err(LogicError::OutsideUniverse(agent.clone()));
                }
            }
        }
        Ok(Self { universe, hypotheses })
    }

    pub fn universe(&self) -> &AgentSet {
        &self.universe
    }

    pub fn hypotheses(&self) -> &[AtomicStatement<T>] {
        &self.hypotheses
    }

    /// All distinct budgets appearing in the hypotheses.
    pub fn budgets(&self) -> BTreeSet<T> {
        self.hypotheses.iter().map(|h| h.budget.clone()).collect()
    }

    fn check_inside(&self, set: &AgentSet) -> Result<(), LogicError> {
        for agent in set {
            if !self.universe.contains(agent) {
                return Err(LogicError::OutsideUniverse(agent.clone()));
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Derivations and the proof checker
// ---------------------------------------------------------------------------

/// How a derivation line claims to be justified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    /// Verbatim hypothesis by index.
    Hypothesis(usize),
    Reflexivity,
    Augmentation,
    Transitivity,
    /// Preventive system only.
    Monotonicity,
    /// Propositional tautology over the line's atoms.
    Tautology,
    /// `ModusPonens(i, j)`: line `j` is `line_i -> this`.
    ModusPonens(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationLine<T> {
    pub formula: Formula<T>,
    pub justification: Justification,
}

/// A checkable Hilbert proof: every line must be a hypothesis, a correct
/// axiom instance of the declared system, a tautology, or follow from two
/// earlier lines by Modus Ponens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation<T> {
    pub system: SemanticsMode,
    pub lines: Vec<DerivationLine<T>>,
}

/// First failing line (0-based) and the reason it fails.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {}: {reason}", line + 1)]
pub struct DerivationError {
    pub line: usize,
    pub reason: String,
}

const TAUTOLOGY_ATOM_LIMIT: usize = 16;

/// Checks every line of a derivation against the hypothesis set. Accepts
/// exactly the proofs of the declared system; budget side conditions are
/// exact.
pub fn check_derivation<T: Scalar>(
    derivation: &Derivation<T>,
    hypotheses: &HypothesisSet<T>,
) -> Result<(), DerivationError> {
    for (index, line) in derivation.lines.iter().enumerate() {
        check_line(derivation, hypotheses, index, line)
            .map_err(|reason| DerivationError { line: index, reason })?;
    }
    Ok(())
}

fn check_line<T: Scalar>(
    derivation: &Derivation<T>,
    hypotheses: &HypothesisSet<T>,
    index: usize,
    line: &DerivationLine<T>,
) -> Result<(), String> {
    for agent in line.formula.agents() {
        if !hypotheses.universe().contains(&agent) {
            return Err(format!("agent `{agent}` is not in the universe"));
        }
    }
    if has_negative_budget(&line.formula) {
        return Err("negative budget in atom".into());
    }
    match &line.justification {
        Justification::Hypothesis(i) => {
            let hyp = hypotheses
                .hypotheses()
                .get(*i)
                .ok_or_else(|| format!("hypothesis index {i} out of range"))?;
            if line.formula != hyp.to_formula() {
                return Err(format!("formula does not match hypothesis {i}"));
            }
            Ok(())
        }
        Justification::Reflexivity => {
            let Formula::Atom { left, right, .. } = &line.formula else {
                return Err("Reflexivity must conclude an atom".into());
            };
            if !right.is_subset(left) {
                return Err(
                    "Reflexivity side condition: right set must be contained in the left set"
                        .into(),
                );
            }
            Ok(())
        }
        Justification::Augmentation => check_augmentation(&line.formula),
        Justification::Transitivity => check_transitivity(&line.formula, derivation.system),
        Justification::Monotonicity => {
            if derivation.system == SemanticsMode::Promotional {
                return Err("Monotonicity is not an axiom of the promotional system".into());
            }
            check_monotonicity(&line.formula)
        }
        Justification::Tautology => check_tautology(&line.formula),
        Justification::ModusPonens(ant, imp) => {
            if *ant >= index || *imp >= index {
                return Err("Modus Ponens may only reference earlier lines".into());
            }
            let antecedent = &derivation.lines[*ant].formula;
            let implication = &derivation.lines[*imp].formula;
            let Formula::Implies(a, b) = implication else {
                return Err(format!("line {} is not an implication", imp + 1));
            };
            if **a != *antecedent {
                return Err(format!("line {} is not the antecedent of line {}", ant + 1, imp + 1));
            }
            if **b != line.formula {
                return Err("conclusion does not match the implication's consequent".into());
            }
            Ok(())
        }
    }
}

fn as_atom<T>(f: &Formula<T>) -> Option<(&AgentSet, &T, &AgentSet)> {
    match f {
        Formula::Atom { left, budget, right } => Some((left, budget, right)),
        _ => None,
    }
}

fn has_negative_budget<T: Scalar>(f: &Formula<T>) -> bool {
    match f {
        Formula::Atom { budget, .. } => budget.is_negative(),
        Formula::Not(inner) => has_negative_budget(inner),
        Formula::Implies(a, b) => has_negative_budget(a) || has_negative_budget(b),
    }
}

/// `A |>p B -> A,C |>p B,C`: the conclusion's sets must extend both
/// premise sets by one common set `C`.
fn check_augmentation<T: Scalar>(f: &Formula<T>) -> Result<(), String> {
    let Formula::Implies(premise, conclusion) = f else {
        return Err("Augmentation must be an implication".into());
    };
    let (a, p, b) = as_atom(premise).ok_or("Augmentation premise must be an atom")?;
    let (a2, p2, b2) = as_atom(conclusion).ok_or("Augmentation conclusion must be an atom")?;
    if p != p2 {
        return Err("Augmentation must keep the budget unchanged".into());
    }
    let common_extension = a.is_subset(a2)
        && b.is_subset(b2)
        && a2.difference(a).all(|x| b2.contains(x))
        && b2.difference(b).all(|x| a2.contains(x));
    if !common_extension {
        return Err("Augmentation side condition: both sides must grow by the same set".into());
    }
    Ok(())
}

/// Promotional: `A |>p B -> (B |>q C -> A |>p+q C)` with an exact sum.
/// Preventive: the same shape with all three budgets equal.
fn check_transitivity<T: Scalar>(f: &Formula<T>, system: SemanticsMode) -> Result<(), String> {
    let Formula::Implies(first, rest) = f else {
        return Err("Transitivity must be an implication".into());
    };
    let Formula::Implies(second, conclusion) = &**rest else {
        return Err("Transitivity must be a nested implication".into());
    };
    let (a, p, b) = as_atom(first).ok_or("Transitivity premises must be atoms")?;
    let (b2, q, c) = as_atom(second).ok_or("Transitivity premises must be atoms")?;
    let (a2, r, c2) = as_atom(conclusion).ok_or("Transitivity conclusion must be an atom")?;
    if b2 != b {
        return Err("Transitivity: middle sets must match".into());
    }
    if a2 != a || c2 != c {
        return Err("Transitivity: conclusion must relate the outer sets".into());
    }
    match system {
        SemanticsMode::Promotional => {
            if *r != p.clone() + q.clone() {
                return Err("Transitivity: conclusion budget must equal the exact sum".into());
            }
        }
        SemanticsMode::Preventive => {
            if q != p || r != p {
                return Err("Transitivity: all budgets must be equal".into());
            }
        }
    }
    Ok(())
}

/// `A |>p B -> A |>q B` with `q <= p`.
fn check_monotonicity<T: Scalar>(f: &Formula<T>) -> Result<(), String> {
    let Formula::Implies(premise, conclusion) = f else {
        return Err("Monotonicity must be an implication".into());
    };
    let (a, p, b) = as_atom(premise).ok_or("Monotonicity premise must be an atom")?;
    let (a2, q, b2) = as_atom(conclusion).ok_or("Monotonicity conclusion must be an atom")?;
    if a2 != a || b2 != b {
        return Err("Monotonicity must keep both sets unchanged".into());
    }
    if q > p {
        return Err("Monotonicity side condition: budget may only decrease".into());
    }
    Ok(())
}

/// Truth-table check treating distinct atoms as propositional variables.
fn check_tautology<T: Scalar>(f: &Formula<T>) -> Result<(), String> {
    let mut atoms: BTreeMap<&Formula<T>, usize> = BTreeMap::new();
    collect_atoms(f, &mut atoms);
    let n = atoms.len();
    if n > TAUTOLOGY_ATOM_LIMIT {
        return Err(format!(
            "tautology check limited to {TAUTOLOGY_ATOM_LIMIT} distinct atoms, found {n}"
        ));
    }
    for assignment in 0u32..(1u32 << n) {
        if !eval_propositional(f, &atoms, assignment) {
            return Err("not a propositional tautology".into());
        }
    }
    Ok(())
}

fn collect_atoms<'f, T: Scalar>(f: &'f Formula<T>, atoms: &mut BTreeMap<&'f Formula<T>, usize>) {
    match f {
        Formula::Atom { .. } => {
            let next = atoms.len();
            atoms.entry(f).or_insert(next);
        }
        Formula::Not(inner) => collect_atoms(inner, atoms),
        Formula::Implies(a, b) => {
            collect_atoms(a, atoms);
            collect_atoms(b, atoms);
        }
    }
}

fn eval_propositional<T: Scalar>(
    f: &Formula<T>,
    atoms: &BTreeMap<&Formula<T>, usize>,
    assignment: u32,
) -> bool {
    match f {
        Formula::Atom { .. } => assignment & (1 << atoms[f]) != 0,
        Formula::Not(inner) => !eval_propositional(inner, atoms, assignment),
        Formula::Implies(a, b) => {
            !eval_propositional(a, atoms, assignment) || eval_propositional(b, atoms, assignment)
        }
    }
}

// ---------------------------------------------------------------------------
// Atomic derivability
// ---------------------------------------------------------------------------

/// Least budget `q` with the promotional system deriving `from |>q to`
/// from the hypotheses, or `None` when no budget suffices. Uniform-cost
/// search over agent subsets: a hypothesis fires from a state containing
/// its left set, at its budget, adding its right set; derivability at `q`
/// is equivalent to the minimum being at most `q`.
pub fn min_derivation_budget<T: Scalar>(
    x: &HypothesisSet<T>,
    from: &AgentSet,
    to: &AgentSet,
) -> Result<Option<T>, LogicError> {
    Ok(promo_search(x, from, to)?.map(|(budget, _)| budget))
}

/// As [`min_derivation_budget`], also returning the hypothesis indices
/// fired along the cheapest route (in firing order).
fn promo_search<T: Scalar>(
    x: &HypothesisSet<T>,
    from: &AgentSet,
    to: &AgentSet,
) -> Result<Option<(T, Vec<usize>)>, LogicError> {
    x.check_inside(from)?;
    x.check_inside(to)?;
    let mut dist: BTreeMap<AgentSet, T> = BTreeMap::new();
    let mut parent: BTreeMap<AgentSet, (AgentSet, usize)> = BTreeMap::new();
    let mut queue: BTreeSet<(T, AgentSet)> = BTreeSet::new();
    dist.insert(from.clone(), T::zero());
    queue.insert((T::zero(), from.clone()));
    while let Some((cost, state)) = queue.pop_first() {
        if to.is_subset(&state) {
            let mut fired = Vec::new();
            let mut cursor = &state;
            while let Some((prev, i)) = parent.get(cursor) {
                fired.push(*i);
                cursor = prev;
            }
            fired.reverse();
            return Ok(Some((cost, fired)));
        }
        for (i, hyp) in x.hypotheses().iter().enumerate() {
            if !hyp.left.is_subset(&state) || hyp.right.is_subset(&state) {
                continue;
            }
            let mut next: AgentSet = state.clone();
            next.extend(hyp.right.iter().cloned());
            let next_cost = cost.clone() + hyp.budget.clone();
            let better = match dist.get(&next) {
                None => true,
                Some(old) => next_cost < *old,
            };
            if better {
                if let Some(old) = dist.get(&next) {
                    queue.remove(&(old.clone(), next.clone()));
                }
                dist.insert(next.clone(), next_cost.clone());
                parent.insert(next.clone(), (state.clone(), i));
                queue.insert((next_cost, next));
            }
        }
    }
    Ok(None)
}

/// The preventive syntactic closure of `from` at budget level `level`:
/// least fixpoint of firing every hypothesis whose budget is at least the
/// level (Monotonicity lowers a hypothesis to the level; Transitivity
/// chains only at equal level).
pub fn preventive_closure<T: Scalar>(
    x: &HypothesisSet<T>,
    from: &AgentSet,
    level: &T,
) -> Result<AgentSet, LogicError> {
    Ok(prev_search(x, from, level)?.0)
}

fn prev_search<T: Scalar>(
    x: &HypothesisSet<T>,
    from: &AgentSet,
    level: &T,
) -> Result<(AgentSet, Vec<usize>), LogicError> {
    x.check_inside(from)?;
    if level.is_negative() {
        return Err(LogicError::NegativeBudget);
    }
    let mut closure = from.clone();
    let mut fired = Vec::new();
    let mut changed = true;
    while changed {
        changed = false;
        for (i, hyp) in x.hypotheses().iter().enumerate() {
            if hyp.budget >= *level
                && hyp.left.is_subset(&closure)
                && !hyp.right.is_subset(&closure)
            {
                closure.extend(hyp.right.iter().cloned());
                fired.push(i);
                changed = true;
            }
        }
    }
    Ok((closure, fired))
}

/// Is `from |>budget to` derivable from the hypotheses in the given
/// system? Promotional: the minimal derivation budget is at most the
/// budget. Preventive: the target lies inside the closure at that level.
pub fn decide_derivable<T: Scalar>(
    system: SemanticsMode,
    x: &HypothesisSet<T>,
    from: &AgentSet,
    to: &AgentSet,
    budget: &T,
) -> Result<bool, LogicError> {
    if budget.is_negative() {
        return Err(LogicError::NegativeBudget);
    }
    match system {
        SemanticsMode::Promotional => Ok(match min_derivation_budget(x, from, to)? {
            Some(min) => min <= *budget,
            None => false,
        }),
        SemanticsMode::Preventive => {
            x.check_inside(to)?;
            Ok(to.is_subset(&preventive_closure(x, from, budget)?))
        }
    }
}

// ---------------------------------------------------------------------------
// Certificate emission
// ---------------------------------------------------------------------------

/// Builds a machine-checkable derivation of `from |>budget to` in the
/// given system, or `None` when the goal is not derivable at that budget.
/// Every emitted proof passes [`check_derivation`].
pub fn derive_atomic<T: Scalar>(
    system: SemanticsMode,
    x: &HypothesisSet<T>,
    from: &AgentSet,
    to: &AgentSet,
    budget: &T,
) -> Result<Option<Derivation<T>>, LogicError> {
    if budget.is_negative() {
        return Err(LogicError::NegativeBudget);
    }
    x.check_inside(to)?;
    match system {
        SemanticsMode::Promotional => {
            let Some((min, fired)) = promo_search(x, from, to)? else {
                return Ok(None);
            };
            if min > *budget {
                return Ok(None);
            }
            Ok(Some(emit_proof(system, x, from, to, budget, &fired)))
        }
        SemanticsMode::Preventive => {
            let (closure, fired) = prev_search(x, from, budget)?;
            if !to.is_subset(&closure) {
                return Ok(None);
            }
            Ok(Some(emit_proof(system, x, from, to, budget, &fired)))
        }
    }
}

/// Shared proof skeleton: carry `from |>c S` across hypothesis firings,
/// then project onto the goal with Reflexivity and Transitivity. In the
/// promotional system `c` accumulates fired budgets and a final zero-cost
/// Transitivity lifts it to the requested budget; in the preventive
/// system every line sits at the requested level, with Monotonicity
/// lowering each hypothesis to it.
fn emit_proof<T: Scalar>(
    system: SemanticsMode,
    x: &HypothesisSet<T>,
    from: &AgentSet,
    to: &AgentSet,
    budget: &T,
    fired: &[usize],
) -> Derivation<T> {
    let atom = |left: &AgentSet, b: &T, right: &AgentSet| Formula::Atom {
        left: left.clone(),
        budget: b.clone(),
        right: right.clone(),
    };
    let mut lines: Vec<DerivationLine<T>> = Vec::new();
    let mut push = |formula: Formula<T>, justification: Justification| -> usize {
        lines.push(DerivationLine { formula, justification });
        lines.len() - 1
    };

    let level = |hyp_budget: &T| match system {
        SemanticsMode::Promotional => hyp_budget.clone(),
        SemanticsMode::Preventive => budget.clone(),
    };

    // from |>start from
    let start_budget = match system {
        SemanticsMode::Promotional => T::zero(),
        SemanticsMode::Preventive => budget.clone(),
    };
    let mut state = from.clone();
    let mut cost = start_budget.clone();
    let mut have = push(atom(from, &start_budget, &state), Justification::Reflexivity);

    for &i in fired {
        let hyp = &x.hypotheses()[i];
        let mut grown = state.clone();
        grown.extend(hyp.right.iter().cloned());
        let step_budget = level(&hyp.budget);

        let mut hyp_line = push(hyp.to_formula(), Justification::Hypothesis(i));
        if system == SemanticsMode::Preventive && hyp.budget != *budget {
            let lowered = atom(&hyp.left, budget, &hyp.right);
            let mono = push(
                Formula::implies(hyp.to_formula(), lowered.clone()),
                Justification::Monotonicity,
            );
            hyp_line = push(lowered, Justification::ModusPonens(hyp_line, mono));
        }
        let leveled = atom(&hyp.left, &step_budget, &hyp.right);

        // Augment the (leveled) hypothesis by the current state ...
        let widened = atom(&state, &step_budget, &grown);
        let aug = push(Formula::implies(leveled, widened.clone()), Justification::Augmentation);
        let widened_line = push(widened.clone(), Justification::ModusPonens(hyp_line, aug));

        // ... and chain it onto what we already have.
        let next_cost = match system {
            SemanticsMode::Promotional => cost.clone() + hyp.budget.clone(),
            SemanticsMode::Preventive => budget.clone(),
        };
        let grown_atom = atom(from, &next_cost, &grown);
        let trans = push(
            Formula::implies(
                atom(from, &cost, &state),
                Formula::implies(widened, grown_atom.clone()),
            ),
            Justification::Transitivity,
        );
        let partial = push(
            Formula::implies(atom(&state, &step_budget, &grown), grown_atom.clone()),
            Justification::ModusPonens(have, trans),
        );
        have = push(grown_atom, Justification::ModusPonens(widened_line, partial));
        state = grown;
        cost = next_cost;
    }

    // Project the reached set onto the goal at the current budget. The
    // projection is a free Reflexivity step: budget zero promotionally
    // (keeping the Transitivity sum exact), the shared level preventively.
    if *to != state {
        let step0 = match system {
            SemanticsMode::Promotional => T::zero(),
            SemanticsMode::Preventive => budget.clone(),
        };
        let projected = atom(&state, &step0, to);
        let refl = push(projected.clone(), Justification::Reflexivity);
        let goal_now = atom(from, &cost, to);
        let trans = push(
            Formula::implies(
                atom(from, &cost, &state),
                Formula::implies(projected.clone(), goal_now.clone()),
            ),
            Justification::Transitivity,
        );
        let partial = push(
            Formula::implies(projected, goal_now.clone()),
            Justification::ModusPonens(have, trans),
        );
        have = push(goal_now, Justification::ModusPonens(refl, partial));
    }

    // Promotional: lift the accumulated budget up to the requested one.
    if system == SemanticsMode::Promotional && cost != *budget {
        let lift = budget.clone() - cost.clone();
        let refl = push(atom(from, &lift, from), Justification::Reflexivity);
        let goal = atom(from, budget, to);
        let trans = push(
            Formula::implies(
                atom(from, &lift, from),
                Formula::implies(atom(from, &cost, to), goal.clone()),
            ),
            Justification::Transitivity,
        );
        let partial = push(
            Formula::implies(atom(from, &cost, to), goal.clone()),
            Justification::ModusPonens(refl, trans),
        );
        push(goal, Justification::ModusPonens(have, partial));
    }

    Derivation { system, lines }
}
