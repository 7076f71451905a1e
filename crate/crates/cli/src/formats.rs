//! The JSON file formats: networks, campaigns, hypothesis sets and
//! proofs. Every number travels as a string in decimal or `p/q` form so
//! exact rationals survive the trip; see `docs/file-formats.md` for the
//! schemas and conventions (0-based proof line references, ModusPonens
//! refs ordered `[antecedent, implication]`).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use influence_core::{
    parse_formula, parse_scalar, AtomicStatement, Derivation, DerivationLine, Formula, Hypotheses,
    Justification, Network, Rat, SemanticsMode, Spending,
};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{context}: {message}")]
    Invalid { context: String, message: String },
}

fn invalid(context: impl Into<String>, message: impl ToString) -> FormatError {
    FormatError::Invalid { context: context.into(), message: message.to_string() }
}

fn number(context: &str, raw: &str) -> Result<Rat, FormatError> {
    parse_scalar(raw).map_err(|e| invalid(context, e))
}

// ---------------------------------------------------------------------------
// Networks
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkFile {
    pub agents: Vec<String>,
    #[serde(default)]
    pub influence: Vec<EdgeRecord>,
    pub propensity: BTreeMap<String, String>,
    pub threshold: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub from: String,
    pub to: String,
    pub weight: String,
}

impl NetworkFile {
    pub fn to_network(&self) -> Result<Network, FormatError> {
        let weights = self
            .influence
            .iter()
            .map(|e| {
                let w = number(&format!("influence {} -> {}", e.from, e.to), &e.weight)?;
                Ok(((e.from.clone(), e.to.clone()), w))
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        let propensity = self
            .propensity
            .iter()
            .map(|(a, raw)| Ok((a.clone(), number(&format!("propensity of {a}"), raw)?)))
            .collect::<Result<BTreeMap<_, _>, FormatError>>()?;
        let threshold = self
            .threshold
            .iter()
            .map(|(a, raw)| Ok((a.clone(), number(&format!("threshold of {a}"), raw)?)))
            .collect::<Result<BTreeMap<_, _>, FormatError>>()?;
        Network::new(self.agents.iter().cloned(), weights, propensity, threshold)
            .map_err(|e| invalid("network", e))
    }

    pub fn from_network(net: &Network) -> Self {
        NetworkFile {
            agents: net.agents().iter().cloned().collect(),
            influence: net
                .edges()
                .map(|(from, to, w)| EdgeRecord {
                    from: from.clone(),
                    to: to.clone(),
                    weight: w.to_string(),
                })
                .collect(),
            propensity: net
                .agents()
                .iter()
                .map(|a| (a.clone(), net.propensity_of(a).to_string()))
                .collect(),
            threshold: net
                .agents()
                .iter()
                .map(|a| (a.clone(), net.threshold_of(a).to_string()))
                .collect(),
        }
    }
}

/// A campaign file is a plain map from agent to spend.
pub type SpendFile = BTreeMap<String, String>;

pub fn spend_from_file(file: &SpendFile) -> Result<Spending, FormatError> {
    Spending::new(
        file.iter()
            .map(|(a, raw)| Ok((a.clone(), number(&format!("spend on {a}"), raw)?)))
            .collect::<Result<Vec<_>, FormatError>>()?,
    )
    .map_err(|e| invalid("spend", e))
}

// ---------------------------------------------------------------------------
// Hypothesis sets
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypothesesFile {
    pub universe: Vec<String>,
    #[serde(default)]
    pub hypotheses: Vec<HypothesisRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypothesisRecord {
    pub left: Vec<String>,
    pub budget: String,
    pub right: Vec<String>,
}

impl HypothesesFile {
    pub fn to_hypotheses(&self) -> Result<Hypotheses, FormatError> {
        let statements = self
            .hypotheses
            .iter()
            .enumerate()
            .map(|(i, record)| {
                let context = format!("hypothesis {i}");
                let budget = number(&context, &record.budget)?;
                AtomicStatement::new(
                    record.left.iter().cloned().collect(),
                    budget,
                    record.right.iter().cloned().collect(),
                )
                .map_err(|e| invalid(&context, e))
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        Hypotheses::new(self.universe.iter().cloned().collect(), statements)
            .map_err(|e| invalid("hypotheses", e))
    }
}

// ---------------------------------------------------------------------------
// Canonical-construction output
// ---------------------------------------------------------------------------

/// What `canon` emits: the network plus a name map from hypothesis index
/// (promotional) or rendered label (preventive) to its gate agents, and
/// the preventive construction's epsilon.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CanonOutput {
    pub network: NetworkFile,
    pub names: BTreeMap<String, GateNames>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateNames {
    pub alpha: String,
    pub beta: String,
}

// ---------------------------------------------------------------------------
// Proofs
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProofFile {
    pub lines: Vec<ProofLineRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProofLineRecord {
    pub formula: String,
    pub rule: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyp: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub refs: Vec<usize>,
}

impl ProofFile {
    pub fn to_derivation(&self, system: SemanticsMode) -> Result<Derivation<Rat>, FormatError> {
        let lines = self
            .lines
            .iter()
            .enumerate()
            .map(|(i, record)| {
                let context = format!("proof line {i}");
                let formula: Formula<Rat> =
                    parse_formula(&record.formula).map_err(|e| invalid(&context, e))?;
                let justification = match record.rule.as_str() {
                    "Hypothesis" => Justification::Hypothesis(
                        record.hyp.ok_or_else(|| invalid(&context, "missing `hyp` index"))?,
                    ),
                    "Reflexivity" => Justification::Reflexivity,
                    "Augmentation" => Justification::Augmentation,
                    "Transitivity" => Justification::Transitivity,
                    "Monotonicity" => Justification::Monotonicity,
                    "Tautology" => Justification::Tautology,
                    "ModusPonens" => match record.refs.as_slice() {
                        [antecedent, implication] => {
                            Justification::ModusPonens(*antecedent, *implication)
                        }
                        _ => {
                            return Err(invalid(
                                &context,
                                "ModusPonens needs refs [antecedent, implication]",
                            ))
                        }
                    },
                    other => return Err(invalid(&context, format!("unknown rule `{other}`"))),
                };
                Ok(DerivationLine { formula, justification })
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        Ok(Derivation { system, lines })
    }

    pub fn from_derivation(derivation: &Derivation<Rat>) -> Self {
        ProofFile {
            lines: derivation
                .lines
                .iter()
                .map(|line| {
                    let (rule, hyp, refs) = match &line.justification {
                        Justification::Hypothesis(i) => ("Hypothesis", Some(*i), vec![]),
                        Justification::Reflexivity => ("Reflexivity", None, vec![]),
                        Justification::Augmentation => ("Augmentation", None, vec![]),
                        Justification::Transitivity => ("Transitivity", None, vec![]),
                        Justification::Monotonicity => ("Monotonicity", None, vec![]),
                        Justification::Tautology => ("Tautology", None, vec![]),
                        Justification::ModusPonens(a, i) => ("ModusPonens", None, vec![*a, *i]),
                    };
                    ProofLineRecord {
                        formula: line.formula.to_string(),
                        rule: rule.to_string(),
                        hyp,
                        refs,
                    }
                })
                .collect(),
        }
    }
}
