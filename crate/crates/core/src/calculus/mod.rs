//! Sequents, rules and proof trees of the single-circuit calculus.
//!
//! A sequent has a coherent state on the left and at most one formula on the
//! right:
//!
//! * `Σ =>`: a coherent state, nothing measured yet;
//! * `Σ => P(Σ)`: the Born distribution has been attached (rule BR);
//! * `Σ ⊢ₚ |x⟩ₙ`: the register was measured with outcome `x` (rule M).
//!
//! Because a [`Sequent`] can hold only one succedent formula, weakening on the
//! right is not expressible at all. Weakening on the left is expressible as
//! [`RuleApp::Weaken`] so that scripts can state it, and it is always
//! rejected: adding a state to the antecedent makes it interfere with the
//! existing superposition, which can remove conclusions that were available
//! before.

mod check;
mod sample;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::amplitude::{ArithError, ExactReal};
use crate::gates::{apply, GateApplication, GateError};
use crate::scalar::Coeff;
use crate::state::{ket, tensor, BasisState, Superposition};

pub use check::{check, path_string, CheckReport, Finding, NodeReport};
pub use sample::{sample_outcome, unit_interval};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("WrongPremiseShape: {rule} expects {expected}, found {found}")]
    WrongPremiseShape { rule: &'static str, expected: &'static str, found: &'static str },
    #[error("WrongPremiseCount: {rule} takes {expected} premise(s), found {found}")]
    WrongPremiseCount { rule: &'static str, expected: &'static str, found: usize },
    #[error("OutcomeNotInSupport: {outcome} has probability zero and cannot be a measurement conclusion")]
    OutcomeNotInSupport { outcome: BasisState },
    #[error("PrepOutcomeMismatch: premise measured {measured}, but prep asserts {asserted}")]
    PrepOutcomeMismatch { measured: BasisState, asserted: BasisState },
    #[error(
        "NonMonotonicityViolation: left weakening is not admissible; an added state interferes \
         with the superposition and can remove conclusions that held before"
    )]
    NonMonotonicityViolation,
    #[error("UnnormalizedState: the Born rule needs a state with norm 1, found {norm}")]
    UnnormalizedState { norm: String },
    #[error("WrongRootShape: expected a proof ending in {expected}, found {found}")]
    WrongRootShape { expected: &'static str, found: &'static str },
    #[error("{0}")]
    Gate(#[from] GateError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// The Born distribution `P` of a state: outcome ↦ |αₓ|² over the support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution<C> {
    probs: BTreeMap<BasisState, ExactReal<C>>,
}

impl<C: Coeff> Distribution<C> {
    /// Wraps raw outcome probabilities without checking them.
    pub fn from_map(probs: BTreeMap<BasisState, ExactReal<C>>) -> Self {
        Distribution { probs }
    }

    pub fn get(&self, outcome: &BasisState) -> Option<&ExactReal<C>> {
        self.probs.get(outcome)
    }

    /// Outcomes in lexicographic order.
    pub fn iter(&self) -> impl ExactSizeIterator<Item = (&BasisState, &ExactReal<C>)> {
        self.probs.iter()
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn total(&self) -> Result<ExactReal<C>, ArithError> {
        self.probs.values().try_fold(ExactReal::zero(), |acc, p| acc.checked_add(p))
    }
}

/// Same shape as a superposition: `(1/2)|00> + (1/2)|11>`.
impl<C: Coeff> fmt::Display for Distribution<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        for (i, (outcome, p)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *p == ExactReal::one() {
                write!(f, "{outcome}")?;
            } else {
                write!(f, "({p}){outcome}")?;
            }
        }
        Ok(())
    }
}

/// Born rule: `P(x) = |αₓ|²` for every `x` in the support.
pub fn distribution<C: Coeff>(s: &Superposition<C>) -> Result<Distribution<C>, RuleError> {
    let norm = s.norm_sq()?;
    if norm != ExactReal::one() {
        return Err(RuleError::UnnormalizedState { norm: norm.to_string() });
    }
    let probs = s.terms().map(|(b, a)| Ok((b.clone(), a.mod_sq()?))).collect::<Result<BTreeMap<_, _>, ArithError>>()?;
    Ok(Distribution { probs })
}

/// A sequent. Apart from what [`apply_rule`] produces, values may come from
/// untrusted claims, so the invariants are checked by [`Sequent::validate`]
/// rather than by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sequent<C> {
    /// `Σ =>`
    Coherent(Superposition<C>),
    /// `Σ => P(Σ)`
    BornAnnotated { state: Superposition<C>, dist: Distribution<C> },
    /// `Σ ⊢ₚ |x⟩ₙ`
    Measured { state: Superposition<C>, outcome: BasisState, prob: ExactReal<C> },
}

impl<C: Coeff> Sequent<C> {
    pub fn state(&self) -> &Superposition<C> {
        match self {
            Sequent::Coherent(state) | Sequent::BornAnnotated { state, .. } | Sequent::Measured { state, .. } => state,
        }
    }

    pub fn shape(&self) -> &'static str {
        match self {
            Sequent::Coherent(_) => "a coherent sequent `S =>`",
            Sequent::BornAnnotated { .. } => "a Born-annotated sequent `S => P(S)`",
            Sequent::Measured { .. } => "a measured sequent `S |-[p] |x>`",
        }
    }

    /// Checks the sequent invariants: a normalized nonempty state, an exact
    /// Born distribution and a positive measurement probability.
    pub fn validate(&self) -> Result<(), String> {
        let state = self.state();
        if state.is_empty() {
            return Err("the antecedent state has no terms".into());
        }
        let norm = state.norm_sq().map_err(|e| e.to_string())?;
        if norm != ExactReal::one() {
            return Err(format!("the antecedent state has norm squared {norm}, expected 1"));
        }
        let born = || distribution(state).map_err(|e| e.to_string());
        match self {
            Sequent::Coherent(_) => Ok(()),
            Sequent::BornAnnotated { dist, .. } => {
                if *dist != born()? {
                    return Err("the succedent is not the Born distribution of the antecedent".into());
                }
                Ok(())
            }
            Sequent::Measured { outcome, prob, .. } => match born()?.get(outcome) {
                Some(p) if p == prob => Ok(()),
                Some(p) => Err(format!("outcome {outcome} has probability {p}, not {prob}")),
                None => Err(format!("outcome {outcome} is not in the support")),
            },
        }
    }
}

/// Rule applications. `Prep` with no premise is a standalone assumption
/// standing for a measurement made in an earlier, unrecorded derivation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RuleApp {
    Ax,
    Prep(BasisState),
    Tensor,
    Unitary(GateApplication),
    BornRule,
    Measure(BasisState),
    /// Left weakening by the given basis state. Parsable, never checkable.
    Weaken(BasisState),
}

/// ASCII form, also accepted by the script parser: `S =>`, `S => D`,
/// `S |-[p] |x>`.
impl<C: Coeff> fmt::Display for Sequent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sequent::Coherent(state) => write!(f, "{state} =>"),
            Sequent::BornAnnotated { state, dist } => write!(f, "{state} => {dist}"),
            Sequent::Measured { state, outcome, prob } => write!(f, "{state} |-[{prob}] {outcome}"),
        }
    }
}

impl RuleApp {
    pub fn name(&self) -> &'static str {
        match self {
            RuleApp::Ax => "Ax",
            RuleApp::Prep(_) => "Prep",
            RuleApp::Tensor => "Tensor",
            RuleApp::Unitary(_) => "Unitary",
            RuleApp::BornRule => "BR",
            RuleApp::Measure(_) => "M",
            RuleApp::Weaken(_) => "LWeak",
        }
    }
}

impl fmt::Display for RuleApp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleApp::Ax => f.write_str("Ax"),
            RuleApp::Prep(x) => write!(f, "Prep {x}"),
            RuleApp::Tensor => f.write_str("(x)"),
            RuleApp::Unitary(app) => write!(f, "{app}"),
            RuleApp::BornRule => f.write_str("BR"),
            RuleApp::Measure(x) => write!(f, "M {x}"),
            RuleApp::Weaken(x) => write!(f, "LWeak {x}"),
        }
    }
}

fn premise_count(rule: &RuleApp, found: usize) -> Result<(), RuleError> {
    let (ok, expected) = match rule {
        RuleApp::Ax => (found == 0, "0"),
        RuleApp::Prep(_) => (found <= 1, "0 or 1"),
        RuleApp::Tensor => (found == 2, "2"),
        _ => (found == 1, "1"),
    };
    if ok {
        Ok(())
    } else {
        Err(RuleError::WrongPremiseCount { rule: rule.name(), expected, found })
    }
}

fn coherent<'a, C: Coeff>(rule: &RuleApp, s: &'a Sequent<C>) -> Result<&'a Superposition<C>, RuleError> {
    match s {
        Sequent::Coherent(state) => Ok(state),
        other => Err(RuleError::WrongPremiseShape {
            rule: rule.name(),
            expected: "a coherent sequent `S =>`",
            found: other.shape(),
        }),
    }
}

/// Computes the conclusion of one inference from its premises.
pub fn apply_rule<C: Coeff>(rule: &RuleApp, premises: &[Sequent<C>]) -> Result<Sequent<C>, RuleError> {
    if let RuleApp::Weaken(_) = rule {
        return Err(RuleError::NonMonotonicityViolation);
    }
    premise_count(rule, premises.len())?;
    Ok(match rule {
        RuleApp::Ax => Sequent::Coherent(ket(&BasisState::zeros(1).expect("one qubit"))),
        RuleApp::Prep(x) => {
            if let Some(premise) = premises.first() {
                match premise {
                    Sequent::Measured { outcome, .. } if outcome == x => {}
                    Sequent::Measured { outcome, .. } => {
                        return Err(RuleError::PrepOutcomeMismatch { measured: outcome.clone(), asserted: x.clone() })
                    }
                    other => {
                        return Err(RuleError::WrongPremiseShape {
                            rule: rule.name(),
                            expected: "a measured sequent `S |-[p] |x>`",
                            found: other.shape(),
                        })
                    }
                }
            }
            Sequent::Coherent(ket(x))
        }
        RuleApp::Tensor => {
            let left = coherent(rule, &premises[0])?;
            let right = coherent(rule, &premises[1])?;
            Sequent::Coherent(tensor(left, right)?)
        }
        RuleApp::Unitary(app) => Sequent::Coherent(apply(app, coherent(rule, &premises[0])?)?),
        RuleApp::BornRule => {
            let state = coherent(rule, &premises[0])?;
            Sequent::BornAnnotated { state: state.clone(), dist: distribution(state)? }
        }
        RuleApp::Measure(x) => match &premises[0] {
            Sequent::BornAnnotated { state, dist } => match dist.get(x) {
                Some(p) => Sequent::Measured { state: state.clone(), outcome: x.clone(), prob: p.clone() },
                None => return Err(RuleError::OutcomeNotInSupport { outcome: x.clone() }),
            },
            other => {
                return Err(RuleError::WrongPremiseShape {
                    rule: rule.name(),
                    expected: "a Born-annotated sequent `S => P(S)`",
                    found: other.shape(),
                })
            }
        },
        RuleApp::Weaken(_) => unreachable!(),
    })
}

/// A rule application with its premises and the conclusion it claims.
///
/// `label` is a cosmetic name (the script binding) and is ignored by
/// equality.
#[derive(Clone, Debug)]
pub struct ProofNode<C> {
    pub rule: RuleApp,
    pub premises: Vec<ProofNode<C>>,
    pub conclusion: Sequent<C>,
    pub label: Option<String>,
}

impl<C: PartialEq> PartialEq for ProofNode<C> {
    fn eq(&self, other: &Self) -> bool {
        self.rule == other.rule && self.conclusion == other.conclusion && self.premises == other.premises
    }
}

impl<C: Eq> Eq for ProofNode<C> {}

impl<C: Coeff> ProofNode<C> {
    /// A node whose conclusion is computed by [`apply_rule`].
    pub fn derive(rule: RuleApp, premises: Vec<ProofNode<C>>) -> Result<Self, RuleError> {
        let inputs: Vec<Sequent<C>> = premises.iter().map(|p| p.conclusion.clone()).collect();
        let conclusion = apply_rule(&rule, &inputs)?;
        Ok(ProofNode { rule, premises, conclusion, label: None })
    }

    /// A node with a claimed conclusion, to be validated by [`check`].
    pub fn claimed(rule: RuleApp, premises: Vec<ProofNode<C>>, conclusion: Sequent<C>) -> Self {
        ProofNode { rule, premises, conclusion, label: None }
    }

    pub fn ax() -> Self {
        Self::derive(RuleApp::Ax, Vec::new()).expect("Ax has no side conditions")
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(ProofNode::size).sum::<usize>()
    }

    /// Visits every node, premises before conclusions.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a ProofNode<C>)) {
        for p in &self.premises {
            p.walk(visit);
        }
        visit(self);
    }

    pub fn contains_rule(&self, pred: impl Fn(&RuleApp) -> bool + Copy) -> bool {
        pred(&self.rule) || self.premises.iter().any(|p| p.contains_rule(pred))
    }
}

/// Every measurement that can conclude a proof ending in BR, with its exact
/// probability, in lexicographic order.
pub fn enumerate_conclusions<C: Coeff>(p: &ProofNode<C>) -> Result<Vec<(BasisState, ExactReal<C>)>, RuleError> {
    Ok(measurement_completions(p)?
        .into_iter()
        .map(|node| match node.conclusion {
            Sequent::Measured { outcome, prob, .. } => (outcome, prob),
            _ => unreachable!("M concludes a measured sequent"),
        })
        .collect())
}

/// One complete proof per outcome: `p` followed by an M step.
pub fn measurement_completions<C: Coeff>(p: &ProofNode<C>) -> Result<Vec<ProofNode<C>>, RuleError> {
    let Sequent::BornAnnotated { dist, .. } = &p.conclusion else {
        return Err(RuleError::WrongRootShape { expected: "BR", found: p.conclusion.shape() });
    };
    dist.iter().map(|(outcome, _)| ProofNode::derive(RuleApp::Measure(outcome.clone()), vec![p.clone()])).collect()
}
