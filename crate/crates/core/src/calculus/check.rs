use std::fmt;

use super::{apply_rule, ProofNode, RuleApp, RuleError, Sequent};
use crate::scalar::Coeff;
use crate::state::BasisState;

/// Why a node failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Finding<C> {
    /// The rule cannot be applied to the premises at all.
    Rule(RuleError),
    /// The rule applies but yields a different conclusion than the one stored.
    Mismatch { expected: Box<Sequent<C>>, found: Box<Sequent<C>> },
    /// BR used anywhere other than as the premise of M (or as the root).
    BornRuleNotNormal,
    /// The stored conclusion violates a sequent invariant.
    IllFormed(String),
}

impl<C: Coeff> fmt::Display for Finding<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finding::Rule(e) => write!(f, "{e}"),
            Finding::Mismatch { expected, found } => {
                write!(f, "ConclusionMismatch: expected `{}`, found `{}`", expected, found)
            }
            Finding::BornRuleNotNormal => {
                f.write_str("BornRuleNotNormal: BR may only appear as the premise of M or at the root")
            }
            Finding::IllFormed(msg) => write!(f, "IllFormedSequent: {msg}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeReport<C> {
    /// Premise indices from the root; empty for the root itself.
    pub path: Vec<usize>,
    pub label: Option<String>,
    pub rule: RuleApp,
    pub conclusion: Sequent<C>,
    pub finding: Option<Finding<C>>,
}

impl<C> NodeReport<C> {
    pub fn is_valid(&self) -> bool {
        self.finding.is_none()
    }

    /// The binding name when there is one, otherwise the path (`root.0.1`).
    pub fn location(&self) -> String {
        match &self.label {
            Some(l) => l.clone(),
            None => path_string(&self.path),
        }
    }
}

pub fn path_string(path: &[usize]) -> String {
    let mut out = String::from("root");
    for i in path {
        out.push('.');
        out.push_str(&i.to_string());
    }
    out
}

/// Per-node verdicts in premises-first order, plus the standalone Prep
/// leaves the proof relies on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport<C> {
    pub nodes: Vec<NodeReport<C>>,
    pub assumptions: Vec<(Vec<usize>, BasisState)>,
}

impl<C> CheckReport<C> {
    pub fn is_valid(&self) -> bool {
        self.nodes.iter().all(NodeReport::is_valid)
    }

    pub fn failures(&self) -> impl Iterator<Item = &NodeReport<C>> {
        self.nodes.iter().filter(|n| !n.is_valid())
    }
}

/// Re-derives every conclusion and compares it exactly with the stored one.
///
/// Each inference is judged against its premises' stored conclusions. When a
/// premise itself failed, its recomputed conclusion is also tried, so a single
/// forged conclusion or a single wrong rule is reported at that node only.
pub fn check<C: Coeff>(p: &ProofNode<C>) -> CheckReport<C> {
    let mut report = CheckReport { nodes: Vec::new(), assumptions: Vec::new() };
    visit(p, &mut Vec::new(), None, &mut report);
    report
}

fn visit<C: Coeff>(
    node: &ProofNode<C>,
    path: &mut Vec<usize>,
    parent: Option<&RuleApp>,
    report: &mut CheckReport<C>,
) -> Vec<Sequent<C>> {
    let mut candidates = Vec::with_capacity(node.premises.len());
    for (i, premise) in node.premises.iter().enumerate() {
        path.push(i);
        candidates.push(visit(premise, path, Some(&node.rule), report));
        path.pop();
    }

    if let (RuleApp::Prep(x), true) = (&node.rule, node.premises.is_empty()) {
        report.assumptions.push((path.clone(), x.clone()));
    }

    let stored: Vec<Sequent<C>> = candidates.iter().map(|c| c[0].clone()).collect();
    let primary = apply_rule(&node.rule, &stored);
    let mut valid = matches!(&primary, Ok(s) if *s == node.conclusion);
    let mut recomputed = primary.as_ref().ok().cloned();
    if !valid {
        for combo in alternatives(&candidates) {
            match apply_rule(&node.rule, &combo) {
                Ok(s) if s == node.conclusion => {
                    valid = true;
                    break;
                }
                Ok(s) if recomputed.is_none() => recomputed = Some(s),
                _ => {}
            }
        }
    }

    let mut finding = if valid {
        None
    } else {
        Some(match primary {
            Err(e) => Finding::Rule(e),
            Ok(expected) => {
                Finding::Mismatch { expected: Box::new(expected), found: Box::new(node.conclusion.clone()) }
            }
        })
    };
    if finding.is_none() && node.rule == RuleApp::BornRule && !matches!(parent, None | Some(RuleApp::Measure(_))) {
        finding = Some(Finding::BornRuleNotNormal);
    }
    if finding.is_none() {
        if let Err(msg) = node.conclusion.validate() {
            finding = Some(Finding::IllFormed(msg));
        }
    }

    let ok = finding.is_none();
    report.nodes.push(NodeReport {
        path: path.clone(),
        label: node.label.clone(),
        rule: node.rule.clone(),
        conclusion: node.conclusion.clone(),
        finding,
    });

    let mut out = vec![node.conclusion.clone()];
    if !ok {
        out.extend(recomputed.filter(|s| *s != node.conclusion));
    }
    out
}

/// Every premise combination except the all-stored one.
fn alternatives<C: Clone>(candidates: &[Vec<Sequent<C>>]) -> Vec<Vec<Sequent<C>>> {
    let mut combos: Vec<(Vec<Sequent<C>>, bool)> = vec![(Vec::new(), false)];
    for options in candidates {
        combos = combos
            .into_iter()
            .flat_map(|(prefix, alt)| {
                options.iter().enumerate().map(move |(i, s)| {
                    let mut next = prefix.clone();
                    next.push(s.clone());
                    (next, alt || i > 0)
                })
            })
            .collect();
    }
    combos.into_iter().filter(|(_, alt)| *alt).map(|(c, _)| c).collect()
}
