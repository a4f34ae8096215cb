//! Circuits to proofs and back.
//!
//! A circuit on `n` wires becomes `n` Ax leaves joined by `n − 1`
//! left-associated tensor steps, one unitary step per gate, and, when the
//! circuit is measured, BR followed by M. Extraction accepts any tensor
//! shape: gates applied to a sub-register before it is tensored are moved to
//! the assembled register with the wire offset of that sub-register.

use std::fmt;

use thiserror::Error;

use crate::calculus::{measurement_completions, sample_outcome, ProofNode, RuleApp, RuleError, Sequent};
use crate::gates::{GateApplication, GateError};
use crate::scalar::Coeff;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("UnsupportedTranslation: {0}")]
    Unsupported(String),
    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),
    #[error("{0}")]
    Rule(#[from] RuleError),
}

/// A single circuit: register width, gates in execution order, and whether
/// the whole register is measured at the end.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    width: usize,
    ops: Vec<GateApplication>,
    measured: bool,
}

impl Circuit {
    pub fn new(width: usize, ops: Vec<GateApplication>, measured: bool) -> Result<Self, TranslateError> {
        if width == 0 {
            return Err(TranslateError::InvalidCircuit("a circuit needs at least one qubit".into()));
        }
        for op in &ops {
            if let Some(w) = op.wires().iter().find(|&&w| w >= width) {
                let err = GateError::WireOutOfRange { wire: *w, width };
                return Err(TranslateError::InvalidCircuit(format!("{op}: {err}")));
            }
        }
        Ok(Circuit { width, ops, measured })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn ops(&self) -> &[GateApplication] {
        &self.ops
    }

    pub fn measured(&self) -> bool {
        self.measured
    }
}

/// The `.qc` text form: `qubits N`, one gate per line, optional `measure`.
impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {}", self.width)?;
        for op in &self.ops {
            writeln!(f, "{op}")?;
        }
        if self.measured {
            writeln!(f, "measure")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// One proof per outcome in the support.
    Enumerate,
    /// One proof whose outcome is drawn with the given seed.
    Sample(u64),
}

/// The unmeasured part of the proof: leaves, tensor assembly and gates.
pub fn circuit_prefix<C: Coeff>(c: &Circuit) -> Result<ProofNode<C>, TranslateError> {
    let mut node = ProofNode::ax();
    for _ in 1..c.width() {
        node = ProofNode::derive(RuleApp::Tensor, vec![node, ProofNode::ax()])?;
    }
    for op in c.ops() {
        node = ProofNode::derive(RuleApp::Unitary(op.clone()), vec![node])?;
    }
    Ok(node)
}

/// Proofs for a circuit. An unmeasured circuit yields exactly one proof,
/// ending in its final coherent state, whatever the mode.
pub fn circuit_to_proof<C: Coeff>(c: &Circuit, mode: Mode) -> Result<Vec<ProofNode<C>>, TranslateError> {
    let prefix = circuit_prefix(c)?;
    if !c.measured() {
        return Ok(vec![prefix]);
    }
    let born = ProofNode::derive(RuleApp::BornRule, vec![prefix])?;
    match mode {
        Mode::Enumerate => Ok(measurement_completions(&born)?),
        Mode::Sample(seed) => {
            let Sequent::BornAnnotated { dist, .. } = &born.conclusion else { unreachable!() };
            let (outcome, _) = sample_outcome(dist, seed).expect("normalized states have nonempty support");
            Ok(vec![ProofNode::derive(RuleApp::Measure(outcome), vec![born])?])
        }
    }
}

/// Reads the circuit back off a proof. Proofs with Prep steps (sequential
/// segments) or weakening are refused; a standalone `prep |0…0>` leaf counts
/// as that many fresh wires.
pub fn proof_to_circuit<C: Coeff>(p: &ProofNode<C>) -> Result<Circuit, TranslateError> {
    let (width, ops) = extract(p)?;
    let measured = matches!(p.rule, RuleApp::Measure(_) | RuleApp::BornRule);
    Circuit::new(width, ops, measured)
}

fn extract<C: Coeff>(p: &ProofNode<C>) -> Result<(usize, Vec<GateApplication>), TranslateError> {
    match &p.rule {
        RuleApp::Ax => Ok((1, Vec::new())),
        RuleApp::Prep(x) if p.premises.is_empty() && x.is_all_zero() => Ok((x.width(), Vec::new())),
        RuleApp::Prep(x) => Err(TranslateError::Unsupported(format!(
            "proof contains a Prep step for {x}; sequential segments have no single-circuit form"
        ))),
        RuleApp::Weaken(_) => Err(TranslateError::Unsupported("proof contains left weakening".into())),
        RuleApp::Tensor => {
            let [left, right] = &p.premises[..] else {
                return Err(TranslateError::Unsupported("tensor step without two premises".into()));
            };
            let (wl, mut ops) = extract(left)?;
            let (wr, right_ops) = extract(right)?;
            ops.extend(right_ops.iter().map(|op| op.shifted(wl)));
            Ok((wl + wr, ops))
        }
        RuleApp::Unitary(app) => {
            let (w, mut ops) = single_premise(p)?;
            ops.push(app.clone());
            Ok((w, ops))
        }
        RuleApp::BornRule | RuleApp::Measure(_) => single_premise(p),
    }
}

fn single_premise<C: Coeff>(p: &ProofNode<C>) -> Result<(usize, Vec<GateApplication>), TranslateError> {
    match &p.premises[..] {
        [only] => extract(only),
        _ => Err(TranslateError::Unsupported(format!("{} step without exactly one premise", p.rule.name()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::check;
    use crate::gates::GateKind;
    use crate::state::{ket_str, BasisState};

    fn op(kind: GateKind, wires: &[usize]) -> GateApplication {
        GateApplication::new(kind, wires.to_vec()).unwrap()
    }

    fn bell() -> Circuit {
        Circuit::new(2, vec![op(GateKind::H, &[0]), op(GateKind::Cnot, &[0, 1])], true).unwrap()
    }

    #[test]
    fn bell_enumerates_two_proofs() {
        let proofs = circuit_to_proof::<i64>(&bell(), Mode::Enumerate).unwrap();
        assert_eq!(proofs.len(), 2);
        let outcomes: Vec<_> = proofs
            .iter()
            .map(|p| match &p.conclusion {
                Sequent::Measured { outcome, prob, .. } => (outcome.digits(), prob.to_string()),
                _ => panic!("expected a measured root"),
            })
            .collect();
        assert_eq!(outcomes, vec![("00".into(), "1/2".into()), ("11".into(), "1/2".into())]);
        for p in &proofs {
            assert!(check(p).is_valid());
            assert_eq!(proof_to_circuit(p).unwrap(), bell());
        }
    }

    #[test]
    fn unmeasured_double_hadamard() {
        let c = Circuit::new(1, vec![op(GateKind::H, &[0]), op(GateKind::H, &[0])], false).unwrap();
        let proofs = circuit_to_proof::<i64>(&c, Mode::Sample(3)).unwrap();
        assert_eq!(proofs.len(), 1);
        assert_eq!(proofs[0].conclusion, Sequent::Coherent(ket_str("0").unwrap()));
    }

    #[test]
    fn gates_before_tensor_are_offset() {
        // H on the right-hand qubit before it is tensored lands on wire 1.
        let right = ProofNode::<i64>::derive(RuleApp::Unitary(op(GateKind::H, &[0])), vec![ProofNode::ax()]).unwrap();
        let t = ProofNode::derive(RuleApp::Tensor, vec![ProofNode::ax(), right]).unwrap();
        let c = proof_to_circuit(&t).unwrap();
        assert_eq!(c.to_string(), "qubits 2\nH 1\n");
    }

    #[test]
    fn single_axiom() {
        assert_eq!(proof_to_circuit(&ProofNode::<i64>::ax()).unwrap().to_string(), "qubits 1\n");
    }

    #[test]
    fn prep_is_unsupported() {
        let leaf = ProofNode::<i64>::derive(RuleApp::Prep(BasisState::parse("1").unwrap()), vec![]).unwrap();
        assert!(matches!(proof_to_circuit(&leaf), Err(TranslateError::Unsupported(_))));
        let zero = ProofNode::<i64>::derive(RuleApp::Prep(BasisState::parse("00").unwrap()), vec![]).unwrap();
        assert_eq!(proof_to_circuit(&zero).unwrap().width(), 2);
    }

    #[test]
    fn wire_range_enforced() {
        assert!(Circuit::new(1, vec![op(GateKind::Cnot, &[0, 1])], false).is_err());
        assert!(Circuit::new(0, vec![], false).is_err());
    }
}
