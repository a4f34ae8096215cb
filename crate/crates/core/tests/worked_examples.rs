use qmc_core::amplitude::{dyadic, Amplitude, ExactReal};
use qmc_core::calculus::{check, distribution, ProofNode, RuleApp, Sequent};
use qmc_core::gates::{apply, GateApplication, GateKind};
use qmc_core::parser::{parse_circuit, parse_state};
use qmc_core::state::{combine, ket_str, tensor, BasisState};
use qmc_core::translate::{circuit_to_proof, Mode};

fn b(d: &str) -> BasisState {
    BasisState::parse(d).unwrap()
}

fn gate(kind: GateKind, wires: &[usize]) -> RuleApp {
    RuleApp::Unitary(GateApplication::new(kind, wires.to_vec()).unwrap())
}

#[test]
fn hadamard_schema() {
    let r = Amplitude::<i64>::frac_1_sqrt2();
    let h = GateApplication::new(GateKind::H, vec![0]).unwrap();
    for x in ["0", "1"] {
        let out = apply(&h, &ket_str::<i64>(x).unwrap()).unwrap();
        let flipped = if x == "0" { "1" } else { "0" };
        let sign = if x == "1" { r.checked_neg().unwrap() } else { r.clone() };
        assert_eq!(out, combine(vec![(sign, b(x)), (r.clone(), b(flipped))], 1).unwrap());
    }
}

#[test]
fn entangling_sub_proof_with_hadamard_before_tensor() {
    let h = ProofNode::<i64>::derive(gate(GateKind::H, &[0]), vec![ProofNode::ax()]).unwrap();
    let t = ProofNode::derive(RuleApp::Tensor, vec![h, ProofNode::ax()]).unwrap();
    assert_eq!(t.conclusion.state().to_string(), "(1/sqrt2)|00> + (1/sqrt2)|10>");
    let cx = ProofNode::derive(gate(GateKind::Cnot, &[0, 1]), vec![t]).unwrap();
    assert_eq!(cx.conclusion.to_string(), "(1/sqrt2)|00> + (1/sqrt2)|11> =>");
    for outcome in ["00", "11"] {
        let br = ProofNode::derive(RuleApp::BornRule, vec![cx.clone()]).unwrap();
        assert_eq!(br.conclusion.to_string(), "(1/sqrt2)|00> + (1/sqrt2)|11> => (1/2)|00> + (1/2)|11>");
        let m = ProofNode::derive(RuleApp::Measure(b(outcome)), vec![br]).unwrap();
        let Sequent::Measured { prob, .. } = &m.conclusion else { panic!() };
        assert_eq!(*prob, ExactReal::dyadic(1, 1).unwrap());
        assert!(check(&m).is_valid());
    }
}

#[test]
fn interfering_terms_cancel_exactly() {
    // 1/2|0> + 1/2|1> + 1/2|0> - 1/2|1>
    let written = combine(
        vec![(dyadic(1, 1), b("0")), (dyadic(1, 1), b("1")), (dyadic(1, 1), b("0")), (dyadic(-1, 1), b("1"))],
        1,
    )
    .unwrap();
    assert_eq!(written, ket_str::<i64>("0").unwrap());
    let h1 = ProofNode::<i64>::derive(gate(GateKind::H, &[0]), vec![ProofNode::ax()]).unwrap();
    let h2 = ProofNode::derive(gate(GateKind::H, &[0]), vec![h1]).unwrap();
    assert_eq!(h2.conclusion, Sequent::Coherent(written));
    let d = distribution(h2.conclusion.state()).unwrap();
    assert_eq!(d.len(), 1);
    assert_eq!(d.get(&b("0")), Some(&ExactReal::one()));
}

#[test]
fn ghz_has_two_equal_outcomes() {
    let c = parse_circuit("qubits 3\nH 0\nCNOT 0 1\nCNOT 1 2\nmeasure\n").unwrap();
    let proofs = circuit_to_proof::<i64>(&c, Mode::Enumerate).unwrap();
    let outcomes: Vec<String> = proofs.iter().map(|p| p.conclusion.to_string()).collect();
    assert_eq!(
        outcomes,
        vec!["(1/sqrt2)|000> + (1/sqrt2)|111> |-[1/2] |000>", "(1/sqrt2)|000> + (1/sqrt2)|111> |-[1/2] |111>",]
    );
}

#[test]
fn x_initialization_prepares_one() {
    let x = ProofNode::<i64>::derive(gate(GateKind::X, &[0]), vec![ProofNode::ax()]).unwrap();
    assert_eq!(x.conclusion.state(), &ket_str("1").unwrap());
}

#[test]
fn tensor_of_superposition_and_zero() {
    let plus = parse_state::<i64>("(1/sqrt2)|0> + (1/sqrt2)|1>").unwrap();
    let out = tensor(&plus, &ket_str("0").unwrap()).unwrap();
    assert_eq!(out, parse_state("(1/sqrt2)|00> + (1/sqrt2)|10>").unwrap());
}
