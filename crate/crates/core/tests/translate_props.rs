mod common;

use common::circuit;
use proptest::prelude::*;
use qmc_core::amplitude::ExactReal;
use qmc_core::calculus::{check, enumerate_conclusions, ProofNode, RuleApp, Sequent};
use qmc_core::oracle::{compare, run_circuit};
use qmc_core::translate::{circuit_prefix, circuit_to_proof, proof_to_circuit, Mode};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn emitted_proofs_check(c in circuit(4, 20, true)) {
        for p in circuit_to_proof::<i64>(&c, Mode::Enumerate).unwrap() {
            prop_assert!(check(&p).is_valid());
        }
    }

    #[test]
    fn emitted_state_matches_oracle(c in circuit(5, 25, true)) {
        let float = run_circuit::<f64>(&c).unwrap();
        for p in circuit_to_proof::<i64>(&c, Mode::Enumerate).unwrap() {
            let (ok, dev) = compare(p.conclusion.state(), &float, 1e-9).unwrap();
            prop_assert!(ok, "deviation {dev}");
        }
    }

    #[test]
    fn enumeration_sums_to_one(c in circuit(4, 20, true)) {
        let proofs = circuit_to_proof::<i64>(&c, Mode::Enumerate).unwrap();
        let born = ProofNode::derive(RuleApp::BornRule, vec![circuit_prefix(&c).unwrap()]).unwrap();
        let expected = enumerate_conclusions(&born).unwrap();
        let got: Vec<_> = proofs
            .iter()
            .map(|p| match &p.conclusion {
                Sequent::Measured { outcome, prob, .. } => (outcome.clone(), prob.clone()),
                other => panic!("unexpected root {other}"),
            })
            .collect();
        let total = got.iter().try_fold(ExactReal::zero(), |acc, (_, p)| acc.checked_add(p)).unwrap();
        prop_assert_eq!(total, ExactReal::one());
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn circuit_proof_circuit_is_identity(c in circuit(6, 30, true), seed in any::<u64>()) {
        for p in circuit_to_proof::<i64>(&c, Mode::Sample(seed)).unwrap() {
            prop_assert_eq!(proof_to_circuit(&p).unwrap(), c.clone());
        }
        let unmeasured = qmc_core::translate::Circuit::new(c.width(), c.ops().to_vec(), false).unwrap();
        let p = circuit_to_proof::<i64>(&unmeasured, Mode::Enumerate).unwrap();
        prop_assert_eq!(proof_to_circuit(&p[0]).unwrap(), unmeasured);
    }

    #[test]
    fn sampling_is_deterministic(c in circuit(3, 12, true), seed in any::<u64>()) {
        let a = circuit_to_proof::<i64>(&c, Mode::Sample(seed)).unwrap();
        let b = circuit_to_proof::<i64>(&c, Mode::Sample(seed)).unwrap();
        prop_assert_eq!(a, b);
    }
}
