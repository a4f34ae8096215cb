#![allow(dead_code)]

use proptest::prelude::*;
use qmc_core::amplitude::{Amplitude, CycloInt};
use qmc_core::gates::{GateApplication, GateKind};
use qmc_core::state::{combine, BasisState, Superposition};
use qmc_core::translate::Circuit;

pub const SMALL_GATES: [GateKind; 6] =
    [GateKind::X, GateKind::Z, GateKind::S, GateKind::T, GateKind::H, GateKind::Cnot];

pub fn amplitude() -> impl Strategy<Value = Amplitude<i64>> {
    (prop::array::uniform4(-20i64..=20), 0u32..6)
        .prop_map(|([a, b, c, d], k)| Amplitude::new(CycloInt::new(a, b, c, d), k).unwrap())
}

pub fn basis(width: usize) -> impl Strategy<Value = BasisState> {
    prop::collection::vec(any::<bool>(), width).prop_map(|bits| BasisState::new(bits).unwrap())
}

/// Arbitrary (unnormalized) superpositions on 1..=3 qubits.
pub fn superposition() -> impl Strategy<Value = Superposition<i64>> {
    (1usize..=3).prop_flat_map(superposition_of)
}

pub fn superposition_of(width: usize) -> impl Strategy<Value = Superposition<i64>> {
    prop::collection::vec((amplitude(), basis(width)), 0..6).prop_map(move |parts| combine(parts, width).unwrap())
}

pub fn gate_on(width: usize, gates: &'static [GateKind]) -> impl Strategy<Value = GateApplication> {
    let kinds: Vec<GateKind> = gates.iter().copied().filter(|g| g.arity() <= width).collect();
    (prop::sample::select(kinds), Just((0..width).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|(kind, wires)| GateApplication::new(kind, wires[..kind.arity()].to_vec()).unwrap())
}

pub fn circuit(max_width: usize, max_gates: usize, measured: bool) -> impl Strategy<Value = Circuit> {
    (1..=max_width).prop_flat_map(move |w| {
        prop::collection::vec(gate_on(w, &SMALL_GATES), 0..=max_gates)
            .prop_map(move |ops| Circuit::new(w, ops, measured).unwrap())
    })
}

use qmc_core::calculus::{ProofNode, RuleApp, Sequent};

/// Builds a random checkable proof from a seed: tensor splits, gates on
/// sub-registers, and measure-then-prepare segments, optionally ending in
/// BR and M.
pub struct ProofGen {
    rng: rand_chacha::ChaCha8Rng,
}

impl ProofGen {
    pub fn new(seed: u64) -> Self {
        use rand::SeedableRng;
        ProofGen { rng: rand_chacha::ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn coherent(&mut self, width: usize, depth: usize) -> ProofNode<i64> {
        use rand::Rng;
        if width == 1 && (depth == 0 || self.rng.random_bool(0.25)) {
            return ProofNode::ax();
        }
        if width > 1 && (depth == 0 || self.rng.random_bool(0.4)) {
            let left = self.rng.random_range(1..width);
            let l = self.coherent(left, depth.saturating_sub(1));
            let r = self.coherent(width - left, depth.saturating_sub(1));
            return ProofNode::derive(RuleApp::Tensor, vec![l, r]).unwrap();
        }
        let sub = self.coherent(width, depth - 1);
        if self.rng.random_bool(0.1) {
            let m = self.measured(sub);
            let Sequent::Measured { outcome, .. } = &m.conclusion else { unreachable!() };
            let x = outcome.clone();
            return ProofNode::derive(RuleApp::Prep(x), vec![m]).unwrap();
        }
        let kinds: Vec<GateKind> = SMALL_GATES.iter().copied().filter(|g| g.arity() <= width).collect();
        let kind = kinds[self.rng.random_range(0..kinds.len())];
        let mut wires: Vec<usize> = (0..width).collect();
        for i in (1..width).rev() {
            wires.swap(i, self.rng.random_range(0..=i));
        }
        wires.truncate(kind.arity());
        let app = GateApplication::new(kind, wires).unwrap();
        ProofNode::derive(RuleApp::Unitary(app), vec![sub]).unwrap()
    }

    /// BR then M with an outcome drawn from the support.
    pub fn measured(&mut self, coherent: ProofNode<i64>) -> ProofNode<i64> {
        use rand::Rng;
        let born = ProofNode::derive(RuleApp::BornRule, vec![coherent]).unwrap();
        let Sequent::BornAnnotated { dist, .. } = &born.conclusion else { unreachable!() };
        let outcomes: Vec<BasisState> = dist.iter().map(|(b, _)| b.clone()).collect();
        let x = outcomes[self.rng.random_range(0..outcomes.len())].clone();
        ProofNode::derive(RuleApp::Measure(x), vec![born]).unwrap()
    }

    pub fn proof(&mut self) -> ProofNode<i64> {
        use rand::Rng;
        let width = self.rng.random_range(1..=4);
        let depth = self.rng.random_range(1..=8);
        let p = self.coherent(width, depth);
        match self.rng.random_range(0..3) {
            0 => p,
            1 => ProofNode::derive(RuleApp::BornRule, vec![p]).unwrap(),
            _ => self.measured(p),
        }
    }
}
