//! Built-in consistency checks: exact unitarity of every gate, the golden
//! proofs, and a differential sweep against the floating-point simulator.

use std::fmt::Write as _;

use qmc_core::calculus::check;
use qmc_core::gates::{builtin, is_unitary, Gate, GateApplication, GateKind};
use qmc_core::oracle::{compare, run_circuit};
use qmc_core::parser::parse_proof;
use qmc_core::translate::{circuit_prefix, Circuit};
use qmc_core::{Amplitude, ExactReal, Int, Sequent};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Output, EXIT_INVALID, EXIT_USAGE};

const BELL_00: &str = include_str!("../tests/golden/bell_measure_00.qmc");
const HADAMARD_TWICE: &str = include_str!("../tests/golden/hadamard_twice.qmc");

pub const SWEEP_SEED: u64 = 0x5eed_c1c4;
pub const SWEEP_COUNT: usize = 200;
pub const SWEEP_MAX_WIDTH: usize = 6;
pub const SWEEP_MAX_GATES: usize = 30;
pub const SWEEP_TOLERANCE: f64 = 1e-9;

/// A random unmeasured circuit of width `1..=max_width` with up to
/// `max_gates` gates from X, Z, S, T, H and CNOT. CNOT only appears on
/// registers of two or more wires.
pub fn random_circuit(rng: &mut impl Rng, max_width: usize, max_gates: usize) -> Circuit {
    let width = rng.random_range(1..=max_width);
    let kinds: Vec<GateKind> = GateKind::ALL.into_iter().filter(|&k| k != GateKind::I && k.arity() <= width).collect();
    let ops = (0..rng.random_range(0..=max_gates))
        .map(|_| {
            let kind = kinds[rng.random_range(0..kinds.len())];
            let wires = sample(rng, width, kind.arity()).into_vec();
            GateApplication::new(kind, wires).expect("distinct wires of the right arity")
        })
        .collect();
    Circuit::new(width, ops, false).expect("wires are in range")
}

/// Runs `count` random circuits through both simulators and returns the
/// largest amplitude deviation, or a description of the first disagreement.
pub fn differential_sweep(seed: u64, count: usize, tol: f64) -> Result<f64, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for i in 0..count {
        let c = random_circuit(&mut rng, SWEEP_MAX_WIDTH, SWEEP_MAX_GATES);
        let exact = circuit_prefix::<Int>(&c).map_err(|e| format!("circuit {i}: {e}"))?;
        let float = run_circuit::<f64>(&c).map_err(|e| format!("circuit {i}: {e}"))?;
        let (ok, dev) = compare(exact.conclusion.state(), &float, tol).map_err(|e| format!("circuit {i}: {e}"))?;
        if !ok {
            return Err(format!("circuit {i} deviates by {dev:e}:\n{c}"));
        }
        worst = worst.max(dev);
    }
    Ok(worst)
}

/// A deliberately non-unitary stand-in: every entry is 1.
fn corrupted(kind: GateKind) -> Gate<Int> {
    let dim = 1 << kind.arity();
    Gate::from_matrix(kind.name(), vec![vec![Amplitude::one(); dim]; dim]).expect("square power-of-two matrix")
}

fn golden(name: &str, text: &str, expect: impl Fn(&Sequent<Int>) -> bool) -> Result<(), String> {
    let script = parse_proof::<Int>(text).map_err(|e| format!("golden proof {name}: {e}"))?;
    let proof = script.to_proof();
    let report = check(&proof);
    if let Some(n) = report.failures().next() {
        let finding = n.finding.as_ref().expect("failures have findings");
        return Err(format!("golden proof {name}: {} {}: {finding}", n.location(), n.rule));
    }
    if !expect(&proof.conclusion) {
        return Err(format!("golden proof {name}: unexpected conclusion `{}`", proof.conclusion));
    }
    Ok(())
}

pub fn cmd_selftest(corrupt_gate: Option<&str>) -> Output {
    let corrupt = match corrupt_gate.map(str::parse::<GateKind>).transpose() {
        Ok(k) => k,
        Err(e) => return Output::fail(EXIT_USAGE, String::new(), e),
    };
    let mut out = String::new();
    for kind in GateKind::ALL {
        let gate = if corrupt == Some(kind) { corrupted(kind) } else { builtin::<Int>(kind) };
        if !is_unitary(&gate) {
            return Output::fail(EXIT_INVALID, out, format!("unitarity check failed for gate {kind}"));
        }
    }
    out.push_str("ok unitarity of I, X, Z, S, T, H, CNOT\n");

    let half = ExactReal::<Int>::dyadic(Int::from(1), 1).expect("1/2 is representable");
    let goldens = [
        golden("bell_measure_00", BELL_00, |s| matches!(s, Sequent::Measured { prob, .. } if *prob == half)),
        golden("hadamard_twice", HADAMARD_TWICE, |s| {
            s.state().len() == 1 && s.state().terms().all(|(b, a)| b.is_all_zero() && a.is_one())
        }),
    ];
    for result in goldens {
        if let Err(e) = result {
            return Output::fail(EXIT_INVALID, out, e);
        }
    }
    out.push_str("ok golden proofs bell_measure_00, hadamard_twice\n");

    match differential_sweep(SWEEP_SEED, SWEEP_COUNT, SWEEP_TOLERANCE) {
        Ok(worst) => {
            let _ = writeln!(
                out,
                "ok {SWEEP_COUNT} random circuits agree with the float simulator (max deviation {worst:e})"
            );
        }
        Err(e) => return Output::fail(EXIT_INVALID, out, e),
    }
    out.push_str("selftest passed\n");
    Output::ok(out)
}
