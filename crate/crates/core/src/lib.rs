//! Exact sequent-style proofs for single quantum circuits.
//!
//! Amplitudes live in the ring ℤ[ω, 1/√2]; every type is generic over the
//! integer coefficient type, with `BigInt` and `i64` aliases below.

pub mod amplitude;
pub mod calculus;
pub mod gates;
pub mod oracle;
pub mod parser;
pub mod scalar;
pub mod state;
pub mod translate;

pub use amplitude::{ArithError, CycloInt, ExactReal};
pub use calculus::{check, CheckReport, Distribution, Finding, ProofNode, RuleApp, RuleError, Sequent};
pub use gates::{GateApplication, GateKind};
pub use scalar::Coeff;
pub use state::{BasisState, Superposition};
pub use translate::{Circuit, Mode, TranslateError};

/// Arbitrary-precision coefficients; the default everywhere.
pub type Int = num_bigint::BigInt;

pub type Amplitude = amplitude::Amplitude<Int>;
pub type State = Superposition<Int>;
pub type Probability = ExactReal<Int>;
pub type Dist = Distribution<Int>;
pub type Proof = ProofNode<Int>;
pub type Report = CheckReport<Int>;

/// Overflow-checked machine-word coefficients.
pub type Amplitude64 = amplitude::Amplitude<i64>;
pub type State64 = Superposition<i64>;
pub type Proof64 = ProofNode<i64>;

pub type FloatState64 = oracle::FloatState<f64>;
