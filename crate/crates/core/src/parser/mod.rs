//! Text formats: proof scripts (`.qmc`), circuits (`.qc`), and renderers.
//!
//! A proof script binds one rule application per line:
//!
//! ```text
//! proof bell {
//!   a = ax;
//!   b = ax;
//!   h = gate H [0] a;
//!   t = tensor h b;
//!   c = gate CNOT [0,1] t : (1/sqrt2)|00> + (1/sqrt2)|11> =>;
//!   r = born c;
//!   m = measure r outcome=|00>;
//! }
//! ```
//!
//! A line may end with `: SEQUENT`, the conclusion that line claims, written
//! as the sequent renders (`S =>`, `S => D`, `S |-[p] |x>`). Lines without a
//! claim take the conclusion computed from their premises.

mod circuit;
mod expr;
mod lexer;
mod render;
mod script;

use std::fmt;

use crate::calculus::ProofNode;
use crate::scalar::Coeff;

pub use circuit::parse_circuit;
pub use expr::{parse_amplitude, parse_sequent, parse_state};
pub use render::{render_ascii, render_latex, render_proof, render_script, Format};
pub use script::{parse_proof, Binding, Expr, ProofScript};

/// A positioned error. `line` and `column` are 1-based and count characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub token: String,
}

impl SourceError {
    pub fn new(line: usize, column: usize, message: impl Into<String>, token: impl Into<String>) -> Self {
        SourceError { line, column, message: message.into(), token: token.into() }
    }
}

impl fmt::Display for SourceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {} (at `{}`)", self.line, self.column, self.message, self.token)
    }
}

impl std::error::Error for SourceError {}

/// Parses and elaborates a script in one step.
pub fn parse_proof_node<C: Coeff>(text: &str) -> Result<ProofNode<C>, SourceError> {
    Ok(parse_proof(text)?.to_proof())
}
