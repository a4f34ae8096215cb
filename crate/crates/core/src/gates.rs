//! The unitary gate registry and exact gate application.
//!
//! Gates act term by term on a [`Superposition`]: each basis state maps to a
//! handful of weighted basis states and the results are merged with
//! [`combine`], which is where interference happens. The `2^n × 2^n` matrix
//! is never built.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::amplitude::{Amplitude, ArithError};
use crate::scalar::Coeff;
use crate::state::{combine, StateError, Superposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GateError {
    #[error("unknown gate `{0}` (expected one of I, X, Z, S, T, H, CNOT)")]
    UnknownGate(String),
    #[error("gate {gate} acts on {expected} wire(s) but {found} were given")]
    ArityMismatch { gate: String, expected: usize, found: usize },
    #[error("wire {0} is listed more than once")]
    DuplicateWire(usize),
    #[error("wire {wire} is out of range for a {width}-qubit register")]
    WireOutOfRange { wire: usize, width: usize },
    #[error("gate matrix must be square with a power-of-two dimension")]
    BadMatrix,
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// The built-in gate set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    I,
    X,
    Z,
    S,
    T,
    H,
    Cnot,
}

impl GateKind {
    pub const ALL: [GateKind; 7] =
        [GateKind::I, GateKind::X, GateKind::Z, GateKind::S, GateKind::T, GateKind::H, GateKind::Cnot];

    pub fn name(self) -> &'static str {
        match self {
            GateKind::I => "I",
            GateKind::X => "X",
            GateKind::Z => "Z",
            GateKind::S => "S",
            GateKind::T => "T",
            GateKind::H => "H",
            GateKind::Cnot => "CNOT",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            GateKind::Cnot => 2,
            _ => 1,
        }
    }

    /// H, X, Z, CNOT and I square to the identity.
    pub fn is_involution(self) -> bool {
        !matches!(self, GateKind::S | GateKind::T)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateKind {
    type Err = GateError;

    fn from_str(s: &str) -> Result<Self, GateError> {
        GateKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| GateError::UnknownGate(s.to_string()))
    }
}

/// A named unitary with exact entries, `matrix[row][col]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gate<C> {
    name: String,
    arity: usize,
    matrix: Vec<Vec<Amplitude<C>>>,
}

impl<C: Coeff> Gate<C> {
    /// A gate with an arbitrary matrix. Unitarity is not enforced here; see
    /// [`is_unitary`].
    pub fn from_matrix(name: impl Into<String>, matrix: Vec<Vec<Amplitude<C>>>) -> Result<Self, GateError> {
        let dim = matrix.len();
        if dim < 2 || !dim.is_power_of_two() || matrix.iter().any(|row| row.len() != dim) {
            return Err(GateError::BadMatrix);
        }
        Ok(Gate { name: name.into(), arity: dim.trailing_zeros() as usize, matrix })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn matrix(&self) -> &[Vec<Amplitude<C>>] {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }
}

/// The standard matrix of a built-in gate.
pub fn builtin<C: Coeff>(kind: GateKind) -> Gate<C> {
    let o = Amplitude::<C>::zero;
    let l = Amplitude::<C>::one;
    let m = || Amplitude::<C>::from_int(-C::one());
    let matrix = match kind {
        GateKind::I => vec![vec![l(), o()], vec![o(), l()]],
        GateKind::X => vec![vec![o(), l()], vec![l(), o()]],
        GateKind::Z => vec![vec![l(), o()], vec![o(), m()]],
        GateKind::S => vec![vec![l(), o()], vec![o(), Amplitude::i()]],
        GateKind::T => vec![vec![l(), o()], vec![o(), Amplitude::omega_pow(1)]],
        GateKind::H => {
            let h = Amplitude::<C>::frac_1_sqrt2;
            let nh = || h().checked_neg().expect("negating a unit never overflows");
            vec![vec![h(), h()], vec![h(), nh()]]
        }
        GateKind::Cnot => {
            vec![vec![l(), o(), o(), o()], vec![o(), l(), o(), o()], vec![o(), o(), o(), l()], vec![o(), o(), l(), o()]]
        }
    };
    Gate { name: kind.name().to_string(), arity: kind.arity(), matrix }
}

pub fn builtin_by_name<C: Coeff>(name: &str) -> Result<Gate<C>, GateError> {
    Ok(builtin(name.parse()?))
}

/// `U†U = I`, decided exactly. Coefficient overflow counts as "not verified".
pub fn is_unitary<C: Coeff>(gate: &Gate<C>) -> bool {
    let m = gate.matrix();
    let dim = m.len();
    let entry = |i: usize, j: usize| -> Result<Amplitude<C>, ArithError> {
        let mut acc = Amplitude::zero();
        for row in m {
            acc = acc.checked_add(&row[i].conj()?.checked_mul(&row[j])?)?;
        }
        Ok(acc)
    };
    (0..dim).all(|i| {
        (0..dim).all(|j| match entry(i, j) {
            Ok(v) if i == j => v.is_one(),
            Ok(v) => v.is_zero(),
            Err(_) => false,
        })
    })
}

/// A built-in gate placed on an ordered list of distinct wires. For CNOT the
/// first wire is the control and the second the target.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GateApplication {
    gate: GateKind,
    wires: Vec<usize>,
}

impl GateApplication {
    pub fn new(gate: GateKind, wires: Vec<usize>) -> Result<Self, GateError> {
        check_wires(gate.name(), gate.arity(), &wires)?;
        Ok(GateApplication { gate, wires })
    }

    pub fn gate(&self) -> GateKind {
        self.gate
    }

    pub fn wires(&self) -> &[usize] {
        &self.wires
    }

    /// The same gate with every wire shifted by `offset`.
    pub fn shifted(&self, offset: usize) -> GateApplication {
        GateApplication { gate: self.gate, wires: self.wires.iter().map(|w| w + offset).collect() }
    }
}

impl fmt::Display for GateApplication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.gate.name())?;
        for w in &self.wires {
            write!(f, " {w}")?;
        }
        Ok(())
    }
}

fn check_wires(name: &str, arity: usize, wires: &[usize]) -> Result<(), GateError> {
    if wires.len() != arity {
        return Err(GateError::ArityMismatch { gate: name.to_string(), expected: arity, found: wires.len() });
    }
    for (i, w) in wires.iter().enumerate() {
        if wires[..i].contains(w) {
            return Err(GateError::DuplicateWire(*w));
        }
    }
    Ok(())
}

/// Applies a built-in gate.
pub fn apply<C: Coeff>(app: &GateApplication, s: &Superposition<C>) -> Result<Superposition<C>, GateError> {
    apply_gate(&builtin(app.gate), &app.wires, s)
}

/// Applies any gate to the given wires of `s`, leaving other wires untouched.
pub fn apply_gate<C: Coeff>(
    gate: &Gate<C>,
    wires: &[usize],
    s: &Superposition<C>,
) -> Result<Superposition<C>, GateError> {
    check_wires(gate.name(), gate.arity(), wires)?;
    if let Some(&wire) = wires.iter().find(|&&w| w >= s.width()) {
        return Err(GateError::WireOutOfRange { wire, width: s.width() });
    }
    let m = gate.matrix();
    let mut parts = Vec::with_capacity(s.len() * 2);
    for (basis, amp) in s.terms() {
        let col = basis.local_index(wires);
        for (row, entries) in m.iter().enumerate() {
            let u = &entries[col];
            if u.is_zero() {
                continue;
            }
            parts.push((amp.checked_mul(u)?, basis.with_local_index(wires, row)));
        }
    }
    Ok(combine(parts, s.width())?)
}
