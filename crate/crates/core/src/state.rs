//! Superpositions over computational basis states.
//!
//! Wire 0 is the leftmost character of a bitstring, so `|01>` has wire 0 in
//! state 0 and wire 1 in state 1. Terms are kept in lexicographic order and
//! zero amplitudes are never stored: a term whose amplitudes cancel is gone.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::amplitude::{Amplitude, ArithError, ExactReal};
use crate::scalar::Coeff;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("basis state must have at least one qubit")]
    EmptyBasisState,
    #[error("invalid basis digit {0:?}, expected 0 or 1")]
    InvalidDigit(char),
    #[error("basis state has width {found}, expected {expected}")]
    WidthMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A computational basis state `|x⟩ₙ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisState {
    bits: Vec<bool>,
}

impl BasisState {
    pub fn new(bits: Vec<bool>) -> Result<Self, StateError> {
        if bits.is_empty() {
            return Err(StateError::EmptyBasisState);
        }
        Ok(BasisState { bits })
    }

    /// Parses a string of `0`/`1` digits, e.g. `"01"`.
    pub fn parse(digits: &str) -> Result<Self, StateError> {
        let bits = digits
            .chars()
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(StateError::InvalidDigit(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(bits)
    }

    pub fn zeros(width: usize) -> Result<Self, StateError> {
        Self::new(vec![false; width])
    }

    /// Basis state whose bitstring is the binary expansion of `index`, wire 0
    /// being the most significant bit.
    pub fn from_index(index: u64, width: usize) -> Result<Self, StateError> {
        let bits = (0..width).map(|w| shift_bit(index, width - 1 - w)).collect();
        Self::new(bits)
    }

    /// Inverse of [`BasisState::from_index`]; `None` above 64 qubits.
    pub fn index(&self) -> Option<u64> {
        if self.bits.len() > 64 {
            return None;
        }
        Some(self.bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64))
    }

    pub fn width(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn bit(&self, wire: usize) -> bool {
        self.bits[wire]
    }

    pub fn is_all_zero(&self) -> bool {
        self.bits.iter().all(|b| !b)
    }

    /// Concatenation `|x⟩|y⟩ = |xy⟩`.
    pub fn concat(&self, other: &BasisState) -> BasisState {
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        BasisState { bits }
    }

    /// The bitstring without the surrounding `|` and `>`.
    pub fn digits(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    /// Packs the bits on `wires` into an index, the first listed wire being
    /// most significant.
    pub fn local_index(&self, wires: &[usize]) -> usize {
        wires.iter().fold(0usize, |acc, &w| (acc << 1) | self.bits[w] as usize)
    }

    /// Overwrites the bits on `wires` with the binary expansion of `local`.
    pub fn with_local_index(&self, wires: &[usize], local: usize) -> BasisState {
        let mut bits = self.bits.clone();
        let n = wires.len();
        for (pos, &w) in wires.iter().enumerate() {
            bits[w] = shift_bit(local as u64, n - 1 - pos);
        }
        BasisState { bits }
    }
}

fn shift_bit(value: u64, shift: usize) -> bool {
    shift < 64 && (value >> shift) & 1 == 1
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}>", self.digits())
    }
}

/// `Σ αₓ |x⟩ₙ` with every stored αₓ canonical and nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Superposition<C> {
    width: usize,
    terms: BTreeMap<BasisState, Amplitude<C>>,
}

impl<C: Coeff> Superposition<C> {
    /// The superposition with no terms. Never a legal sequent antecedent,
    /// but the identity for [`combine`].
    pub fn empty(width: usize) -> Self {
        Superposition { width, terms: BTreeMap::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic order of the basis state.
    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&BasisState, &Amplitude<C>)> {
        self.terms.iter()
    }

    /// αₓ, zero when the term is absent.
    pub fn amplitude(&self, basis: &BasisState) -> Amplitude<C> {
        self.terms.get(basis).cloned().unwrap_or_else(Amplitude::zero)
    }

    /// Basis states with nonzero amplitude, in lexicographic order.
    pub fn support(&self) -> Vec<BasisState> {
        self.terms.keys().cloned().collect()
    }

    pub fn norm_sq(&self) -> Result<ExactReal<C>, ArithError> {
        norm_sq(self)
    }

    /// All terms paired with their amplitude, in the shape accepted by [`combine`].
    pub fn to_parts(&self) -> Vec<(Amplitude<C>, BasisState)> {
        self.terms.iter().map(|(b, a)| (a.clone(), b.clone())).collect()
    }
}

/// `|x⟩` with amplitude 1.
pub fn ket<C: Coeff>(bits: &BasisState) -> Superposition<C> {
    let mut terms = BTreeMap::new();
    terms.insert(bits.clone(), Amplitude::one());
    Superposition { width: bits.width(), terms }
}

/// `ket` from a digit string such as `"01"`.
pub fn ket_str<C: Coeff>(digits: &str) -> Result<Superposition<C>, StateError> {
    Ok(ket(&BasisState::parse(digits)?))
}

/// Tensor product; the left operand's wires come first.
pub fn tensor<C: Coeff>(left: &Superposition<C>, right: &Superposition<C>) -> Result<Superposition<C>, ArithError> {
    let mut terms = BTreeMap::new();
    for (x, a) in left.terms() {
        for (y, b) in right.terms() {
            // Products of nonzero ring elements are nonzero.
            terms.insert(x.concat(y), a.checked_mul(b)?);
        }
    }
    Ok(Superposition { width: left.width + right.width, terms })
}

/// Sums amplitudes of equal basis states and drops the terms that cancel.
pub fn combine<C: Coeff, I>(parts: I, width: usize) -> Result<Superposition<C>, StateError>
where
    I: IntoIterator<Item = (Amplitude<C>, BasisState)>,
{
    let mut terms: BTreeMap<BasisState, Amplitude<C>> = BTreeMap::new();
    for (amp, basis) in parts {
        if basis.width() != width {
            return Err(StateError::WidthMismatch { expected: width, found: basis.width() });
        }
        match terms.get_mut(&basis) {
            Some(acc) => *acc = acc.checked_add(&amp)?,
            None => {
                terms.insert(basis, amp.canonicalize()?);
            }
        }
    }
    terms.retain(|_, a| !a.is_zero());
    Ok(Superposition { width, terms })
}

pub fn norm_sq<C: Coeff>(s: &Superposition<C>) -> Result<ExactReal<C>, ArithError> {
    s.terms().try_fold(ExactReal::zero(), |acc, (_, a)| acc.checked_add(&a.mod_sq()?))
}

pub fn support<C: Coeff>(s: &Superposition<C>) -> Vec<BasisState> {
    s.support()
}

/// `(1/sqrt2)|00> + (1/sqrt2)|11>`; the empty superposition prints as `0`.
impl<C: Coeff> fmt::Display for Superposition<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        for (i, (basis, amp)) in self.terms().enumerate() {
            let (negative, mag) = amp.coefficient_text();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag == "1" {
                write!(f, "{basis}")?;
            } else {
                write!(f, "({mag}){basis}")?;
            }
        }
        Ok(())
    }
}

/// LaTeX rendering with `\ket{..}`, e.g. `\frac{1}{\sqrt{2}}\ket{0} + \frac{1}{\sqrt{2}}\ket{1}`.
pub fn to_latex<C: Coeff>(s: &Superposition<C>) -> String {
    if s.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (basis, amp)) in s.terms().enumerate() {
        let (negative, mag) = amp.coefficient_latex();
        out.push_str(match (i, negative) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        if mag != "1" {
            out.push_str(&mag);
        }
        out.push_str(&format!("\\ket{{{}}}", basis.digits()));
    }
    out
}
