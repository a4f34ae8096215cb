//! Floating-point state-vector simulator used as an independent reference.
//!
//! Shares no code with the exact arithmetic: gate matrices are built here from
//! their textbook entries and applied to a dense amplitude vector.

use num_complex::Complex;
use num_traits::Float;
use thiserror::Error;

use crate::gates::{GateApplication, GateKind};
use crate::scalar::Coeff;
use crate::state::Superposition;
use crate::translate::Circuit;

/// Largest register the dense simulator accepts.
pub const MAX_WIDTH: usize = 20;

#[derive(Clone, Debug, PartialEq)]
pub struct FloatState<F> {
    width: usize,
    amps: Vec<Complex<F>>,
}

fn lit<F: Float>(v: f64) -> F {
    F::from(v).expect("float literal")
}

fn matrix<F: Float>(kind: GateKind) -> Vec<Vec<Complex<F>>> {
    let z = Complex::new(F::zero(), F::zero());
    let o = Complex::new(F::one(), F::zero());
    let r = lit::<F>(0.5).sqrt();
    match kind {
        GateKind::I => vec![vec![o, z], vec![z, o]],
        GateKind::X => vec![vec![z, o], vec![o, z]],
        GateKind::Z => vec![vec![o, z], vec![z, -o]],
        GateKind::S => vec![vec![o, z], vec![z, Complex::new(F::zero(), F::one())]],
        GateKind::T => vec![vec![o, z], vec![z, Complex::new(r, r)]],
        GateKind::H => {
            let h = Complex::new(r, F::zero());
            vec![vec![h, h], vec![h, -h]]
        }
        GateKind::Cnot => vec![vec![o, z, z, z], vec![z, o, z, z], vec![z, z, z, o], vec![z, z, o, z]],
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("register of {width} qubits is outside the simulator range 1..={MAX_WIDTH}")]
    WidthCap { width: usize },
    #[error("width mismatch: exact state has {exact} qubits, float state has {float}")]
    WidthMismatch { exact: usize, float: usize },
    #[error("expected {expected} amplitudes, found {found}")]
    Length { expected: usize, found: usize },
}

impl<F: Float> FloatState<F> {
    /// `|0…0>` on `width` wires.
    pub fn zeros(width: usize) -> Result<Self, OracleError> {
        if width == 0 || width > MAX_WIDTH {
            return Err(OracleError::WidthCap { width });
        }
        let mut amps = vec![Complex::new(F::zero(), F::zero()); 1 << width];
        amps[0] = Complex::new(F::one(), F::zero());
        Ok(FloatState { width, amps })
    }

    /// A state from its dense amplitude vector, index 0 being `|0…0>`.
    pub fn from_amplitudes(width: usize, amps: Vec<Complex<F>>) -> Result<Self, OracleError> {
        if width == 0 || width > MAX_WIDTH {
            return Err(OracleError::WidthCap { width });
        }
        if amps.len() != 1 << width {
            return Err(OracleError::Length { expected: 1 << width, found: amps.len() });
        }
        Ok(FloatState { width, amps })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn amplitudes(&self) -> &[Complex<F>] {
        &self.amps
    }

    /// Applies a gate. Wire 0 is the most significant bit of the index.
    pub fn apply(&mut self, op: &GateApplication) {
        let m = matrix::<F>(op.gate());
        let wires = op.wires();
        let shifts: Vec<usize> = wires.iter().map(|w| self.width - 1 - w).collect();
        let mask: usize = shifts.iter().map(|s| 1 << s).sum();
        let dim = m.len();
        let mut out = vec![Complex::new(F::zero(), F::zero()); self.amps.len()];
        for (idx, amp) in self.amps.iter().enumerate() {
            if amp.re == F::zero() && amp.im == F::zero() {
                continue;
            }
            let col = shifts.iter().fold(0, |acc, s| (acc << 1) | ((idx >> s) & 1));
            let base = idx & !mask;
            for (row, entries) in m.iter().enumerate().take(dim) {
                let e = entries[col];
                if e.re == F::zero() && e.im == F::zero() {
                    continue;
                }
                let target = shifts
                    .iter()
                    .enumerate()
                    .fold(base, |acc, (k, s)| acc | (((row >> (shifts.len() - 1 - k)) & 1) << s));
                out[target] = out[target] + e * *amp;
            }
        }
        self.amps = out;
    }

    pub fn norm_sq(&self) -> F {
        self.amps.iter().fold(F::zero(), |acc, a| acc + a.norm_sqr())
    }

    pub fn probabilities(&self) -> Vec<F> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }
}

/// Simulates the gates of a circuit from `|0…0>`.
pub fn run_circuit<F: Float>(c: &Circuit) -> Result<FloatState<F>, OracleError> {
    let mut s = FloatState::zeros(c.width())?;
    for op in c.ops() {
        s.apply(op);
    }
    Ok(s)
}

/// Whether every amplitude, absent terms included, differs by less than
/// `tol`, together with the largest deviation.
pub fn compare<C: Coeff>(
    exact: &Superposition<C>,
    float: &FloatState<f64>,
    tol: f64,
) -> Result<(bool, f64), OracleError> {
    if exact.width() != float.width() {
        return Err(OracleError::WidthMismatch { exact: exact.width(), float: float.width() });
    }
    let mut dense = vec![Complex::new(0.0, 0.0); float.amps.len()];
    for (b, a) in exact.terms() {
        let idx = b.index().expect("width within the simulator range") as usize;
        dense[idx] = a.to_complex();
    }
    let dev = dense.iter().zip(&float.amps).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    Ok((dev < tol, dev))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(kind: GateKind, wires: &[usize]) -> GateApplication {
        GateApplication::new(kind, wires.to_vec()).unwrap()
    }

    #[test]
    fn bell_amplitudes() {
        let c = Circuit::new(2, vec![op(GateKind::H, &[0]), op(GateKind::Cnot, &[0, 1])], true).unwrap();
        let s = run_circuit::<f64>(&c).unwrap();
        let r = 0.5f64.sqrt();
        let a = s.amplitudes();
        assert!((a[0].re - r).abs() < 1e-15 && (a[3].re - r).abs() < 1e-15);
        assert!(a[1].norm() < 1e-15 && a[2].norm() < 1e-15);
    }

    #[test]
    fn cnot_control_is_first_wire() {
        // X on wire 1 then CNOT 1 0 flips wire 0: |01> -> |11>.
        let c = Circuit::new(2, vec![op(GateKind::X, &[1]), op(GateKind::Cnot, &[1, 0])], false).unwrap();
        let s = run_circuit::<f32>(&c).unwrap();
        assert_eq!(s.probabilities(), vec![0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn t_squared_is_s() {
        let mut a = FloatState::<f64>::zeros(1).unwrap();
        a.apply(&op(GateKind::X, &[0]));
        let mut b = a.clone();
        a.apply(&op(GateKind::T, &[0]));
        a.apply(&op(GateKind::T, &[0]));
        b.apply(&op(GateKind::S, &[0]));
        assert!((a.amplitudes()[1] - b.amplitudes()[1]).norm() < 1e-15);
    }

    #[test]
    fn width_cap() {
        assert_eq!(FloatState::<f64>::zeros(MAX_WIDTH + 1), Err(OracleError::WidthCap { width: MAX_WIDTH + 1 }));
        assert!(FloatState::<f64>::zeros(0).is_err());
        assert_eq!(
            FloatState::<f64>::zeros(1).unwrap().amplitudes(),
            &[Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)]
        );
    }

    #[test]
    fn compare_examples() {
        let zero = crate::state::ket_str::<i64>("0").unwrap();
        let one = FloatState::from_amplitudes(1, vec![Complex::new(0.0, 0.0), Complex::new(1.0, 0.0)]).unwrap();
        assert_eq!(compare(&zero, &one, 1e-9).unwrap(), (false, 1.0));
        let two = FloatState::<f64>::zeros(2).unwrap();
        assert!(matches!(compare(&zero, &two, 1e-9), Err(OracleError::WidthMismatch { .. })));
    }
}
