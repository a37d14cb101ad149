use num_complex::Complex64;

use super::linalg::Mat2;
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// An n-qubit statevector. Qubit `q` is bit `n - 1 - q` of the basis index,
/// so qubit 0 is the leftmost character of a bitstring.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumState {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl QuantumState {
    pub fn zero(n_qubits: usize) -> Self {
        Self::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Self {
        let mut amps = vec![ZERO; 1 << n_qubits];
        amps[index] = ONE;
        Self { n_qubits, amps }
    }

    /// Basis state from a bitstring such as `"01"`.
    pub fn from_bitstring(bits: &str) -> Result<Self> {
        let index = parse_bitstring(bits)?;
        Ok(Self::basis(bits.len(), index))
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::Parameter(format!("amplitude count {len} is not a power of two")));
        }
        let state = Self { n_qubits: len.trailing_zeros() as usize, amps };
        if (state.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::Parameter(format!("state norm {} is not 1", state.norm())));
        }
        Ok(state)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Probability that qubit `q` reads 1.
    pub fn excited_population(&self, q: usize) -> f64 {
        let bit = self.bit(q);
        self.amps.iter().enumerate().filter(|(i, _)| i & bit != 0).map(|(_, a)| a.norm_sqr()).sum()
    }

    /// |⟨self|other⟩|².
    pub fn fidelity(&self, other: &QuantumState) -> f64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum::<Complex64>().norm_sqr()
    }

    pub(crate) fn bit(&self, q: usize) -> usize {
        1 << (self.n_qubits - 1 - q)
    }

    pub(crate) fn amps_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub(crate) fn apply_1q(&mut self, q: usize, u: &Mat2) {
        let bit = self.bit(q);
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a, b) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = u[0][0] * a + u[0][1] * b;
                self.amps[i | bit] = u[1][0] * a + u[1][1] * b;
            }
        }
    }

    /// Applies `u0` to `target` where `control` reads 0 and `u1` where it reads 1.
    pub(crate) fn apply_conditional(&mut self, control: usize, target: usize, u0: &Mat2, u1: &Mat2) {
        let cbit = self.bit(control);
        let tbit = self.bit(target);
        for i in 0..self.amps.len() {
            if i & tbit == 0 {
                let u = if i & cbit == 0 { u0 } else { u1 };
                let (a, b) = (self.amps[i], self.amps[i | tbit]);
                self.amps[i] = u[0][0] * a + u[0][1] * b;
                self.amps[i | tbit] = u[1][0] * a + u[1][1] * b;
            }
        }
    }

    /// ⟨ψ|P|ψ⟩ for a Pauli string over `IXYZ`, qubit 0 first.
    pub fn expectation(&self, pauli: &str) -> Result<f64> {
        let p = PauliMasks::parse(pauli, self.n_qubits)?;
        let mut acc = ZERO;
        for (i, &amp) in self.amps.iter().enumerate() {
            if amp == ZERO {
                continue;
            }
            acc += self.amps[i ^ p.x].conj() * p.phase(i) * amp;
        }
        Ok(acc.re)
    }
}

/// Bit masks of a Pauli string: `x` flips (X or Y), `z` signs (Z or Y).
#[derive(Clone, Copy, Debug)]
pub(crate) struct PauliMasks {
    pub x: usize,
    pub z: usize,
    n_y: u32,
}

impl PauliMasks {
    pub fn parse(pauli: &str, n_qubits: usize) -> Result<Self> {
        if pauli.chars().count() != n_qubits {
            return Err(Error::Hamiltonian(format!(
                "Pauli string {pauli:?} has length {} but the state has {n_qubits} qubits",
                pauli.chars().count()
            )));
        }
        let (mut x, mut z, mut n_y) = (0, 0, 0);
        for (q, c) in pauli.chars().enumerate() {
            let bit = 1 << (n_qubits - 1 - q);
            match c {
                'I' => {}
                'X' => x |= bit,
                'Z' => z |= bit,
                'Y' => {
                    x |= bit;
                    z |= bit;
                    n_y += 1;
                }
                other => {
                    return Err(Error::Hamiltonian(format!("invalid Pauli letter {other:?} in {pauli:?}")))
                }
            }
        }
        Ok(Self { x, z, n_y })
    }

    /// Phase with which P maps |i⟩ to |i ^ x⟩: Y|b⟩ = i(−1)^b |¬b⟩.
    pub fn phase(&self, i: usize) -> Complex64 {
        let sign = if (i & self.z).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
        Complex64::i().powu(self.n_y) * sign
    }
}

pub(crate) fn parse_bitstring(bits: &str) -> Result<usize> {
    if bits.is_empty() || !bits.chars().all(|c| c == '0' || c == '1') {
        return Err(Error::Parameter(format!("invalid bitstring {bits:?}")));
    }
    Ok(bits.chars().fold(0, |acc, c| (acc << 1) | usize::from(c == '1')))
}

pub(crate) fn bitstring(index: usize, n_qubits: usize) -> String {
    (0..n_qubits).map(|q| if index & (1 << (n_qubits - 1 - q)) != 0 { '1' } else { '0' }).collect()
}
