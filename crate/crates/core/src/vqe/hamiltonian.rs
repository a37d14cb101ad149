use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest register [`PauliHamiltonian::exact_ground_energy`] diagonalizes.
pub const MAX_EXACT_QUBITS: usize = 4;

const H2_0735: &str = include_str!("../../data/molecules/h2_0.735.json");
const HEH_PLUS_10: &str = include_str!("../../data/molecules/heh+_1.0.json");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliTerm {
    pub pauli: String,
    pub coeff: f64,
}

/// Weighted sum of Pauli strings (qubit 0 first), coefficients in Hartree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PauliHamiltonian {
    pub n_qubits: usize,
    pub terms: Vec<PauliTerm>,
}

impl PauliHamiltonian {
    pub fn new(n_qubits: usize, terms: Vec<(&str, f64)>) -> Result<Self> {
        let h = Self {
            n_qubits,
            terms: terms.into_iter().map(|(p, c)| PauliTerm { pauli: p.to_string(), coeff: c }).collect(),
        };
        h.validate()?;
        Ok(h)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_qubits == 0 {
            return Err(Error::Hamiltonian("n_qubits must be positive".into()));
        }
        for t in &self.terms {
            if t.pauli.chars().count() != self.n_qubits || !t.pauli.chars().all(|c| "IXYZ".contains(c)) {
                return Err(Error::Hamiltonian(format!("malformed Pauli string {:?}", t.pauli)));
            }
            if !t.coeff.is_finite() {
                return Err(Error::Hamiltonian(format!("non-finite coefficient on {}", t.pauli)));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let h: Self = serde_json::from_str(text)?;
        h.validate()?;
        Ok(h)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Bundled molecule by name: `h2` (0.735 Å) or `heh+` (1.0 Å). Both are
    /// STO-3G, Jordan–Wigner, reduced to two qubits; energies are electronic
    /// (nuclear repulsion excluded).
    pub fn molecule(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "h2" => Self::from_json(H2_0735),
            "heh+" | "heh" => Self::from_json(HEH_PLUS_10),
            other => Err(Error::Hamiltonian(format!("unknown molecule {other:?}; expected h2 or heh+"))),
        }
    }

    /// Sum of identity-term coefficients.
    pub fn identity_offset(&self) -> f64 {
        self.terms.iter().filter(|t| t.pauli.chars().all(|c| c == 'I')).map(|t| t.coeff).sum()
    }

    /// Dense matrix in the basis where qubit 0 is the most significant bit.
    pub fn matrix(&self) -> DMatrix<Complex64> {
        let dim = 1 << self.n_qubits;
        let mut m = DMatrix::zeros(dim, dim);
        for t in &self.terms {
            let mut op = DMatrix::from_element(1, 1, Complex64::new(t.coeff, 0.0));
            for c in t.pauli.chars() {
                op = crate::simulator::linalg::kron(&op, &pauli_matrix(c));
            }
            m += op;
        }
        m
    }

    /// Smallest eigenvalue of the dense matrix.
    pub fn exact_ground_energy(&self) -> Result<f64> {
        if self.n_qubits > MAX_EXACT_QUBITS {
            return Err(Error::Capability(format!(
                "exact diagonalization limited to {MAX_EXACT_QUBITS} qubits"
            )));
        }
        let eig = self.matrix().symmetric_eigen();
        Ok(eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min))
    }
}

fn pauli_matrix(c: char) -> DMatrix<Complex64> {
    let (z, o, i) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0));
    let entries = match c {
        'X' => [z, o, o, z],
        'Y' => [z, -i, i, z],
        'Z' => [o, z, z, -o],
        _ => [o, z, z, o],
    };
    DMatrix::from_row_slice(2, 2, &entries)
}
