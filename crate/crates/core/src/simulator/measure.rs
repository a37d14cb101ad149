use std::collections::BTreeMap;

use rand::Rng;

use super::state::{bitstring, PauliMasks};
use super::QuantumState;
use crate::Result;

/// Measurement outcomes keyed by bitstring (qubit 0 first).
pub type Counts = BTreeMap<String, u64>;

/// Draws `shots` outcomes from `probs`, flipping each measured bit
/// independently with probability `p_read`.
pub fn sample_counts(probs: &[f64], n_qubits: usize, shots: u64, p_read: f64, rng: &mut impl Rng) -> Counts {
    let mut cumulative = Vec::with_capacity(probs.len());
    let mut acc = 0.0;
    for p in probs {
        acc += p;
        cumulative.push(acc);
    }
    let mut tallies = vec![0u64; probs.len()];
    for _ in 0..shots {
        let outcome = sample_index(&cumulative, rng);
        tallies[flip_bits(outcome, n_qubits, p_read, rng)] += 1;
    }
    to_counts(&tallies, n_qubits)
}

pub(crate) fn sample_index(cumulative: &[f64], rng: &mut impl Rng) -> usize {
    let total = *cumulative.last().unwrap_or(&1.0);
    let u: f64 = rng.random::<f64>() * total;
    cumulative.partition_point(|&c| c <= u).min(cumulative.len() - 1)
}

pub(crate) fn flip_bits(mut outcome: usize, n_qubits: usize, p_read: f64, rng: &mut impl Rng) -> usize {
    if p_read > 0.0 {
        for q in 0..n_qubits {
            if rng.random::<f64>() < p_read {
                outcome ^= 1 << q;
            }
        }
    }
    outcome
}

pub(crate) fn to_counts(tallies: &[u64], n_qubits: usize) -> Counts {
    tallies
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, &c)| (bitstring(i, n_qubits), c))
        .collect()
}

/// Outcome distribution after independent per-bit readout flips.
pub fn apply_readout_flips(probs: &[f64], n_qubits: usize, p_read: f64) -> Vec<f64> {
    let mut out = probs.to_vec();
    if p_read == 0.0 {
        return out;
    }
    for q in 0..n_qubits {
        let bit = 1 << q;
        for i in 0..out.len() {
            if i & bit == 0 {
                let (a, b) = (out[i], out[i | bit]);
                out[i] = (1.0 - p_read) * a + p_read * b;
                out[i | bit] = p_read * a + (1.0 - p_read) * b;
            }
        }
    }
    out
}

/// Empirical distribution over basis indices.
pub fn counts_to_distribution(counts: &Counts, n_qubits: usize) -> Result<Vec<f64>> {
    let mut probs = vec![0.0; 1 << n_qubits];
    let total: u64 = counts.values().sum();
    for (bits, &c) in counts {
        probs[super::state::parse_bitstring(bits)?] += c as f64 / total.max(1) as f64;
    }
    Ok(probs)
}

/// Born-rule shot sampling of a state.
pub fn measure(state: &QuantumState, shots: u64, p_read: f64, rng: &mut impl Rng) -> Counts {
    sample_counts(&state.probabilities(), state.n_qubits(), shots, p_read, rng)
}

/// ⟨P⟩ for a diagonalized Pauli string: the mean Z-parity over the qubits
/// where `pauli` is not `I`, given a distribution over measured bitstrings.
pub fn parity_expectation(probs: &[f64], pauli: &str, n_qubits: usize) -> Result<f64> {
    let support = pauli_support(pauli, n_qubits)?;
    Ok(probs
        .iter()
        .enumerate()
        .map(|(i, p)| if (i & support).count_ones() % 2 == 0 { *p } else { -*p })
        .sum())
}

fn pauli_support(pauli: &str, n_qubits: usize) -> Result<usize> {
    let m = PauliMasks::parse(pauli, n_qubits)?;
    Ok(m.x | m.z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    #[test]
    fn readout_flip_distribution() {
        let p = apply_readout_flips(&[1.0, 0.0, 0.0, 0.0], 2, 0.1);
        let expect = [0.81, 0.09, 0.09, 0.01];
        for (a, b) in p.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn sampling_is_seeded() {
        let probs = [0.5, 0.5];
        let a = sample_counts(&probs, 1, 1000, 0.0, &mut stream(3));
        let b = sample_counts(&probs, 1, 1000, 0.0, &mut stream(3));
        assert_eq!(a, b);
        assert_eq!(a.values().sum::<u64>(), 1000);
    }

    #[test]
    fn zero_state_counts() {
        let counts = measure(&QuantumState::zero(2), 1024, 0.0, &mut stream(1));
        assert_eq!(counts, Counts::from([("00".to_string(), 1024)]));
    }

    #[test]
    fn parity_from_distribution() {
        // |10⟩: ZI = −1, IZ = +1, ZZ = −1.
        let probs = [0.0, 0.0, 1.0, 0.0];
        assert_eq!(parity_expectation(&probs, "ZI", 2).unwrap(), -1.0);
        assert_eq!(parity_expectation(&probs, "IZ", 2).unwrap(), 1.0);
        assert_eq!(parity_expectation(&probs, "ZZ", 2).unwrap(), -1.0);
        assert_eq!(parity_expectation(&probs, "II", 2).unwrap(), 1.0);
    }
}
