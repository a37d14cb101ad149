use crate::device::DeviceModel;
use crate::noise::NoiseConfig;
use crate::pulse_ir::Schedule;
use crate::simulator::{run_distribution, Counts, SimOptions};
use crate::transforms::reverse_schedule;
use crate::Result;

/// Fraction of shots that returned `initial`.
pub fn pst(counts: &Counts, initial: &str) -> f64 {
    let total: u64 = counts.values().sum();
    if total == 0 {
        return 0.0;
    }
    counts.get(initial).copied().unwrap_or(0) as f64 / total as f64
}

/// Runs `s` followed by its reversal from |0…0⟩ and returns the probability
/// of reading back all zeros.
pub fn estimate_fidelity(
    s: &Schedule,
    device: &DeviceModel,
    noise: Option<&NoiseConfig>,
    options: &SimOptions,
) -> Result<f64> {
    let round_trip = s.append(&reverse_schedule(s)?);
    let probs = run_distribution(&round_trip, device, options, noise)?;
    Ok(probs[0].clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pst_counts() {
        let c = Counts::from([("00".to_string(), 1024)]);
        assert_eq!(pst(&c, "00"), 1.0);
        let c = Counts::from([("00".to_string(), 512), ("11".to_string(), 512)]);
        assert_eq!(pst(&c, "00"), 0.5);
        assert_eq!(pst(&c, "01"), 0.0);
    }

    #[test]
    fn empty_schedule_is_perfect() {
        let d = DeviceModel::single_qubit();
        assert_eq!(estimate_fidelity(&Schedule::new(), &d, None, &SimOptions::statevector()).unwrap(), 1.0);
    }
}
