//! Systematic self-checks of synthesized circuits.
//!
//! For each ensemble size the checks cover the four properties everything
//! else rests on: every gate is unitary, the symmetric basis lands exactly
//! on the low-register basis, a random product state survives the full
//! compress/truncate/pad/decompress round trip, and the probability leaking
//! out of the compressed register is negligible. The report prints one line
//! per circuit and serializes to JSON.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::circuit::{CompressionCircuit, synthesize};
use crate::error::{Error, Result};
use crate::gate::UNITARITY_TOLERANCE;
use crate::noise::{LEAK_TOLERANCE, sample_qubit};
use crate::statevec::MAX_QUBITS;
use crate::symmetric::{binary_state, dicke_state, product_state};

/// Largest admissible amplitude error when a Dicke state is driven onto its
/// binary image.
pub const BASIS_TOLERANCE: f64 = 1e-10;

/// Largest admissible elementwise error after applying the circuit and its
/// inverse back to back.
pub const ROUND_TRIP_TOLERANCE: f64 = 1e-12;

/// Largest admissible infidelity for the physical round trip that discards
/// the upper register in between.
pub const PIPELINE_TOLERANCE: f64 = 1e-10;

/// Outcome of checking one circuit.
#[derive(Debug, Clone, Serialize)]
pub struct CircuitCheck {
    pub n_qubits: usize,
    /// Symmetric basis states driven through the circuit (N+1 of them).
    pub basis_rows: usize,
    pub max_basis_error: f64,
    pub max_round_trip_error: f64,
    /// Probability found outside the compressed register.
    pub leak: f64,
    /// 1 − F between a random product state and its truncated round trip.
    pub pipeline_infidelity: f64,
    pub max_unitarity_deviation: f64,
    pub failures: Vec<String>,
}

impl CircuitCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs every check against one circuit. The seed fixes the random product
/// state used for the round trip.
pub fn verify_circuit(circuit: &CompressionCircuit, rng_seed: u64) -> Result<CircuitCheck> {
    let n = circuit.n_qubits();
    let mut failures = Vec::new();

    let unitarity = circuit.max_unitarity_deviation();
    if unitarity > UNITARITY_TOLERANCE {
        failures.push(format!(
            "gate unitarity deviation {unitarity:.3e} exceeds {UNITARITY_TOLERANCE:.0e}"
        ));
    }

    let mut max_basis_error = 0.0f64;
    for k in 0..=n {
        let image = circuit.apply(&dicke_state(n, k)?)?;
        let expected = binary_state(n, k)?;
        let error = image.max_elementwise_distance(&expected)?;
        if error > BASIS_TOLERANCE {
            failures.push(format!(
                "symmetric basis row k={k} lands {error:.3e} away from its binary image"
            ));
        }
        max_basis_error = max_basis_error.max(error);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    rng.set_stream(n as u64);
    let input = product_state(&sample_qubit(&mut rng), n)?;

    let compressed = circuit.apply(&input)?;
    let inverse = circuit.inverse();
    let round_trip = inverse.apply(&compressed)?;
    let max_round_trip_error = round_trip.max_elementwise_distance(&input)?;
    if max_round_trip_error > ROUND_TRIP_TOLERANCE {
        failures.push(format!(
            "round trip misses the input by {max_round_trip_error:.3e}"
        ));
    }

    let (kept, leak) = compressed.extract_low_register(circuit.compressed_qubits())?;
    if leak > LEAK_TOLERANCE {
        failures.push(format!(
            "probability {leak:.3e} leaked out of the compressed register"
        ));
    }
    let padded = kept.append_zero_qubits(n - circuit.compressed_qubits())?;
    let restored = inverse.apply(&padded)?;
    let pipeline_infidelity = 1.0 - input.fidelity_pure(&restored)?;
    if pipeline_infidelity > PIPELINE_TOLERANCE {
        failures.push(format!(
            "truncated round trip loses fidelity {pipeline_infidelity:.3e}"
        ));
    }

    Ok(CircuitCheck {
        n_qubits: n,
        basis_rows: n + 1,
        max_basis_error,
        max_round_trip_error,
        leak,
        pipeline_infidelity,
        max_unitarity_deviation: unitarity,
        failures,
    })
}

/// Checks of every circuit from one qubit up to `max_qubits`.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub max_qubits: usize,
    pub rng_seed: u64,
    pub checks: Vec<CircuitCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CircuitCheck::passed)
    }

    pub fn total_basis_rows(&self) -> usize {
        self.checks.iter().map(|c| c.basis_rows).sum()
    }

    pub fn max_basis_error(&self) -> f64 {
        self.checks
            .iter()
            .map(|c| c.max_basis_error)
            .fold(0.0, f64::max)
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "compression self-check up to N={} (seed {})\n",
            self.max_qubits, self.rng_seed
        );
        for check in &self.checks {
            // Adding 0.0 canonicalizes a -0.0 leak so it prints unsigned.
            out.push_str(&format!(
                "  N={:<2} {:>3} basis rows  basis {:.1e}  round-trip {:.1e}  leak {:.1e}  unitarity {:.1e}  {}\n",
                check.n_qubits,
                check.basis_rows,
                check.max_basis_error,
                check.max_round_trip_error,
                check.leak + 0.0,
                check.max_unitarity_deviation,
                if check.passed() { "ok" } else { "FAIL" },
            ));
            for failure in &check.failures {
                out.push_str(&format!("       {failure}\n"));
            }
        }
        out.push_str(&format!(
            "{} basis rows checked across {} circuits\n{}\n",
            self.total_basis_rows(),
            self.checks.len(),
            if self.passed() { "PASS" } else { "FAIL" },
        ));
        out
    }
}

/// Synthesizes and checks every circuit for N = 1..=max_qubits.
pub fn verify_range(max_qubits: usize, rng_seed: u64) -> Result<VerifyReport> {
    if max_qubits == 0 || max_qubits > MAX_QUBITS {
        return Err(Error::QubitCountOutOfRange(max_qubits));
    }
    let checks = (1..=max_qubits)
        .map(|n| verify_circuit(&synthesize(n)?, rng_seed))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport {
        max_qubits,
        rng_seed,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_small_circuit_passes() {
        let report = verify_range(7, 3).unwrap();
        assert!(report.passed(), "{}", report.render());
        assert_eq!(report.checks.len(), 7);
        assert_eq!(report.total_basis_rows(), 35);
        assert!(report.max_basis_error() < BASIS_TOLERANCE);
        for check in &report.checks {
            assert!(check.leak <= LEAK_TOLERANCE);
            assert!(check.pipeline_infidelity <= PIPELINE_TOLERANCE);
        }
    }

    #[test]
    fn report_renders_one_line_per_circuit() {
        let report = verify_range(4, 1).unwrap();
        let text = report.render();
        assert!(text.contains("N=1"));
        assert!(text.contains("N=4"));
        assert!(text.contains("14 basis rows checked across 4 circuits"));
        assert!(text.trim_end().ends_with("PASS"));
    }

    #[test]
    fn report_serializes_to_json() {
        let report = verify_range(2, 5).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"max_qubits\":2"));
        assert!(json.contains("\"basis_rows\":3"));
    }

    #[test]
    fn detects_a_tampered_shear() {
        // Swapping adjacent shears would not do: their rotation planes are
        // disjoint, so they commute. Retargeting one changes the operator.
        let text = synthesize(5).unwrap().export().unwrap();
        let tampered = text.replace("U targets=[1,2,5] a=5 b=1", "U targets=[1,2,5] a=5 b=3");
        assert_ne!(tampered, text, "expected the export to contain the shear");
        let broken = CompressionCircuit::parse(&tampered).unwrap();
        let check = verify_circuit(&broken, 11).unwrap();
        assert!(!check.passed());
        assert!(check.max_basis_error > BASIS_TOLERANCE);
        assert!(
            check
                .failures
                .iter()
                .any(|f| f.contains("symmetric basis row"))
        );
    }

    #[test]
    fn rejects_out_of_range_requests() {
        assert!(matches!(
            verify_range(0, 1),
            Err(Error::QubitCountOutOfRange(0))
        ));
        assert!(matches!(
            verify_range(MAX_QUBITS + 1, 1),
            Err(Error::QubitCountOutOfRange(_))
        ));
    }
}
