//! Helpers shared by the integration tests.
// Each test binary compiles this module separately and uses its own subset.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use symcomp::StateVector;

/// A random state on the full 2^n space: complex Gaussian amplitudes,
/// normalized. Box-Muller keeps the dependency list flat.
pub fn random_full_space_state<R: Rng>(n_qubits: usize, rng: &mut R) -> StateVector {
    let dim = 1usize << n_qubits;
    let mut amps = Vec::with_capacity(dim);
    for _ in 0..dim {
        amps.push(Complex64::new(standard_normal(rng), standard_normal(rng)));
    }
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    StateVector::from_amplitudes(n_qubits, amps).expect("normalized by construction")
}

fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    let u: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
    let v: f64 = rng.random();
    (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos()
}

/// Asserts a state equals the given sparse list of real amplitudes (scaled
/// by 1/√denominator) and vanishes everywhere else.
pub fn assert_sparse_state(
    state: &StateVector,
    entries: &[(usize, f64)],
    denominator: f64,
    tolerance: f64,
    context: &str,
) {
    let scale = denominator.sqrt();
    for (index, amp) in state.amplitudes().iter().enumerate() {
        let expected = entries
            .iter()
            .find(|(i, _)| *i == index)
            .map(|(_, v)| v / scale)
            .unwrap_or(0.0);
        assert!(
            (amp - Complex64::new(expected, 0.0)).norm() <= tolerance,
            "{context}: index {index} has {amp}, expected {expected}"
        );
    }
}
