//! Rotation noise applied to stored qubits, and Monte Carlo averages of the
//! resulting fidelities.
//!
//! Two storage scenarios are compared. Uncompressed: every one of the N
//! physical qubits suffers the same small rotation, so the global fidelity
//! is |⟨ψ|R|ψ⟩|^2N and the per-qubit fidelity is |⟨ψ|R|ψ⟩|², both closed
//! form. Compressed: the ensemble is compressed, each of the ⌈log₂(N+1)⌉
//! register qubits is rotated, and the ensemble is decompressed again before
//! measuring the same two fidelities.
//!
//! Averages draw the stored qubit uniformly from the Bloch sphere and, when
//! requested, an independent uniform rotation axis. Each sample seeds its
//! own counter-based RNG stream, so results are reproducible for a given
//! seed regardless of thread count.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::circuit::{CompressionCircuit, synthesize};
use crate::error::{Error, Result};
use crate::gate::{Gate, GateKind};
use crate::statevec::StateVector;
use crate::symmetric::{QubitParams, product_state};

/// Probability allowed to sit outside the compressed register after a
/// correct compression.
pub const LEAK_TOLERANCE: f64 = 1e-10;

/// A unit vector on the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochAxis {
    x: f64,
    y: f64,
    z: f64,
}

impl BlochAxis {
    pub const NORM_TOLERANCE: f64 = 1e-12;
    pub const X: BlochAxis = BlochAxis { x: 1.0, y: 0.0, z: 0.0 };
    pub const Y: BlochAxis = BlochAxis { x: 0.0, y: 1.0, z: 0.0 };
    pub const Z: BlochAxis = BlochAxis { x: 0.0, y: 0.0, z: 1.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let deviation = (x * x + y * y + z * z - 1.0).abs();
        if deviation > Self::NORM_TOLERANCE {
            return Err(Error::InvalidParameter(format!(
                "axis ({x}, {y}, {z}) is not unit length"
            )));
        }
        Ok(BlochAxis { x, y, z })
    }

    pub fn components(&self) -> (f64, f64, f64) {
        (self.x, self.y, self.z)
    }
}

/// R = cos(φ/2)·I − i·sin(φ/2)·(n̂·σ), row-major 2×2.
pub fn rotation_matrix(axis: BlochAxis, angle: f64) -> [Complex64; 4] {
    let c = (angle / 2.0).cos();
    let s = (angle / 2.0).sin();
    [
        Complex64::new(c, -s * axis.z),
        Complex64::new(-s * axis.y, -s * axis.x),
        Complex64::new(s * axis.y, -s * axis.x),
        Complex64::new(c, s * axis.z),
    ]
}

/// The rotation as a gate on one qubit.
pub fn rotation_gate(axis: BlochAxis, angle: f64, qubit: usize) -> Result<Gate> {
    Gate::dense(
        format!("R({qubit})"),
        &[qubit],
        rotation_matrix(axis, angle).to_vec(),
        GateKind::Custom,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    Uncompressed,
    Compressed,
}

impl std::fmt::Display for Scenario {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Scenario::Uncompressed => "uncompressed",
            Scenario::Compressed => "compressed",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Global,
    SingleQubit,
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Metric::Global => "global",
            Metric::SingleQubit => "single_qubit",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AxisPolicy {
    Fixed(BlochAxis),
    Averaged,
}

impl std::fmt::Display for AxisPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AxisPolicy::Averaged => f.write_str("averaged"),
            AxisPolicy::Fixed(a) if *a == BlochAxis::X => f.write_str("x"),
            AxisPolicy::Fixed(a) if *a == BlochAxis::Y => f.write_str("y"),
            AxisPolicy::Fixed(a) if *a == BlochAxis::Z => f.write_str("z"),
            AxisPolicy::Fixed(a) => {
                write!(f, "axis({:.3},{:.3},{:.3})", a.x, a.y, a.z)
            }
        }
    }
}

/// Fidelities of one noisy storage experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseOutcome {
    /// |⟨Ψ|Ψ'⟩|² against the full N-qubit input.
    pub global: f64,
    /// ⟨ψ|ρ₁|ψ⟩ for the first recovered qubit.
    pub single: f64,
}

/// Noise on unencoded storage: each qubit is rotated independently, so both
/// fidelities follow from the single-qubit overlap.
pub fn run_uncompressed(
    params: &QubitParams,
    n: usize,
    axis: BlochAxis,
    angle: f64,
) -> NoiseOutcome {
    let m = rotation_matrix(axis, angle);
    let (a, b) = (params.alpha(), params.beta());
    let overlap = a.conj() * (m[0] * a + m[1] * b) + b.conj() * (m[2] * a + m[3] * b);
    let single = overlap.norm_sqr();
    NoiseOutcome {
        global: single.powi(n as i32),
        single,
    }
}

/// Runs the compressed-storage pipeline and returns the decompressed state:
/// compress |ψ⟩^⊗N, keep the low register, rotate each register qubit,
/// pad with zeros, decompress.
pub fn noisy_round_trip(
    params: &QubitParams,
    circuit: &CompressionCircuit,
    axis: BlochAxis,
    angle: f64,
) -> Result<StateVector> {
    noisy_round_trip_with(params, circuit, &circuit.inverse(), axis, angle)
}

fn noisy_round_trip_with(
    params: &QubitParams,
    circuit: &CompressionCircuit,
    inverse: &CompressionCircuit,
    axis: BlochAxis,
    angle: f64,
) -> Result<StateVector> {
    let n = circuit.n_qubits();
    let register = circuit.compressed_qubits();
    let input = product_state(params, n)?;
    let compressed = circuit.apply(&input)?;
    let (mut kept, leak) = compressed.extract_low_register(register)?;
    if leak > LEAK_TOLERANCE {
        return Err(Error::LeakAboveTolerance {
            leak,
            tolerance: LEAK_TOLERANCE,
        });
    }
    for qubit in 1..=register {
        kept.apply_gate_in_place(&rotation_gate(axis, angle, qubit)?)?;
    }
    let padded = kept.append_zero_qubits(n - register)?;
    inverse.apply(&padded)
}

/// Noise on compressed storage, measured after decompression.
pub fn run_compressed(
    params: &QubitParams,
    circuit: &CompressionCircuit,
    axis: BlochAxis,
    angle: f64,
) -> Result<NoiseOutcome> {
    run_compressed_with(params, circuit, &circuit.inverse(), axis, angle)
}

fn run_compressed_with(
    params: &QubitParams,
    circuit: &CompressionCircuit,
    inverse: &CompressionCircuit,
    axis: BlochAxis,
    angle: f64,
) -> Result<NoiseOutcome> {
    let n = circuit.n_qubits();
    let restored = noisy_round_trip_with(params, circuit, inverse, axis, angle)?;
    let input = product_state(params, n)?;
    let global = input.fidelity_pure(&restored)?;
    let rho = restored.reduced_single_qubit(1)?;
    let single = rho.pure_state_fidelity(&params.as_state())?;
    Ok(NoiseOutcome { global, single })
}

/// One Monte Carlo estimate: a scenario, a metric and its averaged fidelity.
#[derive(Debug, Clone, PartialEq)]
pub struct FidelityRecord {
    pub scenario: Scenario,
    pub metric: Metric,
    pub n_qubits: usize,
    pub phi: f64,
    pub axis_policy: AxisPolicy,
    pub samples: usize,
    pub rng_seed: u64,
    pub mean_fidelity: f64,
    pub std_error: f64,
}

/// A Haar-uniform single-qubit pure state (uniform on the Bloch sphere).
pub fn sample_qubit<R: Rng>(rng: &mut R) -> QubitParams {
    let theta = (1.0 - 2.0 * rng.random::<f64>()).acos();
    let phase = 2.0 * std::f64::consts::PI * rng.random::<f64>();
    QubitParams::from_bloch(theta, phase)
}

/// A uniformly distributed rotation axis.
pub fn sample_axis<R: Rng>(rng: &mut R) -> BlochAxis {
    let z = 1.0 - 2.0 * rng.random::<f64>();
    let azimuth = 2.0 * std::f64::consts::PI * rng.random::<f64>();
    let r = (1.0 - z * z).max(0.0).sqrt();
    BlochAxis {
        x: r * azimuth.cos(),
        y: r * azimuth.sin(),
        z,
    }
}

/// Stream id for sample `i` at ensemble size `n`. Scenario, metric and angle
/// deliberately do not enter: comparisons across them then share the same
/// sampled states and axes (common random numbers).
fn sample_stream(n: usize, i: usize) -> u64 {
    ((n as u64) << 32) | i as u64
}

/// Monte Carlo average of a storage fidelity. Deterministic for a given
/// seed: every sample owns a dedicated RNG stream, and the reduction order
/// is fixed, so thread scheduling cannot change the result.
pub fn average_fidelity(
    n: usize,
    scenario: Scenario,
    metric: Metric,
    axis_policy: AxisPolicy,
    phi: f64,
    samples: usize,
    rng_seed: u64,
) -> Result<FidelityRecord> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be positive".into()));
    }
    if !phi.is_finite() {
        return Err(Error::InvalidParameter(format!("angle {phi} is not finite")));
    }
    if samples > u32::MAX as usize {
        return Err(Error::InvalidParameter("sample count too large".into()));
    }
    let circuit = match scenario {
        Scenario::Compressed => {
            if n < 2 {
                return Err(Error::InvalidParameter(
                    "compressed storage needs at least 2 qubits".into(),
                ));
            }
            Some(synthesize(n)?)
        }
        Scenario::Uncompressed => None,
    };
    let inverse = circuit.as_ref().map(CompressionCircuit::inverse);

    let values = (0..samples)
        .into_par_iter()
        .map(|i| -> Result<f64> {
            let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
            rng.set_stream(sample_stream(n, i));
            let psi = sample_qubit(&mut rng);
            let axis = match axis_policy {
                AxisPolicy::Averaged => sample_axis(&mut rng),
                AxisPolicy::Fixed(axis) => axis,
            };
            let outcome = match (&circuit, &inverse) {
                (Some(fwd), Some(inv)) => run_compressed_with(&psi, fwd, inv, axis, phi)?,
                _ => run_uncompressed(&psi, n, axis, phi),
            };
            let f = match metric {
                Metric::Global => outcome.global,
                Metric::SingleQubit => outcome.single,
            };
            debug_assert!((-1e-12..=1.0 + 1e-12).contains(&f), "fidelity {f}");
            Ok(f.clamp(0.0, 1.0))
        })
        .collect::<Result<Vec<f64>>>()?;

    let mean = values.iter().sum::<f64>() / samples as f64;
    let variance = if samples > 1 {
        values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (samples - 1) as f64
    } else {
        0.0
    };
    Ok(FidelityRecord {
        scenario,
        metric,
        n_qubits: n,
        phi,
        axis_policy,
        samples,
        rng_seed,
        mean_fidelity: mean,
        std_error: (variance / samples as f64).sqrt(),
    })
}
