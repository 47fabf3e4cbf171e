//! Dense state vectors over up to [`MAX_QUBITS`] qubits.
//!
//! A state over N qubits holds 2^N complex amplitudes. Qubit `j` (1-based)
//! is bit `j - 1` of the basis index, so qubit 1 is the least significant
//! bit: basis index 6 is the state |011⟩ written with qubit 1 on the left.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gate::Gate;

/// Hard cap on simulated qubits (2^24 amplitudes, 256 MiB).
pub const MAX_QUBITS: usize = 24;

/// Tolerance for norm and state-equality checks.
pub const STATE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// |0…0⟩ on `n_qubits`.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis_state(n_qubits, 0)
    }

    /// The computational basis state with the given index.
    pub fn basis_state(n_qubits: usize, index: usize) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::BasisIndexOutOfRange { index, dim });
        }
        let mut amps = vec![Complex64::ZERO; dim];
        amps[index] = Complex64::ONE;
        Ok(StateVector { n_qubits, amps })
    }

    /// Wraps an amplitude vector, which must have length 2^n and unit norm
    /// within [`STATE_TOLERANCE`].
    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        if amps.len() != 1usize << n_qubits {
            return Err(Error::InvalidParameter(format!(
                "amplitude vector has length {}, expected {}",
                amps.len(),
                1usize << n_qubits
            )));
        }
        let state = StateVector { n_qubits, amps };
        let deviation = (state.norm() - 1.0).abs();
        if deviation > STATE_TOLERANCE {
            return Err(Error::NotNormalized(deviation));
        }
        Ok(state)
    }

    pub(crate) fn from_amplitudes_unchecked(n_qubits: usize, amps: Vec<Complex64>) -> Self {
        debug_assert_eq!(amps.len(), 1usize << n_qubits);
        StateVector { n_qubits, amps }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Applies a unitary gate, returning the new state.
    pub fn apply_gate(&self, gate: &Gate) -> Result<Self> {
        let mut out = self.clone();
        out.apply_gate_in_place(gate)?;
        Ok(out)
    }

    pub(crate) fn apply_gate_in_place(&mut self, gate: &Gate) -> Result<()> {
        gate.apply_to(&mut self.amps, self.n_qubits)
    }

    /// ⟨self|other⟩.
    pub fn inner_product(&self, other: &Self) -> Result<Complex64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// |⟨self|other⟩|² for two pure states.
    pub fn fidelity_pure(&self, other: &Self) -> Result<f64> {
        Ok(self.inner_product(other)?.norm_sqr())
    }

    /// max_i |self_i − other_i|, the elementwise distance between two states.
    pub fn max_elementwise_distance(&self, other: &Self) -> Result<f64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Reduced density matrix of one qubit, tracing out all others.
    pub fn reduced_single_qubit(&self, qubit: usize) -> Result<DensityMatrix2> {
        if qubit == 0 || qubit > self.n_qubits {
            return Err(Error::TargetOutOfRange {
                target: qubit,
                n_qubits: self.n_qubits,
            });
        }
        let bit = 1usize << (qubit - 1);
        let mut rho = [[Complex64::ZERO; 2]; 2];
        for rest in 0..self.dim() {
            if rest & bit != 0 {
                continue;
            }
            let a0 = self.amps[rest];
            let a1 = self.amps[rest | bit];
            rho[0][0] += a0 * a0.conj();
            rho[0][1] += a0 * a1.conj();
            rho[1][0] += a1 * a0.conj();
            rho[1][1] += a1 * a1.conj();
        }
        DensityMatrix2::new(rho)
    }

    /// Tensors `extra` zero-initialized qubits onto the high end.
    pub fn append_zero_qubits(&self, extra: usize) -> Result<Self> {
        let n_qubits = self.n_qubits + extra;
        check_qubit_count(n_qubits)?;
        let mut amps = vec![Complex64::ZERO; 1usize << n_qubits];
        amps[..self.dim()].copy_from_slice(&self.amps);
        Ok(StateVector { n_qubits, amps })
    }

    /// Conditions qubits `n_keep + 1 ..= N` on |0⟩ and renormalizes, keeping
    /// the low `n_keep` qubits. Returns the kept state and the discarded
    /// probability weight (the leak).
    pub fn extract_low_register(&self, n_keep: usize) -> Result<(Self, f64)> {
        if n_keep == 0 || n_keep > self.n_qubits {
            return Err(Error::InvalidParameter(format!(
                "cannot keep {n_keep} of {} qubits",
                self.n_qubits
            )));
        }
        let kept_dim = 1usize << n_keep;
        let kept_weight: f64 = self.amps[..kept_dim].iter().map(|a| a.norm_sqr()).sum();
        let leak: f64 = self.amps[kept_dim..].iter().map(|a| a.norm_sqr()).sum();
        if kept_weight <= 1e-12 {
            return Err(Error::DegenerateExtraction { leak });
        }
        let scale = 1.0 / kept_weight.sqrt();
        let amps = self.amps[..kept_dim].iter().map(|a| a * scale).collect();
        Ok((
            StateVector {
                n_qubits: n_keep,
                amps,
            },
            leak,
        ))
    }
}

fn check_qubit_count(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::QubitCountOutOfRange(n_qubits));
    }
    Ok(())
}

/// A single-qubit density matrix, validated on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix2 {
    elems: [[Complex64; 2]; 2],
}

impl DensityMatrix2 {
    pub const HERMITICITY_TOLERANCE: f64 = 1e-12;
    pub const TRACE_TOLERANCE: f64 = 1e-10;
    pub const EIGENVALUE_FLOOR: f64 = -1e-10;

    /// Validates Hermiticity, unit trace and positive semidefiniteness.
    pub fn new(elems: [[Complex64; 2]; 2]) -> Result<Self> {
        let herm_dev = (elems[0][1] - elems[1][0].conj())
            .norm()
            .max(elems[0][0].im.abs())
            .max(elems[1][1].im.abs());
        if herm_dev > Self::HERMITICITY_TOLERANCE {
            return Err(Error::InvalidDensityMatrix(format!(
                "hermiticity deviation {herm_dev:.3e}"
            )));
        }
        let trace = elems[0][0].re + elems[1][1].re;
        if (trace - 1.0).abs() > Self::TRACE_TOLERANCE {
            return Err(Error::InvalidDensityMatrix(format!("trace {trace}")));
        }
        let rho = DensityMatrix2 { elems };
        let (lo, _) = rho.eigenvalues();
        if lo < Self::EIGENVALUE_FLOOR {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {lo:.3e}"
            )));
        }
        Ok(rho)
    }

    pub fn elements(&self) -> &[[Complex64; 2]; 2] {
        &self.elems
    }

    pub fn trace(&self) -> f64 {
        self.elems[0][0].re + self.elems[1][1].re
    }

    /// Eigenvalues in ascending order (real; the matrix is Hermitian).
    pub fn eigenvalues(&self) -> (f64, f64) {
        let a = self.elems[0][0].re;
        let d = self.elems[1][1].re;
        let mid = 0.5 * (a + d);
        let radius = (0.25 * (a - d).powi(2) + self.elems[0][1].norm_sqr()).sqrt();
        (mid - radius, mid + radius)
    }

    /// ⟨ψ|ρ|ψ⟩ for a normalized single-qubit pure state.
    pub fn pure_state_fidelity(&self, psi: &StateVector) -> Result<f64> {
        if psi.n_qubits() != 1 {
            return Err(Error::DimensionMismatch {
                left: 1,
                right: psi.n_qubits(),
            });
        }
        let deviation = (psi.norm() - 1.0).abs();
        if deviation > STATE_TOLERANCE {
            return Err(Error::NotNormalized(deviation));
        }
        let mut acc = Complex64::ZERO;
        for r in 0..2 {
            for c in 0..2 {
                acc += psi.amplitude(r).conj() * self.elems[r][c] * psi.amplitude(c);
            }
        }
        Ok(acc.re)
    }
}
