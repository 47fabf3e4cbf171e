//! Symmetric states of N identically prepared qubits.
//!
//! The fully symmetric subspace of N qubits is spanned by the N+1 Dicke
//! states |N;k⟩, the equal-amplitude superpositions of all basis states with
//! k excitations. The compression circuit maps |N;k⟩ first to the
//! single-excitation state |C⟩ₖ (qubit k set, all others zero) and then to
//! the binary state |B⟩ₖ (basis index k). This module builds all three
//! families plus product states of identical qubits.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::statevec::{MAX_QUBITS, StateVector};

/// Exact binomial coefficient. Supports every (n, k) with n ≤ 64, far above
/// the simulator's qubit cap, without overflow.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub fn sqrt_binomial(n: usize, k: usize) -> f64 {
    (binomial(n, k) as f64).sqrt()
}

/// Amplitudes (α, β) of one qubit, unit-norm within 1e-12.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitParams {
    alpha: Complex64,
    beta: Complex64,
}

impl QubitParams {
    pub const NORM_TOLERANCE: f64 = 1e-12;

    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let deviation = (alpha.norm_sqr() + beta.norm_sqr() - 1.0).abs();
        if deviation > Self::NORM_TOLERANCE {
            return Err(Error::NotNormalized(deviation));
        }
        Ok(QubitParams { alpha, beta })
    }

    /// cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩.
    pub fn from_bloch(theta: f64, phi: f64) -> Self {
        QubitParams {
            alpha: Complex64::new((theta / 2.0).cos(), 0.0),
            beta: Complex64::from_polar((theta / 2.0).sin(), phi),
        }
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn as_state(&self) -> StateVector {
        StateVector::from_amplitudes_unchecked(1, vec![self.alpha, self.beta])
    }
}

/// |ψ⟩^⊗N for identical qubit parameters.
pub fn product_state(params: &QubitParams, n: usize) -> Result<StateVector> {
    check_n(n)?;
    let mut alpha_pow = vec![Complex64::ONE; n + 1];
    let mut beta_pow = vec![Complex64::ONE; n + 1];
    for i in 1..=n {
        alpha_pow[i] = alpha_pow[i - 1] * params.alpha;
        beta_pow[i] = beta_pow[i - 1] * params.beta;
    }
    let amps = (0..1usize << n)
        .map(|i| {
            let w = i.count_ones() as usize;
            alpha_pow[n - w] * beta_pow[w]
        })
        .collect();
    Ok(StateVector::from_amplitudes_unchecked(n, amps))
}

/// Dicke state |N;k⟩: amplitude C(N,k)^{-1/2} on every index with k bits set.
pub fn dicke_state(n: usize, k: usize) -> Result<StateVector> {
    check_n(n)?;
    check_k(n, k)?;
    let amp = Complex64::new(1.0 / sqrt_binomial(n, k), 0.0);
    let mut amps = vec![Complex64::ZERO; 1usize << n];
    for (i, slot) in amps.iter_mut().enumerate() {
        if i.count_ones() as usize == k {
            *slot = amp;
        }
    }
    Ok(StateVector::from_amplitudes_unchecked(n, amps))
}

/// |C⟩ₖ: the single excitation sitting on qubit k (|0…0⟩ for k = 0).
pub fn computational_state(n: usize, k: usize) -> Result<StateVector> {
    check_n(n)?;
    check_k(n, k)?;
    let index = if k == 0 { 0 } else { 1usize << (k - 1) };
    StateVector::basis_state(n, index)
}

/// |B⟩ₖ: the basis state whose index is k itself.
pub fn binary_state(n: usize, k: usize) -> Result<StateVector> {
    check_n(n)?;
    check_k(n, k)?;
    StateVector::basis_state(n, k)
}

/// Coefficients cₖ of |ψ⟩^⊗N over the Dicke basis: cₖ = √C(N,k) α^{N−k} βᵏ.
pub fn symmetric_amplitudes(params: &QubitParams, n: usize) -> Result<Vec<Complex64>> {
    check_n(n)?;
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut alpha_pow = vec![Complex64::ONE; n + 1];
    let mut beta_pow = vec![Complex64::ONE; n + 1];
    for i in 1..=n {
        alpha_pow[i] = alpha_pow[i - 1] * params.alpha;
        beta_pow[i] = beta_pow[i - 1] * params.beta;
    }
    for k in 0..=n {
        coeffs.push(alpha_pow[n - k] * beta_pow[k] * sqrt_binomial(n, k));
    }
    Ok(coeffs)
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::QubitCountOutOfRange(n));
    }
    Ok(())
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if k > n {
        return Err(Error::ExcitationOutOfRange { k, n });
    }
    Ok(())
}
