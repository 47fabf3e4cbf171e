//! Quantum gates and their action on dense amplitude arrays.
//!
//! A gate is either an explicit matrix on a small set of target qubits or a
//! multi-controlled X described by its control polarities. Matrices are
//! applied by stride iteration over the cosets of the target bits; the
//! multi-controlled X is applied as a conditional amplitude swap, so its
//! arity is not limited by matrix size.
//!
//! Qubits are numbered from 1 and qubit `j` is bit `j - 1` of a basis index,
//! so qubit 1 is the least significant bit.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Maximum allowed value of `‖U†U − I‖_max` for a gate matrix.
pub const UNITARITY_TOLERANCE: f64 = 1e-12;

/// Largest arity for which an explicit matrix is stored.
pub const MAX_DENSE_ARITY: usize = 8;

/// How a gate was defined. Kept alongside the numeric data so circuits can be
/// serialized and inverted without guessing from matrix entries.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum GateKind {
    V,
    U { a: usize, b: usize },
    W { a: usize },
    Cnot { control: usize, target: usize },
    Mcx,
    Custom,
    Adjoint(Box<GateKind>),
}

#[derive(Debug, Clone, PartialEq)]
enum GateOp {
    Dense {
        /// Row-major `dim × dim` matrix, `dim = 2^arity`.
        matrix: Vec<Complex64>,
        /// Local basis indices whose row or column differs from the identity.
        /// The matrix maps the span of these onto itself, so application only
        /// needs to touch the corresponding amplitudes.
        active: Vec<usize>,
    },
    MixedMcx {
        positive: Vec<usize>,
        negative: Vec<usize>,
        target: usize,
    },
}

/// A unitary gate on a fixed list of target qubits (1-based, distinct).
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    label: String,
    targets: Vec<usize>,
    op: GateOp,
    pub(crate) kind: GateKind,
}

impl Gate {
    /// Builds a gate from an explicit row-major matrix on `targets`.
    ///
    /// The matrix must be `2^arity × 2^arity` and unitary within
    /// [`UNITARITY_TOLERANCE`].
    pub fn from_matrix(
        label: impl Into<String>,
        targets: &[usize],
        matrix: Vec<Complex64>,
    ) -> Result<Self> {
        Self::dense(label, targets, matrix, GateKind::Custom)
    }

    pub(crate) fn dense(
        label: impl Into<String>,
        targets: &[usize],
        matrix: Vec<Complex64>,
        kind: GateKind,
    ) -> Result<Self> {
        validate_targets(targets)?;
        let arity = targets.len();
        if arity > MAX_DENSE_ARITY {
            return Err(Error::InvalidParameter(format!(
                "dense gate arity {arity} exceeds {MAX_DENSE_ARITY}"
            )));
        }
        let dim = 1usize << arity;
        if matrix.len() != dim * dim {
            return Err(Error::MatrixShape {
                len: matrix.len(),
                expected: dim * dim,
                arity,
            });
        }
        let deviation = dense_unitarity_deviation(&matrix, dim);
        if deviation > UNITARITY_TOLERANCE {
            return Err(Error::NotUnitary { deviation });
        }
        let active = active_indices(&matrix, dim);
        Ok(Gate {
            label: label.into(),
            targets: targets.to_vec(),
            op: GateOp::Dense { matrix, active },
            kind,
        })
    }

    /// Multi-controlled X: flips `target` when every qubit in `positive` is 1
    /// and every qubit in `negative` is 0.
    pub fn mixed_mcx(positive: &[usize], negative: &[usize], target: usize) -> Result<Self> {
        let mut targets: Vec<usize> = positive.to_vec();
        targets.extend_from_slice(negative);
        targets.push(target);
        validate_targets(&targets)?;
        Ok(Gate {
            label: format!(
                "MCX(+{:?} -{:?} > {target})",
                positive, negative
            ),
            targets,
            op: GateOp::MixedMcx {
                positive: positive.to_vec(),
                negative: negative.to_vec(),
                target,
            },
            kind: GateKind::Mcx,
        })
    }

    /// Controlled NOT with a single positive control.
    pub fn cnot(control: usize, target: usize) -> Result<Self> {
        let mut gate = Self::mixed_mcx(&[control], &[], target)?;
        gate.label = format!("CNOT({control} > {target})");
        gate.kind = GateKind::Cnot { control, target };
        Ok(gate)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn arity(&self) -> usize {
        self.targets.len()
    }

    /// The stored matrix, if this gate is matrix-backed.
    pub fn dense_matrix(&self) -> Option<&[Complex64]> {
        match &self.op {
            GateOp::Dense { matrix, .. } => Some(matrix),
            GateOp::MixedMcx { .. } => None,
        }
    }

    /// Control polarities of a multi-controlled X: (positive, negative,
    /// target). `None` for matrix-backed gates.
    pub fn mcx_parts(&self) -> Option<(&[usize], &[usize], usize)> {
        match &self.op {
            GateOp::MixedMcx {
                positive,
                negative,
                target,
            } => Some((positive, negative, *target)),
            GateOp::Dense { .. } => None,
        }
    }

    /// Explicit matrix over the gate's local basis, materializing the
    /// permutation of a multi-controlled X on demand.
    pub fn materialized_matrix(&self) -> Result<Vec<Complex64>> {
        match &self.op {
            GateOp::Dense { matrix, .. } => Ok(matrix.clone()),
            GateOp::MixedMcx {
                positive, negative, ..
            } => {
                let arity = self.arity();
                if arity > MAX_DENSE_ARITY {
                    return Err(Error::InvalidParameter(format!(
                        "cannot materialize arity {arity} gate"
                    )));
                }
                let dim = 1usize << arity;
                let n_pos = positive.len();
                let n_neg = negative.len();
                let target_bit = 1usize << (n_pos + n_neg);
                let pos_mask = (1usize << n_pos) - 1;
                let neg_mask = ((1usize << n_neg) - 1) << n_pos;
                let mut matrix = vec![Complex64::ZERO; dim * dim];
                for col in 0..dim {
                    let row = if col & pos_mask == pos_mask && col & neg_mask == 0 {
                        col ^ target_bit
                    } else {
                        col
                    };
                    matrix[row * dim + col] = Complex64::ONE;
                }
                Ok(matrix)
            }
        }
    }

    /// The inverse gate: conjugate transpose of the matrix, or the gate
    /// itself for a multi-controlled X (it is an involution).
    pub fn adjoint(&self) -> Gate {
        match &self.op {
            GateOp::Dense { matrix, active } => {
                let dim = 1usize << self.arity();
                let mut adj = vec![Complex64::ZERO; dim * dim];
                for r in 0..dim {
                    for c in 0..dim {
                        adj[r * dim + c] = matrix[c * dim + r].conj();
                    }
                }
                let label = match self.label.strip_suffix('\u{2020}') {
                    Some(base) => base.to_string(),
                    None => format!("{}\u{2020}", self.label),
                };
                let kind = match &self.kind {
                    GateKind::Adjoint(inner) => (**inner).clone(),
                    other => GateKind::Adjoint(Box::new(other.clone())),
                };
                Gate {
                    label,
                    targets: self.targets.clone(),
                    op: GateOp::Dense {
                        matrix: adj,
                        active: active.clone(),
                    },
                    kind,
                }
            }
            GateOp::MixedMcx { .. } => self.clone(),
        }
    }

    /// `‖U†U − I‖_max`. Zero for a multi-controlled X, which permutes basis
    /// states exactly.
    pub fn unitarity_deviation(&self) -> f64 {
        match &self.op {
            GateOp::Dense { matrix, .. } => {
                dense_unitarity_deviation(matrix, 1usize << self.arity())
            }
            GateOp::MixedMcx { .. } => 0.0,
        }
    }

    /// Applies the gate in place to an amplitude array over `n_qubits`.
    pub(crate) fn apply_to(&self, amps: &mut [Complex64], n_qubits: usize) -> Result<()> {
        for &t in &self.targets {
            if t == 0 || t > n_qubits {
                return Err(Error::TargetOutOfRange {
                    target: t,
                    n_qubits,
                });
            }
        }
        debug_assert_eq!(amps.len(), 1usize << n_qubits);
        match &self.op {
            GateOp::Dense { matrix, active } => {
                apply_dense(amps, n_qubits, &self.targets, matrix, active);
            }
            GateOp::MixedMcx {
                positive,
                negative,
                target,
            } => {
                apply_mcx(amps, positive, negative, *target);
            }
        }
        Ok(())
    }
}

fn validate_targets(targets: &[usize]) -> Result<()> {
    if targets.is_empty() {
        return Err(Error::InvalidParameter("gate needs at least one target".into()));
    }
    for (i, &t) in targets.iter().enumerate() {
        if t == 0 {
            return Err(Error::TargetOutOfRange {
                target: t,
                n_qubits: 0,
            });
        }
        if targets[..i].contains(&t) {
            return Err(Error::DuplicateTarget(t));
        }
    }
    Ok(())
}

fn dense_unitarity_deviation(matrix: &[Complex64], dim: usize) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = Complex64::ZERO;
            for k in 0..dim {
                acc += matrix[k * dim + i].conj() * matrix[k * dim + j];
            }
            if i == j {
                acc -= Complex64::ONE;
            }
            worst = worst.max(acc.norm());
        }
    }
    worst
}

/// Local indices whose row or column is not exactly the identity's.
fn active_indices(matrix: &[Complex64], dim: usize) -> Vec<usize> {
    let ident = |r: usize, c: usize| {
        if r == c {
            Complex64::ONE
        } else {
            Complex64::ZERO
        }
    };
    (0..dim)
        .filter(|&i| {
            (0..dim).any(|j| matrix[i * dim + j] != ident(i, j) || matrix[j * dim + i] != ident(j, i))
        })
        .collect()
}

/// Inserts a zero bit at each position in `sorted_bits` (ascending), turning
/// a coset rank into the basis index whose target bits are all zero.
#[inline]
fn spread(coset: usize, sorted_bits: &[usize]) -> usize {
    let mut index = coset;
    for &p in sorted_bits {
        let low = index & ((1usize << p) - 1);
        index = ((index >> p) << (p + 1)) | low;
    }
    index
}

fn apply_dense(
    amps: &mut [Complex64],
    n_qubits: usize,
    targets: &[usize],
    matrix: &[Complex64],
    active: &[usize],
) {
    if active.is_empty() {
        return;
    }
    let arity = targets.len();
    let dim = 1usize << arity;
    let offset_of = |l: usize| -> usize {
        (0..arity)
            .filter(|&j| l >> j & 1 == 1)
            .map(|j| 1usize << (targets[j] - 1))
            .sum()
    };
    let mut sorted_bits: Vec<usize> = targets.iter().map(|t| t - 1).collect();
    sorted_bits.sort_unstable();
    let n_cosets = 1usize << (n_qubits - arity);

    let k = active.len();
    let offsets: Vec<usize> = active.iter().map(|&l| offset_of(l)).collect();
    let sub: Vec<Complex64> = active
        .iter()
        .flat_map(|&r| active.iter().map(move |&c| matrix[r * dim + c]))
        .collect();

    // The compression gates are real orthogonal; skipping the imaginary
    // halves of the products roughly doubles throughput in the hot loop.
    if sub.iter().all(|z| z.im == 0.0) {
        let sub_re: Vec<f64> = sub.iter().map(|z| z.re).collect();
        let mut scratch = vec![Complex64::ZERO; k];
        for coset in 0..n_cosets {
            let base = spread(coset, &sorted_bits);
            for (s, &off) in scratch.iter_mut().zip(&offsets) {
                *s = amps[base + off];
            }
            for r in 0..k {
                let mut acc = Complex64::ZERO;
                for c in 0..k {
                    let m = sub_re[r * k + c];
                    let x = scratch[c];
                    acc.re += m * x.re;
                    acc.im += m * x.im;
                }
                amps[base + offsets[r]] = acc;
            }
        }
    } else {
        let mut scratch = vec![Complex64::ZERO; k];
        for coset in 0..n_cosets {
            let base = spread(coset, &sorted_bits);
            for (s, &off) in scratch.iter_mut().zip(&offsets) {
                *s = amps[base + off];
            }
            for r in 0..k {
                let mut acc = Complex64::ZERO;
                for c in 0..k {
                    acc += sub[r * k + c] * scratch[c];
                }
                amps[base + offsets[r]] = acc;
            }
        }
    }
}

fn apply_mcx(amps: &mut [Complex64], positive: &[usize], negative: &[usize], target: usize) {
    let mask = |qs: &[usize]| qs.iter().map(|q| 1usize << (q - 1)).sum::<usize>();
    let pos = mask(positive);
    let neg = mask(negative);
    let t = 1usize << (target - 1);
    for i in 0..amps.len() {
        if i & t == 0 && i & pos == pos && i & neg == 0 {
            amps.swap(i, i | t);
        }
    }
}
