//! Synthesis of the compression circuit.
//!
//! Stage 1 rotates the symmetric subspace so that the Dicke state |N;k⟩ ends
//! up as the single excitation |C⟩ₖ: gate V handles the first two qubits,
//! then for each a = 3..N a block of two-level rotations U(a,b) walks the
//! excitation boundary across qubit a and W(a) folds the leftover branch
//! back onto qubit 1. Stage 2 rewrites |C⟩ₖ as the binary state |B⟩ₖ with
//! CNOTs plus one mixed-polarity multi-controlled X per k, so the whole
//! ensemble fits in the low ⌈log₂(N+1)⌉ qubits.
//!
//! All matrix entries are square roots of binomial ratios; the arithmetic
//! driving them (C(a−1,b) + C(a−1,b+1) = C(a,b+1)) is exact in integers, so
//! every gate is real orthogonal to machine precision.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gate::{Gate, GateKind};
use crate::statevec::{MAX_QUBITS, StateVector};
use crate::symmetric::sqrt_binomial;

/// Number of qubits the ensemble compresses into: ⌈log₂(N+1)⌉, which is the
/// bit length of N.
pub fn compressed_register_size(n: usize) -> usize {
    usize::BITS as usize - n.leading_zeros() as usize
}

fn real_matrix(entries: &[(usize, usize, f64)], dim: usize) -> Vec<Complex64> {
    let mut m = vec![Complex64::ZERO; dim * dim];
    for i in 0..dim {
        m[i * dim + i] = Complex64::ONE;
    }
    for &(r, c, v) in entries {
        m[r * dim + c] = Complex64::new(v, 0.0);
    }
    m
}

/// The two-qubit opener on qubits (1,2).
///
/// |00⟩ stays put, (|01⟩+|10⟩)/√2 → |10⟩, |11⟩ → |01⟩, and the singlet
/// (|01⟩−|10⟩)/√2 → |11⟩, parking the antisymmetric branch on a state the
/// later blocks never touch. Local index = q1 + 2·q2.
pub fn gate_v() -> Gate {
    let h = 1.0 / 2.0f64.sqrt();
    let matrix = real_matrix(
        &[
            (1, 1, h),
            (1, 2, h),
            (2, 2, 0.0),
            (2, 3, 1.0),
            (3, 1, -h),
            (3, 2, h),
            (3, 3, 0.0),
        ],
        4,
    );
    Gate::dense("V", &[1, 2], matrix, GateKind::V).expect("V is orthogonal")
}

/// The three-qubit rotation on (b, b+1, a) used while absorbing qubit a.
///
/// With α₁₀₁ = √C(a−1,b), α₀₁₀ = √C(a−1,b+1) and β₀₁₀ = √C(a,b+1) it maps
/// (α₁₀₁|10⟩|1⟩ + α₀₁₀|01⟩|0⟩)/β₀₁₀ → |01⟩|0⟩ and the orthogonal
/// combination to |10⟩|1⟩; every other basis state is untouched. Local index
/// = q_b + 2·q_{b+1} + 4·q_a, so the pair rotated is (2, 5).
pub fn gate_u(a: usize, b: usize) -> Result<Gate> {
    if !(3..=MAX_QUBITS).contains(&a) {
        return Err(Error::InvalidParameter(format!("gate U needs 3 <= a <= {MAX_QUBITS}, got {a}")));
    }
    if b < 1 || b > a - 2 {
        return Err(Error::InvalidParameter(format!(
            "gate U needs 1 <= b <= a-2, got a={a} b={b}"
        )));
    }
    let beta = sqrt_binomial(a, b + 1);
    let cos = sqrt_binomial(a - 1, b + 1) / beta;
    let sin = sqrt_binomial(a - 1, b) / beta;
    let matrix = real_matrix(
        &[
            (2, 2, cos),
            (2, 5, sin),
            (5, 2, -sin),
            (5, 5, cos),
        ],
        8,
    );
    Gate::dense(
        format!("U({a},{b})"),
        &[b, b + 1, a],
        matrix,
        GateKind::U { a, b },
    )
}

/// The three-qubit closer on (1, a−1, a) finishing block a.
///
/// It folds (|0⟩|01⟩ + √(a−1)|1⟩|00⟩)/√a onto |1⟩|00⟩, sends |0⟩|11⟩ to
/// |0⟩|01⟩, and parks the orthogonal combination on |0⟩|11⟩. Local index =
/// q1 + 2·q_{a−1} + 4·q_a, so the rotated pair is (1, 4) and (6, 4) swap.
pub fn gate_w(a: usize) -> Result<Gate> {
    if !(3..=MAX_QUBITS).contains(&a) {
        return Err(Error::InvalidParameter(format!("gate W needs 3 <= a <= {MAX_QUBITS}, got {a}")));
    }
    let beta = (a as f64).sqrt();
    let cos = ((a - 1) as f64).sqrt() / beta;
    let sin = 1.0 / beta;
    let matrix = real_matrix(
        &[
            (1, 1, cos),
            (1, 4, sin),
            (4, 4, 0.0),
            (4, 6, 1.0),
            (6, 1, -sin),
            (6, 4, cos),
            (6, 6, 0.0),
        ],
        8,
    );
    Gate::dense(format!("W({a})"), &[1, a - 1, a], matrix, GateKind::W { a })
}

/// Stage 1: V, then for each a = 3..N the rotations U(a,1)..U(a,a−2)
/// followed by W(a). Maps |N;k⟩ → |C⟩ₖ for every k. Empty for N = 1.
pub fn stage1(n: usize) -> Result<Vec<Gate>> {
    check_circuit_size(n)?;
    let mut gates = Vec::new();
    if n >= 2 {
        gates.push(gate_v());
    }
    for a in 3..=n {
        for b in 1..=a - 2 {
            gates.push(gate_u(a, b)?);
        }
        gates.push(gate_w(a)?);
    }
    Ok(gates)
}

/// Stage 2: for each k = 3..N, CNOTs from qubit k onto the qubits named by
/// the set bits of k, then one multi-controlled X (those qubits as positive
/// controls, every other qubit below k as a negative control) clearing
/// qubit k. Maps |C⟩ₖ → |B⟩ₖ; empty for N ≤ 2 where the two states already
/// coincide.
pub fn stage2(n: usize) -> Result<Vec<Gate>> {
    check_circuit_size(n)?;
    let mut gates = Vec::new();
    for k in 3..=n {
        gates.extend(stage2_block(k)?);
    }
    Ok(gates)
}

/// The gates rewriting |C⟩ₖ as |B⟩ₖ for a single k.
pub fn stage2_block(k: usize) -> Result<Vec<Gate>> {
    if !(3..=MAX_QUBITS).contains(&k) {
        return Err(Error::InvalidParameter(format!(
            "stage-2 block needs 3 <= k <= {MAX_QUBITS}, got {k}"
        )));
    }
    let set_bits: Vec<usize> = (1..=compressed_register_size(k))
        .filter(|j| k >> (j - 1) & 1 == 1)
        .collect();
    let mut gates = Vec::with_capacity(set_bits.len() + 1);
    for &j in &set_bits {
        gates.push(Gate::cnot(k, j)?);
    }
    let negative: Vec<usize> = (1..k).filter(|j| !set_bits.contains(j)).collect();
    gates.push(Gate::mixed_mcx(&set_bits, &negative, k)?);
    Ok(gates)
}

fn check_circuit_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::QubitCountOutOfRange(n));
    }
    Ok(())
}

/// The full compression circuit for N qubits, with the index of the first
/// stage-2 gate recorded so traces and reports can split the stages.
#[derive(Debug, Clone, PartialEq)]
pub struct CompressionCircuit {
    n_qubits: usize,
    compressed_qubits: usize,
    stage_boundary: usize,
    gates: Vec<Gate>,
}

pub fn synthesize(n: usize) -> Result<CompressionCircuit> {
    let mut gates = stage1(n)?;
    let stage_boundary = gates.len();
    gates.extend(stage2(n)?);
    Ok(CompressionCircuit {
        n_qubits: n,
        compressed_qubits: compressed_register_size(n),
        stage_boundary,
        gates,
    })
}

impl CompressionCircuit {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn compressed_qubits(&self) -> usize {
        self.compressed_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn stage_boundary(&self) -> usize {
        self.stage_boundary
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch {
                left: self.n_qubits,
                right: state.n_qubits(),
            });
        }
        let mut out = state.clone();
        for gate in &self.gates {
            out.apply_gate_in_place(gate)?;
        }
        Ok(out)
    }

    /// Gates reversed and conjugate-transposed; undoes `apply` exactly.
    pub fn inverse(&self) -> CompressionCircuit {
        CompressionCircuit {
            n_qubits: self.n_qubits,
            compressed_qubits: self.compressed_qubits,
            stage_boundary: self.gates.len() - self.stage_boundary,
            gates: self.gates.iter().rev().map(Gate::adjoint).collect(),
        }
    }

    pub fn max_unitarity_deviation(&self) -> f64 {
        self.gates
            .iter()
            .map(Gate::unitarity_deviation)
            .fold(0.0, f64::max)
    }

    /// One line per gate, plus a header naming the register split. The
    /// output parses back to an identical circuit.
    pub fn export(&self) -> Result<String> {
        let mut out = String::from("# compression circuit v1\n");
        out.push_str(&format!("n_qubits={}\n", self.n_qubits));
        out.push_str(&format!("compressed_qubits={}\n", self.compressed_qubits));
        out.push_str(&format!("stage_boundary={}\n", self.stage_boundary));
        for gate in &self.gates {
            let line = match &gate.kind {
                GateKind::V => "V targets=[1,2]".to_string(),
                GateKind::U { a, b } => format!(
                    "U targets=[{},{},{}] a={a} b={b}",
                    b,
                    b + 1,
                    a
                ),
                GateKind::W { a } => format!("W targets=[1,{},{}] a={a}", a - 1, a),
                GateKind::Cnot { control, target } => {
                    format!("CNOT control={control} target={target}")
                }
                GateKind::Mcx => {
                    let (positive, negative, target) =
                        gate.mcx_parts().expect("MCX kind implies MCX op");
                    format!(
                        "MCX pos=[{}] neg=[{}] target={target}",
                        join(positive),
                        join(negative)
                    )
                }
                GateKind::Custom | GateKind::Adjoint(_) => {
                    return Err(Error::NotSerializable(format!(
                        "gate '{}' has no serial form",
                        gate.label()
                    )));
                }
            };
            out.push_str(&line);
            out.push('\n');
        }
        Ok(out)
    }

    pub fn parse(text: &str) -> Result<CompressionCircuit> {
        let mut n_qubits = None;
        let mut compressed = None;
        let mut stage_boundary = None;
        let mut gates = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = idx + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: &str| Error::Parse {
                line: lineno,
                message: message.to_string(),
            };
            if let Some(rest) = line.strip_prefix("n_qubits=") {
                n_qubits = Some(rest.parse::<usize>().map_err(|_| err("bad n_qubits"))?);
            } else if let Some(rest) = line.strip_prefix("compressed_qubits=") {
                compressed = Some(rest.parse::<usize>().map_err(|_| err("bad compressed_qubits"))?);
            } else if let Some(rest) = line.strip_prefix("stage_boundary=") {
                stage_boundary = Some(rest.parse::<usize>().map_err(|_| err("bad stage_boundary"))?);
            } else if line == "V targets=[1,2]" {
                gates.push(gate_v());
            } else if line.starts_with("U ") {
                let a = field(line, "a=", lineno)?;
                let b = field(line, "b=", lineno)?;
                gates.push(gate_u(a, b)?);
            } else if line.starts_with("W ") {
                let a = field(line, "a=", lineno)?;
                gates.push(gate_w(a)?);
            } else if line.starts_with("CNOT ") {
                let control = field(line, "control=", lineno)?;
                let target = field(line, "target=", lineno)?;
                gates.push(Gate::cnot(control, target)?);
            } else if line.starts_with("MCX ") {
                let positive = list_field(line, "pos=[", lineno)?;
                let negative = list_field(line, "neg=[", lineno)?;
                let target = field(line, "target=", lineno)?;
                gates.push(Gate::mixed_mcx(&positive, &negative, target)?);
            } else {
                return Err(err("unrecognized record"));
            }
        }
        let n_qubits = n_qubits.ok_or(Error::Parse {
            line: 0,
            message: "missing n_qubits header".into(),
        })?;
        Ok(CompressionCircuit {
            n_qubits,
            compressed_qubits: compressed.unwrap_or_else(|| compressed_register_size(n_qubits)),
            stage_boundary: stage_boundary.unwrap_or(gates.len()),
            gates,
        })
    }
}

fn join(values: &[usize]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn field(line: &str, key: &str, lineno: usize) -> Result<usize> {
    let start = line.find(key).ok_or(Error::Parse {
        line: lineno,
        message: format!("missing {key}"),
    })?;
    let rest = &line[start + key.len()..];
    let end = rest.find(' ').unwrap_or(rest.len());
    rest[..end].parse().map_err(|_| Error::Parse {
        line: lineno,
        message: format!("bad value for {key}"),
    })
}

fn list_field(line: &str, key: &str, lineno: usize) -> Result<Vec<usize>> {
    let start = line.find(key).ok_or(Error::Parse {
        line: lineno,
        message: format!("missing {key}"),
    })?;
    let rest = &line[start + key.len()..];
    let end = rest.find(']').ok_or(Error::Parse {
        line: lineno,
        message: format!("unterminated {key}"),
    })?;
    let body = &rest[..end];
    if body.is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|part| {
            part.parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("bad value in {key}"),
            })
        })
        .collect()
}

/// Gate totals for the synthesized circuit plus the cost bounds the
/// construction is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GateCountReport {
    pub n_qubits: usize,
    /// Stage-1 rotations U and W: (N+1)(N−2)/2 for N ≥ 3.
    pub three_qubit_ops: usize,
    /// Gate V plus the stage-2 CNOTs.
    pub two_qubit_ops: usize,
    /// Bound on stage-1 cost in CNOTs: each three-qubit op within 21,
    /// i.e. (21/2)(N² − N − 2) + 3.
    pub cnot_bound_stage1: usize,
    /// Bound on stage-2 cost in CNOTs: per k, popcount(k) CNOTs plus a
    /// ⌈log₂(k+1)⌉²-CNOT allowance for the multi-controlled X.
    pub stage2_cnot_bound: usize,
    /// One mixed-polarity multi-controlled X per k = 3..N.
    pub mcx_count: usize,
}

impl GateCountReport {
    /// The coarser N·⌈log₂(N+1)⌉² ceiling usually quoted for stage 2.
    pub fn stage2_asymptotic_bound(&self) -> usize {
        self.n_qubits * compressed_register_size(self.n_qubits).pow(2)
    }
}

pub fn gate_count_report(n: usize) -> Result<GateCountReport> {
    check_circuit_size(n)?;
    let three_qubit_ops = if n >= 3 { (n + 1) * (n - 2) / 2 } else { 0 };
    let stage2_cnots: usize = (3..=n).map(|k| k.count_ones() as usize).sum();
    let two_qubit_ops = usize::from(n >= 2) + stage2_cnots;
    let cnot_bound_stage1 = if n >= 2 {
        21 * (n * n - n - 2) / 2 + 3
    } else {
        0
    };
    let stage2_cnot_bound = (3..=n)
        .map(|k| k.count_ones() as usize + compressed_register_size(k).pow(2))
        .sum();
    let mcx_count = n.saturating_sub(2);
    Ok(GateCountReport {
        n_qubits: n,
        three_qubit_ops,
        two_qubit_ops,
        cnot_bound_stage1,
        stage2_cnot_bound,
        mcx_count,
    })
}
