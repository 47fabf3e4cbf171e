//! Step-by-step traces of stage 1, rendered in the two-ket style
//! ⟨processed prefix | unprocessed suffix⟩.
//!
//! Amplitudes of a traced Dicke input are square roots of integers over
//! √C(N,k), so each term is printed as √m relative to that common
//! denominator (√4 stays √4, and a unit coefficient is left implicit). A
//! suffix holding a Dicke superposition is collapsed to |m;j⟩ notation;
//! one-dimensional suffixes are written as explicit kets.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::circuit::{stage1, stage2};
use crate::error::{Error, Result};
use crate::statevec::StateVector;
use crate::symmetric::{binomial, dicke_state};

/// Largest ensemble a trace will print.
pub const MAX_TRACE_QUBITS: usize = 10;

#[derive(Debug, Clone)]
pub struct TraceStep {
    /// Gate just applied ("input" for the starting state).
    pub label: String,
    /// Qubits counted as processed when splitting the display.
    pub prefix_len: usize,
    pub state: StateVector,
    pub rendered: String,
}

#[derive(Debug, Clone)]
pub struct CompressionTrace {
    pub n_qubits: usize,
    pub excitations: usize,
    /// All printed coefficients are √m divided by √ of this value: C(N,k).
    pub weight_denominator: u128,
    /// Input state, then one step per stage-1 gate.
    pub steps: Vec<TraceStep>,
    /// Result of the full circuit including stage 2.
    pub compressed: TraceStep,
}

/// Runs the compression of |N;k⟩ gate by gate, recording every intermediate
/// state with its rendering.
pub fn trace_compression(n: usize, k: usize) -> Result<CompressionTrace> {
    if n > MAX_TRACE_QUBITS {
        return Err(Error::InvalidParameter(format!(
            "traces are limited to {MAX_TRACE_QUBITS} qubits, got {n}"
        )));
    }
    let denom = binomial(n, k);
    let mut state = dicke_state(n, k)?;
    let mut steps = vec![TraceStep {
        label: "input".to_string(),
        prefix_len: 0,
        rendered: render_state(&state, 0, denom),
        state: state.clone(),
    }];
    for gate in stage1(n)? {
        state = state.apply_gate(&gate)?;
        let prefix_len = prefix_len_after(gate.label(), n);
        steps.push(TraceStep {
            label: gate.label().to_string(),
            prefix_len,
            rendered: render_state(&state, prefix_len, denom),
            state: state.clone(),
        });
    }
    for gate in stage2(n)? {
        state = state.apply_gate(&gate)?;
    }
    let compressed = TraceStep {
        label: "stage 2".to_string(),
        prefix_len: n,
        rendered: render_state(&state, n, denom),
        state,
    };
    Ok(CompressionTrace {
        n_qubits: n,
        excitations: k,
        weight_denominator: denom,
        steps,
        compressed,
    })
}

/// After V two qubits are processed; after any gate of block a, a qubits.
fn prefix_len_after(label: &str, n: usize) -> usize {
    if label == "V" {
        return 2.min(n);
    }
    label
        .trim_start_matches(|c: char| c.is_ascii_alphabetic())
        .trim_start_matches('(')
        .split([',', ')'])
        .next()
        .and_then(|s| s.parse().ok())
        .unwrap_or(n)
}

/// Renders the nonzero amplitudes of `state` grouped by the first
/// `prefix_len` qubits, with coefficients scaled by √denom.
pub fn render_state(state: &StateVector, prefix_len: usize, denom: u128) -> String {
    const SUPPORT_EPS: f64 = 1e-12;
    let n = state.n_qubits();
    let p = prefix_len.min(n);
    let suffix_len = n - p;
    let prefix_mask = (1usize << p) - 1;

    let mut groups: BTreeMap<usize, Vec<(usize, Complex64)>> = BTreeMap::new();
    for (i, amp) in state.amplitudes().iter().enumerate() {
        if amp.norm() > SUPPORT_EPS {
            groups
                .entry(i & prefix_mask)
                .or_default()
                .push((i >> p, *amp));
        }
    }

    let prefix_ket = |prefix: usize| {
        if p == 0 {
            String::new()
        } else {
            ket(prefix, p)
        }
    };
    let mut terms = Vec::new();
    for (prefix, entries) in &groups {
        match dicke_suffix(entries, suffix_len) {
            Some((j, coeff)) => {
                terms.push(format!(
                    "{}{}{}",
                    sqrt_coefficient(coeff, denom),
                    prefix_ket(*prefix),
                    suffix_ket(suffix_len, j)
                ));
            }
            None => {
                // Not a Dicke-shaped suffix: print every basis state.
                for &(suffix, amp) in entries {
                    terms.push(format!(
                        "{}{}{}",
                        sqrt_coefficient(amp, denom),
                        prefix_ket(*prefix),
                        if suffix_len > 0 {
                            ket(suffix, suffix_len)
                        } else {
                            String::new()
                        }
                    ));
                }
            }
        }
    }
    join_signed(&terms)
}

/// If the entries form c·|suffix_len; j⟩, returns (j, c).
fn dicke_suffix(entries: &[(usize, Complex64)], suffix_len: usize) -> Option<(usize, Complex64)> {
    const EQUAL_EPS: f64 = 1e-9;
    if suffix_len == 0 {
        let &(index, amp) = entries.first()?;
        return if index == 0 && entries.len() == 1 {
            Some((0, amp))
        } else {
            None
        };
    }
    let j = entries[0].0.count_ones() as usize;
    if entries.len() as u128 != binomial(suffix_len, j) {
        return None;
    }
    let reference = entries[0].1;
    for &(index, amp) in entries {
        if index.count_ones() as usize != j || (amp - reference).norm() > EQUAL_EPS {
            return None;
        }
    }
    let coeff = reference * (binomial(suffix_len, j) as f64).sqrt();
    Some((j, coeff))
}

/// |bits⟩ with qubit 1 written first.
fn ket(index: usize, len: usize) -> String {
    let bits: String = (0..len)
        .map(|b| if index >> b & 1 == 1 { '1' } else { '0' })
        .collect();
    format!("|{bits}\u{27e9}")
}

fn suffix_ket(suffix_len: usize, j: usize) -> String {
    if suffix_len == 0 {
        return String::new();
    }
    if binomial(suffix_len, j) == 1 {
        // All zeros or all ones: a plain computational ket.
        let index = if j == 0 { 0 } else { (1usize << suffix_len) - 1 };
        ket(index, suffix_len)
    } else {
        format!("|{suffix_len};{j}\u{27e9}")
    }
}

/// Coefficient as √m in units of 1/√denom, falling back to decimals when the
/// squared magnitude is not close to an integer multiple.
fn sqrt_coefficient(coeff: Complex64, denom: u128) -> String {
    const INTEGER_EPS: f64 = 1e-9;
    let m = coeff.norm_sqr() * denom as f64;
    let rounded = m.round();
    if (m - rounded).abs() <= INTEGER_EPS && coeff.im.abs() <= INTEGER_EPS {
        let sign = if coeff.re < 0.0 { "-" } else { "" };
        if rounded == 1.0 {
            return sign.to_string();
        }
        return format!("{sign}\u{221a}{}", rounded as u128);
    }
    format!("{:.6}", coeff)
}

/// Joins terms with " + ", folding a leading minus into " − ".
fn join_signed(terms: &[String]) -> String {
    let mut out = String::new();
    for (i, term) in terms.iter().enumerate() {
        if i == 0 {
            out.push_str(term);
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push_str(" \u{2212} ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(term);
        }
    }
    out
}
