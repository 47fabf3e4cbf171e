//! Exact compression of identically prepared qubit ensembles.
//!
//! N copies of an unknown single-qubit state only ever explore the
//! permutation-symmetric subspace, which has dimension N+1. This crate
//! synthesizes the explicit circuit that rotates that subspace onto the
//! first ⌈log₂(N+1)⌉ qubits, so the remaining N−⌈log₂(N+1)⌉ qubits come out
//! in |0⟩ and can be discarded. Everything is simulated on a dense state
//! vector, which keeps the arithmetic exact up to f64 rounding and makes
//! every intermediate state inspectable.
//!
//! Bit convention, used everywhere: qubits are numbered 1..=N and qubit j
//! owns bit j−1 of a basis index, so qubit 1 is the least significant bit.
//! A ket is written qubit 1 first: index 6 on three qubits is |011⟩.
//!
//! Module map:
//! - [`gate`]: unitaries on a few targets, applied to cosets of the full
//!   index space so small gates never touch the whole vector.
//! - [`statevec`]: dense states, inner products, single-qubit reductions,
//!   register extraction and padding.
//! - [`symmetric`]: binomials, product states, Dicke states and the
//!   computational/binary bases the circuit maps between.
//! - [`circuit`]: the two-stage compression circuit, its inverse, gate
//!   counts, and a plain-text export format.
//! - [`trace`]: snapshots of every synthesis step rendered in the
//!   prefix ⊗ Dicke-suffix form that makes the construction legible.
//! - [`noise`]: rotation noise on stored qubits and Monte Carlo fidelity
//!   averages comparing compressed against uncompressed storage.
//! - [`analysis`]: closed-form averages, direction-transmission fidelity
//!   tables, parameter sweeps and CSV rendering.
//! - [`verify`]: systematic self-checks of a synthesized circuit (basis
//!   mapping, round trips, leakage, unitarity) with a printable report.

pub mod analysis;
pub mod circuit;
pub mod error;
pub mod gate;
pub mod noise;
pub mod statevec;
pub mod symmetric;
pub mod trace;
pub mod verify;

pub use error::{Error, Result};
pub use gate::Gate;
pub use statevec::StateVector;
