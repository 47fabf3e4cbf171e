//! Acceptance gate: one test per shipping criterion, each printing a single
//! PASS/FAIL line with its measured evidence. Tolerances are pinned here
//! and nowhere looser.

mod common;

use std::time::Instant;

use common::{assert_sparse_state, random_full_space_state};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symcomp::analysis::{
    CITED_COMPRESSED, CITED_PARALLEL, SweepConfig, compressed_ensemble_fidelity,
    direction_fidelity_table, parallel_spin_fidelity, sweep_ensemble_sizes,
};
use symcomp::circuit::{gate_count_report, gate_u, gate_v, gate_w, synthesize};
use symcomp::noise::{
    AxisPolicy, BlochAxis, Metric, Scenario, average_fidelity, sample_qubit,
};
use symcomp::symmetric::{binary_state, binomial, dicke_state, product_state};
use symcomp::trace::trace_compression;

fn report(id: usize, name: &str, ok: bool, detail: &str) {
    println!(
        "criterion {id:>2} {name}: {} ({detail})",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {id} {name}: {detail}");
}

#[test]
fn criterion_01_basis_map_exactness() {
    let start = Instant::now();
    let mut max_error = 0.0f64;
    let mut rows = 0usize;
    for n in 1..=12 {
        let circuit = synthesize(n).unwrap();
        for k in 0..=n {
            let image = circuit.apply(&dicke_state(n, k).unwrap()).unwrap();
            let error = image
                .max_elementwise_distance(&binary_state(n, k).unwrap())
                .unwrap();
            max_error = max_error.max(error);
            rows += 1;
        }
    }
    let elapsed = start.elapsed();
    report(
        1,
        "basis map exactness",
        max_error <= 1e-10 && elapsed.as_secs_f64() < 10.0,
        &format!("{rows} rows, max error {max_error:.2e}, {elapsed:.2?}"),
    );
}

#[test]
fn criterion_02_three_qubit_table() {
    let circuit = synthesize(3).unwrap();
    let stage1 = &circuit.gates()[..circuit.stage_boundary()];
    let rows: [(usize, usize); 4] = [(0, 0), (1, 1), (2, 2), (3, 4)];
    let mut max_error = 0.0f64;
    for (k, image_index) in rows {
        let mut state = dicke_state(3, k).unwrap();
        for gate in stage1 {
            state = state.apply_gate(gate).unwrap();
        }
        for (index, amp) in state.amplitudes().iter().enumerate() {
            let expected = if index == image_index { 1.0 } else { 0.0 };
            max_error = max_error.max((amp - expected).norm());
        }
    }
    report(
        2,
        "three-qubit table",
        max_error <= 1e-12,
        &format!("4 rows, max error {max_error:.2e}"),
    );
}

#[test]
fn criterion_03_five_qubit_golden_trace() {
    const TOL: f64 = 1e-10;
    let sqrt3 = 3.0f64.sqrt();
    let sqrt6 = 6.0f64.sqrt();
    let sqrt10 = 10.0f64.sqrt();
    let trace = trace_compression(5, 3).unwrap();
    let step = |label: &str| {
        trace
            .steps
            .iter()
            .find(|s| s.label == label)
            .unwrap_or_else(|| panic!("missing step {label}"))
    };

    // Opening split after the two-qubit gate, then the six golden rows.
    assert_sparse_state(
        &step("V").state,
        &[(28, 1.0), (25, 2.0f64.sqrt()), (21, 2.0f64.sqrt()),
          (13, 2.0f64.sqrt()), (6, 1.0), (10, 1.0), (18, 1.0)],
        10.0,
        TOL,
        "after V",
    );
    let rows: [(&str, &[(usize, f64)]); 6] = [
        ("W(3)", &[(25, sqrt3), (4, 1.0), (10, sqrt3), (18, sqrt3)]),
        ("U(4,1)", &[(4, 1.0), (10, sqrt3), (18, sqrt6)]),
        ("U(4,2)", &[(4, 2.0), (18, sqrt6)]),
        ("U(5,1)", &[(4, 2.0), (18, sqrt6)]),
        ("U(5,2)", &[(4, sqrt10)]),
        ("U(5,3)", &[(4, sqrt10)]),
    ];
    for (label, entries) in rows {
        assert_sparse_state(&step(label).state, entries, 10.0, TOL, label);
    }
    let opening = &step("V").rendered;
    report(
        3,
        "five-qubit golden trace",
        opening == "|00⟩|111⟩ + √6|10⟩|3;2⟩ + √3|01⟩|3;1⟩",
        &format!("6 rows pinned at {TOL:.0e}, opening {opening:?}"),
    );
}

#[test]
fn criterion_04_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut min_fidelity = 1.0f64;
    let mut max_distance = 0.0f64;
    for n in 2..=12 {
        let circuit = synthesize(n).unwrap();
        let inverse = circuit.inverse();
        let register = circuit.compressed_qubits();
        for _ in 0..100 {
            let input = product_state(&sample_qubit(&mut rng), n).unwrap();
            let (kept, _) = circuit
                .apply(&input)
                .unwrap()
                .extract_low_register(register)
                .unwrap();
            let restored = inverse
                .apply(&kept.append_zero_qubits(n - register).unwrap())
                .unwrap();
            min_fidelity = min_fidelity.min(input.fidelity_pure(&restored).unwrap());
        }
        for _ in 0..100 {
            let state = random_full_space_state(n, &mut rng);
            let round = inverse.apply(&circuit.apply(&state).unwrap()).unwrap();
            max_distance = max_distance.max(round.max_elementwise_distance(&state).unwrap());
        }
    }
    report(
        4,
        "round trip",
        min_fidelity >= 1.0 - 1e-10 && max_distance <= 1e-12,
        &format!(
            "100 product + 100 full-space states per N in 2..=12, min fidelity 1-{:.2e}, max elementwise {max_distance:.2e}",
            1.0 - min_fidelity
        ),
    );
}

#[test]
fn criterion_05_leakage() {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let mut max_leak = 0.0f64;
    for n in 1..=12 {
        let circuit = synthesize(n).unwrap();
        let register = circuit.compressed_qubits();
        for sample in 0..25 {
            let params = match sample {
                0 => symcomp::symmetric::QubitParams::from_bloch(0.0, 0.0),
                1 => symcomp::symmetric::QubitParams::from_bloch(std::f64::consts::PI, 0.0),
                _ => sample_qubit(&mut rng),
            };
            let compressed = circuit.apply(&product_state(&params, n).unwrap()).unwrap();
            let (_, leak) = compressed.extract_low_register(register).unwrap();
            max_leak = max_leak.max(leak);
        }
    }
    report(
        5,
        "leakage",
        max_leak <= 1e-10,
        &format!("25 symmetric inputs per N in 1..=12, max leak {max_leak:.2e}"),
    );
}

#[test]
fn criterion_06_gate_counts() {
    let mut ok = true;
    let mut detail = String::new();
    for n in 3..=16usize {
        let expected = (n + 1) * (n - 2) / 2;
        let got = gate_count_report(n).unwrap().three_qubit_ops;
        if got != expected {
            ok = false;
            detail = format!("N={n}: three-qubit ops {got}, expected {expected}");
            break;
        }
    }
    let bound = gate_count_report(5).unwrap().cnot_bound_stage1;
    if bound != 192 {
        ok = false;
        detail = format!("N=5 stage-1 gate bound {bound}, expected 192");
    }
    if ok {
        detail = "three-qubit ops match (N+1)(N-2)/2 for N in 3..=16; N=5 bound 192".into();
    }
    report(6, "gate counts", ok, &detail);
}

#[test]
fn criterion_07_direction_fidelity_table() {
    let mut worst = 0.0f64;
    for n in 1..=6usize {
        let delta = (parallel_spin_fidelity(n) - CITED_PARALLEL[n - 1]).abs();
        worst = worst.max(delta);
    }
    for n in 1..=5usize {
        let delta = (compressed_ensemble_fidelity(n) - CITED_COMPRESSED[n - 1]).abs();
        worst = worst.max(delta);
    }
    // The n=6 compressed cell (printed 0.992) contradicts the column's own
    // formula (64/65 ≈ 0.985) and is excluded; the table instead carries the
    // formula value, asserted here.
    let table = direction_fidelity_table();
    let n6 = (table[5].compressed - 64.0 / 65.0).abs();
    report(
        7,
        "direction fidelity table",
        worst <= 0.005 && n6 <= 1e-12,
        &format!(
            "cited cells within {worst:.4} (tolerance 0.005); n=6 compressed pinned to 64/65, printed 0.992 excluded"
        ),
    );
}

#[test]
fn criterion_08_global_fidelity_advantage() {
    let start = Instant::now();
    let config = SweepConfig {
        samples: 2000,
        rng_seed: 7,
        axis_policy: AxisPolicy::Averaged,
    };
    let records = sweep_ensemble_sizes(3..=16, Metric::Global, 0.1, config).unwrap();
    let uncompressed: Vec<_> = records
        .iter()
        .filter(|r| r.scenario == Scenario::Uncompressed)
        .collect();
    let compressed: Vec<_> = records
        .iter()
        .filter(|r| r.scenario == Scenario::Compressed)
        .collect();

    let mut ok = true;
    let mut detail = String::new();
    let mut min_margin = f64::INFINITY;
    for (u, c) in uncompressed.iter().zip(&compressed) {
        if u.n_qubits > 15 {
            continue;
        }
        let gap = c.mean_fidelity - u.mean_fidelity;
        let sigma = (u.std_error.powi(2) + c.std_error.powi(2)).sqrt();
        min_margin = min_margin.min(gap / sigma);
        if gap <= 3.0 * sigma {
            ok = false;
            detail = format!(
                "N={}: compressed {:.6} vs uncompressed {:.6}, gap {:.2e} <= 3σ {:.2e}",
                u.n_qubits,
                c.mean_fidelity,
                u.mean_fidelity,
                gap,
                3.0 * sigma
            );
        }
    }
    let at = |n: usize| {
        compressed
            .iter()
            .find(|r| r.n_qubits == n)
            .unwrap()
            .mean_fidelity
    };
    for peak in [3usize, 7, 15] {
        if at(peak) <= at(peak + 1) {
            ok = false;
            detail = format!(
                "expected local maximum at N={peak}: F({peak})={:.6} vs F({})={:.6}",
                at(peak),
                peak + 1,
                at(peak + 1)
            );
        }
    }
    let elapsed = start.elapsed();
    if elapsed.as_secs_f64() >= 300.0 {
        ok = false;
        detail = format!("runtime {elapsed:.1?} over the 5 min budget");
    }
    if ok {
        detail = format!(
            "N in 3..=15 compressed above uncompressed, weakest margin {min_margin:.1}σ; maxima at 3, 7, 15; {elapsed:.1?}"
        );
    }
    report(8, "global fidelity advantage", ok, &detail);
}

#[test]
fn criterion_09_single_qubit_noise_at_seven() {
    let samples = 2000;
    let mut ok = true;
    let mut detail = String::new();
    let mut z_margins = Vec::new();
    for phi in [0.05, 0.1, 0.2] {
        let policy = AxisPolicy::Fixed(BlochAxis::Z);
        let c = average_fidelity(7, Scenario::Compressed, Metric::SingleQubit, policy, phi, samples, 9).unwrap();
        let u = average_fidelity(7, Scenario::Uncompressed, Metric::SingleQubit, policy, phi, samples, 9).unwrap();
        let sigma = (u.std_error.powi(2) + c.std_error.powi(2)).sqrt();
        z_margins.push((c.mean_fidelity - u.mean_fidelity) / sigma.max(1e-300));
        if c.mean_fidelity < u.mean_fidelity - 3.0 * sigma {
            ok = false;
            detail = format!(
                "z axis φ={phi}: compressed {:.6} below uncompressed {:.6} by more than 3σ",
                c.mean_fidelity, u.mean_fidelity
            );
        }
    }
    let c = average_fidelity(7, Scenario::Compressed, Metric::SingleQubit, AxisPolicy::Averaged, 0.2, samples, 9).unwrap();
    let u = average_fidelity(7, Scenario::Uncompressed, Metric::SingleQubit, AxisPolicy::Averaged, 0.2, samples, 9).unwrap();
    let sigma = (u.std_error.powi(2) + c.std_error.powi(2)).sqrt();
    let averaged_margin = (u.mean_fidelity - c.mean_fidelity) / sigma;
    if c.mean_fidelity > u.mean_fidelity + 3.0 * sigma {
        ok = false;
        detail = format!(
            "averaged axes φ=0.2: compressed {:.6} above uncompressed {:.6} by more than 3σ",
            c.mean_fidelity, u.mean_fidelity
        );
    }
    if ok {
        detail = format!(
            "z-axis margins {:.1}σ/{:.1}σ/{:.1}σ at φ=0.05/0.1/0.2; averaged axes deficit {averaged_margin:.1}σ at φ=0.2",
            z_margins[0], z_margins[1], z_margins[2]
        );
    }
    report(9, "single-qubit noise at N=7", ok, &detail);
}

#[test]
fn criterion_10_unitarity_and_pascal() {
    let mut max_deviation = 0.0f64;
    for n in 1..=16 {
        max_deviation = max_deviation.max(synthesize(n).unwrap().max_unitarity_deviation());
    }
    let mut pascal_ok = true;
    for a in 3..=20u64 {
        for b in 1..=(a - 2) {
            let (a, b) = (a as usize, b as usize);
            if binomial(a - 1, b) + binomial(a - 1, b + 1) != binomial(a, b + 1) {
                pascal_ok = false;
            }
        }
    }
    report(
        10,
        "unitarity and exact shears",
        max_deviation <= 1e-12 && pascal_ok,
        &format!(
            "max gate deviation {max_deviation:.2e} for N in 1..=16; binomial addition exact for a in 3..=20"
        ),
    );
}

#[test]
fn criterion_11_bookkeeping_invariant() {
    // After each completed block a, every nonzero branch must read: a
    // single excitation at prefix position b (or none, b=0), a suffix with
    // k−b excitations, and amplitude √(C(a,b)/C(N,k)).
    let mut checked = 0usize;
    let mut worst = 0.0f64;
    for n in 1..=8usize {
        for k in 0..=n {
            let mut state = dicke_state(n, k).unwrap();
            if n >= 2 {
                state = state.apply_gate(&gate_v()).unwrap();
            }
            for a in 3..=n {
                for b in 1..=(a - 2) {
                    state = state.apply_gate(&gate_u(a, b).unwrap()).unwrap();
                }
                state = state.apply_gate(&gate_w(a).unwrap()).unwrap();

                let prefix_mask = (1usize << a) - 1;
                let denominator = binomial(n, k) as f64;
                for (index, amp) in state.amplitudes().iter().enumerate() {
                    if amp.norm() <= 1e-12 {
                        continue;
                    }
                    let prefix = index & prefix_mask;
                    let suffix = index >> a;
                    assert!(
                        prefix.count_ones() <= 1,
                        "N={n} k={k} a={a}: prefix {prefix:b} has several excitations"
                    );
                    let b = if prefix == 0 {
                        0
                    } else {
                        prefix.trailing_zeros() as usize + 1
                    };
                    assert_eq!(
                        b + suffix.count_ones() as usize,
                        k,
                        "N={n} k={k} a={a}: index {index} breaks the excitation ledger"
                    );
                    let law = (binomial(a, b) as f64 / denominator).sqrt();
                    let error = (amp.re - law).abs().max(amp.im.abs());
                    worst = worst.max(error);
                    assert!(
                        error <= 1e-12,
                        "N={n} k={k} a={a}: amplitude {amp} vs law {law}"
                    );
                    checked += 1;
                }
            }
        }
    }
    report(
        11,
        "bookkeeping invariant",
        checked > 0 && worst <= 1e-12,
        &format!("{checked} branch amplitudes across N in 1..=8, worst error {worst:.2e}"),
    );
}
