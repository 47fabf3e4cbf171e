use std::path::PathBuf;
use std::process::{Command, Output};

fn symcomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symcomp"))
        .args(args)
        .env_remove("SYMCOMP_OUT_DIR")
        .output()
        .expect("binary should run")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout should be UTF-8")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr should be UTF-8")
}

/// Fresh scratch directory, removed on drop.
struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!(
            "symcomp-cli-{tag}-{}",
            std::process::id()
        ));
        std::fs::create_dir_all(&dir).expect("scratch dir should be creatable");
        Scratch(dir)
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

#[test]
fn verify_reports_every_circuit_and_passes() {
    let output = symcomp(&["verify", "--n-max", "6", "--seed", "3"]);
    assert!(output.status.success());
    let text = stdout_of(&output);
    assert!(text.contains("27 basis rows checked across 6 circuits"));
    assert!(text.trim_end().ends_with("PASS"));
    assert!(text.contains("N=6"));
    assert!(stderr_of(&output).contains("seed: 3"));
}

#[test]
fn verify_emits_machine_readable_json() {
    let output = symcomp(&["verify", "--n-max", "2", "--seed", "1", "--json"]);
    assert!(output.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&stdout_of(&output)).expect("valid JSON");
    assert_eq!(report["max_qubits"], 2);
    assert_eq!(report["rng_seed"], 1);
    assert_eq!(report["checks"].as_array().map(Vec::len), Some(2));
}

#[test]
fn trace_prints_the_five_qubit_evolution() {
    let output = symcomp(&["trace", "5", "3"]);
    assert!(output.status.success());
    let text = stdout_of(&output);
    assert!(text.contains("coefficients /√10"));
    assert!(text.contains("|00⟩|111⟩ + √6|10⟩|3;2⟩ + √3|01⟩|3;1⟩"));
    assert!(text.contains("√6|0100⟩|1⟩ + √4|0010⟩|0⟩"));
    assert!(text.contains("√10|00100⟩"));
    assert!(text.contains("√10|11000⟩"));
}

#[test]
fn trace_rejects_sizes_past_the_readable_limit() {
    let output = symcomp(&["trace", "11", "0"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn gatecount_shows_totals_and_the_quadratic_ratio() {
    let output = symcomp(&["gatecount", "5"]);
    assert!(output.status.success());
    let text = stdout_of(&output);
    assert!(text.contains("three-qubit rotations  9"));
    assert!(text.contains("192"));
    assert!(text.contains("7.68 per N²"));

    let small = stdout_of(&symcomp(&["gatecount", "2"]));
    assert!(small.contains("three-qubit rotations  0"));
    assert!(small.contains("two-qubit gates        1"));
}

#[test]
fn directions_table_carries_the_known_cells() {
    let output = symcomp(&["directions"]);
    assert!(output.status.success());
    let text = stdout_of(&output);
    assert!(text.contains("0.889"));
    assert!(text.contains("0.875"));
    assert!(text.contains("0.789"));
    assert!(text.contains("0.985"));
    assert!(text.contains("0.992"));
}

#[test]
fn global_noise_sweeps_are_reproducible_files() {
    let scratch = Scratch::new("global");
    let args = |name: &str| {
        [
            "noise", "global", "--n", "3..4", "--phi", "0.1", "--samples", "20",
            "--seed", "5",
        ]
        .into_iter()
        .map(String::from)
        .chain(["--out".into(), scratch.0.join(name).display().to_string()])
        .collect::<Vec<_>>()
    };
    for name in ["a.csv", "b.csv"] {
        let output = Command::new(env!("CARGO_BIN_EXE_symcomp"))
            .args(args(name))
            .env_remove("SYMCOMP_OUT_DIR")
            .output()
            .expect("binary should run");
        assert!(output.status.success());
    }
    let first = std::fs::read_to_string(scratch.0.join("a.csv")).unwrap();
    let second = std::fs::read_to_string(scratch.0.join("b.csv")).unwrap();
    assert_eq!(first, second);
    let lines: Vec<&str> = first.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(
        lines[0],
        "scenario,metric,n_qubits,phi,axis,samples,rng_seed,mean_fidelity,std_error"
    );
    assert!(lines[1].starts_with("uncompressed,global,3,0.1,averaged,20,5,"));
    assert!(lines[2].starts_with("compressed,global,3,0.1,averaged,20,5,"));
    assert!(lines[4].starts_with("compressed,global,4,"));
}

#[test]
fn single_qubit_sweep_hits_exact_fidelity_at_zero_angle() {
    let output = symcomp(&[
        "noise", "single", "--n", "3", "--axes", "z", "--phi", "0.0",
        "--samples", "10", "--seed", "2",
    ]);
    assert!(output.status.success());
    let text = stdout_of(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    for line in &lines[1..] {
        assert!(line.contains(",z,"));
        assert!(line.contains(",1.0000000000000000e0,"));
    }
}

#[test]
fn omitted_seeds_are_generated_and_echoed() {
    let output = symcomp(&["noise", "global", "--n", "3", "--samples", "2"]);
    assert!(output.status.success());
    let err = stderr_of(&output);
    let seed_line = err
        .lines()
        .find(|line| line.starts_with("seed: "))
        .expect("seed echoed");
    seed_line["seed: ".len()..]
        .parse::<u64>()
        .expect("echoed seed is a number");
}

#[test]
fn oversized_requests_trip_the_resource_guard() {
    let guarded = symcomp(&["noise", "global", "--n", "3..17", "--samples", "2"]);
    assert_eq!(guarded.status.code(), Some(3));

    let export_guarded = symcomp(&["export", "17"]);
    assert_eq!(export_guarded.status.code(), Some(3));

    let allowed = symcomp(&["export", "17", "--allow-large"]);
    assert!(allowed.status.success());
    assert!(stdout_of(&allowed).contains("n_qubits=17"));

    let hard_cap = symcomp(&["export", "25", "--allow-large"]);
    assert_eq!(hard_cap.status.code(), Some(3));
}

#[test]
fn relative_out_paths_land_in_the_env_directory() {
    let scratch = Scratch::new("outdir");
    let output = Command::new(env!("CARGO_BIN_EXE_symcomp"))
        .args(["export", "3", "--out", "circuit.txt"])
        .env("SYMCOMP_OUT_DIR", &scratch.0)
        .output()
        .expect("binary should run");
    assert!(output.status.success());
    let written = std::fs::read_to_string(scratch.0.join("circuit.txt")).unwrap();
    assert!(written.starts_with("# compression circuit v1"));
}

#[test]
fn unwritable_out_paths_exit_with_the_io_code() {
    let output = symcomp(&["export", "4", "--out", "/nonexistent/dir/x.txt"]);
    assert_eq!(output.status.code(), Some(4));
    assert!(stderr_of(&output).contains("cannot write"));
}

#[test]
fn exported_circuits_parse_back_into_the_library() {
    let output = symcomp(&["export", "6"]);
    assert!(output.status.success());
    let circuit = symcomp::circuit::CompressionCircuit::parse(&stdout_of(&output))
        .expect("export should parse");
    assert_eq!(circuit.n_qubits(), 6);
    assert_eq!(circuit.compressed_qubits(), 3);
}

#[test]
fn bad_range_syntax_is_a_validation_error() {
    let output = symcomp(&["noise", "global", "--n", "3..x", "--samples", "2"]);
    assert_eq!(output.status.code(), Some(2));
    let reversed = symcomp(&["noise", "global", "--n", "9..3", "--samples", "2"]);
    assert_eq!(reversed.status.code(), Some(2));
}
