use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const EXPERIMENTS: [&str; 8] = [
    "fig1_jx_sweep",
    "fig2_control_sweep",
    "table2_derive",
    "table3_quality",
    "fig3_flux_derivatives",
    "fig4_mc_fidelity",
    "sec4_swap_array",
    "fig6_exponentiation",
];

/// Small settings so every experiment finishes quickly.
fn quick_params(experiment: &str) -> &'static str {
    match experiment {
        "fig1_jx_sweep" => "jx_mhz = [10.0, 25.0]\n",
        "fig2_control_sweep" => "ratios = [5.0]\nn_controls = [1, 2]\n",
        "table2_derive" | "table3_quality" => "rows = [1, 9]\n",
        "fig3_flux_derivatives" => "n_points = 3\n",
        "fig6_exponentiation" => "n_points = 4\n",
        _ => "",
    }
}

fn ciswap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ciswap")).args(args).output().expect("binary runs")
}

fn run_quick(experiment: &str, dir: &Path, seed: &str) -> Output {
    let config = dir.join("config.toml");
    fs::write(&config, format!("[params]\n{}", quick_params(experiment))).unwrap();
    let out = dir.join("out");
    ciswap(&[experiment, "--config", config.to_str().unwrap(), "--seed", seed, "--samples", "3", "--out", out.to_str().unwrap(), "--quiet"])
}

fn read_outputs(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(dir.join("out"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect();
    files.sort();
    files
}

#[test]
fn list_names_every_experiment() {
    let out = ciswap(&["--list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in EXPERIMENTS {
        assert!(text.contains(name), "{name} missing from --list");
    }
    assert_eq!(text.lines().filter(|l| !l.trim().is_empty()).count(), 8);
}

#[test]
fn every_experiment_writes_csv_and_summary_deterministically() {
    for name in EXPERIMENTS {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        let ra = run_quick(name, a.path(), "17");
        assert_eq!(ra.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&ra.stderr));
        assert!(ra.stdout.is_empty(), "--quiet printed output for {name}");
        assert_eq!(run_quick(name, b.path(), "17").status.code(), Some(0));
        let fa = read_outputs(a.path());
        assert!(fa.iter().any(|(f, _)| f.ends_with(".csv")), "{name} wrote no CSV");
        assert!(fa.iter().any(|(f, _)| f.ends_with(".json")), "{name} wrote no JSON");
        assert_eq!(fa, read_outputs(b.path()), "{name} output differs between identical runs");
        for (file, bytes) in &fa {
            let text = std::str::from_utf8(bytes).unwrap();
            if file.ends_with(".csv") {
                assert!(text.starts_with("# experiment: "), "{file} header");
                let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
                let mut reader = csv::ReaderBuilder::new().from_reader(body.as_bytes());
                let width = reader.headers().unwrap().len();
                for record in reader.records() {
                    assert_eq!(record.unwrap().len(), width, "{file} ragged row");
                }
            } else {
                let v: serde_json::Value = serde_json::from_str(text).unwrap();
                assert_eq!(v["experiment"], name);
                assert_eq!(v["seed"], 17);
            }
        }
    }
}

#[test]
fn seed_changes_monte_carlo_output() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert!(run_quick("fig4_mc_fidelity", a.path(), "1").status.success());
    assert!(run_quick("fig4_mc_fidelity", b.path(), "2").status.success());
    let csv = |d: &Path| fs::read(d.join("out/fig4_mc_fidelity.csv")).unwrap();
    assert_ne!(csv(a.path()), csv(b.path()));
}

#[test]
fn fidelities_use_six_decimals() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run_quick("sec4_swap_array", dir.path(), "0").status.success());
    let text = fs::read_to_string(dir.path().join("out/sec4_swap_array.csv")).unwrap();
    let row = text.lines().find(|l| l.starts_with("false,")).unwrap();
    let fidelity = row.split(',').nth(1).unwrap();
    assert_eq!(fidelity.split('.').nth(1).map(str::len), Some(6), "{row}");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(ciswap(&["no_such_experiment", "--quiet"]).status.code(), Some(2));
    assert_eq!(ciswap(&["fig1_jx_sweep", "--bogus-flag"]).status.code(), Some(2));
    assert_eq!(ciswap(&["fig1_jx_sweep", "--seed", "abc"]).status.code(), Some(2));
    assert_eq!(ciswap(&[]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "[params]\nnot_a_key = 1\n").unwrap();
    let out = dir.path().join("out");
    let r = ciswap(&["fig1_jx_sweep", "--config", bad.to_str().unwrap(), "--out", out.to_str().unwrap(), "--quiet"]);
    assert_eq!(r.status.code(), Some(2));
    fs::write(&bad, "seed = \"x\"\n").unwrap();
    let r = ciswap(&["fig1_jx_sweep", "--config", bad.to_str().unwrap(), "--quiet"]);
    assert_eq!(r.status.code(), Some(2));
    assert_eq!(ciswap(&["fig4_mc_fidelity", "--samples", "0", "--quiet"]).status.code(), Some(2));
}

#[test]
fn numerical_failures_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("c.toml");
    fs::write(&config, "[params]\ntheta = 0.2\nchi = 0.01\n").unwrap();
    let out = dir.path().join("out");
    let r = ciswap(&["fig4_mc_fidelity", "--config", config.to_str().unwrap(), "--samples", "2", "--out", out.to_str().unwrap(), "--quiet"]);
    assert_eq!(r.status.code(), Some(3), "{}", String::from_utf8_lossy(&r.stderr));
}

#[test]
fn library_entry_point_rejects_unknown_experiment() {
    let config = ciswap_cli::ExperimentConfig::new("nothing");
    let err = ciswap_cli::run(&config).unwrap_err();
    assert_eq!(err.exit_code(), 2);
    assert_eq!(ciswap_cli::list_experiments().len(), 8);
}
