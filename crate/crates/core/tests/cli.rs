//! End-to-end checks of the installed binary: exit codes, config resolution,
//! echo headers, and file formats. The in-process dispatcher tests live next
//! to the CLI module; these spawn the real executable.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_statengine"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary spawns")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 output")
}

fn tmp(name: &str) -> PathBuf {
    std::env::temp_dir().join(name)
}

#[test]
fn help_and_version_exit_zero() {
    for args in [&["--help"][..], &["--version"][..], &["cycle", "--help"][..]] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
    }
    assert!(stdout(&run(&["--help"])).contains("cycle"));
}

#[test]
fn usage_and_config_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["frobnicate"],
        &["cycle", "--no-such-flag"],
        &["cycle", "--variant", "maxwell-demon"],
        &["cycle", "--variant", "a", "--order", "none"],
        &["cycle", "--config", "/definitely/not/here.toml"],
        &["sweep", "--axis", "hot-temp", "--min", "2", "--max", "1"],
        &["cycle", "--tc", "-0.5"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
        assert!(!stderr(&out).is_empty(), "{args:?} should explain itself");
    }
}

#[test]
fn solver_failures_exit_three() {
    // switching into the Bose gas below its entropy floor cannot be satisfied
    let out = run(&[
        "cycle", "--variant", "a", "--order", "tg-bg", "--tc", "0.001", "--th", "0.5",
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    assert!(stderr(&out).contains("stroke"), "error names the stroke: {}", stderr(&out));
}

#[test]
fn validate_passes_on_a_healthy_build() {
    let out = run(&["validate"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 13);
    assert!(!text.contains("FAIL"));
    assert!(text.contains("0 failed"));
}

#[test]
fn cycle_echo_carries_the_resolved_config() {
    let out = run(&["cycle", "--variant", "t", "--order", "tg-bg", "--tc", "0.1", "--th", "0.8"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    for needle in [
        "# command = cycle",
        "# variant = T",
        "# order = tg-bg",
        "# spectrum = box",
        "# n = 500",
        "# ratio2 = 5.00000000000e-1",
        "# tc = 1.00000000000e-1",
        "# energy_unit = E_F(b)",
        "# figures",
        "# strokes",
        "w_out[E_F]",
        "StatIsotherm",
    ] {
        assert!(text.contains(needle), "missing {needle:?} in:\n{text}");
    }
    // reruns must be byte-identical regardless of destination or threads
    assert!(!text.contains("# out"), "output path must not leak into the echo");
    assert!(!text.contains("# threads"));
}

#[test]
fn cycle_json_document_is_well_formed() {
    let out = run(&["cycle", "--format", "json", "--th", "1.0"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["config"]["variant"], "A");
    assert_eq!(doc["config"]["n"], 500);
    assert!(doc["config"].get("out").is_none());
    assert!(doc["config"].get("threads").is_none());
    assert!(doc["figures"]["w_out"].is_number());
    assert_eq!(doc["figures"]["mode"], "Engine");
    assert_eq!(doc["strokes"].as_array().map(Vec::len), Some(4));
    // every stroke balances its own books in the emitted digits
    for stroke in doc["strokes"].as_array().unwrap() {
        let get = |k: &str| stroke[k].as_f64().unwrap();
        assert!((get("d_u") - get("work") - get("heat")).abs() < 1e-9);
    }
}

#[test]
fn file_config_resolves_and_flags_override_it() {
    let path = tmp("cli_base.toml");
    std::fs::write(
        &path,
        "[common]\nvariant = \"t\"\norder = \"tg-bg\"\nratio2 = 0.25\n\n[cycle]\ntc = 0.1\nth = 0.5\n",
    )
    .unwrap();
    let cfg = path.to_str().unwrap();

    let base = run(&["cycle", "--config", cfg]);
    assert_eq!(base.status.code(), Some(0), "{}", stderr(&base));
    let text = stdout(&base);
    assert!(text.contains("# variant = T"));
    assert!(text.contains("# ratio2 = 2.50000000000e-1"));
    assert!(text.contains("# th = 5.00000000000e-1"));

    let overridden = run(&["cycle", "--config", cfg, "--variant", "gv", "--th", "0.9"]);
    let text = stdout(&overridden);
    assert!(text.contains("# variant = GV"), "flag wins over file:\n{text}");
    assert!(text.contains("# th = 9.00000000000e-1"));
    assert!(text.contains("# ratio2 = 2.50000000000e-1"), "untouched keys keep file values");
}

#[test]
fn sweep_uses_file_value_lists_and_flags_rebuild_the_grid() {
    let path = tmp("cli_sweep.toml");
    std::fs::write(
        &path,
        "[common]\nvariant = \"gv\"\norder = \"bg-tg\"\n\n[sweep]\naxis = \"hot-temp\"\ntc = 0.2\nvalues = [0.5, 1.0, 1.5]\n",
    )
    .unwrap();
    let cfg = path.to_str().unwrap();

    let out = run(&["sweep", "--config", cfg]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#') && !l.is_empty()).collect();
    assert_eq!(rows.len(), 1 + 3, "header plus one row per listed value:\n{text}");
    assert!(rows[0].starts_with("t_c[T_F],t_h[T_F],w_out[E_F]"));
    // the compression identity shows up in every emitted efficiency
    for row in &rows[1..] {
        let eta: f64 = row.split(',').nth(5).unwrap().parse().unwrap();
        assert!((eta - 0.5).abs() < 1e-10, "{row}");
    }

    let overridden = run(&["sweep", "--config", cfg, "--points", "4", "--min", "0.4", "--max", "2.0"]);
    let text = stdout(&overridden);
    let rows = text.lines().filter(|l| !l.starts_with('#') && !l.is_empty()).count();
    assert_eq!(rows, 1 + 4, "grid flags replace the file's value list:\n{text}");
    assert!(text.contains("# grid_points = 4"));
}

#[test]
fn unknown_config_keys_are_rejected() {
    let path = tmp("cli_typo.toml");
    std::fs::write(&path, "[common]\nvariant = \"a\"\nratio_sq = 0.5\n").unwrap();
    let out = run(&["cycle", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("ratio_sq"), "{}", stderr(&out));
}

#[test]
fn atlas_emits_letter_labels_and_error_rows_on_the_full_grid() {
    // at N = 200 the default grid's cold corner sits below the condensed
    // Bose gas's entropy floor, so the grid legitimately mixes mode cells
    // with error rows; the run still succeeds as a whole
    let out = run(&[
        "atlas", "--variant", "a", "--order", "bg-tg", "--N", "200", "--resolution", "3",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("# resolution = 3"));
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#') && !l.is_empty()).collect();
    assert_eq!(rows.len(), 1 + 9);
    assert_eq!(rows[0], "t_c[T_F],t_h[T_F],mode,error");
    let mut labeled = 0;
    for row in &rows[1..] {
        let mode = row.split(',').nth(2).unwrap();
        if ["E", "R", "A", "H", "None"].contains(&mode) {
            labeled += 1;
        } else {
            assert!(mode.is_empty() && row.contains("stroke"), "neither label nor error row: {row}");
        }
    }
    assert!(labeled >= 6, "most of the grid solves: {text}");
}

#[test]
fn stdout_and_file_output_are_identical() {
    let piped = run(&["optimize", "--variant", "t", "--order", "tg-bg", "--N", "100", "--tc", "0.1", "--th", "0.5"]);
    assert_eq!(piped.status.code(), Some(0), "{}", stderr(&piped));

    let path = tmp("cli_optimize.csv");
    let filed = bin()
        .args(["optimize", "--variant", "t", "--order", "tg-bg", "--N", "100", "--tc", "0.1", "--th", "0.5", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(filed.status.code(), Some(0));
    assert_eq!(stdout(&piped), std::fs::read_to_string(&path).unwrap());
    assert!(stdout(&piped).contains("best_ratio"));
}
