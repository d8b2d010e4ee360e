use std::process::{Command, Output};

fn catbreed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catbreed"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Data rows of a CSV with `#` comments, header excluded.
fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect()
}

fn footer(csv: &str) -> &str {
    csv.lines().rev().find(|l| l.starts_with('#')).unwrap()
}

#[test]
fn breed_sweep_is_byte_stable() {
    let args = ["breed-sweep", "--alpha-steps", "4", "--eta-steps", "3"];
    let a = catbreed(&args);
    let b = catbreed(&args);
    assert!(a.status.success());
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn breed_sweep_ideal_rows() {
    let out = catbreed(&["breed-sweep", "--alpha-min", "0.5", "--alpha-max", "4", "--alpha-steps", "8", "--eta-min", "0.9", "--eta-max", "1", "--eta-steps", "2"]);
    assert!(out.status.success());
    let csv = stdout(&out);
    assert!(csv
        .lines()
        .any(|l| l == "alpha,eta,fidelity,best_magnitude,success_probability,naive_magnitude"));
    let rows = rows(&csv);
    assert_eq!(rows.len(), 16);
    // Alpha-major ordering.
    assert_eq!(rows[0][..2], [0.5, 0.9]);
    assert_eq!(rows[1][..2], [0.5, 1.0]);
    for r in rows.iter().filter(|r| r[1] == 1.0) {
        assert!((r[2] - 1.0).abs() < 1e-9, "{r:?}");
        assert!((r[3] - 2f64.sqrt() * r[0]).abs() < 1e-5, "{r:?}");
        assert!((r[4] - 0.5).abs() < 1e-9, "{r:?}");
    }
}

#[test]
fn breed_fidelity_near_paper_threshold() {
    let out = catbreed(&["breed-sweep", "--alpha-min", "4.7", "--alpha-max", "4.7", "--alpha-steps", "1", "--eta-min", "0.99", "--eta-max", "0.99", "--eta-steps", "1"]);
    let rows = rows(&stdout(&out));
    assert_eq!(rows.len(), 1);
    assert!((rows[0][2] - 0.9).abs() < 0.05, "{:?}", rows[0]);
}

#[test]
fn cross_section_reports_threshold() {
    let out = catbreed(&["cross-section", "--alpha-steps", "6"]);
    assert!(out.status.success());
    let csv = stdout(&out);
    assert!(csv.lines().any(|l| l == "alpha,fidelity"));
    let f = footer(&csv);
    assert!(f.starts_with("# threshold_alpha(eta=0.99, F=0.9) = "), "{f}");
    let t: f64 = f.rsplit(' ').next().unwrap().parse().unwrap();
    assert!((t - 4.7).abs() < 0.3);
    let fid: Vec<f64> = rows(&csv).iter().map(|r| r[1]).collect();
    assert!(fid.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn cross_section_threshold_missing_at_perfect_overlap() {
    let out = catbreed(&["cross-section", "--eta", "1", "--alpha-steps", "3"]);
    assert!(out.status.success());
    assert!(footer(&stdout(&out)).starts_with("# threshold_alpha: not found"));
}

#[test]
fn loss_cross_section_reports_max_alpha() {
    let out = catbreed(&["loss-cross-section", "--alpha-steps", "5"]);
    assert!(out.status.success());
    let csv = stdout(&out);
    assert!(csv.lines().any(|l| l == "alpha,eta,F_paper,F_exact_even,F_exact_odd"));
    let f = footer(&csv);
    assert!(f.starts_with("# max_alpha_for_fidelity(eta=0.05, F=0.9) = "), "{f}");
    let m: f64 = f.rsplit(' ').next().unwrap().parse().unwrap();
    assert!((m - 1.494).abs() < 0.01);
    for r in rows(&csv) {
        assert_eq!(r[1], 0.05);
        assert!((r[2] - 0.5 * (1.0 + (-2.0 * r[0] * r[0] * 0.05f64).exp())).abs() < 1e-8);
    }
}

#[test]
fn loss_sweep_grid_shape() {
    let out = catbreed(&["loss-sweep", "--alpha-steps", "4", "--eta-steps", "5"]);
    assert!(out.status.success());
    let rows = rows(&stdout(&out));
    assert_eq!(rows.len(), 20);
    // Without loss every cat survives intact.
    for r in rows.iter().filter(|r| r[1] == 0.0) {
        assert_eq!(r[2..], [1.0, 1.0, 1.0]);
    }
}

#[test]
fn out_and_svg_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sweep.csv");
    let svg = dir.path().join("sweep.svg");
    let line = dir.path().join("line.svg");
    let out = catbreed(&[
        "loss-sweep",
        "--alpha-steps",
        "3",
        "--eta-steps",
        "3",
        "--out",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(&csv).unwrap().contains("F_paper"));
    let heat = std::fs::read_to_string(&svg).unwrap();
    assert!(heat.starts_with("<svg"));
    assert_eq!(heat.matches("<rect x=").count(), 9);

    let out = catbreed(&["cross-section", "--alpha-steps", "4", "--svg", line.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(std::fs::read_to_string(&line).unwrap().contains("<polyline"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["breed-sweep", "--eta-min", "0.3"][..],
        &["breed-sweep", "--alpha-min", "0"],
        &["breed-sweep", "--alpha-max", "11"],
        &["breed-sweep", "--alpha-min", "3", "--alpha-max", "2"],
        &["cross-section", "--eta", "1.5"],
        &["loss-cross-section", "--target-fidelity", "0.4"],
        &["loss-sweep", "--eta-steps", "0"],
        &["breed-sweep", "--parity", "neither"],
        &["no-such-command"],
    ] {
        let out = catbreed(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn selftest_passes() {
    let out = catbreed(&["selftest"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("selftest: all checks passed\n"));
}
