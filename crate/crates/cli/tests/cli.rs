use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mifx_core::data::{write_csv, Dataset};
use mifx_core::eval::EvaluationReport;
use ndarray::Array2;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

const FAST_GA: [&str; 6] = ["--population", "12", "--generations", "5", "--restarts", "1"];

fn mifx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mifx")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Four Gaussian classes in 5 dimensions, written with a header row.
fn toy_csv(dir: &Path) -> PathBuf {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let labels: Vec<usize> = (0..120).map(|i| i % 4).collect();
    let x = Array2::from_shape_fn((120, 5), |(i, j)| {
        let z: f64 = StandardNormal.sample(&mut rng);
        z + if j == labels[i] { 2.5 } else { 0.0 }
    });
    let path = dir.join("toy.csv");
    write_csv(&Dataset::new(x, labels, 4).unwrap(), &path).unwrap();
    path
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(mifx(&["--help"]).status.code(), Some(0));
    assert_eq!(mifx(&["--version"]).status.code(), Some(0));
    assert_eq!(mifx(&["evaluate", "--help"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(mifx(&[]).status.code(), Some(1));
    assert_eq!(mifx(&["evaluate", "--bogus"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let data = toy_csv(dir.path());
    let data = data.to_str().unwrap();
    let out = dir.path().join("m.json");
    let o = mifx(&["extract", "--data", data, "--dims", "99", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("dims exceeds feature count"), "{}", stderr(&o));
    let o = mifx(&["evaluate", "--data", data, "--dims", "1-9"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("dims exceeds feature count"));
    let o = mifx(&["mi", "--data", data, "--x", "nosuch"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("nosuch"));
    let o = mifx(&["evaluate", "--data", data, "--dims", "1", "--method", "svm"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn data_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.csv");
    let o = mifx(&["mi", "--data", missing.to_str().unwrap(), "--x", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "a,b,class\n1,2,x\n1,oops,y\n").unwrap();
    let o = mifx(&["mi", "--data", bad.to_str().unwrap(), "--x", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn mi_reports_estimates_and_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let data = toy_csv(dir.path());
    let data = data.to_str().unwrap();
    let o = mifx(&["mi", "--data", data, "--x", "0", "--label-col", "last"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("I(0; C) = "));
    assert!(text.contains("Bayes error lower bound"));

    let o = mifx(&["mi", "--data", data, "--x", "f0", "--y", "0"]);
    let text = stdout(&o);
    let value = |prefix: &str| -> f64 {
        let line = text.lines().find(|l| l.starts_with(prefix)).unwrap();
        line.split(" = ").nth(1).unwrap().split(' ').next().unwrap().parse().unwrap()
    };
    assert_eq!(value("H(f0)"), value("I(f0; 0)"));

    let o = mifx(&["mi", "--data", data, "--x", "0", "--x2", "1", "--bins", "8"]);
    assert!(stdout(&o).contains("I(0, 1; C)"));
}

#[test]
fn extract_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let data = toy_csv(dir.path());
    let run = |name: &str| {
        let out = dir.path().join(name);
        let mut args = vec!["extract", "--data", data.to_str().unwrap(), "--dims", "3", "--seed", "42"];
        args.extend(FAST_GA);
        args.extend(["--out", out.to_str().unwrap()]);
        let o = mifx(&args);
        assert!(o.status.success(), "{}", stderr(&o));
        assert!(stdout(&o).contains("seed: 42"));
        assert!(stdout(&o).contains("config_digest: "));
        std::fs::read(out).unwrap()
    };
    let a = run("a.json");
    assert_eq!(a, run("b.json"));
    let model: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(model["t"], 3);
    assert_eq!(model["d"], 5);
    assert_eq!(model["vectors"].as_array().unwrap().len(), 3);

    for method in ["pca", "lda"] {
        let out = dir.path().join(format!("{method}.json"));
        let o = mifx(&["extract", "--data", data.to_str().unwrap(), "--dims", "2", "--method", method, "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
}

#[test]
fn evaluate_all_and_compare() {
    let dir = tempfile::tempdir().unwrap();
    let data = toy_csv(dir.path());
    let report_path = dir.path().join("all.json");
    let mut args = vec![
        "evaluate", "--data", data.to_str().unwrap(), "--method", "all", "--dims", "1-5", "--folds", "4",
        "--seed", "7", "--format", "csv", "--out", report_path.to_str().unwrap(),
    ];
    args.extend(FAST_GA);
    let o = mifx(&args);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("dim,raw,pca,lda,mifx\n"), "{text}");
    // 4 classes: LDA stops at 3 components
    let row4 = text.lines().find(|l| l.starts_with("4,")).unwrap();
    assert_eq!(row4.split(',').nth(3), Some("-"));
    assert!(text.contains("seed: 7"));

    let reports: Vec<EvaluationReport> = serde_json::from_slice(&std::fs::read(&report_path).unwrap()).unwrap();
    assert_eq!(reports.len(), 4);
    for r in &reports {
        r.validate().unwrap();
        assert_eq!(r.folds, 4);
        assert_eq!(r.classifier, "knn-1");
    }
    assert_eq!(reports[2].dims_absent, vec![4, 5]);

    let reference = dir.path().join("reference.csv");
    std::fs::write(&reference, "dim,published_mifx\n1,49.8\n2,75.3\n").unwrap();
    let md = mifx(&["compare", report_path.to_str().unwrap(), "--reference", reference.to_str().unwrap()]);
    assert!(md.status.success(), "{}", stderr(&md));
    let md = stdout(&md);
    assert!(md.contains("| Dim. | Raw | PCA | LDA | MIFX | published_mifx |"));
    assert!(md.contains("49.8 |"));

    let csv = stdout(&mifx(&["compare", report_path.to_str().unwrap(), "--format", "csv"]));
    let md_plain = stdout(&mifx(&["compare", report_path.to_str().unwrap()]));
    for line in csv.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        let md_row = format!("| {} | {} |", cells[0], cells[1..].join(" | "));
        assert!(md_plain.contains(&md_row), "{md_row} missing");
    }
}

#[test]
fn compare_rejects_mixed_datasets() {
    let dir = tempfile::tempdir().unwrap();
    let data = toy_csv(dir.path());
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for (out, name, method) in [(&a, "one", "raw"), (&b, "two", "pca")] {
        let o = mifx(&[
            "evaluate", "--data", data.to_str().unwrap(), "--method", method, "--dims", "1", "--folds", "3",
            "--name", name, "--out", out.to_str().unwrap(),
        ]);
        assert!(o.status.success());
    }
    let o = mifx(&["compare", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
