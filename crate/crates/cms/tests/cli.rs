use std::process::{Command, Output};

use cms::commands::{cmd_from_weight, cmd_to_weight};
use cms::Options;
use cms_core::bipart::cross_box;
use proptest::prelude::*;

fn cms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cms"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eqclass_reports_class_and_diagram() {
    let o = cms(&["eqclass", "--n", "1", "--m", "1", "--weight", "(0|0)"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("class: [(0|0), (1|-1)]"), "{s}");
    assert!(s.contains("r: 1"));
    assert!(s.contains('#'));
    let o = cms(&["eqclass", "--n", "1", "--m", "1", "--weight", "(2|0)"]);
    assert!(stdout(&o).contains("class: [(2|0)]"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        cms(&["eqclass", "--n", "1", "--m", "1", "--weight", "(0|)"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cms(&["eqclass", "--n", "1", "--m", "1", "--weight", "(0|0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(cms(&["frobnicate"]).status.code(), Some(2));
    let o = cms(&[
        "bipartition",
        "to-weight",
        "--n",
        "1",
        "--m",
        "1",
        "--lambda",
        "(2,2)",
        "--mu",
        "(2,2)",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not in (1,1) cross"));
    let o = cms(&["spectral", "--n", "1", "--m", "1", "--weight", "(1|-1)"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not in X_reg"));
    let o = Command::new(env!("CARGO_BIN_EXE_cms"))
        .args(["verify", "commute", "--n", "2", "--m", "1", "--box", "2"])
        .env("CMS_MAX_CELLS", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("cms-report/1"));
}

#[test]
fn bipartition_directions() {
    let o = cms(&[
        "bipartition",
        "to-weight",
        "--n",
        "1",
        "--m",
        "1",
        "--lambda",
        "(1)",
        "--mu",
        "(1)",
    ]);
    let s = stdout(&o);
    assert!(
        s.contains("weight: (1|-1)") && s.contains("pass sigma_check"),
        "{s}"
    );
    let o = cms(&[
        "bipartition",
        "from-weight",
        "--n",
        "1",
        "--m",
        "1",
        "--weight",
        "(0|0)",
    ]);
    assert!(stdout(&o).contains("bipartition: (∅, ∅)"));
}

#[test]
fn spectral_reports() {
    let o = cms(&[
        "spectral",
        "--n",
        "1",
        "--m",
        "1",
        "--weight",
        "(0|0)",
        "--json",
        "--k-sample",
        "3/7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "cms-report/1");
    assert_eq!(v["outputs"]["dimension"], 2);
    assert_eq!(v["outputs"]["sampled_dimension"], 2);
    assert_eq!(v["outputs"]["algebra"]["dimension"], 2);
    assert_eq!(
        v["outputs"]["algebra"]["square_zero_generators"]
            .as_array()
            .unwrap()
            .len(),
        1
    );
    let o = cms(&[
        "spectral", "--n", "1", "--m", "1", "--weight", "(2|0)", "--json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["outputs"]["dimension"], 1);
    assert_eq!(v["outputs"]["algebra"]["dimension"], 1);
}

#[test]
fn verify_examples_pass() {
    for args in [
        vec!["verify", "commute", "--n", "1", "--m", "1", "--rmax", "3"],
        vec![
            "verify",
            "bernoulli",
            "--n",
            "2",
            "--m",
            "1",
            "--box",
            "3",
            "--rmax",
            "5",
        ],
        vec!["verify", "bijection", "--n", "2", "--m", "2", "--box", "3"],
        vec![
            "verify",
            "spectral",
            "--n",
            "1",
            "--m",
            "1",
            "--box",
            "2",
            "--k-sample",
            "5/3",
        ],
    ] {
        let o = cms(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}\n{}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec![
            "eqclass",
            "--n",
            "2",
            "--m",
            "2",
            "--weight",
            "(1,0|0,-1)",
            "--json",
        ],
        vec!["verify", "bernoulli", "--n", "1", "--m", "1", "--box", "2"],
        vec!["spectral", "--n", "2", "--m", "1", "--weight", "(0,0|0)"],
    ] {
        assert_eq!(cms(&args).stdout, cms(&args).stdout, "{args:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn to_and_from_weight_agree(idx in 0usize..200) {
        let (n, m) = (2, 1);
        let all = cross_box(n, m, 4);
        let bp = &all[idx % all.len()];
        let opts = Options::default();
        let there = cmd_to_weight(n, m, &bp.lambda.to_string(), &bp.mu.to_string(), &opts).unwrap();
        prop_assert!(there.passed());
        let w = there.outputs["weight"].as_str().unwrap().to_string();
        let back = cmd_from_weight(n, m, &w, &opts).unwrap();
        prop_assert!(back.passed());
        prop_assert_eq!(back.outputs["lambda"].as_str().unwrap(), bp.lambda.to_string());
        prop_assert_eq!(back.outputs["mu"].as_str().unwrap(), bp.mu.to_string());
    }
}
