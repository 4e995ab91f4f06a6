use std::path::PathBuf;

use serde_json::Value;

use rext::cli::{run, EXIT_OK, EXIT_USAGE, EXIT_VERIFY};

fn rext(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["rext"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = rext(args);
    let value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}"));
    (code, value)
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("rext-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

fn rows(v: &Value) -> Vec<Vec<u64>> {
    serde_json::from_value(v["data"].clone()).unwrap()
}

#[test]
fn count_reports_in_documented_order() {
    let (code, out, _) = rext(&[
        "count", "lfsr", "--q", "2", "--m", "2", "--b", "2", "--poly", "s^4+s+1", "--oracle",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(
        out.starts_with(r#"{"formula":8,"oracle":8,"match":true,"parameters":"#),
        "{out}"
    );
    let (code, v) = json(&["count", "hankel", "--q", "2", "--n", "2", "--oracle"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        (
            v["formula"].as_u64(),
            v["oracle"].as_u64(),
            v["match"].as_bool()
        ),
        (Some(4), Some(4), Some(true))
    );
}

#[test]
fn count_without_oracle_leaves_it_null() {
    let (code, v) = json(&["count", "extension", "--q", "2", "--r", "2,2,2", "--n", "6"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["formula"].as_u64(), Some(1536));
    assert!(v["oracle"].is_null() && v["match"].is_null());
}

#[test]
fn big_counts_stay_exact() {
    let (code, out, _) = rext(&["count", "lfsr", "--q", "65521", "--m", "4", "--b", "8"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    let digits = v["formula"].to_string();
    assert!(
        digits.len() > 100 && digits.chars().all(|c| c.is_ascii_digit()),
        "{digits}"
    );
}

#[test]
fn every_count_kind_matches_its_oracle() {
    for args in [
        vec![
            "count", "multiseq", "--q", "3", "--m", "2", "--n", "3", "--l", "1", "--oracle",
        ],
        vec![
            "count",
            "extension",
            "--q",
            "2",
            "--r",
            "2,1",
            "--n",
            "3",
            "--oracle",
        ],
        vec![
            "count",
            "extension-total",
            "--q",
            "2",
            "--m",
            "2",
            "--r",
            "3",
            "--n",
            "4",
            "--oracle",
            "--jobs",
            "2",
        ],
        vec!["count", "hankel", "--q", "3", "--n", "2", "--oracle"],
    ] {
        let (code, v) = json(&args);
        assert_eq!(code, EXIT_OK, "{args:?}");
        assert_eq!(v["match"], Value::Bool(true), "{args:?}");
    }
}

#[test]
fn oracle_subcommand() {
    let (code, v) = json(&[
        "oracle", "multiseq", "--q", "2", "--m", "2", "--n", "3", "--l", "2",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["oracle"].as_u64(), Some(6));
}

#[test]
fn synth_lfsr_reproduces_worked_example() {
    let choices = data("gf2_m3_b2_choices.json");
    let args = [
        "synth",
        "lfsr",
        "--q",
        "2",
        "--m",
        "3",
        "--b",
        "2",
        "--poly",
        "s^6+s+1",
        "--choices",
        &choices,
    ];
    let (code, v) = json(&args);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        rows(&v["transition"]),
        vec![
            vec![0, 0, 0, 1, 0, 0],
            vec![0, 0, 0, 0, 1, 0],
            vec![0, 0, 0, 0, 0, 1],
            vec![1, 0, 1, 1, 0, 0],
            vec![1, 1, 0, 1, 0, 1],
            vec![1, 1, 1, 1, 0, 1],
        ]
    );
    let blocks = v["spec"]["blocks"].as_array().unwrap();
    assert_eq!(
        rows(&blocks[0]),
        vec![vec![1, 0, 1], vec![1, 1, 0], vec![1, 1, 1]]
    );
    assert_eq!(
        rows(&blocks[1]),
        vec![vec![1, 0, 0], vec![1, 0, 1], vec![1, 0, 1]]
    );
    assert_eq!(v["verification"]["passed"], Value::Bool(true));
    assert_eq!(v["ladder"]["polys"][0], "s^3+s+1");
    assert_eq!(
        v["choices"]["appended"],
        serde_json::json!([[1, 0], [0, 1], [0, 1]])
    );

    // the emitted spec verifies on its own
    let spec = scratch("spec.json", &v["spec"].to_string());
    let (code, report) = json(&["verify", "lfsr", "--spec", &spec, "--poly", "s^6+s+1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(report["report"]["period_checked"].as_u64(), Some(63));
    let (code, _) = json(&["verify", "lfsr", "--spec", &spec, "--poly", "s^6+s^5+1"]);
    assert_eq!(code, EXIT_VERIFY);
}

#[test]
fn synthesis_is_deterministic() {
    let args = [
        "synth", "multiseq", "--q", "3", "--r", "2,1,3", "--n", "7", "--seed", "11",
    ];
    let (code, a, _) = rext(&args);
    assert_eq!(code, EXIT_OK);
    let (_, b, _) = rext(&args);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["verification"]["extension_dimension"].as_u64(), Some(6));
    assert_eq!(v["seed"].as_u64(), Some(11));

    // replaying the emitted choices reproduces the state
    let script = scratch("replay.json", &v["choices"].to_string());
    let (code, w) = json(&[
        "synth",
        "multiseq",
        "--q",
        "3",
        "--r",
        "2,1,3",
        "--n",
        "7",
        "--choices",
        &script,
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(w["state"], v["state"]);
    assert!(w["seed"].is_null());
}

#[test]
fn ladder_file_is_honoured() {
    let ladder = scratch(
        "ladder.json",
        r#"{"q":2,"polys":["s^4+s^3+1","s^5+s^3+1"]}"#,
    );
    let (code, v) = json(&[
        "synth", "multiseq", "--q", "2", "--r", "2,2", "--n", "5", "--seed", "3", "--ladder",
        &ladder,
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["state"]["minpoly"], serde_json::json!([1, 0, 0, 1, 0, 1]));
}

#[test]
fn usage_errors_exit_one() {
    let choices = data("gf2_m3_b2_choices.json");
    for args in [
        vec!["synth", "multiseq", "--q", "2", "--r", "2,2", "--n", "4"],
        vec![
            "synth",
            "multiseq",
            "--q",
            "2",
            "--r",
            "2,2",
            "--n",
            "4",
            "--seed",
            "1",
            "--choices",
            &choices,
        ],
        vec!["count", "hankel", "--q", "4", "--n", "2"],
        vec!["road", "--r", "3,0,2"],
        vec!["count", "extension", "--q", "2", "--r", "2,2", "--n", "3"],
        vec![
            "count",
            "lfsr",
            "--q",
            "2",
            "--m",
            "2",
            "--b",
            "2",
            "--poly",
            "s^4+s^2+1",
            "--oracle",
        ],
        vec!["bogus"],
    ] {
        let (code, out, err) = rext(&args);
        assert_eq!(code, EXIT_USAGE, "{args:?}: {out}");
        assert!(!err.is_empty());
    }
    let (code, out, _) = rext(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("synth"));
}

#[test]
fn road_and_primpoly() {
    let (_, v) = json(&["road", "--r", "2,2,2"]);
    let active: Vec<u64> = v["traversal"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["active"].as_u64().unwrap())
        .collect();
    assert_eq!(active, vec![3, 2, 1]);
    let (_, v) = json(&["primpoly", "--q", "2", "--n", "6"]);
    assert_eq!(v["poly"], "s^6+s+1");
    let (_, v) = json(&["primpoly", "--q", "2", "--n", "6", "--all", "100"]);
    assert_eq!(v["polys"].as_array().unwrap().len(), 6);
}

#[test]
fn pretty_and_out_file() {
    let (_, out, _) = rext(&["primpoly", "--q", "2", "--n", "3", "--pretty"]);
    assert!(out.contains("\n  \"poly\""));
    let target = scratch("primpoly.json", "");
    let (code, out, _) = rext(&["primpoly", "--q", "2", "--n", "3", "--out", &target]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(written["poly"], "s^3+s+1");
}
