use std::path::Path;

use cosetforge::cli::run;
use cosetforge::fixtures;
use cosetforge::group::GroupFunction;
use cosetforge::slice::equal3;
use serde_json::Value;
use tempfile::TempDir;

fn cosetforge(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let argv = std::iter::once("cosetforge").chain(args.iter().copied());
    let code = run(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn json(args: &[&str]) -> (i32, Vec<Value>) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out) = cosetforge(&full);
    let reports: Value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}"));
    (code, reports.as_array().cloned().unwrap_or_default())
}

fn verdicts(reports: &[Value]) -> Vec<&str> {
    reports
        .iter()
        .map(|r| r["verdict"].as_str().unwrap())
        .collect()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

/// Drops the timing field so that two runs can be compared.
fn without_time(reports: &[Value]) -> Vec<Value> {
    reports
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.as_object_mut().unwrap().remove("wall_time");
            r
        })
        .collect()
}

#[test]
fn replicate_function_counterexample() {
    let (code, reports) = json(&["replicate-thm27"]);
    assert_eq!(code, 0);
    assert_eq!(
        verdicts(&reports),
        ["pass", "pass", "refuted-as-expected", "refuted-as-expected"]
    );
    for r in &reports {
        let mut keys: Vec<&String> = r.as_object().unwrap().keys().collect();
        keys.sort();
        assert_eq!(keys, ["claim", "verdict", "wall_time", "witness"]);
    }

    let (code, reports) = json(&["replicate-thm27", "--n", "7", "--k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(
        verdicts(&reports),
        ["pass", "pass", "refuted-as-expected", "refuted-as-expected"]
    );

    let (code, out) = cosetforge(&["replicate-thm27", "--n", "5", "--k", "2"]);
    assert_eq!(code, 2);
    assert!(out.contains("2(k+1)"), "{out}");
}

#[test]
fn membership_witness_verifies_when_fed_back() {
    let dir = TempDir::new().unwrap();
    let (_, reports) = json(&["replicate-thm27"]);
    let cert = reports[1]["witness"].as_str().unwrap();
    let cert_path = write(&dir, "cover.txt", cert);
    let f_path = write(&dir, "f.groupfunction", fixtures::BLOCK_FUNCTION_N6);
    let (code, reports) = json(&[
        "verify",
        &f_path,
        "--kind",
        "groupfunction",
        "--certificate",
        &cert_path,
    ]);
    assert_eq!(code, 0);
    assert_eq!(verdicts(&reports), ["pass"]);

    // The function witness of the first check parses as a group function.
    let (_, reports) = json(&["replicate-thm27"]);
    let text = reports[0]["witness"].as_str().unwrap();
    let body = text.split_once('\n').unwrap().1;
    assert_eq!(
        GroupFunction::parse(body).unwrap(),
        fixtures::block_function_n6()
    );
}

#[test]
fn replicate_matrix_counterexample() {
    let (code, reports) = json(&["replicate-thm29"]);
    assert_eq!(code, 0);
    assert_eq!(
        verdicts(&reports),
        [
            "pass",
            "refuted-as-expected",
            "pass",
            "pass",
            "refuted-as-expected"
        ]
    );
    assert!(reports[4]["witness"].as_str().unwrap().starts_with("S2:"));
}

fn perturbed_fixture() -> String {
    fixtures::PAIR_MATRIX.replacen("1 2 1 3 1/4", "1 2 1 3 3/8", 1)
}

#[test]
fn corrupted_fixture_fails() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "bad.pairmatrix", &perturbed_fixture());
    let (code, reports) = json(&["replicate-thm29", "--fixture", &path]);
    assert_eq!(code, 1);
    assert_eq!(verdicts(&reports)[0], "fail");
}

#[test]
fn verify_pair_matrix_files() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "m.pairmatrix", fixtures::PAIR_MATRIX);
    let (code, reports) = json(&["verify", &good, "--kind", "pairmatrix", "--2bistochastic"]);
    assert_eq!((code, verdicts(&reports)), (0, vec!["pass"]));

    let table = write(&dir, "m.table", fixtures::PAIR_MATRIX_GROUPED_TABLE);
    let (code, _) = json(&["verify", &table, "--kind", "pairmatrix"]);
    assert_eq!(code, 0);

    let bad = write(&dir, "bad.pairmatrix", &perturbed_fixture());
    let (code, reports) = json(&["verify", &bad, "--kind", "pairmatrix", "--2bistochastic"]);
    assert_eq!(code, 1);
    let witness = reports[0]["witness"].as_str().unwrap();
    assert!(
        witness.starts_with("row 1 = (1,2) sums to 9/8"),
        "{witness}"
    );

    let (code, reports) = json(&["verify", &good, "--kind", "pairmatrix", "--embedded"]);
    assert_eq!((code, verdicts(&reports)), (1, vec!["fail"]));
}

#[test]
fn verify_group_function_files() {
    let dir = TempDir::new().unwrap();
    let t = cosetforge::group::TupleInjection::new(4, vec![1], vec![1]).unwrap();
    let f = cosetforge::group::coset_indicator(&t).unwrap();
    let path = write(&dir, "coset.groupfunction", &f.to_string());
    let (code, reports) = json(&[
        "verify",
        &path,
        "--kind",
        "groupfunction",
        "--in-vk",
        "1",
        "--coset",
        "1",
        "--disjoint-cover",
        "1",
        "--nonneg-cover",
        "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(verdicts(&reports), ["pass"; 4]);

    // Each witness that is a coset combination reconstructs f.
    for r in &reports {
        let cert = write(&dir, "cert.txt", r["witness"].as_str().unwrap());
        let (code, _) = json(&[
            "verify",
            &path,
            "--kind",
            "groupfunction",
            "--certificate",
            &cert,
        ]);
        assert_eq!(code, 0);
    }

    let f6 = write(&dir, "f6.groupfunction", fixtures::BLOCK_FUNCTION_N6);
    let (code, reports) = json(&["verify", &f6, "--kind", "groupfunction", "--coset", "2"]);
    assert_eq!((code, verdicts(&reports)), (1, vec!["fail"]));
    let (code, reports) = json(&[
        "verify",
        &f6,
        "--kind",
        "groupfunction",
        "--nonneg-cover",
        "2",
    ]);
    assert_eq!((code, verdicts(&reports)), (1, vec!["fail"]));
}

#[test]
fn parse_errors_exit_2_with_position() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "broken.groupfunction", "n=3\n1,2,3 1\n1,2,3 x/y\n");
    let (code, out) = cosetforge(&["verify", &path, "--kind", "groupfunction"]);
    assert_eq!(code, 2);
    assert!(out.contains("line 3, column 7"), "{out}");

    let (code, _) = cosetforge(&["verify", "/nonexistent/file", "--kind", "slicefunction"]);
    assert_eq!(code, 2);
    let (code, _) = cosetforge(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_slice_functions() {
    let dir = TempDir::new().unwrap();
    let f = equal3(6, 3).unwrap();
    let path = write(&dir, "e.slice", &f.to_string());
    let (code, reports) = json(&[
        "verify",
        &path,
        "--kind",
        "slicefunction",
        "--degree",
        "--d",
        "2",
        "--s",
        "2",
    ]);
    assert_eq!(code, 1);
    assert_eq!(verdicts(&reports), ["pass", "fail"]);
    assert_eq!(reports[0]["witness"], "degree 2");

    let g = write(&dir, "g.slice", &f.negation().to_string());
    let (code, reports) = json(&["verify", &g, "--kind", "slicefunction", "--s", "2", "--ucc"]);
    assert_eq!(code, 0);
    let cover = reports[0]["witness"].as_str().unwrap();
    let cert = write(&dir, "cover.txt", cover);
    let (code, _) = json(&[
        "verify",
        &g,
        "--kind",
        "slicefunction",
        "--certificate",
        &cert,
    ]);
    assert_eq!(code, 0);
    let (code, _) = json(&[
        "verify",
        &path,
        "--kind",
        "slicefunction",
        "--certificate",
        &cert,
    ]);
    assert_eq!(code, 1);
}

#[test]
fn search_listing() {
    let (code, reports) = json(&[
        "search",
        "--n",
        "6",
        "--k",
        "3",
        "--d",
        "2",
        "--threads",
        "3",
    ]);
    assert_eq!(code, 0);
    let canonical = cosetforge::slice::canonical_form(&equal3(6, 3).unwrap()).unwrap();
    assert!(reports[1..]
        .iter()
        .any(|r| r["witness"].as_str() == Some(canonical.to_string().as_str())));
    assert!(verdicts(&reports).iter().all(|v| *v == "pass"));

    let (code, first) = json(&["search", "--n", "4", "--k", "2", "--d", "1"]);
    let (_, second) = json(&[
        "search",
        "--n",
        "4",
        "--k",
        "2",
        "--d",
        "1",
        "--threads",
        "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(without_time(&first), without_time(&second));

    let (code, _) = cosetforge(&["search", "--n", "10", "--k", "5", "--d", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn decompose_and_lift() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "a.matrix", "3 3\n1/2 1/2 0\n0 1/2 1/2\n1/2 0 1/2\n");
    let (code, reports) = json(&["decompose", &m]);
    assert_eq!(code, 0);
    assert_eq!(reports[0]["witness"], "1/2 : 1,2,3\n1/2 : 2,3,1");

    let bad = write(&dir, "b.matrix", "2 2\n1 1\n0 0\n");
    let (code, _) = json(&["decompose", &bad]);
    assert_eq!(code, 1);

    let slice = write(&dir, "e.slice", &equal3(6, 3).unwrap().to_string());
    let out = dir.path().join("lifted.groupfunction");
    let (code, _) = cosetforge(&["lift", &slice, "-o", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let lifted = GroupFunction::parse(&std::fs::read_to_string(Path::new(&out)).unwrap()).unwrap();
    assert_eq!(lifted, fixtures::block_function_n6());

    let (code, text) = cosetforge(&["lift", &slice]);
    assert_eq!(code, 0);
    assert_eq!(GroupFunction::parse(&text).unwrap(), lifted);
}

#[test]
fn oracle_suites_are_seeded() {
    let args = [
        "oracles",
        "--seed",
        "5",
        "--systems",
        "40",
        "--matrices",
        "16",
        "--samples",
        "4",
    ];
    let (code, first) = json(&args);
    let (_, second) = json(&args);
    assert_eq!(code, 0);
    assert_eq!(first.len(), 4);
    assert_eq!(without_time(&first), without_time(&second));
}

#[test]
fn text_and_json_carry_the_same_fields() {
    let (_, text) = cosetforge(&["replicate-thm29"]);
    let (_, reports) = json(&["replicate-thm29"]);
    for r in &reports {
        assert!(text.contains(&format!("claim: {}", r["claim"].as_str().unwrap())));
        assert!(text.contains(&format!("verdict: {}", r["verdict"].as_str().unwrap())));
    }
    assert_eq!(text.matches("wall_time: ").count(), reports.len());
}
