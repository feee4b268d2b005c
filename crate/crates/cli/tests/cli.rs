use std::process::{Command, Output};

fn ghz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ghz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn scratch(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("ghz-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn flagship_passes_every_check() {
    let o = ghz(&["verify", "ghz-ququat-5", "--oracle", "--genuine", "--lhv"]);
    let out = stdout(&o);
    assert_eq!(code(&o), 0, "{out}{}", stderr(&o));
    assert!(out.contains("product:          -1"), "{out}");
    assert!(out.contains("agrees"), "{out}");
    assert!(out.contains("genuinely 5-partite: yes"), "{out}");
    assert!(out.contains("genuinely 4-dimensional: yes"), "{out}");
    assert!(out.contains("infeasible"), "{out}");
    assert!(out.contains("product of all rows"), "{out}");
}

#[test]
fn ququat_triple_is_only_two_dimensional() {
    let o = ghz(&["verify", "example6-3ququat", "--genuine"]);
    let out = stdout(&o);
    assert_eq!(code(&o), 1, "{out}");
    assert!(out.contains("paradox:          yes"), "{out}");
    assert!(out.contains("only 2-dimensional"), "{out}");
}

#[test]
fn five_qubit_table_reduces_to_three_parties() {
    let o = ghz(&["verify", "prc-5qubit", "--genuine"]);
    let out = stdout(&o);
    assert_eq!(code(&o), 1, "{out}");
    assert!(out.contains("not genuinely 5-partite"), "{out}");
    assert!(out.contains("{1,2,3}"), "{out}");
}

#[test]
fn generate_family_reproduces_flagship() {
    let o = ghz(&[
        "generate", "family", "--d", "4", "--M", "5", "--n", "1", "--q", "0", "--a", "1", "--b", "3", "--c", "1",
        "--show",
    ]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let body: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(
        body,
        [
            "X    X    X    X    X",
            "X^3  Y    Y    Y    Y",
            "Y    X^3  Y    Y    Y",
            "Y    Y    X^3  Y    Y",
            "Y    Y    Y    X^3  Y",
            "Y    Y    Y    Y    X^3",
        ]
    );
}

#[test]
fn generated_document_verifies() {
    let path = scratch("flagship.json");
    let p = path.to_str().unwrap();
    let o = ghz(&[
        "generate", "family", "--parties", "5", "--d", "4", "--n", "1", "--a", "1", "--b", "3", "--c", "1", "--out", p,
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
    let o = ghz(&["verify", p, "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"]["is_paradox"], true);
    assert_eq!(v["ok"], true);
}

#[test]
fn generate_even_parties() {
    let o = ghz(&["generate", "even-m", "--d", "2"]);
    assert_eq!(code(&o), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["parties"], 4);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 6);
    assert_eq!(code(&ghz(&["generate", "even-m", "--d", "3"])), 2);
}

#[test]
fn generate_names_violated_conditions() {
    let o = ghz(&["generate", "family", "--d", "3", "--M", "5", "--n", "1", "--q", "0", "--a", "1", "--b", "2", "--c", "1"]);
    assert_eq!(code(&o), 2);
    let err = stderr(&o);
    assert!(err.contains("dimension-even"), "{err}");
    assert!(err.contains("first-row-commutes"), "{err}");

    let o = ghz(&["generate", "family", "--d", "4", "--M", "6", "--n", "1", "--a", "1", "--b", "3", "--c", "1"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("segment-lengths"));
}

#[test]
fn odd_dimensions_have_no_family_paradoxes() {
    let o = ghz(&["search", "--d", "3..3", "--M", "3..9"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("results: 0\n"), "{out}");
    assert!(out.contains("not a proof"), "{out}");
}

#[test]
fn family_search_summary_is_frozen() {
    let o = ghz(&["search", "--d", "2..6", "--M", "3..9", "--mode", "family"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), include_str!("goldens/search-family-d2-6-m3-9.txt"));
}

#[test]
fn exhaustive_search_finds_mermin() {
    let o = ghz(&["search", "--mode", "exhaustive", "--d", "2", "--M", "3", "--maxrows", "5"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("[X X X | X Y Y | Y X Y | Y Y X]"), "{out}");
    assert!(out.contains("results: 20"), "{out}");
}

#[test]
fn search_jsonl_lines_parse() {
    let o = ghz(&["search", "--d", "2", "--M", "3..5", "--jsonl", "-"]);
    assert_eq!(code(&o), 0);
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(!lines.is_empty());
    assert!(lines.iter().all(|l| l["verdict"]["is_paradox"] == true));
    assert!(stderr(&o).contains("conjecture"));
}

#[test]
fn bad_search_specs_are_input_errors() {
    assert_eq!(code(&ghz(&["search", "--d", "1..4", "--M", "3"])), 2);
    assert_eq!(code(&ghz(&["search", "--mode", "exhaustive", "--d", "4", "--M", "7"])), 2);
    assert_eq!(code(&ghz(&["search", "--d", "x", "--M", "3"])), 2);
}

#[test]
fn parse_errors_report_position() {
    let path = scratch("bad.json");
    std::fs::write(&path, "{\n  \"schema_version\": \"1\",\n  \"dimension\": 2\n  \"parties\": 3\n}\n").unwrap();
    let o = ghz(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 4 column"), "{}", stderr(&o));
}

#[test]
fn unknown_table_is_an_input_error() {
    let o = ghz(&["verify", "no-such-table"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("mermin-3qubit"));
}

#[test]
fn oracle_capacity_exits_three() {
    let o = Command::new(env!("CARGO_BIN_EXE_ghz"))
        .args(["verify", "ghz-ququat-5", "--oracle"])
        .env("GHZ_ORACLE_CAPACITY", "100")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3, "{}", stderr(&o));
}

#[test]
fn expected_block_is_checked() {
    let doc = |phase: u32| {
        format!(
            r#"{{"schema_version":"1","dimension":2,"parties":3,"label":"mermin",
"rows":[[{{"base":"X","exp":1}},{{"base":"X","exp":1}},{{"base":"X","exp":1}}],
[{{"base":"X","exp":1}},{{"base":"Y","exp":1}},{{"base":"Y","exp":1}}],
[{{"base":"Y","exp":1}},{{"base":"X","exp":1}},{{"base":"Y","exp":1}}],
[{{"base":"Y","exp":1}},{{"base":"Y","exp":1}},{{"base":"X","exp":1}}]],
"expected":{{"phase_exp":{phase},"eigenvalues":[0,1,1,1]}}}}"#
        )
    };
    let good = scratch("mermin-good.json");
    std::fs::write(&good, doc(2)).unwrap();
    let o = ghz(&["verify", good.to_str().unwrap(), "--lhv"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let bad = scratch("mermin-bad.json");
    std::fs::write(&bad, doc(0)).unwrap();
    let o = ghz(&["verify", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("MISMATCH"));
}

#[test]
fn eigenbasis_of_mermin() {
    let o = ghz(&["eigenbasis", "mermin-3qubit", "--json", "--limit", "8"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["size"], 8);
    // Every joint eigenvector has row eigenvalues multiplying to -1.
    for vec in v["vectors"].as_array().unwrap() {
        let sum: u64 = vec["eigenvalue_exponents"].as_array().unwrap().iter().map(|e| e.as_u64().unwrap()).sum();
        assert_eq!(sum % 2, 1);
    }
}

#[test]
fn projection_onto_a_broken_subspace_is_not_a_paradox() {
    let o = ghz(&["project", "ghz-ququat-5", "--span", "1,0,1,0;0,1,0,1"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("paradox on subspace: no"));
    let o = ghz(&["project", "ghz-ququat-5", "--span", "1,0,0,0;0,1,0,0;0,0,1,0", "--span", "1,0,0,0"]);
    assert_eq!(code(&o), 2);
}
