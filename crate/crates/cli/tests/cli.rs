//! End-to-end tests of the binary: the documented command lines, the exit
//! code contract (0 clean, 1 failed check, 2 malformed input), and byte-level
//! determinism of the records rendering.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn pqhom(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pqhom"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("the binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

/// A two-point function algebra, the difference-of-evaluations functional on
/// it, and the diag(2|3) block matrix.
fn fixtures() -> TempDir {
    let dir = tempfile::tempdir().expect("temp dir");
    fs::write(
        dir.path().join("A.json"),
        r#"{"dim":2,"unit":["1","1"],"structure":[[["1","0"],["0","0"]],[["0","0"],["0","1"]]],"points":["1","2"]}"#,
    )
    .unwrap();
    fs::write(
        dir.path().join("f.json"),
        r#"{"source":"A","target":"scalar","matrix":[["1","-1"]]}"#,
    )
    .unwrap();
    fs::write(
        dir.path().join("M.json"),
        r#"{"p":1,"q":1,"ring":"rational","blocks":{"a00":[["2"]],"a01":[["0"]],"a10":[["0"]],"a11":[["3"]]}}"#,
    )
    .unwrap();
    dir
}

#[test]
fn classify_reports_the_difference_of_evaluations_as_one_one() {
    let dir = fixtures();
    let output = pqhom(
        dir.path(),
        &["classify", "--functional", "f.json", "--algebra", "A.json", "--max-p", "4", "--max-q", "4"],
    );
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("pq-homomorphism (1,1)"));
}

#[test]
fn classify_fails_when_the_search_box_is_too_small() {
    let dir = fixtures();
    let output = pqhom(
        dir.path(),
        &["classify", "--functional", "f.json", "--algebra", "A.json", "--max-p", "0", "--max-q", "0"],
    );
    assert_eq!(output.status.code(), Some(1));
    assert!(stdout(&output).contains("not classified"));
}

#[test]
fn ber_prints_the_value_by_both_routes() {
    let dir = fixtures();
    let output = pqhom(dir.path(), &["super", "ber", "--matrix", "M.json"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains("Ber = 2/3"));
    assert!(text.contains("ratio agrees"));
}

#[test]
fn hankel_window_lists_each_index_and_the_sharpness_probe() {
    let dir = fixtures();
    let output = pqhom(dir.path(), &["super", "hankel", "--matrix", "M.json"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains("window index k = 1: determinant 0"));
    assert!(text.contains("sharpness probe at k = 0: determinant 2"));
}

#[test]
fn char_series_prints_exact_coefficients() {
    let dir = fixtures();
    fs::write(dir.path().join("a.json"), r#"["3","5"]"#).unwrap();
    let output = pqhom(
        dir.path(),
        &["char-series", "--functional", "f.json", "--algebra", "A.json", "--element", "a.json", "--order", "4"],
    );
    assert_eq!(output.status.code(), Some(0));
    // (1+3z)/(1+5z) expanded exactly
    assert!(stdout(&output).contains("1, -2, 10, -50, 250"));
}

#[test]
fn recover_round_trips_through_the_emitted_file() {
    let dir = fixtures();
    let output = pqhom(
        dir.path(),
        &["recover", "--functional", "f.json", "--algebra", "A.json", "--out", "cfg.json"],
    );
    assert_eq!(output.status.code(), Some(0));
    let text = fs::read_to_string(dir.path().join("cfg.json")).unwrap();
    let config = pqhom::io::parse_configuration(&text).expect("emitted configuration parses");
    assert_eq!(config.rational_type(), (1, 1));
}

#[test]
fn sym_power_emits_a_loadable_algebra() {
    let dir = fixtures();
    let output = pqhom(
        dir.path(),
        &["sym-power", "--algebra", "A.json", "--order", "2", "--out", "S.json"],
    );
    assert_eq!(output.status.code(), Some(0));
    let text = fs::read_to_string(dir.path().join("S.json")).unwrap();
    let algebra = pqhom::io::parse_algebra(&text).expect("emitted algebra parses");
    assert_eq!(algebra.dim(), 3);
}

#[test]
fn lift_emits_a_functional_on_the_power() {
    let dir = fixtures();
    fs::write(
        dir.path().join("g.json"),
        r#"{"source":"A","target":"scalar","matrix":[["1","1"]]}"#,
    )
    .unwrap();
    let output = pqhom(
        dir.path(),
        &["br-lift", "--functional", "g.json", "--algebra", "A.json", "--order", "2", "--out", "lift.json"],
    );
    assert_eq!(output.status.code(), Some(0));
    let text = fs::read_to_string(dir.path().join("lift.json")).unwrap();
    let record = pqhom::io::parse_functional(&text).expect("emitted functional parses");
    assert_eq!(record.matrix.len(), 1);
    assert_eq!(record.matrix[0].len(), 3);
}

#[test]
fn suite_all_passes_and_is_byte_deterministic() {
    let dir = fixtures();
    let first = pqhom(dir.path(), &["suite", "all", "--seed", "42", "--format", "records"]);
    assert_eq!(first.status.code(), Some(0));
    let second = pqhom(dir.path(), &["suite", "all", "--seed", "42", "--format", "records"]);
    assert_eq!(first.stdout, second.stdout);

    let text = stdout(&first);
    let mut lines = text.lines();
    let header = lines.next().expect("header record");
    assert!(header.contains("\"seed\":42"));
    assert!(header.contains("\"failed\":0"));
    // records arrive sorted by case id
    let ids: Vec<&str> = lines
        .map(|l| {
            let start = l.find("\"case\":\"").expect("case field") + 8;
            &l[start..start + l[start..].find('"').unwrap()]
        })
        .collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn suite_output_varies_with_the_seed_but_prints_it_either_way() {
    let dir = fixtures();
    let a = pqhom(dir.path(), &["suite", "classify", "--seed", "1"]);
    let b = pqhom(dir.path(), &["suite", "classify", "--seed", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    assert!(stdout(&a).starts_with("suite classify (seed 1)"));
    assert!(stdout(&b).starts_with("suite classify (seed 2)"));
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn malformed_input_exits_two() {
    let dir = fixtures();
    fs::write(dir.path().join("bad.json"), "not json").unwrap();
    let output = pqhom(dir.path(), &["classify", "--functional", "bad.json"]);
    assert_eq!(output.status.code(), Some(2));

    let missing = pqhom(dir.path(), &["classify", "--functional", "nowhere.json"]);
    assert_eq!(missing.status.code(), Some(2));

    let unknown = pqhom(dir.path(), &["suite", "nosuch"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn liouville_rejects_grassmann_matrices() {
    let dir = fixtures();
    fs::write(
        dir.path().join("G.json"),
        r#"{"p":1,"q":1,"ring":"grassmann:2","blocks":{"a00":[[[{"generators":[],"coeff":"1"}]]],"a01":[[[]]],"a10":[[[]]],"a11":[[[{"generators":[],"coeff":"1"}]]]}}"#,
    )
    .unwrap();
    let output = pqhom(dir.path(), &["super", "liouville", "--matrix", "G.json"]);
    assert_eq!(output.status.code(), Some(2));
}
