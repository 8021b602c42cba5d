//! End-to-end tests for the `mvtop` binary: exit-code contract, witnesses,
//! JSON report shape and determinism, artifact round trips.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .display()
        .to_string()
}

fn mvtop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mvtop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn sober_paper3_is_exit_1_with_the_collision_witness() {
    let out = mvtop(&["sober", &fixture("paper3.json")]);
    assert_eq!(exit_code(&out), 1, "{}", stderr(&out));
    assert!(stdout(&out).contains("eta(y) = eta(z)"), "{}", stdout(&out));
}

#[test]
fn sober_disc2_is_exit_0_qualified_over_l2() {
    let out = mvtop(&["sober", &fixture("disc2.json")]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("over-L2"), "{}", stdout(&out));
    assert!(stdout(&out).contains("2 points"), "{}", stdout(&out));
}

#[test]
fn triangles_pass_on_spaces_and_frames() {
    for file in [
        "paper3.json",
        "disc2.json",
        "onept.json",
        "indiscrete3.json",
        "f3.json",
        "f4.json",
    ] {
        let out = mvtop(&["triangles", &fixture(file)]);
        assert_eq!(exit_code(&out), 0, "{file}: {}", stdout(&out));
    }
}

#[test]
fn spatial_verdicts_and_witnesses() {
    let out = mvtop(&["spatial", &fixture("f4.json"), "--codomain", "10"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stdout(&out).contains("(m, top)"), "{}", stdout(&out));
    assert!(stdout(&out).contains("over-L10"), "{}", stdout(&out));

    let out = mvtop(&["spatial", &fixture("f3.json")]);
    assert_eq!(exit_code(&out), 0);

    // A space file is accepted too: its frame of opens is spatial.
    let out = mvtop(&["spatial", &fixture("paper3.json")]);
    assert_eq!(exit_code(&out), 0, "{}", stdout(&out));
}

#[test]
fn points_lists_the_forced_assignment() {
    let out = mvtop(&["points", &fixture("f3.json")]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("1 points"), "{text}");
    assert!(text.contains("m -> 1/2"), "{text}");
}

#[test]
fn generate_emits_a_reparsable_deterministic_artifact() {
    let first = mvtop(&["generate", &fixture("paper3.json")]);
    assert_eq!(exit_code(&first), 0, "{}", stderr(&first));
    let second = mvtop(&["generate", &fixture("paper3.json")]);
    assert_eq!(first.stdout, second.stdout, "artifact is not deterministic");
    assert!(stderr(&first).contains("10 opens"), "{}", stderr(&first));

    // Write/read round trip: the emitted opens form parses to the same space.
    let dir = tempfile::tempdir().unwrap();
    let emitted = dir.path().join("paper3_opens.json");
    std::fs::write(&emitted, &first.stdout).unwrap();
    let reparsed = mvtop(&["generate", emitted.to_str().unwrap()]);
    assert_eq!(exit_code(&reparsed), 0, "{}", stderr(&reparsed));
    assert_eq!(
        first.stdout, reparsed.stdout,
        "round trip changed the opens"
    );
}

#[test]
fn check_reports_violations_while_strict_commands_reject() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("not_closed.json");
    std::fs::write(
        &path,
        r#"{
            "carrier": ["x", "y", "z"],
            "chain_denominator": 10,
            "D": "boolean",
            "opens": [
                {"x": "0", "y": "0", "z": "0"},
                {"x": "1/2", "y": "3/5", "z": "3/5"},
                {"x": "1", "y": "1", "z": "1"}
            ]
        }"#,
    )
    .unwrap();
    let path = path.to_str().unwrap();

    let check = mvtop(&["check", path]);
    assert_eq!(exit_code(&check), 1, "{}", stdout(&check));
    assert!(stdout(&check).contains("mul-closed"), "{}", stdout(&check));

    let sober = mvtop(&["sober", path]);
    assert_eq!(exit_code(&sober), 2, "{}", stdout(&sober));
    assert!(stderr(&sober).contains("violates the topology axioms"));
}

#[test]
fn frame_check_reports_violations_while_strict_commands_reject() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken_frame.json");
    let broken = std::fs::read_to_string(fixture("f3.json"))
        .unwrap()
        .replace(
            "\"times\": [\n    [\"bot\", \"bot\", \"bot\"],\n    [\"bot\", \"bot\", \"m\"],\n    [\"bot\", \"m\", \"top\"]\n  ]",
            "\"times\": [\n    [\"bot\", \"bot\", \"bot\"],\n    [\"bot\", \"bot\", \"top\"],\n    [\"bot\", \"top\", \"top\"]\n  ]",
        );
    assert!(broken.contains("\"top\", \"top\""), "replacement failed");
    std::fs::write(&path, broken).unwrap();
    let path = path.to_str().unwrap();

    let check = mvtop(&["frame-check", path]);
    assert_eq!(exit_code(&check), 1, "{}", stdout(&check));

    let points = mvtop(&["points", path]);
    assert_eq!(exit_code(&points), 2);
    assert!(stderr(&points).contains("violates the D-frame laws"));
}

#[test]
fn input_errors_are_exit_2_with_distinct_messages() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| -> String {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.display().to_string()
    };

    let out_of_range = write(
        "range.json",
        r#"{"carrier": ["x"], "chain_denominator": 10, "D": "boolean",
            "generators": {"g": {"x": "2/1"}}}"#,
    );
    let out = mvtop(&["sober", &out_of_range]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("outside [0,1]"), "{}", stderr(&out));

    let unknown_key = write(
        "unknown.json",
        r#"{"points": ["x"], "chain_denominator": 10, "D": "boolean", "opens": []}"#,
    );
    let out = mvtop(&["sober", &unknown_key]);
    assert_eq!(exit_code(&out), 2);

    let bad_d = write(
        "bad_d.json",
        r#"{"carrier": ["x"], "chain_denominator": 10, "D": ["1/2", "1"],
            "generators": {}}"#,
    );
    let out = mvtop(&["sober", &bad_d]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("subquantale"), "{}", stderr(&out));

    let out = mvtop(&["sober", "no_such_file.json"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn json_reports_are_shaped_and_byte_identical() {
    let first = mvtop(&["sober", &fixture("paper3.json"), "--json"]);
    assert_eq!(exit_code(&first), 1);
    let second = mvtop(&["sober", &fixture("paper3.json"), "--json"]);
    assert_eq!(first.stdout, second.stdout, "reports differ across runs");

    let report: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(report["command"], "sober");
    assert_eq!(report["passed"], false);
    assert_eq!(report["qualifier"], serde_json::Value::Null);
    assert!(report["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .any(|w| w.as_str().unwrap().contains("eta(y) = eta(z)")));
    assert_eq!(report["elapsed_ms"], serde_json::Value::Null);
    let digest = report["inputs"][0]["sha256"].as_str().unwrap();
    assert_eq!(digest.len(), 64);

    // Round trip: the JSON parses back to an equal value.
    let reprinted = serde_json::to_string_pretty(&report).unwrap();
    let reparsed: serde_json::Value = serde_json::from_str(&reprinted).unwrap();
    assert_eq!(report, reparsed);

    // Timing is opt-in.
    let timed = mvtop(&["sober", &fixture("paper3.json"), "--json", "--timing"]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&timed)).unwrap();
    assert!(report["elapsed_ms"].is_u64(), "{}", stdout(&timed));

    // Positive verdicts carry the qualifier.
    let sober = mvtop(&["sober", &fixture("disc2.json"), "--json"]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&sober)).unwrap();
    assert_eq!(report["qualifier"], "over-L2");
}

#[test]
fn op_check_accepts_the_shipped_tables() {
    let out = mvtop(&["op-check", &fixture("paper3_interior.json")]);
    assert_eq!(exit_code(&out), 0, "{}", stdout(&out));
    let out = mvtop(&["op-check", &fixture("paper3_nbhd.json")]);
    assert_eq!(exit_code(&out), 0, "{}", stdout(&out));
    // The kinds are interchangeable readings of the same table data.
    let out = mvtop(&[
        "op-check",
        &fixture("paper3_interior.json"),
        "--kind",
        "nbhd",
    ]);
    assert_eq!(exit_code(&out), 0, "{}", stdout(&out));
}

#[test]
fn operator_tables_match_the_shipped_fixtures_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("interior.json");
    let run = mvtop(&[
        "interior",
        &fixture("paper3.json"),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&run), 0);
    let generated = std::fs::read_to_string(&out_path).unwrap();
    let shipped = std::fs::read_to_string(fixture("paper3_interior.json")).unwrap();
    assert_eq!(generated.trim_end(), shipped.trim_end());

    let out_path = dir.path().join("nbhd.json");
    let run = mvtop(&[
        "nbhd",
        &fixture("paper3.json"),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&run), 0);
    let generated = std::fs::read_to_string(&out_path).unwrap();
    let shipped = std::fs::read_to_string(fixture("paper3_nbhd.json")).unwrap();
    assert_eq!(generated.trim_end(), shipped.trim_end());
}

#[test]
fn interior_and_nbhd_single_set_queries() {
    let out = mvtop(&["interior", &fixture("paper3.json"), "x=1/2,y=7/10,z=7/10"]);
    assert_eq!(exit_code(&out), 0);
    assert!(
        stdout(&out).contains("interior: x=1/2,y=3/5,z=3/5"),
        "{}",
        stdout(&out)
    );

    let out = mvtop(&["nbhd", &fixture("paper3.json"), "x=1/2,y=3/5,z=3/5"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("mu_x = 1/2"), "{text}");
    assert!(text.contains("mu_y = 3/5"), "{text}");

    let out = mvtop(&[
        "nbhd",
        &fixture("paper3.json"),
        "x=1,y=1,z=1",
        "--point",
        "y",
    ]);
    let text = stdout(&out);
    assert!(text.contains("mu_y = 1 (neighbourhood)"), "{text}");
    assert!(!text.contains("mu_x"), "{text}");

    // Values outside the chain are input errors.
    let out = mvtop(&["interior", &fixture("paper3.json"), "x=1/3,y=0,z=0"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn continuity_checks_from_the_command_line() {
    let paper3 = fixture("paper3.json");
    let out = mvtop(&["continuous", &paper3, &paper3, "x=x,y=z,z=y"]);
    assert_eq!(exit_code(&out), 0);
    let out = mvtop(&["continuous", &paper3, &paper3, "x=x,y=x,z=x"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stdout(&out).contains("witness"), "{}", stdout(&out));
    let out = mvtop(&["continuous", &paper3, &paper3, "x=x"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn points_on_a_space_uses_omega() {
    let out = mvtop(&["points", &fixture("paper3.json")]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("2 points"), "{text}");
    assert!(text.contains("over-L10"), "{text}");
}
