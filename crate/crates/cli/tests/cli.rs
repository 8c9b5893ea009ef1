//! End-to-end checks of the binary: exit codes, JSON round trips, CSV
//! shape.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_groundstate"))
}

fn write_temp(name: &str, content: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join("groundstate-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

#[test]
fn classify_fixture_exits_zero_and_reports_tag() {
    let out = bin()
        .args(["--command", "classify", "--fixture", "intro:1,9/10"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["tag"], "O_k");
    assert_eq!(json["certificate_radius"], "1/30");
    assert_eq!(json["measure"]["type"], "periodic");
    assert_eq!(json["measure"]["word"], "0");
    assert_eq!(json["residual_entropy"]["lo"], "0");
    assert_eq!(json["residual_entropy"]["hi"], "0");
}

#[test]
fn undetermined_interval_input_exits_two() {
    // Overlapping interval parameters: no classification is claimed.
    let input = r#"{
      "sft": {"d": 2, "transitions": [[1,1],[1,1]], "theta": "1/2"},
      "potential": {"k": 2, "values": {
        "00": {"lo": "127/128", "hi": "129/128"},
        "01": {"lo": "127/128", "hi": "129/128"},
        "10": {"lo": "127/128", "hi": "129/128"},
        "11": "0"
      }}
    }"#;
    let path = write_temp("interval.json", input);
    let out = bin()
        .args(["--command", "classify", "--mode", "interval"])
        .arg("--input")
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "undetermined must exit 2");
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["tag"], "undetermined");
}

#[test]
fn malformed_input_exits_one() {
    let path = write_temp("broken.json", "{ not json");
    let out = bin()
        .args(["--command", "classify"])
        .arg("--input")
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    // Missing cylinders are rejected too.
    let incomplete = r#"{
      "sft": {"d": 2, "transitions": [[1,1],[1,1]], "theta": "1/2"},
      "potential": {"k": 2, "values": {"00": "1"}}
    }"#;
    let path = write_temp("incomplete.json", incomplete);
    let out = bin()
        .args(["--command", "classify"])
        .arg("--input")
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    // Exact mode refuses interval values.
    let interval = r#"{
      "sft": {"d": 2, "transitions": [[1,1],[1,1]], "theta": "1/2"},
      "potential": {"k": 1, "values": {"0": {"lo": "0", "hi": "1"}, "1": "0"}}
    }"#;
    let path = write_temp("needs_interval_mode.json", interval);
    let out = bin()
        .args(["--command", "classify", "--mode", "exact"])
        .arg("--input")
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reducible_sft_exits_one_on_pressure() {
    let input = r#"{
      "sft": {"d": 2, "transitions": [[1,1],[0,1]], "theta": "1/2"},
      "potential": {"k": 1, "values": {"0": "1", "1": "0"}}
    }"#;
    let path = write_temp("reducible.json", input);
    let out = bin()
        .args(["--command", "pressure", "--betas", "0,1"])
        .arg("--input")
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn fixture_dump_round_trips_exactly() {
    let out = bin()
        .args(["--command", "fixture", "--fixture", "intro:1,9/10"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed["potential"]["values"]["01"], "9/10");
    // Feed the dump back in: classification equals the fixture path.
    let path = write_temp("roundtrip.json", &text);
    let out2 = bin()
        .args(["--command", "classify"])
        .arg("--input")
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out2.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out2.stdout).unwrap();
    assert_eq!(json["tag"], "O_k");
    // And the dump itself round-trips through parse + re-encode.
    let reparsed: groundstate_cli::json::InputJson = serde_json::from_str(&text).unwrap();
    let (sft, phi) = groundstate_cli::json::decode_input(&reparsed, true).unwrap();
    let re = groundstate_cli::json::encode_input(&sft, &phi);
    assert_eq!(serde_json::to_value(&re).unwrap(), parsed);
}

#[test]
fn pressure_csv_has_expected_shape() {
    let out = bin()
        .args([
            "--command",
            "pressure",
            "--fixture",
            "intro:1,1",
            "--betas",
            "0,1",
            "--precision",
            "20",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "beta,P_lo,P_hi,dPm_lo,dPm_hi,dPp_lo,dPp_hi,h_lo,h_hi,flags"
    );
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "0");
    assert_eq!(first.last().unwrap(), &"ok");
    // P(0) = log 2 = 0.6931...
    assert!(first[1].starts_with("0.693147180"));
    assert!(first[2].starts_with("0.693147180"));
}

#[test]
fn anneal_csv_monotone_columns() {
    let out = bin()
        .args([
            "--command",
            "anneal",
            "--fixture",
            "intro:1,9/10",
            "--betas",
            "1,4,16",
            "--precision",
            "16",
            "--depth",
            "6",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    for row in rows {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols[5], "true", "mu monotonicity flag: {row}");
        assert_eq!(cols[6], "true", "h monotonicity flag: {row}");
        assert_eq!(cols[7], "true", "gap bound must hold on every row: {row}");
        assert!(!cols[8].is_empty(), "W1 column present when the limit is resolved");
    }
}

#[test]
fn wide_alphabet_words_round_trip() {
    // 12 symbols: words with a symbol beyond 9 are dot-separated, words
    // without are plain digit strings; both parse back.
    let d = 12;
    let w1 = groundstate_cli::json::parse_word("10.3.11", d).unwrap();
    assert_eq!(groundstate_cli::json::format_word(&w1), "10.3.11");
    let w2 = groundstate_cli::json::parse_word("012", d).unwrap();
    assert_eq!(w2.symbols(), &[0, 1, 2]);
    assert_eq!(groundstate_cli::json::format_word(&w2), "012");
    // Undotted digits parse char-wise: "12" is the word [1, 2].
    let w3 = groundstate_cli::json::parse_word("12", 12).unwrap();
    assert_eq!(w3.symbols(), &[1, 2]);
    // Out-of-range symbols are rejected.
    assert!(groundstate_cli::json::parse_word("9.12", 12).is_err());
}

#[test]
fn boundary_command_reports_bracket() {
    let out = bin()
        .args([
            "--command",
            "boundary",
            "--fixture",
            "boundary:1,9/10:1:4:1/5:1/1048576",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["t0_lo"], "1/20");
    assert_eq!(json["ell"], 4);
}
