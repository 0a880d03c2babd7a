use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use char2q::fields::FieldDescriptor;
use serde_json::Value;

const UPDATE_ENV: &str = "CHAR2Q_UPDATE_GOLDEN";

fn char2q(args: &[&str]) -> Output {
    char2q_env(args, &[])
}

fn char2q_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_char2q"));
    cmd.args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .env_remove("CHAR2Q_MAX_WINDOW");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join(name)
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

/// Compare stdout with `tests/golden/<name>.json`; set CHAR2Q_UPDATE_GOLDEN to
/// rewrite the file instead.
fn golden(name: &str, out: &Output) -> Value {
    let path = data("golden").join(format!("{name}.json"));
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    if std::env::var_os(UPDATE_ENV).is_some() {
        fs::write(&path, &text).unwrap();
    }
    let expected = fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{}: {e} (run with {UPDATE_ENV}=1)", path.display()));
    assert_eq!(text, expected, "output differs from {}", path.display());
    let doc = stdout_json(out);
    check_schema(&doc);
    assert_round_trip(&doc);
    doc
}

fn check_schema(doc: &Value) {
    let obj = doc.as_object().expect("top level is an object");
    for key in ["command", "field", "inputs", "result"] {
        assert!(obj.contains_key(key), "missing {key}");
    }
    for key in obj.keys() {
        assert!(
            [
                "command",
                "field",
                "inputs",
                "result",
                "report",
                "method",
                "degenerate"
            ]
            .contains(&key.as_str()),
            "unexpected key {key}"
        );
    }
    assert!(doc["command"].is_string());
    // Only a selftest over its default fields has no single field.
    assert!(doc["field"].is_string() || (doc["command"] == "selftest" && doc["field"].is_null()));
    if let Some(report) = obj.get("report") {
        assert!(report["all_pass"].is_boolean());
        for check in report["checks"].as_array().expect("checks array") {
            assert!(check["name"].is_string() && check["passed"].is_boolean());
        }
    }
}

/// Every element string in the document: presentation slots, coordinate
/// lists, slots and witness vectors.
fn element_strings(v: &Value, key: Option<&str>, acc: &mut Vec<String>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                element_strings(x, Some(k), acc);
            }
        }
        Value::Array(xs) => {
            for x in xs {
                match (key, x) {
                    (Some("coords" | "witness"), Value::String(s)) => acc.push(s.clone()),
                    _ => element_strings(x, key, acc),
                }
            }
        }
        Value::String(s) if matches!(key, Some("a" | "b" | "slot" | "a1" | "b1" | "a2" | "b2")) => {
            acc.push(s.clone())
        }
        _ => {}
    }
}

fn assert_round_trip(doc: &Value) {
    let Some(field) = doc["field"].as_str() else {
        return;
    };
    let desc: FieldDescriptor = field.parse().unwrap();
    let mut strings = Vec::new();
    element_strings(&doc["result"], None, &mut strings);
    for s in strings {
        let x = desc
            .parse(&s)
            .unwrap_or_else(|e| panic!("{s:?} does not parse: {e}"));
        assert_eq!(x.to_string(), s, "printing is not canonical");
        assert_eq!(desc.parse(&x.to_string()).unwrap(), x);
    }
}

fn assert_usage_error(out: &Output) {
    assert_eq!(
        out.status.code(),
        Some(2),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(
        out.stdout.is_empty(),
        "stdout: {}",
        String::from_utf8_lossy(&out.stdout)
    );
    assert!(!out.stderr.is_empty());
}

const F2T32: &str = "laurent(gf(2),prec=32)";
const F2T16: &str = "laurent(gf(2),prec=16)";
const WITNESS: &str = "tests/data/bil_witness.json";

#[test]
fn symbol_inv_nonsplit() {
    let out = char2q(&[
        "symbol", "inv", "--field", F2T32, "--kind", "as", "--a", "1", "--b", "t",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = golden("symbol_inv", &out);
    assert_eq!(doc["result"]["invariant"], 1);
    assert_eq!(doc["result"]["method"], "residue");
}

#[test]
fn symbol_inv_bil() {
    let out = char2q(&[
        "symbol", "inv", "--field", F2T32, "--kind", "bil", "--a", "t", "--b", "t^-1+t^2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    golden("symbol_inv_bil", &out);
}

#[test]
fn symbol_inv_zero_b_needs_convention() {
    let args = [
        "symbol", "inv", "--field", F2T32, "--kind", "as", "--a", "1", "--b", "0",
    ];
    let out = char2q(&args);
    assert_usage_error(&out);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--convention"));
    let mut with = args.to_vec();
    with.push("--convention");
    let out = char2q(&with);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["result"]["invariant"], 0);
    assert_eq!(doc["result"]["method"], "convention");
}

#[test]
fn slot_common_b_split_ambient_is_degenerate() {
    let out = char2q(&[
        "slot", "common-b", "--field", "gf(4)", "--a1", "1", "--b1", "1", "--a2", "w", "--b2",
        "w+1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = golden("slot_common_b", &out);
    assert_eq!(doc["degenerate"], true);
    assert_eq!(doc["result"]["slot"], "1");
    assert!(doc["report"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
}

#[test]
fn slot_common_a_raw() {
    let out = char2q(&[
        "slot", "common-a", "--field", F2T16, "--a1", "1", "--b1", "t", "--a2", "1+t+t^2", "--b2",
        "t",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = golden("slot_common_a", &out);
    assert_eq!(doc["degenerate"], false);
}

#[test]
fn slot_raw_class_mismatch_fails_verification() {
    let out = char2q(&[
        "slot", "common-b", "--field", F2T16, "--a1", "1", "--b1", "t", "--a2", "t", "--b2", "t",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc = stdout_json(&out);
    check_schema(&doc);
    assert!(doc["result"]["slot"].is_null());
    let checks = doc["report"]["checks"].as_array().unwrap();
    assert!(checks
        .iter()
        .any(|c| c["name"] == "equal_class" && c["passed"] == false));
}

#[test]
fn slot_witness_file() {
    let out = char2q(&[
        "slot",
        "common-a-bil",
        "--field",
        F2T16,
        "--witness-file",
        WITNESS,
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc = golden("slot_common_a_bil", &out);
    assert_eq!(doc["result"]["theorem"], "common-a-bil");
}

#[test]
fn witness_file_errors_are_usage_errors() {
    let file = data("data").join("bil_witness.json");
    let path = file.to_str().unwrap();
    assert_usage_error(&char2q(&[
        "slot",
        "common-b",
        "--field",
        F2T16,
        "--witness-file",
        path,
    ]));
    assert_usage_error(&char2q(&[
        "slot",
        "common-a-bil",
        "--field",
        F2T32,
        "--witness-file",
        path,
    ]));
    assert_usage_error(&char2q(&[
        "slot",
        "common-a-bil",
        "--field",
        F2T16,
        "--witness-file",
        "/nonexistent.json",
    ]));

    let dir = std::env::temp_dir().join(format!("char2q-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    doc["extra"] = Value::Bool(true);
    let bad = dir.join("extra.json");
    fs::write(&bad, doc.to_string()).unwrap();
    assert_usage_error(&char2q(&[
        "slot",
        "common-a-bil",
        "--field",
        F2T16,
        "--witness-file",
        bad.to_str().unwrap(),
    ]));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn oracle_isotropy() {
    let out = char2q(&[
        "oracle", "isotropy", "--field", F2T16, "--a", "t", "--b", "t", "--window", "-1,1,2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = golden("oracle_isotropy", &out);
    assert_eq!(doc["result"]["found"], true);

    let out = char2q(&[
        "oracle", "isotropy", "--field", F2T16, "--a", "1", "--b", "t", "--window", "-1,1,2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["result"]["found"], false);
}

#[test]
fn oracle_isotropy_brute_agrees() {
    let base = [
        "oracle", "isotropy", "--field", "gf(4)", "--a", "w", "--b", "1",
    ];
    let fast = stdout_json(&char2q(&base));
    let mut brute_args = base.to_vec();
    brute_args.push("--brute");
    let brute = stdout_json(&char2q(&brute_args));
    assert_eq!(fast["result"]["found"], true);
    assert_eq!(brute["result"]["found"], true);
}

#[test]
fn oracle_cross_validate() {
    let out = char2q(&["oracle", "cross-validate", "--field", "gf(4)"]);
    assert_eq!(out.status.code(), Some(0));
    golden("oracle_cross_validate", &out);
}

#[test]
fn selftest_is_deterministic() {
    let args = ["selftest", "--field", "gf(4)", "--seed", "3"];
    let out = char2q(&args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let doc = golden("selftest", &out);
    assert_eq!(doc["result"]["failures"], 0);
    assert_eq!(char2q(&args).stdout, out.stdout);

    let out = char2q(&["selftest", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    check_schema(&doc);
    assert!(doc["field"].is_null());
}

#[test]
fn compact_json_flag() {
    let out = char2q(&[
        "symbol", "inv", "--json", "--field", F2T32, "--kind", "as", "--a", "1", "--b", "t",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1);
    let pretty = char2q(&[
        "symbol", "inv", "--field", F2T32, "--kind", "as", "--a", "1", "--b", "t",
    ]);
    assert_eq!(
        serde_json::from_str::<Value>(&text).unwrap(),
        stdout_json(&pretty)
    );
}

#[test]
fn prec_override() {
    let out = char2q(&[
        "symbol", "inv", "--field", F2T32, "--prec", "8", "--kind", "as", "--a", "1", "--b", "t",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["field"], "laurent(gf(2),prec=8)");
    assert_usage_error(&char2q(&[
        "symbol", "inv", "--field", "gf(4)", "--prec", "8", "--kind", "as", "--a", "1", "--b", "1",
    ]));
    assert_usage_error(&char2q(&[
        "symbol", "inv", "--field", F2T32, "--prec", "0", "--kind", "as", "--a", "1", "--b", "t",
    ]));
}

#[test]
fn usage_errors() {
    let cases: &[&[&str]] = &[
        &[],
        &["symbol"],
        &["symbol", "inv", "--kind", "as", "--a", "1", "--b", "t"],
        &[
            "symbol", "inv", "--field", "gf(3)", "--kind", "as", "--a", "1", "--b", "1",
        ],
        &[
            "symbol", "inv", "--field", "gf(4)", "--kind", "xx", "--a", "1", "--b", "1",
        ],
        &[
            "symbol", "inv", "--field", "gf(4)", "--kind", "as", "--a", "t", "--b", "1",
        ],
        &[
            "symbol", "inv", "--field", F2T32, "--kind", "as", "--a", "1+", "--b", "t",
        ],
        &[
            "slot", "common-b", "--field", "gf(4)", "--a1", "1", "--b1", "1",
        ],
        &["slot", "common-b", "--field", "gf(4)"],
        &[
            "oracle", "isotropy", "--field", "gf(4)", "--a", "1", "--b", "1", "--window", "1,0",
        ],
        &[
            "oracle",
            "cross-validate",
            "--field",
            "gf(4)",
            "--window",
            "wide",
        ],
        &["selftest", "--seed", "x"],
    ];
    for args in cases {
        let out = char2q(args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn help_goes_to_stdout() {
    let out = char2q(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("selftest"));
}

#[test]
fn max_window_caps_enumeration() {
    let args = [
        "oracle", "isotropy", "--field", F2T16, "--a", "1", "--b", "t",
    ];
    let out = char2q_env(&args, &[("CHAR2Q_MAX_WINDOW", "100")]);
    assert_usage_error(&out);
    assert!(String::from_utf8_lossy(&out.stderr).contains("CHAR2Q_MAX_WINDOW"));
    let out = char2q_env(&args, &[("CHAR2Q_MAX_WINDOW", "lots")]);
    assert_usage_error(&out);
    let small = [
        "oracle", "isotropy", "--field", "gf(4)", "--a", "1", "--b", "1",
    ];
    assert_eq!(
        char2q_env(&small, &[("CHAR2Q_MAX_WINDOW", "100")])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn in_process_run_matches_binary() {
    let args = [
        "char2q", "symbol", "inv", "--field", F2T32, "--kind", "bil", "--a", "t", "--b", "t^-1+t^2",
    ];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = char2q::cli::run(args, &mut out, &mut err);
    assert_eq!(code, 0);
    assert!(err.is_empty());
    assert_eq!(out, char2q(&args[1..]).stdout);
}
