use std::process::{Command, Output};

use unimap_cli::parse_csv;

fn unimap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unimap"))
        .args(args)
        .env_remove("UNIMAP_ORACLE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const METHODS: [&str; 7] = [
    "lehman-walsh",
    "odd-cycles",
    "convolution",
    "hz-coeff",
    "hz-rec",
    "chapuy",
    "oracle",
];

#[test]
fn chapuy_csv_ends_with_a_12_6() {
    let out = unimap(&["table", "--n-max", "12", "--method", "chapuy"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("n,g,value,method\n1,0,1,chapuy\n"));
    assert!(text.ends_with("\n12,6,24325703325,chapuy\n"));
}

#[test]
fn oracle_json_small() {
    let out = unimap(&["table", "--n-max", "2", "--method", "oracle", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        v,
        serde_json::json!([
            {"n": 1, "g": 0, "value": "1", "method": "oracle"},
            {"n": 2, "g": 0, "value": "2", "method": "oracle"},
            {"n": 2, "g": 1, "value": "1", "method": "oracle"}
        ])
    );
}

#[test]
fn methods_differ_only_in_method_column() {
    let strip = |m: &str| {
        let out = unimap(&["table", "--n-max", "7", "--method", m]);
        assert_eq!(out.status.code(), Some(0), "{m}");
        parse_csv(&stdout(&out))
            .unwrap()
            .into_iter()
            .map(|r| {
                assert_eq!(r.method, m);
                (r.n, r.g, r.value)
            })
            .collect::<Vec<_>>()
    };
    let reference = strip(METHODS[0]);
    for m in &METHODS[1..] {
        assert_eq!(strip(m), reference, "{m}");
    }
}

#[test]
fn poly_forms_agree() {
    let hz = stdout(&unimap(&["poly", "--n", "5", "--form", "hz"]));
    assert_eq!(hz, "2:483\n4:420\n6:42\n");
    for form in ["new", "stanley"] {
        assert_eq!(stdout(&unimap(&["poly", "--n", "5", "--form", form])), hz);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(unimap(&["table", "--n-max", "0", "--method", "hz-rec"]).status.code(), Some(2));
    assert_eq!(unimap(&["table", "--method", "hz-rec"]).status.code(), Some(2));
    assert_eq!(unimap(&["table", "--n-max", "3", "--method", "bogus"]).status.code(), Some(2));
    assert_eq!(unimap(&["table", "--n-max", "10", "--method", "oracle"]).status.code(), Some(3));
    assert_eq!(unimap(&["verify", "--suite", "identities", "--n-max", "12"]).status.code(), Some(0));
}

#[test]
fn oracle_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_unimap"))
        .args(["table", "--n-max", "5", "--method", "oracle"])
        .env("UNIMAP_ORACLE_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
