use std::io::Write;
use std::process::{Command as Proc, Stdio};

use serde_json::Value;
use wittlab::{exit, parse_request, print_request, run, run_fixture, Command, FieldSpec};

fn wittlab(args: &[&str], stdin: &str) -> (Value, i32, Vec<u8>) {
    let mut child = Proc::new(env!("CARGO_BIN_EXE_wittlab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn wittlab");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (v, out.status.code().unwrap_or(-1), out.stdout)
}

#[test]
fn printed_requests_parse_back() {
    let argvs: &[&[&str]] = &[
        &["wittlab", "depth", "[1, t^-1]"],
        &["wittlab", "--field", "q2", "--precision", "40", "symbol", "<1, 1>", "<2>"],
        &["wittlab", "--field", "f2m-laurent:m=3", "canonical", "[t^-1, 1]"],
        &["wittlab", "--field", "f2x-laurent", "--degree-cap", "20", "equal", "[1, x*t^-2]", "-[1, x*t^-2]"],
        &["wittlab", "enumerate-q2"],
        &["wittlab", "example:2"],
        &["wittlab", "--fixture", "example:3"],
        &["wittlab", "--json-out", "/tmp/o.json", "depth"],
    ];
    for argv in argvs {
        let r = parse_request(argv.iter().copied()).unwrap();
        let again = parse_request(print_request(&r)).unwrap();
        assert_eq!(r, again, "{argv:?}");
    }
}

#[test]
fn field_specs_accept_json_and_aliases() {
    assert_eq!("q2".parse::<FieldSpec>(), Ok(FieldSpec::Q2));
    assert_eq!("f2m-laurent:m=1".parse::<FieldSpec>(), Ok(FieldSpec::F2Laurent));
    assert_eq!(
        r#"{"kind":"laurent","residue":{"kind":"rational","m":2}}"#.parse::<FieldSpec>(),
        Ok(FieldSpec::F2mxLaurent(2))
    );
    assert!("f2m-laurent:m=17".parse::<FieldSpec>().is_err());
    assert!("reals".parse::<FieldSpec>().is_err());
}

#[test]
fn bad_arguments_are_rejected() {
    assert!(parse_request(["wittlab", "equal", "[1, t]"]).is_err());
    assert!(parse_request(["wittlab", "example", "4"]).is_err());
    assert!(parse_request(["wittlab"]).is_err());
    assert!(parse_request(["wittlab", "--fixture", "example:1", "depth"]).is_err());
}

#[test]
fn depth_of_a_literal() {
    let r = parse_request(["wittlab", "depth", "[1, t^-1]"]).unwrap();
    let (v, code) = run(&r, None);
    assert_eq!(code, exit::OK);
    assert_eq!(v["results"][0]["eps"], "1/2");
    assert_eq!(v["field"]["name"], "F2((t))");
}

#[test]
fn syntax_errors_report_their_position() {
    let (v, code, _) = wittlab(&["depth", "[1,,t]"], "");
    assert_eq!(code, exit::SYNTAX);
    let e = &v["results"][0]["error"];
    assert_eq!(e["kind"], "syntax");
    assert_eq!(e["line"], 1);
    assert_eq!(e["column"], 4);
}

#[test]
fn batch_lines_keep_their_numbers() {
    let input = "# depths\n[1, t^-1]\n\n[t, t^-1]\n[1,,t]\n";
    let (v, code, _) = wittlab(&["depth"], input);
    assert_eq!(code, exit::SYNTAX);
    let res = v["results"].as_array().unwrap();
    assert_eq!(res.len(), 3);
    assert_eq!((res[0]["line"].clone(), res[0]["eps"].clone()), (2.into(), "1/2".into()));
    assert_eq!((res[1]["line"].clone(), res[1]["eps"].clone()), (4.into(), "0".into()));
    assert_eq!(res[2]["error"]["line"], 5);
}

#[test]
fn equality_in_batch_and_on_the_command_line() {
    let (v, code, _) = wittlab(&["equal"], "[1, t^-2] ; [1, t^-1]\n[1, t^-1] ; [1, 1]\n");
    assert_eq!(code, exit::OK);
    assert_eq!(v["results"][0]["equal"], true);
    assert_eq!(v["results"][1]["equal"], false);
    let (v, code, _) = wittlab(&["--field", "q2", "equal", "<1, 1>", "[1, 1/2]"], "");
    assert_eq!(code, exit::OK);
    assert_eq!(v["results"][0]["status"], "equal");
}

#[test]
fn missing_separator_is_a_syntax_error() {
    let (v, code, _) = wittlab(&["equal"], "[1, t^-1]\n");
    assert_eq!(code, exit::SYNTAX);
    assert_eq!(v["results"][0]["error"]["kind"], "syntax");
}

#[test]
fn canonical_needs_a_perfect_residue_field() {
    let (v, code, _) = wittlab(&["--field", "f2x-laurent", "--precision", "16", "canonical", "[1, x*t^-2]"], "");
    assert_eq!(code, exit::UNSUPPORTED, "{v}");
    let (_, code, _) = wittlab(&["canonical", "[1+t, t^-1+t]"], "");
    assert_eq!(code, exit::OK);
}

#[test]
fn fixtures_pass() {
    for n in 1..=3 {
        let (v, ok) = run_fixture(n, Some(16));
        assert!(ok, "{v}");
    }
}

#[test]
fn enumeration_lists_thirty_two_classes() {
    let r = parse_request(["wittlab", "enumerate-q2"]).unwrap();
    assert_eq!(r.command, Command::EnumerateQ2);
    let (v, code) = run(&r, None);
    assert_eq!(code, exit::OK);
    assert_eq!(v["result"]["size"], 32);
    assert_eq!(v["result"]["addition"].as_array().map(Vec::len), Some(32));
}

#[test]
fn output_is_deterministic() {
    let args = ["--field", "q2", "symbol", "<1, 1>", "<2, 3, 5>", "[1/2, 4]"];
    let (_, c1, a) = wittlab(&args, "");
    let (_, c2, b) = wittlab(&args, "");
    assert_eq!((c1, c2), (exit::OK, exit::OK));
    assert_eq!(a, b);
}

#[test]
fn json_out_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("wittlab-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let (_, code, stdout) = wittlab(&["--json-out", path.to_str().unwrap(), "depth", "[1, t^-1]"], "");
    assert_eq!(code, exit::OK);
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}
