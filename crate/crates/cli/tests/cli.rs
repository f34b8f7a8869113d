use std::path::PathBuf;
use std::process::Command;

fn scenario(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/scenarios")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn hourglass(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hourglass"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hourglass-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn verify_tcpip_reports_no_violations() {
    let (code, out, _) = hourglass(&["verify", &scenario("tcpip.hgl")]);
    assert_eq!(code, 0);
    assert!(out.contains("0 violations"), "{out}");
}

#[test]
fn weaker_verdicts_drive_exit_code() {
    let tcpip = scenario("tcpip.hgl");
    let (code, out, _) = hourglass(&["weaker", &tcpip, "IP_DATAGRAM", "IP_RELIABLE"]);
    assert_eq!((code, out.lines().next()), (0, Some("true")));
    let (code, out, _) = hourglass(&["weaker", &tcpip, "IP_RELIABLE", "IP_DATAGRAM"]);
    assert_eq!((code, out.as_str()), (1, "false\n"));
}

#[test]
fn entails_is_the_converse_of_weaker() {
    let tcpip = scenario("tcpip.hgl");
    assert_eq!(hourglass(&["entails", &tcpip, "IP_RELIABLE", "IP_DATAGRAM"]).0, 0);
    assert_eq!(hourglass(&["entails", &tcpip, "IP_DATAGRAM", "IP_RELIABLE"]).0, 1);
}

#[test]
fn generic_fails_when_a_zero_loss_weakening_exists() {
    let (code, out, _) = hourglass(&["generic", &scenario("tcpip.hgl"), "IP_RELIABLE", "--epsilon", "0.5"]);
    assert_eq!(code, 1);
    assert!(out.contains("IP_DATAGRAM (loss 0)"), "{out}");
    let (code, _, _) = hourglass(&["generic", &scenario("tcpip.hgl"), "IP_DATAGRAM", "--epsilon", "0.5"]);
    assert_eq!(code, 0);
}

#[test]
fn generic_requires_epsilon() {
    let (code, _, err) = hourglass(&["generic", &scenario("tcpip.hgl"), "IP_RELIABLE"]);
    assert_eq!(code, 2);
    assert!(err.contains("--epsilon"), "{err}");
}

#[test]
fn generic_json_names_the_reading() {
    let (code, out, _) = hourglass(&[
        "--format",
        "json",
        "generic",
        &scenario("unix_fork.hgl"),
        "FACTORED_KERNEL",
        "--epsilon",
        "1",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["generic"], true);
    assert!(v["reading"].as_str().unwrap().contains("loss"));
    assert_eq!(v["candidate_space"], "declared");
}

#[test]
fn minimal_with_and_without_closure() {
    let unix = scenario("unix_fork.hgl");
    assert_eq!(hourglass(&["minimal", &unix, "FACTORED_KERNEL"]).0, 0);
    let (code, out, _) = hourglass(&["minimal", &unix, "MONOLITHIC_SPAWN"]);
    assert_eq!(code, 1);
    assert!(out.contains("FACTORED_KERNEL"), "{out}");
    let (_, out, _) = hourglass(&["minimal", &unix, "FACTORED_KERNEL", "--closure"]);
    assert!(out.contains("candidates: closure"), "{out}");
}

#[test]
fn sufficient_lists_witnesses() {
    let (code, out, _) = hourglass(&["sufficient", &scenario("tcpip.hgl"), "IP_DATAGRAM"]);
    assert_eq!(code, 0);
    assert!(out.contains("RELIABLE_STREAM: covered via TCP"), "{out}");
    let (code, out, _) = hourglass(&["sufficient", &scenario("tcpip.hgl"), "ETHERNET_BASIC"]);
    assert_eq!(code, 1);
    assert!(out.contains("RELIABLE_STREAM: not covered"), "{out}");
}

#[test]
fn images_in_every_format() {
    let tcpip = scenario("tcpip.hgl");
    let (code, out, _) = hourglass(&["images", &tcpip, "IP_DATAGRAM"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("pre(IP_DATAGRAM): 3 specs\n"), "{out}");
    let (_, out, _) = hourglass(&["images", &tcpip, "IP_DATAGRAM", "--all-witnesses"]);
    assert!(out.contains("RELIABLE_LINK via IP_ROUTING, IP_HOP_BY_HOP"), "{out}");
    let (_, out, _) = hourglass(&["--format", "json", "images", &tcpip, "IP_DATAGRAM"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pre"]["kind"], "PRE");
    assert_eq!(v["post"]["members"].as_array().unwrap().len(), 3);
    let (_, out, _) = hourglass(&["--format", "dot", "images", &tcpip, "IP_DATAGRAM"]);
    assert!(out.starts_with("digraph") && out.contains("[label=\"TCP\"]"), "{out}");
}

#[test]
fn lattice_formats() {
    let unix = scenario("unix_fork.hgl");
    let (_, out, _) = hourglass(&["lattice", &unix]);
    assert!(out.contains("FACTORED_KERNEL < MONOLITHIC_SPAWN"), "{out}");
    let (_, out, _) = hourglass(&["--format", "dot", "lattice", &unix]);
    assert!(out.contains("rankdir=BT"), "{out}");
    let (_, out, _) = hourglass(&["--format", "json", "lattice", &unix]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["covering"]
        .as_array()
        .unwrap()
        .iter()
        .any(|e| e["weaker"] == "FACTORED_KERNEL"));
}

#[test]
fn tradeoff_csv_matches_golden_file() {
    let golden = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden/tcpip.tradeoff.csv");
    let (code, out, _) = hourglass(&["--format", "csv", "tradeoff", &scenario("tcpip.hgl")]);
    assert_eq!(code, 0);
    assert_eq!(out, std::fs::read_to_string(golden).unwrap());
}

#[test]
fn check_json_is_the_full_report() {
    let (code, out, _) = hourglass(&["--format", "json", "check", &scenario("grid_auth.hgl")]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for key in ["universe", "lattice", "images", "tradeoff", "verification"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["universe"]["name"], "grid_auth");
}

#[test]
fn output_is_deterministic_and_out_writes_a_file() {
    let args = ["--format", "json", "check", &scenario("unix_fork.hgl")];
    let (_, first, _) = hourglass(&args);
    let (_, second, _) = hourglass(&args);
    assert_eq!(first, second);
    let path = std::env::temp_dir().join(format!("hourglass-out-{}.json", std::process::id()));
    let path_s = path.to_string_lossy().into_owned();
    let (code, stdout, _) = hourglass(&[
        "--out",
        &path_s,
        "--format",
        "json",
        "check",
        &scenario("unix_fork.hgl"),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), first);
    let _ = std::fs::remove_file(path);
}

#[test]
fn engines_agree() {
    for name in ["tcpip.hgl", "unix_fork.hgl", "grid_auth.hgl"] {
        let file = scenario(name);
        let (_, a, _) = hourglass(&["--format", "json", "check", &file]);
        let (_, b, _) = hourglass(&["--engine", "dpll", "--format", "json", "check", &file]);
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn errors_exit_with_two() {
    let tcpip = scenario("tcpip.hgl");
    let (code, _, err) = hourglass(&["weaker", &tcpip, "IP_DATAGRAM", "NOPE"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown specification `NOPE`"), "{err}");
    let (code, _, err) = hourglass(&["--format", "csv", "verify", &tcpip]);
    assert_eq!(code, 2);
    assert!(err.contains("does not support"), "{err}");
    let (code, _, err) = hourglass(&["--engine", "oracle", "verify", &tcpip]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown entailment engine"), "{err}");
    let (code, _, _) = hourglass(&["verify", "/nonexistent/file.hgl"]);
    assert_eq!(code, 2);
    let (code, _, _) = hourglass(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn parse_errors_carry_positions() {
    let path = temp_file("bad.hgl", "atom a\nspec S { a & }\n");
    let (code, _, err) = hourglass(&["check", &path.to_string_lossy()]);
    assert_eq!(code, 2);
    assert!(err.contains("bad.hgl: 2:"), "{err}");
    let path = temp_file("fwd.hgl", "spec S { a }\natom a\n");
    let (code, _, err) = hourglass(&["check", &path.to_string_lossy()]);
    assert_eq!(code, 2);
    assert!(err.contains("before its declaration"), "{err}");
}

#[test]
fn vocabulary_cap_depends_on_engine() {
    let mut text = String::new();
    for i in 0..30 {
        text.push_str(&format!("atom a{i}\n"));
    }
    text.push_str("spec S { a0 & a29 }\nspec T { a0 }\n");
    let path = temp_file("wide.hgl", &text);
    let path = path.to_string_lossy();
    let (code, _, err) = hourglass(&["weaker", &path, "T", "S"]);
    assert_eq!(code, 2);
    assert!(err.contains("exceeds the limit of 24"), "{err}");
    let (code, out, _) = hourglass(&["--engine", "dpll", "weaker", &path, "T", "S"]);
    assert_eq!((code, out.lines().next()), (0, Some("true")));
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = hourglass(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("tradeoff"));
}

#[test]
fn in_process_run_matches_binary() {
    let args = ["hourglass", "verify", &scenario("grid_auth.hgl")];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = hourglass_cli::run(args, &mut out, &mut err);
    let (bin_code, bin_out, _) = hourglass(&args[1..]);
    assert_eq!((code, String::from_utf8(out).unwrap()), (bin_code, bin_out));
}
