//! Error-path behaviour of the binary: anything that is not a clean
//! verdict or report exits 2 with a message on stderr.

mod common;

use common::{golden, influence};

#[test]
fn unknown_agents_are_named_and_exit_2() {
    let net = golden("net1.json");
    let net = net.to_str().unwrap();
    let (stdout, stderr, code) = influence(&["diffuse", "--network", net, "--seed", "x,ghost"]);
    assert_eq!(code, 2);
    assert!(stdout.is_empty());
    assert!(stderr.contains("ghost"), "stderr was: {stderr}");

    let (_, stderr, code) =
        influence(&["eval", "--network", net, "--mode", "promo", "--formula", "{nobody} |>1 {z}"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("nobody"));
}

#[test]
fn missing_and_malformed_files_exit_2() {
    let (_, stderr, code) =
        influence(&["diffuse", "--network", "/nonexistent/net.json", "--seed", ""]);
    assert_eq!(code, 2);
    assert!(stderr.starts_with("error:"));

    let bad = std::env::temp_dir().join("influence_bad_net.json");
    std::fs::write(
        &bad,
        r#"{"agents": ["u"], "propensity": {"u": "oops"}, "threshold": {"u": "1"}}"#,
    )
    .unwrap();
    let (_, stderr, code) =
        influence(&["diffuse", "--network", bad.to_str().unwrap(), "--seed", ""]);
    assert_eq!(code, 2);
    assert!(stderr.contains("propensity of u"), "stderr was: {stderr}");
    std::fs::remove_file(&bad).ok();
}

#[test]
fn non_atomic_derive_queries_exit_2() {
    let hyp = golden("x_fig3.hyp.json");
    let (_, stderr, code) = influence(&[
        "derive",
        "--system",
        "promo",
        "--hypotheses",
        hyp.to_str().unwrap(),
        "--query",
        "!{a} |>1 {b}",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("atom"));
}

#[test]
fn usage_errors_exit_2() {
    let (_, _, code) = influence(&["eval", "--mode", "promo"]);
    assert_eq!(code, 2);
    let (_, _, code) = influence(&["no-such-command"]);
    assert_eq!(code, 2);
}
