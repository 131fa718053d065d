use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn volterra(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_volterra"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    // the process may exit before reading, e.g. on a usage error
    let _ = pipe.write_all(stdin.unwrap_or("").as_bytes());
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn check_golden(cmd: &str, stem: &str, ext: &str) {
    let input = golden(&format!("{stem}.expr"));
    let out = volterra(&[cmd, input.to_str().unwrap()], None);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let want = fs::read_to_string(golden(&format!("{stem}.{ext}"))).unwrap();
    assert_eq!(stdout(&out), want, "{cmd} {stem}");
}

#[test]
fn reduce_goldens() {
    for k in 1..=4 {
        check_golden("reduce", &format!("example{k}"), "reduce");
    }
}

#[test]
fn metrics_goldens() {
    for k in 1..=4 {
        check_golden("metrics", &format!("example{k}"), "metrics");
    }
    let text = fs::read_to_string(golden("example1.metrics")).unwrap();
    assert_eq!(text, "E=3 N=2 D=3\n");
}

#[test]
fn trace_and_render_goldens() {
    check_golden("trace", "example1", "trace");
    check_golden("render", "example4", "dot");
}

#[test]
fn reduce_reads_stdin_and_keeps_branch_free_input() {
    let out = volterra(&["reduce"], Some("f\n"));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "f\n");
    let out = volterra(&["reduce", "-"], Some("2 * P[w](g * P[v](h))"));
    assert_eq!(stdout(&out), "2 * P[w](g * P[v](h))\n");
}

#[test]
fn reduce_is_byte_stable() {
    let input = golden("example4.expr");
    let a = volterra(&["reduce", input.to_str().unwrap()], None);
    let b = volterra(&["reduce", input.to_str().unwrap()], None);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn integral_format() {
    let out = volterra(
        &["reduce", "--format", "integral"],
        Some("P[w](f) * P[v](g)"),
    );
    assert_eq!(
        stdout(&out),
        "τ_w (∫_v τ_w⁻¹ g (∫_w f)) + τ_v (∫_w τ_v⁻¹ f (∫_v g))\n"
    );
}

#[test]
fn render_single_vertex() {
    let out = volterra(&["render"], Some("f"));
    assert_eq!(
        stdout(&out),
        "digraph tree0 {\n  label=\"coefficient 1\";\n  node [shape=circle];\n  n0 [label=\"f\", shape=doublecircle];\n}\n"
    );
}

#[test]
fn output_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("volterra-cli-test-{}.txt", std::process::id()));
    let out = volterra(
        &["metrics", "-o", path.to_str().unwrap()],
        Some("a * P[w](f) * P[w](g)"),
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(fs::read_to_string(&path).unwrap(), "E=2 N=2 D=2\n");
    fs::remove_file(path).unwrap();
}

#[test]
fn parse_errors_exit_2_with_position() {
    let out = volterra(&["reduce"], Some("a *\n  P[w](f + g)"));
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("<stdin>:2:3"), "{err}");
    let out = volterra(&["reduce"], Some("f \u{0}\u{ff}"));
    assert_eq!(out.status.code(), Some(2));
    let out = volterra(&["metrics", "/nonexistent/input.expr"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_example1_passes() {
    let out = volterra(
        &[
            "verify",
            golden("example1.expr").to_str().unwrap(),
            "--bindings",
            golden("example1.bindings").to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 4);
    assert!(text.ends_with("PASS\n"));
}

#[test]
fn verify_untwisted_rule_fails() {
    let out = volterra(
        &[
            "verify",
            golden("untwisted_lhs.expr").to_str().unwrap(),
            "--against",
            golden("untwisted_rhs.expr").to_str().unwrap(),
            "--bindings",
            golden("untwisted.bindings").to_str().unwrap(),
            "--samples",
            "0.5,1",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(
        text.contains("x=1 lhs=1.000000000000e0 rhs=6.666666666667e-1"),
        "{text}"
    );
}

#[test]
fn verify_input_errors_exit_2() {
    let bindings = golden("example1.bindings");
    let b = bindings.to_str().unwrap();
    // unbound function
    let out = volterra(
        &["verify", "--bindings", b],
        Some("q * P[alpha](f) * P[beta1](g1)"),
    );
    assert_eq!(out.status.code(), Some(2));
    // odd subinterval count
    let out = volterra(&["verify", "--bindings", b, "--n", "7"], Some("f"));
    assert_eq!(out.status.code(), Some(2));
    // singular twist: k(x) = x vanishes at 0
    let lhs = golden("untwisted_lhs.expr");
    let ub = golden("untwisted.bindings");
    let out = volterra(
        &[
            "verify",
            lhs.to_str().unwrap(),
            "--bindings",
            ub.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("K"));
}

#[test]
fn bad_flags_are_rejected_before_work() {
    let out = volterra(&["reduce", "--format", "latex"], Some("f"));
    assert_eq!(out.status.code(), Some(2));
    let out = volterra(&[], None);
    assert_eq!(out.status.code(), Some(2));
}
