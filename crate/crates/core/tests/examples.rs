use std::process::Command;

fn run_example(name: &str, args: &[&str]) -> String {
    let out = Command::new(env!("CARGO"))
        .args(["run", "--quiet", "--example", name, "--"])
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("cargo runs");
    assert!(
        out.status.success(),
        "example {name} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn examples_run() {
    assert!(run_example("ns_build", &["11"]).contains("det = -121"));
    assert!(run_example("fibration_find", &["3"]).contains("pi'': I12 + IV*"));
    assert!(run_example("heights", &["3"]).contains("<P,P> = 3/2"));
    assert!(run_example("verify_sections", &["11"]).contains("pullback_consistent: true"));
    assert!(run_example("salem_run", &["7"]).contains("Salem degree 22: true"));
    assert!(run_example("symbolic_check", &[]).contains("mu identity in Z[n][x]: true"));
    assert!(run_example("pipeline", &["3,7"]).contains("p = 7: Salem degree 22 true"));
}
