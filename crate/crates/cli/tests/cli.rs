use std::process::Command;

fn hopf32() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hopf32"))
}

#[test]
fn nichols_subcommand_reports_dimensions() {
    let out = hopf32()
        .args(["nichols", "--matrix", "-1,-1;1,-1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["total"], 8);
    assert_eq!(v["hilbert"][1], 2);

    // entries with the xi and zeta shorthand
    let out = hopf32()
        .args(["nichols", "--matrix", "-1,1;x^3,-1"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["total"], 32);
    assert_eq!(v["nilpotency"]["|ad_y(x)|"], 8);

    // a braid-equation-safe but infinite case
    let out = hopf32()
        .args(["nichols", "--matrix", "i,-i;-1,-1"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["total"], "exceeds 33");
}

#[test]
fn classify_formats() {
    let out = hopf32()
        .args(["classify", "--group", "C2xC2", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["total"], 6);

    let out = hopf32()
        .args(["classify", "--group", "H"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("table17"));
    assert!(text.contains("Total liftings: 3"));

    let out = hopf32()
        .args(["classify", "--group", "C7"])
        .output()
        .unwrap();
    assert!(!out.status.success());
}

#[test]
fn liftings_subcommand() {
    let out = hopf32()
        .args(["liftings", "--group", "C4", "--module", "W3^2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], 6);

    let out = hopf32()
        .args(["liftings", "--group", "C8", "--module", "V6^2"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], "infinite");
}

#[test]
fn check_subcommand_passes_with_annotations() {
    let out = hopf32().arg("check").output().unwrap();
    assert!(
        out.status.success(),
        "check must exit 0 on the bundled data"
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("0 failures"));
    assert!(text.contains("NOTE"));
}

#[test]
fn config_file_and_environment_precedence() {
    let dir = std::env::temp_dir().join(format!("hopf32-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfgfile = dir.join("hopf32.toml");
    std::fs::write(&cfgfile, "dim_budget = 8\n").unwrap();

    // config file caps the budget
    let out = hopf32()
        .current_dir(&dir)
        .args(["nichols", "--matrix", "-1,1;x,-1"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["total"], "exceeds 8");

    // environment overrides the file
    let out = hopf32()
        .current_dir(&dir)
        .env("HOPF32_DIM_BUDGET", "33")
        .args(["nichols", "--matrix", "-1,1;x,-1"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["total"], 32);

    // a flag overrides both
    let out = hopf32()
        .current_dir(&dir)
        .env("HOPF32_DIM_BUDGET", "8")
        .args(["--dim-budget", "33", "nichols", "--matrix", "-1,1;x,-1"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["total"], 32);

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn bad_matrix_inputs_are_rejected() {
    let out = hopf32()
        .args(["nichols", "--matrix", "2,1;1,-1"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("root of unity"));

    let out = hopf32()
        .args(["nichols", "--matrix", "-1,1;x"])
        .output()
        .unwrap();
    assert!(!out.status.success());
}
