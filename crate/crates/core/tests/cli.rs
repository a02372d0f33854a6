use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn ngon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ngon")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn validate_exit_codes() {
    for f in ["mu3.json", "mor_point.json", "identity_mu3.json"] {
        assert_eq!(code(&ngon(&["validate", &fixture(f)])), 0, "{f}");
    }
    let o = ngon(&["validate", &fixture("tower.json")]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("degree 0"));
    assert_eq!(code(&ngon(&["validate", "/nonexistent.json"])), 2);
    assert_eq!(code(&ngon(&["validate"])), 2);
    assert_eq!(code(&ngon(&["frobnicate"])), 2);
}

#[test]
fn single_shot_commands() {
    assert_eq!(stdout(&ngon(&["homk", &fixture("mu3.json"), &fixture("mu3.json")])), "1\n");
    assert_eq!(code(&ngon(&["homk", &fixture("mu3.json"), &fixture("mor_point.json")])), 2);
    let o = ngon(&["--format", "json", "homk", &fixture("mor_point.json"), &fixture("mor_point.json")]);
    assert_eq!(stdout(&o), "{\"homk_dim\":1}\n");
    let cone = stdout(&ngon(&["cone", &fixture("identity_mu3.json")]));
    assert!(ngon::cli::Fixture::parse(&cone).unwrap().load().is_ok());
    let f = stdout(&ngon(&["fn", &fixture("mor_point.json")]));
    assert!(ngon::cli::Fixture::parse(&f).unwrap().load().is_ok());

    let dir = std::env::temp_dir().join(format!("ngon-cli-it-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let d = dir.display().to_string();
    let o = ngon(&["decompose", &fixture("mu3.json"), "--s", "0", "--r", "1", "--out-dir", &d]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(dir.join("mu3.u.json").exists() && dir.join("mu3.v.json").exists());
    assert_eq!(code(&ngon(&["decompose", &fixture("mu3.json"), "--s", "0", "--r", "3"])), 2);
    assert_eq!(code(&ngon(&["decompose", &fixture("mu3.json"), "--s", "-4", "--r", "2", "--out-dir", &d])), 0);
}

#[test]
fn verify_is_reproducible() {
    let args = ["--format", "json", "verify", "cones", "--n", "3", "--p", "101", "--trials", "12", "--seed", "5"];
    let a = ngon(&args);
    let mut single = args.to_vec();
    single.extend(["--jobs", "1"]);
    let b = ngon(&single);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let o = ngon(&["verify", "ngon-KN", "--n", "3", "--trials", "0"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("result: pass"));
    assert_eq!(code(&ngon(&["verify", "bogus", "--n", "3"])), 2);
    assert_eq!(code(&ngon(&["verify", "ngon-Mor", "--n", "2"])), 2);
    assert_eq!(code(&ngon(&["verify", "cones", "--n", "3", "--p", "91"])), 2);
}
