//! Fixtures, single-shot commands and the verification harness behind the `ngon` binary.
//!
//! Each command returns an [`Outcome`] (exit code plus output) or an [`Error`]; [`exit_code`]
//! maps errors to 2 for usage and parse problems and 1 for failed properties.

pub mod fixture;
pub mod verify;

use std::path::{Path, PathBuf};

use serde_json::json;

pub use fixture::{Fixture, Object};
pub use verify::{run_suite, Counterexample, PropertyCount, Suite, VerificationReport, VerifyConfig};

use crate::equiv::fn_closed;
use crate::error::{Error, Result};
use crate::homk::{homk_dim, is_contractible};
use crate::morcat::mor_homk_dim;
use crate::ncomplex::cone;
use crate::nfunctors::{tstructure_decompose, SubcatFSR};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    /// Diagnostics that are not part of the deterministic output (timings).
    pub stderr: String,
}

impl Outcome {
    fn new(code: i32, stdout: String) -> Self {
        Self { code, stdout, stderr: String::new() }
    }
}

/// Exit status for an error escaping a command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::AxiomViolation(_) | Error::NotChainMap(_) | Error::NotSplitMono(_) | Error::ShapeMismatch(_) => {
            EXIT_FAIL
        }
        _ => EXIT_USAGE,
    }
}

pub fn read_fixture(path: &Path) -> Result<Fixture> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io { path: path.display().to_string(), msg: e.to_string() })?;
    Fixture::parse(&text)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io { path: path.display().to_string(), msg: e.to_string() })
}

fn load(path: &Path) -> Result<Object> {
    read_fixture(path)?.load()
}

fn summary(obj: &Object) -> String {
    match obj {
        Object::NComplex(x) => {
            format!("ncomplex N={} p={} window [{}, {}] dims {:?}", x.n(), x.p(), x.lo(), x.hi(), x.dims())
        }
        Object::Map(f) => {
            let (lo, hi) = f.window();
            format!("chain map of {}-complexes over F_{}, degrees [{lo}, {hi}]", f.source().n(), f.source().p())
        }
        Object::Mor(x) => format!(
            "mor complex N={} p={} window [{}, {}] total dims {:?}",
            x.n(),
            x.p(),
            x.lo(),
            x.hi(),
            x.total().dims()
        ),
    }
}

/// Parse and validate a fixture. Validation failures exit with 1 and name the first violation.
pub fn cmd_validate(path: &Path, format: Format) -> Result<Outcome> {
    let fx = read_fixture(path)?;
    let (code, ok, msg) = match fx.load() {
        Ok(obj) => (EXIT_PASS, true, summary(&obj)),
        Err(e) if exit_code(&e) == EXIT_FAIL => (EXIT_FAIL, false, e.to_string()),
        Err(e) => return Err(e),
    };
    let out = match format {
        Format::Text => format!("{}: {msg}\n", if ok { "valid" } else { "invalid" }),
        Format::Json => format!("{}\n", json!({ "valid": ok, "detail": msg })),
    };
    Ok(Outcome::new(code, out))
}

/// Hom-dimension in the homotopy category; both fixtures must be of the same kind.
pub fn cmd_homk(a: &Path, b: &Path, format: Format) -> Result<Outcome> {
    let d = match (load(a)?, load(b)?) {
        (Object::NComplex(x), Object::NComplex(y)) => homk_dim(&x, &y)?,
        (Object::Mor(x), Object::Mor(y)) => mor_homk_dim(&x, &y)?,
        (x, y) => {
            return Err(Error::Mismatch(format!("cannot compare a {} fixture with a {} fixture", x.kind(), y.kind())))
        }
    };
    let out = match format {
        Format::Text => format!("{d}\n"),
        Format::Json => format!("{}\n", json!({ "homk_dim": d })),
    };
    Ok(Outcome::new(EXIT_PASS, out))
}

fn expect_kind(obj: Object, kind: &str) -> Result<Object> {
    if obj.kind() == kind {
        Ok(obj)
    } else {
        Err(Error::Mismatch(format!("expected a {kind} fixture, got {}", obj.kind())))
    }
}

/// The mapping cone of a chain map fixture, printed as an `ncomplex` fixture.
pub fn cmd_cone(path: &Path) -> Result<Outcome> {
    let Object::Map(f) = expect_kind(load(path)?, "map")? else { unreachable!() };
    Ok(Outcome::new(EXIT_PASS, Fixture::from(&cone(&f).cone).to_json() + "\n"))
}

/// `F_N` of a Mor fixture, printed as an `ncomplex` fixture.
pub fn cmd_fn(path: &Path) -> Result<Outcome> {
    let Object::Mor(x) = expect_kind(load(path)?, "mor")? else { unreachable!() };
    Ok(Outcome::new(EXIT_PASS, Fixture::from(&fn_closed(&x)).to_json() + "\n"))
}

/// Where `decompose` writes its parts: next to the input unless a directory is given.
pub fn decompose_paths(input: &Path, out_dir: Option<&Path>) -> (PathBuf, PathBuf) {
    let stem = input.file_stem().map_or("fixture".into(), |s| s.to_string_lossy().into_owned());
    let dir = out_dir.map(Path::to_path_buf).or_else(|| input.parent().map(Path::to_path_buf)).unwrap_or_default();
    (dir.join(format!("{stem}.u.json")), dir.join(format!("{stem}.v.json")))
}

/// Split an N-complex along the t-structure `(F_s^r, F_{r+s+1}^{N-r-1})`, write both parts and
/// report the certificates. Exits with 1 if any certificate is missing.
pub fn cmd_decompose(path: &Path, s: i64, r: usize, out_dir: Option<&Path>, format: Format) -> Result<Outcome> {
    let Object::NComplex(x) = expect_kind(load(path)?, "ncomplex")? else { unreachable!() };
    let target = SubcatFSR::new(x.n(), s, r)?;
    let d = tstructure_decompose(&x, s, r)?;
    let (up, vp) = decompose_paths(path, out_dir);
    write_file(&up, &Fixture::from(&d.u_part).to_json())?;
    write_file(&vp, &Fixture::from(&d.v_part).to_json())?;
    let rows = [
        ("u_part strictly in F_s^r", d.u_strict()),
        ("v_part strictly in F_{r+s+1}^{N-r-1}", d.v_strict()),
        ("degreewise exact", d.exact()),
        ("kernel contractible", d.kernel_contraction.is_some()),
        ("C(counit) ≃ v_part", d.equivalence.is_some()),
    ];
    let v_contractible = is_contractible(&d.v_part).is_some();
    let code = if d.is_certified() { EXIT_PASS } else { EXIT_FAIL };
    let out = match format {
        Format::Text => {
            let mut s = format!("t-structure at {target}\n");
            for (name, ok) in rows {
                s += &format!("  {}  {name}\n", if ok { "pass" } else { "FAIL" });
            }
            s += &format!("  v_part contractible: {v_contractible}\n");
            s += &format!("  wrote {} and {}\n", up.display(), vp.display());
            s
        }
        Format::Json => {
            let checks: serde_json::Map<String, serde_json::Value> =
                rows.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            format!(
                "{}\n",
                json!({
                    "s": target.s,
                    "r": target.r,
                    "checks": checks,
                    "v_contractible": v_contractible,
                    "u_part": up.display().to_string(),
                    "v_part": vp.display().to_string(),
                })
            )
        }
    };
    Ok(Outcome::new(code, out))
}

/// Run a property suite; failing runs persist their counterexample fixtures.
pub fn cmd_verify(cfg: &VerifyConfig, format: Format) -> Result<Outcome> {
    let report = run_suite(cfg)?;
    if !report.passed() {
        report.persist().map_err(|e| Error::Io { path: cfg.fixture_dir.display().to_string(), msg: e.to_string() })?;
    }
    let stdout = match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json() + "\n",
    };
    let code = if report.passed() { EXIT_PASS } else { EXIT_FAIL };
    Ok(Outcome { code, stdout, stderr: format!("{} finished in {} ms\n", cfg.suite, report.elapsed_ms) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::PrimeFieldMatrix;
    use crate::ncomplex::{mu, suspension, ChainMapN, NComplex};

    fn tmp(name: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("ngon-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        dir.join(name)
    }

    fn put(name: &str, fx: Fixture) -> PathBuf {
        let p = tmp(name);
        std::fs::write(&p, fx.to_json()).unwrap();
        p
    }

    #[test]
    fn validate_reports_violations() {
        let good = put("good.json", Fixture::from(&mu(3, 101, 2, 1, 1).unwrap()));
        assert_eq!(cmd_validate(&good, Format::Text).unwrap().code, EXIT_PASS);
        let tower = tmp("tower.json");
        let id = r#"{"rows":1,"cols":1,"data":[1]}"#;
        std::fs::write(
            &tower,
            format!(r#"{{"kind":"ncomplex","p":101,"N":2,"lo":3,"hi":5,"dims":[1,1,1],"diffs":[{id},{id}]}}"#),
        )
        .unwrap();
        let o = cmd_validate(&tower, Format::Text).unwrap();
        assert_eq!(o.code, EXIT_FAIL);
        assert!(o.stdout.contains("degree 3"), "{}", o.stdout);
        let cut = tmp("cut.json");
        let text = std::fs::read_to_string(&good).unwrap();
        std::fs::write(&cut, &text[..text.len() - 10]).unwrap();
        let e = cmd_validate(&cut, Format::Text).unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
        assert_eq!(exit_code(&e), EXIT_USAGE);
        assert_eq!(exit_code(&cmd_validate(&tmp("missing.json"), Format::Text).unwrap_err()), EXIT_USAGE);
    }

    #[test]
    fn homk_commands() {
        let m = mu(3, 101, 1, 0, 1).unwrap();
        let a = put("m.json", Fixture::from(&m));
        let s = put("sm.json", Fixture::from(&suspension(&m)));
        let i = put("im.json", Fixture::from(&cone(&ChainMapN::identity(&m)).cone));
        assert_eq!(cmd_homk(&a, &a, Format::Text).unwrap().stdout, "1\n");
        assert_eq!(cmd_homk(&a, &s, Format::Json).unwrap().stdout, "{\"homk_dim\":0}\n");
        assert_eq!(cmd_homk(&a, &i, Format::Text).unwrap().stdout, "0\n");
        let u = put(
            "u.json",
            Fixture::from(&crate::morcat::functor_u(&NComplex::new(2, 101, 0, vec![1], vec![]).unwrap(), 3).unwrap()),
        );
        assert_eq!(cmd_homk(&u, &u, Format::Text).unwrap().stdout, "1\n");
        assert_eq!(exit_code(&cmd_homk(&a, &u, Format::Text).unwrap_err()), EXIT_USAGE);
    }

    #[test]
    fn cone_and_fn_emit_fixtures() {
        let m = mu(3, 101, 2, 1, 1).unwrap();
        let f = put("id.json", Fixture::from(&ChainMapN::identity(&m)));
        let c = Fixture::parse(&cmd_cone(&f).unwrap().stdout).unwrap().load().unwrap();
        assert_eq!(c, Object::NComplex(cone(&ChainMapN::identity(&m)).cone));
        let x = crate::morcat::functor_u(&NComplex::new(2, 101, 0, vec![1], vec![]).unwrap(), 3).unwrap();
        let g = put("x.json", Fixture::from(&x));
        let y = Fixture::parse(&cmd_fn(&g).unwrap().stdout).unwrap().load().unwrap();
        assert_eq!(y, Object::NComplex(fn_closed(&x)));
        assert!(cmd_fn(&f).is_err());
    }

    #[test]
    fn decompose_writes_parts() {
        // d = 1 from degree 0 to 1 makes this a member of F_0^1 for N = 3.
        let x = NComplex::new(3, 101, 0, vec![1, 1], vec![PrimeFieldMatrix::identity(101, 1)]).unwrap();
        let path = put("member.json", Fixture::from(&x));
        let o = cmd_decompose(&path, 0, 1, None, Format::Text).unwrap();
        assert_eq!(o.code, EXIT_PASS, "{}", o.stdout);
        assert!(o.stdout.contains("v_part contractible: true"));
        let (up, vp) = decompose_paths(&path, None);
        assert!(matches!(load(&up).unwrap(), Object::NComplex(_)));
        assert!(matches!(load(&vp).unwrap(), Object::NComplex(_)));
        assert_eq!(exit_code(&cmd_decompose(&path, 0, 3, None, Format::Text).unwrap_err()), EXIT_USAGE);
    }

    #[test]
    fn verify_outputs() {
        let cfg = VerifyConfig::new(Suite::Adjunctions, 3, 101, 0, 42);
        let o = cmd_verify(&cfg, Format::Json).unwrap();
        assert_eq!(o.code, EXIT_PASS);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["suite"], "adjunctions");
        assert_eq!(v["properties"].as_array().unwrap().len(), 0);
    }
}
