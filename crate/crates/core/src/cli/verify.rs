//! Randomized property suites. Trial `i` draws from its own stream seeded by
//! `trial_seed(master, suite, i)`, so suites and trials reproduce independently.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fixture::Fixture;
use crate::equiv::{
    fn_closed, fn_iterative, in_fsr_certified, lower_restriction_hit, lower_restriction_square, target_of,
    upper_restriction_hit, upper_restriction_square, xi, xi_entry_literal,
};
use crate::error::{Error, Result};
use crate::exactla::field::check_prime;
use crate::homk::{certify_equivalent, homk_dim, is_contractible, is_null_homotopic};
use crate::morcat::{functor_eup, functor_u, mor_decompose, mor_homk_dim, mor_two_n_gon, MorEdge};
use crate::ncomplex::{cone, desuspension, injective_hull, mu, suspension, ChainMapN, NComplex};
use crate::nfunctors::{contract_j, prolong_i, tstructure_decompose, two_n_gon};
use crate::sample::{
    random_chain_map, random_in_fsr, random_mor_complex, random_mor_in, random_ncomplex, trial_seed, Rng64,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    NcomplexAxioms,
    Cones,
    Adjunctions,
    Tstructure,
    #[serde(rename = "ngon-KN")]
    NgonKn,
    #[serde(rename = "ngon-Mor")]
    NgonMor,
    Equivalence,
    SigmaMuTable,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::NcomplexAxioms,
        Suite::Cones,
        Suite::Adjunctions,
        Suite::Tstructure,
        Suite::NgonKn,
        Suite::NgonMor,
        Suite::Equivalence,
        Suite::SigmaMuTable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::NcomplexAxioms => "ncomplex-axioms",
            Suite::Cones => "cones",
            Suite::Adjunctions => "adjunctions",
            Suite::Tstructure => "tstructure",
            Suite::NgonKn => "ngon-KN",
            Suite::NgonMor => "ngon-Mor",
            Suite::Equivalence => "equivalence",
            Suite::SigmaMuTable => "sigma-mu-table",
        }
    }

    fn min_n(self) -> usize {
        match self {
            Suite::NcomplexAxioms | Suite::Cones => 1,
            Suite::Adjunctions | Suite::Tstructure | Suite::SigmaMuTable => 2,
            Suite::NgonKn | Suite::NgonMor | Suite::Equivalence => 3,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::OutOfRange(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub n: usize,
    pub p: u32,
    pub trials: usize,
    pub seed: u64,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Where counterexample fixtures go (recorded in the report, written by [`VerificationReport::persist`]).
    pub fixture_dir: PathBuf,
}

impl VerifyConfig {
    pub fn new(suite: Suite, n: usize, p: u32, trials: usize, seed: u64) -> Self {
        Self { suite, n, p, trials, seed, jobs: None, fixture_dir: PathBuf::from("counterexamples") }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCount {
    pub property: String,
    pub passes: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub property: String,
    pub trial: usize,
    /// Seed of the trial's random stream.
    pub seed: u64,
    pub detail: String,
    pub files: Vec<String>,
}

/// Outcome of one suite run. Everything except `elapsed_ms` is a function of the configuration.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: Suite,
    #[serde(rename = "N")]
    pub n: usize,
    pub p: u32,
    pub trials: usize,
    pub seed: u64,
    pub properties: Vec<PropertyCount>,
    pub counterexamples: Vec<Counterexample>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub elapsed_ms: u128,
    #[serde(skip)]
    payload: Vec<(PathBuf, Fixture)>,
}

impl PartialEq for VerificationReport {
    fn eq(&self, o: &Self) -> bool {
        (self.suite, self.n, self.p, self.trials, self.seed) == (o.suite, o.n, o.p, o.trials, o.seed)
            && self.properties == o.properties
            && self.counterexamples == o.counterexamples
            && self.notes == o.notes
            && self.payload == o.payload
    }
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.failures == 0)
    }

    /// Write the counterexample fixtures named in the report.
    pub fn persist(&self) -> std::io::Result<()> {
        for (path, fx) in &self.payload {
            if let Some(dir) = path.parent() {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(path, fx.to_json())?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s =
            format!("suite {}  N={} p={} trials={} seed={}\n", self.suite, self.n, self.p, self.trials, self.seed);
        for c in &self.properties {
            let tag = if c.failures == 0 { "pass" } else { "FAIL" };
            s += &format!("  {tag}  {}/{}  {}\n", c.passes, c.passes + c.failures, c.property);
        }
        for c in &self.counterexamples {
            s += &format!("  counterexample: {} (trial {}, seed {}, {})", c.property, c.trial, c.seed, c.detail);
            for f in &c.files {
                s += &format!(" {f}");
            }
            s += "\n";
        }
        for n in &self.notes {
            s += &format!("  note: {n}\n");
        }
        s += if self.passed() { "result: pass\n" } else { "result: FAIL\n" };
        s
    }
}

struct Check {
    property: String,
    ok: bool,
    detail: String,
    witnesses: Vec<(&'static str, Fixture)>,
}

/// Checks recorded by one trial, in a fixed order.
#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    /// Record a property. The witnesses are only built on failure.
    fn record<W>(&mut self, property: impl Into<String>, ok: bool, detail: impl Into<String>, witnesses: W)
    where
        W: FnOnce() -> Vec<(&'static str, Fixture)>,
    {
        let witnesses = if ok { Vec::new() } else { witnesses() };
        self.0.push(Check { property: property.into(), ok, detail: detail.into(), witnesses });
    }
}

fn eq_dims(a: Result<usize>, b: Result<usize>) -> bool {
    matches!((a, b), (Ok(x), Ok(y)) if x == y)
}

fn is_zero_dim(a: Result<usize>) -> bool {
    a == Ok(0)
}

fn fx<T>(x: &T) -> Fixture
where
    for<'a> Fixture: From<&'a T>,
{
    Fixture::from(x)
}

/// Run a suite. Parameter errors (modulus, N) come back as `Err`; property failures are counted.
pub fn run_suite(cfg: &VerifyConfig) -> Result<VerificationReport> {
    check_prime(cfg.p)?;
    let min = cfg.suite.min_n();
    if cfg.n < min {
        return Err(Error::OutOfRange(format!("suite {} needs N >= {min}, got {}", cfg.suite, cfg.n)));
    }
    let start = Instant::now();
    let run = |t: usize| {
        let seed = trial_seed(cfg.seed, cfg.suite.name(), t as u64);
        let mut rng = Rng64::seed_from_u64(seed);
        let mut checks = Checks::default();
        trial(cfg.suite, cfg.n, cfg.p, t, &mut rng, &mut checks);
        (seed, checks)
    };
    let outcomes: Vec<(u64, Checks)> = match cfg.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::OutOfRange(e.to_string()))?
            .install(|| (0..cfg.trials).into_par_iter().map(run).collect()),
        None => (0..cfg.trials).into_par_iter().map(run).collect(),
    };

    let mut properties: Vec<PropertyCount> = Vec::new();
    let mut counterexamples = Vec::new();
    let mut payload = Vec::new();
    for (t, (seed, checks)) in outcomes.into_iter().enumerate() {
        for (k, c) in checks.0.into_iter().enumerate() {
            let idx = match properties.iter().position(|p| p.property == c.property) {
                Some(i) => i,
                None => {
                    properties.push(PropertyCount { property: c.property.clone(), passes: 0, failures: 0 });
                    properties.len() - 1
                }
            };
            if c.ok {
                properties[idx].passes += 1;
                continue;
            }
            properties[idx].failures += 1;
            let mut files = Vec::new();
            for (label, f) in c.witnesses {
                let name = format!("{}-N{}-p{}-seed{}-t{t}-c{k}-{label}.json", cfg.suite, cfg.n, cfg.p, cfg.seed);
                let path = cfg.fixture_dir.join(name);
                files.push(path.display().to_string());
                payload.push((path, f));
            }
            counterexamples.push(Counterexample { property: c.property, trial: t, seed, detail: c.detail, files });
        }
    }
    let notes = if cfg.trials > 0 { notes(cfg.suite, cfg.n) } else { Vec::new() };
    Ok(VerificationReport {
        suite: cfg.suite,
        n: cfg.n,
        p: cfg.p,
        trials: cfg.trials,
        seed: cfg.seed,
        properties,
        counterexamples,
        notes,
        elapsed_ms: start.elapsed().as_millis(),
        payload,
    })
}

fn notes(suite: Suite, n: usize) -> Vec<String> {
    match suite {
        Suite::SigmaMuTable => [-1i64, 1]
            .into_iter()
            .filter_map(|j| {
                let e = xi_entry_literal(j, 1, n).ok()?;
                Some(format!(
                    "j={j}: the literal odd-j exponent (top {} for r=1) is not equivalent; the table uses the shifted form",
                    e.top
                ))
            })
            .collect(),
        _ => Vec::new(),
    }
}

fn trial(suite: Suite, n: usize, p: u32, t: usize, rng: &mut Rng64, c: &mut Checks) {
    match suite {
        Suite::NcomplexAxioms => axioms(n, p, rng, c),
        Suite::Cones => cones(n, p, rng, c),
        Suite::Adjunctions => adjunctions(n, p, rng, c),
        Suite::Tstructure => tstructure(n, p, rng, c),
        Suite::NgonKn => ngon_kn(n, p, rng, c),
        Suite::NgonMor => ngon_mor(n, p, rng, c),
        Suite::Equivalence => equivalence(n, p, rng, c),
        Suite::SigmaMuTable => sigma_mu(n, p, t, c),
    }
}

fn axioms(n: usize, p: u32, rng: &mut Rng64, c: &mut Checks) {
    let x = random_ncomplex(rng, n, p, 3, 2 * n);
    let y = random_ncomplex(rng, n, p, 3, 2 * n);
    c.record("N-fold vanishing", x.validate().is_ok(), "", || vec![("x", fx(&x))]);
    let f = random_chain_map(rng, &y, &x);
    c.record("sampled maps commute", f.check().is_ok(), "", || vec![("f", fx(&f))]);
    let t = cone(&f);
    let ok = t.cone.validate().is_ok() && t.u.check().is_ok() && t.v.check().is_ok();
    c.record("cones revalidate", ok, "", || vec![("f", fx(&f))]);
    let ok = suspension(&x).validate().is_ok() && desuspension(&x).validate().is_ok();
    c.record("suspensions revalidate", ok, "", || vec![("x", fx(&x))]);
}

fn cones(n: usize, p: u32, rng: &mut Rng64, c: &mut Checks) {
    let x = random_ncomplex(rng, n, p, 3, 2 * n);
    let ix = cone(&ChainMapN::identity(&x)).cone;
    let ok = is_contractible(&ix).is_some_and(|h| h.certifies(&ChainMapN::identity(&ix)));
    c.record("C(1_X) contractible", ok, "", || vec![("x", fx(&x))]);
    let (hull, _) = injective_hull(&x);
    let ok = is_contractible(&hull).is_some() && is_zero_dim(homk_dim(&x, &hull)) && is_zero_dim(homk_dim(&hull, &x));
    c.record("injective hulls are zero objects", ok, "", || vec![("x", fx(&x))]);
    let y = random_ncomplex(rng, n, p, 2, 2 * n);
    let f = random_chain_map(rng, &y, &x);
    let t = cone(&f);
    let uf = t.u.after(&f);
    let ok = t.v.after(&t.u).is_zero() && matches!(is_null_homotopic(&uf), Ok(Some(h)) if h.certifies(&uf));
    c.record("triangle composites vanish in K_N", ok, "", || vec![("f", fx(&f))]);
}

fn adjunctions(n: usize, p: u32, rng: &mut Rng64, c: &mut Checks) {
    let s = rng.gen_range(0..n as i64);
    let x = random_ncomplex(rng, n - 1, p, 2, 2 * n);
    let y = random_ncomplex(rng, n, p, 2, 2 * n);
    let z = random_ncomplex(rng, n - 1, p, 2, 2 * n);
    let detail = format!("s={s}");
    let witnesses = || vec![("x", fx(&x)), ("y", fx(&y)), ("z", fx(&z))];
    let jy = contract_j(s, &y);
    let ok = jy.as_ref().is_ok_and(|jy| eq_dims(homk_dim(&prolong_i(s, &x), &y), homk_dim(&x, jy)));
    c.record("hom(I_s X, Y) = hom(X, J_s Y)", ok, detail.clone(), witnesses);
    let ok = jy.as_ref().is_ok_and(|jy| eq_dims(homk_dim(jy, &z), homk_dim(&y, &prolong_i(s + 1, &z))));
    c.record("hom(J_s Y, Z) = hom(Y, I_{s+1} Z)", ok, detail.clone(), witnesses);
    let ok = contract_j(s, &prolong_i(s, &x)).is_ok_and(|u| u == x);
    c.record("J_s I_s X = X", ok, detail, witnesses);
}

fn tstructure(n: usize, p: u32, rng: &mut Rng64, c: &mut Checks) {
    for s in 0..n as i64 {
        for r in 1..n {
            let x = random_ncomplex(rng, n, p, 2, 2 * n);
            let detail = format!("s={s} r={r}");
            let d = match tstructure_decompose(&x, s, r) {
                Ok(d) => d,
                Err(e) => {
                    c.record("decomposition exists", false, format!("{detail}: {e}"), || vec![("x", fx(&x))]);
                    continue;
                }
            };
            c.record("u_part in F_s^r", d.u_strict(), detail.clone(), || vec![("x", fx(&x))]);
            c.record("v_part in F_{r+s+1}^{N-r-1}", d.v_strict(), detail.clone(), || vec![("x", fx(&x))]);
            let mut vanish = true;
            let mut bad = None;
            for _ in 0..10 {
                let u2 = random_in_fsr(rng, n, p, s, r, 2);
                if !is_zero_dim(homk_dim(&u2, &d.v_part)) {
                    vanish = false;
                    bad.get_or_insert(u2);
                }
            }
            c.record("hom(F_s^r, v_part) = 0", vanish, detail.clone(), || {
                vec![("u", fx(bad.as_ref().unwrap())), ("v", fx(&d.v_part))]
            });
            let ok = d.exact() && d.kernel_contraction.is_some() && d.equivalence.is_some();
            c.record("C(counit) ≃ v_part certified", ok, detail, || vec![("x", fx(&x))]);
        }
    }
}

fn ngon_kn(n: usize, p: u32, rng: &mut Rng64, c: &mut Checks) {
    let g = two_n_gon(n);
    for k in 0..g.len() {
        let (a, b) = (g[k], g[(k + 1) % g.len()]);
        let u = random_in_fsr(rng, n, p, a.s, a.r, 2);
        let v = random_in_fsr(rng, n, p, b.s, b.r, 2);
        c.record(format!("hom({a}, {b}) = 0"), is_zero_dim(homk_dim(&u, &v)), "", || {
            vec![("u", fx(&u)), ("v", fx(&v))]
        });
    }
}

fn ngon_mor(n: usize, p: u32, rng: &mut Rng64, c: &mut Checks) {
    let g = mor_two_n_gon(n);
    for k in 0..g.len() {
        let (a, b) = (g[k], g[(k + 1) % g.len()]);
        let u = random_mor_in(rng, n, p, a, 2);
        let v = random_mor_in(rng, n, p, b, 2);
        c.record(format!("hom({a}, {b}) = 0"), is_zero_dim(mor_homk_dim(&u, &v)), "", || {
            vec![("u", fx(&u)), ("v", fx(&v))]
        });
    }
    for edge in MorEdge::all(n) {
        let x = random_mor_complex(rng, n, p, 3, 2 * n);
        let ok =
            mor_decompose(&x, edge).is_ok_and(|d| d.is_certified() && is_zero_dim(mor_homk_dim(&d.u_part, &d.v_part)));
        c.record(format!("X ≃ {} * {} certified", edge.from, edge.to), ok, "", || vec![("x", fx(&x))]);
    }
}

fn equivalence(n: usize, p: u32, rng: &mut Rng64, c: &mut Checks) {
    let x = random_mor_complex(rng, n, p, 2, 4);
    let ok = fn_iterative(&x).is_ok_and(|it| certify_equivalent(&fn_closed(&x), &it).is_some());
    c.record("closed form ≃ iterated cones", ok, "", || vec![("x", fx(&x))]);

    let x = random_mor_complex(rng, n, p, 3, 2 * n);
    let y = random_mor_complex(rng, n, p, 3, 2 * n);
    let ok = eq_dims(mor_homk_dim(&x, &y), homk_dim(&fn_closed(&x), &fn_closed(&y)));
    c.record("hom dimensions preserved", ok, "", || vec![("x", fx(&x)), ("y", fx(&y))]);

    let z = random_ncomplex(rng, 2, p, 3, 6);
    let w = random_ncomplex(rng, 2, p, 3, 6);
    let ok = matches!(upper_restriction_square(&z, n), Ok(Some(_)))
        && match (functor_u(&z, n), functor_u(&w, n)) {
            (Ok(uz), Ok(uw)) => eq_dims(homk_dim(&z, &w), homk_dim(&fn_closed(&uz), &fn_closed(&uw))),
            _ => false,
        };
    c.record("upper restriction: square and hom bijection", ok, "", || vec![("z", fx(&z)), ("w", fx(&w))]);
    let yu = random_in_fsr(rng, n, p, 1, n - 2, 3);
    c.record("upper restriction: essential image", matches!(upper_restriction_hit(&yu), Ok(Some(_))), "", || {
        vec![("y", fx(&yu))]
    });

    let w1 = random_mor_complex(rng, n - 1, p, 3, 6);
    let w2 = random_mor_complex(rng, n - 1, p, 3, 6);
    let ok = matches!(lower_restriction_square(&w1, n), Ok(Some(_)))
        && match (functor_eup(&w1, n), functor_eup(&w2, n)) {
            (Ok(e1), Ok(e2)) => eq_dims(mor_homk_dim(&w1, &w2), homk_dim(&fn_closed(&e1), &fn_closed(&e2))),
            _ => false,
        };
    c.record("lower restriction: square and hom bijection", ok, "", || vec![("w1", fx(&w1)), ("w2", fx(&w2))]);
    let yl = random_in_fsr(rng, n, p, 0, 1, 3);
    c.record("lower restriction: essential image", matches!(lower_restriction_hit(&yl), Ok(Some(_))), "", || {
        vec![("y", fx(&yl))]
    });

    for label in mor_two_n_gon(n) {
        let x = random_mor_in(rng, n, p, label, 2);
        let ok = target_of(label, n).is_ok_and(|t| in_fsr_certified(&fn_closed(&x), t));
        let name = match target_of(label, n) {
            Ok(t) => format!("F_N({label}) in {t}"),
            Err(_) => format!("F_N({label})"),
        };
        c.record(name, ok, "", || vec![("x", fx(&x))]);
    }
}

fn sigma_pow(x: &NComplex, j: i64) -> NComplex {
    (0..j.abs()).fold(x.clone(), |acc, _| if j > 0 { suspension(&acc) } else { desuspension(&acc) })
}

/// The table is deterministic; trial `t` uses multiplicity `1 + t mod 3`.
fn sigma_mu(n: usize, p: u32, t: usize, c: &mut Checks) {
    let mult = 1 + t % 3;
    for j in -2..=2i64 {
        for r in 1..n {
            let detail = format!("r={r} multiplicity={mult}");
            let m = mu(n, p, r, n as i64 - 1, mult);
            let target = xi(j, r, mult, n, p);
            let ok = match (&m, &target) {
                (Ok(m), Ok(tg)) => certify_equivalent(&sigma_pow(m, j), tg).is_some(),
                _ => false,
            };
            c.record(format!("Σ^{j} μ ≃ Ξ^{j}"), ok, detail, || {
                let mut w = Vec::new();
                if let Ok(m) = &m {
                    w.push(("sigma", fx(&sigma_pow(m, j))));
                }
                if let Ok(tg) = &target {
                    w.push(("xi", fx(tg)));
                }
                w
            });
        }
    }
}
