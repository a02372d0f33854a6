//! Acceptance run: one pass/fail line per criterion. Counts and budgets are fixed here.

use std::time::{Duration, Instant};

use ngon::cli::{run_suite, Suite, VerificationReport, VerifyConfig};

const P: u32 = 101;
const SEED: u64 = 20240501;
const AXIOM_TRIALS: usize = 500;
const AXIOM_BUDGET: Duration = Duration::from_secs(30);
const CONE_TRIALS: usize = 200;
const ADJ_TRIALS: usize = 100;
const TST_TRIALS: usize = 50;
const GON_TRIALS: usize = 50;
const EQUIV_TRIALS: usize = 100;
const DETERMINISM_TRIALS: usize = 8;

fn run(suite: Suite, n: usize, p: u32, trials: usize) -> VerificationReport {
    run_suite(&VerifyConfig::new(suite, n, p, trials, SEED)).expect("valid parameters")
}

/// Every property whose name passes `keep` ran `expect` times per report without failing.
fn all_pass(reports: &[VerificationReport], keep: impl Fn(&str) -> bool, expect: usize) -> (bool, usize) {
    let mut total = 0;
    let mut ok = true;
    for r in reports {
        for c in r.properties.iter().filter(|c| keep(&c.property)) {
            total += c.passes + c.failures;
            ok &= c.failures == 0 && c.passes >= expect;
        }
    }
    (ok && total > 0, total)
}

fn failures(reports: &[VerificationReport]) -> String {
    let bad: Vec<String> = reports
        .iter()
        .flat_map(|r| {
            r.properties
                .iter()
                .filter(|c| c.failures > 0)
                .map(move |c| format!("N={} {}: {}", r.n, c.property, c.failures))
        })
        .collect();
    if bad.is_empty() {
        String::new()
    } else {
        format!(" failing: {}", bad.join("; "))
    }
}

fn line(k: usize, ok: bool, msg: String) -> bool {
    println!("criterion {k:>2}: {}  {msg}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn main() {
    let mut ok = true;

    let t = Instant::now();
    let axioms: Vec<_> = (2..=5).flat_map(|n| [2, P].map(|p| run(Suite::NcomplexAxioms, n, p, AXIOM_TRIALS))).collect();
    let elapsed = t.elapsed();
    let (pass, total) = all_pass(&axioms, |_| true, AXIOM_TRIALS);
    ok &= line(
        1,
        pass && elapsed < AXIOM_BUDGET,
        format!(
            "axioms: {} complexes over N 2..5, p 2 and {P}; {total} checks incl. cone/suspension revalidation in {:.1} s (budget {} s){}",
            AXIOM_TRIALS * 8,
            elapsed.as_secs_f64(),
            AXIOM_BUDGET.as_secs(),
            failures(&axioms)
        ),
    );

    let cones: Vec<_> = (2..=5).map(|n| run(Suite::Cones, n, P, CONE_TRIALS)).collect();
    let (pass, total) = all_pass(&cones, |p| p.starts_with("C(1_X)"), CONE_TRIALS);
    ok &= line(2, pass, format!("C(1_X) contractible with witness: {total} complexes over N 2..5{}", failures(&cones)));

    let adj: Vec<_> = (3..=4).map(|n| run(Suite::Adjunctions, n, P, ADJ_TRIALS)).collect();
    let (pass, total) = all_pass(&adj, |p| p.starts_with("hom("), ADJ_TRIALS);
    ok &= line(3, pass, format!("adjunction hom-dimensions equal: {total} checks over N 3..4{}", failures(&adj)));
    let (pass, total) = all_pass(&adj, |p| p.starts_with("J_s I_s"), ADJ_TRIALS);
    ok &= line(4, pass, format!("J_s I_s X = X exactly: {total} complexes over N 3..4"));

    let tst: Vec<_> = (3..=4).map(|n| run(Suite::Tstructure, n, P, TST_TRIALS)).collect();
    let (pass, total) = all_pass(&tst, |_| true, TST_TRIALS);
    ok &= line(
        5,
        pass,
        format!(
            "t-structures for all (s, r), N 3..4, {TST_TRIALS} X each, 10 u' per X: {total} checks{}",
            failures(&tst)
        ),
    );

    let kn: Vec<_> = (3..=4).map(|n| run(Suite::NgonKn, n, P, GON_TRIALS)).collect();
    let (pass, total) = all_pass(&kn, |_| true, GON_TRIALS);
    ok &= line(6, pass, format!("2N-gon in K_N, N 3..4: {total} sampled pairs, all hom-dimensions 0{}", failures(&kn)));

    let mor: Vec<_> = (3..=4).map(|n| run(Suite::NgonMor, n, P, GON_TRIALS)).collect();
    let (pv, tv) = all_pass(&mor, |p| p.starts_with("hom("), GON_TRIALS);
    let (pd, td) = all_pass(&mor, |p| p.starts_with("X ≃"), GON_TRIALS);
    ok &= line(
        7,
        pv && pd,
        format!("2N-gon in K(Mor), N 3..4: {tv} pairs vanish, {td} decompositions certified{}", failures(&mor)),
    );

    let table: Vec<_> = (3..=5).map(|n| run(Suite::SigmaMuTable, n, P, 1)).collect();
    let (pass, total) = all_pass(&table, |_| true, 1);
    let notes: usize = table.iter().map(|r| r.notes.len()).sum();
    ok &= line(
        8,
        pass,
        format!(
            "Σ^j μ ≃ Ξ^j for N 3..5, all r, j -2..2: {total} entries certified, {notes} literal-form notes reported{}",
            failures(&table)
        ),
    );

    let eq: Vec<_> = (3..=4).map(|n| run(Suite::Equivalence, n, P, EQUIV_TRIALS)).collect();
    let (pa, ta) = all_pass(&eq, |p| p.starts_with("closed form"), EQUIV_TRIALS);
    let (pb, tb) = all_pass(&eq, |p| p.starts_with("hom dimensions"), EQUIV_TRIALS);
    let (pc, tc) = all_pass(&eq, |p| p.contains("restriction"), EQUIV_TRIALS);
    let (pd, td) = all_pass(&eq, |p| p.starts_with("F_N("), EQUIV_TRIALS);
    ok &= line(
        9,
        pa && pb && pc && pd,
        format!(
            "F_N: {ta} closed/iterated agreements, {tb} hom-dimension matches, {tc} restricted-equivalence checks, {td} gon transports{}",
            failures(&eq)
        ),
    );

    let mut same = true;
    for suite in Suite::ALL {
        let n = if matches!(suite, Suite::NgonKn | Suite::NgonMor | Suite::Equivalence) { 3 } else { 4 };
        let mut cfg = VerifyConfig::new(suite, n, P, DETERMINISM_TRIALS, SEED);
        let a = run_suite(&cfg).unwrap().to_json();
        cfg.jobs = Some(1);
        let b = run_suite(&cfg).unwrap().to_json();
        same &= a == b;
    }
    ok &= line(
        10,
        same,
        format!(
            "bit-identical JSON reports on re-run (parallel and single-threaded) for all {} suites",
            Suite::ALL.len()
        ),
    );

    if !ok {
        std::process::exit(1);
    }
}
