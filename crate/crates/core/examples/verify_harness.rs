//! Run a property suite programmatically and print its deterministic report.

use ngon::cli::{run_suite, Suite, VerifyConfig};

fn main() {
    let suite: Suite = std::env::args().nth(1).as_deref().unwrap_or("tstructure").parse().expect("suite name");
    let report = run_suite(&VerifyConfig::new(suite, 3, 101, 20, 42)).unwrap();
    print!("{}", report.to_text());
    println!("{}", report.to_json());
}
