use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ngon::cli::{self, Format, Suite, VerifyConfig, EXIT_USAGE};
use ngon::exactla::DEFAULT_PRIME;

#[derive(Parser)]
#[command(name = "ngon", version, about = "N-complexes, Mor complexes and their 2N-gons of recollements over F_p")]
struct Args {
    #[arg(long, value_enum, default_value_t = Fmt::Text, global = true)]
    format: Fmt,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a fixture and check the complex axioms.
    Validate { file: PathBuf },
    /// Hom-dimension in the homotopy category.
    Homk { a: PathBuf, b: PathBuf },
    /// Mapping cone of a chain map fixture.
    Cone { file: PathBuf },
    /// Split an N-complex along the t-structure (F_s^r, F_{r+s+1}^{N-r-1}).
    Decompose {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
        #[arg(long)]
        r: usize,
        /// Directory for the u/v fixtures (default: next to the input).
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// The N-complex attached to a Mor fixture.
    Fn { file: PathBuf },
    /// Run a randomized property suite.
    Verify {
        suite: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        p: u32,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        jobs: Option<usize>,
        /// Directory for counterexample fixtures.
        #[arg(long, default_value = "counterexamples")]
        fixture_dir: PathBuf,
    },
}

fn run(args: Args) -> ngon::error::Result<cli::Outcome> {
    let format = match args.format {
        Fmt::Text => Format::Text,
        Fmt::Json => Format::Json,
    };
    match args.cmd {
        Cmd::Validate { file } => cli::cmd_validate(&file, format),
        Cmd::Homk { a, b } => cli::cmd_homk(&a, &b, format),
        Cmd::Cone { file } => cli::cmd_cone(&file),
        Cmd::Decompose { file, s, r, out_dir } => cli::cmd_decompose(&file, s, r, out_dir.as_deref(), format),
        Cmd::Fn { file } => cli::cmd_fn(&file),
        Cmd::Verify { suite, n, p, trials, seed, jobs, fixture_dir } => {
            let suite: Suite = suite.parse()?;
            let cfg = VerifyConfig { jobs, fixture_dir, ..VerifyConfig::new(suite, n, p, trials, seed) };
            cli::cmd_verify(&cfg, format)
        }
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    match run(args) {
        Ok(o) => {
            print!("{}", o.stdout);
            eprint!("{}", o.stderr);
            ExitCode::from(o.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}
