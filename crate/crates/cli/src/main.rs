//! `kerovlab`: Kerov polynomials, free cumulants, characters, extraction of
//! the describing symmetric functions, and verification suites.
//!
//! JSON goes to stdout, a short human summary to stderr. Exit status is 0
//! when everything checked holds, 1 on a mathematical finding (mismatch,
//! negative coefficient, inconsistent system), 2 on usage or internal
//! errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use kerovlab::kerov::{KerovStore, SamplingConfig};
use kerovlab::lab::TableSource;

#[derive(Parser, Debug)]
#[command(
    name = "kerovlab",
    version,
    about = "Exact Kerov character polynomials and their conjectural expansions"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Directory for cached K_r files.
    #[arg(long, global = true, env = "KEROVLAB_CACHE")]
    cache_dir: Option<PathBuf>,

    /// Directory holding c3.csv, c4.csv, a3.csv and closed_forms.json
    /// (defaults to the copies built into the binary).
    #[arg(long, global = true)]
    tables_dir: Option<PathBuf>,

    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Largest |λ| - r sampled while interpolating K_r.
    #[arg(long, global = true, default_value_t = SamplingConfig::default().max_extra_size)]
    sample_budget: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print K_r, or one graded component, in the R, C or Q generators.
    Kerov {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        r: u64,
        #[arg(long, value_enum, default_value_t = FamilyArg::R)]
        basis: FamilyArg,
        /// Only the terms of this weight.
        #[arg(long)]
        component: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        out: OutFormat,
    },
    /// Free cumulants R_2..R_max-k of a Young diagram.
    Cumulants {
        /// Parts of λ, comma separated, weakly decreasing.
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(2..))]
        max_k: u64,
    },
    /// Normalized character of λ on an r-cycle.
    Character {
        #[arg(long)]
        lambda: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        r: u64,
    },
    /// Solve for the monomial coefficients of f_k, g_k or F_k.
    Extract {
        #[arg(long, value_enum)]
        family: TargetArg,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        #[arg(long)]
        r_min: usize,
        #[arg(long)]
        r_max: usize,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        /// Upper end of the swept range (suite dependent default).
        #[arg(long)]
        r_max: Option<usize>,
    },
    /// Small-scale run of every invariant suite plus table checksums.
    Selftest,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    #[value(name = "R", alias = "r")]
    R,
    #[value(name = "C", alias = "c")]
    C,
    #[value(name = "Q", alias = "q")]
    Q,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TargetArg {
    #[value(name = "f")]
    LowerF,
    #[value(name = "g")]
    LowerG,
    #[value(name = "F")]
    UpperF,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Conj3,
    Conj4,
    Conj8,
    ClosedForms,
    #[value(name = "positivity-R")]
    PositivityR,
    #[value(name = "positivity-C")]
    PositivityC,
    #[value(name = "positivity-Q")]
    PositivityQ,
    KerovTheorem,
    Lemmas,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let config = SamplingConfig {
        max_extra_size: cli.global.sample_budget,
        ..SamplingConfig::default()
    };
    let store = KerovStore::new(config, cli.global.cache_dir.clone());
    let tables = cli
        .global
        .tables_dir
        .clone()
        .map_or(TableSource::Embedded, TableSource::Dir);
    let ctx = commands::Context { store, tables };

    match commands::run(&cli.command, &ctx) {
        Ok(outcome) => {
            println!("{}", outcome.stdout);
            if !outcome.summary.is_empty() {
                eprintln!("{}", outcome.summary);
            }
            if outcome.finding {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
