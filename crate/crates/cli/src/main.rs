use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod input;
mod output;

#[derive(Parser, Debug)]
#[command(name = "tambara", version, about = "Biset transformations of Tambara functors on finite G-sets")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// How thoroughly biset composites check their own well-definedness.
    #[arg(long, global = true, value_enum, default_value_t = VerifyArg::Eager)]
    verify: VerifyArg,
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Add wall-clock time to the report (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum VerifyArg {
    Eager,
    Fast,
}

#[derive(Clone, Copy, Debug, PartialEq, ValueEnum)]
pub enum FunctorKind {
    /// Fixed points `X ↦ Map_G(X, R)` of a coefficient ring.
    Fp,
    /// The Burnside semi-Tambara functor of G-sets over `X`.
    Burnside,
}

#[derive(Args, Debug, Clone)]
pub struct FunctorArgs {
    #[arg(long, value_enum, default_value_t = FunctorKind::Fp)]
    pub functor: FunctorKind,
    /// Built-in group name (trivial, c2, c3, c4, v4, s3, c6) or a group JSON file.
    #[arg(long)]
    pub group: Option<String>,
    /// `zmod:n` or a ring JSON file.
    #[arg(long, default_value = "zmod:4")]
    pub ring: String,
}

#[derive(Args, Debug, Clone)]
pub struct SuiteArgs {
    /// Largest G-set in the universe of objects.
    #[arg(long, default_value_t = 4)]
    pub max_size: usize,
    /// Cap on map pairs per check; all pairs when omitted.
    #[arg(long)]
    pub max_cases: Option<usize>,
    /// Value sets up to this size are enumerated, larger ones sampled.
    #[arg(long, default_value_t = 16)]
    pub enumerate_limit: usize,
    /// Samples drawn from a value set that is not enumerated.
    #[arg(long, default_value_t = 6)]
    pub samples: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build Π_f(A) and its exponential diagram from a document with `f` and `p`; if the document
    /// also has `lam`, `rho`, `pi`, test that candidate against the canonical one.
    ExpDiagram {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value_t = 1_000_000)]
        max_sections: usize,
    },
    /// Compute U∘X: its classes, representatives and H-action.
    BisetApply {
        /// identity, ind:H:G, res:G:H, or a biset JSON file.
        #[arg(long)]
        biset: String,
        #[arg(long)]
        group: Option<String>,
        /// point, regular, trivial:n, or a document with a `gset` entry.
        #[arg(long)]
        gset: String,
    },
    /// Check that U∘- carries exponential diagrams to exponential diagrams.
    VerifyPhi {
        #[arg(long)]
        biset: String,
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        /// A document with a single pair `f`, `p` instead of the sweep.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Compose `second ∘ first` from a document with two bispans.
    Compose {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        group: Option<String>,
        /// A document whose `bispan` the composite must be equivalent to.
        #[arg(long)]
        check: Option<PathBuf>,
        #[arg(long, default_value_t = 1_000_000)]
        max_sections: usize,
    },
    /// Tabulate a bispan's action `u_+ v_• w*` on a functor.
    Eval {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        functor: FunctorArgs,
        #[arg(long, default_value_t = 4096)]
        max_elements: usize,
    },
    /// Run the Tambara axiom suite.
    CheckTambara {
        #[command(flatten)]
        functor: FunctorArgs,
        #[command(flatten)]
        suite: SuiteArgs,
    },
    /// Run the axiom suite on T∘U.
    Transform {
        #[command(flatten)]
        functor: FunctorArgs,
        #[arg(long)]
        biset: String,
        #[command(flatten)]
        suite: SuiteArgs,
    },
    /// Check an ideal and the quotient functor it defines.
    Quotient {
        #[command(flatten)]
        functor: FunctorArgs,
        /// zero, whole, values:a,b,..., or an ideal JSON file.
        #[arg(long)]
        ideal: String,
        #[command(flatten)]
        suite: SuiteArgs,
    },
    /// Check a multiplicative subfunctor and the localized functor.
    Localize {
        #[command(flatten)]
        functor: FunctorArgs,
        /// powers:a, values:a,b,..., or a subfunctor JSON file.
        #[arg(long)]
        subfunctor: String,
        #[command(flatten)]
        suite: SuiteArgs,
    },
    /// Quotients commute with biset transformation.
    CheckCor27 {
        #[command(flatten)]
        functor: FunctorArgs,
        #[arg(long)]
        biset: String,
        #[arg(long)]
        ideal: String,
        #[command(flatten)]
        suite: SuiteArgs,
    },
    /// Fractions commute with biset transformation.
    CheckCor28 {
        #[command(flatten)]
        functor: FunctorArgs,
        #[arg(long)]
        biset: String,
        #[arg(long)]
        subfunctor: String,
        #[command(flatten)]
        suite: SuiteArgs,
    },
    /// List representatives of the isomorphism classes of G-sets up to a size.
    Universe {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let verify = match cli.verify {
        VerifyArg::Eager => tambara_core::Verify::Eager,
        VerifyArg::Fast => tambara_core::Verify::Fast,
    };
    let ctx = commands::Context { verify, seed: cli.seed };
    let start = Instant::now();
    let outcome = match cli.command {
        Command::ExpDiagram { input, group, max_sections } => commands::exp_diagram(&ctx, &input, group.as_deref(), max_sections),
        Command::BisetApply { biset, group, gset } => commands::biset_apply(&ctx, &biset, group.as_deref(), &gset),
        Command::VerifyPhi { biset, group, max_size, input } => {
            commands::verify_phi(&ctx, &biset, group.as_deref(), max_size, input.as_deref())
        }
        Command::Compose { input, group, check, max_sections } => {
            commands::compose(&ctx, &input, group.as_deref(), check.as_deref(), max_sections)
        }
        Command::Eval { input, functor, max_elements } => commands::eval(&ctx, &input, &functor, max_elements),
        Command::CheckTambara { functor, suite } => commands::check_tambara(&ctx, &functor, &suite),
        Command::Transform { functor, biset, suite } => commands::transform(&ctx, &functor, &biset, &suite),
        Command::Quotient { functor, ideal, suite } => commands::quotient(&ctx, &functor, &ideal, &suite),
        Command::Localize { functor, subfunctor, suite } => commands::localize(&ctx, &functor, &subfunctor, &suite),
        Command::CheckCor27 { functor, biset, ideal, suite } => commands::cor27(&ctx, &functor, &biset, &ideal, &suite),
        Command::CheckCor28 { functor, biset, subfunctor, suite } => {
            commands::cor28(&ctx, &functor, &biset, &subfunctor, &suite)
        }
        Command::Universe { group, max_size } => commands::universe(&group, max_size),
    };
    match outcome {
        Ok(mut report) => {
            if cli.timing {
                report.timing_ms = Some(start.elapsed().as_millis());
            }
            let text = match cli.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            print!("{text}");
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
