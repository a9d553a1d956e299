use clap::{Parser, Subcommand};

use epiihs::cli::{self, GenfuncRoute, SumMethod};
use epiihs::exact::Cutoff;
use epiihs::quad::Quad1DConfig;
use epiihs::verify::Suite;
use epiihs::RunReport;

/// Equally positive integer-indexed harmonic sums: exact rational routes,
/// generating-function coefficients, gamma products, and integral
/// representations, reported as JSON on stdout.
#[derive(Parser)]
#[command(name = "epiihs", version)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate S_{a_k}(N): exact rational for finite N, float for N = inf
    Sum {
        /// Common exponent on every index
        #[arg(short)]
        a: u32,
        /// Number of nested indices
        #[arg(short)]
        k: u32,
        /// Upper cutoff: a positive integer, or "inf"
        #[arg(short = 'N', value_parser = parse_cutoff)]
        n: Cutoff,
        /// brute | recurrence | partition | series
        #[arg(long, default_value = "recurrence", value_parser = parse_from_str::<SumMethod>)]
        method: SumMethod,
    },
    /// Evaluate the infinite-limit generating function at t by several routes
    Genfunc {
        /// Exponent m >= 2
        #[arg(short)]
        m: u32,
        /// Evaluation point, |t| < 1
        #[arg(short, allow_hyphen_values = true)]
        t: f64,
        /// Comma-separated routes: gamma, series, product-finite
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "gamma,series,product-finite",
            value_parser = parse_from_str::<GenfuncRoute>
        )]
        route: Vec<GenfuncRoute>,
        /// Truncation order K of the series route
        #[arg(short = 'K', long = "trunc", default_value_t = 32)]
        trunc: usize,
        /// Number of factors kept by the product-finite route
        #[arg(short = 'N', long = "product-terms", default_value_t = 100_000)]
        product_terms: u64,
    },
    /// Integral representations of S_{m_k}(inf)
    Integrate {
        /// Exponent m >= 2 (the quad engine requires m = 2)
        #[arg(short)]
        m: u32,
        /// Number of nested indices
        #[arg(short)]
        k: u32,
        /// quad | mc
        #[arg(long, value_parser = parse_engine)]
        engine: Engine,
        /// Monte Carlo sample count
        #[arg(short, default_value_t = 1_000_000)]
        n: u64,
        /// Monte Carlo seed, echoed into the report
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Quadrature truncation cutoff U
        #[arg(long, default_value_t = 80.0)]
        cutoff: f64,
        /// Quadrature refinement levels (step 2^-levels)
        #[arg(long, default_value_t = 8)]
        levels: u32,
    },
    /// Run a named verification suite
    Verify {
        /// exact | series | gamma | integral | all
        #[arg(long, default_value = "all", value_parser = parse_from_str::<Suite>)]
        suite: Suite,
        /// Seed for the Monte Carlo checks
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Engine {
    Quad,
    Mc,
}

fn parse_engine(s: &str) -> Result<Engine, String> {
    match s {
        "quad" => Ok(Engine::Quad),
        "mc" => Ok(Engine::Mc),
        other => Err(format!("unknown engine '{other}'; expected quad|mc")),
    }
}

fn parse_cutoff(s: &str) -> Result<Cutoff, String> {
    if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
        return Ok(Cutoff::Infinite);
    }
    s.parse::<u64>()
        .map(Cutoff::Finite)
        .map_err(|_| format!("'{s}' is neither a positive integer nor \"inf\""))
}

fn parse_from_str<T>(s: &str) -> Result<T, String>
where
    T: std::str::FromStr<Err = epiihs::Error>,
{
    s.parse::<T>().map_err(|e| e.to_string())
}

fn run(command: Command) -> epiihs::Result<RunReport> {
    match command {
        Command::Sum { a, k, n, method } => cli::cmd_sum(a, k, n, method),
        Command::Genfunc {
            m,
            t,
            route,
            trunc,
            product_terms,
        } => cli::cmd_genfunc(m, t, &route, product_terms, trunc),
        Command::Integrate {
            m,
            k,
            engine,
            n,
            seed,
            cutoff,
            levels,
        } => match engine {
            Engine::Quad => cli::cmd_integrate_quad(m, k, Quad1DConfig::new(cutoff, levels)?),
            Engine::Mc => cli::cmd_integrate_mc(m, k, n, seed),
        },
        Command::Verify { suite, seed } => cli::cmd_verify(suite, seed),
    }
}

fn main() {
    let args = Args::parse();
    match run(args.command) {
        Ok(report) => {
            println!("{}", report.to_json_pretty());
            eprintln!("{}", report.human_summary());
            if !report.passed() {
                std::process::exit(1);
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(cli::exit_code(&err));
        }
    }
}
