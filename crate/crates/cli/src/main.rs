use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use schurchan::applications::{clone, clone_pure, purity_amplify, purity_amplify_depolarized, symmetrize, AppResult};
use schurchan::channels::{apply_channel, enumerate_extremal_triples, extremal_choi, ExtremalSpec};
use schurchan::combinatorics::Staircase;
use schurchan::gt_paths::{exact_removal_distribution, sample_gt_path, sample_remove_box, HookWalkMode};
use schurchan::io::{read_json, read_matrix, to_json, write_matrix, MatrixFile};
use schurchan::streaming::{application_rows, resource_estimate, rows_to_table, streamed_apply, StreamMode, StreamOptions};
use schurchan::verify::suites::{run_all, run_suite, SuiteConfig};
use schurchan::verify::{rng_stream, tv_distance};
use schurchan::Error;

#[derive(Parser)]
#[command(name = "schurchan", version, about = "Unitary-equivariant, permutation-invariant quantum channels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the extremal triples (λ, μ, γ) with multiplicities.
    Classify {
        m: usize,
        n: usize,
        d: usize,
        #[arg(long)]
        json: bool,
    },
    /// Apply an extremal spec to a state, densely or through the streaming schedule.
    Simulate {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        stream: bool,
        #[command(flatten)]
        run: RunArgs,
        /// Output matrix file; printed to stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Sample box removals or GT paths and compare with the exact distribution.
    Sample {
        /// Partition rows, e.g. `3,1`.
        #[arg(long)]
        shape: String,
        /// `alg1`, `alg3` or `path`.
        #[arg(long, default_value = "alg3")]
        mode: String,
        #[arg(long, default_value_t = 10_000)]
        count: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Local dimension; defaults to the number of rows.
        #[arg(long)]
        d: Option<usize>,
    },
    /// Run verification suites; exits 1 if any case fails.
    Verify {
        #[arg(long, conflicts_with = "suite")]
        all: bool,
        #[arg(long)]
        suite: Vec<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Structural cost report for the streamed implementation.
    Estimate {
        m: usize,
        n: usize,
        d: usize,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long = "r-prime")]
        r_prime: Option<usize>,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        l: usize,
        #[arg(long)]
        json: bool,
    },
    /// Symmetrization, cloning and purity amplification.
    Apps {
        #[command(subcommand)]
        app: App,
    },
}

#[derive(Args, Clone, Copy)]
struct RunArgs {
    #[arg(long, default_value = "exact")]
    mode: StreamMode,
    #[arg(long, default_value_t = 1000)]
    trajectories: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

impl RunArgs {
    fn options(self) -> StreamOptions {
        StreamOptions { mode: self.mode, trajectories: self.trajectories, seed: self.seed }
    }
}

#[derive(Subcommand)]
enum App {
    /// Average over all permutations of the m input sites.
    Symmetrize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Optimal symmetric m → n cloner.
    Clone {
        /// State on the symmetric subspace of m sites, or a single-site ψ with `--pure`.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pure: bool,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// m → 1 purity amplification.
    Purify {
        /// m-site state, or a single-site ψ with `--alpha`.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        alpha: Option<f64>,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn site_count(dim: usize, d: usize) -> Option<usize> {
    let mut m = 0;
    let mut x = 1;
    while x < dim {
        x *= d;
        m += 1;
    }
    (x == dim).then_some(m)
}

fn emit_app(res: &AppResult, output: Option<PathBuf>) -> Outcome {
    let rec = res.record();
    match output {
        Some(path) => {
            write_matrix(&path, &res.output)?;
            println!("{}", to_json(&serde_json::json!({ "ledger": rec.ledger, "fidelity": rec.fidelity }))?);
        }
        None => println!("{}", to_json(&rec)?),
    }
    Ok(())
}

fn classify(m: usize, n: usize, d: usize, json: bool) -> Outcome {
    let triples = enumerate_extremal_triples(m, n, d)?;
    if json {
        println!("{}", to_json(&triples)?);
    } else {
        println!("{:<14} {:<14} {:<14} mult", "lambda", "mu", "gamma");
        for t in &triples {
            println!("{:<14} {:<14} {:<14} {}", t.lambda.to_string(), t.mu.to_string(), t.gamma.to_string(), t.mult);
        }
        println!("{} triples", triples.len());
    }
    Ok(())
}

fn simulate(spec: PathBuf, input: PathBuf, stream: bool, run: RunArgs, output: Option<PathBuf>) -> Outcome {
    let spec: ExtremalSpec = read_json(&spec)?;
    let rho = read_matrix(&input)?;
    let (out, ledger) = if stream {
        let res = streamed_apply(&spec, &rho, run.options())?;
        (res.output, Some(res.ledger))
    } else {
        (apply_channel(&extremal_choi(&spec)?, &rho)?, None)
    };
    match output {
        Some(path) => {
            write_matrix(&path, &out)?;
            if let Some(l) = ledger {
                println!("{}", to_json(&l)?);
            }
        }
        None => {
            let rec = serde_json::json!({ "output": MatrixFile::from_matrix(&out), "ledger": ledger });
            println!("{}", to_json(&rec)?);
        }
    }
    Ok(())
}

fn sample(shape: &str, mode: &str, count: u64, seed: u64, d: Option<usize>) -> Outcome {
    let parts: Vec<i64> = shape
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| Failure::Usage(format!("bad shape entry {t:?}: {e}"))))
        .collect::<Result<_, _>>()?;
    let d = d.unwrap_or(parts.len()).max(parts.len());
    let lambda = Staircase::from_parts(&parts, d)?;
    let mut rng = rng_stream(seed, 0);
    if mode == "path" {
        let mut hist: BTreeMap<String, u64> = BTreeMap::new();
        for _ in 0..count {
            let p = sample_gt_path(&lambda, &mut rng)?;
            let key: Vec<String> = p.steps().iter().map(|s| s.to_string()).collect();
            *hist.entry(key.join(" → ")).or_default() += 1;
        }
        println!("{} distinct paths to {lambda} in {count} samples", hist.len());
        for (k, v) in &hist {
            println!("{v:>10}  {k}");
        }
        return Ok(());
    }
    let walk: HookWalkMode = mode.parse()?;
    let exact = exact_removal_distribution(&lambda)?;
    let mut hist: BTreeMap<Staircase, u64> = BTreeMap::new();
    for _ in 0..count {
        *hist.entry(sample_remove_box(&lambda, &mut rng, walk)?).or_default() += 1;
    }
    let probs = exact.to_f64();
    println!("{:<16} {:>10} {:>12} {:>12}", "removal", "count", "empirical", "exact");
    for (mu, p) in &probs {
        let c = hist.get(mu).copied().unwrap_or(0);
        println!("{:<16} {:>10} {:>12.6} {:>12.6}", mu.to_string(), c, c as f64 / count.max(1) as f64, p);
    }
    println!("tv {:.6}", tv_distance(&hist, &exact)?);
    Ok(())
}

fn verify(all: bool, suites: Vec<String>, cfg: SuiteConfig, json: bool) -> Outcome {
    let reports = if all || suites.is_empty() {
        run_all(cfg)?
    } else {
        suites.iter().map(|s| run_suite(s, cfg)).collect::<schurchan::Result<Vec<_>>>()?
    };
    if json {
        println!("{}", to_json(&reports)?);
    } else {
        for r in &reports {
            print!("{}", r.to_table());
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    eprintln!("{} suites, {failed} failed", reports.len());
    if failed > 0 {
        Err(Failure::Verification)
    } else {
        Ok(())
    }
}

#[allow(clippy::too_many_arguments)]
fn estimate(m: usize, n: usize, d: usize, r: Option<usize>, r_prime: Option<usize>, k: usize, l: usize, json: bool) -> Outcome {
    let (r, r_prime) = (r.unwrap_or(d), r_prime.unwrap_or(d));
    let report = resource_estimate(m, n, d, r, r_prime, k, l)?;
    let rows = application_rows(m, n, d, r);
    if json {
        println!("{}", to_json(&serde_json::json!({ "report": report, "applications": rows }))?);
    } else {
        print!("{}", report.to_text());
        println!();
        print!("{}", rows_to_table(&rows));
    }
    Ok(())
}

fn apps(app: App) -> Outcome {
    match app {
        App::Symmetrize { input, m, d, run, output } => {
            let res = symmetrize(&read_matrix(&input)?, m, d, run.options())?;
            emit_app(&res, output)
        }
        App::Clone { input, m, n, pure, run, output } => {
            let rho = read_matrix(&input)?;
            let res = if pure {
                clone_pure(&rho, m, n, run.options())?
            } else {
                let d = (2..=rho.nrows())
                    .find(|&d| site_count(rho.nrows(), d) == Some(m))
                    .ok_or_else(|| Failure::Usage(format!("input dimension {} is not d^{m}", rho.nrows())))?;
                clone(&rho, m, n, d, run.options())?
            };
            emit_app(&res, output)
        }
        App::Purify { input, m, alpha, run, output } => {
            let rho = read_matrix(&input)?;
            let res = match alpha {
                Some(a) => purity_amplify_depolarized(&rho, a, m, run.options())?,
                None => {
                    let d = (2..=rho.nrows())
                        .find(|&d| site_count(rho.nrows(), d) == Some(m))
                        .ok_or_else(|| Failure::Usage(format!("input dimension {} is not d^{m}", rho.nrows())))?;
                    purity_amplify(&rho, m, d, run.options())?
                }
            };
            emit_app(&res, output)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Classify { m, n, d, json } => classify(m, n, d, json),
        Command::Simulate { spec, input, stream, run, output } => simulate(spec, input, stream, run, output),
        Command::Sample { shape, mode, count, seed, d } => sample(&shape, &mode, count, seed, d),
        Command::Verify { all, suite, seed, trials, tol, json } => verify(all, suite, SuiteConfig { seed, trials, tol }, json),
        Command::Estimate { m, n, d, r, r_prime, k, l, json } => estimate(m, n, d, r, r_prime, k, l, json),
        Command::Apps { app } => apps(app),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
