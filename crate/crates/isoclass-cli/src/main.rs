//! Verification sweeps over ranges of primes, with table or TSV output.
//!
//! Exit status: 0 on success, 1 if `--strict` is set and any identity check
//! failed, 2 on usage errors.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use isoclass::charsums::{delta, dirichlet_report, quad_lemma_sum, s_tau, s_tau_field, s_tau_hat, s_tau_hat_field, SumReport};
use isoclass::cm::{cm_weighted_sum, CmCase};
use isoclass::congruence::vanishing_residues;
use isoclass::modular::{primes_in_range, Prime};

#[derive(Parser)]
#[command(
    name = "isoclass",
    about = "Exact verification of class number identities from 2-isogeny character sums",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format for report rows.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Worker threads for prime sweeps (default: ISOCLASS_WORKERS or 1).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Exit with status 1 if any identity check fails.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Dirichlet's sum per prime: -1/p sum x (x/p) against the forms oracle.
    Dirichlet(RangeArgs),
    /// Exhaustive check of sum_u u((u^2+k)/p) = -p delta_k for all k.
    Lemma(RangeArgs),
    /// The weighted sum S_tau for the pair (a, b), one row per good prime.
    Main(SumArgs),
    /// The dual weighted sum S_tau_hat for the pair (a, b).
    Dual(SumArgs),
    /// The CM endomorphism sum S_phi for one of the cases -1, -2, -7.
    Cm(CmArgs),
    /// Congruence classes of primes where the error term R_{a,b} vanishes.
    Search(ParamArgs),
    /// The full battery: dirichlet, lemma, main, dual, and all CM cases.
    All(SumArgs),
}

#[derive(Args)]
struct RangeArgs {
    /// Prime range lo..hi (inclusive); lo must exceed 3.
    #[arg(long, value_parser = parse_range)]
    primes: (u64, u64),
}

#[derive(Args)]
struct ParamArgs {
    /// Parameter a: an integer, or a rational n/d evaluated mod each prime.
    #[arg(long, allow_hyphen_values = true)]
    a: Param,
    /// Parameter b: an integer, or a rational n/d evaluated mod each prime.
    #[arg(long, allow_hyphen_values = true)]
    b: Param,
}

#[derive(Args)]
struct SumArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    range: RangeArgs,
}

#[derive(Args)]
struct CmArgs {
    /// CM case: -1, -2, or -7.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_case)]
    case: CmCase,
    #[command(flatten)]
    range: RangeArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Tsv,
}

/// Integer or rational parameter; rationals become per-prime field elements.
#[derive(Clone, Copy, Debug)]
enum Param {
    Int(i64),
    Ratio(i64, i64),
}

impl Param {
    fn is_int(self) -> bool {
        matches!(self, Param::Int(_))
    }

    fn as_int(self) -> i64 {
        match self {
            Param::Int(n) => n,
            Param::Ratio(..) => unreachable!("checked with is_int"),
        }
    }

    /// None when the denominator vanishes mod p.
    fn to_field(self, p: Prime) -> Option<isoclass::FieldElement> {
        match self {
            Param::Int(n) => Some(p.element(n)),
            Param::Ratio(n, d) => p.element(d).inv().map(|inv| p.element(n) * inv),
        }
    }
}

impl FromStr for Param {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once('/') {
            None => s
                .parse::<i64>()
                .map(Param::Int)
                .map_err(|e| format!("invalid integer {s:?}: {e}")),
            Some((num, den)) => {
                let n: i64 = num.parse().map_err(|e| format!("invalid numerator {num:?}: {e}"))?;
                let d: i64 = den.parse().map_err(|e| format!("invalid denominator {den:?}: {e}"))?;
                if d == 0 {
                    return Err("denominator must be nonzero".into());
                }
                // Normalize the sign into the numerator.
                Ok(Param::Ratio(n * d.signum(), d.abs()))
            }
        }
    }
}

impl std::fmt::Display for Param {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Param::Int(n) => write!(f, "{n}"),
            Param::Ratio(n, d) => write!(f, "{n}/{d}"),
        }
    }
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected lo..hi, got {s:?}"))?;
    let lo: u64 = lo.trim().parse().map_err(|e| format!("bad lower bound: {e}"))?;
    let hi: u64 = hi.trim().parse().map_err(|e| format!("bad upper bound: {e}"))?;
    if lo <= 3 {
        return Err("lower bound must exceed 3".into());
    }
    if hi < lo {
        return Err("upper bound must be at least the lower bound".into());
    }
    Ok((lo, hi))
}

fn parse_case(s: &str) -> Result<CmCase, String> {
    match s {
        "-1" => Ok(CmCase::MinusOne),
        "-2" => Ok(CmCase::MinusTwo),
        "-7" => Ok(CmCase::MinusSeven),
        other => Err(format!("CM case must be -1, -2, or -7, got {other:?}")),
    }
}

/// One sweep entry: a finished report row or a skip with its reason.
enum Outcome {
    Row(SumReport),
    Skip(u64, &'static str),
}

struct Tally {
    rows: u64,
    passed: u64,
    failed: u64,
    skipped: u64,
}

impl Tally {
    fn new() -> Tally {
        Tally { rows: 0, passed: 0, failed: 0, skipped: 0 }
    }

    fn absorb(&mut self, other: &Tally) {
        self.rows += other.rows;
        self.passed += other.passed;
        self.failed += other.failed;
        self.skipped += other.skipped;
    }
}

const REPORT_HEADER: [&str; 9] =
    ["p", "a", "b", "S", "quotient", "hstar", "error", "divisible", "identity"];

fn print_header(format: Format) {
    match format {
        Format::Tsv => println!("{}", REPORT_HEADER.join("\t")),
        Format::Table => println!(
            "{:>10} {:>12} {:>12} {:>16} {:>10} {:>7} {:>7} {:>9} {:>8}",
            REPORT_HEADER[0],
            REPORT_HEADER[1],
            REPORT_HEADER[2],
            REPORT_HEADER[3],
            REPORT_HEADER[4],
            REPORT_HEADER[5],
            REPORT_HEADER[6],
            REPORT_HEADER[7],
            REPORT_HEADER[8]
        ),
    }
}

fn print_row(format: Format, r: &SumReport) {
    match format {
        Format::Tsv => println!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.p,
            r.a,
            r.b,
            r.s,
            r.quotient,
            r.hstar,
            r.error,
            r.divisible as u8,
            r.identity_holds as u8
        ),
        Format::Table => println!(
            "{:>10} {:>12} {:>12} {:>16} {:>10} {:>7} {:>7} {:>9} {:>8}",
            r.p,
            r.a,
            r.b,
            r.s,
            r.quotient,
            r.hstar,
            r.error,
            r.divisible as u8,
            r.identity_holds as u8
        ),
    }
}

fn summary(format: Format, label: &str, t: &Tally) {
    let line = format!(
        "# {label}: {} rows, {} passed, {} failed, {} skipped",
        t.rows, t.passed, t.failed, t.skipped
    );
    // Keep the TSV stream machine-readable; the summary goes to stderr there.
    match format {
        Format::Tsv => eprintln!("{line}"),
        Format::Table => println!("{line}"),
    }
}

/// Runs `f` over the primes with the requested parallelism, emitting rows in
/// ascending prime order regardless of completion order.
fn sweep(
    primes: &[Prime],
    workers: usize,
    format: Format,
    f: impl Fn(Prime) -> Outcome + Sync,
) -> Tally {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    let mut tally = Tally::new();
    print_header(format);
    for chunk in primes.chunks(128) {
        let outcomes: Vec<Outcome> = pool.install(|| chunk.par_iter().map(|&p| f(p)).collect());
        for outcome in &outcomes {
            match outcome {
                Outcome::Row(r) => {
                    tally.rows += 1;
                    if r.identity_holds {
                        tally.passed += 1;
                    } else {
                        tally.failed += 1;
                    }
                    print_row(format, r);
                }
                Outcome::Skip(p, reason) => {
                    tally.skipped += 1;
                    if format == Format::Table {
                        println!("# p = {p} skipped: {reason}");
                    }
                }
            }
        }
    }
    tally
}

fn run_main_sweep(args: &SumArgs, workers: usize, format: Format) -> Tally {
    let primes = primes_in_range(args.range.primes.0, args.range.primes.1);
    let (a, b) = (args.params.a, args.params.b);
    sweep(&primes, workers, format, move |p| compute_sum(a, b, p, false))
}

fn run_dual_sweep(args: &SumArgs, workers: usize, format: Format) -> Tally {
    let primes = primes_in_range(args.range.primes.0, args.range.primes.1);
    let (a, b) = (args.params.a, args.params.b);
    sweep(&primes, workers, format, move |p| compute_sum(a, b, p, true))
}

fn compute_sum(a: Param, b: Param, p: Prime, dual: bool) -> Outcome {
    if a.is_int() && b.is_int() {
        let result = if dual {
            s_tau_hat(a.as_int(), b.as_int(), p)
        } else {
            s_tau(a.as_int(), b.as_int(), p)
        };
        return match result {
            Ok(rep) => Outcome::Row(rep),
            Err(_) => Outcome::Skip(p.get(), "bad reduction"),
        };
    }
    let (Some(af), Some(bf)) = (a.to_field(p), b.to_field(p)) else {
        return Outcome::Skip(p.get(), "denominator divisible by p");
    };
    let result = if dual { s_tau_hat_field(af, bf) } else { s_tau_field(af, bf) };
    match result {
        Ok(rep) => Outcome::Row(rep),
        Err(_) => Outcome::Skip(p.get(), "bad reduction"),
    }
}

fn run_dirichlet(args: &RangeArgs, workers: usize, format: Format) -> Tally {
    let primes = primes_in_range(args.primes.0, args.primes.1);
    sweep(&primes, workers, format, |p| match dirichlet_report(p) {
        Ok(rep) => Outcome::Row(rep),
        Err(_) => Outcome::Skip(p.get(), "divisibility failure"),
    })
}

fn run_cm(case: CmCase, range: (u64, u64), workers: usize, format: Format) -> Tally {
    let primes = primes_in_range(range.0, range.1);
    sweep(&primes, workers, format, move |p| {
        if !case.splits(p) {
            return Outcome::Skip(p.get(), "split condition fails");
        }
        match cm_weighted_sum(case, p) {
            Ok(rep) => Outcome::Row(rep),
            Err(_) => Outcome::Skip(p.get(), "bad reduction"),
        }
    })
}

fn run_lemma(args: &RangeArgs, workers: usize, format: Format) -> Tally {
    let primes = primes_in_range(args.primes.0, args.primes.1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    match format {
        Format::Tsv => println!("p\tchecks\tfailures"),
        Format::Table => println!("{:>10} {:>8} {:>9}", "p", "checks", "failures"),
    }
    let mut tally = Tally::new();
    for chunk in primes.chunks(32) {
        let results: Vec<(u64, u64, u64)> = pool.install(|| {
            chunk
                .par_iter()
                .map(|&p| {
                    let mut failures = 0u64;
                    let m = p.get() as i64;
                    for k in 1..m {
                        let ok = quad_lemma_sum(k, p)
                            .and_then(|s| delta(k, p).map(|d| s == -m * d))
                            .unwrap_or(false);
                        failures += !ok as u64;
                    }
                    (p.get(), (m - 1) as u64, failures)
                })
                .collect()
        });
        for (p, checks, failures) in results {
            tally.rows += 1;
            if failures == 0 {
                tally.passed += 1;
            } else {
                tally.failed += 1;
            }
            match format {
                Format::Tsv => println!("{p}\t{checks}\t{failures}"),
                Format::Table => println!("{p:>10} {checks:>8} {failures:>9}"),
            }
        }
    }
    tally
}

fn run_search(args: &ParamArgs) -> Result<Tally, String> {
    let (Param::Int(a), Param::Int(b)) = (args.a, args.b) else {
        return Err("search requires integer parameters".into());
    };
    if a == 0 {
        return Err("search requires |a| >= 1".into());
    }
    let report = vanishing_residues(a, b).map_err(|e| e.to_string())?;
    let mut line = format!("mod {}:", report.modulus);
    if report.modulus == 1 && report.residues == [0] {
        line.push_str(" all");
    } else if report.residues.is_empty() {
        line.push_str(" none");
    } else {
        for r in &report.residues {
            write!(line, " {r}").unwrap();
        }
    }
    println!("{line}");
    println!(
        "# witnesses:{}",
        report
            .witnesses
            .iter()
            .fold(String::new(), |mut s, w| {
                write!(s, " {w}").unwrap();
                s
            })
    );
    println!(
        "# excluded:{}",
        report
            .excluded
            .iter()
            .fold(String::new(), |mut s, w| {
                write!(s, " {w}").unwrap();
                s
            })
    );
    println!("# exhaustively confirmed below {}", report.exhaustive_below);
    if !report.classes_without_witness.is_empty() {
        eprintln!(
            "# warning: no witness prime found for classes {:?}",
            report.classes_without_witness
        );
    }
    let mut tally = Tally::new();
    tally.rows = 1;
    tally.passed = 1;
    Ok(tally)
}

fn section(format: Format, title: &str) {
    match format {
        Format::Tsv => println!("# {title}"),
        Format::Table => println!("\n# {title}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let workers = cli
        .workers
        .or_else(|| {
            std::env::var("ISOCLASS_WORKERS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(1)
        .max(1);
    let format = cli.format;

    let mut total = Tally::new();
    match &cli.command {
        Command::Dirichlet(range) => {
            let t = run_dirichlet(range, workers, format);
            summary(format, "dirichlet", &t);
            total.absorb(&t);
        }
        Command::Lemma(range) => {
            let t = run_lemma(range, workers, format);
            summary(format, "lemma", &t);
            total.absorb(&t);
        }
        Command::Main(args) => {
            let t = run_main_sweep(args, workers, format);
            summary(format, "main", &t);
            total.absorb(&t);
        }
        Command::Dual(args) => {
            let t = run_dual_sweep(args, workers, format);
            summary(format, "dual", &t);
            total.absorb(&t);
        }
        Command::Cm(args) => {
            let t = run_cm(args.case, args.range.primes, workers, format);
            summary(format, "cm", &t);
            total.absorb(&t);
        }
        Command::Search(params) => match run_search(params) {
            Ok(t) => total.absorb(&t),
            Err(msg) => {
                eprintln!("error: {msg}");
                return ExitCode::from(2);
            }
        },
        Command::All(args) => {
            section(format, "dirichlet");
            let t = run_dirichlet(&args.range, workers, format);
            summary(format, "dirichlet", &t);
            total.absorb(&t);

            let lemma_hi = args.range.primes.1.min(199);
            if lemma_hi >= args.range.primes.0 {
                section(format, "lemma");
                let t = run_lemma(
                    &RangeArgs { primes: (args.range.primes.0, lemma_hi) },
                    workers,
                    format,
                );
                summary(format, "lemma", &t);
                total.absorb(&t);
            }

            section(format, "main");
            let t = run_main_sweep(args, workers, format);
            summary(format, "main", &t);
            total.absorb(&t);

            section(format, "dual");
            let t = run_dual_sweep(args, workers, format);
            summary(format, "dual", &t);
            total.absorb(&t);

            for case in CmCase::ALL {
                section(format, &format!("cm case {}", case.label()));
                let t = run_cm(case, args.range.primes, workers, format);
                summary(format, &format!("cm {}", case.label()), &t);
                total.absorb(&t);
            }
        }
    }

    summary(format, "total", &total);
    if cli.strict && total.failed > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
