//! Command-line front end: pairings, counting, bounds, certificates,
//! search with a JSON-lines cache, the gamma table, and the fixed
//! reproduction suite.
//!
//! Exit codes: 0 success, 1 scientific check failure, 2 usage error.

use clap::{Parser, Subcommand, ValueEnum};
use mslab::bounds::{alpha_window, compute_b, gamma_known, upper_bound_sum};
use mslab::cache::{Cache, CacheRecord};
use mslab::certificates::{
    build_configuration, build_partition_systems, certified_row_floor, verify_configuration,
    verify_partition_systems,
};
use mslab::error::Error;
use mslab::pac::{greedy_qpac, matching_qpac, verify_qpac, GreedyOutcome, PacMapping};
use mslab::search::{minimize_phi_threads, psi_bracket_threads, SearchConfig};
use mslab::verify::run_all;
use mslab::weights::WeightFunction;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "mslab", version, about = "Exact-arithmetic toolkit for nonnegative subset-sum counts of weight functions")]
struct Cli {
    /// Master seed for randomized search.
    #[arg(long, global = true, default_value_t = 1729)]
    seed: u64,

    /// Worker threads for search restarts (results are identical for any
    /// thread count).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// JSON-lines cache for search results.
    #[arg(long, global = true, default_value = "mslab-cache.jsonl")]
    cache: PathBuf,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum PacMethod {
    /// Greedy with matching fallback.
    Auto,
    /// Strict greedy; fails if it gets stuck.
    Greedy,
    /// Augmenting-path matching.
    Matching,
}

#[derive(Clone, Copy, ValueEnum)]
enum PacFormat {
    Paper,
    Tsv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a q-pairing of almost-complementaries on {1..2q+1}.
    Pac {
        #[arg(long)]
        q: usize,
        #[arg(long, value_enum, default_value_t = PacMethod::Auto)]
        method: PacMethod,
        #[arg(long, value_enum, default_value_t = PacFormat::Tsv)]
        format: PacFormat,
    },
    /// Count the nonnegative d-subsets of a weight function file.
    Phi {
        #[arg(long)]
        weights: PathBuf,
        #[arg(long)]
        d: usize,
        /// Also list each subset in bar notation.
        #[arg(long)]
        list: bool,
    },
    /// b(r), the alpha window, the construction bound, and the settled
    /// gamma value for one (n,d,r).
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r: usize,
    },
    /// Build and verify the lower-bound certificates applicable to (n,d).
    Certify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Minimize phi over weight functions with a fixed nonnegative count.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 200)]
        restarts: usize,
        /// Recompute even if the cache already has this (n,d,r,seed).
        #[arg(long)]
        force: bool,
    },
    /// Search over every r and report the implied psi upper bound.
    Psi {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 200)]
        restarts: usize,
    },
    /// Catalogue of settled gamma values (plus cached search bounds) for
    /// all n up to a limit.
    Table {
        #[arg(long = "n-max")]
        n_max: usize,
    },
    /// Run the fixed reproduction suite and report PASS/FAIL per check.
    VerifyPaper,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Hypothesis { .. }
        | Error::ConstructionFailure(_)
        | Error::InvariantViolation(_) => 1,
        Error::Domain(_)
        | Error::Validation(_)
        | Error::Capacity(_)
        | Error::Parse { .. }
        | Error::Io(_) => 2,
    }
}

fn main() -> ExitCode {
    // die quietly when a consumer like `head` closes the pipe
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("mslab: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.cmd {
        Cmd::Pac { q, method, format } => cmd_pac(q, method, format),
        Cmd::Phi { weights, d, list } => cmd_phi(&weights, d, list),
        Cmd::Bounds { n, d, r } => cmd_bounds(n, d, r),
        Cmd::Certify { n, d, weights } => cmd_certify(n, d, weights.as_deref()),
        Cmd::Search {
            n,
            d,
            r,
            restarts,
            force,
        } => cmd_search(n, d, r, restarts, force, cli.seed, cli.threads, &cli.cache),
        Cmd::Psi { n, d, restarts } => cmd_psi(n, d, restarts, cli.seed, cli.threads, &cli.cache),
        Cmd::Table { n_max } => cmd_table(n_max, &cli.cache),
        Cmd::VerifyPaper => cmd_verify_paper(),
    }
}

fn cmd_pac(q: usize, method: PacMethod, format: PacFormat) -> Result<ExitCode, Error> {
    let (mapping, method_used): (PacMapping, &str) = match method {
        PacMethod::Matching => (matching_qpac(q)?, "matching"),
        PacMethod::Greedy => match greedy_qpac(q)? {
            GreedyOutcome::Complete(m) => (m, "greedy"),
            GreedyOutcome::Stuck { index, domain } => {
                eprintln!("greedy pairing stuck at position {index} (domain string {domain})");
                return Ok(ExitCode::from(1));
            }
        },
        PacMethod::Auto => match greedy_qpac(q)? {
            GreedyOutcome::Complete(m) => (m, "greedy"),
            GreedyOutcome::Stuck { index, domain } => {
                eprintln!(
                    "greedy stuck at position {index} ({domain}); falling back to matching"
                );
                (matching_qpac(q)?, "matching")
            }
        },
    };
    let v = verify_qpac(&mapping)?;
    if !v.ok {
        return Err(Error::InvariantViolation(format!(
            "constructed pairing failed verification: {}",
            v.violations.join("; ")
        )));
    }
    eprintln!("# q={q}, pairs={}, method={method_used}", mapping.len());
    match format {
        PacFormat::Paper => {
            if 2 * q + 1 > 9 {
                return Err(Error::Domain(format!(
                    "paper format needs single-digit elements (2q+1 <= 9), got q={q}"
                )));
            }
            for (a, c) in &mapping.pairs {
                println!("{} ---> {};", a.digits().unwrap(), c.digits().unwrap());
            }
        }
        PacFormat::Tsv => {
            for (a, c) in &mapping.pairs {
                println!("{a}\t{c}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_phi(path: &std::path::Path, d: usize, list: bool) -> Result<ExitCode, Error> {
    let f = WeightFunction::load(path)?;
    if f.n() > 20 {
        return Err(Error::Capacity(format!(
            "exhaustive counting is limited to n <= 20; the file has n={}",
            f.n()
        )));
    }
    if list {
        for s in f.dplus_subsets(d)? {
            println!("{}", f.format_string(&s)?);
        }
    }
    println!("phi\t{}", f.count_dplus(d)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_bounds(n: usize, d: usize, r: usize) -> Result<ExitCode, Error> {
    let b = compute_b(n, d, r)?;
    let window = alpha_window(n, d, r)?;
    let bound = upper_bound_sum(n, d, r)?;
    let gamma = match gamma_known(n, d, r)? {
        Some(g) => format!("{} {}", g.value, g.status),
        None => "open".to_string(),
    };
    println!("{n}\t{d}\t{r}\t{b}\t{window}\t{bound}\t{gamma}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_certify(
    n: usize,
    d: usize,
    weights: Option<&std::path::Path>,
) -> Result<ExitCode, Error> {
    let f = weights.map(WeightFunction::load).transpose()?;
    if let Some(f) = &f {
        if f.n() != n {
            return Err(Error::Domain(format!(
                "weight file has n={}, certificate instance has n={n}",
                f.n()
            )));
        }
    }
    let mut any = false;
    let mut all_ok = true;

    if n == 2 * d + 2 && d >= 2 {
        any = true;
        let config = build_configuration(d)?;
        let v = verify_configuration(&config)?;
        println!("certificate\trow-configuration");
        println!("size\t{}", config.rows.len());
        let floor = upper_bound_sum(n, d, 2 * d - 1)?;
        println!("floor\t{floor}");
        println!("check\tstructure\t{}", if v.ok { "PASS" } else { "FAIL" });
        for msg in &v.violations {
            println!("violation\t{msg}");
        }
        all_ok &= v.ok;
        if let Some(f) = &f {
            match certified_row_floor(f, &config) {
                Ok(rows) => {
                    let phi = f.count_dplus(d)?;
                    let ok = phi >= floor;
                    println!("check\trow-floor\tPASS\trows={rows}");
                    println!(
                        "check\tphi-at-least-floor\t{}\tphi={phi}",
                        if ok { "PASS" } else { "FAIL" }
                    );
                    all_ok &= ok;
                }
                Err(Error::Hypothesis { k, detail }) => {
                    println!("check\trow-floor\tFAIL\thypothesis fails at k={k}: {detail}");
                    all_ok = false;
                }
                Err(e) => return Err(e),
            }
        }
    }

    if d >= 2 && n.is_multiple_of(d) && (d - 1) * n / d >= d {
        any = true;
        let sys = build_partition_systems(n, d)?;
        let v = verify_partition_systems(&sys, f.as_ref())?;
        println!("certificate\tpartition-system");
        println!("size\t{}", sys.partitions.len());
        println!("blocks\t{}", sys.block_count());
        match v.certified_floor {
            Some(floor) => println!("floor\t{floor}"),
            None => {
                let r = sys.r();
                let floor = mslab::combinatorics::binomial(r as u64, (d - 1) as u64)?;
                println!("floor\t{floor}");
            }
        }
        println!("check\tstructure\t{}", if v.ok { "PASS" } else { "FAIL" });
        for msg in &v.violations {
            println!("violation\t{msg}");
        }
        all_ok &= v.ok;
    }

    if !any {
        return Err(Error::Domain(format!(
            "no certificate regime applies to n={n}, d={d}: need n=2d+2 or d|n with r>=d"
        )));
    }
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn gamma_relation(n: usize, d: usize, r: usize, phi: u64) -> Result<String, Error> {
    Ok(match gamma_known(n, d, r)? {
        None => "open".to_string(),
        Some(g) => {
            let rel = match phi.cmp(&g.value) {
                std::cmp::Ordering::Equal => "matches",
                std::cmp::Ordering::Greater => "above",
                std::cmp::Ordering::Less => "below",
            };
            format!("{rel}-known-{}", g.status)
        }
    })
}

fn print_record(rec: &CacheRecord, source: &str) -> Result<(), Error> {
    let gamma = gamma_relation(rec.n, rec.d, rec.r, rec.best_phi)?;
    println!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
        rec.n,
        rec.d,
        rec.r,
        rec.seed,
        rec.restarts,
        rec.best_phi,
        rec.method,
        gamma,
        rec.best_f.join(","),
        source
    );
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    n: usize,
    d: usize,
    r: usize,
    restarts: usize,
    force: bool,
    seed: u64,
    threads: usize,
    cache_path: &std::path::Path,
) -> Result<ExitCode, Error> {
    let cache = Cache::new(cache_path);
    if !force {
        if let Some(rec) = cache.lookup(n, d, r, seed)? {
            eprintln!("# cache hit for (n={n}, d={d}, r={r}, seed={seed})");
            print_record(&rec, "cached")?;
            return Ok(ExitCode::SUCCESS);
        }
    }
    let cfg = SearchConfig {
        restarts,
        seed,
        ..SearchConfig::default()
    };
    let rep = minimize_phi_threads(n, d, r, &cfg, threads)?;
    let rec = CacheRecord::from_report(&rep, restarts);
    cache.append(&rec)?;
    print_record(&rec, "computed")?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_psi(
    n: usize,
    d: usize,
    restarts: usize,
    seed: u64,
    threads: usize,
    cache_path: &std::path::Path,
) -> Result<ExitCode, Error> {
    let cfg = SearchConfig {
        restarts,
        seed,
        ..SearchConfig::default()
    };
    let bracket = psi_bracket_threads(n, d, &cfg, threads)?;
    let cache = Cache::new(cache_path);
    for rep in &bracket.reports {
        let rec = CacheRecord::from_report(rep, restarts);
        cache.append(&rec)?;
        print_record(&rec, "computed")?;
    }
    println!("psi\t{}\t{}\t<=\t{}", n, d, bracket.psi_upper);
    Ok(ExitCode::SUCCESS)
}

fn cmd_table(n_max: usize, cache_path: &std::path::Path) -> Result<ExitCode, Error> {
    if n_max > 14 {
        return Err(Error::Domain(format!("table is limited to n <= 14, got {n_max}")));
    }
    let cache = Cache::new(cache_path);
    println!("n\td\tr\tgamma\tsearch");
    for n in 1..=n_max {
        for d in 1..=n {
            for r in 1..=n {
                let gamma = match gamma_known(n, d, r)? {
                    Some(g) => format!("{} {}", g.value, g.status),
                    None => "open".to_string(),
                };
                let search = match cache.best_phi(n, d, r)? {
                    Some(phi) => phi.to_string(),
                    None => String::new(),
                };
                println!("{n}\t{d}\t{r}\t{gamma}\t{search}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify_paper() -> Result<ExitCode, Error> {
    let report = run_all()?;
    for check in &report.checks {
        println!(
            "{}\texpected: {}\tobserved: {}\t{}",
            check.name,
            check.expected,
            check.observed,
            if check.pass { "PASS" } else { "FAIL" }
        );
    }
    let overall = report.overall();
    println!("overall\t{}", if overall { "PASS" } else { "FAIL" });
    Ok(if overall {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
