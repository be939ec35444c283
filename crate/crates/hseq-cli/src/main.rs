//! `hseq` — compute, cross-check, and cache rows of the h-sequence.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage error,
//! 3 I/O or parse error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::{BigInt, BigUint};

use hseq::bfile::{parse_bfile, BFile};
use hseq::cache::RowCache;
use hseq::fastcount::{fast_h, FastCountError};
use hseq::oracle::{h_row, HRow};
use hseq::quasipoly::{base_point, extract, recurrence_eval};
use hseq::random::{
    expectation_exact, expectation_series, mc_embedding_dim, ModelConfig, EXACT_ORACLE_MAX,
};
use hseq::ri::{frame, strong_bound_threshold};

#[derive(Parser)]
#[command(name = "hseq", version, about = "Exact h-row computations for numerical semigroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one full row h(n, 0..=d_n), cache it, and print it.
    Row {
        #[arg(long)]
        n: u32,
        /// Worker threads (default: all cores; the result is identical for any J).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Compute h(n, d_n - k) by the fast strongly-bounded route.
    Fast {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Extract and print the quasipolynomial for h(n, d_n - k), n ≡ b mod 3.
    Qp {
        #[arg(long)]
        k: u32,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=2))]
        b: u8,
    },
    /// Compare computed rows and row sums against OEIS b-files
    /// (A319608 rows, A158206 sums).
    Verify {
        #[arg(long)]
        rows_bfile: PathBuf,
        #[arg(long)]
        sums_bfile: PathBuf,
        #[arg(long)]
        max_n: u32,
    },
    /// Expected embedding dimension: analytic series, the exhaustive exact
    /// oracle when M is small, and a Monte Carlo estimate, as one CSV row.
    Expect {
        #[arg(long = "M")]
        m: u32,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cross-check oracle rows, fast counts, and the recurrence against
    /// each other for all valid (n, k) up to the given bounds.
    Xcheck {
        #[arg(long)]
        max_n: u32,
        #[arg(long)]
        max_k: u32,
    },
}

enum Failure {
    Mismatch(String),
    Usage(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Mismatch(m) | Failure::Usage(m) | Failure::Io(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn default_cache() -> RowCache {
    let dir = std::env::var_os("HSEQ_CACHE_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("hseq-cache"));
    RowCache::new(dir)
}

fn with_jobs<T>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Failure>
where
    T: Send,
{
    match jobs {
        None => Ok(f()),
        Some(j) => {
            if j == 0 {
                return Err(Failure::Usage("--jobs must be at least 1".into()));
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| Failure::Io(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn cache_row(cache: &RowCache, n: u32) -> Result<HRow, Failure> {
    cache
        .load_or_compute(n)
        .map_err(|e| Failure::Io(e.to_string()))
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Row { n, jobs } => {
            if n == 0 {
                return Err(Failure::Usage("--n must be at least 1".into()));
            }
            let row = with_jobs(jobs, move || h_row(n))?;
            default_cache()
                .store(&row)
                .map_err(|e| Failure::Io(e.to_string()))?;
            println!("{}", join(&row.values));
            Ok(())
        }
        Command::Fast { n, k, jobs } => {
            if n == 0 {
                return Err(Failure::Usage("--n must be at least 1".into()));
            }
            let value = with_jobs(jobs, move || fast_h(n, k))?.map_err(|e| match e {
                FastCountError::ThresholdNotMet { .. } => Failure::Usage(e.to_string()),
                other => Failure::Io(other.to_string()),
            })?;
            println!("{value}");
            Ok(())
        }
        Command::Qp { k, b } => {
            let qp = extract(k, b).map_err(|e| Failure::Usage(e.to_string()))?;
            print!("{qp}");
            Ok(())
        }
        Command::Verify { rows_bfile, sums_bfile, max_n } => {
            let rows_data = read_bfile(&rows_bfile)?;
            let sums_data = read_bfile(&sums_bfile)?;
            verify(&rows_data, &sums_data, max_n)
        }
        Command::Expect { m, p, trials, seed } => {
            if m == 0 {
                return Err(Failure::Usage("--M must be at least 1".into()));
            }
            if !(0.0..=1.0).contains(&p) {
                return Err(Failure::Usage("--p must lie in [0, 1]".into()));
            }
            if trials == 0 {
                return Err(Failure::Usage("--trials must be at least 1".into()));
            }
            let cache = default_cache();
            let rows: Vec<HRow> = (1..=m)
                .map(|n| cache_row(&cache, n))
                .collect::<Result<_, _>>()?;
            let analytic = expectation_series(m, p, &rows)
                .map_err(|e| Failure::Io(e.to_string()))?;
            let exact = if m <= EXACT_ORACLE_MAX {
                format!("{:.12}", expectation_exact(m, p).expect("M checked"))
            } else {
                String::new()
            };
            let cfg = ModelConfig { max_value: m, p, trials, seed };
            let est = mc_embedding_dim(&cfg);
            println!("M,p,analytic,exact,mc_mean,mc_stderr,trials,seed");
            println!(
                "{m},{p},{analytic:.12},{exact},{:.12},{:.12},{trials},{seed}",
                est.mean, est.stderr
            );
            Ok(())
        }
        Command::Xcheck { max_n, max_k } => xcheck(max_n, max_k),
    }
}

fn join(values: &[BigUint]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn read_bfile(path: &PathBuf) -> Result<BFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    parse_bfile(&text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

/// Rows are linearized in the b-file by concatenating h(1, 0..), h(2, 0..),
/// ... in order; entry indices must be consecutive. The first entry anchors
/// the numbering.
fn verify(rows_data: &BFile, sums_data: &BFile, max_n: u32) -> Result<(), Failure> {
    let cache = default_cache();
    let mut rows_checked = 0u64;
    let mut sums_checked = 0u64;

    let mut entries = rows_data.entries.iter();
    let mut cursor = entries.next();
    let mut expect_index = cursor.map(|e| e.0);
    'rows: for n in 1..=max_n {
        let row = cache_row(&cache, n)?;
        for (i, ours) in row.values.iter().enumerate() {
            let Some(&(index, ref theirs)) = cursor else {
                break 'rows; // b-file exhausted
            };
            if Some(index) != expect_index {
                return Err(Failure::Io(format!(
                    "rows b-file has non-consecutive index {index} (expected {}); cannot linearize",
                    expect_index.unwrap_or(index)
                )));
            }
            if &BigInt::from(ours.clone()) != theirs {
                return Err(Failure::Mismatch(format!(
                    "row mismatch at n = {n}, i = {i} (b-file index {index}): ours {ours}, b-file {theirs}"
                )));
            }
            rows_checked += 1;
            cursor = entries.next();
            expect_index = Some(index + 1);
        }
    }

    for n in 1..=max_n {
        if let Some(theirs) = sums_data.value(n as i64) {
            let sum = cache_row(&cache, n)?.sum();
            if &BigInt::from(sum.clone()) != theirs {
                return Err(Failure::Mismatch(format!(
                    "row-sum mismatch at n = {n}: ours {sum}, b-file {theirs}"
                )));
            }
            sums_checked += 1;
        }
    }

    println!("verified {rows_checked} row entries and {sums_checked} row sums up to n = {max_n}");
    Ok(())
}

fn xcheck(max_n: u32, max_k: u32) -> Result<(), Failure> {
    let cache = default_cache();
    let mut comparisons = 0u64;
    for n in 1..=max_n {
        let fr = frame(n);
        let row = cache_row(&cache, n)?;
        for k in 0..=max_k.min(fr.d) {
            if (n as i64) <= strong_bound_threshold(k, fr.b) {
                continue;
            }
            let oracle = &row.values[(fr.d - k) as usize];
            let fast = fast_h(n, k).map_err(|e| Failure::Io(e.to_string()))?;
            if &fast != oracle {
                return Err(Failure::Mismatch(format!(
                    "fast/oracle mismatch at n = {n}, k = {k}: fast {fast}, oracle {oracle}"
                )));
            }
            let m = base_point(k, fr.b);
            let tail: Vec<BigUint> = (0..=k)
                .map(|l| fast_h(m, l))
                .collect::<Result<_, _>>()
                .map_err(|e| Failure::Io(e.to_string()))?;
            let rec = recurrence_eval(m, &tail, n as u64)
                .map_err(|e| Failure::Io(e.to_string()))?;
            if &rec != oracle {
                return Err(Failure::Mismatch(format!(
                    "recurrence/oracle mismatch at n = {n}, k = {k}: recurrence {rec}, oracle {oracle}"
                )));
            }
            comparisons += 1;
        }
    }
    println!("xcheck ok: {comparisons} (n, k) pairs agree across oracle, fast count, and recurrence");
    Ok(())
}
