//! Command-line front end for the exact lattice toolkit.
//!
//! Machine-readable results go to standard output; progress and error text
//! go to standard error. Exit codes: 0 success, 1 a mathematical claim
//! failed (or an operational error), 2 usage error, 3 a search range
//! contained some n with no certificate.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use embed::{
    lemma68_counts, search_0mod6, search_2mod6, three_nonzero_squares,
    is_three_nonzero_square_exception, EmbeddingCertificate, SearchConfig, SearchOutcome,
    Verdict,
};
use lattice_core::rat::Rat;
use lattice_core::{standard_lattice, Definiteness, LatticeError};
use shortvec::{count_with_key, QuadForm};
use theta::{combination_rows, write_combination_csv};

#[derive(Parser)]
#[command(
    name = "cert-cli",
    version,
    about = "Exact lattice toolkit: theta tables, embedding-certificate search and verification"
)]
struct Cli {
    /// Worker threads for parallel commands (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect named lattices.
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Theta-series tables.
    Theta {
        #[command(subcommand)]
        cmd: ThetaCmd,
    },
    /// Search for embedding certificates over a range of n; one output file
    /// per n (certificate, or exhaustion report when nothing is found).
    Search {
        /// Discriminant residue mod 6 (0 or 2).
        #[arg(long)]
        dmod: u8,
        /// First n of the range (inclusive).
        #[arg(long = "n-from")]
        n_from: i64,
        /// Last n of the range (inclusive).
        #[arg(long = "n-to")]
        n_to: i64,
        /// Output directory for certificate and report files.
        #[arg(long)]
        out: PathBuf,
        /// Factor-pair budget per n.
        #[arg(long, default_value_t = 200)]
        max_pairs: usize,
        /// Classified-candidate budget per n.
        #[arg(long, default_value_t = 1_000_000)]
        max_candidates: u64,
    },
    /// Re-verify certificate files; exit 0 iff every file is valid.
    Verify {
        /// Certificate JSON files.
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Built-in cross-checks.
    Check {
        #[command(subcommand)]
        cmd: CheckCmd,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Print rank, signature, determinant, discriminant group and root count.
    Info { name: String },
}

#[derive(Subcommand)]
enum ThetaCmd {
    /// Write the coset theta combination table as CSV and test positivity of
    /// every row with 46 ≤ k ≤ min(kmax, 2108).
    Table {
        /// Largest k (table holds k ≡ 4 mod 6 up to this bound; ≤ 5000).
        #[arg(long)]
        kmax: i64,
        /// CSV output path.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Norm-2 counts of the two distinguished complements in E8: expect (2, >2).
    Lemma68,
    /// Cross-check the sum-of-three-nonzero-squares exception predicate
    /// against brute force for all m ≤ max.
    ThreeSquares {
        #[arg(long, default_value_t = 100_000)]
        max: i64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<u8, Box<dyn std::error::Error>> {
    match command {
        Command::Lattice { cmd: LatticeCmd::Info { name } } => lattice_info(&name),
        Command::Theta { cmd: ThetaCmd::Table { kmax, out } } => theta_table(kmax, &out),
        Command::Search { dmod, n_from, n_to, out, max_pairs, max_candidates } => {
            search(dmod, n_from, n_to, &out, max_pairs, max_candidates)
        }
        Command::Verify { files } => verify(&files),
        Command::Check { cmd: CheckCmd::Lemma68 } => check_lemma68(),
        Command::Check { cmd: CheckCmd::ThreeSquares { max } } => check_three_squares(max),
    }
}

fn format_disc_group<T: std::fmt::Display>(invariants: &[T]) -> String {
    if invariants.is_empty() {
        "trivial".into()
    } else {
        invariants
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

fn lattice_info(name: &str) -> Result<u8, Box<dyn std::error::Error>> {
    let lat = match standard_lattice(name) {
        Ok(l) => l,
        Err(LatticeError::UnknownName(n)) => {
            eprintln!("error: unknown lattice name \"{n}\"");
            return Ok(2);
        }
        Err(e) => return Err(e.into()),
    };
    let (p, q) = lat.signature();
    println!("name: {}", lat.label());
    println!("rank: {}", lat.rank());
    println!("signature: ({p}, {q})");
    println!("determinant: {}", lat.det());
    println!("integral: {}", lat.is_integral());
    println!("even: {}", lat.is_even());
    match lat.discriminant_group() {
        Ok(inv) => println!("discriminant group: {}", format_disc_group(&inv)),
        Err(_) => println!("discriminant group: n/a (Gram matrix is not integral)"),
    }
    if lat.definiteness() == Definiteness::Indefinite {
        println!("roots: n/a (indefinite)");
    } else {
        let form = QuadForm::new(lat.gram())?;
        match form.key_of_norm(&Rat::from_integer(2.into())) {
            Some(key) => println!("roots: {}", count_with_key(&form, key)),
            None => println!("roots: 0"),
        }
    }
    Ok(0)
}

fn theta_table(kmax: i64, out: &PathBuf) -> Result<u8, Box<dyn std::error::Error>> {
    if kmax > 5000 {
        eprintln!("error: --kmax is capped at 5000");
        return Ok(2);
    }
    if kmax < 4 {
        eprintln!("error: --kmax must be at least 4");
        return Ok(2);
    }
    let t0 = Instant::now();
    let rows = combination_rows(kmax)?;
    let mut file = fs::File::create(out)?;
    write_combination_csv(&rows, &mut file)?;
    eprintln!(
        "wrote {} rows to {} in {:.1?}",
        rows.len(),
        out.display(),
        t0.elapsed()
    );

    let flag_hi = kmax.min(2108);
    let mut bad = None;
    let mut flagged = 0u64;
    for row in &rows {
        if row.k >= 46 && row.k <= flag_hi {
            flagged += 1;
            if row.combination <= 0 && bad.is_none() {
                bad = Some(row);
            }
        }
    }
    println!("rows: {}", rows.len());
    println!("flagged window: 46..={flag_hi} (k = 4, 10 mod 12): {flagged} rows");
    match bad {
        Some(row) => {
            println!("nonpositive combination at k={}: {}", row.k, row.combination);
            Ok(1)
        }
        None => {
            println!("all flagged combinations positive");
            Ok(0)
        }
    }
}

fn search(
    dmod: u8,
    n_from: i64,
    n_to: i64,
    out: &PathBuf,
    max_pairs: usize,
    max_candidates: u64,
) -> Result<u8, Box<dyn std::error::Error>> {
    if dmod != 0 && dmod != 2 {
        eprintln!("error: --dmod must be 0 or 2");
        return Ok(2);
    }
    let min_n = if dmod == 0 { 2 } else { 1 };
    if n_from < min_n || n_from > n_to {
        eprintln!("error: need {min_n} <= n-from <= n-to");
        return Ok(2);
    }
    if max_pairs == 0 || max_candidates == 0 {
        eprintln!("error: budgets must be positive");
        return Ok(2);
    }
    fs::create_dir_all(out)?;
    let config = SearchConfig { max_pairs, max_candidates };
    let t0 = Instant::now();
    eprintln!("searching d = {dmod} (mod 6), n in [{n_from}, {n_to}] ...");

    let mut results: Vec<(i64, embed::Result<SearchOutcome>)> = (n_from..=n_to)
        .into_par_iter()
        .map(|n| {
            let outcome = if dmod == 2 {
                search_2mod6(n, &config)
            } else {
                search_0mod6(n, &config)
            };
            (n, outcome)
        })
        .collect();
    results.sort_by_key(|(n, _)| *n);
    eprintln!("search finished in {:.1?}", t0.elapsed());

    let mut any_exhausted = false;
    for (n, outcome) in results {
        match outcome? {
            SearchOutcome::Found(cert) => {
                let fname = format!("cert-d{dmod}-n{n}.json");
                cert.write_file(&out.join(&fname))?;
                let verdict = if cert.claimed_m == 7 { "nonneg-kodaira" } else { "general-type" };
                println!("{n}\t{}\t{verdict}\t{fname}", cert.claimed_m);
            }
            SearchOutcome::Exhausted(report) => {
                any_exhausted = true;
                let fname = format!("exhausted-d{dmod}-n{n}.json");
                fs::write(out.join(&fname), report.to_json())?;
                println!("{n}\t-\texhausted\t{fname}");
            }
        }
    }
    Ok(if any_exhausted { 3 } else { 0 })
}

fn verify(files: &[PathBuf]) -> Result<u8, Box<dyn std::error::Error>> {
    let mut all_valid = true;
    for path in files {
        match EmbeddingCertificate::read_file(path) {
            Ok(cert) => match embed::verify_certificate(&cert) {
                Verdict::GeneralType { m } => {
                    println!("{}\tvalid\tm={m}\tgeneral-type", path.display());
                }
                Verdict::NonnegKodaira => {
                    println!("{}\tvalid\tm=7\tnonneg-kodaira", path.display());
                }
                Verdict::Invalid { gate, detail } => {
                    all_valid = false;
                    println!("{}\tinvalid\tgate={gate}\t{detail}", path.display());
                }
            },
            Err(e) => {
                all_valid = false;
                println!("{}\tunreadable\t{e}", path.display());
            }
        }
    }
    Ok(if all_valid { 0 } else { 1 })
}

fn check_lemma68() -> Result<u8, Box<dyn std::error::Error>> {
    let (full, merged) = lemma68_counts()?;
    println!("norm-2 count, complement of <a1,a2,s1,s2,s3>: {full}");
    println!("norm-2 count, complement of <a1+a2,s1,s2,s3>: {merged}");
    if full == 2 && merged > 2 {
        println!("ok: counts are (2, >2)");
        Ok(0)
    } else {
        println!("FAIL: expected (2, >2)");
        Ok(1)
    }
}

fn check_three_squares(max: i64) -> Result<u8, Box<dyn std::error::Error>> {
    if max < 1 {
        eprintln!("error: --max must be positive");
        return Ok(2);
    }
    let mut exceptions = 0u64;
    for m in 1..=max {
        let brute_unrepresentable = three_nonzero_squares(m).is_none();
        let predicted = is_three_nonzero_square_exception(m);
        if brute_unrepresentable != predicted {
            println!(
                "counterexample: m={m} brute-force-unrepresentable={brute_unrepresentable} predicate={predicted}"
            );
            return Ok(1);
        }
        if predicted {
            exceptions += 1;
        }
    }
    println!("ok: predicate matches brute force for m <= {max} ({exceptions} exceptions)");
    Ok(0)
}
