//! `mplab` — exact divisor-sum arithmetic, multiperfect searches, radical
//! bounds, repunit growth, and factorial/ABC instrumentation on one
//! command line.
//!
//! Output contract: scalar results print as a single line; tabular
//! results print as TSV with a header row; `--json` switches every verb
//! to line-delimited JSON objects carrying the same fields. Identical
//! argument vectors produce byte-identical stdout. Exit status is 0 on
//! success, 1 on a domain error, 2 on a usage error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{ArgGroup, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::json;

use mplab_core::abc::{abc_quality, homogeneous_radical_sweep, poly_radical_scan};
use mplab_core::arith::{
    factorize_with, is_prime_u64, valuation, valuation2_u64, EffortCap, FactorOutcome,
    Factorization,
};
use mplab_core::bounds::{
    lemma12_product_bound, lemma4_product_bound, loopy_gap_report, loopy_scan_with, BVariant,
    BoundVerdict, DEFAULT_BOUNDARY_THRESHOLD,
};
use mplab_core::factorial::{
    lemma17_ratio, prop16_scan, prop18_monotonicity, prop19_scan, ShiftStatus,
};
use mplab_core::ingest::{load_database, persist_hits};
use mplab_core::repdigit::{
    euler_product_identity_check, lemma16_instrument, rank_of_apparition,
    scan_multirepdigit_multiperfect, sigma_ratio_chain, ScanFinding,
};
use mplab_core::search::{search_multiperfect_with, SearchConfig};
use mplab_core::{Error, Result};

fn parse_biguint(s: &str) -> std::result::Result<BigUint, String> {
    BigUint::from_str(s).map_err(|e| e.to_string())
}

/// Comma-separated coefficient list, kept as one clap value so the whole
/// polynomial arrives in a single flag.
#[derive(Clone)]
struct CoeffList(Vec<i64>);

fn parse_i64_list(s: &str) -> std::result::Result<CoeffList, String> {
    s.split(',')
        .map(|part| part.trim().parse::<i64>().map_err(|e| e.to_string()))
        .collect::<std::result::Result<Vec<i64>, String>>()
        .map(CoeffList)
}

#[derive(Clone)]
struct PrimeList(Vec<u64>);

fn parse_u64_list(s: &str) -> std::result::Result<PrimeList, String> {
    s.split(',')
        .map(|part| part.trim().parse::<u64>().map_err(|e| e.to_string()))
        .collect::<std::result::Result<Vec<u64>, String>>()
        .map(PrimeList)
}

fn parse_range(s: &str) -> std::result::Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once(',')
        .ok_or_else(|| "expected LO,HI".to_string())?;
    Ok((
        lo.trim().parse().map_err(|e| format!("{e}"))?,
        hi.trim().parse().map_err(|e| format!("{e}"))?,
    ))
}

#[derive(Parser)]
#[command(
    name = "mplab",
    version,
    about = "Multiperfect-number laboratory: exact σ arithmetic, searches, \
             radical bounds, repunit growth, and factorial/ABC instrumentation"
)]
struct Cli {
    /// Emit line-delimited JSON records instead of text/TSV.
    #[arg(long, global = true)]
    json: bool,

    /// Cap the number of worker threads for parallel scans (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor an integer into primes (TSV: prime, exponent).
    Factor {
        /// Decimal integer of any size.
        #[arg(value_parser = parse_biguint)]
        n: BigUint,
    },
    /// Sum of divisors σ(n).
    Sigma {
        #[arg(value_parser = parse_biguint)]
        n: BigUint,
    },
    /// Abundancy σ(n)/n in lowest terms.
    Abundancy {
        #[arg(value_parser = parse_biguint)]
        n: BigUint,
    },
    /// Radical of n: the product of its distinct prime factors.
    Rad {
        #[arg(value_parser = parse_biguint)]
        n: BigUint,
    },
    /// Exhaustive σ-sieve search for multiperfect numbers up to a limit
    /// (TSV: k, m, ascending m).
    Search {
        /// Search every m < limit.
        #[arg(long)]
        limit: u64,
        /// Keep only hits with this abundancy k.
        #[arg(long)]
        k: Option<u64>,
        /// Sieve segment length (entries per worker unit).
        #[arg(long)]
        segment_len: Option<u64>,
        /// Append the hits to a record database (idempotent by value).
        #[arg(long)]
        persist: Option<PathBuf>,
    },
    /// Check the radical lower bound rad(m)^β vs m, β from the parity of
    /// m and the 2-adic shape of k, across a record database
    /// (TSV: k, m, beta, rad, verdict).
    VerifyBound {
        /// Record database file to verify.
        #[arg(long)]
        db: PathBuf,
        /// Failing records with m below this stay "boundary", not "violates".
        #[arg(long, default_value_t = DEFAULT_BOUNDARY_THRESHOLD)]
        min_m: u64,
    },
    /// Check auxiliary divisor-sum statements over exhaustive ranges.
    #[command(subcommand)]
    LemmaCheck(Lemma),
    /// Repunit scans: multiperfect D·U_{2^s}, growth instrumentation,
    /// abundancy chains, and rank of apparition.
    #[command(group(
        ArgGroup::new("mode")
            .args(["instrument", "chain", "rank"])
            .multiple(false)
    ))]
    Repdigit {
        /// Repunit base g ≥ 2.
        #[arg(long)]
        base: u64,
        /// Scan digits 1 ≤ D ≤ d-max.
        #[arg(long, required_unless_present_any = ["instrument", "chain", "rank"],
              conflicts_with_all = ["instrument", "chain", "rank"])]
        d_max: Option<u64>,
        /// Scan repunit lengths 2^s for 1 ≤ s ≤ s-max.
        #[arg(long, required_unless_present_any = ["instrument", "chain", "rank"],
              conflicts_with_all = ["instrument", "chain", "rank"])]
        s_max: Option<u32>,
        /// Report the growth-bound quotient log(σ(U_m)/U_m) / (1 + log ω(m))²
        /// at this m.
        #[arg(long)]
        instrument: Option<u64>,
        /// Print the abundancy chain of U_1 | U_2 | U_4 | … up to U_{2^s}.
        #[arg(long)]
        chain: Option<u32>,
        /// Print the rank of apparition z(p): least n with p | U_n.
        #[arg(long)]
        rank: Option<u64>,
    },
    /// Factorial instrumentation: perfect n!, strict abundancy growth,
    /// radical smallness, and the n!+1 multiperfect scan.
    #[command(group(
        ArgGroup::new("mode")
            .required(true)
            .args(["scan", "monotonicity", "rad_ratio", "shifted"])
            .multiple(false)
    ))]
    Factorial {
        /// List every n ≤ N with σ(n!) = 2·n!.
        #[arg(long)]
        scan: Option<u64>,
        /// Decide whether σ(n!)/n! strictly increases on 2..=N.
        #[arg(long)]
        monotonicity: Option<u64>,
        /// Print log rad(n!) / log n!.
        #[arg(long)]
        rad_ratio: Option<u64>,
        /// Classify n! + 1 for n ≤ N as prime / multiperfect / neither.
        #[arg(long)]
        shifted: Option<u64>,
    },
    /// Quality of ABC triples and radical growth along polynomial values.
    #[command(group(
        ArgGroup::new("source")
            .required(true)
            .args(["a", "poly"])
    ))]
    #[command(group(
        ArgGroup::new("poly_mode")
            .args(["range", "homogeneous"])
            .multiple(false)
    ))]
    AbcQuality {
        /// First summand of a + b = c (requires --b).
        #[arg(long, requires = "b", value_parser = parse_biguint)]
        a: Option<BigUint>,
        /// Second summand.
        #[arg(long, requires = "a", value_parser = parse_biguint)]
        b: Option<BigUint>,
        /// Polynomial coefficients, highest degree first ("1,0,-2" = x² − 2).
        #[arg(long, requires = "poly_mode", value_parser = parse_i64_list,
              conflicts_with_all = ["a", "b"])]
        poly: Option<CoeffList>,
        /// Evaluate rad(f(x)) for x in LO,HI (inclusive).
        #[arg(long, value_parser = parse_range)]
        range: Option<(i64, i64)>,
        /// Sweep the homogenization F(m, n) over coprime pairs up to this bound.
        #[arg(long)]
        homogeneous: Option<u64>,
    },
    /// Load, validate, and report a multiperfect record database.
    Ingest {
        /// Record database file.
        #[arg(long)]
        db: PathBuf,
        /// Run a search up to this limit and append new hits to the database.
        #[arg(long)]
        from_search: Option<u64>,
    },
}

#[derive(Subcommand)]
enum Lemma {
    /// ν₂(σ(pᵉ)) = ν₂(e+1) + ν₂(p+1) − 1 for odd primes p and odd e.
    SigmaValuation {
        /// Check all odd primes p ≤ this bound.
        #[arg(long, default_value_t = 1000)]
        p_max: u64,
        /// Check all odd exponents e ≤ this bound.
        #[arg(long, default_value_t = 15)]
        e_max: u32,
    },
    /// σ(m)/m < 4 for m = p₁p₂(p₃p₄p₅)² over distinct odd primes.
    ProductBound {
        /// Four or five distinct odd primes, ascending ("3,5,7,11").
        #[arg(long, value_parser = parse_u64_list)]
        primes: PrimeList,
    },
    /// Abundancy ceiling for odd m with at least four distinct prime factors.
    OddAbundancy {
        /// Odd integer with ω(m) ≥ 4.
        #[arg(value_parser = parse_biguint)]
        n: BigUint,
    },
    /// Chain-product divisibility obstruction: no prime p in
    /// [3·2ᵉ, 3·2ᵉ + margin] admits a divisor chain (A·p − B) | (p² + p + 1).
    Loopy {
        /// Chain lengths 1 ≤ e ≤ e-max.
        #[arg(long)]
        e_max: usize,
        /// Chain entries 2 ≤ k ≤ k-max.
        #[arg(long)]
        k_max: u64,
        /// Scan primes in [3·2ᵉ, 3·2ᵉ + margin].
        #[arg(long)]
        margin: u64,
        /// Use the bare chain sum B instead of the trailing-1 variant.
        #[arg(long)]
        statement_b: bool,
        /// Probe the two integers just below each scan window instead.
        #[arg(long)]
        gap_report: bool,
    },
    /// Σ ν_p(n)/n over P-smooth n equals p/(p−1)² · Π q/(q−1), checked
    /// exactly against a certified truncation tail.
    EulerProduct {
        /// Use the first k primes (k ≤ 6).
        #[arg(long, default_value_t = 6)]
        first_k: usize,
        /// Sum the left side over smooth n ≤ height.
        #[arg(long, default_value_t = 100_000_000)]
        height: u64,
    },
}

fn main() -> ExitCode {
    // Die quietly when a downstream pipe closes (`mplab ... | head`),
    // like every other line-oriented tool.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        // One global pool, sized once; scans inherit it.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global();
    }
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

/// Factors under the environment effort cap, failing loudly (exit 1) when
/// a composite cofactor survives — partial factorizations are never
/// silently passed downstream.
fn factor_fully(n: &BigUint) -> Result<Factorization> {
    match factorize_with(n.clone(), &EffortCap::from_env())? {
        FactorOutcome::Complete(f) => Ok(f),
        FactorOutcome::Incomplete { cofactor, .. } => Err(Error::CapExceeded {
            context: format!("composite cofactor {cofactor} left unfactored"),
        }),
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    let json = cli.json;
    match cli.command {
        Command::Factor { n } => {
            let f = factor_fully(&n)?;
            if json {
                for (p, e) in f.entries() {
                    println!("{}", json!({ "prime": p.to_string(), "exponent": e }));
                }
            } else {
                println!("prime\texponent");
                for (p, e) in f.entries() {
                    println!("{p}\t{e}");
                }
            }
            Ok(())
        }
        Command::Sigma { n } => {
            let sigma = factor_fully(&n)?.sigma();
            if json {
                println!("{}", json!({ "sigma": sigma.to_string() }));
            } else {
                println!("{sigma}");
            }
            Ok(())
        }
        Command::Abundancy { n } => {
            let ratio = factor_fully(&n)?.abundancy();
            if json {
                println!(
                    "{}",
                    json!({
                        "numerator": ratio.numerator().to_string(),
                        "denominator": ratio.denominator().to_string(),
                    })
                );
            } else {
                println!("{ratio}");
            }
            Ok(())
        }
        Command::Rad { n } => {
            let radical = factor_fully(&n)?.radical();
            if json {
                println!("{}", json!({ "radical": radical.to_string() }));
            } else {
                println!("{radical}");
            }
            Ok(())
        }
        Command::Search { limit, k, segment_len, persist } => {
            let mut config = SearchConfig::default();
            config.k_filter = k;
            if let Some(len) = segment_len {
                config.segment_len = len;
            }
            let hits = search_multiperfect_with(limit, &config)?;
            if json {
                for hit in &hits {
                    println!("{}", json!({ "k": hit.k, "m": hit.m }));
                }
            } else {
                println!("k\tm");
                for hit in &hits {
                    println!("{}\t{}", hit.k, hit.m);
                }
            }
            if let Some(path) = persist {
                let report = persist_hits(&hits, &path)?;
                eprintln!(
                    "persisted: {} appended, {} already present",
                    report.appended.len(),
                    report.skipped.len()
                );
            }
            Ok(())
        }
        Command::VerifyBound { db, min_m } => {
            let database = load_database(&db)?;
            for warning in &database.warnings {
                eprintln!("warning: {warning}");
            }
            let results = mplab_core::bounds::verify_database(&database.records, min_m);
            if json {
                for (report, verdict) in &results {
                    println!(
                        "{}",
                        json!({
                            "k": report.record.k(),
                            "m": report.record.value().to_string(),
                            "beta": format!("{}/{}", report.beta_num, report.beta_den),
                            "rad": report.rad_m.to_string(),
                            "verdict": verdict_name(*verdict),
                        })
                    );
                }
            } else {
                println!("k\tm\tbeta\trad\tverdict");
                for (report, verdict) in &results {
                    println!(
                        "{}\t{}\t{}/{}\t{}\t{}",
                        report.record.k(),
                        report.record.value(),
                        report.beta_num,
                        report.beta_den,
                        report.rad_m,
                        verdict_name(*verdict)
                    );
                }
            }
            Ok(())
        }
        Command::LemmaCheck(lemma) => run_lemma(lemma, json),
        Command::Repdigit { base, d_max, s_max, instrument, chain, rank } => {
            run_repdigit(base, d_max, s_max, instrument, chain, rank, json)
        }
        Command::Factorial { scan, monotonicity, rad_ratio, shifted } => {
            run_factorial(scan, monotonicity, rad_ratio, shifted, json)
        }
        Command::AbcQuality { a, b, poly, range, homogeneous } => {
            run_abc(a, b, poly, range, homogeneous, json)
        }
        Command::Ingest { db, from_search } => {
            let database = load_database(&db)?;
            for warning in &database.warnings {
                eprintln!("warning: {warning}");
            }
            if let Some(limit) = from_search {
                let hits = search_multiperfect_with(limit, &SearchConfig::default())?;
                let report = persist_hits(&hits, &db)?;
                if json {
                    for m in &report.appended {
                        println!("{}", json!({ "action": "appended", "m": m }));
                    }
                    for m in &report.skipped {
                        println!("{}", json!({ "action": "skipped", "m": m }));
                    }
                } else {
                    println!("action\tm");
                    for m in &report.appended {
                        println!("appended\t{m}");
                    }
                    for m in &report.skipped {
                        println!("skipped\t{m}");
                    }
                }
            } else if json {
                for record in &database.records {
                    println!(
                        "{}",
                        json!({
                            "k": record.k(),
                            "m": record.value().to_string(),
                            "src": record.source(),
                        })
                    );
                }
            } else {
                println!("k\tm\tsrc");
                for record in &database.records {
                    println!(
                        "{}\t{}\t{}",
                        record.k(),
                        record.value(),
                        record.source().unwrap_or("")
                    );
                }
            }
            Ok(())
        }
    }
}

fn verdict_name(v: BoundVerdict) -> &'static str {
    match v {
        BoundVerdict::Holds => "holds",
        BoundVerdict::Boundary => "boundary",
        BoundVerdict::Violates => "violates",
    }
}

fn run_lemma(lemma: Lemma, json: bool) -> Result<()> {
    match lemma {
        Lemma::SigmaValuation { p_max, e_max } => {
            let mut counterexamples = 0u64;
            for p in (3..=p_max).filter(|&p| is_prime_u64(p)) {
                for e in (1..=e_max).step_by(2) {
                    let sigma = Factorization::from_entries(vec![(BigUint::from(p), e)])
                        .expect("prime power")
                        .sigma();
                    let lhs = valuation(&sigma, &BigUint::from(2u32));
                    let rhs = valuation2_u64(e as u64 + 1) + valuation2_u64(p + 1) - 1;
                    if lhs != rhs {
                        counterexamples += 1;
                        eprintln!("counterexample: p={p}, e={e}, ν₂(σ)={lhs}, formula={rhs}");
                    }
                }
            }
            report_counterexamples(counterexamples, json)
        }
        Lemma::ProductBound { primes } => {
            let ratio = lemma12_product_bound(&primes.0)?;
            if json {
                println!(
                    "{}",
                    json!({
                        "primes": primes.0,
                        "ratio": ratio.to_string(),
                        "below_4": true,
                    })
                );
            } else {
                println!("ratio\tbelow_4");
                println!("{ratio}\ttrue");
            }
            Ok(())
        }
        Lemma::OddAbundancy { n } => {
            let f = factor_fully(&n)?;
            let holds = lemma4_product_bound(&f)?;
            let abundancy = f.abundancy();
            if json {
                println!(
                    "{}",
                    json!({
                        "n": n.to_string(),
                        "abundancy": abundancy.to_string(),
                        "holds": holds,
                    })
                );
            } else {
                println!("n\tabundancy\tholds");
                println!("{n}\t{abundancy}\t{holds}");
            }
            Ok(())
        }
        Lemma::Loopy { e_max, k_max, margin, statement_b, gap_report } => {
            let variant = if statement_b { BVariant::Statement } else { BVariant::Proof };
            if gap_report {
                let probes = loopy_gap_report(e_max, k_max, variant)?;
                if json {
                    for inst in &probes {
                        println!(
                            "{}",
                            json!({
                                "chain": inst.ks(),
                                "p": inst.p_y(),
                                "p_prime": is_prime_u64(inst.p_y()),
                            })
                        );
                    }
                } else {
                    println!("chain\tp\tp_prime");
                    for inst in &probes {
                        let chain = inst
                            .ks()
                            .iter()
                            .map(u64::to_string)
                            .collect::<Vec<_>>()
                            .join(",");
                        println!("{chain}\t{}\t{}", inst.p_y(), is_prime_u64(inst.p_y()));
                    }
                }
                return Ok(());
            }
            let hits = loopy_scan_with(e_max, k_max, margin, variant)?;
            for inst in &hits {
                let chain = inst
                    .ks()
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(",");
                eprintln!("counterexample: chain={chain}, p={}", inst.p_y());
            }
            report_counterexamples(hits.len() as u64, json)
        }
        Lemma::EulerProduct { first_k, height } => {
            let checks = euler_product_identity_check(first_k, height)?;
            if json {
                for c in &checks {
                    println!(
                        "{}",
                        json!({
                            "prime": c.prime,
                            "lhs": c.lhs.to_string(),
                            "rhs": c.rhs.to_string(),
                            "tail_bound": c.tail_bound.to_string(),
                            "within": c.within,
                        })
                    );
                }
            } else {
                println!("prime\tlhs\trhs\ttail_bound\twithin");
                for c in &checks {
                    println!(
                        "{}\t{}\t{}\t{}\t{}",
                        c.prime, c.lhs, c.rhs, c.tail_bound, c.within
                    );
                }
            }
            Ok(())
        }
    }
}

fn report_counterexamples(count: u64, json: bool) -> Result<()> {
    if json {
        println!("{}", json!({ "counterexamples": count }));
    } else {
        println!("{count} counterexamples");
    }
    if count == 0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{count} counterexamples found")))
    }
}

fn run_repdigit(
    base: u64,
    d_max: Option<u64>,
    s_max: Option<u32>,
    instrument: Option<u64>,
    chain: Option<u32>,
    rank: Option<u64>,
    json: bool,
) -> Result<()> {
    let cap = EffortCap::from_env();
    if let Some(m) = instrument {
        let r = lemma16_instrument(base, m, &cap)?;
        if json {
            println!(
                "{}",
                json!({
                    "g": r.g,
                    "m": r.m,
                    "log_ratio": r.log_ratio,
                    "bound_term": r.bound_term,
                    "quotient": r.quotient,
                })
            );
        } else {
            println!("g\tm\tlog_ratio\tbound_term\tquotient");
            println!("{}\t{}\t{}\t{}\t{}", r.g, r.m, r.log_ratio, r.bound_term, r.quotient);
        }
        return Ok(());
    }
    if let Some(s) = chain {
        let c = sigma_ratio_chain(base, s, &cap)?;
        if json {
            for entry in &c.entries {
                println!(
                    "{}",
                    json!({
                        "s": entry.s,
                        "repunit": entry.repunit.to_string(),
                        "ratio": entry.ratio.to_string(),
                    })
                );
            }
        } else {
            println!("s\trepunit\tratio");
            for entry in &c.entries {
                println!("{}\t{}\t{}", entry.s, entry.repunit, entry.ratio);
            }
        }
        if let Some(s) = c.truncated_at {
            eprintln!("chain truncated at s={s}: factoring exceeded the effort cap");
        }
        return Ok(());
    }
    if let Some(p) = rank {
        let z = rank_of_apparition(p, base)?;
        if json {
            println!("{}", json!({ "p": p, "g": base, "rank": z }));
        } else {
            println!("{z}");
        }
        return Ok(());
    }
    let (d_max, s_max) = (d_max.expect("required by clap"), s_max.expect("required by clap"));
    let findings = scan_multirepdigit_multiperfect(base, d_max, s_max, &cap)?;
    if json {
        for f in &findings {
            match f {
                ScanFinding::Hit { d, s, k, value } => println!(
                    "{}",
                    json!({
                        "d": d, "s": s, "status": "hit",
                        "k": k, "value": value.to_string(),
                    })
                ),
                ScanFinding::Undetermined { d, s } => println!(
                    "{}",
                    json!({ "d": d, "s": s, "status": "undetermined" })
                ),
            }
        }
    } else {
        println!("d\ts\tstatus\tk\tvalue");
        for f in &findings {
            match f {
                ScanFinding::Hit { d, s, k, value } => {
                    println!("{d}\t{s}\thit\t{k}\t{value}");
                }
                ScanFinding::Undetermined { d, s } => {
                    println!("{d}\t{s}\tundetermined\t\t");
                }
            }
        }
    }
    Ok(())
}

fn run_factorial(
    scan: Option<u64>,
    monotonicity: Option<u64>,
    rad_ratio: Option<u64>,
    shifted: Option<u64>,
    json: bool,
) -> Result<()> {
    if let Some(n_max) = scan {
        let hits = prop16_scan(n_max)?;
        if json {
            for n in &hits {
                println!("{}", json!({ "n": n, "abundancy": "2/1" }));
            }
        } else {
            println!("n");
            for n in &hits {
                println!("{n}");
            }
        }
        return Ok(());
    }
    if let Some(n_max) = monotonicity {
        let strict = prop18_monotonicity(n_max)?;
        if json {
            println!("{}", json!({ "strictly_increasing": strict }));
        } else {
            println!("{strict}");
        }
        return Ok(());
    }
    if let Some(n) = rad_ratio {
        let ratio = lemma17_ratio(n)?;
        if json {
            println!("{}", json!({ "n": n, "ratio": ratio }));
        } else {
            println!("{ratio}");
        }
        return Ok(());
    }
    let n_max = shifted.expect("required by clap");
    let scan = prop19_scan(n_max, &EffortCap::from_env())?;
    if json {
        for (n, status) in &scan {
            let (name, k) = shift_status_name(status);
            match k {
                Some(k) => println!("{}", json!({ "n": n, "status": name, "k": k })),
                None => println!("{}", json!({ "n": n, "status": name })),
            }
        }
    } else {
        println!("n\tstatus\tk");
        for (n, status) in &scan {
            let (name, k) = shift_status_name(status);
            match k {
                Some(k) => println!("{n}\t{name}\t{k}"),
                None => println!("{n}\t{name}\t"),
            }
        }
    }
    Ok(())
}

fn shift_status_name(status: &ShiftStatus) -> (&'static str, Option<u64>) {
    match status {
        ShiftStatus::Prime => ("prime", None),
        ShiftStatus::NotMultiperfect => ("not-multiperfect", None),
        ShiftStatus::Multiperfect { k } => ("multiperfect", Some(*k)),
        ShiftStatus::Undetermined => ("undetermined", None),
    }
}

fn run_abc(
    a: Option<BigUint>,
    b: Option<BigUint>,
    poly: Option<CoeffList>,
    range: Option<(i64, i64)>,
    homogeneous: Option<u64>,
    json: bool,
) -> Result<()> {
    if let (Some(a), Some(b)) = (a, b) {
        let t = abc_quality(&a, &b)?;
        if json {
            println!(
                "{}",
                json!({
                    "a": t.a.to_string(),
                    "b": t.b.to_string(),
                    "c": t.c.to_string(),
                    "radical": t.radical.to_string(),
                    "quality": t.quality,
                })
            );
        } else {
            println!("a\tb\tc\tradical\tquality");
            println!("{}\t{}\t{}\t{}\t{}", t.a, t.b, t.c, t.radical, t.quality);
        }
        return Ok(());
    }
    let coeffs = poly.expect("required by clap").0;
    if let Some(max) = homogeneous {
        let rows = homogeneous_radical_sweep(&coeffs, max)?;
        if json {
            for r in &rows {
                println!(
                    "{}",
                    json!({
                        "m": r.m,
                        "n": r.n,
                        "value": r.value.to_string(),
                        "radical": r.radical.as_ref().map(|x| x.to_string()),
                        "exponent": r.exponent,
                    })
                );
            }
        } else {
            println!("m\tn\tvalue\tradical\texponent");
            for r in &rows {
                println!(
                    "{}\t{}\t{}\t{}\t{}",
                    r.m,
                    r.n,
                    r.value,
                    r.radical.as_ref().map(|x| x.to_string()).unwrap_or_default(),
                    r.exponent.map(|e| e.to_string()).unwrap_or_default()
                );
            }
        }
        return Ok(());
    }
    let (lo, hi) = range.expect("required by clap");
    let rows = poly_radical_scan(&coeffs, lo, hi)?;
    if json {
        for r in &rows {
            println!(
                "{}",
                json!({
                    "x": r.x,
                    "value": r.value.to_string(),
                    "radical": r.radical.as_ref().map(|x| x.to_string()),
                    "exponent": r.exponent,
                })
            );
        }
    } else {
        println!("x\tvalue\tradical\texponent");
        for r in &rows {
            println!(
                "{}\t{}\t{}\t{}",
                r.x,
                r.value,
                r.radical.as_ref().map(|x| x.to_string()).unwrap_or_default(),
                r.exponent.map(|e| e.to_string()).unwrap_or_default()
            );
        }
    }
    Ok(())
}
