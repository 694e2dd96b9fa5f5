//! `tzl` — command-line surface over the core toolkit: sieve construction,
//! admissibility, tuple enumeration, truncated series, inequality audits,
//! and growth probes. Output is CSV with `#` provenance comments or JSON
//! lines; identical configuration yields byte-identical output at any
//! thread count.

mod config;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use config::{parse_count, CountGrid, OutputFormat, RealGrid, RunConfig};
use output::{csv_quote, sig12, Emitter};
use tzl_core::admissible::{
    check_admissible, class_root, count_tuples, enumerate_tuples, equivalence_class,
    extend_admissible, DEFAULT_MAX_POWER,
};
use tzl_core::growth::{
    euler_baseline, proposition_probe, theorem_ratio_probe, tuple_divergence_probe,
    twin_corollary_probe,
};
use tzl_core::lemma::{corollary_equivalence_probe, gcd_shift_audit, lemma2_check, lemma3_check};
use tzl_core::series::{
    log_zeta_k_deriv, log_zeta_k_deriv_forced, prime_form_sum, prime_form_sum_forced, remainder_s,
    zeta_eval, WeightContext,
};
use tzl_core::sieve::{build_sieve, SieveTable};
use tzl_core::{Error, OffsetTuple, Result, SeriesSample};

#[derive(Parser)]
#[command(name = "tzl", version, about = "Prime k-tuple sieve, series, and audit toolkit")]
struct Cli {
    #[command(flatten)]
    globals: Globals,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Globals {
    /// TOML config file; explicit flags override its values
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Cap rayon worker threads (0 or absent = library default)
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Output path; "-" writes to stdout
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<String>,
    /// Sieve table size; by default each command sizes its own table
    #[arg(long, global = true, value_parser = parse_count, value_name = "N")]
    sieve_limit: Option<u64>,
    /// Sieve segment size in integers (≥ 64)
    #[arg(long, global = true, value_parser = parse_count, value_name = "N")]
    segment_size: Option<u64>,
    /// Permit s ≤ 1 in series commands (truncations stay finite)
    #[arg(long, global = true)]
    force_s: bool,
    /// Permit non-power pairs in `lemma gcd`
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build or inspect sieve tables
    Sieve {
        #[command(subcommand)]
        cmd: SieveCmd,
    },
    /// Admissibility checks, extensions, and shift equivalence classes
    Admissible {
        #[command(subcommand)]
        cmd: AdmissibleCmd,
    },
    /// Enumerate or count prime k-tuples
    Tuples {
        #[command(subcommand)]
        cmd: TuplesCmd,
    },
    /// Truncated log-zeta-type series
    Series {
        #[command(subcommand)]
        cmd: SeriesCmd,
    },
    /// Finite-N inequality audits
    Lemma {
        #[command(subcommand)]
        cmd: LemmaCmd,
    },
    /// Divergence and growth probes
    Growth {
        #[command(subcommand)]
        cmd: GrowthCmd,
    },
}

#[derive(Subcommand)]
enum SieveCmd {
    /// Build a table and optionally write its primality cache
    Build {
        #[arg(long, value_parser = parse_count)]
        limit: u64,
        /// Cache file path; defaults to $TZL_CACHE_DIR/tzl-sieve-<limit>.bits
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Prime count, psi, and prime-power census for a limit
    Stats {
        #[arg(long, value_parser = parse_count)]
        limit: u64,
    },
}

#[derive(Subcommand)]
enum AdmissibleCmd {
    /// Residue-coverage admissibility check
    Check {
        #[arg(long = "H")]
        h: Option<String>,
    },
    /// Extend an admissible tuple by the smallest workable power of a base
    Extend {
        #[arg(long = "H")]
        h: Option<String>,
        #[arg(long)]
        base: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_POWER)]
        max_power: u32,
    },
    /// Powers of an even base up to a bound, or the class root of a shift
    Class {
        #[arg(long, requires = "bound", conflicts_with = "root")]
        base: Option<u64>,
        #[arg(long, value_parser = parse_count)]
        bound: Option<u64>,
        #[arg(long, value_parser = parse_count)]
        root: Option<u64>,
    },
}

#[derive(Subcommand)]
enum TuplesCmd {
    /// List base primes of full prime tuples
    List {
        #[arg(long = "H")]
        h: Option<String>,
        #[arg(long, value_parser = parse_count)]
        limit: u64,
    },
    /// Count them
    Count {
        #[arg(long = "H")]
        h: Option<String>,
        #[arg(long, value_parser = parse_count)]
        limit: u64,
    },
}

#[derive(Args, Clone)]
struct SeriesArgs {
    #[arg(long = "H", conflicts_with = "k")]
    h: Option<String>,
    /// Shorthand for the singleton tuple {0} (only k = 1 has a canonical H)
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    s: f64,
    #[arg(long = "N", value_parser = parse_count)]
    n: u64,
}

#[derive(Subcommand)]
enum SeriesCmd {
    /// Σ λ(n)/n_gm^s (von Mangoldt form, m = 0)
    Logzeta {
        #[command(flatten)]
        args: SeriesArgs,
    },
    /// Σ λ(n) log^m(n_gm)/n_gm^s
    Deriv {
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[command(flatten)]
        args: SeriesArgs,
    },
    /// Σ log^m(p_gm)/p_gm^s over full prime tuples
    Primeform {
        #[arg(long, default_value_t = 0)]
        m: u32,
        #[command(flatten)]
        args: SeriesArgs,
    },
    /// Prime-power remainder against its ζ((k+1)/k) bound
    Remainder {
        #[command(flatten)]
        args: SeriesArgs,
    },
}

#[derive(Subcommand)]
enum LemmaCmd {
    /// Gap 2i vs (2i)^l with trailing remainder window
    Two {
        #[arg(long)]
        two_i: u64,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        s: f64,
        #[arg(long = "N", value_parser = parse_count)]
        n: u64,
    },
    /// Gap (2j)^l vs 2j with head remainder window
    Three {
        #[arg(long)]
        two_j: u64,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        s: f64,
        #[arg(long = "N", value_parser = parse_count)]
        n: u64,
    },
    /// Coprimality audit of the shift map between gap rays
    Gcd {
        #[arg(long)]
        two_i: u64,
        #[arg(long)]
        two_j: u64,
        #[arg(long = "N", value_parser = parse_count)]
        n: u64,
    },
    /// Ratio of m = 1 forms for gaps 2i and (2i)^l over an s grid
    Equiv {
        #[arg(long)]
        two_i: u64,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        s_grid: Option<RealGrid>,
        #[arg(long = "N", value_parser = parse_count)]
        n: u64,
    },
}

#[derive(Subcommand)]
enum GrowthCmd {
    /// Reciprocal-prime sums vs log log psi
    Euler {
        #[arg(long = "N-grid")]
        n_grid: Option<CountGrid>,
    },
    /// Prime-form divergence sums at s = 1 with a log log fit
    Diverge {
        #[arg(long = "H")]
        h: Option<String>,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long = "N-grid")]
        n_grid: Option<CountGrid>,
    },
    /// m = 1 von Mangoldt form for H = {0, 2j} over an s grid
    Prop {
        #[arg(long)]
        two_j: u64,
        #[arg(long)]
        s_grid: Option<RealGrid>,
        #[arg(long = "N", value_parser = parse_count)]
        n: u64,
    },
    /// Prime-form / von-Mangoldt-form ratios over an s grid
    Ratio {
        #[arg(long = "H")]
        h: Option<String>,
        #[arg(long)]
        s_grid: Option<RealGrid>,
        #[arg(long = "N", value_parser = parse_count)]
        n: u64,
    },
    /// Embedded prime-double counts for each offset pair
    Twins {
        #[arg(long = "H")]
        h: Option<String>,
        #[arg(long, value_parser = parse_count)]
        limit: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let threads = cli.globals.threads.unwrap_or(0);
    if threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(3);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn effective_config(globals: &Globals) -> Result<RunConfig> {
    let mut config = match &globals.config {
        Some(path) => RunConfig::from_toml(&std::fs::read_to_string(path)?)?,
        None => RunConfig::default(),
    };
    if let Some(v) = globals.format {
        config.format = v;
    }
    if let Some(v) = &globals.output {
        config.output = v.clone();
    }
    if let Some(v) = globals.sieve_limit {
        config.sieve_limit = v;
    }
    if let Some(v) = globals.segment_size {
        config.segment_size = v;
    }
    if globals.force_s {
        config.force_s = true;
    }
    if globals.force {
        config.force = true;
    }
    Ok(config)
}

/// Build (or load from $TZL_CACHE_DIR) a table covering at least `required`.
fn table_for(config: &RunConfig, required: u64) -> Result<SieveTable> {
    let limit = config.sieve_limit.max(required).max(2);
    if let Some(path) = cache_path(limit) {
        if path.exists() {
            if let Ok(table) = SieveTable::read_cache(&path) {
                return Ok(table);
            }
        }
    }
    build_sieve(limit, config.segment_size)
}

fn cache_path(limit: u64) -> Option<PathBuf> {
    std::env::var_os("TZL_CACHE_DIR")
        .map(|dir| Path::new(&dir).join(format!("tzl-sieve-{limit}.bits")))
}

fn resolve_tuple(flag: &Option<String>, k: Option<u32>, config: &RunConfig) -> Result<OffsetTuple> {
    if let Some(k) = k {
        if k == 1 {
            return Ok(OffsetTuple::singleton());
        }
        return Err(Error::domain(format!(
            "--k {k}: only k = 1 has a canonical tuple; pass --H for k ≥ 2"
        )));
    }
    match flag {
        Some(text) => text.parse(),
        None => config
            .tuples
            .first()
            .ok_or_else(|| Error::domain("no tuple given (--H) and config lists none"))?
            .parse(),
    }
}

fn emitter(config: &RunConfig, sieve_limit: u64) -> Result<Emitter> {
    let mut em = Emitter::new(config.format, &config.output)?;
    em.comment(&format!("config_hash={}", config.hash()))?;
    em.comment(&format!("sieve_limit={sieve_limit}"))?;
    Ok(em)
}

fn run(cli: Cli) -> Result<()> {
    let config = effective_config(&cli.globals)?;
    match cli.command {
        Command::Sieve { cmd } => run_sieve(cmd, &config),
        Command::Admissible { cmd } => run_admissible(cmd, &config),
        Command::Tuples { cmd } => run_tuples(cmd, &config),
        Command::Series { cmd } => run_series(cmd, &config),
        Command::Lemma { cmd } => run_lemma(cmd, &config),
        Command::Growth { cmd } => run_growth(cmd, &config),
    }
}

fn run_sieve(cmd: SieveCmd, config: &RunConfig) -> Result<()> {
    match cmd {
        SieveCmd::Build { limit, cache } => {
            let table = build_sieve(limit, config.segment_size)?;
            let cache = cache.or_else(|| cache_path(limit));
            if let Some(path) = &cache {
                if let Some(parent) = path.parent() {
                    std::fs::create_dir_all(parent)?;
                }
                table.write_cache(path)?;
            }
            let pi = table.prime_count(limit)?;
            let cache_text = cache.as_ref().map(|p| p.display().to_string()).unwrap_or_default();
            let mut em = emitter(config, limit)?;
            em.header("limit,segment_size,prime_count,cache")?;
            em.row(
                &format!("{limit},{},{pi},{}", config.segment_size, csv_quote(&cache_text)),
                json!({"limit": limit, "segment_size": config.segment_size,
                       "prime_count": pi, "cache": cache_text}),
            )?;
            em.finish()
        }
        SieveCmd::Stats { limit } => {
            let table = table_for(config, limit)?;
            let pi = table.prime_count(limit)?;
            let psi = table.chebyshev_psi(limit)?;
            let higher = table.higher_prime_powers().filter(|&(n, _, _)| n <= limit).count();
            let mut em = emitter(config, table.limit())?;
            em.header("limit,prime_count,psi,higher_prime_powers")?;
            em.row(
                &format!("{limit},{pi},{},{higher}", sig12(psi)),
                json!({"limit": limit, "prime_count": pi, "psi": psi,
                       "higher_prime_powers": higher}),
            )?;
            em.finish()
        }
    }
}

fn run_admissible(cmd: AdmissibleCmd, config: &RunConfig) -> Result<()> {
    match cmd {
        AdmissibleCmd::Check { h } => {
            let tuple = resolve_tuple(&h, None, config)?;
            let report = check_admissible(&tuple);
            let witness = report.witness_prime.map(|p| p.to_string()).unwrap_or_default();
            let mut em = emitter(config, 0)?;
            em.header("H,k,admissible,witness_prime")?;
            em.row(
                &format!("{},{},{},{witness}", csv_quote(&tuple.to_string()), tuple.k(), report.admissible),
                json!({"H": tuple.to_string(), "k": tuple.k(),
                       "admissible": report.admissible,
                       "witness_prime": report.witness_prime,
                       "residue_profiles": report.residue_profiles}),
            )?;
            em.finish()
        }
        AdmissibleCmd::Extend { h, base, max_power } => {
            let tuple = resolve_tuple(&h, None, config)?;
            let extended = extend_admissible(&tuple, base, max_power)?;
            let gap = extended.max_offset() - tuple.max_offset();
            let mut em = emitter(config, 0)?;
            em.header("H,base,max_power,extended,gap")?;
            em.row(
                &format!(
                    "{},{base},{max_power},{},{gap}",
                    csv_quote(&tuple.to_string()),
                    csv_quote(&extended.to_string())
                ),
                json!({"H": tuple.to_string(), "base": base, "max_power": max_power,
                       "extended": extended.to_string(), "gap": gap}),
            )?;
            em.finish()
        }
        AdmissibleCmd::Class { base, bound, root } => {
            let mut em = emitter(config, 0)?;
            match (base, bound, root) {
                (Some(base), Some(bound), None) => {
                    let class = equivalence_class(base, bound)?;
                    em.header("base,power,member")?;
                    for (i, member) in class.members.iter().enumerate() {
                        em.row(
                            &format!("{base},{},{member}", i + 1),
                            json!({"base": base, "power": i + 1, "member": member}),
                        )?;
                    }
                }
                (None, None, Some(h)) => {
                    let root = class_root(h)?;
                    em.header("h,class_root")?;
                    em.row(&format!("{h},{root}"), json!({"h": h, "class_root": root}))?;
                }
                _ => {
                    return Err(Error::domain(
                        "pass either --base with --bound, or --root",
                    ))
                }
            }
            em.finish()
        }
    }
}

fn run_tuples(cmd: TuplesCmd, config: &RunConfig) -> Result<()> {
    match cmd {
        TuplesCmd::List { h, limit } => {
            let tuple = resolve_tuple(&h, None, config)?;
            let table = table_for(config, limit + tuple.max_offset())?;
            let primes = enumerate_tuples(&tuple, limit, &table)?;
            let mut em = emitter(config, table.limit())?;
            em.comment(&format!("H={tuple} limit={limit}"))?;
            em.header("p")?;
            for p in primes {
                em.row(&p.to_string(), json!({"p": p}))?;
            }
            em.finish()
        }
        TuplesCmd::Count { h, limit } => {
            let tuple = resolve_tuple(&h, None, config)?;
            let table = table_for(config, limit + tuple.max_offset())?;
            let count = count_tuples(&tuple, limit, &table)?;
            let mut em = emitter(config, table.limit())?;
            em.header("H,limit,count")?;
            em.row(
                &format!("{},{limit},{count}", csv_quote(&tuple.to_string())),
                json!({"H": tuple.to_string(), "limit": limit, "count": count}),
            )?;
            em.finish()
        }
    }
}

fn emit_sample(config: &RunConfig, table_limit: u64, sample: SeriesSample) -> Result<()> {
    let mut em = emitter(config, table_limit)?;
    em.header(SeriesSample::csv_header())?;
    em.row(&sample.csv_row(), serde_json::to_value(sample).expect("sample serializes"))?;
    em.finish()
}

fn run_series(cmd: SeriesCmd, config: &RunConfig) -> Result<()> {
    match cmd {
        SeriesCmd::Logzeta { args } => {
            let tuple = resolve_tuple(&args.h, args.k, config)?;
            let table = table_for(config, args.n + tuple.max_offset())?;
            let ctx = WeightContext::new(&tuple, &table);
            let sample = if config.force_s {
                log_zeta_k_deriv_forced(0, args.s, args.n, &ctx)?
            } else {
                log_zeta_k_deriv(0, args.s, args.n, &ctx)?
            };
            emit_sample(config, table.limit(), sample)
        }
        SeriesCmd::Deriv { m, args } => {
            let tuple = resolve_tuple(&args.h, args.k, config)?;
            let table = table_for(config, args.n + tuple.max_offset())?;
            let ctx = WeightContext::new(&tuple, &table);
            let sample = if config.force_s {
                log_zeta_k_deriv_forced(m, args.s, args.n, &ctx)?
            } else {
                log_zeta_k_deriv(m, args.s, args.n, &ctx)?
            };
            emit_sample(config, table.limit(), sample)
        }
        SeriesCmd::Primeform { m, args } => {
            let tuple = resolve_tuple(&args.h, args.k, config)?;
            let table = table_for(config, args.n + tuple.max_offset())?;
            let ctx = WeightContext::new(&tuple, &table);
            let sample = if config.force_s {
                prime_form_sum_forced(m, args.s, args.n, &ctx)?
            } else {
                prime_form_sum(m, args.s, args.n, &ctx)?
            };
            emit_sample(config, table.limit(), sample)
        }
        SeriesCmd::Remainder { args } => {
            let tuple = resolve_tuple(&args.h, args.k, config)?;
            let table = table_for(config, args.n + tuple.max_offset())?;
            let ctx = WeightContext::new(&tuple, &table);
            let k = tuple.k() as f64;
            let remainder = remainder_s(args.s, args.n, &ctx)?;
            let full = log_zeta_k_deriv(0, args.s, args.n, &ctx)?.value;
            let prime_only = prime_form_sum(0, args.s, args.n, &ctx)?.value;
            let bound = zeta_eval((k + 1.0) / k)?;
            let margin = bound - remainder;
            let mut em = emitter(config, table.limit())?;
            em.header("s,N,k,log_zeta,prime_form,remainder,bound,margin")?;
            em.row(
                &format!(
                    "{},{},{},{},{},{},{},{}",
                    args.s,
                    args.n,
                    tuple.k(),
                    sig12(full),
                    sig12(prime_only),
                    sig12(remainder),
                    sig12(bound),
                    sig12(margin)
                ),
                json!({"s": args.s, "N": args.n, "k": tuple.k(), "log_zeta": full,
                       "prime_form": prime_only, "remainder": remainder,
                       "bound": bound, "margin": margin}),
            )?;
            em.finish()
        }
    }
}

fn run_lemma(cmd: LemmaCmd, config: &RunConfig) -> Result<()> {
    match cmd {
        LemmaCmd::Two { two_i, l, s, n } => {
            let two_j = two_i.checked_pow(l).ok_or_else(|| Error::domain("gap overflows"))?;
            let table = table_for(config, n + two_j)?;
            let report = lemma2_check(two_i, l, s, n, &table)?;
            let mut em = emitter(config, table.limit())?;
            em.comment(&format!("remainder window n in [{}, {}]", report.window.0, report.window.1))?;
            em.header(tzl_core::LemmaReport::csv_header())?;
            em.row(&report.csv_row(), serde_json::to_value(&report).expect("report serializes"))?;
            em.finish()
        }
        LemmaCmd::Three { two_j, l, s, n } => {
            let two_m = two_j.checked_pow(l).ok_or_else(|| Error::domain("gap overflows"))?;
            let table = table_for(config, n + two_m)?;
            let report = lemma3_check(two_j, l, s, n, &table)?;
            let mut em = emitter(config, table.limit())?;
            em.comment(&format!("remainder window n in [{}, {}]", report.window.0, report.window.1))?;
            em.header(tzl_core::LemmaReport::csv_header())?;
            em.row(&report.csv_row(), serde_json::to_value(&report).expect("report serializes"))?;
            em.finish()
        }
        LemmaCmd::Gcd { two_i, two_j, n } => {
            let check = gcd_shift_audit(two_i, two_j, n, config.force)?;
            let first = check.first_violation.map(|v| v.to_string()).unwrap_or_default();
            let mut em = emitter(config, 0)?;
            em.header("two_i,two_j,N,pairs_checked,violations,first_violation")?;
            em.row(
                &format!("{two_i},{two_j},{n},{},{},{first}", check.pairs_checked, check.violations),
                json!({"two_i": two_i, "two_j": two_j, "N": n,
                       "pairs_checked": check.pairs_checked,
                       "violations": check.violations,
                       "first_violation": check.first_violation}),
            )?;
            em.finish()
        }
        LemmaCmd::Equiv { two_i, l, s_grid, n } => {
            let s_grid = s_grid.map(|g| g.0).unwrap_or_else(|| config.s_grid.clone());
            let two_j = two_i.checked_pow(l).ok_or_else(|| Error::domain("gap overflows"))?;
            let table = table_for(config, n + two_j)?;
            let rows = corollary_equivalence_probe(two_i, l, &s_grid, n, &table)?;
            let mut em = emitter(config, table.limit())?;
            em.header("two_i,two_j,l,N,s,ratio")?;
            for (s, ratio) in rows {
                em.row(
                    &format!("{two_i},{two_j},{l},{n},{s},{}", sig12(ratio)),
                    json!({"two_i": two_i, "two_j": two_j, "l": l, "N": n, "s": s, "ratio": ratio}),
                )?;
            }
            em.finish()
        }
    }
}

fn run_growth(cmd: GrowthCmd, config: &RunConfig) -> Result<()> {
    match cmd {
        GrowthCmd::Euler { n_grid } => {
            let grid = n_grid.map(|g| g.0).unwrap_or_else(|| config.n_grid.clone());
            let max = *grid.last().ok_or_else(|| Error::domain("empty grid"))?;
            let table = table_for(config, max)?;
            let probes = euler_baseline(&grid, &table)?;
            let mut em = emitter(config, table.limit())?;
            em.header("N,sum_recip_primes,loglog_psi,delta")?;
            for p in probes {
                em.row(
                    &format!(
                        "{},{},{},{}",
                        p.n_limit,
                        sig12(p.sum_recip_primes),
                        sig12(p.loglog_psi),
                        sig12(p.delta)
                    ),
                    json!({"N": p.n_limit, "sum_recip_primes": p.sum_recip_primes,
                           "loglog_psi": p.loglog_psi, "delta": p.delta}),
                )?;
            }
            em.finish()
        }
        GrowthCmd::Diverge { h, m, n_grid } => {
            let tuple = resolve_tuple(&h, None, config)?;
            let grid = n_grid.map(|g| g.0).unwrap_or_else(|| config.n_grid.clone());
            let max = *grid.last().ok_or_else(|| Error::domain("empty grid"))?;
            let table = table_for(config, max + tuple.max_offset())?;
            let fit = tuple_divergence_probe(&tuple, m, &grid, &table)?;
            let mut em = emitter(config, table.limit())?;
            em.comment(&format!("H={tuple} m={m}"))?;
            em.header("N,partial_sum")?;
            for &(n, value) in &fit.samples {
                em.row(
                    &format!("{n},{}", sig12(value)),
                    json!({"N": n, "partial_sum": value}),
                )?;
            }
            em.comment(&format!(
                "fit slope={} intercept={} r2={} degenerate={}",
                sig12(fit.slope),
                sig12(fit.intercept),
                sig12(fit.r2),
                fit.degenerate
            ))?;
            if config.format == OutputFormat::Json {
                em.row(
                    "",
                    json!({"fit": {"slope": fit.slope, "intercept": fit.intercept,
                           "r2": fit.r2, "degenerate": fit.degenerate}}),
                )?;
            }
            em.finish()
        }
        GrowthCmd::Prop { two_j, s_grid, n } => {
            let grid = s_grid.map(|g| g.0).unwrap_or_else(|| config.s_grid.clone());
            let table = table_for(config, n + two_j)?;
            let rows = proposition_probe(two_j, &grid, n, &table)?;
            let mut em = emitter(config, table.limit())?;
            em.header("s,value")?;
            for (s, value) in rows {
                em.row(&format!("{s},{}", sig12(value)), json!({"s": s, "value": value}))?;
            }
            em.finish()
        }
        GrowthCmd::Ratio { h, s_grid, n } => {
            let tuple = resolve_tuple(&h, None, config)?;
            let grid = s_grid.map(|g| g.0).unwrap_or_else(|| config.s_grid.clone());
            let table = table_for(config, n + tuple.max_offset())?;
            let probe = theorem_ratio_probe(&tuple, &grid, n, &table)?;
            let mut em = emitter(config, table.limit())?;
            if !probe.admissible {
                em.comment(&format!("warning: tuple {tuple} is not admissible"))?;
                eprintln!("warning: tuple {tuple} is not admissible; ratios computed anyway");
            }
            em.header("s,prime_form,derivative_form,ratio")?;
            for p in probe.points {
                em.row(
                    &format!(
                        "{},{},{},{}",
                        p.s,
                        sig12(p.prime_form),
                        sig12(p.derivative_form),
                        sig12(p.ratio)
                    ),
                    json!({"s": p.s, "prime_form": p.prime_form,
                           "derivative_form": p.derivative_form, "ratio": p.ratio,
                           "admissible": probe.admissible}),
                )?;
            }
            em.finish()
        }
        GrowthCmd::Twins { h, limit } => {
            let tuple = resolve_tuple(&h, None, config)?;
            let table = table_for(config, limit + tuple.max_offset())?;
            let rows = twin_corollary_probe(&tuple, limit, &table)?;
            let mut em = emitter(config, table.limit())?;
            em.header("low,high,gap,class_base,power,count")?;
            for r in rows {
                em.row(
                    &format!(
                        "{},{},{},{},{},{}",
                        r.low, r.high, r.gap, r.class_base, r.power, r.count
                    ),
                    json!({"low": r.low, "high": r.high, "gap": r.gap,
                           "class_base": r.class_base, "power": r.power, "count": r.count}),
                )?;
            }
            em.finish()
        }
    }
}
