//! `gsa` — atlases of generating-pair components for finite 2-generated
//! groups, with modular-curve signatures and exact congruence verdicts,
//! plus Markoff-surface orbit reports mod p.
//!
//! Exit codes: 0 success, 2 usage error, 3 resource cap exceeded,
//! 4 internal-consistency abort.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gsa_core::error::Error;
use gsa_core::markoff;

use gsa::atlas::{run_atlas, AtlasConfig};
use gsa::cache::{cache_roundtrip, CacheDoc};
use gsa::emit;
use gsa::spec::parse_group_spec;

#[derive(Parser)]
#[command(name = "gsa", version, about = "generating-pair atlases of finite groups")]
struct Cli {
    /// Worker threads (0 = hardware parallelism). Output is identical for
    /// any thread count.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full component atlas of a group.
    Atlas(AtlasArgs),
    /// Markoff-surface orbits mod p.
    Markoff(MarkoffArgs),
    /// Classes of generating pairs.
    Epi(EpiArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Md,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TierArg {
    Standard,
    Stretch,
}

#[derive(Args)]
struct AtlasArgs {
    /// Group spec: Sn:<n> | An:<n> | D:<2k> | Z:<n>x<m> | SL2:<p> |
    /// PSL2:<p> | perm:<path>, optionally @aut=natural|<path>.
    #[arg(long)]
    group: String,
    /// Bound on the exact congruence-test modulus 2l; components above it
    /// report certificates only.
    #[arg(long, default_value_t = 512)]
    congruence_cap: u64,
    #[arg(long, value_enum, default_value_t = Format::Md)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for the JSON cache document (written and verified by
    /// reloading).
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Resource tier; stretch raises the group-order cap and pair budget.
    #[arg(long, value_enum, default_value_t = TierArg::Standard)]
    tier: TierArg,
    /// Override the group-order cap.
    #[arg(long)]
    max_order: Option<u64>,
    /// Override the candidate-pair budget.
    #[arg(long)]
    pair_budget: Option<u64>,
}

#[derive(Args)]
struct MarkoffArgs {
    /// Single odd prime.
    #[arg(long, conflicts_with = "p_range")]
    p: Option<u64>,
    /// Inclusive prime range A..B, emitted as CSV.
    #[arg(long)]
    p_range: Option<String>,
    /// Also run the brute-force trace-bijection crosscheck (p <= 13).
    #[arg(long, default_value_t = false)]
    crosscheck: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EpiArgs {
    #[arg(long)]
    group: String,
    /// List every class (canonical pair and digest).
    #[arg(long, default_value_t = false)]
    list: bool,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::CapExceeded(_) => 3,
        Error::InternalConsistency(_) => 4,
        _ => 2,
    }
}

fn write_out(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn atlas_command(args: &AtlasArgs) -> Result<(), Error> {
    let spec = parse_group_spec(&args.group)?;
    let mut config = match args.tier {
        TierArg::Standard => AtlasConfig::default(),
        TierArg::Stretch => AtlasConfig::stretch(),
    };
    config.congruence_cap = args.congruence_cap;
    if let Some(max) = args.max_order {
        config.max_group_order = max;
    }
    if let Some(budget) = args.pair_budget {
        config.pair_budget = budget;
    }
    let report = run_atlas(&spec, &config)?;
    if let Some(dir) = &args.cache {
        std::fs::create_dir_all(dir)?;
        let key: String = args
            .group
            .chars()
            .map(|c| if c.is_alphanumeric() { c } else { '_' })
            .collect();
        let path = dir.join(format!("{key}_cap{}.json", config.congruence_cap));
        cache_roundtrip(&report, &path)?;
    }
    let text = match args.format {
        Format::Md => emit::markdown(&report),
        Format::Csv => emit::csv(&report),
        Format::Json => {
            let mut s = CacheDoc::from_report(&report).to_json();
            s.push('\n');
            s
        }
    };
    write_out(&args.out, &text)
}

fn parse_range(s: &str) -> Result<(u64, u64), Error> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| Error::InvalidSpec(format!("expected A..B, got `{s}`")))?;
    let lo = a
        .parse()
        .map_err(|_| Error::InvalidSpec(format!("bad range start `{a}`")))?;
    let hi = b
        .parse()
        .map_err(|_| Error::InvalidSpec(format!("bad range end `{b}`")))?;
    Ok((lo, hi))
}

fn markoff_command(args: &MarkoffArgs) -> Result<(), Error> {
    let mut text = String::new();
    match (args.p, &args.p_range) {
        (Some(p), None) => {
            let report = markoff::markoff_orbits(p)?;
            text.push_str(&format!(
                "p = {}: {} points, {} orbit(s) under the full move action, {} under even words\n",
                report.p,
                report.point_count,
                report.out_orbit_sizes.len(),
                report.out_plus_orbit_sizes.len(),
            ));
            text.push_str(&format!(
                "orbit sizes: {:?}; even-word orbit sizes: {:?}\n",
                report.out_orbit_sizes, report.out_plus_orbit_sizes
            ));
            text.push_str(&format!(
                "transitive: {}; every even-word orbit size divisible by p: {}\n",
                report.transitive_out, report.divisibility_ok
            ));
            if p > 3 {
                let (_, narrative) = markoff::strong_approximation_report(p)?;
                text.push_str(&narrative);
                text.push('\n');
            }
            if args.crosscheck {
                let r = markoff::crosscheck_epi_bijection(p, 13)?;
                text.push_str(&format!(
                    "crosscheck: |X*(p)| = {} vs trace -2 generating-pair classes of SL2(F_{}) up to GL2-conjugacy = {}\n",
                    r.markoff_count, p, r.epi_trace_count
                ));
            }
        }
        (None, Some(range)) => {
            let (lo, hi) = parse_range(range)?;
            text.push_str(markoff::CSV_HEADER);
            text.push('\n');
            for p in markoff::primes_in(lo.max(3), hi) {
                if p == 2 {
                    continue;
                }
                let report = markoff::markoff_orbits(p)?;
                text.push_str(&markoff::csv_row(&report));
                text.push('\n');
                if args.crosscheck && p <= 13 {
                    let r = markoff::crosscheck_epi_bijection(p, 13)?;
                    text.push_str(&format!(
                        "# crosscheck p={}: markoff_count={} epi_trace_count={}\n",
                        p, r.markoff_count, r.epi_trace_count
                    ));
                }
            }
        }
        _ => {
            return Err(Error::InvalidSpec(
                "exactly one of --p or --p-range is required".into(),
            ))
        }
    }
    write_out(&args.out, &text)
}

fn epi_command(args: &EpiArgs) -> Result<(), Error> {
    let spec = parse_group_spec(&args.group)?;
    let resolved = gsa::spec::resolve(&spec)?;
    let group = std::sync::Arc::new(resolved.group);
    let config = AtlasConfig::default();
    let ctx = gsa_core::epi::EpiContext::new(group, config.max_group_order)?;
    let classes = ctx.enumerate(config.pair_budget)?;
    let mut text = format!(
        "{}: {} classes of generating pairs\n",
        args.group,
        classes.len()
    );
    if args.list {
        for (i, e) in classes.iter().enumerate() {
            text.push_str(&format!("{i}\tkey={:016x}\tx={}\ty={}\n", e.key, e.x, e.y));
        }
    }
    write_out(&None, &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // one source of truth for the action: check the move algebra and the
    // Markoff determinant bookkeeping before doing anything
    gsa_core::mcg::validate_move_algebra();
    gsa_core::markoff::validate_markoff_determinants();
    if cli.threads > 0 {
        // ignore failures from double initialization (e.g. under tests)
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    let result = match &cli.command {
        Command::Atlas(args) => atlas_command(args),
        Command::Markoff(args) => markoff_command(args),
        Command::Epi(args) => epi_command(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
