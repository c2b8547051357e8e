use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use super::parse::parse_knot;
use super::report::{BoundReport, PairInterval};
use super::CACHE_DIR_ENV;
use crate::casson_gordon::{cg_table, render_table, LensSpace, TableCache};
use crate::knots::{genus_bounds, knot_invariants, KnotSpec, TwoBridgeKnot};
use crate::rational::ceil_int;
use crate::theta::{
    main_theorem_bound, theta1_search, theta_lower_cached, BoundInterval, Method, SearchCaps,
    Status, ThetaBound,
};

pub const EXIT_COMPLETE: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INCOMPLETE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "dslice",
    version,
    about = "Lower bounds for the double slice genus"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the bound report for a knot expression as JSON.
    Bound(BoundArgs),
    /// Print the Casson–Gordon signatures of L(p,q) on characters of order d.
    CgTable(CgTableArgs),
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    /// e.g. "2b(9/4)^2", "seifert([[-1,1],[0,-1]])", "unknot".
    pub knot: String,
    #[arg(long, default_value_t = SearchCaps::default().max_pairs)]
    pub max_pairs: usize,
    #[arg(long, default_value_t = SearchCaps::default().max_homs)]
    pub max_homs: u64,
    #[arg(long, default_value_t = SearchCaps::default().max_n)]
    pub max_n: usize,
    #[arg(long)]
    pub entry_bound: Option<u64>,
    /// Relation matrices tried per `n₁ + n₂` by the `--verbose` certificate search.
    #[arg(long, default_value_t = SearchCaps::default().max_candidates)]
    pub max_candidates: u64,
    /// Worker threads; 0 lets the pool decide.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Treat the knot as ribbon.
    #[arg(long)]
    pub ribbon: bool,
    /// Include the per-pair table with certificate search results.
    #[arg(long)]
    pub verbose: bool,
}

#[derive(Debug, Args)]
pub struct CgTableArgs {
    pub p: u64,
    pub q: u64,
    pub d: u64,
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
}

impl BoundArgs {
    pub fn caps(&self) -> SearchCaps {
        SearchCaps {
            max_pairs: self.max_pairs,
            max_homs: self.max_homs,
            max_n: self.max_n,
            entry_bound: self.entry_bound,
            max_candidates: self.max_candidates,
        }
    }
}

fn cache(flag: &Option<PathBuf>) -> Option<TableCache> {
    flag.clone()
        .or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from))
        .map(TableCache::new)
}

/// For a pure power of `2b(9/4)` whose enumeration hit a cap, the closed form
/// replaces the partial minimum; both are lower bounds, so the larger is kept.
fn closed_form_fallback(k: &KnotSpec, theta: &mut ThetaBound) {
    let nine_fourths = TwoBridgeKnot::new(9, 4).expect("valid parameters");
    let Some((base, n)) = k.two_bridge_power_of() else {
        return;
    };
    if theta.status == Status::Complete || base != nine_fourths {
        return;
    }
    let closed = main_theorem_bound(n as u64);
    if &closed >= theta.value() {
        theta.interval = BoundInterval::lower_only(closed, Method::ClosedForm);
        theta.ceiling = ceil_int(theta.value());
        theta.pair = None;
    }
    theta.status = Status::Complete;
    theta.notes.push(format!(
        "enumeration capped; closed-form estimate for N = {n} applied"
    ));
}

/// Builds the report; `Err` carries an input diagnostic.
pub fn bound_report(args: &BoundArgs) -> Result<BoundReport, String> {
    let mut knot = parse_knot(&args.knot).map_err(|e| e.to_string())?;
    knot.ribbon |= args.ribbon;
    let caps = args.caps();
    let cache = cache(&args.cache_dir);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads)
        .build()
        .map_err(|e| e.to_string())?;
    pool.install(|| {
        let inv = knot_invariants(&knot);
        let genus = genus_bounds(&inv, knot.ribbon);
        let mut theta =
            theta_lower_cached(&knot, &caps, cache.as_ref()).map_err(|e| e.to_string())?;
        closed_form_fallback(&knot, &mut theta);
        let intervals = args.verbose.then(|| {
            theta
                .pairs
                .iter()
                .map(|pv| {
                    let search = theta1_search(&inv.h1_cover, &pv.g1, &pv.g2, &caps).ok();
                    PairInterval::new(pv, search.as_ref())
                })
                .collect()
        });
        Ok(BoundReport::new(&knot, &inv, &genus, &theta, intervals))
    })
}

pub fn cg_table_text(args: &CgTableArgs) -> Result<String, String> {
    let l = LensSpace::new(args.p, args.q).map_err(|e| e.to_string())?;
    let rows = match cache(&args.cache_dir) {
        Some(c) => c.table(&l, args.d),
        None => cg_table(&l, args.d),
    }
    .map_err(|e| e.to_string())?;
    Ok(render_table(&rows))
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{shown}");
                    EXIT_COMPLETE
                }
                _ => {
                    let _ = write!(err, "{shown}");
                    EXIT_INPUT
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Bound(a) => bound_report(a).map(|r| {
            let code = if r.is_complete() {
                EXIT_COMPLETE
            } else {
                EXIT_INCOMPLETE
            };
            (format!("{}\n", r.to_json()), code)
        }),
        Command::CgTable(a) => cg_table_text(a).map(|t| (t, EXIT_COMPLETE)),
    };
    match result {
        Ok((text, code)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_INPUT;
            }
            code
        }
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}
