//! `twheis`: exact computations in the center of the twisted Heisenberg
//! category, the algebra of odd power sums, the Schur graph and the finite
//! Sergeev superalgebras.
//!
//! Exit codes: 0 on success, 1 on verification failure, 2 on usage errors.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use twheis::center::{self, Chart};
use twheis::gamma::{Basis, GammaCtx, GammaElement};
use twheis::partitions::{
    count_shifted_tableaux, enumerate_odd, enumerate_partitions, enumerate_strict,
    kerov_coordinates, length_parity, path_count, z_stat, OddPartition, Partition, StrictPartition,
};
use twheis::rational::{rat_to_string, Rat};
use twheis::schur_graph::{down_row, up_row, TransitionRow};
use twheis::sergeev;
use twheis::waction::{self, WOperator};
use twheis_cli::cache::DiskCache;
use twheis_cli::export::{export_table, TableKind};
use twheis_cli::json::{coords_json, gamma_json, partition_key, sergeev_json};
use twheis_cli::verify::{run_verify, VerifyParams, SUITE_NAMES};
use twheis_cli::{EvenIndicesArg, PartsArg};

#[derive(Parser)]
#[command(name = "twheis", version, about, max_term_width = 100)]
struct Cli {
    /// Directory for the on-disk caches (also via TWC_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Emit machine-readable JSON where a human summary is the default.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate partitions and inspect one shape.
    #[command(subcommand)]
    Partitions(PartitionsCmd),
    /// Transition kernels on the Schur graph.
    Graph(GraphArgs),
    /// The algebra Γ: basis expansions and evaluations.
    #[command(subcommand)]
    Gamma(GammaCmd),
    /// Sergeev algebra elements: class sums, idempotents, characters.
    #[command(subcommand)]
    Sergeev(SergeevCmd),
    /// The center of the category: φ, Fock images, idempotent closures.
    #[command(subcommand)]
    Center(CenterCmd),
    /// Operators on Γ in the 𝔭 basis.
    #[command(subcommand)]
    W(WCmd),
    /// Run the verification suites.
    Verify(VerifyArgs),
    /// Export a table as deterministic JSON.
    Export(ExportArgs),
}

#[derive(Subcommand)]
enum PartitionsCmd {
    /// List partitions of n in canonical (descending lexicographic) order.
    List {
        #[arg(short = 'n', long = "size")]
        n: usize,
        /// strict | odd | all
        #[arg(long, default_value = "strict")]
        kind: String,
    },
    /// Counting data and Kerov coordinates for one strict partition.
    Info {
        #[arg(long)]
        lambda: PartsArg,
    },
}

#[derive(Args)]
struct GraphArgs {
    /// up | down
    #[arg(long)]
    dir: String,
    #[arg(long)]
    from: PartsArg,
}

#[derive(Subcommand)]
enum GammaCmd {
    /// Expand a basis element in p-basis coordinates.
    Expand {
        /// p | pfrak | q | qstar
        #[arg(long)]
        basis: String,
        #[arg(long)]
        index: PartsArg,
    },
    /// Evaluate a basis element at a strict partition.
    Eval {
        #[arg(long)]
        basis: String,
        #[arg(long)]
        index: PartsArg,
        #[arg(long)]
        at: PartsArg,
    },
}

#[derive(Subcommand)]
enum SergeevCmd {
    /// The scaled class sum a_μ^{(n)}.
    ClassSum {
        #[arg(long)]
        mu: PartsArg,
        #[arg(short = 'n', long = "level")]
        n: usize,
    },
    /// The central idempotent e_λ.
    Idempotent {
        #[arg(long)]
        lambda: PartsArg,
    },
    /// χ^λ(μ ∪ 1^{n-k}) for |μ| = k ≤ n = |λ|.
    Character {
        #[arg(long)]
        lambda: PartsArg,
        #[arg(long)]
        mu: PartsArg,
    },
}

#[derive(Subcommand)]
enum CenterCmd {
    /// φ of a closure or bubble monomial, as p-basis JSON.
    Phi {
        /// Nested closure α_μ for an odd partition μ.
        #[arg(long, conflicts_with = "d")]
        alpha: Option<PartsArg>,
        /// Bubble monomial: even indices, e.g. "2,0" for d_2 d_0.
        #[arg(long)]
        d: Option<EvenIndicesArg>,
    },
    /// The Fock image F_n of a generator monomial, as a Sergeev element.
    Fock {
        #[arg(short = 'n', long = "level")]
        n: usize,
        #[arg(long, conflicts_with_all = ["d", "dbar"])]
        alpha: Option<PartsArg>,
        #[arg(long, conflicts_with = "dbar")]
        d: Option<EvenIndicesArg>,
        /// Counterclockwise bubble index 2k, mapped through the recursion.
        #[arg(long)]
        dbar: Option<usize>,
    },
    /// Image in Γ of the closure of the central idempotent e_λ.
    IdempotentClosure {
        #[arg(long)]
        lambda: PartsArg,
    },
}

#[derive(Subcommand)]
enum WCmd {
    /// Apply a generator to 𝔭_μ and print the image in 𝔭-basis JSON.
    Apply {
        /// aminus | aplus | omega03 | b3 | b5 | omega01
        #[arg(long)]
        gen: String,
        #[arg(long)]
        pfrak: PartsArg,
        #[arg(long, default_value_t = 8)]
        cutoff: usize,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name or "all"; repeatable.
    #[arg(long = "suite", default_value = "all")]
    suites: Vec<String>,
    #[arg(short = 'n', long = "max-level", default_value_t = 5)]
    max_level: usize,
    #[arg(long, default_value_t = 8)]
    cutoff: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ExportArgs {
    /// characters | x-matrix | transitions | plancherel
    #[arg(long)]
    kind: String,
    #[arg(short = 'n', long = "level")]
    n: usize,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn odd(parts: Vec<usize>) -> Result<OddPartition> {
    OddPartition::new(parts).map_err(|e| anyhow!("{e}"))
}

fn strict(parts: Vec<usize>) -> Result<StrictPartition> {
    StrictPartition::new(parts).map_err(|e| anyhow!("{e}"))
}

fn transition_row_json(row: &TransitionRow) -> String {
    let mut targets: Vec<(&StrictPartition, &Rat)> = row.targets.iter().collect();
    targets.sort_by(|(a, _), (b, _)| {
        twheis_cli::json::canonical_cmp(a.as_partition(), b.as_partition())
    });
    let target_objs: Vec<String> = targets
        .into_iter()
        .map(|(p, prob)| {
            format!(
                r#"{{"partition":{},"prob":"{}"}}"#,
                partition_key(p.parts()),
                rat_to_string(prob)
            )
        })
        .collect();
    format!(
        r#"{{"source":{},"targets":[{}]}}"#,
        partition_key(row.source.parts()),
        target_objs.join(",")
    )
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    });
}

fn run(cli: Cli) -> Result<i32> {
    let ctx = GammaCtx::new();
    let cache = DiskCache::resolve(cli.cache_dir.clone());
    if let Some(cache) = &cache {
        cache.load_into(&ctx).context("loading the disk cache")?;
    }
    let code = dispatch(&cli, &ctx)?;
    if let Some(cache) = &cache {
        cache.save_from(&ctx).context("saving the disk cache")?;
    }
    Ok(code)
}

fn dispatch(cli: &Cli, ctx: &GammaCtx) -> Result<i32> {
    match &cli.command {
        Command::Partitions(cmd) => partitions_cmd(cmd),
        Command::Graph(args) => {
            let from = strict(args.from.0.clone())?;
            let row = match args.dir.as_str() {
                "down" => {
                    if from.is_empty() {
                        bail!("down transitions need a nonempty source");
                    }
                    down_row(&from)
                }
                "up" => up_row(&from),
                other => bail!("unknown direction {other:?} (expected up or down)"),
            };
            println!("{}", transition_row_json(&row));
            Ok(0)
        }
        Command::Gamma(cmd) => gamma_cmd(cmd, ctx),
        Command::Sergeev(cmd) => sergeev_cmd(cmd, ctx),
        Command::Center(cmd) => center_cmd(cmd, ctx),
        Command::W(cmd) => w_cmd(cmd, ctx),
        Command::Verify(args) => verify_cmd(args, cli.json, ctx),
        Command::Export(args) => {
            let kind = TableKind::parse(&args.kind)?;
            let text = export_table(kind, args.n, ctx)?;
            match &args.out {
                Some(path) => std::fs::write(path, text + "\n")
                    .with_context(|| format!("writing {}", path.display()))?,
                None => println!("{text}"),
            }
            Ok(0)
        }
    }
}

fn partitions_cmd(cmd: &PartitionsCmd) -> Result<i32> {
    match cmd {
        PartitionsCmd::List { n, kind } => {
            let list: Vec<Partition> = match kind.as_str() {
                "strict" => enumerate_strict(*n)
                    .into_iter()
                    .map(StrictPartition::into_partition)
                    .collect(),
                "odd" => enumerate_odd(*n)
                    .into_iter()
                    .map(OddPartition::into_partition)
                    .collect(),
                "all" => enumerate_partitions(*n),
                other => bail!("unknown kind {other:?} (expected strict, odd, or all)"),
            };
            let keys: Vec<String> = list.iter().map(|p| partition_key(p.parts())).collect();
            println!("[{}]", keys.join(","));
            Ok(0)
        }
        PartitionsCmd::Info { lambda } => {
            let lambda = strict(lambda.0.clone())?;
            let (up, down) = kerov_coordinates(&lambda);
            println!(
                r#"{{"lambda":{},"size":{},"length":{},"length_parity":{},"z":"{}","shifted_tableaux":"{}","paths":"{}","addable_contents":{:?},"removable_contents":{:?}}}"#,
                partition_key(lambda.parts()),
                lambda.size(),
                lambda.length(),
                length_parity(&lambda),
                z_stat(lambda.as_partition()),
                count_shifted_tableaux(&lambda),
                path_count(&lambda),
                up.iter().collect::<Vec<_>>(),
                down.iter().collect::<Vec<_>>(),
            );
            Ok(0)
        }
    }
}

fn gamma_basis_element(basis: &str, index: Vec<usize>, ctx: &GammaCtx) -> Result<GammaElement> {
    let basis = Basis::parse(basis).map_err(|e| anyhow!("{e}"))?;
    Ok(match basis {
        Basis::P => GammaElement::p(odd(index)?),
        Basis::PFrak => ctx.pfrak(&odd(index)?)?,
        Basis::Q => ctx.schur_q(&strict(index)?),
        Basis::QStar => ctx.factorial_schur_q(&strict(index)?)?,
    })
}

fn gamma_cmd(cmd: &GammaCmd, ctx: &GammaCtx) -> Result<i32> {
    match cmd {
        GammaCmd::Expand { basis, index } => {
            let elem = gamma_basis_element(basis, index.0.clone(), ctx)?;
            println!("{}", gamma_json(&elem));
        }
        GammaCmd::Eval { basis, index, at } => {
            let elem = gamma_basis_element(basis, index.0.clone(), ctx)?;
            let point = strict(at.0.clone())?;
            println!("\"{}\"", rat_to_string(&elem.evaluate(&point)));
        }
    }
    Ok(0)
}

fn sergeev_cmd(cmd: &SergeevCmd, ctx: &GammaCtx) -> Result<i32> {
    match cmd {
        SergeevCmd::ClassSum { mu, n } => {
            let mu = odd(mu.0.clone())?;
            if mu.size() > *n {
                bail!("|μ| = {} exceeds the level {n}", mu.size());
            }
            println!("{}", sergeev_json(&sergeev::class_sum_scaled(&mu, *n)?));
        }
        SergeevCmd::Idempotent { lambda } => {
            let lambda = strict(lambda.0.clone())?;
            println!(
                "{}",
                sergeev_json(&sergeev::central_idempotent(&lambda, ctx)?)
            );
        }
        SergeevCmd::Character { lambda, mu } => {
            let lambda = strict(lambda.0.clone())?;
            let mu = odd(mu.0.clone())?;
            if mu.size() > lambda.size() {
                bail!("|μ| = {} exceeds |λ| = {}", mu.size(), lambda.size());
            }
            let padded = mu.pad_with_ones(lambda.size() - mu.size());
            println!("\"{}\"", rat_to_string(&ctx.character(&lambda, &padded)?));
        }
    }
    Ok(0)
}

fn center_cmd(cmd: &CenterCmd, ctx: &GammaCtx) -> Result<i32> {
    match cmd {
        CenterCmd::Phi { alpha, d } => {
            let elem = center_monomial(alpha.clone(), d.clone(), None, ctx)?;
            println!("{}", gamma_json(&center::phi(&elem, ctx)?));
        }
        CenterCmd::Fock { n, alpha, d, dbar } => {
            let elem = center_monomial(alpha.clone(), d.clone(), *dbar, ctx)?;
            println!("{}", sergeev_json(&center::fock_image(&elem, *n)?));
        }
        CenterCmd::IdempotentClosure { lambda } => {
            let lambda = strict(lambda.0.clone())?;
            println!("{}", gamma_json(&center::idempotent_closure(&lambda, ctx)?));
        }
    }
    Ok(0)
}

fn center_monomial(
    alpha: Option<PartsArg>,
    d: Option<EvenIndicesArg>,
    dbar: Option<usize>,
    ctx: &GammaCtx,
) -> Result<center::CenterElement> {
    match (alpha, d, dbar) {
        (Some(parts), None, None) => Ok(center::alpha_of_partition(&odd(parts.0)?, ctx)?),
        (None, Some(indices), None) => Ok(center::CenterElement::monomial(
            Chart::D,
            indices.0,
            Rat::from_integer(1.into()),
        )?),
        (None, None, Some(idx)) => {
            if idx % 2 != 0 {
                bail!("d̄ indices are even, got {idx}");
            }
            Ok(center::dbar(idx / 2))
        }
        _ => bail!("exactly one of --alpha, --d, --dbar is required"),
    }
}

fn w_cmd(cmd: &WCmd, ctx: &GammaCtx) -> Result<i32> {
    match cmd {
        WCmd::Apply { gen, pfrak, cutoff } => {
            let operator = match gen.to_ascii_lowercase().as_str() {
                "aminus" | "a-" => WOperator::a_minus(*cutoff, ctx)?,
                "aplus" | "a+" => WOperator::a_plus(*cutoff, ctx)?,
                "omega03" => WOperator::omega03(*cutoff, ctx)?,
                "b3" => WOperator::b_odd(3, *cutoff, ctx)?,
                "b5" => WOperator::b_odd(5, *cutoff, ctx)?,
                "omega01" => waction::omega01(*cutoff, ctx)?,
                other => bail!("unknown generator {other:?}"),
            };
            let mu = odd(pfrak.0.clone())?;
            let image = operator.apply(&ctx.pfrak(&mu)?, ctx)?;
            let coords = ctx.to_basis(&image, Basis::PFrak)?;
            println!("{}", coords_json(&coords));
        }
    }
    Ok(0)
}

fn verify_cmd(args: &VerifyArgs, as_json: bool, ctx: &GammaCtx) -> Result<i32> {
    for name in &args.suites {
        if name != "all" && !SUITE_NAMES.contains(&name.as_str()) {
            bail!(
                "unknown suite {name:?}; available: all, {}",
                SUITE_NAMES.join(", ")
            );
        }
    }
    let params = VerifyParams {
        n_max: args.max_level,
        cutoff: args.cutoff,
        seed: args.seed,
    };
    let report = run_verify(&args.suites, &params, ctx)?;
    if as_json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        for suite in &report.suites {
            let status = if suite.passed() { "PASS" } else { "FAIL" };
            println!(
                "{status} {:<20} {:>6} cases  {:>8.3}s",
                suite.name,
                suite.cases,
                suite.wall_ms as f64 / 1000.0
            );
            for failure in suite.failures.iter().take(10) {
                println!("     ! {failure}");
            }
            if suite.failures.len() > 10 {
                println!("     ! ... and {} more", suite.failures.len() - 10);
            }
        }
        let total: usize = report.suites.iter().map(|s| s.cases).sum();
        println!(
            "{} suites, {} cases, {:.3}s total",
            report.suites.len(),
            total,
            report.total_wall().as_secs_f64()
        );
    }
    Ok(if report.all_passed() { 0 } else { 1 })
}
