use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use kcenter_core::bench::{aggregate, run_plan, run_solve, Algo, BenchPlan, SolveParams};
use kcenter_core::exact::{cover_radius, DEFAULT_EXACT_BUDGET};
use kcenter_core::gadget::io::{read_gadget_files, write_gadget_files, Manifest};
use kcenter_core::gadget::{
    gen_recursive_lb, gen_simple_lb, ov_to_setcover, power_setcover, yes_case_centers, OVInstance, SetCoverInstance,
    DEFAULT_GADGET_BUDGET,
};
use kcenter_core::generators::{with_random_weights, GraphKind};
use kcenter_core::{ApproxConfig, Graph, KCenterError, VertexSet};

const EXIT_OTHER: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;
const EXIT_BUDGET: u8 = 4;
const EXIT_VERIFY_FAIL: u8 = 5;

#[derive(Parser)]
#[command(name = "kcenter", version, about = "Graph k-center: generate, solve, verify, benchmark")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate random graphs or gadget instances.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Solve k-center on a graph file and print one record.
    Solve(SolveArgs),
    /// Check a center set against a radius, or a cover against a gadget.
    Verify(VerifyArgs),
    /// Run a plan of (instance, algorithm, seed) combinations.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Er,
    Cycle,
    Path,
    Grid,
    Star,
    Complete,
}

#[derive(Subcommand)]
enum GenCmd {
    Random(RandomArgs),
    /// Recursive construction with parameter t.
    Gadget(GadgetArgs),
    /// Single gadget with tails.
    SimpleGadget(SimpleGadgetArgs),
}

#[derive(Args)]
struct RandomArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Vertex count (er, cycle, path, complete) or leaf count (star).
    #[arg(long)]
    n: Option<usize>,
    /// Edge probability for er.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    width: Option<usize>,
    #[arg(long)]
    height: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Draw integer weights in [1, M].
    #[arg(long)]
    max_weight: Option<u64>,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SourceArgs {
    #[arg(long, conflicts_with = "ov", required_unless_present = "ov")]
    setcover: Option<PathBuf>,
    #[arg(long)]
    ov: Option<PathBuf>,
    /// Replace A by g-tuples of A before building.
    #[arg(long)]
    power: Option<usize>,
}

#[derive(Args)]
struct GadgetArgs {
    #[arg(long)]
    t: usize,
    #[arg(long)]
    ell: usize,
    /// Declared cover size (default: the minimum, found by search).
    #[arg(long)]
    k: Option<usize>,
    #[command(flatten)]
    source: SourceArgs,
    /// Output prefix; writes PREFIX.graph, .roles, .manifest and .setcover.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = DEFAULT_GADGET_BUDGET)]
    max_vertices: u128,
}

#[derive(Args)]
struct SimpleGadgetArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    ell: usize,
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    graph: PathBuf,
    /// exact, gonzalez, c2-53, k-32, k-2k, k-2l or w3-74.
    #[arg(long)]
    algo: String,
    #[arg(long)]
    k: usize,
    /// Guided levels for k-2l.
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long)]
    sample_const: Option<f64>,
    /// Enumeration guard (overrides KCENTER_BUDGET).
    #[arg(long)]
    budget: Option<u128>,
    /// Draw a fresh sample per recursion level in k-2k.
    #[arg(long)]
    fresh_samples: bool,
    #[arg(long)]
    with_exact: bool,
    #[arg(long)]
    json: bool,
    /// Leave out elapsed time so records are reproducible byte for byte.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, requires_all = ["centers", "radius"], conflicts_with = "manifest")]
    graph: Option<PathBuf>,
    /// Vertex ids separated by whitespace or commas.
    #[arg(long)]
    centers: Option<PathBuf>,
    #[arg(long)]
    radius: Option<u64>,
    /// Gadget manifest (PREFIX.manifest) written by `gen`.
    #[arg(long, requires = "cover", required_unless_present = "graph")]
    manifest: Option<PathBuf>,
    /// Set Cover solution as a-ids.
    #[arg(long)]
    cover: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    plan: PathBuf,
    #[arg(long)]
    budget: Option<u128>,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long)]
    sample_const: Option<f64>,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    no_timing: bool,
}

fn env_budget() -> anyhow::Result<Option<u128>> {
    match std::env::var("KCENTER_BUDGET") {
        Ok(v) => Ok(Some(
            v.trim()
                .parse()
                .with_context(|| format!("KCENTER_BUDGET is not a number: `{v}`"))?,
        )),
        Err(_) => Ok(None),
    }
}

fn load_source(src: &SourceArgs, budget: u128) -> anyhow::Result<SetCoverInstance> {
    let sc = match (&src.setcover, &src.ov) {
        (Some(p), _) => SetCoverInstance::read_file(p).with_context(|| format!("reading {}", p.display()))?,
        (None, Some(p)) => {
            let ov = OVInstance::read_file(p).with_context(|| format!("reading {}", p.display()))?;
            ov_to_setcover(&ov)?
        }
        (None, None) => bail!("need --setcover or --ov"),
    };
    Ok(match src.power {
        Some(g) => power_setcover(&sc, g, budget)?,
        None => sc,
    })
}

fn write_out(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn read_ids(path: &Path) -> anyhow::Result<Vec<usize>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| KCenterError::Parse {
                    line: 0,
                    msg: format!("bad id `{s}` in {}", path.display()),
                })
                .map_err(Into::into)
        })
        .collect()
}

fn gen_random(a: &RandomArgs) -> anyhow::Result<()> {
    let need = |x: Option<usize>, flag: &str| x.with_context(|| format!("--{flag} is required for this kind"));
    let kind = match a.kind {
        Kind::Er => GraphKind::ErdosRenyi {
            n: need(a.n, "n")?,
            p: a.p.context("--p is required for er")?,
        },
        Kind::Cycle => GraphKind::Cycle { n: need(a.n, "n")? },
        Kind::Path => GraphKind::Path { n: need(a.n, "n")? },
        Kind::Grid => GraphKind::Grid {
            w: need(a.width, "width")?,
            h: need(a.height, "height")?,
        },
        Kind::Star => GraphKind::Star { leaves: need(a.n, "n")? },
        Kind::Complete => GraphKind::Complete { n: need(a.n, "n")? },
    };
    let mut g = kind.generate(a.seed)?;
    if let Some(m) = a.max_weight {
        g = with_random_weights(&g, m, a.seed)?;
    }
    write_out(a.out.as_deref(), &g.to_text())
}

fn gen_gadget(a: &GadgetArgs) -> anyhow::Result<()> {
    let budget = env_budget()?.unwrap_or(DEFAULT_EXACT_BUDGET);
    let sc = load_source(&a.source, budget)?;
    let k = match a.k {
        Some(k) => k,
        None => sc.min_cover_size(budget)?,
    };
    let gout = gen_recursive_lb(&sc, k, a.t, a.ell, a.max_vertices)?;
    write_gadget_files(&a.out, &gout, &sc)?;
    println!("{}", Manifest::of(&gout).to_line());
    Ok(())
}

fn gen_simple(a: &SimpleGadgetArgs) -> anyhow::Result<()> {
    let budget = env_budget()?.unwrap_or(DEFAULT_EXACT_BUDGET);
    let sc = load_source(&a.source, budget)?;
    let gout = gen_simple_lb(&sc, a.k, a.ell)?;
    write_gadget_files(&a.out, &gout, &sc)?;
    println!("{}", Manifest::of(&gout).to_line());
    Ok(())
}

fn solve(a: &SolveArgs) -> anyhow::Result<()> {
    let g = Graph::read_file(&a.graph).with_context(|| format!("reading {}", a.graph.display()))?;
    let algo: Algo = a.algo.parse()?;
    let mut p = SolveParams::new(algo, a.k);
    let defaults = ApproxConfig::default();
    p.l = a.ell;
    p.seed = a.seed;
    p.trials = a.trials;
    p.omega = a.omega.unwrap_or(defaults.omega);
    p.sample_const = a.sample_const.unwrap_or(defaults.sample_const);
    if let Some(b) = a.budget.or(env_budget()?) {
        p.budget = b;
        p.exact_budget = b;
    }
    p.fresh_samples = a.fresh_samples.then_some(true);
    p.with_exact = a.with_exact;
    p.timing = !a.no_timing;
    let rec = run_solve(&g, &p)?;
    println!("{}", if a.json { rec.to_json() } else { rec.to_kv() });
    Ok(())
}

/// `Ok(true)` on pass.
fn verify(a: &VerifyArgs) -> anyhow::Result<bool> {
    if let Some(manifest) = &a.manifest {
        let cover_path = a.cover.as_ref().context("--cover is required with --manifest")?;
        let (gout, sc) = read_gadget_files(manifest)?;
        let cover = read_ids(cover_path)?;
        let centers = yes_case_centers(&gout, &sc, &cover)?;
        let r = cover_radius(&gout.graph, &centers)?;
        let ok = r <= gout.predicted_yes_radius;
        println!(
            "{} radius={} yes_radius={} centers={} center_budget={}",
            if ok { "pass" } else { "fail" },
            r,
            gout.predicted_yes_radius,
            centers.len(),
            gout.center_budget
        );
        return Ok(ok);
    }
    let (Some(graph), Some(centers), Some(radius)) = (&a.graph, &a.centers, a.radius) else {
        bail!("need --graph, --centers and --radius, or --manifest and --cover");
    };
    let g = Graph::read_file(graph).with_context(|| format!("reading {}", graph.display()))?;
    let ids = read_ids(centers)?;
    if let Some(&v) = ids.iter().find(|&&v| v >= g.n()) {
        return Err(KCenterError::VertexOutOfRange { vertex: v, n: g.n() }.into());
    }
    let set = VertexSet::from_iter(g.n(), ids);
    let r = cover_radius(&g, &set)?;
    let ok = r <= radius;
    let shown = if r == kcenter_core::UNREACHABLE { "inf".to_string() } else { r.to_string() };
    println!("{} radius={} claimed={}", if ok { "pass" } else { "fail" }, shown, radius);
    Ok(ok)
}

fn bench(a: &BenchArgs) -> anyhow::Result<()> {
    let text = std::fs::read_to_string(&a.plan).with_context(|| format!("reading {}", a.plan.display()))?;
    let plan = BenchPlan::parse(&text)?;
    let defaults = ApproxConfig::default();
    let mut base = SolveParams::new(Algo::Exact, 1);
    base.omega = a.omega.unwrap_or(defaults.omega);
    base.sample_const = a.sample_const.unwrap_or(defaults.sample_const);
    if let Some(b) = a.budget.or(env_budget()?) {
        base.budget = b;
        base.exact_budget = b;
    }
    base.timing = !a.no_timing;
    let rows = run_plan(&plan, &base)?;
    let mut out = std::io::stdout().lock();
    for row in &rows {
        writeln!(out, "{}", if a.json { row.to_json() } else { row.to_kv() })?;
    }
    for agg in aggregate(&rows) {
        let line = if a.json {
            serde_json::to_string(&agg)?
        } else {
            agg.to_kv()
        };
        writeln!(out, "{line}")?;
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<KCenterError>() {
        Some(KCenterError::Parse { .. }) => EXIT_PARSE,
        Some(KCenterError::Infeasible { .. }) => EXIT_INFEASIBLE,
        Some(KCenterError::BudgetExceeded { .. }) => EXIT_BUDGET,
        Some(KCenterError::InvalidCover { .. }) => EXIT_VERIFY_FAIL,
        _ => EXIT_OTHER,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Gen(GenCmd::Random(a)) => gen_random(a),
        Cmd::Gen(GenCmd::Gadget(a)) => gen_gadget(a),
        Cmd::Gen(GenCmd::SimpleGadget(a)) => gen_simple(a),
        Cmd::Solve(a) => solve(a),
        Cmd::Verify(a) => match verify(a) {
            Ok(true) => Ok(()),
            Ok(false) => return ExitCode::from(EXIT_VERIFY_FAIL),
            Err(e) => Err(e),
        },
        Cmd::Bench(a) => bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
