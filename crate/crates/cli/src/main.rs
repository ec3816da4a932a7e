use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use maxgenus::fixtures::{self, Fixture, FIGURE_NAMES};
use maxgenus::genus::{self, EnumerationGuard, GenusReport, Mode};
use maxgenus::io::{emit_dot, emit_json, emit_mg1, emit_mg1_with_tree, parse_any};
use maxgenus::reduce::{self, FamilyConfig, ReductionTrace};
use maxgenus::transforms::{self, EdgeEnd, SplitOptions, SplitSpec};
use maxgenus::{EdgeId, Error, MultiGraph, VertexId};

/// Maximum genus and upper-embeddability of multigraphs.
///
/// Graph arguments are MG1 or JSON files, or `fixture:NAME` for a built-in
/// graph (see `maxgenus fixture --list`).
#[derive(Parser)]
#[command(name = "maxgenus", version)]
struct Cli {
    /// Print one JSON object instead of key=value lines.
    #[arg(long, global = true)]
    json: bool,
    /// Allow exhaustive enumeration above the default edge cap. Needs --cap.
    #[arg(long, global = true)]
    force: bool,
    /// Edge cap for exhaustive enumeration; only honoured with --force.
    #[arg(long, global = true, value_name = "N")]
    cap: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Size, cycle rank, degrees and connectivity.
    Info { file: String },
    /// Upper-embeddability verdict. Exit 0: upper embeddable, 1: not, 2: error.
    Check(CheckArgs),
    /// Cycle rank, deficiency and maximum genus.
    Genus(GenusArgs),
    /// Contract flexible edges until none remain.
    Reduce(ReduceArgs),
    /// Re-check a reduction trace against its input graph.
    VerifyTrace { file: String, trace: PathBuf },
    /// Split a vertex in two.
    Split(SplitArgs),
    /// Contract a non-loop edge.
    Contract(ContractArgs),
    /// Grow a family of upper-embeddable graphs by flexible splits.
    Family(FamilyArgs),
    /// Write a built-in graph.
    Fixture(FixtureArgs),
    /// Convert between MG1, JSON and DOT.
    Convert {
        file: String,
        #[arg(long, value_enum, default_value = "mg1")]
        to: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CheckArgs {
    file: String,
    /// Decide on the flexible weak minor instead of the graph itself.
    #[arg(long)]
    reduce: bool,
    /// No output; only the exit code.
    #[arg(long, short)]
    quiet: bool,
    /// Write the splitting tree as MG1 with `t` lines. With --reduce the
    /// file holds the reduced graph and its tree.
    #[arg(long, value_name = "PATH")]
    witness: Option<PathBuf>,
}

#[derive(Args)]
struct GenusArgs {
    file: String,
    #[arg(long, conflicts_with = "heuristic")]
    exact: bool,
    /// Local search over spanning trees; reports an upper bound on xi.
    #[arg(long)]
    heuristic: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Heuristic iteration budget.
    #[arg(long, default_value_t = 2000)]
    effort: usize,
}

#[derive(Args)]
struct ReduceArgs {
    file: String,
    /// Reduced graph (MG1).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Reduction trace (JSON).
    #[arg(long, value_name = "PATH")]
    trace: Option<PathBuf>,
    /// Try every contraction order and report the irreducible orders.
    #[arg(long)]
    explore_orders: bool,
    /// State budget for --explore-orders.
    #[arg(long, default_value_t = 20_000)]
    max_states: usize,
}

#[derive(Args)]
struct SplitArgs {
    file: String,
    /// Vertex to split: an id, or a label for fixture inputs.
    #[arg(short = 'v', long)]
    vertex: String,
    /// Side A as a comma list of neighbours (ids or labels), or edge-ends
    /// written EDGE.END (needed for loops).
    #[arg(long, value_name = "LIST")]
    side_a: String,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Id map (JSON). Defaults to OUTPUT.map.json when -o is given.
    #[arg(long, value_name = "PATH")]
    id_map: Option<PathBuf>,
    /// Accept loops at the vertex, assigning their ends independently.
    #[arg(long)]
    allow_loops: bool,
    /// Reject splits leaving a side with fewer than two edge-ends.
    #[arg(long)]
    keep_min_degree: bool,
}

#[derive(Args)]
struct ContractArgs {
    file: String,
    #[arg(short = 'e', long)]
    edge: u32,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Id map (JSON). Defaults to OUTPUT.map.json when -o is given.
    #[arg(long, value_name = "PATH")]
    id_map: Option<PathBuf>,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(
        long,
        value_name = "FILE",
        conflicts_with = "bouquet",
        required_unless_present = "bouquet"
    )]
    seed_graph: Option<String>,
    /// Start from the bouquet of N loops.
    #[arg(long, value_name = "N")]
    bouquet: Option<usize>,
    #[arg(long)]
    max_vertices: usize,
    #[arg(long)]
    max_graphs: usize,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Split rules to use.
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "type-i,type-ii"
    )]
    rules: Vec<RuleArg>,
    /// Allow splits that leave a side with a single edge-end.
    #[arg(long)]
    allow_thin: bool,
    /// Expand on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum RuleArg {
    TypeI,
    TypeIi,
}

#[derive(Args)]
struct FixtureArgs {
    name: Option<String>,
    #[arg(long)]
    list: bool,
    #[arg(long, value_enum, default_value = "mg1")]
    format: Format,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Mg1,
    Json,
    Dot,
}

struct Input {
    graph: MultiGraph,
    fixture: Option<Fixture>,
}

impl Input {
    fn load(arg: &str) -> anyhow::Result<Input> {
        if let Some(name) = arg.strip_prefix("fixture:") {
            let f = fixtures::by_name(name).ok_or_else(|| anyhow!("no fixture named {name}"))?;
            return Ok(Input {
                graph: f.graph.clone(),
                fixture: Some(f),
            });
        }
        let text = fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
        let graph = parse_any(&text).with_context(|| format!("parsing {arg}"))?;
        Ok(Input {
            graph,
            fixture: None,
        })
    }

    fn vertex(&self, s: &str) -> anyhow::Result<VertexId> {
        if let Ok(id) = s.parse::<u32>() {
            let v = VertexId(id);
            if self.graph.has_vertex(v) {
                return Ok(v);
            }
        }
        self.fixture
            .as_ref()
            .and_then(|f| f.vertex(s))
            .ok_or_else(|| anyhow!("unknown vertex {s}"))
    }
}

struct Ctx {
    json: bool,
    guard: EnumerationGuard,
}

impl Ctx {
    fn emit(&self, lines: &[String], obj: Value) {
        if self.json {
            println!("{obj}");
        } else {
            for l in lines {
                println!("{l}");
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            if let Some(Error::GuardExceeded { .. }) = e.downcast_ref::<Error>() {
                eprintln!("hint: try `check --reduce`, `genus --heuristic`, or --force --cap N");
            }
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let guard = match (cli.force, cli.cap) {
        (true, Some(n)) => EnumerationGuard::with_cap(n),
        (true, None) => bail!("--force needs an explicit --cap N"),
        (false, Some(_)) => bail!("--cap only takes effect together with --force"),
        (false, None) => EnumerationGuard::default(),
    };
    let ctx = Ctx {
        json: cli.json,
        guard,
    };
    match cli.cmd {
        Cmd::Info { file } => info(&ctx, &file),
        Cmd::Check(a) => check(&ctx, a),
        Cmd::Genus(a) => genus_cmd(&ctx, a),
        Cmd::Reduce(a) => reduce_cmd(&ctx, a),
        Cmd::VerifyTrace { file, trace } => verify(&ctx, &file, &trace),
        Cmd::Split(a) => split(&ctx, a),
        Cmd::Contract(a) => contract(&ctx, a),
        Cmd::Family(a) => family(&ctx, a),
        Cmd::Fixture(a) => fixture(a),
        Cmd::Convert { file, to, output } => {
            let g = Input::load(&file)?.graph;
            write_or_print(output.as_deref(), &render(&g, to))?;
            Ok(0)
        }
    }
}

fn render(g: &MultiGraph, f: Format) -> String {
    match f {
        Format::Mg1 => emit_mg1(g),
        Format::Json => emit_json(g) + "\n",
        Format::Dot => emit_dot(g),
    }
}

fn write_or_print(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn info(ctx: &Ctx, file: &str) -> anyhow::Result<u8> {
    let g = Input::load(file)?.graph;
    let comps = g.components().len();
    let beta = g.edge_count() + comps - g.vertex_count();
    let min = g.min_degree().unwrap_or(0);
    let max = g.max_degree().unwrap_or(0);
    let connected = g.is_connected();
    let local = g.is_locally_connected();
    ctx.emit(
        &[format!(
            "V={} E={} beta={beta} min_degree={min} max_degree={max} connected={connected} locally_connected={local}",
            g.vertex_count(),
            g.edge_count()
        )],
        json!({
            "vertices": g.vertex_count(), "edges": g.edge_count(), "beta": beta,
            "min_degree": min, "max_degree": max, "connected": connected,
            "locally_connected": local,
        }),
    );
    Ok(0)
}

fn verdict_word(ue: bool) -> &'static str {
    if ue {
        "upper-embeddable"
    } else {
        "not-upper-embeddable"
    }
}

fn check(ctx: &Ctx, a: CheckArgs) -> anyhow::Result<u8> {
    let g = Input::load(&a.file)?.graph;
    let (ue, line, obj, witness) = if a.reduce {
        let r = reduce::check_reduced(&g, &ctx.guard)?;
        let line = format!(
            "{} beta={} order={}->{} steps={}",
            verdict_word(r.upper_embeddable),
            r.reduced.betti,
            r.initial_order,
            r.reduced_order,
            r.trace.steps.len()
        );
        let obj = json!({
            "upper_embeddable": r.upper_embeddable, "beta": r.reduced.betti,
            "initial_order": r.initial_order, "reduced_order": r.reduced_order,
            "steps": r.trace.steps.len(), "reduced_xi": r.reduced.xi,
            "spanning_trees_before": r.trees_before.map(|x| x.to_string()),
            "spanning_trees_after": r.trees_after.map(|x| x.to_string()),
            "speedup": r.speedup,
        });
        let w = r
            .reduced
            .witness
            .filter(|_| r.upper_embeddable)
            .map(|t| emit_mg1_with_tree(&r.reduced_graph, t.edges()));
        (r.upper_embeddable, line, obj, w)
    } else {
        let r = genus::max_genus(&g, &ctx.guard)?;
        let line = format!(
            "{} xi={} gamma_max={}",
            verdict_word(r.upper_embeddable),
            r.xi,
            r.max_genus
        );
        let obj = json!({
            "upper_embeddable": r.upper_embeddable, "beta": r.betti,
            "xi": r.xi, "gamma_max": r.max_genus,
        });
        let w = r
            .witness
            .filter(|_| r.upper_embeddable)
            .map(|t| emit_mg1_with_tree(&g, t.edges()));
        (r.upper_embeddable, line, obj, w)
    };
    if let Some(p) = &a.witness {
        match witness {
            Some(text) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
            None => eprintln!("no splitting tree exists; {} not written", p.display()),
        }
    }
    if !a.quiet {
        ctx.emit(&[line], obj);
    }
    Ok(if ue { 0 } else { 1 })
}

fn genus_line(r: &GenusReport) -> String {
    match r.mode {
        Mode::Exact => format!("beta={} xi={} gamma_max={}", r.betti, r.xi, r.max_genus),
        Mode::Heuristic => format!(
            "beta={} xi={} gamma_max={} mode=heuristic upper-bound-on-xi",
            r.betti, r.xi, r.max_genus
        ),
    }
}

fn genus_cmd(ctx: &Ctx, a: GenusArgs) -> anyhow::Result<u8> {
    let g = Input::load(&a.file)?.graph;
    let strategy = if a.heuristic {
        genus::Strategy::Heuristic {
            effort: a.effort,
            seed: a.seed,
        }
    } else {
        genus::Strategy::Exact(ctx.guard)
    };
    let r = genus::genus_report(&g, strategy)?;
    let mode = match r.mode {
        Mode::Exact => "exact",
        Mode::Heuristic => "heuristic",
    };
    ctx.emit(
        &[genus_line(&r)],
        json!({
            "beta": r.betti, "xi": r.xi, "gamma_max": r.max_genus, "mode": mode,
            "xi_is_upper_bound": r.mode == Mode::Heuristic,
            "witness": r.witness.as_ref().map(|t| t.edges().to_vec()),
        }),
    );
    Ok(0)
}

fn reduce_cmd(ctx: &Ctx, a: ReduceArgs) -> anyhow::Result<u8> {
    let g = Input::load(&a.file)?.graph;
    let (h, trace) = reduce::flexible_weak_minor(&g);
    if let Some(p) = &a.output {
        fs::write(p, emit_mg1(&h)).with_context(|| format!("writing {}", p.display()))?;
    }
    if let Some(p) = &a.trace {
        let text = serde_json::to_string_pretty(&trace)? + "\n";
        fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
    }
    let mut lines = vec![format!(
        "order={}->{} steps={}",
        trace.initial_order,
        trace.final_order,
        trace.steps.len()
    )];
    let mut obj = json!({
        "initial_order": trace.initial_order, "final_order": trace.final_order,
        "steps": trace.steps.len(),
    });
    if a.explore_orders {
        let ex = reduce::explore_orders(&g, a.max_states);
        let orders: Vec<String> = ex.orders.iter().map(|o| o.to_string()).collect();
        lines.push(format!(
            "reachable_orders={} irreducible_graphs={} states={} truncated={}",
            orders.join(","),
            ex.irreducible,
            ex.states,
            ex.truncated
        ));
        obj["exploration"] = serde_json::to_value(&ex)?;
    }
    ctx.emit(&lines, obj);
    Ok(0)
}

fn verify(ctx: &Ctx, file: &str, trace: &Path) -> anyhow::Result<u8> {
    let g = Input::load(file)?.graph;
    let text = fs::read_to_string(trace).with_context(|| format!("reading {}", trace.display()))?;
    let t: ReductionTrace = serde_json::from_str(&text).context("parsing trace")?;
    let c = reduce::verify_trace(&g, &t);
    let line = if c.ok {
        format!("trace-ok steps={}", t.steps.len())
    } else {
        let step = c.failed_step.map_or("-".to_string(), |s| s.to_string());
        format!(
            "trace-failed step={step} reason={}",
            c.reason.clone().unwrap_or_default()
        )
    };
    ctx.emit(&[line], serde_json::to_value(&c)?);
    Ok(if c.ok { 0 } else { 1 })
}

fn parse_side_a(input: &Input, v: VertexId, list: &str) -> anyhow::Result<SplitSpec> {
    let items: Vec<&str> = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if items.iter().any(|s| s.contains('.')) {
        let ends = items
            .iter()
            .map(|s| {
                let (e, end) = s
                    .split_once('.')
                    .ok_or_else(|| anyhow!("bad edge-end {s}"))?;
                Ok(EdgeEnd {
                    edge: EdgeId(e.parse().with_context(|| format!("bad edge-end {s}"))?),
                    end: end.parse().with_context(|| format!("bad edge-end {s}"))?,
                })
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        return Ok(SplitSpec::new(v, ends));
    }
    let nbs = items
        .iter()
        .map(|s| input.vertex(s))
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(SplitSpec::by_neighbors(&input.graph, v, &nbs)?)
}

fn map_path(explicit: Option<PathBuf>, output: Option<&Path>) -> Option<PathBuf> {
    explicit.or_else(|| {
        output.map(|o| {
            let mut s = o.as_os_str().to_owned();
            s.push(".map.json");
            PathBuf::from(s)
        })
    })
}

fn split(ctx: &Ctx, a: SplitArgs) -> anyhow::Result<u8> {
    let input = Input::load(&a.file)?;
    let g = &input.graph;
    let v = input.vertex(&a.vertex)?;
    let spec = parse_side_a(&input, v, &a.side_a)?;
    let opts = SplitOptions {
        allow_loops: a.allow_loops,
        preserve_min_degree: a.keep_min_degree,
    };
    let r = transforms::split_vertex(g, &spec, &opts)?;
    let t1 = transforms::is_type1_flexible(g, v)?;
    let verdict = if t1.flexible || g.degree(v)? != 4 {
        t1
    } else {
        transforms::is_type2_flexible_split(g, &spec, &opts)?
    };
    let idmap = json!({
        "vertex": v, "vPrime": r.v_prime, "vDoublePrime": r.v_double_prime,
        "splittingEdge": r.splitting_edge, "spec": spec,
        "edgeMap": r.edge_map,
    });
    if let Some(p) = map_path(a.id_map, a.output.as_deref()) {
        fs::write(&p, serde_json::to_string_pretty(&idmap)? + "\n")
            .with_context(|| format!("writing {}", p.display()))?;
    }
    let line = format!(
        "flexible={} rule={} v_prime={} v_double_prime={} splitting_edge={}",
        verdict.flexible, verdict.rule, r.v_prime, r.v_double_prime, r.splitting_edge
    );
    match &a.output {
        Some(p) => {
            fs::write(p, emit_mg1(&r.graph)).with_context(|| format!("writing {}", p.display()))?;
            ctx.emit(
                &[line],
                json!({"verdict": verdict_summary(&verdict), "idMap": idmap}),
            );
        }
        None if ctx.json => ctx.emit(
            &[],
            json!({"verdict": verdict_summary(&verdict), "idMap": idmap, "graph": r.graph}),
        ),
        None => {
            print!("{}", emit_mg1(&r.graph));
            eprintln!("{line}");
        }
    }
    Ok(0)
}

fn verdict_summary(v: &transforms::FlexibilityVerdict) -> Value {
    json!({
        "flexible": v.flexible, "rule": v.rule,
        "evidence": v.evidence.iter().map(|e| json!({
            "rule": e.rule, "degree": e.degree, "finding": e.finding, "holds": e.holds,
            "subgraph": e.subgraph,
        })).collect::<Vec<_>>(),
    })
}

fn contract(ctx: &Ctx, a: ContractArgs) -> anyhow::Result<u8> {
    let g = Input::load(&a.file)?.graph;
    let e = EdgeId(a.edge);
    let c = transforms::contract_edge(&g, e)?;
    let verdict = transforms::is_flexible_edge(&g, e)?;
    let idmap = json!({
        "edge": e, "merged": c.merged, "removed": c.removed,
        "edgeMap": c.edge_map,
    });
    if let Some(p) = map_path(a.id_map, a.output.as_deref()) {
        fs::write(&p, serde_json::to_string_pretty(&idmap)? + "\n")
            .with_context(|| format!("writing {}", p.display()))?;
    }
    let line = format!(
        "flexible={} rule={} merged={} removed={}",
        verdict.flexible, verdict.rule, c.merged, c.removed
    );
    match &a.output {
        Some(p) => {
            fs::write(p, emit_mg1(&c.graph)).with_context(|| format!("writing {}", p.display()))?;
            ctx.emit(
                &[line],
                json!({"verdict": verdict_summary(&verdict), "idMap": idmap}),
            );
        }
        None if ctx.json => ctx.emit(
            &[],
            json!({"verdict": verdict_summary(&verdict), "idMap": idmap, "graph": c.graph}),
        ),
        None => {
            print!("{}", emit_mg1(&c.graph));
            eprintln!("{line}");
        }
    }
    Ok(0)
}

fn family(ctx: &Ctx, a: FamilyArgs) -> anyhow::Result<u8> {
    let seed = match (&a.seed_graph, a.bouquet) {
        (Some(f), _) => Input::load(f)?.graph,
        (None, Some(n)) => MultiGraph::bouquet(n),
        (None, None) => bail!("give --seed-graph or --bouquet"),
    };
    let mut cfg = FamilyConfig::new(a.max_vertices, a.max_graphs);
    cfg.type_i = a.rules.contains(&RuleArg::TypeI);
    cfg.type_ii = a.rules.contains(&RuleArg::TypeIi);
    cfg.preserve_min_degree = !a.allow_thin;
    cfg.parallel = !a.sequential;
    cfg.guard = ctx.guard;
    let fam = reduce::generate_family(&seed, &cfg)?;
    if let Some(dir) = &a.out_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for n in &fam.nodes {
            let p = dir.join(reduce::member_file_name(n.index));
            fs::write(&p, emit_mg1(&n.graph))
                .with_context(|| format!("writing {}", p.display()))?;
        }
        let index = reduce::family_index(&fam);
        fs::write(
            dir.join("index.json"),
            serde_json::to_string_pretty(&index)? + "\n",
        )?;
    }
    let counts = fam.counts_per_depth();
    let mut lines: Vec<String> = counts
        .iter()
        .enumerate()
        .map(|(d, c)| format!("depth={d} graphs={c}"))
        .collect();
    lines.push(format!(
        "total={} rejected={} unchecked={} exhausted={}",
        fam.nodes.len(),
        fam.rejected,
        fam.unchecked,
        fam.exhausted
    ));
    ctx.emit(
        &lines,
        json!({
            "counts_per_depth": counts, "total": fam.nodes.len(), "rejected": fam.rejected,
            "unchecked": fam.unchecked, "exhausted": fam.exhausted,
        }),
    );
    Ok(0)
}

fn fixture(a: FixtureArgs) -> anyhow::Result<u8> {
    if a.list {
        for n in FIGURE_NAMES {
            println!("{n}");
        }
        println!("theta\nk<n>\nbouquet(n)\ncycle(n)\nwheel(n)");
        return Ok(0);
    }
    let name = a
        .name
        .ok_or_else(|| anyhow!("give a fixture name or --list"))?;
    let f = fixtures::by_name(&name).ok_or_else(|| anyhow!("no fixture named {name}"))?;
    write_or_print(a.output.as_deref(), &render(&f.graph, a.format))?;
    Ok(0)
}
