use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tstar_bench::compare::compare;
use tstar_bench::generate::{generate_workspace, location_regions, GenerateSpec};
use tstar_bench::queries::resolve_query;
use tstar_bench::record::{timed_plan, BenchRecord, TrajectoryDocument};
use tstar_bench::svg::{render_svg, Overlay};
use tstar_bench::sweep::{run_sweep, write_rows, Axis, SweepSpec};
use tstar_core::ltl::{import_automaton, parse_ltl, translate_to_buchi, BuchiAutomaton};
use tstar_core::planner::{Algorithm, PlanError};
use tstar_core::workspace::{load_workspace, to_ascii, to_json, GridWorkspace};

#[derive(Parser)]
#[command(name = "tstar", version, about = "LTL path planning on grid workspaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Plan one query on one workspace.
    Plan(PlanArgs),
    /// Run both planners and report times, graph sizes and the speedup.
    Compare(CompareArgs),
    /// Sweep obstacle density, query size or workspace size.
    Sweep(SweepArgs),
    /// Generate a random workspace.
    Generate(GenerateArgs),
    /// Draw a workspace and a plan as SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct QueryArgs {
    /// LTL text or a catalogue id (phi_c, phi_d, patrol, ...).
    #[arg(long, conflicts_with = "automaton", required_unless_present = "automaton")]
    query: Option<String>,
    /// Automaton interchange document used instead of a query.
    #[arg(long)]
    automaton: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Tstar,
    Baseline,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Tstar => Algorithm::Tstar,
            AlgoArg::Baseline => Algorithm::Baseline,
        }
    }
}

#[derive(Args)]
struct PlanArgs {
    #[arg(long)]
    workspace: PathBuf,
    #[command(flatten)]
    query: QueryArgs,
    #[arg(long, value_enum, default_value = "tstar")]
    algo: AlgoArg,
    /// Trajectory document (JSON).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// z slice drawn for 3-D workspaces.
    #[arg(long)]
    layer: Option<u32>,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    workspace: PathBuf,
    #[command(flatten)]
    query: QueryArgs,
    #[arg(long, default_value_t = 1)]
    reps: usize,
    /// CSV with one row per planner.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_parser = parse_axis)]
    axis: Axis,
    /// Strictly increasing axis values: density in percent, location count,
    /// or grid side.
    #[arg(long, value_delimiter = ',', required = true)]
    values: Vec<u32>,
    #[arg(long, default_value = "phi_d")]
    query: String,
    #[arg(long, default_value_t = 1)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    side: u32,
    /// Obstacle density in percent when it is not the swept axis.
    #[arg(long, default_value_t = 20)]
    density: u32,
    #[arg(long, default_value_t = 8)]
    connectivity: u32,
    /// Timed runs per planner in each row.
    #[arg(long, default_value_t = 1)]
    timing_reps: usize,
    /// Leave time and speedup columns empty for byte-reproducible tables.
    #[arg(long)]
    omit_timing: bool,
    /// CSV output; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Ascii,
}

#[derive(Args)]
struct GenerateArgs {
    /// Grid extents, e.g. `--dims 100 100`.
    #[arg(long, num_args = 2..=3, required = true)]
    dims: Vec<u32>,
    #[arg(long, default_value_t = 8)]
    connectivity: u32,
    /// Fraction of cells that are obstacles, in [0, 1).
    #[arg(long, default_value_t = 0.2)]
    density: f64,
    #[arg(long, default_value_t = 3)]
    gathers: usize,
    #[arg(long, default_value_t = 2)]
    uploads: usize,
    /// Minimum distance of the start and labeled cells from the border.
    #[arg(long, default_value_t = 2)]
    margin: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long)]
    workspace: PathBuf,
    /// Trajectory document written by `plan --out`.
    #[arg(long)]
    trajectory: Option<PathBuf>,
    #[arg(long)]
    layer: Option<u32>,
    #[arg(long)]
    out: PathBuf,
}

fn parse_axis(s: &str) -> Result<Axis, String> {
    s.parse()
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn load(path: &Path) -> Result<GridWorkspace> {
    load_workspace(&read(path)?).with_context(|| format!("invalid workspace {}", path.display()))
}

/// Automaton and query id for the query arguments.
fn load_query(args: &QueryArgs) -> Result<(BuchiAutomaton, String)> {
    if let Some(path) = &args.automaton {
        let automaton =
            import_automaton(&read(path)?).with_context(|| format!("invalid automaton {}", path.display()))?;
        return Ok((automaton, path.display().to_string()));
    }
    let raw = args.query.as_deref().expect("clap requires a query or an automaton");
    let (text, named) = resolve_query(raw);
    let formula = parse_ltl(text).with_context(|| format!("invalid query '{text}'"))?;
    let automaton = translate_to_buchi(&formula)?;
    Ok((automaton, named.map_or(text, |q| q.id).to_string()))
}

fn plan(args: PlanArgs) -> Result<ExitCode> {
    let ws = load(&args.workspace)?;
    let (automaton, query_id) = load_query(&args.query)?;
    let (result, elapsed) = timed_plan(args.algo.into(), &ws, &automaton);
    let plan = match result {
        Ok(plan) => plan,
        Err(PlanError::Unsatisfiable) => {
            eprintln!("unsatisfiable");
            return Ok(ExitCode::from(2));
        }
        Err(e) => bail!(e),
    };
    let ws_id = args.workspace.display().to_string();
    println!("algorithm: {}", plan.algorithm.name());
    println!("suffix cost: {}", plan.suffix_cost);
    println!("prefix cost: {}", plan.prefix_cost);
    println!("time: {:.6} s", elapsed.as_secs_f64());
    println!("graph: {} vertices, {} edges, {} bytes", plan.graph.vertices, plan.graph.edges, plan.graph.memory_bytes);
    println!("edges updated: {}, A* calls: {}", plan.stats.edges_updated, plan.stats.astar_calls);
    if let Some(out) = &args.out {
        let doc = TrajectoryDocument::new(&ws_id, &query_id, &ws, &plan);
        write(out, &(serde_json::to_string_pretty(&doc)? + "\n"))?;
    }
    if let Some(path) = &args.svg {
        write(path, &render_svg(&ws, Some(&Overlay::from_plan(&ws, &plan)), args.layer)?)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn compare_cmd(args: CompareArgs) -> Result<ExitCode> {
    let ws = load(&args.workspace)?;
    let (automaton, query_id) = load_query(&args.query)?;
    let ws_id = args.workspace.display().to_string();
    let cmp = compare(&ws, &automaton, &ws_id, &query_id, args.reps)?;
    for r in [&cmp.baseline, &cmp.tstar] {
        println!(
            "{:<8} suffix {}  time {:.6} s  vertices {}  edges {}  memory {} B",
            r.algorithm,
            r.suffix_cost,
            r.seconds.unwrap_or(f64::NAN),
            r.vertices,
            r.edges,
            r.memory_bytes
        );
    }
    if let Some(s) = cmp.speedup() {
        println!("speedup: {s:.2}");
    }
    if let Some(out) = &args.out {
        let mut writer = csv::Writer::from_path(out).with_context(|| format!("cannot write {}", out.display()))?;
        writer.serialize::<&BenchRecord>(&cmp.baseline)?;
        writer.serialize::<&BenchRecord>(&cmp.tstar)?;
        writer.flush()?;
    }
    Ok(ExitCode::SUCCESS)
}

fn sweep(args: SweepArgs) -> Result<ExitCode> {
    let (text, named) = resolve_query(&args.query);
    let automaton = translate_to_buchi(&parse_ltl(text).with_context(|| format!("invalid query '{text}'"))?)?;
    let query_id = named.map_or(text, |q| q.id);
    let spec = SweepSpec {
        axis: args.axis,
        values: args.values,
        reps: args.reps,
        seed: args.seed,
        side: args.side,
        density: args.density,
        connectivity: args.connectivity,
        timing_reps: args.timing_reps,
        omit_timing: args.omit_timing,
    };
    let rows = run_sweep(&spec, &automaton, query_id)?;
    match &args.out {
        Some(path) => {
            let file = fs::File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
            write_rows(&rows, file)?;
        }
        None => write_rows(&rows, io::stdout().lock())?,
    }
    Ok(ExitCode::SUCCESS)
}

fn generate(args: GenerateArgs) -> Result<ExitCode> {
    let spec = GenerateSpec {
        dims: args.dims,
        connectivity: args.connectivity,
        density: args.density,
        regions: location_regions(args.gathers, args.uploads),
        margin: args.margin,
    };
    let ws = generate_workspace(&spec, &mut ChaCha8Rng::seed_from_u64(args.seed))?;
    let text = match args.format {
        FormatArg::Json => to_json(&ws),
        FormatArg::Ascii => to_ascii(&ws)?,
    };
    match &args.out {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn render(args: RenderArgs) -> Result<ExitCode> {
    let ws = load(&args.workspace)?;
    let overlay = match &args.trajectory {
        Some(path) => {
            let doc: TrajectoryDocument = serde_json::from_str(&read(path)?)
                .with_context(|| format!("invalid trajectory {}", path.display()))?;
            Some(Overlay::from_trajectory(&ws, &doc)?)
        }
        None => None,
    };
    write(&args.out, &render_svg(&ws, overlay.as_ref(), args.layer)?)?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    // Usage errors exit 1; 2 is reserved for unsatisfiable queries.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::FAILURE } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Plan(a) => plan(a),
        Command::Compare(a) => compare_cmd(a),
        Command::Sweep(a) => sweep(a),
        Command::Generate(a) => generate(a),
        Command::Render(a) => render(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
