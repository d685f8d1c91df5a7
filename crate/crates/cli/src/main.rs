use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand};
use parfit_core::generators::sample_model;
use parfit_core::graph::{feature_vector_with_floor, largest_connected_component};
use parfit_core::harness::{grid, describe_grid, predictive_simulation_with, sweep};
use parfit_core::io::{read_edge_list, write_edge_list};
use parfit_core::report::{self, RecordWriter, RunManifest, TOOL_NAME, TOOL_VERSION};
use parfit_core::{
    aggregate, fit_network, fit_target, FeatureVector, FitConfig, GridKind, ModelKind,
    ParamVector, RandomGraphModel, Seed, SweepVariable,
};

#[derive(Parser)]
#[command(name = "parfit", version, about = "Fit random graph model parameters to graph features")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a graph (largest component) and write it as an edge list
    Generate(GenerateArgs),
    /// Print the features of an edge-list graph
    Measure(MeasureArgs),
    /// Fit a model to a graph or to explicit target features
    Fit(FitArgs),
    /// Predictive simulation over a parameter grid
    Simulate(SimulateArgs),
    /// Repeat the simulation for several values of one setting
    Sweep(SweepArgs),
}

#[derive(Args)]
struct ModelArgs {
    /// Model kind: er, cl or girg
    #[arg(long, default_value = "girg")]
    model: ModelKind,
    /// Master seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ConfigArgs {
    /// Samples per side (target and evaluation)
    #[arg(long, default_value_t = 50)]
    samples: usize,
    /// Gain exponent
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Convergence threshold on the relative change of the running mean
    #[arg(long, default_value_t = 0.01)]
    threshold: f64,
    /// Maximum number of averaged iterates
    #[arg(long, default_value_t = 200)]
    max_avg_iters: usize,
    /// Latest iteration at which averaging starts
    #[arg(long, default_value_t = 30)]
    sign_cap: usize,
}

impl ConfigArgs {
    fn config(&self) -> FitConfig {
        FitConfig {
            alpha: self.alpha,
            convergence_threshold: self.threshold,
            max_avg_iterations: self.max_avg_iters,
            sign_change_cap: self.sign_cap,
            ..FitConfig::default()
        }
    }
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Number of vertices
    #[arg(short, long)]
    n: f64,
    /// Average degree
    #[arg(short, long)]
    k: f64,
    /// Power-law exponent (cl, girg)
    #[arg(long)]
    beta: Option<f64>,
    /// Temperature (girg)
    #[arg(long)]
    temperature: Option<f64>,
    /// Output file, stdout if omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MeasureArgs {
    /// Edge-list file
    input: PathBuf,
    /// Model whose feature vector is printed
    #[arg(long, default_value = "girg")]
    model: ModelKind,
}

#[derive(Args)]
struct FitArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    config: ConfigArgs,
    /// Edge-list file to fit
    #[arg(long, conflicts_with = "target", required_unless_present = "target")]
    input: Option<PathBuf>,
    /// Target features: vertices,degree[,heterogeneity[,clustering]]
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    target: Option<Vec<f64>>,
    /// Output CSV, stdout if omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GridArgs {
    /// Built-in grid: full or desk
    #[arg(long, default_value = "desk", conflicts_with = "grid_file")]
    grid: GridKind,
    /// File with one parameter vector per line, comma or space separated
    #[arg(long)]
    grid_file: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    config: ConfigArgs,
    #[command(flatten)]
    grid: GridArgs,
    /// Per-configuration CSV, stdout if omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Summary CSV, stderr if omitted
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    config: ConfigArgs,
    #[command(flatten)]
    grid: GridArgs,
    /// Setting to vary: alpha or threshold
    #[arg(long)]
    variable: SweepVariable,
    /// Comma-separated values
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    values: Vec<f64>,
    /// Output CSV, stdout if omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

fn usage_error(message: impl std::fmt::Display) -> ! {
    Cli::command().error(ErrorKind::ValueValidation, message).exit()
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn generate(args: GenerateArgs) -> Result<()> {
    let kind = args.model.model;
    let mut values = vec![args.n, args.k];
    match (kind, args.beta, args.temperature) {
        (ModelKind::Er, _, _) => {}
        (ModelKind::Cl, Some(b), _) => values.push(b),
        (ModelKind::Girg, Some(b), Some(t)) => values.extend([b, t]),
        _ => usage_error(format!("model {kind} needs --beta{}", if kind == ModelKind::Girg { " and --temperature" } else { "" })),
    }
    let params = ParamVector::from_values(kind, values)?;
    params.validate()?;
    let seed = Seed(args.model.seed);
    let g = sample_model(&params, seed)?;
    let header = vec![
        format!("tool={TOOL_NAME} {TOOL_VERSION}"),
        "command=generate".to_string(),
        format!("model={kind}"),
        format!("params={}", params.values().iter().map(f64::to_string).collect::<Vec<_>>().join(",")),
        format!("seed={seed}"),
        format!("vertices={} edges={}", g.vertex_count(), g.edge_count()),
    ];
    write_edge_list(output(args.out.as_deref())?, &g, &header)?;
    Ok(())
}

fn load_graph(path: &Path) -> Result<parfit_core::Graph> {
    let parsed = read_edge_list(path)?;
    if parsed.self_loops > 0 {
        log::warn!("{}: dropped {} self-loops", path.display(), parsed.self_loops);
    }
    if parsed.duplicate_edges > 0 {
        log::warn!("{}: merged {} duplicate edges", path.display(), parsed.duplicate_edges);
    }
    Ok(parsed.graph)
}

fn measure(args: MeasureArgs) -> Result<()> {
    let g = largest_connected_component(&load_graph(&args.input)?);
    let fv = feature_vector_with_floor(&g, ModelKind::Girg, FitConfig::default().heterogeneity_floor)?;
    let natural = fv.natural();
    let mut out = io::stdout().lock();
    for (name, value) in ModelKind::Girg.feature_names().iter().zip(&natural) {
        writeln!(out, "{name}\t{value}")?;
    }
    let ordered = &fv.values()[..args.model.dimension()];
    let ordered: Vec<String> = ordered.iter().map(f64::to_string).collect();
    writeln!(out, "feature_vector[{}]\t{}", args.model, ordered.join(","))?;
    Ok(())
}

fn fit(args: FitArgs) -> Result<()> {
    let kind = args.model.model;
    let config = args.config.config();
    let seed = Seed(args.model.seed);
    let (name, record, source) = match (&args.input, &args.target) {
        (Some(path), _) => {
            let g = load_graph(path)?;
            let record = fit_network(&g, kind, &config, args.config.samples, seed)?;
            (path.display().to_string(), record, format!("input:{}", path.display()))
        }
        (None, Some(target)) => {
            if target.len() != kind.dimension() {
                usage_error(format!(
                    "model {kind} needs {} target features ({}), got {}",
                    kind.dimension(),
                    kind.feature_names().join(","),
                    target.len()
                ));
            }
            let fv = FeatureVector::from_natural(kind, target)?;
            let record = fit_target(fv, &config, args.config.samples, seed)?;
            ("target".to_string(), record, format!("target:{}", target.iter().map(f64::to_string).collect::<Vec<_>>().join(",")))
        }
        (None, None) => usage_error("either --input or --target is required"),
    };
    let o = record.outcome().expect("fit succeeded");
    eprintln!("fitted {} in {} iterations ({})", o.fitted, o.iterations, o.terminated_by);
    for ((f, t), a) in kind.feature_names().iter().zip(o.target.natural()).zip(o.achieved.natural()) {
        eprintln!("  {f:<14} target {t:<12.6} achieved {a:.6}");
    }
    let manifest = RunManifest::new("fit", kind, &config, seed, args.config.samples, source);
    report::write_fit(output(args.out.as_deref())?, &manifest, &name, &record)?;
    Ok(())
}

fn load_grid(kind: ModelKind, args: &GridArgs) -> Result<(Vec<ParamVector>, String)> {
    let Some(path) = &args.grid_file else {
        return Ok((grid(kind, args.grid), describe_grid(kind, args.grid)));
    };
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut points = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let values = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<f64>, _>>()
            .with_context(|| format!("{}:{}: bad number", path.display(), i + 1))?;
        let p = ParamVector::from_values(kind, values)
            .with_context(|| format!("{}:{}", path.display(), i + 1))?;
        p.validate().with_context(|| format!("{}:{}", path.display(), i + 1))?;
        points.push(p);
    }
    let description = format!("file:{}[{}]", path.display(), points.len());
    Ok((points, description))
}

fn simulate(args: SimulateArgs) -> Result<()> {
    let kind = args.model.model;
    let config = args.config.config();
    let seed = Seed(args.model.seed);
    let (points, description) = load_grid(kind, &args.grid)?;
    let manifest = RunManifest::new("simulate", kind, &config, seed, args.config.samples, description);
    let model = RandomGraphModel::with_config(kind, &config);

    let mut writer = RecordWriter::new(output(args.out.as_deref())?, &manifest)?;
    let mut write_error = None;
    let total = points.len();
    let records = predictive_simulation_with(&model, &points, args.config.samples, &config, seed, |r| {
        log::info!("configuration {}/{total} done in {:.1?}", r.index + 1, r.wall_time);
        if let Some(e) = r.error() {
            log::warn!("configuration {} failed: {e}", r.index);
        }
        if write_error.is_none() {
            write_error = writer.write(r).err();
        }
    });
    if let Some(e) = write_error {
        return Err(e.into());
    }
    let summary = aggregate(&records)?;
    match &args.summary {
        Some(path) => report::write_summary(File::create(path)?, &manifest, &summary)?,
        None => report::write_summary(io::stderr().lock(), &manifest, &summary)?,
    }
    Ok(())
}

fn run_sweep(args: SweepArgs) -> Result<()> {
    if args.values.is_empty() {
        usage_error("--values needs at least one value");
    }
    let kind = args.model.model;
    let config = args.config.config();
    let seed = Seed(args.model.seed);
    let (points, description) = load_grid(kind, &args.grid)?;
    let model = RandomGraphModel::with_config(kind, &config);
    let report =
        sweep(args.variable, &args.values, &model, &points, args.config.samples, &config, seed)?;
    let manifest = RunManifest::new(
        &format!("sweep {}", args.variable),
        kind,
        &config,
        seed,
        args.config.samples,
        description,
    );
    report::write_sweep(output(args.out.as_deref())?, &manifest, &report)?;
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Measure(a) => measure(a),
        Command::Fit(a) => fit(a),
        Command::Simulate(a) => simulate(a),
        Command::Sweep(a) => run_sweep(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
