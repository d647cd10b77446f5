//! `item`: command-line frontend for independent temporal motif analysis.
//!
//! Subcommands: `analyze` (whole-graph report), `windows` (per-window
//! series plus burst flags), `compare` (pairwise similarity), `generate`
//! (synthetic graphs with stretched variants). Exit codes: 1 usage,
//! 2 I/O, 3 enumeration/selection blow-up.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use item_core::catalog::{default_catalog, MotifCatalog};
use item_core::enumerate::EnumerationConfig;
use item_core::error::ItemError;
use item_core::features::{feature_vector, normalize, pairwise_and_gap_aggregate, series_anomaly};
use item_core::graph::{LoadOptions, TemporalGraph, TimeUnit, WindowSpec};
use item_core::independence::{extract_items, SelectionMode};
use item_core::report::{catalog_hash, feature_csv, AnalyzeReport, REPORT_SCHEMA_VERSION};
use item_core::sampling::{estimate_distribution, select_windows, SamplingPlan};
use item_core::synthgen::{generate_base, stretch_perturb, GenSpec, SECONDS_PER_DAY};

const EXIT_USAGE: u8 = 1;
const EXIT_IO: u8 = 2;
const EXIT_BLOWUP: u8 = 3;

/// Default per-second emission probability: expected 25,000 edges for the
/// default n=100, one-day generation.
const DEFAULT_GEN_P: f64 = 25_000.0 / (100.0 * SECONDS_PER_DAY as f64);

#[derive(Parser)]
#[command(name = "item", version, about = "Independent temporal motif analysis")]
struct Cli {
    /// Worker threads for window-level parallelism (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract independent motifs from one graph and write a JSON report.
    Analyze(AnalyzeArgs),
    /// Per-window motif series with optional sampling and burst flags.
    Windows(WindowsArgs),
    /// Pairwise feature-vector distances across two or more graphs.
    Compare(CompareArgs),
    /// Synthetic graph generation with stretched variants.
    Generate(GenerateArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Edge list: `src dst time` per line (whitespace or comma separated).
    #[arg(long)]
    input: PathBuf,
    /// Extra vertex names, one per line, for isolated vertices.
    #[arg(long)]
    vertex_file: Option<PathBuf>,
    /// Timestamp unit in the input file.
    #[arg(long, value_enum, default_value_t = TimeUnitArg::Seconds)]
    time_unit: TimeUnitArg,
}

#[derive(Args)]
struct PipelineArgs {
    /// Maximum motif span `t_last - t_first` (time units); unbounded if absent.
    #[arg(long)]
    delta: Option<i64>,
    /// Independent-set selection strategy.
    #[arg(long, value_enum, default_value_t = ModeArg::Greedy)]
    mode: ModeArg,
    /// Seed for randomized selection and window sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Motif catalog file; built-in m1..m15 catalog if absent.
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Comma-separated motif ids overriding the catalog search order.
    #[arg(long)]
    search_order: Option<String>,
    /// Cap on enumerated instances per motif before aborting.
    #[arg(long, default_value_t = item_core::enumerate::DEFAULT_MAX_INSTANCES)]
    max_instances: usize,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// Report file; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Args)]
struct WindowsArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// Window length in time units (exclusive with --window-count).
    #[arg(long, conflicts_with = "window_count")]
    window_duration: Option<u64>,
    /// Number of equal windows spanning the graph.
    #[arg(long)]
    window_count: Option<usize>,
    /// Fraction of windows to analyze; importance-weighted estimator.
    #[arg(long, default_value_t = 1.0)]
    sample_fraction: f64,
    /// Leave-one-out z-score threshold for burst flagging.
    #[arg(long, default_value_t = 3.0)]
    z_threshold: f64,
    /// Output directory for `windows_series.csv` and `windows_flags.json`.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct CompareArgs {
    /// Edge-list file; repeat at least twice.
    #[arg(long, required = true, num_args = 1..)]
    input: Vec<PathBuf>,
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// Timestamp unit in the input files.
    #[arg(long, value_enum, default_value_t = TimeUnitArg::Seconds)]
    time_unit: TimeUnitArg,
    /// Comma-separated integer stretch labels, one per input; enables the
    /// gap curve.
    #[arg(long)]
    stretch_labels: Option<String>,
    /// Compare on motif frequencies alone, dropping temporal and orbit
    /// columns.
    #[arg(long)]
    frequency_only: bool,
    /// Output directory for `similarity_matrix.csv` (and `gap_curve.csv`).
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct GenerateArgs {
    /// Number of vertices.
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Per-second emission probability per vertex.
    #[arg(long, default_value_t = DEFAULT_GEN_P)]
    p: f64,
    /// Base graph span in days.
    #[arg(long, default_value_t = 1)]
    duration_days: i64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Stretched variants G_1..G_N on top of the base G_0; variant i is
    /// stretched by i extra days.
    #[arg(long, default_value_t = 0)]
    variants: usize,
    /// Gaussian timestamp jitter (seconds) applied to each variant.
    #[arg(long, default_value_t = SECONDS_PER_DAY as f64 / 6.0)]
    sigma: f64,
    /// Output directory for `G_<i>.txt` and `manifest.json`.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum TimeUnitArg {
    Seconds,
    Milliseconds,
    Raw,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum ModeArg {
    Greedy,
    Luby,
    Exact,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum FormatArg {
    Json,
    Csv,
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn io(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_IO,
            message: message.into(),
        }
    }
}

impl From<ItemError> for CliError {
    fn from(e: ItemError) -> Self {
        let code = match &e {
            ItemError::Io(_) => EXIT_IO,
            ItemError::InstanceLimit { .. } | ItemError::ExactMisTooLarge { .. } => EXIT_BLOWUP,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are not usage errors.
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(EXIT_USAGE);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let started = Instant::now();
    let result = match cli.command {
        Command::Analyze(args) => cmd_analyze(&args),
        Command::Windows(args) => cmd_windows(&args),
        Command::Compare(args) => cmd_compare(&args),
        Command::Generate(args) => cmd_generate(&args),
    };
    match result {
        Ok(()) => {
            // Timing stays out of the report files so equal-config runs
            // are byte-identical.
            eprintln!("wall_time_ms={}", started.elapsed().as_millis());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn load_options(unit: TimeUnitArg) -> LoadOptions {
    LoadOptions {
        delimiter: None,
        has_header: false,
        time_unit: match unit {
            TimeUnitArg::Seconds => TimeUnit::Seconds,
            TimeUnitArg::Milliseconds => TimeUnit::Milliseconds,
            TimeUnitArg::Raw => TimeUnit::Raw,
        },
    }
}

fn open(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| CliError::io(format!("{}: {e}", path.display())))
}

fn load_graph(input: &InputArgs) -> Result<TemporalGraph, CliError> {
    let graph = TemporalGraph::load_edge_list(open(&input.input)?, &load_options(input.time_unit))?;
    match &input.vertex_file {
        Some(path) => Ok(graph.with_vertex_list(open(path)?)?),
        None => Ok(graph),
    }
}

fn load_catalog(pipeline: &PipelineArgs) -> Result<MotifCatalog, CliError> {
    let catalog = match &pipeline.catalog {
        Some(path) => MotifCatalog::parse(open(path)?)?,
        None => default_catalog(),
    };
    match &pipeline.search_order {
        Some(order) => {
            let ids: Vec<String> = order.split(',').map(|s| s.trim().to_owned()).collect();
            Ok(catalog.with_search_order(&ids)?)
        }
        None => Ok(catalog),
    }
}

fn selection_mode(pipeline: &PipelineArgs) -> SelectionMode {
    match pipeline.mode {
        ModeArg::Greedy => SelectionMode::GreedyTemporal,
        ModeArg::Luby => SelectionMode::LubyRandom(pipeline.seed),
        ModeArg::Exact => SelectionMode::Exact,
    }
}

fn enumeration_config(pipeline: &PipelineArgs) -> EnumerationConfig {
    EnumerationConfig {
        delta: pipeline.delta,
        max_instances: pipeline.max_instances,
    }
}

/// Flags echoed verbatim into every report for provenance.
fn config_echo(pipeline: &PipelineArgs, extra: serde_json::Value) -> serde_json::Value {
    let mut config = serde_json::json!({
        "delta": pipeline.delta,
        "mode": match pipeline.mode {
            ModeArg::Greedy => "greedy",
            ModeArg::Luby => "luby",
            ModeArg::Exact => "exact",
        },
        "seed": pipeline.seed,
        "catalog": pipeline.catalog.as_ref().map(|p| p.display().to_string()),
        "search_order": pipeline.search_order,
        "max_instances": pipeline.max_instances,
    });
    if let (Some(obj), Some(more)) = (config.as_object_mut(), extra.as_object()) {
        for (k, v) in more {
            obj.insert(k.clone(), v.clone());
        }
    }
    config
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(path) => {
            std::fs::write(path, content)
                .map_err(|e| CliError::io(format!("{}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            Ok(())
        }
    }
}

fn write_in_dir(dir: &Path, name: &str, content: &str) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, content).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    Ok(path)
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<(), CliError> {
    let graph = load_graph(&args.input)?;
    let catalog = load_catalog(&args.pipeline)?;
    let cfg = enumeration_config(&args.pipeline);
    let mode = selection_mode(&args.pipeline);
    let result = extract_items(&graph, &catalog, &cfg, mode)?;
    let config = config_echo(
        &args.pipeline,
        serde_json::json!({
            "command": "analyze",
            "input": args.input.input.display().to_string(),
        }),
    );
    let births = graph.birth_times();
    let content = match args.format {
        FormatArg::Json => {
            let report = AnalyzeReport::build(&result, &graph, &births, &catalog, config);
            let mut text = report.to_json_pretty();
            text.push('\n');
            text
        }
        FormatArg::Csv => {
            let vector = feature_vector(&result, &graph, &births, &catalog);
            feature_csv(&[args.input.input.display().to_string()], &[vector])
        }
    };
    write_output(args.out.as_deref(), &content)
}

fn cmd_windows(args: &WindowsArgs) -> Result<(), CliError> {
    let spec = match (args.window_duration, args.window_count) {
        (Some(d), None) => WindowSpec::Duration(d),
        (None, Some(c)) => WindowSpec::Count(c),
        _ => {
            return Err(CliError::usage(
                "exactly one of --window-duration or --window-count is required",
            ))
        }
    };
    let graph = load_graph(&args.input)?;
    let catalog = load_catalog(&args.pipeline)?;
    let cfg = enumeration_config(&args.pipeline);
    let mode = selection_mode(&args.pipeline);
    let windows = graph.window_partition(spec)?;
    let plan = if args.sample_fraction >= 1.0 {
        SamplingPlan::all(windows.len())
    } else {
        select_windows(windows.len(), args.sample_fraction, args.pipeline.seed)?
    };
    let dist = estimate_distribution(&windows, &plan, &catalog, &cfg, mode)?;

    // Series CSV: one row per window, raw and importance-normalized counts.
    let mut csv = String::from("window,start,end,importance,selected");
    for id in &dist.motif_ids {
        csv.push_str(&format!(",{id}_count,{id}_norm"));
    }
    csv.push('\n');
    for (i, w) in windows.iter().enumerate() {
        csv.push_str(&format!(
            "{},{},{},{},{}",
            w.id,
            w.start,
            w.end,
            w.importance,
            u8::from(plan.selected[i])
        ));
        for k in 0..dist.motif_ids.len() {
            csv.push_str(&format!(",{},{}", dist.counts[k][i], dist.normalized[k][i]));
        }
        csv.push('\n');
    }

    // Burst flags from the selected windows' raw frequencies. A burst
    // inflates the window importance too, so normalized counts can stay
    // flat across the event.
    let selected_ids: Vec<usize> = (0..windows.len()).filter(|&i| plan.selected[i]).collect();
    let series: Vec<Vec<f64>> = selected_ids
        .iter()
        .map(|&i| dist.counts.iter().map(|row| row[i] as f64).collect())
        .collect();
    let flagged: Vec<usize> = if series.len() >= 3 {
        series_anomaly(&series, args.z_threshold)?
            .into_iter()
            .map(|pos| selected_ids[pos])
            .collect()
    } else {
        Vec::new()
    };

    let config = config_echo(
        &args.pipeline,
        serde_json::json!({
            "command": "windows",
            "input": args.input.input.display().to_string(),
            "window_duration": args.window_duration,
            "window_count": args.window_count,
            "sample_fraction": args.sample_fraction,
            "z_threshold": args.z_threshold,
        }),
    );
    let flags = serde_json::json!({
        "schema_version": REPORT_SCHEMA_VERSION,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "catalog_hash": catalog_hash(&catalog),
        "config": config,
        "total_windows": plan.total_windows,
        "selected_windows": plan.num_selected(),
        "estimator_form": dist.form,
        "motif_ids": dist.motif_ids,
        "estimate": dist.estimate,
        "flagged_windows": flagged,
    });
    write_in_dir(&args.out, "windows_series.csv", &csv)?;
    write_in_dir(
        &args.out,
        "windows_flags.json",
        &format!("{}\n", serde_json::to_string_pretty(&flags).expect("serializable")),
    )?;
    Ok(())
}

fn cmd_compare(args: &CompareArgs) -> Result<(), CliError> {
    if args.input.len() < 2 {
        return Err(CliError::usage("compare needs at least two --input files"));
    }
    let labels: Vec<i64> = match &args.stretch_labels {
        Some(text) => {
            let parsed: Result<Vec<i64>, _> =
                text.split(',').map(|s| s.trim().parse::<i64>()).collect();
            let parsed =
                parsed.map_err(|e| CliError::usage(format!("bad --stretch-labels: {e}")))?;
            if parsed.len() != args.input.len() {
                return Err(CliError::usage(format!(
                    "{} stretch labels for {} inputs",
                    parsed.len(),
                    args.input.len()
                )));
            }
            parsed
        }
        None => (0..args.input.len() as i64).collect(),
    };
    let catalog = load_catalog(&args.pipeline)?;
    let cfg = enumeration_config(&args.pipeline);
    let mode = selection_mode(&args.pipeline);
    let mut vectors = Vec::with_capacity(args.input.len());
    for path in &args.input {
        let input = InputArgs {
            input: path.clone(),
            vertex_file: None,
            time_unit: args.time_unit,
        };
        let graph = load_graph(&input)?;
        let result = extract_items(&graph, &catalog, &cfg, mode)?;
        let v = feature_vector(&result, &graph, &graph.birth_times(), &catalog);
        vectors.push(if args.frequency_only {
            v.frequency_only()
        } else {
            v
        });
    }
    let normalized = normalize(&vectors)?;
    let labeled: Vec<(String, i64, _)> = args
        .input
        .iter()
        .zip(&labels)
        .zip(normalized)
        .map(|((p, &l), v)| (p.display().to_string(), l, v))
        .collect();
    let (matrix, gap_curve) = pairwise_and_gap_aggregate(&labeled)?;

    let mut csv = String::from("graph");
    for l in &matrix.labels {
        csv.push(',');
        csv.push_str(l);
    }
    csv.push('\n');
    for (i, l) in matrix.labels.iter().enumerate() {
        csv.push_str(l);
        for d in &matrix.distances[i] {
            csv.push_str(&format!(",{d}"));
        }
        csv.push('\n');
    }
    write_in_dir(&args.out, "similarity_matrix.csv", &csv)?;
    if args.stretch_labels.is_some() {
        let mut curve = String::from("gap,mean_distance\n");
        for (gap, mean) in &gap_curve {
            curve.push_str(&format!("{gap},{mean}\n"));
        }
        write_in_dir(&args.out, "gap_curve.csv", &curve)?;
    }
    Ok(())
}

fn edge_list_text(graph: &TemporalGraph) -> String {
    let mut out = String::new();
    for e in graph.edges() {
        out.push_str(&format!(
            "{} {} {}\n",
            graph.vertex_name(e.src),
            graph.vertex_name(e.dst),
            e.time
        ));
    }
    out
}

fn cmd_generate(args: &GenerateArgs) -> Result<(), CliError> {
    let spec = GenSpec {
        n: args.n,
        p: args.p,
        duration: args
            .duration_days
            .checked_mul(SECONDS_PER_DAY)
            .ok_or_else(|| CliError::usage("duration overflow"))?,
        seed: args.seed,
    };
    let base = generate_base(&spec)?;
    let mut files = Vec::new();
    write_in_dir(&args.out, "G_0.txt", &edge_list_text(&base))?;
    files.push(serde_json::json!({
        "name": "G_0.txt",
        "variant": 0,
        "extra_days": 0,
        "edges": base.num_edges(),
    }));
    for i in 1..=args.variants {
        // Variant i stretches by i extra days; jitter seed offset by i so
        // variants differ but the whole set replays from one seed.
        let variant = stretch_perturb(&base, i as i64, args.sigma, args.seed + i as u64)?;
        let name = format!("G_{i}.txt");
        write_in_dir(&args.out, &name, &edge_list_text(&variant))?;
        files.push(serde_json::json!({
            "name": name,
            "variant": i,
            "extra_days": i,
            "edges": variant.num_edges(),
        }));
    }
    let manifest = serde_json::json!({
        "schema_version": REPORT_SCHEMA_VERSION,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "config": {
            "command": "generate",
            "n": args.n,
            "p": args.p,
            "duration_days": args.duration_days,
            "seed": args.seed,
            "variants": args.variants,
            "sigma": args.sigma,
        },
        "files": files,
    });
    write_in_dir(
        &args.out,
        "manifest.json",
        &format!("{}\n", serde_json::to_string_pretty(&manifest).expect("serializable")),
    )?;
    Ok(())
}
