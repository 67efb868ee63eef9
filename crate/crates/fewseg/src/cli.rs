//! `fewseg` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use fewseg_core::generators::{
    random_connected_graph, random_sparse_graph, random_tree_with_cap, random_tree_with_depth,
    DepthClass, GraphSpec, GraphType, TreeSpec, DEFAULT_REJECTION_CAP,
};
use fewseg_core::{evaluate, validate_path_set, FewSegParams, QuadParams};

use crate::error::{CliError, Result};
use crate::formats::{load_graph_file, parse_paths, read_text, write_atomic, write_edge_list, write_paths, GraphFile};
use crate::render::{render_svg, Style};
use crate::report::{auto_paths, batch_report, report_csv, run_layout, Instance, Layout, LayoutOptions, Row};
use crate::stimulus::{StimulusDocument, StimulusMetadata};

#[derive(Debug, Parser)]
#[command(name = "fewseg", version, about = "Tree and graph drawings with few segments")]
pub struct Cli {
    /// Random seed; falls back to FEWSEG_SEED, then 0.
    #[arg(long, global = true, env = "FEWSEG_SEED")]
    pub seed: Option<u64>,
    /// Output file (written atomically); stdout when absent.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Svg,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random tree or graph as an edge list.
    #[command(subcommand)]
    Generate(GenerateKind),
    /// Lay out a tree or graph file.
    Layout(LayoutArgs),
    /// Render a drawing document as SVG.
    Render(RenderArgs),
    /// Tabulate drawing metrics for documents or a corpus of graph files.
    Metrics(MetricsArgs),
    /// Pick nearly straight paths from a spring-embedder drawing.
    Paths(PathsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DepthArg {
    Deep,
    Balanced,
    Wide,
}

impl From<DepthArg> for DepthClass {
    fn from(d: DepthArg) -> Self {
        match d {
            DepthArg::Deep => DepthClass::Deep,
            DepthArg::Balanced => DepthClass::Balanced,
            DepthArg::Wide => DepthClass::Wide,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TypeArg {
    Rome,
    Random,
}

#[derive(Debug, Subcommand)]
pub enum GenerateKind {
    /// Random tree rooted at vertex 1 with a prescribed depth.
    Tree {
        /// Size class: 1 (20 vertices) or 2 (40 vertices).
        #[arg(long)]
        size: Option<u8>,
        #[arg(long, value_enum)]
        depth_class: Option<DepthArg>,
        /// Explicit vertex count, used together with --depth.
        #[arg(long, conflicts_with_all = ["size", "depth_class"])]
        vertices: Option<usize>,
        #[arg(long, requires = "vertices")]
        depth: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_REJECTION_CAP)]
        cap: u64,
    },
    /// Random connected sparse graph.
    Graph {
        #[arg(long)]
        size: Option<u8>,
        #[arg(long = "type", value_enum, default_value = "random")]
        type_class: TypeArg,
        #[arg(long, conflicts_with = "size")]
        vertices: Option<usize>,
        #[arg(long, requires = "vertices")]
        edges: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_REJECTION_CAP)]
        cap: u64,
    },
}

#[derive(Debug, Clone, Args)]
pub struct LayoutOpts {
    #[arg(long, default_value_t = 22.5)]
    pub angular_coefficient: f64,
    #[arg(long, default_value_t = 4)]
    pub quadrants: u8,
    /// Stretch budget of the vector rounding step.
    #[arg(long = "stretch", default_value_t = 2)]
    pub s: i64,
    /// Compression / re-vectoring rounds.
    #[arg(long, default_value_t = 5)]
    pub rounds: usize,
    #[arg(long)]
    pub iterations: Option<usize>,
    /// Constant C of the ideal edge length.
    #[arg(long = "spring-constant")]
    pub c: Option<f64>,
    #[arg(long)]
    pub area: Option<f64>,
    /// Largest turn, in degrees, for automatically selected paths.
    #[arg(long, default_value_t = 30.0)]
    pub max_turn: f64,
    /// Fewest edges of an automatically selected path.
    #[arg(long, default_value_t = 3)]
    pub min_len: usize,
}

impl LayoutOpts {
    fn options(&self) -> LayoutOptions {
        LayoutOptions {
            quad: QuadParams {
                angular_coefficient: self.angular_coefficient,
                quadrants: self.quadrants,
            },
            fewseg: FewSegParams {
                s: self.s,
                heuristic_rounds: self.rounds,
            },
            iterations: self.iterations,
            c: self.c,
            area: self.area,
            paths: None,
            max_turn: self.max_turn,
            min_len: self.min_len,
        }
    }
}

#[derive(Debug, Args)]
pub struct LayoutArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub algo: Layout,
    /// Paths file for fdfewseg; selected automatically when absent.
    #[arg(long)]
    pub paths: Option<PathBuf>,
    /// Root vertex for tree layouts, overriding the file's annotation.
    #[arg(long)]
    pub root: Option<usize>,
    #[command(flatten)]
    pub opts: LayoutOpts,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    pub input: PathBuf,
    #[arg(long, default_value = "#1f6fb5")]
    pub node_color: String,
    #[arg(long, default_value = "#000000")]
    pub edge_color: String,
    #[arg(long, default_value = "#ffffff")]
    pub halo_color: String,
    #[arg(long, default_value = "#2ca02c")]
    pub selected_color: String,
    #[arg(long, default_value = "#9ecae1")]
    pub selectable_color: String,
    #[arg(long)]
    pub edge_width: Option<f64>,
    #[arg(long)]
    pub node_radius: Option<f64>,
    /// Vertex ids to mark as selected.
    #[arg(long, value_delimiter = ',')]
    pub selected: Vec<usize>,
    /// Vertex ids to mark as selectable.
    #[arg(long, value_delimiter = ',')]
    pub selectable: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    /// Drawing documents (.json), graph files, or directories of either.
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    /// Layouts to run on graph files.
    #[arg(long, value_delimiter = ',', default_value = "tidier,quad,fewsegments")]
    pub algo: Vec<Layout>,
    /// Only keep graph files with this many vertices (see --tolerance).
    #[arg(long)]
    pub vertices: Option<usize>,
    #[arg(long, default_value_t = 0, requires = "vertices")]
    pub tolerance: usize,
    #[command(flatten)]
    pub opts: LayoutOpts,
}

#[derive(Debug, Args)]
pub struct PathsArgs {
    pub input: PathBuf,
    #[command(flatten)]
    pub opts: LayoutOpts,
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli) -> Result<()> {
    let seed = cli.seed.unwrap_or(0);
    match &cli.command {
        Command::Generate(kind) => {
            reject_format(cli.format, &[], "generate")?;
            let file = generate(kind, seed)?;
            eprintln!("seed: {seed}");
            emit(cli.out.as_deref(), write_edge_list(&file).as_bytes())
        }
        Command::Layout(args) => {
            reject_format(cli.format, &[Format::Json, Format::Svg], "layout")?;
            let doc = layout(args, seed)?;
            let text = match cli.format {
                Some(Format::Svg) => render_svg(&doc, &Style::default()),
                _ => doc.to_json(),
            };
            emit(cli.out.as_deref(), text.as_bytes())
        }
        Command::Render(args) => {
            reject_format(cli.format, &[Format::Svg], "render")?;
            let origin = args.input.display().to_string();
            let doc = StimulusDocument::from_json(&read_text(&args.input)?, &origin)?;
            doc.to_drawing(&origin)?;
            let style = Style {
                node_color: args.node_color.clone(),
                edge_color: args.edge_color.clone(),
                halo_color: args.halo_color.clone(),
                selected_color: args.selected_color.clone(),
                selectable_color: args.selectable_color.clone(),
                edge_width: args.edge_width,
                node_radius: args.node_radius,
                selected: args.selected.iter().copied().collect(),
                selectable: args.selectable.iter().copied().collect(),
            };
            emit(cli.out.as_deref(), render_svg(&doc, &style).as_bytes())
        }
        Command::Metrics(args) => {
            reject_format(cli.format, &[Format::Csv], "metrics")?;
            let csv = metrics(args, seed)?;
            emit(cli.out.as_deref(), csv.as_bytes())
        }
        Command::Paths(args) => {
            reject_format(cli.format, &[], "paths")?;
            let file = load_graph_file(&args.input)?;
            let paths = auto_paths(&file, &args.opts.options(), seed)?;
            emit(cli.out.as_deref(), write_paths(&paths).as_bytes())
        }
    }
}

fn reject_format(format: Option<Format>, allowed: &[Format], verb: &str) -> Result<()> {
    match format {
        Some(f) if !allowed.contains(&f) => Err(CliError::Usage(format!(
            "{verb} does not write {}",
            f.to_possible_value().unwrap().get_name()
        ))),
        _ => Ok(()),
    }
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => write_atomic(path, bytes),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

pub fn generate(kind: &GenerateKind, seed: u64) -> Result<GraphFile> {
    match *kind {
        GenerateKind::Tree {
            size,
            depth_class,
            vertices,
            depth,
            cap,
        } => {
            let (tree, label) = match (size, depth_class, vertices, depth) {
                (Some(size_class), Some(d), None, None) => {
                    let spec = TreeSpec {
                        size_class,
                        depth_class: d.into(),
                        seed,
                    };
                    let label = format!("tree size={size_class} depth-class={} seed={seed}", spec.depth_class.name());
                    (random_tree_with_cap(&spec, cap)?, label)
                }
                (None, None, Some(n), Some(depth)) => (
                    random_tree_with_depth(n, depth, seed, cap)?,
                    format!("tree vertices={n} depth={depth} seed={seed}"),
                ),
                _ => {
                    return Err(CliError::Usage(
                        "generate tree needs --size with --depth-class, or --vertices with --depth".into(),
                    ))
                }
            };
            Ok(GraphFile {
                graph: tree.to_graph(),
                root: Some(tree.root()),
                generator: Some(label),
            })
        }
        GenerateKind::Graph {
            size,
            type_class,
            vertices,
            edges,
            cap,
        } => {
            if type_class == TypeArg::Rome {
                return Err(CliError::Usage(
                    "rome graphs come from the graph library; load them with layout or metrics".into(),
                ));
            }
            let (graph, label) = match (size, vertices, edges) {
                (Some(size_class), None, None) => {
                    let spec = GraphSpec {
                        size_class,
                        type_class: GraphType::Random,
                        seed,
                    };
                    (
                        random_sparse_graph(&spec)?,
                        format!("graph size={size_class} type=random seed={seed}"),
                    )
                }
                (None, Some(n), Some(m)) => (
                    random_connected_graph(n, m, seed, cap)?,
                    format!("graph vertices={n} edges={m} seed={seed}"),
                ),
                _ => {
                    return Err(CliError::Usage(
                        "generate graph needs --size, or --vertices with --edges".into(),
                    ))
                }
            };
            Ok(GraphFile {
                graph,
                root: None,
                generator: Some(label),
            })
        }
    }
}

pub fn layout(args: &LayoutArgs, seed: u64) -> Result<StimulusDocument> {
    let mut file = load_graph_file(&args.input)?;
    if let Some(r) = args.root {
        if r == 0 || r > file.graph.n() {
            return Err(CliError::Usage(format!("root {r} is not a vertex")));
        }
        file.root = Some(r - 1);
    }
    let mut opts = args.opts.options();
    if let Some(p) = &args.paths {
        let origin = p.display().to_string();
        let paths = parse_paths(&read_text(p)?, &origin, file.graph.n())?;
        let paths = validate_path_set(&file.graph, &paths)?.resolve(&paths);
        opts.paths = Some(paths);
    }
    let drawing = run_layout(args.algo, &file, &opts, seed)?;
    Ok(StimulusDocument::from_drawing(
        &drawing,
        StimulusMetadata {
            layout: args.algo.name().to_string(),
            seed,
            generator: file.generator.clone(),
        },
    ))
}

fn is_graph_file(path: &Path) -> bool {
    matches!(
        path.extension().and_then(|e| e.to_str()),
        Some("tree" | "el" | "edges" | "txt" | "graphml" | "xml")
    )
}

fn is_document(path: &Path) -> bool {
    path.extension().and_then(|e| e.to_str()) == Some("json")
}

fn instance_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

pub fn metrics(args: &MetricsArgs, seed: u64) -> Result<String> {
    let mut files = Vec::new();
    for input in &args.inputs {
        if input.is_dir() {
            let mut entries: Vec<PathBuf> = std::fs::read_dir(input)
                .map_err(|e| CliError::io(input, e))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.is_file() && (is_graph_file(p) || is_document(p)))
                .collect();
            entries.sort();
            files.extend(entries);
        } else {
            files.push(input.clone());
        }
    }

    let opts = args.opts.options();
    let mut rows: Vec<Row> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    let note = |name: &str, names: &mut Vec<String>| {
        if !names.iter().any(|n| n == name) {
            names.push(name.to_string());
        }
    };
    for path in &files {
        if is_document(path) {
            let origin = path.display().to_string();
            let doc = StimulusDocument::from_json(&read_text(path)?, &origin)?;
            let drawing = doc.to_drawing(&origin)?;
            let tree_mode = drawing.graph.is_tree();
            note(&doc.metadata.layout, &mut names);
            rows.push(Row {
                instance_id: instance_id(path),
                layout: doc.metadata.layout.clone(),
                outcome: Ok(evaluate(&drawing, tree_mode)),
            });
            continue;
        }
        let file = load_graph_file(path)?;
        if let Some(n) = args.vertices {
            if file.graph.n().abs_diff(n) > args.tolerance {
                continue;
            }
        }
        let inst = Instance {
            id: instance_id(path),
            file,
        };
        for layout in &args.algo {
            note(layout.name(), &mut names);
        }
        rows.extend(batch_report(std::slice::from_ref(&inst), &args.algo, &opts, seed));
    }
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    Ok(report_csv(&rows, &names))
}
