//! Running layouts by name and tabulating their metrics.

use std::fmt;
use std::str::FromStr;

use fewseg_core::{
    evaluate, layout_fdfewseg, layout_fewsegments, layout_force_directed, layout_quad,
    layout_tidier, select_paths, Drawing, FewSegParams, ForceParams, MetricsRecord, PathSet,
    QuadParams, RootedTree,
};

use crate::error::{CliError, Result};
use crate::formats::GraphFile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Layout {
    Tidier,
    Quad,
    FewSegments,
    ForceDir,
    FdFewSeg,
}

impl Layout {
    pub const ALL: [Layout; 5] = [
        Layout::Tidier,
        Layout::Quad,
        Layout::FewSegments,
        Layout::ForceDir,
        Layout::FdFewSeg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Layout::Tidier => "tidier",
            Layout::Quad => "quad",
            Layout::FewSegments => "fewsegments",
            Layout::ForceDir => "forcedir",
            Layout::FdFewSeg => "fdfewseg",
        }
    }

    pub fn needs_tree(self) -> bool {
        matches!(self, Layout::Tidier | Layout::Quad | Layout::FewSegments)
    }
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Layout {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Layout::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| format!("unknown layout {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayoutOptions {
    pub quad: QuadParams,
    pub fewseg: FewSegParams,
    pub iterations: Option<usize>,
    pub c: Option<f64>,
    pub area: Option<f64>,
    /// Paths for the constrained embedder; selected automatically when absent.
    pub paths: Option<PathSet>,
    pub max_turn: f64,
    pub min_len: usize,
}

impl Default for LayoutOptions {
    fn default() -> Self {
        LayoutOptions {
            quad: QuadParams::default(),
            fewseg: FewSegParams::default(),
            iterations: None,
            c: None,
            area: None,
            paths: None,
            max_turn: 30.0,
            min_len: 3,
        }
    }
}

impl LayoutOptions {
    pub fn force_params(&self, n: usize, seed: u64) -> ForceParams {
        let mut p = ForceParams::for_graph(n, seed);
        if let Some(a) = self.area {
            p.area = a;
            p.initial_temperature = 0.1 * a.sqrt();
        }
        if let Some(c) = self.c {
            p.c = c;
        }
        if let Some(i) = self.iterations {
            p.iterations = i;
        }
        p
    }
}

/// The file's tree rooted at its marked root, or at vertex 1.
pub fn as_tree(file: &GraphFile) -> Option<RootedTree> {
    if !file.graph.is_tree() {
        return None;
    }
    RootedTree::from_graph(&file.graph, file.root.unwrap_or(0)).ok()
}

/// Paths chosen on a plain spring-embedder drawing of the graph.
pub fn auto_paths(file: &GraphFile, opts: &LayoutOptions, seed: u64) -> Result<PathSet> {
    let base = layout_force_directed(&file.graph, opts.force_params(file.graph.n(), seed))?;
    Ok(select_paths(&file.graph, &base, opts.max_turn, opts.min_len))
}

pub fn run_layout(layout: Layout, file: &GraphFile, opts: &LayoutOptions, seed: u64) -> Result<Drawing> {
    if layout.needs_tree() {
        let tree = as_tree(file).ok_or_else(|| {
            CliError::Algorithm(fewseg_core::Error::NotATree(format!(
                "{layout} needs a tree, got {} vertices and {} edges",
                file.graph.n(),
                file.graph.m()
            )))
        })?;
        return Ok(match layout {
            Layout::Tidier => layout_tidier(&tree),
            Layout::Quad => layout_quad(&tree, opts.quad)?,
            _ => layout_fewsegments(&tree, opts.fewseg)?,
        });
    }
    let params = opts.force_params(file.graph.n(), seed);
    match layout {
        Layout::ForceDir => Ok(layout_force_directed(&file.graph, params)?),
        _ => {
            let paths = match &opts.paths {
                Some(p) => p.clone(),
                None => auto_paths(file, opts, seed)?,
            };
            Ok(layout_fdfewseg(&file.graph, &paths, params)?)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub id: String,
    pub file: GraphFile,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub instance_id: String,
    pub layout: String,
    pub outcome: std::result::Result<MetricsRecord, String>,
}

/// One row per (instance, layout), instances outermost.
pub fn batch_report(corpus: &[Instance], layouts: &[Layout], opts: &LayoutOptions, seed: u64) -> Vec<Row> {
    let mut rows = Vec::with_capacity(corpus.len() * layouts.len());
    for inst in corpus {
        let tree_mode = inst.file.graph.is_tree();
        for &layout in layouts {
            let outcome = run_layout(layout, &inst.file, opts, seed)
                .map(|d| evaluate(&d, tree_mode))
                .map_err(|e| e.to_string());
            rows.push(Row {
                instance_id: inst.id.clone(),
                layout: layout.name().to_string(),
                outcome,
            });
        }
    }
    rows
}

/// `x` with at most six significant digits and no trailing zeros.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_nan() { "NaN".into() } else if x == 0.0 { "0".into() } else { format!("{x}") };
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

pub const CSV_HEADER: [&str; 10] = [
    "instance_id",
    "layout",
    "segments",
    "lower_bound",
    "crossings",
    "width",
    "height",
    "area",
    "min_angle_deg",
    "edge_length_cv",
];

fn record_cells(m: &MetricsRecord) -> [String; 8] {
    [
        m.segments.to_string(),
        m.lower_bound.map_or(String::new(), |b| b.to_string()),
        m.crossings.to_string(),
        fmt_sig(m.width),
        fmt_sig(m.height),
        fmt_sig(m.area),
        fmt_sig(m.min_angle),
        fmt_sig(m.edge_length_cv),
    ]
}

/// Rows followed by one `mean` row per layout over its successful rows.
pub fn report_csv(rows: &[Row], layouts: &[&str]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).unwrap();
    for row in rows {
        let mut rec = vec![row.instance_id.clone(), row.layout.clone()];
        match &row.outcome {
            Ok(m) => rec.extend(record_cells(m)),
            Err(e) => {
                rec.push(format!("error: {e}"));
                rec.extend(std::iter::repeat_n(String::new(), 7));
            }
        }
        w.write_record(&rec).unwrap();
    }
    if !rows.is_empty() {
        for layout in layouts {
            let ok: Vec<&MetricsRecord> = rows
                .iter()
                .filter(|r| r.layout == *layout)
                .filter_map(|r| r.outcome.as_ref().ok())
                .collect();
            let mean = |f: &dyn Fn(&MetricsRecord) -> Option<f64>| -> String {
                let vals: Vec<f64> = ok.iter().filter_map(|m| f(m)).collect();
                if vals.is_empty() {
                    String::new()
                } else {
                    fmt_sig(vals.iter().sum::<f64>() / vals.len() as f64)
                }
            };
            let rec = vec![
                "mean".to_string(),
                layout.to_string(),
                mean(&|m| Some(m.segments as f64)),
                mean(&|m| m.lower_bound.map(|b| b as f64)),
                mean(&|m| Some(m.crossings as f64)),
                mean(&|m| Some(m.width)),
                mean(&|m| Some(m.height)),
                mean(&|m| Some(m.area)),
                mean(&|m| Some(m.min_angle)),
                mean(&|m| Some(m.edge_length_cv)),
            ];
            w.write_record(&rec).unwrap();
        }
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}
