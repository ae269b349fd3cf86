//! One function per subcommand. Each computes its full result first and only
//! then writes output files, so an error never leaves partial results.

use std::fs;
use std::path::{Path, PathBuf};

use anticross_core::dynamics::{evolve_with_dt, overlap_curves};
use anticross_core::graphs::{
    generate_complete_bipartite, generate_cycle, generate_grk, parse_edge_list,
    serialize_edge_list, Graph, GrkParams,
};
use anticross_core::maxcut::CostModel;
use anticross_core::pipeline::analyze;
use anticross_core::spectrum::{gap_scan, AnnealHamiltonian, GapScanConfig};
use anyhow::{bail, Context, Result};
use serde::Serialize;

use crate::args::GenFamily;
use crate::output::{csv_header, fmt_f64, graph_hash, write_atomic, write_json, RunConfig};

/// Shared per-run context resolved from the global flags.
pub struct Ctx {
    pub out_dir: PathBuf,
    pub seed: u64,
    pub fixed_node: usize,
    pub enum_cap: Option<usize>,
}

impl Ctx {
    pub fn config(&self, subcommand: &str, graph_source: String) -> RunConfig {
        let mut config = RunConfig::new(
            subcommand,
            graph_source,
            self.fixed_node,
            &self.out_dir,
            self.seed,
        );
        config.enum_cap = self.enum_cap;
        config
    }

    fn model(&self, graph: Graph) -> Result<CostModel> {
        let mut model = CostModel::new(graph, self.fixed_node)?;
        if let Some(cap) = self.enum_cap {
            model = model.with_enum_cap(cap);
        }
        Ok(model)
    }

    pub fn out_path(&self, explicit: Option<PathBuf>, default_name: String) -> PathBuf {
        explicit.unwrap_or_else(|| self.out_dir.join(default_name))
    }
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(parse_edge_list(&text)?)
}

fn stem_of(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "graph".to_string())
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

pub fn cmd_generate(ctx: &Ctx, family: GenFamily, out: Option<PathBuf>) -> Result<()> {
    let (graph, name, spec) = match family {
        GenFamily::Cycle { n } => (
            generate_cycle(n)?,
            format!("cycle-{n}"),
            format!("cycle n={n}"),
        ),
        GenFamily::Grk { r, l, k } => (
            generate_grk(&GrkParams { r, l, k })?,
            format!("grk-{r}-{l}-{k}"),
            format!("grk r={r} l={l} k={k}"),
        ),
        GenFamily::Kab { a, b } => (
            generate_complete_bipartite(a, b)?,
            format!("kab-{a}-{b}"),
            format!("kab a={a} b={b}"),
        ),
    };
    let config = ctx.config("generate", spec);
    let hash = graph_hash(&graph);
    let path = ctx.out_path(out, format!("{name}.txt"));
    let mut text = format!(
        "# run_config: {}\n# graph_hash: {}\n",
        config.to_json(),
        hash
    );
    text.push_str(&serialize_edge_list(&graph));
    write_atomic(&path, &text)?;
    println!(
        "generate: wrote {} ({} nodes, {} edges, {hash})",
        path.display(),
        graph.n_nodes(),
        graph.n_edges()
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

pub fn cmd_analyze(ctx: &Ctx, graph_path: &Path, out: Option<PathBuf>) -> Result<()> {
    let graph = load_graph(graph_path)?;
    let hash = graph_hash(&graph);
    let config = ctx.config("analyze", graph_path.display().to_string());
    let model = ctx.model(graph)?;
    let report = analyze(&model)?;

    let regime = serde_json::to_value(report.verdict.regime)?
        .as_str()
        .unwrap_or("?")
        .to_string();
    let window = match (
        report.verdict.crossings.s_lg,
        report.verdict.crossings.s_lg_plus,
        report.verdict.crossings.s_lg_minus,
    ) {
        (Some(s), Some(lo), Some(hi)) => {
            format!("s_lg = {s:.6} (window {lo:.6} .. {hi:.6})")
        }
        (Some(s), _, _) => format!("s_lg = {s:.6}"),
        _ => "s_lg undefined (parallel energy lines)".to_string(),
    };

    let path = ctx.out_path(out, format!("{}.analysis.json", stem_of(graph_path)));
    write_json(&path, &config, &hash, report)?;
    println!("analyze: regime {regime}; {window}");
    println!("analyze: wrote {}", path.display());
    Ok(())
}

// ---------------------------------------------------------------------------
// gapscan
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct GapScanSidecar {
    s_min: f64,
    gap_min: f64,
    refined: bool,
    grid: usize,
}

pub fn cmd_gapscan(
    ctx: &Ctx,
    graph_path: &Path,
    grid: usize,
    no_refine: bool,
    out: Option<PathBuf>,
) -> Result<()> {
    let graph = load_graph(graph_path)?;
    let hash = graph_hash(&graph);
    let mut config = ctx.config("gapscan", graph_path.display().to_string());
    config.grid = Some(grid);
    config.refine = Some(!no_refine);

    let model = ctx.model(graph)?;
    let h = AnnealHamiltonian::new(&model)?;
    let cfg = GapScanConfig {
        grid_points: grid,
        refine: !no_refine,
        ..GapScanConfig::default()
    };
    let scan = gap_scan(&h, &cfg)?;

    let mut csv = csv_header(&config, &hash);
    csv.push_str("s,e0,e1,gap\n");
    for p in &scan.points {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            fmt_f64(p.s),
            fmt_f64(p.e0),
            fmt_f64(p.e1),
            fmt_f64(p.gap)
        ));
    }

    let base = ctx.out_path(out, format!("{}.gapscan", stem_of(graph_path)));
    let csv_path = base.with_extension("csv");
    let json_path = base.with_extension("json");
    write_atomic(&csv_path, &csv)?;
    write_json(
        &json_path,
        &config,
        &hash,
        GapScanSidecar {
            s_min: scan.s_min,
            gap_min: scan.gap_min,
            refined: scan.refined,
            grid,
        },
    )?;
    println!(
        "gapscan: gap_min = {:.12} at s = {:.9}; wrote {} and {}",
        scan.gap_min,
        scan.s_min,
        csv_path.display(),
        json_path.display()
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// evolve
// ---------------------------------------------------------------------------

pub fn cmd_evolve(
    ctx: &Ctx,
    graph_path: &Path,
    t_max: &[f64],
    dt: Option<f64>,
    out: Option<PathBuf>,
) -> Result<()> {
    if t_max.is_empty() {
        bail!("evolve needs at least one t_max value");
    }
    let graph = load_graph(graph_path)?;
    let hash = graph_hash(&graph);
    let mut config = ctx.config("evolve", graph_path.display().to_string());
    config.t_max = Some(t_max.to_vec());
    config.dt = dt;

    let model = ctx.model(graph)?;
    let mut rows = Vec::with_capacity(t_max.len());
    for &t in t_max {
        let res = evolve_with_dt(&model, t, None, dt)?;
        eprintln!(
            "evolve: t_max = {t}: p_gs = {:.6}, drift = {:.2e}, {} steps",
            res.p_gs, res.norm_drift, res.steps
        );
        rows.push((t, res.p_gs, res.norm_drift));
    }

    let mut csv = csv_header(&config, &hash);
    csv.push_str("t_max,p_gs,norm_drift\n");
    for (t, p, d) in rows {
        csv.push_str(&format!("{},{},{}\n", fmt_f64(t), fmt_f64(p), fmt_f64(d)));
    }
    let path = ctx.out_path(out, format!("{}.evolve.csv", stem_of(graph_path)));
    write_atomic(&path, &csv)?;
    println!("evolve: wrote {}", path.display());
    Ok(())
}

// ---------------------------------------------------------------------------
// overlaps
// ---------------------------------------------------------------------------

pub fn cmd_overlaps(ctx: &Ctx, graph_path: &Path, grid: usize, out: Option<PathBuf>) -> Result<()> {
    if grid < 2 {
        bail!("overlaps needs at least 2 grid points, got {grid}");
    }
    let graph = load_graph(graph_path)?;
    let hash = graph_hash(&graph);
    let mut config = ctx.config("overlaps", graph_path.display().to_string());
    config.grid = Some(grid);

    let model = ctx.model(graph)?;
    let s_grid: Vec<f64> = (0..grid).map(|j| j as f64 / (grid - 1) as f64).collect();
    let curves = overlap_curves(&model, &s_grid)?;

    let mut csv = csv_header(&config, &hash);
    csv.push_str("s,g0,g1\n");
    for i in 0..curves.s_grid.len() {
        csv.push_str(&format!(
            "{},{},{}\n",
            fmt_f64(curves.s_grid[i]),
            fmt_f64(curves.g0[i]),
            fmt_f64(curves.g1[i])
        ));
    }
    let path = ctx.out_path(out, format!("{}.overlaps.csv", stem_of(graph_path)));
    write_atomic(&path, &csv)?;
    println!("overlaps: wrote {}", path.display());
    Ok(())
}
