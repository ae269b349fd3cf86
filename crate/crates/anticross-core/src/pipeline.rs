//! One-call instance analysis: the cost landscape, the first-excited-level
//! graph, the crossing-regime verdict, and the second-order validity report,
//! assembled into a single serializable structure shared by the command-line
//! tool and the browser demo.

use serde::{Deserialize, Serialize};

use crate::accondition::{classify_from, AcVerdict};
use crate::locgraph::{build_loc_graph_from, LocGraph};
use crate::maxcut::{CostModel, SpectrumStats};
use crate::perturbation::{validity_report, ValidityReport};
use crate::rational::RatRepr;
use crate::Result;

/// Input-graph facts relevant to the verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphSummary {
    pub n_nodes: usize,
    pub n_edges: usize,
    pub deg_min: usize,
    pub deg_max: usize,
    pub deg_avg: RatRepr,
    pub connected: bool,
    pub bipartite: bool,
    /// Node whose side is pinned to break the global flip symmetry.
    pub fixed_node: usize,
}

/// Classical cost-spectrum facts (exact, from full enumeration).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CostSummary {
    pub n_qubits: usize,
    pub e_gs: i64,
    pub e_fs: i64,
    pub delta_h1: i64,
    pub gs_degeneracy: u64,
    pub fs_degeneracy: u64,
    pub mean_h1: RatRepr,
    pub alpha_t: RatRepr,
}

/// First-excited-level graph facts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LocSummary {
    pub n_vertices: usize,
    pub n_edges: usize,
    pub n_components: usize,
    /// Vertex count of the component attaining `lambda0`.
    pub major_size: usize,
    pub major_unique: bool,
    pub lambda0: f64,
    pub deg_max: usize,
    pub deg_avg: RatRepr,
    pub gs_links: u64,
    pub boundary_size: u64,
    pub conductance: RatRepr,
    pub min_outside_gap: i64,
}

/// Everything `analyze` knows about one instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub graph: GraphSummary,
    pub cost: CostSummary,
    pub loc: LocSummary,
    pub verdict: AcVerdict,
    /// `None` when the optimum is degenerate (the ground expansion has no
    /// unique reference state); the verdict's flags record that case.
    pub validity: Option<ValidityReport>,
}

fn graph_summary(model: &CostModel) -> GraphSummary {
    let g = model.graph();
    let deg = g.degree_stats();
    let parts = g.bipartition();
    GraphSummary {
        n_nodes: g.n_nodes(),
        n_edges: g.n_edges(),
        deg_min: deg.deg_min,
        deg_max: deg.deg_max,
        deg_avg: deg.deg_avg.into(),
        connected: parts.connected,
        bipartite: parts.bipartite,
        fixed_node: model.fixed_node(),
    }
}

fn cost_summary(stats: &SpectrumStats) -> CostSummary {
    CostSummary {
        n_qubits: stats.n_qubits,
        e_gs: stats.e_gs,
        e_fs: stats.e_fs,
        delta_h1: stats.delta_h1,
        gs_degeneracy: stats.gs_degeneracy,
        fs_degeneracy: stats.fs_degeneracy,
        mean_h1: stats.mean_h1.into(),
        alpha_t: stats.alpha_t().into(),
    }
}

fn loc_summary(loc: &LocGraph) -> LocSummary {
    let (deg_max, deg_avg) = loc.degree_stats_all();
    LocSummary {
        n_vertices: loc.vertices.len(),
        n_edges: loc.edges.len(),
        n_components: loc.components.len(),
        major_size: loc.major().members.len(),
        major_unique: loc.major_unique,
        lambda0: loc.lambda0,
        deg_max,
        deg_avg: deg_avg.into(),
        gs_links: loc.gs_links_total,
        boundary_size: loc.boundary_size,
        conductance: loc.conductance().into(),
        min_outside_gap: loc.min_outside_gap,
    }
}

/// Runs the full analysis pipeline on one model.
pub fn analyze(model: &CostModel) -> Result<AnalysisReport> {
    let table = model.energies()?;
    let stats = model.spectrum_stats_from(&table)?;
    let loc = build_loc_graph_from(model, &table, &stats);
    let verdict = classify_from(&stats, &loc);
    let validity = if stats.gs_degeneracy == 1 {
        Some(validity_report(model, &loc)?)
    } else {
        None
    };
    Ok(AnalysisReport {
        graph: graph_summary(model),
        cost: cost_summary(&stats),
        loc: loc_summary(&loc),
        verdict,
        validity,
    })
}
