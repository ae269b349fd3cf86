//! Browser bindings for the anticross toolkit.
//!
//! Three operations are exported, each JSON-in/JSON-out so the page needs no
//! generated TypeScript types: [`analyze_instance`] runs the full analytic
//! pipeline on a generated instance, [`scan_gap`] computes the two lowest
//! levels of `H(s)` over an `s` grid, and [`block_inequality`] evaluates the
//! exact closed-form crossing condition for the two-block family. Errors come
//! back as `{"error": "..."}` instead of an exception so the page handles
//! every outcome through one path.
//!
//! The same functions compile natively, which is how the integration tests
//! exercise them; `wasm-pack build --target web` produces the browser module
//! loaded by `web/index.html`.

use anticross_core::accondition::{grk_ac_inequality, CrossingTimes, EnergyLines};
use anticross_core::graphs::{
    generate_complete_bipartite, generate_cycle, generate_grk, Graph, GrkParams,
};
use anticross_core::maxcut::CostModel;
use anticross_core::pipeline::{analyze, AnalysisReport};
use anticross_core::rational::Rat;
use anticross_core::spectrum::{gap_scan, AnnealHamiltonian, GapScanConfig};
use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::wasm_bindgen;

/// Enumeration cap for the analytic pipeline in the browser (main thread,
/// no progress reporting): 2^21 table entries stay comfortably interactive.
const ANALYZE_QUBIT_CAP: usize = 22;

/// Qubit cap for browser-side gap scans. Each grid point runs a Lanczos
/// solve; beyond 2^14 dimensions a 201-point scan stops feeling interactive.
const SCAN_QUBIT_CAP: usize = 14;

/// Instance selector accepted by [`analyze_instance`] and [`scan_gap`].
///
/// ```json
/// {"family": "cycle", "n": 8}
/// {"family": "kab", "a": 3, "b": 4}
/// {"family": "grk", "r": 3, "l": 3, "k": 2}
/// ```
///
/// An optional `"fixed_node"` picks the pinned node (default 0).
#[derive(Debug, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase", deny_unknown_fields)]
enum FamilySpec {
    Cycle {
        n: usize,
        #[serde(default)]
        fixed_node: usize,
    },
    Kab {
        a: usize,
        b: usize,
        #[serde(default)]
        fixed_node: usize,
    },
    Grk {
        r: usize,
        l: usize,
        k: usize,
        #[serde(default)]
        fixed_node: usize,
    },
}

impl FamilySpec {
    fn build(&self) -> anticross_core::Result<(Graph, usize)> {
        match *self {
            FamilySpec::Cycle { n, fixed_node } => Ok((generate_cycle(n)?, fixed_node)),
            FamilySpec::Kab { a, b, fixed_node } => {
                Ok((generate_complete_bipartite(a, b)?, fixed_node))
            }
            FamilySpec::Grk {
                r,
                l,
                k,
                fixed_node,
            } => Ok((generate_grk(&GrkParams { r, l, k })?, fixed_node)),
        }
    }

    fn label(&self) -> String {
        match *self {
            FamilySpec::Cycle { n, .. } => format!("cycle n={n}"),
            FamilySpec::Kab { a, b, .. } => format!("K_{{{a},{b}}}"),
            FamilySpec::Grk { r, l, k, .. } => format!("G r={r} l={l} k={k}"),
        }
    }
}

fn err_json(msg: impl std::fmt::Display) -> String {
    serde_json::to_string(&serde_json::json!({ "error": msg.to_string() }))
        .expect("error envelope serializes")
}

fn ok_json<T: Serialize>(value: &T) -> String {
    match serde_json::to_string(value) {
        Ok(s) => s,
        Err(e) => err_json(format!("serialization failed: {e}")),
    }
}

fn parse_spec(spec: &str) -> Result<(Graph, usize, String), String> {
    let spec: FamilySpec =
        serde_json::from_str(spec).map_err(|e| format!("bad instance spec: {e}"))?;
    let label = spec.label();
    let (graph, fixed) = spec.build().map_err(|e| e.to_string())?;
    Ok((graph, fixed, label))
}

/// Sampled values of one analytic energy line at `s = 0` and `s = 1`; the
/// lines are affine in `s`, so two points reconstruct them exactly.
#[derive(Debug, Serialize)]
struct LineSegment {
    at0: f64,
    at1: f64,
}

fn segment(f: impl Fn(f64) -> f64) -> LineSegment {
    LineSegment {
        at0: f(0.0),
        at1: f(1.0),
    }
}

#[derive(Debug, Serialize)]
struct AnalyzeEnvelope {
    instance: String,
    report: AnalysisReport,
    crossing: CrossingTimes,
    lines: LinesEnvelope,
}

#[derive(Debug, Serialize)]
struct LinesEnvelope {
    deloc: LineSegment,
    glob: LineSegment,
    loc: LineSegment,
    loc_plus: LineSegment,
    loc_minus: LineSegment,
}

/// Full analytic pipeline on a generated instance: graph and cost-spectrum
/// statistics, local-minima graph summary, regime verdict, crossing-time
/// estimates, and the five analytic energy lines as `s = 0 / s = 1` samples.
#[wasm_bindgen]
pub fn analyze_instance(spec: &str) -> String {
    let (graph, fixed, label) = match parse_spec(spec) {
        Ok(t) => t,
        Err(e) => return err_json(e),
    };
    let model = match CostModel::new(graph, fixed) {
        Ok(m) => m.with_enum_cap(ANALYZE_QUBIT_CAP),
        Err(e) => return err_json(e),
    };
    let report = match analyze(&model) {
        Ok(r) => r,
        Err(e) => return err_json(e),
    };
    // The report already carries every coefficient of the analytic lines;
    // rebuild them instead of enumerating the spectrum a second time.
    let lines = EnergyLines {
        n_deloc: report.cost.n_qubits,
        mean_h1: Rat::new(report.cost.mean_h1.num, report.cost.mean_h1.den),
        e_gs: report.cost.e_gs,
        e_fs: report.cost.e_fs,
        lambda0: report.verdict.lambda0,
        deg_avg_loc: Rat::new(
            report.verdict.deg_avg_loc.num,
            report.verdict.deg_avg_loc.den,
        ),
        deg_max_loc: report.verdict.deg_max_loc,
    };
    ok_json(&AnalyzeEnvelope {
        instance: label,
        crossing: report.verdict.crossings,
        lines: LinesEnvelope {
            deloc: segment(|s| lines.e_deloc(s)),
            glob: segment(|s| lines.e_glob(s)),
            loc: segment(|s| lines.e_loc(s)),
            loc_plus: segment(|s| lines.e_loc_plus(s)),
            loc_minus: segment(|s| lines.e_loc_minus(s)),
        },
        report,
    })
}

#[derive(Debug, Serialize)]
struct ScanEnvelope {
    instance: String,
    n_qubits: usize,
    s: Vec<f64>,
    e0: Vec<f64>,
    e1: Vec<f64>,
    gap: Vec<f64>,
    s_min: f64,
    gap_min: f64,
}

/// Two lowest instantaneous levels of `H(s)` on a uniform grid, plus the
/// refined location and value of the minimum gap. Grid must be in `[2, 401]`;
/// instances above 14 pinned qubits are refused to keep the page responsive.
#[wasm_bindgen]
pub fn scan_gap(spec: &str, grid: u32) -> String {
    let grid = grid as usize;
    if !(2..=401).contains(&grid) {
        return err_json(format!("grid must be between 2 and 401, got {grid}"));
    }
    let (graph, fixed, label) = match parse_spec(spec) {
        Ok(t) => t,
        Err(e) => return err_json(e),
    };
    let model = match CostModel::new(graph, fixed) {
        Ok(m) => m.with_enum_cap(SCAN_QUBIT_CAP),
        Err(e) => return err_json(e),
    };
    let h = match AnnealHamiltonian::new(&model) {
        Ok(h) => h,
        Err(e) => return err_json(e),
    };
    let cfg = GapScanConfig {
        grid_points: grid,
        ..GapScanConfig::default()
    };
    let scan = match gap_scan(&h, &cfg) {
        Ok(s) => s,
        Err(e) => return err_json(e),
    };
    ok_json(&ScanEnvelope {
        instance: label,
        n_qubits: h.n_qubits(),
        s: scan.points.iter().map(|p| p.s).collect(),
        e0: scan.points.iter().map(|p| p.e0).collect(),
        e1: scan.points.iter().map(|p| p.e1).collect(),
        gap: scan.points.iter().map(|p| p.gap).collect(),
        s_min: scan.s_min,
        gap_min: scan.gap_min,
    })
}

/// Exact closed-form crossing condition for the two-block family:
/// `k > 2(r + l) / (r(r-2) + l(l-2))`, evaluated in integer arithmetic.
/// Returns the inequality report plus the instance size, so the page can
/// show which parameter choices produce a crossing without any enumeration.
#[wasm_bindgen]
pub fn block_inequality(r: u32, l: u32, k: u32) -> String {
    let p = GrkParams {
        r: r as usize,
        l: l as usize,
        k: k as usize,
    };
    let report = grk_ac_inequality(&p);
    ok_json(&serde_json::json!({
        "r": p.r,
        "l": p.l,
        "k": p.k,
        "n_nodes": p.n_nodes(),
        "report": report,
    }))
}
