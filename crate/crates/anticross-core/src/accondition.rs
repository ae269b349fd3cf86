//! The analytic anti-crossing condition.
//!
//! First-order perturbation theory attaches an affine-in-`s` energy line to
//! three families of trial states: the delocalized uniform superposition
//! (`deloc`), the state concentrated on the classical optimum (`glob`), and
//! the state spread over the major component of the first-excited-level graph
//! `G_loc` (`loc`). Where the `loc` line dives below the `glob` line — at
//! `s_lg = lambda_0 / (delta_H1 + lambda_0)` — the instantaneous ground state
//! must swap character, and does so through an avoided crossing with an
//! exponentially small gap *provided the `loc` state localizes first*, i.e.
//! provided `lambda_0(loc) > n * alpha_T` with
//! `alpha_T = delta_H1 / (<H1>_0 - E_gs)`. When `lambda_0(loc) < n * alpha_T`
//! no such crossing occurs. The borderline case is genuinely undecided at
//! this order and is reported as such rather than guessed.
//!
//! Because `lambda_0` is squeezed between the average and maximum degree of
//! the major component, replacing it by either degree yields a checkable
//! corollary with *exact rational* arithmetic on both sides:
//! `deg_avg(loc) > n*alpha_T` certifies the crossing (inside
//! `[s_lg_plus, s_lg_minus]`), `deg_max(loc) < n*alpha_T` rules it out, and
//! anything in between is undecided. Family-defining boundary instances sit
//! exactly on these rational dividing lines, which is why no float comparison
//! is allowed to make the call.

use serde::{Deserialize, Serialize};

use crate::graphs::GrkParams;
use crate::locgraph::LocGraph;
use crate::maxcut::{CostModel, SpectrumStats};
use crate::rational::{rat_to_f64, Rat, RatRepr};
use crate::Result;

/// Half-width of the relative guard band around `n * alpha_T` inside which a
/// floating-point `lambda_0` is treated as sitting on the boundary.
pub const THEOREM_GUARD_BAND: f64 = 1e-8;

// ---------------------------------------------------------------------------
// Energy lines
// ---------------------------------------------------------------------------

/// The perturbative energy lines as affine functions of `s` on `[0, 1]`.
#[derive(Debug, Clone, Copy)]
pub struct EnergyLines {
    /// Hypercube dimension entering the delocalized line (the free-qubit
    /// count: the transverse term acts only on free qubits).
    pub n_deloc: usize,
    /// Mean classical cost `<H1>_0`.
    pub mean_h1: Rat,
    /// Classical optimum cost.
    pub e_gs: i64,
    /// First excited classical cost.
    pub e_fs: i64,
    /// Top adjacency eigenvalue of the major `G_loc` component.
    pub lambda0: f64,
    /// Average degree of the major `G_loc` component.
    pub deg_avg_loc: Rat,
    /// Maximum degree of the major `G_loc` component.
    pub deg_max_loc: usize,
}

impl EnergyLines {
    /// Assembles the lines from spectrum statistics and the excited-level
    /// graph.
    pub fn new(stats: &SpectrumStats, loc: &LocGraph) -> Self {
        let major = loc.major();
        Self {
            n_deloc: stats.n_qubits,
            mean_h1: stats.mean_h1,
            e_gs: stats.e_gs,
            e_fs: stats.e_fs,
            lambda0: loc.lambda0,
            deg_avg_loc: major.deg_avg,
            deg_max_loc: major.deg_max,
        }
    }

    /// Delocalized line `-(1-s) * n_deloc + s * <H1>_0`.
    pub fn e_deloc(&self, s: f64) -> f64 {
        -(1.0 - s) * self.n_deloc as f64 + s * rat_to_f64(self.mean_h1)
    }

    /// Optimum line `s * E_gs`.
    pub fn e_glob(&self, s: f64) -> f64 {
        s * self.e_gs as f64
    }

    /// Excited-level line `s * E_fs - (1-s) * lambda_0`.
    pub fn e_loc(&self, s: f64) -> f64 {
        s * self.e_fs as f64 - (1.0 - s) * self.lambda0
    }

    /// Upper bound on the `loc` line, with `deg_avg <= lambda_0` substituted.
    pub fn e_loc_plus(&self, s: f64) -> f64 {
        s * self.e_fs as f64 - (1.0 - s) * rat_to_f64(self.deg_avg_loc)
    }

    /// Lower bound on the `loc` line, with `deg_max >= lambda_0` substituted.
    pub fn e_loc_minus(&self, s: f64) -> f64 {
        s * self.e_fs as f64 - (1.0 - s) * self.deg_max_loc as f64
    }
}

// ---------------------------------------------------------------------------
// Crossing times
// ---------------------------------------------------------------------------

/// Intersection points of the energy lines, each `None` when the defining
/// denominator vanishes (parallel lines). Values are reported as computed —
/// never clamped into `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossingTimes {
    /// `deloc`/`glob` intersection `n / (n + <H1>_0 - E_gs)`.
    pub s_dg: Option<f64>,
    /// `deloc`/`loc` intersection
    /// `(n - lambda_0) / (n - lambda_0 + <H1>_0 - E_fs)`.
    pub s_dl: Option<f64>,
    /// `loc`/`glob` intersection `lambda_0 / (delta_H1 + lambda_0)`.
    pub s_lg: Option<f64>,
    /// Left end of the certified crossing window,
    /// `deg_avg / (delta_H1 + deg_avg)`.
    pub s_lg_plus: Option<f64>,
    /// Right end of the certified crossing window,
    /// `deg_max / (delta_H1 + deg_max)`.
    pub s_lg_minus: Option<f64>,
}

fn finite_ratio(num: f64, den: f64) -> Option<f64> {
    let s = num / den;
    s.is_finite().then_some(s)
}

/// Computes all line intersections.
pub fn crossing_times(lines: &EnergyLines) -> CrossingTimes {
    let n = lines.n_deloc as f64;
    let mean = rat_to_f64(lines.mean_h1);
    let delta = (lines.e_fs - lines.e_gs) as f64;
    let deg_avg = rat_to_f64(lines.deg_avg_loc);
    let deg_max = lines.deg_max_loc as f64;
    CrossingTimes {
        s_dg: finite_ratio(n, n + mean - lines.e_gs as f64),
        s_dl: finite_ratio(
            n - lines.lambda0,
            n - lines.lambda0 + mean - lines.e_fs as f64,
        ),
        s_lg: finite_ratio(lines.lambda0, delta + lines.lambda0),
        s_lg_plus: finite_ratio(deg_avg, delta + deg_avg),
        s_lg_minus: finite_ratio(deg_max, delta + deg_max),
    }
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

/// Anti-crossing regime at first perturbative order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// An avoided crossing with exponentially small gap occurs at `s_lg`.
    #[serde(rename = "AC")]
    Ac,
    /// No such crossing occurs; the gap stays polynomially open.
    #[serde(rename = "NO_AC")]
    NoAc,
    /// The strict inequality is not resolved (boundary or undecided band).
    #[serde(rename = "UNDEFINED")]
    Undefined,
}

/// The regime call under one choice of `n` (node count or free-qubit count).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConventionVerdict {
    /// The `n` used in `n * alpha_T`.
    pub n: usize,
    /// Exact threshold `n * alpha_T`.
    pub n_alpha_t: RatRepr,
    /// Spectral call: `lambda_0` against the threshold, strict, with a
    /// floating-point guard band.
    pub theorem: Regime,
    /// Degree-based call: `deg_avg`/`deg_max` of the major component against
    /// the threshold, in exact rational arithmetic.
    pub corollary: Regime,
    /// `lambda_0` landed inside the guard band around the threshold.
    pub theorem_within_guard: bool,
    /// A degree bound equals the threshold exactly.
    pub corollary_boundary_equality: bool,
}

/// Hypothesis and degeneracy diagnostics accompanying a verdict.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcFlags {
    /// The classical optimum is degenerate; the perturbative setup assumes a
    /// unique optimum, so the primary verdict is a hypothesis failure.
    pub gs_degenerate: bool,
    /// The first excited level holds a single configuration; the crossing
    /// mechanism needs a degenerate excited level, so the primary verdict is
    /// a hypothesis failure.
    pub fs_nondegenerate: bool,
    /// Two `G_loc` components tie for the top eigenvalue.
    pub major_component_tie: bool,
    /// Every member of the excited level is an isolated hypercube vertex
    /// (`lambda_0 = 0`).
    pub isolated_only_loc: bool,
    /// Some comparison landed exactly on (or within the guard band of) the
    /// threshold.
    pub boundary_equality: bool,
}

/// Full classification result.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AcVerdict {
    /// Primary call: the spectral comparison under the node-count convention,
    /// demoted to `NO_AC` on hypothesis failure.
    pub regime: Regime,
    /// True when the primary call is `NO_AC` only because a hypothesis failed
    /// (degenerate optimum or non-degenerate excited level).
    pub hypothesis_failure: bool,
    /// Verdicts with `n` = graph node count (the convention used by the
    /// worked families; their thresholds come out as exact rationals of the
    /// node count).
    pub node_count: ConventionVerdict,
    /// Verdicts with `n` = free-qubit count.
    pub qubit_count: ConventionVerdict,
    /// Top `G_loc` eigenvalue entering the spectral comparison.
    pub lambda0: f64,
    /// Exact `alpha_T = delta_H1 / (<H1>_0 - E_gs)`.
    pub alpha_t: RatRepr,
    /// Exact average degree of the major component.
    pub deg_avg_loc: RatRepr,
    /// Maximum degree of the major component.
    pub deg_max_loc: usize,
    /// Classical gap `E_fs - E_gs`.
    pub delta_h1: i64,
    /// All line intersections.
    pub crossings: CrossingTimes,
    /// Diagnostics.
    pub flags: AcFlags,
}

fn convention_verdict(
    n: usize,
    alpha_t: Rat,
    lambda0: f64,
    deg_avg: Rat,
    deg_max: usize,
) -> ConventionVerdict {
    let n_alpha_t = Rat::new(n as i64, 1) * alpha_t;
    let threshold = rat_to_f64(n_alpha_t);
    let guard = THEOREM_GUARD_BAND * threshold.abs().max(1.0);
    let theorem_within_guard = (lambda0 - threshold).abs() < guard;
    let theorem = if theorem_within_guard {
        Regime::Undefined
    } else if lambda0 > threshold {
        Regime::Ac
    } else {
        Regime::NoAc
    };

    let deg_max_rat = Rat::new(deg_max as i64, 1);
    let corollary_boundary_equality = deg_avg == n_alpha_t || deg_max_rat == n_alpha_t;
    let corollary = if deg_avg > n_alpha_t {
        Regime::Ac
    } else if deg_max_rat < n_alpha_t {
        Regime::NoAc
    } else {
        Regime::Undefined
    };

    ConventionVerdict {
        n,
        n_alpha_t: n_alpha_t.into(),
        theorem,
        corollary,
        theorem_within_guard,
        corollary_boundary_equality,
    }
}

/// Classifies an instance from precomputed statistics and its excited-level
/// graph.
pub fn classify_from(stats: &SpectrumStats, loc: &LocGraph) -> AcVerdict {
    let major = loc.major();
    let alpha_t = stats.alpha_t();
    let node = convention_verdict(
        stats.n_nodes,
        alpha_t,
        loc.lambda0,
        major.deg_avg,
        major.deg_max,
    );
    let qubit = convention_verdict(
        stats.n_qubits,
        alpha_t,
        loc.lambda0,
        major.deg_avg,
        major.deg_max,
    );

    let gs_degenerate = stats.gs_degeneracy > 1;
    let fs_nondegenerate = stats.fs_degeneracy == 1;
    let hypothesis_failure = gs_degenerate || fs_nondegenerate;
    let flags = AcFlags {
        gs_degenerate,
        fs_nondegenerate,
        major_component_tie: !loc.major_unique,
        isolated_only_loc: loc.edges.is_empty(),
        boundary_equality: node.theorem_within_guard
            || node.corollary_boundary_equality
            || qubit.theorem_within_guard
            || qubit.corollary_boundary_equality,
    };
    let regime = if hypothesis_failure {
        Regime::NoAc
    } else {
        node.theorem
    };

    let lines = EnergyLines::new(stats, loc);
    AcVerdict {
        regime,
        hypothesis_failure,
        node_count: node,
        qubit_count: qubit,
        lambda0: loc.lambda0,
        alpha_t: alpha_t.into(),
        deg_avg_loc: major.deg_avg.into(),
        deg_max_loc: major.deg_max,
        delta_h1: stats.delta_h1,
        crossings: crossing_times(&lines),
        flags,
    }
}

/// Classifies a model end to end (enumerates the spectrum first).
pub fn classify(model: &CostModel) -> Result<AcVerdict> {
    let table = model.energies()?;
    let stats = model.spectrum_stats_from(&table)?;
    let loc = crate::locgraph::build_loc_graph_from(model, &table, &stats);
    Ok(classify_from(&stats, &loc))
}

// ---------------------------------------------------------------------------
// Closed form for the two-clique/two-path family
// ---------------------------------------------------------------------------

/// Exact evaluation of the family's crossing condition
/// `k > 2(r + l) / (r(r-2) + l(l-2))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrkAcReport {
    /// Left-hand side, the path length `k`.
    pub lhs: RatRepr,
    /// Right-hand side when defined; `None` when `r = l = 2` makes the
    /// denominator vanish (the condition is then unsatisfiable).
    pub rhs: Option<RatRepr>,
    /// Whether the strict inequality holds.
    pub holds: bool,
}

/// Evaluates the family's closed-form crossing condition in exact rational
/// arithmetic.
pub fn grk_ac_inequality(p: &GrkParams) -> GrkAcReport {
    let (r, l, k) = (p.r as i64, p.l as i64, p.k as i64);
    let denom = r * (r - 2) + l * (l - 2);
    let lhs = Rat::new(k, 1);
    if denom == 0 {
        return GrkAcReport {
            lhs: lhs.into(),
            rhs: None,
            holds: false,
        };
    }
    let rhs = Rat::new(2 * (r + l), denom);
    GrkAcReport {
        lhs: lhs.into(),
        rhs: Some(rhs.into()),
        holds: lhs > rhs,
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{
        generate_complete_bipartite, generate_cycle, generate_d4_ladder, generate_grk,
        parse_edge_list,
    };
    use crate::locgraph::build_loc_graph;
    use crate::rng::SplitMix64;

    fn verdict_of(g: crate::graphs::Graph, fixed: usize) -> AcVerdict {
        classify(&CostModel::new(g, fixed).unwrap()).unwrap()
    }

    fn lines_of(g: crate::graphs::Graph, fixed: usize) -> EnergyLines {
        let model = CostModel::new(g, fixed).unwrap();
        let stats = model.spectrum_stats().unwrap();
        let loc = build_loc_graph(&model).unwrap();
        EnergyLines::new(&stats, &loc)
    }

    #[test]
    fn single_edge_endpoints_and_hypothesis() {
        let g = parse_edge_list("0 1\n").unwrap();
        let lines = lines_of(g.clone(), 0);
        assert_eq!(lines.e_deloc(0.0), -1.0, "transverse ground at s=0");
        assert_eq!(lines.e_glob(1.0), -1.0, "optimum cost at s=1");
        assert_eq!(lines.e_loc(1.0), 0.0, "excited cost at s=1");
        let v = verdict_of(g, 0);
        assert_eq!(v.regime, Regime::NoAc);
        assert!(v.hypothesis_failure, "single excited configuration");
        assert!(v.flags.fs_nondegenerate);
        assert!(v.flags.isolated_only_loc);
        assert_eq!(v.crossings.s_lg, Some(0.0), "lambda_0 = 0");
        // deloc/glob crossing: 1 / (1 - 1/2 + 1) = 2/3.
        let s_dg = v.crossings.s_dg.unwrap();
        assert!((s_dg - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn six_cycle_is_no_ac_with_corollary_undecided() {
        let v = verdict_of(generate_cycle(6).unwrap(), 0);
        assert_eq!(
            v.node_count.n_alpha_t,
            RatRepr { num: 4, den: 1 },
            "6 * (2 / 3) = 4"
        );
        assert_eq!(v.regime, Regime::NoAc);
        assert!(!v.hypothesis_failure);
        assert_eq!(v.node_count.theorem, Regime::NoAc, "lambda_0 < 4 strictly");
        assert_eq!(
            v.node_count.corollary,
            Regime::Undefined,
            "deg_avg = 8/3 < 4 but deg_max = 4 = threshold"
        );
        assert!(
            v.node_count.corollary_boundary_equality,
            "deg_max sits exactly on the threshold"
        );
        assert!(!v.node_count.theorem_within_guard);
    }

    #[test]
    fn grk_333_is_ac_both_routes() {
        let v = verdict_of(generate_grk(&GrkParams { r: 3, l: 3, k: 3 }).unwrap(), 0);
        assert_eq!(v.regime, Regime::Ac);
        assert_eq!(v.node_count.theorem, Regime::Ac);
        assert_eq!(v.node_count.corollary, Regime::Ac);
        assert_eq!(
            v.node_count.n_alpha_t,
            RatRepr { num: 36, den: 13 },
            "18 * 2 / (26/2) with deg_avg(G) = 26/9"
        );
        assert_eq!(v.deg_avg_loc, RatRepr { num: 3, den: 1 }, "4k/(k+1) at k=3");
        // Certified window: deg_avg -> 3/5, deg_max -> 2/3.
        let plus = v.crossings.s_lg_plus.unwrap();
        let minus = v.crossings.s_lg_minus.unwrap();
        let s_lg = v.crossings.s_lg.unwrap();
        assert!((plus - 0.6).abs() < 1e-15);
        assert!((minus - 2.0 / 3.0).abs() < 1e-15);
        assert!(plus <= s_lg && s_lg <= minus);
        // A crossing call requires the loc line to localize before deloc
        // meets glob.
        let (s_dl, s_dg) = (v.crossings.s_dl.unwrap(), v.crossings.s_dg.unwrap());
        assert!(s_dl < s_dg, "s_dl={s_dl} s_dg={s_dg}");
    }

    #[test]
    fn grk_332_sits_exactly_on_the_corollary_boundary() {
        let v = verdict_of(generate_grk(&GrkParams { r: 3, l: 3, k: 2 }).unwrap(), 0);
        assert_eq!(v.node_count.n_alpha_t, RatRepr { num: 8, den: 3 });
        assert_eq!(v.deg_avg_loc, RatRepr { num: 8, den: 3 });
        assert_eq!(v.node_count.corollary, Regime::Undefined);
        assert!(v.node_count.corollary_boundary_equality);
        assert!(v.flags.boundary_equality);
        // The spectral route still resolves it: 2*sqrt(2) > 8/3 by a margin
        // far outside the guard band.
        assert_eq!(v.node_count.theorem, Regime::Ac);
        assert_eq!(v.regime, Regime::Ac);
    }

    #[test]
    fn d4_ladder_is_no_ac_with_boundary_corollary() {
        let g = generate_d4_ladder(1).unwrap();
        let n = g.n_nodes();
        let v = verdict_of(g, n - 1);
        assert_eq!(
            v.node_count.n_alpha_t,
            RatRepr { num: 4, den: 1 },
            "n * 4 / (|E|/2) = 4 for a 4-regular graph"
        );
        assert_eq!(v.regime, Regime::NoAc, "square chain keeps lambda_0 < 4");
        assert_eq!(v.node_count.theorem, Regime::NoAc);
        assert_eq!(v.node_count.corollary, Regime::Undefined);
        assert!(v.node_count.corollary_boundary_equality, "deg_max = 4");
    }

    #[test]
    fn regular_bipartite_degree_three_is_no_ac() {
        let v = verdict_of(generate_complete_bipartite(3, 3).unwrap(), 0);
        assert_eq!(v.regime, Regime::NoAc);
        assert!(
            v.flags.isolated_only_loc,
            "excited level has no internal edges"
        );
        assert_eq!(v.lambda0, 0.0);
    }

    #[test]
    fn loc_line_stays_between_its_bounds() {
        let lines = lines_of(generate_grk(&GrkParams { r: 3, l: 3, k: 2 }).unwrap(), 0);
        let mut rng = SplitMix64::new(7);
        for _ in 0..1000 {
            let s = rng.next_f64();
            let (lo, mid, hi) = (lines.e_loc_minus(s), lines.e_loc(s), lines.e_loc_plus(s));
            assert!(
                lo <= mid + 1e-12 && mid <= hi + 1e-12,
                "bound order violated at s={s}: {lo} {mid} {hi}"
            );
        }
    }

    #[test]
    fn crossing_times_satisfy_their_line_equalities() {
        for (g, fixed) in [
            (generate_cycle(6).unwrap(), 0),
            (generate_grk(&GrkParams { r: 3, l: 3, k: 3 }).unwrap(), 0),
            (generate_grk(&GrkParams { r: 4, l: 3, k: 2 }).unwrap(), 0),
        ] {
            let lines = lines_of(g, fixed);
            let times = crossing_times(&lines);
            if let Some(s) = times.s_dg {
                assert!((lines.e_deloc(s) - lines.e_glob(s)).abs() < 1e-12, "s_dg");
            }
            if let Some(s) = times.s_dl {
                assert!((lines.e_deloc(s) - lines.e_loc(s)).abs() < 1e-12, "s_dl");
            }
            if let Some(s) = times.s_lg {
                assert!((lines.e_loc(s) - lines.e_glob(s)).abs() < 1e-12, "s_lg");
            }
            if let Some(s) = times.s_lg_plus {
                assert!(
                    (lines.e_loc_plus(s) - lines.e_glob(s)).abs() < 1e-12,
                    "s_lg_plus"
                );
            }
            if let Some(s) = times.s_lg_minus {
                assert!(
                    (lines.e_loc_minus(s) - lines.e_glob(s)).abs() < 1e-12,
                    "s_lg_minus"
                );
            }
        }
    }

    #[test]
    fn family_inequality_table() {
        let report = |r, l, k| grk_ac_inequality(&GrkParams { r, l, k });
        assert!(
            report(3, 3, 3).holds,
            "smallest symmetric crossing instance"
        );
        assert!(!report(3, 3, 2).holds, "k equals the bound, not above it");
        assert!(report(4, 3, 2).holds);
        assert_eq!(
            report(4, 3, 2).rhs,
            Some(RatRepr { num: 14, den: 11 }),
            "2*7 / (8 + 3)"
        );
        let degenerate = report(2, 2, 5);
        assert!(!degenerate.holds, "r = l = 2 can never cross");
        assert_eq!(degenerate.rhs, None);
    }

    #[test]
    fn family_inequality_agrees_with_corollary_classification() {
        let mut cases = Vec::new();
        for r in 2usize..=3 {
            for l in 2usize..=r {
                for k in 1usize..=3 {
                    cases.push(GrkParams { r, l, k });
                }
            }
        }
        cases.push(GrkParams { r: 4, l: 3, k: 2 });
        cases.push(GrkParams { r: 4, l: 4, k: 2 });
        for p in cases {
            let closed_form = grk_ac_inequality(&p);
            let v = verdict_of(generate_grk(&p).unwrap(), 0);
            assert_eq!(
                closed_form.holds,
                v.node_count.corollary == Regime::Ac,
                "closed form vs degree-based classification at r={} l={} k={}",
                p.r,
                p.l,
                p.k
            );
        }
    }

    #[test]
    fn verdict_serializes_with_exact_rationals_and_flags() {
        let v = verdict_of(generate_grk(&GrkParams { r: 3, l: 3, k: 2 }).unwrap(), 0);
        let json = serde_json::to_string(&v).unwrap();
        assert!(json.contains("\"regime\":\"AC\""));
        assert!(json.contains("\"num\":8"), "exact 8/3 threshold present");
        assert!(json.contains("boundary_equality"));
        assert!(json.contains("s_lg"));
        let back: AcVerdict = serde_json::from_str(&json).unwrap();
        assert_eq!(back.node_count, v.node_count);
        assert_eq!(back.regime, Regime::Ac);
    }
}
