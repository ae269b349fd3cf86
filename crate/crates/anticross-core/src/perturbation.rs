//! Second-order perturbation terms of the three expansions behind the
//! crossing-time picture, and their ratios to the leading terms.
//!
//! Each first-order energy line (delocalized, globally optimal, locally
//! optimal) is only trustworthy while the next order stays small. This module
//! computes those next-order terms:
//!
//! - the *delocalized* expansion around the uniform transverse-field ground
//!   state, where the second-order term has the exact closed form
//!   `-|E|/16` (each graph edge is one degree-2 Walsh mode of the cost, and
//!   contributes `(1/2)² / (-4)`), giving the universal ratio `1/8`;
//! - the *ground* expansion around the classical optimum, an exact
//!   enumeration over the optimum's single-flip neighbors;
//! - the *local* expansion around the first excited level, where mixing with
//!   outside configurations is only bounded — via the level's edge-boundary
//!   conductance and the smallest cost detuning across that boundary.
//!
//! Everything here is exact rational arithmetic except the final comparison
//! against the irrational level width `lambda0`.

use serde::{Deserialize, Serialize};

use crate::locgraph::LocGraph;
use crate::maxcut::CostModel;
use crate::rational::{rat_abs, rat_to_f64, Rat, RatRepr};
use crate::{Error, Result};

/// Node-count cap for the independent Walsh-basis enumeration route (it
/// walks all `2^n` unpinned configurations per basis mode).
pub const DELOC_ENUM_MAX_NODES: usize = 20;

/// Index into the transverse-field eigenbasis: the Walsh mode `chi_b` with
/// sign pattern `(-1)^(b . x)` is an `H0` eigenvector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HammingBasisIndex {
    /// Mode bitstring `b` over the `n` spins.
    pub bits: u64,
    /// Spin count of the ambient cube.
    pub n: usize,
}

impl HammingBasisIndex {
    /// `H0` eigenvalue `-n + 2|b|`: each set bit turns one qubit from the
    /// `+x` to the `-x` state.
    pub fn eigenvalue(&self) -> i64 {
        -(self.n as i64) + 2 * self.bits.count_ones() as i64
    }
}

/// Second-order health of all three expansions, attached to every analysis
/// verdict. The first-order picture is trusted only while every available
/// ratio stays below one.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidityReport {
    /// Second-order term of the delocalized expansion, `-|E|/16`.
    pub deloc_e2: RatRepr,
    /// `|E0_2| / |E0_1|`; exactly `1/8` whenever the graph has edges.
    pub deloc_ratio: RatRepr,
    /// Second-order term of the ground expansion (exact neighbor sum).
    pub gs_e2: RatRepr,
    /// `|Egs_2| / |Egs_0|`.
    pub gs_ratio: RatRepr,
    /// Conductance bound on the second-order term of the local expansion.
    pub loc_e2_bound: RatRepr,
    /// Bound divided by the first-order width `lambda0`; `None` when the
    /// level graph has no edges (`lambda0 = 0`), where the comparison is
    /// meaningless rather than failed.
    pub loc_ratio_bound: Option<f64>,
    /// All available ratios below one.
    pub valid: bool,
}

/// Closed-form second-order term of the delocalized expansion and its ratio
/// to the first-order term `<H1>_0 = -|E|/2`.
///
/// Works in the unpinned picture (all `n` nodes are spins), where the cost
/// has no linear Walsh modes and the closed form is exact for any graph.
pub fn deloc_second_order(model: &CostModel) -> (Rat, Rat) {
    let m = model.graph().n_edges() as i64;
    let e2 = Rat::new(-m, 16);
    if m == 0 {
        return (e2, Rat::from_integer(0));
    }
    let first = Rat::new(-m, 2);
    (e2, rat_abs(e2 / first))
}

/// Independent enumeration route to the delocalized second-order term: sums
/// `|<E_b|H1|E_0>|² / (E_0 - E_b)` over all Walsh modes of weight one and
/// two, with every inner product evaluated by brute force over the `2^n`
/// unpinned configurations. Exact rational arithmetic throughout, so
/// agreement with [`deloc_second_order`] can be asserted with zero tolerance.
pub fn deloc_second_order_enumerated(model: &CostModel) -> Result<Rat> {
    let graph = model.graph();
    let n = graph.n_nodes();
    if n > DELOC_ENUM_MAX_NODES {
        return Err(Error::InvalidParameter(format!(
            "Walsh enumeration over {n} nodes exceeds the {DELOC_ENUM_MAX_NODES}-node cap"
        )));
    }
    let dim = 1usize << n;
    let mut energy = vec![0i64; dim];
    for (u, v) in graph.edges() {
        let (u, v) = (*u as usize, *v as usize);
        for (x, e) in energy.iter_mut().enumerate() {
            *e -= ((x >> u) ^ (x >> v)) as i64 & 1;
        }
    }

    let two_pow_n = 1i64 << n;
    let mut sum = Rat::from_integer(0);
    let mut modes: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            modes.push((1u64 << i) | (1u64 << j));
        }
    }
    for bits in modes {
        let mode = HammingBasisIndex { bits, n };
        // <E_b|H1|E_0> = 2^-n sum_x (-1)^(b.x) E_x, an integer over 2^n.
        let m_b: i64 = energy
            .iter()
            .enumerate()
            .map(|(x, &e)| {
                if (bits & x as u64).count_ones().is_multiple_of(2) {
                    e
                } else {
                    -e
                }
            })
            .sum();
        if m_b == 0 {
            continue;
        }
        let amplitude = Rat::new(m_b, two_pow_n);
        let e0 = -(n as i64);
        let denom = e0 - mode.eigenvalue(); // = -2|b|, strictly negative
        sum += amplitude * amplitude / Rat::from_integer(denom);
    }
    Ok(sum)
}

/// Exact second-order term of the ground expansion: the optimum's `n_qubits`
/// single-flip neighbors, each weighted by the inverse cost increase. The
/// ratio compares against `|E_gs|`.
pub fn gs_second_order(model: &CostModel) -> Result<(Rat, Rat)> {
    let table = model.energies()?;
    let stats = model.spectrum_stats_from(&table)?;
    if stats.gs_degeneracy > 1 {
        return Err(Error::DegenerateGround {
            degeneracy: stats.gs_degeneracy,
        });
    }
    let gc = stats.ground_config;
    let mut e2 = Rat::from_integer(0);
    for j in 0..stats.n_qubits {
        let neighbor = (gc ^ (1u64 << j)) as usize;
        // E_gs - E_x < 0 for every neighbor of a unique optimum.
        e2 += Rat::new(1, stats.e_gs - table[neighbor] as i64);
    }
    let ratio = rat_abs(e2) / rat_abs(Rat::from_integer(stats.e_gs));
    Ok((e2, ratio))
}

/// Conductance bound on the second-order term of the local expansion:
/// `|E_fs_2| <= phi(loc) / min |E_fs - E_outside|`. Returns the bound and its
/// ratio to the first-order width `lambda0` (or `None` when the level graph
/// has no edges and there is no width to compare against).
pub fn loc_second_order_bound(loc: &LocGraph) -> (Rat, Option<f64>) {
    let bound = loc.conductance() / Rat::from_integer(loc.min_outside_gap);
    let ratio = if loc.lambda0 > 0.0 {
        Some(rat_to_f64(bound) / loc.lambda0)
    } else {
        None
    };
    (bound, ratio)
}

/// Assembles the full second-order health report for one instance.
pub fn validity_report(model: &CostModel, loc: &LocGraph) -> Result<ValidityReport> {
    let (deloc_e2, deloc_ratio) = deloc_second_order(model);
    let (gs_e2, gs_ratio) = gs_second_order(model)?;
    let (loc_e2_bound, loc_ratio_bound) = loc_second_order_bound(loc);
    let one = Rat::from_integer(1);
    let valid = deloc_ratio < one && gs_ratio < one && loc_ratio_bound.is_none_or(|r| r < 1.0);
    Ok(ValidityReport {
        deloc_e2: deloc_e2.into(),
        deloc_ratio: deloc_ratio.into(),
        gs_e2: gs_e2.into(),
        gs_ratio: gs_ratio.into(),
        loc_e2_bound: loc_e2_bound.into(),
        loc_ratio_bound,
        valid,
    })
}
