//! The local-minima graph `G_loc` and its spectral statistics.
//!
//! `Loc` is the set of configurations sitting exactly on the first excited
//! cost level. `G_loc` is the subgraph induced on `Loc` by the `n_qubits`-cube
//! (two members are adjacent when they differ in one bit, i.e. one node flip
//! turns one into the other without changing the cost). Its largest adjacency
//! eigenvalue `lambda_0` measures how freely amplitude can move inside the
//! excited level: at the anneal point `s_lg = lambda_0 / (delta_H1 + lambda_0)`
//! the level's dressed energy crosses the global-optimum line, and whether
//! that crossing is avoided (exponentially small gap) or suppressed depends on
//! `lambda_0` against `n * alpha_T`.
//!
//! For every component the classical Perron bounds hold:
//! `deg_avg <= lambda_0(component) <= deg_max`, with equality only for regular
//! components. The *major* component is the one attaining the overall
//! `lambda_0`; parametric families of interest concentrate their physics in it
//! (a `(k+1) x (k+1)` grid for the two-path family, a chain of corner-sharing
//! squares for the 4-regular ladder family).

use crate::maxcut::{CostModel, SpectrumStats};
use crate::rational::Rat;
use crate::rng::SplitMix64;
use crate::Result;

/// Components at least this large give up on dense diagonalization and use
/// power iteration instead.
pub const DENSE_EIGEN_LIMIT: usize = 64;

/// Power-iteration convergence tolerance on the top eigenvalue.
pub const POWER_ITER_TOL: f64 = 1e-10;

/// Power-iteration budget.
pub const POWER_ITER_MAX: usize = 100_000;

/// Two component eigenvalues within this distance count as a tie for the
/// major-component choice.
pub const MAJOR_TIE_TOL: f64 = 1e-8;

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

/// One connected component of `G_loc`.
#[derive(Debug, Clone)]
pub struct LocComponent {
    /// Indices into [`LocGraph::vertices`], ascending.
    pub members: Vec<u32>,
    /// Edges inside the component.
    pub n_edges: usize,
    /// Smallest degree within the component.
    pub deg_min: usize,
    /// Largest degree within the component.
    pub deg_max: usize,
    /// Exact average degree `2 E / V` within the component.
    pub deg_avg: Rat,
    /// Largest adjacency eigenvalue of the component.
    pub lambda0: f64,
    /// How many of the component's configurations sit one bit flip away from
    /// the classical optimum.
    pub gs_links: u64,
}

/// `G_loc` with per-component spectral statistics.
#[derive(Debug, Clone)]
pub struct LocGraph {
    /// Free-bit count of the ambient hypercube.
    pub n_qubits: usize,
    /// The members of `Loc`, ascending.
    pub vertices: Vec<u64>,
    /// Hypercube edges inside `Loc`, as index pairs into `vertices`.
    pub edges: Vec<(u32, u32)>,
    /// Connected components, in order of their smallest vertex index.
    pub components: Vec<LocComponent>,
    /// Index into `components` of the component attaining `lambda0`.
    /// Ties break toward more vertices, then lower index.
    pub major_index: usize,
    /// Whether the maximum eigenvalue is attained by a single component
    /// (within [`MAJOR_TIE_TOL`]).
    pub major_unique: bool,
    /// Largest adjacency eigenvalue over all components (0 when every member
    /// of `Loc` is isolated).
    pub lambda0: f64,
    /// Total one-bit-flip links between `Loc` and the classical optimum.
    pub gs_links_total: u64,
    /// Hypercube edges leaving `Loc` (to *any* outside configuration,
    /// including the optimum).
    pub boundary_size: u64,
    /// `min |E_fs - E_y|` over outside neighbors `y` of `Loc`; the smallest
    /// cost detuning reachable by a single flip out of the level.
    pub min_outside_gap: i64,
}

impl LocGraph {
    /// The component attaining `lambda0`.
    pub fn major(&self) -> &LocComponent {
        &self.components[self.major_index]
    }

    /// Exact edge-boundary conductance `phi = |boundary| / |Loc|`.
    ///
    /// An isolated single configuration in the `n_qubits`-cube has
    /// `phi = n_qubits`.
    pub fn conductance(&self) -> Rat {
        Rat::new(self.boundary_size as i64, self.vertices.len() as i64)
    }

    /// Degree statistics over all of `G_loc` (not just the major component).
    pub fn degree_stats_all(&self) -> (usize, Rat) {
        let mut deg = vec![0usize; self.vertices.len()];
        for &(a, b) in &self.edges {
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        let deg_max = deg.iter().copied().max().unwrap_or(0);
        (
            deg_max,
            Rat::new(2 * self.edges.len() as i64, self.vertices.len() as i64),
        )
    }
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

/// Builds `G_loc` by enumerating the model's spectrum first.
pub fn build_loc_graph(model: &CostModel) -> Result<LocGraph> {
    let table = model.energies()?;
    let stats = model.spectrum_stats_from(&table)?;
    Ok(build_loc_graph_from(model, &table, &stats))
}

/// Builds `G_loc` from a precomputed energy table and its statistics.
pub fn build_loc_graph_from(model: &CostModel, table: &[i32], stats: &SpectrumStats) -> LocGraph {
    let nq = model.n_qubits();
    let vertices = model.loc_set_from(table, stats.e_fs);
    let find = |y: u64| -> Option<u32> { vertices.binary_search(&y).ok().map(|i| i as u32) };

    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut boundary_size = 0u64;
    let mut min_outside_gap = i64::MAX;
    let mut gs_links_per_vertex = vec![false; vertices.len()];
    for (i, &x) in vertices.iter().enumerate() {
        for bit in 0..nq {
            let y = x ^ (1u64 << bit);
            if let Some(j) = find(y) {
                if y > x {
                    edges.push((i as u32, j));
                }
            } else {
                boundary_size += 1;
                let detune = (stats.e_fs - table[y as usize] as i64).abs();
                min_outside_gap = min_outside_gap.min(detune);
                if y == stats.ground_config {
                    gs_links_per_vertex[i] = true;
                }
            }
        }
    }

    // Connected components by BFS over the induced adjacency.
    let mut adj = vec![Vec::new(); vertices.len()];
    for &(a, b) in &edges {
        adj[a as usize].push(b);
        adj[b as usize].push(a);
    }
    let mut comp_of = vec![usize::MAX; vertices.len()];
    let mut members_list: Vec<Vec<u32>> = Vec::new();
    for start in 0..vertices.len() {
        if comp_of[start] != usize::MAX {
            continue;
        }
        let id = members_list.len();
        let mut members = vec![start as u32];
        comp_of[start] = id;
        let mut head = 0;
        while head < members.len() {
            let u = members[head] as usize;
            head += 1;
            for &v in &adj[u] {
                if comp_of[v as usize] == usize::MAX {
                    comp_of[v as usize] = id;
                    members.push(v);
                }
            }
        }
        members.sort_unstable();
        members_list.push(members);
    }

    let mut components: Vec<LocComponent> = members_list
        .into_iter()
        .map(|members| {
            let degs: Vec<usize> = members.iter().map(|&v| adj[v as usize].len()).collect();
            let n_edges = degs.iter().sum::<usize>() / 2;
            let lambda0 = component_lambda0(&members, &adj);
            let gs_links = members
                .iter()
                .filter(|&&v| gs_links_per_vertex[v as usize])
                .count() as u64;
            LocComponent {
                n_edges,
                deg_min: degs.iter().copied().min().unwrap_or(0),
                deg_max: degs.iter().copied().max().unwrap_or(0),
                deg_avg: Rat::new(2 * n_edges as i64, members.len() as i64),
                lambda0,
                gs_links,
                members,
            }
        })
        .collect();
    components.sort_by_key(|c| c.members[0]);

    // Major component: top eigenvalue, ties toward size then order.
    let mut major_index = 0usize;
    for (i, c) in components.iter().enumerate() {
        let best = &components[major_index];
        if c.lambda0 > best.lambda0 + MAJOR_TIE_TOL
            || ((c.lambda0 - best.lambda0).abs() <= MAJOR_TIE_TOL
                && c.members.len() > best.members.len())
        {
            major_index = i;
        }
    }
    let lambda0 = components[major_index].lambda0;
    let major_unique = components
        .iter()
        .enumerate()
        .filter(|&(i, c)| i != major_index && (c.lambda0 - lambda0).abs() <= MAJOR_TIE_TOL)
        .count()
        == 0;
    let gs_links_total = components.iter().map(|c| c.gs_links).sum();

    LocGraph {
        n_qubits: nq,
        vertices,
        edges,
        components,
        major_index,
        major_unique,
        lambda0,
        gs_links_total,
        boundary_size,
        min_outside_gap,
    }
}

/// Largest adjacency eigenvalue of one component: dense symmetric
/// diagonalization up to [`DENSE_EIGEN_LIMIT`] vertices, shifted power
/// iteration beyond.
fn component_lambda0(members: &[u32], adj: &[Vec<u32>]) -> f64 {
    let sz = members.len();
    if sz == 1 {
        return 0.0;
    }
    let local: std::collections::HashMap<u32, usize> =
        members.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    if sz <= DENSE_EIGEN_LIMIT {
        let mut m = nalgebra::DMatrix::<f64>::zeros(sz, sz);
        for (i, &v) in members.iter().enumerate() {
            for &w in &adj[v as usize] {
                m[(i, local[&w])] = 1.0;
            }
        }
        let eig = m.symmetric_eigen();
        return eig
            .eigenvalues
            .iter()
            .fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    }
    // Power iteration on A + I: hypercube subgraphs are bipartite, so the raw
    // adjacency has a matching -lambda_0 eigenvalue and plain power iteration
    // would oscillate; the unit shift breaks the symmetry while keeping the
    // Perron vector.
    let mut rng = SplitMix64::new(0x10c_a112);
    let mut v: Vec<f64> = (0..sz).map(|_| 0.5 + rng.next_f64()).collect();
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let n0 = norm(&v);
    v.iter_mut().for_each(|x| *x /= n0);
    let mut w = vec![0.0f64; sz];
    let mut last = f64::NEG_INFINITY;
    for _ in 0..POWER_ITER_MAX {
        for (i, &vi) in members.iter().enumerate() {
            let mut acc = v[i]; // the +I shift
            for &nb in &adj[vi as usize] {
                acc += v[local[&nb]];
            }
            w[i] = acc;
        }
        // Rayleigh quotient of A + I for the normalized iterate.
        let mu: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
        let nw = norm(&w);
        v.iter_mut().zip(&w).for_each(|(a, &b)| *a = b / nw);
        if (mu - last).abs() <= POWER_ITER_TOL * mu.abs().max(1.0) {
            return mu - 1.0;
        }
        last = mu;
    }
    last - 1.0
}

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

/// Serializes `G_loc` as an edge list over relabeled vertices `0..m`, plus a
/// sidecar mapping `index -> configuration bits` (bit 0 rightmost).
pub fn serialize_loc_graph(loc: &LocGraph) -> (String, String) {
    let mut edge_text = format!("# n={}\n", loc.vertices.len());
    for &(a, b) in &loc.edges {
        edge_text.push_str(&format!("{a} {b}\n"));
    }
    let mut map_text = String::new();
    for (i, &x) in loc.vertices.iter().enumerate() {
        map_text.push_str(&format!("{i} {x:0width$b}\n", width = loc.n_qubits));
    }
    (edge_text, map_text)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
