//! Problem graphs: construction, parsing, and structural statistics.
//!
//! MaxCut instances in this crate are simple undirected graphs. Bipartite
//! connected inputs are the analytically interesting ones (the optimal cut is
//! the bipartition, every edge is cut, and the optimum is unique once a node
//! is pinned), but the constructors below accept any simple graph and the
//! bipartite/connected facts are computed, not assumed.
//!
//! Two parametric families matter enough to get dedicated generators:
//!
//! - [`generate_grk`]: two complete bipartite blocks `K_{r,r}` and `K_{l,l}`
//!   joined by two disjoint k-node paths. The degree-2 path nodes create a
//!   frustrated first excited cost level whose flip dynamics form a
//!   `(k+1) x (k+1)` grid, the engine of the avoided-crossing regime.
//! - [`generate_d4_ladder`]: a 4-regular bipartite analogue — two `K_{4,3}`
//!   caps joined by a pair of rails with crossed braces, whose first excited
//!   level forms a chain of corner-sharing squares.

use crate::rational::Rat;
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Graph type
// ---------------------------------------------------------------------------

/// Simple undirected graph with nodes `0..n_nodes`.
///
/// Edges are stored canonically: each as `(min, max)`, the list sorted and
/// duplicate-free. Construction validates simplicity (no loops, no parallel
/// edges, endpoints in range).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n_nodes: usize,
    edges: Vec<(u32, u32)>,
    adjacency: Vec<Vec<u32>>,
}

impl Graph {
    /// Builds a graph from an edge list, canonicalizing edge order.
    pub fn new(n_nodes: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut canon: Vec<(u32, u32)> = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at node {u}")));
            }
            if u as usize >= n_nodes || v as usize >= n_nodes {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n_nodes}"
                )));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        let mut adjacency = vec![Vec::new(); n_nodes];
        for &(u, v) in &canon {
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            n_nodes,
            edges: canon,
            adjacency,
        })
    }

    /// Number of nodes.
    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    /// Number of edges.
    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Canonical sorted edge list.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Sorted neighbor list of `u`.
    pub fn neighbors(&self, u: usize) -> &[u32] {
        &self.adjacency[u]
    }

    /// Degree of `u`.
    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    /// Exact degree statistics.
    pub fn degree_stats(&self) -> DegreeStats {
        let degs = self.adjacency.iter().map(Vec::len);
        let deg_min = degs.clone().min().unwrap_or(0);
        let deg_max = degs.max().unwrap_or(0);
        DegreeStats {
            deg_min,
            deg_max,
            deg_avg: Rat::new(2 * self.edges.len() as i64, self.n_nodes.max(1) as i64),
        }
    }

    /// `Some(d)` when every node has degree `d`.
    pub fn regularity(&self) -> Option<usize> {
        let stats = self.degree_stats();
        (stats.deg_min == stats.deg_max).then_some(stats.deg_min)
    }

    /// Connectivity and 2-colorability in one BFS sweep.
    pub fn bipartition(&self) -> Bipartition {
        let n = self.n_nodes;
        if n == 0 {
            return Bipartition {
                connected: true,
                bipartite: true,
                side: Some(Vec::new()),
            };
        }
        let mut side = vec![u8::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        let mut bipartite = true;
        let mut n_components = 0usize;
        for start in 0..n {
            if side[start] != u8::MAX {
                continue;
            }
            n_components += 1;
            side[start] = 0;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adjacency[u] {
                    let v = v as usize;
                    if side[v] == u8::MAX {
                        side[v] = side[u] ^ 1;
                        queue.push_back(v);
                    } else if side[v] == side[u] {
                        bipartite = false;
                    }
                }
            }
        }
        Bipartition {
            connected: n_components <= 1,
            bipartite,
            side: bipartite.then_some(side),
        }
    }
}

/// Degree summary; the average is exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeStats {
    pub deg_min: usize,
    pub deg_max: usize,
    pub deg_avg: Rat,
}

/// Result of the 2-coloring sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub connected: bool,
    pub bipartite: bool,
    /// Side (0/1) per node when the graph is bipartite; side 0 contains node 0
    /// of each component as visited in node order.
    pub side: Option<Vec<u8>>,
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// Even cycle `C_n`, nodes `0..n`, edges `(i, i+1 mod n)`.
///
/// Odd cycles are rejected: they are not bipartite, so the optimal cut leaves
/// an edge uncut and the pinned optimum is degenerate.
pub fn generate_cycle(n: usize) -> Result<Graph> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "cycle length must be even and at least 4, got {n}"
        )));
    }
    Graph::new(n, (0..n).map(|i| (i as u32, ((i + 1) % n) as u32)))
}

/// Complete bipartite graph `K_{a,b}`: left side `0..a`, right side `a..a+b`.
pub fn generate_complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a < 1 || b < 1 {
        return Err(Error::InvalidParameter(format!(
            "complete bipartite sides must be at least 1, got ({a}, {b})"
        )));
    }
    let mut edges = Vec::with_capacity(a * b);
    for u in 0..a {
        for v in 0..b {
            edges.push((u as u32, (a + v) as u32));
        }
    }
    Graph::new(a + b, edges)
}

/// Parameters for the two-block, two-path family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrkParams {
    /// Side size of the first block `K_{r,r}`.
    pub r: usize,
    /// Side size of the second block `K_{l,l}`.
    pub l: usize,
    /// Interior node count of each connecting path.
    pub k: usize,
}

/// Node layout of a generated `G_{r,l,k}` instance (see [`generate_grk`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrkLayout {
    /// First node of `K_{r,r}`'s left side (the side without attachments).
    pub krr_left: usize,
    /// First node of `K_{r,r}`'s right side (paths attach at its first two).
    pub krr_right: usize,
    /// First node of `K_{l,l}`'s left side (paths attach at its first two).
    pub kll_left: usize,
    /// First node of `K_{l,l}`'s right side (always 0; no attachments).
    pub kll_right: usize,
    /// First interior node of path 1.
    pub path1: usize,
    /// First interior node of path 2.
    pub path2: usize,
}

impl GrkParams {
    /// Total node count `2r + 2l + 2k`.
    pub fn n_nodes(&self) -> usize {
        2 * self.r + 2 * self.l + 2 * self.k
    }

    /// Node-index layout used by [`generate_grk`].
    pub fn layout(&self) -> GrkLayout {
        let (r, l, k) = (self.r, self.l, self.k);
        GrkLayout {
            kll_right: 0,
            kll_left: l,
            krr_left: 2 * l,
            krr_right: 2 * l + r,
            path1: 2 * l + 2 * r,
            path2: 2 * l + 2 * r + k,
        }
    }
}

/// `G_{r,l,k}`: blocks `K_{r,r}` and `K_{l,l}` joined by two disjoint paths of
/// `k` interior nodes each.
///
/// Node order: `K_{l,l}` (attachment-free right side first, then left side),
/// `K_{r,r}` (left then right), path 1 interior nodes, path 2 interior nodes.
/// Path 1 runs from node `2l+r` (first node of `K_{r,r}`'s right side) to
/// node `l` (first node of `K_{l,l}`'s left side); path 2 runs from node
/// `2l+r+1` to node `l+1`, i.e. distinct endpoints on the same sides. Both
/// attachment nodes of each block then have degree `r+1` (resp. `l+1`) while
/// path interiors keep degree 2. The result is connected and bipartite for
/// every valid `(r, l, k)`.
///
/// Node 0 is deliberately a plain (attachment-free) node of the `K_{l,l}`
/// block: with the default symmetry pin on node 0, realigning the `K_{l,l}`
/// block is blocked, so escaping the misaligned-`K_{r,r}` local minimum costs
/// a tunneling distance of all `2r` block nodes. That distance, and with it
/// the depth of the avoided crossing, grows with `r` while the local-minimum
/// band itself depends only on `k` — pin anywhere else and the `r`-scaling of
/// the minimum gap disappears.
pub fn generate_grk(params: &GrkParams) -> Result<Graph> {
    let GrkParams { r, l, k } = *params;
    if r < 2 || l < 2 {
        return Err(Error::InvalidParameter(format!(
            "block sides must be at least 2 (two attachment nodes per side), got r={r} l={l}"
        )));
    }
    if k < 1 {
        return Err(Error::InvalidParameter(
            "paths need at least one interior node (k >= 1)".into(),
        ));
    }
    let lay = params.layout();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for i in 0..r {
        for j in 0..r {
            edges.push(((lay.krr_left + i) as u32, (lay.krr_right + j) as u32));
        }
    }
    for i in 0..l {
        for j in 0..l {
            edges.push(((lay.kll_left + i) as u32, (lay.kll_right + j) as u32));
        }
    }
    // Two disjoint paths, each: attachment -> k interior nodes -> attachment.
    for (path_base, from, to) in [
        (lay.path1, lay.krr_right, lay.kll_left),
        (lay.path2, lay.krr_right + 1, lay.kll_left + 1),
    ] {
        edges.push((from as u32, path_base as u32));
        for i in 0..k - 1 {
            edges.push(((path_base + i) as u32, (path_base + i + 1) as u32));
        }
        edges.push(((path_base + k - 1) as u32, to as u32));
    }
    Graph::new(params.n_nodes(), edges)
}

/// 4-regular bipartite family whose first excited cost level forms a chain of
/// `k+1` corner-sharing squares.
///
/// Construction: two rails `a_1..a_{k+1}`, `b_1..b_{k+1}` with rail edges
/// `a_i a_{i+1}`, `b_i b_{i+1}` and crossed braces `a_i b_{i+1}`, `b_i a_{i+1}`,
/// capped at both ends by a `K_{4,3}` block. Each cap's four degree-3 nodes
/// spend their spare edge on the adjacent rail ends (two on `a`, two on `b`),
/// which makes every node degree 4 while keeping the graph bipartite and
/// connected. Flipping a cap plus a rail prefix always leaves exactly four
/// edges uncut, and the two domain walls can advance independently by one
/// step — hence the square-chain structure on the first excited level.
///
/// Node order: near cap (4-node side, then 3-node side), rails interleaved
/// `a_1, b_1, a_2, b_2, ...`, far cap (4-node side, then 3-node side).
/// Total: `2k + 16` nodes, `4k + 32` edges.
pub fn generate_d4_ladder(k: usize) -> Result<Graph> {
    let m = k + 1; // rail length in node pairs
    let n = 14 + 2 * m;
    let near_x = 0usize; // 4 nodes, degree 3 inside the cap
    let near_y = 4usize; // 3 nodes, degree 4 inside the cap
    let rail = 7usize; // a_i = rail + 2(i-1), b_i = rail + 2(i-1) + 1
    let far_x = 7 + 2 * m;
    let far_y = far_x + 4;
    let a = |i: usize| (rail + 2 * (i - 1)) as u32;
    let b = |i: usize| (rail + 2 * (i - 1) + 1) as u32;

    let mut edges: Vec<(u32, u32)> = Vec::new();
    for (x0, y0) in [(near_x, near_y), (far_x, far_y)] {
        for i in 0..4 {
            for j in 0..3 {
                edges.push(((x0 + i) as u32, (y0 + j) as u32));
            }
        }
    }
    // Cap ports: two spare edges to each adjacent rail end.
    edges.push((near_x as u32, a(1)));
    edges.push(((near_x + 1) as u32, a(1)));
    edges.push(((near_x + 2) as u32, b(1)));
    edges.push(((near_x + 3) as u32, b(1)));
    edges.push((far_x as u32, a(m)));
    edges.push(((far_x + 1) as u32, a(m)));
    edges.push(((far_x + 2) as u32, b(m)));
    edges.push(((far_x + 3) as u32, b(m)));
    // Rails and crossed braces.
    for i in 1..m {
        edges.push((a(i), a(i + 1)));
        edges.push((b(i), b(i + 1)));
        edges.push((a(i), b(i + 1)));
        edges.push((b(i), a(i + 1)));
    }
    Graph::new(n, edges)
}

// ---------------------------------------------------------------------------
// Edge-list text format
// ---------------------------------------------------------------------------

/// Parses the plain edge-list format.
///
/// Format: one `u v` pair per line (0-indexed, whitespace-separated), `#`
/// starts a comment, blank lines are ignored. An optional header comment
/// `# n=<N>` pins the node count; without it the node count is inferred as
/// `1 + max(endpoint)`. Errors carry 1-based line numbers.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared_n: Option<usize> = None;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut max_endpoint: u32 = 0;
    let mut seen_edge = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('#') {
            // Header form "# n=<N>" (first occurrence wins).
            let c = comment.trim();
            if declared_n.is_none() {
                if let Some(rest) = c.strip_prefix("n") {
                    let rest = rest.trim_start();
                    if let Some(num) = rest.strip_prefix('=') {
                        let num = num.trim();
                        declared_n = Some(num.parse::<usize>().map_err(|_| Error::Parse {
                            line: line_no,
                            msg: format!("bad node count in header: {num:?}"),
                        })?);
                    }
                }
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (u, v) = match (parts.next(), parts.next(), parts.next()) {
            (Some(u), Some(v), None) => (u, v),
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected two endpoints, got {line:?}"),
                })
            }
        };
        let parse_endpoint = |tok: &str| -> Result<u32> {
            tok.parse::<u32>().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("bad node index {tok:?}"),
            })
        };
        let (u, v) = (parse_endpoint(u)?, parse_endpoint(v)?);
        if u == v {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("self-loop at node {u}"),
            });
        }
        if let Some(n) = declared_n {
            if u as usize >= n || v as usize >= n {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("edge ({u}, {v}) outside declared n={n}"),
                });
            }
        }
        max_endpoint = max_endpoint.max(u).max(v);
        seen_edge = true;
        edges.push((u, v));
    }
    let n = match declared_n {
        Some(n) => n,
        None if seen_edge => max_endpoint as usize + 1,
        None => {
            return Err(Error::Parse {
                line: 1,
                msg: "no edges and no '# n=<N>' header; node count unknown".into(),
            })
        }
    };
    Graph::new(n, edges)
}

/// Serializes to the canonical edge-list text: header, then sorted edges.
/// `parse_edge_list(serialize_edge_list(g))` reproduces `g` exactly.
pub fn serialize_edge_list(graph: &Graph) -> String {
    let mut out = format!("# n={}\n", graph.n_nodes());
    for &(u, v) in graph.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
