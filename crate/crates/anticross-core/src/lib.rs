//! Avoided level crossings in quantum annealing for MaxCut.
//!
//! A transverse-field anneal `H(s) = (1-s) H0 + s H1` interpolates between the
//! negative hypercube adjacency `H0 = -sum_j sigma_x^(j)` and a diagonal MaxCut
//! cost `H1`. For a family of problem graphs the minimum spectral gap of `H(s)`
//! can close exponentially at an avoided crossing between the delocalized
//! ground state and states localized on suboptimal cuts. This crate predicts
//! that regime analytically from the combinatorics of the *local-minima graph*
//! (the hypercube-induced subgraph on the first excited cost level) and
//! cross-checks the prediction with exact spectral scans and Schrodinger
//! dynamics at desk scale.
//!
//! Module map:
//! - [`graphs`]: problem-graph construction, parsing, degree/bipartite stats
//! - [`maxcut`]: pinned-qubit cost model, exhaustive spectrum statistics
//! - [`locgraph`]: local-minima graph, components, top adjacency eigenvalue
//! - [`accondition`]: energy lines, crossing times, regime classification
//! - [`spectrum`]: matrix-free `H(s)`, two lowest levels, gap scans, fits
//! - [`dynamics`]: fixed-step RK4 Schrodinger evolution and overlap curves
//! - [`perturbation`]: second-order energy corrections and validity ratios
//! - [`pipeline`]: one-call analysis report combining all of the above

pub mod accondition;
pub mod dynamics;
pub mod graphs;
pub mod locgraph;
pub mod maxcut;
pub mod perturbation;
pub mod pipeline;
pub mod rational;
pub mod rng;
pub mod spectrum;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A constructor or operation was handed parameters outside its domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// Edge-list text could not be parsed; `line` is 1-based.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// Exhaustive enumeration over `qubits` free bits would exceed the cap.
    #[error("enumeration over {qubits} free qubits exceeds the cap of {cap}")]
    EnumerationCap { qubits: usize, cap: usize },
    /// The classical ground level is degenerate; downstream analysis that
    /// assumes a unique optimum refuses to run.
    #[error("classical ground level is degenerate (degeneracy {degeneracy})")]
    DegenerateGround { degeneracy: u64 },
    /// The cost spectrum has a single level (edgeless graph): no first excited
    /// level exists.
    #[error("cost spectrum has a single energy level; no first excited level exists")]
    SingleLevel,
    /// The iterative eigensolver ran out of its matvec budget.
    #[error(
        "eigensolver did not converge: best residual {residual:.3e} after {matvecs} \
         matvecs (tolerance {tol:.3e})"
    )]
    NoConvergence {
        residual: f64,
        matvecs: usize,
        tol: f64,
    },
    /// RK4 norm drift exceeded the accepted bound; the step size was too
    /// coarse for this instance.
    #[error("norm drift {drift:.3e} exceeds {bound:.1e}; reduce dt below {dt:.3e}")]
    NormDrift { drift: f64, bound: f64, dt: f64 },
    /// A derived quantity came out non-finite (degenerate denominator); it is
    /// reported instead of being silently clamped.
    #[error("non-finite result: {0}")]
    NonFinite(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
