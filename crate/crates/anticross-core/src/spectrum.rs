//! Matrix-free spectral analysis of the anneal Hamiltonian
//! `H(s) = (1-s) H0 + s H1`.
//!
//! `H0 = -sum_i sigma_x^(i)` over the free qubits is (minus) the adjacency
//! operator of the `n_qubits`-cube; `H1` is the diagonal classical cost. Both
//! act on the `2^n_qubits`-dimensional configuration space, so nothing is ever
//! stored beyond the diagonal and a handful of state vectors: a matvec walks
//! the hypercube edges bit by bit in cache-order.
//!
//! The two lowest eigenpairs come from a block Lanczos iteration with block
//! size 2 — the natural choice here, because the interesting instances drive
//! `e1 - e0` toward zero near an avoided crossing and a single-vector
//! iteration cannot separate a near-degenerate pair reliably. The basis is
//! kept fully reorthogonalized (the classical cure for Lanczos "ghost"
//! copies), grown adaptively, and restarted from the best Ritz pair when it
//! hits the memory cap. Convergence is declared on the cheap block residual
//! estimate and then *verified* against the true residual
//! `|| H v - e v || <= 1e-8 * (n_qubits + |E|)` before anything is returned.
//!
//! Gap scans walk a uniform `s` grid, warm-starting each solve from the
//! previous point's eigenvectors, and optionally polish the minimum by
//! golden-section search — the gap is smooth but derivative-free bracketing
//! is the robust choice near an exponentially thin avoided crossing.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::maxcut::CostModel;
use crate::rng::SplitMix64;
use crate::{Error, Result};

/// Largest instance the dense state vectors are allowed to reach.
pub const MAX_QUBITS: usize = 24;

/// Default number of uniform grid points on `[0, 1]` (both endpoints
/// included).
pub const DEFAULT_GRID_POINTS: usize = 201;

/// Residual tolerance is this factor times `n_qubits + |E|`.
pub const RESIDUAL_SCALE: f64 = 1e-8;

/// Golden-section window tolerance on `s` for minimum refinement. Tighter
/// than a plain grid needs, because the quadratic error of the *gap value* at
/// the refined point scales like the square of this window.
pub const REFINE_TOL: f64 = 1e-6;

/// Hard cap on stored basis vectors (memory bound; the solver thick-restarts
/// when the cap is hit, compressing to [`RESTART_KEEP`] Ritz vectors).
pub const MAX_BASIS: usize = 120;

/// Ritz vectors kept across a thick restart. Large enough to preserve the
/// convergence state of the two wanted pairs plus a buffer of nearby levels
/// (tight clusters above `e1` are what makes restarting expensive).
pub const RESTART_KEEP: usize = 16;

/// Matvec budget per `lowest_two` call.
pub const MAX_MATVECS: usize = 40_000;

/// Two instantaneous eigenvalues closer than this at `s = 1` mean the
/// classical optimum is degenerate.
pub const DEGENERACY_GUARD: f64 = 1e-12;

// ---------------------------------------------------------------------------
// Hamiltonian
// ---------------------------------------------------------------------------

/// The interpolating operator, stored as its classical diagonal only.
#[derive(Debug, Clone)]
pub struct AnnealHamiltonian {
    n_qubits: usize,
    dim: usize,
    n_edges: usize,
    diag: Vec<f64>,
    e_gs: i64,
    gs_degeneracy: u64,
    ground_config: u64,
}

impl AnnealHamiltonian {
    /// Enumerates the model's cost diagonal and prepares the operator.
    pub fn new(model: &CostModel) -> Result<Self> {
        let nq = model.n_qubits();
        if nq > MAX_QUBITS {
            return Err(Error::InvalidParameter(format!(
                "{nq} free qubits exceed the {MAX_QUBITS}-qubit dense-vector limit"
            )));
        }
        let table = model.energies()?;
        Ok(Self::from_energies(nq, model.graph().n_edges(), &table))
    }

    /// Builds the operator from a precomputed cost table.
    pub fn from_energies(n_qubits: usize, n_edges: usize, table: &[i32]) -> Self {
        let mut e_gs = i64::MAX;
        let mut gs_degeneracy = 0u64;
        let mut ground_config = 0u64;
        for (x, &e) in table.iter().enumerate() {
            let e = e as i64;
            if e < e_gs {
                e_gs = e;
                gs_degeneracy = 1;
                ground_config = x as u64;
            } else if e == e_gs {
                gs_degeneracy += 1;
            }
        }
        Self {
            n_qubits,
            dim: table.len(),
            n_edges,
            diag: table.iter().map(|&e| e as f64).collect(),
            e_gs,
            gs_degeneracy,
            ground_config,
        }
    }

    /// Hilbert-space dimension `2^n_qubits`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Free-qubit count.
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Classical optimum cost.
    pub fn e_gs(&self) -> i64 {
        self.e_gs
    }

    /// Number of configurations attaining the optimum.
    pub fn gs_degeneracy(&self) -> u64 {
        self.gs_degeneracy
    }

    /// First configuration attaining the optimum (the unique one for a
    /// pinned connected bipartite instance).
    pub fn ground_config(&self) -> u64 {
        self.ground_config
    }

    /// Classical cost diagonal.
    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    /// Absolute eigenpair residual tolerance for this instance.
    pub fn residual_tol(&self) -> f64 {
        RESIDUAL_SCALE * (self.n_qubits + self.n_edges) as f64
    }

    /// `out = H(s) v`. Walks each cube direction in blocks so both halves of
    /// every flipped pair stay in cache.
    pub fn apply(&self, s: f64, v: &[f64], out: &mut [f64]) {
        debug_assert_eq!(v.len(), self.dim);
        debug_assert_eq!(out.len(), self.dim);
        for ((o, &d), &x) in out.iter_mut().zip(&self.diag).zip(v) {
            *o = s * d * x;
        }
        let c = 1.0 - s;
        if c == 0.0 {
            return;
        }
        for j in 0..self.n_qubits {
            let bit = 1usize << j;
            let mut base = 0usize;
            while base < self.dim {
                for lo in base..base + bit {
                    let hi = lo | bit;
                    out[lo] -= c * v[hi];
                    out[hi] -= c * v[lo];
                }
                base += bit << 1;
            }
        }
    }

    /// `out = H(s) v` on a complex state. All matrix entries are real, so
    /// the real and imaginary components propagate independently in one
    /// cache-order pass (same walk as [`Self::apply`]).
    pub fn apply_complex(&self, s: f64, v: &[Complex64], out: &mut [Complex64]) {
        debug_assert_eq!(v.len(), self.dim);
        debug_assert_eq!(out.len(), self.dim);
        for ((o, &d), &x) in out.iter_mut().zip(&self.diag).zip(v) {
            let w = s * d;
            o.re = w * x.re;
            o.im = w * x.im;
        }
        let c = 1.0 - s;
        if c == 0.0 {
            return;
        }
        for j in 0..self.n_qubits {
            let bit = 1usize << j;
            let mut base = 0usize;
            while base < self.dim {
                for lo in base..base + bit {
                    let hi = lo | bit;
                    let vh = v[hi];
                    let vl = v[lo];
                    out[lo].re -= c * vh.re;
                    out[lo].im -= c * vh.im;
                    out[hi].re -= c * vl.re;
                    out[hi].im -= c * vl.im;
                }
                base += bit << 1;
            }
        }
    }

    /// Exact two lowest eigenpairs (counting multiplicity) of the diagonal
    /// endpoint `H(1)`: the two smallest cost-table entries, as basis states.
    fn diagonal_endpoint(&self) -> EigenPair2 {
        let mut best = (f64::INFINITY, 0usize);
        let mut second = (f64::INFINITY, 0usize);
        for (x, &e) in self.diag.iter().enumerate() {
            if e < best.0 {
                second = best;
                best = (e, x);
            } else if e < second.0 {
                second = (e, x);
            }
        }
        let mut v0 = vec![0.0; self.dim];
        v0[best.1] = 1.0;
        let mut v1 = vec![0.0; self.dim];
        v1[second.1] = 1.0;
        EigenPair2 {
            e0: best.0,
            e1: second.0,
            v0,
            v1,
            matvecs: 0,
            residual: 0.0,
        }
    }
}

// ---------------------------------------------------------------------------
// Block Lanczos
// ---------------------------------------------------------------------------

/// Converged two lowest eigenpairs of `H(s)`.
#[derive(Debug, Clone)]
pub struct EigenPair2 {
    pub e0: f64,
    pub e1: f64,
    pub v0: Vec<f64>,
    pub v1: Vec<f64>,
    /// Matvecs spent (diagnostic).
    pub matvecs: usize,
    /// Verified true residual `max_i || H v_i - e_i v_i ||`.
    pub residual: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(y: &mut [f64], alpha: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn scale(v: &mut [f64], alpha: f64) {
    for x in v.iter_mut() {
        *x *= alpha;
    }
}

/// Removes the components of `w` along every vector in `basis` (one modified
/// Gram-Schmidt sweep).
fn orthogonalize_against(w: &mut [f64], basis: &[Vec<f64>]) {
    for u in basis {
        let c = dot(u, w);
        if c != 0.0 {
            axpy(w, -c, u);
        }
    }
}

impl AnnealHamiltonian {
    /// Two lowest eigenpairs of `H(s)`, optionally warm-started from a nearby
    /// solution.
    ///
    /// Thick-restart block Lanczos with block size 2. The basis always ends
    /// in one yet-unexpanded ("pending") block; expanding it costs two
    /// matvecs, and the *recorded* Gram-Schmidt sweep that follows yields
    /// exactly the new columns of the projected matrix `T = V^T H V` —
    /// including, right after a restart, the coupling between the kept Ritz
    /// vectors and the pending block. Hitting the basis cap therefore loses
    /// no convergence history: the iteration compresses to the lowest
    /// [`RESTART_KEEP`] Ritz vectors (whose projected matrix is
    /// `diag(theta)`) plus the pending block, and carries on.
    pub fn lowest_two(&self, s: f64, warm: Option<[&[f64]; 2]>) -> Result<EigenPair2> {
        let dim = self.dim;
        if dim < 2 {
            return Err(Error::SingleLevel);
        }
        if s == 1.0 {
            // The endpoint is classical: H(1) is diagonal, so the two lowest
            // levels (counting multiplicity) are read off the cost table and
            // the eigenvectors are exact basis states. Besides skipping the
            // iteration, this pins the endpoint overlaps g0(1), g1(1) to
            // their exact values instead of solver tolerance.
            return Ok(self.diagonal_endpoint());
        }
        let tol = self.residual_tol();
        let max_basis = MAX_BASIS.min(dim);
        let keep = RESTART_KEEP.min(max_basis - 2);
        let dep_tol = 1e-13 * (self.n_qubits + self.n_edges) as f64;
        let mut rng = SplitMix64::new(0x1a2c_705e_ed00_0001); // fixed seed
        let mut matvecs = 0usize;

        // Seed the pending block from the warm pair or random directions.
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(max_basis);
        let mut seed_block: Vec<Vec<f64>> = match warm {
            Some([w0, w1]) => vec![w0.to_vec(), w1.to_vec()],
            None => Vec::new(),
        };
        while seed_block.len() < 2 {
            seed_block.push((0..dim).map(|_| rng.next_centered()).collect());
        }
        for mut v in seed_block {
            orthogonalize_against(&mut v, &basis);
            let mut nv = norm(&v);
            if nv < 1e-12 {
                // Degenerate warm start; replace with a fresh direction.
                v = (0..dim).map(|_| rng.next_centered()).collect();
                orthogonalize_against(&mut v, &basis);
                nv = norm(&v);
            }
            scale(&mut v, 1.0 / nv);
            basis.push(v);
        }

        // Projected matrix, valid on its top-left `complete x complete`
        // block. `basis[complete..]` is the pending block.
        let mut t = nalgebra::DMatrix::<f64>::zeros(max_basis, max_basis);
        let mut complete = 0usize;
        let mut est_target = 0.5 * tol;
        let mut best_residual = f64::INFINITY;

        loop {
            debug_assert_eq!(basis.len(), complete + 2);

            // ---- Expand the pending block: W = H * pending, with the
            // recorded sweep filling two new columns of T.
            let mut residual_block: Vec<Vec<f64>> = Vec::with_capacity(2);
            for a in 0..2 {
                let col = complete + a;
                let mut w = vec![0.0; dim];
                self.apply(s, &basis[col], &mut w);
                matvecs += 1;
                for (i, u) in basis.iter().enumerate() {
                    let c = dot(u, &w);
                    axpy(&mut w, -c, u);
                    t[(i, col)] = c;
                    t[(col, i)] = c;
                }
                // Clean-up sweep against rounding; corrections are far below
                // the recorded coefficients and are not part of T.
                orthogonalize_against(&mut w, &basis);
                residual_block.push(w);
            }
            complete += 2;

            // ---- QR-factor the residual block into the next pending block.
            let mut b = [[0.0f64; 2]; 2];
            let mut next: Vec<Vec<f64>> = Vec::new();
            if complete < dim {
                let mut w1 = residual_block.pop().expect("two residual columns");
                let mut w0 = residual_block.pop().expect("two residual columns");
                b[0][0] = norm(&w0);
                if b[0][0] > dep_tol {
                    scale(&mut w0, 1.0 / b[0][0]);
                } else {
                    b[0][0] = 0.0;
                    w0 = fresh_direction(&mut rng, dim, &basis, None);
                }
                b[0][1] = dot(&w0, &w1);
                axpy(&mut w1, -b[0][1], &w0);
                b[1][1] = norm(&w1);
                if b[1][1] > dep_tol {
                    scale(&mut w1, 1.0 / b[1][1]);
                } else {
                    b[1][1] = 0.0;
                    w1 = fresh_direction(&mut rng, dim, &basis, Some(&w0));
                }
                next.push(w0);
                next.push(w1);
            }

            // ---- Rayleigh-Ritz over the complete part.
            let tv = t.view((0, 0), (complete, complete)).clone_owned();
            let (theta, vecs) = sorted_eigen(&tv);
            let est_of = |k: usize| -> f64 {
                let yb0 = vecs[(complete - 2, k)];
                let yb1 = vecs[(complete - 1, k)];
                let r0 = b[0][0] * yb0 + b[0][1] * yb1;
                let r1 = b[1][1] * yb1;
                (r0 * r0 + r1 * r1).sqrt()
            };
            let est_max = est_of(0).max(est_of(1));
            best_residual = best_residual.min(est_max);

            // ---- Convergence attempt: verify the true residual.
            let exhausted = matvecs >= MAX_MATVECS;
            if est_max <= est_target || complete == dim || exhausted {
                let mut v0 = assemble_ritz(&basis, &vecs, complete, 0);
                let mut v1 = assemble_ritz(&basis, &vecs, complete, 1);
                let n0 = norm(&v0);
                scale(&mut v0, 1.0 / n0);
                let c = dot(&v0, &v1);
                axpy(&mut v1, -c, &v0);
                let n1 = norm(&v1);
                scale(&mut v1, 1.0 / n1);

                let mut hv = vec![0.0; dim];
                let mut true_res = 0.0f64;
                let mut e = [0.0f64; 2];
                for (i, v) in [&v0, &v1].into_iter().enumerate() {
                    self.apply(s, v, &mut hv);
                    matvecs += 1;
                    let ev = dot(v, &hv);
                    e[i] = ev;
                    axpy(&mut hv, -ev, v);
                    true_res = true_res.max(norm(&hv));
                }
                best_residual = best_residual.min(true_res);
                if true_res <= tol {
                    let (e0, e1, v0, v1) = if e[0] <= e[1] {
                        (e[0], e[1], v0, v1)
                    } else {
                        (e[1], e[0], v1, v0)
                    };
                    return Ok(EigenPair2 {
                        e0,
                        e1,
                        v0,
                        v1,
                        matvecs,
                        residual: true_res,
                    });
                }
                if exhausted || complete == dim {
                    // Out of budget, or the subspace is already exact and
                    // cannot improve.
                    return Err(Error::NoConvergence {
                        residual: best_residual,
                        matvecs,
                        tol,
                    });
                }
                // The cheap estimate was optimistic; demand more of it before
                // the next attempt and keep iterating.
                est_target *= 0.25;
            }

            // ---- Grow, or thick-restart at the cap.
            if complete + 2 <= max_basis {
                basis.extend(next);
            } else {
                let kept: Vec<Vec<f64>> = (0..keep)
                    .map(|k| assemble_ritz(&basis, &vecs, complete, k))
                    .collect();
                basis = kept;
                t.fill(0.0);
                for (i, &th) in theta.iter().take(keep).enumerate() {
                    t[(i, i)] = th;
                }
                complete = keep;
                basis.extend(next);
            }
        }
    }
}

/// Ritz vector `k` of the projected problem, assembled over the complete
/// basis.
fn assemble_ritz(
    basis: &[Vec<f64>],
    vecs: &nalgebra::DMatrix<f64>,
    complete: usize,
    k: usize,
) -> Vec<f64> {
    let mut v = vec![0.0; basis[0].len()];
    for (i, u) in basis.iter().take(complete).enumerate() {
        axpy(&mut v, vecs[(i, k)], u);
    }
    v
}

/// A deterministic random direction orthonormalized against everything seen
/// so far.
fn fresh_direction(
    rng: &mut SplitMix64,
    dim: usize,
    basis: &[Vec<f64>],
    extra: Option<&[f64]>,
) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = (0..dim).map(|_| rng.next_centered()).collect();
        orthogonalize_against(&mut v, basis);
        if let Some(u) = extra {
            let c = dot(u, &v);
            axpy(&mut v, -c, u);
        }
        let nv = norm(&v);
        if nv > 1e-8 {
            scale(&mut v, 1.0 / nv);
            return v;
        }
    }
}

/// Full eigendecomposition of a small dense symmetric matrix, ascending.
fn sorted_eigen(t: &nalgebra::DMatrix<f64>) -> (Vec<f64>, nalgebra::DMatrix<f64>) {
    let eig = t.clone().symmetric_eigen();
    let m = t.nrows();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vecs = nalgebra::DMatrix::<f64>::zeros(m, m);
    for (k, &i) in order.iter().enumerate() {
        vecs.set_column(k, &eig.eigenvectors.column(i));
    }
    (values, vecs)
}

// ---------------------------------------------------------------------------
// Gap scan
// ---------------------------------------------------------------------------

/// One grid point of a gap scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapPoint {
    pub s: f64,
    pub e0: f64,
    pub e1: f64,
    /// `e1 - e0`.
    pub gap: f64,
    /// Ground-state amplitude `<x_gs|v0>` (for overlap curves).
    pub amp0: f64,
    /// First-excited amplitude `<x_gs|v1>`.
    pub amp1: f64,
}

/// Scan settings.
#[derive(Debug, Clone, Copy)]
pub struct GapScanConfig {
    /// Uniform grid size on `[0, 1]`, endpoints included (>= 2).
    pub grid_points: usize,
    /// Polish the minimum by golden-section search.
    pub refine: bool,
    /// Window tolerance on `s` for the refinement.
    pub refine_tol: f64,
}

impl Default for GapScanConfig {
    fn default() -> Self {
        Self {
            grid_points: DEFAULT_GRID_POINTS,
            refine: true,
            refine_tol: REFINE_TOL,
        }
    }
}

/// A completed scan: the grid plus the (possibly refined) minimum.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GapScan {
    pub points: Vec<GapPoint>,
    /// Location of the minimum gap.
    pub s_min: f64,
    /// Value of the minimum gap.
    pub gap_min: f64,
    /// Whether golden-section refinement ran.
    pub refined: bool,
}

/// Scans the instantaneous gap over a uniform `s` grid.
///
/// Refuses instances with a degenerate classical optimum: at `s = 1` the two
/// lowest levels collide and the scan's premise (a simple avoided crossing
/// between them) is void.
pub fn gap_scan(h: &AnnealHamiltonian, cfg: &GapScanConfig) -> Result<GapScan> {
    if cfg.grid_points < 2 {
        return Err(Error::InvalidParameter(
            "gap scan needs at least 2 grid points".into(),
        ));
    }
    if h.gs_degeneracy() > 1 {
        return Err(Error::DegenerateGround {
            degeneracy: h.gs_degeneracy(),
        });
    }
    let g = cfg.grid_points;
    let gs_idx = h.ground_config() as usize;
    let mut points = Vec::with_capacity(g);
    let mut warm: Option<(Vec<f64>, Vec<f64>)> = None;
    for j in 0..g {
        let s = j as f64 / (g - 1) as f64;
        let pair = h.lowest_two(s, warm.as_ref().map(|(a, b)| [a.as_slice(), b.as_slice()]))?;
        points.push(GapPoint {
            s,
            e0: pair.e0,
            e1: pair.e1,
            gap: pair.e1 - pair.e0,
            amp0: pair.v0[gs_idx],
            amp1: pair.v1[gs_idx],
        });
        warm = Some((pair.v0, pair.v1));
    }
    // Guard against a hidden degenerate optimum (redundant with the
    // degeneracy count above, but cheap and direct).
    let last = points.last().expect("grid is non-empty");
    if last.gap < DEGENERACY_GUARD {
        return Err(Error::DegenerateGround { degeneracy: 2 });
    }

    let (mut s_min, mut gap_min) = {
        let best = points
            .iter()
            .min_by(|a, b| a.gap.total_cmp(&b.gap))
            .expect("grid is non-empty");
        (best.s, best.gap)
    };

    let mut refined = false;
    if cfg.refine && g >= 3 {
        let i_best = points
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.gap.total_cmp(&b.gap))
            .map(|(i, _)| i)
            .expect("grid is non-empty");
        let a = points[i_best.saturating_sub(1)].s;
        let b = points[(i_best + 1).min(g - 1)].s;
        if b > a {
            let (s_ref, gap_ref) = golden_section_min(h, a, b, cfg.refine_tol, &mut warm)?;
            if gap_ref < gap_min {
                s_min = s_ref;
                gap_min = gap_ref;
            }
            refined = true;
        }
    }

    Ok(GapScan {
        points,
        s_min,
        gap_min,
        refined,
    })
}

/// Golden-section search for the gap minimum on `[a, b]`.
fn golden_section_min(
    h: &AnnealHamiltonian,
    mut a: f64,
    mut b: f64,
    tol: f64,
    warm: &mut Option<(Vec<f64>, Vec<f64>)>,
) -> Result<(f64, f64)> {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let eval = |s: f64, warm: &mut Option<(Vec<f64>, Vec<f64>)>| -> Result<f64> {
        let pair = h.lowest_two(s, warm.as_ref().map(|(u, v)| [u.as_slice(), v.as_slice()]))?;
        let gap = pair.e1 - pair.e0;
        *warm = Some((pair.v0, pair.v1));
        Ok(gap)
    };
    let mut x1 = b - INVPHI * (b - a);
    let mut x2 = a + INVPHI * (b - a);
    let mut f1 = eval(x1, warm)?;
    let mut f2 = eval(x2, warm)?;
    let mut best = if f1 < f2 { (x1, f1) } else { (x2, f2) };
    while b - a > tol {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INVPHI * (b - a);
            f1 = eval(x1, warm)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INVPHI * (b - a);
            f2 = eval(x2, warm)?;
        }
        let (x, f) = if f1 < f2 { (x1, f1) } else { (x2, f2) };
        if f < best.1 {
            best = (x, f);
        }
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// Exponential scaling fit
// ---------------------------------------------------------------------------

/// Least-squares fit of `gap_min ~ a * exp(-rate * r)` on the log scale.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScalingFit {
    /// The fitted `(r, gap_min)` points.
    pub points: Vec<(f64, f64)>,
    /// Decay rate `rate` (positive for an exponentially closing gap).
    pub rate: f64,
    /// Prefactor `a`.
    pub prefactor: f64,
    /// Coefficient of determination on `(r, ln gap_min)`.
    pub r_squared: f64,
}

/// Fits the exponential-decay model through at least three scan minima.
pub fn scaling_fit(points: &[(f64, f64)]) -> Result<ScalingFit> {
    if points.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "scaling fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    for &(r, g) in points {
        if !r.is_finite() || !g.is_finite() || g <= 0.0 {
            return Err(Error::NonFinite(format!(
                "scaling fit needs positive finite gaps, got ({r}, {g})"
            )));
        }
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|&(r, _)| r).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, g)| g.ln()).collect();
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x) * (x - mean_x)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    if sxx == 0.0 {
        return Err(Error::InvalidParameter(
            "scaling fit needs at least two distinct r values".into(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let p = intercept + slope * x;
            (y - p) * (y - p)
        })
        .sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - mean_y) * (y - mean_y)).sum();
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };
    Ok(ScalingFit {
        points: points.to_vec(),
        rate: -slope,
        prefactor: intercept.exp(),
        r_squared,
    })
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{generate_cycle, generate_grk, parse_edge_list, Graph, GrkParams};
    use crate::maxcut::CostModel;
    use crate::rational::rat_to_f64;

    fn hamiltonian(g: Graph, fixed: usize) -> AnnealHamiltonian {
        AnnealHamiltonian::new(&CostModel::new(g, fixed).unwrap()).unwrap()
    }

    /// Dense H(s) built directly from the definition — independent of
    /// `apply`.
    fn dense_h(model: &CostModel, s: f64) -> nalgebra::DMatrix<f64> {
        let nq = model.n_qubits();
        let dim = 1usize << nq;
        let mut m = nalgebra::DMatrix::<f64>::zeros(dim, dim);
        for x in 0..dim {
            m[(x, x)] = s * model.cut_energy(x as u64) as f64;
            for j in 0..nq {
                let y = x ^ (1 << j);
                m[(x, y)] = -(1.0 - s);
            }
        }
        m
    }

    fn dense_lowest_two(model: &CostModel, s: f64) -> (f64, f64) {
        let eig = dense_h(model, s).symmetric_eigen();
        let mut ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        (ev[0], ev[1])
    }

    #[test]
    fn single_qubit_closed_form_gap() {
        let h = hamiltonian(parse_edge_list("0 1\n").unwrap(), 0);
        for j in 0..=20 {
            let s = j as f64 / 20.0;
            let pair = h.lowest_two(s, None).unwrap();
            let expect = (5.0 * s * s - 8.0 * s + 4.0).sqrt();
            assert!(
                ((pair.e1 - pair.e0) - expect).abs() < 1e-12,
                "s={s}: gap={} expected={expect}",
                pair.e1 - pair.e0
            );
        }
    }

    #[test]
    fn transverse_field_limit() {
        let h = hamiltonian(generate_cycle(6).unwrap(), 0);
        let pair = h.lowest_two(0.0, None).unwrap();
        assert!((pair.e0 + 5.0).abs() < 1e-9, "e0(0) = -n_qubits");
        assert!((pair.e1 + 3.0).abs() < 1e-9, "e1(0) = -n_qubits + 2");
        assert!((pair.e1 - pair.e0 - 2.0).abs() < 1e-9, "gap(0) = 2 exactly");
    }

    #[test]
    fn diagonal_limit() {
        let h = hamiltonian(generate_cycle(6).unwrap(), 0);
        let pair = h.lowest_two(1.0, None).unwrap();
        assert!((pair.e0 + 6.0).abs() < 1e-10, "e0(1) = E_gs = -|E|");
        assert!((pair.e1 + 4.0).abs() < 1e-10, "e1(1) = E_fs");
    }

    #[test]
    fn dense_oracle_small_instances() {
        let cases: Vec<(Graph, usize)> = vec![
            (parse_edge_list("0 1\n").unwrap(), 0),
            (parse_edge_list("0 1\n1 2\n").unwrap(), 1),
            (parse_edge_list("0 1\n1 2\n2 3\n").unwrap(), 0),
            (generate_cycle(4).unwrap(), 2),
            (
                parse_edge_list("0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap(),
                0,
            ), // K4
            (parse_edge_list("0 1\n0 2\n0 3\n").unwrap(), 0), // star
        ];
        for (g, fixed) in cases {
            let model = CostModel::new(g, fixed).unwrap();
            let h = AnnealHamiltonian::new(&model).unwrap();
            for j in 0..=20 {
                let s = j as f64 / 20.0;
                let (d0, d1) = dense_lowest_two(&model, s);
                let pair = h.lowest_two(s, None).unwrap();
                assert!(
                    (pair.e0 - d0).abs() < 1e-8 && (pair.e1 - d1).abs() < 1e-8,
                    "n={} s={s}: lanczos=({}, {}) dense=({d0}, {d1})",
                    model.graph().n_nodes(),
                    pair.e0,
                    pair.e1
                );
            }
        }
    }

    #[test]
    fn apply_matches_dense_matrix() {
        let model = CostModel::new(generate_cycle(4).unwrap(), 0).unwrap();
        let h = AnnealHamiltonian::new(&model).unwrap();
        let mut rng = SplitMix64::new(99);
        for &s in &[0.0, 0.3, 0.75, 1.0] {
            let d = dense_h(&model, s);
            let v: Vec<f64> = (0..h.dim()).map(|_| rng.next_centered()).collect();
            let mut out = vec![0.0; h.dim()];
            h.apply(s, &v, &mut out);
            let dv = &d * nalgebra::DVector::from_column_slice(&v);
            for i in 0..h.dim() {
                assert!(
                    (out[i] - dv[i]).abs() < 1e-12,
                    "matvec mismatch at s={s}, row {i}"
                );
            }
        }
    }

    #[test]
    fn operator_is_symmetric() {
        let h = hamiltonian(generate_cycle(6).unwrap(), 0);
        let mut rng = SplitMix64::new(5);
        for &s in &[0.0, 0.3, 0.7, 1.0] {
            let u: Vec<f64> = (0..h.dim()).map(|_| rng.next_centered()).collect();
            let v: Vec<f64> = (0..h.dim()).map(|_| rng.next_centered()).collect();
            let mut hu = vec![0.0; h.dim()];
            let mut hv = vec![0.0; h.dim()];
            h.apply(s, &u, &mut hu);
            h.apply(s, &v, &mut hv);
            assert!(
                (dot(&u, &hv) - dot(&hu, &v)).abs() < 1e-12,
                "symmetry violated at s={s}"
            );
        }
    }

    #[test]
    fn eigenvectors_are_orthonormal() {
        let h = hamiltonian(generate_grk(&GrkParams { r: 3, l: 3, k: 1 }).unwrap(), 0);
        let pair = h.lowest_two(0.6, None).unwrap();
        assert!((norm(&pair.v0) - 1.0).abs() < 1e-10);
        assert!((norm(&pair.v1) - 1.0).abs() < 1e-10);
        assert!(dot(&pair.v0, &pair.v1).abs() < 1e-10);
        assert!(pair.residual <= h.residual_tol());
    }

    #[test]
    fn single_qubit_scan_hits_the_analytic_minimum() {
        let h = hamiltonian(parse_edge_list("0 1\n").unwrap(), 0);
        let scan = gap_scan(
            &h,
            &GapScanConfig {
                grid_points: 101,
                refine: true,
                refine_tol: REFINE_TOL,
            },
        )
        .unwrap();
        assert!(scan.refined);
        assert!(
            (scan.s_min - 0.8).abs() < 1e-5,
            "analytic argmin 4/5, got {}",
            scan.s_min
        );
        let expect = 2.0 / 5.0f64.sqrt();
        assert!(
            (scan.gap_min - expect).abs() < 1e-10,
            "analytic minimum 2/sqrt(5), got {}",
            scan.gap_min
        );
        // The refined value never exceeds the raw grid minimum.
        let grid_min = scan
            .points
            .iter()
            .map(|p| p.gap)
            .fold(f64::INFINITY, f64::min);
        assert!(scan.gap_min <= grid_min);
    }

    #[test]
    fn variational_bound_against_uniform_state() {
        let model = CostModel::new(generate_cycle(6).unwrap(), 0).unwrap();
        let stats = model.spectrum_stats().unwrap();
        let h = AnnealHamiltonian::new(&model).unwrap();
        let mean = rat_to_f64(stats.mean_h1);
        for j in 0..=10 {
            let s = j as f64 / 10.0;
            let pair = h.lowest_two(s, None).unwrap();
            let rayleigh = -(1.0 - s) * stats.n_qubits as f64 + s * mean;
            assert!(
                pair.e0 <= rayleigh + 1e-9,
                "ground energy must sit below the uniform-state quotient at s={s}"
            );
        }
    }

    #[test]
    fn degenerate_optimum_is_refused() {
        // Odd cycles are rejected by the even-cycle generator; build C5 by
        // hand. Its optimum is five-fold degenerate even after pinning.
        let h = hamiltonian(parse_edge_list("0 1\n1 2\n2 3\n3 4\n0 4\n").unwrap(), 0);
        let err = gap_scan(&h, &GapScanConfig::default()).unwrap_err();
        match err {
            Error::DegenerateGround { degeneracy } => {
                assert_eq!(degeneracy, 5, "C5 has five optimal cuts after pinning")
            }
            other => panic!("expected DegenerateGround, got {other:?}"),
        }
    }

    #[test]
    fn warm_started_scan_is_deterministic() {
        let h = hamiltonian(generate_cycle(6).unwrap(), 0);
        let cfg = GapScanConfig {
            grid_points: 21,
            refine: true,
            refine_tol: 1e-6,
        };
        let a = gap_scan(&h, &cfg).unwrap();
        let b = gap_scan(&h, &cfg).unwrap();
        assert_eq!(a.s_min.to_bits(), b.s_min.to_bits());
        assert_eq!(a.gap_min.to_bits(), b.gap_min.to_bits());
        for (pa, pb) in a.points.iter().zip(&b.points) {
            assert_eq!(pa.gap.to_bits(), pb.gap.to_bits());
        }
    }

    #[test]
    fn scaling_fit_recovers_exact_exponential() {
        let pts: Vec<(f64, f64)> = (3..=9).map(|r| (r as f64, 2.0f64.powi(-r))).collect();
        let fit = scaling_fit(&pts).unwrap();
        assert!((fit.rate - std::f64::consts::LN_2).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
        assert!((fit.prefactor - 1.0).abs() < 1e-9);
    }

    #[test]
    fn scaling_fit_rejects_bad_input() {
        assert!(scaling_fit(&[(3.0, 0.5), (4.0, 0.25)]).is_err(), "2 points");
        assert!(
            scaling_fit(&[(3.0, 0.5), (4.0, 0.0), (5.0, 0.1)]).is_err(),
            "zero gap"
        );
        assert!(
            scaling_fit(&[(3.0, 0.5), (3.0, 0.25), (3.0, 0.1)]).is_err(),
            "degenerate abscissa"
        );
    }
}
