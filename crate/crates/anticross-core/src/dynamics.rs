//! Schrödinger dynamics of the linear anneal, plus instantaneous-eigenstate
//! overlap curves.
//!
//! The state starts in the uniform superposition (the transverse-field ground
//! state) and evolves under `i d/dt |psi> = H(t/T) |psi>` for `t` in
//! `[0, T]`. Integration is fixed-step classical fourth-order Runge–Kutta:
//! simple, deterministic, and self-diagnosing — inside its stability region
//! RK4 is strictly dissipative on a purely oscillatory spectrum, so the
//! squared-norm drift `|‖psi‖² − 1|` grows monotonically with step-size abuse
//! and doubles as the accuracy monitor. A run whose drift exceeds
//! [`NORM_DRIFT_BOUND`] is rejected with advice to shrink the step; the state
//! is never silently renormalized.
//!
//! Overlap curves `g0(s)`, `g1(s)` are a property of the instantaneous
//! eigenvectors, not of any schedule: each grid point projects the two lowest
//! eigenvectors onto the classical optimum's basis state. Squared moduli make
//! the curves phase- and sign-invariant, so no eigenvector continuity fixing
//! is needed across the grid.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::maxcut::CostModel;
use crate::spectrum::AnnealHamiltonian;
use crate::{Error, Result};

/// Largest instance the integrator accepts: a 2^20 complex state plus four
/// Runge–Kutta stages and one scratch vector is ~100 MB; the next qubit
/// doubles it.
pub const DYNAMICS_MAX_QUBITS: usize = 20;

/// Rejection threshold on the squared-norm drift `|‖psi(T)‖² − 1|`.
pub const NORM_DRIFT_BOUND: f64 = 1e-6;

/// Nominal integrator step `min(0.05, 0.1 / (n_qubits + |E|))`.
///
/// `n_qubits + |E|` bounds the spectral radius of `H(s)` uniformly in `s`
/// (transverse-field norm plus worst cut value), so the nominal step keeps
/// each mode's per-step phase rotation at or below ~0.1 rad. RK4's norm decay
/// per step scales like the *sixth* power of that rotation; very long anneals
/// still accumulate enough of it to trip the drift monitor, and then need an
/// explicitly smaller step via the override argument.
pub fn nominal_dt(n_qubits: usize, n_edges: usize) -> f64 {
    0.05_f64.min(0.1 / (n_qubits + n_edges) as f64)
}

/// One sampled point along an evolution.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrajectoryPoint {
    /// Physical time `t` (ħ = 1).
    pub t: f64,
    /// Schedule position `s = t / t_max`.
    pub s: f64,
    /// `|<optimum| psi(t)>|²`.
    pub p_gs: f64,
    /// Rayleigh quotient `<psi|H(s)|psi> / ‖psi‖²`.
    pub energy: f64,
    /// `‖psi(t)‖²` (drifts below 1 as RK4 dissipates).
    pub norm_sq: f64,
}

/// Outcome of one Schrödinger evolution.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvolutionResult {
    /// Total anneal time `T`.
    pub t_max: f64,
    /// Final ground-state probability `|<optimum| psi(T)>|²`.
    pub p_gs: f64,
    /// `|‖psi(T)‖² − 1|`, guaranteed ≤ [`NORM_DRIFT_BOUND`].
    pub norm_drift: f64,
    /// Step actually used (`t_max` divided into a whole number of steps).
    pub dt: f64,
    /// Number of RK4 steps taken.
    pub steps: usize,
    /// Samples at roughly `record_every` spacing, when requested. Always
    /// includes `t = 0` and `t = t_max`.
    pub trajectory: Option<Vec<TrajectoryPoint>>,
}

/// Squared overlaps of the two lowest instantaneous eigenvectors with the
/// classical optimum's basis state, per grid point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OverlapCurves {
    pub s_grid: Vec<f64>,
    /// `g0(s) = |<E0(s)|optimum>|²`.
    pub g0: Vec<f64>,
    /// `g1(s) = |<E1(s)|optimum>|²`.
    pub g1: Vec<f64>,
}

/// Evolves the uniform superposition to `t_max` at the nominal step.
///
/// `record_every` requests trajectory samples at (approximately) that time
/// spacing; `None` records nothing and returns only the final figures.
pub fn evolve(model: &CostModel, t_max: f64, record_every: Option<f64>) -> Result<EvolutionResult> {
    evolve_with_dt(model, t_max, record_every, None)
}

/// [`evolve`] with an explicit step override, for runs long enough that the
/// nominal step's accumulated dissipation would trip the drift monitor.
pub fn evolve_with_dt(
    model: &CostModel,
    t_max: f64,
    record_every: Option<f64>,
    dt_override: Option<f64>,
) -> Result<EvolutionResult> {
    let nq = model.n_qubits();
    if nq > DYNAMICS_MAX_QUBITS {
        return Err(Error::InvalidParameter(format!(
            "{nq} free qubits exceed the {DYNAMICS_MAX_QUBITS}-qubit dynamics limit \
             (complex state vector of 2^{nq} amplitudes)"
        )));
    }
    if !t_max.is_finite() || t_max <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "t_max must be positive and finite, got {t_max}"
        )));
    }
    if let Some(r) = record_every {
        if !r.is_finite() || r <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "record_every must be positive and finite, got {r}"
            )));
        }
    }
    if let Some(d) = dt_override {
        if !d.is_finite() || d <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "dt override must be positive and finite, got {d}"
            )));
        }
    }

    let h = AnnealHamiltonian::new(model)?;
    let step_goal = dt_override.unwrap_or_else(|| nominal_dt(nq, model.graph().n_edges()));
    let steps = (t_max / step_goal).ceil().max(1.0) as usize;
    let dt = t_max / steps as f64;
    let dim = h.dim();
    let gc = h.ground_config() as usize;

    let amp = 1.0 / (dim as f64).sqrt();
    let mut psi = vec![Complex64::new(amp, 0.0); dim];
    let zero = Complex64::new(0.0, 0.0);
    let mut k1 = vec![zero; dim];
    let mut k2 = vec![zero; dim];
    let mut k3 = vec![zero; dim];
    let mut k4 = vec![zero; dim];
    let mut stage = vec![zero; dim];

    let mut trajectory = record_every.map(|_| Vec::new());
    if let Some(traj) = trajectory.as_mut() {
        traj.push(sample_point(&h, 0.0, 0.0, &psi, &mut k1));
    }
    // Next multiple of record_every that is still owed a sample.
    let mut next_tick = 1u64;

    // Periodic cheap drift check so a blown-up run fails fast instead of
    // marching NaNs to the end.
    let check_interval = steps.div_ceil(64).max(1);

    for j in 0..steps {
        let t = j as f64 * dt;
        rk4_step(
            &h, t, dt, t_max, &mut psi, &mut k1, &mut k2, &mut k3, &mut k4, &mut stage,
        );
        let t_next = if j + 1 == steps {
            t_max
        } else {
            (j + 1) as f64 * dt
        };

        if (j + 1) % check_interval == 0 || j + 1 == steps {
            let drift = (norm_sq(&psi) - 1.0).abs();
            if !drift.is_finite() || drift > NORM_DRIFT_BOUND {
                return Err(Error::NormDrift {
                    drift,
                    bound: NORM_DRIFT_BOUND,
                    dt,
                });
            }
        }

        if let Some(traj) = trajectory.as_mut() {
            let spacing = record_every.expect("trajectory implies record_every");
            let due = next_tick as f64 * spacing;
            let is_last = j + 1 == steps;
            if t_next + 0.5 * dt >= due || is_last {
                let s = (t_next / t_max).min(1.0);
                traj.push(sample_point(&h, t_next, s, &psi, &mut k1));
                while next_tick as f64 * spacing <= t_next + 0.5 * dt {
                    next_tick += 1;
                }
            }
        }
    }

    let final_norm_sq = norm_sq(&psi);
    let norm_drift = (final_norm_sq - 1.0).abs();
    let p_gs = psi[gc].norm_sqr();
    Ok(EvolutionResult {
        t_max,
        p_gs,
        norm_drift,
        dt,
        steps,
        trajectory,
    })
}

/// Computes `g0`/`g1` on the given schedule grid by solving for the two
/// lowest eigenvectors at each point (warm-started along the grid).
pub fn overlap_curves(model: &CostModel, s_grid: &[f64]) -> Result<OverlapCurves> {
    if s_grid.is_empty() {
        return Err(Error::InvalidParameter(
            "overlap grid must contain at least one point".into(),
        ));
    }
    for &s in s_grid {
        if !s.is_finite() || !(0.0..=1.0).contains(&s) {
            return Err(Error::InvalidParameter(format!(
                "overlap grid point {s} lies outside [0, 1]"
            )));
        }
    }
    let h = AnnealHamiltonian::new(model)?;
    if h.gs_degeneracy() > 1 {
        // |<E|optimum>|² is ill-posed when "the optimum" is not a single
        // basis state.
        return Err(Error::DegenerateGround {
            degeneracy: h.gs_degeneracy(),
        });
    }
    let gc = h.ground_config() as usize;
    let mut g0 = Vec::with_capacity(s_grid.len());
    let mut g1 = Vec::with_capacity(s_grid.len());
    let mut warm: Option<(Vec<f64>, Vec<f64>)> = None;
    for &s in s_grid {
        let pair = h.lowest_two(s, warm.as_ref().map(|(a, b)| [a.as_slice(), b.as_slice()]))?;
        g0.push(pair.v0[gc] * pair.v0[gc]);
        g1.push(pair.v1[gc] * pair.v1[gc]);
        warm = Some((pair.v0, pair.v1));
    }
    Ok(OverlapCurves {
        s_grid: s_grid.to_vec(),
        g0,
        g1,
    })
}

fn norm_sq(v: &[Complex64]) -> f64 {
    v.iter().map(Complex64::norm_sqr).sum()
}

/// One trajectory sample; `scratch` is clobbered (one matvec for the
/// Rayleigh quotient).
fn sample_point(
    h: &AnnealHamiltonian,
    t: f64,
    s: f64,
    psi: &[Complex64],
    scratch: &mut [Complex64],
) -> TrajectoryPoint {
    let nsq = norm_sq(psi);
    h.apply_complex(s, psi, scratch);
    let expectation: f64 = psi
        .iter()
        .zip(scratch.iter())
        .map(|(p, hp)| (p.conj() * hp).re)
        .sum();
    TrajectoryPoint {
        t,
        s,
        p_gs: psi[h.ground_config() as usize].norm_sqr(),
        energy: expectation / nsq,
        norm_sq: nsq,
    }
}

/// `out = -i H(s) v` — the Schrödinger right-hand side.
fn deriv(h: &AnnealHamiltonian, s: f64, v: &[Complex64], out: &mut [Complex64]) {
    h.apply_complex(s, v, out);
    for z in out.iter_mut() {
        *z = Complex64::new(z.im, -z.re);
    }
}

/// Classical RK4 step for the non-autonomous Schrödinger equation; the
/// schedule is evaluated at the stage times `t`, `t + dt/2`, `t + dt`.
#[allow(clippy::too_many_arguments)]
fn rk4_step(
    h: &AnnealHamiltonian,
    t: f64,
    dt: f64,
    t_total: f64,
    psi: &mut [Complex64],
    k1: &mut [Complex64],
    k2: &mut [Complex64],
    k3: &mut [Complex64],
    k4: &mut [Complex64],
    stage: &mut [Complex64],
) {
    let s0 = (t / t_total).min(1.0);
    let sm = ((t + 0.5 * dt) / t_total).min(1.0);
    let s1 = ((t + dt) / t_total).min(1.0);
    let half = 0.5 * dt;
    let sixth = dt / 6.0;

    deriv(h, s0, psi, k1);
    for (st, (&p, &k)) in stage.iter_mut().zip(psi.iter().zip(k1.iter())) {
        *st = p + k * half;
    }
    deriv(h, sm, stage, k2);
    for (st, (&p, &k)) in stage.iter_mut().zip(psi.iter().zip(k2.iter())) {
        *st = p + k * half;
    }
    deriv(h, sm, stage, k3);
    for (st, (&p, &k)) in stage.iter_mut().zip(psi.iter().zip(k3.iter())) {
        *st = p + k * dt;
    }
    deriv(h, s1, stage, k4);
    for i in 0..psi.len() {
        psi[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * sixth;
    }
}
