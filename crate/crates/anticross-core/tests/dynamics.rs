//! Schrödinger-evolution and overlap-curve checks: closed-form limits, an
//! independent split-step propagator oracle, and the physical guard rails
//! (norm drift, Rayleigh-quotient bounds, refusal of ill-posed inputs).

use anticross_core::dynamics::{
    evolve, evolve_with_dt, nominal_dt, overlap_curves, NORM_DRIFT_BOUND,
};
use anticross_core::graphs::{generate_cycle, generate_grk, parse_edge_list, GrkParams};
use anticross_core::maxcut::CostModel;
use anticross_core::spectrum::AnnealHamiltonian;
use anticross_core::Error;
use num_complex::Complex64;

fn single_edge_model() -> CostModel {
    let g = parse_edge_list("0 1\n").expect("one edge parses");
    CostModel::new(g, 0).expect("single edge pins to one free qubit")
}

fn cycle_model(n: usize) -> CostModel {
    let g = generate_cycle(n).expect("cycle generates");
    CostModel::new(g, 0).expect("cycle model builds")
}

fn grk_model(r: usize, l: usize, k: usize) -> CostModel {
    let g = generate_grk(&GrkParams { r, l, k }).expect("block family generates");
    CostModel::new(g, 0).expect("block family model builds")
}

#[test]
fn sudden_limit_is_the_uniform_weight() {
    for (model, nq) in [(single_edge_model(), 1usize), (cycle_model(6), 5usize)] {
        let res =
            evolve(&model, 1e-6, None).expect("a vanishing anneal time integrates in one step");
        let expected = 0.5f64.powi(nq as i32);
        assert!(
            (res.p_gs - expected).abs() <= 1e-8,
            "an instantaneous quench must leave the uniform superposition untouched: \
             got p_gs = {} for {} qubits, expected 2^-{nq} = {expected}",
            res.p_gs,
            nq
        );
        assert!(
            res.norm_drift <= NORM_DRIFT_BOUND,
            "one tiny RK4 step cannot produce measurable norm drift, got {}",
            res.norm_drift
        );
    }
}

#[test]
fn single_qubit_adiabatic_limit_holds() {
    let res = evolve(&single_edge_model(), 50.0, None).expect("slow anneal integrates");
    assert!(
        res.p_gs >= 0.99,
        "a two-level system with minimum gap 2/sqrt(5) is deeply adiabatic at T = 50, \
         yet p_gs = {}",
        res.p_gs
    );
    assert!(
        res.norm_drift <= NORM_DRIFT_BOUND,
        "norm drift {} exceeds the acceptance bound on a successful run",
        res.norm_drift
    );
}

#[test]
fn single_qubit_probability_grows_with_runtime() {
    let model = single_edge_model();
    let mut last = -1.0f64;
    for t_max in [1.0, 5.0, 25.0, 50.0] {
        let res = evolve(&model, t_max, None).expect("two-level evolution integrates");
        assert!(
            res.p_gs >= last,
            "for a constant-sign-gap two-level system the success probability must be \
             non-decreasing in anneal time, but p({t_max}) = {} < {last}",
            res.p_gs
        );
        last = res.p_gs;
    }
}

/// Independent propagator: piecewise-constant midpoint Hamiltonian, advanced
/// by the exact 2x2 matrix exponential. Agreement isolates the RK4 stepper,
/// because this scheme shares no code and no error expansion with it.
#[test]
fn rk4_matches_an_independent_split_step_oracle() {
    let t_total = 5.0;
    let n = 50_000usize;
    let dt = t_total / n as f64;
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut psi = [Complex64::new(inv_sqrt2, 0.0); 2];
    for m in 0..n {
        let s = ((m as f64 + 0.5) * dt / t_total).min(1.0);
        // H(s) = [[0, -(1-s)], [-(1-s), -s]] = aI + B with a = -s/2 and
        // traceless B; exp(-i dt H) = e^{-i a dt} (cos(b dt) I - i sin(b dt) B / b).
        let off = -(1.0 - s);
        let a = -s / 2.0;
        let b00 = s / 2.0;
        let beta = (b00 * b00 + off * off).sqrt();
        let (cos_b, sin_b) = ((beta * dt).cos(), (beta * dt).sin());
        let phase = Complex64::from_polar(1.0, -a * dt);
        let f = Complex64::new(0.0, -sin_b / beta);
        let u00 = phase * (Complex64::new(cos_b, 0.0) + f * b00);
        let u01 = phase * f * off;
        let u11 = phase * (Complex64::new(cos_b, 0.0) - f * b00);
        let (p0, p1) = (psi[0], psi[1]);
        psi[0] = u00 * p0 + u01 * p1;
        psi[1] = u01 * p0 + u11 * p1;
    }
    let p_oracle = psi[1].norm_sqr();

    let res = evolve(&single_edge_model(), t_total, None).expect("two-level anneal integrates");
    assert!(
        (res.p_gs - p_oracle).abs() <= 2e-6,
        "fixed-step RK4 disagrees with the split-step matrix-exponential oracle: \
         {} vs {p_oracle} (difference {})",
        res.p_gs,
        (res.p_gs - p_oracle).abs()
    );
}

#[test]
fn oversized_step_is_rejected_not_renormalized() {
    let err = evolve_with_dt(&cycle_model(6), 10.0, None, Some(1.0))
        .expect_err("a 1.0 step puts every low eigenmode far outside the RK4 stability region");
    match err {
        Error::NormDrift { drift, bound, dt } => {
            assert!(
                !drift.is_finite() || drift > bound,
                "rejection must report a drift actually above the bound, got {drift} vs {bound}"
            );
            assert!(
                (dt - 1.0).abs() < 1e-12,
                "the offending step size should be echoed back, got {dt}"
            );
        }
        other => panic!("expected a norm-drift rejection, got {other:?}"),
    }
}

#[test]
fn invalid_inputs_are_refused() {
    let model = single_edge_model();
    for bad_t in [0.0, -1.0, f64::NAN, f64::INFINITY] {
        assert!(
            matches!(evolve(&model, bad_t, None), Err(Error::InvalidParameter(_))),
            "t_max = {bad_t} must be refused"
        );
    }
    assert!(
        matches!(
            evolve(&model, 1.0, Some(0.0)),
            Err(Error::InvalidParameter(_))
        ),
        "a zero recording interval must be refused"
    );
    assert!(
        matches!(
            evolve_with_dt(&model, 1.0, None, Some(-0.1)),
            Err(Error::InvalidParameter(_))
        ),
        "a negative step override must be refused"
    );

    let too_big = cycle_model(22); // 21 free qubits
    match evolve(&too_big, 1.0, None) {
        Err(Error::InvalidParameter(msg)) => assert!(
            msg.contains("qubit"),
            "the refusal should name the qubit limit, got: {msg}"
        ),
        other => panic!("a 21-qubit state vector must be refused, got {other:?}"),
    }
}

#[test]
fn trajectory_is_sampled_on_schedule() {
    let res = evolve(&cycle_model(6), 2.0, Some(0.5)).expect("short anneal integrates");
    let traj = res.trajectory.as_ref().expect("recording was requested");
    assert_eq!(
        traj.len(),
        5,
        "T = 2 sampled every 0.5 gives points at 0, 0.5, 1, 1.5, 2"
    );
    for (i, pt) in traj.iter().enumerate() {
        assert!(
            (pt.t - 0.5 * i as f64).abs() <= res.dt,
            "sample {} should sit within one step of its schedule time: t = {}",
            i,
            pt.t
        );
        assert!(
            pt.p_gs >= 0.0 && pt.p_gs <= 1.0 + 1e-9,
            "probabilities stay physical along the run, got {}",
            pt.p_gs
        );
        assert!(
            (pt.norm_sq - 1.0).abs() <= NORM_DRIFT_BOUND,
            "norm must stay within the drift bound at every sample, got {}",
            pt.norm_sq
        );
    }
    let last = traj.last().unwrap();
    assert_eq!(last.t, 2.0, "the final sample is labeled exactly t_max");
    assert_eq!(
        last.p_gs, res.p_gs,
        "the final sample and the summary report the same state"
    );
}

#[test]
fn energy_expectation_stays_between_ground_and_max_diagonal() {
    let model = grk_model(3, 3, 1);
    let h = AnnealHamiltonian::new(&model).expect("operator builds");
    let nq = model.n_qubits();
    let dt = nominal_dt(nq, model.graph().n_edges()) / 2.0;
    let res = evolve_with_dt(&model, 6.0, Some(1.0), Some(dt)).expect("anneal integrates");
    let traj = res.trajectory.as_ref().expect("recording was requested");

    let first = &traj[0];
    assert!(
        (first.energy - (-(nq as f64))).abs() <= 1e-9,
        "the uniform start is the exact transverse-field ground state with energy -n_qubits, \
         got {}",
        first.energy
    );

    let max_diag = h.diag().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    for pt in traj {
        let pair = h
            .lowest_two(pt.s, None)
            .expect("eigensolve at sample point");
        assert!(
            pt.energy >= pair.e0 - 1e-6,
            "a Rayleigh quotient can never undercut the ground energy: \
             <H> = {} vs e0 = {} at s = {}",
            pt.energy,
            pair.e0,
            pt.s
        );
        assert!(
            pt.energy <= pt.s * max_diag + 1e-9,
            "the evolving state cannot exceed the largest classical level: \
             <H> = {} vs bound {} at s = {}",
            pt.energy,
            pt.s * max_diag,
            pt.s
        );
    }
}

#[test]
fn overlap_endpoints_match_the_closed_forms() {
    let model = grk_model(3, 3, 1);
    let nq = model.n_qubits();
    let grid: Vec<f64> = (0..=40).map(|i| i as f64 / 40.0).collect();
    let curves = overlap_curves(&model, &grid).expect("overlap grid solves");

    let uniform_weight = 0.5f64.powi(nq as i32);
    assert!(
        (curves.g0[0] - uniform_weight).abs() <= 1e-8,
        "at s = 0 the ground vector is uniform, so g0 = 2^-n_qubits: got {} vs {}",
        curves.g0[0],
        uniform_weight
    );
    let last = grid.len() - 1;
    assert!(
        (curves.g0[last] - 1.0).abs() <= 1e-8,
        "at s = 1 the unique optimum is the ground vector itself: g0 = {}",
        curves.g0[last]
    );
    assert!(
        curves.g1[last] <= 1e-8,
        "at s = 1 the first excited level is orthogonal to the optimum: g1 = {}",
        curves.g1[last]
    );
    for (i, (&g0, &g1)) in curves.g0.iter().zip(&curves.g1).enumerate() {
        assert!(
            (0.0..=1.0 + 1e-9).contains(&g0) && (0.0..=1.0 + 1e-9).contains(&g1),
            "squared overlaps are probabilities; point {i} has g0 = {g0}, g1 = {g1}"
        );
    }

    let argmax_g1 = curves
        .g1
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap();
    assert!(
        argmax_g1 != 0 && argmax_g1 != last,
        "the excited level picks up optimum weight only around the gap minimum, \
         strictly inside the schedule; argmax sits at grid index {argmax_g1}"
    );

    // The tail of g0 climbs toward 1 once the crossing region is passed.
    let quarter = 3 * grid.len() / 4;
    for i in quarter..last {
        assert!(
            curves.g0[i + 1] >= curves.g0[i] - 1e-2,
            "g0 should be near-monotone on the last quarter of the schedule, \
             but drops from {} to {} at grid index {}",
            curves.g0[i],
            curves.g0[i + 1],
            i
        );
    }
}

#[test]
fn overlap_curves_refuse_ill_posed_inputs() {
    // A pinned odd cycle keeps a 5-fold degenerate optimum: "the" optimum
    // basis state is not well defined, so the curves must be refused.
    let c5 = parse_edge_list("0 1\n1 2\n2 3\n3 4\n0 4\n").expect("five-cycle parses");
    let degenerate = CostModel::new(c5, 0).expect("model builds");
    match overlap_curves(&degenerate, &[0.5]) {
        Err(Error::DegenerateGround { degeneracy }) => assert_eq!(
            degeneracy, 5,
            "a pinned five-cycle has five optimal configurations"
        ),
        other => panic!("degenerate optimum must be refused, got {other:?}"),
    }

    let model = single_edge_model();
    assert!(
        matches!(overlap_curves(&model, &[]), Err(Error::InvalidParameter(_))),
        "an empty grid must be refused"
    );
    assert!(
        matches!(
            overlap_curves(&model, &[0.2, 1.2]),
            Err(Error::InvalidParameter(_))
        ),
        "schedule values outside [0, 1] must be refused"
    );
}
