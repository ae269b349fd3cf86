//! End-to-end analysis-report checks on instances whose every number is
//! known from the module-level oracles.

use anticross_core::accondition::Regime;
use anticross_core::graphs::{generate_cycle, generate_grk, parse_edge_list, GrkParams};
use anticross_core::maxcut::CostModel;
use anticross_core::pipeline::{analyze, AnalysisReport};
use anticross_core::rational::Rat;

#[test]
fn six_cycle_report_is_fully_consistent() {
    let model = CostModel::new(generate_cycle(6).unwrap(), 0).unwrap();
    let report = analyze(&model).expect("analysis runs");

    assert_eq!(report.graph.n_nodes, 6);
    assert_eq!(report.graph.n_edges, 6);
    assert!(report.graph.bipartite && report.graph.connected);
    assert_eq!(report.cost.n_qubits, 5);
    assert_eq!(report.cost.e_gs, -6, "the even cycle cuts every edge");
    assert_eq!(
        report.cost.e_fs, -4,
        "cycle cuts change by two edges at a time"
    );
    assert_eq!(report.cost.gs_degeneracy, 1);
    assert_eq!(Rat::from(report.cost.alpha_t), Rat::new(2, 3));

    assert_eq!(report.loc.n_vertices, 15, "two walls on five slots: C(6,2)");
    assert_eq!(report.loc.n_components, 1);
    assert_eq!(Rat::from(report.loc.deg_avg), Rat::new(8, 3));
    assert_eq!(Rat::from(report.loc.conductance), Rat::new(7, 3));

    assert_eq!(
        report.verdict.regime,
        Regime::NoAc,
        "the six-cycle width stays below the node-count threshold"
    );
    let validity = report
        .validity
        .expect("unique optimum has a validity report");
    assert!(validity.valid, "all second-order ratios are below one here");
    assert_eq!(Rat::from(validity.gs_e2), Rat::new(-5, 2));
}

#[test]
fn block_family_boundary_case_flags_and_classifies() {
    // r = l = 3, k = 2 sits exactly on the rational boundary of the
    // degree-form condition while the spectral form still resolves it.
    let model = CostModel::new(generate_grk(&GrkParams { r: 3, l: 3, k: 2 }).unwrap(), 0).unwrap();
    let report = analyze(&model).expect("analysis runs");
    assert_eq!(report.verdict.regime, Regime::Ac);
    assert!(
        report.verdict.flags.boundary_equality,
        "the degree comparison lands exactly on equality for this instance"
    );
    assert_eq!(Rat::from(report.cost.alpha_t), Rat::new(8, 48));

    // The expansion checks themselves: both series ratios are small, but the
    // conductance estimate for the local-minima band is loose on this family
    // (boundary 193 over 15 vertices), so the overall flag honestly reports
    // that the heuristic width bound is inconclusive here.
    let validity = report
        .validity
        .expect("unique optimum has a validity report");
    assert_eq!(Rat::from(validity.deloc_ratio), Rat::new(1, 8));
    assert_eq!(Rat::from(validity.gs_e2), Rat::new(-16, 3));
    assert_eq!(Rat::from(validity.gs_ratio), Rat::new(2, 9));
    assert_eq!(Rat::from(validity.loc_e2_bound), Rat::new(193, 30));
    let loc_ratio = validity
        .loc_ratio_bound
        .expect("lattice block has a positive gap");
    assert!(
        (loc_ratio - 193.0 / (60.0 * 2.0_f64.sqrt())).abs() < 1e-12,
        "band-width ratio bound should equal 193/(60*sqrt(8)), got {loc_ratio}"
    );
    assert!(
        !validity.valid,
        "the loose conductance bound exceeds one, so the report must not claim validity"
    );
}

#[test]
fn degenerate_optimum_still_yields_a_verdict_without_validity() {
    let c5 = parse_edge_list("0 1\n1 2\n2 3\n3 4\n0 4\n").unwrap();
    let model = CostModel::new(c5, 0).unwrap();
    let report = analyze(&model).expect("analysis still runs");
    assert!(
        report.validity.is_none(),
        "no unique optimum, no ground expansion to verify"
    );
    assert!(
        report.verdict.flags.gs_degenerate,
        "the verdict records why the theorem hypothesis fails"
    );
    assert_eq!(report.cost.gs_degeneracy, 5);
}

#[test]
fn report_round_trips_through_json() {
    let model = CostModel::new(generate_cycle(6).unwrap(), 0).unwrap();
    let report = analyze(&model).expect("analysis runs");
    let json = serde_json::to_string_pretty(&report).expect("serializes");
    let back: AnalysisReport = serde_json::from_str(&json).expect("deserializes");
    assert_eq!(back.cost.e_gs, report.cost.e_gs);
    assert_eq!(back.verdict.regime, report.verdict.regime);
    assert_eq!(back.loc.n_vertices, report.loc.n_vertices);
    assert_eq!(back.validity.unwrap().valid, report.validity.unwrap().valid);
}
