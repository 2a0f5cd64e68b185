use std::f64::consts::{FRAC_PI_2, PI};

use spinboost::sweep::{export, find_extrema, render, SurfaceEvaluator};
use spinboost::{
    run_sweep, run_sweep_with, Execution, ExportFormat, ExtremumKind, Parametrization, PartitionSelector, SweepGrid,
    SweepSpec,
};

fn small_spec() -> SweepSpec {
    let mut spec = SweepSpec::new(Parametrization::One, FRAC_PI_2, PartitionSelector::MomentumVsSpin);
    spec.n_theta = 2;
    spec.n_phi = 2;
    spec.theta_range = [0.3, 1.2];
    spec.phi_range = [0.0, PI];
    spec
}

#[test]
fn two_by_two_csv_layout() {
    let grid = run_sweep(&small_spec()).unwrap();
    let csv = grid.to_csv();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], "theta,phi,delta_E,Ap+Bp,As+Bs");
    let eval = SurfaceEvaluator::new(&grid.spec).unwrap();
    for (line, (t, p)) in lines[1..].iter().zip([(0.3, 0.0), (0.3, PI), (1.2, 0.0), (1.2, PI)]) {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!(cols.len(), 5);
        assert!((cols[0] - t).abs() < 1e-11 && (cols[1] - p).abs() < 1e-11);
        assert!((cols[2] - eval.delta_e(t, p)).abs() < 1e-11);
        assert!((cols[3] + cols[4] - cols[2]).abs() < 1e-11);
    }
}

#[test]
fn reexport_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let grid = run_sweep(&small_spec()).unwrap();
    for format in [ExportFormat::Csv, ExportFormat::Json] {
        let a = dir.path().join("a");
        let b = dir.path().join("b");
        export(&grid, format, &a).unwrap();
        export(&grid.rounded(), format, &b).unwrap();
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap(), "{format:?}");
    }
    let json = render(&grid, ExportFormat::Json);
    let back = SweepGrid::from_json(&json).unwrap();
    assert_eq!(back, grid.rounded());
    assert_eq!(render(&back, ExportFormat::Json), json);
    assert_eq!(render(&back, ExportFormat::Csv), render(&grid, ExportFormat::Csv));
}

#[test]
fn conserved_cells_print_as_zero() {
    let spec = SweepSpec::new(Parametrization::One, 0.0, PartitionSelector::AliceVsBob);
    let mut spec = spec;
    spec.n_theta = 3;
    spec.n_phi = 3;
    let csv = run_sweep(&spec).unwrap().to_csv();
    for line in csv.lines().skip(1) {
        assert!(line.split(',').skip(2).all(|c| c == "0"), "{line}");
    }
}

#[test]
fn serial_and_parallel_agree() {
    let mut spec = SweepSpec::new(Parametrization::Three, 0.8, PartitionSelector::OneVsThree(None));
    spec.n_theta = 9;
    spec.n_phi = 13;
    spec.chi = 1.1;
    let a = run_sweep_with(&spec, Execution::Serial).unwrap();
    let b = run_sweep_with(&spec, Execution::Parallel).unwrap();
    assert_eq!(a, b);
}

#[test]
fn spec_json_accepts_expressions() {
    let spec = SweepSpec::from_json(
        r#"{"parametrization": 2, "omega": "pi/2", "partition": "1v3", "n_theta": 5, "n_phi": 7, "phi_range": [0, "2pi"]}"#,
    )
    .unwrap();
    assert_eq!(spec.omega, Some(FRAC_PI_2));
    assert_eq!(spec.phi_range, [0.0, 2.0 * PI]);
    assert!(SweepSpec::from_json(r#"{"parametrization": 4, "omega": 1, "partition": "ps"}"#).is_err());
    assert!(SweepSpec::from_json(r#"{"parametrization": 1, "omega": 1, "partition": "ps", "typo": 1}"#).is_err());
}

#[test]
fn refined_extrema_stay_on_the_surface() {
    let mut spec = SweepSpec::new(Parametrization::One, FRAC_PI_2, PartitionSelector::OneVsThree(None));
    spec.n_theta = 21;
    spec.n_phi = 21;
    let grid = run_sweep(&spec).unwrap();
    let eval = SurfaceEvaluator::new(&spec).unwrap();
    let coarse = find_extrema(&grid, false).unwrap();
    let fine = find_extrema(&grid, true).unwrap();
    assert!(!fine.is_empty());
    let best_coarse = coarse.iter().filter(|e| e.kind == ExtremumKind::Max).map(|e| e.value).fold(f64::MIN, f64::max);
    for e in &fine {
        assert!((eval.delta_e(e.theta, e.phi) - e.value).abs() < 1e-12);
    }
    let best_fine = fine.iter().filter(|e| e.kind == ExtremumKind::Max).map(|e| e.value).fold(f64::MIN, f64::max);
    assert!(best_fine >= best_coarse - 1e-12);
}
