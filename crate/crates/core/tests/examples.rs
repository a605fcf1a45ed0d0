mod common;

use fucik_core::homog::{self, ExperimentConfig};
use fucik_core::nodal;
use fucik_core::spectrum::{solve_half_eigenvalue, trivial_curves, DEFAULT_TOL};
use fucik_core::weights::scale;
use fucik_core::{PiecewiseConstantWeight, Sign, WeightBounds};

use common::{rel, Oracle, RawWeight};

// Frozen from the RK4 oracle before the closed-form solver existed.
const TWO_PHASE_K2_HALF: f64 = 44.14675935230;
const TWO_PHASE_GROUND_STATE: f64 = 4.918020434193;

fn two_phase() -> PiecewiseConstantWeight {
    PiecewiseConstantWeight::two_phase(1.0, 3.0, 1.0).unwrap()
}

fn unit() -> PiecewiseConstantWeight {
    PiecewiseConstantWeight::constant(1.0, 1.0).unwrap()
}

#[test]
fn two_phase_second_eigenvalue_matches_frozen_oracle() {
    let (ell, eps) = (1.0, 0.125);
    let bounds = WeightBounds::enclosing(&two_phase(), &unit());
    let m = scale(&two_phase(), eps, ell).unwrap();
    let n = scale(&unit(), eps, ell).unwrap();
    let e = solve_half_eigenvalue(2, 0.5, Sign::Plus, &m, &n, ell, bounds, DEFAULT_TOL).unwrap();
    assert!(rel(e.lambda, TWO_PHASE_K2_HALF) <= 1e-6, "{}", e.lambda);

    let (rm, rn) = (RawWeight::halves(1.0, 3.0), RawWeight::constant(1.0));
    let oracle = Oracle { m: &rm, n: &rn, epsilon: eps, ell, t: 0.5, sign: 1.0, steps: 1 << 17 };
    assert!(rel(oracle.eigenvalue(2), TWO_PHASE_K2_HALF) <= 1e-6);
}

#[test]
fn two_phase_ground_state_matches_frozen_oracle() {
    let (ell, eps) = (1.0, 0.25);
    let m = scale(&two_phase(), eps, ell).unwrap();
    let (plus, minus) = trivial_curves(&m, &m, ell, DEFAULT_TOL).unwrap();
    assert!(rel(plus, TWO_PHASE_GROUND_STATE) <= 1e-6, "{plus}");
    assert!(rel(minus, TWO_PHASE_GROUND_STATE) <= 1e-6, "{minus}");

    let rm = RawWeight::halves(1.0, 3.0);
    let oracle = Oracle { m: &rm, n: &rm, epsilon: eps, ell, t: 1.0, sign: 1.0, steps: 1 << 17 };
    assert!(rel(oracle.eigenvalue(1), TWO_PHASE_GROUND_STATE) <= 1e-6);
}

#[test]
fn oracle_reproduces_closed_forms() {
    let w = RawWeight::constant(1.0);
    let ell = std::f64::consts::PI;
    let o = Oracle { m: &w, n: &w, epsilon: 1.0, ell, t: 4.0, sign: 1.0, steps: 1 << 16 };
    assert!(rel(o.eigenvalue(2), 2.25) <= 1e-8);
    let o = Oracle { t: 1.0, ..o };
    assert!(rel(o.eigenvalue(3), 9.0) <= 1e-8);
}

fn solve_two_phase(k: usize, t: f64, sign: Sign, eps: f64, ell: f64) -> fucik_core::spectrum::HalfEigenvalue {
    let bounds = WeightBounds::enclosing(&two_phase(), &unit());
    let m = scale(&two_phase(), eps, ell).unwrap();
    let n = scale(&unit(), eps, ell).unwrap();
    solve_half_eigenvalue(k, t, sign, &m, &n, ell, bounds, DEFAULT_TOL).unwrap()
}

#[test]
fn equal_lengths_within_two_periods() {
    let ell = 1.0;
    let eps = ell / 16.0;
    for sign in Sign::BOTH {
        let e = solve_two_phase(4, 1.0, sign, eps, ell);
        let d = nodal::extract(&e).unwrap();
        let r = nodal::check_equal_lengths(&d, eps);
        assert!(r.ok(), "{r:?}");
        assert!(r.gap_plus < 2.0 * eps && r.gap_minus < 2.0 * eps);
    }
}

#[test]
fn pair_lengths_within_four_periods() {
    let ell = 1.0;
    let eps = ell / 32.0;
    for t in [0.5, 1.0, 2.0] {
        let e = solve_two_phase(4, t, Sign::Plus, eps, ell);
        let d = nodal::extract(&e).unwrap();
        let r = nodal::check_pair_lengths(&d, eps, 4, ell);
        assert!(r.ok, "{r:?}");
        assert_eq!(r.deviations.len(), 2);
    }
}

#[test]
fn nodal_lower_bounds_for_two_phase() {
    let ell = 1.0;
    let bounds = WeightBounds::new(1.0, 3.0).unwrap();
    for sign in Sign::BOTH {
        for eps in [0.25, 0.125, 1.0 / 16.0] {
            let e = solve_two_phase(3, 0.5, sign, eps, ell);
            let d = nodal::extract(&e).unwrap();
            let r = nodal::check_lower_bounds(&d, 0.5, bounds, 3, ell);
            assert!(r.ok, "{r:?}");
            assert!(nodal::check_sturm_lengths(&d, e.lambda, 0.5, bounds));
        }
    }
}

fn rate_config(k_list: Vec<usize>, t_list: Vec<f64>) -> ExperimentConfig {
    ExperimentConfig {
        m: two_phase(),
        n: unit(),
        ell: 1.0,
        k_list,
        t_list,
        signs: Sign::BOTH.to_vec(),
        epsilons: homog::default_epsilons(1.0),
        tol: DEFAULT_TOL,
    }
}

#[test]
fn errors_decrease_and_converge() {
    let report = homog::run_rate_experiment(&rate_config(vec![1, 2, 3], vec![0.25, 1.0, 4.0])).unwrap();
    assert!(report.is_complete());
    for s in &report.series {
        assert!(homog::check_tail_convergence(s, report.ell), "{:?}", s.key);
        let first = s.rows.first().unwrap().abs_err;
        let last = s.rows.last().unwrap().abs_err;
        assert!(last <= first, "{:?}", s.key);
    }
}

#[test]
fn k2_constants_stable_for_small_t() {
    let report = homog::run_rate_experiment(&rate_config(vec![2], vec![0.25, 0.5, 1.0])).unwrap();
    let check = homog::check_k2_rate(&report);
    assert!(check.ok, "{check:?}");
    assert_eq!(check.constants.len(), 3);

    let quarter = report.get(2, 0.25, Sign::Plus).unwrap();
    let one = report.get(2, 1.0, Sign::Plus).unwrap();
    assert!(quarter.c_emp.is_finite() && one.c_emp.is_finite());
    // Errors at t = 1/4 stay within γ(1/4)/γ(1) = 8 of those at t = 1.
    for (a, b) in quarter.rows.iter().zip(&one.rows) {
        assert!(a.abs_err <= 8.0 * b.abs_err + 10.0 * DEFAULT_TOL * a.lambda_0);
    }
}

#[test]
fn rate_bound_budget_controls() {
    let report = homog::run_rate_experiment(&rate_config(vec![2], vec![1.0])).unwrap();
    let c = report.series.iter().map(|s| s.c_emp).fold(0.0, f64::max);
    assert!(c > 0.0);
    assert!(homog::check_rate_bound(&report, 10.0 * c));
    assert!(!homog::check_rate_bound(&report, c / 2.0));
}
