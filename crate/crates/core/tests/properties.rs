use fucik_core::nodal::{self, averaging_lemma};
use fucik_core::shooting::HalfProblem;
use fucik_core::spectrum::{bracket, solve_half_eigenvalue, symmetry_check, DEFAULT_TOL};
use fucik_core::weights::scale;
use fucik_core::{PiecewiseConstantWeight, Sign, WeightBounds};
use proptest::prelude::*;

fn weight_from(widths: &[f64], values: &[f64], factor: f64) -> PiecewiseConstantWeight {
    let total: f64 = widths.iter().sum();
    let mut bps = vec![0.0];
    let mut acc = 0.0;
    for w in &widths[..widths.len() - 1] {
        acc += w / total;
        bps.push(acc);
    }
    bps.push(1.0);
    PiecewiseConstantWeight::new(bps, values.iter().map(|v| v * factor).collect()).unwrap()
}

fn weight() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (1usize..=4).prop_flat_map(|cells| {
        (
            prop::collection::vec(0.2f64..1.0, cells),
            prop::collection::vec(0.5f64..4.0, cells),
        )
    })
}

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

#[derive(Debug, Clone)]
struct Setup {
    m: PiecewiseConstantWeight,
    n: PiecewiseConstantWeight,
    ell: f64,
    epsilon: f64,
    t: f64,
    k: usize,
    sign: Sign,
}

fn setup() -> impl Strategy<Value = Setup> {
    (weight(), weight(), 0.5f64..3.0, 0.05f64..0.5, -1.0f64..1.0, 1usize..=5, sign()).prop_map(
        |((mw, mv), (nw, nv), ell, frac, log_t, k, sign)| Setup {
            m: weight_from(&mw, &mv, 1.0),
            n: weight_from(&nw, &nv, 1.0),
            ell,
            epsilon: frac * ell,
            t: 10f64.powf(log_t),
            k,
            sign,
        },
    )
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn zero_map_strictly_decreasing(s in setup()) {
        let (m, n) = (scale(&s.m, s.epsilon, s.ell).unwrap(), scale(&s.n, s.epsilon, s.ell).unwrap());
        let p = HalfProblem::new(&m, &n, s.t, s.sign, s.ell).unwrap();
        let br = bracket(s.k, s.t, WeightBounds::enclosing(&s.m, &s.n), s.ell).unwrap();
        let mut prev = f64::INFINITY;
        for i in 0..100 {
            let lambda = br.lo + (br.hi - br.lo) * (i as f64 + 0.5) / 100.0;
            let z = p.kth_zero(lambda, s.k, 4.0 * s.ell * (br.hi / lambda).sqrt()).unwrap();
            prop_assert!(z < prev, "z_k({lambda}) = {z} after {prev}");
            prev = z;
        }
    }

    #[test]
    fn scaling_weights_and_lambda_keeps_trajectory(
        (mw, mv) in weight(),
        (nw, nv) in weight(),
        factor in 0.2f64..5.0,
        lambda in 1.0f64..200.0,
        t in 0.1f64..10.0,
        sign in sign(),
    ) {
        let (ell, eps) = (1.0, 0.125);
        let m = scale(&weight_from(&mw, &mv, 1.0), eps, ell).unwrap();
        let n = scale(&weight_from(&nw, &nv, 1.0), eps, ell).unwrap();
        let ms = scale(&weight_from(&mw, &mv, factor), eps, ell).unwrap();
        let ns = scale(&weight_from(&nw, &nv, factor), eps, ell).unwrap();
        let a = HalfProblem::new(&m, &n, t, sign, ell).unwrap().shoot(lambda).unwrap();
        let b = HalfProblem::new(&ms, &ns, t, sign, ell).unwrap().shoot(lambda / factor).unwrap();
        prop_assert_eq!(a.zeros.len(), b.zeros.len());
        for (x, y) in a.zeros.iter().zip(&b.zeros) {
            prop_assert!(rel(*x, *y) <= 1e-12, "{x} vs {y}");
        }
    }

    #[test]
    fn energy_conserved_and_continuous(
        (mw, mv) in weight(),
        (nw, nv) in weight(),
        lambda in 1.0f64..500.0,
        t in 0.1f64..10.0,
        sign in sign(),
    ) {
        let (ell, eps) = (1.0, 0.1);
        let m = scale(&weight_from(&mw, &mv, 1.0), eps, ell).unwrap();
        let n = scale(&weight_from(&nw, &nv, 1.0), eps, ell).unwrap();
        let (res, segs) = HalfProblem::new(&m, &n, t, sign, ell).unwrap().shoot_segments(lambda).unwrap();
        for s in &segs {
            let e0 = (s.omega * s.u0).powi(2) + s.du0.powi(2);
            let (u, du) = s.eval(s.end);
            let e1 = (s.omega * u).powi(2) + du.powi(2);
            prop_assert!(rel(e1, e0) <= 1e-12, "energy {e0} -> {e1}");
        }
        for w in segs.windows(2) {
            let (u, du) = w[0].eval(w[0].end);
            prop_assert!((u - w[1].u0).abs() <= 1e-12 * res.scale);
            prop_assert!((du - w[1].du0).abs() <= 1e-12 * res.scale);
        }
        // Zeros are simple.
        for z in &res.zeros {
            let s = segs.iter().find(|s| s.start <= *z && *z <= s.end).unwrap();
            prop_assert!(s.eval(*z).1.abs() > 1e-10 * res.scale);
        }
    }

    #[test]
    fn homogeneity_in_weights(s in setup(), factor in 0.25f64..4.0) {
        let bounds = WeightBounds::enclosing(&s.m, &s.n);
        let (m, n) = (scale(&s.m, s.epsilon, s.ell).unwrap(), scale(&s.n, s.epsilon, s.ell).unwrap());
        let e = solve_half_eigenvalue(s.k, s.t, s.sign, &m, &n, s.ell, bounds, DEFAULT_TOL).unwrap();

        let mult = |w: &PiecewiseConstantWeight| {
            PiecewiseConstantWeight::new(w.breakpoints().to_vec(), w.values().iter().map(|v| v * factor).collect()).unwrap()
        };
        let (m2, n2) = (mult(&s.m), mult(&s.n));
        let bounds2 = WeightBounds::enclosing(&m2, &n2);
        let (ms, ns) = (scale(&m2, s.epsilon, s.ell).unwrap(), scale(&n2, s.epsilon, s.ell).unwrap());
        let e2 = solve_half_eigenvalue(s.k, s.t, s.sign, &ms, &ns, s.ell, bounds2, DEFAULT_TOL).unwrap();
        prop_assert!(rel(e2.lambda, e.lambda / factor) <= 1e-10);
    }

    #[test]
    fn solved_eigenpairs_satisfy_structure(s in setup()) {
        let bounds = WeightBounds::enclosing(&s.m, &s.n);
        let (m, n) = (scale(&s.m, s.epsilon, s.ell).unwrap(), scale(&s.n, s.epsilon, s.ell).unwrap());
        let e = solve_half_eigenvalue(s.k, s.t, s.sign, &m, &n, s.ell, bounds, DEFAULT_TOL).unwrap();
        prop_assert!(bracket(s.k, s.t, bounds, s.ell).unwrap().contains(e.lambda, 1e-12));

        let next = solve_half_eigenvalue(s.k + 1, s.t, s.sign, &m, &n, s.ell, bounds, DEFAULT_TOL).unwrap();
        prop_assert!(e.lambda < next.lambda);

        let d = nodal::extract(&e).unwrap();
        prop_assert_eq!(d.k(), s.k);
        let total: f64 = d.lengths().iter().sum();
        prop_assert!((total - s.ell).abs() <= 1e-12 * s.ell);
        prop_assert!(nodal::check_sturm_lengths(&d, e.lambda, s.t, bounds));
        prop_assert!(nodal::check_lower_bounds(&d, s.t, bounds, s.k, s.ell).ok);
        if s.k.is_multiple_of(2) {
            let period = s.epsilon;
            prop_assert!(averaging_lemma(&d.pair_lengths(), s.ell, 4.0 * period + nodal::SLACK * s.ell).unwrap());
        }
    }

    #[test]
    fn mirrored_problem_symmetry(s in setup()) {
        let bounds = WeightBounds::enclosing(&s.m, &s.n);
        let (m, n) = (scale(&s.m, s.epsilon, s.ell).unwrap(), scale(&s.n, s.epsilon, s.ell).unwrap());
        let gap = symmetry_check(s.k, s.t, s.sign, &m, &n, s.ell, bounds, DEFAULT_TOL).unwrap();
        prop_assert!(gap <= 1e-9);
    }

    #[test]
    fn averaging_lemma_holds_for_close_values(
        base in 0.1f64..10.0,
        eps in 0.01f64..1.0,
        fracs in prop::collection::vec(0.0f64..0.999, 1..12),
    ) {
        // Every pairwise gap is below eps because all values lie in [base, base + eps).
        let values: Vec<f64> = fracs.iter().map(|f| base + f * eps).collect();
        let total: f64 = values.iter().sum();
        prop_assert!(averaging_lemma(&values, total, eps).unwrap());
    }
}
