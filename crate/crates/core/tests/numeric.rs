use expbij::numeric::{
    distinct_solutions, probe_bijectivity, solve, solve_multistart, NumericMapInstance, SolveOptions, SolveStatus,
};
use expbij::{analyze, Caps, Classification, ExponentialMapSpec, RobustSelection};
use nalgebra::DVector;

fn spec(w: &[&[i64]], wt: &[&[i64]]) -> ExponentialMapSpec {
    ExponentialMapSpec::from_ints(w, wt).unwrap()
}

/// Roots of `c₁eˣ + c₂e⁻ˣ = y` by bisection on each side of the minimum.
fn bisection_roots(c1: f64, c2: f64, y: f64) -> Vec<f64> {
    let f = |x: f64| c1 * x.exp() + c2 * (-x).exp() - y;
    let x_min = 0.5 * (c2 / c1).ln();
    if f(x_min) > 0.0 {
        return vec![];
    }
    let root = |mut lo: f64, mut hi: f64| {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (f(mid) > 0.0) == (f(lo) > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    vec![root(x_min - 50.0, x_min), root(x_min, x_min + 50.0)]
}

#[test]
fn non_injective_map_has_two_preimages() {
    let s = spec(&[&[1, 1]], &[&[1, -1]]);
    let a = analyze(&s, Caps::default(), RobustSelection::default()).unwrap();
    assert_eq!(a.classification, Classification::NotInjective);

    let (c1, c2, y) = (1.0, 2.0, 5.0);
    let expected = bisection_roots(c1, c2, y);
    let instance = NumericMapInstance::from_spec(&s, &[c1, c2]).unwrap();
    let results = solve_multistart(&instance, &DVector::from_element(1, y), 12, 3, &SolveOptions::default()).unwrap();
    let mut found: Vec<f64> = distinct_solutions(&results, 1e-6).into_iter().map(|x| x[0]).collect();
    found.sort_by(f64::total_cmp);
    assert_eq!(found.len(), 2);
    for (a, b) in found.iter().zip(&expected) {
        assert!((a - b).abs() < 1e-8, "{a} vs {b}");
    }

    let probe = probe_bijectivity(&s, a.classification, 10, 8, 1).unwrap();
    assert!(probe.contradictions.is_empty());
    assert!(probe.multiple_preimages > 0);
}

#[test]
fn example_map_round_trip() {
    let s = spec(&[&[1, 0, -1], &[0, 1, 0]], &[&[1, 0, -1], &[0, 1, -1]]);
    let instance = NumericMapInstance::from_spec(&s, &[1.0, 1.0, 1.0]).unwrap();
    let x_star = DVector::from_vec(vec![0.3, -0.7]);
    let y = instance.evaluate(&x_star).unwrap();
    let r = solve(&instance, &y, &DVector::zeros(2), &SolveOptions::default()).unwrap();
    let SolveStatus::Converged { x, .. } = r.status else { panic!("{:?}", r.status) };
    assert!(x.iter().zip(x_star.iter()).all(|(a, b)| (a - b).abs() < 1e-6));
}

#[test]
fn target_outside_the_cone_is_not_converged() {
    let s = spec(&[&[1, 0], &[0, 1]], &[&[1, 0], &[0, 1]]);
    let instance = NumericMapInstance::from_spec(&s, &[1.0, 1.0]).unwrap();
    let r = solve(&instance, &DVector::from_vec(vec![-1.0, 2.0]), &DVector::zeros(2), &SolveOptions::default()).unwrap();
    assert!(!matches!(r.status, SolveStatus::Converged { .. }), "{:?}", r.status);
}

#[test]
fn bijective_example_probe_is_consistent() {
    let s = spec(&[&[1, 0, -1], &[0, 1, 0]], &[&[1, 1, 0], &[0, 1, 1]]);
    let a = analyze(&s, Caps::default(), RobustSelection::default()).unwrap();
    assert_eq!(a.classification, Classification::BijectiveForAllC);
    let probe = probe_bijectivity(&s, a.classification, 30, 4, 9).unwrap();
    assert!(probe.contradictions.is_empty(), "{:?}", probe.contradictions);
    assert_eq!(probe.multiple_preimages, 0);
}
