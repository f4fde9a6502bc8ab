use expbij::matroid;
use expbij::ray::{ray_limit, RayLimit};
use expbij::{
    analyze, verify_certificate, Caps, ExponentialMapSpec, Rational, RationalMatrix, Report, RobustSelection,
    SignVector, Status,
};
use num::{Signed, Zero};
use proptest::prelude::*;

fn full_rank(d: usize, n: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(-2i64..=2, d * n)
        .prop_map(move |v| RationalMatrix::from_ints(&v.chunks(n).collect::<Vec<_>>()).unwrap())
        .prop_filter("full row rank", |m| m.is_full_row_rank())
}

fn pair() -> impl Strategy<Value = ExponentialMapSpec> {
    (1usize..=3, 0usize..=3).prop_flat_map(|(d, extra)| {
        (full_rank(d, d + extra), full_rank(d, d + extra)).prop_map(|(w, wt)| ExponentialMapSpec::new(w, wt).unwrap())
    })
}

fn invertible(d: usize) -> impl Strategy<Value = RationalMatrix> {
    full_rank(d, d)
}

fn sign_vector(n: usize) -> impl Strategy<Value = SignVector> {
    prop::collection::vec(0u8..3, n).prop_map(|v| {
        v.iter().map(|s| ["0", "+", "-"][*s as usize]).collect::<String>().parse().unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reports_round_trip_and_verify(s in pair()) {
        let a = analyze(&s, Caps::default(), RobustSelection::default()).unwrap();
        let r = Report::new(&s, &a);
        let text = r.to_canonical_json();
        let back = Report::from_json(&text).unwrap();
        prop_assert_eq!(&back, &r);
        prop_assert_eq!(back.to_canonical_json(), text);
        prop_assert!(verify_certificate(&back));
        for c in &r.conditions {
            prop_assert!(c.status != Status::Fails || c.certificate.is_some(), "{} fails bare", c.id);
            prop_assert!(c.status != Status::Inconclusive || c.reason.is_some());
        }
    }

    #[test]
    fn verdicts_depend_only_on_the_kernels(
        (s, t1, t2) in pair().prop_flat_map(|s| {
            let d = s.coefficients().rows();
            (Just(s), invertible(d), invertible(d))
        })
    ) {
        let moved = ExponentialMapSpec::new(
            t1.mul(s.coefficients()).unwrap(),
            t2.mul(s.exponents()).unwrap(),
        ).unwrap();
        let report = |x: &ExponentialMapSpec| {
            Report::new(x, &analyze(x, Caps::default(), RobustSelection::default()).unwrap()).without_input()
        };
        prop_assert_eq!(report(&s), report(&moved));
    }

    #[test]
    fn injectivity_is_symmetric(s in pair()) {
        let swapped = ExponentialMapSpec::new(s.exponents().clone(), s.coefficients().clone()).unwrap();
        let a = analyze(&s, Caps::default(), RobustSelection::none()).unwrap();
        let b = analyze(&swapped, Caps::default(), RobustSelection::none()).unwrap();
        prop_assert_eq!(a.injectivity(), b.injectivity());
    }

    #[test]
    fn vectors_are_closed_under_composition(w in (1usize..=3, 0usize..=3).prop_flat_map(|(d, e)| full_rank(d, d + e))) {
        let vectors = matroid::vectors(&w, 12).unwrap();
        for a in vectors.iter() {
            for b in vectors.iter() {
                prop_assert!(vectors.contains(&a.compose(b).unwrap()));
            }
            prop_assert!(vectors.contains(&a.negate()));
        }
    }

    #[test]
    fn sign_vector_text_round_trips(v in (1usize..=10).prop_flat_map(sign_vector)) {
        let back: SignVector = v.to_string().parse().unwrap();
        prop_assert_eq!(back, v);
        prop_assert!(v.leq(&v).unwrap());
        prop_assert_eq!(v.compose(&v).unwrap(), v);
    }

    #[test]
    fn ray_limits_are_consistent(
        (s, x) in pair().prop_flat_map(|s| {
            let d = s.exponents().rows();
            (Just(s), prop::collection::vec(-3i64..=3, d).prop_filter("nonzero", |v| v.iter().any(|x| *x != 0)))
        })
    ) {
        let c: Vec<Rational> = (0..s.n()).map(|i| Rational::from_integer((i as i64 + 1).into())).collect();
        let x: Vec<Rational> = x.into_iter().map(|v| Rational::from_integer(v.into())).collect();
        let (partition, limit) = ray_limit(&s, &c, &x).unwrap();
        let covered: usize = partition.levels.values().map(Vec::len).sum();
        prop_assert_eq!(covered, s.n());
        match limit {
            RayLimit::Diverges { lambda, direction } => {
                prop_assert!(lambda.is_positive());
                prop_assert!(direction.iter().any(|v| !v.is_zero()));
            }
            RayLimit::Converges { .. } => {
                prop_assert!(partition.lambda_max.map_or(true, |l| !l.is_positive()));
            }
        }
    }
}
