//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use expbij::analyzer::implication_violations;
use expbij::certificate::Certificate;
use expbij::crn::{analyze_network, CriterionStatus, GeneralizedNetwork, NetworkReport};
use expbij::matroid::{self, conformal_decompose, minty_alternative, Chirotope, MintyWitness};
use expbij::numeric::{probe_bijectivity, solve_multistart, NumericMapInstance, SolveOptions, SolveStatus};
use expbij::{
    analyze, verify_certificate, Analysis, Caps, Classification, ExponentialMapSpec, Rational, RationalMatrix,
    Report, RobustSelection, SignVector, SignVectorSet, Status, SubspaceBasis,
};
use nalgebra::DVector;
use num::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_0001;
const EXAMPLE_TIME_LIMIT: Duration = Duration::from_secs(30);
const CORPUS_SIZE: usize = 200;
const CORPUS_TIME_LIMIT: Duration = Duration::from_secs(300);
const ENTRY_RANGE: i64 = 3;
const ORTHOGONALITY_MAX_N: usize = 6;
const MINTY_MAX_N: usize = 5;
const MINTY_SUBSPACES_PER_N: usize = 6;
const TRANSFORMS_PER_FIXTURE: usize = 50;
const ROUND_TRIPS: usize = 100;
const RESIDUAL_TOL: f64 = 1e-10;
const ARGUMENT_TOL: f64 = 1e-6;
const PROBE_TRIALS: usize = 20;
const PROBE_STARTS: usize = 4;
const ENUMERATION_CAP: usize = 12;

#[derive(Default)]
struct Checks {
    total: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Checks {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.total += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }
}

fn ints(rows: &[&[i64]]) -> RationalMatrix {
    RationalMatrix::from_ints(rows).unwrap()
}

fn spec(w: &[&[i64]], wt: &[&[i64]]) -> ExponentialMapSpec {
    ExponentialMapSpec::new(ints(w), ints(wt)).unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn sv(alpha: Rational) -> ExponentialMapSpec {
    let r = |v: &[i64]| v.iter().map(|&x| q(x, 1)).collect::<Vec<_>>();
    let mut top = r(&[1, 1, 0, 0, -1]);
    top.push(alpha);
    let wt = RationalMatrix::from_rows(vec![top, r(&[1, -1, 0, 0, 0, 0]), r(&[0, 0, 1, -1, 0, 0])]).unwrap();
    let w = ints(&[&[0, 0, 1, 1, -1, 0], &[1, -1, 0, 0, 0, -1], &[0, 0, 1, -1, 0, 0]]);
    ExponentialMapSpec::new(w, wt).unwrap()
}

fn whole_space_example() -> ExponentialMapSpec {
    spec(&[&[1, 0, -1], &[0, 1, 0]], &[&[1, 0, -1], &[0, 1, -1]])
}

fn pointed_exponent_example() -> ExponentialMapSpec {
    spec(&[&[1, 0, -1], &[0, 1, 0]], &[&[1, 1, 0], &[0, 1, 1]])
}

fn closure_example() -> ExponentialMapSpec {
    spec(&[&[1, 1, -1]], &[&[1, 0, -1]])
}

fn face_example() -> ExponentialMapSpec {
    spec(&[&[1, 1, 0], &[0, 1, 1]], &[&[1, 0, -1], &[0, 1, 0]])
}

fn fixtures() -> Vec<(String, ExponentialMapSpec)> {
    let mut out = vec![
        ("birch".to_string(), spec(&[&[1, 0, 1], &[0, 1, 1]], &[&[1, 0, 1], &[0, 1, 1]])),
        ("whole-space cone".to_string(), whole_space_example()),
        ("pointed exponent cone".to_string(), pointed_exponent_example()),
        ("closure".to_string(), closure_example()),
        ("face covering".to_string(), face_example()),
    ];
    for (n, d) in [(1, 2), (3, 2), (1, 1), (2, 1), (3, 1)] {
        out.push((format!("sign-vector alpha={n}/{d}"), sv(q(n, d))));
    }
    out
}

fn run(s: &ExponentialMapSpec) -> Analysis {
    analyze(s, Caps::default(), RobustSelection::default()).unwrap()
}

fn random_full_rank(rng: &mut ChaCha8Rng, d: usize, n: usize, range: i64) -> RationalMatrix {
    loop {
        let rows: Vec<Vec<i64>> = (0..d).map(|_| (0..n).map(|_| rng.gen_range(-range..=range)).collect()).collect();
        let m = RationalMatrix::from_ints(&rows).unwrap();
        if m.is_full_row_rank() {
            return m;
        }
    }
}

/// Pairs with `d` cycling through 1..=4 and `n ∈ [d, d + 4]`.
fn corpus() -> Vec<ExponentialMapSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..CORPUS_SIZE)
        .map(|k| {
            let d = 1 + k % 4;
            let n = d + rng.gen_range(0..=4);
            let w = random_full_rank(&mut rng, d, n, ENTRY_RANGE);
            let wt = random_full_rank(&mut rng, d, n, ENTRY_RANGE);
            ExponentialMapSpec::new(w, wt).unwrap()
        })
        .collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Fraction-free elimination on integer entries.
fn bareiss(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| a[r][k] != 0) else { return 0 };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn integer_minor(m: &RationalMatrix, cols: &[usize]) -> i128 {
    let a = (0..m.rows())
        .map(|i| cols.iter().map(|&j| m.get(i, j).to_integer().to_i128().unwrap()).collect())
        .collect();
    bareiss(a)
}

/// Signs of `(det W_I, det W̃_I)` over all `d`-subsets.
fn minor_signs(s: &ExponentialMapSpec) -> Vec<(i128, i128)> {
    let (w, wt) = (s.coefficients(), s.exponents());
    subsets(s.n(), w.rows())
        .iter()
        .map(|i| (integer_minor(w, i).signum(), integer_minor(wt, i).signum()))
        .collect()
}

fn conforms(small: &SignVector, big: &SignVector) -> bool {
    small.plus() & !big.plus() == 0 && small.minus() & !big.minus() == 0
}

fn only_zero(set: &SignVectorSet) -> bool {
    set.iter().all(SignVector::is_zero)
}

struct OracleForms {
    injective_signs: bool,
    injective_mirrored: bool,
    injective_minors: bool,
    closure_signs: bool,
    closure_minors: bool,
    both_signs: bool,
    both_minors: bool,
}

fn oracle_forms(s: &ExponentialMapSpec) -> OracleForms {
    let (w, wt) = (s.coefficients(), s.exponents());
    let d = w.rows();
    let vectors = matroid::vectors(w, ENUMERATION_CAP).unwrap();
    let exponent_vectors = matroid::vectors(wt, ENUMERATION_CAP).unwrap();
    let covectors = matroid::covectors(w, ENUMERATION_CAP).unwrap();
    let exponent_covectors = matroid::covectors(wt, ENUMERATION_CAP).unwrap();

    let products: Vec<i128> = minor_signs(s).iter().map(|(a, b)| a * b).collect();
    let injective_minors =
        (products.iter().all(|p| *p >= 0) || products.iter().all(|p| *p <= 0)) && products.iter().any(|p| *p != 0);
    let relevant: Vec<i128> =
        minor_signs(s).iter().filter(|(a, _)| *a != 0).map(|(a, b)| a * b).collect();
    let closure_minors = relevant.iter().all(|p| *p > 0) || relevant.iter().all(|p| *p < 0);
    let both_minors = products.iter().all(|p| *p > 0) || products.iter().all(|p| *p < 0);

    let closure_signs = vectors.iter().all(|v| exponent_vectors.iter().any(|t| conforms(v, t)));
    let nonzero: Vec<&SignVector> = covectors.iter().filter(|t| !t.is_zero()).collect();
    let minimal = |t: &SignVector| !nonzero.iter().any(|u| u.support() != t.support() && u.support() & !t.support() == 0);
    let both_signs = vectors == exponent_vectors
        && nonzero.iter().all(|t| minimal(t) == (t.zeros().count_ones() as usize + 1 == d));

    OracleForms {
        injective_signs: only_zero(&vectors.intersection(&exponent_covectors)),
        injective_mirrored: only_zero(&exponent_vectors.intersection(&covectors)),
        injective_minors,
        closure_signs,
        closure_minors,
        both_signs,
        both_minors,
    }
}

fn status_of(b: bool) -> Status {
    if b {
        Status::Holds
    } else {
        Status::Fails
    }
}

fn criterion_1() -> Checks {
    let mut c = Checks::default();
    let timed = |c: &mut Checks, name: &str, s: &ExponentialMapSpec| {
        let start = Instant::now();
        let a = run(s);
        let took = start.elapsed();
        c.check(took < EXAMPLE_TIME_LIMIT, || format!("{name}: took {took:?}"));
        a
    };

    let a = timed(&mut c, "whole-space cone", &whole_space_example());
    c.check(a.classification == Classification::BijectiveForAllC, || {
        format!("whole-space cone: {}", a.classification.as_str())
    });
    let (coefficient, exponent) = (a.coefficient_cone.clone().unwrap(), a.exponent_cone.clone().unwrap());
    c.check(exponent.whole_space && !coefficient.whole_space, || "whole-space cone: cone flags".into());

    let a = timed(&mut c, "pointed exponent cone", &pointed_exponent_example());
    c.check(a.classification == Classification::BijectiveForAllC, || {
        format!("pointed exponent cone: {}", a.classification.as_str())
    });
    let (coefficient, exponent) = (a.coefficient_cone.clone().unwrap(), a.exponent_cone.clone().unwrap());
    c.check(exponent.all_plus && !coefficient.all_plus, || "pointed exponent cone: all-plus flags".into());

    for (n, d, expected) in [
        (1, 2, Classification::BijectiveForAllC),
        (3, 2, Classification::BijectiveForAllC),
        (1, 1, Classification::InjectiveNotBijective),
        (2, 1, Classification::InjectiveNotBijective),
        (3, 1, Classification::InjectiveNotBijective),
    ] {
        let a = timed(&mut c, "sign-vector example", &sv(q(n, d)));
        c.check(a.classification == expected, || {
            format!("sign-vector example alpha={n}/{d}: {} (expected {})", a.classification.as_str(), expected.as_str())
        });
    }

    let a = timed(&mut c, "closure example", &closure_example());
    c.check(a.classification == Classification::BijectiveForAllC, || "closure example: classification".into());
    c.check(a.status("cc") == Status::Fails && a.status("iv") == Status::Holds, || {
        format!("closure example: cc={:?} iv={:?}", a.status("cc"), a.status("iv"))
    });

    let a = timed(&mut c, "face covering", &face_example());
    c.check(a.status("cc-prime") == Status::Holds, || "face covering: cc-prime".into());
    c.check(a.status("ii") == Status::Fails, || "face covering: ii".into());
    let faces = |s: &expbij::certificate::ConeSummary| s.faces.iter().map(|f| f.to_string()).collect::<Vec<_>>();
    let exponent_faces = faces(a.exponent_cone.as_ref().unwrap());
    let coefficient_faces = faces(a.coefficient_cone.as_ref().unwrap());
    c.check(exponent_faces == ["000", "0+0"], || format!("face covering: exponent faces {exponent_faces:?}"));
    c.check(coefficient_faces == ["000", "0++", "++0"], || {
        format!("face covering: coefficient faces {coefficient_faces:?}, expected [\"000\", \"0++\", \"++0\"]")
    });
    c
}

fn criterion_2() -> Checks {
    let mut c = Checks::default();
    let start = Instant::now();
    let mut dims = [0usize; 5];
    for (k, s) in corpus().iter().enumerate() {
        dims[s.coefficients().rows()] += 1;
        let o = oracle_forms(s);
        c.check(o.injective_signs == o.injective_minors, || format!("#{k}: injectivity sign vs minor form"));
        c.check(o.injective_signs == o.injective_mirrored, || format!("#{k}: injectivity mirrored form"));
        c.check(o.closure_signs == o.closure_minors, || format!("#{k}: closure sign vs minor form"));
        c.check(o.both_signs == o.both_minors, || format!("#{k}: two-sided robustness statements"));
        let a = match analyze(s, Caps::default(), RobustSelection::default()) {
            Ok(a) => a,
            Err(e) => {
                c.check(false, || format!("#{k}: analysis failed: {e}"));
                continue;
            }
        };
        for (id, expected) in [
            ("i-signs", o.injective_signs),
            ("i-minors", o.injective_minors),
            ("cc", o.closure_signs),
            ("robust-exponents", o.closure_minors),
            ("robust-both", o.both_minors),
        ] {
            c.check(a.status(id) == status_of(expected), || format!("#{k}: {id} = {:?}", a.status(id)));
        }
    }
    let took = start.elapsed();
    c.check(took < CORPUS_TIME_LIMIT, || format!("corpus took {took:?}"));
    c.note(format!("{CORPUS_SIZE} pairs, per d {:?}, {took:.1?}", &dims[1..]));
    c
}

fn criterion_3() -> Checks {
    let mut c = Checks::default();
    let mut decompositions = 0;
    for (k, s) in corpus().iter().enumerate() {
        for w in [s.coefficients(), s.exponents()] {
            let n = w.cols();
            let direct = matroid::cocircuits(w).unwrap();
            let from_chirotope = matroid::cocircuits_from_chirotope(&Chirotope::of(w).unwrap());
            c.check(direct == from_chirotope, || format!("#{k}: cocircuits differ"));
            let vectors = matroid::vectors(w, ENUMERATION_CAP).unwrap();
            if n <= ORTHOGONALITY_MAX_N {
                let covectors = matroid::covectors(w, ENUMERATION_CAP).unwrap();
                let pairwise = vectors.iter().all(|v| covectors.iter().all(|t| v.is_orthogonal(t).unwrap()));
                c.check(pairwise, || format!("#{k}: a vector is not orthogonal to a covector"));
                c.check(vectors.orthogonal_set(ENUMERATION_CAP).unwrap() == covectors, || {
                    format!("#{k}: covectors are not the orthogonal set of the vectors")
                });
                c.check(covectors.orthogonal_set(ENUMERATION_CAP).unwrap() == vectors, || {
                    format!("#{k}: vectors are not the orthogonal set of the covectors")
                });
            }
            let circuits = matroid::circuits(w).unwrap();
            let dim = n - w.rows();
            for tau in vectors.iter().filter(|t| !t.is_zero()) {
                decompositions += 1;
                let parts = conformal_decompose(tau, &circuits).unwrap();
                let bound = dim.min(tau.support().count_ones() as usize);
                let union = parts.iter().fold(0u64, |m, p| m | p.support());
                c.check(parts.len() <= bound, || format!("#{k}: {tau} needs {} circuits", parts.len()));
                c.check(parts.iter().all(|p| conforms(p, tau) && circuits.contains(p)), || {
                    format!("#{k}: non-conformal part for {tau}")
                });
                c.check(union == tau.support(), || format!("#{k}: parts do not cover {tau}"));
            }
        }
    }
    c.note(format!("{decompositions} conformal decompositions"));
    c
}

fn criterion_4() -> Checks {
    let mut c = Checks::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    let mut sigmas = 0;
    for n in 1..=MINTY_MAX_N {
        for t in 0..MINTY_SUBSPACES_PER_N {
            let k = 1 + t % n;
            let a = random_full_rank(&mut rng, k, n, 2);
            let s = SubspaceBasis::new(n, a.row_vectors()).unwrap();
            let signs = matroid::covectors(&a, ENUMERATION_CAP).unwrap();
            let complement_signs = matroid::vectors(&a, ENUMERATION_CAP).unwrap();
            for sigma in SignVector::enumerate_all(n, ENUMERATION_CAP).unwrap().iter().filter(|x| !x.is_zero()) {
                sigmas += 1;
                let first = signs.iter().any(|tau| tau.plus() & sigma.support() == sigma.plus()
                    && tau.minus() & sigma.support() == sigma.minus());
                let second = complement_signs.iter().any(|rho| !rho.is_zero() && conforms(rho, sigma));
                c.check(first != second, || format!("n={n} {sigma}: alternatives {first} and {second}"));
                match minty_alternative(&s, sigma) {
                    Ok(witness) => {
                        let branch = matches!(witness, MintyWitness::InSubspace(_));
                        c.check(branch == first, || format!("n={n} {sigma}: wrong branch"));
                        c.check(witness.verify(&s, sigma), || format!("n={n} {sigma}: witness does not verify"));
                    }
                    Err(e) => c.check(false, || format!("n={n} {sigma}: {e}")),
                }
            }
        }
    }
    c.note(format!("{sigmas} sign vectors"));
    c
}

/// Independent statement of the implications, requiring definite consequents.
fn strict_implications(a: &Analysis) -> Vec<&'static str> {
    let holds = |id: &str| a.status(id) == Status::Holds;
    let mut out = Vec::new();
    let injective = a.injectivity() == Status::Holds;
    if holds("cc") && !(injective && holds("ii") && holds("iv")) {
        out.push("cc without i, ii, iv");
    }
    if holds("cc-prime") && !(injective && holds("iv")) {
        out.push("cc' without i, iv");
    }
    if holds("iv") && !holds("iii") {
        out.push("iv without iii");
    }
    if holds("sign-equal") && a.classification != Classification::BijectiveForAllC {
        out.push("equal sign vectors without bijectivity");
    }
    if holds("cc-prime") && holds("ii") {
        let faces = |s: &Option<expbij::certificate::ConeSummary>| s.as_ref().map(|s| s.faces.clone());
        if faces(&a.coefficient_cone) != faces(&a.exponent_cone) {
            out.push("cc' and ii with different faces");
        }
    }
    out
}

fn criterion_5() -> Checks {
    let mut c = Checks::default();
    let mut instances: Vec<(String, ExponentialMapSpec)> = fixtures();
    instances.extend(corpus().into_iter().enumerate().map(|(k, s)| (format!("#{k}"), s)));
    for net in networks() {
        if let Some(r) = analyze_network(&GeneralizedNetwork::parse(net).unwrap(), Caps::default()).unwrap().analysis {
            instances.push(("network".into(), r.spec().unwrap()));
        }
    }
    for (name, s) in &instances {
        let a = run(s);
        let strict = strict_implications(&a);
        c.check(strict.is_empty(), || format!("{name}: {strict:?}"));
        let built_in = implication_violations(&a);
        c.check(built_in.is_empty(), || format!("{name}: {built_in:?}"));
    }
    c.note(format!("{} instances", instances.len()));
    c
}

fn random_invertible(rng: &mut ChaCha8Rng, d: usize) -> RationalMatrix {
    random_full_rank(rng, d, d, 2)
}

fn criterion_6() -> Checks {
    let mut c = Checks::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    for (name, s) in fixtures() {
        let reference = Report::new(&s, &run(&s)).without_input();
        let d = s.coefficients().rows();
        for t in 0..TRANSFORMS_PER_FIXTURE {
            let w = random_invertible(&mut rng, d).mul(s.coefficients()).unwrap();
            let wt = random_invertible(&mut rng, d).mul(s.exponents()).unwrap();
            let moved = ExponentialMapSpec::new(w, wt).unwrap();
            let report = Report::new(&moved, &run(&moved)).without_input();
            c.check(report == reference, || format!("{name}: transform {t} changes the report"));
        }
    }
    c
}

fn round_trips(c: &mut Checks) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let opts = SolveOptions::default();
    let (mut worst_residual, mut worst_error) = (0f64, 0f64);
    for k in 0..ROUND_TRIPS {
        let d = 1 + k % 3;
        let n = d + rng.gen_range(0..=3);
        let w = random_full_rank(&mut rng, d, n, ENTRY_RANGE);
        let s = ExponentialMapSpec::new(w.clone(), w).unwrap();
        let classification = run(&s).classification;
        c.check(classification == Classification::BijectiveForAllC, || format!("birch #{k}: {}", classification.as_str()));
        let coefficients: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0f64..1.0).exp()).collect();
        let x_star = DVector::from_fn(d, |_, _| rng.gen_range(-1.0..1.0));
        let instance = NumericMapInstance::from_spec(&s, &coefficients).unwrap();
        let y = instance.evaluate(&x_star).unwrap();
        let results = solve_multistart(&instance, &y, 1, k as u64, &opts).unwrap();
        match &results[0].status {
            SolveStatus::Converged { x, residual } => {
                let residual = &(residual / y.norm().max(1.0));
                let error = x.iter().zip(x_star.iter()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                worst_residual = worst_residual.max(*residual);
                worst_error = worst_error.max(error);
                c.check(*residual <= RESIDUAL_TOL, || format!("birch #{k}: residual {residual:e}"));
                c.check(error <= ARGUMENT_TOL, || format!("birch #{k}: argument error {error:e}"));
            }
            other => c.check(false, || format!("birch #{k}: {other:?}")),
        }
    }
    c.note(format!("round trips: worst relative residual {worst_residual:.1e}, worst argument error {worst_error:.1e}"));
}

fn criterion_7() -> Checks {
    let mut c = Checks::default();
    round_trips(&mut c);

    for (k, (name, s)) in fixtures().iter().enumerate() {
        let classification = run(s).classification;
        let probe = probe_bijectivity(s, classification, PROBE_TRIALS, PROBE_STARTS, SEED + k as u64).unwrap();
        c.check(probe.contradictions.is_empty(), || format!("{name}: {:?}", probe.contradictions));
    }

    let s = sv(q(2, 1));
    let report = Report::new(&s, &run(&s));
    let iii = report.condition("iii").unwrap();
    c.check(iii.status == Status::Fails && matches!(iii.certificate, Some(Certificate::Degeneracy(_))), || {
        "alpha=2: (iii) does not fail with a degeneracy witness".into()
    });
    c.check(verify_certificate(&report), || "alpha=2: certificates do not verify".into());
    let reparsed = Report::from_json(&report.to_canonical_json()).unwrap();
    c.check(verify_certificate(&reparsed), || "alpha=2: reparsed certificates do not verify".into());
    let mut tampered = report.clone();
    if let Some(Certificate::Degeneracy(w)) =
        &mut tampered.conditions.iter_mut().find(|v| v.id == "iii").unwrap().certificate
    {
        w.row_vector[0] += Rational::from_integer(1.into());
    }
    c.check(!verify_certificate(&tampered), || "alpha=2: a tampered witness still verifies".into());
    c
}

const MASS_ACTION_PAIR: &str = r#"{"species":["A","B"],"reactions":[
    {"from":{"stoich":{"A":1}},"to":{"stoich":{"B":1}},"reversible":true}]}"#;

const IRREVERSIBLE: &str = r#"{"species":["A","B"],"reactions":[
    {"from":{"stoich":{"A":1}},"to":{"stoich":{"B":1}}}]}"#;

/// Three-vertex cycle whose subspaces are the kernels of the closure example.
const CLOSURE_EMBEDDING: &str = r#"{"species":["A","B","C"],"reactions":[
    {"from":{"stoich":{}},"to":{"stoich":{"A":1,"C":1},"kinetic":{"A":1,"C":1}}},
    {"from":{"stoich":{"A":1,"C":1},"kinetic":{"A":1,"C":1}},"to":{"stoich":{"B":1,"C":1},"kinetic":{"B":1}}},
    {"from":{"stoich":{"B":1,"C":1},"kinetic":{"B":1}},"to":{"stoich":{}}}]}"#;

const EXTRA_NETWORKS: [&str; 3] = [
    r#"{"species":["A","B","C"],"reactions":[
        {"from":{"stoich":{"A":2}},"to":{"stoich":{"B":1}},"reversible":true},
        {"from":{"stoich":{"A":1,"B":1}},"to":{"stoich":{"C":1}},"reversible":true}]}"#,
    r#"{"species":["A","B"],"reactions":[
        {"from":{"stoich":{"A":1}},"to":{"stoich":{"A":2}},"reversible":true},
        {"from":{"stoich":{"B":1}},"to":{"stoich":{"A":1,"B":1}}},
        {"from":{"stoich":{"A":1,"B":1}},"to":{"stoich":{"B":1}}}]}"#,
    r#"{"species":["X","Y"],"reactions":[
        {"from":{"stoich":{"X":1},"kinetic":{"X":2}},"to":{"stoich":{"Y":1},"kinetic":{"Y":1}},"reversible":true}]}"#,
];

fn networks() -> Vec<&'static str> {
    let mut out = vec![MASS_ACTION_PAIR, IRREVERSIBLE, CLOSURE_EMBEDDING];
    out.extend(EXTRA_NETWORKS);
    out
}

fn network_report(doc: &str) -> NetworkReport {
    analyze_network(&GeneralizedNetwork::parse(doc).unwrap(), Caps::default()).unwrap()
}

fn criterion_8() -> Checks {
    let mut c = Checks::default();
    let r = network_report(MASS_ACTION_PAIR);
    c.check(r.mass_action && r.unique_equilibrium.status == CriterionStatus::Holds, || {
        format!("A <-> B: unique equilibrium {:?}", r.unique_equilibrium.status)
    });

    let r = network_report(IRREVERSIBLE);
    c.check(!r.weakly_reversible, || "A -> B: reported weakly reversible".into());
    c.check(r.unique_equilibrium.status == CriterionStatus::Fails, || "A -> B: criterion does not fail".into());

    let r = network_report(CLOSURE_EMBEDDING);
    c.check(!r.mass_action && r.deficiency == 0 && r.kinetic_deficiency == 0 && r.weakly_reversible, || {
        "closure embedding: structure".into()
    });
    c.check(r.unique_equilibrium.status == CriterionStatus::Holds, || {
        format!("closure embedding: unique equilibrium {:?}", r.unique_equilibrium.status)
    });
    c.check(r.robust_kinetic_orders.status == CriterionStatus::Fails, || {
        format!("closure embedding: robust criterion {:?}", r.robust_kinetic_orders.status)
    });
    if let Some(report) = &r.analysis {
        let s = report.spec().unwrap();
        let expected = closure_example();
        c.check(
            s.coefficient_kernel().same_span(&expected.coefficient_kernel())
                && s.exponent_kernel().same_span(&expected.exponent_kernel()),
            || "closure embedding: kernels differ from the closure example".into(),
        );
    }

    for doc in networks() {
        let r = network_report(doc);
        let formula = r.vertices as i64 - r.linkage_classes as i64 - r.stoichiometric_dim as i64;
        c.check(r.deficiency == formula && r.deficiency == r.deficiency_by_intersection, || {
            format!("deficiencies {} / {} / {}", r.deficiency, formula, r.deficiency_by_intersection)
        });
        c.check(r.deficiency >= 0, || "negative deficiency".into());
    }
    c
}

fn main() {
    let criteria: [(&str, fn() -> Checks); 8] = [
        ("example classification table", criterion_1),
        ("oracle equivalences on the random corpus", criterion_2),
        ("oriented-matroid consistency", criterion_3),
        ("alternative theorem totality", criterion_4),
        ("implication monotonicity", criterion_5),
        ("change-of-basis invariance", criterion_6),
        ("numeric cross-check", criterion_7),
        ("reaction-network layer", criterion_8),
    ];
    println!(
        "tolerances: relative residual ||F(x) - y|| / max(1, ||y||) <= {RESIDUAL_TOL:e}, argument error <= {ARGUMENT_TOL:e}, \
         example limit {EXAMPLE_TIME_LIMIT:?}, corpus limit {CORPUS_TIME_LIMIT:?}, seed {SEED:#x}"
    );
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f));
        let took = start.elapsed();
        match outcome {
            Ok(c) if c.failures.is_empty() => {
                println!("criterion {}: PASS  {name} ({} checks, {took:.1?})", k + 1, c.total);
                for n in &c.notes {
                    println!("    {n}");
                }
            }
            Ok(c) => {
                failed += 1;
                println!(
                    "criterion {}: FAIL  {name} ({} of {} checks failed, {took:.1?})",
                    k + 1,
                    c.failures.len(),
                    c.total
                );
                for msg in c.failures.iter().take(10) {
                    println!("    {msg}");
                }
            }
            Err(_) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} (panicked)", k + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
