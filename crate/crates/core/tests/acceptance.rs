//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measured values. Run with `cargo test -p cofront-core --test
//! acceptance -- --nocapture` to see the lines.

use std::time::Instant;

use cofront_core::germ::{classify_germ, kernel_cofactor_field, principality_report, VerdictKind};
use cofront_core::local_algebra::{quotient_dimension_profile, Finiteness};
use cofront_core::poly::{normalize, Monomial, Polynomial};
use cofront_core::rational::{rational, rational_frac, Rational};
use cofront_core::symmetry::{
    catalog_families, check_right_symmetry, diffeo_order, jacobian_equivariance_sign,
    symmetry_catalog, DiffeoOrder, GermDiffeo,
};
use cofront_core::torus::{
    assemble, census_vs_construction, default_fiber_samples, fiber_census, mapping_torus_atlas,
    mapping_torus_transversal, numeric_return_map, Chart, ChartedManifold, PieceSpec, RatBox,
    RatInterval, Transition, Transversal,
};
use cofront_core::MapGerm;

fn germ(n: usize, components: &[&str]) -> MapGerm {
    MapGerm::parse(n, components.len(), components).unwrap()
}

fn p2(text: &str) -> Polynomial {
    Polynomial::parse(text, &["x1", "x2"]).unwrap()
}

fn fold() -> MapGerm {
    germ(2, &["x1", "x2^2"])
}

fn cusp() -> MapGerm {
    germ(2, &["x1", "x2^3 + x1*x2"])
}

fn squares() -> MapGerm {
    germ(2, &["x1^2", "x2^2"])
}

fn complex_square() -> MapGerm {
    germ(2, &["x1^2 - x2^2", "2*x1*x2"])
}

fn mobius_torus() -> cofront_core::torus::MappingTorusCofrontal {
    assemble(
        vec![PieceSpec {
            germ: MapGerm::parse(1, 1, &["x1^2"]).unwrap(),
            symmetry: GermDiffeo::parse(&["-x1"]).unwrap(),
            domain: RatBox::new(vec![RatInterval::new(rational(-1), rational(1))]),
        }],
        64,
    )
    .unwrap()
}

#[test]
fn acceptance_01_catalog_verdicts_and_generators() {
    let start = Instant::now();
    let cases: Vec<(&str, MapGerm, Polynomial)> = vec![
        ("fold", fold(), p2("x2")),
        ("cusp", cusp(), p2("3*x2^2 + x1")),
        ("squares", squares(), p2("x1*x2")),
        ("z^2", complex_square(), p2("x1^2 + x2^2")),
    ];
    for (name, f, expected_generator) in &cases {
        let verdict = classify_germ(f);
        assert_eq!(verdict.kind, VerdictKind::Both, "{name} verdict");
        assert!(verdict.fair, "{name} fairness");
        let report = principality_report(f);
        assert_eq!(
            report.generator.as_ref().unwrap(),
            expected_generator,
            "{name} generator"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
    println!(
        "ACCEPTANCE 1 PASS: fold/cusp/squares/z^2 all classify as both+fair with the \
         hand-derived generators ({elapsed:?})"
    );
}

#[test]
fn acceptance_02_zero_jacobi_ideal_is_never_a_cofrontal_verdict() {
    let start = Instant::now();
    let sphere = germ(3, &["x1^2 + x2^2 + x3^2", "0"]);
    let report = principality_report(&sphere);
    assert!(report.gcd.is_zero());
    assert!(report.principal);
    assert!(report.generator.as_ref().unwrap().is_zero());
    let verdict = classify_germ(&sphere);
    assert_eq!(verdict.kind, VerdictKind::Indeterminate);
    assert!(!verdict.fair);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 0.1, "took {elapsed:?}, budget 0.1 s");
    println!(
        "ACCEPTANCE 2 PASS: (x1^2+x2^2+x3^2, 0) reports the zero Jacobi ideal as \
         indeterminate and unfair, never cofrontal ({elapsed:?})"
    );
}

#[test]
fn acceptance_03_non_principal_certificate() {
    let start = Instant::now();
    let f = germ(3, &["x1", "x2^2 + x3^2"]);
    let report = principality_report(&f);
    assert!(!report.principal);
    assert!(report.generator.is_none());
    let verdict = classify_germ(&f);
    assert_eq!(verdict.kind, VerdictKind::Indeterminate);
    assert!(verdict.reason.contains("not a cofrontal"));
    let elapsed = start.elapsed();
    println!(
        "ACCEPTANCE 3 PASS: (x1, x2^2+x3^2) is non-principal, certifying it is not a \
         cofrontal ({elapsed:?})"
    );
}

#[test]
fn acceptance_04_kernel_annihilation_on_random_germs() {
    let start = Instant::now();
    // Deterministic pseudo-random germs: n = m + 1 <= 4, degree <= 3.
    let mut state = 0x1234_5678_9abc_def0u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut checked = 0;
    while checked < 20 {
        let m = 1 + (next() as usize) % 3;
        let n = m + 1;
        let mut components = Vec::with_capacity(m);
        for _ in 0..m {
            let mut poly = Polynomial::zero(n);
            for _ in 0..4 {
                let mut exps = vec![0u32; n];
                let mut degree = 1 + (next() % 3) as u32;
                while degree > 0 {
                    exps[(next() as usize) % n] += 1;
                    degree -= 1;
                }
                let numer = (next() % 9) as i64 - 4;
                let denom = 1 + (next() % 3) as i64;
                poly.add_term(Monomial::new(exps), Rational::new(numer.into(), denom.into()));
            }
            components.push(poly);
        }
        let Ok(f) = MapGerm::new(n, m, components) else {
            continue;
        };
        let field = kernel_cofactor_field(&f).unwrap();
        let product = f.jacobi_matrix().apply(&field).unwrap();
        assert!(
            product.iter().all(Polynomial::is_zero),
            "annihilation failed for {:?}",
            f.components()
        );
        checked += 1;
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}, budget 5 s");
    println!(
        "ACCEPTANCE 4 PASS: J(f) * cofactor field vanished identically for 20 random \
         corank-one germs, zero tolerance ({elapsed:?})"
    );
}

#[test]
fn acceptance_05_local_algebra_dimensions_match_the_oracle_values() {
    let start = Instant::now();
    // Expected dimensions were frozen from the independent brute-force
    // oracle (tests/local_algebra_oracle.rs), which must stay green.
    let z3 = germ(2, &["x1^3 - 3*x1*x2^2", "3*x1^2*x2 - x2^3"]);
    let cases: Vec<(&str, MapGerm, usize)> = vec![
        ("fold", fold(), 2),
        ("cusp", cusp(), 3),
        ("squares", squares(), 4),
        ("z^2", complex_square(), 4),
        ("z^3", z3, 9),
    ];
    for (name, f, expected) in &cases {
        let case_start = Instant::now();
        let report = quotient_dimension_profile(f, 16).unwrap();
        assert_eq!(
            report.status,
            Finiteness::Finite(*expected),
            "{name} dimension"
        );
        assert!(case_start.elapsed().as_secs_f64() < 5.0, "{name} over budget");
    }
    for a in 1..=4u32 {
        for b in 1..=4u32 {
            let f = germ(2, &[&format!("x1^{a}"), &format!("x2^{b}")]);
            let report = quotient_dimension_profile(&f, 16).unwrap();
            assert_eq!(report.status, Finiteness::Finite((a * b) as usize));
        }
    }
    let elapsed = start.elapsed();
    println!(
        "ACCEPTANCE 5 PASS: local-algebra dimensions fold=2 cusp=3 squares=4 z^2=4 z^3=9 \
         and (x1^a, x2^b)=a*b, all matching the brute-force oracle ({elapsed:?})"
    );
}

#[test]
fn acceptance_06_symmetry_suite() {
    let start = Instant::now();
    for entry in catalog_families() {
        for generator in &entry.generators {
            let certificate = check_right_symmetry(&entry.germ, generator).unwrap();
            assert!(certificate.verified, "{} generator rejected", entry.name);
            assert!(
                jacobian_equivariance_sign(&entry.germ, generator).is_some(),
                "{} equivariance failed",
                entry.name
            );
        }
    }
    let fold_entry = symmetry_catalog("fold").unwrap();
    assert_eq!(
        diffeo_order(&fold_entry.generators[0], 64),
        DiffeoOrder::Finite(2)
    );
    let squares_entry = symmetry_catalog("squares").unwrap();
    for generator in &squares_entry.generators {
        assert_eq!(diffeo_order(generator, 64), DiffeoOrder::Finite(2));
    }
    let quarter = symmetry_catalog("power_ell(4)").unwrap();
    assert_eq!(diffeo_order(&quarter.generators[0], 64), DiffeoOrder::Finite(4));
    let elapsed = start.elapsed();
    println!(
        "ACCEPTANCE 6 PASS: every catalog generator verifies exactly, orders 2/2/2/4 as \
         expected, and (lambda o sigma) * det J(sigma) = +/-lambda on the catalog \
         ({elapsed:?})"
    );
}

#[test]
fn acceptance_07_mobius_fiber_census() {
    let start = Instant::now();
    let torus = mobius_torus();

    let census = fiber_census(&torus, &[rational_frac(1, 4)]).unwrap();
    assert_eq!(census.total_circles, 1);
    assert_eq!(census.circles[0].wrapping, 2);

    let census = fiber_census(&torus, &[rational(0)]).unwrap();
    assert_eq!(census.total_circles, 1);
    assert_eq!(census.circles[0].wrapping, 1);

    let census = fiber_census(&torus, &[rational_frac(-1, 4)]).unwrap();
    assert_eq!(census.total_circles, 0);

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 0.5, "took {elapsed:?}, budget 0.5 s");
    println!(
        "ACCEPTANCE 7 PASS: Mobius censuses are exact: b=1/4 -> one circle wrapping 2, \
         b=0 -> one circle wrapping 1, b=-1/4 -> empty fiber ({elapsed:?})"
    );
}

#[test]
fn acceptance_08_numeric_poincare_verification() {
    let start = Instant::now();

    // Mobius band as a two-chart atlas glued by (0, x) ~ (1, -x).
    let fiber = RatInterval::new(rational(-1), rational(1));
    let mobius_atlas = ChartedManifold::new(
        vec![
            Chart {
                domain: RatBox::new(vec![
                    RatInterval::new(rational(0), rational_frac(5, 8)),
                    fiber.clone(),
                ]),
                vector_field: vec![p2("1"), p2("0")],
                target_map: vec![p2("x2^2")],
            },
            Chart {
                domain: RatBox::new(vec![
                    RatInterval::new(rational_frac(1, 2), rational_frac(9, 8)),
                    fiber,
                ]),
                vector_field: vec![p2("1"), p2("0")],
                target_map: vec![p2("x2^2")],
            },
        ],
        vec![
            Transition { from: 0, to: 1, map: vec![p2("x1"), p2("x2")] },
            Transition { from: 1, to: 0, map: vec![p2("x1"), p2("x2")] },
            Transition { from: 1, to: 0, map: vec![p2("x1 - 1"), p2("-x2")] },
            Transition { from: 0, to: 1, map: vec![p2("x1 + 1"), p2("-x2")] },
        ],
    )
    .unwrap();
    let transversal = Transversal {
        chart: 0,
        coord: 0,
        value: 0.5,
        center: vec![0.5, 0.0],
    };
    let sign_flip = GermDiffeo::parse(&["-x1"]).unwrap();
    let samples: Vec<Vec<f64>> = [0.5, -0.5, 0.25, -0.25, 0.125]
        .iter()
        .map(|&x| vec![x])
        .collect();
    let mobius_run =
        numeric_return_map(&mobius_atlas, &transversal, &sign_flip, &samples, 5000, 1e-3).unwrap();
    assert!(
        mobius_run.max_deviation < 1e-5,
        "Mobius deviation {}",
        mobius_run.max_deviation
    );

    // Halving the step reduces the deviation (or keeps it at the
    // floating-point floor when the benchmark integrates exactly).
    let halved =
        numeric_return_map(&mobius_atlas, &transversal, &sign_flip, &samples, 10000, 5e-4)
            .unwrap();
    assert!(
        halved.max_deviation <= (mobius_run.max_deviation / 2.0).max(1e-12),
        "halving did not reduce: {} -> {}",
        mobius_run.max_deviation,
        halved.max_deviation
    );

    // Klein-bottle quotient: the fiber return map is x2 -> 1 - x2.
    let klein_atlas = ChartedManifold::new(
        vec![Chart {
            domain: RatBox::new(vec![
                RatInterval::new(rational_frac(-5, 16), rational_frac(9, 16)),
                RatInterval::new(rational_frac(1, 8), rational_frac(7, 8)),
            ]),
            vector_field: vec![p2("1"), p2("0")],
            target_map: vec![p2("x2^2 - x2 + 1/4")],
        }],
        vec![
            Transition { from: 0, to: 0, map: vec![p2("x1 - 1/2"), p2("1 - x2")] },
            Transition { from: 0, to: 0, map: vec![p2("x1 + 1/2"), p2("1 - x2")] },
        ],
    )
    .unwrap();
    let klein_transversal = Transversal {
        chart: 0,
        coord: 0,
        value: 0.25,
        center: vec![0.25, 0.5],
    };
    let klein_samples: Vec<Vec<f64>> = [0.25, -0.25, 0.125, -0.125, 0.0625]
        .iter()
        .map(|&u| vec![u])
        .collect();
    let klein_run = numeric_return_map(
        &klein_atlas,
        &klein_transversal,
        &sign_flip,
        &klein_samples,
        5000,
        1e-3,
    )
    .unwrap();
    assert!(
        klein_run.max_deviation < 1e-5,
        "Klein deviation {}",
        klein_run.max_deviation
    );

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}, budget 10 s");
    println!(
        "ACCEPTANCE 8 PASS: Mobius return map matches x -> -x (deviation {:.2e}), the \
         Klein-bottle return matches x2 -> 1-x2 (deviation {:.2e}), halving the step \
         does not worsen the deviation ({elapsed:?})",
        mobius_run.max_deviation, klein_run.max_deviation
    );
}

#[test]
fn acceptance_09_invariance_suite() {
    let start = Instant::now();

    // Suspension preserves the generator.
    for f in [fold(), cusp(), squares(), complex_square()] {
        let lambda = principality_report(&f).generator.unwrap();
        let suspended = f.suspend(1);
        let lambda_suspended = principality_report(&suspended).generator.unwrap();
        assert_eq!(lambda.extend_variables(3), lambda_suspended);
    }

    // Right-composition by ten pseudo-random polynomial diffeomorphisms
    // preserves the verdict kind and transforms the generator by
    // (lambda o phi) * det J(phi), up to the canonical normalization.
    let mut state = 0x0dd_ba11u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut used = 0;
    while used < 10 {
        let a = (next() % 5) as i64 - 2;
        let b = (next() % 5) as i64 - 2;
        let c = (next() % 5) as i64 - 2;
        let d = (next() % 5) as i64 - 2;
        if a * d - b * c == 0 {
            continue;
        }
        let q1 = (next() % 3) as i64 - 1;
        let q2 = (next() % 3) as i64 - 1;
        let phi = match GermDiffeo::new(vec![
            p2(&format!("{a}*x1 + {b}*x2 + {q1}*x2^2")),
            p2(&format!("{c}*x1 + {d}*x2 + {q2}*x1^2")),
        ]) {
            Ok(phi) => phi,
            Err(_) => continue,
        };
        for f in [fold(), cusp(), squares(), complex_square()] {
            let composed = f.compose_right(phi.components()).unwrap();
            assert_eq!(classify_germ(&composed).kind, classify_germ(&f).kind);
            let lambda = principality_report(&f).generator.unwrap();
            let transported = lambda
                .substitute(phi.components())
                .unwrap()
                .mul(&phi.jacobian_determinant());
            assert_eq!(
                normalize(&transported),
                principality_report(&composed).generator.unwrap()
            );
        }
        used += 1;
    }

    // Census invariance under conjugation of the construction data.
    let torus = mobius_torus();
    for seed in [3u64, 17, 2026] {
        let comparison =
            census_vs_construction(&torus, &[rational_frac(1, 4)], 16, seed).unwrap();
        assert!(comparison.consistent, "{}", comparison.detail);
    }
    let squares_torus = assemble(
        vec![PieceSpec {
            germ: squares(),
            symmetry: GermDiffeo::parse(&["-x1", "x2"]).unwrap(),
            domain: RatBox::new(vec![
                RatInterval::new(rational(-1), rational(1)),
                RatInterval::new(rational(-1), rational(1)),
            ]),
        }],
        64,
    )
    .unwrap();
    let comparison = census_vs_construction(
        &squares_torus,
        &[rational_frac(1, 4), rational_frac(1, 4)],
        16,
        9,
    )
    .unwrap();
    assert!(comparison.consistent, "{}", comparison.detail);
    assert_eq!(comparison.original.pieces[0].roots.len(), 4);

    // The torus-derived atlas realizes the gluing symmetry numerically.
    let piece = &torus.pieces()[0];
    let atlas = mapping_torus_atlas(piece).unwrap();
    let run = numeric_return_map(
        &atlas,
        &mapping_torus_transversal(piece),
        &piece.symmetry,
        &default_fiber_samples(&piece.domain),
        5000,
        1e-3,
    )
    .unwrap();
    assert!(run.max_deviation < 1e-6, "deviation {}", run.max_deviation);

    let elapsed = start.elapsed();
    println!(
        "ACCEPTANCE 9 PASS: suspension preserves generators exactly, ten random right \
         compositions preserve verdicts and transform generators by (lambda o phi) * \
         det J(phi), and censuses are invariant under conjugation ({elapsed:?})"
    );
}
