//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary so
//! the lines are printed even when every criterion passes.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cardmetric::cayley::build_color_digraph;
use cardmetric::fixtures::{self, int, perm};
use cardmetric::geometry::{
    basis_sum_profile, identity_between, map_on_vertices, qi_violation_scan,
    run_verification_suite, seeded_bijections, CheckId, CheckStatus, Fixture, SuiteConfig,
    SuiteReport,
};
use cardmetric::isometry::{
    color_preserving_auts_bruteforce, decompose_isometry, is_isometry, isometries_exhaustive,
    left_translation,
};
use cardmetric::metrics::{
    cardinal_distance, cardinal_norm, metric_table, word_ball, word_distance,
};
use cardmetric::{Element, GeneratedGroup, GroupMap, IntVector, MetricKind, MetricTable};
use num_rational::Rational64;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

/// Every result of `id` must pass, on exactly the listed fixtures.
fn suite_check(report: &SuiteReport, id: CheckId, fixtures: &[&str]) -> Outcome {
    let mut seen = Vec::new();
    for r in report.for_check(id) {
        if !fixtures.contains(&r.fixture.as_str()) {
            continue;
        }
        ensure(r.status == CheckStatus::Pass, || {
            format!("{id} on {}: {} {}", r.fixture, r.status, r.detail)
        })?;
        seen.push(r.fixture.clone());
    }
    for f in fixtures {
        ensure(seen.iter().any(|s| s == f), || {
            format!("{id} did not run on {f}")
        })?;
    }
    Ok(format!("{id} on {} fixtures", seen.len()))
}

fn finite_table(group: &GeneratedGroup, kind: MetricKind) -> MetricTable {
    metric_table(group, group.elements().unwrap(), kind, 64).unwrap()
}

fn integer_ball(radius: u32) -> (GeneratedGroup, MetricTable, MetricTable) {
    let z = fixtures::integers();
    let vertices = word_ball(&z, &z.identity(), radius).unwrap();
    let word = metric_table(&z, &vertices, MetricKind::Word, 1024).unwrap();
    let cardinal = metric_table(&z, &vertices, MetricKind::Cardinal, 1024).unwrap();
    (z, word, cardinal)
}

fn s3_transposition_norms() -> Outcome {
    let t13 = perm(3, "(1 3)");
    let s = cardinal_norm(&fixtures::s3(), &t13).map_err(e)?;
    let t = cardinal_norm(&fixtures::s3_t(), &t13).map_err(e)?;
    ensure(s == 2 && t == 1, || {
        format!("||(1 3)||_S = {s}, ||(1 3)||_T = {t}")
    })?;
    Ok("||(1 3)||_S = 2, ||(1 3)||_T = 1".into())
}

fn strict_witness() -> Outcome {
    let z = fixtures::integers();
    for m in -6i64..=6 {
        for n in (m + 2)..=(m + 8) {
            let (a, b) = (int(m), int(n));
            let dc = cardinal_distance(&z, &a, &b).map_err(e)?;
            let dw = word_distance(&z, &a, &b, 64).map_err(e)?;
            ensure(dc == 1 && dw == (n - m) as u32, || {
                format!("d_C({m}, {n}) = {dc}, d_W = {dw}")
            })?;
        }
    }
    Ok("d_C(m, n) = 1 < d_W(m, n) = n - m for 2 <= n - m <= 8".into())
}

fn caut_eq_la() -> Outcome {
    let mut parts = Vec::new();
    for (name, group) in [
        ("Z4", fixtures::cyclic(4)),
        ("S3", fixtures::s3()),
        ("D4", fixtures::d4()),
    ] {
        let start = Instant::now();
        let d = build_color_digraph(&group, None).map_err(e)?;
        let found: HashSet<GroupMap> = color_preserving_auts_bruteforce(&d, 8)
            .map_err(e)?
            .into_iter()
            .collect();
        let translations: HashSet<GroupMap> = group
            .elements()
            .map_err(e)?
            .iter()
            .map(|a| left_translation(&group, a))
            .collect::<Result<_, _>>()
            .map_err(e)?;
        let elapsed = start.elapsed();
        ensure(found == translations, || {
            format!(
                "{name}: {} color-preserving vs {} translations",
                found.len(),
                translations.len()
            )
        })?;
        ensure(elapsed < Duration::from_secs(5), || {
            format!("{name} took {elapsed:?}")
        })?;
        parts.push(format!("{name} {} in {:.0?}", found.len(), elapsed));
    }
    Ok(parts.join(", "))
}

fn cyclic_no_isometry() -> Outcome {
    let mut parts = Vec::new();
    for n in [4usize, 5, 6] {
        let g = fixtures::cyclic(n);
        let word = finite_table(&g, MetricKind::Word);
        let cardinal = finite_table(&g, MetricKind::Cardinal);
        let found = isometries_exhaustive(&word, &cardinal, n).map_err(e)?;
        ensure(found.is_empty(), || {
            format!("Z{n}: {} isometries d_W -> d_C", found.len())
        })?;
        let total: usize = (1..=n).product();
        parts.push(format!("Z{n} 0/{total}"));
    }
    let g = fixtures::s3_complete();
    let word = finite_table(&g, MetricKind::Word);
    let cardinal = finite_table(&g, MetricKind::Cardinal);
    let id = GroupMap::identity(word.len());
    ensure(is_isometry(&id, &word, &cardinal).map_err(e)?, || {
        "identity is not an isometry on the complete fixture".into()
    })?;
    let dec = decompose_isometry(&id, &g, 64).map_err(e)?;
    ensure(dec.report.all_pass(), || {
        format!("decomposition report {:?}", dec.report)
    })?;
    ensure(dec.report.generators_into_s_union_inverse, || {
        "T(S) not in S u S^-1".into()
    })?;
    parts.push("S3 complete: identity isometry decomposes".into());
    Ok(parts.join(", "))
}

/// Least number of standard basis vectors whose span, with coefficients in
/// `-3..=3`, contains `target`.
fn bounded_basis_distance(rank: usize, target: &[i64]) -> Option<usize> {
    use itertools::Itertools;
    (0..=rank).find(|&m| {
        (0..rank).combinations(m).any(|axes| {
            (0..m)
                .map(|_| -3i64..=3)
                .multi_cartesian_product()
                .chain(std::iter::once(Vec::new()).filter(|_| m == 0))
                .any(|coeffs| {
                    let mut v = vec![0i64; rank];
                    for (axis, c) in axes.iter().zip(&coeffs) {
                        v[*axis] += c;
                    }
                    v == target
                })
        })
    })
}

fn lattice_growth() -> Outcome {
    for k in 3..=6usize {
        let profile = basis_sum_profile(k).map_err(e)?;
        let expected: Vec<u32> = (1..=k as u32).collect();
        ensure(profile == expected, || {
            format!("Z^{k}: profile {profile:?}")
        })?;
    }
    for k in 1..=3usize {
        for n in 1..=k {
            let target: Vec<i64> = (0..k).map(|i| i64::from(i < n)).collect();
            let brute = bounded_basis_distance(k, &target);
            ensure(brute == Some(n), || {
                format!("Z^{k}, n = {n}: brute force {brute:?}")
            })?;
        }
    }
    Ok("d_C(0, s_n) = n for k = 3..6, brute force agrees for k <= 3".into())
}

fn qi_divergence() -> Outcome {
    let (k, c) = (Rational64::from_integer(2), Rational64::from_integer(3));
    let threshold = 8u32;
    let mut parts = Vec::new();
    for (radius, expect) in [(4u32, false), (10, true), (50, true), (100, true)] {
        let (_, word, cardinal) = integer_ball(radius);
        let far = (0..word.len()).any(|x| (0..word.len()).any(|y| word.get(x, y) > threshold));
        ensure(far == expect, || {
            format!("radius {radius}: far pair present = {far}")
        })?;
        let f = identity_between(&word, &cardinal).map_err(e)?;
        let report = qi_violation_scan(&f, k, c, &word, &cardinal).map_err(e)?;
        let violated = !report.violations.is_empty();
        ensure(violated == far, || {
            format!(
                "radius {radius}: {} violations, far pair {far}",
                report.violations.len()
            )
        })?;
        parts.push(format!("r={radius}:{}", report.violations.len()));
    }
    Ok(format!("violations {}", parts.join(" ")))
}

fn bilip_z6(report: &SuiteReport) -> Outcome {
    let s = fixtures::cyclic(6);
    let t = fixtures::cyclic_with(6, &[2, 3]);
    let ds = finite_table(&s, MetricKind::Cardinal);
    let dt = metric_table(&t, ds.vertices(), MetricKind::Cardinal, 64).map_err(e)?;
    let m = t.generators().len() as u32 + 1;
    let maps = seeded_bijections(6, 100, 2024);
    for f in &maps {
        for x in 0..6 {
            for y in 0..6 {
                let a = dt.get(x, y);
                let b = ds.get(f.apply(x), f.apply(y));
                ensure(a <= m * b && b <= m * a, || {
                    format!("map {:?} at ({x}, {y}): d_T = {a}, d_S = {b}", f.images())
                })?;
            }
        }
    }
    let finite: Vec<&str> = ["S3", "S3-complete", "S4", "D4", "Z4", "Z5", "Z6", "Q8"].to_vec();
    suite_check(report, CheckId::BilipBound, &finite)?;
    Ok(format!(
        "Z6: {} seeded maps within K = |T| + 1 = {m}; word sandwich K = diam on {} fixtures",
        maps.len(),
        finite.len()
    ))
}

fn swap_isometry() -> Outcome {
    let (_, _, cardinal) = integer_ball(10);
    let swap = |v: &Element| -> Element {
        match v.as_vector().map(|x| x.entries()[0].to_string()).as_deref() {
            Some("2") => int(3),
            Some("3") => int(2),
            _ => v.clone(),
        }
    };
    let f = map_on_vertices(&cardinal, swap).map_err(e)?;
    ensure(is_isometry(&f, &cardinal, &cardinal).map_err(e)?, || {
        "swap distorts d_C".into()
    })?;
    let image = |n: i64| -> Element {
        let i = cardinal.index_of(&int(n)).expect("in ball");
        cardinal.vertices()[f.apply(i)].clone()
    };
    let sum = match (image(2), image(2)) {
        (Element::Vector(a), Element::Vector(b)) => a.add(&b),
        _ => return Err("non-vector image".into()),
    };
    let t4 = image(4);
    ensure(Element::Vector(sum.clone()) != t4, || {
        "swap is additive at 2 + 2".into()
    })?;
    ensure(sum == IntVector::from(vec![6]) && t4 == int(4), || {
        format!("T(2)+T(2) = {sum}, T(4) = {t4}")
    })?;
    Ok(format!(
        "d_C preserved on {} points; T(2)+T(2) = {sum} != {t4} = T(4)",
        cardinal.len()
    ))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let config = SuiteConfig::default();
    let norm_fixtures = vec![
        Fixture::finite("S3", fixtures::s3()).with_alternate(fixtures::s3_t()),
        Fixture::finite("S4", fixtures::s4()).with_alternate(fixtures::s4_t()),
        Fixture::finite("D4", fixtures::d4()).with_alternate(fixtures::d4_t()),
        Fixture::finite("Z4", fixtures::cyclic(4))
            .with_alternate(fixtures::cyclic_with(4, &[1, 3])),
        Fixture::finite("Z6", fixtures::cyclic(6))
            .with_alternate(fixtures::cyclic_with(6, &[2, 3])),
        Fixture::finite("Q8", fixtures::q8()).with_alternate(fixtures::q8_t()),
    ];
    let norm_report = run_verification_suite(&norm_fixtures, &config);
    let report = run_verification_suite(&fixtures::default_fixtures(), &config);

    let finite = ["S3", "S3-complete", "S4", "D4", "Z4", "Z5", "Z6", "Q8"];
    let small = ["S3", "S3-complete", "D4", "Z4", "Z5", "Z6", "Q8"];
    let mut with_ball = finite.to_vec();
    with_ball.push("Z-ball50");
    let mut every = with_ball.clone();
    every.push("Z3-ball2");

    let criteria: Vec<Criterion> = vec![
        ("S3-TRANSPOSITION-NORMS", Box::new(s3_transposition_norms)),
        (
            "NORM-AXIOMS",
            Box::new(|| {
                suite_check(
                    &norm_report,
                    CheckId::NormAxioms,
                    &["S3", "S4", "D4", "Z4", "Z6", "Q8"],
                )
            }),
        ),
        (
            "DC-LE-CARD-S/DC-LE-DW",
            Box::new(|| {
                let a = suite_check(&report, CheckId::DcLeCardS, &with_ball)?;
                let b = suite_check(&report, CheckId::DcLeDw, &with_ball)?;
                let c = strict_witness()?;
                Ok(format!("{a}; {b}; {c}"))
            }),
        ),
        (
            "THM31-ORACLE",
            Box::new(|| suite_check(&report, CheckId::ColorOracle, &finite)),
        ),
        ("CAUT-EQ-LA", Box::new(caut_eq_la)),
        (
            "PAUT-EQ-LATAU/PAUT-ISOMETRY",
            Box::new(|| {
                let a = suite_check(&report, CheckId::PautEqLaTau, &small)?;
                let b = suite_check(&report, CheckId::PautIsometry, &finite)?;
                Ok(format!("{a}; {b}"))
            }),
        ),
        ("CYCLIC-NO-ISOMETRY", Box::new(cyclic_no_isometry)),
        ("FREE-ABELIAN-GROWTH", Box::new(lattice_growth)),
        ("QI-DIVERGENCE", Box::new(qi_divergence)),
        ("BILIP-BOUND", Box::new(|| bilip_z6(&report))),
        (
            "DISCRETE-BALL",
            Box::new(|| suite_check(&report, CheckId::DiscreteBall, &every)),
        ),
        ("Z-SWAP-ISOMETRY", Box::new(swap_isometry)),
    ];

    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.2?}",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
