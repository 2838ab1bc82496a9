//! Acceptance suite: one test per criterion, each printing a pass line with
//! its elapsed time and asserting the stated exactness and time budget.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hochster::betti::{euler_consistency, euler_consistency_multigraded, ParamSystem};
use hochster::catalog;
use hochster::complex::{ColorSet, Coloring};
use hochster::conjecture::{self, Verdict};
use hochster::depth::{depth_ab, depth_duval, depth_report, PrefixStatus};
use hochster::facering::{FaceRing, RewriteStrategy, StdMonomial};
use hochster::field::{FieldSpec, PrimeField, Rationals};
use hochster::flags::{hilbert_numerator_face_ring, hilbert_numerator_sr, UniPoly};
use hochster::koszul::{default_theta_bound, gamma_tor_hochster, gamma_tor_strand, theta_tor};
use hochster::poset::SimplicialPoset;
use hochster::{Degree, PosetElt};

fn normalize(text: &str) -> Vec<String> {
    text.lines()
        .map(|l| l.split_whitespace().collect::<Vec<_>>().join(" "))
        .filter(|l| !l.is_empty())
        .collect()
}

fn finish(criterion: usize, start: Instant, budget_secs: u64, detail: &str) {
    let elapsed = start.elapsed();
    println!("criterion {criterion}: PASS — {detail} ({elapsed:.2?})");
    assert!(
        elapsed.as_secs() < budget_secs,
        "criterion {criterion} exceeded its {budget_secs}s budget: {elapsed:?}"
    );
}

/// Criterion 1: classic Hochster via the trivial coloring reproduces the
/// singly-graded Betti table of the running example over QQ, exactly.
#[test]
fn criterion_1_classic_hochster_trivial_coloring() {
    let start = Instant::now();
    let complex = catalog::running_example_complex();
    let coloring = Coloring::trivial(8);
    let table = gamma_tor_hochster(&complex, &coloring, &Rationals).unwrap();
    assert_eq!(table.totals(), vec![1, 14, 36, 39, 22, 7, 1]);
    let rendered = table.specialize(Degree::standard_weight).render().unwrap();
    let lines = normalize(&rendered);
    assert_eq!(lines[1], "total: 1 14 36 39 22 7 1");
    assert_eq!(lines[2], "0: 1 . . . . . .");
    assert_eq!(lines[3], "1: . 14 34 32 11 1 .");
    assert_eq!(lines[4], "2: . . 2 7 11 6 1");
    finish(1, start, 10, "totals 1 14 36 39 22 7 1 and both graded rows exact");
}

/// Criterion 2: colorful Hochster for the 3-coloring, with the multigraded
/// support exactly as printed in the source table.
#[test]
fn criterion_2_colorful_hochster_three_coloring() {
    let start = Instant::now();
    let complex = catalog::running_example_complex();
    let coloring = catalog::running_example_coloring();
    let table = gamma_tor_hochster(&complex, &coloring, &Rationals).unwrap();
    assert_eq!(table.totals(), vec![8, 2]);
    let expected: Vec<(usize, Vec<u32>, usize)> = vec![
        (0, vec![0, 0, 0], 1),
        (0, vec![1, 0, 0], 2),
        (0, vec![0, 1, 0], 3),
        (0, vec![1, 1, 0], 2),
        (1, vec![0, 1, 1], 1),
        (1, vec![1, 1, 1], 1),
    ];
    for (m, b, dim) in &expected {
        assert_eq!(table.get(*m, &Degree::Multi(b.clone())), *dim, "entry ({m}, {b:?})");
    }
    assert_eq!(table.iter().count(), expected.len(), "no entries beyond the six listed");
    finish(2, start, 5, "Tor_0 = 8, Tor_1 = 2 with exact multigraded support");
}

/// Criterion 3: the Theta-side table of the running-example poset matches the
/// published resolution table exactly, over QQ and F_32003, up to bound 9.
#[test]
fn criterion_3_theta_table_running_example() {
    let start = Instant::now();
    let poset = catalog::running_example_poset();
    for spec in [FieldSpec::Rationals, FieldSpec::Prime(32003)] {
        let table = match spec {
            FieldSpec::Rationals => theta_tor(&poset, &Rationals, 9).unwrap(),
            FieldSpec::Prime(p) => {
                theta_tor(&poset, &PrimeField::new(p).unwrap(), 9).unwrap()
            }
        };
        for (deg, dim) in [(0, 1), (1, 2), (2, 3), (3, 2)] {
            assert_eq!(table.get(0, &Degree::Total(deg)), dim, "{spec:?} Tor_0 deg {deg}");
        }
        assert_eq!(table.get(1, &Degree::Total(5)), 1, "{spec:?}");
        assert_eq!(table.get(1, &Degree::Total(6)), 1, "{spec:?}");
        assert_eq!(table.iter().count(), 6, "{spec:?}: nothing else up to bound 9");
        let lines = normalize(&table.render().unwrap());
        assert_eq!(
            lines,
            vec![
                "0 1",
                "total: 8 2",
                "0: 1 .",
                "1: 2 .",
                "2: 3 .",
                "3: 2 .",
                "4: . 1",
                "5: . 1",
            ]
        );
    }
    finish(3, start, 60, "Tor_0 (1,2,3,2) in degrees 0-3, Tor_1 (1,1) in 5,6, both fields");
}

/// Criterion 4: oracle equivalence — on 50 random complexes with random
/// proper colorings the direct Koszul strand agrees with the subcomplex
/// cohomology everywhere on {0,1}^d, and vanishes at every multidegree with a
/// component 2 and weight <= d+2.
#[test]
fn criterion_4_strand_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    let field = Rationals;
    let mut checked_vanishing = 0usize;
    for instance in 0..50 {
        let complex = conjecture::random_complex(&mut rng, 7);
        let coloring = conjecture::random_proper_coloring(&mut rng, &complex);
        let d = coloring.num_colors();
        let table = gamma_tor_hochster(&complex, &coloring, &field).unwrap();
        for s in ColorSet::all_subsets(d) {
            let b: Vec<u32> = (1..=d).map(|j| u32::from(s.contains(j))).collect();
            let dims = gamma_tor_strand(&complex, &coloring, &b, &field).unwrap();
            for (m, &dim) in dims.iter().enumerate() {
                assert_eq!(
                    dim,
                    table.get(m, &Degree::Multi(b.clone())),
                    "instance {instance}, S = {s}, m = {m}"
                );
            }
        }
        // all b with max component 2 and |b| <= d+2 must give zero strands
        let mut stack: Vec<Vec<u32>> = vec![Vec::new()];
        for _ in 0..d {
            let mut next = Vec::new();
            for prefix in &stack {
                for v in 0..=2u32 {
                    let mut p = prefix.clone();
                    p.push(v);
                    if p.iter().sum::<u32>() as usize <= d + 2 {
                        next.push(p);
                    }
                }
            }
            stack = next;
        }
        for b in stack.into_iter().filter(|b| b.iter().any(|&v| v == 2)) {
            let dims = gamma_tor_strand(&complex, &coloring, &b, &field).unwrap();
            assert!(
                dims.iter().all(|&x| x == 0),
                "instance {instance}: strand at {b:?} should vanish, got {dims:?}"
            );
            checked_vanishing += 1;
        }
    }
    finish(
        4,
        start,
        600,
        &format!("50 instances, zero mismatches, {checked_vanishing} vanishing multidegrees"),
    );
}

/// Criterion 5: conjecture verification over the full catalog, QQ and F_2;
/// the proved Theta <= Gamma inequality is a hard assertion.
#[test]
fn criterion_5_conjecture_full_catalog() {
    let start = Instant::now();
    let instances: Vec<(String, SimplicialPoset)> = catalog::standard_batch()
        .into_iter()
        .map(|e| (e.name, e.poset))
        .collect();
    let summary = conjecture::batch(
        &instances,
        &[FieldSpec::Rationals, FieldSpec::Prime(2)],
        None,
    )
    .unwrap();
    assert_eq!(summary.inequality_violations, 0, "proved inequality violated: bug");
    for report in &summary.reports {
        assert_eq!(
            report.verdict,
            Verdict::Equal,
            "{} over {}",
            report.instance,
            report.field
        );
        assert!(report.inequality_ok && report.murai_dims_ok, "{}", report.instance);
        assert!(report.euler_theta_ok && report.euler_gamma_ok, "{}", report.instance);
    }
    assert_eq!(summary.equal, instances.len() * 2);
    finish(
        5,
        start,
        900,
        &format!("verdict equal on {} (instance, field) pairs", summary.equal),
    );
}

/// Criterion 6: three-way depth agreement on the catalog plus 50 random
/// instances, with regular-sequence witnesses where prefixes fail.
#[test]
fn criterion_6_depth_three_way_agreement() {
    let start = Instant::now();
    let f2 = PrimeField::new(2).unwrap();

    for entry in catalog::standard_batch() {
        if entry.poset.len() <= 1 {
            continue;
        }
        let report = depth_report(&entry.poset, &Rationals, None).unwrap();
        assert!(report.agreement, "{}: {report:?}", entry.name);
        let report = depth_report(&entry.poset, &f2, None).unwrap();
        assert!(report.agreement, "{} over F2: {report:?}", entry.name);
    }

    // delta_family zero-divisor witnesses: θ_j · y_{x_0} = 0 exactly for j > δ
    for d in 1..=4usize {
        for delta in 1..=d {
            let complex = catalog::delta_family(d, delta).unwrap();
            let poset = SimplicialPoset::from_facets(&complex).unwrap();
            let ring = FaceRing::new(&poset, Rationals);
            let x0 = poset.element_by_id("1").unwrap();
            let witness = StdMonomial::variable(x0);
            for j in 1..=d {
                let image = ring.theta_action(j, &witness).unwrap();
                assert_eq!(
                    image.is_zero(),
                    j > delta,
                    "delta_family({d},{delta}): θ_{j}·y_x0"
                );
            }
            let report = depth_report(&poset, &Rationals, None).unwrap();
            assert_eq!(report.duval_depth, delta);
            for (i, status) in report.prefix_statuses.iter().enumerate() {
                match status {
                    PrefixStatus::RegularUpToBound => assert!(i < delta),
                    PrefixStatus::Fails { dim, .. } => {
                        assert!(i >= delta);
                        assert!(*dim >= 1, "failing prefix must carry a witness");
                    }
                }
            }
        }
    }

    // 50 random instances: half face posets of random complexes, half posets
    // with doubled cells
    let mut rng = ChaCha8Rng::seed_from_u64(60);
    for instance in 0..50 {
        let poset = if instance % 2 == 0 {
            let complex = conjecture::random_complex(&mut rng, 7);
            SimplicialPoset::from_facets(&complex).unwrap()
        } else {
            conjecture::random_simplicial_poset(&mut rng, 6)
        };
        if poset.len() <= 1 {
            continue;
        }
        for spec in [FieldSpec::Rationals, FieldSpec::Prime(2)] {
            let (duval, ab, regseq_ok) = match spec {
                FieldSpec::Rationals => {
                    let report = depth_report(&poset, &Rationals, None).unwrap();
                    (report.duval_depth, report.ab_depth, report.agreement)
                }
                FieldSpec::Prime(p) => {
                    let field = PrimeField::new(p).unwrap();
                    let report = depth_report(&poset, &field, None).unwrap();
                    (report.duval_depth, report.ab_depth, report.agreement)
                }
            };
            assert_eq!(duval, ab, "instance {instance} over {spec:?}");
            assert!(regseq_ok, "instance {instance} over {spec:?}: regseq disagrees");
        }
    }
    finish(6, start, 600, "catalog + 50 random instances, zero disagreements");
}

/// Criterion 7: the Hilbert identities — exact flag-h numerator of the
/// running example and Euler consistency of every computed Betti table
/// against the flag-h numerator.
#[test]
fn criterion_7_hilbert_identities() {
    let start = Instant::now();
    let complex = catalog::running_example_complex();
    let coloring = catalog::running_example_coloring();
    let numerator = hilbert_numerator_sr(&complex, &coloring).unwrap();
    // 1 + 2t1 + 3t2 + 2t1t2 - t2t3 - t1t2t3
    let coeff = |colors: &[usize]| numerator.coefficient(ColorSet::from_iter(colors.iter().copied()));
    assert_eq!(coeff(&[]), 1);
    assert_eq!(coeff(&[1]), 2);
    assert_eq!(coeff(&[2]), 3);
    assert_eq!(coeff(&[3]), 0);
    assert_eq!(coeff(&[1, 2]), 2);
    assert_eq!(coeff(&[1, 3]), 0);
    assert_eq!(coeff(&[2, 3]), -1);
    assert_eq!(coeff(&[1, 2, 3]), -1);
    assert_eq!(numerator.specialize(|_| 1), UniPoly::from_coeffs(vec![1, 5, 1, -1]));

    // every computed Betti table passes the Euler check against the flag-h
    // numerator of its instance
    let mut tables_checked = 0usize;
    for entry in catalog::standard_batch() {
        let poset = &entry.poset;
        let d = poset.max_rank();
        let face_numerator = hilbert_numerator_face_ring(poset).unwrap();
        let theta = theta_tor(poset, &Rationals, default_theta_bound(d)).unwrap();
        assert!(
            euler_consistency(&theta, &face_numerator).unwrap(),
            "{}: theta table",
            entry.name
        );
        let (sd, rank_coloring) = poset.barycentric_subdivision();
        let gamma = gamma_tor_hochster(&sd, &rank_coloring, &Rationals).unwrap();
        let flag_numerator = hilbert_numerator_sr(&sd, &rank_coloring).unwrap();
        assert!(
            euler_consistency_multigraded(&gamma, &flag_numerator).unwrap(),
            "{}: gamma table (multigraded)",
            entry.name
        );
        assert!(
            euler_consistency(&gamma.specialize_multigraded(), &face_numerator).unwrap(),
            "{}: gamma table (specialized)",
            entry.name
        );
        tables_checked += 3;
        if let Some((c, Some(k))) = &entry.complex {
            let table = gamma_tor_hochster(c, k, &Rationals).unwrap();
            let num = hilbert_numerator_sr(c, k).unwrap();
            assert!(euler_consistency_multigraded(&table, &num).unwrap(), "{}", entry.name);
            tables_checked += 1;
        }
    }
    finish(7, start, 120, &format!("numerator exact; {tables_checked} tables Euler-consistent"));
}

/// Criterion 8: straightening ground truth in the injective-words poset, the
/// multidegree inhomogeneity of θ_1², and the two-strategy confluence test on
/// 1000 random multisets per catalog poset.
#[test]
fn criterion_8_straightening_ground_truth() {
    let start = Instant::now();
    let poset = catalog::injective_words(2);
    let ring = FaceRing::new(&poset, Rationals);
    let y1 = poset.element_by_id("1").unwrap();
    let y2 = poset.element_by_id("2").unwrap();
    let y12 = poset.element_by_id("12").unwrap();
    let y21 = poset.element_by_id("21").unwrap();

    let p = ring.straighten(&[y1, y2]).unwrap();
    assert_eq!(p.render(&poset), "y_12 + y_21");
    assert!(ring.straighten(&[y12, y21]).unwrap().is_zero());

    // θ_1² is inhomogeneous for the N²-grading: support {2ε_1, ε_2}.
    // (The paper's worked example prints the second multidegree as 2ε_2,
    // which contradicts its own grading definition — the y_12 chain has a
    // single factor of rank 2 — and would break the grading-preservation of
    // the subdivision map; the definition wins.)
    let theta1 = ring.theta(1).unwrap();
    let square = ring.multiply(&theta1, &theta1).unwrap();
    let support: BTreeSet<Vec<u32>> =
        square.terms().map(|(m, _)| m.multidegree(&poset)).collect();
    let expected: BTreeSet<Vec<u32>> = [vec![2, 0], vec![0, 1]].into_iter().collect();
    assert_eq!(support, expected);
    assert!(support.len() > 1, "θ_1² must be N^d-inhomogeneous");

    // confluence: both rewrite strategies agree on 1000 random multisets per
    // catalog poset
    let mut rng = ChaCha8Rng::seed_from_u64(80);
    let mut total = 0usize;
    for entry in catalog::standard_batch() {
        let poset = &entry.poset;
        if poset.len() <= 1 {
            continue;
        }
        let ring = FaceRing::new(poset, Rationals);
        for _ in 0..1000 {
            let size = rng.gen_range(1..=4usize);
            let multiset: Vec<PosetElt> =
                (0..size).map(|_| PosetElt(rng.gen_range(1..poset.len()))).collect();
            let lex = ring
                .straighten_with(&multiset, RewriteStrategy::LexSmallestPair)
                .unwrap();
            let high = ring
                .straighten_with(&multiset, RewriteStrategy::HighestRankPair)
                .unwrap();
            assert_eq!(lex, high, "{}: {multiset:?}", entry.name);
            total += 1;
        }
    }
    finish(8, start, 300, &format!("ground truth exact; {total} confluence runs"));
}

/// The Gamma tables used above are genuinely of Gamma type and the Theta
/// tables of Theta type (metadata sanity for downstream JSON consumers).
#[test]
fn table_metadata_is_labeled() {
    let complex = catalog::running_example_complex();
    let coloring = catalog::running_example_coloring();
    let gamma = gamma_tor_hochster(&complex, &coloring, &Rationals).unwrap();
    assert_eq!(gamma.system, ParamSystem::Gamma);
    assert_eq!(gamma.bound, None);
    let poset = catalog::running_example_poset();
    let theta = theta_tor(&poset, &Rationals, 9).unwrap();
    assert_eq!(theta.system, ParamSystem::Theta);
    assert_eq!(theta.bound, Some(9));
}
