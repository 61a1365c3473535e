//! Acceptance gate: one line per criterion, then a single assertion.

use std::collections::BTreeMap;
use std::time::Instant;

use hauptmodul::elimination::{recombine, rref_with_provenance, ExpansionMatrix, PivotRule};
use hauptmodul::exactnum::{parse_rational, rat};
use hauptmodul::forms::{genus_zero_levels, level_constants};
use hauptmodul::identities::{
    classical::classical_suite, dimension, divisor::divisor_sum_identity_check, fricke::fricke_suite,
    reference_identities, table3, ReferenceIdentity,
};
use hauptmodul::jst::{equation_count, max_pole, run_jst, IdentityKind, JstOptions, JstResult, Monomial, Variant};
use hauptmodul::QSeries;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

/// (N, k_N, κ_N, JST2 M, #eqs, pole, JST3 M, #eqs, pole)
/// (N, k_N, κ_N, M, #eqs, pole for JST2, then the same for JST3)
type Row = (u64, u64, i64, u32, u64, i64, u32, u64, i64);

const TABLE1: [Row; 44] = [
    (1, 12, 19, 1, 5, 1, 1, 4, 1),
    (2, 8, 47, 1, 3, 1, 1, 2, 1),
    (3, 12, 48, 1, 5, 2, 1, 4, 2),
    (5, 4, 19, 1, 2, 1, 3, 4, 3),
    (6, 4, 60, 1, 2, 1, 3, 4, 3),
    (7, 12, 19, 1, 5, 4, 2, 21, 8),
    (10, 8, 75, 2, 10, 6, 2, 7, 6),
    (11, 4, 19, 3, 8, 6, 9, 88, 18),
    (13, 12, 19, 2, 26, 14, 3, 88, 21),
    (14, 4, 47, 3, 8, 6, 6, 21, 12),
    (15, 4, 96, 3, 8, 6, 5, 12, 10),
    (17, 4, 19, 4, 15, 12, 9, 88, 27),
    (19, 12, 19, 3, 114, 30, 4, 320, 40),
    (21, 12, 53, 2, 26, 16, 2, 21, 16),
    (22, 4, 47, 4, 15, 12, 6, 21, 18),
    (23, 4, 19, 5, 27, 20, 15, 1039, 60),
    (26, 8, 47, 3, 31, 21, 4, 55, 28),
    (29, 4, 19, 6, 48, 30, 15, 1039, 75),
    (30, 4, 127, 4, 15, 12, 6, 21, 18),
    (31, 12, 19, 4, 434, 64, 5, 1039, 80),
    (33, 4, 48, 5, 27, 20, 8, 55, 32),
    (34, 8, 47, 3, 31, 27, 4, 55, 36),
    (35, 4, 19, 5, 27, 20, 7, 34, 28),
    (38, 4, 47, 5, 27, 25, 10, 137, 50),
    (39, 12, 48, 3, 114, 42, 3, 88, 42),
    (41, 4, 19, 7, 82, 49, 21, 8591, 147),
    (42, 4, 108, 5, 27, 20, 7, 34, 28),
    (46, 4, 47, 6, 48, 36, 14, 708, 84),
    (47, 4, 19, 8, 137, 64, 27, 56224, 216),
    (51, 4, 48, 6, 48, 36, 11, 210, 66),
    (55, 4, 19, 6, 48, 36, 8, 55, 48),
    (59, 4, 19, 9, 225, 90, 33, 310962, 330),
    (62, 4, 47, 7, 82, 56, 18, 3094, 144),
    (66, 4, 60, 6, 48, 36, 8, 55, 48),
    (69, 4, 48, 7, 82, 56, 14, 708, 112),
    (70, 4, 181, 6, 48, 36, 8, 55, 48),
    (71, 4, 19, 10, 362, 120, 39, 1512301, 468),
    (78, 4, 81, 6, 48, 42, 9, 88, 63),
    (87, 4, 48, 7, 82, 70, 17, 2167, 170),
    (94, 4, 47, 8, 137, 96, 26, 41646, 312),
    (95, 4, 19, 7, 82, 70, 11, 210, 110),
    (105, 4, 181, 7, 82, 56, 9, 88, 72),
    (110, 4, 89, 7, 82, 63, 9, 88, 81),
    (119, 4, 19, 8, 137, 96, 10, 137, 120),
];

/// Eisenstein weights listed per level.
const TABLE2: [(u64, &[u32]); 44] = [
    (1, &[4, 6]),
    (2, &[4, 6, 8]),
    (3, &[4, 6, 12]),
    (5, &[4, 6, 8, 12]),
    (6, &[4, 6, 8, 12]),
    (7, &[4, 6, 8, 10, 12]),
    (10, &[4, 6, 8, 10, 12, 16]),
    (11, &[4, 6, 8, 10, 12]),
    (13, &[4, 6, 8, 10, 12]),
    (14, &[4, 6, 8, 10, 12]),
    (15, &[4, 6, 8, 10, 12, 14, 16]),
    (17, &[4, 6, 8, 10, 12]),
    (19, &[4, 6, 8, 10, 12]),
    (21, &[4, 6, 8, 10, 12, 14, 16]),
    (22, &[4, 6, 8, 10, 12, 14, 16, 18]),
    (23, &[4, 6, 8, 10, 12]),
    (26, &[4, 6, 8, 10, 12, 14]),
    (29, &[4, 6, 8, 10, 12]),
    (30, &[4, 6, 8, 10, 12, 14, 16, 18]),
    (31, &[4, 6, 8, 10, 12]),
    (33, &[4, 6, 8, 10, 12, 14]),
    (34, &[4, 6, 8, 10, 12, 14, 16]),
    (35, &[4, 6, 8, 10, 12, 14, 16, 18]),
    (38, &[4, 6, 8, 10, 12, 14]),
    (39, &[4, 6, 8, 10, 12, 14]),
    (41, &[4, 6, 8, 10, 12]),
    (42, &[4, 6, 8, 10, 12, 14, 16, 18]),
    (46, &[4, 6, 8, 10, 12]),
    (47, &[4, 6, 8, 10, 12]),
    (51, &[4, 6, 8, 10, 12, 14]),
    (55, &[4, 6, 8, 10, 12, 14, 16, 18, 20, 22]),
    (59, &[4, 6, 8, 10, 12]),
    (62, &[4, 6, 8, 10, 12]),
    (66, &[4, 6, 8, 10, 12, 14, 16, 18, 20, 22]),
    (69, &[4, 6, 8, 10, 12]),
    (70, &[4, 6, 8, 10, 12, 14, 16, 18, 20, 22]),
    (71, &[4, 6, 8, 10, 12]),
    (78, &[4, 6, 8, 10, 12, 14, 16, 18]),
    (87, &[4, 6, 8, 10, 12]),
    (94, &[4, 6, 8, 10, 12]),
    (95, &[4, 6, 8, 10, 12, 14, 16]),
    (105, &[4, 6, 8, 10, 12, 14, 16, 18, 20]),
    (110, &[4, 6, 8, 10, 12, 14, 16, 18, 20, 22, 24, 26]),
    (119, &[4, 6, 8, 10, 12, 14, 16, 18, 20, 22, 24]),
];

const END_TO_END: [u64; 15] = [1, 2, 3, 5, 6, 7, 10, 13, 14, 15, 17, 21, 26, 34, 39];

struct Outcome {
    id: u32,
    title: &'static str,
    pass: bool,
    detail: String,
    secs: f64,
}

fn criterion(id: u32, title: &'static str, limit: Option<f64>, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let t = Instant::now();
    let (mut pass, mut detail) = f();
    let secs = t.elapsed().as_secs_f64();
    if let Some(l) = limit {
        if secs >= l {
            pass = false;
            detail = format!("{detail}; took {secs:.1}s, limit {l}s");
        }
    }
    Outcome { id, title, pass, detail, secs }
}

fn table1_row(n: u64) -> Row {
    *TABLE1.iter().find(|r| r.0 == n).expect("level in table")
}

fn c1_classical() -> (bool, String) {
    match classical_suite(50) {
        Ok(r) => (r.passed(), format!("{}/{} relations exact through q^50", r.checks.iter().filter(|c| c.passed).count(), r.checks.len())),
        Err(e) => (false, e.to_string()),
    }
}

fn c2_counts() -> (bool, String) {
    let mut bad = Vec::new();
    for &(n, _, _, m2, e2, _, m3, e3, _) in &TABLE1 {
        let level = level_constants(n).unwrap();
        if equation_count(&level, Variant::Jst2, m2) != e2 {
            bad.push(format!("jst2 N={n}"));
        }
        if equation_count(&level, Variant::Jst3, m3) != e3 {
            bad.push(format!("jst3 N={n}"));
        }
    }
    (bad.is_empty(), if bad.is_empty() { "88/88 counts match".into() } else { format!("mismatch: {}", bad.join(", ")) })
}

fn c3_poles() -> (bool, String) {
    let mut bad = Vec::new();
    for &(n, k, kappa, m2, _, p2, m3, _, p3) in &TABLE1 {
        let level = level_constants(n).unwrap();
        if max_pole(&level, m2) != p2 || max_pole(&level, m3) != p3 {
            bad.push(format!("pole N={n}"));
        }
        if level.k_n != k || level.kappa_n != Some(kappa) {
            bad.push(format!("k/κ N={n}"));
        }
    }
    (bad.is_empty(), if bad.is_empty() { "88/88 poles, 44 k_N and κ_N match".into() } else { format!("mismatch: {}", bad.join(", ")) })
}

fn c4_end_to_end(results: &mut BTreeMap<u64, JstResult>) -> (bool, String) {
    let mut bad = Vec::new();
    for n in END_TO_END {
        let (_, _, _, _, _, _, m3, e3, p3) = table1_row(n);
        match run_jst(n, Variant::Jst3, JstOptions::default()) {
            Ok(r) => {
                let homogeneous = r.hauptmodul.is_homogeneous() && r.kronecker_power.is_homogeneous();
                if (r.m, r.equation_count, r.max_pole) != (m3, e3, p3) || !homogeneous {
                    bad.push(format!("N={n}: got {}", r.summary_row()));
                }
                results.insert(n, r);
            }
            Err(e) => bad.push(format!("N={n}: {e}")),
        }
    }
    (bad.is_empty(), if bad.is_empty() { format!("{} levels match Table 1 with closure", END_TO_END.len()) } else { bad.join("; ") })
}

fn identity<'a>(r: &'a JstResult, x: &ReferenceIdentity) -> &'a hauptmodul::jst::FormulaIdentity {
    match x.kind {
        IdentityKind::HauptmodulNumerator => &r.hauptmodul,
        IdentityKind::KroneckerPower => &r.kronecker_power,
    }
}

fn c5_printed(results: &BTreeMap<u64, JstResult>) -> (bool, String) {
    let mut bad = Vec::new();
    let mut compared = 0;
    let jst2_five = run_jst(5, Variant::Jst2, JstOptions::default()).unwrap();
    for n in [2u64, 3, 5, 17] {
        for x in reference_identities(n) {
            let r = if x.m == results[&n].m { &results[&n] } else { &jst2_five };
            if x.m != r.m {
                bad.push(format!("{}: no run with M={}", x.name, x.m));
                continue;
            }
            compared += x.terms.len();
            let miss = x.mismatches(identity(r, x));
            if !miss.is_empty() {
                bad.push(format!("{}: {} terms differ", x.name, miss.len()));
            }
        }
    }
    // the values singled out in the criterion, looked up directly
    let spot: [(u64, IdentityKind, &[u32], &str); 5] = [
        (2, IdentityKind::KroneckerPower, &[4, 4], "17/1152"),
        (2, IdentityKind::HauptmodulNumerator, &[4, 4], "-77/144"),
        (2, IdentityKind::HauptmodulNumerator, &[8], "221/144"),
        (5, IdentityKind::KroneckerPower, &[4, 4, 4], "-9383387/162000000"),
        (17, IdentityKind::HauptmodulNumerator, &[4; 9], "81682801889356820001790224970058471917613108127362192461613220533/3269846855773492420944242299705431901325975126578932604974661632"),
    ];
    for (n, kind, ws, c) in spot {
        let r = &results[&n];
        let f = if kind == IdentityKind::KroneckerPower { &r.kronecker_power } else { &r.hauptmodul };
        if f.coefficient(&Monomial::from_weights(ws), 0) != Some(&parse_rational(c).unwrap()) {
            bad.push(format!("N={n} {ws:?} != {c}"));
        }
    }
    (bad.is_empty(), if bad.is_empty() { format!("{compared} printed terms for N=2,3,5,17 match exactly") } else { bad.join("; ") })
}

fn c6_generators(results: &BTreeMap<u64, JstResult>) -> (bool, String) {
    let mut bad = Vec::new();
    for (n, r) in results {
        let listed = TABLE2.iter().find(|t| t.0 == *n).unwrap().1;
        let subset = r.generator_weights.iter().all(|w| listed.contains(w));
        let max_eq = r.generator_weights.iter().max() == listed.iter().max();
        if !subset || !max_eq {
            bad.push(format!("N={n}: {:?} vs {:?}", r.generator_weights, listed));
        }
    }
    (bad.is_empty(), if bad.is_empty() { format!("{} levels within Table 2 with equal maximum", results.len()) } else { bad.join("; ") })
}

fn c7_table3() -> (bool, String) {
    let mut bad = Vec::new();
    let levels = table3::direct_levels();
    for &n in &levels {
        match table3::crosscheck_hauptmodul(n, 40) {
            Ok(c) => {
                let need = level_constants(n).unwrap().kappa_n.unwrap().min(40);
                if c.through < need || c.constants.len() != table3::expressions(n).len() {
                    bad.push(format!("N={n}: compared through {}", c.through));
                }
            }
            Err(e) => bad.push(format!("N={n}: {e}")),
        }
    }
    for n in [6u64, 10, 30] {
        if table3::expressions(n).len() < 2 {
            bad.push(format!("N={n}: single form"));
        }
    }
    (bad.is_empty(), if bad.is_empty() { format!("{} levels constant through min(κ_N, 40); multi-form rows agree up to constants", levels.len()) } else { bad.join("; ") })
}

fn c8_dimensions() -> (bool, String) {
    match dimension::dimension_suite(24) {
        Ok(r) => {
            let amb = dimension::ambiguous_cases(24);
            let flagged: Vec<String> = amb.iter().filter(|(_, ks)| !ks.is_empty()).map(|(n, ks)| format!("N={n} k={ks:?}")).collect();
            let mut detail = format!("{}/{} weights match", r.checks.iter().filter(|c| c.passed).count(), r.checks.len());
            if !flagged.is_empty() {
                detail.push_str(&format!("; printed case labels not exclusive at {}", flagged.join(", ")));
            }
            (r.passed(), detail)
        }
        Err(e) => (false, e.to_string()),
    }
}

fn c9_divisor() -> (bool, String) {
    let r = divisor_sum_identity_check(200);
    (r.passed(), r.checks[0].detail.clone())
}

fn c10_fricke() -> (bool, String) {
    let r = fricke_suite(&[5, 6, 17], 200, 1e-8);
    let d: Vec<String> = r.checks.iter().map(|c| format!("{} {}", c.name, c.detail)).collect();
    (r.passed(), d.join("; "))
}

fn runner(seed: u8) -> TestRunner {
    TestRunner::new_with_rng(Config { cases: 128, ..Config::default() }, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

fn series() -> impl Strategy<Value = QSeries> {
    (-2i64..3, prop::collection::vec((-5i64..6, 1i64..4), 1..8)).prop_map(|(off, cs)| {
        let n = cs.len() as i64;
        QSeries::new(off, off + n - 1, cs.into_iter().map(|(a, b)| rat(a, b)).collect())
    })
}

fn matrix() -> impl Strategy<Value = ExpansionMatrix<u32>> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..4, c), r).prop_map(move |rows| ExpansionMatrix {
            rows: rows
                .into_iter()
                .enumerate()
                .map(|(i, v)| (i as u32, QSeries::from_integers(0, &v).truncate(c as i64 - 1)))
                .collect(),
            lo: 0,
            hi: c as i64 - 1,
        })
    })
}

fn c11_properties() -> (bool, String) {
    let mut bad = Vec::new();
    let agree = |a: &QSeries, b: &QSeries| a.first_difference(b).is_none();
    let algebra = runner(1).run(&(series(), series(), series()), |(a, b, c)| {
        prop_assert!(agree(&a.mul(&b), &b.mul(&a)));
        prop_assert!(agree(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c))));
        prop_assert!(agree(&a.mul(&(&b + &c)), &(&a.mul(&b) + &a.mul(&c))));
        if let Ok(inv) = a.invert() {
            prop_assert!(agree(&a.mul(&inv), &QSeries::one(0)));
        }
        Ok(())
    });
    if let Err(e) = algebra {
        bad.push(format!("series algebra: {e}"));
    }
    // a product of truncations never claims a coefficient it cannot know
    let soundness = runner(2).run(&(series(), series(), 0usize..6, 0usize..6), |(a, b, ca, cb)| {
        let ta = a.truncate(a.trunc() - ca as i64);
        let tb = b.truncate(b.trunc() - cb as i64);
        let full = a.mul(&b);
        let part = ta.mul(&tb);
        prop_assert!(part.trunc() <= full.trunc());
        prop_assert!(agree(&part, &full));
        Ok(())
    });
    if let Err(e) = soundness {
        bad.push(format!("truncation: {e}"));
    }
    let elim = runner(3).run(&matrix(), |m| {
        for rule in [PivotRule::ColumnMajor, PivotRule::RowPriority] {
            let e = rref_with_provenance(&m, rule).unwrap();
            for r in &e.rows {
                prop_assert_eq!(&recombine(&m, &r.combo), &r.expansion);
            }
            let again = ExpansionMatrix {
                rows: e.rows.iter().enumerate().map(|(i, r)| (i as u32, r.expansion.clone())).collect(),
                lo: m.lo,
                hi: m.hi,
            };
            let twice = rref_with_provenance(&again, rule).unwrap();
            let a: Vec<_> = e.rows.iter().map(|r| &r.expansion).collect();
            let b: Vec<_> = twice.rows.iter().map(|r| &r.expansion).collect();
            prop_assert_eq!(a, b);
            prop_assert_eq!(rref_with_provenance(&m, rule).unwrap(), e);
        }
        Ok(())
    });
    if let Err(e) = elim {
        bad.push(format!("elimination: {e}"));
    }
    (bad.is_empty(), if bad.is_empty() { "algebra, truncation and elimination properties hold (3 x 128 cases, fixed seeds)".into() } else { bad.join("; ") })
}

#[test]
fn acceptance() {
    assert_eq!(genus_zero_levels().count(), TABLE1.len());
    let mut results = BTreeMap::new();
    let outcomes = vec![
        criterion(1, "classical suite", Some(5.0), c1_classical),
        criterion(2, "equation-count law", Some(1.0), c2_counts),
        criterion(3, "pole law", Some(1.0), c3_poles),
        criterion(4, "JST3 end to end", Some(1800.0), || c4_end_to_end(&mut results)),
        criterion(5, "printed formulas", None, || c5_printed(&results)),
        criterion(6, "generator sets", None, || c6_generators(&results)),
        criterion(7, "Hauptmodul cross-checks", None, c7_table3),
        criterion(8, "dimension formulas", None, c8_dimensions),
        criterion(9, "divisor-sum identity", Some(1.0), c9_divisor),
        criterion(10, "Fricke transformation", None, c10_fricke),
        criterion(11, "property suites", None, c11_properties),
    ];
    for o in &outcomes {
        println!(
            "criterion {:>2} {}: {} ({:.2}s) {}",
            o.id,
            if o.pass { "PASS" } else { "FAIL" },
            o.title,
            o.secs,
            o.detail
        );
    }
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
