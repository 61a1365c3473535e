use hauptmodul::elimination::PivotRule;
use hauptmodul::identities::{reference_identities, ReferenceIdentity};
use hauptmodul::jst::{run_jst, FormulaIdentity, IdentityKind, JstOptions, Variant};

fn pick(r: &hauptmodul::jst::JstResult, kind: IdentityKind) -> &FormulaIdentity {
    match kind {
        IdentityKind::HauptmodulNumerator => &r.hauptmodul,
        IdentityKind::KroneckerPower => &r.kronecker_power,
    }
}

fn check_level(n: u64, variant: Variant, rule: PivotRule) {
    let r = run_jst(n, variant, JstOptions { pivot_rule: rule, ..Default::default() }).unwrap();
    let refs: Vec<&ReferenceIdentity> = reference_identities(n)
        .filter(|x| x.m == r.m)
        .collect();
    assert!(!refs.is_empty(), "N={n}");
    for x in refs {
        let bad = x.mismatches(pick(&r, x.kind));
        assert!(bad.is_empty(), "{} under {rule:?}: {bad:?}", x.name);
    }
}

#[test]
fn level_two() {
    for rule in [PivotRule::RowPriority, PivotRule::ColumnMajor] {
        check_level(2, Variant::Jst3, rule);
    }
}

#[test]
fn level_three() {
    for rule in [PivotRule::RowPriority, PivotRule::ColumnMajor] {
        check_level(3, Variant::Jst3, rule);
    }
}

#[test]
fn level_five() {
    for rule in [PivotRule::RowPriority, PivotRule::ColumnMajor] {
        check_level(5, Variant::Jst3, rule);
    }
    check_level(5, Variant::Jst2, PivotRule::RowPriority);
}

#[test]
fn level_seventeen() {
    for rule in [PivotRule::RowPriority, PivotRule::ColumnMajor] {
        check_level(17, Variant::Jst3, rule);
    }
}
