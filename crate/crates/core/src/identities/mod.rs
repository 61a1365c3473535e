//! Verification suites: printed identities, classical relations, dimension
//! formulas, divisor sums, Hauptmodul cross-checks against eta and theta
//! expressions, and a numeric Fricke test.

pub mod classical;
pub mod dimension;
pub mod divisor;
pub mod fricke;
pub mod level3;
pub mod reference;
pub mod report;
pub mod table3;
pub mod theta;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactnum::{parse_rational, Rational};
use crate::jst::{run_jst, FormulaIdentity, IdentityKind, JstOptions, JstResult, Monomial, Term, Variant};

pub use report::{Check, SuiteReport};

/// `(weight, exponent)` factors, an extra power of Δ_N, and the
/// coefficient as `"num/den"`.
pub type ReferenceTerm = (&'static [(u32, u32)], u32, &'static str);

/// A published identity.
#[derive(Clone, Copy, Debug)]
pub struct ReferenceIdentity {
    pub name: &'static str,
    pub level: u64,
    pub m: u32,
    pub kind: IdentityKind,
    pub terms: &'static [ReferenceTerm],
}

impl ReferenceIdentity {
    pub fn terms(&self) -> Vec<Term> {
        self.terms
            .iter()
            .map(|(factors, dp, c)| Term {
                monomial: Monomial { exponents: factors.iter().copied().collect() },
                delta_power: *dp,
                coefficient: parse_rational(c).expect("reference coefficient"),
            })
            .collect()
    }

    /// Terms of `computed` that disagree with the reference, as
    /// (monomial, Δ power, reference, computed). Missing terms count as zero.
    pub fn mismatches(&self, computed: &FormulaIdentity) -> Vec<(Monomial, u32, Rational, Rational)> {
        let zero = Rational::from_integer(0.into());
        let mut out = Vec::new();
        let reference = self.terms();
        for t in &reference {
            let c = computed.coefficient(&t.monomial, t.delta_power).cloned().unwrap_or(zero.clone());
            if c != t.coefficient {
                out.push((t.monomial.clone(), t.delta_power, t.coefficient.clone(), c));
            }
        }
        for t in &computed.terms {
            let known = reference
                .iter()
                .any(|r| r.monomial == t.monomial && r.delta_power == t.delta_power);
            if !known {
                out.push((t.monomial.clone(), t.delta_power, zero.clone(), t.coefficient.clone()));
            }
        }
        out
    }
}

pub fn reference_identities(level: u64) -> impl Iterator<Item = &'static ReferenceIdentity> {
    reference::REFERENCE_IDENTITIES.iter().filter(move |r| r.level == level)
}

/// A named group of checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Classical,
    Level(u64),
    Table3,
    Dimensions,
    DivisorSums,
    Fricke,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "classical" => Suite::Classical,
            "table3" => Suite::Table3,
            "dimensions" => Suite::Dimensions,
            "divisor-sums" => Suite::DivisorSums,
            "fricke" => Suite::Fricke,
            "all" => Suite::All,
            _ => match s.strip_prefix("level:").map(str::parse::<u64>) {
                Some(Ok(n)) => Suite::Level(n),
                _ => return Err(Error::Parse(format!("unknown suite `{s}`"))),
            },
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Suite::Classical => f.write_str("classical"),
            Suite::Level(n) => write!(f, "level:{n}"),
            Suite::Table3 => f.write_str("table3"),
            Suite::Dimensions => f.write_str("dimensions"),
            Suite::DivisorSums => f.write_str("divisor-sums"),
            Suite::Fricke => f.write_str("fricke"),
            Suite::All => f.write_str("all"),
        }
    }
}

/// Levels whose identities have published coefficients to compare against.
pub const LEVELS_WITH_REFERENCES: [u64; 4] = [2, 3, 5, 17];

fn pick(r: &JstResult, kind: IdentityKind) -> &FormulaIdentity {
    match kind {
        IdentityKind::HauptmodulNumerator => &r.hauptmodul,
        IdentityKind::KroneckerPower => &r.kronecker_power,
    }
}

fn reference_checks(report: &mut SuiteReport, r: &JstResult) {
    for x in reference_identities(r.level).filter(|x| x.m == r.m) {
        let bad = x.mismatches(pick(r, x.kind));
        let detail = match bad.first() {
            None => format!("{} terms agree", x.terms.len()),
            Some((mono, d, want, got)) => {
                format!("{} mismatched terms; first {mono} D^{d}: expected {want}, got {got}", bad.len())
            }
        };
        report.push(Check::new(format!("{} coefficients", x.name), bad.is_empty(), detail));
    }
}

/// Runs both algorithms at level `n`, checks each emitted identity and,
/// where published coefficients exist, compares them term by term.
pub fn level_suite(n: u64, opts: JstOptions) -> SuiteReport {
    let mut report = SuiteReport::new(format!("level:{n}"));
    let mut covered = Vec::new();
    for variant in [Variant::Jst3, Variant::Jst2] {
        if variant == Variant::Jst2 && reference_identities(n).all(|x| covered.contains(&x.m)) {
            continue;
        }
        match run_jst(n, variant, opts) {
            Ok(r) => {
                report.push(Check::new(
                    format!("{variant} closure"),
                    r.hauptmodul.is_homogeneous() && r.kronecker_power.is_homogeneous(),
                    format!("row {}, weights {:?}", r.summary_row(), r.generator_weights),
                ));
                reference_checks(&mut report, &r);
                covered.push(r.m);
            }
            Err(e) => report.push(Check::new(format!("{variant} closure"), false, e.to_string())),
        }
    }
    if n == 3 {
        report.push(Check::from_result("E8/(E8 - E4^2) = c1 j3 + c2", level3::e8_level3_rational_check(40), |c| {
            (true, format!("c1 = {}, c2 = {}", c.c1, c.c2))
        }));
    }
    report
}

pub fn table3_suite(trunc: i64) -> SuiteReport {
    let mut report = SuiteReport::new("table3");
    for n in table3::direct_levels() {
        report.push(Check::from_result(format!("t{n} - j{n}"), table3::crosscheck_hauptmodul(n, trunc), |c| {
            let cs: Vec<String> = c.constants.iter().map(|x| x.to_string()).collect();
            (true, format!("constant through q^{}: {}", c.through, cs.join(", ")))
        }));
    }
    report.skipped = table3::IMPLICIT_LEVELS.iter().map(|n| format!("t{n}: given only by a relation in j")).collect();
    report
}

pub fn run_suite(suite: Suite, opts: JstOptions) -> Result<Vec<SuiteReport>> {
    Ok(match suite {
        Suite::Classical => vec![classical::classical_suite(50)?],
        Suite::Level(n) => {
            let level = crate::forms::level_constants(n)?;
            if !level.genus_zero {
                return Err(Error::UnsupportedLevel(n));
            }
            vec![level_suite(n, opts)]
        }
        Suite::Table3 => vec![table3_suite(40)],
        Suite::Dimensions => vec![dimension::dimension_suite(24)?],
        Suite::DivisorSums => vec![divisor::divisor_sum_identity_check(200)],
        Suite::Fricke => vec![fricke::fricke_suite(&[5, 6, 17], 200, 1e-8)],
        Suite::All => {
            let mut out = Vec::new();
            for s in [Suite::Classical, Suite::Dimensions, Suite::DivisorSums, Suite::Fricke] {
                out.extend(run_suite(s, opts)?);
            }
            for n in LEVELS_WITH_REFERENCES {
                out.push(level_suite(n, opts));
            }
            out.push(table3_suite(40));
            out
        }
    })
}
