//! The JST2 and JST3 searches for the Hauptmodul j_N.
//!
//! For each denominator power M the candidate functions
//! `∏ E_w^(N)^{b_w} / Δ_N^{M'}` are expanded, the coefficient matrix is put
//! in reduced echelon form and the search stops once the reduced rows
//! contain a function `q⁻¹ + O(q)` and the constant 1. The provenance of
//! those two rows gives polynomial identities for `j_N Δ_N^M` and `Δ_N^M`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::elimination::{rref_with_provenance, select_pivot_rows, EchelonResult, ExpansionMatrix, PivotRule};
use crate::error::{Error, Result};
use crate::exactnum::{count_partitions_ge2, denominator_lcm, partitions_ge2, Rational};
use crate::forms::{eisenstein_plus, kronecker_limit, level_constants, LevelData};
use crate::qseries::QSeries;

/// Extra columns beyond κ_N.
pub const GUARD: i64 = 8;
pub const DEFAULT_M_MAX: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Jst2,
    Jst3,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Jst2 => "jst2",
            Variant::Jst3 => "jst3",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "jst2" => Ok(Variant::Jst2),
            "jst3" => Ok(Variant::Jst3),
            _ => Err(Error::Parse(format!("unknown variant {s:?}"))),
        }
    }
}

/// A product `∏ E_w^{b_w}` of level-N Eisenstein series.
///
/// Ordering compares the factor weights listed in decreasing order,
/// lexicographically, so monomials built from small weights come first:
/// `E4³ < E6² < E8·E4 < E12`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct Monomial {
    pub exponents: BTreeMap<u32, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn from_weights(weights: &[u32]) -> Self {
        let mut exponents = BTreeMap::new();
        for &w in weights {
            *exponents.entry(w).or_insert(0) += 1;
        }
        Monomial { exponents }
    }

    /// Factor weights with repetition, largest first.
    pub fn factors(&self) -> Vec<u32> {
        self.exponents
            .iter()
            .rev()
            .flat_map(|(&w, &e)| std::iter::repeat_n(w, e as usize))
            .collect()
    }

    pub fn total_weight(&self) -> u64 {
        self.exponents.iter().map(|(&w, &e)| w as u64 * e as u64).sum()
    }

    pub fn weights(&self) -> impl Iterator<Item = u32> + '_ {
        self.exponents.keys().copied()
    }

    /// q-expansion through `q^trunc`.
    pub fn expand(&self, n: u64, trunc: i64) -> Result<QSeries> {
        let mut acc = QSeries::one(trunc);
        for (&w, &e) in &self.exponents {
            acc = acc.mul(&eisenstein_plus(n, w, trunc)?.pow(e));
        }
        Ok(acc)
    }

    fn expand_with(&self, eis: &BTreeMap<u32, QSeries>, trunc: i64) -> QSeries {
        let mut acc = QSeries::one(trunc);
        for (&w, &e) in self.exponents.iter().rev() {
            acc = acc.mul(&eis[&w].truncate(trunc).pow(e));
        }
        acc
    }

    pub fn latex(&self, n: u64) -> String {
        self.exponents
            .iter()
            .rev()
            .map(|(w, e)| {
                if *e == 1 {
                    format!("E^{{({n})}}_{{{w}}}(z)")
                } else {
                    format!("\\big(E^{{({n})}}_{{{w}}}(z)\\big)^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.factors().cmp(&other.factors())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .rev()
            .map(|(w, e)| if *e == 1 { format!("E{w}") } else { format!("E{w}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// `monomial / Δ_N^{pole_power}`. Lower powers are preferred as pivots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Candidate {
    pole_power: u32,
    monomial: Monomial,
}

/// All monomials of weight `M k_N` in E_4, E_6, E_8, …
pub fn enumerate_monomials(n: u64, m: u32) -> Result<Vec<Monomial>> {
    let level = level_constants(n)?;
    let target = m as u64 * level.k_n;
    assert!(target.is_multiple_of(2), "weight M k_N is always even");
    Ok(partitions_ge2((target / 2) as u32)
        .parts
        .into_iter()
        .map(|p| Monomial::from_weights(&p.iter().map(|x| 2 * x).collect::<Vec<_>>()))
        .collect())
}

/// Size of the candidate set at step `m`.
pub fn equation_count(level: &LevelData, variant: Variant, m: u32) -> u64 {
    let half = |mm: u32| (mm as u64 * level.k_n / 2) as u32;
    match variant {
        Variant::Jst3 => count_partitions_ge2(half(m)),
        Variant::Jst2 => 1 + (1..=m).map(|mm| count_partitions_ge2(half(mm))).sum::<u64>(),
    }
}

pub fn max_pole(level: &LevelData, m: u32) -> i64 {
    m as i64 * level.v_inf
}

/// `1 / Δ_N^m` known through `q^trunc`.
fn inverse_delta_power(level: &LevelData, m: u32, trunc: i64) -> Result<QSeries> {
    if m == 0 {
        return Ok(QSeries::one(trunc));
    }
    let pole = max_pole(level, m);
    let rel = trunc + pole;
    let delta = kronecker_limit(level.n, level.v_inf + rel)?;
    delta.pow(m).invert()
}

/// `b / Δ_N^M` through `q^trunc`.
pub fn modular_function(n: u64, b: &Monomial, m: u32, trunc: i64) -> Result<QSeries> {
    let level = level_constants(n)?;
    let need = m as u64 * level.k_n;
    if b.total_weight() != need {
        return Err(Error::WeightMismatch { expected: need, found: b.total_weight() });
    }
    let rel = trunc + max_pole(&level, m);
    Ok(b.expand(n, rel)?.mul(&inverse_delta_power(&level, m, trunc)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityKind {
    /// `j_N Δ_N^M = Σ c · monomial · Δ_N^d`
    HauptmodulNumerator,
    /// `Δ_N^M = Σ c · monomial · Δ_N^d`
    KroneckerPower,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub monomial: Monomial,
    /// Extra factor `Δ_N^delta_power`; only JST2 produces nonzero powers.
    pub delta_power: u32,
    #[serde(with = "crate::exactnum::rational_string")]
    pub coefficient: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClearedTerm {
    pub monomial: Monomial,
    pub delta_power: u32,
    #[serde(with = "crate::exactnum::bigint_string")]
    pub coefficient: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaIdentity {
    pub level: u64,
    pub m: u32,
    pub kind: IdentityKind,
    pub terms: Vec<Term>,
    pub cleared_terms: Vec<ClearedTerm>,
    #[serde(with = "crate::exactnum::bigint_string")]
    pub cleared_denominator: BigInt,
}

impl FormulaIdentity {
    fn new(level: u64, m: u32, kind: IdentityKind, mut terms: Vec<Term>) -> Self {
        terms.sort_by(|a, b| (a.delta_power, &a.monomial).cmp(&(b.delta_power, &b.monomial)));
        let den = denominator_lcm(terms.iter().map(|t| &t.coefficient));
        let cleared_terms = terms
            .iter()
            .map(|t| ClearedTerm {
                monomial: t.monomial.clone(),
                delta_power: t.delta_power,
                coefficient: (&t.coefficient * Rational::from_integer(den.clone())).to_integer(),
            })
            .collect();
        FormulaIdentity { level, m, kind, terms, cleared_terms, cleared_denominator: den }
    }

    pub fn coefficient(&self, monomial: &Monomial, delta_power: u32) -> Option<&Rational> {
        self.terms
            .iter()
            .find(|t| &t.monomial == monomial && t.delta_power == delta_power)
            .map(|t| &t.coefficient)
    }

    /// `Σ c · monomial · Δ^d` through `q^trunc`.
    pub fn evaluate(&self, trunc: i64) -> Result<QSeries> {
        let delta = kronecker_limit(self.level, trunc)?;
        let weights: BTreeSet<u32> = self.terms.iter().flat_map(|t| t.monomial.weights()).collect();
        let eis = weights
            .into_iter()
            .map(|w| Ok((w, eisenstein_plus(self.level, w, trunc)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let parts: Vec<QSeries> = self
            .terms
            .par_iter()
            .map(|t| {
                let mut s = t.monomial.expand_with(&eis, trunc);
                if t.delta_power > 0 {
                    s = s.mul(&delta.pow(t.delta_power)).truncate(trunc);
                }
                s.scale(&t.coefficient)
            })
            .collect();
        Ok(parts.iter().fold(QSeries::zero(trunc), |acc, p| &acc + p))
    }

    /// Every term has weight `M k_N`.
    pub fn is_homogeneous(&self) -> bool {
        let Ok(level) = level_constants(self.level) else { return false };
        self.terms.iter().all(|t| {
            t.monomial.total_weight() + t.delta_power as u64 * level.k_n == self.m as u64 * level.k_n
        })
    }

    pub fn weights(&self) -> BTreeSet<u32> {
        self.terms.iter().flat_map(|t| t.monomial.weights()).collect()
    }

    pub fn latex(&self) -> String {
        let n = self.level;
        let delta = |p: u32| match p {
            0 => String::new(),
            1 => format!("\\Delta_{{{n}}}(z)"),
            p => format!("\\big(\\Delta_{{{n}}}(z)\\big)^{p}"),
        };
        let lhs = match self.kind {
            IdentityKind::HauptmodulNumerator => format!("j_{{{n}}}(z){}", delta(self.m)),
            IdentityKind::KroneckerPower => delta(self.m),
        };
        let mut out = format!("{lhs} =");
        for (i, t) in self.terms.iter().enumerate() {
            let c = &t.coefficient;
            let sign = if c.is_negative() { " - " } else if i == 0 { " " } else { " + " };
            let a = c.abs();
            let factor = [t.monomial.latex(n), delta(t.delta_power)]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect::<Vec<_>>()
                .join(" ");
            let coeff = if a.is_one() && !factor.is_empty() {
                String::new()
            } else if a.is_integer() {
                format!("{} ", a.numer())
            } else {
                format!("\\tfrac{{ {} }}{{ {} }} ", a.numer(), a.denom())
            };
            out.push_str(&format!("{sign}{coeff}{factor}"));
        }
        out
    }
}

impl fmt::Display for FormulaIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lhs = match self.kind {
            IdentityKind::HauptmodulNumerator => format!("j{0}*D{0}^{1}", self.level, self.m),
            IdentityKind::KroneckerPower => format!("D{}^{}", self.level, self.m),
        };
        write!(f, "{lhs} =")?;
        for t in &self.terms {
            let d = match t.delta_power {
                0 => String::new(),
                p => format!("*D{}^{p}", self.level),
            };
            write!(f, " + ({})*{}{d}", t.coefficient, t.monomial)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JstResult {
    pub level: u64,
    pub variant: Variant,
    pub m: u32,
    pub equation_count: u64,
    pub max_pole: i64,
    /// Last column of the coefficient matrix.
    pub trunc: i64,
    pub pivot_rule: PivotRule,
    pub hauptmodul: FormulaIdentity,
    pub kronecker_power: FormulaIdentity,
    pub generator_weights: Vec<u32>,
    /// q-expansion of j_N through `q^trunc`.
    pub hauptmodul_expansion: QSeries,
}

impl JstResult {
    /// `N M #eqs pole`, the summary row.
    pub fn summary_row(&self) -> String {
        format!("{} {} {} {}", self.level, self.m, self.equation_count, self.max_pole)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JstOptions {
    pub m_max: u32,
    /// Overrides the default last column κ_N + guard.
    pub trunc: Option<i64>,
    pub pivot_rule: PivotRule,
}

impl Default for JstOptions {
    fn default() -> Self {
        JstOptions { m_max: DEFAULT_M_MAX, trunc: None, pivot_rule: PivotRule::default() }
    }
}

pub fn default_trunc(level: &LevelData) -> Result<i64> {
    Ok(level.kappa()? + GUARD)
}

fn eisenstein_table(n: u64, weights: &BTreeSet<u32>, trunc: i64) -> Result<BTreeMap<u32, QSeries>> {
    weights
        .par_iter()
        .map(|&w| Ok((w, eisenstein_plus(n, w, trunc)?)))
        .collect()
}

fn expand_candidates(
    level: &LevelData,
    pole_power: u32,
    monomials: Vec<Monomial>,
    trunc: i64,
) -> Result<Vec<(Candidate, QSeries)>> {
    let rel = trunc + max_pole(level, pole_power);
    let weights: BTreeSet<u32> = monomials.iter().flat_map(|b| b.weights()).collect();
    let eis = eisenstein_table(level.n, &weights, rel)?;
    let inv = inverse_delta_power(level, pole_power, trunc)?;
    Ok(monomials
        .into_par_iter()
        .map(|b| {
            let f = b.expand_with(&eis, rel).mul(&inv);
            (Candidate { pole_power, monomial: b }, f)
        })
        .collect())
}

pub fn run_jst(n: u64, variant: Variant, opts: JstOptions) -> Result<JstResult> {
    let level = level_constants(n)?;
    if !level.genus_zero {
        return Err(Error::UnsupportedLevel(n));
    }
    let trunc = match opts.trunc {
        Some(t) => t,
        None => default_trunc(&level)?,
    };
    if trunc < 1 {
        return Err(Error::TruncationTooSmall { trunc, needed: 1 });
    }
    let mut rows: Vec<(Candidate, QSeries)> = Vec::new();
    let mut profile = String::from("none");
    for m in 1..=opts.m_max {
        if variant == Variant::Jst3 {
            rows.clear();
        } else if m == 1 {
            rows.push((Candidate { pole_power: 0, monomial: Monomial::one() }, QSeries::one(trunc)));
        }
        rows.extend(expand_candidates(&level, m, enumerate_monomials(n, m)?, trunc)?);
        let matrix = ExpansionMatrix { rows, lo: -max_pole(&level, m), hi: trunc };
        let (pivots, echelon) = reduce(&matrix, opts.pivot_rule)?;
        rows = matrix.rows;
        if let Some(echelon) = echelon {
            return finish(&level, variant, m, trunc, opts.pivot_rule, rows.len() as u64, &echelon);
        }
        profile = format!("M={m}: rank {}, pivots {}", pivots.len(), runs(&pivots));
    }
    Err(Error::NoStop { level: n, m_max: opts.m_max, profile })
}

/// `[-5..-2, 3]` style summary of a sorted exponent list.
fn runs(xs: &[i64]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < xs.len() {
        let mut j = i;
        while j + 1 < xs.len() && xs[j + 1] == xs[j] + 1 {
            j += 1;
        }
        parts.push(if j == i { xs[i].to_string() } else { format!("{}..{}", xs[i], xs[j]) });
        i = j + 1;
    }
    format!("[{}]", parts.join(", "))
}

fn stops(pivots: &[i64]) -> bool {
    pivots.contains(&-1) && pivots.contains(&0)
}

/// Pivot exponents of the reduced matrix, plus the exact reduction once the
/// stop is reached. Rows are first picked out modulo a prime and only those
/// are reduced exactly; the full matrix is used when the modular pass is
/// unusable or disagrees with the exact pivots.
fn reduce(
    matrix: &ExpansionMatrix<Candidate>,
    rule: PivotRule,
) -> Result<(Vec<i64>, Option<EchelonResult<Candidate>>)> {
    let exact = |m: &ExpansionMatrix<Candidate>| -> Result<(Vec<i64>, Option<EchelonResult<Candidate>>)> {
        let e = rref_with_provenance(m, rule)?;
        let p = e.pivots();
        Ok(if stops(&p) { (p, Some(e)) } else { (p, None) })
    };
    let Some(picked) = select_pivot_rows(matrix, rule)? else {
        return exact(matrix);
    };
    let pivots: Vec<i64> = picked.iter().map(|p| p.1).collect();
    if !stops(&pivots) {
        return Ok((pivots, None));
    }
    let sub = ExpansionMatrix {
        rows: picked.iter().map(|&(i, _)| matrix.rows[i].clone()).collect(),
        lo: matrix.lo,
        hi: matrix.hi,
    };
    let e = rref_with_provenance(&sub, rule)?;
    if e.pivots() == pivots {
        Ok((pivots, Some(e)))
    } else {
        exact(matrix)
    }
}

fn finish(
    level: &LevelData,
    variant: Variant,
    m: u32,
    trunc: i64,
    pivot_rule: PivotRule,
    equation_count: u64,
    echelon: &EchelonResult<Candidate>,
) -> Result<JstResult> {
    let (hauptmodul, kronecker_power) = extract_formulas(echelon, level.n, m)?;
    let j = echelon.row_with_pivot(-1).ok_or(Error::MissingPivot(-1))?.expansion.clone();
    let pole = max_pole(level, m);
    // Verification closure through the full numerator precision.
    let top = trunc + pole;
    let delta_m = kronecker_limit(level.n, top + 1)?.pow(m);
    for (identity, target) in
        [(&hauptmodul, j.mul(&delta_m)), (&kronecker_power, delta_m.clone())]
    {
        if !identity.is_homogeneous() {
            return Err(Error::IdentityFailed { name: identity_name(identity), exponent: 0 });
        }
        let lhs = identity.evaluate(top)?;
        if let Some(e) = lhs.first_difference(&target.truncate(top)) {
            return Err(Error::IdentityFailed { name: identity_name(identity), exponent: e });
        }
    }
    let generator_weights: Vec<u32> =
        hauptmodul.weights().union(&kronecker_power.weights()).copied().collect();
    Ok(JstResult {
        level: level.n,
        variant,
        m,
        equation_count,
        max_pole: pole,
        trunc,
        pivot_rule,
        hauptmodul,
        kronecker_power,
        generator_weights,
        hauptmodul_expansion: j,
    })
}

fn identity_name(f: &FormulaIdentity) -> String {
    match f.kind {
        IdentityKind::HauptmodulNumerator => format!("j{}*D{}^{}", f.level, f.level, f.m),
        IdentityKind::KroneckerPower => format!("D{}^{}", f.level, f.m),
    }
}

/// Reads the identities for `j_N Δ_N^M` and `Δ_N^M` off the reduced rows
/// with pivots `q⁻¹` and `q⁰`.
fn extract_formulas(
    echelon: &EchelonResult<Candidate>,
    n: u64,
    m: u32,
) -> Result<(FormulaIdentity, FormulaIdentity)> {
    let terms = |pivot: i64| -> Result<Vec<Term>> {
        let row = echelon.row_with_pivot(pivot).ok_or(Error::MissingPivot(pivot))?;
        Ok(row
            .combo
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(cand, c)| Term {
                monomial: cand.monomial.clone(),
                delta_power: m - cand.pole_power,
                coefficient: c.clone(),
            })
            .collect())
    };
    let j_row = echelon.row_with_pivot(-1).ok_or(Error::MissingPivot(-1))?;
    // reduced form already gives q⁻¹ + 0 + O(q)
    debug_assert_eq!(j_row.expansion.coeff(0), Some(Rational::zero()));
    debug_assert_eq!(j_row.expansion.coeff(-1), Some(Rational::one()));
    Ok((
        FormulaIdentity::new(n, m, IdentityKind::HauptmodulNumerator, terms(-1)?),
        FormulaIdentity::new(n, m, IdentityKind::KroneckerPower, terms(0)?),
    ))
}

pub fn generator_weights(r: &JstResult) -> Vec<u32> {
    r.generator_weights.clone()
}
