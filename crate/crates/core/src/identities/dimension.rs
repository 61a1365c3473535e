//! Dimensions of weight `2k` holomorphic forms at levels 2, 3 and 5, as
//! ranks of coefficient matrices of generator monomials.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::elimination::{rref_with_provenance, ExpansionMatrix, PivotRule};
use crate::error::{Error, Result};
use crate::forms::{eisenstein_plus, kronecker_limit, level_constants};
use crate::identities::report::{Check, SuiteReport};
use crate::qseries::QSeries;

/// Generator weights and whether each is an Eisenstein series or `Δ_N`.
fn generators(n: u64) -> Result<Vec<(u32, bool)>> {
    match n {
        2 => Ok(vec![(4, false), (6, false), (8, false)]),
        3 => Ok(vec![(4, false), (6, false), (8, false), (10, false), (12, false), (12, true)]),
        5 => Ok(vec![(4, false), (4, true), (6, false)]),
        _ => Err(Error::UnsupportedLevel(n)),
    }
}

/// Exponent vectors over the generators with total weight `k2`.
fn monomials(gens: &[(u32, bool)], k2: u32) -> Vec<Vec<u32>> {
    fn go(gens: &[(u32, bool)], left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let i = cur.len();
        if i == gens.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = gens[i].0;
        for e in 0..=left / w {
            cur.push(e);
            go(gens, left - e * w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(gens, k2, &mut Vec::new(), &mut out);
    out
}

/// Sturm-type bound: coefficients needed to separate weight `k2` forms.
pub fn coefficient_bound(n: u64, k2: u32) -> Result<i64> {
    let level = level_constants(n)?;
    let b = level.vol_over_2pi * crate::exactnum::rat(k2 as i64, 2);
    Ok(b.floor().to_integer().try_into().expect("small bound"))
}

pub fn dimension_rank(n: u64, k2: u32, trunc: i64) -> Result<usize> {
    let gens = generators(n)?;
    if k2 % 2 == 1 {
        return Err(Error::InvalidWeight(k2 as i64));
    }
    let series: Vec<QSeries> = gens
        .iter()
        .map(|&(w, is_delta)| if is_delta { kronecker_limit(n, trunc) } else { eisenstein_plus(n, w, trunc) })
        .collect::<Result<_>>()?;
    let rows: Vec<(usize, QSeries)> = monomials(&gens, k2)
        .into_iter()
        .enumerate()
        .map(|(i, exps)| {
            let s = exps
                .iter()
                .zip(&series)
                .fold(QSeries::one(trunc), |acc, (&e, g)| if e == 0 { acc } else { acc.mul(&g.pow(e)) });
            (i, s)
        })
        .collect();
    if rows.is_empty() {
        return Ok(0);
    }
    let m = ExpansionMatrix { rows, lo: 0, hi: trunc };
    Ok(rref_with_provenance(&m, PivotRule::ColumnMajor)?.rank)
}

/// Value of the closed formula for weight `2k`, and whether the printed
/// case conditions pick out exactly one branch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedForm {
    pub value: u64,
    pub branches_matching: usize,
}

pub fn closed_form(n: u64, k: u64) -> Result<ClosedForm> {
    // (modulus of the floor, condition for the first branch, printed
    // condition for the second branch)
    let (d, first, second): (u64, bool, bool) = match n {
        2 => (4, k % 4 == 1, k % 4 != 1),
        3 => (3, matches!(k % 6, 1 | 3), !matches!(k % 6, 1 | 3)),
        5 => (2, k % 2 == 1, !k.is_multiple_of(2)),
        _ => return Err(Error::UnsupportedLevel(n)),
    };
    let branches_matching = usize::from(first) + usize::from(second);
    // the second branch is read as the complement of the first
    let value = if first { k / d } else { k / d + 1 };
    Ok(ClosedForm { value, branches_matching })
}

pub fn dimension_suite(max_weight: u32) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("dimensions");
    for n in [2u64, 3, 5] {
        for k2 in (0..=max_weight).step_by(2) {
            let k = k2 as u64 / 2;
            let cf = closed_form(n, k)?;
            let trunc = coefficient_bound(n, k2)? + 5;
            let rank = dimension_rank(n, k2, trunc)?;
            let mut detail = format!("rank {rank}, formula {}", cf.value);
            if cf.branches_matching != 1 {
                detail.push_str(&format!("; printed cases: {} branches apply to k = {k}", cf.branches_matching));
            }
            report.push(Check::new(format!("N={n} weight {k2}"), rank as u64 == cf.value, detail));
        }
    }
    Ok(report)
}

/// Printed branch conditions that fail to select a unique case, per level.
pub fn ambiguous_cases(max_weight: u32) -> BTreeMap<u64, Vec<u64>> {
    let mut out = BTreeMap::new();
    for n in [2u64, 3, 5] {
        let ks: Vec<u64> = (0..=max_weight as u64 / 2)
            .filter(|&k| closed_form(n, k).is_ok_and(|c| c.branches_matching != 1))
            .collect();
        out.insert(n, ks);
    }
    out
}
