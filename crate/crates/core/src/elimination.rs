//! Exact reduced row echelon form of q-expansion matrices, keeping track of
//! how every reduced row is built from the input rows.
//!
//! Rows are held as integer vectors `[coefficients | combination]` and
//! reduced fraction-free, dividing out the content after every update. The
//! pair stays consistent under scaling, so denominators only appear at the
//! very end when each row is normalized to pivot 1.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{denominator_lcm, Rational};
use crate::qseries::QSeries;

/// How the pivot row is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum PivotRule {
    /// Sweep columns from the most negative exponent; in each column take the
    /// smallest-labelled row that is still free.
    ColumnMajor,
    /// Scan rows by increasing label and keep each one that is independent of
    /// the rows kept so far. The kept rows form the label-minimal basis.
    #[default]
    RowPriority,
}

/// Rows of q-expansions restricted to the exponents `lo..=hi`.
#[derive(Clone, Debug)]
pub struct ExpansionMatrix<L> {
    pub rows: Vec<(L, QSeries)>,
    pub lo: i64,
    pub hi: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedRow<L> {
    pub pivot: i64,
    pub expansion: QSeries,
    /// The reduced row equals `Σ c · row(label)` exactly.
    pub combo: Vec<(L, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonResult<L> {
    /// Ordered by pivot exponent, most negative first.
    pub rows: Vec<ReducedRow<L>>,
    pub rank: usize,
}

impl<L> EchelonResult<L> {
    pub fn row_with_pivot(&self, exponent: i64) -> Option<&ReducedRow<L>> {
        self.rows.iter().find(|r| r.pivot == exponent)
    }

    pub fn pivots(&self) -> Vec<i64> {
        self.rows.iter().map(|r| r.pivot).collect()
    }
}

#[derive(Clone, Default)]
struct WorkRow {
    data: Vec<BigInt>,
    combo: Vec<BigInt>,
}

impl WorkRow {
    fn leading(&self) -> Option<usize> {
        self.data.iter().position(|x| !x.is_zero())
    }

    /// `self <- p*self - a*other` where `a = self[col]`, `p = other[col]`.
    fn eliminate(&mut self, other: &WorkRow, col: usize) {
        let a = self.data[col].clone();
        if a.is_zero() {
            return;
        }
        let p = &other.data[col];
        let g = a.gcd(p);
        let (a, p) = (&a / &g, p / &g);
        let update = |x: &mut BigInt, y: &BigInt| {
            let scaled = if p.is_one() { x.clone() } else { &*x * &p };
            *x = if y.is_zero() { scaled } else { scaled - &a * y };
        };
        for (x, y) in self.data.iter_mut().zip(&other.data) {
            update(x, y);
        }
        for (x, y) in self.combo.iter_mut().zip(&other.combo) {
            update(x, y);
        }
        self.remove_content();
    }

    fn remove_content(&mut self) {
        let mut g = BigInt::zero();
        for x in self.data.iter().chain(&self.combo) {
            if !x.is_zero() {
                g = g.gcd(x);
                if g.is_one() {
                    return;
                }
            }
        }
        if g.is_zero() || g.is_one() {
            return;
        }
        for x in self.data.iter_mut().chain(self.combo.iter_mut()) {
            if !x.is_zero() {
                *x = &*x / &g;
            }
        }
    }
}

fn check_coverage<L>(m: &ExpansionMatrix<L>) -> Result<()> {
    if m.hi < m.lo {
        return Err(Error::TruncationTooSmall { trunc: m.hi, needed: m.lo });
    }
    for (_, s) in &m.rows {
        if s.trunc() < m.hi {
            return Err(Error::TruncationTooSmall { trunc: s.trunc(), needed: m.hi });
        }
        if let Some(v) = s.valuation() {
            if v < m.lo {
                return Err(Error::OutsideColumns { exponent: v, lo: m.lo });
            }
        }
    }
    Ok(())
}

fn to_work_rows<L>(m: &ExpansionMatrix<L>) -> Result<(Vec<WorkRow>, Vec<BigInt>)> {
    check_coverage(m)?;
    let ncols = (m.hi - m.lo + 1) as usize;
    let nrows = m.rows.len();
    let mut scales = Vec::with_capacity(nrows);
    let mut rows = Vec::with_capacity(nrows);
    for (i, (_, s)) in m.rows.iter().enumerate() {
        let block: Vec<Rational> =
            (m.lo..=m.hi).map(|n| s.coeff(n).expect("within truncation")).collect();
        let den = denominator_lcm(&block);
        let data = block.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let mut combo = vec![BigInt::zero(); nrows];
        combo[i] = BigInt::one();
        scales.push(den);
        rows.push(WorkRow { data, combo });
        debug_assert_eq!(rows[i].data.len(), ncols);
    }
    Ok((rows, scales))
}

/// Reduces `m` to row echelon form with every pivot equal to 1 and cleared
/// above and below. Rows reducing to zero are dropped.
pub fn rref_with_provenance<L: Clone + Ord + Send + Sync>(
    m: &ExpansionMatrix<L>,
    rule: PivotRule,
) -> Result<EchelonResult<L>> {
    let (mut rows, scales) = to_work_rows(m)?;
    let mut order: Vec<usize> = (0..m.rows.len()).collect();
    order.sort_by(|&a, &b| m.rows[a].0.cmp(&m.rows[b].0));
    let ncols = (m.hi - m.lo + 1) as usize;

    // pivot column of each row that became a pivot
    let mut pivot_col: Vec<Option<usize>> = vec![None; rows.len()];
    match rule {
        PivotRule::ColumnMajor => {
            for col in 0..ncols {
                let pick = order
                    .iter()
                    .copied()
                    .find(|&i| pivot_col[i].is_none() && !rows[i].data[col].is_zero());
                let Some(i) = pick else { continue };
                pivot_col[i] = Some(col);
                let pivot = rows[i].clone();
                rows.par_iter_mut()
                    .enumerate()
                    .filter(|(j, r)| *j != i && !r.data[col].is_zero())
                    .for_each(|(_, r)| r.eliminate(&pivot, col));
            }
        }
        PivotRule::RowPriority => {
            let mut kept: Vec<usize> = Vec::new();
            for &i in &order {
                for &k in &kept {
                    let c = pivot_col[k].expect("kept row has a pivot");
                    if !rows[i].data[c].is_zero() {
                        let pivot = rows[k].clone();
                        rows[i].eliminate(&pivot, c);
                    }
                }
                let Some(col) = rows[i].leading() else { continue };
                pivot_col[i] = Some(col);
                let pivot = rows[i].clone();
                let mut others: Vec<(usize, WorkRow)> =
                    kept.iter().map(|&k| (k, std::mem::take(&mut rows[k]))).collect();
                others
                    .par_iter_mut()
                    .filter(|(_, r)| !r.data[col].is_zero())
                    .for_each(|(_, r)| r.eliminate(&pivot, col));
                for (k, r) in others {
                    rows[k] = r;
                }
                kept.push(i);
            }
        }
    }

    let mut out: Vec<(usize, usize)> = pivot_col
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.map(|c| (c, i)))
        .collect();
    out.sort();
    let reduced = out
        .into_iter()
        .map(|(col, i)| {
            let r = &rows[i];
            let p = Rational::from_integer(r.data[col].clone());
            let coeffs = r.data.iter().map(|x| Rational::from_integer(x.clone()) / &p).collect();
            let mut combo: Vec<(L, Rational)> = r
                .combo
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| {
                    (m.rows[j].0.clone(), Rational::new(c * &scales[j], BigInt::one()) / &p)
                })
                .collect();
            combo.sort_by(|a, b| a.0.cmp(&b.0));
            ReducedRow {
                pivot: m.lo + col as i64,
                expansion: QSeries::new(m.lo, m.hi, coeffs),
                combo,
            }
        })
        .collect::<Vec<_>>();
    Ok(EchelonResult { rank: reduced.len(), rows: reduced })
}

const P: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, P - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        e >>= 1;
    }
    acc
}

fn residue(r: &Rational) -> Option<u64> {
    let p = BigInt::from(P);
    let to_u64 = |x: &BigInt| -> u64 { x.mod_floor(&p).try_into().expect("reduced mod p") };
    let den = to_u64(r.denom());
    (den != 0).then(|| mul_mod(to_u64(r.numer()), inv_mod(den)))
}

/// `row <- row - row[col] * pivot`, for a pivot normalized to 1 at `col`.
fn sub_mod(row: &mut [u64], pivot: &[u64], col: usize) {
    let f = row[col];
    if f == 0 {
        return;
    }
    for (x, &y) in row.iter_mut().zip(pivot) {
        if y != 0 {
            *x = (*x + P - mul_mod(f, y)) % P;
        }
    }
}

fn normalize_mod(row: &mut [u64], col: usize) {
    let inv = inv_mod(row[col]);
    for x in row.iter_mut() {
        *x = mul_mod(*x, inv);
    }
}

/// The rows that `rule` turns into pivots, with their pivot exponents,
/// found by reducing modulo a 61-bit prime.
///
/// Rows independent modulo p are independent over the rationals, so running
/// [`rref_with_provenance`] on just these rows always gives full rank. When
/// no rank is lost modulo p the result equals the full reduction. `None`
/// means some denominator vanished modulo p.
pub fn select_pivot_rows<L: Ord>(m: &ExpansionMatrix<L>, rule: PivotRule) -> Result<Option<Vec<(usize, i64)>>> {
    check_coverage(m)?;
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(m.rows.len());
    for (_, s) in &m.rows {
        let r: Option<Vec<u64>> = (m.lo..=m.hi).map(|n| residue(&s.coeff(n).expect("within truncation"))).collect();
        let Some(r) = r else { return Ok(None) };
        rows.push(r);
    }
    let mut order: Vec<usize> = (0..m.rows.len()).collect();
    order.sort_by(|&a, &b| m.rows[a].0.cmp(&m.rows[b].0));
    let ncols = (m.hi - m.lo + 1) as usize;
    let mut picked: Vec<(usize, usize)> = Vec::new();
    match rule {
        PivotRule::ColumnMajor => {
            let mut free: Vec<usize> = order;
            for col in 0..ncols {
                let Some(pos) = free.iter().position(|&i| rows[i][col] != 0) else { continue };
                let i = free.remove(pos);
                normalize_mod(&mut rows[i], col);
                let pivot = std::mem::take(&mut rows[i]);
                for &j in &free {
                    sub_mod(&mut rows[j], &pivot, col);
                }
                picked.push((col, i));
            }
        }
        PivotRule::RowPriority => {
            let mut kept: Vec<(usize, Vec<u64>)> = Vec::new();
            for &i in &order {
                let mut r = std::mem::take(&mut rows[i]);
                for (c, k) in &kept {
                    sub_mod(&mut r, k, *c);
                }
                let Some(col) = r.iter().position(|&x| x != 0) else { continue };
                normalize_mod(&mut r, col);
                for (_, k) in kept.iter_mut() {
                    sub_mod(k, &r, col);
                }
                kept.push((col, r));
                picked.push((col, i));
            }
        }
    }
    picked.sort();
    Ok(Some(picked.into_iter().map(|(c, i)| (i, m.lo + c as i64)).collect()))
}

/// `Σ c · row(label)` over the matrix columns; used to audit a combination.
pub fn recombine<L: PartialEq>(m: &ExpansionMatrix<L>, combo: &[(L, Rational)]) -> QSeries {
    let mut acc = QSeries::zero(m.hi);
    for (label, c) in combo {
        let (_, s) = m.rows.iter().find(|(l, _)| l == label).expect("label present");
        acc = &acc + &s.truncate(m.hi).scale(c);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use proptest::prelude::*;

    fn ints(offset: i64, c: &[i64]) -> QSeries {
        QSeries::from_integers(offset, c)
    }

    #[test]
    fn two_by_two() {
        let m = ExpansionMatrix { rows: vec![(0, ints(0, &[1, 1])), (1, ints(0, &[1, -1]))], lo: 0, hi: 1 };
        for rule in [PivotRule::ColumnMajor, PivotRule::RowPriority] {
            let e = rref_with_provenance(&m, rule).unwrap();
            assert_eq!(e.rank, 2);
            assert_eq!(e.pivots(), [0, 1]);
            assert_eq!(e.rows[0].combo, [(0, rat(1, 2)), (1, rat(1, 2))]);
            assert_eq!(e.rows[1].combo, [(0, rat(1, 2)), (1, rat(-1, 2))]);
        }
    }

    #[test]
    fn single_row() {
        let m = ExpansionMatrix { rows: vec![("a", ints(-1, &[1, 1]))], lo: -1, hi: 0 };
        let e = rref_with_provenance(&m, PivotRule::ColumnMajor).unwrap();
        assert_eq!(e.pivots(), [-1]);
        assert_eq!(e.rows[0].combo, [("a", rat(1, 1))]);
    }

    #[test]
    fn zero_and_dependent_rows_are_dropped() {
        let rows = vec![
            (0, ints(0, &[1, 2, 3])),
            (1, ints(0, &[2, 4, 6])),
            (2, QSeries::zero(2)),
            (3, ints(0, &[0, 1, 1])),
        ];
        let m = ExpansionMatrix { rows, lo: 0, hi: 2 };
        for rule in [PivotRule::ColumnMajor, PivotRule::RowPriority] {
            let e = rref_with_provenance(&m, rule).unwrap();
            assert_eq!(e.rank, 2);
            for r in &e.rows {
                assert!(r.combo.iter().all(|(l, _)| *l != 1), "dependent row used");
            }
        }
    }

    #[test]
    fn row_priority_prefers_small_labels_over_columns() {
        // label 0 is a late-pivot row, 2 would win column-wise
        let rows = vec![(0, ints(0, &[1, 1])), (1, ints(0, &[2, 2])), (2, ints(0, &[0, 1]))];
        let m = ExpansionMatrix { rows, lo: 0, hi: 1 };
        let e = rref_with_provenance(&m, PivotRule::RowPriority).unwrap();
        let used: Vec<_> = e.rows.iter().flat_map(|r| r.combo.iter().map(|(l, _)| *l)).collect();
        assert!(!used.contains(&1));
    }

    #[test]
    fn coverage_is_checked() {
        let m = ExpansionMatrix { rows: vec![(0, ints(0, &[1, 1]))], lo: 0, hi: 3 };
        assert!(matches!(
            rref_with_provenance(&m, PivotRule::ColumnMajor),
            Err(Error::TruncationTooSmall { trunc: 1, needed: 3 })
        ));
        let m = ExpansionMatrix { rows: vec![(0, ints(-2, &[1, 1, 1]))], lo: -1, hi: 0 };
        assert!(matches!(
            rref_with_provenance(&m, PivotRule::ColumnMajor),
            Err(Error::OutsideColumns { exponent: -2, lo: -1 })
        ));
    }

    fn matrix_strategy() -> impl Strategy<Value = ExpansionMatrix<u32>> {
        (1usize..7, 1usize..7).prop_flat_map(|(nrows, ncols)| {
            prop::collection::vec(prop::collection::vec((-4i64..5, 1i64..4), ncols), nrows)
                .prop_map(move |rows| ExpansionMatrix {
                    rows: rows
                        .into_iter()
                        .enumerate()
                        .map(|(i, r)| {
                            let c = r.into_iter().map(|(n, d)| rat(n, d)).collect();
                            (i as u32, QSeries::new(-1, ncols as i64 - 2, c))
                        })
                        .collect(),
                    lo: -1,
                    hi: ncols as i64 - 2,
                })
        })
    }

    fn config() -> ProptestConfig {
        ProptestConfig {
            rng_seed: prop::test_runner::RngSeed::Fixed(0x5eed),
            ..ProptestConfig::with_cases(200)
        }
    }

    proptest! {
        #![proptest_config(config())]

        #[test]
        fn reconstruction_and_shape(m in matrix_strategy()) {
            for rule in [PivotRule::ColumnMajor, PivotRule::RowPriority] {
                let e = rref_with_provenance(&m, rule).unwrap();
                prop_assert!(e.rank <= m.rows.len().min((m.hi - m.lo + 1) as usize));
                let piv = e.pivots();
                prop_assert!(piv.windows(2).all(|w| w[0] < w[1]));
                for r in &e.rows {
                    prop_assert_eq!(&recombine(&m, &r.combo), &r.expansion);
                    for other in &e.rows {
                        let c = other.expansion.coeff(r.pivot).unwrap();
                        let want = if other.pivot == r.pivot { rat(1, 1) } else { rat(0, 1) };
                        prop_assert_eq!(c, want);
                    }
                }
            }
        }

        #[test]
        fn idempotent_and_rule_independent(m in matrix_strategy()) {
            let a = rref_with_provenance(&m, PivotRule::ColumnMajor).unwrap();
            let b = rref_with_provenance(&m, PivotRule::RowPriority).unwrap();
            // the reduced form of a row space is unique
            let ea: Vec<_> = a.rows.iter().map(|r| r.expansion.clone()).collect();
            let eb: Vec<_> = b.rows.iter().map(|r| r.expansion.clone()).collect();
            prop_assert_eq!(&ea, &eb);
            let again = ExpansionMatrix {
                rows: a.rows.iter().enumerate().map(|(i, r)| (i as u32, r.expansion.clone())).collect(),
                lo: m.lo,
                hi: m.hi,
            };
            let c = rref_with_provenance(&again, PivotRule::ColumnMajor).unwrap();
            prop_assert_eq!(c.pivots(), a.pivots());
            prop_assert_eq!(c.rank, a.rank);
            // determinism
            prop_assert_eq!(rref_with_provenance(&m, PivotRule::ColumnMajor).unwrap(), a);
        }

        #[test]
        fn modular_selection_matches_full_reduction(m in matrix_strategy()) {
            for rule in [PivotRule::ColumnMajor, PivotRule::RowPriority] {
                let full = rref_with_provenance(&m, rule).unwrap();
                let picked = select_pivot_rows(&m, rule).unwrap().unwrap();
                let piv: Vec<i64> = picked.iter().map(|p| p.1).collect();
                prop_assert_eq!(&piv, &full.pivots());
                let sub = ExpansionMatrix {
                    rows: picked.iter().map(|&(i, _)| m.rows[i].clone()).collect(),
                    lo: m.lo,
                    hi: m.hi,
                };
                prop_assert_eq!(rref_with_provenance(&sub, rule).unwrap(), full);
            }
        }
    }
}
