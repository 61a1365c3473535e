//! Level one relations between E₄, E₆, E₈, E₁₀, E₁₂, Δ and j.

use crate::error::Result;
use crate::exactnum::rat;
use crate::forms::{classical_eisenstein, eta_product, EtaProduct};
use crate::identities::report::{Check, SuiteReport};
use crate::qseries::QSeries;

fn equality(name: &str, lhs: &QSeries, rhs: &QSeries) -> Check {
    match lhs.first_difference(rhs) {
        None => Check::new(name, true, format!("equal through q^{}", lhs.trunc().min(rhs.trunc()))),
        Some(e) => Check::new(name, false, format!("first difference at q^{e}")),
    }
}

/// `j = 1728 E₄³ / (E₄³ - E₆²)` through `q^trunc`.
pub fn j_invariant(trunc: i64) -> Result<QSeries> {
    let e4 = classical_eisenstein(4, trunc + 1)?;
    let e6 = classical_eisenstein(6, trunc + 1)?;
    let e4c = e4.pow(3);
    let disc = &e4c - &e6.pow(2);
    Ok(e4c.scale(&rat(1728, 1)).mul(&disc.invert()?).truncate(trunc))
}

pub fn classical_suite(trunc: i64) -> Result<SuiteReport> {
    let e = |k| classical_eisenstein(k, trunc);
    let (e4, e6, e8, e10, e12) = (e(4)?, e(6)?, e(8)?, e(10)?, e(12)?);
    let mut report = SuiteReport::new("classical");

    let delta = (&e4.pow(3) - &e6.pow(2)).scale(&rat(1, 1728));
    let eta24 = eta_product(&EtaProduct::new(vec![(1, 24)]), trunc)?;
    report.push(equality("(E4^3 - E6^2)/1728 = eta^24", &delta, &eta24));
    report.push(equality("E8 = E4^2", &e8, &e4.mul(&e4)));
    report.push(equality("E10 = E4 E6", &e10, &e4.mul(&e6)));
    let rhs = &e4.pow(3).scale(&rat(441, 1)) + &e6.pow(2).scale(&rat(250, 1));
    report.push(equality("691 E12 = 441 E4^3 + 250 E6^2", &e12.scale(&rat(691, 1)), &rhs));

    let j = j_invariant(trunc.max(2))?;
    let want = [(-1, 1), (0, 744), (1, 196884), (2, 21493760)];
    let got: Vec<_> = want.iter().map(|&(k, _)| j.coeff(k)).collect();
    let ok = want.iter().zip(&got).all(|(&(_, c), g)| g.as_ref() == Some(&rat(c, 1)));
    let shown: Vec<String> = got.iter().map(|g| g.as_ref().map_or("?".into(), |c| c.to_string())).collect();
    report.push(Check::new("j = 1/q + 744 + 196884 q + 21493760 q^2", ok, shown.join(", ")));
    Ok(report)
}
