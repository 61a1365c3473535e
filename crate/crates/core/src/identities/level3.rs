//! `E₈/(E₈ - E₄²) = c₁ j₃ + c₂` at level three.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::forms::eisenstein_plus;
use crate::jst::{run_jst, JstOptions, Variant};
use crate::qseries::QSeries;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Level3Constants {
    #[serde(with = "crate::exactnum::rational_string")]
    pub c1: Rational,
    #[serde(with = "crate::exactnum::rational_string")]
    pub c2: Rational,
    pub through: i64,
}

/// Solves for `c₁, c₂` given `j₃ = q⁻¹ + O(q)` and checks the relation
/// through `q^trunc`. Also checks that `E₈ - E₄²` and `E₁₀ - E₄E₆` have no
/// constant term.
pub fn e8_level3_with(j3: &QSeries, trunc: i64) -> Result<Level3Constants> {
    let e = |k| eisenstein_plus(3, k, trunc + 2);
    let (e4, e6, e8, e10) = (e(4)?, e(6)?, e(8)?, e(10)?);
    let cusp8 = &e8 - &e4.mul(&e4);
    let cusp10 = &e10 - &e4.mul(&e6);
    for (name, c) in [("E8 - E4^2", &cusp8), ("E10 - E4 E6", &cusp10)] {
        if !c.coeff(0).unwrap_or_else(Rational::zero).is_zero() {
            return Err(Error::IdentityFailed { name: name.into(), exponent: 0 });
        }
    }
    let f = e8.mul(&cusp8.invert()?).truncate(trunc);
    let c1 = f.coeff(-1).unwrap_or_else(Rational::zero);
    let c2 = f.coeff(0).unwrap_or_else(Rational::zero) - &c1 * j3.coeff(0).unwrap_or_else(Rational::zero);
    let rhs = &j3.truncate(trunc).scale(&c1) + &QSeries::monomial(c2.clone(), 0, trunc);
    if let Some(e) = f.first_difference(&rhs) {
        return Err(Error::IdentityFailed { name: "E8/(E8 - E4^2) = c1 j3 + c2".into(), exponent: e });
    }
    Ok(Level3Constants { c1, c2, through: f.trunc().min(rhs.trunc()) })
}

pub fn e8_level3_rational_check(trunc: i64) -> Result<Level3Constants> {
    let opts = JstOptions { trunc: Some(trunc.max(crate::jst::default_trunc(&crate::forms::level_constants(3)?)?)), ..Default::default() };
    let r = run_jst(3, Variant::Jst3, opts)?;
    e8_level3_with(&r.hauptmodul_expansion, trunc)
}
