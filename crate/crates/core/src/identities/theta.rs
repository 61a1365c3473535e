//! Theta series of positive definite binary quadratic forms.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{rat, Rational};
use crate::puiseux::Puiseux;
use crate::qseries::QSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    All,
    /// Only odd `x`.
    XOdd,
    /// Only odd `y`.
    YOdd,
}

/// `Σ q^{(a x² + b xy + c y²)/2}` over the lattice points allowed by `parity`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaSpec {
    #[serde(with = "crate::exactnum::rational_string")]
    pub a: Rational,
    #[serde(with = "crate::exactnum::rational_string")]
    pub b: Rational,
    #[serde(with = "crate::exactnum::rational_string")]
    pub c: Rational,
    pub parity: Parity,
}

impl ThetaSpec {
    pub fn new(a: Rational, b: Rational, c: Rational, parity: Parity) -> Self {
        ThetaSpec { a, b, c, parity }
    }

    pub fn integral(a: i64, b: i64, c: i64) -> Self {
        Self::new(rat(a, 1), rat(b, 1), rat(c, 1), Parity::All)
    }

    /// `4ac - b²`.
    pub fn discriminant(&self) -> Rational {
        rat(4, 1) * &self.a * &self.c - &self.b * &self.b
    }

    /// Swaps the roles of x and y.
    pub fn transposed(&self) -> Self {
        let parity = match self.parity {
            Parity::All => Parity::All,
            Parity::XOdd => Parity::YOdd,
            Parity::YOdd => Parity::XOdd,
        };
        Self::new(self.c.clone(), self.b.clone(), self.a.clone(), parity)
    }

    fn check(&self) -> Result<()> {
        if !self.a.is_positive() || !self.discriminant().is_positive() {
            return Err(Error::Indefinite {
                a: self.a.to_string(),
                b: self.b.to_string(),
                c: self.c.to_string(),
            });
        }
        Ok(())
    }
}

/// Expansion on the `q^(1/d)` lattice where `d` clears the denominators of
/// `a/2, b/2, c/2`; every exponent up to `trunc + (d-1)/d` is known.
pub fn theta_puiseux(spec: &ThetaSpec, trunc: i64) -> Result<Puiseux> {
    spec.check()?;
    let two = rat(2, 1);
    let halves = [&spec.a / &two, &spec.b / &two, &spec.c / &two];
    let d = halves.iter().fold(num_bigint::BigInt::from(1), |acc, h| acc.lcm(h.denom()));
    let d_i = d.to_i64().expect("small lattice");
    let [a, b, c] = halves.map(|h| (h * Rational::from_integer(d.clone())).to_integer().to_i64().expect("small form"));
    // exponent times d is a x² + b xy + c y² with the scaled integers
    let top = trunc * d_i + d_i - 1;
    let mut coeffs = vec![0i64; top.max(0) as usize + 1];
    let disc = (4 * a * c - b * b) as f64;
    let xmax = ((4 * c) as f64 * top as f64 / disc).sqrt() as i64 + 1;
    let ymax = ((4 * a) as f64 * top as f64 / disc).sqrt() as i64 + 1;
    for x in -xmax..=xmax {
        if spec.parity == Parity::XOdd && x.is_even() {
            continue;
        }
        for y in -ymax..=ymax {
            if spec.parity == Parity::YOdd && y.is_even() {
                continue;
            }
            let e = a * x * x + b * x * y + c * y * y;
            if e <= top {
                coeffs[e as usize] += 1;
            }
        }
    }
    let s = QSeries::from_integers(0, &coeffs);
    Ok(Puiseux::new(d_i as u64, s))
}

/// Integral-exponent theta series through `q^trunc`.
pub fn theta_series(spec: &ThetaSpec, trunc: i64) -> Result<QSeries> {
    Ok(theta_puiseux(spec, trunc)?.to_qseries()?.truncate(trunc))
}
