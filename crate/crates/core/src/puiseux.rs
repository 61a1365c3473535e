//! Series in a fractional power `q^(1/d)`.
//!
//! Eta products carry a `q^(1/24)` prefactor and theta series of quadratic
//! forms with half-integral coefficients live on `q^(1/4)`. Intermediate
//! quantities are kept here and only turned into a [`QSeries`] once every
//! surviving exponent is integral.

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::qseries::QSeries;

/// `sum c_k q^(k/denom)`, where `inner` holds the coefficients `c_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Puiseux {
    denom: u64,
    inner: QSeries,
}

impl Puiseux {
    pub fn new(denom: u64, inner: QSeries) -> Self {
        assert!(denom >= 1);
        Puiseux { denom, inner }.reduced()
    }

    pub fn from_qseries(s: QSeries) -> Self {
        Puiseux { denom: 1, inner: s }
    }

    /// `q^(num/den) * s`.
    pub fn shifted(num: i64, den: u64, s: &QSeries) -> Self {
        let g = num.unsigned_abs().gcd(&den).max(1);
        let (num, den) = (num / g as i64, den / g);
        Puiseux::new(den, s.dilate(den).shift(num))
    }

    pub fn denom(&self) -> u64 {
        self.denom
    }

    pub fn inner(&self) -> &QSeries {
        &self.inner
    }

    /// Largest exponent (as a fraction of q) whose coefficient is known.
    pub fn trunc(&self) -> Rational {
        Rational::new(self.inner.trunc().into(), (self.denom as i64).into())
    }

    /// Smallest common lattice the nonzero exponents live on.
    fn reduced(self) -> Self {
        if self.denom == 1 {
            return self;
        }
        let g = self
            .inner
            .terms()
            .fold(self.denom, |g, (k, _)| g.gcd(&k.unsigned_abs()));
        if g <= 1 || self.inner.is_zero() {
            return self;
        }
        // Keep the bound low enough that dilating back never claims a zero
        // past the original truncation.
        let g = g as i64;
        let trunc = (self.inner.trunc() + 1).div_euclid(g) - 1;
        let inner = compress(&self.inner, g, trunc);
        Puiseux { denom: self.denom / g as u64, inner }
    }

    fn on_lattice(&self, denom: u64) -> QSeries {
        debug_assert_eq!(denom % self.denom, 0);
        self.inner.dilate(denom / self.denom)
    }

    fn common(&self, other: &Puiseux) -> (u64, QSeries, QSeries) {
        let d = self.denom.lcm(&other.denom);
        (d, self.on_lattice(d), other.on_lattice(d))
    }

    pub fn add(&self, other: &Puiseux) -> Puiseux {
        let (d, a, b) = self.common(other);
        Puiseux::new(d, &a + &b)
    }

    pub fn sub(&self, other: &Puiseux) -> Puiseux {
        let (d, a, b) = self.common(other);
        Puiseux::new(d, &a - &b)
    }

    pub fn mul(&self, other: &Puiseux) -> Puiseux {
        let (d, a, b) = self.common(other);
        Puiseux::new(d, a.mul(&b))
    }

    pub fn scale(&self, c: &Rational) -> Puiseux {
        Puiseux::new(self.denom, self.inner.scale(c))
    }

    pub fn invert(&self) -> Result<Puiseux> {
        Ok(Puiseux::new(self.denom, self.inner.invert()?))
    }

    pub fn pow(&self, e: i64) -> Result<Puiseux> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        Ok(Puiseux::new(base.denom, base.inner.pow(e.unsigned_abs() as u32)))
    }

    pub fn div(&self, other: &Puiseux) -> Result<Puiseux> {
        Ok(self.mul(&other.invert()?))
    }

    /// Converts to an integral-exponent series, failing if any nonzero
    /// coefficient sits on a fractional exponent.
    pub fn to_qseries(&self) -> Result<QSeries> {
        if self.denom == 1 {
            return Ok(self.inner.clone());
        }
        let d = self.denom as i64;
        if let Some((k, _)) = self.inner.terms().find(|(k, _)| k.rem_euclid(d) != 0) {
            return Err(Error::FractionalExponent {
                prefactor24: k * 24 / d,
                residue: (k * 24 / d).rem_euclid(24),
            });
        }
        Ok(compress(&self.inner, d, self.inner.trunc().div_euclid(d)))
    }
}

/// Inverse of `dilate(g)` for a series supported on multiples of `g`.
fn compress(s: &QSeries, g: i64, trunc: i64) -> QSeries {
    let offset = s.offset().div_euclid(g) + i64::from(s.offset().rem_euclid(g) != 0);
    if trunc < offset {
        return QSeries::zero(trunc);
    }
    let coeffs = (offset..=trunc)
        .map(|k| s.coeff(k * g).unwrap_or_else(Rational::zero))
        .collect();
    QSeries::new(offset, trunc, coeffs)
}
