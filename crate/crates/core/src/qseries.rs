//! Truncated Laurent series in q with exact rational coefficients.
//!
//! A [`QSeries`] stores a dense block of coefficients for the exponents
//! `offset..=trunc`. Everything below `offset` is exactly zero, everything
//! above `trunc` is unknown. Every operation propagates the truncation bound
//! pessimistically so that no reported coefficient depends on unknown data.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{denominator_lcm, parse_rational, Rational};

/// Below this many multiply-adds a product is computed on one thread.
const PARALLEL_WORK: usize = 1 << 14;

#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    offset: i64,
    trunc: i64,
    coeffs: Vec<Rational>,
}

impl QSeries {
    /// Builds a series from the coefficients of `q^offset ..= q^trunc`.
    ///
    /// Leading zeros are stripped, so `offset()` is always the valuation of a
    /// nonzero series. The zero series is stored as a single zero at `trunc`.
    pub fn new(offset: i64, trunc: i64, coeffs: Vec<Rational>) -> Self {
        assert!(trunc >= offset, "trunc {trunc} below offset {offset}");
        assert_eq!(
            coeffs.len() as i64,
            trunc - offset + 1,
            "coefficient block does not match [offset, trunc]"
        );
        let mut s = QSeries { offset, trunc, coeffs };
        s.canonicalize();
        s
    }

    /// Series whose last listed coefficient sits at the truncation bound.
    pub fn from_coeffs(offset: i64, coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty());
        let trunc = offset + coeffs.len() as i64 - 1;
        Self::new(offset, trunc, coeffs)
    }

    pub fn from_integers(offset: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            offset,
            coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect(),
        )
    }

    pub fn zero(trunc: i64) -> Self {
        QSeries { offset: trunc, trunc, coeffs: vec![Rational::zero()] }
    }

    pub fn one(trunc: i64) -> Self {
        Self::monomial(Rational::one(), 0, trunc)
    }

    /// `c * q^exp + O(q^(trunc+1))`.
    pub fn monomial(c: Rational, exp: i64, trunc: i64) -> Self {
        if exp > trunc {
            return Self::zero(trunc);
        }
        let mut coeffs = vec![Rational::zero(); (trunc - exp + 1) as usize];
        coeffs[0] = c;
        Self::new(exp, trunc, coeffs)
    }

    fn canonicalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.offset = self.trunc;
                self.coeffs = vec![Rational::zero()];
            }
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.offset += k as i64;
            }
        }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// Coefficients of `q^offset ..= q^trunc`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Exponent of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.offset)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.valuation().map(|_| &self.coeffs[0])
    }

    /// Coefficient of `q^n`, or `None` when `n` lies beyond the truncation.
    pub fn coeff(&self, n: i64) -> Option<Rational> {
        if n > self.trunc {
            None
        } else if n < self.offset {
            Some(Rational::zero())
        } else {
            Some(self.coeffs[(n - self.offset) as usize].clone())
        }
    }

    fn coeff_ref(&self, n: i64) -> Option<&Rational> {
        if n < self.offset || n > self.trunc {
            None
        } else {
            Some(&self.coeffs[(n - self.offset) as usize])
        }
    }

    /// Nonzero terms as (exponent, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.offset + i as i64, c))
    }

    /// Drops everything above `q^t`. Truncating upwards is a no-op.
    pub fn truncate(&self, t: i64) -> Self {
        if t >= self.trunc {
            return self.clone();
        }
        if t < self.offset {
            return Self::zero(t);
        }
        Self::new(self.offset, t, self.coeffs[..=(t - self.offset) as usize].to_vec())
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        QSeries { offset: self.offset + k, trunc: self.trunc + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.trunc);
        }
        QSeries {
            offset: self.offset,
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Common denominator and integer numerators of the first `len` coefficients.
    fn integer_form(&self, len: usize) -> (BigInt, Vec<BigInt>) {
        let block = &self.coeffs[..len.min(self.coeffs.len())];
        let den = denominator_lcm(block);
        let ints = block
            .iter()
            .map(|c| {
                if den.is_one() {
                    c.numer().clone()
                } else {
                    c.numer() * (&den / c.denom())
                }
            })
            .collect();
        (den, ints)
    }

    /// Cauchy product, computed on integer numerators over a common denominator.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let offset = self.offset + other.offset;
        let trunc = (self.trunc + other.offset).min(other.trunc + self.offset);
        if self.is_zero() || other.is_zero() {
            return Self::zero(trunc);
        }
        let len = (trunc - offset + 1) as usize;
        let (da, a) = self.integer_form(len);
        let (db, b) = other.integer_form(len);
        let den = da * db;
        let term = |n: usize| -> Rational {
            let lo = n.saturating_sub(b.len() - 1);
            let hi = n.min(a.len() - 1);
            let mut acc = BigInt::zero();
            for i in lo..=hi {
                let (x, y) = (&a[i], &b[n - i]);
                if !x.is_zero() && !y.is_zero() {
                    acc += x * y;
                }
            }
            Rational::new(acc, den.clone())
        };
        let work = len * a.len().min(b.len());
        let coeffs: Vec<Rational> = if work >= PARALLEL_WORK {
            (0..len).into_par_iter().map(term).collect()
        } else {
            (0..len).map(term).collect()
        };
        QSeries::new(offset, trunc, coeffs)
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, e: u32) -> QSeries {
        if e == 0 {
            let rel = self.trunc - self.offset;
            return Self::one(rel.max(0));
        }
        let mut base = self.clone();
        let mut acc: Option<QSeries> = None;
        let mut e = e;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base);
        }
        acc.expect("positive exponent")
    }

    /// Substitution `q -> q^v`. Exponents strictly between `trunc*v` and
    /// `(trunc+1)*v` are provably zero, so the new bound is `(trunc+1)*v - 1`.
    pub fn dilate(&self, v: u64) -> QSeries {
        assert!(v >= 1, "dilation factor must be positive");
        let v = v as i64;
        if v == 1 {
            return self.clone();
        }
        let offset = self.offset * v;
        let trunc = (self.trunc + 1) * v - 1;
        let mut coeffs = vec![Rational::zero(); (trunc - offset + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * v as usize] = c.clone();
        }
        QSeries::new(offset, trunc, coeffs)
    }

    /// Multiplicative inverse. The result has offset `-valuation` and the same
    /// relative precision as the input.
    pub fn invert(&self) -> Result<QSeries> {
        let v = self.valuation().ok_or(Error::NotInvertible { trunc: self.trunc })?;
        let len = (self.trunc - v + 1) as usize;
        let (den, a) = self.integer_form(len);
        // With B_n = a0^(n+1) b_n every step stays integral:
        // B_n = -sum_{k=1}^{n} a_k a0^(k-1) B_{n-k}.
        let a0 = a[0].clone();
        let mut a0_pows = Vec::with_capacity(len + 1);
        a0_pows.push(BigInt::one());
        for i in 1..=len {
            let p = &a0_pows[i - 1] * &a0;
            a0_pows.push(p);
        }
        let scaled: Vec<BigInt> = a
            .iter()
            .enumerate()
            .map(|(k, ak)| if k == 0 { BigInt::zero() } else { ak * &a0_pows[k - 1] })
            .collect();
        let mut big_b: Vec<BigInt> = Vec::with_capacity(len);
        big_b.push(BigInt::one());
        for n in 1..len {
            let mut acc = BigInt::zero();
            for k in 1..=n {
                if !scaled[k].is_zero() && !big_b[n - k].is_zero() {
                    acc += &scaled[k] * &big_b[n - k];
                }
            }
            big_b.push(-acc);
        }
        let coeffs = big_b
            .into_iter()
            .enumerate()
            .map(|(n, bn)| Rational::new(bn * &den, a0_pows[n + 1].clone()))
            .collect();
        Ok(QSeries::new(-v, -v + len as i64 - 1, coeffs))
    }

    /// Floating-point evaluation at `z` in the upper half plane.
    ///
    /// Returns the partial sum over the represented exponents together with
    /// the tail estimate `|q|^(trunc+1) / (1 - |q|) * max|coeff|`.
    pub fn eval(&self, z: Complex64) -> Result<(Complex64, f64)> {
        if z.im <= 0.0 {
            return Err(Error::NotInUpperHalfPlane(z.im));
        }
        let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
        let mut sum = Complex64::zero();
        let mut max_abs = 0.0f64;
        for (n, c) in self.terms() {
            let cf = c.to_f64().unwrap_or(f64::NAN);
            max_abs = max_abs.max(cf.abs());
            sum += (two_pi_i * z * n as f64).exp() * cf;
        }
        let r = (-2.0 * std::f64::consts::PI * z.im).exp();
        let bound = r.powf((self.trunc + 1) as f64) / (1.0 - r) * max_abs;
        Ok((sum, bound))
    }

    /// True when every known coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// First exponent where `self` and `other` differ within their common
    /// truncation, if any.
    pub fn first_difference(&self, other: &QSeries) -> Option<i64> {
        let lo = self.offset.min(other.offset);
        let hi = self.trunc.min(other.trunc);
        (lo..=hi).find(|&n| self.coeff(n) != other.coeff(n))
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.terms() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let unit = mag.is_one() && n != 0;
            match (n, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{n}")?,
                (_, false) => write!(f, "{mag}q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.trunc + 1)
    }
}

fn binary_op(a: &QSeries, b: &QSeries, op: impl Fn(&Rational, &Rational) -> Rational) -> QSeries {
    let offset = a.offset.min(b.offset);
    let trunc = a.trunc.min(b.trunc);
    let zero = Rational::zero();
    let coeffs = (offset..=trunc)
        .map(|n| op(a.coeff_ref(n).unwrap_or(&zero), b.coeff_ref(n).unwrap_or(&zero)))
        .collect();
    QSeries::new(offset, trunc, coeffs)
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        binary_op(self, rhs, |x, y| x + y)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        binary_op(self, rhs, |x, y| x - y)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        QSeries::mul(self, rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        self.scale(&-Rational::one())
    }
}

#[derive(Serialize, Deserialize)]
struct QSeriesDoc {
    offset: i64,
    trunc: i64,
    coeffs: Vec<String>,
}

impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QSeriesDoc {
            offset: self.offset,
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = QSeriesDoc::deserialize(d)?;
        if doc.trunc < doc.offset || doc.coeffs.len() as i64 != doc.trunc - doc.offset + 1 {
            return Err(D::Error::custom("coefficient count does not match [offset, trunc]"));
        }
        let coeffs = doc
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(QSeries::new(doc.offset, doc.trunc, coeffs))
    }
}
