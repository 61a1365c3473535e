//! Modular objects on Γ₀(N)⁺: level constants, Eisenstein series, eta
//! products, the Kronecker limit function Δ_N and the weight two family.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{
    bernoulli, divisors, euler_phi, factorize, is_prime, is_square_free, moebius, rat_int, sigma,
    sigma_table, Rational,
};
use crate::puiseux::Puiseux;
use crate::qseries::QSeries;

/// Genus-zero levels of Γ₀(N)⁺ with square-free N, paired with the
/// integrality threshold κ_N.
pub const GENUS_ZERO_LEVELS: [(u64, i64); 44] = [
    (1, 19),
    (2, 47),
    (3, 48),
    (5, 19),
    (6, 60),
    (7, 19),
    (10, 75),
    (11, 19),
    (13, 19),
    (14, 47),
    (15, 96),
    (17, 19),
    (19, 19),
    (21, 53),
    (22, 47),
    (23, 19),
    (26, 47),
    (29, 19),
    (30, 127),
    (31, 19),
    (33, 48),
    (34, 47),
    (35, 19),
    (38, 47),
    (39, 48),
    (41, 19),
    (42, 108),
    (46, 47),
    (47, 19),
    (51, 48),
    (55, 19),
    (59, 19),
    (62, 47),
    (66, 60),
    (69, 48),
    (70, 181),
    (71, 19),
    (78, 81),
    (87, 48),
    (94, 47),
    (95, 19),
    (105, 181),
    (110, 89),
    (119, 19),
];

pub fn genus_zero_levels() -> impl Iterator<Item = u64> {
    GENUS_ZERO_LEVELS.iter().map(|&(n, _)| n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelData {
    pub n: u64,
    pub primes: Vec<u64>,
    pub r: u32,
    pub sigma_n: u64,
    pub ell_n: u64,
    /// Weight of Δ_N.
    pub k_n: u64,
    /// `None` off the genus-zero list.
    pub kappa_n: Option<i64>,
    /// Order of vanishing of Δ_N at i∞.
    pub v_inf: i64,
    /// vol(X_N) / 2π.
    #[serde(with = "crate::exactnum::rational_string")]
    pub vol_over_2pi: Rational,
    pub genus_zero: bool,
}

impl LevelData {
    pub fn divisors(&self) -> Vec<u64> {
        divisors(self.n)
    }

    /// κ_N, or an error for levels without a tabulated threshold.
    pub fn kappa(&self) -> Result<i64> {
        self.kappa_n.ok_or(Error::UnsupportedLevel(self.n))
    }
}

pub fn level_constants(n: u64) -> Result<LevelData> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    if !is_square_free(n) {
        return Err(Error::NotSquareFree(n));
    }
    let primes: Vec<u64> = factorize(n).into_iter().map(|(p, _)| p).collect();
    let r = primes.len() as u32;
    let sigma_n: u64 = divisors(n).iter().sum();
    // 2^r * 12 stands in for 2^(r-1) * 24 so that r = 0 stays integral.
    let two_r = 1u64 << r;
    let k_n = 4u64.lcm(&(two_r * 12 / 24u64.gcd(&sigma_n)));
    let ell_n = 2 * k_n / two_r;
    let v_inf = (sigma_n * ell_n / 24) as i64;
    debug_assert_eq!(sigma_n * ell_n % 24, 0);
    let kappa_n = GENUS_ZERO_LEVELS.iter().find(|&&(m, _)| m == n).map(|&(_, k)| k);
    Ok(LevelData {
        n,
        primes,
        r,
        sigma_n,
        ell_n,
        k_n,
        kappa_n,
        v_inf,
        vol_over_2pi: Rational::new((2 * sigma_n).into(), (12 * two_r).into()),
        genus_zero: kappa_n.is_some(),
    })
}

fn check_weight(k2: u32) -> Result<()> {
    if k2 < 4 || k2 % 2 == 1 {
        return Err(Error::InvalidWeight(k2 as i64));
    }
    Ok(())
}

fn eisenstein_cache() -> &'static Mutex<HashMap<u32, QSeries>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, QSeries>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `-2k / B_k`, the coefficient in front of the divisor sums of E_k.
fn eisenstein_factor(k2: u32) -> Result<Rational> {
    Ok(-rat_int(2 * k2) / bernoulli(k2)?)
}

/// Classical E_k normalized to constant term 1.
pub fn classical_eisenstein(k2: u32, trunc: i64) -> Result<QSeries> {
    check_weight(k2)?;
    let trunc = trunc.max(0);
    if let Some(s) = eisenstein_cache().lock().expect("cache poisoned").get(&k2) {
        if s.trunc() >= trunc {
            return Ok(s.truncate(trunc));
        }
    }
    let c = eisenstein_factor(k2)?;
    let table = sigma_table(trunc as usize, k2 - 1);
    let coeffs = table
        .into_iter()
        .enumerate()
        .map(|(n, s)| if n == 0 { Rational::one() } else { &c * rat_int(s) })
        .collect();
    let s = QSeries::new(0, trunc, coeffs);
    eisenstein_cache().lock().expect("cache poisoned").insert(k2, s.clone());
    Ok(s)
}

/// E_k^(N) = (1/σ_{k/2}(N)) Σ_{v|N} v^{k/2} E_k(vz).
pub fn eisenstein_plus(n: u64, k2: u32, trunc: i64) -> Result<QSeries> {
    check_weight(k2)?;
    let level = level_constants(n)?;
    let trunc = trunc.max(0);
    let half = k2 / 2;
    let c = eisenstein_factor(k2)? / rat_int(sigma(n, half)?);
    let table = sigma_table(trunc as usize, k2 - 1);
    let weights: Vec<(usize, BigInt)> = level
        .divisors()
        .into_iter()
        .map(|v| (v as usize, Pow::pow(BigInt::from(v), half)))
        .collect();
    let mut coeffs = Vec::with_capacity(trunc as usize + 1);
    coeffs.push(Rational::one());
    for m in 1..=trunc as usize {
        let mut acc = BigInt::zero();
        for (v, w) in &weights {
            if m % v == 0 {
                acc += w * &table[m / v];
            }
        }
        coeffs.push(&c * rat_int(acc));
    }
    Ok(QSeries::new(0, trunc, coeffs))
}

/// `(η(v₁z))^{e₁} (η(v₂z))^{e₂} …`; negative exponents give eta quotients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaProduct {
    pub factors: Vec<(u64, i64)>,
}

impl EtaProduct {
    pub fn new(factors: Vec<(u64, i64)>) -> Self {
        EtaProduct { factors }
    }

    /// Total power of q^(1/24).
    pub fn prefactor24(&self) -> i64 {
        self.factors.iter().map(|&(v, e)| v as i64 * e).sum()
    }

    /// `∏ (∏_n (1 - q^{vn}))^e` known through `q^rel`, without the q-power.
    pub fn product_part(&self, rel: i64) -> Result<QSeries> {
        let rel = rel.max(0);
        let mut acc = QSeries::one(rel);
        for &(v, e) in &self.factors {
            if e == 0 {
                continue;
            }
            let mut base = euler_product(v, rel);
            if e < 0 {
                base = base.invert()?;
            }
            acc = acc.mul(&base.pow(e.unsigned_abs() as u32));
        }
        Ok(acc)
    }

    /// The product with its q^(pref/24) factor, inner series known through
    /// `q^rel` relative to the leading term.
    pub fn to_puiseux(&self, rel: i64) -> Result<Puiseux> {
        Ok(Puiseux::shifted(self.prefactor24(), 24, &self.product_part(rel)?))
    }
}

/// `∏_{n≥1} (1 - q^{vn})` through `q^trunc` by the pentagonal number theorem.
pub fn euler_product(v: u64, trunc: i64) -> QSeries {
    let v = v as i64;
    let mut coeffs = vec![Rational::zero(); trunc.max(0) as usize + 1];
    let mut k: i64 = 0;
    loop {
        let mut any = false;
        for kk in if k == 0 { vec![0] } else { vec![k, -k] } {
            let e = v * kk * (3 * kk - 1) / 2;
            if e <= trunc {
                any = true;
                coeffs[e as usize] = rat_int(if kk % 2 == 0 { 1 } else { -1 });
            }
        }
        if !any {
            break;
        }
        k += 1;
    }
    QSeries::new(0, trunc.max(0), coeffs)
}

/// Expands an eta product with integral net exponent through `q^trunc`.
pub fn eta_product(spec: &EtaProduct, trunc: i64) -> Result<QSeries> {
    let p24 = spec.prefactor24();
    if p24.rem_euclid(24) != 0 {
        return Err(Error::FractionalExponent { prefactor24: p24, residue: p24.rem_euclid(24) });
    }
    let lead = p24 / 24;
    if trunc < lead {
        return Ok(QSeries::zero(trunc));
    }
    Ok(spec.product_part(trunc - lead)?.shift(lead))
}

pub fn kronecker_spec(n: u64) -> Result<EtaProduct> {
    let level = level_constants(n)?;
    Ok(EtaProduct::new(
        level.divisors().into_iter().map(|v| (v, level.ell_n as i64)).collect(),
    ))
}

/// Δ_N = (∏_{v|N} η(vz))^{ℓ_N}.
pub fn kronecker_limit(n: u64, trunc: i64) -> Result<QSeries> {
    eta_product(&kronecker_spec(n)?, trunc)
}

/// E₂ = 1 - 24 Σ σ(n) qⁿ.
pub fn e2_series(trunc: i64) -> QSeries {
    let trunc = trunc.max(0);
    let coeffs = sigma_table(trunc as usize, 1)
        .into_iter()
        .enumerate()
        .map(|(n, s)| if n == 0 { Rational::one() } else { rat_int(s * -24) })
        .collect();
    QSeries::new(0, trunc, coeffs)
}

/// E_{2,p} = (p E₂(pz) - E₂(z)) / (p - 1).
pub fn e2_p(p: u64, trunc: i64) -> Result<QSeries> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let e2 = e2_series(trunc);
    let dilated = e2.truncate(trunc / p as i64).dilate(p).truncate(trunc);
    let num = &dilated.scale(&rat_int(p)) - &e2;
    Ok(num.scale(&Rational::new(BigInt::one(), BigInt::from(p - 1))))
}

/// E_{2,N} = ((-1)^r / φ(N)) Σ_{v|N} μ(v) v E₂(vz).
pub fn e2_n(n: u64, trunc: i64) -> Result<QSeries> {
    let level = level_constants(n)?;
    let e2 = e2_series(trunc);
    let mut acc = QSeries::zero(trunc.max(0));
    for v in level.divisors() {
        let mu = moebius(v) as i64;
        let term = e2.truncate(trunc / v as i64).dilate(v).truncate(trunc);
        acc = &acc + &term.scale(&rat_int(mu * v as i64));
    }
    let sign = if level.r % 2 == 0 { 1 } else { -1 };
    Ok(acc.scale(&Rational::new(BigInt::from(sign), BigInt::from(euler_phi(n)))))
}

/// E_{4,N} = E_{2,N}².
pub fn e4_n(n: u64, trunc: i64) -> Result<QSeries> {
    let e = e2_n(n, trunc)?;
    Ok(e.mul(&e))
}

/// Δ̃_N = E₄^(N) - E_{4,N}, a weight four cusp form.
pub fn tilde_delta(n: u64, trunc: i64) -> Result<QSeries> {
    Ok(&eisenstein_plus(n, 4, trunc)? - &e4_n(n, trunc)?)
}
