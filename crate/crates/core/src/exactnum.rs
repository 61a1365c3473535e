//! Exact rationals and the elementary arithmetic functions that feed every
//! q-expansion: Bernoulli numbers, divisor sums, Möbius, totient and the
//! partitions that index Eisenstein monomials.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Parses `"a"` or `"a/b"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Serde adapter writing a rational as its `"num/den"` string.
pub mod rational_string {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use super::{parse_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

/// Serde adapter writing a big integer as a decimal string.
pub mod bigint_string {
    use num_bigint::BigInt;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(n)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

fn bernoulli_cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rational::one()]))
}

/// B_m with the convention B_1 = -1/2.
///
/// Computed from `sum_{k=0}^{m} C(m+1, k) B_k = 0` and memoized.
pub fn bernoulli(m: u32) -> Result<Rational> {
    if m > 1 && m % 2 == 1 {
        return Err(Error::OddBernoulliIndex(m));
    }
    let mut cache = bernoulli_cache().lock().expect("bernoulli cache poisoned");
    while cache.len() <= m as usize {
        let n = cache.len();
        // binomials C(n+1, k) for k = 0..n
        let mut binom = BigInt::one();
        let mut acc = Rational::zero();
        for (k, b) in cache.iter().enumerate() {
            if !b.is_zero() {
                acc += b * Rational::from_integer(binom.clone());
            }
            binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
        }
        cache.push(-acc / Rational::from_integer(BigInt::from(n + 1)));
    }
    Ok(cache[m as usize].clone())
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Prime factorization by trial division, as (prime, exponent) pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

pub fn is_square_free(n: u64) -> bool {
    n >= 1 && factorize(n).iter().all(|&(_, e)| e == 1)
}

/// `sum_{d | n} d^alpha`.
pub fn sigma(n: u64, alpha: u32) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    Ok(divisors(n)
        .into_iter()
        .map(|d| Pow::pow(BigInt::from(d), alpha))
        .sum())
}

/// `sigma_alpha(n)` for every `1 <= n <= len`, index 0 left at zero.
pub fn sigma_table(len: usize, alpha: u32) -> Vec<BigInt> {
    let mut table = vec![BigInt::zero(); len + 1];
    for d in 1..=len {
        let p: BigInt = Pow::pow(BigInt::from(d), alpha);
        for m in (d..=len).step_by(d) {
            table[m] += &p;
        }
    }
    table
}

pub fn moebius(n: u64) -> i8 {
    if n == 0 {
        return 0;
    }
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    a.lcm(b).abs()
}

/// Least common multiple of the denominators of `values` (1 for an empty list).
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// All partitions of `target` into parts >= 2.
///
/// Parts inside a partition are sorted descending and the list is ordered
/// lexicographically descending, e.g. 6 -> [6], [4,2], [3,3], [2,2,2].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionSet {
    pub target: u32,
    pub parts: Vec<Vec<u32>>,
}

impl PartitionSet {
    pub fn count(&self) -> usize {
        self.parts.len()
    }
}

pub fn partitions_ge2(n: u32) -> PartitionSet {
    fn rec(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (2..=max.min(rest)).rev() {
            prefix.push(part);
            rec(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut parts = Vec::new();
    rec(n, n, &mut Vec::new(), &mut parts);
    PartitionSet { target: n, parts }
}

/// Number of partitions of `n` into parts >= 2, without enumerating them.
///
/// Needed for the very large candidate sets (hundreds of thousands of rows)
/// whose sizes are checked but never materialized.
pub fn count_partitions_ge2(n: u32) -> u64 {
    let n = n as usize;
    let mut ways = vec![0u64; n + 1];
    ways[0] = 1;
    for part in 2..=n {
        for total in part..=n {
            ways[total] += ways[total - part];
        }
    }
    ways[n]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: u64, k: u64) -> BigInt {
        (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0).unwrap(), rat(1, 1));
        assert_eq!(bernoulli(1).unwrap(), rat(-1, 2));
        assert_eq!(bernoulli(2).unwrap(), rat(1, 6));
        assert_eq!(bernoulli(4).unwrap(), rat(-1, 30));
        assert_eq!(bernoulli(6).unwrap(), rat(1, 42));
        assert_eq!(bernoulli(12).unwrap(), rat(-691, 2730));
        assert_eq!(bernoulli(3), Err(Error::OddBernoulliIndex(3)));
    }

    #[test]
    fn bernoulli_recurrence_holds() {
        for m in (2..=30u32).step_by(2) {
            let mut acc = Rational::zero();
            for k in 0..=m {
                if k > 1 && k % 2 == 1 {
                    continue;
                }
                acc += bernoulli(k).unwrap() * Rational::from_integer(binomial(m as u64 + 1, k as u64));
            }
            assert!(acc.is_zero(), "m = {m}");
        }
    }

    #[test]
    fn divisor_functions() {
        assert_eq!(sigma(6, 1).unwrap(), BigInt::from(12));
        assert_eq!(sigma(5, 2).unwrap(), BigInt::from(26));
        assert_eq!(sigma(17, 0).unwrap(), BigInt::from(2));
        assert_eq!(sigma(0, 1), Err(Error::ZeroArgument));
        let table = sigma_table(30, 3);
        for n in 1..=30u64 {
            assert_eq!(table[n as usize], sigma(n, 3).unwrap());
        }
    }

    #[test]
    fn sigma_is_multiplicative() {
        for alpha in 0..4 {
            for m in 1..=100u64 {
                for n in 1..=100u64 {
                    if m.gcd(&n) == 1 {
                        assert_eq!(
                            sigma(m * n, alpha).unwrap(),
                            sigma(m, alpha).unwrap() * sigma(n, alpha).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn moebius_and_phi() {
        assert_eq!(moebius(1), 1);
        assert_eq!(moebius(6), 1);
        assert_eq!(moebius(4), 0);
        assert_eq!(moebius(30), -1);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(17), 16);
        let brute = (1..=30u64).filter(|k| k.gcd(&30) == 1).count() as u64;
        assert_eq!(euler_phi(30), brute);
        assert_eq!(brute, 8);
    }

    #[test]
    fn square_free_and_primes() {
        assert!(is_square_free(30));
        assert!(!is_square_free(12));
        assert!(is_prime(71));
        assert!(!is_prime(1));
        assert_eq!(divisors(30), vec![1, 2, 3, 5, 6, 10, 15, 30]);
    }

    #[test]
    fn partition_examples() {
        assert_eq!(partitions_ge2(2).parts, vec![vec![2]]);
        assert_eq!(
            partitions_ge2(6).parts,
            vec![vec![6], vec![4, 2], vec![3, 3], vec![2, 2, 2]]
        );
        assert_eq!(partitions_ge2(18).count(), 88);
        assert_eq!(partitions_ge2(0).parts, vec![Vec::<u32>::new()]);
        assert_eq!(partitions_ge2(1).count(), 0);
    }

    /// Brute-force generator for all partitions of n (any parts).
    fn all_partitions(n: u32) -> Vec<Vec<u32>> {
        fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if rest == 0 {
                out.push(cur.clone());
                return;
            }
            for p in 1..=max.min(rest) {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn partition_count_law() {
        for n in 2..=40u32 {
            let p = |m: u32| all_partitions(m).len();
            let set = partitions_ge2(n);
            assert_eq!(set.count(), p(n) - p(n - 1), "n = {n}");
            assert_eq!(set.count() as u64, count_partitions_ge2(n));
        }
    }

    #[test]
    fn partitions_are_canonical_and_distinct() {
        let set = partitions_ge2(16);
        for w in set.parts.windows(2) {
            assert!(w[0] > w[1]);
        }
        for p in &set.parts {
            assert_eq!(p.iter().sum::<u32>(), 16);
            assert!(p.windows(2).all(|w| w[0] >= w[1]));
            assert!(p.iter().all(|&x| x >= 2));
        }
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("12").unwrap(), rat(12, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_rat() -> impl Strategy<Value = Rational> {
            (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| rat(n, d))
        }

        proptest! {
            #![proptest_config(ProptestConfig { rng_seed: proptest::test_runner::RngSeed::Fixed(0x5eed), ..ProptestConfig::with_cases(200) })]
            #[test]
            fn rational_field_laws(a in small_rat(), b in small_rat(), c in small_rat()) {
                prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
                prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
                prop_assert!(a.denom() > &BigInt::zero());
            }
        }
    }
}
