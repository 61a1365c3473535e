//! The convolution identity for the level two divisor sums
//! `A_{2k-1}(n) = σ_{2k-1}(n) + 2^k σ_{2k-1}(n/2)`.

use num_bigint::BigInt;

use crate::exactnum::sigma_table;
use crate::identities::report::{Check, SuiteReport};

/// `A_{2k-1}(n)` for `0 <= n <= n_max`; index 0 is unused.
pub fn level_two_divisor_sums(k: u32, n_max: usize) -> Vec<BigInt> {
    let s = sigma_table(n_max, 2 * k - 1);
    let twok = BigInt::from(2).pow(k);
    (0..=n_max)
        .map(|n| {
            if n == 0 {
                BigInt::from(0)
            } else if n % 2 == 0 {
                &s[n] + &twok * &s[n / 2]
            } else {
                s[n].clone()
            }
        })
        .collect()
}

/// Checks `A₉(n) = 336 Σ A₃(j)A₅(n-j) + 7A₅(n) - 6A₃(n)` for `1 <= n <= n_max`.
pub fn divisor_sum_identity_check(n_max: usize) -> SuiteReport {
    let a3 = level_two_divisor_sums(2, n_max);
    let a5 = level_two_divisor_sums(3, n_max);
    let a9 = level_two_divisor_sums(5, n_max);
    let first_bad = (1..=n_max).find(|&n| {
        let conv: BigInt = (1..n).map(|j| &a3[j] * &a5[n - j]).sum();
        let rhs = conv * 336 + &a5[n] * 7 - &a3[n] * 6;
        rhs != a9[n]
    });
    let mut report = SuiteReport::new("divisor-sums");
    report.push(match first_bad {
        None => Check::new("A9 convolution identity", n_max >= 1, format!("holds for 1 <= n <= {n_max}")),
        Some(n) => Check::new("A9 convolution identity", false, format!("fails at n = {n}")),
    });
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let a9 = level_two_divisor_sums(5, 2);
        let a3 = level_two_divisor_sums(2, 2);
        let a5 = level_two_divisor_sums(3, 2);
        assert_eq!(a9[1], BigInt::from(1));
        // σ₉(2) + 32 σ₉(1)
        assert_eq!(a9[2], BigInt::from(513 + 32));
        assert_eq!(a3[2], BigInt::from(9 + 4));
        assert_eq!(a5[2], BigInt::from(33 + 8));
        // n = 2: 336·1·1 + 7·41 - 6·13
        assert_eq!(BigInt::from(336 + 7 * 41 - 6 * 13), a9[2]);
    }

    #[test]
    fn holds_through_two_hundred() {
        assert!(divisor_sum_identity_check(200).passed());
    }
}
