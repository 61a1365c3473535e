//! Numeric test of `E_{2,N}(-1/(Nz)) = μ(N) N z² E_{2,N}(z)`.

use num_complex::Complex64;

use crate::error::Result;
use crate::exactnum::moebius;
use crate::forms::e2_n;
use crate::identities::report::{Check, SuiteReport};

/// Absolute residual of the transformation law at `z`.
pub fn fricke_residual(n: u64, z: Complex64, trunc: i64) -> Result<f64> {
    let e = e2_n(n, trunc)?;
    let (lhs, _) = e.eval(-1.0 / (z * n as f64))?;
    let (rhs, _) = e.eval(z)?;
    let rhs = rhs * z * z * (moebius(n) as f64 * n as f64);
    Ok((lhs - rhs).norm())
}

pub fn fricke_suite(levels: &[u64], trunc: i64, tol: f64) -> SuiteReport {
    let z = Complex64::new(0.0, 1.0);
    let mut report = SuiteReport::new("fricke");
    for &n in levels {
        report.push(Check::from_result(format!("E2,{n} at z = i"), fricke_residual(n, z, trunc), |r| {
            (r < tol, format!("residual {r:.3e}"))
        }));
    }
    report
}
