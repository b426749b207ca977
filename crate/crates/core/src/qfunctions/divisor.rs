use num_bigint::BigInt;
use num_traits::Pow;

use super::bernoulli::bernoulli;
use crate::error::{Error, Result};
use crate::rational::ExactRational;
use crate::series::QSeries;

/// The divisor-like sum `g_{a,b,ℓ}`:
///
/// `(1 - 2^{ℓ-1}) B_ℓ/(2ℓ) + Σ_{an-1 ≥ bm ≥ b} (an - bm)^{ℓ-1} q^{mn}
///  - Σ_{m-1 ≥ abn ≥ ab} (m - abn)^{ℓ-1} q^{mn}` for even `ℓ`,
/// with `g_{a,b,0} = 1` and `g_{a,b,ℓ} = 0` for odd `ℓ`.
pub fn divisor_like_g(a: i64, b: i64, ell: u32, order: usize) -> Result<QSeries> {
    if a < 1 || b < 1 {
        return Err(Error::InvalidParameter(format!(
            "divisor-like sums need a, b >= 1 (got a = {a}, b = {b})"
        )));
    }
    if ell == 0 {
        return Ok(QSeries::one(order));
    }
    if ell % 2 == 1 {
        return Ok(QSeries::zero(order));
    }
    let n_max = order as i64;
    let mut c: Vec<BigInt> = vec![BigInt::from(0); order + 1];
    let pow = |x: i64| -> BigInt { BigInt::from(x).pow(ell - 1) };

    // m ≥ 1, n ≥ ceil((bm + 1)/a)
    let mut m = 1i64;
    loop {
        let n_min = (b * m + 1 + a - 1) / a;
        if m * n_min > n_max {
            break;
        }
        for n in n_min..=n_max / m {
            c[(m * n) as usize] += pow(a * n - b * m);
        }
        m += 1;
    }
    // n ≥ 1, m ≥ abn + 1
    let ab = a * b;
    let mut n = 1i64;
    loop {
        let m_min = ab * n + 1;
        if m_min * n > n_max {
            break;
        }
        for m in m_min..=n_max / n {
            c[(m * n) as usize] -= pow(m - ab * n);
        }
        n += 1;
    }

    let mut coeffs: Vec<ExactRational> = c.into_iter().map(ExactRational::from_integer).collect();
    let two_pow = BigInt::from(1) << (ell - 1);
    coeffs[0] = ExactRational::from_integer(1 - two_pow) * bernoulli(ell as usize)
        / BigInt::from(2 * ell);
    Ok(QSeries::new(coeffs))
}
