use num_bigint::BigInt;
use num_traits::{Pow, Zero};

use super::bernoulli::bernoulli;
use crate::error::{Error, Result};
use crate::rational::ExactRational;
use crate::series::QSeries;

/// `σ_p(n)` for `1 ≤ n ≤ order`, index 0 left at zero.
pub fn divisor_power_sums(p: u32, order: usize) -> Vec<BigInt> {
    let mut sig = vec![BigInt::zero(); order + 1];
    for d in 1..=order {
        let dp: BigInt = BigInt::from(d).pow(p);
        for m in (d..=order).step_by(d) {
            sig[m] += &dp;
        }
    }
    sig
}

/// `G_j = -B_j/(2j) + Σ σ_{j-1}(n) q^n`; the zero series for odd `j`.
pub fn eisenstein(j: usize, order: usize) -> Result<QSeries> {
    if j == 0 {
        return Err(Error::InvalidParameter("Eisenstein weight must be positive".into()));
    }
    if j % 2 == 1 {
        return Ok(QSeries::zero(order));
    }
    let sig = divisor_power_sums(j as u32 - 1, order);
    let mut coeffs: Vec<ExactRational> = sig.into_iter().map(ExactRational::from_integer).collect();
    coeffs[0] = -bernoulli(j) / BigInt::from(2 * j);
    Ok(QSeries::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn g2_and_g4() {
        let g2 = eisenstein(2, 4).unwrap();
        assert_eq!(g2.coeffs(), &[ratio(-1, 24), int(1), int(3), int(4), int(7)]);
        assert_eq!(eisenstein(4, 3).unwrap()[0], ratio(1, 240));
        assert!(eisenstein(3, 6).unwrap().is_zero());
        assert!(eisenstein(0, 6).is_err());
    }

    #[test]
    fn sigma_matches_naive() {
        let s = divisor_power_sums(3, 30);
        for n in 1..=30usize {
            let naive: u64 = (1..=n).filter(|d| n % d == 0).map(|d| (d as u64).pow(3)).sum();
            assert_eq!(s[n], BigInt::from(naive));
        }
    }

    #[test]
    fn g4_squared_is_g8_multiple() {
        // E_4 = 240 G_4 and E_8 = 480 G_8, so E_4^2 = E_8 reads 120 G_4^2 = G_8
        let n = 20;
        let g4 = eisenstein(4, n).unwrap();
        let g8 = eisenstein(8, n).unwrap();
        assert_eq!((&g4 * &g4).scale(&int(120)), g8);
    }
}
