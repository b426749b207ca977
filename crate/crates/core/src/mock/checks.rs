use std::fmt;

use num_bigint::BigInt;
use num_traits::{Pow, Zero};

use super::{f_family, MockFamily, Route};
use crate::error::{Error, Result};
use crate::qfunctions::bernoulli;
use crate::rational::{to_fraction_string, ExactRational};
use crate::series::QSeries;

/// A coefficient of `f_{k,j} + B_j/(2j)` that is not an integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonIntegral {
    pub j: usize,
    pub exponent: usize,
    pub value: ExactRational,
}

impl fmt::Display for NonIntegral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "member {} coefficient of q^{} is {}",
            self.j,
            self.exponent,
            to_fraction_string(&self.value)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientMismatch {
    pub exponent: usize,
    pub expected: ExactRational,
    pub found: ExactRational,
}

impl fmt::Display for CoefficientMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "coefficient of q^{}: expected {}, found {}",
            self.exponent,
            to_fraction_string(&self.expected),
            to_fraction_string(&self.found)
        )
    }
}

/// `B_j/(2j)` for `j ≥ 2`, zero otherwise.
pub(crate) fn integrality_shift(j: usize) -> ExactRational {
    if j < 2 {
        ExactRational::zero()
    } else {
        bernoulli(j) / BigInt::from(2 * j)
    }
}

/// First coefficient of some `f_{k,j} + B_j/(2j)` that is not integral.
pub fn integrality_check(family: &MockFamily) -> Option<NonIntegral> {
    family.members().iter().enumerate().find_map(|(i, m)| {
        let j = i + 1;
        let mut shifted = m.clone();
        shifted.add_at(0, &integrality_shift(j));
        shifted.first_non_integral().map(|n| NonIntegral {
            j,
            exponent: n,
            value: shifted[n].clone(),
        })
    })
}

/// Compares `member` with `-B_j/(2j) + q^k + Σ_{i<k} ((i+1)^j - i^j) q^{k+i}`
/// through `q^{2k-1}`, including the vanishing of `q^1, ..., q^{k-1}`.
pub fn leading_pattern_mismatch(member: &QSeries, k: u32, j: u32) -> Option<CoefficientMismatch> {
    let k = k as usize;
    let top = (2 * k - 1).min(member.order());
    (0..=top).find_map(|n| {
        let expected = if n == 0 {
            -integrality_shift(j as usize)
        } else if n < k {
            ExactRational::zero()
        } else {
            let i = (n - k) as u32;
            let v: BigInt = BigInt::from(i + 1).pow(j) - BigInt::from(i).pow(j);
            ExactRational::from_integer(v)
        };
        (member[n] != expected).then(|| CoefficientMismatch {
            exponent: n,
            expected,
            found: member[n].clone(),
        })
    })
}

/// Builds `f_{k,j}` to `q^order` and checks its leading pattern.
pub fn leading_pattern_check(k: u32, j: u32, order: usize) -> Result<Option<CoefficientMismatch>> {
    if j < 2 || j % 2 == 1 {
        return Err(Error::InvalidParameter(format!("pattern check needs even j >= 2, got {j}")));
    }
    if order < 2 * k as usize - 1 {
        return Err(Error::InvalidParameter(format!(
            "pattern check needs order >= {}, got {order}",
            2 * k - 1
        )));
    }
    let fam = f_family(k, j as usize, order, Route::RecursionA)?;
    Ok(leading_pattern_mismatch(fam.member(j as usize)?, k, j))
}
