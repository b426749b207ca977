//! Bernoulli numbers (`B_1 = -1/2` convention) and Bernoulli polynomials.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::{binomial, ExactRational};

const SHARED_LEN: usize = 64;

/// `values[j] = B_j`, generated from `Σ_{i≤m} C(m+1, i) B_i = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliTable {
    values: Vec<ExactRational>,
}

impl BernoulliTable {
    /// Table of `B_0, ..., B_max`.
    pub fn new(max: usize) -> Self {
        let mut values: Vec<ExactRational> = Vec::with_capacity(max + 1);
        values.push(ExactRational::one());
        for m in 1..=max {
            if m >= 3 && m % 2 == 1 {
                values.push(ExactRational::zero());
                continue;
            }
            let mut acc = ExactRational::zero();
            for (i, b) in values.iter().enumerate() {
                if !b.is_zero() {
                    acc += b * binomial(m as u32 + 1, i as u32);
                }
            }
            values.push(-acc / BigInt::from(m + 1));
        }
        Self { values }
    }

    /// Process-wide table, computed on first use.
    pub fn shared() -> &'static BernoulliTable {
        static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
        TABLE.get_or_init(|| BernoulliTable::new(SHARED_LEN))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, j: usize) -> Option<&ExactRational> {
        self.values.get(j)
    }

    pub fn values(&self) -> &[ExactRational] {
        &self.values
    }
}

/// `B_j`.
pub fn bernoulli(j: usize) -> ExactRational {
    match BernoulliTable::shared().get(j) {
        Some(b) => b.clone(),
        None => BernoulliTable::new(j).values[j].clone(),
    }
}

/// `B_j(x) = Σ_n C(j, n) B_{j-n} x^n`.
pub fn bernoulli_poly(j: usize, x: &ExactRational) -> ExactRational {
    let mut acc = ExactRational::zero();
    let mut xp = ExactRational::one();
    for n in 0..=j {
        let b = bernoulli(j - n);
        if !b.is_zero() {
            acc += b * &xp * binomial(j as u32, n as u32);
        }
        xp *= x;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn first_values() {
        let t = BernoulliTable::new(12);
        let expect = [
            int(1),
            ratio(-1, 2),
            ratio(1, 6),
            int(0),
            ratio(-1, 30),
            int(0),
            ratio(1, 42),
            int(0),
            ratio(-1, 30),
            int(0),
            ratio(5, 66),
            int(0),
            ratio(-691, 2730),
        ];
        assert_eq!(t.values(), &expect);
    }

    #[test]
    fn beyond_shared_table() {
        assert_eq!(bernoulli(70), BernoulliTable::new(70).values()[70]);
        assert!(bernoulli(71).is_zero());
    }

    #[test]
    fn polynomial_values() {
        assert_eq!(bernoulli_poly(1, &ratio(1, 2)), int(0));
        assert_eq!(bernoulli_poly(0, &ratio(7, 3)), int(1));
        assert_eq!(bernoulli_poly(2, &int(0)), ratio(1, 6));
        // B_2(x) = x^2 - x + 1/6
        assert_eq!(bernoulli_poly(2, &ratio(3, 2)), ratio(3, 4) + ratio(1, 6));
    }

    #[test]
    fn value_at_one_half() {
        let half = ratio(1, 2);
        for j in 0..=20usize {
            let two_pow = ExactRational::new(BigInt::one(), BigInt::one() << j) * BigInt::from(2);
            let expect = -(int(1) - two_pow) * bernoulli(j);
            assert_eq!(bernoulli_poly(j, &half), expect, "j = {j}");
        }
    }

    #[test]
    fn translation_rule() {
        // B_j(x + 1) - B_j(x) = j x^{j-1}
        let x = ratio(2, 7);
        for j in 1..=12usize {
            let lhs = bernoulli_poly(j, &(&x + int(1))) - bernoulli_poly(j, &x);
            let mut rhs = int(j as i64);
            for _ in 0..j - 1 {
                rhs *= &x;
            }
            assert_eq!(lhs, rhs);
        }
    }
}
