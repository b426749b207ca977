//! The mock Eisenstein family `f_{k,j}`, partition traces and the checks
//! built on them.

mod checks;
mod trace;

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::jacobi::WJet;
use crate::qfunctions::divisor_like_g;
use crate::rational::{binomial, factorial, ExactRational};
use crate::series::QSeries;

pub use checks::{
    integrality_check, leading_pattern_check, leading_pattern_mismatch, CoefficientMismatch,
    NonIntegral,
};
pub use trace::{
    crank_trace_residual, polya_residual, trace, verify_trace_identity, EisensteinFamily,
    SeriesFamily, TraceWeight,
};

/// Construction route for the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// Convolution recursion in the divisor-like sums.
    RecursionA,
    /// Recursion through `ψ`-weighted traces of lower members.
    RecursionB,
    /// Logarithm of the divisor-sum generating function in `w`.
    LogRoute,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::RecursionA, Route::RecursionB, Route::LogRoute];

    pub fn name(self) -> &'static str {
        match self {
            Route::RecursionA => "recursionA",
            Route::RecursionB => "recursionB",
            Route::LogRoute => "logRoute",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "recursionA" | "recursion-a" | "a" => Ok(Route::RecursionA),
            "recursionB" | "recursion-b" | "b" => Ok(Route::RecursionB),
            "logRoute" | "log" => Ok(Route::LogRoute),
            other => Err(Error::InvalidParameter(format!("unknown route {other:?}"))),
        }
    }
}

/// `f_{k,1}, ..., f_{k,max_j}` truncated at `q^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MockFamily {
    k: u32,
    order: usize,
    members: Vec<QSeries>,
    extrapolated: bool,
}

impl MockFamily {
    /// Wraps explicit members `f_1, f_2, ...`.
    pub fn from_members(k: u32, members: Vec<QSeries>) -> Result<Self> {
        let order = members.iter().map(QSeries::order).min().ok_or_else(|| {
            Error::InvalidParameter("a family needs at least one member".into())
        })?;
        let members = members.into_iter().map(|m| m.truncate(order)).collect();
        Ok(Self { k, order, members, extrapolated: false })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn max_j(&self) -> usize {
        self.members.len()
    }

    /// True for `k = 2`, which lies outside the range the recursions are
    /// known to describe.
    pub fn is_extrapolated(&self) -> bool {
        self.extrapolated
    }

    /// `f_{k,j}` for `1 ≤ j ≤ max_j`.
    pub fn member(&self, j: usize) -> Result<&QSeries> {
        if j == 0 {
            return Err(Error::MissingMember(0));
        }
        self.members.get(j - 1).ok_or(Error::MissingMember(j))
    }

    pub fn members(&self) -> &[QSeries] {
        &self.members
    }
}

/// `2^e` for any integer `e`.
fn pow2(e: i64) -> ExactRational {
    if e >= 0 {
        ExactRational::from_integer(BigInt::one() << e as usize)
    } else {
        ExactRational::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

fn int(n: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(n))
}

/// `a_j = j g_{2,2k-1,j} / 2^{j-2}` for `1 ≤ j ≤ max_j`, index 0 unused.
fn divisor_coefficients(k: u32, max_j: usize, order: usize) -> Result<Vec<QSeries>> {
    let b = 2 * k as i64 - 1;
    let mut a = vec![QSeries::one(order)];
    for j in 1..=max_j {
        let g = divisor_like_g(2, b, j as u32, order)?;
        a.push(g.scale(&(int(j as i64) * pow2(2 - j as i64))));
    }
    Ok(a)
}

/// Builds `f_{k,j}` for `j ≤ max_j` along the chosen route.
pub fn f_family(k: u32, max_j: usize, order: usize, route: Route) -> Result<MockFamily> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "f_family needs k >= 3 (k = 2 is available through f_family_extrapolated), got {k}"
        )));
    }
    build(k, max_j, order, route)
}

/// The `k = 2` family given by the same recursions; flagged as extrapolated.
pub fn f_family_extrapolated(max_j: usize, order: usize, route: Route) -> Result<MockFamily> {
    let mut fam = build(2, max_j, order, route)?;
    fam.extrapolated = true;
    Ok(fam)
}

fn build(k: u32, max_j: usize, order: usize, route: Route) -> Result<MockFamily> {
    if max_j % 2 == 1 || max_j == 0 {
        return Err(Error::InvalidParameter(format!(
            "max_j must be a positive even integer, got {max_j}"
        )));
    }
    if order == 0 {
        return Err(Error::InvalidParameter("order must be at least 1".into()));
    }
    let a = divisor_coefficients(k, max_j, order)?;
    let members = match route {
        Route::RecursionA => recursion_a(&a, max_j, order),
        Route::RecursionB => recursion_b(&a, max_j, order)?,
        Route::LogRoute => log_route(&a, max_j)?,
    };
    Ok(MockFamily { k, order, members, extrapolated: false })
}

// 2 f_n = a_n - Σ_{ℓ=1}^{n-1} C(n-1, ℓ-1) 2 f_ℓ a_{n-ℓ}
fn recursion_a(a: &[QSeries], max_j: usize, order: usize) -> Vec<QSeries> {
    let half = ExactRational::new(BigInt::one(), BigInt::from(2));
    let mut f: Vec<QSeries> = vec![QSeries::zero(order)];
    for n in 2..=max_j {
        let mut acc = a[n].scale(&half);
        for l in 2..n {
            let fl = &f[l - 1];
            if fl.is_zero() || a[n - l].is_zero() {
                continue;
            }
            let c = ExactRational::from_integer(binomial(n as u32 - 1, l as u32 - 1));
            acc = &acc - &fl.mul(&a[n - l]).scale(&c);
        }
        f.push(acc);
    }
    f
}

// f_n = Σ_{ℓ=2}^{n} (a_ℓ/2) ((n-1)!/(ℓ-1)!) Tr_{n-ℓ}(ψ, f)
fn recursion_b(a: &[QSeries], max_j: usize, order: usize) -> Result<Vec<QSeries>> {
    let half = ExactRational::new(BigInt::one(), BigInt::from(2));
    let mut fam = MockFamily {
        k: 0,
        order,
        members: vec![QSeries::zero(order)],
        extrapolated: false,
    };
    let mut traces: Vec<QSeries> = vec![QSeries::one(order)];
    for n in 2..=max_j {
        while traces.len() <= n - 2 {
            traces.push(trace(traces.len(), TraceWeight::Psi, &fam)?);
        }
        let mut acc = QSeries::zero(order);
        for l in 2..=n {
            if a[l].is_zero() || traces[n - l].is_zero() {
                continue;
            }
            let c = ExactRational::new(factorial(n as u32 - 1), factorial(l as u32 - 1)) * &half;
            acc = &acc + &a[l].mul(&traces[n - l]).scale(&c);
        }
        fam.members.push(acc);
    }
    Ok(fam.members)
}

// f_j = (j!/2) [w^j] log(1 + Σ a_j w^j/j!)
fn log_route(a: &[QSeries], max_j: usize) -> Result<Vec<QSeries>> {
    let coeffs = (0..=max_j)
        .map(|j| a[j].scale(&ExactRational::new(BigInt::one(), factorial(j as u32))))
        .collect();
    let log = WJet::new(0, coeffs)?.log()?;
    Ok((1..=max_j)
        .map(|j| {
            let c = ExactRational::new(factorial(j as u32), BigInt::from(2));
            log.coeff_or_zero(j as i64).scale(&c)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfunctions::bernoulli;

    #[test]
    fn f32_table() {
        for route in Route::ALL {
            let fam = f_family(3, 2, 8, route).unwrap();
            let expect = divisor_like_g(2, 5, 2, 8).unwrap();
            assert_eq!(fam.member(2).unwrap(), &expect, "{route}");
            assert_eq!(fam.member(2).unwrap().to_string(), "-1/24 + q^3 + 3q^4 + 5q^5 + 7q^6 + 9q^7 + 11q^8");
        }
    }

    #[test]
    fn spot_values() {
        let f3 = f_family(3, 4, 10, Route::RecursionA).unwrap();
        assert_eq!(f3.member(4).unwrap()[5], int(65));
        let f4 = f_family(4, 6, 10, Route::RecursionA).unwrap();
        assert_eq!(f4.member(6).unwrap()[6], int(665));
        let f5 = f_family(5, 8, 10, Route::RecursionA).unwrap();
        assert_eq!(f5.member(8).unwrap()[8], int(58975));
    }

    #[test]
    fn odd_members_vanish() {
        for route in Route::ALL {
            let fam = f_family(4, 10, 20, route).unwrap();
            for j in (1..=9).step_by(2) {
                assert!(fam.member(j).unwrap().is_zero(), "{route} j={j}");
            }
        }
    }

    #[test]
    fn constant_terms() {
        let fam = f_family(5, 12, 5, Route::LogRoute).unwrap();
        for j in (2..=12).step_by(2) {
            let expect = -bernoulli(j) / BigInt::from(2 * j);
            assert_eq!(fam.member(j).unwrap()[0], expect);
        }
    }

    #[test]
    fn routes_agree() {
        for k in 3..=5 {
            let a = f_family(k, 10, 25, Route::RecursionA).unwrap();
            let b = f_family(k, 10, 25, Route::RecursionB).unwrap();
            let c = f_family(k, 10, 25, Route::LogRoute).unwrap();
            assert_eq!(a, b);
            assert_eq!(a, c);
        }
    }

    #[test]
    fn bad_parameters() {
        assert!(f_family(2, 4, 10, Route::RecursionA).is_err());
        assert!(f_family(3, 5, 10, Route::RecursionA).is_err());
        assert!(f_family(3, 4, 0, Route::RecursionA).is_err());
        let fam = f_family(3, 4, 10, Route::RecursionA).unwrap();
        assert_eq!(fam.member(5), Err(Error::MissingMember(5)));
        assert_eq!(fam.member(0), Err(Error::MissingMember(0)));
    }

    #[test]
    fn k2_is_flagged() {
        let fam = f_family_extrapolated(4, 10, Route::RecursionA).unwrap();
        assert!(fam.is_extrapolated());
        assert_eq!(fam.k(), 2);
        let b = f_family_extrapolated(4, 10, Route::LogRoute).unwrap();
        assert_eq!(fam.members(), b.members());
        assert!(!f_family(3, 4, 10, Route::RecursionA).unwrap().is_extrapolated());
    }

    #[test]
    fn route_names() {
        for r in Route::ALL {
            assert_eq!(r.name().parse::<Route>().unwrap(), r);
        }
    }
}
