//! k-rank count series and moment series `R_{k,j}`, crank moments `C_j`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use super::bernoulli::bernoulli;
use super::divisor::divisor_like_g;
use super::eisenstein::eisenstein;
use super::theta::theta;
use crate::error::{Error, Result};
use crate::jacobi::WJet;
use crate::partitions::count_table;
use crate::rational::{binomial, factorial, ExactRational};
use crate::series::{euler_product, QSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MomentMethod {
    /// Lattice sum over `m` and `n` divided by `(q)_∞`.
    Direct,
    /// Binomial combination of divisor-like sums.
    DivisorSum,
    /// Enumeration of partitions.
    Combinatorial,
    /// Coefficient extraction from the crank product in `w`.
    Eisenstein,
}

impl MomentMethod {
    pub fn name(self) -> &'static str {
        match self {
            MomentMethod::Direct => "direct",
            MomentMethod::DivisorSum => "divisor-sum",
            MomentMethod::Combinatorial => "combinatorial",
            MomentMethod::Eisenstein => "eisenstein",
        }
    }
}

impl fmt::Display for MomentMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for MomentMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(MomentMethod::Direct),
            "divisor-sum" => Ok(MomentMethod::DivisorSum),
            "combinatorial" => Ok(MomentMethod::Combinatorial),
            "eisenstein" => Ok(MomentMethod::Eisenstein),
            other => Err(Error::InvalidParameter(format!("unknown moment method {other:?}"))),
        }
    }
}

/// A moment series together with the route that produced it.
/// `k = 1` denotes crank moments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentSeries {
    pub k: u32,
    pub j: u32,
    pub series: QSeries,
    pub method: MomentMethod,
}

fn euler_inverse(order: usize) -> QSeries {
    euler_product(order).inv().expect("constant term 1")
}

/// `Σ_n N_k(m, n) q^n` as
/// `(1/(q)_∞) Σ_{n≥1} (-1)^{n-1} q^{n((2k-1)n-1)/2 + |m|n} (1 - q^n)`.
pub fn krank_count_series(k: u32, m: i64, order: usize) -> Result<QSeries> {
    if k < 2 {
        return Err(Error::InvalidParameter("count series need k >= 2".into()));
    }
    let d = 2 * k as i64 - 1;
    let am = m.abs();
    let top = order as i64;
    let mut num = QSeries::zero(order);
    let mut n = 1i64;
    loop {
        let e = n * (d * n - 1) / 2 + am * n;
        if e > top {
            break;
        }
        let sign = if n % 2 == 1 { ExactRational::one() } else { -ExactRational::one() };
        num.add_at(e as usize, &sign);
        if e + n <= top {
            num.add_at((e + n) as usize, &-sign);
        }
        n += 1;
    }
    Ok(&num * &euler_inverse(order))
}

fn check_rank_k(k: u32) -> Result<()> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "rank moments are defined here for k >= 3, got {k}"
        )));
    }
    Ok(())
}

/// `R_{k,j} = Σ_n Σ_m m^j N_k(m, n) q^n`.
pub fn rank_moment(k: u32, j: u32, order: usize, method: MomentMethod) -> Result<MomentSeries> {
    check_rank_k(k)?;
    let series = match method {
        MomentMethod::Direct => rank_moment_direct(k, j, order),
        MomentMethod::DivisorSum => rank_moment_divisor(k, j, order)?,
        MomentMethod::Combinatorial => moment_from_counts(k, j, order)?,
        MomentMethod::Eisenstein => {
            return Err(Error::InvalidParameter(
                "the eisenstein route computes crank moments only".into(),
            ))
        }
    };
    Ok(MomentSeries { k, j, series, method })
}

fn rank_moment_direct(k: u32, j: u32, order: usize) -> QSeries {
    if j % 2 == 1 {
        return QSeries::zero(order);
    }
    let d = 2 * k as i64 - 1;
    let top = order as i64;
    let mut num = QSeries::zero(order);
    let mut n = 1i64;
    loop {
        let base = n * (d * n - 1) / 2;
        if base > top {
            break;
        }
        let sign: BigInt = if n % 2 == 1 { BigInt::one() } else { -BigInt::one() };
        let mut m = 0i64;
        while base + m * n <= top {
            let e = base + m * n;
            // m and -m contribute alike; 0^0 = 1
            let weight: BigInt = if m == 0 {
                if j == 0 { BigInt::one() } else { BigInt::zero() }
            } else {
                BigInt::from(2) * BigInt::from(m).pow(j)
            };
            if !weight.is_zero() {
                let c = ExactRational::from_integer(&sign * &weight);
                num.add_at(e as usize, &c);
                if e + n <= top {
                    num.add_at((e + n) as usize, &-c);
                }
            }
            m += 1;
        }
        n += 1;
    }
    &num * &euler_inverse(order)
}

fn rank_moment_divisor(k: u32, j: u32, order: usize) -> Result<QSeries> {
    let pinv = euler_inverse(order);
    if j == 0 {
        let t = theta(1, 2 * k as i64 - 1, order)?;
        return Ok(&(&QSeries::one(order) - &t) * &pinv);
    }
    let b = 2 * k as i64 - 1;
    let mut acc = QSeries::zero(order);
    let mut ell = if j.is_multiple_of(2) { 2 } else { 3 };
    while ell <= j {
        let g = divisor_like_g(2, b, ell, order)?;
        let shift = (ExactRational::from_integer((BigInt::one() << (ell - 1)) - 1)
            * bernoulli(ell as usize))
            / BigInt::from(2 * ell);
        let mut term = g;
        term.add_at(0, &shift);
        let c = ExactRational::from_integer(binomial(j, ell - 1));
        acc = &acc + &term.scale(&c);
        ell += 2;
    }
    // 2^{2-j}
    let scale = if j <= 2 {
        ExactRational::from_integer(BigInt::one() << (2 - j))
    } else {
        ExactRational::new(BigInt::one(), BigInt::one() << (j - 2))
    };
    Ok(&acc.scale(&scale) * &pinv)
}

fn moment_from_counts(k: u32, j: u32, order: usize) -> Result<QSeries> {
    // |statistic| ≤ n for every statistic in use, so m-window = order suffices
    let table = count_table(k, order, order)?;
    let mut s = QSeries::zero(order);
    for (m, n, v) in table.iter() {
        if v == 0 {
            continue;
        }
        let w: BigInt = BigInt::from(m).pow(j) * BigInt::from(v);
        s.add_at(n, &ExactRational::from_integer(w));
    }
    Ok(s)
}

/// Crank moments `C_j = Σ_n Σ_m m^j N_1(m, n) q^n` with `N_1(0, 1) = -1`.
pub fn crank_moment(j: u32, order: usize, method: MomentMethod) -> Result<MomentSeries> {
    let series = match method {
        MomentMethod::Combinatorial => moment_from_counts(1, j, order)?,
        MomentMethod::Eisenstein => crank_moments_eisenstein(j, order)?.swap_remove(j as usize),
        other => {
            return Err(Error::InvalidParameter(format!(
                "crank moments support combinatorial and eisenstein routes, not {other}"
            )))
        }
    };
    Ok(MomentSeries { k: 1, j, series, method })
}

/// `C_0, ..., C_max_j` from
/// `exp(Σ_{k≥2} (B_k/k) w^k/k!) exp(2 Σ_{k≥2} G_k w^k/k!) / (q)_∞`.
pub fn crank_moments_eisenstein(max_j: u32, order: usize) -> Result<Vec<QSeries>> {
    let mut exponent = vec![QSeries::zero(order); max_j as usize + 1];
    for kk in 2..=max_j as usize {
        let kf = ExactRational::from_integer(factorial(kk as u32));
        let mut c = eisenstein(kk, order)?.scale(&ExactRational::from_integer(BigInt::from(2)));
        c.add_at(0, &(bernoulli(kk) / BigInt::from(kk)));
        exponent[kk] = c.scale(&(ExactRational::one() / kf));
    }
    let jet = WJet::new(0, exponent)?.exp()?;
    let pinv = euler_inverse(order);
    Ok((0..=max_j)
        .map(|j| {
            let f = ExactRational::from_integer(factorial(j));
            (&jet.coeff_or_zero(j as i64) * &pinv).scale(&f)
        })
        .collect())
}
