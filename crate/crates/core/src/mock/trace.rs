use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{f_family, int, MockFamily, Route};
use crate::error::{Error, Result};
use crate::jacobi::WJet;
use crate::partitions::{for_each_partition, Partition};
use crate::qfunctions::{crank_moment, eisenstein, rank_moment, theta, MomentMethod};
use crate::rational::{factorial, ExactRational};
use crate::residual::Residual;
use crate::series::{euler_product, QSeries};

/// A sequence of q-series indexed from 1, such as `f_{k,j}` or `G_j`.
pub trait SeriesFamily {
    fn order(&self) -> usize;
    fn member(&self, j: usize) -> Result<&QSeries>;
}

impl SeriesFamily for MockFamily {
    fn order(&self) -> usize {
        MockFamily::order(self)
    }

    fn member(&self, j: usize) -> Result<&QSeries> {
        MockFamily::member(self, j)
    }
}

/// `G_1, ..., G_max_j` with `G_1 = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EisensteinFamily {
    order: usize,
    members: Vec<QSeries>,
}

impl EisensteinFamily {
    pub fn new(max_j: usize, order: usize) -> Self {
        let members = (1..=max_j)
            .map(|j| eisenstein(j, order).expect("positive weight"))
            .collect();
        Self { order, members }
    }
}

impl SeriesFamily for EisensteinFamily {
    fn order(&self) -> usize {
        self.order
    }

    fn member(&self, j: usize) -> Result<&QSeries> {
        if j == 0 {
            return Err(Error::MissingMember(0));
        }
        self.members.get(j - 1).ok_or(Error::MissingMember(j))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TraceWeight {
    /// `φ(λ) = ∏ 2^{ℓ_k} / (ℓ_k! k!^{ℓ_k})`
    Phi,
    /// `ψ(λ) = (-1)^{Σ ℓ_k} φ(λ)`
    Psi,
}

impl TraceWeight {
    pub fn eval(self, lam: &Partition) -> ExactRational {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        let mut parts = 0u32;
        for (k, l) in lam.multiplicities() {
            num <<= l as usize;
            den *= factorial(l);
            let kf = factorial(k);
            for _ in 0..l {
                den *= &kf;
            }
            parts += l;
        }
        let w = ExactRational::new(num, den);
        match self {
            TraceWeight::Psi if parts % 2 == 1 => -w,
            _ => w,
        }
    }
}

impl std::str::FromStr for TraceWeight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phi" => Ok(TraceWeight::Phi),
            "psi" => Ok(TraceWeight::Psi),
            other => Err(Error::InvalidParameter(format!("unknown trace weight {other:?}"))),
        }
    }
}

/// `Tr_n(w, f) = Σ_{λ ⊢ n} w(λ) ∏ f_k^{ℓ_k}`.
pub fn trace<F: SeriesFamily + ?Sized>(n: usize, weight: TraceWeight, family: &F) -> Result<QSeries> {
    let order = family.order();
    for j in 1..=n {
        family.member(j)?;
    }
    let mut acc = QSeries::zero(order);
    let mut powers: HashMap<(u32, u32), QSeries> = HashMap::new();
    for_each_partition(n as u32, |parts| {
        let lam = Partition::new(parts.to_vec()).expect("enumerated partition");
        let mult = lam.multiplicities();
        if mult
            .iter()
            .any(|&(k, _)| family.member(k as usize).map(QSeries::is_zero).unwrap_or(true))
        {
            return;
        }
        let mut prod = QSeries::constant(weight.eval(&lam), order);
        for (k, l) in mult {
            let p = powers.entry((k, l)).or_insert_with(|| {
                family.member(k as usize).expect("checked above").pow(l)
            });
            prod = prod.mul(p);
        }
        acc = &acc + &prod;
    });
    Ok(acc)
}

/// `2 sinh(w/2)/w = Σ_n w^{2n} / (4^n (2n+1)!)` through `w^max`.
fn sinh_factor(max: usize) -> Vec<ExactRational> {
    (0..=max)
        .map(|d| {
            if d % 2 == 1 {
                ExactRational::zero()
            } else {
                ExactRational::new(BigInt::one(), (BigInt::one() << d) * factorial(d as u32 + 1))
            }
        })
        .collect()
}

/// `[w^j]` of `(2 sinh(w/2)/(w (q)_∞)) Σ_i Tr_i(φ, family) w^i` for `j ≤ max`.
fn sinh_trace_side<F: SeriesFamily + ?Sized>(family: &F, max: usize) -> Result<Vec<QSeries>> {
    let order = family.order();
    let pinv = euler_product(order).inv()?;
    let traces = (0..=max)
        .map(|i| trace(i, TraceWeight::Phi, family))
        .collect::<Result<Vec<_>>>()?;
    let s = sinh_factor(max);
    Ok((0..=max)
        .map(|j| {
            let mut acc = QSeries::zero(order);
            for i in 0..=j {
                if !s[j - i].is_zero() && !traces[i].is_zero() {
                    acc = &acc + &traces[i].scale(&s[j - i]);
                }
            }
            &acc * &pinv
        })
        .collect())
}

/// Residual of
/// `Σ_j R_{k,j} z^j/j! + θ_{1,2k-1}/(q)_∞ = (2 sinh(z/2)/(z (q)_∞)) Σ_j Tr_j(φ, f_k) z^j`
/// at each power `z^0, ..., z^max_j`. Moments come from the lattice-sum
/// route, so the check does not reuse the divisor-like sums.
pub fn verify_trace_identity(k: u32, max_j: usize, order: usize) -> Result<Residual> {
    let fam = f_family(k, max_j, order, Route::RecursionA)?;
    let rhs = sinh_trace_side(&fam, max_j)?;
    let pinv = euler_product(order).inv()?;
    let mut entries = Vec::with_capacity(max_j + 1);
    for (j, r) in rhs.into_iter().enumerate() {
        let mut lhs = rank_moment(k, j as u32, order, MomentMethod::Direct)?
            .series
            .scale(&ExactRational::new(BigInt::one(), factorial(j as u32)));
        if j == 0 {
            lhs = &lhs + &(&theta(1, 2 * k as i64 - 1, order)? * &pinv);
        }
        entries.push((j as i64, &lhs - &r));
    }
    Ok(Residual::new(entries))
}

/// Residual of
/// `Σ_j C_j w^j/j! = (2 sinh(w/2)/(w (q)_∞)) Σ_j Tr_j(φ, G) w^j`
/// with `C_j` from partition enumeration.
pub fn crank_trace_residual(max_j: usize, order: usize) -> Result<Residual> {
    let fam = EisensteinFamily::new(max_j.max(1), order);
    let rhs = sinh_trace_side(&fam, max_j)?;
    let mut entries = Vec::with_capacity(max_j + 1);
    for (j, r) in rhs.into_iter().enumerate() {
        let lhs = crank_moment(j as u32, order, MomentMethod::Combinatorial)?
            .series
            .scale(&ExactRational::new(BigInt::one(), factorial(j as u32)));
        entries.push((j as i64, &lhs - &r));
    }
    Ok(Residual::new(entries))
}

/// `Σ_n Tr_n(φ, f) w^n - exp(2 Σ f_j w^j/j!)` for `φ`, or with `ψ` against
/// `exp(-2 Σ f_j w^j/j!)`, through `w^max_j`.
pub fn polya_residual<F: SeriesFamily + ?Sized>(
    family: &F,
    weight: TraceWeight,
    max_j: usize,
) -> Result<Residual> {
    let order = family.order();
    let sign = match weight {
        TraceWeight::Phi => int(2),
        TraceWeight::Psi => int(-2),
    };
    let mut exponent = vec![QSeries::zero(order)];
    for j in 1..=max_j {
        let c = &sign / ExactRational::from_integer(factorial(j as u32));
        exponent.push(family.member(j)?.scale(&c));
    }
    let e = WJet::new(0, exponent)?.exp()?;
    let entries = (0..=max_j)
        .map(|n| {
            let t = trace(n, weight, family)?;
            Ok((n as i64, &t - &e.coeff_or_zero(n as i64)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Residual::new(entries))
}
