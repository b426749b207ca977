use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::jet::WJet;
use crate::error::{Error, Result};
use crate::mock::{f_family, Route};
use crate::qfunctions::{bernoulli, bernoulli_poly, eisenstein, theta};
use crate::rational::{factorial, ExactRational};
use crate::series::QSeries;

/// How the two `1/sin` summands of `A_5` are expanded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum A5Route {
    /// Jet inversion of `e^{w/2} - e^{-w/2}`.
    GenericInversion,
    /// Closed Bernoulli-number and Bernoulli-polynomial expansions.
    BernoulliExpansion,
}

impl fmt::Display for A5Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            A5Route::GenericInversion => "generic-inversion",
            A5Route::BernoulliExpansion => "bernoulli-expansion",
        })
    }
}

fn rat(n: i64, d: i64) -> ExactRational {
    ExactRational::new(BigInt::from(n), BigInt::from(d))
}

/// `1/(e^{w/2} - e^{-w/2})` on degrees `-1..=max_deg`.
fn inverse_sinh_generic(max_deg: i64, order: usize) -> Result<WJet> {
    let plus = WJet::exp_linear(&rat(1, 2), max_deg + 2, order)?;
    let minus = WJet::exp_linear(&rat(-1, 2), max_deg + 2, order)?;
    plus.sub(&minus)?.inv()
}

/// `Σ_n 2 B_{2n} (1 - 2^{2n-1}) / (4^n (2n)!) w^{2n-1}` on `-1..=max_deg`.
fn inverse_sinh_bernoulli(max_deg: i64, order: usize) -> Result<WJet> {
    let mut vals = Vec::new();
    for d in -1..=max_deg {
        if (d + 1) % 2 == 1 {
            vals.push(ExactRational::zero());
            continue;
        }
        let two_n = (d + 1) as usize;
        let b = bernoulli(two_n);
        let one_minus = ExactRational::one()
            - ExactRational::new(BigInt::one() << two_n, BigInt::from(2));
        let den = (BigInt::one() << two_n) * factorial(two_n as u32);
        vals.push(b * one_minus * ExactRational::new(BigInt::from(2), den));
    }
    WJet::from_constants(-1, vals, order)
}

/// `e^w/(e^{w/2} - e^{-w/2}) = Σ_n B_n(3/2) w^{n-1}/n!` on `-1..=max_deg`.
fn shifted_inverse_sinh_bernoulli(max_deg: i64, order: usize) -> Result<WJet> {
    let x = rat(3, 2);
    let vals = (0..=(max_deg + 1) as usize)
        .map(|n| bernoulli_poly(n, &x) / ExactRational::from_integer(factorial(n as u32)))
        .collect();
    WJet::from_constants(-1, vals, order)
}

/// `exp(c Σ_{j≥1} s_j w^j / j!)` with `s_j` given for `j = 1..=max_deg`.
fn exp_of_series(c: &ExactRational, s: &[QSeries], max_deg: i64, order: usize) -> Result<WJet> {
    let mut exponent = vec![QSeries::zero(order)];
    for j in 1..=max_deg as usize {
        let scale = c / ExactRational::from_integer(factorial(j as u32));
        exponent.push(s[j - 1].scale(&scale));
    }
    WJet::new(0, exponent)?.exp()
}

/// `A_5 = -E/w + θ_{1,5}/(2 sinh(w/2)) - e^w θ_{1,5}/(2 sinh(w/2)) - e^{3w/2} θ_{3,5}`
/// with `E = exp(2 Σ f_{3,j} w^j/j!)`, on degrees `-1..=nw`.
pub fn assemble_a5(nw: i64, nq: usize, route: A5Route) -> Result<WJet> {
    if nw < 1 || nq < 1 {
        return Err(Error::InvalidParameter("assemble_a5 needs nw >= 1 and nq >= 1".into()));
    }
    let max_j = ((nw + 2) / 2 * 2) as usize;
    let fam = f_family(3, max_j, nq, Route::RecursionA)?;
    let e = exp_of_series(&ExactRational::from_integer(BigInt::from(2)), fam.members(), nw + 1, nq)?;
    let first = e.neg().shift(-1)?;

    let t15 = theta(1, 5, nq)?;
    let t35 = theta(3, 5, nq)?;
    let (inv, shifted) = match route {
        A5Route::GenericInversion => {
            let inv = inverse_sinh_generic(nw, nq)?;
            let ew = WJet::exp_linear(&ExactRational::one(), nw + 1, nq)?;
            let shifted = ew.mul(&inv)?;
            (inv, shifted)
        }
        A5Route::BernoulliExpansion => (
            inverse_sinh_bernoulli(nw, nq)?,
            shifted_inverse_sinh_bernoulli(nw, nq)?,
        ),
    };
    let second = inv.scale_q(&t15);
    let third = shifted.scale_q(&t15).neg();
    let fourth = WJet::exp_linear(&rat(3, 2), nw, nq)?.scale_q(&t35).neg();
    first.add(&second)?.add(&third)?.add(&fourth)?.truncate_deg(nw)
}

/// `H_j = 10 D + ∂²/∂w² + 10(2j - 1) G_2`.
pub fn apply_h(j: u32, a: &WJet) -> Result<WJet> {
    if j.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("H_j needs odd j, got {j}")));
    }
    let order = a.order();
    let g2 = eisenstein(2, order)?.scale(&ExactRational::from_integer(BigInt::from(10 * (2 * j as i64 - 1))));
    let ten = ExactRational::from_integer(BigInt::from(10));
    let d2 = a.deriv_w()?.deriv_w()?;
    a.d_q().scale(&ten).add(&d2)?.add(&a.scale_q(&g2))
}

/// `-24 w^{-5} exp(10 Σ_{k≥2} G_k w^k/k!)` on degrees `-5..=nw`.
pub fn pde_rhs(nw: i64, nq: usize) -> Result<WJet> {
    let top = nw + 5;
    let g: Vec<QSeries> = (1..=top as usize)
        .map(|k| {
            if k == 1 {
                Ok(QSeries::zero(nq))
            } else {
                eisenstein(k, nq)
            }
        })
        .collect::<Result<_>>()?;
    let e = exp_of_series(&ExactRational::from_integer(BigInt::from(10)), &g, top, nq)?;
    e.scale(&ExactRational::from_integer(BigInt::from(-24))).shift(-5)
}

/// `(H_3 H_1 - (220/3) G_4) A_5 - RHS` on degrees `-5..=nw`.
pub fn pde_residual(nw: i64, nq: usize) -> Result<WJet> {
    let a = assemble_a5(nw + 4, nq, A5Route::GenericInversion)?;
    let g4 = eisenstein(4, nq)?.scale(&rat(220, 3));
    let lhs = apply_h(3, &apply_h(1, &a)?)?.sub(&a.scale_q(&g4))?;
    let rhs = pde_rhs(nw, nq)?;
    let res = lhs.sub(&rhs)?;
    if res.max_deg() < nw {
        return Err(Error::WindowUnderflow(format!(
            "residual certified only through w^{}",
            res.max_deg()
        )));
    }
    res.truncate_deg(nw)
}
