//! Laurent polynomials in `w = 2πiz` with truncated q-series coefficients.
//!
//! A [`WJet`] stores the coefficients of `w^d` for `min_deg ≤ d ≤ max_deg`.
//! Degrees below `min_deg` are exactly zero; degrees above `max_deg` are
//! unknown. Every operation shrinks `max_deg` to what its inputs certify.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::ExactRational;
use crate::series::QSeries;

/// Deepest pole a jet may carry.
pub const MIN_DEGREE: i64 = -5;

#[derive(Clone, PartialEq, Eq)]
pub struct WJet {
    min_deg: i64,
    coeffs: Vec<QSeries>,
}

impl WJet {
    /// Coefficients for `w^min_deg, w^(min_deg+1), ...`, truncated to their
    /// common q-order.
    pub fn new(min_deg: i64, coeffs: Vec<QSeries>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::WindowUnderflow("empty degree window".into()));
        }
        if min_deg < MIN_DEGREE {
            return Err(Error::PoleOrder(-min_deg));
        }
        let order = coeffs.iter().map(QSeries::order).min().unwrap_or(0);
        let coeffs = coeffs
            .into_iter()
            .map(|c| if c.order() == order { c } else { c.truncate(order) })
            .collect();
        Ok(Self { min_deg, coeffs })
    }

    pub fn zero(min_deg: i64, max_deg: i64, order: usize) -> Result<Self> {
        if max_deg < min_deg {
            return Err(Error::WindowUnderflow(format!(
                "max degree {max_deg} below min degree {min_deg}"
            )));
        }
        let len = (max_deg - min_deg + 1) as usize;
        Self::new(min_deg, vec![QSeries::zero(order); len])
    }

    /// A jet whose coefficients are q-constants.
    pub fn from_constants(min_deg: i64, values: Vec<ExactRational>, order: usize) -> Result<Self> {
        Self::new(
            min_deg,
            values.into_iter().map(|c| QSeries::constant(c, order)).collect(),
        )
    }

    /// `c · w^deg`, known through `max_deg`.
    pub fn monomial(c: QSeries, deg: i64, max_deg: i64) -> Result<Self> {
        let order = c.order();
        let mut jet = Self::zero(deg, max_deg, order)?;
        jet.coeffs[0] = c;
        Ok(jet)
    }

    /// `e^{c w} = Σ c^n w^n / n!` through `max_deg`.
    pub fn exp_linear(c: &ExactRational, max_deg: i64, order: usize) -> Result<Self> {
        let mut vals = Vec::new();
        let mut term = ExactRational::one();
        for n in 0..=max_deg.max(0) {
            if n > 0 {
                term = term * c / BigInt::from(n);
            }
            vals.push(term.clone());
        }
        let jet = Self::from_constants(0, vals, order)?;
        jet.truncate_deg(max_deg)
    }

    pub fn min_deg(&self) -> i64 {
        self.min_deg
    }

    pub fn max_deg(&self) -> i64 {
        self.min_deg + self.coeffs.len() as i64 - 1
    }

    pub fn order(&self) -> usize {
        self.coeffs[0].order()
    }

    /// Coefficient of `w^d` inside the certified window.
    pub fn coeff(&self, d: i64) -> Option<&QSeries> {
        if d < self.min_deg {
            return None;
        }
        self.coeffs.get((d - self.min_deg) as usize)
    }

    /// Coefficient of `w^d`, treating degrees below the window as zero.
    ///
    /// # Panics
    /// If `d` exceeds the certified maximum degree.
    pub fn coeff_or_zero(&self, d: i64) -> QSeries {
        assert!(d <= self.max_deg(), "degree {d} beyond certified window");
        self.coeff(d)
            .cloned()
            .unwrap_or_else(|| QSeries::zero(self.order()))
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.min_deg..=self.max_deg()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &QSeries)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.min_deg + i as i64, c))
    }

    pub fn truncate_deg(&self, max_deg: i64) -> Result<Self> {
        if max_deg < self.min_deg {
            return Err(Error::WindowUnderflow(format!(
                "cannot truncate below degree {}",
                self.min_deg
            )));
        }
        let keep = ((max_deg.min(self.max_deg()) - self.min_deg) + 1) as usize;
        Self::new(self.min_deg, self.coeffs[..keep].to_vec())
    }

    pub fn truncate_order(&self, order: usize) -> Self {
        Self {
            min_deg: self.min_deg,
            coeffs: self.coeffs.iter().map(|c| c.truncate(order)).collect(),
        }
    }

    fn zip_with<F: Fn(&QSeries, &QSeries) -> QSeries>(&self, other: &Self, f: F) -> Result<Self> {
        let lo = self.min_deg.min(other.min_deg);
        let hi = self.max_deg().min(other.max_deg());
        if hi < lo {
            return Err(Error::WindowUnderflow("sum has an empty window".into()));
        }
        let order = self.order().min(other.order());
        let zero = QSeries::zero(order);
        let coeffs = (lo..=hi)
            .map(|d| {
                let a = self.coeff(d).unwrap_or(&zero);
                let b = other.coeff(d).unwrap_or(&zero);
                f(a, b)
            })
            .collect();
        Self::new(lo, coeffs)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        Self {
            min_deg: self.min_deg,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Laurent product. The result is certified through
    /// `min(a.max + b.min, b.max + a.min)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let lo = self.min_deg + other.min_deg;
        let hi = (self.max_deg() + other.min_deg).min(other.max_deg() + self.min_deg);
        let order = self.order().min(other.order());
        let len = (hi - lo + 1) as usize;
        let mut out = vec![QSeries::zero(order); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &a.mul(b);
                }
            }
        }
        Self::new(lo, out)
    }

    /// Multiplies every coefficient by a q-series.
    pub fn scale_q(&self, c: &QSeries) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        Self::new(self.min_deg, coeffs).expect("same window")
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self {
            min_deg: self.min_deg,
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// Multiplies by `w^k`.
    pub fn shift(&self, k: i64) -> Result<Self> {
        Self::new(self.min_deg + k, self.coeffs.clone())
    }

    /// `∂/∂w`.
    pub fn deriv_w(&self) -> Result<Self> {
        let coeffs: Vec<QSeries> = self
            .iter()
            .map(|(d, c)| c.scale(&ExactRational::from_integer(BigInt::from(d))))
            .collect();
        if self.min_deg == 0 {
            // the constant term dies; keep the window non-negative
            if coeffs.len() == 1 {
                return Err(Error::WindowUnderflow("derivative of a constant jet".into()));
            }
            return Self::new(0, coeffs[1..].to_vec());
        }
        Self::new(self.min_deg - 1, coeffs)
    }

    /// `D = q d/dq` on every coefficient.
    pub fn d_q(&self) -> Self {
        Self {
            min_deg: self.min_deg,
            coeffs: self.coeffs.iter().map(QSeries::d).collect(),
        }
    }

    /// Drops leading coefficients that are the zero series.
    fn trimmed(&self) -> Option<(i64, &[QSeries])> {
        let first = self.coeffs.iter().position(|c| !c.is_zero())?;
        Some((self.min_deg + first as i64, &self.coeffs[first..]))
    }

    /// `1/a` for a jet whose lowest non-zero coefficient has a non-zero
    /// constant q-term.
    pub fn inv(&self) -> Result<Self> {
        let (lead, u) = self.trimmed().ok_or(Error::ZeroConstantTerm)?;
        let u0_inv = u[0].inv()?;
        let mut b: Vec<QSeries> = Vec::with_capacity(u.len());
        b.push(u0_inv.clone());
        for n in 1..u.len() {
            let mut acc = QSeries::zero(self.order());
            for k in 1..=n {
                if !u[k].is_zero() {
                    acc = &acc + &u[k].mul(&b[n - k]);
                }
            }
            b.push(-(&acc * &u0_inv));
        }
        Self::new(-lead, b)
    }

    /// `exp(a)` for a jet supported in positive degrees.
    pub fn exp(&self) -> Result<Self> {
        if self.min_deg < 0 || (self.min_deg == 0 && !self.coeffs[0].is_zero()) {
            return Err(Error::BadConstantTerm(
                "jet exp needs vanishing non-positive degrees".into(),
            ));
        }
        let max = self.max_deg();
        let order = self.order();
        let a = |k: i64| self.coeff(k);
        let mut b: Vec<QSeries> = vec![QSeries::one(order)];
        for n in 1..=max {
            let mut acc = QSeries::zero(order);
            for k in 1..=n {
                if let Some(ak) = a(k) {
                    if !ak.is_zero() {
                        let t = ak.mul(&b[(n - k) as usize]);
                        acc = &acc + &t.scale(&ExactRational::from_integer(BigInt::from(k)));
                    }
                }
            }
            b.push(acc.scale(&ExactRational::new(BigInt::one(), BigInt::from(n))));
        }
        Self::new(0, b)
    }

    /// `log(a)` for a jet starting at `w^0` with coefficient exactly 1.
    pub fn log(&self) -> Result<Self> {
        if self.min_deg != 0 || self.coeffs[0] != QSeries::one(self.order()) {
            return Err(Error::BadConstantTerm("jet log needs constant term 1".into()));
        }
        let max = self.max_deg();
        let order = self.order();
        let mut c: Vec<QSeries> = vec![QSeries::zero(order)];
        for n in 1..=max {
            let nn = n as usize;
            let mut acc = self.coeffs[nn].scale(&ExactRational::from_integer(BigInt::from(n)));
            for k in 1..nn {
                if !c[k].is_zero() && !self.coeffs[nn - k].is_zero() {
                    let t = c[k].mul(&self.coeffs[nn - k]);
                    acc = &acc - &t.scale(&ExactRational::from_integer(BigInt::from(k)));
                }
            }
            c.push(acc.scale(&ExactRational::new(BigInt::one(), BigInt::from(n))));
        }
        Self::new(0, c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(QSeries::is_zero)
    }

    /// First non-zero entry as `(w-degree, q-exponent, value)`.
    pub fn first_nonzero(&self) -> Option<(i64, usize, ExactRational)> {
        self.iter().find_map(|(d, c)| {
            c.coeffs()
                .iter()
                .position(|x| !x.is_zero())
                .map(|n| (d, n, c[n].clone()))
        })
    }

    pub fn max_abs(&self) -> ExactRational {
        self.coeffs
            .iter()
            .map(QSeries::max_abs)
            .max()
            .unwrap_or_else(ExactRational::zero)
    }
}

impl fmt::Debug for WJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "WJet[{}..={}; q^{}] {{", self.min_deg, self.max_deg(), self.order())?;
        for (d, c) in self.iter() {
            writeln!(f, "  w^{d}: {c}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn konst(c: i64, order: usize) -> QSeries {
        QSeries::constant(int(c), order)
    }

    #[test]
    fn degree_arithmetic() {
        let a = WJet::monomial(konst(1, 3), -1, 4).unwrap();
        let b = WJet::monomial(konst(1, 3), 1, 6).unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(p.min_deg(), 0);
        assert_eq!(p.coeff(0).unwrap(), &konst(1, 3));
    }

    #[test]
    fn product_window() {
        let a = WJet::zero(-1, 6, 2).unwrap();
        let b = WJet::zero(-1, 6, 2).unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(p.min_deg(), -2);
        assert_eq!(p.max_deg(), 5);
    }

    #[test]
    fn scalar_keeps_degrees() {
        let a = WJet::exp_linear(&ratio(1, 2), 5, 4).unwrap();
        let c = QSeries::from_ints([1, 2, 3, 4, 5]);
        let s = a.scale_q(&c);
        assert_eq!(s.degrees(), a.degrees());
        assert_eq!(s.coeff(2).unwrap(), &c.scale(&ratio(1, 8)));
    }

    #[test]
    fn sum_takes_intersection_on_top() {
        let a = WJet::zero(-1, 3, 2).unwrap();
        let b = WJet::zero(0, 5, 2).unwrap();
        let s = a.add(&b).unwrap();
        assert_eq!((s.min_deg(), s.max_deg()), (-1, 3));
    }

    #[test]
    fn inverse_of_sinh_has_simple_pole() {
        // 2 sinh(w/2) = w + w^3/24 + ...
        let order = 2;
        let plus = WJet::exp_linear(&ratio(1, 2), 9, order).unwrap();
        let minus = WJet::exp_linear(&ratio(-1, 2), 9, order).unwrap();
        let s = plus.sub(&minus).unwrap();
        let inv = s.inv().unwrap();
        assert_eq!(inv.min_deg(), -1);
        assert_eq!(inv.max_deg(), 7);
        assert_eq!(inv.coeff(-1).unwrap()[0], int(1));
        assert_eq!(inv.coeff(1).unwrap()[0], ratio(-1, 24));
        assert_eq!(inv.coeff(0).unwrap()[0], int(0));
        let one = s.mul(&inv).unwrap();
        assert_eq!(one.coeff(0).unwrap(), &QSeries::one(order));
        for d in 1..=one.max_deg() {
            assert!(one.coeff(d).unwrap().is_zero());
        }
    }

    #[test]
    fn exp_log_round_trip() {
        let order = 4;
        let a = WJet::new(
            0,
            vec![
                QSeries::zero(order),
                QSeries::from_ints([0, 1, 0, 2, 0]),
                QSeries::from_ints([1, 0, -1, 0, 3]),
                QSeries::from_ints([0, 0, 0, 1, 1]),
            ],
        )
        .unwrap();
        let back = a.exp().unwrap().log().unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn derivatives() {
        let w2 = WJet::monomial(konst(1, 2), 2, 6).unwrap();
        let dd = w2.deriv_w().unwrap().deriv_w().unwrap();
        assert_eq!(dd.coeff(0).unwrap(), &konst(2, 2));
        let inv_w = WJet::monomial(konst(-1, 2), -1, 4).unwrap();
        let d4 = (0..4).fold(inv_w, |j, _| j.deriv_w().unwrap());
        assert_eq!(d4.min_deg(), -5);
        assert_eq!(d4.coeff(-5).unwrap(), &konst(-24, 2));
    }

    #[test]
    fn pole_bound_enforced() {
        assert_eq!(
            WJet::zero(-6, 0, 1).unwrap_err(),
            Error::PoleOrder(6)
        );
    }
}
