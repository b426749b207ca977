//! Truncated formal power series in `q` with exact rational coefficients.
//!
//! A [`QSeries`] of order `N` knows the coefficients of `q^0, ..., q^N` and
//! nothing beyond. Binary operations truncate to the smaller order, so a
//! result never claims more than both operands can certify.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::ExactRational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSeries {
    coeffs: Vec<ExactRational>,
}

impl QSeries {
    /// Builds a series of order `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty; a series always knows at least its constant term.
    pub fn new(coeffs: Vec<ExactRational>) -> Self {
        assert!(!coeffs.is_empty(), "a QSeries needs at least one coefficient");
        Self { coeffs }
    }

    pub fn from_ints<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(
            coeffs
                .into_iter()
                .map(|c| ExactRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![ExactRational::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        Self::constant(ExactRational::one(), order)
    }

    pub fn constant(c: ExactRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c * q^exp`, or the zero series when `exp` lies beyond `order`.
    pub fn monomial(c: ExactRational, exp: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exp <= order {
            s.coeffs[exp] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<ExactRational> {
        self.coeffs
    }

    pub fn get(&self, n: usize) -> Option<&ExactRational> {
        self.coeffs.get(n)
    }

    /// Adds `c` to the coefficient of `q^n`; silently ignored past the order.
    pub fn add_at(&mut self, n: usize, c: &ExactRational) {
        if let Some(slot) = self.coeffs.get_mut(n) {
            *slot += c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// First index whose coefficient is not an integer.
    pub fn first_non_integral(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_integer())
    }

    pub fn is_integral(&self) -> bool {
        self.first_non_integral().is_none()
    }

    /// Largest absolute coefficient (zero for the zero series).
    pub fn max_abs(&self) -> ExactRational {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(ExactRational::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self::new(self.coeffs[..=order].to_vec())
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.order());
        }
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::new(
            (0..=order)
                .map(|n| &self.coeffs[n] + &other.coeffs[n])
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::new(
            (0..=order)
                .map(|n| &self.coeffs[n] - &other.coeffs[n])
                .collect(),
        )
    }

    /// Cauchy product, truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let lead_a = self.coeffs[..=order].iter().position(|c| !c.is_zero());
        let lead_b = other.coeffs[..=order].iter().position(|c| !c.is_zero());
        let (Some(la), Some(lb)) = (lead_a, lead_b) else {
            return Self::zero(order);
        };
        let mut out = vec![ExactRational::zero(); order + 1];
        for i in la..=order {
            let a = &self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            for j in lb..=order - i {
                let b = &other.coeffs[j];
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse up to the truncation order.
    pub fn inv(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let n_max = self.order();
        let inv0 = a0.recip();
        let mut b: Vec<ExactRational> = Vec::with_capacity(n_max + 1);
        b.push(inv0.clone());
        for n in 1..=n_max {
            let mut acc = ExactRational::zero();
            for k in 1..=n {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    acc += a * &b[n - k];
                }
            }
            b.push(-(acc * &inv0));
        }
        Ok(Self::new(b))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// `exp(a)` for a series without constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::BadConstantTerm(
                "exp needs a vanishing constant term".into(),
            ));
        }
        // n b_n = sum_{k=1}^{n} k a_k b_{n-k}
        let n_max = self.order();
        let mut b = vec![ExactRational::one()];
        for n in 1..=n_max {
            let mut acc = ExactRational::zero();
            for k in 1..=n {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    acc += a * &b[n - k] * BigInt::from(k);
                }
            }
            b.push(acc / BigInt::from(n));
        }
        Ok(Self::new(b))
    }

    /// `log(a)` for a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::BadConstantTerm(
                "log needs constant term 1".into(),
            ));
        }
        // n c_n = n a_n - sum_{k=1}^{n-1} k c_k a_{n-k}
        let n_max = self.order();
        let mut c = vec![ExactRational::zero()];
        for n in 1..=n_max {
            let mut acc = &self.coeffs[n] * BigInt::from(n);
            for k in 1..n {
                let a = &self.coeffs[n - k];
                if !a.is_zero() && !c[k].is_zero() {
                    acc -= &c[k] * a * BigInt::from(k);
                }
            }
            c.push(acc / BigInt::from(n));
        }
        Ok(Self::new(c))
    }

    /// `D = q d/dq`: the coefficient of `q^n` becomes `n a_n`.
    pub fn d(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c * BigInt::from(n))
                .collect(),
        )
    }
}

impl Index<usize> for QSeries {
    type Output = ExactRational;

    fn index(&self, n: usize) -> &ExactRational {
        &self.coeffs[n]
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries[{}](", self.order())?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Renders `-1/24 + q^3 + 3q^4 - q^7`; zero terms are skipped.
impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            let var = match n {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{n}"),
            };
            if n == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&var)?;
            } else if mag.is_integer() {
                write!(f, "{mag}{var}")?;
            } else {
                write!(f, "({mag}){var}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&QSeries> for &QSeries {
            type Output = QSeries;
            fn $method(self, rhs: &QSeries) -> QSeries {
                QSeries::$method(self, rhs)
            }
        }
        impl $trait<QSeries> for QSeries {
            type Output = QSeries;
            fn $method(self, rhs: QSeries) -> QSeries {
                QSeries::$method(&self, &rhs)
            }
        }
        impl $trait<&QSeries> for QSeries {
            type Output = QSeries;
            fn $method(self, rhs: &QSeries) -> QSeries {
                QSeries::$method(&self, rhs)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}

/// `(q)_∞` truncated at `q^order`, via the finite product `∏_{k≤N}(1 - q^k)`.
pub fn euler_product(order: usize) -> QSeries {
    let mut c = vec![BigInt::zero(); order + 1];
    c[0] = BigInt::one();
    for k in 1..=order {
        for n in (k..=order).rev() {
            let t = c[n - k].clone();
            c[n] -= t;
        }
    }
    QSeries::from_ints(c)
}

/// `(q)_∞` via Euler's pentagonal number theorem,
/// `Σ_{n∈Z} (-1)^n q^{n(3n-1)/2}`.
pub fn euler_product_pentagonal(order: usize) -> QSeries {
    let mut c = vec![BigInt::zero(); order + 1];
    c[0] = BigInt::one();
    let mut n: usize = 1;
    loop {
        let sign = if n % 2 == 1 { -1 } else { 1 };
        let e1 = n * (3 * n - 1) / 2;
        let e2 = n * (3 * n + 1) / 2;
        if e1 > order {
            break;
        }
        c[e1] += sign;
        if e2 <= order {
            c[e2] += sign;
        }
        n += 1;
    }
    QSeries::from_ints(c)
}

/// `1/(q)_∞`: generating function of the partition numbers.
pub fn partition_series(order: usize) -> QSeries {
    euler_product_pentagonal(order)
        .inv()
        .expect("(q)_inf has constant term 1")
}
