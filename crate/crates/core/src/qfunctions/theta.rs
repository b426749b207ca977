use num_bigint::BigInt;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::rational::ExactRational;
use crate::series::QSeries;

/// Indices `n` whose exponent `(b n^2 + a n)/2` can fall at or below `order`,
/// paired with the doubled exponent `b n^2 + a n`.
fn lattice(a: i64, b: i64, order: usize) -> Result<Vec<(i64, i64)>> {
    if b < 1 {
        return Err(Error::InvalidParameter(format!("theta needs b >= 1, got {b}")));
    }
    let two_n = 2 * order as i64;
    let reach = a.abs() + (two_n as f64).sqrt().ceil() as i64 + 2;
    let mut out = Vec::new();
    for n in -reach..=reach {
        let twice = b * n * n + a * n;
        if twice.abs() > two_n {
            continue;
        }
        if twice < 0 || twice % 2 != 0 {
            return Err(Error::FractionalExponent { numerator: twice });
        }
        out.push((n, twice));
    }
    Ok(out)
}

/// `θ_{a,b} = Σ_{n∈Z} (-1)^n q^{(b n^2 + a n)/2}`.
pub fn theta(a: i64, b: i64, order: usize) -> Result<QSeries> {
    theta_deriv(a, b, 0, order)
}

/// `θ^{[m]}_{a,b} = Σ (-1)^n (b n^2 + a n)^m q^{(b n^2 + a n)/2}`, which
/// equals `(2D)^m θ_{a,b}`.
pub fn theta_deriv(a: i64, b: i64, m: u32, order: usize) -> Result<QSeries> {
    let mut s = QSeries::zero(order);
    for (n, twice) in lattice(a, b, order)? {
        let e = (twice / 2) as usize;
        let sign: BigInt = if n.rem_euclid(2) == 0 { BigInt::one() } else { -BigInt::one() };
        let weight: BigInt = BigInt::from(twice).pow(m);
        s.add_at(e, &ExactRational::from_integer(sign * weight));
    }
    Ok(s)
}
