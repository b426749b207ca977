//! Indexed collections of q-series that are expected to vanish.

use std::fmt;

use num_traits::Zero;

use crate::rational::{to_fraction_string, ExactRational};
use crate::series::QSeries;

/// Residual series labelled by an integer (a power of `w` or `z`, or a
/// moment index).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    entries: Vec<(i64, QSeries)>,
}

/// First non-zero residual coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Offender {
    pub label: i64,
    pub exponent: usize,
    pub value: ExactRational,
}

impl fmt::Display for Offender {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "index {} coefficient of q^{} is {}",
            self.label,
            self.exponent,
            to_fraction_string(&self.value)
        )
    }
}

impl Residual {
    pub fn new(entries: Vec<(i64, QSeries)>) -> Self {
        Self { entries }
    }

    pub fn single(series: QSeries) -> Self {
        Self { entries: vec![(0, series)] }
    }

    pub fn entries(&self) -> &[(i64, QSeries)] {
        &self.entries
    }

    pub fn get(&self, label: i64) -> Option<&QSeries> {
        self.entries.iter().find(|(l, _)| *l == label).map(|(_, s)| s)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|(_, s)| s.is_zero())
    }

    pub fn first_nonzero(&self) -> Option<Offender> {
        self.entries.iter().find_map(|(label, s)| {
            s.coeffs().iter().position(|c| !c.is_zero()).map(|n| Offender {
                label: *label,
                exponent: n,
                value: s[n].clone(),
            })
        })
    }

    pub fn max_abs(&self) -> ExactRational {
        self.entries
            .iter()
            .map(|(_, s)| s.max_abs())
            .max()
            .unwrap_or_else(ExactRational::zero)
    }

    /// Number of coefficients inspected.
    pub fn size(&self) -> usize {
        self.entries.iter().map(|(_, s)| s.order() + 1).sum()
    }
}
