//! The successive-Durfee-square multisum for `Σ N_k(m, n) ζ^m q^n`.

use crate::error::{Error, Result};
use crate::partitions::CountTable;

/// Polynomial in `q` (degree ≤ `n`) and `ζ` (`|m| ≤ n`), integer coefficients.
#[derive(Clone)]
struct Bivariate {
    n: usize,
    data: Vec<i64>,
}

impl Bivariate {
    fn zero(n: usize) -> Self {
        Self { n, data: vec![0; (n + 1) * (2 * n + 1)] }
    }

    fn monomial(n: usize, q_exp: usize) -> Self {
        let mut b = Self::zero(n);
        let idx = b.idx(q_exp, 0);
        b.data[idx] = 1;
        b
    }

    fn idx(&self, q: usize, m: i64) -> usize {
        q * (2 * self.n + 1) + (m + self.n as i64) as usize
    }

    /// Multiplies in place by `1/(1 - ζ^s q^i)`.
    fn divide_factor(&mut self, s: i64, i: usize) {
        let w = self.n as i64;
        for q in i..=self.n {
            for m in -w..=w {
                let src = m - s;
                if src.abs() > w {
                    continue;
                }
                let from = self.idx(q - i, src);
                let to = self.idx(q, m);
                self.data[to] += self.data[from];
            }
        }
    }

    fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }
}

/// Non-decreasing tuples `1 ≤ n_1 ≤ ... ≤ n_len` with `Σ n_i² ≤ budget`.
fn tuples(len: usize, budget: usize, out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    let used: usize = cur.iter().map(|x| x * x).sum();
    let start = cur.last().copied().unwrap_or(1);
    let mut v = start;
    while used + v * v * (len - cur.len()) <= budget {
        cur.push(v);
        tuples(len, budget, out, cur);
        cur.pop();
        v += 1;
    }
}

/// `N_k(m, n)` for `|m| ≤ max_abs_m`, `n ≤ max_n` from
/// `Σ q^{n_1²+…+n_{k-1}²} / ((q)_{n_{k-1}-n_{k-2}} ⋯ (q)_{n_2-n_1} (ζq)_{n_1} (ζ^{-1}q)_{n_1})`.
pub fn fgk_multisum(k: u32, max_abs_m: usize, max_n: usize) -> Result<CountTable> {
    if k < 3 {
        return Err(Error::InvalidParameter("the multisum needs k >= 3".into()));
    }
    let n = max_n;
    let mut total = Bivariate::zero(n);
    let mut list = Vec::new();
    tuples((k - 1) as usize, n, &mut list, &mut Vec::new());
    for t in &list {
        let lead: usize = t.iter().map(|x| x * x).sum();
        let mut term = Bivariate::monomial(n, lead);
        for pair in t.windows(2) {
            for i in 1..=pair[1] - pair[0] {
                term.divide_factor(0, i);
            }
        }
        for i in 1..=t[0] {
            term.divide_factor(1, i);
            term.divide_factor(-1, i);
        }
        total.add_assign(&term);
    }

    let width = 2 * max_abs_m + 1;
    let w = max_abs_m as i64;
    let rows = (0..=n)
        .map(|q| {
            (-w..=w)
                .map(|m| if m.unsigned_abs() as usize > n { 0 } else { total.data[total.idx(q, m)] })
                .collect::<Vec<i64>>()
        })
        .collect::<Vec<_>>();
    debug_assert!(rows.iter().all(|r| r.len() == width));
    Ok(CountTable::from_rows(k, max_abs_m, rows))
}
