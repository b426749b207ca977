//! Integer partitions and the statistics built on their Ferrers diagrams:
//! crank, rank, successive Durfee squares and Garvan's k-rank, plus the
//! brute-force count tables `N_k(m, n)`.

use std::fmt;

use crate::error::{Error, Result};

/// Enumeration ceiling for brute-force tables; `p(40) = 37338`.
pub const ENUMERATION_CEILING: usize = 40;

/// A non-increasing sequence of positive parts. The empty partition is the
/// unique partition of 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(
                "parts must be non-increasing".into(),
            ));
        }
        Ok(Self(parts))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The integer being partitioned.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn largest(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// `(k, multiplicity)` for every part size present, ascending in `k`.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in self.0.iter().rev() {
            match out.last_mut() {
                Some((k, m)) if *k == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Length of column `j` (1-based): `#{i : λ_i ≥ j}`.
    pub fn column_length(&self, j: u32) -> usize {
        self.0.iter().take_while(|&&p| p >= j).count()
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Calls `visit` on every partition of `n` in reverse-lexicographic order.
pub fn for_each_partition<F: FnMut(&[u32])>(n: u32, mut visit: F) {
    fn rec<F: FnMut(&[u32])>(rest: u32, cap: u32, buf: &mut Vec<u32>, visit: &mut F) {
        if rest == 0 {
            visit(buf);
            return;
        }
        for p in (1..=cap.min(rest)).rev() {
            buf.push(p);
            rec(rest - p, p, buf, visit);
            buf.pop();
        }
    }
    let mut buf = Vec::new();
    rec(n, n, &mut buf, &mut visit);
}

/// All partitions of `n`, each once, in reverse-lexicographic order.
///
/// Cost grows like `p(n)`; brute-force callers stay below
/// [`ENUMERATION_CEILING`].
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    for_each_partition(n, |parts| out.push(Partition(parts.to_vec())));
    out
}

/// Size of the Durfee square of a non-increasing slice.
fn durfee(parts: &[u32]) -> usize {
    parts
        .iter()
        .enumerate()
        .take_while(|&(i, &p)| p as usize > i)
        .count()
}

/// Sizes `(d_1, d_2, ...)` of the successive Durfee squares. Each square is
/// taken in the rows strictly below the previous one.
pub fn durfee_sizes(lam: &Partition) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut rest = lam.parts();
    while !rest.is_empty() {
        let d = durfee(rest);
        sizes.push(d);
        rest = &rest[d..];
    }
    sizes
}

/// Andrews–Garvan crank. The partition `(1)` has no crank value; its
/// contribution lives in the count-table convention.
pub fn crank(lam: &Partition) -> Result<i64> {
    if lam.parts() == [1] {
        return Err(Error::ConventionCase);
    }
    let ones = lam.parts().iter().filter(|&&p| p == 1).count() as i64;
    if ones == 0 {
        return Ok(lam.largest() as i64);
    }
    let mu = lam.parts().iter().filter(|&&p| p as i64 > ones).count() as i64;
    Ok(mu - ones)
}

/// Dyson's rank: largest part minus number of parts.
pub fn rank(lam: &Partition) -> i64 {
    lam.largest() as i64 - lam.len() as i64
}

/// Garvan's k-rank for `k ≥ 2`. Returns 0 when the diagram has fewer than
/// `k - 1` successive Durfee squares.
pub fn k_rank(lam: &Partition, k: u32) -> Result<i64> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k-rank needs k >= 2, got {k}")));
    }
    if k == 2 {
        return Ok(rank(lam));
    }
    let sizes = durfee_sizes(lam);
    let need = (k - 1) as usize;
    if sizes.len() < need {
        return Ok(0);
    }
    let d1 = sizes[0] as u32;
    let bound = sizes[need - 1];
    let columns = (d1 + 1..=lam.largest())
        .filter(|&j| lam.column_length(j) <= bound)
        .count() as i64;
    let below = lam.len() as i64 - sizes[..need].iter().sum::<usize>() as i64;
    Ok(columns - below)
}

/// Finite table of `N_k(m, n)` over `|m| ≤ max_abs_m`, `0 ≤ n ≤ max_n`.
///
/// `k = 1` counts cranks and `k = 2` ranks; for `k ≥ 3` only partitions with
/// at least `k - 1` successive Durfee squares are counted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    k: u32,
    max_abs_m: usize,
    max_n: usize,
    // rows indexed by n, columns by m + max_abs_m
    entries: Vec<Vec<i64>>,
}

impl CountTable {
    pub(crate) fn from_rows(k: u32, max_abs_m: usize, entries: Vec<Vec<i64>>) -> Self {
        let max_n = entries.len() - 1;
        debug_assert!(entries.iter().all(|r| r.len() == 2 * max_abs_m + 1));
        Self { k, max_abs_m, max_n, entries }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn max_abs_m(&self) -> usize {
        self.max_abs_m
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// `None` outside the window.
    pub fn get(&self, m: i64, n: usize) -> Option<i64> {
        if n > self.max_n || m.unsigned_abs() as usize > self.max_abs_m {
            return None;
        }
        Some(self.entries[n][(m + self.max_abs_m as i64) as usize])
    }

    pub(crate) fn set(&mut self, m: i64, n: usize, value: i64) {
        let col = (m + self.max_abs_m as i64) as usize;
        self.entries[n][col] = value;
    }

    /// `(m, n, count)` with `n` ascending, then `m` ascending.
    pub fn iter(&self) -> impl Iterator<Item = (i64, usize, i64)> + '_ {
        let w = self.max_abs_m as i64;
        self.entries.iter().enumerate().flat_map(move |(n, row)| {
            row.iter()
                .enumerate()
                .map(move |(c, &v)| (c as i64 - w, n, v))
        })
    }

    /// Same table restricted to a smaller window.
    pub fn restrict(&self, max_abs_m: usize, max_n: usize) -> Option<Self> {
        if max_abs_m > self.max_abs_m || max_n > self.max_n {
            return None;
        }
        let off = self.max_abs_m - max_abs_m;
        let entries = self.entries[..=max_n]
            .iter()
            .map(|row| row[off..off + 2 * max_abs_m + 1].to_vec())
            .collect();
        Some(Self::from_rows(self.k, max_abs_m, entries))
    }
}

/// Brute-force `N_k(m, n)` by enumerating every partition of `n ≤ max_n`.
///
/// Conventions: `N_1(±1, 1) = 1`, `N_1(0, 1) = -1`, `N_2(0, 0) = 0` and
/// `N_k(m, 0) = 0` for `k ≥ 3`.
pub fn count_table(k: u32, max_abs_m: usize, max_n: usize) -> Result<CountTable> {
    if k < 1 {
        return Err(Error::InvalidParameter("count tables need k >= 1".into()));
    }
    if max_n > ENUMERATION_CEILING {
        return Err(Error::WindowTooLarge {
            requested: max_n,
            ceiling: ENUMERATION_CEILING,
        });
    }
    let width = 2 * max_abs_m + 1;
    let mut table = CountTable::from_rows(k, max_abs_m, vec![vec![0; width]; max_n + 1]);
    let w = max_abs_m as i64;
    for n in 0..=max_n {
        if k == 1 && n == 1 {
            for (m, v) in [(-1i64, 1), (0, -1), (1, 1)] {
                if m.abs() <= w {
                    table.set(m, 1, v);
                }
            }
            continue;
        }
        let mut row = vec![0i64; width];
        for_each_partition(n as u32, |parts| {
            let lam = Partition(parts.to_vec());
            let stat = match k {
                1 => crank(&lam).expect("n != 1"),
                2 => {
                    if lam.is_empty() {
                        return;
                    }
                    rank(&lam)
                }
                _ => {
                    if durfee_sizes(&lam).len() < (k - 1) as usize {
                        return;
                    }
                    k_rank(&lam, k).expect("k >= 3")
                }
            };
            if stat.abs() <= w {
                row[(stat + w) as usize] += 1;
            }
        });
        table.entries[n] = row;
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Euler's recurrence for p(n), independent of the enumerator.
    fn partition_numbers(max: usize) -> Vec<u64> {
        let mut pn = vec![0u64; max + 1];
        pn[0] = 1;
        for n in 1..=max {
            let mut acc: i64 = 0;
            let mut k: i64 = 1;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > n {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                acc += sign * pn[n - g1] as i64;
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= n {
                    acc += sign * pn[n - g2] as i64;
                }
                k += 1;
            }
            pn[n] = acc as u64;
        }
        pn
    }

    #[test]
    fn validates_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::new(vec![]).is_ok());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(4).len(), 5);
        let pn = partition_numbers(30);
        assert_eq!(pn[30], 5604);
        for n in 0..=30u32 {
            assert_eq!(enumerate_partitions(n).len() as u64, pn[n as usize]);
        }
    }

    #[test]
    fn enumeration_order_is_reverse_lexicographic() {
        let all = enumerate_partitions(4);
        let expect = [vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]];
        for (got, want) in all.iter().zip(expect.iter()) {
            assert_eq!(got.parts(), want.as_slice());
        }
        let mut sorted = enumerate_partitions(12);
        sorted.sort_by(|a, b| b.cmp(a));
        assert_eq!(sorted, enumerate_partitions(12));
    }

    #[test]
    fn durfee_examples() {
        assert_eq!(durfee_sizes(&p(&[7, 4, 4, 3, 2, 1])), vec![3, 2, 1]);
        assert_eq!(durfee_sizes(&Partition::empty()), Vec::<usize>::new());
        assert_eq!(durfee_sizes(&p(&[1, 1])), vec![1, 1]);
        assert_eq!(durfee_sizes(&p(&[5])), vec![1]);
    }

    #[test]
    fn durfee_sizes_decrease_and_fit() {
        for n in 0..=16 {
            for lam in enumerate_partitions(n) {
                let d = durfee_sizes(&lam);
                assert!(d.windows(2).all(|w| w[0] >= w[1]), "{lam}");
                assert!(d.iter().sum::<usize>() <= lam.len());
            }
        }
    }

    #[test]
    fn crank_examples() {
        assert_eq!(crank(&p(&[4])).unwrap(), 4);
        assert_eq!(crank(&p(&[2, 1, 1])).unwrap(), -2);
        assert_eq!(crank(&Partition::empty()).unwrap(), 0);
        assert_eq!(crank(&p(&[1])), Err(Error::ConventionCase));
        // ω = 1, parts > 1: (3)
        assert_eq!(crank(&p(&[3, 1])).unwrap(), 0);
    }

    #[test]
    fn k_rank_examples() {
        assert_eq!(k_rank(&p(&[7, 4, 4, 3, 2, 1]), 3).unwrap(), 2);
        assert_eq!(k_rank(&p(&[2, 1]), 3).unwrap(), 1);
        assert_eq!(k_rank(&p(&[1, 1, 1]), 3).unwrap(), -1);
        assert_eq!(k_rank(&p(&[5]), 3).unwrap(), 0);
        assert_eq!(k_rank(&p(&[4, 2, 1]), 2).unwrap(), 1);
        assert!(k_rank(&p(&[1]), 1).is_err());
    }

    #[test]
    fn count_table_conventions() {
        let t1 = count_table(1, 3, 4).unwrap();
        assert_eq!(t1.get(0, 1), Some(-1));
        assert_eq!(t1.get(1, 1), Some(1));
        assert_eq!(t1.get(-1, 1), Some(1));
        assert_eq!(t1.get(0, 0), Some(1));
        let t2 = count_table(2, 3, 4).unwrap();
        assert_eq!(t2.get(0, 0), Some(0));
        let t3 = count_table(3, 4, 6).unwrap();
        for m in -4..=4 {
            assert_eq!(t3.get(m, 0), Some(0));
        }
        assert_eq!(t3.get(0, 2), Some(1));
        assert_eq!(t3.get(5, 2), None);
        assert_eq!(t3.get(0, 7), None);
        assert_eq!(
            count_table(3, 2, 41),
            Err(Error::WindowTooLarge { requested: 41, ceiling: 40 })
        );
    }

    #[test]
    fn count_tables_are_symmetric() {
        for k in 1..=5 {
            let t = count_table(k, 12, 20).unwrap();
            for (m, n, v) in t.iter() {
                assert_eq!(t.get(-m, n), Some(v), "k={k} m={m} n={n}");
            }
        }
    }

    #[test]
    fn column_sums_count_durfee_qualified_partitions() {
        for k in 3..=5u32 {
            let t = count_table(k, 25, 25).unwrap();
            for n in 1..=25usize {
                let total: i64 = (-25..=25).map(|m| t.get(m, n).unwrap()).sum();
                let qualified = enumerate_partitions(n as u32)
                    .iter()
                    .filter(|l| durfee_sizes(l).len() >= (k - 1) as usize)
                    .count() as i64;
                assert_eq!(total, qualified);
            }
        }
    }

    #[test]
    fn multiplicities_and_columns() {
        let lam = p(&[3, 3, 1, 1, 1]);
        assert_eq!(lam.multiplicities(), vec![(1, 3), (3, 2)]);
        assert_eq!(lam.column_length(1), 5);
        assert_eq!(lam.column_length(2), 2);
        assert_eq!(lam.column_length(4), 0);
    }
}
