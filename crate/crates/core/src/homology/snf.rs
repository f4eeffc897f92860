//! Smith normal form over the integers.
//!
//! The working path eliminates unit pivots on the sparse matrix with `i128`
//! entries, restarting on big integers if an entry leaves `±2^60`, and
//! hands the leftover block to a dense Bezout elimination. The oracle is a
//! separate dense Euclidean reduction on big integers.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::chain::SparseMatrix;

/// Nonzero invariant factors `d_1 | d_2 | … | d_r` of a matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithForm {
    #[serde(serialize_with = "super::bigints_as_strings")]
    pub factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn is_divisibility_chain(&self) -> bool {
        self.factors.iter().all(|d| d.is_positive()) && self.factors.windows(2).all(|w| (&w[1] % &w[0]).is_zero())
    }
}

trait Entry: Clone + Integer + Signed + From<i64> {
    fn out_of_range(&self) -> bool;
    fn to_big(&self) -> BigInt;
}

const GUARD: i128 = 1 << 60;

impl Entry for i128 {
    fn out_of_range(&self) -> bool {
        self.abs() > GUARD
    }

    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn out_of_range(&self) -> bool {
        false
    }

    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Statistics of the sparse path, for benchmarks and reports.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SnfStats {
    pub unit_pivots: usize,
    pub dense_rows: usize,
    pub dense_cols: usize,
    pub promoted: bool,
}

/// Smith normal form by sparse elimination with a dense fallback.
pub fn smith_normal_form(m: &SparseMatrix) -> SmithForm {
    smith_normal_form_with_stats(m).0
}

pub fn smith_normal_form_with_stats(m: &SparseMatrix) -> (SmithForm, SnfStats) {
    match sparse_path::<i128>(m) {
        Some(r) => r,
        None => {
            let (f, mut s) = sparse_path::<BigInt>(m).expect("big integers do not overflow");
            s.promoted = true;
            (f, s)
        }
    }
}

/// Rows as sparse vectors sorted by column.
type Row<T> = Vec<(u32, T)>;

fn sparse_path<T: Entry>(m: &SparseMatrix) -> Option<(SmithForm, SnfStats)> {
    let mut rows: Vec<Row<T>> = vec![Vec::new(); m.rows];
    for (j, col) in m.columns.iter().enumerate() {
        for &(i, v) in col {
            let v = T::from(v);
            if v.out_of_range() {
                return None;
            }
            rows[i as usize].push((j as u32, v));
        }
    }
    let mut col_rows: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); m.cols];
    for (i, r) in rows.iter().enumerate() {
        for (j, _) in r {
            col_rows[*j as usize].insert(i as u32);
        }
    }
    let mut alive: Vec<bool> = rows.iter().map(|r| !r.is_empty()).collect();
    let mut stats = SnfStats::default();
    loop {
        // Markowitz choice among unit entries
        let mut best: Option<(usize, usize, u32)> = None;
        'scan: for (i, r) in rows.iter().enumerate() {
            if !alive[i] {
                continue;
            }
            for (j, v) in r {
                if v.abs().is_one() {
                    let cost = (r.len() - 1) * (col_rows[*j as usize].len() - 1);
                    if best.map_or(true, |b| cost < b.0) {
                        best = Some((cost, i, *j));
                        if cost == 0 {
                            break 'scan;
                        }
                    }
                }
            }
        }
        let Some((_, p, c)) = best else { break };
        let prow = std::mem::take(&mut rows[p]);
        alive[p] = false;
        let pv = prow.iter().find(|(j, _)| *j == c).expect("pivot").1.clone();
        for (j, _) in &prow {
            col_rows[*j as usize].remove(&(p as u32));
        }
        let others: Vec<u32> = col_rows[c as usize].iter().copied().collect();
        for i in others {
            let i = i as usize;
            let a = rows[i].iter().find(|(j, _)| *j == c).expect("indexed").1.clone();
            // row_i -= (a / pv) row_p, exact since pv is a unit
            let f = a * pv.clone();
            let old = std::mem::take(&mut rows[i]);
            let mut new: Row<T> = Vec::with_capacity(old.len() + prow.len());
            let (mut x, mut y) = (0, 0);
            while x < old.len() || y < prow.len() {
                let take_old = y >= prow.len() || (x < old.len() && old[x].0 < prow[y].0);
                let take_p = x >= old.len() || (y < prow.len() && prow[y].0 < old[x].0);
                if take_old {
                    new.push(old[x].clone());
                    x += 1;
                } else if take_p {
                    let v = -(f.clone() * prow[y].1.clone());
                    if v.out_of_range() {
                        return None;
                    }
                    col_rows[prow[y].0 as usize].insert(i as u32);
                    new.push((prow[y].0, v));
                    y += 1;
                } else {
                    let v = old[x].1.clone() - f.clone() * prow[y].1.clone();
                    if v.out_of_range() {
                        return None;
                    }
                    if v.is_zero() {
                        col_rows[old[x].0 as usize].remove(&(i as u32));
                    } else {
                        new.push((old[x].0, v));
                    }
                    x += 1;
                    y += 1;
                }
            }
            if new.is_empty() {
                alive[i] = false;
            }
            rows[i] = new;
        }
        col_rows[c as usize].clear();
        stats.unit_pivots += 1;
    }
    // leftover block without unit entries
    let live_rows: Vec<usize> = (0..rows.len()).filter(|&i| alive[i]).collect();
    let live_cols: Vec<usize> = (0..m.cols).filter(|&j| !col_rows[j].is_empty()).collect();
    let pos: std::collections::HashMap<usize, usize> = live_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let mut dense = vec![vec![BigInt::zero(); live_cols.len()]; live_rows.len()];
    for (k, &i) in live_rows.iter().enumerate() {
        for (j, v) in &rows[i] {
            dense[k][pos[&(*j as usize)]] = v.to_big();
        }
    }
    stats.dense_rows = live_rows.len();
    stats.dense_cols = live_cols.len();
    let mut factors = vec![BigInt::one(); stats.unit_pivots];
    factors.extend(bezout_diagonal(dense));
    Some((SmithForm { factors }, stats))
}

/// Diagonalizes by unimodular Bezout row and column combinations, then
/// normalizes the diagonal into a divisibility chain.
fn bezout_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        let Some((pi, pj)) = (t..m).flat_map(|i| (t..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero())
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                if (&a[i][t] % &a[t][t]).is_zero() {
                    let q = &a[i][t] / &a[t][t];
                    for j in t..n {
                        let d = &q * &a[t][j];
                        a[i][j] -= d;
                    }
                    continue;
                }
                // Bezout only when it shrinks the pivot, so the loop terminates
                let g = a[t][t].extended_gcd(&a[i][t]);
                let (p, q) = (&a[t][t] / &g.gcd, &a[i][t] / &g.gcd);
                for j in t..n {
                    let (u, v) = (a[t][j].clone(), a[i][j].clone());
                    a[t][j] = &g.x * &u + &g.y * &v;
                    a[i][j] = &p * &v - &q * &u;
                }
            }
            let mut row_clean = true;
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                if (&a[t][j] % &a[t][t]).is_zero() {
                    let q = &a[t][j] / &a[t][t];
                    for row in a.iter_mut().skip(t) {
                        let d = &q * &row[t];
                        row[j] -= d;
                    }
                    continue;
                }
                row_clean = false;
                let g = a[t][t].extended_gcd(&a[t][j]);
                let (p, q) = (&a[t][t] / &g.gcd, &a[t][j] / &g.gcd);
                for row in a.iter_mut().skip(t) {
                    let (u, v) = (row[t].clone(), row[j].clone());
                    row[t] = &g.x * &u + &g.y * &v;
                    row[j] = &p * &v - &q * &u;
                }
            }
            if row_clean || (t + 1..m).all(|i| a[i][t].is_zero()) {
                break;
            }
        }
        diag.push(a[t][t].abs());
    }
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}

/// Independent dense reference: repeatedly moves a smallest entry to the
/// pivot, reduces its row and column by division with remainder and
/// restores divisibility by row additions.
pub fn dense_snf_oracle(m: &SparseMatrix) -> SmithForm {
    let mut a: Vec<Vec<BigInt>> =
        m.to_dense().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
    let (rows, cols) = (m.rows, m.cols);
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let smallest = |a: &Vec<Vec<BigInt>>| {
            (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()))
        };
        let Some((i, j)) = smallest(&a) else { break };
        a.swap(t, i);
        for r in a.iter_mut() {
            r.swap(t, j);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for j in t..cols {
                        let d = &q * &a[t][j];
                        a[i][j] -= d;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for r in a.iter_mut().skip(t) {
                        let d = &q * &r[t];
                        r[j] -= d;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                // a remainder is smaller than the pivot; bring the smallest of row and column to the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                a.swap(t, best.0);
                for r in a.iter_mut() {
                    r.swap(t, best.1);
                }
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        factors.push(a[t][t].abs());
        t += 1;
    }
    SmithForm { factors }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn both(rows: &[Vec<i64>]) -> (SmithForm, SmithForm) {
        let m = SparseMatrix::from_dense(rows);
        (smith_normal_form(&m), dense_snf_oracle(&m))
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identity_and_diagonal() {
        let (s, o) = both(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(s.factors, ints(&[1, 1, 1]));
        assert_eq!(o, s);
        let (s, o) = both(&[vec![2, 0], vec![0, 6]]);
        assert_eq!(s.factors, ints(&[2, 6]));
        assert_eq!(o, s);
        let (s, o) = both(&[vec![6, 0], vec![0, 4]]);
        assert_eq!(s.factors, ints(&[2, 12]));
        assert_eq!(o, s);
    }

    #[test]
    fn hollow_triangle_boundary() {
        // edges 01, 02, 12 as columns
        let (s, o) = both(&[vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]);
        assert_eq!(s.factors, ints(&[1, 1]));
        assert_eq!(o, s);
    }

    #[test]
    fn zero_and_empty() {
        let (s, o) = both(&[vec![0, 0], vec![0, 0]]);
        assert!(s.factors.is_empty() && o.factors.is_empty());
        let m = SparseMatrix::zero(0, 3);
        assert!(smith_normal_form(&m).factors.is_empty());
        assert!(dense_snf_oracle(&m).factors.is_empty());
    }

    #[test]
    fn leftover_blocks_without_units_terminate_and_match_the_oracle() {
        use rand::{Rng, SeedableRng};
        // small even entries leave a dense block where the pivot already
        // divides its neighbours
        for seed in 0..200u64 {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let dense: Vec<Vec<i64>> = (0..24)
                .map(|_| (0..24).map(|_| if rng.gen_bool(0.15) { rng.gen_range(-2..=2) } else { 0 }).collect())
                .collect();
            let m = SparseMatrix::from_dense(&dense);
            assert_eq!(smith_normal_form(&m), dense_snf_oracle(&m), "seed {seed}");
        }
    }

    #[test]
    fn large_entries_promote_to_big_integers() {
        let m = SparseMatrix::from_dense(&[vec![1, 1 << 62], vec![1, 1]]);
        let (f, stats) = smith_normal_form_with_stats(&m);
        assert!(stats.promoted);
        assert_eq!(f.factors, vec![BigInt::one(), (BigInt::one() << 62) - 1]);
        assert_eq!(f, dense_snf_oracle(&m));
        let (_, stats) = smith_normal_form_with_stats(&SparseMatrix::from_dense(&[vec![3, 5]]));
        assert!(!stats.promoted);
    }
}
