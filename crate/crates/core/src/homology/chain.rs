//! Augmented simplicial chain complexes with sparse integer boundaries.

use rayon::prelude::*;

use super::complex::SimplicialComplex;
use crate::error::{Error, Result};

/// Column-major sparse integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    /// Per column, `(row, value)` with increasing rows and nonzero values.
    pub columns: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let columns =
            (0..c).map(|j| (0..r).filter(|&i| rows[i][j] != 0).map(|i| (i as u32, rows[i][j])).collect()).collect();
        Self { rows: r, cols: c, columns }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                out[i as usize][j] = v;
            }
        }
        out
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    /// `self · other`, or `None` when the shapes do not fit.
    pub fn mul(&self, other: &SparseMatrix) -> Option<SparseMatrix> {
        if self.cols != other.rows {
            return None;
        }
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc: std::collections::BTreeMap<u32, i64> = Default::default();
                for &(k, b) in col {
                    for &(i, a) in &self.columns[k as usize] {
                        *acc.entry(i).or_insert(0) += a * b;
                    }
                }
                acc.into_iter().filter(|&(_, v)| v != 0).collect()
            })
            .collect();
        Some(SparseMatrix { rows: self.rows, cols: other.cols, columns })
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    /// Reorders rows and columns: row `i` moves to `row_perm[i]`.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> SparseMatrix {
        let mut columns = vec![Vec::new(); self.cols];
        for (j, col) in self.columns.iter().enumerate() {
            let mut c: Vec<(u32, i64)> = col.iter().map(|&(i, v)| (row_perm[i as usize] as u32, v)).collect();
            c.sort_unstable();
            columns[col_perm[j]] = c;
        }
        SparseMatrix { rows: self.rows, cols: self.cols, columns }
    }
}

/// `∂_k : C_k → C_{k−1}` for `k = 0..=top`, where `C_{−1} = Z` and `∂_0`
/// is the augmentation.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    /// `ranks[k]` is the rank of `C_k`.
    pub ranks: Vec<usize>,
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn top(&self) -> usize {
        self.boundaries.len() - 1
    }

    pub fn boundary(&self, k: usize) -> &SparseMatrix {
        &self.boundaries[k]
    }
}

/// Alternating-sign boundaries of the simplices through dimension `top`.
/// Fails if some `∂_{k−1} ∂_k` is nonzero.
pub fn boundary_matrices(k: &SimplicialComplex, top: usize) -> Result<ChainComplex> {
    let ranks: Vec<usize> = (0..=top).map(|d| k.count(d)).collect();
    let boundaries: Vec<SparseMatrix> = (0..=top)
        .into_par_iter()
        .map(|d| {
            if d == 0 {
                let columns = (0..k.count(0)).map(|_| vec![(0u32, 1i64)]).collect();
                return SparseMatrix { rows: 1, cols: k.count(0), columns };
            }
            let columns = k
                .simplices(d)
                .iter()
                .map(|s| {
                    let mut col: Vec<(u32, i64)> = (0..s.len())
                        .map(|i| {
                            let mut f = s.clone();
                            f.remove(i);
                            let row = k.index_of(&f).expect("faces are present");
                            (row as u32, if i % 2 == 0 { 1 } else { -1 })
                        })
                        .collect();
                    col.sort_unstable();
                    col
                })
                .collect();
            SparseMatrix { rows: k.count(d - 1), cols: k.count(d), columns }
        })
        .collect();
    for d in 1..=top {
        let prod = boundaries[d - 1].mul(&boundaries[d]).expect("consecutive boundaries compose");
        if !prod.is_zero() {
            return Err(Error::invalid(format!("boundary of boundary is nonzero in degree {d}")));
        }
    }
    Ok(ChainComplex { ranks, boundaries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::complex::flag_expand;

    #[test]
    fn single_edge() {
        let k = SimplicialComplex::from_facets(&[vec![0, 1]], 1).unwrap();
        let c = boundary_matrices(&k, 1).unwrap();
        assert_eq!(c.boundary(1).to_dense(), vec![vec![-1], vec![1]]);
    }

    #[test]
    fn boundary_squares_to_zero_on_a_flag_complex() {
        let edges: Vec<(usize, usize)> =
            (0..7).flat_map(|i| (i + 1..7).map(move |j| (i, j))).filter(|(i, j)| (i * 3 + j) % 4 != 0).collect();
        let k = flag_expand(7, &edges, 4, 10_000).unwrap();
        let c = boundary_matrices(&k, 4).unwrap();
        for d in 1..=4 {
            assert!(c.boundary(d - 1).mul(c.boundary(d)).unwrap().is_zero());
        }
    }
}
