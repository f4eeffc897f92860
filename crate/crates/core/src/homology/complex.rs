//! Simplicial complexes stored as sorted vertex lists per dimension.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};

/// Simplices of dimension `0..=max_dim`, each a strictly increasing vertex
/// list, each dimension sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialComplex {
    levels: Vec<Vec<Vec<u32>>>,
    /// No simplex of dimension `max_dim + 1` was dropped.
    complete: bool,
    #[serde(skip)]
    index: Vec<HashMap<Vec<u32>, usize>>,
}

impl SimplicialComplex {
    /// From simplices grouped by dimension; faces must already be present.
    pub fn from_levels(mut levels: Vec<Vec<Vec<u32>>>, complete: bool) -> Result<Self> {
        for (k, level) in levels.iter_mut().enumerate() {
            for s in level.iter() {
                if s.len() != k + 1 || s.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::invalid(format!("{s:?} is not an increasing {k}-simplex")));
                }
            }
            level.sort();
            level.dedup();
        }
        while levels.last().is_some_and(|l| l.is_empty()) && levels.len() > 1 {
            levels.pop();
        }
        let index = levels.iter().map(|l| l.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect()).collect();
        let k = Self { levels, complete, index };
        for d in 1..k.levels.len() {
            for s in &k.levels[d] {
                for f in faces(s) {
                    if !k.index[d - 1].contains_key(&f) {
                        return Err(Error::invalid(format!("face {f:?} of {s:?} missing")));
                    }
                }
            }
        }
        Ok(k)
    }

    /// The downward closure of `facets`, truncated at `max_dim`.
    pub fn from_facets(facets: &[Vec<u32>], max_dim: usize) -> Result<Self> {
        let mut levels: Vec<BTreeSet<Vec<u32>>> = vec![BTreeSet::new(); max_dim + 1];
        let mut complete = true;
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            if f.len() > max_dim + 1 {
                complete = false;
            }
            for mask in 1u64..(1u64 << f.len().min(63)) {
                let s: Vec<u32> = (0..f.len()).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                if s.len() <= max_dim + 1 {
                    levels[s.len() - 1].insert(s);
                }
            }
        }
        Self::from_levels(levels.into_iter().map(|l| l.into_iter().collect()).collect(), complete)
    }

    pub fn empty() -> Self {
        Self::from_levels(vec![Vec::new()], true).expect("valid")
    }

    /// Highest dimension stored (simplices above it may exist if incomplete).
    pub fn stored_dim(&self) -> usize {
        self.levels.len() - 1
    }

    /// Whether higher-dimensional simplices were cut off.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Largest degree whose homology the stored simplices determine.
    pub fn homology_valid_through(&self) -> Option<usize> {
        if self.complete {
            Some(usize::MAX)
        } else {
            self.stored_dim().checked_sub(1)
        }
    }

    pub fn is_empty(&self) -> bool {
        self.levels[0].is_empty()
    }

    pub fn count(&self, k: usize) -> usize {
        self.levels.get(k).map_or(0, |l| l.len())
    }

    pub fn simplices(&self, k: usize) -> &[Vec<u32>] {
        self.levels.get(k).map_or(&[], |l| l.as_slice())
    }

    pub fn index_of(&self, s: &[u32]) -> Option<usize> {
        let k = s.len().checked_sub(1)?;
        self.index.get(k)?.get(s).copied()
    }

    pub fn contains(&self, s: &[u32]) -> bool {
        self.index_of(s).is_some()
    }

    pub fn vertices(&self) -> Vec<u32> {
        self.levels[0].iter().map(|s| s[0]).collect()
    }

    /// `Σ (−1)^k f_k` over the stored simplices.
    pub fn euler_characteristic(&self) -> i64 {
        self.levels.iter().enumerate().map(|(k, l)| if k % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) }).sum()
    }

    /// Path components of the 1-skeleton, each sorted.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let verts = self.vertices();
        let pos: HashMap<u32, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut rep: Vec<usize> = (0..verts.len()).collect();
        fn find(rep: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while rep[r] != r {
                r = rep[r];
            }
            let mut y = x;
            while rep[y] != r {
                let n = rep[y];
                rep[y] = r;
                y = n;
            }
            r
        }
        for e in self.simplices(1) {
            let (a, b) = (find(&mut rep, pos[&e[0]]), find(&mut rep, pos[&e[1]]));
            rep[a.max(b)] = a.min(b);
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<u32>> = Default::default();
        for (i, &v) in verts.iter().enumerate() {
            let r = find(&mut rep, i);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }

    /// The full subcomplex on the vertices satisfying `keep`.
    pub fn full_subcomplex(&self, keep: impl Fn(u32) -> bool) -> SimplicialComplex {
        let levels = self.levels.iter().map(|l| l.iter().filter(|s| s.iter().all(|&v| keep(v))).cloned().collect()).collect();
        Self::from_levels(levels, self.complete).expect("faces of kept simplices are kept")
    }

    /// Facets, i.e. stored simplices not contained in a larger stored one.
    pub fn facets(&self) -> Vec<Vec<u32>> {
        let mut faces_of: Vec<Vec<Vec<u32>>> = vec![Vec::new(); self.levels.len()];
        for k in 1..self.levels.len() {
            for s in &self.levels[k] {
                faces_of[k - 1].extend(faces(s));
            }
        }
        let sets: Vec<BTreeSet<Vec<u32>>> = faces_of.into_iter().map(|f| f.into_iter().collect()).collect();
        let mut out = Vec::new();
        for (k, l) in self.levels.iter().enumerate() {
            for s in l {
                if !sets[k].contains(s) {
                    out.push(s.clone());
                }
            }
        }
        out.sort();
        out
    }
}

/// Codimension-one faces, the `i`-th omitting vertex `i`.
pub fn faces(s: &[u32]) -> impl Iterator<Item = Vec<u32>> + '_ {
    (0..s.len()).filter(move |_| s.len() > 1).map(move |i| {
        let mut f = s.to_vec();
        f.remove(i);
        f
    })
}

fn bitsets(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<u64>> {
    let words = n.div_ceil(64);
    let mut adj = vec![vec![0u64; words]; n];
    for &(a, b) in edges {
        if a != b {
            adj[a][b / 64] |= 1 << (b % 64);
            adj[b][a / 64] |= 1 << (a % 64);
        }
    }
    adj
}

fn bits(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(w, &x)| {
        let mut x = x;
        std::iter::from_fn(move || {
            if x == 0 {
                return None;
            }
            let t = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(w * 64 + t)
        })
    })
}

/// The flag complex of a graph on `0..n`: every clique with at most
/// `max_dim + 1` vertices, at most `cap` simplices in total.
pub fn flag_expand(n: usize, edges: &[(usize, usize)], max_dim: usize, cap: usize) -> Result<SimplicialComplex> {
    let adj = bitsets(n, edges);
    let mut levels: Vec<Vec<Vec<u32>>> = vec![Vec::new(); max_dim + 1];
    let mut total = 0usize;
    let mut complete = true;
    // candidates: common neighbours above the last vertex
    fn go(
        adj: &[Vec<u64>],
        cur: &mut Vec<u32>,
        cand: Vec<u64>,
        max_dim: usize,
        levels: &mut Vec<Vec<Vec<u32>>>,
        total: &mut usize,
        cap: usize,
        complete: &mut bool,
    ) -> Result<()> {
        levels[cur.len() - 1].push(cur.clone());
        *total += 1;
        if *total > cap {
            return Err(Error::Resource(format!("flag complex exceeds {cap} simplices")));
        }
        if cur.len() == max_dim + 1 {
            if cand.iter().any(|&w| w != 0) {
                *complete = false;
            }
            return Ok(());
        }
        for v in bits(&cand).collect::<Vec<_>>() {
            let mut next: Vec<u64> = cand.iter().zip(&adj[v]).map(|(a, b)| a & b).collect();
            for (w, x) in next.iter_mut().enumerate() {
                // keep only vertices above v
                let lo = w * 64;
                if lo + 64 <= v + 1 {
                    *x = 0;
                } else if lo <= v {
                    *x &= !((1u64 << (v + 1 - lo)) - 1);
                }
            }
            cur.push(v as u32);
            go(adj, cur, next, max_dim, levels, total, cap, complete)?;
            cur.pop();
        }
        Ok(())
    }
    for v in 0..n {
        let mut cand = adj[v].clone();
        for (w, x) in cand.iter_mut().enumerate() {
            let lo = w * 64;
            if lo + 64 <= v + 1 {
                *x = 0;
            } else if lo <= v {
                *x &= !((1u64 << (v + 1 - lo)) - 1);
            }
        }
        go(&adj, &mut vec![v as u32], cand, max_dim, &mut levels, &mut total, cap, &mut complete)?;
    }
    SimplicialComplex::from_levels(levels, complete)
}

/// Maximal cliques of a graph on `0..n`, each sorted, in lexicographic order.
pub fn maximal_cliques(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let adj = bitsets(n, edges);
    let words = n.div_ceil(64);
    let mut out = Vec::new();
    fn bk(adj: &[Vec<u64>], r: &mut Vec<usize>, p: Vec<u64>, x: Vec<u64>, out: &mut Vec<Vec<usize>>) {
        if p.iter().all(|&w| w == 0) {
            if x.iter().all(|&w| w == 0) {
                let mut c = r.clone();
                c.sort_unstable();
                out.push(c);
            }
            return;
        }
        let pivot = bits(&p)
            .chain(bits(&x))
            .max_by_key(|&u| p.iter().zip(&adj[u]).map(|(a, b)| (a & b).count_ones()).sum::<u32>())
            .expect("p is nonempty");
        let (mut p, mut x) = (p, x);
        let cands: Vec<usize> = bits(&p).filter(|&v| adj[pivot][v / 64] >> (v % 64) & 1 == 0).collect();
        for v in cands {
            let np = p.iter().zip(&adj[v]).map(|(a, b)| a & b).collect();
            let nx = x.iter().zip(&adj[v]).map(|(a, b)| a & b).collect();
            r.push(v);
            bk(adj, r, np, nx, out);
            r.pop();
            p[v / 64] &= !(1 << (v % 64));
            x[v / 64] |= 1 << (v % 64);
        }
    }
    let mut p = vec![0u64; words];
    for v in 0..n {
        p[v / 64] |= 1 << (v % 64);
    }
    bk(&adj, &mut Vec::new(), p, vec![0u64; words], &mut out);
    out.sort();
    out
}

/// `lk(v)`: simplices `τ ∌ v` with `τ ∪ {v}` in the complex.
pub fn vertex_link(k: &SimplicialComplex, v: u32) -> Result<SimplicialComplex> {
    if !k.contains(&[v]) {
        return Err(Error::invalid(format!("vertex {v} is not in the complex")));
    }
    let mut levels = vec![Vec::new(); k.stored_dim().max(1)];
    for d in 1..=k.stored_dim() {
        for s in k.simplices(d) {
            if let Ok(i) = s.binary_search(&v) {
                let mut t = s.clone();
                t.remove(i);
                levels[d - 1].push(t);
            }
        }
    }
    SimplicialComplex::from_levels(levels, k.is_complete())
}

/// The descending link of `v` for a vertex height: link vertices strictly
/// below `v`.
pub fn descending_link(k: &SimplicialComplex, v: u32, height: impl Fn(u32) -> i64) -> Result<SimplicialComplex> {
    let h = height(v);
    Ok(vertex_link(k, v)?.full_subcomplex(|w| height(w) < h))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hollow_triangle() -> SimplicialComplex {
        flag_expand(3, &[(0, 1), (1, 2), (0, 2)], 1, 100).unwrap()
    }

    #[test]
    fn triangle_graph_fills_in() {
        let k = flag_expand(3, &[(0, 1), (1, 2), (0, 2)], 2, 100).unwrap();
        assert_eq!((k.count(0), k.count(1), k.count(2)), (3, 3, 1));
        assert!(k.is_complete());
        assert!(!hollow_triangle().is_complete());
    }

    #[test]
    fn path_graph_has_no_triangle() {
        let k = flag_expand(3, &[(0, 1), (1, 2)], 2, 100).unwrap();
        assert_eq!((k.count(1), k.count(2)), (2, 0));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(flag_expand(3, &[(0, 1), (1, 2), (0, 2)], 2, 5), Err(Error::Resource(_))));
    }

    #[test]
    fn links() {
        let cone = SimplicialComplex::from_facets(&[vec![0, 1, 3], vec![1, 2, 3]], 2).unwrap();
        let base = SimplicialComplex::from_facets(&[vec![0, 1], vec![1, 2]], 1).unwrap();
        assert_eq!(vertex_link(&cone, 3).unwrap().simplices(1), base.simplices(1));
        let l = vertex_link(&SimplicialComplex::from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]], 1).unwrap(), 0)
            .unwrap();
        assert_eq!(l.vertices(), vec![1, 2]);
        assert_eq!(l.count(1), 0);
        let d = descending_link(&cone, 3, |w| w as i64).unwrap();
        assert_eq!(d.vertices(), vec![0, 1, 2]);
        let d = descending_link(&cone, 1, |w| w as i64).unwrap();
        assert_eq!(d.vertices(), vec![0]);
    }

    #[test]
    fn cliques_and_facets_agree() {
        // two triangles sharing an edge plus a pendant edge
        let edges = [(0, 1), (1, 2), (0, 2), (1, 3), (2, 3), (3, 4)];
        let mc = maximal_cliques(5, &edges);
        assert_eq!(mc, vec![vec![0, 1, 2], vec![1, 2, 3], vec![3, 4]]);
        let k = flag_expand(5, &edges, 4, 100).unwrap();
        let f: Vec<Vec<usize>> = k.facets().iter().map(|s| s.iter().map(|&v| v as usize).collect()).collect();
        assert_eq!(f, mc);
        assert_eq!(k.components().len(), 1);
    }

    #[test]
    fn missing_faces_are_rejected() {
        assert!(SimplicialComplex::from_levels(vec![vec![vec![0]], vec![vec![0, 1]]], true).is_err());
    }
}
