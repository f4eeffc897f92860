//! Graded posets and their spines.

use std::collections::BTreeSet;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// A finite poset with a degree function that strictly increases along `<`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedPoset {
    degrees: Vec<usize>,
    /// `leq[x][y]` iff `x ≤ y`.
    leq: Vec<Vec<bool>>,
}

impl GradedPoset {
    /// The poset generated by `relations` (pairs `x < y`) under reflexive
    /// transitive closure.
    pub fn from_relations(degrees: Vec<usize>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = degrees.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(x, y) in relations {
            if x >= n || y >= n {
                return Err(Error::invalid(format!("relation ({x}, {y}) outside {n} elements")));
            }
            leq[x][y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::from_matrix(degrees, leq)
    }

    /// Takes a full order matrix and checks the axioms.
    pub fn from_matrix(degrees: Vec<usize>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = degrees.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::mismatch("order matrix has the wrong shape"));
        }
        for x in 0..n {
            if !leq[x][x] {
                return Err(Error::invalid(format!("order is not reflexive at {x}")));
            }
            for y in 0..n {
                if x != y && leq[x][y] {
                    if leq[y][x] {
                        return Err(Error::invalid(format!("{x} and {y} are below each other")));
                    }
                    if degrees[x] >= degrees[y] {
                        return Err(Error::invalid(format!("{x} < {y} but the degree does not increase")));
                    }
                    for z in 0..n {
                        if leq[y][z] && !leq[x][z] {
                            return Err(Error::invalid(format!("order is not transitive at {x} < {y} < {z}")));
                        }
                    }
                }
            }
        }
        Ok(Self { degrees, leq })
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn degree(&self, x: usize) -> usize {
        self.degrees[x]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    pub fn less(&self, x: usize, y: usize) -> bool {
        x != y && self.leq[x][y]
    }

    pub fn minimal(&self) -> BTreeSet<usize> {
        (0..self.len()).filter(|&y| !(0..self.len()).any(|x| self.less(x, y))).collect()
    }

    /// Minimal elements of `{z | x ≤ z ≥ y}`.
    pub fn minimal_upper_bounds(&self, x: usize, y: usize) -> BTreeSet<usize> {
        let ub: Vec<usize> = (0..self.len()).filter(|&z| self.leq[x][z] && self.leq[y][z]).collect();
        ub.iter().copied().filter(|&z| !ub.iter().any(|&w| self.less(w, z))).collect()
    }

    /// Cover relations, for drawing.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.less(x, y) && !(0..n).any(|z| self.less(x, z) && self.less(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// The subposet on `keep`, renumbered in the given order.
    pub fn restrict(&self, keep: &[usize]) -> GradedPoset {
        let degrees = keep.iter().map(|&x| self.degrees[x]).collect();
        let leq = keep.iter().map(|&x| keep.iter().map(|&y| self.leq[x][y]).collect()).collect();
        GradedPoset { degrees, leq }
    }

    /// A random graded poset: degrees in `1..=levels`, and each pair with
    /// increasing degree related with probability `p` before closure.
    pub fn random(rng: &mut impl Rng, n: usize, levels: usize, p: f64) -> GradedPoset {
        let degrees: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=levels.max(1))).collect();
        let mut rel = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if degrees[x] < degrees[y] && rng.gen_bool(p) {
                    rel.push((x, y));
                }
            }
        }
        GradedPoset::from_relations(degrees, &rel).expect("closure of a degree-increasing relation is graded")
    }
}

/// Whether `s` contains the minimal elements and every element outside `s`
/// has a greatest element of `s` strictly below it.
pub fn has_spine_property(p: &GradedPoset, s: &BTreeSet<usize>) -> bool {
    if !p.minimal().is_subset(s) {
        return false;
    }
    (0..p.len()).filter(|v| !s.contains(v)).all(|v| greatest_below(p, s, v).is_some())
}

/// The greatest element of `s` strictly below `v`, if there is one.
pub fn greatest_below(p: &GradedPoset, s: &BTreeSet<usize>, v: usize) -> Option<usize> {
    let below: Vec<usize> = s.iter().copied().filter(|&g| p.less(g, v)).collect();
    below.iter().copied().find(|&g| below.iter().all(|&x| p.leq(x, g)))
}

/// Levels of the inductive spine construction: `S_0` are the minimal
/// elements and `S_{i+1}` collects the minimal upper bounds of distinct
/// pairs in `S_i`.
pub fn spine_levels(p: &GradedPoset) -> Vec<BTreeSet<usize>> {
    let mut levels = vec![p.minimal()];
    loop {
        let cur = levels.last().expect("nonempty");
        let v: Vec<usize> = cur.iter().copied().collect();
        let mut next = BTreeSet::new();
        for (i, &x) in v.iter().enumerate() {
            for &y in &v[i + 1..] {
                next.extend(p.minimal_upper_bounds(x, y));
            }
        }
        if next.is_empty() {
            return levels;
        }
        levels.push(next);
    }
}

pub fn spine_construct(p: &GradedPoset) -> BTreeSet<usize> {
    spine_levels(p).into_iter().flatten().collect()
}

/// Largest poset [`spine_bruteforce`] accepts.
pub const BRUTEFORCE_LIMIT: usize = 20;

/// The smallest superset of the minimal elements with the spine property,
/// found by trying supersets in order of size.
pub fn spine_bruteforce(p: &GradedPoset) -> Result<BTreeSet<usize>> {
    if p.len() > BRUTEFORCE_LIMIT {
        return Err(Error::Resource(format!("{} elements exceed the brute-force limit {BRUTEFORCE_LIMIT}", p.len())));
    }
    let m = p.minimal();
    let rest: Vec<usize> = (0..p.len()).filter(|x| !m.contains(x)).collect();
    for size in 0..=rest.len() {
        let mut found: Vec<BTreeSet<usize>> = Vec::new();
        for_each_subset(&rest, size, &mut |extra| {
            let mut s = m.clone();
            s.extend(extra.iter().copied());
            if has_spine_property(p, &s) {
                found.push(s);
            }
        });
        match found.len() {
            0 => continue,
            1 => return Ok(found.pop().expect("one")),
            k => return Err(Error::invalid(format!("{k} distinct smallest candidates of size {}", m.len() + size))),
        }
    }
    unreachable!("the whole poset has the spine property")
}

fn for_each_subset(items: &[usize], size: usize, f: &mut impl FnMut(&[usize])) {
    fn go(items: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == size {
            f(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < size - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, size, i + 1, cur, f);
            cur.pop();
        }
    }
    go(items, size, 0, &mut Vec::with_capacity(size), f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn diamond() -> GradedPoset {
        // a, b minimal; c above both; d above c
        GradedPoset::from_relations(vec![1, 1, 2, 3], &[(0, 2), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn antichain_is_its_own_spine() {
        let p = GradedPoset::from_relations(vec![1, 2, 3], &[]).unwrap();
        let all: BTreeSet<usize> = (0..3).collect();
        assert_eq!(spine_construct(&p), all);
        assert_eq!(spine_bruteforce(&p).unwrap(), all);
    }

    #[test]
    fn diamond_spine() {
        let p = diamond();
        let expect: BTreeSet<usize> = [0, 1, 2].into_iter().collect();
        assert_eq!(spine_construct(&p), expect);
        assert_eq!(spine_bruteforce(&p).unwrap(), expect);
        assert_eq!(greatest_below(&p, &expect, 3), Some(2));
    }

    #[test]
    fn two_incomparable_joins_both_enter() {
        // a, b minimal with two minimal upper bounds c, d; e above both
        let p = GradedPoset::from_relations(vec![1, 1, 2, 2, 3], &[(0, 2), (1, 2), (0, 3), (1, 3), (2, 4), (3, 4)])
            .unwrap();
        let s = spine_construct(&p);
        assert_eq!(s, (0..5).collect());
        assert_eq!(spine_bruteforce(&p).unwrap(), s);
    }

    #[test]
    fn rejects_degree_violations() {
        assert!(GradedPoset::from_relations(vec![2, 1], &[(0, 1)]).is_err());
        assert!(GradedPoset::from_relations(vec![1, 1], &[(0, 1)]).is_err());
    }

    #[test]
    fn random_posets_agree_with_bruteforce() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=10);
            let p = GradedPoset::random(&mut rng, n, 4, 0.35);
            let s = spine_construct(&p);
            assert!(has_spine_property(&p, &s));
            assert_eq!(spine_bruteforce(&p).unwrap(), s);
        }
    }
}
