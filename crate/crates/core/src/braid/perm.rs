use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, .., n-1}` in strand-diagram convention.
///
/// `images[i]` is the domain strand that arrives at position `i`. With this
/// convention the projection from braid words is a homomorphism for ordinary
/// function composition: `perm(uv) = perm(u) ∘ perm(v)`.
///
/// Externally (parsing, display) positions are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n as u32).collect() }
    }

    /// Builds a permutation from 0-based images, rejecting non-bijections.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::invalid(format!("not a permutation: {images:?}")));
            }
            seen[x] = true;
        }
        Ok(Self { images: images.into_iter().map(|x| x as u32).collect() })
    }

    /// Builds a permutation from 1-based images as written in the text formats.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.iter().any(|&x| x == 0) {
            return Err(Error::invalid("permutation images are 1-based"));
        }
        Self::from_images(images.iter().map(|x| x - 1).collect())
    }

    /// The adjacent transposition exchanging positions `k` and `k + 1` (0-based).
    pub fn transposition(n: usize, k: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(k, k + 1);
        p
    }

    /// The half twist: position `i` receives strand `n - 1 - i`.
    pub fn reversal(n: usize) -> Self {
        Self { images: (0..n as u32).rev().collect() }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// Domain strand arriving at position `i`.
    pub fn source(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// End position of the strand starting at `i`.
    pub fn target(&self, i: usize) -> usize {
        self.images.iter().position(|&x| x as usize == i).expect("bijection")
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    /// Targets of all strands, i.e. the inverse images.
    pub fn targets(&self) -> Vec<usize> {
        let mut t = vec![0; self.size()];
        for (pos, &src) in self.images.iter().enumerate() {
            t[src as usize] = pos;
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Self) -> Self {
        assert_eq!(self.size(), other.size(), "permutation size mismatch");
        Self { images: other.images.iter().map(|&j| self.images[j as usize]).collect() }
    }

    pub fn inverse(&self) -> Self {
        Self { images: self.targets().into_iter().map(|x| x as u32).collect() }
    }

    /// Conjugation by the half twist, `Δ p Δ⁻¹`.
    pub fn flip(&self) -> Self {
        let n = self.size() as u32;
        Self { images: (0..n).map(|i| n - 1 - self.images[(n - 1 - i) as usize]).collect() }
    }

    /// Number of crossing pairs (length of a positive permutation braid).
    pub fn inversions(&self) -> usize {
        let n = self.size();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Strands at positions `k`, `k + 1` have crossed: `p = p' σ_k`.
    pub fn ends_with(&self, k: usize) -> bool {
        self.images[k] > self.images[k + 1]
    }

    /// Strands starting at `k`, `k + 1` cross: `p = σ_k p'`.
    pub fn starts_with(&self, k: usize) -> bool {
        let t = self.targets();
        t[k] > t[k + 1]
    }

    /// A deterministic reduced word (1-based positive letters) for the
    /// positive permutation braid of `self`.
    pub fn reduced_word(&self) -> Vec<i32> {
        let targets = self.targets();
        let n = self.size();
        let mut current: Vec<usize> = (0..n).collect();
        let mut word = Vec::new();
        loop {
            let step = (0..n.saturating_sub(1))
                .find(|&k| targets[current[k]] > targets[current[k + 1]]);
            match step {
                Some(k) => {
                    current.swap(k, k + 1);
                    word.push(k as i32 + 1);
                }
                None => break,
            }
        }
        word
    }

    /// Juxtaposition: `self` on the first strands, `other` shifted after it.
    pub fn tensor(&self, other: &Self) -> Self {
        let shift = self.size() as u32;
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&x| x + shift));
        Self { images }
    }

    /// Restriction to the strands in `keep` (domain indices, sorted).
    pub fn restrict(&self, keep: &[usize]) -> Self {
        let mut rank = vec![usize::MAX; self.size()];
        for (r, &s) in keep.iter().enumerate() {
            rank[s] = r;
        }
        let images = self
            .images
            .iter()
            .filter(|&&s| rank[s as usize] != usize::MAX)
            .map(|&s| rank[s as usize] as u32)
            .collect();
        Self { images }
    }

    /// Replaces strand `i` by `mults[i]` parallel strands.
    pub fn block_expand(&self, mults: &[usize]) -> Self {
        assert_eq!(mults.len(), self.size());
        let mut src_offset = Vec::with_capacity(mults.len());
        let mut acc = 0;
        for &m in mults {
            src_offset.push(acc);
            acc += m;
        }
        let mut images = Vec::with_capacity(acc);
        for &s in &self.images {
            let s = s as usize;
            for j in 0..mults[s] {
                images.push((src_offset[s] + j) as u32);
            }
        }
        Self { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", x + 1)?;
        }
        write!(f, "]")
    }
}
