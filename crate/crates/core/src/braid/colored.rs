use std::fmt;

use super::perm::Permutation;
use super::strands::Strands;
use super::word::BraidWord;
use crate::color::{ColorWord, Flavor};
use crate::error::{Error, Result};

/// A braid or permutation whose strands carry colors, optionally framed.
///
/// Twists are recorded at the codomain end: `twists[i]` is the twist on the
/// strand arriving at position `i`. Equality is group equality because the
/// underlying element is kept canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredBraid {
    strands: Strands,
    twists: Option<Vec<i64>>,
    domain: ColorWord,
}

impl ColoredBraid {
    pub fn new(strands: Strands, domain: ColorWord) -> Result<Self> {
        if strands.size() != domain.len() {
            return Err(Error::mismatch(format!(
                "{} strands but {} domain colors",
                strands.size(),
                domain.len()
            )));
        }
        Ok(Self { strands, twists: None, domain })
    }

    pub fn framed(strands: Strands, twists: Vec<i64>, domain: ColorWord) -> Result<Self> {
        if twists.len() != strands.size() {
            return Err(Error::mismatch("one twist per strand"));
        }
        let mut b = Self::new(strands, domain)?;
        b.twists = Some(twists);
        Ok(b.tidy())
    }

    pub fn from_word(w: &BraidWord, domain: ColorWord) -> Result<Self> {
        Self::new(Strands::from_word(w), domain)
    }

    pub fn identity(flavor: Flavor, domain: ColorWord) -> Self {
        Self { strands: Strands::identity(flavor, domain.len()), twists: None, domain }
    }

    /// A pure twist on each strand, no crossings.
    pub fn twist(flavor: Flavor, twists: Vec<i64>, domain: ColorWord) -> Result<Self> {
        Self::framed(Strands::identity(flavor, domain.len()), twists, domain)
    }

    /// Drops an all-zero twist vector so framed and unframed identities agree.
    fn tidy(mut self) -> Self {
        if self.twists.as_ref().is_some_and(|t| t.iter().all(|&x| x == 0)) {
            self.twists = None;
        }
        self
    }

    pub fn strands(&self) -> &Strands {
        &self.strands
    }

    pub fn size(&self) -> usize {
        self.domain.len()
    }

    pub fn domain(&self) -> &ColorWord {
        &self.domain
    }

    pub fn twists(&self) -> Vec<i64> {
        self.twists.clone().unwrap_or_else(|| vec![0; self.size()])
    }

    pub fn is_framed(&self) -> bool {
        self.twists.is_some()
    }

    /// Colors at the codomain end.
    pub fn codomain(&self) -> ColorWord {
        let p = self.strands.permutation();
        (0..self.size()).map(|i| self.domain[p.source(i)]).collect()
    }

    pub fn permutation(&self) -> Permutation {
        self.strands.permutation()
    }

    pub fn is_identity(&self) -> bool {
        self.strands.is_identity() && self.twists.is_none()
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &ColoredBraid) -> Result<ColoredBraid> {
        if self.size() != other.size() {
            return Err(Error::mismatch(format!(
                "composing braids on {} and {} strands",
                self.size(),
                other.size()
            )));
        }
        if self.codomain() != other.domain {
            return Err(Error::mismatch("codomain colors do not match domain colors"));
        }
        let strands = self.strands.then(&other.strands);
        let twists = if self.twists.is_some() || other.twists.is_some() {
            let tu = self.twists();
            let tv = other.twists();
            let p = other.strands.permutation();
            Some((0..self.size()).map(|i| tu[p.source(i)] + tv[i]).collect())
        } else {
            None
        };
        Ok(Self { strands, twists, domain: self.domain.clone() }.tidy())
    }

    pub fn inverse(&self) -> ColoredBraid {
        let inv = ColoredBraid {
            strands: self.strands.inverse(),
            twists: None,
            domain: self.codomain(),
        };
        match &self.twists {
            None => inv,
            Some(t) => {
                let undo = ColoredBraid {
                    strands: Strands::identity(self.flavor(), self.size()),
                    twists: Some(t.iter().map(|x| -x).collect()),
                    domain: self.codomain(),
                };
                undo.then(&inv).expect("matching boundaries")
            }
        }
    }

    pub fn flavor(&self) -> Flavor {
        if self.strands.is_braided() {
            Flavor::Braided
        } else {
            Flavor::Symmetric
        }
    }

    /// Juxtaposition: `other` placed to the right of `self`.
    pub fn tensor(&self, other: &ColoredBraid) -> ColoredBraid {
        let twists = if self.twists.is_some() || other.twists.is_some() {
            let mut t = self.twists();
            t.extend(other.twists());
            Some(t)
        } else {
            None
        };
        Self {
            strands: self.strands.tensor(&other.strands),
            twists,
            domain: self.domain.concat(&other.domain),
        }
    }

    /// The braid `β|_S` obtained by deleting every strand whose domain
    /// index (0-based) is not in `keep`.
    pub fn delete_strands(&self, keep: &[usize]) -> Result<ColoredBraid> {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if keep.last().is_some_and(|&k| k >= self.size()) {
            return Err(Error::invalid("strand index out of range"));
        }
        let strands = self.strands.restrict(&keep);
        let domain = keep.iter().map(|&s| self.domain[s]).collect();
        let twists = self.twists.as_ref().map(|t| {
            let targets = self.permutation().targets();
            let mut ends: Vec<usize> = keep.iter().map(|&s| targets[s]).collect();
            ends.sort_unstable();
            ends.into_iter().map(|pos| t[pos]).collect()
        });
        Ok(Self { strands, twists, domain }.tidy())
    }

    pub fn is_unbraided_on(&self, keep: &[usize]) -> Result<bool> {
        Ok(self.delete_strands(keep)?.is_identity())
    }

    /// Splits `self = (β|S_1 ⊗ … ⊗ β|S_k) · r` where `r` is unbraided on
    /// every block `S_i` of `p`.
    pub fn pu_decompose(&self, p: &Partition) -> Result<(Vec<ColoredBraid>, ColoredBraid)> {
        if p.total() != self.size() {
            return Err(Error::mismatch(format!(
                "partition of {} for a braid on {} strands",
                p.total(),
                self.size()
            )));
        }
        let blocks = p
            .blocks()
            .map(|r| self.delete_strands(&r.collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?;
        let mut prod = ColoredBraid::identity(self.flavor(), ColorWord::empty());
        for b in &blocks {
            prod = prod.tensor(b);
        }
        let residual = prod.inverse().then(self)?;
        Ok((blocks, residual))
    }

    /// Cables domain strand `i` into `mults[i]` parallel strands colored by
    /// `colors[i]`.
    pub fn block_expand(&self, colors: &[ColorWord]) -> Result<ColoredBraid> {
        if colors.len() != self.size() {
            return Err(Error::mismatch("one color block per strand"));
        }
        if self.twists.is_some() {
            return Err(Error::Unsupported("cabling framed braids".into()));
        }
        let mults: Vec<usize> = colors.iter().map(ColorWord::len).collect();
        let strands = self.strands.block_expand(&mults);
        let domain = colors.iter().fold(ColorWord::empty(), |acc, c| acc.concat(c));
        Ok(Self { strands, twists: None, domain })
    }
}

impl fmt::Display for ColoredBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.strands)?;
        if let Some(t) = &self.twists {
            write!(f, " twists{t:?}")?;
        }
        Ok(())
    }
}

/// A partition of `{0, .., n-1}` into consecutive blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    /// Block boundaries `0 = c_0 < c_1 < … < c_k = n`.
    cuts: Vec<usize>,
}

impl Partition {
    /// From 1-based cuts `1 = n_1 < … < n_k = n + 1`.
    pub fn from_cuts(cuts: &[usize]) -> Result<Self> {
        if cuts.first() != Some(&1) || cuts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid(format!("bad partition cuts {cuts:?}")));
        }
        Ok(Self { cuts: cuts.iter().map(|c| c - 1).collect() })
    }

    pub fn from_sizes(sizes: &[usize]) -> Result<Self> {
        let mut cuts = vec![0];
        for &s in sizes {
            if s == 0 {
                return Err(Error::invalid("empty partition block"));
            }
            cuts.push(cuts.last().unwrap() + s);
        }
        Ok(Self { cuts })
    }

    pub fn total(&self) -> usize {
        *self.cuts.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.cuts.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.cuts.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn blocks(&self) -> impl Iterator<Item = std::ops::Range<usize>> + '_ {
        self.cuts.windows(2).map(|w| w[0]..w[1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::Color;

    fn mono(n: usize) -> ColorWord {
        ColorWord::uniform(Color(0), n)
    }

    fn braid(n: usize, letters: &[i32]) -> ColoredBraid {
        ColoredBraid::from_word(&BraidWord::new(n, letters.to_vec()).unwrap(), mono(n)).unwrap()
    }

    #[test]
    fn framed_twist_slides_through_crossing() {
        let t = ColoredBraid::twist(Flavor::Braided, vec![1, 0], mono(2)).unwrap();
        let s = braid(2, &[1]);
        let t2 = ColoredBraid::twist(Flavor::Braided, vec![0, 1], mono(2)).unwrap();
        assert_eq!(t.then(&s).unwrap(), s.then(&t2).unwrap());
    }

    #[test]
    fn framed_inverse() {
        let t = ColoredBraid::framed(
            Strands::from_word(&BraidWord::new(3, vec![1, -2]).unwrap()),
            vec![2, -1, 5],
            mono(3),
        )
        .unwrap();
        assert!(t.then(&t.inverse()).unwrap().is_identity());
        assert!(t.inverse().then(&t).unwrap().is_identity());
    }

    #[test]
    fn delete_single_strand_is_trivial() {
        let w = braid(3, &[1, 2, -1, 2, 2]);
        for s in 0..3 {
            assert!(w.is_unbraided_on(&[s]).unwrap());
        }
        assert!(!braid(2, &[1]).is_unbraided_on(&[0, 1]).unwrap());
        assert!(braid(2, &[1, 1]).delete_strands(&[0]).unwrap().is_identity());
    }

    #[test]
    fn decompose_examples() {
        let s = braid(2, &[1]);
        let (blocks, r) = s.pu_decompose(&Partition::from_cuts(&[1, 3]).unwrap()).unwrap();
        assert_eq!(blocks, vec![s.clone()]);
        assert!(r.is_identity());
        let (blocks, r) = s.pu_decompose(&Partition::from_cuts(&[1, 2, 3]).unwrap()).unwrap();
        assert!(blocks.iter().all(ColoredBraid::is_identity));
        assert_eq!(r, s);
    }

    #[test]
    fn colors_follow_strands() {
        let w = ColoredBraid::from_word(
            &BraidWord::new(3, vec![1, 2]).unwrap(),
            ColorWord::new(vec![Color(0), Color(1), Color(2)]),
        )
        .unwrap();
        assert_eq!(w.codomain(), ColorWord::new(vec![Color(1), Color(2), Color(0)]));
        let bad = ColoredBraid::identity(Flavor::Braided, mono(3));
        assert!(w.then(&bad).is_err());
    }
}
