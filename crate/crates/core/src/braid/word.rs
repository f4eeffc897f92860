use std::fmt;
use std::str::FromStr;

use super::perm::Permutation;
use crate::error::{Error, Result};

/// A word in the Artin generators of `B_n`.
///
/// Letter `k > 0` is `σ_k`, letter `-k` is `σ_k⁻¹`; `σ_k` exchanges the
/// strands at positions `k` and `k + 1` (1-based). Words read left to right:
/// `uv` is `u` followed by `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::invalid(format!("letter {l} out of range for {strands} strands")));
            }
        }
        Ok(Self { strands, letters })
    }

    pub(crate) fn new_unchecked(strands: usize, letters: Vec<i32>) -> Self {
        debug_assert!(letters.iter().all(|&l| l != 0 && (l.unsigned_abs() as usize) < strands));
        Self { strands, letters }
    }

    pub fn identity(strands: usize) -> Self {
        Self { strands, letters: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn then(&self, other: &Self) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::mismatch(format!(
                "braid on {} strands composed with braid on {}",
                self.strands, other.strands
            )));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self { strands: self.strands, letters })
    }

    pub fn inverse(&self) -> Self {
        Self { strands: self.strands, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn permutation(&self) -> Permutation {
        let mut images: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let k = l.unsigned_abs() as usize - 1;
            images.swap(k, k + 1);
        }
        Permutation::from_images(images).expect("swaps of a bijection")
    }

    /// Juxtaposition with `other` placed to the right.
    pub fn tensor(&self, other: &Self) -> Self {
        let shift = self.strands as i32;
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().map(|&l| l + l.signum() * shift));
        Self { strands: self.strands + other.strands, letters }
    }

    /// Restriction to the strands whose domain index lies in `keep` (sorted).
    ///
    /// Letters are processed one at a time: a crossing between two surviving
    /// strands is renumbered among the survivors, any other crossing vanishes.
    pub fn restrict(&self, keep: &[usize]) -> Self {
        let mut kept = vec![false; self.strands];
        for &s in keep {
            kept[s] = true;
        }
        // kept flag of the strand currently at each position
        let mut at = kept;
        let mut letters = Vec::new();
        for &l in &self.letters {
            let k = l.unsigned_abs() as usize - 1;
            if at[k] && at[k + 1] {
                let rank = at[..k].iter().filter(|&&b| b).count() as i32;
                letters.push(l.signum() * (rank + 1));
            }
            at.swap(k, k + 1);
        }
        Self { strands: keep.len(), letters }
    }

    /// Cables strand `i` (domain index) into `mults[i]` parallel strands.
    pub fn block_expand(&self, mults: &[usize]) -> Self {
        assert_eq!(mults.len(), self.strands, "one multiplicity per strand");
        // multiplicity of the strand currently at each position
        let mut at: Vec<usize> = mults.to_vec();
        let total: usize = mults.iter().sum();
        let mut letters = Vec::new();
        for &l in &self.letters {
            let k = l.unsigned_abs() as usize - 1;
            let offset: usize = at[..k].iter().sum();
            let (a, b) = (at[k], at[k + 1]);
            if l > 0 {
                letters.extend(cable_crossing(offset, a, b));
            } else {
                let w = cable_crossing(offset, b, a);
                letters.extend(w.into_iter().rev().map(|x| -x));
            }
            at.swap(k, k + 1);
        }
        Self { strands: total, letters }
    }
}

/// Positive cable of one crossing: a block of `a` strands starting at
/// `offset` passes to the right of the following block of `b` strands.
fn cable_crossing(offset: usize, a: usize, b: usize) -> Vec<i32> {
    let mut w = Vec::with_capacity(a * b);
    for i in (0..a).rev() {
        for j in 0..b {
            w.push((offset + i + j + 1) as i32);
        }
    }
    w
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b{}:", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    /// Parses the text form `b3: 1 2 -1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, body) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected `bN: letters`, got `{s}`")))?;
        let strands: usize = head
            .trim()
            .strip_prefix('b')
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad strand count `{head}`")))?;
        let letters = body
            .split_whitespace()
            .map(|t| t.parse::<i32>().map_err(|_| Error::Parse(format!("bad letter `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        BraidWord::new(strands, letters)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        let w: BraidWord = "b3: 1 2 -1".parse().unwrap();
        assert_eq!(w.letters(), &[1, 2, -1]);
        assert_eq!(w.to_string().parse::<BraidWord>().unwrap(), w);
        assert!("b2: 2".parse::<BraidWord>().is_err());
        assert!("b2: 0".parse::<BraidWord>().is_err());
    }

    #[test]
    fn permutation_of_s1s2() {
        let w = BraidWord::new(3, vec![1, 2]).unwrap();
        let p = w.permutation();
        // σ1 carries strand 1 to position 2, σ2 carries it on to 3
        assert_eq!(p.targets(), vec![2, 0, 1]);
    }

    #[test]
    fn restrict_drops_crossings_with_deleted_strands() {
        let w = BraidWord::new(3, vec![1, 2, 1]).unwrap();
        let r = w.restrict(&[0, 2]);
        assert_eq!(r.strands(), 2);
        assert_eq!(r.letters(), &[1]);
    }

    #[test]
    fn cable_of_single_crossing() {
        let w = BraidWord::new(2, vec![1]).unwrap();
        let e = w.block_expand(&[2, 1]);
        assert_eq!(e.permutation().images(), vec![2, 0, 1]);
        let e = w.inverse().block_expand(&[2, 1]);
        assert_eq!(e.permutation().images(), vec![2, 0, 1]);
    }
}
