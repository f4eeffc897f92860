use std::fmt;

use super::garside::GarsideNF;
use super::perm::Permutation;
use super::word::BraidWord;
use crate::color::Flavor;

/// An element of `S_n` or `B_n`, always held in canonical form so that
/// structural equality is group equality.
///
/// Planar flavor uses the `Perm` variant restricted to identities.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strands {
    Perm(Permutation),
    Braid(GarsideNF),
}

impl Strands {
    pub fn identity(flavor: Flavor, n: usize) -> Self {
        match flavor {
            Flavor::Braided => Strands::Braid(GarsideNF::identity(n)),
            _ => Strands::Perm(Permutation::identity(n)),
        }
    }

    pub fn from_word(w: &BraidWord) -> Self {
        Strands::Braid(GarsideNF::from_word(w))
    }

    pub fn from_perm(p: Permutation) -> Self {
        Strands::Perm(p)
    }

    /// `σ_k^{±1}` (0-based `k`); the sign is ignored for permutations.
    pub fn generator(flavor: Flavor, n: usize, k: usize, positive: bool) -> Self {
        match flavor {
            Flavor::Braided => {
                let l = (k + 1) as i32;
                Self::from_word(&BraidWord::new_unchecked(n, vec![if positive { l } else { -l }]))
            }
            _ => Strands::Perm(Permutation::transposition(n, k)),
        }
    }

    pub fn is_braided(&self) -> bool {
        matches!(self, Strands::Braid(_))
    }

    pub fn size(&self) -> usize {
        match self {
            Strands::Perm(p) => p.size(),
            Strands::Braid(b) => b.strands(),
        }
    }

    pub fn permutation(&self) -> Permutation {
        match self {
            Strands::Perm(p) => p.clone(),
            Strands::Braid(b) => b.permutation(),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Strands::Perm(p) => p.is_identity(),
            Strands::Braid(b) => b.is_identity(),
        }
    }

    /// Canonical word; permutations give their reduced positive word.
    pub fn word(&self) -> BraidWord {
        match self {
            Strands::Perm(p) => BraidWord::new_unchecked(p.size(), p.reduced_word()),
            Strands::Braid(b) => b.to_word(),
        }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Strands) -> Strands {
        match (self, other) {
            (Strands::Perm(a), Strands::Perm(b)) => Strands::Perm(a.then(b)),
            (Strands::Braid(a), Strands::Braid(b)) => Strands::Braid(a.then(b)),
            _ => panic!("mixing permutations and braids"),
        }
    }

    pub fn inverse(&self) -> Strands {
        match self {
            Strands::Perm(p) => Strands::Perm(p.inverse()),
            Strands::Braid(b) => Strands::Braid(b.inverse()),
        }
    }

    pub fn tensor(&self, other: &Strands) -> Strands {
        match (self, other) {
            (Strands::Perm(a), Strands::Perm(b)) => Strands::Perm(a.tensor(b)),
            (Strands::Braid(a), Strands::Braid(b)) => Strands::Braid(a.tensor(b)),
            _ => panic!("mixing permutations and braids"),
        }
    }

    /// Deletes all strands whose domain index is not in `keep` (sorted).
    pub fn restrict(&self, keep: &[usize]) -> Strands {
        match self {
            Strands::Perm(p) => Strands::Perm(p.restrict(keep)),
            Strands::Braid(b) => Strands::Braid(GarsideNF::from_word(&b.to_word().restrict(keep))),
        }
    }

    /// Cables domain strand `i` into `mults[i]` parallel strands.
    pub fn block_expand(&self, mults: &[usize]) -> Strands {
        match self {
            Strands::Perm(p) => Strands::Perm(p.block_expand(mults)),
            Strands::Braid(b) => Strands::Braid(b.block_expand(mults)),
        }
    }

    /// Domain strand arriving at position `i`.
    pub fn source(&self, i: usize) -> usize {
        match self {
            Strands::Perm(p) => p.source(i),
            Strands::Braid(_) => self.permutation().source(i),
        }
    }

    /// End position of domain strand `i`.
    pub fn target(&self, i: usize) -> usize {
        self.permutation().target(i)
    }

    /// End positions of all domain strands.
    pub fn targets(&self) -> Vec<usize> {
        self.permutation().targets()
    }
}

impl fmt::Display for Strands {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strands::Perm(p) => write!(f, "{p}"),
            Strands::Braid(b) => write!(f, "{}", b.to_word()),
        }
    }
}
