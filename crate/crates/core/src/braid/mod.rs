//! Symmetric and braid groups: words, Garside normal forms, colored and
//! framed braids, strand deletion and the block decomposition used by
//! arrow normal forms.

mod colored;
mod garside;
mod perm;
mod strands;
mod word;

pub use colored::{ColoredBraid, Partition};
pub use garside::GarsideNF;
pub use perm::Permutation;
pub use strands::Strands;
pub use word::BraidWord;

/// Group equality of two braid words.
pub fn braid_equal(u: &BraidWord, v: &BraidWord) -> bool {
    u.strands() == v.strands() && GarsideNF::from_word(u) == GarsideNF::from_word(v)
}
