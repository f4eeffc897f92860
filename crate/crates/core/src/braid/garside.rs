use std::fmt;

use super::perm::Permutation;
use super::word::BraidWord;

/// Left normal form `Δ^inf · A_1 ⋯ A_k` of a braid.
///
/// Each `A_i` is a permutation braid (positive, every pair of strands crosses
/// at most once), different from `1` and `Δ`, and every consecutive pair is
/// left-weighted. Two words give equal forms iff they are the same braid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GarsideNF {
    strands: usize,
    infimum: i64,
    factors: Vec<Permutation>,
}

impl GarsideNF {
    pub fn identity(strands: usize) -> Self {
        Self { strands, infimum: 0, factors: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn infimum(&self) -> i64 {
        self.infimum
    }

    pub fn factors(&self) -> &[Permutation] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.infimum == 0 && self.factors.is_empty()
    }

    pub fn from_word(w: &BraidWord) -> Self {
        let n = w.strands();
        if n < 2 {
            return Self::identity(n);
        }
        let delta = Permutation::reversal(n);
        let mut parts = Vec::with_capacity(w.len() * 2);
        for &l in w.letters() {
            let k = l.unsigned_abs() as usize - 1;
            if l > 0 {
                parts.push(Part::Pos(Permutation::transposition(n, k)));
            } else {
                // σ_k⁻¹ = Δ⁻¹ (Δ σ_k⁻¹)
                parts.push(Part::DeltaInv);
                parts.push(Part::Pos(delta.then(&Permutation::transposition(n, k))));
            }
        }
        Self::from_parts(n, parts)
    }

    /// Normal form of a product of simple factors and `Δ⁻¹`s. Every `Δ⁻¹`
    /// is moved to the front, flipping the simple factors it passes.
    fn from_parts(n: usize, parts: Vec<Part>) -> Self {
        if n < 2 {
            return Self::identity(n);
        }
        let negatives = parts.iter().filter(|p| matches!(p, Part::DeltaInv)).count();
        let mut seen_neg = 0;
        let mut factors = Vec::with_capacity(parts.len());
        for p in parts {
            match p {
                Part::DeltaInv => seen_neg += 1,
                Part::Pos(simple) => {
                    let after = negatives - seen_neg;
                    factors.push(if after % 2 == 1 { simple.flip() } else { simple });
                }
            }
        }
        let mut nf = Self { strands: n, infimum: -(negatives as i64), factors };
        nf.normalize();
        nf
    }

    fn parts(&self) -> Vec<Part> {
        let n = self.strands;
        let mut v = Vec::with_capacity(self.infimum.unsigned_abs() as usize + self.factors.len());
        for _ in 0..self.infimum.unsigned_abs() {
            v.push(if self.infimum > 0 { Part::Pos(Permutation::reversal(n)) } else { Part::DeltaInv });
        }
        v.extend(self.factors.iter().cloned().map(Part::Pos));
        v
    }

    /// `self` followed by `other`, computed on simple factors.
    pub fn then(&self, other: &GarsideNF) -> GarsideNF {
        assert_eq!(self.strands, other.strands, "braids on different strand counts");
        let mut parts = self.parts();
        parts.extend(other.parts());
        Self::from_parts(self.strands, parts)
    }

    pub fn inverse(&self) -> GarsideNF {
        let n = self.strands;
        let delta = Permutation::reversal(n);
        let mut parts = Vec::new();
        for p in self.parts().into_iter().rev() {
            match p {
                Part::DeltaInv => parts.push(Part::Pos(delta.clone())),
                // A⁻¹ = (A⁻¹ Δ) Δ⁻¹
                Part::Pos(a) => {
                    parts.push(Part::Pos(a.inverse().then(&delta)));
                    parts.push(Part::DeltaInv);
                }
            }
        }
        Self::from_parts(n, parts)
    }

    /// Cables strand `i` of the domain into `mults[i]` parallel strands.
    /// A cabled permutation braid is again a permutation braid.
    pub fn block_expand(&self, mults: &[usize]) -> GarsideNF {
        assert_eq!(mults.len(), self.strands, "one multiplicity per strand");
        let big: usize = mults.iter().sum();
        if big < 2 {
            return Self::identity(big);
        }
        let delta = Permutation::reversal(big);
        let local_delta = Permutation::reversal(self.strands);
        let mut cur = mults.to_vec();
        let mut parts = Vec::new();
        for p in self.parts() {
            let perm = match &p {
                Part::Pos(a) => a,
                Part::DeltaInv => &local_delta,
            };
            let next: Vec<usize> = (0..self.strands).map(|j| cur[perm.source(j)]).collect();
            match p {
                Part::Pos(_) => parts.push(Part::Pos(perm.block_expand(&cur))),
                // the inverse of Δ cabled along the multiplicities it ends with
                Part::DeltaInv => {
                    let c = local_delta.block_expand(&next);
                    parts.push(Part::Pos(c.inverse().then(&delta)));
                    parts.push(Part::DeltaInv);
                }
            }
            cur = next;
        }
        Self::from_parts(big, parts)
    }

    /// Side-by-side juxtaposition.
    pub fn tensor(&self, other: &GarsideNF) -> GarsideNF {
        let (n, m) = (self.strands, other.strands);
        let big = n + m;
        if big < 2 {
            return Self::identity(big);
        }
        let delta = Permutation::reversal(big);
        let mut parts = Vec::new();
        let mut lift = |x: &GarsideNF, place: &dyn Fn(&Permutation) -> Permutation| {
            let local_delta = Permutation::reversal(x.strands);
            for p in x.parts() {
                match p {
                    Part::Pos(a) => parts.push(Part::Pos(place(&a))),
                    // (Δ_local)⁻¹ = Δ⁻¹ (Δ (Δ_local)⁻¹)
                    Part::DeltaInv => {
                        parts.push(Part::DeltaInv);
                        parts.push(Part::Pos(delta.then(&place(&local_delta.inverse()))));
                    }
                }
            }
        };
        lift(self, &|a| a.tensor(&Permutation::identity(m)));
        lift(other, &|b| Permutation::identity(n).tensor(b));
        Self::from_parts(big, parts)
    }

    /// Makes a product of simple factors left-weighted and strips `Δ`/`1`.
    fn normalize(&mut self) {
        let n = self.strands;
        loop {
            let mut changed = false;
            for i in 0..self.factors.len().saturating_sub(1) {
                let (left, right) = self.factors.split_at_mut(i + 1);
                if make_left_weighted(&mut left[i], &mut right[0], n) {
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let delta = Permutation::reversal(n);
        let lead = self.factors.iter().take_while(|f| **f == delta).count();
        self.factors.drain(..lead);
        self.infimum += lead as i64;
        while self.factors.last().is_some_and(Permutation::is_identity) {
            self.factors.pop();
        }
        debug_assert!(!self.factors.iter().any(|f| f.is_identity() || *f == delta));
    }

    /// A canonical word for this normal form.
    pub fn to_word(&self) -> BraidWord {
        let n = self.strands;
        let mut letters = Vec::new();
        if n >= 2 {
            let dw = Permutation::reversal(n).reduced_word();
            for _ in 0..self.infimum.unsigned_abs() {
                if self.infimum > 0 {
                    letters.extend_from_slice(&dw);
                } else {
                    letters.extend(dw.iter().rev().map(|l| -l));
                }
            }
            for f in &self.factors {
                letters.extend(f.reduced_word());
            }
        }
        BraidWord::new_unchecked(n, letters)
    }

    pub fn permutation(&self) -> Permutation {
        let n = self.strands;
        let mut p = Permutation::identity(n);
        if self.infimum.rem_euclid(2) == 1 {
            p = Permutation::reversal(n);
        }
        for f in &self.factors {
            p = p.then(f);
        }
        p
    }
}

#[derive(Clone, Debug)]
enum Part {
    Pos(Permutation),
    DeltaInv,
}

/// Slides crossings from the front of `b` to the back of `a` until the pair
/// is left-weighted. Returns whether anything moved.
fn make_left_weighted(a: &mut Permutation, b: &mut Permutation, n: usize) -> bool {
    let mut changed = false;
    loop {
        let step = (0..n - 1).find(|&k| b.starts_with(k) && !a.ends_with(k));
        match step {
            Some(k) => {
                let s = Permutation::transposition(n, k);
                *a = a.then(&s);
                *b = s.then(b);
                changed = true;
            }
            None => return changed,
        }
    }
}

impl fmt::Display for GarsideNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Δ^{}", self.infimum)?;
        for a in &self.factors {
            write!(f, " {a}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(n: usize, letters: &[i32]) -> GarsideNF {
        GarsideNF::from_word(&BraidWord::new(n, letters.to_vec()).unwrap())
    }

    #[test]
    fn braid_relation() {
        assert_eq!(nf(3, &[1, 2, 1]), nf(3, &[2, 1, 2]));
        assert_eq!(nf(3, &[1, 2, 1]).infimum(), 1);
        assert!(nf(3, &[1, 2, 1]).factors().is_empty());
    }

    #[test]
    fn far_commutation() {
        assert_eq!(nf(4, &[1, 3]), nf(4, &[3, 1]));
    }

    #[test]
    fn free_cancellation() {
        assert!(nf(2, &[1, -1]).is_identity());
        assert!(nf(4, &[2, -3, 1, -1, 3, -2]).is_identity());
    }

    #[test]
    fn distinct_three_cycles() {
        assert_ne!(nf(3, &[1, 2]), nf(3, &[2, 1]));
    }

    #[test]
    fn full_twist_is_central() {
        let d2 = [1, 2, 1, 1, 2, 1];
        let mut a = d2.to_vec();
        a.push(1);
        let mut b = vec![1];
        b.extend_from_slice(&d2);
        assert_eq!(nf(3, &a), nf(3, &b));
    }

    #[test]
    fn word_roundtrip() {
        let f = nf(4, &[1, -2, 3, 3, -1, 2, -3, 1]);
        assert_eq!(GarsideNF::from_word(&f.to_word()), f);
    }

    #[test]
    fn factor_products_match_words() {
        let a = BraidWord::new(4, vec![1, -2, 3, 3, -1]).unwrap();
        let b = BraidWord::new(4, vec![2, -3, -3, 1, 2]).unwrap();
        let (x, y) = (GarsideNF::from_word(&a), GarsideNF::from_word(&b));
        assert_eq!(x.then(&y), GarsideNF::from_word(&a.then(&b).unwrap()));
        assert_eq!(x.inverse(), GarsideNF::from_word(&a.inverse()));
        assert_eq!(x.tensor(&y), GarsideNF::from_word(&a.tensor(&b)));
        assert!(x.then(&x.inverse()).is_identity());
        let m = [2, 1, 3, 1];
        assert_eq!(x.block_expand(&m), GarsideNF::from_word(&a.block_expand(&m)));
        assert_eq!(y.block_expand(&m), GarsideNF::from_word(&b.block_expand(&m)));
    }

    #[test]
    fn nontrivial_power_is_not_identity() {
        assert!(!nf(2, &[1, 1]).is_identity());
        assert!(!nf(3, &[1, -2]).is_identity());
    }
}
