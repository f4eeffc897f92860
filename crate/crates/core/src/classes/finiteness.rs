//! Finiteness parameters: color-tameness and the connectivity bounds.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{ClassPoset, Classification};
use crate::color::{Color, ColorWord, Flavor};
use crate::operad::Operad;

/// `⌊(l − m_r)/κ_d⌋ − 1` with `κ_1 = 2m_a + m_r − 2` and `κ_2 = κ_3 = 2m_a − 1`.
pub fn nu(d: u8, m_a: usize, m_r: usize, l: usize) -> i64 {
    let kappa = match d {
        1 => 2 * m_a as i64 + m_r as i64 - 2,
        _ => 2 * m_a as i64 - 1,
    };
    (l as i64 - m_r as i64).div_euclid(kappa.max(1)) - 1
}

/// `μ_1(l) = ⌊(l − m_C)/(2m_V + m_C + m_E)⌋ − 2` and
/// `μ_2(l) = μ_3(l) = ⌊(l − m_C)/(2m_V + m_E)⌋ − 1`.
pub fn mu(d: u8, m_v: usize, m_c: usize, m_e: usize, l: usize) -> i64 {
    let num = l as i64 - m_c as i64;
    match d {
        1 => num.div_euclid((2 * m_v + m_c + m_e).max(1) as i64) - 2,
        _ => num.div_euclid((2 * m_v + m_e).max(1) as i64) - 1,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "value", rename_all = "kebab-case")]
pub enum Tameness {
    /// Smallest length exceeding every reduced word.
    Bounded(usize),
    /// Reduced words exist at the searched length.
    UnboundedWithin(usize),
}

impl Tameness {
    pub fn bound(&self) -> Option<usize> {
        match self {
            Tameness::Bounded(m) => Some(*m),
            Tameness::UnboundedWithin(_) => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ColorTameness {
    pub m_r: Tameness,
    /// Reduced words of the greatest length found, as color names.
    pub witnesses: Vec<Vec<String>>,
}

/// Colors joined by degree-1 operations collapse to one representative.
fn components(op: &Operad) -> Vec<Color> {
    let n = op.color_count();
    let mut rep: Vec<usize> = (0..n).collect();
    fn find(rep: &mut [usize], x: usize) -> usize {
        if rep[x] != x {
            let r = find(rep, rep[x]);
            rep[x] = r;
        }
        rep[x]
    }
    for c in 0..n {
        for o in op.degree_one_ops(Color(c as u16), 1) {
            let (a, b) = (find(&mut rep, o.inputs()[0].0 as usize), find(&mut rep, c));
            rep[a.max(b)] = a.min(b);
        }
    }
    (0..n).map(|c| Color(find(&mut rep, c) as u16)).collect()
}

/// Whether `pattern` occurs in `word`: as a contiguous block for planar
/// operads, as a sub-multiset otherwise.
fn contains(flavor: Flavor, word: &[Color], pattern: &[Color]) -> bool {
    if pattern.len() > word.len() {
        return false;
    }
    match flavor {
        Flavor::Planar => word.windows(pattern.len()).any(|w| w == pattern),
        _ => {
            let mut need: BTreeMap<Color, usize> = BTreeMap::new();
            for c in pattern {
                *need.entry(*c).or_insert(0) += 1;
            }
            need.iter().all(|(c, k)| word.iter().filter(|x| *x == c).count() >= *k)
        }
    }
}

/// Searches color words up to `length_bound` for reduced ones, i.e. words
/// containing no domain of a very elementary class (up to degree-1 color
/// changes).
pub fn color_tame_reduced_words(op: &Operad, ve_domains: &[ColorWord], length_bound: usize) -> ColorTameness {
    let comp = components(op);
    let patterns: Vec<Vec<Color>> =
        ve_domains.iter().map(|w| w.iter().map(|c| comp[c.0 as usize]).collect()).collect();
    let ncol = op.color_count();
    let mut layer: Vec<Vec<Color>> = vec![Vec::new()];
    let mut last_reduced: Vec<Vec<Color>> = vec![Vec::new()];
    for len in 1..=length_bound {
        // a reduced word has reduced prefixes, so extending them suffices
        let mut next = Vec::new();
        for w in &layer {
            for c in 0..ncol {
                let mut v = w.clone();
                v.push(Color(c as u16));
                let mapped: Vec<Color> = v.iter().map(|c| comp[c.0 as usize]).collect();
                if !patterns.iter().any(|p| contains(op.flavor(), &mapped, p)) {
                    next.push(v);
                }
            }
        }
        if next.is_empty() {
            return ColorTameness { m_r: Tameness::Bounded(len), witnesses: names(op, &last_reduced) };
        }
        last_reduced = next.clone();
        layer = next;
    }
    ColorTameness { m_r: Tameness::UnboundedWithin(length_bound), witnesses: names(op, &last_reduced) }
}

fn names(op: &Operad, words: &[Vec<Color>]) -> Vec<Vec<String>> {
    words.iter().map(|w| w.iter().map(|c| op.color_name(*c).to_string()).collect()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct FinitenessProfile {
    pub m_v: usize,
    pub m_e: usize,
    pub m_c: Tameness,
    pub finitely_generated: bool,
    pub finite_type: bool,
    pub saturated: bool,
    pub reduced_witnesses: Vec<Vec<String>>,
}

impl FinitenessProfile {
    pub fn nu(&self, d: u8, l: usize) -> Option<i64> {
        self.m_c.bound().map(|m_c| nu(d, self.m_v, m_c, l))
    }

    pub fn mu(&self, d: u8, l: usize) -> Option<i64> {
        self.m_c.bound().map(|m_c| mu(d, self.m_v, m_c, self.m_e, l))
    }

    /// `key = value` lines.
    pub fn to_text(&self) -> String {
        let m_c = match &self.m_c {
            Tameness::Bounded(m) => m.to_string(),
            Tameness::UnboundedWithin(b) => format!("unbounded-within-{b}"),
        };
        format!(
            "m_V = {}\nm_E = {}\nm_C = {}\nfinitely_generated = {}\nfinite_type = {}\nsaturated = {}\n",
            self.m_v, self.m_e, m_c, self.finitely_generated, self.finite_type, self.saturated
        )
    }
}

pub fn finiteness_profile(
    op: &Operad,
    cp: &ClassPoset,
    cl: &Classification,
    length_bound: usize,
) -> FinitenessProfile {
    let domains: Vec<ColorWord> =
        cl.very_elementary.iter().map(|&i| cp.classes[i].representative.inputs()).collect();
    let tame = color_tame_reduced_words(op, &domains, length_bound);
    FinitenessProfile {
        m_v: cl.m_v(cp),
        m_e: cl.m_e(cp),
        m_c: tame.m_r,
        finitely_generated: !cl.very_elementary.is_empty(),
        finite_type: cl.saturated,
        saturated: cl.saturated,
        reduced_witnesses: tame.witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::builtins;

    #[test]
    fn formulas_at_small_lengths() {
        assert_eq!(nu(1, 2, 2, 10), 1);
        assert_eq!(nu(3, 2, 2, 8), 1);
        assert_eq!(nu(3, 2, 2, 7), 0);
        assert_eq!(nu(1, 2, 2, 2), -1);
        assert_eq!(mu(2, 2, 2, 2, 14), 1);
        assert_eq!(mu(1, 2, 2, 2, 14), -1);
    }

    #[test]
    fn monochromatic_words_reduce_at_two() {
        let op = builtins::thompson_f();
        let c = op.color("c").unwrap();
        let t = color_tame_reduced_words(&op, &[ColorWord::uniform(c, 2)], 8);
        assert_eq!(t.m_r, Tameness::Bounded(2));
        assert_eq!(t.witnesses, vec![vec!["c".to_string()]]);
    }

    #[test]
    fn squares_and_triangles_need_five() {
        let op = builtins::squares_triangles();
        let doms = [op.word(&["S", "S", "S", "S"]).unwrap(), op.word(&["T", "T", "T", "T"]).unwrap(), op.word(&["T", "T"]).unwrap()];
        let t = color_tame_reduced_words(&op, &doms, 10);
        assert_eq!(t.m_r, Tameness::Bounded(5));
        assert!(t.witnesses.iter().all(|w| w.len() == 4));
        let sss_t: Vec<String> = ["S", "S", "S", "T"].iter().map(|s| s.to_string()).collect();
        assert!(t.witnesses.contains(&sss_t));
    }

    #[test]
    fn an_unused_color_is_never_tame() {
        let op = builtins::squares_triangles();
        let t = color_tame_reduced_words(&op, &[op.word(&["S", "S", "S", "S"]).unwrap()], 6);
        assert_eq!(t.m_r, Tameness::UnboundedWithin(6));
    }
}
