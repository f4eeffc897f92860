//! Arc complexes `AC_1` and `AC_3` of archetypal arc systems on a colored
//! node line.
//!
//! Nodes are numbered from 0 internally; tables print them from 1.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::classes::{nu, ClassPoset, Classification, Tameness};
use crate::color::{Color, ColorWord};
use crate::error::{Error, Result};
use crate::homology::{flag_expand, maximal_cliques, SimplicialComplex};
use crate::operad::Operad;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Archetype {
    pub id: String,
    pub word: ColorWord,
}

/// A finite set of archetypes over named colors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArchetypeSet {
    colors: Vec<String>,
    entries: Vec<Archetype>,
}

impl ArchetypeSet {
    pub fn new(colors: Vec<String>, entries: Vec<Archetype>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for c in &colors {
            if !seen.insert(c.as_str()) {
                return Err(Error::invalid(format!("color `{c}` declared twice")));
            }
        }
        let mut ids = BTreeSet::new();
        for a in &entries {
            if !ids.insert(a.id.as_str()) {
                return Err(Error::invalid(format!("archetype `{}` declared twice", a.id)));
            }
            if a.word.len() < 2 {
                return Err(Error::invalid(format!("archetype `{}` has length {} < 2", a.id, a.word.len())));
            }
            if let Some(c) = a.word.iter().find(|c| c.0 as usize >= colors.len()) {
                return Err(Error::invalid(format!("archetype `{}` uses unknown color {c}", a.id)));
            }
        }
        Ok(Self { colors, entries })
    }

    /// Parses `id:word` entries such as `b:cc` or `q:S,S,S,S`. Words split on
    /// commas when present and into characters otherwise.
    pub fn parse(colors: &[&str], entries: &[&str]) -> Result<Self> {
        let colors: Vec<String> = colors.iter().map(|c| c.to_string()).collect();
        let mut out = Vec::new();
        for e in entries {
            let (id, word) =
                e.split_once(':').ok_or_else(|| Error::Parse(format!("archetype `{e}` is not of the form id:word")))?;
            out.push(Archetype { id: id.trim().to_string(), word: word_in(&colors, word)? });
        }
        Self::new(colors, out)
    }

    /// One color `c` and the binary archetype `b:cc`.
    pub fn monochromatic_binary() -> Self {
        Self::parse(&["c"], &["b:cc"]).expect("valid")
    }

    /// Archetypes from the very elementary classes of an operad: one per
    /// class, named after it, with its domain as color word.
    pub fn from_classes(op: &Operad, cp: &ClassPoset, cl: &Classification) -> Result<Self> {
        let colors = (0..op.color_count()).map(|c| op.color_name(Color(c as u16)).to_string()).collect();
        let entries = cl
            .very_elementary
            .iter()
            .zip(&cl.ve_names)
            .map(|(&i, name)| Archetype { id: name.clone(), word: cp.classes[i].representative.inputs() })
            .collect();
        Self::new(colors, entries)
    }

    /// Parses a color word over this set's colors, with the same splitting
    /// rule as [`ArchetypeSet::parse`].
    pub fn word(&self, s: &str) -> Result<ColorWord> {
        word_in(&self.colors, s)
    }

    pub fn uniform_word(&self, color: &str, n: usize) -> Result<ColorWord> {
        let c = self.color(color)?;
        Ok(ColorWord::uniform(c, n))
    }

    pub fn color(&self, name: &str) -> Result<Color> {
        self.colors
            .iter()
            .position(|c| c == name)
            .map(|i| Color(i as u16))
            .ok_or_else(|| Error::invalid(format!("unknown color `{name}`")))
    }

    pub fn colors(&self) -> &[String] {
        &self.colors
    }

    pub fn entries(&self) -> &[Archetype] {
        &self.entries
    }

    /// Maximal archetype length, 0 for an empty set.
    pub fn m_a(&self) -> usize {
        self.entries.iter().map(|a| a.word.len()).max().unwrap_or(0)
    }

    pub fn show_word(&self, w: &ColorWord) -> String {
        let names: Vec<&str> = w.iter().map(|c| self.colors[c.0 as usize].as_str()).collect();
        if self.colors.iter().all(|c| c.chars().count() == 1) {
            names.concat()
        } else {
            names.join(",")
        }
    }
}

fn word_in(colors: &[String], s: &str) -> Result<ColorWord> {
    let s = s.trim();
    let tokens: Vec<String> = if s.contains(',') {
        s.split(',').map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect()
    } else if s.contains(char::is_whitespace) {
        s.split_whitespace().map(str::to_string).collect()
    } else {
        s.chars().map(|c| c.to_string()).collect()
    };
    tokens
        .iter()
        .map(|t| {
            colors
                .iter()
                .position(|c| c == t)
                .map(|i| Color(i as u16))
                .ok_or_else(|| Error::Parse(format!("unknown color `{t}`")))
        })
        .collect()
}

/// The colored points `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeLine {
    pub colors: ColorWord,
}

impl NodeLine {
    pub fn new(colors: ColorWord) -> Self {
        Self { colors }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }
}

/// An admissible arc labelled by the archetype with index `label`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ArchetypalArc {
    /// Ascending node indices.
    pub nodes: Vec<usize>,
    pub label: usize,
}

impl ArchetypalArc {
    pub fn meets(&self, node: usize) -> bool {
        self.nodes.binary_search(&node).is_ok()
    }

    pub fn disjoint(&self, other: &ArchetypalArc) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.nodes.len() && j < other.nodes.len() {
            match self.nodes[i].cmp(&other.nodes[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }
}

/// Vertices and compatibility graph of `AC_d(C,A;X)`; simplices are the
/// cliques.
#[derive(Clone, Debug, Serialize)]
pub struct ArcComplexData {
    pub d: u8,
    pub line: NodeLine,
    pub vertices: Vec<ArchetypalArc>,
    /// Pairs `i < j` of disjoint arcs.
    pub edges: Vec<(usize, usize)>,
}

impl ArcComplexData {
    fn from_vertices(d: u8, line: NodeLine, mut vertices: Vec<ArchetypalArc>) -> Self {
        vertices.sort();
        let mut edges = Vec::new();
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if vertices[i].disjoint(&vertices[j]) {
                    edges.push((i, j));
                }
            }
        }
        Self { d, line, vertices, edges }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Largest possible simplex dimension: at most `l / 2` disjoint arcs.
    pub fn dimension_bound(&self) -> usize {
        (self.line.len() / 2).saturating_sub(1)
    }

    /// The flag complex up to `max_dim`, with at most `cap` simplices.
    pub fn complex(&self, max_dim: usize, cap: usize) -> Result<SimplicialComplex> {
        flag_expand(self.vertices.len(), &self.edges, max_dim, cap)
    }

    pub fn facets(&self) -> Vec<Vec<usize>> {
        maximal_cliques(self.vertices.len(), &self.edges)
    }

    /// One facet per line, as space-separated vertex indices.
    pub fn facet_file(&self) -> String {
        let mut out = String::new();
        for f in self.facets() {
            let s: Vec<String> = f.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", s.join(" "));
        }
        out
    }

    /// `index nodes label` per line, nodes numbered from 1.
    pub fn vertex_table(&self, set: &ArchetypeSet) -> String {
        let mut out = String::new();
        for (i, v) in self.vertices.iter().enumerate() {
            let nodes: Vec<String> = v.nodes.iter().map(|n| (n + 1).to_string()).collect();
            let _ = writeln!(out, "{i} {} {}", nodes.join(","), set.entries[v.label].id);
        }
        out
    }
}

/// Arcs on a line: contiguous node blocks whose color word is an archetype.
pub fn build_ac1(set: &ArchetypeSet, x: &ColorWord) -> ArcComplexData {
    let w = x.as_slice();
    let mut vertices = Vec::new();
    for (label, a) in set.entries.iter().enumerate() {
        let k = a.word.len();
        for start in 0..w.len().saturating_sub(k - 1) {
            if w[start..start + k] == *a.word.as_slice() {
                vertices.push(ArchetypalArc { nodes: (start..start + k).collect(), label });
            }
        }
    }
    ArcComplexData::from_vertices(1, NodeLine::new(x.clone()), vertices)
}

/// Arcs in space: node subsets whose colors, read in ascending order, spell
/// an archetype.
pub fn build_ac3(set: &ArchetypeSet, x: &ColorWord) -> ArcComplexData {
    fn go(w: &[Color], pat: &[Color], from: usize, cur: &mut Vec<usize>, label: usize, out: &mut Vec<ArchetypalArc>) {
        if cur.len() == pat.len() {
            out.push(ArchetypalArc { nodes: cur.clone(), label });
            return;
        }
        let need = pat.len() - cur.len();
        for i in from..w.len() {
            if w.len() - i < need {
                break;
            }
            if w[i] == pat[cur.len()] {
                cur.push(i);
                go(w, pat, i + 1, cur, label, out);
                cur.pop();
            }
        }
    }
    let mut vertices = Vec::new();
    for (label, a) in set.entries.iter().enumerate() {
        go(x.as_slice(), a.word.as_slice(), 0, &mut Vec::new(), label, &mut vertices);
    }
    ArcComplexData::from_vertices(3, NodeLine::new(x.clone()), vertices)
}

pub fn build_ac(d: u8, set: &ArchetypeSet, x: &ColorWord) -> Result<ArcComplexData> {
    match d {
        1 => Ok(build_ac1(set, x)),
        3 => Ok(build_ac3(set, x)),
        2 => Err(Error::Unsupported("the complex AC_2 is not constructed; only its bound is available".into())),
        _ => Err(Error::invalid(format!("dimension {d} is not 1, 2 or 3"))),
    }
}

/// Whether some archetype admits an arc on `w` in dimension `d`.
fn admits_arc(d: u8, w: &[Color], pat: &[Color]) -> bool {
    if pat.len() > w.len() {
        return false;
    }
    match d {
        1 => w.windows(pat.len()).any(|b| b == pat),
        3 => {
            let mut it = w.iter();
            pat.iter().all(|p| it.any(|c| c == p))
        }
        // arcs in the plane may visit their nodes in any order
        _ => {
            let mut need = vec![0usize; w.iter().chain(pat).map(|c| c.0 as usize + 1).max().unwrap_or(0)];
            for c in pat {
                need[c.0 as usize] += 1;
            }
            for c in w {
                let n = &mut need[c.0 as usize];
                *n = n.saturating_sub(1);
            }
            need.iter().all(|&n| n == 0)
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ArchetypeMetrics {
    pub d: u8,
    pub m_a: usize,
    pub m_r: Tameness,
    pub tame: bool,
    /// Archetype lengths are bounded; always true for a finite set.
    pub finite_type: bool,
    /// Reduced words of the greatest length found.
    pub witnesses: Vec<String>,
}

impl ArchetypeMetrics {
    /// `ν_{κ_d}(l)` when the set is tame.
    pub fn nu(&self, l: usize) -> Option<i64> {
        self.m_r.bound().map(|m_r| nu_bound(self.d, self.m_a, m_r, l))
    }
}

/// `m_a` and `m_r`, the latter by extending reduced words up to
/// `length_bound`.
pub fn archetype_metrics(set: &ArchetypeSet, d: u8, length_bound: usize) -> ArchetypeMetrics {
    let ncol = set.colors.len();
    let mut layer: Vec<Vec<Color>> = vec![Vec::new()];
    let mut m_r = Tameness::UnboundedWithin(length_bound);
    for len in 1..=length_bound {
        let mut next = Vec::new();
        for w in &layer {
            for c in 0..ncol {
                let mut v = w.clone();
                v.push(Color(c as u16));
                // a reduced word has reduced prefixes; only arcs through the new node matter for d = 1
                if !set.entries.iter().any(|a| admits_arc(d, &v, a.word.as_slice())) {
                    next.push(v);
                }
            }
        }
        if next.is_empty() {
            m_r = Tameness::Bounded(len);
            break;
        }
        layer = next;
    }
    let witnesses = layer.iter().map(|w| set.show_word(&ColorWord::new(w.clone()))).collect();
    ArchetypeMetrics {
        d,
        m_a: set.m_a(),
        tame: m_r.bound().is_some(),
        m_r,
        finite_type: true,
        witnesses,
    }
}

/// `ν_{κ_d}(l)` for the arc complex of dimension `d`.
pub fn nu_bound(d: u8, m_a: usize, m_r: usize, l: usize) -> i64 {
    nu(d, m_a, m_r, l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::reduced_homology;

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn three_nodes_on_a_line() {
        let a = ArchetypeSet::monochromatic_binary();
        let k = build_ac1(&a, &a.uniform_word("c", 3).unwrap());
        assert_eq!(k.vertices.len(), 2);
        assert!(k.edges.is_empty());
        assert!(build_ac1(&a, &ColorWord::empty()).is_empty());
    }

    #[test]
    fn six_nodes_on_a_line_form_a_connected_path_matching_complex() {
        let a = ArchetypeSet::monochromatic_binary();
        let k = build_ac1(&a, &a.uniform_word("c", 6).unwrap());
        assert_eq!(k.vertices.len(), 5);
        // blocks i and j are disjoint iff |i - j| >= 2
        let expect: Vec<(usize, usize)> =
            (0..5).flat_map(|i| (i + 2..5).map(move |j| (i, j))).collect();
        assert_eq!(k.edges, expect);
        let h = reduced_homology(&k.complex(3, 1 << 20).unwrap(), 1).unwrap();
        assert!(h.trivial_through(0));
    }

    #[test]
    fn monochromatic_ac3_is_the_matching_complex() {
        let a = ArchetypeSet::monochromatic_binary();
        for l in 0..=8 {
            let k = build_ac3(&a, &a.uniform_word("c", l).unwrap());
            assert_eq!(k.vertices.len(), binom(l, 2));
            assert_eq!(k.edges.len(), 3 * binom(l, 4));
        }
        let k = build_ac3(&a, &a.uniform_word("c", 4).unwrap());
        let cx = k.complex(3, 1 << 20).unwrap();
        assert_eq!(cx.count(2), 0);
        assert_eq!(k.facets().len(), 3);
    }

    #[test]
    fn ascending_match_only() {
        let a = ArchetypeSet::parse(&["a", "b"], &["x:ab"]).unwrap();
        assert!(build_ac3(&a, &a.word("ba").unwrap()).is_empty());
        assert_eq!(build_ac3(&a, &a.word("aab").unwrap()).vertices.len(), 2);
    }

    #[test]
    fn vertex_colors_spell_their_archetype() {
        let a = ArchetypeSet::parse(&["S", "T"], &["q:SSSS", "t:TT", "u:TTTT", "m:ST"]).unwrap();
        let x = a.word("STTSSTST").unwrap();
        for k in [build_ac1(&a, &x), build_ac3(&a, &x)] {
            for v in &k.vertices {
                let w: ColorWord = v.nodes.iter().map(|&n| x[n]).collect();
                assert_eq!(w, a.entries()[v.label].word);
            }
        }
    }

    #[test]
    fn metrics() {
        let a = ArchetypeSet::monochromatic_binary();
        for d in [1, 2, 3] {
            let m = archetype_metrics(&a, d, 10);
            assert_eq!((m.m_a, m.m_r.clone()), (2, Tameness::Bounded(2)));
        }
        let st = ArchetypeSet::parse(&["S", "T"], &["q:SSSS", "t:TT", "u:TTTT"]).unwrap();
        for d in [2, 3] {
            let m = archetype_metrics(&st, d, 10);
            assert_eq!(m.m_r, Tameness::Bounded(5));
            assert!(m.witnesses.iter().all(|w| w.len() == 4));
            assert!(m.witnesses.contains(&"SSST".to_string()));
        }
        // on a line, alternating words never contain a block
        assert!(!archetype_metrics(&st, 1, 10).tame);
        let missing = ArchetypeSet::parse(&["S", "T"], &["q:SSSS"]).unwrap();
        assert!(!archetype_metrics(&missing, 3, 8).tame);
    }

    #[test]
    fn bound_examples() {
        assert_eq!(nu_bound(1, 2, 2, 10), 1);
        assert_eq!(nu_bound(3, 2, 2, 7), 0);
        assert_eq!(nu_bound(3, 2, 2, 2), -1);
    }

    #[test]
    fn tables() {
        let a = ArchetypeSet::monochromatic_binary();
        let k = build_ac3(&a, &a.uniform_word("c", 4).unwrap());
        let t = k.vertex_table(&a);
        assert_eq!(t.lines().next(), Some("0 1,2 b"));
        assert_eq!(k.facet_file().lines().count(), 3);
        assert!(k.facet_file().lines().all(|l| l.split(' ').count() == 2));
    }

    #[test]
    fn rejects_bad_sets() {
        assert!(ArchetypeSet::parse(&["c"], &["b:c"]).is_err());
        assert!(ArchetypeSet::parse(&["c"], &["b:cc", "b:ccc"]).is_err());
        assert!(ArchetypeSet::parse(&["c"], &["b:cd"]).is_err());
        assert!(build_ac(2, &ArchetypeSet::monochromatic_binary(), &ColorWord::empty()).is_err());
    }
}
