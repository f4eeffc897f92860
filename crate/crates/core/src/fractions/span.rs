//! Spans `X ← A → Y` representing elements of the fundamental groupoid.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::fill::{equalize, square_fill};
use crate::arrows::OperadArrow;
use crate::braid::{ColoredBraid, Permutation, Strands};
use crate::color::{Color, ColorWord, Flavor};
use crate::error::{Error, Result};
use crate::operad::affine::{AffineMap, AffineOp};
use crate::operad::tree::{Tree, TreeOp};
use crate::operad::{Label, Operad, Operation};

/// `den⁻¹` followed by `num`: both legs start at the same apex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Span {
    den: OperadArrow,
    num: OperadArrow,
}

/// Outcome of comparing two spans. A failed filling is reported as such and
/// never taken for inequality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "kebab-case")]
pub enum SpanEquality {
    Equal,
    Different,
    Inconclusive(String),
}

impl SpanEquality {
    pub fn is_equal(&self) -> bool {
        matches!(self, SpanEquality::Equal)
    }
}

impl fmt::Display for SpanEquality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpanEquality::Equal => f.write_str("equal"),
            SpanEquality::Different => f.write_str("different"),
            SpanEquality::Inconclusive(r) => write!(f, "inconclusive ({r})"),
        }
    }
}

impl Span {
    pub fn new(den: OperadArrow, num: OperadArrow) -> Result<Self> {
        if den.domain() != num.domain() {
            return Err(Error::mismatch("span legs start at different objects"));
        }
        Ok(Self { den, num })
    }

    pub fn identity(op: &Operad, x: &ColorWord) -> Result<Self> {
        let id = OperadArrow::identity(op, x)?;
        Ok(Self { den: id.clone(), num: id })
    }

    /// The span `(id, f)` of an arrow.
    pub fn from_arrow(op: &Operad, f: OperadArrow) -> Result<Self> {
        Ok(Self { den: OperadArrow::identity(op, f.domain())?, num: f })
    }

    pub fn den(&self) -> &OperadArrow {
        &self.den
    }

    pub fn num(&self) -> &OperadArrow {
        &self.num
    }

    pub fn apex(&self) -> &ColorWord {
        self.den.domain()
    }

    pub fn source(&self) -> ColorWord {
        self.den.codomain()
    }

    pub fn target(&self) -> ColorWord {
        self.num.codomain()
    }

    pub fn invert(&self) -> Span {
        Span { den: self.num.clone(), num: self.den.clone() }
    }

    /// `self` followed by `other`, by filling the middle cospan. The result is reduced.
    pub fn compose(&self, op: &Operad, other: &Span) -> Result<Span> {
        let raw = self.compose_raw(op, other)?;
        reduce_span(op, &raw)
    }

    /// Composition without reduction.
    pub fn compose_raw(&self, op: &Operad, other: &Span) -> Result<Span> {
        if self.target() != other.source() {
            return Err(Error::mismatch("spans are not composable"));
        }
        let (a, b) = square_fill(op, &self.num, &other.den)?;
        Span::new(a.compose(op, &self.den)?, b.compose(op, &other.num)?)
    }

    pub fn is_identity_span(&self) -> bool {
        self.den == self.num
    }

    pub fn show(&self, op: &Operad) -> String {
        format!("span\nden\n{}num\n{}", self.den.show(op), self.num.show(op))
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]⁻¹[{}]", self.den, self.num)
    }
}

/// Whether two spans with the same ends are homotopic: fill the
/// denominators, then compare (or equalize) the transported numerators.
pub fn span_equal(op: &Operad, s: &Span, t: &Span) -> Result<SpanEquality> {
    if s.source() != t.source() || s.target() != t.target() {
        return Err(Error::mismatch("spans with different ends"));
    }
    if s == t {
        return Ok(SpanEquality::Equal);
    }
    let (a, b) = match square_fill(op, &s.den, &t.den) {
        Ok(x) => x,
        Err(Error::NoFill(m)) | Err(Error::Resource(m)) => return Ok(SpanEquality::Inconclusive(m)),
        Err(e) => return Err(e),
    };
    let l = a.compose(op, &s.num)?;
    let r = b.compose(op, &t.num)?;
    if l == r {
        return Ok(SpanEquality::Equal);
    }
    Ok(match equalize(op, &l, &r)? {
        Some(_) => SpanEquality::Equal,
        None => SpanEquality::Different,
    })
}

/// Removes dipoles until none is left. Every removal is checked with
/// [`span_equal`], so the result always represents the same element.
pub fn reduce_span(op: &Operad, s: &Span) -> Result<Span> {
    let mut cur = s.clone();
    loop {
        if cur.den == cur.num {
            if cur.den.is_identity(op) {
                return Ok(cur);
            }
            return Span::identity(op, &cur.source());
        }
        let mut candidates = if op.is_geometric() { affine_dipoles(op, &cur)? } else { tree_dipoles(op, &cur)? };
        // larger merges first: greedy small merges can strand pieces
        candidates.sort_by_key(|c| c.apex().len());
        let mut next = None;
        for c in candidates {
            if span_equal(op, &c, &cur)?.is_equal() {
                next = Some(c);
                break;
            }
        }
        match next {
            Some(c) => cur = c,
            None => return Ok(cur),
        }
    }
}

/// An arrow of tree operations split as braid, leaf labels and bare forest.
struct Forest {
    pi: Strands,
    dom: ColorWord,
    labels: Vec<Label>,
    trees: Vec<TreeOp>,
    offsets: Vec<usize>,
}

impl Forest {
    fn of(op: &Operad, f: &OperadArrow) -> Option<Forest> {
        let mut pi: Option<Strands> = None;
        let mut labels = Vec::new();
        let mut trees = Vec::new();
        let mut offsets = Vec::new();
        let mut at = 0;
        for o in f.ops() {
            let t = o.as_tree()?;
            pi = Some(match pi {
                None => t.prefix().clone(),
                Some(p) => p.tensor(t.prefix()),
            });
            labels.extend_from_slice(t.labels());
            offsets.push(at);
            at += t.degree();
            trees.push(t.bare(op));
        }
        let pi = f.tau().strands().then(&pi?);
        Some(Forest { pi, dom: f.domain().clone(), labels, trees, offsets })
    }

    /// Bottom vertices: (tree, path, first leaf, generator, label above).
    fn bottoms(&self) -> Vec<(usize, Vec<usize>, usize, u32, Label)> {
        fn walk(t: &Tree, path: &mut Vec<usize>, leaf: &mut usize, k: usize, out: &mut Vec<(usize, Vec<usize>, usize, u32, Label)>) {
            match t {
                Tree::Leaf => *leaf += 1,
                Tree::Node { gen, above, children } => {
                    if children.iter().all(|c| *c == Tree::Leaf) {
                        out.push((k, path.clone(), *leaf, *gen, *above));
                        *leaf += children.len();
                        return;
                    }
                    for (i, c) in children.iter().enumerate() {
                        path.push(i);
                        walk(c, path, leaf, k, out);
                        path.pop();
                    }
                }
            }
        }
        let mut out = Vec::new();
        for (k, t) in self.trees.iter().enumerate() {
            let mut leaf = self.offsets[k];
            walk(t.tree(), &mut Vec::new(), &mut leaf, k, &mut out);
        }
        out
    }

    /// The bottom vertex whose leaves are exactly `start..start+a`, if any.
    fn bottom_at(&self, start: usize, a: usize) -> Option<(usize, Vec<usize>, u32, Label)> {
        self.bottoms()
            .into_iter()
            .find(|(k, path, s, _, _)| *s == start && node_arity(self.trees[*k].tree(), path) == a)
            .map(|(k, path, _, g, l)| (k, path, g, l))
    }

    /// Replaces a bottom vertex by a leaf and merges the apex strands
    /// `merged` (the first one survives) into one strand of color `color`.
    fn prune(
        &self,
        op: &Operad,
        k: usize,
        path: &[usize],
        start: usize,
        merged: &[usize],
        color: Color,
        above: Label,
    ) -> Result<OperadArrow> {
        let a = merged.len();
        let keep: Vec<usize> = (0..self.dom.len()).filter(|i| !merged[1..].contains(i)).collect();
        let pi = self.pi.restrict(&keep);
        let dom: ColorWord = keep.iter().map(|&i| if i == merged[0] { color } else { self.dom[i] }).collect();
        let mut labels = self.labels.clone();
        labels.splice(start..start + a, [above]);
        let mut ops = Vec::with_capacity(self.trees.len());
        let mut at = 0;
        for (j, t) in self.trees.iter().enumerate() {
            let tree = if j == k { replace_leaf(t.tree(), path) } else { t.tree().clone() };
            let bare = super::fill::bare_op(op, tree, t.output());
            let n = bare.degree();
            let ls = labels[at..at + n].to_vec();
            at += n;
            let inputs: ColorWord = bare.inputs().iter().zip(&ls).map(|(&c, &l)| op.label_from(l, c)).collect();
            ops.push(Operation::Tree(TreeOp {
                output: bare.output(),
                inputs,
                prefix: op.strands_identity(n),
                labels: ls,
                tree: bare.tree().clone(),
            }));
        }
        OperadArrow::new(op, ColoredBraid::new(pi, dom)?, ops)
    }
}

fn node_arity(t: &Tree, path: &[usize]) -> usize {
    match (t, path.split_first()) {
        (Tree::Node { children, .. }, None) => children.len(),
        (Tree::Node { children, .. }, Some((&i, rest))) => node_arity(&children[i], rest),
        (Tree::Leaf, _) => 0,
    }
}

fn replace_leaf(t: &Tree, path: &[usize]) -> Tree {
    match (t, path.split_first()) {
        (_, None) => Tree::Leaf,
        (Tree::Node { gen, above, children }, Some((&i, rest))) => {
            let mut children = children.clone();
            children[i] = replace_leaf(&children[i], rest);
            Tree::Node { gen: *gen, above: *above, children }
        }
        (Tree::Leaf, Some(_)) => unreachable!("path leads through a leaf"),
    }
}

/// Candidate spans with one matched bottom vertex removed from both legs.
fn tree_dipoles(op: &Operad, s: &Span) -> Result<Vec<Span>> {
    let (Some(d), Some(n)) = (Forest::of(op, &s.den), Forest::of(op, &s.num)) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for (k, path, start, gen, above) in d.bottoms() {
        let a = node_arity(d.trees[k].tree(), &path);
        let strands: Vec<usize> = (0..a).map(|j| d.pi.source(start + j)).collect();
        let ends: Vec<usize> = strands.iter().map(|&s| n.pi.target(s)).collect();
        if ends.windows(2).any(|w| w[1] != w[0] + 1) {
            continue;
        }
        let Some((kn, pn, gn, an)) = n.bottom_at(ends[0], a) else {
            continue;
        };
        if gn != gen || an != above || d.labels[start..start + a] != n.labels[ends[0]..ends[0] + a] {
            continue;
        }
        let color = op.generator(gen).output;
        let den = d.prune(op, k, &path, start, &strands, color, above);
        let num = n.prune(op, kn, &pn, ends[0], &strands, color, above);
        if let (Ok(den), Ok(num)) = (den, num) {
            out.push(Span::new(den, num)?);
        }
    }
    Ok(out)
}

/// Where each apex strand of an arrow of affine operations ends up:
/// (operation, piece index, color, map).
fn affine_leaves(f: &OperadArrow) -> Option<Vec<(usize, usize, Color, AffineMap)>> {
    let mut flat = Vec::new();
    for (k, o) in f.ops().iter().enumerate() {
        let a = o.as_affine()?;
        for (j, (c, m)) in a.pieces().iter().enumerate() {
            flat.push((k, j, *c, m.clone()));
        }
    }
    let p = f.tau().permutation();
    Some((0..flat.len()).map(|i| flat[p.target(i)].clone()).collect())
}

fn symmetry_between(op: &Operad, c: Color, outer: &AffineMap, piece: &AffineMap) -> Result<bool> {
    let x = outer.inverse()?.after(piece);
    Ok(op.symmetries(c).contains(&x))
}

/// Rebuilds an arrow of affine operations after merging apex strands.
fn rebuild_affine(
    op: &Operad,
    f: &OperadArrow,
    leaves: &[(usize, usize, Color, AffineMap)],
    merged: &[usize],
    color: Color,
    map: &AffineMap,
) -> Result<OperadArrow> {
    let first = merged[0];
    let k0 = leaves[first].0;
    let apex: Vec<usize> = (0..leaves.len()).filter(|i| !merged[1..].contains(i)).collect();
    // (operation, piece index, apex position) for each surviving strand
    let mut slots: Vec<(usize, usize, usize)> = apex
        .iter()
        .enumerate()
        .map(|(pos, &i)| {
            let (k, j, _, _) = &leaves[i];
            let j = if i == first { merged.iter().map(|&m| leaves[m].1).min().unwrap() } else { *j };
            (*k, j, pos)
        })
        .collect();
    slots.sort();
    let mut pieces: Vec<Vec<(Color, AffineMap)>> = vec![Vec::new(); f.ops().len()];
    let mut images = Vec::with_capacity(slots.len());
    for &(k, _, pos) in &slots {
        let i = apex[pos];
        let piece = if i == first { (color, map.clone()) } else { (leaves[i].2, leaves[i].3.clone()) };
        pieces[k].push(piece);
        images.push(pos);
    }
    debug_assert!(leaves[first].0 == k0);
    let ops: Vec<Operation> = pieces
        .into_iter()
        .zip(f.ops())
        .map(|(ps, o)| Operation::Affine(AffineOp::new(o.output(), ps)))
        .collect();
    let perm = Permutation::from_images(images)?;
    if op.flavor() == Flavor::Planar && !perm.is_identity() {
        return Err(Error::invalid("merge would reorder a planar arrow"));
    }
    let dom: ColorWord = apex.iter().map(|&i| if i == first { color } else { leaves[i].2 }).collect();
    OperadArrow::new(op, ColoredBraid::new(Strands::from_perm(perm), dom)?, ops)
}

/// Candidate spans where a set of apex strands forming one generator
/// (up to symmetries of the pieces) in both legs is merged.
fn affine_dipoles(op: &Operad, s: &Span) -> Result<Vec<Span>> {
    let (Some(dl), Some(nl)) = (affine_leaves(&s.den), affine_leaves(&s.num)) else {
        return Ok(Vec::new());
    };
    let mut groups: BTreeMap<(usize, usize, AffineMap), Vec<usize>> = BTreeMap::new();
    for i in 0..dl.len() {
        let l = nl[i].3.after(&dl[i].3.inverse()?);
        groups.entry((dl[i].0, nl[i].0, l)).or_default().push(i);
    }
    let mut out = Vec::new();
    for ((_, _, l), strands) in &groups {
        for g in 0..op.generators().len() as u32 {
            let gen = op.generator_affine(g);
            let a = gen.degree();
            if strands.len() < a {
                continue;
            }
            for &s0 in strands {
                for (j, (gc, gm)) in gen.pieces().iter().enumerate() {
                    if *gc != dl[s0].2 {
                        continue;
                    }
                    for sym in op.symmetries(*gc) {
                        let m = dl[s0].3.after(&sym.inverse()?).after(&gm.inverse()?);
                        let mut chosen = vec![usize::MAX; a];
                        chosen[j] = s0;
                        let mut ok = true;
                        for (jj, (cc, mm)) in gen.pieces().iter().enumerate() {
                            if jj == j {
                                continue;
                            }
                            let outer = m.after(mm);
                            let mut found = None;
                            for &t in strands {
                                if !chosen.contains(&t) && dl[t].2 == *cc && symmetry_between(op, *cc, &outer, &dl[t].3)? {
                                    found = Some(t);
                                    break;
                                }
                            }
                            match found {
                                Some(t) => chosen[jj] = t,
                                None => {
                                    ok = false;
                                    break;
                                }
                            }
                        }
                        if !ok {
                            continue;
                        }
                        let mut merged = chosen.clone();
                        merged.sort_unstable();
                        let den = rebuild_affine(op, &s.den, &dl, &merged, gen.output(), &m);
                        let num = rebuild_affine(op, &s.num, &nl, &merged, gen.output(), &l.after(&m));
                        if let (Ok(den), Ok(num)) = (den, num) {
                            out.push(Span::new(den, num)?);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::builtins;

    fn arrow(op: &Operad, text: &str) -> OperadArrow {
        OperadArrow::from_op(op, op.parse_op(text).unwrap())
    }

    #[test]
    fn inverse_law_and_reduction() {
        let op = builtins::thompson_f();
        let x0 = Span::new(arrow(&op, "caret(caret(_,_),_)"), arrow(&op, "caret(_,caret(_,_))")).unwrap();
        let prod = x0.compose(&op, &x0.invert()).unwrap();
        assert!(prod.is_identity_span());
        assert_eq!(prod.apex().len(), 1);
    }

    #[test]
    fn expanded_span_reduces_back() {
        let op = builtins::thompson_f();
        let x0 = Span::new(arrow(&op, "caret(caret(_,_),_)"), arrow(&op, "caret(_,caret(_,_))")).unwrap();
        let wide = Span::new(
            arrow(&op, "caret(caret(_,_),caret(_,_))"),
            arrow(&op, "caret(_,caret(_,caret(_,_)))"),
        )
        .unwrap();
        assert!(span_equal(&op, &x0, &wide).unwrap().is_equal());
        assert_eq!(reduce_span(&op, &wide).unwrap(), x0);
    }

    #[test]
    fn cube_dipoles_merge() {
        let op = builtins::builtin("cube1").unwrap();
        let c2 = op.generator_op(op.generator_id("C2").unwrap());
        let c3 = op.generator_op(op.generator_id("C3").unwrap());
        let id = op.identity_op(c2.output()).unwrap();
        let left = op.compose_owned(&[c2.clone(), id.clone()], &c2).unwrap();
        let right = op.compose_owned(&[id.clone(), c2.clone()], &c2).unwrap();
        let x = Span::new(OperadArrow::from_op(&op, left.clone()), OperadArrow::from_op(&op, right.clone())).unwrap();
        let grow = |t: &Operation| op.compose_owned(&[id.clone(), id.clone(), c3.clone()], t).unwrap();
        let wide = Span::new(OperadArrow::from_op(&op, grow(&left)), OperadArrow::from_op(&op, grow(&right))).unwrap();
        assert!(span_equal(&op, &x, &wide).unwrap().is_equal());
        assert_eq!(reduce_span(&op, &wide).unwrap(), x);
        assert!(!span_equal(&op, &x, &Span::identity(&op, &x.source()).unwrap()).unwrap().is_equal());
    }
}
