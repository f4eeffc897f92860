//! Square filling and equalization in the category of operators.

use crate::arrows::OperadArrow;
use crate::braid::{ColoredBraid, Permutation, Strands};
use crate::color::{ColorWord, Flavor};
use crate::error::{Error, Result};
use crate::operad::affine::{AffineMap, AffineOp, Region};
use crate::operad::tree::{Tree, TreeOp};
use crate::operad::{Label, Operad, Operation};

/// Bounds for the cofinal chains used on geometric operads.
#[derive(Clone, Copy, Debug)]
pub struct FillOptions {
    /// Largest number of subdivision rounds tried.
    pub max_rounds: usize,
    /// Largest number of pieces in a chain element.
    pub max_pieces: usize,
}

impl Default for FillOptions {
    fn default() -> Self {
        Self { max_rounds: 8, max_pieces: 20_000 }
    }
}

/// Arrows `(a, b)` with `a·f = b·g` for a cospan `f`, `g` with common codomain.
pub fn square_fill(op: &Operad, f: &OperadArrow, g: &OperadArrow) -> Result<(OperadArrow, OperadArrow)> {
    square_fill_with(op, f, g, FillOptions::default())
}

pub fn square_fill_with(
    op: &Operad,
    f: &OperadArrow,
    g: &OperadArrow,
    opts: FillOptions,
) -> Result<(OperadArrow, OperadArrow)> {
    if f.codomain() != g.codomain() {
        return Err(Error::mismatch("square filling needs a common codomain"));
    }
    if f == g {
        let id = OperadArrow::identity(op, f.domain())?;
        return Ok((id.clone(), id));
    }
    let mut ps = Vec::new();
    let mut qs = Vec::new();
    for (x, y) in f.ops().iter().zip(g.ops()) {
        let (p, q) = fill_ops(op, x, y, opts)?;
        ps.push(p);
        qs.push(q);
    }
    let p = tensor_all(op, &ps)?;
    let q = tensor_all(op, &qs)?;
    let a = p.compose(op, &OperadArrow::from_braid(op, f.tau().inverse())?)?;
    let b = q.compose(op, &OperadArrow::from_braid(op, g.tau().inverse())?)?;
    let left = a.compose(op, f)?;
    let right = b.compose(op, g)?;
    if left != right {
        return Err(Error::NoFill(format!("filling does not commute: {left} vs {right}")));
    }
    Ok((a, b))
}

fn tensor_all(op: &Operad, arrows: &[OperadArrow]) -> Result<OperadArrow> {
    let mut it = arrows.iter();
    let first = match it.next() {
        Some(a) => a.clone(),
        None => return OperadArrow::identity(op, &ColorWord::empty()),
    };
    Ok(it.fold(first, |acc, a| acc.tensor(a)))
}

/// Fill of two single operations with the same output color.
pub fn fill_ops(op: &Operad, f: &Operation, g: &Operation, opts: FillOptions) -> Result<(OperadArrow, OperadArrow)> {
    if f.output() != g.output() {
        return Err(Error::mismatch("operations with different outputs"));
    }
    if f == g {
        let id = OperadArrow::identity(op, &f.inputs())?;
        return Ok((id.clone(), id));
    }
    match (f, g) {
        (Operation::Tree(x), Operation::Tree(y)) => fill_trees(op, x, y),
        (Operation::Affine(x), Operation::Affine(y)) => fill_affine(op, x, y, opts),
        _ => Err(Error::mismatch("mixed operation kinds")),
    }
}

/// Planar union of two trees: every leaf of one absorbs the subtree of the other.
fn union(a: &Tree, b: &Tree) -> Option<Tree> {
    match (a, b) {
        (Tree::Leaf, t) | (t, Tree::Leaf) => Some(t.clone()),
        (Tree::Node { gen: g1, above: a1, children: c1 }, Tree::Node { gen: g2, above: a2, children: c2 }) => {
            if g1 != g2 || a1 != a2 {
                return None;
            }
            let children = c1.iter().zip(c2).map(|(x, y)| union(x, y)).collect::<Option<Vec<_>>>()?;
            Some(Tree::Node { gen: *g1, above: *a1, children })
        }
    }
}

/// Subtrees of `big` sitting at the leaves of `small`, in leaf order.
fn subtrees_at_leaves(small: &Tree, big: &Tree, out: &mut Vec<Tree>) {
    match (small, big) {
        (Tree::Leaf, t) => out.push(t.clone()),
        (Tree::Node { children: c1, .. }, Tree::Node { children: c2, .. }) => {
            for (x, y) in c1.iter().zip(c2) {
                subtrees_at_leaves(x, y, out);
            }
        }
        _ => unreachable!("small is an upper part of big"),
    }
}

/// A bare tree operation with output `color`.
pub(crate) fn bare_op(op: &Operad, tree: Tree, color: crate::Color) -> TreeOp {
    match tree {
        Tree::Leaf => TreeOp::identity(op, color),
        t => {
            let mut v = Vec::new();
            t.leaf_colors(op, &mut v);
            let n = v.len();
            TreeOp {
                output: color,
                inputs: ColorWord::new(v),
                prefix: op.strands_identity(n),
                labels: vec![Label::Id; n],
                tree: t,
            }
        }
    }
}

/// The transformation `prefix` then leaf labels of a tree operation, as an arrow
/// into the leaves of its bare tree.
pub(crate) fn transformation_part(op: &Operad, t: &TreeOp) -> Result<OperadArrow> {
    let bare = t.bare(op);
    let labels = bare
        .inputs()
        .iter()
        .zip(t.labels())
        .map(|(&c, &l)| op.label_op(c, l))
        .collect::<Result<Vec<_>>>()?;
    let beta = ColoredBraid::new(t.prefix().clone(), t.inputs().clone())?;
    OperadArrow::new(op, beta, labels)
}

fn fill_trees(op: &Operad, f: &TreeOp, g: &TreeOp) -> Result<(OperadArrow, OperadArrow)> {
    let u = union(f.tree(), g.tree()).ok_or_else(|| {
        Error::NoFill(format!("trees {} and {} disagree on a shared vertex", op.show(&Operation::Tree(f.clone())), op.show(&Operation::Tree(g.clone()))))
    })?;
    let side = |t: &TreeOp| -> Result<OperadArrow> {
        let bare = t.bare(op);
        let mut subs = Vec::new();
        subtrees_at_leaves(bare.tree(), &u, &mut subs);
        let rs: Vec<Operation> = subs
            .into_iter()
            .zip(bare.inputs().iter())
            .map(|(s, &c)| Operation::Tree(bare_op(op, s, c)))
            .collect();
        let r = OperadArrow::from_ops(op, rs);
        r.compose(op, &transformation_part(op, t)?.inverse(op)?)
    };
    Ok((side(f)?, side(g)?))
}

fn shapes(op: &Operad) -> Result<&[crate::operad::affine::Shape]> {
    op.geometry()
        .map(|g| g.shapes.as_slice())
        .ok_or_else(|| Error::Unsupported("affine operations need a geometric operad".into()))
}

/// The `r`-th element of the cofinal chain of color `c`: each round applies
/// every generator, in declared order, to every piece of its output color.
pub fn chain(op: &Operad, c: crate::Color, rounds: usize, max_pieces: usize) -> Result<AffineOp> {
    let d = op.geometry().map(|g| g.dimension).unwrap_or(1);
    let mut cur = AffineOp::identity(c, d);
    for _ in 0..rounds {
        for g in 0..op.generators().len() as u32 {
            let gen = op.generator_affine(g);
            let mut pieces = Vec::new();
            for (pc, m) in cur.pieces() {
                if *pc == gen.output() {
                    pieces.extend(gen.pieces().iter().map(|(gc, gm)| (*gc, m.after(gm))));
                } else {
                    pieces.push((*pc, m.clone()));
                }
            }
            if pieces.len() > max_pieces {
                return Err(Error::Resource(format!("cofinal chain exceeds {max_pieces} pieces")));
            }
            cur = AffineOp::new(c, pieces);
        }
    }
    let mut pieces = cur.pieces().to_vec();
    pieces.sort();
    Ok(AffineOp::new(c, pieces))
}

/// For each chain piece, the piece of `f` containing it, or `None` when the
/// chain does not refine `f`.
pub(crate) fn assign(regions: &[Region], chain: &[Region]) -> Option<Vec<usize>> {
    chain
        .iter()
        .map(|q| {
            let c = q.centroid();
            regions.iter().position(|r| r.contains(&c, true)).filter(|&i| regions[i].contains_region(q))
        })
        .collect()
}

/// `p` with `p·f` equal to the chain element `target`.
fn onto_chain(op: &Operad, f: &AffineOp, target: &AffineOp, owner: &[usize]) -> Result<OperadArrow> {
    let mut rs: Vec<Vec<(crate::Color, AffineMap)>> = vec![Vec::new(); f.degree()];
    let mut slot = Vec::with_capacity(owner.len());
    for ((qc, qm), &i) in target.pieces().iter().zip(owner) {
        slot.push((i, rs[i].len()));
        let inv = f.pieces()[i].1.inverse()?;
        rs[i].push((*qc, inv.after(qm)));
    }
    let mut offsets = vec![0; f.degree()];
    for i in 1..f.degree() {
        offsets[i] = offsets[i - 1] + rs[i - 1].len();
    }
    // chain piece k lands at position idx[k] of (R)*f
    let idx: Vec<usize> = slot.iter().map(|&(i, j)| offsets[i] + j).collect();
    let mut images = vec![0; idx.len()];
    for (k, &t) in idx.iter().enumerate() {
        images[t] = k;
    }
    let perm = Permutation::from_images(images)?;
    let strands = match op.flavor() {
        Flavor::Planar if !perm.is_identity() => {
            return Err(Error::NoFill("planar chain pieces out of order".into()));
        }
        Flavor::Braided => return Err(Error::Unsupported("braided geometric operads".into())),
        _ => Strands::from_perm(perm),
    };
    let ops: Vec<Operation> = rs
        .into_iter()
        .zip(f.pieces())
        .map(|(ps, (c, _))| Operation::Affine(AffineOp::new(*c, ps)))
        .collect();
    let beta = ColoredBraid::new(strands, target.inputs())?;
    OperadArrow::new(op, beta, ops)
}

fn fill_affine(op: &Operad, f: &AffineOp, g: &AffineOp, opts: FillOptions) -> Result<(OperadArrow, OperadArrow)> {
    let shapes = shapes(op)?;
    let rf = f.regions(shapes);
    let rg = g.regions(shapes);
    for r in 0..=opts.max_rounds {
        let target = match chain(op, f.output(), r, opts.max_pieces) {
            Ok(t) => t,
            Err(Error::Resource(_)) => break,
            Err(e) => return Err(e),
        };
        let rc = target.regions(shapes);
        let (Some(of), Some(og)) = (assign(&rf, &rc), assign(&rg, &rc)) else {
            continue;
        };
        return Ok((onto_chain(op, f, &target, &of)?, onto_chain(op, g, &target, &og)?));
    }
    Err(Error::NoFill(format!("no chain element within {} rounds refines both operations", opts.max_rounds)))
}

/// An arrow `ω` with `ω·f = ω·g`, found among the identity and single
/// generators on one input; `None` when none of these equalizes.
pub fn equalize(op: &Operad, f: &OperadArrow, g: &OperadArrow) -> Result<Option<OperadArrow>> {
    if f.domain() != g.domain() || f.codomain() != g.codomain() {
        return Err(Error::mismatch("equalization needs parallel arrows"));
    }
    if f == g {
        return Ok(Some(OperadArrow::identity(op, f.domain())?));
    }
    let dom = f.domain();
    for i in 0..dom.len() {
        for gen in 0..op.generators().len() as u32 {
            if op.generator(gen).output != dom[i] {
                continue;
            }
            let ops: Vec<Operation> = dom
                .iter()
                .enumerate()
                .map(|(k, &c)| if k == i { Ok(op.generator_op(gen)) } else { op.identity_op(c) })
                .collect::<Result<_>>()?;
            let w = OperadArrow::from_ops(op, ops);
            if w.compose(op, f)? == w.compose(op, g)? {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::builtins;

    fn arrow(op: &Operad, text: &str) -> OperadArrow {
        OperadArrow::from_op(op, op.parse_op(text).unwrap())
    }

    #[test]
    fn combs_meet_in_their_union() {
        let op = builtins::thompson_f();
        let f = arrow(&op, "caret(caret(_,_),_)");
        let g = arrow(&op, "caret(_,caret(_,_))");
        let (a, b) = square_fill(&op, &f, &g).unwrap();
        let top = a.compose(&op, &f).unwrap();
        assert_eq!(top, b.compose(&op, &g).unwrap());
        assert_eq!(top.ops()[0], op.parse_op("caret(caret(_,_),caret(_,_))").unwrap());
        assert_eq!(top.degree(), 4);
    }

    #[test]
    fn braided_prefixes_are_undone() {
        let op = builtins::ribbon_v();
        let f = arrow(&op, "[b3: 1 -2] caret(caret(_@t1,_),_)");
        let g = arrow(&op, "[b2: -1] caret(_,_@t-1)");
        let (a, b) = square_fill(&op, &f, &g).unwrap();
        assert_eq!(a.compose(&op, &f).unwrap(), b.compose(&op, &g).unwrap());
    }

    #[test]
    fn cube_cuts_meet_in_the_six_grid() {
        let op = builtins::builtin("cube1").unwrap();
        let c2 = OperadArrow::from_op(&op, op.generator_op(op.generator_id("C2").unwrap()));
        let c3 = OperadArrow::from_op(&op, op.generator_op(op.generator_id("C3").unwrap()));
        let (a, b) = square_fill(&op, &c2, &c3).unwrap();
        let top = a.compose(&op, &c2).unwrap();
        assert_eq!(top, b.compose(&op, &c3).unwrap());
        assert_eq!(top.degree(), 6);
    }

    #[test]
    fn squares_and_triangles_fill() {
        let op = builtins::squares_triangles();
        let s = op.generator_op(op.generator_id("SSSS").unwrap());
        let t = op.generator_op(op.generator_id("TTTT").unwrap());
        let f = OperadArrow::from_op(&op, s);
        let g = OperadArrow::from_op(&op, t);
        let (a, b) = square_fill(&op, &f, &g).unwrap();
        assert_eq!(a.compose(&op, &f).unwrap(), b.compose(&op, &g).unwrap());
    }

    #[test]
    fn disagreeing_labels_block_the_union() {
        let op = builtins::ribbon_free();
        let f = arrow(&op, "caret@t1(_,_)");
        let g = arrow(&op, "caret(_,_)");
        assert!(matches!(square_fill(&op, &f, &g), Err(Error::NoFill(_))));
    }

    #[test]
    fn equalize_is_identity_exactly_on_equal_arrows() {
        let op = builtins::thompson_v();
        let f = arrow(&op, "caret(_,_)");
        let g = arrow(&op, "[perm 2 1] caret(_,_)");
        assert!(equalize(&op, &f, &f).unwrap().unwrap().is_identity(&op));
        assert!(equalize(&op, &f, &g).unwrap().is_none());
    }
}
