//! Operations of operads presented by generators and degree-1 rewrites.
//!
//! An operation is stored as `prefix · ((labels) * tree)`: first a braid or
//! permutation acts on the inputs, then a degree-1 label sits on each leaf
//! edge, then a planar tree of generators. Labels on internal edges survive
//! only above generators that have no rewrite rule.

use std::fmt;

use super::model::{Label, Operad};
use crate::braid::{GarsideNF, Permutation, Strands};
use crate::color::{Color, ColorWord};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Leaf,
    Node { gen: u32, above: Label, children: Vec<Tree> },
}

impl Tree {
    pub fn leaves(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Node { children, .. } => children.iter().map(Tree::leaves).sum(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node { children, .. } => 1 + children.iter().map(Tree::depth).max().unwrap_or(0),
        }
    }

    pub fn nodes(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node { children, .. } => 1 + children.iter().map(Tree::nodes).sum::<usize>(),
        }
    }

    /// Whether `self` is obtained from `big` by cutting off subtrees, i.e.
    /// `big = (ψ_1, …, ψ_n) * self` as planar trees.
    pub fn is_upper_part_of(&self, big: &Tree) -> bool {
        match (self, big) {
            (Tree::Leaf, _) => true,
            (Tree::Node { gen: g1, above: a1, children: c1 }, Tree::Node { gen: g2, above: a2, children: c2 }) => {
                g1 == g2 && a1 == a2 && c1.iter().zip(c2).all(|(x, y)| x.is_upper_part_of(y))
            }
            _ => false,
        }
    }

    /// Replaces the leaves, in order, by `subs`.
    fn graft(&self, subs: &mut impl Iterator<Item = Tree>) -> Tree {
        match self {
            Tree::Leaf => subs.next().expect("one subtree per leaf"),
            Tree::Node { gen, above, children } => Tree::Node {
                gen: *gen,
                above: *above,
                children: children.iter().map(|c| c.graft(subs)).collect(),
            },
        }
    }

    /// Colors expected at the leaves.
    pub fn leaf_colors(&self, op: &Operad, out: &mut Vec<Color>) {
        match self {
            Tree::Leaf => panic!("leaf colors of a bare leaf depend on context"),
            Tree::Node { gen, children, .. } => {
                let g = op.generator(*gen);
                for (c, child) in g.inputs.iter().zip(children) {
                    match child {
                        Tree::Leaf => out.push(*c),
                        _ => child.leaf_colors(op, out),
                    }
                }
            }
        }
    }

    fn fmt_with(&self, op: &Operad, labels: &mut std::slice::Iter<'_, Label>, out: &mut String) {
        match self {
            Tree::Leaf => {
                out.push('_');
                if let Some(l) = labels.next() {
                    if !l.is_id() {
                        out.push('@');
                        out.push_str(&op.label_name(*l));
                    }
                }
            }
            Tree::Node { gen, above, children } => {
                out.push_str(&op.generator(*gen).name);
                if !above.is_id() {
                    out.push('@');
                    out.push_str(&op.label_name(*above));
                }
                out.push('(');
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    c.fmt_with(op, labels, out);
                }
                out.push(')');
            }
        }
    }
}

/// A canonical operation `prefix · ((labels) * tree)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeOp {
    pub(crate) output: Color,
    pub(crate) inputs: ColorWord,
    pub(crate) prefix: Strands,
    pub(crate) labels: Vec<Label>,
    pub(crate) tree: Tree,
}

impl TreeOp {
    pub fn identity(op: &Operad, c: Color) -> Self {
        Self::degree_one(op, c, Label::Id)
    }

    /// The degree-1 operation `label` with source color inferred.
    pub fn degree_one(op: &Operad, to: Color, label: Label) -> Self {
        let from = match label {
            Label::Id | Label::Twist(_) => to,
            Label::Elem(_) => op.label_from(label, to),
        };
        Self {
            output: op.label_to(label, from),
            inputs: ColorWord::new(vec![from]),
            prefix: op.strands_identity(1),
            labels: vec![label],
            tree: Tree::Leaf,
        }
    }

    pub fn generator(op: &Operad, g: u32) -> Self {
        let gen = op.generator(g);
        let n = gen.arity();
        Self {
            output: gen.output,
            inputs: gen.inputs.clone(),
            prefix: op.strands_identity(n),
            labels: vec![Label::Id; n],
            tree: Tree::Node { gen: g, above: Label::Id, children: vec![Tree::Leaf; n] },
        }
    }

    pub fn output(&self) -> Color {
        self.output
    }

    pub fn inputs(&self) -> &ColorWord {
        &self.inputs
    }

    pub fn degree(&self) -> usize {
        self.inputs.len()
    }

    pub fn prefix(&self) -> &Strands {
        &self.prefix
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    /// The same tree with identity prefix and leaf labels: the canonical
    /// representative of the transformation class.
    pub fn bare(&self, op: &Operad) -> TreeOp {
        let n = self.degree();
        let inputs = match &self.tree {
            Tree::Leaf => ColorWord::new(vec![self.output]),
            t => {
                let mut v = Vec::new();
                t.leaf_colors(op, &mut v);
                ColorWord::new(v)
            }
        };
        TreeOp {
            output: self.output,
            inputs,
            prefix: op.strands_identity(n),
            labels: vec![Label::Id; n],
            tree: self.tree.clone(),
        }
    }

    /// Colors at the codomain end of the prefix.
    fn prefix_codomain(&self) -> Vec<Color> {
        let p = self.prefix.permutation();
        (0..self.degree()).map(|j| self.inputs[p.source(j)]).collect()
    }

    pub fn display(&self, op: &Operad) -> String {
        let mut s = String::new();
        if !self.prefix.is_identity() {
            s.push_str(&format!("[{}] ", self.prefix));
        }
        let mut labels = self.labels.iter();
        self.tree.fmt_with(op, &mut labels, &mut s);
        s
    }
}

impl fmt::Display for TreeOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.tree)
    }
}

/// `x · θ`: the inputs of `θ` are first acted on by `x`.
pub fn act(x: &Strands, theta: &TreeOp) -> Result<TreeOp> {
    if x.size() != theta.degree() {
        return Err(Error::mismatch(format!(
            "acting with {} strands on an operation of degree {}",
            x.size(),
            theta.degree()
        )));
    }
    let targets = x.targets();
    Ok(TreeOp {
        output: theta.output,
        inputs: targets.iter().map(|&t| theta.inputs[t]).collect(),
        prefix: x.then(&theta.prefix),
        labels: theta.labels.clone(),
        tree: theta.tree.clone(),
    })
}

/// Splits `θ = prefix · ((children) * root)` with unprefixed children;
/// the label above the root is left out.
fn split_root(op: &Operad, theta: &TreeOp) -> Vec<TreeOp> {
    let Tree::Node { gen, children, .. } = &theta.tree else {
        unreachable!("split_root on a leaf");
    };
    let g = op.generator(*gen);
    let cod = theta.prefix_codomain();
    let mut start = 0;
    let mut out = Vec::with_capacity(children.len());
    for (k, child) in children.iter().enumerate() {
        let n = child.leaves();
        out.push(TreeOp {
            output: g.inputs[k],
            inputs: ColorWord::new(cod[start..start + n].to_vec()),
            prefix: identity_like(&theta.prefix, n),
            labels: theta.labels[start..start + n].to_vec(),
            tree: child.clone(),
        });
        start += n;
    }
    out
}

fn identity_like(s: &Strands, n: usize) -> Strands {
    match s {
        Strands::Perm(_) => Strands::Perm(Permutation::identity(n)),
        Strands::Braid(_) => Strands::Braid(GarsideNF::identity(n)),
    }
}

/// Assembles `(children) * g`, followed by `above`.
fn graft(op: &Operad, gen: u32, above: Label, children: Vec<TreeOp>) -> TreeOp {
    let g = op.generator(gen);
    let mut prefix: Option<Strands> = None;
    let mut labels = Vec::new();
    let mut inputs = Vec::new();
    let mut trees = Vec::with_capacity(children.len());
    for c in children {
        prefix = Some(match prefix {
            None => c.prefix.clone(),
            Some(p) => p.tensor(&c.prefix),
        });
        labels.extend(c.labels);
        inputs.extend(c.inputs.0);
        trees.push(c.tree);
    }
    TreeOp {
        output: op.label_to(above, g.output),
        inputs: ColorWord::new(inputs),
        prefix: prefix.expect("generators have inputs"),
        labels,
        tree: Tree::Node { gen, above, children: trees },
    }
}

/// `θ * γ`: the degree-1 element `γ` applied after `θ`, pushed towards the
/// leaves as far as the rewrite rules allow.
pub fn push_label(op: &Operad, theta: &TreeOp, gamma: Label) -> Result<TreeOp> {
    if gamma.is_id() {
        return Ok(theta.clone());
    }
    let out = theta.output;
    if op.label_from(gamma, out) != out {
        return Err(Error::mismatch(format!(
            "degree-1 element {} does not start at {}",
            op.label_name(gamma),
            op.color_name(out)
        )));
    }
    match &theta.tree {
        Tree::Leaf => {
            let mut r = theta.clone();
            r.labels[0] = op.label_then(theta.labels[0], gamma)?;
            r.output = op.label_to(gamma, out);
            Ok(r)
        }
        Tree::Node { gen, above, children } => {
            if !op.is_rewritable(*gen) {
                let mut r = theta.clone();
                r.tree = Tree::Node { gen: *gen, above: op.label_then(*above, gamma)?, children: children.clone() };
                r.output = op.label_to(gamma, out);
                return Ok(r);
            }
            debug_assert!(above.is_id());
            let rw = op.rewrite(*gen, gamma)?;
            let kids = split_root(op, theta);
            let mut moved = Vec::with_capacity(kids.len());
            for j in 0..kids.len() {
                let src = rw.prefix.source(j);
                moved.push(push_label(op, &kids[src], rw.labels[j])?);
            }
            let inner = graft(op, rw.result, Label::Id, moved);
            let degrees: Vec<usize> = kids.iter().map(TreeOp::degree).collect();
            let xbar = rw.prefix.block_expand(&degrees);
            act(&theta.prefix.then(&xbar), &inner)
        }
    }
}

/// `(φ_1, …, φ_n) * θ`.
pub fn compose(op: &Operad, phis: &[&TreeOp], theta: &TreeOp) -> Result<TreeOp> {
    if phis.len() != theta.degree() {
        return Err(Error::mismatch(format!(
            "{} operations plugged into an operation of degree {}",
            phis.len(),
            theta.degree()
        )));
    }
    for (i, phi) in phis.iter().enumerate() {
        if phi.output != theta.inputs[i] {
            return Err(Error::mismatch(format!(
                "input {} has color {} but the plugged operation outputs {}",
                i + 1,
                op.color_name(theta.inputs[i]),
                op.color_name(phi.output)
            )));
        }
    }
    let beta = &theta.prefix;
    let degrees: Vec<usize> = phis.iter().map(|p| p.degree()).collect();
    let beta_bar = beta.block_expand(&degrees);
    let mut moved = Vec::with_capacity(phis.len());
    for j in 0..phis.len() {
        moved.push(push_label(op, phis[beta.source(j)], theta.labels[j])?);
    }
    let mut prefix: Option<Strands> = None;
    let mut labels = Vec::new();
    for m in &moved {
        prefix = Some(match prefix {
            None => m.prefix.clone(),
            Some(p) => p.tensor(&m.prefix),
        });
        labels.extend_from_slice(&m.labels);
    }
    let inner_prefix = prefix.unwrap_or_else(|| op.strands_identity(0));
    let tree = theta.tree.graft(&mut moved.into_iter().map(|m| m.tree));
    let inputs = phis.iter().fold(ColorWord::empty(), |acc, p| acc.concat(&p.inputs));
    Ok(TreeOp { output: theta.output, inputs, prefix: beta_bar.then(&inner_prefix), labels, tree })
}
