use std::fmt;

use super::affine::{AffineMap, AffineOp};
use super::model::{Label, Operad};
use super::tree::{self, Tree, TreeOp};
use crate::braid::{BraidWord, Permutation, Strands};
use crate::color::{Color, ColorWord, Flavor};
use crate::error::{Error, Result};

/// An operation in canonical form. Structural equality is equality in the
/// operad.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Operation {
    Tree(TreeOp),
    Affine(AffineOp),
}

impl Operation {
    pub fn degree(&self) -> usize {
        match self {
            Operation::Tree(t) => t.degree(),
            Operation::Affine(a) => a.degree(),
        }
    }

    pub fn output(&self) -> Color {
        match self {
            Operation::Tree(t) => t.output(),
            Operation::Affine(a) => a.output(),
        }
    }

    pub fn inputs(&self) -> ColorWord {
        match self {
            Operation::Tree(t) => t.inputs().clone(),
            Operation::Affine(a) => a.inputs(),
        }
    }

    pub fn as_tree(&self) -> Option<&TreeOp> {
        match self {
            Operation::Tree(t) => Some(t),
            Operation::Affine(_) => None,
        }
    }

    pub fn as_affine(&self) -> Option<&AffineOp> {
        match self {
            Operation::Affine(a) => Some(a),
            Operation::Tree(_) => None,
        }
    }

    /// Number of generator layers (tree depth); geometric operations report 0.
    pub fn depth(&self) -> usize {
        match self {
            Operation::Tree(t) => t.tree().depth(),
            Operation::Affine(_) => 0,
        }
    }
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operation::Tree(t) => write!(f, "{t}"),
            Operation::Affine(a) => write!(f, "{a}"),
        }
    }
}

/// Canonical representative of a transformation class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassKey {
    Tree(Tree, Color),
    Affine(Color, Vec<(Color, AffineMap)>),
}

impl Operad {
    pub fn identity_op(&self, c: Color) -> Result<Operation> {
        self.check_color(c)?;
        Ok(match self.geometry() {
            Some(g) => Operation::Affine(AffineOp::identity(c, g.dimension)),
            None => Operation::Tree(TreeOp::identity(self, c)),
        })
    }

    pub fn generator_op(&self, g: u32) -> Operation {
        if self.is_geometric() {
            Operation::Affine(self.generator_affine(g))
        } else {
            Operation::Tree(TreeOp::generator(self, g))
        }
    }

    /// The degree-1 operation given by a label (tree operads).
    pub fn label_op(&self, to: Color, label: Label) -> Result<Operation> {
        if self.is_geometric() {
            return Err(Error::Unsupported("labels on geometric operads; use symmetry_op".into()));
        }
        Ok(Operation::Tree(TreeOp::degree_one(self, to, label)))
    }

    /// The degree-1 operation given by the `k`-th symmetry of a shape.
    pub fn symmetry_op(&self, c: Color, k: usize) -> Result<Operation> {
        let syms = self.symmetries(c);
        let m = syms
            .get(k)
            .ok_or_else(|| Error::invalid(format!("color {} has {} symmetries", self.color_name(c), syms.len())))?;
        Ok(Operation::Affine(AffineOp::new(c, vec![(c, m.clone())])))
    }

    /// All degree-1 operations ending at `c` (twists truncated to `radius`).
    pub fn degree_one_ops(&self, c: Color, radius: i64) -> Vec<Operation> {
        if self.is_geometric() {
            (0..self.symmetries(c).len()).map(|k| self.symmetry_op(c, k).unwrap()).collect()
        } else {
            let mut v = vec![Operation::Tree(TreeOp::identity(self, c))];
            for from in 0..self.color_count() {
                let from = Color(from as u16);
                for l in self.labels_from(from, radius) {
                    if self.label_to(l, from) == c {
                        v.push(Operation::Tree(TreeOp::degree_one(self, c, l)));
                    }
                }
            }
            v
        }
    }

    /// Inverse of a degree-1 operation.
    pub fn invert_degree_one(&self, theta: &Operation) -> Result<Operation> {
        if theta.degree() != 1 {
            return Err(Error::invalid("only degree-1 operations are invertible"));
        }
        match theta {
            Operation::Tree(t) => {
                if t.tree != Tree::Leaf {
                    return Err(Error::invalid("a generator of degree 1 is not invertible"));
                }
                let from = t.inputs[0];
                Ok(Operation::Tree(TreeOp::degree_one(self, from, self.label_inverse(t.labels[0]))))
            }
            Operation::Affine(a) => {
                let (c, m) = &a.pieces()[0];
                if *c != a.output() {
                    return Err(Error::invalid("affine degree-1 operation changes color"));
                }
                Ok(Operation::Affine(AffineOp::new(*c, vec![(*c, m.inverse()?)])))
            }
        }
    }

    fn check_color(&self, c: Color) -> Result<()> {
        if (c.0 as usize) < self.color_count() {
            Ok(())
        } else {
            Err(Error::invalid(format!("unknown color {c}")))
        }
    }

    /// `(φ_1, …, φ_n) * θ`.
    pub fn compose_ops(&self, phis: &[&Operation], theta: &Operation) -> Result<Operation> {
        match theta {
            Operation::Tree(t) => {
                let ps = phis
                    .iter()
                    .map(|p| p.as_tree().ok_or_else(|| Error::mismatch("mixed operation kinds")))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Operation::Tree(tree::compose(self, &ps, t)?))
            }
            Operation::Affine(a) => {
                if phis.len() != a.degree() {
                    return Err(Error::mismatch(format!(
                        "{} operations plugged into an operation of degree {}",
                        phis.len(),
                        a.degree()
                    )));
                }
                let mut ps = Vec::with_capacity(phis.len());
                for (i, p) in phis.iter().enumerate() {
                    let p = p.as_affine().ok_or_else(|| Error::mismatch("mixed operation kinds"))?;
                    if p.output() != a.pieces()[i].0 {
                        return Err(Error::mismatch(format!("color mismatch at input {}", i + 1)));
                    }
                    ps.push(p);
                }
                Ok(Operation::Affine(AffineOp::compose(&ps, a)))
            }
        }
    }

    /// Owned-slice convenience for [`Operad::compose_ops`].
    pub fn compose_owned(&self, phis: &[Operation], theta: &Operation) -> Result<Operation> {
        let refs: Vec<&Operation> = phis.iter().collect();
        self.compose_ops(&refs, theta)
    }

    /// `φ ∘_i θ`: `φ` plugged into input `i` (0-based), identities elsewhere.
    pub fn partial_compose(&self, phi: &Operation, theta: &Operation, i: usize) -> Result<Operation> {
        let inputs = theta.inputs();
        if i >= inputs.len() {
            return Err(Error::invalid(format!("slot {} out of range for degree {}", i + 1, inputs.len())));
        }
        let ids = inputs.iter().map(|&c| self.identity_op(c)).collect::<Result<Vec<_>>>()?;
        let refs: Vec<&Operation> = ids.iter().enumerate().map(|(k, id)| if k == i { phi } else { id }).collect();
        self.compose_ops(&refs, theta)
    }

    /// `x · θ`: permutes (or braids) the inputs of `θ`.
    pub fn act(&self, x: &Strands, theta: &Operation) -> Result<Operation> {
        if self.flavor() == Flavor::Planar {
            return Err(Error::Unsupported("planar operads have no symmetric action".into()));
        }
        if x.size() != theta.degree() {
            return Err(Error::mismatch(format!(
                "acting with {} strands on an operation of degree {}",
                x.size(),
                theta.degree()
            )));
        }
        if x.is_braided() != (self.flavor() == Flavor::Braided) {
            return Err(Error::mismatch("braid/permutation kind does not match the operad flavor"));
        }
        match theta {
            Operation::Tree(t) => Ok(Operation::Tree(tree::act(x, t)?)),
            Operation::Affine(a) => Ok(Operation::Affine(a.permute(&x.targets()))),
        }
    }

    /// The transformation class of `θ`: `θ` up to transformations on its inputs.
    pub fn class_key(&self, theta: &Operation) -> ClassKey {
        match theta {
            Operation::Tree(t) => ClassKey::Tree(t.tree().clone(), t.output()),
            Operation::Affine(a) => {
                let mut pieces: Vec<(Color, AffineMap)> = a
                    .pieces()
                    .iter()
                    .map(|(c, m)| {
                        let best = self.symmetries(*c).iter().map(|g| m.after(g)).min().expect("identity symmetry");
                        (*c, best)
                    })
                    .collect();
                if self.flavor() != Flavor::Planar {
                    pieces.sort();
                }
                ClassKey::Affine(a.output(), pieces)
            }
        }
    }

    /// A representative operation of a class.
    pub fn class_representative(&self, key: &ClassKey) -> Operation {
        match key {
            ClassKey::Tree(t, c) => match t {
                Tree::Leaf => Operation::Tree(TreeOp::identity(self, *c)),
                _ => {
                    let mut inputs = Vec::new();
                    t.leaf_colors(self, &mut inputs);
                    let n = inputs.len();
                    Operation::Tree(TreeOp {
                        output: *c,
                        inputs: ColorWord::new(inputs),
                        prefix: self.strands_identity(n),
                        labels: vec![Label::Id; n],
                        tree: t.clone(),
                    })
                }
            },
            ClassKey::Affine(c, pieces) => Operation::Affine(AffineOp::new(*c, pieces.clone())),
        }
    }

    pub fn show(&self, theta: &Operation) -> String {
        match theta {
            Operation::Tree(t) => t.display(self),
            Operation::Affine(a) => {
                let pieces: Vec<String> =
                    a.pieces().iter().map(|(c, m)| format!("{}{}", self.color_name(*c), m)).collect();
                format!("{}<-{{{}}}", self.color_name(a.output()), pieces.join(", "))
            }
        }
    }

    /// Parses and canonicalizes a raw term such as `caret@t1(_@t-1,caret(_,_))`
    /// or `[b3: 1 -2] caret(caret(_,_),_)`. Degree-1 decorations may appear
    /// on any edge; `_:color` names the color of a bare leaf.
    pub fn parse_op(&self, text: &str) -> Result<Operation> {
        let text = text.trim();
        let (prefix, body) = if let Some(rest) = text.strip_prefix('[') {
            let (p, b) = rest.split_once(']').ok_or_else(|| Error::Parse("unclosed prefix".into()))?;
            (Some(p.trim()), b.trim())
        } else {
            (None, text)
        };
        let mut parser = TermParser { op: self, s: body.as_bytes(), pos: 0 };
        let theta = parser.node(None)?;
        parser.skip_ws();
        if parser.pos != parser.s.len() {
            return Err(Error::Parse(format!("trailing input in `{text}`")));
        }
        match prefix {
            None => Ok(theta),
            Some(p) => {
                let x = self.parse_strands(p, theta.degree())?;
                self.act(&x, &theta)
            }
        }
    }

    /// Parses `bN: letters` (braided) or `perm i j k` (1-based images).
    pub fn parse_strands(&self, text: &str, n: usize) -> Result<Strands> {
        let text = text.trim();
        let x = if let Some(imgs) = text.strip_prefix("perm") {
            let imgs = imgs
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad image `{t}`"))))
                .collect::<Result<Vec<_>>>()?;
            if self.flavor() == Flavor::Braided {
                return Err(Error::Parse("braided operads take braid words".into()));
            }
            Strands::from_perm(Permutation::from_one_based(&imgs)?)
        } else {
            let w: BraidWord = text.parse()?;
            match self.flavor() {
                Flavor::Braided => Strands::from_word(&w),
                _ => Strands::from_perm(w.permutation()),
            }
        };
        if x.size() != n {
            return Err(Error::mismatch(format!("prefix on {} strands for degree {n}", x.size())));
        }
        Ok(x)
    }
}

struct TermParser<'a> {
    op: &'a Operad,
    s: &'a [u8],
    pos: usize,
}

impl TermParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!("expected `{}` at byte {}", c as char, self.pos)))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() {
            let c = self.s[self.pos];
            if c.is_ascii_alphanumeric() || c == b'_' || c == b'-' || c == b'.' {
                self.pos += 1;
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected a name at byte {start}")));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    /// Applies a decoration after `theta`.
    fn decorate(&mut self, theta: Operation) -> Result<Operation> {
        if self.peek() != Some(b'@') {
            return Ok(theta);
        }
        self.pos += 1;
        let name = self.ident()?;
        let out = theta.output();
        let d1 = if self.op.is_geometric() {
            let k: usize = name
                .strip_prefix('s')
                .and_then(|k| k.parse().ok())
                .ok_or_else(|| Error::Parse(format!("geometric decorations are `s<k>`, got `{name}`")))?;
            self.op.symmetry_op(out, k)?
        } else {
            let l = self.op.parse_label(&name)?;
            if self.op.label_from(l, out) != out {
                return Err(Error::mismatch(format!("decoration `{name}` does not start at {}", self.op.color_name(out))));
            }
            self.op.label_op(self.op.label_to(l, out), l)?
        };
        self.op.compose_ops(&[&theta], &d1)
    }

    fn node(&mut self, expected: Option<Color>) -> Result<Operation> {
        if self.peek() == Some(b'_') {
            self.pos += 1;
            let color = if self.peek() == Some(b':') {
                self.pos += 1;
                let name = self.ident()?;
                self.op.color(&name)?
            } else {
                expected.unwrap_or(Color(0))
            };
            // a leaf label ends at the generator input, so start from its source
            if self.peek() == Some(b'@') && !self.op.is_geometric() {
                let save = self.pos;
                self.pos += 1;
                let name = self.ident()?;
                let l = self.op.parse_label(&name)?;
                self.pos = save;
                let from = match l {
                    Label::Elem(_) => self.op.label_from(l, color),
                    _ => color,
                };
                let id = self.op.identity_op(from)?;
                return self.decorate(id);
            }
            let id = self.op.identity_op(color)?;
            return self.decorate(id);
        }
        let name = self.ident()?;
        let g = self.op.generator_id(&name)?;
        let gen = self.op.generator(g).clone();
        let save = self.pos;
        // decoration is applied after the children are in place
        let mut deco_end = self.pos;
        if self.peek() == Some(b'@') {
            self.pos += 1;
            self.ident()?;
            deco_end = self.pos;
        }
        self.expect(b'(')?;
        let mut children = Vec::new();
        for k in 0..gen.arity() {
            if k > 0 {
                self.expect(b',')?;
            }
            children.push(self.node(Some(gen.inputs[k]))?);
        }
        self.expect(b')')?;
        let end = self.pos;
        let theta = self.op.compose_owned(&children, &self.op.generator_op(g))?;
        if deco_end != save {
            self.pos = save;
            let theta = self.decorate(theta)?;
            self.pos = end;
            Ok(theta)
        } else {
            Ok(theta)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::builtins;

    #[test]
    fn free_grafting_gives_left_comb() {
        let op = builtins::thompson_f();
        let caret = op.generator_op(0);
        let lc = op.partial_compose(&caret, &caret, 0).unwrap();
        assert_eq!(lc, op.parse_op("caret(caret(_,_),_)").unwrap());
        assert_eq!(lc.degree(), 3);
    }

    #[test]
    fn unit_laws() {
        let op = builtins::thompson_v();
        let theta = op.parse_op("[perm 2 3 1] caret(_,caret(_,_))").unwrap();
        let c = op.color("c").unwrap();
        let id = op.identity_op(c).unwrap();
        let ids = vec![id.clone(); 3];
        assert_eq!(op.compose_owned(&ids, &theta).unwrap(), theta);
        assert_eq!(op.compose_ops(&[&theta], &id).unwrap(), theta);
    }

    #[test]
    fn ribbon_twist_above_caret() {
        let op = builtins::ribbon_v();
        let lhs = op.parse_op("caret@t1(_,_)").unwrap();
        let rhs = op.parse_op("[b2: 1] caret(_@t1,_@t1)").unwrap();
        assert_eq!(lhs, rhs);
        let t = lhs.as_tree().unwrap();
        assert!(t.labels().iter().all(|l| *l == Label::Twist(1)));
    }

    #[test]
    fn ribbon_disabled_keeps_internal_twist() {
        let op = builtins::ribbon_free();
        let lhs = op.parse_op("caret@t1(_,_)").unwrap();
        let rhs = op.parse_op("[b2: 1] caret(_@t1,_@t1)").unwrap();
        assert_ne!(lhs, rhs);
    }
}
