//! The category of operators: arrows `(τ, Y)` in normal form.
//!
//! An arrow from `X` to `Z` is a colored braid `τ` out of `X` followed by a
//! sequence of operations whose concatenated inputs are the codomain of `τ`
//! and whose outputs spell `Z`. In normal form `τ⁻¹` is unbraided on every
//! block of inputs belonging to one operation.

use std::fmt;

use crate::braid::{ColoredBraid, Partition};
use crate::color::{ColorWord, Flavor};
use crate::error::{Error, Result};
use crate::operad::{Operad, Operation};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OperadArrow {
    tau: ColoredBraid,
    ops: Vec<Operation>,
}

impl OperadArrow {
    /// Normal form of `(β, X)`.
    pub fn new(op: &Operad, beta: ColoredBraid, ops: Vec<Operation>) -> Result<Self> {
        let inputs = ops.iter().fold(ColorWord::empty(), |acc, o| acc.concat(&o.inputs()));
        if beta.codomain() != inputs {
            return Err(Error::mismatch(format!(
                "braid codomain has {} strands, operations take {} inputs",
                beta.size(),
                inputs.len()
            )));
        }
        if beta.is_framed() {
            return Err(Error::Unsupported("arrows carry twists as degree-1 operations, not framings".into()));
        }
        if op.flavor() == Flavor::Planar {
            if !beta.strands().is_identity() {
                return Err(Error::invalid("planar arrows cannot permute strands"));
            }
            return Ok(Self { tau: beta, ops });
        }
        let sizes: Vec<usize> = ops.iter().map(Operation::degree).collect();
        let partition = Partition::from_sizes(&sizes)?;
        // β⁻¹ = (⊗ρ_i)·r, so (β, X) = (r⁻¹·(⊗ρ_i⁻¹), X) ∼ (r⁻¹, (ρ_i⁻¹·X_i))
        let (blocks, residual) = beta.inverse().pu_decompose(&partition)?;
        let mut out = Vec::with_capacity(ops.len());
        for (rho, x) in blocks.iter().zip(ops) {
            let r = rho.strands().inverse();
            out.push(if r.is_identity() { x } else { op.act(&r, &x)? });
        }
        Ok(Self { tau: residual.inverse(), ops: out })
    }

    pub fn identity(op: &Operad, word: &ColorWord) -> Result<Self> {
        let ops = word.iter().map(|&c| op.identity_op(c)).collect::<Result<Vec<_>>>()?;
        Ok(Self { tau: ColoredBraid::identity(op.flavor(), word.clone()), ops })
    }

    /// The arrow given by one operation.
    pub fn from_op(op: &Operad, theta: Operation) -> Self {
        Self { tau: ColoredBraid::identity(op.flavor(), theta.inputs()), ops: vec![theta] }
    }

    /// The arrow given by a sequence of operations side by side.
    pub fn from_ops(op: &Operad, ops: Vec<Operation>) -> Self {
        let inputs = ops.iter().fold(ColorWord::empty(), |acc, o| acc.concat(&o.inputs()));
        Self { tau: ColoredBraid::identity(op.flavor(), inputs), ops }
    }

    /// A pure braid (or permutation) arrow.
    pub fn from_braid(op: &Operad, beta: ColoredBraid) -> Result<Self> {
        let cod = beta.codomain();
        let ops = cod.iter().map(|&c| op.identity_op(c)).collect::<Result<Vec<_>>>()?;
        Self::new(op, beta, ops)
    }

    pub fn tau(&self) -> &ColoredBraid {
        &self.tau
    }

    pub fn ops(&self) -> &[Operation] {
        &self.ops
    }

    pub fn domain(&self) -> &ColorWord {
        self.tau.domain()
    }

    pub fn codomain(&self) -> ColorWord {
        self.ops.iter().map(Operation::output).collect()
    }

    /// Length of the domain word.
    pub fn degree(&self) -> usize {
        self.domain().len()
    }

    pub fn is_transformation(&self) -> bool {
        self.ops.iter().all(|o| o.degree() == 1)
    }

    pub fn is_identity(&self, op: &Operad) -> bool {
        self.tau.is_identity() && self.ops.iter().all(|o| op.identity_op(o.output()).is_ok_and(|id| &id == o))
    }

    /// `self` followed by `other`:
    /// `(β, X)·(δ, Y) = (β·(X↷δ), (X↶δ) * Y)`.
    pub fn compose(&self, op: &Operad, other: &OperadArrow) -> Result<OperadArrow> {
        if self.codomain() != *other.domain() {
            return Err(Error::mismatch("codomain and domain differ"));
        }
        let blocks: Vec<ColorWord> = self.ops.iter().map(Operation::inputs).collect();
        let delta = &other.tau;
        let expanded = delta.block_expand(&blocks)?;
        let perm = delta.permutation();
        let moved: Vec<&Operation> = (0..self.ops.len()).map(|j| &self.ops[perm.source(j)]).collect();
        let mut ops = Vec::with_capacity(other.ops.len());
        let mut start = 0;
        for y in &other.ops {
            let n = y.degree();
            ops.push(op.compose_ops(&moved[start..start + n], y)?);
            start += n;
        }
        let beta = self.tau.then(&expanded)?;
        Self::new(op, beta, ops)
    }

    /// Juxtaposition; normal forms are preserved.
    pub fn tensor(&self, other: &OperadArrow) -> OperadArrow {
        let mut ops = self.ops.clone();
        ops.extend(other.ops.iter().cloned());
        Self { tau: self.tau.tensor(&other.tau), ops }
    }

    /// Inverse of a transformation.
    pub fn inverse(&self, op: &Operad) -> Result<OperadArrow> {
        if !self.is_transformation() {
            return Err(Error::invalid("only transformations are invertible arrows"));
        }
        let inv = self.ops.iter().map(|o| op.invert_degree_one(o)).collect::<Result<Vec<_>>>()?;
        let undo_ops = Self::from_ops(op, inv);
        let undo_braid = Self::from_braid(op, self.tau.inverse())?;
        undo_ops.compose(op, &undo_braid)
    }

    pub fn show(&self, op: &Operad) -> String {
        let dom: Vec<&str> = self.domain().iter().map(|&c| op.color_name(c)).collect();
        let mut s = format!("{}\n{}\n", dom.join(" "), self.tau);
        for o in &self.ops {
            s.push_str(&op.show(o));
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for OperadArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; ", self.tau)?;
        for (i, o) in self.ops.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{o}")?;
        }
        write!(f, ")")
    }
}

/// Componentwise equality of normal forms.
pub fn arrow_equal(a: &OperadArrow, b: &OperadArrow) -> bool {
    a == b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;
    use crate::operad::builtins;

    #[test]
    fn identity_is_neutral() {
        let op = builtins::braided_v();
        let theta = op.parse_op("[b3: 1 -2] caret(caret(_,_),_)").unwrap();
        let a = OperadArrow::from_op(&op, theta.clone());
        let id_dom = OperadArrow::identity(&op, a.domain()).unwrap();
        let id_cod = OperadArrow::identity(&op, &a.codomain()).unwrap();
        assert_eq!(id_dom.compose(&op, &a).unwrap(), a);
        assert_eq!(a.compose(&op, &id_cod).unwrap(), a);
    }

    #[test]
    fn braid_is_absorbed_into_a_single_operation() {
        let op = builtins::braided_v();
        let caret = op.generator_op(0);
        let c = caret.output();
        let beta = ColoredBraid::from_word(&BraidWord::new(2, vec![1]).unwrap(), ColorWord::uniform(c, 2)).unwrap();
        let a = OperadArrow::new(&op, beta, vec![caret.clone()]).unwrap();
        assert!(a.tau().is_identity());
        assert_eq!(a.ops()[0], op.parse_op("[b2: 1] caret(_,_)").unwrap());
    }

    #[test]
    fn push_through_cables_the_braid() {
        // two carets side by side, then a braid of their outputs, then a caret
        let op = builtins::braided_v();
        let caret = op.generator_op(0);
        let c = caret.output();
        let two = OperadArrow::from_ops(&op, vec![caret.clone(), caret.clone()]);
        let beta = ColoredBraid::from_word(&BraidWord::new(2, vec![1]).unwrap(), ColorWord::uniform(c, 2)).unwrap();
        let top = OperadArrow::new(&op, beta, vec![caret.clone()]).unwrap();
        let both = two.compose(&op, &top).unwrap();
        let expect = op.parse_op("[b4: 2 1 3 2] caret(caret(_,_),caret(_,_))").unwrap();
        assert_eq!(both.ops(), &[expect]);
        assert!(both.tau().is_identity());
    }

    #[test]
    fn transformation_inverse() {
        let op = builtins::ribbon_v();
        let t = op.parse_op("_@t2").unwrap();
        let c = t.output();
        let beta = ColoredBraid::from_word(&BraidWord::new(2, vec![1, 1, -1, 1]).unwrap(), ColorWord::uniform(c, 2))
            .unwrap();
        let a = OperadArrow::new(&op, beta, vec![t.clone(), op.identity_op(c).unwrap()]).unwrap();
        let inv = a.inverse(&op).unwrap();
        assert!(a.compose(&op, &inv).unwrap().is_identity(&op));
        assert!(inv.compose(&op, &a).unwrap().is_identity(&op));
    }
}
