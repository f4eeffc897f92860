//! Thompson-like groups as operad groups, with named generators.
//!
//! Elements are spans on a base object `c^r`. Generators live on the right
//! vine: the roots `0..r-1` plus a right spine of carets on the last root,
//! whose leaves are numbered left to right.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::json;

use super::span::{span_equal, Span, SpanEquality};
use crate::arrows::OperadArrow;
use crate::braid::{ColoredBraid, Strands};
use crate::color::{Color, ColorWord, Flavor};
use crate::error::{Error, Result};
use crate::operad::{builtins, Label, Operad, Operation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    F,
    V,
    BV,
    RV,
    /// Higman–Thompson `F_{n,r}`.
    Fnr(usize, usize),
    /// Higman–Thompson `V_{n,r}`.
    Vnr(usize, usize),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::F => f.write_str("F"),
            Family::V => f.write_str("V"),
            Family::BV => f.write_str("BV"),
            Family::RV => f.write_str("RV"),
            Family::Fnr(n, r) => write!(f, "F({n},{r})"),
            Family::Vnr(n, r) => write!(f, "V({n},{r})"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches("thompson-");
        let pair = |body: &str| -> Result<(usize, usize)> {
            let inner = body.trim_start_matches('(').trim_end_matches(')');
            let mut it = inner.split(',').map(|x| x.trim().parse::<usize>());
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(n)), Some(Ok(r)), None) if n >= 2 && r >= 1 => Ok((n, r)),
                _ => Err(Error::Parse(format!("expected (n,r) with n >= 2, r >= 1 in `{s}`"))),
            }
        };
        Ok(match t {
            "F" => Family::F,
            "V" => Family::V,
            "BV" => Family::BV,
            "RV" => Family::RV,
            _ if t.starts_with("F(") => {
                let (n, r) = pair(&t[1..])?;
                Family::Fnr(n, r)
            }
            _ if t.starts_with("V(") => {
                let (n, r) = pair(&t[1..])?;
                Family::Vnr(n, r)
            }
            _ => return Err(Error::Parse(format!("unknown group family `{s}` (F, V, BV, RV, F(n,r), V(n,r))"))),
        })
    }
}

/// An operad together with a base object and the vine used for generators.
#[derive(Clone, Debug)]
pub struct GroupContext {
    pub family: Family,
    pub op: Operad,
    pub arity: usize,
    pub roots: usize,
    color: Color,
}

fn nary(name: &str, flavor: &str, n: usize) -> Result<Operad> {
    let v = json!({
        "name": name,
        "flavor": flavor,
        "colors": ["c"],
        "generators": [{"id": "caret", "inputs": vec!["c"; n], "output": "c"}]
    });
    Operad::from_json(&v.to_string())
}

impl GroupContext {
    pub fn new(family: Family) -> Result<Self> {
        let (op, arity, roots) = match family {
            Family::F => (builtins::thompson_f(), 2, 1),
            Family::V => (builtins::thompson_v(), 2, 1),
            Family::BV => (builtins::braided_v(), 2, 1),
            Family::RV => (builtins::ribbon_v(), 2, 1),
            Family::Fnr(n, r) => (nary(&family.to_string(), "planar", n)?, n, r),
            Family::Vnr(n, r) => (nary(&family.to_string(), "symmetric", n)?, n, r),
        };
        Ok(Self { family, op, arity, roots, color: Color(0) })
    }

    /// A context for a user operad with one color and one generator, on `roots`
    /// roots. The family is read off the flavor, the arity and the twists.
    pub fn from_operad(op: Operad, roots: usize) -> Result<Self> {
        if op.color_count() != 1 || op.generators().len() != 1 || op.is_geometric() {
            return Err(Error::invalid("group contexts need one color and one tree generator"));
        }
        let arity = op.generator_op(0).degree();
        if arity < 2 || roots == 0 {
            return Err(Error::invalid("group contexts need arity >= 2 and at least one root"));
        }
        let twisted = matches!(op.degree1(), crate::operad::Degree1::Twist);
        let family = match (op.flavor(), arity, roots) {
            (Flavor::Braided, 2, 1) if twisted => Family::RV,
            (Flavor::Braided, 2, 1) => Family::BV,
            (Flavor::Planar, 2, 1) => Family::F,
            (Flavor::Symmetric, 2, 1) => Family::V,
            (Flavor::Planar, n, r) => Family::Fnr(n, r),
            (Flavor::Symmetric, n, r) => Family::Vnr(n, r),
            (f, n, r) => return Err(Error::invalid(format!("no group family for a {f} operad of arity {n} on {r} roots"))),
        };
        Ok(Self { family, op, arity, roots, color: Color(0) })
    }

    pub fn base(&self) -> ColorWord {
        ColorWord::uniform(self.color, self.roots)
    }

    pub fn identity(&self) -> Result<Span> {
        Span::identity(&self.op, &self.base())
    }

    /// Number of vine leaves with `k` carets on the spine.
    pub fn vine_width(&self, k: usize) -> usize {
        self.roots + (self.arity - 1) * k
    }

    /// Fewest spine carets exposing vine leaf `i`.
    fn carets_for(&self, i: usize) -> usize {
        if i < self.roots {
            0
        } else {
            (i + 1 - self.roots).div_ceil(self.arity - 1)
        }
    }

    fn caret(&self) -> Operation {
        self.op.generator_op(0)
    }

    /// The vine with `k` spine carets, as an arrow into the base.
    pub fn vine(&self, k: usize) -> Result<OperadArrow> {
        let op = &self.op;
        let mut spine = op.identity_op(self.color)?;
        for _ in 0..k {
            let mut kids = vec![op.identity_op(self.color)?; self.arity - 1];
            kids.push(spine);
            spine = op.compose_owned(&kids, &self.caret())?;
        }
        let mut ops = vec![op.identity_op(self.color)?; self.roots - 1];
        ops.push(spine);
        Ok(OperadArrow::from_ops(op, ops))
    }

    /// `θ` on vine leaf `i` of width `w`, identities elsewhere.
    fn at_leaf(&self, w: usize, i: usize, theta: Operation) -> Result<OperadArrow> {
        let ops = (0..w)
            .map(|j| if j == i { Ok(theta.clone()) } else { self.op.identity_op(self.color) })
            .collect::<Result<Vec<_>>>()?;
        Ok(OperadArrow::from_ops(&self.op, ops))
    }

    /// `x_i`: a caret on vine leaf `i` versus a caret on the tip of the
    /// smallest vine where `i` is not the tip.
    pub fn x(&self, i: usize) -> Result<Span> {
        let k = self.carets_for(i + 1);
        let w = self.vine_width(k);
        let vine = self.vine(k)?;
        let den = self.at_leaf(w, i, self.caret())?.compose(&self.op, &vine)?;
        let num = self.at_leaf(w, w - 1, self.caret())?.compose(&self.op, &vine)?;
        Span::new(den, num)
    }

    /// `(vine, x·vine)` for a braid or permutation `x` on the vine leaves.
    pub fn braiding(&self, k: usize, x: Strands) -> Result<Span> {
        let vine = self.vine(k)?;
        let w = self.vine_width(k);
        let beta = ColoredBraid::new(x, ColorWord::uniform(self.color, w))?;
        let num = OperadArrow::from_braid(&self.op, beta)?.compose(&self.op, &vine)?;
        Span::new(vine, num)
    }

    fn adjacent(&self, i: usize, positive: bool) -> Result<Span> {
        if self.op.flavor() == Flavor::Planar {
            return Err(Error::invalid(format!("{} has no braidings or transpositions", self.family)));
        }
        let k = self.carets_for(i + 1);
        let w = self.vine_width(k);
        self.braiding(k, Strands::generator(self.op.flavor(), w, i, positive))
    }

    /// Transposition of vine leaves `i`, `i+1` (symmetric families).
    pub fn s(&self, i: usize) -> Result<Span> {
        if self.op.flavor() != Flavor::Symmetric {
            return Err(Error::invalid(format!("transpositions need a symmetric family, not {}", self.family)));
        }
        self.adjacent(i, true)
    }

    /// Positive crossing of vine leaves `i`, `i+1` (braided families).
    pub fn b(&self, i: usize) -> Result<Span> {
        if self.op.flavor() != Flavor::Braided {
            return Err(Error::invalid(format!("braidings need a braided family, not {}", self.family)));
        }
        self.adjacent(i, true)
    }

    /// Full twist on vine leaf `i` (ribbon family).
    pub fn t(&self, i: usize) -> Result<Span> {
        if self.family != Family::RV {
            return Err(Error::invalid("twists exist only in RV"));
        }
        let k = self.carets_for(i);
        let w = self.vine_width(k);
        let vine = self.vine(k)?;
        let twist = self.op.label_op(self.color, Label::Twist(1))?;
        let num = self.at_leaf(w, i, twist)?.compose(&self.op, &vine)?;
        Span::new(vine, num)
    }

    /// A named generator: `x<i>`, `s<i>`, `b<i>` or `t<i>`.
    pub fn generator(&self, name: &str) -> Result<Span> {
        let (kind, idx) = name.split_at(1);
        let i: usize = idx.parse().map_err(|_| Error::Parse(format!("bad generator `{name}`")))?;
        match kind {
            "x" => self.x(i),
            "s" => self.s(i),
            "b" => self.b(i),
            "t" => self.t(i),
            _ => Err(Error::Parse(format!("unknown generator `{name}` (x<i>, s<i>, b<i>, t<i>)"))),
        }
    }

    /// `g^k`, including negative powers.
    pub fn power(&self, g: &Span, k: i64) -> Result<Span> {
        let base = if k < 0 { g.invert() } else { g.clone() };
        let mut acc = self.identity()?;
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose(&self.op, &base)?;
        }
        Ok(acc)
    }

    /// Evaluates a word such as `x0 x1^-1 s2^2`, left to right.
    pub fn word(&self, text: &str) -> Result<Span> {
        let mut acc = self.identity()?;
        for tok in text.split_whitespace() {
            if tok == "1" || tok == "e" {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (n, e.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?),
                None => (tok, 1),
            };
            let g = self.generator(name)?;
            acc = acc.compose(&self.op, &self.power(&g, exp)?)?;
        }
        Ok(acc)
    }

    pub fn mul(&self, a: &Span, b: &Span) -> Result<Span> {
        a.compose(&self.op, b)
    }

    pub fn equal(&self, a: &Span, b: &Span) -> Result<SpanEquality> {
        span_equal(&self.op, a, b)
    }
}

/// One checked relation.
#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    /// `true` when the two sides must be equal, `false` for a required inequality.
    pub expect_equal: bool,
    pub result: SpanEquality,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationReport {
    pub family: String,
    pub bound: usize,
    pub checks: Vec<RelationCheck>,
}

impl PresentationReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn record(checks: &mut Vec<RelationCheck>, relation: String, expect_equal: bool, result: SpanEquality) {
    let pass = match (&result, expect_equal) {
        (SpanEquality::Equal, true) | (SpanEquality::Different, false) => true,
        _ => false,
    };
    checks.push(RelationCheck { relation, expect_equal, result, pass });
}

/// Checks the defining relations of a family up to index `bound`.
pub fn verify_presentation(family: Family, bound: usize) -> Result<PresentationReport> {
    let ctx = GroupContext::new(family)?;
    let op = &ctx.op;
    let mut checks = Vec::new();
    // x_k⁻¹ x_m x_k = x_{m+n-1} for k < m
    let shift = ctx.arity - 1;
    for m in 1..=bound {
        for k in 0..m {
            let lhs = ctx.x(k)?.invert().compose(op, &ctx.x(m)?)?.compose(op, &ctx.x(k)?)?;
            let rhs = ctx.x(m + shift)?;
            record(&mut checks, format!("x{k}^-1 x{m} x{k} = x{}", m + shift), true, span_equal(op, &lhs, &rhs)?);
        }
    }
    let x01 = ctx.x(0)?.compose(op, &ctx.x(1)?)?;
    let x10 = ctx.x(1)?.compose(op, &ctx.x(0)?)?;
    record(&mut checks, "x0 x1 != x1 x0".into(), false, span_equal(op, &x01, &x10)?);

    match family {
        Family::V | Family::Vnr(..) => {
            let s0 = ctx.s(0)?;
            record(&mut checks, "s0^2 = 1".into(), true, span_equal(op, &s0.compose(op, &s0)?, &ctx.identity()?)?);
            record(&mut checks, "s0 != 1".into(), false, span_equal(op, &s0, &ctx.identity()?)?);
        }
        Family::BV | Family::RV => {
            let w = ctx.vine_width(2);
            let fl = op.flavor();
            let b = |i: usize| ctx.braiding(2, Strands::generator(fl, w, i, true));
            let l = b(0)?.compose(op, &b(1)?)?.compose(op, &b(0)?)?;
            let r = b(1)?.compose(op, &b(0)?)?.compose(op, &b(1)?)?;
            record(&mut checks, "b0 b1 b0 = b1 b0 b1".into(), true, span_equal(op, &l, &r)?);
            let sq = b(0)?.compose(op, &b(0)?)?;
            record(&mut checks, "b0^2 != 1".into(), false, span_equal(op, &sq, &ctx.identity()?)?);
        }
        _ => {}
    }
    if family == Family::RV {
        // caret * t = σ1 · ((t, t) * caret), read as t = b · t_0 · t_1 on the one-caret vine
        let w = ctx.vine_width(1);
        let b = ctx.braiding(1, Strands::generator(Flavor::Braided, w, 0, true))?;
        let rhs = b.compose(op, &ctx.t(1)?)?.compose(op, &leaf_twist(&ctx, 1, 0)?)?;
        record(&mut checks, "t0 = b0 t0' t1'".into(), true, span_equal(op, &ctx.t(0)?, &rhs)?);
        record(&mut checks, "twisted dipole = 1".into(), true, twisted_dipole_is_trivial(op)?);
    }
    Ok(PresentationReport { family: family.to_string(), bound, checks })
}

/// Twist on leaf `i` of the vine with `k` carets.
fn leaf_twist(ctx: &GroupContext, k: usize, i: usize) -> Result<Span> {
    let vine = ctx.vine(k)?;
    let twist = ctx.op.label_op(ctx.color, Label::Twist(1))?;
    let num = ctx.at_leaf(ctx.vine_width(k), i, twist)?.compose(&ctx.op, &vine)?;
    Span::new(vine, num)
}

/// The span `(caret * t, σ1 · ((t, t) * caret))`.
pub fn twisted_dipole(op: &Operad) -> Result<Span> {
    let den = op.parse_op("caret@t1(_,_)")?;
    let num = op.parse_op("[b2: 1] caret(_@t1,_@t1)")?;
    Span::new(OperadArrow::from_op(op, den), OperadArrow::from_op(op, num))
}

/// Compares the twisted dipole with the identity.
pub fn twisted_dipole_is_trivial(op: &Operad) -> Result<SpanEquality> {
    let s = twisted_dipole(op)?;
    span_equal(op, &s, &Span::identity(op, &s.source())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_parse() {
        assert_eq!("F".parse::<Family>().unwrap(), Family::F);
        assert_eq!("thompson-V".parse::<Family>().unwrap(), Family::V);
        assert_eq!("F(3,2)".parse::<Family>().unwrap(), Family::Fnr(3, 2));
        assert!("G".parse::<Family>().is_err());
    }

    #[test]
    fn thompson_f_presentation() {
        let r = verify_presentation(Family::F, 3).unwrap();
        for c in &r.checks {
            assert!(c.pass, "{}: {}", c.relation, c.result);
        }
    }

    #[test]
    fn contexts_from_operads_infer_the_family() {
        for (op, fam) in [
            (builtins::thompson_f(), Family::F),
            (builtins::thompson_v(), Family::V),
            (builtins::braided_v(), Family::BV),
            (builtins::ribbon_v(), Family::RV),
        ] {
            assert_eq!(GroupContext::from_operad(op, 1).unwrap().family, fam);
        }
        let ctx = GroupContext::from_operad(builtins::thompson_f(), 1).unwrap();
        let a = ctx.word("x0^-1 x2 x0").unwrap();
        assert!(ctx.equal(&a, &ctx.word("x3").unwrap()).unwrap().is_equal());
        assert!(GroupContext::from_operad(builtins::squares_triangles(), 1).is_err());
    }

    #[test]
    fn words_match_the_conjugation_relation() {
        let ctx = GroupContext::new(Family::F).unwrap();
        let a = ctx.word("x0^-1 x2 x0").unwrap();
        let b = ctx.word("x3").unwrap();
        assert!(ctx.equal(&a, &b).unwrap().is_equal());
        assert!(!ctx.equal(&ctx.word("x0").unwrap(), &ctx.word("x1").unwrap()).unwrap().is_equal());
    }

    #[test]
    fn v_and_bv_relations() {
        for fam in [Family::V, Family::BV] {
            let r = verify_presentation(fam, 2).unwrap();
            for c in &r.checks {
                assert!(c.pass, "{fam}: {}: {}", c.relation, c.result);
            }
        }
    }

    #[test]
    fn ribbon_relation_and_negative_control() {
        let r = verify_presentation(Family::RV, 2).unwrap();
        for c in &r.checks {
            assert!(c.pass, "{}: {}", c.relation, c.result);
        }
        let free = builtins::ribbon_free();
        assert_eq!(twisted_dipole_is_trivial(&free).unwrap(), SpanEquality::Different);
    }

    #[test]
    fn higman_thompson() {
        for fam in [Family::Fnr(3, 2), Family::Vnr(3, 1)] {
            let r = verify_presentation(fam, 2).unwrap();
            for c in &r.checks {
                assert!(c.pass, "{fam}: {}: {}", c.relation, c.result);
            }
        }
    }
}
