//! Exhaustive checks of the operad axioms on bounded pools of operations.

use std::fmt;

use serde::Serialize;

use super::enumerate::{decorate, enumerate_ops, small_strands, DecorateOptions};
use super::model::Operad;
use super::op::Operation;
use crate::braid::Strands;
use crate::color::Flavor;
use crate::error::Result;

#[derive(Clone, Copy, Debug)]
pub struct AxiomOptions {
    /// Generator layers in the base pool.
    pub depth: usize,
    /// Largest degree in the base pool.
    pub max_degree: usize,
    pub decorate: DecorateOptions,
    /// Non-identity operations plugged into the inner level of an
    /// associativity triple. The outer level always has at most one, so the
    /// default of 1 covers the sequential and parallel partial-composition
    /// laws, which together with the unit law imply full associativity.
    pub inner_slots: usize,
}

impl Default for AxiomOptions {
    fn default() -> Self {
        Self { depth: 2, max_degree: 4, decorate: DecorateOptions::default(), inner_slots: 1 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Unit,
    Action,
    Associativity,
    EquivarianceOuter,
    EquivarianceInner,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Unit => "unit",
            Axiom::Action => "action",
            Axiom::Associativity => "associativity",
            Axiom::EquivarianceOuter => "equivariance (outer)",
            Axiom::EquivarianceInner => "equivariance (inner)",
        })
    }
}

/// A failing instance, printed with the operad's term syntax.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomWitness {
    pub axiom: Axiom,
    pub operations: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport {
    pub pool_size: usize,
    pub unit: usize,
    pub action: usize,
    pub associativity: usize,
    pub equivariance: usize,
    pub witness: Option<AxiomWitness>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.witness.is_none()
    }
}

struct Ctx<'a> {
    op: &'a Operad,
    report: AxiomReport,
}

impl Ctx<'_> {
    fn fail(&mut self, axiom: Axiom, ops: &[&Operation], lhs: &Operation, rhs: &Operation) {
        if self.report.witness.is_none() {
            self.report.witness = Some(AxiomWitness {
                axiom,
                operations: ops.iter().map(|o| self.op.show(o)).collect(),
                lhs: self.op.show(lhs),
                rhs: self.op.show(rhs),
            });
        }
    }

    fn done(&self) -> bool {
        self.report.witness.is_some()
    }
}

/// Tuples of operations for the inputs `colors`, identities except on at
/// most `slots` positions, which take non-identity entries of `pool`.
fn sparse_tuples(op: &Operad, inputs: &crate::ColorWord, pool: &[Operation], slots: usize) -> Vec<Vec<Operation>> {
    let ids: Vec<Operation> = inputs.iter().map(|&c| op.identity_op(c).expect("color")).collect();
    let mut out = vec![ids.clone()];
    let mut frontier = vec![(ids, 0usize)];
    for _ in 0..slots {
        let mut next = Vec::new();
        for (tuple, start) in &frontier {
            for i in *start..tuple.len() {
                for p in pool {
                    if p.output() == inputs[i] && *p != tuple[i] {
                        let mut t = tuple.clone();
                        t[i] = p.clone();
                        next.push((t, i + 1));
                    }
                }
            }
        }
        out.extend(next.iter().map(|(t, _)| t.clone()));
        frontier = next;
    }
    out
}

/// Checks unit, action, associativity and both equivariance laws on the
/// decorated operations of bounded depth and degree. Stops at the first
/// failure and reports it.
pub fn check_axioms(op: &Operad, opts: AxiomOptions) -> Result<AxiomReport> {
    let base = enumerate_ops(op, opts.max_degree, opts.depth);
    let pool = decorate(op, &base, opts.decorate);
    let small: Vec<Operation> = pool.iter().filter(|o| o.degree() <= 2).cloned().collect();
    let mut cx = Ctx { op, report: AxiomReport { pool_size: pool.len(), ..Default::default() } };

    for theta in &pool {
        let ids: Vec<Operation> = theta.inputs().iter().map(|&c| op.identity_op(c)).collect::<Result<_>>()?;
        let lhs = op.compose_owned(&ids, theta)?;
        cx.report.unit += 1;
        if &lhs != theta {
            cx.fail(Axiom::Unit, &[theta], &lhs, theta);
            return Ok(cx.report);
        }
        let rhs = op.compose_ops(&[theta], &op.identity_op(theta.output())?)?;
        cx.report.unit += 1;
        if &rhs != theta {
            cx.fail(Axiom::Unit, &[theta], &rhs, theta);
            return Ok(cx.report);
        }
    }

    if op.flavor() != Flavor::Planar {
        for theta in &pool {
            let xs = small_strands(op, theta.degree());
            for x in &xs {
                for y in &xs {
                    let lhs = op.act(x, &op.act(y, theta)?)?;
                    let rhs = op.act(&x.then(y), theta)?;
                    cx.report.action += 1;
                    if lhs != rhs {
                        cx.fail(Axiom::Action, &[theta], &lhs, &rhs);
                        return Ok(cx.report);
                    }
                }
            }
        }
    }

    for theta in &pool {
        for phis in sparse_tuples(op, &theta.inputs(), &small, opts.inner_slots) {
            let mid = op.compose_owned(&phis, theta)?;
            for psis in sparse_tuples(op, &mid.inputs(), &small, 1) {
                associativity(&mut cx, theta, &phis, &psis, &mid)?;
                if cx.done() {
                    return Ok(cx.report);
                }
            }
            if op.flavor() != Flavor::Planar {
                equivariance(&mut cx, theta, &phis, &mid)?;
                if cx.done() {
                    return Ok(cx.report);
                }
            }
        }
    }
    Ok(cx.report)
}

fn associativity(
    cx: &mut Ctx<'_>,
    theta: &Operation,
    phis: &[Operation],
    psis: &[Operation],
    mid: &Operation,
) -> Result<()> {
    let op = cx.op;
    let lhs = op.compose_owned(psis, mid)?;
    let mut start = 0;
    let mut inner = Vec::with_capacity(phis.len());
    for phi in phis {
        let n = phi.degree();
        inner.push(op.compose_owned(&psis[start..start + n], phi)?);
        start += n;
    }
    let rhs = op.compose_owned(&inner, theta)?;
    cx.report.associativity += 1;
    if lhs != rhs {
        let mut ops = vec![theta];
        ops.extend(phis.iter());
        ops.extend(psis.iter());
        cx.fail(Axiom::Associativity, &ops, &lhs, &rhs);
    }
    Ok(())
}

fn equivariance(cx: &mut Ctx<'_>, theta: &Operation, phis: &[Operation], mid: &Operation) -> Result<()> {
    let op = cx.op;
    let n = theta.degree();
    for x in small_strands(op, n).iter().skip(1) {
        // slot i of x·θ receives φ at the target of strand i
        let permuted: Vec<Operation> = (0..n).map(|i| phis[x.target(i)].clone()).collect();
        let mults: Vec<usize> = permuted.iter().map(Operation::degree).collect();
        let lhs = op.compose_owned(&permuted, &op.act(x, theta)?)?;
        let rhs = op.act(&x.block_expand(&mults), mid)?;
        cx.report.equivariance += 1;
        if lhs != rhs {
            let mut ops = vec![theta];
            ops.extend(phis.iter());
            cx.fail(Axiom::EquivarianceOuter, &ops, &lhs, &rhs);
            return Ok(());
        }
    }
    for (i, phi) in phis.iter().enumerate() {
        for y in small_strands(op, phi.degree()).iter().skip(1) {
            let mut acted = phis.to_vec();
            acted[i] = op.act(y, phi)?;
            let lhs = op.compose_owned(&acted, theta)?;
            let ys: Vec<Strands> = phis
                .iter()
                .enumerate()
                .map(|(k, p)| if k == i { y.clone() } else { op.strands_identity(p.degree()) })
                .collect();
            let total = ys.iter().skip(1).fold(ys[0].clone(), |acc, s| acc.tensor(s));
            let rhs = op.act(&total, mid)?;
            cx.report.equivariance += 1;
            if lhs != rhs {
                let mut ops = vec![theta];
                ops.extend(phis.iter());
                cx.fail(Axiom::EquivarianceInner, &ops, &lhs, &rhs);
                return Ok(());
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::builtins;

    fn quick() -> AxiomOptions {
        AxiomOptions { depth: 1, max_degree: 3, inner_slots: 1, ..Default::default() }
    }

    #[test]
    fn free_operads_pass() {
        for op in [builtins::thompson_f(), builtins::thompson_v(), builtins::braided_v()] {
            let r = check_axioms(&op, quick()).unwrap();
            assert!(r.ok(), "{}: {:?}", op.name(), r.witness);
            assert!(r.associativity > 0);
        }
    }

    #[test]
    fn ribbon_passes() {
        let r = check_axioms(&builtins::ribbon_v(), quick()).unwrap();
        assert!(r.ok(), "{:?}", r.witness);
    }

    #[test]
    fn mutated_table_is_caught() {
        let good = check_axioms(&builtins::binary_z2(false), quick()).unwrap();
        assert!(good.ok(), "{:?}", good.witness);
        let bad = check_axioms(&builtins::binary_z2(true), quick()).unwrap();
        let w = bad.witness.expect("incoherent table");
        assert_eq!(w.axiom, Axiom::Associativity);
    }
}
