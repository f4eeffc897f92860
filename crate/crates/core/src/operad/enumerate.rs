//! Enumeration of operations by tree depth and degree.

use std::collections::BTreeSet;

use super::model::Operad;
use super::op::Operation;
use crate::color::Flavor;

/// Result of a bounded enumeration.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub ops: Vec<Operation>,
    /// Set when the cap stopped the search early.
    pub truncated: bool,
}

pub const DEFAULT_CAP: usize = 200_000;

/// All transformation-free operations built from at most `max_depth` layers
/// of generators with at most `max_degree` inputs, identities included.
/// Distinct trees that are equal in the operad appear once.
pub fn enumerate_ops(op: &Operad, max_degree: usize, max_depth: usize) -> Vec<Operation> {
    enumerate_ops_capped(op, max_degree, max_depth, DEFAULT_CAP).ops
}

pub fn enumerate_ops_capped(op: &Operad, max_degree: usize, max_depth: usize, cap: usize) -> Enumeration {
    let ncolors = op.color_count();
    let ids: Vec<Operation> =
        (0..ncolors).map(|c| op.identity_op(crate::Color(c as u16)).expect("color exists")).collect();
    let mut all: BTreeSet<Operation> = ids.iter().cloned().collect();
    let mut truncated = false;
    for _ in 0..max_depth {
        let mut by_color: Vec<Vec<Operation>> = vec![Vec::new(); ncolors];
        for o in &all {
            by_color[o.output().0 as usize].push(o.clone());
        }
        let mut next = all.clone();
        for g in 0..op.generators().len() as u32 {
            let gen = op.generator(g);
            if gen.arity() > max_degree {
                continue;
            }
            let theta = op.generator_op(g);
            let pools: Vec<&Vec<Operation>> = gen.inputs.iter().map(|c| &by_color[c.0 as usize]).collect();
            let mut chosen = Vec::with_capacity(pools.len());
            let mut budget = Budget { cap, truncated: &mut truncated };
            fill(op, &theta, &pools, max_degree, 0, &mut chosen, &mut next, &mut budget);
        }
        if next.len() == all.len() {
            break;
        }
        all = next;
        if truncated {
            break;
        }
    }
    Enumeration { ops: all.into_iter().collect(), truncated }
}

struct Budget<'a> {
    cap: usize,
    truncated: &'a mut bool,
}

#[allow(clippy::too_many_arguments)]
fn fill(
    op: &Operad,
    theta: &Operation,
    pools: &[&Vec<Operation>],
    max_degree: usize,
    used: usize,
    chosen: &mut Vec<Operation>,
    out: &mut BTreeSet<Operation>,
    budget: &mut Budget<'_>,
) {
    if *budget.truncated {
        return;
    }
    let k = chosen.len();
    if k == pools.len() {
        let composed = op.compose_owned(chosen, theta).expect("types match by construction");
        out.insert(composed);
        if out.len() >= budget.cap {
            *budget.truncated = true;
        }
        return;
    }
    // every remaining slot takes at least one input
    let remaining = pools.len() - k - 1;
    for phi in pools[k] {
        if used + phi.degree() + remaining > max_degree {
            continue;
        }
        chosen.push(phi.clone());
        fill(op, theta, pools, max_degree, used + phi.degree(), chosen, out, budget);
        chosen.pop();
    }
}

/// How [`decorate`] adds transformations.
#[derive(Clone, Copy, Debug)]
pub struct DecorateOptions {
    /// Twists are drawn from `-radius..=radius`.
    pub radius: i64,
    /// Include the single-generator braids or transpositions as prefixes.
    pub prefixes: bool,
    /// Include one degree-1 element on a single input or on the output.
    pub labels: bool,
}

impl Default for DecorateOptions {
    fn default() -> Self {
        Self { radius: 1, prefixes: true, labels: true }
    }
}

/// Single-letter braids (or transpositions) on `n` strands, identity first.
pub fn small_strands(op: &Operad, n: usize) -> Vec<crate::braid::Strands> {
    let mut v = vec![op.strands_identity(n)];
    if op.flavor() == Flavor::Planar {
        return v;
    }
    for k in 0..n.saturating_sub(1) {
        v.push(crate::braid::Strands::generator(op.flavor(), n, k, true));
        if op.flavor() == Flavor::Braided {
            v.push(crate::braid::Strands::generator(op.flavor(), n, k, false));
        }
    }
    v
}

/// Variants of each operation with a short prefix and at most one
/// non-identity degree-1 element, on one input or on the output.
pub fn decorate(op: &Operad, base: &[Operation], opts: DecorateOptions) -> Vec<Operation> {
    let mut out = BTreeSet::new();
    for theta in base {
        let n = theta.degree();
        let prefixes = if opts.prefixes { small_strands(op, n) } else { vec![op.strands_identity(n)] };
        let mut labelled = vec![theta.clone()];
        if opts.labels {
            for i in 0..n {
                let c = theta.inputs()[i];
                for d in op.degree_one_ops(c, opts.radius) {
                    if d.degree() == 1 && d != op.identity_op(d.output()).unwrap() {
                        if let Ok(x) = op.partial_compose(&d, theta, i) {
                            labelled.push(x);
                        }
                    }
                }
            }
            if n > 1 {
                for c in 0..op.color_count() {
                    for d in op.degree_one_ops(crate::Color(c as u16), opts.radius) {
                        if d.inputs()[0] == theta.output() && d != op.identity_op(d.output()).unwrap() {
                            if let Ok(x) = op.compose_ops(&[theta], &d) {
                                labelled.push(x);
                            }
                        }
                    }
                }
            }
        }
        for l in labelled {
            for x in &prefixes {
                if x.is_identity() {
                    out.insert(l.clone());
                } else if let Ok(y) = op.act(x, &l) {
                    out.insert(y);
                }
            }
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::builtins;

    #[test]
    fn binary_trees_by_depth() {
        let op = builtins::thompson_f();
        // identity, caret, two combs, balanced tree
        assert_eq!(enumerate_ops(&op, 4, 2).len(), 5);
        // 1 + (1+1)^2 = 5 trees of depth <= 2; depth 3 gives 1 + 5^2 = 26
        assert_eq!(enumerate_ops(&op, 16, 3).len(), 26);
    }

    #[test]
    fn cube_merges_equal_trees() {
        let op = builtins::cube(1, &[vec![2, 4]], None).unwrap();
        let ops = enumerate_ops(&op, 4, 2);
        // C2(C2,C2) equals C4
        let c4 = op.generator_op(op.generator_id("C4").unwrap());
        assert_eq!(ops.iter().filter(|o| **o == c4).count(), 1);
        assert!(ops.iter().all(|o| o.degree() <= 4));
    }

    #[test]
    fn cap_truncates() {
        let op = builtins::thompson_v();
        let e = enumerate_ops_capped(&op, 64, 4, 10);
        assert!(e.truncated);
    }

    #[test]
    fn decorations_of_caret_in_rv() {
        let op = builtins::ribbon_v();
        let caret = op.generator_op(0);
        let d = decorate(&op, &[caret], DecorateOptions::default());
        // 7 label choices (none, ±1 on a leaf, ±1 on the output) times 3 prefixes
        assert_eq!(d.len(), 21);
    }
}
