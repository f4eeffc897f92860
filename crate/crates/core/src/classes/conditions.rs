//! Checks of the hypotheses around transformation classes: the generator
//! conditions, joins of cube classes, invariance under degree-1 operations,
//! square filling through upper bounds and cancellation.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{build_class_poset, build_class_poset_with, classify_classes, class_leq, class_of, ClassOptions, ClassPoset};
use crate::arrows::OperadArrow;
use crate::color::Color;
use crate::error::{Error, Result};
use crate::fractions::fill::{chain, fill_ops, FillOptions};
use crate::fractions::equalize;
use crate::operad::enumerate::{decorate, enumerate_ops, DecorateOptions};
use crate::operad::{Operad, Operation};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Self { title: title.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Degree-1 operations out of `c` (twists truncated to `radius`).
pub fn degree_one_from(op: &Operad, c: Color, radius: i64) -> Vec<Operation> {
    (0..op.color_count())
        .flat_map(|t| op.degree_one_ops(Color(t as u16), radius))
        .filter(|g| g.inputs()[0] == c)
        .collect()
}

/// Whether `n` lies in the monoid generated by `ns`.
fn in_monoid(ns: &[u64], n: u64, memo: &mut BTreeMap<u64, bool>) -> bool {
    if n == 1 {
        return true;
    }
    if let Some(&b) = memo.get(&n) {
        return b;
    }
    let b = ns.iter().any(|&k| k > 1 && n % k == 0 && in_monoid(ns, n / k, memo));
    memo.insert(n, b);
    b
}

/// No number of `ns` is a product of the others.
pub fn check_b1(ns: &[u64]) -> Check {
    for &n in ns {
        let others: Vec<u64> = ns.iter().copied().filter(|&k| k != n).collect();
        if !others.is_empty() && in_monoid(&others, n, &mut BTreeMap::new()) {
            return Check::new("B1", false, format!("{n} is a product of other numbers in {ns:?}"));
        }
    }
    Check::new("B1", true, format!("no number in {ns:?} is a product of the others"))
}

/// Whenever `n` in the monoid is divisible (in the monoid) by pairwise
/// distinct `n_1, …, n_k`, it is divisible by their product. Searched over
/// monoid elements up to `limit`.
pub fn check_b2(ns: &[u64], limit: u64) -> Check {
    let mut memo = BTreeMap::new();
    let mut distinct: Vec<u64> = ns.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    for n in 2..=limit {
        if !in_monoid(&distinct, n, &mut memo) {
            continue;
        }
        let divides = |k: u64, memo: &mut BTreeMap<u64, bool>| n % k == 0 && in_monoid(&distinct, n / k, memo);
        let dividing: Vec<u64> = distinct.iter().copied().filter(|&k| divides(k, &mut memo)).collect();
        let m = dividing.len();
        for mask in 1u32..(1 << m) {
            if mask.count_ones() < 2 {
                continue;
            }
            let subset: Vec<u64> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| dividing[i]).collect();
            let prod = subset.iter().try_fold(1u64, |a, &b| a.checked_mul(b));
            let ok = prod.is_some_and(|p| divides(p, &mut memo));
            if !ok {
                return Check::new(
                    "B2",
                    false,
                    format!("{n} is divisible by each of {subset:?} but not by their product"),
                );
            }
        }
    }
    Check::new("B2", true, format!("holds for every element of <{ns:?}> up to {limit}"))
}

/// Witness number of a failed B2 check.
pub fn b2_witness(check: &Check) -> Option<u64> {
    if check.passed {
        return None;
    }
    check.detail.split_whitespace().next()?.parse().ok()
}

/// Generator conditions: (V1) generator classes are pairwise incomparable,
/// (V2) a generator followed by a degree-1 operation is again a generator up
/// to transformation, and for cube operads (B1), (B2) on each axis.
pub fn check_generator_conditions(op: &Operad, twist_radius: i64) -> Result<Report> {
    let mut report = Report::new(format!("generator conditions for {}", op.name()));
    let gens: Vec<Operation> = (0..op.generators().len() as u32).map(|g| op.generator_op(g)).collect();
    let keys: Vec<_> = gens.iter().map(|g| op.class_key(g)).collect();
    let mut v1 = Check::new("V1", true, format!("{} generator classes pairwise incomparable", gens.len()));
    'outer: for i in 0..gens.len() {
        for j in 0..gens.len() {
            if i != j && class_leq(op, &gens[i], &gens[j], None)? {
                v1 = Check::new(
                    "V1",
                    false,
                    format!("{} <= {}", op.generator(i as u32).name, op.generator(j as u32).name),
                );
                break 'outer;
            }
        }
    }
    report.push(v1);
    let mut v2 = Check::new("V2", true, String::new());
    let mut count = 0;
    'v2: for (i, g) in gens.iter().enumerate() {
        for gamma in degree_one_from(op, g.output(), twist_radius) {
            count += 1;
            let moved = op.compose_ops(&[g], &gamma)?;
            if !keys.contains(&op.class_key(&moved)) {
                v2 = Check::new(
                    "V2",
                    false,
                    format!("{} followed by {} is no generator class", op.generator(i as u32).name, op.show(&gamma)),
                );
                break 'v2;
            }
        }
    }
    if v2.passed {
        v2.detail = format!("{count} products of a generator with a degree-1 operation stay generator classes");
    }
    report.push(v2);
    if let Some(cube) = op.geometry().and_then(|g| g.cube.as_ref()) {
        for (axis, ns) in cube.n.iter().enumerate() {
            let mut b1 = check_b1(ns);
            b1.name = format!("B1 axis {}", axis + 1);
            report.push(b1);
            let limit = ns.iter().product::<u64>().saturating_mul(ns.iter().max().copied().unwrap_or(1)).min(1_000_000);
            let mut b2 = check_b2(ns, limit.max(64));
            b2.name = format!("B2 axis {}", axis + 1);
            report.push(b2);
        }
    }
    Ok(report)
}

/// The class `Θ_T` of a cube operad: for each axis `j` and each `n ∈ T_j`,
/// an `n`-cut in direction `j` on every brick.
pub fn theta_class(op: &Operad, t: &[Vec<u64>]) -> Result<Operation> {
    let cube = op.geometry().and_then(|g| g.cube.as_ref()).ok_or_else(|| Error::invalid("not a cube operad"))?;
    if t.len() != cube.d {
        return Err(Error::mismatch(format!("T has {} axes, the cube {}", t.len(), cube.d)));
    }
    if t.iter().all(Vec::is_empty) {
        return Err(Error::invalid("T must be nonempty on some axis"));
    }
    let mut theta = op.identity_op(Color(0))?;
    for (axis, ns) in t.iter().enumerate() {
        for &n in ns {
            let name = if cube.d == 1 { format!("C{n}") } else { format!("C{n}@{}", axis + 1) };
            let g = op.generator_op(op.generator_id(&name)?);
            let phis = vec![g; theta.degree()];
            theta = op.compose_owned(&phis, &theta)?;
        }
    }
    Ok(theta)
}

fn union(t: &[Vec<u64>], u: &[Vec<u64>]) -> Vec<Vec<u64>> {
    t.iter()
        .zip(u)
        .map(|(a, b)| {
            let mut v: Vec<u64> = a.iter().chain(b).copied().collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect()
}

/// Confirms that `Θ_{T∪T'}` is the least class above `Θ_T` and `Θ_{T'}`
/// among all classes up to its degree.
pub fn verify_theta_join(op: &Operad, t: &[Vec<u64>], t2: &[Vec<u64>]) -> Result<Report> {
    let a = theta_class(op, t)?;
    let b = theta_class(op, t2)?;
    let j = theta_class(op, &union(t, t2))?;
    let cp = build_class_poset(op, j.degree().max(2))?;
    let mut report = Report::new(format!("join of {t:?} and {t2:?}"));
    let (ia, ib, ij) = match (cp.find(op, &a), cp.find(op, &b), cp.find(op, &j)) {
        (Some(x), Some(y), Some(z)) => (x, y, z),
        _ => return Err(Error::Resource("classes missing from the enumeration".into())),
    };
    let mub = cp.poset.minimal_upper_bounds(ia, ib);
    report.push(Check::new(
        "unique minimal upper bound",
        mub.len() == 1 && mub.contains(&ij),
        format!("minimal upper bounds {:?}, expected {}", cp.names(&mub), cp.classes[ij].name),
    ));
    let uppers: Vec<usize> =
        (0..cp.len()).filter(|&z| cp.poset.leq(ia, z) && cp.poset.leq(ib, z)).collect();
    let smallest = uppers.iter().all(|&z| cp.poset.leq(ij, z));
    report.push(Check::new(
        "smallest",
        smallest,
        format!("{} common upper bounds of degree <= {}", uppers.len(), cp.degree_bound),
    ));
    Ok(report)
}

/// Whether (very) elementary status is invariant under `[θ] ↦ [θ*γ]` for
/// every class in the truncation and every degree-1 `γ`.
pub fn check_prop_right_action(op: &Operad, cp: &ClassPoset, twist_radius: i64) -> Result<Report> {
    let cl = classify_classes(cp);
    let mut report = Report::new(format!("right action of degree-1 operations on {}", op.name()));
    let mut pairs = 0;
    let mut missing = 0;
    let mut bad = None;
    for (i, c) in cp.classes.iter().enumerate() {
        for gamma in degree_one_from(op, c.output, twist_radius) {
            let moved = op.compose_ops(&[&c.representative], &gamma)?;
            let Some(k) = cp.find(op, &moved) else {
                missing += 1;
                continue;
            };
            pairs += 1;
            let same = cl.very_elementary.contains(&i) == cl.very_elementary.contains(&k)
                && cl.elementary.contains(&i) == cl.elementary.contains(&k);
            if !same && bad.is_none() {
                bad = Some(format!("{} versus {} after {}", c.name, cp.classes[k].name, op.show(&gamma)));
            }
        }
    }
    report.push(Check::new(
        "VE and E invariant",
        bad.is_none(),
        bad.unwrap_or_else(|| format!("{pairs} class and degree-1 pairs")),
    ));
    report.push(Check::new(
        "closed under the action",
        missing == 0,
        format!("{missing} moved classes outside the truncation"),
    ));
    Ok(report)
}

/// Square filling through upper bounds: every pair of same-color classes
/// in the truncation has a common upper bound. Pairs without one inside the
/// truncation get a witness from a constructive fill, checked against the
/// order.
pub fn square_filling_criterion(op: &Operad, cp: &ClassPoset) -> Result<Check> {
    let mut inside = 0;
    let mut witnessed = 0;
    let mut ladder = ChainLadder::default();
    for x in 0..cp.len() {
        for y in x + 1..cp.len() {
            let (a, b) = (&cp.classes[x], &cp.classes[y]);
            if a.output != b.output {
                continue;
            }
            if !cp.poset.minimal_upper_bounds(x, y).is_empty() {
                inside += 1;
                continue;
            }
            let ok = match (&a.representative, &b.representative) {
                (Operation::Affine(_), Operation::Affine(_)) => {
                    ladder.round(op, x, &a.representative)?.is_some() && ladder.round(op, y, &b.representative)?.is_some()
                }
                _ => match fill_ops(op, &a.representative, &b.representative, FillOptions::default()) {
                    Ok((p, _)) => {
                        let top = p.compose(op, &OperadArrow::from_op(op, a.representative.clone()))?;
                        let t = &top.ops()[0];
                        class_leq(op, &a.representative, t, None)? && class_leq(op, &b.representative, t, None)?
                    }
                    Err(Error::NoFill(_)) => false,
                    Err(e) => return Err(e),
                },
            };
            if !ok {
                return Ok(Check::new("square filling", false, format!("{} and {} have no upper bound", a.name, b.name)));
            }
            witnessed += 1;
        }
    }
    Ok(Check::new(
        "square filling",
        true,
        format!(
            "{inside} pairs meet within degree {}, {witnessed} more above it through a fill",
            cp.degree_bound
        ),
    ))
}

/// Cofinal chain elements per color, each checked to refine the previous,
/// and the first element above each class. Two classes of one color then
/// share the later of their two elements as an upper bound.
#[derive(Default)]
struct ChainLadder {
    rungs: BTreeMap<Color, Vec<Operation>>,
    first: BTreeMap<usize, Option<usize>>,
}

impl ChainLadder {
    fn rung(&mut self, op: &Operad, c: Color, r: usize) -> Result<Option<Operation>> {
        let opts = FillOptions::default();
        let rungs = self.rungs.entry(c).or_default();
        while rungs.len() <= r {
            let k = rungs.len();
            let next = match chain(op, c, k, opts.max_pieces) {
                Ok(t) => Operation::Affine(t),
                Err(Error::Resource(_)) => return Ok(None),
                Err(e) => return Err(e),
            };
            if let Some(prev) = rungs.last() {
                if !class_leq(op, prev, &next, None)? {
                    return Err(Error::invalid(format!("chain element {k} does not refine its predecessor")));
                }
            }
            rungs.push(next);
        }
        Ok(Some(rungs[r].clone()))
    }

    fn round(&mut self, op: &Operad, id: usize, theta: &Operation) -> Result<Option<usize>> {
        if let Some(r) = self.first.get(&id) {
            return Ok(*r);
        }
        let mut found = None;
        for r in 0..=FillOptions::default().max_rounds {
            match self.rung(op, theta.output(), r)? {
                Some(t) if class_leq(op, theta, &t, None)? => {
                    found = Some(r);
                    break;
                }
                Some(_) => continue,
                None => break,
            }
        }
        self.first.insert(id, found);
        Ok(found)
    }
}

/// Left and right cancellation on small arrows: `ω·f = ω·g` and `f·a = g·a`
/// both force `f = g`, and equalization never merges distinct arrows.
pub fn cancellation_spot_check(op: &Operad, max_degree: usize, cap: usize) -> Result<Check> {
    let base = enumerate_ops(op, max_degree, 2);
    let opts = DecorateOptions { radius: 1, prefixes: true, labels: true };
    let pool = decorate(op, &base, opts);
    let mut by_io: BTreeMap<(Vec<Color>, Color), Vec<&Operation>> = BTreeMap::new();
    for p in &pool {
        by_io.entry((p.inputs().iter().copied().collect(), p.output())).or_default().push(p);
    }
    let by_output = |c: Color| pool.iter().filter(move |p| p.output() == c && p.degree() <= 2);
    let mut instances = 0usize;
    // left: ω then f versus ω then g, with ω one operation per input of f
    for ((ins, _), ops) in &by_io {
        for (i, f) in ops.iter().enumerate() {
            for g in &ops[i + 1..] {
                let (fa, ga) = (OperadArrow::from_op(op, (*f).clone()), OperadArrow::from_op(op, (*g).clone()));
                if equalize(op, &fa, &ga)?.is_some() {
                    return Ok(Check::new(
                        "cancellation",
                        false,
                        format!("{} and {} are equalized", op.show(f), op.show(g)),
                    ));
                }
                for k in 0..ins.len() {
                    for w in by_output(ins[k]) {
                        if instances >= cap {
                            break;
                        }
                        let factors: Vec<Operation> = ins
                            .iter()
                            .enumerate()
                            .map(|(m, &c)| if m == k { Ok(w.clone()) } else { op.identity_op(c) })
                            .collect::<Result<_>>()?;
                        let omega = OperadArrow::from_ops(op, factors);
                        instances += 1;
                        if omega.compose(op, &fa)? == omega.compose(op, &ga)? {
                            return Ok(Check::new(
                                "cancellation",
                                false,
                                format!("{} cancels {} and {} on the left", op.show(w), op.show(f), op.show(g)),
                            ));
                        }
                    }
                }
            }
        }
    }
    // right: two operations side by side, then a binary operation
    let binary: Vec<&Operation> = pool.iter().filter(|p| p.degree() == 2).collect();
    let small: Vec<&Operation> = pool.iter().filter(|p| p.degree() <= 3).collect();
    'right: for a in &binary {
        let (c0, c1) = (a.inputs()[0], a.inputs()[1]);
        let firsts: Vec<&&Operation> = small.iter().filter(|p| p.output() == c0).collect();
        let seconds: Vec<&&Operation> = small.iter().filter(|p| p.output() == c1).collect();
        let aa = OperadArrow::from_op(op, (*a).clone());
        let mut seen: BTreeMap<OperadArrow, OperadArrow> = BTreeMap::new();
        for p in &firsts {
            for q in &seconds {
                if instances >= cap {
                    break 'right;
                }
                instances += 1;
                let f = OperadArrow::from_ops(op, vec![(**p).clone(), (**q).clone()]);
                let fa = f.compose(op, &aa)?;
                if let Some(g) = seen.get(&fa) {
                    if g.domain() == f.domain() && *g != f {
                        return Ok(Check::new(
                            "cancellation",
                            false,
                            format!("{} cancels {} and {} on the right", op.show(a), f, g),
                        ));
                    }
                } else {
                    seen.insert(fa, f);
                }
            }
        }
    }
    Ok(Check::new("cancellation", true, format!("{instances} instances from {} operations", pool.len())))
}

/// All checks needed before the finiteness theorem applies, at one bound.
pub fn hypothesis_audit(op: &Operad, bound: usize, opts: Option<ClassOptions>) -> Result<Report> {
    let cp = build_class_poset_with(op, opts.unwrap_or_else(|| ClassOptions::new(bound)))?;
    let cl = classify_classes(&cp);
    let mut report = Report::new(format!("hypotheses for {}", op.name()));
    report.push(square_filling_criterion(op, &cp)?);
    report.push(cancellation_spot_check(op, 4, 20_000)?);
    report.push(Check::new(
        "finite type",
        cl.saturated,
        format!("|E| = {} ({}), saturated = {}", cl.elementary.len(), cl.e_names.join(", "), cl.saturated),
    ));
    let prof = super::finiteness_profile(op, &cp, &cl, 12);
    report.push(Check::new(
        "color-tame",
        prof.m_c.bound().is_some(),
        format!("m_C = {:?}", prof.m_c),
    ));
    Ok(report)
}

/// The classes of a set of operations, by name.
pub fn class_names(op: &Operad, ops: &[Operation]) -> BTreeSet<String> {
    ops.iter().map(|o| class_of(op, o).name).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::builtins;

    #[test]
    fn b2_fails_at_42() {
        assert!(check_b1(&[2, 6, 7, 21]).passed);
        let b2 = check_b2(&[2, 6, 7, 21], 2000);
        assert!(!b2.passed);
        assert_eq!(b2_witness(&b2), Some(42));
        assert!(check_b2(&[2, 3], 2000).passed);
        assert!(!check_b1(&[2, 4]).passed);
    }

    #[test]
    fn cube_conditions() {
        let op = builtins::cube(1, &[vec![2, 3]], None).unwrap();
        let r = check_generator_conditions(&op, 1).unwrap();
        assert!(r.ok(), "{r:?}");
        let bad = builtins::cube(1, &[vec![2, 6, 7, 21]], None).unwrap();
        let r = check_generator_conditions(&bad, 1).unwrap();
        let b2 = r.checks.iter().find(|c| c.name.starts_with("B2")).unwrap();
        assert_eq!(b2_witness(b2), Some(42));
    }

    #[test]
    fn squares_and_triangles_generators() {
        let op = builtins::squares_triangles();
        let r = check_generator_conditions(&op, 1).unwrap();
        assert!(r.ok(), "{r:?}");
    }

    #[test]
    fn twists_above_a_caret_break_v2_without_the_rewrite() {
        assert!(check_generator_conditions(&builtins::ribbon_v(), 2).unwrap().ok());
        let r = check_generator_conditions(&builtins::ribbon_free(), 2).unwrap();
        assert!(!r.checks.iter().find(|c| c.name == "V2").unwrap().passed);
    }

    #[test]
    fn joins_of_cube_classes() {
        let op = builtins::cube(1, &[vec![2, 3]], None).unwrap();
        assert!(verify_theta_join(&op, &[vec![2]], &[vec![3]]).unwrap().ok());
        assert!(verify_theta_join(&op, &[vec![2]], &[vec![2]]).unwrap().ok());
        let sq = builtins::cube(2, &[vec![2], vec![2]], None).unwrap();
        let r = verify_theta_join(&sq, &[vec![2], vec![]], &[vec![], vec![2]]).unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!(theta_class(&sq, &[vec![2], vec![2]]).unwrap().degree(), 4);
    }

    #[test]
    fn right_action_keeps_status() {
        for op in [builtins::ribbon_v(), builtins::squares_triangles()] {
            let opts = if op.is_geometric() { ClassOptions::new(16).depth(2) } else { ClassOptions::new(4) };
            let cp = build_class_poset_with(&op, opts).unwrap();
            let r = check_prop_right_action(&op, &cp, 3).unwrap();
            assert!(r.ok(), "{r:?}");
        }
    }

    #[test]
    fn builtins_pass_the_audit() {
        for name in ["F", "V", "BV", "RV"] {
            let op = builtins::builtin(name).unwrap();
            let r = hypothesis_audit(&op, 6, None).unwrap();
            assert!(r.ok(), "{name}: {r:?}");
        }
    }

    #[test]
    fn cancellation_holds_for_cubes() {
        let op = builtins::cube(1, &[vec![2, 3]], None).unwrap();
        assert!(cancellation_spot_check(&op, 3, 5000).unwrap().passed);
    }
}
