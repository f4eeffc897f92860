//! Transformation classes, their graded poset and the (very) elementary
//! classes.
//!
//! A class is an operation up to transformations on its inputs. Tree
//! operations are classified by their bare tree, geometric ones by their
//! pieces up to the symmetries of each piece.

mod conditions;
mod finiteness;
mod spine;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::color::{Color, Flavor};
use crate::error::{Error, Result};
use crate::operad::affine::AffineOp;
use crate::operad::enumerate::{enumerate_ops_capped, DEFAULT_CAP};
use crate::operad::{ClassKey, Operad, Operation};

pub use conditions::{
    b2_witness, cancellation_spot_check, check_b1, check_b2, check_generator_conditions, check_prop_right_action,
    class_names, degree_one_from, hypothesis_audit, square_filling_criterion, theta_class, verify_theta_join, Check,
    Report,
};
pub use finiteness::{
    color_tame_reduced_words, finiteness_profile, mu, nu, ColorTameness, FinitenessProfile, Tameness,
};
pub use spine::{
    greatest_below, has_spine_property, spine_bruteforce, spine_construct, spine_levels, GradedPoset,
    BRUTEFORCE_LIMIT,
};

#[derive(Clone, Debug)]
pub struct TransformationClass {
    pub key: ClassKey,
    pub representative: Operation,
    pub degree: usize,
    pub output: Color,
    pub name: String,
}

/// The class of `θ`.
pub fn class_of(op: &Operad, theta: &Operation) -> TransformationClass {
    let key = op.class_key(theta);
    let representative = op.class_representative(&key);
    let name = class_name(op, &key, &representative);
    TransformationClass { degree: theta.degree(), output: theta.output(), key, representative, name }
}

fn class_name(op: &Operad, key: &ClassKey, rep: &Operation) -> String {
    for g in 0..op.generators().len() as u32 {
        if op.class_key(&op.generator_op(g)) == *key {
            return op.generator(g).name.clone();
        }
    }
    match rep {
        Operation::Tree(_) => op.show(rep),
        Operation::Affine(a) => format!("{}:{}", op.color_name(a.output()), a.degree()),
    }
}

/// `A ≤ B`: some `(ψ_1, …, ψ_n) * a` lies in the class of `b`.
///
/// For tree operations this says the bare tree of `a` is an upper part of
/// that of `b`. For geometric operations every piece of `b` must lie in a
/// piece of `a`; when `known` is given, the part of `b` inside each piece of
/// `a` must also be (up to a symmetry) one of the known classes.
pub fn class_leq(op: &Operad, a: &Operation, b: &Operation, known: Option<&BTreeSet<ClassKey>>) -> Result<bool> {
    if a.output() != b.output() {
        return Ok(false);
    }
    match (a, b) {
        (Operation::Tree(x), Operation::Tree(y)) => Ok(x.tree().is_upper_part_of(y.tree())),
        (Operation::Affine(x), Operation::Affine(y)) => affine_leq(op, x, y, known),
        _ => Err(Error::mismatch("tree and geometric operations do not mix")),
    }
}

fn affine_leq(op: &Operad, a: &AffineOp, b: &AffineOp, known: Option<&BTreeSet<ClassKey>>) -> Result<bool> {
    if a.degree() > b.degree() {
        return Ok(false);
    }
    let shapes = &op.geometry().ok_or_else(|| Error::invalid("operad has no geometry"))?.shapes;
    let outer = a.regions(shapes);
    let inner = b.regions(shapes);
    let Some(owner) = crate::fractions::assign_pieces(&outer, &inner) else {
        return Ok(false);
    };
    if op.flavor() == Flavor::Planar && owner.windows(2).any(|w| w[0] > w[1]) {
        return Ok(false);
    }
    let Some(known) = known else {
        return Ok(true);
    };
    for (i, (c, m)) in a.pieces().iter().enumerate() {
        let minv = m.inverse()?;
        let part: Vec<(Color, _)> = b
            .pieces()
            .iter()
            .zip(&owner)
            .filter(|(_, &o)| o == i)
            .map(|((c2, q), _)| (*c2, minv.after(q)))
            .collect();
        if part.len() < 2 {
            continue;
        }
        let member = op.symmetries(*c).iter().any(|g| {
            let turned = AffineOp::new(*c, part.iter().map(|(c2, q)| (*c2, g.after(q))).collect());
            known.contains(&op.class_key(&Operation::Affine(turned)))
        });
        if !member {
            return Ok(false);
        }
    }
    Ok(true)
}

/// How a class poset is truncated.
#[derive(Clone, Copy, Debug)]
pub struct ClassOptions {
    pub degree_bound: usize,
    /// Layers of generators in the enumeration; `None` means enough to reach
    /// every degree up to the bound.
    pub depth_bound: Option<usize>,
    pub cap: usize,
}

impl ClassOptions {
    pub fn new(degree_bound: usize) -> Self {
        Self { degree_bound, depth_bound: None, cap: DEFAULT_CAP }
    }

    pub fn depth(mut self, depth: usize) -> Self {
        self.depth_bound = Some(depth);
        self
    }
}

/// The higher-degree classes up to a degree bound, ordered.
#[derive(Clone, Debug)]
pub struct ClassPoset {
    pub degree_bound: usize,
    pub classes: Vec<TransformationClass>,
    pub poset: GradedPoset,
    /// The enumeration hit its cap.
    pub truncated: bool,
    /// The depth bound may hide classes of admissible degree.
    pub depth_limited: bool,
}

pub fn build_class_poset(op: &Operad, degree_bound: usize) -> Result<ClassPoset> {
    build_class_poset_with(op, ClassOptions::new(degree_bound))
}

pub fn build_class_poset_with(op: &Operad, opts: ClassOptions) -> Result<ClassPoset> {
    if opts.degree_bound < 2 {
        return Err(Error::invalid("the degree bound must be at least 2"));
    }
    let min_arity = op.generators().iter().map(|g| g.arity()).min().unwrap_or(2).max(2);
    let full_depth = (opts.degree_bound - 1) / (min_arity - 1);
    let depth = opts.depth_bound.unwrap_or(full_depth);
    let en = enumerate_ops_capped(op, opts.degree_bound, depth, opts.cap);
    let mut by_key: BTreeMap<ClassKey, Operation> = BTreeMap::new();
    for theta in en.ops.into_iter().filter(|t| t.degree() >= 2) {
        by_key.entry(op.class_key(&theta)).or_insert(theta);
    }
    let mut classes: Vec<TransformationClass> = by_key.values().map(|t| class_of(op, t)).collect();
    classes.sort_by(|a, b| (a.output, a.degree).cmp(&(b.output, b.degree)).then_with(|| a.key.cmp(&b.key)));
    // unnamed classes get an index within their color and degree
    let mut seen: BTreeMap<(Color, usize), usize> = BTreeMap::new();
    for c in classes.iter_mut() {
        if c.name.contains(':') {
            let k = seen.entry((c.output, c.degree)).or_insert(0);
            *k += 1;
            c.name = format!("{}.{}", c.name, k);
        }
    }
    let known: BTreeSet<ClassKey> = classes.iter().map(|c| c.key.clone()).collect();
    let n = classes.len();
    let mut leq = vec![vec![false; n]; n];
    for x in 0..n {
        leq[x][x] = true;
        for y in 0..n {
            let (a, b) = (&classes[x], &classes[y]);
            if a.output == b.output && a.degree < b.degree {
                leq[x][y] = class_leq(op, &a.representative, &b.representative, Some(&known))?;
            }
        }
    }
    let degrees = classes.iter().map(|c| c.degree).collect();
    let poset = GradedPoset::from_matrix(degrees, leq)?;
    Ok(ClassPoset {
        degree_bound: opts.degree_bound,
        classes,
        poset,
        truncated: en.truncated,
        depth_limited: depth < full_depth,
    })
}

impl ClassPoset {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn index_of(&self, key: &ClassKey) -> Option<usize> {
        self.classes.iter().position(|c| &c.key == key)
    }

    pub fn find(&self, op: &Operad, theta: &Operation) -> Option<usize> {
        self.index_of(&op.class_key(theta))
    }

    pub fn names(&self, set: &BTreeSet<usize>) -> Vec<String> {
        set.iter().map(|&i| self.classes[i].name.clone()).collect()
    }

    /// Pairs `(x, y)` of distinct same-color classes with no upper bound in
    /// the truncation.
    pub fn unbounded_pairs(&self, among: &BTreeSet<usize>) -> Vec<(usize, usize)> {
        let v: Vec<usize> = among.iter().copied().collect();
        let mut out = Vec::new();
        for (i, &x) in v.iter().enumerate() {
            for &y in &v[i + 1..] {
                if self.classes[x].output == self.classes[y].output
                    && self.poset.minimal_upper_bounds(x, y).is_empty()
                {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

/// Very elementary and elementary classes of a class poset.
#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub very_elementary: BTreeSet<usize>,
    pub elementary: BTreeSet<usize>,
    pub ve_names: Vec<String>,
    pub e_names: Vec<String>,
    /// Every same-color pair met in the spine construction had an upper
    /// bound within the truncation, and the enumeration was complete.
    pub saturated: bool,
    /// Same-color pairs of the construction without an upper bound.
    pub open_pairs: Vec<(String, String)>,
}

impl Classification {
    pub fn provisional(&self) -> bool {
        !self.saturated
    }

    pub fn m_v(&self, cp: &ClassPoset) -> usize {
        self.very_elementary.iter().map(|&i| cp.classes[i].degree).max().unwrap_or(0)
    }

    pub fn m_e(&self, cp: &ClassPoset) -> usize {
        self.elementary.iter().map(|&i| cp.classes[i].degree).max().unwrap_or(0)
    }
}

pub fn classify_classes(cp: &ClassPoset) -> Classification {
    let levels = spine_levels(&cp.poset);
    let mut open = Vec::new();
    for level in &levels {
        for (x, y) in cp.unbounded_pairs(level) {
            open.push((cp.classes[x].name.clone(), cp.classes[y].name.clone()));
        }
    }
    let very_elementary = cp.poset.minimal();
    let elementary: BTreeSet<usize> = levels.into_iter().flatten().collect();
    Classification {
        ve_names: cp.names(&very_elementary),
        e_names: cp.names(&elementary),
        very_elementary,
        elementary,
        saturated: open.is_empty() && !cp.truncated && !cp.depth_limited,
        open_pairs: open,
    }
}

/// Graphviz rendering of the cover relations, tagging VE and E classes.
pub fn to_dot(cp: &ClassPoset, cl: &Classification) -> String {
    let mut s = String::from("digraph classes {\n  rankdir=BT;\n");
    for (i, c) in cp.classes.iter().enumerate() {
        let tag = if cl.very_elementary.contains(&i) {
            " VE"
        } else if cl.elementary.contains(&i) {
            " E"
        } else {
            ""
        };
        let shape = if cl.elementary.contains(&i) { "box" } else { "ellipse" };
        let label = c.name.replace('"', "'");
        let _ = writeln!(s, "  n{i} [label=\"{label}\\ndeg {}{tag}\", shape={shape}];", c.degree);
    }
    for (x, y) in cp.poset.covers() {
        let _ = writeln!(s, "  n{x} -> n{y};");
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::builtins;

    fn by_name(cp: &ClassPoset, set: &BTreeSet<usize>) -> BTreeSet<String> {
        cp.names(set).into_iter().collect()
    }

    #[test]
    fn thompson_classes_are_trees() {
        let op = builtins::thompson_f();
        let cp = build_class_poset(&op, 4).unwrap();
        // binary trees with 2, 3, 4 leaves
        assert_eq!(cp.len(), 1 + 2 + 5);
        let cl = classify_classes(&cp);
        assert_eq!(by_name(&cp, &cl.very_elementary), ["caret".to_string()].into());
        assert_eq!(cl.elementary, cl.very_elementary);
        assert!(cl.saturated);
    }

    #[test]
    fn leaf_twists_do_not_change_the_class() {
        let op = builtins::ribbon_v();
        let a = op.parse_op("caret(_@t1,_@t-2)").unwrap();
        let b = op.parse_op("caret(_,_)").unwrap();
        assert_eq!(class_of(&op, &a).key, class_of(&op, &b).key);
        let cp = build_class_poset(&op, 3).unwrap();
        assert_eq!(cp.len(), 3);
    }

    #[test]
    fn cube_cuts_classify() {
        let op = builtins::cube(1, &[vec![2, 3]], None).unwrap();
        let cp = build_class_poset(&op, 6).unwrap();
        let cl = classify_classes(&cp);
        let c2 = op.generator_op(op.generator_id("C2").unwrap());
        let c3 = op.generator_op(op.generator_id("C3").unwrap());
        let six = op.compose_owned(&[c3.clone(), c3.clone()], &c2).unwrap();
        let (i2, i3, i6) = (cp.find(&op, &c2).unwrap(), cp.find(&op, &c3).unwrap(), cp.find(&op, &six).unwrap());
        assert_eq!(cl.very_elementary, [i2, i3].into());
        assert_eq!(cl.elementary, [i2, i3, i6].into());
        assert!(!cp.poset.leq(i2, i3) && !cp.poset.leq(i3, i2));
        assert!(cl.saturated);
        assert_eq!(cl.m_e(&cp), 6);
    }

    #[test]
    fn quarter_grid_refines_the_half_cut() {
        let op = builtins::cube(1, &[vec![2]], None).unwrap();
        let c2 = op.generator_op(0);
        let grid = op.compose_owned(&[c2.clone(), c2.clone()], &c2).unwrap();
        assert!(class_leq(&op, &c2, &grid, None).unwrap());
        assert!(!class_leq(&op, &grid, &c2, None).unwrap());
    }

    #[test]
    fn squares_and_triangles_have_one_strictly_elementary_class() {
        let op = builtins::squares_triangles();
        let cp = build_class_poset_with(&op, ClassOptions::new(16).depth(2)).unwrap();
        let cl = classify_classes(&cp);
        assert_eq!(cl.very_elementary.len(), 3);
        let strict: Vec<usize> = cl.elementary.difference(&cl.very_elementary).copied().collect();
        assert_eq!(strict.len(), 1);
        let join = &cp.classes[strict[0]];
        assert_eq!((op.color_name(join.output), join.degree), ("S", 16));
        assert!(cl.open_pairs.is_empty());
    }

    #[test]
    fn dot_mentions_every_class() {
        let op = builtins::thompson_f();
        let cp = build_class_poset(&op, 3).unwrap();
        let dot = to_dot(&cp, &classify_classes(&cp));
        assert_eq!(dot.matches("label=").count(), 3);
        assert!(dot.contains("VE"));
    }
}
