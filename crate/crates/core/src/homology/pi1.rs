//! Edge-path presentations of the fundamental group and a bounded Tietze
//! simplifier.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::complex::SimplicialComplex;

/// Letters are `±(g + 1)` for generator `g`.
pub type Word = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Word>,
}

/// Generators are the edges off a spanning forest of the 1-skeleton, one
/// relator per triangle. Describes the component of the first vertex when
/// the complex is connected.
pub fn edge_path_presentation(k: &SimplicialComplex) -> Presentation {
    let verts = k.vertices();
    let pos: HashMap<u32, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut rep: Vec<usize> = (0..verts.len()).collect();
    fn find(rep: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while rep[r] != r {
            r = rep[r];
        }
        rep[x] = r;
        r
    }
    // edge index -> generator, None for tree edges
    let mut gen_of: Vec<Option<i32>> = Vec::with_capacity(k.count(1));
    let mut generators = 0;
    for e in k.simplices(1) {
        let (a, b) = (find(&mut rep, pos[&e[0]]), find(&mut rep, pos[&e[1]]));
        if a == b {
            generators += 1;
            gen_of.push(Some(generators as i32));
        } else {
            rep[a.max(b)] = a.min(b);
            gen_of.push(None);
        }
    }
    let letter = |a: u32, b: u32| -> Option<i32> {
        let i = k.index_of(&[a, b]).expect("edge of a triangle");
        gen_of[i]
    };
    let relators = k
        .simplices(2)
        .iter()
        .map(|t| {
            // e_ab e_bc e_ac^{-1}
            let mut w = Vec::new();
            w.extend(letter(t[0], t[1]));
            w.extend(letter(t[1], t[2]));
            w.extend(letter(t[0], t[2]).map(|g| -g));
            w
        })
        .filter(|w| !w.is_empty())
        .collect();
    Presentation { generators, relators }
}

/// Limits for [`simplify`].
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TietzeBudget {
    /// Largest relator length a substitution may produce.
    pub max_relator_len: usize,
    /// Largest total relator length.
    pub max_total_len: usize,
    pub max_steps: usize,
}

impl Default for TietzeBudget {
    fn default() -> Self {
        Self { max_relator_len: 64, max_total_len: 2_000_000, max_steps: 100_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TietzeOutcome {
    /// Every generator was eliminated.
    Trivial { steps: usize },
    /// No further elimination within the budget.
    Stuck { generators: usize, relators: usize, steps: usize },
}

impl TietzeOutcome {
    pub fn is_trivial(&self) -> bool {
        matches!(self, TietzeOutcome::Trivial { .. })
    }
}

fn free_reduce(w: &mut Word) {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w.iter() {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    // cyclic reduction
    let mut s = 0;
    let mut e = out.len();
    while e - s >= 2 && out[s] == -out[e - 1] {
        s += 1;
        e -= 1;
    }
    *w = out[s..e].to_vec();
}

fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|x| -x).collect()
}

/// Eliminates generators that occur exactly once in some relator, shortest
/// relators first, until none are left or the budget runs out.
pub fn simplify(p: &Presentation, budget: TietzeBudget) -> (Presentation, TietzeOutcome) {
    let mut rels: Vec<Word> = p.relators.clone();
    for r in rels.iter_mut() {
        free_reduce(r);
    }
    rels.retain(|r| !r.is_empty());
    let mut alive: BTreeMap<i32, ()> = (1..=p.generators as i32).map(|g| (g, ())).collect();
    let mut steps = 0;
    loop {
        if alive.is_empty() {
            return (Presentation { generators: 0, relators: Vec::new() }, TietzeOutcome::Trivial { steps });
        }
        if steps >= budget.max_steps {
            break;
        }
        // shortest relator with a letter occurring once
        let mut order: Vec<usize> = (0..rels.len()).collect();
        order.sort_by_key(|&i| rels[i].len());
        let mut pick = None;
        for &i in &order {
            let mut count: HashMap<i32, usize> = HashMap::new();
            for &x in &rels[i] {
                *count.entry(x.abs()).or_insert(0) += 1;
            }
            if let Some(pos) = rels[i].iter().position(|x| count[&x.abs()] == 1) {
                pick = Some((i, pos));
                break;
            }
        }
        let Some((i, pos)) = pick else { break };
        let r = rels.swap_remove(i);
        let g = r[pos];
        // r = u g v, so g = u^{-1} v^{-1}
        let mut value: Word = inverse(&r[..pos]);
        value.extend(inverse(&r[pos + 1..]));
        let (gen, value) = if g > 0 { (g, value) } else { (-g, inverse(&value)) };
        let mut total = 0;
        for w in rels.iter_mut() {
            if w.iter().any(|x| x.abs() == gen) {
                let mut n = Vec::with_capacity(w.len() + value.len());
                for &x in w.iter() {
                    if x == gen {
                        n.extend_from_slice(&value);
                    } else if x == -gen {
                        n.extend(inverse(&value));
                    } else {
                        n.push(x);
                    }
                }
                free_reduce(&mut n);
                *w = n;
            }
            total += w.len();
        }
        rels.retain(|w| !w.is_empty());
        rels.sort();
        rels.dedup();
        alive.remove(&gen);
        steps += 1;
        if total > budget.max_total_len || rels.iter().any(|w| w.len() > budget.max_relator_len) {
            break;
        }
    }
    let remaining: Vec<i32> = alive.keys().copied().collect();
    let renum: HashMap<i32, i32> = remaining.iter().enumerate().map(|(k, &g)| (g, k as i32 + 1)).collect();
    let relators: Vec<Word> =
        rels.iter().map(|w| w.iter().map(|&x| renum[&x.abs()] * x.signum()).collect()).collect();
    let outcome = TietzeOutcome::Stuck { generators: remaining.len(), relators: relators.len(), steps };
    (Presentation { generators: remaining.len(), relators }, outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filled_triangle_is_simply_connected() {
        let k = SimplicialComplex::from_facets(&[vec![0, 1, 2]], 2).unwrap();
        let p = edge_path_presentation(&k);
        assert_eq!(p.generators, 1);
        assert!(simplify(&p, TietzeBudget::default()).1.is_trivial());
    }

    #[test]
    fn hollow_square_is_stuck_with_one_free_generator() {
        let k = SimplicialComplex::from_facets(&[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]], 2).unwrap();
        let (q, out) = simplify(&edge_path_presentation(&k), TietzeBudget::default());
        assert_eq!(out, TietzeOutcome::Stuck { generators: 1, relators: 0, steps: 0 });
        assert_eq!(q.generators, 1);
    }

    #[test]
    fn octahedron_boundary_is_simply_connected() {
        // the sphere as the join of three pairs {0,1}, {2,3}, {4,5}
        let mut facets = Vec::new();
        for a in [0, 1] {
            for b in [2, 3] {
                for c in [4, 5] {
                    facets.push(vec![a, b, c]);
                }
            }
        }
        let k = SimplicialComplex::from_facets(&facets, 2).unwrap();
        assert!(simplify(&edge_path_presentation(&k), TietzeBudget::default()).1.is_trivial());
    }

    #[test]
    fn relator_letters_are_cyclically_reduced() {
        let mut w = vec![1, 2, -2, 3, -1];
        free_reduce(&mut w);
        assert_eq!(w, vec![3]);
    }
}
