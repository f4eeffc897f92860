//! Acceptance suite: one PASS/FAIL line per criterion with its pinned time
//! limit. Exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use operadica::arc::{archetype_metrics, build_ac3, ArchetypeSet};
use operadica::arrows::OperadArrow;
use operadica::braid::{braid_equal, BraidWord, ColoredBraid, GarsideNF, Partition};
use operadica::classes::{
    b2_witness, build_class_poset, build_class_poset_with, check_generator_conditions, classify_classes,
    finiteness_profile, hypothesis_audit, spine_bruteforce, spine_construct, verify_theta_join, ClassOptions,
    GradedPoset, Tameness,
};
use operadica::fractions::groups::{twisted_dipole_is_trivial, verify_presentation};
use operadica::fractions::{Family, SpanEquality};
use operadica::homology::{reduced_homology_via, verify_nu_theorem, CertificateStatus, NuOptions, SnfRoute};
use operadica::operad::axioms::{check_axioms, AxiomOptions};
use operadica::operad::builtins;
use operadica::operad::enumerate::{decorate, enumerate_ops, DecorateOptions};
use operadica::{ColorWord, Operad, Operation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, len: usize) -> Vec<i32> {
    (0..len)
        .map(|_| {
            let k = rng.gen_range(1..n as i32);
            if rng.gen_bool(0.5) {
                k
            } else {
                -k
            }
        })
        .collect()
}

/// One braid-relation rewrite at a random applicable spot, or `None`.
fn rewrite(rng: &mut ChaCha8Rng, n: usize, w: &[i32], max_len: usize) -> Option<Vec<i32>> {
    let kind = rng.gen_range(0..4);
    let mut v = w.to_vec();
    match kind {
        0 if w.len() + 2 <= max_len => {
            let i = rng.gen_range(0..=w.len());
            let k = rng.gen_range(1..n as i32);
            let s = if rng.gen_bool(0.5) { 1 } else { -1 };
            v.splice(i..i, [s * k, -s * k]);
            Some(v)
        }
        1 => {
            let spots: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&i| w[i] == -w[i + 1]).collect();
            let &i = spots.get(rng.gen_range(0..spots.len().max(1)))?;
            v.drain(i..i + 2);
            Some(v)
        }
        2 => {
            let spots: Vec<usize> = (0..w.len().saturating_sub(2))
                .filter(|&i| {
                    let (a, b, c) = (w[i], w[i + 1], w[i + 2]);
                    a == c && a.signum() == b.signum() && (a.abs() - b.abs()).abs() == 1
                })
                .collect();
            let &i = spots.get(rng.gen_range(0..spots.len().max(1)))?;
            let (a, b) = (w[i], w[i + 1]);
            v.splice(i..i + 3, [b, a, b]);
            Some(v)
        }
        _ => {
            let spots: Vec<usize> =
                (0..w.len().saturating_sub(1)).filter(|&i| (w[i].abs() - w[i + 1].abs()).abs() >= 2).collect();
            let &i = spots.get(rng.gen_range(0..spots.len().max(1)))?;
            v.swap(i, i + 1);
            Some(v)
        }
    }
}

fn c1_braid_kernel() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut rewrites = 0;
    let mut oracle = 0;
    while rewrites < 10_000 {
        let n = rng.gen_range(2..=8);
        let len = rng.gen_range(0..=30);
        let mut w = random_word(&mut rng, n, len);
        let base = GarsideNF::from_word(&BraidWord::new(n, w.clone()).map_err(e2s)?);
        let mut done = 0;
        while done < 10 {
            let Some(v) = rewrite(&mut rng, n, &w, 40) else { continue };
            let nf = GarsideNF::from_word(&BraidWord::new(n, v.clone()).map_err(e2s)?);
            ensure(nf == base, || format!("normal form changed: {w:?} -> {v:?}"))?;
            w = v;
            done += 1;
            rewrites += 1;
        }
        // factor-level product against the word route
        let u = BraidWord::new(n, random_word(&mut rng, n, 12)).map_err(e2s)?;
        let x = BraidWord::new(n, w.clone()).map_err(e2s)?;
        let via_factors = GarsideNF::from_word(&u).then(&GarsideNF::from_word(&x));
        ensure(via_factors == GarsideNF::from_word(&u.then(&x).map_err(e2s)?), || "factor product differs".into())?;
        oracle += 1;
    }
    let b = |s: usize, l: Vec<i32>| BraidWord::new(s, l).unwrap();
    ensure(braid_equal(&b(3, vec![1, 2, 1]), &b(3, vec![2, 1, 2])), || "s1 s2 s1 != s2 s1 s2".into())?;
    ensure(braid_equal(&b(4, vec![1, 3]), &b(4, vec![3, 1])), || "s1 s3 != s3 s1".into())?;
    ensure(!braid_equal(&b(3, vec![1, 2]), &b(3, vec![2, 1])), || "s1 s2 = s2 s1".into())?;
    Ok(format!("{rewrites} rewrites invariant, {oracle} factor products match the word route"))
}

fn c2_decomposition() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let c = operadica::Color(0);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=8);
        let len = if n > 1 { rng.gen_range(0..=20) } else { 0 };
        let w = if n > 1 { random_word(&mut rng, n, len) } else { Vec::new() };
        let beta = ColoredBraid::from_word(&BraidWord::new(n, w).map_err(e2s)?, ColorWord::uniform(c, n)).map_err(e2s)?;
        let mut sizes = Vec::new();
        let mut left = n;
        while left > 0 {
            let s = rng.gen_range(1..=left);
            sizes.push(s);
            left -= s;
        }
        let p = Partition::from_sizes(&sizes).map_err(e2s)?;
        let (blocks, residual) = beta.pu_decompose(&p).map_err(e2s)?;
        let mut prod = ColoredBraid::identity(beta.flavor(), ColorWord::empty());
        for b in &blocks {
            prod = prod.tensor(b);
        }
        ensure(prod.then(&residual).map_err(e2s)? == beta, || format!("recomposition failed on {beta}"))?;
        for r in p.blocks() {
            let keep: Vec<usize> = r.collect();
            ensure(residual.is_unbraided_on(&keep).map_err(e2s)?, || format!("residual braided on {keep:?}"))?;
        }
        let (b2, r2) = residual.pu_decompose(&p).map_err(e2s)?;
        ensure(b2.iter().all(|b| b.is_identity()) && r2 == residual, || "decomposition is not idempotent".into())?;
    }
    Ok("1000 pairs recompose, residuals unbraided, idempotent".into())
}

fn random_braid(rng: &mut ChaCha8Rng, dom: &ColorWord, len: usize) -> ColoredBraid {
    let n = dom.len();
    let w = if n > 1 { random_word(rng, n, len) } else { Vec::new() };
    ColoredBraid::from_word(&BraidWord::new(n.max(1), w).unwrap(), dom.clone()).unwrap()
}

fn c3_arrow_normal_form() -> Outcome {
    let op = builtins::braided_v();
    let base = enumerate_ops(&op, 4, 2);
    let pool = decorate(&op, &base, DecorateOptions::default());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1000 {
        let k = rng.gen_range(1..=3);
        let ops: Vec<Operation> = (0..k).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
        let inputs = ops.iter().fold(ColorWord::empty(), |a, o| a.concat(&o.inputs()));
        let gamma = random_braid(&mut rng, &inputs, 8);
        let mut rho = ColoredBraid::identity(op.flavor(), ColorWord::empty());
        let mut moved = Vec::new();
        for o in &ops {
            let r = random_braid(&mut rng, &o.inputs(), 4);
            moved.push(op.act(r.strands(), o).map_err(e2s)?);
            rho = rho.tensor(&r);
        }
        // (γ·(⊗ρ_i), X) ∼ (γ, (ρ_i·X_i))
        let lhs = OperadArrow::new(&op, gamma.then(&rho).map_err(e2s)?, ops.clone()).map_err(e2s)?;
        let rhs = OperadArrow::new(&op, gamma.clone(), moved).map_err(e2s)?;
        ensure(lhs == rhs, || format!("dangling move changed the normal form: {lhs} vs {rhs}"))?;
    }
    // associativity on triples with at most one non-identity slot per level
    let id = |c| op.identity_op(c).unwrap();
    let fill_one = |dom: &ColorWord| -> Vec<Vec<Operation>> {
        let ids: Vec<Operation> = dom.iter().map(|&c| id(c)).collect();
        let mut out = vec![ids.clone()];
        for i in 0..dom.len() {
            for p in &base {
                if p.output() == dom[i] && p.degree() <= 2 && *p != ids[i] {
                    let mut t = ids.clone();
                    t[i] = p.clone();
                    out.push(t);
                }
            }
        }
        out
    };
    let mut triples = 0;
    for theta in &pool {
        let h = OperadArrow::from_op(&op, theta.clone());
        for g_ops in fill_one(h.domain()) {
            let g_in = g_ops.iter().fold(ColorWord::empty(), |a, o| a.concat(&o.inputs()));
            let g = OperadArrow::new(&op, random_braid(&mut rng, &g_in, 3), g_ops).map_err(e2s)?;
            for f_ops in fill_one(g.domain()) {
                let f = OperadArrow::from_ops(&op, f_ops);
                let left = f.compose(&op, &g).map_err(e2s)?.compose(&op, &h).map_err(e2s)?;
                let right = f.compose(&op, &g.compose(&op, &h).map_err(e2s)?).map_err(e2s)?;
                ensure(left == right, || format!("associativity fails at {f} ; {g} ; {h}"))?;
                triples += 1;
            }
        }
    }
    Ok(format!("1000 dangling moves stable, {triples} composable triples associative"))
}

fn c4_thompson() -> Outcome {
    let r = verify_presentation(Family::F, 5).map_err(e2s)?;
    for c in &r.checks {
        ensure(c.pass, || format!("{}: {}", c.relation, c.result))?;
    }
    let conj = r.checks.iter().filter(|c| c.expect_equal).count();
    ensure(conj == 15, || format!("{conj} conjugation relations, expected 15"))?;
    Ok(format!("{conj} relations equal, x0 x1 != x1 x0"))
}

fn c5_ribbon() -> Outcome {
    let r = verify_presentation(Family::RV, 2).map_err(e2s)?;
    for c in &r.checks {
        ensure(c.pass, || format!("{}: {}", c.relation, c.result))?;
    }
    let free = twisted_dipole_is_trivial(&builtins::ribbon_free()).map_err(e2s)?;
    ensure(free == SpanEquality::Different, || format!("without the rewrite the dipole is {free}"))?;
    Ok("ribbon rewrite holds; twisted dipole trivial only with the rewrite".into())
}

fn c6_spine() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..500 {
        let n = rng.gen_range(1..=12);
        let levels = rng.gen_range(1..=5);
        let density = rng.gen_range(0.1..0.6);
        let p = GradedPoset::random(&mut rng, n, levels, density);
        let a = spine_construct(&p);
        let b = spine_bruteforce(&p).map_err(e2s)?;
        ensure(a == b, || format!("poset {i}: construction {a:?} vs brute force {b:?}"))?;
    }
    Ok("500 posets agree".into())
}

fn c7_cube() -> Outcome {
    let op = builtins::cube(1, &[vec![2, 3]], None).map_err(e2s)?;
    let cp = build_class_poset(&op, 6).map_err(e2s)?;
    let cl = classify_classes(&cp);
    let c2 = op.generator_op(op.generator_id("C2").map_err(e2s)?);
    let c3 = op.generator_op(op.generator_id("C3").map_err(e2s)?);
    let c6 = op.compose_owned(&[c3.clone(), c3.clone()], &c2).map_err(e2s)?;
    let idx = |o: &Operation| cp.find(&op, o).ok_or_else(|| "class missing from the poset".to_string());
    let (i2, i3, i6) = (idx(&c2)?, idx(&c3)?, idx(&c6)?);
    ensure(cl.very_elementary == BTreeSet::from([i2, i3]), || format!("VE = {:?}", cl.ve_names))?;
    ensure(cl.elementary == BTreeSet::from([i2, i3, i6]), || format!("E = {:?}", cl.e_names))?;
    ensure(cl.saturated, || "classification not saturated".into())?;
    let ts: [&[u64]; 3] = [&[2], &[3], &[2, 3]];
    let mut joins = 0;
    for a in ts {
        for b in ts {
            let r = verify_theta_join(&op, &[a.to_vec()], &[b.to_vec()]).map_err(e2s)?;
            ensure(r.ok(), || format!("join {a:?} {b:?}: {:?}", r.failures().collect::<Vec<_>>()))?;
            joins += 1;
        }
    }
    let bad = builtins::cube(1, &[vec![2, 6, 7, 21]], None).map_err(e2s)?;
    let r = check_generator_conditions(&bad, 1).map_err(e2s)?;
    let b2 = r.checks.iter().find(|c| c.name.starts_with("B2")).ok_or("no B2 check")?;
    ensure(b2_witness(b2) == Some(42), || format!("B2 detail: {}", b2.detail))?;
    Ok(format!("VE={{C2,C3}}, E adds C6, {joins} joins smallest, B2 fails at 42"))
}

fn c8_color_tame() -> Outcome {
    let op = builtins::squares_triangles();
    let cp = build_class_poset_with(&op, ClassOptions::new(16).depth(2)).map_err(e2s)?;
    let cl = classify_classes(&cp);
    let prof = finiteness_profile(&op, &cp, &cl, 12);
    ensure(prof.m_c == Tameness::Bounded(5), || format!("m_r = {:?}", prof.m_c))?;
    ensure(!prof.reduced_witnesses.is_empty() && prof.reduced_witnesses.iter().all(|w| w.len() == 4), || {
        format!("witnesses {:?}", prof.reduced_witnesses)
    })?;
    let set = ArchetypeSet::from_classes(&op, &cp, &cl).map_err(e2s)?;
    let m = archetype_metrics(&set, 3, 12);
    ensure(m.m_r == Tameness::Bounded(5), || format!("archetype route m_r = {:?}", m.m_r))?;
    for name in ["F", "V"] {
        let op = builtins::builtin(name).map_err(e2s)?;
        let cp = build_class_poset(&op, 4).map_err(e2s)?;
        let cl = classify_classes(&cp);
        let p = finiteness_profile(&op, &cp, &cl, 12);
        ensure(p.m_c == Tameness::Bounded(2), || format!("{name}: m_r = {:?}", p.m_c))?;
    }
    Ok(format!("squares-triangles m_r=5 witness {}, F/V m_r=2", prof.reduced_witnesses[0].concat()))
}

fn c9_nu_theorem() -> Outcome {
    let a = ArchetypeSet::monochromatic_binary();
    let mut lines = Vec::new();
    let mut pi1_at_10 = false;
    for (d, top) in [(1u8, 14usize), (3, 10)] {
        let mut max_nu = -1;
        for l in 2..=top {
            let r = verify_nu_theorem(d, &a, &a.uniform_word("c", l).map_err(e2s)?, NuOptions::default())
                .map_err(e2s)?;
            ensure(r.certificate.status != CertificateStatus::Refuted, || {
                format!("d={d} l={l} REFUTED\n{}", r.certificate.to_text())
            })?;
            ensure(r.pass, || format!("d={d} l={l} not certified\n{}", r.certificate.to_text()))?;
            max_nu = max_nu.max(r.nu);
            if d == 3 && l == 10 {
                pi1_at_10 = r.certificate.evidence.iter().any(|e| e.check.starts_with("pi_1") && e.passed);
            }
        }
        lines.push(format!("d={d} l<= {top} max nu {max_nu}"));
    }
    ensure(pi1_at_10, || "pi_1 not trivialized for d=3 l=10".into())?;
    Ok(lines.join(", "))
}

fn c10_torsion() -> Outcome {
    let a = ArchetypeSet::monochromatic_binary();
    let cx = build_ac3(&a, &a.uniform_word("c", 7).map_err(e2s)?).complex(3, 1 << 20).map_err(e2s)?;
    let sparse = reduced_homology_via(&cx, 2, SnfRoute::Sparse).map_err(e2s)?;
    let dense = reduced_homology_via(&cx, 2, SnfRoute::DenseOracle).map_err(e2s)?;
    ensure(sparse == dense, || "sparse and dense routes disagree".into())?;
    let h1 = sparse.degree(1).ok_or("no H_1")?;
    ensure(h1.torsion.contains(&BigInt::from(3)), || format!("H_1 torsion {:?}", h1.torsion))?;
    Ok(format!("H_1 = Z^{} + torsion {:?} on both routes", h1.betti, h1.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>()))
}

fn c11_audit() -> Outcome {
    let specs: Vec<(String, Operad)> = vec![
        ("F".into(), builtins::thompson_f()),
        ("V".into(), builtins::thompson_v()),
        ("BV".into(), builtins::braided_v()),
        ("RV".into(), builtins::ribbon_v()),
        ("cube N={2}".into(), builtins::cube(1, &[vec![2]], None).map_err(e2s)?),
        ("cube N={2,3}".into(), builtins::cube(1, &[vec![2, 3]], None).map_err(e2s)?),
    ];
    let mut done = Vec::new();
    for (name, op) in &specs {
        let r = hypothesis_audit(op, 6, None).map_err(e2s)?;
        ensure(r.ok(), || format!("{name}: {:?}", r.failures().collect::<Vec<_>>()))?;
        done.push(name.as_str());
    }
    Ok(format!("square filling, cancellation, finite type, color-tame pass for {}", done.join(", ")))
}

fn c12_axioms() -> Outcome {
    let mut details = Vec::new();
    for op in [builtins::thompson_v(), builtins::ribbon_v()] {
        let r = check_axioms(&op, AxiomOptions::default()).map_err(e2s)?;
        ensure(r.ok(), || format!("{}: {:?}", op.name(), r.witness))?;
        ensure(r.equivariance > 0, || format!("{}: no equivariance instances", op.name()))?;
        details.push(format!("{} ({} equivariance instances)", op.name(), r.equivariance));
    }
    let bad = check_axioms(&builtins::binary_z2(true), AxiomOptions::default()).map_err(e2s)?;
    let w = bad.witness.ok_or("mutated table accepted")?;
    Ok(format!("{} pass; mutated table rejected by {} at {}", details.join(", "), w.axiom, w.operations.join(" ; ")))
}

fn main() {
    let criteria: Vec<(u32, &str, u64, fn() -> Outcome)> = vec![
        (1, "braid kernel", 10, c1_braid_kernel),
        (2, "decomposition lemma", 10, c2_decomposition),
        (3, "arrow normal form", 60, c3_arrow_normal_form),
        (4, "Thompson presentation", 5, c4_thompson),
        (5, "RV relation", 60, c5_ribbon),
        (6, "spine oracle", 30, c6_spine),
        (7, "cube classification", 120, c7_cube),
        (8, "color-tameness", 120, c8_color_tame),
        (9, "arc complex connectivity", 900, c9_nu_theorem),
        (10, "torsion sanity", 30, c10_torsion),
        (11, "hypothesis audit", 300, c11_audit),
        (12, "axiom checker", 120, c12_axioms),
    ];
    let only: Option<u32> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut failed = 0;
    for (n, name, limit, f) in criteria {
        if only.is_some_and(|o| o != n) {
            continue;
        }
        let t = Instant::now();
        let out = f();
        let el = t.elapsed();
        let limit = Duration::from_secs(limit);
        let (ok, detail) = match out {
            Ok(d) if el <= limit => (true, d),
            Ok(d) => (false, format!("over time: {d}")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} criterion {n:>2} {name}: {:.2}s / {}s: {detail}",
            if ok { "PASS" } else { "FAIL" },
            el.as_secs_f64(),
            limit.as_secs()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
