//! One adapter per subcommand. Each returns text and a JSON payload built from
//! the same library values.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use operadica::arc::{build_ac, ArchetypeSet};
use operadica::arrows::OperadArrow;
use operadica::braid::{BraidWord, ColoredBraid, GarsideNF};
use operadica::classes::{
    build_class_poset, build_class_poset_with, cancellation_spot_check, check_generator_conditions,
    classify_classes, finiteness_profile, hypothesis_audit, spine_bruteforce, spine_construct,
    square_filling_criterion, to_dot, Check, ClassOptions, GradedPoset, Report,
};
use operadica::fractions::groups::{verify_presentation, GroupContext};
use operadica::homology::{
    certify_connectivity, dense_snf_oracle, reduced_homology_via, smith_normal_form, verify_nu_theorem,
    CertificateStatus, NuOptions, SimplicialComplex, SnfRoute, SparseMatrix, TietzeBudget,
};
use operadica::operad::axioms::{check_axioms, AxiomOptions};
use operadica::operad::builtins;
use operadica::{ColorWord, Error, Operad, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::{ArcArgs, BenchKind, CheckKind, ClassView, GroupOp, GroupSource, OperadSource, Route};

pub struct Outcome {
    pub kind: String,
    pub ok: bool,
    pub text: String,
    pub data: Value,
}

impl Outcome {
    fn new(kind: &str, ok: bool, text: String, data: Value) -> Self {
        Self { kind: kind.to_string(), ok, text, data }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

pub fn load_operad(src: &OperadSource) -> Result<Operad> {
    match (&src.spec, &src.builtin) {
        (Some(path), _) => Operad::from_json(&fs::read_to_string(path)?),
        (None, Some(name)) => builtins::builtin(name),
        (None, None) => Err(Error::Invalid("give --spec FILE or --builtin NAME".into())),
    }
}

fn parse_cuts(s: &str) -> Result<Vec<Vec<u64>>> {
    s.split(';')
        .map(|axis| {
            axis.split(',')
                .map(|t| t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad cut count `{t}`"))))
                .collect()
        })
        .collect()
}

pub fn gen(family: &str, d: usize, cuts: &str, flavor: Option<&str>, output: Option<PathBuf>) -> Result<Outcome> {
    let name = family.strip_prefix("thompson-").unwrap_or(family);
    let op = match name {
        "cube" => builtins::cube(d, &parse_cuts(cuts)?, flavor)?,
        _ => builtins::builtin(name)?,
    };
    let text = op.spec().to_json();
    let data: Value = serde_json::from_str(&text)?;
    match output {
        Some(path) => {
            fs::write(&path, format!("{text}\n"))?;
            Ok(Outcome::new("gen", true, format!("wrote {} to {}\n", op.name(), path.display()), data))
        }
        None => Ok(Outcome::new("gen", true, format!("{text}\n"), data)),
    }
}

fn report_text(r: &Report) -> String {
    let mut s = format!("{}\n", r.title);
    for c in &r.checks {
        let _ = writeln!(s, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    s
}

fn single(title: String, checks: Vec<Check>) -> Report {
    let mut r = Report::new(title);
    for c in checks {
        r.push(c);
    }
    r
}

pub fn check(src: &OperadSource, what: CheckKind, bound: usize, depth: usize) -> Result<Outcome> {
    let op = load_operad(src)?;
    let report = match what {
        CheckKind::Axioms => {
            let r = check_axioms(&op, AxiomOptions { depth, ..AxiomOptions::default() })?;
            let mut text = format!(
                "axioms for {}: pool {}, unit {}, action {}, associativity {}, equivariance {}\n",
                op.name(),
                r.pool_size,
                r.unit,
                r.action,
                r.associativity,
                r.equivariance
            );
            match &r.witness {
                None => text.push_str("PASS\n"),
                Some(w) => {
                    let _ = writeln!(text, "FAIL {} at {}\n  {}\n  {}", w.axiom, w.operations.join(" ; "), w.lhs, w.rhs);
                }
            }
            return Ok(Outcome::new("check-axioms", r.ok(), text, to_value(&r)?));
        }
        CheckKind::Audit => hypothesis_audit(&op, bound, None)?,
        CheckKind::Fractions => {
            let cp = build_class_poset(&op, bound)?;
            single(format!("square filling for {}", op.name()), vec![square_filling_criterion(&op, &cp)?])
        }
        CheckKind::Cancellation => {
            single(format!("cancellation for {}", op.name()), vec![cancellation_spot_check(&op, 4, 20_000)?])
        }
        CheckKind::V1v2 | CheckKind::B1b2 => {
            let prefix = if what == CheckKind::V1v2 { "V" } else { "B" };
            let r = check_generator_conditions(&op, 1)?;
            let checks: Vec<Check> = r.checks.into_iter().filter(|c| c.name.starts_with(prefix)).collect();
            if checks.is_empty() {
                return Err(Error::Invalid(format!("{} has no {prefix} conditions", op.name())));
            }
            single(r.title, checks)
        }
    };
    Ok(Outcome::new("check", report.ok(), report_text(&report), to_value(&report)?))
}

pub fn nf(src: &OperadSource, ops: &[String], braid: Option<&str>) -> Result<Outcome> {
    let op = load_operad(src)?;
    let ops = ops.iter().map(|t| op.parse_op(t)).collect::<Result<Vec<_>>>()?;
    let inputs = ops.iter().fold(ColorWord::empty(), |a, o| a.concat(&o.inputs()));
    let strands = match braid {
        Some(t) => op.parse_strands(t, inputs.len())?,
        None => op.strands_identity(inputs.len()),
    };
    let arrow = OperadArrow::new(&op, ColoredBraid::new(strands, inputs)?, ops)?;
    let text = arrow.show(&op);
    Ok(Outcome::new("nf", true, text.clone(), json!({ "arrow": arrow.to_string(), "text": text })))
}

fn group_context(src: &GroupSource) -> Result<GroupContext> {
    match (&src.family, &src.spec) {
        (Some(_), Some(_)) => Err(Error::Invalid("give either --family or --spec, not both".into())),
        (Some(f), None) => GroupContext::new(f.parse()?),
        (None, Some(path)) => GroupContext::from_operad(Operad::from_json(&fs::read_to_string(path)?)?, src.roots),
        (None, None) => Err(Error::Invalid("give --family NAME or --spec FILE".into())),
    }
}

pub fn group(src: &GroupSource, cmd: GroupOp) -> Result<Outcome> {
    let ctx = group_context(src)?;
    let op = &ctx.op;
    match cmd {
        GroupOp::Mul { words } => {
            let mut acc = ctx.identity()?;
            for w in &words {
                acc = ctx.mul(&acc, &ctx.word(w)?)?;
            }
            let text = acc.show(op);
            Ok(Outcome::new("group-mul", true, text.clone(), json!({ "span": text })))
        }
        GroupOp::Inv { word } => {
            let text = ctx.word(&word)?.invert().show(op);
            Ok(Outcome::new("group-inv", true, text.clone(), json!({ "span": text })))
        }
        GroupOp::Eq { lhs, rhs } => {
            let r = ctx.equal(&ctx.word(&lhs)?, &ctx.word(&rhs)?)?;
            let text = r.to_string();
            Ok(Outcome::new(
                "group-eq",
                r.is_equal(),
                format!("{text}\n"),
                json!({ "family": ctx.family.to_string(), "lhs": lhs, "rhs": rhs, "result": text }),
            ))
        }
        GroupOp::Present { bound } => {
            let r = verify_presentation(ctx.family, bound)?;
            let mut text = String::new();
            for c in &r.checks {
                let _ = writeln!(text, "{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.relation, c.result);
            }
            Ok(Outcome::new("group-present", r.ok(), text, to_value(&r)?))
        }
    }
}

pub fn classes(src: &OperadSource, bound: usize, depth: Option<usize>, view: ClassView, seed: u64) -> Result<Outcome> {
    if let ClassView::Spine { random: Some(n) } = view {
        return random_spines(n, seed);
    }
    let op = load_operad(src)?;
    let mut opts = ClassOptions::new(bound);
    if let Some(d) = depth {
        opts = opts.depth(d);
    }
    let cp = build_class_poset_with(&op, opts)?;
    let cl = classify_classes(&cp);
    match view {
        ClassView::Poset => {
            let mut text = String::new();
            let mut rows = Vec::new();
            for (i, c) in cp.classes.iter().enumerate() {
                let color = op.color_name(c.output);
                let _ = writeln!(text, "{i} {} degree={} color={color}", c.name, c.degree);
                rows.push(json!({ "name": c.name, "degree": c.degree, "color": color }));
            }
            let covers = cp.poset.covers();
            for &(a, b) in &covers {
                let _ = writeln!(text, "{} < {}", cp.classes[a].name, cp.classes[b].name);
            }
            let data = json!({ "classes": rows, "covers": covers, "truncated": cp.truncated, "depth_limited": cp.depth_limited });
            Ok(Outcome::new("classes-poset", true, text, data))
        }
        ClassView::Spine { .. } => {
            let mut text = format!("VE = {{{}}}\nE = {{{}}}\nsaturated = {}\n", cl.ve_names.join(", "), cl.e_names.join(", "), cl.saturated);
            for (a, b) in &cl.open_pairs {
                let _ = writeln!(text, "open pair {a} {b}");
            }
            Ok(Outcome::new("classes-spine", true, text, to_value(&cl)?))
        }
        ClassView::Profile { length_bound } => {
            let p = finiteness_profile(&op, &cp, &cl, length_bound);
            Ok(Outcome::new("classes-profile", true, p.to_text(), to_value(&p)?))
        }
        ClassView::Dot => {
            let text = to_dot(&cp, &cl);
            Ok(Outcome::new("classes-dot", true, text.clone(), json!({ "dot": text })))
        }
    }
}

fn random_spines(n: usize, seed: u64) -> Result<Outcome> {
    let rows: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let size = rng.gen_range(1..=12);
            let levels = rng.gen_range(1..=5);
            let density = rng.gen_range(0.1..0.6);
            let p = GradedPoset::random(&mut rng, size, levels, density);
            let a = spine_construct(&p).into_iter().collect();
            let b = spine_bruteforce(&p).map(|s| s.into_iter().collect()).unwrap_or_default();
            (size, a, b)
        })
        .collect();
    let bad: Vec<usize> = rows.iter().enumerate().filter(|(_, r)| r.1 != r.2).map(|(i, _)| i).collect();
    let text = format!("{} random posets, {} disagreements\n", n, bad.len());
    let data = json!({ "instances": n, "seed": seed, "disagreements": bad,
        "spines": rows.iter().map(|r| &r.1).collect::<Vec<_>>() });
    Ok(Outcome::new("classes-spine-random", bad.is_empty(), text, data))
}

pub fn arc_input(a: &ArcArgs) -> Result<(ArchetypeSet, ColorWord)> {
    let colors: Vec<&str> = a.colors.split(',').map(str::trim).collect();
    let entries: Vec<&str> = a.archetypes.iter().map(String::as_str).collect();
    let set = ArchetypeSet::parse(&colors, &entries)?;
    let x = match (&a.word, a.len) {
        (Some(w), _) => set.word(w)?,
        (None, Some(n)) => set.uniform_word(colors[0], n)?,
        (None, None) => return Err(Error::Invalid("give --word or --len".into())),
    };
    Ok((set, x))
}

pub fn arc(a: &ArcArgs) -> Result<Outcome> {
    let (set, x) = arc_input(a)?;
    let ac = build_ac(a.d, &set, &x)?;
    let text = format!(
        "vertices {}\nedges {}\n{}facets\n{}",
        ac.vertices.len(),
        ac.edges.len(),
        ac.vertex_table(&set),
        ac.facet_file()
    );
    Ok(Outcome::new("arc", true, text, to_value(&ac)?))
}

fn read_facets(path: &Path) -> Result<Vec<Vec<u32>>> {
    fs::read_to_string(path)?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split_whitespace()
                .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad vertex `{t}`"))))
                .collect()
        })
        .collect()
}

pub fn homology(path: &Path, max_degree: usize, route: Route, certify: Option<i64>) -> Result<Outcome> {
    let facets = read_facets(path)?;
    let top = (max_degree + 1).max(certify.map_or(0, |k| (k + 1).max(0) as usize));
    let cx = SimplicialComplex::from_facets(&facets, top)?;
    let route = match route {
        Route::Sparse => SnfRoute::Sparse,
        Route::Dense => SnfRoute::DenseOracle,
    };
    let h = reduced_homology_via(&cx, max_degree, route)?;
    let mut text = h.to_csv();
    let mut data = json!({ "homology": to_value(&h)? });
    let mut ok = true;
    if let Some(k) = certify {
        let c = certify_connectivity(&cx, k, TietzeBudget::default());
        ok = c.status != CertificateStatus::Refuted;
        text.push_str(&c.to_text());
        data["certificate"] = to_value(&c)?;
    }
    Ok(Outcome::new("homology", ok, text, data))
}

pub fn verify_nu(a: &ArcArgs) -> Result<Outcome> {
    let (set, x) = arc_input(a)?;
    let r = verify_nu_theorem(a.d, &set, &x, NuOptions::default())?;
    let ok = r.certificate.status != CertificateStatus::Refuted;
    Ok(Outcome::new("verify-nu", ok, r.to_text(), to_value(&r)?))
}

fn random_letters(rng: &mut ChaCha8Rng, n: usize, len: usize) -> Vec<i32> {
    (0..len).map(|_| rng.gen_range(1..n as i32) * if rng.gen_bool(0.5) { 1 } else { -1 }).collect()
}

/// Results go to stdout in instance order; timings go to stderr.
pub fn bench(kind: BenchKind, n: usize, seed: u64) -> Result<Outcome> {
    let t = Instant::now();
    let rng_for = |i: usize| ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
    let (name, rows): (&str, Vec<Value>) = match kind {
        BenchKind::Braid => {
            let rows = (0..n)
                .into_par_iter()
                .map(|i| {
                    let mut rng = rng_for(i);
                    let w = BraidWord::new(6, random_letters(&mut rng, 6, 40))?;
                    let nf = GarsideNF::from_word(&w);
                    Ok(json!({ "inf": nf.infimum(), "factors": nf.factors().len() }))
                })
                .collect::<Result<Vec<_>>>()?;
            ("braid normal forms", rows)
        }
        BenchKind::Group => {
            let ctx = GroupContext::new("F".parse()?)?;
            let rows = (0..n)
                .into_par_iter()
                .map(|i| {
                    let mut rng = rng_for(i);
                    let word: Vec<String> = (0..6)
                        .map(|_| format!("x{}^{}", rng.gen_range(0..4), if rng.gen_bool(0.5) { 1 } else { -1 }))
                        .collect();
                    let word = word.join(" ");
                    let g = ctx.word(&word)?;
                    let r = ctx.equal(&ctx.mul(&g, &g.invert())?, &ctx.identity()?)?;
                    Ok(json!({ "word": word, "inverse_cancels": r.is_equal() }))
                })
                .collect::<Result<Vec<_>>>()?;
            ("group words", rows)
        }
        BenchKind::Snf => {
            let rows = (0..n)
                .into_par_iter()
                .map(|i| {
                    let mut rng = rng_for(i);
                    let dense: Vec<Vec<i64>> = (0..24)
                        .map(|_| (0..24).map(|_| if rng.gen_bool(0.15) { rng.gen_range(-2..=2) } else { 0 }).collect())
                        .collect();
                    let m = SparseMatrix::from_dense(&dense);
                    let s = smith_normal_form(&m);
                    let agree = s == dense_snf_oracle(&m);
                    Ok(json!({ "rank": s.rank(), "torsion": s.torsion().iter().map(|t| t.to_string()).collect::<Vec<_>>(), "oracle_agrees": agree }))
                })
                .collect::<Result<Vec<_>>>()?;
            ("smith normal forms", rows)
        }
    };
    let ok = rows.iter().all(|r| r.get("oracle_agrees").map_or(true, |v| v == true) && r.get("inverse_cancels").map_or(true, |v| v == true));
    eprintln!("{n} {name} in {:.3}s", t.elapsed().as_secs_f64());
    let mut text = String::new();
    for (i, r) in rows.iter().enumerate() {
        let _ = writeln!(text, "{i} {r}");
    }
    Ok(Outcome::new("bench", ok, text, json!({ "seed": seed, "instances": rows })))
}
