//! Exact integer homology of simplicial complexes and connectivity
//! certificates for arc complexes.

mod chain;
mod complex;
mod pi1;
mod snf;

use std::fmt::Write as _;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

pub use chain::{boundary_matrices, ChainComplex, SparseMatrix};
pub use complex::{descending_link, faces, flag_expand, maximal_cliques, vertex_link, SimplicialComplex};
pub use pi1::{edge_path_presentation, simplify, Presentation, TietzeBudget, TietzeOutcome, Word};
pub use snf::{dense_snf_oracle, smith_normal_form, smith_normal_form_with_stats, SmithForm, SnfStats};

use crate::arc::{archetype_metrics, build_ac, ArchetypeSet};
use crate::color::ColorWord;
use crate::error::{Error, Result};

pub(crate) fn bigints_as_strings<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// `H̃_k ≅ Z^betti ⊕ ⨁ Z/t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeHomology {
    pub degree: i64,
    pub betti: usize,
    #[serde(serialize_with = "bigints_as_strings")]
    pub torsion: Vec<BigInt>,
}

impl DegreeHomology {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

/// Reduced homology in degrees `−1..=max_degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyResult {
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyResult {
    pub fn degree(&self, k: i64) -> Option<&DegreeHomology> {
        self.degrees.iter().find(|d| d.degree == k)
    }

    /// Whether `H̃_j` vanishes for all computed `j ≤ k`.
    pub fn trivial_through(&self, k: i64) -> bool {
        self.degrees.iter().filter(|d| d.degree <= k).all(|d| d.is_trivial())
    }

    /// `degree,betti,torsion` with torsion as `;`-separated factors.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,betti,torsion\n");
        for d in &self.degrees {
            let t: Vec<String> = d.torsion.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "{},{},{}", d.degree, d.betti, t.join(";"));
        }
        out
    }
}

/// Which Smith normal form routine computes the invariant factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SnfRoute {
    Sparse,
    DenseOracle,
}

/// Reduced integer homology through `max_degree`, from the Smith forms of
/// the augmented boundary maps.
pub fn reduced_homology(k: &SimplicialComplex, max_degree: usize) -> Result<HomologyResult> {
    reduced_homology_via(k, max_degree, SnfRoute::Sparse)
}

pub fn reduced_homology_via(k: &SimplicialComplex, max_degree: usize, route: SnfRoute) -> Result<HomologyResult> {
    if k.homology_valid_through().map_or(true, |v| v < max_degree) {
        return Err(Error::invalid(format!(
            "complex stored through dimension {} does not determine H_{max_degree}",
            k.stored_dim()
        )));
    }
    let cc = boundary_matrices(k, max_degree + 1)?;
    let forms: Vec<SmithForm> = cc
        .boundaries
        .par_iter()
        .map(|m| match route {
            SnfRoute::Sparse => smith_normal_form(m),
            SnfRoute::DenseOracle => dense_snf_oracle(m),
        })
        .collect();
    let mut degrees = Vec::new();
    // degree −1: C_{−1} = Z, image of the augmentation
    degrees.push(DegreeHomology { degree: -1, betti: 1 - forms[0].rank(), torsion: forms[0].torsion() });
    for d in 0..=max_degree {
        let cycles = cc.ranks[d] - forms[d].rank();
        degrees.push(DegreeHomology {
            degree: d as i64,
            betti: cycles - forms[d + 1].rank(),
            torsion: forms[d + 1].torsion(),
        });
    }
    Ok(HomologyResult { degrees })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateStatus {
    Certified,
    HomologyOnly,
    Refuted,
    Inconclusive,
}

impl std::fmt::Display for CertificateStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CertificateStatus::Certified => "certified",
            CertificateStatus::HomologyOnly => "homology-only",
            CertificateStatus::Refuted => "refuted",
            CertificateStatus::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectivityCertificate {
    pub target: i64,
    pub status: CertificateStatus,
    pub evidence: Vec<Evidence>,
    pub homology: Option<HomologyResult>,
}

impl ConnectivityCertificate {
    /// `status` line followed by one line per check.
    pub fn to_text(&self) -> String {
        let mut out = format!("target = {}\nstatus = {}\n", self.target, self.status);
        for e in &self.evidence {
            let _ = writeln!(out, "{} {}: {}", if e.passed { "ok  " } else { "FAIL" }, e.check, e.detail);
        }
        out
    }
}

/// Checks `k`-connectivity: nonemptiness, path-connectivity, vanishing of
/// `H̃_1..H̃_k` and, for `k ≥ 1`, trivialization of an edge-path
/// presentation of `π_1`.
pub fn certify_connectivity(cx: &SimplicialComplex, k: i64, budget: TietzeBudget) -> ConnectivityCertificate {
    let mut evidence = Vec::new();
    let cert = |status, evidence, homology| ConnectivityCertificate { target: k, status, evidence, homology };
    if k < -1 {
        return cert(CertificateStatus::Certified, evidence, None);
    }
    let nonempty = !cx.is_empty();
    evidence.push(Evidence { check: "nonempty".into(), passed: nonempty, detail: format!("{} vertices", cx.count(0)) });
    if !nonempty {
        return cert(CertificateStatus::Refuted, evidence, None);
    }
    if k == -1 {
        return cert(CertificateStatus::Certified, evidence, None);
    }
    let comps = cx.components().len();
    evidence.push(Evidence {
        check: "path-connected".into(),
        passed: comps == 1,
        detail: format!("{comps} components"),
    });
    if comps != 1 {
        return cert(CertificateStatus::Refuted, evidence, None);
    }
    if k == 0 {
        return cert(CertificateStatus::Certified, evidence, None);
    }
    let top = k as usize;
    let h = match reduced_homology(cx, top) {
        Ok(h) => h,
        Err(e) => {
            evidence.push(Evidence { check: format!("H_1..H_{top}"), passed: false, detail: e.to_string() });
            return cert(CertificateStatus::Inconclusive, evidence, None);
        }
    };
    for d in 1..=top as i64 {
        let dh = h.degree(d).expect("computed");
        evidence.push(Evidence {
            check: format!("H_{d} trivial"),
            passed: dh.is_trivial(),
            detail: format!("betti {} torsion {:?}", dh.betti, dh.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>()),
        });
        if !dh.is_trivial() {
            return cert(CertificateStatus::Refuted, evidence, Some(h));
        }
    }
    let p = edge_path_presentation(cx);
    let (_, outcome) = simplify(&p, budget);
    let detail = match &outcome {
        TietzeOutcome::Trivial { steps } => format!("{} generators eliminated in {steps} steps", p.generators),
        TietzeOutcome::Stuck { generators, relators, steps } => {
            format!("{generators} generators and {relators} relators left after {steps} steps")
        }
    };
    let trivial = outcome.is_trivial();
    evidence.push(Evidence { check: "pi_1 trivialized".into(), passed: trivial, detail });
    let status = if trivial { CertificateStatus::Certified } else { CertificateStatus::HomologyOnly };
    cert(status, evidence, Some(h))
}

/// Options for [`verify_nu_theorem`].
#[derive(Clone, Copy, Debug)]
pub struct NuOptions {
    /// Search bound for reduced words.
    pub length_bound: usize,
    /// Largest flag complex built.
    pub simplex_cap: usize,
    pub budget: TietzeBudget,
}

impl Default for NuOptions {
    fn default() -> Self {
        Self { length_bound: 24, simplex_cap: 5_000_000, budget: TietzeBudget::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NuReport {
    pub d: u8,
    pub word: String,
    pub length: usize,
    pub m_a: usize,
    pub m_r: usize,
    pub nu: i64,
    pub vertices: usize,
    pub simplices: usize,
    pub certificate: ConnectivityCertificate,
    pub pass: bool,
}

impl NuReport {
    pub fn to_text(&self) -> String {
        format!(
            "{} d={} l={} m_a={} m_r={} nu={} status={}\n",
            if self.pass { "PASS" } else { "FAIL" },
            self.d,
            self.length,
            self.m_a,
            self.m_r,
            self.nu,
            self.certificate.status
        )
    }
}

/// Builds `AC_d(C,A;X)` and certifies the connectivity the bound predicts.
pub fn verify_nu_theorem(d: u8, set: &ArchetypeSet, x: &ColorWord, opts: NuOptions) -> Result<NuReport> {
    let metrics = archetype_metrics(set, d, opts.length_bound);
    let m_r = metrics
        .m_r
        .bound()
        .ok_or_else(|| Error::invalid(format!("archetypes are not tame within length {}", opts.length_bound)))?;
    let nu = metrics.nu(x.len()).expect("tame");
    let ac = build_ac(d, set, x)?;
    let dim = (nu + 1).max(0) as usize;
    let cx = ac.complex(dim, opts.simplex_cap)?;
    let certificate = certify_connectivity(&cx, nu, opts.budget);
    let simplices = (0..=cx.stored_dim()).map(|k| cx.count(k)).sum();
    Ok(NuReport {
        d,
        word: set.show_word(x),
        length: x.len(),
        m_a: metrics.m_a,
        m_r,
        nu,
        vertices: ac.vertices.len(),
        simplices,
        pass: certificate.status == CertificateStatus::Certified,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arc::{build_ac1, build_ac3};

    fn hollow_triangle() -> SimplicialComplex {
        SimplicialComplex::from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]], 2).unwrap()
    }

    #[test]
    fn circle_and_disk() {
        let h = reduced_homology(&hollow_triangle(), 1).unwrap();
        assert!(h.degree(0).unwrap().is_trivial());
        assert_eq!(h.degree(1).unwrap().betti, 1);
        let disk = SimplicialComplex::from_facets(&[vec![0, 1, 2]], 2).unwrap();
        assert!(reduced_homology(&disk, 2).unwrap().trivial_through(2));
        let empty = reduced_homology(&SimplicialComplex::empty(), 0).unwrap();
        assert_eq!(empty.degree(-1).unwrap().betti, 1);
    }

    #[test]
    fn truncated_complexes_refuse_high_degrees() {
        let k = flag_expand(3, &[(0, 1), (1, 2), (0, 2)], 1, 100).unwrap();
        assert!(reduced_homology(&k, 1).is_err());
        assert!(reduced_homology(&k, 0).is_ok());
    }

    #[test]
    fn matching_complex_of_k7_has_three_torsion() {
        let a = ArchetypeSet::monochromatic_binary();
        let cx = build_ac3(&a, &a.uniform_word("c", 7).unwrap()).complex(3, 1 << 20).unwrap();
        let sparse = reduced_homology_via(&cx, 1, SnfRoute::Sparse).unwrap();
        let dense = reduced_homology_via(&cx, 1, SnfRoute::DenseOracle).unwrap();
        assert_eq!(sparse, dense);
        assert_eq!(sparse.degree(1).unwrap().torsion, vec![BigInt::from(3)]);
        assert_eq!(sparse.degree(1).unwrap().betti, 0);
    }

    #[test]
    fn certificates() {
        let full = SimplicialComplex::from_facets(&[vec![0, 1, 2, 3]], 3).unwrap();
        for k in -1..=2 {
            assert_eq!(certify_connectivity(&full, k, TietzeBudget::default()).status, CertificateStatus::Certified);
        }
        assert_eq!(
            certify_connectivity(&hollow_triangle(), 1, TietzeBudget::default()).status,
            CertificateStatus::Refuted
        );
        assert_eq!(
            certify_connectivity(&SimplicialComplex::empty(), -1, TietzeBudget::default()).status,
            CertificateStatus::Refuted
        );
    }

    #[test]
    fn ac1_at_ten_is_simply_connected() {
        let a = ArchetypeSet::monochromatic_binary();
        let cx = build_ac1(&a, &a.uniform_word("c", 10).unwrap()).complex(2, 1 << 20).unwrap();
        let c = certify_connectivity(&cx, 1, TietzeBudget::default());
        assert_eq!(c.status, CertificateStatus::Certified, "{}", c.to_text());
    }

    #[test]
    fn bound_examples() {
        let a = ArchetypeSet::monochromatic_binary();
        let r = verify_nu_theorem(3, &a, &a.uniform_word("c", 7).unwrap(), NuOptions::default()).unwrap();
        assert_eq!((r.nu, r.pass), (0, true));
        let r = verify_nu_theorem(1, &a, &a.uniform_word("c", 3).unwrap(), NuOptions::default()).unwrap();
        assert_eq!((r.nu, r.vertices, r.pass), (-1, 2, true));
    }

    #[test]
    fn ac1_descending_link_is_the_complex_of_the_suffix() {
        // height -q for the first node q met; descending link of the block at q
        let a = ArchetypeSet::monochromatic_binary();
        let l = 9;
        let ac = build_ac1(&a, &a.uniform_word("c", l).unwrap());
        let cx = ac.complex(4, 1 << 20).unwrap();
        for (v, arc) in ac.vertices.iter().enumerate() {
            let h = |w: u32| -(ac.vertices[w as usize].nodes[0] as i64);
            let dl = descending_link(&cx, v as u32, h).unwrap();
            let end = *arc.nodes.last().unwrap() + 1;
            let suffix = build_ac1(&a, &a.uniform_word("c", l - end).unwrap());
            let shifted: Vec<Vec<u32>> = dl
                .facets()
                .into_iter()
                .map(|f| {
                    f.iter()
                        .map(|&w| {
                            let nodes: Vec<usize> = ac.vertices[w as usize].nodes.iter().map(|n| n - end).collect();
                            suffix.vertices.iter().position(|s| s.nodes == nodes).unwrap() as u32
                        })
                        .collect()
                })
                .collect();
            let expect = suffix.complex(4, 1 << 20).unwrap();
            let mut exp = expect.facets();
            let mut got = shifted;
            for f in got.iter_mut() {
                f.sort_unstable();
            }
            got.sort();
            exp.sort();
            assert_eq!(got, exp, "arc at {:?}", arc.nodes);
        }
    }
}
