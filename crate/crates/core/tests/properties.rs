use operadica::arc::{build_ac1, build_ac3, ArchetypeSet};
use operadica::braid::{BraidWord, GarsideNF};
use operadica::fractions::groups::{Family, GroupContext};
use operadica::homology::{
    boundary_matrices, dense_snf_oracle, reduced_homology, smith_normal_form, SimplicialComplex, SparseMatrix,
};
use operadica::ColorWord;
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..9, 1usize..9).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..=3], c), r)
    })
}

fn facets() -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::btree_set(0u32..7, 1..5), 1..8)
        .prop_map(|fs| fs.into_iter().map(|f| f.into_iter().collect()).collect())
}

fn shuffled(n: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut s = seed;
    for i in (1..n).rev() {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        p.swap(i, (s >> 33) as usize % (i + 1));
    }
    p
}

fn letters(n: usize) -> impl Strategy<Value = Vec<i32>> {
    let k = (n - 1) as i32;
    prop::collection::vec(prop_oneof![1..=k, -k..=-1], 0..16)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn snf_matches_the_oracle_and_ignores_permutations(m in matrix(), seed in any::<u64>()) {
        let a = SparseMatrix::from_dense(&m);
        let s = smith_normal_form(&a);
        prop_assert!(s.is_divisibility_chain());
        prop_assert_eq!(&s, &dense_snf_oracle(&a));
        let p = a.permute(&shuffled(a.rows, seed), &shuffled(a.cols, seed ^ 0x9e37));
        prop_assert_eq!(&s, &smith_normal_form(&p));
    }

    #[test]
    fn boundaries_compose_to_zero(fs in facets()) {
        let k = SimplicialComplex::from_facets(&fs, 4).unwrap();
        let c = boundary_matrices(&k, 4).unwrap();
        for d in 1..c.boundaries.len() {
            let prod = c.boundaries[d - 1].mul(&c.boundaries[d]).unwrap();
            prop_assert!(prod.is_zero());
        }
    }

    #[test]
    fn cones_are_acyclic(fs in facets()) {
        let apex = 100;
        let coned: Vec<Vec<u32>> = fs.iter().map(|f| {
            let mut g = f.clone();
            g.push(apex);
            g
        }).collect();
        let k = SimplicialComplex::from_facets(&coned, 5).unwrap();
        prop_assert!(reduced_homology(&k, 4).unwrap().trivial_through(4));
    }

    #[test]
    fn euler_characteristic_from_betti_numbers(fs in facets()) {
        let k = SimplicialComplex::from_facets(&fs, 4).unwrap();
        let h = reduced_homology(&k, 3).unwrap();
        let alt: i64 = (0..=3).map(|d| {
            let b = h.degree(d).unwrap().betti as i64;
            if d % 2 == 0 { b } else { -b }
        }).sum();
        prop_assert_eq!(k.euler_characteristic() - 1, alt);
    }

    #[test]
    fn garside_forms_respect_products_and_inverses(n in 2usize..6, u in letters(6), v in letters(6)) {
        let clip = |w: &[i32]| -> Vec<i32> { w.iter().copied().filter(|x| (x.unsigned_abs() as usize) < n).collect() };
        let a = BraidWord::new(n, clip(&u)).unwrap();
        let b = BraidWord::new(n, clip(&v)).unwrap();
        let (na, nb) = (GarsideNF::from_word(&a), GarsideNF::from_word(&b));
        prop_assert_eq!(na.then(&nb), GarsideNF::from_word(&a.then(&b).unwrap()));
        prop_assert!(na.then(&na.inverse()).is_identity());
        prop_assert_eq!(GarsideNF::from_word(&na.to_word()), na);
    }

    #[test]
    fn thompson_words_times_inverses_are_trivial(w in prop::collection::vec((0usize..4, any::<bool>()), 1..6)) {
        let ctx = GroupContext::new(Family::F).unwrap();
        let text: Vec<String> = w.iter().map(|(i, pos)| format!("x{i}^{}", if *pos { 1 } else { -1 })).collect();
        let g = ctx.word(&text.join(" ")).unwrap();
        let id = ctx.identity().unwrap();
        prop_assert!(ctx.equal(&ctx.mul(&g, &g.invert()).unwrap(), &id).unwrap().is_equal());
        prop_assert!(ctx.equal(&g, &g.clone()).unwrap().is_equal());
    }

    #[test]
    fn arc_complexes_are_nonempty_past_the_tameness_bound(bits in prop::collection::vec(any::<bool>(), 5..14)) {
        let st = ArchetypeSet::parse(&["S", "T"], &["q:SSSS", "t:TT", "u:TTTT"]).unwrap();
        let (s, t) = (st.color("S").unwrap(), st.color("T").unwrap());
        let x = ColorWord::new(bits.iter().map(|&b| if b { s } else { t }).collect());
        prop_assert!(!build_ac3(&st, &x).is_empty());
        let mono = ArchetypeSet::monochromatic_binary();
        let y = mono.uniform_word("c", bits.len()).unwrap();
        prop_assert!(!build_ac1(&mono, &y).is_empty());
        prop_assert!(!build_ac3(&mono, &y).is_empty());
    }
}
