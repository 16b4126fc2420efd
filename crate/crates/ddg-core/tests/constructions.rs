//! Construction conformance at small scale: every recipe reproduces its
//! stated parameter tuple and passes the defining identity (which
//! `construct_all` enforces internally).

use ddg_core::constructions::{construct, construct_all, ConstructionId, IngredientStore, Opts};
use ddg_core::params::ParamSet;

fn id(s: &str) -> ConstructionId {
    s.parse().unwrap()
}

fn store() -> IngredientStore {
    IngredientStore::builtin()
}

fn data_store() -> IngredientStore {
    IngredientStore::with_data_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data"))
}

#[test]
fn c1_fano_incidence_graph() {
    let fano = store().get("fano").unwrap();
    let built = construct(id("c1"), &[fano], &Opts::new()).unwrap();
    assert_eq!(built.params, ParamSet::new(14, 3, 1, 0, 2, 7));
    assert!(built.params.family_flags().incidence);
}

#[test]
fn c2_triangle_blowup() {
    let k3 = ddg_core::constructions::Ingredient {
        name: "k3".into(),
        payload: ddg_core::constructions::Payload::Graph(
            ddg_core::graph::Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]),
        ),
    };
    let built = construct(id("c2"), &[k3], &Opts::new().set("n", 2)).unwrap();
    assert_eq!(built.params, ParamSet::new(6, 4, 4, 2, 3, 2));
}

#[test]
fn c3_three_empty_pieces() {
    // empty graphs are (4,0,0)-graphs; the output is K_{3x4}
    let piece = || ddg_core::constructions::Ingredient {
        name: "empty4".into(),
        payload: ddg_core::constructions::Payload::Graph(ddg_core::graph::Graph::empty(4)),
    };
    let built = construct(id("c3"), &[piece(), piece(), piece()], &Opts::new()).unwrap();
    assert_eq!(built.params, ParamSet::new(12, 8, 8, 4, 3, 4));
    assert!(built.params.family_flags().diag_blowup);
    assert!(built.params.is_proper());
}

#[test]
fn c4_petersen_and_multipartite() {
    let petersen = store().get("petersen").unwrap();
    let built = construct(id("c4"), &[petersen], &Opts::new()).unwrap();
    assert_eq!(built.params, ParamSet::new(20, 7, 6, 2, 10, 2));

    let k22 = ddg_core::constructions::Ingredient {
        name: "k2x2".into(),
        payload: ddg_core::constructions::Payload::Graph(
            ddg_core::constructions::named::complete_multipartite(2, 2),
        ),
    };
    let built = construct(id("c4"), &[k22], &Opts::new()).unwrap();
    assert_eq!(built.params, ParamSet::new(8, 5, 4, 2, 2, 4));
}

#[test]
fn c5_dss_of_johnson_reproduces_the_second_spectrum() {
    let j63 = store().get("j63").unwrap();
    let opts = Opts::new().set("params", "20,9,0,4,10,2");
    let variants = construct_all(id("c5"), &[j63.clone()], &opts).unwrap();
    assert!(!variants.is_empty());
    // some switch realizes the g = (3,6) spectrum split
    let g_splits: Vec<(u32, u32)> = variants
        .iter()
        .map(|b| {
            let q = ddg_core::quotient::quotient_of(&b.graph, &b.part).unwrap();
            ddg_core::quotient::g_split_from_trace(&b.params, &q).unwrap()
        })
        .collect();
    assert!(g_splits.contains(&(3, 6)), "got {g_splits:?}");
}

#[test]
fn c6_small_antipodal_covers() {
    for (name, want) in [
        ("icosahedron", ParamSet::new(12, 5, 0, 2, 6, 2)),
        ("l-petersen", ParamSet::new(15, 4, 0, 1, 5, 3)),
        ("j63", ParamSet::new(20, 9, 0, 4, 10, 2)),
        ("taylor28", ParamSet::new(28, 13, 0, 6, 14, 2)),
        ("taylor36", ParamSet::new(36, 17, 0, 8, 18, 2)),
    ] {
        let ing = store().get(name).unwrap();
        let built = construct(id("c6"), &[ing], &Opts::new()).unwrap();
        assert_eq!(built.params, want, "c6 from {name}");
    }
}

#[test]
fn c7_partial_complements_of_the_pg32_line_graph() {
    // Hoffman colorings of this SRG(35,18,9,9) are the parallelisms of
    // PG(3,2); each partial complement is a (35,12,3,4,7,5) DDG
    let ing = store().get("srg35-1").unwrap();
    let variants = construct_all(id("c7"), &[ing], &Opts::new()).unwrap();
    assert!(!variants.is_empty());
    for b in &variants {
        assert_eq!(b.params, ParamSet::new(35, 12, 3, 4, 7, 5));
    }
}

#[test]
fn c8_lattice_rows() {
    // order 4, row sum 2 reproduces the 4 x n lattices
    for (n, want) in [
        (2, ParamSet::new(8, 4, 0, 2, 4, 2)),
        (5, ParamSet::new(20, 7, 3, 2, 4, 5)),
        (6, ParamSet::new(24, 8, 4, 2, 4, 6)),
    ] {
        let h = store().get("rghm4-rs2").unwrap();
        let built = construct(id("c8"), &[h], &Opts::new().set("n", n)).unwrap();
        assert_eq!(built.params, want);
        let lattice = ddg_core::constructions::named::lattice(4, n);
        assert_eq!(
            built.plain_cert(),
            ddg_core::canon::certificate(&lattice, None).unwrap()
        );
    }
    // row sum -2 gives the switched family
    let h = store().get("rghm4-rs-2").unwrap();
    let built = construct(id("c8"), &[h], &Opts::new().set("n", 3)).unwrap();
    assert_eq!(built.params, ParamSet::new(12, 7, 3, 4, 4, 3));
}

#[test]
fn c9_both_row_sums() {
    let built = construct(id("c9"), &[store().get("rghm4-rs2").unwrap()], &Opts::new()).unwrap();
    assert_eq!(built.params, ParamSet::new(24, 10, 6, 3, 3, 8));
    let built = construct(id("c9"), &[store().get("rghm4-rs-2").unwrap()], &Opts::new()).unwrap();
    assert_eq!(built.params, ParamSet::new(24, 6, 2, 1, 3, 8));
}

#[test]
fn c10_pair_classes() {
    let h2 = store().get("h2").unwrap();
    let built = construct(
        id("c10"),
        &[store().get("rghm4-rs2").unwrap(), h2.clone()],
        &Opts::new(),
    )
    .unwrap();
    assert_eq!(built.params, ParamSet::new(24, 14, 6, 8, 12, 2));
    let built = construct(
        id("c10"),
        &[store().get("rghm4-rs-2").unwrap(), h2],
        &Opts::new(),
    )
    .unwrap();
    assert_eq!(built.params, ParamSet::new(24, 10, 2, 4, 12, 2));
}

#[test]
fn c11_lattices() {
    let built = construct(id("c11"), &[], &Opts::new().set("n", 5)).unwrap();
    assert_eq!(built.params, ParamSet::new(20, 7, 3, 2, 4, 5));
    let built = construct(id("c11"), &[], &Opts::new().set("n", 9)).unwrap();
    assert_eq!(built.params, ParamSet::new(36, 11, 7, 2, 4, 9));
}

#[test]
fn c12_switched_lattice_differs_from_the_lattice() {
    let built = construct(id("c12"), &[], &Opts::new().set("n", 6)).unwrap();
    assert_eq!(built.params, ParamSet::new(24, 8, 4, 2, 4, 6));
    let lattice = construct(id("c11"), &[], &Opts::new().set("n", 6)).unwrap();
    assert_ne!(built.plain_cert(), lattice.plain_cert());
}

#[test]
fn c13_copies_and_alignments() {
    let built = construct(id("c13"), &[], &Opts::new().set("copies", "c4k2+q4")).unwrap();
    assert_eq!(built.params, ParamSet::new(24, 8, 4, 2, 4, 6));
    let built = construct(id("c13"), &[], &Opts::new().set("copies", "c4k2+c4k2+c4k2")).unwrap();
    assert_eq!(built.params, ParamSet::new(24, 8, 4, 2, 4, 6));
    let built = construct(id("c13"), &[], &Opts::new().set("copies", "c8k2")).unwrap();
    assert_eq!(built.params, ParamSet::new(16, 6, 2, 2, 4, 4));
}

#[test]
fn c14_on_each_lattice_family_member() {
    for (src, want) in [
        ("c11", ParamSet::new(24, 16, 12, 10, 4, 6)),
        ("c12", ParamSet::new(24, 16, 12, 10, 4, 6)),
    ] {
        let base = construct(id(src), &[], &Opts::new().set("n", 6)).unwrap();
        let ing = ddg_core::constructions::Ingredient {
            name: format!("{src}-output"),
            payload: ddg_core::constructions::Payload::Graph(base.graph),
        };
        let variants = construct_all(id("c14"), &[ing], &Opts::new()).unwrap();
        assert!(!variants.is_empty());
        for b in &variants {
            assert_eq!(b.params, want);
        }
    }
}

#[test]
fn c15_halved_6_cube() {
    let ing = store().get("halved-6-cube").unwrap();
    let built = construct(id("c15"), &[ing], &Opts::new()).unwrap();
    assert_eq!(built.params, ParamSet::new(32, 16, 0, 8, 16, 2));
}

#[test]
fn c16_schlafli_yields_exactly_two_graphs() {
    let ing = store().get("schlafli").unwrap();
    let variants = construct_all(id("c16"), &[ing], &Opts::new()).unwrap();
    for b in &variants {
        assert_eq!(b.params, ParamSet::new(27, 18, 9, 12, 9, 3));
    }
    let mut certs: Vec<_> = variants.iter().map(|b| b.plain_cert()).collect();
    certs.sort();
    certs.dedup();
    assert_eq!(certs.len(), 2);
}

#[test]
fn c16_t8_and_chang_graphs() {
    let mut certs = std::collections::BTreeSet::new();
    for name in ["t8", "chang1", "chang2", "chang3"] {
        let ing = store().get(name).unwrap();
        let variants = construct_all(id("c16"), &[ing], &Opts::new()).unwrap();
        assert!(!variants.is_empty(), "{name} has Hoffman colorings");
        for b in &variants {
            assert_eq!(b.params, ParamSet::new(28, 15, 6, 8, 7, 4));
            certs.insert(b.plain_cert());
        }
    }
    // Table 1: 56 graphs with the g = (6,0) split
    assert_eq!(certs.len(), 56);
}

#[test]
fn c17_three_icosahedral_copies() {
    let ing = store().get("icosahedron").unwrap();
    let built = construct(
        id("c17"),
        &[ing],
        &Opts::new().set("params", "12,5,0,2,6,2").set("s", 3),
    )
    .unwrap();
    assert_eq!(built.params, ParamSet::new(36, 9, 4, 2, 18, 2));
}

#[test]
fn c18_from_the_affine_design() {
    let ing = store().get("sdd-9-3-0-1").unwrap();
    let built = construct(id("c18"), &[ing], &Opts::new()).unwrap();
    assert_eq!(built.params, ParamSet::new(18, 9, 6, 4, 6, 3));
}

#[test]
fn c22_c23_sporadic_matrices() {
    let built = construct(id("c22"), &[], &Opts::new()).unwrap();
    assert_eq!(built.params, ParamSet::new(27, 8, 4, 2, 9, 3));
    let built = construct(id("c23"), &[], &Opts::new()).unwrap();
    assert_eq!(built.params, ParamSet::new(28, 6, 2, 1, 7, 4));
}

#[test]
fn r1_assembles_both_aligned_blocks() {
    let shrikhande = store().get("shrikhande").unwrap();
    let mut certs = std::collections::BTreeSet::new();
    for block in ["r1-cross-1", "r1-cross-2"] {
        let sdd = data_store().get(block).unwrap();
        let built = construct(id("r1"), &[shrikhande.clone(), sdd], &Opts::new()).unwrap();
        assert_eq!(built.params, ParamSet::new(32, 10, 2, 3, 8, 4));
        certs.insert(built.plain_cert());
    }
    // the two known non-isomorphic graphs with these parameters
    assert_eq!(certs.len(), 2);
}

#[test]
fn c6_and_partial_complement_of_the_klein_graph() {
    let klein = data_store().get("klein").unwrap();
    let built = construct(id("c6"), &[klein], &Opts::new()).unwrap();
    assert_eq!(built.params, ParamSet::new(24, 7, 0, 2, 8, 3));
    // partial complement: the Table row (24,14,7,8,8,3)
    let pc = ddg_core::ops::partial_complement(&built.graph, &built.part).unwrap();
    let p = ParamSet::new(24, 14, 7, 8, 8, 3);
    assert!(ddg_core::enumerate::is_ddg(&pc, &p, &built.part));
    // twice brings the original back
    assert_eq!(
        ddg_core::ops::partial_complement(&pc, &built.part).unwrap(),
        built.graph
    );
}

#[test]
fn c20_c21_from_the_bundled_weighing_matrices() {
    for (name, p20, p21) in [
        (
            "w12",
            ParamSet::new(24, 14, 6, 8, 12, 2),
            ParamSet::new(24, 10, 2, 4, 12, 2),
        ),
        (
            "w16",
            ParamSet::new(32, 18, 6, 10, 16, 2),
            ParamSet::new(32, 14, 2, 6, 16, 2),
        ),
    ] {
        let w = data_store().get(name).unwrap();
        let b20 = construct(id("c20"), &[w.clone()], &Opts::new()).unwrap();
        assert_eq!(b20.params, p20);
        let b21 = construct(id("c21"), &[w], &Opts::new()).unwrap();
        assert_eq!(b21.params, p21);
        // c21 removes exactly 16t edges from the c20 graph
        let t = (p20.v / 8) as usize;
        assert_eq!(
            b20.graph.edge_count() - b21.graph.edge_count(),
            16 * t
        );
    }
}

#[test]
fn c18_c19_from_the_bundled_divisible_designs() {
    let sdd = data_store().get("sdd-18-12-6-8").unwrap();
    let built = construct(id("c18"), &[sdd], &Opts::new()).unwrap();
    assert_eq!(built.params, ParamSet::new(36, 27, 21, 20, 12, 3));

    let sdd = data_store().get("sdd-18-6-0-2").unwrap();
    let variants = construct_all(id("c19"), &[sdd], &Opts::new()).unwrap();
    assert!(!variants.is_empty());
    for b in &variants {
        assert_eq!(b.params, ParamSet::new(36, 9, 3, 2, 12, 3));
    }
    // Table 1: two non-isomorphic graphs arise over the pairings
    let mut certs: Vec<_> = variants.iter().map(|b| b.plain_cert()).collect();
    certs.sort();
    certs.dedup();
    assert_eq!(certs.len(), 2);
}

#[test]
fn family_characterizations_hold_forward() {
    // every c1 output has lambda2 = 0; every c2 output lambda1 = k; every c3
    // output lambda2 = 2k - v
    let fano = store().get("fano").unwrap();
    let b1 = construct(id("c1"), &[fano], &Opts::new()).unwrap();
    assert_eq!(b1.params.lambda2, 0);
    let k3 = ddg_core::constructions::Ingredient {
        name: "k3".into(),
        payload: ddg_core::constructions::Payload::Graph(
            ddg_core::graph::Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]),
        ),
    };
    let b2 = construct(id("c2"), &[k3], &Opts::new().set("n", 3)).unwrap();
    assert_eq!(b2.params.lambda1, b2.params.k);
    let piece = || ddg_core::constructions::Ingredient {
        name: "empty4".into(),
        payload: ddg_core::constructions::Payload::Graph(ddg_core::graph::Graph::empty(4)),
    };
    let b3 = construct(id("c3"), &[piece(), piece(), piece()], &Opts::new()).unwrap();
    assert_eq!(b3.params.lambda2 as i64, 2 * b3.params.k as i64 - b3.params.v as i64);
}
