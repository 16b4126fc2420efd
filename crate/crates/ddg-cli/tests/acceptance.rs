//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its coverage. The expected counts, multiplicity splits, and
//! walk-regularity flags are frozen from the published classification.

use ddg_core::canon::{certificate, isomorphic_brute_force};
use ddg_core::catalog::{catalog_csv, run_catalog, table_constructions, verify_roundtrip};
use ddg_core::constructions::IngredientStore;
use ddg_core::enumerate::{enumerate_all, SearchConfig, TupleOutcome};
use ddg_core::graph::{ClassPartition, Graph};
use ddg_core::params::{feasible_parameters, integer_sqrt_exact, ParamSet};
use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

/// Row key: parameters plus the (g1, g2) split.
type RowKey = ((u32, u32, u32, u32, u32, u32), (u32, u32));
/// Expected count and walk-regularity per row.
type Expect = (usize, bool);

fn expected_rows_small() -> BTreeMap<RowKey, Expect> {
    // v <= 20
    let rows: &[((u32, u32, u32, u32, u32, u32), (u32, u32), usize, bool)] = &[
        ((8, 4, 0, 2, 4, 2), (3, 0), 1, true),
        ((12, 5, 0, 2, 6, 2), (0, 5), 1, true),
        ((12, 5, 1, 2, 4, 3), (3, 0), 1, true),
        ((12, 6, 2, 3, 3, 4), (2, 0), 1, true),
        ((12, 7, 3, 4, 4, 3), (2, 1), 1, true),
        ((15, 4, 0, 1, 5, 3), (0, 4), 1, true),
        ((18, 9, 6, 4, 6, 3), (1, 4), 1, true),
        ((20, 7, 3, 2, 4, 5), (3, 0), 1, true),
        ((20, 9, 0, 4, 10, 2), (3, 6), 1, false),
        ((20, 9, 0, 4, 10, 2), (0, 9), 1, true),
        ((20, 13, 9, 8, 4, 5), (2, 1), 1, true),
    ];
    rows.iter().map(|&(p, g, c, w)| ((p, g), (c, w))).collect()
}

fn expected_rows_desk() -> BTreeMap<RowKey, Expect> {
    // v = 24..28
    let rows: &[((u32, u32, u32, u32, u32, u32), (u32, u32), usize, bool)] = &[
        ((24, 6, 2, 1, 3, 8), (1, 1), 1, false),
        ((24, 7, 0, 2, 8, 3), (0, 7), 1, true),
        ((24, 8, 4, 2, 4, 6), (3, 0), 1, true),
        ((24, 8, 4, 2, 4, 6), (2, 1), 1, false),
        ((24, 8, 4, 2, 4, 6), (1, 2), 6, true),
        ((24, 10, 2, 4, 12, 2), (3, 8), 5, true),
        ((24, 10, 3, 4, 8, 3), (1, 6), 2, true),
        ((24, 10, 6, 3, 3, 8), (1, 1), 1, false),
        ((24, 14, 6, 8, 12, 2), (2, 9), 1, true),
        ((24, 14, 7, 8, 8, 3), (0, 7), 1, true),
        ((24, 16, 12, 10, 4, 6), (2, 1), 1, true),
        ((24, 16, 12, 10, 4, 6), (1, 2), 1, false),
        ((24, 16, 12, 10, 4, 6), (0, 3), 4, true),
        ((27, 8, 4, 2, 9, 3), (4, 4), 1, false),
        ((27, 18, 9, 12, 9, 3), (8, 0), 2, true),
        ((28, 6, 2, 1, 7, 4), (3, 3), 1, false),
        ((28, 9, 5, 2, 4, 7), (3, 0), 1, true),
        ((28, 13, 0, 6, 14, 2), (0, 13), 1, true),
        ((28, 13, 4, 6, 7, 4), (1, 5), 16, false),
        ((28, 15, 6, 8, 7, 4), (6, 0), 56, true),
        ((28, 15, 6, 8, 7, 4), (3, 3), 4, false),
        ((28, 19, 15, 12, 4, 7), (2, 1), 1, true),
    ];
    rows.iter().map(|&(p, g, c, w)| ((p, g), (c, w))).collect()
}

fn expected_rows_stretch() -> BTreeMap<RowKey, Expect> {
    // v = 32..38, the three open tuples excluded
    let rows: &[((u32, u32, u32, u32, u32, u32), (u32, u32), usize, bool)] = &[
        ((32, 10, 2, 3, 8, 4), (1, 6), 2, true),
        ((32, 10, 6, 2, 4, 8), (3, 0), 1, true),
        ((32, 10, 6, 2, 4, 8), (2, 1), 1, false),
        ((32, 10, 6, 2, 4, 8), (1, 2), 15, true),
        ((32, 14, 2, 6, 16, 2), (4, 11), 15, true),
        ((32, 16, 0, 8, 16, 2), (15, 0), 1, true),
        ((32, 18, 6, 10, 16, 2), (3, 12), 1, true),
        ((32, 22, 18, 14, 4, 8), (2, 1), 1, true),
        ((32, 22, 18, 14, 4, 8), (1, 2), 1, false),
        ((32, 22, 18, 14, 4, 8), (0, 3), 9, true),
        ((35, 12, 3, 4, 7, 5), (3, 3), 2, false),
        ((35, 12, 3, 4, 7, 5), (0, 6), 3854, true),
        ((36, 9, 3, 2, 12, 3), (4, 7), 3, true),
        ((36, 9, 4, 2, 18, 2), (7, 10), 7, true),
        ((36, 11, 7, 2, 4, 9), (3, 0), 1, true),
        ((36, 17, 0, 8, 18, 2), (0, 17), 1, true),
        ((36, 25, 21, 16, 4, 9), (2, 1), 1, true),
        ((36, 27, 21, 20, 12, 3), (1, 10), 1, true),
        ((38, 9, 0, 2, 19, 2), (9, 9), 2, false),
    ];
    rows.iter().map(|&(p, g, c, w)| ((p, g), (c, w))).collect()
}

/// Shared classification cache so criteria 1, 2, 4 and 5 enumerate each
/// vertex count once.
fn classification(v: u32) -> &'static Vec<TupleOutcome> {
    static CACHE: OnceLock<Mutex<BTreeMap<u32, &'static Vec<TupleOutcome>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(v) = guard.get(&v) {
        return v;
    }
    let outcomes = Box::leak(Box::new(enumerate_all(v, &SearchConfig::default())));
    guard.insert(v, outcomes);
    outcomes
}

fn observed_rows(vs: &[u32]) -> BTreeMap<RowKey, Expect> {
    let mut rows: BTreeMap<RowKey, (usize, bool)> = BTreeMap::new();
    for &v in vs {
        for outcome in classification(v) {
            assert!(
                outcome.complete,
                "search for {:?} did not complete: {:?}",
                outcome.tuple.params, outcome.failure
            );
            let p = outcome.tuple.params;
            for g in &outcome.graphs {
                let key =
                    ((p.v, p.k, p.lambda1, p.lambda2, p.m, p.n), g.g_split);
                let entry = rows.entry(key).or_insert((0, g.walk_regular));
                entry.0 += 1;
                assert_eq!(
                    entry.1, g.walk_regular,
                    "mixed walk-regularity inside row {key:?}"
                );
            }
        }
    }
    rows
}

#[test]
fn criterion_1_exact_counts_small_v() {
    let got = observed_rows(&[8, 12, 15, 18, 20]);
    assert_eq!(got, expected_rows_small());
    println!(
        "criterion 1 (exact counts, v in {{8,12,15,18,20}}): PASS ({} rows)",
        got.len()
    );
}

#[test]
fn criterion_2_exact_counts_v24_to_v28() {
    let got = observed_rows(&[24, 25, 26, 27, 28]);
    assert_eq!(got, expected_rows_desk());
    println!("criterion 2 (exact counts, v = 24..28): PASS ({} rows)", got.len());
}

#[test]
#[ignore = "stretch tier: hours of single-core search"]
fn criterion_3_stretch_counts() {
    let got = observed_rows(&[32, 33, 34, 35, 36, 37, 38, 39]);
    assert_eq!(got, expected_rows_stretch());
    println!("criterion 3 (stretch counts, v = 32..39): PASS ({} rows)", got.len());
}

#[test]
fn criterion_4_construction_conformance() {
    let store = IngredientStore::with_data_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data"));
    let built = table_constructions(36, &store);
    assert!(built.len() >= 100, "expected a full construction sweep, got {}", built.len());
    let mut checked_membership = 0;
    for (label, b) in &built {
        // construct_all already verified the defining identity; params must
        // match a known table row
        let p = b.params;
        let key = (p.v, p.k, p.lambda1, p.lambda2, p.m, p.n);
        let known = expected_rows_small()
            .keys()
            .chain(expected_rows_desk().keys())
            .chain(expected_rows_stretch().keys())
            .any(|(q, _)| *q == key);
        assert!(
            known || p.family_flags().any(),
            "{label} produced {p:?}, which is not a table row"
        );
        // enumerated-set membership whenever criteria 1-2 cover the tuple
        if p.v <= 28 && !p.family_flags().any() {
            let outcomes = classification(p.v);
            let outcome = outcomes
                .iter()
                .find(|o| o.tuple.params == p)
                .unwrap_or_else(|| panic!("{label}: tuple {p:?} not classified"));
            let cert = b.plain_cert();
            assert!(
                outcome.graphs.iter().any(|g| g.found.plain_cert == cert),
                "{label} output is missing from the enumerated set of {p:?}"
            );
            checked_membership += 1;
        }
    }
    println!(
        "criterion 4 (construction conformance): PASS ({} builds, {} membership checks)",
        built.len(),
        checked_membership
    );
}

#[test]
fn criterion_5_walk_regularity_flags() {
    let got = observed_rows(&[8, 12, 15, 18, 20, 24, 25, 26, 27, 28]);
    let mut expected = expected_rows_small();
    expected.extend(expected_rows_desk());
    for (key, (_, wr)) in &expected {
        let (_, got_wr) = got
            .get(key)
            .unwrap_or_else(|| panic!("row {key:?} missing from the classification"));
        assert_eq!(got_wr, wr, "walk-regularity flag differs for {key:?}");
    }
    println!(
        "criterion 5 (walk-regularity flags): PASS ({} rows checked)",
        expected.len()
    );
}

#[test]
fn criterion_6_property_suites() {
    // Lemma identities on every admissible profile and quotient matrix
    let mut profiles_checked = 0;
    let mut quotients_checked = 0;
    for v in 6..=24 {
        for tuple in feasible_parameters(v) {
            let p = tuple.params;
            assert!(p.satisfies_identities() && p.is_proper());
            let fsum = p.m * (p.n - 1);
            let gsum = p.m - 1;
            for pr in &tuple.profiles {
                assert_eq!(pr.f1 + pr.f2, fsum);
                assert_eq!(pr.g1 + pr.g2, gsum);
                let term = |d: i64, sq: u64| match integer_sqrt_exact(sq) {
                    Some(r) => d * r as i64,
                    None => {
                        assert_eq!(d, 0, "unequal multiplicities on an irrational eigenvalue");
                        0
                    }
                };
                assert_eq!(
                    p.k as i64
                        + term(pr.f1 as i64 - pr.f2 as i64, pr.rsq)
                        + term(pr.g1 as i64 - pr.g2 as i64, pr.ssq),
                    0
                );
                profiles_checked += 1;
            }
            for q in ddg_core::quotient::enumerate_quotients(&p, &tuple.profiles) {
                assert!(q.satisfies_identities(&p), "quotient identities fail for {p:?}");
                quotients_checked += 1;
            }
        }
    }

    // partial complement is an involution
    let mut rng: u64 = 0x00dd_6001;
    let mut rand = move || {
        rng ^= rng << 13;
        rng ^= rng >> 7;
        rng ^= rng << 17;
        rng
    };
    for trial in 0..50 {
        let m = 2 + (rand() % 4) as usize;
        let n = 2 + (rand() % 4) as usize;
        let v = m * n;
        let mut g = Graph::empty(v);
        for x in 0..v {
            for y in 0..x {
                if rand() % 2 == 0 {
                    g.add_edge(x, y);
                }
            }
        }
        let part = ClassPartition::contiguous(m, n);
        let pc = ddg_core::ops::partial_complement(&g, &part).unwrap();
        assert_eq!(
            ddg_core::ops::partial_complement(&pc, &part).unwrap(),
            g,
            "involution fails on trial {trial}"
        );
    }

    // graph6 round trip on random graphs
    for _ in 0..200 {
        let v = 1 + (rand() % 40) as usize;
        let mut g = Graph::empty(v);
        for x in 0..v {
            for y in 0..x {
                if rand() % 3 == 0 {
                    g.add_edge(x, y);
                }
            }
        }
        let enc = ddg_core::graph6::encode(&g);
        assert_eq!(ddg_core::graph6::decode(&enc).unwrap(), g);
    }

    // certificates agree with brute-force isomorphism: exhaustive on v <= 5,
    // sampled on 6..=8
    let mut pairs_checked = 0;
    let mut all5: Vec<Graph> = Vec::new();
    for code in 0u32..1 << 10 {
        let mut g = Graph::empty(5);
        let mut bit = 0;
        for x in 0..5 {
            for y in 0..x {
                if code >> bit & 1 != 0 {
                    g.add_edge(x, y);
                }
                bit += 1;
            }
        }
        all5.push(g);
    }
    for i in (0..all5.len()).step_by(41) {
        for j in (i..all5.len()).step_by(67) {
            let same = certificate(&all5[i], None).unwrap() == certificate(&all5[j], None).unwrap();
            assert_eq!(same, isomorphic_brute_force(&all5[i], &all5[j]));
            pairs_checked += 1;
        }
    }
    for v in 6..=8usize {
        for _ in 0..60 {
            let mut g = Graph::empty(v);
            for x in 0..v {
                for y in 0..x {
                    if rand() % 2 == 0 {
                        g.add_edge(x, y);
                    }
                }
            }
            // a relabeled copy must match, a perturbed copy must not
            let perm: Vec<usize> = {
                let mut p: Vec<usize> = (0..v).collect();
                for i in (1..v).rev() {
                    p.swap(i, (rand() % (i as u64 + 1)) as usize);
                }
                p
            };
            let h = g.relabel(&perm);
            assert!(isomorphic_brute_force(&g, &h));
            assert_eq!(certificate(&g, None).unwrap(), certificate(&h, None).unwrap());
            let mut damaged = h.clone();
            damaged.toggle_edge(0, 1);
            let same_cert =
                certificate(&g, None).unwrap() == certificate(&damaged, None).unwrap();
            assert_eq!(same_cert, isomorphic_brute_force(&g, &damaged));
            pairs_checked += 2;
        }
    }

    // the feasibility screen agrees with the unpruned oracle for v <= 20
    for v in 1..=20 {
        let got: Vec<ParamSet> =
            feasible_parameters(v).into_iter().map(|t| t.params).collect();
        assert_eq!(got, oracle_feasible(v), "feasibility screen differs at v = {v}");
    }

    // quotient enumeration against the exhaustive scan runs as a unit test
    // of the quotient module; re-check one instance here
    let p = ParamSet::new(8, 4, 0, 2, 4, 2);
    let qs = ddg_core::quotient::enumerate_quotients(
        &p,
        &ddg_core::params::multiplicity_options(&p),
    );
    assert_eq!(qs.len(), 1);

    println!(
        "criterion 6 (property suites): PASS ({profiles_checked} profiles, \
         {quotients_checked} quotients, {pairs_checked} certificate pairs)"
    );
}

/// Unpruned feasibility oracle: every (k, l1, l2, m, n) combination tested
/// directly against the published screening conditions.
fn oracle_feasible(v: u32) -> Vec<ParamSet> {
    let mut out = Vec::new();
    for m in 1..=v {
        for n in 1..=v {
            if m * n != v || m < 2 || n < 2 {
                continue;
            }
            for k in 0..=v {
                if !(3 <= k && k <= v.saturating_sub(3)) {
                    continue;
                }
                let lo = (2 * k as i64 - v as i64).max(0) as u32;
                for l1 in lo..=k {
                    for l2 in lo..=k {
                        if l1 == l2 {
                            continue;
                        }
                        let p = ParamSet::new(v, k, l1, l2, m, n);
                        if oracle_admits(&p) {
                            out.push(p);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

fn oracle_admits(p: &ParamSet) -> bool {
    let (v, k, l1, l2, m, n) = (
        p.v as i64,
        p.k as i64,
        p.lambda1 as i64,
        p.lambda2 as i64,
        p.m as i64,
        p.n as i64,
    );
    if k * k != k + l1 * (n - 1) + l2 * n * (m - 1) {
        return false;
    }
    let s = l1 * (n - 1) + l2 * n * (m - 1);
    if s % (k - 1) != 0 || (v * s) % (k * (k - 1)) != 0 {
        return false;
    }
    if l1 == k - 1 && n % 2 == 1 {
        return false;
    }
    let rsq = k - l1;
    let ssq = k * k - l2 * v;
    if ssq < 0 || rsq == ssq {
        return false;
    }
    let is_square = |x: i64| {
        let r = (x as f64).sqrt().round() as i64;
        (r * r == x).then_some(r)
    };
    let (r, s) = (is_square(rsq), is_square(ssq));
    if !(matches!(r, Some(x) if x > 0) || matches!(s, Some(x) if x > 0)) {
        return false;
    }
    // at least one integral multiplicity splitting must balance the trace
    let fsum = m * (n - 1);
    let gsum = m - 1;
    let g_options: Vec<(i64, i64)> = if ssq == 0 {
        vec![(gsum, 0)]
    } else if let Some(sq) = s {
        (0..=gsum).map(|g1| (g1, (2 * g1 - gsum) * sq)).collect()
    } else if gsum % 2 == 0 {
        vec![(gsum / 2, 0)]
    } else {
        return false;
    };
    for (g1, s_term) in g_options {
        let t = k + s_term;
        let f_ok = if rsq == 0 {
            t == 0
        } else if let Some(rq) = r {
            t % rq == 0 && {
                let d = -t / rq;
                (fsum + d) % 2 == 0 && (fsum + d) / 2 >= 0 && (fsum - d) / 2 >= 0
            }
        } else {
            t == 0 && fsum % 2 == 0
        };
        if f_ok {
            // reject the fully balanced split (trace cannot vanish)
            let g2 = gsum - g1;
            let balanced_g = g1 == g2;
            let balanced_f = if rsq == 0 {
                false
            } else if let Some(rq) = r {
                -(k + s_term) / rq == 0
            } else {
                true
            };
            if !(balanced_f && balanced_g) {
                return true;
            }
        }
    }
    false
}

#[test]
fn catalog_csv_is_byte_identical_across_runs_and_thread_counts() {
    let mut texts = Vec::new();
    for jobs in [1usize, 2] {
        let cfg = SearchConfig { jobs, ..SearchConfig::default() };
        let catalog = run_catalog(28, &cfg);
        for graphs in &catalog.graphs {
            if !graphs.is_empty() {
                assert!(verify_roundtrip(graphs));
            }
        }
        texts.push(catalog_csv(&catalog, false));
    }
    assert_eq!(texts[0], texts[1], "catalog bytes differ between thread counts");
    println!("catalog determinism (v_max = 28, jobs 1 vs 2): PASS");
}
