//! Generators for the named graphs the constructions feed on.

use crate::graph::{ClassPartition, Graph};

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for x in 0..n {
        for y in 0..x {
            g.add_edge(x, y);
        }
    }
    g
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
}

/// Complete multipartite graph with `x` parts of `y` vertices.
pub fn complete_multipartite(x: usize, y: usize) -> Graph {
    let mut g = Graph::empty(x * y);
    for a in 0..x * y {
        for b in 0..a {
            if a / y != b / y {
                g.add_edge(a, b);
            }
        }
    }
    g
}

/// Line graph: vertices are the edges of `g` in lexicographic order.
pub fn line_graph(g: &Graph) -> Graph {
    let edges = g.edges();
    let mut edges: Vec<(usize, usize)> = edges
        .into_iter()
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    edges.sort_unstable();
    let mut lg = Graph::empty(edges.len());
    for i in 0..edges.len() {
        for j in 0..i {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if a == c || a == d || b == c || b == d {
                lg.add_edge(i, j);
            }
        }
    }
    lg
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::empty(a + b);
    for x in 0..a {
        for y in 0..b {
            g.add_edge(x, a + y);
        }
    }
    g
}

/// `m x n`-lattice graph: the line graph of K_{m,n}, laid out as the grid
/// (row, column) -> row * n + column.
pub fn lattice(m: usize, n: usize) -> Graph {
    let mut g = Graph::empty(m * n);
    for x in 0..m * n {
        for y in 0..x {
            if x / n == y / n || x % n == y % n {
                g.add_edge(x, y);
            }
        }
    }
    g
}

/// Petersen graph as the Kneser graph on 2-subsets of a 5-set.
pub fn petersen() -> Graph {
    let pairs: Vec<(usize, usize)> =
        (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    let mut g = Graph::empty(10);
    for i in 0..10 {
        for j in 0..i {
            let (a, b) = pairs[i];
            let (c, d) = pairs[j];
            if a != c && a != d && b != c && b != d {
                g.add_edge(i, j);
            }
        }
    }
    g
}

pub fn icosahedron() -> Graph {
    Graph::from_edges(
        12,
        &[
            (0, 1), (0, 2), (0, 3), (0, 4), (0, 5),
            (1, 2), (2, 3), (3, 4), (4, 5), (5, 1),
            (1, 6), (1, 7), (2, 7), (2, 8), (3, 8),
            (3, 9), (4, 9), (4, 10), (5, 10), (5, 6),
            (6, 7), (7, 8), (8, 9), (9, 10), (10, 6),
            (11, 6), (11, 7), (11, 8), (11, 9), (11, 10),
        ],
    )
}

pub fn octahedron() -> Graph {
    let mut g = complete(6);
    for i in 0..3 {
        g.remove_edge(i, i + 3);
    }
    g
}

/// Johnson graph J(n, k): k-subsets, adjacent when they share k-1 elements.
pub fn johnson(n: usize, k: usize) -> Graph {
    let subsets = k_subsets(n, k);
    let mut g = Graph::empty(subsets.len());
    for i in 0..subsets.len() {
        for j in 0..i {
            if (subsets[i] & subsets[j]).count_ones() as usize == k - 1 {
                g.add_edge(i, j);
            }
        }
    }
    g
}

fn k_subsets(n: usize, k: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|s| s.count_ones() as usize == k).collect()
}

/// Shrikhande graph: Cayley graph of Z4 x Z4 with connection set
/// {±(1,0), ±(0,1), ±(1,1)}.
pub fn shrikhande() -> Graph {
    let mut g = Graph::empty(16);
    let gens = [(1i32, 0i32), (0, 1), (1, 1), (3, 0), (0, 3), (3, 3)];
    for a in 0..4i32 {
        for b in 0..4i32 {
            for (da, db) in gens {
                let (c, d) = ((a + da).rem_euclid(4), (b + db).rem_euclid(4));
                let (x, y) = ((a * 4 + b) as usize, (c * 4 + d) as usize);
                if x != y && !g.has_edge(x, y) {
                    g.add_edge(x, y);
                }
            }
        }
    }
    g
}

/// Schläfli graph as the complement of the double-six line-intersection
/// graph on the 27 lines of a cubic surface.
pub fn schlafli() -> Graph {
    // vertices: a_1..a_6 (0..6), b_1..b_6 (6..12), c_{ij} for i<j (12..27)
    let cs: Vec<(usize, usize)> =
        (0..6).flat_map(|i| (i + 1..6).map(move |j| (i, j))).collect();
    let mut meet = Graph::empty(27);
    for i in 0..6 {
        for j in 0..6 {
            if i != j {
                meet.add_edge(i, 6 + j);
            }
        }
    }
    for (t, &(i, j)) in cs.iter().enumerate() {
        for x in [i, j] {
            meet.add_edge(x, 12 + t);
            meet.add_edge(6 + x, 12 + t);
        }
        for (u, &(a, b)) in cs.iter().enumerate() {
            if u < t && a != i && a != j && b != i && b != j {
                meet.add_edge(12 + t, 12 + u);
            }
        }
    }
    meet.complement()
}

/// Triangular graph T(n) = L(K_n).
pub fn triangular(n: usize) -> Graph {
    line_graph(&complete(n))
}

/// Seidel switching with respect to a vertex subset: adjacency between the
/// subset and its complement is inverted.
pub fn seidel_switch(g: &Graph, subset: &[usize]) -> Graph {
    let mut out = g.clone();
    let in_set = |x: usize| subset.contains(&x);
    for x in 0..g.vertex_count() {
        for y in 0..x {
            if in_set(x) != in_set(y) {
                out.toggle_edge(x, y);
            }
        }
    }
    out
}

/// The three Chang graphs: Seidel switchings of T(8) along a perfect
/// matching, a triangle plus a pentagon, and an 8-cycle of K_8.
pub fn chang(which: usize) -> Graph {
    let t8 = triangular(8);
    // vertex of T(8) = edge {i,j} of K_8 in lexicographic order
    let idx = |i: usize, j: usize| -> usize {
        let (i, j) = (i.min(j), i.max(j));
        let mut t = 0;
        for a in 0..8 {
            for b in a + 1..8 {
                if (a, b) == (i, j) {
                    return t;
                }
                t += 1;
            }
        }
        unreachable!()
    };
    let switching: Vec<usize> = match which {
        1 => vec![idx(0, 1), idx(2, 3), idx(4, 5), idx(6, 7)],
        2 => {
            let mut s = vec![idx(0, 1), idx(1, 2), idx(2, 0)];
            s.extend([idx(3, 4), idx(4, 5), idx(5, 6), idx(6, 7), idx(7, 3)]);
            s
        }
        3 => (0..8).map(|i| idx(i, (i + 1) % 8)).collect(),
        _ => panic!("chang graphs are numbered 1..=3"),
    };
    seidel_switch(&t8, &switching)
}

/// Paley graph on a prime q = 1 mod 4.
pub fn paley(q: usize) -> Graph {
    let mut residues = vec![false; q];
    for x in 1..q {
        residues[x * x % q] = true;
    }
    let mut g = Graph::empty(q);
    for x in 0..q {
        for y in 0..x {
            if residues[(x + q - y) % q] {
                g.add_edge(x, y);
            }
        }
    }
    g
}

/// Taylor double cover of K_{q+1} built from the regular two-graph of
/// Paley(q) plus an isolated point: vertices (x, level) with x in 0..=q,
/// x = q playing the isolated point.
pub fn taylor(q: usize) -> Graph {
    let p = paley(q);
    let v = q + 1;
    let mut g = Graph::empty(2 * v);
    let adj = |x: usize, y: usize| -> bool {
        if x == q || y == q {
            false
        } else {
            p.has_edge(x, y)
        }
    };
    for x in 0..v {
        for y in 0..x {
            for i in 0..2 {
                for j in 0..2 {
                    let same = i == j;
                    if adj(x, y) == same {
                        g.add_edge(2 * x + i, 2 * y + j);
                    }
                }
            }
        }
    }
    g
}

/// Halved 6-cube: even-weight vectors of F_2^6, adjacent at Hamming
/// distance 2.
pub fn halved_6_cube() -> Graph {
    let verts: Vec<u32> = (0u32..64).filter(|x| x.count_ones() % 2 == 0).collect();
    let mut g = Graph::empty(32);
    for i in 0..32 {
        for j in 0..i {
            if (verts[i] ^ verts[j]).count_ones() == 2 {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// 4-dimensional hypercube together with an equitable partition whose
/// quotient matrix is J_4. Not every J_4-partition of Q_4 supports the
/// class-switching construction; this one does, with any split of its
/// classes into two pairs.
pub fn hypercube4_with_partition() -> (Graph, ClassPartition) {
    let mut g = Graph::empty(16);
    for x in 0..16u32 {
        for b in 0..4 {
            let y = x ^ (1 << b);
            if y > x {
                g.add_edge(x as usize, y as usize);
            }
        }
    }
    // closed under complementation; the internal matchings of the four
    // classes use four different cube directions
    let classes = vec![
        vec![0, 1, 14, 15],
        vec![2, 6, 9, 13],
        vec![3, 4, 11, 12],
        vec![5, 7, 8, 10],
    ];
    let part = ClassPartition::from_classes(16, &classes).unwrap();
    (g, part)
}

/// C_s[complement of K_2] for s = 4t: each cycle vertex doubled, together
/// with the fixed equitable partition with quotient J_4.
pub fn cycle_doubled_with_partition(s: usize) -> (Graph, ClassPartition) {
    assert!(s >= 4 && s % 4 == 0, "needs a cycle length divisible by 4");
    let mut g = Graph::empty(2 * s);
    for i in 0..s {
        let j = (i + 1) % s;
        for a in 0..2 {
            for b in 0..2 {
                g.add_edge(2 * i + a, 2 * j + b);
            }
        }
    }
    let class = |i: usize, a: usize| -> usize { ((i / 2) % 2) * 2 + a };
    let mut classes = vec![Vec::new(); 4];
    for i in 0..s {
        for a in 0..2 {
            classes[class(i, a)].push(2 * i + a);
        }
    }
    let part = ClassPartition::from_classes(2 * s, &classes).unwrap();
    (g, part)
}

/// Fano plane incidence matrix: the (7,3,1)-design.
pub fn fano_incidence() -> Vec<Vec<u8>> {
    let mut n = vec![vec![0u8; 7]; 7];
    for (b, base) in (0..7).enumerate() {
        for d in [0, 1, 3] {
            n[(base + d) % 7][b] = 1;
        }
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_srg(g: &Graph) -> Option<(usize, usize, usize, usize)> {
        let v = g.vertex_count();
        let k = g.is_regular()?;
        let mut lambda = None;
        let mut mu = None;
        for x in 0..v {
            for y in 0..x {
                let c = g.common_neighbors(x, y);
                let slot = if g.has_edge(x, y) { &mut lambda } else { &mut mu };
                match slot {
                    None => *slot = Some(c),
                    Some(val) if *val == c => {}
                    _ => return None,
                }
            }
        }
        Some((v, k, lambda?, mu?))
    }

    #[test]
    fn srg_parameters_of_named_graphs() {
        assert_eq!(is_srg(&petersen()), Some((10, 3, 0, 1)));
        assert_eq!(is_srg(&shrikhande()), Some((16, 6, 2, 2)));
        assert_eq!(is_srg(&schlafli()), Some((27, 16, 10, 8)));
        assert_eq!(is_srg(&triangular(8)), Some((28, 12, 6, 4)));
        assert_eq!(is_srg(&paley(13)), Some((13, 6, 2, 3)));
        for i in 1..=3 {
            assert_eq!(is_srg(&chang(i)), Some((28, 12, 6, 4)));
            // switched, not isomorphic to T(8)
            assert_ne!(
                crate::canon::certificate(&chang(i), None).unwrap(),
                crate::canon::certificate(&triangular(8), None).unwrap()
            );
        }
    }

    #[test]
    fn chang_graphs_are_pairwise_distinct() {
        let certs: Vec<_> = (1..=3)
            .map(|i| crate::canon::certificate(&chang(i), None).unwrap())
            .collect();
        assert_ne!(certs[0], certs[1]);
        assert_ne!(certs[0], certs[2]);
        assert_ne!(certs[1], certs[2]);
    }

    #[test]
    fn icosahedron_shape() {
        let g = icosahedron();
        assert_eq!(g.is_regular(), Some(5));
        assert_eq!(g.edge_count(), 30);
        assert!(g.is_connected());
    }

    #[test]
    fn doubled_structures_have_j4_quotients() {
        let (q4, part) = hypercube4_with_partition();
        let q = crate::quotient::quotient_of(&q4, &part).unwrap();
        assert_eq!(q.rows(), vec![vec![1u16; 4]; 4]);
        let (c8d, part) = cycle_doubled_with_partition(8);
        let q = crate::quotient::quotient_of(&c8d, &part).unwrap();
        assert_eq!(q.rows(), vec![vec![1u16; 4]; 4]);
    }

    #[test]
    fn johnson_6_3_shape() {
        let g = johnson(6, 3);
        assert_eq!(g.vertex_count(), 20);
        assert_eq!(g.is_regular(), Some(9));
    }
}
