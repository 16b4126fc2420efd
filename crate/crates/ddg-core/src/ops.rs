//! Graph operators used by the constructions: partial complements, all-ones
//! tensor blowups, composition with K_2, incidence graphs, and recovery of
//! the canonical partition from common-neighbour counts.

use crate::graph::{BitIter, ClassPartition, Graph, GraphError, MAX_VERTICES};
use crate::params::ParamSet;

/// Complement of all blocks between distinct classes; blocks inside a class
/// stay untouched. An involution.
pub fn partial_complement(g: &Graph, p: &ClassPartition) -> Result<Graph, GraphError> {
    p.check_fits(g)?;
    let v = g.vertex_count();
    let full = crate::graph::mask_below(v);
    let mut out = Graph::empty(v);
    for x in 0..v {
        let own = p.class_mask(p.class_of(x));
        let row = g.row(x);
        let new_row = (row & own) | (!row & full & !own & !(1 << x));
        for y in BitIter(new_row & !crate::graph::mask_upto(x)) {
            out.add_edge(x, y);
        }
        // lower bits handled from the other side; symmetry is automatic
        for y in BitIter(new_row & crate::graph::mask_below(x)) {
            out.add_edge(x, y);
        }
    }
    Ok(out)
}

/// `A (x) J_n`: every vertex becomes an n-fold twin class. The vertex `(u, i)`
/// is numbered `u * n + i`, and the natural partition into twin classes is
/// returned alongside.
pub fn tensor_allones(g: &Graph, n: usize) -> (Graph, ClassPartition) {
    assert!(n >= 1);
    let v = g.vertex_count();
    assert!(v * n <= MAX_VERTICES, "blowup exceeds {MAX_VERTICES} vertices");
    let mut out = Graph::empty(v * n);
    for x in 0..v {
        for y in BitIter(g.row(x) & crate::graph::mask_below(x)) {
            for i in 0..n {
                for j in 0..n {
                    out.add_edge(x * n + i, y * n + j);
                }
            }
        }
    }
    (out, ClassPartition::contiguous(v, n))
}

/// Lexicographic product `g[K_2]`: `(u, i) ~ (w, j)` iff `u ~ w`, or `u = w`
/// and `i != j`. Vertex `(u, i)` is numbered `u * 2 + i`.
pub fn lexicographic_k2(g: &Graph) -> (Graph, ClassPartition) {
    let v = g.vertex_count();
    assert!(v * 2 <= MAX_VERTICES, "composition exceeds {MAX_VERTICES} vertices");
    let mut out = Graph::empty(v * 2);
    for u in 0..v {
        out.add_edge(2 * u, 2 * u + 1);
        for w in BitIter(g.row(u) & crate::graph::mask_below(u)) {
            for i in 0..2 {
                for j in 0..2 {
                    out.add_edge(2 * u + i, 2 * w + j);
                }
            }
        }
    }
    (out, ClassPartition::contiguous(v, 2))
}

/// Bipartite incidence graph of a 0/1 matrix: rows first, then columns.
pub fn incidence_graph(n_matrix: &[Vec<u8>]) -> Graph {
    let rows = n_matrix.len();
    let cols = if rows == 0 { 0 } else { n_matrix[0].len() };
    assert!(rows + cols <= MAX_VERTICES && rows + cols > 0);
    let mut g = Graph::empty(rows + cols);
    for (i, row) in n_matrix.iter().enumerate() {
        assert_eq!(row.len(), cols, "ragged incidence matrix");
        for (j, &e) in row.iter().enumerate() {
            if e != 0 {
                g.add_edge(i, rows + j);
            }
        }
    }
    g
}

/// Recovers the canonical partition of a proper DDG from the rule that two
/// distinct vertices share a class exactly when they have `lambda1` common
/// neighbours.
pub fn partition_from_common_neighbors(
    g: &Graph,
    p: &ParamSet,
) -> Result<ClassPartition, GraphError> {
    if !p.is_proper() {
        return Err(GraphError::BadPartition(
            "parameters are improper; the lambda1-relation cannot determine classes".into(),
        ));
    }
    if g.vertex_count() != p.v as usize {
        return Err(GraphError::BadPartition(format!(
            "graph has {} vertices, parameters say {}",
            g.vertex_count(),
            p.v
        )));
    }
    let v = g.vertex_count();
    let n = p.n as usize;
    let mut class_of: Vec<Option<usize>> = vec![None; v];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..v {
        if class_of[x].is_some() {
            continue;
        }
        let mates: Vec<usize> = (0..v)
            .filter(|&y| y != x && g.common_neighbors(x, y) == p.lambda1 as usize)
            .collect();
        if mates.len() != n - 1 {
            return Err(GraphError::BadPartition(format!(
                "not a DDG for these parameters: vertex {x} has {} same-class mates, expected {}",
                mates.len(),
                n - 1
            )));
        }
        let id = classes.len();
        let mut class = vec![x];
        class_of[x] = Some(id);
        for &y in &mates {
            if class_of[y].is_some() {
                return Err(GraphError::BadPartition(format!(
                    "not a DDG for these parameters: lambda1-relation is not transitive at {y}"
                )));
            }
            class_of[y] = Some(id);
            class.push(y);
        }
        // transitivity: every mate must see exactly the same class
        for &y in &mates {
            for z in 0..v {
                let related = z != y && g.common_neighbors(y, z) == p.lambda1 as usize;
                if related != (class.contains(&z) && z != y) {
                    return Err(GraphError::BadPartition(format!(
                        "not a DDG for these parameters: lambda1-relation differs at ({y},{z})"
                    )));
                }
            }
        }
        classes.push(class);
    }
    if classes.len() != p.m as usize {
        return Err(GraphError::BadPartition(format!(
            "not a DDG for these parameters: {} classes of size {n}, expected {}",
            classes.len(),
            p.m
        )));
    }
    ClassPartition::from_classes(v, &classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(m: usize, n: usize) -> Graph {
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

    fn petersen() -> Graph {
        // Kneser graph K(5,2): 2-subsets, disjointness
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

    #[test]
    fn partial_complement_is_involutive() {
        let g = lattice(3, 4);
        let p = ClassPartition::contiguous(3, 4);
        let pc = partial_complement(&g, &p).unwrap();
        assert_ne!(pc, g);
        assert_eq!(partial_complement(&pc, &p).unwrap(), g);
    }

    #[test]
    fn partial_complement_of_empty_graph() {
        let g = Graph::empty(4);
        let p = ClassPartition::contiguous(2, 2);
        let pc = partial_complement(&g, &p).unwrap();
        // complete bipartite K_{2,2}
        assert_eq!(pc.edge_count(), 4);
        assert!(pc.has_edge(0, 2) && pc.has_edge(0, 3) && !pc.has_edge(0, 1));
    }

    #[test]
    fn tensor_blowup_shapes() {
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let (g, part) = tensor_allones(&k3, 2);
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(part.class_count(), 3);
        assert!((0..6).all(|x| g.degree(x) == 4));
        let (same, _) = tensor_allones(&k3, 1);
        assert_eq!(same, k3);
        let (empty, _) = tensor_allones(&Graph::empty(3), 4);
        assert_eq!(empty.edge_count(), 0);
    }

    #[test]
    fn tensor_degree_scaling() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 3)]);
        let (h, _) = tensor_allones(&g, 3);
        for x in 0..5 {
            for i in 0..3 {
                assert_eq!(h.degree(3 * x + i), 3 * g.degree(x));
            }
        }
    }

    #[test]
    fn k2_composition_cases() {
        let (single, _) = lexicographic_k2(&Graph::empty(1));
        assert_eq!(single.edge_count(), 1);

        let (pk2, _) = lexicographic_k2(&petersen());
        assert_eq!(pk2.vertex_count(), 20);
        assert!((0..20).all(|x| pk2.degree(x) == 7));
    }

    #[test]
    fn incidence_graph_cases() {
        let identity = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let g = incidence_graph(&identity);
        assert_eq!(g.edge_count(), 3);
        assert!((0..6).all(|x| g.degree(x) == 1));

        let j2 = vec![vec![1, 1], vec![1, 1]];
        let c4 = incidence_graph(&j2);
        assert_eq!(c4.edge_count(), 4);
        assert!((0..4).all(|x| c4.degree(x) == 2));
    }

    #[test]
    fn fano_incidence_graph() {
        // (7,3,1)-design: lines x+y=z in Z_7 style triples
        let lines: Vec<[usize; 3]> = (0..7).map(|i| [i, (i + 1) % 7, (i + 3) % 7]).collect();
        let mut n = vec![vec![0u8; 7]; 7];
        for (b, line) in lines.iter().enumerate() {
            for &pt in line {
                n[pt][b] = 1;
            }
        }
        let g = incidence_graph(&n);
        assert!((0..14).all(|x| g.degree(x) == 3));
        // girth at least 6: no 4-cycles means no two vertices share 2 neighbours
        for x in 0..14 {
            for y in 0..x {
                assert!(g.common_neighbors(x, y) <= 1);
            }
        }
    }

    #[test]
    fn recover_lattice_partition() {
        let g = lattice(2, 4);
        let p = ParamSet::new(8, 4, 0, 2, 4, 2);
        let part = partition_from_common_neighbors(&g, &p).unwrap();
        assert_eq!(part.class_count(), 4);
        // columns of the 2x4 lattice pair up x and x+4
        for c in 0..4 {
            let class: Vec<usize> = BitIter(part.class_mask(c)).collect();
            assert_eq!(class[0] + 4, class[1]);
        }
    }

    #[test]
    fn petersen_is_not_a_ddg() {
        let p = ParamSet::new(10, 3, 0, 1, 5, 2);
        assert!(partition_from_common_neighbors(&petersen(), &p).is_err());
    }
}
