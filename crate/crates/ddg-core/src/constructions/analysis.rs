//! Structure detection on ingredient graphs: distance decompositions with
//! distance-regularity classification, Hoffman colorings of strongly regular
//! graphs, and Seidel automorphisms.

use crate::graph::{BitIter, ClassPartition, Graph};
use crate::params::integer_sqrt_exact;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("not distance-regular: {0}")]
    NotDistanceRegular(String),
    #[error("not strongly regular")]
    NotStronglyRegular,
    #[error("no Hoffman coloring possible: {0}")]
    NoHoffmanColoring(String),
}

/// Distance decomposition of a connected graph.
#[derive(Clone, Debug)]
pub struct DistanceDecomposition {
    pub diameter: usize,
    /// distance-i relation graphs, i = 1..=diameter
    pub relations: Vec<Graph>,
    /// intersection array {b_0..b_{d-1}; c_1..c_d} when distance-regular
    pub intersection_array: Option<(Vec<usize>, Vec<usize>)>,
    /// antipodal class size r when the distance-d relation plus identity is
    /// an equivalence with equal class sizes
    pub antipodal_classes: Option<ClassPartition>,
}

impl DistanceDecomposition {
    /// lambda = a_1 and mu = c_2 of a distance-regular graph.
    pub fn lambda_mu(&self) -> Option<(usize, usize)> {
        let (b, c) = self.intersection_array.as_ref()?;
        let k = b[0];
        let lambda = k - 1 - b[1];
        Some((lambda, c[1]))
    }
}

/// BFS distances from every vertex, the distance-i graphs, and the
/// distance-regularity data. Errors on disconnected input; a non-DRG comes
/// back with `intersection_array: None` (the witness is in the Err of
/// [`require_drg`]).
pub fn distance_matrices(g: &Graph) -> Result<DistanceDecomposition, AnalysisError> {
    let v = g.vertex_count();
    if !g.is_connected() {
        return Err(AnalysisError::Disconnected);
    }
    let mut dist = vec![vec![usize::MAX; v]; v];
    let mut diameter = 0;
    for s in 0..v {
        dist[s][s] = 0;
        let mut frontier = 1u64 << s;
        let mut seen = frontier;
        let mut d = 0;
        while frontier != 0 {
            d += 1;
            let mut next = 0u64;
            for x in BitIter(frontier) {
                next |= g.row(x);
            }
            next &= !seen;
            for x in BitIter(next) {
                dist[s][x] = d;
            }
            seen |= next;
            frontier = next;
        }
        diameter = diameter.max(dist[s].iter().copied().filter(|&x| x != usize::MAX).max().unwrap());
    }
    let mut relations = Vec::with_capacity(diameter);
    for i in 1..=diameter {
        let mut rel = Graph::empty(v);
        for x in 0..v {
            for y in 0..x {
                if dist[x][y] == i {
                    rel.add_edge(x, y);
                }
            }
        }
        relations.push(rel);
    }
    // intersection numbers: for u' at distance i from u, neighbours of u' at
    // distance i-1 / i / i+1 from u must not depend on the choice
    let mut bs = vec![None; diameter + 1];
    let mut cs = vec![None; diameter + 1];
    let mut asx = vec![None; diameter + 1];
    let mut witness = None;
    'check: for u in 0..v {
        for w in 0..v {
            let i = dist[u][w];
            let (mut c, mut a, mut b) = (0usize, 0usize, 0usize);
            for y in BitIter(g.row(w)) {
                match dist[u][y] {
                    d if d + 1 == i => c += 1,
                    d if d == i => a += 1,
                    d if d == i + 1 => b += 1,
                    _ => {}
                }
            }
            for (slot, val) in [(&mut cs[i], c), (&mut asx[i], a), (&mut bs[i], b)] {
                match slot {
                    None => *slot = Some(val),
                    Some(x) if *x == val => {}
                    Some(x) => {
                        witness = Some(format!(
                            "vertices at distance {i} disagree: {val} vs {x} (pair {u},{w})"
                        ));
                        break 'check;
                    }
                }
            }
        }
    }
    let intersection_array = if witness.is_none() {
        Some((
            (0..diameter).map(|i| bs[i].unwrap()).collect(),
            (1..=diameter).map(|i| cs[i].unwrap()).collect(),
        ))
    } else {
        None
    };
    // antipodality: x ~ y iff dist = 0 or diameter must be an equivalence
    let antipodal_classes = antipodal_partition(v, diameter, &dist);
    Ok(DistanceDecomposition { diameter, relations, intersection_array, antipodal_classes })
}

fn antipodal_partition(v: usize, d: usize, dist: &[Vec<usize>]) -> Option<ClassPartition> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut assigned = vec![false; v];
    for x in 0..v {
        if assigned[x] {
            continue;
        }
        let mut class = vec![x];
        class.extend((0..v).filter(|&y| y != x && dist[x][y] == d));
        for &a in &class {
            for &b in &class {
                if a != b && dist[a][b] != d {
                    return None;
                }
            }
            assigned[a] = true;
        }
        classes.push(class);
    }
    let size = classes[0].len();
    if size < 2 || classes.iter().any(|c| c.len() != size) {
        return None;
    }
    ClassPartition::from_classes(v, &classes).ok()
}

/// Distance-regularity or a witness.
pub fn require_drg(g: &Graph) -> Result<DistanceDecomposition, AnalysisError> {
    let dec = distance_matrices(g)?;
    if dec.intersection_array.is_none() {
        return Err(AnalysisError::NotDistanceRegular(
            "intersection numbers depend on the vertex pair".into(),
        ));
    }
    Ok(dec)
}

/// Strongly regular parameters of a graph, if any.
pub fn srg_parameters(g: &Graph) -> Option<(usize, usize, usize, usize)> {
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

/// Smallest eigenvalue of a strongly regular graph, when integral.
pub fn srg_min_eigenvalue(v: usize, k: usize, lambda: usize, mu: usize) -> Option<i64> {
    let _ = v;
    let tr = lambda as i64 - mu as i64;
    let disc = tr * tr + 4 * (k as i64 - mu as i64);
    let root = integer_sqrt_exact(disc as u64)? as i64;
    let twice = tr - root;
    (twice % 2 == 0).then_some(twice / 2)
}

/// All partitions of a strongly regular graph into cocliques meeting the
/// Hoffman bound, up to class renumbering.
pub fn find_hoffman_colorings(g: &Graph) -> Result<Vec<ClassPartition>, AnalysisError> {
    let (v, k, lambda, mu) = srg_parameters(g).ok_or(AnalysisError::NotStronglyRegular)?;
    let s = srg_min_eigenvalue(v, k, lambda, mu)
        .ok_or_else(|| AnalysisError::NoHoffmanColoring("irrational smallest eigenvalue".into()))?;
    // c = v * s / (s - k) with s < 0
    let num = v as i64 * (-s);
    let den = k as i64 - s;
    if num % den != 0 {
        return Err(AnalysisError::NoHoffmanColoring(format!(
            "Hoffman bound {num}/{den} is not an integer"
        )));
    }
    let c = (num / den) as usize;
    if c == 0 || v % c != 0 {
        return Err(AnalysisError::NoHoffmanColoring(format!(
            "coclique size {c} does not divide {v}"
        )));
    }
    let cocliques = cocliques_of_size(g, c);
    let mut out = Vec::new();
    let mut chosen: Vec<u64> = Vec::new();
    cover(g.vertex_count(), &cocliques, 0, &mut chosen, &mut out);
    Ok(out
        .into_iter()
        .map(|classes| {
            let classes: Vec<Vec<usize>> =
                classes.iter().map(|&m| BitIter(m).collect()).collect();
            ClassPartition::from_classes(v, &classes).unwrap()
        })
        .collect())
}

/// All cocliques of exactly the given size, as bitmasks.
fn cocliques_of_size(g: &Graph, size: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut stack = vec![(0u64, 0usize, 0usize)]; // (mask, count, next vertex)
    while let Some((mask, count, from)) = stack.pop() {
        if count == size {
            out.push(mask);
            continue;
        }
        for x in from..g.vertex_count() {
            if g.row(x) & mask == 0 && g.vertex_count() - x >= size - count {
                stack.push((mask | 1 << x, count + 1, x + 1));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Exact cover of the vertex set by the candidate cocliques.
fn cover(v: usize, cands: &[u64], covered: u64, chosen: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if covered == crate::graph::mask_below(v) {
        out.push(chosen.clone());
        return;
    }
    let lowest = (!covered).trailing_zeros() as u64;
    for &c in cands {
        if c & (1 << lowest) != 0 && c & covered == 0 {
            chosen.push(c);
            cover(v, cands, covered | c, chosen, out);
            chosen.pop();
        }
    }
}

/// All Seidel automorphisms: involutive automorphisms whose non-fixed orbits
/// are pairs of non-adjacent vertices. The identity is excluded.
pub fn find_seidel_automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    let v = g.vertex_count();
    let mut sigma: Vec<Option<usize>> = vec![None; v];
    let mut out = Vec::new();
    seidel_rec(g, &mut sigma, &mut out);
    out.retain(|s| (0..v).any(|x| s[x] != x));
    out
}

fn seidel_rec(g: &Graph, sigma: &mut Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) {
    let v = g.vertex_count();
    let x = match (0..v).find(|&x| sigma[x].is_none()) {
        Some(x) => x,
        None => {
            out.push(sigma.iter().map(|s| s.unwrap()).collect());
            return;
        }
    };
    'cand: for y in x..v {
        if y != x && (sigma[y].is_some() || g.has_edge(x, y) || g.degree(x) != g.degree(y)) {
            continue;
        }
        // adjacency toward every already-paired vertex must be preserved
        for u in 0..v {
            if let Some(su) = sigma[u] {
                if g.has_edge(x, u) != g.has_edge(y, su) {
                    continue 'cand;
                }
            }
        }
        if x != y {
            for u in 0..v {
                if let Some(su) = sigma[u] {
                    if g.has_edge(y, u) != g.has_edge(x, su) {
                        continue 'cand;
                    }
                }
            }
        }
        sigma[x] = Some(y);
        sigma[y] = Some(x);
        seidel_rec(g, sigma, out);
        sigma[x] = None;
        if y != x {
            sigma[y] = None;
        }
    }
}

/// Dual Seidel switching: replaces the adjacency matrix M by PM for the
/// permutation matrix of a Seidel automorphism. For a DDG this preserves the
/// parameters and the canonical partition.
pub fn dual_seidel_switching(g: &Graph, sigma: &[usize]) -> Graph {
    let v = g.vertex_count();
    assert_eq!(sigma.len(), v);
    let mut out = Graph::empty(v);
    for x in 0..v {
        for y in 0..v {
            if x != y && g.has_edge(sigma[x], y) {
                if !out.has_edge(x, y) {
                    out.add_edge(x, y);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::named;

    #[test]
    fn icosahedron_is_an_antipodal_drg() {
        let dec = require_drg(&named::icosahedron()).unwrap();
        assert_eq!(dec.diameter, 3);
        assert_eq!(dec.intersection_array, Some((vec![5, 2, 1], vec![1, 2, 5])));
        assert_eq!(dec.lambda_mu(), Some((2, 2)));
        let part = dec.antipodal_classes.unwrap();
        assert_eq!((part.class_count(), part.class_size()), (6, 2));
    }

    #[test]
    fn halved_6_cube_array() {
        let dec = require_drg(&named::halved_6_cube()).unwrap();
        assert_eq!(dec.intersection_array, Some((vec![15, 6, 1], vec![1, 6, 15])));
        assert_eq!(dec.lambda_mu(), Some((8, 6)));
        assert_eq!(dec.antipodal_classes.unwrap().class_size(), 2);
    }

    #[test]
    fn taylor_graphs_are_drg() {
        let dec = require_drg(&named::taylor(13)).unwrap();
        assert_eq!(dec.intersection_array, Some((vec![13, 6, 1], vec![1, 6, 13])));
        let dec = require_drg(&named::taylor(17)).unwrap();
        assert_eq!(dec.intersection_array, Some((vec![17, 8, 1], vec![1, 8, 17])));
    }

    #[test]
    fn path_is_not_distance_regular() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        assert!(matches!(require_drg(&p3), Err(AnalysisError::NotDistanceRegular(_))));
    }

    #[test]
    fn petersen_has_no_hoffman_coloring() {
        // bound gives cocliques of size 4, but 4 does not divide 10
        let err = find_hoffman_colorings(&named::petersen()).unwrap_err();
        assert!(matches!(err, AnalysisError::NoHoffmanColoring(_)));
    }

    #[test]
    fn t8_hoffman_colorings_are_one_factorizations() {
        let colorings = find_hoffman_colorings(&named::triangular(8)).unwrap();
        // labeled one-factorizations of K_8
        assert_eq!(colorings.len(), 6240);
        assert!(colorings
            .iter()
            .all(|p| (p.class_count(), p.class_size()) == (7, 4)));
    }

    #[test]
    fn seidel_automorphisms_of_small_graphs() {
        assert!(find_seidel_automorphisms(&named::complete(5)).is_empty());
        let c4 = named::cycle(4);
        let swaps = find_seidel_automorphisms(&c4);
        // the two single antipodal swaps and their product
        assert_eq!(swaps.len(), 3);
        assert!(swaps.contains(&vec![2, 1, 0, 3]));
        assert!(swaps.contains(&vec![0, 3, 2, 1]));
        assert!(swaps.contains(&vec![2, 3, 0, 1]));
    }

    #[test]
    fn dss_on_johnson_6_3() {
        let j63 = named::johnson(6, 3);
        let sigmas = find_seidel_automorphisms(&j63);
        assert!(!sigmas.is_empty());
        let p = crate::params::ParamSet::new(20, 9, 0, 4, 10, 2);
        let dec = require_drg(&j63).unwrap();
        let part = dec.antipodal_classes.clone().unwrap();
        assert!(crate::enumerate::is_ddg(&j63, &p, &part));
        // every switch stays a DDG with the same parameters and partition
        let mut distinct = std::collections::BTreeSet::new();
        distinct.insert(crate::canon::certificate(&j63, None).unwrap());
        for sigma in &sigmas {
            let switched = dual_seidel_switching(&j63, sigma);
            assert!(crate::enumerate::is_ddg(&switched, &p, &part));
            distinct.insert(crate::canon::certificate(&switched, None).unwrap());
        }
        // J(6,3) and the one genuinely new graph
        assert_eq!(distinct.len(), 2);
    }
}
