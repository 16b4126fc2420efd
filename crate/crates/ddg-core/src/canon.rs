//! Canonical forms of vertex-colored graphs by individualization–refinement.
//!
//! The search underpins three things: certificates for complete graphs (with
//! or without a class partition), isomorph rejection of partially filled
//! adjacency matrices, and the final deduplication of catalog entries.
//! Internally graphs may have up to 128 vertices so that a certificate of a
//! partitioned graph can append one auxiliary vertex per class.

use crate::graph::{ClassPartition, Graph, GraphError};

/// Opaque certificate; equal exactly for isomorphic inputs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Certificate(pub(crate) Vec<u8>);

impl Certificate {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

/// Certificate of a graph, optionally together with a class partition.
///
/// With a partition, two pairs get equal certificates exactly when some
/// vertex bijection maps edges onto edges and classes onto classes (the
/// classes themselves may be renumbered). Without one, this is plain graph
/// isomorphism.
pub fn certificate(g: &Graph, part: Option<&ClassPartition>) -> Result<Certificate, GraphError> {
    let v = g.vertex_count();
    match part {
        None => {
            let rows: Vec<u128> = (0..v).map(|x| g.row(x) as u128).collect();
            let colors = vec![0u32; v];
            let (bytes, _) = canonical_colored(v, &rows, &colors);
            let mut out = vec![1u8, v as u8, 0, 0];
            out.extend_from_slice(&bytes);
            Ok(Certificate(out))
        }
        Some(p) => {
            p.check_fits(g)?;
            let (m, n) = (p.class_count(), p.class_size());
            let total = v + m;
            let mut rows: Vec<u128> = (0..v).map(|x| g.row(x) as u128).collect();
            // one auxiliary vertex per class, joined to the class members
            for c in 0..m {
                rows.push((p.class_mask(c) as u128) << 0);
            }
            for x in 0..v {
                rows[x] |= 1u128 << (v + p.class_of(x));
            }
            let mut colors = vec![0u32; v];
            colors.extend(std::iter::repeat(1u32).take(m));
            let (bytes, _) = canonical_colored(total, &rows, &colors);
            let mut out = vec![2u8, v as u8, m as u8, n as u8];
            out.extend_from_slice(&bytes);
            Ok(Certificate(out))
        }
    }
}

/// Canonical relabeling of `g`: the graph whose certificate bytes are its own
/// adjacency, plus the permutation used (vertex -> new label).
pub fn canonical_graph(g: &Graph) -> (Graph, Vec<usize>) {
    let v = g.vertex_count();
    let rows: Vec<u128> = (0..v).map(|x| g.row(x) as u128).collect();
    let colors = vec![0u32; v];
    let (_, perm) = canonical_colored(v, &rows, &colors);
    (g.relabel(&perm), perm)
}

/// Canonical form of a colored graph. Returns iso-invariant bytes and the
/// relabeling (vertex -> position) realizing them.
pub fn canonical_colored(n: usize, rows: &[u128], colors: &[u32]) -> (Vec<u8>, Vec<usize>) {
    debug_assert!(n <= 128 && rows.len() == n && colors.len() == n);
    let mut cells = initial_cells(n, colors);
    refine(rows, &mut cells);
    let mut search = Search {
        n,
        rows,
        best: None,
        best_inv: Vec::new(),
        auts: Vec::new(),
    };
    search.run(&cells, &mut Vec::new());
    let best = search.best.expect("search produced no leaf");
    let mut perm = vec![0usize; n];
    for (pos, &x) in search.best_inv.iter().enumerate() {
        perm[x as usize] = pos;
    }
    // color counts pin the coloring shape, then the relabeled adjacency
    let mut bytes = Vec::with_capacity(4 * cells_color_header(colors).len() + best.len());
    for (color, count) in cells_color_header(colors) {
        bytes.extend_from_slice(&color.to_le_bytes());
        bytes.extend_from_slice(&(count as u32).to_le_bytes());
    }
    bytes.extend_from_slice(&best);
    (bytes, perm)
}

fn cells_color_header(colors: &[u32]) -> Vec<(u32, usize)> {
    let mut sorted: Vec<u32> = colors.to_vec();
    sorted.sort_unstable();
    let mut out: Vec<(u32, usize)> = Vec::new();
    for c in sorted {
        match out.last_mut() {
            Some((v, cnt)) if *v == c => *cnt += 1,
            _ => out.push((c, 1)),
        }
    }
    out
}

type Cells = Vec<Vec<u8>>;

fn initial_cells(n: usize, colors: &[u32]) -> Cells {
    let mut distinct: Vec<u32> = colors.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    distinct
        .iter()
        .map(|&c| (0..n as u8).filter(|&x| colors[x as usize] == c).collect())
        .collect()
}

fn cell_mask(cell: &[u8]) -> u128 {
    cell.iter().fold(0u128, |m, &x| m | (1u128 << x))
}

/// Equitable refinement: split cells by neighbour counts toward every cell
/// until stable. Deterministic and isomorphism-equivariant.
fn refine(rows: &[u128], cells: &mut Cells) {
    loop {
        let splitters: Vec<u128> = cells.iter().map(|c| cell_mask(c)).collect();
        let mut changed = false;
        for sm in &splitters {
            let mut i = 0;
            while i < cells.len() {
                if cells[i].len() > 1 {
                    let counts: Vec<u32> = cells[i]
                        .iter()
                        .map(|&x| (rows[x as usize] & sm).count_ones())
                        .collect();
                    if counts.iter().any(|&c| c != counts[0]) {
                        let mut pairs: Vec<(u32, u8)> =
                            counts.into_iter().zip(cells[i].iter().copied()).collect();
                        pairs.sort_unstable();
                        let mut groups: Vec<Vec<u8>> = Vec::new();
                        let mut last = None;
                        for (c, x) in pairs {
                            if last != Some(c) {
                                groups.push(Vec::new());
                                last = Some(c);
                            }
                            groups.last_mut().unwrap().push(x);
                        }
                        let added = groups.len() - 1;
                        cells.splice(i..=i, groups);
                        changed = true;
                        i += added;
                    }
                }
                i += 1;
            }
        }
        if !changed {
            return;
        }
    }
}

const MAX_STORED_AUTOMORPHISMS: usize = 192;

struct Search<'a> {
    n: usize,
    rows: &'a [u128],
    /// smallest leaf adjacency bytes found so far
    best: Option<Vec<u8>>,
    /// position -> vertex of the best leaf
    best_inv: Vec<u8>,
    /// automorphisms discovered from coinciding leaves and twin cells
    auts: Vec<Vec<u8>>,
}

impl<'a> Search<'a> {
    fn run(&mut self, cells: &Cells, path: &mut Vec<u8>) {
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i);
        let t = match target {
            Some(t) => t,
            None => return self.leaf(cells),
        };
        let members = cells[t].clone();

        // cells of mutual twins admit the full symmetric group: one branch
        if self.is_twin_cell(&members) {
            for pair in members.windows(2) {
                self.record_transposition(pair[0], pair[1]);
            }
            self.descend(cells, t, members[0], path);
            return;
        }

        let mut tried: Vec<u8> = Vec::new();
        for &x in &members {
            if self.orbit_seen(&tried, x, path) {
                continue;
            }
            tried.push(x);
            self.descend(cells, t, x, path);
        }
    }

    fn descend(&mut self, cells: &Cells, t: usize, x: u8, path: &mut Vec<u8>) {
        let mut child: Cells = Vec::with_capacity(cells.len() + 1);
        for (i, cell) in cells.iter().enumerate() {
            if i == t {
                child.push(vec![x]);
                child.push(cell.iter().copied().filter(|&y| y != x).collect());
            } else {
                child.push(cell.clone());
            }
        }
        refine(self.rows, &mut child);
        path.push(x);
        self.run(&child, path);
        path.pop();
    }

    /// True if every pair in the cell is interchangeable: identical rows
    /// outside the cell and a complete or empty induced subgraph.
    fn is_twin_cell(&self, members: &[u8]) -> bool {
        let mask = cell_mask(members);
        let outside = self.rows[members[0] as usize] & !mask;
        let complete = self.rows[members[0] as usize] & mask != 0;
        members.iter().all(|&x| {
            let row = self.rows[x as usize];
            row & !mask == outside
                && if complete {
                    row & mask == mask & !(1u128 << x)
                } else {
                    row & mask == 0
                }
        })
    }

    /// Is `x` in the orbit of an already-tried vertex under the stored
    /// automorphisms fixing the current path pointwise?
    fn orbit_seen(&self, tried: &[u8], x: u8, path: &[u8]) -> bool {
        if tried.is_empty() || self.auts.is_empty() {
            return false;
        }
        let mut dsu = Dsu::new(self.n);
        for sigma in &self.auts {
            if path.iter().all(|&p| sigma[p as usize] == p) {
                for v in 0..self.n {
                    dsu.union(v, sigma[v] as usize);
                }
            }
        }
        tried.iter().any(|&u| dsu.same(u as usize, x as usize))
    }

    fn record_transposition(&mut self, a: u8, b: u8) {
        if self.auts.len() >= MAX_STORED_AUTOMORPHISMS {
            return;
        }
        let mut sigma: Vec<u8> = (0..self.n as u8).collect();
        sigma[a as usize] = b;
        sigma[b as usize] = a;
        if !self.auts.contains(&sigma) {
            self.auts.push(sigma);
        }
    }

    fn leaf(&mut self, cells: &Cells) {
        let inv: Vec<u8> = cells.iter().map(|c| c[0]).collect();
        let bytes = leaf_bytes(self.n, self.rows, &inv);
        match &self.best {
            None => {
                self.best = Some(bytes);
                self.best_inv = inv;
            }
            Some(best) => {
                if bytes < *best {
                    self.best = Some(bytes);
                    self.best_inv = inv;
                } else if bytes == *best {
                    // two labelings with the same image give an automorphism
                    let mut perm = vec![0u8; self.n];
                    for (pos, &x) in inv.iter().enumerate() {
                        perm[x as usize] = pos as u8;
                    }
                    if self.auts.len() < MAX_STORED_AUTOMORPHISMS {
                        let sigma: Vec<u8> = (0..self.n)
                            .map(|x| self.best_inv[perm[x] as usize])
                            .collect();
                        if sigma.iter().enumerate().any(|(i, &s)| s != i as u8)
                            && !self.auts.contains(&sigma)
                        {
                            self.auts.push(sigma);
                        }
                    }
                }
            }
        }
    }
}

/// Upper-triangle adjacency bits (row-major) of the relabeled graph.
fn leaf_bytes(n: usize, rows: &[u128], inv: &[u8]) -> Vec<u8> {
    let mut bytes = vec![0u8; (n * (n - 1) / 2 + 7) / 8];
    let mut bit = 0usize;
    for p in 1..n {
        let rp = rows[inv[p] as usize];
        for q in 0..p {
            if rp >> inv[q] & 1 != 0 {
                bytes[bit >> 3] |= 1 << (bit & 7);
            }
            bit += 1;
        }
    }
    bytes
}

/// Brute-force isomorphism test over all bijections; test oracle material,
/// only usable for tiny graphs.
pub fn isomorphic_brute_force(a: &Graph, b: &Graph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    permute_check(a, b, &mut perm, 0)
}

fn permute_check(a: &Graph, b: &Graph, perm: &mut Vec<usize>, k: usize) -> bool {
    let n = a.vertex_count();
    if k == n {
        return (0..n).all(|x| {
            (0..x).all(|y| a.has_edge(x, y) == b.has_edge(perm[x], perm[y]))
        });
    }
    for i in k..n {
        perm.swap(k, i);
        let ok = (0..k).all(|y| a.has_edge(k, y) == b.has_edge(perm[k], perm[y]));
        if ok && permute_check(a, b, perm, k + 1) {
            perm.swap(k, i);
            return true;
        }
        perm.swap(k, i);
    }
    false
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            self.parent[rx] = ry;
        }
    }

    fn same(&mut self, x: usize, y: usize) -> bool {
        self.find(x) == self.find(y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    /// L(K_{m,n}): (a,b) ~ (c,d) iff a == c or b == d.
    fn lattice(m: usize, n: usize) -> Graph {
        let mut g = Graph::empty(m * n);
        for a in 0..m {
            for b in 0..n {
                for c in 0..m {
                    for d in 0..n {
                        let (x, y) = (a * n + b, c * n + d);
                        if x != y && (a == c || b == d) {
                            g.add_edge(x, y);
                        }
                    }
                }
            }
        }
        g
    }

    #[test]
    fn relabeling_invariance() {
        let g = lattice(2, 4);
        let perm = [5usize, 0, 3, 7, 1, 6, 2, 4];
        let h = g.relabel(&perm);
        assert_eq!(certificate(&g, None).unwrap(), certificate(&h, None).unwrap());
    }

    #[test]
    fn lattice_and_cycle_differ() {
        // same order and degree won't fool the certificate
        let g = lattice(2, 4);
        let c8 = cycle(8);
        assert!(!isomorphic_brute_force(&g, &c8));
        assert_ne!(certificate(&g, None).unwrap(), certificate(&c8, None).unwrap());
    }

    #[test]
    fn partition_class_order_is_irrelevant() {
        let g = lattice(2, 4);
        let cols = ClassPartition::from_classes(8, &[vec![0, 4], vec![1, 5], vec![2, 6], vec![3, 7]])
            .unwrap();
        let cert1 = certificate(&g, Some(&cols)).unwrap();
        let cert2 = certificate(&g, Some(&cols.reversed())).unwrap();
        assert_eq!(cert1, cert2);
    }

    #[test]
    fn partition_changes_certificate_when_it_matters() {
        // C6 with an antipodal 3-partition vs a path-ish one
        let g = cycle(6);
        let p1 = ClassPartition::from_classes(6, &[vec![0, 3], vec![1, 4], vec![2, 5]]).unwrap();
        let p2 = ClassPartition::from_classes(6, &[vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        assert_ne!(
            certificate(&g, Some(&p1)).unwrap(),
            certificate(&g, Some(&p2)).unwrap()
        );
    }

    #[test]
    fn agrees_with_brute_force_on_small_graphs() {
        // all graphs on 5 vertices in a fixed seeded sample, pairwise
        let mut graphs: Vec<Graph> = Vec::new();
        for code in 0..1u32 << 10 {
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
            graphs.push(g);
        }
        // sample pairs; exhaustive 2^10 x 2^10 would be slow for no benefit
        for i in (0..graphs.len()).step_by(37) {
            for j in (i..graphs.len()).step_by(53) {
                let same_cert =
                    certificate(&graphs[i], None).unwrap() == certificate(&graphs[j], None).unwrap();
                assert_eq!(
                    same_cert,
                    isomorphic_brute_force(&graphs[i], &graphs[j]),
                    "certificate disagrees with brute force on pair ({i},{j})"
                );
            }
        }
    }

    #[test]
    fn canonical_graph_is_stable() {
        let g = lattice(3, 4);
        let (c1, _) = canonical_graph(&g);
        let perm: Vec<usize> = (0..12).map(|x| (x * 5 + 3) % 12).collect();
        let (c2, _) = canonical_graph(&g.relabel(&perm));
        assert_eq!(c1, c2);
    }
}
