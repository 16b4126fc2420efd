//! Simple graphs on at most 64 vertices with bit-packed adjacency rows,
//! plus ordered vertex partitions into equally sized classes.

use std::fmt;

use thiserror::Error;

/// Hard cap on the vertex count; one machine word per adjacency row.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex count {0} out of range 1..={MAX_VERTICES}")]
    BadVertexCount(usize),
    #[error("vertex {0} out of range for graph on {1} vertices")]
    BadVertex(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("partition is inconsistent with the graph: {0}")]
    BadPartition(String),
}

/// Undirected simple graph; `rows[x]` is the neighbour bitset of `x`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    v: usize,
    rows: Vec<u64>,
}

impl Graph {
    pub fn empty(v: usize) -> Self {
        assert!(v >= 1 && v <= MAX_VERTICES, "vertex count {v} out of range");
        Graph { v, rows: vec![0; v] }
    }

    pub fn from_edges(v: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(v);
        for &(x, y) in edges {
            g.add_edge(x, y);
        }
        g
    }

    /// Builds a graph from explicit adjacency rows, checking symmetry and
    /// an empty diagonal.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self, GraphError> {
        let v = rows.len();
        if v == 0 || v > MAX_VERTICES {
            return Err(GraphError::BadVertexCount(v));
        }
        let mask = mask_below(v);
        for (x, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                return Err(GraphError::BadVertex(63 - (row & !mask).leading_zeros() as usize, v));
            }
            if row >> x & 1 != 0 {
                return Err(GraphError::SelfLoop(x));
            }
            for y in BitIter(row) {
                if rows[y] >> x & 1 == 0 {
                    return Err(GraphError::BadPartition(format!(
                        "adjacency not symmetric at ({x},{y})"
                    )));
                }
            }
        }
        Ok(Graph { v, rows })
    }

    pub fn vertex_count(&self) -> usize {
        self.v
    }

    pub fn add_edge(&mut self, x: usize, y: usize) {
        assert!(x < self.v && y < self.v && x != y, "bad edge ({x},{y})");
        self.rows[x] |= 1 << y;
        self.rows[y] |= 1 << x;
    }

    pub fn remove_edge(&mut self, x: usize, y: usize) {
        self.rows[x] &= !(1 << y);
        self.rows[y] &= !(1 << x);
    }

    /// Flips the edge state of the pair `{x, y}`.
    pub fn toggle_edge(&mut self, x: usize, y: usize) {
        assert!(x < self.v && y < self.v && x != y, "bad edge ({x},{y})");
        self.rows[x] ^= 1 << y;
        self.rows[y] ^= 1 << x;
    }

    #[inline]
    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.rows[x] >> y & 1 != 0
    }

    #[inline]
    pub fn row(&self, x: usize) -> u64 {
        self.rows[x]
    }

    #[inline]
    pub fn degree(&self, x: usize) -> usize {
        self.rows[x].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for x in 0..self.v {
            for y in BitIter(self.rows[x] & !mask_upto(x)) {
                out.push((x, y));
            }
        }
        out
    }

    #[inline]
    pub fn common_neighbors(&self, x: usize, y: usize) -> usize {
        (self.rows[x] & self.rows[y]).count_ones() as usize
    }

    pub fn is_regular(&self) -> Option<usize> {
        let k = self.degree(0);
        (1..self.v).all(|x| self.degree(x) == k).then_some(k)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0u64;
            for x in BitIter(frontier) {
                next |= self.rows[x];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == mask_below(self.v)
    }

    /// Relabels vertices: vertex `x` becomes `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.v);
        let mut rows = vec![0u64; self.v];
        for x in 0..self.v {
            let mut row = 0u64;
            for y in BitIter(self.rows[x]) {
                row |= 1 << perm[y];
            }
            rows[perm[x]] = row;
        }
        Graph { v: self.v, rows }
    }

    /// Complement within the first `v` vertices (diagonal stays empty).
    pub fn complement(&self) -> Graph {
        let mask = mask_below(self.v);
        let rows = (0..self.v)
            .map(|x| (!self.rows[x] & mask) & !(1 << x))
            .collect();
        Graph { v: self.v, rows }
    }

    /// Disjoint union; vertices of `other` are shifted past `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let v = self.v + other.v;
        assert!(v <= MAX_VERTICES, "union exceeds {MAX_VERTICES} vertices");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|r| r << self.v));
        Graph { v, rows }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(v={}, edges={:?})", self.v, self.edges())
    }
}

/// Ordered partition of `0..m*n` into `m` classes of size `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ClassPartition {
    m: usize,
    n: usize,
    class_of: Vec<u8>,
    masks: Vec<u64>,
}

impl ClassPartition {
    /// The contiguous layout: class `c` is the interval `[c*n, (c+1)*n)`.
    pub fn contiguous(m: usize, n: usize) -> Self {
        assert!(m >= 1 && n >= 1 && m * n <= MAX_VERTICES);
        let class_of = (0..m * n).map(|x| (x / n) as u8).collect();
        let base = mask_below(n);
        let masks = (0..m).map(|c| base << (c * n)).collect();
        ClassPartition { m, n, class_of, masks }
    }

    /// Builds a partition from explicit classes; all must have equal size and
    /// exactly cover `0..v`.
    pub fn from_classes(v: usize, classes: &[Vec<usize>]) -> Result<Self, GraphError> {
        let m = classes.len();
        if m == 0 {
            return Err(GraphError::BadPartition("no classes".into()));
        }
        let n = classes[0].len();
        if m * n != v {
            return Err(GraphError::BadPartition(format!(
                "{m} classes of size {n} do not cover {v} vertices"
            )));
        }
        let mut class_of = vec![u8::MAX; v];
        let mut masks = vec![0u64; m];
        for (c, class) in classes.iter().enumerate() {
            if class.len() != n {
                return Err(GraphError::BadPartition(format!(
                    "class {c} has size {} instead of {n}",
                    class.len()
                )));
            }
            for &x in class {
                if x >= v {
                    return Err(GraphError::BadVertex(x, v));
                }
                if class_of[x] != u8::MAX {
                    return Err(GraphError::BadPartition(format!("vertex {x} in two classes")));
                }
                class_of[x] = c as u8;
                masks[c] |= 1 << x;
            }
        }
        Ok(ClassPartition { m, n, class_of, masks })
    }

    pub fn class_count(&self) -> usize {
        self.m
    }

    pub fn class_size(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.m * self.n
    }

    #[inline]
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }

    #[inline]
    pub fn class_mask(&self, c: usize) -> u64 {
        self.masks[c]
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        self.masks.iter().map(|&m| BitIter(m).collect()).collect()
    }

    /// Same classes, listed in reverse order.
    pub fn reversed(&self) -> ClassPartition {
        let mut classes = self.classes();
        classes.reverse();
        ClassPartition::from_classes(self.vertex_count(), &classes).unwrap()
    }

    /// Relabels the partitioned vertices along with a graph relabeling.
    pub fn relabel(&self, perm: &[usize]) -> ClassPartition {
        let classes: Vec<Vec<usize>> = self
            .classes()
            .iter()
            .map(|class| class.iter().map(|&x| perm[x]).collect())
            .collect();
        ClassPartition::from_classes(self.vertex_count(), &classes).unwrap()
    }

    /// Checks that this partition covers exactly the vertices of `g`.
    pub fn check_fits(&self, g: &Graph) -> Result<(), GraphError> {
        if self.vertex_count() != g.vertex_count() {
            return Err(GraphError::BadPartition(format!(
                "partition covers {} vertices, graph has {}",
                self.vertex_count(),
                g.vertex_count()
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for ClassPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClassPartition(m={}, n={}, {:?})", self.m, self.n, self.classes())
    }
}

/// Iterator over the set bits of a word.
#[derive(Clone, Copy)]
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(x)
    }
}

#[inline]
pub fn mask_below(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn mask_upto(n: usize) -> u64 {
    mask_below(n + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_basics() {
        let mut g = Graph::empty(4);
        g.add_edge(0, 1);
        g.add_edge(2, 3);
        assert!(g.has_edge(1, 0));
        assert_eq!(g.edge_count(), 2);
        assert!(!g.is_connected());
        g.add_edge(1, 2);
        assert!(g.is_connected());
        assert_eq!(g.degree(1), 2);
    }

    #[test]
    fn relabel_roundtrip() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let perm = [2usize, 0, 4, 1, 3];
        let mut inv = [0usize; 5];
        for (x, &p) in perm.iter().enumerate() {
            inv[p] = x;
        }
        assert_eq!(g.relabel(&perm).relabel(&inv), g);
    }

    #[test]
    fn partition_validation() {
        assert!(ClassPartition::from_classes(4, &[vec![0, 1], vec![2, 3]]).is_ok());
        assert!(ClassPartition::from_classes(4, &[vec![0, 1], vec![1, 3]]).is_err());
        assert!(ClassPartition::from_classes(4, &[vec![0, 1, 2], vec![3]]).is_err());
        let p = ClassPartition::contiguous(3, 2);
        assert_eq!(p.class_of(4), 2);
        assert_eq!(p.class_mask(1), 0b001100);
    }
}
