//! Quotient matrices of the canonical partition: exhaustive generation up to
//! class renumbering, validation against concrete graphs, and the
//! walk-regularity test.

use crate::canon::canonical_colored;
use crate::graph::{ClassPartition, Graph};
use crate::params::{integer_sqrt_exact, ParamSet, SpectrumProfile};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuotientError {
    #[error("partition does not fit the graph: {0}")]
    BadPartition(String),
    #[error(
        "partition not equitable: vertices {x} and {y} of class {class} see {cx} vs {cy} \
         neighbours in class {other}"
    )]
    NotEquitable { x: usize, y: usize, class: usize, other: usize, cx: usize, cy: usize },
    #[error("graph is disconnected; walk-regularity is only classified for connected graphs")]
    Disconnected,
}

/// `m x m` nonnegative integer matrix of class-to-class neighbour counts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuotientMatrix {
    m: usize,
    a: Vec<u16>,
}

impl QuotientMatrix {
    pub fn from_rows(rows: &[Vec<u16>]) -> Self {
        let m = rows.len();
        let mut a = Vec::with_capacity(m * m);
        for r in rows {
            assert_eq!(r.len(), m);
            a.extend_from_slice(r);
        }
        QuotientMatrix { m, a }
    }

    pub fn size(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u16 {
        self.a[i * self.m + j]
    }

    pub fn trace(&self) -> u64 {
        (0..self.m).map(|i| self.get(i, i) as u64).sum()
    }

    pub fn row(&self, i: usize) -> &[u16] {
        &self.a[i * self.m..(i + 1) * self.m]
    }

    pub fn rows(&self) -> Vec<Vec<u16>> {
        (0..self.m).map(|i| self.row(i).to_vec()).collect()
    }

    /// Applies a class permutation: class `i` becomes `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> QuotientMatrix {
        let m = self.m;
        let mut a = vec![0u16; m * m];
        for i in 0..m {
            for j in 0..m {
                a[perm[i] * m + perm[j]] = self.get(i, j);
            }
        }
        QuotientMatrix { m, a }
    }

    /// Checks the exact algebraic identities a quotient matrix of a DDG with
    /// parameters `p` must satisfy.
    pub fn satisfies_identities(&self, p: &ParamSet) -> bool {
        let m = self.m;
        if m != p.m as usize {
            return false;
        }
        let ssq = match p.ssq() {
            Some(s) => s,
            None => return false,
        };
        let target = |i: usize, j: usize| -> u64 {
            if i == j {
                ssq + p.lambda2 as u64 * p.n as u64
            } else {
                p.lambda2 as u64 * p.n as u64
            }
        };
        for i in 0..m {
            let row_sum: u64 = self.row(i).iter().map(|&x| x as u64).sum();
            if row_sum != p.k as u64 {
                return false;
            }
            let col_sum: u64 = (0..m).map(|j| self.get(j, i) as u64).sum();
            if col_sum != p.k as u64 {
                return false;
            }
            for j in 0..m {
                let dot: u64 = (0..m)
                    .map(|t| self.get(i, t) as u64 * self.get(j, t) as u64)
                    .sum();
                if dot != target(i, j) {
                    return false;
                }
            }
        }
        let sq_total: u64 = self.a.iter().map(|&x| x as u64 * x as u64).sum();
        let expected =
            p.m as u64 * p.k as u64 * p.k as u64 - (p.m as u64 - 1) * p.lambda2 as u64 * p.v as u64;
        if sq_total != expected {
            return false;
        }
        self.trace() <= p.m as u64 * (p.n as u64 - 1)
    }

    /// Canonical representative under simultaneous row/column permutation,
    /// together with a dedup key.
    pub fn canonical(&self) -> (QuotientMatrix, Vec<u8>) {
        let m = self.m;
        let max_entry = self.a.iter().copied().max().unwrap_or(0);
        let layers = (16 - max_entry.leading_zeros().min(15) as usize).max(1);
        let total = m * layers;
        debug_assert!(total <= 128);
        let mut rows = vec![0u128; total];
        let mut colors = vec![0u32; total];
        for l in 0..layers {
            for i in 0..m {
                let node = l * m + i;
                colors[node] = (l as u32) << 1 | (self.get(i, i) >> l & 1) as u32;
                for j in 0..m {
                    if i != j && self.get(i, j) >> l & 1 != 0 {
                        rows[node] |= 1u128 << (l * m + j);
                    }
                }
                if l + 1 < layers {
                    rows[node] |= 1u128 << ((l + 1) * m + i);
                    rows[(l + 1) * m + i] |= 1u128 << node;
                }
            }
        }
        let (bytes, perm) = canonical_colored(total, &rows, &colors);
        // order classes by the canonical position of their layer-0 node
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&i| perm[i]);
        let mut class_perm = vec![0usize; m];
        for (pos, &i) in order.iter().enumerate() {
            class_perm[i] = pos;
        }
        (self.relabel(&class_perm), bytes)
    }
}

impl fmt::Debug for QuotientMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QuotientMatrix {}x{} [", self.m, self.m)?;
        for i in 0..self.m {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Neighbour counts of `g` toward the classes of `part`; errors with a
/// witness if the partition is not equitable.
pub fn quotient_of(g: &Graph, part: &ClassPartition) -> Result<QuotientMatrix, QuotientError> {
    part.check_fits(g)
        .map_err(|e| QuotientError::BadPartition(e.to_string()))?;
    let m = part.class_count();
    let mut rows: Vec<Vec<u16>> = Vec::with_capacity(m);
    for c in 0..m {
        let class: Vec<usize> = crate::graph::BitIter(part.class_mask(c)).collect();
        let first = class[0];
        let counts: Vec<usize> = (0..m)
            .map(|j| (g.row(first) & part.class_mask(j)).count_ones() as usize)
            .collect();
        for &x in &class[1..] {
            for j in 0..m {
                let cx = (g.row(x) & part.class_mask(j)).count_ones() as usize;
                if cx != counts[j] {
                    return Err(QuotientError::NotEquitable {
                        x: first,
                        y: x,
                        class: c,
                        other: j,
                        cx: counts[j],
                        cy: cx,
                    });
                }
            }
        }
        rows.push(counts.iter().map(|&c| c as u16).collect());
    }
    Ok(QuotientMatrix::from_rows(&rows))
}

/// The multiplicity split `(g1, g2)` of a concrete graph, derived from the
/// trace of its quotient matrix. With `ssq = 0` the merged eigenvalue 0 is
/// reported as `(m-1, 0)`.
pub fn g_split_from_trace(p: &ParamSet, r: &QuotientMatrix) -> Option<(u32, u32)> {
    let gsum = (p.m - 1) as i64;
    let ssq = p.ssq()?;
    let tr = r.trace() as i64;
    if ssq == 0 {
        return (tr == p.k as i64).then_some(((p.m - 1), 0));
    }
    match integer_sqrt_exact(ssq) {
        Some(s) => {
            let s = s as i64;
            let num = tr - p.k as i64 + s * gsum;
            if num % (2 * s) != 0 {
                return None;
            }
            let g1 = num / (2 * s);
            (0..=gsum).contains(&g1).then(|| (g1 as u32, (gsum - g1) as u32))
        }
        None => (tr == p.k as i64 && gsum % 2 == 0).then(|| ((gsum / 2) as u32, (gsum / 2) as u32)),
    }
}

/// The full spectrum profile of a concrete graph with quotient `r`.
pub fn profile_of(p: &ParamSet, r: &QuotientMatrix) -> Option<SpectrumProfile> {
    let (g1, g2) = g_split_from_trace(p, r)?;
    crate::params::multiplicity_options(p)
        .into_iter()
        .find(|o| (o.g1, o.g2) == (g1, g2))
}

/// Walk-regularity per the spectral rule: at most four distinct eigenvalues
/// (connected) always is; with five it holds exactly for constant quotient
/// diagonal.
pub fn is_walk_regular(
    g: &Graph,
    p: &ParamSet,
    part: &ClassPartition,
) -> Result<bool, QuotientError> {
    if !g.is_connected() {
        return Err(QuotientError::Disconnected);
    }
    let r = quotient_of(g, part)?;
    let profile = profile_of(p, &r).ok_or_else(|| {
        QuotientError::BadPartition("no admissible multiplicity split matches the quotient".into())
    })?;
    if profile.distinct_eigenvalues(p.k) <= 4 {
        return Ok(true);
    }
    let d0 = r.get(0, 0);
    Ok((1..r.size()).all(|i| r.get(i, i) == d0))
}

/// All quotient matrices for the tuple, complete and duplicate-free up to
/// class renumbering, in a deterministic order.
pub fn enumerate_quotients(p: &ParamSet, profiles: &[SpectrumProfile]) -> Vec<QuotientMatrix> {
    let m = p.m as usize;
    let n = p.n as u16;
    let k = p.k as u64;
    let ssq = match p.ssq() {
        Some(s) => s,
        None => return Vec::new(),
    };
    let row_sq = ssq + p.lambda2 as u64 * p.n as u64;
    let cross = p.lambda2 as u64 * p.n as u64;
    let traces: Vec<u64> = {
        let mut t: Vec<u64> = profiles
            .iter()
            .filter_map(|pr| {
                let delta = pr.g1 as i64 - pr.g2 as i64;
                let s = integer_sqrt_exact(pr.ssq)? as i64;
                u64::try_from(p.k as i64 + delta * s).ok()
            })
            .collect();
        // non-square ssq pins g1 = g2, hence trace = k
        if profiles.iter().any(|pr| !pr.s_is_square) {
            t.push(k);
        }
        t.sort_unstable();
        t.dedup();
        t
    };
    if traces.is_empty() {
        return Vec::new();
    }

    let ctx = QuotientSearch {
        m,
        n,
        k,
        n_odd: p.n % 2 == 1,
        row_sq,
        cross,
        traces,
    };
    // level-synchronous generation with canonical rejection of partially
    // built matrices, mirroring the adjacency-completion search
    let mut level: Vec<Vec<Vec<u16>>> = vec![Vec::new()];
    for t in 0..m {
        let mut children: Vec<(Vec<u8>, Vec<Vec<u16>>)> = Vec::new();
        for parent in &level {
            for row in ctx.candidate_rows(parent, t == 0) {
                let mut rows = parent.clone();
                rows.push(row);
                children.push((ctx.partial_key(&rows), rows));
            }
        }
        children.sort_unstable_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        children.dedup_by(|a, b| a.0 == b.0);
        level = children.into_iter().map(|(_, rows)| rows).collect();
    }
    let mut found: BTreeMap<Vec<u8>, QuotientMatrix> = BTreeMap::new();
    for rows in level {
        let q = QuotientMatrix::from_rows(&rows);
        if ctx.traces.contains(&q.trace()) {
            let (canon, key) = q.canonical();
            found.entry(key).or_insert(canon);
        }
    }
    found.into_values().collect()
}

struct QuotientSearch {
    m: usize,
    n: u16,
    k: u64,
    n_odd: bool,
    row_sq: u64,
    cross: u64,
    traces: Vec<u64>,
}

/// Running state while filling one row left to right.
struct RowState {
    /// entries committed so far (prefix, diagonal, and part of the tail)
    row: Vec<u16>,
    sum: u64,
    sq: u64,
    /// dot products with each earlier row over the committed columns
    dots: Vec<u64>,
}

impl QuotientSearch {
    /// All admissible rows for position `rows.len()` given the decided rows.
    fn candidate_rows(&self, rows: &[Vec<u16>], first: bool) -> Vec<Vec<u16>> {
        let i = rows.len();
        let mut out = Vec::new();
        // entries below the diagonal are pinned by symmetry
        let prefix: Vec<u16> = (0..i).map(|j| rows[j][i]).collect();
        let diag_hi = (self.n - 1).min(self.k.min(u16::MAX as u64) as u16);
        let trace_so_far: u64 = rows.iter().enumerate().map(|(j, r)| r[j] as u64).sum();
        let diag_step_max = (self.n - 1) as u64;
        let trace_lo = *self.traces.first().unwrap();
        let trace_hi = *self.traces.last().unwrap();
        for diag in 0..=diag_hi {
            if self.n_odd && diag % 2 == 1 {
                continue;
            }
            let t = trace_so_far + diag as u64;
            if t > trace_hi || t + (self.m - i - 1) as u64 * diag_step_max < trace_lo {
                continue;
            }
            let mut row = prefix.clone();
            row.push(diag);
            let sum: u64 = row.iter().map(|&x| x as u64).sum();
            let sq: u64 = row.iter().map(|&x| x as u64 * x as u64).sum();
            if sum > self.k || sq > self.row_sq {
                continue;
            }
            let dots: Vec<u64> = rows
                .iter()
                .map(|prev| {
                    row.iter()
                        .zip(prev.iter())
                        .map(|(&a, &b)| a as u64 * b as u64)
                        .sum()
                })
                .collect();
            if dots.iter().any(|&d| d > self.cross) {
                continue;
            }
            let mut state = RowState { row, sum, sq, dots };
            self.fill_tail(rows, &mut state, first, &mut out);
        }
        out
    }

    /// Extends the row past the diagonal. The first row uses non-increasing
    /// tails (unordered partitions); later rows use all ordered tails. The
    /// square-sum and cross-row dot identities are enforced incrementally.
    fn fill_tail(
        &self,
        rows: &[Vec<u16>],
        state: &mut RowState,
        nonincreasing: bool,
        out: &mut Vec<Vec<u16>>,
    ) {
        let col = state.row.len();
        if col == self.m {
            if state.sum == self.k
                && state.sq == self.row_sq
                && state.dots.iter().all(|&d| d == self.cross)
            {
                out.push(state.row.clone());
            }
            return;
        }
        let slots = (self.m - col) as u64;
        let rest = match self.k.checked_sub(state.sum) {
            Some(r) if r <= slots * self.n as u64 => r,
            _ => return,
        };
        // bounds on the achievable square sum for the remaining entries
        let sq_needed = match self.row_sq.checked_sub(state.sq) {
            Some(s) => s,
            None => return,
        };
        let max_sq = {
            let full = rest / self.n as u64;
            let part = rest % self.n as u64;
            full * (self.n as u64 * self.n as u64) + part * part
        };
        let min_sq = {
            // balanced spread minimizes the square sum
            let lo = rest / slots;
            let extra = rest % slots;
            extra * (lo + 1) * (lo + 1) + (slots - extra) * lo * lo
        };
        if sq_needed > max_sq || sq_needed < min_sq {
            return;
        }
        // dot-product feasibility against each earlier row
        for (j, prev) in rows.iter().enumerate() {
            let future: u64 = prev[col..].iter().map(|&x| x as u64).sum();
            if state.dots[j] + future * (self.n as u64) < self.cross {
                return;
            }
        }
        // the unordered-first-row rule constrains tail entries among themselves
        let hi = if nonincreasing && col >= rows.len() + 2 {
            state.row[col - 1].min(self.n)
        } else {
            self.n
        };
        let hi = hi.min(rest.min(self.n as u64) as u16);
        for val in (0..=hi).rev() {
            if rest - val as u64 > (slots - 1) * (self.n as u64) {
                break;
            }
            let val64 = val as u64;
            state.row.push(val);
            state.sum += val64;
            state.sq += val64 * val64;
            let mut ok = state.sq <= self.row_sq;
            for (j, prev) in rows.iter().enumerate() {
                state.dots[j] += val64 * prev[col] as u64;
                if state.dots[j] > self.cross {
                    ok = false;
                }
            }
            if ok {
                self.fill_tail(rows, state, nonincreasing, out);
            }
            for (j, prev) in rows.iter().enumerate() {
                state.dots[j] -= val64 * prev[col] as u64;
            }
            state.sq -= val64 * val64;
            state.sum -= val64;
            state.row.pop();
        }
    }

    /// Equivalence key of a partially built quotient matrix: canonical form
    /// of the layered encoding where undecided classes carry only their
    /// pinned entries toward decided classes.
    fn partial_key(&self, rows: &[Vec<u16>]) -> Vec<u8> {
        let t = rows.len();
        let m = self.m;
        let layers = (16 - self.n.leading_zeros().min(15) as usize).max(1);
        let total = m * layers;
        let mut g = vec![0u128; total];
        let mut colors = vec![0u32; total];
        let entry = |i: usize, j: usize| -> u16 {
            if i < t {
                rows[i][j]
            } else if j < t {
                rows[j][i]
            } else {
                0
            }
        };
        for l in 0..layers {
            for i in 0..m {
                let node = l * m + i;
                let decided = i < t;
                let diag_bit = if decided { entry(i, i) >> l & 1 } else { 0 };
                colors[node] =
                    ((l as u32) << 2) | (decided as u32) << 1 | diag_bit as u32;
                for j in 0..m {
                    if i != j && (i < t || j < t) && entry(i, j) >> l & 1 != 0 {
                        g[node] |= 1u128 << (l * m + j);
                    }
                }
                if l + 1 < layers {
                    g[node] |= 1u128 << ((l + 1) * m + i);
                    g[(l + 1) * m + i] |= 1u128 << node;
                }
            }
        }
        canonical_colored(total, &g, &colors).0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{feasible_parameters, multiplicity_options};

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

    #[test]
    fn lattice_quotient_is_all_ones() {
        // columns of the 2x4 lattice: 4 classes of 2
        let g = lattice(2, 4);
        let classes: Vec<Vec<usize>> = (0..4).map(|c| vec![c, 4 + c]).collect();
        let part = ClassPartition::from_classes(8, &classes).unwrap();
        let q = quotient_of(&g, &part).unwrap();
        assert_eq!(q.rows(), vec![vec![1u16; 4]; 4]);
        assert!(q.satisfies_identities(&ParamSet::new(8, 4, 0, 2, 4, 2)));
    }

    #[test]
    fn six_cycle_bad_partition_is_caught() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let part = ClassPartition::from_classes(6, &[vec![0, 1, 3], vec![2, 4, 5]]).unwrap();
        assert!(matches!(quotient_of(&g, &part), Err(QuotientError::NotEquitable { .. })));
    }

    #[test]
    fn enumerates_j4_for_the_lattice_tuple() {
        let p = ParamSet::new(8, 4, 0, 2, 4, 2);
        let qs = enumerate_quotients(&p, &multiplicity_options(&p));
        assert!(qs.iter().any(|q| q.rows() == vec![vec![1u16; 4]; 4]));
        // exhaustive scan over all 4x4 matrices with entries 0..=2
        let oracle = exhaustive_quotients(&p);
        assert_eq!(qs.len(), oracle.len());
    }

    #[test]
    fn small_instance_oracle() {
        for v in [8u32, 12, 16, 18, 20, 24] {
            for t in feasible_parameters(v) {
                let (m, n) = (t.params.m, t.params.n);
                if m <= 4 && n <= 6 {
                    let got = enumerate_quotients(&t.params, &t.profiles);
                    let want = exhaustive_quotients(&t.params);
                    assert_eq!(
                        got.len(),
                        want.len(),
                        "quotient count mismatch for {:?}",
                        t.params
                    );
                }
            }
        }
    }

    /// Independent oracle: scan all symmetric m x m matrices with entries in
    /// [0, n] and row sums k (quotients of equal-size classes are symmetric
    /// by edge double counting), keep those passing every identity plus an
    /// admissible trace, and collect canonical classes.
    fn exhaustive_quotients(p: &ParamSet) -> Vec<QuotientMatrix> {
        let m = p.m as usize;
        let n = p.n as u16;
        let profiles = multiplicity_options(p);
        let traces: Vec<u64> = {
            let mut t: Vec<u64> = profiles
                .iter()
                .filter_map(|pr| {
                    let delta = pr.g1 as i64 - pr.g2 as i64;
                    let s = integer_sqrt_exact(pr.ssq)? as i64;
                    u64::try_from(p.k as i64 + delta * s).ok()
                })
                .collect();
            if profiles.iter().any(|pr| !pr.s_is_square) {
                t.push(p.k as u64);
            }
            t.sort_unstable();
            t.dedup();
            t
        };
        let mut seen = std::collections::BTreeMap::new();
        let mut rows: Vec<Vec<u16>> = Vec::new();
        scan_symmetric(p, n, &mut rows, &mut |q| {
            let diag_ok = (0..m)
                .all(|i| q.get(i, i) < p.n as u16 && (p.n % 2 == 0 || q.get(i, i) % 2 == 0));
            if diag_ok && q.satisfies_identities(p) && traces.contains(&q.trace()) {
                let (canon, key) = q.canonical();
                seen.entry(key).or_insert(canon);
            }
        });
        seen.into_values().collect()
    }

    fn scan_symmetric(
        p: &ParamSet,
        n: u16,
        rows: &mut Vec<Vec<u16>>,
        emit: &mut impl FnMut(&QuotientMatrix),
    ) {
        let m = p.m as usize;
        if rows.len() == m {
            emit(&QuotientMatrix::from_rows(rows));
            return;
        }
        let i = rows.len();
        let mut row: Vec<u16> = (0..i).map(|j| rows[j][i]).collect();
        scan_row(p, n, &mut row, rows, emit);
    }

    fn scan_row(
        p: &ParamSet,
        n: u16,
        row: &mut Vec<u16>,
        rows: &mut Vec<Vec<u16>>,
        emit: &mut impl FnMut(&QuotientMatrix),
    ) {
        let k = p.k as u64;
        let sum: u64 = row.iter().map(|&x| x as u64).sum();
        if sum > k {
            return;
        }
        if row.len() == p.m as usize {
            if sum == k {
                rows.push(row.clone());
                scan_symmetric(p, n, rows, emit);
                rows.pop();
            }
            return;
        }
        for val in 0..=n {
            row.push(val);
            scan_row(p, n, row, rows, emit);
            row.pop();
        }
    }

    #[test]
    fn canonical_form_is_perm_invariant() {
        let q = QuotientMatrix::from_rows(&[
            vec![0, 2, 1, 1],
            vec![2, 0, 1, 1],
            vec![1, 1, 2, 0],
            vec![1, 1, 0, 2],
        ]);
        let perm = [2usize, 0, 3, 1];
        let (c1, k1) = q.canonical();
        let (c2, k2) = q.relabel(&perm).canonical();
        assert_eq!(k1, k2);
        assert_eq!(c1, c2);
    }
}
