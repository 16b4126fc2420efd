//! Exhaustive completion of adjacency matrices for a parameter tuple and a
//! quotient matrix, with isomorph rejection of partially filled matrices.
//!
//! Rows are completed vertex by vertex in class-contiguous order. After each
//! row every pair of decided vertices has its full common-neighbour count
//! fixed, so the defining identities are enforced exactly during generation
//! rather than checked afterwards. Partial matrices are reduced to one
//! representative per equivalence class (vertex bijections preserving
//! classes pointwise and the decided prefix setwise) via colored
//! certificates, level by level.

use crate::canon::{certificate, Certificate};
use crate::graph::{mask_below, BitIter, ClassPartition, Graph};
use crate::params::{feasible_parameters, FeasibleTuple, ParamSet};
use crate::quotient::{enumerate_quotients, g_split_from_trace, is_walk_regular, QuotientMatrix};
use rayon::prelude::*;
use std::time::{Duration, Instant};
use thiserror::Error;

/// Knobs for the completion search. The defaults run exhaustively.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Worker threads; 0 picks the rayon default.
    pub jobs: usize,
    /// Abort after this many expanded nodes.
    pub node_budget: Option<u64>,
    /// Abort after this much wall time.
    pub time_budget: Option<Duration>,
    /// Per-depth byte cap for the equivalence cache; past it the level keeps
    /// all partials undeduplicated (complete, just slower).
    pub dedup_cap_bytes: usize,
    /// Also enumerate tuples from the characterized families.
    pub include_characterized: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            jobs: 0,
            node_budget: None,
            time_budget: None,
            dedup_cap_bytes: 64 << 20,
            include_characterized: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub equivalent_rejected: u64,
    pub completions: u64,
    pub wall: Duration,
    pub dedup_overflow: bool,
}

impl SearchStats {
    pub fn absorb(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.equivalent_rejected += other.equivalent_rejected;
        self.completions += other.completions;
        self.wall += other.wall;
        self.dedup_overflow |= other.dedup_overflow;
    }
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("node budget exhausted after {} nodes", stats.nodes)]
    NodeBudget { stats: SearchStats },
    #[error("time budget exhausted after {:?}", stats.wall)]
    TimeBudget { stats: SearchStats },
}

impl SearchError {
    pub fn stats(&self) -> &SearchStats {
        match self {
            SearchError::NodeBudget { stats } | SearchError::TimeBudget { stats } => stats,
        }
    }
}

/// One graph surviving the search, in canonical labeling.
#[derive(Clone, Debug)]
pub struct FoundGraph {
    pub graph: Graph,
    pub part: ClassPartition,
    pub part_cert: Certificate,
    pub plain_cert: Certificate,
}

/// Checks the defining identity: k-regular, same-class pairs with `lambda1`
/// common neighbours, cross-class pairs with `lambda2`.
pub fn is_ddg(g: &Graph, p: &ParamSet, part: &ClassPartition) -> bool {
    let v = g.vertex_count();
    if v != p.v as usize
        || part.vertex_count() != v
        || part.class_count() != p.m as usize
        || part.class_size() != p.n as usize
    {
        return false;
    }
    if (0..v).any(|x| g.degree(x) != p.k as usize) {
        return false;
    }
    for x in 0..v {
        for y in 0..x {
            let want = if part.class_of(x) == part.class_of(y) {
                p.lambda1
            } else {
                p.lambda2
            };
            if g.common_neighbors(x, y) != want as usize {
                return false;
            }
        }
    }
    true
}

/// A partially decided adjacency matrix: the first `rows.len()` vertices have
/// their full neighbourhoods fixed.
#[derive(Clone)]
struct Partial {
    rows: Vec<u64>,
}

/// All proper connected DDGs with parameters `p` and quotient `r`, one
/// representative per class-respecting isomorphism class.
pub fn complete_graphs(
    p: &ParamSet,
    r: &QuotientMatrix,
    cfg: &SearchConfig,
) -> Result<(Vec<FoundGraph>, SearchStats), SearchError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .expect("thread pool");
    pool.install(|| complete_graphs_inner(p, r, cfg))
}

fn complete_graphs_inner(
    p: &ParamSet,
    r: &QuotientMatrix,
    cfg: &SearchConfig,
) -> Result<(Vec<FoundGraph>, SearchStats), SearchError> {
    let start = Instant::now();
    let v = p.v as usize;
    let ctx = Ctx::new(p, r);
    let mut stats = SearchStats::default();
    let mut level: Vec<Partial> = vec![Partial { rows: Vec::new() }];

    for t in 0..v {
        if level.is_empty() {
            break;
        }
        let children: Vec<(Vec<u8>, Partial)> = level
            .par_iter()
            .map(|parent| ctx.extend(parent, t))
            .reduce(Vec::new, |mut a, mut b| {
                a.append(&mut b);
                a
            });
        stats.nodes += children.len() as u64;
        if let Some(budget) = cfg.node_budget {
            if stats.nodes > budget {
                stats.wall = start.elapsed();
                return Err(SearchError::NodeBudget { stats });
            }
        }
        if let Some(budget) = cfg.time_budget {
            if start.elapsed() > budget {
                stats.wall = start.elapsed();
                return Err(SearchError::TimeBudget { stats });
            }
        }
        let cache_bytes: usize = children
            .iter()
            .map(|(k, partial)| k.len() + partial.rows.len() * 8 + 48)
            .sum();
        if cache_bytes > cfg.dedup_cap_bytes {
            stats.dedup_overflow = true;
            level = children.into_iter().map(|(_, partial)| partial).collect();
        } else {
            let mut sorted = children;
            sorted.sort_unstable_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.rows.cmp(&b.1.rows)));
            let before = sorted.len() as u64;
            sorted.dedup_by(|a, b| a.0 == b.0);
            stats.equivalent_rejected += before - sorted.len() as u64;
            level = sorted.into_iter().map(|(_, partial)| partial).collect();
        }
        if std::env::var_os("DDG_TRACE").is_some() {
            eprintln!(
                "  depth {t}: kept {} (generated {}) in {:?}",
                level.len(),
                stats.nodes,
                start.elapsed()
            );
        }
    }

    // keep connected completions, canonicalize, and deduplicate
    let mut out: Vec<FoundGraph> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    let part0 = ClassPartition::contiguous(p.m as usize, p.n as usize);
    for partial in level {
        let g = Graph::from_rows(partial.rows).expect("search emitted an invalid matrix");
        debug_assert!(is_ddg(&g, p, &part0));
        if !g.is_connected() {
            continue;
        }
        let found = canonical_found(&g, &part0);
        if seen.insert(found.part_cert.clone()) {
            out.push(found);
        }
    }
    out.sort_by(|a, b| a.part_cert.cmp(&b.part_cert));
    stats.completions = out.len() as u64;
    stats.wall = start.elapsed();
    Ok((out, stats))
}

/// Relabels a completed graph into the canonical labeling determined by its
/// partition-aware certificate.
fn canonical_found(g: &Graph, part: &ClassPartition) -> FoundGraph {
    let v = g.vertex_count();
    let m = part.class_count();
    // augmented canonical form, as in `canon::certificate`
    let mut rows: Vec<u128> = (0..v).map(|x| g.row(x) as u128).collect();
    for c in 0..m {
        rows.push(part.class_mask(c) as u128);
    }
    for x in 0..v {
        rows[x] |= 1u128 << (v + part.class_of(x));
    }
    let mut colors = vec![0u32; v];
    colors.extend(std::iter::repeat(1u32).take(m));
    let (_, perm) = crate::canon::canonical_colored(v + m, &rows, &colors);
    let vertex_perm: Vec<usize> = (0..v).map(|x| perm[x]).collect();
    let graph = g.relabel(&vertex_perm);
    let mut classes: Vec<(usize, Vec<usize>)> = (0..m)
        .map(|c| {
            let mut class: Vec<usize> =
                BitIter(part.class_mask(c)).map(|x| vertex_perm[x]).collect();
            class.sort_unstable();
            (perm[v + c], class)
        })
        .collect();
    classes.sort_unstable();
    let classes: Vec<Vec<usize>> = classes.into_iter().map(|(_, c)| c).collect();
    let new_part = ClassPartition::from_classes(v, &classes).expect("relabeled partition");
    let part_cert = certificate(&graph, Some(&new_part)).expect("certificate");
    let plain_cert = certificate(&graph, None).expect("certificate");
    FoundGraph { graph, part: new_part, part_cert, plain_cert }
}

/// Immutable per-search context.
struct Ctx {
    v: usize,
    m: usize,
    #[allow(dead_code)] // degree bookkeeping is asserted in debug builds
    k: usize,
    lambda1: usize,
    lambda2: usize,
    r: QuotientMatrix,
    class_of: Vec<usize>,
    class_mask: Vec<u64>,
    /// layered encoding of the quotient matrix appended after the real
    /// vertices, so that partial-matrix equivalence admits exactly the class
    /// renumberings preserving R
    gadget_rows: Vec<u128>,
    gadget_colors: Vec<u32>,
}

impl Ctx {
    fn new(p: &ParamSet, r: &QuotientMatrix) -> Ctx {
        let part = ClassPartition::contiguous(p.m as usize, p.n as usize);
        let v = p.v as usize;
        let m = p.m as usize;
        let max_entry = (0..m)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .map(|(i, j)| r.get(i, j))
            .max()
            .unwrap_or(0);
        let layers = (16 - max_entry.leading_zeros().min(15) as usize).max(1);
        let total = v + m * layers;
        debug_assert!(total <= 128);
        let mut gadget_rows = vec![0u128; m * layers];
        let mut gadget_colors = vec![0u32; m * layers];
        for l in 0..layers {
            for i in 0..m {
                let node = l * m + i;
                gadget_colors[node] = 2 + (((l as u32) << 1) | (r.get(i, i) >> l & 1) as u32);
                for j in 0..m {
                    if i != j && r.get(i, j) >> l & 1 != 0 {
                        gadget_rows[node] |= 1u128 << (v + l * m + j);
                    }
                }
                if l + 1 < layers {
                    gadget_rows[node] |= 1u128 << (v + (l + 1) * m + i);
                    gadget_rows[(l + 1) * m + i] |= 1u128 << (v + node);
                }
            }
        }
        Ctx {
            v,
            m,
            k: p.k as usize,
            lambda1: p.lambda1 as usize,
            lambda2: p.lambda2 as usize,
            r: r.clone(),
            class_of: (0..v).map(|x| part.class_of(x)).collect(),
            class_mask: (0..m).map(|c| part.class_mask(c)).collect(),
            gadget_rows,
            gadget_colors,
        }
    }

    #[inline]
    fn lambda(&self, x: usize, y: usize) -> usize {
        if self.class_of[x] == self.class_of[y] {
            self.lambda1
        } else {
            self.lambda2
        }
    }

    /// All admissible next rows for vertex `t`, each returned with its
    /// equivalence key.
    fn extend(&self, parent: &Partial, t: usize) -> Vec<(Vec<u8>, Partial)> {
        let ct = self.class_of[t];
        let mut forced = 0u64;
        for x in 0..t {
            forced |= (parent.rows[x] >> t & 1) << x;
        }
        // class quotas for row t
        let mut need = vec![0i64; self.m];
        for j in 0..self.m {
            need[j] =
                self.r.get(ct, j) as i64 - (forced & self.class_mask[j]).count_ones() as i64;
        }
        // classes with no free slots past t must be satisfied already
        for j in 0..self.m {
            let pool_j = self.class_mask[j] & !mask_below(t + 1);
            if need[j] < 0 || (pool_j == 0 && need[j] != 0) {
                return Vec::new();
            }
        }
        // exact common-neighbour targets toward decided vertices
        let mut targ = vec![0i64; t];
        for x in 0..t {
            let have = (parent.rows[x] & forced).count_ones() as i64;
            let want = self.lambda(x, t) as i64;
            targ[x] = want - have;
            if targ[x] < 0 {
                return Vec::new();
            }
        }
        let pool: Vec<usize> = (t + 1..self.v).collect();
        let mut avail = vec![0i64; t];
        for x in 0..t {
            avail[x] = (parent.rows[x] & !mask_below(t + 1)).count_ones() as i64;
            if targ[x] > avail[x] {
                return Vec::new();
            }
        }
        // pool vertices of a class with equal decided neighbourhoods are
        // interchangeable; restrict selections to prefixes of each twin group
        let mut groups = vec![0usize; pool.len()];
        let mut group_count = 0usize;
        {
            let mut seen: Vec<((usize, u64), usize)> = Vec::new();
            for (i, &w) in pool.iter().enumerate() {
                let mut below = 0u64;
                for x in 0..t {
                    below |= (parent.rows[x] >> w & 1) << x;
                }
                let sig = (self.class_of[w], below);
                match seen.iter().find(|(s, _)| *s == sig) {
                    Some(&(_, gid)) => groups[i] = gid,
                    None => {
                        seen.push((sig, group_count));
                        groups[i] = group_count;
                        group_count += 1;
                    }
                }
            }
        }
        let mut gen = RowGen {
            ctx: self,
            parent,
            t,
            pool,
            targ,
            avail,
            need,
            groups,
            group_skipped: vec![false; group_count],
            chosen: 0,
            out: Vec::new(),
        };
        gen.recurse(0);
        let selections = gen.out;

        let mut children = Vec::with_capacity(selections.len());
        'next: for s in selections {
            let row_t = forced | s;
            let mut rows = parent.rows.clone();
            rows.push(row_t);
            // feasibility of every undecided pair and class quota
            let mut cols = vec![0u64; self.v];
            for (x, &row) in rows.iter().enumerate() {
                for y in BitIter(row & !mask_below(t + 1)) {
                    cols[y] |= 1 << x;
                }
            }
            let mut rem: Vec<Vec<i64>> = vec![Vec::new(); self.v];
            for x in t + 1..self.v {
                let mut quotas = vec![0i64; self.m];
                for j in 0..self.m {
                    let used = (cols[x] & self.class_mask[j]).count_ones() as i64;
                    let quota = self.r.get(self.class_of[x], j) as i64 - used;
                    let free = (self.class_mask[j] & !mask_below(t + 1) & !(1 << x))
                        .count_ones() as i64;
                    if quota < 0 || quota > free {
                        continue 'next;
                    }
                    quotas[j] = quota;
                }
                rem[x] = quotas;
            }
            for x in t + 1..self.v {
                for y in t + 1..x {
                    let cn = (cols[x] & cols[y]).count_ones() as i64;
                    let want = self.lambda(x, y) as i64;
                    if cn > want {
                        continue 'next;
                    }
                    // class-resolved upper bound on future common neighbours
                    let mut possible = cn;
                    for j in 0..self.m {
                        let free = (self.class_mask[j]
                            & !mask_below(t + 1)
                            & !(1 << x)
                            & !(1 << y))
                            .count_ones() as i64;
                        possible += rem[x][j].min(rem[y][j]).min(free);
                    }
                    if possible < want {
                        continue 'next;
                    }
                }
            }
            let key = self.partial_key(&rows);
            children.push((key, Partial { rows }));
        }
        children
    }

    /// Equivalence key: certificate of the partially decided graph joined to
    /// the quotient gadget. Isomorphisms of this structure are exactly the
    /// vertex bijections preserving known edges, the decided prefix setwise,
    /// and the classes up to renumberings that fix R.
    fn partial_key(&self, rows: &[u64]) -> Vec<u8> {
        let t = rows.len();
        let total = self.v + self.gadget_rows.len();
        let mut full = vec![0u128; total];
        for (x, &row) in rows.iter().enumerate() {
            full[x] = row as u128;
            for y in BitIter(row & !mask_below(t)) {
                full[y] |= 1u128 << x;
            }
        }
        for x in 0..self.v {
            let class_node = self.v + self.class_of[x];
            full[x] |= 1u128 << class_node;
            full[class_node] |= 1u128 << x;
        }
        for (i, &grow) in self.gadget_rows.iter().enumerate() {
            full[self.v + i] |= grow;
        }
        let mut colors: Vec<u32> = (0..self.v).map(|x| (x >= t) as u32).collect();
        colors.extend_from_slice(&self.gadget_colors);
        let (bytes, _) = crate::canon::canonical_colored(total, &full, &colors);
        bytes
    }
}

/// Depth-first generation of row `t`: pick the still-needed neighbour counts
/// class by class from the pool of undecided vertices.
struct RowGen<'a> {
    ctx: &'a Ctx,
    parent: &'a Partial,
    t: usize,
    pool: Vec<usize>,
    /// remaining required overlaps |N(x) cap S| for each decided x
    targ: Vec<i64>,
    /// remaining pool vertices adjacent to each decided x
    avail: Vec<i64>,
    need: Vec<i64>,
    /// twin group of each pool index; a skipped twin blocks later ones
    groups: Vec<usize>,
    group_skipped: Vec<bool>,
    chosen: u64,
    out: Vec<u64>,
}

impl RowGen<'_> {
    fn recurse(&mut self, idx: usize) {
        if idx == self.pool.len() {
            if self.need.iter().all(|&d| d == 0) && self.targ.iter().all(|&o| o == 0) {
                self.out.push(self.chosen);
            }
            return;
        }
        let w = self.pool[idx];
        let cw = self.ctx.class_of[w];
        let gid = self.groups[idx];
        // remaining slots of this class in the pool, this vertex included
        let slots_left = (self.ctx.class_mask[cw] & !mask_below(w)).count_ones() as i64;

        // take w
        if self.need[cw] > 0 && !self.group_skipped[gid] {
            let mut ok = true;
            for x in 0..self.t {
                if self.parent.rows[x] >> w & 1 != 0 {
                    self.targ[x] -= 1;
                    if self.targ[x] < 0 {
                        ok = false;
                    }
                }
            }
            if ok {
                self.need[cw] -= 1;
                self.chosen |= 1 << w;
                self.step_avail(w);
                self.recurse(idx + 1);
                self.unstep_avail(w);
                self.chosen &= !(1 << w);
                self.need[cw] += 1;
            }
            for x in 0..self.t {
                if self.parent.rows[x] >> w & 1 != 0 {
                    self.targ[x] += 1;
                }
            }
        }
        // skip w
        if self.need[cw] < slots_left {
            let mut ok = true;
            for x in 0..self.t {
                if self.parent.rows[x] >> w & 1 != 0 && self.targ[x] > self.avail[x] - 1 {
                    ok = false;
                    break;
                }
            }
            if ok {
                let was = self.group_skipped[gid];
                self.group_skipped[gid] = true;
                self.step_avail(w);
                self.recurse(idx + 1);
                self.unstep_avail(w);
                self.group_skipped[gid] = was;
            }
        }
    }

    #[inline]
    fn step_avail(&mut self, w: usize) {
        for x in 0..self.t {
            if self.parent.rows[x] >> w & 1 != 0 {
                self.avail[x] -= 1;
            }
        }
    }

    #[inline]
    fn unstep_avail(&mut self, w: usize) {
        for x in 0..self.t {
            if self.parent.rows[x] >> w & 1 != 0 {
                self.avail[x] += 1;
            }
        }
    }
}

/// Outcome of one tuple: per-quotient searches merged by plain certificate.
#[derive(Clone, Debug)]
pub struct TupleOutcome {
    pub tuple: FeasibleTuple,
    pub quotients: Vec<QuotientMatrix>,
    pub graphs: Vec<ClassifiedGraph>,
    pub stats: SearchStats,
    pub complete: bool,
    pub failure: Option<String>,
}

/// A catalog-ready graph with its spectrum split and walk-regularity flag.
#[derive(Clone, Debug)]
pub struct ClassifiedGraph {
    pub found: FoundGraph,
    pub quotient: QuotientMatrix,
    pub g_split: (u32, u32),
    pub walk_regular: bool,
    /// indices into `TupleOutcome::quotients` that produced this graph
    pub provenance: Vec<usize>,
}

/// Runs the full pipeline for one feasible tuple.
pub fn enumerate_tuple(tuple: &FeasibleTuple, cfg: &SearchConfig) -> TupleOutcome {
    let p = &tuple.params;
    let quotients = enumerate_quotients(p, &tuple.profiles);
    let mut stats = SearchStats::default();
    let mut graphs: Vec<ClassifiedGraph> = Vec::new();
    let mut complete = true;
    let mut failure = None;
    for (qi, r) in quotients.iter().enumerate() {
        match complete_graphs(p, r, cfg) {
            Ok((found, s)) => {
                stats.absorb(&s);
                for f in found {
                    match graphs.iter_mut().find(|g| g.found.plain_cert == f.plain_cert) {
                        Some(existing) => existing.provenance.push(qi),
                        None => {
                            let quotient =
                                crate::quotient::quotient_of(&f.graph, &f.part).expect("equitable");
                            let g_split =
                                g_split_from_trace(p, &quotient).expect("admissible trace");
                            let walk_regular =
                                is_walk_regular(&f.graph, p, &f.part).expect("connected");
                            graphs.push(ClassifiedGraph {
                                found: f,
                                quotient,
                                g_split,
                                walk_regular,
                                provenance: vec![qi],
                            });
                        }
                    }
                }
            }
            Err(e) => {
                stats.absorb(e.stats());
                complete = false;
                failure = Some(e.to_string());
            }
        }
    }
    graphs.sort_by(|a, b| {
        b.g_split
            .cmp(&a.g_split)
            .then_with(|| a.found.plain_cert.cmp(&b.found.plain_cert))
    });
    TupleOutcome { tuple: tuple.clone(), quotients, graphs, stats, complete, failure }
}

/// Classifies every feasible tuple on `v` vertices. Characterized families
/// are skipped unless the config includes them.
pub fn enumerate_all(v: u32, cfg: &SearchConfig) -> Vec<TupleOutcome> {
    feasible_parameters(v)
        .iter()
        .filter(|t| cfg.include_characterized || !t.families.any())
        .map(|t| enumerate_tuple(t, cfg))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ParamSet;

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
    fn lattice_is_a_ddg() {
        let g = lattice(2, 4);
        let p = ParamSet::new(8, 4, 0, 2, 4, 2);
        let classes: Vec<Vec<usize>> = (0..4).map(|c| vec![c, 4 + c]).collect();
        let part = ClassPartition::from_classes(8, &classes).unwrap();
        assert!(is_ddg(&g, &p, &part));
    }

    #[test]
    fn complete_graph_is_an_improper_ddg() {
        let g = lattice(1, 4); // K4
        let p = ParamSet::new(4, 3, 2, 2, 2, 2);
        let part = ClassPartition::contiguous(2, 2);
        assert!(is_ddg(&g, &p, &part));
        assert!(!p.is_proper());
    }

    #[test]
    fn v8_tuple_has_exactly_the_lattice() {
        let tuples = feasible_parameters(8);
        let t = tuples
            .iter()
            .find(|t| t.params == ParamSet::new(8, 4, 0, 2, 4, 2))
            .unwrap();
        let outcome = enumerate_tuple(t, &SearchConfig::default());
        assert!(outcome.complete);
        assert_eq!(outcome.graphs.len(), 1);
        let found = &outcome.graphs[0].found;
        let cert_lattice = certificate(&lattice(2, 4), None).unwrap();
        assert_eq!(found.plain_cert, cert_lattice);
        assert!(outcome.graphs[0].walk_regular);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let tuples = feasible_parameters(8);
        let t = tuples
            .iter()
            .find(|t| t.params == ParamSet::new(8, 4, 0, 2, 4, 2))
            .unwrap();
        let quotients = enumerate_quotients(&t.params, &t.profiles);
        let cfg = SearchConfig { node_budget: Some(1), ..SearchConfig::default() };
        assert!(matches!(
            complete_graphs(&t.params, &quotients[0], &cfg),
            Err(SearchError::NodeBudget { .. })
        ));
    }
}
