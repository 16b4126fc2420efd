//! The construction recipes. Every builder validates its ingredients and
//! side conditions, assembles the graph, recomputes the parameter tuple from
//! the stated closed form, and verifies the result with `is_ddg`; a failure
//! there is reported as an internal error, never returned as a graph.

use super::analysis::{
    dual_seidel_switching, find_hoffman_colorings, find_seidel_automorphisms, require_drg,
    srg_parameters,
};
use super::ingredients::Ingredient;
use super::matrices::{SignKind, SignMatrix};
use super::{ConstructError, ConstructionId, Opts};
use crate::graph::{BitIter, ClassPartition, Graph};
use crate::ops;
use crate::params::ParamSet;

/// One constructed DDG: the graph, its canonical partition, the parameter
/// tuple, and a human-readable variant tag.
#[derive(Clone, Debug)]
pub struct Built {
    pub graph: Graph,
    pub part: ClassPartition,
    pub params: ParamSet,
    pub variant: String,
}

impl Built {
    pub fn plain_cert(&self) -> crate::canon::Certificate {
        crate::canon::certificate(&self.graph, None).expect("certificate")
    }

    pub fn part_cert(&self) -> crate::canon::Certificate {
        crate::canon::certificate(&self.graph, Some(&self.part)).expect("certificate")
    }
}

/// Runs a construction and returns its first variant.
pub fn construct(
    id: ConstructionId,
    ingredients: &[Ingredient],
    opts: &Opts,
) -> Result<Built, ConstructError> {
    construct_all(id, ingredients, opts)?
        .into_iter()
        .next()
        .ok_or_else(|| ConstructError::SideCondition("construction produced no variant".into()))
}

/// Runs a construction and returns every variant it defines (colorings,
/// alignments, pairings, automorphisms), deduplicated by certificate.
pub fn construct_all(
    id: ConstructionId,
    ingredients: &[Ingredient],
    opts: &Opts,
) -> Result<Vec<Built>, ConstructError> {
    let mut out = match id {
        ConstructionId::C(1) => c1(ingredients)?,
        ConstructionId::C(2) => c2(ingredients, opts)?,
        ConstructionId::C(3) => c3(ingredients)?,
        ConstructionId::C(4) => c4(ingredients)?,
        ConstructionId::C(5) => c5(ingredients, opts)?,
        ConstructionId::C(6) => c6(ingredients)?,
        ConstructionId::C(7) => c7(ingredients)?,
        ConstructionId::C(8) => c8(ingredients, opts)?,
        ConstructionId::C(9) => c9(ingredients)?,
        ConstructionId::C(10) => c10(ingredients)?,
        ConstructionId::C(11) => c11(opts)?,
        ConstructionId::C(12) => c12(opts)?,
        ConstructionId::C(13) => c13(opts)?,
        ConstructionId::C(14) => c14(ingredients, opts)?,
        ConstructionId::C(15) => c15(ingredients)?,
        ConstructionId::C(16) => c16(ingredients)?,
        ConstructionId::C(17) => c17(ingredients, opts)?,
        ConstructionId::C(18) => c18(ingredients)?,
        ConstructionId::C(19) => c19(ingredients, opts)?,
        ConstructionId::C(20) => c20(ingredients)?,
        ConstructionId::C(21) => c21(ingredients, opts)?,
        ConstructionId::C(22) => vec![c22()],
        ConstructionId::C(23) => vec![c23()],
        ConstructionId::R1 => r1(ingredients)?,
        ConstructionId::C(other) => {
            return Err(ConstructError::UnknownConstruction(format!("c{other}")))
        }
    };
    for b in &out {
        if !crate::enumerate::is_ddg(&b.graph, &b.params, &b.part) {
            return Err(ConstructError::Internal(format!(
                "{id} variant {:?} fails the defining identity for {:?}",
                b.variant, b.params
            )));
        }
    }
    // different variants may coincide as partitioned graphs
    let mut seen = std::collections::BTreeSet::new();
    out.retain(|b| {
        seen.insert(crate::canon::certificate(&b.graph, Some(&b.part)).expect("certificate"))
    });
    Ok(out)
}

fn one(graph: Graph, part: ClassPartition, params: ParamSet, variant: &str) -> Vec<Built> {
    vec![Built { graph, part, params, variant: variant.to_string() }]
}

fn need(ingredients: &[Ingredient], n: usize, what: &str) -> Result<(), ConstructError> {
    if ingredients.len() != n {
        return Err(ConstructError::Ingredient(format!(
            "expected {n} ingredient(s): {what}; got {}",
            ingredients.len()
        )));
    }
    Ok(())
}

/// Incidence graph of a symmetric (n,k,lambda)-design; classes are the two
/// sides of the bipartition.
fn c1(ingredients: &[Ingredient]) -> Result<Vec<Built>, ConstructError> {
    need(ingredients, 1, "a symmetric 2-design")?;
    let (inc, meta) = ingredients[0].design()?;
    if meta.n != 1 || meta.lambda1 != 0 {
        return Err(ConstructError::Ingredient(
            "c1 needs a plain symmetric 2-design (singleton classes)".into(),
        ));
    }
    let (nd, kd, ld) = (meta.v, meta.k, meta.lambda2);
    if !(1 < kd && kd <= nd) {
        return Err(ConstructError::SideCondition(format!("needs 1 < k <= n, got k={kd}, n={nd}")));
    }
    let g = ops::incidence_graph(&inc.to_vecs());
    let part = ClassPartition::from_classes(
        2 * nd,
        &[(0..nd).collect::<Vec<_>>(), (nd..2 * nd).collect::<Vec<_>>()],
    )
    .unwrap();
    let params = ParamSet::new(2 * nd as u32, kd as u32, ld as u32, 0, 2, nd as u32);
    Ok(one(g, part, params, "incidence"))
}

/// Tensor blowup A' (x) J_n of an (m,k',lambda')-graph.
fn c2(ingredients: &[Ingredient], opts: &Opts) -> Result<Vec<Built>, ConstructError> {
    need(ingredients, 1, "an (m,k',lambda')-graph")?;
    let base = ingredients[0].graph()?;
    let n = opts.require_usize("n")?;
    let (m, kp, lp) = vkl_graph(base)?;
    // the defining identity holds for any k' >= 1; k' < n is not needed
    if kp < 1 || n < 1 {
        return Err(ConstructError::SideCondition(format!("needs k' >= 1, got k'={kp}, n={n}")));
    }
    let (g, part) = ops::tensor_allones(base, n);
    let params = ParamSet::new(
        (m * n) as u32,
        (n * kp) as u32,
        (n * kp) as u32,
        (n * lp) as u32,
        m as u32,
        n as u32,
    );
    Ok(one(g, part, params, "tensor"))
}

/// J_v - K + diag(A_1..A_m) over m graphs with equal (n,k',lambda').
fn c3(ingredients: &[Ingredient]) -> Result<Vec<Built>, ConstructError> {
    if ingredients.len() < 2 {
        return Err(ConstructError::Ingredient("c3 needs at least two graphs".into()));
    }
    let m = ingredients.len();
    let mut shape = None;
    for ing in ingredients {
        let got = vkl_graph(ing.graph()?)?;
        match shape {
            None => shape = Some(got),
            Some(s) if s == got => {}
            Some(s) => {
                return Err(ConstructError::Ingredient(format!(
                    "all pieces need equal parameters; got {s:?} and {got:?}"
                )))
            }
        }
    }
    let (n, kp, lp) = shape.unwrap();
    if kp > n.saturating_sub(2) {
        return Err(ConstructError::SideCondition(format!("needs k' <= n-2, got k'={kp}, n={n}")));
    }
    let v = m * n;
    let mut g = Graph::empty(v);
    for (c, ing) in ingredients.iter().enumerate() {
        let a = ing.graph()?;
        for (x, y) in a.edges() {
            g.add_edge(c * n + x, c * n + y);
        }
    }
    for x in 0..v {
        for y in 0..x {
            if x / n != y / n {
                g.add_edge(x, y);
            }
        }
    }
    let k = kp + n * (m - 1);
    let params = ParamSet::new(
        v as u32,
        k as u32,
        (lp + n * (m - 1)) as u32,
        (2 * k - v) as u32,
        m as u32,
        n as u32,
    );
    Ok(one(g, ClassPartition::contiguous(m, n), params, "diag"))
}

/// Composition with K_2 of an SRG(m,k',lambda,lambda+1) or of a complete
/// multipartite graph.
fn c4(ingredients: &[Ingredient]) -> Result<Vec<Built>, ConstructError> {
    need(ingredients, 1, "an SRG with mu = lambda + 1, or K_{x*y}")?;
    let base = ingredients[0].graph()?;
    let (g, part) = ops::lexicographic_k2(base);
    if let Some((x, y)) = multipartite_shape(base) {
        let params = ParamSet::new(
            (2 * x * y) as u32,
            (2 * y * (x - 1) + 1) as u32,
            (2 * y * (x - 1)) as u32,
            (2 * y * (x - 2) + 2) as u32,
            x as u32,
            (2 * y) as u32,
        );
        // classes are the parts, doubled
        let classes: Vec<Vec<usize>> = (0..x)
            .map(|p| (0..y).flat_map(|i| [2 * (p * y + i), 2 * (p * y + i) + 1]).collect())
            .collect();
        let part = ClassPartition::from_classes(2 * x * y, &classes).unwrap();
        return Ok(one(g, part, params, "multipartite"));
    }
    let (m, kp, lambda, mu) =
        srg_parameters(base).ok_or_else(|| ConstructError::Ingredient("not an SRG".into()))?;
    if mu != lambda + 1 {
        return Err(ConstructError::SideCondition(format!(
            "needs mu = lambda + 1, got lambda={lambda}, mu={mu}"
        )));
    }
    let params = ParamSet::new(
        (2 * m) as u32,
        (2 * kp + 1) as u32,
        (2 * kp) as u32,
        (2 * lambda + 2) as u32,
        m as u32,
        2,
    );
    Ok(one(g, part, params, "srg"))
}

/// Dual Seidel switching: PM for a Seidel automorphism P of a DDG.
fn c5(ingredients: &[Ingredient], opts: &Opts) -> Result<Vec<Built>, ConstructError> {
    need(ingredients, 1, "a DDG (graph); pass params=v,k,l1,l2,m,n")?;
    let base = ingredients[0].graph()?;
    let params = parse_params_opt(opts)?;
    let part = ops::partition_from_common_neighbors(base, &params)
        .map_err(|e| ConstructError::Ingredient(e.to_string()))?;
    if !crate::enumerate::is_ddg(base, &params, &part) {
        return Err(ConstructError::Ingredient("input is not a DDG for these parameters".into()));
    }
    let sigmas = find_seidel_automorphisms(base);
    if sigmas.is_empty() {
        return Err(ConstructError::SideCondition("no Seidel automorphism exists".into()));
    }
    let chosen: Vec<(usize, &Vec<usize>)> = match opts.usize("sigma")? {
        Some(i) => vec![(
            i,
            sigmas
                .get(i)
                .ok_or_else(|| ConstructError::BadOption("sigma", format!("only {} found", sigmas.len())))?,
        )],
        None => sigmas.iter().enumerate().collect(),
    };
    let mut out = Vec::new();
    for (i, sigma) in chosen {
        let g = dual_seidel_switching(base, sigma);
        out.push(Built {
            graph: g,
            part: part.clone(),
            params,
            variant: format!("sigma={i}"),
        });
    }
    Ok(out)
}

/// Antipodal distance-regular graph of diameter 3: itself (lambda = mu) or
/// its complement (lambda = mu - 2).
fn c6(ingredients: &[Ingredient]) -> Result<Vec<Built>, ConstructError> {
    need(ingredients, 1, "an antipodal DRG of diameter 3")?;
    let base = ingredients[0].graph()?;
    let dec = require_drg(base)?;
    let part = dec
        .antipodal_classes
        .clone()
        .ok_or_else(|| ConstructError::Ingredient("not antipodal".into()))?;
    if dec.diameter != 3 {
        return Err(ConstructError::Ingredient(format!("diameter {} != 3", dec.diameter)));
    }
    let (lambda, mu) = dec.lambda_mu().unwrap();
    let n = part.class_size();
    if lambda == mu {
        let params = ParamSet::new(
            (n * (mu * n + 2)) as u32,
            (mu * n + 1) as u32,
            0,
            mu as u32,
            (mu * n + 2) as u32,
            n as u32,
        );
        Ok(one(base.clone(), part, params, "lambda=mu"))
    } else if lambda + 2 == mu {
        let params = ParamSet::new(
            (mu * n * n) as u32,
            (mu * n * (n - 1)) as u32,
            (mu * n * (n - 2)) as u32,
            (mu * (n - 1) * (n - 1)) as u32,
            (mu * n) as u32,
            n as u32,
        );
        Ok(one(base.complement(), part, params, "lambda=mu-2"))
    } else {
        Err(ConstructError::SideCondition(format!(
            "needs lambda = mu or lambda = mu - 2; got lambda={lambda}, mu={mu}"
        )))
    }
}

/// Partial complement of a (v,k,lambda)-graph over each Hoffman coloring
/// (or an equitable half/half split when the graph has one).
fn c7(ingredients: &[Ingredient]) -> Result<Vec<Built>, ConstructError> {
    need(ingredients, 1, "a (v,k,lambda)-graph with a Hoffman coloring")?;
    let base = ingredients[0].graph()?;
    let (v, k, l) = vkl_graph(base)?;
    let colorings = find_hoffman_colorings(base)?;
    if colorings.is_empty() {
        return Err(ConstructError::SideCondition("no Hoffman coloring found".into()));
    }
    let _ = (v, k, l);
    let mut out = Vec::new();
    for (i, part) in colorings.iter().enumerate() {
        let g = ops::partial_complement(base, part)
            .map_err(|e| ConstructError::Ingredient(e.to_string()))?;
        let params = derive_params(&g, part).ok_or_else(|| {
            ConstructError::Internal("partial complement is not a DDG".into())
        })?;
        out.push(Built {
            graph: g,
            part: part.clone(),
            params,
            variant: format!("coloring={i}"),
        });
    }
    Ok(out)
}

/// Hadamard substitution: -1 -> J_n - I_n, +1 -> I_n.
fn c8(ingredients: &[Ingredient], opts: &Opts) -> Result<Vec<Built>, ConstructError> {
    need(ingredients, 1, "a regular graphical Hadamard matrix with diagonal -1")?;
    let h = ingredients[0].sign()?;
    let n = opts.require_usize("n")?;
    if n < 2 {
        return Err(ConstructError::SideCondition("needs n >= 2".into()));
    }
    let (m, l) = rghm_shape(h)?;
    let li = l;
    let num = |expr: i64, den: i64, what: &str| -> Result<i64, ConstructError> {
        if expr % den != 0 {
            return Err(ConstructError::SideCondition(format!("{what} = {expr}/{den} is not integral")));
        }
        Ok(expr / den)
    };
    let k = num(n as i64 * (m as i64 - li) , 2, "k")? + li;
    let l1 = num((n as i64 - 2) * (m as i64 - li), 2, "lambda1")?;
    let l2 = num(n as i64 * (m as i64 - 2 * li), 4, "lambda2")? + li;
    let mut g = Graph::empty(m * n);
    for i in 0..m {
        for j in 0..m {
            match h.get(i, j) {
                -1 => {
                    for a in 0..n {
                        for b in 0..n {
                            if a != b && !(i == j && a == b) {
                                let (x, y) = (i * n + a, j * n + b);
                                if x != y && !g.has_edge(x, y) {
                                    g.add_edge(x, y);
                                }
                            }
                        }
                    }
                }
                1 if i != j => {
                    for a in 0..n {
                        let (x, y) = (i * n + a, j * n + a);
                        if !g.has_edge(x, y) {
                            g.add_edge(x, y);
                        }
                    }
                }
                _ => {}
            }
        }
    }
    let params = ParamSet::new(
        (m * n) as u32,
        k as u32,
        l1 as u32,
        l2 as u32,
        m as u32,
        n as u32,
    );
    Ok(one(g, ClassPartition::contiguous(m, n), params, "substitution"))
}

/// Three-block assembly over a regular graphical Hadamard matrix of order
/// l^2 with diagonal -1 and row sum l.
fn c9(ingredients: &[Ingredient]) -> Result<Vec<Built>, ConstructError> {
    need(ingredients, 1, "a regular graphical Hadamard matrix of square order")?;
    let h = ingredients[0].sign()?;
    let (order, l) = rghm_shape(h)?;
    if (l * l) as usize != order {
        return Err(ConstructError::SideCondition(format!(
            "row sum {l} must square to the order {order}"
        )));
    }
    let sz = order; // l^2
    let half = |x: i64, what: &str| -> Result<i64, ConstructError> {
        if x % 2 != 0 {
            return Err(ConstructError::SideCondition(format!("{what} is not integral")));
        }
        Ok(x / 2)
    };
    let l1 = (l * l + l) as i64;
    let l2 = half(l1, "lambda2")?;
    // M = (J+H)/2 in all four sub-blocks; N = (J+H)/2 on the diagonal
    // sub-blocks and (J-H)/2 off them
    let plus = |a: usize, b: usize| -> bool {
        // (J+H)/2: entry 1 iff H = +1
        h.get(a, b) == 1
    };
    let minus = |a: usize, b: usize| -> bool {
        // (J-H)/2: entry 1 iff H = -1 (includes the diagonal)
        h.get(a, b) == -1
    };
    let v = 6 * sz;
    let class_size = 2 * sz;
    let mut g = Graph::empty(v);
    let block = |x: usize| -> (usize, usize) { (x / class_size, x % class_size) };
    for x in 0..v {
        for y in 0..x {
            let (bx, ix) = block(x);
            let (by, iy) = block(y);
            let (sx, px) = (ix / sz, ix % sz);
            let (sy, py) = (iy / sz, iy % sz);
            let edge = match (bx.min(by), bx.max(by)) {
                // diagonal blocks: M, O, N
                (0, 0) => plus(px, py),
                (1, 1) => false,
                (2, 2) => {
                    if sx == sy {
                        plus(px, py)
                    } else {
                        minus(px, py)
                    }
                }
                // off-diagonal: (1,2) = N, (1,3) = O, (2,3) = M
                (0, 1) => {
                    if sx == sy {
                        plus(px, py)
                    } else {
                        minus(px, py)
                    }
                }
                (0, 2) => false,
                (1, 2) => plus(px, py),
                _ => unreachable!(),
            };
            if edge {
                g.add_edge(x, y);
            }
        }
    }
    let params = ParamSet::new(
        v as u32,
        (2 * l * l + l) as u32,
        l1 as u32,
        l2 as u32,
        3,
        class_size as u32,
    );
    Ok(one(g, ClassPartition::contiguous(3, class_size), params, "three-block"))
}

/// Pair-class assembly from a regular graphical Hadamard matrix of order
/// 4u^2 and a symmetric Hadamard matrix of order 2u^2.
fn c10(ingredients: &[Ingredient]) -> Result<Vec<Built>, ConstructError> {
    need(ingredients, 2, "a regular graphical Hadamard matrix and a Hadamard matrix")?;
    let h = ingredients[0].sign()?;
    let kmat = ingredients[1].sign()?;
    let (order, l) = rghm_shape(h)?;
    let delta = h.constant_diagonal().unwrap() as i64;
    if order % 4 != 0 || !kmat.is_symmetric() {
        return Err(ConstructError::SideCondition(
            "needs order 4u^2 and a symmetric Hadamard companion".into(),
        ));
    }
    let usq = order / 4; // u^2
    if kmat.order() != 2 * usq {
        return Err(ConstructError::SideCondition(format!(
            "companion Hadamard must have order {}, got {}",
            2 * usq,
            kmat.order()
        )));
    }
    let u = delta * l / 2;
    if u * u != usq as i64 {
        return Err(ConstructError::SideCondition("row sum does not match the order".into()));
    }
    // T: symmetric W(6,4) with zero 2x2 diagonal blocks
    let t = SignMatrix::from_rows(
        &[
            vec![0, 0, 1, 1, 1, 1],
            vec![0, 0, 1, 1, -1, -1],
            vec![1, 1, 0, 0, 1, -1],
            vec![1, 1, 0, 0, -1, 1],
            vec![1, -1, 1, -1, 0, 0],
            vec![1, -1, -1, 1, 0, 0],
        ],
        SignKind::Weighing,
    )
    .unwrap();
    let pairs = 12 * usq;
    // pair index p = (k-index, t-index); group = t-index / 2
    let s_entry = |p: usize, q: usize| -> i8 {
        let (i1, i2) = (p / 6, p % 6);
        let (j1, j2) = (q / 6, q % 6);
        kmat.get(i1, j1) * t.get(i2, j2)
    };
    let group = |p: usize| -> usize { (p % 6) / 2 };
    // within a group, the twin graph E comes from (J - delta*H)/2 on the
    // group's members, matched up via (k-index, parity)
    let h_vertex = |p: usize| -> usize { (p / 6) * 2 + (p % 6) % 2 };
    let e_edge = |p: usize, q: usize| -> bool {
        let (a, b) = (h_vertex(p), h_vertex(q));
        a != b && (1 - delta as i32 * h.get(a, b) as i32) / 2 == 1
    };
    let v = 2 * pairs;
    let mut g = Graph::empty(v);
    for p in 0..pairs {
        for q in 0..p {
            if group(p) == group(q) {
                if e_edge(p, q) {
                    // J_2 block
                    for a in 0..2 {
                        for b in 0..2 {
                            g.add_edge(2 * p + a, 2 * q + b);
                        }
                    }
                }
            } else {
                match s_entry(p, q) {
                    1 => {
                        g.add_edge(2 * p, 2 * q);
                        g.add_edge(2 * p + 1, 2 * q + 1);
                    }
                    -1 => {
                        g.add_edge(2 * p, 2 * q + 1);
                        g.add_edge(2 * p + 1, 2 * q);
                    }
                    _ => unreachable!("S has no zero entries across groups"),
                }
            }
        }
    }
    let uu = u; // signed u
    let params = ParamSet::new(
        (24 * usq) as u32,
        (12 * usq as i64 - 2 * uu) as u32,
        (4 * usq as i64 - 2 * uu) as u32,
        (6 * usq as i64 - 2 * uu) as u32,
        (12 * usq) as u32,
        2,
    );
    Ok(one(g, ClassPartition::contiguous(pairs, 2), params, "pair-class"))
}

/// The 4 x n lattice graph with its row classes.
fn c11(opts: &Opts) -> Result<Vec<Built>, ConstructError> {
    let n = opts.require_usize("n")?;
    if n < 2 {
        return Err(ConstructError::SideCondition("needs n >= 2".into()));
    }
    let g = super::named::lattice(4, n);
    let params = lattice_params(n);
    Ok(one(g, ClassPartition::contiguous(4, n), params, "lattice"))
}

fn lattice_params(n: usize) -> ParamSet {
    ParamSet::new(4 * n as u32, n as u32 + 2, n as u32 - 2, 2, 4, n as u32)
}

/// Generalized dual Seidel switching on the 4 x n lattice: the central
/// symmetry of the top 2 x n sublattice permutes its rows.
fn c12(opts: &Opts) -> Result<Vec<Built>, ConstructError> {
    let n = opts.require_usize("n")?;
    if n < 2 || n % 2 != 0 {
        return Err(ConstructError::SideCondition("needs even n >= 2".into()));
    }
    let base = super::named::lattice(4, n);
    let v = 4 * n;
    let h_size = 2 * n;
    let sigma = |x: usize| -> usize {
        if x < h_size {
            let (a, b) = (x / n, x % n);
            (1 - a) * n + (n - 1 - b)
        } else {
            x
        }
    };
    let mut g = Graph::empty(v);
    for x in 0..v {
        for y in 0..v {
            if x == y {
                continue;
            }
            let edge = if x < h_size && y < h_size {
                base.has_edge(sigma(x), y)
            } else {
                base.has_edge(x, y)
            };
            if edge && !g.has_edge(x, y) {
                g.add_edge(x, y);
            }
        }
    }
    Ok(one(g, ClassPartition::contiguous(4, n), lattice_params(n), "switched-lattice"))
}

/// Edge switching between classes V1,V2 and V3,V4 over copies of
/// C_s[complement of K_2] and 4-cubes. The copies are given as
/// `copies=c8k2+q4+...`; class alignments of the copies past the first can
/// be permuted with `align=<perm>;<perm>;...` (e.g. `align=0123;1032`).
fn c13(opts: &Opts) -> Result<Vec<Built>, ConstructError> {
    let spec = opts
        .get("copies")
        .ok_or_else(|| ConstructError::BadOption("copies", "missing (e.g. copies=c4k2+q4)".into()))?;
    let mut pieces: Vec<(Graph, ClassPartition)> = Vec::new();
    for name in spec.split('+') {
        let piece = match name {
            "q4" => super::named::hypercube4_with_partition(),
            other => {
                let s: usize = other
                    .strip_prefix('c')
                    .and_then(|rest| rest.strip_suffix("k2"))
                    .and_then(|num| num.parse().ok())
                    .ok_or_else(|| {
                        ConstructError::BadOption("copies", format!("unknown copy {other:?}"))
                    })?;
                super::named::cycle_doubled_with_partition(s)
            }
        };
        pieces.push(piece);
    }
    let alignments: Vec<Vec<usize>> = match opts.get("align") {
        None => vec![vec![0, 1, 2, 3]; pieces.len().saturating_sub(1)],
        Some(spec) => spec
            .split(';')
            .map(|p| {
                let perm: Vec<usize> =
                    p.chars().filter_map(|c| c.to_digit(10).map(|d| d as usize)).collect();
                let mut sorted = perm.clone();
                sorted.sort_unstable();
                if sorted == vec![0, 1, 2, 3] {
                    Ok(perm)
                } else {
                    Err(ConstructError::BadOption("align", format!("bad permutation {p:?}")))
                }
            })
            .collect::<Result<_, _>>()?,
    };
    if alignments.len() + 1 != pieces.len() {
        return Err(ConstructError::BadOption(
            "align",
            format!("need {} permutations", pieces.len() - 1),
        ));
    }
    let mut g = Graph::empty(pieces.iter().map(|(p, _)| p.vertex_count()).sum());
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); 4];
    let mut offset = 0;
    for (i, (piece, part)) in pieces.iter().enumerate() {
        for (x, y) in piece.edges() {
            g.add_edge(offset + x, offset + y);
        }
        let align = if i == 0 { &[0, 1, 2, 3][..] } else { &alignments[i - 1][..] };
        for c in 0..4 {
            for x in BitIter(part.class_mask(c)) {
                classes[align[c]].push(offset + x);
            }
        }
        offset += piece.vertex_count();
    }
    let v = offset;
    let n = v / 4;
    let part = ClassPartition::from_classes(v, &classes).unwrap();
    // switch V1 <-> V2 and V3 <-> V4
    for (a, b) in [(0usize, 1usize), (2, 3)] {
        for x in BitIter(part.class_mask(a)) {
            for y in BitIter(part.class_mask(b)) {
                g.toggle_edge(x, y);
            }
        }
    }
    let params = lattice_params(n);
    if !crate::enumerate::is_ddg(&g, &params, &part) {
        return Err(ConstructError::SideCondition(
            "this alignment of the copies does not switch to a DDG".into(),
        ));
    }
    Ok(one(g, part, params, &format!("copies={spec}")))
}

/// Switching of edges between two classes and the other two classes of the
/// canonical partition of a (4n, n+2, n-2, 2, 4, n) DDG.
fn c14(ingredients: &[Ingredient], opts: &Opts) -> Result<Vec<Built>, ConstructError> {
    need(ingredients, 1, "a DDG with parameters (4n, n+2, n-2, 2, 4, n)")?;
    let base = ingredients[0].graph()?;
    let v = base.vertex_count();
    if v % 4 != 0 {
        return Err(ConstructError::Ingredient("vertex count not divisible by 4".into()));
    }
    let n = v / 4;
    let src = lattice_params(n);
    let part = ops::partition_from_common_neighbors(base, &src)
        .map_err(|e| ConstructError::Ingredient(e.to_string()))?;
    if !crate::enumerate::is_ddg(base, &src, &part) {
        return Err(ConstructError::Ingredient("input is not a DDG for the lattice tuple".into()));
    }
    let pairings: Vec<[usize; 4]> = match opts.usize("pairing")? {
        Some(0) => vec![[0, 1, 2, 3]],
        Some(1) => vec![[0, 2, 1, 3]],
        Some(2) => vec![[0, 3, 1, 2]],
        Some(other) => {
            return Err(ConstructError::BadOption("pairing", format!("{other} not in 0..3")))
        }
        None => vec![[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]],
    };
    let params = ParamSet::new(
        (4 * n) as u32,
        (3 * n - 2) as u32,
        (3 * n - 6) as u32,
        (2 * n - 2) as u32,
        4,
        n as u32,
    );
    let mut out = Vec::new();
    for pairing in pairings {
        let mut g = base.clone();
        // complement all edges between {V_a, V_b} and {V_c, V_d}
        for &a in &pairing[..2] {
            for &b in &pairing[2..] {
                for x in BitIter(part.class_mask(a)) {
                    for y in BitIter(part.class_mask(b)) {
                        g.toggle_edge(x, y);
                    }
                }
            }
        }
        // not every pairing of a less symmetric input stays a DDG
        if crate::enumerate::is_ddg(&g, &params, &part) {
            out.push(Built {
                graph: g,
                part: part.clone(),
                params,
                variant: format!("pairing={pairing:?}"),
            });
        }
    }
    if out.is_empty() {
        return Err(ConstructError::SideCondition(
            "no class pairing yields a DDG after switching".into(),
        ));
    }
    Ok(out)
}

/// A_1 + A_3 of an antipodal DRG of diameter 3 with lambda = mu + 2.
fn c15(ingredients: &[Ingredient]) -> Result<Vec<Built>, ConstructError> {
    need(ingredients, 1, "an antipodal DRG of diameter 3 with lambda = mu + 2")?;
    let base = ingredients[0].graph()?;
    let dec = require_drg(base)?;
    let part = dec
        .antipodal_classes
        .clone()
        .ok_or_else(|| ConstructError::Ingredient("not antipodal".into()))?;
    if dec.diameter != 3 {
        return Err(ConstructError::Ingredient(format!("diameter {} != 3", dec.diameter)));
    }
    let (lambda, mu) = dec.lambda_mu().unwrap();
    if lambda != mu + 2 {
        return Err(ConstructError::SideCondition(format!(
            "needs lambda = mu + 2; got lambda={lambda}, mu={mu}"
        )));
    }
    let r = part.class_size();
    let mut g = dec.relations[0].clone();
    for (x, y) in dec.relations[2].edges() {
        g.add_edge(x, y);
    }
    let params = ParamSet::new(
        (r * (2 * mu + 4)) as u32,
        (2 * mu + r + 2) as u32,
        (r - 2) as u32,
        (mu + 2) as u32,
        (2 * mu + 4) as u32,
        r as u32,
    );
    Ok(one(g, part, params, "a1+a3"))
}

/// A + K - I over a Hoffman coloring of an SRG(v,k,mu+2,mu): complete every
/// coclique class.
fn c16(ingredients: &[Ingredient]) -> Result<Vec<Built>, ConstructError> {
    need(ingredients, 1, "an SRG with lambda = mu + 2 and a Hoffman coloring")?;
    let base = ingredients[0].graph()?;
    let (v, k, lambda, mu) =
        srg_parameters(base).ok_or_else(|| ConstructError::Ingredient("not an SRG".into()))?;
    if lambda != mu + 2 {
        return Err(ConstructError::SideCondition(format!(
            "needs lambda = mu + 2; got lambda={lambda}, mu={mu}"
        )));
    }
    let colorings = find_hoffman_colorings(base)?;
    if colorings.is_empty() {
        return Err(ConstructError::SideCondition("no Hoffman coloring found".into()));
    }
    let m = colorings[0].class_count();
    let n = colorings[0].class_size();
    if 2 * k % (m - 1) != 0 {
        return Err(ConstructError::SideCondition(format!(
            "lambda2 = mu + 2k/(m-1) needs (m-1) | 2k; got k={k}, m={m}"
        )));
    }
    let params = ParamSet::new(
        v as u32,
        (k + n - 1) as u32,
        (n + mu - 2) as u32,
        (mu + 2 * k / (m - 1)) as u32,
        m as u32,
        n as u32,
    );
    let mut out = Vec::new();
    for (i, part) in colorings.iter().enumerate() {
        let mut g = base.clone();
        for c in 0..m {
            let class: Vec<usize> = BitIter(part.class_mask(c)).collect();
            for a in 0..n {
                for b in 0..a {
                    g.add_edge(class[a], class[b]);
                }
            }
        }
        out.push(Built { graph: g, part: part.clone(), params, variant: format!("coloring={i}") });
    }
    Ok(out)
}

/// s copies of a DDG whose quotient is aI + b(J - I); blocks with equal
/// labels are joined completely. Labelings of the copies past the first are
/// given by `labels=<perm>;<perm>;...` over the class indices (default
/// identity).
fn c17(ingredients: &[Ingredient], opts: &Opts) -> Result<Vec<Built>, ConstructError> {
    need(ingredients, 1, "a DDG (graph); pass params=v,k,l1,l2,m,n and s")?;
    let base = ingredients[0].graph()?;
    let src = parse_params_opt(opts)?;
    let s = opts.require_usize("s")?;
    if s < 2 {
        return Err(ConstructError::SideCondition("needs s >= 2".into()));
    }
    let part = ops::partition_from_common_neighbors(base, &src)
        .map_err(|e| ConstructError::Ingredient(e.to_string()))?;
    if !crate::enumerate::is_ddg(base, &src, &part) {
        return Err(ConstructError::Ingredient("input is not a DDG for these parameters".into()));
    }
    let q = crate::quotient::quotient_of(base, &part)
        .map_err(|e| ConstructError::Ingredient(e.to_string()))?;
    let m = part.class_count();
    let n = part.class_size();
    let a = q.get(0, 0);
    let b = q.get(0, 1);
    for i in 0..m {
        for j in 0..m {
            let want = if i == j { a } else { b };
            if q.get(i, j) != want {
                return Err(ConstructError::SideCondition(
                    "quotient matrix is not of the form aI + b(J-I)".into(),
                ));
            }
        }
    }
    let l2 = src.lambda2 as usize;
    if l2 != 2 * b as usize || 2 * b as usize != 2 * a as usize + (s - 2) * n {
        return Err(ConstructError::SideCondition(format!(
            "needs lambda2 = 2b = 2a + (s-2)n; got lambda2={l2}, a={a}, b={b}, s={s}, n={n}"
        )));
    }
    let labelings: Vec<Vec<usize>> = match opts.get("labels") {
        None => vec![(0..m).collect(); s - 1],
        Some(spec) => {
            let perms: Vec<Vec<usize>> = spec
                .split(';')
                .map(|p| p.chars().filter_map(|c| c.to_digit(10).map(|d| d as usize)).collect())
                .collect();
            if perms.len() != s - 1 {
                return Err(ConstructError::BadOption(
                    "labels",
                    format!("need {} permutations", s - 1),
                ));
            }
            perms
        }
    };
    let v = base.vertex_count();
    let mut g = Graph::empty(v * s);
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); m * s];
    for copy in 0..s {
        for (x, y) in base.edges() {
            g.add_edge(copy * v + x, copy * v + y);
        }
        let relabel = if copy == 0 { None } else { Some(&labelings[copy - 1]) };
        for c in 0..m {
            let label = relabel.map_or(c, |p| p[c]);
            for x in BitIter(part.class_mask(c)) {
                classes[copy * m + label].push(copy * v + x);
            }
        }
    }
    // join blocks with equal labels across copies completely
    for label in 0..m {
        for c1 in 0..s {
            for c2 in 0..c1 {
                for &x in &classes[c1 * m + label] {
                    for &y in &classes[c2 * m + label] {
                        g.add_edge(x, y);
                    }
                }
            }
        }
    }
    let flat: Vec<Vec<usize>> = classes.into_iter().collect();
    let new_part = ClassPartition::from_classes(v * s, &flat).unwrap();
    let params = ParamSet::new(
        (v * s) as u32,
        (src.k as usize + (s - 1) * n) as u32,
        (src.lambda1 as usize + (s - 1) * n) as u32,
        src.lambda2,
        (m * s) as u32,
        n as u32,
    );
    Ok(one(g, new_part, params, "stacked"))
}

/// Augmented incidence graph of a symmetric divisible design with uniform
/// block spread: points of different classes joined, blocks of different
/// dual classes joined.
fn c18(ingredients: &[Ingredient]) -> Result<Vec<Built>, ConstructError> {
    need(ingredients, 1, "a symmetric divisible design with uniform block spread")?;
    let (inc, meta) = ingredients[0].design()?;
    let q = meta.uniform_block_spread(inc).ok_or_else(|| {
        ConstructError::SideCondition("blocks do not meet every class in k/m points".into())
    })?;
    let (v, k, l1, l2, m, n) = (meta.v, meta.k, meta.lambda1, meta.lambda2, meta.m, meta.n);
    if 2 * (m - 1) * q != l2 + (m - 2) * n {
        return Err(ConstructError::SideCondition(format!(
            "needs 2(m-1)k/m = lambda2 + (m-2)n; got {} vs {}",
            2 * (m - 1) * q,
            l2 + (m - 2) * n
        )));
    }
    let mut g = ops::incidence_graph(&inc.to_vecs());
    for x in 0..v {
        for y in 0..x {
            if meta.point_classes[x] != meta.point_classes[y] {
                g.add_edge(x, y);
            }
            if meta.block_classes[x] != meta.block_classes[y] {
                g.add_edge(v + x, v + y);
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); 2 * m];
    for p in 0..v {
        classes[meta.point_classes[p]].push(p);
    }
    for b in 0..v {
        classes[m + meta.block_classes[b]].push(v + b);
    }
    let part = ClassPartition::from_classes(2 * v, &classes).unwrap();
    let params = ParamSet::new(
        (2 * v) as u32,
        (k + (m - 1) * n) as u32,
        (l1 + (m - 1) * n) as u32,
        (l2 + (m - 2) * n) as u32,
        (2 * m) as u32,
        n as u32,
    );
    Ok(one(g, part, params, "augmented-incidence"))
}

/// Paired variant: point classes and block classes are split into pairs and
/// only vertices from different classes of the same pair are joined.
fn c19(ingredients: &[Ingredient], opts: &Opts) -> Result<Vec<Built>, ConstructError> {
    need(ingredients, 1, "a symmetric divisible design with even m")?;
    let (inc, meta) = ingredients[0].design()?;
    let q = meta.uniform_block_spread(inc).ok_or_else(|| {
        ConstructError::SideCondition("blocks do not meet every class in k/m points".into())
    })?;
    let (v, k, l1, l2, m, n) = (meta.v, meta.k, meta.lambda1, meta.lambda2, meta.m, meta.n);
    if m % 2 != 0 {
        return Err(ConstructError::SideCondition("needs even m".into()));
    }
    if 2 * q != l2 {
        return Err(ConstructError::SideCondition(format!(
            "needs 2k/m = lambda2; got {} vs {l2}",
            2 * q
        )));
    }
    let pairings = match opts.get("pairing") {
        Some(spec) => vec![parse_pairing(spec, m)?],
        None => all_pairings(m),
    };
    let mut out = Vec::new();
    for pairing in &pairings {
        let mut g = ops::incidence_graph(&inc.to_vecs());
        for x in 0..v {
            for y in 0..x {
                let (cx, cy) = (meta.point_classes[x], meta.point_classes[y]);
                if cx != cy && pairing[cx] == pairing[cy] {
                    g.add_edge(x, y);
                }
                let (bx, by) = (meta.block_classes[x], meta.block_classes[y]);
                if bx != by && pairing[bx] == pairing[by] {
                    g.add_edge(v + x, v + y);
                }
            }
        }
        let mut classes: Vec<Vec<usize>> = vec![Vec::new(); 2 * m];
        for p in 0..v {
            classes[meta.point_classes[p]].push(p);
        }
        for b in 0..v {
            classes[m + meta.block_classes[b]].push(v + b);
        }
        let part = ClassPartition::from_classes(2 * v, &classes).unwrap();
        let params = ParamSet::new(
            (2 * v) as u32,
            (k + n) as u32,
            (l1 + n) as u32,
            l2 as u32,
            (2 * m) as u32,
            n as u32,
        );
        out.push(Built {
            graph: g,
            part,
            params,
            variant: format!("pairing={pairing:?}"),
        });
    }
    Ok(out)
}

fn parse_pairing(spec: &str, m: usize) -> Result<Vec<usize>, ConstructError> {
    // "01|23|45" style: classes sharing a group id are paired
    let mut pairing = vec![usize::MAX; m];
    for (gid, grp) in spec.split('|').enumerate() {
        for c in grp.chars() {
            let c = c
                .to_digit(10)
                .ok_or_else(|| ConstructError::BadOption("pairing", format!("bad {spec:?}")))?
                as usize;
            if c >= m {
                return Err(ConstructError::BadOption("pairing", format!("class {c} out of range")));
            }
            pairing[c] = gid;
        }
    }
    if pairing.iter().any(|&p| p == usize::MAX) {
        return Err(ConstructError::BadOption("pairing", "does not cover all classes".into()));
    }
    Ok(pairing)
}

/// All ways to split 0..m into unordered pairs.
fn all_pairings(m: usize) -> Vec<Vec<usize>> {
    fn rec(assign: &mut Vec<usize>, next_gid: usize, out: &mut Vec<Vec<usize>>) {
        let m = assign.len();
        let first = match (0..m).find(|&c| assign[c] == usize::MAX) {
            None => {
                out.push(assign.clone());
                return;
            }
            Some(f) => f,
        };
        for mate in first + 1..m {
            if assign[mate] == usize::MAX {
                assign[first] = next_gid;
                assign[mate] = next_gid;
                rec(assign, next_gid + 1, out);
                assign[first] = usize::MAX;
                assign[mate] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![usize::MAX; m], 0, &mut out);
    out
}

/// Weighing-matrix substitution: W(4t, 4(t-1)) with zero diagonal 4-blocks,
/// entries expanded over pairs, plus complete multipartite parts on the
/// diagonal.
fn c20(ingredients: &[Ingredient]) -> Result<Vec<Built>, ConstructError> {
    need(ingredients, 1, "a symmetric weighing matrix W(4t, 4t-4) with zero diagonal blocks")?;
    let w = ingredients[0].sign()?;
    let (g, t) = c20_graph(w)?;
    let params = ParamSet::new(
        (8 * t) as u32,
        (4 * t + 2) as u32,
        6,
        (2 * t + 2) as u32,
        (4 * t) as u32,
        2,
    );
    Ok(one(g, ClassPartition::contiguous(4 * t, 2), params, "weighing"))
}

fn c20_graph(w: &SignMatrix) -> Result<(Graph, usize), ConstructError> {
    let order = w.order();
    if order % 4 != 0 || !w.is_symmetric() || !w.has_zero_diagonal_blocks(4) {
        return Err(ConstructError::Ingredient(
            "needs a symmetric weighing matrix of order 4t with zero diagonal 4-blocks".into(),
        ));
    }
    let t = order / 4;
    if w.weight() != 4 * (t - 1) {
        return Err(ConstructError::Ingredient(format!(
            "weight {} differs from 4(t-1) = {}",
            w.weight(),
            4 * (t - 1)
        )));
    }
    let v = 2 * order;
    let mut g = Graph::empty(v);
    for i in 0..order {
        for j in 0..i {
            match w.get(i, j) {
                1 => {
                    g.add_edge(2 * i, 2 * j);
                    g.add_edge(2 * i + 1, 2 * j + 1);
                }
                -1 => {
                    g.add_edge(2 * i, 2 * j + 1);
                    g.add_edge(2 * i + 1, 2 * j);
                }
                _ => {}
            }
        }
    }
    // I_t (x) ((J_4 - I_4) (x) J_2): complete 4-partite blocks on the pairs
    for b in 0..t {
        for i in 0..4 {
            for j in 0..i {
                for a in 0..2 {
                    for c in 0..2 {
                        g.add_edge(2 * (4 * b + i) + a, 2 * (4 * b + j) + c);
                    }
                }
            }
        }
    }
    Ok((g, t))
}

/// Removes a K_{4,4} inside each complete multipartite diagonal part of a
/// Construction-20 graph.
fn c21(ingredients: &[Ingredient], opts: &Opts) -> Result<Vec<Built>, ConstructError> {
    need(ingredients, 1, "the weighing matrix behind a c20 graph")?;
    let w = ingredients[0].sign()?;
    let (mut g, t) = c20_graph(w)?;
    // split the 4 pairs of each part into two halves and drop the K_{4,4}
    // between them
    let split = match opts.get("split").unwrap_or("01|23") {
        "01|23" => [[0usize, 1], [2, 3]],
        "02|13" => [[0, 2], [1, 3]],
        "03|12" => [[0, 3], [1, 2]],
        other => return Err(ConstructError::BadOption("split", other.to_string())),
    };
    for b in 0..t {
        for &i in &split[0] {
            for &j in &split[1] {
                for a in 0..2 {
                    for c in 0..2 {
                        g.remove_edge(2 * (4 * b + i) + a, 2 * (4 * b + j) + c);
                    }
                }
            }
        }
    }
    let params = ParamSet::new(
        (8 * t) as u32,
        (4 * t - 2) as u32,
        2,
        (2 * t - 2) as u32,
        (4 * t) as u32,
        2,
    );
    Ok(one(g, ClassPartition::contiguous(4 * t, 2), params, "trimmed-weighing"))
}

/// The sporadic 27-vertex matrix.
fn c22() -> Built {
    let j = [[1u8; 3]; 3];
    let o = [[0u8; 3]; 3];
    let i = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let jmi = [[0, 1, 1], [1, 0, 1], [1, 1, 0]];
    let t1 = [[1, 0, 0], [0, 0, 1], [0, 1, 0]];
    let t2 = [[0, 1, 0], [1, 0, 0], [0, 0, 1]];
    let t3 = [[0, 0, 1], [0, 1, 0], [1, 0, 0]];
    let blocks: [[[[u8; 3]; 3]; 9]; 9] = [
        [o, jmi, jmi, jmi, jmi, o, o, o, o],
        [jmi, o, t1, t2, t3, j, o, o, o],
        [jmi, t1, o, t3, t2, o, j, o, o],
        [jmi, t2, t3, o, t1, o, o, j, o],
        [jmi, t3, t2, t1, o, o, o, o, j],
        [o, j, o, o, o, jmi, i, i, i],
        [o, o, j, o, o, i, jmi, i, i],
        [o, o, o, j, o, i, i, jmi, i],
        [o, o, o, o, j, i, i, i, jmi],
    ];
    let graph = graph_from_blocks(&blocks, 3);
    Built {
        graph,
        part: ClassPartition::contiguous(9, 3),
        params: ParamSet::new(27, 8, 4, 2, 9, 3),
        variant: "sporadic".into(),
    }
}

/// The sporadic 28-vertex matrix.
fn c23() -> Built {
    let o = [[0u8; 4]; 4];
    let a = [[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 1], [0, 0, 1, 1]];
    let b = [[1, 1, 0, 0], [0, 0, 1, 1], [1, 1, 0, 0], [0, 0, 1, 1]];
    let c = [[1, 1, 0, 0], [0, 0, 1, 1], [0, 0, 1, 1], [1, 1, 0, 0]];
    let d = [[0, 1, 1, 0], [1, 0, 0, 1], [1, 0, 0, 1], [0, 1, 1, 0]];
    let e = [[1, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 1]];
    let f = [[1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 1, 0], [1, 0, 0, 1]];
    let tr = |m: [[u8; 4]; 4]| -> [[u8; 4]; 4] {
        let mut t = [[0u8; 4]; 4];
        for x in 0..4 {
            for y in 0..4 {
                t[x][y] = m[y][x];
            }
        }
        t
    };
    let blocks: [[[[u8; 4]; 4]; 7]; 7] = [
        [o, a, b, c, o, o, o],
        [tr(a), d, o, o, e, o, o],
        [tr(b), o, d, o, o, e, o],
        [tr(c), o, o, d, o, o, e],
        [o, e, o, o, o, a, c],
        [o, o, e, o, tr(a), o, f],
        [o, o, o, e, tr(c), tr(f), o],
    ];
    let graph = graph_from_blocks(&blocks, 4);
    Built {
        graph,
        part: ClassPartition::contiguous(7, 4),
        params: ParamSet::new(28, 6, 2, 1, 7, 4),
        variant: "sporadic".into(),
    }
}

fn graph_from_blocks<const B: usize, const M: usize>(
    blocks: &[[[[u8; B]; B]; M]; M],
    bsize: usize,
) -> Graph {
    let v = M * bsize;
    let mut g = Graph::empty(v);
    for bi in 0..M {
        for bj in 0..M {
            for x in 0..bsize {
                for y in 0..bsize {
                    if blocks[bi][bj][x][y] == 1 {
                        let (a, b) = (bi * bsize + x, bj * bsize + y);
                        if a != b && !g.has_edge(a, b) {
                            g.add_edge(a, b);
                        }
                    }
                }
            }
        }
    }
    g
}

/// Remark-1 assembler: [[A, B], [B^T, C]] with A = C the passed Shrikhande
/// graph and B the incidence matrix of a (16,4,0,1,4,4)-SDD aligned with
/// that labeling (the bundled aligned blocks come from the enumerator).
fn r1(ingredients: &[Ingredient]) -> Result<Vec<Built>, ConstructError> {
    need(ingredients, 2, "the Shrikhande graph and an aligned (16,4,0,1,4,4)-SDD")?;
    let a = ingredients[0].graph()?;
    let (inc, meta) = ingredients[1].design()?;
    if srg_parameters(a) != Some((16, 6, 2, 2)) {
        return Err(ConstructError::Ingredient("first ingredient must be SRG(16,6,2,2)".into()));
    }
    if (meta.v, meta.k, meta.lambda1, meta.lambda2, meta.m, meta.n) != (16, 4, 0, 1, 4, 4) {
        return Err(ConstructError::Ingredient(
            "second ingredient must be a (16,4,0,1,4,4)-SDD".into(),
        ));
    }
    let mut g = Graph::empty(32);
    for x in 0..16 {
        for y in 0..x {
            if a.has_edge(x, y) {
                g.add_edge(x, y);
                g.add_edge(16 + x, 16 + y);
            }
        }
        for z in 0..16 {
            if inc.get(x, z) == 1 {
                g.add_edge(x, 16 + z);
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); 8];
    for p in 0..16 {
        classes[meta.point_classes[p]].push(p);
        classes[4 + meta.block_classes[p]].push(16 + p);
    }
    let part = ClassPartition::from_classes(32, &classes).unwrap();
    let params = ParamSet::new(32, 10, 2, 3, 8, 4);
    if !crate::enumerate::is_ddg(&g, &params, &part) {
        return Err(ConstructError::SideCondition(
            "design is not aligned with this Shrikhande labeling; use the bundled aligned blocks"
                .into(),
        ));
    }
    Ok(one(g, part, params, "assembled"))
}

/// (v,k,lambda)-graph parameters: k-regular with every distinct pair seeing
/// lambda common neighbours.
fn vkl_graph(g: &Graph) -> Result<(usize, usize, usize), ConstructError> {
    let v = g.vertex_count();
    let k = g
        .is_regular()
        .ok_or_else(|| ConstructError::Ingredient("not regular".into()))?;
    if v == 1 {
        return Ok((1, 0, 0));
    }
    let l = g.common_neighbors(0, 1);
    for x in 0..v {
        for y in 0..x {
            if g.common_neighbors(x, y) != l {
                return Err(ConstructError::Ingredient(
                    "not a (v,k,lambda)-graph: common neighbour counts differ".into(),
                ));
            }
        }
    }
    Ok((v, k, l))
}

/// Complete multipartite shape (x parts of y), if the graph has one.
fn multipartite_shape(g: &Graph) -> Option<(usize, usize)> {
    let comp = g.complement();
    // complement must be a disjoint union of equal cliques
    let v = g.vertex_count();
    let mut seen = vec![false; v];
    let mut part_size = None;
    let mut parts = 0;
    for x in 0..v {
        if seen[x] {
            continue;
        }
        let members: Vec<usize> =
            (0..v).filter(|&y| y == x || comp.has_edge(x, y)).collect();
        for &a in &members {
            for &b in &members {
                if a != b && !comp.has_edge(a, b) {
                    return None;
                }
            }
            if comp.degree(a) != members.len() - 1 {
                return None;
            }
            seen[a] = true;
        }
        match part_size {
            None => part_size = Some(members.len()),
            Some(s) if s == members.len() => {}
            _ => return None,
        }
        parts += 1;
    }
    let y = part_size?;
    (parts >= 2 && y >= 2).then_some((parts, y))
}

fn rghm_shape(h: &SignMatrix) -> Result<(usize, i64), ConstructError> {
    if h.kind != SignKind::Hadamard || !h.is_symmetric() {
        return Err(ConstructError::Ingredient("not a symmetric Hadamard matrix".into()));
    }
    if h.constant_diagonal() != Some(-1) {
        return Err(ConstructError::Ingredient("diagonal must be constant -1".into()));
    }
    let l = h
        .regular_row_sum()
        .ok_or_else(|| ConstructError::Ingredient("not regular".into()))?;
    Ok((h.order(), l))
}

/// Reads `params=v,k,l1,l2,m,n` from the options.
fn parse_params_opt(opts: &Opts) -> Result<ParamSet, ConstructError> {
    let spec = opts
        .get("params")
        .ok_or_else(|| ConstructError::BadOption("params", "missing (v,k,l1,l2,m,n)".into()))?;
    let nums: Vec<u32> = spec
        .split(',')
        .map(|s| s.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| ConstructError::BadOption("params", spec.to_string()))?;
    if nums.len() != 6 {
        return Err(ConstructError::BadOption("params", "need six numbers".into()));
    }
    Ok(ParamSet::new(nums[0], nums[1], nums[2], nums[3], nums[4], nums[5]))
}

/// Parameter tuple of a graph-with-partition that is a DDG, derived by
/// counting.
fn derive_params(g: &Graph, part: &ClassPartition) -> Option<ParamSet> {
    let v = g.vertex_count();
    let k = g.is_regular()?;
    let (m, n) = (part.class_count(), part.class_size());
    let mut l1 = None;
    let mut l2 = None;
    for x in 0..v {
        for y in 0..x {
            let c = g.common_neighbors(x, y);
            let slot = if part.class_of(x) == part.class_of(y) { &mut l1 } else { &mut l2 };
            match slot {
                None => *slot = Some(c),
                Some(val) if *val == c => {}
                _ => return None,
            }
        }
    }
    Some(ParamSet::new(
        v as u32,
        k as u32,
        l1? as u32,
        l2? as u32,
        m as u32,
        n as u32,
    ))
}
