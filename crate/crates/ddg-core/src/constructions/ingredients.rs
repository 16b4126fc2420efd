//! Named ingredient store: generated objects plus data-backed ones (found by
//! the offline search tool and committed under `data/`), all validated
//! against their declared structure on load.

use super::analysis::require_drg;
use super::matrices::{DesignMeta, SignKind, SignMatrix, ZeroOneMatrix};
use super::named;
use super::ConstructError;
use crate::graph::Graph;
use std::path::PathBuf;

#[derive(Clone, Debug)]
pub enum Payload {
    Graph(Graph),
    Design { inc: ZeroOneMatrix, meta: DesignMeta },
    Sign(SignMatrix),
}

/// A named input object for the constructions.
#[derive(Clone, Debug)]
pub struct Ingredient {
    pub name: String,
    pub payload: Payload,
}

impl Ingredient {
    pub fn graph(&self) -> Result<&Graph, ConstructError> {
        match &self.payload {
            Payload::Graph(g) => Ok(g),
            _ => Err(ConstructError::WrongKind { name: self.name.clone(), expected: "graph" }),
        }
    }

    pub fn design(&self) -> Result<(&ZeroOneMatrix, &DesignMeta), ConstructError> {
        match &self.payload {
            Payload::Design { inc, meta } => Ok((inc, meta)),
            _ => Err(ConstructError::WrongKind { name: self.name.clone(), expected: "design" }),
        }
    }

    pub fn sign(&self) -> Result<&SignMatrix, ConstructError> {
        match &self.payload {
            Payload::Sign(s) => Ok(s),
            _ => Err(ConstructError::WrongKind {
                name: self.name.clone(),
                expected: "sign matrix",
            }),
        }
    }
}

/// Resolves ingredient names; generated objects are built on demand, the
/// rest is read from the data directory.
pub struct IngredientStore {
    data_dir: Option<PathBuf>,
}

pub const BUILTIN_NAMES: &[&str] = &[
    "petersen",
    "icosahedron",
    "l-petersen",
    "j63",
    "l-octahedron",
    "shrikhande",
    "schlafli",
    "t8",
    "chang1",
    "chang2",
    "chang3",
    "taylor28",
    "taylor36",
    "halved-6-cube",
    "q4",
    "fano",
    "sdd-9-3-0-1",
    "sdd-16-4-0-1",
    "h2",
    "rghm4-rs2",
    "rghm4-rs-2",
    "rghm16-rs4",
    "rghm16-rs-4",
    "srg35-1",
    "srg35-2",
    "srg35-3",
];

pub const DATA_NAMES: &[&str] = &[
    "klein",
    "w12",
    "w16",
    "sdd-18-6-0-2",
    "sdd-18-12-6-8",
    "r1-cross-1",
    "r1-cross-2",
];

impl IngredientStore {
    pub fn builtin() -> Self {
        IngredientStore { data_dir: None }
    }

    pub fn with_data_dir(dir: impl Into<PathBuf>) -> Self {
        IngredientStore { data_dir: Some(dir.into()) }
    }

    pub fn names(&self) -> Vec<&'static str> {
        let mut v: Vec<&'static str> = BUILTIN_NAMES.to_vec();
        if self.data_dir.is_some() {
            v.extend_from_slice(DATA_NAMES);
        }
        v
    }

    pub fn get(&self, name: &str) -> Result<Ingredient, ConstructError> {
        let payload = match name {
            "petersen" => Payload::Graph(named::petersen()),
            "icosahedron" => Payload::Graph(validated_drg(named::icosahedron(), &[5, 2, 1], &[1, 2, 5])?),
            "l-petersen" => Payload::Graph(validated_drg(
                named::line_graph(&named::petersen()),
                &[4, 2, 1],
                &[1, 1, 4],
            )?),
            "j63" => Payload::Graph(validated_drg(named::johnson(6, 3), &[9, 4, 1], &[1, 4, 9])?),
            "l-octahedron" => Payload::Graph(named::line_graph(&named::octahedron())),
            "shrikhande" => Payload::Graph(validated_srg(named::shrikhande(), (16, 6, 2, 2))?),
            "schlafli" => Payload::Graph(validated_srg(named::schlafli(), (27, 16, 10, 8))?),
            "t8" => Payload::Graph(validated_srg(named::triangular(8), (28, 12, 6, 4))?),
            "chang1" => Payload::Graph(validated_srg(named::chang(1), (28, 12, 6, 4))?),
            "chang2" => Payload::Graph(validated_srg(named::chang(2), (28, 12, 6, 4))?),
            "chang3" => Payload::Graph(validated_srg(named::chang(3), (28, 12, 6, 4))?),
            "taylor28" => Payload::Graph(validated_drg(named::taylor(13), &[13, 6, 1], &[1, 6, 13])?),
            "taylor36" => Payload::Graph(validated_drg(named::taylor(17), &[17, 8, 1], &[1, 8, 17])?),
            "halved-6-cube" => {
                Payload::Graph(validated_drg(named::halved_6_cube(), &[15, 6, 1], &[1, 6, 15])?)
            }
            "q4" => Payload::Graph(named::hypercube4_with_partition().0),
            "fano" => {
                let inc = ZeroOneMatrix::from_rows(&named::fano_incidence()).unwrap();
                let meta = DesignMeta::contiguous(7, 3, 0, 1, 7, 1);
                meta.validate(&inc).map_err(|e| bad(name, e))?;
                Payload::Design { inc, meta }
            }
            "sdd-9-3-0-1" => {
                let (inc, meta) = ag23_design();
                meta.validate(&inc).map_err(|e| bad(name, e))?;
                Payload::Design { inc, meta }
            }
            "sdd-16-4-0-1" => {
                let (inc, meta) = gf4_transversal_design();
                meta.validate(&inc).map_err(|e| bad(name, e))?;
                Payload::Design { inc, meta }
            }
            "h2" => Payload::Sign(
                SignMatrix::from_rows(&[vec![1, 1], vec![1, -1]], SignKind::Hadamard).unwrap(),
            ),
            "rghm4-rs2" => Payload::Sign(validated_rghm(rghm4_rs2(), -1, 2)?),
            "rghm4-rs-2" => Payload::Sign(validated_rghm(rghm4_rs_neg2(), -1, -2)?),
            "rghm16-rs4" => Payload::Sign(validated_rghm(
                rghm4_rs2().kronecker(&p4_diag_plus(), SignKind::Hadamard),
                -1,
                4,
            )?),
            "rghm16-rs-4" => Payload::Sign(validated_rghm(
                rghm4_rs2().kronecker(&neg(&rghm4_rs2()), SignKind::Hadamard),
                -1,
                -4,
            )?),
            "srg35-1" => Payload::Graph(validated_srg(pg32_line_graph(), (35, 18, 9, 9))?),
            "srg35-2" => Payload::Graph(validated_srg(srg35_from_latin(&latin_z6()), (35, 18, 9, 9))?),
            "srg35-3" => Payload::Graph(validated_srg(srg35_from_latin(&latin_s3()), (35, 18, 9, 9))?),
            "klein" => {
                let text = self.read_data("klein.g6")?;
                let graphs = crate::graph6::decode_file(&text)
                    .map_err(|(line, e)| bad(name, format!("line {line}: {e}")))?;
                if graphs.len() != 1 {
                    return Err(bad(name, "expected exactly one graph"));
                }
                Payload::Graph(validated_drg(graphs.into_iter().next().unwrap(), &[7, 4, 1], &[1, 2, 7])?)
            }
            "w12" => Payload::Sign(self.read_weighing("w12.wm", 12, 8)?),
            "w16" => Payload::Sign(self.read_weighing("w16.wm", 16, 12)?),
            "sdd-18-6-0-2" => {
                let text = self.read_data("sdd-18-6-0-2.design")?;
                let inc = ZeroOneMatrix::parse(&text).map_err(|e| bad(name, e))?;
                let meta = DesignMeta::contiguous(18, 6, 0, 2, 6, 3);
                meta.validate(&inc).map_err(|e| bad(name, e))?;
                Payload::Design { inc, meta }
            }
            "sdd-18-12-6-8" => {
                let base = self.get("sdd-18-6-0-2")?;
                let (inc, _) = base.design()?;
                let inc = inc.complement();
                let meta = DesignMeta::contiguous(18, 12, 6, 8, 6, 3);
                meta.validate(&inc).map_err(|e| bad(name, e))?;
                Payload::Design { inc, meta }
            }
            "r1-cross-1" | "r1-cross-2" => {
                let text = self.read_data("r1-cross.txt")?;
                let parts: Vec<&str> =
                    text.split("\n\n").filter(|p| !p.trim().is_empty()).collect();
                let idx = if name.ends_with('1') { 0 } else { 1 };
                let block = parts
                    .get(idx)
                    .ok_or_else(|| bad(name, "cross-block file is incomplete"))?;
                let inc = ZeroOneMatrix::parse(block).map_err(|e| bad(name, e))?;
                let meta = sdd16_meta_from_matrix(&inc).ok_or_else(|| {
                    bad(name, "matrix is not a (16,4,0,1,4,4) divisible design")
                })?;
                meta.validate(&inc).map_err(|e| bad(name, e))?;
                Payload::Design { inc, meta }
            }
            _ => return Err(ConstructError::UnknownIngredient(name.to_string())),
        };
        Ok(Ingredient { name: name.to_string(), payload })
    }

    fn read_data(&self, file: &str) -> Result<String, ConstructError> {
        let dir = self.data_dir.as_ref().ok_or_else(|| {
            ConstructError::UnknownIngredient(format!("{file} needs a data directory"))
        })?;
        std::fs::read_to_string(dir.join(file))
            .map_err(|e| ConstructError::Ingredient(format!("reading {file}: {e}")))
    }

    fn read_weighing(&self, file: &str, order: usize, weight: usize) -> Result<SignMatrix, ConstructError> {
        let text = self.read_data(file)?;
        let w = SignMatrix::parse(&text, SignKind::Weighing).map_err(|e| bad(file, e))?;
        if w.order() != order || w.weight() != weight || !w.is_symmetric() {
            return Err(bad(file, "wrong order, weight, or asymmetry"));
        }
        if !w.has_zero_diagonal_blocks(4) {
            return Err(bad(file, "diagonal 4x4 blocks are not zero"));
        }
        Ok(w)
    }
}

fn bad(name: &str, err: impl ToString) -> ConstructError {
    ConstructError::Ingredient(format!("{name}: {}", err.to_string()))
}

fn validated_srg(g: Graph, want: (usize, usize, usize, usize)) -> Result<Graph, ConstructError> {
    match super::analysis::srg_parameters(&g) {
        Some(got) if got == want => Ok(g),
        got => Err(ConstructError::Ingredient(format!(
            "expected SRG{want:?}, found {got:?}"
        ))),
    }
}

fn validated_drg(g: Graph, b: &[usize], c: &[usize]) -> Result<Graph, ConstructError> {
    let dec = require_drg(&g).map_err(|e| ConstructError::Ingredient(e.to_string()))?;
    let got = dec.intersection_array.unwrap();
    if got != (b.to_vec(), c.to_vec()) {
        return Err(ConstructError::Ingredient(format!(
            "expected intersection array {{{b:?}; {c:?}}}, found {got:?}"
        )));
    }
    Ok(g)
}

fn validated_rghm(m: SignMatrix, diag: i8, row_sum: i64) -> Result<SignMatrix, ConstructError> {
    if !m.is_symmetric()
        || m.constant_diagonal() != Some(diag)
        || m.regular_row_sum() != Some(row_sum)
    {
        return Err(ConstructError::Ingredient(format!(
            "not a regular graphical Hadamard matrix with diagonal {diag} and row sum {row_sum}"
        )));
    }
    Ok(m)
}

fn rghm4_rs2() -> SignMatrix {
    // J - 2I
    SignMatrix::from_rows(
        &[
            vec![-1, 1, 1, 1],
            vec![1, -1, 1, 1],
            vec![1, 1, -1, 1],
            vec![1, 1, 1, -1],
        ],
        SignKind::Hadamard,
    )
    .unwrap()
}

fn rghm4_rs_neg2() -> SignMatrix {
    SignMatrix::from_rows(
        &[
            vec![-1, 1, -1, -1],
            vec![1, -1, -1, -1],
            vec![-1, -1, -1, 1],
            vec![-1, -1, 1, -1],
        ],
        SignKind::Hadamard,
    )
    .unwrap()
}

/// Symmetric Hadamard matrix of order 4 with diagonal +1 and row sum 2.
fn p4_diag_plus() -> SignMatrix {
    SignMatrix::from_rows(
        &[
            vec![1, 1, 1, -1],
            vec![1, 1, -1, 1],
            vec![1, -1, 1, 1],
            vec![-1, 1, 1, 1],
        ],
        SignKind::Hadamard,
    )
    .unwrap()
}

fn neg(m: &SignMatrix) -> SignMatrix {
    let n = m.order();
    let rows: Vec<Vec<i8>> = (0..n).map(|i| (0..n).map(|j| -m.get(i, j)).collect()).collect();
    SignMatrix::from_rows(&rows, SignKind::Hadamard).unwrap()
}

/// AG(2,3) minus a parallel class: the (9,3,0,1)-SDD with classes the
/// removed lines.
fn ag23_design() -> (ZeroOneMatrix, DesignMeta) {
    let mut rows = vec![vec![0u8; 9]; 9];
    for r in 0..3 {
        for t in 0..3 {
            for j in 0..3 {
                let point = j * 3 + (r * j + t) % 3;
                rows[point][r * 3 + t] = 1;
            }
        }
    }
    (ZeroOneMatrix::from_rows(&rows).unwrap(), DesignMeta::contiguous(9, 3, 0, 1, 3, 3))
}

/// Transversal design TD(4,4) from the GF(4) difference matrix: the
/// (16,4,0,1,4,4)-SDD.
fn gf4_transversal_design() -> (ZeroOneMatrix, DesignMeta) {
    // GF(4) as Z2^2 with multiplication via the primitive element x: x^2 = x + 1
    let mul = |a: usize, b: usize| -> usize {
        // elements 0,1,2,3 = 0, 1, x, x+1
        const TABLE: [[usize; 4]; 4] = [
            [0, 0, 0, 0],
            [0, 1, 2, 3],
            [0, 2, 3, 1],
            [0, 3, 1, 2],
        ];
        TABLE[a][b]
    };
    let mut rows = vec![vec![0u8; 16]; 16];
    for r in 0..4 {
        for t in 0..4 {
            // block (r,t) contains point (j, r*j + t) for every group j
            for j in 0..4 {
                let point = j * 4 + (mul(r, j) ^ t);
                rows[point][r * 4 + t] = 1;
            }
        }
    }
    (ZeroOneMatrix::from_rows(&rows).unwrap(), DesignMeta::contiguous(16, 4, 0, 1, 4, 4))
}

/// Recovers the class structure of a (16,4,0,1,4,4)-SDD from its incidence
/// matrix: points meeting in no common block share a class, dually for
/// blocks.
fn sdd16_meta_from_matrix(inc: &ZeroOneMatrix) -> Option<DesignMeta> {
    if inc.rows() != 16 || inc.cols() != 16 {
        return None;
    }
    let classes_of = |same: &dyn Fn(usize, usize) -> bool| -> Option<Vec<usize>> {
        let mut class = vec![usize::MAX; 16];
        let mut next = 0;
        for x in 0..16 {
            if class[x] != usize::MAX {
                continue;
            }
            class[x] = next;
            for y in x + 1..16 {
                if same(x, y) {
                    if class[y] != usize::MAX {
                        return None;
                    }
                    class[y] = next;
                }
            }
            next += 1;
        }
        (next == 4).then_some(class)
    };
    let tr = inc.transpose();
    let point_classes = classes_of(&|x, y| inc.row_dot(x, y) == 0)?;
    let block_classes = classes_of(&|x, y| tr.row_dot(x, y) == 0)?;
    Some(DesignMeta {
        v: 16,
        k: 4,
        lambda1: 0,
        lambda2: 1,
        m: 4,
        n: 4,
        point_classes,
        block_classes,
    })
}

fn latin_z6() -> Vec<Vec<usize>> {
    (0..6).map(|r| (0..6).map(|c| (r + c) % 6).collect()).collect()
}

fn latin_s3() -> Vec<Vec<usize>> {
    // Cayley table of S_3; elements as permutations of 0,1,2
    let elems: [[usize; 3]; 6] =
        [[0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1], [2, 1, 0], [1, 0, 2]];
    let compose = |a: &[usize; 3], b: &[usize; 3]| -> [usize; 3] {
        [a[b[0]], a[b[1]], a[b[2]]]
    };
    let index = |p: &[usize; 3]| elems.iter().position(|e| e == p).unwrap();
    (0..6)
        .map(|r| (0..6).map(|c| index(&compose(&elems[r], &elems[c]))).collect())
        .collect()
}

/// Latin square graph on 36 cells; same row, column, or symbol.
fn latin_square_graph(l: &[Vec<usize>]) -> Graph {
    let n = l.len();
    let mut g = Graph::empty(n * n);
    for x in 0..n * n {
        for y in 0..x {
            let (r1, c1) = (x / n, x % n);
            let (r2, c2) = (y / n, y % n);
            if r1 == r2 || c1 == c2 || l[r1][c1] == l[r2][c2] {
                g.add_edge(x, y);
            }
        }
    }
    g
}

/// SRG(35,18,9,9) on the lines of PG(3,2), adjacent when intersecting. Its
/// Hoffman colorings are the parallelisms of PG(3,2).
fn pg32_line_graph() -> Graph {
    let mut lines: Vec<[u16; 3]> = Vec::new();
    for a in 1u16..16 {
        for b in a + 1..16 {
            let c = a ^ b;
            if c > b {
                lines.push([a, b, c]);
            }
        }
    }
    let mut g = Graph::empty(35);
    for i in 0..35 {
        for j in 0..i {
            if lines[i].iter().any(|p| lines[j].contains(p)) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// SRG(35,18,9,9): two-graph descendant of a Latin square graph of order 6
/// at vertex 0.
fn srg35_from_latin(l: &[Vec<usize>]) -> Graph {
    let g36 = latin_square_graph(l);
    let neighbors: Vec<usize> = (1..36).filter(|&y| g36.has_edge(0, y)).collect();
    let switched = named::seidel_switch(&g36, &neighbors);
    // vertex 0 is now isolated; drop it
    let mut g = Graph::empty(35);
    for x in 1..36 {
        for y in 1..x {
            if switched.has_edge(x, y) {
                g.add_edge(x - 1, y - 1);
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_ingredients_validate() {
        let store = IngredientStore::builtin();
        for name in BUILTIN_NAMES {
            assert!(store.get(name).is_ok(), "ingredient {name} failed to load");
        }
    }

    #[test]
    fn data_ingredients_require_dir() {
        let store = IngredientStore::builtin();
        assert!(store.get("klein").is_err());
    }
}
