//! Ingredient matrices: 0/1 incidence matrices of (divisible) designs and
//! sign matrices (Hadamard, weighing), with load-time validation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("ragged or empty matrix")]
    Shape,
    #[error("entry out of range at ({0},{1})")]
    Entry(usize, usize),
    #[error("{0}")]
    Validation(String),
}

/// Rectangular 0/1 matrix.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ZeroOneMatrix {
    rows: usize,
    cols: usize,
    a: Vec<u8>,
}

impl ZeroOneMatrix {
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self, MatrixError> {
        let r = rows.len();
        if r == 0 || rows[0].is_empty() {
            return Err(MatrixError::Shape);
        }
        let c = rows[0].len();
        let mut a = Vec::with_capacity(r * c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(MatrixError::Shape);
            }
            for (j, &e) in row.iter().enumerate() {
                if e > 1 {
                    return Err(MatrixError::Entry(i, j));
                }
                a.push(e);
            }
        }
        Ok(ZeroOneMatrix { rows: r, cols: c, a })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.a[i * self.cols + j]
    }

    pub fn row_slice(&self, i: usize) -> &[u8] {
        &self.a[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_vecs(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| self.row_slice(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> ZeroOneMatrix {
        let mut a = vec![0u8; self.rows * self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                a[j * self.rows + i] = self.get(i, j);
            }
        }
        ZeroOneMatrix { rows: self.cols, cols: self.rows, a }
    }

    pub fn complement(&self) -> ZeroOneMatrix {
        ZeroOneMatrix {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().map(|&e| 1 - e).collect(),
        }
    }

    pub fn row_dot(&self, i: usize, j: usize) -> usize {
        self.row_slice(i)
            .iter()
            .zip(self.row_slice(j))
            .map(|(&a, &b)| (a & b) as usize)
            .sum()
    }

    /// Parses lines of '0'/'1' characters.
    pub fn parse(text: &str) -> Result<Self, MatrixError> {
        let rows: Vec<Vec<u8>> = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.trim()
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(0),
                        '1' => Ok(1),
                        _ => Err(MatrixError::Validation(format!("bad character {c:?}"))),
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        ZeroOneMatrix::from_rows(&rows)
    }

    pub fn render(&self) -> String {
        (0..self.rows)
            .map(|i| {
                self.row_slice(i)
                    .iter()
                    .map(|&e| if e == 1 { '1' } else { '0' })
                    .collect::<String>()
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Parameters and class structure of a symmetric divisible design.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignMeta {
    pub v: usize,
    pub k: usize,
    pub lambda1: usize,
    pub lambda2: usize,
    pub m: usize,
    pub n: usize,
    /// class index of every point (rows of the incidence matrix)
    pub point_classes: Vec<usize>,
    /// class index of every block (columns)
    pub block_classes: Vec<usize>,
}

impl DesignMeta {
    pub fn contiguous(v: usize, k: usize, l1: usize, l2: usize, m: usize, n: usize) -> Self {
        DesignMeta {
            v,
            k,
            lambda1: l1,
            lambda2: l2,
            m,
            n,
            point_classes: (0..v).map(|x| x / n).collect(),
            block_classes: (0..v).map(|x| x / n).collect(),
        }
    }

    /// Checks that `inc` is a symmetric divisible design with these
    /// parameters: point pairs meet in lambda1/lambda2 blocks according to
    /// the point classes, and dually for blocks.
    pub fn validate(&self, inc: &ZeroOneMatrix) -> Result<(), MatrixError> {
        if inc.rows() != self.v || inc.cols() != self.v || self.m * self.n != self.v {
            return Err(MatrixError::Validation("design dimensions mismatch".into()));
        }
        let sides = [
            (inc.clone(), &self.point_classes),
            (inc.transpose(), &self.block_classes),
        ];
        for (mat, classes) in &sides {
            for i in 0..self.v {
                let size: usize = mat.row_slice(i).iter().map(|&e| e as usize).sum();
                if size != self.k {
                    return Err(MatrixError::Validation(format!(
                        "replication/block size {size} differs from k={}",
                        self.k
                    )));
                }
                for j in 0..i {
                    let want = if classes[i] == classes[j] { self.lambda1 } else { self.lambda2 };
                    if mat.row_dot(i, j) != want {
                        return Err(MatrixError::Validation(format!(
                            "pair ({j},{i}) meets in {} blocks, expected {want}",
                            mat.row_dot(i, j)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Number of points of each point class in every block; `Some(q)` when
    /// that count is the same `q` everywhere (the C18/C19 precondition).
    pub fn uniform_block_spread(&self, inc: &ZeroOneMatrix) -> Option<usize> {
        let q = self.k / self.m;
        if q * self.m != self.k {
            return None;
        }
        for b in 0..self.v {
            let mut per_class = vec![0usize; self.m];
            for p in 0..self.v {
                if inc.get(p, b) == 1 {
                    per_class[self.point_classes[p]] += 1;
                }
            }
            if per_class.iter().any(|&c| c != q) {
                return None;
            }
        }
        // dually: every point lies in q blocks of each block class
        for p in 0..self.v {
            let mut per_class = vec![0usize; self.m];
            for b in 0..self.v {
                if inc.get(p, b) == 1 {
                    per_class[self.block_classes[b]] += 1;
                }
            }
            if per_class.iter().any(|&c| c != q) {
                return None;
            }
        }
        Some(q)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignKind {
    Hadamard,
    Weighing,
}

/// Square matrix over {-1, 0, +1}.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SignMatrix {
    order: usize,
    a: Vec<i8>,
    pub kind: SignKind,
}

impl SignMatrix {
    pub fn from_rows(rows: &[Vec<i8>], kind: SignKind) -> Result<Self, MatrixError> {
        let n = rows.len();
        if n == 0 {
            return Err(MatrixError::Shape);
        }
        let mut a = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(MatrixError::Shape);
            }
            for (j, &e) in row.iter().enumerate() {
                if !(-1..=1).contains(&e) {
                    return Err(MatrixError::Entry(i, j));
                }
                if kind == SignKind::Hadamard && e == 0 {
                    return Err(MatrixError::Entry(i, j));
                }
                a.push(e);
            }
        }
        let m = SignMatrix { order: n, a, kind };
        m.check_orthogonality()?;
        Ok(m)
    }

    fn check_orthogonality(&self) -> Result<(), MatrixError> {
        let w = self.weight();
        for i in 0..self.order {
            for j in 0..self.order {
                let dot: i64 = (0..self.order)
                    .map(|t| self.get(i, t) as i64 * self.get(j, t) as i64)
                    .sum();
                let want = if i == j { w as i64 } else { 0 };
                if dot != want {
                    return Err(MatrixError::Validation(format!(
                        "rows {i},{j} have inner product {dot}, expected {want}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Row weight: the common number of nonzero entries per row.
    pub fn weight(&self) -> usize {
        self.a[..self.order].iter().filter(|&&e| e != 0).count()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.a[i * self.order + j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Constant diagonal value, if there is one.
    pub fn constant_diagonal(&self) -> Option<i8> {
        let d = self.get(0, 0);
        (1..self.order).all(|i| self.get(i, i) == d).then_some(d)
    }

    /// Constant row and column sum, if there is one.
    pub fn regular_row_sum(&self) -> Option<i64> {
        let sum = |i: usize| -> i64 { (0..self.order).map(|j| self.get(i, j) as i64).sum() };
        let col = |j: usize| -> i64 { (0..self.order).map(|i| self.get(i, j) as i64).sum() };
        let s = sum(0);
        ((0..self.order).all(|i| sum(i) == s) && (0..self.order).all(|j| col(j) == s))
            .then_some(s)
    }

    /// True when the t diagonal 4x4 blocks are all zero (the shape
    /// Construction 20 requires of its weighing matrix).
    pub fn has_zero_diagonal_blocks(&self, block: usize) -> bool {
        if self.order % block != 0 {
            return false;
        }
        (0..self.order / block).all(|b| {
            (0..block).all(|i| {
                (0..block).all(|j| self.get(b * block + i, b * block + j) == 0)
            })
        })
    }

    pub fn kronecker(&self, other: &SignMatrix, kind: SignKind) -> SignMatrix {
        let n = self.order * other.order;
        let mut a = vec![0i8; n * n];
        for i1 in 0..self.order {
            for j1 in 0..self.order {
                for i2 in 0..other.order {
                    for j2 in 0..other.order {
                        let i = i1 * other.order + i2;
                        let j = j1 * other.order + j2;
                        a[i * n + j] = self.get(i1, j1) * other.get(i2, j2);
                    }
                }
            }
        }
        SignMatrix { order: n, a, kind }
    }

    /// Parses lines of '+', '-', '0' characters.
    pub fn parse(text: &str, kind: SignKind) -> Result<Self, MatrixError> {
        let rows: Vec<Vec<i8>> = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.trim()
                    .chars()
                    .map(|c| match c {
                        '+' => Ok(1),
                        '-' => Ok(-1),
                        '0' => Ok(0),
                        _ => Err(MatrixError::Validation(format!("bad character {c:?}"))),
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        SignMatrix::from_rows(&rows, kind)
    }

    pub fn render(&self) -> String {
        (0..self.order)
            .map(|i| {
                (0..self.order)
                    .map(|j| match self.get(i, j) {
                        1 => '+',
                        -1 => '-',
                        _ => '0',
                    })
                    .collect::<String>()
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hadamard_validation() {
        let h2 = SignMatrix::from_rows(&[vec![1, 1], vec![1, -1]], SignKind::Hadamard).unwrap();
        assert_eq!(h2.weight(), 2);
        assert!(h2.is_symmetric());
        let bad = SignMatrix::from_rows(&[vec![1, 1], vec![1, 1]], SignKind::Hadamard);
        assert!(bad.is_err());
    }

    #[test]
    fn sign_parse_roundtrip() {
        let text = "+-\n-+";
        let w = SignMatrix::parse(text, SignKind::Hadamard);
        // rows (+,-) and (-,+) are parallel, not orthogonal
        assert!(w.is_err());
        let ok = SignMatrix::parse("++\n+-", SignKind::Hadamard).unwrap();
        assert_eq!(ok.render(), "++\n+-");
    }

    #[test]
    fn design_validation_rejects_wrong_lambda() {
        // AG(2,3) minus a parallel class: the (9,3,0,1) divisible design
        let mut rows = vec![vec![0u8; 9]; 9];
        for r in 0..3 {
            for t in 0..3 {
                // block (r,t): points (j, r*j + t) in Z3 x Z3
                for j in 0..3 {
                    let point = j * 3 + (r * j + t) % 3;
                    rows[point][r * 3 + t] = 1;
                }
            }
        }
        let inc = ZeroOneMatrix::from_rows(&rows).unwrap();
        let meta = DesignMeta::contiguous(9, 3, 0, 1, 3, 3);
        assert_eq!(meta.validate(&inc), Ok(()));
        assert_eq!(meta.uniform_block_spread(&inc), Some(1));
        let wrong = DesignMeta::contiguous(9, 3, 1, 0, 3, 3);
        assert!(wrong.validate(&inc).is_err());
    }
}
