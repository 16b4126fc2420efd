//! Offline searches for the data-backed ingredients: the Klein graph, the
//! weighing matrices behind constructions 20/21, the transversal-type
//! divisible design behind constructions 18/19, and the aligned cross blocks
//! of the Remark-1 assembly. Results are written under `data/` and committed;
//! the loaders re-validate everything against the declared structure.

use anyhow::{bail, Context, Result};
use ddg_core::canon::canonical_graph;
use ddg_core::constructions::named;
use ddg_core::enumerate::{enumerate_tuple, SearchConfig};
use ddg_core::graph::{BitIter, Graph};
use ddg_core::params::feasible_parameters;
use std::path::PathBuf;

fn main() -> Result<()> {
    let out: PathBuf = std::env::args().nth(1).unwrap_or_else(|| "data".into()).into();
    std::fs::create_dir_all(&out)?;

    let klein = find_klein()?;
    std::fs::write(out.join("klein.g6"), ddg_core::graph6::encode_file(&[klein]))?;
    println!("klein.g6 written");

    for (t, file) in [(3usize, "w12.wm"), (4, "w16.wm")] {
        let w = find_weighing(t).with_context(|| format!("W({}, {})", 4 * t, 4 * t - 4))?;
        std::fs::write(out.join(file), w + "\n")?;
        println!("{file} written");
    }

    let sdd = find_sdd_18()?;
    std::fs::write(out.join("sdd-18-6-0-2.design"), sdd + "\n")?;
    println!("sdd-18-6-0-2.design written");

    let blocks = find_r1_cross_blocks()?;
    std::fs::write(out.join("r1-cross.txt"), blocks)?;
    println!("r1-cross.txt written");

    Ok(())
}

/// The unique proper connected DDG with parameters (24,7,0,2,8,3) is the
/// Klein graph; the enumerator digs it up in under a second.
fn find_klein() -> Result<Graph> {
    let tuple = feasible_parameters(24)
        .into_iter()
        .find(|t| t.params == ddg_core::params::ParamSet::new(24, 7, 0, 2, 8, 3))
        .context("tuple (24,7,0,2,8,3) not feasible?")?;
    let outcome = enumerate_tuple(&tuple, &SearchConfig::default());
    if outcome.graphs.len() != 1 {
        bail!("expected exactly one graph, found {}", outcome.graphs.len());
    }
    Ok(outcome.graphs[0].found.graph.clone())
}

/// Symmetric weighing matrix W(4t, 4(t-1)) whose diagonal 4x4 blocks are
/// zero; rows filled by backtracking with running inner products.
fn find_weighing(t: usize) -> Result<String> {
    let order = 4 * t;
    let weight = (order - 4) as i64;
    let mut m = vec![vec![0i8; order]; order];
    if fill_row(&mut m, 0, 4, order, weight) {
        let rows: Vec<Vec<i8>> = m;
        let text = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&e| match e {
                        1 => '+',
                        -1 => '-',
                        _ => '0',
                    })
                    .collect::<String>()
            })
            .collect::<Vec<_>>()
            .join("\n");
        Ok(text)
    } else {
        bail!("no such weighing matrix found")
    }
}

fn fill_row(m: &mut Vec<Vec<i8>>, i: usize, block: usize, order: usize, weight: i64) -> bool {
    if i == order {
        return true;
    }
    // free positions: outside the diagonal block, to the right of i
    let blk = i / block;
    let free: Vec<usize> =
        (i + 1..order).filter(|&j| j / block != blk).collect();
    fill_entries(m, i, &free, 0, order, weight)
}

fn fill_entries(
    m: &mut Vec<Vec<i8>>,
    i: usize,
    free: &[usize],
    idx: usize,
    order: usize,
    weight: i64,
) -> bool {
    if idx == free.len() {
        // validate inner products of row i against all earlier rows
        for p in 0..i {
            let dot: i64 = (0..order).map(|j| m[i][j] as i64 * m[p][j] as i64).sum();
            if dot != 0 {
                return false;
            }
        }
        let w: i64 = (0..order).map(|j| (m[i][j] as i64).pow(2)).sum();
        if w != weight {
            return false;
        }
        return fill_row(m, i + 1, 4, order, weight);
    }
    let j = free[idx];
    for val in [1i8, -1] {
        m[i][j] = val;
        m[j][i] = val;
        // partial pruning: rows p < i are complete, so the dot with row i is
        // monotone in the filled prefix only through position j
        let mut ok = true;
        for p in 0..i {
            let mut dot = 0i64;
            let mut remaining = 0i64;
            for jj in 0..order {
                let a = m[i][jj] as i64;
                if jj <= j || jj <= i {
                    dot += a * m[p][jj] as i64;
                } else if m[p][jj] != 0 {
                    remaining += 1;
                }
            }
            if dot.abs() > remaining {
                ok = false;
                break;
            }
        }
        if ok && fill_entries(m, i, free, idx + 1, order, weight) {
            return true;
        }
    }
    m[i][j] = 0;
    m[j][i] = 0;
    false
}

/// The (18,6,0,2,6,3) symmetric divisible design: a 6x6 array of 3x3
/// permutation blocks, first row and column normalized to the identity.
fn find_sdd_18() -> Result<String> {
    // the six permutations of 0,1,2
    let perms: [[usize; 3]; 6] =
        [[0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1], [2, 1, 0], [1, 0, 2]];
    let mut grid = [[usize::MAX; 6]; 6];
    for x in 0..6 {
        grid[0][x] = 0;
        grid[x][0] = 0;
    }
    fn ok_rows(grid: &[[usize; 6]; 6], perms: &[[usize; 3]; 6], upto_row: usize) -> bool {
        // point condition: rows r < r' (complete): sum_j P_rj P_r'j^T = 2J
        for r2 in 0..=upto_row {
            for r1 in 0..r2 {
                let mut counts = [[0usize; 3]; 3];
                for j in 0..6 {
                    let (a, b) = (perms[grid[r1][j]], perms[grid[r2][j]]);
                    // (P_a P_b^T)[x][y] = 1 iff a[x] == b[y]... columns of P:
                    // P[x][c] = 1 iff c == perm[x]
                    for x in 0..3 {
                        for y in 0..3 {
                            if a[x] == b[y] {
                                counts[x][y] += 1;
                            }
                        }
                    }
                }
                if counts.iter().any(|row| row.iter().any(|&c| c != 2)) {
                    return false;
                }
            }
        }
        true
    }
    fn ok_cols(grid: &[[usize; 6]; 6], perms: &[[usize; 3]; 6]) -> bool {
        for c2 in 0..6 {
            for c1 in 0..c2 {
                let mut counts = [[0usize; 3]; 3];
                for i in 0..6 {
                    let (a, b) = (perms[grid[i][c1]], perms[grid[i][c2]]);
                    // (P_a^T P_b)[x][y] = 1 iff a maps some z to x and b maps z to y
                    for z in 0..3 {
                        counts[a[z]][b[z]] += 1;
                    }
                }
                if counts.iter().any(|row| row.iter().any(|&c| c != 2)) {
                    return false;
                }
            }
        }
        true
    }
    fn rec(grid: &mut [[usize; 6]; 6], perms: &[[usize; 3]; 6], cell: usize) -> bool {
        if cell == 25 {
            return ok_cols(grid, perms);
        }
        let (r, c) = (1 + cell / 5, 1 + cell % 5);
        for p in 0..6 {
            grid[r][c] = p;
            let row_complete = c == 5;
            let check = !row_complete || ok_rows(grid, perms, r);
            if check && rec(grid, perms, cell + 1) {
                return true;
            }
        }
        grid[r][c] = usize::MAX;
        false
    }
    if !rec(&mut grid, &perms, 0) {
        bail!("no permutation-block (18,6,0,2,6,3) design found");
    }
    // expand to the 18x18 incidence matrix
    let mut inc = vec![vec![0u8; 18]; 18];
    for br in 0..6 {
        for bc in 0..6 {
            let p = perms[grid[br][bc]];
            for x in 0..3 {
                inc[br * 3 + x][bc * 3 + p[x]] = 1;
            }
        }
    }
    Ok(inc
        .iter()
        .map(|r| r.iter().map(|&e| if e == 1 { '1' } else { '0' }).collect::<String>())
        .collect::<Vec<_>>()
        .join("\n"))
}

/// Aligned cross blocks for the Remark-1 assembly: split each enumerated
/// (32,10,2,3,8,4) DDG into two Shrikhande halves relabeled onto the builtin
/// generator, and print the cross incidence matrices.
fn find_r1_cross_blocks() -> Result<String> {
    let tuple = feasible_parameters(32)
        .into_iter()
        .find(|t| t.params == ddg_core::params::ParamSet::new(32, 10, 2, 3, 8, 4))
        .context("tuple (32,10,2,3,8,4) not feasible?")?;
    let outcome = enumerate_tuple(&tuple, &SearchConfig::default());
    if outcome.graphs.len() != 2 {
        bail!("expected two graphs, found {}", outcome.graphs.len());
    }
    let shrikhande = named::shrikhande();
    let (sh_canon, sh_perm) = canonical_graph(&shrikhande);
    let mut blocks = Vec::new();
    for g in &outcome.graphs {
        let graph = &g.found.graph;
        let part = &g.found.part;
        let mut found = None;
        // choose 4 of the 8 classes for the first half
        'splits: for pick in 0u32..1 << 8 {
            if pick.count_ones() != 4 || pick & 1 == 0 {
                continue;
            }
            let half_a: Vec<usize> = (0..8)
                .filter(|&c| pick >> c & 1 == 1)
                .flat_map(|c| BitIter(part.class_mask(c)).collect::<Vec<_>>())
                .collect();
            let half_b: Vec<usize> = (0..32).filter(|x| !half_a.contains(x)).collect();
            let induced = |verts: &[usize]| -> Graph {
                let mut h = Graph::empty(16);
                for (i, &x) in verts.iter().enumerate() {
                    for (j, &y) in verts.iter().enumerate() {
                        if j < i && graph.has_edge(x, y) {
                            h.add_edge(i, j);
                        }
                    }
                }
                h
            };
            let ga = induced(&half_a);
            let gb = induced(&half_b);
            let (ca, pa) = canonical_graph(&ga);
            let (cb, pb) = canonical_graph(&gb);
            if ca != sh_canon || cb != sh_canon {
                continue 'splits;
            }
            // map a builtin-shrikhande vertex s to the graph vertex playing
            // its role in each half
            let mut inv_sh = vec![0usize; 16];
            for (x, &p) in sh_perm.iter().enumerate() {
                inv_sh[p] = x;
            }
            let to_graph = |verts: &[usize], perm: &[usize]| -> Vec<usize> {
                // perm: induced index -> canonical position; shrikhande
                // vertex s sits at canonical position sh_perm[s]
                let mut by_pos = vec![0usize; 16];
                for (i, &p) in perm.iter().enumerate() {
                    by_pos[p] = verts[i];
                }
                (0..16).map(|s| by_pos[sh_perm[s]]).collect()
            };
            let map_a = to_graph(&half_a, &pa);
            let map_b = to_graph(&half_b, &pb);
            let mut cross = vec![vec![0u8; 16]; 16];
            for s in 0..16 {
                for t in 0..16 {
                    if graph.has_edge(map_a[s], map_b[t]) {
                        cross[s][t] = 1;
                    }
                }
            }
            found = Some(cross);
            break 'splits;
        }
        let cross = found.context("no Shrikhande split found")?;
        blocks.push(
            cross
                .iter()
                .map(|r| r.iter().map(|&e| if e == 1 { '1' } else { '0' }).collect::<String>())
                .collect::<Vec<_>>()
                .join("\n"),
        );
    }
    Ok(format!("{}\n\n{}\n", blocks[0], blocks[1]))
}
