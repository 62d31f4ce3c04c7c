//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use fracnet::graph::FractureGraph;
use rand::Rng;

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> FractureGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    FractureGraph::from_edges(n, edges)
}

pub fn adjacency(g: &FractureGraph) -> Vec<Vec<bool>> {
    let n = g.n_nodes();
    let mut a = vec![vec![false; n]; n];
    for (i, j) in g.edges() {
        a[i][j] = true;
        a[j][i] = true;
    }
    a
}

/// Hop distances, `None` when unreachable.
pub fn floyd_warshall(g: &FractureGraph) -> Vec<Vec<Option<u32>>> {
    let n = g.n_nodes();
    let a = adjacency(g);
    let mut d = vec![vec![None; n]; n];
    for i in 0..n {
        d[i][i] = Some(0);
        for j in 0..n {
            if a[i][j] {
                d[i][j] = Some(1);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(x), Some(y)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|cur| x + y < cur) {
                        d[i][j] = Some(x + y);
                    }
                }
            }
        }
    }
    d
}

/// Mean hop distance over reachable unordered pairs.
pub fn brute_mean_path(g: &FractureGraph) -> Option<f64> {
    let d = floyd_warshall(g);
    let (mut sum, mut cnt) = (0u64, 0u64);
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            if let Some(x) = d[i][j] {
                sum += x as u64;
                cnt += 1;
            }
        }
    }
    (cnt > 0).then(|| sum as f64 / cnt as f64)
}

pub fn brute_local_clustering(g: &FractureGraph) -> Vec<f64> {
    let a = adjacency(g);
    let n = a.len();
    (0..n)
        .map(|i| {
            let nb: Vec<usize> = (0..n).filter(|&j| a[i][j]).collect();
            let k = nb.len();
            if k < 2 {
                return 0.0;
            }
            let mut links = 0;
            for x in 0..k {
                for y in x + 1..k {
                    if a[nb[x]][nb[y]] {
                        links += 1;
                    }
                }
            }
            links as f64 / (k * (k - 1) / 2) as f64
        })
        .collect()
}

/// Connected induced 4-subgraphs by class, classes identified by sorted
/// degree sequence: path, star, paw, cycle, diamond, complete.
pub fn brute_census(g: &FractureGraph) -> [u64; 6] {
    const SEQS: [[u32; 4]; 6] = [
        [1, 1, 2, 2],
        [1, 1, 1, 3],
        [1, 2, 2, 3],
        [2, 2, 2, 2],
        [2, 2, 3, 3],
        [3, 3, 3, 3],
    ];
    let a = adjacency(g);
    let n = a.len();
    let mut out = [0u64; 6];
    for p in 0..n {
        for q in p + 1..n {
            for r in q + 1..n {
                for s in r + 1..n {
                    let v = [p, q, r, s];
                    let mut deg = [0u32; 4];
                    for x in 0..4 {
                        for y in 0..4 {
                            if x != y && a[v[x]][v[y]] {
                                deg[x] += 1;
                            }
                        }
                    }
                    // connectivity by repeated relaxation
                    let mut reach = [true, false, false, false];
                    for _ in 0..4 {
                        for x in 0..4 {
                            for y in 0..4 {
                                if reach[x] && a[v[x]][v[y]] {
                                    reach[y] = true;
                                }
                            }
                        }
                    }
                    if !reach.iter().all(|&b| b) {
                        continue;
                    }
                    deg.sort_unstable();
                    let class = SEQS.iter().position(|s| *s == deg).expect("connected class");
                    out[class] += 1;
                }
            }
        }
    }
    out
}

/// Steady clamped Laplacian system solved densely by Gaussian elimination.
/// Nodes in components without clamps get 0.
pub fn dense_steady(
    g: &FractureGraph,
    sources: &[usize],
    sinks: &[usize],
    u_src: f64,
    u_snk: f64,
) -> Vec<f64> {
    let n = g.n_nodes();
    let a = adjacency(g);
    let mut fixed: Vec<Option<f64>> = vec![None; n];
    for &s in sources {
        fixed[s] = Some(u_src);
    }
    for &s in sinks {
        fixed[s] = Some(u_snk);
    }
    // nodes reachable from a clamp
    let d = floyd_warshall(g);
    let anchored: Vec<bool> = (0..n)
        .map(|i| (0..n).any(|c| fixed[c].is_some() && d[i][c].is_some()))
        .collect();
    let free: Vec<usize> = (0..n).filter(|&i| fixed[i].is_none() && anchored[i]).collect();
    let pos: std::collections::HashMap<usize, usize> =
        free.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let m = free.len();
    let mut mat = vec![vec![0.0; m + 1]; m];
    for (row, &i) in free.iter().enumerate() {
        for j in 0..n {
            if !a[i][j] {
                continue;
            }
            mat[row][row] -= 1.0;
            match fixed[j] {
                Some(v) => mat[row][m] -= v,
                None => mat[row][pos[&j]] += 1.0,
            }
        }
    }
    for col in 0..m {
        let piv = (col..m)
            .max_by(|&x, &y| mat[x][col].abs().total_cmp(&mat[y][col].abs()))
            .unwrap();
        mat.swap(col, piv);
        for row in 0..m {
            if row != col {
                let f = mat[row][col] / mat[col][col];
                if f != 0.0 {
                    for k in col..=m {
                        mat[row][k] -= f * mat[col][k];
                    }
                }
            }
        }
    }
    let mut u = vec![0.0; n];
    for i in 0..n {
        if let Some(v) = fixed[i] {
            u[i] = v;
        }
    }
    for (row, &i) in free.iter().enumerate() {
        u[i] = mat[row][m] / mat[row][row];
    }
    u
}
