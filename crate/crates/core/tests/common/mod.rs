//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's algorithms; graphs and codes are read through their
//! plain accessors only.

#![allow(dead_code)]

use circix::{LinearIndexCode, SideInfoGraph};

/// `knows[i][j]`: receiver `i` has message `j`.
pub fn knows(g: &SideInfoGraph) -> Vec<Vec<bool>> {
    (0..g.n())
        .map(|i| (0..g.n()).map(|j| g.knows(i, j)).collect())
        .collect()
}

/// Reduced fraction as `(num, den)`.
pub fn reduce(k: u64, d: u64) -> (u64, u64) {
    let (mut a, mut b) = (k, d);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    (k / a, d / a)
}

pub fn less(a: (u64, u64), b: (u64, u64)) -> bool {
    a.0 * b.1 < b.0 * a.1
}

pub fn clique_number(adj: &[Vec<bool>]) -> usize {
    let n = adj.len();
    (0u32..1 << n)
        .filter(|&s| (0..n).all(|u| (u + 1..n).all(|v| s >> u & 1 == 0 || s >> v & 1 == 0 || adj[u][v])))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn color_rec(adj: &[Vec<bool>], k: usize, d: usize, colors: &mut Vec<usize>) -> bool {
    let v = colors.len();
    if v == adj.len() {
        return true;
    }
    let max = if v == 0 { 1 } else { k };
    for c in 0..max {
        let ok = (0..v).all(|u| {
            let diff = c.abs_diff(colors[u]);
            !adj[u][v] || (diff >= d && diff + d <= k)
        });
        if ok {
            colors.push(c);
            if color_rec(adj, k, d, colors) {
                return true;
            }
            colors.pop();
        }
    }
    false
}

/// A `(k, d)` circular coloring, if one exists.
pub fn circular_coloring(adj: &[Vec<bool>], k: usize, d: usize) -> Option<Vec<usize>> {
    let mut colors = Vec::new();
    color_rec(adj, k, d, &mut colors).then_some(colors)
}

pub fn chromatic_number(adj: &[Vec<bool>]) -> usize {
    (1..=adj.len())
        .find(|&k| circular_coloring(adj, k, 1).is_some())
        .unwrap_or(0)
}

/// Smallest `k/d` with `k <= n` admitting a circular coloring.
pub fn circular_chromatic_number(adj: &[Vec<bool>]) -> (u64, u64) {
    let n = adj.len();
    let mut best = (n as u64, 1);
    for k in 1..=n {
        for d in 1..=k {
            let r = reduce(k as u64, d as u64);
            if r != (k as u64, d as u64) || !less(r, best) {
                continue;
            }
            if circular_coloring(adj, k, d).is_some() {
                best = r;
            }
        }
    }
    best
}

fn circular_clique_adj(k: usize, d: usize, i: usize, j: usize) -> bool {
    let diff = i.abs_diff(j);
    diff >= d && diff + d <= k
}

fn embed_rec(adj: &[Vec<bool>], k: usize, d: usize, map: &mut Vec<usize>) -> bool {
    let i = map.len();
    if i == k {
        return true;
    }
    for v in 0..adj.len() {
        if map.contains(&v) {
            continue;
        }
        if (0..i).all(|h| adj[map[h]][v] == circular_clique_adj(k, d, h, i)) {
            map.push(v);
            if embed_rec(adj, k, d, map) {
                return true;
            }
            map.pop();
        }
    }
    false
}

/// Largest `k/d` such that `K_{k/d}` is an induced subgraph.
pub fn circular_clique_number(adj: &[Vec<bool>]) -> (u64, u64) {
    let n = adj.len();
    let mut best = (1, 1);
    for k in 2..=n {
        for d in 1..=k / 2 {
            let r = reduce(k as u64, d as u64);
            if r != (k as u64, d as u64) || !less(best, r) {
                continue;
            }
            if embed_rec(adj, k, d, &mut Vec::new()) {
                best = r;
            }
        }
    }
    best
}

pub fn induced(adj: &[Vec<bool>], verts: &[usize]) -> Vec<Vec<bool>> {
    verts
        .iter()
        .map(|&u| verts.iter().map(|&v| adj[u][v]).collect())
        .collect()
}

/// Every induced subgraph has equal circular clique and chromatic numbers.
pub fn is_circular_perfect(adj: &[Vec<bool>]) -> bool {
    let n = adj.len();
    (1u32..1 << n).all(|s| {
        let verts: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
        let h = induced(adj, &verts);
        circular_clique_number(&h) == circular_chromatic_number(&h)
    })
}

pub fn is_perfect(adj: &[Vec<bool>]) -> bool {
    let n = adj.len();
    (1u32..1 << n).all(|s| {
        let verts: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
        let h = induced(adj, &verts);
        clique_number(&h) == chromatic_number(&h)
    })
}

/// Rank over `F_q` by plain Gaussian elimination on row vectors.
pub fn rank(rows: &[Vec<u32>], q: u32) -> usize {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| (x % q) as u64).collect())
        .collect();
    let q = q as u64;
    let cols = m.first().map_or(0, |r| r.len());
    let inv = |a: u64| (1..q).find(|&b| a * b % q == 1).expect("nonzero");
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let s = inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = *x * s % q;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                let pivot = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(pivot) {
                    *x = (*x + q * q - f * p) % q;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn kron(a: &[u32], b: &[u32], q: u32) -> Vec<u32> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| x * y % q)).collect()
}

/// Column `c` of the encoding matrix.
pub fn column(code: &LinearIndexCode, c: usize) -> Vec<u32> {
    let m = code.matrix();
    (0..m.rows()).map(|r| m.get(r, c)).collect()
}

/// Validity by definition: receiver `i` fails iff some difference `z` that
/// vanishes on `S_i` and not on message `i` has `B z = 0`.
pub fn valid(g: &SideInfoGraph, code: &LinearIndexCode) -> bool {
    (0..g.n()).all(|i| receiver_decodes(g, code, i))
}

pub fn receiver_decodes(g: &SideInfoGraph, code: &LinearIndexCode, i: usize) -> bool {
    let (n, t, q) = (g.n(), code.t(), code.field().q());
    let m = code.matrix();
    // free coordinates: everything outside S_i
    let free: Vec<usize> = (0..n)
        .filter(|&u| !g.knows(i, u))
        .flat_map(|u| (0..t).map(move |j| u * t + j))
        .collect();
    let total = (q as u64).pow(free.len() as u32);
    for code_no in 1..total {
        let mut z = vec![0u32; n * t];
        let mut rest = code_no;
        for &c in &free {
            z[c] = (rest % q as u64) as u32;
            rest /= q as u64;
        }
        if z[i * t..(i + 1) * t].iter().all(|&x| x == 0) {
            continue;
        }
        let kernel = (0..m.rows()).all(|r| (0..n * t).map(|c| m.get(r, c) * z[c]).sum::<u32>() % q == 0);
        if kernel {
            return false;
        }
    }
    true
}

/// Message digits of confusion vertex `x`, most significant first.
pub fn tuple(x: usize, nt: usize, q: u32) -> Vec<u32> {
    let mut out = vec![0; nt];
    let mut rest = x;
    for slot in out.iter_mut().rev() {
        *slot = (rest % q as usize) as u32;
        rest /= q as usize;
    }
    out
}

pub fn confusable(g: &SideInfoGraph, t: usize, a: &[u32], b: &[u32]) -> bool {
    let block = |x: &[u32], i: usize| x[i * t..(i + 1) * t].to_vec();
    (0..g.n()).any(|i| block(a, i) != block(b, i) && (0..g.n()).all(|j| !g.knows(i, j) || block(a, j) == block(b, j)))
}

/// Clique number of `Γ_t(G)` by plain branch and bound over all tuples.
pub fn confusion_clique_number(g: &SideInfoGraph, t: usize, q: u32) -> usize {
    let nt = g.n() * t;
    let size = (q as usize).pow(nt as u32);
    let tuples: Vec<Vec<u32>> = (0..size).map(|x| tuple(x, nt, q)).collect();
    let adj: Vec<Vec<bool>> = (0..size)
        .map(|x| {
            (0..size)
                .map(|y| x != y && confusable(g, t, &tuples[x], &tuples[y]))
                .collect()
        })
        .collect();
    // candidates in greedy color order; a vertex of color c can extend the
    // current clique by at most c + 1
    fn color_order(adj: &[Vec<bool>], cand: &[usize]) -> Vec<(usize, usize)> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &v in cand {
            match classes.iter_mut().find(|c| c.iter().all(|&u| !adj[u][v])) {
                Some(c) => c.push(v),
                None => classes.push(vec![v]),
            }
        }
        classes
            .iter()
            .enumerate()
            .flat_map(|(c, vs)| vs.iter().map(move |&v| (v, c + 1)))
            .collect()
    }
    fn grow(adj: &[Vec<bool>], size: usize, cand: Vec<usize>, best: &mut usize) {
        let mut order = color_order(adj, &cand);
        while let Some((v, bound)) = order.pop() {
            if size + bound <= *best {
                return;
            }
            let rest: Vec<usize> = order.iter().map(|&(u, _)| u).filter(|&u| adj[v][u]).collect();
            if rest.is_empty() {
                *best = (*best).max(size + 1);
            } else {
                grow(adj, size + 1, rest, best);
            }
        }
    }
    let mut best = 0;
    grow(&adj, 0, (0..size).collect(), &mut best);
    best
}

pub fn is_clique(g: &SideInfoGraph, t: usize, q: u32, vertices: &[usize]) -> bool {
    let nt = g.n() * t;
    vertices.iter().enumerate().all(|(a, &x)| {
        vertices[a + 1..]
            .iter()
            .all(|&y| confusable(g, t, &tuple(x, nt, q), &tuple(y, nt, q)))
    })
}
