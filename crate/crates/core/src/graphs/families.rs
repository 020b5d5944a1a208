//! Generators for the graph families used throughout the toolkit.

use std::collections::HashMap;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{bits, SideInfoGraph};
use crate::error::{Error, Result};
use crate::limits;

fn invalid(msg: String) -> Error {
    Error::InvalidParameter(msg)
}

pub fn edgeless(n: usize) -> Result<SideInfoGraph> {
    SideInfoGraph::empty(n)
}

pub fn complete(n: usize) -> Result<SideInfoGraph> {
    Ok(edgeless(n)?.complement())
}

pub fn cycle(n: usize) -> Result<SideInfoGraph> {
    if n < 3 {
        return Err(invalid(format!("cycle needs at least 3 vertices, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    SideInfoGraph::from_edges(n, &edges)
}

/// Circular clique `K_{k/d}`: vertices `0..k`, `u ~ v` iff `d <= |u - v| <= k - d`.
///
/// Non-reduced pairs are accepted: `circular_clique(9, 3)` has nine vertices
/// and is a different graph from `circular_clique(3, 1)`.
pub fn circular_clique(k: usize, d: usize) -> Result<SideInfoGraph> {
    if d == 0 || k < 2 * d {
        return Err(invalid(format!("circular clique needs k >= 2d >= 2, got k={k} d={d}")));
    }
    let mut g = edgeless(k)?;
    for u in 0..k {
        for v in u + 1..k {
            let diff = v - u;
            if d <= diff && diff <= k - d {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// Web: the complement of the circular clique `K_{p/q}`.
pub fn web(p: usize, q: usize) -> Result<SideInfoGraph> {
    Ok(circular_clique(p, q)?.complement())
}

/// Joins `a` and `b` at one vertex: the last vertex of `a` is identified with
/// the first vertex of `b`, and the remaining vertices of `b` follow.
pub fn join_at_vertex(a: &SideInfoGraph, b: &SideInfoGraph) -> Result<SideInfoGraph> {
    let n = a.n() + b.n() - 1;
    let mut g = edgeless(n)?;
    for i in 0..a.n() {
        for j in bits(a.side_info(i)) {
            g.add_side_info(i, j)?;
        }
    }
    let shift = a.n() - 1;
    for i in 0..b.n() {
        for j in bits(b.side_info(i)) {
            g.add_side_info(i + shift, j + shift)?;
        }
    }
    Ok(g)
}

/// Symmetric neighbouring side information: receiver `i` knows the `d - 1`
/// messages on each side of it, cyclically.
pub fn symmetric_neighbouring_side_info(n: usize, d: usize) -> Result<SideInfoGraph> {
    if d == 0 || n < 2 * d {
        return Err(invalid(format!(
            "neighbouring side information needs n >= 2d >= 2, got n={n} d={d}"
        )));
    }
    let mut g = edgeless(n)?;
    for i in 0..n {
        for s in 1..d {
            g.add_edge(i, (i + s) % n)?;
        }
    }
    Ok(g)
}

/// Symmetric neighbouring interference: receiver `i` knows everything except
/// the `big_d` messages on each side of it, cyclically.
pub fn symmetric_neighbouring_interference(n: usize, big_d: usize) -> Result<SideInfoGraph> {
    if n < 2 * (big_d + 1) {
        return Err(invalid(format!(
            "neighbouring interference needs n >= 2(D+1), got n={n} D={big_d}"
        )));
    }
    let mut g = complete(n)?;
    for i in 0..n {
        for s in 1..=big_d {
            let j = (i + s) % n;
            g.side_info[i] &= !(1 << j);
            g.side_info[j] &= !(1 << i);
        }
    }
    Ok(g)
}

/// Vertices of the interlacing graph: `k`-subsets of `0..n` (points on a
/// circle) whose points are pairwise at cyclic distance at least `r`, in
/// lexicographic order, as bitmasks.
pub fn interlacing_vertices(n: usize, k: usize, r: usize) -> Result<Vec<u64>> {
    if k == 0 || r == 0 || n < k * r || n > 64 {
        return Err(invalid(format!(
            "interlacing graph needs k, r >= 1 and k*r <= n <= 64, got n={n} k={k} r={r}"
        )));
    }
    let cyclic = |a: usize, b: usize| {
        let d = a.abs_diff(b);
        d.min(n - d)
    };
    Ok((0..n)
        .combinations(k)
        .filter(|c| c.iter().tuple_combinations().all(|(&a, &b)| cyclic(a, b) >= r))
        .map(|c| c.iter().fold(0u64, |m, &p| m | 1 << p))
        .collect())
}

/// Whether `v` and `other` interlace: they are disjoint and, once the points
/// of `v` are deleted from the circle, no arc holds two points of `other`.
/// For equal-size sets this is alternation around the circle, so the
/// relation is symmetric.
pub fn interlaces(n: usize, v: u64, other: u64) -> bool {
    if v == 0 || other == 0 || v & other != 0 {
        return false;
    }
    // arc label of point p = nearest point of v strictly before p, cyclically
    let arc = |p: usize| {
        (1..=n)
            .map(|s| (p + n - s) % n)
            .find(|&x| v >> x & 1 == 1)
            .expect("v is nonempty")
    };
    let mut seen = 0u64;
    for p in bits(other) {
        let label = arc(p);
        if seen >> label & 1 == 1 {
            return false;
        }
        seen |= 1 << label;
    }
    true
}

pub fn interlacing_graph(n: usize, k: usize, r: usize) -> Result<SideInfoGraph> {
    let vertices = interlacing_vertices(n, k, r)?;
    let mut g = edgeless(vertices.len())?;
    for (a, &va) in vertices.iter().enumerate() {
        for (b, &vb) in vertices.iter().enumerate().skip(a + 1) {
            if interlaces(n, va, vb) {
                g.add_edge(a, b)?;
            }
        }
    }
    Ok(g)
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("edge probability {p} outside [0, 1]")));
    }
    Ok(())
}

/// Undirected `G(n, p)`; pairs are visited in lexicographic order with a
/// ChaCha8 stream seeded by `seed`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<SideInfoGraph> {
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = edgeless(n)?;
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// Directed variant: each ordered pair `(i, j)` puts `j` in `S_i` independently.
pub fn random_digraph(n: usize, p: f64, seed: u64) -> Result<SideInfoGraph> {
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = edgeless(n)?;
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen_bool(p) {
                g.add_side_info(i, j)?;
            }
        }
    }
    Ok(g)
}

/// One representative of every isomorphism class of undirected graphs on
/// `n` vertices (`n <= 6`), ordered by the edge bitmask of the first labelled
/// graph found in each class.
pub fn nonisomorphic_graphs(n: usize) -> Result<Vec<SideInfoGraph>> {
    limits::check("vertices", n, limits::ENUMERATION_MAX_N)?;
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let mut reps: Vec<SideInfoGraph> = Vec::new();
    let mut buckets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<_> = bits(mask).map(|b| pairs[b]).collect();
        let g = SideInfoGraph::from_edges(n, &edges)?;
        let bucket = buckets.entry(g.sorted_degrees()).or_default();
        if bucket.iter().all(|&r| !reps[r].isomorphic_unchecked(&g)) {
            bucket.push(reps.len());
            reps.push(g);
        }
    }
    Ok(reps)
}
