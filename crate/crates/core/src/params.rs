//! Exact graph parameters by exhaustive search: clique number, chromatic
//! number, circular colorings, the circular chromatic and circular clique
//! numbers, and (circular) perfectness.
//!
//! Everything here is exponential and guarded by the limits in
//! [`crate::limits`]. Fractions are compared exactly, never as floats.
//!
//! The circular chromatic number is searched over `k <= n` only. This is
//! complete: a graph on `n` vertices always attains its circular chromatic
//! number with some `(k, d)` coloring where `k <= n`.

use itertools::Itertools;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::clique::{self, BitGraph};
use crate::error::{Error, Result};
use crate::graphs::{bits, circular_clique, full_mask, SideInfoGraph};
use crate::limits;
use crate::rational::Rational;

/// A `(k, d)` circular coloring: colors in `0..k`, adjacent vertices `u, v`
/// satisfy `d <= |f(u) - f(v)| <= k - d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CircularColoring {
    pub k: usize,
    pub d: usize,
    pub assignment: Vec<usize>,
}

impl CircularColoring {
    pub fn ratio(&self) -> Result<Rational> {
        Rational::new(self.k as u64, self.d as u64)
    }

    /// Checks the coloring against the edges of `g`.
    pub fn verify(&self, g: &SideInfoGraph) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidColoring(msg));
        if self.k == 0 || self.d == 0 {
            return bad(format!("k and d must be positive, got ({}, {})", self.k, self.d));
        }
        if self.assignment.len() != g.n() {
            return bad(format!("{} colors for {} vertices", self.assignment.len(), g.n()));
        }
        if let Some(v) = self.assignment.iter().position(|&c| c >= self.k) {
            return bad(format!("vertex {v} has color {} >= k = {}", self.assignment[v], self.k));
        }
        for (u, v) in g.edges() {
            let diff = self.assignment[u].abs_diff(self.assignment[v]);
            if diff < self.d || diff + self.d > self.k {
                return bad(format!(
                    "edge ({u}, {v}) has colors {} and {}",
                    self.assignment[u], self.assignment[v]
                ));
            }
        }
        Ok(())
    }

    /// Vertices of each color class `0..k`.
    pub fn color_classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.k];
        for (v, &c) in self.assignment.iter().enumerate() {
            classes[c].push(v);
        }
        classes
    }
}

/// The parameters of one graph. `omega = floor(omega_c)` and `chi = ceil(chi_c)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamReport {
    pub omega: usize,
    pub chi: usize,
    pub omega_c: Rational,
    pub chi_c: Rational,
}

fn check_undirected(g: &SideInfoGraph, limit: usize) -> Result<()> {
    g.require_undirected()?;
    limits::check("vertices", g.n(), limit)
}

pub fn max_clique(g: &SideInfoGraph) -> Result<Vec<usize>> {
    check_undirected(g, limits::CLIQUE_MAX_N)?;
    Ok(clique::max_clique(&BitGraph::from_graph(g), None))
}

pub fn clique_number(g: &SideInfoGraph) -> Result<usize> {
    Ok(max_clique(g)?.len())
}

/// Lexicographically least proper coloring with the minimum number of colors.
pub fn optimal_coloring(g: &SideInfoGraph) -> Result<Vec<usize>> {
    check_undirected(g, limits::CHROMATIC_MAX_N)?;
    let omega = clique::max_clique(&BitGraph::from_graph(g), None).len();
    let mut colors = vec![0; g.n()];
    for k in omega.max(1).. {
        if color_with(g, k, 0, 0, &mut colors) {
            return Ok(colors);
        }
    }
    unreachable!("n colors always suffice")
}

pub fn chromatic_number(g: &SideInfoGraph) -> Result<usize> {
    Ok(optimal_coloring(g)?.into_iter().max().map_or(0, |c| c + 1))
}

// Colors vertices in index order; a new color may only be max-so-far + 1,
// which keeps the first solution found lexicographically least.
fn color_with(g: &SideInfoGraph, k: usize, v: usize, used: usize, colors: &mut [usize]) -> bool {
    if v == g.n() {
        return true;
    }
    for c in 0..k.min(used + 1) {
        if bits(g.neighbors(v) & full_mask(v)).all(|u| colors[u] != c) {
            colors[v] = c;
            if color_with(g, k, v + 1, used.max(c + 1), colors) {
                return true;
            }
        }
    }
    false
}

/// Finds a `(k, d)` circular coloring of `g`.
///
/// Vertices are colored by descending degree (ties by index). The first
/// vertex is pinned to color 0, since rotating every color by a constant
/// preserves validity. The result is the lexicographically least valid
/// assignment when read in that vertex order.
pub fn has_circular_coloring(g: &SideInfoGraph, k: usize, d: usize) -> Result<Option<CircularColoring>> {
    g.require_undirected()?;
    if k == 0 || d == 0 {
        return Err(Error::InvalidParameter(format!(
            "circular coloring needs k, d >= 1, got ({k}, {d})"
        )));
    }
    if k > 64 {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds 64 colors")));
    }
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut position = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        position[v] = p;
    }
    // compatible[c] = colors at circular distance >= d from c
    let compatible: Vec<u64> = (0..k)
        .map(|c| {
            (0..k)
                .filter(|&c2| {
                    let diff = c.abs_diff(c2);
                    diff >= d && diff + d <= k
                })
                .fold(0u64, |m, c2| m | 1 << c2)
        })
        .collect();
    let mut domains = vec![full_mask(k); n];
    if n > 0 {
        domains[order[0]] = 1;
    }
    let mut search = CircularSearch {
        g,
        order: &order,
        position: &position,
        compatible: &compatible,
        assignment: vec![0; n],
    };
    if search.extend(0, &mut domains) {
        Ok(Some(CircularColoring {
            k,
            d,
            assignment: search.assignment,
        }))
    } else {
        Ok(None)
    }
}

struct CircularSearch<'a> {
    g: &'a SideInfoGraph,
    order: &'a [usize],
    position: &'a [usize],
    compatible: &'a [u64],
    assignment: Vec<usize>,
}

impl CircularSearch<'_> {
    fn extend(&mut self, pos: usize, domains: &mut [u64]) -> bool {
        if pos == self.order.len() {
            return true;
        }
        let v = self.order[pos];
        let later: Vec<usize> = bits(self.g.neighbors(v)).filter(|&w| self.position[w] > pos).collect();
        for c in bits(domains[v]) {
            let saved: Vec<u64> = later.iter().map(|&w| domains[w]).collect();
            let mut wiped = false;
            for &w in &later {
                domains[w] &= self.compatible[c];
                wiped |= domains[w] == 0;
            }
            if !wiped {
                self.assignment[v] = c;
                if self.extend(pos + 1, domains) {
                    return true;
                }
            }
            for (&w, s) in later.iter().zip(saved) {
                domains[w] = s;
            }
        }
        false
    }
}

/// Reduced fractions `k/d` with `k <= max_k` and `lo <= k/d <= hi`, ascending.
fn reduced_fractions(max_k: usize, lo: Rational, hi: Rational) -> Vec<(usize, usize)> {
    let mut out: Vec<(Rational, usize, usize)> = (1..=max_k)
        .flat_map(|k| (1..=k).map(move |d| (k, d)))
        .filter(|&(k, d)| k.gcd(&d) == 1)
        .filter_map(|(k, d)| {
            let r = Rational::new(k as u64, d as u64).ok()?;
            (lo <= r && r <= hi).then_some((r, k, d))
        })
        .collect();
    out.sort();
    out.into_iter().map(|(_, k, d)| (k, d)).collect()
}

fn edgeless_coloring(n: usize) -> CircularColoring {
    CircularColoring {
        k: 1,
        d: 1,
        assignment: vec![0; n],
    }
}

/// Circular chromatic number with a witnessing coloring. Edgeless graphs
/// get `1/1` with the all-zero `(1, 1)` coloring.
pub fn circular_chromatic_number(g: &SideInfoGraph) -> Result<(Rational, CircularColoring)> {
    check_undirected(g, limits::CIRCULAR_MAX_N)?;
    if !g.has_edges() {
        return Ok((Rational::integer(1)?, edgeless_coloring(g.n())));
    }
    let omega = clique_number(g)?;
    let chi = chromatic_number(g)?;
    let lo = Rational::integer(omega as u64)?;
    let hi = Rational::integer(chi as u64)?;
    for (k, d) in reduced_fractions(g.n(), lo, hi) {
        if let Some(coloring) = has_circular_coloring(g, k, d)? {
            return Ok((coloring.ratio()?, coloring));
        }
    }
    unreachable!("a (chi, 1) coloring always exists")
}

/// Lexicographically least vertex subset inducing a copy of `pattern`.
pub fn find_induced_copy(g: &SideInfoGraph, pattern: &SideInfoGraph) -> Result<Option<Vec<usize>>> {
    check_undirected(g, limits::ISOMORPHISM_MAX_N)?;
    pattern.require_undirected()?;
    Ok(find_induced_unchecked(g, pattern))
}

fn find_induced_unchecked(g: &SideInfoGraph, pattern: &SideInfoGraph) -> Option<Vec<usize>> {
    let k = pattern.n();
    if k > g.n() {
        return None;
    }
    let edges = pattern.edge_count();
    (0..g.n()).combinations(k).find(|subset| {
        let mask = subset.iter().fold(0u64, |m, &v| m | 1 << v);
        let induced_edges: u32 = subset.iter().map(|&v| (g.neighbors(v) & mask).count_ones()).sum();
        induced_edges as usize == 2 * edges && g.induced_unchecked(subset).isomorphic_unchecked(pattern)
    })
}

/// Circular clique number with the vertex set of a witnessing `K_{k/d}`.
///
/// Tries reduced `k/d >= 2` with `k <= n` in descending order. Edgeless
/// graphs get `1/1` witnessed by vertex 0.
pub fn circular_clique_witness(g: &SideInfoGraph) -> Result<(Rational, Vec<usize>)> {
    check_undirected(g, limits::CIRCULAR_MAX_N)?;
    if !g.has_edges() {
        return Ok((Rational::integer(1)?, vec![0]));
    }
    let two = Rational::integer(2)?;
    let top = Rational::integer(g.n() as u64)?;
    for (k, d) in reduced_fractions(g.n(), two, top).into_iter().rev() {
        let pattern = circular_clique(k, d)?;
        if let Some(subset) = find_induced_unchecked(g, &pattern) {
            return Ok((Rational::new(k as u64, d as u64)?, subset));
        }
    }
    unreachable!("an edge is a copy of K_2")
}

pub fn circular_clique_number(g: &SideInfoGraph) -> Result<Rational> {
    Ok(circular_clique_witness(g)?.0)
}

/// The induced subgraph (as a sorted vertex list) with the smallest bitmask
/// whose circular clique and circular chromatic numbers differ, if any.
pub fn circular_perfect_witness(g: &SideInfoGraph) -> Result<Option<Vec<usize>>> {
    check_undirected(g, limits::CIRCULAR_PERFECT_MAX_N)?;
    for mask in 1..=full_mask(g.n()) {
        let h = g.induced_by_mask(mask)?;
        if !h.has_edges() {
            continue;
        }
        // omega_c <= chi_c always, so equality holds iff K_{chi_c} itself
        // occurs as an induced subgraph
        let (chi_c, _) = circular_chromatic_number(&h)?;
        let pattern = circular_clique(chi_c.num() as usize, chi_c.den() as usize)?;
        if find_induced_unchecked(&h, &pattern).is_none() {
            return Ok(Some(bits(mask).collect()));
        }
    }
    Ok(None)
}

pub fn is_circular_perfect(g: &SideInfoGraph) -> Result<bool> {
    Ok(circular_perfect_witness(g)?.is_none())
}

fn is_cycle(h: &SideInfoGraph) -> bool {
    if h.n() < 3 || (0..h.n()).any(|v| h.degree(v) != 2) {
        return false;
    }
    // 2-regular: a single cycle iff connected
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let next = bits(frontier).fold(0, |m, v| m | h.neighbors(v)) & !seen;
        seen |= next;
        frontier = next;
    }
    seen == full_mask(h.n())
}

/// Perfectness via forbidden induced subgraphs: no odd hole of length at
/// least 5 and no complement of one.
pub fn is_perfect(g: &SideInfoGraph) -> Result<bool> {
    check_undirected(g, limits::PERFECT_MAX_N)?;
    for m in (5..=g.n()).step_by(2) {
        let hole_edges = m;
        let antihole_edges = m * (m - 1) / 2 - m;
        for subset in (0..g.n()).combinations(m) {
            let mask = subset.iter().fold(0u64, |acc, &v| acc | 1 << v);
            let e: u32 = subset.iter().map(|&v| (g.neighbors(v) & mask).count_ones()).sum();
            let e = e as usize / 2;
            if e != hole_edges && e != antihole_edges {
                continue;
            }
            let h = g.induced_unchecked(&subset);
            if is_cycle(&h) || is_cycle(&h.complement()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn param_report(g: &SideInfoGraph) -> Result<ParamReport> {
    let (chi_c, _) = circular_chromatic_number(g)?;
    Ok(ParamReport {
        omega: clique_number(g)?,
        chi: chromatic_number(g)?,
        omega_c: circular_clique_number(g)?,
        chi_c,
    })
}
