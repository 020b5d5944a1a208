//! Confusion graphs and the lower bounds on the broadcast rate they give.
//!
//! The vertices of `Γ_t(G)` are all message tuples in `F_q^{nt}`, indexed
//! big-endian in base `q`, block by block: symbol `j` of message `i` is digit
//! `i*t + j` counted from the most significant end. Two tuples are adjacent
//! when some receiver `i` wants a block on which they differ while they agree
//! on all of `S_i`.
//!
//! Adjacency depends only on the difference of the two tuples, so `Γ_t(G)` is
//! a Cayley graph and its clique number is one more than the clique number of
//! the neighbourhood of the zero tuple. The search is seeded with the tuples
//! supported on a maximum acyclic induced subgraph and capped by the number of
//! codewords of a clique-cover code.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::clique::{self, BitGraph};
use crate::error::{Error, Result};
use crate::gf::PrimeField;
use crate::graphs::{bits, full_mask, SideInfoGraph};
use crate::limits;
use crate::params;
use crate::rational::Rational;

/// Largest `n` for which the seed and cap are computed exactly.
const BOUNDS_MAX_N: usize = 16;

#[derive(Clone, Debug)]
pub struct ConfusionGraph {
    base: SideInfoGraph,
    t: usize,
    field: PrimeField,
    vertices: usize,
    /// For `q = 2`: the bits of each message block in a vertex index.
    block_bits: Vec<usize>,
}

impl ConfusionGraph {
    pub fn new(g: &SideInfoGraph, t: usize, field: PrimeField) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidParameter("message length t must be positive".into()));
        }
        let digits = g.n().checked_mul(t).and_then(|d| u32::try_from(d).ok());
        let vertices = digits
            .and_then(|d| (field.q() as usize).checked_pow(d))
            .ok_or(Error::TooLarge {
                what: "confusion graph vertices",
                value: usize::MAX,
                limit: limits::CONFUSION_MAX_VERTICES,
            })?;
        limits::check("confusion graph vertices", vertices, limits::CONFUSION_MAX_VERTICES)?;
        let nt = g.n() * t;
        let block_bits = if field.q() == 2 {
            (0..g.n()).map(|i| ((1usize << t) - 1) << (nt - (i + 1) * t)).collect()
        } else {
            Vec::new()
        };
        Ok(ConfusionGraph {
            base: g.clone(),
            t,
            field,
            vertices,
            block_bits,
        })
    }

    pub fn base(&self) -> &SideInfoGraph {
        &self.base
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    /// The tuple of vertex `x`, one symbol per column `i*t + j`.
    pub fn digits(&self, x: usize) -> Vec<u32> {
        let q = self.field.q() as usize;
        let nt = self.base.n() * self.t;
        let mut out = vec![0; nt];
        let mut rest = x;
        for slot in out.iter_mut().rev() {
            *slot = (rest % q) as u32;
            rest /= q;
        }
        out
    }

    /// Vertex index of a tuple.
    pub fn index(&self, digits: &[u32]) -> Result<usize> {
        let nt = self.base.n() * self.t;
        if digits.len() != nt {
            return Err(Error::DimensionMismatch(format!(
                "tuple of length {} for nt = {nt}",
                digits.len()
            )));
        }
        let q = self.field.q() as usize;
        Ok(digits.iter().fold(0, |acc, &d| acc * q + (d % self.field.q()) as usize))
    }

    /// Messages on which tuples `x` and `y` differ, as a bitmask.
    fn differing_blocks(&self, x: usize, y: usize) -> u64 {
        if self.field.q() == 2 {
            let diff = x ^ y;
            return self
                .block_bits
                .iter()
                .enumerate()
                .filter(|(_, &m)| diff & m != 0)
                .fold(0, |acc, (i, _)| acc | 1 << i);
        }
        let (dx, dy) = (self.digits(x), self.digits(y));
        let mut mask = 0;
        for i in 0..self.base.n() {
            let block = i * self.t..(i + 1) * self.t;
            if dx[block.clone()] != dy[block] {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Whether some receiver wants a message in `blocks` while knowing none
    /// of them.
    fn confusable(&self, blocks: u64) -> bool {
        bits(blocks).any(|i| self.base.side_info(i) & blocks == 0)
    }

    fn unchecked_edge(&self, x: usize, y: usize) -> bool {
        self.confusable(self.differing_blocks(x, y))
    }

    pub fn edge(&self, x: usize, y: usize) -> Result<bool> {
        if x >= self.vertices || y >= self.vertices {
            return Err(Error::InvalidParameter(format!(
                "vertex out of range 0..{}",
                self.vertices
            )));
        }
        if x == y {
            return Err(Error::InvalidParameter(
                "confusion edge needs two distinct tuples".into(),
            ));
        }
        Ok(self.unchecked_edge(x, y))
    }

    pub fn edge_count(&self) -> usize {
        let zero_degree = (1..self.vertices).filter(|&x| self.unchecked_edge(0, x)).count();
        self.vertices * zero_degree / 2
    }

    /// Neighbours of the zero tuple.
    pub fn zero_neighbourhood(&self) -> Vec<usize> {
        (1..self.vertices).filter(|&x| self.unchecked_edge(0, x)).collect()
    }

    /// A maximum clique, containing the zero tuple. `code_len`, when given,
    /// must be the length of some valid code for the base graph and `t`.
    pub fn max_clique(&self, code_len: Option<usize>) -> Vec<usize> {
        let mut memo = HashMap::new();
        let mut clique = self.clique_on(full_mask(self.base.n()), code_len, &mut memo);
        clique.sort_unstable();
        clique
    }

    pub fn clique_number(&self, code_len: Option<usize>) -> usize {
        self.max_clique(code_len).len()
    }

    /// A maximum clique of `Γ_t(G[mask])`, as tuples vanishing outside `mask`.
    ///
    /// A message nobody else knows, or whose receiver knows nothing in
    /// `mask`, splits off a factor `q^t` exactly. Otherwise deleting any
    /// message loses at most a factor `q^t`, which bounds the search.
    fn clique_on(&self, mask: u64, code_len: Option<usize>, memo: &mut HashMap<u64, Vec<usize>>) -> Vec<usize> {
        if mask == 0 {
            return vec![0];
        }
        if let Some(c) = memo.get(&mask) {
            return c.clone();
        }
        let result = if let Some(v) = bits(mask).find(|&v| self.splits_off(mask, v)) {
            let rest = self.clique_on(mask & !(1 << v), None, memo);
            let block = self.tuples_on(1 << v);
            rest.iter().flat_map(|&x| block.iter().map(move |&b| x + b)).collect()
        } else {
            let mut best = self.tuples_on(acyclic_seed(&self.base, mask));
            let mut cap = self.cap(mask, code_len);
            if best.len() < cap {
                let factor = (self.field.q() as usize).pow(self.t as u32);
                for v in bits(mask) {
                    let sub = self.clique_on(mask & !(1 << v), None, memo);
                    cap = cap.min(sub.len().saturating_mul(factor));
                    if sub.len() > best.len() {
                        best = sub;
                    }
                }
            }
            if best.len() < cap {
                self.search(mask, best, cap)
            } else {
                best
            }
        };
        memo.insert(mask, result.clone());
        result
    }

    fn splits_off(&self, mask: u64, v: usize) -> bool {
        self.base.side_info(v) & mask == 0 || bits(mask).all(|u| self.base.side_info(u) >> v & 1 == 0)
    }

    /// Exact search in `Γ_t(G[mask])` around the zero tuple, starting from
    /// the clique `seed` and stopping once a clique of size `cap` is found.
    fn search(&self, mask: u64, seed: Vec<usize>, cap: usize) -> Vec<usize> {
        let nbhd: Vec<usize> = self
            .tuples_on(mask)
            .into_iter()
            .filter(|&x| x != 0 && self.unchecked_edge(0, x))
            .collect();
        let position: HashMap<usize, usize> = nbhd.iter().enumerate().map(|(p, &x)| (x, p)).collect();
        let mut bg = BitGraph::new(nbhd.len());
        for (a, &x) in nbhd.iter().enumerate() {
            for (b, &y) in nbhd.iter().enumerate().skip(a + 1) {
                if self.unchecked_edge(x, y) {
                    bg.add_edge(a, b);
                }
            }
        }
        let seed: Vec<usize> = seed.iter().filter(|&&x| x != 0).map(|x| position[x]).collect();
        std::iter::once(0)
            .chain(
                clique::max_clique_from(&bg, seed, Some(cap - 1))
                    .into_iter()
                    .map(|p| nbhd[p]),
            )
            .collect()
    }

    /// All tuples vanishing outside the messages in `support`, zero
    /// included. When the support induces an acyclic subgraph they form a
    /// clique.
    fn tuples_on(&self, support: u64) -> Vec<usize> {
        let q = self.field.q() as usize;
        let nt = self.base.n() * self.t;
        let mut out = vec![0usize];
        for i in bits(support) {
            for j in 0..self.t {
                let weight = q.pow((nt - 1 - (i * self.t + j)) as u32);
                out = out.iter().flat_map(|&x| (0..q).map(move |d| x + d * weight)).collect();
            }
        }
        out
    }

    /// Upper bound on the clique number of `Γ_t(G[mask])` from the shortest
    /// of the given code and the clique-cover code of the bidirected part.
    fn cap(&self, mask: u64, code_len: Option<usize>) -> usize {
        let verts: Vec<usize> = bits(mask).collect();
        let mut len = verts.len() * self.t;
        if let Some(l) = code_len {
            len = len.min(l);
        }
        if verts.len() <= BOUNDS_MAX_N {
            let h = self.base.induced_subgraph(&verts).expect("mask within range");
            let k = verts.len();
            let mut mutual = SideInfoGraph::empty(k).expect("k checked by construction");
            for (u, v) in (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))) {
                if h.knows(u, v) && h.knows(v, u) {
                    mutual.add_edge(u, v).expect("in range");
                }
            }
            if let Ok(cover) = params::chromatic_number(&mutual.complement()) {
                len = len.min(cover * self.t);
            }
        }
        // the vertex count fits in usize, so q^len does too
        (self.field.q() as usize).pow(len as u32)
    }

    /// Maps each vertex of `Γ_t(H)`, for `H` induced on `subset`, to the
    /// vertex of `Γ_t(G)` agreeing with it on `subset` and equal to the
    /// tuple `padding` elsewhere.
    pub fn embedding(&self, subset: &[usize], padding: usize) -> Result<(ConfusionGraph, Vec<usize>)> {
        let mut subset = subset.to_vec();
        subset.sort_unstable();
        subset.dedup();
        let h = self.base.induced_subgraph(&subset)?;
        let gamma_h = ConfusionGraph::new(&h, self.t, self.field)?;
        if padding >= self.vertices {
            return Err(Error::InvalidParameter(format!("padding tuple {padding} out of range")));
        }
        let pad = self.digits(padding);
        let t = self.t;
        let map = (0..gamma_h.vertex_count())
            .map(|x| {
                let small = gamma_h.digits(x);
                let mut full = pad.clone();
                for (pos, &v) in subset.iter().enumerate() {
                    full[v * t..(v + 1) * t].copy_from_slice(&small[pos * t..(pos + 1) * t]);
                }
                self.index(&full).expect("length matches")
            })
            .collect();
        Ok((gamma_h, map))
    }
}

/// A maximum subset of `mask` inducing an acyclic subgraph (exact for
/// small `n`). For undirected graphs this is a maximum independent set.
fn acyclic_seed(g: &SideInfoGraph, mask: u64) -> u64 {
    if g.n() > BOUNDS_MAX_N {
        return mask & mask.wrapping_neg();
    }
    let mut best = 0u64;
    let mut sub = mask;
    while sub != 0 {
        if sub.count_ones() > best.count_ones() && is_acyclic(g, sub) {
            best = sub;
        }
        sub = (sub - 1) & mask;
    }
    best
}

fn is_acyclic(g: &SideInfoGraph, mask: u64) -> bool {
    let mut left = mask;
    loop {
        let Some(v) = bits(left).find(|&v| g.side_info(v) & left == 0) else {
            return left == 0;
        };
        left &= !(1 << v);
    }
}

pub fn confusion_edge(g: &SideInfoGraph, t: usize, field: PrimeField, x: usize, y: usize) -> Result<bool> {
    ConfusionGraph::new(g, t, field)?.edge(x, y)
}

/// `ω(Γ_t(G))`.
pub fn max_clique_confusion(g: &SideInfoGraph, t: usize, field: PrimeField) -> Result<usize> {
    Ok(ConfusionGraph::new(g, t, field)?.clique_number(None))
}

/// `log_q ω(Γ_t(G)) / t`, a lower bound on the broadcast rate of `G` over
/// codes for messages of `t` symbols from `F_q`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfusionBound {
    pub omega: usize,
    pub vertices: usize,
    pub t: usize,
    pub q: u32,
    pub value: f64,
    /// Set when `omega` is a power of `q`.
    pub exact: Option<Rational>,
}

impl ConfusionBound {
    pub fn from_omega(omega: usize, vertices: usize, t: usize, q: u32) -> Result<Self> {
        if omega == 0 || t == 0 {
            return Err(Error::InvalidParameter("omega and t must be positive".into()));
        }
        let mut m = 0u64;
        let mut power = 1usize;
        while power < omega {
            power = power.saturating_mul(q as usize);
            m += 1;
        }
        // log_q 1 = 0 is not a positive rational
        let exact = if power == omega && m > 0 {
            Some(Rational::new(m, t as u64)?)
        } else {
            None
        };
        Ok(ConfusionBound {
            omega,
            vertices,
            t,
            q,
            value: (omega as f64).ln() / (q as f64).ln() / t as f64,
            exact,
        })
    }

    /// `"m/t"` when exact, otherwise six decimals.
    pub fn bound_string(&self) -> String {
        match &self.exact {
            Some(r) => r.to_string(),
            None => format!("{:.6}", self.value),
        }
    }
}

pub fn beta_lower_bound(g: &SideInfoGraph, t: usize, field: PrimeField) -> Result<ConfusionBound> {
    let gamma = ConfusionGraph::new(g, t, field)?;
    let omega = gamma.clique_number(None);
    ConfusionBound::from_omega(omega, gamma.vertex_count(), t, field.q())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete, cycle, edgeless, nonisomorphic_graphs, random_digraph};

    fn f(q: u32) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    fn brute_clique(gamma: &ConfusionGraph) -> usize {
        let n = gamma.vertex_count();
        let mut bg = BitGraph::new(n);
        for x in 0..n {
            for y in x + 1..n {
                if gamma.edge(x, y).unwrap() {
                    bg.add_edge(x, y);
                }
            }
        }
        clique::max_clique(&bg, None).len()
    }

    /// Adjacency straight from the definition, on explicit tuples.
    fn edge_by_definition(g: &SideInfoGraph, t: usize, x: &[u32], y: &[u32]) -> bool {
        (0..g.n()).any(|i| {
            x[i * t..(i + 1) * t] != y[i * t..(i + 1) * t]
                && g.side_info_set(i)
                    .iter()
                    .all(|&j| x[j * t..(j + 1) * t] == y[j * t..(j + 1) * t])
        })
    }

    #[test]
    fn edge_examples() {
        let gamma = ConfusionGraph::new(&edgeless(2).unwrap(), 1, f(2)).unwrap();
        assert_eq!(gamma.edge_count(), 6);
        let k2 = ConfusionGraph::new(&complete(2).unwrap(), 1, f(2)).unwrap();
        let (x00, x10, x11) = (0, k2.index(&[1, 0]).unwrap(), k2.index(&[1, 1]).unwrap());
        assert!(k2.edge(x00, x10).unwrap());
        assert!(!k2.edge(x00, x11).unwrap());
        assert!(k2.edge(3, 3).is_err());
    }

    #[test]
    fn edges_match_definition() {
        for (g, t, q) in [
            (cycle(5).unwrap(), 1, 2),
            (cycle(4).unwrap(), 2, 2),
            (random_digraph(4, 0.4, 3).unwrap(), 1, 3),
            (random_digraph(3, 0.5, 8).unwrap(), 2, 3),
        ] {
            let gamma = ConfusionGraph::new(&g, t, f(q)).unwrap();
            let mut count = 0;
            for x in 0..gamma.vertex_count() {
                for y in x + 1..gamma.vertex_count() {
                    let e = edge_by_definition(&g, t, &gamma.digits(x), &gamma.digits(y));
                    assert_eq!(gamma.edge(x, y).unwrap(), e);
                    count += e as usize;
                }
            }
            assert_eq!(gamma.edge_count(), count);
        }
    }

    #[test]
    fn digits_are_big_endian_block_major() {
        let gamma = ConfusionGraph::new(&edgeless(2).unwrap(), 2, f(3)).unwrap();
        assert_eq!(gamma.digits(1), vec![0, 0, 0, 1]);
        assert_eq!(gamma.digits(27), vec![1, 0, 0, 0]);
        for x in 0..gamma.vertex_count() {
            assert_eq!(gamma.index(&gamma.digits(x)).unwrap(), x);
        }
    }

    #[test]
    fn clique_examples() {
        for n in 1..=4 {
            assert_eq!(max_clique_confusion(&edgeless(n).unwrap(), 1, f(2)).unwrap(), 1 << n);
            let kn = ConfusionGraph::new(&complete(n).unwrap(), 1, f(2)).unwrap();
            assert_eq!(kn.clique_number(None), 2);
            assert_eq!(brute_clique(&kn), 2);
        }
        assert_eq!(max_clique_confusion(&edgeless(2).unwrap(), 1, f(3)).unwrap(), 9);
    }

    #[test]
    fn clique_agrees_with_plain_search() {
        let mut cases = vec![
            (cycle(5).unwrap(), 1, 2),
            (cycle(5).unwrap(), 1, 3),
            (cycle(4).unwrap(), 2, 2),
            (random_digraph(4, 0.5, 1).unwrap(), 1, 3),
            (random_digraph(3, 0.5, 5).unwrap(), 2, 2),
        ];
        cases.extend(nonisomorphic_graphs(4).unwrap().into_iter().map(|g| (g, 1, 2)));
        cases.extend((0..16).map(|seed| (random_digraph(5, 0.5, seed).unwrap(), 1, 2)));
        cases.extend((0..6).map(|seed| (random_digraph(4, 0.6, 100 + seed).unwrap(), 2, 2)));
        for (g, t, q) in cases {
            let gamma = ConfusionGraph::new(&g, t, f(q)).unwrap();
            let clique = gamma.max_clique(None);
            assert_eq!(clique.len(), brute_clique(&gamma));
            for (a, &x) in clique.iter().enumerate() {
                for &y in &clique[a + 1..] {
                    assert!(gamma.edge(x, y).unwrap());
                }
            }
        }
    }

    #[test]
    fn bounds() {
        let b = beta_lower_bound(&edgeless(3).unwrap(), 1, f(2)).unwrap();
        assert_eq!(b.exact, Some(Rational::integer(3).unwrap()));
        let b = beta_lower_bound(&edgeless(2).unwrap(), 2, f(3)).unwrap();
        assert_eq!(b.bound_string(), "2/1");
        let b = beta_lower_bound(&complete(3).unwrap(), 1, f(2)).unwrap();
        assert_eq!(b.omega, 2);
        assert_eq!(b.bound_string(), "1/1");
        let inexact = ConfusionBound::from_omega(5, 32, 1, 2).unwrap();
        assert!(inexact.exact.is_none());
        assert_eq!(inexact.bound_string(), "2.321928");
    }

    #[test]
    fn embedding_preserves_edges() {
        let g = random_digraph(5, 0.4, 11).unwrap();
        let gamma = ConfusionGraph::new(&g, 1, f(2)).unwrap();
        for padding in [0, 5, 31] {
            let (small, map) = gamma.embedding(&[0, 2, 3], padding).unwrap();
            for x in 0..small.vertex_count() {
                for y in x + 1..small.vertex_count() {
                    if small.edge(x, y).unwrap() {
                        assert!(gamma.edge(map[x], map[y]).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn size_limit() {
        let err = ConfusionGraph::new(&edgeless(13).unwrap(), 1, f(2)).unwrap_err();
        assert!(matches!(err, Error::TooLarge { .. }));
        assert!(ConfusionGraph::new(&edgeless(2).unwrap(), 0, f(2)).is_err());
    }
}
