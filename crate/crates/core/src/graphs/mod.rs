//! Side-information graphs.
//!
//! Vertex `i` is receiver `i`, which demands message `i` and knows the
//! messages in `side_info[i]`. Side-information sets are stored as `u64`
//! bitmasks, so graphs have at most 64 vertices. A graph is undirected when
//! side information is symmetric; adjacency in the undirected sense is then
//! membership in the side-information set.

mod families;

pub use families::*;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits;

/// Iterator over the set bits of a mask, ascending.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct SideInfoGraph {
    n: usize,
    side_info: Vec<u64>,
}

/// Wire form: `{"n": int, "side_info": [[int]]}`.
#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    side_info: Vec<Vec<usize>>,
}

impl TryFrom<GraphJson> for SideInfoGraph {
    type Error = Error;

    fn try_from(raw: GraphJson) -> Result<Self> {
        SideInfoGraph::from_side_info(raw.n, &raw.side_info)
    }
}

impl From<SideInfoGraph> for GraphJson {
    fn from(g: SideInfoGraph) -> Self {
        GraphJson {
            n: g.n,
            side_info: (0..g.n).map(|i| g.side_info_set(i)).collect(),
        }
    }
}

impl SideInfoGraph {
    /// The graph on `n` vertices with no side information.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyVertexSet);
        }
        if n > limits::MAX_VERTICES {
            return Err(Error::TooLarge {
                what: "vertices",
                value: n,
                limit: limits::MAX_VERTICES,
            });
        }
        Ok(SideInfoGraph {
            n,
            side_info: vec![0; n],
        })
    }

    pub fn from_side_info(n: usize, side_info: &[Vec<usize>]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        if side_info.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} side-information sets for {n} receivers",
                side_info.len()
            )));
        }
        for (i, set) in side_info.iter().enumerate() {
            for &j in set {
                g.add_side_info(i, j)?;
            }
        }
        Ok(g)
    }

    pub(crate) fn from_masks(n: usize, side_info: Vec<u64>) -> Self {
        debug_assert_eq!(side_info.len(), n);
        debug_assert!((0..n).all(|i| side_info[i] & (1 << i) == 0 && side_info[i] & !full_mask(n) == 0));
        SideInfoGraph { n, side_info }
    }

    /// Undirected graph from an edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Records that receiver `i` knows message `j`.
    pub fn add_side_info(&mut self, i: usize, j: usize) -> Result<()> {
        if i >= self.n || j >= self.n {
            return Err(Error::InvalidParameter(format!(
                "vertex out of range in ({i}, {j}) for n = {}",
                self.n
            )));
        }
        if i == j {
            return Err(Error::InvalidParameter(format!(
                "receiver {i} cannot have its own message as side information"
            )));
        }
        self.side_info[i] |= 1 << j;
        Ok(())
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.add_side_info(u, v)?;
        self.add_side_info(v, u)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Side-information set of receiver `i` as a bitmask.
    #[inline]
    pub fn side_info(&self, i: usize) -> u64 {
        self.side_info[i]
    }

    pub fn side_info_set(&self, i: usize) -> Vec<usize> {
        bits(self.side_info[i]).collect()
    }

    /// Whether receiver `i` knows message `j`.
    #[inline]
    pub fn knows(&self, i: usize, j: usize) -> bool {
        self.side_info[i] >> j & 1 == 1
    }

    /// Undirected adjacency. Meaningful only when [`Self::is_undirected`] holds.
    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.knows(u, v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.side_info[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.side_info[v].count_ones() as usize
    }

    pub fn is_undirected(&self) -> bool {
        (0..self.n).all(|i| bits(self.side_info[i]).all(|j| self.knows(j, i)))
    }

    pub fn require_undirected(&self) -> Result<()> {
        if self.is_undirected() {
            Ok(())
        } else {
            Err(Error::DirectedInput)
        }
    }

    /// Number of undirected edges (pairs with mutual side information).
    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Undirected edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| {
                bits(self.side_info[u] >> (u + 1) << (u + 1))
                    .filter(move |&v| self.knows(v, u))
                    .map(move |v| (u, v))
            })
            .collect()
    }

    pub fn has_edges(&self) -> bool {
        self.side_info.iter().any(|&m| m != 0)
    }

    /// Complement by side-information sets: receiver `i` knows exactly the
    /// messages it did not know before, apart from its own. For undirected
    /// graphs this is the ordinary graph complement.
    pub fn complement(&self) -> SideInfoGraph {
        let all = full_mask(self.n);
        let side_info = (0..self.n).map(|i| all & !self.side_info[i] & !(1u64 << i)).collect();
        SideInfoGraph::from_masks(self.n, side_info)
    }

    /// Subgraph induced by `vertices`, relabelled `0..len` in ascending order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<SideInfoGraph> {
        if vertices.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&v) = sorted.iter().find(|&&v| v >= self.n) {
            return Err(Error::InvalidParameter(format!(
                "vertex {v} out of range for n = {}",
                self.n
            )));
        }
        Ok(self.induced_unchecked(&sorted))
    }

    /// Subgraph induced by the vertices in `mask`.
    pub fn induced_by_mask(&self, mask: u64) -> Result<SideInfoGraph> {
        let vertices: Vec<usize> = bits(mask).collect();
        self.induced_subgraph(&vertices)
    }

    pub(crate) fn induced_unchecked(&self, sorted: &[usize]) -> SideInfoGraph {
        let side_info = sorted
            .iter()
            .map(|&v| {
                sorted
                    .iter()
                    .enumerate()
                    .filter(|&(_, &u)| self.knows(v, u))
                    .fold(0u64, |m, (k, _)| m | 1 << k)
            })
            .collect();
        SideInfoGraph::from_masks(sorted.len(), side_info)
    }

    pub(crate) fn sorted_degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    /// Isomorphism test for undirected graphs with at most 12 vertices.
    ///
    /// Backtracking over a vertex order by descending degree; candidates must
    /// match degree and agree on adjacency with every vertex mapped so far.
    pub fn is_isomorphic(&self, other: &SideInfoGraph) -> Result<bool> {
        self.require_undirected()?;
        other.require_undirected()?;
        limits::check("vertices", self.n.max(other.n), limits::ISOMORPHISM_MAX_N)?;
        Ok(self.isomorphic_unchecked(other))
    }

    pub(crate) fn isomorphic_unchecked(&self, other: &SideInfoGraph) -> bool {
        if self.n != other.n || self.sorted_degrees() != other.sorted_degrees() {
            return false;
        }
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(self.degree(v)), v));
        let mut mapping = vec![usize::MAX; self.n];
        self.extend_isomorphism(other, &order, 0, &mut mapping, 0)
    }

    fn extend_isomorphism(
        &self,
        other: &SideInfoGraph,
        order: &[usize],
        depth: usize,
        mapping: &mut [usize],
        used: u64,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for w in 0..other.n {
            if used >> w & 1 == 1 || other.degree(w) != self.degree(v) {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&u| self.adjacent(u, v) == other.adjacent(mapping[u], w));
            if consistent {
                mapping[v] = w;
                if self.extend_isomorphism(other, order, depth + 1, mapping, used | 1 << w) {
                    return true;
                }
            }
        }
        mapping[v] = usize::MAX;
        false
    }

    /// Graphviz rendering. Undirected graphs list each edge once in
    /// lexicographic order; directed graphs draw `j -> i` for `j` in `S_i`.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        if self.is_undirected() {
            out.push_str("graph G {\n");
            for v in 0..self.n {
                let _ = writeln!(out, "  {v};");
            }
            for (u, v) in self.edges() {
                let _ = writeln!(out, "  {u} -- {v};");
            }
        } else {
            out.push_str("digraph G {\n");
            for v in 0..self.n {
                let _ = writeln!(out, "  {v};");
            }
            for j in 0..self.n {
                for i in 0..self.n {
                    if self.knows(i, j) {
                        let _ = writeln!(out, "  {j} -> {i};");
                    }
                }
            }
        }
        out.push_str("}\n");
        out
    }
}
