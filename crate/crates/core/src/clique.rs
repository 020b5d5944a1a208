//! Branch-and-bound maximum clique on dense bitset graphs.
//!
//! Candidates are greedily colored at every node; the number of color
//! classes bounds the clique that can still be added, and vertices are
//! expanded from the highest color class down so the bound tightens as the
//! candidate set shrinks.

use crate::graphs::SideInfoGraph;

/// Undirected graph with adjacency rows stored as bitsets.
#[derive(Clone, Debug)]
pub(crate) struct BitGraph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl BitGraph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitGraph {
            n,
            words,
            adj: vec![0; n * words],
        }
    }

    pub fn from_graph(g: &SideInfoGraph) -> Self {
        let mut b = BitGraph::new(g.n());
        for (u, v) in g.edges() {
            b.add_edge(u, v);
        }
        b
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u * self.words + v / 64] |= 1 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1 << (u % 64);
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    fn full_set(&self) -> Vec<u64> {
        let mut set = vec![u64::MAX; self.words];
        let extra = self.words * 64 - self.n;
        if extra > 0 {
            set[self.words - 1] = u64::MAX >> extra;
        }
        if self.n == 0 {
            set.fill(0);
        }
        set
    }
}

fn first(set: &[u64]) -> Option<usize> {
    set.iter()
        .position(|&w| w != 0)
        .map(|w| w * 64 + set[w].trailing_zeros() as usize)
}

fn is_empty(set: &[u64]) -> bool {
    set.iter().all(|&w| w == 0)
}

#[inline]
fn remove(set: &mut [u64], v: usize) {
    set[v / 64] &= !(1 << (v % 64));
}

struct Search<'a> {
    g: &'a BitGraph,
    best: Vec<usize>,
    cap: usize,
}

impl Search<'_> {
    /// Greedy sequential coloring of `p`; returns vertices ordered by color
    /// and the (1-based) color of each.
    fn color_sort(&self, p: &[u64]) -> (Vec<usize>, Vec<usize>) {
        let mut uncolored = p.to_vec();
        let mut order = Vec::new();
        let mut colors = Vec::new();
        let mut color = 0;
        while !is_empty(&uncolored) {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = first(&q) {
                remove(&mut uncolored, v);
                remove(&mut q, v);
                for (qw, &aw) in q.iter_mut().zip(self.g.row(v)) {
                    *qw &= !aw;
                }
                order.push(v);
                colors.push(color);
            }
        }
        (order, colors)
    }

    fn expand(&mut self, current: &mut Vec<usize>, mut p: Vec<u64>) {
        let (order, colors) = self.color_sort(&p);
        for idx in (0..order.len()).rev() {
            if current.len() + colors[idx] <= self.best.len() || self.best.len() >= self.cap {
                return;
            }
            let v = order[idx];
            current.push(v);
            let next: Vec<u64> = p.iter().zip(self.g.row(v)).map(|(&a, &b)| a & b).collect();
            if is_empty(&next) {
                if current.len() > self.best.len() {
                    self.best = current.clone();
                }
            } else {
                self.expand(current, next);
            }
            current.pop();
            remove(&mut p, v);
        }
    }
}

/// A maximum clique of `g`. The search stops early once a clique of size
/// `cap` is found, so `cap` must be a valid upper bound on the clique number.
pub(crate) fn max_clique(g: &BitGraph, cap: Option<usize>) -> Vec<usize> {
    max_clique_from(g, Vec::new(), cap)
}

/// As [`max_clique`], starting from the known clique `seed`.
pub(crate) fn max_clique_from(g: &BitGraph, seed: Vec<usize>, cap: Option<usize>) -> Vec<usize> {
    if g.n() == 0 {
        return Vec::new();
    }
    let mut search = Search {
        g,
        best: seed,
        cap: cap.unwrap_or(usize::MAX),
    };
    if search.best.len() < search.cap {
        search.expand(&mut Vec::new(), g.full_set());
    }
    let mut best = search.best;
    best.sort_unstable();
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{bits, complete, cycle, edgeless, random_graph};

    fn brute(g: &SideInfoGraph) -> usize {
        (1u64..1 << g.n())
            .filter(|&m| bits(m).all(|u| (g.neighbors(u) | 1 << u) & m == m))
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn small_families() {
        assert_eq!(max_clique(&BitGraph::from_graph(&complete(6).unwrap()), None).len(), 6);
        assert_eq!(max_clique(&BitGraph::from_graph(&cycle(5).unwrap()), None).len(), 2);
        assert_eq!(max_clique(&BitGraph::from_graph(&edgeless(4).unwrap()), None).len(), 1);
    }

    #[test]
    fn agrees_with_subset_enumeration() {
        for seed in 0..40 {
            let g = random_graph(11, 0.3 + 0.01 * seed as f64, seed).unwrap();
            let clique = max_clique(&BitGraph::from_graph(&g), None);
            assert_eq!(clique.len(), brute(&g), "seed {seed}");
            for (i, &u) in clique.iter().enumerate() {
                for &v in &clique[i + 1..] {
                    assert!(g.adjacent(u, v));
                }
            }
        }
    }

    #[test]
    fn multiword_rows() {
        let mut g = BitGraph::new(130);
        let members = [0, 63, 64, 65, 127, 128, 129];
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                g.add_edge(u, v);
            }
        }
        g.add_edge(1, 2);
        assert_eq!(max_clique(&g, None), members.to_vec());
    }

    #[test]
    fn seed_and_cap() {
        let g = BitGraph::from_graph(&complete(5).unwrap());
        assert_eq!(max_clique_from(&g, vec![0, 1, 2], Some(3)), vec![0, 1, 2]);
        assert_eq!(max_clique_from(&g, vec![3], None).len(), 5);
    }
}
