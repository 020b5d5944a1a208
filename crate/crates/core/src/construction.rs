//! Linear index codes from circular colorings of the complement.
//!
//! Given a `(k, d)` circular coloring of the complement of `G` with color
//! classes `C_0..C_{k-1}`, messages are split into `t = d` symbols and
//! `l = k` symbols are broadcast. Transmission `l` is
//!
//! ```text
//! T_l = sum over s in 0..d of  sum over v in C_{(l - s) mod k} of x_{v,s}
//! ```
//!
//! so symbol `j` of a vertex in `C_i` is sent in `T_{(i + j) mod k}`. The
//! other summands of that transmission come from classes whose colors are
//! within circular distance `d - 1` of `i`, hence are non-adjacent in the
//! complement and known to the receiver. The rate is `k / d`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gf::{GFMatrix, PrimeField};
use crate::graphs::SideInfoGraph;
use crate::index_code::LinearIndexCode;
use crate::params::{self, CircularColoring};
use crate::rational::Rational;

/// The bookkeeping of the construction for one graph and coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionPlan {
    graph: SideInfoGraph,
    coloring: CircularColoring,
    color_classes: Vec<Vec<usize>>,
}

impl ConstructionPlan {
    /// `coloring` must be a circular coloring of the complement of `g`.
    pub fn new(g: &SideInfoGraph, coloring: CircularColoring) -> Result<Self> {
        g.require_undirected()?;
        coloring.verify(&g.complement())?;
        let color_classes = coloring.color_classes();
        Ok(ConstructionPlan {
            graph: g.clone(),
            coloring,
            color_classes,
        })
    }

    /// Plan from a coloring attaining the circular chromatic number of the
    /// complement.
    pub fn optimal(g: &SideInfoGraph) -> Result<Self> {
        g.require_undirected()?;
        let (_, coloring) = params::circular_chromatic_number(&g.complement())?;
        ConstructionPlan::new(g, coloring)
    }

    pub fn graph(&self) -> &SideInfoGraph {
        &self.graph
    }

    pub fn coloring(&self) -> &CircularColoring {
        &self.coloring
    }

    pub fn k(&self) -> usize {
        self.coloring.k
    }

    pub fn d(&self) -> usize {
        self.coloring.d
    }

    pub fn color_classes(&self) -> &[Vec<usize>] {
        &self.color_classes
    }

    pub fn rate(&self) -> Result<Rational> {
        Rational::new(self.k() as u64, self.d() as u64)
    }

    /// Classes summed in transmission `l`: `{(l - s) mod k : s in 0..d}`.
    pub fn window_set(&self, l: usize) -> Vec<usize> {
        let k = self.k();
        (0..self.d()).map(|s| (l % k + k - s % k) % k).collect()
    }

    /// Transmission carrying symbol `j` of message `v`.
    pub fn transmission_index(&self, v: usize, j: usize) -> usize {
        (self.coloring.assignment[v] + j) % self.k()
    }

    /// Summands `(vertex, symbol)` of transmission `l`.
    pub fn summands(&self, l: usize) -> Vec<(usize, usize)> {
        let k = self.k();
        let mut out = Vec::new();
        for s in 0..self.d() {
            let class = (l % k + k - s % k) % k;
            out.extend(self.color_classes[class].iter().map(|&v| (v, s)));
        }
        out.sort_unstable();
        out
    }

    /// The encoding matrix over `field`, checked for validity before it is
    /// returned.
    pub fn code(&self, field: PrimeField) -> Result<LinearIndexCode> {
        let n = self.graph.n();
        let (k, d) = (self.k(), self.d());
        let mut b = GFMatrix::zeros(field, k, n * d);
        for l in 0..k {
            for (v, s) in self.summands(l) {
                b.set(l, v * d + s, 1);
            }
        }
        let code = LinearIndexCode::new(n, d, b)?;
        if let Some((i, j)) = code.first_violation(&self.graph)? {
            return Err(Error::InvalidCode(format!(
                "constructed code fails for receiver {i}, symbol {j}"
            )));
        }
        Ok(code)
    }

    /// Recovers `x_{v,j}` from the transmissions `t` by subtracting the
    /// other summands of `T_{(f(v) + j) mod k}`, read from `side`.
    pub fn decode(
        &self,
        field: PrimeField,
        t: &[u32],
        v: usize,
        j: usize,
        side: &BTreeMap<usize, Vec<u32>>,
    ) -> Result<u32> {
        if v >= self.graph.n() {
            return Err(Error::InvalidParameter(format!("receiver {v} out of range")));
        }
        if j >= self.d() {
            return Err(Error::InvalidParameter(format!(
                "symbol {j} out of range for t = {}",
                self.d()
            )));
        }
        if t.len() != self.k() {
            return Err(Error::DimensionMismatch(format!(
                "{} transmissions for a code of length {}",
                t.len(),
                self.k()
            )));
        }
        let l = self.transmission_index(v, j);
        let mut value = t[l] % field.q();
        for (u, s) in self.summands(l) {
            if (u, s) == (v, j) {
                continue;
            }
            if !self.graph.knows(v, u) {
                return Err(Error::CannotDecode(v));
            }
            let known = side.get(&u).and_then(|m| m.get(s)).ok_or(Error::MissingSideInfo(u))?;
            value = field.sub(value, known % field.q());
        }
        Ok(value)
    }
}

/// Code of rate `k / d` for `g` from a `(k, d)` circular coloring of its
/// complement.
pub fn build_code(g: &SideInfoGraph, coloring: &CircularColoring, field: PrimeField) -> Result<LinearIndexCode> {
    ConstructionPlan::new(g, coloring.clone())?.code(field)
}

/// Code of rate equal to the circular chromatic number of the complement.
pub fn build_optimal_code(g: &SideInfoGraph, field: PrimeField) -> Result<LinearIndexCode> {
    ConstructionPlan::optimal(g)?.code(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{circular_clique, cycle, edgeless};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn messages(rng: &mut ChaCha8Rng, n: usize, t: usize, q: u32) -> Vec<Vec<u32>> {
        (0..n).map(|_| (0..t).map(|_| rng.gen_range(0..q)).collect()).collect()
    }

    fn round_trip(plan: &ConstructionPlan, field: PrimeField, seed: u64) {
        let code = plan.code(field).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = messages(&mut rng, plan.graph().n(), plan.d(), field.q());
        let t = code.encode(&x).unwrap();
        for v in 0..plan.graph().n() {
            let side: BTreeMap<usize, Vec<u32>> = plan
                .graph()
                .side_info_set(v)
                .into_iter()
                .map(|u| (u, x[u].clone()))
                .collect();
            for (j, &xj) in x[v].iter().enumerate() {
                assert_eq!(plan.decode(field, &t, v, j, &side).unwrap(), xj);
            }
            assert_eq!(code.decode(plan.graph(), v, &t, &side).unwrap(), x[v]);
        }
    }

    #[test]
    fn pentagon() {
        let g = cycle(5).unwrap().complement();
        let coloring = CircularColoring {
            k: 5,
            d: 2,
            assignment: vec![0, 2, 4, 1, 3],
        };
        let plan = ConstructionPlan::new(&g, coloring.clone()).unwrap();
        let code = build_code(&g, &coloring, f2()).unwrap();
        assert_eq!((code.t(), code.len()), (2, 5));
        assert_eq!(code.rate(), Rational::new(5, 2).unwrap());
        assert!(code.is_valid(&g).unwrap());
        for seed in 0..5 {
            round_trip(&plan, f2(), seed);
            round_trip(&plan, PrimeField::new(3).unwrap(), seed);
        }
    }

    #[test]
    fn edgeless_gives_identity() {
        let g = edgeless(4).unwrap();
        let coloring = CircularColoring {
            k: 4,
            d: 1,
            assignment: vec![0, 1, 2, 3],
        };
        let code = build_code(&g, &coloring, f2()).unwrap();
        assert_eq!(code.matrix(), &GFMatrix::identity(f2(), 4));
        let plan = ConstructionPlan::new(&g, coloring).unwrap();
        let t = [1, 0, 1, 1];
        for v in 0..4 {
            assert_eq!(plan.decode(f2(), &t, v, 0, &BTreeMap::new()).unwrap(), t[v]);
        }
    }

    #[test]
    fn web_nine_three() {
        let g = circular_clique(9, 3).unwrap();
        let coloring = CircularColoring {
            k: 3,
            d: 1,
            assignment: (0..9).map(|v| v % 3).collect(),
        };
        let plan = ConstructionPlan::new(&g, coloring).unwrap();
        assert_eq!(plan.color_classes()[0], vec![0, 3, 6]);
        let code = plan.code(f2()).unwrap();
        assert_eq!((code.len(), code.t()), (3, 1));
        assert_eq!(code.rate(), Rational::integer(3).unwrap());
        // receiver 0 strips x_3 and x_6 from T_0
        assert_eq!(plan.summands(0), vec![(0, 0), (3, 0), (6, 0)]);
        let x: Vec<Vec<u32>> = (0..9).map(|v| vec![(v as u32 * 7 + 1) % 2]).collect();
        let t = code.encode(&x).unwrap();
        let side: BTreeMap<usize, Vec<u32>> = [(3, x[3].clone()), (6, x[6].clone())].into();
        assert_eq!(plan.decode(f2(), &t, 0, 0, &side).unwrap(), x[0][0]);
        round_trip(&plan, f2(), 9);
    }

    #[test]
    fn window_sets_have_d_classes() {
        let g = cycle(7).unwrap().complement();
        let plan = ConstructionPlan::optimal(&g).unwrap();
        assert_eq!(plan.rate().unwrap(), Rational::new(7, 3).unwrap());
        for l in 0..plan.k() {
            let mut a = plan.window_set(l);
            a.sort_unstable();
            a.dedup();
            assert_eq!(a.len(), plan.d());
        }
        // every (v, j) is sent exactly once
        let mut seen = vec![0; g.n() * plan.d()];
        for l in 0..plan.k() {
            for (v, s) in plan.summands(l) {
                assert_eq!(plan.transmission_index(v, s), l);
                seen[v * plan.d() + s] += 1;
            }
        }
        assert!(seen.iter().all(|&c| c == 1));
        round_trip(&plan, f2(), 1);
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = cycle(5).unwrap().complement();
        let bad = CircularColoring {
            k: 5,
            d: 2,
            assignment: vec![0, 1, 2, 3, 4],
        };
        assert!(matches!(build_code(&g, &bad, f2()), Err(Error::InvalidColoring(_))));
        let mut directed = SideInfoGraph::empty(3).unwrap();
        directed.add_side_info(0, 1).unwrap();
        let ok = CircularColoring {
            k: 3,
            d: 1,
            assignment: vec![0, 1, 2],
        };
        assert!(matches!(build_code(&directed, &ok, f2()), Err(Error::DirectedInput)));
    }

    #[test]
    fn missing_side_info_is_reported() {
        let g = cycle(5).unwrap().complement();
        let plan = ConstructionPlan::optimal(&g).unwrap();
        let t = vec![0; plan.k()];
        let err = plan.decode(f2(), &t, 0, 0, &BTreeMap::new()).unwrap_err();
        assert!(matches!(err, Error::MissingSideInfo(_)));
    }
}
