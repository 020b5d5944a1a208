mod common;

use std::collections::BTreeMap;

use circix::confusion::ConfusionGraph;
use circix::construction::ConstructionPlan;
use circix::graphs::{circular_clique, SideInfoGraph};
use circix::{gf, params, GFMatrix, LinearIndexCode, PrimeField, Rational};
use common as oracle;
use proptest::prelude::*;

fn undirected(n: usize, bits: &[bool]) -> SideInfoGraph {
    let mut g = SideInfoGraph::empty(n).unwrap();
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    for ((u, v), &b) in pairs.zip(bits) {
        if b {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

fn directed(n: usize, bits: &[bool]) -> SideInfoGraph {
    let mut g = SideInfoGraph::empty(n).unwrap();
    let pairs = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)));
    for ((i, j), &b) in pairs.zip(bits) {
        if b {
            g.add_side_info(i, j).unwrap();
        }
    }
    g
}

fn graph(max_n: usize) -> impl Strategy<Value = SideInfoGraph> {
    (
        1..=max_n,
        any::<bool>(),
        prop::collection::vec(any::<bool>(), max_n * max_n),
    )
        .prop_map(
            |(n, dir, bits)| {
                if dir {
                    directed(n, &bits)
                } else {
                    undirected(n, &bits)
                }
            },
        )
}

fn undirected_graph(max_n: usize) -> impl Strategy<Value = SideInfoGraph> {
    (1..=max_n, prop::collection::vec(any::<bool>(), max_n * max_n)).prop_map(|(n, bits)| undirected(n, &bits))
}

fn matrix(q: u32, rows: usize, cols: usize) -> impl Strategy<Value = GFMatrix> {
    prop::collection::vec(0..q, rows * cols)
        .prop_map(move |e| GFMatrix::new(PrimeField::new(q).unwrap(), rows, cols, e).unwrap())
}

fn rows_of(m: &GFMatrix) -> Vec<Vec<u32>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

fn two_matrices() -> impl Strategy<Value = (GFMatrix, GFMatrix)> {
    (
        prop::sample::select(vec![2u32, 3, 5]),
        1usize..4,
        1usize..4,
        1usize..4,
        1usize..4,
    )
        .prop_flat_map(|(q, r1, c1, r2, c2)| (matrix(q, r1, c1), matrix(q, r2, c2)))
}

/// A graph with a random code over `F_q`, `n <= 6`, `t <= 2`.
fn graph_and_code() -> impl Strategy<Value = (SideInfoGraph, LinearIndexCode)> {
    (graph(6), 1usize..=2, prop::sample::select(vec![2u32, 3])).prop_flat_map(|(g, t, q)| {
        let n = g.n();
        (1..=n * t).prop_flat_map(move |l| {
            let g = g.clone();
            matrix(q, l, n * t).prop_map(move |b| (g.clone(), LinearIndexCode::new(n, t, b).unwrap()))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kron_rank_is_product((a, b) in two_matrices()) {
        let q = a.field().q();
        let k = gf::kron(&a, &b).unwrap();
        prop_assert_eq!(k.rank(), a.rank() * b.rank());
        prop_assert_eq!(k.rank(), oracle::rank(&rows_of(&k), q));
    }

    #[test]
    fn in_span_matches_rank(
        q in prop::sample::select(vec![2u32, 3]),
        v in prop::collection::vec(0u32..3, 4),
        span in prop::collection::vec(prop::collection::vec(0u32..3, 4), 0..4),
    ) {
        let v: Vec<u32> = v.iter().map(|x| x % q).collect();
        let span: Vec<Vec<u32>> = span.iter().map(|r| r.iter().map(|x| x % q).collect()).collect();
        let mut with = span.clone();
        with.push(v.clone());
        let f = PrimeField::new(q).unwrap();
        prop_assert_eq!(gf::in_span(f, &v, &span).unwrap(), oracle::rank(&with, q) == oracle::rank(&span, q));
    }

    #[test]
    fn complement_is_an_involution(g in graph(8)) {
        prop_assert_eq!(g.complement().complement(), g.clone());
        for i in 0..g.n() {
            prop_assert!(!g.complement().knows(i, i));
            for j in (0..g.n()).filter(|&j| j != i) {
                prop_assert_ne!(g.knows(i, j), g.complement().knows(i, j));
            }
        }
    }

    #[test]
    fn validity_matches_rowspace_and_definition((g, code) in graph_and_code()) {
        let valid = code.is_valid(&g).unwrap();
        for i in 0..g.n() {
            prop_assert_eq!(code.receiver_can_decode(&g, i).unwrap(), code.can_decode_rowspace(&g, i).unwrap());
        }
        if g.n() * code.t() <= 8 {
            prop_assert_eq!(valid, oracle::valid(&g, &code));
        }
        if valid && g.is_undirected() {
            let omega = oracle::clique_number(&oracle::knows(&g.complement()));
            prop_assert!(code.rate() >= Rational::integer(omega as u64).unwrap());
        }
    }

    #[test]
    fn valid_codes_round_trip((g, code) in graph_and_code(), seed in any::<u64>()) {
        let q = code.field().q();
        let x: Vec<Vec<u32>> = (0..g.n())
            .map(|i| (0..code.t()).map(|j| (seed.rotate_left((i * 7 + j) as u32) % q as u64) as u32).collect())
            .collect();
        let word = code.encode(&x).unwrap();
        for i in 0..g.n() {
            let side: BTreeMap<usize, Vec<u32>> = g.side_info_set(i).into_iter().map(|u| (u, x[u].clone())).collect();
            match code.decode(&g, i, &word, &side) {
                Ok(got) => prop_assert_eq!(&got, &x[i]),
                Err(_) => prop_assert!(!code.receiver_can_decode(&g, i).unwrap()),
            }
        }
    }

    #[test]
    fn parameter_chain(g in undirected_graph(7)) {
        let r = params::param_report(&g).unwrap();
        let omega = Rational::integer(r.omega as u64).unwrap();
        let chi = Rational::integer(r.chi as u64).unwrap();
        prop_assert!(omega <= r.omega_c && r.omega_c <= r.chi_c && r.chi_c <= chi);
        prop_assert_eq!(r.omega_c.floor(), r.omega as u64);
        prop_assert_eq!(r.chi_c.ceil(), r.chi as u64);
        let adj = oracle::knows(&g);
        prop_assert_eq!((r.chi_c.num(), r.chi_c.den()), oracle::circular_chromatic_number(&adj));
        prop_assert_eq!((r.omega_c.num(), r.omega_c.den()), oracle::circular_clique_number(&adj));
    }

    #[test]
    fn perfect_implies_circular_perfect(g in undirected_graph(7)) {
        if params::is_perfect(&g).unwrap() {
            prop_assert!(params::is_circular_perfect(&g).unwrap());
        }
        prop_assert_eq!(params::is_perfect(&g).unwrap(), oracle::is_perfect(&oracle::knows(&g)));
    }

    #[test]
    fn construction_meets_chi_c(g in undirected_graph(7), q in prop::sample::select(vec![2u32, 3])) {
        let plan = ConstructionPlan::optimal(&g).unwrap();
        let (chi_c, _) = params::circular_chromatic_number(&g.complement()).unwrap();
        let code = plan.code(PrimeField::new(q).unwrap()).unwrap();
        prop_assert_eq!(code.rate(), chi_c);
        // every symbol is sent in exactly one transmission
        for c in 0..g.n() * code.t() {
            let ones = oracle::column(&code, c).iter().filter(|&&x| x != 0).count();
            prop_assert_eq!(ones, 1);
        }
        if g.n() * code.t() <= 10 {
            prop_assert!(oracle::valid(&g, &code));
        }
    }

    #[test]
    fn json_round_trips((g, code) in graph_and_code()) {
        let text = serde_json::to_string(&g).unwrap();
        prop_assert_eq!(serde_json::from_str::<SideInfoGraph>(&text).unwrap(), g);
        let text = serde_json::to_string(&code).unwrap();
        prop_assert_eq!(serde_json::from_str::<LinearIndexCode>(&text).unwrap(), code.clone());
        let rate = serde_json::to_string(&code.rate()).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rational>(&rate).unwrap(), code.rate());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn circular_cliques_have_chi_c_k_over_d(k in 2usize..=10, d_frac in 0.0f64..1.0) {
        let d = 1 + ((k / 2 - 1) as f64 * d_frac) as usize;
        let g = circular_clique(k, d).unwrap();
        let (chi_c, coloring) = params::circular_chromatic_number(&g).unwrap();
        prop_assert_eq!(chi_c, Rational::new(k as u64, d as u64).unwrap());
        prop_assert!(coloring.verify(&g).is_ok());
        prop_assert_eq!(params::circular_clique_number(&g).unwrap(), chi_c);
    }

    #[test]
    fn confusion_monotone_under_induced_subgraphs(g in graph(5), t in 1usize..=2, keep in any::<u8>()) {
        prop_assume!(g.n() * t <= 8);
        let subset: Vec<usize> = (0..g.n()).filter(|&v| keep >> v & 1 == 1).collect();
        prop_assume!(!subset.is_empty());
        let f = PrimeField::new(2).unwrap();
        let gamma = ConfusionGraph::new(&g, t, f).unwrap();
        let (small, map) = gamma.embedding(&subset, 0).unwrap();
        for x in 0..small.vertex_count() {
            for y in x + 1..small.vertex_count() {
                if small.edge(x, y).unwrap() {
                    prop_assert!(gamma.edge(map[x], map[y]).unwrap());
                }
            }
        }
        let big = gamma.clique_number(None);
        prop_assert!(small.clique_number(None) <= big);
        prop_assert_eq!(big, oracle::confusion_clique_number(&g, t, 2));
    }
}
