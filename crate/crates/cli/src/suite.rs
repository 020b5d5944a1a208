//! The reproducible experiment battery behind `circix suite`.
//!
//! One CSV row per (graph, q, t). For a row with message length `t` the code
//! is the optimal construction repeated `t / d` times when `d` divides `t`,
//! and otherwise the construction from a minimum proper coloring of the
//! complement repeated `t` times. Confusion-graph columns are empty when the
//! graph exceeds the vertex limit. Named checks that do not fit the row
//! layout are listed separately in the JSON summary.

use std::collections::BTreeMap;

use anyhow::Result;
use circix::confusion::ConfusionGraph;
use circix::construction::{build_code, ConstructionPlan};
use circix::graphs::{
    circular_clique, complete, cycle, edgeless, interlacing_graph, join_at_vertex, nonisomorphic_graphs, random_digraph,
};
use circix::ng::{self, BoundStatus};
use circix::{limits, params, search, CircularColoring, LinearIndexCode, PrimeField, Rational, SideInfoGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub graph: String,
    pub n: usize,
    pub edges: usize,
    pub q: u32,
    pub t: usize,
    pub omega: usize,
    pub omega_c: Rational,
    pub chi_c: Rational,
    pub chi: usize,
    pub circular_perfect: Option<bool>,
    pub code_len: usize,
    pub code_rate: Rational,
    pub valid: bool,
    pub decode_ok: bool,
    pub confusion_omega: Option<usize>,
    pub confusion_bound: Option<String>,
    pub beta_sl: Option<usize>,
    pub tensor_rank: usize,
    pub tensor_expected: usize,
    pub pass: bool,
    pub failures: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub seed: u64,
    pub max_n: usize,
    pub q: Vec<u32>,
    pub rows: usize,
    pub failed_rows: Vec<String>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

pub struct SuiteOutput {
    pub rows: Vec<Row>,
    pub summary: Summary,
}

impl SuiteOutput {
    pub fn csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row)?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }
}

fn suite_graphs(max_n: usize) -> Result<Vec<(String, SideInfoGraph)>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for (idx, g) in nonisomorphic_graphs(n)?.into_iter().enumerate() {
            out.push((format!("iso{n}-{idx:03}"), g));
        }
    }
    out.push(("cycle5-complement".into(), cycle(5)?.complement()));
    for (p, q) in [(5, 2), (7, 2), (9, 3), (8, 3)] {
        out.push((format!("circular-clique{p}-{q}"), circular_clique(p, q)?));
    }
    for n in [7, 9] {
        out.push((format!("cycle{n}-complement"), cycle(n)?.complement()));
    }
    out.push(("join-k3-e3".into(), join_at_vertex(&complete(3)?, &edgeless(3)?)?));
    out.push(("single-edge3".into(), SideInfoGraph::from_edges(3, &[(0, 1)])?));
    out.push((
        "interlacing7-3-2-complement".into(),
        interlacing_graph(7, 3, 2)?.complement(),
    ));
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Parameters of the complement, shared by all rows of one graph.
struct GraphFacts {
    report: params::ParamReport,
    circular_perfect: Option<bool>,
    plan: ConstructionPlan,
    chromatic: CircularColoring,
    complement_plan: ConstructionPlan,
    complement_chromatic: CircularColoring,
}

fn chromatic_coloring(g: &SideInfoGraph) -> Result<CircularColoring> {
    let assignment = params::optimal_coloring(g)?;
    let k = assignment.iter().max().map_or(1, |&c| c + 1);
    Ok(CircularColoring { k, d: 1, assignment })
}

fn facts(g: &SideInfoGraph) -> Result<GraphFacts> {
    let complement = g.complement();
    let circular_perfect = if limits::check("vertices", g.n(), limits::CIRCULAR_PERFECT_MAX_N).is_ok() {
        Some(params::is_circular_perfect(&complement)?)
    } else {
        None
    };
    Ok(GraphFacts {
        report: params::param_report(&complement)?,
        circular_perfect,
        plan: ConstructionPlan::optimal(g)?,
        chromatic: chromatic_coloring(&complement)?,
        complement_plan: ConstructionPlan::optimal(&complement)?,
        complement_chromatic: chromatic_coloring(g)?,
    })
}

/// Code for message length `t` per the rule in the module docs.
fn code_for(
    g: &SideInfoGraph,
    plan: &ConstructionPlan,
    chromatic: &CircularColoring,
    field: PrimeField,
    t: usize,
) -> Result<LinearIndexCode> {
    if t.is_multiple_of(plan.d()) {
        Ok(plan.code(field)?.repeat(t / plan.d())?)
    } else {
        Ok(build_code(g, chromatic, field)?.repeat(t)?)
    }
}

fn decode_round_trip(g: &SideInfoGraph, code: &LinearIndexCode, rng: &mut ChaCha8Rng) -> Result<bool> {
    let q = code.field().q();
    let x: Vec<Vec<u32>> = (0..g.n())
        .map(|_| (0..code.t()).map(|_| rng.gen_range(0..q)).collect())
        .collect();
    let word = code.encode(&x)?;
    for i in 0..g.n() {
        let side: BTreeMap<usize, Vec<u32>> = g.side_info_set(i).into_iter().map(|u| (u, x[u].clone())).collect();
        if code.decode(g, i, &word, &side)? != x[i] {
            return Ok(false);
        }
    }
    Ok(true)
}

fn row(
    name: &str,
    g: &SideInfoGraph,
    facts: &GraphFacts,
    field: PrimeField,
    t: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Row> {
    let mut failures = Vec::new();
    let mut expect = |ok: bool, what: &str| {
        if !ok {
            failures.push(what.to_string());
        }
    };
    let p = &facts.report;
    let omega_r = Rational::integer(p.omega as u64)?;
    let chi_r = Rational::integer(p.chi as u64)?;
    expect(
        omega_r <= p.omega_c && p.omega_c <= p.chi_c && p.chi_c <= chi_r,
        "chain",
    );
    expect(p.omega_c.floor() == p.omega as u64, "omega = floor(omega_c)");
    expect(p.chi_c.ceil() == p.chi as u64, "chi = ceil(chi_c)");
    if facts.circular_perfect == Some(true) {
        expect(p.omega_c == p.chi_c, "circular perfect complement: omega_c = chi_c");
    }

    let code = code_for(g, &facts.plan, &facts.chromatic, field, t)?;
    let valid = code.is_valid(g)?;
    expect(valid, "code valid");
    expect(code.rate() <= chi_r, "code rate <= chi");
    let decode_ok = valid && decode_round_trip(g, &code, rng)?;
    expect(decode_ok, "decode round trip");

    let q = field.q() as usize;
    let (confusion_omega, confusion_bound) = match ConfusionGraph::new(g, t, field) {
        Ok(gamma) => {
            let omega = gamma.clique_number(Some(code.len()));
            let bound = circix::ConfusionBound::from_omega(omega, gamma.vertex_count(), t, field.q())?;
            let cap = u32::try_from(code.len()).ok().and_then(|l| q.checked_pow(l));
            expect(cap.is_none_or(|c| omega <= c), "confusion clique <= q^l");
            (Some(omega), Some(bound.bound_string()))
        }
        Err(circix::Error::TooLarge { .. }) => (None, None),
        Err(e) => return Err(e.into()),
    };

    let beta_sl = if t == 1
        && limits::check("vertices", g.n(), limits::SEARCH_MAX_N).is_ok()
        && field.q() as usize <= search::SEARCH_MAX_Q
    {
        let (l, _) = search::beta_scalar_exhaustive(g, field, g.n())?.expect("uncoded code has length n");
        expect(
            p.omega_c.ceil() <= l as u64 && l <= p.chi,
            "ceil(omega_c) <= beta_sl <= chi",
        );
        if let Some(omega) = confusion_omega {
            expect(omega <= q.pow(l as u32), "confusion clique <= q^beta_sl");
        }
        Some(l)
    } else {
        None
    };

    let complement = g.complement();
    let other = code_for(
        &complement,
        &facts.complement_plan,
        &facts.complement_chromatic,
        field,
        t,
    )?;
    let tensor = ng::tensor_rank_check(g, &code, &other)?;
    expect(tensor.rank_ok, "tensor rank n t^2");

    Ok(Row {
        graph: name.to_string(),
        n: g.n(),
        edges: g.edge_count(),
        q: field.q(),
        t,
        omega: p.omega,
        omega_c: p.omega_c,
        chi_c: p.chi_c,
        chi: p.chi,
        circular_perfect: facts.circular_perfect,
        code_len: code.len(),
        code_rate: code.rate(),
        valid,
        decode_ok,
        confusion_omega,
        confusion_bound,
        beta_sl,
        tensor_rank: tensor.rank,
        tensor_expected: tensor.expected,
        pass: failures.is_empty(),
        failures: failures.join("; "),
    })
}

fn check(name: &str, pass: bool, detail: String) -> Check {
    Check {
        name: name.to_string(),
        pass,
        detail,
    }
}

fn named_checks(seed: u64) -> Result<Vec<Check>> {
    let f2 = PrimeField::new(2)?;
    let mut checks = Vec::new();

    let c5 = cycle(5)?;
    let report = search::sandwich_report(&c5.complement(), f2)?;
    checks.push(check(
        "pentagon-beta",
        report.beta == Some(Rational::new(5, 2)?) && report.violations.is_empty(),
        format!(
            "beta {:?}, violations {:?}",
            report.beta.map(|r| r.to_string()),
            report.violations
        ),
    ));
    let (beta_sl, _) = search::beta_scalar_exhaustive(&c5, f2, 5)?.expect("uncoded code exists");
    checks.push(check("pentagon-beta-sl", beta_sl == 3, format!("beta_sl {beta_sl}")));

    for (p, q) in [(5usize, 2usize), (7, 2), (9, 3), (8, 3)] {
        let web = circular_clique(p, q)?.complement();
        let expected = q == 2 || p == 2 * q || p == 2 * q + 1 || (q == 3 && p % 3 == 0);
        let perfect = params::is_circular_perfect(&web)?;
        let (chi_c, _) = params::circular_chromatic_number(&web)?;
        let closed = Rational::new(p as u64, (p / q) as u64)?;
        let mut pass = perfect == expected;
        if perfect {
            let code = ConstructionPlan::optimal(&circular_clique(p, q)?)?.code(f2)?;
            pass &= chi_c == closed && code.rate() == closed;
        }
        checks.push(check(
            &format!("web{p}-{q}"),
            pass,
            format!("circular perfect {perfect} (expected {expected}), chi_c {chi_c}, closed form {closed}"),
        ));
    }

    for d in [3u64, 4] {
        let n = 2 * d as usize + 1;
        let g = cycle(n)?.complement();
        let plan = ConstructionPlan::optimal(&g)?;
        let omega_c = params::circular_clique_number(&cycle(n)?)?;
        let target = Rational::new(2 * d + 1, d)?;
        checks.push(check(
            &format!("odd-cycle{n}"),
            plan.rate()? == target && omega_c == target && plan.code(f2)?.is_valid(&g)?,
            format!("rate {}, omega_c {omega_c}", plan.rate()?),
        ));
    }

    for n in 1..=5 {
        let rep = ng::product_bound_report(&complete(n)?, f2)?;
        checks.push(check(
            &format!("ng-complete{n}"),
            rep.lower_equality,
            format!("product {}", rep.product),
        ));
    }
    let join = join_at_vertex(&complete(3)?, &edgeless(3)?)?;
    let prod = ng::product_bound_report(&join, f2)?;
    let sum = ng::sum_bound_report(&join, f2)?;
    checks.push(check(
        "ng-join-k3-e3",
        prod.upper_equality && sum.upper_equality,
        format!("product {}, sum {}", prod.product, sum.sum),
    ));
    let single = ng::product_bound_report(&SideInfoGraph::from_edges(3, &[(0, 1)])?, f2)?;
    checks.push(check(
        "ng-single-edge3",
        single.strictly_above_n && single.status != BoundStatus::Inconclusive,
        format!("product {}", single.product),
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lemma_ok = 0;
    for trial in 0..200 {
        let field = PrimeField::new(if trial % 2 == 0 { 2 } else { 3 })?;
        lemma_ok += ng::random_tensor_lemma_trial(&mut rng, field, 2 + trial % 3)? as usize;
    }
    checks.push(check("tensor-lemma", lemma_ok == 200, format!("{lemma_ok}/200")));

    let mut monotone = 0;
    for trial in 0..10u64 {
        let n = 3 + (trial % 3) as usize;
        let g = random_digraph(n, 0.4, seed.wrapping_add(trial))?;
        let gamma = ConfusionGraph::new(&g, 1, f2)?;
        let subset: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.6)).collect();
        if subset.is_empty() {
            monotone += 1;
            continue;
        }
        let (small, _) = gamma.embedding(&subset, 0)?;
        monotone += (small.clique_number(None) <= gamma.clique_number(None)) as usize;
    }
    checks.push(check("confusion-monotone", monotone == 10, format!("{monotone}/10")));
    Ok(checks)
}

pub fn run(max_n: usize, qs: &[u32], seed: u64) -> Result<SuiteOutput> {
    let mut qs = qs.to_vec();
    qs.sort_unstable();
    qs.dedup();
    let fields: Vec<PrimeField> = qs.iter().map(|&q| PrimeField::new(q)).collect::<circix::Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for (name, g) in suite_graphs(max_n)? {
        let facts = facts(&g)?;
        for &field in &fields {
            for t in [1, 2] {
                rows.push(row(&name, &g, &facts, field, t, &mut rng)?);
            }
        }
    }
    let checks = named_checks(seed)?;
    let failed_rows: Vec<String> = rows
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{} q={} t={}: {}", r.graph, r.q, r.t, r.failures))
        .collect();
    let pass = failed_rows.is_empty() && checks.iter().all(|c| c.pass);
    Ok(SuiteOutput {
        summary: Summary {
            seed,
            max_n,
            q: qs,
            rows: rows.len(),
            failed_rows,
            checks,
            pass,
        },
        rows,
    })
}
