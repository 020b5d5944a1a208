//! Exhaustive search for optimal scalar linear codes, and the report that
//! places it among the other bounds on the broadcast rate.
//!
//! Validity of a code depends only on the rowspace of its encoding matrix,
//! so the search walks the reduced row echelon forms of full rank, one per
//! subspace, instead of all matrices.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::confusion::{ConfusionBound, ConfusionGraph};
use crate::construction::ConstructionPlan;
use crate::error::{Error, Result};
use crate::gf::{GFMatrix, PrimeField};
use crate::graphs::SideInfoGraph;
use crate::index_code::LinearIndexCode;
use crate::limits;
use crate::params;
use crate::rational::Rational;

/// Largest field searched without the limit override.
pub const SEARCH_MAX_Q: usize = 3;

/// All `l x n` matrices over `field` in reduced row echelon form with `l`
/// pivots, pivot sets in lexicographic order.
pub fn rref_forms(field: PrimeField, l: usize, n: usize) -> impl Iterator<Item = GFMatrix> {
    let q = field.q();
    (0..n).combinations(l).flat_map(move |pivots| {
        // free entries: row r, non-pivot columns right of its pivot
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| {
                (p + 1..n)
                    .filter(|c| !pivots.contains(c))
                    .map(move |c| (r, c))
                    .collect_vec()
            })
            .collect();
        let count = (q as usize).pow(free.len() as u32);
        (0..count).map(move |mut code| {
            let mut m = GFMatrix::zeros(field, l, n);
            for (r, &p) in pivots.iter().enumerate() {
                m.set(r, p, 1);
            }
            for &(r, c) in free.iter().rev() {
                m.set(r, c, (code % q as usize) as u32);
                code /= q as usize;
            }
            m
        })
    })
}

fn check_search(g: &SideInfoGraph, field: PrimeField, l_max: usize) -> Result<()> {
    limits::check("vertices", g.n(), limits::SEARCH_MAX_N)?;
    limits::check("field size", field.q() as usize, SEARCH_MAX_Q)?;
    if l_max == 0 || l_max > g.n() {
        return Err(Error::InvalidParameter(format!(
            "l_max must be in 1..={}, got {l_max}",
            g.n()
        )));
    }
    Ok(())
}

/// Smallest `l <= l_max` with a valid scalar linear code of length `l`, and
/// the lexicographically least such encoding matrix in reduced row echelon
/// form. `None` when no length up to `l_max` works.
pub fn beta_scalar_exhaustive(
    g: &SideInfoGraph,
    field: PrimeField,
    l_max: usize,
) -> Result<Option<(usize, LinearIndexCode)>> {
    check_search(g, field, l_max)?;
    let n = g.n();
    for l in 1..=l_max {
        let mut best: Option<LinearIndexCode> = None;
        for b in rref_forms(field, l, n) {
            if best.as_ref().is_some_and(|w| w.matrix().entries() <= b.entries()) {
                continue;
            }
            let code = LinearIndexCode::new(n, 1, b)?;
            if code.is_valid(g)? {
                best = Some(code);
            }
        }
        if let Some(code) = best {
            return Ok(Some((l, code)));
        }
    }
    Ok(None)
}

/// Rates and bounds for one undirected graph `G`, mostly computed on its
/// complement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SandwichReport {
    pub n: usize,
    pub q: u32,
    /// `ω(Ḡ)`.
    pub omega: usize,
    /// `ω_c(Ḡ)`.
    pub omega_c: Rational,
    /// Confusion-graph bound for single-symbol messages.
    pub confusion: ConfusionBound,
    /// `χ_c(Ḡ)`, the rate of the constructed code.
    pub constructed_rate: Rational,
    pub construction_k: usize,
    pub construction_d: usize,
    /// Scalar linear optimum, when the graph is small enough to search.
    pub beta_sl: Option<usize>,
    /// `χ(Ḡ)`.
    pub chi: usize,
    pub complement_perfect: bool,
    pub complement_circular_perfect: bool,
    /// Set when the lower bound `ω_c(Ḡ)` meets the constructed rate.
    pub beta_determined: bool,
    pub beta: Option<Rational>,
    /// Failed consistency checks; empty when all bounds agree.
    pub violations: Vec<String>,
}

pub fn sandwich_report(g: &SideInfoGraph, field: PrimeField) -> Result<SandwichReport> {
    g.require_undirected()?;
    let complement = g.complement();
    let omega = params::clique_number(&complement)?;
    let chi = params::chromatic_number(&complement)?;
    let omega_c = params::circular_clique_number(&complement)?;
    let plan = ConstructionPlan::optimal(g)?;
    let code = plan.code(field)?;
    let constructed_rate = code.rate();
    let beta_sl = if limits::check("vertices", g.n(), limits::SEARCH_MAX_N).is_ok() {
        let (l, _) = beta_scalar_exhaustive(g, field, g.n())?
            .ok_or_else(|| Error::InvalidCode("no scalar code up to length n".into()))?;
        Some(l)
    } else {
        None
    };
    let gamma = ConfusionGraph::new(g, 1, field)?;
    let omega_gamma = gamma.clique_number(Some(beta_sl.unwrap_or(chi)));
    let confusion = ConfusionBound::from_omega(omega_gamma, gamma.vertex_count(), 1, field.q())?;
    let complement_perfect = params::is_perfect(&complement)?;
    let complement_circular_perfect = params::is_circular_perfect(&complement)?;

    let mut violations = Vec::new();
    let mut expect = |ok: bool, what: &str| {
        if !ok {
            violations.push(what.to_string());
        }
    };
    let omega_r = Rational::integer(omega as u64)?;
    let chi_r = Rational::integer(chi as u64)?;
    expect(omega_r <= omega_c, "omega <= omega_c");
    expect(omega_c <= constructed_rate, "omega_c <= constructed rate");
    expect(constructed_rate <= chi_r, "constructed rate <= chi");
    if let Some(b) = beta_sl {
        expect(omega_c.ceil() <= b as u64, "ceil(omega_c) <= beta_sl");
        expect(b <= chi, "beta_sl <= chi");
    }
    expect(omega_c.floor() == omega as u64, "omega = floor(omega_c)");
    expect(constructed_rate.ceil() == chi as u64, "chi = ceil(chi_c)");
    let q_pow = (field.q() as usize).checked_pow(beta_sl.unwrap_or(chi) as u32);
    expect(
        q_pow.is_none_or(|p| confusion.omega <= p),
        "confusion clique <= q^l for a valid scalar code",
    );
    expect(
        !complement_perfect || omega == chi,
        "perfect complement has omega = chi",
    );
    expect(
        !complement_perfect || complement_circular_perfect,
        "perfect complement is circular perfect",
    );
    expect(
        !complement_circular_perfect || omega_c == constructed_rate,
        "circular perfect complement has omega_c = chi_c",
    );

    let beta_determined = omega_c == constructed_rate;
    Ok(SandwichReport {
        n: g.n(),
        q: field.q(),
        omega,
        omega_c,
        confusion,
        constructed_rate,
        construction_k: plan.k(),
        construction_d: plan.d(),
        beta_sl,
        chi,
        complement_perfect,
        complement_circular_perfect,
        beta_determined,
        beta: beta_determined.then_some(constructed_rate),
        violations,
    })
}
