//! Nordhaus-Gaddum type bounds for the vector linear rate of a graph and its
//! complement.
//!
//! For valid codes `B` of `G` and `C` of its complement with a common message
//! length `t`, the vectors `B^{ij} ⊗ C^{i,j1}` are linearly independent, so
//! the product of the code lengths is at least `n t^2`. The reports below
//! bracket each rate between `ω_c` of the complement and the rate of the
//! constructed code, and check products and sums of these intervals against
//! `n <= β_vl(G) β_vl(Ḡ) <= ((n+1)/2)^2` and `2 sqrt(n) <= β_vl(G) + β_vl(Ḡ) <= n+1`.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::construction::ConstructionPlan;
use crate::error::{Error, Result};
use crate::gf::{self, GFMatrix, PrimeField, SpanBasis};
use crate::graphs::SideInfoGraph;
use crate::index_code::LinearIndexCode;
use crate::params;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorRankReport {
    pub n: usize,
    /// Common message length after time-sharing.
    pub t: usize,
    pub l1: usize,
    pub l2: usize,
    pub rank: usize,
    /// `n t^2`.
    pub expected: usize,
    pub rank_ok: bool,
    /// `l1 l2 >= n t^2`.
    pub length_product_ok: bool,
}

/// The matrix with columns `B^{ij} ⊗ C^{i,j1}`, ordered by `(i, j, j1)`.
pub fn tensor_matrix(b: &LinearIndexCode, c: &LinearIndexCode) -> Result<GFMatrix> {
    let field = b.field();
    let (n, t) = (b.n(), b.t());
    let mut columns = Vec::with_capacity(n * t * t);
    for i in 0..n {
        for j in 0..t {
            let bij = b.column(i, j);
            for j1 in 0..t {
                columns.push(gf::kron_vec(field, &bij, &c.column(i, j1)));
            }
        }
    }
    GFMatrix::from_columns(field, b.len() * c.len(), &columns)
}

/// Rank of the tensor matrix for a code `b` of `g` and a code `c` of its
/// complement. Unequal message lengths `t1, t2` are first brought to
/// `t1 t2` by repeating each code.
pub fn tensor_rank_check(g: &SideInfoGraph, b: &LinearIndexCode, c: &LinearIndexCode) -> Result<TensorRankReport> {
    if b.field() != c.field() {
        return Err(Error::FieldMismatch {
            left: b.field().q(),
            right: c.field().q(),
        });
    }
    if b.n() != g.n() || c.n() != g.n() {
        return Err(Error::DimensionMismatch(format!(
            "codes for {} and {} messages on a graph with {} vertices",
            b.n(),
            c.n(),
            g.n()
        )));
    }
    if !b.is_valid(g)? {
        return Err(Error::InvalidCode("first code is not valid for the graph".into()));
    }
    if !c.is_valid(&g.complement())? {
        return Err(Error::InvalidCode("second code is not valid for the complement".into()));
    }
    let (b, c) = if b.t() == c.t() {
        (b.clone(), c.clone())
    } else {
        (b.repeat(c.t())?, c.repeat(b.t())?)
    };
    let f = tensor_matrix(&b, &c)?;
    let rank = f.rank();
    let (n, t) = (g.n(), b.t());
    let expected = n * t * t;
    Ok(TensorRankReport {
        n,
        t,
        l1: b.len(),
        l2: c.len(),
        rank,
        expected,
        rank_ok: rank == expected,
        length_product_ok: b.len() * c.len() >= expected,
    })
}

/// Whether `v ⊗ w` lies outside the span of `{a ⊗ d : a in A1, d in D}` and
/// `{e ⊗ b : e in E, b in A2}`. Requires `v`, `w` nonzero with `v` outside
/// `span(A1)` and `w` outside `span(A2)`, and `D`, `E` nonempty.
pub fn tensor_lemma_check(
    field: PrimeField,
    v: &[u32],
    w: &[u32],
    a1: &[Vec<u32>],
    a2: &[Vec<u32>],
    d: &[Vec<u32>],
    e: &[Vec<u32>],
) -> Result<bool> {
    if d.is_empty() || e.is_empty() {
        return Err(Error::InvalidParameter("D and E must be nonempty".into()));
    }
    if v.iter().all(|&x| x % field.q() == 0) || w.iter().all(|&x| x % field.q() == 0) {
        return Err(Error::InvalidParameter("v and w must be nonzero".into()));
    }
    if gf::in_span(field, v, a1)? || gf::in_span(field, w, a2)? {
        return Err(Error::InvalidParameter("v must avoid span(A1) and w span(A2)".into()));
    }
    let mut span = SpanBasis::new(field, v.len() * w.len());
    for a in a1 {
        for x in d {
            span.insert(&gf::kron_vec(field, a, x))?;
        }
    }
    for x in e {
        for b in a2 {
            span.insert(&gf::kron_vec(field, x, b))?;
        }
    }
    Ok(!span.contains(&gf::kron_vec(field, v, w))?)
}

/// One random instance of [`tensor_lemma_check`] in dimension `dim`:
/// `A1`, `A2` of up to `dim - 1` vectors, `D`, `E` of 1 to `dim + 1` vectors,
/// `v`, `w` redrawn until the preconditions hold.
pub fn random_tensor_lemma_trial<R: Rng>(rng: &mut R, field: PrimeField, dim: usize) -> Result<bool> {
    if dim == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    let q = field.q();
    let vector = |rng: &mut R| -> Vec<u32> { (0..dim).map(|_| rng.gen_range(0..q)).collect() };
    let set = |rng: &mut R, lo: usize, hi: usize| -> Vec<Vec<u32>> {
        let size = rng.gen_range(lo..=hi);
        (0..size).map(|_| vector(rng)).collect()
    };
    let a1 = set(rng, 0, dim - 1);
    let a2 = set(rng, 0, dim - 1);
    let d = set(rng, 1, dim + 1);
    let e = set(rng, 1, dim + 1);
    let draw_outside = |rng: &mut R, span: &[Vec<u32>]| -> Result<Vec<u32>> {
        loop {
            let x: Vec<u32> = (0..dim).map(|_| rng.gen_range(0..q)).collect();
            if !gf::in_span(field, &x, span)? {
                return Ok(x);
            }
        }
    };
    let v = draw_outside(rng, &a1)?;
    let w = draw_outside(rng, &a2)?;
    tensor_lemma_check(field, &v, &w, &a1, &a2, &d, &e)
}

/// Closed interval of rates with rational endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RateInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RateInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidParameter(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(RateInterval { lo, hi })
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn value(&self) -> Option<Rational> {
        self.is_point().then_some(self.lo)
    }

    pub fn contains(&self, x: Rational) -> bool {
        self.lo <= x && x <= self.hi
    }
}

impl fmt::Display for RateInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundStatus {
    /// Both rates are known exactly and the bound holds with equality.
    EqualityCertified,
    /// The certified lower bounds alone establish the inequality.
    BoundVerified,
    Inconclusive,
}

/// `[ω_c(Ḡ), χ_c(Ḡ)]`: a certified interval for the vector linear rate of
/// `G`. The upper end is the rate of a constructed code, which is checked.
pub fn rate_interval(g: &SideInfoGraph, field: PrimeField) -> Result<RateInterval> {
    g.require_undirected()?;
    let complement = g.complement();
    let lo = params::circular_clique_number(&complement)?;
    let omega = Rational::integer(params::clique_number(&complement)? as u64)?;
    let code = ConstructionPlan::optimal(g)?.code(field)?;
    RateInterval::new(lo.max(omega), code.rate())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductReport {
    pub n: usize,
    pub graph: RateInterval,
    pub complement: RateInterval,
    pub product: RateInterval,
    /// The product interval meets `[n, ((n+1)/2)^2]`.
    pub consistent: bool,
    /// Certified `β_vl(G) β_vl(Ḡ) = n`.
    pub lower_equality: bool,
    /// Certified `β_vl(G) β_vl(Ḡ) = ((n+1)/2)^2`.
    pub upper_equality: bool,
    /// Certified `β_vl(G) β_vl(Ḡ) > n`.
    pub strictly_above_n: bool,
    pub status: BoundStatus,
}

fn upper_product(n: usize) -> Result<Rational> {
    Rational::new(((n + 1) * (n + 1)) as u64, 4)
}

pub fn product_bound_report(g: &SideInfoGraph, field: PrimeField) -> Result<ProductReport> {
    let graph = rate_interval(g, field)?;
    let complement = rate_interval(&g.complement(), field)?;
    product_from_intervals(g.n(), graph, complement)
}

fn product_from_intervals(n: usize, graph: RateInterval, complement: RateInterval) -> Result<ProductReport> {
    let product = RateInterval::new(graph.lo * complement.lo, graph.hi * complement.hi)?;
    let n_r = Rational::integer(n as u64)?;
    let top = upper_product(n)?;
    let consistent = product.hi >= n_r && product.lo <= top;
    let exact = product.value();
    let lower_equality = exact == Some(n_r);
    let upper_equality = exact == Some(top);
    let strictly_above_n = product.lo > n_r;
    let status = if lower_equality || upper_equality {
        BoundStatus::EqualityCertified
    } else if product.lo >= n_r {
        BoundStatus::BoundVerified
    } else {
        BoundStatus::Inconclusive
    };
    Ok(ProductReport {
        n,
        graph,
        complement,
        product,
        consistent,
        lower_equality,
        upper_equality,
        strictly_above_n,
        status,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumReport {
    pub n: usize,
    pub sum: RateInterval,
    /// `χ(G) + χ(Ḡ)`, never more than `n + 1`.
    pub chromatic_sum: usize,
    /// The sum interval meets `[2 sqrt(n), n+1]` and the chromatic sum is at
    /// most `n + 1`.
    pub consistent: bool,
    /// The lower end alone reaches `2 sqrt(n)`.
    pub lower_bound_certified: bool,
    /// The interval admits a sum of exactly `2 sqrt(n)`.
    pub lower_equality_possible: bool,
    /// The interval admits a sum of exactly `n + 1`.
    pub upper_equality_possible: bool,
    pub lower_equality: bool,
    pub upper_equality: bool,
    pub status: BoundStatus,
}

pub fn sum_bound_report(g: &SideInfoGraph, field: PrimeField) -> Result<SumReport> {
    let graph = rate_interval(g, field)?;
    let complement = rate_interval(&g.complement(), field)?;
    let chromatic_sum = params::chromatic_number(g)? + params::chromatic_number(&g.complement())?;
    sum_from_intervals(g.n(), graph, complement, chromatic_sum)
}

fn sum_from_intervals(
    n: usize,
    graph: RateInterval,
    complement: RateInterval,
    chromatic_sum: usize,
) -> Result<SumReport> {
    use std::cmp::Ordering::*;
    let sum = RateInterval::new(graph.lo + complement.lo, graph.hi + complement.hi)?;
    let top = Rational::integer(n as u64 + 1)?;
    let four_n = 4 * n as u64;
    let consistent = sum.lo <= top && sum.hi.square_cmp(four_n) != Less && chromatic_sum <= n + 1;
    let lower_bound_certified = sum.lo.square_cmp(four_n) != Less;
    let lower_equality_possible = sum.lo.square_cmp(four_n) != Greater && sum.hi.square_cmp(four_n) != Less;
    let upper_equality_possible = sum.contains(top);
    let lower_equality = sum.is_point() && sum.lo.square_cmp(four_n) == Equal;
    let upper_equality = sum.value() == Some(top);
    let status = if lower_equality || upper_equality {
        BoundStatus::EqualityCertified
    } else if lower_bound_certified && sum.hi <= top {
        BoundStatus::BoundVerified
    } else {
        BoundStatus::Inconclusive
    };
    Ok(SumReport {
        n,
        sum,
        chromatic_sum,
        consistent,
        lower_bound_certified,
        lower_equality_possible,
        upper_equality_possible,
        lower_equality,
        upper_equality,
        status,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NgReport {
    pub product: ProductReport,
    pub sum: SumReport,
    /// Tensor rank check on the two constructed codes.
    pub tensor: TensorRankReport,
}

pub fn ng_report(g: &SideInfoGraph, field: PrimeField) -> Result<NgReport> {
    let b = ConstructionPlan::optimal(g)?.code(field)?;
    let c = ConstructionPlan::optimal(&g.complement())?.code(field)?;
    Ok(NgReport {
        product: product_bound_report(g, field)?,
        sum: sum_bound_report(g, field)?,
        tensor: tensor_rank_check(g, &b, &c)?,
    })
}
