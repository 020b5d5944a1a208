//! Vector linear index codes.
//!
//! A code for `n` messages of `t` symbols each is an `l x nt` encoding
//! matrix `B` over F_q; the transmitted codeword is `B x`. Column `i*t + j`
//! of `B` is the precoding vector of symbol `j` of message `i`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{self, GFMatrix, PrimeField, SpanBasis};
use crate::graphs::{bits, SideInfoGraph};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CodeJson", into = "CodeJson")]
pub struct LinearIndexCode {
    n: usize,
    t: usize,
    b: GFMatrix,
}

/// Wire form: `{"q": int, "n": int, "t": int, "l": int, "B": matrix}`.
#[derive(Serialize, Deserialize)]
struct CodeJson {
    q: u32,
    n: usize,
    t: usize,
    l: usize,
    #[serde(rename = "B")]
    b: GFMatrix,
}

impl TryFrom<CodeJson> for LinearIndexCode {
    type Error = Error;

    fn try_from(raw: CodeJson) -> Result<Self> {
        if raw.b.field().q() != raw.q {
            return Err(Error::FieldMismatch {
                left: raw.q,
                right: raw.b.field().q(),
            });
        }
        if raw.b.rows() != raw.l {
            return Err(Error::DimensionMismatch(format!(
                "l = {} but B has {} rows",
                raw.l,
                raw.b.rows()
            )));
        }
        LinearIndexCode::new(raw.n, raw.t, raw.b)
    }
}

impl From<LinearIndexCode> for CodeJson {
    fn from(c: LinearIndexCode) -> Self {
        CodeJson {
            q: c.b.field().q(),
            n: c.n,
            t: c.t,
            l: c.b.rows(),
            b: c.b,
        }
    }
}

impl LinearIndexCode {
    pub fn new(n: usize, t: usize, b: GFMatrix) -> Result<Self> {
        if n == 0 || t == 0 {
            return Err(Error::InvalidCode(format!("need n, t >= 1, got n={n} t={t}")));
        }
        if b.rows() == 0 {
            return Err(Error::InvalidCode("code length must be at least 1".into()));
        }
        if b.cols() != n * t {
            return Err(Error::DimensionMismatch(format!(
                "B has {} columns, expected n*t = {}",
                b.cols(),
                n * t
            )));
        }
        Ok(LinearIndexCode { n, t, b })
    }

    /// Uncoded transmission: `B = I_{nt}`.
    pub fn uncoded(field: PrimeField, n: usize, t: usize) -> Result<Self> {
        Self::new(n, t, GFMatrix::identity(field, n * t))
    }

    pub fn field(&self) -> PrimeField {
        self.b.field()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Code length `l`.
    pub fn len(&self) -> usize {
        self.b.rows()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn matrix(&self) -> &GFMatrix {
        &self.b
    }

    pub fn rate(&self) -> Rational {
        Rational::new(self.len() as u64, self.t as u64).expect("l, t >= 1")
    }

    #[inline]
    pub fn column_index(&self, i: usize, j: usize) -> usize {
        i * self.t + j
    }

    /// Precoding vector `B^{ij}`.
    pub fn column(&self, i: usize, j: usize) -> Vec<u32> {
        self.b.column(self.column_index(i, j))
    }

    /// Time-sharing over `copies` independent uses of the code: message
    /// length `t * copies`, code length `l * copies`, block-diagonal in the
    /// copies. Validity is preserved.
    pub fn repeat(&self, copies: usize) -> Result<Self> {
        if copies == 0 {
            return Err(Error::InvalidParameter("repeat needs at least one copy".into()));
        }
        let (l, t) = (self.len(), self.t);
        let t2 = t * copies;
        let mut b = GFMatrix::zeros(self.field(), l * copies, self.n * t2);
        for c in 0..copies {
            for r in 0..l {
                for i in 0..self.n {
                    for j in 0..t {
                        b.set(c * l + r, i * t2 + c * t + j, self.b.get(r, i * t + j));
                    }
                }
            }
        }
        Self::new(self.n, t2, b)
    }

    fn check_graph(&self, g: &SideInfoGraph) -> Result<()> {
        if g.n() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "code for {} messages used with a graph on {} vertices",
                self.n,
                g.n()
            )));
        }
        Ok(())
    }

    /// Columns that receiver `i` can neither cancel nor wants: every symbol
    /// of every message outside `S_i ∪ {i}`.
    fn interference_columns(&self, g: &SideInfoGraph, i: usize) -> Vec<Vec<u32>> {
        (0..self.n)
            .filter(|&i2| i2 != i && !g.knows(i, i2))
            .flat_map(|i2| (0..self.t).map(move |j2| (i2, j2)))
            .map(|(i2, j2)| self.column(i2, j2))
            .collect()
    }

    /// Symbols `j` of message `i` whose precoding vector lies in the span of
    /// the interference plus the other symbols of message `i`.
    fn receiver_violations(&self, g: &SideInfoGraph, i: usize, stop_early: bool) -> Vec<usize> {
        let mut interference = SpanBasis::new(self.field(), self.len());
        for v in self.interference_columns(g, i) {
            interference.insert(&v).expect("column length");
        }
        let mut out = Vec::new();
        for j in 0..self.t {
            let mut basis = interference.clone();
            for j2 in (0..self.t).filter(|&j2| j2 != j) {
                basis.insert(&self.column(i, j2)).expect("column length");
            }
            if basis.contains(&self.column(i, j)).expect("column length") {
                out.push(j);
                if stop_early {
                    break;
                }
            }
        }
        out
    }

    /// Every `(i, j)` for which the decoding condition fails, in order.
    pub fn violations(&self, g: &SideInfoGraph) -> Result<Vec<(usize, usize)>> {
        self.check_graph(g)?;
        Ok((0..self.n)
            .flat_map(|i| self.receiver_violations(g, i, false).into_iter().map(move |j| (i, j)))
            .collect())
    }

    pub fn first_violation(&self, g: &SideInfoGraph) -> Result<Option<(usize, usize)>> {
        self.check_graph(g)?;
        Ok((0..self.n).find_map(|i| self.receiver_violations(g, i, true).first().map(|&j| (i, j))))
    }

    /// A code is valid for `g` iff for every receiver `i` and symbol `j`,
    /// `B^{ij}` is outside the span of the other columns of message `i`
    /// together with all columns of messages outside `S_i ∪ {i}`.
    pub fn is_valid(&self, g: &SideInfoGraph) -> Result<bool> {
        Ok(self.first_violation(g)?.is_none())
    }

    pub fn receiver_can_decode(&self, g: &SideInfoGraph, i: usize) -> Result<bool> {
        self.check_graph(g)?;
        self.check_receiver(i)?;
        Ok(self.receiver_violations(g, i, true).is_empty())
    }

    fn check_receiver(&self, i: usize) -> Result<()> {
        if i >= self.n {
            return Err(Error::InvalidParameter(format!(
                "receiver {i} out of range for n = {}",
                self.n
            )));
        }
        Ok(())
    }

    /// Decodability through the row space: every unit vector of a symbol of
    /// message `i` must lie in `rowspace(B) + span{e_s : s a symbol of a
    /// message in S_i}`.
    pub fn can_decode_rowspace(&self, g: &SideInfoGraph, i: usize) -> Result<bool> {
        self.check_graph(g)?;
        self.check_receiver(i)?;
        let dim = self.n * self.t;
        let mut basis = SpanBasis::new(self.field(), dim);
        for r in 0..self.len() {
            basis.insert(self.b.row(r))?;
        }
        for s in bits(g.side_info(i)) {
            for j in 0..self.t {
                basis.insert(&unit(dim, self.column_index(s, j)))?;
            }
        }
        for j in 0..self.t {
            if !basis.contains(&unit(dim, self.column_index(i, j)))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn flatten(&self, x: &[Vec<u32>]) -> Result<Vec<u32>> {
        if x.len() != self.n || x.iter().any(|m| m.len() != self.t) {
            return Err(Error::DimensionMismatch(format!(
                "message must be {} blocks of {} symbols",
                self.n, self.t
            )));
        }
        let q = self.field().q();
        Ok(x.iter().flatten().map(|&s| s % q).collect())
    }

    /// Codeword `B x` for messages `x[0..n]`, each of length `t`.
    pub fn encode(&self, x: &[Vec<u32>]) -> Result<Vec<u32>> {
        let flat = self.flatten(x)?;
        self.b.mul_vec(&flat)
    }

    /// Recovers message `i` from the codeword and the messages in `S_i`.
    ///
    /// Subtracts the known contribution, then solves the residual system
    /// `c' = B_i x_i + B_U x_U` for any solution; validity makes its `x_i`
    /// part unique.
    pub fn decode(
        &self,
        g: &SideInfoGraph,
        i: usize,
        codeword: &[u32],
        side: &BTreeMap<usize, Vec<u32>>,
    ) -> Result<Vec<u32>> {
        self.check_graph(g)?;
        self.check_receiver(i)?;
        if codeword.len() != self.len() {
            return Err(Error::DimensionMismatch(format!(
                "codeword of length {} for a code of length {}",
                codeword.len(),
                self.len()
            )));
        }
        if !self.receiver_violations(g, i, true).is_empty() {
            return Err(Error::CannotDecode(i));
        }
        let f = self.field();
        let mut residual: Vec<u32> = codeword.iter().map(|&c| c % f.q()).collect();
        for s in bits(g.side_info(i)) {
            let known = side.get(&s).ok_or(Error::MissingSideInfo(s))?;
            if known.len() != self.t {
                return Err(Error::DimensionMismatch(format!(
                    "side information for message {s} has {} symbols, expected {}",
                    known.len(),
                    self.t
                )));
            }
            for (j, &x) in known.iter().enumerate() {
                let x = x % f.q();
                if x == 0 {
                    continue;
                }
                let col = self.column_index(s, j);
                for (r, c) in residual.iter_mut().enumerate() {
                    *c = f.sub(*c, f.mul(self.b.get(r, col), x));
                }
            }
        }
        // unknowns: message i first, then the interfering messages
        let unknown_cols: Vec<usize> = (0..self.t)
            .map(|j| self.column_index(i, j))
            .chain(
                (0..self.n)
                    .filter(|&i2| i2 != i && !g.knows(i, i2))
                    .flat_map(|i2| (0..self.t).map(move |j| i2 * self.t + j)),
            )
            .collect();
        let columns: Vec<Vec<u32>> = unknown_cols.iter().map(|&c| self.b.column(c)).collect();
        let system = GFMatrix::from_columns(f, self.len(), &columns)?;
        let solution = gf::solve(&system, &residual)?.ok_or(Error::InconsistentCodeword(i))?;
        Ok(solution[..self.t].to_vec())
    }
}

fn unit(dim: usize, k: usize) -> Vec<u32> {
    let mut v = vec![0; dim];
    v[k] = 1;
    v
}
