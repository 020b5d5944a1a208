//! Exact linear algebra over prime fields.
//!
//! Residues are plain `u32` values in `[0, q)`. With `q <= 251` every product
//! of two residues fits comfortably in a machine word, so reduction happens
//! after each operation and no wider arithmetic is needed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The prime field F_q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    q: u32,
}

impl PrimeField {
    pub const MAX_MODULUS: u32 = 251;

    pub fn new(q: u32) -> Result<Self> {
        if !(2..=Self::MAX_MODULUS).contains(&q) || !is_prime(q) {
            return Err(Error::InvalidModulus(q));
        }
        Ok(PrimeField { q })
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn reduce(&self, a: u64) -> u32 {
        (a % self.q as u64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.q
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.q - b) % self.q
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        (self.q - a) % self.q
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (a * b) % self.q
    }

    /// Multiplicative inverse via Fermat's little theorem.
    pub fn inv(&self, a: u32) -> Result<u32> {
        let a = a % self.q;
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let mut result = 1;
        let mut base = a;
        let mut exp = self.q - 2;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        Ok(result)
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.q
    }

    fn check_same(&self, other: &PrimeField) -> Result<()> {
        if self.q != other.q {
            return Err(Error::FieldMismatch {
                left: self.q,
                right: other.q,
            });
        }
        Ok(())
    }
}

fn is_prime(q: u32) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// A dense row-major matrix over a prime field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct GFMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

/// Wire form: `{"q": int, "rows": int, "cols": int, "entries": [row-major ints]}`.
#[derive(Serialize, Deserialize)]
struct MatrixJson {
    q: u32,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl TryFrom<MatrixJson> for GFMatrix {
    type Error = Error;

    fn try_from(raw: MatrixJson) -> Result<Self> {
        GFMatrix::new(PrimeField::new(raw.q)?, raw.rows, raw.cols, raw.entries)
    }
}

impl From<GFMatrix> for MatrixJson {
    fn from(m: GFMatrix) -> Self {
        MatrixJson {
            q: m.field.q,
            rows: m.rows,
            cols: m.cols,
            entries: m.entries,
        }
    }
}

impl GFMatrix {
    pub fn new(field: PrimeField, rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|&&e| e >= field.q) {
            return Err(Error::InvalidParameter(format!(
                "entry {bad} is not a residue mod {}",
                field.q
            )));
        }
        Ok(GFMatrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        GFMatrix {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from rows of equal length; `cols` is needed when `rows` is empty.
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    row.len()
                )));
            }
            entries.extend_from_slice(row);
        }
        Self::new(field, rows.len(), cols, entries)
    }

    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u32>]) -> Result<Self> {
        let cols = columns.len();
        let mut m = Self::zeros(field, rows, cols);
        for (c, column) in columns.iter().enumerate() {
            if column.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column of length {} in a matrix with {rows} rows",
                    column.len()
                )));
            }
            for (r, &v) in column.iter().enumerate() {
                if v >= field.q {
                    return Err(Error::InvalidParameter(format!(
                        "entry {v} is not a residue mod {}",
                        field.q
                    )));
                }
                m.entries[r * cols + c] = v;
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: u32) {
        self.entries[r * self.cols + c] = value % self.field.q;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn transpose(&self) -> GFMatrix {
        let mut t = GFMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    /// Matrix-vector product `self * x`.
    pub fn mul_vec(&self, x: &[u32]) -> Result<Vec<u32>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        let f = self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b % f.q)))
            })
            .collect())
    }

    pub fn mul(&self, other: &GFMatrix) -> Result<GFMatrix> {
        self.field.check_same(&other.field)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = GFMatrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.entries[idx] = f.add(out.entries[idx], f.mul(a, other.get(k, c)));
                }
            }
        }
        Ok(out)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &GFMatrix) -> Result<GFMatrix> {
        self.field.check_same(&other.field)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "stacking {} columns on {} columns",
                other.cols, self.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(GFMatrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (GFMatrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            // first nonzero at or below `lead`
            let Some(p) = (lead..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            m.swap_rows(lead, p);
            let inv = f.inv(m.get(lead, c)).expect("pivot is nonzero");
            m.scale_row(lead, inv);
            for r in 0..m.rows {
                if r != lead {
                    let factor = m.get(r, c);
                    if factor != 0 {
                        m.sub_row_multiple(r, lead, factor);
                    }
                }
            }
            pivots.push(c);
            lead += 1;
        }
        (m, pivots)
    }

    /// Rank by forward elimination.
    pub fn rank(&self) -> usize {
        let f = self.field;
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            m.swap_rows(rank, p);
            let inv = f.inv(m.get(rank, c)).expect("pivot is nonzero");
            for r in rank + 1..m.rows {
                let factor = f.mul(m.get(r, c), inv);
                if factor != 0 {
                    m.sub_row_multiple(r, rank, factor);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Kronecker product, `(rA*rB) x (cA*cB)`.
    pub fn kron(&self, other: &GFMatrix) -> Result<GFMatrix> {
        self.field.check_same(&other.field)?;
        let f = self.field;
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = GFMatrix::zeros(f, rows, cols);
        for ar in 0..self.rows {
            for ac in 0..self.cols {
                let a = self.get(ar, ac);
                if a == 0 {
                    continue;
                }
                for br in 0..other.rows {
                    for bc in 0..other.cols {
                        let r = ar * other.rows + br;
                        let c = ac * other.cols + bc;
                        out.entries[r * cols + c] = f.mul(a, other.get(br, bc));
                    }
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: u32) {
        let f = self.field;
        for e in &mut self.entries[r * self.cols..(r + 1) * self.cols] {
            *e = f.mul(*e, s);
        }
    }

    // row[target] -= factor * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: u32) {
        let f = self.field;
        for c in 0..self.cols {
            let s = self.entries[source * self.cols + c];
            if s != 0 {
                let idx = target * self.cols + c;
                self.entries[idx] = f.sub(self.entries[idx], f.mul(factor, s));
            }
        }
    }
}

pub fn rank(m: &GFMatrix) -> usize {
    m.rank()
}

pub fn kron(a: &GFMatrix, b: &GFMatrix) -> Result<GFMatrix> {
    a.kron(b)
}

/// Kronecker (tensor) product of two vectors.
pub fn kron_vec(field: PrimeField, v: &[u32], w: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(v.len() * w.len());
    for &a in v {
        out.extend(w.iter().map(|&b| field.mul(a, b)));
    }
    out
}

/// Whether `v` is an F_q-linear combination of `span`. The empty set spans
/// only the zero vector.
pub fn in_span(field: PrimeField, v: &[u32], span: &[Vec<u32>]) -> Result<bool> {
    let mut basis = SpanBasis::new(field, v.len());
    for u in span {
        basis.insert(u)?;
    }
    basis.contains(v)
}

/// Particular solution of `a * x = b` with free variables set to zero, or
/// `None` if the system is inconsistent.
pub fn solve(a: &GFMatrix, b: &[u32]) -> Result<Option<Vec<u32>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} equations",
            b.len(),
            a.rows()
        )));
    }
    let f = a.field();
    let cols = a.cols() + 1;
    let mut aug = GFMatrix::zeros(f, a.rows(), cols);
    for (r, &rhs) in b.iter().enumerate() {
        for c in 0..a.cols() {
            aug.entries[r * cols + c] = a.get(r, c);
        }
        aug.entries[r * cols + a.cols()] = rhs % f.q();
    }
    let (reduced, pivots) = aug.rref();
    if pivots.last() == Some(&a.cols()) {
        return Ok(None);
    }
    let mut x = vec![0; a.cols()];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = reduced.get(r, a.cols());
    }
    Ok(Some(x))
}

/// Incrementally built echelon basis of a subspace of F_q^dim.
///
/// Each stored row is monic at its pivot and zero at the pivots of all rows
/// inserted before it, so a single in-order pass reduces any vector.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    field: PrimeField,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl SpanBasis {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        SpanBasis {
            field,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check_len(&self, v: &[u32]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a space of dimension {}",
                v.len(),
                self.dim
            )));
        }
        Ok(())
    }

    fn reduce_unchecked(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut v: Vec<u32> = v.iter().map(|&x| x % f.q()).collect();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let factor = v[p];
            if factor != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
        }
        v
    }

    /// Residue of `v` after elimination against the basis.
    pub fn reduce(&self, v: &[u32]) -> Result<Vec<u32>> {
        self.check_len(v)?;
        Ok(self.reduce_unchecked(v))
    }

    pub fn contains(&self, v: &[u32]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(|&x| x == 0))
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> Result<bool> {
        self.check_len(v)?;
        let mut r = self.reduce_unchecked(v);
        let Some(p) = r.iter().position(|&x| x != 0) else {
            return Ok(false);
        };
        let inv = self.field.inv(r[p])?;
        for x in &mut r {
            *x = self.field.mul(*x, inv);
        }
        self.rows.push(r);
        self.pivots.push(p);
        Ok(true)
    }
}
