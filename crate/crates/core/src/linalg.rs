//! Exact sparse linear algebra over the rationals.
//!
//! Ranks are computed fraction-free: every row is scaled to a primitive
//! integer vector and eliminated with integer cross-multiplication followed
//! by content removal. Kernels, coordinates and echelon bookkeeping use
//! exact rationals in a semi-echelon form keyed by leading column.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::Scalar;

/// Sparse vector: `(index, value)` pairs sorted by index, no zero values.
pub type SparseVec = Vec<(usize, Scalar)>;

type IntRow = Vec<(usize, BigInt)>;

pub fn to_dense(v: &SparseVec, len: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); len];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

pub fn from_dense(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// `a + c*b` for sparse vectors.
pub fn axpy(a: &SparseVec, c: &Scalar, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let s = &a[i].1 + c * &b[j].1;
            if !s.is_zero() {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn primitive(row: SparseVec) -> IntRow {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let ints: IntRow = row
        .into_iter()
        .map(|(i, c)| (i, (c * BigRational::from_integer(lcm.clone())).to_integer()))
        .collect();
    make_primitive(ints)
}

fn make_primitive(mut row: IntRow) -> IntRow {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for (_, c) in row.iter_mut() {
            *c = &*c / &g;
        }
    }
    if row.first().is_some_and(|(_, c)| c.is_negative()) {
        for (_, c) in row.iter_mut() {
            *c = -&*c;
        }
    }
    row
}

/// `a*x - b*y` for integer rows.
fn cross_eliminate(x: &IntRow, a: &BigInt, y: &IntRow, b: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let s = a * &x[i].1 - b * &y[j].1;
            if !s.is_zero() {
                out.push((x[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank of the matrix whose rows are given, by fraction-free elimination.
///
/// Rows are processed sparsest first; each reduction step replaces the row by
/// `p*row - r*pivot` and divides out the content, so entries stay integral
/// and small.
pub fn rank(rows: &[SparseVec]) -> usize {
    let mut order: Vec<&SparseVec> = rows.iter().filter(|r| !r.is_empty()).collect();
    order.sort_by_key(|r| r.len());
    let mut pivots: BTreeMap<usize, IntRow> = BTreeMap::new();
    for row in order {
        let mut r = primitive(row.clone());
        while let Some((lead, coef)) = r.first().cloned() {
            match pivots.get(&lead) {
                None => {
                    pivots.insert(lead, r);
                    break;
                }
                Some(p) => {
                    let pc = &p[0].1;
                    let g = pc.gcd(&coef);
                    r = make_primitive(cross_eliminate(&r, &(pc / &g), p, &(&coef / &g)));
                }
            }
        }
    }
    pivots.len()
}

/// Semi-echelon set of rational rows keyed by leading index. Each row carries
/// a tag so that reductions can report which rows were used.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, (SparseVec, usize)>,
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub remainder: SparseVec,
    /// `(tag, multiplier)`: `v = remainder + sum multiplier * row(tag)`.
    pub used: Vec<(usize, Scalar)>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduces by leading entries until the leading index of the remainder
    /// has no pivot row. Stops early at the first pivot-free leading index.
    pub fn reduce_leading(&self, v: &SparseVec) -> Reduction {
        let mut r = v.clone();
        let mut used = Vec::new();
        while let Some((lead, c)) = r.first().cloned() {
            match self.rows.get(&lead) {
                None => break,
                Some((row, tag)) => {
                    let m = &c / &row[0].1;
                    r = axpy(&r, &-m.clone(), row);
                    used.push((*tag, m));
                }
            }
        }
        Reduction { remainder: r, used }
    }

    /// Eliminates every entry that sits on a pivot index.
    pub fn reduce_full(&self, v: &SparseVec) -> Reduction {
        let mut r = v.clone();
        let mut used = Vec::new();
        let mut k = 0;
        while k < r.len() {
            let (idx, c) = r[k].clone();
            if let Some((row, tag)) = self.rows.get(&idx) {
                let m = &c / &row[0].1;
                r = axpy(&r, &-m.clone(), row);
                used.push((*tag, m));
                // entries before position k are untouched: the row starts at idx
            } else {
                k += 1;
            }
        }
        Reduction { remainder: r, used }
    }

    /// Inserts `v` after reduction; returns the new pivot if it was independent.
    pub fn insert(&mut self, v: &SparseVec, tag: usize) -> Option<usize> {
        let red = self.reduce_leading(v);
        let (lead, _) = red.remainder.first()?.clone();
        self.rows.insert(lead, (red.remainder, tag));
        Some(lead)
    }

    pub fn insert_reduced(&mut self, v: SparseVec, tag: usize) -> usize {
        let lead = v[0].0;
        debug_assert!(!self.rows.contains_key(&lead));
        self.rows.insert(lead, (v, tag));
        lead
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce_leading(v).remainder.is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = (&SparseVec, usize)> {
        self.rows.values().map(|(r, t)| (r, *t))
    }
}

/// Kernel of the linear map whose `j`-th column is `columns[j]`.
/// Returns a basis of kernel vectors, each indexed by column position.
pub fn kernel(columns: &[SparseVec]) -> Vec<SparseVec> {
    // each tracked row is (image, combination); reduce on the image part
    let mut pivots: BTreeMap<usize, (SparseVec, SparseVec)> = BTreeMap::new();
    let mut out = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        let mut image = col.clone();
        let mut combo: SparseVec = vec![(j, Scalar::one())];
        while let Some((lead, c)) = image.first().cloned() {
            match pivots.get(&lead) {
                None => break,
                Some((prow, pcombo)) => {
                    let m = -(&c / &prow[0].1);
                    image = axpy(&image, &m, prow);
                    combo = axpy(&combo, &m, pcombo);
                }
            }
        }
        match image.first() {
            None => out.push(combo),
            Some((lead, _)) => {
                pivots.insert(*lead, (image, combo));
            }
        }
    }
    out
}

/// Rank of a set of dense rational rows (small matrices).
pub fn dense_rank(rows: &[Vec<Scalar>]) -> usize {
    let sparse: Vec<SparseVec> = rows.iter().map(|r| from_dense(r)).collect();
    rank(&sparse)
}

/// Reduced row echelon form of dense rows; returns the nonzero rows and
/// their pivot columns.
pub fn rref(mut rows: Vec<Vec<Scalar>>) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..width {
        let Some(p) = (top..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(top, p);
        let inv = rows[top][col].recip();
        for x in rows[top].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != top && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for k in 0..width {
                    let sub = &f * &rows[top][k];
                    rows[i][k] -= sub;
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    (rows, pivots)
}

/// Inverse of a square dense matrix, if it exists.
pub fn inverse(m: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = m.len();
    let augmented: Vec<Vec<Scalar>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    let (reduced, pivots) = rref(augmented);
    if !pivots.iter().copied().take(n).eq(0..n) {
        return None;
    }
    Some(reduced.into_iter().map(|r| r[n..].to_vec()).collect())
}
