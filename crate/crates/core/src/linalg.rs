//! Sparse exact linear algebra over Q.
//!
//! Rank is computed by fraction-free elimination on integer rows (each row is
//! cleared of denominators and kept primitive by dividing out its content).
//! Kernels, solutions and spans use rational reduced echelon forms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Q;

/// Sparse vector: index → nonzero coefficient.
pub type SparseVec = BTreeMap<usize, Q>;

/// `y += a * x`, dropping entries that cancel.
pub fn axpy(y: &mut SparseVec, a: &Q, x: &SparseVec) {
    if a.is_zero() {
        return;
    }
    for (k, v) in x {
        add_entry(y, *k, a * v);
    }
}

pub fn add_entry(y: &mut SparseVec, k: usize, v: Q) {
    if v.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match y.entry(k) {
        Entry::Vacant(e) => {
            e.insert(v);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += v;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

pub fn scaled(x: &SparseVec, a: &Q) -> SparseVec {
    if a.is_zero() {
        return SparseVec::new();
    }
    x.iter().map(|(k, v)| (*k, v * a)).collect()
}

pub fn unit(k: usize) -> SparseVec {
    let mut v = SparseVec::new();
    v.insert(k, Q::one());
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            rows: vec![SparseVec::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].insert(i, Q::one());
        }
        m
    }

    pub fn from_rows(ncols: usize, rows: Vec<SparseVec>) -> Self {
        debug_assert!(rows
            .iter()
            .all(|r| r.keys().next_back().is_none_or(|k| *k < ncols)));
        Self {
            nrows: rows.len(),
            ncols,
            rows,
        }
    }

    /// Builds a matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(nrows: usize, cols: &[SparseVec]) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c {
                assert!(*i < nrows, "column entry {i} out of range {nrows}");
                m.rows[*i].insert(j, v.clone());
            }
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Q>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.clone()))
                    .collect()
            })
            .collect();
        Self::from_rows(ncols, rows)
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        self.rows
            .iter()
            .map(|r| {
                let mut d = vec![Q::zero(); self.ncols];
                for (j, v) in r {
                    d[*j] = v.clone();
                }
                d
            })
            .collect()
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.rows[i].get(&j).cloned().unwrap_or_else(Q::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        assert!(i < self.nrows && j < self.ncols);
        if v.is_zero() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: Q) {
        assert!(i < self.nrows && j < self.ncols);
        add_entry(&mut self.rows[i], j, v);
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn column(&self, j: usize) -> SparseVec {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.get(&j).map(|v| (i, v.clone())))
            .collect()
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        let mut cols = vec![SparseVec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r {
                cols[*j].insert(i, v.clone());
            }
        }
        cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_rows(self.nrows, self.columns())
    }

    /// `A x`.
    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, r) in self.rows.iter().enumerate() {
            let mut acc = Q::zero();
            for (j, v) in x {
                if let Some(a) = r.get(j) {
                    acc += a * v;
                }
            }
            if !acc.is_zero() {
                out.insert(i, acc);
            }
        }
        out
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.ncols, rhs.nrows, "matrix shape mismatch");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = SparseVec::new();
                for (k, a) in r {
                    axpy(&mut out, a, &rhs.rows[*k]);
                }
                out
            })
            .collect();
        Matrix::from_rows(rhs.ncols, rows)
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols));
        let mut out = self.clone();
        for (i, r) in rhs.rows.iter().enumerate() {
            axpy(&mut out.rows[i], &Q::one(), r);
        }
        out
    }

    pub fn scale(&self, a: &Q) -> Matrix {
        Matrix::from_rows(self.ncols, self.rows.iter().map(|r| scaled(r, a)).collect())
    }

    /// Rank by fraction-free elimination over the integers.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<BTreeMap<usize, BigInt>> = self
            .rows
            .iter()
            .filter(|r| !r.is_empty())
            .map(integer_row)
            .collect();
        let mut rank = 0;
        while !rows.is_empty() {
            // pivot: the row with the smallest leading column, fewest entries
            let (pi, _) = rows
                .iter()
                .enumerate()
                .min_by_key(|(_, r)| (*r.keys().next().unwrap(), r.len()))
                .unwrap();
            let pivot = rows.swap_remove(pi);
            let (&pc, pa) = pivot.iter().next().unwrap();
            rank += 1;
            let mut next = Vec::with_capacity(rows.len());
            for row in rows.into_iter() {
                let b = match row.get(&pc) {
                    None => {
                        next.push(row);
                        continue;
                    }
                    Some(b) => b.clone(),
                };
                let g = pa.gcd(&b);
                let ca = pa / &g;
                let cb = &b / &g;
                let mut out: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (k, v) in &row {
                    out.insert(*k, v * &ca);
                }
                for (k, v) in &pivot {
                    let e = out.entry(*k).or_insert_with(BigInt::zero);
                    *e -= v * &cb;
                }
                out.retain(|_, v| !v.is_zero());
                if !out.is_empty() {
                    make_primitive(&mut out);
                    next.push(out);
                }
            }
            rows = next;
        }
        rank
    }

    /// Reduced row echelon form over Q.
    pub fn rref(&self) -> Echelon {
        let mut span = Span::new();
        for r in &self.rows {
            span.insert(r.clone());
        }
        span.into_reduced(self.ncols)
    }

    /// Basis of `{x : A x = 0}`.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let e = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = e.pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in (0..self.ncols).filter(|c| !pivot_set.contains(c)) {
            let mut v = unit(free);
            for (row, p) in e.rows.iter().zip(&e.pivots) {
                if let Some(c) = row.get(&free) {
                    v.insert(*p, -c);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Some `x` with `A x = b`, if one exists.
    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        let n = self.ncols;
        let mut span = Span::new();
        for (i, r) in self.rows.iter().enumerate() {
            let mut row = r.clone();
            if let Some(v) = b.get(&i) {
                row.insert(n, v.clone());
            }
            span.insert(row);
        }
        if b.keys().any(|i| *i >= self.nrows) {
            return None;
        }
        let e = span.into_reduced(n + 1);
        let mut x = SparseVec::new();
        for (row, p) in e.rows.iter().zip(&e.pivots) {
            if *p == n {
                return None;
            }
            if let Some(v) = row.get(&n) {
                x.insert(*p, v.clone());
            }
        }
        Some(x)
    }
}

fn integer_row(r: &SparseVec) -> BTreeMap<usize, BigInt> {
    let l = r
        .values()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut out: BTreeMap<usize, BigInt> = r
        .iter()
        .map(|(k, v)| (*k, v.numer() * (&l / v.denom())))
        .collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(r: &mut BTreeMap<usize, BigInt>) {
    let g = r.values().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in r.values_mut() {
            *v /= &g;
        }
    }
    if let Some((_, lead)) = r.iter().next() {
        if lead.is_negative() {
            for v in r.values_mut() {
                *v = -v.clone();
            }
        }
    }
}

/// Reduced echelon rows (pivot coefficient 1) with their pivot columns in
/// increasing order.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<SparseVec>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// An incrementally built subspace in echelon form, keyed by pivot.
#[derive(Clone, Debug, Default)]
pub struct Span {
    rows: BTreeMap<usize, SparseVec>,
}

impl Span {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows. The result is zero iff `v` lies in
    /// the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        let mut from = 0usize;
        loop {
            let next = v
                .range(from..)
                .map(|(k, c)| (*k, c.clone()))
                .find(|(k, _)| self.rows.contains_key(k));
            let Some((k, c)) = next else { break };
            axpy(&mut v, &-c, &self.rows[&k]);
            from = k + 1;
        }
        v
    }

    /// Same as [`Span::reduce`] but also returns the coefficients expressing
    /// `v - reduce(v)` in the stored rows, keyed by pivot.
    pub fn reduce_with_coords(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut v = v.clone();
        let mut coords = SparseVec::new();
        let mut from = 0usize;
        loop {
            let next = v
                .range(from..)
                .map(|(k, c)| (*k, c.clone()))
                .find(|(k, _)| self.rows.contains_key(k));
            let Some((k, c)) = next else { break };
            axpy(&mut v, &-c.clone(), &self.rows[&k]);
            coords.insert(k, c);
            from = k + 1;
        }
        (v, coords)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v`; returns `true` if it enlarged the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(&v);
        let Some((&p, lead)) = r.iter().next() else {
            return false;
        };
        let inv = Q::one() / lead;
        self.rows.insert(p, scaled(&r, &inv));
        true
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseVec> {
        self.rows.get(&pivot)
    }

    pub fn into_reduced(self, ncols: usize) -> Echelon {
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        let mut rows: BTreeMap<usize, SparseVec> = self.rows;
        // back-substitute from the last pivot upwards
        for &p in pivots.iter().rev() {
            let row = rows[&p].clone();
            for &q in pivots.iter().filter(|q| **q < p) {
                let c = rows[&q].get(&p).cloned();
                if let Some(c) = c {
                    let target = rows.get_mut(&q).unwrap();
                    axpy(target, &-c, &row);
                }
            }
        }
        Echelon {
            rows: pivots.iter().map(|p| rows.remove(p).unwrap()).collect(),
            pivots,
            ncols,
        }
    }
}

/// A span that remembers how each echelon row is built from the inserted
/// vectors, so membership comes with coordinates in the inserted basis.
#[derive(Clone, Debug, Default)]
pub struct CoordSpan {
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
    count: usize,
}

impl CoordSpan {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of accepted (independent) vectors.
    pub fn dim(&self) -> usize {
        self.count
    }

    fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut v = v.clone();
        let mut combo = SparseVec::new();
        let mut from = 0usize;
        loop {
            let next = v
                .range(from..)
                .map(|(k, c)| (*k, c.clone()))
                .find(|(k, _)| self.rows.contains_key(k));
            let Some((k, c)) = next else { break };
            let (row, rc) = &self.rows[&k];
            axpy(&mut v, &-c.clone(), row);
            axpy(&mut combo, &c, rc);
            from = k + 1;
        }
        (v, combo)
    }

    /// Inserts `v` if independent; returns its index among accepted vectors.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        let (r, combo) = self.reduce(v);
        let (&p, lead) = r.iter().next()?;
        let inv = Q::one() / lead;
        let idx = self.count;
        // r = v - Σ combo_i b_i, so the row r/lead equals (e_idx - combo)/lead
        let mut rc = scaled(&combo, &-inv.clone());
        rc.insert(idx, inv.clone());
        self.rows.insert(p, (scaled(&r, &inv), rc));
        self.count += 1;
        Some(idx)
    }

    /// Coordinates of `v` in the accepted vectors, if `v` lies in the span.
    pub fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        let (r, combo) = self.reduce(v);
        r.is_empty().then_some(combo)
    }
}

/// A basis of `span(candidates) / span(sub)` chosen greedily among the
/// candidates, with coordinates for vectors in the combined span.
#[derive(Clone, Debug, Default)]
pub struct Quotient {
    span: CoordSpan,
    sub_dim: usize,
    /// Accepted candidates, in order.
    pub reps: Vec<SparseVec>,
}

impl Quotient {
    pub fn new<'a>(sub: impl IntoIterator<Item = &'a SparseVec>) -> Self {
        let mut span = CoordSpan::new();
        for v in sub {
            span.insert(v);
        }
        let sub_dim = span.dim();
        Self {
            span,
            sub_dim,
            reps: Vec::new(),
        }
    }

    /// Offers a candidate; returns its rep index when it is new modulo
    /// everything accepted so far.
    pub fn offer(&mut self, v: &SparseVec) -> Option<usize> {
        self.span.insert(v)?;
        self.reps.push(v.clone());
        Some(self.reps.len() - 1)
    }

    pub fn with_candidates<'a>(mut self, cands: impl IntoIterator<Item = &'a SparseVec>) -> Self {
        for v in cands {
            self.offer(v);
        }
        self
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn sub_dim(&self) -> usize {
        self.sub_dim
    }

    /// Coordinates of the class of `v` in `reps`; `None` outside the span.
    pub fn coords(&self, v: &SparseVec) -> Option<SparseVec> {
        let c = self.span.express(v)?;
        Some(
            c.into_iter()
                .filter(|(k, _)| *k >= self.sub_dim)
                .map(|(k, x)| (k - self.sub_dim, x))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_coordinates() {
        let e = |k: usize| unit(k);
        let mut sub_v = e(0);
        sub_v.insert(1, q(1));
        let qt = Quotient::new([&sub_v]).with_candidates([&e(0), &e(1), &e(2)]);
        assert_eq!(qt.dim(), 2);
        // e1 ≡ -e0 modulo e0 + e1
        assert_eq!(qt.coords(&e(1)), Some([(0, q(-1))].into()));
        assert_eq!(qt.coords(&sub_v), Some(SparseVec::new()));
        assert_eq!(qt.coords(&e(3)), None);
    }
    use crate::rational::{q, q_frac};

    /// Dense textbook elimination, independent of the sparse paths.
    fn dense_rank(mut m: Vec<Vec<Q>>) -> usize {
        let rows = m.len();
        let cols = m.first().map_or(0, |r| r.len());
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            for i in 0..rows {
                if i != r && !m[i][c].is_zero() {
                    let f = &m[i][c] / &m[r][c];
                    for j in 0..cols {
                        let t = &f * &m[r][j];
                        m[i][j] -= t;
                    }
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn rank_small() {
        let m = Matrix::from_dense(&[
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(0), q(1), q_frac(1, 3)],
        ]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rref().rank(), 2);
        assert_eq!(m.kernel().len(), 1);
        let k = &m.kernel()[0];
        assert!(m.apply(k).is_empty());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Matrix::from_dense(&[vec![q(1), q(1)], vec![q(1), q(-1)]]);
        let b: SparseVec = [(0, q(3)), (1, q(1))].into_iter().collect();
        let x = m.solve(&b).unwrap();
        assert_eq!(m.apply(&x), b);
        let sing = Matrix::from_dense(&[vec![q(1), q(1)], vec![q(2), q(2)]]);
        assert!(sing.solve(&b).is_none());
    }

    #[test]
    fn zero_and_empty() {
        assert_eq!(Matrix::zeros(3, 4).rank(), 0);
        assert_eq!(Matrix::zeros(0, 4).kernel().len(), 4);
        assert_eq!(Matrix::zeros(3, 0).kernel().len(), 0);
    }

    use proptest::prelude::*;

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-3i64..4, c), r)
        })
    }

    proptest! {
        #[test]
        fn rank_matches_dense_oracle(m in small_matrix(), den in 1i64..5) {
            let dense: Vec<Vec<Q>> = m.iter()
                .map(|r| r.iter().map(|v| q_frac(*v, den)).collect()).collect();
            let sparse = Matrix::from_dense(&dense);
            let r = dense_rank(dense);
            prop_assert_eq!(sparse.rank(), r);
            prop_assert_eq!(sparse.rref().rank(), r);
            prop_assert_eq!(sparse.kernel().len(), sparse.ncols() - r);
            for k in sparse.kernel() {
                prop_assert!(sparse.apply(&k).is_empty());
            }
        }
    }

    #[test]
    fn coord_span_expresses_in_inserted_basis() {
        let a: SparseVec = [(0, q(1)), (1, q(2))].into();
        let b: SparseVec = [(0, q(3)), (2, q(1))].into();
        let mut s = CoordSpan::new();
        assert_eq!(s.insert(&a), Some(0));
        assert_eq!(s.insert(&b), Some(1));
        let mut v = scaled(&a, &q(5));
        axpy(&mut v, &q(-2), &b);
        assert!(s.insert(&v).is_none());
        assert_eq!(s.express(&v).unwrap(), [(0, q(5)), (1, q(-2))].into());
        assert!(s.express(&unit(3)).is_none());
    }
}
