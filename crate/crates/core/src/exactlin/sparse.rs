use std::collections::BTreeMap;

use crate::scalar::Ring;

/// Sparse vector with strictly increasing indices and no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SparseVec<T> {
    entries: Vec<(usize, T)>,
}

impl<T: Ring> SparseVec<T> {
    pub fn new() -> Self {
        SparseVec {
            entries: Vec::new(),
        }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, T::one())],
        }
    }

    /// Builds from arbitrary `(index, value)` pairs; duplicates are summed and zeros dropped.
    pub fn from_entries(entries: impl IntoIterator<Item = (usize, T)>) -> Self {
        let mut acc: BTreeMap<usize, T> = BTreeMap::new();
        for (i, v) in entries {
            if v.is_zero() {
                continue;
            }
            match acc.get_mut(&i) {
                Some(slot) => *slot = slot.clone() + v,
                None => {
                    acc.insert(i, v);
                }
            }
        }
        SparseVec {
            entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    /// Trusts that `entries` is sorted, duplicate free and zero free.
    pub(crate) fn from_sorted_unchecked(entries: Vec<(usize, T)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
        SparseVec { entries }
    }

    pub fn from_dense(values: &[T]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<T> {
        let mut out = vec![T::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, T)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, T)> {
        self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &T)> + '_ {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&T> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn value(&self, i: usize) -> T {
        self.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<(usize, &T)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, a: &T) -> Self {
        if a.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, v)| (*i, a.clone() * v.clone()))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, -v.clone())).collect(),
        }
    }

    /// `self + a * other`.
    pub fn add_scaled(&self, a: &T, other: &Self) -> Self {
        if a.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut x, mut y) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (x.peek(), y.peek()) {
                (Some((i, u)), Some((j, w))) => {
                    if i < j {
                        out.push((*i, u.clone()));
                        x.next();
                    } else if j < i {
                        let v = a.clone() * w.clone();
                        if !v.is_zero() {
                            out.push((*j, v));
                        }
                        y.next();
                    } else {
                        let v = u.add_mul(a, w);
                        if !v.is_zero() {
                            out.push((*i, v));
                        }
                        x.next();
                        y.next();
                    }
                }
                (Some((i, u)), None) => {
                    out.push((*i, u.clone()));
                    x.next();
                }
                (None, Some((j, w))) => {
                    let v = a.clone() * w.clone();
                    if !v.is_zero() {
                        out.push((*j, v));
                    }
                    y.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(&T::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(&-T::one(), other)
    }

    pub fn dot_dense(&self, dense: &[T]) -> T {
        self.entries
            .iter()
            .fold(T::zero(), |acc, (i, v)| acc.add_mul(v, &dense[*i]))
    }

    pub fn dot(&self, other: &Self) -> T {
        let mut acc = T::zero();
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            let (i, u) = &self.entries[a];
            let (j, w) = &other.entries[b];
            if i < j {
                a += 1;
            } else if j < i {
                b += 1;
            } else {
                acc = acc.add_mul(u, w);
                a += 1;
                b += 1;
            }
        }
        acc
    }

    pub fn try_map<U: Ring>(&self, mut f: impl FnMut(&T) -> Option<U>) -> Option<SparseVec<U>> {
        let mut out = Vec::with_capacity(self.entries.len());
        for (i, v) in &self.entries {
            let u = f(v)?;
            if !u.is_zero() {
                out.push((*i, u));
            }
        }
        Some(SparseVec { entries: out })
    }

    pub fn map<U: Ring>(&self, mut f: impl FnMut(&T) -> U) -> SparseVec<U> {
        self.try_map(|v| Some(f(v))).expect("infallible map")
    }

    /// Reindexes entries; `f` must be injective on the support.
    pub fn reindex(&self, mut f: impl FnMut(usize) -> usize) -> Self {
        SparseVec::from_entries(self.entries.iter().map(|(i, v)| (f(*i), v.clone())))
    }
}

/// Row-major sparse matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<T> {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec<T>>,
}

impl<T: Ring> SparseMatrix<T> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            rows: vec![SparseVec::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            nrows: n,
            ncols: n,
            rows: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn from_rows(ncols: usize, rows: Vec<SparseVec<T>>) -> Self {
        assert!(rows.iter().all(|r| r.max_index().is_none_or(|i| i < ncols)));
        SparseMatrix {
            nrows: rows.len(),
            ncols,
            rows,
        }
    }

    pub fn from_dense(rows: &[Vec<T>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged dense matrix");
        SparseMatrix {
            nrows: rows.len(),
            ncols,
            rows: rows.iter().map(|r| SparseVec::from_dense(r)).collect(),
        }
    }

    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Self {
        let mut buckets: Vec<Vec<(usize, T)>> = vec![Vec::new(); nrows];
        for (i, j, v) in triplets {
            assert!(i < nrows && j < ncols, "entry ({i},{j}) out of range");
            buckets[i].push((j, v));
        }
        SparseMatrix {
            nrows,
            ncols,
            rows: buckets.into_iter().map(SparseVec::from_entries).collect(),
        }
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(nrows: usize, columns: &[SparseVec<T>]) -> Self {
        let mut buckets: Vec<Vec<(usize, T)>> = vec![Vec::new(); nrows];
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter() {
                assert!(i < nrows, "column entry {i} out of range");
                buckets[i].push((j, v.clone()));
            }
        }
        SparseMatrix {
            nrows,
            ncols: columns.len(),
            rows: buckets
                .into_iter()
                .map(SparseVec::from_sorted_unchecked)
                .collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec<T>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &SparseVec<T> {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.rows[i].value(j)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(SparseVec::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut buckets: Vec<Vec<(usize, T)>> = vec![Vec::new(); self.ncols];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row.iter() {
                buckets[j].push((i, v.clone()));
            }
        }
        SparseMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            rows: buckets
                .into_iter()
                .map(SparseVec::from_sorted_unchecked)
                .collect(),
        }
    }

    pub fn columns(&self) -> Vec<SparseVec<T>> {
        self.transpose().rows
    }

    pub fn mul_vec(&self, x: &SparseVec<T>) -> SparseVec<T> {
        SparseVec::from_sorted_unchecked(
            self.rows
                .iter()
                .enumerate()
                .map(|(i, r)| (i, r.dot(x)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        )
    }

    pub fn mul_dense(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.ncols, "dimension mismatch in matrix-vector product");
        self.rows.iter().map(|r| r.dot_dense(x)).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in matrix product");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter().fold(SparseVec::new(), |acc, (k, v)| {
                    acc.add_scaled(v, &other.rows[k])
                })
            })
            .collect();
        SparseMatrix {
            nrows: self.nrows,
            ncols: other.ncols,
            rows,
        }
    }

    /// `[self | b]`.
    pub fn augment(&self, b: &SparseVec<T>) -> Self {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| match b.get(i) {
                Some(v) => {
                    let mut e = r.entries().to_vec();
                    e.push((self.ncols, v.clone()));
                    SparseVec::from_sorted_unchecked(e)
                }
                None => r.clone(),
            })
            .collect();
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols + 1,
            rows,
        }
    }

    pub fn try_map<U: Ring>(&self, mut f: impl FnMut(&T) -> Option<U>) -> Option<SparseMatrix<U>> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.try_map(&mut f))
            .collect::<Option<Vec<_>>>()?;
        Some(SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        })
    }

    pub fn into_rows(self) -> Vec<SparseVec<T>> {
        self.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rat};

    fn v(e: &[(usize, i64)]) -> SparseVec<Rat> {
        SparseVec::from_entries(e.iter().map(|(i, x)| (*i, int(*x))))
    }

    #[test]
    fn add_scaled_cancels_to_nothing() {
        let a = v(&[(0, 1), (3, 2)]);
        let b = v(&[(0, 1), (3, 2)]);
        assert!(a.add_scaled(&int(-1), &b).is_zero());
        assert_eq!(a.add_scaled(&int(2), &v(&[(1, 1)])), v(&[(0, 1), (1, 2), (3, 2)]));
    }

    #[test]
    fn from_entries_merges_duplicates() {
        let x = SparseVec::from_entries(vec![(2, int(1)), (0, int(5)), (2, int(-1))]);
        assert_eq!(x, v(&[(0, 5)]));
    }

    #[test]
    fn transpose_and_product() {
        let m = SparseMatrix::from_dense(&[vec![int(1), int(2)], vec![int(0), int(3)]]);
        let t = m.transpose();
        assert_eq!(t.get(1, 0), int(2));
        assert_eq!(m.mul_dense(&[int(1), int(1)]), vec![int(3), int(3)]);
        assert_eq!(m.mul(&SparseMatrix::identity(2)), m);
        assert_eq!(SparseMatrix::from_columns(2, &m.columns()), m);
    }
}
