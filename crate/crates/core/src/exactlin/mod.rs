//! Exact linear algebra over fields: rank, kernel, image, solving and quotients.

mod echelon;
pub mod modular;
mod sparse;
mod subspace;

pub use echelon::{eliminate, Elimination, Pivoting};
pub use modular::{certified_rank, RankCertificate, RankMethod};
pub use sparse::{SparseMatrix, SparseVec};
pub use subspace::{QuotientSpace, Subspace};

use crate::error::Result;
use crate::scalar::{Field, Rat};

/// How ranks and kernels of rational matrices are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMode {
    Exact,
    /// Multi-prime ranks certified by an exact kernel check (see [`modular`]).
    Modular { seed: u64 },
}

pub fn rank<T: Field>(m: &SparseMatrix<T>) -> usize {
    eliminate(m.rows().to_vec(), m.ncols(), m.ncols(), Pivoting::Markowitz, false).rank()
}

pub(crate) fn rank_exact(m: &SparseMatrix<Rat>) -> usize {
    rank(m)
}

pub fn rank_with(m: &SparseMatrix<Rat>, mode: RankMode) -> usize {
    match mode {
        RankMode::Exact => rank(m),
        RankMode::Modular { seed } => certified_rank(m, seed).rank,
    }
}

/// Right kernel in reduced echelon form.
pub fn kernel<T: Field>(m: &SparseMatrix<T>) -> Subspace<T> {
    let n = m.ncols();
    let e = eliminate(m.rows().to_vec(), n, n, Pivoting::Markowitz, true);
    let mut is_pivot = vec![false; n];
    for (c, _) in &e.pivots {
        is_pivot[*c] = true;
    }
    let mut parts: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
    for (c, row) in &e.pivots {
        for (j, v) in row.iter() {
            if j != *c {
                debug_assert!(!is_pivot[j]);
                parts[j].push((*c, -v.clone()));
            }
        }
    }
    let vectors: Vec<SparseVec<T>> = (0..n)
        .filter(|j| !is_pivot[*j])
        .map(|j| {
            let mut entries = std::mem::take(&mut parts[j]);
            entries.push((j, T::one()));
            SparseVec::from_entries(entries)
        })
        .collect();
    debug_assert!(vectors.iter().all(|v| m.mul_vec(v).is_zero()));
    Subspace::span(n, vectors)
}

pub fn kernel_with(m: &SparseMatrix<Rat>, mode: RankMode) -> Subspace<Rat> {
    match mode {
        RankMode::Exact => kernel(m),
        RankMode::Modular { seed } => {
            let cert = certified_rank(m, seed);
            match cert.kernel {
                Some(k) => k,
                None => kernel(m),
            }
        }
    }
}

/// Column space.
pub fn image<T: Field>(m: &SparseMatrix<T>) -> Subspace<T> {
    Subspace::span(m.nrows(), m.columns())
}

/// Some `x` with `m x = b`, or `None` when `b` is not in the column space.
pub fn solve<T: Field>(m: &SparseMatrix<T>, b: &SparseVec<T>) -> Option<SparseVec<T>> {
    assert!(
        b.max_index().is_none_or(|i| i < m.nrows()),
        "right-hand side longer than the row count"
    );
    let n = m.ncols();
    let aug = m.augment(b);
    let e = eliminate(aug.into_rows(), n + 1, n, Pivoting::Markowitz, true);
    if !e.residual.is_empty() {
        return None;
    }
    let x = SparseVec::from_entries(e.pivots.iter().map(|(c, row)| (*c, row.value(n))));
    assert_eq!(&m.mul_vec(&x), b, "solution failed exact substitution");
    Some(x)
}

pub fn quotient<T: Field>(num: Subspace<T>, den: Subspace<T>) -> Result<QuotientSpace<T>> {
    QuotientSpace::new(num, den)
}
