//! Sparse Gauss–Jordan elimination over an arbitrary field.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use super::sparse::SparseVec;
use crate::scalar::Field;

/// Pivot selection rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pivoting {
    /// Shortest remaining row, then the sparsest column within it. Keeps
    /// fill-in local; the resulting pivot set is not canonical.
    Markowitz,
    /// Columns left to right, shortest candidate row. With `reduce` this
    /// yields the unique reduced row echelon form.
    Leftmost,
}

/// Outcome of an elimination pass.
#[derive(Clone, Debug)]
pub struct Elimination<T> {
    /// `(pivot column, row)` pairs sorted by pivot column. Each row is
    /// normalized to 1 at its pivot. When reduced, every row vanishes at the
    /// other pivot columns.
    pub pivots: Vec<(usize, SparseVec<T>)>,
    /// Nonzero rows left over whose support lies entirely in ineligible columns.
    pub residual: Vec<SparseVec<T>>,
}

impl<T: Field> Elimination<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.iter().map(|(c, _)| *c).collect()
    }
}

fn eligible_nnz<T>(row: &SparseVec<T>, eligible: usize) -> usize
where
    T: Field,
{
    row.entries().partition_point(|(c, _)| *c < eligible)
}

/// Eliminates `rows`, pivoting only in columns `< eligible`.
///
/// With `reduce = false` the pivot rows are only in echelon form relative to
/// the order they were chosen in; this is enough for rank.
pub fn eliminate<T: Field>(
    rows: Vec<SparseVec<T>>,
    ncols: usize,
    eligible: usize,
    pivoting: Pivoting,
    reduce: bool,
) -> Elimination<T> {
    let eligible = eligible.min(ncols);
    let mut active: Vec<Option<SparseVec<T>>> = rows
        .into_iter()
        .map(|r| if r.is_zero() { None } else { Some(r) })
        .collect();
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); eligible];
    for (id, row) in active.iter().enumerate() {
        if let Some(row) = row {
            for (c, _) in row.iter() {
                if c < eligible {
                    col_rows[c].push(id);
                }
            }
        }
    }

    let mut chosen: Vec<(usize, SparseVec<T>)> = Vec::new();
    let mut stamp = vec![usize::MAX; active.len()];

    let mut eliminate_column =
        |c: usize, r: usize, active: &mut Vec<Option<SparseVec<T>>>, col_rows: &mut Vec<Vec<usize>>| -> (SparseVec<T>, Vec<usize>) {
            let row = active[r].take().expect("pivot row is active");
            let pivot = row.get(c).expect("pivot entry present").clone();
            let prow = row.scale(&pivot.inv());
            let candidates = std::mem::take(&mut col_rows[c]);
            let mut touched = Vec::new();
            for id in candidates {
                if id == r || stamp[id] == c {
                    continue;
                }
                stamp[id] = c;
                let Some(target) = active[id].as_ref() else {
                    continue;
                };
                let Some(val) = target.get(c) else {
                    continue;
                };
                let factor = -val.clone();
                let updated = target.add_scaled(&factor, &prow);
                // register fill-in
                let mut old = target.entries().iter().map(|(j, _)| *j).peekable();
                for (j, _) in updated.iter() {
                    if j >= eligible {
                        break;
                    }
                    while old.peek().is_some_and(|&o| o < j) {
                        old.next();
                    }
                    if old.peek() != Some(&j) {
                        col_rows[j].push(id);
                    }
                }
                active[id] = if updated.is_zero() { None } else { Some(updated) };
                touched.push(id);
            }
            (prow, touched)
        };

    match pivoting {
        Pivoting::Markowitz => {
            let mut heap: BinaryHeap<Reverse<(usize, usize)>> = active
                .iter()
                .enumerate()
                .filter_map(|(id, r)| r.as_ref().map(|r| Reverse((eligible_nnz(r, eligible), id))))
                .collect();
            while let Some(Reverse((len, id))) = heap.pop() {
                let Some(row) = active[id].as_ref() else {
                    continue;
                };
                if eligible_nnz(row, eligible) != len {
                    continue;
                }
                if len == 0 {
                    continue;
                }
                let c = row
                    .iter()
                    .take_while(|(j, _)| *j < eligible)
                    .min_by_key(|(j, _)| (col_rows[*j].len(), *j))
                    .map(|(j, _)| j)
                    .expect("row has an eligible entry");
                let (prow, touched) = eliminate_column(c, id, &mut active, &mut col_rows);
                for t in touched {
                    if let Some(r) = active[t].as_ref() {
                        heap.push(Reverse((eligible_nnz(r, eligible), t)));
                    }
                }
                chosen.push((c, prow));
            }
        }
        Pivoting::Leftmost => {
            for c in 0..eligible {
                let best = col_rows[c]
                    .iter()
                    .copied()
                    .filter(|&id| active[id].as_ref().is_some_and(|r| r.get(c).is_some()))
                    .min_by_key(|&id| (active[id].as_ref().map_or(0, SparseVec::nnz), id));
                if let Some(id) = best {
                    let (prow, _) = eliminate_column(c, id, &mut active, &mut col_rows);
                    chosen.push((c, prow));
                }
            }
        }
    }

    if reduce {
        back_substitute(&mut chosen);
    }
    chosen.sort_by_key(|(c, _)| *c);
    let residual = active.into_iter().flatten().collect();
    Elimination {
        pivots: chosen,
        residual,
    }
}

/// Clears every pivot column from the rows chosen before it.
///
/// A row chosen at step k has no entries in columns pivoted before k, so
/// adding it into an earlier row never introduces a pivot column.
fn back_substitute<T: Field>(chosen: &mut [(usize, SparseVec<T>)]) {
    let position: HashMap<usize, usize> = chosen
        .iter()
        .enumerate()
        .map(|(k, (c, _))| (*c, k))
        .collect();
    let mut hits: Vec<Vec<usize>> = vec![Vec::new(); chosen.len()];
    for (j, (cj, row)) in chosen.iter().enumerate() {
        for (c, _) in row.iter() {
            if c == *cj {
                continue;
            }
            if let Some(&k) = position.get(&c) {
                debug_assert!(k > j);
                hits[k].push(j);
            }
        }
    }
    for k in (0..chosen.len()).rev() {
        if hits[k].is_empty() {
            continue;
        }
        let (ck, rk) = chosen[k].clone();
        for &j in &hits[k] {
            let row = &chosen[j].1;
            let val = row.get(ck).expect("recorded hit").clone();
            chosen[j].1 = row.add_scaled(&-val, &rk);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rat};

    fn rows(d: &[&[i64]]) -> Vec<SparseVec<Rat>> {
        d.iter()
            .map(|r| SparseVec::from_dense(&r.iter().map(|x| int(*x)).collect::<Vec<_>>()))
            .collect()
    }

    #[test]
    fn leftmost_reduced_is_rref() {
        let e = eliminate(
            rows(&[&[0, 2, 4, 2], &[1, 1, 1, 1], &[1, 2, 3, 2]]),
            4,
            4,
            Pivoting::Leftmost,
            true,
        );
        assert_eq!(e.pivot_columns(), vec![0, 1]);
        assert_eq!(e.pivots[0].1.to_dense(4), vec![int(1), int(0), int(-1), int(0)]);
        assert_eq!(e.pivots[1].1.to_dense(4), vec![int(0), int(1), int(2), int(1)]);
        assert!(e.residual.is_empty());
    }

    #[test]
    fn markowitz_reduced_has_identity_on_pivots() {
        let e = eliminate(
            rows(&[&[3, 1, 0, 5], &[1, 0, 2, 0], &[4, 1, 2, 5], &[0, 0, 1, 1]]),
            4,
            4,
            Pivoting::Markowitz,
            true,
        );
        assert_eq!(e.rank(), 3);
        let cols = e.pivot_columns();
        for (c, row) in &e.pivots {
            for &d in &cols {
                let expect = if d == *c { int(1) } else { int(0) };
                assert_eq!(row.value(d), expect);
            }
        }
    }

    #[test]
    fn ineligible_columns_are_left_in_the_residual() {
        let e = eliminate(rows(&[&[1, 1], &[2, 3]]), 2, 1, Pivoting::Markowitz, true);
        assert_eq!(e.rank(), 1);
        assert_eq!(e.residual.len(), 1);
        assert_eq!(e.residual[0].to_dense(2), vec![int(0), int(1)]);
    }
}
