use super::echelon::{eliminate, Pivoting};
use super::sparse::SparseVec;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// A linear subspace of `T^n`, stored as its reduced row echelon basis.
///
/// The basis is canonical, so two subspaces are equal iff their bases are.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<T> {
    ambient: usize,
    basis: Vec<SparseVec<T>>,
    pivots: Vec<usize>,
}

impl<T: Field> Subspace<T> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(SparseVec::unit).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = SparseVec<T>>) -> Self {
        let vectors: Vec<_> = vectors.into_iter().collect();
        assert!(
            vectors.iter().all(|v| v.max_index().is_none_or(|i| i < ambient)),
            "spanning vector outside the ambient space"
        );
        let e = eliminate(vectors, ambient, ambient, Pivoting::Leftmost, true);
        let (pivots, basis) = e.pivots.into_iter().unzip();
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec<T>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection along the echelon basis; zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &SparseVec<T>) -> SparseVec<T> {
        let mut out = v.clone();
        for (p, b) in self.pivots.iter().zip(&self.basis) {
            if let Some(c) = v.get(*p) {
                out = out.add_scaled(&-c.clone(), b);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec<T>) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace<T>) -> bool {
        self.ambient == other.ambient && other.basis.iter().all(|b| self.contains(b))
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &SparseVec<T>) -> Option<Vec<T>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|p| v.value(*p)).collect())
    }

    pub fn combination(&self, coeffs: &[T]) -> SparseVec<T> {
        assert_eq!(coeffs.len(), self.dim());
        coeffs
            .iter()
            .zip(&self.basis)
            .fold(SparseVec::new(), |acc, (c, b)| acc.add_scaled(c, b))
    }

    pub fn sum(&self, other: &Subspace<T>) -> Subspace<T> {
        assert_eq!(self.ambient, other.ambient);
        Subspace::span(
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }
}

/// A quotient `num / den` with explicit lifts of a basis.
#[derive(Clone, Debug)]
pub struct QuotientSpace<T> {
    num: Subspace<T>,
    den: Subspace<T>,
    representatives: Vec<SparseVec<T>>,
    rep_pivots: Vec<usize>,
    num_is_ambient: bool,
}

impl<T: Field> QuotientSpace<T> {
    pub fn new(num: Subspace<T>, den: Subspace<T>) -> Result<Self> {
        if !num.contains_subspace(&den) {
            return Err(Error::SubspaceNotContained);
        }
        let reduced: Vec<_> = num
            .basis()
            .iter()
            .map(|b| den.reduce(b))
            .filter(|r| !r.is_zero())
            .collect();
        let reps = Subspace::span(num.ambient_dim(), reduced);
        debug_assert_eq!(reps.dim(), num.dim() - den.dim());
        Ok(QuotientSpace {
            num,
            den,
            rep_pivots: reps.pivots,
            representatives: reps.basis,
            num_is_ambient: false,
        })
    }

    /// `T^n / den`. Representatives are the unit vectors off the pivots of `den`.
    pub fn of_ambient(den: Subspace<T>) -> Self {
        let n = den.ambient_dim();
        let mut is_pivot = vec![false; n];
        for p in den.pivots() {
            is_pivot[*p] = true;
        }
        let rep_pivots: Vec<usize> = (0..n).filter(|i| !is_pivot[*i]).collect();
        QuotientSpace {
            num: Subspace::zero(n),
            representatives: rep_pivots.iter().map(|i| SparseVec::unit(*i)).collect(),
            rep_pivots,
            den,
            num_is_ambient: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.den.ambient_dim()
    }

    pub fn numerator_dim(&self) -> usize {
        if self.num_is_ambient {
            self.ambient_dim()
        } else {
            self.num.dim()
        }
    }

    pub fn numerator(&self) -> Option<&Subspace<T>> {
        (!self.num_is_ambient).then_some(&self.num)
    }

    pub fn denominator(&self) -> &Subspace<T> {
        &self.den
    }

    pub fn representatives(&self) -> &[SparseVec<T>] {
        &self.representatives
    }

    /// Class of `v` in representative coordinates, or `None` if `v` is not in the numerator.
    pub fn reduce(&self, v: &SparseVec<T>) -> Option<Vec<T>> {
        let r = self.den.reduce(v);
        let coords: Vec<T> = self.rep_pivots.iter().map(|p| r.value(*p)).collect();
        if !self.num_is_ambient {
            let rest = coords
                .iter()
                .zip(&self.representatives)
                .fold(r, |acc, (c, b)| acc.add_scaled(&-c.clone(), b));
            if !rest.is_zero() {
                return None;
            }
        }
        Some(coords)
    }

    pub fn lift(&self, coords: &[T]) -> SparseVec<T> {
        assert_eq!(coords.len(), self.dim());
        coords
            .iter()
            .zip(&self.representatives)
            .fold(SparseVec::new(), |acc, (c, b)| acc.add_scaled(c, b))
    }

    /// True iff `v` (assumed in the numerator) is zero in the quotient.
    pub fn is_trivial(&self, v: &SparseVec<T>) -> bool {
        self.den.contains(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rat};

    fn e(i: usize) -> SparseVec<Rat> {
        SparseVec::unit(i)
    }

    #[test]
    fn span_is_canonical() {
        let a = Subspace::span(3, vec![
            SparseVec::from_dense(&[int(1), int(1), int(0)]),
            SparseVec::from_dense(&[int(0), int(2), int(2)]),
        ]);
        let b = Subspace::span(3, vec![
            SparseVec::from_dense(&[int(1), int(0), int(-1)]),
            SparseVec::from_dense(&[int(3), int(5), int(2)]),
        ]);
        assert_eq!(a, b);
        assert_eq!(a.pivots(), &[0, 1]);
    }

    #[test]
    fn quotient_examples() {
        let q = QuotientSpace::new(Subspace::<Rat>::full(2), Subspace::zero(2)).unwrap();
        assert_eq!(q.dim(), 2);

        let s = Subspace::span(3, vec![e(0), e(2)]);
        let q = QuotientSpace::new(s.clone(), s).unwrap();
        assert_eq!(q.dim(), 0);

        let q = QuotientSpace::new(Subspace::full(3), Subspace::span(3, vec![e(0)])).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(q.representatives(), &[e(1), e(2)]);
        let v = SparseVec::from_dense(&[int(7), int(2), int(-1)]);
        assert_eq!(q.reduce(&v).unwrap(), vec![int(2), int(-1)]);
    }

    #[test]
    fn quotient_rejects_non_containment() {
        let num = Subspace::span(2, vec![e(0)]);
        let den = Subspace::span(2, vec![e(1)]);
        assert!(matches!(
            QuotientSpace::new(num, den),
            Err(Error::SubspaceNotContained)
        ));
    }

    #[test]
    fn ambient_quotient_matches_general_quotient() {
        let den = Subspace::span(3, vec![SparseVec::from_dense(&[int(1), int(2), int(3)])]);
        let a = QuotientSpace::of_ambient(den.clone());
        let b = QuotientSpace::new(Subspace::full(3), den).unwrap();
        let v = SparseVec::from_dense(&[int(4), int(-1), int(5)]);
        assert_eq!(a.reduce(&v), b.reduce(&v));
        assert_eq!(a.dim(), 2);
    }
}
