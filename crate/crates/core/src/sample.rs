//! Seeded random inputs for property checks and searches.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactlin::{SparseVec, Subspace};
use crate::laws::{EndW, Law, LawBasis};
use crate::scalar::{int, rat, Rat};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational `p/q` with `|p| ≤ bound` and `1 ≤ q ≤ den_bound`.
pub fn small_rat(rng: &mut impl Rng, bound: i64, den_bound: i64) -> Rat {
    rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=den_bound.max(1)))
}

pub fn small_int(rng: &mut impl Rng, bound: i64) -> Rat {
    int(rng.gen_range(-bound..=bound))
}

/// An invertible matrix with small integer entries together with its inverse.
pub fn invertible(rng: &mut impl Rng, m: usize) -> (EndW<Rat>, EndW<Rat>) {
    loop {
        let rows: Vec<Vec<Rat>> = (0..m)
            .map(|_| (0..m).map(|_| small_int(rng, 3)).collect())
            .collect();
        let g = EndW::from_rows(&rows);
        if let Some(inv) = g.inverse() {
            return (g, inv);
        }
    }
}

pub fn vector(rng: &mut impl Rng, len: usize, bound: i64) -> SparseVec<Rat> {
    SparseVec::from_entries((0..len).map(|i| (i, small_int(rng, bound))))
}

/// A random element of `s` with small integer coefficients on its basis.
pub fn in_subspace(rng: &mut impl Rng, s: &Subspace<Rat>, bound: i64) -> SparseVec<Rat> {
    let coeffs: Vec<Rat> = (0..s.dim()).map(|_| small_int(rng, bound)).collect();
    s.combination(&coeffs)
}

/// A random law in the given basis with small integer structure constants.
pub fn law(rng: &mut impl Rng, basis: &LawBasis, bound: i64) -> Law<Rat> {
    Law::from_coords(basis, &vector(rng, basis.dim(), bound))
}
