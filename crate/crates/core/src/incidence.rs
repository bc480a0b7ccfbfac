//! The fiber incidence complex `𝔤 →δ A_W →Φ Q∨` at a law and its cohomology.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exactlin::{kernel_with, QuotientSpace, RankMode, SparseMatrix, SparseVec, Subspace};
use crate::laws::{delta_matrix, identity_value, EndW, IdentitySpace, Law, LawBasis, Symmetry};
use crate::presentations::{OperadType, QdualMode, QdualSpace, QuadraticPresentation};
use crate::scalar::Rat;

pub struct FiberComplex {
    mu: Law<Rat>,
    presentation: QuadraticPresentation,
    qdual: QdualSpace,
    delta: SparseMatrix<Rat>,
    phi: SparseMatrix<Rat>,
    rank_mode: RankMode,
    ker_delta: OnceLock<Subspace<Rat>>,
    im_delta: OnceLock<Subspace<Rat>>,
    ker_phi: OnceLock<Subspace<Rat>>,
    im_phi: OnceLock<Subspace<Rat>>,
}

/// Nonzero coordinates of `F(μ)`, or `Ok` when `μ` lies on the locus.
pub fn check_on_locus(mu: &Law<Rat>, p: &QuadraticPresentation) -> Result<()> {
    p.check_law(mu)?;
    let value = p.evaluate(&mu.coords())?;
    if value.is_zero() {
        Ok(())
    } else {
        Err(Error::NotOnLocus {
            nonzero: value.into_entries(),
        })
    }
}

pub fn build_complex(mu: &Law<Rat>, p: &QuadraticPresentation) -> Result<FiberComplex> {
    build_complex_with(mu, p, p.default_qdual_mode(), RankMode::Exact)
}

pub fn build_complex_with(
    mu: &Law<Rat>,
    p: &QuadraticPresentation,
    mode: QdualMode,
    rank_mode: RankMode,
) -> Result<FiberComplex> {
    check_on_locus(mu, p)?;
    let qdual = p.qdual(mode)?;
    let delta = delta_matrix(mu);
    let phi = p.phi_matrix(mu);
    assert!(
        phi.mul(&delta).is_zero(),
        "Φ_μ ∘ δ_μ is nonzero on an on-locus law"
    );
    Ok(FiberComplex {
        mu: mu.clone(),
        presentation: p.clone(),
        qdual,
        delta,
        phi,
        rank_mode,
        ker_delta: OnceLock::new(),
        im_delta: OnceLock::new(),
        ker_phi: OnceLock::new(),
        im_phi: OnceLock::new(),
    })
}

impl FiberComplex {
    pub fn mu(&self) -> &Law<Rat> {
        &self.mu
    }

    pub fn presentation(&self) -> &QuadraticPresentation {
        &self.presentation
    }

    pub fn qdual(&self) -> &QdualSpace {
        &self.qdual
    }

    pub fn rank_mode(&self) -> RankMode {
        self.rank_mode
    }

    pub fn law_basis(&self) -> LawBasis {
        self.mu.basis()
    }

    /// Matrix of `δ_μ`, columns indexed by `E_ab ↦ a*m + b`.
    pub fn delta(&self) -> &SparseMatrix<Rat> {
        &self.delta
    }

    pub fn phi(&self) -> &SparseMatrix<Rat> {
        &self.phi
    }

    pub fn gl_dim(&self) -> usize {
        self.delta.ncols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.delta.nrows()
    }

    pub fn qdual_dim(&self) -> usize {
        self.qdual.dim()
    }

    pub fn ker_delta(&self) -> &Subspace<Rat> {
        self.ker_delta.get_or_init(|| kernel_with(&self.delta, self.rank_mode))
    }

    pub fn im_delta(&self) -> &Subspace<Rat> {
        self.im_delta
            .get_or_init(|| Subspace::span(self.ambient_dim(), self.delta.columns()))
    }

    pub fn ker_phi(&self) -> &Subspace<Rat> {
        self.ker_phi.get_or_init(|| kernel_with(&self.phi, self.rank_mode))
    }

    pub fn im_phi(&self) -> &Subspace<Rat> {
        self.im_phi
            .get_or_init(|| Subspace::span(self.phi.nrows(), self.phi.columns()))
    }

    pub fn rank_delta(&self) -> usize {
        self.gl_dim() - self.ker_delta().dim()
    }

    pub fn rank_phi(&self) -> usize {
        self.ambient_dim() - self.ker_phi().dim()
    }

    pub fn apply_delta(&self, xi: &SparseVec<Rat>) -> SparseVec<Rat> {
        self.delta.mul_vec(xi)
    }

    pub fn apply_phi(&self, alpha: &SparseVec<Rat>) -> SparseVec<Rat> {
        self.phi.mul_vec(alpha)
    }

    pub fn theta(&self, a: &SparseVec<Rat>, b: &SparseVec<Rat>) -> SparseVec<Rat> {
        self.presentation
            .theta(a, b)
            .expect("complex vectors have the ambient length")
    }

    /// `H³ = Q∨ / im Φ_μ` in the complex's model.
    pub fn h3(&self) -> QuotientSpace<Rat> {
        let im = self.im_phi().clone();
        match &self.qdual.span {
            Some(span) => QuotientSpace::new(span.clone(), im)
                .expect("Θ-values lie in the span of Θ on basis pairs"),
            None => QuotientSpace::of_ambient(im),
        }
    }

    pub fn h2(&self) -> QuotientSpace<Rat> {
        QuotientSpace::new(self.ker_phi().clone(), self.im_delta().clone())
            .expect("im δ_μ ⊆ ker Φ_μ")
    }

    pub fn cohomology(&self) -> CohomologyReport {
        let h1 = self.ker_delta().clone();
        let h2 = self.h2();
        let h3 = self.h3();
        let euler_lhs = h1.dim() as i64 - h2.dim() as i64 + h3.dim() as i64;
        let euler_rhs = self.gl_dim() as i64 - self.ambient_dim() as i64 + self.qdual_dim() as i64;
        assert_eq!(euler_lhs, euler_rhs, "Euler identity failed");
        CohomologyReport {
            qdual_mode: self.qdual.mode,
            gl_dim: self.gl_dim(),
            ambient_dim: self.ambient_dim(),
            qdual_dim: self.qdual_dim(),
            rank_delta: self.rank_delta(),
            rank_phi: self.rank_phi(),
            h1,
            h2,
            h3,
            euler_lhs,
            euler_rhs,
        }
    }
}

/// `H¹ = ker δ_μ`, `H² = ker Φ_μ / im δ_μ`, `H³ = Q∨ / im Φ_μ`.
#[derive(Clone, Debug)]
pub struct CohomologyReport {
    pub qdual_mode: QdualMode,
    pub gl_dim: usize,
    pub ambient_dim: usize,
    pub qdual_dim: usize,
    pub rank_delta: usize,
    pub rank_phi: usize,
    pub h1: Subspace<Rat>,
    pub h2: QuotientSpace<Rat>,
    pub h3: QuotientSpace<Rat>,
    pub euler_lhs: i64,
    pub euler_rhs: i64,
}

impl CohomologyReport {
    pub fn dims(&self) -> [usize; 3] {
        [self.h1.dim(), self.h2.dim(), self.h3.dim()]
    }

    pub fn euler_holds(&self) -> bool {
        self.euler_lhs == self.euler_rhs
    }
}

pub fn cohomology(c: &FiberComplex) -> CohomologyReport {
    c.cohomology()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankProfile {
    pub rank_delta: usize,
    pub rank_phi: usize,
    pub gram_rank: usize,
}

pub fn rank_profile(mu: &Law<Rat>, p: &QuadraticPresentation) -> Result<RankProfile> {
    check_on_locus(mu, p)?;
    let delta = delta_matrix(mu);
    let phi = p.phi_matrix(mu);
    Ok(RankProfile {
        rank_delta: crate::exactlin::rank(&delta),
        rank_phi: crate::exactlin::rank(&phi),
        gram_rank: crate::gram::gram(mu).rank,
    })
}

/// `μ(e_j, e_k)` for all pairs, indexed `j*m + k`.
fn product_table(law: &Law<Rat>) -> Vec<SparseVec<Rat>> {
    let m = law.dim();
    let mut acc: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); m * m];
    for ([i, j, k], v) in law.entries() {
        acc[j * m + k].push((i, v.clone()));
    }
    acc.into_iter().map(SparseVec::from_entries).collect()
}

/// `Σ_s x_s · table(s, k)` or `Σ_s x_s · table(k, s)`.
fn bilin_left(table: &[SparseVec<Rat>], m: usize, x: &SparseVec<Rat>, k: usize) -> SparseVec<Rat> {
    x.iter().fold(SparseVec::new(), |acc, (s, v)| acc.add_scaled(v, &table[s * m + k]))
}

fn bilin_right(table: &[SparseVec<Rat>], m: usize, j: usize, x: &SparseVec<Rat>) -> SparseVec<Rat> {
    x.iter().fold(SparseVec::new(), |acc, (s, v)| acc.add_scaled(v, &table[j * m + s]))
}

fn ensure_lie(mu: &Law<Rat>) -> Result<()> {
    if mu.symmetry() != Symmetry::Skew {
        return Err(Error::NotLie(format!("law has {} symmetry", mu.symmetry())));
    }
    let jac = identity_value(OperadType::Lie, mu)?;
    if !jac.is_zero() {
        return Err(Error::NotLie(format!(
            "Jacobi identity fails in {} coordinates",
            jac.nnz()
        )));
    }
    Ok(())
}

/// `(d¹f)(x, y) = [x, f y] − [y, f x] − f[x, y]` in `A_W` coordinates.
pub fn ce_d1_apply(mu: &Law<Rat>, f: &EndW<Rat>) -> SparseVec<Rat> {
    let m = mu.dim();
    let table = product_table(mu);
    let basis = mu.basis();
    let col = |b: usize| SparseVec::from_entries((0..m).map(|i| (i, f.get(i, b).clone())));
    let mut out = Vec::new();
    for j in 0..m {
        for k in j + 1..m {
            let mut v = bilin_right(&table, m, j, &col(k));
            v = v.sub(&bilin_right(&table, m, k, &col(j)));
            let fxy = table[j * m + k]
                .iter()
                .fold(SparseVec::new(), |acc, (s, c)| acc.add_scaled(c, &col(s)));
            v = v.sub(&fxy);
            for (i, x) in v.iter() {
                out.push((basis.position(i, j, k).expect("skew basis position"), x.clone()));
            }
        }
    }
    SparseVec::from_entries(out)
}

/// `(d²c)(x,y,z) = [x,c(y,z)] − [y,c(x,z)] + [z,c(x,y)] − c([x,y],z) + c([x,z],y) − c([y,z],x)`
/// in the coordinates of the alternating identity space.
pub fn ce_d2_apply(mu: &Law<Rat>, c: &Law<Rat>) -> SparseVec<Rat> {
    let m = mu.dim();
    let space = IdentitySpace::new(OperadType::Lie, m);
    ce_d2_with(&product_table(mu), &product_table(c), m, &space)
}

fn ce_d2_with(
    mt: &[SparseVec<Rat>],
    ct: &[SparseVec<Rat>],
    m: usize,
    space: &IdentitySpace,
) -> SparseVec<Rat> {
    let mut out = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            for d in b + 1..m {
                let v = bilin_right(mt, m, a, &ct[b * m + d])
                    .sub(&bilin_right(mt, m, b, &ct[a * m + d]))
                    .add(&bilin_right(mt, m, d, &ct[a * m + b]))
                    .sub(&bilin_left(ct, m, &mt[a * m + b], d))
                    .add(&bilin_left(ct, m, &mt[a * m + d], b))
                    .sub(&bilin_left(ct, m, &mt[b * m + d], a));
                for (i, x) in v.iter() {
                    out.push((space.position(i, [a, b, d]).expect("sorted triple"), x.clone()));
                }
            }
        }
    }
    SparseVec::from_entries(out)
}

/// Chevalley–Eilenberg differentials `d¹: gl(W) → A_W` and `d²: A_W → V`,
/// in the same bases as the incidence complex of the Lie presentation.
pub fn ce_truncation(mu: &Law<Rat>) -> Result<(SparseMatrix<Rat>, SparseMatrix<Rat>)> {
    ensure_lie(mu)?;
    let m = mu.dim();
    let basis = mu.basis();
    let d1_cols: Vec<SparseVec<Rat>> = (0..m * m)
        .map(|n| ce_d1_apply(mu, &EndW::unit(m, n / m, n % m)))
        .collect();
    let space = IdentitySpace::new(OperadType::Lie, m);
    let mt = product_table(mu);
    let d2_cols: Vec<SparseVec<Rat>> = (0..basis.dim())
        .map(|p| ce_d2_with(&mt, &product_table(&basis.basis_law(p)), m, &space))
        .collect();
    Ok((
        SparseMatrix::from_columns(basis.dim(), &d1_cols),
        SparseMatrix::from_columns(space.dim(), &d2_cols),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{image, kernel};
    use crate::scalar::int;

    fn lie(m: usize, e: &[(usize, usize, usize, i64)]) -> Law<Rat> {
        Law::from_free_entries(m, Symmetry::Skew, e.iter().map(|&(i, j, k, v)| (i, j, k, int(v))))
    }

    fn sl2() -> Law<Rat> {
        lie(3, &[(1, 0, 2, 1), (0, 0, 1, -2), (2, 1, 2, -2)])
    }

    fn lie_p(m: usize) -> QuadraticPresentation {
        QuadraticPresentation::builtin(OperadType::Lie, m).unwrap()
    }

    #[test]
    fn abelian_plane() {
        let c = build_complex(&Law::zero(2, Symmetry::Skew), &lie_p(2)).unwrap();
        assert!(c.delta().is_zero() && c.phi().is_zero());
        let r = c.cohomology();
        assert_eq!(r.dims(), [4, 2, 0]);
        assert_eq!((r.euler_lhs, r.euler_rhs), (2, 2));
    }

    #[test]
    fn sl2_and_aff1_are_rigid() {
        let r = build_complex(&sl2(), &lie_p(3)).unwrap().cohomology();
        assert_eq!(r.dims(), [3, 0, 0]);
        assert_eq!((r.rank_delta, r.rank_phi), (6, 3));
        let aff1 = lie(2, &[(1, 0, 1, 1)]);
        let r = build_complex(&aff1, &lie_p(2)).unwrap().cohomology();
        assert_eq!(r.dims(), [2, 0, 0]);
    }

    #[test]
    fn off_locus_is_reported() {
        let bad = lie(3, &[(2, 0, 1, 1), (1, 1, 2, 1)]);
        match build_complex(&bad, &lie_p(3)) {
            Err(Error::NotOnLocus { nonzero }) => assert!(!nonzero.is_empty()),
            Err(e) => panic!("unexpected error {e}"),
            Ok(_) => panic!("a non-Jacobi law was accepted"),
        }
    }

    #[test]
    fn modular_mode_agrees() {
        let c = build_complex_with(&sl2(), &lie_p(3), QdualMode::Ambient, RankMode::Modular { seed: 3 })
            .unwrap();
        assert_eq!(c.cohomology().dims(), [3, 0, 0]);
    }

    #[test]
    fn ce_matches_incidence_on_sl2() {
        let mu = sl2();
        let c = build_complex(&mu, &lie_p(3)).unwrap();
        let (d1, d2) = ce_truncation(&mu).unwrap();
        assert_eq!(&kernel(&d1), c.ker_delta());
        assert_eq!(&image(&d1), c.im_delta());
        assert_eq!(&kernel(&d2), c.ker_phi());
        assert_eq!(d1, c.delta().try_map(|v| Some(-v.clone())).unwrap());
    }

    #[test]
    fn ce_rejects_non_lie() {
        let bad = lie(3, &[(2, 0, 1, 1), (1, 1, 2, 1)]);
        assert!(matches!(ce_truncation(&bad), Err(Error::NotLie(_))));
    }
}
