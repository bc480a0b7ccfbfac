//! Quadratic presentations of identity loci and their polarization `Θ`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactlin::{SparseMatrix, SparseVec, Subspace};
use crate::laws::{ensure_compatible, identity_bilinear, IdentitySpace, Law, LawBasis, LawIndex, Symmetry};
use crate::scalar::{rat, Rat, Ring};
use num_traits::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperadType {
    Assoc,
    Comm,
    Lie,
    Leib,
    Custom,
}

impl OperadType {
    pub const BUILTIN: [OperadType; 4] = [
        OperadType::Assoc,
        OperadType::Comm,
        OperadType::Lie,
        OperadType::Leib,
    ];

    /// Symmetry type of the laws the builtin identity is imposed on.
    pub fn law_symmetry(self) -> Option<Symmetry> {
        match self {
            OperadType::Lie => Some(Symmetry::Skew),
            OperadType::Comm => Some(Symmetry::Symmetric),
            OperadType::Assoc | OperadType::Leib => Some(Symmetry::None),
            OperadType::Custom => None,
        }
    }
}

impl fmt::Display for OperadType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OperadType::Assoc => "assoc",
            OperadType::Comm => "comm",
            OperadType::Lie => "lie",
            OperadType::Leib => "leib",
            OperadType::Custom => "custom",
        })
    }
}

impl FromStr for OperadType {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "assoc" => Ok(OperadType::Assoc),
            "comm" => Ok(OperadType::Comm),
            "lie" => Ok(OperadType::Lie),
            "leib" => Ok(OperadType::Leib),
            "custom" => Ok(OperadType::Custom),
            other => Err(format!("unknown operad type {other:?}")),
        }
    }
}

/// Model used for `Q∨`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QdualMode {
    /// The whole ambient identity space `V`.
    Ambient,
    /// `span{Θ(e_p, e_q)} ⊆ V`.
    SpanOfTheta,
}

impl fmt::Display for QdualMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QdualMode::Ambient => "ambient",
            QdualMode::SpanOfTheta => "span",
        })
    }
}

impl FromStr for QdualMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ambient" => Ok(QdualMode::Ambient),
            "span" | "span-of-theta" => Ok(QdualMode::SpanOfTheta),
            other => Err(format!("unknown qdual mode {other:?}")),
        }
    }
}

/// Largest `dim A_W` for which `span{Θ(e_p, e_q)}` is enumerated.
pub const SPAN_LIMIT: usize = 200;

#[derive(Clone, Debug)]
enum Source {
    Builtin(IdentitySpace),
    Custom {
        target_dim: usize,
        /// `by_p[p] = [(a, q, B[a][p][q])]`, both orders of `(p, q)` present.
        by_p: Vec<Vec<(usize, usize, Rat)>>,
    },
}

/// A quadratic map `F: A_W → V` together with its polarization.
#[derive(Clone, Debug)]
pub struct QuadraticPresentation {
    kind: OperadType,
    basis: Option<LawBasis>,
    ambient_dim: usize,
    source: Source,
}

/// The chosen model of `Q∨` inside `V`.
#[derive(Clone, Debug)]
pub struct QdualSpace {
    pub mode: QdualMode,
    /// `None` in ambient mode.
    pub span: Option<Subspace<Rat>>,
    pub target_dim: usize,
}

impl QdualSpace {
    pub fn dim(&self) -> usize {
        self.span.as_ref().map_or(self.target_dim, Subspace::dim)
    }
}

impl QuadraticPresentation {
    /// The builtin presentation of `kind` on `m`-dimensional laws.
    pub fn builtin(kind: OperadType, m: usize) -> Result<Self> {
        let symmetry = kind.law_symmetry().ok_or_else(|| Error::SymmetryMismatch {
            kind: kind.to_string(),
            found: "custom presentations need an explicit tensor".into(),
        })?;
        let basis = LawBasis::new(m, symmetry);
        Ok(QuadraticPresentation {
            kind,
            ambient_dim: basis.dim(),
            basis: Some(basis),
            source: Source::Builtin(IdentitySpace::new(kind, m)),
        })
    }

    /// A presentation from an explicit tensor `F(ν)_a = Σ B[a][p][q] ν_p ν_q`.
    ///
    /// `entries` lists `(a, p, q, B[a][p][q])` over the full tensor; it must be
    /// symmetric in `(p, q)`.
    pub fn custom(
        entries: impl IntoIterator<Item = (usize, usize, usize, Rat)>,
        ambient_dim: usize,
        target_dim: usize,
    ) -> Result<Self> {
        let mut full: BTreeMap<(usize, usize, usize), Rat> = BTreeMap::new();
        for (a, p, q, v) in entries {
            if a >= target_dim {
                return Err(Error::DimensionMismatch {
                    expected: target_dim,
                    got: a + 1,
                });
            }
            if p >= ambient_dim || q >= ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: p.max(q) + 1,
                });
            }
            let slot = full.entry((a, p, q)).or_insert_with(|| rat(0, 1));
            *slot += v;
        }
        full.retain(|_, v| !v.is_zero());
        for (&(a, p, q), v) in &full {
            if full.get(&(a, q, p)) != Some(v) {
                return Err(Error::AsymmetricTensor { a, p, q });
            }
        }
        let mut by_p = vec![Vec::new(); ambient_dim];
        for ((a, p, q), v) in full {
            by_p[p].push((a, q, v));
        }
        Ok(QuadraticPresentation {
            kind: OperadType::Custom,
            basis: None,
            ambient_dim,
            source: Source::Custom { target_dim, by_p },
        })
    }

    /// Attaches the law basis a custom presentation is meant for.
    pub fn for_laws(mut self, basis: LawBasis) -> Result<Self> {
        if basis.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: basis.dim(),
            });
        }
        if let Some(b) = &self.basis {
            if *b != basis {
                return Err(Error::InvalidLaw("presentation already bound to another law basis".into()));
            }
        }
        self.basis = Some(basis);
        Ok(self)
    }

    pub fn kind(&self) -> OperadType {
        self.kind
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn target_dim(&self) -> usize {
        match &self.source {
            Source::Builtin(space) => space.dim(),
            Source::Custom { target_dim, .. } => *target_dim,
        }
    }

    pub fn law_basis(&self) -> Option<&LawBasis> {
        self.basis.as_ref()
    }

    pub fn identity_space(&self) -> Option<&IdentitySpace> {
        match &self.source {
            Source::Builtin(space) => Some(space),
            Source::Custom { .. } => None,
        }
    }

    /// Ambient for Lie; span of `Θ` for the others when small enough.
    pub fn default_qdual_mode(&self) -> QdualMode {
        match self.kind {
            OperadType::Lie => QdualMode::Ambient,
            _ if self.ambient_dim <= SPAN_LIMIT => QdualMode::SpanOfTheta,
            _ => QdualMode::Ambient,
        }
    }

    pub fn check_law(&self, mu: &Law<Rat>) -> Result<()> {
        if let Some(basis) = &self.basis {
            if basis.m() != mu.dim() || basis.symmetry() != mu.symmetry() {
                ensure_compatible(self.kind, mu.symmetry())?;
                return Err(Error::DimensionMismatch {
                    expected: basis.m(),
                    got: mu.dim(),
                });
            }
        } else if mu.basis().dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: mu.basis().dim(),
            });
        }
        Ok(())
    }

    fn check_coords(&self, v: &SparseVec<Rat>) -> Result<()> {
        match v.max_index() {
            Some(i) if i >= self.ambient_dim => Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: i + 1,
            }),
            _ => Ok(()),
        }
    }

    fn law_of(&self, v: &SparseVec<Rat>) -> Law<Rat> {
        let basis = self.basis.as_ref().expect("builtin presentations carry a law basis");
        Law::from_coords(basis, v)
    }

    /// `Θ(a, b)`, symmetric bilinear with `Θ(a, a) = F(a)`.
    pub fn theta(&self, a: &SparseVec<Rat>, b: &SparseVec<Rat>) -> Result<SparseVec<Rat>> {
        self.check_coords(a)?;
        self.check_coords(b)?;
        Ok(match &self.source {
            Source::Builtin(_) => self.theta_laws(&self.law_of(a), &self.law_of(b)),
            Source::Custom { by_p, .. } => custom_theta(by_p, a, b),
        })
    }

    /// `Θ` on laws (builtin) or on their coordinates (custom).
    pub fn theta_laws(&self, a: &Law<Rat>, b: &Law<Rat>) -> SparseVec<Rat> {
        match &self.source {
            Source::Builtin(space) => {
                let (ia, ib) = (LawIndex::new(a), LawIndex::new(b));
                let ab = identity_bilinear(self.kind, space, &ia, &ib);
                let ba = identity_bilinear(self.kind, space, &ib, &ia);
                ab.add(&ba).scale(&rat(1, 2))
            }
            Source::Custom { by_p, .. } => custom_theta(by_p, &a.coords(), &b.coords()),
        }
    }

    pub fn evaluate(&self, v: &SparseVec<Rat>) -> Result<SparseVec<Rat>> {
        self.theta(v, v)
    }

    /// `F` over an arbitrary coefficient ring, for truncated substitutions.
    pub fn evaluate_over<T: Ring>(
        &self,
        coords: &SparseVec<T>,
        embed: impl Fn(&Rat) -> T,
    ) -> SparseVec<T> {
        match &self.source {
            Source::Builtin(space) => {
                let basis = self.basis.as_ref().expect("builtin basis");
                let law = Law::from_coords(basis, coords);
                let idx = LawIndex::new(&law);
                identity_bilinear(self.kind, space, &idx, &idx)
            }
            Source::Custom { by_p, .. } => {
                let mut acc = Vec::new();
                for (p, x) in coords.iter() {
                    for (a, q, v) in &by_p[p] {
                        if let Some(y) = coords.get(*q) {
                            acc.push((*a, embed(v) * x.clone() * y.clone()));
                        }
                    }
                }
                SparseVec::from_entries(acc)
            }
        }
    }

    /// Matrix of `Φ_μ = Θ(μ, ·): A_W → V`.
    pub fn phi_matrix(&self, mu: &Law<Rat>) -> SparseMatrix<Rat> {
        let cols: Vec<SparseVec<Rat>> = match &self.source {
            Source::Builtin(space) => {
                let basis = self.basis.as_ref().expect("builtin basis");
                let imu = LawIndex::new(mu);
                let half = rat(1, 2);
                (0..self.ambient_dim)
                    .map(|p| {
                        let e = basis.basis_law::<Rat>(p);
                        let ie = LawIndex::new(&e);
                        identity_bilinear(self.kind, space, &imu, &ie)
                            .add(&identity_bilinear(self.kind, space, &ie, &imu))
                            .scale(&half)
                    })
                    .collect()
            }
            Source::Custom { by_p, .. } => {
                let m = mu.coords();
                (0..self.ambient_dim)
                    .map(|p| custom_theta(by_p, &m, &SparseVec::unit(p)))
                    .collect()
            }
        };
        SparseMatrix::from_columns(self.target_dim(), &cols)
    }

    pub fn qdual(&self, mode: QdualMode) -> Result<QdualSpace> {
        let target_dim = self.target_dim();
        match mode {
            QdualMode::Ambient => Ok(QdualSpace {
                mode,
                span: None,
                target_dim,
            }),
            QdualMode::SpanOfTheta => {
                if self.ambient_dim > SPAN_LIMIT {
                    if self.span_is_everything() {
                        return Ok(QdualSpace {
                            mode,
                            span: Some(Subspace::full(target_dim)),
                            target_dim,
                        });
                    }
                    return Err(Error::SpanTooLarge {
                        dim: self.ambient_dim,
                        limit: SPAN_LIMIT,
                    });
                }
                let mut values = Vec::new();
                for p in 0..self.ambient_dim {
                    for q in p..self.ambient_dim {
                        let v = self.theta(&SparseVec::unit(p), &SparseVec::unit(q))?;
                        if !v.is_zero() {
                            values.push(v);
                        }
                    }
                }
                Ok(QdualSpace {
                    mode,
                    span: Some(Subspace::span(target_dim, values)),
                    target_dim,
                })
            }
        }
    }

    /// Certifies `span Θ = V` from a sparse family of values `Θ(e_p, e_q)`.
    ///
    /// For each coordinate `(i; x, y, z)` and a spare index `a`, the composable
    /// pairs `(a; x, y)·(i; a, z)` and `(a; y, z)·(i; x, a)` are evaluated.
    fn span_is_everything(&self) -> bool {
        let (Source::Builtin(space), Some(basis)) = (&self.source, &self.basis) else {
            return false;
        };
        let m = basis.m();
        let free = |i: usize, j: usize, k: usize| basis.position(i, j, k).or_else(|| basis.position(i, k, j));
        let target = self.target_dim();
        let mut hit = vec![false; target];
        let mut rest = Vec::new();
        for n in 0..target {
            let [i, x, y, z] = space.coordinate(n);
            let spare = (0..m).filter(|a| ![i, x, y, z].contains(a)).take(2);
            for a in spare {
                let splits = [
                    ((a, x, y), (i, a, z)),
                    ((a, x, z), (i, a, y)),
                    ((a, y, z), (i, a, x)),
                    ((a, y, z), (i, x, a)),
                ];
                for ((pa, pb, pc), (qa, qb, qc)) in splits {
                    let (Some(p), Some(q)) = (free(pa, pb, pc), free(qa, qb, qc)) else {
                        continue;
                    };
                    let v = self
                        .theta(&SparseVec::unit(p), &SparseVec::unit(q))
                        .expect("basis vectors are in range");
                    match v.entries() {
                        [] => {}
                        [(c, _)] => hit[*c] = true,
                        _ => rest.push(v),
                    }
                }
            }
        }
        if hit.iter().all(|h| *h) {
            return true;
        }
        rest.extend(hit.iter().enumerate().filter(|(_, h)| **h).map(|(c, _)| SparseVec::unit(c)));
        Subspace::span(target, rest).dim() == target
    }

    /// The full tensor `(a, p, q, B[a][p][q])`, materialized from `Θ` on basis pairs.
    pub fn tensor(&self) -> Vec<(usize, usize, usize, Rat)> {
        let mut out = Vec::new();
        for p in 0..self.ambient_dim {
            for q in p..self.ambient_dim {
                let v = self
                    .theta(&SparseVec::unit(p), &SparseVec::unit(q))
                    .expect("basis vectors are in range");
                for (a, x) in v.iter() {
                    out.push((a, p, q, x.clone()));
                    if p != q {
                        out.push((a, q, p, x.clone()));
                    }
                }
            }
        }
        out
    }
}

fn custom_theta(
    by_p: &[Vec<(usize, usize, Rat)>],
    a: &SparseVec<Rat>,
    b: &SparseVec<Rat>,
) -> SparseVec<Rat> {
    let mut acc = Vec::new();
    for (p, x) in a.iter() {
        for (c, q, v) in &by_p[p] {
            if let Some(y) = b.get(*q) {
                acc.push((*c, v * x * y));
            }
        }
    }
    SparseVec::from_entries(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laws::identity_value;
    use crate::scalar::int;

    #[test]
    fn span_certificate_is_sound() {
        let cases = [(OperadType::Lie, 5), (OperadType::Lie, 6), (OperadType::Assoc, 5), (OperadType::Comm, 5), (OperadType::Leib, 5), (OperadType::Leib, 3)];
        for (kind, m) in cases {
            let p = QuadraticPresentation::builtin(kind, m).unwrap();
            let full = p.qdual(QdualMode::SpanOfTheta).unwrap().dim() == p.target_dim();
            if p.span_is_everything() {
                assert!(full, "{kind} m = {m}");
            } else {
                assert!(kind != OperadType::Lie, "{kind} m = {m} full {full}");
            }
        }
    }

    #[test]
    fn single_quadric_polarizes_to_half() {
        let p = QuadraticPresentation::custom(
            [(0, 0, 1, rat(1, 2)), (0, 1, 0, rat(1, 2))],
            2,
            1,
        )
        .unwrap();
        let t = p.theta(&SparseVec::unit(0), &SparseVec::unit(1)).unwrap();
        assert_eq!(t.to_dense(1), vec![rat(1, 2)]);
        let f = p.evaluate(&SparseVec::from_dense(&[int(3), int(5)])).unwrap();
        assert_eq!(f.to_dense(1), vec![int(15)]);
    }

    #[test]
    fn asymmetric_tensor_is_rejected() {
        let err = QuadraticPresentation::custom([(0, 0, 1, int(1))], 2, 1).unwrap_err();
        assert!(matches!(err, Error::AsymmetricTensor { .. }));
    }

    #[test]
    fn zero_tensor_vanishes_everywhere() {
        let p = QuadraticPresentation::custom([], 3, 2).unwrap();
        assert!(p.evaluate(&SparseVec::from_dense(&[int(1), int(2), int(3)])).unwrap().is_zero());
    }

    #[test]
    fn dimension_mismatch() {
        let p = QuadraticPresentation::builtin(OperadType::Lie, 3).unwrap();
        let bad = SparseVec::unit(9);
        assert!(matches!(
            p.theta(&bad, &SparseVec::unit(0)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn qdual_examples() {
        let lie3 = QuadraticPresentation::builtin(OperadType::Lie, 3).unwrap();
        assert_eq!(lie3.qdual(QdualMode::SpanOfTheta).unwrap().dim(), 3);
        assert_eq!(lie3.qdual(QdualMode::Ambient).unwrap().dim(), 3);
        let lie2 = QuadraticPresentation::builtin(OperadType::Lie, 2).unwrap();
        assert_eq!(lie2.target_dim(), 0);
        assert_eq!(lie2.qdual(QdualMode::SpanOfTheta).unwrap().dim(), 0);
        let assoc1 = QuadraticPresentation::builtin(OperadType::Assoc, 1).unwrap();
        assert_eq!(assoc1.qdual(QdualMode::SpanOfTheta).unwrap().dim(), 0);
        let big = QuadraticPresentation::builtin(OperadType::Assoc, 6).unwrap();
        assert!(matches!(
            big.qdual(QdualMode::SpanOfTheta),
            Err(Error::SpanTooLarge { .. })
        ));
    }

    #[test]
    fn builtin_theta_diagonal_is_identity_value() {
        let p = QuadraticPresentation::builtin(OperadType::Leib, 2).unwrap();
        let mu = Law::from_free_entries(2, Symmetry::None, [(1, 0, 0, int(1)), (0, 1, 0, int(2)), (1, 1, 1, int(-1))]);
        assert_eq!(
            p.evaluate(&mu.coords()).unwrap(),
            identity_value(OperadType::Leib, &mu).unwrap()
        );
    }
}
