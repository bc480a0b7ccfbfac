//! Torus-weight characters of the fiber complex and the virtual-character Euler identity.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactlin::{rank_with, SparseMatrix, Subspace};
use crate::incidence::FiberComplex;
use crate::laws::{IdentitySpace, Law, LawBasis};
use crate::presentations::{OperadType, QdualMode};
use crate::scalar::Rat;

pub type WeightVector = Vec<i64>;

/// A virtual character: weights with integer multiplicities, zeros dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Character(BTreeMap<WeightVector, i64>);

impl Character {
    pub fn new() -> Self {
        Character::default()
    }

    pub fn from_weights(ws: impl IntoIterator<Item = WeightVector>) -> Self {
        let mut c = Character::new();
        for w in ws {
            c.add_weight(w, 1);
        }
        c
    }

    pub fn add_weight(&mut self, w: WeightVector, mult: i64) {
        let slot = self.0.entry(w.clone()).or_insert(0);
        *slot += mult;
        if *slot == 0 {
            self.0.remove(&w);
        }
    }

    pub fn multiplicity(&self, w: &[i64]) -> i64 {
        self.0.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&WeightVector, i64)> {
        self.0.iter().map(|(w, m)| (w, *m))
    }

    pub fn add(&self, other: &Character) -> Character {
        let mut out = self.clone();
        for (w, m) in other.iter() {
            out.add_weight(w.clone(), m);
        }
        out
    }

    pub fn sub(&self, other: &Character) -> Character {
        let mut out = self.clone();
        for (w, m) in other.iter() {
            out.add_weight(w.clone(), -m);
        }
        out
    }

    /// Evaluation at the identity of the torus: the virtual dimension.
    pub fn degree_zero(&self) -> i64 {
        self.0.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Weights repeated by multiplicity, in ascending order; `None` if virtual.
    pub fn to_multiset(&self) -> Option<Vec<WeightVector>> {
        let mut out = Vec::new();
        for (w, m) in self.iter() {
            if m < 0 {
                return None;
            }
            out.extend(std::iter::repeat_n(w.clone(), m as usize));
        }
        Some(out)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .iter()
            .map(|(w, m)| {
                let w = w.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
                format!("({w})^{m}")
            })
            .collect();
        write!(f, "{{{}}}", parts.join(" "))
    }
}

fn combine(parts: &[(&WeightVector, i64)]) -> WeightVector {
    let r = parts[0].0.len();
    (0..r)
        .map(|c| parts.iter().map(|(w, s)| s * w[c]).sum())
        .collect()
}

/// A split torus acting diagonally on the basis of `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusAction {
    pub weights: Vec<WeightVector>,
}

impl TorusAction {
    pub fn new(weights: Vec<WeightVector>) -> Result<Self> {
        let rank = weights.first().map_or(0, Vec::len);
        if weights.iter().any(|w| w.len() != rank) {
            return Err(Error::DimensionMismatch {
                expected: rank,
                got: weights.iter().map(Vec::len).find(|l| *l != rank).unwrap_or(0),
            });
        }
        Ok(TorusAction { weights })
    }

    pub fn rank(&self) -> usize {
        self.weights.first().map_or(0, Vec::len)
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// Weight of the `A_W` coordinate `(i, j, k)`: `χ_i − χ_j − χ_k`.
    pub fn law_weight(&self, [i, j, k]: [usize; 3]) -> WeightVector {
        let w = &self.weights;
        combine(&[(&w[i], 1), (&w[j], -1), (&w[k], -1)])
    }

    /// Weight of the identity coordinate `(i, j, k, l)`.
    pub fn identity_weight(&self, [i, j, k, l]: [usize; 4]) -> WeightVector {
        let w = &self.weights;
        combine(&[(&w[i], 1), (&w[j], -1), (&w[k], -1), (&w[l], -1)])
    }

    /// Weight of `E_ab ∈ gl(W)`.
    pub fn gl_weight(&self, a: usize, b: usize) -> WeightVector {
        combine(&[(&self.weights[a], 1), (&self.weights[b], -1)])
    }

    /// The torus fixes `μ` iff every structure constant has weight zero.
    pub fn check_fixes(&self, mu: &Law<Rat>) -> Result<()> {
        if self.dim() != mu.dim() {
            return Err(Error::DimensionMismatch {
                expected: mu.dim(),
                got: self.dim(),
            });
        }
        let basis = mu.basis();
        for ([i, j, k], _) in mu.entries() {
            let w = self.law_weight([i, j, k]);
            if w.iter().any(|x| *x != 0) {
                let coord = basis
                    .position(i, j, k)
                    .or_else(|| basis.position(i, k, j))
                    .expect("every entry has a free position");
                return Err(Error::TorusDoesNotFix { coord, weight: w });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedCharacters {
    pub a_w: Character,
    pub qdual: Character,
    pub gl: Character,
}

/// Weight multisets of `A_W`, the ambient `Q∨` and `gl(W)` for a builtin type.
pub fn induced_character(kind: OperadType, torus: &TorusAction) -> Result<InducedCharacters> {
    let m = torus.dim();
    let symmetry = kind.law_symmetry().ok_or_else(|| {
        Error::InvalidLaw("custom presentations carry no torus weights".into())
    })?;
    let basis = LawBasis::new(m, symmetry);
    let space = IdentitySpace::new(kind, m);
    Ok(InducedCharacters {
        a_w: Character::from_weights((0..basis.dim()).map(|p| torus.law_weight(basis.triple(p)))),
        qdual: Character::from_weights((0..space.dim()).map(|n| torus.identity_weight(space.coordinate(n)))),
        gl: Character::from_weights((0..m).flat_map(|a| (0..m).map(move |b| (a, b))).map(|(a, b)| torus.gl_weight(a, b))),
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightBlock {
    pub gl: usize,
    pub a_w: usize,
    pub qdual: usize,
    pub rank_delta: usize,
    pub rank_phi: usize,
    pub h1: usize,
    pub h2: usize,
    pub h3: usize,
}

#[derive(Clone, Debug)]
pub struct GradedCohomology {
    pub qdual_mode: QdualMode,
    pub blocks: BTreeMap<WeightVector, WeightBlock>,
}

impl GradedCohomology {
    fn character(&self, f: impl Fn(&WeightBlock) -> usize) -> Character {
        let mut c = Character::new();
        for (w, b) in &self.blocks {
            c.add_weight(w.clone(), f(b) as i64);
        }
        c
    }

    pub fn h1(&self) -> Character {
        self.character(|b| b.h1)
    }

    pub fn h2(&self) -> Character {
        self.character(|b| b.h2)
    }

    pub fn h3(&self) -> Character {
        self.character(|b| b.h3)
    }

    pub fn gl(&self) -> Character {
        self.character(|b| b.gl)
    }

    pub fn a_w(&self) -> Character {
        self.character(|b| b.a_w)
    }

    pub fn qdual(&self) -> Character {
        self.character(|b| b.qdual)
    }

    pub fn totals(&self) -> [usize; 3] {
        self.blocks.values().fold([0; 3], |acc, b| [acc[0] + b.h1, acc[1] + b.h2, acc[2] + b.h3])
    }
}

/// Splits `m` into blocks by row/column weight; errors if an entry links different weights.
fn split(
    m: &SparseMatrix<Rat>,
    row_w: &[WeightVector],
    col_w: &[WeightVector],
) -> Result<BTreeMap<WeightVector, SparseMatrix<Rat>>> {
    let mut local = vec![0usize; col_w.len()];
    let mut ncols: BTreeMap<&WeightVector, usize> = BTreeMap::new();
    for (c, w) in col_w.iter().enumerate() {
        let n = ncols.entry(w).or_insert(0);
        local[c] = *n;
        *n += 1;
    }
    let mut rows: BTreeMap<WeightVector, Vec<Vec<(usize, Rat)>>> = BTreeMap::new();
    for (r, row) in m.rows().iter().enumerate() {
        if row.is_zero() {
            continue;
        }
        let w = &row_w[r];
        let mut entries = Vec::with_capacity(row.nnz());
        for (c, v) in row.iter() {
            if col_w[c] != *w {
                let weight: WeightVector = w.iter().zip(&col_w[c]).map(|(a, b)| a - b).collect();
                return Err(Error::TorusDoesNotFix { coord: c, weight });
            }
            entries.push((local[c], v.clone()));
        }
        rows.entry(w.clone()).or_default().push(entries);
    }
    Ok(rows
        .into_iter()
        .map(|(w, rs)| {
            let n = ncols.get(&w).copied().unwrap_or(0);
            let rows = rs.into_iter().map(crate::exactlin::SparseVec::from_entries).collect();
            (w, SparseMatrix::from_rows(n, rows))
        })
        .collect())
}

/// Per-weight `H¹, H², H³` of the fiber complex of a builtin presentation.
pub fn graded_cohomology(c: &FiberComplex, torus: &TorusAction) -> Result<GradedCohomology> {
    let mu = c.mu();
    torus.check_fixes(mu)?;
    let p = c.presentation();
    let space = p.identity_space().ok_or_else(|| {
        Error::InvalidLaw("custom presentations carry no torus weights".into())
    })?;
    let m = mu.dim();
    let basis = mu.basis();
    let gl_w: Vec<WeightVector> = (0..m * m).map(|n| torus.gl_weight(n / m, n % m)).collect();
    let aw_w: Vec<WeightVector> = (0..basis.dim()).map(|q| torus.law_weight(basis.triple(q))).collect();
    let v_w: Vec<WeightVector> = (0..space.dim()).map(|n| torus.identity_weight(space.coordinate(n))).collect();

    let mut blocks: BTreeMap<WeightVector, WeightBlock> = BTreeMap::new();
    for w in &gl_w {
        blocks.entry(w.clone()).or_default().gl += 1;
    }
    for w in &aw_w {
        blocks.entry(w.clone()).or_default().a_w += 1;
    }
    match &c.qdual().span {
        None => {
            for w in &v_w {
                blocks.entry(w.clone()).or_default().qdual += 1;
            }
        }
        Some(span) => {
            for (w, d) in graded_span_dims(span, &v_w) {
                blocks.entry(w).or_default().qdual += d;
            }
        }
    }
    let mode = c.rank_mode();
    let delta_blocks = split(c.delta(), &aw_w, &gl_w)?;
    let phi_blocks = split(c.phi(), &v_w, &aw_w)?;
    let ranks = |bs: BTreeMap<WeightVector, SparseMatrix<Rat>>| -> Vec<(WeightVector, usize)> {
        bs.into_par_iter().map(|(w, b)| (w, rank_with(&b, mode))).collect()
    };
    for (w, r) in ranks(delta_blocks) {
        blocks.entry(w).or_default().rank_delta = r;
    }
    for (w, r) in ranks(phi_blocks) {
        blocks.entry(w).or_default().rank_phi = r;
    }
    for b in blocks.values_mut() {
        b.h1 = b.gl - b.rank_delta;
        b.h2 = b.a_w - b.rank_phi - b.rank_delta;
        b.h3 = b.qdual - b.rank_phi;
    }
    blocks.retain(|_, b| *b != WeightBlock::default());
    Ok(GradedCohomology {
        qdual_mode: c.qdual().mode,
        blocks,
    })
}

/// Dimension of each weight space of a subspace spanned by weight vectors.
fn graded_span_dims(span: &Subspace<Rat>, v_w: &[WeightVector]) -> BTreeMap<WeightVector, usize> {
    // the reduced basis of a graded subspace consists of weight vectors
    let mut out = BTreeMap::new();
    for b in span.basis() {
        let (lead, _) = b.leading().expect("basis vectors are nonzero");
        *out.entry(v_w[lead].clone()).or_insert(0) += 1;
    }
    out
}

#[derive(Clone, Debug)]
pub struct ChIdentityReport {
    pub lhs: Character,
    pub rhs: Character,
    pub holds: bool,
    pub degree_zero: (i64, i64),
    pub euler: (i64, i64),
    pub graded: GradedCohomology,
}

/// `char(H³) = char(Q∨) − char(A_W) + char(𝔤) − char(𝔥) + char(H²)` with `𝔥 = ker δ_μ`.
pub fn ch_identity_check(c: &FiberComplex, torus: &TorusAction) -> Result<ChIdentityReport> {
    let graded = graded_cohomology(c, torus)?;
    let lhs = graded.h3();
    let rhs = graded
        .qdual()
        .sub(&graded.a_w())
        .add(&graded.gl())
        .sub(&graded.h1())
        .add(&graded.h2());
    let [h1, h2, h3] = graded.totals();
    let euler = (
        h1 as i64 - h2 as i64 + h3 as i64,
        c.gl_dim() as i64 - c.ambient_dim() as i64 + c.qdual_dim() as i64,
    );
    Ok(ChIdentityReport {
        holds: lhs == rhs,
        degree_zero: (lhs.degree_zero(), rhs.degree_zero()),
        euler,
        lhs,
        rhs,
        graded,
    })
}

/// Builtin torus presets.
pub mod presets {
    use super::*;

    /// `h`-weights on `(e, h, f)`.
    pub fn sl2_adjoint() -> TorusAction {
        TorusAction {
            weights: vec![vec![2], vec![0], vec![-2]],
        }
    }

    /// `{2, 0, −2} ∪ {2n, …, −2n}` on `L_n`.
    pub fn richardson(n: usize) -> TorusAction {
        let d = 2 * n as i64;
        let weights = [2, 0, -2]
            .into_iter()
            .chain((0..=d).map(|i| d - 2 * i))
            .map(|w| vec![w])
            .collect();
        TorusAction { weights }
    }

    /// The grading `(1, 1, 2)` of the Heisenberg algebra.
    pub fn heisenberg() -> TorusAction {
        TorusAction {
            weights: vec![vec![1], vec![1], vec![2]],
        }
    }

    /// The full diagonal torus of rank `m`.
    pub fn diagonal(m: usize) -> TorusAction {
        TorusAction {
            weights: (0..m)
                .map(|i| (0..m).map(|j| i64::from(i == j)).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::build_complex;
    use crate::laws::Symmetry;
    use crate::presentations::QuadraticPresentation;
    use crate::scalar::int;

    fn sl2() -> Law<Rat> {
        Law::from_free_entries(3, Symmetry::Skew, [(1, 0, 2, int(1)), (0, 0, 1, int(-2)), (2, 1, 2, int(-2))])
    }

    fn ws(v: &[i64]) -> Vec<WeightVector> {
        v.iter().map(|x| vec![*x]).collect()
    }

    #[test]
    fn lie_characters_for_adjoint_weights() {
        let c = induced_character(OperadType::Lie, &presets::sl2_adjoint()).unwrap();
        assert_eq!(c.a_w, Character::from_weights(ws(&[4, 2, 2, 0, 0, 0, -2, -2, -4])));
        assert_eq!(c.qdual, Character::from_weights(ws(&[2, 0, -2])));
        assert_eq!(c.gl, Character::from_weights(ws(&[0, 0, 0, 2, 2, -2, -2, 4, -4])));
        let c2 = induced_character(OperadType::Lie, &TorusAction::new(ws(&[1, 3])).unwrap()).unwrap();
        assert!(c2.qdual.is_zero());
        let c1 = induced_character(OperadType::Assoc, &TorusAction::new(ws(&[0])).unwrap()).unwrap();
        for ch in [c1.a_w, c1.qdual, c1.gl] {
            assert_eq!(ch, Character::from_weights(ws(&[0])));
        }
    }

    #[test]
    fn sl2_graded_cohomology() {
        let c = build_complex(&sl2(), &QuadraticPresentation::builtin(OperadType::Lie, 3).unwrap()).unwrap();
        let r = ch_identity_check(&c, &presets::sl2_adjoint()).unwrap();
        assert_eq!(r.graded.h1(), Character::from_weights(ws(&[2, 0, -2])));
        assert!(r.graded.h2().is_zero() && r.graded.h3().is_zero());
        assert!(r.holds);
        assert_eq!(r.degree_zero.0, r.degree_zero.1);
        assert_eq!(r.euler.0, r.euler.1);
    }

    #[test]
    fn torus_must_fix_the_law() {
        let c = build_complex(&sl2(), &QuadraticPresentation::builtin(OperadType::Lie, 3).unwrap()).unwrap();
        let bad = TorusAction::new(ws(&[1, 0, 0])).unwrap();
        assert!(matches!(graded_cohomology(&c, &bad), Err(Error::TorusDoesNotFix { .. })));
    }

    #[test]
    fn zero_law_h2_is_all_of_a_w() {
        let p = QuadraticPresentation::builtin(OperadType::Lie, 3).unwrap();
        let c = build_complex(&Law::zero(3, Symmetry::Skew), &p).unwrap();
        let t = TorusAction::new(vec![vec![1, 0], vec![0, 1], vec![2, -1]]).unwrap();
        let r = ch_identity_check(&c, &t).unwrap();
        let ind = induced_character(OperadType::Lie, &t).unwrap();
        assert_eq!(r.graded.h2(), ind.a_w);
        assert_eq!(r.graded.h3(), ind.qdual);
        assert!(r.holds);
    }

    #[test]
    fn span_mode_blocks_match_totals() {
        let kx2 = Law::from_free_entries(2, Symmetry::None, [(0, 0, 0, int(1)), (1, 0, 1, int(1)), (1, 1, 0, int(1))]);
        let p = QuadraticPresentation::builtin(OperadType::Assoc, 2).unwrap();
        let c = build_complex(&kx2, &p).unwrap();
        let t = TorusAction::new(ws(&[0, 1])).unwrap();
        let g = graded_cohomology(&c, &t).unwrap();
        assert_eq!(g.totals(), c.cohomology().dims());
        assert!(ch_identity_check(&c, &t).unwrap().holds);
    }
}
