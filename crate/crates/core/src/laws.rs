//! Bilinear laws given by structure constants, the `GL(W)` action on them,
//! its derivative `δ_μ`, and evaluation of the operadic identity maps.
//!
//! Convention: `μ(e_j, e_k) = Σ_i c[i][j][k] e_i`, indices 0-based.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::{SparseMatrix, SparseVec};
use crate::presentations::OperadType;
use crate::scalar::{Field, Rat, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symmetry {
    None,
    Symmetric,
    Skew,
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symmetry::None => "none",
            Symmetry::Symmetric => "symmetric",
            Symmetry::Skew => "skew",
        })
    }
}

/// Fixed ordering of the coordinates of `A_W` for a given `(m, symmetry)`:
/// lexicographic in `(i, j, k)` over the free index pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawBasis {
    m: usize,
    symmetry: Symmetry,
    index: Vec<[usize; 3]>,
    position: Vec<Option<usize>>,
}

impl LawBasis {
    pub fn new(m: usize, symmetry: Symmetry) -> Self {
        let free = |j: usize, k: usize| match symmetry {
            Symmetry::None => true,
            Symmetry::Symmetric => j <= k,
            Symmetry::Skew => j < k,
        };
        let mut index = Vec::new();
        let mut position = vec![None; m * m * m];
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    if free(j, k) {
                        position[(i * m + j) * m + k] = Some(index.len());
                        index.push([i, j, k]);
                    }
                }
            }
        }
        LawBasis {
            m,
            symmetry,
            index,
            position,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn triple(&self, p: usize) -> [usize; 3] {
        self.index[p]
    }

    /// Coordinate index of the free position `(i, j, k)`, if it is free.
    pub fn position(&self, i: usize, j: usize, k: usize) -> Option<usize> {
        self.position[(i * self.m + j) * self.m + k]
    }

    /// The law with a single free coordinate set to one.
    pub fn basis_law<T: Ring>(&self, p: usize) -> Law<T> {
        let [i, j, k] = self.index[p];
        Law::from_free_entries(self.m, self.symmetry, [(i, j, k, T::one())])
    }
}

/// A bilinear law on `W = k^m`, stored sparsely as the full tensor.
#[derive(Clone, PartialEq, Debug)]
pub struct Law<T> {
    dim: usize,
    symmetry: Symmetry,
    entries: BTreeMap<[usize; 3], T>,
}

pub type RatLaw = Law<Rat>;

impl<T: Ring> Law<T> {
    pub fn zero(dim: usize, symmetry: Symmetry) -> Self {
        Law {
            dim,
            symmetry,
            entries: BTreeMap::new(),
        }
    }

    /// Builds a law from entries at free positions; mirrored entries are
    /// filled in from the symmetry type. Entries at non-free positions are
    /// rejected in debug builds.
    pub fn from_free_entries(
        dim: usize,
        symmetry: Symmetry,
        entries: impl IntoIterator<Item = (usize, usize, usize, T)>,
    ) -> Self {
        let mut law = Law::zero(dim, symmetry);
        for (i, j, k, v) in entries {
            law.add_free(i, j, k, v);
        }
        law
    }

    fn add_free(&mut self, i: usize, j: usize, k: usize, v: T) {
        if v.is_zero() {
            return;
        }
        match self.symmetry {
            Symmetry::None => self.add_raw([i, j, k], v),
            Symmetry::Symmetric => {
                if j != k {
                    self.add_raw([i, k, j], v.clone());
                }
                self.add_raw([i, j, k], v);
            }
            Symmetry::Skew => {
                debug_assert!(j != k, "skew law with diagonal entry");
                self.add_raw([i, k, j], -v.clone());
                self.add_raw([i, j, k], v);
            }
        }
    }

    fn add_raw(&mut self, key: [usize; 3], v: T) {
        let sum = match self.entries.remove(&key) {
            Some(old) => old + v,
            None => v,
        };
        if !sum.is_zero() {
            self.entries.insert(key, sum);
        }
    }

    /// Builds a law from the full tensor and checks the symmetry invariants.
    pub fn from_tensor(
        dim: usize,
        symmetry: Symmetry,
        entries: impl IntoIterator<Item = (usize, usize, usize, T)>,
    ) -> Result<Self> {
        let mut law = Law::zero(dim, symmetry);
        for (i, j, k, v) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidLaw(format!(
                    "index ({i},{j},{k}) out of range for dimension {dim}"
                )));
            }
            law.add_raw([i, j, k], v);
        }
        law.validate()?;
        Ok(law)
    }

    pub fn validate(&self) -> Result<()> {
        for (&[i, j, k], v) in &self.entries {
            let mirror = self.get(i, k, j);
            let ok = match self.symmetry {
                Symmetry::None => true,
                Symmetry::Symmetric => mirror == *v,
                Symmetry::Skew => j != k && mirror == -v.clone(),
            };
            if !ok {
                return Err(Error::InvalidLaw(format!(
                    "entry ({i},{j},{k}) violates {} symmetry",
                    self.symmetry
                )));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn basis(&self) -> LawBasis {
        LawBasis::new(self.dim, self.symmetry)
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> T {
        self.entries.get(&[i, j, k]).cloned().unwrap_or_else(T::zero)
    }

    /// Nonzero entries of the full tensor.
    pub fn entries(&self) -> impl Iterator<Item = ([usize; 3], &T)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// `μ(x, y)` for dense vectors.
    pub fn apply(&self, x: &[T], y: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.dim];
        for (&[i, j, k], c) in &self.entries {
            if x[j].is_zero() || y[k].is_zero() {
                continue;
            }
            out[i] = out[i].add_mul(c, &(x[j].clone() * y[k].clone()));
        }
        out
    }

    /// Coordinates in the fixed basis of `A_W`.
    pub fn coords(&self) -> SparseVec<T> {
        let basis = self.basis();
        SparseVec::from_entries(
            self.entries
                .iter()
                .filter_map(|(&[i, j, k], v)| basis.position(i, j, k).map(|p| (p, v.clone()))),
        )
    }

    pub fn from_coords(basis: &LawBasis, coords: &SparseVec<T>) -> Self {
        Law::from_free_entries(
            basis.m(),
            basis.symmetry(),
            coords.iter().map(|(p, v)| {
                let [i, j, k] = basis.triple(p);
                (i, j, k, v.clone())
            }),
        )
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Law<U> {
        let mut out = Law::zero(self.dim, self.symmetry);
        for (k, v) in &self.entries {
            out.add_raw(*k, f(v));
        }
        out
    }

    pub fn add(&self, other: &Law<T>) -> Law<T> {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        if other.symmetry != self.symmetry {
            out.symmetry = Symmetry::None;
        }
        for (k, v) in &other.entries {
            out.add_raw(*k, v.clone());
        }
        out
    }

    pub fn scale(&self, a: &T) -> Law<T> {
        self.map(|v| a.clone() * v.clone())
    }

    /// Same structure constants viewed with a different symmetry tag.
    pub fn with_symmetry(&self, symmetry: Symmetry) -> Result<Law<T>> {
        let law = Law {
            dim: self.dim,
            symmetry,
            entries: self.entries.clone(),
        };
        law.validate()?;
        Ok(law)
    }

    /// Right multiplication `R_v(w) = μ(w, v)` for the basis vector `v = e_b`, as a dense m×m matrix.
    pub fn right_mult(&self, b: usize) -> Vec<Vec<T>> {
        let mut r = vec![vec![T::zero(); self.dim]; self.dim];
        for (&[i, j, k], c) in &self.entries {
            if k == b {
                r[i][j] = c.clone();
            }
        }
        r
    }

    /// Left multiplication `L_v(w) = μ(v, w)` for `v = e_a`.
    pub fn left_mult(&self, a: usize) -> Vec<Vec<T>> {
        let mut l = vec![vec![T::zero(); self.dim]; self.dim];
        for (&[i, j, k], c) in &self.entries {
            if j == a {
                l[i][k] = c.clone();
            }
        }
        l
    }
}

/// An element of `End(W)`: `ξ e_j = Σ_i ξ[i][j] e_i`.
#[derive(Clone, PartialEq, Debug)]
pub struct EndW<T> {
    m: usize,
    a: Vec<T>,
}

impl<T: Ring> EndW<T> {
    pub fn zero(m: usize) -> Self {
        EndW {
            m,
            a: vec![T::zero(); m * m],
        }
    }

    pub fn identity(m: usize) -> Self {
        let mut e = EndW::zero(m);
        for i in 0..m {
            e.a[i * m + i] = T::one();
        }
        e
    }

    /// Matrix unit `E_{ij}`.
    pub fn unit(m: usize, i: usize, j: usize) -> Self {
        let mut e = EndW::zero(m);
        e.a[i * m + j] = T::one();
        e
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let m = entries.len();
        let mut e = EndW::zero(m);
        for (i, v) in entries.iter().enumerate() {
            e.a[i * m + i] = v.clone();
        }
        e
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let m = rows.len();
        assert!(rows.iter().all(|r| r.len() == m), "endomorphism must be square");
        EndW {
            m,
            a: rows.iter().flatten().cloned().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.a[i * self.m + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.a[i * self.m + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.a.chunks(self.m).map(<[T]>::to_vec).collect()
    }

    pub fn apply(&self, x: &[T]) -> Vec<T> {
        (0..self.m)
            .map(|i| {
                (0..self.m).fold(T::zero(), |acc, j| acc.add_mul(self.get(i, j), &x[j]))
            })
            .collect()
    }

    pub fn mul(&self, other: &EndW<T>) -> EndW<T> {
        let m = self.m;
        let mut out = EndW::<T>::zero(m);
        for i in 0..m {
            for k in 0..m {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..m {
                    out.a[i * m + j] = out.a[i * m + j].add_mul(a, other.get(k, j));
                }
            }
        }
        out
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> EndW<U> {
        EndW {
            m: self.m,
            a: self.a.iter().map(f).collect(),
        }
    }

    pub fn trace(&self) -> T {
        (0..self.m).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }
}

impl<T: Field> EndW<T> {
    /// Inverse by Gauss–Jordan elimination, `None` if singular.
    pub fn inverse(&self) -> Option<EndW<T>> {
        let m = self.m;
        let mut a = self.rows();
        let mut inv = EndW::<T>::identity(m).rows();
        for col in 0..m {
            let piv = (col..m).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, piv);
            inv.swap(col, piv);
            let s = a[col][col].inv();
            for j in 0..m {
                a[col][j] = a[col][j].clone() * s.clone();
                inv[col][j] = inv[col][j].clone() * s.clone();
            }
            for r in 0..m {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..m {
                    a[r][j] = a[r][j].sub_mul(&f, &a[col][j].clone());
                    inv[r][j] = inv[r][j].sub_mul(&f, &inv[col][j].clone());
                }
            }
        }
        Some(EndW::from_rows(&inv))
    }
}

/// Transport of structure `(g·μ)(x, y) = g μ(g⁻¹x, g⁻¹y)`.
pub fn act<T: Field>(g: &EndW<T>, mu: &Law<T>) -> Result<Law<T>> {
    let ginv = g.inverse().ok_or(Error::SingularGroupElement)?;
    Ok(act_with_inverse(g, &ginv, mu))
}

/// Transport of structure with a caller-supplied inverse; works over any ring.
pub fn act_with_inverse<T: Ring>(g: &EndW<T>, ginv: &EndW<T>, mu: &Law<T>) -> Law<T> {
    let m = mu.dim();
    assert_eq!(g.dim(), m);
    // x[a][b][k] = Σ_c c[a][b][c] ginv[c][k]
    let mut x: HashMap<[usize; 3], T> = HashMap::new();
    for (&[a, b, c], v) in &mu.entries {
        for k in 0..m {
            let w = ginv.get(c, k);
            if w.is_zero() {
                continue;
            }
            let slot = x.entry([a, b, k]).or_insert_with(T::zero);
            *slot = slot.add_mul(v, w);
        }
    }
    // y[a][j][k] = Σ_b x[a][b][k] ginv[b][j]
    let mut y: HashMap<[usize; 3], T> = HashMap::new();
    for ([a, b, k], v) in x {
        if v.is_zero() {
            continue;
        }
        for j in 0..m {
            let w = ginv.get(b, j);
            if w.is_zero() {
                continue;
            }
            let slot = y.entry([a, j, k]).or_insert_with(T::zero);
            *slot = slot.add_mul(&v, w);
        }
    }
    let mut out = Law::zero(m, mu.symmetry());
    for ([a, j, k], v) in y {
        if v.is_zero() {
            continue;
        }
        for i in 0..m {
            let w = g.get(i, a);
            if w.is_zero() {
                continue;
            }
            out.add_raw([i, j, k], w.clone() * v.clone());
        }
    }
    out
}

/// Infinitesimal action `(ξ·μ)(x,y) = ξ μ(x,y) − μ(ξx, y) − μ(x, ξy)` as a law.
pub fn inf_act_law<T: Ring>(xi: &EndW<T>, mu: &Law<T>) -> Law<T> {
    let m = mu.dim();
    let mut out = Law::zero(m, mu.symmetry());
    for (&[l, j, k], c) in &mu.entries {
        for i in 0..m {
            let w = xi.get(i, l);
            if !w.is_zero() {
                out.add_raw([i, j, k], w.clone() * c.clone());
            }
        }
    }
    for (&[i, l, k], c) in &mu.entries {
        for j in 0..m {
            let w = xi.get(l, j);
            if !w.is_zero() {
                out.add_raw([i, j, k], -(w.clone() * c.clone()));
            }
        }
    }
    for (&[i, j, l], c) in &mu.entries {
        for k in 0..m {
            let w = xi.get(l, k);
            if !w.is_zero() {
                out.add_raw([i, j, k], -(w.clone() * c.clone()));
            }
        }
    }
    out
}

/// `δ_μ(ξ)` in `A_W` coordinates.
pub fn inf_act<T: Ring>(xi: &EndW<T>, mu: &Law<T>) -> SparseVec<T> {
    inf_act_law(xi, mu).coords()
}

/// Matrix of `δ_μ : End(W) → A_W`; column `a*m + b` is `δ_μ(E_{ab})`.
pub fn delta_matrix<T: Ring>(mu: &Law<T>) -> SparseMatrix<T> {
    let m = mu.dim();
    let basis = mu.basis();
    let mut triplets = Vec::new();
    let mut push = |i: usize, j: usize, k: usize, col: usize, v: T| {
        if let Some(p) = basis.position(i, j, k) {
            triplets.push((p, col, v));
        }
    };
    // E_ab: + c[b][j][k] at (a,j,k); − c[i][a][k] at (i,b,k); − c[i][j][a] at (i,j,b)
    for (&[i, j, k], c) in &mu.entries {
        for a in 0..m {
            push(a, j, k, a * m + i, c.clone());
        }
        for b in 0..m {
            push(i, b, k, j * m + b, -c.clone());
            push(i, j, b, k * m + b, -c.clone());
        }
    }
    SparseMatrix::from_triplets(basis.dim(), m * m, triplets)
}

/// Laws indexed by input/output slots for sparse composition.
pub(crate) struct LawIndex<'a, T> {
    entries: Vec<([usize; 3], &'a T)>,
    by_first: Vec<Vec<usize>>,
    by_second: Vec<Vec<usize>>,
    by_output: Vec<Vec<usize>>,
}

impl<'a, T: Ring> LawIndex<'a, T> {
    pub(crate) fn new(law: &'a Law<T>) -> Self {
        let m = law.dim();
        let entries: Vec<_> = law.entries().collect();
        let mut by_first = vec![Vec::new(); m];
        let mut by_second = vec![Vec::new(); m];
        let mut by_output = vec![Vec::new(); m];
        for (n, ([i, j, k], _)) in entries.iter().enumerate() {
            by_output[*i].push(n);
            by_first[*j].push(n);
            by_second[*k].push(n);
        }
        LawIndex {
            entries,
            by_first,
            by_second,
            by_output,
        }
    }

    /// Calls `f(i, [x, y, z], value)` for each term of `outer(inner(x, y), z)`.
    pub(crate) fn compose_left(outer: &Self, inner: &Self, mut f: impl FnMut(usize, [usize; 3], T)) {
        if inner.entries.len() <= outer.entries.len() {
            for &([a, x, y], u) in &inner.entries {
                for &n in &outer.by_first[a] {
                    let ([i, _, z], w) = outer.entries[n];
                    f(i, [x, y, z], w.clone() * u.clone());
                }
            }
        } else {
            for &([i, a, z], w) in &outer.entries {
                for &n in &inner.by_output[a] {
                    let ([_, x, y], u) = inner.entries[n];
                    f(i, [x, y, z], w.clone() * u.clone());
                }
            }
        }
    }

    /// Calls `f(i, [x, y, z], value)` for each term of `outer(x, inner(y, z))`.
    pub(crate) fn compose_right(outer: &Self, inner: &Self, mut f: impl FnMut(usize, [usize; 3], T)) {
        if inner.entries.len() <= outer.entries.len() {
            for &([a, y, z], u) in &inner.entries {
                for &n in &outer.by_second[a] {
                    let ([i, x, _], w) = outer.entries[n];
                    f(i, [x, y, z], w.clone() * u.clone());
                }
            }
        } else {
            for &([i, x, a], w) in &outer.entries {
                for &n in &inner.by_output[a] {
                    let ([_, y, z], u) = inner.entries[n];
                    f(i, [x, y, z], w.clone() * u.clone());
                }
            }
        }
    }
}

/// Coordinates of the ambient identity space `V` of a builtin type.
///
/// Lie: `W ⊗ Λ³W∨`, coordinates `(i, j<k<l)`. Assoc, Comm, Leib: `W ⊗ (W∨)^⊗3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentitySpace {
    m: usize,
    alternating: bool,
    index: Vec<[usize; 4]>,
    position: HashMap<[usize; 4], usize>,
}

impl IdentitySpace {
    pub fn new(kind: OperadType, m: usize) -> Self {
        let alternating = kind == OperadType::Lie;
        let mut index = Vec::new();
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        if !alternating || (j < k && k < l) {
                            index.push([i, j, k, l]);
                        }
                    }
                }
            }
        }
        let position = index.iter().enumerate().map(|(n, t)| (*t, n)).collect();
        IdentitySpace {
            m,
            alternating,
            index,
            position,
        }
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn coordinate(&self, n: usize) -> [usize; 4] {
        self.index[n]
    }

    /// Index of `(i, t)`; for the alternating space only strictly increasing `t` have one.
    pub fn position(&self, i: usize, t: [usize; 3]) -> Option<usize> {
        self.position.get(&[i, t[0], t[1], t[2]]).copied()
    }
}

#[derive(Clone, Copy)]
enum Comp {
    /// `o(in(x, y), z)`
    Left,
    /// `o(x, in(y, z))`
    Right,
}

/// Terms `(composition, σ, sign)`: the identity at `(t0, t1, t2)` includes
/// `sign · comp(t_σ0, t_σ1, t_σ2)`.
fn identity_terms(kind: OperadType) -> &'static [(Comp, [usize; 3], i64)] {
    match kind {
        // Σ_cyc μ(μ(x,y),z)
        OperadType::Lie => &[
            (Comp::Left, [0, 1, 2], 1),
            (Comp::Left, [1, 2, 0], 1),
            (Comp::Left, [2, 0, 1], 1),
        ],
        // μ(μ(x,y),z) − μ(x,μ(y,z))
        OperadType::Assoc | OperadType::Comm => {
            &[(Comp::Left, [0, 1, 2], 1), (Comp::Right, [0, 1, 2], -1)]
        }
        // right Leibniz: μ(μ(x,y),z) − μ(μ(x,z),y) − μ(x,μ(y,z))
        OperadType::Leib => &[
            (Comp::Left, [0, 1, 2], 1),
            (Comp::Left, [0, 2, 1], -1),
            (Comp::Right, [0, 1, 2], -1),
        ],
        OperadType::Custom => &[],
    }
}

/// The bilinear map `T(outer, inner)` with `F(μ) = T(μ, μ)`, in `V` coordinates.
pub(crate) fn identity_bilinear<T: Ring>(
    kind: OperadType,
    space: &IdentitySpace,
    outer: &LawIndex<'_, T>,
    inner: &LawIndex<'_, T>,
) -> SparseVec<T> {
    let mut acc: HashMap<usize, T> = HashMap::new();
    for &(comp, sigma, sign) in identity_terms(kind) {
        let mut add = |i: usize, xyz: [usize; 3], v: T| {
            // comp evaluated at (x,y,z) = (t_σ0, t_σ1, t_σ2)
            let mut t = [0; 3];
            for (slot, &s) in sigma.iter().enumerate() {
                t[s] = xyz[slot];
            }
            if let Some(n) = space.position(i, t) {
                let v = if sign < 0 { -v } else { v };
                let slot = acc.entry(n).or_insert_with(T::zero);
                *slot = slot.clone() + v;
            }
        };
        match comp {
            Comp::Left => LawIndex::compose_left(outer, inner, &mut add),
            Comp::Right => LawIndex::compose_right(outer, inner, &mut add),
        }
    }
    SparseVec::from_entries(acc)
}

fn check_symmetry(kind: OperadType, symmetry: Symmetry) -> Result<()> {
    let ok = match kind {
        OperadType::Lie => symmetry == Symmetry::Skew,
        OperadType::Comm => symmetry == Symmetry::Symmetric,
        OperadType::Assoc | OperadType::Leib => symmetry == Symmetry::None,
        OperadType::Custom => true,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::SymmetryMismatch {
            kind: kind.to_string(),
            found: symmetry.to_string(),
        })
    }
}

pub(crate) fn ensure_compatible(kind: OperadType, symmetry: Symmetry) -> Result<()> {
    check_symmetry(kind, symmetry)
}

/// The quadratic identity map `F(μ)` of a builtin type, in `V` coordinates.
pub fn identity_value<T: Ring>(kind: OperadType, mu: &Law<T>) -> Result<SparseVec<T>> {
    if kind == OperadType::Custom {
        return Err(Error::SymmetryMismatch {
            kind: kind.to_string(),
            found: "builtin evaluation requested".into(),
        });
    }
    check_symmetry(kind, mu.symmetry())?;
    let space = IdentitySpace::new(kind, mu.dim());
    let idx = LawIndex::new(mu);
    Ok(identity_bilinear(kind, &space, &idx, &idx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Trunc};

    fn sl2() -> RatLaw {
        // e, h, f: [e,f]=h, [h,e]=2e, [h,f]=-2f
        Law::from_free_entries(
            3,
            Symmetry::Skew,
            [(1, 0, 2, int(1)), (0, 0, 1, int(-2)), (2, 1, 2, int(-2))],
        )
    }

    #[test]
    fn basis_ordering_and_dims() {
        assert_eq!(LawBasis::new(3, Symmetry::Skew).dim(), 9);
        assert_eq!(LawBasis::new(3, Symmetry::Symmetric).dim(), 18);
        assert_eq!(LawBasis::new(2, Symmetry::None).dim(), 8);
        let b = LawBasis::new(3, Symmetry::Skew);
        assert_eq!(b.triple(0), [0, 0, 1]);
        assert_eq!(b.triple(1), [0, 0, 2]);
        assert_eq!(b.triple(2), [0, 1, 2]);
        assert_eq!(b.position(0, 1, 0), None);
    }

    #[test]
    fn sl2_brackets_and_coords_round_trip() {
        let mu = sl2();
        assert_eq!(mu.get(1, 2, 0), int(-1));
        assert_eq!(mu.get(0, 1, 0), int(2));
        let back = Law::from_coords(&mu.basis(), &mu.coords());
        assert_eq!(back, mu);
    }

    #[test]
    fn act_examples() {
        let mu = sl2();
        assert_eq!(act(&EndW::identity(3), &mu).unwrap(), mu);
        let zero = Law::<Rat>::zero(2, Symmetry::Skew);
        assert!(act(&EndW::diagonal(&[int(1), int(2)]), &zero).unwrap().is_zero());
        assert!(matches!(
            act(&EndW::<Rat>::zero(3), &mu),
            Err(Error::SingularGroupElement)
        ));
    }

    #[test]
    fn inf_act_examples() {
        let mu = sl2();
        let id = EndW::<Rat>::identity(3);
        assert_eq!(inf_act(&id, &mu), mu.coords().neg());
        // ad_e is a derivation
        let mut ad_e = EndW::<Rat>::zero(3);
        for k in 0..3 {
            for i in 0..3 {
                ad_e.set(i, k, mu.get(i, 0, k));
            }
        }
        assert!(inf_act(&ad_e, &mu).is_zero());
        assert!(inf_act(&ad_e, &Law::zero(3, Symmetry::Skew)).is_zero());
    }

    #[test]
    fn delta_matrix_columns_match_inf_act() {
        let mu = sl2();
        let d = delta_matrix(&mu);
        for a in 0..3 {
            for b in 0..3 {
                let col: Vec<Rat> = (0..d.nrows()).map(|r| d.get(r, a * 3 + b)).collect();
                assert_eq!(
                    SparseVec::from_dense(&col),
                    inf_act(&EndW::unit(3, a, b), &mu)
                );
            }
        }
    }

    #[test]
    fn identity_values() {
        assert!(identity_value(OperadType::Lie, &sl2()).unwrap().is_zero());
        let generic = Law::from_free_entries(
            3,
            Symmetry::Skew,
            [(0, 0, 1, int(1)), (0, 1, 2, int(1)), (2, 0, 2, int(3))],
        );
        assert!(!identity_value(OperadType::Lie, &generic).unwrap().is_zero());
        assert!(matches!(
            identity_value(OperadType::Comm, &sl2()),
            Err(Error::SymmetryMismatch { .. })
        ));
    }

    #[test]
    fn identity_over_truncated_polynomials() {
        let mu = sl2().map(|v| Trunc::<Rat, 3>::constant(v.clone()));
        assert!(identity_value(OperadType::Lie, &mu).unwrap().is_zero());
    }
}
