//! The Gram trace form `γ_μ(v, w) = Tr(R_v R_w)` with `R_v(w) = μ(w, v)`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{kernel, rank, SparseMatrix, SparseVec, Subspace};
use crate::incidence::check_on_locus;
use crate::laws::{act_with_inverse, EndW, Law};
use crate::presentations::{OperadType, QuadraticPresentation};
use crate::sample;
use crate::scalar::Rat;

#[derive(Clone, Debug, PartialEq)]
pub struct GramForm {
    pub matrix: Vec<Vec<Rat>>,
    pub rank: usize,
    pub radical: Subspace<Rat>,
}

fn gram_matrix(mu: &Law<Rat>) -> Vec<Vec<Rat>> {
    let m = mu.dim();
    // R_a[i][w] = c[i][w][a]; γ(a, b) = Σ_{i,w} c[i][w][a] c[w][i][b]
    let mut by_last: Vec<Vec<(usize, usize, &Rat)>> = vec![Vec::new(); m];
    for ([i, w, a], c) in mu.entries() {
        by_last[a].push((i, w, c));
    }
    let mut g = vec![vec![Rat::zero(); m]; m];
    for a in 0..m {
        let mut ra = vec![vec![None; m]; m];
        for &(i, w, c) in &by_last[a] {
            ra[i][w] = Some(c);
        }
        for b in a..m {
            let mut s = Rat::zero();
            for &(w, i, c) in &by_last[b] {
                if let Some(x) = ra[i][w] {
                    s += x * c;
                }
            }
            g[b][a] = s.clone();
            g[a][b] = s;
        }
    }
    g
}

fn dense(rows: &[Vec<Rat>]) -> SparseMatrix<Rat> {
    SparseMatrix::from_dense(rows)
}

pub fn gram(mu: &Law<Rat>) -> GramForm {
    let matrix = gram_matrix(mu);
    let sm = dense(&matrix);
    let radical = kernel(&sm);
    GramForm {
        rank: mu.dim() - radical.dim(),
        matrix,
        radical,
    }
}

/// `Tr(ad_x ad_y)` with `ad_x = μ(x, ·)`.
pub fn killing_form(mu: &Law<Rat>) -> Vec<Vec<Rat>> {
    let m = mu.dim();
    let ad: Vec<Vec<Vec<Rat>>> = (0..m).map(|a| mu.left_mult(a)).collect();
    let mut k = vec![vec![Rat::zero(); m]; m];
    for a in 0..m {
        for b in 0..m {
            let mut s = Rat::zero();
            for i in 0..m {
                for w in 0..m {
                    if !ad[a][i][w].is_zero() && !ad[b][w][i].is_zero() {
                        s += &ad[a][i][w] * &ad[b][w][i];
                    }
                }
            }
            k[a][b] = s;
        }
    }
    k
}

/// Where the structural subspace compared against `rad γ_μ` came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealSource {
    /// `span{μ(v, v)}`.
    LeibnizKernel,
    /// Trace-radical of the unitized left regular representation, checked nilpotent.
    NilpotentIdeal,
    Supplied,
}

#[derive(Clone, Debug)]
pub struct RadicalReport {
    pub kind: OperadType,
    pub source: IdealSource,
    pub ideal: Subspace<Rat>,
    pub radical: Subspace<Rat>,
    pub gram_rank: usize,
    pub contained: bool,
}

fn product(mu: &Law<Rat>, x: &SparseVec<Rat>, y: &SparseVec<Rat>) -> SparseVec<Rat> {
    let m = mu.dim();
    SparseVec::from_dense(&mu.apply(&x.to_dense(m), &y.to_dense(m)))
}

/// `span{μ(v, v)} = span{μ(e_i, e_i), μ(e_i, e_j) + μ(e_j, e_i)}`.
pub fn leibniz_kernel(mu: &Law<Rat>) -> Subspace<Rat> {
    let m = mu.dim();
    let mut gens = Vec::new();
    for i in 0..m {
        for j in i..m {
            let (ei, ej) = (SparseVec::unit(i), SparseVec::unit(j));
            let v = if i == j {
                product(mu, &ei, &ei)
            } else {
                product(mu, &ei, &ej).add(&product(mu, &ej, &ei))
            };
            gens.push(v);
        }
    }
    Subspace::span(m, gens)
}

/// Left multiplication by `z` as a dense matrix.
fn left_op(mu: &Law<Rat>, z: &SparseVec<Rat>) -> Vec<Vec<Rat>> {
    let m = mu.dim();
    let mut out = vec![vec![Rat::zero(); m]; m];
    for ([i, j, k], c) in mu.entries() {
        if let Some(x) = z.get(j) {
            out[i][k] += x * c;
        }
    }
    out
}

fn trace_left(mu: &Law<Rat>, z: &SparseVec<Rat>) -> Rat {
    let l = left_op(mu, z);
    (0..mu.dim()).map(|i| l[i][i].clone()).sum()
}

/// Powers `J, J², …` until they stabilize; nilpotent iff they reach zero.
fn is_nilpotent_ideal(mu: &Law<Rat>, j: &Subspace<Rat>) -> bool {
    let m = mu.dim();
    let mut power = j.clone();
    for _ in 0..=m {
        if power.dim() == 0 {
            return true;
        }
        let mut gens = Vec::new();
        for a in power.basis() {
            for b in j.basis() {
                gens.push(product(mu, a, b));
                gens.push(product(mu, b, a));
            }
        }
        let next = Subspace::span(m, gens);
        if next.dim() == power.dim() {
            return false;
        }
        power = next;
    }
    power.dim() == 0
}

fn is_ideal(mu: &Law<Rat>, j: &Subspace<Rat>) -> bool {
    let m = mu.dim();
    j.basis().iter().all(|a| {
        (0..m).all(|w| {
            let e = SparseVec::unit(w);
            j.contains(&product(mu, a, &e)) && j.contains(&product(mu, &e, a))
        })
    })
}

/// `{x : Tr L_x = 0, Tr L_{xy} = 0 ∀y}`, required to be a nilpotent ideal.
pub fn nilpotent_ideal(mu: &Law<Rat>) -> Result<Subspace<Rat>> {
    let m = mu.dim();
    let mut rows = Vec::new();
    rows.push((0..m).map(|x| trace_left(mu, &SparseVec::unit(x))).collect::<Vec<_>>());
    for y in 0..m {
        rows.push(
            (0..m)
                .map(|x| trace_left(mu, &product(mu, &SparseVec::unit(x), &SparseVec::unit(y))))
                .collect(),
        );
    }
    let j = kernel(&dense(&rows));
    if is_ideal(mu, &j) && is_nilpotent_ideal(mu, &j) {
        Ok(j)
    } else {
        Err(Error::IdealNotDetected)
    }
}

/// Checks the structural ideal of `kind` lies in `rad γ_μ`.
pub fn radical_containment(
    mu: &Law<Rat>,
    kind: OperadType,
    supplied: Option<Subspace<Rat>>,
) -> Result<RadicalReport> {
    check_on_locus(mu, &QuadraticPresentation::builtin(kind, mu.dim())?)?;
    let g = gram(mu);
    let (source, ideal) = match (supplied, kind) {
        (Some(s), _) => (IdealSource::Supplied, s),
        (None, OperadType::Leib | OperadType::Lie) => (IdealSource::LeibnizKernel, leibniz_kernel(mu)),
        (None, _) => (IdealSource::NilpotentIdeal, nilpotent_ideal(mu)?),
    };
    Ok(RadicalReport {
        kind,
        contained: g.radical.contains_subspace(&ideal),
        source,
        ideal,
        gram_rank: g.rank,
        radical: g.radical,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitConstancyReport {
    pub base_rank: usize,
    pub ranks: Vec<usize>,
    pub seed: u64,
}

impl OrbitConstancyReport {
    pub fn constant(&self) -> bool {
        self.ranks.iter().all(|r| *r == self.base_rank)
    }
}

pub fn gram_orbit_constancy(mu: &Law<Rat>, trials: usize, seed: u64) -> OrbitConstancyReport {
    let mut rng = sample::rng(seed);
    let ranks = (0..trials)
        .map(|_| {
            let (g, ginv) = sample::invertible(&mut rng, mu.dim());
            gram(&act_with_inverse(&g, &ginv, mu)).rank
        })
        .collect();
    OrbitConstancyReport {
        base_rank: gram(mu).rank,
        ranks,
        seed,
    }
}

/// `γ_{g·μ}(g v, g w) = γ_μ(v, w)` entrywise, i.e. `gᵀ γ_{g·μ} g = γ_μ`.
pub fn equivariance_holds(mu: &Law<Rat>, g: &EndW<Rat>, ginv: &EndW<Rat>) -> bool {
    let m = mu.dim();
    let base = gram_matrix(mu);
    let moved = gram_matrix(&act_with_inverse(g, ginv, mu));
    (0..m).all(|a| {
        (0..m).all(|b| {
            let mut s = Rat::zero();
            for i in 0..m {
                for j in 0..m {
                    s += g.get(i, a) * &moved[i][j] * g.get(j, b);
                }
            }
            s == base[a][b]
        })
    })
}

/// `γ(e_i, e_j) = 0` unless the weights of `e_i`, `e_j` are opposite.
pub fn weight_orthogonal(form: &GramForm, weights: &[Vec<i64>]) -> bool {
    let m = form.matrix.len();
    (0..m).all(|i| {
        (0..m).all(|j| {
            let opposite = weights[i].iter().zip(&weights[j]).all(|(a, b)| a + b == 0);
            opposite || form.matrix[i][j].is_zero()
        })
    })
}

/// `γ` evaluated on two vectors.
pub fn evaluate(form: &GramForm, v: &[Rat], w: &[Rat]) -> Rat {
    let m = form.matrix.len();
    let mut s = Rat::zero();
    for i in 0..m {
        if v[i].is_zero() {
            continue;
        }
        for j in 0..m {
            s += &v[i] * &form.matrix[i][j] * &w[j];
        }
    }
    s
}

pub fn is_symmetric(form: &GramForm) -> bool {
    let m = form.matrix.len();
    (0..m).all(|i| (0..i).all(|j| form.matrix[i][j] == form.matrix[j][i]))
}

pub fn rank_of(rows: &[Vec<Rat>]) -> usize {
    if rows.is_empty() {
        0
    } else {
        rank(&dense(rows))
    }
}
