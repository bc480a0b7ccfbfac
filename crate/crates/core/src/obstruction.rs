//! The quadratic obstruction `κ₂: H² → H³`, second-order lifts and anisotropy verdicts.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactlin::{solve, SparseVec};
use crate::incidence::FiberComplex;
use crate::sample;
use crate::scalar::{int, rat, rat_to_string, Rat, Trunc};

/// `κ₂(t)_c = tᵀ K_c t` in H²/H³ coordinates.
#[derive(Clone, Debug)]
pub struct QuadraticObstruction {
    pub h2_dim: usize,
    pub h3_dim: usize,
    pub forms: Vec<Vec<Vec<Rat>>>,
    pub representatives: Vec<SparseVec<Rat>>,
}

impl QuadraticObstruction {
    pub fn evaluate(&self, t: &[Rat]) -> Vec<Rat> {
        self.forms
            .iter()
            .map(|k| {
                let mut s = Rat::zero();
                for (i, ti) in t.iter().enumerate() {
                    if ti.is_zero() {
                        continue;
                    }
                    for (j, tj) in t.iter().enumerate() {
                        s += ti * &k[i][j] * tj;
                    }
                }
                s
            })
            .collect()
    }

    /// `α_t = Σ t_i rep_i`.
    pub fn class_vector(&self, t: &[Rat]) -> SparseVec<Rat> {
        t.iter()
            .zip(&self.representatives)
            .fold(SparseVec::new(), |acc, (ti, r)| acc.add_scaled(ti, r))
    }

    /// Indices of forms that are not identically zero.
    pub fn nonzero_forms(&self) -> Vec<usize> {
        (0..self.forms.len())
            .filter(|c| self.forms[*c].iter().flatten().any(|x| !x.is_zero()))
            .collect()
    }
}

pub fn kappa2(c: &FiberComplex) -> QuadraticObstruction {
    let h2 = c.h2();
    let h3 = c.h3();
    let reps = h2.representatives().to_vec();
    let (d, e) = (reps.len(), h3.dim());
    let mut forms = vec![vec![vec![Rat::zero(); d]; d]; e];
    for i in 0..d {
        for j in i..d {
            let v = c.theta(&reps[i], &reps[j]);
            let coords = h3.reduce(&v).expect("Θ-values lie in the Q∨ model");
            for (k, x) in coords.into_iter().enumerate() {
                if !x.is_zero() {
                    forms[k][i][j] = x.clone();
                    forms[k][j][i] = x;
                }
            }
        }
    }
    QuadraticObstruction {
        h2_dim: d,
        h3_dim: e,
        forms,
        representatives: reps,
    }
}

/// `κ₂(t)` computed by reducing `Θ(α_t, α_t)` modulo `im Φ_μ`.
pub fn kappa2_direct(c: &FiberComplex, k: &QuadraticObstruction, t: &[Rat]) -> Vec<Rat> {
    let alpha = k.class_vector(t);
    c.h3()
        .reduce(&c.theta(&alpha, &alpha))
        .expect("Θ-values lie in the Q∨ model")
}

#[derive(Clone, Debug, PartialEq)]
pub enum LiftResult {
    /// `μ + tα + t²β` satisfies `F ≡ 0 mod t³`.
    Lifted { beta: SparseVec<Rat>, verified: bool },
    /// Nonzero `H³` coordinates of `[Θ(α, α)]`.
    Obstructed { class: Vec<(usize, Rat)> },
}

impl LiftResult {
    pub fn is_lifted(&self) -> bool {
        matches!(self, LiftResult::Lifted { .. })
    }
}

/// `F(μ + tα + t²β)` in `ℚ[t]/(t³)`; zero means the lift is exact to second order.
pub fn truncated_identity(c: &FiberComplex, alpha: &SparseVec<Rat>, beta: &SparseVec<Rat>) -> SparseVec<Trunc<Rat, 3>> {
    let mu = c.mu().coords();
    let n = c.ambient_dim();
    let coords = SparseVec::from_entries((0..n).filter_map(|p| {
        let v = Trunc::new([mu.value(p), alpha.value(p), beta.value(p)]);
        (!v.is_zero()).then_some((p, v))
    }));
    c.presentation()
        .evaluate_over(&coords, |r| Trunc::constant(r.clone()))
}

pub fn second_order_lift(c: &FiberComplex, alpha: &SparseVec<Rat>) -> Result<LiftResult> {
    let first = c.apply_phi(alpha);
    if !first.is_zero() {
        return Err(Error::FirstOrderObstructed(first.nnz()));
    }
    let theta = c.theta(alpha, alpha);
    let rhs = theta.scale(&rat(-1, 2));
    match solve(c.phi(), &rhs) {
        Some(beta) => {
            debug_assert_eq!(c.apply_phi(&beta).scale(&int(2)).add(&theta), SparseVec::new());
            let verified = truncated_identity(c, alpha, &beta).is_zero();
            assert!(verified, "second-order lift failed exact substitution");
            Ok(LiftResult::Lifted { beta, verified })
        }
        None => {
            let coords = c.h3().reduce(&theta).expect("Θ-values lie in the Q∨ model");
            let class: Vec<(usize, Rat)> = coords
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect();
            assert!(!class.is_empty(), "unsolvable lift with a trivial class");
            Ok(LiftResult::Obstructed { class })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellDefinedReport {
    pub trials: usize,
    pub class_checks: usize,
    pub cross_term_checks: usize,
    pub seed: u64,
}

/// Randomized exact check that `[Θ(α, α)]` depends only on `[α] ∈ H²`.
pub fn check_well_defined(c: &FiberComplex, trials: usize, seed: u64) -> Result<WellDefinedReport> {
    let mut rng = sample::rng(seed);
    let h3 = c.h3();
    let ker_phi = c.ker_phi();
    let mut report = WellDefinedReport {
        trials,
        class_checks: 0,
        cross_term_checks: 0,
        seed,
    };
    for trial in 0..trials {
        let alpha = sample::in_subspace(&mut rng, ker_phi, 3);
        let xi = sample::vector(&mut rng, c.gl_dim(), 3);
        let dxi = c.apply_delta(&xi);
        let cross = c.theta(&alpha, &dxi);
        if !c.im_phi().contains(&cross) {
            return Err(Error::WellDefinedness(format!(
                "trial {trial}: Θ(α, δξ) ∉ im Φ_μ for α = {}, ξ = {}",
                show(&alpha),
                show(&xi)
            )));
        }
        report.cross_term_checks += 1;
        let moved = alpha.add(&dxi);
        let a = h3.reduce(&c.theta(&alpha, &alpha));
        let b = h3.reduce(&c.theta(&moved, &moved));
        if a != b {
            return Err(Error::WellDefinedness(format!(
                "trial {trial}: class changed under α ↦ α + δξ for α = {}, ξ = {}",
                show(&alpha),
                show(&xi)
            )));
        }
        report.class_checks += 1;
    }
    Ok(report)
}

fn show(v: &SparseVec<Rat>) -> String {
    let parts: Vec<String> = v.iter().map(|(i, x)| format!("{i}:{}", rat_to_string(x))).collect();
    format!("{{{}}}", parts.join(", "))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateReason {
    VacuousH2Zero,
    Dim1NonzeroForm,
    /// The binary forms have constant gcd.
    Dim2GcdCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Rational(Vec<Rat>),
    ModP { p: u64, coords: Vec<u64> },
    /// A common root of the forms over `ℚ(√disc)`: the irreducible factor `a s² + b s + c`
    /// with `s = t₀/t₁`.
    QuadraticExtension { factor: [Rat; 3] },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnisotropyVerdict {
    CertifiedAnisotropic { reason: CertificateReason },
    IsotropicWitness { witness: Witness },
    HeuristicAnisotropic {
        primes_tested: Vec<u64>,
        search_exhaustive_up_to: u64,
        random_trials: usize,
        seed: u64,
    },
}

impl AnisotropyVerdict {
    pub fn category(&self) -> &'static str {
        match self {
            AnisotropyVerdict::CertifiedAnisotropic { .. } => "CertifiedAnisotropic",
            AnisotropyVerdict::IsotropicWitness { .. } => "IsotropicWitness",
            AnisotropyVerdict::HeuristicAnisotropic { .. } => "HeuristicAnisotropic",
        }
    }

    pub fn interpretation(&self) -> &'static str {
        match self {
            AnisotropyVerdict::CertifiedAnisotropic { .. } => {
                "κ₂ has trivial kernel; if μ is a smooth point of its reduced component (not checked), its orbit is Zariski open there"
            }
            AnisotropyVerdict::IsotropicWitness { .. } => {
                "a nonzero class has vanishing quadratic obstruction; anisotropy gives no rigidity conclusion"
            }
            AnisotropyVerdict::HeuristicAnisotropic { .. } => {
                "no isotropic class found by finite-field and bounded rational search; not a proof"
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub seed: u64,
    pub random_trials: usize,
    /// Upper bound on projective points enumerated per prime.
    pub point_limit: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            seed: 0,
            random_trials: 2000,
            point_limit: 2_000_000,
        }
    }
}

pub const SEARCH_PRIMES: [u64; 5] = [3, 5, 7, 11, 13];
const HEIGHT_BOUND: i64 = 10_000;
const BOX_POINTS: u64 = 200_000;

pub fn anisotropy(k: &QuadraticObstruction) -> AnisotropyVerdict {
    anisotropy_with(k, SearchOptions::default())
}

pub fn anisotropy_with(k: &QuadraticObstruction, opts: SearchOptions) -> AnisotropyVerdict {
    let d = k.h2_dim;
    let live = k.nonzero_forms();
    let isotropic = |t: Vec<Rat>| AnisotropyVerdict::IsotropicWitness {
        witness: Witness::Rational(t),
    };
    match d {
        0 => AnisotropyVerdict::CertifiedAnisotropic {
            reason: CertificateReason::VacuousH2Zero,
        },
        1 => {
            if live.is_empty() {
                isotropic(vec![int(1)])
            } else {
                AnisotropyVerdict::CertifiedAnisotropic {
                    reason: CertificateReason::Dim1NonzeroForm,
                }
            }
        }
        2 => binary_verdict(k, &live),
        _ => search_verdict(k, &live, opts),
    }
}

fn binary_verdict(k: &QuadraticObstruction, live: &[usize]) -> AnisotropyVerdict {
    // q_c = a t0² + 2b t0 t1 + c t1²
    let coeffs: Vec<[Rat; 3]> = live
        .iter()
        .map(|&c| {
            let f = &k.forms[c];
            [f[0][0].clone(), &f[0][1] * int(2), f[1][1].clone()]
        })
        .collect();
    if coeffs.iter().all(|q| q[0].is_zero()) {
        return AnisotropyVerdict::IsotropicWitness {
            witness: Witness::Rational(vec![int(1), int(0)]),
        };
    }
    // common roots with t1 ≠ 0: gcd in s = t0/t1, coefficients low to high
    let mut g: Vec<Rat> = Vec::new();
    for q in &coeffs {
        let p = trim(vec![q[2].clone(), q[1].clone(), q[0].clone()]);
        g = poly_gcd(g, p);
    }
    match g.len() {
        0 | 1 => AnisotropyVerdict::CertifiedAnisotropic {
            reason: CertificateReason::Dim2GcdCertificate,
        },
        2 => AnisotropyVerdict::IsotropicWitness {
            witness: Witness::Rational(vec![-g[0].clone() / &g[1], int(1)]),
        },
        _ => {
            let (a, b, c) = (&g[2], &g[1], &g[0]);
            let disc = b * b - int(4) * a * c;
            match rat_sqrt(&disc) {
                Some(r) => AnisotropyVerdict::IsotropicWitness {
                    witness: Witness::Rational(vec![(-b + r) / (int(2) * a), int(1)]),
                },
                None => AnisotropyVerdict::IsotropicWitness {
                    witness: Witness::QuadraticExtension {
                        factor: [a.clone(), b.clone(), c.clone()],
                    },
                },
            }
        }
    }
}

fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Remainder of `a` by nonzero `b`; coefficients low to high.
fn poly_rem(mut a: Vec<Rat>, b: &[Rat]) -> Vec<Rat> {
    let lead = b.last().expect("nonzero divisor").clone();
    while a.len() >= b.len() {
        let q = a.last().unwrap().clone() / &lead;
        let shift = a.len() - b.len();
        for (i, x) in b.iter().enumerate() {
            a[shift + i] -= &q * x;
        }
        a.pop();
        a = trim(a);
    }
    a
}

/// Monic gcd; the zero polynomial is `[]`.
fn poly_gcd(a: Vec<Rat>, b: Vec<Rat>) -> Vec<Rat> {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = poly_rem(a, &b);
        a = b;
        b = r;
    }
    if let Some(lead) = a.last().cloned() {
        for x in &mut a {
            *x = &*x / &lead;
        }
    }
    a
}

fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let isqrt = |n: &BigInt| {
        let s = n.sqrt();
        (&s * &s == *n).then_some(s)
    };
    Some(Rat::new(isqrt(r.numer())?, isqrt(r.denom())?))
}

fn is_zero_of(k: &QuadraticObstruction, live: &[usize], t: &[Rat]) -> bool {
    t.iter().any(|x| !x.is_zero())
        && live.iter().all(|&c| {
            let f = &k.forms[c];
            let mut s = Rat::zero();
            for (i, ti) in t.iter().enumerate() {
                if ti.is_zero() {
                    continue;
                }
                for (j, tj) in t.iter().enumerate() {
                    if !tj.is_zero() {
                        s += ti * &f[i][j] * tj;
                    }
                }
            }
            s.is_zero()
        })
}

/// Largest `B` with `(2B+1)^d ≤ limit`.
fn box_bound(d: usize, limit: u64) -> u64 {
    let mut b = 0u64;
    while (2 * (b + 1) + 1).checked_pow(d as u32).is_some_and(|n| n <= limit) {
        b += 1;
    }
    b
}

fn box_search(k: &QuadraticObstruction, live: &[usize], bound: u64) -> Option<Vec<Rat>> {
    let d = k.h2_dim;
    let b = bound as i64;
    let mut t = vec![-b; d];
    loop {
        // projective normalization: first nonzero coordinate positive
        if t.iter().find(|x| **x != 0).is_some_and(|x| *x > 0) {
            let v: Vec<Rat> = t.iter().map(|x| int(*x)).collect();
            if is_zero_of(k, live, &v) {
                return Some(v);
            }
        }
        let mut i = 0;
        loop {
            if i == d {
                return None;
            }
            if t[i] < b {
                t[i] += 1;
                break;
            }
            t[i] = -b;
            i += 1;
        }
    }
}

/// Forms reduced mod `p` as `(i, j, value)` lists; `None` if `p` divides a denominator.
fn forms_mod(k: &QuadraticObstruction, live: &[usize], p: u64) -> Option<Vec<Vec<(usize, usize, u64)>>> {
    let pb = BigInt::from(p);
    live.iter()
        .map(|&c| {
            let mut out = Vec::new();
            for (i, row) in k.forms[c].iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let den = x.denom() % &pb;
                    if den.is_zero() {
                        return None;
                    }
                    let num = ((x.numer() % &pb) + &pb) % &pb;
                    let inv = den.modinv(&pb)?;
                    let v: u64 = ((num * inv) % &pb).try_into().ok()?;
                    if v != 0 {
                        out.push((i, j, v));
                    }
                }
            }
            Some(out)
        })
        .collect()
}

fn mod_p_search(forms: &[Vec<(usize, usize, u64)>], d: usize, p: u64) -> Option<Vec<u64>> {
    // projective points: leading coordinate 1, earlier coordinates 0
    for lead in 0..d {
        let free = d - lead - 1;
        let count = p.pow(free as u32);
        for n in 0..count {
            let mut t = vec![0u64; d];
            t[lead] = 1;
            let mut r = n;
            for slot in t.iter_mut().skip(lead + 1) {
                *slot = r % p;
                r /= p;
            }
            let zero = forms.iter().all(|f| {
                f.iter().fold(0u64, |acc, &(i, j, v)| (acc + v * t[i] % p * t[j]) % p) == 0
            });
            if zero {
                return Some(t);
            }
        }
    }
    None
}

fn projective_count(p: u64, d: usize) -> Option<u64> {
    p.checked_pow(d as u32).map(|n| (n - 1) / (p - 1))
}

fn search_verdict(k: &QuadraticObstruction, live: &[usize], opts: SearchOptions) -> AnisotropyVerdict {
    let d = k.h2_dim;
    let rational = |t: Vec<Rat>| AnisotropyVerdict::IsotropicWitness {
        witness: Witness::Rational(t),
    };
    let bound = box_bound(d, BOX_POINTS).max(1);
    if let Some(t) = box_search(k, live, bound) {
        return rational(t);
    }
    let mut rng = sample::rng(opts.seed);
    let random_search = |rng: &mut sample::SeededRng| {
        (0..opts.random_trials).find_map(|_| {
            let t: Vec<Rat> = (0..d)
                .map(|_| sample::small_rat(rng, HEIGHT_BOUND, HEIGHT_BOUND))
                .collect();
            is_zero_of(k, live, &t).then_some(t)
        })
    };
    let mut primes_tested = Vec::new();
    let mut modular: Option<(u64, Vec<u64>)> = None;
    for p in SEARCH_PRIMES {
        if projective_count(p, d).is_none_or(|n| n > opts.point_limit) {
            continue;
        }
        let Some(fp) = forms_mod(k, live, p) else { continue };
        primes_tested.push(p);
        if let Some(t) = mod_p_search(&fp, d, p) {
            modular = Some((p, t));
            break;
        }
    }
    if let Some((p, t)) = modular {
        let centered: Vec<Rat> = t
            .iter()
            .map(|&x| if x > p / 2 { int(x as i64 - p as i64) } else { int(x as i64) })
            .collect();
        if is_zero_of(k, live, &centered) {
            return rational(centered);
        }
        if let Some(t) = random_search(&mut rng) {
            return rational(t);
        }
        return AnisotropyVerdict::IsotropicWitness {
            witness: Witness::ModP { p, coords: t },
        };
    }
    if let Some(t) = random_search(&mut rng) {
        return rational(t);
    }
    AnisotropyVerdict::HeuristicAnisotropic {
        primes_tested,
        search_exhaustive_up_to: bound,
        random_trials: opts.random_trials,
        seed: opts.seed,
    }
}

/// Uniformly random `H²` coordinates with small entries, for property checks.
pub fn random_class(rng: &mut impl Rng, d: usize) -> Vec<Rat> {
    (0..d).map(|_| sample::small_int(rng, 4)).collect()
}

#[allow(clippy::needless_range_loop)]
pub fn forms_symmetric(k: &QuadraticObstruction) -> bool {
    k.forms.iter().all(|f| {
        for i in 0..f.len() {
            for j in 0..i {
                if f[i][j] != f[j][i] {
                    return false;
                }
            }
        }
        true
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::build_complex;
    use crate::laws::{Law, Symmetry};
    use crate::presentations::{OperadType, QuadraticPresentation};

    fn law(m: usize, s: Symmetry, e: &[(usize, usize, usize, i64)]) -> Law<Rat> {
        Law::from_free_entries(m, s, e.iter().map(|&(i, j, k, v)| (i, j, k, int(v))))
    }

    fn kx2() -> Law<Rat> {
        law(2, Symmetry::None, &[(0, 0, 0, 1), (1, 0, 1, 1), (1, 1, 0, 1)])
    }

    #[test]
    fn sl2_is_vacuously_anisotropic() {
        let mu = law(3, Symmetry::Skew, &[(1, 0, 2, 1), (0, 0, 1, -2), (2, 1, 2, -2)]);
        let c = build_complex(&mu, &QuadraticPresentation::builtin(OperadType::Lie, 3).unwrap()).unwrap();
        let k = kappa2(&c);
        assert_eq!(k.h2_dim, 0);
        assert_eq!(
            anisotropy(&k),
            AnisotropyVerdict::CertifiedAnisotropic {
                reason: CertificateReason::VacuousH2Zero
            }
        );
        assert_eq!(check_well_defined(&c, 20, 1).unwrap().cross_term_checks, 20);
    }

    #[test]
    fn zero_lie_law_kappa_is_jacobiator() {
        let p = QuadraticPresentation::builtin(OperadType::Lie, 3).unwrap();
        let c = build_complex(&Law::zero(3, Symmetry::Skew), &p).unwrap();
        let k = kappa2(&c);
        assert_eq!((k.h2_dim, k.h3_dim), (9, 3));
        let sl2 = law(3, Symmetry::Skew, &[(1, 0, 2, 1), (0, 0, 1, -2), (2, 1, 2, -2)]);
        let t = sl2.coords().to_dense(9);
        assert!(k.evaluate(&t).iter().all(Zero::is_zero));
        let lift = second_order_lift(&c, &sl2.coords()).unwrap();
        assert_eq!(
            lift,
            LiftResult::Lifted {
                beta: SparseVec::new(),
                verified: true
            }
        );
        let bad = law(3, Symmetry::Skew, &[(2, 0, 1, 1), (1, 1, 2, 1)]);
        match second_order_lift(&c, &bad.coords()).unwrap() {
            LiftResult::Obstructed { class } => {
                let f = p.evaluate(&bad.coords()).unwrap();
                assert_eq!(class, f.into_entries());
            }
            other => panic!("expected an obstruction, got {other:?}"),
        }
    }

    #[test]
    fn dual_numbers_lift_and_witness() {
        let c = build_complex(&kx2(), &QuadraticPresentation::builtin(OperadType::Assoc, 2).unwrap()).unwrap();
        let r = c.cohomology();
        assert!(r.h2.dim() > 0);
        let k = kappa2(&c);
        let verdict = anisotropy(&k);
        let Witness::Rational(t) = (match &verdict {
            AnisotropyVerdict::IsotropicWitness { witness } => witness.clone(),
            other => panic!("expected a witness, got {other:?}"),
        }) else {
            panic!("expected a rational witness")
        };
        let alpha = k.class_vector(&t);
        assert!(second_order_lift(&c, &alpha).unwrap().is_lifted());
        // x·x = 1 perturbation
        let alpha = law(2, Symmetry::None, &[(0, 1, 1, 1)]).coords();
        assert_eq!(
            second_order_lift(&c, &alpha).unwrap(),
            LiftResult::Lifted {
                beta: SparseVec::new(),
                verified: true
            }
        );
        check_well_defined(&c, 30, 9).unwrap();
    }

    #[test]
    fn first_order_obstruction_is_an_error() {
        let c = build_complex(&kx2(), &QuadraticPresentation::builtin(OperadType::Assoc, 2).unwrap()).unwrap();
        let alpha = law(2, Symmetry::None, &[(0, 0, 1, 1)]).coords();
        assert!(matches!(
            second_order_lift(&c, &alpha),
            Err(Error::FirstOrderObstructed(_))
        ));
    }

    fn binary(forms: &[[i64; 3]]) -> QuadraticObstruction {
        QuadraticObstruction {
            h2_dim: 2,
            h3_dim: forms.len(),
            forms: forms
                .iter()
                .map(|[a, b, c]| vec![vec![int(*a), rat(*b, 2)], vec![rat(*b, 2), int(*c)]])
                .collect(),
            representatives: vec![SparseVec::unit(0), SparseVec::unit(1)],
        }
    }

    #[test]
    fn binary_gcd_certificates() {
        // t0² + t1², t0 t1: no common zero
        assert_eq!(
            anisotropy(&binary(&[[1, 0, 1], [0, 1, 0]])).category(),
            "CertifiedAnisotropic"
        );
        // (t0 - t1)(t0 + 2 t1) and (t0 - t1) t1 share t0 = t1
        let v = anisotropy(&binary(&[[1, 1, -2], [0, 1, -1]]));
        assert_eq!(
            v,
            AnisotropyVerdict::IsotropicWitness {
                witness: Witness::Rational(vec![int(1), int(1)])
            }
        );
        // t0² + t1² alone: zero over Q(i)
        assert!(matches!(
            anisotropy(&binary(&[[1, 0, 1]])),
            AnisotropyVerdict::IsotropicWitness {
                witness: Witness::QuadraticExtension { .. }
            }
        ));
        // t1² vanishes at (1:0)
        assert_eq!(
            anisotropy(&binary(&[[0, 0, 1]])),
            AnisotropyVerdict::IsotropicWitness {
                witness: Witness::Rational(vec![int(1), int(0)])
            }
        );
    }

    #[test]
    fn ternary_sum_of_squares_is_heuristic() {
        let k = QuadraticObstruction {
            h2_dim: 3,
            h3_dim: 1,
            forms: vec![vec![
                vec![int(1), int(0), int(0)],
                vec![int(0), int(1), int(0)],
                vec![int(0), int(0), int(1)],
            ]],
            representatives: vec![],
        };
        // x² + y² + z² has zeros mod every odd prime but none over Q
        match anisotropy(&k) {
            AnisotropyVerdict::IsotropicWitness {
                witness: Witness::ModP { p, .. },
            } => assert_eq!(p, 3),
            other => panic!("unexpected verdict {other:?}"),
        }
    }
}
