//! Multi-prime rank computation with an exact certificate.
//!
//! Rank modulo a prime never exceeds the rational rank. If several primes
//! agree on the rank and the kernel basis read off the modular reduced form
//! lifts (CRT + rational reconstruction) to vectors that are exactly in the
//! rational kernel, the rational nullity is at least the modular one and the
//! rank is certified. Otherwise we fall back to exact elimination.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::echelon::{eliminate, Pivoting};
use super::sparse::{SparseMatrix, SparseVec};
use super::subspace::Subspace;
use crate::scalar::{Fp, Rat};

/// Primes in (2^60, 2^61).
pub const PRIME_POOL: [u64; 8] = [
    1208591967255241853,
    1261446057643970689,
    1400451656149585667,
    1608121999213595963,
    1824830334607149587,
    2099786292732309323,
    2201738882017985669,
    2245735862420026439,
];

/// Reduced echelon data of a matrix modulo one prime, with plain residues.
#[derive(Clone, Debug)]
pub struct ModularEchelon {
    pub prime: u64,
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<(usize, u64)>>,
}

impl ModularEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn echelon_mod<const P: u64>(m: &SparseMatrix<Rat>, reduce: bool) -> Option<ModularEchelon> {
    let mp = m.try_map(Fp::<P>::from_rat)?;
    let e = eliminate(mp.into_rows(), m.ncols(), m.ncols(), Pivoting::Markowitz, reduce);
    let pivots = e.pivot_columns();
    let rows = e
        .pivots
        .into_iter()
        .map(|(_, r)| r.iter().map(|(j, v)| (j, v.value())).collect())
        .collect();
    Some(ModularEchelon {
        prime: P,
        pivots,
        rows,
    })
}

/// Echelon form of `m` modulo `PRIME_POOL[index]`; `None` if the prime divides a denominator.
pub fn echelon_mod_pool(m: &SparseMatrix<Rat>, index: usize, reduce: bool) -> Option<ModularEchelon> {
    macro_rules! dispatch {
        ($($i:literal),*) => {
            match index {
                $($i => echelon_mod::<{ PRIME_POOL[$i] }>(m, reduce),)*
                _ => panic!("prime index {index} out of range"),
            }
        };
    }
    dispatch!(0, 1, 2, 3, 4, 5, 6, 7)
}

pub fn rank_mod_pool(m: &SparseMatrix<Rat>, index: usize) -> Option<usize> {
    echelon_mod_pool(m, index, false).map(|e| e.rank())
}

/// Picks `count` distinct pool indices deterministically from `seed`.
pub fn choose_primes(seed: u64, count: usize) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx = sample(&mut rng, PRIME_POOL.len(), count.min(PRIME_POOL.len())).into_vec();
    idx.sort_unstable();
    idx
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankMethod {
    /// Modular ranks agreed and the lifted kernel basis was verified exactly.
    ModularKernelVerified,
    /// Exact rational elimination (used directly or as the fallback).
    ExactElimination { fallback_reason: Option<String> },
}

#[derive(Clone, Debug)]
pub struct RankCertificate {
    pub rank: usize,
    pub primes: Vec<u64>,
    pub modular_ranks: Vec<usize>,
    pub method: RankMethod,
    /// Exact kernel, when the certificate produced one.
    pub kernel: Option<Subspace<Rat>>,
}

/// Rank via three pool primes, certified by an exact kernel check.
pub fn certified_rank(m: &SparseMatrix<Rat>, seed: u64) -> RankCertificate {
    certified_rank_with(m, seed, 3)
}

pub fn certified_rank_with(m: &SparseMatrix<Rat>, seed: u64, nprimes: usize) -> RankCertificate {
    let mut chosen = choose_primes(seed, PRIME_POOL.len());
    // primes dividing a denominator are skipped in pool order
    let mut echelons: Vec<ModularEchelon> = Vec::new();
    while echelons.len() < nprimes && !chosen.is_empty() {
        let need = nprimes - echelons.len();
        let take: Vec<usize> = chosen.drain(..need.min(chosen.len())).collect();
        let mut got: Vec<ModularEchelon> = take
            .par_iter()
            .filter_map(|&i| echelon_mod_pool(m, i, true))
            .collect();
        echelons.append(&mut got);
    }
    let primes: Vec<u64> = echelons.iter().map(|e| e.prime).collect();
    let modular_ranks: Vec<usize> = echelons.iter().map(ModularEchelon::rank).collect();

    let fallback = |reason: String| {
        let rank = super::rank_exact(m);
        RankCertificate {
            rank,
            primes: primes.clone(),
            modular_ranks: modular_ranks.clone(),
            method: RankMethod::ExactElimination {
                fallback_reason: Some(reason),
            },
            kernel: None,
        }
    };

    if echelons.len() < nprimes {
        return fallback("not enough usable primes".into());
    }
    if modular_ranks.windows(2).any(|w| w[0] != w[1]) {
        return fallback(format!("modular ranks disagree: {modular_ranks:?}"));
    }
    if echelons.windows(2).any(|w| w[0].pivots != w[1].pivots) {
        return fallback("pivot columns differ between primes".into());
    }
    match lift_kernel(m.ncols(), &echelons) {
        Some(kernel_vectors) => {
            if kernel_vectors.iter().all(|v| m.mul_vec(v).is_zero()) {
                let kernel = Subspace::span(m.ncols(), kernel_vectors);
                RankCertificate {
                    rank: modular_ranks[0],
                    primes,
                    modular_ranks,
                    method: RankMethod::ModularKernelVerified,
                    kernel: Some(kernel),
                }
            } else {
                fallback("lifted kernel vector failed exact verification".into())
            }
        }
        None => fallback("rational reconstruction failed".into()),
    }
}

/// Lifts the kernel bases read off agreeing reduced forms to rational vectors.
fn lift_kernel(ncols: usize, echelons: &[ModularEchelon]) -> Option<Vec<SparseVec<Rat>>> {
    let pivots = &echelons[0].pivots;
    let mut is_pivot = vec![false; ncols];
    for p in pivots {
        is_pivot[*p] = true;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !is_pivot[*c]).collect();
    let mut slot = vec![usize::MAX; ncols];
    for (k, f) in free.iter().enumerate() {
        slot[*f] = k;
    }
    let modulus: BigInt = echelons.iter().map(|e| BigInt::from(e.prime)).product();
    let mut parts: Vec<Vec<(usize, Vec<u64>)>> = vec![Vec::new(); free.len()];
    let nprimes = echelons.len();
    for (row_idx, &p) in pivots.iter().enumerate() {
        let mut per_free: std::collections::BTreeMap<usize, Vec<u64>> = Default::default();
        for (pi, e) in echelons.iter().enumerate() {
            for &(j, v) in &e.rows[row_idx] {
                if j == p {
                    continue;
                }
                let neg = if v == 0 { 0 } else { e.prime - v };
                per_free.entry(j).or_insert_with(|| vec![0; nprimes])[pi] = neg;
            }
        }
        for (j, res) in per_free {
            parts[slot[j]].push((p, res));
        }
    }
    let primes: Vec<u64> = echelons.iter().map(|e| e.prime).collect();
    let mut out = Vec::with_capacity(free.len());
    for (k, f) in free.iter().enumerate() {
        let mut entries = vec![(*f, Rat::one())];
        for (p, res) in &parts[k] {
            let a = crt(res, &primes, &modulus);
            entries.push((*p, rational_reconstruction(&a, &modulus)?));
        }
        out.push(SparseVec::from_entries(entries));
    }
    Some(out)
}

fn crt(residues: &[u64], primes: &[u64], modulus: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for (&r, &p) in residues.iter().zip(primes) {
        let p_big = BigInt::from(p);
        let rest = modulus / &p_big;
        let inv = rest.modinv(&p_big).expect("pool primes are distinct");
        acc += &rest * (inv * BigInt::from(r)).mod_floor(&p_big);
    }
    acc.mod_floor(modulus)
}

/// Smallest-height `n/d` with `n ≡ a d (mod m)` and `|n|, d ≤ sqrt(m/2)`.
pub fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<Rat> {
    let a = a.mod_floor(m);
    if a.is_zero() {
        return Some(Rat::zero());
    }
    let bound = (m >> 1usize).sqrt();
    let (mut r0, mut r1) = (m.clone(), a);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if r1.gcd(&t1) != BigInt::one() {
        return None;
    }
    let (n, d) = if t1.sign() == Sign::Minus {
        (-r1, -t1)
    } else {
        (r1, t1)
    };
    Some(Rat::new(n, d))
}

#[cfg(test)]
fn pow_mod(a: u64, mut e: u64, p: u64) -> u64 {
    let (mut base, mut acc) = (a as u128 % p as u128, 1u128);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    acc as u64
}
