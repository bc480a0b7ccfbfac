//! Scalar abstractions.
//!
//! Everything in this crate is written against [`Ring`] (for polynomial
//! evaluation, e.g. truncated power series substitutions) or [`Field`] (for
//! elimination). The concrete instantiations are exact rationals, prime fields
//! [`Fp`] used by the modular rank path and the finite-field searches, and the
//! truncated polynomial rings [`Trunc`] used to verify first and second order
//! identities exactly.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(n: i64) -> Self;

    /// `self + a * b`.
    fn add_mul(&self, a: &Self, b: &Self) -> Self {
        self.clone() + a.clone() * b.clone()
    }

    /// `self - a * b`.
    fn sub_mul(&self, a: &Self, b: &Self) -> Self {
        self.clone() - a.clone() * b.clone()
    }
}

pub trait Field: Ring + Div<Output = Self> {
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
}

impl Ring for Rat {
    fn from_i64(n: i64) -> Self {
        Rat::from_integer(BigInt::from(n))
    }

    fn add_mul(&self, a: &Self, b: &Self) -> Self {
        self + &(a * b)
    }

    fn sub_mul(&self, a: &Self, b: &Self) -> Self {
        self - &(a * b)
    }
}

impl Field for Rat {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        self.recip()
    }
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_i64(n)
}

/// Renders a rational as `p` or `p/q`.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p`, or `p/q` exactly.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

/// Element of the prime field `Z/PZ`. `P` must be prime and below 2^63.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub const MODULUS: u64 = P;

    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// Representative in `(-P/2, P/2]`.
    pub fn signed(self) -> i128 {
        if self.0 > P / 2 {
            self.0 as i128 - P as i128
        } else {
            self.0 as i128
        }
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        let r = n.mod_floor(&BigInt::from(P));
        Fp(r.to_u64().expect("reduced residue fits"))
    }

    /// Image of a rational, or `None` when `P` divides the denominator.
    pub fn from_rat(r: &Rat) -> Option<Self> {
        let d = Self::from_bigint(r.denom());
        if d.0 == 0 {
            return None;
        }
        Some(Self::from_bigint(r.numer()) * d.inv())
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 as u128 + rhs.0 as u128;
        Fp((s % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        if self.0 >= rhs.0 {
            Fp(self.0 - rhs.0)
        } else {
            Fp(P - (rhs.0 - self.0))
        }
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            Fp(P - self.0)
        }
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv()
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Ring for Fp<P> {
    fn from_i64(n: i64) -> Self {
        Fp((n as i128).rem_euclid(P as i128) as u64)
    }

    fn add_mul(&self, a: &Self, b: &Self) -> Self {
        *self + *a * *b
    }

    fn sub_mul(&self, a: &Self, b: &Self) -> Self {
        *self - *a * *b
    }
}

impl<const P: u64> Field for Fp<P> {
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero mod {P}");
        self.pow(P - 2)
    }
}

/// Truncated polynomial ring `T[t]/(t^N)`; `Trunc<T, 2>` is the dual numbers.
#[derive(Clone, PartialEq, Debug)]
pub struct Trunc<T, const N: usize> {
    coeffs: [T; N],
}

impl<T: Ring, const N: usize> Trunc<T, N> {
    pub fn new(coeffs: [T; N]) -> Self {
        Trunc { coeffs }
    }

    pub fn constant(c: T) -> Self {
        let mut coeffs: [T; N] = std::array::from_fn(|_| T::zero());
        coeffs[0] = c;
        Trunc { coeffs }
    }

    /// `c * t^k`, zero when `k >= N`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs: [T; N] = std::array::from_fn(|_| T::zero());
        if k < N {
            coeffs[k] = c;
        }
        Trunc { coeffs }
    }

    pub fn coeff(&self, k: usize) -> &T {
        &self.coeffs[k]
    }
}

impl<T: Ring, const N: usize> Add for Trunc<T, N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for (a, b) in out.coeffs.iter_mut().zip(rhs.coeffs) {
            *a = a.clone() + b;
        }
        out
    }
}

impl<T: Ring, const N: usize> Sub for Trunc<T, N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut out = self;
        for (a, b) in out.coeffs.iter_mut().zip(rhs.coeffs) {
            *a = a.clone() - b;
        }
        out
    }
}

impl<T: Ring, const N: usize> Mul for Trunc<T, N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut coeffs: [T; N] = std::array::from_fn(|_| T::zero());
        for i in 0..N {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..N - i {
                coeffs[i + j] = coeffs[i + j].add_mul(&self.coeffs[i], &rhs.coeffs[j]);
            }
        }
        Trunc { coeffs }
    }
}

impl<T: Ring, const N: usize> Neg for Trunc<T, N> {
    type Output = Self;
    fn neg(self) -> Self {
        Trunc {
            coeffs: self.coeffs.map(|c| -c),
        }
    }
}

impl<T: Ring, const N: usize> Zero for Trunc<T, N> {
    fn zero() -> Self {
        Trunc::constant(T::zero())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl<T: Ring, const N: usize> One for Trunc<T, N> {
    fn one() -> Self {
        Trunc::constant(T::one())
    }
}

impl<T: Ring, const N: usize> Ring for Trunc<T, N> {
    fn from_i64(n: i64) -> Self {
        Trunc::constant(T::from_i64(n))
    }
}

/// Height of a rational: the larger of |numerator| and denominator.
pub fn height(r: &Rat) -> BigInt {
    let n = r.numer().abs();
    if &n > r.denom() {
        n
    } else {
        r.denom().clone()
    }
}
