//! Polynomial arithmetic and complete factorization over prime fields,
//! plus the mod-p verifications the obstruction search relies on.
//!
//! Moduli are machine-word primes (`p < 2^62`); the pipelines here only ever
//! need `p` on the order of the family index, so multiprecision residues
//! would be pure overhead.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::family;
use crate::poly::IntPoly;

/// Largest modulus accepted for `FpPoly`.
pub const MAX_MODULUS: u64 = 1 << 62;

/// Primes up to this bound get deterministic exhaustive root search for
/// linear factors instead of randomized splitting.
const LINEAR_SCAN_LIMIT: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FpError {
    /// The modulus failed the deterministic primality test.
    NotPrime(u64),
    /// The modulus exceeds the machine-word bound.
    TooLarge(u64),
    /// The polynomial vanishes identically mod p.
    ZeroModP,
    /// A structured check was asked for at an index where its premise
    /// (`2j + 3` prime) fails.
    NotApplicable(String),
}

impl fmt::Display for FpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FpError::NotPrime(p) => write!(f, "{p} is not prime"),
            FpError::TooLarge(p) => write!(f, "{p} exceeds the modulus bound 2^62"),
            FpError::ZeroModP => write!(f, "polynomial vanishes identically mod p"),
            FpError::NotApplicable(s) => write!(f, "not applicable: {s}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for FpError {}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

#[inline]
fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + (p - b)
    }
}

pub fn pow_mod_u64(mut base: u64, mut exp: u64, p: u64) -> u64 {
    base %= p;
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod_u64(a, p - 2, p)
}

/// Deterministic Miller-Rabin, valid for every `n < 2^64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Polynomial over the prime field `F_p`, residues in `[0, p)` in ascending
/// degree order. Zero polynomial is the empty sequence.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    /// Checked constructor; verifies primality of the modulus.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Result<Self, FpError> {
        check_modulus(p)?;
        Ok(FpPoly::from_raw(
            p,
            coeffs.into_iter().map(|c| c % p).collect(),
        ))
    }

    fn from_raw(p: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    /// Reduction of an integer polynomial mod `p`.
    pub fn reduce(f: &IntPoly, p: u64) -> Result<Self, FpError> {
        check_modulus(p)?;
        let pb = BigInt::from(p);
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits u64"))
            .collect();
        Ok(FpPoly::from_raw(p, coeffs))
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        FpPoly::from_raw(p, vec![1])
    }

    pub fn constant(p: u64, c: u64) -> Self {
        FpPoly::from_raw(p, vec![c % p])
    }

    /// The monomial `q`.
    pub fn x(p: u64) -> Self {
        FpPoly::from_raw(p, vec![0, 1])
    }

    pub fn monomial(p: u64, c: u64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c % p;
        FpPoly::from_raw(p, coeffs)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().expect("degree of the zero polynomial")
    }

    pub fn leading(&self) -> u64 {
        *self.coeffs.last().expect("leading of zero polynomial")
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        debug_assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(add_mod(self.coeff(i), other.coeff(i), self.p));
        }
        FpPoly::from_raw(self.p, out)
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        debug_assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(sub_mod(self.coeff(i), other.coeff(i), self.p));
        }
        FpPoly::from_raw(self.p, out)
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        debug_assert_eq!(self.p, other.p);
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut out = vec![0u64; n];
        if p < (1 << 31) {
            // Products fit in 62 bits; a u128 accumulator absorbs the whole
            // convolution before a single reduction.
            for (k, slot) in out.iter_mut().enumerate() {
                let lo = (k + 1).saturating_sub(other.coeffs.len());
                let hi = k.min(self.coeffs.len() - 1);
                let mut acc: u128 = 0;
                for i in lo..=hi {
                    acc += self.coeffs[i] as u128 * other.coeffs[k - i] as u128;
                }
                *slot = (acc % p as u128) as u64;
            }
        } else {
            for (i, &a) in self.coeffs.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, &b) in other.coeffs.iter().enumerate() {
                    out[i + j] = add_mod(out[i + j], mul_mod(a, b, p), p);
                }
            }
        }
        FpPoly::from_raw(p, out)
    }

    pub fn scale(&self, c: u64) -> FpPoly {
        let c = c % self.p;
        FpPoly::from_raw(
            self.p,
            self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect(),
        )
    }

    pub fn make_monic(&self) -> FpPoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.p))
    }

    /// Division with remainder: `self = g * quotient + remainder`,
    /// `deg remainder < deg g`.
    pub fn divrem(&self, g: &FpPoly) -> (FpPoly, FpPoly) {
        debug_assert_eq!(self.p, g.p);
        assert!(!g.is_zero(), "division by zero polynomial");
        let p = self.p;
        let dg = g.deg();
        if self.degree().is_none_or(|d| d < dg) {
            return (FpPoly::zero(p), self.clone());
        }
        let inv_lead = inv_mod(g.leading(), p);
        let mut rem = self.coeffs.clone();
        let dq = self.deg() - dg;
        let mut quot = vec![0u64; dq + 1];
        for k in (0..=dq).rev() {
            let lead = rem[k + dg];
            if lead == 0 {
                continue;
            }
            let c = mul_mod(lead, inv_lead, p);
            quot[k] = c;
            for (i, &gi) in g.coeffs.iter().enumerate() {
                rem[k + i] = sub_mod(rem[k + i], mul_mod(c, gi, p), p);
            }
        }
        (FpPoly::from_raw(p, quot), FpPoly::from_raw(p, rem))
    }

    pub fn rem(&self, g: &FpPoly) -> FpPoly {
        self.divrem(g).1
    }

    /// Exact quotient; panics if the division leaves a remainder.
    fn exact_div(&self, g: &FpPoly) -> FpPoly {
        let (q, r) = self.divrem(g);
        debug_assert!(r.is_zero(), "inexact division in factorization");
        q
    }

    /// Monic gcd by the Euclidean algorithm with monic normalization at
    /// each step.
    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let mut a = self.make_monic();
        let mut b = other.make_monic();
        while !b.is_zero() {
            let r = a.rem(&b).make_monic();
            a = b;
            b = r;
        }
        a
    }

    pub fn derivative(&self) -> FpPoly {
        if self.coeffs.len() <= 1 {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        FpPoly::from_raw(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, (i as u64) % p, p))
                .collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = add_mod(mul_mod(acc, x, self.p), c, self.p);
        }
        acc
    }

    /// `self^exp mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, exp: &BigUint, modulus: &FpPoly) -> FpPoly {
        assert!(
            modulus.degree().is_some_and(|d| d >= 1),
            "modulus must be nonconstant"
        );
        let mut base = self.rem(modulus);
        let mut acc = FpPoly::one(self.p);
        let bits = exp.bits();
        for i in 0..bits {
            if exp.bit(i) {
                acc = acc.mul(&base).rem(modulus);
            }
            if i + 1 < bits {
                base = base.mul(&base).rem(modulus);
            }
        }
        acc
    }

    pub fn pow_mod_u64_exp(&self, exp: u64, modulus: &FpPoly) -> FpPoly {
        self.pow_mod(&BigUint::from(exp), modulus)
    }

    /// Renders with the given variable letter.
    pub fn display_var(&self, var: char) -> FpPolyDisplay<'_> {
        FpPolyDisplay { poly: self, var }
    }
}

fn check_modulus(p: u64) -> Result<(), FpError> {
    if p >= MAX_MODULUS {
        return Err(FpError::TooLarge(p));
    }
    if !is_prime_u64(p) {
        return Err(FpError::NotPrime(p));
    }
    Ok(())
}

pub struct FpPolyDisplay<'a> {
    poly: &'a FpPoly,
    var: char,
}

impl fmt::Display for FpPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.poly.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 || c != 1 {
                write!(f, "{c}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}", self.var)?,
                _ => write!(f, "{}^{}", self.var, i)?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_var('x'))
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpPoly[p={}]({})", self.p, self)
    }
}

/// Canonical irreducible factorization over `F_p`: monic irreducible
/// factors with multiplicities, sorted by degree then lexicographically by
/// coefficient sequence, together with the leading unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorMultiset {
    p: u64,
    unit: u64,
    factors: Vec<(FpPoly, usize)>,
}

impl FactorMultiset {
    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn unit(&self) -> u64 {
        self.unit
    }

    pub fn factors(&self) -> &[(FpPoly, usize)] {
        &self.factors
    }

    /// Multiplies everything back together.
    pub fn product(&self) -> FpPoly {
        let mut acc = FpPoly::constant(self.p, self.unit);
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f);
            }
        }
        acc
    }

    /// Total degree accounted for by the factors.
    pub fn total_degree(&self) -> usize {
        self.factors.iter().map(|(f, m)| f.deg() * m).sum()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.factors.iter().map(|&(_, m)| m).max().unwrap_or(0)
    }

    /// Multiplicity of the factor `q` (i.e. the root 0).
    pub fn multiplicity_of_x(&self) -> usize {
        self.factors
            .iter()
            .find(|(f, _)| f.coeffs() == [0, 1])
            .map_or(0, |&(_, m)| m)
    }
}

fn canonical_sort(factors: &mut [(FpPoly, usize)]) {
    factors.sort_by(|(a, _), (b, _)| {
        a.deg()
            .cmp(&b.deg())
            .then_with(|| cmp_coeffs(a.coeffs(), b.coeffs()))
    });
}

fn cmp_coeffs(a: &[u64], b: &[u64]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.cmp(y) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

/// Complete canonical factorization of `f mod p`.
///
/// Squarefree decomposition, then distinct-degree factorization, then
/// equal-degree splitting. The splitting stage is randomized but the output
/// is canonical: the per-call random stream is derived from `(seed, f, p)`
/// and the factor list is sorted, so two runs with different seeds return
/// identical multisets.
pub fn factor_mod_p(f: &IntPoly, p: u64, seed: u64) -> Result<FactorMultiset, FpError> {
    let reduced = FpPoly::reduce(f, p)?;
    let mut rng = rng_for(seed, f, p);
    factor_fp(&reduced, &mut rng)
}

/// Factorization of an already-reduced polynomial.
pub fn factor_fp(f: &FpPoly, rng: &mut ChaCha8Rng) -> Result<FactorMultiset, FpError> {
    if f.is_zero() {
        return Err(FpError::ZeroModP);
    }
    let p = f.modulus();
    let unit = f.leading();
    let monic = f.make_monic();
    let mut factors: Vec<(FpPoly, usize)> = Vec::new();
    if monic.deg() > 0 {
        for (sqfree, mult) in squarefree_decomposition(&monic) {
            for (same_degree, d) in distinct_degree_split(&sqfree) {
                for irr in equal_degree_split(&same_degree, d, rng) {
                    factors.push((irr, mult));
                }
            }
        }
    }
    canonical_sort(&mut factors);
    let out = FactorMultiset { p, unit, factors };
    debug_assert_eq!(out.product(), *f, "factorization must reconstruct");
    out.factors
        .windows(2)
        .for_each(|w| debug_assert_ne!(w[0].0, w[1].0, "duplicate irreducible factor"));
    Ok(out)
}

fn rng_for(seed: u64, f: &IntPoly, p: u64) -> ChaCha8Rng {
    // splitmix64-style fold of the call identity into the stream seed
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15u64.wrapping_mul(p);
    let mut mix = |v: u64| {
        h ^= v
            .wrapping_add(0x9e37_79b9_7f4a_7c15)
            .wrapping_add(h << 6)
            .wrapping_add(h >> 2);
        h = h.wrapping_mul(0xbf58_476d_1ce4_e5b9);
        h ^= h >> 27;
    };
    for c in f.coeffs() {
        for d in c.iter_u64_digits() {
            mix(d);
        }
        if c.is_negative() {
            mix(1);
        }
    }
    ChaCha8Rng::seed_from_u64(h)
}

fn uniform_below(rng: &mut ChaCha8Rng, bound: u64) -> u64 {
    debug_assert!(bound > 0);
    // rejection sampling keeps the draw unbiased
    let zone = u64::MAX - u64::MAX % bound;
    loop {
        let v = rng.next_u64();
        if v < zone {
            return v % bound;
        }
    }
}

/// Pairwise coprime squarefree monic parts with multiplicities.
fn squarefree_decomposition(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    debug_assert!(f.is_monic());
    let mut out = Vec::new();
    squarefree_inner(f.clone(), 1, &mut out);
    out
}

fn squarefree_inner(f: FpPoly, scale: usize, out: &mut Vec<(FpPoly, usize)>) {
    let p = f.modulus();
    if f.degree().is_none_or(|d| d == 0) {
        return;
    }
    let deriv = f.derivative();
    if deriv.is_zero() {
        squarefree_inner(pth_root(&f), scale * p as usize, out);
        return;
    }
    let mut c = f.gcd(&deriv);
    let mut w = f.exact_div(&c);
    let mut i = 1usize;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.exact_div(&y);
        if !z.is_one() {
            out.push((z, i * scale));
        }
        w = y;
        c = c.exact_div(&w);
        i += 1;
    }
    if !c.is_one() {
        squarefree_inner(pth_root(&c), scale * p as usize, out);
    }
}

/// p-th root of `g(x^p)`; over `F_p` the coefficients are their own p-th
/// roots.
fn pth_root(f: &FpPoly) -> FpPoly {
    let p = f.modulus() as usize;
    let coeffs = f.coeffs().iter().step_by(p).copied().collect();
    FpPoly::from_raw(f.modulus(), coeffs)
}

/// Splits a squarefree monic polynomial into products of irreducibles of
/// equal degree, returning `(product, degree)` pairs.
fn distinct_degree_split(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.modulus();
    let mut v = f.clone();
    let x = FpPoly::x(p);
    let mut out = Vec::new();
    if v.deg() == 0 {
        return out;
    }
    let mut h = x.pow_mod_u64_exp(p, &v);
    let mut d = 1usize;
    while v.deg() >= 2 * d {
        let g = v.gcd(&h.sub(&x));
        if g.degree().is_some_and(|dd| dd >= 1) {
            out.push((g.clone(), d));
            v = v.exact_div(&g);
            if v.deg() == 0 {
                return out;
            }
            h = h.rem(&v);
        }
        d += 1;
        h = h.pow_mod_u64_exp(p, &v);
    }
    if v.deg() > 0 {
        let d = v.deg();
        out.push((v, d));
    }
    out
}

/// Equal-degree splitting of a monic squarefree product of irreducibles of
/// degree `d`. Uses exhaustive root search for linear factors over small
/// fields, Cantor-Zassenhaus otherwise (trace-map variant at p = 2).
fn equal_degree_split(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let p = f.modulus();
    debug_assert_eq!(f.deg() % d, 0);
    if f.deg() == d {
        return vec![f.clone()];
    }
    if d == 1 && p <= LINEAR_SCAN_LIMIT {
        let mut roots = Vec::with_capacity(f.deg());
        for a in 0..p {
            if f.eval(a) == 0 {
                roots.push(FpPoly::from_raw(p, vec![sub_mod(0, a, p), 1]));
                if roots.len() == f.deg() {
                    break;
                }
            }
        }
        debug_assert_eq!(roots.len(), f.deg(), "squarefree split-degree-1 part");
        return roots;
    }

    let mut out = Vec::new();
    let mut stack = vec![f.clone()];
    while let Some(u) = stack.pop() {
        if u.deg() == d {
            out.push(u);
            continue;
        }
        let g = loop {
            let r = random_poly(rng, p, u.deg());
            let candidate = if p == 2 {
                trace_map(&r, d, &u)
            } else {
                let exp = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
                r.pow_mod(&exp, &u).sub(&FpPoly::one(p))
            };
            let g = u.gcd(&candidate);
            if g.degree().is_some_and(|dd| dd >= 1 && dd < u.deg()) {
                break g;
            }
        };
        stack.push(u.exact_div(&g));
        stack.push(g);
    }
    out
}

fn random_poly(rng: &mut ChaCha8Rng, p: u64, deg_below: usize) -> FpPoly {
    loop {
        let coeffs: Vec<u64> = (0..deg_below).map(|_| uniform_below(rng, p)).collect();
        let f = FpPoly::from_raw(p, coeffs);
        if f.degree().is_some_and(|d| d >= 1) {
            return f;
        }
    }
}

/// `r + r^2 + r^4 + ... + r^(2^(d-1)) mod u`, the GF(2) splitting map.
fn trace_map(r: &FpPoly, d: usize, u: &FpPoly) -> FpPoly {
    let mut acc = r.rem(u);
    let mut power = acc.clone();
    for _ in 1..d {
        power = power.mul(&power).rem(u);
        acc = acc.add(&power);
    }
    acc
}

/// Degree multiset (degree, count) of the irreducible factors of the
/// squarefree reduction `f mod p`, or `None` when the reduction is zero or
/// not squarefree. Only distinct-degree factorization is needed, so the
/// result is deterministic.
pub fn degree_multiset_mod_p(f: &IntPoly, p: u64) -> Result<Option<Vec<(usize, usize)>>, FpError> {
    let reduced = FpPoly::reduce(f, p)?;
    if reduced.is_zero() || reduced.degree() != f.degree() {
        return Ok(None);
    }
    let monic = reduced.make_monic();
    if monic.deg() == 0 {
        return Ok(Some(Vec::new()));
    }
    let deriv = monic.derivative();
    if deriv.is_zero() || monic.gcd(&deriv).deg() > 0 {
        return Ok(None);
    }
    let mut out = Vec::new();
    for (g, d) in distinct_degree_split(&monic) {
        out.push((d, g.deg() / d));
    }
    out.sort_unstable();
    Ok(Some(out))
}

/// Result of the two finite-field gcd claims at `p = 2j + 3`:
/// with `Z = q^(p-1) - 1` and `W = q^(p+1) - 1` formed mod `Q_j` by modular
/// exponentiation,
/// `gcd(Z, Q_j) | q^4 - 1`, `gcd(W, Q_j) | q^6 + q^5 + q^4 - q^2 - q - 1`,
/// and the corresponding statements for `P_j` with bounds `q^4 - 1` and
/// `(q^4 - 1)(q^3 - 1)`.
#[derive(Debug, Clone)]
pub struct GcdClaims {
    pub j: usize,
    pub p: u64,
    pub gcd_low_q: FpPoly,
    pub gcd_high_q: FpPoly,
    pub low_divides_q_bound: bool,
    pub high_divides_q_bound: bool,
    pub low_divides_p_bound: bool,
    pub high_divides_p_bound: bool,
}

impl GcdClaims {
    pub fn all_hold(&self) -> bool {
        self.low_divides_q_bound
            && self.high_divides_q_bound
            && self.low_divides_p_bound
            && self.high_divides_p_bound
    }
}

pub fn gcd_claims(j: usize) -> Result<GcdClaims, FpError> {
    let p = 2 * (j as u64) + 3;
    if !is_prime_u64(p) {
        return Err(FpError::NotApplicable(format!("2j + 3 = {p} is composite")));
    }
    let record = family::FamilyRecord::build(j)
        .map_err(|e| FpError::NotApplicable(format!("family build failed: {e}")))?;
    let big_q = FpPoly::reduce(&record.big_q, p)?;
    let big_p = FpPoly::reduce(&record.big_p, p)?;
    let x = FpPoly::x(p);
    let one = FpPoly::one(p);

    let z_low = x.pow_mod_u64_exp(p - 1, &big_q).sub(&one);
    let z_high = x.pow_mod_u64_exp(p + 1, &big_q).sub(&one);
    let gcd_low_q = big_q.gcd(&z_low);
    let gcd_high_q = big_q.gcd(&z_high);

    let bound_low = FpPoly::new(p, vec![p - 1, 0, 0, 0, 1])?; // q^4 - 1
    let bound_high = FpPoly::new(p, vec![p - 1, p - 1, p - 1, 0, 1, 1, 1])?; // q^6+q^5+q^4-q^2-q-1
    let low_divides_q_bound = bound_low.rem(&gcd_low_q).is_zero();
    let high_divides_q_bound = bound_high.rem(&gcd_high_q).is_zero();

    let zp_low = x.pow_mod_u64_exp(p - 1, &big_p).sub(&one);
    let zp_high = x.pow_mod_u64_exp(p + 1, &big_p).sub(&one);
    let gcd_low_p = big_p.gcd(&zp_low);
    let gcd_high_p = big_p.gcd(&zp_high);
    // (q^4 - 1)(q^3 - 1) = q^7 - q^4 - q^3 + 1
    let bound_high_p = FpPoly::new(p, vec![1, 0, 0, p - 1, p - 1, 0, 0, 1])?;
    let low_divides_p_bound = bound_low.rem(&gcd_low_p).is_zero();
    let high_divides_p_bound = bound_high_p.rem(&gcd_high_p).is_zero();

    Ok(GcdClaims {
        j,
        p,
        gcd_low_q,
        gcd_high_q,
        low_divides_q_bound,
        high_divides_q_bound,
        low_divides_p_bound,
        high_divides_p_bound,
    })
}

/// Brute-force verification, over the field with `p^2` elements, that
/// `a + a^-1` lies in the base field exactly when `a^(p-1) = 1` or
/// `a^(p+1) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FermatScan {
    pub p: u64,
    /// Number of units of the quadratic extension, `p^2 - 1`.
    pub units: u64,
    /// How many units have `a + a^-1` in the base field.
    pub trace_in_base_field: u64,
    pub equivalence_holds: bool,
}

pub fn fermat_scan(p: u64) -> Result<FermatScan, FpError> {
    if p == 2 || p > 100 {
        return Err(FpError::NotApplicable(format!(
            "scan expects an odd prime at brute-force scale, got {p}"
        )));
    }
    check_modulus(p)?;
    // Quadratic extension as F_p[t]/(t^2 - c) for a non-residue c.
    let c = (2..p)
        .find(|&c| pow_mod_u64(c, (p - 1) / 2, p) == p - 1)
        .expect("odd prime has a quadratic non-residue");

    let mul2 = |a: (u64, u64), b: (u64, u64)| -> (u64, u64) {
        (
            add_mod(mul_mod(a.0, b.0, p), mul_mod(c, mul_mod(a.1, b.1, p), p), p),
            add_mod(mul_mod(a.0, b.1, p), mul_mod(a.1, b.0, p), p),
        )
    };
    let pow2 = |mut base: (u64, u64), mut e: u64| -> (u64, u64) {
        let mut acc = (1u64, 0u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul2(acc, base);
            }
            base = mul2(base, base);
            e >>= 1;
        }
        acc
    };

    let mut trace_in_base_field = 0u64;
    let mut equivalence_holds = true;
    for a0 in 0..p {
        for a1 in 0..p {
            if a0 == 0 && a1 == 0 {
                continue;
            }
            let alpha = (a0, a1);
            // alpha^-1 = conj(alpha) / norm(alpha), norm = a0^2 - c a1^2
            let norm = sub_mod(mul_mod(a0, a0, p), mul_mod(c, mul_mod(a1, a1, p), p), p);
            let inv_norm = inv_mod(norm, p);
            let alpha_inv = (
                mul_mod(a0, inv_norm, p),
                mul_mod(sub_mod(0, a1, p), inv_norm, p),
            );
            let sum_t = add_mod(alpha.1, alpha_inv.1, p);
            let lhs = sum_t == 0;
            let rhs = pow2(alpha, p - 1) == (1, 0) || pow2(alpha, p + 1) == (1, 0);
            if lhs {
                trace_in_base_field += 1;
            }
            if lhs != rhs {
                equivalence_holds = false;
            }
        }
    }
    Ok(FermatScan {
        p,
        units: p * p - 1,
        trace_in_base_field,
        equivalence_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64s(coeffs)
    }

    #[test]
    fn primality_spot_checks() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(3));
        assert!(is_prime_u64(7));
        assert!(is_prime_u64(2_147_483_647));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(9));
        assert!(!is_prime_u64(561)); // Carmichael
        assert!(!is_prime_u64(6_700_417 * 3));
    }

    #[test]
    fn constructor_rejects_composite_modulus() {
        assert_eq!(
            FpPoly::new(15, vec![1, 2]).unwrap_err(),
            FpError::NotPrime(15)
        );
    }

    #[test]
    fn divrem_examples() {
        // P_2 mod (q^2 + q + 1) over F_7 leaves remainder 1
        let p2 = crate::family::build_big_p(2).unwrap();
        let p2_mod7 = FpPoly::reduce(&p2, 7).unwrap();
        let phi3 = FpPoly::new(7, vec![1, 1, 1]).unwrap();
        let (_, r) = p2_mod7.divrem(&phi3);
        assert_eq!(r, FpPoly::one(7));

        // (q^4 - 1) by (q^2 + 1) over F_5: remainder 0
        let f = FpPoly::new(5, vec![4, 0, 0, 0, 1]).unwrap();
        let g = FpPoly::new(5, vec![1, 0, 1]).unwrap();
        assert!(f.rem(&g).is_zero());

        // Q_0 by (q - 1) over F_3: remainder 0
        let q0 = crate::family::build_big_q(0).unwrap();
        let q0_mod3 = FpPoly::reduce(&q0, 3).unwrap();
        let lin = FpPoly::new(3, vec![2, 1]).unwrap();
        assert!(q0_mod3.rem(&lin).is_zero());
    }

    #[test]
    fn powmod_examples() {
        // q^6 = 1 mod (q^2 + q + 1) over F_7
        let phi3 = FpPoly::new(7, vec![1, 1, 1]).unwrap();
        assert_eq!(FpPoly::x(7).pow_mod_u64_exp(6, &phi3), FpPoly::one(7));
        // q^4 = 1 mod (q^2 + 1) over F_5
        let m = FpPoly::new(5, vec![1, 0, 1]).unwrap();
        assert_eq!(FpPoly::x(5).pow_mod_u64_exp(4, &m), FpPoly::one(5));
        // q^1 stays q
        let f = FpPoly::new(11, vec![3, 1, 4, 1]).unwrap();
        assert_eq!(FpPoly::x(11).pow_mod_u64_exp(1, &f), FpPoly::x(11));
    }

    #[test]
    fn factor_cubic_by_root_search() {
        // x^3 - 2x^2 - 3x + 5 = x(x+1)(x+2) mod 5
        let ms = factor_mod_p(&ip(&[5, -3, -2, 1]), 5, 1).unwrap();
        assert_eq!(ms.factors().len(), 3);
        assert!(ms.factors().iter().all(|(f, m)| f.deg() == 1 && *m == 1));
        assert_eq!(
            ms.product(),
            FpPoly::reduce(&ip(&[5, -3, -2, 1]), 5).unwrap()
        );
    }

    #[test]
    fn factor_m2_mod_7() {
        // m_2 = x^6 - x^5 - 7x^4 + 4x^3 + 14x^2 - 3x - 7
        let m2 = ip(&[-7, -3, 14, 4, -7, -1, 1]);
        let ms = factor_mod_p(&m2, 7, 42).unwrap();
        let degs: Vec<(usize, usize)> = ms.factors().iter().map(|(f, m)| (f.deg(), *m)).collect();
        assert_eq!(degs, vec![(1, 1), (1, 1), (4, 1)]);
        // {x, x - 5, irreducible quartic}
        assert!(ms.factors().iter().any(|(f, _)| f.coeffs() == [0, 1]));
        assert!(ms.factors().iter().any(|(f, _)| f.coeffs() == [2, 1]));
    }

    #[test]
    fn factor_frobenius_square() {
        // q^2 + 1 = (q + 1)^2 mod 2
        let ms = factor_mod_p(&ip(&[1, 0, 1]), 2, 0).unwrap();
        assert_eq!(ms.factors().len(), 1);
        assert_eq!(ms.factors()[0].0.coeffs(), [1, 1]);
        assert_eq!(ms.factors()[0].1, 2);
    }

    #[test]
    fn factorization_is_seed_independent() {
        let f = ip(&[3, 0, -11, 1, 5, 0, 1, 2, 1]);
        let a = factor_mod_p(&f, 13, 1).unwrap();
        let b = factor_mod_p(&f, 13, 999_983).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_mod_p_detected() {
        let f = ip(&[7, 14, 21]);
        assert_eq!(factor_mod_p(&f, 7, 0).unwrap_err(), FpError::ZeroModP);
    }

    #[test]
    fn degree_multiset_matches_factorization() {
        let m2 = ip(&[-7, -3, 14, 4, -7, -1, 1]);
        let dm = degree_multiset_mod_p(&m2, 7).unwrap().unwrap();
        assert_eq!(dm, vec![(1, 2), (4, 1)]);
        // not squarefree mod 2: (q+1)^2
        assert_eq!(degree_multiset_mod_p(&ip(&[1, 0, 1]), 2).unwrap(), None);
    }

    #[test]
    fn gcd_claims_small_indices() {
        for j in [1usize, 2, 4, 5] {
            let claims = gcd_claims(j).unwrap();
            assert!(claims.all_hold(), "claims fail at j = {j}: {claims:?}");
        }
        // 2j + 3 composite at j = 3
        assert!(matches!(gcd_claims(3), Err(FpError::NotApplicable(_))));
    }

    #[test]
    fn fermat_scan_small_primes() {
        let s5 = fermat_scan(5).unwrap();
        assert!(s5.equivalence_holds);
        assert_eq!(s5.trace_in_base_field, 8);
        let s3 = fermat_scan(3).unwrap();
        assert!(s3.equivalence_holds);
        assert_eq!(s3.units, 8);
    }
}
