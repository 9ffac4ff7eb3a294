//! Cyclotomic machinery: totients, `Phi_n` generation, complete extraction
//! of cyclotomic factors, and the irreducibility certificate for `R_j`.
//!
//! Root-of-unity detection is decided exactly: a monic integer polynomial
//! has a root of unity of order `n` among its roots exactly when `Phi_n`
//! divides it, and `Phi_n | f` forces `totient(n) <= deg f`, so scanning
//! every `n <= 2 (deg f)^2` (using `totient(n) >= sqrt(n/2)`) is a complete
//! sieve.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::family::FamilyRecord;
use crate::fp::{degree_multiset_mod_p, is_prime_u64, pow_mod_u64};
use crate::poly::IntPoly;
use crate::roots::{real_roots_with_multiplicity, RootRange, SturmChain};

/// Euler totient by the product formula over the prime factorization.
pub fn totient(n: u64) -> u64 {
    assert!(n >= 1);
    let mut phi = n;
    for (p, _) in factorize(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Substitution `f(x^k)`.
fn inflate(f: &IntPoly, k: u64) -> IntPoly {
    if k == 1 || f.is_zero() {
        return f.clone();
    }
    let k = k as usize;
    let mut coeffs = vec![BigInt::zero(); f.deg() * k + 1];
    for (i, c) in f.coeffs().iter().enumerate() {
        coeffs[i * k] = c.clone();
    }
    IntPoly::from_coeffs(coeffs)
}

/// The n-th cyclotomic polynomial, built prime by prime:
/// `Phi_(m l)(x) = Phi_m(x^l) / Phi_m(x)` for a new prime `l`, then one
/// substitution `x -> x^(n/rad n)`. Degree is `totient(n)`.
pub fn cyclotomic_poly(n: u64) -> IntPoly {
    assert!(n >= 1);
    let factors = factorize(n);
    let mut f = IntPoly::from_i64s(&[-1, 1]);
    let mut rad = 1u64;
    for &(l, _) in &factors {
        rad *= l;
        f = inflate(&f, l)
            .exact_div(&f)
            .expect("cyclotomic tower division is exact");
    }
    inflate(&f, n / rad)
}

/// Complete cyclotomic part of a polynomial: `input = cofactor *
/// prod Phi_n^mult` with a cofactor free of cyclotomic factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloPart {
    /// `(order, multiplicity)` pairs, ascending by order.
    pub entries: Vec<(u64, u32)>,
    /// What is left after dividing all cyclotomic factors out.
    pub cofactor: IntPoly,
}

impl CycloPart {
    /// Multiplies the extracted factors back onto the cofactor.
    pub fn reconstruct(&self) -> IntPoly {
        let mut acc = self.cofactor.clone();
        for &(n, mult) in &self.entries {
            let phi = cyclotomic_poly(n);
            for _ in 0..mult {
                acc = acc.mul(&phi);
            }
        }
        acc
    }

    pub fn multiplicity_of(&self, n: u64) -> u32 {
        self.entries
            .iter()
            .find(|&&(m, _)| m == n)
            .map_or(0, |&(_, c)| c)
    }
}

/// Reusable sieve state: totient tables and, per candidate order, a prime
/// `p = 1 mod n` with an element of exact order `n` used as a cheap sound
/// divisibility filter (`Phi_n | f` over the integers forces `f(w) = 0 mod
/// p` for `w` of order `n`). Filter hits are confirmed by exact division.
pub struct CycloSieve {
    /// `phi[i] = totient(i)`; index 0 unused.
    phi: Vec<u32>,
    /// smallest prime factor table, same range
    spf: Vec<u32>,
    /// order -> (prime, element of that order mod the prime)
    filters: BTreeMap<u64, (u64, u64)>,
}

impl Default for CycloSieve {
    fn default() -> Self {
        Self::new()
    }
}

impl CycloSieve {
    pub fn new() -> Self {
        CycloSieve {
            phi: vec![0, 1],
            spf: vec![0, 1],
            filters: BTreeMap::new(),
        }
    }

    fn ensure(&mut self, limit: usize) {
        if self.phi.len() > limit {
            return;
        }
        let n = limit + 1;
        let mut spf = vec![0u32; n];
        let mut phi = vec![0u32; n];
        if n > 1 {
            spf[1] = 1;
            phi[1] = 1;
        }
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            for &p in &primes {
                let ip = i * p as usize;
                if p > spf[i] || ip >= n {
                    break;
                }
                spf[ip] = p;
            }
        }
        for i in 2..n {
            let p = spf[i] as usize;
            let m = i / p;
            phi[i] = if m.is_multiple_of(p) {
                phi[m] * p as u32
            } else {
                phi[m] * (p as u32 - 1)
            };
        }
        self.spf = spf;
        self.phi = phi;
    }

    /// Every order `n` with `totient(n) <= max_phi`, ascending. The scan
    /// range `n <= 2 max_phi^2` is complete because `totient(n) >=
    /// sqrt(n/2)`.
    pub fn candidate_orders(&mut self, max_phi: usize) -> Vec<u64> {
        let limit = 2 * max_phi * max_phi;
        self.ensure(limit.max(2));
        (1..=limit as u64)
            .filter(|&n| self.phi[n as usize] as usize <= max_phi)
            .collect()
    }

    fn filter_pair(&mut self, n: u64) -> (u64, u64) {
        if let Some(&pair) = self.filters.get(&n) {
            return pair;
        }
        let pair = find_order_witness(n);
        self.filters.insert(n, pair);
        pair
    }

    /// Complete cyclotomic-part extraction; see [`unity_root_indices`].
    pub fn unity_root_indices(&mut self, f: &IntPoly) -> CycloPart {
        assert!(!f.is_zero(), "cyclotomic sieve needs a nonzero input");
        let deg = f.deg();
        let mut cofactor = f.clone();
        let mut entries: Vec<(u64, u32)> = Vec::new();
        if deg == 0 {
            return CycloPart { entries, cofactor };
        }
        for n in self.candidate_orders(deg) {
            let phi = self.phi[n as usize] as usize;
            if cofactor.degree().is_none_or(|d| d < phi) {
                continue;
            }
            // Sound cheap rejection before any exact division.
            let passes = match n {
                1 => cofactor.eval_int(&BigInt::one()).is_zero(),
                2 => cofactor.eval_int(&BigInt::from(-1)).is_zero(),
                _ => {
                    let (p, w) = self.filter_pair(n);
                    eval_mod(&cofactor, p, w) == 0
                }
            };
            if !passes {
                continue;
            }
            let phi_n = cyclotomic_poly(n);
            let mut mult = 0u32;
            while let Ok(q) = cofactor.exact_div(&phi_n) {
                cofactor = q;
                mult += 1;
                if cofactor.degree().is_none_or(|d| d < phi) {
                    break;
                }
            }
            if mult > 0 {
                entries.push((n, mult));
            }
        }
        CycloPart { entries, cofactor }
    }
}

/// Smallest prime `p = 1 mod n` together with an element of exact
/// multiplicative order `n` mod `p`.
fn find_order_witness(n: u64) -> (u64, u64) {
    let factors = factorize(n);
    let mut k = 1u64;
    loop {
        let p = k * n + 1;
        if p > 2 && is_prime_u64(p) {
            for a in 2..p {
                let w = pow_mod_u64(a, (p - 1) / n, p);
                if w != 1 && factors.iter().all(|&(l, _)| pow_mod_u64(w, n / l, p) != 1) {
                    return (p, w);
                }
            }
        }
        k += 1;
    }
}

/// `f(w) mod p` with coefficients reduced on the fly.
fn eval_mod(f: &IntPoly, p: u64, w: u64) -> u64 {
    let pb = BigInt::from(p);
    let mut acc: u64 = 0;
    for c in f.coeffs().iter().rev() {
        let r = c.mod_floor(&pb).to_u64().expect("residue fits");
        acc = ((acc as u128 * w as u128 + r as u128) % p as u128) as u64;
    }
    acc
}

/// Finds all cyclotomic factors of `f` with multiplicities, testing
/// `Phi_n | f` for every order with `totient(n) <= deg f`.
pub fn unity_root_indices(f: &IntPoly) -> CycloPart {
    CycloSieve::new().unity_root_indices(f)
}

/// True when a monic polynomial is a product of cyclotomic polynomials,
/// i.e. the sieve cofactor is the constant 1. Cross-checked through the
/// Graeffe fixed point: root squaring maps cyclotomic products to
/// cyclotomic products.
pub fn is_cyclotomic_product(f: &IntPoly) -> bool {
    assert!(f.is_monic(), "cyclotomic-product test expects monic input");
    let part = unity_root_indices(f);
    let result = part.cofactor.is_one();
    if result && f.deg() > 0 {
        let g = f.graeffe();
        debug_assert!(
            g.is_monic() && unity_root_indices(&g).cofactor.is_one(),
            "graeffe iterate of a cyclotomic product left the class"
        );
    }
    result
}

/// A proof-grade sub-check of the irreducibility certificate failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateFailure {
    pub j: usize,
    pub check: String,
}

impl fmt::Display for CertificateFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "irreducibility certificate for index {} failed: {}",
            self.j, self.check
        )
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CertificateFailure {}

/// Certificate that `R_j` is irreducible over the rationals.
///
/// Proof-grade chain: `P_j` is squarefree with constant term 1 and exactly
/// two real roots `a` in (0,1) and `a'` in (1,oo) (none nonpositive); every
/// root of `q_j` is real, so all remaining roots of `P_j` lie on the unit
/// circle; an algebraic integer with all conjugates on the unit circle is a
/// root of unity, so any irreducible factor avoiding `a, a'` is cyclotomic
/// (a factor containing only one of `a, a'` is impossible: the constant
/// terms would multiply to 1 with one of them exceeding 1 in absolute
/// value). The sieve extracts the full cyclotomic part exactly; the
/// cofactor `R_j` therefore cannot factor further.
///
/// Evidence-grade cross-oracle: factorization degree multisets of `R_j`
/// over many unramified primes admit no common proper subset sum.
#[derive(Debug, Clone)]
pub struct IrreducibilityCertificate {
    pub j: usize,
    pub q_all_roots_real: bool,
    pub big_p_squarefree: bool,
    pub roots_in_unit_interval: usize,
    pub roots_above_one: usize,
    pub roots_nonpositive: usize,
    /// Cyclotomic part of `P_j`; `{(3,1)}` exactly when `j = 1 mod 3`,
    /// empty otherwise.
    pub cyclo_entries: Vec<(u64, u32)>,
    pub cofactor_matches_r: bool,
    /// Unramified primes consulted by the degree-pattern oracle.
    pub oracle_primes: Vec<u64>,
    /// Proper factor degrees not excluded by the oracle; empty means the
    /// oracle independently corroborates irreducibility.
    pub surviving_degree_splits: Vec<usize>,
}

impl IrreducibilityCertificate {
    pub fn oracle_corroborates(&self) -> bool {
        self.surviving_degree_splits.is_empty()
    }
}

/// Runs the full certificate chain for index `j`; `Err` carries the first
/// failing proof-grade sub-check. An inconclusive degree-pattern oracle is
/// reported in the certificate, not an error.
pub fn certify_irreducible(j: usize) -> Result<IrreducibilityCertificate, CertificateFailure> {
    certify_irreducible_with(&mut CycloSieve::new(), j)
}

/// Same as [`certify_irreducible`], reusing sieve state across indices.
pub fn certify_irreducible_with(
    sieve: &mut CycloSieve,
    j: usize,
) -> Result<IrreducibilityCertificate, CertificateFailure> {
    let fail = |check: String| CertificateFailure { j, check };
    let record = FamilyRecord::build(j).map_err(|e| fail(format!("family identity suite: {e}")))?;
    certify_irreducible_record(sieve, &record)
}

/// Certificate chain on an already-built family record.
pub fn certify_irreducible_record(
    sieve: &mut CycloSieve,
    record: &FamilyRecord,
) -> Result<IrreducibilityCertificate, CertificateFailure> {
    let j = record.j;
    let fail = |check: String| CertificateFailure { j, check };

    let q_all_roots_real = real_roots_with_multiplicity(&record.q) == record.q.deg();
    if !q_all_roots_real {
        return Err(fail("q_j has a non-real root".into()));
    }

    let big_p_squarefree = record.big_p.is_squarefree();
    if !big_p_squarefree {
        return Err(fail("P_j is not squarefree".into()));
    }
    let zero = num_rational::BigRational::zero();
    let one = num_rational::BigRational::one();
    let chain = SturmChain::new(&record.big_p).expect("P_j verified squarefree");
    let roots_in_unit_interval = chain.count(&RootRange::Open(zero.clone(), one.clone()));
    let roots_above_one = chain.count(&RootRange::Above(one));
    let roots_nonpositive = chain.count(&RootRange::UpTo(zero));
    if roots_in_unit_interval != 1 || roots_above_one != 1 || roots_nonpositive != 0 {
        return Err(fail(format!(
            "real-root structure of P_j is ({roots_in_unit_interval}, {roots_above_one}, {roots_nonpositive}), expected (1, 1, 0)"
        )));
    }

    let part = sieve.unity_root_indices(&record.big_p);
    let expected: Vec<(u64, u32)> = if j % 3 == 1 { vec![(3, 1)] } else { vec![] };
    if part.entries != expected {
        return Err(fail(format!(
            "cyclotomic part of P_j is {:?}, expected {:?}",
            part.entries, expected
        )));
    }
    let cofactor_matches_r = part.cofactor == record.r;
    if !cofactor_matches_r {
        return Err(fail("sieve cofactor differs from R_j".into()));
    }

    let (oracle_primes, surviving_degree_splits) = degree_pattern_oracle(&record.r, 20, 60);

    Ok(IrreducibilityCertificate {
        j,
        q_all_roots_real,
        big_p_squarefree,
        roots_in_unit_interval,
        roots_above_one,
        roots_nonpositive,
        cyclo_entries: part.entries,
        cofactor_matches_r,
        oracle_primes,
        surviving_degree_splits,
    })
}

/// Intersects achievable proper-factor degrees of `f` across factorization
/// degree multisets mod at least `min_primes` unramified primes (more, up
/// to `max_primes`, while candidates survive). A factorization over the
/// rationals of some degree `s` would reduce mod every unramified prime to
/// a sub-multiset summing to `s`, so an empty intersection rules every
/// proper factor out.
pub fn degree_pattern_oracle(
    f: &IntPoly,
    min_primes: usize,
    max_primes: usize,
) -> (Vec<u64>, Vec<usize>) {
    let deg = f.deg();
    let mut surviving = vec![true; deg + 1];
    let mut used = Vec::new();
    let mut p = 2u64;
    while used.len() < max_primes {
        if is_prime_u64(p) {
            if let Ok(Some(dm)) = degree_multiset_mod_p(f, p) {
                used.push(p);
                let sums = subset_sums(&dm, deg);
                for (s, alive) in surviving.iter_mut().enumerate() {
                    *alive = *alive && sums[s];
                }
                let open = (1..deg).any(|s| surviving[s]);
                if used.len() >= min_primes && !open {
                    break;
                }
            }
        }
        p += 1;
    }
    let remaining: Vec<usize> = (1..deg).filter(|&s| surviving[s]).collect();
    (used, remaining)
}

fn subset_sums(multiset: &[(usize, usize)], cap: usize) -> Vec<bool> {
    let mut sums = vec![false; cap + 1];
    sums[0] = true;
    for &(d, count) in multiset {
        for _ in 0..count {
            for s in (0..=cap.saturating_sub(d)).rev() {
                if sums[s] {
                    sums[s + d] = true;
                }
            }
        }
    }
    sums
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{build_big_p, build_big_q};
    use num_traits::Signed;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64s(coeffs)
    }

    #[test]
    fn totient_fixtures() {
        assert_eq!(totient(1), 1);
        assert_eq!(totient(9), 6);
        assert_eq!(totient(12), 4);
        assert_eq!(totient(97), 96);
    }

    #[test]
    fn cyclotomic_fixtures() {
        assert_eq!(cyclotomic_poly(1), p(&[-1, 1]));
        assert_eq!(cyclotomic_poly(3), p(&[1, 1, 1]));
        assert_eq!(cyclotomic_poly(12), p(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_poly(105).deg(), 48);
        for n in 1..=30 {
            assert_eq!(cyclotomic_poly(n).deg() as u64, totient(n), "n = {n}");
        }
    }

    #[test]
    fn sieve_on_first_family_members() {
        // P_1 = Phi_3 * R_1
        let p1 = build_big_p(1).unwrap();
        let part = unity_root_indices(&p1);
        assert_eq!(part.entries, vec![(3, 1)]);
        assert_eq!(part.cofactor, p(&[1, -2, 0, 1, 0, -2, 1]));
        assert_eq!(part.reconstruct(), p1);

        // P_0 has no cyclotomic factor
        let p0 = build_big_p(0).unwrap();
        let part0 = unity_root_indices(&p0);
        assert!(part0.entries.is_empty());
        assert_eq!(part0.cofactor, p0);

        // Q_0 contributes q^4 - 1 = Phi_1 Phi_2 Phi_4
        let q0 = build_big_q(0).unwrap();
        let partq = unity_root_indices(&q0);
        assert_eq!(partq.entries, vec![(1, 1), (2, 1), (4, 1)]);
    }

    #[test]
    fn sieve_sees_multiplicities() {
        let f = p(&[1, 1, 1]).pow(3).mul(&p(&[-1, 1])).mul(&p(&[3, 1, 1]));
        let part = unity_root_indices(&f);
        assert_eq!(part.entries, vec![(1, 1), (3, 3)]);
        assert_eq!(part.cofactor, p(&[3, 1, 1]));
    }

    #[test]
    fn cyclotomic_product_flags() {
        assert!(is_cyclotomic_product(&p(&[-1, 0, 0, 0, 1])));
        assert!(!is_cyclotomic_product(&build_big_p(0).unwrap()));
        let prod = p(&[1, 1, 1]).mul(&p(&[1, 0, 1]));
        assert!(is_cyclotomic_product(&prod));
    }

    #[test]
    fn graeffe_stays_cyclotomic() {
        for n in 1..=24u64 {
            let mut f = cyclotomic_poly(n);
            assert!(is_cyclotomic_product(&f));
            for _ in 0..3 {
                f = f.graeffe();
                if f.leading().is_some_and(Signed::is_negative) {
                    f = -&f;
                }
                assert!(is_cyclotomic_product(&f), "n = {n}");
            }
        }
    }

    #[test]
    fn certify_first_indices() {
        let mut sieve = CycloSieve::new();
        for j in 0..=4 {
            let cert = certify_irreducible_with(&mut sieve, j).unwrap();
            let expect_phi3 = j % 3 == 1;
            assert_eq!(!cert.cyclo_entries.is_empty(), expect_phi3, "j = {j}");
            assert!(cert.oracle_corroborates(), "oracle inconclusive at j = {j}");
            assert!(cert.oracle_primes.len() >= 20);
        }
    }

    #[test]
    fn subset_sum_oracle_on_a_reducible_poly() {
        // (x^2 + 1)(x^2 + 3): degree 2 must survive every prime
        let f = p(&[1, 0, 1]).mul(&p(&[3, 0, 1]));
        let (_, remaining) = degree_pattern_oracle(&f, 10, 20);
        assert!(remaining.contains(&2));
    }
}
