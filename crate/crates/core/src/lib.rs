//! Exact-arithmetic kernel for certifying that the Perron-Frobenius indices
//! of a recursive polynomial family are not cyclotomic integers.
//!
//! The crate builds the family `q_j, p_j, P_j, Q_j` together with the minimal
//! polynomials `m_j, R_j`, verifies the defining identities exactly, extracts
//! cyclotomic factors with a complete divisibility sieve, and searches prime
//! fields for factorization patterns that are impossible for a Galois
//! extension. Everything is exact: big integers, big rationals, Sturm
//! sequences, and finite-field factorization; no floating point anywhere.
//!
//! The crate is `no_std` (with `alloc`); all IO, serialization, and the CLI
//! live in the companion `cyclocert-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod cyclo;
pub mod family;
pub mod fp;
pub mod obstruction;
pub mod poly;
pub mod roots;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use cyclo::{
    certify_irreducible, cyclotomic_poly, is_cyclotomic_product, totient, unity_root_indices,
    CycloPart, CycloSieve, IrreducibilityCertificate,
};
pub use family::{
    build_big_p, build_big_q, build_p, build_q, check_special_values, minimal_polys, pf_index,
    FamilyError, FamilyRecord, PfBracket, SpecialValues,
};
pub use fp::{
    factor_mod_p, fermat_scan, gcd_claims, is_prime_u64, FactorMultiset, FermatScan, FpError,
    FpPoly, GcdClaims,
};
pub use obstruction::{
    find_certificate, galois_feasible, pattern_of, verdict, Certificate, CertificateRoute,
    FactorPattern, Verdict,
};
pub use poly::{IntPoly, NotDivisible};
pub use roots::{
    cauchy_bound, isolate_largest_root, real_roots_with_multiplicity, sturm_count, RatInterval,
    RootError, RootRange, SturmChain,
};
