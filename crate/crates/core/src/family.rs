//! The recursive polynomial family and its defining identities.
//!
//! Index convention: the module index `j >= 0` is the polynomial subscript
//! (`q_j`, `p_j`, `P_j`, `Q_j`, `m_j`, `R_j`). Several classical statements
//! about the family are phrased with `k = j + 1`; every operation here
//! documents the shift where it matters.
//!
//! Degrees: `deg q_j = deg p_j = 2j + 2`, `deg P_j = 4j + 4`,
//! `deg Q_j = 4j + 8`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::IntPoly;
use crate::roots::{isolate_largest_root, RatInterval};

/// Failure of one of the family's defining identities. These signal
/// implementation bugs or fixture drift, never expected outcomes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyError {
    /// Recursion and closed-form sum for `P_j` disagree.
    ClosedFormMismatch { j: usize },
    /// An expected exact divisibility failed (e.g. `(x+1) | p_j` when
    /// `j = 1 mod 3`).
    NotDivisible { j: usize, what: &'static str },
    /// Any other cross-check failed.
    IdentityFailure { j: usize, what: &'static str },
}

impl fmt::Display for FamilyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyError::ClosedFormMismatch { j } => {
                write!(f, "P_{j}: recursion and closed-form sum disagree")
            }
            FamilyError::NotDivisible { j, what } => {
                write!(f, "index {j}: expected divisibility failed: {what}")
            }
            FamilyError::IdentityFailure { j, what } => {
                write!(f, "index {j}: identity failed: {what}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for FamilyError {}

/// `q_j`, by the recursion
/// `q_j = (x^2 - 4x + 2) q_(j-1) - q_(j-2)` with seeds
/// `q_0 = x^2 - 5x + 3` and `q_1 = (x^3 - 8x^2 + 17x - 5)(x - 1)` expanded.
pub fn build_q(j: usize) -> IntPoly {
    let q0 = IntPoly::from_i64s(&[3, -5, 1]);
    let q1 = IntPoly::from_i64s(&[5, -22, 25, -9, 1]);
    recurse(j, q0, q1, &IntPoly::from_i64s(&[2, -4, 1]))
}

/// `p_j`, by its own recursion
/// `p_j = (x^2 - 2) p_(j-1) - p_(j-2)` with seeds
/// `p_0 = x^2 - x - 3` and `p_1 = (x^3 - 2x^2 - 3x + 5)(x + 1)` expanded.
/// Always equals `build_q(j).shift(2)`.
pub fn build_p(j: usize) -> IntPoly {
    let p0 = IntPoly::from_i64s(&[-3, -1, 1]);
    let p1 = IntPoly::from_i64s(&[5, 2, -5, -1, 1]);
    recurse(j, p0, p1, &IntPoly::from_i64s(&[-2, 0, 1]))
}

fn recurse(j: usize, f0: IntPoly, f1: IntPoly, step: &IntPoly) -> IntPoly {
    match j {
        0 => f0,
        1 => f1,
        _ => {
            let mut prev = f0;
            let mut cur = f1;
            for _ in 2..=j {
                let next = &step.mul(&cur) - &prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// `P_j` of degree `4j + 4`, computed both by the recursion
/// `P_j = (q^4 + 1) P_(j-1) - q^4 P_(j-2)` and by the closed-form sum
/// `1 + sum_(l=1..j+1) (q^4 - q^3 - q^2 - q) q^(4l-4)`; the two must agree.
pub fn build_big_p(j: usize) -> Result<IntPoly, FamilyError> {
    let by_recursion = big_p_recursion(j);
    let by_sum = big_p_closed_form(j);
    if by_recursion != by_sum {
        return Err(FamilyError::ClosedFormMismatch { j });
    }
    Ok(by_recursion)
}

fn big_p_recursion(j: usize) -> IntPoly {
    let p0 = IntPoly::from_i64s(&[1, -1, -1, -1, 1]);
    let p1 = IntPoly::from_i64s(&[1, -1, -1, -1, 1, -1, -1, -1, 1]);
    match j {
        0 => p0,
        1 => p1,
        _ => {
            let q4_plus_1 = IntPoly::from_i64s(&[1, 0, 0, 0, 1]);
            let mut prev = p0;
            let mut cur = p1;
            for _ in 2..=j {
                let next = &q4_plus_1.mul(&cur) - &prev.mul_xpow(4);
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

fn big_p_closed_form(j: usize) -> IntPoly {
    let mut coeffs = alloc::vec![BigInt::zero(); 4 * j + 5];
    coeffs[0] = BigInt::one();
    for l in 1..=(j + 1) {
        let base = 4 * l - 4;
        coeffs[base + 1] -= 1;
        coeffs[base + 2] -= 1;
        coeffs[base + 3] -= 1;
        coeffs[base + 4] += 1;
    }
    IntPoly::from_coeffs(coeffs)
}

/// `Q_j = P_j (q^4 - 1)` of degree `4j + 8`; checked against the eight-term
/// expansion `q^(4j+8) - q^(4j+7) - q^(4j+6) - q^(4j+5) + q^3 + q^2 + q - 1`.
pub fn build_big_q(j: usize) -> Result<IntPoly, FamilyError> {
    let big_p = build_big_p(j)?;
    let product = big_p.mul(&IntPoly::from_i64s(&[-1, 0, 0, 0, 1]));
    let mut coeffs = alloc::vec![BigInt::zero(); 4 * j + 9];
    coeffs[0] = BigInt::from(-1);
    coeffs[1] = BigInt::one();
    coeffs[2] = BigInt::one();
    coeffs[3] = BigInt::one();
    coeffs[4 * j + 5] = BigInt::from(-1);
    coeffs[4 * j + 6] = BigInt::from(-1);
    coeffs[4 * j + 7] = BigInt::from(-1);
    coeffs[4 * j + 8] = BigInt::one();
    if product != IntPoly::from_coeffs(coeffs) {
        return Err(FamilyError::IdentityFailure {
            j,
            what: "Q_j product differs from its displayed expansion",
        });
    }
    Ok(product)
}

/// Minimal polynomials `(m_j, R_j)`: when `j = 1 mod 3`, `m_j = p_j/(x+1)`
/// and `R_j = P_j/(q^2+q+1)`; otherwise `m_j = p_j` and `R_j = P_j`.
/// Always `R_j = symmetrize(m_j)`.
pub fn minimal_polys(j: usize) -> Result<(IntPoly, IntPoly), FamilyError> {
    let p = build_p(j);
    let big_p = build_big_p(j)?;
    minimal_polys_from(j, &p, &big_p)
}

fn minimal_polys_from(
    j: usize,
    p: &IntPoly,
    big_p: &IntPoly,
) -> Result<(IntPoly, IntPoly), FamilyError> {
    let (m, r) = if j % 3 == 1 {
        let m =
            p.exact_div(&IntPoly::from_i64s(&[1, 1]))
                .map_err(|_| FamilyError::NotDivisible {
                    j,
                    what: "(x + 1) does not divide p_j",
                })?;
        let r = big_p
            .exact_div(&IntPoly::from_i64s(&[1, 1, 1]))
            .map_err(|_| FamilyError::NotDivisible {
                j,
                what: "(q^2 + q + 1) does not divide P_j",
            })?;
        (m, r)
    } else {
        (p.clone(), big_p.clone())
    };
    if r != m.symmetrize() {
        return Err(FamilyError::IdentityFailure {
            j,
            what: "R_j differs from symmetrize(m_j)",
        });
    }
    Ok((m, r))
}

/// Exact special-value identities (`k = j + 1` throughout):
/// `p_j(0) = (-1)^k (2k+1)`, `p_j'(0) = (-1)^k k`, `P_j(0) = 1`,
/// `P_j(1) = -(2k-1)`, and `P_j''(-1) = 2(2k+1)(8k-1)k/3 + 2k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialValues {
    pub j: usize,
    pub p_at_zero: bool,
    pub p_prime_at_zero: bool,
    pub big_p_at_zero: bool,
    pub big_p_at_one: bool,
    pub big_p_second_deriv_at_minus_one: bool,
}

impl SpecialValues {
    pub fn all_hold(&self) -> bool {
        self.p_at_zero
            && self.p_prime_at_zero
            && self.big_p_at_zero
            && self.big_p_at_one
            && self.big_p_second_deriv_at_minus_one
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.p_at_zero {
            out.push("p_j(0)");
        }
        if !self.p_prime_at_zero {
            out.push("p_j'(0)");
        }
        if !self.big_p_at_zero {
            out.push("P_j(0)");
        }
        if !self.big_p_at_one {
            out.push("P_j(1)");
        }
        if !self.big_p_second_deriv_at_minus_one {
            out.push("P_j''(-1)");
        }
        out
    }
}

pub fn check_special_values(j: usize) -> Result<SpecialValues, FamilyError> {
    let p = build_p(j);
    let big_p = build_big_p(j)?;
    Ok(special_values_from(j, &p, &big_p))
}

fn special_values_from(j: usize, p: &IntPoly, big_p: &IntPoly) -> SpecialValues {
    let k = BigInt::from(j as u64 + 1);
    let sign = if (j + 1).is_multiple_of(2) {
        BigInt::one()
    } else {
        BigInt::from(-1)
    };
    let zero = BigRational::zero();
    let one = BigRational::one();
    let minus_one = -BigRational::one();

    let p_at_zero = p.eval_deriv(0, &zero) == BigRational::from_integer(&sign * (2u8 * &k + 1u8));
    let p_prime_at_zero = p.eval_deriv(1, &zero) == BigRational::from_integer(&sign * &k);
    let big_p_at_zero = big_p.eval_deriv(0, &zero) == one;
    let big_p_at_one = big_p.eval_deriv(0, &one) == BigRational::from_integer(-(2u8 * &k - 1u8));
    // 2(2k+1)(8k-1)k/3 + 2k, exact over the integers
    let expected = (2u8 * (2u8 * &k + 1u8) * (8u8 * &k - 1u8) * &k) / 3u8 + 2u8 * &k;
    let big_p_second_deriv_at_minus_one =
        big_p.eval_deriv(2, &minus_one) == BigRational::from_integer(expected);

    SpecialValues {
        j,
        p_at_zero,
        p_prime_at_zero,
        big_p_at_zero,
        big_p_at_one,
        big_p_second_deriv_at_minus_one,
    }
}

/// One family member with every defining identity verified at construction.
#[derive(Debug, Clone)]
pub struct FamilyRecord {
    pub j: usize,
    /// `q_j`, the base polynomial in the x-variable.
    pub q: IntPoly,
    /// `p_j = q_j(x + 2)`.
    pub p: IntPoly,
    /// `P_j = symmetrize(p_j)`, self-reciprocal of degree `4j + 4`.
    pub big_p: IntPoly,
    /// `Q_j = P_j (q^4 - 1)`.
    pub big_q: IntPoly,
    /// Minimal polynomial of `e_j = d_j - 2` (x-variable).
    pub m: IntPoly,
    /// q-variable counterpart: `R_j = symmetrize(m_j)`.
    pub r: IntPoly,
    /// True exactly when `j = 1 mod 3`, i.e. `p_j = (x+1) m_j` and
    /// `P_j = (q^2+q+1) R_j`.
    pub has_phi3: bool,
    /// Bracket of the index `d_j`, filled on demand by [`pf_index`].
    pub d_bracket: Option<RatInterval>,
}

impl FamilyRecord {
    /// Builds index `j` and runs the full identity suite; every downstream
    /// certificate silently depends on these identities.
    pub fn build(j: usize) -> Result<Self, FamilyError> {
        let q = build_q(j);
        let p = build_p(j);
        if p != q.shift(&BigInt::from(2)) {
            return Err(FamilyError::IdentityFailure {
                j,
                what: "p_j differs from q_j(x + 2)",
            });
        }
        let big_p = build_big_p(j)?;
        if big_p != p.symmetrize() {
            return Err(FamilyError::IdentityFailure {
                j,
                what: "P_j differs from symmetrize(p_j)",
            });
        }
        if !big_p.is_self_reciprocal() {
            return Err(FamilyError::IdentityFailure {
                j,
                what: "P_j is not self-reciprocal",
            });
        }
        if !big_p.coeff(0).is_one() {
            return Err(FamilyError::IdentityFailure {
                j,
                what: "P_j(0) != 1",
            });
        }
        let big_q = build_big_q(j)?;
        let (m, r) = minimal_polys_from(j, &p, &big_p)?;
        let specials = special_values_from(j, &p, &big_p);
        if !specials.all_hold() {
            return Err(FamilyError::IdentityFailure {
                j,
                what: "a special-value identity failed",
            });
        }
        Ok(FamilyRecord {
            j,
            q,
            p,
            big_p,
            big_q,
            m,
            r,
            has_phi3: j % 3 == 1,
            d_bracket: None,
        })
    }

    /// `2j + 3`, the odd integer whose prime divisors drive the structured
    /// certificate route.
    pub fn two_j_plus_three(&self) -> u64 {
        2 * self.j as u64 + 3
    }

    /// Computes the index bracket at the given width, stores it on the
    /// record, and returns the bracket together with its cross-checks.
    pub fn attach_pf_bracket(&mut self, width: &BigRational) -> Result<PfBracket, FamilyError> {
        let pf = pf_index_for(self, width)?;
        self.d_bracket = Some(pf.bracket.clone());
        Ok(pf)
    }

    /// Short digest-friendly fingerprint of the fixtures.
    pub fn fingerprint_lines(&self) -> Vec<String> {
        let dump = |name: &str, f: &IntPoly| {
            let mut s = format!("{name}:");
            for c in f.coeffs() {
                s.push(' ');
                s.push_str(&c.to_string());
            }
            s
        };
        alloc::vec![
            format!("j: {}", self.j),
            dump("q", &self.q),
            dump("p", &self.p),
            dump("P", &self.big_p),
            dump("Q", &self.big_q),
            dump("m", &self.m),
            dump("R", &self.r),
        ]
    }
}

/// Perron-Frobenius index bracket together with its two cross-checks.
#[derive(Debug, Clone)]
pub struct PfBracket {
    pub j: usize,
    /// Bracket of `d_j`, the largest real root of `q_j`, of width at most
    /// the requested one.
    pub bracket: RatInterval,
    /// The bracket of `a' + 1/a' + 2` (with `a'` the largest root of `P_j`)
    /// overlaps the bracket of `d_j`.
    pub alpha_cross_check: bool,
    /// `m_j` changes sign on the bracket of `e_j = d_j - 2`.
    pub m_sign_change: bool,
}

impl PfBracket {
    pub fn consistent(&self) -> bool {
        self.alpha_cross_check && self.m_sign_change
    }
}

/// Brackets `d_j` to the requested width and runs both cross-checks.
pub fn pf_index(j: usize, width: &BigRational) -> Result<PfBracket, FamilyError> {
    let record = FamilyRecord::build(j)?;
    pf_index_for(&record, width)
}

/// Same as [`pf_index`] but reuses an already-built record.
pub fn pf_index_for(record: &FamilyRecord, width: &BigRational) -> Result<PfBracket, FamilyError> {
    let j = record.j;
    let bracket =
        isolate_largest_root(&record.q, width).map_err(|_| FamilyError::IdentityFailure {
            j,
            what: "q_j has no real root",
        })?;

    // alpha' > 1 is the largest real root of P_j; x + 1/x + 2 is increasing
    // there, so the image of its bracket is again an interval.
    let alpha =
        isolate_largest_root(&record.big_p, width).map_err(|_| FamilyError::IdentityFailure {
            j,
            what: "P_j has no real root",
        })?;
    let alpha_cross_check = if alpha.lo() > &BigRational::one() {
        let two = BigRational::from_integer(BigInt::from(2));
        let mapped_lo = alpha.lo() + alpha.hi().recip() + &two;
        let mapped_hi = alpha.hi() + alpha.lo().recip() + &two;
        RatInterval::new(mapped_lo, mapped_hi).overlaps(&bracket)
    } else {
        false
    };

    let two = BigRational::from_integer(BigInt::from(2));
    let e_lo = bracket.lo() - &two;
    let e_hi = bracket.hi() - &two;
    let s_lo = record.m.sign_at(e_lo.numer(), e_lo.denom());
    let s_hi = record.m.sign_at(e_hi.numer(), e_hi.denom());
    let m_sign_change = s_lo * s_hi <= 0;

    Ok(PfBracket {
        j,
        bracket,
        alpha_cross_check,
        m_sign_change,
    })
}
