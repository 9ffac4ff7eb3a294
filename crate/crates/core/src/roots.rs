//! Exact real-root counting and isolation via Sturm sequences.
//!
//! The sequences use primitive-part pseudo-remainders to keep coefficient
//! growth subresultant-sized; all sign decisions are exact integer
//! computations at rational points.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::{bigint_sign, IntPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootError {
    /// Sturm counting requires a squarefree input; deflate first.
    NotSquarefree,
    /// Isolation was asked for on a polynomial without real roots.
    NoRealRoot,
}

impl fmt::Display for RootError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootError::NotSquarefree => write!(f, "polynomial has repeated factors"),
            RootError::NoRealRoot => write!(f, "polynomial has no real root"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for RootError {}

/// Exact bracket `[lo, hi]` with `lo <= hi`. When produced by root
/// isolation the target polynomial changes sign or attains zero on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RatInterval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        RatInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn overlaps(&self, other: &RatInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Translates both endpoints by `c`.
    pub fn translate(&self, c: &BigRational) -> RatInterval {
        RatInterval {
            lo: &self.lo + c,
            hi: &self.hi + c,
        }
    }
}

/// Range of the real line over which roots are counted.
#[derive(Debug, Clone)]
pub enum RootRange {
    /// The whole real line.
    All,
    /// Open interval `(lo, hi)`.
    Open(BigRational, BigRational),
    /// `(lo, +inf)`.
    Above(BigRational),
    /// `(-inf, hi]`.
    UpTo(BigRational),
}

/// Sturm sequence of a squarefree polynomial.
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    /// Builds the chain; the input must be squarefree (checked through
    /// `gcd(f, f')`).
    pub fn new(f: &IntPoly) -> Result<Self, RootError> {
        if f.is_zero() || !f.is_squarefree() {
            return Err(RootError::NotSquarefree);
        }
        Ok(SturmChain::new_unchecked(f))
    }

    fn new_unchecked(f: &IntPoly) -> Self {
        let mut chain = vec![f.clone()];
        if f.deg() >= 1 {
            chain.push(f.derivative());
        }
        loop {
            let n = chain.len();
            let (a, b) = (&chain[n - 2], &chain[n - 1]);
            if b.degree().is_none() || a.deg() < b.deg() {
                break;
            }
            // The pseudo-remainder multiplier lc(b)^(delta+1) must act as a
            // positive constant for the sign structure to survive, so flip
            // the remainder back when the multiplier was negative.
            let delta = a.deg() - b.deg();
            let mut r = a.pseudo_rem(b);
            if r.is_zero() {
                break;
            }
            let lead_negative = b.leading().is_some_and(Signed::is_negative);
            let multiplier_negative = lead_negative && (delta + 1) % 2 == 1;
            if !multiplier_negative {
                r = -&r;
            }
            r = r.primitive_part();
            chain.push(r);
            if chain.last().is_some_and(|p| p.degree() == Some(0)) {
                break;
            }
        }
        SturmChain { chain }
    }

    /// Sign variations at the rational point `num/den` (`den > 0`).
    fn variations_at(&self, num: &BigInt, den: &BigInt) -> usize {
        count_variations(self.chain.iter().map(|p| p.sign_at(num, den)))
    }

    fn variations_at_rat(&self, x: &BigRational) -> usize {
        self.variations_at(x.numer(), x.denom())
    }

    fn variations_pos_inf(&self) -> usize {
        count_variations(
            self.chain
                .iter()
                .map(|p| p.leading().map_or(0, bigint_sign)),
        )
    }

    fn variations_neg_inf(&self) -> usize {
        count_variations(self.chain.iter().map(|p| {
            let s = p.leading().map_or(0, bigint_sign);
            if p.degree().is_some_and(|d| d % 2 == 1) {
                -s
            } else {
                s
            }
        }))
    }

    /// Number of distinct real roots in `(a, b]` for `a < b`.
    fn count_half_open(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at_rat(a) - self.variations_at_rat(b)
    }

    fn count_above(&self, a: &BigRational) -> usize {
        self.variations_at_rat(a) - self.variations_pos_inf()
    }

    fn count_all(&self) -> usize {
        self.variations_neg_inf() - self.variations_pos_inf()
    }

    /// Exact number of distinct real roots in the range. Building the chain
    /// once and counting over several ranges amortizes the remainder
    /// sequence.
    pub fn count(&self, range: &RootRange) -> usize {
        match range {
            RootRange::All => self.count_all(),
            RootRange::Open(lo, hi) => {
                assert!(lo < hi, "empty interval");
                let mut n = self.count_half_open(lo, hi);
                if self.f().sign_at(hi.numer(), hi.denom()) == 0 {
                    n -= 1;
                }
                n
            }
            RootRange::Above(lo) => self.count_above(lo),
            RootRange::UpTo(hi) => self.variations_neg_inf() - self.variations_at_rat(hi),
        }
    }

    fn f(&self) -> &IntPoly {
        &self.chain[0]
    }
}

fn count_variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for s in signs {
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Exact number of distinct real roots of a squarefree polynomial in the
/// given range.
pub fn sturm_count(f: &IntPoly, range: &RootRange) -> Result<usize, RootError> {
    Ok(SturmChain::new(f)?.count(range))
}

/// Number of real roots counted with multiplicity, by repeated squarefree
/// deflation. Equals the degree exactly when every root is real.
pub fn real_roots_with_multiplicity(f: &IntPoly) -> usize {
    let mut h = f.primitive_part();
    let mut total = 0;
    while h.degree().is_some_and(|d| d >= 1) {
        let sf = h.squarefree_part();
        total += sturm_count(&sf, &RootRange::All).expect("squarefree part is squarefree");
        h = h.exact_div(&sf).expect("squarefree part divides");
    }
    total
}

/// Cauchy root bound `1 + max |a_i| / |a_n|`; every complex root has
/// absolute value strictly below it.
pub fn cauchy_bound(f: &IntPoly) -> BigRational {
    let lead = f.leading().expect("nonzero polynomial").abs();
    let mut max = BigInt::zero();
    for c in f.coeffs().iter().take(f.deg()) {
        let a = c.abs();
        if a > max {
            max = a;
        }
    }
    BigRational::one() + BigRational::new(max, lead)
}

/// Isolates the largest real root of `f` in an interval of width at most
/// `width`, containing no other root of `f`.
///
/// Sturm counting on the squarefree part localizes the root; once it is the
/// only root in the bracket, plain sign bisection refines it.
pub fn isolate_largest_root(f: &IntPoly, width: &BigRational) -> Result<RatInterval, RootError> {
    assert!(width.is_positive(), "width must be positive");
    let g = f.squarefree_part();
    if g.degree().is_none_or(|d| d == 0) {
        return Err(RootError::NoRealRoot);
    }
    let chain = SturmChain::new_unchecked(&g);
    if chain.count_all() == 0 {
        return Err(RootError::NoRealRoot);
    }
    let bound = cauchy_bound(&g);
    let mut lo = -bound.clone();
    let mut hi = bound;
    let two = BigRational::from_integer(BigInt::from(2));

    // Phase 1: Sturm bisection until the bracket holds exactly the largest
    // root and both endpoints have nonzero sign.
    loop {
        let endpoints_clean = chain.f().sign_at(lo.numer(), lo.denom()) != 0
            && chain.f().sign_at(hi.numer(), hi.denom()) != 0;
        if endpoints_clean && chain.count_half_open(&lo, &hi) == 1 && chain.count_above(&hi) == 0 {
            break;
        }
        let mid = (&lo + &hi) / &two;
        if chain.f().sign_at(mid.numer(), mid.denom()) == 0 {
            if chain.count_above(&mid) == 0 {
                // Hit the largest root exactly.
                return Ok(RatInterval::point(mid));
            }
            lo = mid;
            continue;
        }
        if chain.count_above(&mid) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    // Phase 2: sign bisection on the squarefree part.
    let sign_hi = chain.f().sign_at(hi.numer(), hi.denom());
    debug_assert_ne!(sign_hi, 0);
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        let s = chain.f().sign_at(mid.numer(), mid.denom());
        if s == 0 {
            return Ok(RatInterval::point(mid));
        }
        if s == sign_hi {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(RatInterval::new(lo, hi))
}
