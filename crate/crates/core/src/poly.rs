//! Dense univariate polynomials with arbitrary-precision integer
//! coefficients.
//!
//! Coefficients are stored in ascending degree order; the zero polynomial is
//! the empty sequence. All arithmetic is exact.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Error raised by [`IntPoly::exact_div`] when the divisor does not divide
/// the dividend over the integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NotDivisible;

impl fmt::Display for NotDivisible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "polynomial division leaves a nonzero remainder")
    }
}

#[cfg(feature = "std")]
impl std::error::Error for NotDivisible {}

/// Dense exact-integer univariate polynomial, ascending degree order.
///
/// Invariant: the last stored coefficient is nonzero; the zero polynomial is
/// the empty coefficient sequence.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        IntPoly {
            coeffs: vec![BigInt::zero(), BigInt::one()],
        }
    }

    pub fn constant(c: BigInt) -> Self {
        if c.is_zero() {
            IntPoly::zero()
        } else {
            IntPoly { coeffs: vec![c] }
        }
    }

    /// Builds a polynomial from ascending-degree coefficients, trimming
    /// trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree of a known-nonzero polynomial; panics on zero.
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of the zero polynomial")
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Multiplies by `x^k`.
    pub fn mul_xpow(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Exact product by schoolbook multiplication; the family polynomials
    /// never get large enough to justify anything asymptotically faster.
    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }

    pub fn pow(&self, mut n: usize) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / g`. Fails with [`NotDivisible`] when the
    /// remainder is nonzero; the failure itself is meaningful (divisibility
    /// is used as a test, not only a computation).
    pub fn exact_div(&self, g: &IntPoly) -> Result<IntPoly, NotDivisible> {
        assert!(!g.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        let dg = g.deg();
        let Some(dq) = self.deg().checked_sub(dg) else {
            return Err(NotDivisible);
        };
        let glead = g.leading().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); dq + 1];
        for k in (0..=dq).rev() {
            let lead = core::mem::take(&mut rem[k + dg]);
            if lead.is_zero() {
                continue;
            }
            let (c, r) = lead.div_rem(glead);
            if !r.is_zero() {
                return Err(NotDivisible);
            }
            for (i, gi) in g.coeffs.iter().enumerate().take(dg) {
                rem[k + i] -= &c * gi;
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(NotDivisible);
        }
        Ok(IntPoly::from_coeffs(quot))
    }

    /// Pseudo-remainder: returns `r` with exactly
    /// `lc(g)^(deg f - deg g + 1) * f = q*g + r`. Requires `deg f >= deg g`
    /// and `g` nonzero. The multiplier exponent is exact even when leading
    /// terms cancel early; the subresultant bookkeeping and the Sturm sign
    /// convention both depend on it.
    pub fn pseudo_rem(&self, g: &IntPoly) -> IntPoly {
        let dg = g.deg();
        let delta = self
            .deg()
            .checked_sub(dg)
            .expect("pseudo_rem needs deg f >= deg g");
        let glead = g.leading().expect("nonzero divisor").clone();
        let mut rem = self.clone();
        let mut steps = 0usize;
        while let Some(dr) = rem.degree() {
            if dr < dg {
                break;
            }
            let lead = rem.leading().expect("nonzero").clone();
            // rem <- lc(g)*rem - lead*x^(dr-dg)*g
            let mut next: Vec<BigInt> = rem.coeffs.iter().map(|c| c * &glead).collect();
            for (i, gi) in g.coeffs.iter().enumerate() {
                next[dr - dg + i] -= &lead * gi;
            }
            rem = IntPoly::from_coeffs(next);
            steps += 1;
        }
        for _ in steps..=delta {
            rem = rem.scale(&glead);
        }
        rem
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Content: positive gcd of the coefficients (zero for the zero
    /// polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with the sign of the leading coefficient preserved.
    pub fn primitive_part(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        }
    }

    /// Primitive gcd over the integers with positive leading coefficient,
    /// computed by a primitive pseudo-remainder sequence.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.abs_normalized().primitive_part();
        }
        if other.is_zero() {
            return self.abs_normalized().primitive_part();
        }
        let (mut a, mut b) = if self.deg() >= other.deg() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        loop {
            if b.is_zero() {
                return a.abs_normalized();
            }
            if b.deg() == 0 {
                return IntPoly::one();
            }
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
    }

    fn abs_normalized(&self) -> IntPoly {
        if self.leading().is_some_and(Signed::is_negative) {
            -self
        } else {
            self.clone()
        }
    }

    /// Squarefree part `self / gcd(self, self')`, primitive, positive lead.
    pub fn squarefree_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        if self.deg() == 0 {
            return IntPoly::one();
        }
        let g = self.gcd(&self.derivative());
        if g.deg() == 0 {
            return self.primitive_part().abs_normalized();
        }
        self.primitive_part()
            .exact_div(&g)
            .expect("gcd divides the primitive part")
            .abs_normalized()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && (self.deg() == 0 || self.gcd(&self.derivative()).deg() == 0)
    }

    /// Taylor shift: returns `f(x + c)`, computed by iterated synthetic
    /// division.
    pub fn shift(&self, c: &BigInt) -> IntPoly {
        if self.is_zero() || c.is_zero() {
            return self.clone();
        }
        let n = self.deg();
        let mut a = self.coeffs.clone();
        for i in 0..n {
            for j in (i..n).rev() {
                let add = c * &a[j + 1];
                a[j] += add;
            }
        }
        IntPoly::from_coeffs(a)
    }

    /// Returns `F(q) = f(q + q^-1) * q^(deg f)`, a self-reciprocal
    /// polynomial of degree `2 * deg f`.
    pub fn symmetrize(&self) -> IntPoly {
        assert!(!self.is_zero(), "symmetrize of the zero polynomial");
        let n = self.deg();
        // f(q + 1/q) q^n  =  sum_i c_i (q^2 + 1)^i q^(n - i)
        let binom = IntPoly::from_i64s(&[1, 0, 1]);
        let mut pow = IntPoly::one();
        let mut acc = IntPoly::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &pow.scale(c).mul_xpow(n - i);
            }
            if i < n {
                pow = pow.mul(&binom);
            }
        }
        acc
    }

    /// Graeffe root-squaring: returns `g` with `g(x^2) = (-1)^(deg f) *
    /// f(x) * f(-x)`; the roots of `g` are the squares of the roots of `f`.
    pub fn graeffe(&self) -> IntPoly {
        assert!(!self.is_zero(), "graeffe of the zero polynomial");
        let minus = IntPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        );
        let prod = self.mul(&minus);
        let mut out = Vec::with_capacity(self.deg() + 1);
        for i in 0..=self.deg() {
            out.push(prod.coeff(2 * i));
        }
        let mut g = IntPoly::from_coeffs(out);
        if self.deg() % 2 == 1 {
            g = -&g;
        }
        g
    }

    /// Coefficient reversal `x^(deg f) * f(1/x)`.
    pub fn reverse(&self) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        IntPoly::from_coeffs(coeffs)
    }

    /// True when the coefficient sequence equals its own reversal.
    pub fn is_self_reciprocal(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Exact value of the `order`-th derivative at a rational point.
    pub fn eval_deriv(&self, order: usize, x: &BigRational) -> BigRational {
        let mut f = self.clone();
        for _ in 0..order {
            f = f.derivative();
        }
        f.eval_rat(x)
    }

    /// Sign of `f(a/b)` for `b > 0`, computed without rational arithmetic
    /// via `sign(sum c_i a^i b^(n-i))`.
    pub fn sign_at(&self, num: &BigInt, den: &BigInt) -> i8 {
        debug_assert!(den.is_positive());
        if self.is_zero() {
            return 0;
        }
        let n = self.deg();
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        // Horner in a, collecting the b powers from the top down.
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if i == n {
                acc = c.clone();
                continue;
            }
            bpow *= den;
            acc = acc * num + c * &bpow;
        }
        bigint_sign(&acc)
    }

    /// Resultant of `self` and `other`, by the subresultant polynomial
    /// remainder sequence (Cohen, Algorithm 3.3.7).
    pub fn resultant(&self, other: &IntPoly) -> BigInt {
        if self.is_zero() || other.is_zero() {
            return BigInt::zero();
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let ca = a.content();
        let cb = b.content();
        a = a.primitive_part();
        b = b.primitive_part();
        // res(c*A, B) = c^(deg B) res(A, B): pair each content with the
        // degree of the opposite original argument, before any swap.
        let scale = num_traits::pow::pow(ca, b.deg()) * num_traits::pow::pow(cb, a.deg());
        let mut sign = 1i8;
        if a.deg() < b.deg() {
            if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
                sign = -sign;
            }
            core::mem::swap(&mut a, &mut b);
        }
        if b.deg() == 0 {
            let r = num_traits::pow::pow(b.coeff(0), a.deg());
            return apply_sign(scale * r, sign);
        }
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let da = a.deg();
            let db = b.deg();
            let delta = da - db;
            if da % 2 == 1 && db % 2 == 1 {
                sign = -sign;
            }
            let r = a.pseudo_rem(&b);
            a = b;
            let divisor = &g * num_traits::pow::pow(h.clone(), delta);
            b = match r.is_zero() {
                true => IntPoly::zero(),
                false => IntPoly {
                    coeffs: r.coeffs.iter().map(|c| exact_int_div(c, &divisor)).collect(),
                },
            };
            g = a.leading().expect("nonzero").clone();
            h = if delta == 0 {
                h
            } else {
                // h <- g^delta / h^(delta-1), exact
                exact_int_div(
                    &num_traits::pow::pow(g.clone(), delta),
                    &num_traits::pow::pow(h, delta - 1),
                )
            };
            if b.is_zero() {
                return BigInt::zero();
            }
            if b.deg() == 0 {
                // h <- lc(b)^(deg a) / h^(deg a - 1)
                let da = a.deg();
                let res = exact_int_div(
                    &num_traits::pow::pow(b.coeff(0), da),
                    &num_traits::pow::pow(h, da.saturating_sub(1)),
                );
                return apply_sign(scale * res, sign);
            }
        }
    }

    /// Discriminant via the subresultant resultant:
    /// `(-1)^(n(n-1)/2) res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> BigInt {
        let n = self.degree().expect("discriminant of the zero polynomial");
        assert!(n >= 1, "discriminant needs degree >= 1");
        if n == 1 {
            return BigInt::one();
        }
        let res = self.resultant(&self.derivative());
        let lead = self.leading().expect("nonzero");
        let d = res / lead;
        if (n * (n - 1) / 2) % 2 == 1 {
            -d
        } else {
            d
        }
    }

    /// Renders with the given variable letter.
    pub fn display_var(&self, var: char) -> PolyDisplay<'_> {
        PolyDisplay { poly: self, var }
    }
}

fn exact_int_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    debug_assert!(r.is_zero(), "subresultant division must be exact");
    q
}

pub(crate) fn bigint_sign(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn apply_sign(x: BigInt, sign: i8) -> BigInt {
    if sign < 0 {
        -x
    } else {
        x
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a IntPoly,
    var: char,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.poly.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 || !mag.is_one() {
                write!(f, "{}", mag)?;
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

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_var('x'))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = rhs.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        IntPoly::from_coeffs(out)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(Neg::neg).collect(),
        }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::mul(self, rhs)
    }
}
