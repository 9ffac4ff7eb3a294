//! Run configuration shared by the subcommands.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use cyclocert_core::{BigInt, BigRational};
use num_traits::{Signed, Zero};

/// Environment variable consulted for the cache directory when `--cache`
/// is not given.
pub const CACHE_DIR_ENV: &str = "CYCLOCERT_CACHE_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub j_min: usize,
    pub j_max: usize,
    /// Overrides the per-index default `max(100, 10(2j+3))` when set.
    pub prime_bound: Option<u64>,
    pub seed: u64,
    /// Width of the Perron-Frobenius brackets.
    pub width: BigRational,
    pub threads: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
    /// Test hook: fabricate a claim failure at `j_min` to exercise the
    /// exit-code contract. Disables the cache for the run.
    pub inject_claim_failure: bool,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.j_min > self.j_max {
            bail!("--jmin {} exceeds --jmax {}", self.j_min, self.j_max);
        }
        if !self.width.is_positive() {
            bail!("--width must be positive");
        }
        Ok(())
    }

    pub fn prime_bound_for(&self, j: usize) -> u64 {
        self.prime_bound
            .unwrap_or_else(|| cyclocert_core::obstruction::default_prime_bound(j))
    }
}

/// Accepts integers, fractions `a/b`, decimals, and scientific notation
/// (`1e-9`), all parsed exactly into a rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().context("bad numerator")?;
        let d: BigInt = den.trim().parse().context("bad denominator")?;
        if d.is_zero() {
            bail!("zero denominator");
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().context("bad exponent")?),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let digits = format!(
        "{}{}",
        if int_part.is_empty() { "0" } else { int_part },
        frac_part
    );
    let n: BigInt = digits.parse().context("bad decimal")?;
    let shift = exp - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    let value = if shift >= 0 {
        BigRational::from_integer(n * num_traits::pow(ten, shift as usize))
    } else {
        BigRational::new(n, num_traits::pow(ten, shift.unsigned_abs() as usize))
    };
    Ok(value)
}

/// Decimal rendering of a rational, truncated toward zero, for text
/// output; exact values travel in JSON as numerator/denominator strings.
pub fn decimal_string(x: &BigRational, digits: usize) -> String {
    let sign = if x.is_negative() { "-" } else { "" };
    let a = x.abs();
    let scale = num_traits::pow(BigInt::from(10u32), digits);
    let scaled = (a * BigRational::from_integer(scale.clone())).trunc();
    let scaled = scaled.to_integer();
    let whole = &scaled / &scale;
    let frac = &scaled % &scale;
    let mut frac_str = frac.to_string();
    while frac_str.len() < digits {
        frac_str.insert(0, '0');
    }
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac_str}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn parses_rationals() {
        assert_eq!(
            parse_rational("1/4").unwrap(),
            BigRational::new(BigInt::from(1), BigInt::from(4))
        );
        assert_eq!(
            parse_rational("1e-9").unwrap(),
            BigRational::new(BigInt::one(), BigInt::from(1_000_000_000u64))
        );
        assert_eq!(
            parse_rational("0.25").unwrap(),
            BigRational::new(BigInt::from(1), BigInt::from(4))
        );
        assert_eq!(
            parse_rational("4302776").unwrap(),
            BigRational::from_integer(BigInt::from(4302776))
        );
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn renders_decimals() {
        let x = BigRational::new(BigInt::from(43027756u64), BigInt::from(10_000_000u64));
        assert_eq!(decimal_string(&x, 4), "4.3027");
        assert_eq!(decimal_string(&-x, 2), "-4.30");
    }
}
