//! Per-index result record and its JSON/CSV/text renderings.
//!
//! The report JSON is byte-deterministic for a fixed configuration: keys are
//! sorted, coefficients are decimal strings (arbitrary precision survives
//! JSON number limits), and wall-clock timing is excluded (it lives in the
//! cache and the CSV only).

use cyclocert_core::{
    BigRational, Certificate, CertificateRoute, FamilyRecord, IrreducibilityCertificate, PfBracket,
    Verdict,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::config::decimal_string;

pub const VERDICT_CERTIFIED: &str = "certified-not-galois";
pub const VERDICT_INCONCLUSIVE: &str = "no-certificate-within-bound";
pub const VERDICT_CLAIM_FAILURE: &str = "claim-failure";

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CertificateInfo {
    pub p: u64,
    /// Sorted (degree, multiplicity) blocks.
    pub pattern: Vec<(usize, usize)>,
    pub route: String,
    pub ramified: bool,
}

impl CertificateInfo {
    pub fn from_core(c: &Certificate) -> Self {
        CertificateInfo {
            p: c.p,
            pattern: c.pattern.blocks.clone(),
            route: match c.route {
                CertificateRoute::IndexDivisor => "index-divisor".into(),
                CertificateRoute::PrimeScan => "prime-scan".into(),
            },
            ramified: c.ramified,
        }
    }

    pub fn pattern_string(&self) -> String {
        self.pattern
            .iter()
            .map(|(d, m)| format!("{d}^{m}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct IrreducibleInfo {
    pub q_all_roots_real: bool,
    pub roots_unit_interval: usize,
    pub roots_above_one: usize,
    pub roots_nonpositive: usize,
    pub cofactor_matches_r: bool,
    pub oracle_primes: Vec<u64>,
    pub oracle_conclusive: bool,
}

impl IrreducibleInfo {
    pub fn from_core(c: &IrreducibilityCertificate) -> Self {
        IrreducibleInfo {
            q_all_roots_real: c.q_all_roots_real,
            roots_unit_interval: c.roots_in_unit_interval,
            roots_above_one: c.roots_above_one,
            roots_nonpositive: c.roots_nonpositive,
            cofactor_matches_r: c.cofactor_matches_r,
            oracle_primes: c.oracle_primes.clone(),
            oracle_conclusive: c.oracle_corroborates(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PfInfo {
    /// Exact endpoints as (numerator, denominator) decimal strings.
    pub lo: (String, String),
    pub hi: (String, String),
    pub consistent: bool,
}

impl PfInfo {
    pub fn from_core(pf: &PfBracket) -> Self {
        let encode = |x: &BigRational| (x.numer().to_string(), x.denom().to_string());
        PfInfo {
            lo: encode(pf.bracket.lo()),
            hi: encode(pf.bracket.hi()),
            consistent: pf.consistent(),
        }
    }

    pub fn lo_rational(&self) -> Option<BigRational> {
        Some(BigRational::new(
            self.lo.0.parse().ok()?,
            self.lo.1.parse().ok()?,
        ))
    }

    pub fn hi_rational(&self) -> Option<BigRational> {
        Some(BigRational::new(
            self.hi.0.parse().ok()?,
            self.hi.1.parse().ok()?,
        ))
    }
}

/// Everything the pipeline knows about one index; serializes losslessly
/// (the cache stores exactly this).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunRecord {
    pub j: usize,
    pub digest: String,
    /// Ascending-degree decimal coefficients of `m_j`.
    pub m: Vec<String>,
    pub verdict: String,
    pub claim_detail: Option<String>,
    pub certificate: Option<CertificateInfo>,
    pub prime_bound: u64,
    /// Cyclotomic part of `P_j` as (order, multiplicity) pairs.
    pub cyclotomic_part: Vec<(u64, u32)>,
    pub special_values_ok: bool,
    /// None when `2j + 3` is composite (claims not applicable).
    pub gcd_claims_ok: Option<bool>,
    pub irreducible: Option<IrreducibleInfo>,
    pub pf: Option<PfInfo>,
    pub wall_ms: u64,
}

impl RunRecord {
    pub fn verdict_of(v: &Verdict) -> (&'static str, Option<String>) {
        match v {
            Verdict::CertifiedNotGalois(_) => (VERDICT_CERTIFIED, None),
            Verdict::NoCertificateWithinBound(_) => (VERDICT_INCONCLUSIVE, None),
            Verdict::ClaimFailure(detail) => (VERDICT_CLAIM_FAILURE, Some(detail.clone())),
        }
    }

    pub fn m_strings(record: &FamilyRecord) -> Vec<String> {
        record.m.coeffs().iter().map(|c| c.to_string()).collect()
    }

    pub fn is_claim_failure(&self) -> bool {
        self.verdict == VERDICT_CLAIM_FAILURE
    }

    pub fn is_inconclusive(&self) -> bool {
        self.verdict == VERDICT_INCONCLUSIVE
    }

    /// Report projection: the cached record minus wall-clock timing.
    pub fn report_value(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("record serializes");
        v.as_object_mut()
            .expect("record is an object")
            .remove("wall_ms");
        v
    }

    pub fn csv_row(&self) -> String {
        let (prime, pattern) = match &self.certificate {
            Some(c) => (c.p.to_string(), c.pattern_string()),
            None => (String::new(), String::new()),
        };
        format!(
            "{},{},{},{},{},{}",
            self.j,
            2 * self.j + 3,
            prime,
            pattern,
            self.verdict,
            self.wall_ms
        )
    }

    pub fn text_block(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "j = {} (2j + 3 = {}): {}\n",
            self.j,
            2 * self.j + 3,
            self.verdict
        ));
        if let Some(c) = &self.certificate {
            out.push_str(&format!(
                "  certificate: p = {} pattern [{}] route {}{}\n",
                c.p,
                c.pattern_string(),
                c.route,
                if c.ramified { " (ramified)" } else { "" }
            ));
        }
        if let Some(detail) = &self.claim_detail {
            out.push_str(&format!("  failure: {detail}\n"));
        }
        out.push_str(&format!(
            "  cyclotomic part of P_j: {:?}; special values {}; gcd claims {}\n",
            self.cyclotomic_part,
            if self.special_values_ok {
                "ok"
            } else {
                "FAILED"
            },
            match self.gcd_claims_ok {
                Some(true) => "ok",
                Some(false) => "FAILED",
                None => "n/a (2j+3 composite)",
            }
        ));
        if let Some(ir) = &self.irreducible {
            out.push_str(&format!(
                "  irreducible: roots (0,1)={} (1,oo)={} (-oo,0]={}; oracle over {} primes: {}\n",
                ir.roots_unit_interval,
                ir.roots_above_one,
                ir.roots_nonpositive,
                ir.oracle_primes.len(),
                if ir.oracle_conclusive {
                    "conclusive"
                } else {
                    "inconclusive"
                }
            ));
        }
        if let Some(pf) = &self.pf {
            if let (Some(lo), Some(hi)) = (pf.lo_rational(), pf.hi_rational()) {
                out.push_str(&format!(
                    "  pf index bracket: [{}, {}]{}\n",
                    decimal_string(&lo, 9),
                    decimal_string(&hi, 9),
                    if pf.consistent {
                        ""
                    } else {
                        " (CROSS-CHECK FAILED)"
                    }
                ));
            }
        }
        out.push_str(&format!("  wall: {} ms\n", self.wall_ms));
        out
    }
}

pub const CSV_HEADER: &str = "j,two_j_plus_three,cert_prime,pattern,verdict,ms";

/// Deterministic pretty JSON for a full run.
pub fn report_json(config_echo: Value, records: &[RunRecord]) -> String {
    let body = json!({
        "config": config_echo,
        "records": records.iter().map(|r| r.report_value()).collect::<Vec<_>>(),
    });
    let mut s = serde_json::to_string_pretty(&body).expect("report serializes");
    s.push('\n');
    s
}

pub fn report_csv(records: &[RunRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

pub fn report_text(records: &[RunRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&r.text_block());
    }
    out
}
