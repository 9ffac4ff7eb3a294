//! Per-index computation and the parallel range driver.

use std::time::Instant;

use anyhow::Result;
use cyclocert_core::cyclo::{certify_irreducible_record, CycloSieve};
use cyclocert_core::fp::gcd_claims;
use cyclocert_core::obstruction::find_certificate_record;
use cyclocert_core::{FamilyRecord, FpError, Verdict};
use rayon::prelude::*;

use crate::cache;
use crate::config::RunConfig;
use crate::record::{CertificateInfo, IrreducibleInfo, PfInfo, RunRecord, VERDICT_CLAIM_FAILURE};

/// Computes (or reloads from cache) the record for one index.
pub fn run_index(config: &RunConfig, j: usize) -> Result<RunRecord> {
    let started = Instant::now();

    if config.inject_claim_failure && j == config.j_min {
        return Ok(claim_failure_record(
            j,
            config,
            "injected claim failure (test hook)".into(),
        ));
    }

    let mut family = match FamilyRecord::build(j) {
        Ok(r) => r,
        Err(e) => return Ok(claim_failure_record(j, config, e.to_string())),
    };
    let digest = cache::fixture_digest(&family);

    if !config.inject_claim_failure {
        if let Some(dir) = &config.cache_dir {
            if let Some(cached) = cache::load(dir, j, &digest) {
                return Ok(cached);
            }
        }
    }

    let mut sieve = CycloSieve::new();
    let mut verdict_kind = None;
    let mut claim_detail = None;

    let irreducible = match certify_irreducible_record(&mut sieve, &family) {
        Ok(cert) => Some(cert),
        Err(e) => {
            verdict_kind = Some(VERDICT_CLAIM_FAILURE);
            claim_detail = Some(e.to_string());
            None
        }
    };

    let gcd_claims_ok = match gcd_claims(j) {
        Ok(claims) => {
            if !claims.all_hold() {
                verdict_kind = Some(VERDICT_CLAIM_FAILURE);
                claim_detail
                    .get_or_insert_with(|| format!("gcd claims failed at p = {}", claims.p));
            }
            Some(claims.all_hold())
        }
        Err(FpError::NotApplicable(_)) => None,
        Err(e) => {
            verdict_kind = Some(VERDICT_CLAIM_FAILURE);
            claim_detail.get_or_insert_with(|| e.to_string());
            None
        }
    };

    let search = find_certificate_record(&family, config.prime_bound_for(j), config.seed);
    let certificate = search.certificate().map(CertificateInfo::from_core);
    let (search_kind, search_detail) = RunRecord::verdict_of(&search);
    if search_kind == VERDICT_CLAIM_FAILURE {
        verdict_kind = Some(VERDICT_CLAIM_FAILURE);
        if let Some(d) = search_detail {
            claim_detail.get_or_insert(d);
        }
    }

    let pf = match family.attach_pf_bracket(&config.width) {
        Ok(pf) => {
            if !pf.consistent() {
                verdict_kind = Some(VERDICT_CLAIM_FAILURE);
                claim_detail
                    .get_or_insert_with(|| format!("pf bracket cross-check failed at j = {j}"));
            }
            Some(PfInfo::from_core(&pf))
        }
        Err(e) => {
            verdict_kind = Some(VERDICT_CLAIM_FAILURE);
            claim_detail.get_or_insert_with(|| e.to_string());
            None
        }
    };

    let record = RunRecord {
        j,
        digest,
        m: RunRecord::m_strings(&family),
        verdict: verdict_kind.unwrap_or(search_kind).to_string(),
        claim_detail,
        certificate,
        prime_bound: config.prime_bound_for(j),
        cyclotomic_part: irreducible
            .as_ref()
            .map(|c| c.cyclo_entries.clone())
            .unwrap_or_default(),
        special_values_ok: true, // the family build verifies them exactly
        gcd_claims_ok,
        irreducible: irreducible.as_ref().map(IrreducibleInfo::from_core),
        pf,
        wall_ms: started.elapsed().as_millis() as u64,
    };

    if !config.inject_claim_failure {
        if let Some(dir) = &config.cache_dir {
            cache::store(dir, &record)?;
        }
    }
    Ok(record)
}

fn claim_failure_record(j: usize, config: &RunConfig, detail: String) -> RunRecord {
    RunRecord {
        j,
        digest: String::new(),
        m: Vec::new(),
        verdict: VERDICT_CLAIM_FAILURE.to_string(),
        claim_detail: Some(detail),
        certificate: None,
        prime_bound: config.prime_bound_for(j),
        cyclotomic_part: Vec::new(),
        special_values_ok: false,
        gcd_claims_ok: None,
        irreducible: None,
        pf: None,
        wall_ms: 0,
    }
}

/// Runs the whole range, fanning indices out to the worker pool; records
/// come back sorted ascending by index.
pub fn run_pipeline(config: &RunConfig) -> Result<Vec<RunRecord>> {
    config.validate()?;
    let indices: Vec<usize> = (config.j_min..=config.j_max).collect();
    let run = || -> Result<Vec<RunRecord>> {
        let mut records = indices
            .par_iter()
            .map(|&j| run_index(config, j))
            .collect::<Result<Vec<_>>>()?;
        records.sort_by_key(|r| r.j);
        Ok(records)
    };
    match config.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()?
            .install(run),
        None => run(),
    }
}

/// Exit code contract: 2 for any claim failure, 3 when an index `j >= 2`
/// ends without a certificate, 0 otherwise (IO failures surface as 1 from
/// the caller).
pub fn exit_code_for(records: &[RunRecord]) -> i32 {
    if records.iter().any(|r| r.is_claim_failure()) {
        return 2;
    }
    if records.iter().any(|r| r.j >= 2 && r.is_inconclusive()) {
        return 3;
    }
    0
}

/// Exit-code shaping shared by the single-index `galois` subcommand.
pub fn exit_code_for_verdict(j: usize, verdict: &Verdict) -> i32 {
    match verdict {
        Verdict::ClaimFailure(_) => 2,
        Verdict::NoCertificateWithinBound(_) if j >= 2 => 3,
        _ => 0,
    }
}
