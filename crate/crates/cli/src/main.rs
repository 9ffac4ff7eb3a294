//! Command-line entry point.
//!
//! Exit codes: 0 success; 1 IO or internal error; 2 any claim failure
//! (an exact identity or certificate sub-check did not hold); 3 when some
//! index `j >= 2` in range ends without a non-Galois certificate.

mod cache;
mod config;
mod pipeline;
mod record;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;

use cyclocert_core::cyclo::certify_irreducible;
use cyclocert_core::family::{pf_index, FamilyRecord};
use cyclocert_core::fp::{gcd_claims, FpError};
use cyclocert_core::obstruction::{default_prime_bound, find_certificate};
use cyclocert_core::IntPoly;

use config::{decimal_string, parse_rational, Format, RunConfig, CACHE_DIR_ENV};
use record::{report_csv, report_json, report_text, IrreducibleInfo, RunRecord};

#[derive(Parser)]
#[command(
    name = "cyclocert",
    version,
    about = "Exact certificates that the indices of a recursive polynomial family are not cyclotomic integers"
)]
struct Cli {
    /// Seed for the (canonicalized) randomized factorization stage.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Worker threads for range commands (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one family member: q_j, p_j, P_j, Q_j, m_j, R_j.
    Family {
        #[arg(long)]
        j: usize,
    },
    /// Run the exact identity suite (and gcd claims where applicable) over a range.
    Verify {
        #[arg(long)]
        jmin: usize,
        #[arg(long)]
        jmax: usize,
    },
    /// Certify that R_j is irreducible (exact chain plus degree-pattern oracle).
    Irreducible {
        #[arg(long)]
        j: usize,
    },
    /// Search for a prime whose factorization pattern of m_j rules a Galois extension out.
    Galois {
        #[arg(long)]
        j: usize,
        /// Scan primes up to this bound (default max(100, 10(2j+3))).
        #[arg(long)]
        prime_bound: Option<u64>,
    },
    /// Bracket the Perron-Frobenius index d_j.
    Pf {
        #[arg(long)]
        j: usize,
        /// Bracket width, e.g. 1e-9 or 1/1000000.
        #[arg(long, default_value = "1e-9")]
        width: String,
    },
    /// Full pipeline over a range: identities, irreducibility, certificates,
    /// pf brackets, with a resumable cache and a report file.
    Pipeline {
        #[arg(long, default_value_t = 0)]
        jmin: usize,
        #[arg(long, default_value_t = 100)]
        jmax: usize,
        /// Report file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Cache directory (falls back to CYCLOCERT_CACHE_DIR).
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long)]
        prime_bound: Option<u64>,
        #[arg(long, default_value = "1e-9")]
        width: String,
        /// Test hook: force a claim failure to exercise the exit contract.
        #[arg(long, hide = true)]
        inject_claim_failure: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Family { j } => cmd_family(j, cli.format),
        Command::Verify { jmin, jmax } => cmd_verify(jmin, jmax, cli.format),
        Command::Irreducible { j } => cmd_irreducible(j, cli.format),
        Command::Galois { j, prime_bound } => cmd_galois(j, prime_bound, cli.seed, cli.format),
        Command::Pf { j, width } => cmd_pf(j, &width, cli.format),
        Command::Pipeline {
            jmin,
            jmax,
            out,
            cache,
            prime_bound,
            width,
            inject_claim_failure,
        } => {
            let config = RunConfig {
                j_min: jmin,
                j_max: jmax,
                prime_bound,
                seed: cli.seed,
                width: parse_rational(&width).context("parsing --width")?,
                threads: cli.threads,
                cache_dir: cache.or_else(|| std::env::var(CACHE_DIR_ENV).ok().map(PathBuf::from)),
                format: cli.format,
                inject_claim_failure,
            };
            cmd_pipeline(&config, out)
        }
    }
}

fn poly_strings(f: &IntPoly) -> Vec<String> {
    f.coeffs().iter().map(|c| c.to_string()).collect()
}

fn cmd_family(j: usize, format: Format) -> Result<u8> {
    let rec = match FamilyRecord::build(j) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("claim failure: {e}");
            return Ok(2);
        }
    };
    match format {
        Format::Text => {
            println!("j = {}  (2j + 3 = {})", rec.j, rec.two_j_plus_three());
            println!("q_j = {}", rec.q.display_var('x'));
            println!("p_j = {}", rec.p.display_var('x'));
            println!("P_j = {}", rec.big_p.display_var('q'));
            println!("Q_j = {}", rec.big_q.display_var('q'));
            println!("m_j = {}", rec.m.display_var('x'));
            println!("R_j = {}", rec.r.display_var('q'));
            println!(
                "phi_3 factor: {}",
                if rec.has_phi3 {
                    "present (j = 1 mod 3)"
                } else {
                    "absent"
                }
            );
        }
        Format::Json => {
            let v = json!({
                "j": rec.j,
                "two_j_plus_three": rec.two_j_plus_three(),
                "has_phi3": rec.has_phi3,
                "q": poly_strings(&rec.q),
                "p": poly_strings(&rec.p),
                "P": poly_strings(&rec.big_p),
                "Q": poly_strings(&rec.big_q),
                "m": poly_strings(&rec.m),
                "R": poly_strings(&rec.r),
            });
            println!("{}", serde_json::to_string_pretty(&v)?);
        }
        Format::Csv => {
            println!("name,coefficients");
            for (name, f) in [
                ("q", &rec.q),
                ("p", &rec.p),
                ("P", &rec.big_p),
                ("Q", &rec.big_q),
                ("m", &rec.m),
                ("R", &rec.r),
            ] {
                println!("{name},{}", poly_strings(f).join(" "));
            }
        }
    }
    Ok(0)
}

fn cmd_verify(jmin: usize, jmax: usize, format: Format) -> Result<u8> {
    anyhow::ensure!(jmin <= jmax, "--jmin exceeds --jmax");
    let mut rows = Vec::new();
    let mut failed = false;
    for j in jmin..=jmax {
        let detail: Option<String> = match FamilyRecord::build(j) {
            Ok(_) => match gcd_claims(j) {
                Ok(claims) if !claims.all_hold() => {
                    Some(format!("gcd claims failed at p = {}", claims.p))
                }
                Ok(_) | Err(FpError::NotApplicable(_)) => None,
                Err(e) => Some(e.to_string()),
            },
            Err(e) => Some(e.to_string()),
        };
        failed |= detail.is_some();
        rows.push((j, detail));
    }
    match format {
        Format::Text => {
            for (j, detail) in &rows {
                match detail {
                    None => println!("j = {j}: ok"),
                    Some(d) => println!("j = {j}: FAILED ({d})"),
                }
            }
            println!(
                "{} of {} indices verified",
                rows.iter().filter(|(_, d)| d.is_none()).count(),
                rows.len()
            );
        }
        Format::Json => {
            let v = json!({
                "results": rows.iter().map(|(j, d)| json!({"j": j, "ok": d.is_none(), "detail": d})).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&v)?);
        }
        Format::Csv => {
            println!("j,ok,detail");
            for (j, d) in &rows {
                println!("{j},{},{}", d.is_none(), d.clone().unwrap_or_default());
            }
        }
    }
    Ok(if failed { 2 } else { 0 })
}

fn cmd_irreducible(j: usize, format: Format) -> Result<u8> {
    match certify_irreducible(j) {
        Ok(cert) => {
            let info = IrreducibleInfo::from_core(&cert);
            match format {
                Format::Text => {
                    println!("R_{j} is irreducible");
                    println!(
                        "  cyclotomic part of P_j: {:?} (expected {})",
                        cert.cyclo_entries,
                        if j % 3 == 1 { "{(3,1)}" } else { "{}" }
                    );
                    println!(
                        "  real roots of P_j: (0,1) -> {}, (1,oo) -> {}, (-oo,0] -> {}",
                        cert.roots_in_unit_interval, cert.roots_above_one, cert.roots_nonpositive
                    );
                    println!(
                        "  degree-pattern oracle over {} unramified primes: {}",
                        cert.oracle_primes.len(),
                        if cert.oracle_corroborates() {
                            "conclusive"
                        } else {
                            "inconclusive"
                        }
                    );
                }
                Format::Json => {
                    let v = json!({"j": j, "irreducible": true, "detail": info});
                    println!("{}", serde_json::to_string_pretty(&v)?);
                }
                Format::Csv => {
                    println!("j,irreducible,oracle_conclusive,oracle_primes");
                    println!(
                        "{j},true,{},{}",
                        info.oracle_conclusive,
                        info.oracle_primes.len()
                    );
                }
            }
            Ok(0)
        }
        Err(e) => {
            eprintln!("claim failure: {e}");
            Ok(2)
        }
    }
}

fn cmd_galois(j: usize, prime_bound: Option<u64>, seed: u64, format: Format) -> Result<u8> {
    let bound = prime_bound.unwrap_or_else(|| default_prime_bound(j));
    let verdict = find_certificate(j, bound, seed);
    match format {
        Format::Text => println!("j = {j}: {verdict}"),
        Format::Json => {
            let cert = verdict
                .certificate()
                .map(record::CertificateInfo::from_core);
            let (kind, detail) = RunRecord::verdict_of(&verdict);
            let v = json!({
                "j": j,
                "prime_bound": bound,
                "verdict": kind,
                "certificate": cert,
                "detail": detail,
            });
            println!("{}", serde_json::to_string_pretty(&v)?);
        }
        Format::Csv => {
            println!("j,verdict,cert_prime,pattern");
            let (kind, _) = RunRecord::verdict_of(&verdict);
            match verdict.certificate() {
                Some(c) => {
                    let info = record::CertificateInfo::from_core(c);
                    println!("{j},{kind},{},{}", info.p, info.pattern_string());
                }
                None => println!("{j},{kind},,"),
            }
        }
    }
    Ok(pipeline::exit_code_for_verdict(j, &verdict) as u8)
}

fn cmd_pf(j: usize, width: &str, format: Format) -> Result<u8> {
    let width = parse_rational(width).context("parsing --width")?;
    let pf = match pf_index(j, &width) {
        Ok(pf) => pf,
        Err(e) => {
            eprintln!("claim failure: {e}");
            return Ok(2);
        }
    };
    match format {
        Format::Text => {
            println!(
                "d_{j} in [{}, {}]",
                decimal_string(pf.bracket.lo(), 9),
                decimal_string(pf.bracket.hi(), 9)
            );
            println!(
                "exact: [{}/{}, {}/{}]",
                pf.bracket.lo().numer(),
                pf.bracket.lo().denom(),
                pf.bracket.hi().numer(),
                pf.bracket.hi().denom()
            );
            println!(
                "cross-checks: alpha' map {}, m_j sign change {}",
                pf.alpha_cross_check, pf.m_sign_change
            );
        }
        Format::Json => {
            let v = json!({
                "j": j,
                "pf": record::PfInfo::from_core(&pf),
            });
            println!("{}", serde_json::to_string_pretty(&v)?);
        }
        Format::Csv => {
            println!("j,lo,hi,consistent");
            println!(
                "{j},{},{},{}",
                decimal_string(pf.bracket.lo(), 12),
                decimal_string(pf.bracket.hi(), 12),
                pf.consistent()
            );
        }
    }
    Ok(if pf.consistent() { 0 } else { 2 })
}

fn cmd_pipeline(config: &RunConfig, out: Option<PathBuf>) -> Result<u8> {
    let records = pipeline::run_pipeline(config)?;
    let config_echo = json!({
        "jmin": config.j_min,
        "jmax": config.j_max,
        "seed": config.seed,
        "prime_bound": config.prime_bound,
        "width": format!("{}/{}", config.width.numer(), config.width.denom()),
    });
    let body = match config.format {
        Format::Json => report_json(config_echo, &records),
        Format::Csv => report_csv(&records),
        Format::Text => report_text(&records),
    };
    match out {
        Some(path) => {
            let mut file = std::fs::File::create(&path)
                .with_context(|| format!("creating {}", path.display()))?;
            file.write_all(body.as_bytes())
                .with_context(|| format!("writing {}", path.display()))?;
        }
        None => print!("{body}"),
    }
    Ok(pipeline::exit_code_for(&records) as u8)
}
