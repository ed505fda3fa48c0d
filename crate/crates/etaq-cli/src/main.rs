//! `etaq` — exact eta-quotient coefficients, certified sign patterns, and
//! pattern scanning from the command line.
//!
//! Exit codes: 0 on success/confirmation, 1 on a violation or a failed
//! certification, 2 on usage errors.

use clap::{Parser, Subcommand, ValueEnum};
use etaq_core::certify::{certify_theorem, scan, ScanConfig};
use etaq_core::exactformula::{c1_exact, c1_exact_auto, c2_exact, c2_exact_auto, c3_decomposition};
use etaq_core::qseries::{check_pattern, expand, EtaQuotientSpec, PatternCheck, SignPattern};
use etaq_core::EtaqError;
use std::path::PathBuf;
use std::process::ExitCode;

const STRUCTURED_HEADER: &str = "etaq-output v1";

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Human-readable aligned columns.
    Table,
    /// Stable line-oriented records under a versioned header; byte-identical
    /// across runs on the same inputs.
    Structured,
}

#[derive(Parser)]
#[command(
    name = "etaq",
    version,
    about = "Exact eta-quotient coefficient engine",
    long_about = "Expands eta quotients \u{220f}(q^l;q^l)^(d_l) into exact integer \
                  coefficients, evaluates the convergent coefficient series with \
                  certified truncation tails, and certifies periodic sign patterns.\n\n\
                  Sign patterns are strings over {+,-,0}; position i gives the \
                  required sign of every coefficient with index n \u{2261} i (mod M), \
                  M the pattern length."
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,
    /// Worker thread count (default: ETAQ_THREADS env var, then all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print exact coefficients c(0..=n) of an eta quotient.
    Expand {
        /// Quotient spec, e.g. "1^1,5^-2" for (q;q)(q^5;q^5)^-2.
        #[arg(long)]
        spec: String,
        /// Last index to print (inclusive).
        #[arg(long)]
        n: u64,
    },
    /// Check coefficient signs against a periodic pattern.
    Signs {
        /// Quotient spec, e.g. "1^9,3^-5".
        #[arg(long)]
        spec: String,
        /// Last index to check (inclusive).
        #[arg(long)]
        n: u64,
        /// Pattern over {+,-,0}; position i constrains indices n ≡ i (mod M),
        /// where M is the pattern length.
        #[arg(long, allow_hyphen_values = true)]
        pattern: String,
        /// Expected modulus M; must equal the pattern length when given.
        #[arg(long)]
        period: Option<u64>,
        /// First index required to match.
        #[arg(long, default_value_t = 1)]
        n_start: u64,
    },
    /// Evaluate the exact coefficient series (case 1 or 2) with a certified
    /// truncation tail; exits 1 when the tail cannot certify rounding.
    Exact {
        /// Coefficient family: 1 = modulus-5 series, 2 = modulus-4 series.
        #[arg(long)]
        case: u8,
        /// Coefficient index (n ≥ 1).
        #[arg(long)]
        n: u64,
        /// Truncation cap K (default: self-tuned to tail < 1/4, capped at 10^4).
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Show the case-3 main-term / error-bound decomposition at n.
    Decompose {
        /// Coefficient index (n ≥ 1).
        #[arg(long)]
        n: u64,
    },
    /// Certify a sign-pattern family: direct check below the threshold,
    /// inequality margins above it.
    Certify {
        /// Family id: 1, 2, or 3.
        #[arg(long)]
        theorem: u8,
        /// Certify the pattern for all 0 ≤ n ≤ this bound.
        #[arg(long, default_value_t = 10_000)]
        n_max: u64,
        /// Also write the certificate to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scan an exponent box for quotients with purely periodic sign patterns.
    Scan {
        /// Highest level in the box (levels 1..=max-level).
        #[arg(long, default_value_t = 5)]
        max_level: u32,
        /// Exponent range per level as "lo..hi" (inclusive), e.g. "-3..3".
        #[arg(long, default_value = "-3..3", allow_hyphen_values = true)]
        delta: String,
        /// Largest period tried.
        #[arg(long, default_value_t = 12)]
        period_max: u64,
        /// Expansion depth of the verification pass.
        #[arg(long, default_value_t = 5000)]
        n_verify: u64,
        /// First index required to follow the pattern.
        #[arg(long, default_value_t = 1)]
        n_start: u64,
        /// Also write the hit list to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads(cli.threads);
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                EtaqError::CertificationFailed(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn init_threads(flag: Option<usize>) {
    let count = flag.or_else(|| {
        std::env::var("ETAQ_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(count) = count {
        if let Err(err) = rayon::ThreadPoolBuilder::new()
            .num_threads(count)
            .build_global()
        {
            eprintln!("warning: could not set thread count: {err}");
        }
    }
}

fn sign_char(sign: i8) -> char {
    match sign {
        1 => '+',
        -1 => '-',
        _ => '0',
    }
}

fn run(cli: Cli) -> Result<ExitCode, EtaqError> {
    let format = cli.format;
    match cli.command {
        Command::Expand { spec, n } => cmd_expand(&spec, n, format),
        Command::Signs {
            spec,
            n,
            pattern,
            period,
            n_start,
        } => cmd_signs(&spec, n, &pattern, period, n_start, format),
        Command::Exact { case, n, cap } => cmd_exact(case, n, cap, format),
        Command::Decompose { n } => cmd_decompose(n, format),
        Command::Certify {
            theorem,
            n_max,
            out,
        } => cmd_certify(theorem, n_max, out.as_deref(), format),
        Command::Scan {
            max_level,
            delta,
            period_max,
            n_verify,
            n_start,
            out,
        } => {
            let (delta_min, delta_max) = parse_delta_range(&delta)?;
            let config = ScanConfig {
                max_level,
                delta_min,
                delta_max,
                period_max,
                n_verify,
                n_start,
            };
            cmd_scan(&config, out.as_deref(), format)
        }
    }
}

fn cmd_expand(spec_str: &str, n: u64, format: Format) -> Result<ExitCode, EtaqError> {
    let spec: EtaQuotientSpec = spec_str.parse()?;
    let series = expand(&spec, n as usize);
    match format {
        Format::Structured => {
            println!("{STRUCTURED_HEADER}\texpand\t{spec}");
            for i in 0..=n as usize {
                println!("row\t{i}\t{}\t{}", series.coeff(i), sign_char(series.sign(i)));
            }
        }
        Format::Table => {
            println!("coefficients of {spec}:");
            println!("{:>8}  {:>24}  sign", "n", "c(n)");
            for i in 0..=n as usize {
                println!(
                    "{:>8}  {:>24}  {}",
                    i,
                    series.coeff(i).to_string(),
                    sign_char(series.sign(i))
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_signs(
    spec_str: &str,
    n: u64,
    pattern_str: &str,
    period: Option<u64>,
    n_start: u64,
    format: Format,
) -> Result<ExitCode, EtaqError> {
    let spec: EtaQuotientSpec = spec_str.parse()?;
    let pattern: SignPattern = pattern_str.parse()?;
    if let Some(period) = period {
        if period != pattern.period() as u64 {
            return Err(EtaqError::Domain(format!(
                "--period {period} does not match the pattern length {}",
                pattern.period()
            )));
        }
    }
    let series = expand(&spec, n as usize);
    let outcome = check_pattern(&series, &pattern, n_start as usize);
    if format == Format::Structured {
        println!("{STRUCTURED_HEADER}\tsigns\t{spec}\t{pattern}");
    }
    match outcome {
        PatternCheck::Confirmed { checked_to } => {
            match format {
                Format::Structured => println!("confirmed\t{n_start}\t{checked_to}"),
                Format::Table => println!(
                    "confirmed: {spec} follows {pattern} (mod {}) for {n_start} <= n <= {checked_to}",
                    pattern.period()
                ),
            }
            Ok(ExitCode::SUCCESS)
        }
        PatternCheck::Violation {
            index,
            expected,
            actual,
        } => {
            match format {
                Format::Structured => println!("violation\t{index}\t{expected}\t{actual}"),
                Format::Table => println!(
                    "violation at n={index}: sign is {}, pattern requires {}",
                    sign_char(actual),
                    sign_char(expected)
                ),
            }
            Ok(ExitCode::from(1))
        }
    }
}

fn cmd_exact(case: u8, n: u64, cap: Option<u64>, format: Format) -> Result<ExitCode, EtaqError> {
    let result = match (case, cap) {
        (1, Some(k)) => c1_exact(n, k)?,
        (1, None) => c1_exact_auto(n)?,
        (2, Some(k)) => c2_exact(n, k)?,
        (2, None) => c2_exact_auto(n)?,
        _ => {
            return Err(EtaqError::Domain(format!(
                "--case must be 1 or 2 (case 3 is served by `decompose`), got {case}"
            )))
        }
    };
    let rounded = result
        .rounded()
        .map_or_else(|| "-".to_string(), |v| v.to_string());
    match format {
        Format::Structured => {
            println!("{STRUCTURED_HEADER}\texact\t{case}");
            println!(
                "result\t{}\t{:.12e}\t{:.12e}\t{}\t{}\t{rounded}",
                result.n, result.value, result.tail_bound, result.terms_used, result.converged
            );
        }
        Format::Table => {
            println!("case {case} series at n={}:", result.n);
            println!("  value      = {:.12e}", result.value);
            println!("  tail bound = {:.12e}", result.tail_bound);
            println!("  terms used = {}", result.terms_used);
            println!("  converged  = {}", result.converged);
            if result.tail_bound < 0.5 {
                println!("  rounds to  = {rounded}");
            } else {
                println!("  tail bound >= 1/2: rounding not certified");
            }
        }
    }
    if result.tail_bound < 0.5 {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn cmd_decompose(n: u64, format: Format) -> Result<ExitCode, EtaqError> {
    let d = c3_decomposition(n)?;
    match format {
        Format::Structured => {
            println!("{STRUCTURED_HEADER}\tdecompose\t{n}");
            println!("main\t{:.12e}", d.main);
            println!("main-sign\t{}", d.main_sign());
            println!("e3-bound\t{:.12e}", d.e3_bound);
            println!("expansion-bound\t{:.12e}", d.en_bound);
            println!("short-arc-bound\t{:.12e}", d.sum1_bound);
            println!("mid-range-bound\t{:.12e}", d.sum32_bound);
            println!("total-bound\t{:.12e}", d.total_error_bound());
            println!("certifies-sign\t{}", d.certifies_sign());
        }
        Format::Table => {
            println!("case 3 decomposition at n={n}:");
            println!("  main term        = {:.12e} (sign {:+})", d.main, d.main_sign());
            println!("  |E3|  bound      = {:.12e}", d.e3_bound);
            println!("  |E|   bound      = {:.12e}", d.en_bound);
            println!("  |S1|  bound      = {:.12e}", d.sum1_bound);
            println!("  |S32| bound      = {:.12e}", d.sum32_bound);
            println!("  total error      = {:.12e}", d.total_error_bound());
            println!("  certifies sign   = {}", d.certifies_sign());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_certify(
    theorem: u8,
    n_max: u64,
    out: Option<&std::path::Path>,
    format: Format,
) -> Result<ExitCode, EtaqError> {
    let cert = certify_theorem(theorem, n_max)?;
    let text = cert.to_text();
    if let Some(path) = out {
        std::fs::write(path, &text)
            .map_err(|e| EtaqError::CertificationFailed(format!("writing {path:?}: {e}")))?;
    }
    match format {
        Format::Structured => print!("{text}"),
        Format::Table => {
            let threshold = cert.inequality_range.0;
            println!("certificate: theorem {} confirmed", cert.theorem_id);
            println!(
                "  pattern {} (mod {}) holds for all 0 <= n <= {}",
                cert.pattern,
                cert.pattern.period(),
                cert.inequality_range.1
            );
            println!(
                "  direct check on [{}, {}] (covers the below-threshold window [1, {}])",
                cert.direct_check_range.0,
                cert.direct_check_range.1,
                threshold - 1
            );
            println!(
                "  inequality margins on [{}, {}]: min {:.12e}",
                threshold, cert.inequality_range.1, cert.min_margin
            );
            if let Some(path) = out {
                println!("  certificate written to {}", path.display());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_scan(
    config: &ScanConfig,
    out: Option<&std::path::Path>,
    format: Format,
) -> Result<ExitCode, EtaqError> {
    let hits = scan(config)?;
    let mut lines = String::new();
    for hit in &hits {
        lines.push_str(&format!(
            "hit\t{}\t{}\t{}\t{}\n",
            hit.spec, hit.period, hit.pattern, hit.verified_up_to
        ));
    }
    if let Some(path) = out {
        let mut body = format!("{STRUCTURED_HEADER}\tscan\t{}\n", hits.len());
        body.push_str(&lines);
        std::fs::write(path, body)
            .map_err(|e| EtaqError::CertificationFailed(format!("writing {path:?}: {e}")))?;
    }
    match format {
        Format::Structured => {
            println!("{STRUCTURED_HEADER}\tscan\t{}", hits.len());
            print!("{lines}");
        }
        Format::Table => {
            println!(
                "{} purely periodic quotient(s) in levels 1..={}, exponents {}..={}, period <= {}, verified to n={}:",
                hits.len(),
                config.max_level,
                config.delta_min,
                config.delta_max,
                config.period_max,
                config.n_verify
            );
            println!("{:>20}  {:>6}  {:<12}  verified", "spec", "period", "pattern");
            for hit in &hits {
                println!(
                    "{:>20}  {:>6}  {:<12}  {}",
                    hit.spec.to_string(),
                    hit.period,
                    hit.pattern.to_string(),
                    hit.verified_up_to
                );
            }
            if let Some(path) = out {
                println!("hit list written to {}", path.display());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_delta_range(text: &str) -> Result<(i32, i32), EtaqError> {
    let (lo, hi) = text.split_once("..").ok_or_else(|| {
        EtaqError::InvalidSpec(format!("--delta must look like \"-3..3\", got {text:?}"))
    })?;
    let lo: i32 = lo
        .trim()
        .parse()
        .map_err(|_| EtaqError::InvalidSpec(format!("bad lower delta bound {lo:?}")))?;
    let hi: i32 = hi
        .trim()
        .parse()
        .map_err(|_| EtaqError::InvalidSpec(format!("bad upper delta bound {hi:?}")))?;
    Ok((lo, hi))
}
