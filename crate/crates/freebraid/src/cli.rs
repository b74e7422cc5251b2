//! Command-line front end: parse braidings and endomorphisms, run the
//! checks and classifications, and emit text or JSON reports.
//!
//! Exit codes: 0 for a true/successful verdict, 1 for a false/failed
//! verdict, 2 for input errors. JSON mode prints exactly one document.

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::autos::tame_decompose;
use crate::braided_autos::{
    classify_aut_group, is_braided_automorphism, witness_suite, CheckMethod,
};
use crate::braiding::{
    braided_isomorphic, canonical_form, dual_braiding, extend_braiding, yang_baxter_check,
    yang_baxter_check_matrix, DiagonalBraiding, ExtensionMethod, TensorElement,
};
use crate::parse::{parse_braiding, parse_endomorphism, parse_matrix, parse_poly};
use crate::scalar::FieldSpec;
use crate::Result;

fn parse_field(arg: &str) -> std::result::Result<FieldSpec, String> {
    if arg.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::Rationals);
    }
    if let Some(p) = arg.strip_prefix("fp:") {
        let p: u64 = p.parse().map_err(|_| format!("bad prime in '{arg}'"))?;
        return FieldSpec::prime_field(p).map_err(|e| e.to_string());
    }
    Err(format!("expected 'q' or 'fp:P', got '{arg}'"))
}

#[derive(Parser)]
#[command(
    name = "freebraid",
    version,
    about = "Exact computations in free algebras with diagonal braidings: \
             braid-relation checks, braiding extensions, tame decompositions, \
             braided automorphism checks, and classification"
)]
struct Cli {
    /// Ground field: 'q' for the rationals, 'fp:P' for the odd prime field F_P
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    field: FieldSpec,
    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Text)]
    output: OutputMode,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExtendFlag {
    Operator,
    Closed,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum CheckFlag {
    #[default]
    Bicharacter,
    Oracle,
}

#[derive(Subcommand)]
enum Verb {
    /// Check the braid relation for a diagonal braiding or an explicit matrix
    CheckYb {
        /// Diagonal braiding: "(a,b,c,d)" or an n-by-n entry matrix "[[..],..]"
        #[arg(long)]
        tau: Option<String>,
        /// Matrix on the tensor-square basis: n^2-by-n^2, "[[..],..]"
        #[arg(long)]
        matrix: Option<String>,
    },
    /// Canonical representative of a two-generator involutive braiding
    Canonical {
        /// Diagonal braiding "(a,b,c,d)"
        #[arg(long)]
        tau: String,
    },
    /// Decide whether two braidings give isomorphic braided algebras
    Iso {
        /// First braiding "(a,b,c,d)"
        #[arg(long)]
        tau: String,
        /// Second braiding "(a,b,c,d)"
        #[arg(long)]
        sigma: String,
    },
    /// Apply the braiding extension to a split tensor of two polynomials
    Extend {
        /// Diagonal braiding
        #[arg(long)]
        tau: String,
        /// Left tensor factor (polynomial)
        #[arg(long)]
        left: String,
        /// Right tensor factor (polynomial)
        #[arg(long)]
        right: String,
        /// Evaluation route; both produce identical results
        #[arg(long, value_enum, default_value_t = ExtendFlag::Closed)]
        method: ExtendFlag,
    },
    /// Check that an automorphism commutes with the braiding
    CheckAuto {
        /// Diagonal braiding "(a,b,c,d)"
        #[arg(long)]
        tau: String,
        /// Endomorphism "(f1 ; f2)"
        #[arg(long)]
        phi: String,
        /// Decision procedure
        #[arg(long, value_enum, default_value_t)]
        method: CheckFlag,
        /// Degree bound for the oracle method (default: deg f1 + deg f2 + 2)
        #[arg(long)]
        truncation: Option<usize>,
    },
    /// Factor an automorphism of K<x1,x2> into elementary automorphisms
    Decompose {
        /// Endomorphism "(f1 ; f2)"
        #[arg(long)]
        phi: String,
    },
    /// Classify the braided automorphism group of an involutive braiding
    Classify {
        /// Diagonal braiding "(a,b,c,d)"
        #[arg(long)]
        tau: String,
    },
    /// Run the randomized member/non-member suite for a braiding
    Witness {
        /// Diagonal braiding "(a,b,c,d)"
        #[arg(long)]
        tau: String,
        /// RNG seed; required with --output json
        #[arg(long)]
        seed: Option<u64>,
        /// Number of random members to draw
        #[arg(long, default_value_t = 5)]
        members: usize,
        /// Degree bound for the oracle method
        #[arg(long)]
        truncation: Option<usize>,
    },
}

#[derive(Serialize)]
struct YbReport {
    schema: u32,
    input: &'static str,
    holds: bool,
}

#[derive(Serialize)]
struct CanonicalReport {
    schema: u32,
    tau: Vec<String>,
    involutive: bool,
    canonical: Option<Vec<String>>,
    dual: Vec<String>,
}

#[derive(Serialize)]
struct IsoReport {
    schema: u32,
    tau: Vec<String>,
    sigma: Vec<String>,
    isomorphic: bool,
}

#[derive(Serialize)]
struct ExtendTerm {
    coeff: String,
    left: String,
    right: String,
}

#[derive(Serialize)]
struct ExtendReport {
    schema: u32,
    tau: Vec<String>,
    method: &'static str,
    left: String,
    right: String,
    terms: Vec<ExtendTerm>,
}

#[derive(Serialize)]
struct CheckAutoReport {
    schema: u32,
    tau: Vec<String>,
    phi: String,
    method: &'static str,
    truncation: Option<usize>,
    braided_automorphism: bool,
}

#[derive(Serialize)]
struct FactorRecord {
    target: u8,
    scale: String,
    addend: String,
}

#[derive(Serialize)]
struct DecomposeReport {
    schema: u32,
    phi: String,
    tame: bool,
    factors: Vec<FactorRecord>,
    residual_affine: Option<String>,
}

#[derive(Serialize)]
struct ClassifyReport {
    schema: u32,
    tau: Vec<String>,
    canonical: Vec<String>,
    group: String,
    isomorphic_description: String,
}

fn entry_strings(q: &DiagonalBraiding) -> Vec<String> {
    let n = q.n() as u8;
    let mut out = Vec::with_capacity(q.n() * q.n());
    for i in 1..=n {
        for j in 1..=n {
            out.push(q.q(i, j).to_string());
        }
    }
    out
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable report"));
}

/// Parses the argument list, dispatches, prints the report, and returns
/// the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}

fn execute(cli: &Cli) -> Result<i32> {
    let field = cli.field;
    match &cli.verb {
        Verb::CheckYb { tau, matrix } => {
            let (input, holds) = match (tau, matrix) {
                (Some(t), None) => ("diagonal", yang_baxter_check(&parse_braiding(t, field)?)),
                (None, Some(m)) => ("matrix", yang_baxter_check_matrix(&parse_matrix(m, field)?)),
                _ => {
                    eprintln!("error: provide exactly one of --tau or --matrix");
                    return Ok(2);
                }
            };
            match cli.output {
                OutputMode::Text => println!("braid relation holds: {holds}"),
                OutputMode::Json => print_json(&YbReport { schema: 1, input, holds }),
            }
            Ok(if holds { 0 } else { 1 })
        }
        Verb::Canonical { tau } => {
            let q = parse_braiding(tau, field)?;
            let involutive = q.is_involutive();
            let canonical = if involutive { Some(canonical_form(&q)?) } else { None };
            let dual = dual_braiding(&q)?;
            match cli.output {
                OutputMode::Text => {
                    println!("involutive: {involutive}");
                    match &canonical {
                        Some(c) => println!("canonical: {c}"),
                        None => println!("canonical: none"),
                    }
                    println!("dual: {dual}");
                }
                OutputMode::Json => print_json(&CanonicalReport {
                    schema: 1,
                    tau: entry_strings(&q),
                    involutive,
                    canonical: canonical.as_ref().map(entry_strings),
                    dual: entry_strings(&dual),
                }),
            }
            Ok(if involutive { 0 } else { 1 })
        }
        Verb::Iso { tau, sigma } => {
            let t = parse_braiding(tau, field)?;
            let s = parse_braiding(sigma, field)?;
            let isomorphic = braided_isomorphic(&t, &s)?;
            match cli.output {
                OutputMode::Text => println!("isomorphic: {isomorphic}"),
                OutputMode::Json => print_json(&IsoReport {
                    schema: 1,
                    tau: entry_strings(&t),
                    sigma: entry_strings(&s),
                    isomorphic,
                }),
            }
            Ok(if isomorphic { 0 } else { 1 })
        }
        Verb::Extend { tau, left, right, method } => {
            let q = parse_braiding(tau, field)?;
            let l = parse_poly(left, q.n(), field)?;
            let r = parse_poly(right, q.n(), field)?;
            let (method_name, m) = match method {
                ExtendFlag::Operator => ("operator", ExtensionMethod::Operator),
                ExtendFlag::Closed => ("closed", ExtensionMethod::ClosedForm),
            };
            let split = TensorElement::from_split(&l, &r)?;
            let mut out = TensorElement::zero(q.n(), field);
            for ((u, v), c) in split.terms() {
                out = out.add(&extend_braiding(u, v, &q, m)?.scale(c));
            }
            match cli.output {
                OutputMode::Text => println!("{out}"),
                OutputMode::Json => print_json(&ExtendReport {
                    schema: 1,
                    tau: entry_strings(&q),
                    method: method_name,
                    left: l.to_string(),
                    right: r.to_string(),
                    terms: out
                        .terms()
                        .map(|((u, v), c)| ExtendTerm {
                            coeff: c.to_string(),
                            left: u.to_string(),
                            right: v.to_string(),
                        })
                        .collect(),
                }),
            }
            Ok(0)
        }
        Verb::CheckAuto { tau, phi, method, truncation } => {
            let q = parse_braiding(tau, field)?;
            let endo = parse_endomorphism(phi, field)?;
            let (method_name, m) = match method {
                CheckFlag::Bicharacter => ("bicharacter", CheckMethod::Bicharacter),
                CheckFlag::Oracle => ("oracle", CheckMethod::TruncatedOracle(*truncation)),
            };
            let verdict = is_braided_automorphism(&endo, &q, m)?;
            match cli.output {
                OutputMode::Text => println!("braided automorphism: {verdict}"),
                OutputMode::Json => print_json(&CheckAutoReport {
                    schema: 1,
                    tau: entry_strings(&q),
                    phi: endo.to_string(),
                    method: method_name,
                    truncation: *truncation,
                    braided_automorphism: verdict,
                }),
            }
            Ok(if verdict { 0 } else { 1 })
        }
        Verb::Decompose { phi } => {
            let endo = parse_endomorphism(phi, field)?;
            let decomposition = tame_decompose(&endo)?;
            let tame = decomposition.is_some();
            match cli.output {
                OutputMode::Text => {
                    println!("tame: {tame}");
                    if let Some(d) = &decomposition {
                        println!("factors: {}", d.factors.len());
                        for (i, e) in d.factors.iter().enumerate() {
                            println!(
                                "factor {}: target {}, scale {}, addend {}",
                                i + 1,
                                e.target(),
                                e.scale(),
                                e.addend()
                            );
                        }
                        println!("residual affine: none");
                    }
                }
                OutputMode::Json => print_json(&DecomposeReport {
                    schema: 1,
                    phi: endo.to_string(),
                    tame,
                    factors: decomposition
                        .as_ref()
                        .map(|d| {
                            d.factors
                                .iter()
                                .map(|e| FactorRecord {
                                    target: e.target(),
                                    scale: e.scale().to_string(),
                                    addend: e.addend().to_string(),
                                })
                                .collect()
                        })
                        .unwrap_or_default(),
                    residual_affine: None,
                }),
            }
            Ok(if tame { 0 } else { 1 })
        }
        Verb::Classify { tau } => {
            let q = parse_braiding(tau, field)?;
            let kind = classify_aut_group(&q)?;
            let canonical = canonical_form(&q)?;
            match cli.output {
                OutputMode::Text => {
                    println!("group: {}", kind.name());
                    println!("description: {}", kind.description());
                    println!("canonical: {canonical}");
                }
                OutputMode::Json => print_json(&ClassifyReport {
                    schema: 1,
                    tau: entry_strings(&q),
                    canonical: entry_strings(&canonical),
                    group: kind.name().to_string(),
                    isomorphic_description: kind.description().to_string(),
                }),
            }
            Ok(0)
        }
        Verb::Witness { tau, seed, members, truncation } => {
            let q = parse_braiding(tau, field)?;
            let seed = match (seed, cli.output) {
                (Some(s), _) => *s,
                (None, OutputMode::Json) => {
                    eprintln!("error: --seed is required with --output json");
                    return Ok(2);
                }
                (None, OutputMode::Text) => 0,
            };
            let report = witness_suite(&q, seed, *members, *truncation)?;
            match cli.output {
                OutputMode::Text => {
                    println!("tau: {q}");
                    println!("group: {}", report.group);
                    println!("seed: {seed}");
                    for (i, case) in report.cases.iter().enumerate() {
                        println!(
                            "case {}: ok={} expected={} bicharacter={} oracle={} phi={}",
                            i + 1,
                            case.ok,
                            case.expected,
                            case.bicharacter,
                            case.oracle,
                            case.phi
                        );
                    }
                    println!("passed: {}", report.passed);
                }
                OutputMode::Json => print_json(&report),
            }
            Ok(if report.passed { 0 } else { 1 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(args: &[&str]) -> i32 {
        run(std::iter::once("freebraid").chain(args.iter().copied()))
    }

    #[test]
    fn verdict_exit_codes() {
        assert_eq!(code(&["check-yb", "--tau", "(1,1,1,1)"]), 0);
        assert_eq!(code(&["iso", "--tau", "(1,1,1,-1)", "--sigma", "(-1,1,1,1)"]), 0);
        assert_eq!(code(&["iso", "--tau", "(1,1,1,-1)", "--sigma", "(1,1,1,1)"]), 1);
        assert_eq!(code(&["canonical", "--tau", "(1,5,1/5,1)"]), 0);
        assert_eq!(code(&["canonical", "--tau", "(1,5,5,1)"]), 1);
        assert_eq!(
            code(&["check-auto", "--tau", "(1,1,1,-1)", "--phi", "(x2 ; x1)"]),
            1
        );
        assert_eq!(
            code(&["check-auto", "--tau", "(1,1,1,1)", "--phi", "(x1+x2^2 ; x2)"]),
            0
        );
        assert_eq!(code(&["decompose", "--phi", "(x1 ; x2+x1^3)"]), 0);
        assert_eq!(code(&["decompose", "--phi", "(x1+x2 ; x1+x2+1)"]), 1);
    }

    #[test]
    fn input_error_exit_codes() {
        assert_eq!(code(&["check-yb"]), 2);
        assert_eq!(code(&["check-yb", "--tau", "(1,1,1,1)", "--matrix", "[[1]]"]), 2);
        assert_eq!(code(&["classify", "--tau", "(2,1,1,1)"]), 2);
        assert_eq!(code(&["classify", "--tau", "(1,1,1"]), 2);
        assert_eq!(code(&["decompose", "--phi", "(0 ; x2)"]), 2);
        assert_eq!(code(&["no-such-verb"]), 2);
        assert_eq!(code(&["classify", "--field", "fp:4", "--tau", "(1,1,1,1)"]), 2);
        assert_eq!(code(&["classify", "--field", "fp:2", "--tau", "(1,1,1,1)"]), 2);
    }

    #[test]
    fn witness_needs_a_seed_only_in_json_mode() {
        assert_eq!(
            code(&["witness", "--tau", "(1,-1,-1,1)", "--members", "2",
                   "--truncation", "3", "--output", "json"]),
            2
        );
        assert_eq!(
            code(&["witness", "--tau", "(1,-1,-1,1)", "--members", "2",
                   "--truncation", "3"]),
            0
        );
    }

    #[test]
    fn prime_field_flag_reaches_the_scalars() {
        assert_eq!(
            code(&["classify", "--field", "fp:5", "--tau", "(4,1,1,4)"]),
            0
        );
        assert_eq!(code(&["extend", "--field", "fp:7", "--tau", "(1,3,5,1)",
                          "--left", "x1", "--right", "x2"]), 0);
    }

    #[test]
    fn help_exits_zero() {
        assert_eq!(code(&["--help"]), 0);
        assert_eq!(code(&["classify", "--help"]), 0);
    }
}
