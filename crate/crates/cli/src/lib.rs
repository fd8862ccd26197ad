//! Command line front end for the torusfill library.
//!
//! Every subcommand produces a report with three parts: a `result`
//! payload, the list of `citations` justifying any definite claim in it,
//! and `warnings` for anything inconclusive. The report prints as
//! indented text by default and as pretty JSON with `--json`; JSON key
//! order is fixed, so identical invocations produce identical bytes.
//!
//! Exit codes: 0 for a definite answer, 3 when the answer contains an
//! Unknown (exhausted search budgets, or a sufficient test that found no
//! witness), 2 for usage errors and inputs outside a subcommand's domain.

use std::ffi::OsString;
use std::fmt::Display;
use std::fs;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use torusfill::fillability::{
    cobordism_reduce, embeddable_sufficient, handle_ledger, universally_tight_divisor_report,
    verdict_with_budget, ContactDescriptor, EmbedOutcome, FillError, VerdictBudget,
    CITE_DIVISOR_TIGHT, CITE_EMBEDDABLE, CITE_NECESSARY,
};
use torusfill::homology::{h1_torus_bundle, torsion_annihilator, w_ledger_parabolic};
use torusfill::mcgwords::{
    bundled_derivation, is_positive_factorization, parse_checkpoints, parse_script,
    verify_derivation, DerivationOutcome, TwistWord,
};
use torusfill::seqcalc::{
    decompose_negative_hyperbolic, eval_a, parabolic_normal_form, rho, DSeq, DecomposeBudget,
    Decomposition,
};
use torusfill::sl2z::{classify, Mat2, TraceKind, TraceSign};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

/// Captured run of the CLI: exit code plus both output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliRun {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser)]
#[command(
    name = "torusfill",
    version,
    about = "Fillability calculator for tight contact structures on torus bundles"
)]
struct Cli {
    /// Emit the report as JSON instead of indented text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a monodromy matrix by trace kind and sign.
    Classify {
        /// Matrix as "a,b;c,d" or "[[a,b],[c,d]]".
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// First homology of the torus bundle with the given monodromy.
    H1 {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Conjugacy normal form: sign and index for parabolic monodromies,
    /// a surgery sequence for hyperbolic ones.
    #[command(name = "normal-form")]
    NormalForm {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        /// Largest entry sum tried by the sequence search.
        #[arg(long, allow_negative_numbers = true)]
        budget: Option<i64>,
        /// Entry bound for the conjugator search.
        #[arg(long, allow_negative_numbers = true)]
        bound: Option<i64>,
    },
    /// Reversal dual of a surgery sequence, in block form.
    Rho {
        /// Sequence as comma-separated entries, e.g. "5,2,2,3".
        #[arg(long)]
        seq: String,
    },
    /// Round-by-round reduction of a surgery sequence to its base form,
    /// one handle per round.
    Reduce {
        #[arg(long)]
        seq: String,
    },
    /// Handle bookkeeping: the reduction ledger of a sequence (--seq) or
    /// the parabolic cobordism ledger for a twisting index (--n).
    Ledger {
        #[arg(long)]
        seq: Option<String>,
        #[arg(long, allow_negative_numbers = true)]
        n: Option<i64>,
    },
    /// Fillability verdict (weak / strong / Stein) for a named tight
    /// structure.
    Verdict {
        /// Which family: xi, xi-prime, or eta.
        #[arg(long)]
        structure: Structure,
        /// Twisting index (parabolic xi, xi-prime, eta).
        #[arg(long, allow_negative_numbers = true)]
        n: Option<i64>,
        /// Twisting parameter for xi; odd and positive, default 1.
        #[arg(long, allow_negative_numbers = true)]
        m: Option<i64>,
        /// Surgery sequence d for hyperbolic xi; the monodromy is -A(d).
        #[arg(long)]
        seq: Option<String>,
        /// Explicit monodromy matrix for xi.
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
        /// Largest entry sum tried by the sequence search.
        #[arg(long, allow_negative_numbers = true)]
        budget: Option<i64>,
        /// Entry bound for the conjugator search.
        #[arg(long, allow_negative_numbers = true)]
        bound: Option<i64>,
    },
    /// Sufficient embeddability test for the reversal dual of a sequence.
    #[command(name = "embed-search")]
    EmbedSearch {
        #[arg(long)]
        seq: String,
    },
    /// Universal tightness report for a circular spherical divisor with
    /// the given self-intersections.
    Divisor {
        /// Self-intersections as comma-separated integers, e.g. "0,0".
        #[arg(long, allow_hyphen_values = true)]
        e: String,
    },
    /// Verify a relation-by-relation derivation of twist words. With no
    /// flags, checks the derivation bundled with the library.
    #[command(name = "mcg-verify")]
    McgVerify {
        /// Starting twist word, e.g. "a1 e a2 a1 e a2 d1^-1".
        #[arg(long)]
        word: Option<String>,
        /// File with one rewrite move per line, e.g. "COMMUTE@3".
        #[arg(long)]
        script: Option<PathBuf>,
        /// File with the expected word after each move, one per line.
        #[arg(long)]
        checkpoints: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy)]
enum Structure {
    Xi,
    XiPrime,
    Eta,
}

impl Structure {
    fn flag_name(self) -> &'static str {
        match self {
            Structure::Xi => "xi",
            Structure::XiPrime => "xi-prime",
            Structure::Eta => "eta",
        }
    }
}

/// Report envelope printed by every subcommand.
#[derive(Serialize)]
struct Report {
    result: Value,
    citations: Vec<String>,
    warnings: Vec<String>,
}

struct Outcome {
    result: Value,
    citations: Vec<String>,
    warnings: Vec<String>,
    code: i32,
}

struct UsageError(String);

fn usage<E: Display>(err: E) -> UsageError {
    UsageError(err.to_string())
}

/// Run the CLI on the given argv (including the program name) and capture
/// the exit code and both output streams.
pub fn execute<I, S>(argv: I) -> CliRun
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let rendered = err.to_string();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliRun {
                    code: EXIT_OK,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => CliRun {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    match run_command(cli.command) {
        Ok(outcome) => {
            let report = Report {
                result: outcome.result,
                citations: outcome.citations,
                warnings: outcome.warnings,
            };
            CliRun {
                code: outcome.code,
                stdout: render_report(&report, cli.json),
                stderr: String::new(),
            }
        }
        Err(UsageError(message)) => CliRun {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        },
    }
}

fn run_command(command: Command) -> Result<Outcome, UsageError> {
    match command {
        Command::Classify { matrix } => cmd_classify(&matrix),
        Command::H1 { matrix } => cmd_h1(&matrix),
        Command::NormalForm {
            matrix,
            budget,
            bound,
        } => cmd_normal_form(&matrix, budget, bound),
        Command::Rho { seq } => cmd_rho(&seq),
        Command::Reduce { seq } => cmd_reduce(&seq),
        Command::Ledger { seq, n } => cmd_ledger(seq.as_deref(), n),
        Command::Verdict {
            structure,
            n,
            m,
            seq,
            matrix,
            budget,
            bound,
        } => cmd_verdict(
            structure,
            n,
            m,
            seq.as_deref(),
            matrix.as_deref(),
            budget,
            bound,
        ),
        Command::EmbedSearch { seq } => cmd_embed_search(&seq),
        Command::Divisor { e } => cmd_divisor(&e),
        Command::McgVerify {
            word,
            script,
            checkpoints,
        } => cmd_mcg_verify(word.as_deref(), script.as_deref(), checkpoints.as_deref()),
    }
}

fn val<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report payloads serialize to JSON")
}

fn parse_matrix(s: &str) -> Result<Mat2, UsageError> {
    s.parse::<Mat2>().map_err(usage)
}

fn parse_seq(s: &str) -> Result<DSeq, UsageError> {
    s.parse::<DSeq>().map_err(usage)
}

fn decompose_budget(budget: Option<i64>, bound: Option<i64>) -> DecomposeBudget {
    let mut b = DecomposeBudget::default();
    if let Some(sum) = budget {
        b.max_entry_sum = sum;
    }
    if let Some(entries) = bound {
        b.conjugator_bound = entries;
    }
    b
}

fn cmd_classify(matrix: &str) -> Result<Outcome, UsageError> {
    let m = parse_matrix(matrix)?;
    let class = classify(&m).map_err(usage)?;
    Ok(Outcome {
        result: val(&class),
        citations: vec![],
        warnings: vec![],
        code: EXIT_OK,
    })
}

fn cmd_h1(matrix: &str) -> Result<Outcome, UsageError> {
    let m = parse_matrix(matrix)?;
    if !m.is_sl2() {
        return Err(UsageError(format!("matrix {m} must have determinant 1")));
    }
    let result = json!({
        "monodromy": m,
        "group": h1_torus_bundle(&m),
        "annihilator": torsion_annihilator(&m),
    });
    Ok(Outcome {
        result,
        citations: vec![],
        warnings: vec![],
        code: EXIT_OK,
    })
}

fn cmd_normal_form(
    matrix: &str,
    budget: Option<i64>,
    bound: Option<i64>,
) -> Result<Outcome, UsageError> {
    let m = parse_matrix(matrix)?;
    let class = classify(&m).map_err(usage)?;
    match class.kind {
        TraceKind::Elliptic => Err(UsageError(
            "no conjugacy normal form for elliptic monodromies (|trace| < 2)".to_string(),
        )),
        TraceKind::Parabolic => {
            let nf = parabolic_normal_form(&m).map_err(usage)?;
            Ok(Outcome {
                result: json!({
                    "form": "parabolic",
                    "sign": nf.sign,
                    "n": nf.n,
                    "conjugator": nf.conjugator,
                }),
                citations: vec![],
                warnings: vec![],
                code: EXIT_OK,
            })
        }
        TraceKind::Hyperbolic => {
            let (target, form) = if class.sign == TraceSign::Negative {
                (m, "negative-hyperbolic")
            } else {
                (-m, "positive-hyperbolic")
            };
            let b = decompose_budget(budget, bound);
            match decompose_negative_hyperbolic(&target, &b).map_err(usage)? {
                Decomposition::Found { seq, conjugator } => Ok(Outcome {
                    result: json!({
                        "form": form,
                        "seq": seq,
                        "conjugator": conjugator,
                    }),
                    citations: vec![],
                    warnings: vec![],
                    code: EXIT_OK,
                }),
                Decomposition::Unknown => Ok(Outcome {
                    result: json!({ "form": "unknown" }),
                    citations: vec![],
                    warnings: vec![
                        "the conjugacy search exhausted its budgets without a decision; \
                         raise --budget or --bound"
                            .to_string(),
                    ],
                    code: EXIT_UNKNOWN,
                }),
            }
        }
    }
}

fn cmd_rho(seq: &str) -> Result<Outcome, UsageError> {
    let d = parse_seq(seq)?;
    let image = rho(&d).map_err(usage)?;
    Ok(Outcome {
        result: json!({ "input": d, "rho": image }),
        citations: vec![],
        warnings: vec![],
        code: EXIT_OK,
    })
}

fn cmd_reduce(seq: &str) -> Result<Outcome, UsageError> {
    let d = parse_seq(seq)?;
    let reduction = cobordism_reduce(&d).map_err(usage)?;
    Ok(Outcome {
        result: val(&reduction),
        citations: vec![],
        warnings: vec![],
        code: EXIT_OK,
    })
}

fn cmd_ledger(seq: Option<&str>, n: Option<i64>) -> Result<Outcome, UsageError> {
    match (seq, n) {
        (Some(seq), None) => {
            let d = parse_seq(seq)?;
            let ledger = handle_ledger(&d).map_err(usage)?;
            Ok(Outcome {
                result: val(&ledger),
                citations: vec![CITE_NECESSARY.to_string()],
                warnings: vec![],
                code: EXIT_OK,
            })
        }
        (None, Some(n)) => {
            let cobordism = w_ledger_parabolic(n).map_err(usage)?;
            let citations = cobordism.betti.provenance.clone();
            Ok(Outcome {
                result: val(&cobordism),
                citations,
                warnings: vec![],
                code: EXIT_OK,
            })
        }
        _ => Err(UsageError(
            "provide exactly one of --seq and --n".to_string(),
        )),
    }
}

fn cmd_verdict(
    structure: Structure,
    n: Option<i64>,
    m: Option<i64>,
    seq: Option<&str>,
    matrix: Option<&str>,
    budget: Option<i64>,
    bound: Option<i64>,
) -> Result<Outcome, UsageError> {
    let descriptor = match structure {
        Structure::Xi => {
            let sources = [n.is_some(), seq.is_some(), matrix.is_some()]
                .iter()
                .filter(|&&present| present)
                .count();
            if sources != 1 {
                return Err(UsageError(
                    "structure xi needs exactly one of --n, --seq, --matrix".to_string(),
                ));
            }
            let monodromy = if let Some(n) = n {
                -Mat2::T.pow(n)
            } else if let Some(seq) = seq {
                -eval_a(&parse_seq(seq)?)
            } else {
                parse_matrix(matrix.expect("checked above"))?
            };
            let twisting = m.unwrap_or(1);
            ContactDescriptor::xi_a(monodromy, twisting).map_err(usage)?
        }
        Structure::XiPrime | Structure::Eta => {
            if m.is_some() || seq.is_some() || matrix.is_some() {
                return Err(UsageError(format!(
                    "structure {} takes only --n",
                    structure.flag_name()
                )));
            }
            let n = n.ok_or_else(|| {
                UsageError(format!("structure {} requires --n", structure.flag_name()))
            })?;
            match structure {
                Structure::XiPrime => ContactDescriptor::xi_prime(n).map_err(usage)?,
                _ => ContactDescriptor::eta(n),
            }
        }
    };
    let verdict_budget = VerdictBudget {
        decompose: decompose_budget(budget, bound),
        ..VerdictBudget::default()
    };
    let outcome = verdict_with_budget(&descriptor, &verdict_budget);
    let code = if outcome.verdict.has_unknown() {
        EXIT_UNKNOWN
    } else {
        EXIT_OK
    };
    Ok(Outcome {
        result: val(&outcome.verdict),
        citations: outcome.verdict.citations().to_vec(),
        warnings: outcome.warnings,
        code,
    })
}

fn cmd_embed_search(seq: &str) -> Result<Outcome, UsageError> {
    let d = parse_seq(seq)?;
    let outcome = embeddable_sufficient(&d).map_err(usage)?;
    let (citations, warnings, code) = match &outcome {
        EmbedOutcome::RuleS1 { citation } => (vec![citation.clone()], vec![], EXIT_OK),
        EmbedOutcome::Witness { .. } => (vec![CITE_EMBEDDABLE.to_string()], vec![], EXIT_OK),
        EmbedOutcome::NoneFound => (
            vec![],
            vec![
                "no embedding witness found within the search region; the test is \
                 sufficient only, so this is not a non-embeddability claim"
                    .to_string(),
            ],
            EXIT_UNKNOWN,
        ),
    };
    Ok(Outcome {
        result: val(&outcome),
        citations,
        warnings,
        code,
    })
}

fn parse_i64_list(s: &str) -> Result<Vec<i64>, UsageError> {
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Err(UsageError("empty list of self-intersections".to_string()));
    }
    trimmed
        .split(',')
        .map(|cell| {
            cell.trim()
                .parse::<i64>()
                .map_err(|err| UsageError(format!("bad entry {cell:?}: {err}")))
        })
        .collect()
}

fn cmd_divisor(e: &str) -> Result<Outcome, UsageError> {
    let entries = parse_i64_list(e)?;
    match universally_tight_divisor_report(&entries) {
        Ok(report) => {
            let citations = report.citations.clone();
            Ok(Outcome {
                result: val(&report),
                citations,
                warnings: vec![],
                code: EXIT_OK,
            })
        }
        Err(FillError::HypothesisFailed { reason }) => Ok(Outcome {
            result: json!({
                "verdict": "hypotheses not satisfied",
                "reason": reason,
            }),
            citations: vec![CITE_DIVISOR_TIGHT.to_string()],
            warnings: vec![],
            code: EXIT_OK,
        }),
        Err(other) => Err(usage(other)),
    }
}

fn cmd_mcg_verify(
    word: Option<&str>,
    script: Option<&std::path::Path>,
    checkpoints: Option<&std::path::Path>,
) -> Result<Outcome, UsageError> {
    let (word, moves, checkpoints) = match (word, script, checkpoints) {
        (None, None, None) => bundled_derivation(),
        (Some(word), Some(script), Some(checkpoints)) => {
            let word = word.parse::<TwistWord>().map_err(usage)?;
            let script_text = fs::read_to_string(script)
                .map_err(|err| UsageError(format!("cannot read {}: {err}", script.display())))?;
            let moves = parse_script(&script_text).map_err(usage)?;
            let checkpoint_text = fs::read_to_string(checkpoints).map_err(|err| {
                UsageError(format!("cannot read {}: {err}", checkpoints.display()))
            })?;
            let checkpoints = parse_checkpoints(&checkpoint_text).map_err(usage)?;
            (word, moves, checkpoints)
        }
        _ => {
            return Err(UsageError(
                "provide --word, --script, and --checkpoints together, or none of them \
                 for the bundled derivation"
                    .to_string(),
            ))
        }
    };
    let outcome = verify_derivation(&word, &moves, &checkpoints);
    let last = checkpoints.last().unwrap_or(&word);
    let factorization = match &outcome {
        DerivationOutcome::Verified => Some(is_positive_factorization(last)),
        DerivationOutcome::Failed { .. } => None,
    };
    Ok(Outcome {
        result: json!({
            "outcome": outcome,
            "moves": moves.len(),
            "checkpoints": checkpoints.len(),
            "final_word": last,
            "factorization": factorization,
        }),
        citations: vec![],
        warnings: vec![],
        code: EXIT_OK,
    })
}

fn render_report(report: &Report, as_json: bool) -> String {
    if as_json {
        let mut out = serde_json::to_string_pretty(report).expect("reports serialize to JSON");
        out.push('\n');
        out
    } else {
        let mut out = String::new();
        render_block(&val(report), 0, &mut out);
        out
    }
}

fn scalar_repr(value: &Value) -> Option<String> {
    match value {
        Value::Null => Some("null".to_string()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// Indented text rendering of a report value: scalars on "key: value"
/// lines, arrays as "- item" lines, nested structures indented two
/// spaces per level.
fn render_block(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (key, item) in map {
                if let Some(scalar) = scalar_repr(item) {
                    out.push_str(&format!("{pad}{key}: {scalar}\n"));
                } else if matches!(item, Value::Array(items) if items.is_empty()) {
                    out.push_str(&format!("{pad}{key}: (none)\n"));
                } else {
                    out.push_str(&format!("{pad}{key}:\n"));
                    render_block(item, indent + 1, out);
                }
            }
        }
        Value::Array(items) => {
            let item_pad = "  ".repeat(indent + 1);
            for item in items {
                if let Some(scalar) = scalar_repr(item) {
                    out.push_str(&format!("{pad}- {scalar}\n"));
                } else {
                    let mut sub = String::new();
                    render_block(item, indent + 1, &mut sub);
                    match sub.strip_prefix(item_pad.as_str()) {
                        Some(rest) => out.push_str(&format!("{pad}- {rest}")),
                        None => {
                            out.push_str(&format!("{pad}-\n"));
                            out.push_str(&sub);
                        }
                    }
                }
            }
        }
        other => {
            if let Some(scalar) = scalar_repr(other) {
                out.push_str(&format!("{pad}{scalar}\n"));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> CliRun {
        execute(std::iter::once("torusfill").chain(args.iter().copied()))
    }

    fn report(run: &CliRun) -> Value {
        serde_json::from_str(&run.stdout).expect("stdout is a JSON report")
    }

    #[test]
    fn usage_errors_exit_2() {
        let cases: &[&[&str]] = &[
            &["verdict", "--structure", "xi", "--m", "2", "--n", "-1"],
            &["verdict", "--structure", "xi"],
            &["verdict", "--structure", "xi", "--n", "-1", "--seq", "7,2"],
            &["verdict", "--structure", "xi-prime"],
            &["verdict", "--structure", "xi-prime", "--n", "3"],
            &["verdict", "--structure", "eta", "--m", "1", "--n", "0"],
            &["ledger"],
            &["ledger", "--seq", "7,2", "--n", "-6"],
            &["ledger", "--n", "-4"],
            &["normal-form", "--matrix", "0,1;-1,0"],
            &["normal-form", "--matrix", "1,0;0,2"],
            &["h1", "--matrix", "1,0;0,-1"],
            &["rho", "--seq", "2,2"],
            &["rho", "--seq", "7,x"],
            &["divisor", "--e", ""],
            &["mcg-verify", "--word", "a1 e"],
            &["classify", "--matrix", "nonsense"],
        ];
        for args in cases {
            let out = run(args);
            assert_eq!(out.code, EXIT_USAGE, "args {args:?}: {}", out.stderr);
            assert!(out.stdout.is_empty(), "args {args:?} wrote to stdout");
            assert!(!out.stderr.is_empty(), "args {args:?} wrote no error");
        }
    }

    #[test]
    fn verdict_parabolic_strong_no() {
        let out = run(&["--json", "verdict", "--structure", "xi", "--n", "-5"]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        let report = report(&out);
        assert_eq!(report["result"]["weak"], "Yes");
        assert_eq!(report["result"]["strong"], "No");
        assert_eq!(report["result"]["stein"], "No");
        let cites = report["citations"].as_array().expect("citations array");
        assert!(
            cites
                .iter()
                .any(|c| c.as_str().unwrap().contains("Theorem 1.1")),
            "missing citation: {cites:?}"
        );
    }

    #[test]
    fn verdict_budget_exhaustion_exits_3() {
        let out = run(&[
            "--json",
            "verdict",
            "--structure",
            "xi",
            "--seq",
            "10,2",
            "--budget",
            "5",
        ]);
        assert_eq!(out.code, EXIT_UNKNOWN, "{}", out.stderr);
        let report = report(&out);
        assert_eq!(report["result"]["strong"], "Unknown");
        assert!(!report["warnings"].as_array().unwrap().is_empty());
    }

    #[test]
    fn embed_none_found_exits_3() {
        let out = run(&["--json", "embed-search", "--seq", "8"]);
        assert_eq!(out.code, EXIT_UNKNOWN);
        let report = report(&out);
        assert_eq!(report["result"], "NoneFound");
        assert!(!report["warnings"].as_array().unwrap().is_empty());
    }

    #[test]
    fn h1_reports_group_and_annihilator() {
        let out = run(&["--json", "h1", "--matrix", "[[2,1],[1,1]]"]);
        assert_eq!(out.code, EXIT_OK);
        let report = report(&out);
        assert_eq!(report["result"]["group"], "Z");
        assert_eq!(report["result"]["annihilator"], -1);
    }

    #[test]
    fn rho_matches_reversal_dual() {
        let out = run(&["--json", "rho", "--seq", "5,2,2,3"]);
        assert_eq!(out.code, EXIT_OK);
        let report = report(&out);
        assert_eq!(report["result"]["rho"], "3,5,2,2");
    }

    #[test]
    fn text_mode_renders_lines() {
        let out = run(&["rho", "--seq", "5,2,2,3"]);
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.contains("result:"), "{}", out.stdout);
        assert!(out.stdout.contains("rho: 3,5,2,2"), "{}", out.stdout);
        assert!(out.stdout.contains("warnings: (none)"), "{}", out.stdout);
    }

    #[test]
    fn mcg_verify_bundled_derivation() {
        let out = run(&["--json", "mcg-verify"]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        let report = report(&out);
        assert_eq!(report["result"]["outcome"], "Verified");
        let blocks = report["result"]["factorization"]["Positive"]
            .as_array()
            .expect("positive factorization");
        assert_eq!(blocks.len(), 4);
    }

    #[test]
    fn json_output_is_deterministic() {
        let args = &["--json", "verdict", "--structure", "xi", "--seq", "5,2,2,3"];
        let first = run(args);
        let second = run(args);
        assert_eq!(first.stdout, second.stdout);
        assert_eq!(first.code, second.code);
    }

    #[test]
    fn help_exits_zero() {
        let out = run(&["--help"]);
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.contains("torusfill"));
    }
}
