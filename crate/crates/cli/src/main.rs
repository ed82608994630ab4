//! `eiscomp`: tables, L-values and Eisenstein reports from the command line.
//!
//! Exit codes: 0 success, 2 validation error, 3 indeterminate numerics.

mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use eiscomp::characters::{CharError, HeckeChar};
use eiscomp::eis::{self, certificate_markdown, decimal, Certificate, EisError, EisReport};
use eiscomp::field::{QuadField, ADMISSIBLE_DISCRIMINANTS};
use eiscomp::hodge::{boundary_table, BoundaryTable, Side};
use eiscomp::lfun::{EvalConfig, LError, LSeries};
use eiscomp::weyl::{star, TorusCharGL, WeylElt};
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("indeterminate: {0}")]
    Indeterminate(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Indeterminate(_) => 3,
        }
    }
}

impl From<LError> for CliError {
    fn from(e: LError) -> Self {
        match e {
            LError::InsufficientTerms { .. } => CliError::Validation(e.to_string()),
            e if e.is_indeterminate() => CliError::Indeterminate(e.to_string()),
            e => CliError::Validation(e.to_string()),
        }
    }
}

impl From<EisError> for CliError {
    fn from(e: EisError) -> Self {
        match e {
            EisError::L(l) => l.into(),
            e => CliError::Validation(e.to_string()),
        }
    }
}

impl From<CharError> for CliError {
    fn from(e: CharError) -> Self {
        CliError::Validation(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Debug, Parser)]
#[command(name = "eiscomp", version, about = "Hecke L-functions and Eisenstein pole analysis for Picard modular surfaces")]
struct Cli {
    /// Working precision in decimal digits (at least 10).
    #[arg(long, global = true, env = "EISCOMP_DIGITS", default_value_t = 15)]
    digits: u32,
    /// Dirichlet coefficient bound; defaults to the minimum the evaluator needs.
    #[arg(long, global = true)]
    coeff_bound: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, clap::Args)]
struct Weight {
    #[arg(long, allow_hyphen_values = true)]
    k1: i64,
    #[arg(long, allow_hyphen_values = true)]
    k2: i64,
}

#[derive(Debug, clap::Args)]
struct CharArgs {
    /// Field discriminant.
    #[arg(long, allow_hyphen_values = true)]
    disc: Option<i64>,
    /// Character spec (JSON); without it the weight -3 family member for `--k` is used.
    #[arg(long = "char")]
    char_path: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Six-row boundary cohomology table.
    BoundaryTable {
        #[command(flatten)]
        weight: Weight,
        #[arg(long, default_value = "plus")]
        side: Side,
    },
    /// Root-system tables.
    Weyl {
        #[command(subcommand)]
        cmd: WeylCmd,
    },
    /// L-function evaluation.
    Lfun {
        #[command(subcommand)]
        cmd: LfunCmd,
    },
    /// Full Eisenstein report.
    Classify {
        #[command(flatten)]
        ch: CharArgs,
        #[arg(long)]
        theta_char: Option<PathBuf>,
    },
    /// Certificate type slots only.
    Certificate {
        #[command(flatten)]
        ch: CharArgs,
        #[arg(long)]
        theta_char: Option<PathBuf>,
    },
    /// Checks the twisted action and Hodge-type tables against their closed forms.
    Selftest {
        #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
enum WeylCmd {
    /// The star action of all six Weyl elements.
    Table {
        #[command(flatten)]
        weight: Weight,
    },
}

#[derive(Debug, Subcommand)]
enum LfunCmd {
    /// Value, functional-equation residual, sign and vanishing order at `s`.
    Eval {
        #[command(flatten)]
        ch: CharArgs,
        /// Arithmetic argument `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// Root number.
    Sign {
        #[command(flatten)]
        ch: CharArgs,
    },
}

struct Emitted {
    text: String,
    /// Set when the output carries undecided numerics.
    indeterminate: Option<String>,
}

impl Emitted {
    fn done(text: String) -> Self {
        Emitted { text, indeterminate: None }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable output") + "\n"
}

fn eval_config(cli: &Cli) -> Result<EvalConfig, CliError> {
    if cli.digits < 10 {
        return Err(CliError::Validation(format!("--digits must be at least 10, got {}", cli.digits)));
    }
    let mut cfg = EvalConfig::with_digits(cli.digits);
    cfg.coeff_bound = cli.coeff_bound;
    Ok(cfg)
}

fn require_disc(ch: &CharArgs) -> Result<QuadField, CliError> {
    let list = ADMISSIBLE_DISCRIMINANTS.map(|d| d.to_string()).join(", ");
    let d = ch
        .disc
        .ok_or_else(|| CliError::Validation(format!("--disc is required; admissible discriminants: {list}")))?;
    QuadField::new(d).map_err(|e| CliError::Validation(e.to_string()))
}

fn read_char(path: &PathBuf) -> Result<HeckeChar, CliError> {
    let s = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
    Ok(HeckeChar::from_json(&s)?)
}

/// The character named by the flags; `fallback` is used when neither `--char` nor `--k` is given.
fn character(ch: &CharArgs, fallback: Option<fn(QuadField) -> HeckeChar>) -> Result<HeckeChar, CliError> {
    let f = require_disc(ch)?;
    let phi = match (&ch.char_path, ch.k, fallback) {
        (Some(p), _, _) => read_char(p)?,
        (None, Some(k), _) => eis::family_character(f.disc(), k)?,
        (None, None, Some(fb)) => fb(f),
        (None, None, None) => return Err(CliError::Validation("either --char or --k is required".into())),
    };
    if phi.field().disc() != f.disc() {
        return Err(CliError::Validation(format!(
            "character is defined over d = {}, but --disc is {}",
            phi.field().disc(),
            f.disc()
        )));
    }
    Ok(phi)
}

fn parse_s(s: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::Validation(format!("--s expects re,im, got {s:?}"));
    let mut it = s.split(',').map(|x| x.trim().parse::<f64>());
    let re = it.next().ok_or_else(bad)?.map_err(|_| bad())?;
    let im = match it.next() {
        Some(x) => x.map_err(|_| bad())?,
        None => 0.0,
    };
    if it.next().is_some() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

fn cstr(z: Complex64) -> [String; 2] {
    [decimal(z.re), decimal(z.im)]
}

#[derive(Serialize)]
struct StarRow {
    w: String,
    length: u32,
    star: TorusCharGL,
}

fn weyl_table(weight: &Weight, format: Format) -> Emitted {
    let l = TorusCharGL::new(weight.k1, weight.k2);
    let rows: Vec<StarRow> = WeylElt::ALL
        .into_iter()
        .map(|w| StarRow {
            w: w.to_string(),
            length: w.length(),
            star: star(w, l),
        })
        .collect();
    Emitted::done(match format {
        Format::Json => json(&rows),
        Format::Md => {
            let mut s = format!("lambda = {l}\n\n| w | length | w ⋆ λ |\n|---|---|---|\n");
            for r in &rows {
                s.push_str(&format!("| {} | {} | {} |\n", r.w, r.length, r.star));
            }
            s
        }
    })
}

fn table(weight: &Weight, side: Side, format: Format) -> Result<Emitted, CliError> {
    let t: BoundaryTable = boundary_table(TorusCharGL::new(weight.k1, weight.k2), side)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    Ok(Emitted::done(match format {
        Format::Json => json(&t),
        Format::Md => format!("lambda = {}, side {}\n\n{}", t.lambda, side_name(t.side), t.to_markdown()),
    }))
}

#[derive(Serialize)]
struct PoleInfo {
    at: String,
    residue: String,
}

#[derive(Serialize)]
struct EvalOut {
    character: String,
    s: [String; 2],
    value: Option<[String; 2]>,
    pole: Option<PoleInfo>,
    residual: Option<String>,
    sign: Option<[String; 2]>,
    order: Option<i32>,
    notes: Vec<String>,
}

/// Keeps a result, turning undecided numerics into `None` with a note.
fn keep<T>(r: Result<T, LError>, what: &str, notes: &mut Vec<String>, undecided: &mut bool) -> Result<Option<T>, CliError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_indeterminate() => {
            *undecided = true;
            notes.push(format!("{what}: {e}"));
            Ok(None)
        }
        Err(LError::Pole { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn lfun_eval(ch: &CharArgs, s: &str, cfg: &EvalConfig, format: Format) -> Result<Emitted, CliError> {
    let phi = character(ch, Some(HeckeChar::trivial))?;
    let s = parse_s(s)?;
    let l = LSeries::hecke(&phi, cfg)?;
    let mut notes = Vec::new();
    let mut undecided = false;
    let (value, pole) = match l.l_value(s) {
        Err(LError::Pole { at, residue }) => (
            None,
            Some(PoleInfo {
                at: decimal(at),
                residue: decimal(residue),
            }),
        ),
        r => (keep(r, "value", &mut notes, &mut undecided)?.map(cstr), None),
    };
    let residual = keep(l.fe_residual(l.to_unitary(s)), "residual", &mut notes, &mut undecided)?.map(decimal);
    let sign = keep(l.sign(), "sign", &mut notes, &mut undecided)?.map(cstr);
    let order = if pole.is_some() {
        Some(-1)
    } else {
        keep(l.order_and_derivative(s, 3, cfg), "order", &mut notes, &mut undecided)?.map(|r| r.order as i32)
    };
    let out = EvalOut {
        character: phi.to_string(),
        s: cstr(s),
        value,
        pole,
        residual,
        sign,
        order,
        notes,
    };
    let text = match format {
        Format::Json => json(&out),
        Format::Md => {
            let opt2 = |v: &Option<[String; 2]>| v.as_ref().map_or("null".into(), |v| format!("{} {}", v[0], v[1]));
            let mut t = format!(
                "{}\n\n| field | value |\n|---|---|\n| s | {} {} |\n| value | {} |\n",
                out.character,
                out.s[0],
                out.s[1],
                opt2(&out.value)
            );
            if let Some(p) = &out.pole {
                t.push_str(&format!("| pole | at {}, residue {} |\n", p.at, p.residue));
            }
            t.push_str(&format!(
                "| residual | {} |\n| sign | {} |\n| order | {} |\n",
                out.residual.as_deref().unwrap_or("null"),
                opt2(&out.sign),
                out.order.map_or("null".into(), |o| o.to_string())
            ));
            for n in &out.notes {
                t.push_str(&format!("\nnote: {n}\n"));
            }
            t
        }
    };
    Ok(Emitted {
        text,
        indeterminate: undecided.then(|| out.notes.join("; ")),
    })
}

#[derive(Serialize)]
struct SignOut {
    character: String,
    sign: [String; 2],
    estimates: [[String; 2]; 2],
}

fn lfun_sign(ch: &CharArgs, cfg: &EvalConfig, format: Format) -> Result<Emitted, CliError> {
    let phi = character(ch, Some(HeckeChar::trivial))?;
    let l = LSeries::hecke(&phi, cfg)?;
    let sign = l.sign()?;
    let [e1, e2] = l.sign_estimates()?;
    let out = SignOut {
        character: phi.to_string(),
        sign: cstr(sign),
        estimates: [cstr(e1), cstr(e2)],
    };
    Ok(Emitted::done(match format {
        Format::Json => json(&out),
        Format::Md => format!(
            "{}\n\nsign: {} {}\nestimates: {} {}, {} {}\n",
            out.character,
            out.sign[0],
            out.sign[1],
            out.estimates[0][0],
            out.estimates[0][1],
            out.estimates[1][0],
            out.estimates[1][1]
        ),
    }))
}

fn report(ch: &CharArgs, theta: &Option<PathBuf>, cfg: &EvalConfig) -> Result<(EisReport, Option<String>), CliError> {
    let k = ch.k.ok_or_else(|| CliError::Validation("--k is required".into()))?;
    let phi = character(ch, None)?;
    let th = theta.as_ref().map(read_char).transpose()?;
    let rep = eis::build_report(&phi, k, th.as_ref(), cfg)?;
    let h = &rep.hypotheses;
    let undecided = [("shape", h.shape), ("sign", h.sign), ("first_order", h.first_order)]
        .iter()
        .filter(|(_, v)| v.is_none())
        .map(|(n, _)| n.to_string())
        .collect::<Vec<_>>();
    let note = if undecided.is_empty() && rep.numeric.is_some() {
        None
    } else {
        Some(format!("undecided: {}", undecided.join(", ")))
    };
    Ok((rep, note))
}

fn classify(ch: &CharArgs, theta: &Option<PathBuf>, cfg: &EvalConfig, format: Format) -> Result<Emitted, CliError> {
    let (rep, note) = report(ch, theta, cfg)?;
    Ok(Emitted {
        text: match format {
            Format::Json => rep.to_json() + "\n",
            Format::Md => rep.to_markdown(),
        },
        indeterminate: note,
    })
}

fn certificate(ch: &CharArgs, theta: &Option<PathBuf>, cfg: &EvalConfig, format: Format) -> Result<Emitted, CliError> {
    let (rep, note) = report(ch, theta, cfg)?;
    let c: Certificate = rep.certificate;
    Ok(Emitted {
        text: match format {
            Format::Json => json(&c),
            Format::Md => certificate_markdown(&c),
        },
        indeterminate: note,
    })
}

fn run(cli: &Cli) -> Result<Emitted, CliError> {
    let cfg = eval_config(cli)?;
    match &cli.cmd {
        Cmd::BoundaryTable { weight, side } => table(weight, *side, cli.format),
        Cmd::Weyl { cmd: WeylCmd::Table { weight } } => Ok(weyl_table(weight, cli.format)),
        Cmd::Lfun { cmd: LfunCmd::Eval { ch, s } } => lfun_eval(ch, s, &cfg, cli.format),
        Cmd::Lfun { cmd: LfunCmd::Sign { ch } } => lfun_sign(ch, &cfg, cli.format),
        Cmd::Classify { ch, theta_char } => classify(ch, theta_char, &cfg, cli.format),
        Cmd::Certificate { ch, theta_char } => certificate(ch, theta_char, &cfg, cli.format),
        Cmd::Selftest { seed } => {
            let r = selftest::run(*seed);
            let text = match cli.format {
                Format::Json => json(&r),
                Format::Md => r.to_markdown(),
            };
            if r.passed() {
                Ok(Emitted::done(text))
            } else {
                print!("{text}");
                Err(CliError::Validation("selftest failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.output {
                Some(p) => std::fs::write(p, &out.text).map_err(|e| format!("cannot write {}: {e}", p.display())),
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            match out.indeterminate {
                Some(why) => {
                    eprintln!("indeterminate: {why}");
                    ExitCode::from(3)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Plus => "plus",
        Side::Minus => "minus",
    }
}
