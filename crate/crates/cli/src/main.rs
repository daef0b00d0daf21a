//! Command-line front end for `betazero`.

use betazero::algebraic::{Embedding, ModulusVerdict, RootKind, DEFAULT_PRECISION_BITS};
use betazero::automata::Automaton;
use betazero::converter::{build_converter, normalization_automaton, normalize};
use betazero::expansion::{d_beta_one, greedy_digits, ParryKind, ParryVerdict, DEFAULT_MAX_STEPS};
use betazero::spectrum::{self, f_number_probe_with, min_gap_for, FProbeBudget, FProbeOutcome, SpectrumQuery};
use betazero::word::EventuallyPeriodicWord;
use betazero::zero::{build_w, build_z, verify_zero_word, BuildOutcome, ExplorationBudget};
use betazero::{BetaContext, Error, FieldElement};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "betazero", version, about = "Automata of beta-representations of zero, greedy expansions and normalization")]
struct Cli {
    /// Working precision of root enclosures, in bits.
    #[arg(long, global = true, env = "BETAZERO_PRECISION", default_value_t = DEFAULT_PRECISION_BITS)]
    precision_bits: u32,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

#[derive(Args)]
struct PolyArg {
    /// Integer coefficients, highest degree first, e.g. `1,-1,-1`.
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long, default_value_t = 10_000)]
    max_states: usize,
    #[arg(long, default_value_t = 64)]
    max_depth: usize,
}

impl BudgetArgs {
    fn budget(&self) -> ExplorationBudget {
        ExplorationBudget { max_states: self.max_states, max_depth: self.max_depth }
    }
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    poly: PolyArg,
    #[arg(long)]
    digit_bound: u32,
    #[arg(long)]
    degree: usize,
    /// Closed window `a,b` with rational endpoints.
    #[arg(long, allow_hyphen_values = true)]
    window: String,
    /// Digits `-d..d` instead of `0..d`.
    #[arg(long)]
    signed: bool,
    /// Give up after visiting this many enumeration nodes.
    #[arg(long, default_value_t = spectrum::NODE_GUARD)]
    max_nodes: u64,
}

impl SpectrumArgs {
    fn query(&self) -> Result<SpectrumQuery, Error> {
        let (lo, hi) = parse_window(&self.window)?;
        Ok(SpectrumQuery::new(self.digit_bound, self.degree, lo, hi, self.signed)?.with_max_nodes(self.max_nodes))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Root classification, ceiling of β and the expansion of one.
    Classify {
        #[command(flatten)]
        poly: PolyArg,
    },
    /// Büchi automaton of the zero representations over `-d..d`.
    ZeroAutomaton {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long)]
        digit_bound: u32,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Automaton of the finite zero representations over `-d..d`.
    FiniteZeroAutomaton {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long)]
        digit_bound: u32,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Greedy expansion of the value of a word over the canonical alphabet.
    Normalize {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Output length; defaults to the input length.
        #[arg(long)]
        len: Option<usize>,
    },
    /// Pair automaton of equal-valued words over the canonical alphabet.
    Converter {
        #[command(flatten)]
        poly: PolyArg,
        /// Restrict the second component to greedy expansions.
        #[arg(long)]
        normalization: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Sorted spectrum values inside a window.
    Spectrum(SpectrumArgs),
    /// Minimal gaps of the spectrum inside a window, per degree.
    MinGap(SpectrumArgs),
    /// Finiteness probe for the bounded part of the signed spectrum.
    ProbeF {
        #[command(flatten)]
        poly: PolyArg,
        /// Digit bound; defaults to the ceiling of β minus one.
        #[arg(long)]
        digit_bound: Option<u32>,
        #[arg(long, default_value_t = 100_000)]
        max_values: usize,
        #[arg(long, default_value_t = 10)]
        residual_degree: usize,
    },
    /// Does an eventually periodic word have value zero?
    VerifyZero {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long)]
        digit_bound: u32,
        /// Word such as `-1,1,1` or `1(-1)`.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Greedy expansion of `x` in `[0, 1)`.
    Expand {
        #[command(flatten)]
        poly: PolyArg,
        /// A rational such as `3/4`, or field coordinates `c0,c1,…` on `1, β, …`.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 20)]
        digits: usize,
    },
}

/// What a command produced: the text for standard output, optional
/// diagnostics for standard error, and the exit code.
struct Output {
    stdout: String,
    stderr: String,
    code: u8,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, stderr: String::new(), code: 0 }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ZNotFiniteWithinBudget | Error::UndeterminedInput => 3,
        Error::SearchSpaceTooLarge(_) | Error::ExplosionGuard(_) => 4,
        Error::RootIsolation(_) => 1,
        _ => 2,
    }
}

fn context(poly: &PolyArg, bits: u32) -> Result<BetaContext, Error> {
    BetaContext::from_text(&poly.poly, bits)
}

fn parse_window(text: &str) -> Result<(BigRational, BigRational), Error> {
    let (a, b) = text.split_once(',').ok_or_else(|| Error::Parse(format!("window {text:?} is not `a,b`")))?;
    let p = |s: &str| s.trim().parse::<BigRational>().map_err(|_| Error::Parse(format!("bad rational {s:?}")));
    Ok((p(a)?, p(b)?))
}

/// Finite digit list; compact `011` or comma-separated `0,1,1`.
fn parse_digits(text: &str) -> Result<Vec<i64>, Error> {
    let text = text.trim();
    if text.contains(',') || text.contains('-') {
        text.split(',').map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad digit {t:?}")))).collect()
    } else {
        text.chars().map(|c| c.to_digit(10).map(i64::from).ok_or_else(|| Error::Parse(format!("bad digit {c:?}")))).collect()
    }
}

fn render_digits(d: &[i64]) -> String {
    if d.iter().all(|x| (0..=9).contains(x)) {
        d.iter().map(|x| x.to_string()).collect()
    } else {
        d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

fn verdict_str(v: ModulusVerdict) -> &'static str {
    match v {
        ModulusVerdict::LessThanOne => "<1",
        ModulusVerdict::EqualOne => "=1",
        ModulusVerdict::GreaterThanOne => ">1",
    }
}

fn embedding_str(e: Option<Embedding>) -> String {
    match e {
        Some(Embedding::Beta) => "beta".into(),
        Some(Embedding::Real(i)) => format!("real {i}"),
        Some(Embedding::Complex(i)) => format!("complex {i}"),
        None => "other factor".into(),
    }
}

fn kind_phrase(kind: RootKind) -> &'static str {
    match kind {
        RootKind::Pisot => "pisot",
        RootKind::Salem => "salem",
        RootKind::OtherNoUnitConjugate => "not Pisot; no unit-modulus conjugate",
        RootKind::HasUnitModulusConjugate => "not Pisot; unit-modulus conjugate",
        RootKind::BetaNotGreaterThanOne => "beta not greater than one",
        RootKind::ReducibleOrNonintegral => "reducible or nonintegral",
    }
}

fn parry_phrase(v: &ParryVerdict) -> String {
    match (&v.kind, &v.word) {
        (ParryKind::SimpleParry, Some(w)) => format!("d_beta(1)={w}; simple Parry"),
        (ParryKind::Parry, Some(w)) => format!("d_beta(1)={w}; Parry"),
        _ => format!("d_beta(1) undetermined within {DEFAULT_MAX_STEPS} steps"),
    }
}

fn classify(ctx: &BetaContext, format: Format) -> Output {
    let class = ctx.classify_roots();
    let parry = d_beta_one(ctx, DEFAULT_MAX_STEPS);
    if format == Format::Json {
        let roots: Vec<Value> = class
            .detail
            .iter()
            .map(|r| {
                let (re, im) = r.root.approx();
                json!({"re": re, "im": im, "modulus": r.verdict, "embedding": embedding_str(r.embedding)})
            })
            .collect();
        let v = json!({
            "poly": ctx.poly(),
            "minimal_poly": ctx.minimal_poly().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "irreducible": ctx.is_irreducible(),
            "kind": class.kind.as_str(),
            "ceil_beta": ctx.ceil_beta(),
            "parry": parry.kind,
            "d_beta_one": parry.word.as_ref().map(|w| w.to_string()),
            "roots": roots,
        });
        return Output::ok(format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable")));
    }
    let mut out = format!("{}; ceil={}; {}\n", kind_phrase(class.kind), ctx.ceil_beta(), parry_phrase(&parry));
    for r in &class.detail {
        let (re, im) = r.root.approx();
        out.push_str(&format!("root {re:+.9} {im:+.9}i  |z|{}  {}\n", verdict_str(r.verdict), embedding_str(r.embedding)));
    }
    Output::ok(out)
}

fn automaton_text(aut: &Automaton) -> String {
    let mut out = format!("{} states, {} edges\n", aut.num_states(), aut.num_edges());
    for (i, s) in aut.states().iter().enumerate() {
        let mut flags = Vec::new();
        if s.initial {
            flags.push("initial");
        }
        if s.terminal {
            flags.push("terminal");
        }
        out.push_str(&format!("state {i}: {} [{}]\n", s.label.pretty(), flags.join(",")));
    }
    for e in aut.edges() {
        out.push_str(&format!("{} -{}-> {}\n", e.from, e.letter, e.to));
    }
    out
}

fn render_automaton(aut: &Automaton, format: Option<Format>) -> String {
    match format.unwrap_or(Format::Json) {
        Format::Dot => aut.to_dot(),
        Format::Text | Format::Csv => automaton_text(aut),
        Format::Json => format!("{}\n", aut.to_json()),
    }
}

fn build_output(out: BuildOutcome, format: Option<Format>) -> Output {
    match out.automaton {
        Some(aut) => Output::ok(render_automaton(&aut, format)),
        None => {
            let states = out.growth.last().copied().unwrap_or(0);
            let stdout = if format == Some(Format::Json) {
                format!("{}\n", json!({"status": "budget_exceeded", "growth": out.growth}))
            } else {
                String::new()
            };
            Output { stdout, stderr: format!("budget exceeded after {states} states\n{}", out.growth_csv()), code: 3 }
        }
    }
}

fn parse_x(ctx: &BetaContext, text: &str) -> Result<FieldElement, Error> {
    if text.contains(',') {
        let x = FieldElement::parse(text)?;
        if x.degree() != ctx.degree() {
            return Err(Error::ContextMismatch);
        }
        return Ok(x);
    }
    let q = text.trim().parse::<BigRational>().map_err(|_| Error::Parse(format!("bad rational {text:?}")))?;
    Ok(ctx.from_rational(&q))
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let bits = cli.precision_bits;
    let format = cli.format;
    match &cli.command {
        Command::Classify { poly } => Ok(classify(&context(poly, bits)?, format.unwrap_or(Format::Text))),
        Command::ZeroAutomaton { poly, digit_bound, budget } => {
            let ctx = context(poly, bits)?;
            let out = build_z(&ctx, *digit_bound, budget.budget())?;
            Ok(build_output(out, format))
        }
        Command::FiniteZeroAutomaton { poly, digit_bound, budget } => {
            let ctx = context(poly, bits)?;
            let out = build_w(&ctx, *digit_bound, budget.budget())?;
            Ok(build_output(out, format))
        }
        Command::Normalize { poly, word, len } => {
            let ctx = context(poly, bits)?;
            let w = parse_digits(word)?;
            let out = normalize(&ctx, &w, len.unwrap_or(w.len()))?;
            Ok(Output::ok(match format {
                Some(Format::Json) => format!("{}\n", json!({"input": w, "output": out})),
                _ => format!("{}\n", render_digits(&out)),
            }))
        }
        Command::Converter { poly, normalization, budget } => {
            let ctx = context(poly, bits)?;
            let aut = if *normalization {
                normalization_automaton(&ctx, budget.budget())?
            } else {
                build_converter(&ctx, budget.budget())?
            };
            Ok(Output::ok(render_automaton(&aut, format)))
        }
        Command::Spectrum(a) => {
            let ctx = context(&a.poly, bits)?;
            let values = spectrum::enumerate_spectrum(&ctx, &a.query()?)?;
            let rows = values.iter().map(|x| (x.to_text(), x.pretty("β"), spectrum::decimal(&ctx, x)));
            Ok(Output::ok(match format.unwrap_or(Format::Text) {
                Format::Json => {
                    let v: Vec<Value> = rows.map(|(t, p, d)| json!({"element": t, "pretty": p, "decimal": d})).collect();
                    format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
                }
                Format::Csv => {
                    let mut s = String::from("element,decimal\n");
                    rows.for_each(|(t, _, d)| s.push_str(&format!("\"{t}\",{d}\n")));
                    s
                }
                _ => rows.map(|(_, p, d)| format!("{d}\t{p}\n")).collect(),
            }))
        }
        Command::MinGap(a) => {
            let ctx = context(&a.poly, bits)?;
            let stats = min_gap_for(&ctx, &a.query()?)?;
            Ok(Output::ok(match format.unwrap_or(Format::Csv) {
                Format::Json => {
                    let per: Vec<Value> = stats
                        .per_degree_min_gap
                        .iter()
                        .map(|g| json!({"degree": g.degree, "count": g.count, "min_gap": g.min_gap.as_ref().map(|x| x.to_text()), "min_gap_decimal": g.min_gap_decimal}))
                        .collect();
                    let v = json!({"count": stats.count, "min_gap": stats.min_gap.to_text(), "min_gap_decimal": stats.min_gap_decimal, "per_degree": per});
                    format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
                }
                Format::Text => format!("{} values; min gap {} = {}\n", stats.count, stats.min_gap_decimal, stats.min_gap.pretty("β")),
                _ => stats.to_csv(),
            }))
        }
        Command::ProbeF { poly, digit_bound, max_values, residual_degree } => {
            let ctx = context(poly, bits)?;
            let d = digit_bound.unwrap_or(ctx.canonical_digit_max() as u32);
            let out = f_number_probe_with(&ctx, d, FProbeBudget { max_values: *max_values, residual_degree: *residual_degree })?;
            let (status, code) = match out {
                FProbeOutcome::Finite(_) => ("finite", 0),
                FProbeOutcome::BudgetExceeded(_) => ("budget_exceeded", 3),
            };
            let stdout = match format {
                Some(Format::Json) => format!("{}\n", json!({"status": status, "count": out.count(), "digit_bound": d})),
                _ => format!("{status}; {} values\n", out.count()),
            };
            Ok(Output { stdout, stderr: String::new(), code })
        }
        Command::VerifyZero { poly, digit_bound, word } => {
            let ctx = context(poly, bits)?;
            let w: EventuallyPeriodicWord = word.parse()?;
            let ok = verify_zero_word(&ctx, *digit_bound, &w)?;
            Ok(Output::ok(match format {
                Some(Format::Json) => format!("{}\n", json!({"word": w.to_string(), "zero": ok})),
                _ => format!("{ok}\n"),
            }))
        }
        Command::Expand { poly, x, digits } => {
            let ctx = context(poly, bits)?;
            let x = parse_x(&ctx, x)?;
            let d = greedy_digits(&ctx, &x, *digits)?;
            Ok(Output::ok(match format {
                Some(Format::Json) => format!("{}\n", json!({"x": x.to_text(), "digits": d})),
                _ => format!("{}\n", render_digits(&d)),
            }))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            eprint!("{}", out.stderr);
            ExitCode::from(out.code)
        }
        Err(e) => {
            if cli.format == Some(Format::Json) {
                println!("{}", json!({"error": {"kind": e.kind(), "message": e.to_string()}}));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
