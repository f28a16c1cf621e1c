//! `gugp`: generate, reduce, solve and verify signed unique games.
//!
//! Reports are `KEY=VALUE` lines on stdout. Exit codes: 0 success or PASS,
//! 1 usage or I/O error, 2 verification FAIL, 3 capacity exceeded.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gugp_core::format::{parse_gugp, parse_lab, parse_rel, parse_t22, parse_tsp};
use gugp_core::reduce::{
    pwt1_gadget, repeat_max3cut, strip_negative, tsp_to_min_nwa, two2two_to_pwt_half, RepeatCaps,
    RepeatedInstance, SimpleGraph,
};
use gugp_core::solve::DEFAULT_CAP;
use gugp_core::verify::{self, summarize, DEFAULT_CHECK_CAP};
use gugp_core::{
    brute_force, brute_force_relational, labeling_value, local_search_half, metrics, parse,
    relational_satisfied_weight, satisfied_weight, unsatisfied_weight, Document, Error, Family,
    GenSpec, Labeling, LocalSearchOptions, Objective, Rational, SolveResult, Verdict, VerifyReport,
};

#[derive(Parser)]
#[command(
    name = "gugp",
    version,
    about = "Workbench for unique games with signed weights"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded random instance.
    Gen(GenArgs),
    /// Apply a reduction.
    Reduce {
        #[command(subcommand)]
        which: ReduceCmd,
    },
    /// Solve an instance exactly or by local search.
    Solve {
        #[command(subcommand)]
        which: SolveCmd,
    },
    /// Evaluate a labeling.
    Eval {
        #[command(flatten)]
        io: InArgs,
        #[arg(long)]
        labeling: PathBuf,
        #[arg(long)]
        objective: Option<Objective>,
    },
    /// Print W+, W-, Σ and the negative/positive ratio.
    Metrics {
        #[command(flatten)]
        io: InArgs,
    },
    /// Run an exhaustive check.
    Verify {
        #[command(subcommand)]
        which: VerifyCmd,
    },
}

#[derive(Args)]
struct InArgs {
    /// Input file (any supported format).
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Args)]
struct IoArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    /// random-gugp, random-tsp, planted-3col or random-t22.
    family: Family,
    #[arg(long)]
    n: usize,
    /// Label count (random-gugp) or half label count (random-t22).
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    edges: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// All weights negative (random-gugp).
    #[arg(long)]
    nwa: bool,
    /// Upper bound on |W-|/W+ (random-gugp).
    #[arg(long)]
    max_ratio: Option<Rational>,
    /// Plant a satisfying labeling (random-t22).
    #[arg(long)]
    satisfiable: bool,
    /// Largest TSP weight (random-tsp).
    #[arg(long, default_value_t = 10)]
    max_weight: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Where to write the planted labeling, if the family plants one.
    #[arg(long)]
    planted_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ReduceCmd {
    /// TSP file to an all-negative unique game.
    TspNwa(IoArgs),
    /// Max 3-Cut relational file to its l-fold parallel repetition.
    Repeat3cut {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long)]
        l: usize,
    },
    /// Repeated Max 3-Cut file to the 3^l-edge bundle gadget.
    Pwt1(IoArgs),
    /// 2-to-2 file to the 2k-edge bundle gadget.
    PwtHalf(IoArgs),
    /// Drop every negative edge of a unique game.
    StripNeg(IoArgs),
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    io: IoArgs,
    #[arg(long)]
    objective: Option<Objective>,
    #[arg(long)]
    cap: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum SolveCmd {
    /// Exhaustive optimum (relational files maximize the satisfied fraction).
    Brute(SolveArgs),
    /// Factor-2 local search for all-negative games (objective max-nwa).
    Local2(SolveArgs),
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Bound on enumerated cases.
    #[arg(long, default_value_t = DEFAULT_CHECK_CAP)]
    cap: u64,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Bundle, indicator, metric and (with --source) value-transfer checks.
    GadgetPwt1 {
        #[command(flatten)]
        check: CheckArgs,
        /// The repeated Max 3-Cut instance the gadget was built from.
        #[arg(long)]
        source: Option<PathBuf>,
    },
    /// Bundle, indicator, metric and value-transfer checks for a 2-to-2 gadget.
    GadgetPwtHalf {
        #[command(flatten)]
        check: CheckArgs,
        /// The 2-to-2 instance the gadget was built from.
        #[arg(long)]
        source: PathBuf,
    },
    /// Optimum shift caused by dropping negative edges.
    StripBounds(CheckArgs),
    /// Local-search guarantee on an all-negative game.
    HalfGuarantee {
        #[command(flatten)]
        check: CheckArgs,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// TSP optimum versus the reduced game's optimum.
    TspEquiv(CheckArgs),
    /// Smoothness of a projection game.
    Smoothness {
        #[command(flatten)]
        check: CheckArgs,
        /// Expected η; the verdict is FAIL when it differs.
        #[arg(long)]
        expect: Option<Rational>,
    },
}

/// Everything that ends a run early.
enum Failure {
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Run<T = ()> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Run<String> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Run {
    fs::write(path, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}

/// Writes an instance to `--out`, or to stdout when absent.
fn emit(out: &mut Vec<String>, target: Option<&Path>, doc: &Document) -> Run {
    let text = doc.serialize();
    match target {
        Some(p) => {
            write_file(p, &text)?;
            out.push(format!("FORMAT={}", doc.format().tag()));
            out.push(format!("OUT={}", p.display()));
        }
        None => out.push(text.trim_end().to_string()),
    }
    Ok(())
}

fn ratio_text(r: &Option<Rational>) -> String {
    r.as_ref()
        .map_or("UNDEFINED".to_string(), Rational::to_string)
}

fn labels_text(f: &Labeling) -> String {
    f.values()
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let mut lines = Vec::new();
    let code = match run(cli.command, &mut lines) {
        Ok(code) => code,
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            if matches!(e, Error::Capacity { .. }) {
                3
            } else {
                1
            }
        }
    };
    let mut stdout = io::stdout().lock();
    for l in &lines {
        let _ = writeln!(stdout, "{l}");
    }
    ExitCode::from(code)
}

fn run(cmd: Command, out: &mut Vec<String>) -> Run<u8> {
    match cmd {
        Command::Gen(a) => gen(a, out).map(|_| 0),
        Command::Reduce { which } => reduce(which, out).map(|_| 0),
        Command::Solve { which } => solve(which, out).map(|_| 0),
        Command::Eval {
            io,
            labeling,
            objective,
        } => eval(&io.input, &labeling, objective, out).map(|_| 0),
        Command::Metrics { io } => {
            let g = parse_gugp(&read(&io.input)?)?;
            let m = metrics(&g);
            out.push(format!("N={}", g.n()));
            out.push(format!("K={}", g.k()));
            out.push(format!("EDGES={}", g.edges().len()));
            out.push(format!("WPLUS={}", m.w_plus));
            out.push(format!("WMINUS={}", m.w_minus));
            out.push(format!("SIGMA={}", m.sigma));
            out.push(format!("RATIO={}", ratio_text(&m.ratio)));
            Ok(0)
        }
        Command::Verify { which } => verify_cmd(which, out),
    }
}

fn gen(a: GenArgs, out: &mut Vec<String>) -> Run {
    let spec = GenSpec {
        family: a.family,
        n: a.n,
        k: a.k,
        edges: a.edges,
        seed: a.seed,
        nwa: a.nwa,
        max_ratio: a.max_ratio,
        satisfiable: a.satisfiable,
        max_weight: a.max_weight,
    };
    let generated = gugp_core::generate(&spec)?;
    if let Some(p) = &a.planted_out {
        let f = generated
            .planted
            .as_ref()
            .ok_or_else(|| Error::Usage("this family plants no labeling".into()))?;
        write_file(p, &Document::Lab(f.clone()).serialize())?;
    }
    emit(out, a.out.as_deref(), &generated.document)
}

fn reduce(which: ReduceCmd, out: &mut Vec<String>) -> Run {
    let caps = RepeatCaps::default();
    let (io, doc, bundles) = match which {
        ReduceCmd::TspNwa(io) => {
            let (g, b) = tsp_to_min_nwa(&parse_tsp(&read(&io.input)?)?)?;
            (io, Document::Gugp(g), Some(b.len()))
        }
        ReduceCmd::Repeat3cut { io, l } => {
            let base = SimpleGraph::from_max3cut(&parse_rel(&read(&io.input)?)?)?;
            let r = repeat_max3cut(&base, l, &caps)?;
            (io, Document::Rel(r.into_instance()), None)
        }
        ReduceCmd::Pwt1(io) => {
            let r = RepeatedInstance::from_relational(parse_rel(&read(&io.input)?)?)?;
            let (g, b) = pwt1_gadget(&r, &caps)?;
            (io, Document::Gugp(g), Some(b.len()))
        }
        ReduceCmd::PwtHalf(io) => {
            let (g, b) = two2two_to_pwt_half(&parse_t22(&read(&io.input)?)?)?;
            (io, Document::Gugp(g), Some(b.len()))
        }
        ReduceCmd::StripNeg(io) => {
            let g = strip_negative(&parse_gugp(&read(&io.input)?)?)?;
            (io, Document::Gugp(g), None)
        }
    };
    emit(out, io.out.as_deref(), &doc)?;
    if io.out.is_some() {
        if let Some(b) = bundles {
            out.push(format!("BUNDLES={b}"));
        }
    }
    Ok(())
}

fn push_solution(
    out: &mut Vec<String>,
    r: &SolveResult,
    visited_key: &str,
    target: Option<&Path>,
) -> Run {
    out.push(format!("VAL={}", r.value));
    out.push(format!("LABELING={}", labels_text(&r.labeling)));
    out.push(format!("{visited_key}={}", r.visited));
    if let Some(p) = target {
        write_file(p, &Document::Lab(r.labeling.clone()).serialize())?;
        out.push(format!("OUT={}", p.display()));
    }
    Ok(())
}

fn solve(which: SolveCmd, out: &mut Vec<String>) -> Run {
    match which {
        SolveCmd::Brute(a) => {
            let cap = a.cap.unwrap_or(DEFAULT_CAP);
            match parse(&read(&a.io.input)?)? {
                Document::Gugp(g) => {
                    let obj = a.objective.ok_or_else(|| {
                        Error::Usage("--objective is required for GUGP input".into())
                    })?;
                    let r = brute_force(&g, obj, cap)?;
                    out.push(format!("OBJECTIVE={}", obj.name()));
                    push_solution(out, &r, "CASES", a.io.out.as_deref())
                }
                Document::Rel(inst) => {
                    if a.objective.is_some() {
                        return Err(
                            Error::Usage("relational input takes no --objective".into()).into()
                        );
                    }
                    let r = brute_force_relational(&inst, cap)?;
                    push_solution(out, &r, "CASES", a.io.out.as_deref())
                }
                other => Err(
                    Error::Usage(format!("cannot solve a {} file", other.format().tag())).into(),
                ),
            }
        }
        SolveCmd::Local2(a) => {
            if a.objective.is_some_and(|o| o != Objective::MaxNwa) {
                return Err(Error::Usage("local2 only supports max-nwa".into()).into());
            }
            let g = parse_gugp(&read(&a.io.input)?)?;
            let opts = LocalSearchOptions {
                seed: a.seed,
                iteration_cap: a.cap,
            };
            let r = local_search_half(&g, &opts)?;
            out.push(format!("OBJECTIVE={}", Objective::MaxNwa.name()));
            push_solution(out, &r, "ITERATIONS", a.io.out.as_deref())
        }
    }
}

fn eval(input: &Path, labeling: &Path, objective: Option<Objective>, out: &mut Vec<String>) -> Run {
    let f = parse_lab(&read(labeling)?)?;
    match parse(&read(input)?)? {
        Document::Gugp(g) => {
            out.push(format!("SAT={}", satisfied_weight(&g, &f)?));
            out.push(format!("UNSAT={}", unsatisfied_weight(&g, &f)?));
            if let Some(obj) = objective {
                out.push(format!("OBJECTIVE={}", obj.name()));
                out.push(format!("VAL={}", labeling_value(&g, &f, obj)?));
            }
            Ok(())
        }
        Document::Rel(inst) => {
            let sat = relational_satisfied_weight(&inst, &f)?;
            let total = inst.total_weight();
            out.push(format!("SAT={sat}"));
            if !total.is_zero() {
                out.push(format!("VAL={}", sat / total));
            }
            Ok(())
        }
        other => {
            Err(Error::Usage(format!("cannot evaluate a {} file", other.format().tag())).into())
        }
    }
}

fn verify_cmd(which: VerifyCmd, out: &mut Vec<String>) -> Run<u8> {
    let reports: Vec<VerifyReport> = match which {
        VerifyCmd::GadgetPwt1 { check, source } => {
            let g = parse_gugp(&read(&check.input)?)?;
            let src = match source {
                Some(p) => Some(RepeatedInstance::from_relational(parse_rel(&read(&p)?)?)?),
                None => None,
            };
            verify::verify_pwt1_gadget(&g, src.as_ref(), check.cap)?
        }
        VerifyCmd::GadgetPwtHalf { check, source } => {
            let g = parse_gugp(&read(&check.input)?)?;
            let src = parse_t22(&read(&source)?)?;
            verify::verify_pwt_half_gadget(&g, &src, check.cap)?
        }
        VerifyCmd::StripBounds(check) => {
            vec![verify::check_strip_bounds(
                &parse_gugp(&read(&check.input)?)?,
                check.cap,
            )?]
        }
        VerifyCmd::HalfGuarantee { check, seed } => {
            let g = parse_gugp(&read(&check.input)?)?;
            let opts = LocalSearchOptions {
                seed,
                iteration_cap: None,
            };
            vec![verify::check_half_guarantee(&g, check.cap, &opts)?]
        }
        VerifyCmd::TspEquiv(check) => {
            vec![verify::check_tsp_equivalence(
                &parse_tsp(&read(&check.input)?)?,
                check.cap,
            )?]
        }
        VerifyCmd::Smoothness { check, expect } => {
            let inst = match parse(&read(&check.input)?)? {
                Document::Rel(r) => r,
                Document::Gugp(g) => g.to_relational()?,
                other => {
                    return Err(Error::Usage(format!(
                        "no smoothness for a {} file",
                        other.format().tag()
                    ))
                    .into())
                }
            };
            let s = verify::smoothness(&inst)?;
            out.push(format!("ETA={}", s.eta));
            let skipped: Vec<String> = s.skipped.iter().map(usize::to_string).collect();
            out.push(format!("SKIPPED={}", skipped.join(",")));
            let pass = expect.is_none_or(|e| e == s.eta);
            out.push(format!("VERDICT={}", if pass { "PASS" } else { "FAIL" }));
            out.push("CASES=1".to_string());
            return Ok(if pass { 0 } else { 2 });
        }
    };
    for r in &reports {
        out.extend(r.render().lines().map(str::to_string));
    }
    let (verdict, cases) = summarize(&reports);
    out.push(format!("VERDICT={}", verdict.as_str()));
    out.push(format!("CASES={cases}"));
    Ok(if verdict == Verdict::Pass { 0 } else { 2 })
}
