//! `fuzzy2d`: validity, entailment and evaluation for the two-dimensional
//! Łukasiewicz and Gödel logics.
//!
//! Exit codes: 0 valid or entailed, 1 invalid or not entailed, 2 error.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context as _, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fuzzy2d_core::formula::{family_f2_odot_fn, family_fk_odot_fk, family_fn, nnf, parse};
use fuzzy2d_core::oracle::{gen_corpus, godel_validity_oracle, luk_refuter};
use fuzzy2d_core::semantics::{parse_rational, sample_falsify, SampleConfig};
use fuzzy2d_core::{
    eval, is_designated, prove_entailment, prove_valid, Filter, Formula, LogicId, Mode, ProverConfig, Valuation,
};

use report::Report;

#[derive(Parser)]
#[command(name = "fuzzy2d", version, about = "Constraint-tableau prover for two-dimensional fuzzy logics")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// luk-arrow, luk-warrow, godel-arrow or godel-warrow.
    #[arg(long, global = true, default_value = "luk-arrow")]
    logic: LogicId,
    /// Designated filter as `num/den,num/den`. Defaults to 1/1,0/1 for the
    /// arrow logics and 1/1,1/1 for the weak-arrow ones.
    #[arg(long, global = true, value_name = "X,Y")]
    filter: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Branching)]
    mode: ModeArg,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Seed for the sampler and the corpus generator.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sampler trials for `oracle`.
    #[arg(long, global = true, default_value_t = 10_000)]
    trials: usize,
    /// Worker threads for independent tableaux; 0 uses every core.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Attach closure certificates to closed branches and emit the explored
    /// tableau of invalid queries.
    #[arg(long, global = true)]
    explain: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Branching,
    Linear,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decide validity of a formula.
    Check { formula: String },
    /// Decide whether the formulas of GAMMA (one per line) entail a formula.
    Entail { gamma: PathBuf, formula: String },
    /// Evaluate a formula under a valuation such as `{"p": ["1/2", "1/3"]}`
    /// (inline JSON, or a path to a JSON file).
    Eval { formula: String, valuation: String },
    /// Print the negation normal form.
    Nnf { formula: String },
    /// Print formula families or a random corpus.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Cross-check the tableau verdict against the semantic oracles.
    Oracle {
        formula: String,
        /// Grid denominator for the Łukasiewicz refuter.
        #[arg(long, default_value_t = 4)]
        den: i64,
    },
}

#[derive(Subcommand)]
enum Family {
    /// F_n over atoms p1 .. p{n+1}.
    Fn { n: usize },
    /// F_2 * F_n with disjoint atoms (n >= 3).
    F2ofn { n: usize },
    /// F_k * F_k over shared atoms.
    Fkofk { k: usize },
    /// Random formulas of `--logic` as JSON lines.
    Corpus {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 3)]
        atoms: usize,
    },
}

struct Ctx {
    logic: LogicId,
    filter: Filter,
    cfg: ProverConfig,
    seed: u64,
    trials: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.opts.output;
    match run(cli) {
        Ok(r) => {
            r.print(output);
            ExitCode::from(r.code)
        }
        Err(e) => {
            Report::error(&e).print(output);
            ExitCode::from(2)
        }
    }
}

fn parse_filter(text: &str) -> Result<Filter> {
    let Some((a, b)) = text.split_once(',') else {
        bail!("filter `{text}` is not of the form num/den,num/den");
    };
    let part = |s: &str| {
        let s = s.trim();
        if !s.contains('/') {
            bail!("filter component `{s}` is not of the form num/den");
        }
        Ok(parse_rational(s)?)
    };
    Ok(Filter::new(part(a)?, part(b)?)?)
}

fn context(opts: &Opts) -> Result<Ctx> {
    let logic = opts.logic;
    let filter = match &opts.filter {
        Some(t) => parse_filter(t)?,
        None => Filter::default_for(logic),
    };
    filter.check_for(logic)?;
    let mode = match opts.mode {
        ModeArg::Branching => Mode::Branching,
        ModeArg::Linear if logic.is_luk() => Mode::Linear,
        ModeArg::Linear => bail!("linear mode is only available for the Łukasiewicz logics"),
    };
    if opts.jobs != 1 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build_global()
            .context("cannot start the worker pool")?;
    }
    Ok(Ctx {
        logic,
        filter,
        cfg: ProverConfig {
            mode,
            explain: opts.explain,
            parallel: opts.jobs != 1,
        },
        seed: opts.seed,
        trials: opts.trials,
    })
}

fn run(cli: Cli) -> Result<Report> {
    let ctx = context(&cli.opts)?;
    let read = |text: &str| -> Result<Formula> { Ok(parse(text, ctx.logic)?) };
    match cli.command {
        Command::Check { formula } => {
            let f = read(&formula)?;
            let v = prove_valid(&f, &ctx.filter, ctx.logic, &ctx.cfg)?;
            Ok(Report::verdict("check", &ctx, &[], &f, &v))
        }
        Command::Entail { gamma, formula } => {
            let text = std::fs::read_to_string(&gamma).with_context(|| format!("cannot read {}", gamma.display()))?;
            let premises = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(read)
                .collect::<Result<Vec<_>, _>>()?;
            let f = read(&formula)?;
            let v = prove_entailment(&premises, &f, &ctx.filter, ctx.logic, &ctx.cfg)?;
            Ok(Report::verdict("entail", &ctx, &premises, &f, &v))
        }
        Command::Eval { formula, valuation } => {
            let f = read(&formula)?;
            let json = if valuation.trim_start().starts_with('{') {
                valuation
            } else {
                std::fs::read_to_string(&valuation).with_context(|| format!("cannot read {valuation}"))?
            };
            let v: Valuation =
                serde_json::from_str(&json).context("valuation is not a JSON object of [\"num/den\", \"num/den\"] pairs")?;
            let value = eval(&f, &v, ctx.logic)?;
            let designated = is_designated(&value, &ctx.filter);
            Ok(Report::eval(&ctx, &f, &value, designated))
        }
        Command::Nnf { formula } => {
            let f = read(&formula)?;
            let g = nnf(&f, ctx.logic)?;
            Ok(Report::nnf(&ctx, &f, &g))
        }
        Command::Gen { family } => Ok(match family {
            Family::Fn { n } => Report::family("fn", n, &family_fn(n)),
            Family::F2ofn { n } => {
                if n < 3 {
                    bail!("f2ofn needs n >= 3");
                }
                Report::family("f2ofn", n, &family_f2_odot_fn(n))
            }
            Family::Fkofk { k } => Report::family("fkofk", k, &family_fk_odot_fk(k)),
            Family::Corpus { count, depth, atoms } => {
                if atoms == 0 {
                    bail!("a corpus needs at least one atom");
                }
                Report::corpus(&gen_corpus(ctx.seed, count, depth, atoms, ctx.logic))
            }
        }),
        Command::Oracle { formula, den } => {
            let f = read(&formula)?;
            let v = prove_valid(&f, &ctx.filter, ctx.logic, &ctx.cfg)?;
            let sample = SampleConfig {
                trials: ctx.trials,
                seed: ctx.seed,
            };
            let sampled = sample_falsify(&f, &ctx.filter, ctx.logic, sample)?;
            let exhaustive = if ctx.logic.is_godel() {
                Oracle::Godel(godel_validity_oracle(&f, ctx.logic)?)
            } else {
                if den < 1 {
                    bail!("--den must be positive");
                }
                Oracle::Luk(den, luk_refuter(&f, &ctx.filter, ctx.logic, den)?)
            };
            Ok(Report::oracle(&ctx, &f, &v, &exhaustive, sampled.as_ref()))
        }
    }
}

/// What the exhaustive oracle of the logic's base found.
enum Oracle {
    /// Validity by the Gödel grid sweep (filter-independent).
    Godel(bool),
    /// The least refuting grid valuation at the given denominator, if any.
    Luk(i64, Option<Valuation>),
}
