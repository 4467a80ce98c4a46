//! The `qsquare` command line, runnable in-process through [`run`].

use std::fs;

use clap::{Parser, Subcommand, ValueEnum};

use crate::lp::{self, parse_formula, Formula3, Mode};
use crate::numeric::{CVector, Tolerance, C64};
use crate::opposition::{build_hexagon, build_square, classify, Context, OppositionError, Relation};
use crate::quantum::{attribute, born_weights, Proposition, Semantics, State};
use crate::report::{
    classification_item, lp_item, polygon_dot, polygon_item, state_out, Report, ResultItem, WeightOut, SCHEMA_VERSION,
};
use crate::scenario::{builtin_with, load_scenario, to_canonical_string, Query, Scenario, BUILTIN_NAMES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNSAT: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;
pub const EXIT_NOT_CONSEQUENCE: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Classical,
    Lp,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Classical => Mode::Classical,
            ModeArg::Lp => Mode::Lp,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SemanticsArg {
    Minimal,
    Paraconsistent,
}

impl From<SemanticsArg> for Semantics {
    fn from(s: SemanticsArg) -> Semantics {
        match s {
            SemanticsArg::Minimal => Semantics::Minimal,
            SemanticsArg::Paraconsistent => Semantics::Paraconsistent,
        }
    }
}

/// Opposition relations between quantum propositions, squares and hexagons
/// of opposition, and LP satisfiability checks.
#[derive(Debug, Parser)]
#[command(name = "qsquare", version)]
struct Cli {
    /// Membership tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    eps: f64,
    /// Witness search seed.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Witness search trials.
    #[arg(long, global = true, default_value_t = 2000)]
    trials: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify the relation between two propositions.
    Classify {
        /// Builtin scenario name or path to a scenario file.
        scenario: String,
        /// Proposition name, `family.member`, or either prefixed with `!`.
        a: String,
        b: String,
        /// Evaluate both propositions at this state (`[[re, im], ...]`)
        /// instead of classifying.
        #[arg(long, value_name = "STATE")]
        check_witness: Option<String>,
    },
    /// Build the hexagon of opposition on a contrary pair.
    Hexagon { scenario: String, a: String, e: String },
    /// Build the square of opposition on a contrary pair.
    Square { scenario: String, a: String, e: String },
    /// Born probabilities of a state over a family.
    Prob { scenario: String, state: String, family: String },
    /// Members of a family attributed to a state.
    Attribute {
        scenario: String,
        state: String,
        family: String,
        #[arg(long, value_enum, default_value_t = SemanticsArg::Minimal)]
        semantics: SemanticsArg,
    },
    /// Three-valued (LP) and classical satisfiability.
    #[command(subcommand)]
    Lp(LpCommand),
    /// Built-in and file scenarios.
    #[command(subcommand)]
    Scenario(ScenarioCommand),
}

#[derive(Debug, clap::Args)]
struct LpOptions {
    #[arg(long, value_enum, default_value_t = ModeArg::Lp)]
    mode: ModeArg,
    /// Check whether this formula follows from the constraints.
    #[arg(long, value_name = "FORMULA")]
    conclude: Option<String>,
}

#[derive(Debug, Subcommand)]
enum LpCommand {
    /// `K_l` and `!K_l` for every label.
    Postulate {
        #[arg(required = true)]
        labels: Vec<String>,
        /// Also require `!K_i <-> K_j` for every pair of labels.
        #[arg(long)]
        exclusive: bool,
        #[command(flatten)]
        options: LpOptions,
    },
    /// `p_i <-> !p_j` for every pair of labels.
    Chain {
        #[arg(required = true)]
        labels: Vec<String>,
        #[command(flatten)]
        options: LpOptions,
    },
    /// Arbitrary formulas.
    Check {
        #[arg(required = true)]
        formulas: Vec<String>,
        #[command(flatten)]
        options: LpOptions,
    },
}

#[derive(Debug, Subcommand)]
enum ScenarioCommand {
    /// Names of the builtin scenarios.
    List,
    /// Canonical form of a scenario.
    Show { scenario: String },
    /// Run every query of a scenario.
    Run { scenario: String },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn input_error(message: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_INPUT, message: message.to_string() }
}

type Exec<T> = std::result::Result<T, Failure>;

struct Session {
    eps: Tolerance,
    seed: u64,
    trials: usize,
    results: Vec<ResultItem>,
    warnings: Vec<String>,
    implication: bool,
    code: i32,
}

impl Session {
    fn context(&self, scenario: &Scenario) -> Context {
        scenario.context().with_search(self.seed, self.trials)
    }

    fn load(&mut self, reference: &str) -> Exec<Scenario> {
        let scenario = if BUILTIN_NAMES.contains(&reference) {
            builtin_with(reference, self.eps).map_err(input_error)?
        } else {
            let text = fs::read_to_string(reference).map_err(|e| {
                input_error(format!("{reference:?} is neither a builtin scenario nor a readable file: {e}"))
            })?;
            load_scenario(&text, self.eps).map_err(|e| input_error(format!("{reference}: {e}")))?
        };
        self.warnings.extend(scenario.warnings().iter().cloned());
        Ok(scenario)
    }

    fn proposition(scenario: &Scenario, reference: &str) -> Exec<Proposition> {
        scenario.proposition(reference).map_err(input_error)
    }

    fn classify(&mut self, scenario: &Scenario, a: &str, b: &str) -> Exec<()> {
        let (p, q) = (Self::proposition(scenario, a)?, Self::proposition(scenario, b)?);
        let c = classify(&p, &q, &self.context(scenario), self.eps).map_err(input_error)?;
        if c.relation == Relation::Undecided {
            self.code = self.code.max(EXIT_UNDECIDED);
        }
        self.results.push(classification_item(a, b, &c));
        Ok(())
    }

    fn check_witness(&mut self, scenario: &Scenario, a: &str, b: &str, state: &str) -> Exec<()> {
        let (p, q) = (Self::proposition(scenario, a)?, Self::proposition(scenario, b)?);
        let pairs: Vec<[f64; 2]> =
            serde_json::from_str(state).map_err(|e| input_error(format!("witness state: {e}")))?;
        if pairs.len() != scenario.dim() {
            return Err(input_error(format!(
                "witness state has {} components, scenario dimension is {}",
                pairs.len(),
                scenario.dim()
            )));
        }
        let v = CVector::new(pairs.iter().map(|[re, im]| C64::new(*re, *im)).collect()).map_err(input_error)?;
        let psi = State::new(v, self.eps).map_err(|e| input_error(format!("witness state: {e}")))?;
        let pattern =
            vec![p.truth(&psi, self.eps).map_err(input_error)?, q.truth(&psi, self.eps).map_err(input_error)?];
        self.results.push(ResultItem::WitnessCheck {
            left: a.to_string(),
            right: b.to_string(),
            state: state_out(psi.vector()),
            pattern,
        });
        Ok(())
    }

    fn polygon(&mut self, scenario: &Scenario, a: &str, e: &str, hexagon: bool) -> Exec<String> {
        let (p, q) = (Self::proposition(scenario, a)?, Self::proposition(scenario, e)?);
        let ctx = self.context(scenario);
        let built = if hexagon { build_hexagon(&p, &q, &ctx, self.eps) } else { build_square(&p, &q, &ctx, self.eps) };
        let polygon = built.map_err(|err| match err {
            OppositionError::NotContrary { .. } => input_error(format!("{a} and {e}: {err}")),
            other => input_error(other),
        })?;
        if polygon.edges.iter().any(|e| e.classification.relation == Relation::Undecided) {
            self.code = self.code.max(EXIT_UNDECIDED);
        }
        let shape = if hexagon { "hexagon" } else { "square" };
        self.results.push(polygon_item(shape, &polygon));
        Ok(polygon_dot(shape, &polygon))
    }

    fn prob(&mut self, scenario: &Scenario, state: &str, family: &str) -> Exec<()> {
        let psi = scenario.state(state).map_err(input_error)?;
        let fam = scenario.family(family).map_err(input_error)?;
        let weights: Vec<WeightOut> = born_weights(psi, fam)
            .map_err(input_error)?
            .into_iter()
            .map(|(member, probability)| WeightOut { member, probability })
            .collect();
        let total = weights.iter().map(|w| w.probability).sum();
        self.results.push(ResultItem::Probabilities {
            state: state.to_string(),
            family: family.to_string(),
            weights,
            total,
        });
        Ok(())
    }

    fn attribute(&mut self, scenario: &Scenario, state: &str, family: &str, semantics: Semantics) -> Exec<()> {
        let psi = scenario.state(state).map_err(input_error)?;
        let fam = scenario.family(family).map_err(input_error)?;
        let members = attribute(psi, fam, semantics, self.eps).map_err(input_error)?;
        self.results.push(ResultItem::Attribution {
            state: state.to_string(),
            family: family.to_string(),
            semantics: semantics.to_string(),
            members,
        });
        Ok(())
    }

    /// Satisfiability of `constraints`, plus the consequence check when a
    /// conclusion is given. Returns the verdict's exit code.
    fn lp(&mut self, constraints: &[Formula3], mode: Mode, conclusion: Option<&Formula3>) -> Exec<i32> {
        self.implication = true;
        let model = lp::satisfiable(constraints, mode).map_err(input_error)?;
        let code = match conclusion {
            Some(c) => {
                let countermodel = lp::countermodel(constraints, c, mode).map_err(input_error)?;
                let code = if countermodel.is_none() { EXIT_OK } else { EXIT_NOT_CONSEQUENCE };
                self.results.push(lp_item(mode, constraints, model.as_ref(), Some((c, countermodel.as_ref()))));
                code
            }
            None => {
                let code = if model.is_some() { EXIT_OK } else { EXIT_UNSAT };
                self.results.push(lp_item(mode, constraints, model.as_ref(), None));
                code
            }
        };
        Ok(code)
    }

    fn run_query(&mut self, scenario: &Scenario, query: &Query) -> Exec<()> {
        match query {
            Query::Classify { left, right } => self.classify(scenario, left, right),
            Query::Square { a, e } => self.polygon(scenario, a, e, false).map(|_| ()),
            Query::Hexagon { a, e } => self.polygon(scenario, a, e, true).map(|_| ()),
            Query::Prob { state, family } => self.prob(scenario, state, family),
            Query::Attribute { state, family, semantics } => self.attribute(scenario, state, family, *semantics),
            Query::Postulate { labels } => {
                let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
                let set = lp::postulate_of_contradiction(&labels).map_err(input_error)?;
                for mode in [Mode::Classical, Mode::Lp] {
                    self.lp(&set, mode, None)?;
                }
                Ok(())
            }
            Query::EquivalenceChain { labels } => {
                let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
                let set = lp::equivalence_chain(&refs).map_err(input_error)?;
                let first = Formula3::Atom(lp::p_atom(&labels[0]));
                let goal = Formula3::iff(first.clone(), Formula3::not(first));
                for mode in [Mode::Classical, Mode::Lp] {
                    self.lp(&set, mode, Some(&goal))?;
                }
                Ok(())
            }
        }
    }
}

fn parse_formulas(texts: &[String]) -> Exec<Vec<Formula3>> {
    texts
        .iter()
        .enumerate()
        .map(|(i, t)| parse_formula(t).map_err(|e| input_error(format!("formula {} ({t:?}): {e}", i + 1))))
        .collect()
}

fn parse_conclusion(text: Option<&String>) -> Exec<Option<Formula3>> {
    text.map(|t| parse_formula(t).map_err(|e| input_error(format!("conclusion ({t:?}): {e}")))).transpose()
}

/// Runs one command line (without the program name).
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(std::iter::once("qsquare".to_string()).chain(args.iter().cloned())) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { stdout: String::new(), stderr: text, code: EXIT_INPUT }
            } else {
                Outcome { stdout: text, stderr: String::new(), code: EXIT_OK }
            };
        }
    };
    match execute(&cli, &args) {
        Ok((stdout, code)) => Outcome { stdout, stderr: String::new(), code },
        Err(f) => Outcome { stdout: String::new(), stderr: format!("error: {}\n", f.message), code: f.code },
    }
}

fn execute(cli: &Cli, args: &[String]) -> Exec<(String, i32)> {
    let eps = Tolerance::new(cli.eps).map_err(|e| input_error(format!("--eps: {e}")))?;
    let mut s = Session {
        eps,
        seed: cli.seed,
        trials: cli.trials,
        results: Vec::new(),
        warnings: Vec::new(),
        implication: false,
        code: EXIT_OK,
    };
    let mut dot = None;
    match &cli.command {
        Command::Classify { scenario, a, b, check_witness } => {
            let scn = s.load(scenario)?;
            match check_witness {
                Some(state) => s.check_witness(&scn, a, b, state)?,
                None => s.classify(&scn, a, b)?,
            }
        }
        Command::Hexagon { scenario, a, e } | Command::Square { scenario, a, e } => {
            let scn = s.load(scenario)?;
            let hexagon = matches!(cli.command, Command::Hexagon { .. });
            dot = Some(s.polygon(&scn, a, e, hexagon)?);
        }
        Command::Prob { scenario, state, family } => {
            let scn = s.load(scenario)?;
            s.prob(&scn, state, family)?;
        }
        Command::Attribute { scenario, state, family, semantics } => {
            let scn = s.load(scenario)?;
            s.attribute(&scn, state, family, (*semantics).into())?;
        }
        Command::Lp(cmd) => {
            let (set, options) = match cmd {
                LpCommand::Postulate { labels, exclusive, options } => {
                    let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
                    let set = if *exclusive {
                        lp::postulate_exclusive(&labels)
                    } else {
                        lp::postulate_of_contradiction(&labels)
                    };
                    (set.map_err(input_error)?, options)
                }
                LpCommand::Chain { labels, options } => {
                    let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
                    (lp::equivalence_chain(&labels).map_err(input_error)?, options)
                }
                LpCommand::Check { formulas, options } => (parse_formulas(formulas)?, options),
            };
            let conclusion = parse_conclusion(options.conclude.as_ref())?;
            s.code = s.lp(&set, options.mode.into(), conclusion.as_ref())?;
        }
        Command::Scenario(ScenarioCommand::List) => {
            s.results.push(ResultItem::ScenarioList { names: BUILTIN_NAMES.iter().map(|n| n.to_string()).collect() });
        }
        Command::Scenario(ScenarioCommand::Show { scenario }) => {
            let scn = s.load(scenario)?;
            let value = serde_json::to_value(scn.spec()).map_err(input_error)?;
            if cli.format == Format::Text {
                return Ok((to_canonical_string(&value), EXIT_OK));
            }
            s.results.push(ResultItem::Scenario { spec: value });
        }
        Command::Scenario(ScenarioCommand::Run { scenario }) => {
            let scn = s.load(scenario)?;
            for q in scn.queries() {
                s.run_query(&scn, q)?;
            }
            // LP verdicts inside a scenario are reported, not turned into
            // exit codes; only undecided classifications are.
            s.code = if s.code == EXIT_UNDECIDED { EXIT_UNDECIDED } else { EXIT_OK };
        }
    }
    let report = Report {
        schema: SCHEMA_VERSION,
        command: args.to_vec(),
        eps: eps.eps(),
        seed: s.seed,
        trials: s.trials,
        implication: s.implication.then(|| "material".to_string()),
        results: s.results,
        warnings: s.warnings,
    };
    let text = match cli.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
        Format::Dot => dot.ok_or_else(|| input_error("--format dot is only available for square and hexagon"))?,
    };
    Ok((text, s.code))
}
