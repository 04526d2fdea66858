//! `nlmc`: command-line front end for the nonlinearity / multiplicative
//! complexity toolkit.

mod source;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use nlmc_core::analysis::certify;
use nlmc_core::boolfn::{anf_from_tt, classify_nl, degree, nonlinearity};
use nlmc_core::codes::{
    counting_lower_bound, gv_min_length, mc_lower_from_nl, monte_carlo_rank, mrrw_b, mrrw_min_length,
    nl_upper_from_mc, rank_prob_bound, varshamov_code, MrrwQuery,
};
use nlmc_core::oracle::{brute_mc, brute_nl};
use nlmc_core::synth::{
    synth_bilinear_from_code, synth_excluded_products, synth_indicators, synth_monomial_bank, synth_universal,
};
use nlmc_core::{BilinearPlan, Budget, Circuit, McOutcome, McSearchBudget};

#[derive(Debug)]
pub enum CliError {
    Core(nlmc_core::Error),
    Usage(String),
    Io(String),
}

impl From<nlmc_core::Error> for CliError {
    fn from(e: nlmc_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use nlmc_core::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 4,
            CliError::Core(E::BudgetExceeded { .. } | E::NodeCapExhausted { .. }) => 3,
            CliError::Core(E::Parse { .. }) => 4,
            CliError::Core(_) => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self.exit_code() {
            2 => "validation",
            3 => "budget",
            _ => "io",
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "nlmc", version, about = "Nonlinearity, multiplicative complexity and XOR-AND circuits")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Seed for every randomised step.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct BudgetArgs {
    #[arg(long, env = "NLMC_MAX_TT_N", default_value_t = 20, global = true)]
    max_tt_n: u32,
    #[arg(long, env = "NLMC_MAX_VECTOR_N", default_value_t = 20, global = true)]
    max_vector_n: u32,
    #[arg(long, env = "NLMC_MAX_VECTOR_M", default_value_t = 16, global = true)]
    max_vector_m: usize,
    #[arg(long, env = "NLMC_VECTOR_COST_CAP", default_value_t = 1 << 32, global = true)]
    vector_cost_cap: u64,
    #[arg(long, env = "NLMC_MAX_CODE_DIM", default_value_t = 26, global = true)]
    max_code_dim: usize,
    #[arg(long, env = "NLMC_NODE_CAP", default_value_t = 100_000_000, global = true)]
    node_cap: u64,
}

/// Everything that determines a run's output besides the command itself.
struct RunConfig {
    seed: u64,
    budget: Budget,
    node_cap: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Boolean-function analysis.
    #[command(subcommand, name = "fn")]
    Function(FnCmd),
    /// Circuit constructions; prints circuit text with a JSON plan header.
    #[command(subcommand)]
    Synth(SynthCmd),
    /// Inspect, evaluate and certify XOR-AND circuit files.
    #[command(subcommand)]
    Circuit(CircuitCmd),
    /// Numeric code and complexity bounds.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Brute-force ground truth.
    #[command(subcommand)]
    Oracle(OracleCmd),
}

#[derive(Debug, Subcommand)]
enum FnCmd {
    /// NL, vector NL, degree, ANF size and bent/almost-bent class.
    Analyze {
        /// Truth-table file or builtin (ip:K, gold:N[:I], fieldmult:N, exprod:N, indicator:N:Z).
        source: String,
    },
}

#[derive(Debug, Subcommand)]
enum SynthCmd {
    /// Every monomial of degree >= 2 in n variables.
    Monomials { n: u32 },
    /// All 2^n point indicators of n variables.
    Indicators { n: u32 },
    /// Any function via indicator banks split at k.
    Universal {
        source: String,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Products of all inputs but one, with 3n-6 ANDs.
    Exprod { n: u32 },
    /// Bilinear circuit from a generator matrix, or from a greedy GV code of distance D.
    Bilinear {
        n: u32,
        #[arg(long, conflicts_with = "distance", required_unless_present = "distance")]
        code: Option<String>,
        #[arg(long)]
        distance: Option<u64>,
    },
}

#[derive(Debug, Subcommand)]
enum CircuitCmd {
    /// Gate counts, AND depth and circuit classes.
    Analyze { file: String },
    /// Evaluate on one input given in hex (bit j is x_{j+1}).
    Eval { file: String, input: String },
    /// Print the truth table.
    Tt { file: String },
    /// Extract the AND-gate code and compare its distance with M.
    Certify { file: String },
}

#[derive(Debug, Subcommand)]
enum BoundsCmd {
    /// Smallest length meeting the GV condition.
    Gv { m: u64, d: u64 },
    /// Smallest length not excluded by the MRRW rate bound.
    Mrrw { m: u64, d: u64 },
    /// The MRRW function B(u, delta).
    #[command(name = "mrrw-B")]
    MrrwB { u: f64, delta: f64 },
    /// AND-count lower bound for almost all (n, m) functions.
    Counting { n: u32, m: u64 },
    /// With M: the NL ceiling; with --nl: the implied AND-gate lower bound.
    NlMc {
        n: u32,
        #[arg(required_unless_present = "nl", conflicts_with = "nl")]
        mc: Option<u32>,
        #[arg(long)]
        nl: Option<u64>,
    },
    /// Bound on P[rank <= d] for a random k x k matrix, with an optional Monte Carlo check.
    Rankprob {
        k: u32,
        d: u32,
        #[arg(long)]
        trials: Option<u64>,
    },
}

#[derive(Debug, Subcommand)]
enum OracleCmd {
    /// Nonlinearity by distance to every affine function.
    Nl { source: String },
    /// Exact multiplicative complexity by exhaustive search.
    Mc {
        source: String,
        #[arg(long, default_value_t = 2)]
        kmax: u32,
    },
}

/// A command result: always a JSON value, optionally with a dedicated text form.
struct Output {
    value: Value,
    text: Option<String>,
}

impl From<Value> for Output {
    fn from(value: Value) -> Self {
        Output { value, text: None }
    }
}

fn render_text(v: &Value) -> String {
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| {
                let shown = match v {
                    Value::String(s) => s.clone(),
                    Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => items
                        .iter()
                        .map(|i| i.as_str().map(str::to_owned).unwrap_or_else(|| i.to_string()))
                        .collect::<Vec<_>>()
                        .join(" "),
                    other => other.to_string(),
                };
                format!("{k}: {shown}\n")
            })
            .collect(),
        other => format!("{other}\n"),
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn circuit_output(plan: Value, c: &Circuit) -> Output {
    let text = c.serialize();
    Output {
        text: Some(format!("# {plan}\n{text}")),
        value: json!({ "plan": plan, "circuit": text }),
    }
}

fn run_fn(cmd: FnCmd, cfg: &RunConfig) -> Result<Output, CliError> {
    let FnCmd::Analyze { source } = cmd;
    let f = source::function(&source)?;
    let (class, vector_nl) = classify_nl(&f, &cfg.budget)?;
    let output_nl = (0..f.m())
        .map(|i| nonlinearity(&f.output_fn(i)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(json!({
        "source": source,
        "n": f.n(),
        "m": f.m(),
        "output_nl": output_nl,
        "vector_nl": vector_nl,
        "degree": degree(&f),
        "anf_size": anf_from_tt(&f).size(),
        "class": class,
    })
    .into())
}

fn run_synth(cmd: SynthCmd, cfg: &RunConfig) -> Result<Output, CliError> {
    let summary = |name: &str, n: u32, c: &Circuit| json!({ "construction": name, "n": n, "and_count": c.and_metrics().0 });
    Ok(match cmd {
        SynthCmd::Monomials { n } => {
            let c = synth_monomial_bank(n)?;
            circuit_output(summary("monomials", n, &c), &c)
        }
        SynthCmd::Indicators { n } => {
            let c = synth_indicators(n)?;
            circuit_output(summary("indicators", n, &c), &c)
        }
        SynthCmd::Exprod { n } => {
            let c = synth_excluded_products(n)?;
            circuit_output(summary("exprod", n, &c), &c)
        }
        SynthCmd::Universal { source, k } => {
            let f = source::function(&source)?;
            let (c, plan) = synth_universal(&f, k)?;
            circuit_output(to_value(&plan), &c)
        }
        SynthCmd::Bilinear { n, code, distance } => {
            let g = match (code, distance) {
                (Some(path), _) => source::code(&path)?,
                (None, Some(d)) => varshamov_code(n as u64, d)?,
                (None, None) => return Err(CliError::Usage("give --code or --distance".into())),
            };
            let plan = BilinearPlan::new(n, g, cfg.seed)?;
            let c = synth_bilinear_from_code(&plan)?;
            circuit_output(to_value(&plan), &c)
        }
    })
}

fn parse_hex(s: &str) -> Result<u64, CliError> {
    let digits = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
    u64::from_str_radix(digits, 16).map_err(|_| CliError::Usage(format!("`{s}` is not a hex input")))
}

fn run_circuit(cmd: CircuitCmd, cfg: &RunConfig) -> Result<Output, CliError> {
    Ok(match cmd {
        CircuitCmd::Analyze { file } => {
            let c = source::circuit(&file)?;
            let mut v = to_value(&c.classify());
            v["n"] = json!(c.n());
            v["m"] = json!(c.m());
            v["gates"] = json!(c.gates().len());
            v.into()
        }
        CircuitCmd::Eval { file, input } => {
            let c = source::circuit(&file)?;
            let x = parse_hex(&input)?;
            let bits: String = c.evaluate(x)?.iter().map(|&b| if b { '1' } else { '0' }).collect();
            Output {
                text: Some(format!("{bits}\n")),
                value: json!({ "input": format!("{x:#x}"), "outputs": bits }),
            }
        }
        CircuitCmd::Tt { file } => {
            let f = source::circuit(&file)?.truth_table(&cfg.budget)?;
            let tables: Vec<String> = f.tables().iter().map(|t| t.to_01_string()).collect();
            Output {
                text: Some(f.to_tt_string()),
                value: json!({ "n": f.n(), "m": f.m(), "tables": tables }),
            }
        }
        CircuitCmd::Certify { file } => {
            let c = source::circuit(&file)?;
            let report = certify(&c, &cfg.budget)?;
            let value = to_value(&report);
            Output {
                text: Some(format!("{}{}", render_text(&value), report.code.to_text())),
                value,
            }
        }
    })
}

fn run_bounds(cmd: BoundsCmd, cfg: &RunConfig) -> Result<Output, CliError> {
    Ok(match cmd {
        BoundsCmd::Gv { m, d } => json!({ "m": m, "d": d, "length": gv_min_length(m, d)? }).into(),
        BoundsCmd::Mrrw { m, d } => json!({
            "m": m,
            "d": d,
            "length": mrrw_min_length(m, d)?,
            "label": "asymptotic-bound extrapolation",
        })
        .into(),
        BoundsCmd::MrrwB { u, delta } => {
            json!({ "u": u, "delta": delta, "B": mrrw_b(MrrwQuery::new(u, delta)?) }).into()
        }
        BoundsCmd::Counting { n, m } => {
            let b = counting_lower_bound(n, m)?;
            json!({ "n": n, "m": m, "value": b.value, "vacuous": b.vacuous }).into()
        }
        BoundsCmd::NlMc { n, mc, nl } => match (mc, nl) {
            (Some(mc), _) => json!({ "n": n, "M": mc, "nl_upper": nl_upper_from_mc(n, mc)? }).into(),
            (None, Some(nl)) => json!({ "n": n, "nl": nl, "M": mc_lower_from_nl(n, nl)? }).into(),
            (None, None) => return Err(CliError::Usage("give M or --nl".into())),
        },
        BoundsCmd::Rankprob { k, d, trials } => {
            let mut v = json!({ "k": k, "d": d, "bound": rank_prob_bound(k, d)? });
            if let Some(t) = trials {
                v["trials"] = json!(t);
                v["seed"] = json!(cfg.seed);
                v["frequency"] = json!(monte_carlo_rank(k, d, t, cfg.seed)?);
            }
            v.into()
        }
    })
}

fn run_oracle(cmd: OracleCmd, cfg: &RunConfig) -> Result<Output, CliError> {
    Ok(match cmd {
        OracleCmd::Nl { source } => {
            let f = source::function(&source)?;
            json!({ "nl": brute_nl(&f)? }).into()
        }
        OracleCmd::Mc { source, kmax } => {
            let f = source::function(&source)?;
            let budget = McSearchBudget {
                k_max: kmax,
                node_cap: cfg.node_cap,
            };
            let mc = match brute_mc(&f, budget)? {
                McOutcome::Exact(k) => json!(k),
                McOutcome::ExceedsKmax => json!(format!("> {kmax}")),
            };
            json!({ "k_max": kmax, "mc": mc }).into()
        }
    })
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let b = &cli.budget;
    let cfg = RunConfig {
        seed: cli.seed,
        budget: Budget {
            max_tt_n: b.max_tt_n,
            max_vector_n: b.max_vector_n,
            max_vector_m: b.max_vector_m,
            vector_cost_cap: b.vector_cost_cap,
            max_code_dim: b.max_code_dim,
        },
        node_cap: b.node_cap,
    };
    match cli.command {
        Command::Function(c) => run_fn(c, &cfg),
        Command::Synth(c) => run_synth(c, &cfg),
        Command::Circuit(c) => run_circuit(c, &cfg),
        Command::Bounds(c) => run_bounds(c, &cfg),
        Command::Oracle(c) => run_oracle(c, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(out) => {
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.value).expect("json")),
                Format::Text => print!("{}", out.text.unwrap_or_else(|| render_text(&out.value))),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            match format {
                Format::Json => eprintln!("{}", json!({ "error": { "kind": e.kind(), "message": e.to_string() } })),
                Format::Text => eprintln!("error: {e}"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
