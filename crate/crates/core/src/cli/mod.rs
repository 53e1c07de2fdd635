//! The `pathsep` command line.
//!
//! Every command prints one JSON document (or a DOT graph) on stdout.
//! Exit codes: 0 success, 2 usage error, 3 instance error, 4 budget
//! exceeded.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::adp::{self, brute_force_witness, AdpError, Method};
use crate::duality::{duality_report, DualityError, ReportBudget};
use crate::graph::codec::{
    parse_json, read_instance, to_canonical_json, write_instance, ParseError,
};
use crate::graph::{sfp_guard, GraphError, StInstance};
use crate::reductions::{
    gen_adp_instance, gen_bunch, gen_sfp_instance, gen_tail_extension, normalize_formula,
    Formula3DNF, Normalized, ReductionError, UndirectedGraph,
};
use crate::sfp::{
    brute_force_all_min_pairs, separation_check_with, solve_min_pairs, CheckOptions, Pair, PairSet,
    SfpError, SolveBudget,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INSTANCE: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "pathsep",
    version,
    about = "Almost disjoint paths and forbidden-pair separation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Almost disjoint paths.
    #[command(subcommand)]
    Adp(AdpCommand),
    /// Separation by forbidden pairs.
    #[command(subcommand)]
    Sfp(SfpCommand),
    /// Instance generators.
    #[command(subcommand)]
    Gen(GenCommand),
    /// LP relaxations and the duality gap.
    #[command(subcommand)]
    Lp(LpCommand),
    /// Format conversion.
    #[command(subcommand)]
    Export(ExportCommand),
}

#[derive(Subcommand, Debug)]
enum AdpCommand {
    /// Decide whether k almost disjoint s-t paths exist.
    Solve(AdpSolveArgs),
}

#[derive(Args, Debug)]
struct AdpSolveArgs {
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
    #[arg(short = 'k')]
    k: usize,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    /// Largest number of arcs two paths may share. Values above 1 need
    /// the brute force method.
    #[arg(long, default_value_t = 1)]
    threshold: usize,
    #[arg(long)]
    witness: bool,
    #[arg(long, default_value_t = 100_000)]
    path_cap: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum MethodArg {
    Auto,
    Flow,
    Dp,
    Layered,
    Brute,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Flow => Method::Flow,
            MethodArg::Dp => Method::Dp,
            MethodArg::Layered => Method::Layered,
            MethodArg::Brute => Method::Brute,
        }
    }
}

#[derive(Subcommand, Debug)]
enum SfpCommand {
    /// Find a minimum separating pair set.
    Solve(SfpSolveArgs),
    /// Check whether a pair set separates s from t.
    Check(SfpCheckArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SfpMethodArg {
    Hitting,
    Brute,
}

#[derive(Args, Debug)]
struct SfpSolveArgs {
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "hitting")]
    method: SfpMethodArg,
    #[arg(long)]
    all_optima: bool,
    #[arg(long, default_value_t = 20_000_000)]
    node_budget: u64,
    #[arg(long, default_value_t = 100_000)]
    path_cap: usize,
    /// Largest set size tried by the brute force method.
    #[arg(long, default_value_t = 6)]
    max_k: usize,
}

#[derive(Args, Debug)]
struct SfpCheckArgs {
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
    #[arg(long)]
    pairs: PathBuf,
    #[arg(long, default_value_t = 20_000_000)]
    node_budget: u64,
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// A path of l bunches of k parallel arcs.
    Bunch {
        #[arg(short = 'k')]
        k: usize,
        #[arg(short = 'l')]
        l: usize,
    },
    /// ADP instance from an undirected graph.
    Adp {
        #[arg(long)]
        from: PathBuf,
        /// Also write the gadget registry here.
        #[arg(long)]
        meta: Option<PathBuf>,
    },
    /// SFP instance from a 3-DNF formula.
    Sfp {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        meta: Option<PathBuf>,
    },
    /// Prepend a chain of l - 1 arcs before the source.
    Tail {
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
        #[arg(short = 'l')]
        l: usize,
    },
}

#[derive(Subcommand, Debug)]
enum LpCommand {
    /// Both LP optima, both integer optima and the gap.
    Report {
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
        #[arg(long)]
        certificates: bool,
        /// A candidate optimal pair set; skips the search when it meets
        /// the LP bound.
        #[arg(long)]
        hint: Option<PathBuf>,
        #[arg(long, default_value_t = 100_000)]
        path_cap: usize,
        #[arg(long, default_value_t = 20_000_000)]
        node_budget: u64,
    },
}

#[derive(Subcommand, Debug)]
enum ExportCommand {
    /// Graphviz rendering.
    Dot {
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Instance(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Instance(_) => EXIT_INSTANCE,
            Failure::Budget(_) => EXIT_BUDGET,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Instance(m) | Failure::Budget(m) => m,
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Instance(e.to_string())
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::CapExceeded { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Instance(e.to_string()),
        }
    }
}

impl From<SfpError> for Failure {
    fn from(e: SfpError) -> Self {
        match e {
            SfpError::Graph(g) => g.into(),
            SfpError::BudgetExceeded(_) => Failure::Budget(e.to_string()),
        }
    }
}

impl From<AdpError> for Failure {
    fn from(e: AdpError) -> Self {
        match e {
            AdpError::Graph(g) => g.into(),
            AdpError::NotApplicable { .. } => Failure::Usage(e.to_string()),
        }
    }
}

impl From<DualityError> for Failure {
    fn from(e: DualityError) -> Self {
        match e {
            DualityError::Graph(g) => g.into(),
            DualityError::Sfp(s) => s.into(),
            DualityError::Adp(a) => a.into(),
            other => Failure::Instance(other.to_string()),
        }
    }
}

impl From<ReductionError> for Failure {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::TooLarge { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Instance(e.to_string()),
        }
    }
}

/// Runs one command. `argv[0]` is the program name.
pub fn run(argv: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    match execute(cli.command) {
        Ok(out) => {
            if stdout.write_all(out.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message());
            f.code()
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<StInstance, Failure> {
    Ok(read_instance(&read_text(path)?)?)
}

fn load<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    Ok(parse_json(&read_text(path)?)?)
}

fn emit<T: Serialize>(v: &T) -> String {
    to_canonical_json(v)
}

fn write_meta<T: Serialize>(path: &Option<PathBuf>, meta: &T) -> Result<(), Failure> {
    if let Some(p) = path {
        std::fs::write(p, emit(meta))
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}

fn execute(cmd: Command) -> Result<String, Failure> {
    match cmd {
        Command::Adp(AdpCommand::Solve(a)) => adp_solve(a),
        Command::Sfp(SfpCommand::Solve(a)) => sfp_solve(a),
        Command::Sfp(SfpCommand::Check(a)) => {
            let inst = load_instance(&a.input)?;
            let pairs: PairSet = load(&a.pairs)?;
            if let Some(max) = pairs.max_arc() {
                if max >= inst.graph.arc_count() {
                    return Err(Failure::Instance(format!(
                        "pair set names arc {max}, the graph has {} arcs",
                        inst.graph.arc_count()
                    )));
                }
            }
            let opts = CheckOptions {
                node_budget: Some(a.node_budget),
                ..CheckOptions::default()
            };
            let (verdict, _) = separation_check_with(&inst, &pairs, opts)?;
            Ok(emit(&verdict))
        }
        Command::Gen(g) => generate(g),
        Command::Lp(LpCommand::Report {
            input,
            certificates,
            hint,
            path_cap,
            node_budget,
        }) => {
            let inst = load_instance(&input)?;
            let hint: Option<PairSet> = hint.as_deref().map(load).transpose()?;
            let mut budget = ReportBudget {
                path_cap,
                hint,
                ..ReportBudget::default()
            };
            budget.sfp.check.node_budget = Some(node_budget);
            let report = duality_report(&inst, &budget)?;
            Ok(emit(&report.to_json(certificates)))
        }
        Command::Export(ExportCommand::Dot { input }) => {
            let inst = load_instance(&input)?;
            Ok(inst.graph.to_dot(Some(inst.s), Some(inst.t)))
        }
    }
}

fn adp_solve(a: AdpSolveArgs) -> Result<String, Failure> {
    let inst = load_instance(&a.input)?;
    let (feasible, witness, method) = if a.threshold != 1 {
        if !matches!(a.method, MethodArg::Auto | MethodArg::Brute) {
            return Err(Failure::Usage(
                "a threshold other than 1 needs --method brute".into(),
            ));
        }
        let w = brute_force_witness(&inst, a.k, a.threshold, a.path_cap)?;
        (w.is_some(), w, Method::Brute)
    } else {
        let out = adp::solve_with(&inst, a.k, a.method.into(), a.path_cap)?;
        (out.feasible, out.witness, out.method)
    };
    let mut v = json!({
        "feasible": feasible,
        "k": a.k,
        "method": method,
        "threshold": a.threshold,
    });
    if a.witness {
        v["witness"] = json!(witness);
    }
    Ok(emit(&v))
}

fn sfp_solve(a: SfpSolveArgs) -> Result<String, Failure> {
    let inst = load_instance(&a.input)?;
    sfp_guard(&inst)?;
    let v: Value = match a.method {
        SfpMethodArg::Hitting => {
            let mut budget = SolveBudget {
                all_optima: a.all_optima,
                ..SolveBudget::default()
            };
            budget.check.node_budget = Some(a.node_budget);
            let r = solve_min_pairs(&inst, budget)?;
            let mut v = json!({
                "method": "hitting",
                "optimum": r.pairs.len(),
                "pairs": pair_list(&r.pairs),
            });
            if let Some(all) = r.all_optima {
                v["all_optima"] = json!(all.iter().map(pair_list).collect::<Vec<_>>());
            }
            v
        }
        SfpMethodArg::Brute => {
            let (k, all) =
                brute_force_all_min_pairs(&inst, a.max_k, a.path_cap)?.ok_or_else(|| {
                    Failure::Budget(format!("no separating set with at most {} pairs", a.max_k))
                })?;
            let mut v = json!({
                "method": "brute",
                "optimum": k,
                "pairs": pair_list(&all[0]),
            });
            if a.all_optima {
                v["all_optima"] = json!(all.iter().map(pair_list).collect::<Vec<_>>());
            }
            v
        }
    };
    Ok(emit(&v))
}

fn pair_list(p: &PairSet) -> Vec<Pair> {
    p.iter().collect()
}

fn generate(g: GenCommand) -> Result<String, Failure> {
    match g {
        GenCommand::Bunch { k, l } => {
            if k == 0 || l == 0 {
                return Err(Failure::Usage("bunch graphs need k >= 1 and l >= 1".into()));
            }
            Ok(write_instance(&gen_bunch(k, l)))
        }
        GenCommand::Adp { from, meta } => {
            let h: UndirectedGraph = load(&from)?;
            let (inst, m) = gen_adp_instance(&h);
            write_meta(&meta, &m)?;
            Ok(write_instance(&inst))
        }
        GenCommand::Sfp { from, meta } => {
            let phi: Formula3DNF = load(&from)?;
            match normalize_formula(&phi)? {
                Normalized::Formula { formula, .. } => {
                    let (inst, m) = gen_sfp_instance(&formula)?;
                    write_meta(&meta, &m)?;
                    Ok(write_instance(&inst))
                }
                trivial => Err(Failure::Instance(format!(
                    "formula needs no reduction: {}",
                    serde_json::to_string(&trivial).expect("serializable")
                ))),
            }
        }
        GenCommand::Tail { input, l } => {
            if l == 0 {
                return Err(Failure::Usage("tail extension needs l >= 1".into()));
            }
            Ok(write_instance(&gen_tail_extension(
                &load_instance(&input)?,
                l,
            )))
        }
    }
}
