use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rigidsep::check::{Comparable, Verdicts};
use rigidsep::construct::{
    best_known_family, cyclic_family, extend_family, lower_bound, optimal_tournament_family, paper_family_6,
    sperner_rigid_family,
};
use rigidsep::sat::{self, CnfInstance, EncodeOptions, SolverAnswer};
use rigidsep::search::{self, SearchBudget, SearchOutcome, SearchStatus, SymmetryFlags, TableRow};
use rigidsep::{json as family_json, Error, Family, FamilyKind, PartialUnaryMap};

/// Separating families of linear orders and tournaments.
#[derive(Parser)]
#[command(name = "rigidsep", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a family file with all three separation / rigidity checkers.
    Verify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Emit one of the explicit constructions as a family file.
    Construct(ConstructArgs),
    /// Add one point to a separating family of linear orders (and one order).
    Extend {
        file: PathBuf,
        /// Number of points to add.
        #[arg(long, default_value_t = 1)]
        steps: usize,
        #[arg(long)]
        verify: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exact search for a separating family, or for the minimum size when `--n` is omitted.
    Search(SearchArgs),
    /// Write the CNF for "n separating linear orders on m points" in DIMACS format.
    Encode {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Do not fix the first order to the natural one.
        #[arg(long)]
        full: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Turn a solver model for an encoded instance back into a verified family.
    Decode {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Bounds and exact values of the minimum number of separating linear orders.
    Table {
        max_m: usize,
        /// Try to close open rows with a search of at most this many nodes per size.
        #[arg(long)]
        search_nodes: Option<u64>,
        #[arg(long)]
        search_seconds: Option<f64>,
        #[arg(long, env = "RIGIDSEP_THREADS", default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    Cyclic,
    Paper6,
    TournamentOptimal,
    Sperner,
    BestKnown,
}

#[derive(Args)]
struct ConstructArgs {
    kind: ConstructKind,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    mu: Option<usize>,
    #[arg(long)]
    kappa: Option<usize>,
    /// Re-check the result and print a certificate line.
    #[arg(long)]
    verify: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchKind {
    Linear,
    Tournament,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value_t = SearchKind::Linear)]
    kind: SearchKind,
    #[arg(long)]
    budget_nodes: Option<u64>,
    #[arg(long)]
    budget_seconds: Option<f64>,
    #[arg(long, env = "RIGIDSEP_THREADS", default_value_t = 1)]
    threads: usize,
    /// Plain enumeration without pruning or symmetry reduction.
    #[arg(long)]
    oracle: bool,
    /// Disable all symmetry reductions.
    #[arg(long)]
    no_symmetry: bool,
    #[arg(long)]
    json: bool,
}

enum Failure {
    Verification(String),
    Input(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Input(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verification(s) | Failure::Input(s) | Failure::Budget(s) => s,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::NotSeparating
            | Error::NonTransitive { .. }
            | Error::DecodedNotSeparating
            | Error::NoExtensionChoice { .. }
            | Error::Internal(_) => Failure::Verification(msg),
            _ => Failure::Input(msg),
        }
    }
}

type CliResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_out(output: Option<&Path>, text: &str) -> CliResult {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_family(path: &Path) -> Result<Family, Failure> {
    Ok(family_json::from_json(&read(path)?)?)
}

fn pair(p: (usize, usize)) -> String {
    format!("({},{})", p.0 + 1, p.1 + 1)
}

fn describe_map(f: &PartialUnaryMap) -> String {
    let parts: Vec<String> =
        f.domain().iter().map(|&x| format!("{}->{}", x + 1, f.apply(x).expect("x in domain") + 1)).collect();
    parts.join(", ")
}

fn describe_comparable(c: &Comparable) -> String {
    format!("double profile of {} lies below that of {}", pair(c.lower), pair(c.upper))
}

fn summary(v: &Verdicts) -> String {
    let sep = match &v.separating {
        Some(s) => s.holds().to_string(),
        None => "n/a".to_string(),
    };
    let rigid = v.definitional.is_none() && v.antichain.is_none();
    let agreement = if v.agree() { "agree" } else { "DISAGREE" };
    format!(
        "separating: {sep}; hereditarily rigid: {rigid} ({}/{} checkers {agreement})",
        v.positive_count().max(v.checker_count() - v.positive_count()),
        v.checker_count()
    )
}

fn verify(path: &Path, as_json: bool) -> CliResult {
    let fam = load_family(path)?;
    let v = Verdicts::compute(&fam);
    if as_json {
        let out = json!({
            "m": fam.m(),
            "kind": fam.kind().to_string(),
            "members": fam.len(),
            "separating": v.separating.as_ref().map(|s| s.holds()),
            "hereditarily_rigid_definitional": v.definitional.is_none(),
            "hereditarily_rigid_antichain": v.antichain.is_none(),
            "checkers": v.checker_count(),
            "agree": v.agree(),
            "collision": v.separating.as_ref().and_then(|s| s.collision()).map(|c| c.to_string()),
            "preserving_map": v.definitional.as_ref().map(describe_map),
            "comparable": v.antichain.as_ref().map(describe_comparable),
        });
        println!("{out}");
    } else {
        println!("{}", summary(&v));
        if let Some(c) = v.separating.as_ref().and_then(|s| s.collision()) {
            println!("collision: {c}");
        }
        if let Some(f) = &v.definitional {
            println!("preserving map: {}", describe_map(f));
        }
        if let Some(c) = &v.antichain {
            println!("comparable: {}", describe_comparable(c));
        }
    }
    if !v.agree() {
        return Err(Failure::Verification("checkers disagree".into()));
    }
    if !v.all_true() {
        return Err(Failure::Verification("family is not separating / hereditarily rigid".into()));
    }
    Ok(())
}

/// Certificate for a freshly built family; printed on stdout when the family went to a file.
fn certify(fam: &Family, to_stdout: bool) -> CliResult {
    let v = Verdicts::compute(fam);
    let line = format!("{} members on {} points; {}", fam.len(), fam.m(), summary(&v));
    if to_stdout {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
    if v.all_true() {
        Ok(())
    } else {
        Err(Failure::Verification(line))
    }
}

fn need(value: Option<usize>, flag: &str) -> Result<usize, Failure> {
    value.ok_or_else(|| Failure::Input(format!("this construction needs {flag}")))
}

fn construct(args: &ConstructArgs) -> CliResult {
    let fam = match args.kind {
        ConstructKind::Cyclic => cyclic_family(need(args.m, "--m")?)?,
        ConstructKind::Paper6 => paper_family_6(),
        ConstructKind::TournamentOptimal => optimal_tournament_family(need(args.m, "--m")?)?,
        ConstructKind::Sperner => sperner_rigid_family(need(args.mu, "--mu")?, need(args.kappa, "--kappa")?)?,
        ConstructKind::BestKnown => best_known_family(need(args.m, "--m")?)?,
    };
    write_out(args.output.as_deref(), &(family_json::to_json_pretty(&fam) + "\n"))?;
    if args.verify {
        certify(&fam, args.output.is_some())?;
    }
    Ok(())
}

fn extend(path: &Path, steps: usize, verify: bool, output: Option<&Path>) -> CliResult {
    let mut fam = load_family(path)?;
    for _ in 0..steps {
        fam = extend_family(&fam)?;
    }
    write_out(output, &(family_json::to_json_pretty(&fam) + "\n"))?;
    if verify {
        certify(&fam, output.is_some())?;
    }
    Ok(())
}

fn budget(nodes: Option<u64>, seconds: Option<f64>, threads: usize) -> Result<SearchBudget, Failure> {
    let default = SearchBudget::default();
    let time = match seconds {
        Some(s) if s.is_finite() && s > 0.0 => Duration::from_secs_f64(s),
        Some(s) => return Err(Failure::Input(format!("bad time budget {s}"))),
        None => default.max_time,
    };
    Ok(SearchBudget::new(nodes.unwrap_or(default.max_nodes), time, threads)?)
}

struct SearchReport {
    status: &'static str,
    value: Option<usize>,
    witness: Option<Family>,
    bracket: Option<(usize, usize)>,
    nodes: u64,
    seconds: f64,
}

fn run_one(args: &SearchArgs, n: usize, budget: &SearchBudget) -> Result<SearchOutcome, Failure> {
    let flags = if args.no_symmetry { SymmetryFlags::NONE } else { SymmetryFlags::ALL };
    let kind = match args.kind {
        SearchKind::Linear => FamilyKind::Linear,
        SearchKind::Tournament => FamilyKind::Tournament,
    };
    Ok(if args.oracle {
        search::brute_force_oracle(args.m, n, kind)?
    } else {
        match args.kind {
            SearchKind::Linear => search::exists_separating_lin_with(args.m, n, budget, flags)?,
            SearchKind::Tournament => search::exists_separating_tour(args.m, n, budget, flags)?,
        }
    })
}

fn search_cmd(args: &SearchArgs) -> CliResult {
    let budget = budget(args.budget_nodes, args.budget_seconds, args.threads)?;
    let report = match args.n {
        Some(n) => {
            let out = run_one(args, n, &budget)?;
            let (value, witness) = match out.status {
                SearchStatus::Found(ref fam) => (Some(n), Some(fam.clone())),
                _ => (None, None),
            };
            SearchReport {
                status: out.status.label(),
                value,
                witness,
                bracket: None,
                nodes: out.nodes_visited,
                seconds: out.elapsed.as_secs_f64(),
            }
        }
        None => {
            // below the lower bound no family exists by counting
            let lower = lower_bound(args.m)?;
            let upper = match args.kind {
                SearchKind::Linear => best_known_family(args.m)?.len(),
                SearchKind::Tournament => lower,
            };
            let mut nodes = 0;
            let mut seconds = 0.0;
            let mut report = None;
            for n in lower..=upper {
                let out = run_one(args, n, &budget)?;
                nodes += out.nodes_visited;
                seconds += out.elapsed.as_secs_f64();
                match out.status {
                    SearchStatus::Found(fam) => {
                        report = Some(SearchReport {
                            status: "FOUND",
                            value: Some(n),
                            witness: Some(fam),
                            bracket: None,
                            nodes,
                            seconds,
                        });
                        break;
                    }
                    SearchStatus::ExhaustedNone => {}
                    SearchStatus::BudgetExceeded => {
                        report = Some(SearchReport {
                            status: "BUDGET_EXCEEDED",
                            value: None,
                            witness: None,
                            bracket: Some((n, upper)),
                            nodes,
                            seconds,
                        });
                        break;
                    }
                }
            }
            report.ok_or_else(|| Failure::Verification(format!("no family found up to the known bound {upper}")))?
        }
    };
    if args.json {
        let mut out = json!({ "status": report.status, "nodes": report.nodes, "seconds": report.seconds });
        if let Some(v) = report.value {
            out["value"] = json!(v);
        }
        if let Some(w) = &report.witness {
            out["witness"] = family_json::to_value(w);
        }
        if let Some((lo, hi)) = report.bracket {
            out["bracket"] = json!([lo, hi]);
        }
        println!("{out}");
    } else {
        println!("status: {}", report.status);
        if let Some(v) = report.value {
            println!("value: {v}");
        }
        if let Some((lo, hi)) = report.bracket {
            println!("bracket: [{lo}, {hi}]");
        }
        if let Some(w) = &report.witness {
            println!("witness: {}", witness_line(w));
        }
        println!("nodes: {}; seconds: {:.3}", report.nodes, report.seconds);
    }
    if report.status == "BUDGET_EXCEEDED" {
        return Err(Failure::Budget("search budget exhausted before a decision".into()));
    }
    Ok(())
}

fn witness_line(fam: &Family) -> String {
    match fam.linear_orders() {
        Some(orders) => orders.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(", "),
        None => family_json::to_json(fam),
    }
}

fn encode(m: usize, n: usize, full: bool, output: Option<&Path>) -> CliResult {
    let inst = sat::encode(m, n, EncodeOptions { fix_first: !full })?;
    write_out(output, &inst.to_dimacs())
}

fn decode(cnf: &Path, model: &Path, output: Option<&Path>) -> CliResult {
    let inst = CnfInstance::from_dimacs(&read(cnf)?)?;
    match sat::parse_model(&read(model)?)? {
        SolverAnswer::Sat(model) => {
            let fam = sat::decode(&inst, &model)?;
            write_out(output, &(family_json::to_json_pretty(&fam) + "\n"))
        }
        SolverAnswer::Unsat => {
            Err(Failure::Verification(format!("solver reports UNSAT: no {} separating orders on {} points", inst.n, inst.m)))
        }
        SolverAnswer::Unknown => Err(Failure::Input("solver output has neither a status nor a model".into())),
    }
}

fn table(
    max_m: usize,
    nodes: Option<u64>,
    seconds: Option<f64>,
    threads: usize,
    as_json: bool,
) -> CliResult {
    if max_m < 2 {
        return Err(Failure::Input("table needs max_m >= 2".into()));
    }
    let budget = if nodes.is_some() || seconds.is_some() { Some(budget(nodes, seconds, threads)?) } else { None };
    let rows = (2..=max_m).map(|m| search::table_row(m, budget.as_ref())).collect::<Result<Vec<TableRow>, _>>()?;
    if as_json {
        let rows: Vec<Value> = rows
            .iter()
            .map(|r| json!({ "m": r.m, "lower_bound": r.lower_bound, "upper_bound": r.upper_bound, "exact": r.exact }))
            .collect();
        println!("{}", Value::Array(rows));
    } else {
        println!("{:>4} {:>6} {:>6}  exact", "m", "lower", "upper");
        for r in &rows {
            let exact = match r.exact {
                Some(v) => v.to_string(),
                None => format!("open [{}, {}]", r.lower_bound, r.upper_bound),
            };
            println!("{:>4} {:>6} {:>6}  {exact}", r.m, r.lower_bound, r.upper_bound);
        }
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Verify { file, json } => verify(&file, json),
        Command::Construct(args) => construct(&args),
        Command::Extend { file, steps, verify, output } => extend(&file, steps, verify, output.as_deref()),
        Command::Search(args) => search_cmd(&args),
        Command::Encode { m, n, full, output } => encode(m, n, full, output.as_deref()),
        Command::Decode { cnf, model, output } => decode(&cnf, &model, output.as_deref()),
        Command::Table { max_m, search_nodes, search_seconds, threads, json } => {
            table(max_m, search_nodes, search_seconds, threads, json)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("rigidsep: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
