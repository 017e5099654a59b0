//! Command-line front end for the `hypersat` library.
//!
//! [`run`] takes explicit streams so the whole tool can be driven from tests.
//! Exit codes: 0 success, 1 verification failed, 2 usage error, 3 budget
//! exhausted.

pub mod document;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use hypersat::codes::{
    code_cache_path, code_to_text, coloring_cache_path, coloring_to_text, hamming_code, load_or_find_coloring,
    parse_coloring, verify_perfect_code,
};
use hypersat::cycle_tree::build_cycle_tree;
use hypersat::linalg::{all_dependency_certificates, rank_lower_bound, CertSpace};
use hypersat::oracle::{min_sat, min_wsat, FixtureLine, SearchBudget};
use hypersat::percolation::{percolate, Pattern, PatternFamily};
use hypersat::sat::{complete_to_saturated, derive_params, is_qm_saturated, verify_qm_free, SatConstruction};
use hypersat::wsat::{build_wsat_graph, wsat_grid_formula};
use hypersat::{EdgeSubgraph, Error, GridSpace};
use num_bigint::BigInt;
use serde_json::json;

pub use document::{export_dot, GraphDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "hypersat", version, about = "Weak saturation and saturation in hypercubes and grids")]
struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form values.
    #[command(subcommand)]
    Formula(FormulaCmd),
    /// Emit a constructed graph as JSON (or DOT).
    #[command(subcommand)]
    Build(BuildCmd),
    /// Verify a graph document.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Linear-algebra lower bound certificates.
    #[command(subcommand)]
    Cert(CertCmd),
    /// Exact minima by exhaustive search on tiny hosts.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Edge 3-colourings of hypercubes without monochromatic 4- or 6-cycles.
    #[command(subcommand)]
    Coloring(ColoringCmd),
    /// Write the Hamming code of length 2^t - 1 to the cache.
    Hamming {
        #[arg(short = 't')]
        t: u32,
        #[arg(long, default_value = ".")]
        cache_dir: PathBuf,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct GridArgs {
    #[arg(short = 'k')]
    k: u32,
    #[arg(short = 'r')]
    r: u32,
    #[arg(short = 'd')]
    d: u32,
    #[arg(short = 'm')]
    m: u32,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Write here instead of standard output.
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
    /// DOT instead of JSON.
    #[arg(long)]
    dot: bool,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Graph document; `-` reads standard input.
    #[arg(short = 'i', long, default_value = "-")]
    input: String,
}

#[derive(Subcommand, Debug)]
enum FormulaCmd {
    /// wsat of P_k^d with respect to axis-aligned P_r^m.
    Wsat(GridArgs),
}

#[derive(Subcommand, Debug)]
enum BuildCmd {
    /// The extremal weakly saturated graph.
    Wsat {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// The Q_m-free base graph of the saturation construction.
    Sat {
        #[arg(short = 'm')]
        m: u32,
        #[arg(short = 'd')]
        d: u32,
        #[arg(long)]
        seed: u64,
        /// Greedily add edges until saturated.
        #[arg(long)]
        complete: bool,
        /// Seconds allowed for each colouring search.
        #[arg(long, default_value_t = 600)]
        budget_secs: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// A weakly C_2l-saturated spanning tree.
    CycleTree {
        #[arg(short = 'k')]
        k: u32,
        #[arg(short = 'd')]
        d: u32,
        #[arg(short = 'l')]
        l: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Subcommand, Debug)]
enum CheckCmd {
    /// Weak saturation: does the closure reach the whole host?
    Percolate {
        /// subcube:M, grid:R:M or cycle:L
        #[arg(long)]
        family: String,
        /// Write the addition order and witnesses here.
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Q_m-free and every missing edge completes a Q_m.
    Saturated {
        #[arg(short = 'm')]
        m: u32,
        #[command(flatten)]
        input: InputArgs,
    },
    /// No Q_m subcube is fully present.
    Qmfree {
        #[arg(short = 'm')]
        m: u32,
        #[command(flatten)]
        input: InputArgs,
    },
}

#[derive(Subcommand, Debug)]
enum CertCmd {
    /// Rank of all edge vectors, compared with the formula.
    Rank(GridArgs),
    /// Dependency certificates for every axis-aligned copy, as JSON.
    Deps(GridArgs),
}

#[derive(Args, Debug)]
struct OracleBudgetArgs {
    #[arg(long, default_value_t = 600)]
    time_limit_secs: u64,
    /// Print a golden-file line instead of just the value.
    #[arg(long)]
    fixture: bool,
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    Wsat {
        #[arg(short = 'k')]
        k: u32,
        #[arg(short = 'd')]
        d: u32,
        #[arg(long)]
        family: String,
        #[command(flatten)]
        budget: OracleBudgetArgs,
    },
    Sat {
        #[arg(short = 'd')]
        d: u32,
        #[arg(short = 'm')]
        m: u32,
        #[command(flatten)]
        budget: OracleBudgetArgs,
    },
}

#[derive(Subcommand, Debug)]
enum ColoringCmd {
    /// Load from the cache or search, then store.
    Find {
        #[arg(short = 's')]
        s: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = ".")]
        cache_dir: PathBuf,
        #[arg(long, default_value_t = 600)]
        budget_secs: u64,
    },
    /// Exhaustively check a colouring file.
    Verify { file: PathBuf },
}

impl Command {
    fn reads_stdin(&self) -> bool {
        match self {
            Command::Check(
                CheckCmd::Percolate { input, .. } | CheckCmd::Saturated { input, .. } | CheckCmd::Qmfree { input, .. },
            ) => input.input == "-",
            _ => false,
        }
    }
}

struct Failure {
    code: i32,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExhausted(_) => EXIT_BUDGET,
            Error::ContainsPattern(_)
            | Error::NotA0Pair
            | Error::DegenerateNullSpace(_)
            | Error::InvalidCertificate { .. } => EXIT_FAILED,
            _ => EXIT_USAGE,
        };
        Failure { code, msg: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: EXIT_USAGE, msg: e.to_string() }
    }
}

type Outcome = std::result::Result<i32, Failure>;

struct Io {
    stdin: Option<String>,
    stdout: Vec<u8>,
}

impl Io {
    fn read_document(&mut self, input: &InputArgs) -> std::result::Result<GraphDocument, Failure> {
        let text = if input.input == "-" {
            self.stdin.take().unwrap_or_default()
        } else {
            std::fs::read_to_string(&input.input)?
        };
        Ok(GraphDocument::from_json(&text)?)
    }

    fn emit_graph(&mut self, g: &EdgeSubgraph, meta: BTreeMap<String, serde_json::Value>, out: &OutputArgs) -> Outcome {
        let doc = GraphDocument::from_subgraph(g, meta);
        let text = if out.dot { export_dot(&doc)? } else { doc.to_json() };
        match &out.output {
            Some(path) => std::fs::write(path, text)?,
            None => self.stdout.write_all(text.as_bytes())?,
        }
        Ok(EXIT_OK)
    }
}

fn meta(pairs: &[(&str, serde_json::Value)]) -> BTreeMap<String, serde_json::Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn family_for(space: &GridSpace, text: &str) -> std::result::Result<PatternFamily, Failure> {
    let pattern: Pattern = text.parse()?;
    Ok(PatternFamily::new(space, pattern)?)
}

fn dispatch(command: Command, io: &mut Io) -> Outcome {
    match command {
        Command::Formula(FormulaCmd::Wsat(a)) => {
            writeln!(io.stdout, "{}", wsat_grid_formula(a.k, a.r, a.d, a.m)?)?;
            Ok(EXIT_OK)
        }
        Command::Build(cmd) => build(cmd, io),
        Command::Check(cmd) => check(cmd, io),
        Command::Cert(cmd) => cert(cmd, io),
        Command::Oracle(cmd) => oracle(cmd, io),
        Command::Coloring(cmd) => coloring(cmd, io),
        Command::Hamming { t, cache_dir } => {
            let code = hamming_code(t)?;
            let members = code.members()?;
            let perfect = verify_perfect_code(code.length(), &members);
            std::fs::create_dir_all(&cache_dir)?;
            let path = code_cache_path(&cache_dir, t);
            std::fs::write(&path, code_to_text(&code)?)?;
            writeln!(io.stdout, "t {t} length {} size {} perfect {perfect}", code.length(), code.size())?;
            writeln!(io.stdout, "cache: {}", path.display())?;
            Ok(if perfect { EXIT_OK } else { EXIT_FAILED })
        }
    }
}

fn build(cmd: BuildCmd, io: &mut Io) -> Outcome {
    match cmd {
        BuildCmd::Wsat { grid: a, out } => {
            let g = build_wsat_graph(a.k, a.r, a.d, a.m)?;
            let meta = meta(&[
                ("construction", json!("wsat")),
                ("k", json!(a.k)),
                ("r", json!(a.r)),
                ("d", json!(a.d)),
                ("m", json!(a.m)),
            ]);
            io.emit_graph(&g, meta, &out)
        }
        BuildCmd::Sat { m, d, seed, complete, budget_secs, out } => {
            let params = derive_params(m, d)?;
            let construction = SatConstruction::search(params, seed, Duration::from_secs(budget_secs))?;
            let mut g = construction.build_base_graph()?;
            if complete {
                g = complete_to_saturated(&g, m)?;
            }
            let meta = meta(&[
                ("construction", json!(if complete { "sat-completed" } else { "sat" })),
                ("m", json!(m)),
                ("d", json!(d)),
                ("seed", json!(seed)),
            ]);
            io.emit_graph(&g, meta, &out)
        }
        BuildCmd::CycleTree { k, d, l, out } => {
            let g = build_cycle_tree(k, d, l)?;
            let meta =
                meta(&[("construction", json!("cycle-tree")), ("k", json!(k)), ("d", json!(d)), ("l", json!(l))]);
            io.emit_graph(&g, meta, &out)
        }
    }
}

fn check(cmd: CheckCmd, io: &mut Io) -> Outcome {
    match cmd {
        CheckCmd::Percolate { family, certificate, input } => {
            let g = io.read_document(&input)?.to_subgraph()?;
            let family = family_for(g.space(), &family)?;
            let cert = percolate(&g, &family);
            let total = g.space().edge_count();
            if let Some(path) = &certificate {
                std::fs::write(path, cert.to_text())?;
            }
            let code = if cert.percolates() {
                writeln!(
                    io.stdout,
                    "verified: weakly saturated ({} edges added in {} rounds)",
                    cert.order.len(),
                    cert.rounds
                )?;
                EXIT_OK
            } else {
                writeln!(io.stdout, "failed: closure has {} of {total} edges", cert.final_graph.len())?;
                EXIT_FAILED
            };
            if let Some(path) = &certificate {
                writeln!(io.stdout, "certificate: {}", path.display())?;
            }
            Ok(code)
        }
        CheckCmd::Saturated { m, input } => {
            let g = io.read_document(&input)?.to_subgraph()?;
            if is_qm_saturated(&g, m)? {
                writeln!(io.stdout, "verified: Q_{m}-saturated")?;
                Ok(EXIT_OK)
            } else {
                writeln!(io.stdout, "failed: not Q_{m}-saturated")?;
                Ok(EXIT_FAILED)
            }
        }
        CheckCmd::Qmfree { m, input } => {
            let g = io.read_document(&input)?.to_subgraph()?;
            let report = verify_qm_free(&g, m)?;
            if report.passed {
                writeln!(io.stdout, "verified: Q_{m}-free ({} subcubes checked)", report.checked)?;
                Ok(EXIT_OK)
            } else {
                writeln!(io.stdout, "failed: contains a Q_{m}")?;
                Ok(EXIT_FAILED)
            }
        }
    }
}

fn cert(cmd: CertCmd, io: &mut Io) -> Outcome {
    match cmd {
        CertCmd::Rank(a) => {
            let report = rank_lower_bound(a.k, a.r, a.d, a.m)?;
            let formula = wsat_grid_formula(a.k, a.r, a.d, a.m)?;
            let equal = BigInt::from(report.rank) == formula;
            writeln!(io.stdout, "rank {}", report.rank)?;
            writeln!(io.stdout, "rank_mod_p {}", report.rank_mod_p)?;
            writeln!(io.stdout, "formula {formula}")?;
            writeln!(io.stdout, "equal {equal}")?;
            Ok(if equal { EXIT_OK } else { EXIT_FAILED })
        }
        CertCmd::Deps(a) => {
            let cs = CertSpace::new(a.k, a.r, a.d, a.m)?;
            let certs = all_dependency_certificates(&cs)?;
            let all_ok = certs.iter().all(|c| c.verified);
            let doc: Vec<serde_json::Value> = certs.iter().map(|c| c.to_json()).collect();
            writeln!(io.stdout, "{}", serde_json::Value::Array(doc))?;
            Ok(if all_ok { EXIT_OK } else { EXIT_FAILED })
        }
    }
}

fn oracle(cmd: OracleCmd, io: &mut Io) -> Outcome {
    let (space, pattern, result, fixture) = match cmd {
        OracleCmd::Wsat { k, d, family, budget } => {
            let space = GridSpace::new(k, d)?;
            let pattern: Pattern = family.parse()?;
            PatternFamily::new(&space, pattern)?;
            let b = SearchBudget {
                time_limit: Duration::from_secs(budget.time_limit_secs),
                ..SearchBudget::wsat_default()
            };
            let result = min_wsat(&space, pattern, &b)?;
            (space, pattern, result, budget.fixture)
        }
        OracleCmd::Sat { d, m, budget } => {
            let space = GridSpace::hypercube(d)?;
            let b =
                SearchBudget { time_limit: Duration::from_secs(budget.time_limit_secs), ..SearchBudget::sat_default() };
            let result = min_sat(&space, m, &b)?;
            (space, Pattern::Subcube { m }, result, budget.fixture)
        }
    };
    if fixture {
        let line = FixtureLine { k: space.k(), d: space.d(), pattern, value: result.value, witness: result.witness };
        writeln!(io.stdout, "{line}")?;
    } else {
        writeln!(io.stdout, "{}", result.value)?;
    }
    Ok(EXIT_OK)
}

fn coloring(cmd: ColoringCmd, io: &mut Io) -> Outcome {
    match cmd {
        ColoringCmd::Find { s, seed, cache_dir, budget_secs } => {
            std::fs::create_dir_all(&cache_dir)?;
            let c = load_or_find_coloring(&cache_dir, s, seed, Duration::from_secs(budget_secs))?;
            let path = coloring_cache_path(&cache_dir, s, seed);
            if !path.exists() {
                std::fs::write(&path, coloring_to_text(&c, seed))?;
            }
            writeln!(io.stdout, "verified: Q_{s} colouring, seed {seed}")?;
            writeln!(io.stdout, "cache: {}", path.display())?;
            Ok(EXIT_OK)
        }
        ColoringCmd::Verify { file } => {
            let (c, seed) = parse_coloring(&std::fs::read_to_string(&file)?)?;
            let v = c.violations();
            if v.total() == 0 {
                writeln!(io.stdout, "verified: Q_{} colouring, seed {seed}", c.s())?;
                Ok(EXIT_OK)
            } else {
                writeln!(
                    io.stdout,
                    "failed: {} monochromatic 4-cycles, {} monochromatic 6-cycles",
                    v.four_cycles, v.six_cycles
                )?;
                Ok(EXIT_FAILED)
            }
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            let _ = writeln!(stderr, "error: --threads must be positive");
            return EXIT_USAGE;
        }
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut io = Io { stdin: None, stdout: Vec::new() };
    if cli.command.reads_stdin() {
        let mut text = String::new();
        if let Err(e) = stdin.read_to_string(&mut text) {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
        io.stdin = Some(text);
    }
    let result = pool.install(|| dispatch(cli.command, &mut io));
    let _ = stdout.write_all(&io.stdout);
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.msg);
            f.code
        }
    }
}
