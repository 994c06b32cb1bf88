//! The `kpierce` command line. [`run`] does all the work and returns the exit
//! code with the text destined for stdout and stderr, so it can be driven
//! in-process.
//!
//! Exit codes: 0 confirmed, 1 refuted or failing, 2 usage or format error,
//! 3 search budget or timeout reached without a conclusion.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kpierce_core::boxes::{
    corollary5_check, figure1_partition, grid_partition, parse_boxf, piercing_number, reduce_to_graph, render_svg,
    to_boxf, validate_family, DiscreteBox,
};
use kpierce_core::certificates::{
    counting_bound, identity_check, prop2_certificate, DEFAULT_IDENTITY_SEED, DEFAULT_IDENTITY_TRIALS,
};
use kpierce_core::constructions::{
    blowup_four_cycle, build_extremal, build_tcolor, k4_three_coloring, PairChoice,
};
use kpierce_core::families::{check_conditions, extract_witnesses, normalize, parse_fam, to_fam};
use kpierce_core::graph::{check_property, is_edge_critical, parse_ecg, to_ecg};
use kpierce_core::search::{
    brute_force_graphs, enumerate_extremal, min_grid_boxes, min_nontrivial_boxes, verify_theorem1, SearchLimits,
};
use kpierce_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn report(code: i32, stdout: impl Into<String>) -> Self {
        CommandOutcome { code, stdout: stdout.into(), stderr: String::new() }
    }

    fn error(code: i32, stderr: impl Into<String>) -> Self {
        CommandOutcome { code, stdout: String::new(), stderr: stderr.into() }
    }
}

#[derive(Parser, Debug)]
#[command(name = "kpierce", version, about = "Monochromatic clique covers and k-piercing box partitions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that every vertex lies in a k-clique of each color
    CheckGraph {
        #[arg(long)]
        k: usize,
        /// Expected number of colors
        #[arg(long)]
        t: Option<usize>,
        file: PathBuf,
    },
    /// Check that deleting any single edge breaks the property
    CheckCritical {
        #[arg(long)]
        k: usize,
        file: PathBuf,
    },
    /// Build graphs and box partitions
    #[command(subcommand)]
    Construct(Construct),
    /// Witness set families of a graph
    #[command(subcommand)]
    Families(FamiliesCmd),
    /// Certificates for lower bounds on the ground set
    #[command(subcommand)]
    Cert(CertCmd),
    /// Partitions of discrete boxes
    #[command(subcommand, name = "box")]
    Box(BoxCmd),
    /// Exhaustive searches with proof records
    #[command(subcommand)]
    Search(SearchCmd),
}

#[derive(Args, Debug)]
struct Output {
    /// Write the artifact here instead of stdout
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum PairKind {
    Blocks,
    Cycle,
    Random,
}

#[derive(Args, Debug)]
struct PairArgs {
    #[arg(long, value_enum, default_value = "blocks")]
    pair: PairKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl PairArgs {
    fn choice(&self) -> PairChoice {
        match self.pair {
            PairKind::Blocks => PairChoice::Blocks,
            PairKind::Cycle => PairChoice::Cycle,
            PairKind::Random => PairChoice::Random { seed: self.seed },
        }
    }
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// The graph G(X, Y, B, R) of a complementary regular pair
    Extremal {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Alternating 4-cycle blown up into (k-1)-cliques
    Blowup {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: Output,
    },
    /// The t-color construction on 2t(k-1) vertices
    Tcolor {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        out: Output,
    },
    /// K_4 colored by its three perfect matchings
    K4 {
        #[command(flatten)]
        out: Output,
    },
    /// The k-piercing partition with 4(k-1) parts
    Figure1 {
        #[arg(long)]
        k: usize,
        /// Axis sizes, default 2(k-1) each
        #[arg(long)]
        n1: Option<usize>,
        #[arg(long)]
        n2: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Product partition into near-equal contiguous blocks
    Grid {
        /// Comma-separated axis sizes
        #[arg(long, value_delimiter = ',', required = true)]
        axes: Vec<usize>,
        /// Comma-separated block counts per axis
        #[arg(long, value_delimiter = ',', required = true)]
        cuts: Vec<usize>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand, Debug)]
enum FamiliesCmd {
    /// Witness families of a graph with the property
    Extract {
        #[arg(long)]
        k: usize,
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Bring families satisfying (1)-(3) to (1)-(5)
    Normalize {
        #[arg(long)]
        k: usize,
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Report conditions (1)-(5)
    Check {
        #[arg(long)]
        k: usize,
        file: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum CertCmd {
    /// Rank certificate for nv >= b + r - 1
    Prop2 { file: PathBuf },
    /// Counting bound nv >= k(b + r) - br
    Count {
        /// Defaults to the smallest set size
        #[arg(long)]
        k: Option<usize>,
        file: PathBuf,
    },
    /// Randomized check of the polynomial identity behind the counting bound
    Identity {
        #[arg(long, default_value_t = DEFAULT_IDENTITY_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_IDENTITY_SEED)]
        seed: u64,
        file: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum BoxCmd {
    /// Partition, nontriviality, piercing number and the rank bound
    Check { file: PathBuf },
    /// The 2-colored graph of a disjoint planar family
    Reduce {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// SVG drawing of a planar family
    Render {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug)]
struct LimitArgs {
    /// Worker threads for the search
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Node budget; exhausting it makes the result inconclusive
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    timeout_secs: Option<u64>,
}

impl LimitArgs {
    fn limits(&self, extended: bool) -> SearchLimits {
        SearchLimits {
            node_budget: self.budget,
            timeout: self.timeout_secs.map(Duration::from_secs),
            threads: self.threads.max(1),
            extended,
        }
    }
}

#[derive(Subcommand, Debug)]
enum SearchCmd {
    /// No graph on fewer than 4(k-1) vertices has the property
    MinGraph {
        #[arg(long)]
        k: usize,
        /// Allow k = 4
        #[arg(long)]
        extended: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Classes of extremal graphs from exact grid tilings
    Extremal {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Fewest nontrivial sub-boxes partitioning the box of FILE
    MinNontrivial {
        file: PathBuf,
        #[arg(long, default_value_t = 12)]
        max_m: usize,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Scan all t-colorings on n vertices
    Brute {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Fewest boxes tiling [b] x [r] with every line in >= k boxes
    Grid {
        #[arg(long)]
        b: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        singletons: bool,
        #[arg(long)]
        max_m: usize,
        #[command(flatten)]
        limits: LimitArgs,
    },
}

enum Failure {
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<CommandOutcome, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

/// Runs a parser and prefixes its diagnostics with the file name.
fn load<T>(path: &Path, parse: impl Fn(&str) -> kpierce_core::Result<T>) -> Result<T, Failure> {
    let text = read(path)?;
    parse(&text).map_err(|e| match e {
        Error::Parse(p) => Failure::Io(format!("{}:{p}", path.display())),
        other => Failure::Io(format!("{}: {other}", path.display())),
    })
}

fn emit(out: &Output, artifact: String) -> Outcome {
    match &out.output {
        Some(path) => {
            fs::write(path, &artifact).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            Ok(CommandOutcome::report(EXIT_OK, format!("wrote {}\n", path.display())))
        }
        None => Ok(CommandOutcome::report(EXIT_OK, artifact)),
    }
}

fn verdict(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

/// Parses `argv` (program name first) and executes the command.
pub fn run<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK { CommandOutcome::report(code, text) } else { CommandOutcome::error(code, text) };
        }
    };
    match dispatch(cli.command) {
        Ok(outcome) => outcome,
        Err(Failure::Io(msg)) => CommandOutcome::error(EXIT_USAGE, format!("error: {msg}\n")),
        Err(Failure::Core(e)) => {
            let code = match e {
                Error::Precondition(_) => EXIT_FAIL,
                _ => EXIT_USAGE,
            };
            CommandOutcome::error(code, format!("error: {e}\n"))
        }
    }
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::CheckGraph { k, t, file } => {
            let g = load(&file, parse_ecg)?;
            if let Some(t) = t.filter(|&t| t != g.t()) {
                return Err(Failure::Io(format!("{}: expected t = {t}, file has t = {}", file.display(), g.t())));
            }
            let report = check_property(&g, k)?;
            Ok(CommandOutcome::report(verdict(report.holds), report.to_string()))
        }
        Command::CheckCritical { k, file } => {
            let g = load(&file, parse_ecg)?;
            let report = is_edge_critical(&g, k)?;
            Ok(CommandOutcome::report(verdict(report.critical), report.to_string()))
        }
        Command::Construct(c) => construct(c),
        Command::Families(c) => families(c),
        Command::Cert(c) => cert(c),
        Command::Box(c) => boxes(c),
        Command::Search(c) => search(c),
    }
}

fn construct(cmd: Construct) -> Outcome {
    match cmd {
        Construct::Extremal { k, pair, out } => {
            let p = pair.choice().pair(k, 0, 1)?;
            emit(&out, to_ecg(&build_extremal(&p)))
        }
        Construct::Blowup { k, out } => emit(&out, to_ecg(&blowup_four_cycle(k)?)),
        Construct::Tcolor { k, t, pair, out } => {
            let choice = pair.choice();
            emit(&out, to_ecg(&build_tcolor(k, t, |i, j| choice.pair(k, i, j))?))
        }
        Construct::K4 { out } => emit(&out, to_ecg(&k4_three_coloring())),
        Construct::Figure1 { k, n1, n2, out } => {
            let side = 2 * k.saturating_sub(1);
            emit(&out, to_boxf(&figure1_partition(k, n1.unwrap_or(side), n2.unwrap_or(side))?))
        }
        Construct::Grid { axes, cuts, out } => {
            let space = DiscreteBox::new(axes).map_err(|e| Failure::Io(e.to_string()))?;
            emit(&out, to_boxf(&grid_partition(&space, &cuts)?))
        }
    }
}

fn families(cmd: FamiliesCmd) -> Outcome {
    match cmd {
        FamiliesCmd::Extract { k, file, out } => {
            let g = load(&file, parse_ecg)?;
            emit(&out, to_fam(&extract_witnesses(&g, k)?))
        }
        FamiliesCmd::Normalize { k, file, out } => {
            let fam = load(&file, parse_fam)?;
            emit(&out, to_fam(&normalize(&fam, k)?))
        }
        FamiliesCmd::Check { k, file } => {
            let fam = load(&file, parse_fam)?;
            let report = check_conditions(&fam, k);
            Ok(CommandOutcome::report(verdict(report.all_hold()), report.to_string()))
        }
    }
}

fn cert(cmd: CertCmd) -> Outcome {
    match cmd {
        CertCmd::Prop2 { file } => {
            let fam = load(&file, parse_fam)?;
            let c = prop2_certificate(&fam)?;
            Ok(CommandOutcome::report(verdict(c.holds), c.to_string()))
        }
        CertCmd::Count { k, file } => {
            let fam = load(&file, parse_fam)?;
            let smallest = fam.blue().iter().chain(fam.red()).map(Vec::len).min().unwrap_or(0);
            let report = counting_bound(&fam, k.unwrap_or(smallest))?;
            Ok(CommandOutcome::report(verdict(report.holds), report.to_string()))
        }
        CertCmd::Identity { trials, seed, file } => {
            let fam = load(&file, parse_fam)?;
            let ok = identity_check(&fam, trials, seed)?;
            let text = format!("certificate: identity\ntrials: {trials}\nseed: {seed}\nholds: {ok}\n");
            Ok(CommandOutcome::report(verdict(ok), text))
        }
    }
}

fn boxes(cmd: BoxCmd) -> Outcome {
    match cmd {
        BoxCmd::Check { file } => {
            let fam = load(&file, parse_boxf)?;
            let validity = validate_family(&fam);
            let mut text = format!("d: {}\nm: {}\n{validity}", fam.space().d(), fam.m());
            if fam.space().d() == 2 {
                text.push_str(&corollary5_check(&fam, false)?.to_string());
            } else {
                text.push_str(&format!("piercing: {}\n", piercing_number(&fam)));
            }
            Ok(CommandOutcome::report(verdict(validity.partition), text))
        }
        BoxCmd::Reduce { file, out } => {
            let fam = load(&file, parse_boxf)?;
            emit(&out, to_ecg(&reduce_to_graph(&fam)?))
        }
        BoxCmd::Render { file, out } => {
            let fam = load(&file, parse_boxf)?;
            emit(&out, render_svg(&fam)?)
        }
    }
}

fn search(cmd: SearchCmd) -> Outcome {
    let record = match cmd {
        SearchCmd::MinGraph { k, extended, limits } => verify_theorem1(k, &limits.limits(extended))?,
        SearchCmd::Extremal { k, limits } => enumerate_extremal(k, &limits.limits(false))?.record,
        SearchCmd::MinNontrivial { file, max_m, limits } => {
            let fam = load(&file, parse_boxf)?;
            min_nontrivial_boxes(fam.space(), max_m, &limits.limits(false))?.record
        }
        SearchCmd::Brute { n, t, k, limits } => brute_force_graphs(n, t, k, &limits.limits(false))?.record,
        SearchCmd::Grid { b, r, k, singletons, max_m, limits } => {
            min_grid_boxes(b, r, k, singletons, max_m, &limits.limits(false))?.record()
        }
    };
    Ok(CommandOutcome::report(record.exit_code(), record.to_string()))
}
