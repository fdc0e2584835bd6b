//! `majnet`: simulate, compile, predict and verify majority networks.
//!
//! Exit codes: 0 success, 1 I/O error, 2 parse or validation error, 3 budget
//! exceeded, 4 a witness check diverged.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use majnet::circuits::{flatten_depth1, monotonize, synchronize, Circuit, TmLayout};
use majnet::formats::{
    parse_circuit, parse_network, parse_tm, parse_witness, write_circuit, write_network, write_trace, write_witness,
    NetworkFile, Trace,
};
use majnet::gadgets::{
    amplify, attach_eventual_gadget, build_clock, build_full_instance, clock_initial, compile_bseq_instance,
    compile_circuit_to_majority, compile_clocked_to_majority, compile_tm, circuit_network_config, to_portion,
    CompiledKind, Literal, SourceKind, Witness,
};
use majnet::netcore::{find_limit_cycle, trajectory, Budget, Configuration, Network, Threshold};
use majnet::solvers::{
    predict_conditional, predict_eventual, predict_full, predict_once, verify_witness, CompiledObject, SourceObject,
    VerifyOptions,
};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}:{line}: {msg}", path.display())]
    Parse { path: PathBuf, line: usize, msg: String },
    #[error("{0}")]
    Core(#[from] majnet::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Diverged(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Core(e) if e.is_budget() => 3,
            CliError::Core(_) | CliError::Parse { .. } | CliError::Usage(_) => 2,
            CliError::Diverged(_) => 4,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser)]
#[command(name = "majnet", version, about = "Majority networks under block-sequential update schemes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a network and print its trajectory.
    Simulate(SimulateArgs),
    /// Apply a construction and write the result with its witness.
    Compile(CompileArgs),
    /// Answer a prediction question for the file's target vertex.
    Predict(PredictArgs),
    /// Check a witness against its source and compiled objects.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct BudgetArgs {
    /// Largest number of configurations stored during cycle detection.
    #[arg(long, default_value_t = majnet::netcore::DEFAULT_MAX_CONFIGS)]
    max_configs: usize,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget::with_max_configs(self.max_configs)
    }
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("length").required(true))]
struct SimulateArgs {
    network: PathBuf,
    /// Number of global steps to print after the initial configuration.
    #[arg(long, group = "length")]
    steps: Option<usize>,
    /// Run until the trajectory closes a cycle and report it.
    #[arg(long, group = "length")]
    until_cycle: bool,
    /// Write the trace here instead of standard output.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct CompileArgs {
    #[command(subcommand)]
    kind: CompileKind,
    /// Output file for the compiled object (standard output if omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output file for the witness.
    #[arg(long, global = true)]
    witness: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CompileKind {
    /// Monotone circuit to a majority network (one step evaluates it).
    Gates { circuit: PathBuf },
    /// The 12-vertex clock network.
    Clock,
    /// Replace every vertex by 2k+1 copies.
    Amplify {
        network: PathBuf,
        #[arg(short)]
        k: usize,
    },
    /// Clocked majority network to a plain one with a sequential scheme.
    Clocked { network: PathBuf },
    /// Iterated circuit reachability to one-vertex prediction.
    Bseq {
        circuit: PathBuf,
        /// Initial state as a bitstring.
        #[arg(long)]
        input: String,
        /// Coordinate whose activation is asked for.
        #[arg(long)]
        target: usize,
    },
    /// Monotone iterable circuit to a depth-1 one (synchronizing first).
    Flatten { circuit: PathBuf },
    /// Dual-rail monotonization.
    Monotone { circuit: PathBuf },
    /// Majority network to a portion-p network.
    Portion {
        network: PathBuf,
        #[arg(short)]
        p: Threshold,
    },
    /// Reduce one-vertex prediction to eventual prediction.
    Eventual {
        network: PathBuf,
        #[arg(long)]
        vertex: usize,
    },
    /// Reduce one-vertex prediction to reaching the all-active configuration.
    Full {
        network: PathBuf,
        #[arg(long)]
        vertex: usize,
    },
    /// Bounded Turing machine run to an iterable circuit.
    Tm {
        machine: PathBuf,
        /// Input word as comma-separated symbol names (defaults to the file's `word`).
        #[arg(long)]
        input: Option<String>,
        /// Tape length as a multiple of the input length.
        #[arg(short = 'K', default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_gates: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Once,
    Eventual,
    Full,
    Conditional,
}

#[derive(Args)]
struct PredictArgs {
    network: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Once)]
    mode: Mode,
    /// Vertices whose initial state is left open (conditional mode).
    #[arg(long, value_delimiter = ',')]
    free: Vec<usize>,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct VerifyArgs {
    witness: PathBuf,
    /// Source file; ignored (and may be `-`) for the clock.
    source: PathBuf,
    compiled: PathBuf,
    #[arg(long, default_value_t = 32)]
    samples: usize,
    #[arg(long, default_value_t = 60)]
    steps: usize,
    /// Seed of the sampler; the default makes runs reproducible.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    budget: BudgetArgs,
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn emit(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.to_path_buf(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Parse errors carry the file name so messages read `file:line: ...`.
fn parsed<T>(path: &Path, r: majnet::Result<T>) -> CliResult<T> {
    r.map_err(|e| match e {
        majnet::Error::Parse { line, msg } => CliError::Parse { path: path.to_path_buf(), line, msg },
        other => CliError::Core(other),
    })
}

fn load_network(path: &Path) -> CliResult<NetworkFile> {
    parsed(path, parse_network(&read(path)?))
}

fn load_circuit(path: &Path) -> CliResult<Circuit> {
    parsed(path, parse_circuit(&read(path)?))
}

fn simulate(a: &SimulateArgs) -> CliResult<()> {
    let f = load_network(&a.network)?;
    let trace = match a.steps {
        Some(steps) => Trace { steps: trajectory(&f.network, &f.init, steps), cycle: None },
        None => {
            let report = find_limit_cycle(&f.network, &f.init, &a.budget.budget())?;
            let steps = trajectory(&f.network, &f.init, report.transient + report.period);
            Trace::from_cycle(steps, &report)
        }
    };
    emit(a.trace.as_deref(), &write_trace(&trace))
}

fn lifted(w: &Witness, init: &Configuration) -> Configuration {
    Configuration::from_bits(&w.lift_state(&init.to_bits()))
}

fn parse_bits(s: &str) -> CliResult<Vec<bool>> {
    let c: Configuration = s.parse()?;
    Ok(c.to_bits())
}

/// Witness for an iterable circuit stage whose lift and observations
/// coincide.
fn stage(n: usize, m: usize, map: impl Fn(usize) -> Literal) -> Witness {
    let mut w = Witness::new(SourceKind::IteratedCircuit, CompiledKind::Circuit, n, m);
    w.lift = (0..m).map(&map).collect();
    w.observe = (0..m).map(|j| (j, map(j))).collect();
    w
}

enum Compiled {
    Network(NetworkFile),
    Circuit(String),
}

fn compile(a: &CompileArgs) -> CliResult<()> {
    let (out, w) = match &a.kind {
        CompileKind::Gates { circuit } => {
            let c = load_circuit(circuit)?;
            let (network, w) = compile_circuit_to_majority(&c)?;
            let init = circuit_network_config(&w, &vec![false; c.n()]);
            (Compiled::Network(NetworkFile { network, init, target: None }), w)
        }
        CompileKind::Clock => {
            let (network, w) = build_clock();
            (Compiled::Network(NetworkFile { network, init: clock_initial(), target: None }), w)
        }
        CompileKind::Amplify { network, k } => {
            let f = load_network(network)?;
            let (network, w) = amplify(&f.network, *k)?;
            let init = lifted(&w, &f.init);
            (Compiled::Network(NetworkFile { network, init, target: None }), w)
        }
        CompileKind::Clocked { network } => {
            let f = load_network(network)?;
            let (network, w) = compile_clocked_to_majority(&f.network)?;
            let init = lifted(&w, &f.init);
            (Compiled::Network(NetworkFile { network, init, target: None }), w)
        }
        CompileKind::Bseq { circuit, input, target } => {
            let c = load_circuit(circuit)?;
            let x = parse_bits(input)?;
            let inst = compile_bseq_instance(&c, &x, *target)?;
            let file = NetworkFile { network: inst.network, init: inst.config, target: Some(inst.target) };
            (Compiled::Network(file), inst.witness)
        }
        CompileKind::Flatten { circuit } => {
            let c = load_circuit(circuit)?;
            c.require_iterable()?;
            let n = c.n();
            let layered = synchronize(&c)?;
            let width = layered.width;
            let pad = stage(n, width, |j| if j < n { Literal::Pos(j) } else { Literal::Zero });
            let (flat, emb) = flatten_depth1(&layered.circuit)?;
            let coords = emb.n * emb.depth;
            let mut spread = stage(width, coords, |j| if j < emb.n { Literal::Pos(j) } else { Literal::Zero });
            spread.period = emb.depth;
            let mut w = pad.compose(&spread)?;
            w.stat("depth", emb.depth);
            w.stat("width", width);
            (Compiled::Circuit(write_circuit(&flat)), w)
        }
        CompileKind::Monotone { circuit } => {
            let c = load_circuit(circuit)?;
            let (mono, _) = monotonize(&c);
            let (n, m) = (c.n(), c.m());
            let rail = |j: usize, k: usize| if j < k { Literal::Pos(j) } else { Literal::Neg(j - k) };
            let mut w = if c.is_iterable() {
                stage(n, 2 * n, |j| rail(j, n))
            } else {
                let mut w = Witness::new(SourceKind::Circuit, CompiledKind::Circuit, n, 2 * n);
                w.observe = (0..2 * m).map(|j| (j, rail(j, m))).collect();
                w
            };
            w.lift = (0..2 * n).map(|j| rail(j, n)).collect();
            w.note("inputs and outputs are dual-rail: positive rails, then negative rails");
            (Compiled::Circuit(write_circuit(&mono)), w)
        }
        CompileKind::Portion { network, p } => {
            let f = load_network(network)?;
            let (network, w) = to_portion(&f.network, *p)?;
            let init = lifted(&w, &f.init);
            (Compiled::Network(NetworkFile { network, init, target: f.target }), w)
        }
        CompileKind::Eventual { network, vertex } => {
            let f = load_network(network)?;
            let (network, u, w) = attach_eventual_gadget(&f.network, *vertex)?;
            let init = lifted(&w, &f.init);
            (Compiled::Network(NetworkFile { network, init, target: Some(u) }), w)
        }
        CompileKind::Full { network, vertex } => {
            let f = load_network(network)?;
            let max = f.network.graph().max_degree().max(3);
            let d = if max % 2 == 0 { max + 1 } else { max };
            let (network, w) = build_full_instance(&f.network, d, *vertex)?;
            let init = lifted(&w, &f.init);
            (Compiled::Network(NetworkFile { network, init, target: Some(*vertex) }), w)
        }
        CompileKind::Tm { machine, input, k, max_gates } => {
            let tm = parsed(machine, parse_tm(&read(machine)?))?;
            let word = match input {
                Some(s) => s
                    .split(',')
                    .filter(|a| !a.is_empty())
                    .map(|a| {
                        tm.machine
                            .symbol_id(a)
                            .ok_or_else(|| CliError::Usage(format!("unknown symbol {a:?} in --input")))
                    })
                    .collect::<CliResult<Vec<_>>>()?,
                None => tm.input,
            };
            let (tc, w) = compile_tm(&tm.machine, &word, *k, *max_gates)?;
            let x0 = Configuration::from_bits(&tc.x0);
            let text = format!("# initial state {x0}\n{}", write_circuit(&tc.circuit));
            (Compiled::Circuit(text), w)
        }
    };
    let text = match out {
        Compiled::Network(f) => write_network(&f),
        Compiled::Circuit(text) => text,
    };
    emit(a.out.as_deref(), &text)?;
    if let Some(p) = &a.witness {
        emit(Some(p), &write_witness(&w))?;
    }
    Ok(())
}

fn predict(a: &PredictArgs) -> CliResult<()> {
    let f = load_network(&a.network)?;
    let budget = a.budget.budget();
    let target = || f.target.ok_or_else(|| CliError::Usage("the network file has no `target` line".into()));
    let verdict = match a.mode {
        Mode::Once => predict_once(&f.network, &f.init, target()?, &budget)?,
        Mode::Eventual => predict_eventual(&f.network, &f.init, target()?, &budget)?,
        Mode::Full => predict_full(&f.network, &f.init, &budget)?,
        Mode::Conditional => predict_conditional(&f.network, &f.init, &a.free, target()?, &budget)?,
    };
    println!("{verdict}");
    if let Some(c) = verdict.completion.filter(|_| matches!(a.mode, Mode::Conditional)) {
        println!("completion {c}");
    }
    Ok(())
}

fn verify(a: &VerifyArgs) -> CliResult<()> {
    let w = parsed(&a.witness, parse_witness(&read(&a.witness)?))?;
    let opts = VerifyOptions { samples: a.samples, steps: a.steps, seed: a.seed, budget: a.budget.budget() };

    let (cmp_net, cmp_circuit) = match w.compiled {
        CompiledKind::Network => (Some(load_network(&a.compiled)?.network), None),
        CompiledKind::Circuit => (None, Some(load_circuit(&a.compiled)?)),
    };
    let cmp = match (&cmp_net, &cmp_circuit) {
        (Some(n), _) => CompiledObject::Network(n),
        (_, Some(c)) => CompiledObject::Circuit(c),
        _ => unreachable!("one compiled object is loaded"),
    };

    let mut src_net: Option<Network> = None;
    let mut src_circuit: Option<Circuit> = None;
    let mut src_tm = None;
    match w.source {
        SourceKind::Network => src_net = Some(load_network(&a.source)?.network),
        SourceKind::Circuit | SourceKind::IteratedCircuit => src_circuit = Some(load_circuit(&a.source)?),
        SourceKind::TuringMachine => src_tm = Some(parsed(&a.source, parse_tm(&read(&a.source)?))?.machine),
        SourceKind::Clock => {}
    }
    let src = match w.source {
        SourceKind::Network => SourceObject::Network(src_net.as_ref().expect("loaded")),
        SourceKind::Circuit => SourceObject::Circuit(src_circuit.as_ref().expect("loaded")),
        SourceKind::IteratedCircuit => SourceObject::IteratedCircuit(src_circuit.as_ref().expect("loaded")),
        SourceKind::Clock => SourceObject::Clock,
        SourceKind::TuringMachine => {
            let m = src_tm.as_ref().expect("loaded");
            let cells = w
                .get_stat("cells")
                .and_then(|c| c.parse().ok())
                .ok_or_else(|| CliError::Usage("machine witness lacks a `cells` stat".into()))?;
            SourceObject::Tm(m, TmLayout::new(m, cells))
        }
    };

    let report = verify_witness(src, cmp, &w, &opts)?;
    for o in &report.outcomes {
        let status = if o.passed() { "pass" } else { "FAIL" };
        print!("sample {} {status} checks={}", o.index, o.checks);
        if let Some((s, c)) = o.answers {
            print!(" answer source={} compiled={}", s as u8, c as u8);
        }
        println!();
    }
    for (k, v) in &report.stats {
        println!("stat {k} {v}");
    }
    println!("{} of {} samples passed", report.outcomes.iter().filter(|o| o.passed()).count(), report.outcomes.len());
    if let Some(d) = report.first_divergence() {
        return Err(CliError::Diverged(d.to_string()));
    }
    if let Some(o) = report.first_failure() {
        return Err(CliError::Diverged(format!("sample {}: source and compiled answers differ", o.index)));
    }
    Ok(())
}

fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Simulate(a) => simulate(a),
        Command::Compile(a) => compile(a),
        Command::Predict(a) => predict(a),
        Command::Verify(a) => verify(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
