//! `parity` command line: `compile`, `verify` and `report`.
//!
//! Exit codes: 0 success, 1 verification or generation failure, 2 usage error,
//! 3 simulator cap exceeded.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::json;

use crate::algorithms::{
    draper_addition_logical, draper_addition_with, draper_core, graph_state_logical, graph_state_prep,
    grover_diffusion_logical, grover_diffusion_with, multi_controlled_phase, multi_controlled_phase_logical,
    qaoa_logical, qaoa_step_with, qft_logical, qft_parity_with, Graph, IsingModel, QaoaParams,
};
use crate::circuit::Circuit;
use crate::error::Error;
use crate::layout::ParityLayout;
use crate::layouts::{addition_layout, lhz_layout};
use crate::scheduler::{resource_stats, schedule, ResourceStats};
use crate::simulator::{check_stabilizers, encode, logical_register, state_fidelity, verify_equivalence_on, InputSpace, StateVector};
use crate::synth::compile_logical;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

const FIDELITY_THRESHOLD: f64 = 1.0 - 1e-10;
const BASELINE_SOURCE: &str = "gate-model literature (Holmes et al. 2020)";

#[derive(Parser, Debug)]
#[command(name = "parity", version, about = "Compile logical circuits onto parity-encoded qubit layouts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate and compile a circuit, write circuit and layout JSON, print resources.
    Compile(CompileArgs),
    /// Check a physical circuit against a logical reference on the code space.
    Verify(VerifyArgs),
    /// Resource tables over a range of sizes.
    Report(ReportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Qft,
    Add,
    Grover,
    Qaoa,
    Graphstate,
    Custom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Toggle {
    On,
    Off,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Md,
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct CompileArgs {
    pub target: Target,
    /// Problem size: logical qubits, or bits per register for `add`.
    #[arg(long)]
    pub n: Option<usize>,
    /// Write the physical circuit JSON here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the layout JSON here.
    #[arg(long)]
    pub layout_out: Option<PathBuf>,
    /// Also write the logical reference circuit.
    #[arg(long)]
    pub logical_out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "on")]
    pub passes: Toggle,
    /// Add the scheduled layer of every gate to the circuit JSON.
    #[arg(long)]
    pub schedule: bool,
    /// Seed for random problem instances.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Format of the resource statistics.
    #[arg(long, value_enum, default_value = "md")]
    pub format: Format,
    /// Give the second addend its own LHZ triangle.
    #[arg(long, num_args = 0..=1, default_value = "false", default_missing_value = "true", action = clap::ArgAction::Set)]
    pub r2_internal: bool,
    /// Number of controls `m` of the multi-controlled phase (diffusion on `m+1` qubits).
    #[arg(long)]
    pub controls: Option<usize>,
    /// Only the multi-controlled phase, without the diffusion wrapper.
    #[arg(long)]
    pub phase_only: bool,
    /// Graph edges as `a-b` pairs separated by commas.
    #[arg(long)]
    pub edges: Option<String>,
    /// Append the decoding step to the graph-state preparation.
    #[arg(long)]
    pub decode: bool,
    #[arg(long, default_value_t = 0.3)]
    pub beta: f64,
    #[arg(long, default_value_t = 0.7)]
    pub gamma: f64,
    /// Logical circuit JSON for `custom`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Layout JSON for `custom` (default: the full LHZ layout).
    #[arg(long)]
    pub layout: Option<PathBuf>,
    /// Simulate the compiled circuit on the encoded all-zero state and write a binary state dump.
    #[arg(long)]
    pub dump: Option<PathBuf>,
    /// Print the layout as an ASCII grid.
    #[arg(long)]
    pub ascii: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Physical circuit JSON.
    #[arg(long)]
    pub circuit: PathBuf,
    /// Layout JSON the circuit was compiled for.
    #[arg(long)]
    pub layout: PathBuf,
    /// Logical reference circuit JSON.
    #[arg(long)]
    pub logical: PathBuf,
    /// Compare prepared states from all-zero inputs instead of unitaries on the code space.
    #[arg(long)]
    pub state: bool,
    /// Logical qubits fixed to zero on input (comma separated).
    #[arg(long)]
    pub fixed_zero: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportTarget {
    Qft,
    Add,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    pub target: ReportTarget,
    /// Inclusive range `a..b` or a single size.
    #[arg(long)]
    pub n: String,
    #[arg(long, value_enum, default_value = "md")]
    pub format: Format,
}

/// Failure carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(m: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: m.into() }
    }
    fn fail(m: impl Into<String>) -> Self {
        CliError { code: EXIT_FAIL, message: m.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => CliError { code: EXIT_CAP, message: e.to_string() },
            Error::InvalidArgument(_) => CliError::usage(e.to_string()),
            _ => CliError::fail(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Entry point used by the binary; returns the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

/// Runs a parsed command and returns its standard output.
pub fn run(cli: Cli) -> CliResult<String> {
    match cli.command {
        Command::Compile(a) => cmd_compile(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Report(a) => cmd_report(&a),
    }
}

fn need_n(a: &CompileArgs, min: usize) -> CliResult<usize> {
    match a.n {
        Some(n) if n >= min => Ok(n),
        Some(n) => Err(CliError::usage(format!("--n must be at least {min}, got {n}"))),
        None => Err(CliError::usage("--n is required")),
    }
}

pub fn parse_edges(s: &str) -> CliResult<Vec<(usize, usize)>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let (x, y) = p.split_once(['-', ':']).ok_or_else(|| CliError::usage(format!("bad edge {p:?}")))?;
            let parse = |v: &str| v.trim().parse::<usize>().map_err(|_| CliError::usage(format!("bad edge {p:?}")));
            Ok((parse(x)?, parse(y)?))
        })
        .collect()
}

/// Parses `a..b` (inclusive) or a single number.
pub fn parse_range(s: &str) -> CliResult<std::ops::RangeInclusive<usize>> {
    let bad = || CliError::usage(format!("bad range {s:?}; expected a..b"));
    match s.split_once("..") {
        Some((a, b)) => {
            let a = a.trim().parse().map_err(|_| bad())?;
            let b = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            Ok(a..=b)
        }
        None => {
            let a = s.trim().parse().map_err(|_| bad())?;
            Ok(a..=a)
        }
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::fail(format!("cannot write {}: {e}", path.display())))
}

fn stats_line(s: &ResourceStats) -> String {
    format!(
        "qubits {}, CNOT {}, CP {}, single-qubit {}, total {}, depth {}",
        s.qubits, s.cnot_count, s.cp_count, s.single_qubit_count, s.total_gates, s.depth
    )
}

fn format_stats(s: &ResourceStats, f: Format) -> String {
    match f {
        Format::Md => s.to_table(),
        Format::Json => s.to_json() + "\n",
        Format::Csv => format!(
            "qubits,cnot,cp,single_qubit,total,depth\n{},{},{},{},{},{}\n",
            s.qubits, s.cnot_count, s.cp_count, s.single_qubit_count, s.total_gates, s.depth
        ),
    }
}

/// Generated physical circuit plus its layout and logical reference.
struct Compiled {
    layout: ParityLayout,
    circuit: Circuit,
    logical: Circuit,
    notes: Vec<String>,
}

fn generate(a: &CompileArgs) -> CliResult<Compiled> {
    let passes = a.passes == Toggle::On;
    let out = match a.target {
        Target::Qft => {
            let n = need_n(a, 2)?;
            let (layout, circuit) = qft_parity_with(n, passes)?;
            Compiled { layout, circuit, logical: qft_logical(n)?, notes: vec![] }
        }
        Target::Add => {
            let n = need_n(a, 1)?;
            let (layout, circuit) = draper_addition_with(n, a.r2_internal, passes)?;
            let (_, core) = draper_core(n, a.r2_internal)?;
            let core = resource_stats(&core);
            let notes = vec![format!("qubits {}, depth(core) {}, core: {}", layout.k(), core.depth, stats_line(&core))];
            Compiled { layout, circuit, logical: draper_addition_logical(n)?, notes }
        }
        Target::Grover => {
            let m = match (a.controls, a.n) {
                (Some(m), _) => m,
                (None, Some(n)) => n.saturating_sub(1),
                (None, None) => return Err(CliError::usage("--controls is required")),
            };
            if m < 2 {
                return Err(CliError::usage(format!("--controls must be at least 2, got {m}")));
            }
            let (g, circuit, logical) = if a.phase_only {
                let (g, c) = multi_controlled_phase(m, std::f64::consts::PI)?;
                (g, c, multi_controlled_phase_logical(m, std::f64::consts::PI)?)
            } else {
                let (g, c) = grover_diffusion_with(m + 1, passes)?;
                (g, c, grover_diffusion_logical(m + 1)?)
            };
            let notes = vec![format!(
                "ancilla physical qubits {}, ancilla line lengths {:?}",
                g.ancilla_physical_qubits(),
                g.ancilla_line_lengths()
            )];
            Compiled { layout: g.layout, circuit, logical, notes }
        }
        Target::Qaoa => {
            let n = need_n(a, 2)?;
            let layout = lhz_layout(n)?;
            let model = IsingModel::random_all_to_all(n, &mut StdRng::seed_from_u64(a.seed));
            let params = QaoaParams::new(vec![a.beta], vec![a.gamma])?;
            let circuit = qaoa_step_with(&model, &params, &layout, passes)?;
            Compiled { logical: qaoa_logical(n, &model, &params)?, layout, circuit, notes: vec![] }
        }
        Target::Graphstate => {
            let n = need_n(a, 1)?;
            let edges = parse_edges(a.edges.as_deref().unwrap_or(""))?;
            let g = Graph::new(n, edges)?;
            let (layout, circuit) = graph_state_prep(&g, a.decode)?;
            let notes = vec!["prepares a state: verify with --state".to_string()];
            Compiled { layout, circuit, logical: graph_state_logical(&g), notes }
        }
        Target::Custom => {
            let path = a.input.as_ref().ok_or_else(|| CliError::usage("--input is required for custom"))?;
            let logical = Circuit::from_json(&read(path)?).map_err(|e| CliError::usage(e.to_string()))?;
            let layout = match &a.layout {
                Some(p) => ParityLayout::from_json(&read(p)?).map_err(|e| CliError::usage(e.to_string()))?,
                None => lhz_layout(logical.width().max(2))?,
            };
            let circuit = compile_logical(&layout, &logical)?;
            let circuit = if passes { circuit } else { circuit_without_passes(&layout, &logical)? };
            Compiled { layout, circuit, logical, notes: vec![] }
        }
    };
    Ok(out)
}

fn circuit_without_passes(layout: &ParityLayout, logical: &Circuit) -> CliResult<Circuit> {
    let mut out = crate::synth::physical_circuit(layout);
    out.global_phase = logical.global_phase;
    for g in &logical.gates {
        let mut single = Circuit::logical(logical.width());
        single.register = logical.register.clone();
        single.push(g.clone());
        out.append(&compile_logical(layout, &single)?);
    }
    Ok(out)
}

pub fn cmd_compile(a: &CompileArgs) -> CliResult<String> {
    let c = generate(a)?;
    let sched = schedule(&c.circuit);
    let mut out = String::new();
    if let Some(p) = &a.out {
        let layers = a.schedule.then_some(sched.assignment.as_slice());
        write(p, &c.circuit.to_json_with_layers(layers))?;
    }
    if let Some(p) = &a.layout_out {
        write(p, &c.layout.to_json())?;
    }
    if let Some(p) = &a.logical_out {
        write(p, &c.logical.to_json())?;
    }
    if let Some(p) = &a.dump {
        let mut state = StateVector::zero(c.layout.qubits.clone())?;
        state.apply(&c.circuit)?;
        let mut file = std::fs::File::create(p)
            .map_err(|e| CliError::fail(format!("cannot write {}: {e}", p.display())))?;
        state
            .write_dump(&mut file)
            .map_err(|e| CliError::fail(format!("cannot write {}: {e}", p.display())))?;
    }
    if a.ascii {
        out.push_str(&c.layout.render_ascii());
    }
    out.push_str(&format_stats(&sched.stats, a.format));
    if a.format != Format::Json {
        let _ = writeln!(out, "{}", stats_line(&sched.stats));
        for n in &c.notes {
            let _ = writeln!(out, "{n}");
        }
    }
    Ok(out)
}

pub fn cmd_verify(a: &VerifyArgs) -> CliResult<String> {
    let circuit = Circuit::from_json(&read(&a.circuit)?).map_err(|e| CliError::usage(e.to_string()))?;
    let layout = ParityLayout::from_json(&read(&a.layout)?).map_err(|e| CliError::usage(e.to_string()))?;
    let logical = Circuit::from_json(&read(&a.logical)?).map_err(|e| CliError::usage(e.to_string()))?;
    let (fidelity, deviation) = if a.state {
        let mut got = StateVector::zero(layout.qubits.clone())?;
        got.apply(&circuit)?;
        let mut want = StateVector::zero(logical_register(layout.n_logical))?;
        want.apply(&logical)?;
        let want = encode(&layout, &want)?;
        (state_fidelity(&want, &got), check_stabilizers(&layout, &got))
    } else {
        let fixed_zero = match &a.fixed_zero {
            Some(s) => s
                .split(',')
                .filter(|x| !x.trim().is_empty())
                .map(|x| x.trim().parse().map_err(|_| CliError::usage(format!("bad qubit {x:?}"))))
                .collect::<CliResult<Vec<usize>>>()?,
            None => vec![],
        };
        let opts = InputSpace { fixed_zero, random_states: 4, seed: a.seed };
        let eq = verify_equivalence_on(&logical, &circuit, &layout, &opts)?;
        (eq.fidelity, eq.stabilizer_deviation)
    };
    let out = format!("fidelity {fidelity:.15}\nstabilizer deviation {deviation:.3e}\n");
    if fidelity >= FIDELITY_THRESHOLD {
        Ok(out)
    } else {
        print!("{out}");
        Err(CliError::fail(format!("fidelity {fidelity} below {FIDELITY_THRESHOLD}")))
    }
}

fn render(headers: &[&str], rows: &[Vec<String>], f: Format, note: &str) -> String {
    let mut out = String::new();
    match f {
        Format::Csv => {
            let _ = writeln!(out, "{}", headers.join(","));
            for r in rows {
                let _ = writeln!(out, "{}", r.join(","));
            }
        }
        Format::Md => {
            let _ = writeln!(out, "| {} |", headers.join(" | "));
            let _ = writeln!(out, "|{}", headers.iter().map(|_| "---|").collect::<String>());
            for r in rows {
                let _ = writeln!(out, "| {} |", r.join(" | "));
            }
            let _ = writeln!(out, "\n{note}");
        }
        Format::Json => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    let obj: serde_json::Map<String, serde_json::Value> = headers
                        .iter()
                        .zip(r)
                        .map(|(h, v)| (h.to_string(), v.parse::<f64>().map(|x| json!(x)).unwrap_or(json!(v))))
                        .collect();
                    serde_json::Value::Object(obj)
                })
                .collect();
            let doc = json!({ "rows": items, "note": note });
            out.push_str(&serde_json::to_string_pretty(&doc).expect("json"));
            out.push('\n');
        }
    }
    out
}

pub fn cmd_report(a: &ReportArgs) -> CliResult<String> {
    let range = parse_range(&a.n)?;
    let mut rows = Vec::new();
    let s = |x: usize| x.to_string();
    match a.target {
        ReportTarget::Qft => {
            let headers = [
                "n", "qubits", "cnot", "single_qubit", "total", "depth",
                "all_to_all_cnot", "all_to_all_depth", "square_lattice_cnot", "square_lattice_depth",
            ];
            for n in range {
                if n < 2 {
                    continue;
                }
                let (_, c) = qft_parity_with(n, true)?;
                let st = resource_stats(&c);
                rows.push(vec![
                    s(n), s(st.qubits), s(st.cnot_count), s(st.single_qubit_count), s(st.total_gates), s(st.depth),
                    s(n * (n - 1)), s(8 * n - 10), s(3 * n * (n - 1) / 2), s(10 * n - 13),
                ]);
            }
            let note = format!("Baseline columns are cited constants from {BASELINE_SOURCE}, not computed.");
            Ok(render(&headers, &rows, a.format, &note))
        }
        ReportTarget::Add => {
            let headers = [
                "n", "qubits", "qubits_r2_internal", "cnot", "single_qubit", "total", "depth",
                "all_to_all_qubits", "all_to_all_cnot", "all_to_all_single_qubit", "all_to_all_depth",
            ];
            for n in range {
                if n < 1 {
                    continue;
                }
                let (layout, core) = draper_core(n, false)?;
                let st = resource_stats(&core);
                let internal = addition_layout(n, true)?.k();
                rows.push(vec![
                    s(n), s(layout.k()), s(internal), s(st.cnot_count), s(st.single_qubit_count), s(st.total_gates),
                    s(st.depth), s(2 * n), s(n * (n + 1)), s(n * (n + 5) / 2),
                    format!("{:.3}", 3.0 * (n as f64).log2() + 1.0),
                ]);
            }
            let note = "Core step only (QFT parts excluded). All-to-all columns are cited constants, not computed.";
            Ok(render(&headers, &rows, a.format, note))
        }
    }
}
