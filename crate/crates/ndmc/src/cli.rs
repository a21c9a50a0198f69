use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use ndmc_core::eval::CheckOptions;
use ndmc_core::hardness::{
    decolor, delabel, directed_to_undirected_with, sat_to_directed, weighted_variant, HardnessInstance, SetEncoding,
    Stage,
};
use ndmc_core::logic::SentenceMetrics;
use ndmc_core::partition::{neighborhood_partition, quotient_graph, ClassKind};
use ndmc_core::solvers::{chromatic_number, eds_size, hamiltonian_cycle};
use ndmc_core::vertex_cover::vertex_cover;

use crate::bench;
use crate::codec::{self, read_text};
use crate::error::{CliError, Result};
use crate::report::{InputDigest, RunReport, Stats};
use crate::{check, Engine};

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Model checking and quotient-graph algorithms parameterized by
/// neighborhood diversity.
///
/// Exit status: 0 = the property holds (or the command succeeded),
/// 1 = the property does not hold, 2 = error.
#[derive(Debug, Parser)]
#[command(name = "ndmc", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    /// Include engine statistics in text output.
    #[arg(long, global = true)]
    pub stats: bool,
    /// Seed for randomized graph families.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a graph satisfies a sentence.
    Check {
        graph: PathBuf,
        formula: PathBuf,
        #[arg(long, value_enum, default_value_t = Engine::Fast)]
        engine: Engine,
        /// Abort after this many formula-node visits.
        #[arg(long)]
        budget: Option<u64>,
        /// Treat colors and labels missing from the graph as false.
        #[arg(long)]
        missing_names_false: bool,
        /// Convert the sentence to prenex form first.
        #[arg(long)]
        prenex: bool,
    },
    /// Neighborhood diversity and the classes achieving it.
    Nd { graph: PathBuf },
    /// Minimum vertex cover.
    Vc { graph: PathBuf },
    /// Quotient graph of the neighborhood partition.
    Quotient { graph: PathBuf },
    /// Solve a problem on the quotient graph.
    Solve {
        #[arg(value_enum)]
        problem: Problem,
        graph: PathBuf,
    },
    /// Run a benchmark suite (a built-in name or a suite file).
    Bench {
        suite: String,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    Chromatic,
    Hamiltonian,
    Eds,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StageArg {
    Directed,
    Undirected,
    Uncolored,
    Unlabeled,
}

impl From<StageArg> for Stage {
    fn from(s: StageArg) -> Stage {
        match s {
            StageArg::Directed => Stage::Directed,
            StageArg::Undirected => Stage::Undirected,
            StageArg::Uncolored => Stage::Uncolored,
            StageArg::Unlabeled => Stage::Unlabeled,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EncodingArg {
    /// Path prefixes as set variables (more set quantifiers).
    Mso,
    /// Path prefixes as tuples of vertex variables (keeps one set quantifier).
    Fo,
}

impl From<EncodingArg> for SetEncoding {
    fn from(e: EncodingArg) -> SetEncoding {
        match e {
            EncodingArg::Mso => SetEncoding::Mso,
            EncodingArg::Fo => SetEncoding::Fo,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Graph and sentence that hold iff a 3-CNF formula is satisfiable.
    Sat {
        #[arg(long, value_enum)]
        stage: StageArg,
        /// DIMACS file with exactly three literals per clause.
        #[arg(long)]
        cnf: PathBuf,
        /// Ask for a satisfying assignment with exactly this many true
        /// variables (first-order sentence).
        #[arg(long)]
        weighted: Option<usize>,
        /// Output prefix: writes `<out>.graph` and `<out>.formula`.
        #[arg(long, default_value = "instance")]
        out: PathBuf,
        /// How arc directions are encoded from the undirected stage on.
        #[arg(long, value_enum, default_value_t = EncodingArg::Mso)]
        encoding: EncodingArg,
    },
}

/// A finished command: its report and exit code.
pub struct Finished {
    pub report: RunReport,
    pub exit: i32,
}

fn truth_exit(value: bool) -> i32 {
    if value {
        0
    } else {
        1
    }
}

fn read_input(path: &Path, inputs: &mut Vec<InputDigest>) -> Result<String> {
    let text = read_text(path)?;
    inputs.push(InputDigest::of(path, &text));
    Ok(text)
}

fn graph_input(path: &Path, inputs: &mut Vec<InputDigest>) -> Result<ndmc_core::Graph> {
    let text = read_input(path, inputs)?;
    codec::parse_graph(&text).map_err(|e| e.at_path(&path.display().to_string()))
}

fn metrics_json(m: &SentenceMetrics) -> serde_json::Value {
    json!({
        "q_v": m.q_v,
        "q_s": m.q_s,
        "depth": m.depth,
        "size": m.size,
        "label_count": m.label_count,
    })
}

fn advance(inst: &HardnessInstance, target: Stage, encoding: SetEncoding) -> ndmc_core::Result<HardnessInstance> {
    let mut inst = inst.clone();
    while inst.stage != target {
        inst = match inst.stage {
            Stage::Directed => directed_to_undirected_with(&inst, encoding)?,
            Stage::Undirected => decolor(&inst)?,
            Stage::Uncolored => delabel(&inst)?,
            Stage::Unlabeled => unreachable!("no stage after unlabeled"),
        };
    }
    Ok(inst)
}

pub fn execute(cli: &Cli, command_line: Vec<String>) -> Result<Finished> {
    let mut inputs = Vec::new();
    let (mut report, exit) = match &cli.command {
        Command::Check {
            graph,
            formula,
            engine,
            budget,
            missing_names_false,
            prenex,
        } => {
            let g = graph_input(graph, &mut inputs)?;
            let text = read_input(formula, &mut inputs)?;
            let f = codec::parse_formula(&text).map_err(|e| e.at_path(&formula.display().to_string()))?;
            let opts = CheckOptions {
                budget: *budget,
                missing_names_false: *missing_names_false,
                prenex: *prenex,
                ..CheckOptions::default()
            };
            let start = Instant::now();
            let out = check(&g, &f, *engine, &opts)?;
            let wall_ms = start.elapsed().as_secs_f64() * 1e3;
            let mut report = RunReport::new(command_line, json!(out.value));
            report.engine = Some(engine.name().to_string());
            report.stats = Some(Stats::new(out.stats, wall_ms));
            (report, truth_exit(out.value))
        }
        Command::Nd { graph } => {
            let g = graph_input(graph, &mut inputs)?;
            let p = neighborhood_partition(&g);
            let classes: Vec<_> = (0..p.width())
                .map(|i| json!({"kind": kind_name(p.kind(i)), "vertices": p.class(i)}))
                .collect();
            (RunReport::new(command_line, json!({"nd": p.width(), "classes": classes})), 0)
        }
        Command::Vc { graph } => {
            let g = graph_input(graph, &mut inputs)?;
            let vc = vertex_cover(&g.underlying_undirected())?;
            (RunReport::new(command_line, json!({"size": vc.size, "cover": vc.vertices()})), 0)
        }
        Command::Quotient { graph } => {
            let g = graph_input(graph, &mut inputs)?;
            let p = neighborhood_partition(&g);
            let q = quotient_graph(&g, &p)?;
            let nodes: Vec<_> = q
                .nodes()
                .iter()
                .enumerate()
                .map(|(i, node)| json!({"kind": kind_name(node.kind), "size": node.size, "vertices": p.class(i)}))
                .collect();
            let edges: Vec<_> = q.edges().map(|(i, j)| json!([i, j])).collect();
            let result = json!({"width": q.width(), "nodes": nodes, "edges": edges});
            (RunReport::new(command_line, result), 0)
        }
        Command::Solve { problem, graph } => {
            let g = graph_input(graph, &mut inputs)?;
            match problem {
                Problem::Chromatic => (RunReport::new(command_line, json!({"value": chromatic_number(&g)?})), 0),
                Problem::Eds => (RunReport::new(command_line, json!({"value": eds_size(&g)?})), 0),
                Problem::Hamiltonian => {
                    let value = hamiltonian_cycle(&g)?;
                    (RunReport::new(command_line, json!({"value": value})), truth_exit(value))
                }
            }
        }
        Command::Bench { suite, budget } => {
            let suite = match bench::builtin(suite) {
                Some(s) => s,
                None => {
                    let path = Path::new(suite);
                    if !path.is_file() {
                        return Err(CliError::Usage(format!(
                            "unknown suite `{suite}` (built-in suites: {})",
                            bench::SUITES.join(", ")
                        )));
                    }
                    let text = read_input(path, &mut inputs)?;
                    bench::parse_suite(suite, &text).map_err(|e| e.at_path(suite))?
                }
            };
            let rows = bench::run_suite(&suite, cli.seed, *budget)?;
            let result = json!({"suite": suite.name, "seed": cli.seed, "rows": rows});
            (RunReport::new(command_line, result), 0)
        }
        Command::Gen(GenCommand::Sat {
            stage,
            cnf,
            weighted,
            out,
            encoding,
        }) => {
            let text = read_input(cnf, &mut inputs)?;
            let formula = codec::parse_dimacs(&text).map_err(|e| e.at_path(&cnf.display().to_string()))?;
            let mut directed = sat_to_directed(&formula)?;
            if let Some(w) = weighted {
                let sentence = weighted_variant(&formula, *w)?;
                directed = HardnessInstance::new(directed.graph, sentence, Stage::Directed)?;
            }
            let stage = Stage::from(*stage);
            let encoding = SetEncoding::from(*encoding);
            let inst = advance(&directed, stage, encoding)?;
            let graph_path = with_suffix(out, "graph");
            let formula_path = with_suffix(out, "formula");
            codec::write_text(&graph_path, &codec::render_graph(&inst.graph))?;
            codec::write_text(&formula_path, &codec::render_formula(&inst.sentence))?;
            let mut result = json!({
                "stage": stage.name(),
                "graph": graph_path.display().to_string(),
                "formula": formula_path.display().to_string(),
                "vertices": inst.graph.n(),
                "vertex_cover_size": inst.metadata.vertex_cover_size,
                "bit_width": inst.metadata.bit_width,
                "metrics": metrics_json(&inst.metadata.metrics),
            });
            if stage != Stage::Directed {
                let other = match encoding {
                    SetEncoding::Mso => SetEncoding::Fo,
                    SetEncoding::Fo => SetEncoding::Mso,
                };
                let alt = advance(&directed, stage, other)?;
                result["q_s_other_encoding"] = json!(alt.metadata.metrics.q_s);
            }
            (RunReport::new(command_line, result), 0)
        }
    };
    report.inputs = inputs;
    Ok(Finished { report, exit })
}

fn kind_name(k: ClassKind) -> &'static str {
    match k {
        ClassKind::Clique => "clique",
        ClassKind::Independent => "independent",
    }
}

fn with_suffix(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

/// Parses `args` (including the program name), runs the command, prints the
/// report and returns the exit code.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = write!(sink, "{rendered}");
            return if code == 0 { 0 } else { 2 };
        }
    };
    let command_line = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let finished = execute(&cli, command_line).and_then(|f| {
        let text = match cli.output {
            OutputFormat::Json => f.report.to_json()? + "\n",
            OutputFormat::Text => f.report.to_text(cli.stats),
        };
        Ok((text, f.exit))
    });
    match finished {
        Ok((text, exit)) => {
            let _ = stdout.write_all(text.as_bytes());
            exit
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}
