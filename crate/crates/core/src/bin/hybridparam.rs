use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hybridparam::cli::{self, ApproxOptions, Engine, Structure};
use hybridparam::decomp::{validate_helim, validate_htd, validate_td, FamilyPredicate};
use hybridparam::gen::{self, Param, Planted};
use hybridparam::{io, Error, Graph, Problem, ProblemInstance, VertexSet};

#[derive(Parser)]
#[command(name = "hybridparam", version, about = "Exact and approximate solvers over hybrid graph parameters")]
struct Cli {
    /// Print JSON instead of TSV.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    Vc,
    Fvs,
    Is,
    Ds,
    Bwds,
    Sivc,
    Cvc,
    CyclePack,
    MinorPack,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Brute,
    TdDp,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParamArg {
    Mod,
    Twh,
}

#[derive(Subcommand)]
enum Command {
    /// Write one instance of a named suite.
    Gen {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a graph file and optionally a decomposition of it.
    Validate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, group = "decomp")]
        htd: Option<PathBuf>,
        #[arg(long, group = "decomp")]
        td: Option<PathBuf>,
        #[arg(long, group = "decomp")]
        helim: Option<PathBuf>,
    },
    /// Exact optimum and witness.
    Solve {
        #[arg(long, value_enum)]
        problem: ProblemArg,
        #[arg(long, value_enum)]
        engine: EngineArg,
        #[arg(long)]
        graph: PathBuf,
        /// Tree decomposition for the td-dp engine.
        #[arg(long)]
        decomp: Option<PathBuf>,
        /// Blue vertices (1-based, comma separated).
        #[arg(long)]
        blue: Option<String>,
        /// Pre-dominated vertices for ds, the set X for sivc.
        #[arg(long)]
        annotated: Option<String>,
        #[arg(long)]
        patterns: Option<PathBuf>,
    },
    /// Approximation scheme over a modulator or an H-tree decomposition.
    Approx {
        #[arg(long, value_enum)]
        problem: ProblemArg,
        #[arg(long, value_enum)]
        param: ParamArg,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, group = "structure", required = true)]
        modulator: Option<PathBuf>,
        #[arg(long, group = "structure", required = true)]
        htd: Option<PathBuf>,
        /// Base family for a modulator file without an `f` line
        /// (EDGELESS, FORESTS or TW<w>).
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long = "lossy-base")]
        lossy_base: Option<f64>,
        #[arg(long)]
        patterns: Option<PathBuf>,
    },
    /// Run every manifest instance at every epsilon.
    Bench {
        #[arg(long)]
        suite: PathBuf,
        #[arg(long = "eps-list", value_delimiter = ',', required = true)]
        eps_list: Vec<f64>,
        #[arg(long)]
        report: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Run(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e)
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn parse_list(text: &str, n: usize) -> Result<VertexSet, Error> {
    io::parse_vertex_set(&text.replace(',', " "), n)
}

fn parse_family(text: &str) -> Result<FamilyPredicate, Failure> {
    let t = text.to_ascii_uppercase();
    match t.as_str() {
        "EDGELESS" => Ok(FamilyPredicate::Edgeless),
        "FORESTS" => Ok(FamilyPredicate::Forests),
        _ => t
            .strip_prefix("TW")
            .map(|w| w.trim_start_matches(':'))
            .and_then(|w| w.parse().ok())
            .map(FamilyPredicate::TwAtMost)
            .ok_or_else(|| Failure::Usage(format!("unknown family '{text}'"))),
    }
}

fn build_problem(
    arg: ProblemArg,
    g: &Graph,
    ann: &io::Annotations,
    blue: Option<&str>,
    annotated: Option<&str>,
    patterns: Option<&Path>,
) -> Result<Problem, Failure> {
    let listed = |flag: Option<&str>, file: &Option<VertexSet>| -> Result<VertexSet, Error> {
        match flag {
            Some(s) => parse_list(s, g.n()),
            None => Ok(file.clone().unwrap_or_default()),
        }
    };
    Ok(match arg {
        ProblemArg::Vc => Problem::VertexCover,
        ProblemArg::Fvs => Problem::FeedbackVertexSet,
        ProblemArg::Is => Problem::IndependentSet,
        ProblemArg::Cvc => Problem::ConnectedVertexCover,
        ProblemArg::CyclePack => Problem::CyclePacking,
        ProblemArg::Ds => Problem::DominatingSet {
            dominated: listed(annotated, &ann.dominated)?,
        },
        ProblemArg::Bwds => Problem::BlueWhiteDominatingSet {
            blue: listed(blue, &ann.blue)?,
        },
        ProblemArg::Sivc => Problem::SetIntersectingVertexCover {
            x: listed(annotated, &ann.x)?,
        },
        ProblemArg::MinorPack => {
            let Some(p) = patterns else {
                return Err(Failure::Usage("minor-pack needs --patterns".into()));
            };
            Problem::MinorPacking {
                patterns: io::parse_patterns(&read(p)?)?,
            }
        }
    })
}

fn print_record(json_out: bool, fields: &[(&str, serde_json::Value)]) {
    if json_out {
        let map: serde_json::Map<String, serde_json::Value> =
            fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        println!("{}", serde_json::Value::Object(map));
    } else {
        for (k, v) in fields {
            let text = match v {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Null => "-".into(),
                other => other.to_string(),
            };
            println!("{k}\t{text}");
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let json_out = cli.json;
    match cli.command {
        Command::Gen { spec, seed, out } => {
            let inst = gen::generate(&spec, seed)?;
            std::fs::create_dir_all(&out).map_err(|e| Error::Input(format!("{}: {e}", out.display())))?;
            let stem = out.join(format!("{spec}-{seed}"));
            let graph_path = stem.with_extension("gr");
            write(&graph_path, &io::write_graph(&inst.graph))?;
            let (side_path, side) = match &inst.planted {
                Planted::Modulator { m, family } => (stem.with_extension("mod"), io::write_modulator(m, *family)),
                Planted::Htd(d) => (stem.with_extension("htd"), io::write_htd(d, inst.graph.n())),
            };
            write(&side_path, &side)?;
            print_record(
                json_out,
                &[
                    ("problem", json!(inst.problem.name())),
                    ("param", json!(inst.param.to_string())),
                    ("graph", json!(graph_path.display().to_string())),
                    ("structure", json!(side_path.display().to_string())),
                ],
            );
            Ok(())
        }
        Command::Validate { graph, htd, td, helim } => {
            let g = io::parse_graph(&read(&graph)?)?;
            let verdict = if let Some(p) = htd {
                validate_htd(&g, &io::parse_htd(&read(&p)?, g.n())?)
            } else if let Some(p) = td {
                validate_td(&g, &io::parse_td(&read(&p)?, g.n())?)
            } else if let Some(p) = helim {
                validate_helim(&g, &io::parse_helim(&read(&p)?, g.n())?)
            } else {
                Ok(())
            };
            match verdict {
                Ok(()) => {
                    print_record(json_out, &[("status", json!("ok")), ("n", json!(g.n())), ("m", json!(g.m()))]);
                    Ok(())
                }
                Err(v) => Err(Failure::Run(Error::Input(format!("violation: {v}")))),
            }
        }
        Command::Solve {
            problem,
            engine,
            graph,
            decomp,
            blue,
            annotated,
            patterns,
        } => {
            let (g, ann) = io::parse_graph_annotated(&read(&graph)?)?;
            let p = build_problem(problem, &g, &ann, blue.as_deref(), annotated.as_deref(), patterns.as_deref())?;
            let engine = match engine {
                EngineArg::Brute => Engine::Brute,
                EngineArg::TdDp => Engine::TdDp,
            };
            let td = decomp.map(|f| read(&f).and_then(|t| io::parse_td(&t, g.n()))).transpose()?;
            let inst = ProblemInstance::new(g, p)?;
            let (value, sol) = cli::solve(&inst, engine, td.as_ref())?;
            let witness = if json_out {
                cli::solution_json(&sol)
            } else {
                json!(cli::format_solution(&sol))
            };
            print_record(
                json_out,
                &[("problem", json!(inst.problem.name())), ("value", json!(value)), ("witness", witness)],
            );
            Ok(())
        }
        Command::Approx {
            problem,
            param,
            eps,
            graph,
            modulator,
            htd,
            family,
            alpha,
            lossy_base,
            patterns,
        } => {
            let (g, ann) = io::parse_graph_annotated(&read(&graph)?)?;
            let p = build_problem(problem, &g, &ann, None, None, patterns.as_deref())?;
            let param = match param {
                ParamArg::Mod => Param::Mod,
                ParamArg::Twh => Param::Twh,
            };
            if !cli::supported(&p, param, alpha.is_some()) {
                return Err(Failure::Usage(format!("no {param} scheme for {p}")));
            }
            let structure = match (modulator, htd) {
                (Some(f), _) => {
                    let (m, file_family) = io::parse_modulator(&read(&f)?, g.n())?;
                    let family = match family {
                        Some(s) => parse_family(&s)?,
                        None => file_family.unwrap_or_else(|| cli::default_family(&p)),
                    };
                    Structure::Modulator { m, family }
                }
                (None, Some(f)) => Structure::Htd(io::parse_htd(&read(&f)?, g.n())?),
                (None, None) => return Err(Failure::Usage("approx needs --modulator or --htd".into())),
            };
            let opts = ApproxOptions {
                alpha,
                lossy: lossy_base,
            };
            let r = cli::approx(&g, &p, param, &structure, eps, opts)?;
            let opt = cli::oracle(&ProblemInstance::new(g, p.clone())?);
            let witness = if json_out {
                cli::solution_json(&r.solution)
            } else {
                json!(cli::format_solution(&r.solution))
            };
            print_record(
                json_out,
                &[
                    ("problem", json!(p.name())),
                    ("param", json!(param.to_string())),
                    ("eps", json!(eps)),
                    ("value", json!(r.value())),
                    ("case", json!(r.case.to_string())),
                    ("opt", json!(opt)),
                    ("ratio", json!(cli::ratio(r.value(), opt))),
                    ("witness", witness),
                ],
            );
            Ok(())
        }
        Command::Bench { suite, eps_list, report } => {
            let entries = gen::parse_manifest(&read(&suite)?)?;
            let rows = cli::bench(&entries, &eps_list, cli::thread_cap())?;
            write(&report, &cli::report_json(&rows))?;
            if json_out {
                println!("{}", cli::report_json(&rows));
            } else {
                print!("{}", cli::report_tsv(&rows));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(e)) => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
    }
}
