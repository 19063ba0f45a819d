//! Command-line front end.
//!
//! Exit codes: 0 success, 1 failed verification or unreadable input,
//! 2 violated hypothesis (the witness is printed), 3 exhausted budget.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use brooks::color::brute_chromatic;
use brooks::descent::brooks_color;
use brooks::gadgets::{self, extract_separator, GadgetGraph, InjectionPair};
use brooks::graph::find_conflict;
use brooks::io;
use brooks::regular::regularize;
use brooks::schmerl;
use brooks::tverberg::run_trace;
use brooks::{Coloring, Error, FiniteGraph};

#[derive(Parser)]
#[command(name = "brooks", version, about = "Brooks-type graph coloring and reversal gadgets")]
struct Cli {
    /// Seed for the `generate` subcommand.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Color a graph with at most max(d, 3) colors (d colors when d >= 3).
    Color {
        graph: PathBuf,
        /// Degree bound d; defaults to the maximum degree.
        #[arg(long)]
        degree: Option<usize>,
        /// Write the deletion stages here (d = 3 only).
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that a coloring is proper, complete and within its palette.
    Verify { graph: PathBuf, coloring: PathBuf },
    /// Replay a trace file against a graph and audit every stage.
    CheckTrace { graph: PathBuf, trace: PathBuf },
    /// Exact chromatic number by exhaustive search.
    Chi {
        graph: PathBuf,
        #[arg(long, env = "BROOKS_CHI_CAP", default_value_t = 8)]
        cap: usize,
        /// Refuse larger graphs.
        #[arg(long, env = "BROOKS_CHI_MAX_VERTICES", default_value_t = 60)]
        max_vertices: usize,
    },
    /// Build a gadget from an injection pair file.
    Gadget {
        kind: GadgetArg,
        pair: PathBuf,
        #[arg(long, default_value_t = 3)]
        d: usize,
        /// Overrides the horizon given in the file.
        #[arg(long)]
        horizon: Option<usize>,
        /// Write a proper coloring of the gadget here.
        #[arg(long)]
        color: Option<PathBuf>,
        /// Color the gadget and report the set it separates.
        #[arg(long)]
        extract: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Leveled graph without property A, with the given number of ladder rungs.
    Schmerl {
        #[arg(long, default_value_t = 6)]
        levels: usize,
    },
    /// Random test instance.
    Generate {
        kind: GenArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        d: usize,
        /// Edge probability for `bounded`.
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GadgetArg {
    H2,
    Hd,
    Ladder,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenArg {
    Cubic,
    Regular,
    Bounded,
}

enum Failure {
    Lib(Error),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        e if e.is_hypothesis_violation() => 2,
        Error::Budget(_) | Error::NoColoringWithinCap(_) => 3,
        _ => 1,
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<FiniteGraph, Error> {
    io::parse_graph(&read(path)?).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Error> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Error::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.cmd {
        Cmd::Color {
            graph,
            degree,
            trace,
            output,
        } => {
            let g = read_graph(&graph)?;
            let d = match degree {
                Some(d) => d,
                None => g.max_degree()?,
            };
            log::info!("coloring {} vertices with degree bound {d}", g.n());
            let coloring = if let Some(path) = trace {
                if d != 3 {
                    return Err(Error::Input("--trace needs degree bound 3".into()).into());
                }
                let run = run_trace(&g)?;
                emit(Some(&path), &io::write_trace(&run.trace, run.embedding.is_some()))?;
                run.coloring
            } else {
                brooks_color(&g, d)?
            };
            emit(output.as_deref(), &io::write_coloring(&coloring))?;
        }
        Cmd::Verify { graph, coloring } => {
            let g = read_graph(&graph)?;
            let c = io::parse_coloring(&read(&coloring)?)?;
            verify(&g, &c)?;
            println!("ok: proper coloring with palette {}", c.palette());
        }
        Cmd::CheckTrace { graph, trace } => {
            let g = read_graph(&graph)?;
            let file = io::parse_trace(&read(&trace)?)?;
            let report = if file.regularized {
                io::verify_trace_records(regularize(&g, 3)?.target(), &file.records)
            } else {
                io::verify_trace_records(&g, &file.records)
            }
            .map_err(|e| Failure::Verify(format!("trace rejected: {e}")))?;
            println!(
                "ok: {} stages, at most {} low-degree vertices, {} germ deadlines checked",
                report.stages, report.max_low, report.germ_checks
            );
        }
        Cmd::Chi {
            graph,
            cap,
            max_vertices,
        } => {
            let g = read_graph(&graph)?;
            if g.n() > max_vertices {
                return Err(Error::Budget(max_vertices).into());
            }
            println!("{}", brute_chromatic(&g, cap)?);
        }
        Cmd::Gadget {
            kind,
            pair,
            d,
            horizon,
            color,
            extract,
            output,
        } => {
            let mut p = io::parse_injection_pair(&read(&pair)?)?;
            if let Some(h) = horizon {
                p = InjectionPair::new(p.f().to_vec(), p.g().to_vec(), h)?;
            }
            let (gg, bound): (GadgetGraph<FiniteGraph>, usize) = match kind {
                GadgetArg::H2 => (gadgets::build_h2(&p), 2),
                GadgetArg::Hd => (gadgets::build_hd(&p, d)?, d),
                GadgetArg::Ladder => (gadgets::build_ladder(&p), 2),
            };
            let mut text = io::write_graph(&gg.graph);
            if color.is_some() || extract {
                let c = brooks_color(&gg.graph, bound)?;
                if let Some(path) = &color {
                    emit(Some(path), &io::write_coloring(&c))?;
                }
                if extract {
                    let x = extract_separator(&gg, &c)?;
                    text += &format!("# X = {}\n", set(x.iter()));
                    let verdict = match p.check_separation(&x) {
                        Ok(()) => "OK".to_string(),
                        Err(e) => format!("FAILED ({e})"),
                    };
                    text += &format!(
                        "# X ⊇ {}, X ∩ {} = ∅: {verdict}\n",
                        set(p.range_f().iter()),
                        set(p.range_g().iter())
                    );
                    if verdict != "OK" {
                        emit(output.as_deref(), &text)?;
                        return Err(Failure::Verify("separation failed".into()));
                    }
                }
            }
            emit(output.as_deref(), &text)?;
        }
        Cmd::Schmerl { levels } => {
            let g = schmerl::build_apexed_ladder(levels)?;
            let cg = schmerl::compose_cg(&g)?;
            println!("composed graph: {} vertices, levels 0..={}", cg.graph.n(), cg.height());
            for (i, z) in cg.levels().iter().enumerate() {
                println!("  Z_{i} = {}", set(z.iter()));
            }
            match cg.check_conditions() {
                Ok(()) => println!("level conditions: OK"),
                Err(e) => return Err(Failure::Verify(format!("level conditions: FAILED ({e})"))),
            }
            match schmerl::has_property_a(&cg.graph) {
                schmerl::PropertyA::NotExtendable(w) => {
                    let color = |v| w.iter().find(|p| p.0 == v).map(|p| p.1);
                    let (a, b) = (color(schmerl::c::A), color(schmerl::c::B));
                    if a == b {
                        println!("property A: FALSE, witness c(a)=c(b)={}", a.unwrap_or(0));
                    } else {
                        println!("property A: FALSE");
                    }
                    let pairs: Vec<String> = w.iter().map(|(v, c)| format!("{v}:{c}")).collect();
                    println!("non-extendable precoloring: {}", pairs.join(" "));
                }
                other => println!("property A: TRUE ({other:?})"),
            }
        }
        Cmd::Generate {
            kind,
            n,
            d,
            density,
            output,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let g = match kind {
                GenArg::Cubic => brooks::generate::random_cubic(&mut rng, n)?,
                GenArg::Regular => brooks::generate::random_regular(&mut rng, n, d, false, 1_000_000)?,
                GenArg::Bounded => {
                    if !(0.0..=1.0).contains(&density) {
                        return Err(Error::Input(format!("density {density} is not a probability")).into());
                    }
                    brooks::generate::random_bounded(&mut rng, n, d, density)
                }
            };
            emit(output.as_deref(), &io::write_graph(&g))?;
        }
    }
    Ok(())
}

fn verify(g: &FiniteGraph, c: &Coloring) -> Outcome {
    if let Some((v, _)) = c.iter().find(|&(v, _)| v >= g.n()) {
        return Err(Failure::Verify(format!("vertex {v} is not in the graph")));
    }
    if let Some(v) = g.vertices().find(|&v| c.get(v).is_none()) {
        return Err(Failure::Verify(format!("incomplete: vertex {v} has no color")));
    }
    if let Some((u, v)) = find_conflict(g, c, g.vertices())? {
        return Err(Failure::Verify(format!(
            "conflict: edge ({u},{v}) has both ends colored {}",
            c.get(u).unwrap()
        )));
    }
    Ok(())
}

fn set<'a>(it: impl Iterator<Item = &'a usize>) -> String {
    format!("{{{}}}", it.map(|v| v.to_string()).collect::<Vec<_>>().join(", "))
}
