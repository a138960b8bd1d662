//! `homlab`: command-line front end. Exit status 0 on success, 2 when a
//! budget is exhausted, 64 on usage errors, 65 on malformed or invalid
//! input data and 66 on I/O errors.

mod bench;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use homlab_core::graph::io::{
    parse_coloring, parse_graph, parse_layering, parse_track_layout, parse_undirected, write_coloring,
    ParsedGraph,
};
use homlab_core::graph::{Coloring, DiGraph, Graph};
use homlab_core::poly::io::{parse_triple, write_triple};
use homlab_core::poly::{
    cohen_triple, distance2_coloring, local_triples, search_triple, shadow_combine, triple_from_track_layout,
    verify_persistent_triple, SearchOutcome, Triple,
};
use homlab_core::sa::{build_sa, solve_sa};
use homlab_core::lp::{lp_solve_exact, LpStatus};
use homlab_core::solvers::{brute_force_digraph_hom, brute_force_hom, odd_cycle_solve, valhom_solve};
use homlab_core::vcsp::io::{parse_cost, parse_default_cost, parse_language, parse_vcsp, write_language};
use homlab_core::vcsp::{crisp_language_of_coloring, odd_cycle_language, ValHomInstance};
use homlab_core::{Budgets, Error, ExtRational};

const FORMATS: &str = "\
File formats (one record per line, `#` starts a comment, vertices 1-based):
  graph N / e U V            undirected graph
  digraph N / a U V          directed graph
  c V COLOR                  coloring
  c V COLOR ... / order V..  track layout: colors are tracks, order lists all vertices
  layer I V1 V2 ...          layering, I from 0
  cost GU GV HU HV VALUE     arc-pair cost; values are p, p/q or inf
  vcsp D N / term R X1..XR / t A1..AR VALUE
                             valued CSP; unlisted tuples cost inf
  language D / relation NAME / p A B
                             crisp binary language
  triple D / f I A B C V     f_I(A, B, C) = V for all I in 1..3 and A, B, C in 1..D

HOMLAB_BUDGET sets limits, e.g. `subproblems=1000,nodes=1000000`; keys: assignments,
subproblems, pivots, nodes; a bare integer sets all of them.";

#[derive(Parser)]
#[command(name = "homlab", version, about = "Graph homomorphism via valued CSPs", after_help = FORMATS)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum HomMethod {
    /// Exhaustive search.
    Brute,
    /// Coloring enumeration with the relaxation-based solver.
    Enumerate,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether G maps homomorphically to H and print a witness.
    Hom {
        g: PathBuf,
        h: PathBuf,
        #[arg(long, value_enum, default_value = "enumerate")]
        method: HomMethod,
    },
    /// Minimum-cost homomorphism with arc-pair costs.
    Valhom {
        g: PathBuf,
        h: PathBuf,
        #[arg(long)]
        cost: PathBuf,
        /// Cost of arc pairs missing from the cost file: 0 or inf.
        #[arg(long, default_value = "inf")]
        default: String,
        /// Coloring of H to use instead of enumerating.
        #[arg(long)]
        coloring: Option<PathBuf>,
    },
    /// Randomized test for a homomorphism to the odd cycle C_{2k+1}.
    Oddcycle {
        g: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of trials instead of the planned count.
        #[arg(long)]
        trials: Option<u64>,
        /// Print the lists drawn in every trial.
        #[arg(long)]
        transcript: bool,
    },
    /// Solve the SA(k, l) relaxation of a VCSP instance.
    Sa {
        instance: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        l: usize,
        /// Write the full relaxation as an LP file.
        #[arg(long)]
        dump_lp: Option<PathBuf>,
        /// Solve the full relaxation instead of the reduced one.
        #[arg(long)]
        full: bool,
    },
    /// Crisp language of a colored graph, or of the odd-cycle lists.
    Language {
        g: Option<PathBuf>,
        coloring: Option<PathBuf>,
        #[arg(long, conflicts_with_all = ["g", "coloring"])]
        odd_cycle: Option<usize>,
    },
    /// Persistent majority triples.
    #[command(subcommand)]
    Triple(TripleCommand),
    /// Run a benchmark suite and write CSV.
    Bench {
        #[arg(long, value_enum)]
        suite: bench::Suite,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum TripleCommand {
    /// Check a triple against a language.
    Verify { language: PathBuf, triple: PathBuf },
    /// Search for a triple of a language.
    Search {
        language: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Triple (median, min, max) of a track layout.
    FromTrack {
        g: PathBuf,
        layout: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Triple of a greedy distance-2 coloring.
    Cohen {
        g: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        coloring_out: Option<PathBuf>,
    },
    /// Glue distance-2 triples of the layer components along a
    /// shadow-complete layering.
    Combine {
        g: PathBuf,
        layering: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        coloring_out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Io(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Run = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

/// Writes `text` to `path`, or returns it for stdout.
fn emit(path: Option<&Path>, text: String) -> Run {
    match path {
        Some(p) => {
            write(p, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn map_lines(out: &mut String, map: &[usize]) {
    for (i, x) in map.iter().enumerate() {
        writeln!(out, "map {} {x}", i + 1).unwrap();
    }
}

fn hom(g: &Path, h: &Path, method: HomMethod, budgets: &Budgets) -> Run {
    let (g, h) = (parse_graph(&read(g)?)?, parse_graph(&read(h)?)?);
    let witness = match (method, g, h) {
        (HomMethod::Brute, ParsedGraph::Undirected(g), ParsedGraph::Undirected(h)) => {
            brute_force_hom(&g, &h, budgets.assignments)?
        }
        (HomMethod::Brute, ParsedGraph::Directed(g), ParsedGraph::Directed(h)) => {
            brute_force_digraph_hom(&g, &h, budgets.assignments)?
        }
        (HomMethod::Brute, _, _) => {
            return Err(Failure::Usage("G and H must both be graphs or both digraphs".into()))
        }
        (HomMethod::Enumerate, g, h) => {
            let directed = |p: ParsedGraph| match p {
                ParsedGraph::Undirected(g) => DiGraph::symmetric(&g),
                ParsedGraph::Directed(d) => d,
            };
            let inst = ValHomInstance::new(directed(g), directed(h), |_, _| ExtRational::zero());
            valhom_solve(&inst, None, budgets)?.witness
        }
    };
    let mut out = String::new();
    match witness {
        Some(map) => {
            out.push_str("YES\n");
            map_lines(&mut out, &map);
        }
        None => out.push_str("NO\n"),
    }
    Ok(out)
}

fn valhom(g: &Path, h: &Path, cost: &Path, default: &str, coloring: Option<&Path>, budgets: &Budgets) -> Run {
    let to_directed = |p: ParsedGraph| match p {
        ParsedGraph::Undirected(g) => DiGraph::symmetric(&g),
        ParsedGraph::Directed(d) => d,
    };
    let g = to_directed(parse_graph(&read(g)?)?);
    let h = to_directed(parse_graph(&read(h)?)?);
    let default = parse_default_cost(default).map_err(|e| Failure::Usage(e.to_string()))?;
    let inst = parse_cost(&read(cost)?, g, h, default)?;
    let hint = match coloring {
        Some(p) => Some(parse_coloring(&read(p)?, inst.h().n())?),
        None => None,
    };
    let rep = valhom_solve(&inst, hint.as_ref(), budgets)?;
    let mut out = format!("value {}\n", rep.value);
    if let Some(w) = &rep.witness {
        map_lines(&mut out, w);
    }
    let s = &rep.stats;
    writeln!(
        out,
        "# colors {} colorings {} subproblems {} pruned {} sa_calls {} lps {} pivots {}",
        s.colors, s.colorings_tried, s.subproblems, s.pruned, s.sa.sa_calls, s.sa.lps, s.sa.pivots
    )
    .unwrap();
    Ok(out)
}

fn oddcycle(g: &Path, k: usize, seed: u64, trials: Option<u64>, transcript: bool, budgets: &Budgets) -> Run {
    if k == 0 {
        return Err(Failure::Usage("--k must be positive".into()));
    }
    let g = parse_undirected(&read(g)?)?;
    let rep = odd_cycle_solve(&g, k, seed, trials, budgets)?;
    let mut out = String::new();
    writeln!(out, "seed {seed}").unwrap();
    writeln!(
        out,
        "alpha {} {}",
        rep.plan.alpha_lo.to_decimal(9, false),
        rep.plan.alpha_hi.to_decimal(9, true)
    )
    .unwrap();
    writeln!(out, "trials {} of {}", rep.transcript.len(), rep.plan.trials).unwrap();
    if transcript {
        for t in &rep.transcript {
            let lists: Vec<&str> = t.lists.iter().map(|l| l.label()).collect();
            writeln!(out, "trial {} {} {} {}", t.index, t.seed, lists.join(""), if t.yes { "YES" } else { "NO" })
                .unwrap();
        }
    }
    out.push_str(if rep.yes { "YES\n" } else { "NO\n" });
    Ok(out)
}

fn sa(instance: &Path, k: usize, l: usize, dump: Option<&Path>, full: bool, budgets: &Budgets) -> Run {
    let inst = parse_vcsp(&read(instance)?)?;
    if let Some(p) = dump {
        write(p, &build_sa(&inst, k, l)?.lp.dump())?;
    }
    let optimum = if full {
        let lp = build_sa(&inst, k, l)?.lp;
        let res = lp_solve_exact(&lp, budgets.pivots)?;
        match res.status {
            LpStatus::Optimal => ExtRational::Finite(res.optimum.expect("optimal LP has a value")),
            LpStatus::Infeasible => ExtRational::Infinite,
            LpStatus::Unbounded => return Err(Error::Invalid("relaxation is unbounded".into()).into()),
        }
    } else {
        solve_sa(&inst, k, l, budgets)?.optimum
    };
    Ok(match optimum {
        ExtRational::Infinite => "infeasible\n".into(),
        v => format!("optimum {v}\n"),
    })
}

fn language(g: Option<&Path>, coloring: Option<&Path>, odd: Option<usize>) -> Run {
    match (g, coloring, odd) {
        (None, None, Some(k)) if k > 0 => Ok(write_language(&odd_cycle_language(k).0)),
        (Some(g), Some(c), None) => {
            let g = parse_undirected(&read(g)?)?;
            let c = parse_coloring(&read(c)?, g.n())?;
            Ok(write_language(&crisp_language_of_coloring(&g, &c)?))
        }
        _ => Err(Failure::Usage("give G and COLORING, or --odd-cycle K with K >= 1".into())),
    }
}

fn colored_output(c: &Coloring, f: &Triple, out: Option<&Path>, coloring_out: Option<&Path>) -> Run {
    if let Some(p) = coloring_out {
        write(p, &write_coloring(c))?;
    }
    emit(out, write_triple(f))
}

fn triple(cmd: &TripleCommand, budgets: &Budgets) -> Run {
    match cmd {
        TripleCommand::Verify { language, triple } => {
            let lang = parse_language(&read(language)?)?;
            let f = parse_triple(&read(triple)?)?;
            Ok(match verify_persistent_triple(&lang, &f)? {
                None => "VALID\n".into(),
                Some(v) => format!("INVALID {v}\n"),
            })
        }
        TripleCommand::Search { language, out } => {
            let lang = parse_language(&read(language)?)?;
            match search_triple(&lang, budgets.nodes)? {
                SearchOutcome::Found { triple, .. } => emit(out.as_deref(), write_triple(&triple)),
                SearchOutcome::NoTriple { nodes } => Ok(format!("NONE\n# nodes {nodes}\n")),
            }
        }
        TripleCommand::FromTrack { g, layout, out } => {
            let g = parse_undirected(&read(g)?)?;
            let t = parse_track_layout(&read(layout)?, &g)?;
            emit(out.as_deref(), write_triple(&triple_from_track_layout(&g, &t)?))
        }
        TripleCommand::Cohen { g, out, coloring_out } => {
            let g = parse_undirected(&read(g)?)?;
            let c = distance2_coloring(&g);
            let f = cohen_triple(&g, &c)?;
            colored_output(&c, &f, out.as_deref(), coloring_out.as_deref())
        }
        TripleCommand::Combine { g, layering, out, coloring_out } => {
            let g: Graph = parse_undirected(&read(g)?)?;
            let l = parse_layering(&read(layering)?, &g)?;
            let parts = local_triples(&g, &l, |x| {
                let c = distance2_coloring(x);
                let f = cohen_triple(x, &c)?;
                Ok((c, f))
            })?;
            let (c, f) = shadow_combine(&g, &l, &parts)?;
            colored_output(&c, &f, out.as_deref(), coloring_out.as_deref())
        }
    }
}

fn dispatch(cli: Cli) -> Run {
    let budgets = Budgets::from_env().map_err(|e| Failure::Usage(format!("HOMLAB_BUDGET: {e}")))?;
    match cli.command {
        Command::Hom { g, h, method } => hom(&g, &h, method, &budgets),
        Command::Valhom { g, h, cost, default, coloring } => {
            valhom(&g, &h, &cost, &default, coloring.as_deref(), &budgets)
        }
        Command::Oddcycle { g, k, seed, trials, transcript } => oddcycle(&g, k, seed, trials, transcript, &budgets),
        Command::Sa { instance, k, l, dump_lp, full } => sa(&instance, k, l, dump_lp.as_deref(), full, &budgets),
        Command::Language { g, coloring, odd_cycle } => language(g.as_deref(), coloring.as_deref(), odd_cycle),
        Command::Triple(cmd) => triple(&cmd, &budgets),
        Command::Bench { suite, out, seed } => {
            let csv = bench::run(suite, seed, &budgets)?;
            emit(out.as_deref(), csv)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(64)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("I/O error: {msg}");
            ExitCode::from(66)
        }
        Err(Failure::Core(e @ Error::Budget { .. })) => {
            eprintln!("aborted: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(65)
        }
    }
}
