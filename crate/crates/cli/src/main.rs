//! `sepkit`: solve, enumerate, reduce, generate and check minimal separators.
//!
//! Exit codes: 0 for YES/PASS, 1 for NO/FAIL, 2 for any error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use sepkit::fpt::{find_sep, FindSepOutcome, Lineage};
use sepkit::generators;
use sepkit::graph::{components, is_minimal_separator, parse_graph, to_dimacs, to_edge_list};
use sepkit::oracle::{
    enum_minimal_separators_bruteforce, enum_minimal_separators_delay, max_connected_cut_bruteforce,
    max_minimal_separator_bruteforce, min_independent_dominating_set_bruteforce, DEFAULT_MAX_N,
};
use sepkit::reductions::{
    cobipartite_reduction, compose_universal, linegraph_reduction, subdivide_cubic, verify_reduction,
};
use sepkit::td::{assemble_td, max_minimal_separator_dp, to_pace, TreeDecomposition};
use sepkit::{solve, Format, Graph, Threshold, VertexSet};

const MAX_N_VAR: &str = "SEPKIT_ORACLE_MAX_N";

#[derive(Parser)]
#[command(name = "sepkit", version, about = "Maximum minimal separators: solver, oracles and reductions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Edgelist,
    Dimacs,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Edgelist => Format::EdgeList,
            FormatArg::Dimacs => Format::Dimacs,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Fpt,
    Dp,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumEngine {
    Delay,
    Bruteforce,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceKind {
    Subdivide,
    Cobipartite,
    Linegraph,
    Compose,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Path,
    Cycle,
    Grid,
    Complete,
    CompleteBipartite,
    RandomGnp,
    RandomCubic,
    RandomBipartite,
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    /// Largest minimal separator.
    MaxSeparator,
    /// Largest cut with both sides connected.
    ConnectedCut,
    /// As above, both sides with at least two vertices.
    NontrivialCut,
    /// Smallest maximal independent set.
    MinMis,
}

#[derive(clap::Args)]
struct GraphInput {
    /// Graph file, `-` for stdin.
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "edgelist")]
    format: FormatArg,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a minimal separator of size (weight) at least k exists.
    Solve {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long, short)]
        k: u64,
        /// Count vertex weights instead of vertices.
        #[arg(long)]
        weighted: bool,
        #[arg(long, value_enum, default_value = "fpt")]
        engine: Engine,
        /// Write the decomposition the recursion assembles, PACE style.
        #[arg(long)]
        emit_td: Option<PathBuf>,
    },
    /// List minimal separators as JSON lines, then a count line.
    Enumerate {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long, value_enum, default_value = "delay")]
        engine: EnumEngine,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Build a reduction certificate.
    Reduce {
        #[arg(long, value_enum)]
        kind: ReduceKind,
        /// Source graph; repeat for `compose`.
        #[arg(long, short, required = true)]
        input: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: FormatArg,
        /// Side A for `cobipartite`, comma separated; the rest is side B.
        #[arg(long)]
        side_a: Option<String>,
        /// Certificate path; stdout when absent.
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Check the biconditional at every threshold with the oracles.
        #[arg(long)]
        verify: bool,
    },
    /// Write a graph from a standard family.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(short)]
        n: Option<usize>,
        #[arg(short)]
        r: Option<usize>,
        #[arg(short)]
        c: Option<usize>,
        #[arg(short)]
        a: Option<usize>,
        #[arg(short)]
        b: Option<usize>,
        #[arg(short, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Resample `random-gnp` until connected.
        #[arg(long)]
        connected: bool,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: FormatArg,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Check that a vertex set is a minimal separator.
    Verify {
        #[command(flatten)]
        graph: GraphInput,
        /// Comma-separated vertex ids.
        #[arg(long, short)]
        separator: String,
    },
    /// Run an exhaustive oracle (subject to the size guard).
    Oracle {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long, value_enum)]
        problem: Problem,
        #[arg(long)]
        weighted: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(yes) => ExitCode::from(if yes { 0 } else { 1 }),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<bool> {
    match command {
        Command::Solve { graph, k, weighted, engine, emit_td } => cmd_solve(&read_graph(&graph)?, k, weighted, engine, emit_td.as_deref()),
        Command::Enumerate { graph, engine, limit } => cmd_enumerate(&read_graph(&graph)?, engine, limit),
        Command::Reduce { kind, input, format, side_a, output, verify } => {
            let graphs = input
                .iter()
                .map(|p| load(p, format.into()))
                .collect::<Result<Vec<_>>>()?;
            cmd_reduce(kind, &graphs, side_a.as_deref(), output.as_deref(), verify)
        }
        Command::Gen { family, n, r, c, a, b, p, seed, connected, format, output } => {
            let g = generate(family, Dims { n, r, c, a, b }, p, seed, connected)?;
            let text = match format {
                FormatArg::Edgelist => to_edge_list(&g),
                FormatArg::Dimacs => to_dimacs(&g),
            };
            match output {
                Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => io::stdout().write_all(text.as_bytes())?,
            }
            Ok(true)
        }
        Command::Verify { graph, separator } => cmd_verify(&read_graph(&graph)?, &separator),
        Command::Oracle { graph, problem, weighted } => cmd_oracle(&read_graph(&graph)?, problem, weighted),
    }
}

fn load(path: &Path, format: Format) -> Result<Graph> {
    let bytes = if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf)?;
        buf
    } else {
        fs::read(path).with_context(|| format!("reading {}", path.display()))?
    };
    parse_graph(&bytes, format).with_context(|| format!("parsing {}", path.display()))
}

fn read_graph(input: &GraphInput) -> Result<Graph> {
    load(&input.input, input.format.into())
}

fn oracle_max_n() -> Result<usize> {
    match std::env::var(MAX_N_VAR) {
        Ok(v) => v.trim().parse().with_context(|| format!("{MAX_N_VAR}={v} is not a vertex count")),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

fn print_json(v: &Value) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn parse_ids(text: &str, n: usize) -> Result<VertexSet> {
    let mut set = VertexSet::new(n);
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: usize = tok.parse().with_context(|| format!("`{tok}` is not a vertex id"))?;
        if v >= n {
            bail!("vertex {v} is not in a graph on {n} vertices");
        }
        set.insert(v);
    }
    Ok(set)
}

/// The decomposition `find_sep` assembles at the root, when it gets that far.
fn root_decomposition(g: &Graph, threshold: Threshold) -> Result<Option<TreeDecomposition>> {
    match find_sep(g, &VertexSet::new(0), threshold, &Lineage::new(g.clone()))? {
        FindSepOutcome::DecompositionTree(tree) => Ok(Some(assemble_td(&tree, g.n())?)),
        _ => Ok(None),
    }
}

fn cmd_solve(g: &Graph, k: u64, weighted: bool, engine: Engine, emit_td: Option<&Path>) -> Result<bool> {
    let start = Instant::now();
    let threshold = Threshold { k, weighted };
    let mut td = None;
    let (decision, certificate, name) = match engine {
        Engine::Fpt => {
            let r = solve(g, k, weighted)?;
            (r.decision, r.certificate, "fpt")
        }
        Engine::Oracle => {
            let best = max_minimal_separator_bruteforce(g, weighted, oracle_max_n()?)?;
            match best {
                Some((s, v)) if v >= k => (true, Some(s), "oracle"),
                _ => (false, None, "oracle"),
            }
        }
        Engine::Dp => {
            let t = if g.n() > 0 && g.is_complete() {
                TreeDecomposition::trivial(g)
            } else {
                root_decomposition(g, threshold)?.ok_or_else(|| {
                    anyhow!("find_sep settled the instance before building a decomposition; use --engine fpt")
                })?
            };
            let best = max_minimal_separator_dp(g, &t, weighted)?;
            td = Some(t);
            match best {
                Some((s, v)) if v >= k => (true, Some(s), "dp"),
                _ => (false, None, "dp"),
            }
        }
    };
    let mut td_json = Value::Null;
    if let Some(path) = emit_td {
        if td.is_none() && g.n() > 0 {
            td = root_decomposition(g, threshold)?;
        }
        match &td {
            Some(t) => {
                fs::write(path, to_pace(t)).with_context(|| format!("writing {}", path.display()))?;
                td_json = json!({ "path": path, "bags": t.bags.len(), "width": t.width() });
            }
            None => eprintln!("note: no decomposition was assembled, {} not written", path.display()),
        }
    }
    print_json(&json!({
        "decision": decision,
        "certificate": certificate.map(|s| s.to_json(g)),
        "engine": name,
        "k": k,
        "weighted": weighted,
        "td": td_json,
        "elapsed_ms": start.elapsed().as_secs_f64() * 1e3,
    }))?;
    Ok(decision)
}

fn cmd_enumerate(g: &Graph, engine: EnumEngine, limit: Option<usize>) -> Result<bool> {
    let limit = limit.unwrap_or(usize::MAX);
    let mut count = 0;
    let mut emit = |s: sepkit::Separator| -> Result<()> {
        print_json(&serde_json::to_value(s.to_json(g))?)?;
        count += 1;
        Ok(())
    };
    match engine {
        EnumEngine::Delay => {
            for s in enum_minimal_separators_delay(g).take(limit) {
                emit(s)?;
            }
        }
        EnumEngine::Bruteforce => {
            for s in enum_minimal_separators_bruteforce(g, oracle_max_n()?)?.into_iter().take(limit) {
                emit(s)?;
            }
        }
    }
    print_json(&json!({ "count": count }))?;
    Ok(true)
}

fn cmd_reduce(kind: ReduceKind, graphs: &[Graph], side_a: Option<&str>, output: Option<&Path>, verify: bool) -> Result<bool> {
    let single = || match graphs {
        [g] => Ok(g),
        _ => Err(anyhow!("this kind takes exactly one --input")),
    };
    let cert = match kind {
        ReduceKind::Subdivide => subdivide_cubic(single()?)?,
        ReduceKind::Linegraph => linegraph_reduction(single()?)?,
        ReduceKind::Compose => compose_universal(graphs)?,
        ReduceKind::Cobipartite => {
            let g = single()?;
            match side_a {
                Some(text) => {
                    let a = parse_ids(text, g.n())?;
                    let b = g.vertices().difference(&a);
                    cobipartite_reduction(g, Some((&a, &b)))?
                }
                None => cobipartite_reduction(g, None)?,
            }
        }
    };
    let report = if verify { Some(verify_reduction(&cert, oracle_max_n()?)?) } else { None };
    let pass = report.as_ref().is_none_or(|r| r.pass);
    let summary = json!({
        "kind": cert.kind,
        "source_n": cert.source.n(),
        "target_n": cert.target.n(),
        "target_m": cert.target.edge_count(),
        "threshold_map": cert.threshold_map,
        "verdict": report.as_ref().map(|r| if r.pass { "PASS" } else { "FAIL" }),
        "verify": report,
    });
    match output {
        Some(path) => {
            fs::write(path, serde_json::to_string_pretty(&cert)?).with_context(|| format!("writing {}", path.display()))?;
            print_json(&summary)?;
        }
        None => {
            let mut both = summary;
            both["certificate"] = serde_json::to_value(&cert)?;
            print_json(&both)?;
        }
    }
    Ok(pass)
}

struct Dims {
    n: Option<usize>,
    r: Option<usize>,
    c: Option<usize>,
    a: Option<usize>,
    b: Option<usize>,
}

fn generate(family: Family, d: Dims, p: f64, seed: u64, connected: bool) -> Result<Graph> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| anyhow!("this family needs -{flag}"));
    if !(0.0..=1.0).contains(&p) {
        bail!("-p must lie in [0, 1], got {p}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = match family {
        Family::Path => generators::path(need(d.n, "n")?),
        Family::Cycle => generators::cycle(need(d.n, "n")?)?,
        Family::Grid => generators::grid(need(d.r, "r")?, need(d.c, "c")?),
        Family::Complete => generators::complete(need(d.n, "n")?),
        Family::CompleteBipartite => generators::complete_bipartite(need(d.a, "a")?, need(d.b, "b")?),
        Family::RandomGnp if connected => generators::connected_gnp(need(d.n, "n")?, p, &mut rng)?,
        Family::RandomGnp => generators::gnp(need(d.n, "n")?, p, &mut rng),
        Family::RandomCubic => generators::random_cubic(need(d.n, "n")?, &mut rng)?,
        Family::RandomBipartite => generators::random_bipartite(need(d.a, "a")?, need(d.b, "b")?, p, &mut rng),
    };
    Ok(g)
}

fn cmd_verify(g: &Graph, text: &str) -> Result<bool> {
    let s = parse_ids(text, g.n())?;
    let comps = components(g, &s);
    let sep = is_minimal_separator(g, &s);
    let full: Vec<Vec<usize>> = sep
        .as_ref()
        .map(|x| x.full_components().iter().map(VertexSet::to_vec).collect())
        .unwrap_or_default();
    print_json(&json!({
        "separator": s.to_vec(),
        "minimal": sep.is_some(),
        "components": comps.iter().map(VertexSet::to_vec).collect::<Vec<_>>(),
        "full_components": full,
    }))?;
    Ok(sep.is_some())
}

fn cmd_oracle(g: &Graph, problem: Problem, weighted: bool) -> Result<bool> {
    let max_n = oracle_max_n()?;
    let out = match problem {
        Problem::MaxSeparator => {
            let best = max_minimal_separator_bruteforce(g, weighted, max_n)?;
            json!({
                "problem": "max-separator",
                "value": best.as_ref().map(|(_, v)| v),
                "separator": best.map(|(s, _)| s.to_json(g)),
            })
        }
        Problem::ConnectedCut | Problem::NontrivialCut => {
            let nontrivial = matches!(problem, Problem::NontrivialCut);
            let cut = max_connected_cut_bruteforce(g, nontrivial, max_n)?;
            json!({
                "problem": if nontrivial { "nontrivial-cut" } else { "connected-cut" },
                "value": cut.as_ref().map(|c| c.cutset_size()),
                "side_a": cut.as_ref().map(|c| c.side_a().to_vec()),
                "side_b": cut.as_ref().map(|c| c.side_b().to_vec()),
            })
        }
        Problem::MinMis => {
            let s = min_independent_dominating_set_bruteforce(g, max_n)?;
            json!({ "problem": "min-mis", "value": s.len(), "set": s.to_vec() })
        }
    };
    let found = !out["value"].is_null();
    print_json(&out)?;
    Ok(found)
}
