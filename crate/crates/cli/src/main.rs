//! `adinkra` command-line tool.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error, 3 capacity exceeded.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use adinkra::chromo::{build_quotient, classify_graph, cube, valises, Prechromotopology};
use adinkra::code::{format_generators, parse_generators, LinearCode};
use adinkra::dashing::{count_dashings, even_space, find_odd_dashing, homology, lsc_count};
use adinkra::io::{load_graph, to_dot, GraphJson, LoadedGraph};
use adinkra::ranking::{
    elevation_poset, enumerate_rankings_fast, enumerate_rankings_oracle, lattice_checks,
    order_ideal_lattice, rank_family_poset, rank_family_to_ideals, FastOptions, Ranking,
};
use adinkra::susyrep::{graded_matrices, supertrace, verify_algebra, Adinkra, AlgebraMode};
use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "adinkra",
    version,
    about = "Binary codes and the adinkras built from them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Code-level operations.
    #[command(subcommand)]
    Code(CodeCommand),
    /// Builds the quotient of the n-cube by a code.
    Build {
        #[arg(long)]
        n: usize,
        /// Generator file; the trivial code when omitted.
        #[arg(long)]
        code: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Queries about the odd dashings of a graph.
    #[command(subcommand)]
    Dash(DashCommand),
    /// Mod-2 Betti numbers of the square complex.
    Homology {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Rank enumeration and the rank-family lattice.
    #[command(subcommand)]
    Rank(RankCommand),
    /// Counts per cube dimension, up to a bound.
    Table1 {
        #[arg(long)]
        max_n: usize,
        /// Allow n = 6, which is very slow.
        #[arg(long)]
        allow_large: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Representation matrices together with the superalgebra check.
    Repr {
        #[arg(long)]
        graph: PathBuf,
        /// Ignore H powers and check the plain Clifford relations.
        #[arg(long)]
        clifford_mode: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graphviz rendering of a graph file.
    ExportDot {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CodeCommand {
    /// Classifies the code spanned by a generator file.
    Check { file: PathBuf },
}

#[derive(Subcommand)]
enum DashCommand {
    /// Number of odd dashings.
    Count {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Writes the graph with an odd dashing attached.
    Find {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Number of switching classes of odd dashings.
    Lsc {
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Subcommand)]
enum RankCommand {
    /// Counts (or lists) the rankings of the n-cube.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// One JSON object per ranking instead of the count.
        #[arg(long)]
        emit: bool,
        /// Use flip closure from a valise instead of the fast method.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Allow n = 6, which is very slow.
        #[arg(long)]
        allow_large: bool,
    },
    /// Sizes of the rank family and elevation posets at a vertex.
    Lattice {
        #[arg(long)]
        n: usize,
        /// Vertex label such as 000, or a vertex index.
        #[arg(long)]
        hook: String,
    },
}

/// Bad arguments discovered after parsing.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<Usage>() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<adinkra::Error>() {
            return match e {
                adinkra::Error::Capacity { .. } => 3,
                _ => 1,
            };
        }
        if cause.is::<io::Error>() {
            return 2;
        }
    }
    1
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write_output(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn load(path: &Path) -> anyhow::Result<LoadedGraph> {
    let j = GraphJson::parse(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    Ok(load_graph(&j)?)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn code_check(file: &Path) -> anyhow::Result<()> {
    let gens = parse_generators(&read(file)?)?;
    let n = gens
        .first()
        .map(|g| g.len())
        .ok_or_else(|| usage("code file has no generators"))?;
    let code = LinearCode::span(n, &gens)?;
    let c = code.classify()?;
    println!("n: {n}");
    println!("k: {}", code.dim());
    print!("{}", format_generators(&code));
    println!("even: {}", yes_no(c.is_even));
    println!("doubly-even: {}", yes_no(c.is_doubly_even));
    println!("dashing code: {}", yes_no(c.is_dashing_code));
    println!("weight-1 word: {}", yes_no(c.has_weight1));
    println!("weight-2 word: {}", yes_no(c.has_weight2));
    Ok(())
}

fn build(n: usize, code: Option<&Path>, out: Option<&Path>) -> anyhow::Result<()> {
    let code = match code {
        Some(path) => {
            let gens = parse_generators(&read(path)?)?;
            if let Some(g) = gens.iter().find(|g| g.len() != n) {
                return Err(usage(format!("generator {g} does not have length {n}")));
            }
            LinearCode::span(n, &gens)?
        }
        None => LinearCode::trivial(n)?,
    };
    let a = build_quotient(n, &code)?;
    let class = classify_graph(&a)?;
    write_output(out, &GraphJson::from_graph(&a, None, None).to_text()?)?;
    let report = format!(
        "vertices: {}\nedges: {}\nloops: {}\ndouble edges: {}\nbipartite: {}\nchromotopology: {}\nadinkraizable: {}\n",
        a.num_vertices(),
        a.edges().len(),
        yes_no(class.has_loop),
        yes_no(class.has_double_edge),
        yes_no(class.is_bipartite),
        yes_no(class.is_chromotopology),
        yes_no(class.is_adinkraizable),
    );
    // keep stdout clean when it carries the graph
    if out.is_some() {
        print!("{report}");
    } else {
        eprint!("{report}");
    }
    Ok(())
}

fn dash(cmd: &DashCommand) -> anyhow::Result<()> {
    match cmd {
        DashCommand::Count { graph } => {
            let g = load(graph)?;
            let space = even_space(&g.graph)?;
            println!("edges: {}", g.graph.edges().len());
            println!("even dimension: {}", space.even_dim());
            println!("even dashings: {}", space.even_count());
            println!("odd dashings: {}", space.odd_count());
        }
        DashCommand::Find { graph, out } => {
            let g = load(graph)?;
            let d =
                find_odd_dashing(&g.graph)?.ok_or_else(|| anyhow!("graph has no odd dashing"))?;
            let j = GraphJson::from_graph(&g.graph, g.ranking.as_ref(), Some(&d));
            write_output(out.as_deref(), &j.to_text()?)?;
        }
        DashCommand::Lsc { graph } => {
            let g = load(graph)?;
            let r = lsc_count(&g.graph)?;
            println!("even dimension: {}", r.even_dim);
            println!("switching dimension: {}", r.switching_dim);
            println!("switching classes: {}", r.count);
        }
    }
    Ok(())
}

fn rank_enumerate(
    n: usize,
    emit: bool,
    oracle: bool,
    jobs: usize,
    allow_large: bool,
) -> anyhow::Result<()> {
    if jobs == 0 {
        return Err(usage("--jobs must be at least 1"));
    }
    let rankings: Option<Vec<Ranking>> = if oracle {
        Some(enumerate_rankings_oracle(&cube(n)?)?)
    } else {
        let opts = FastOptions {
            jobs: Some(jobs),
            allow_large,
            keep: emit,
        };
        let e = enumerate_rankings_fast(n, &opts)?;
        if !emit {
            println!("{}", e.counts[n]);
            return Ok(());
        }
        e.rankings
    };
    let rankings = rankings.unwrap_or_default();
    if !emit {
        println!("{}", rankings.len());
        return Ok(());
    }
    let mut out = BufWriter::new(io::stdout().lock());
    for r in rankings {
        writeln!(out, "{}", json!({ "ranks": r.heights() }))?;
    }
    out.flush()?;
    Ok(())
}

fn parse_vertex(a: &Prechromotopology, s: &str) -> anyhow::Result<usize> {
    if s.len() == a.n() && s.chars().all(|c| c == '0' || c == '1') {
        return Ok(a.vertex_of(&s.parse()?)?);
    }
    match s.parse::<usize>() {
        Ok(v) if v < a.num_vertices() => Ok(v),
        _ => Err(usage(format!(
            "'{s}' is not a vertex of the {}-cube",
            a.n()
        ))),
    }
}

fn rank_lattice(n: usize, hook: &str) -> anyhow::Result<()> {
    let a = cube(n)?;
    let v = parse_vertex(&a, hook)?;
    let fam = rank_family_poset(&a, v)?;
    let elev = elevation_poset(&a, v)?;
    let ideals = order_ideal_lattice(&elev.poset)?;
    let iso = rank_family_to_ideals(&a, &fam, &elev, &ideals).is_ok();
    let report = lattice_checks(&fam.poset)?;
    println!("vertex: {}", a.label(v));
    println!("rank family: {}", fam.rankings.len());
    println!("elevation poset: {}", elev.elements.len());
    println!("order ideals: {}", ideals.ideals.len());
    println!("isomorphic: {}", yes_no(iso));
    println!("lattice: {}", yes_no(report.is_lattice));
    println!("distributive: {}", yes_no(report.is_distributive));
    if !iso {
        bail!("rank family and order ideals are not isomorphic");
    }
    Ok(())
}

fn table1(max_n: usize, allow_large: bool, jobs: usize) -> anyhow::Result<()> {
    if max_n == 0 {
        return Err(usage("--max-n must be at least 1"));
    }
    if jobs == 0 {
        return Err(usage("--jobs must be at least 1"));
    }
    let opts = FastOptions {
        jobs: Some(jobs),
        allow_large,
        keep: false,
    };
    let e = enumerate_rankings_fast(max_n, &opts)?;
    println!("n\tdashings\trankings\tadinkras");
    for n in 1..=max_n {
        let d = count_dashings(n, 0);
        let r = e.counts[n];
        println!("{n}\t{d}\t{r}\t{}", &d * r);
    }
    Ok(())
}

fn repr(graph: &Path, clifford: bool, out: Option<&Path>) -> anyhow::Result<()> {
    let g = load(graph)?;
    let dashing = match g.dashing {
        Some(d) => d,
        None => find_odd_dashing(&g.graph)?.ok_or_else(|| anyhow!("graph has no odd dashing"))?,
    };
    let ranking = match g.ranking {
        Some(r) => r,
        None => valises(&g.graph)?[0].clone(),
    };
    let ad = Adinkra::new(g.graph, ranking, dashing)?;
    let mut mats = graded_matrices(&ad)?;
    let mode = if clifford {
        mats = mats.iter().map(|m| m.strip_hpow()).collect();
        AlgebraMode::Clifford
    } else {
        AlgebraMode::Graded
    };
    let report = verify_algebra(&mats, mode)?;
    let st = supertrace(&mats)?;
    let doc = json!({
        "matrices": mats.iter().map(|m| m.to_json()).collect::<Vec<_>>(),
        "relations_hold": report.relations_hold,
        "failures": report.failures.iter().map(|f| json!({
            "i": f.i, "j": f.j, "row": f.row, "col": f.col,
            "found": f.found, "expected": f.expected,
        })).collect::<Vec<_>>(),
        "supertrace": st,
    });
    write_output(out, &format!("{}\n", serde_json::to_string_pretty(&doc)?))?;
    if !report.relations_hold {
        bail!(
            "superalgebra relations fail at {} entries",
            report.failures.len()
        );
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Code(CodeCommand::Check { file }) => code_check(&file),
        Command::Build { n, code, out } => build(n, code.as_deref(), out.as_deref()),
        Command::Dash(cmd) => dash(&cmd),
        Command::Homology { graph } => {
            let g = load(&graph)?;
            let h = homology(&g.graph)?;
            println!("b0: {}", h.betti.0);
            println!("b1: {}", h.betti.1);
            Ok(())
        }
        Command::Rank(RankCommand::Enumerate {
            n,
            emit,
            oracle,
            jobs,
            allow_large,
        }) => rank_enumerate(n, emit, oracle, jobs, allow_large),
        Command::Rank(RankCommand::Lattice { n, hook }) => rank_lattice(n, &hook),
        Command::Table1 {
            max_n,
            allow_large,
            jobs,
        } => table1(max_n, allow_large, jobs),
        Command::Repr {
            graph,
            clifford_mode,
            out,
        } => repr(&graph, clifford_mode, out.as_deref()),
        Command::ExportDot { graph, out } => {
            let g = load(&graph)?;
            let dot = to_dot(&g.graph, g.ranking.as_ref(), g.dashing.as_ref());
            write_output(out.as_deref(), &dot)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
