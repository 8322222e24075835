use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use kintree::generators::{
    cubic, gen_and_composition, gen_dp_graph, gen_from_mis, gen_or_composition, gen_rep_graph,
    Generated, CUBIC_NAMES,
};
use kintree::io::{
    read_colored, read_graph, read_instance, read_modulator, read_td, write_instance,
};
use kintree::kernel::{kernelize, KernelOptions};
use kintree::solve::feedback_edge_number;
use kintree::structure::{
    build_tree_decomposition, smallest_cluster_modulator, smallest_cocluster_modulator,
};
use kintree::{solve, Graph, Instance, Method, SolveOptions};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Format {
        path: PathBuf,
        source: kintree::Error,
    },
    #[error(transparent)]
    Kit(#[from] kintree::Error),
    #[error("{0}")]
    Usage(String),
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "kintree",
    version,
    about = "Induced trees through terminal sets: solvers, kernel, generators"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide an instance; prints YES or NO, exit status 0 or 1.
    Solve(SolveArgs),
    /// Shrink an instance to a kernel in the feedback edge number.
    Kernelize(KernelArgs),
    /// Build instances from the gadget constructions.
    #[command(subcommand)]
    Generate(GenCmd),
    /// Report structural parameters.
    Params(ParamsArgs),
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    graph: PathBuf,
    /// auto, oracle, treewidth, cluster or cocluster.
    #[arg(long, default_value = "auto")]
    algo: String,
    /// PACE `.td` file for the treewidth solver.
    #[arg(long)]
    td: Option<PathBuf>,
    /// Modulator file (1-based vertices) for the cluster solvers.
    #[arg(long)]
    modulator: Option<PathBuf>,
    /// Print a solution on the second line.
    #[arg(long)]
    witness: bool,
    #[arg(long, env = "KIT_THREADS", default_value_t = 1)]
    threads: usize,
    /// Skip the representative-set reduction (slower, same answers).
    #[arg(long)]
    no_reduce: bool,
}

#[derive(Args)]
struct KernelArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Where to write the kernel; stdout if absent (the report then goes to
    /// stderr).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Rule log, one application per line.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct Output {
    /// `.kit` destination; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Role sidecar destination.
    #[arg(long)]
    roles: Option<PathBuf>,
}

#[derive(Args)]
struct HostArgs {
    /// Built-in cubic graph: k4, k33, prism, petersen. Repeatable.
    #[arg(long, value_delimiter = ',')]
    cubic: Vec<String>,
    /// Host graph as a `.kit` file (terminals ignored). Repeatable.
    #[arg(long)]
    host: Vec<PathBuf>,
}

#[derive(Subcommand)]
enum GenCmd {
    /// From a colored graph (`p col` format).
    Mis {
        #[arg(long)]
        colored: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Gadget graph of one cubic host.
    Dp {
        #[command(flatten)]
        host: HostArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Gadget graph with edge gadgets, one cubic host.
    Rep {
        #[command(flatten)]
        host: HostArgs,
        #[command(flatten)]
        output: Output,
    },
    /// OR-composition of several cubic hosts of equal order.
    Orcomp {
        #[command(flatten)]
        host: HostArgs,
        #[command(flatten)]
        output: Output,
    },
    /// AND-composition of equal-order instances.
    Andcomp {
        #[arg(long = "member", required = true)]
        members: Vec<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct ParamsArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Largest modulator to search for.
    #[arg(long, default_value_t = 12)]
    budget: usize,
}

/// What `solve` observed, printed to stderr as comment lines.
struct RunReport {
    algorithm: Method,
    q_fes: usize,
    width: Option<usize>,
    modulator: Option<usize>,
    seconds: f64,
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "c algorithm {}", self.algorithm)?;
        writeln!(f, "c q_fes {}", self.q_fes)?;
        if let Some(w) = self.width {
            writeln!(f, "c width {w}")?;
        }
        if let Some(m) = self.modulator {
            writeln!(f, "c modulator {m}")?;
        }
        write!(f, "c time {:.3}s", self.seconds)
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn parse<T>(path: &Path, f: impl FnOnce(&str) -> kintree::Result<T>) -> Result<T> {
    f(&read(path)?).map_err(|source| CliError::Format {
        path: path.to_owned(),
        source,
    })
}

fn write(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.to_owned(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_solve(a: &SolveArgs) -> Result<bool> {
    let inst = parse(&a.graph, read_instance)?;
    let n = inst.graph.n();
    let mut opts = SolveOptions {
        method: a.algo.parse()?,
        witness: a.witness,
        threads: a.threads,
        reduce: !a.no_reduce,
        ..Default::default()
    };
    if let Some(p) = &a.td {
        opts.td = Some(parse(p, |t| read_td(t, n))?);
    }
    if let Some(p) = &a.modulator {
        opts.modulator = Some(parse(p, |t| read_modulator(t, n))?);
    }
    let start = Instant::now();
    let r = solve(&inst, &opts)?;
    let report = RunReport {
        algorithm: r.method,
        q_fes: r.q_fes,
        width: r.width,
        modulator: r.modulator_size,
        seconds: start.elapsed().as_secs_f64(),
    };
    println!("{}", r.outcome.answer);
    if let Some(w) = &r.outcome.witness {
        let vs: Vec<String> = w.iter().map(|v| (v + 1).to_string()).collect();
        println!("{}", vs.join(" "));
    }
    eprintln!("{report}");
    Ok(r.outcome.answer.is_yes())
}

fn cmd_kernelize(a: &KernelArgs) -> Result<()> {
    let inst = parse(&a.graph, read_instance)?;
    let t = kernelize(&inst, KernelOptions::default())?;
    let g = &t.instance.graph;
    let (nb, mb) = t.bound();
    let mut report = format!(
        "q {}\nvertices {} ≤ max(16q,1) = {nb}\nedges {} ≤ 17q = {mb}\nswaps {}\n",
        t.q,
        g.n(),
        g.m(),
        t.swaps
    );
    for rule in 1..=7u8 {
        let c = t.log.iter().filter(|r| r.rule == rule).count();
        report.push_str(&format!("R{rule} {c}\n"));
    }
    if let Some(p) = &a.trace {
        let log: String = t.log.iter().map(|r| format!("{r}\n")).collect();
        write(Some(p), &log)?;
    }
    let kit = write_instance(&t.instance);
    match &a.out {
        Some(p) => {
            write(Some(p), &kit)?;
            print!("{report}");
        }
        None => {
            print!("{kit}");
            eprint!("{report}");
        }
    }
    Ok(())
}

fn hosts(h: &HostArgs) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for name in &h.cubic {
        out.push(cubic(name).ok_or_else(|| {
            CliError::Usage(format!(
                "unknown cubic graph {name:?}; expected one of {}",
                CUBIC_NAMES.join(", ")
            ))
        })?);
    }
    for p in &h.host {
        out.push(parse(p, read_graph)?);
    }
    if out.is_empty() {
        return Err(CliError::Usage("give a host with --cubic or --host".into()));
    }
    Ok(out)
}

fn single(h: &HostArgs) -> Result<Graph> {
    let mut hs = hosts(h)?;
    if hs.len() != 1 {
        return Err(CliError::Usage("exactly one host graph expected".into()));
    }
    Ok(hs.remove(0))
}

fn cmd_generate(c: &GenCmd) -> Result<()> {
    let (out, output): (Generated, &Output) = match c {
        GenCmd::Mis { colored, output } => (gen_from_mis(&parse(colored, read_colored)?), output),
        GenCmd::Dp { host, output } => (gen_dp_graph(&single(host)?)?, output),
        GenCmd::Rep { host, output } => (gen_rep_graph(&single(host)?)?, output),
        GenCmd::Orcomp { host, output } => (gen_or_composition(&hosts(host)?)?, output),
        GenCmd::Andcomp { members, output } => {
            let insts = members
                .iter()
                .map(|p| parse(p, read_instance))
                .collect::<Result<Vec<Instance>>>()?;
            (gen_and_composition(&insts)?, output)
        }
    };
    if let Some(p) = &output.roles {
        write(Some(p), &out.sidecar())?;
    }
    write(output.out.as_deref(), &write_instance(&out.instance))
}

fn cmd_params(a: &ParamsArgs) -> Result<()> {
    let g = parse(&a.graph, read_graph)?;
    let td = build_tree_decomposition(&g);
    let show = |m: Option<Vec<usize>>| {
        m.map_or_else(|| format!("none ≤ {}", a.budget), |u| u.len().to_string())
    };
    println!("n {}", g.n());
    println!("m {}", g.m());
    println!("q_fes {}", feedback_edge_number(&g));
    println!("treewidth_heuristic {}", td.width());
    println!(
        "cluster_modulator {}",
        show(smallest_cluster_modulator(&g, a.budget))
    );
    println!(
        "cocluster_modulator {}",
        show(smallest_cocluster_modulator(&g, a.budget))
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Solve(a) => cmd_solve(a).map(|yes| if yes { 0 } else { 1 }),
        Cmd::Kernelize(a) => cmd_kernelize(a).map(|_| 0),
        Cmd::Generate(c) => cmd_generate(c).map(|_| 0),
        Cmd::Params(a) => cmd_params(a).map(|_| 0),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
