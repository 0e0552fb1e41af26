use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use streett_core::bench::{run_bench, BenchFamily};
use streett_core::buchi::solve_buchi;
use streett_core::format::{
    emit_game_solution, emit_lasso, emit_parity, emit_streett, emit_streett_solution, parse_parity,
    parse_solution, parse_streett, SolutionFile,
};
use streett_core::generate::{
    figure_nk, generate_parity3, generate_streett, ParityParams, StreettParams,
};
use streett_core::parity3::{
    solve_with, verify_parity3_strategies, DominionFinder, Parity3Game, Parity3Solution, RunStats,
};
use streett_core::scc::reach_to;
use streett_core::streett::{certificate, solve_streett, verify_certificate, Lasso, StreettInstance};
use streett_core::{Digraph, VertexId, VertexSet};

const FORMATS: &str = "\
Parity files: `parity <n>;` then one `<id> <prio> <owner> <succ>,<succ>...;` line per vertex.
On-disk priorities 1, 2, 3 mean -1, 0, 1 (min-parity: Even wins if the least priority seen
infinitely often is 0). Owner 0 is Even, 1 is Odd.

Streett files: `streett <n> <k>;`, edges `e <u> <v>;`, pairs `p <j> L=<ids|-> U=<ids|->;`.
Lines starting with `#` are comments.

Exit codes: 0 success, 1 verification failure or no certificate, 2 I/O or parse error.";

#[derive(Parser)]
#[command(name = "streett", version, about = "Parity-3, Büchi and Streett game solvers", after_help = FORMATS)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a parity game with priorities 1..3 on disk.
    SolveParity3 {
        file: PathBuf,
        /// Print `sigma`/`pi` strategy lines after the winning sets.
        #[arg(long)]
        strategies: bool,
        #[arg(long, value_enum, default_value_t = Solver::Hierarchical)]
        solver: Solver,
    },
    /// Solve the Büchi game on a parity file; the Büchi set is the priority-2 vertices.
    SolveBuchi {
        file: PathBuf,
        #[arg(long)]
        strategies: bool,
    },
    /// Print the vertices with an accepting path in a Streett graph.
    SolveStreett { file: PathBuf },
    /// Print a lasso from a winning vertex of a Streett graph.
    Certificate {
        file: PathBuf,
        #[arg(long)]
        from: VertexId,
    },
    /// Re-check a solution or certificate file against its instance.
    Verify {
        instance: PathBuf,
        solution: PathBuf,
        /// Read the parity file as a Büchi game (priority-2 vertices accept).
        #[arg(long)]
        buchi: bool,
    },
    /// Run solver and baseline on generated instances and report counters.
    Bench {
        #[arg(long)]
        family: BenchFamily,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: bool,
    },
    /// Write a seeded random instance.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Solver {
    Hierarchical,
    Classical,
}

#[derive(Subcommand)]
enum GenerateKind {
    Parity3 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Probability that a vertex belongs to Odd.
        #[arg(long, default_value_t = 0.5)]
        odd_owner: f64,
        /// Relative weights of on-disk priorities 1, 2, 3.
        #[arg(long, value_delimiter = ',', default_values_t = [1.0, 1.0, 1.0])]
        weights: Vec<f64>,
        #[command(flatten)]
        out: Output,
    },
    Streett {
        /// `random`, or `figure-nk` for the path-and-fan certificate family.
        #[arg(long, default_value = "random")]
        family: String,
        #[arg(long, required_if_eq("family", "random"))]
        n: Option<usize>,
        #[arg(long, required_if_eq("family", "random"))]
        m: Option<usize>,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.2)]
        l_density: f64,
        #[arg(long, default_value_t = 0.1)]
        u_density: f64,
        #[arg(long)]
        strongly_connected: bool,
        #[arg(long, required_if_eq("family", "figure-nk"))]
        path_len: Option<usize>,
        #[arg(long, required_if_eq("family", "figure-nk"))]
        fan: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

impl Output {
    fn write(&self, text: &str) -> anyhow::Result<()> {
        match &self.output {
            Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

/// Outcome of a command that ran to completion.
enum Verdict {
    Ok,
    Rejected(String),
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_parity(path: &Path) -> anyhow::Result<Parity3Game> {
    parse_parity(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_streett(path: &Path) -> anyhow::Result<StreettInstance> {
    parse_streett(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

/// The Büchi game of a parity file as a parity-3 game over {0, 1}.
fn buchi_as_parity3(p3: &Parity3Game) -> anyhow::Result<Parity3Game> {
    let prio = p3.priorities().iter().map(|&p| if p == 0 { 0 } else { 1 }).collect();
    Ok(Parity3Game::new(p3.game.clone(), prio)?)
}

fn run(cli: Cli) -> anyhow::Result<Verdict> {
    match cli.command {
        Command::SolveParity3 {
            file,
            strategies,
            solver,
        } => {
            let p3 = load_parity(&file)?;
            let finder = match solver {
                Solver::Hierarchical => DominionFinder::Hierarchical,
                Solver::Classical => DominionFinder::BuchiOnly,
            };
            let sol = solve_with(&p3, finder)?;
            let strat = strategies.then_some((&sol.even_strategy, &sol.odd_strategy));
            print!("{}", emit_game_solution(&sol.even, &sol.odd, strat));
        }
        Command::SolveBuchi { file, strategies } => {
            let p3 = load_parity(&file)?;
            let sol = solve_buchi(&p3.game, &p3.with_priority(0))?;
            let strat = strategies.then_some((&sol.even_strategy, &sol.odd_strategy));
            print!("{}", emit_game_solution(&sol.even, &sol.odd, strat));
        }
        Command::SolveStreett { file } => {
            let inst = load_streett(&file)?;
            print!("{}", emit_streett_solution(&inst.solve().winning));
        }
        Command::Certificate { file, from } => {
            let inst = load_streett(&file)?;
            let n = inst.graph.capacity();
            if from >= n {
                bail!("vertex {from} out of range for {n} vertices");
            }
            let sol = inst.solve();
            let target = sol.good_components().find_map(|c| {
                let comp = VertexSet::from_iter_in(n, c.iter().copied());
                reach_to(&comp, &inst.graph).contains(from).then_some(comp)
            });
            let Some(comp) = target else {
                return Ok(Verdict::Rejected(format!("vertex {from} is not winning")));
            };
            let lasso = certificate(&inst.graph, &inst.pairs, from, &comp)?;
            print!("{}", emit_lasso(&lasso));
        }
        Command::Verify {
            instance,
            solution,
            buchi,
        } => {
            let text = read(&instance)?;
            let sol = parse_solution(&read(&solution)?)
                .with_context(|| format!("parsing {}", solution.display()))?;
            let header = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty() && !l.starts_with('#'))
                .unwrap_or("");
            return if header.starts_with("parity") {
                let p3 = parse_parity(&text).with_context(|| format!("parsing {}", instance.display()))?;
                let p3 = if buchi { buchi_as_parity3(&p3)? } else { p3 };
                verify_game(&p3, &sol)
            } else if header.starts_with("streett") {
                let inst = parse_streett(&text).with_context(|| format!("parsing {}", instance.display()))?;
                verify_streett(&inst, &sol)
            } else {
                bail!("{}: unknown instance format", instance.display())
            };
        }
        Command::Bench {
            family,
            sizes,
            seed,
            csv,
        } => {
            let report = run_bench(family, &sizes, seed)?;
            print!("{}", if csv { report.to_csv() } else { report.to_table() });
        }
        Command::Generate { kind } => match kind {
            GenerateKind::Parity3 {
                n,
                m,
                seed,
                odd_owner,
                weights,
                out,
            } => {
                let Ok(priority_weights) = <[f64; 3]>::try_from(weights) else {
                    bail!("--weights takes exactly three values");
                };
                let mut p = ParityParams::new(n, m, seed);
                p.odd_owner = odd_owner;
                p.priority_weights = priority_weights;
                out.write(&emit_parity(&generate_parity3(&p)?))?;
            }
            GenerateKind::Streett {
                family,
                n,
                m,
                k,
                seed,
                l_density,
                u_density,
                strongly_connected,
                path_len,
                fan,
                out,
            } => {
                let inst = match family.as_str() {
                    "figure-nk" => figure_nk(path_len.unwrap_or_default(), fan.unwrap_or_default()),
                    "random" => {
                        let mut p = StreettParams::new(n.unwrap_or(0), m.unwrap_or(0), k, seed);
                        p.l_density = l_density;
                        p.u_density = u_density;
                        p.strongly_connected = strongly_connected;
                        generate_streett(&p)?
                    }
                    other => bail!("unknown family '{other}' (random, figure-nk)"),
                };
                out.write(&emit_streett(&inst))?;
            }
        },
    }
    Ok(Verdict::Ok)
}

fn sorted(v: &[VertexId]) -> Vec<VertexId> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// With strategies the claim is checked on its own; without them the winning
/// sets are compared against a fresh solve.
fn verify_game(p3: &Parity3Game, sol: &SolutionFile) -> anyhow::Result<Verdict> {
    let n = p3.vertex_count();
    let Some(w_even) = &sol.w_even else {
        bail!("solution has no W_E line");
    };
    let listed = sol.w_odd.iter().flatten().chain(w_even);
    if let Some(v) = listed.copied().find(|&v| v >= n) {
        return Ok(Verdict::Rejected(format!("vertex {v} out of range for {n} vertices")));
    }
    let even = VertexSet::from_iter_in(n, sorted(w_even));
    let odd = match &sol.w_odd {
        Some(w) => VertexSet::from_iter_in(n, sorted(w)),
        None => VertexSet::full(n).difference(&even),
    };
    if sol.sigma.is_empty() && sol.pi.is_empty() {
        let truth = solve_with(p3, DominionFinder::Hierarchical)?;
        return Ok(if truth.even == even && truth.odd == odd {
            Verdict::Ok
        } else {
            Verdict::Rejected("winning sets differ from a fresh solve".into())
        });
    }
    let claim = Parity3Solution {
        even,
        odd,
        even_strategy: match SolutionFile::strategy(&sol.sigma, n) {
            Ok(s) => s,
            Err(e) => return Ok(Verdict::Rejected(e.to_string())),
        },
        odd_strategy: match SolutionFile::strategy(&sol.pi, n) {
            Ok(s) => s,
            Err(e) => return Ok(Verdict::Rejected(e.to_string())),
        },
        stats: RunStats::default(),
    };
    Ok(match verify_parity3_strategies(p3, &claim) {
        Ok(()) => Verdict::Ok,
        Err(e) => Verdict::Rejected(e.to_string()),
    })
}

fn verify_streett(inst: &StreettInstance, sol: &SolutionFile) -> anyhow::Result<Verdict> {
    if sol.w.is_none() && sol.stem.is_none() {
        bail!("solution has neither a W line nor a stem");
    }
    if let Some(w) = &sol.w {
        let truth = solve_streett(&inst.graph, &inst.pairs).winning.to_sorted_vec();
        if sorted(w) != truth {
            return Ok(Verdict::Rejected("winning set differs from a fresh solve".into()));
        }
    }
    if let Some(stem) = &sol.stem {
        let Some(&x) = stem.first() else {
            return Ok(Verdict::Rejected("empty stem".into()));
        };
        let lasso = Lasso {
            stem: stem.clone(),
            cycle: sol.cycle.clone().unwrap_or_default(),
        };
        if let Err(e) = verify_certificate(&inst.graph, &inst.pairs, x, &lasso) {
            return Ok(Verdict::Rejected(e.to_string()));
        }
    }
    Ok(Verdict::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Verdict::Ok) => ExitCode::SUCCESS,
        Ok(Verdict::Rejected(why)) => {
            eprintln!("rejected: {why}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
