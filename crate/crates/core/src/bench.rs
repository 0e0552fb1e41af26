//! Operation-count benchmarks of the solvers against their baselines.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::generate::{figure_nk, generate_parity3, generate_streett, ParityParams, StreettParams};
use crate::oracles::{basic_streett, classical_parity3};
use crate::parity3::{solve_parity3, Parity3Solution};
use crate::streett::{solve_streett, StreettInstance, StreettSolution};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BenchFamily {
    /// Parity-3 games with `m = n²/4`.
    Dense,
    /// Parity-3 games with `m = 4n`.
    Sparse,
    /// Strongly connected Streett graphs with `m = 4n` and `⌈log₂ n⌉` pairs.
    Streett,
    /// The certificate family with path length `n` and 8 fan vertices.
    FigureNk,
}

impl FromStr for BenchFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense" => Ok(Self::Dense),
            "sparse" => Ok(Self::Sparse),
            "streett" => Ok(Self::Streett),
            "figure-nk" => Ok(Self::FigureNk),
            _ => Err(Error::InvalidParameters(format!(
                "unknown family '{s}' (dense, sparse, streett, figure-nk)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub b: usize,
    pub solver: &'static str,
    pub lift_steps: u64,
    pub attractor_edge_scans: u64,
    pub scc_edge_visits: u64,
    pub buchialg_calls: usize,
    pub wall_ms: f64,
}

impl BenchRow {
    fn parity(solver: &'static str, n: usize, m: usize, sol: &Parity3Solution, ms: f64) -> Self {
        BenchRow {
            n,
            m,
            k: 1,
            b: 0,
            solver,
            lift_steps: sol.stats.lift_steps,
            attractor_edge_scans: sol.stats.attractor_edge_scans,
            scc_edge_visits: 0,
            buchialg_calls: sol.stats.buchialg_calls,
            wall_ms: ms,
        }
    }

    fn streett(solver: &'static str, inst: &StreettInstance, sol: &StreettSolution, ms: f64) -> Self {
        let s = &sol.stats;
        BenchRow {
            n: inst.graph.capacity(),
            m: inst.graph.edge_count(),
            k: inst.pairs.k(),
            b: inst.pairs.total_size(),
            solver,
            lift_steps: 0,
            attractor_edge_scans: 0,
            scc_edge_visits: s.scc_edge_visits + s.search_work + s.cut_edges,
            buchialg_calls: 0,
            wall_ms: ms,
        }
    }

    /// Counted work: lifting plus attractor scans plus SCC-related visits.
    pub fn work(&self) -> u64 {
        self.lift_steps + self.attractor_edge_scans + self.scc_edge_visits
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

const HEADER: [&str; 10] = [
    "n",
    "m",
    "k",
    "b",
    "solver",
    "lift_steps",
    "attractor_edge_scans",
    "scc_edge_visits",
    "buchialg_calls",
    "wall_ms",
];

impl BenchReport {
    fn cells(row: &BenchRow) -> [String; 10] {
        [
            row.n.to_string(),
            row.m.to_string(),
            row.k.to_string(),
            row.b.to_string(),
            row.solver.to_string(),
            row.lift_steps.to_string(),
            row.attractor_edge_scans.to_string(),
            row.scc_edge_visits.to_string(),
            row.buchialg_calls.to_string(),
            format!("{:.3}", row.wall_ms),
        ]
    }

    pub fn to_table(&self) -> String {
        let rows: Vec<[String; 10]> = self.rows.iter().map(Self::cells).collect();
        let mut width: Vec<usize> = HEADER.iter().map(|h| h.len()).collect();
        for r in &rows {
            for (w, c) in width.iter_mut().zip(r) {
                *w = (*w).max(c.len());
            }
        }
        let mut out = String::new();
        let line = |cells: Vec<&str>, out: &mut String| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&width)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        };
        line(HEADER.to_vec(), &mut out);
        for r in &rows {
            line(r.iter().map(String::as_str).collect(), &mut out);
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = HEADER.join(",") + "\n";
        for r in &self.rows {
            out += &Self::cells(r).join(",");
            out.push('\n');
        }
        out
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64() * 1e3)
}

/// Runs the solver and its baseline on one generated instance per size.
pub fn run_bench(family: BenchFamily, sizes: &[usize], seed: u64) -> Result<BenchReport> {
    let mut report = BenchReport::default();
    for (i, &n) in sizes.iter().enumerate() {
        let seed = seed.wrapping_add(i as u64);
        match family {
            BenchFamily::Dense | BenchFamily::Sparse => {
                let m = if family == BenchFamily::Dense {
                    (n * n / 4).max(n)
                } else {
                    (4 * n).min(n * n)
                };
                let p3 = generate_parity3(&ParityParams::new(n, m, seed))?;
                let (sol, ms) = timed(|| solve_parity3(&p3));
                report.rows.push(BenchRow::parity("parity3", n, m, &sol?, ms));
                let (sol, ms) = timed(|| classical_parity3(&p3));
                report.rows.push(BenchRow::parity("classical", n, m, &sol?, ms));
            }
            BenchFamily::Streett | BenchFamily::FigureNk => {
                let inst = if family == BenchFamily::Streett {
                    let mut p = StreettParams::new(n, 4 * n, crate::parity3::ceil_log2(n.max(2)) as usize, seed);
                    p.strongly_connected = true;
                    generate_streett(&p)?
                } else {
                    figure_nk(n, 8)
                };
                let (sol, ms) = timed(|| solve_streett(&inst.graph, &inst.pairs));
                report.rows.push(BenchRow::streett("streett", &inst, &sol, ms));
                let (sol, ms) = timed(|| basic_streett(&inst.graph, &inst.pairs));
                report.rows.push(BenchRow::streett("basic", &inst, &sol, ms));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_formats() {
        let r = run_bench(BenchFamily::Dense, &[10, 20], 1).unwrap();
        assert_eq!(r.rows.len(), 4);
        let csv = r.to_csv();
        assert!(csv.starts_with("n,m,k,b,solver,"));
        assert_eq!(csv.lines().count(), 5);
        let table = r.to_table();
        assert_eq!(table.lines().count(), 5);
        assert!(table.contains("classical"));
    }

    #[test]
    fn streett_families() {
        let r = run_bench(BenchFamily::Streett, &[16], 2).unwrap();
        assert_eq!(r.rows[0].solver, "streett");
        let r = run_bench(BenchFamily::FigureNk, &[4], 0).unwrap();
        assert_eq!(r.rows[0].n, 13);
        assert!("bogus".parse::<BenchFamily>().is_err());
    }
}
