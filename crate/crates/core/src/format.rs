//! Text formats for parity-3 games, Streett graphs and solver outputs.
//!
//! Parity files:
//!
//! ```text
//! parity 2;
//! 0 2 0 0,1;
//! 1 3 1 0;
//! ```
//!
//! Each vertex line is `<id> <prio> <owner> <succ>(,<succ>)*;` with on-disk
//! priorities 1, 2, 3 standing for -1, 0, 1 and owner 0 (Even) or 1 (Odd).
//!
//! Streett files hold `streett <n> <k>;`, then `e <u> <v>;` edges and
//! `p <j> L=<ids|-> U=<ids|->;` pairs; several statements may share a line.
//! Lines starting with `#` are comments in both formats.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::game::{GameGraph, GameView, Player, Strategy};
use crate::graph::{Digraph, Graph};
use crate::parity3::Parity3Game;
use crate::streett::{Lasso, StreettInstance};
use crate::streett_ds::StreettPairs;
use crate::{VertexId, VertexSet};

fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

/// Non-comment statements with their 1-based line numbers, split on `;`.
fn statements(text: &str) -> Result<Vec<(usize, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some(body) = line.strip_suffix(';') else {
            return Err(parse_err(i + 1, "statement must end with ';'"));
        };
        for stmt in body.split(';') {
            let stmt = stmt.trim();
            if stmt.is_empty() {
                return Err(parse_err(i + 1, "empty statement"));
            }
            out.push((i + 1, stmt.to_string()));
        }
    }
    Ok(out)
}

fn number(line: usize, tok: &str, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("{what} '{tok}' is not a nonnegative integer")))
}

fn vertex(line: usize, tok: &str, n: usize) -> Result<VertexId> {
    let v = number(line, tok, "vertex id")?;
    if v >= n {
        return Err(parse_err(line, format!("vertex id {v} out of range 0..{n}")));
    }
    Ok(v)
}

pub fn parse_parity(text: &str) -> Result<Parity3Game> {
    let stmts = statements(text)?;
    let Some((hline, header)) = stmts.first() else {
        return Err(parse_err(1, "missing 'parity <n>' header"));
    };
    let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["parity", n] => number(*hline, n, "vertex count")?,
        _ => return Err(parse_err(*hline, "expected 'parity <n>'")),
    };
    let mut seen = vec![false; n];
    let mut owner = vec![Player::Even; n];
    let mut prio = vec![0i8; n];
    let mut succ: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for (line, stmt) in &stmts[1..] {
        let line = *line;
        let toks: Vec<&str> = stmt.split_whitespace().collect();
        let [id, p, o, s] = toks[..] else {
            return Err(parse_err(
                line,
                "expected '<id> <prio> <owner> <succ>(,<succ>)*'",
            ));
        };
        let v = vertex(line, id, n)?;
        if seen[v] {
            return Err(parse_err(line, format!("vertex {v} listed twice")));
        }
        seen[v] = true;
        prio[v] = match p {
            "1" => -1,
            "2" => 0,
            "3" => 1,
            _ => return Err(parse_err(line, format!("priority '{p}' not in 1..3"))),
        };
        owner[v] = match o {
            "0" => Player::Even,
            "1" => Player::Odd,
            _ => return Err(parse_err(line, format!("owner '{o}' must be 0 or 1"))),
        };
        for t in s.split(',') {
            succ[v].push(vertex(line, t, n)?);
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(parse_err(
            stmts.last().map_or(1, |s| s.0),
            format!("vertex {v} has no line"),
        ));
    }
    let edges: Vec<_> = (0..n)
        .flat_map(|u| succ[u].iter().map(move |&w| (u, w)))
        .collect();
    let game = GameGraph::new(owner, &edges)?;
    Parity3Game::new(game, prio)
}

pub fn emit_parity(p3: &Parity3Game) -> String {
    let g = &p3.game;
    let mut out = format!("parity {};\n", g.capacity());
    for v in g.vertices() {
        let succ: Vec<String> = g.successors(v).map(|w| w.to_string()).collect();
        let owner = match g.owner(v) {
            Player::Even => 0,
            Player::Odd => 1,
        };
        let _ = writeln!(out, "{v} {} {owner} {};", p3.priority(v) + 2, succ.join(","));
    }
    out
}

fn id_list(line: usize, tok: &str, n: usize) -> Result<Vec<VertexId>> {
    if tok == "-" {
        return Ok(Vec::new());
    }
    tok.split(',').map(|t| vertex(line, t, n)).collect()
}

pub fn parse_streett(text: &str) -> Result<StreettInstance> {
    let stmts = statements(text)?;
    let Some((hline, header)) = stmts.first() else {
        return Err(parse_err(1, "missing 'streett <n> <k>' header"));
    };
    let (n, k) = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["streett", n, k] => (
            number(*hline, n, "vertex count")?,
            number(*hline, k, "pair count")?,
        ),
        _ => return Err(parse_err(*hline, "expected 'streett <n> <k>'")),
    };
    let mut edges = Vec::new();
    let mut pairs: Vec<Option<(Vec<VertexId>, Vec<VertexId>)>> = vec![None; k];
    for (line, stmt) in &stmts[1..] {
        let line = *line;
        let toks: Vec<&str> = stmt.split_whitespace().collect();
        match toks[..] {
            ["e", u, v] => edges.push((vertex(line, u, n)?, vertex(line, v, n)?)),
            ["p", j, l, u] => {
                let j = number(line, j, "pair index")?;
                if j >= k {
                    return Err(parse_err(line, format!("pair index {j} out of range 0..{k}")));
                }
                if pairs[j].is_some() {
                    return Err(parse_err(line, format!("pair {j} listed twice")));
                }
                let (Some(l), Some(u)) = (l.strip_prefix("L="), u.strip_prefix("U=")) else {
                    return Err(parse_err(line, "expected 'L=<ids|-> U=<ids|->'"));
                };
                pairs[j] = Some((id_list(line, l, n)?, id_list(line, u, n)?));
            }
            _ => return Err(parse_err(line, format!("unrecognised statement '{stmt}'"))),
        }
    }
    let pairs = pairs.into_iter().map(Option::unwrap_or_default).collect();
    StreettInstance::new(Graph::from_edges(n, &edges), StreettPairs::new(n, pairs)?)
}

fn join_ids(ids: &[VertexId]) -> String {
    if ids.is_empty() {
        "-".to_string()
    } else {
        ids.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }
}

pub fn emit_streett(inst: &StreettInstance) -> String {
    let g = &inst.graph;
    let mut out = format!("streett {} {};\n", g.capacity(), inst.pairs.k());
    for u in g.vertices() {
        for w in g.successors(u) {
            let _ = writeln!(out, "e {u} {w};");
        }
    }
    for j in 0..inst.pairs.k() {
        let _ = writeln!(
            out,
            "p {j} L={} U={};",
            join_ids(inst.pairs.l(j)),
            join_ids(inst.pairs.u(j))
        );
    }
    out
}

fn ids_line(label: &str, set: &VertexSet) -> String {
    let ids: Vec<String> = set.to_sorted_vec().iter().map(|v| v.to_string()).collect();
    if ids.is_empty() {
        format!("{label}:\n")
    } else {
        format!("{label}: {}\n", ids.join(" "))
    }
}

/// `W_E:`/`W_O:` lines, then `sigma v w` for Even and `pi v w` for Odd.
pub fn emit_game_solution(
    even: &VertexSet,
    odd: &VertexSet,
    strategies: Option<(&Strategy, &Strategy)>,
) -> String {
    let mut out = ids_line("W_E", even) + &ids_line("W_O", odd);
    if let Some((sigma, pi)) = strategies {
        for (v, w) in sigma.iter() {
            let _ = writeln!(out, "sigma {v} {w}");
        }
        for (v, w) in pi.iter() {
            let _ = writeln!(out, "pi {v} {w}");
        }
    }
    out
}

pub fn emit_streett_solution(winning: &VertexSet) -> String {
    ids_line("W", winning)
}

pub fn emit_lasso(lasso: &Lasso) -> String {
    let seq = |s: &[VertexId]| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    format!("stem: {}\ncycle: {}\n", seq(&lasso.stem), seq(&lasso.cycle))
}

/// Everything a solution or certificate file may contain.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolutionFile {
    pub w_even: Option<Vec<VertexId>>,
    pub w_odd: Option<Vec<VertexId>>,
    pub w: Option<Vec<VertexId>>,
    pub sigma: Vec<(VertexId, VertexId)>,
    pub pi: Vec<(VertexId, VertexId)>,
    pub stem: Option<Vec<VertexId>>,
    pub cycle: Option<Vec<VertexId>>,
}

impl SolutionFile {
    pub fn strategy(pairs: &[(VertexId, VertexId)], n: usize) -> Result<Strategy> {
        let mut s = Strategy::new(n);
        for &(v, w) in pairs {
            if v >= n || w >= n {
                return Err(Error::VertexOutOfRange { vertex: v.max(w), n });
            }
            s.set(v, w);
        }
        Ok(s)
    }
}

pub fn parse_solution(text: &str) -> Result<SolutionFile> {
    let mut sol = SolutionFile::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let ids = |rest: &str| -> Result<Vec<VertexId>> {
            rest.split_whitespace()
                .map(|t| number(line, t, "vertex id"))
                .collect()
        };
        if let Some((label, rest)) = raw.split_once(':') {
            let slot = match label.trim() {
                "W_E" => &mut sol.w_even,
                "W_O" => &mut sol.w_odd,
                "W" => &mut sol.w,
                "stem" => &mut sol.stem,
                "cycle" => &mut sol.cycle,
                other => return Err(parse_err(line, format!("unknown label '{other}'"))),
            };
            *slot = Some(ids(rest)?);
            continue;
        }
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks[..] {
            [kind @ ("sigma" | "pi"), v, w] => {
                let edge = (number(line, v, "vertex id")?, number(line, w, "vertex id")?);
                if kind == "sigma" {
                    sol.sigma.push(edge);
                } else {
                    sol.pi.push(edge);
                }
            }
            _ => return Err(parse_err(line, format!("unrecognised line '{raw}'"))),
        }
    }
    Ok(sol)
}
