//! Text formats.
//!
//! Graph files:
//!
//! ```text
//! # comment
//! graph 4          (or `digraph 4`)
//! e 0 1            edge, or arc 0 -> 1 in a digraph
//! c Red 0 2        color class (members may be empty)
//! l start 3        label
//! ```
//!
//! Formula files hold one sentence in the logic grammar; `#` starts a
//! comment. CNF files are DIMACS with exactly three literals per clause.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use ndmc_core::graph::{Graph, Vertex};
use ndmc_core::hardness::{CnfFormula, Literal};
use ndmc_core::logic::{parse, render, Formula};

use crate::error::{CliError, Result};

fn format_error(line: usize, message: impl Into<String>) -> CliError {
    CliError::Format {
        path: String::new(),
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let words: Vec<&str> = line.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn number(line: usize, word: &str) -> Result<usize> {
    word.parse()
        .map_err(|_| format_error(line, format!("expected a vertex number, found `{word}`")))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or_else(|| format_error(1, "missing `graph <n>` header"))?;
    let mut g = match header.as_slice() {
        ["graph", n] => Graph::new(number(line, n)?),
        ["digraph", n] => Graph::new_directed(number(line, n)?),
        _ => return Err(format_error(line, "expected `graph <n>` or `digraph <n>`")),
    };
    let in_line = |line: usize| move |e: ndmc_core::Error| format_error(line, e.to_string());
    for (line, words) in lines {
        match words.as_slice() {
            ["e", u, v] => g.add_edge(number(line, u)?, number(line, v)?).map_err(in_line(line))?,
            ["c", name, members @ ..] => {
                if g.color(name).is_some() {
                    return Err(format_error(line, format!("color `{name}` declared twice")));
                }
                let members = members.iter().map(|w| number(line, w)).collect::<Result<Vec<Vertex>>>()?;
                g.set_color(name, members).map_err(in_line(line))?;
            }
            ["l", name, v] => {
                if g.label(name).is_some() {
                    return Err(format_error(line, format!("label `{name}` declared twice")));
                }
                g.set_label(name, number(line, v)?).map_err(in_line(line))?;
            }
            [kind, ..] => return Err(format_error(line, format!("unknown or malformed `{kind}` line"))),
            [] => unreachable!("blank lines are skipped"),
        }
    }
    Ok(g)
}

pub fn render_graph(g: &Graph) -> String {
    let mut out = String::new();
    let kind = if g.is_directed() { "digraph" } else { "graph" };
    writeln!(out, "{kind} {}", g.n()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    for (name, set) in g.colors() {
        write!(out, "c {name}").unwrap();
        for v in set.ones() {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    for (name, v) in g.labels() {
        writeln!(out, "l {name} {v}").unwrap();
    }
    out
}

pub fn parse_formula(text: &str) -> Result<Formula> {
    Ok(parse(text)?)
}

pub fn render_formula(f: &Formula) -> String {
    let mut text = render(f);
    text.push('\n');
    text
}

/// DIMACS CNF: `p cnf <vars> <clauses>`, then clauses terminated by `0`
/// (they may span lines). `c` lines are comments.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header = None;
    let mut clauses = Vec::new();
    let mut current: Vec<(usize, Literal)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.first() {
            None | Some(&"c") | Some(&"%") => continue,
            Some(&"p") => {
                if header.is_some() {
                    return Err(format_error(line_no, "second `p` line"));
                }
                match words.as_slice() {
                    ["p", "cnf", vars, count] => header = Some((number(line_no, vars)?, number(line_no, count)?)),
                    _ => return Err(format_error(line_no, "expected `p cnf <vars> <clauses>`")),
                }
                continue;
            }
            _ => {}
        }
        if header.is_none() {
            return Err(format_error(line_no, "clause before the `p cnf` header"));
        }
        for w in words {
            let x: i64 = w
                .parse()
                .map_err(|_| format_error(line_no, format!("expected a literal, found `{w}`")))?;
            if x != 0 {
                let lit = Literal::from_signed(x).map_err(|e| format_error(line_no, e.to_string()))?;
                current.push((line_no, lit));
                continue;
            }
            let lits: Vec<Literal> = current.drain(..).map(|(_, l)| l).collect();
            let clause: [Literal; 3] = lits.as_slice().try_into().map_err(|_| {
                format_error(line_no, format!("clause has {} literals; exactly 3 are required", lits.len()))
            })?;
            clauses.push(clause);
        }
    }
    if let Some(&(line, _)) = current.first() {
        return Err(format_error(line, "clause is missing its terminating 0"));
    }
    let (vars, count) = header.ok_or_else(|| format_error(1, "missing `p cnf` header"))?;
    if count != clauses.len() {
        return Err(format_error(
            1,
            format!("header declares {count} clauses but {} were given", clauses.len()),
        ));
    }
    CnfFormula::new(vars, clauses).map_err(|e| format_error(1, e.to_string()))
}

pub fn render_dimacs(cnf: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", cnf.num_vars, cnf.clauses.len());
    for clause in &cnf.clauses {
        for lit in clause {
            write!(out, "{} ", lit.to_signed()).unwrap();
        }
        out.push_str("0\n");
    }
    out
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read_text(path)?).map_err(|e| e.at_path(&path.display().to_string()))
}

pub fn read_formula(path: &Path) -> Result<Formula> {
    parse_formula(&read_text(path)?).map_err(|e| e.at_path(&path.display().to_string()))
}

pub fn read_dimacs(path: &Path) -> Result<CnfFormula> {
    parse_dimacs(&read_text(path)?).map_err(|e| e.at_path(&path.display().to_string()))
}
