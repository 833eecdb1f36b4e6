//! The `mgf` text format.
//!
//! ```text
//! mgf 1
//! <n> <m>
//! <u> <v>            # m edge lines, one per edge copy
//! tree <root> <t>    # optional, followed by t edge indices
//! perm <n>           # optional, followed by n images
//! script <s>         # optional, followed by s lines `reduce <k> <v1> .. <vk>`
//! ```
//!
//! `#` starts a comment. Sections appear in the order shown. Edge `i` of the
//! parsed graph is the `i`-th edge line. [`write_mgf`] emits the canonical
//! form: edges sorted by endpoints (copies keep their relative order), one
//! index or image per line, single spaces, LF line ends.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::mgraph::{EdgeId, MultiGraph, RootedSpanningTree};
use crate::shape::VertexPermutation;
use crate::surgery::{ReductionScript, ReductionStep};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MgfDocument {
    pub graph: MultiGraph,
    pub tree: Option<RootedSpanningTree>,
    pub perm: Option<VertexPermutation>,
    pub script: Option<ReductionScript>,
}

impl MgfDocument {
    pub fn graph(graph: MultiGraph) -> Self {
        MgfDocument {
            graph,
            tree: None,
            perm: None,
            script: None,
        }
    }
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

struct Lines<'a> {
    lines: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
    last_line: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let mut last_line = 0;
        let lines = text
            .lines()
            .enumerate()
            .filter_map(|(i, raw)| {
                last_line = i + 1;
                let body = raw.split('#').next().unwrap_or("");
                let tokens: Vec<&str> = body.split_whitespace().collect();
                (!tokens.is_empty()).then_some((i + 1, tokens))
            })
            .collect();
        Lines {
            lines,
            pos: 0,
            last_line,
        }
    }

    fn peek(&self) -> Option<&(usize, Vec<&'a str>)> {
        self.lines.get(self.pos)
    }

    fn next(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        let line = self.lines.get(self.pos).cloned().ok_or_else(|| {
            err(
                self.last_line,
                format!("expected {what}, found end of input"),
            )
        })?;
        self.pos += 1;
        Ok(line)
    }

    /// `count` numbers, one or more per line.
    fn numbers(&mut self, count: usize, what: &str) -> Result<Vec<(usize, usize)>> {
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let (line, tokens) = self.next(what)?;
            for t in tokens {
                if out.len() == count {
                    return Err(err(line, format!("too many {what}")));
                }
                out.push((line, number(line, t)?));
            }
        }
        Ok(out)
    }
}

fn number(line: usize, token: &str) -> Result<usize> {
    token.parse().map_err(|_| {
        err(
            line,
            format!("expected a non-negative integer, found `{token}`"),
        )
    })
}

fn expect_len(line: usize, tokens: &[&str], len: usize, what: &str) -> Result<()> {
    if tokens.len() != len {
        return Err(err(
            line,
            format!("{what} line needs {len} fields, found {}", tokens.len()),
        ));
    }
    Ok(())
}

pub fn read_mgf(text: &str) -> Result<MgfDocument> {
    let mut lines = Lines::new(text);
    let (line, header) = lines.next("header `mgf 1`")?;
    if header != ["mgf", "1"] {
        return Err(err(line, "expected header `mgf 1`"));
    }
    let (line, sizes) = lines.next("`<n> <m>`")?;
    expect_len(line, &sizes, 2, "size")?;
    let (n, m) = (number(line, sizes[0])?, number(line, sizes[1])?);
    let mut graph = MultiGraph::new(n);
    for _ in 0..m {
        let (line, edge) = lines.next("an edge line")?;
        expect_len(line, &edge, 2, "edge")?;
        let (u, v) = (number(line, edge[0])?, number(line, edge[1])?);
        if u == v {
            return Err(err(line, format!("loop at vertex {u}")));
        }
        if u >= n || v >= n {
            return Err(err(line, format!("vertex id out of range for n = {n}")));
        }
        graph
            .push_edge(u, v)
            .map_err(|e| err(line, e.to_string()))?;
    }

    let mut doc = MgfDocument::graph(graph);
    let sections = ["tree", "perm", "script"];
    let mut next_section = 0;
    while let Some((line, tokens)) = lines.peek().cloned() {
        let Some(index) = sections.iter().position(|&s| s == tokens[0]) else {
            return Err(err(line, format!("unexpected `{}`", tokens[0])));
        };
        if index < next_section {
            return Err(err(
                line,
                format!("section `{}` repeated or out of order", tokens[0]),
            ));
        }
        next_section = index + 1;
        lines.pos += 1;
        match index {
            0 => {
                expect_len(line, &tokens, 3, "tree")?;
                let root = number(line, tokens[1])?;
                let count = number(line, tokens[2])?;
                let edges: Vec<EdgeId> = lines
                    .numbers(count, "tree edge indices")?
                    .into_iter()
                    .map(|(_, e)| e)
                    .collect();
                let tree = RootedSpanningTree::new(&doc.graph, edges, root)
                    .map_err(|e| err(line, e.to_string()))?;
                doc.tree = Some(tree);
            }
            1 => {
                expect_len(line, &tokens, 2, "perm")?;
                let count = number(line, tokens[1])?;
                if count != n {
                    return Err(err(
                        line,
                        format!("permutation of {count} entries for {n} vertices"),
                    ));
                }
                let images = lines
                    .numbers(count, "permutation images")?
                    .into_iter()
                    .map(|(_, v)| v)
                    .collect();
                doc.perm =
                    Some(VertexPermutation::new(images).map_err(|e| err(line, e.to_string()))?);
            }
            _ => {
                expect_len(line, &tokens, 2, "script")?;
                let count = number(line, tokens[1])?;
                let mut steps = Vec::with_capacity(count);
                for _ in 0..count {
                    let (line, step) = lines.next("a `reduce` line")?;
                    if step.len() < 2 || step[0] != "reduce" {
                        return Err(err(line, "expected `reduce <k> <v1> .. <vk>`"));
                    }
                    let k = number(line, step[1])?;
                    expect_len(line, &step, k + 2, "reduce")?;
                    let set = step[2..]
                        .iter()
                        .map(|t| number(line, t))
                        .collect::<Result<Vec<_>>>()?;
                    steps.push(ReductionStep::new(set));
                }
                doc.script = Some(ReductionScript::new(steps));
            }
        }
    }
    Ok(doc)
}

/// Canonical text of `doc`. Edge indices in the tree section are renumbered
/// to follow the sorted edge order.
pub fn write_mgf(doc: &MgfDocument) -> String {
    let g = &doc.graph;
    let mut order: Vec<EdgeId> = (0..g.m()).collect();
    order.sort_by_key(|&e| g.edge(e));
    let mut position = vec![0; g.m()];
    for (i, &e) in order.iter().enumerate() {
        position[e] = i;
    }

    let mut out = String::new();
    let _ = writeln!(out, "mgf 1\n{} {}", g.n(), g.m());
    for &e in &order {
        let (u, v) = g.edge(e);
        let _ = writeln!(out, "{u} {v}");
    }
    if let Some(tree) = &doc.tree {
        let mut edges: Vec<usize> = tree.edges().iter().map(|&e| position[e]).collect();
        edges.sort_unstable();
        let _ = writeln!(out, "tree {} {}", tree.root(), edges.len());
        for e in edges {
            let _ = writeln!(out, "{e}");
        }
    }
    if let Some(perm) = &doc.perm {
        let _ = writeln!(out, "perm {}", perm.len());
        for v in perm.as_slice() {
            let _ = writeln!(out, "{v}");
        }
    }
    if let Some(script) = &doc.script {
        let _ = writeln!(out, "script {}", script.len());
        for step in &script.steps {
            let _ = write!(out, "reduce {}", step.set.len());
            for v in &step.set {
                let _ = write!(out, " {v}");
            }
            out.push('\n');
        }
    }
    out
}
