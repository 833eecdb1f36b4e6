//! `rotgraph`: command-line access to the construction and the verifiers.
//!
//! Exit codes: 0 when the property holds or the command succeeded, 1 when it
//! fails or no witness exists, 2 on usage or input errors. Witnesses go to
//! stdout as mgf-style sections, diagnostics to stderr.

use std::fmt::Write as _;
use std::io::Read as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rotgraph::conjecture::FlowAssignment;
use rotgraph::{
    apply_script, are_isomorphic, base_rotation_graph, build_t_i_r, chromatic_index_at_most,
    construct, find_pm_cover, find_rotational_automorphism, is_automorphism, is_r_graph,
    is_rotational, is_snark, min_odd_cut, nowhere_zero_flow, read_mgf, write_mgf, CoverRule,
    MgfDocument, OddCutMethod, VertexPermutation,
};

#[derive(Parser)]
#[command(
    name = "rotgraph",
    version,
    about = "Rotation r-graphs from arbitrary r-graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether FILE is an r-graph; prints a minimum odd cut.
    Verify {
        #[arg(long)]
        r: usize,
        file: String,
    },
    /// Build a simple rotation r-graph with a script reducing it to FILE.
    Construct {
        #[arg(long)]
        r: usize,
        file: String,
    },
    /// Apply the script embedded in FILE and print the resulting graph.
    Reduce { file: String },
    /// Check the embedded permutation, or search for one if FILE has none.
    RotationCheck { file: String },
    /// Search for a perfect-matching cover.
    Cover {
        #[arg(long, value_enum)]
        mode: CoverMode,
        #[arg(long)]
        r: usize,
        /// Bound for `atmost-k`.
        #[arg(long)]
        k: Option<usize>,
        file: String,
    },
    /// Search for a nowhere-zero k-flow.
    Flow {
        #[arg(long)]
        k: u32,
        file: String,
    },
    /// Exit 0 when FILE is a snark (cubic, bridgeless, chromatic index 4).
    Snark { file: String },
    /// Print a T_depth^r tree or a base rotation graph.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        depth: usize,
    },
    /// Decide whether two graphs are isomorphic; prints the vertex map.
    Iso { a: String, b: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum CoverMode {
    /// 2r matchings, every edge in exactly two.
    Fulkerson,
    /// 2r-1 matchings, every edge in at least one.
    Berge,
    /// r matchings, every edge in at most k.
    AtmostK,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Tir,
    BaseRotation,
}

/// Failure that maps to exit code 2.
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Self {
        Fatal(e.to_string())
    }
}

/// What a command prints and whether its property holds.
struct Report {
    holds: bool,
    stdout: String,
}

impl Report {
    fn yes(stdout: String) -> Self {
        Report {
            holds: true,
            stdout,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            print!("{}", report.stdout);
            if report.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Fatal(msg)) => {
            eprintln!("rotgraph: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &str) -> Result<MgfDocument, Fatal> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Fatal(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Fatal(format!("{path}: {e}")))?
    };
    read_mgf(&text).map_err(|e| Fatal(format!("{path}: {e}")))
}

fn perm_section(out: &mut String, p: &VertexPermutation) {
    writeln!(out, "perm {}", p.len()).unwrap();
    for v in p.as_slice() {
        writeln!(out, "{v}").unwrap();
    }
}

fn run(command: Command) -> Result<Report, Fatal> {
    let mut out = String::new();
    match command {
        Command::Verify { r, file } => {
            let g = load(&file)?.graph;
            let holds = is_r_graph(&g, r);
            eprintln!(
                "{}",
                if holds {
                    format!("{r}-graph")
                } else {
                    format!("not a {r}-graph")
                }
            );
            // disconnected graphs have no single certificate
            if let Ok(cut) = min_odd_cut(&g, OddCutMethod::Auto) {
                writeln!(out, "oddcut {} {}", cut.value, cut.witness.len()).unwrap();
                for v in &cut.witness {
                    writeln!(out, "{v}").unwrap();
                }
            }
            Ok(Report { holds, stdout: out })
        }
        Command::Construct { r, file } => {
            let g = load(&file)?.graph;
            let c = construct(&g, r)?;
            let rot = c.rotation_graph();
            eprintln!(
                "{} vertices, {} edge expansions, {} leaf expansions, {} reduction steps",
                rot.base.graph.n(),
                c.trace.edge_expansions,
                c.trace.leaf_expansions,
                c.script.len()
            );
            let doc = MgfDocument {
                graph: rot.base.graph.clone(),
                tree: Some(rot.base.tree.clone()),
                perm: Some(rot.rotation.clone()),
                script: Some(c.script.clone()),
            };
            Ok(Report::yes(write_mgf(&doc)))
        }
        Command::Reduce { file } => {
            let doc = load(&file)?;
            let script = doc
                .script
                .ok_or_else(|| Fatal(format!("{file}: no script section")))?;
            let g = apply_script(&doc.graph, &script)?;
            Ok(Report::yes(write_mgf(&MgfDocument::graph(g))))
        }
        Command::RotationCheck { file } => {
            let doc = load(&file)?;
            let tree = doc
                .tree
                .ok_or_else(|| Fatal(format!("{file}: no tree section")))?;
            match doc.perm {
                Some(p) => {
                    let holds =
                        is_automorphism(&doc.graph, &p)? && is_rotational(&doc.graph, &tree, &p)?;
                    if !holds {
                        eprintln!("permutation is not a rotational automorphism");
                    }
                    Ok(Report { holds, stdout: out })
                }
                None => match find_rotational_automorphism(&doc.graph, &tree)? {
                    Some(p) => {
                        perm_section(&mut out, &p);
                        Ok(Report::yes(out))
                    }
                    None => {
                        eprintln!("no rotational automorphism");
                        Ok(Report {
                            holds: false,
                            stdout: out,
                        })
                    }
                },
            }
        }
        Command::Cover { mode, r, k, file } => {
            let g = load(&file)?.graph;
            if r == 0 {
                return Err(Fatal("--r must be positive".into()));
            }
            let (count, rule) = match mode {
                CoverMode::Fulkerson => (2 * r, CoverRule::ExactlyTwo),
                CoverMode::Berge => (2 * r - 1, CoverRule::AtLeastOne),
                CoverMode::AtmostK => {
                    let k = k.ok_or_else(|| Fatal("atmost-k needs --k".into()))?;
                    (r, CoverRule::AtMost(k))
                }
            };
            if !g.is_regular(r) {
                return Err(Fatal(format!("{file}: graph is not {r}-regular")));
            }
            match find_pm_cover(&g, count, rule)? {
                Some(cover) => {
                    writeln!(out, "matchings {}", cover.len()).unwrap();
                    for pm in &cover {
                        write!(out, "matching {}", pm.edges.len()).unwrap();
                        for e in &pm.edges {
                            write!(out, " {e}").unwrap();
                        }
                        out.push('\n');
                    }
                    Ok(Report::yes(out))
                }
                None => {
                    eprintln!("no such cover");
                    Ok(Report {
                        holds: false,
                        stdout: out,
                    })
                }
            }
        }
        Command::Flow { k, file } => {
            let g = load(&file)?.graph;
            match nowhere_zero_flow(&g, k)? {
                Some(FlowAssignment { arcs, values }) => {
                    writeln!(out, "flow {}", arcs.len()).unwrap();
                    for ((t, h), x) in arcs.iter().zip(&values) {
                        writeln!(out, "{t} {h} {x}").unwrap();
                    }
                    Ok(Report::yes(out))
                }
                None => {
                    eprintln!("no nowhere-zero {k}-flow");
                    Ok(Report {
                        holds: false,
                        stdout: out,
                    })
                }
            }
        }
        Command::Snark { file } => {
            let g = load(&file)?.graph;
            let holds = is_snark(&g);
            if !holds && g.is_regular(3) && g.bridges().is_empty() {
                if let Some(colours) = chromatic_index_at_most(&g, 3)? {
                    writeln!(out, "coloring {}", colours.len()).unwrap();
                    for c in colours {
                        writeln!(out, "{c}").unwrap();
                    }
                }
            }
            eprintln!("{}", if holds { "snark" } else { "not a snark" });
            Ok(Report { holds, stdout: out })
        }
        Command::Gen { kind, r, depth } => {
            let doc = match kind {
                GenKind::Tir => {
                    let (g, tree) = build_t_i_r(r, depth)?;
                    MgfDocument {
                        tree: Some(tree),
                        ..MgfDocument::graph(g)
                    }
                }
                GenKind::BaseRotation => {
                    let rot = base_rotation_graph(r, depth)?;
                    MgfDocument {
                        graph: rot.base.graph,
                        tree: Some(rot.base.tree),
                        perm: Some(rot.rotation),
                        script: None,
                    }
                }
            };
            Ok(Report::yes(write_mgf(&doc)))
        }
        Command::Iso { a, b } => {
            let (ga, gb) = (load(&a)?.graph, load(&b)?.graph);
            match are_isomorphic(&ga, &gb)? {
                Some(p) => {
                    perm_section(&mut out, &p);
                    Ok(Report::yes(out))
                }
                None => {
                    eprintln!("not isomorphic");
                    Ok(Report {
                        holds: false,
                        stdout: out,
                    })
                }
            }
        }
    }
}
