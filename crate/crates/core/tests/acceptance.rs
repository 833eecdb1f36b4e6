//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rotgraph::build::expand_non_tree_edges;
use rotgraph::conjecture::COVER_VERTEX_LIMIT;
use rotgraph::corpus::{self, ENTRIES};
use rotgraph::shape::recognize_tree;
use rotgraph::surgery::{edge_expansion, leaf_expansion};
use rotgraph::*;

type Outcome = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn corpus_r_graphs() -> Vec<(&'static str, MultiGraph, usize)> {
    ENTRIES
        .iter()
        .filter(|e| e.r_graph)
        .map(|e| (e.name, e.graph(), e.r))
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for (name, g, r) in corpus_r_graphs() {
        let c = ok(construct(&g, r))?;
        let out = c.rotation_graph();
        let (gp, tree, alpha) = (&out.base.graph, &out.base.tree, &out.rotation);
        let d = c.hist.depth - 1;
        ensure!(gp.is_simple(), "{name}: G' not simple");
        ensure!(gp.is_regular(r), "{name}: G' not {r}-regular");
        let shape = ok(recognize_tree(gp, tree))?;
        ensure!(
            shape.map(|s| (s.r, s.depth, s.root)) == Some((Some(r), d + 3, tree.root())),
            "{name}: tree is not T_{{d+3}}^r at the root"
        );
        ensure!(
            ok(is_automorphism(gp, alpha))?,
            "{name}: not an automorphism"
        );
        ensure!(
            ok(is_rotational(gp, tree, alpha))?,
            "{name}: not rotational"
        );
        // reduce through the file format, as the command line does
        let doc = MgfDocument {
            graph: gp.clone(),
            tree: Some(tree.clone()),
            perm: Some(alpha.clone()),
            script: Some(c.script.clone()),
        };
        let parsed = ok(read_mgf(&write_mgf(&doc)))?;
        let reduced = ok(apply_script(&parsed.graph, parsed.script.as_ref().unwrap()))?;
        ensure!(
            ok(are_isomorphic(&reduced, &g))?.is_some(),
            "{name}: reduction not isomorphic to input"
        );
    }
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 60.0, "took {secs:.1}s");
    Ok(format!("6 corpus graphs round-trip in {secs:.2}s"))
}

/// `1 + r((r-1)^i - 1)/(r-2)`, the closed form of the layer sum.
fn closed_form_order(r: usize, i: usize) -> usize {
    1 + r * ((r - 1).pow(i as u32) - 1) / (r - 2)
}

fn criterion_2() -> Outcome {
    for (r, i, expected) in [(3, 1, 4), (3, 2, 10), (5, 1, 6)] {
        ensure!(
            t_i_r_order(r, i) == expected,
            "t_i_r_order({r},{i}) != {expected}"
        );
    }
    for r in [3, 5] {
        for depth in 1..=3 {
            let n = ok(base_rotation_graph(r, depth))?.base.graph.n();
            ensure!(
                n == t_i_r_order(r, depth),
                "R({r},{depth}) has {n} vertices"
            );
            ensure!(
                n == closed_form_order(r, depth),
                "order formula disagrees at ({r},{depth})"
            );
            let (tree, _) = ok(build_t_i_r(r, depth))?;
            ensure!(
                tree.n() == n,
                "built T_{depth}^{r} has {} vertices",
                tree.n()
            );
        }
    }
    for (name, g, r) in corpus_r_graphs() {
        let c = ok(construct(&g, r))?;
        let d = c.hist.depth - 1;
        let n = c.rotation_graph().base.graph.n();
        ensure!(n == t_i_r_order(r, d + 3), "{name}: |V(G')| = {n}");
        ensure!(
            n == closed_form_order(r, d + 3),
            "{name}: closed form disagrees"
        );
    }
    Ok("base graphs r in {3,5}, depth <= 3, and all corpus G'".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut instances, mut positive, mut nontrivial) = (0, 0, 0);
    while instances < 240 {
        let r = *[3usize, 5].choose(&mut rng).unwrap();
        let n = 2 * rng.gen_range(2..=7);
        let g = random_regular(&mut rng, n, r);
        let all = (1u64..1 << n).filter(|&s| s.count_ones() % 2 == 1 && cut_of(&g, s) == r);
        let candidates: Vec<u64> = all.collect();
        let inner: Vec<u64> = candidates
            .iter()
            .copied()
            .filter(|s| s.count_ones() >= 3 && s.count_ones() as usize <= n - 3)
            .collect();
        let pool = if inner.is_empty() {
            &candidates
        } else {
            &inner
        };
        let Some(&mask) = pool.choose(&mut rng) else {
            continue;
        };
        let s = members(mask, n);
        let whole = is_r_graph(&g, r);
        ensure!(
            whole == brute_r_graph(&g, r),
            "is_r_graph disagrees with brute force"
        );
        let (a, b) = ok(rizzi_split(&g, &s))?;
        let parts = is_r_graph(&a, r) && is_r_graph(&b, r);
        ensure!(
            whole == parts,
            "counterexample: G = {:?}, S = {s:?}",
            g.edges()
        );
        instances += 1;
        positive += whole as usize;
        nontrivial += !inner.is_empty() as usize;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 30.0, "took {secs:.1}s");
    Ok(format!("{instances} instances ({positive} r-graphs, {nontrivial} with 3 <= |S| <= n-3), {secs:.2}s"))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..150 {
        let n = 2 * rng.gen_range(1..=7);
        let extra = rng.gen_range(0..3 * n);
        let g = random_connected(&mut rng, n, extra);
        let a = ok(min_odd_cut(&g, OddCutMethod::Exhaustive))?;
        let b = ok(min_odd_cut(&g, OddCutMethod::GomoryHu))?;
        ensure!(
            a.value == b.value,
            "disagreement on {:?}: {} vs {}",
            g.edges(),
            a.value,
            b.value
        );
        ensure!(
            ok(g.boundary(&b.witness))?.len() == b.value,
            "Gomory-Hu witness has the wrong cut"
        );
    }
    Ok("150 random graphs, zero disagreements".into())
}

/// (exactly-2 cover by 2r, at-least-1 cover by 2r-1, nowhere-zero 5-flow)
fn answers(g: &MultiGraph, r: usize) -> std::result::Result<(bool, bool, bool), String> {
    Ok((
        ok(find_pm_cover(g, 2 * r, CoverRule::ExactlyTwo))?.is_some(),
        ok(find_pm_cover(g, 2 * r - 1, CoverRule::AtLeastOne))?.is_some(),
        ok(nowhere_zero_flow(g, 5))?.is_some(),
    ))
}

/// Walks the reduction chain of `construct(g)`; returns the orders of the
/// graphs whose answers were all compared, and of those where only the
/// flow answer was.
/// Orders above the cover cap get the flow comparison only.
fn invariance_chain(
    name: &str,
    g: &MultiGraph,
    r: usize,
) -> std::result::Result<(Vec<usize>, Vec<usize>), String> {
    let c = ok(construct(g, r))?;
    let mut graph = c.rotation_graph().base.graph.clone();
    let mut checked = Vec::new();
    let mut reference = None;
    let (mut flow_only, mut flows) = (Vec::new(), Vec::new());
    for (i, step) in c.script.steps.iter().enumerate() {
        let (next, _) = ok(two_cut_reduction(&graph, &step.set))?;
        let limit = (graph.n() > COVER_VERTEX_LIMIT).then_some(300);
        for pm in ok(enumerate_perfect_matchings(&graph, limit))? {
            let small = ok(transfer_pm(&graph, &step.set, &pm))?;
            ensure!(
                small.is_perfect_in(&next),
                "{name} step {i}: transfer is not perfect"
            );
        }
        for h in [&graph, &next] {
            if h.n() <= COVER_VERTEX_LIMIT && !checked.contains(&h.n()) {
                let a = answers(h, r)?;
                ensure!(
                    *reference.get_or_insert(a) == a,
                    "{name}: answers change at order {}",
                    h.n()
                );
                checked.push(h.n());
            } else if h.n() > COVER_VERTEX_LIMIT && !flow_only.contains(&h.n()) {
                // covers are out of reach here, the flow search is not
                flows.push(ok(nowhere_zero_flow(h, 5))?.is_some());
                flow_only.push(h.n());
            }
        }
        graph = next;
    }
    let expected = reference.map(|(_, _, f)| f);
    ensure!(
        flows.iter().all(|&f| Some(f) == expected),
        "{name}: 5-flow existence changes above the cap"
    );
    Ok((checked, flow_only))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let petersen = invariance_chain("petersen", &corpus::get("petersen").unwrap().graph(), 3)?;
    let bundle = invariance_chain("bundle3", &corpus::get("bundle3").unwrap().graph(), 3)?;
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 300.0, "took {secs:.1}s");
    Ok(format!(
        "all answers constant on orders {:?} (Petersen) and {:?} (bundle), 5-flow also on {:?} and {:?}; transfer checked on every step; {secs:.2}s",
        petersen.0, bundle.0, petersen.1, bundle.1
    ))
}

/// Every `n/2`-subset of edges that covers each vertex once.
fn brute_matchings(g: &MultiGraph) -> Vec<Vec<usize>> {
    let (n, m) = (g.n(), g.m());
    (0u64..1 << m)
        .filter(|s| s.count_ones() as usize == n / 2)
        .map(|s| members(s, m))
        .filter(|es| {
            let mut seen = vec![false; n];
            es.iter().all(|&e| {
                let (u, v) = g.edge(e);
                let fresh = !seen[u] && !seen[v];
                seen[u] = true;
                seen[v] = true;
                fresh
            })
        })
        .collect()
}

fn proper_coloring(g: &MultiGraph, colors: &[usize], k: usize) -> bool {
    colors.len() == g.m()
        && colors.iter().all(|&c| c < k)
        && (0..g.n()).all(|v| {
            let mut seen: Vec<usize> = g.incident(v).iter().map(|&e| colors[e]).collect();
            seen.sort_unstable();
            seen.windows(2).all(|w| w[0] != w[1])
        })
}

/// Three pairwise disjoint perfect matchings, i.e. a 3-edge-colouring.
fn has_disjoint_triple(pms: &[Vec<usize>]) -> bool {
    let disjoint = |a: &Vec<usize>, b: &Vec<usize>| a.iter().all(|e| !b.contains(e));
    (0..pms.len()).any(|i| {
        (i + 1..pms.len()).any(|j| {
            disjoint(&pms[i], &pms[j])
                && (j + 1..pms.len())
                    .any(|k| disjoint(&pms[i], &pms[k]) && disjoint(&pms[j], &pms[k]))
        })
    })
}

fn exact_cover_counts(g: &MultiGraph, cover: &[PerfectMatching], times: usize) -> bool {
    (0..g.m()).all(|e| cover.iter().filter(|pm| pm.contains(e)).count() == times)
}

fn criterion_6() -> Outcome {
    let p = corpus::get("petersen").unwrap().graph();
    let brute = brute_matchings(&p);
    ensure!(
        brute.len() == 6,
        "brute force finds {} Petersen matchings",
        brute.len()
    );
    let pms = ok(enumerate_perfect_matchings(&p, None))?;
    ensure!(
        pms.len() == 6,
        "enumeration finds {} Petersen matchings",
        pms.len()
    );
    ensure!(
        !has_disjoint_triple(&brute),
        "Petersen has a 3-edge-colouring by brute force"
    );
    ensure!(
        ok(chromatic_index_at_most(&p, 3))?.is_none(),
        "Petersen 3-coloured"
    );
    let four = ok(chromatic_index_at_most(&p, 4))?.ok_or("no 4-colouring of Petersen")?;
    ensure!(proper_coloring(&p, &four, 4), "4-colouring is not proper");
    ensure!(is_snark(&p), "Petersen is not reported as a snark");
    // a cubic graph has a 4-flow exactly when it is 3-edge-colourable
    ensure!(
        ok(nowhere_zero_flow(&p, 4))?.is_none(),
        "Petersen has a 4-flow"
    );
    let flow = ok(nowhere_zero_flow(&p, 5))?.ok_or("no 5-flow of Petersen")?;
    ensure!(flow.verify(&p, 5), "5-flow fails verification");
    ensure!(
        exact_cover_counts(&p, &pms, 2),
        "the 6 matchings are not an exactly-2 cover"
    );
    let cover =
        ok(find_pm_cover(&p, 6, CoverRule::ExactlyTwo))?.ok_or("no Fulkerson cover of Petersen")?;
    ensure!(exact_cover_counts(&p, &cover, 2), "returned cover is wrong");

    let k4 = corpus::get("k4").unwrap().graph();
    ensure!(brute_matchings(&k4).len() == 3, "brute force K4 matchings");
    ensure!(
        ok(enumerate_perfect_matchings(&k4, None))?.len() == 3,
        "enumerated K4 matchings"
    );
    let three = ok(chromatic_index_at_most(&k4, 3))?.ok_or("K4 not 3-colourable")?;
    ensure!(proper_coloring(&k4, &three, 3), "K4 colouring not proper");
    ensure!(!is_snark(&k4), "K4 reported as a snark");
    let cover =
        ok(find_pm_cover(&k4, 6, CoverRule::ExactlyTwo))?.ok_or("no Fulkerson cover of K4")?;
    ensure!(
        cover.len() == 6 && exact_cover_counts(&k4, &cover, 2),
        "K4 cover is wrong"
    );
    let k4_pms = ok(enumerate_perfect_matchings(&k4, None))?;
    ensure!(
        k4_pms
            .iter()
            .all(|pm| cover.iter().filter(|c| *c == pm).count() == 2),
        "K4 cover is not a doubling"
    );
    Ok("Petersen: 6 matchings, snark, no 4-flow, 5-flow, exactly-2 cover; K4: 3 matchings, 3-colourable, doubled cover".into())
}

fn no_parallel_at(g: &MultiGraph, k: &[usize]) -> bool {
    k.iter()
        .all(|&x| g.weighted_neighbors(x).iter().all(|&(_, c)| c == 1))
}

/// Re-runs the leaf expansions of step 1 and of the base graph, checking
/// K-simplicity after each; returns how many expansions were replayed.
fn replay_expansions(g: &MultiGraph, r: usize) -> std::result::Result<usize, String> {
    let tree = ok(g.spanning_tree(0))?;
    let (mut graph, mut tree, _) = ok(expand_non_tree_edges(g, &tree))?;
    let layout = tree.layout(&graph);
    let d = tree
        .leaves(&graph)
        .iter()
        .map(|&l| layout.depth[l])
        .max()
        .unwrap();
    let mut count = 0;
    loop {
        let layout = tree.layout(&graph);
        let Some(l) = tree
            .leaves(&graph)
            .into_iter()
            .find(|&l| layout.depth[l] < d + 1)
        else {
            break;
        };
        let x = ok(leaf_expansion(&graph, &tree, l))?;
        ensure!(
            no_parallel_at(&x.graph, &x.k),
            "parallel edge at a K-vertex"
        );
        count += 1;
        graph = x.graph;
        tree = x.tree;
    }
    let k = (0..=r).flat_map(|a| (a + 1..=r).map(move |b| (a, b)));
    let mut base = MultiGraph::from_edges(r + 1, k).unwrap();
    let mut btree = ok(base.spanning_tree(0))?;
    for _ in 1..d + 1 {
        let mut pending = btree.leaves(&base).len();
        while pending > 0 {
            let layout = btree.layout(&base);
            let depth = btree
                .leaves(&base)
                .iter()
                .map(|&l| layout.depth[l])
                .min()
                .unwrap();
            let l = btree
                .leaves(&base)
                .into_iter()
                .find(|&l| layout.depth[l] == depth)
                .unwrap();
            let x = ok(leaf_expansion(&base, &btree, l))?;
            ensure!(
                no_parallel_at(&x.graph, &x.k),
                "parallel edge at a K-vertex of R"
            );
            count += 1;
            pending -= 1;
            base = x.graph;
            btree = x.tree;
        }
    }
    Ok(count)
}

fn criterion_7() -> Outcome {
    let mut replayed = 0;
    for (name, g, r) in corpus_r_graphs() {
        let n = replay_expansions(&g, r)?;
        let c = ok(construct(&g, r))?;
        ensure!(
            n == c.trace.leaf_expansions,
            "{name}: replayed {n} expansions, pipeline did {}",
            c.trace.leaf_expansions
        );
        replayed += n;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut instances = 0;
    while instances < 60 {
        let r = *[3usize, 5].choose(&mut rng).unwrap();
        let n = 2 * rng.gen_range(1..=5);
        let g = random_regular(&mut rng, n, r);
        if !is_r_graph(&g, r) {
            continue;
        }
        let t = ok(g.spanning_tree(0))?;
        let non_tree: Vec<usize> = (0..g.m()).filter(|&e| !t.contains(e)).collect();
        let Some(&e) = non_tree.choose(&mut rng) else {
            continue;
        };
        let x = ok(edge_expansion(&g, &t, e))?;
        let (mut graph, mut tree, mut s) = (x.graph, x.tree, x.gadget.to_vec());
        // one or two leaf expansions inside S, each checked against the
        // reduction before it
        for _ in 0..rng.gen_range(1..=2) {
            let leaves: Vec<usize> = tree
                .leaves(&graph)
                .into_iter()
                .filter(|v| s.contains(v))
                .collect();
            let l = *leaves.choose(&mut rng).unwrap();
            let y = ok(leaf_expansion(&graph, &tree, l))?;
            let mut s2 = y.relabel.map_vertices(&s);
            s2.extend(&y.k);
            let (before, _) = ok(two_cut_reduction(&graph, &s))?;
            let (after, _) = ok(two_cut_reduction(&y.graph, &s2))?;
            ensure!(
                ok(are_isomorphic(&before, &after))?.is_some(),
                "reduction replay fails on {:?}",
                graph.edges()
            );
            ensure!(
                before.same_multiset(&g) && after.same_multiset(&g),
                "reduction does not restore G"
            );
            graph = y.graph;
            tree = y.tree;
            s = s2;
        }
        instances += 1;
    }
    Ok(format!("{replayed} pipeline leaf expansions simple at K; {instances} randomized reduction-replay instances"))
}

fn criterion_8() -> Outcome {
    for (name, g, r) in corpus_r_graphs() {
        let c = ok(construct(&g, r))?;
        let q = ok(bipartite_contraction(&c.assembly))?;
        ensure!(q.is_regular(r), "{name}: quotient not {r}-regular");
        let colour = q
            .two_coloring()
            .ok_or(format!("{name}: quotient not bipartite"))?;
        ensure!(
            q.edges().iter().all(|&(u, v)| colour[u] != colour[v]),
            "{name}: bad 2-colouring"
        );
        ensure!(is_r_graph(&q, r), "{name}: quotient not an r-graph");
        let expected = t_i_r_order(r, 2) + (r - 1) * (r - 1);
        ensure!(q.n() == expected, "{name}: quotient has {} vertices", q.n());
    }
    Ok("all 6 quotients bipartite, r-regular, r-graphs".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("construct and reduce round trip", criterion_1),
        ("order identities", criterion_2),
        ("odd-set split property suite", criterion_3),
        ("odd-cut oracle equivalence", criterion_4),
        ("2-cut invariance of covers and flows", criterion_5),
        ("known values", criterion_6),
        (
            "leaf-expansion simplicity and reduction replay",
            criterion_7,
        ),
        ("bipartite quotient", criterion_8),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {title}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {title}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
