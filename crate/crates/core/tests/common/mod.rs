#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rotgraph::MultiGraph;

/// Random r-regular loopless multigraph on `n` vertices from the
/// configuration model, retrying until the pairing has no loop and the
/// result is connected.
pub fn random_regular<R: Rng>(rng: &mut R, n: usize, r: usize) -> MultiGraph {
    assert!(n * r % 2 == 0);
    loop {
        let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(r)).collect();
        stubs.shuffle(rng);
        let pairs: Vec<(usize, usize)> = stubs.chunks(2).map(|c| (c[0], c[1])).collect();
        if pairs.iter().any(|&(a, b)| a == b) {
            continue;
        }
        let g = MultiGraph::from_edges(n, pairs).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

/// Random connected multigraph: a random spanning tree plus extra edges.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, extra: usize) -> MultiGraph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for _ in 0..extra {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n);
        while b == a {
            b = rng.gen_range(0..n);
        }
        edges.push((a, b));
    }
    MultiGraph::from_edges(n, edges).unwrap()
}

/// Brute-force boundary size of the vertex set encoded by `mask`.
pub fn cut_of(g: &MultiGraph, mask: u64) -> usize {
    g.edges()
        .iter()
        .filter(|&&(u, v)| (mask >> u & 1) != (mask >> v & 1))
        .count()
}

pub fn members(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Brute-force r-graph test: regular and every odd subset has cut >= r.
pub fn brute_r_graph(g: &MultiGraph, r: usize) -> bool {
    let n = g.n();
    g.is_regular(r)
        && (1u64..1 << n)
            .filter(|s| s.count_ones() % 2 == 1)
            .all(|s| cut_of(g, s) >= r)
}
