use rotgraph::corpus::{self, ENTRIES};
use rotgraph::shape::recognize_tree;
use rotgraph::*;

#[test]
fn every_corpus_r_graph_round_trips() {
    for entry in ENTRIES.iter().filter(|e| e.r_graph) {
        let g = entry.graph();
        let r = entry.r;
        let c = construct(&g, r).unwrap();
        let out = c.rotation_graph();
        let h = &out.base;
        assert!(h.graph.is_simple(), "{}", entry.name);
        assert!(h.graph.is_regular(r));
        let shape = recognize_tree(&h.graph, &h.tree).unwrap().unwrap();
        assert_eq!(
            (shape.r, shape.depth, shape.root),
            (Some(r), c.hist.depth + 2, h.tree.root())
        );
        assert_eq!(h.graph.n(), t_i_r_order(r, c.hist.depth + 2));
        assert!(is_automorphism(&h.graph, &out.rotation).unwrap());
        assert!(is_rotational(&h.graph, &h.tree, &out.rotation).unwrap());
        assert!(verify_hist_partition(&h.graph, &h.tree).unwrap());

        let back = apply_script(&h.graph, &c.script).unwrap();
        assert!(
            are_isomorphic(&back, &g).unwrap().is_some(),
            "{}",
            entry.name
        );
    }
}

#[test]
fn written_construction_parses_back() {
    let g = corpus::get("k4").unwrap().graph();
    let c = construct(&g, 3).unwrap();
    let out = c.rotation_graph();
    let doc = MgfDocument {
        graph: out.base.graph.clone(),
        tree: Some(out.base.tree.clone()),
        perm: Some(out.rotation.clone()),
        script: Some(c.script.clone()),
    };
    let text = write_mgf(&doc);
    let back = read_mgf(&text).unwrap();
    assert_eq!(write_mgf(&back), text);
    assert!(back.graph.same_multiset(&out.base.graph));
    let tree = back.tree.unwrap();
    assert!(is_rotational(&back.graph, &tree, &back.perm.unwrap()).unwrap());
    let reduced = apply_script(&back.graph, &back.script.unwrap()).unwrap();
    assert!(are_isomorphic(&reduced, &g).unwrap().is_some());
}

#[test]
fn step1_on_the_bundle() {
    let (h, script) = step1_expand(&corpus::get("bundle3").unwrap().graph(), 3).unwrap();
    assert_eq!(script.len(), 2);
    assert!(h.graph.is_simple());
    let shape = recognize_tree(&h.graph, &h.tree).unwrap().unwrap();
    assert_eq!(shape.depth, h.depth);
}

#[test]
fn assembly_size_identity() {
    for r in [3usize, 5] {
        for d in [1usize, 2] {
            let h = hist_of_depth(r, d + 1);
            let rot = base_rotation_graph(r, d + 1).unwrap();
            let a = assemble(&h, &rot).unwrap();
            let n = a.rotation_graph.base.graph.n();
            assert_eq!(n, t_i_r_order(r, d + 3));
            assert_eq!(
                n,
                t_i_r_order(r, 2) + (r - 1) * (r - 1) * (t_i_r_order(r, d + 1) - 1)
            );
        }
    }
}

/// Any simple hist graph rooted at 0 serves as `H`.
fn hist_of_depth(r: usize, depth: usize) -> HistGraph {
    base_rotation_graph(r, depth).unwrap().base
}

#[test]
fn r3_schematic_counts() {
    let c = construct(&corpus::get("bundle3").unwrap().graph(), 3).unwrap();
    let plan = &c.assembly.plan;
    assert_eq!((plan.h_copies.len(), plan.r_copies.len()), (3, 1));
    assert_eq!(plan.n_lists.iter().map(Vec::len).sum::<usize>(), 12);
    assert_eq!(plan.l_lists.iter().map(Vec::len).sum::<usize>(), 6);
    assert_eq!(plan.new_edges.len(), 12);
    let g = &c.rotation_graph().base.graph;
    for leaf in plan.l_lists.iter().flatten() {
        assert_eq!(plan.new_edges.iter().filter(|(l, _)| l == leaf).count(), 2);
        assert_eq!(g.degree(*leaf), 3);
    }
}

#[test]
fn bad_inputs_are_rejected() {
    let bridged = corpus::get("bridged_cubic").unwrap().graph();
    assert!(matches!(
        construct(&bridged, 3),
        Err(Error::InvalidArgument(_))
    ));
    let k4 = corpus::get("k4").unwrap().graph();
    assert!(construct(&k4, 5).is_err());
    let h = base_rotation_graph(3, 2).unwrap().base;
    let rot = base_rotation_graph(3, 3).unwrap();
    assert!(matches!(assemble(&h, &rot), Err(Error::InvalidArgument(_))));
}
