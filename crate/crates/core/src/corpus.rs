//! Bundled seed graphs in `mgf` form.

use crate::mgf::read_mgf;
use crate::mgraph::MultiGraph;

pub struct Entry {
    pub name: &'static str,
    /// Common vertex degree.
    pub r: usize,
    /// Whether the graph is an r-graph; the bridged cubic graph is the one
    /// negative example.
    pub r_graph: bool,
    pub text: &'static str,
}

impl Entry {
    pub fn graph(&self) -> MultiGraph {
        read_mgf(self.text).expect("bundled corpus parses").graph
    }
}

macro_rules! entry {
    ($name:literal, $r:expr, $ok:expr) => {
        Entry {
            name: $name,
            r: $r,
            r_graph: $ok,
            text: include_str!(concat!("../corpus/", $name, ".mgf")),
        }
    };
}

pub const ENTRIES: [Entry; 7] = [
    entry!("k4", 3, true),
    entry!("k33", 3, true),
    entry!("petersen", 3, true),
    entry!("bundle3", 3, true),
    entry!("k6", 5, true),
    entry!("bundle5", 5, true),
    entry!("bridged_cubic", 3, false),
];

pub fn get(name: &str) -> Option<&'static Entry> {
    ENTRIES.iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::is_r_graph;

    #[test]
    fn flags_match_the_graphs() {
        for e in &ENTRIES {
            let g = e.graph();
            assert!(g.is_regular(e.r), "{}", e.name);
            assert_eq!(is_r_graph(&g, e.r), e.r_graph, "{}", e.name);
        }
        assert!(get("petersen").is_some() && get("c5").is_none());
    }
}
