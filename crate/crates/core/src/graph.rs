//! Small graph helpers over dense adjacency lists.

use std::collections::VecDeque;

use petgraph::algo::kosaraju_scc;
use petgraph::graph::{DiGraph, NodeIndex};

/// Strongly connected component index of every vertex.
pub(crate) fn scc(adj: &[Vec<usize>]) -> Vec<usize> {
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(adj.len(), 0);
    for _ in adj {
        g.add_node(());
    }
    for (v, succs) in adj.iter().enumerate() {
        for &w in succs {
            g.add_edge(NodeIndex::new(v), NodeIndex::new(w), ());
        }
    }
    let mut comp = vec![0; adj.len()];
    for (c, members) in kosaraju_scc(&g).into_iter().enumerate() {
        for v in members {
            comp[v.index()] = c;
        }
    }
    comp
}

/// Vertices lying on some cycle: members of a component with more than one
/// vertex, or vertices with a self-loop.
pub(crate) fn on_cycle(adj: &[Vec<usize>]) -> Vec<bool> {
    let comp = scc(adj);
    let mut size = vec![0usize; adj.len()];
    for &c in &comp {
        size[c] += 1;
    }
    (0..adj.len())
        .map(|v| size[comp[v]] > 1 || adj[v].contains(&v))
        .collect()
}

/// Vertices from which some vertex in `targets` is reachable (including the
/// targets themselves), by a backward sweep over reversed edges.
pub(crate) fn can_reach(adj: &[Vec<usize>], targets: &[bool]) -> Vec<bool> {
    let n = adj.len();
    let mut rev = vec![Vec::new(); n];
    for (v, succs) in adj.iter().enumerate() {
        for &w in succs {
            rev[w].push(v);
        }
    }
    let mut seen = targets.to_vec();
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| targets[v]).collect();
    while let Some(w) = queue.pop_front() {
        for &v in &rev[w] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}
