//! Simple directed and undirected graphs over bitset adjacency.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::iso::{find_isomorphism, Adjacency};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGraph {
    out: Vec<BitSet>,
    inn: Vec<BitSet>,
    pub labels: Option<Vec<String>>,
}

impl DirectedGraph {
    pub fn new(m: usize) -> Self {
        DirectedGraph {
            out: vec![BitSet::new(m); m],
            inn: vec![BitSet::new(m); m],
            labels: None,
        }
    }

    pub fn from_edges(m: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = DirectedGraph::new(m);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.m());
        self.labels = Some(labels);
        self
    }

    pub fn m(&self) -> usize {
        self.out.len()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "self-loops are implicit");
        self.out[u].insert(v);
        self.inn[v].insert(u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    pub fn out(&self, u: usize) -> &BitSet {
        &self.out[u]
    }

    pub fn inn(&self, u: usize) -> &BitSet {
        &self.inn[u]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.m())
            .flat_map(|u| self.out[u].iter().map(move |v| (u, v)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(BitSet::count).sum()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    /// Vertex order in which every edge goes from a later to an earlier vertex.
    pub fn sink_first_order(&self) -> Option<Vec<usize>> {
        let m = self.m();
        let mut outdeg: Vec<usize> = self.out.iter().map(BitSet::count).collect();
        let mut ready: Vec<usize> = (0..m).filter(|&v| outdeg[v] == 0).rev().collect();
        let mut order = Vec::with_capacity(m);
        while let Some(v) = ready.pop() {
            order.push(v);
            for u in self.inn[v].iter() {
                outdeg[u] -= 1;
                if outdeg[u] == 0 {
                    ready.push(u);
                }
            }
        }
        (order.len() == m).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.sink_first_order().is_some()
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> DirectedGraph {
        let mut g = DirectedGraph::new(self.m());
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        if let Some(l) = &self.labels {
            let mut nl = vec![String::new(); l.len()];
            for (v, s) in l.iter().enumerate() {
                nl[perm[v]] = s.clone();
            }
            g.labels = Some(nl);
        }
        g
    }

    pub fn induced(&self, vs: &[usize]) -> DirectedGraph {
        let mut g = DirectedGraph::new(vs.len());
        for (a, &u) in vs.iter().enumerate() {
            for (b, &v) in vs.iter().enumerate() {
                if self.has_edge(u, v) {
                    g.add_edge(a, b);
                }
            }
        }
        g.labels = Some(vs.iter().map(|&v| self.label(v)).collect());
        g
    }

    /// Undirected graph with `{u, v}` an edge iff neither `u→v` nor `v→u`.
    pub fn complement(&self) -> UndirectedGraph {
        let m = self.m();
        let mut h = UndirectedGraph::new(m);
        for u in 0..m {
            for v in u + 1..m {
                if !self.has_edge(u, v) && !self.has_edge(v, u) {
                    h.add_edge(u, v);
                }
            }
        }
        h.labels = self.labels.clone();
        h
    }

    /// Underlying undirected graph.
    pub fn underlying(&self) -> UndirectedGraph {
        let mut h = UndirectedGraph::new(self.m());
        for (u, v) in self.edges() {
            h.add_edge(u, v);
        }
        h.labels = self.labels.clone();
        h
    }

    pub fn adjacency(&self) -> Adjacency {
        Adjacency {
            out: self.out.clone(),
            inn: self.inn.clone(),
        }
    }

    pub fn isomorphic_to(&self, other: &DirectedGraph) -> bool {
        self.edge_count() == other.edge_count()
            && find_isomorphism(&self.adjacency(), &other.adjacency(), None).is_some()
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("digraph {name} {{\n");
        for v in 0..self.m() {
            s.push_str(&format!("  v{v} [label=\"{}\"];\n", self.label(v)));
        }
        for (u, v) in self.edges() {
            s.push_str(&format!("  v{u} -> v{v};\n"));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            m: self.m(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn from_json(j: &GraphJson) -> DirectedGraph {
        let mut g = DirectedGraph::from_edges(j.m, j.edges.iter().map(|e| (e[0], e[1])));
        g.labels = j.labels.clone();
        g
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub m: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    adj: Vec<BitSet>,
    pub labels: Option<Vec<String>>,
}

impl UndirectedGraph {
    pub fn new(m: usize) -> Self {
        UndirectedGraph {
            adj: vec![BitSet::new(m); m],
            labels: None,
        }
    }

    pub fn from_edges(m: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = UndirectedGraph::new(m);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(m: usize) -> Self {
        UndirectedGraph::from_edges(m, (0..m).flat_map(|u| (u + 1..m).map(move |v| (u, v))))
    }

    pub fn cycle(m: usize) -> Self {
        UndirectedGraph::from_edges(m, (0..m).map(|i| (i, (i + 1) % m)))
    }

    /// Mycielski construction; applied to the 5-cycle it gives the Grötzsch graph.
    pub fn mycielski(&self) -> UndirectedGraph {
        let m = self.m();
        let mut g = UndirectedGraph::new(2 * m + 1);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
            g.add_edge(u, m + v);
            g.add_edge(m + u, v);
        }
        for i in 0..m {
            g.add_edge(m + i, 2 * m);
        }
        g
    }

    pub fn m(&self) -> usize {
        self.adj.len()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, u: usize) -> &BitSet {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.m()).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.m())
            .flat_map(|u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn complement(&self) -> UndirectedGraph {
        let m = self.m();
        let mut h = UndirectedGraph::new(m);
        for u in 0..m {
            for v in u + 1..m {
                if !self.has_edge(u, v) {
                    h.add_edge(u, v);
                }
            }
        }
        h.labels = self.labels.clone();
        h
    }

    pub fn induced(&self, vs: &[usize]) -> UndirectedGraph {
        let mut g = UndirectedGraph::new(vs.len());
        for a in 0..vs.len() {
            for b in a + 1..vs.len() {
                if self.has_edge(vs[a], vs[b]) {
                    g.add_edge(a, b);
                }
            }
        }
        g.labels = Some(vs.iter().map(|&v| self.label(v)).collect());
        g
    }

    pub fn permuted(&self, perm: &[usize]) -> UndirectedGraph {
        let mut g = UndirectedGraph::from_edges(
            self.m(),
            self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])),
        );
        if let Some(l) = &self.labels {
            let mut nl = vec![String::new(); l.len()];
            for (v, s) in l.iter().enumerate() {
                nl[perm[v]] = s.clone();
            }
            g.labels = Some(nl);
        }
        g
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges()
            .iter()
            .all(|&(u, v)| self.adj[u].is_disjoint(&self.adj[v]))
    }

    pub fn is_proper_coloring(&self, colors: &[usize]) -> bool {
        self.edges().iter().all(|&(u, v)| colors[u] != colors[v])
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn adjacency(&self) -> Adjacency {
        Adjacency {
            out: self.adj.clone(),
            inn: self.adj.clone(),
        }
    }

    pub fn isomorphic_to(&self, other: &UndirectedGraph) -> bool {
        self.edge_count() == other.edge_count()
            && find_isomorphism(&self.adjacency(), &other.adjacency(), None).is_some()
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph {name} {{\n");
        for v in 0..self.m() {
            s.push_str(&format!("  v{v} [label=\"{}\"];\n", self.label(v)));
        }
        for (u, v) in self.edges() {
            s.push_str(&format!("  v{u} -- v{v};\n"));
        }
        s.push_str("}\n");
        s
    }
}
