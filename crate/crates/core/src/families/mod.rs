//! Hochschild, bubble, word and parabolic Tamari lattices, and gentle trees.

pub mod gentle;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::lattice_from_galois;
use crate::graph::{DirectedGraph, UndirectedGraph};
use crate::lattice::Lattice;
use crate::poset::Poset;

/// Reconstructs the lattice of maximal orthogonal pairs, labelling each element
/// by the vertices on its left side.
pub fn lattice_of(g: &DirectedGraph) -> Result<Lattice> {
    let (mut l, pairs) = lattice_from_galois(g)?;
    let labels = pairs
        .pairs
        .iter()
        .map(|(x, _)| {
            if x.is_empty() {
                "-".to_string()
            } else {
                x.iter().map(|v| g.label(v)).collect::<Vec<_>>().join("|")
            }
        })
        .collect();
    l.set_labels(Some(labels));
    Ok(l)
}

/// Galois graph of `Hoch(n)` on `(1,j)` for `1 ≤ j ≤ n` and `(2,j)` for `2 ≤ j ≤ n`.
pub fn hochschild_graph(n: usize) -> Result<DirectedGraph> {
    if n == 0 {
        return Err(Error::InvalidParameter("Hoch(n) needs n ≥ 1".into()));
    }
    let mut verts = Vec::new();
    for i in 1..=2 {
        for j in i..=n {
            verts.push((i, j));
        }
    }
    let mut g = DirectedGraph::new(verts.len());
    for (u, &(i, j)) in verts.iter().enumerate() {
        for (v, &(i2, j2)) in verts.iter().enumerate() {
            if u != v && ((i == 2 && i2 == 1 && j == j2) || (i == 1 && i2 == 1 && j > j2)) {
                g.add_edge(u, v);
            }
        }
    }
    g.labels = Some(verts.iter().map(|(i, j)| format!("{i}{j}")).collect());
    Ok(g)
}

pub fn hochschild(n: usize) -> Result<(DirectedGraph, Lattice)> {
    let g = hochschild_graph(n)?;
    let l = lattice_of(&g)?;
    Ok((g, l))
}

/// Galois graph of `Bub(m, n)` on `X ⊔ Y ⊔ X×Y`.
pub fn bubble_graph(m: usize, n: usize) -> Result<DirectedGraph> {
    if m + n == 0 {
        return Err(Error::InvalidParameter("Bub(m, n) needs m + n ≥ 1".into()));
    }
    let pair = |s: usize, t: usize| m + n + s * n + t;
    let mut g = DirectedGraph::new(m + n + m * n);
    for s in 0..m {
        for t in 0..n {
            g.add_edge(pair(s, t), s);
            g.add_edge(m + t, pair(s, t));
            for s2 in 0..=s {
                for t2 in t..n {
                    if (s2, t2) != (s, t) {
                        g.add_edge(pair(s, t), pair(s2, t2));
                    }
                }
            }
        }
    }
    let mut labels: Vec<String> = (1..=m).map(|s| format!("x{s}")).collect();
    labels.extend((1..=n).map(|t| format!("y{t}")));
    for s in 1..=m {
        labels.extend((1..=n).map(|t| format!("x{s}y{t}")));
    }
    g.labels = Some(labels);
    Ok(g)
}

pub fn bubble(m: usize, n: usize) -> Result<(DirectedGraph, Lattice)> {
    let g = bubble_graph(m, n)?;
    let l = lattice_of(&g)?;
    Ok((g, l))
}

/// All `(m, n)`-words, sorted by letter sum then lexicographically.
pub fn words(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    extend_words(m, n, &mut cur, &mut out);
    out.sort_by_key(|w| (w.iter().sum::<usize>(), w.clone()));
    out
}

fn extend_words(m: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == n {
        out.push(cur.clone());
        return;
    }
    for letter in 0..=m + 1 {
        if cur.is_empty() && letter == m + 1 {
            continue;
        }
        if (1..=m).contains(&letter) && cur.iter().any(|&x| x < letter) {
            continue;
        }
        cur.push(letter);
        extend_words(m, n, cur, out);
        cur.pop();
    }
}

fn word_label(w: &[usize], m: usize) -> String {
    let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
    parts.join(if m + 1 < 10 { "" } else { "," })
}

/// `W(m, n)` under the componentwise order, with its downward label sets checked.
pub fn word_lattice(m: usize, n: usize) -> Result<Lattice> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter("W(m, n) needs m, n ≥ 1".into()));
    }
    let ws = words(m, n);
    let p = Poset::from_relation(ws.len(), |a, b| ws[a].iter().zip(&ws[b]).all(|(x, y)| x <= y))?;
    let mut l = Lattice::from_poset(p)?;
    l.set_labels(Some(ws.iter().map(|w| word_label(w, m)).collect()));
    let index: HashMap<&[usize], usize> = ws.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let a = |i: usize, j: usize| {
        let mut w = vec![0; n];
        w[..i].fill(j);
        index[w.as_slice()]
    };
    let b = |i: usize| {
        let mut w = vec![0; n];
        w[i - 1] = m + 1;
        index[w.as_slice()]
    };
    for (x, w) in ws.iter().enumerate() {
        let mut want: Vec<usize> = (1..=m)
            .filter_map(|j| w.iter().rposition(|&c| c == j).map(|p| a(p + 1, j)))
            .chain((1..=n).filter(|&i| w[i - 1] == m + 1).map(b))
            .collect();
        want.sort_unstable();
        let got = l.downward_labels(x).ok_or(Error::NotSemidistributive)?;
        if got != want {
            return Err(Error::TheoremViolation(format!(
                "downward labels of {} disagree with rightmost letters",
                word_label(w, m)
            )));
        }
    }
    Ok(l)
}

/// Integer composition `α` of `n`; nodes are numbered from 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Composition {
    pub parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Composition> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidParameter(format!("not a composition: {parts:?}")));
        }
        Ok(Composition { parts })
    }

    pub fn ones(n: usize) -> Result<Composition> {
        Composition::new(vec![1; n])
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn max_part(&self) -> usize {
        *self.parts.iter().max().unwrap()
    }

    /// Region (0-based) holding node `a`.
    pub fn region(&self, a: usize) -> usize {
        let mut end = 0;
        for (r, &p) in self.parts.iter().enumerate() {
            end += p;
            if a <= end {
                return r;
            }
        }
        panic!("node {a} outside composition of {end}");
    }

    pub fn arcs(&self) -> Vec<AlphaArc> {
        let n = self.n();
        let mut out = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                if self.region(a) != self.region(b) {
                    out.push(AlphaArc { a, b });
                }
            }
        }
        out
    }

    /// Whether two arcs can sit together in a noncrossing partition.
    pub fn compatible(&self, x: AlphaArc, y: AlphaArc) -> bool {
        if x.a == y.a || x.b == y.b {
            return false;
        }
        let (p, q) = if x.a < y.a { (x, y) } else { (y, x) };
        let same = |u: usize, v: usize| self.region(u) == self.region(v);
        if p.a < q.a && q.a < p.b && p.b < q.b && !(same(p.a, q.a) || same(q.a, p.b)) {
            return false;
        }
        // Nested arcs clash when their left ends share a region.
        if p.a < q.a && q.b < p.b && same(p.a, q.a) {
            return false;
        }
        true
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Composition> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidParameter(format!("bad composition {s:?}")))?;
        Composition::new(parts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlphaArc {
    pub a: usize,
    pub b: usize,
}

pub fn parabolic_tamari_graph(alpha: &Composition) -> DirectedGraph {
    let arcs = alpha.arcs();
    let r = |x: usize| alpha.region(x);
    let mut g = DirectedGraph::new(arcs.len());
    for (u, x) in arcs.iter().enumerate() {
        for (v, y) in arcs.iter().enumerate() {
            if u == v {
                continue;
            }
            let nested = r(x.a) == r(y.a) && x.a <= y.a && y.a < y.b && y.b <= x.b;
            let shifted = r(x.a) != r(y.a) && y.a < x.a && x.a < y.b && y.b <= x.b && r(x.a) != r(y.b);
            if nested || shifted {
                g.add_edge(u, v);
            }
        }
    }
    g.labels = Some(arcs.iter().map(|w| format!("w{},{}", w.a, w.b)).collect());
    g
}

/// Arc compatibility graph, which should be the complement of the Galois graph.
pub fn compatibility_graph(alpha: &Composition) -> UndirectedGraph {
    let arcs = alpha.arcs();
    let mut g = UndirectedGraph::new(arcs.len());
    for u in 0..arcs.len() {
        for v in u + 1..arcs.len() {
            if alpha.compatible(arcs[u], arcs[v]) {
                g.add_edge(u, v);
            }
        }
    }
    g.labels = Some(arcs.iter().map(|w| format!("w{},{}", w.a, w.b)).collect());
    g
}

pub fn parabolic_tamari(alpha: &Composition) -> Result<(DirectedGraph, Lattice)> {
    let g = parabolic_tamari_graph(alpha);
    let l = lattice_of(&g)?;
    Ok((g, l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::are_isomorphic;

    #[test]
    fn small_cases() {
        let (g, l) = hochschild(1).unwrap();
        assert_eq!((g.m(), g.edge_count()), (1, 0));
        assert!(are_isomorphic(&l, &Lattice::chain(1)));
        let (_, l) = bubble(1, 0).unwrap();
        assert!(are_isomorphic(&l, &Lattice::chain(1)));
        assert!(hochschild(0).is_err());
        assert!(bubble(0, 0).is_err());
        assert!(word_lattice(0, 2).is_err());
    }

    #[test]
    fn hoch3_size() {
        let (g, l) = hochschild(3).unwrap();
        assert_eq!(g.m(), 5);
        assert_eq!(l.n(), 12);
    }

    #[test]
    fn word_enumeration() {
        let ws = words(1, 2);
        assert_eq!(ws, vec![vec![0, 0], vec![1, 0], vec![0, 2], vec![1, 1], vec![1, 2]]);
        assert!(ws.iter().all(|w| w[0] != 2));
        let l = word_lattice(1, 2).unwrap();
        assert_eq!(l.n(), 5);
    }

    #[test]
    fn composition_parsing() {
        let c: Composition = "1,2,1".parse().unwrap();
        assert_eq!(c.n(), 4);
        assert_eq!((c.region(1), c.region(2), c.region(3), c.region(4)), (0, 1, 1, 2));
        assert_eq!(c.arcs().len(), 5);
        assert!("1,0".parse::<Composition>().is_err());
        assert!("x".parse::<Composition>().is_err());
        assert_eq!(c.to_string(), "(1,2,1)");
    }
}
