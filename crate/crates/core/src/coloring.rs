//! Exact maximum clique and chromatic number.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoringResult {
    pub chi: usize,
    pub coloring: Vec<usize>,
    pub clique: Vec<usize>,
}

/// Maximum clique by branch and bound with greedy-coloring bounds.
pub fn max_clique(g: &UndirectedGraph) -> Vec<usize> {
    let m = g.m();
    let mut best = Vec::new();
    let mut cur = Vec::new();
    expand_clique(g, &mut cur, BitSet::full(m), &mut best);
    best.sort_unstable();
    best
}

fn expand_clique(g: &UndirectedGraph, cur: &mut Vec<usize>, mut cand: BitSet, best: &mut Vec<usize>) {
    // Greedy color classes over the candidates give an upper bound per vertex.
    let mut order: Vec<(usize, usize)> = Vec::new();
    let mut uncolored = cand.clone();
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut avail = uncolored.clone();
        while let Some(v) = avail.first() {
            avail.remove(v);
            avail.difference_with(g.neighbors(v));
            uncolored.remove(v);
            order.push((v, color));
        }
    }
    for &(v, c) in order.iter().rev() {
        if cur.len() + c <= best.len() {
            return;
        }
        cur.push(v);
        let next = cand.and(g.neighbors(v));
        if next.is_empty() {
            if cur.len() > best.len() {
                *best = cur.clone();
            }
        } else {
            expand_clique(g, cur, next, best);
        }
        cur.pop();
        cand.remove(v);
    }
}

/// Clique found by repeatedly taking the highest-degree compatible vertex.
pub fn greedy_clique(g: &UndirectedGraph) -> Vec<usize> {
    let mut cand = BitSet::full(g.m());
    let mut clique = Vec::new();
    while let Some(v) = cand
        .iter()
        .max_by_key(|&v| (g.neighbors(v).intersection_count(&cand), std::cmp::Reverse(v)))
    {
        clique.push(v);
        cand.intersect_with(g.neighbors(v));
    }
    clique.sort_unstable();
    clique
}

/// Exact chromatic number by saturation-ordered branch and bound.
pub fn chromatic_number(g: &UndirectedGraph, budget: Option<Duration>) -> Result<ColoringResult> {
    let m = g.m();
    if m == 0 {
        return Ok(ColoringResult {
            chi: 0,
            coloring: Vec::new(),
            clique: Vec::new(),
        });
    }
    let clique = max_clique(g);
    let greedy = dsatur_greedy(g);
    let ub = greedy.iter().max().unwrap() + 1;
    if ub == clique.len() {
        return Ok(ColoringResult {
            chi: ub,
            coloring: greedy,
            clique,
        });
    }
    let mut s = Solver {
        g,
        color: vec![usize::MAX; m],
        nb_count: vec![vec![0u32; m + 1]; m],
        sat: vec![0; m],
        best: ub,
        best_coloring: greedy,
        lower: clique.len(),
        start: Instant::now(),
        budget,
        nodes: 0,
    };
    for (c, &v) in clique.iter().enumerate() {
        s.assign(v, c);
    }
    s.search(clique.len(), clique.len())?;
    Ok(ColoringResult {
        chi: s.best,
        coloring: s.best_coloring,
        clique,
    })
}

fn dsatur_greedy(g: &UndirectedGraph) -> Vec<usize> {
    let m = g.m();
    let mut color = vec![usize::MAX; m];
    let mut used: Vec<BitSet> = vec![BitSet::new(m + 1); m];
    for _ in 0..m {
        let v = (0..m)
            .filter(|&v| color[v] == usize::MAX)
            .max_by_key(|&v| (used[v].count(), g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        let c = (0..=m).find(|&c| !used[v].contains(c)).unwrap();
        color[v] = c;
        for u in g.neighbors(v).iter() {
            used[u].insert(c);
        }
    }
    color
}

struct Solver<'a> {
    g: &'a UndirectedGraph,
    color: Vec<usize>,
    nb_count: Vec<Vec<u32>>,
    sat: Vec<usize>,
    best: usize,
    best_coloring: Vec<usize>,
    lower: usize,
    start: Instant,
    budget: Option<Duration>,
    nodes: u64,
}

impl Solver<'_> {
    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        for u in self.g.neighbors(v).iter() {
            if self.nb_count[u][c] == 0 {
                self.sat[u] += 1;
            }
            self.nb_count[u][c] += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        self.color[v] = usize::MAX;
        for u in self.g.neighbors(v).iter() {
            self.nb_count[u][c] -= 1;
            if self.nb_count[u][c] == 0 {
                self.sat[u] -= 1;
            }
        }
    }

    fn search(&mut self, colored: usize, used: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes % 1024 == 0 {
            if let Some(b) = self.budget {
                if self.start.elapsed() > b {
                    return Err(Error::Timeout(b.as_millis() as u64));
                }
            }
        }
        let m = self.g.m();
        if colored == m {
            if used < self.best {
                self.best = used;
                self.best_coloring = self.color.clone();
            }
            return Ok(());
        }
        let v = (0..m)
            .filter(|&v| self.color[v] == usize::MAX)
            .max_by_key(|&v| (self.sat[v], self.g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        for c in 0..=used {
            if self.best <= self.lower {
                return Ok(());
            }
            let new_color = c == used;
            if new_color && used + 1 >= self.best {
                break;
            }
            if self.nb_count[v][c] > 0 {
                continue;
            }
            self.assign(v, c);
            let r = self.search(colored + 1, if new_color { used + 1 } else { used });
            self.unassign(v);
            r?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graphs() {
        let e = UndirectedGraph::new(4);
        assert_eq!(chromatic_number(&e, None).unwrap().chi, 1);
        for n in 1..7 {
            assert_eq!(chromatic_number(&UndirectedGraph::complete(n), None).unwrap().chi, n);
        }
        assert_eq!(chromatic_number(&UndirectedGraph::cycle(5), None).unwrap().chi, 3);
        assert_eq!(chromatic_number(&UndirectedGraph::cycle(6), None).unwrap().chi, 2);
    }

    #[test]
    fn grotzsch_needs_four() {
        let g = UndirectedGraph::cycle(5).mycielski();
        let r = chromatic_number(&g, None).unwrap();
        assert_eq!(r.chi, 4);
        assert_eq!(r.clique.len(), 2);
        assert!(g.is_proper_coloring(&r.coloring));
        assert!(g.is_clique(&r.clique));
    }

    #[test]
    fn brute_force_agrees() {
        // Every graph on 5 vertices, checked against exhaustive colorings.
        let pairs: Vec<(usize, usize)> =
            (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let g = UndirectedGraph::from_edges(
                5,
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e),
            );
            let brute = (1..=5usize)
                .find(|&k| {
                    (0..k.pow(5)).any(|code| {
                        let cols: Vec<usize> = (0..5u32).map(|i| code / k.pow(i) % k).collect();
                        g.is_proper_coloring(&cols)
                    })
                })
                .unwrap();
            let r = chromatic_number(&g, None).unwrap();
            assert_eq!(r.chi, brute);
            assert!(g.is_proper_coloring(&r.coloring));
            let w = (1..=5usize)
                .rev()
                .find(|&k| {
                    (0u32..32).any(|s| s.count_ones() as usize == k && {
                        let vs: Vec<usize> = (0..5).filter(|i| s >> i & 1 == 1).collect();
                        g.is_clique(&vs)
                    })
                })
                .unwrap();
            assert_eq!(r.clique.len(), w);
        }
    }
}
