//! Maximal chains, the facet adjacency graph and shellability verdicts.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::doubling::DoublingCertificate;
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::labelling::left_modular;
use crate::lattice::Lattice;

pub const DEFAULT_CHAIN_CAP: usize = 100_000;
pub const DEFAULT_FACET_CAP: usize = 9;
const ENUMERATION_LIMIT: usize = 20;

/// Maximal chains from bottom to top, in lexicographic order.
pub fn maximal_chains(l: &Lattice, cap: usize) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut cur = vec![l.bottom()];
    chains_from(l, &mut cur, &mut out, cap)?;
    Ok(out)
}

fn chains_from(l: &Lattice, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, cap: usize) -> Result<()> {
    let x = *cur.last().unwrap();
    let mut covers = l.upper_covers(x).to_vec();
    if covers.is_empty() {
        if out.len() == cap {
            return Err(Error::CapExceeded {
                what: "maximal chains",
                cap,
            });
        }
        out.push(cur.clone());
        return Ok(());
    }
    covers.sort_unstable();
    for y in covers {
        cur.push(y);
        chains_from(l, cur, out, cap)?;
        cur.pop();
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct FaGraph {
    pub chains: Vec<Vec<usize>>,
    pub sets: Vec<BitSet>,
    pub graph: DirectedGraph,
}

impl FaGraph {
    pub fn index_of(&self, chain: &[usize]) -> Option<usize> {
        self.chains.iter().position(|c| c == chain)
    }
}

/// `F→G` iff the chains share all but one element of `G`.
pub fn facet_adjacency(l: &Lattice, cap: usize) -> Result<FaGraph> {
    let chains = maximal_chains(l, cap)?;
    let sets: Vec<BitSet> = chains
        .iter()
        .map(|c| BitSet::from_iter(l.n(), c.iter().copied()))
        .collect();
    let edges: Vec<(usize, usize)> = (0..sets.len())
        .into_par_iter()
        .flat_map_iter(|f| {
            let sets = &sets;
            (0..sets.len()).filter_map(move |g| {
                (f != g && sets[f].intersection_count(&sets[g]) + 1 == sets[g].count()).then_some((f, g))
            })
        })
        .collect();
    let labels = chains
        .iter()
        .map(|c| c[1..c.len() - 1].iter().map(|&x| l.label(x)).collect::<Vec<_>>().join(""))
        .collect();
    let graph = DirectedGraph::from_edges(chains.len(), edges).with_labels(labels);
    Ok(FaGraph { chains, sets, graph })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SourceSetReport {
    pub found: Option<(Vec<usize>, Vec<usize>)>,
    pub all_source_sets: Option<Vec<Vec<usize>>>,
}

/// Each vertex together with everything that reaches it.
pub fn ancestor_closures(g: &DirectedGraph) -> Vec<BitSet> {
    (0..g.m())
        .into_par_iter()
        .map(|v| {
            let mut seen = BitSet::from_iter(g.m(), [v]);
            let mut stack = vec![v];
            while let Some(u) = stack.pop() {
                for w in g.inn(u).iter() {
                    if !seen.contains(w) {
                        seen.insert(w);
                        stack.push(w);
                    }
                }
            }
            seen
        })
        .collect()
}

pub fn is_source_set(g: &DirectedGraph, x: &BitSet) -> bool {
    !x.is_empty() && x.count() < g.m() && x.iter().all(|v| g.inn(v).is_subset(x))
}

/// Every nonempty proper in-neighbour-closed set, sorted by size then members.
pub fn all_source_sets(g: &DirectedGraph, cap: usize) -> Result<Vec<Vec<usize>>> {
    let closures = ancestor_closures(g);
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut frontier: Vec<BitSet> = Vec::new();
    for c in closures.iter() {
        if seen.insert(c.clone()) {
            frontier.push(c.clone());
        }
    }
    while let Some(s) = frontier.pop() {
        for v in 0..g.m() {
            if s.contains(v) {
                continue;
            }
            let t = s.or(&closures[v]);
            if seen.insert(t.clone()) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded {
                        what: "source sets",
                        cap,
                    });
                }
                frontier.push(t);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = seen
        .into_iter()
        .filter(|s| s.count() < g.m())
        .map(|s| s.to_vec())
        .collect();
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(out)
}

/// Two disjoint source sets exist iff two ancestor closures are disjoint.
pub fn disjoint_source_sets(g: &DirectedGraph) -> SourceSetReport {
    let closures = ancestor_closures(g);
    let mut best: Option<(usize, usize, usize)> = None;
    for u in 0..g.m() {
        for v in u + 1..g.m() {
            if closures[u].is_disjoint(&closures[v]) {
                let size = closures[u].count() + closures[v].count();
                if best.map_or(true, |b| size < b.0) {
                    best = Some((size, u, v));
                }
            }
        }
    }
    let found = best.map(|(_, u, v)| {
        let (a, b) = (closures[u].to_vec(), closures[v].to_vec());
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    });
    let all_source_sets = if g.m() <= ENUMERATION_LIMIT {
        all_source_sets(g, 1 << ENUMERATION_LIMIT).ok()
    } else {
        None
    };
    SourceSetReport {
        found,
        all_source_sets,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shellability {
    Shellable,
    NotShellable,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShellVerdict {
    pub verdict: Shellability,
    pub reason: String,
}

fn verdict(v: Shellability, reason: &str) -> ShellVerdict {
    ShellVerdict {
        verdict: v,
        reason: reason.into(),
    }
}

pub fn shellable_verdict(l: &Lattice, cert: Option<&DoublingCertificate>, cap: usize) -> ShellVerdict {
    if cert.is_some_and(|c| c.congruence_uniform) {
        return if l.extremality().extremal {
            verdict(Shellability::Shellable, "extremal congruence uniform")
        } else {
            verdict(Shellability::NotShellable, "congruence uniform but not extremal")
        };
    }
    if let Ok(fa) = facet_adjacency(l, cap) {
        if let Some((a, b)) = disjoint_source_sets(&fa.graph).found {
            let name = |s: &[usize]| s.iter().map(|&i| fa.graph.label(i)).collect::<Vec<_>>().join(",");
            return ShellVerdict {
                verdict: Shellability::NotShellable,
                reason: format!("disjoint source sets {{{}}} and {{{}}}", name(&a), name(&b)),
            };
        }
    }
    if left_modular(l).lm_chain.is_some() {
        return verdict(Shellability::Shellable, "maximal left modular chain");
    }
    verdict(Shellability::Unknown, "no criterion applies")
}

/// Shelling order of the maximal chains, found by search over subsets of facets.
pub fn brute_force_shelling(l: &Lattice, cap_facets: usize) -> Result<Option<Vec<usize>>> {
    let too_many = Error::CapExceeded {
        what: "facets",
        cap: cap_facets,
    };
    let chains = maximal_chains(l, cap_facets).map_err(|_| too_many)?;
    let k = chains.len();
    let sets: Vec<BitSet> = chains
        .iter()
        .map(|c| BitSet::from_iter(l.n(), c.iter().copied()))
        .collect();
    let fits = |prefix: u32, j: usize| -> bool {
        let target = sets[j].count() - 1;
        (0..k).filter(|i| prefix >> i & 1 == 1).all(|i| {
            let fij = sets[i].and(&sets[j]);
            (0..k).any(|m| {
                prefix >> m & 1 == 1 && {
                    let fmj = sets[m].and(&sets[j]);
                    fmj.count() == target && fij.is_subset(&fmj)
                }
            })
        })
    };
    let mut dead: HashSet<u32> = HashSet::new();
    let mut order = Vec::new();
    if search(k, 0, &mut order, &mut dead, &fits) {
        Ok(Some(order))
    } else {
        Ok(None)
    }
}

fn search(k: usize, prefix: u32, order: &mut Vec<usize>, dead: &mut HashSet<u32>, fits: &impl Fn(u32, usize) -> bool) -> bool {
    if order.len() == k {
        return true;
    }
    if dead.contains(&prefix) {
        return false;
    }
    for j in 0..k {
        if prefix >> j & 1 == 0 && fits(prefix, j) {
            order.push(j);
            if search(k, prefix | 1 << j, order, dead, fits) {
                return true;
            }
            order.pop();
        }
    }
    dead.insert(prefix);
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::fixtures::{b2, n5};

    #[test]
    fn chain_counts() {
        assert_eq!(maximal_chains(&Lattice::chain(4), 10).unwrap().len(), 1);
        assert_eq!(maximal_chains(&b2(), 10).unwrap(), vec![vec![0, 1, 3], vec![0, 2, 3]]);
        assert_eq!(maximal_chains(&Lattice::boolean(4), 100).unwrap().len(), 24);
        assert!(matches!(
            maximal_chains(&Lattice::boolean(4), 23),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn single_chain_graph() {
        let fa = facet_adjacency(&Lattice::chain(2), 10).unwrap();
        assert_eq!(fa.graph.m(), 1);
        assert_eq!(fa.graph.edge_count(), 0);
        let r = disjoint_source_sets(&fa.graph);
        assert_eq!(r.found, None);
        assert_eq!(r.all_source_sets, Some(vec![]));
    }

    #[test]
    fn n5_shellings() {
        let l = n5();
        let v = shellable_verdict(&l, None, DEFAULT_CHAIN_CAP);
        assert_eq!(v.verdict, Shellability::Shellable);
        let order = brute_force_shelling(&l, DEFAULT_FACET_CAP).unwrap().unwrap();
        let chains = maximal_chains(&l, 10).unwrap();
        assert_eq!(chains[order[0]].len(), 4);
        let b = brute_force_shelling(&b2(), DEFAULT_FACET_CAP).unwrap();
        assert!(b.is_some());
    }

    #[test]
    fn source_set_enumeration() {
        // 0↔1 fed by 2: only {2} is closed under in-neighbours.
        let g = DirectedGraph::from_edges(3, [(0, 1), (1, 0), (2, 1)]);
        let all = all_source_sets(&g, 100).unwrap();
        assert_eq!(all, vec![vec![2]]);
        for s in &all {
            assert!(is_source_set(&g, &BitSet::from_iter(3, s.iter().copied())));
        }
    }
}
