//! Order dimension: chromatic route for semidistributive extremal lattices,
//! the critical-pair cover oracle, and bounds.

use std::time::Duration;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::coloring::{chromatic_number, max_clique, ColoringResult};
use crate::error::{Error, Result};
use crate::galois::{complement_in_jirr_order, galois_graph_canonical};
use crate::graph::{DirectedGraph, UndirectedGraph};
use crate::lattice::Lattice;
use crate::poset::Poset;

pub const DEFAULT_ORACLE_CAP: usize = 24;
pub const DEFAULT_BUDGET: Duration = Duration::from_secs(60);

#[derive(Clone, Debug)]
pub struct CriticalPairData {
    pub pairs: Vec<(usize, usize)>,
    /// Edge `p→q` iff the second entry of `p` is above the first entry of `q`.
    pub dgraph: DirectedGraph,
    /// Pairs joined by a 2-cycle of `dgraph`; filled for semidistributive extremal lattices.
    pub klgraph: Option<UndirectedGraph>,
}

/// Incomparable `(a, b)` with everything below `a` below `b` and everything above `b` above `a`.
pub fn critical_pairs(p: &Poset) -> CriticalPairData {
    let n = p.n();
    let mut pairs = Vec::new();
    for a in 0..n {
        let mut below_a = p.down(a).clone();
        below_a.remove(a);
        for b in 0..n {
            if p.comparable(a, b) {
                continue;
            }
            let mut above_b = p.up(b).clone();
            above_b.remove(b);
            if below_a.is_subset(p.down(b)) && above_b.is_subset(p.up(a)) {
                pairs.push((a, b));
            }
        }
    }
    let k = pairs.len();
    let mut dgraph = DirectedGraph::new(k);
    for (i, &(_, b)) in pairs.iter().enumerate() {
        for (j, &(c, _)) in pairs.iter().enumerate() {
            if i != j && p.leq(c, b) {
                dgraph.add_edge(i, j);
            }
        }
    }
    dgraph.labels = Some(
        pairs
            .iter()
            .map(|&(a, b)| format!("({},{})", p.label(a), p.label(b)))
            .collect(),
    );
    CriticalPairData {
        pairs,
        dgraph,
        klgraph: None,
    }
}

fn two_cycle_graph(d: &DirectedGraph) -> UndirectedGraph {
    let mut g = UndirectedGraph::new(d.m());
    for (u, v) in d.edges() {
        if u < v && d.has_edge(v, u) {
            g.add_edge(u, v);
        }
    }
    g.labels = d.labels.clone();
    g
}

/// Critical pairs of a lattice, checked against `(j, κ(j))` when semidistributive and
/// against the Galois complement when also extremal.
pub fn critical_pairs_lattice(l: &Lattice) -> Result<CriticalPairData> {
    let mut data = critical_pairs(l);
    let sd = l.semidistributivity();
    let Some(kappa) = sd.kappa else {
        return Ok(data);
    };
    let mut expected: Vec<(usize, usize)> = kappa
        .iter()
        .filter(|(&j, &k)| l.lower_covers(j)[0] != k)
        .map(|(&j, &k)| (j, k))
        .collect();
    expected.sort_unstable();
    let mut got = data.pairs.clone();
    got.sort_unstable();
    if got != expected {
        return Err(Error::TheoremViolation(
            "critical pairs differ from (j, κ(j))".into(),
        ));
    }
    let kl = two_cycle_graph(&data.dgraph);
    if l.extremality().extremal && l.n() > 1 {
        let gg = galois_graph_canonical(l)?;
        let comp = gg.graph.complement();
        let pos: Vec<Option<usize>> = gg
            .jirr
            .iter()
            .map(|j| data.pairs.iter().position(|p| p.0 == *j))
            .collect();
        for u in 0..comp.m() {
            for v in u + 1..comp.m() {
                let want = match (pos[u], pos[v]) {
                    (Some(a), Some(b)) => kl.has_edge(a, b),
                    _ => false,
                };
                if comp.has_edge(u, v) != want {
                    return Err(Error::TheoremViolation(
                        "Galois complement is not K(L) plus isolated vertices".into(),
                    ));
                }
            }
        }
    }
    data.klgraph = Some(kl);
    Ok(data)
}

/// `dim(L)` as the chromatic number of the Galois complement.
pub fn dim_sd_extremal(l: &Lattice, budget: Option<Duration>) -> Result<ColoringResult> {
    if l.n() == 1 {
        return Err(Error::TrivialLattice);
    }
    if !l.is_semidistributive() {
        return Err(Error::NotSemidistributive);
    }
    if !l.extremality().extremal {
        return Err(Error::NotExtremal);
    }
    let gg = galois_graph_canonical(l)?;
    chromatic_number(&complement_in_jirr_order(&gg), budget)
}

/// Minimum number of `D(P)`-acyclic sets covering the critical pairs, floored at 1.
pub fn dimension_oracle(p: &Poset, cap: usize) -> Result<usize> {
    let data = critical_pairs(p);
    let k = data.pairs.len();
    if k > cap {
        return Err(Error::CapExceeded {
            what: "critical pairs",
            cap,
        });
    }
    if k == 0 {
        return Ok(1);
    }
    let lower = max_clique(&two_cycle_graph(&data.dgraph)).len().max(1);
    let mut search = CoverSearch {
        d: &data.dgraph,
        parts: Vec::new(),
        best: k,
        lower,
    };
    search.greedy();
    search.run(0);
    Ok(search.best)
}

struct CoverSearch<'a> {
    d: &'a DirectedGraph,
    parts: Vec<BitSet>,
    best: usize,
    lower: usize,
}

impl CoverSearch<'_> {
    /// Whether `s ∪ {v}` stays acyclic, given `s` acyclic.
    fn fits(&self, s: &BitSet, v: usize) -> bool {
        let mut seen = BitSet::new(self.d.m());
        let mut stack: Vec<usize> = self.d.out(v).and(s).iter().collect();
        while let Some(u) = stack.pop() {
            if self.d.has_edge(u, v) {
                return false;
            }
            if seen.contains(u) {
                continue;
            }
            seen.insert(u);
            stack.extend(self.d.out(u).and(s).iter().filter(|&w| !seen.contains(w)));
        }
        true
    }

    fn greedy(&mut self) {
        let k = self.d.m();
        let mut parts: Vec<BitSet> = Vec::new();
        for v in 0..k {
            match parts.iter().position(|s| self.fits(s, v)) {
                Some(i) => parts[i].insert(v),
                None => parts.push(BitSet::from_iter(k, [v])),
            }
        }
        self.best = parts.len();
    }

    fn run(&mut self, v: usize) {
        if self.best <= self.lower {
            return;
        }
        if v == self.d.m() {
            self.best = self.best.min(self.parts.len());
            return;
        }
        for i in 0..self.parts.len() {
            if self.fits(&self.parts[i], v) {
                self.parts[i].insert(v);
                self.run(v + 1);
                self.parts[i].remove(v);
            }
        }
        if self.parts.len() + 1 < self.best {
            self.parts.push(BitSet::from_iter(self.d.m(), [v]));
            self.run(v + 1);
            self.parts.pop();
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimBounds {
    /// Width of the dissectors.
    pub lower: usize,
    /// Width of the join-irreducibles.
    pub upper: usize,
    /// Largest number of upper covers of a single element.
    pub cover_lb: usize,
    /// `cover_lb` is a valid lower bound only for semidistributive lattices.
    pub cover_lb_valid: bool,
}

pub fn dim_bounds(l: &Lattice) -> DimBounds {
    DimBounds {
        lower: l.dissector_width().max(1),
        upper: l.jirr_width().max(1),
        cover_lb: (0..l.n()).map(|x| l.upper_covers(x).len()).max().unwrap_or(0),
        cover_lb_valid: l.is_semidistributive(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_lattice;
    use crate::lattice::fixtures::{b2, n5};

    #[test]
    fn chain_dimension() {
        let l = Lattice::chain(3);
        assert!(critical_pairs(&l).pairs.is_empty());
        assert_eq!(dimension_oracle(&l, DEFAULT_ORACLE_CAP).unwrap(), 1);
        assert_eq!(dim_sd_extremal(&l, None).unwrap().chi, 1);
        let b = dim_bounds(&l);
        assert_eq!((b.lower, b.upper), (1, 1));
    }

    #[test]
    fn b2_dimension() {
        let l = b2();
        let d = critical_pairs_lattice(&l).unwrap();
        assert_eq!(d.pairs, vec![(1, 2), (2, 1)]);
        assert_eq!(d.dgraph.edge_count(), 2);
        assert_eq!(dimension_oracle(&l, DEFAULT_ORACLE_CAP).unwrap(), 2);
        assert_eq!(dim_sd_extremal(&l, None).unwrap().chi, 2);
    }

    #[test]
    fn n5_dimension() {
        let l = n5();
        assert_eq!(dim_sd_extremal(&l, None).unwrap().chi, 2);
        assert_eq!(dimension_oracle(&l, DEFAULT_ORACLE_CAP).unwrap(), 2);
    }

    #[test]
    fn trivial_and_non_sd() {
        let one = build_lattice(1, &[], None).unwrap();
        assert!(matches!(dim_sd_extremal(&one, None), Err(Error::TrivialLattice)));
        let m3 = crate::lattice::fixtures::m3();
        assert!(matches!(dim_sd_extremal(&m3, None), Err(Error::NotSemidistributive)));
        assert_eq!(dimension_oracle(&m3, DEFAULT_ORACLE_CAP).unwrap(), 2);
    }

    #[test]
    fn oracle_cap() {
        let l = Lattice::boolean(5);
        assert!(matches!(
            dimension_oracle(&l, 3),
            Err(Error::CapExceeded { .. })
        ));
        assert_eq!(dimension_oracle(&l, 30).unwrap(), 5);
    }
}
