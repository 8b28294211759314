//! Galois graphs of extremal lattices and their reconstruction from maximal orthogonal pairs.

use std::collections::HashMap;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, UndirectedGraph};
use crate::lattice::{ChainPhi, Lattice};
use crate::poset::Poset;

/// Galois graph with the numbering `j_1..j_n`, `m_1..m_n` read off a longest chain.
/// Vertex `i` stands for `j_{i+1}`.
#[derive(Clone, Debug)]
pub struct GaloisGraph {
    pub graph: DirectedGraph,
    pub jirr: Vec<usize>,
    pub mirr: Vec<usize>,
    pub chain: Vec<usize>,
}

pub fn galois_graph(l: &Lattice, phi: &ChainPhi) -> Result<GaloisGraph> {
    if !l.extremality().extremal {
        return Err(Error::NotExtremal);
    }
    if !phi.is_longest {
        return Err(Error::InvalidParameter("chain is not a longest chain".into()));
    }
    let x = &phi.elements;
    let n = phi.len();
    let mut jirr = Vec::with_capacity(n);
    let mut mirr = Vec::with_capacity(n);
    for i in 1..=n {
        let js: Vec<usize> = l
            .down(x[i])
            .minus(l.down(x[i - 1]))
            .iter()
            .filter(|&j| l.is_join_irreducible(j))
            .collect();
        let ms: Vec<usize> = l
            .up(x[i - 1])
            .minus(l.up(x[i]))
            .iter()
            .filter(|&m| l.is_meet_irreducible(m))
            .collect();
        if js.len() != 1 || ms.len() != 1 {
            return Err(Error::NumberingFailure(format!(
                "step {i} has {} join- and {} meet-irreducible candidates",
                js.len(),
                ms.len()
            )));
        }
        jirr.push(js[0]);
        mirr.push(ms[0]);
    }
    for i in 0..=n {
        if l.join_all(jirr[..i].iter().copied()) != x[i]
            || l.meet_all(mirr[i..].iter().copied()) != x[i]
        {
            return Err(Error::NumberingFailure(format!("chain identity fails at {i}")));
        }
    }
    let mut g = DirectedGraph::new(n);
    for i in 0..n {
        for k in 0..n {
            if i != k && !l.leq(jirr[i], mirr[k]) {
                if i < k {
                    return Err(Error::NumberingFailure(format!("edge {i}→{k} goes upward")));
                }
                g.add_edge(i, k);
            }
        }
    }
    assert!(g.is_acyclic());
    g.labels = Some(jirr.iter().map(|&j| l.label(j)).collect());
    Ok(GaloisGraph {
        graph: g,
        jirr,
        mirr,
        chain: phi.elements.clone(),
    })
}

/// Galois graph from the lexicographically smallest longest chain.
pub fn galois_graph_canonical(l: &Lattice) -> Result<GaloisGraph> {
    galois_graph(l, &ChainPhi::canonical(l))
}

/// Maximal orthogonal pairs `(X, Y)`, indexed like the reconstructed lattice.
#[derive(Clone, Debug)]
pub struct OrthoPairLattice {
    pub pairs: Vec<(BitSet, BitSet)>,
}

/// Vertices not targeted from `X` and outside `X`.
fn non_targets(g: &DirectedGraph, x: &BitSet) -> BitSet {
    let mut hit = x.clone();
    for v in x {
        hit.union_with(g.out(v));
    }
    hit.complement()
}

/// Vertices with no edge into `Y` and outside `Y`.
fn non_sources(g: &DirectedGraph, y: &BitSet) -> BitSet {
    BitSet::from_iter(
        g.m(),
        (0..g.m()).filter(|&v| !y.contains(v) && g.out(v).is_disjoint(y)),
    )
}

fn close(g: &DirectedGraph, x: &BitSet) -> BitSet {
    non_sources(g, &non_targets(g, x))
}

pub fn lattice_from_galois(g: &DirectedGraph) -> Result<(Lattice, OrthoPairLattice)> {
    if !g.is_acyclic() {
        return Err(Error::GraphNotOrderable);
    }
    let m = g.m();
    let bottom = close(g, &BitSet::new(m));
    let mut seen: HashMap<BitSet, ()> = HashMap::new();
    seen.insert(bottom.clone(), ());
    let mut queue = vec![bottom];
    let mut all = Vec::new();
    while let Some(x) = queue.pop() {
        for v in 0..m {
            if x.contains(v) {
                continue;
            }
            let mut y = x.clone();
            y.insert(v);
            let c = close(g, &y);
            if !seen.contains_key(&c) {
                seen.insert(c.clone(), ());
                queue.push(c);
            }
        }
        all.push(x);
    }
    all.sort_by(|a, b| a.count().cmp(&b.count()).then_with(|| a.cmp(b)));
    let n = all.len();
    let down: Vec<BitSet> = (0..n)
        .map(|i| {
            BitSet::from_iter(
                n,
                (0..=i).filter(|&k| all[k].count() < all[i].count() && all[k].is_subset(&all[i]) || k == i),
            )
        })
        .collect();
    let lattice = Lattice::from_poset_unchecked(Poset::from_down_sets(down));
    let pairs = all
        .into_iter()
        .map(|x| {
            let y = non_targets(g, &x);
            (x, y)
        })
        .collect();
    Ok((lattice, OrthoPairLattice { pairs }))
}

/// Whether `x ↦ {i : j_i ≤ x}` is an order isomorphism onto the reconstructed lattice.
pub fn roundtrip_check(l: &Lattice) -> Result<bool> {
    let gg = galois_graph_canonical(l)?;
    let (rec, pairs) = lattice_from_galois(&gg.graph)?;
    if rec.n() != l.n() {
        return Ok(false);
    }
    let index: HashMap<&BitSet, usize> = pairs.pairs.iter().enumerate().map(|(i, p)| (&p.0, i)).collect();
    let mut map = Vec::with_capacity(l.n());
    for x in 0..l.n() {
        let xs = BitSet::from_iter(gg.jirr.len(), (0..gg.jirr.len()).filter(|&i| l.leq(gg.jirr[i], x)));
        match index.get(&xs) {
            Some(&i) => map.push(i),
            None => return Ok(false),
        }
    }
    let mut edges: Vec<(usize, usize)> = l.edges().iter().map(|&(a, b)| (map[a], map[b])).collect();
    edges.sort_unstable();
    Ok(edges == rec.edges())
}

/// Downward label sets `D(x)` for every element.
pub fn downward_label_sets(l: &Lattice) -> Result<Vec<Vec<usize>>> {
    if !l.is_semidistributive() {
        return Err(Error::NotSemidistributive);
    }
    Ok((0..l.n()).map(|x| l.downward_labels(x).unwrap()).collect())
}

/// Canonical join graph on the join-irreducibles, vertices in increasing element order.
pub fn canonical_join_graph(l: &Lattice) -> Result<UndirectedGraph> {
    let sets = downward_label_sets(l)?;
    let jirr = l.join_irreducibles();
    let pos: HashMap<usize, usize> = jirr.iter().enumerate().map(|(i, &j)| (j, i)).collect();
    let mut g = UndirectedGraph::new(jirr.len());
    for d in &sets {
        for (a, &u) in d.iter().enumerate() {
            for &v in &d[a + 1..] {
                g.add_edge(pos[&u], pos[&v]);
            }
        }
    }
    g.labels = Some(jirr.iter().map(|&j| l.label(j)).collect());
    Ok(g)
}

/// Complement of the Galois graph, with vertices renumbered in increasing element order.
pub fn complement_in_jirr_order(gg: &GaloisGraph) -> UndirectedGraph {
    let mut sorted = gg.jirr.clone();
    sorted.sort_unstable();
    let perm: Vec<usize> = gg
        .jirr
        .iter()
        .map(|j| sorted.binary_search(j).unwrap())
        .collect();
    gg.graph.complement().permuted(&perm)
}

/// Number of independent sets (including the empty set) of the underlying graph.
pub fn count_independent_sets(g: &UndirectedGraph) -> u128 {
    let mut memo = HashMap::new();
    count_rec(g, BitSet::full(g.m()), &mut memo)
}

fn component(g: &UndirectedGraph, s: &BitSet, start: usize) -> BitSet {
    let mut comp = BitSet::new(g.m());
    comp.insert(start);
    let mut frontier = vec![start];
    while let Some(v) = frontier.pop() {
        for u in g.neighbors(v).and(s).iter() {
            if !comp.contains(u) {
                comp.insert(u);
                frontier.push(u);
            }
        }
    }
    comp
}

fn count_rec(g: &UndirectedGraph, s: BitSet, memo: &mut HashMap<BitSet, u128>) -> u128 {
    let Some(first) = s.first() else { return 1 };
    if let Some(&c) = memo.get(&s) {
        return c;
    }
    let comp = component(g, &s, first);
    let result = if comp != s {
        let rest = s.minus(&comp);
        count_rec(g, comp, memo) * count_rec(g, rest, memo)
    } else {
        let v = s
            .iter()
            .max_by_key(|&v| (g.neighbors(v).intersection_count(&s), std::cmp::Reverse(v)))
            .unwrap();
        if g.neighbors(v).is_disjoint(&s) {
            1u128 << s.count()
        } else {
            let mut without = s.clone();
            without.remove(v);
            let mut closed = without.clone();
            closed.difference_with(g.neighbors(v));
            count_rec(g, without, memo) + count_rec(g, closed, memo)
        }
    };
    memo.insert(s, result);
    result
}

/// Checks the Galois-graph identities on a semidistributive extremal lattice.
pub fn galois_consistency(l: &Lattice) -> Result<()> {
    let fail = |what: &str| Err(Error::TheoremViolation(what.to_string()));
    let gg = galois_graph_canonical(l)?;
    let (rec, _) = lattice_from_galois(&gg.graph)?;
    if !crate::lattice::are_isomorphic(l, &rec) || !roundtrip_check(l)? {
        return fail("lattice differs from its Galois reconstruction");
    }
    if count_independent_sets(&gg.graph.underlying()) != l.n() as u128 {
        return fail("independent set count differs from lattice size");
    }
    if canonical_join_graph(l)? != complement_in_jirr_order(&gg) {
        return fail("canonical join graph is not the Galois complement");
    }
    let sd = l.semidistributivity();
    let kappa = sd.kappa.ok_or(Error::NotSemidistributive)?;
    for (j, m) in gg.jirr.iter().zip(&gg.mirr) {
        if kappa[j] != *m {
            return fail("kappa disagrees with the chain numbering");
        }
    }
    Ok(())
}
