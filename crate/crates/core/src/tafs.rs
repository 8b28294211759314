//! Two-acyclic factorization systems on directed multigraphs.
//!
//! Every vertex carries an implicit loop. Loops are never stored; the quantifiers
//! below account for them.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::chromatic_number;
use crate::error::{Error, Result};
use crate::galois::galois_graph_canonical;
use crate::graph::{DirectedGraph, UndirectedGraph};

pub const DEFAULT_ORIENTATION_CAP: usize = 22;
const MAX_PARALLEL: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decoration {
    Plain,
    Mono,
    Epi,
    Both,
}

impl Decoration {
    pub fn new(mono: bool, epi: bool) -> Decoration {
        match (mono, epi) {
            (true, true) => Decoration::Both,
            (true, false) => Decoration::Mono,
            (false, true) => Decoration::Epi,
            (false, false) => Decoration::Plain,
        }
    }

    pub fn is_mono(self) -> bool {
        matches!(self, Decoration::Mono | Decoration::Both)
    }

    pub fn is_epi(self) -> bool {
        matches!(self, Decoration::Epi | Decoration::Both)
    }

    pub fn union(self, other: Decoration) -> Decoration {
        Decoration::new(self.is_mono() || other.is_mono(), self.is_epi() || other.is_epi())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecoratedMultigraph {
    pub m: usize,
    pub arrows: Vec<(usize, usize, Decoration)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl DecoratedMultigraph {
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    /// One arrow per ordered pair, dropping decorations.
    pub fn simple_graph(&self) -> DirectedGraph {
        let mut g = DirectedGraph::new(self.m);
        for &(s, t, _) in &self.arrows {
            if s != t {
                g.add_edge(s, t);
            }
        }
        g.labels = self.labels.clone();
        g
    }

    /// Union of the decorations drawn on each ordered pair.
    pub fn decorations_by_pair(&self) -> BTreeMap<(usize, usize), Decoration> {
        let mut out: BTreeMap<(usize, usize), Decoration> = BTreeMap::new();
        for &(s, t, d) in &self.arrows {
            out.entry((s, t)).and_modify(|e| *e = e.union(d)).or_insert(d);
        }
        out
    }
}

/// Decorates each arrow: mono when every arrow into the source also reaches the
/// target, epi when every arrow out of the target also leaves the source.
pub fn classify_arrows(m: usize, arrows: &[(usize, usize)]) -> DecoratedMultigraph {
    let g = DirectedGraph::from_edges(m, arrows.iter().copied().filter(|&(s, t)| s != t));
    let decorated = arrows
        .iter()
        .filter(|&&(s, t)| s != t)
        .map(|&(x, y)| {
            let mut target = g.inn(y).clone();
            target.insert(y);
            let mono = g.inn(x).is_subset(&target);
            let mut source = g.out(x).clone();
            source.insert(x);
            let epi = g.out(y).is_subset(&source);
            (x, y, Decoration::new(mono, epi))
        })
        .collect();
    DecoratedMultigraph {
        m,
        arrows: decorated,
        labels: None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TafsCheck {
    pub ok: bool,
    pub violation: Option<String>,
}

pub fn is_tafs(g: &DecoratedMultigraph) -> TafsCheck {
    let pairs = g.decorations_by_pair();
    let has = |x: usize, y: usize, f: fn(Decoration) -> bool| x == y || pairs.get(&(x, y)).is_some_and(|&d| f(d));
    let fail = |msg: String| TafsCheck {
        ok: false,
        violation: Some(msg),
    };
    for &(x, y) in pairs.keys().filter(|p| p.0 != p.1) {
        let (lx, ly) = (g.label(x), g.label(y));
        if has(x, y, Decoration::is_epi) && has(y, x, Decoration::is_epi) {
            return fail(format!("order condition: {lx} ↠ {ly} ↠ {lx}"));
        }
        if has(x, y, Decoration::is_mono) && has(y, x, Decoration::is_mono) {
            return fail(format!("order condition: {lx} ↪ {ly} ↪ {lx}"));
        }
        if has(x, y, Decoration::is_epi) && has(y, x, Decoration::is_mono) {
            return fail(format!("brick condition: {lx} ↠ {ly} ↪ {lx}"));
        }
    }
    for &(s, t, d) in &g.arrows {
        if d != Decoration::Plain {
            continue;
        }
        let witness = (0..g.m).any(|y| has(s, y, Decoration::is_epi) && has(y, t, Decoration::is_mono));
        if !witness {
            return fail(format!(
                "multiplication: no factorization of {} → {}",
                g.label(s),
                g.label(t)
            ));
        }
    }
    TafsCheck {
        ok: true,
        violation: None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TafsMode {
    TrianglefreeChi,
    OrientationSearch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmitsReport {
    pub admits: bool,
    /// An orientation forming a factorization system, when the search found one.
    pub witness: Option<Vec<(usize, usize)>>,
    /// Parallel edges beyond two per pair were dropped before the search.
    pub multiplicity_capped: bool,
}

/// Whether some orientation of the undirected multigraph forms a factorization system.
pub fn admits_tafs(m: usize, edges: &[(usize, usize)], mode: TafsMode, cap: usize) -> Result<AdmitsReport> {
    let simple = UndirectedGraph::from_edges(m, edges.iter().copied().filter(|&(u, v)| u != v));
    match mode {
        TafsMode::TrianglefreeChi => {
            if !simple.is_triangle_free() {
                return Err(Error::NotTriangleFree);
            }
            let chi = chromatic_number(&simple, None)?.chi;
            Ok(AdmitsReport {
                admits: chi <= 3,
                witness: None,
                multiplicity_capped: false,
            })
        }
        TafsMode::OrientationSearch => {
            let mut count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            let mut kept = Vec::new();
            let mut capped = false;
            for &(u, v) in edges {
                if u == v {
                    continue;
                }
                let c = count.entry((u.min(v), u.max(v))).or_default();
                *c += 1;
                if *c > MAX_PARALLEL {
                    capped = true;
                } else {
                    kept.push((u, v));
                }
            }
            if kept.len() > cap {
                return Err(Error::CapExceeded {
                    what: "edges for orientation search",
                    cap,
                });
            }
            let witness = orientation_search(m, &kept);
            Ok(AdmitsReport {
                admits: witness.is_some(),
                witness,
                multiplicity_capped: capped,
            })
        }
    }
}

fn orient(edges: &[(usize, usize)], mask: u64) -> Vec<(usize, usize)> {
    edges
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| if mask >> i & 1 == 1 { (v, u) } else { (u, v) })
        .collect()
}

fn orientation_search(m: usize, edges: &[(usize, usize)]) -> Option<Vec<(usize, usize)>> {
    let k = edges.len();
    let total = 1u64 << k;
    let found = if m <= 64 {
        let chunks = 1u64 << k.min(8);
        let per = total / chunks;
        (0..chunks).into_par_iter().find_map_first(|c| {
            (c * per..(c + 1) * per).find(|&mask| mask_tafs(m, edges, mask))
        })
    } else {
        (0..total).into_par_iter().find_first(|&mask| {
            let arrows = orient(edges, mask);
            is_tafs(&classify_arrows(m, &arrows)).ok
        })
    };
    found.map(|mask| orient(edges, mask))
}

/// Bitmask version of classification plus the three conditions, for at most 64 vertices.
fn mask_tafs(m: usize, edges: &[(usize, usize)], mask: u64) -> bool {
    let mut out = [0u64; 64];
    let mut inn = [0u64; 64];
    for (i, &(u, v)) in edges.iter().enumerate() {
        let (s, t) = if mask >> i & 1 == 1 { (v, u) } else { (u, v) };
        out[s] |= 1 << t;
        inn[t] |= 1 << s;
    }
    let mut mono = [0u64; 64];
    let mut epi = [0u64; 64];
    let mut plain = Vec::new();
    for x in 0..m {
        let mut rest = out[x];
        while rest != 0 {
            let y = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let is_mono = inn[x] & !(inn[y] | 1 << y) == 0;
            let is_epi = out[y] & !(out[x] | 1 << x) == 0;
            if is_mono {
                mono[x] |= 1 << y;
            }
            if is_epi {
                epi[x] |= 1 << y;
            }
            if !is_mono && !is_epi {
                plain.push((x, y));
            }
        }
    }
    for x in 0..m {
        let mut rest = epi[x] | mono[x];
        while rest != 0 {
            let y = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let back_epi = epi[y] >> x & 1 == 1;
            let back_mono = mono[y] >> x & 1 == 1;
            let fwd_epi = epi[x] >> y & 1 == 1;
            let fwd_mono = mono[x] >> y & 1 == 1;
            if fwd_epi && (back_epi || back_mono) || fwd_mono && back_mono {
                return false;
            }
        }
    }
    plain.iter().all(|&(x, z)| {
        // y may be x (loop then mono) or z (epi then loop); neither holds for a plain arrow.
        let mut mids = epi[x];
        while mids != 0 {
            let y = mids.trailing_zeros() as usize;
            mids &= mids - 1;
            if mono[y] >> z & 1 == 1 {
                return true;
            }
        }
        false
    })
}

const COUNTEREXAMPLE: &str = include_str!("../data/counterexample.json");

pub fn counterexample_graph() -> Result<DecoratedMultigraph> {
    Ok(serde_json::from_str(COUNTEREXAMPLE)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    pub elements: usize,
    pub sd: bool,
    pub extremal: bool,
    pub plain_arrows: Vec<(String, String)>,
    pub triangle_free: bool,
    pub chi: usize,
    pub grotzsch: bool,
    pub admits_tafs: bool,
    pub exhaustive: bool,
}

fn stage(stage: &'static str, detail: impl Into<String>) -> Error {
    Error::PipelineAssertionFailed {
        stage,
        detail: detail.into(),
    }
}

/// Checks the induced-subgraph counterexample end to end. With `exhaustive`, every
/// orientation of the induced graph is also tried.
pub fn counterexample_pipeline(exhaustive: bool) -> Result<CounterexampleReport> {
    let drawn = counterexample_graph()?;
    let g = drawn.simple_graph();
    let removed = drawn
        .labels
        .as_ref()
        .and_then(|l| l.iter().position(|x| x == "t"))
        .ok_or_else(|| stage("load", "vertex t missing"))?;

    let edges = g.edges();
    let mut computed = classify_arrows(g.m(), &edges);
    computed.labels = drawn.labels.clone();
    let drawn_decos = drawn.decorations_by_pair();
    for &(s, t, d) in &computed.arrows {
        if drawn_decos[&(s, t)] != d {
            return Err(stage(
                "classify",
                format!(
                    "{}→{} drawn {:?}, computed {:?}",
                    drawn.label(s),
                    drawn.label(t),
                    drawn_decos[&(s, t)],
                    d
                ),
            ));
        }
    }
    let plain_arrows: Vec<(String, String)> = computed
        .arrows
        .iter()
        .filter(|a| a.2 == Decoration::Plain)
        .map(|&(s, t, _)| (drawn.label(s), drawn.label(t)))
        .collect();
    let check = is_tafs(&computed);
    if !check.ok {
        return Err(stage("tafs", check.violation.unwrap_or_default()));
    }

    let l = crate::families::lattice_of(&g).map_err(|e| stage("lattice", e.to_string()))?;
    let sd = l.is_semidistributive();
    let extremal = l.extremality().extremal;
    if !sd || !extremal {
        return Err(stage("lattice", format!("{} elements, sd {sd}, extremal {extremal}", l.n())));
    }
    let gg = galois_graph_canonical(&l)?;
    if !gg.graph.isomorphic_to(&g) {
        return Err(stage("lattice", "Galois graph of L(G) differs from G"));
    }

    let keep: Vec<usize> = (0..g.m()).filter(|&v| v != removed).collect();
    let h = g.complement();
    if g.induced(&keep).complement() != h.induced(&keep) {
        return Err(stage("complement", "complement does not commute with induction"));
    }

    let under = g.induced(&keep).underlying();
    let triangle_free = under.is_triangle_free();
    let chi = chromatic_number(&under, None)?.chi;
    let grotzsch = under.isomorphic_to(&UndirectedGraph::cycle(5).mycielski());
    if !triangle_free || chi != 4 || !grotzsch {
        return Err(stage(
            "induced",
            format!("triangle-free {triangle_free}, chi {chi}, Grötzsch {grotzsch}"),
        ));
    }

    let under_edges = under.edges();
    let admits = admits_tafs(under.m(), &under_edges, TafsMode::TrianglefreeChi, DEFAULT_ORIENTATION_CAP)?.admits;
    if exhaustive {
        let searched = admits_tafs(under.m(), &under_edges, TafsMode::OrientationSearch, DEFAULT_ORIENTATION_CAP)?;
        if searched.admits != admits {
            return Err(stage("admits", "orientation search disagrees with the coloring criterion"));
        }
    }
    if admits {
        return Err(stage("admits", "induced graph admits a factorization system"));
    }
    Ok(CounterexampleReport {
        elements: l.n(),
        sd,
        extremal,
        plain_arrows,
        triangle_free,
        chi,
        grotzsch,
        admits_tafs: admits,
        exhaustive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_arrow_is_both() {
        let g = classify_arrows(2, &[(0, 1)]);
        assert_eq!(g.arrows, vec![(0, 1, Decoration::Both)]);
        assert!(is_tafs(&g).ok);
        assert!(classify_arrows(3, &[]).arrows.is_empty());
        assert!(is_tafs(&classify_arrows(0, &[])).ok);
    }

    #[test]
    fn two_cycle_violates_order() {
        let g = classify_arrows(2, &[(0, 1), (1, 0)]);
        assert!(g.arrows.iter().all(|a| a.2 == Decoration::Both));
        let r = is_tafs(&g);
        assert!(!r.ok);
        assert!(r.violation.unwrap().starts_with("order condition"));
    }

    #[test]
    fn path_of_three_has_plain_arrow() {
        // 0→1→2→3: the middle arrow is neither mono nor epi, and nothing factors it.
        let g = classify_arrows(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(g.arrows[1].2, Decoration::Plain);
        assert!(!is_tafs(&g).ok);
    }

    #[test]
    fn small_admits() {
        for mode in [TafsMode::TrianglefreeChi, TafsMode::OrientationSearch] {
            assert!(admits_tafs(2, &[(0, 1)], mode, 22).unwrap().admits);
            let c5 = UndirectedGraph::cycle(5).edges();
            assert!(admits_tafs(5, &c5, mode, 22).unwrap().admits);
        }
        let k3 = UndirectedGraph::complete(3).edges();
        assert!(matches!(
            admits_tafs(3, &k3, TafsMode::TrianglefreeChi, 22),
            Err(Error::NotTriangleFree)
        ));
        let k7 = UndirectedGraph::complete(7).edges();
        assert!(matches!(
            admits_tafs(7, &k7, TafsMode::OrientationSearch, 20),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn mask_path_matches_general_path() {
        let edges = [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (0, 4)];
        for mask in 0..1u64 << edges.len() {
            let general = is_tafs(&classify_arrows(5, &orient(&edges, mask))).ok;
            assert_eq!(mask_tafs(5, &edges, mask), general, "mask {mask}");
        }
    }

    #[test]
    fn parallel_edges_are_capped() {
        let r = admits_tafs(2, &[(0, 1), (0, 1), (1, 0)], TafsMode::OrientationSearch, 22).unwrap();
        assert!(r.multiplicity_capped);
    }

    #[test]
    fn decorations_of_the_figure() {
        let g = counterexample_graph().unwrap();
        assert_eq!(g.m, 12);
        assert_eq!(g.simple_graph().edge_count(), 22);
        let r = counterexample_pipeline(false).unwrap();
        // The drawn graph has 168 maximal orthogonal pairs.
        assert_eq!(r.elements, 168);
        assert_eq!(r.plain_arrows, vec![("v2".to_string(), "v1".to_string())]);
        assert_eq!((r.chi, r.admits_tafs), (4, false));
    }
}
