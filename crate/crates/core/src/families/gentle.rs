//! Gentle trees: string modules, exact Hom dimensions and the torsion-class lattice.
//!
//! Vertices and arrows are 0-based. A relation `[a, b]` means arrow `a` followed by
//! arrow `b` composes to zero.

use std::collections::{HashMap, HashSet, VecDeque};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::coloring::chromatic_number;
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, UndirectedGraph};
use crate::lattice::Lattice;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GentleQuiverJson {
    pub vertices: usize,
    pub arrows: Vec<[usize; 2]>,
    #[serde(default)]
    pub relations: Vec<[usize; 2]>,
    /// East (`true`) or north step per arrow; derived when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub east: Option<Vec<bool>>,
}

#[derive(Clone, Debug)]
pub struct GentleQuiver {
    n: usize,
    arrows: Vec<(usize, usize)>,
    relations: HashSet<(usize, usize)>,
    east: Vec<bool>,
    by_pair: HashMap<(usize, usize), usize>,
}

fn not_gentle(msg: impl Into<String>) -> Error {
    Error::NotGentle(msg.into())
}

impl GentleQuiver {
    pub fn new(n: usize, arrows: Vec<(usize, usize)>, relations: Vec<(usize, usize)>) -> Result<GentleQuiver> {
        Self::with_drawing(n, arrows, relations, None)
    }

    pub fn with_drawing(
        n: usize,
        arrows: Vec<(usize, usize)>,
        relations: Vec<(usize, usize)>,
        east: Option<Vec<bool>>,
    ) -> Result<GentleQuiver> {
        if n == 0 {
            return Err(not_gentle("no vertices"));
        }
        if arrows.len() + 1 != n {
            return Err(not_gentle("underlying graph is not a tree"));
        }
        let mut by_pair = HashMap::new();
        for (i, &(s, t)) in arrows.iter().enumerate() {
            if s >= n || t >= n || s == t {
                return Err(not_gentle(format!("bad arrow {i}: {s}→{t}")));
            }
            if by_pair.insert((s.min(t), s.max(t)), i).is_some() {
                return Err(not_gentle("parallel arrows"));
            }
        }
        let mut q = GentleQuiver {
            n,
            arrows,
            relations: HashSet::new(),
            east: Vec::new(),
            by_pair,
        };
        if q.component_size(0) != n {
            return Err(not_gentle("underlying graph is not a tree"));
        }
        for v in 0..n {
            if q.in_arrows(v).len() > 2 || q.out_arrows(v).len() > 2 {
                return Err(not_gentle(format!("vertex {v} has more than two in- or out-arrows")));
            }
        }
        for &(a, b) in &relations {
            if a >= q.arrows.len() || b >= q.arrows.len() || q.arrows[a].1 != q.arrows[b].0 {
                return Err(not_gentle(format!("relation [{a}, {b}] is not a composable pair")));
            }
        }
        q.relations = relations.into_iter().collect();
        for a in 0..q.arrows.len() {
            let after: Vec<usize> = q.out_arrows(q.arrows[a].1);
            let before: Vec<usize> = q.in_arrows(q.arrows[a].0);
            let zero_after = after.iter().filter(|&&b| q.relations.contains(&(a, b))).count();
            let zero_before = before.iter().filter(|&&b| q.relations.contains(&(b, a))).count();
            if zero_after > 1 || after.len() - zero_after > 1 {
                return Err(not_gentle(format!("arrow {a} violates the gentle condition on its successors")));
            }
            if zero_before > 1 || before.len() - zero_before > 1 {
                return Err(not_gentle(format!("arrow {a} violates the gentle condition on its predecessors")));
            }
        }
        q.east = q.draw(east)?;
        Ok(q)
    }

    /// Path `0 - 1 - … - (n-1)`; bit `i` of `reversed` points arrow `i` from `i+1` to `i`.
    pub fn path(n: usize, reversed: u64) -> Result<GentleQuiver> {
        let arrows = (0..n.saturating_sub(1))
            .map(|i| if reversed >> i & 1 == 1 { (i + 1, i) } else { (i, i + 1) })
            .collect();
        GentleQuiver::new(n, arrows, Vec::new())
    }

    pub fn from_json(j: &GentleQuiverJson) -> Result<GentleQuiver> {
        GentleQuiver::with_drawing(
            j.vertices,
            j.arrows.iter().map(|a| (a[0], a[1])).collect(),
            j.relations.iter().map(|r| (r[0], r[1])).collect(),
            j.east.clone(),
        )
    }

    pub fn to_json(&self) -> GentleQuiverJson {
        let mut relations: Vec<[usize; 2]> = self.relations.iter().map(|&(a, b)| [a, b]).collect();
        relations.sort_unstable();
        GentleQuiverJson {
            vertices: self.n,
            arrows: self.arrows.iter().map(|&(s, t)| [s, t]).collect(),
            relations,
            east: Some(self.east.clone()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn east(&self) -> &[bool] {
        &self.east
    }

    pub fn is_relation(&self, a: usize, b: usize) -> bool {
        self.relations.contains(&(a, b))
    }

    fn in_arrows(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].1 == v).collect()
    }

    fn out_arrows(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].0 == v).collect()
    }

    fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().filter_map(move |&(s, t)| {
            if s == v {
                Some(t)
            } else if t == v {
                Some(s)
            } else {
                None
            }
        })
    }

    fn component_size(&self, start: usize) -> usize {
        let mut seen = vec![false; self.n];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for w in self.neighbours(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count
    }

    /// Whether arrows `a` and `b`, meeting at a vertex, must point the same way.
    fn same_direction(&self, a: usize, b: usize) -> Option<bool> {
        let (sa, ta) = self.arrows[a];
        let (sb, tb) = self.arrows[b];
        if sa == sb || ta == tb {
            Some(false)
        } else if ta == sb {
            Some(!self.is_relation(a, b))
        } else if tb == sa {
            Some(!self.is_relation(b, a))
        } else {
            None
        }
    }

    fn draw(&self, given: Option<Vec<bool>>) -> Result<Vec<bool>> {
        let k = self.arrows.len();
        let east = match given {
            Some(e) if e.len() == k => e,
            Some(_) => return Err(not_gentle("drawing has the wrong number of arrows")),
            None => {
                let mut dir: Vec<Option<bool>> = vec![None; k];
                for start in 0..k {
                    if dir[start].is_some() {
                        continue;
                    }
                    dir[start] = Some(true);
                    let mut queue = VecDeque::from([start]);
                    while let Some(a) = queue.pop_front() {
                        for b in 0..k {
                            if dir[b].is_none() {
                                if let Some(same) = self.same_direction(a, b) {
                                    dir[b] = Some(dir[a].unwrap() == same);
                                    queue.push_back(b);
                                }
                            }
                        }
                    }
                }
                dir.into_iter().map(|d| d.unwrap()).collect()
            }
        };
        for a in 0..k {
            for b in a + 1..k {
                if let Some(same) = self.same_direction(a, b) {
                    if (east[a] == east[b]) != same {
                        return Err(not_gentle(format!("arrows {a} and {b} cannot be drawn east/north")));
                    }
                }
            }
        }
        Ok(east)
    }

    /// Position of every vertex when east arrows step right and north arrows step up.
    pub fn coordinates(&self) -> Vec<(i64, i64)> {
        let mut pos = vec![None; self.n];
        pos[0] = Some((0i64, 0i64));
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            let (x, y) = pos[v].unwrap();
            for (a, &(s, t)) in self.arrows.iter().enumerate() {
                let (dx, dy) = if self.east[a] { (1, 0) } else { (0, 1) };
                if s == v && pos[t].is_none() {
                    pos[t] = Some((x + dx, y + dy));
                    queue.push_back(t);
                } else if t == v && pos[s].is_none() {
                    pos[s] = Some((x - dx, y - dy));
                    queue.push_back(s);
                }
            }
        }
        pos.into_iter().map(|p| p.unwrap()).collect()
    }

    fn tree_path(&self, u: usize, v: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.n];
        parent[u] = u;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            for w in self.neighbours(x) {
                if parent[w] == usize::MAX {
                    parent[w] = x;
                    queue.push_back(w);
                }
            }
        }
        let mut path = vec![v];
        while *path.last().unwrap() != u {
            path.push(parent[*path.last().unwrap()]);
        }
        path.reverse();
        path
    }

    fn arrow_between(&self, x: usize, y: usize) -> usize {
        self.by_pair[&(x.min(y), x.max(y))]
    }
}

/// Walk from the left endpoint to the right endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StringModule {
    pub vertices: Vec<usize>,
    /// Arrow crossed at each step and whether it is crossed along its direction.
    pub steps: Vec<(usize, bool)>,
    #[serde(skip)]
    pub support: BitSet,
}

impl StringModule {
    pub fn left_endpoint(&self) -> usize {
        self.vertices[0]
    }

    pub fn right_endpoint(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    pub fn is_simple(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn name(&self) -> String {
        let v: Vec<String> = self.vertices.iter().map(|x| x.to_string()).collect();
        v.join("-")
    }
}

/// All string modules, simples first, then by endpoints.
pub fn gentle_strings(q: &GentleQuiver) -> Result<Vec<StringModule>> {
    let pos = q.coordinates();
    let mut out = Vec::new();
    for u in 0..q.n {
        for v in u..q.n {
            let path = q.tree_path(u, v);
            let steps: Vec<(usize, bool)> = path
                .windows(2)
                .map(|w| {
                    let a = q.arrow_between(w[0], w[1]);
                    (a, q.arrows[a].0 == w[0])
                })
                .collect();
            let blocked = steps.windows(2).any(|p| match (p[0], p[1]) {
                ((a, true), (b, true)) => q.is_relation(a, b),
                ((a, false), (b, false)) => q.is_relation(b, a),
                _ => false,
            });
            if blocked {
                continue;
            }
            let (dx, dy) = (pos[v].0 - pos[u].0, pos[v].1 - pos[u].1);
            if !(dx >= 0 && dy <= 0 || dx <= 0 && dy >= 0) {
                return Err(Error::TheoremViolation(format!("string {u}..{v} is not monotone")));
            }
            let mut s = StringModule {
                vertices: path,
                steps,
                support: BitSet::new(q.n),
            };
            if dx < 0 || dy > 0 {
                s.vertices.reverse();
                s.steps.reverse();
            }
            s.support = BitSet::from_iter(q.n, s.vertices.iter().copied());
            out.push(s);
        }
    }
    out.sort_by_key(|s| (s.vertices.len(), s.left_endpoint(), s.right_endpoint()));
    Ok(out)
}

/// Rank of an integer matrix by fraction-free elimination.
pub fn integer_rank(mut rows: Vec<Vec<i128>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        for r in rank + 1..rows.len() {
            for k in c + 1..cols {
                rows[r][k] = (rows[rank][c] * rows[r][k] - rows[r][c] * rows[rank][k]) / prev;
            }
            rows[r][c] = 0;
        }
        prev = rows[rank][c];
        rank += 1;
    }
    rank
}

/// `dim Hom(M, N)` from the commuting squares over every arrow.
pub fn hom_dim(q: &GentleQuiver, m: &StringModule, n: &StringModule) -> usize {
    let common = m.support.and(&n.support);
    let vars: Vec<usize> = common.iter().collect();
    if vars.is_empty() {
        return 0;
    }
    let col: HashMap<usize, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut rows = Vec::new();
    for &(s, t) in &q.arrows {
        let in_m = m.support.contains(s) && m.support.contains(t);
        let in_n = n.support.contains(s) && n.support.contains(t);
        // N(a) f_s = f_t M(a)
        let mut row = vec![0i128; vars.len()];
        if in_n {
            if let Some(&c) = col.get(&s) {
                row[c] += 1;
            }
        }
        if in_m {
            if let Some(&c) = col.get(&t) {
                row[c] -= 1;
            }
        }
        if row.iter().any(|&x| x != 0) {
            rows.push(row);
        }
    }
    vars.len() - integer_rank(rows)
}

pub fn hom_matrix(q: &GentleQuiver, bricks: &[StringModule]) -> Vec<Vec<usize>> {
    bricks
        .iter()
        .map(|a| bricks.iter().map(|b| hom_dim(q, a, b)).collect())
        .collect()
}

/// Bricks joined when Hom vanishes both ways; the canonical join graph of `Tors(T)`.
pub fn hom_orthogonality_graph(bricks: &[StringModule], hom: &[Vec<usize>]) -> UndirectedGraph {
    let k = bricks.len();
    let mut g = UndirectedGraph::new(k);
    for a in 0..k {
        for b in a + 1..k {
            if hom[a][b] == 0 && hom[b][a] == 0 {
                g.add_edge(a, b);
            }
        }
    }
    g.labels = Some(bricks.iter().map(|s| s.name()).collect());
    g
}

/// Edge `B′→B` whenever `Hom(B′, B) ≠ 0`.
pub fn tors_galois_graph(q: &GentleQuiver) -> Result<DirectedGraph> {
    let bricks = gentle_strings(q)?;
    let hom = hom_matrix(q, &bricks);
    let k = bricks.len();
    let mut g = DirectedGraph::new(k);
    for a in 0..k {
        for b in 0..k {
            if a != b && hom[a][b] != 0 {
                g.add_edge(a, b);
            }
        }
    }
    g.labels = Some(bricks.iter().map(|s| s.name()).collect());
    Ok(g)
}

pub fn tors_lattice(q: &GentleQuiver) -> Result<Lattice> {
    super::lattice_of(&tors_galois_graph(q)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionReport {
    pub bricks: usize,
    pub dim: usize,
    pub coloring: Vec<usize>,
}

/// `dim Tors(T)` as the chromatic number of the hom-orthogonality graph.
pub fn torsion_dim(q: &GentleQuiver, budget: Option<Duration>) -> Result<TorsionReport> {
    let bricks = gentle_strings(q)?;
    let hom = hom_matrix(q, &bricks);
    for (i, b) in bricks.iter().enumerate() {
        if hom[i][i] != 1 {
            return Err(Error::TheoremViolation(format!("{} is not a brick", b.name())));
        }
    }
    let g = hom_orthogonality_graph(&bricks, &hom);
    let simples: Vec<usize> = (0..bricks.len()).filter(|&i| bricks[i].is_simple()).collect();
    if simples.len() != q.n() || !g.is_clique(&simples) {
        return Err(Error::TheoremViolation("simples are not pairwise hom-orthogonal".into()));
    }
    let by_endpoint: Vec<usize> = bricks.iter().map(|b| b.right_endpoint()).collect();
    if !g.is_proper_coloring(&by_endpoint) {
        return Err(Error::TheoremViolation("right-endpoint coloring is not proper".into()));
    }
    let r = chromatic_number(&g, budget)?;
    Ok(TorsionReport {
        bricks: bricks.len(),
        dim: r.chi,
        coloring: r.coloring,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn figure_tree() -> GentleQuiver {
        // a: 0→1, b: 1→2, c: 1→3, ab = 0
        GentleQuiver::new(4, vec![(0, 1), (1, 2), (1, 3)], vec![(0, 1)]).unwrap()
    }

    #[test]
    fn figure_tree_strings() {
        let q = figure_tree();
        assert_eq!(q.east(), &[true, false, true]);
        let s = gentle_strings(&q).unwrap();
        assert_eq!(s.len(), 9);
        assert!(!s.iter().any(|m| m.support.contains(0) && m.support.contains(2)));
        assert_eq!(torsion_dim(&q, None).unwrap().dim, 4);
    }

    #[test]
    fn a3_source_sink() {
        let q = GentleQuiver::new(3, vec![(0, 1), (2, 1)], vec![]).unwrap();
        assert_eq!(gentle_strings(&q).unwrap().len(), 6);
        let r = torsion_dim(&q, None).unwrap();
        assert_eq!((r.bricks, r.dim), (6, 3));
        assert_eq!(tors_lattice(&q).unwrap().n(), 14);
    }

    #[test]
    fn simples() {
        let q = GentleQuiver::new(1, vec![], vec![]).unwrap();
        let s = gentle_strings(&q).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(hom_dim(&q, &s[0], &s[0]), 1);
        assert_eq!(torsion_dim(&q, None).unwrap().dim, 1);
        let q = GentleQuiver::path(3, 0).unwrap();
        let s = gentle_strings(&q).unwrap();
        assert_eq!(hom_dim(&q, &s[0], &s[1]), 0);
        assert_eq!(hom_dim(&q, &s[1], &s[1]), 1);
    }

    #[test]
    fn shared_right_endpoint_is_not_orthogonal() {
        let q = figure_tree();
        let s = gentle_strings(&q).unwrap();
        for x in &s {
            for y in &s {
                if x != y && x.right_endpoint() == y.right_endpoint() {
                    assert!(hom_dim(&q, x, y) + hom_dim(&q, y, x) > 0, "{} {}", x.name(), y.name());
                }
            }
        }
    }

    #[test]
    fn rejects_non_gentle() {
        assert!(matches!(GentleQuiver::new(3, vec![(0, 1)], vec![]), Err(Error::NotGentle(_))));
        let star = vec![(1, 0), (2, 0), (3, 0)];
        assert!(matches!(GentleQuiver::new(4, star, vec![]), Err(Error::NotGentle(_))));
        // Two non-relations after one arrow.
        let fork = vec![(0, 1), (1, 2), (1, 3)];
        assert!(matches!(GentleQuiver::new(4, fork, vec![]), Err(Error::NotGentle(_))));
        assert!(matches!(
            GentleQuiver::new(3, vec![(0, 1), (2, 1)], vec![(0, 1)]),
            Err(Error::NotGentle(_))
        ));
    }

    #[test]
    fn integer_rank_basics() {
        assert_eq!(integer_rank(vec![vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(integer_rank(vec![vec![0, 1], vec![1, 0], vec![1, 1]]), 2);
        assert_eq!(integer_rank(vec![]), 0);
    }

    #[test]
    fn json_roundtrip() {
        let q = figure_tree();
        let text = serde_json::to_string(&q.to_json()).unwrap();
        let back = GentleQuiver::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.to_json(), q.to_json());
        let plain: GentleQuiverJson =
            serde_json::from_str(r#"{"vertices": 3, "arrows": [[0,1],[2,1]], "relations": []}"#).unwrap();
        assert!(GentleQuiver::from_json(&plain).is_ok());
    }
}
