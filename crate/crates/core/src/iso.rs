//! Directed graph isomorphism by color refinement and backtracking.

use std::collections::HashMap;

use crate::bitset::BitSet;

/// Directed adjacency in both directions.
#[derive(Clone, Debug)]
pub struct Adjacency {
    pub out: Vec<BitSet>,
    pub inn: Vec<BitSet>,
}

impl Adjacency {
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut out = vec![BitSet::new(n); n];
        let mut inn = vec![BitSet::new(n); n];
        for (u, v) in edges {
            out[u].insert(v);
            inn[v].insert(u);
        }
        Adjacency { out, inn }
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }
}

/// Refines both colorings jointly until stable, so colors are comparable across graphs.
fn refine(a: &Adjacency, b: &Adjacency, ca: &mut Vec<u32>, cb: &mut Vec<u32>) {
    let mut classes = usize::MAX;
    loop {
        let mut table: HashMap<(u32, Vec<u32>, Vec<u32>), u32> = HashMap::new();
        let mut step = |g: &Adjacency, c: &[u32]| -> Vec<u32> {
            (0..g.n())
                .map(|v| {
                    let mut o: Vec<u32> = g.out[v].iter().map(|u| c[u]).collect();
                    let mut i: Vec<u32> = g.inn[v].iter().map(|u| c[u]).collect();
                    o.sort_unstable();
                    i.sort_unstable();
                    let next = table.len() as u32;
                    *table.entry((c[v], o, i)).or_insert(next)
                })
                .collect()
        };
        let na = step(a, ca);
        let nb = step(b, cb);
        *ca = na;
        *cb = nb;
        if table.len() == classes {
            return;
        }
        classes = table.len();
    }
}

fn histogram(c: &[u32]) -> Vec<u32> {
    let mut h = c.to_vec();
    h.sort_unstable();
    h
}

/// Finds `f` with `u→v` in `a` iff `f(u)→f(v)` in `b`, respecting the optional initial colors.
pub fn find_isomorphism(
    a: &Adjacency,
    b: &Adjacency,
    colors: Option<(&[u32], &[u32])>,
) -> Option<Vec<usize>> {
    let n = a.n();
    if b.n() != n {
        return None;
    }
    let (mut ca, mut cb) = match colors {
        Some((x, y)) => (x.to_vec(), y.to_vec()),
        None => (vec![0; n], vec![0; n]),
    };
    refine(a, b, &mut ca, &mut cb);
    if histogram(&ca) != histogram(&cb) {
        return None;
    }
    let mut class_size: HashMap<u32, usize> = HashMap::new();
    for &c in &ca {
        *class_size.entry(c).or_default() += 1;
    }
    // Order: prefer vertices attached to already ordered ones, then small classes.
    let mut order = Vec::with_capacity(n);
    let mut placed = BitSet::new(n);
    let mut attach = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed.contains(v))
            .min_by_key(|&v| (usize::MAX - attach[v], class_size[&ca[v]], v))
            .unwrap();
        placed.insert(v);
        order.push(v);
        for u in a.out[v].iter().chain(a.inn[v].iter()) {
            attach[u] += 1;
        }
    }
    let mut state = Search {
        a,
        b,
        ca: &ca,
        cb: &cb,
        map: vec![usize::MAX; n],
        used_a: BitSet::new(n),
        used_b: BitSet::new(n),
    };
    if state.extend(&order, 0) {
        Some(state.map)
    } else {
        None
    }
}

struct Search<'a> {
    a: &'a Adjacency,
    b: &'a Adjacency,
    ca: &'a [u32],
    cb: &'a [u32],
    map: Vec<usize>,
    used_a: BitSet,
    used_b: BitSet,
}

impl Search<'_> {
    fn consistent(&self, v: usize, w: usize) -> bool {
        let (a, b) = (self.a, self.b);
        if a.out[v].intersection_count(&self.used_a) != b.out[w].intersection_count(&self.used_b)
            || a.inn[v].intersection_count(&self.used_a)
                != b.inn[w].intersection_count(&self.used_b)
        {
            return false;
        }
        a.out[v]
            .and(&self.used_a)
            .iter()
            .all(|u| b.out[w].contains(self.map[u]))
            && a.inn[v]
                .and(&self.used_a)
                .iter()
                .all(|u| b.inn[w].contains(self.map[u]))
    }

    fn extend(&mut self, order: &[usize], depth: usize) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        let anchor_out = self.a.inn[v].and(&self.used_a).first();
        let anchor_in = self.a.out[v].and(&self.used_a).first();
        let candidates: Vec<usize> = if let Some(u) = anchor_out {
            self.b.out[self.map[u]].iter().collect()
        } else if let Some(u) = anchor_in {
            self.b.inn[self.map[u]].iter().collect()
        } else {
            (0..self.b.n()).collect()
        };
        for w in candidates {
            if self.used_b.contains(w) || self.cb[w] != self.ca[v] || !self.consistent(v, w) {
                continue;
            }
            self.map[v] = w;
            self.used_a.insert(v);
            self.used_b.insert(w);
            if self.extend(order, depth + 1) {
                return true;
            }
            self.used_a.remove(v);
            self.used_b.remove(w);
            self.map[v] = usize::MAX;
        }
        false
    }
}
