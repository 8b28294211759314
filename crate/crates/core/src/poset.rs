//! Finite posets indexed by a linear extension.

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A finite poset whose element indices form a linear extension.
#[derive(Clone, Debug)]
pub struct Poset {
    n: usize,
    down: Vec<BitSet>,
    up: Vec<BitSet>,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    labels: Option<Vec<String>>,
}

impl Poset {
    /// Builds from cover pairs; redundant (transitive) pairs are dropped.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Poset> {
        let mut below: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(lo, hi) in covers {
            if lo >= n {
                return Err(Error::IndexOutOfRange(lo, n));
            }
            if hi >= n {
                return Err(Error::IndexOutOfRange(hi, n));
            }
            if lo >= hi {
                return Err(Error::NotLinearExtension(lo, hi));
            }
            below[hi].push(lo);
        }
        let mut down: Vec<BitSet> = Vec::with_capacity(n);
        for y in 0..n {
            let mut d = BitSet::new(n);
            d.insert(y);
            for &x in &below[y] {
                d.union_with(&down[x]);
            }
            down.push(d);
        }
        Ok(Poset::from_down_sets(down))
    }

    /// Builds from a relation given as a predicate `leq(x, y)`.
    pub fn from_relation<F: Fn(usize, usize) -> bool>(n: usize, leq: F) -> Result<Poset> {
        let mut down = Vec::with_capacity(n);
        for y in 0..n {
            let mut d = BitSet::new(n);
            for x in 0..n {
                if x == y || leq(x, y) {
                    if x > y {
                        return Err(Error::NotLinearExtension(y, x));
                    }
                    d.insert(x);
                }
            }
            down.push(d);
        }
        Ok(Poset::from_down_sets(down))
    }

    /// `down[y]` must be reflexive, transitive and contained in `0..=y`.
    pub fn from_down_sets(down: Vec<BitSet>) -> Poset {
        let n = down.len();
        let mut up = vec![BitSet::new(n); n];
        for (y, d) in down.iter().enumerate() {
            debug_assert!(d.contains(y) && d.last() == Some(y));
            for x in d {
                up[x].insert(y);
            }
        }
        let mut lower = vec![Vec::new(); n];
        let mut upper = vec![Vec::new(); n];
        let mut covered = BitSet::new(n);
        for y in 0..n {
            covered.clear();
            let strict: Vec<usize> = down[y].iter().filter(|&x| x != y).collect();
            for &x in strict.iter().rev() {
                if !covered.contains(x) {
                    lower[y].push(x);
                    covered.union_with(&down[x]);
                }
            }
            lower[y].sort_unstable();
            for &x in &lower[y] {
                upper[x].push(y);
            }
        }
        let mut edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|x| upper[x].iter().map(move |&y| (x, y)))
            .collect();
        edges.sort_unstable();
        Poset {
            n,
            down,
            up,
            lower,
            upper,
            edges,
            labels: None,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.down[y].contains(x)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// Principal down-set `{y : y ≤ x}`.
    pub fn down(&self, x: usize) -> &BitSet {
        &self.down[x]
    }

    /// Principal up-set `{y : y ≥ x}`.
    pub fn up(&self, x: usize) -> &BitSet {
        &self.up[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    /// Cover pairs `(lower, upper)` sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_index(&self, lo: usize, hi: usize) -> Option<usize> {
        self.edges.binary_search(&(lo, hi)).ok()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Option<Vec<String>>) {
        if let Some(l) = &labels {
            assert_eq!(l.len(), self.n);
        }
        self.labels = labels;
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.lower[x].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.upper[x].is_empty()).collect()
    }

    /// Union of the down-sets of the members of `s`.
    pub fn down_closure(&self, s: &BitSet) -> BitSet {
        let mut r = BitSet::new(self.n);
        for x in s {
            r.union_with(&self.down[x]);
        }
        r
    }

    pub fn up_closure(&self, s: &BitSet) -> BitSet {
        let mut r = BitSet::new(self.n);
        for x in s {
            r.union_with(&self.up[x]);
        }
        r
    }

    pub fn is_convex(&self, s: &BitSet) -> bool {
        self.down_closure(s).and(&self.up_closure(s)) == *s
    }

    /// Minimal elements of a subset.
    pub fn min_of(&self, s: &BitSet) -> Vec<usize> {
        s.iter()
            .filter(|&x| self.down[x].intersection_count(s) == 1)
            .collect()
    }

    pub fn max_of(&self, s: &BitSet) -> Vec<usize> {
        s.iter()
            .filter(|&x| self.up[x].intersection_count(s) == 1)
            .collect()
    }

    /// The minimum of a subset, if it has one.
    pub fn minimum_of(&self, s: &BitSet) -> Option<usize> {
        let c = s.first()?;
        s.is_subset(&self.up[c]).then_some(c)
    }

    pub fn maximum_of(&self, s: &BitSet) -> Option<usize> {
        let c = s.last()?;
        s.is_subset(&self.down[c]).then_some(c)
    }

    /// Induced subposet on `s`, with the original ids of its elements.
    pub fn induced(&self, s: &BitSet) -> (Poset, Vec<usize>) {
        let ids = s.to_vec();
        let p = Poset::from_relation(ids.len(), |a, b| self.leq(ids[a], ids[b]))
            .expect("induced order keeps the linear extension");
        let mut p = p;
        p.set_labels(Some(ids.iter().map(|&x| self.label(x)).collect()));
        (p, ids)
    }

    /// Width of the subposet on `s`: minimum chain cover via bipartite matching.
    pub fn width_of(&self, s: &BitSet) -> usize {
        let ids = s.to_vec();
        let k = ids.len();
        let succ: Vec<Vec<usize>> = (0..k)
            .map(|a| (0..k).filter(|&b| self.lt(ids[a], ids[b])).collect())
            .collect();
        let mut match_right: Vec<Option<usize>> = vec![None; k];
        let mut matched = 0;
        for a in 0..k {
            let mut seen = vec![false; k];
            if augment(a, &succ, &mut match_right, &mut seen) {
                matched += 1;
            }
        }
        k - matched
    }

    pub fn width(&self) -> usize {
        self.width_of(&BitSet::full(self.n))
    }

    /// Elements x such that P minus the up-set of x has a maximum.
    pub fn dissectors(&self) -> BitSet {
        let mut r = BitSet::new(self.n);
        for x in 0..self.n {
            let rest = self.up[x].complement();
            if self.maximum_of(&rest).is_some() {
                r.insert(x);
            }
        }
        r
    }
}

fn augment(
    a: usize,
    succ: &[Vec<usize>],
    match_right: &mut [Option<usize>],
    seen: &mut [bool],
) -> bool {
    for &b in &succ[a] {
        if seen[b] {
            continue;
        }
        seen[b] = true;
        let free = match match_right[b] {
            None => true,
            Some(a2) => augment(a2, succ, match_right, seen),
        };
        if free {
            match_right[b] = Some(a);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn redundant_covers_are_reduced() {
        let p = Poset::from_covers(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.edges(), &[(0, 1), (1, 2)]);
        assert!(p.leq(0, 2));
    }

    #[test]
    fn rejects_decreasing_cover() {
        assert!(matches!(
            Poset::from_covers(2, &[(1, 0)]),
            Err(Error::NotLinearExtension(1, 0))
        ));
    }

    #[test]
    fn antichain_width() {
        let p = Poset::from_covers(4, &[]).unwrap();
        assert_eq!(p.width(), 4);
        let q = Poset::from_covers(4, &[(0, 2), (1, 2), (1, 3)]).unwrap();
        assert_eq!(q.width(), 2);
    }

    #[test]
    fn chain_dissectors() {
        let p = Poset::from_covers(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(p.width(), 1);
        assert_eq!(p.dissectors().to_vec(), vec![1, 2, 3]);
    }
}
