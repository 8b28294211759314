//! Finite lattices: construction, join/meet, irreducibles, spine and semidistributivity.

use std::collections::BTreeMap;
use std::ops::Deref;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::iso::{find_isomorphism, Adjacency};
use crate::poset::Poset;

const MEMO_THRESHOLD: usize = 64;

/// A finite lattice. Element 0 is the bottom and element `n - 1` the top.
#[derive(Clone, Debug)]
pub struct Lattice {
    poset: Poset,
    join_rows: Vec<OnceLock<Box<[u32]>>>,
    meet_rows: Vec<OnceLock<Box<[u32]>>>,
}

impl Deref for Lattice {
    type Target = Poset;
    fn deref(&self) -> &Poset {
        &self.poset
    }
}

/// Builds a lattice from covers, checking the lattice property.
pub fn build_lattice(
    n: usize,
    covers: &[(usize, usize)],
    labels: Option<Vec<String>>,
) -> Result<Lattice> {
    if n == 0 {
        return Err(Error::NoExtremum);
    }
    if let Some(l) = &labels {
        if l.len() != n {
            return Err(Error::InvalidParameter(format!(
                "{} labels for {n} elements",
                l.len()
            )));
        }
    }
    let mut p = Poset::from_covers(n, covers)?;
    p.set_labels(labels);
    Lattice::from_poset(p)
}

fn check_lattice(p: &Poset) -> Result<()> {
    let n = p.n();
    for x in 0..n {
        for y in x + 1..n {
            if p.comparable(x, y) {
                continue;
            }
            let ub = p.up(x).and(p.up(y));
            match ub.first() {
                Some(c) if ub.is_subset(p.up(c)) => {}
                _ => return Err(Error::NotALattice(x, y)),
            }
            let lb = p.down(x).and(p.down(y));
            match lb.last() {
                Some(c) if lb.is_subset(p.down(c)) => {}
                _ => return Err(Error::NotALattice(x, y)),
            }
        }
    }
    if p.up(0).count() != n || p.down(n - 1).count() != n {
        return Err(Error::NoExtremum);
    }
    Ok(())
}

impl Lattice {
    pub fn from_poset(p: Poset) -> Result<Lattice> {
        if p.n() == 0 {
            return Err(Error::NoExtremum);
        }
        check_lattice(&p)?;
        Ok(Lattice::from_poset_unchecked(p))
    }

    /// Wraps a poset already known to be a lattice (e.g. built by a construction that guarantees it).
    pub fn from_poset_unchecked(p: Poset) -> Lattice {
        let n = p.n();
        Lattice {
            poset: p,
            join_rows: (0..n).map(|_| OnceLock::new()).collect(),
            meet_rows: (0..n).map(|_| OnceLock::new()).collect(),
        }
    }

    /// Re-runs the full pairwise lattice check.
    pub fn verify(&self) -> Result<()> {
        check_lattice(&self.poset)
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn set_labels(&mut self, labels: Option<Vec<String>>) {
        self.poset.set_labels(labels);
    }

    /// Chain with `k + 1` elements.
    pub fn chain(k: usize) -> Lattice {
        let covers: Vec<_> = (0..k).map(|i| (i, i + 1)).collect();
        build_lattice(k + 1, &covers, None).unwrap()
    }

    /// Boolean lattice of subsets of a `k`-set, indexed by bitmask.
    pub fn boolean(k: usize) -> Lattice {
        let n = 1usize << k;
        let p = Poset::from_relation(n, |x, y| x & !y == 0).unwrap();
        Lattice::from_poset_unchecked(p)
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.n() - 1
    }

    fn raw_join(&self, x: usize, y: usize) -> usize {
        self.up(x).first_common(self.up(y)).expect("lattice join")
    }

    fn raw_meet(&self, x: usize, y: usize) -> usize {
        self.down(x).last_common(self.down(y)).expect("lattice meet")
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        if self.n() <= MEMO_THRESHOLD {
            return self.raw_join(x, y);
        }
        let row = self.join_rows[x]
            .get_or_init(|| (0..self.n()).map(|z| self.raw_join(x, z) as u32).collect());
        row[y] as usize
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        if self.n() <= MEMO_THRESHOLD {
            return self.raw_meet(x, y);
        }
        let row = self.meet_rows[x]
            .get_or_init(|| (0..self.n()).map(|z| self.raw_meet(x, z) as u32).collect());
        row[y] as usize
    }

    pub fn join_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.bottom(), |a, b| self.join(a, b))
    }

    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.top(), |a, b| self.meet(a, b))
    }

    pub fn is_join_irreducible(&self, x: usize) -> bool {
        self.lower_covers(x).len() == 1
    }

    pub fn is_meet_irreducible(&self, x: usize) -> bool {
        self.upper_covers(x).len() == 1
    }

    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.n()).filter(|&x| self.is_join_irreducible(x)).collect()
    }

    pub fn meet_irreducibles(&self) -> Vec<usize> {
        (0..self.n()).filter(|&x| self.is_meet_irreducible(x)).collect()
    }

    pub fn irreducibles(&self) -> IrreducibleTable {
        let jirr = self.join_irreducibles();
        let mirr = self.meet_irreducibles();
        IrreducibleTable {
            j_lower: jirr.iter().map(|&j| self.lower_covers(j)[0]).collect(),
            m_upper: mirr.iter().map(|&m| self.upper_covers(m)[0]).collect(),
            jirr,
            mirr,
        }
    }

    /// Longest chain length, spine, and the lexicographically smallest longest chain.
    pub fn length_spine(&self) -> Spine {
        let n = self.n();
        let mut from_bottom = vec![0usize; n];
        for y in 0..n {
            for &x in self.lower_covers(y) {
                from_bottom[y] = from_bottom[y].max(from_bottom[x] + 1);
            }
        }
        let mut to_top = vec![0usize; n];
        for x in (0..n).rev() {
            for &y in self.upper_covers(x) {
                to_top[x] = to_top[x].max(to_top[y] + 1);
            }
        }
        let length = from_bottom[n - 1];
        let spine = BitSet::from_iter(n, (0..n).filter(|&x| from_bottom[x] + to_top[x] == length));
        let mut chain = vec![0];
        let mut x = 0;
        while x != n - 1 {
            x = *self
                .upper_covers(x)
                .iter()
                .find(|&&y| from_bottom[y] == from_bottom[x] + 1 && spine.contains(y))
                .expect("longest chain continues");
            chain.push(x);
        }
        Spine {
            length,
            spine,
            chain,
            from_bottom,
            to_top,
        }
    }

    pub fn length(&self) -> usize {
        self.length_spine().length
    }

    /// All longest chains, in lexicographic order, up to `cap` of them.
    pub fn longest_chains(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        let s = self.length_spine();
        let mut out = Vec::new();
        let mut cur = vec![0];
        fn rec(
            l: &Lattice,
            s: &Spine,
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
            cap: usize,
        ) -> Result<()> {
            let x = *cur.last().unwrap();
            if x == l.top() {
                if out.len() == cap {
                    return Err(Error::CapExceeded {
                        what: "longest chains",
                        cap,
                    });
                }
                out.push(cur.clone());
                return Ok(());
            }
            for &y in l.upper_covers(x) {
                if s.spine.contains(y) && s.from_bottom[y] == s.from_bottom[x] + 1 {
                    cur.push(y);
                    rec(l, s, cur, out, cap)?;
                    cur.pop();
                }
            }
            Ok(())
        }
        rec(self, &s, &mut cur, &mut out, cap)?;
        Ok(out)
    }

    pub fn extremality(&self) -> Extremality {
        let length = self.length();
        let jirr = self.join_irreducibles().len();
        let mirr = self.meet_irreducibles().len();
        assert!(length <= jirr.min(mirr), "chain longer than irreducible count");
        Extremality {
            length,
            jirr,
            mirr,
            join_extremal: length == jirr,
            meet_extremal: length == mirr,
            extremal: length == jirr && length == mirr,
        }
    }

    /// Minimum of `I(c) \ I(b)` for a cover `b ⋖ c`, if it exists.
    pub fn gamma_j(&self, b: usize, c: usize) -> Option<usize> {
        self.minimum_of(&self.down(c).minus(self.down(b)))
    }

    /// Maximum of `F(b) \ F(c)` for a cover `b ⋖ c`, if it exists.
    pub fn gamma_m(&self, b: usize, c: usize) -> Option<usize> {
        self.maximum_of(&self.up(b).minus(self.up(c)))
    }

    pub fn semidistributivity(&self) -> SdReport {
        let gj: Vec<Option<usize>> = self.edges().iter().map(|&(b, c)| self.gamma_j(b, c)).collect();
        let gm: Vec<Option<usize>> = self.edges().iter().map(|&(b, c)| self.gamma_m(b, c)).collect();
        let is_jsd = gj.iter().all(Option::is_some);
        let is_msd = gm.iter().all(Option::is_some);
        let gamma_j: Option<Vec<usize>> = is_jsd.then(|| gj.into_iter().flatten().collect());
        let gamma_m: Option<Vec<usize>> = is_msd.then(|| gm.into_iter().flatten().collect());
        let kappa = match (&gamma_j, &gamma_m) {
            (Some(_), Some(gm)) => Some(
                self.join_irreducibles()
                    .into_iter()
                    .map(|j| {
                        let lo = self.lower_covers(j)[0];
                        (j, gm[self.edge_index(lo, j).unwrap()])
                    })
                    .collect(),
            ),
            _ => None,
        };
        SdReport {
            is_jsd,
            is_msd,
            gamma_j,
            gamma_m,
            kappa,
        }
    }

    pub fn is_semidistributive(&self) -> bool {
        let r = self.semidistributivity();
        r.is_jsd && r.is_msd
    }

    /// Downward label set `D(x)`; needs join-semidistributivity.
    pub fn downward_labels(&self, x: usize) -> Option<Vec<usize>> {
        let mut d: Vec<usize> = self
            .lower_covers(x)
            .iter()
            .map(|&y| self.gamma_j(y, x))
            .collect::<Option<_>>()?;
        d.sort_unstable();
        Some(d)
    }

    pub fn dissector_width(&self) -> usize {
        self.width_of(&self.dissectors())
    }

    pub fn jirr_width(&self) -> usize {
        let j = BitSet::from_iter(self.n(), self.join_irreducibles());
        self.width_of(&j)
    }

    pub fn subposet_jirr(&self) -> (Poset, Vec<usize>) {
        self.induced(&BitSet::from_iter(self.n(), self.join_irreducibles()))
    }

    fn hasse(&self) -> Adjacency {
        Adjacency::from_edges(self.n(), self.edges().iter().copied())
    }

    /// An order isomorphism to `other`, if one exists.
    pub fn isomorphism(&self, other: &Lattice) -> Option<Vec<usize>> {
        if self.n() != other.n() || self.edges().len() != other.edges().len() {
            return None;
        }
        let la = self.length_spine();
        let lb = other.length_spine();
        let levels = |s: &Spine| -> Vec<u32> {
            (0..s.from_bottom.len())
                .map(|x| (s.from_bottom[x] * 4096 + s.to_top[x]) as u32)
                .collect()
        };
        let (ca, cb) = (levels(&la), levels(&lb));
        find_isomorphism(&self.hasse(), &other.hasse(), Some((&ca, &cb)))
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            n: self.n(),
            covers: self.edges().iter().map(|&(a, b)| [a, b]).collect(),
            labels: self.labels().map(|l| l.to_vec()),
        }
    }

    pub fn from_json(j: &LatticeJson) -> Result<Lattice> {
        let covers: Vec<(usize, usize)> = j.covers.iter().map(|c| (c[0], c[1])).collect();
        build_lattice(j.n, &covers, j.labels.clone())
    }

    /// Hasse diagram in DOT, edges bottom to top.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph hasse {\n  rankdir=BT;\n");
        for x in 0..self.n() {
            s.push_str(&format!("  n{x} [label=\"{}\"];\n", self.label(x)));
        }
        for &(a, b) in self.edges() {
            s.push_str(&format!("  n{a} -> n{b};\n"));
        }
        s.push_str("}\n");
        s
    }
}

pub fn are_isomorphic(a: &Lattice, b: &Lattice) -> bool {
    a.isomorphism(b).is_some()
}

/// Order dual; element `x` becomes `n - 1 - x`.
pub fn dual(l: &Lattice) -> Lattice {
    let n = l.n();
    let down = (0..n)
        .map(|x| BitSet::from_iter(n, l.up(n - 1 - x).iter().map(|y| n - 1 - y)))
        .collect();
    let mut poset = Poset::from_down_sets(down);
    poset.set_labels(l.labels().map(|ls| ls.iter().rev().cloned().collect()));
    Lattice::from_poset_unchecked(poset)
}

/// Product order on pairs; element `(x, y)` gets index `x * |Q| + y`.
pub fn direct_product(p: &Lattice, q: &Lattice) -> Lattice {
    let m = q.n();
    let mut down = Vec::with_capacity(p.n() * m);
    for x in 0..p.n() {
        for y in 0..m {
            let mut d = BitSet::new(p.n() * m);
            for a in p.down(x) {
                for b in q.down(y) {
                    d.insert(a * m + b);
                }
            }
            down.push(d);
        }
    }
    let mut poset = Poset::from_down_sets(down);
    let labels = (0..p.n())
        .flat_map(|x| (0..m).map(move |y| (x, y)))
        .map(|(x, y)| format!("({},{})", p.label(x), q.label(y)))
        .collect();
    poset.set_labels(Some(labels));
    Lattice::from_poset_unchecked(poset)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub n: usize,
    pub covers: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct IrreducibleTable {
    pub jirr: Vec<usize>,
    /// Unique lower cover of each entry of `jirr`.
    pub j_lower: Vec<usize>,
    pub mirr: Vec<usize>,
    /// Unique upper cover of each entry of `mirr`.
    pub m_upper: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Spine {
    pub length: usize,
    pub spine: BitSet,
    pub chain: Vec<usize>,
    pub from_bottom: Vec<usize>,
    pub to_top: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Extremality {
    pub length: usize,
    pub jirr: usize,
    pub mirr: usize,
    pub join_extremal: bool,
    pub meet_extremal: bool,
    pub extremal: bool,
}

/// Semidistributivity labels; `gamma_j[e]`, `gamma_m[e]` follow `edges()` order.
#[derive(Clone, Debug)]
pub struct SdReport {
    pub is_jsd: bool,
    pub is_msd: bool,
    pub gamma_j: Option<Vec<usize>>,
    pub gamma_m: Option<Vec<usize>>,
    pub kappa: Option<BTreeMap<usize, usize>>,
}

/// A chain from bottom to top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainPhi {
    pub elements: Vec<usize>,
    pub is_maximal: bool,
    pub is_longest: bool,
}

impl ChainPhi {
    pub fn new(l: &Lattice, elements: Vec<usize>) -> Result<ChainPhi> {
        for &x in &elements {
            if x >= l.n() {
                return Err(Error::IndexOutOfRange(x, l.n()));
            }
        }
        if elements.first() != Some(&0) || elements.last() != Some(&l.top()) {
            return Err(Error::InvalidParameter(
                "chain must start at the bottom and end at the top".into(),
            ));
        }
        if elements.windows(2).any(|w| !l.lt(w[0], w[1])) {
            return Err(Error::InvalidParameter("chain is not strictly increasing".into()));
        }
        if l.n() == 1 && elements.len() != 1 {
            return Err(Error::InvalidParameter("repeated element".into()));
        }
        let is_maximal = elements
            .windows(2)
            .all(|w| l.upper_covers(w[0]).contains(&w[1]));
        let is_longest = is_maximal && elements.len() - 1 == l.length();
        Ok(ChainPhi {
            elements,
            is_maximal,
            is_longest,
        })
    }

    /// The lexicographically smallest longest chain.
    pub fn canonical(l: &Lattice) -> ChainPhi {
        ChainPhi::new(l, l.length_spine().chain).unwrap()
    }

    pub fn len(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
