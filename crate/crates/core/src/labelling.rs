//! Chain-based edge labellings, left modular elements and EL-labelling checks.

use std::collections::BTreeMap;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::{ChainPhi, Lattice};

pub const DEFAULT_EL_CAP: usize = 10_000;

/// A labelling of the cover edges, indexed like `Lattice::edges`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeLabelling {
    pub labels: Vec<usize>,
    /// `delta[j] = min{i | j ≤ x_i}` for join-irreducible `j`.
    pub delta: BTreeMap<usize, usize>,
    /// `beta[m] = max{i | m ≥ x_{i-1}}` for meet-irreducible `m`.
    pub beta: BTreeMap<usize, usize>,
    pub chain: ChainPhi,
}

#[derive(Clone, Debug)]
pub struct GammaLabellings {
    /// Minimum of `delta` over join-irreducibles below `c` and not below `b`.
    pub gamma1: EdgeLabelling,
    /// `max{i | c ∧ x_{i-1} ≤ b}`.
    pub gamma1p: EdgeLabelling,
    /// Maximum of `beta` over meet-irreducibles above `b` and not above `c`.
    pub gamma2: EdgeLabelling,
    /// `min{i | b ∨ x_i ≥ c}`.
    pub gamma2p: EdgeLabelling,
}

pub fn gamma_labellings(l: &Lattice, phi: &ChainPhi) -> GammaLabellings {
    let x = &phi.elements;
    let k = phi.len();
    let jirr = l.join_irreducibles();
    let mirr = l.meet_irreducibles();
    let delta: BTreeMap<usize, usize> = jirr
        .iter()
        .map(|&j| (j, (0..=k).find(|&i| l.leq(j, x[i])).unwrap()))
        .collect();
    let beta: BTreeMap<usize, usize> = mirr
        .iter()
        .map(|&m| (m, (1..=k).rev().find(|&i| l.leq(x[i - 1], m)).unwrap()))
        .collect();
    let mut g1 = Vec::new();
    let mut g1p = Vec::new();
    let mut g2 = Vec::new();
    let mut g2p = Vec::new();
    for &(b, c) in l.edges() {
        g1.push(
            jirr.iter()
                .filter(|&&j| l.leq(j, c) && !l.leq(j, b))
                .map(|j| delta[j])
                .min()
                .unwrap(),
        );
        g1p.push(
            (1..=k)
                .rev()
                .find(|&i| l.leq(l.meet(c, x[i - 1]), b))
                .unwrap(),
        );
        g2.push(
            mirr.iter()
                .filter(|&&m| l.leq(b, m) && !l.leq(c, m))
                .map(|m| beta[m])
                .max()
                .unwrap(),
        );
        g2p.push((1..=k).find(|&i| l.leq(c, l.join(b, x[i]))).unwrap());
    }
    let make = |labels| EdgeLabelling {
        labels,
        delta: delta.clone(),
        beta: beta.clone(),
        chain: phi.clone(),
    };
    GammaLabellings {
        gamma1: make(g1),
        gamma1p: make(g1p),
        gamma2: make(g2),
        gamma2p: make(g2p),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LabellingCheck {
    pub gamma2_eq: bool,
    pub chain_order: bool,
    pub equality: bool,
    pub all_phi_lm: bool,
}

/// Checks `γ2 = γ2′ ≤ γ1 = γ1′`, and that `γ1′ = γ2′` exactly when every chain element is left modular.
pub fn verify_labelling_theorem(l: &Lattice, phi: &ChainPhi) -> Result<LabellingCheck> {
    let g = gamma_labellings(l, phi);
    let gamma2_eq = g.gamma2.labels == g.gamma2p.labels && g.gamma1.labels == g.gamma1p.labels;
    let chain_order = g
        .gamma2p
        .labels
        .iter()
        .zip(&g.gamma1p.labels)
        .all(|(a, b)| a <= b);
    let equality = g.gamma1p.labels == g.gamma2p.labels;
    let all_phi_lm = phi.elements.iter().all(|&a| is_left_modular_element(l, a));
    let check = LabellingCheck {
        gamma2_eq,
        chain_order,
        equality,
        all_phi_lm,
    };
    if !gamma2_eq || !chain_order || equality != all_phi_lm {
        return Err(Error::TheoremViolation(format!(
            "labelling check {check:?} on chain {:?}",
            phi.elements
        )));
    }
    Ok(check)
}

/// First cover `b ⋖ c` with `a∨b = a∨c` and `a∧b = a∧c`, if any.
pub fn left_modular_witness(l: &Lattice, a: usize) -> Option<(usize, usize)> {
    l.edges()
        .iter()
        .copied()
        .find(|&(b, c)| l.join(a, b) == l.join(a, c) && l.meet(a, b) == l.meet(a, c))
}

pub fn is_left_modular_element(l: &Lattice, a: usize) -> bool {
    left_modular_witness(l, a).is_none()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LmReport {
    pub lm_elements: BitSet,
    pub counterexamples: BTreeMap<usize, (usize, usize)>,
    pub lm_chain: Option<Vec<usize>>,
}

pub fn left_modular(l: &Lattice) -> LmReport {
    let n = l.n();
    let mut lm_elements = BitSet::new(n);
    let mut counterexamples = BTreeMap::new();
    for a in 0..n {
        match left_modular_witness(l, a) {
            None => lm_elements.insert(a),
            Some(e) => {
                counterexamples.insert(a, e);
            }
        }
    }
    let lm_chain = lm_chain_in(l, &lm_elements);
    if let Some(c) = &lm_chain {
        assert_eq!(c.len() - 1, l.length(), "left modular chain is not longest");
    }
    LmReport {
        lm_elements,
        counterexamples,
        lm_chain,
    }
}

/// Lexicographically smallest maximal chain inside `allowed`.
pub fn lm_chain_in(l: &Lattice, allowed: &BitSet) -> Option<Vec<usize>> {
    let n = l.n();
    // Elements from which the top is reachable inside `allowed`.
    let mut alive = BitSet::new(n);
    for x in (0..n).rev() {
        if allowed.contains(x)
            && (x == l.top() || l.upper_covers(x).iter().any(|&y| alive.contains(y)))
        {
            alive.insert(x);
        }
    }
    if !alive.contains(0) {
        return None;
    }
    let mut chain = vec![0];
    let mut x = 0;
    while x != l.top() {
        x = *l.upper_covers(x).iter().find(|&&y| alive.contains(y))?;
        chain.push(x);
    }
    Some(chain)
}

/// Elements lying on some maximal chain inside `allowed`.
pub fn on_some_chain_in(l: &Lattice, allowed: &BitSet) -> BitSet {
    let n = l.n();
    let mut fwd = BitSet::new(n);
    for x in 0..n {
        if allowed.contains(x)
            && (x == 0 || l.lower_covers(x).iter().any(|&y| fwd.contains(y)))
        {
            fwd.insert(x);
        }
    }
    let mut bwd = BitSet::new(n);
    for x in (0..n).rev() {
        if allowed.contains(x)
            && (x == l.top() || l.upper_covers(x).iter().any(|&y| bwd.contains(y)))
        {
            bwd.insert(x);
        }
    }
    fwd.and(&bwd)
}

#[derive(Default, Clone)]
struct IntervalWords {
    chains: usize,
    increasing: usize,
    inc_word: Option<Vec<usize>>,
    min_other: Option<Vec<usize>>,
}

/// Exhaustive EL check: every interval has exactly one weakly increasing maximal chain,
/// and its label word is lexicographically first.
pub fn is_el_labelling(l: &Lattice, labels: &[usize], cap: usize) -> Result<bool> {
    assert_eq!(labels.len(), l.edges().len());
    let n = l.n();
    for x in 0..n {
        let mut table = vec![IntervalWords::default(); n];
        let mut word = Vec::new();
        walk(l, labels, x, &mut word, true, &mut table, cap)?;
        for (y, t) in table.iter().enumerate() {
            if y == x || t.chains == 0 {
                continue;
            }
            if t.increasing != 1 {
                return Ok(false);
            }
            if let Some(o) = &t.min_other {
                if t.inc_word.as_ref().unwrap() >= o {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn walk(
    l: &Lattice,
    labels: &[usize],
    x: usize,
    word: &mut Vec<usize>,
    inc: bool,
    table: &mut [IntervalWords],
    cap: usize,
) -> Result<()> {
    for &y in l.upper_covers(x) {
        let lab = labels[l.edge_index(x, y).unwrap()];
        let inc2 = inc && word.last().map_or(true, |&p| p <= lab);
        word.push(lab);
        let t = &mut table[y];
        t.chains += 1;
        if t.chains > cap {
            return Err(Error::CapExceeded {
                what: "maximal chains of an interval",
                cap,
            });
        }
        if inc2 {
            t.increasing += 1;
            if t.inc_word.is_none() {
                t.inc_word = Some(word.clone());
            }
        } else if t.min_other.as_ref().map_or(true, |o| word.as_slice() < o.as_slice()) {
            t.min_other = Some(word.clone());
        }
        walk(l, labels, y, word, inc2, table, cap)?;
        word.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_lattice;
    use crate::lattice::fixtures::{b2, m3, n5};

    fn pentagon_left() -> Lattice {
        // x0=0, x1=1, x2=2, r=3, x3=4
        build_lattice(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)], None).unwrap()
    }

    fn right_figure() -> Lattice {
        // x0=0, x1=1, m=2, b=3, x2=4, c=5, x3=6
        build_lattice(
            7,
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (2, 5), (3, 5), (4, 6), (5, 6)],
            None,
        )
        .unwrap()
    }

    fn label_of(l: &Lattice, lab: &EdgeLabelling, b: usize, c: usize) -> usize {
        lab.labels[l.edge_index(b, c).unwrap()]
    }

    #[test]
    fn left_figure_labels() {
        let l = pentagon_left();
        let phi = ChainPhi::new(&l, vec![0, 1, 2, 4]).unwrap();
        let g = gamma_labellings(&l, &phi);
        let expected = [((0, 1), 1), ((1, 2), 2), ((2, 4), 3), ((0, 3), 3), ((3, 4), 1)];
        for ((b, c), v) in expected {
            assert_eq!(label_of(&l, &g.gamma1p, b, c), v);
            assert_eq!(label_of(&l, &g.gamma2p, b, c), v);
        }
        let chk = verify_labelling_theorem(&l, &phi).unwrap();
        assert!(chk.equality && chk.all_phi_lm);
    }

    #[test]
    fn right_figure_labels() {
        let l = right_figure();
        let phi = ChainPhi::new(&l, vec![0, 1, 4, 6]).unwrap();
        let g = gamma_labellings(&l, &phi);
        let expected = [
            ((0, 1), (1, 1)),
            ((0, 2), (2, 2)),
            ((1, 4), (2, 2)),
            ((3, 5), (2, 1)),
            ((2, 4), (1, 1)),
            ((5, 6), (1, 1)),
            ((4, 6), (3, 3)),
            ((2, 5), (3, 3)),
            ((0, 3), (3, 3)),
        ];
        for ((b, c), (p1, p2)) in expected {
            assert_eq!(label_of(&l, &g.gamma1p, b, c), p1, "γ1′ on {b}⋖{c}");
            assert_eq!(label_of(&l, &g.gamma2p, b, c), p2, "γ2′ on {b}⋖{c}");
        }
        let chk = verify_labelling_theorem(&l, &phi).unwrap();
        assert!(!chk.equality && !chk.all_phi_lm);
        assert!(!is_left_modular_element(&l, 1));
        assert!(is_left_modular_element(&l, 4));
    }

    #[test]
    fn chain_labels_are_positions() {
        let l = Lattice::chain(4);
        let phi = ChainPhi::canonical(&l);
        let g = gamma_labellings(&l, &phi);
        for lab in [&g.gamma1, &g.gamma1p, &g.gamma2, &g.gamma2p] {
            assert_eq!(lab.labels, vec![1, 2, 3, 4]);
        }
        assert!(is_el_labelling(&l, &g.gamma1.labels, DEFAULT_EL_CAP).unwrap());
    }

    #[test]
    fn n5_left_modularity() {
        let l = n5();
        let r = left_modular(&l);
        assert_eq!(r.lm_elements.to_vec(), vec![0, 1, 2, 4]);
        assert_eq!(r.counterexamples.keys().copied().collect::<Vec<_>>(), vec![3]);
        assert_eq!(r.lm_chain, Some(vec![0, 1, 2, 4]));
        let g = gamma_labellings(&l, &ChainPhi::new(&l, vec![0, 1, 2, 4]).unwrap());
        assert!(is_el_labelling(&l, &g.gamma1.labels, DEFAULT_EL_CAP).unwrap());
    }

    #[test]
    fn m3_all_left_modular() {
        let r = left_modular(&m3());
        assert_eq!(r.lm_elements.count(), 5);
        assert!(r.lm_chain.is_some());
    }

    #[test]
    fn constant_labels_on_b2_fail() {
        let l = b2();
        assert!(!is_el_labelling(&l, &[1, 1, 1, 1], DEFAULT_EL_CAP).unwrap());
    }

    #[test]
    fn el_cap() {
        let l = Lattice::boolean(4);
        let labs = vec![0; l.edges().len()];
        assert!(matches!(
            is_el_labelling(&l, &labs, 10),
            Err(Error::CapExceeded { .. })
        ));
    }
}
