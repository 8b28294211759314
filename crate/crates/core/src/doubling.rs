//! Day doubling of convex sets, doubling scripts and their certificates.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::labelling::{left_modular, on_some_chain_in};
use crate::lattice::Lattice;
use crate::poset::Poset;

/// The one-element lattice every script starts from.
pub fn singleton() -> Lattice {
    let mut p = Poset::from_covers(1, &[]).unwrap();
    p.set_labels(Some(vec![String::new()]));
    Lattice::from_poset_unchecked(p)
}

pub fn check_convex(l: &Lattice, c: &BitSet) -> Result<()> {
    if c.is_empty() {
        return Err(Error::EmptyConvexSet);
    }
    if !l.is_convex(c) {
        return Err(Error::NotConvex { step: None });
    }
    Ok(())
}

pub fn convex_from_ids(l: &Lattice, ids: &[usize]) -> Result<BitSet> {
    let mut c = BitSet::new(l.n());
    for &x in ids {
        if x >= l.n() {
            return Err(Error::IndexOutOfRange(x, l.n()));
        }
        c.insert(x);
    }
    check_convex(l, &c)?;
    Ok(c)
}

pub fn interval(l: &Lattice, a: usize, b: usize) -> Result<BitSet> {
    for x in [a, b] {
        if x >= l.n() {
            return Err(Error::IndexOutOfRange(x, l.n()));
        }
    }
    if !l.leq(a, b) {
        return Err(Error::InvalidParameter(format!("{a} is not below {b}")));
    }
    Ok(l.up(a).and(l.down(b)))
}

/// Elements of `C` above all its minimal and below all its maximal elements.
pub fn heart(l: &Lattice, c: &BitSet) -> Result<BitSet> {
    check_convex(l, c)?;
    let mut h = c.clone();
    for x in l.min_of(c) {
        h.intersect_with(l.up(x));
    }
    for x in l.max_of(c) {
        h.intersect_with(l.down(x));
    }
    Ok(h)
}

/// Elements `a` of `C` whose joins and meets with every member of `C` stay in `C`.
pub fn heart_by_closure(l: &Lattice, c: &BitSet) -> BitSet {
    BitSet::from_iter(
        l.n(),
        c.iter()
            .filter(|&a| c.iter().all(|b| c.contains(l.join(a, b)) && c.contains(l.meet(a, b)))),
    )
}

/// The doubling `L[C]`: `I(C)×{0}` together with `((L∖I(C)) ∪ C)×{1}`, ordered componentwise.
pub fn double(l: &Lattice, c: &BitSet) -> Result<Lattice> {
    check_convex(l, c)?;
    let n = l.n();
    let ic = l.down_closure(c);
    let mut idx = vec![[usize::MAX; 2]; n];
    let mut parents = Vec::new();
    for x in 0..n {
        if ic.contains(x) {
            idx[x][0] = parents.len();
            parents.push((x, 0));
        }
        if !ic.contains(x) || c.contains(x) {
            idx[x][1] = parents.len();
            parents.push((x, 1));
        }
    }
    let m = parents.len();
    let mut down = Vec::with_capacity(m);
    for &(y, e) in &parents {
        let mut d = BitSet::new(m);
        for x in l.down(y) {
            for f in 0..=e {
                if idx[x][f] != usize::MAX {
                    d.insert(idx[x][f]);
                }
            }
        }
        down.push(d);
    }
    let mut p = Poset::from_down_sets(down);
    p.set_labels(Some(
        parents
            .iter()
            .map(|&(x, e)| format!("{}{e}", l.label(x)))
            .collect(),
    ));
    let out = Lattice::from_poset_unchecked(p);

    let before = l.extremality();
    let after = out.extremality();
    let hits = !c.is_disjoint(&l.length_spine().spine);
    if after.jirr != before.jirr + l.min_of(c).len()
        || after.mirr != before.mirr + l.max_of(c).len()
        || after.length != before.length + hits as usize
    {
        return Err(Error::TheoremViolation(
            "irreducible or length count after doubling".into(),
        ));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Step {
    Convex(Vec<usize>),
    Interval([usize; 2]),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoublingScript {
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepCertificate {
    pub is_interval: bool,
    pub is_lower_pseudo: bool,
    pub is_upper_pseudo: bool,
    pub hits_spine: bool,
    pub heart: Vec<usize>,
    pub heart_hits_lm_chain: bool,
    pub minimal: usize,
    pub maximal: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoublingCertificate {
    pub steps: Vec<StepCertificate>,
    pub congruence_uniform: bool,
    pub join_cu: bool,
    pub meet_cu: bool,
    pub congruence_normal: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub extremal: bool,
    pub join_extremal: bool,
    pub meet_extremal: bool,
    pub left_modular: bool,
}

impl Step {
    pub fn resolve(&self, l: &Lattice) -> Result<BitSet> {
        match self {
            Step::Convex(ids) => convex_from_ids(l, ids),
            Step::Interval([a, b]) => interval(l, *a, *b),
        }
    }
}

pub fn certify_step(l: &Lattice, c: &BitSet) -> Result<StepCertificate> {
    let h = heart(l, c)?;
    let minimal = l.min_of(c).len();
    let maximal = l.max_of(c).len();
    let lm = left_modular(l);
    let on_chain = on_some_chain_in(l, &lm.lm_elements);
    Ok(StepCertificate {
        is_interval: minimal == 1 && maximal == 1,
        is_lower_pseudo: minimal == 1,
        is_upper_pseudo: maximal == 1,
        hits_spine: !c.is_disjoint(&l.length_spine().spine),
        heart_hits_lm_chain: !h.is_disjoint(&on_chain),
        heart: h.to_vec(),
        minimal,
        maximal,
    })
}

/// Runs a script from the one-element lattice, returning every intermediate lattice.
pub fn run_script_levels(script: &DoublingScript) -> Result<(Vec<Lattice>, DoublingCertificate)> {
    let mut levels = vec![singleton()];
    let mut steps = Vec::new();
    for (i, step) in script.steps.iter().enumerate() {
        let l = levels.last().unwrap();
        let c = step.resolve(l).map_err(|e| match e {
            Error::NotConvex { .. } => Error::NotConvex { step: Some(i) },
            e => e,
        })?;
        steps.push(certify_step(l, &c)?);
        let next = double(l, &c)?;
        levels.push(next);
    }
    let cert = DoublingCertificate {
        congruence_uniform: steps.iter().all(|s| s.is_interval),
        join_cu: steps.iter().all(|s| s.is_lower_pseudo),
        meet_cu: steps.iter().all(|s| s.is_upper_pseudo),
        congruence_normal: true,
        steps,
    };
    Ok((levels, cert))
}

pub fn run_script(script: &DoublingScript) -> Result<(Lattice, DoublingCertificate)> {
    let (mut levels, cert) = run_script_levels(script)?;
    Ok((levels.pop().unwrap(), cert))
}

/// Verdicts read off the certificate alone.
pub fn certify(cert: &DoublingCertificate) -> Verdicts {
    let hits = cert.steps.iter().all(|s| s.hits_spine);
    Verdicts {
        extremal: cert.congruence_uniform && hits,
        join_extremal: cert.join_cu && hits,
        meet_extremal: cert.meet_cu && hits,
        left_modular: cert.steps.iter().all(|s| s.heart_hits_lm_chain),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScriptMode {
    UniformInterval,
    ForceSpine,
    Normal,
}

pub fn random_script(steps: usize, seed: u64, mode: ScriptMode) -> DoublingScript {
    random_script_bounded(steps, seed, mode, None)
}

/// Like `random_script`, but stops early rather than exceed `max_elements`.
pub fn random_script_bounded(
    steps: usize,
    seed: u64,
    mode: ScriptMode,
    max_elements: Option<usize>,
) -> DoublingScript {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_script_with(&mut rng, steps, mode, max_elements)
}

pub fn random_script_with<R: Rng>(
    rng: &mut R,
    steps: usize,
    mode: ScriptMode,
    max_elements: Option<usize>,
) -> DoublingScript {
    let mut script = DoublingScript::default();
    let mut l = singleton();
    for i in 0..steps {
        let room = max_elements.map_or(usize::MAX, |m| m.saturating_sub(l.n()));
        let step = if i == 0 {
            if room == 0 {
                break;
            }
            Some(Step::Convex(vec![0]))
        } else {
            match mode {
                ScriptMode::UniformInterval | ScriptMode::ForceSpine => {
                    pick_interval(rng, &l, mode == ScriptMode::ForceSpine, room)
                }
                ScriptMode::Normal => pick_hull(rng, &l, room),
            }
        };
        let Some(step) = step else { break };
        let c = step.resolve(&l).expect("generated step is convex");
        l = double(&l, &c).expect("doubling a convex set");
        script.steps.push(step);
    }
    script
}

fn pick_interval<R: Rng>(rng: &mut R, l: &Lattice, force_spine: bool, room: usize) -> Option<Step> {
    let spine = l.length_spine().spine;
    let mut pairs = Vec::new();
    for a in 0..l.n() {
        for b in l.up(a) {
            let iv = l.up(a).and(l.down(b));
            if iv.count() <= room && (!force_spine || !iv.is_disjoint(&spine)) {
                pairs.push([a, b]);
            }
        }
    }
    if pairs.is_empty() {
        return None;
    }
    Some(Step::Interval(pairs[rng.gen_range(0..pairs.len())]))
}

fn random_antichain<R: Rng>(rng: &mut R, l: &Lattice) -> Vec<usize> {
    let k = rng.gen_range(1..=3);
    let mut a: Vec<usize> = Vec::new();
    for _ in 0..k {
        let x = rng.gen_range(0..l.n());
        if a.iter().all(|&y| !l.comparable(x, y)) {
            a.push(x);
        }
    }
    a
}

fn pick_hull<R: Rng>(rng: &mut R, l: &Lattice, room: usize) -> Option<Step> {
    for _ in 0..32 {
        let lo = BitSet::from_iter(l.n(), random_antichain(rng, l));
        let hi = BitSet::from_iter(l.n(), random_antichain(rng, l));
        let hull = l.up_closure(&lo).and(&l.down_closure(&hi));
        if !hull.is_empty() && hull.count() <= room {
            return Some(Step::Convex(hull.to_vec()));
        }
    }
    (room >= 1).then(|| Step::Convex(vec![rng.gen_range(0..l.n())]))
}
