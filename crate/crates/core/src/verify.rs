//! Randomised and table-driven checks of the main structural results.
//!
//! Every random instance draws from its own ChaCha8 stream keyed by the seed
//! and the instance index, so summaries do not depend on the thread count.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Duration;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::dimension::{critical_pairs_lattice, dim_bounds, dim_sd_extremal, dimension_oracle};
use crate::doubling::{certify, random_script_with, run_script, ScriptMode};
use crate::error::{Error, Result};
use crate::families::gentle::{torsion_dim, tors_lattice, GentleQuiver};
use crate::families::{bubble, hochschild, parabolic_tamari, word_lattice, Composition};
use crate::families::{compatibility_graph, parabolic_tamari_graph};
use crate::galois::galois_consistency;
use crate::graph::UndirectedGraph;
use crate::labelling::{left_modular, verify_labelling_theorem};
use crate::lattice::{are_isomorphic, direct_product, dual, ChainPhi, Lattice};
use crate::poset::Poset;
use crate::shelling::{disjoint_source_sets, facet_adjacency, DEFAULT_CHAIN_CAP};
use crate::tafs::{admits_tafs, classify_arrows, counterexample_pipeline, is_tafs, TafsMode};

pub const SUITES: &[&str] = &["labelling", "doubling", "galois", "dimension", "dilworth", "tafs", "families"];
pub const DEFAULT_COUNT: usize = 50;
const MAX_FAILURES: usize = 10;
const ORACLE_PAIR_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub count: usize,
    pub jobs: Option<usize>,
    pub budget: Option<Duration>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            count: DEFAULT_COUNT,
            jobs: None,
            budget: Some(crate::dimension::DEFAULT_BUDGET),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Skip(String),
    Fail(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub seed: u64,
    pub total: usize,
    pub passed: usize,
    pub skipped: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

impl SuiteSummary {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

type Check = Box<dyn Fn() -> Outcome + Send + Sync>;

/// Generator for instance `idx` of a random suite.
pub fn instance_rng(seed: u64, idx: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(idx as u64);
    rng
}

pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<SuiteSummary> {
    let checks = suite_checks(name, opts)?;
    let run = || -> Vec<(String, Outcome)> {
        checks
            .par_iter()
            .map(|(label, check)| {
                let out = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
                    let msg = p
                        .downcast_ref::<String>()
                        .cloned()
                        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                        .unwrap_or_default();
                    Outcome::Fail(format!("panic: {msg}"))
                });
                (label.clone(), out)
            })
            .collect()
    };
    let results = match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?
            .install(run),
        None => run(),
    };
    let mut summary = SuiteSummary {
        suite: name.to_string(),
        seed: opts.seed,
        total: results.len(),
        passed: 0,
        skipped: 0,
        failed: 0,
        failures: Vec::new(),
    };
    for (label, out) in results {
        match out {
            Outcome::Pass => summary.passed += 1,
            Outcome::Skip(_) => summary.skipped += 1,
            Outcome::Fail(why) => {
                summary.failed += 1;
                if summary.failures.len() < MAX_FAILURES {
                    summary.failures.push(format!("{label}: {why}"));
                }
            }
        }
    }
    Ok(summary)
}

fn suite_checks(name: &str, opts: &VerifyOptions) -> Result<Vec<(String, Check)>> {
    let random: fn(&mut ChaCha8Rng, &VerifyOptions) -> Result<Outcome> = match name {
        "labelling" => labelling_instance,
        "doubling" => doubling_instance,
        "galois" => galois_instance,
        "dimension" => dimension_instance,
        "dilworth" => dilworth_instance,
        "tafs" => return Ok(tafs_checks(opts)),
        "families" => return Ok(family_checks(opts)),
        _ => return Err(Error::SuiteUnknown(name.to_string())),
    };
    let opts = *opts;
    Ok((0..opts.count)
        .map(|idx| {
            let check: Check = Box::new(move || {
                let mut rng = instance_rng(opts.seed, idx);
                outcome(random(&mut rng, &opts))
            });
            (format!("{name}#{idx}"), check)
        })
        .collect())
}

fn outcome(r: Result<Outcome>) -> Outcome {
    r.unwrap_or_else(|e| Outcome::Fail(e.to_string()))
}

fn fail(msg: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome::Fail(msg.into()))
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<Outcome> {
    if got == want {
        Ok(Outcome::Pass)
    } else {
        fail(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

/// Uniformly random maximal chain, choosing an upper cover at each step.
pub fn random_maximal_chain<R: Rng>(l: &Lattice, rng: &mut R) -> Vec<usize> {
    let mut chain = vec![l.bottom()];
    let mut x = l.bottom();
    while x != l.top() {
        let covers = l.upper_covers(x);
        x = covers[rng.gen_range(0..covers.len())];
        chain.push(x);
    }
    chain
}

fn labelling_instance(rng: &mut ChaCha8Rng, _: &VerifyOptions) -> Result<Outcome> {
    let steps = rng.gen_range(1..=10);
    let script = random_script_with(rng, steps, ScriptMode::Normal, Some(30));
    let (l, _) = run_script(&script)?;
    let chain = random_maximal_chain(&l, rng);
    let phi = ChainPhi::new(&l, chain)?;
    verify_labelling_theorem(&l, &phi)?;
    Ok(Outcome::Pass)
}

fn cu_lattice(rng: &mut ChaCha8Rng, max_steps: usize, max_elements: usize) -> Result<(Lattice, crate::doubling::DoublingCertificate)> {
    let mode = if rng.gen_bool(0.5) {
        ScriptMode::ForceSpine
    } else {
        ScriptMode::UniformInterval
    };
    let steps = rng.gen_range(1..=max_steps);
    let script = random_script_with(rng, steps, mode, Some(max_elements));
    run_script(&script)
}

fn doubling_instance(rng: &mut ChaCha8Rng, _: &VerifyOptions) -> Result<Outcome> {
    let (l, cert) = cu_lattice(rng, 12, 40)?;
    if !cert.congruence_uniform {
        return fail("interval script produced a non-uniform certificate");
    }
    let verdicts = certify(&cert);
    let direct = l.extremality().extremal;
    let lm = left_modular(&l).lm_chain.is_some();
    let fa = facet_adjacency(&l, DEFAULT_CHAIN_CAP)?;
    let no_disjoint = disjoint_source_sets(&fa.graph).found.is_none();
    let row = [verdicts.extremal, direct, lm, no_disjoint];
    if row.iter().any(|&b| b != row[0]) {
        return fail(format!(
            "certificate/extremal/lm chain/no disjoint source sets disagree: {row:?} on {} elements",
            l.n()
        ));
    }
    expect_eq("certificate left modular verdict", verdicts.left_modular, lm)
}

fn galois_instance(rng: &mut ChaCha8Rng, _: &VerifyOptions) -> Result<Outcome> {
    let steps = rng.gen_range(1..=10);
    let script = random_script_with(rng, steps, ScriptMode::ForceSpine, Some(40));
    let (l, _) = run_script(&script)?;
    if !l.extremality().extremal {
        return Ok(Outcome::Skip("not extremal".into()));
    }
    galois_consistency(&l)?;
    Ok(Outcome::Pass)
}

fn dimension_instance(rng: &mut ChaCha8Rng, opts: &VerifyOptions) -> Result<Outcome> {
    let steps = rng.gen_range(2..=8);
    let script = random_script_with(rng, steps, ScriptMode::ForceSpine, Some(24));
    let (l, _) = run_script(&script)?;
    if l.n() < 2 || !l.extremality().extremal {
        return Ok(Outcome::Skip("not an extremal lattice with two elements".into()));
    }
    let cp = critical_pairs_lattice(&l)?;
    if cp.pairs.len() > ORACLE_PAIR_LIMIT {
        return Ok(Outcome::Skip(format!("{} critical pairs", cp.pairs.len())));
    }
    let chi = dim_sd_extremal(&l, opts.budget)?.chi;
    let oracle = dimension_oracle(&l, crate::dimension::DEFAULT_ORACLE_CAP)?;
    let b = dim_bounds(&l);
    if !(b.lower <= chi && chi <= b.upper && b.cover_lb <= chi) {
        return fail(format!("dimension {chi} outside bounds {b:?}"));
    }
    expect_eq("chromatic dimension vs critical pair oracle", chi, oracle)
}

/// Random poset on at most 8 elements, as a transitively closed relation.
pub fn random_poset<R: Rng>(rng: &mut R, max_n: usize) -> Poset {
    let n = rng.gen_range(1..=max_n);
    let p: f64 = rng.gen_range(0.1..0.6);
    let mut rel = vec![vec![false; n]; n];
    for (i, row) in rel.iter_mut().enumerate() {
        row[i] = true;
        for cell in row.iter_mut().skip(i + 1) {
            *cell = rng.gen_bool(p);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if rel[i][k] && rel[k][j] {
                    rel[i][j] = true;
                }
            }
        }
    }
    Poset::from_relation(n, |a, b| rel[a][b]).expect("closed order relation")
}

/// Down-sets of `p` ordered by inclusion.
pub fn ideal_lattice(p: &Poset) -> Lattice {
    let n = p.n();
    let mut ideals: Vec<BitSet> = (0u32..1 << n)
        .map(|mask| BitSet::from_iter(n, (0..n).filter(|i| mask >> i & 1 == 1)))
        .filter(|s| s.iter().all(|x| p.down(x).is_subset(s)))
        .collect();
    ideals.sort_by(|a, b| (a.count(), a.to_vec()).cmp(&(b.count(), b.to_vec())));
    let poset = Poset::from_relation(ideals.len(), |a, b| ideals[a].is_subset(&ideals[b])).expect("inclusion order");
    Lattice::from_poset(poset).expect("down-sets form a lattice")
}

fn dilworth_instance(rng: &mut ChaCha8Rng, opts: &VerifyOptions) -> Result<Outcome> {
    let p = random_poset(rng, 8);
    let l = ideal_lattice(&p);
    let dim = dim_sd_extremal(&l, opts.budget)?.chi;
    if l.jirr_width() != p.width() {
        return fail(format!("join-irreducible width {} vs poset width {}", l.jirr_width(), p.width()));
    }
    expect_eq("dimension of down-set lattice vs width", dim, p.width())
}

/// Random triangle-free graph on `m` vertices.
pub fn random_triangle_free<R: Rng>(rng: &mut R, m: usize, max_edges: usize) -> Vec<(usize, usize)> {
    let mut g = UndirectedGraph::new(m);
    let mut pairs: Vec<(usize, usize)> = (0..m).flat_map(|u| (u + 1..m).map(move |v| (u, v))).collect();
    for i in (1..pairs.len()).rev() {
        pairs.swap(i, rng.gen_range(0..=i));
    }
    for (u, v) in pairs {
        if g.edge_count() == max_edges {
            break;
        }
        if g.neighbors(u).is_disjoint(g.neighbors(v)) {
            g.add_edge(u, v);
        }
    }
    g.edges()
}

fn tafs_checks(opts: &VerifyOptions) -> Vec<(String, Check)> {
    let mut checks: Vec<(String, Check)> = vec![
        (
            "counterexample pipeline".into(),
            Box::new(|| {
                outcome(counterexample_pipeline(true).and_then(|r| {
                    if r.sd && r.extremal && r.triangle_free && r.grotzsch && r.chi == 4 && !r.admits_tafs {
                        Ok(Outcome::Pass)
                    } else {
                        fail(format!("{r:?}"))
                    }
                }))
            }),
        ),
        (
            "counterexample size matches the expected count of 167".into(),
            Box::new(|| outcome(counterexample_pipeline(false).and_then(|r| expect_eq("elements", r.elements, 167)))),
        ),
    ];
    let seed = opts.seed;
    for idx in 0..opts.count {
        let check: Check = Box::new(move || outcome(random_tafs_instance(&mut instance_rng(seed, idx))));
        checks.push((format!("tafs#{idx}"), check));
    }
    checks
}

fn random_tafs_instance(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let m = rng.gen_range(3..=9);
    let edges = random_triangle_free(rng, m, 14);
    let by_chi = admits_tafs(m, &edges, TafsMode::TrianglefreeChi, crate::tafs::DEFAULT_ORIENTATION_CAP)?;
    let by_search = admits_tafs(m, &edges, TafsMode::OrientationSearch, crate::tafs::DEFAULT_ORIENTATION_CAP)?;
    if by_chi.admits != by_search.admits {
        return fail(format!("modes disagree on {edges:?}"));
    }
    for w in [by_chi.witness, by_search.witness].into_iter().flatten() {
        let check = is_tafs(&classify_arrows(m, &w));
        if !check.ok {
            return fail(format!("witness {w:?} is not a TAFS: {:?}", check.violation));
        }
    }
    Ok(Outcome::Pass)
}

fn family_checks(opts: &VerifyOptions) -> Vec<(String, Check)> {
    let budget = opts.budget;
    let mut checks: Vec<(String, Check)> = Vec::new();
    let mut add = |label: String, f: Box<dyn Fn() -> Result<Outcome> + Send + Sync>| {
        checks.push((label, Box::new(move || outcome(f()))));
    };
    for n in 1..=8 {
        add(
            format!("dim Hoch({n})"),
            Box::new(move || expect_eq("dim", dim_sd_extremal(&hochschild(n)?.1, budget)?.chi, n)),
        );
    }
    for s in 1..=6 {
        for m in 0..=s {
            let n = s - m;
            add(
                format!("dim Bub({m},{n})"),
                Box::new(move || expect_eq("dim", dim_sd_extremal(&bubble(m, n)?.1, budget)?.chi, m + n)),
            );
        }
    }
    for m in 1..=3 {
        for n in 1..=5 {
            add(
                format!("dim W({m},{n})"),
                Box::new(move || expect_eq("dim", dim_sd_extremal(&word_lattice(m, n)?, budget)?.chi, n)),
            );
            if n >= 2 {
                add(
                    format!("width JIrr W({m},{n}) is n+1"),
                    Box::new(move || expect_eq("width", word_lattice(m, n)?.jirr_width(), n + 1)),
                );
            }
        }
    }
    for n in 1..=7usize {
        for mask in 0u32..1 << (n - 1) {
            let alpha = composition_from_mask(n, mask);
            add(
                format!("dim Tam{alpha}"),
                Box::new(move || {
                    let (_, l) = parabolic_tamari(&alpha)?;
                    if l.n() < 2 {
                        return expect_eq("trivial lattice", n - alpha.max_part(), 0);
                    }
                    if compatibility_graph(&alpha) != parabolic_tamari_graph(&alpha).complement() {
                        return fail("compatibility graph is not the Galois complement");
                    }
                    expect_eq("dim", dim_sd_extremal(&l, budget)?.chi, n - alpha.max_part())
                }),
            );
        }
    }
    for n in 1..=6usize {
        for mask in 0u64..1 << (n - 1) {
            add(
                format!("dim tors A{n} orientation {mask:b}"),
                Box::new(move || expect_eq("dim", torsion_dim(&GentleQuiver::path(n, mask)?, budget)?.dim, n)),
            );
        }
    }
    add(
        "tors of the source-sink A3 has 14 elements".into(),
        Box::new(|| expect_eq("elements", tors_lattice(&GentleQuiver::path(3, 0b10)?)?.n(), 14)),
    );
    add(
        "dim Hoch(2) x Hoch(3) is 5".into(),
        Box::new(move || {
            let l = direct_product(&hochschild(2)?.1, &hochschild(3)?.1);
            expect_eq("dim", dim_sd_extremal(&l, budget)?.chi, 5)
        }),
    );
    for n in 2..=5 {
        add(
            format!("Hoch({n}) = Bub(1,{}) = dual Bub({},1) = W(1,{n})", n - 1, n - 1),
            Box::new(move || {
                let h = hochschild(n)?.1;
                let ok = are_isomorphic(&h, &bubble(1, n - 1)?.1)
                    && are_isomorphic(&h, &dual(&bubble(n - 1, 1)?.1))
                    && are_isomorphic(&h, &word_lattice(1, n)?);
                expect_eq("isomorphic", ok, true)
            }),
        );
    }
    for n in 1..=7 {
        add(
            format!("Tam(1^{n}) has Catalan many elements"),
            Box::new(move || expect_eq("elements", parabolic_tamari(&Composition::ones(n)?)?.1.n(), catalan(n))),
        );
    }
    for n in 1..=4usize {
        add(
            format!("tors linear A{n} = Tam(1^{})", n + 1),
            Box::new(move || {
                let t = tors_lattice(&GentleQuiver::path(n, 0)?)?;
                let tam = parabolic_tamari(&Composition::ones(n + 1)?)?.1;
                expect_eq("isomorphic", are_isomorphic(&t, &tam), true)
            }),
        );
    }
    checks
}

/// Composition of `n` whose part boundaries are the set bits of `mask`.
pub fn composition_from_mask(n: usize, mask: u32) -> Composition {
    let mut parts = Vec::new();
    let mut run = 1;
    for i in 0..n - 1 {
        if mask >> i & 1 == 1 {
            parts.push(run);
            run = 1;
        } else {
            run += 1;
        }
    }
    parts.push(run);
    Composition::new(parts).expect("positive parts")
}

fn catalan(n: usize) -> usize {
    (0..n).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}
