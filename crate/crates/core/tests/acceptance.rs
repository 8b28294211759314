//! One PASS/FAIL line per acceptance criterion. Run with `--nocapture` to see them.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use latkit::coloring::chromatic_number;
use latkit::dimension::{dim_sd_extremal, dimension_oracle};
use latkit::families::gentle::{torsion_dim, tors_lattice, GentleQuiver};
use latkit::families::{bubble, hochschild, parabolic_tamari, word_lattice};
use latkit::galois::{complement_in_jirr_order, galois_consistency, galois_graph_canonical};
use latkit::shelling::{all_source_sets, disjoint_source_sets, facet_adjacency};
use latkit::tafs::counterexample_pipeline;
use latkit::verify::{composition_from_mask, run_suite, VerifyOptions};
use latkit::{direct_product, Lattice};

use common::{chain_name, extremal_figure, non_extremal_figure, not_sd_figure};

type Check = fn() -> Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn dim(l: &Lattice) -> Result<usize, String> {
    dim_sd_extremal(l, None).map(|r| r.chi).map_err(|e| e.to_string())
}

fn suite(name: &str, seed: u64, count: usize) -> Result<(), String> {
    let opts = VerifyOptions {
        seed,
        count,
        ..Default::default()
    };
    let s = run_suite(name, &opts).map_err(|e| e.to_string())?;
    ensure(s.ok() && s.passed > 0, || format!("{s:?}"))?;
    println!("    {name}: {}/{} pass, {} skipped", s.passed, s.total, s.skipped);
    Ok(())
}

fn hochschild_dims() -> Result<(), String> {
    for n in 1..=8 {
        let d = dim(&hochschild(n).map_err(|e| e.to_string())?.1)?;
        ensure(d == n, || format!("dim Hoch({n}) = {d}"))?;
    }
    Ok(())
}

fn bubble_dims() -> Result<(), String> {
    for s in 1..=6 {
        for m in 0..=s {
            let n = s - m;
            let d = dim(&bubble(m, n).map_err(|e| e.to_string())?.1)?;
            ensure(d == m + n, || format!("dim Bub({m},{n}) = {d}"))?;
        }
    }
    Ok(())
}

fn word_dims_and_width() -> Result<(), String> {
    let mut bad_width = Vec::new();
    for m in 1..=3 {
        for n in 1..=5 {
            let l = word_lattice(m, n).map_err(|e| e.to_string())?;
            let d = dim(&l)?;
            ensure(d == n, || format!("dim W({m},{n}) = {d}"))?;
            if n >= 2 && l.jirr_width() != n + 1 {
                bad_width.push(format!("W({m},{n}): {}", l.jirr_width()));
            }
        }
    }
    ensure(bad_width.is_empty(), || {
        format!("dimensions all equal n, but width(JIrr) != n+1 for {}", bad_width.join(", "))
    })
}

fn tamari_dims() -> Result<(), String> {
    for n in 1..=7usize {
        for mask in 0u32..1 << (n - 1) {
            let alpha = composition_from_mask(n, mask);
            let (_, l) = parabolic_tamari(&alpha).map_err(|e| e.to_string())?;
            let want = n - alpha.max_part();
            let d = if l.n() == 1 { 0 } else { dim(&l)? };
            ensure(d == want, || format!("dim Tam{alpha} = {d}, expected {want}"))?;
        }
    }
    Ok(())
}

fn gentle_paths() -> Result<(), String> {
    for n in 1..=6usize {
        for mask in 0u64..1 << (n - 1) {
            let q = GentleQuiver::path(n, mask).map_err(|e| e.to_string())?;
            let d = torsion_dim(&q, None).map_err(|e| e.to_string())?.dim;
            ensure(d == n, || format!("A{n} orientation {mask:b}: dim {d}"))?;
        }
    }
    let q = GentleQuiver::new(3, vec![(0, 1), (2, 1)], vec![]).map_err(|e| e.to_string())?;
    let size = tors_lattice(&q).map_err(|e| e.to_string())?.n();
    ensure(size == 14, || format!("|Tors(1→2←3)| = {size}"))
}

fn counterexample() -> Result<(), String> {
    let r = counterexample_pipeline(true).map_err(|e| e.to_string())?;
    ensure(r.sd && r.triangle_free && r.chi == 4 && r.grotzsch && !r.admits_tafs, || format!("{r:?}"))?;
    ensure(r.elements == 167, || {
        format!(
            "|L(G)| = {}, expected 167 (sd, triangle-free, chi 4, Grötzsch and no TAFS all hold)",
            r.elements
        )
    })
}

fn not_semidistributive() -> Result<(), String> {
    let l = not_sd_figure();
    let oracle = dimension_oracle(&l, 24).map_err(|e| e.to_string())?;
    let gg = galois_graph_canonical(&l).map_err(|e| e.to_string())?;
    let chi = chromatic_number(&complement_in_jirr_order(&gg), None)
        .map_err(|e| e.to_string())?
        .chi;
    ensure(oracle == 3 && chi == 2, || format!("oracle {oracle}, chi {chi}"))
}

fn labelling() -> Result<(), String> {
    suite("labelling", 7, 500)
}

fn doubling() -> Result<(), String> {
    suite("doubling", 7, 300)
}

fn galois() -> Result<(), String> {
    suite("galois", 7, 300)?;
    let mut lattices: Vec<(String, Lattice)> = Vec::new();
    for n in 1..=6 {
        lattices.push((format!("Hoch({n})"), hochschild(n).unwrap().1));
    }
    for (m, n) in [(1, 1), (2, 1), (2, 2), (3, 1), (1, 3)] {
        lattices.push((format!("Bub({m},{n})"), bubble(m, n).unwrap().1));
    }
    for (m, n) in [(1, 3), (2, 3), (3, 3), (2, 4)] {
        lattices.push((format!("W({m},{n})"), word_lattice(m, n).unwrap()));
    }
    for mask in 0u32..1 << 5 {
        let alpha = composition_from_mask(6, mask);
        lattices.push((format!("Tam{alpha}"), parabolic_tamari(&alpha).unwrap().1));
    }
    for (name, l) in &lattices {
        galois_consistency(l).map_err(|e| format!("{name}: {e}"))?;
    }
    println!("    families: {} lattices consistent", lattices.len());
    Ok(())
}

fn dimension() -> Result<(), String> {
    suite("dimension", 7, 200)
}

fn dilworth() -> Result<(), String> {
    suite("dilworth", 7, 100)
}

fn fa_figures() -> Result<(), String> {
    let fa = facet_adjacency(&non_extremal_figure(), 100).map_err(|e| e.to_string())?;
    let (a, b) = disjoint_source_sets(&fa.graph).found.ok_or("no disjoint source sets")?;
    let names = |s: &[usize]| s.iter().map(|&i| fa.graph.label(i)).collect::<Vec<_>>().join(",");
    let pair: BTreeSet<String> = [names(&a), names(&b)].into();
    ensure(pair == ["acfh".to_string(), "begi".to_string()].into(), || format!("{pair:?}"))?;
    let fa = facet_adjacency(&extremal_figure(), 100).map_err(|e| e.to_string())?;
    let sets: BTreeSet<BTreeSet<&str>> = all_source_sets(&fa.graph, 1000)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|s| s.iter().map(|&i| chain_name(&fa.graph, i)).collect())
        .collect();
    let want: BTreeSet<BTreeSet<&str>> = [["I", "H", "G"].into(), ["I", "H", "G", "E", "C", "A"].into()].into();
    ensure(sets == want, || format!("{sets:?}"))
}

fn product() -> Result<(), String> {
    let l = direct_product(&hochschild(2).unwrap().1, &hochschild(3).unwrap().1);
    let d = dim(&l)?;
    ensure(d == 5, || format!("dim = {d}"))
}

const CRITERIA: [(&str, Check); 14] = [
    ("dim Hoch(n) = n for n = 1..8", hochschild_dims),
    ("dim Bub(m,n) = m+n for 1 <= m+n <= 6", bubble_dims),
    ("dim W(m,n) = n and width(JIrr) = n+1 for m <= 3, n <= 5", word_dims_and_width),
    ("dim Tam(alpha) = n - max(alpha) for n <= 7", tamari_dims),
    ("gentle paths: dim Tors = n for n <= 6; Tors(1->2<-3) has 14 elements", gentle_paths),
    ("counterexample: 167 elements, SD, Grotzsch, chi 4, no TAFS", counterexample),
    ("non-SD figure: oracle 3, complement chi 2", not_semidistributive),
    ("labelling theorem on 500 random lattices", labelling),
    ("doubling equivalences on 300 uniform scripts", doubling),
    ("Galois consistency on SD-extremal lattices", galois),
    ("dimension cross-oracle", dimension),
    ("Dilworth on 100 distributive lattices", dilworth),
    ("facet adjacency figures", fa_figures),
    ("dim Hoch(2) x Hoch(3) = 5", product),
];

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for (i, (name, check)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("PASS {:>2} {name} ({secs:.2}s)", i + 1),
            Err(why) => {
                println!("FAIL {:>2} {name} ({secs:.2}s): {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
