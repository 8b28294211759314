use std::collections::{BTreeMap, VecDeque};

use latkit::dimension::dim_sd_extremal;
use latkit::families::gentle::{gentle_strings, torsion_dim, tors_lattice, GentleQuiver};
use latkit::families::{
    bubble, compatibility_graph, hochschild, parabolic_tamari, parabolic_tamari_graph, word_lattice, words,
    Composition,
};
use latkit::verify::composition_from_mask;
use latkit::{are_isomorphic, dual, Lattice, Poset};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Tree {
    Leaf,
    Node(Box<Tree>, Box<Tree>),
}

fn trees(n: usize) -> Vec<Tree> {
    if n == 0 {
        return vec![Tree::Leaf];
    }
    let mut out = Vec::new();
    for k in 0..n {
        for l in trees(k) {
            for r in trees(n - 1 - k) {
                out.push(Tree::Node(Box::new(l.clone()), Box::new(r)));
            }
        }
    }
    out
}

/// Every tree reachable by one right rotation `(A B) C → A (B C)`.
fn rotations(t: &Tree) -> Vec<Tree> {
    let Tree::Node(l, r) = t else { return vec![] };
    let mut out = Vec::new();
    if let Tree::Node(a, b) = l.as_ref() {
        out.push(Tree::Node(a.clone(), Box::new(Tree::Node(b.clone(), r.clone()))));
    }
    for l2 in rotations(l) {
        out.push(Tree::Node(Box::new(l2), r.clone()));
    }
    for r2 in rotations(r) {
        out.push(Tree::Node(l.clone(), Box::new(r2)));
    }
    out
}

/// Tamari lattice on binary trees with `n` nodes, ordered by right rotation.
fn rotation_lattice(n: usize) -> Lattice {
    let all = trees(n);
    let index: BTreeMap<&Tree, usize> = all.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let m = all.len();
    let mut reach = vec![vec![false; m]; m];
    for (i, row) in reach.iter_mut().enumerate() {
        let mut queue = VecDeque::from([i]);
        row[i] = true;
        while let Some(x) = queue.pop_front() {
            for y in rotations(&all[x]) {
                let j = index[&y];
                if !row[j] {
                    row[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }
    let below = |i: usize| (0..m).filter(|&j| reach[j][i]).count();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| below(i));
    let p = Poset::from_relation(m, |a, b| reach[order[a]][order[b]]).unwrap();
    Lattice::from_poset(p).unwrap()
}

#[test]
fn tamari_matches_rotation_order() {
    for n in 1..=6 {
        let rot = rotation_lattice(n);
        let (_, tam) = parabolic_tamari(&Composition::ones(n).unwrap()).unwrap();
        assert_eq!(rot.n(), tam.n(), "n = {n}");
        assert!(are_isomorphic(&rot, &tam), "n = {n}");
    }
}

#[test]
fn tamari_dimension_is_n_minus_one() {
    for n in 2..=6 {
        let l = rotation_lattice(n);
        assert_eq!(dim_sd_extremal(&l, None).unwrap().chi, n - 1);
    }
}

#[test]
fn compatibility_is_galois_complement() {
    for n in 1..=7usize {
        for mask in 0u32..1 << (n - 1) {
            let alpha = composition_from_mask(n, mask);
            assert_eq!(
                compatibility_graph(&alpha).edges(),
                parabolic_tamari_graph(&alpha).complement().edges(),
                "{alpha}"
            );
        }
    }
}

#[test]
fn hochschild_sizes() {
    for n in 1..=8usize {
        let expected = (n + 3) << n >> 2;
        assert_eq!(hochschild(n).unwrap().1.n(), expected, "n = {n}");
    }
}

#[test]
fn hochschild_bubble_and_words_agree() {
    for n in 2..=5 {
        let h = hochschild(n).unwrap().1;
        assert!(are_isomorphic(&h, &word_lattice(1, n).unwrap()));
        assert!(are_isomorphic(&h, &bubble(1, n - 1).unwrap().1));
        assert!(are_isomorphic(&h, &dual(&bubble(n - 1, 1).unwrap().1)));
    }
}

/// Counts words straight from the definition, without the library's generator.
fn count_words(m: usize, n: usize) -> usize {
    let mut count = 0;
    let mut w = vec![0usize; n];
    loop {
        let ok = w[0] != m + 1
            && (0..n).all(|i| !(1..=m).contains(&w[i]) || (0..i).all(|j| w[j] >= w[i]));
        count += ok as usize;
        let mut k = n;
        loop {
            if k == 0 {
                return count;
            }
            k -= 1;
            w[k] += 1;
            if w[k] <= m + 1 {
                break;
            }
            w[k] = 0;
        }
    }
}

#[test]
fn word_counts() {
    for m in 1..=3 {
        for n in 1..=5 {
            assert_eq!(words(m, n).len(), count_words(m, n), "W({m},{n})");
        }
    }
    assert_eq!(word_lattice(2, 3).unwrap().n(), 25);
    assert_eq!(word_lattice(3, 5).unwrap().n(), 360);
}

#[test]
fn word_dimension_below_jirr_width() {
    for n in 2..=5 {
        let l = word_lattice(2, n).unwrap();
        assert_eq!(dim_sd_extremal(&l, None).unwrap().chi, n);
        assert_eq!(l.jirr_width(), n + 1);
    }
}

#[test]
fn linear_torsion_classes_are_tamari() {
    for n in 1..=4 {
        let t = tors_lattice(&GentleQuiver::path(n, 0).unwrap()).unwrap();
        let tam = parabolic_tamari(&Composition::ones(n + 1).unwrap()).unwrap().1;
        assert!(are_isomorphic(&t, &tam), "A{n}");
    }
}

#[test]
fn path_quivers_have_all_intervals_as_bricks() {
    for n in 1..=6usize {
        for mask in 0u64..1 << (n - 1) {
            let q = GentleQuiver::path(n, mask).unwrap();
            assert_eq!(gentle_strings(&q).unwrap().len(), n * (n + 1) / 2);
            assert_eq!(torsion_dim(&q, None).unwrap().dim, n);
        }
    }
}

#[test]
fn torsion_lattice_sizes_of_a3() {
    let sizes: Vec<usize> = (0..4u64)
        .map(|mask| tors_lattice(&GentleQuiver::path(3, mask).unwrap()).unwrap().n())
        .collect();
    assert_eq!(sizes, vec![14, 14, 14, 14]);
}
