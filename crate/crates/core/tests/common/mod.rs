use latkit::graph::DirectedGraph;
use latkit::{build_lattice, Lattice};

pub fn labelled(names: &[&str], covers: &[(&str, &str)]) -> Lattice {
    let idx = |s: &str| names.iter().position(|&n| n == s).unwrap();
    let covers: Vec<(usize, usize)> = covers.iter().map(|&(a, b)| (idx(a), idx(b))).collect();
    build_lattice(names.len(), &covers, Some(names.iter().map(|s| s.to_string()).collect())).unwrap()
}

/// Non-extremal congruence uniform lattice on 0, a..i, 1.
pub fn non_extremal_figure() -> Lattice {
    labelled(
        &["0", "a", "b", "c", "d", "e", "f", "g", "h", "i", "1"],
        &[
            ("0", "a"),
            ("0", "b"),
            ("a", "c"),
            ("c", "f"),
            ("f", "h"),
            ("h", "1"),
            ("b", "e"),
            ("e", "g"),
            ("g", "i"),
            ("i", "1"),
            ("b", "d"),
            ("d", "h"),
            ("a", "d"),
            ("d", "i"),
        ],
    )
}

/// Extremal congruence uniform lattice on 0, a..l, 1.
pub fn extremal_figure() -> Lattice {
    labelled(
        &["0", "a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l", "1"],
        &[
            ("0", "a"),
            ("0", "b"),
            ("b", "d"),
            ("d", "f"),
            ("f", "j"),
            ("j", "k"),
            ("k", "l"),
            ("l", "1"),
            ("g", "1"),
            ("e", "g"),
            ("c", "e"),
            ("a", "c"),
            ("b", "c"),
            ("d", "e"),
            ("e", "i"),
            ("i", "l"),
            ("f", "h"),
            ("h", "i"),
            ("h", "k"),
        ],
    )
}

/// Extremal lattice on nine elements that is not semidistributive.
pub fn not_sd_figure() -> Lattice {
    let covers = [
        (0, 1),
        (0, 2),
        (0, 4),
        (1, 3),
        (1, 5),
        (2, 5),
        (2, 7),
        (3, 6),
        (4, 6),
        (4, 7),
        (5, 8),
        (6, 8),
        (7, 8),
    ];
    build_lattice(9, &covers, None).unwrap()
}

/// Facet adjacency labels of the extremal figure, by chain name.
pub const EXTREMAL_CHAINS: [(&str, &str); 9] = [
    ("A", "aceil"),
    ("B", "aceg"),
    ("C", "bceil"),
    ("D", "bceg"),
    ("E", "bdeil"),
    ("F", "bdeg"),
    ("G", "bdfhil"),
    ("H", "bdfhkl"),
    ("I", "bdfjkl"),
];

pub fn chain_name(g: &DirectedGraph, v: usize) -> &'static str {
    EXTREMAL_CHAINS.iter().find(|p| p.1 == g.label(v)).unwrap().0
}
