//! Independent reference implementations and graph generators for the
//! integration tests. Nothing here calls the library's algorithms; only the
//! graph container is shared.
#![allow(dead_code)]

use hellrank::{BipartiteGraph, DistanceMode, NodeId, Side};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const FIG1: [(&str, &str); 11] = [
    ("A", "1"),
    ("B", "1"),
    ("B", "2"),
    ("B", "3"),
    ("C", "2"),
    ("C", "3"),
    ("D", "3"),
    ("D", "4"),
    ("D", "5"),
    ("D", "6"),
    ("D", "7"),
];

pub fn fig1() -> BipartiteGraph {
    BipartiteGraph::from_links(FIG1)
}

/// Graph with `n1 × n2` nodes (all present, possibly isolated) and the links
/// where `mask[i * n2 + j]` is set.
pub fn graph_from_mask(n1: usize, n2: usize, mask: &[bool]) -> BipartiteGraph {
    let mut b = BipartiteGraph::builder();
    for i in 0..n1 {
        b.add_node(Side::Left, &format!("u{i}"));
    }
    for j in 0..n2 {
        b.add_node(Side::Right, &format!("v{j}"));
    }
    for i in 0..n1 {
        for j in 0..n2 {
            if mask[i * n2 + j] {
                b.add_link(&format!("u{i}"), &format!("v{j}"), None).unwrap();
            }
        }
    }
    b.build()
}

/// Random graph with sides up to the given sizes and link density in `p_range`.
pub fn random_graph(rng: &mut ChaCha8Rng, max1: usize, max2: usize, p_range: (f64, f64)) -> BipartiteGraph {
    let n1 = rng.random_range(1..=max1);
    let n2 = rng.random_range(1..=max2);
    let p = rng.random_range(p_range.0..=p_range.1);
    let mask: Vec<bool> = (0..n1 * n2).map(|_| rng.random::<f64>() < p).collect();
    graph_from_mask(n1, n2, &mask)
}

pub fn corpus(seed: u64, count: usize, max1: usize, max2: usize, p_range: (f64, f64)) -> Vec<BipartiteGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_graph(&mut rng, max1, max2, p_range)).collect()
}

/// Heavy-tailed random graph with exactly `n1 × n2` nodes, none isolated, and
/// `links` distinct links: every right node gets one author, every left node
/// one paper, and the rest go to authors drawn with a power-law bias.
pub fn heavy_tailed_graph(n1: usize, n2: usize, links: usize, seed: u64) -> BipartiteGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick_author = |rng: &mut ChaCha8Rng| {
        let u: f64 = rng.random();
        ((u.powf(2.5)) * n1 as f64) as usize
    };
    let mut edges = std::collections::HashSet::new();
    for j in 0..n2 {
        let a = pick_author(&mut rng);
        edges.insert((a, j));
    }
    let mut has_paper = vec![false; n1];
    for &(a, _) in &edges {
        has_paper[a] = true;
    }
    for (a, has) in has_paper.iter().enumerate() {
        if !has {
            edges.insert((a, rng.random_range(0..n2)));
        }
    }
    while edges.len() < links {
        let a = pick_author(&mut rng);
        edges.insert((a, rng.random_range(0..n2)));
    }
    let mut sorted: Vec<(usize, usize)> = edges.into_iter().collect();
    sorted.sort_unstable();
    let mut b = BipartiteGraph::builder();
    for a in 0..n1 {
        b.add_node(Side::Left, &format!("a{a}"));
    }
    for p in 0..n2 {
        b.add_node(Side::Right, &format!("p{p}"));
    }
    for (a, p) in sorted {
        b.add_link(&format!("a{a}"), &format!("p{p}"), None).unwrap();
    }
    b.build()
}

/// Dense neighbor-degree vectors `L_x` of one side, length = max degree.
pub fn dense_profiles(graph: &BipartiteGraph, side: Side) -> Vec<Vec<f64>> {
    let other = side.opposite();
    let mut other_degree = vec![0usize; graph.len(other)];
    let mut own: Vec<Vec<usize>> = vec![Vec::new(); graph.len(side)];
    for (l, r, _) in graph.links() {
        let (mine, theirs) = if side == Side::Left { (l, r) } else { (r, l) };
        own[mine].push(theirs);
        other_degree[theirs] += 1;
    }
    let width = other_degree.iter().copied().max().unwrap_or(0);
    own.iter()
        .map(|nbrs| {
            let mut v = vec![0.0; width];
            for &y in nbrs {
                v[other_degree[y] - 1] += 1.0;
            }
            v
        })
        .collect()
}

pub fn dense_distance(p: &[f64], q: &[f64], mode: DistanceMode) -> f64 {
    let (sp, sq): (f64, f64) = (p.iter().sum(), q.iter().sum());
    let scale = |v: f64, s: f64| match mode {
        DistanceMode::Raw => v,
        DistanceMode::Normalized if s > 0.0 => v / s,
        DistanceMode::Normalized => 0.0,
    };
    let sum: f64 = p
        .iter()
        .zip(q)
        .map(|(&a, &b)| {
            let d = scale(a, sp).sqrt() - scale(b, sq).sqrt();
            d * d
        })
        .sum();
    match mode {
        DistanceMode::Raw => sum.sqrt(),
        DistanceMode::Normalized => (sum / 2.0).sqrt(),
    }
}

pub fn dense_matrix(graph: &BipartiteGraph, side: Side, mode: DistanceMode) -> Vec<Vec<f64>> {
    let profiles = dense_profiles(graph, side);
    profiles
        .iter()
        .map(|p| profiles.iter().map(|q| dense_distance(p, q, mode)).collect())
        .collect()
}

/// `n / Σ_z d(x, z)` straight from the dense matrix.
pub fn brute_hellrank(graph: &BipartiteGraph, side: Side, mode: DistanceMode) -> Vec<f64> {
    let m = dense_matrix(graph, side, mode);
    let n = m.len() as f64;
    m.iter()
        .map(|row| {
            let s: f64 = row.iter().sum();
            if s == 0.0 {
                f64::INFINITY
            } else {
                n / s
            }
        })
        .collect()
}

/// Counts 4-paths `a–x–b–y–c` with endpoints on `primary` by walking every
/// ordered path and halving; closed when `a` and `c` share some `z ∉ {x, y}`.
pub fn brute_opsahl(graph: &BipartiteGraph, primary: Side) -> (u64, u64) {
    let secondary = primary.opposite();
    let nb = |side: Side, i: usize| graph.neighbors(NodeId::new(side, i)).to_vec();
    let (mut paths, mut closed) = (0u64, 0u64);
    for b in 0..graph.len(primary) {
        for x in nb(primary, b) {
            for y in nb(primary, b) {
                if x == y {
                    continue;
                }
                for a in nb(secondary, x) {
                    for c in nb(secondary, y) {
                        if a == b || c == b || a == c {
                            continue;
                        }
                        paths += 1;
                        let na = nb(primary, a);
                        let nc = nb(primary, c);
                        if na.iter().any(|z| *z != x && *z != y && nc.contains(z)) {
                            closed += 1;
                        }
                    }
                }
            }
        }
    }
    (paths / 2, closed / 2)
}

pub fn brute_kendall_a(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len();
    let mut s = 0i64;
    for i in 0..n {
        for j in i + 1..n {
            let dx = x[i] - x[j];
            let dy = y[i] - y[j];
            let prod = dx * dy;
            if prod > 0.0 {
                s += 1;
            } else if prod < 0.0 {
                s -= 1;
            }
        }
    }
    s as f64 / (n * (n - 1) / 2) as f64
}

/// Dense `(n1+n2)²` adjacency, left nodes first.
pub fn dense_adjacency(graph: &BipartiteGraph) -> Vec<Vec<f64>> {
    let n1 = graph.left_len();
    let n = n1 + graph.right_len();
    let mut a = vec![vec![0.0; n]; n];
    for (l, r, _) in graph.links() {
        a[l][n1 + r] = 1.0;
        a[n1 + r][l] = 1.0;
    }
    a
}

/// Labels of one side ordered by descending value, ties by label.
pub fn ranking(labels: &[String], values: &[f64]) -> Vec<String> {
    let mut idx: Vec<usize> = (0..labels.len()).collect();
    idx.sort_by(|&i, &j| values[j].partial_cmp(&values[i]).unwrap().then(labels[i].cmp(&labels[j])));
    idx.into_iter().map(|i| labels[i].clone()).collect()
}
