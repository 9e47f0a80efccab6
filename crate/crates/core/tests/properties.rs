mod common;

use common::*;
use hellrank::*;
use nalgebra::{DMatrix, SymmetricEigen};
use proptest::prelude::*;

fn small_graph(max1: usize, max2: usize) -> impl Strategy<Value = BipartiteGraph> {
    (1..=max1, 1..=max2).prop_flat_map(|(n1, n2)| {
        proptest::collection::vec(proptest::bool::weighted(0.4), n1 * n2)
            .prop_map(move |mask| graph_from_mask(n1, n2, &mask))
    })
}

fn distribution(len: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(0.0f64..10.0, len)
}

fn side() -> impl Strategy<Value = Side> {
    prop_oneof![Just(Side::Left), Just(Side::Right)]
}

fn mode() -> impl Strategy<Value = DistanceMode> {
    prop_oneof![Just(DistanceMode::Raw), Just(DistanceMode::Normalized)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dense_hellinger_is_a_bounded_metric(p in distribution(6), q in distribution(6), r in distribution(6)) {
        let unit = |v: &[f64]| {
            let s: f64 = v.iter().sum();
            if s == 0.0 { v.to_vec() } else { v.iter().map(|x| x / s).collect::<Vec<_>>() }
        };
        let (p, q, r) = (unit(&p), unit(&q), unit(&r));
        let pq = hellinger_distance(&p, &q).unwrap();
        prop_assert_eq!(pq, hellinger_distance(&q, &p).unwrap());
        prop_assert!(pq >= 0.0);
        prop_assert_eq!(hellinger_distance(&p, &p).unwrap(), 0.0);
        let pr = hellinger_distance(&p, &r).unwrap();
        let rq = hellinger_distance(&r, &q).unwrap();
        prop_assert!(pq <= pr + rq + 1e-12);
        if p.iter().sum::<f64>() > 0.0 && q.iter().sum::<f64>() > 0.0 {
            prop_assert!(pq <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn raw_distances_respect_degree_bounds(g in small_graph(8, 10), s in side()) {
        let nodes: Vec<NodeId> = g.nodes(s).collect();
        for &x in nodes.iter().filter(|&&x| g.node_degree(x) > 0) {
            for &y in nodes.iter().filter(|&&y| g.node_degree(y) > 0) {
                let d = node_distance(&g, x, y, DistanceMode::Raw).unwrap();
                let (lo, hi) = distance_bounds(g.node_degree(x), g.node_degree(y)).unwrap();
                prop_assert!(lo - 1e-9 <= d && d <= hi + 1e-9, "{} not in [{}, {}]", d, lo, hi);
            }
        }
    }

    #[test]
    fn sparse_matrix_matches_dense_oracle(g in small_graph(8, 8), s in side(), m in mode()) {
        let matrix = distance_matrix(&g, s, m).unwrap();
        let oracle = dense_matrix(&g, s, m);
        for i in 0..matrix.len() {
            for j in 0..matrix.len() {
                prop_assert!((matrix.get(i, j) - oracle[i][j]).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn hellrank_ignores_input_order(g in small_graph(7, 7), m in mode(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut links: Vec<(String, String)> = g
            .links()
            .map(|(l, r, _)| (g.labels(Side::Left)[l].clone(), g.labels(Side::Right)[r].clone()))
            .collect();
        links.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let mut b = BipartiteGraph::builder();
        for s in [Side::Right, Side::Left] {
            let mut labels = g.labels(s).to_vec();
            labels.reverse();
            for l in labels {
                b.add_node(s, &l);
            }
        }
        for (l, r) in &links {
            b.add_link(l, r, None).unwrap();
        }
        let shuffled = b.build();
        prop_assert_eq!(&shuffled, &g);
        if g.left_len() >= 2 {
            let a = hellrank(&g, Side::Left, m).unwrap();
            let c = hellrank(&shuffled, Side::Left, m).unwrap();
            for (label, v) in a.iter() {
                prop_assert!((v - c.get(label).unwrap()).abs() <= 1e-12 * v.abs().max(1.0));
            }
        }
    }

    #[test]
    fn normalized_scores_stay_in_unit_interval(g in small_graph(7, 7)) {
        let both = [
            bipartite_degree(&g).unwrap(),
            bipartite_closeness(&g),
            bipartite_betweenness(&g),
            eigenvector_centrality(&g, 1e-12, 100_000).unwrap().scores,
        ];
        for scores in &both {
            for s in [&scores.left, &scores.right] {
                for v in s.values() {
                    prop_assert!((-1e-12..=1.0 + 1e-12).contains(&v), "{} {}", s.metric(), v);
                }
            }
        }
        for s in [Side::Left, Side::Right] {
            for m in [ProjectedMetric::Degree, ProjectedMetric::Closeness, ProjectedMetric::Betweenness] {
                for v in projected_centrality(&g, s, m).values() {
                    prop_assert!((0.0..=1.0 + 1e-12).contains(&v));
                }
            }
            for v in latapy_cc(&g, s).values() {
                prop_assert!((0.0..=1.0).contains(&v));
            }
        }
        if g.left_len() >= 2 {
            let hr = normalize_scores(&hellrank(&g, Side::Left, DistanceMode::Normalized).unwrap());
            if let Ok(hr) = hr {
                prop_assert!(hr.values().iter().all(|&v| (0.0..=1.0).contains(&v)));
            }
        }
    }

    #[test]
    fn betweenness_never_needs_clamping(g in small_graph(8, 8)) {
        let b = bipartite_betweenness(&g);
        prop_assert!(b.left.warnings().is_empty());
        prop_assert!(b.right.warnings().is_empty());
    }

    #[test]
    fn pagerank_is_a_distribution(g in small_graph(8, 8), d in 0.05f64..0.95) {
        let config = PageRankConfig { damping: d, ..PageRankConfig::default() };
        let pr = pagerank(&g, &config).unwrap();
        let all: Vec<f64> = pr.left.values().into_iter().chain(pr.right.values()).collect();
        prop_assert!((all.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
        prop_assert!(all.iter().all(|&v| v > 0.0 && v < 1.0 || all.len() == 1));
    }

    #[test]
    fn eigenvector_is_a_fixed_point(g in small_graph(7, 7)) {
        let e = eigenvector_centrality(&g, 1e-13, 1_000_000).unwrap();
        let a = dense_adjacency(&g);
        let x: Vec<f64> = e.scores.left.values().into_iter().chain(e.scores.right.values()).collect();
        for (row, xi) in a.iter().zip(&x) {
            let ax: f64 = row.iter().zip(&x).map(|(p, q)| p * q).sum();
            prop_assert!((ax - e.eigenvalue * xi).abs() <= 1e-6);
        }
        let n = a.len();
        let m = DMatrix::from_fn(n, n, |i, j| a[i][j]);
        let top = SymmetricEigen::new(m).eigenvalues.iter().copied().fold(f64::MIN, f64::max);
        prop_assert!((top - e.eigenvalue).abs() <= 1e-6, "{} vs {}", top, e.eigenvalue);
    }

    #[test]
    fn latapy_pairs_are_symmetric(g in small_graph(6, 6), s in side()) {
        let nodes: Vec<NodeId> = g.nodes(s).collect();
        for &u in &nodes {
            for &v in &nodes {
                let uv = latapy_pair(&g, u, v).unwrap();
                prop_assert_eq!(uv, latapy_pair(&g, v, u).unwrap());
                prop_assert!((0.0..=1.0).contains(&uv));
            }
        }
    }

    #[test]
    fn opsahl_matches_path_enumeration(g in small_graph(6, 6), s in side()) {
        let c = opsahl_cc_for(&g, s);
        let (paths, closed) = brute_opsahl(&g, s);
        prop_assert_eq!((c.four_paths, c.closed), (paths, closed));
    }

    #[test]
    fn kendall_matches_pair_counting(x in proptest::collection::vec(0i32..8, 2..200), seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let xs: Vec<f64> = x.iter().map(|&v| v as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|_| rng.random_range(0..8) as f64).collect();
        let labels: Vec<String> = (0..xs.len()).map(|i| i.to_string()).collect();
        let a = RankVector::new(labels.clone(), xs.clone()).unwrap();
        let b = RankVector::new(labels, ys.clone()).unwrap();
        let tau = kendall_tau(&a, &b).unwrap();
        prop_assert!((tau - brute_kendall_a(&xs, &ys)).abs() <= 1e-12);
        prop_assert_eq!(tau, kendall_tau(&b, &a).unwrap());
    }

    #[test]
    fn rank_statistics_ignore_monotone_transforms(x in proptest::collection::vec(-5.0f64..5.0, 3..40), y in proptest::collection::vec(-5.0f64..5.0, 40)) {
        let n = x.len();
        let labels: Vec<String> = (0..n).map(|i| format!("n{i}")).collect();
        let a = RankVector::new(labels.clone(), x.clone()).unwrap();
        let b = RankVector::new(labels.clone(), y[..n].to_vec()).unwrap();
        let warped = RankVector::new(labels, x.iter().map(|v| v.exp() * 3.0 + 1.0).collect()).unwrap();
        for variant in [TauVariant::A, TauVariant::B] {
            let t = kendall_tau_with(&a, &b, variant);
            let tw = kendall_tau_with(&warped, &b, variant);
            if let (Ok(t), Ok(tw)) = (t, tw) {
                prop_assert!((t - tw).abs() <= 1e-12);
            }
        }
        if let (Ok(r1), Ok(r2)) = (spearman_rho(&a, &b), spearman_rho(&b, &a)) {
            prop_assert!((r1 - r2).abs() <= 1e-12);
        }
    }

    #[test]
    fn top_k_has_exactly_k_ones(values in proptest::collection::vec(0.0f64..3.0, 1..30), k_frac in 0.0f64..1.0) {
        let scores = CentralityScores::new(Side::Left, "m", values.iter().enumerate().map(|(i, &v)| (format!("n{i:02}"), (v * 4.0).round())));
        let k = 1 + (k_frac * (values.len() - 1) as f64) as usize;
        let top = top_k_vector(&scores, k).unwrap();
        prop_assert_eq!(top.values().iter().sum::<f64>(), k as f64);
    }

    #[test]
    fn poisson_closed_form_is_symmetric(k1 in 0.5f64..20.0, l1 in 0.5f64..20.0, k2 in 0.5f64..20.0, l2 in 0.5f64..20.0) {
        let a = poisson_hellinger_sq(k1, l1, k2, l2).unwrap();
        prop_assert_eq!(a, poisson_hellinger_sq(k2, l2, k1, l1).unwrap());
        let same = poisson_hellinger_sq(k1, l1, k2, l1).unwrap();
        prop_assert!((same - ((k1 + k2) / 2.0 - (k1 * k2).sqrt())).abs() <= 1e-12);
    }

    #[test]
    fn moments_have_nonnegative_variance(n1 in 1usize..200, n2 in 1usize..200, p in 0.0f64..=1.0, k in 1usize..50) {
        let m = expected_distance_moments(&NullModelParams::new(n1, n2, p, k).unwrap()).unwrap();
        prop_assert!(m.variance >= 0.0);
        prop_assert!(m.mean.is_finite() && m.second_moment.is_finite());
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let g = corpus(99, 1, 60, 60, (0.1, 0.3)).pop().unwrap();
    let compute = || {
        let mut out = Vec::new();
        out.push(hellrank(&g, Side::Left, DistanceMode::Normalized).unwrap());
        out.push(hellrank(&g, Side::Right, DistanceMode::Raw).unwrap());
        out.push(bipartite_closeness(&g).left);
        out.push(bipartite_betweenness(&g).left);
        out.push(pagerank(&g, &PageRankConfig::default()).unwrap().left);
        out.push(eigenvector_centrality(&g, 1e-10, 10_000).unwrap().scores.left);
        out.push(latapy_cc(&g, Side::Left));
        out.push(projected_centrality(&g, Side::Left, ProjectedMetric::Betweenness));
        let bits: Vec<Vec<u64>> = out.iter().map(|s| s.values().iter().map(|v| v.to_bits()).collect()).collect();
        (bits, opsahl_cc(&g))
    };
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(compute);
    let many = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(compute);
    assert_eq!(single, many);
}

#[test]
fn hellrank_rankings_match_dense_oracle_on_seeded_corpus() {
    for (i, g) in corpus(7, 100, 8, 8, (0.1, 0.9)).iter().enumerate() {
        if g.left_len() < 2 {
            continue;
        }
        for m in [DistanceMode::Raw, DistanceMode::Normalized] {
            let Ok(scores) = hellrank(g, Side::Left, m) else {
                continue;
            };
            if !scores.warnings().is_empty() {
                continue;
            }
            let oracle = brute_hellrank(g, Side::Left, m);
            for (j, v) in scores.values().iter().enumerate() {
                assert!((v - oracle[j]).abs() <= 1e-9 * oracle[j].max(1.0), "graph {i} node {j}");
            }
        }
    }
}
