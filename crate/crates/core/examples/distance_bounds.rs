//! Raw-mode distances on a random graph checked against the degree bounds.

use hellrank::{distance_bounds, erdos_renyi_bipartite, node_distance, DistanceMode, Side};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> hellrank::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let graph = erdos_renyi_bipartite(30, 40, 0.15, &mut rng)?;
    let nodes: Vec<_> = graph.nodes(Side::Left).collect();
    let (mut pairs, mut tightest) = (0, f64::INFINITY);
    for (i, &x) in nodes.iter().enumerate() {
        for &y in &nodes[i + 1..] {
            let d = node_distance(&graph, x, y, DistanceMode::Raw)?;
            let (lo, hi) = distance_bounds(graph.node_degree(x), graph.node_degree(y))?;
            assert!(lo - 1e-9 <= d && d <= hi + 1e-9);
            tightest = tightest.min(hi - d);
            pairs += 1;
        }
    }
    println!("{pairs} pairs within bounds; smallest gap to the upper bound {tightest:.4}");
    for (k1, k2) in [(1, 1), (4, 9), (2, 30)] {
        let (lo, hi) = distance_bounds(k1, k2)?;
        println!("degrees {k1:>2}, {k2:>2}: {lo:.3} <= d <= {hi:.3}");
    }
    Ok(())
}
