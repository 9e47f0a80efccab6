//! HellRank on a large sparse graph without building the distance matrix.
//!
//! Reads an edge list given as the first argument (for example the KONECT
//! cond-mat author–paper file); otherwise generates a heavy-tailed random
//! graph of similar size.

use std::fs::File;
use std::io::BufReader;
use std::time::Instant;

use hellrank::{hellrank, load_edge_list, BipartiteGraph, DistanceMode, EdgeListOptions, Side};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn synthetic(n1: usize, n2: usize, links: usize, seed: u64) -> hellrank::Result<BipartiteGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut builder = BipartiteGraph::builder();
    for a in 0..n1 {
        builder.add_node(Side::Left, &format!("a{a}"));
    }
    for b in 0..n2 {
        builder.add_node(Side::Right, &format!("p{b}"));
    }
    for _ in 0..links {
        // squaring a uniform skews picks towards low indices
        let u: f64 = rng.random();
        let a = ((u * u) * n1 as f64) as usize;
        let b = rng.random_range(0..n2);
        builder.add_link(&format!("a{a}"), &format!("p{b}"), None)?;
    }
    Ok(builder.build())
}

fn main() -> hellrank::Result<()> {
    let graph = match std::env::args().nth(1) {
        Some(path) => load_edge_list(BufReader::new(File::open(path)?), &EdgeListOptions::default())?,
        None => synthetic(16_726, 22_015, 58_595, 1)?,
    };
    println!("{} x {} nodes, {} links", graph.left_len(), graph.right_len(), graph.link_count());
    let start = Instant::now();
    let scores = hellrank(&graph, Side::Left, DistanceMode::Normalized)?;
    println!("hellrank for {} nodes in {:.1?}", scores.len(), start.elapsed());
    for (label, v) in scores.ranked().into_iter().take(5) {
        println!("  {label:<8} {v:.4}");
    }
    Ok(())
}
