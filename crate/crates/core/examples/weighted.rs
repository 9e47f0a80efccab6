//! Weighted neighbor-degree vectors: link weights replace neighbor counts.

use hellrank::{hellrank_with, load_edge_list, DistanceMode, DistanceOptions, EdgeListOptions, Side};

const EDGES: &str = "\
alice  rust    5
alice  go      1
bob    rust    1
bob    go      5
carol  rust    3
carol  go      3
carol  zig     1
dave   zig     2
";

fn main() -> hellrank::Result<()> {
    let graph = load_edge_list(EDGES.as_bytes(), &EdgeListOptions::weighted())?;
    for weighted in [false, true] {
        let options = DistanceOptions::new(DistanceMode::Normalized).weighted(weighted);
        let scores = hellrank_with(&graph, Side::Left, &options)?;
        let line: Vec<String> = scores.ranked().iter().map(|(l, v)| format!("{l} {v:.3}")).collect();
        println!("{:<10} {}", if weighted { "weighted" } else { "unweighted" }, line.join(", "));
    }
    Ok(())
}
