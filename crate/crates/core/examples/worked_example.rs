//! HellRank on the 4 × 7 toy network: distance matrix, raw and max-normalized scores.

use hellrank::{distance_matrix, hellrank, normalize_scores, BipartiteGraph, DistanceMode, Side};

fn main() -> hellrank::Result<()> {
    let graph = BipartiteGraph::from_links([
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
    ]);

    let matrix = distance_matrix(&graph, Side::Left, DistanceMode::Normalized)?;
    println!("distances:");
    for (i, label) in matrix.labels().iter().enumerate() {
        let row: Vec<String> = matrix.row(i).iter().map(|d| format!("{d:.2}")).collect();
        println!("  {label}  {}", row.join("  "));
    }

    let scores = hellrank(&graph, Side::Left, DistanceMode::Normalized)?;
    let normalized = normalize_scores(&scores)?;
    println!("\nnode  hellrank  normalized");
    for (label, v) in scores.iter() {
        println!("{label:>4}  {v:8.3}  {:10.2}", normalized.get(label).unwrap());
    }
    println!("\nmost representative: {}", normalized.argmax().unwrap());
    Ok(())
}
