//! Ranks the Southern Women by HellRank and lists the most and least representative.

use hellrank::{hellrank, load_builtin, normalize_scores, DistanceMode, Side};

fn main() -> hellrank::Result<()> {
    let graph = load_builtin("davis")?;
    let scores = normalize_scores(&hellrank(&graph, Side::Left, DistanceMode::Normalized)?)?;
    for (rank, (label, v)) in scores.ranked().into_iter().enumerate() {
        println!("{:>2}. {label:<10} {v:.3}", rank + 1);
    }
    println!("\ntop 5:    {}", scores.top(5).join(", "));
    println!("bottom 3: {}", scores.bottom(3).join(", "));
    Ok(())
}
