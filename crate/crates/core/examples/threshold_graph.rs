//! Links Davis women whose distance is below 0.5, prints the DOT graph and the
//! components before and after removing Nora.

use hellrank::export::write_dot;
use hellrank::{distance_matrix, load_builtin, threshold_graph, DistanceMode, Side, UnipartiteGraph};

fn show_components(graph: &UnipartiteGraph) {
    for component in graph.connected_components() {
        let names: Vec<&str> = component.iter().map(|&i| graph.labels()[i].as_str()).collect();
        println!("  {{{}}}", names.join(", "));
    }
}

fn main() -> hellrank::Result<()> {
    let graph = load_builtin("davis")?;
    let matrix = distance_matrix(&graph, Side::Left, DistanceMode::Normalized)?;
    let similar = threshold_graph(&matrix, 0.5);
    write_dot(std::io::stdout().lock(), &similar, "davis")?;

    println!("\ncomponents:");
    show_components(&similar);
    let without = similar.without_nodes(&["Nora"]);
    println!("without Nora:");
    show_components(&without);
    Ok(())
}
