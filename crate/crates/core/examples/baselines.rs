//! Every comparison centrality on the Davis women, side by side.

use hellrank::{
    bipartite_betweenness, bipartite_closeness, bipartite_degree, eigenvector_centrality, latapy_cc, load_builtin,
    opsahl_cc, pagerank, projected_centrality, PageRankConfig, ProjectedMetric, Side,
};

fn main() -> hellrank::Result<()> {
    let graph = load_builtin("davis")?;
    let side = Side::Left;
    let tables = [
        bipartite_degree(&graph)?.into_side(side),
        bipartite_closeness(&graph).into_side(side),
        bipartite_betweenness(&graph).into_side(side),
        eigenvector_centrality(&graph, 1e-10, 10_000)?.scores.into_side(side),
        pagerank(&graph, &PageRankConfig::default())?.into_side(side),
        latapy_cc(&graph, side),
        projected_centrality(&graph, side, ProjectedMetric::Degree),
        projected_centrality(&graph, side, ProjectedMetric::Closeness),
        projected_centrality(&graph, side, ProjectedMetric::Betweenness),
    ];

    print!("{:<10}", "");
    for t in &tables {
        print!(" {:>12}", t.metric());
    }
    println!();
    for label in graph.labels(side) {
        print!("{label:<10}");
        for t in &tables {
            print!(" {:>12.4}", t.get(label).unwrap());
        }
        println!();
    }

    let c = opsahl_cc(&graph);
    println!("\nOpsahl clustering: {:.4} ({} of {} 4-paths closed)", c.value, c.closed, c.four_paths);
    Ok(())
}
