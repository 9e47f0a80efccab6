//! Agreement between HellRank and bipartite degree on the Davis women:
//! Kendall tau, top-5 Spearman rho, and the rho-versus-k curve.

use hellrank::{
    bipartite_degree, hellrank, kendall_tau, kendall_tau_with, load_builtin, spearman_rho, sweep_k, top_k_vector,
    DistanceMode, RankVector, Side, TauVariant,
};

fn main() -> hellrank::Result<()> {
    let graph = load_builtin("davis")?;
    let hr = hellrank(&graph, Side::Left, DistanceMode::Normalized)?;
    let degree = bipartite_degree(&graph)?.into_side(Side::Left);
    let (a, b) = (RankVector::from_scores(&hr), RankVector::from_scores(&degree));

    println!("kendall tau-a: {:.3}", kendall_tau(&a, &b)?);
    println!("kendall tau-b: {:.3}", kendall_tau_with(&a, &b, TauVariant::B)?);
    println!("spearman k=5:  {:.3}", spearman_rho(&top_k_vector(&hr, 5)?, &top_k_vector(&degree, 5)?)?);

    println!("\n k   rho");
    for (k, rho) in sweep_k(&hr, &degree, hr.len() - 1)? {
        match rho {
            Some(r) => println!("{k:>2}  {r:6.3}"),
            None => println!("{k:>2}     -"),
        }
    }
    Ok(())
}
