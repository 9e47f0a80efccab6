//! Expected Hellinger distance under the random-graph model, the similarity
//! threshold it implies, and a simulation for comparison.

use hellrank::{expected_distance_moments, monte_carlo_distance, similarity_threshold, NullModelParams};

fn main() -> hellrank::Result<()> {
    let params = NullModelParams::new(50, 50, 0.1, 5)?;
    let m = expected_distance_moments(&params)?;
    println!("closed form: mean {:.4}, E[d^2] {:.4}, var {:.4}", m.mean, m.second_moment, m.variance);
    for sigmas in [0.0, 1.0, 2.0] {
        println!("threshold at {sigmas} sd: {:.4}", similarity_threshold(&params, sigmas)?);
    }
    let samples = 20_000;
    let sim = monte_carlo_distance(&params, samples, 7)?;
    println!(
        "simulated:   mean {:.4} ± {:.4}, E[d^2] {:.4}, var {:.4}",
        sim.mean,
        (sim.variance / samples as f64).sqrt(),
        sim.second_moment,
        sim.variance
    );
    Ok(())
}
