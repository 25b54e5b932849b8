//! Random projection of edge points down to `ceil(8 ln n / ε²)` dimensions.

use kmeans_hardness::kmeans::{jl_project_with, JlEntries};
use kmeans_hardness::reduction::build_kmeans_instance;
use kmeans_hardness::rng::{rng_from_seed, trial_seed};
use kmeans_hardness::Graph;

fn main() -> kmeans_hardness::Result<()> {
    let g = Graph::gnm(300, 120, &mut rng_from_seed(5));
    let inst = build_kmeans_instance(&g, 1)?;
    let eps = 0.5;
    for entries in [JlEntries::Rademacher, JlEntries::Gaussian] {
        let mut worst: f64 = 0.0;
        let mut within = 0;
        let runs = 20;
        for s in 0..runs {
            let r = jl_project_with(&inst.points, eps, trial_seed(1, "jl-demo", s), entries)?;
            worst = worst.max(r.max_distortion);
            within += usize::from(r.max_distortion <= eps);
            if s == 0 {
                println!("{entries:?}: {} -> {} dimensions", inst.dim(), r.target_dim);
            }
        }
        println!("  {within}/{runs} projections within {eps}, worst distortion {worst:.3}");
    }
    Ok(())
}
