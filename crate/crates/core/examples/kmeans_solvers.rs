//! Lloyd, k-means++, single-swap local search and the exhaustive optimum on
//! the edge points of a small graph.

use kmeans_hardness::harness::lloyd_random_init;
use kmeans_hardness::kmeans::{brute_force_kmeans, kmeanspp_lloyd, local_search_swap};
use kmeans_hardness::reduction::build_kmeans_instance;
use kmeans_hardness::Graph;

fn main() -> kmeans_hardness::Result<()> {
    let g = Graph::complete_bipartite(3, 3);
    let inst = build_kmeans_instance(&g, 3)?;
    let (best, opt) = brute_force_kmeans(&inst.points, inst.k)?;
    println!("K3,3 edges, k = 3: optimum {opt:.4} with assignment {best:?}");

    for seed in 0..4 {
        let lloyd = lloyd_random_init(&inst, seed)?;
        let pp = kmeanspp_lloyd(&inst.points, inst.k, 1000, seed)?;
        let ls = local_search_swap(&inst.points, inst.k, seed, 1000)?;
        println!(
            "seed {seed}: lloyd {:.4} ({} iters), kmeans++ {:.4}, local search {:.4}",
            lloyd.cost, lloyd.iterations, pp.cost, ls.cost
        );
    }
    Ok(())
}
