//! Vertex covers and clusterings, in both directions.
//!
//! A cover of size `k` gives a star clustering of cost `m − k`. Going back,
//! any clustering with `k` clusters and slack `δ` yields a cover of size at
//! most `k (1 + 3δ)`.

use kmeans_hardness::kmeans::local_search_swap;
use kmeans_hardness::oracles::min_vertex_cover;
use kmeans_hardness::reduction::{build_kmeans_instance, cover_to_clustering, edge_clustering_cost, extract_cover};
use kmeans_hardness::{Cover, Graph};

fn main() -> kmeans_hardness::Result<()> {
    let g = Graph::petersen();
    let vc = min_vertex_cover(&g)?;
    println!("Petersen: n = {}, m = {}, minimum cover {}", g.n(), g.m(), vc.value);

    let stars = cover_to_clustering(&g, &Cover::new(&g, vc.witness.clone()))?;
    println!("star clustering cost {} (m - VC = {})", edge_clustering_cost(&g, &stars)?, g.m() - vc.value);

    // Any clustering works as input, including a heuristic one.
    let inst = build_kmeans_instance(&g, vc.value)?;
    let found = local_search_swap(&inst.points, inst.k, 7, 1000)?;
    let x = extract_cover(&g, &found.assignment)?;
    println!(
        "local search cost {:.4}; extracted cover of {} vertices, slack {}, bound {}",
        found.cost,
        x.cover.len(),
        x.delta,
        x.size_bound()
    );
    println!("  from stars/triangles {}, heavy edges {}, patching {}", x.from_cheap_clusters, x.from_heavy_edges, x.from_patching);
    Ok(())
}
