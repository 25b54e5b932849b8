//! Edge points of a graph and the exact cost of clustering them.
//!
//! Each edge `{i, j}` becomes the point `e_i + e_j`. A cluster of edges `F`
//! with degree profile `ν_F` costs `2 m_F − ν_F / m_F`, so stars cost
//! `m_F − 1` and every other shape costs more.

use kmeans_hardness::reduction::{
    build_kmeans_instance, classify_cluster, cluster_stats, clustering_cost, combinatorial_cost,
};
use kmeans_hardness::{Clustering, Graph};

fn main() -> kmeans_hardness::Result<()> {
    let g = Graph::cycle(5);
    let inst = build_kmeans_instance(&g, 2)?;
    println!("C5 -> {} points in R^{}, k = {}", inst.num_points(), inst.dim(), inst.k);
    for (p, x) in inst.points.points().iter().enumerate() {
        println!("  x_{p} = {x:?}");
    }

    for cluster in [vec![0, 1], vec![0, 1, 2], vec![0, 2], vec![0, 1, 2, 3, 4]] {
        let stats = cluster_stats(&g, &cluster)?;
        println!(
            "edges {cluster:?}: cost {} (m_F = {}, slack {}), shape {:?}",
            combinatorial_cost(&g, &cluster)?,
            cluster.len(),
            stats.delta,
            classify_cluster(&g, &cluster)?,
        );
    }

    // The geometric cost agrees exactly with the combinatorial one.
    let c = Clustering::new(2, vec![0, 0, 1, 1, 1])?;
    println!("clustering {:?}: exact cost {}", c.assignment(), clustering_cost(&inst, &c)?);
    Ok(())
}
