//! Exact vertex cover, independent set and edge-partition optima.

use kmeans_hardness::graph::enumerate;
use kmeans_hardness::oracles::{
    brute_force_edge_partition, greedy_vertex_cover, max_independent_set, min_vertex_cover, rel_is,
};
use kmeans_hardness::Graph;

fn main() -> kmeans_hardness::Result<()> {
    for (name, g) in [("C7", Graph::cycle(7)), ("Petersen", Graph::petersen()), ("K4", Graph::complete(4))] {
        let vc = min_vertex_cover(&g)?;
        let is = max_independent_set(&g)?;
        println!(
            "{name}: VC {} (greedy {}), IS {} = {} of the vertices, {} search nodes",
            vc.value,
            greedy_vertex_cover(&g).len(),
            is.value,
            rel_is(&g)?,
            vc.nodes_explored
        );
    }

    let c5 = Graph::cycle(5);
    for k in 1..=3 {
        let p = brute_force_edge_partition(&c5, k)?;
        println!("C5 edges into {k} clusters: optimum {} via {:?}", p.value, p.witness.assignment());
    }

    let counts: Vec<usize> = (1..=6).map(|n| enumerate::connected_graphs(n).len()).collect();
    println!("connected graphs on 1..=6 vertices up to isomorphism: {counts:?}");
    Ok(())
}
