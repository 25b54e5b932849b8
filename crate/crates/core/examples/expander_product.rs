//! Triangle-free expanders and the product reduction they drive.

use kmeans_hardness::spectral::{
    check_is_bounds, gen_triangle_free_expander, plan_product_reduction, product_with, schedule_degree,
};
use kmeans_hardness::Graph;

fn main() -> kmeans_hardness::Result<()> {
    let h = gen_triangle_free_expander(4, 40, 3.7, 11, 50)?;
    println!(
        "4-regular on 40 vertices: rho {:.4}, triangle-free {}, via {:?}",
        h.rho,
        h.graph.is_triangle_free(),
        h.source
    );

    // Small instance where both independent-set oracles still run.
    let g = Graph::complete(3);
    let pet = gen_triangle_free_expander(3, 10, 2.0, 0, 1)?;
    let r = product_with(&g, pet.clone(), 0.5)?;
    println!(
        "K3 x Petersen: {} vertices, triangle-free {}, ratio bound {:.3}",
        r.product.n(),
        r.product.is_triangle_free(),
        r.ratio_bound
    );
    let b = check_is_bounds(&g, &pet.graph)?;
    println!(
        "rel-IS: G {} -> product {}; lower bound {}, upper bound {}",
        b.rel_is_g, b.rel_is_product, b.lower_holds, b.upper_holds
    );

    // What a degree-3 input at epsilon 0.5 would need.
    println!("scheduled degree for max degree 3, eps 0.5: {}", schedule_degree(3, 0.5));
    let plan = plan_product_reduction(3, 0.5, 1)?;
    println!(
        "plan: d = {}, N = {}, rho {:.2} <= {:.2}, materialized {}, loss {:.3}",
        plan.degree,
        plan.nodes,
        plan.rho,
        plan.rho_target,
        plan.expander.is_some(),
        plan.loss()
    );
    Ok(())
}
