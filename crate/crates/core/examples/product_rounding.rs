//! Rounding an independent set of `G ⊗ H` back to one of `G`, and the
//! neighbourhood facts about expanders that make it work.

use kmeans_hardness::oracles::max_independent_set;
use kmeans_hardness::spectral::{
    alon_extract, expander_neighborhood_check, kronecker_product, quadratic_identities, round_product_is,
    ProductIsVector,
};
use kmeans_hardness::Graph;

fn main() -> kmeans_hardness::Result<()> {
    let g = Graph::cycle(5);
    let h = Graph::petersen();
    let (p, _) = kronecker_product(&g, &h)?;
    let mis = max_independent_set(&p)?;
    let f = ProductIsVector::from_indices(g.n(), h.n(), &mis.witness)?;
    println!("C5 x Petersen: IS {} of {} vertices", f.norm_sq(), p.n());

    let q = quadratic_identities(&g, &h, &f)?;
    println!("quadratic identity gap {:.2e}, spectral inequality {}", q.identity_gap(), q.inequality_holds());

    let r = round_product_is(&g, &h, &f, 200, 3)?;
    println!(
        "rounding over {} trials: mean {:.3} +- {:.3}, bound {:.3}, best {:?}",
        r.sizes.len(),
        r.mean,
        r.std_error(),
        r.bound,
        r.best
    );

    let nb = expander_neighborhood_check(&h, 2.0, &[0, 1])?;
    println!("|N(B)| = {} for |B| = {}: {:?}", nb.neighborhood_size, nb.set_size, nb.clause);

    let a = alon_extract(&g, &h, 2.0, &f)?;
    println!(
        "row extraction: T = {:?}, independent {}, preconditions {}, |S| <= IS(G) n: {:?}",
        a.t,
        a.t_independent,
        a.preconditions_hold(),
        a.within_is_bound()
    );
    Ok(())
}
