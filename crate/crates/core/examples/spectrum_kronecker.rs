//! Spectral radii and the spectrum of a Kronecker product.

use kmeans_hardness::spectral::{kron_spectrum_check, kronecker_product, spectral_radius};
use kmeans_hardness::Graph;

fn main() -> kmeans_hardness::Result<()> {
    for (name, g) in [("C5", Graph::cycle(5)), ("C6", Graph::cycle(6)), ("Petersen", Graph::petersen())] {
        let r = spectral_radius(&g)?;
        println!(
            "{name}: sigma1 {:.4}, sigma2 {:.4}, sigma_n {:.4}, rho {:.4}",
            r.sigma1(),
            r.sigma2(),
            r.sigma_n(),
            r.rho
        );
    }

    let (g, h) = (Graph::path(3), Graph::petersen());
    let (p, prov) = kronecker_product(&g, &h)?;
    let (u, i) = prov.pair(prov.index(2, 7));
    println!("P3 x Petersen: {} vertices, {} edges; index of (2, 7) maps back to ({u}, {i})", p.n(), p.m());

    let k = kron_spectrum_check(&g, &h)?;
    println!(
        "spectrum of A x C is the product spectrum: {} (max gap {:.2e}); rho(A x C) = {:.4} = rho(A) rho(C) = {:.4}",
        k.multiset_equal, k.max_gap, k.rho_product, k.rho_a * k.rho_c
    );
    Ok(())
}
