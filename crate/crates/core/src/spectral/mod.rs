//! Spectra of adjacency matrices and Kronecker graph products.
//!
//! For a graph `G` with adjacency eigenvalues `σ₁ ≥ … ≥ σ_n`, the spectral
//! radius orthogonal to the all-ones vector is `ρ(G) = max(σ₂, |σ_n|)`. For
//! a plain symmetric matrix `M` we use the ordinary `max |σ_i(M)|`.
//!
//! The product `G ⊗ H` has vertex `(u, i)` at index `u·N + i` where
//! `N = |V(H)|`, which makes its adjacency matrix exactly `A_G ⊗ A_H`.

mod expander;
mod product_is;

pub use expander::{
    cayley_graph, cayley_radius, cayley_spectrum, find_cayley_expander, gen_triangle_free_expander,
    random_regular_graph, random_sum_free_set, remove_triangles, CayleyExpander, Expander,
    ExpanderSource, MAX_CAYLEY_NODES, MAX_EIGENSOLVE_NODES, MAX_MATERIALIZED_EDGES,
};
pub use product_is::{
    alon_extract, expander_neighborhood_check, quadratic_identities, round_product_is,
    AlonExtraction, NeighborhoodClause, NeighborhoodReport, ProductIsVector, QuadraticIdentities,
    RoundingReport,
};

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::oracles::max_independent_set;
use crate::reduction::Rational;

/// Slack applied to every floating-point spectral inequality.
pub const SPECTRAL_SLACK: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralReport {
    /// Descending.
    pub eigenvalues: Vec<f64>,
    pub rho: f64,
    /// `rho / d` for d-regular graphs.
    pub normalized_rho: Option<f64>,
    pub regular_degree: Option<usize>,
}

impl SpectralReport {
    pub fn from_eigenvalues(mut eigenvalues: Vec<f64>, regular_degree: Option<usize>) -> Self {
        eigenvalues.sort_by(|a, b| b.total_cmp(a));
        let rho = radius_orthogonal_to_ones(&eigenvalues);
        let normalized_rho = regular_degree.filter(|&d| d > 0).map(|d| rho / d as f64);
        Self { eigenvalues, rho, normalized_rho, regular_degree }
    }

    pub fn sigma1(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn sigma2(&self) -> f64 {
        self.eigenvalues[1]
    }

    pub fn sigma_n(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }
}

/// `max(σ₂, |σ_n|)` of a descending eigenvalue list of length >= 2.
pub fn radius_orthogonal_to_ones(desc: &[f64]) -> f64 {
    desc[1].max(desc[desc.len() - 1].abs())
}

/// Descending eigenvalues of a symmetric matrix.
pub fn symmetric_spectrum(m: &DMatrix<f64>) -> Vec<f64> {
    let mut eig: Vec<f64> = SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().collect();
    eig.sort_by(|a, b| b.total_cmp(a));
    eig
}

/// `max |σ_i(M)|`
pub fn matrix_radius(m: &DMatrix<f64>) -> f64 {
    symmetric_spectrum(m).iter().fold(0.0, |acc, v| acc.max(v.abs()))
}

/// Full eigensolve of the adjacency matrix.
pub fn spectral_radius(g: &Graph) -> Result<SpectralReport> {
    if g.n() < 2 {
        return Err(Error::InvalidParameter("spectral radius needs at least 2 vertices".into()));
    }
    let eig = symmetric_spectrum(&g.adjacency_matrix());
    Ok(SpectralReport::from_eigenvalues(eig, g.regular_degree()))
}

/// Provenance of a product: vertex `(u, i)` lives at `u * right.n() + i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductProvenance {
    pub left: Graph,
    pub right: Graph,
}

impl ProductProvenance {
    #[inline]
    pub fn index(&self, u: Vertex, i: Vertex) -> usize {
        u * self.right.n() + i
    }

    #[inline]
    pub fn pair(&self, idx: usize) -> (Vertex, Vertex) {
        (idx / self.right.n(), idx % self.right.n())
    }

    pub fn num_nodes(&self) -> usize {
        self.left.n() * self.right.n()
    }
}

/// `G ⊗ H`: `(u,i) ~ (v,j)` iff `u ~ v` in G and `i ~ j` in H.
pub fn kronecker_product(g: &Graph, h: &Graph) -> Result<(Graph, ProductProvenance)> {
    if g.n() == 0 || h.n() == 0 {
        return Err(Error::InvalidParameter("Kronecker factors need at least one vertex".into()));
    }
    let big_n = h.n();
    let mut edges = Vec::with_capacity(2 * g.m() * h.m());
    for &(u, v) in g.edges() {
        for &(i, j) in h.edges() {
            edges.push((u * big_n + i, v * big_n + j));
            edges.push((u * big_n + j, v * big_n + i));
        }
    }
    let product = Graph::new(g.n() * big_n, edges)?;
    Ok((product, ProductProvenance { left: g.clone(), right: h.clone() }))
}

/// `B − J̃_N = A_H / d − J / N` for a d-regular `H`.
pub fn centered_normalized_adjacency(h: &Graph) -> Result<(DMatrix<f64>, usize)> {
    let d = h.regular_degree().filter(|&d| d > 0).ok_or(Error::NotRegular)?;
    let n = h.n() as f64;
    let b = h.adjacency_matrix() / d as f64;
    Ok((b.map(|x| x - 1.0 / n), d))
}

/// Largest product size `kron_spectrum_check` will eigensolve.
pub const MAX_KRON_CHECK_NODES: usize = 400;

#[derive(Clone, Debug, PartialEq)]
pub struct KronSpectrumCheck {
    /// Largest pairwise gap between the sorted spectra.
    pub max_gap: f64,
    pub multiset_equal: bool,
    pub rho_product: f64,
    pub rho_a: f64,
    pub rho_c: f64,
    pub rho_equal: bool,
}

impl KronSpectrumCheck {
    pub fn passed(&self) -> bool {
        self.multiset_equal && self.rho_equal
    }
}

/// Checks that `spec(A ⊗ C)` is the multiset of pairwise products of
/// `spec(A)` and `spec(C)`, with `C = A_H/d − J̃_N`, and that the matrix
/// radii multiply.
pub fn kron_spectrum_check(a: &Graph, h: &Graph) -> Result<KronSpectrumCheck> {
    let size = a.n() * h.n();
    if size > MAX_KRON_CHECK_NODES {
        return Err(Error::GuardExceeded {
            what: "Kronecker spectrum check size",
            limit: MAX_KRON_CHECK_NODES,
            actual: size,
        });
    }
    let am = a.adjacency_matrix();
    let (c, _) = centered_normalized_adjacency(h)?;
    let direct = symmetric_spectrum(&am.kronecker(&c));
    let sa = symmetric_spectrum(&am);
    let sc = symmetric_spectrum(&c);
    let mut products: Vec<f64> = sa.iter().flat_map(|x| sc.iter().map(move |y| x * y)).collect();
    products.sort_by(|x, y| y.total_cmp(x));
    let max_gap = direct
        .iter()
        .zip(&products)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    let radius = |s: &[f64]| s.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let rho_product = radius(&direct);
    let rho_a = radius(&sa);
    let rho_c = radius(&sc);
    Ok(KronSpectrumCheck {
        max_gap,
        multiset_equal: max_gap <= SPECTRAL_SLACK,
        rho_product,
        rho_a,
        rho_c,
        rho_equal: (rho_product - rho_a * rho_c).abs() <= SPECTRAL_SLACK,
    })
}

/// `1 − ρΔ/(2d)`: the factor relating independent sets of `G` and `G ⊗ H`.
pub fn rounding_factor(rho: f64, max_degree: usize, d: usize) -> f64 {
    1.0 - rho * max_degree as f64 / (2.0 * d as f64)
}

/// Outcome of comparing `rel-IS(G)`, `rel-IS(G ⊗ H)` and the spectral bound
/// with exact independent-set oracles.
#[derive(Clone, Debug, PartialEq)]
pub struct IsBoundCheck {
    pub is_g: usize,
    pub is_product: usize,
    pub rel_is_g: Rational,
    pub rel_is_product: Rational,
    pub rho: f64,
    pub d: usize,
    pub max_degree: usize,
    /// `rel-IS(G ⊗ H) >= rel-IS(G)`, exact.
    pub lower_holds: bool,
    /// The upper inequality reduces to `ρ·y >= x` with integers
    /// `x = 2d(IS(G⊗H) − N·IS(G))` and `y = Δ·IS(G⊗H)`.
    pub x: i64,
    pub y: i64,
    /// False when `ρ·y` lands within `1e-9` of `x` and ρ is not an integer,
    /// so floating point cannot settle the comparison.
    pub upper_decided: bool,
    /// `rel-IS(G) >= (1 − ρΔ/2d) · rel-IS(G ⊗ H)`; false when undecided.
    pub upper_holds: bool,
}

/// Runs both MIS oracles and checks the two-sided product bound.
pub fn check_is_bounds(g: &Graph, h: &Graph) -> Result<IsBoundCheck> {
    let d = h.regular_degree().filter(|&d| d > 0).ok_or(Error::NotRegular)?;
    let rho = spectral_radius(h)?.rho;
    let (product, _) = kronecker_product(g, h)?;
    let is_g = max_independent_set(g)?.value;
    let is_product = max_independent_set(&product)?.value;
    let big_n = h.n() as i64;
    let n = g.n() as i64;
    let max_degree = g.max_degree();
    let x = 2 * d as i64 * (is_product as i64 - big_n * is_g as i64);
    let y = (max_degree * is_product) as i64;
    let rounded = rho.round();
    let (upper_decided, upper_holds) = if x <= 0 {
        (true, true)
    } else if (rho - rounded).abs() <= 1e-9 {
        (true, rounded as i64 * y >= x)
    } else {
        let margin = rho * y as f64 - x as f64;
        let decided = margin.abs() > 1e-9 * (x as f64).max(1.0);
        (decided, decided && margin > 0.0)
    };
    Ok(IsBoundCheck {
        is_g,
        is_product,
        rel_is_g: Rational::new(is_g as i64, n),
        rel_is_product: Rational::new(is_product as i64, n * big_n),
        rho,
        d,
        max_degree,
        lower_holds: is_product as i64 >= big_n * is_g as i64,
        x,
        y,
        upper_decided,
        upper_holds,
    })
}

#[derive(Clone, Debug)]
pub struct ProductReduction {
    pub product: Graph,
    pub provenance: ProductProvenance,
    pub expander: Expander,
    /// Max degree of the input graph.
    pub max_degree: usize,
    pub epsilon: f64,
    /// `(1 − ρΔ/2d)⁻¹`, the guaranteed ratio `rel-IS(Ĝ)/rel-IS(G)` cap.
    pub ratio_bound: f64,
}

/// Degree schedule `d = ceil(16 Δ² / ε²)`, at least 3.
pub fn schedule_degree(max_degree: usize, epsilon: f64) -> usize {
    let delta = max_degree.max(1) as f64;
    ((16.0 * delta * delta / (epsilon * epsilon)).ceil() as usize).max(3)
}

/// Spectral target `ρ ≤ dε/Δ`, which makes `ρΔ/(2d) ≤ ε/2`.
pub fn schedule_rho_target(d: usize, max_degree: usize, epsilon: f64) -> f64 {
    d as f64 * epsilon / max_degree.max(1) as f64
}

/// Expander parameters for a product reduction, found without necessarily
/// building the product or even the expander.
#[derive(Clone, Debug)]
pub struct ExpanderPlan {
    pub max_degree: usize,
    pub epsilon: f64,
    pub degree: usize,
    pub nodes: usize,
    pub rho: f64,
    pub rho_target: f64,
    pub source: ExpanderSource,
    /// Present when the expander fits under the materialization guard.
    pub expander: Option<Expander>,
}

impl ExpanderPlan {
    pub fn product_nodes(&self, left_nodes: usize) -> usize {
        left_nodes * self.nodes
    }

    pub fn product_edges(&self, left_edges: usize) -> usize {
        left_edges * self.nodes * self.degree
    }

    /// `ρΔ/(2d)`, at most `ε/2` by construction.
    pub fn loss(&self) -> f64 {
        self.rho * self.max_degree as f64 / (2.0 * self.degree as f64)
    }
}

/// Retries per (degree, size) candidate while planning.
pub const PLAN_RETRIES: usize = 4;

/// Searches for a triangle-free `d`-regular `H` with `ρ(H) ≤ dε/Δ`, starting
/// at the scheduled degree and moving up until generation succeeds.
pub fn plan_product_reduction(max_degree: usize, epsilon: f64, seed: u64) -> Result<ExpanderPlan> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon = {epsilon} must lie in (0, 1]")));
    }
    let d0 = schedule_degree(max_degree, epsilon);
    let mut last_err = None;
    for bump in 0..4usize {
        let d = d0 + bump * (d0 / 4).max(1);
        let rho_target = schedule_rho_target(d, max_degree, epsilon);
        for n in expander::node_schedule(d) {
            let s = expander::plan_seed(seed, d, n);
            let plan = |rho, source, expander| ExpanderPlan {
                max_degree,
                epsilon,
                degree: d,
                nodes: n,
                rho,
                rho_target,
                source,
                expander,
            };
            if n * d / 2 <= MAX_MATERIALIZED_EDGES {
                match gen_triangle_free_expander(d, n, rho_target, s, PLAN_RETRIES) {
                    Ok(e) => return Ok(plan(e.rho, e.source.clone(), Some(e))),
                    Err(e) => last_err = Some(e),
                }
            } else {
                match find_cayley_expander(d, n, rho_target, s, PLAN_RETRIES) {
                    Ok(c) => return Ok(plan(c.rho, ExpanderSource::Cayley { generators: c.generators }, None)),
                    Err(e) => last_err = Some(e),
                }
            }
        }
    }
    Err(last_err.unwrap_or(Error::ExpanderGeneration { attempts: 0, best_rho: None }))
}

/// `Ĝ = G ⊗ H` for an `H` chosen by [`plan_product_reduction`]. Refuses to
/// materialize products with more than `max_edges` edges.
pub fn product_reduction(g: &Graph, epsilon: f64, seed: u64, max_edges: usize) -> Result<ProductReduction> {
    let plan = plan_product_reduction(g.max_degree(), epsilon, seed)?;
    let edges = plan.product_edges(g.m());
    if edges > max_edges {
        return Err(Error::GuardExceeded { what: "product edge count", limit: max_edges, actual: edges });
    }
    let expander = plan.expander.ok_or(Error::GuardExceeded {
        what: "expander edge count",
        limit: MAX_MATERIALIZED_EDGES,
        actual: plan.nodes * plan.degree / 2,
    })?;
    product_with(g, expander, epsilon)
}

/// `Ĝ = G ⊗ H` for a caller-supplied expander.
pub fn product_with(g: &Graph, expander: Expander, epsilon: f64) -> Result<ProductReduction> {
    let (product, provenance) = kronecker_product(g, &expander.graph)?;
    let max_degree = g.max_degree();
    let factor = rounding_factor(expander.rho, max_degree, expander.degree);
    let ratio_bound = if factor > 0.0 { 1.0 / factor } else { f64::INFINITY };
    Ok(ProductReduction { product, provenance, expander, max_degree, epsilon, ratio_bound })
}
