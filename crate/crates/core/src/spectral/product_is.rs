//! Independent sets in `G ⊗ H` and how they project back to `G`.

use nalgebra::{DMatrix, DVector};
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::oracles::max_independent_set;
use crate::rng::{rng_from_seed, trial_seed};

use super::{centered_normalized_adjacency, kronecker_product, rounding_factor, spectral_radius, SPECTRAL_SLACK};

/// A 0/1 vector over `V(G) × V(H)`, indexed `u·N + i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductIsVector {
    left: usize,
    right: usize,
    f: Vec<bool>,
}

impl ProductIsVector {
    pub fn new(left: usize, right: usize, f: Vec<bool>) -> Result<Self> {
        if f.len() != left * right {
            return Err(Error::InvalidParameter(format!(
                "indicator has length {}, expected {left}·{right}",
                f.len()
            )));
        }
        Ok(Self { left, right, f })
    }

    pub fn from_indices(left: usize, right: usize, idx: &[usize]) -> Result<Self> {
        let mut f = vec![false; left * right];
        for &i in idx {
            *f.get_mut(i).ok_or_else(|| Error::InvalidParameter(format!("product index {i} out of range")))? = true;
        }
        Self::new(left, right, f)
    }

    /// `rows × V(H)`.
    pub fn full_rows(left: usize, right: usize, rows: &[Vertex]) -> Result<Self> {
        let idx: Vec<usize> = rows.iter().flat_map(|&u| (0..right).map(move |i| u * right + i)).collect();
        Self::from_indices(left, right, &idx)
    }

    pub fn empty(left: usize, right: usize) -> Self {
        Self { left, right, f: vec![false; left * right] }
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn indicator(&self) -> &[bool] {
        &self.f
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.f.len()).filter(|&i| self.f[i]).collect()
    }

    /// `‖f‖² = |f|`.
    pub fn norm_sq(&self) -> usize {
        self.f.iter().filter(|&&b| b).count()
    }

    pub fn row_count(&self, u: Vertex) -> usize {
        self.f[u * self.right..(u + 1) * self.right].iter().filter(|&&b| b).count()
    }

    /// `p_u = (1/N) Σ_j f_{u,j}`.
    pub fn marginals(&self) -> Vec<f64> {
        (0..self.left).map(|u| self.row_count(u) as f64 / self.right as f64).collect()
    }

    /// `n × N` matrix with `F[u, i] = f_{u,i}`.
    fn as_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.left, self.right, |u, i| if self.f[u * self.right + i] { 1.0 } else { 0.0 })
    }

    /// First product edge inside the set, in canonical order.
    pub fn violation(&self, product: &Graph) -> Option<(usize, usize)> {
        product.edges().iter().copied().find(|&(a, b)| self.f[a] && self.f[b])
    }
}

fn ensure_independent(product: &Graph, f: &ProductIsVector) -> Result<()> {
    match f.violation(product) {
        Some((a, b)) => Err(Error::NotIndependent(a, b)),
        None => Ok(()),
    }
}

/// `fᵀ (A ⊗ M) f = Σ_{u,v} A_{uv} (F M Fᵀ)_{uv}`.
fn kron_form(a: &DMatrix<f64>, m: &DMatrix<f64>, f: &DMatrix<f64>) -> f64 {
    let inner = f * m * f.transpose();
    a.component_mul(&inner).sum()
}

/// Both sides of the two quadratic-form steps in the product IS bound.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticIdentities {
    /// `pᵀ A p`
    pub p_a_p: f64,
    /// `(1/N) fᵀ (A ⊗ J̃_N) f`
    pub scaled_j_form: f64,
    /// `fᵀ (A ⊗ J̃_N) f`
    pub j_form: f64,
    /// `|fᵀ (A ⊗ (B − J̃_N)) f|`
    pub c_form_abs: f64,
}

impl QuadraticIdentities {
    pub fn identity_gap(&self) -> f64 {
        (self.p_a_p - self.scaled_j_form).abs()
    }

    pub fn inequality_holds(&self) -> bool {
        self.j_form <= self.c_form_abs + SPECTRAL_SLACK
    }
}

/// Evaluates the marginal identity `pᵀAp = (1/N) fᵀ(A⊗J̃_N)f` and the
/// inequality `fᵀ(A⊗J̃_N)f ≤ |fᵀ(A⊗(B−J̃_N))f|` for independent `f`.
pub fn quadratic_identities(g: &Graph, h: &Graph, f: &ProductIsVector) -> Result<QuadraticIdentities> {
    let (product, _) = kronecker_product(g, h)?;
    ensure_independent(&product, f)?;
    let (c, _) = centered_normalized_adjacency(h)?;
    let big_n = h.n() as f64;
    let a = g.adjacency_matrix();
    let jt = DMatrix::from_element(h.n(), h.n(), 1.0 / big_n);
    let fm = f.as_matrix();
    let p = DVector::from_vec(f.marginals());
    let p_a_p = (p.transpose() * &a * &p)[(0, 0)];
    let j_form = kron_form(&a, &jt, &fm);
    Ok(QuadraticIdentities {
        p_a_p,
        scaled_j_form: j_form / big_n,
        j_form,
        c_form_abs: kron_form(&a, &c, &fm).abs(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RoundingReport {
    /// Rounded set size per trial, in trial order.
    pub sizes: Vec<usize>,
    pub best: Vec<Vertex>,
    pub mean: f64,
    /// Sample standard deviation.
    pub std_dev: f64,
    pub rho: f64,
    pub d: usize,
    pub max_degree: usize,
    /// `(1 − ρΔ/2d) · ‖f‖² / N`
    pub bound: f64,
}

impl RoundingReport {
    pub fn std_error(&self) -> f64 {
        self.std_dev / (self.sizes.len() as f64).sqrt()
    }

    /// `mean ≥ bound − 3·SE`.
    pub fn meets_bound(&self) -> bool {
        self.mean + SPECTRAL_SLACK >= self.bound - 3.0 * self.std_error()
    }
}

/// One rounding pass: keep `u` with probability `p_u`, then while the kept
/// set spans an edge, drop the endpoint of the first such edge with more
/// kept neighbours (ties drop the higher id).
fn round_once(g: &Graph, p: &[f64], rng: &mut crate::rng::Rng) -> Vec<bool> {
    let mut keep: Vec<bool> = p.iter().map(|&pu| rng.random::<f64>() < pu).collect();
    let inner = |keep: &[bool], v: Vertex| g.neighbors(v).iter().filter(|&&w| keep[w]).count();
    while let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| keep[u] && keep[v]) {
        let drop = if inner(&keep, u) > inner(&keep, v) { u } else { v };
        keep[drop] = false;
    }
    keep
}

/// Randomized projection of a product independent set back onto `g`,
/// repeated over `trials` seeded trials.
pub fn round_product_is(g: &Graph, h: &Graph, f: &ProductIsVector, trials: usize, seed: u64) -> Result<RoundingReport> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be positive".into()));
    }
    let d = h.regular_degree().filter(|&d| d > 0).ok_or(Error::NotRegular)?;
    if f.left() != g.n() || f.right() != h.n() {
        return Err(Error::InvalidParameter("indicator shape does not match the factors".into()));
    }
    let (product, _) = kronecker_product(g, h)?;
    ensure_independent(&product, f)?;
    let rho = spectral_radius(h)?.rho;
    let p = f.marginals();

    let mut sizes = Vec::with_capacity(trials);
    let mut best: Vec<Vertex> = Vec::new();
    for t in 0..trials {
        let mut rng = rng_from_seed(trial_seed(seed, "round-is", t));
        let keep = round_once(g, &p, &mut rng);
        debug_assert!(g.is_independent(&keep));
        let set: Vec<Vertex> = (0..g.n()).filter(|&v| keep[v]).collect();
        sizes.push(set.len());
        if t == 0 || set.len() > best.len() {
            best = set;
        }
    }
    let k = trials as f64;
    let mean = sizes.iter().map(|&s| s as f64).sum::<f64>() / k;
    let var = if trials > 1 {
        sizes.iter().map(|&s| (s as f64 - mean).powi(2)).sum::<f64>() / (k - 1.0)
    } else {
        0.0
    };
    let max_degree = g.max_degree();
    let bound = rounding_factor(rho, max_degree, d) * f.norm_sq() as f64 / h.n() as f64;
    Ok(RoundingReport { sizes, best, mean, std_dev: var.sqrt(), rho, d, max_degree, bound })
}

#[derive(Clone, Debug, PartialEq)]
pub enum NeighborhoodClause {
    /// `B = ∅`.
    Degenerate,
    /// `|B| > λn/d`; claim `|N(B)| > n − λn/d`.
    Large { bound: f64, holds: bool },
    /// `|B| ≤ λn/d`. `literal` is `|N(B)| ≥ λn/(2d)`; `expansion` is
    /// `|N(B)| ≥ (d/2λ)|B|`, the form the extraction argument consumes.
    Small { literal_bound: f64, literal_holds: bool, expansion_bound: f64, expansion_holds: bool },
}

#[derive(Clone, Debug, PartialEq)]
pub struct NeighborhoodReport {
    pub n: usize,
    pub d: usize,
    pub lambda: f64,
    pub rho: f64,
    pub set_size: usize,
    pub neighborhood_size: usize,
    /// `λn/d`
    pub threshold: f64,
    /// `λ < d/4`
    pub precondition_holds: bool,
    pub clause: NeighborhoodClause,
}

/// Checks the neighbourhood-size facts for a vertex set `b` of a regular
/// `h` with spectral bound `lambda ≥ ρ(h)`.
pub fn expander_neighborhood_check(h: &Graph, lambda: f64, b: &[Vertex]) -> Result<NeighborhoodReport> {
    let d = h.regular_degree().filter(|&d| d > 0).ok_or(Error::NotRegular)?;
    let rho = spectral_radius(h)?.rho;
    if lambda + SPECTRAL_SLACK < rho {
        return Err(Error::LambdaBelowRadius { lambda, rho });
    }
    let n = h.n();
    let mut in_b = vec![false; n];
    for &v in b {
        if v >= n {
            return Err(Error::InvalidParameter(format!("vertex {v} out of range")));
        }
        in_b[v] = true;
    }
    let set_size = in_b.iter().filter(|&&x| x).count();
    let mut nb = vec![false; n];
    for v in (0..n).filter(|&v| in_b[v]) {
        for &w in h.neighbors(v) {
            nb[w] = true;
        }
    }
    let neighborhood_size = nb.iter().filter(|&&x| x).count();
    let (nf, df) = (n as f64, d as f64);
    let threshold = lambda * nf / df;
    let ns = neighborhood_size as f64;
    let clause = if set_size == 0 {
        NeighborhoodClause::Degenerate
    } else if set_size as f64 > threshold {
        let bound = nf - threshold;
        NeighborhoodClause::Large { bound, holds: ns > bound - SPECTRAL_SLACK }
    } else {
        let literal_bound = lambda * nf / (2.0 * df);
        let expansion_bound = df * set_size as f64 / (2.0 * lambda);
        NeighborhoodClause::Small {
            literal_bound,
            literal_holds: ns + SPECTRAL_SLACK >= literal_bound,
            expansion_bound,
            expansion_holds: ns + SPECTRAL_SLACK >= expansion_bound,
        }
    };
    Ok(NeighborhoodReport {
        n,
        d,
        lambda,
        rho,
        set_size,
        neighborhood_size,
        threshold,
        precondition_holds: lambda < df / 4.0,
        clause,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlonExtraction {
    /// Rows of `S` holding at least `λn/d` entries.
    pub t: Vec<Vertex>,
    pub t_independent: bool,
    /// `t` greedily extended to a maximal independent set (when independent).
    pub t_maximal: Option<Vec<Vertex>>,
    pub s_size: usize,
    pub n: usize,
    pub d: usize,
    pub lambda: f64,
    /// `d/(2λ) ≥ Δ(G)`
    pub degree_condition: bool,
    /// `λ ≤ 2√(d−1)`
    pub ramanujan_condition: bool,
    /// `λ < d/4`
    pub small_lambda_condition: bool,
    /// `IS(G)` when the oracle ran.
    pub is_g: Option<usize>,
}

impl AlonExtraction {
    pub fn preconditions_hold(&self) -> bool {
        self.degree_condition && self.ramanujan_condition && self.small_lambda_condition
    }

    /// `|S| ≤ IS(G)·n`, the conclusion `rel-IS(G⊗H) ≤ rel-IS(G)` for this `S`.
    pub fn within_is_bound(&self) -> Option<bool> {
        self.is_g.map(|is| self.s_size <= is * self.n)
    }
}

/// Projects an independent set `s` of `g ⊗ h` onto the rows of `g` it
/// fills to at least `λn/d`. Unmet preconditions are reported, not raised,
/// and independence of the result is checked rather than assumed.
pub fn alon_extract(g: &Graph, h: &Graph, lambda: f64, s: &ProductIsVector) -> Result<AlonExtraction> {
    let d = h.regular_degree().filter(|&d| d > 0).ok_or(Error::NotRegular)?;
    let rho = spectral_radius(h)?.rho;
    if lambda + SPECTRAL_SLACK < rho {
        return Err(Error::LambdaBelowRadius { lambda, rho });
    }
    if s.left() != g.n() || s.right() != h.n() {
        return Err(Error::InvalidParameter("indicator shape does not match the factors".into()));
    }
    let (product, _) = kronecker_product(g, h)?;
    ensure_independent(&product, s)?;
    let n = h.n();
    let (nf, df) = (n as f64, d as f64);
    let threshold = lambda * nf / df;
    let t: Vec<Vertex> = (0..g.n()).filter(|&u| s.row_count(u) as f64 + SPECTRAL_SLACK >= threshold).collect();
    let mut member = vec![false; g.n()];
    for &u in &t {
        member[u] = true;
    }
    let t_independent = g.is_independent(&member);
    let t_maximal = t_independent.then(|| {
        for v in 0..g.n() {
            if !member[v] && g.neighbors(v).iter().all(|&w| !member[w]) {
                member[v] = true;
            }
        }
        (0..g.n()).filter(|&v| member[v]).collect()
    });
    let is_g = max_independent_set(g).ok().map(|r| r.value);
    Ok(AlonExtraction {
        t,
        t_independent,
        t_maximal,
        s_size: s.norm_sq(),
        n,
        d,
        lambda,
        degree_condition: df / (2.0 * lambda) >= g.max_degree() as f64,
        ramanujan_condition: lambda <= 2.0 * (df - 1.0).sqrt() + SPECTRAL_SLACK,
        small_lambda_condition: lambda < df / 4.0,
        is_g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::max_independent_set;
    use crate::spectral::gen_triangle_free_expander;

    fn product_mis(g: &Graph, h: &Graph) -> ProductIsVector {
        let (p, _) = kronecker_product(g, h).unwrap();
        let mis = max_independent_set(&p).unwrap();
        ProductIsVector::from_indices(g.n(), h.n(), &mis.witness).unwrap()
    }

    #[test]
    fn vector_basics() {
        let f = ProductIsVector::full_rows(3, 4, &[0, 2]).unwrap();
        assert_eq!(f.norm_sq(), 8);
        assert_eq!(f.marginals(), vec![1.0, 0.0, 1.0]);
        assert!(ProductIsVector::new(2, 2, vec![true]).is_err());
        assert!(ProductIsVector::from_indices(2, 2, &[4]).is_err());
    }

    #[test]
    fn full_rows_of_a_maximum_set_round_deterministically() {
        let g = Graph::cycle(5);
        let h = Graph::petersen();
        let is = max_independent_set(&g).unwrap();
        let f = ProductIsVector::full_rows(5, 10, &is.witness).unwrap();
        let r = round_product_is(&g, &h, &f, 20, 1).unwrap();
        assert!(r.sizes.iter().all(|&s| s == is.value));
        assert_eq!(r.best, is.witness);
        assert_eq!(r.std_dev, 0.0);
    }

    #[test]
    fn double_cover_cycles() {
        // K2 ⊗ C4 is two 4-cycles: {(0,0),(1,1),(0,2),(1,3)} and its mirror.
        let g = Graph::path(2);
        let h = Graph::cycle(4);
        let a = ProductIsVector::from_indices(2, 4, &[0, 2, 5, 7]).unwrap();
        assert!(round_product_is(&g, &h, &a, 5, 0).is_err(), "a whole cycle is not independent");
        // one side of the cover: full row 0 → p = (1, 0)
        let row = ProductIsVector::full_rows(2, 4, &[0]).unwrap();
        let r = round_product_is(&g, &h, &row, 10, 0).unwrap();
        assert!(r.sizes.iter().all(|&s| s == 1));
        // the other independent colour class of one cycle → p = (½, ½)
        let half = ProductIsVector::from_indices(2, 4, &[0, 2, 4, 6]).unwrap();
        assert_eq!(half.marginals(), vec![0.5, 0.5]);
        let r = round_product_is(&g, &h, &half, 200, 3).unwrap();
        assert!(r.sizes.iter().all(|&s| s <= 1));
        assert!(r.meets_bound());
    }

    #[test]
    fn c5_petersen_rounding_meets_bound() {
        let g = Graph::cycle(5);
        let h = Graph::petersen();
        let f = product_mis(&g, &h);
        let r = round_product_is(&g, &h, &f, 1000, 42).unwrap();
        assert!((r.bound - f.norm_sq() as f64 / 30.0).abs() < 1e-9);
        assert!(r.meets_bound(), "{} vs {}", r.mean, r.bound);
        let again = round_product_is(&g, &h, &f, 1000, 42).unwrap();
        assert_eq!(r.mean.to_bits(), again.mean.to_bits());
    }

    #[test]
    fn quadratic_forms_on_independent_sets() {
        let g = Graph::cycle(5);
        let h = Graph::petersen();
        for f in [product_mis(&g, &h), ProductIsVector::full_rows(5, 10, &[1, 3]).unwrap()] {
            let q = quadratic_identities(&g, &h, &f).unwrap();
            assert!(q.identity_gap() < 1e-9);
            assert!(q.inequality_holds());
        }
    }

    #[test]
    fn neighborhood_examples() {
        let p = Graph::petersen();
        let r = expander_neighborhood_check(&p, 2.0, &[]).unwrap();
        assert_eq!(r.clause, NeighborhoodClause::Degenerate);
        assert!(!r.precondition_holds);

        let all: Vec<usize> = (0..10).collect();
        let r = expander_neighborhood_check(&p, 2.0, &all).unwrap();
        assert_eq!(r.neighborhood_size, 10);
        assert!(matches!(r.clause, NeighborhoodClause::Large { holds: true, .. }));

        assert!(matches!(expander_neighborhood_check(&p, 1.5, &[0]), Err(Error::LambdaBelowRadius { .. })));
        assert!(matches!(expander_neighborhood_check(&Graph::path(3), 5.0, &[0]), Err(Error::NotRegular)));
    }

    #[test]
    fn expansion_form_on_a_generated_expander() {
        let e = gen_triangle_free_expander(16, 128, 15.0, 5, 4).unwrap();
        let lambda = e.rho;
        for size in [1, 2, 4, 8] {
            let b: Vec<usize> = (0..size).map(|i| i * 7).collect();
            let r = expander_neighborhood_check(&e.graph, lambda, &b).unwrap();
            if let NeighborhoodClause::Small { expansion_holds, .. } = r.clause {
                assert!(expansion_holds);
            }
        }
    }

    #[test]
    fn extraction_examples() {
        let g = Graph::path(3);
        let h = Graph::petersen();
        let is = max_independent_set(&g).unwrap();
        let s = ProductIsVector::full_rows(3, 10, &is.witness).unwrap();
        let x = alon_extract(&g, &h, 2.0, &s).unwrap();
        assert_eq!(x.t, is.witness);
        assert!(x.t_independent);
        assert!(!x.preconditions_hold());

        let x = alon_extract(&g, &h, 2.0, &ProductIsVector::empty(3, 10)).unwrap();
        assert!(x.t.is_empty());
        assert_eq!(x.t_maximal.as_deref(), Some(&[0, 2][..]));

        let s = product_mis(&g, &h);
        let x = alon_extract(&g, &h, 2.0, &s).unwrap();
        assert!(x.t_independent);
        assert_eq!(x.within_is_bound(), Some(true));
    }
}
