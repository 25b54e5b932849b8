//! Triangle-free regular graphs with small spectral radius.
//!
//! Three sources are tried in order:
//!
//! 1. a catalog (odd cycles for `d = 2`, Petersen for `d = 3, N = 10`);
//! 2. the pairing model, repaired into a simple graph by double-edge
//!    switchings, then stripped of triangles by further switchings;
//! 3. Cayley graphs `Cay(Z_N, S)` for a random symmetric sum-free `S`. These
//!    are triangle-free by construction and their spectrum is the exact
//!    character sum `λ_j = Σ_{s∈S} cos(2π j s / N)`, so they scale past the
//!    reach of a dense eigensolve.
//!
//! Every candidate is verified (regular, triangle-free, `ρ ≤ target`) before
//! it is returned.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng as _;
use rustfft::{num_complex::Complex, FftPlanner};

use crate::error::{Error, Result};
use crate::graph::{canon, Edge, Graph};
use crate::rng::{derive_seed, rng_from_seed, trial_seed, Rng};

use super::{spectral_radius, SPECTRAL_SLACK};

/// Largest graph whose radius is verified by a dense eigensolve.
pub const MAX_EIGENSOLVE_NODES: usize = 2000;
/// Largest expander materialized as an explicit [`Graph`].
pub const MAX_MATERIALIZED_EDGES: usize = 4_000_000;
/// Largest Cayley group order considered by the planner.
pub const MAX_CAYLEY_NODES: usize = 1 << 24;

#[derive(Clone, Debug, PartialEq)]
pub enum ExpanderSource {
    Catalog(&'static str),
    Pairing { attempt: usize },
    /// Generators are the half of `S` in `1..=N/2`.
    Cayley { generators: Vec<usize> },
}

#[derive(Clone, Debug)]
pub struct Expander {
    pub graph: Graph,
    pub degree: usize,
    pub rho: f64,
    pub source: ExpanderSource,
}

pub(crate) fn catalog_petersen() -> Expander {
    Expander { graph: Graph::petersen(), degree: 3, rho: 2.0, source: ExpanderSource::Catalog("petersen") }
}

fn check_shape(d: usize, n: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("degree {d} is below 2")));
    }
    if (n * d) % 2 != 0 {
        return Err(Error::InvalidParameter(format!("N·d = {n}·{d} is odd")));
    }
    // A non-bipartite triangle-free graph has minimum degree at most 2N/5.
    if 5 * d > 2 * n {
        return Err(Error::InvalidParameter(format!(
            "no non-bipartite triangle-free {d}-regular graph on {n} vertices exists"
        )));
    }
    Ok(())
}

/// A verified triangle-free, non-bipartite `d`-regular graph on `n` vertices
/// with `ρ ≤ rho_target`. Deterministic in `seed`.
pub fn gen_triangle_free_expander(
    d: usize,
    n: usize,
    rho_target: f64,
    seed: u64,
    max_retries: usize,
) -> Result<Expander> {
    check_shape(d, n)?;
    if n * d / 2 > MAX_MATERIALIZED_EDGES {
        return Err(Error::GuardExceeded {
            what: "expander edge count",
            limit: MAX_MATERIALIZED_EDGES,
            actual: n * d / 2,
        });
    }
    let mut best: Option<f64> = None;
    let mut attempts = 0;
    let mut note = |rho: f64| best = Some(best.map_or(rho, |b: f64| b.min(rho)));

    if d == 2 {
        // Only odd cycles qualify; even cycles are bipartite.
        if n % 2 == 0 {
            return Err(Error::InvalidParameter(format!("C_{n} is bipartite")));
        }
        let rho = 2.0 * (std::f64::consts::PI / n as f64).cos();
        attempts += 1;
        if rho <= rho_target + SPECTRAL_SLACK {
            return Ok(Expander { graph: Graph::cycle(n), degree: 2, rho, source: ExpanderSource::Catalog("odd-cycle") });
        }
        return Err(Error::ExpanderGeneration { attempts, best_rho: Some(rho) });
    }
    if d == 3 && n == 10 {
        attempts += 1;
        note(2.0);
        if 2.0 <= rho_target + SPECTRAL_SLACK {
            return Ok(catalog_petersen());
        }
    }

    if pairing_feasible(d, n) {
        for attempt in 0..max_retries {
            attempts += 1;
            let mut rng = rng_from_seed(trial_seed(seed, "pairing", attempt));
            let Some(g) = random_regular_graph(n, d, &mut rng) else { continue };
            let Some(g) = remove_triangles(&g, &mut rng) else { continue };
            if !g.is_connected() || g.is_bipartite() {
                continue;
            }
            let rho = spectral_radius(&g)?.rho;
            note(rho);
            if rho <= rho_target + SPECTRAL_SLACK {
                return Ok(Expander { graph: g, degree: d, rho, source: ExpanderSource::Pairing { attempt } });
            }
        }
    }

    for attempt in 0..max_retries {
        attempts += 1;
        let mut rng = rng_from_seed(trial_seed(seed, "cayley", attempt));
        let Some(gens) = random_sum_free_set(n, d, &mut rng) else { continue };
        let rho = cayley_spectrum(n, &gens).1;
        note(rho);
        if rho <= rho_target + SPECTRAL_SLACK {
            let g = cayley_graph(n, &gens);
            debug_assert!(g.is_triangle_free());
            return Ok(Expander { graph: g, degree: d, rho, source: ExpanderSource::Cayley { generators: gens } });
        }
    }
    Err(Error::ExpanderGeneration { attempts, best_rho: best })
}

/// The pairing model has about `(d−1)³/6` triangles to switch away; only try
/// it when that is a small fraction of the `nd/2` edges and the result can
/// be eigensolved.
fn pairing_feasible(d: usize, n: usize) -> bool {
    n <= MAX_EIGENSOLVE_NODES && (d - 1).pow(3) <= 4 * n * d
}

/// Pairing model: shuffle `n·d` half-edges, pair them up, then switch away
/// loops and parallel edges. `None` if the repair stalls.
pub fn random_regular_graph(n: usize, d: usize, rng: &mut Rng) -> Option<Graph> {
    if d >= n || (n * d) % 2 != 0 {
        return None;
    }
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    stubs.shuffle(rng);
    let mut edges: Vec<Edge> = stubs.chunks_exact(2).map(|p| canon(p[0], p[1])).collect();
    let mut mult: BTreeMap<Edge, usize> = BTreeMap::new();
    for &e in &edges {
        *mult.entry(e).or_default() += 1;
    }
    let bad = |e: Edge, mult: &BTreeMap<Edge, usize>| e.0 == e.1 || mult[&e] > 1;
    let budget = 50 * edges.len() + 1000;
    let mut steps = 0;
    loop {
        let Some(i) = (0..edges.len()).find(|&i| bad(edges[i], &mult)) else { break };
        loop {
            steps += 1;
            if steps > budget {
                return None;
            }
            let j = rng.random_range(0..edges.len());
            if j == i {
                continue;
            }
            let (a, b) = edges[i];
            let (x, y) = edges[j];
            let (e1, e2) = if rng.random::<bool>() { (canon(a, x), canon(b, y)) } else { (canon(a, y), canon(b, x)) };
            if e1.0 == e1.1 || e2.0 == e2.1 || e1 == e2 || mult.contains_key(&e1) || mult.contains_key(&e2) {
                continue;
            }
            for old in [edges[i], edges[j]] {
                let c = mult.get_mut(&old).unwrap();
                *c -= 1;
                if *c == 0 {
                    mult.remove(&old);
                }
            }
            edges[i] = e1;
            edges[j] = e2;
            mult.insert(e1, 1);
            mult.insert(e2, 1);
            break;
        }
    }
    Graph::new(n, edges).ok()
}

struct SwapGraph {
    adj: Vec<BTreeSet<usize>>,
    edges: Vec<Edge>,
}

impl SwapGraph {
    fn common(&self, u: usize, v: usize) -> usize {
        let (s, l) = if self.adj[u].len() <= self.adj[v].len() { (u, v) } else { (v, u) };
        self.adj[s].iter().filter(|w| self.adj[l].contains(w)).count()
    }

    fn remove(&mut self, (u, v): Edge) {
        self.adj[u].remove(&v);
        self.adj[v].remove(&u);
    }

    fn add(&mut self, (u, v): Edge) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }
}

/// Double-edge switchings that preserve degrees and never increase the
/// triangle count (ties accepted with probability 1/2). `None` if triangles
/// survive the step budget.
pub fn remove_triangles(g: &Graph, rng: &mut Rng) -> Option<Graph> {
    let mut sg = SwapGraph {
        adj: (0..g.n()).map(|v| g.neighbors(v).iter().copied().collect()).collect(),
        edges: g.edges().to_vec(),
    };
    let m = sg.edges.len();
    if m < 2 {
        return g.is_triangle_free().then(|| g.clone());
    }
    let mut budget = 200 * m + 10_000;
    loop {
        let mut hot: Vec<usize> = (0..m).filter(|&i| sg.common(sg.edges[i].0, sg.edges[i].1) > 0).collect();
        if hot.is_empty() {
            break;
        }
        hot.shuffle(rng);
        for i in hot {
            let (u, v) = sg.edges[i];
            let lost_uv = sg.common(u, v);
            if lost_uv == 0 {
                continue;
            }
            if budget == 0 {
                return None;
            }
            budget -= 1;
            let j = rng.random_range(0..m);
            let (x, y) = sg.edges[j];
            if j == i || x == u || x == v || y == u || y == v {
                continue;
            }
            let (x, y) = if rng.random::<bool>() { (x, y) } else { (y, x) };
            if sg.adj[u].contains(&x) || sg.adj[v].contains(&y) {
                continue;
            }
            let lost = lost_uv + sg.common(x, y);
            sg.remove((u, v));
            sg.remove((x, y));
            let gained_ux = sg.common(u, x);
            sg.add((u, x));
            let gained = gained_ux + sg.common(v, y);
            if gained < lost || (gained == lost && rng.random::<bool>()) {
                sg.add((v, y));
                sg.edges[i] = canon(u, x);
                sg.edges[j] = canon(v, y);
            } else {
                sg.remove((u, x));
                sg.add((u, v));
                sg.add((x, y));
            }
        }
    }
    Graph::new(g.n(), sg.edges).ok()
}

/// Random symmetric sum-free `S ⊂ Z_n \ {0}` with `|S| = d`, grown greedily
/// in random order. Returns the generators in `1..=n/2`, sorted.
pub fn random_sum_free_set(n: usize, d: usize, rng: &mut Rng) -> Option<Vec<usize>> {
    if d == 0 || d >= n || (d % 2 == 1 && n % 2 == 1) {
        return None;
    }
    let mut in_s = vec![false; n];
    let mut members: Vec<usize> = Vec::with_capacity(d);
    let mut gens = Vec::new();

    let try_add = |x: usize, in_s: &mut Vec<bool>, members: &mut Vec<usize>, gens: &mut Vec<usize>| -> bool {
        let neg = (n - x) % n;
        let new: Vec<usize> = if neg == x { vec![x] } else { vec![x, neg] };
        if new.iter().any(|&y| in_s[y]) {
            return false;
        }
        let inside = |z: usize, in_s: &Vec<bool>| in_s[z] || new.contains(&z);
        // s + t ∉ S for all s, t in the enlarged set where one of them is new,
        // and no old pair sums to a new element.
        for &y in &new {
            for &t in members.iter().chain(new.iter()) {
                if inside((y + t) % n, in_s) {
                    return false;
                }
            }
            for &t in members.iter() {
                if in_s[(y + n - t) % n] {
                    return false;
                }
            }
        }
        for &y in &new {
            in_s[y] = true;
            members.push(y);
        }
        gens.push(x.min(neg));
        true
    };

    if d % 2 == 1 && !try_add(n / 2, &mut in_s, &mut members, &mut gens) {
        return None;
    }
    let mut candidates: Vec<usize> = (1..n.div_ceil(2)).collect();
    candidates.shuffle(rng);
    for x in candidates {
        if members.len() >= d {
            break;
        }
        if members.len() + 2 > d {
            break;
        }
        try_add(x, &mut in_s, &mut members, &mut gens);
    }
    if members.len() != d {
        return None;
    }
    gens.sort_unstable();
    Some(gens)
}

/// All eigenvalues `λ_j = Σ_{s∈S} cos(2π j s / n)` of `Cay(Z_n, ±gens)`, in
/// character order `j = 0..n`, via one FFT of the indicator of `S`.
fn character_sums(n: usize, gens: &[usize]) -> Vec<f64> {
    let mut buf = vec![Complex::new(0.0, 0.0); n];
    for &s in gens {
        buf[s].re = 1.0;
        buf[(n - s) % n].re = 1.0;
    }
    FftPlanner::<f64>::new().plan_fft_forward(n).process(&mut buf);
    buf.iter().map(|c| c.re).collect()
}

/// Descending eigenvalues of `Cay(Z_n, ±gens)` and its radius
/// `max_{j≠0} |λ_j|`.
pub fn cayley_spectrum(n: usize, gens: &[usize]) -> (Vec<f64>, f64) {
    let mut eig = character_sums(n, gens);
    let rho = eig[1..].iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    eig.sort_by(|a, b| b.total_cmp(a));
    (eig, rho)
}

/// `max_{j≠0} |λ_j|` of `Cay(Z_n, ±gens)`.
pub fn cayley_radius(n: usize, gens: &[usize]) -> f64 {
    character_sums(n, gens)[1..].iter().fold(0.0, |acc, v| acc.max(v.abs()))
}

/// `Cay(Z_n, ±gens)` as an explicit graph.
pub fn cayley_graph(n: usize, gens: &[usize]) -> Graph {
    let mut edges = Vec::new();
    for v in 0..n {
        for &s in gens {
            let w = (v + s) % n;
            if 2 * s == n && w < v {
                continue;
            }
            edges.push(canon(v, w));
        }
    }
    Graph::new(n, edges).expect("Cayley graph on distinct nonzero generators is simple")
}

/// A Cayley expander described by its generators, not materialized.
#[derive(Clone, Debug, PartialEq)]
pub struct CayleyExpander {
    pub nodes: usize,
    pub degree: usize,
    pub generators: Vec<usize>,
    pub rho: f64,
}

/// Like [`gen_triangle_free_expander`] restricted to Cayley graphs, without
/// building the graph, so `n` may be far beyond the materialization guard.
pub fn find_cayley_expander(d: usize, n: usize, rho_target: f64, seed: u64, max_retries: usize) -> Result<CayleyExpander> {
    check_shape(d, n)?;
    if n > MAX_CAYLEY_NODES {
        return Err(Error::GuardExceeded { what: "Cayley group order", limit: MAX_CAYLEY_NODES, actual: n });
    }
    let mut best: Option<f64> = None;
    for attempt in 0..max_retries {
        let mut rng = rng_from_seed(trial_seed(seed, "cayley", attempt));
        let Some(gens) = random_sum_free_set(n, d, &mut rng) else { continue };
        let rho = cayley_radius(n, &gens);
        best = Some(best.map_or(rho, |b: f64| b.min(rho)));
        if rho <= rho_target + SPECTRAL_SLACK {
            return Ok(CayleyExpander { nodes: n, degree: d, generators: gens, rho });
        }
    }
    Err(Error::ExpanderGeneration { attempts: max_retries, best_rho: best })
}

/// Candidate vertex counts for degree `d`, ascending.
pub(crate) fn node_schedule(d: usize) -> Vec<usize> {
    let even = |n: usize| if d % 2 == 1 && n % 2 == 1 { n + 1 } else { n };
    let mut out: Vec<usize> = [4, 8, 16, 32]
        .iter()
        .map(|c| c * d)
        .filter(|&n| pairing_feasible(d, n))
        .chain([1, 2, 4, 8].iter().map(|c| c * d * d))
        .map(even)
        .filter(|&n| n <= MAX_CAYLEY_NODES && 5 * d <= 2 * n)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub(crate) fn plan_seed(seed: u64, d: usize, n: usize) -> u64 {
    derive_seed(seed, &format!("plan-d{d}-n{n}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_examples() {
        let p = gen_triangle_free_expander(3, 10, 2.9, 1, 3).unwrap();
        assert_eq!(p.source, ExpanderSource::Catalog("petersen"));
        assert_eq!(p.graph, Graph::petersen());

        for n in [5, 7, 9, 21] {
            let c = gen_triangle_free_expander(2, n, 2.0, 1, 1).unwrap();
            assert_eq!(c.graph, Graph::cycle(n));
            assert!(c.rho < 2.0);
            let direct = spectral_radius(&c.graph).unwrap().rho;
            assert!((direct - c.rho).abs() < 1e-9);
        }
        assert!(gen_triangle_free_expander(2, 6, 2.0, 1, 1).is_err());
    }

    #[test]
    fn impossible_shapes_are_rejected() {
        assert!(matches!(gen_triangle_free_expander(3, 4, 10.0, 1, 5), Err(Error::InvalidParameter(_))));
        assert!(gen_triangle_free_expander(3, 7, 10.0, 1, 5).is_err());
    }

    #[test]
    fn pairing_path_produces_verified_graphs() {
        let e = gen_triangle_free_expander(4, 40, 3.9, 9, 10).unwrap();
        let g = &e.graph;
        assert_eq!(g.regular_degree(), Some(4));
        assert!(g.is_triangle_free() && !g.is_bipartite());
        assert!((spectral_radius(g).unwrap().rho - e.rho).abs() < 1e-9);
        let again = gen_triangle_free_expander(4, 40, 3.9, 9, 10).unwrap();
        assert_eq!(again.graph, e.graph);
    }

    #[test]
    fn switchings_preserve_degrees() {
        let mut rng = rng_from_seed(3);
        let g = random_regular_graph(30, 5 + 1, &mut rng).unwrap();
        assert_eq!(g.regular_degree(), Some(6));
        let t = remove_triangles(&g, &mut rng).unwrap();
        assert_eq!(t.regular_degree(), Some(6));
        assert!(t.is_triangle_free());
    }

    #[test]
    fn cayley_spectrum_matches_eigensolve() {
        let mut rng = rng_from_seed(11);
        for (n, d) in [(40, 4), (50, 5 + 1), (64, 5), (101, 6)] {
            let gens = random_sum_free_set(n, d, &mut rng).unwrap();
            let g = cayley_graph(n, &gens);
            assert_eq!(g.regular_degree(), Some(d));
            assert!(g.is_triangle_free());
            let (eig, rho) = cayley_spectrum(n, &gens);
            let rep = spectral_radius(&g).unwrap();
            for (a, b) in eig.iter().zip(&rep.eigenvalues) {
                assert!((a - b).abs() < 1e-9);
            }
            assert!((rho - rep.rho).abs() < 1e-9);
            assert!((cayley_radius(n, &gens) - rho).abs() < 1e-9);
        }
    }
}
