//! Exact ground truth at desk scale: minimum vertex cover, maximum
//! independent set and the optimal edge-partition cost.
//!
//! The two graph searches run on `u64` vertex masks, so they are bounded by
//! 64 vertices before the explicit size guards even apply.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::reduction::{Clustering, Rational};

pub const MAX_VC_VERTICES: usize = 40;
pub const MAX_IS_VERTICES: usize = 60;
pub const MAX_EXHAUSTIVE_VERTICES: usize = 20;
pub const MAX_PARTITION_EDGES: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult<V, W> {
    pub value: V,
    pub witness: W,
    pub nodes_explored: u64,
}

pub type SetResult = OracleResult<usize, Vec<Vertex>>;
pub type PartitionResult = OracleResult<Rational, Clustering>;

fn guard(what: &'static str, limit: usize, actual: usize) -> Result<()> {
    if actual > limit {
        Err(Error::GuardExceeded { what, limit, actual })
    } else {
        Ok(())
    }
}

fn masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|u| g.neighbors(u).iter().fold(0u64, |m, &v| m | 1 << v))
        .collect()
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn mask_to_vec(mut m: u64) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Size of a greedy maximal matching inside `alive`; a lower bound on any
/// vertex cover of the induced subgraph.
fn greedy_matching(adj: &[u64], alive: u64) -> usize {
    let mut free = alive;
    let mut size = 0;
    let mut rest = alive;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if free & (1 << u) == 0 {
            continue;
        }
        let nb = adj[u] & free & !(1u64 << u);
        if nb != 0 {
            let v = nb.trailing_zeros() as usize;
            free &= !(1u64 << u | 1u64 << v);
            size += 1;
        }
    }
    size
}

/// Max-degree vertex inside `alive` (lowest id on ties) and its degree.
fn max_degree_vertex(adj: &[u64], alive: u64) -> (usize, u32) {
    let mut best = (usize::MAX, 0u32);
    let mut rest = alive;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (adj[u] & alive).count_ones();
        if best.0 == usize::MAX || d > best.1 {
            best = (u, d);
        }
    }
    best
}

struct VcSearch<'a> {
    adj: &'a [u64],
    best_size: usize,
    best: u64,
    nodes: u64,
}

impl VcSearch<'_> {
    fn run(&mut self, mut alive: u64, mut size: usize, mut chosen: u64) {
        self.nodes += 1;
        // degree-0 vertices leave, degree-1 vertices force their neighbour
        loop {
            let mut changed = false;
            let mut rest = alive;
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if alive & (1 << u) == 0 {
                    continue;
                }
                let nb = self.adj[u] & alive;
                match nb.count_ones() {
                    0 => {
                        alive &= !(1u64 << u);
                        changed = true;
                    }
                    1 => {
                        let v = nb.trailing_zeros() as usize;
                        chosen |= 1 << v;
                        size += 1;
                        alive &= !(1u64 << u | 1u64 << v);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }
        if alive == 0 {
            if size < self.best_size {
                self.best_size = size;
                self.best = chosen;
            }
            return;
        }
        if size + greedy_matching(self.adj, alive) >= self.best_size {
            return;
        }
        let (v, _) = max_degree_vertex(self.adj, alive);
        self.run(alive & !(1u64 << v), size + 1, chosen | 1 << v);
        let nb = self.adj[v] & alive;
        self.run(alive & !nb & !(1u64 << v), size + nb.count_ones() as usize, chosen | nb);
    }
}

/// Repeatedly take a max-degree vertex. Used as the search incumbent.
pub fn greedy_vertex_cover(g: &Graph) -> Vec<Vertex> {
    let adj = masks(g);
    let mut alive = full_mask(g.n());
    let mut cover = Vec::new();
    loop {
        let (v, d) = max_degree_vertex(&adj, alive);
        if v == usize::MAX || d == 0 {
            break;
        }
        cover.push(v);
        alive &= !(1u64 << v);
    }
    cover.sort_unstable();
    cover
}

/// Exact minimum vertex cover by branch and bound (`n <= 40`).
pub fn min_vertex_cover(g: &Graph) -> Result<SetResult> {
    guard("vertex cover oracle vertex count", MAX_VC_VERTICES, g.n())?;
    let adj = masks(g);
    let greedy = greedy_vertex_cover(g);
    let mut search = VcSearch {
        adj: &adj,
        best_size: greedy.len(),
        best: greedy.iter().fold(0u64, |m, &v| m | 1 << v),
        nodes: 0,
    };
    search.run(full_mask(g.n()), 0, 0);
    let witness = mask_to_vec(search.best);
    debug_assert!(g.is_vertex_cover(&membership(g.n(), &witness)));
    Ok(OracleResult { value: witness.len(), witness, nodes_explored: search.nodes })
}

struct IsSearch<'a> {
    adj: &'a [u64],
    best_size: usize,
    best: u64,
    nodes: u64,
}

impl IsSearch<'_> {
    fn run(&mut self, mut alive: u64, mut size: usize, mut chosen: u64) {
        self.nodes += 1;
        // vertices of degree <= 1 belong to some maximum independent set
        loop {
            let mut changed = false;
            let mut rest = alive;
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if alive & (1 << u) == 0 {
                    continue;
                }
                let nb = self.adj[u] & alive;
                if nb.count_ones() <= 1 {
                    chosen |= 1 << u;
                    size += 1;
                    alive &= !(nb | 1u64 << u);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if alive == 0 {
            if size > self.best_size {
                self.best_size = size;
                self.best = chosen;
            }
            return;
        }
        let bound = size + alive.count_ones() as usize - greedy_matching(self.adj, alive);
        if bound <= self.best_size {
            return;
        }
        let (v, _) = max_degree_vertex(self.adj, alive);
        self.run(alive & !(self.adj[v] | 1u64 << v), size + 1, chosen | 1 << v);
        self.run(alive & !(1u64 << v), size, chosen);
    }
}

/// Exact maximum independent set by branch and bound (`n <= 60`).
pub fn max_independent_set(g: &Graph) -> Result<SetResult> {
    guard("independent set oracle vertex count", MAX_IS_VERTICES, g.n())?;
    let adj = masks(g);
    let mut search = IsSearch { adj: &adj, best_size: 0, best: 0, nodes: 0 };
    search.run(full_mask(g.n()), 0, 0);
    let witness = mask_to_vec(search.best);
    debug_assert!(g.is_independent(&membership(g.n(), &witness)));
    Ok(OracleResult { value: witness.len(), witness, nodes_explored: search.nodes })
}

/// Minimum vertex cover by trying all subsets in order of size (`n <= 20`).
pub fn min_vertex_cover_exhaustive(g: &Graph) -> Result<SetResult> {
    guard("exhaustive vertex cover vertex count", MAX_EXHAUSTIVE_VERTICES, g.n())?;
    let n = g.n();
    let mut best: Option<u32> = None;
    let mut nodes = 0u64;
    for mask in 0u32..(1u32 << n) {
        nodes += 1;
        if best.is_some_and(|b| mask.count_ones() >= b.count_ones()) {
            continue;
        }
        if g.edges().iter().all(|&(u, v)| mask & (1 << u | 1 << v) != 0) {
            best = Some(mask);
        }
    }
    let witness = mask_to_vec(best.unwrap_or(0) as u64);
    Ok(OracleResult { value: witness.len(), witness, nodes_explored: nodes })
}

pub fn membership(n: usize, set: &[Vertex]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in set {
        m[v] = true;
    }
    m
}

/// Vertices not in `set`.
pub fn complement(n: usize, set: &[Vertex]) -> Vec<Vertex> {
    let m = membership(n, set);
    (0..n).filter(|&v| !m[v]).collect()
}

/// `IS(G) / |V|`
pub fn rel_is(g: &Graph) -> Result<Rational> {
    let is = max_independent_set(g)?;
    Ok(Rational::new(is.value as i64, g.n() as i64))
}

/// `VC(G) / |V|`
pub fn rel_vc(g: &Graph) -> Result<Rational> {
    let vc = min_vertex_cover(g)?;
    Ok(Rational::new(vc.value as i64, g.n() as i64))
}

struct PartitionSearch<'a> {
    g: &'a Graph,
    k: usize,
    degrees: Vec<Vec<i64>>,
    sizes: Vec<i64>,
    nu: Vec<i64>,
    assignment: Vec<usize>,
    best: Option<Rational>,
    best_assignment: Vec<usize>,
    nodes: u64,
}

impl PartitionSearch<'_> {
    fn partial(&self, used: usize) -> Rational {
        (0..used)
            .filter(|&b| self.sizes[b] > 0)
            .map(|b| {
                let m = self.sizes[b];
                Rational::new(2 * m * m - self.nu[b], m)
            })
            .sum()
    }

    fn recurse(&mut self, i: usize, used: usize) {
        self.nodes += 1;
        let cost = self.partial(used);
        // block costs only grow as edges are added
        if self.best.is_some_and(|b| cost >= b) {
            return;
        }
        if i == self.g.m() {
            self.best = Some(cost);
            self.best_assignment = self.assignment.clone();
            return;
        }
        let (u, v) = self.g.edges()[i];
        for b in 0..(used + 1).min(self.k) {
            self.assignment[i] = b;
            let du = self.degrees[b][u];
            let dv = self.degrees[b][v];
            self.nu[b] += 2 * (du + dv) + 2;
            self.degrees[b][u] += 1;
            self.degrees[b][v] += 1;
            self.sizes[b] += 1;
            self.recurse(i + 1, used.max(b + 1));
            self.sizes[b] -= 1;
            self.degrees[b][u] -= 1;
            self.degrees[b][v] -= 1;
            self.nu[b] -= 2 * (du + dv) + 2;
        }
    }
}

/// Minimum of `Σ_F Cost(F)` over partitions of the edges into at most `k`
/// blocks, enumerated as restricted-growth strings (`m <= 12`). The witness
/// is the first optimal partition in that order.
pub fn brute_force_edge_partition(g: &Graph, k: usize) -> Result<PartitionResult> {
    guard("edge partition oracle edge count", MAX_PARTITION_EDGES, g.m())?;
    if g.m() == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    let k = k.min(g.m());
    let mut search = PartitionSearch {
        g,
        k,
        degrees: vec![vec![0; g.n()]; k],
        sizes: vec![0; k],
        nu: vec![0; k],
        assignment: vec![0; g.m()],
        best: None,
        best_assignment: Vec::new(),
        nodes: 0,
    };
    search.recurse(0, 0);
    let value = search.best.unwrap_or_else(Rational::zero);
    Ok(OracleResult {
        value,
        witness: Clustering::new(k, search.best_assignment)?,
        nodes_explored: search.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate;
    use crate::reduction::edge_clustering_cost;

    #[test]
    fn vertex_cover_examples() {
        assert_eq!(min_vertex_cover(&Graph::path(2)).unwrap().value, 1);
        assert_eq!(min_vertex_cover(&Graph::cycle(5)).unwrap().value, 3);
        assert_eq!(min_vertex_cover_exhaustive(&Graph::cycle(5)).unwrap().value, 3);
        let p = min_vertex_cover(&Graph::petersen()).unwrap();
        assert_eq!(p.value, 6);
        assert!(Graph::petersen().is_vertex_cover(&membership(10, &p.witness)));
        assert!(matches!(min_vertex_cover(&Graph::empty(41)), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn independent_set_examples() {
        assert_eq!(max_independent_set(&Graph::empty(5)).unwrap().value, 5);
        assert_eq!(max_independent_set(&Graph::cycle(5)).unwrap().value, 2);
        let p = max_independent_set(&Graph::petersen()).unwrap();
        assert_eq!(p.value, 4);
        assert!(Graph::petersen().is_independent(&membership(10, &p.witness)));
        assert_eq!(rel_is(&Graph::cycle(5)).unwrap(), Rational::new(2, 5));
        assert!(max_independent_set(&Graph::empty(61)).is_err());
    }

    #[test]
    fn partition_examples() {
        let c5 = Graph::cycle(5);
        assert_eq!(brute_force_edge_partition(&c5, 5).unwrap().value, Rational::zero());
        let r = brute_force_edge_partition(&c5, 2).unwrap();
        assert_eq!(r.value, Rational::new(11, 3));
        assert_eq!(edge_clustering_cost(&c5, &r.witness).unwrap(), r.value);
        assert_eq!(brute_force_edge_partition(&Graph::path(4), 2).unwrap().value, Rational::from_integer(1));
        assert!(brute_force_edge_partition(&Graph::complete(6), 2).is_err());
    }

    #[test]
    fn branch_and_bound_matches_exhaustive() {
        for n in 1..=6 {
            for g in enumerate::graphs(n) {
                let bb = min_vertex_cover(&g).unwrap();
                let ex = min_vertex_cover_exhaustive(&g).unwrap();
                assert_eq!(bb.value, ex.value, "{g:?}");
                assert!(g.is_vertex_cover(&membership(n, &bb.witness)));
                let is = max_independent_set(&g).unwrap();
                assert_eq!(is.value + bb.value, n);
                assert!(g.is_vertex_cover(&membership(n, &complement(n, &is.witness))));
                assert!(g.is_independent(&membership(n, &complement(n, &bb.witness))));
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;
        use rand::SeedableRng;
        use rand_chacha::ChaCha8Rng;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn duality_and_exhaustive_agreement(n in 1usize..=18, p in 0.05f64..0.6, seed: u64) {
                let g = Graph::gnp(n, p, &mut ChaCha8Rng::seed_from_u64(seed));
                let vc = min_vertex_cover(&g).unwrap();
                prop_assert_eq!(vc.value, min_vertex_cover_exhaustive(&g).unwrap().value);
                let is = max_independent_set(&g).unwrap();
                prop_assert_eq!(vc.value + is.value, n);
            }

            #[test]
            fn partition_optimum_monotone_in_k(n in 3usize..=6, m in 1usize..=8, seed: u64) {
                let g = Graph::gnm(n, m, &mut ChaCha8Rng::seed_from_u64(seed));
                prop_assume!(g.m() > 0);
                let values: Vec<Rational> = (1..=g.m())
                    .map(|k| brute_force_edge_partition(&g, k).unwrap().value)
                    .collect();
                for w in values.windows(2) {
                    prop_assert!(w[1] <= w[0]);
                }
                prop_assert_eq!(*values.last().unwrap(), Rational::zero());
            }
        }
    }
}
