//! Simple undirected graphs and the edge-list text format.
//!
//! Vertices are `0..n` inside the library. The text format is 1-indexed:
//!
//! ```text
//! c optional comment
//! p edge <n> <m>
//! e <u> <v>
//! ```
//!
//! Edges are stored canonically as `(min, max)` and kept sorted, so every
//! iteration order (and therefore every tie-break downstream) is fixed.

use std::collections::VecDeque;
use std::fmt::Write as _;

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Edge = (Vertex, Vertex);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<Vertex>>,
}

/// Canonical `(min, max)` form of an unordered pair.
#[inline]
pub fn canon(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Builds a graph, rejecting loops, out-of-range endpoints and duplicates.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut list: Vec<Edge> = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {}", u + 1)));
            }
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) out of range 1..={n}",
                    u + 1,
                    v + 1
                )));
            }
            list.push(canon(u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge ({}, {})",
                w[0].0 + 1,
                w[0].1 + 1
            )));
        }
        Ok(Self::from_sorted_unchecked(n, list))
    }

    fn from_sorted_unchecked(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unchecked(n, Vec::new())
    }

    /// Path on `n` vertices (`n - 1` edges).
    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::new(n, edges).expect("valid complete graph")
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("valid star")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (0..b).map(move |v| (u, a + v)));
        Self::new(a + b, edges).expect("valid complete bipartite graph")
    }

    /// The Petersen graph: outer 5-cycle, inner pentagram, spokes.
    pub fn petersen() -> Self {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, 5 + i));
        }
        Self::new(10, edges).expect("valid Petersen graph")
    }

    /// Erdős–Rényi G(n, p).
    pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random::<f64>() < p {
                    edges.push((u, v));
                }
            }
        }
        Self::from_sorted_unchecked(n, edges)
    }

    /// Uniform graph with exactly `m` edges (clamped to the number of pairs).
    pub fn gnm<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Self {
        let mut pairs: Vec<Edge> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        pairs.shuffle(rng);
        pairs.truncate(m);
        pairs.sort_unstable();
        Self::from_sorted_unchecked(n, pairs)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map(Vec::len)?;
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of the edge in canonical order.
    pub fn edge_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.edges.binary_search(&canon(u, v)).ok()
    }

    pub fn is_triangle_free(&self) -> bool {
        // For each edge u < v, look for a common neighbour via a sorted merge.
        self.edges.iter().all(|&(u, v)| {
            let (a, b) = (&self.adj[u], &self.adj[v]);
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                match a[i].cmp(&b[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => return false,
                }
            }
            true
        })
    }

    /// A triangle `(a, b, c)` with `a < b < c`, if one exists.
    pub fn find_triangle(&self) -> Option<(Vertex, Vertex, Vertex)> {
        for &(u, v) in &self.edges {
            if let Some(&w) = self.adj[u].iter().find(|&&w| w > v && self.has_edge(v, w)) {
                return Some((u, v, w));
            }
        }
        None
    }

    pub fn adjacency_matrix(&self) -> DMatrix<f64> {
        let mut a = DMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a[(u, v)] = 1.0;
            a[(v, u)] = 1.0;
        }
        a
    }

    /// Connected when every vertex is reachable from vertex 0 (the empty
    /// graph on zero vertices counts as connected).
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.bfs_component(0).len() == self.n
    }

    fn bfs_component(&self, start: Vertex) -> Vec<Vertex> {
        let mut seen = vec![false; self.n];
        let mut order = vec![start];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        order
    }

    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Whether `set` (a 0/1 membership vector over vertices) spans no edge.
    pub fn is_independent(&self, set: &[bool]) -> bool {
        self.edges.iter().all(|&(u, v)| !(set[u] && set[v]))
    }

    /// Whether every edge has an endpoint in `set`.
    pub fn is_vertex_cover(&self, set: &[bool]) -> bool {
        self.edges.iter().all(|&(u, v)| set[u] || set[v])
    }

    /// Subgraph on the same vertex set keeping only the given edges.
    pub fn edge_subgraph(&self, edge_ids: &[usize]) -> Graph {
        let mut edges: Vec<Edge> = edge_ids.iter().map(|&i| self.edges[i]).collect();
        edges.sort_unstable();
        edges.dedup();
        Self::from_sorted_unchecked(self.n, edges)
    }

    /// Serializes to the 1-indexed edge-list format, edges in canonical order.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(16 + 12 * self.edges.len());
        writeln!(out, "p edge {} {}", self.n, self.edges.len()).unwrap();
        for &(u, v) in &self.edges {
            writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_graph(text)
    }
}

/// Parses the edge-list format. Errors carry 1-based line numbers.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let err = |line: usize, msg: String| Error::Parse { line, msg };
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<Edge> = Vec::new();
    let mut seen = std::collections::HashSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') && (line.len() == 1 || line.as_bytes()[1] == b' ') {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(err(line_no, "second 'p' header".into()));
                }
                if parts.next() != Some("edge") {
                    return Err(err(line_no, "expected 'p edge <n> <m>'".into()));
                }
                let n = parse_count(parts.next(), line_no, "vertex count")?;
                let m = parse_count(parts.next(), line_no, "edge count")?;
                if parts.next().is_some() {
                    return Err(err(line_no, "trailing tokens after header".into()));
                }
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header.ok_or_else(|| err(line_no, "edge before 'p edge' header".into()))?;
                let u = parse_count(parts.next(), line_no, "endpoint")?;
                let v = parse_count(parts.next(), line_no, "endpoint")?;
                if parts.next().is_some() {
                    return Err(err(line_no, "trailing tokens after edge".into()));
                }
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(err(line_no, format!("endpoint {x} out of range 1..={n}")));
                    }
                }
                if u == v {
                    return Err(err(line_no, format!("loop at vertex {u}")));
                }
                let e = canon(u - 1, v - 1);
                if !seen.insert(e) {
                    return Err(err(line_no, format!("duplicate edge ({u}, {v})")));
                }
                edges.push(e);
            }
            Some(tok) => return Err(err(line_no, format!("unexpected line type '{tok}'"))),
            None => unreachable!("blank lines are skipped"),
        }
    }

    let (n, m) = header.ok_or_else(|| err(0, "missing 'p edge <n> <m>' header".into()))?;
    if edges.len() != m {
        return Err(err(
            text.lines().count(),
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    edges.sort_unstable();
    Ok(Graph::from_sorted_unchecked(n, edges))
}

fn parse_count(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::Parse { line, msg: format!("missing {what}") })?;
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("invalid {what} '{tok}'"),
    })
}

/// A vertex-cover decision instance: does `graph` have a cover of size `k`?
#[derive(Clone, Debug)]
pub struct VcInstance {
    pub graph: Graph,
    pub k: usize,
}

impl VcInstance {
    pub fn new(graph: Graph, k: usize) -> Result<Self> {
        if k == 0 || k > graph.n() {
            return Err(Error::InvalidParameter(format!(
                "vertex cover budget k = {k} must lie in 1..={}",
                graph.n()
            )));
        }
        Ok(Self { graph, k })
    }

    /// Average number of edges per budgeted vertex, `m / k`.
    pub fn edges_per_vertex(&self) -> f64 {
        self.graph.m() as f64 / self.k as f64
    }
}

/// Exhaustive enumeration of small graphs up to isomorphism.
pub mod enumerate {
    use super::{Edge, Graph};
    use std::collections::BTreeSet;

    /// Bit index of the pair `i < j` in the upper-triangular code.
    #[inline]
    fn bit(i: usize, j: usize) -> u32 {
        (j * (j - 1) / 2 + i) as u32
    }

    fn code_of(n: usize, adj: &[u32], perm: &[usize]) -> u32 {
        // perm[v] = new label of v
        let mut code = 0u32;
        for u in 0..n {
            let mut row = adj[u];
            while row != 0 {
                let v = row.trailing_zeros() as usize;
                row &= row - 1;
                if u < v {
                    let (a, b) = if perm[u] < perm[v] { (perm[u], perm[v]) } else { (perm[v], perm[u]) };
                    code |= 1 << bit(a, b);
                }
            }
        }
        code
    }

    /// Canonical code: minimum over relabelings that respect a vertex
    /// invariant (degree, then sorted neighbour degrees).
    pub fn canonical_code(g: &Graph) -> u32 {
        let n = g.n();
        assert!(n <= 8, "canonical codes are limited to 8 vertices");
        let adj: Vec<u32> = (0..n)
            .map(|u| g.neighbors(u).iter().fold(0u32, |acc, &v| acc | (1 << v)))
            .collect();
        let inv: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|u| {
                let mut nd: Vec<usize> = g.neighbors(u).iter().map(|&v| g.degree(v)).collect();
                nd.sort_unstable();
                (g.degree(u), nd)
            })
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| inv[a].cmp(&inv[b]));
        // Blocks of vertices with equal invariant occupy consecutive labels.
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, &v) in order.iter().enumerate() {
            if i > 0 && inv[order[i - 1]] == inv[v] {
                blocks.last_mut().unwrap().push(v);
            } else {
                blocks.push(vec![v]);
            }
        }
        let mut perm = vec![0usize; n];
        let mut best = u32::MAX;
        permute_blocks(&blocks, 0, 0, &mut perm, &mut |p| {
            best = best.min(code_of(n, &adj, p));
        });
        best
    }

    fn permute_blocks(
        blocks: &[Vec<usize>],
        bi: usize,
        offset: usize,
        perm: &mut [usize],
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if bi == blocks.len() {
            visit(perm);
            return;
        }
        let mut block = blocks[bi].clone();
        heap_permutations(&mut block, &mut |arr| {
            for (i, &v) in arr.iter().enumerate() {
                perm[v] = offset + i;
            }
            permute_blocks(blocks, bi + 1, offset + arr.len(), perm, visit);
        });
    }

    fn heap_permutations(arr: &mut [usize], visit: &mut dyn FnMut(&[usize])) {
        fn rec(k: usize, arr: &mut [usize], visit: &mut dyn FnMut(&[usize])) {
            if k <= 1 {
                visit(arr);
                return;
            }
            for i in 0..k {
                rec(k - 1, arr, visit);
                if k % 2 == 0 {
                    arr.swap(i, k - 1);
                } else {
                    arr.swap(0, k - 1);
                }
            }
        }
        let k = arr.len();
        rec(k, arr, visit);
    }

    pub fn from_code(n: usize, code: u32) -> Graph {
        let mut edges: Vec<Edge> = Vec::new();
        for j in 1..n {
            for i in 0..j {
                if code & (1 << bit(i, j)) != 0 {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(n, edges).expect("code describes a simple graph")
    }

    /// One representative per isomorphism class of graphs on exactly `n`
    /// vertices (isolated vertices allowed). `n <= 8`; `n = 8` is slow.
    pub fn graphs(n: usize) -> Vec<Graph> {
        assert!(n <= 8);
        let mut codes: BTreeSet<u32> = BTreeSet::new();
        codes.insert(0);
        for size in 1..n {
            // extend every class on `size` vertices by one vertex
            let mut next = BTreeSet::new();
            for &c in &codes {
                let base = from_code(size, c);
                for mask in 0u32..(1 << size) {
                    let mut edges: Vec<Edge> = base.edges().to_vec();
                    edges.extend((0..size).filter(|&u| mask & (1 << u) != 0).map(|u| (u, size)));
                    let g = Graph::new(size + 1, edges).unwrap();
                    next.insert(canonical_code(&g));
                }
            }
            codes = next;
        }
        if n == 0 {
            return vec![Graph::empty(0)];
        }
        codes.into_iter().map(|c| from_code(n, c)).collect()
    }

    /// Connected graphs on exactly `n` vertices, up to isomorphism.
    pub fn connected_graphs(n: usize) -> Vec<Graph> {
        graphs(n).into_iter().filter(Graph::is_connected).collect()
    }

    /// Connected graphs with `1..=max_m` edges, up to isomorphism, grouped by
    /// edge count. Every such graph arises from one with an edge fewer by
    /// closing a cycle or hanging a new leaf. `max_m <= 7` keeps `n <= 8`.
    pub fn connected_graphs_by_edges(max_m: usize) -> Vec<Vec<Graph>> {
        assert!(max_m <= 7, "edge-wise enumeration is limited to 7 edges");
        let mut layers: Vec<BTreeSet<(usize, u32)>> = Vec::new();
        let mut current: BTreeSet<(usize, u32)> = BTreeSet::new();
        if max_m >= 1 {
            current.insert((2, 1));
        }
        for _ in 1..=max_m {
            let mut next = BTreeSet::new();
            for &(n, c) in &current {
                let base = from_code(n, c);
                let mut grow = |g: Graph| {
                    let n = g.n();
                    next.insert((n, canonical_code(&g)));
                };
                for v in 1..n {
                    for u in 0..v {
                        if !base.has_edge(u, v) {
                            let mut edges = base.edges().to_vec();
                            edges.push((u, v));
                            grow(Graph::new(n, edges).unwrap());
                        }
                    }
                }
                if n < 8 {
                    for u in 0..n {
                        let mut edges = base.edges().to_vec();
                        edges.push((u, n));
                        grow(Graph::new(n + 1, edges).unwrap());
                    }
                }
            }
            layers.push(std::mem::replace(&mut current, next));
        }
        layers.into_iter().map(|l| l.into_iter().map(|(n, c)| from_code(n, c)).collect()).collect()
    }

    /// Connected graphs on `1..=max_n` vertices, up to isomorphism.
    pub fn connected_graphs_up_to(max_n: usize) -> Vec<Graph> {
        (1..=max_n).flat_map(connected_graphs).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_free_brute(g: &Graph) -> bool {
        let n = g.n();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c) {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn connected_graphs_by_edge_count_match_oeis() {
        // A002905
        let layers = enumerate::connected_graphs_by_edges(7);
        let counts: Vec<usize> = layers.iter().map(Vec::len).collect();
        assert_eq!(counts, [1, 1, 3, 5, 12, 30, 79]);
        for (i, layer) in layers.iter().enumerate() {
            assert!(layer.iter().all(|g| g.m() == i + 1 && g.is_connected()));
        }
    }

    #[test]
    fn parses_single_edge_and_triangle() {
        let g = parse_graph("p edge 2 1\ne 1 2\n").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges(), &[(0, 1)]);

        let k3 = parse_graph("c a triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(k3, Graph::complete(3));
    }

    #[test]
    fn rejects_bad_inputs_with_line_numbers() {
        let dup = parse_graph("p edge 3 2\ne 1 2\ne 1 2\n").unwrap_err();
        assert!(matches!(dup, Error::Parse { line: 3, .. }), "{dup}");

        let lp = parse_graph("p edge 3 1\ne 2 2\n").unwrap_err();
        assert!(matches!(lp, Error::Parse { line: 2, .. }));

        let range = parse_graph("c x\np edge 3 1\ne 1 4\n").unwrap_err();
        assert!(matches!(range, Error::Parse { line: 3, .. }));

        let hdr = parse_graph("p edges 3 1\n").unwrap_err();
        assert!(matches!(hdr, Error::Parse { line: 1, .. }));

        assert!(parse_graph("e 1 2\n").is_err());
        assert!(parse_graph("p edge 3 2\ne 1 2\n").is_err());
        assert!(parse_graph("p edge 3 0\np edge 3 0\n").is_err());
    }

    #[test]
    fn isolated_vertices_allowed() {
        let g = parse_graph("p edge 5 1\ne 1 2\n").unwrap();
        assert_eq!(g.degrees(), vec![1, 1, 0, 0, 0]);
    }

    #[test]
    fn triangle_freeness() {
        assert!(!Graph::complete(3).is_triangle_free());
        assert!(Graph::cycle(5).is_triangle_free());
        let p = Graph::petersen();
        assert!(p.is_triangle_free());
        assert!(triangle_free_brute(&p));
        assert_eq!(Graph::complete(4).find_triangle(), Some((0, 1, 2)));
    }

    #[test]
    fn adjacency_matrices() {
        let a = Graph::path(2).adjacency_matrix();
        assert_eq!(a, DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]));
        let k3 = Graph::complete(3).adjacency_matrix();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(k3[(i, j)], if i == j { 0.0 } else { 1.0 });
            }
        }
        assert_eq!(Graph::empty(2).adjacency_matrix(), DMatrix::zeros(2, 2));
    }

    #[test]
    fn petersen_shape() {
        let p = Graph::petersen();
        assert_eq!((p.n(), p.m()), (10, 15));
        assert_eq!(p.regular_degree(), Some(3));
        assert!(!p.is_bipartite());
        assert!(Graph::cycle(6).is_bipartite());
    }

    #[test]
    fn enumeration_counts_match_known_sequences() {
        // OEIS A000088 and A001349
        let all: Vec<usize> = (1..=6).map(|n| enumerate::graphs(n).len()).collect();
        assert_eq!(all, vec![1, 2, 4, 11, 34, 156]);
        let conn: Vec<usize> = (1..=6).map(|n| enumerate::connected_graphs(n).len()).collect();
        assert_eq!(conn, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn triangle_check_agrees_with_brute_force_on_small_graphs() {
        for n in 1..=6 {
            for g in enumerate::graphs(n) {
                assert_eq!(g.is_triangle_free(), triangle_free_brute(&g), "{g:?}");
            }
        }
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;
        use rand::SeedableRng;
        use rand_chacha::ChaCha8Rng;

        proptest! {
            #[test]
            fn round_trip_and_handshake(n in 1usize..12, p in 0.0f64..1.0, seed: u64) {
                let g = Graph::gnp(n, p, &mut ChaCha8Rng::seed_from_u64(seed));
                let back = parse_graph(&g.to_edge_list()).unwrap();
                prop_assert_eq!(&back, &g);
                prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.m());
            }

            #[test]
            fn triangle_check_matches_triples(n in 1usize..=8, p in 0.0f64..0.7, seed: u64) {
                let g = Graph::gnp(n, p, &mut ChaCha8Rng::seed_from_u64(seed));
                prop_assert_eq!(g.is_triangle_free(), super::triangle_free_brute(&g));
            }
        }
    }
}
