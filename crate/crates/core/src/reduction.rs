//! Vertex cover to Euclidean k-means.
//!
//! Every edge `{i, j}` of a graph on `n` vertices becomes the point
//! `e_i + e_j` in `R^n`. A clustering of these points is a partition of the
//! edge set, and the k-means cost of a block `F` (centroid as center) is
//!
//! ```text
//! Cost(F) = Σ_u d_u (1 - d_u / m_F) = 2 m_F - ν_F / m_F,   ν_F = Σ_u d_u²
//! ```
//!
//! where `d_u` is the degree of `u` inside `F`. Stars and triangles are the
//! only blocks with `Cost(F) = m_F - 1`; everything else pays a slack
//! `δ_F = Cost(F) - (m_F - 1) >= 1/2`. Covers map to star clusterings and
//! cheap clusterings map back to small covers.
//!
//! All costs here are exact rationals.

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::kmeans::PointSet;

pub type Rational = Ratio<i64>;

/// A k-means instance; reduction-built instances also remember which edge
/// each point came from.
#[derive(Clone, Debug, PartialEq)]
pub struct KMeansInstance {
    pub points: PointSet,
    pub k: usize,
    /// `provenance[p]` is the source edge of point `p`.
    pub provenance: Option<Vec<Edge>>,
}

impl KMeansInstance {
    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn dim(&self) -> usize {
        self.points.dim()
    }
}

/// Assignment of points to clusters `0..k`. Clusters may be empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clustering {
    k: usize,
    assignment: Vec<usize>,
}

impl Clustering {
    pub fn new(k: usize, assignment: Vec<usize>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("clustering needs k >= 1".into()));
        }
        if let Some((p, &c)) = assignment.iter().enumerate().find(|(_, &c)| c >= k) {
            return Err(Error::InvalidParameter(format!(
                "point {p} assigned to cluster {} outside 1..={k}",
                c + 1
            )));
        }
        Ok(Self { k, assignment })
    }

    /// Builds a clustering from explicit blocks of point indices.
    pub fn from_blocks(num_points: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut assignment = vec![usize::MAX; num_points];
        for (c, block) in blocks.iter().enumerate() {
            for &p in block {
                if p >= num_points || assignment[p] != usize::MAX {
                    return Err(Error::InvalidParameter(format!(
                        "point {p} is out of range or appears in two blocks"
                    )));
                }
                assignment[p] = c;
            }
        }
        if let Some(p) = assignment.iter().position(|&c| c == usize::MAX) {
            return Err(Error::UnassignedPoint(p));
        }
        Self::new(blocks.len().max(1), assignment)
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    #[inline]
    pub fn num_points(&self) -> usize {
        self.assignment.len()
    }

    /// Point indices per cluster, in cluster order; empty clusters included.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.k];
        for (p, &c) in self.assignment.iter().enumerate() {
            blocks[c].push(p);
        }
        blocks
    }

    pub fn non_empty_blocks(&self) -> Vec<Vec<usize>> {
        self.blocks().into_iter().filter(|b| !b.is_empty()).collect()
    }

    pub fn non_empty_count(&self) -> usize {
        let mut used = vec![false; self.k];
        for &c in &self.assignment {
            used[c] = true;
        }
        used.into_iter().filter(|&u| u).count()
    }

    /// `table[c][v]` = degree of `v` inside cluster `c` when point `p` is
    /// the edge `edges[p]`.
    pub fn degree_table(&self, n: usize, edges: &[Edge]) -> Vec<Vec<usize>> {
        let mut table = vec![vec![0usize; n]; self.k];
        for (p, &c) in self.assignment.iter().enumerate() {
            let (u, v) = edges[p];
            table[c][u] += 1;
            table[c][v] += 1;
        }
        table
    }
}

/// Per-cluster statistics of an edge cluster.
#[derive(Clone, Debug, PartialEq)]
pub struct ClusterStats {
    pub edges: usize,
    /// Σ_u d_u²
    pub nu: i64,
    pub cost: Rational,
    /// `cost - (edges - 1)`
    pub delta: Rational,
}

impl ClusterStats {
    fn from_degrees(m: usize, degrees: impl IntoIterator<Item = usize>) -> Self {
        let m_i = m as i64;
        let nu: i64 = degrees.into_iter().map(|d| (d * d) as i64).sum();
        let cost = Rational::new(2 * m_i * m_i - nu, m_i);
        let delta = cost - Rational::from_integer(m_i - 1);
        Self { edges: m, nu, cost, delta }
    }
}

/// A vertex subset with its validity certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub vertices: Vec<Vertex>,
    pub valid: bool,
}

impl Cover {
    pub fn new(g: &Graph, vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let mut vertices: Vec<Vertex> = vertices.into_iter().collect();
        vertices.sort_unstable();
        vertices.dedup();
        let mut member = vec![false; g.n()];
        for &v in &vertices {
            member[v] = true;
        }
        let valid = g.is_vertex_cover(&member);
        Self { vertices, valid }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// One point `e_u + e_v` per edge, in canonical edge order.
pub fn build_kmeans_instance(g: &Graph, k: usize) -> Result<KMeansInstance> {
    if g.m() == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    if k == 0 || k > g.m() {
        return Err(Error::InvalidParameter(format!("k = {k} must lie in 1..={}", g.m())));
    }
    let points = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let mut x = vec![0.0; g.n()];
            x[u] = 1.0;
            x[v] = 1.0;
            x
        })
        .collect();
    Ok(KMeansInstance {
        points: PointSet::new(points)?,
        k,
        provenance: Some(g.edges().to_vec()),
    })
}

/// Statistics of an explicit list of edges (assumed distinct).
pub fn edge_list_stats(edges: &[Edge]) -> Result<ClusterStats> {
    if edges.is_empty() {
        return Err(Error::EmptyCluster);
    }
    let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let mut deg = vec![0usize; n];
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    Ok(ClusterStats::from_degrees(edges.len(), deg))
}

fn cluster_edges(g: &Graph, cluster: &[usize]) -> Result<Vec<Edge>> {
    if cluster.is_empty() {
        return Err(Error::EmptyCluster);
    }
    cluster
        .iter()
        .map(|&i| {
            g.edges()
                .get(i)
                .copied()
                .ok_or(Error::InvalidParameter(format!("edge index {i} out of range")))
        })
        .collect()
}

/// Statistics of the cluster given by edge indices into `g.edges()`.
pub fn cluster_stats(g: &Graph, cluster: &[usize]) -> Result<ClusterStats> {
    edge_list_stats(&cluster_edges(g, cluster)?)
}

/// `Cost(E')` of an edge cluster, exact.
pub fn combinatorial_cost(g: &Graph, cluster: &[usize]) -> Result<Rational> {
    Ok(cluster_stats(g, cluster)?.cost)
}

/// Sum of block costs of a clustering of a reduction instance.
pub fn clustering_cost(inst: &KMeansInstance, c: &Clustering) -> Result<Rational> {
    let prov = inst.provenance.as_ref().ok_or(Error::MissingProvenance)?;
    check_covers_points(inst.num_points(), c)?;
    let mut total = Rational::zero();
    for block in c.non_empty_blocks() {
        let edges: Vec<Edge> = block.iter().map(|&p| prov[p]).collect();
        total += edge_list_stats(&edges)?.cost;
    }
    Ok(total)
}

/// Same as [`clustering_cost`] with points identified with `g`'s edges.
pub fn edge_clustering_cost(g: &Graph, c: &Clustering) -> Result<Rational> {
    check_covers_points(g.m(), c)?;
    let mut total = Rational::zero();
    for block in c.non_empty_blocks() {
        total += cluster_stats(g, &block)?.cost;
    }
    Ok(total)
}

fn check_covers_points(num_points: usize, c: &Clustering) -> Result<()> {
    if c.num_points() < num_points {
        return Err(Error::UnassignedPoint(c.num_points()));
    }
    if c.num_points() > num_points {
        return Err(Error::InvalidParameter(format!(
            "clustering has {} points, instance has {num_points}",
            c.num_points()
        )));
    }
    Ok(())
}

/// Star clustering of a valid cover: every edge goes to its lowest-id
/// covering endpoint; clusters are numbered by ascending center id and only
/// centers that received an edge get a cluster.
pub fn cover_to_clustering(g: &Graph, cover: &Cover) -> Result<Clustering> {
    let (clustering, _) = cover_to_star_clustering(g, cover)?;
    Ok(clustering)
}

/// [`cover_to_clustering`] plus the star center of each cluster.
pub fn cover_to_star_clustering(g: &Graph, cover: &Cover) -> Result<(Clustering, Vec<Vertex>)> {
    let mut member = vec![false; g.n()];
    for &v in &cover.vertices {
        if v >= g.n() {
            return Err(Error::InvalidParameter(format!("cover vertex {} out of range", v + 1)));
        }
        member[v] = true;
    }
    let owner: Vec<Vertex> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            if member[u] {
                Ok(u)
            } else if member[v] {
                Ok(v)
            } else {
                Err(Error::InvalidCover(u + 1, v + 1))
            }
        })
        .collect::<Result<_>>()?;
    let mut centers: Vec<Vertex> = owner.clone();
    centers.sort_unstable();
    centers.dedup();
    if centers.is_empty() {
        return Err(Error::EmptyEdgeSet);
    }
    let assignment = owner
        .iter()
        .map(|o| centers.binary_search(o).expect("owner is a center"))
        .collect();
    Ok((Clustering::new(centers.len(), assignment)?, centers))
}

/// Edge of the cluster maximizing `d_u + d_v` (first in canonical order on
/// ties) together with that value.
pub fn heavy_edge(g: &Graph, cluster: &[usize]) -> Result<(Edge, usize)> {
    let edges = cluster_edges(g, cluster)?;
    let deg = local_degrees(g.n(), &edges);
    let mut sorted = edges;
    sorted.sort_unstable();
    let mut best = (sorted[0], 0usize);
    for &(u, v) in &sorted {
        let w = deg[u] + deg[v];
        if w > best.1 {
            best = ((u, v), w);
        }
    }
    Ok(best)
}

fn local_degrees(n: usize, edges: &[Edge]) -> Vec<usize> {
    let mut deg = vec![0usize; n];
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    deg
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClusterShape {
    Star { center: Vertex },
    Triangle,
    Other { delta: Rational },
}

impl ClusterShape {
    pub fn delta(&self) -> Rational {
        match self {
            ClusterShape::Other { delta } => *delta,
            _ => Rational::zero(),
        }
    }
}

/// Star (lowest-id common vertex), exact triangle, or the slack δ.
pub fn classify_cluster(g: &Graph, cluster: &[usize]) -> Result<ClusterShape> {
    let edges = cluster_edges(g, cluster)?;
    let m = edges.len();
    let deg = local_degrees(g.n(), &edges);
    if let Some(center) = deg.iter().position(|&d| d == m) {
        return Ok(ClusterShape::Star { center });
    }
    if m == 3 && deg.iter().filter(|&&d| d == 2).count() == 3 {
        return Ok(ClusterShape::Triangle);
    }
    let stats = ClusterStats::from_degrees(m, deg);
    Ok(ClusterShape::Other { delta: stats.delta })
}

/// Diagnostics of a cover extracted from a clustering.
#[derive(Clone, Debug, PartialEq)]
pub struct Extraction {
    pub cover: Cover,
    /// Number of non-empty clusters.
    pub k: usize,
    pub total_cost: Rational,
    /// Global slack: `total_cost = m - (1 - delta) k`.
    pub delta: Rational,
    /// Vertices added from stars and triangles.
    pub from_cheap_clusters: usize,
    /// Vertices added as heavy-edge endpoints.
    pub from_heavy_edges: usize,
    /// Vertices added to patch edges left uncovered.
    pub from_patching: usize,
}

impl Extraction {
    /// `k (1 + 3 δ)`
    pub fn size_bound(&self) -> Rational {
        let k = Rational::from_integer(self.k as i64);
        k * (Rational::one() + Rational::from_integer(3) * self.delta)
    }
}

/// Turns a clustering of the edges of `g` into a vertex cover.
pub fn clustering_to_cover(g: &Graph, c: &Clustering) -> Result<Cover> {
    Ok(extract_cover(g, c)?.cover)
}

/// Cheap clusters (δ_F < 1/2) contribute their star center, or two vertices
/// of a triangle; other clusters contribute both endpoints of a heavy edge;
/// any edge still uncovered gets its lower endpoint.
pub fn extract_cover(g: &Graph, c: &Clustering) -> Result<Extraction> {
    check_covers_points(g.m(), c)?;
    let half = Rational::new(1, 2);
    let mut chosen = vec![false; g.n()];
    let mut total_cost = Rational::zero();
    let mut from_cheap = 0;
    let mut from_heavy = 0;
    let take = |v: Vertex, chosen: &mut Vec<bool>| -> usize {
        if chosen[v] {
            0
        } else {
            chosen[v] = true;
            1
        }
    };

    let blocks = c.non_empty_blocks();
    for block in &blocks {
        let stats = cluster_stats(g, block)?;
        total_cost += stats.cost;
        if stats.delta < half {
            match classify_cluster(g, block)? {
                ClusterShape::Star { center } => from_cheap += take(center, &mut chosen),
                ClusterShape::Triangle => {
                    let (u, v) = g.edges()[block[0]];
                    from_cheap += take(u, &mut chosen) + take(v, &mut chosen);
                }
                // Unreachable for correct slack arithmetic; fall through to
                // the heavy-edge rule anyway.
                ClusterShape::Other { .. } => {
                    let ((u, v), _) = heavy_edge(g, block)?;
                    from_heavy += take(u, &mut chosen) + take(v, &mut chosen);
                }
            }
        } else {
            let ((u, v), _) = heavy_edge(g, block)?;
            from_heavy += take(u, &mut chosen) + take(v, &mut chosen);
        }
    }
    let mut from_patching = 0;
    for &(u, v) in g.edges() {
        if !chosen[u] && !chosen[v] {
            from_patching += take(u, &mut chosen);
        }
    }

    let k = blocks.len();
    let cover = Cover::new(g, (0..g.n()).filter(|&v| chosen[v]));
    let delta = if k == 0 {
        Rational::zero()
    } else {
        (total_cost - Rational::from_integer(g.m() as i64) + Rational::from_integer(k as i64))
            / Rational::from_integer(k as i64)
    };
    Ok(Extraction {
        cover,
        k,
        total_cost,
        delta,
        from_cheap_clusters: from_cheap,
        from_heavy_edges: from_heavy,
        from_patching,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    fn all(g: &Graph) -> Vec<usize> {
        (0..g.m()).collect()
    }

    /// Edge indices of the listed 1-based pairs.
    fn ids(g: &Graph, pairs: &[(usize, usize)]) -> Vec<usize> {
        pairs.iter().map(|&(u, v)| g.edge_index(u - 1, v - 1).unwrap()).collect()
    }

    #[test]
    fn instance_points_are_edge_indicators() {
        let k3 = build_kmeans_instance(&Graph::complete(3), 1).unwrap();
        // canonical order (1,2),(1,3),(2,3)
        assert_eq!(
            k3.points.points(),
            &[vec![1.0, 1.0, 0.0], vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 1.0]]
        );
        let p4 = build_kmeans_instance(&Graph::path(4), 2).unwrap();
        assert_eq!(
            p4.points.points(),
            &[vec![1.0, 1.0, 0.0, 0.0], vec![0.0, 1.0, 1.0, 0.0], vec![0.0, 0.0, 1.0, 1.0]]
        );
        assert_eq!(p4.provenance.as_deref(), Some(Graph::path(4).edges()));
        let single = build_kmeans_instance(&Graph::path(2), 1).unwrap();
        assert_eq!(single.points.points(), &[vec![1.0, 1.0]]);
        for x in p4.points.points() {
            assert_eq!(x.iter().map(|c| c * c).sum::<f64>(), 2.0);
        }
        assert!(matches!(build_kmeans_instance(&Graph::empty(3), 1), Err(Error::EmptyEdgeSet)));
        assert!(build_kmeans_instance(&Graph::path(3), 3).is_err());
    }

    #[test]
    fn cost_of_star_path_and_matching() {
        let star = Graph::star(3);
        assert_eq!(combinatorial_cost(&star, &all(&star)).unwrap(), r(2, 1));

        let p4 = Graph::path(4);
        let s = cluster_stats(&p4, &all(&p4)).unwrap();
        assert_eq!(s.cost, r(8, 3));
        assert_eq!(s.delta, r(2, 3));

        let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let s = cluster_stats(&two, &all(&two)).unwrap();
        assert_eq!((s.cost, s.delta), (r(2, 1), r(1, 1)));

        assert!(matches!(combinatorial_cost(&p4, &[]), Err(Error::EmptyCluster)));
    }

    #[test]
    fn clustering_costs() {
        let k3 = Graph::complete(3);
        let inst = build_kmeans_instance(&k3, 1).unwrap();
        let one = Clustering::new(1, vec![0, 0, 0]).unwrap();
        assert_eq!(clustering_cost(&inst, &one).unwrap(), r(2, 1));

        let p4 = Graph::path(4);
        let inst = build_kmeans_instance(&p4, 2).unwrap();
        let c = Clustering::new(2, vec![0, 0, 1]).unwrap();
        assert_eq!(clustering_cost(&inst, &c).unwrap(), r(1, 1));

        let singles = Clustering::new(3, vec![0, 1, 2]).unwrap();
        assert_eq!(clustering_cost(&inst, &singles).unwrap(), r(0, 1));

        let short = Clustering::new(2, vec![0, 1]).unwrap();
        assert!(matches!(clustering_cost(&inst, &short), Err(Error::UnassignedPoint(2))));
        let mut bare = inst.clone();
        bare.provenance = None;
        assert!(matches!(clustering_cost(&bare, &c), Err(Error::MissingProvenance)));
    }

    #[test]
    fn covers_become_star_clusterings() {
        let p4 = Graph::path(4);
        let cover = Cover::new(&p4, [1, 2]);
        let (c, centers) = cover_to_star_clustering(&p4, &cover).unwrap();
        assert_eq!(centers, vec![1, 2]);
        assert_eq!(c.blocks(), vec![vec![0, 1], vec![2]]);
        assert_eq!(edge_clustering_cost(&p4, &c).unwrap(), r(1, 1));

        let c5 = Graph::cycle(5);
        let cover = Cover::new(&c5, [1, 3, 4]);
        assert!(cover.valid);
        let c = cover_to_clustering(&c5, &cover).unwrap();
        assert_eq!(c.non_empty_count(), 3);
        assert_eq!(edge_clustering_cost(&c5, &c).unwrap(), r(2, 1));
        for block in c.non_empty_blocks() {
            assert!(matches!(classify_cluster(&c5, &block).unwrap(), ClusterShape::Star { .. }));
        }

        let e = Graph::path(2);
        let c = cover_to_clustering(&e, &Cover::new(&e, [0])).unwrap();
        assert_eq!(edge_clustering_cost(&e, &c).unwrap(), r(0, 1));

        let bad = Cover::new(&p4, [1]);
        assert!(!bad.valid);
        assert!(matches!(cover_to_clustering(&p4, &bad), Err(Error::InvalidCover(3, 4))));
    }

    #[test]
    fn heavy_edges() {
        let star = Graph::star(4);
        let (e, w) = heavy_edge(&star, &all(&star)).unwrap();
        assert_eq!((e, w), ((0, 1), 5));

        let p4 = Graph::path(4);
        let (e, w) = heavy_edge(&p4, &all(&p4)).unwrap();
        assert_eq!((e, w), ((1, 2), 4));

        let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let (e, w) = heavy_edge(&two, &all(&two)).unwrap();
        assert_eq!((e, w), ((0, 1), 2));
        // d_u + d_v >= m + 1 - δ
        let s = cluster_stats(&two, &all(&two)).unwrap();
        assert!(r(w as i64, 1) >= r(3, 1) - s.delta);
        assert!(heavy_edge(&two, &[]).is_err());
    }

    #[test]
    fn classification() {
        let k3 = Graph::complete(3);
        assert_eq!(classify_cluster(&k3, &all(&k3)).unwrap(), ClusterShape::Triangle);
        assert_eq!(cluster_stats(&k3, &all(&k3)).unwrap().delta, r(0, 1));

        let p4 = Graph::path(4);
        assert_eq!(
            classify_cluster(&p4, &all(&p4)).unwrap(),
            ClusterShape::Other { delta: r(2, 3) }
        );

        let star = Graph::star(5);
        assert_eq!(classify_cluster(&star, &all(&star)).unwrap(), ClusterShape::Star { center: 0 });
        assert_eq!(cluster_stats(&star, &all(&star)).unwrap().delta, r(0, 1));

        let e = Graph::new(4, [(2, 3)]).unwrap();
        assert_eq!(classify_cluster(&e, &[0]).unwrap(), ClusterShape::Star { center: 2 });
    }

    #[test]
    fn soundness_examples() {
        let p4 = Graph::path(4);
        let c = Clustering::new(2, vec![0, 0, 1]).unwrap();
        let ex = extract_cover(&p4, &c).unwrap();
        assert!(ex.cover.valid);
        assert_eq!(ex.cover.vertices, vec![1, 2]);
        assert_eq!(ex.delta, r(0, 1));

        // star {(1,2),(2,3)} + path {(3,4),(4,5),(5,1)} on C5
        let c5 = Graph::cycle(5);
        let star = ids(&c5, &[(1, 2), (2, 3)]);
        let path = ids(&c5, &[(3, 4), (4, 5), (1, 5)]);
        let c = Clustering::from_blocks(5, &[star, path]).unwrap();
        let ex = extract_cover(&c5, &c).unwrap();
        assert_eq!(ex.total_cost, r(11, 3));
        assert_eq!(ex.delta, r(1, 3));
        assert_eq!(ex.size_bound(), r(4, 1));
        assert!(ex.cover.valid);
        assert!(r(ex.cover.len() as i64, 1) <= ex.size_bound());

        let e = Graph::path(2);
        let cover = clustering_to_cover(&e, &Clustering::new(1, vec![0]).unwrap()).unwrap();
        assert_eq!(cover.len(), 1);
        assert!(cover.valid);

        let short = Clustering::new(1, vec![0]).unwrap();
        assert!(matches!(clustering_to_cover(&p4, &short), Err(Error::UnassignedPoint(_))));
    }

    #[test]
    fn degree_bookkeeping() {
        let c5 = Graph::cycle(5);
        let c = Clustering::new(3, vec![0, 1, 2, 0, 1]).unwrap();
        let table = c.degree_table(c5.n(), c5.edges());
        for v in 0..5 {
            assert_eq!(table.iter().map(|row| row[v]).sum::<usize>(), c5.degree(v));
        }
        assert_eq!(table.iter().flatten().sum::<usize>(), 2 * c5.m());
    }
}
