//! Euclidean k-means: cost evaluation, Lloyd iterations, k-means++ seeding,
//! single-swap local search, an exhaustive oracle and random projection.

use rand::Rng as _;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::reduction::{Clustering, Rational};
use crate::rng::{derive_seed, rng_from_seed};

/// Relative cost improvement below which Lloyd stops.
pub const LLOYD_REL_TOL: f64 = 1e-12;
/// A swap is accepted only if it improves cost by more than this factor.
pub const SWAP_REL_TOL: f64 = 1e-9;
/// `target_dim = ceil(JL_CONSTANT * ln(n) / eps^2)`
pub const JL_CONSTANT: f64 = 8.0;
/// Largest instance `brute_force_kmeans` will enumerate.
pub const BRUTE_FORCE_MAX_POINTS: usize = 14;

#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    dim: usize,
    points: Vec<Vec<f64>>,
}

impl PointSet {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        let dim = points.first().map(Vec::len).unwrap_or(0);
        if dim == 0 {
            return Err(Error::InvalidParameter("points need dimension >= 1".into()));
        }
        if let Some(i) = points.iter().position(|p| p.len() != dim) {
            return Err(Error::InvalidParameter(format!(
                "point {i} has dimension {}, expected {dim}",
                points[i].len()
            )));
        }
        Ok(Self { dim, points })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    #[inline]
    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }
}

#[inline]
pub fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverResult {
    pub assignment: Clustering,
    pub centers: Vec<Vec<f64>>,
    pub cost: f64,
    pub iterations: usize,
    pub seed: u64,
    /// Cost after every assignment step.
    pub history: Vec<f64>,
    /// Stopped by the convergence rule rather than the iteration cap.
    pub converged: bool,
}

fn check_assignment(ps: &PointSet, assignment: &[usize]) -> Result<usize> {
    if ps.is_empty() {
        return Err(Error::InvalidParameter("empty point set".into()));
    }
    if assignment.len() < ps.len() {
        return Err(Error::UnassignedPoint(assignment.len()));
    }
    Ok(assignment.iter().copied().max().unwrap_or(0) + 1)
}

fn centroids(ps: &PointSet, assignment: &[usize], k: usize) -> (Vec<Vec<f64>>, Vec<usize>) {
    let mut sums = vec![vec![0.0; ps.dim()]; k];
    let mut counts = vec![0usize; k];
    for (x, &c) in ps.points().iter().zip(assignment) {
        counts[c] += 1;
        for (s, v) in sums[c].iter_mut().zip(x) {
            *s += v;
        }
    }
    for (s, &n) in sums.iter_mut().zip(&counts) {
        if n > 0 {
            s.iter_mut().for_each(|v| *v /= n as f64);
        }
    }
    (sums, counts)
}

/// Σ over clusters of squared distances to the cluster centroid.
pub fn euclidean_cost(ps: &PointSet, assignment: &[usize]) -> Result<f64> {
    let k = check_assignment(ps, assignment)?;
    let (mu, _) = centroids(ps, assignment, k);
    Ok(ps
        .points()
        .iter()
        .zip(assignment)
        .map(|(x, &c)| sq_dist(x, &mu[c]))
        .sum())
}

/// Exact cost for integer coordinates: per block `Σ ‖s·x − S‖² / s²` with
/// `S` the coordinate sum and `s` the block size.
pub fn euclidean_cost_exact(ps: &PointSet, assignment: &[usize]) -> Result<Rational> {
    let k = check_assignment(ps, assignment)?;
    let int_points: Vec<Vec<i64>> = ps
        .points()
        .iter()
        .map(|x| {
            x.iter()
                .map(|&v| {
                    if v.fract() == 0.0 && v.abs() < 1e9 {
                        Ok(v as i64)
                    } else {
                        Err(Error::InvalidParameter(format!("coordinate {v} is not a small integer")))
                    }
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let mut sums = vec![vec![0i64; ps.dim()]; k];
    let mut sizes = vec![0i64; k];
    for (x, &c) in int_points.iter().zip(assignment) {
        sizes[c] += 1;
        for (s, v) in sums[c].iter_mut().zip(x) {
            *s += v;
        }
    }
    let mut numer = vec![0i64; k];
    for (x, &c) in int_points.iter().zip(assignment) {
        numer[c] += x
            .iter()
            .zip(&sums[c])
            .map(|(&v, &s)| {
                let d = sizes[c] * v - s;
                d * d
            })
            .sum::<i64>();
    }
    Ok((0..k)
        .filter(|&c| sizes[c] > 0)
        .map(|c| Rational::new(numer[c], sizes[c] * sizes[c]))
        .sum())
}

/// Nearest-center assignment (ties to the lowest center index) and its cost.
pub fn assign_to_centers(ps: &PointSet, centers: &[Vec<f64>]) -> (Vec<usize>, f64) {
    let mut total = 0.0;
    let assignment = ps
        .points()
        .iter()
        .map(|x| {
            let (best, d) = centers
                .iter()
                .enumerate()
                .map(|(i, c)| (i, sq_dist(x, c)))
                .fold((0, f64::INFINITY), |acc, cur| if cur.1 < acc.1 { cur } else { acc });
            total += d;
            best
        })
        .collect();
    (assignment, total)
}

fn check_k(ps: &PointSet, k: usize) -> Result<()> {
    if ps.is_empty() {
        return Err(Error::InvalidParameter("empty point set".into()));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    if k > ps.len() {
        return Err(Error::TooManyClusters { k, points: ps.len() });
    }
    Ok(())
}

/// Lloyd's heuristic from the given centers.
///
/// A cluster that loses all its points is moved to the point farthest from
/// its nearest center. The returned centers are the centroids of the final
/// assignment.
pub fn lloyd(
    ps: &PointSet,
    k: usize,
    init: &[Vec<f64>],
    max_iters: usize,
    seed: u64,
) -> Result<SolverResult> {
    check_k(ps, k)?;
    if init.len() != k || init.iter().any(|c| c.len() != ps.dim()) {
        return Err(Error::InvalidParameter(format!(
            "lloyd needs {k} initial centers of dimension {}",
            ps.dim()
        )));
    }
    let mut centers = init.to_vec();
    let (mut assignment, mut cost) = assign_to_centers(ps, &centers);
    let mut history = vec![cost];
    let mut iterations = 0;
    let mut converged = false;

    while iterations < max_iters {
        iterations += 1;
        let (mut next, counts) = centroids(ps, &assignment, k);
        // Re-seed empty clusters one at a time at the worst-served point.
        let mut active: Vec<bool> = counts.iter().map(|&n| n > 0).collect();
        for c in 0..k {
            if active[c] {
                continue;
            }
            let far = (0..ps.len())
                .map(|i| {
                    let d = (0..k)
                        .filter(|&z| active[z])
                        .map(|z| sq_dist(ps.point(i), &next[z]))
                        .fold(f64::INFINITY, f64::min);
                    (i, d)
                })
                .fold((0, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
            next[c] = ps.point(far.0).to_vec();
            active[c] = true;
        }
        let (next_assignment, next_cost) = assign_to_centers(ps, &next);
        debug_assert!(next_cost <= cost * (1.0 + 1e-12) + 1e-12);
        let unchanged = next_assignment == assignment;
        let improvement = cost - next_cost;
        centers = next;
        assignment = next_assignment;
        cost = next_cost;
        history.push(cost);
        if unchanged || improvement <= LLOYD_REL_TOL * cost.abs() {
            converged = true;
            break;
        }
    }

    let (mu, counts) = centroids(ps, &assignment, k);
    for c in 0..k {
        if counts[c] > 0 {
            centers[c] = mu[c].clone();
        }
    }
    let cost = euclidean_cost(ps, &assignment)?;
    Ok(SolverResult {
        assignment: Clustering::new(k, assignment)?,
        centers,
        cost,
        iterations,
        seed,
        history,
        converged,
    })
}

/// k-means++ seeding; returns indices of the chosen points.
pub fn kmeanspp_seed(ps: &PointSet, k: usize, seed: u64) -> Result<Vec<usize>> {
    check_k(ps, k)?;
    let mut rng = rng_from_seed(seed);
    let n = ps.len();
    let first = rng.random_range(0..n);
    Ok(kmeanspp_from(ps, k, first, &mut rng))
}

/// k-means++ continuation after a fixed first center.
pub fn kmeanspp_from<R: rand::Rng + ?Sized>(
    ps: &PointSet,
    k: usize,
    first: usize,
    rng: &mut R,
) -> Vec<usize> {
    let n = ps.len();
    let mut chosen = vec![first];
    let mut d2: Vec<f64> = ps.points().iter().map(|x| sq_dist(x, ps.point(first))).collect();
    while chosen.len() < k {
        let total: f64 = d2.iter().sum();
        let next = if total > 0.0 {
            let mut target = rng.random::<f64>() * total;
            let mut pick = None;
            for (i, &w) in d2.iter().enumerate() {
                if w > 0.0 {
                    pick = Some(i);
                    if target < w {
                        break;
                    }
                    target -= w;
                }
            }
            pick.expect("positive total mass")
        } else {
            // Only duplicates remain; take an unused index uniformly.
            let unused: Vec<usize> = (0..n).filter(|i| !chosen.contains(i)).collect();
            unused[rng.random_range(0..unused.len())]
        };
        chosen.push(next);
        for (w, x) in d2.iter_mut().zip(ps.points()) {
            *w = w.min(sq_dist(x, ps.point(next)));
        }
    }
    chosen
}

/// k-means++ seeding followed by Lloyd.
pub fn kmeanspp_lloyd(ps: &PointSet, k: usize, max_iters: usize, seed: u64) -> Result<SolverResult> {
    let idx = kmeanspp_seed(ps, k, derive_seed(seed, "kmeans++"))?;
    let init: Vec<Vec<f64>> = idx.iter().map(|&i| ps.point(i).to_vec()).collect();
    lloyd(ps, k, &init, max_iters, seed)
}

/// Cost of the partition induced by centers at the given input points,
/// measured against the partition's own centroids.
fn induced_cost(ps: &PointSet, idx: &[usize]) -> f64 {
    let centers: Vec<Vec<f64>> = idx.iter().map(|&i| ps.point(i).to_vec()).collect();
    let (a, _) = assign_to_centers(ps, &centers);
    euclidean_cost(ps, &a).unwrap()
}

/// Single-swap local search with input points as candidate centers, seeded
/// by k-means++, finished by a Lloyd pass from the swap solution.
///
/// A swap is scored by the centroid cost of the Voronoi partition it induces
/// rather than by distances to the candidate points themselves. On the
/// reduction instances the point-to-point score gets stuck far more often.
pub fn local_search_swap(ps: &PointSet, k: usize, seed: u64, max_rounds: usize) -> Result<SolverResult> {
    check_k(ps, k)?;
    let mut idx = kmeanspp_seed(ps, k, derive_seed(seed, "swap-init"))?;
    let mut cost = induced_cost(ps, &idx);
    let mut local_optimum = false;
    for _ in 0..max_rounds {
        let mut improved = false;
        for slot in 0..k {
            for cand in 0..ps.len() {
                if idx.contains(&cand) {
                    continue;
                }
                let old = idx[slot];
                idx[slot] = cand;
                let trial = induced_cost(ps, &idx);
                if trial < cost * (1.0 - SWAP_REL_TOL) {
                    cost = trial;
                    improved = true;
                } else {
                    idx[slot] = old;
                }
            }
        }
        if !improved {
            local_optimum = true;
            break;
        }
    }
    let init: Vec<Vec<f64>> = idx.iter().map(|&i| ps.point(i).to_vec()).collect();
    let mut result = lloyd(ps, k, &init, 1000, seed)?;
    result.converged &= local_optimum;
    Ok(result)
}

/// Exhaustive optimum over all partitions into at most `k` non-empty
/// blocks. Among equal-cost partitions the lexicographically smallest
/// assignment vector (restricted-growth order) wins.
pub fn brute_force_kmeans(ps: &PointSet, k: usize) -> Result<(Vec<usize>, f64)> {
    check_k(ps, k)?;
    if ps.len() > BRUTE_FORCE_MAX_POINTS {
        return Err(Error::GuardExceeded {
            what: "brute-force k-means point count",
            limit: BRUTE_FORCE_MAX_POINTS,
            actual: ps.len(),
        });
    }
    let norms: Vec<f64> = ps.points().iter().map(|x| x.iter().map(|v| v * v).sum()).collect();
    let mut search = BruteForce {
        ps,
        norms: &norms,
        k,
        sums: vec![vec![0.0; ps.dim()]; k],
        sizes: vec![0; k],
        sqnorm: vec![0.0; k],
        assignment: vec![0; ps.len()],
        best: f64::INFINITY,
        best_assignment: Vec::new(),
    };
    search.recurse(0, 0);
    Ok((search.best_assignment, search.best))
}

struct BruteForce<'a> {
    ps: &'a PointSet,
    norms: &'a [f64],
    k: usize,
    sums: Vec<Vec<f64>>,
    sizes: Vec<usize>,
    sqnorm: Vec<f64>,
    assignment: Vec<usize>,
    best: f64,
    best_assignment: Vec<usize>,
}

impl BruteForce<'_> {
    fn block_cost(&self, b: usize) -> f64 {
        if self.sizes[b] == 0 {
            return 0.0;
        }
        let s2: f64 = self.sums[b].iter().map(|v| v * v).sum();
        (self.sqnorm[b] - s2 / self.sizes[b] as f64).max(0.0)
    }

    fn partial(&self, used: usize) -> f64 {
        (0..used).map(|b| self.block_cost(b)).sum()
    }

    fn margin(&self) -> f64 {
        1e-9 * self.best.abs().max(1.0)
    }

    fn recurse(&mut self, i: usize, used: usize) {
        let cost = self.partial(used);
        if cost >= self.best - self.margin() {
            return;
        }
        if i == self.ps.len() {
            self.best = cost;
            self.best_assignment = self.assignment.clone();
            return;
        }
        let limit = (used + 1).min(self.k);
        for b in 0..limit {
            self.assignment[i] = b;
            self.sizes[b] += 1;
            self.sqnorm[b] += self.norms[i];
            for (s, v) in self.sums[b].iter_mut().zip(self.ps.point(i)) {
                *s += v;
            }
            self.recurse(i + 1, used.max(b + 1));
            self.sizes[b] -= 1;
            self.sqnorm[b] -= self.norms[i];
            for (s, v) in self.sums[b].iter_mut().zip(self.ps.point(i)) {
                *s -= v;
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct JlReport {
    pub projected: PointSet,
    pub target_dim: usize,
    /// max over pairs of `|new/old − 1|` on squared distances
    pub max_distortion: f64,
    pub epsilon: f64,
}

pub fn jl_target_dim(n: usize, epsilon: f64) -> usize {
    (JL_CONSTANT * (n as f64).ln() / (epsilon * epsilon)).ceil().max(1.0) as usize
}

/// Entry distribution of the projection matrix.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum JlEntries {
    /// `±1` with equal probability. Its distortion tails are no heavier than
    /// the Gaussian ones, which matters when every pair must stay in range.
    #[default]
    Rademacher,
    Gaussian,
}

impl std::str::FromStr for JlEntries {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rademacher" => Ok(Self::Rademacher),
            "gaussian" => Ok(Self::Gaussian),
            _ => Err(Error::InvalidParameter(format!("unknown projection entries '{s}'"))),
        }
    }
}

/// Rademacher projection; see [`jl_project_with`].
pub fn jl_project(ps: &PointSet, epsilon: f64, seed: u64) -> Result<JlReport> {
    jl_project_with(ps, epsilon, seed, JlEntries::default())
}

/// Random projection to `jl_target_dim(n, ε)` dimensions, scaled by
/// `1/sqrt(target_dim)` so squared distances are preserved in expectation.
pub fn jl_project_with(ps: &PointSet, epsilon: f64, seed: u64, entries: JlEntries) -> Result<JlReport> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon = {epsilon} must lie in (0, 1)")));
    }
    if ps.len() < 2 {
        return Err(Error::InvalidParameter("projection needs at least two points".into()));
    }
    let target_dim = jl_target_dim(ps.len(), epsilon);
    let mut rng = rng_from_seed(seed);
    let scale = 1.0 / (target_dim as f64).sqrt();
    let matrix: Vec<Vec<f64>> = (0..target_dim)
        .map(|_| {
            (0..ps.dim())
                .map(|_| match entries {
                    JlEntries::Rademacher if rng.random::<bool>() => scale,
                    JlEntries::Rademacher => -scale,
                    JlEntries::Gaussian => {
                        let z: f64 = StandardNormal.sample(&mut rng);
                        z * scale
                    }
                })
                .collect()
        })
        .collect();
    let projected: Vec<Vec<f64>> = ps
        .points()
        .iter()
        .map(|x| matrix.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect())
        .collect();
    let projected = PointSet::new(projected)?;
    let mut max_distortion: f64 = 0.0;
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            let old = sq_dist(ps.point(i), ps.point(j));
            if old == 0.0 {
                continue;
            }
            let new = sq_dist(projected.point(i), projected.point(j));
            max_distortion = max_distortion.max((new / old - 1.0).abs());
        }
    }
    Ok(JlReport { projected, target_dim, max_distortion, epsilon })
}
