//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line on stderr,
//! written directly to the handle so it shows even under output capture.

use std::io::Write;
use std::time::{Duration, Instant};

use rand::Rng;

use kmeans_hardness::graph::enumerate::{connected_graphs, connected_graphs_by_edges, graphs};
use kmeans_hardness::graph::Graph;
use kmeans_hardness::harness::{global_delta, heuristics, triangle_free_suite, COST_SLACK};
use kmeans_hardness::kmeans::{euclidean_cost_exact, jl_project};
use kmeans_hardness::oracles::{brute_force_edge_partition, max_independent_set, min_vertex_cover};
use kmeans_hardness::reduction::{
    build_kmeans_instance, classify_cluster, cluster_stats, cover_to_clustering, edge_clustering_cost, extract_cover,
    ClusterShape, Clustering, Cover, Rational,
};
use kmeans_hardness::rng::{derive_seed, rng_from_seed, trial_seed};
use kmeans_hardness::spectral::{
    check_is_bounds, kron_spectrum_check, kronecker_product, random_regular_graph, round_product_is,
    spectral_radius, ProductIsVector,
};

const SEED: u64 = 42;

fn report(id: u32, title: &str, ok: bool, detail: &str) {
    let line = format!("{} criterion {id:>2} ({title}): {detail}\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(ok, "criterion {id} failed: {detail}");
}

fn int(x: usize) -> Rational {
    Rational::from_integer(x as i64)
}

fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Restricted-growth strings of length `m` using at most `k` labels.
fn for_each_partition(m: usize, k: usize, visit: &mut dyn FnMut(&[usize])) {
    fn rec(a: &mut Vec<usize>, m: usize, k: usize, used: usize, visit: &mut dyn FnMut(&[usize])) {
        if a.len() == m {
            visit(a);
            return;
        }
        for b in 0..(used + 1).min(k) {
            a.push(b);
            rec(a, m, k, used.max(b + 1), visit);
            a.pop();
        }
    }
    rec(&mut Vec::with_capacity(m), m, k, 0, visit);
}

fn random_small_graph(rng: &mut impl Rng, max_n: usize, max_m: usize) -> Graph {
    let n = rng.random_range(2..=max_n);
    let m = rng.random_range(1..=max_m.min(n * (n - 1) / 2));
    Graph::gnm(n, m, rng)
}

struct SuiteCase {
    g: Graph,
    vc: usize,
}

fn tf_suite() -> Vec<SuiteCase> {
    triangle_free_suite(7)
        .into_iter()
        .map(|(_, g)| {
            let vc = min_vertex_cover(&g).unwrap().value;
            SuiteCase { g, vc }
        })
        .collect()
}

#[test]
fn criterion_01_cost_formula_equivalence() {
    let start = Instant::now();
    let mut cases: Vec<Graph> = (1..=6).flat_map(connected_graphs).filter(|g| g.m() >= 1 && g.m() <= 9).collect();
    let enumerated = cases.len();
    let mut rng = rng_from_seed(derive_seed(SEED, "c1"));
    cases.extend((0..500).map(|_| random_small_graph(&mut rng, 8, 9)));
    let mut partitions = 0usize;
    let mut mismatch = None;
    for g in &cases {
        let inst = build_kmeans_instance(g, 1).unwrap();
        for_each_partition(g.m(), 3, &mut |a| {
            if mismatch.is_some() {
                return;
            }
            partitions += 1;
            let k = a.iter().max().unwrap() + 1;
            let euclid = euclidean_cost_exact(&inst.points, a).unwrap();
            let comb = edge_clustering_cost(g, &Clustering::new(k, a.to_vec()).unwrap()).unwrap();
            if euclid != comb {
                mismatch = Some(format!("{:?} partition {a:?}: {euclid} != {comb}", g.edges()));
            }
        });
    }
    let elapsed = start.elapsed();
    let ok = mismatch.is_none() && elapsed <= Duration::from_secs(300);
    let detail = mismatch.unwrap_or_else(|| {
        format!(
            "{} graphs ({enumerated} enumerated + 500 random), {partitions} partitions, exact equality, {:.1}s",
            cases.len(),
            elapsed.as_secs_f64()
        )
    });
    report(1, "cost formula equivalence", ok, &detail);
}

#[test]
fn criterion_02_cost_bounds() {
    let start = Instant::now();
    let mut subsets = 0usize;
    let mut bad = None;
    for n in 1..=6 {
        for g in graphs(n) {
            let m = g.m();
            for mask in 1u32..(1 << m) {
                let s: Vec<usize> = (0..m).filter(|&e| mask >> e & 1 == 1).collect();
                let st = cluster_stats(&g, &s).unwrap();
                subsets += 1;
                let mf = int(st.edges);
                if st.cost < mf - 1 || st.cost > mf * 2 - 1 {
                    bad.get_or_insert(format!("{:?} subset {s:?}: cost {}", g.edges(), st.cost));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = bad.is_none() && elapsed <= Duration::from_secs(120);
    let detail = bad.unwrap_or_else(|| {
        format!("{subsets} edge subsets of all graphs on <= 6 vertices, {:.1}s", elapsed.as_secs_f64())
    });
    report(2, "cost bounds", ok, &detail);
}

#[test]
fn criterion_03_star_triangle_dichotomy() {
    let start = Instant::now();
    let half = Rational::new(1, 2);
    let mut checked = 0;
    let mut cheap = 0;
    let mut bad = None;
    for layer in connected_graphs_by_edges(7) {
        for g in layer {
            let all: Vec<usize> = (0..g.m()).collect();
            let delta = cluster_stats(&g, &all).unwrap().delta;
            let shape = classify_cluster(&g, &all).unwrap();
            checked += 1;
            let star_or_triangle = matches!(shape, ClusterShape::Star { .. } | ClusterShape::Triangle);
            if delta < half {
                cheap += 1;
                if !(delta == Rational::from_integer(0) && star_or_triangle) {
                    bad.get_or_insert(format!("{:?}: delta {delta}, {shape:?}", g.edges()));
                }
            } else if star_or_triangle {
                bad.get_or_insert(format!("{:?}: star/triangle with delta {delta}", g.edges()));
            }
        }
    }
    let p4 = cluster_stats(&Graph::path(4), &[0, 1, 2]).unwrap().delta;
    let p4_ok = p4 == Rational::new(2, 3);
    let elapsed = start.elapsed();
    let ok = bad.is_none() && p4_ok && elapsed <= Duration::from_secs(120);
    let detail = bad.unwrap_or_else(|| {
        format!(
            "{checked} connected graphs with m <= 7, {cheap} with delta < 1/2 (all stars or triangles), P4 delta = {p4}, {:.1}s",
            elapsed.as_secs_f64()
        )
    });
    report(3, "star/triangle dichotomy", ok, &detail);
}

#[test]
fn criterion_04_completeness() {
    let suite = tf_suite();
    let mut bad = None;
    for c in &suite {
        let r = min_vertex_cover(&c.g).unwrap();
        let clustering = cover_to_clustering(&c.g, &Cover::new(&c.g, r.witness)).unwrap();
        let cost = edge_clustering_cost(&c.g, &clustering).unwrap();
        if cost != int(c.g.m() - c.vc) {
            bad.get_or_insert(format!("{:?}: cost {cost}, m - VC = {}", c.g.edges(), c.g.m() - c.vc));
        }
    }
    let detail = bad.clone().unwrap_or_else(|| format!("{} triangle-free connected graphs on <= 7 vertices, cost = m - VC", suite.len()));
    report(4, "completeness", bad.is_none(), &detail);
}

#[test]
fn criterion_05_soundness() {
    let suite = tf_suite();
    let mut runs = 0;
    let mut worst = Rational::from_integer(0);
    let mut bad = None;
    for c in &suite {
        for k in [c.vc, c.vc + 1] {
            if k > c.g.m() {
                continue;
            }
            let opt = brute_force_edge_partition(&c.g, k).unwrap();
            let x = extract_cover(&c.g, &opt.witness).unwrap();
            let delta = global_delta(opt.value, c.g.m(), k);
            let bound = int(k) * (Rational::from_integer(1) + Rational::from_integer(3) * delta);
            runs += 1;
            let size = int(x.cover.len());
            if bound > Rational::from_integer(0) {
                worst = worst.max(size / bound);
            }
            if !x.cover.valid || size > bound || size > x.size_bound() {
                bad.get_or_insert(format!("{:?}, k = {k}: cover {} vs bound {bound}", c.g.edges(), x.cover.len()));
            }
        }
    }
    let detail = bad
        .clone()
        .unwrap_or_else(|| format!("{runs} (graph, k) runs, 0 violations, max size/bound = {worst}"));
    report(5, "soundness round-trip", bad.is_none(), &detail);
}

#[test]
fn criterion_06_exact_threshold() {
    let suite = tf_suite();
    let mut runs = 0;
    let mut bad = None;
    for c in &suite {
        for k in 1..=(c.vc + 1).min(c.g.m()) {
            let opt = brute_force_edge_partition(&c.g, k).unwrap().value;
            runs += 1;
            if (opt == int(c.g.m() - k)) != (c.vc <= k) {
                bad.get_or_insert(format!("{:?}, k = {k}: optimum {opt}, VC = {}", c.g.edges(), c.vc));
            }
        }
    }
    let c5 = brute_force_edge_partition(&Graph::cycle(5), 2).unwrap().value;
    let c5_ok = c5 == Rational::new(11, 3);
    let ok = bad.is_none() && c5_ok;
    let detail = bad.unwrap_or_else(|| format!("{runs} (graph, k) runs agree; C5 with k = 2 has optimum {c5} > 3"));
    report(6, "exact threshold", ok, &detail);
}

#[test]
fn criterion_07_spectral_regression() {
    let petersen = spectral_radius(&Graph::petersen()).unwrap().rho;
    let c5 = spectral_radius(&Graph::cycle(5)).unwrap().rho;
    let mut rng = rng_from_seed(derive_seed(SEED, "c7"));
    let mut bad = 0;
    for _ in 0..200 {
        let n = rng.random_range(2..=30);
        let p = rng.random_range(0.05..0.9);
        let g = Graph::gnp(n, p, &mut rng);
        let rep = spectral_radius(&g).unwrap();
        if rep.rho > g.max_degree() as f64 + 1e-9 {
            bad += 1;
        }
    }
    let ok = (petersen - 2.0).abs() <= 1e-9 && (c5 - 1.6180340).abs() <= 1e-6 && bad == 0;
    let detail = format!("rho(Petersen) = {petersen:.12}, rho(C5) = {c5:.9}, {bad}/200 random graphs with rho > max degree");
    report(7, "spectral regression", ok, &detail);
}

#[test]
fn criterion_08_kronecker_spectral_law() {
    let mut rng = rng_from_seed(derive_seed(SEED, "c8"));
    let mut pairs = 0;
    let mut worst_gap = 0.0f64;
    let mut worst_rho = 0.0f64;
    let mut bad = None;
    while pairs < 20 {
        let big_n = rng.random_range(4..=10);
        let d = rng.random_range(2..big_n);
        if big_n * d % 2 == 1 {
            continue;
        }
        let Some(h) = random_regular_graph(big_n, d, &mut rng) else { continue };
        let n = rng.random_range(2..=60 / big_n);
        let a = Graph::gnp(n, 0.5, &mut rng);
        let r = kron_spectrum_check(&a, &h).unwrap();
        pairs += 1;
        worst_gap = worst_gap.max(r.max_gap);
        worst_rho = worst_rho.max((r.rho_product - r.rho_a * r.rho_c).abs());
        if !r.passed() {
            bad.get_or_insert(format!("n = {n}, N = {big_n}, d = {d}: {r:?}"));
        }
    }
    let detail = bad.clone().unwrap_or_else(|| {
        format!("20 pairs with n*N <= 60, max spectrum gap {worst_gap:.2e}, max radius gap {worst_rho:.2e}")
    });
    report(8, "Kronecker spectral law", bad.is_none(), &detail);
}

#[test]
fn criterion_09_product_is_bounds() {
    let gs = [
        ("K2", Graph::path(2)),
        ("P3", Graph::path(3)),
        ("P4", Graph::path(4)),
        ("C5", Graph::cycle(5)),
        ("K3", Graph::complete(3)),
    ];
    let hs = [("C5", Graph::cycle(5)), ("Petersen", Graph::petersen())];
    let mut rows = Vec::new();
    let mut ok = true;
    for (gn, g) in &gs {
        for (hn, h) in &hs {
            let r = check_is_bounds(g, h).unwrap();
            ok &= r.lower_holds && r.upper_decided && r.upper_holds;
            rows.push(format!("{gn}x{hn}: IS {}->{}", r.is_g, r.is_product));
        }
    }
    report(9, "product independent-set bounds", ok, &rows.join(", "));
}

#[test]
fn criterion_10_rounding() {
    let g = Graph::cycle(5);
    let h = Graph::petersen();
    let (p, _) = kronecker_product(&g, &h).unwrap();
    let mis = max_independent_set(&p).unwrap();
    let f = ProductIsVector::from_indices(g.n(), h.n(), &mis.witness).unwrap();
    let seed = derive_seed(SEED, "c10");
    let a = round_product_is(&g, &h, &f, 1000, seed).unwrap();
    let b = round_product_is(&g, &h, &f, 1000, seed).unwrap();
    let same = a.mean.to_bits() == b.mean.to_bits();
    let ok = a.meets_bound() && same;
    let detail = format!(
        "|f| = {}, mean {:.4} vs bound {:.4} - 3*SE ({:.4}), reproducible: {same}",
        f.norm_sq(),
        a.mean,
        a.bound,
        a.std_error()
    );
    report(10, "rounding", ok, &detail);
}

#[test]
fn criterion_11_triangle_freeness() {
    let mut rng = rng_from_seed(derive_seed(SEED, "c11"));
    let mut with_triangle_left = 0;
    let mut bad = 0;
    for _ in 0..200 {
        let g = Graph::gnp(rng.random_range(2..=8), 0.6, &mut rng);
        let h = loop {
            let h = Graph::gnp(rng.random_range(2..=8), 0.4, &mut rng);
            if h.m() > 0 && h.is_triangle_free() {
                break h;
            }
        };
        if !g.is_triangle_free() {
            with_triangle_left += 1;
        }
        let (p, _) = kronecker_product(&g, &h).unwrap();
        if !p.is_triangle_free() {
            bad += 1;
        }
    }
    let (k3k3, _) = kronecker_product(&Graph::complete(3), &Graph::complete(3)).unwrap();
    let non_vacuous = !k3k3.is_triangle_free();
    let ok = bad == 0 && non_vacuous;
    let detail = format!(
        "{}/200 triangle-free products ({with_triangle_left} with a triangle in the left factor); K3 x K3 has a triangle: {non_vacuous}",
        200 - bad
    );
    report(11, "triangle-freeness", ok, &detail);
}

#[test]
fn criterion_12_jl() {
    let mut rng = rng_from_seed(derive_seed(SEED, "c12"));
    let g = Graph::gnm(200, 100, &mut rng);
    let inst = build_kmeans_instance(&g, 1).unwrap();
    let mut good = 0;
    let mut worst = 0.0f64;
    let mut dim = 0;
    for s in 0..100 {
        let r = jl_project(&inst.points, 0.5, trial_seed(SEED, "c12-jl", s)).unwrap();
        dim = r.target_dim;
        worst = worst.max(r.max_distortion);
        if r.max_distortion <= 0.5 {
            good += 1;
        }
    }
    let detail = format!("{good}/100 seeds within distortion 0.5 (target dim {dim}, worst {worst:.3})");
    report(12, "Johnson-Lindenstrauss", good >= 95, &detail);
}

#[test]
fn criterion_13_heuristic_sanity() {
    let suite = tf_suite();
    let mut instances = 0;
    let mut below = None;
    let mut at_vc = 0;
    let mut hit = 0;
    for (i, c) in suite.iter().enumerate() {
        for k in [c.vc, c.vc + 1] {
            if k > c.g.m() {
                continue;
            }
            let opt = to_f64(brute_force_edge_partition(&c.g, k).unwrap().value);
            let inst = build_kmeans_instance(&c.g, k).unwrap();
            let runs = heuristics(&inst, trial_seed(SEED, "c13", i)).unwrap();
            instances += 1;
            for (name, r) in &runs {
                if r.cost < opt - COST_SLACK {
                    below.get_or_insert(format!("{:?}, k = {k}: {name} {} < {opt}", c.g.edges(), r.cost));
                }
            }
            if k == c.vc {
                at_vc += 1;
                if (runs[2].1.cost - opt).abs() <= COST_SLACK {
                    hit += 1;
                }
            }
        }
    }
    let rate = hit as f64 / at_vc as f64;
    let ok = below.is_none() && rate >= 0.8;
    let detail = below.unwrap_or_else(|| {
        format!("{instances} instances never beat the optimum; local search optimal on {hit}/{at_vc} = {:.1}% at k = VC", 100.0 * rate)
    });
    report(13, "heuristic sanity", ok, &detail);
}
